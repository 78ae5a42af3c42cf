//! IEEE C37.118.2 synchrophasor frame codec.
//!
//! Builds and dissects the four message kinds exchanged between PMUs and
//! PDCs — data, configuration (CFG-2), header and command — byte-exactly,
//! including CRC-CCITT computation and validation. Data frames are only
//! decodable against their governing CFG-2, which fixes channel counts and
//! encoding widths.

mod codec;
mod crc;
mod error;
mod frame;
mod render;

pub use codec::{build_frame, frame_length, parse_frame, FrameSplitter};
pub use crc::compute_crc;
pub use error::FrameError;
pub use frame::{
    AnalogChannel, Command, CommandFrame, ConfigFrame2, DataFormat, DataFrame, DigitalChannel,
    Frame, FrameBody, FrameType, HeaderFrame, NominalFreq, PhasorChannel, PhasorUnit, PhasorValue,
    PmuConfigBlock, PmuData, Timestamp, CHK_LEN, HEADER_LEN, MIN_FRAME_LEN, SYNC_BYTE,
};
pub use render::{format_complex, render_frame};
