use thiserror::Error;

use crate::frame::FrameType;

/// Errors raised while building or parsing IEEE C37.118.2 frames.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("first byte 0x{0:02X} is not the 0xAA sync byte")]
    BadSync(u8),
    #[error("CHK 0x{found:04X} does not match computed CRC 0x{computed:04X}")]
    BadCrc { found: u16, computed: u16 },
    #[error("frame needs {needed} bytes but only {available} are available")]
    Truncated { needed: usize, available: usize },
    #[error("{extra} unexpected bytes after the end of the frame")]
    TrailingBytes { extra: usize },
    #[error("data frame cannot be decoded without its configuration frame")]
    MissingConfig,
    #[error("frame kind {0:?} is recognized but its body is not supported")]
    UnsupportedFrameKind(FrameType),
    #[error("unknown frame type bits {0:#05b} in the sync word")]
    UnknownFrameType(u8),
    #[error("integer polar phasor encoding is not supported")]
    UnsupportedPhasorFormat,
    #[error("unknown command code {0}")]
    UnknownCommand(u16),
    #[error("invalid frame: {0}")]
    Invalid(String),
}

impl FrameError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        FrameError::Invalid(msg.into())
    }
}
