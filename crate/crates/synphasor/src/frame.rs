//! Domain types for the four IEEE C37.118.2 message kinds.

use num_complex::Complex64;

use crate::error::FrameError;

/// Leading byte of every frame's SYNC word.
pub const SYNC_BYTE: u8 = 0xAA;
/// SYNC(2) FRAMESIZE(2) IDCODE(2) SOC(4) FRACSEC(4).
pub const HEADER_LEN: usize = 14;
/// Trailing CHK word.
pub const CHK_LEN: usize = 2;
/// Smallest well-formed frame: common header plus CHK.
pub const MIN_FRAME_LEN: usize = HEADER_LEN + CHK_LEN;

/// Frame kind encoded in bits 6-4 of the second SYNC byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameType {
    Data,
    Header,
    Cfg1,
    Cfg2,
    Cfg3,
    Command,
}

impl FrameType {
    pub fn from_bits(bits: u8) -> Result<Self, FrameError> {
        match bits {
            0b000 => Ok(FrameType::Data),
            0b001 => Ok(FrameType::Header),
            0b010 => Ok(FrameType::Cfg1),
            0b011 => Ok(FrameType::Cfg2),
            0b100 => Ok(FrameType::Command),
            0b101 => Ok(FrameType::Cfg3),
            other => Err(FrameError::UnknownFrameType(other)),
        }
    }

    pub fn bits(self) -> u8 {
        match self {
            FrameType::Data => 0b000,
            FrameType::Header => 0b001,
            FrameType::Cfg1 => 0b010,
            FrameType::Cfg2 => 0b011,
            FrameType::Command => 0b100,
            FrameType::Cfg3 => 0b101,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameType::Data => "DATA",
            FrameType::Header => "HEADER",
            FrameType::Cfg1 => "CFG1",
            FrameType::Cfg2 => "CFG2",
            FrameType::Cfg3 => "CFG3",
            FrameType::Command => "CMD",
        }
    }
}

/// SOC plus the 24-bit fraction-of-second count and the time quality flags
/// carried in the top byte of FRACSEC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Timestamp {
    pub soc: u32,
    /// Fraction-of-second count; actual fraction is `fracsec / time_base`.
    pub fracsec: u32,
    pub time_quality: u8,
}

impl Timestamp {
    pub fn new(soc: u32, fracsec: u32) -> Self {
        Timestamp { soc, fracsec, time_quality: 0 }
    }

    /// Timestamp as fractional seconds since the epoch.
    pub fn as_seconds(&self, time_base: u32) -> f64 {
        self.soc as f64 + self.fracsec as f64 / time_base.max(1) as f64
    }
}

/// A decoded frame: common header fields plus the type-specific body.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    /// Version bits of the SYNC word (1 for IEEE C37.118-2005 framing).
    pub version: u8,
    pub idcode: u16,
    pub time: Timestamp,
    pub body: FrameBody,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrameBody {
    Data(DataFrame),
    Config2(ConfigFrame2),
    Header(HeaderFrame),
    Command(CommandFrame),
}

impl Frame {
    pub const DEFAULT_VERSION: u8 = 1;

    pub fn new(idcode: u16, time: Timestamp, body: FrameBody) -> Self {
        Frame { version: Self::DEFAULT_VERSION, idcode, time, body }
    }

    pub fn command(idcode: u16, time: Timestamp, cmd: Command) -> Self {
        Frame::new(idcode, time, FrameBody::Command(CommandFrame { cmd, ext: Vec::new() }))
    }

    pub fn frame_type(&self) -> FrameType {
        match &self.body {
            FrameBody::Data(_) => FrameType::Data,
            FrameBody::Config2(_) => FrameType::Cfg2,
            FrameBody::Header(_) => FrameType::Header,
            FrameBody::Command(_) => FrameType::Command,
        }
    }

    pub fn as_data(&self) -> Option<&DataFrame> {
        match &self.body {
            FrameBody::Data(d) => Some(d),
            _ => None,
        }
    }

    pub fn as_config2(&self) -> Option<&ConfigFrame2> {
        match &self.body {
            FrameBody::Config2(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_command(&self) -> Option<&CommandFrame> {
        match &self.body {
            FrameBody::Command(c) => Some(c),
            _ => None,
        }
    }
}

/// One phasor value. Rectangular values are used by the integer and float
/// rectangular encodings; polar values by the float polar encoding. Keeping
/// the polar pair explicit lets a decoded frame re-encode to identical bytes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhasorValue {
    Rect(Complex64),
    Polar { magnitude: f64, angle: f64 },
}

impl PhasorValue {
    pub fn rect(re: f64, im: f64) -> Self {
        PhasorValue::Rect(Complex64::new(re, im))
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            PhasorValue::Rect(c) => c,
            PhasorValue::Polar { magnitude, angle } => Complex64::from_polar(magnitude, angle),
        }
    }
}

/// Measurement block for one PMU inside a data frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PmuData {
    /// Raw STAT status word.
    pub stat: u16,
    pub phasors: Vec<PhasorValue>,
    /// Frequency deviation from nominal, Hz.
    pub freq: f64,
    /// Rate of change of frequency, Hz/s.
    pub dfreq: f64,
    pub analogs: Vec<f64>,
    pub digitals: Vec<u16>,
}

impl PmuData {
    pub fn new(phasors: Vec<PhasorValue>) -> Self {
        PmuData { stat: 0, phasors, freq: 0.0, dfreq: 0.0, analogs: Vec::new(), digitals: Vec::new() }
    }
}

/// Synchrophasor measurements for one or more PMUs; only decodable in the
/// context of the governing CFG-2.
#[derive(Debug, Clone, PartialEq)]
pub struct DataFrame {
    pub pmus: Vec<PmuData>,
}

impl DataFrame {
    pub fn single(pmu: PmuData) -> Self {
        DataFrame { pmus: vec![pmu] }
    }
}

/// FORMAT word flags: which fields are 32-bit float rather than 16-bit
/// integer, and whether phasors are polar rather than rectangular.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DataFormat {
    pub freq_float: bool,
    pub analog_float: bool,
    pub phasor_float: bool,
    pub phasor_polar: bool,
}

impl DataFormat {
    pub const INT_RECT: DataFormat =
        DataFormat { freq_float: false, analog_float: false, phasor_float: false, phasor_polar: false };
    pub const FLOAT_RECT: DataFormat =
        DataFormat { freq_float: true, analog_float: true, phasor_float: true, phasor_polar: false };
    pub const FLOAT_POLAR: DataFormat =
        DataFormat { freq_float: true, analog_float: true, phasor_float: true, phasor_polar: true };

    pub fn to_word(self) -> u16 {
        (self.phasor_polar as u16)
            | (self.phasor_float as u16) << 1
            | (self.analog_float as u16) << 2
            | (self.freq_float as u16) << 3
    }

    pub fn from_word(word: u16) -> Self {
        DataFormat {
            phasor_polar: word & 0x1 != 0,
            phasor_float: word & 0x2 != 0,
            analog_float: word & 0x4 != 0,
            freq_float: word & 0x8 != 0,
        }
    }

    pub fn phasor_size(self) -> usize {
        if self.phasor_float { 8 } else { 4 }
    }

    pub fn freq_size(self) -> usize {
        if self.freq_float { 4 } else { 2 }
    }

    pub fn analog_size(self) -> usize {
        if self.analog_float { 4 } else { 2 }
    }
}

/// PHUNIT word: voltage/current discriminator plus the 24-bit conversion
/// factor (1e-5 V or A per count, applied to integer encodings).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhasorUnit {
    pub current: bool,
    pub factor: u32,
}

impl PhasorUnit {
    pub fn voltage(factor: u32) -> Self {
        PhasorUnit { current: false, factor }
    }

    pub fn current(factor: u32) -> Self {
        PhasorUnit { current: true, factor }
    }

    /// Multiplier applied to integer phasor counts to recover engineering units.
    pub fn scale(&self) -> f64 {
        self.factor as f64 * 1e-5
    }

    pub fn to_word(self) -> u32 {
        ((self.current as u32) << 24) | (self.factor & 0x00FF_FFFF)
    }

    pub fn from_word(word: u32) -> Self {
        PhasorUnit { current: (word >> 24) & 0x01 != 0, factor: word & 0x00FF_FFFF }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhasorChannel {
    /// Channel name, at most 16 bytes; stored trimmed of the space padding.
    pub name: String,
    pub unit: PhasorUnit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalogChannel {
    pub name: String,
    /// ANUNIT type byte (0 single point-on-wave, 1 rms, 2 peak).
    pub kind: u8,
    /// 24-bit user-defined conversion factor.
    pub factor: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DigitalChannel {
    /// One name per bit of the 16-bit digital word.
    pub names: Vec<String>,
    /// Normal status mask.
    pub normal: u16,
    /// Valid inputs mask.
    pub valid: u16,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NominalFreq {
    #[default]
    Hz60,
    Hz50,
}

impl NominalFreq {
    pub fn to_word(self) -> u16 {
        match self {
            NominalFreq::Hz60 => 0,
            NominalFreq::Hz50 => 1,
        }
    }

    pub fn from_word(word: u16) -> Self {
        if word & 1 == 1 { NominalFreq::Hz50 } else { NominalFreq::Hz60 }
    }

    pub fn hz(self) -> f64 {
        match self {
            NominalFreq::Hz60 => 60.0,
            NominalFreq::Hz50 => 50.0,
        }
    }
}

/// Per-PMU section of a CFG-2 frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PmuConfigBlock {
    /// Station name, at most 16 bytes.
    pub station_name: String,
    /// Data source idcode of this PMU block.
    pub idcode: u16,
    pub format: DataFormat,
    pub phasor_channels: Vec<PhasorChannel>,
    pub analog_channels: Vec<AnalogChannel>,
    pub digital_channels: Vec<DigitalChannel>,
    pub nominal_freq: NominalFreq,
    pub config_count: u16,
}

impl PmuConfigBlock {
    pub fn phnmr(&self) -> usize {
        self.phasor_channels.len()
    }

    pub fn annmr(&self) -> usize {
        self.analog_channels.len()
    }

    pub fn dgnmr(&self) -> usize {
        self.digital_channels.len()
    }

    /// Encoded size of one data-frame block for this PMU.
    pub fn data_block_len(&self) -> usize {
        2 + self.phnmr() * self.format.phasor_size()
            + 2 * self.format.freq_size()
            + self.annmr() * self.format.analog_size()
            + self.dgnmr() * 2
    }
}

/// CFG-2 configuration: everything a receiver needs to decode data frames.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigFrame2 {
    /// 24-bit resolution of the FRACSEC count; must be positive.
    pub time_base: u32,
    pub pmus: Vec<PmuConfigBlock>,
    /// Frames per second when positive, seconds per frame when negative.
    pub data_rate: i16,
}

impl ConfigFrame2 {
    pub fn num_pmu(&self) -> usize {
        self.pmus.len()
    }

    /// Total encoded size of the data-frame body governed by this config.
    pub fn data_body_len(&self) -> usize {
        self.pmus.iter().map(|p| p.data_block_len()).sum()
    }

    /// Frame interval in seconds.
    pub fn frame_period(&self) -> f64 {
        if self.data_rate >= 0 {
            1.0 / self.data_rate.max(1) as f64
        } else {
            -(self.data_rate as f64)
        }
    }
}

/// Command codes a PDC may send to a PMU.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    DataOff,
    DataOn,
    SendHdr,
    SendCfg1,
    SendCfg2,
}

impl Command {
    pub fn to_code(self) -> u16 {
        match self {
            Command::DataOff => 1,
            Command::DataOn => 2,
            Command::SendHdr => 3,
            Command::SendCfg1 => 4,
            Command::SendCfg2 => 5,
        }
    }

    pub fn from_code(code: u16) -> Result<Self, FrameError> {
        match code {
            1 => Ok(Command::DataOff),
            2 => Ok(Command::DataOn),
            3 => Ok(Command::SendHdr),
            4 => Ok(Command::SendCfg1),
            5 => Ok(Command::SendCfg2),
            other => Err(FrameError::UnknownCommand(other)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::DataOff => "DATA_OFF",
            Command::DataOn => "DATA_ON",
            Command::SendHdr => "SEND_HDR",
            Command::SendCfg1 => "SEND_CFG1",
            Command::SendCfg2 => "SEND_CFG2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandFrame {
    pub cmd: Command,
    /// Optional EXTFRAME payload.
    pub ext: Vec<u8>,
}

/// Free-form human readable information frame.
#[derive(Debug, Clone, PartialEq)]
pub struct HeaderFrame {
    pub info: Vec<u8>,
}

impl HeaderFrame {
    pub fn from_text(text: &str) -> Self {
        HeaderFrame { info: text.as_bytes().to_vec() }
    }

    pub fn text(&self) -> String {
        String::from_utf8_lossy(&self.info).into_owned()
    }
}
