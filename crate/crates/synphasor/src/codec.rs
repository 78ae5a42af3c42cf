//! Byte-exact serialization of frames. FRAMESIZE and CHK are always computed
//! during building; parsing rejects any frame whose CHK disagrees with the
//! computed CRC.

use num_complex::Complex64;

use crate::crc::compute_crc;
use crate::error::FrameError;
use crate::frame::*;

const NAME_LEN: usize = 16;

/// Peek at the FRAMESIZE field. Returns `None` until four bytes are buffered.
pub fn frame_length(bytes: &[u8]) -> Option<usize> {
    if bytes.len() < 4 {
        return None;
    }
    Some(u16::from_be_bytes([bytes[2], bytes[3]]) as usize)
}

/// Serialize a frame. A governing configuration is required to encode a data
/// frame body; other kinds ignore it.
pub fn build_frame(frame: &Frame, config: Option<&ConfigFrame2>) -> Result<Vec<u8>, FrameError> {
    let body = match &frame.body {
        FrameBody::Command(cmd) => build_command(cmd),
        FrameBody::Header(hdr) => hdr.info.clone(),
        FrameBody::Config2(cfg) => build_config2(cfg)?,
        FrameBody::Data(data) => {
            let cfg = config.ok_or(FrameError::MissingConfig)?;
            if frame.time.fracsec >= cfg.time_base {
                return Err(FrameError::invalid(format!(
                    "fracsec {} is not below time_base {}",
                    frame.time.fracsec, cfg.time_base
                )));
            }
            build_data(data, cfg)?
        }
    };

    let framesize = HEADER_LEN + body.len() + CHK_LEN;
    if framesize > u16::MAX as usize {
        return Err(FrameError::invalid(format!("frame of {framesize} bytes exceeds FRAMESIZE range")));
    }
    if frame.time.fracsec > 0x00FF_FFFF {
        return Err(FrameError::invalid("fracsec exceeds the 24-bit fraction count"));
    }
    if frame.version > 0x0F {
        return Err(FrameError::invalid("version exceeds 4 bits"));
    }

    let mut out = Vec::with_capacity(framesize);
    out.push(SYNC_BYTE);
    out.push((frame.frame_type().bits() << 4) | frame.version);
    out.extend_from_slice(&(framesize as u16).to_be_bytes());
    out.extend_from_slice(&frame.idcode.to_be_bytes());
    out.extend_from_slice(&frame.time.soc.to_be_bytes());
    out.push(frame.time.time_quality);
    out.extend_from_slice(&frame.time.fracsec.to_be_bytes()[1..4]);
    out.extend_from_slice(&body);
    let chk = compute_crc(&out);
    out.extend_from_slice(&chk.to_be_bytes());
    Ok(out)
}

/// Decode one frame occupying the whole slice. Data frames need the
/// governing configuration to fix field widths and counts.
pub fn parse_frame(bytes: &[u8], config: Option<&ConfigFrame2>) -> Result<Frame, FrameError> {
    if bytes.is_empty() {
        return Err(FrameError::Truncated { needed: MIN_FRAME_LEN, available: 0 });
    }
    if bytes[0] != SYNC_BYTE {
        return Err(FrameError::BadSync(bytes[0]));
    }
    if bytes.len() < MIN_FRAME_LEN {
        return Err(FrameError::Truncated { needed: MIN_FRAME_LEN, available: bytes.len() });
    }
    let framesize = frame_length(bytes).expect("length checked");
    if framesize < MIN_FRAME_LEN {
        return Err(FrameError::invalid(format!("FRAMESIZE {framesize} below minimum {MIN_FRAME_LEN}")));
    }
    if bytes.len() < framesize {
        return Err(FrameError::Truncated { needed: framesize, available: bytes.len() });
    }
    if bytes.len() > framesize {
        return Err(FrameError::TrailingBytes { extra: bytes.len() - framesize });
    }

    let computed = compute_crc(&bytes[..framesize - CHK_LEN]);
    let found = u16::from_be_bytes([bytes[framesize - 2], bytes[framesize - 1]]);
    if computed != found {
        return Err(FrameError::BadCrc { found, computed });
    }

    if bytes[1] & 0x80 != 0 {
        return Err(FrameError::invalid("reserved sync bit 15 set"));
    }
    let frame_type = FrameType::from_bits((bytes[1] >> 4) & 0x07)?;
    let version = bytes[1] & 0x0F;
    let idcode = u16::from_be_bytes([bytes[4], bytes[5]]);
    let soc = u32::from_be_bytes([bytes[6], bytes[7], bytes[8], bytes[9]]);
    let time_quality = bytes[10];
    let fracsec = u32::from_be_bytes([0, bytes[11], bytes[12], bytes[13]]);
    let time = Timestamp { soc, fracsec, time_quality };

    let body_bytes = &bytes[HEADER_LEN..framesize - CHK_LEN];
    let body = match frame_type {
        FrameType::Command => FrameBody::Command(parse_command(body_bytes)?),
        FrameType::Header => FrameBody::Header(HeaderFrame { info: body_bytes.to_vec() }),
        FrameType::Cfg2 => FrameBody::Config2(parse_config2(body_bytes)?),
        FrameType::Data => {
            let cfg = config.ok_or(FrameError::MissingConfig)?;
            if fracsec >= cfg.time_base {
                return Err(FrameError::invalid(format!(
                    "fracsec {fracsec} is not below time_base {}",
                    cfg.time_base
                )));
            }
            FrameBody::Data(parse_data(body_bytes, cfg)?)
        }
        FrameType::Cfg1 | FrameType::Cfg3 => return Err(FrameError::UnsupportedFrameKind(frame_type)),
    };

    Ok(Frame { version, idcode, time, body })
}

// ---------------------------------------------------------------- command

fn build_command(cmd: &CommandFrame) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 + cmd.ext.len());
    out.extend_from_slice(&cmd.cmd.to_code().to_be_bytes());
    out.extend_from_slice(&cmd.ext);
    out
}

fn parse_command(body: &[u8]) -> Result<CommandFrame, FrameError> {
    if body.len() < 2 {
        return Err(FrameError::invalid("command body shorter than the CMD word"));
    }
    let cmd = Command::from_code(u16::from_be_bytes([body[0], body[1]]))?;
    Ok(CommandFrame { cmd, ext: body[2..].to_vec() })
}

// ---------------------------------------------------------------- config-2

fn push_name(out: &mut Vec<u8>, name: &str) -> Result<(), FrameError> {
    let bytes = name.as_bytes();
    if bytes.len() > NAME_LEN {
        return Err(FrameError::invalid(format!("name {name:?} exceeds 16 bytes")));
    }
    if bytes.iter().any(|&b| b == 0) {
        return Err(FrameError::invalid(format!("name {name:?} contains a NUL byte")));
    }
    if name.ends_with(' ') {
        return Err(FrameError::invalid(format!("name {name:?} has trailing spaces")));
    }
    out.extend_from_slice(bytes);
    out.resize(out.len() + NAME_LEN - bytes.len(), b' ');
    Ok(())
}

fn read_name(body: &[u8], at: &mut usize) -> Result<String, FrameError> {
    let raw = take(body, at, NAME_LEN)?;
    let trimmed: &[u8] = {
        let mut end = raw.len();
        while end > 0 && raw[end - 1] == b' ' {
            end -= 1;
        }
        &raw[..end]
    };
    Ok(String::from_utf8_lossy(trimmed).into_owned())
}

fn build_config2(cfg: &ConfigFrame2) -> Result<Vec<u8>, FrameError> {
    if cfg.time_base == 0 || cfg.time_base > 0x00FF_FFFF {
        return Err(FrameError::invalid(format!("time_base {} out of 24-bit positive range", cfg.time_base)));
    }
    if cfg.pmus.is_empty() {
        return Err(FrameError::invalid("configuration carries no PMU blocks"));
    }
    let mut out = Vec::new();
    out.extend_from_slice(&cfg.time_base.to_be_bytes());
    out.extend_from_slice(&(cfg.pmus.len() as u16).to_be_bytes());
    for pmu in &cfg.pmus {
        if pmu.format.phasor_polar && !pmu.format.phasor_float {
            return Err(FrameError::UnsupportedPhasorFormat);
        }
        push_name(&mut out, &pmu.station_name)?;
        out.extend_from_slice(&pmu.idcode.to_be_bytes());
        out.extend_from_slice(&pmu.format.to_word().to_be_bytes());
        out.extend_from_slice(&(pmu.phnmr() as u16).to_be_bytes());
        out.extend_from_slice(&(pmu.annmr() as u16).to_be_bytes());
        out.extend_from_slice(&(pmu.dgnmr() as u16).to_be_bytes());
        for ch in &pmu.phasor_channels {
            push_name(&mut out, &ch.name)?;
        }
        for ch in &pmu.analog_channels {
            push_name(&mut out, &ch.name)?;
        }
        for ch in &pmu.digital_channels {
            if ch.names.len() != 16 {
                return Err(FrameError::invalid(format!(
                    "digital channel carries {} names, expected 16",
                    ch.names.len()
                )));
            }
            for name in &ch.names {
                push_name(&mut out, name)?;
            }
        }
        for ch in &pmu.phasor_channels {
            out.extend_from_slice(&ch.unit.to_word().to_be_bytes());
        }
        for ch in &pmu.analog_channels {
            let word = ((ch.kind as u32) << 24) | (ch.factor & 0x00FF_FFFF);
            out.extend_from_slice(&word.to_be_bytes());
        }
        for ch in &pmu.digital_channels {
            out.extend_from_slice(&ch.normal.to_be_bytes());
            out.extend_from_slice(&ch.valid.to_be_bytes());
        }
        out.extend_from_slice(&pmu.nominal_freq.to_word().to_be_bytes());
        out.extend_from_slice(&pmu.config_count.to_be_bytes());
    }
    out.extend_from_slice(&cfg.data_rate.to_be_bytes());
    Ok(out)
}

fn take<'a>(body: &'a [u8], at: &mut usize, n: usize) -> Result<&'a [u8], FrameError> {
    if *at + n > body.len() {
        return Err(FrameError::invalid("frame body exhausted before all fields were read"));
    }
    let slice = &body[*at..*at + n];
    *at += n;
    Ok(slice)
}

fn take_u16(body: &[u8], at: &mut usize) -> Result<u16, FrameError> {
    let b = take(body, at, 2)?;
    Ok(u16::from_be_bytes([b[0], b[1]]))
}

fn take_u32(body: &[u8], at: &mut usize) -> Result<u32, FrameError> {
    let b = take(body, at, 4)?;
    Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
}

fn parse_config2(body: &[u8]) -> Result<ConfigFrame2, FrameError> {
    let mut at = 0;
    let time_base = take_u32(body, &mut at)? & 0x00FF_FFFF;
    if time_base == 0 {
        return Err(FrameError::invalid("time_base must be positive"));
    }
    let num_pmu = take_u16(body, &mut at)? as usize;
    if num_pmu == 0 {
        return Err(FrameError::invalid("configuration carries no PMU blocks"));
    }
    let mut pmus = Vec::with_capacity(num_pmu);
    for _ in 0..num_pmu {
        let station_name = read_name(body, &mut at)?;
        let idcode = take_u16(body, &mut at)?;
        let format = DataFormat::from_word(take_u16(body, &mut at)?);
        let phnmr = take_u16(body, &mut at)? as usize;
        let annmr = take_u16(body, &mut at)? as usize;
        let dgnmr = take_u16(body, &mut at)? as usize;
        let mut phasor_names = Vec::with_capacity(phnmr);
        for _ in 0..phnmr {
            phasor_names.push(read_name(body, &mut at)?);
        }
        let mut analog_names = Vec::with_capacity(annmr);
        for _ in 0..annmr {
            analog_names.push(read_name(body, &mut at)?);
        }
        let mut digital_names = Vec::with_capacity(dgnmr);
        for _ in 0..dgnmr {
            let mut names = Vec::with_capacity(16);
            for _ in 0..16 {
                names.push(read_name(body, &mut at)?);
            }
            digital_names.push(names);
        }
        let mut phasor_channels = Vec::with_capacity(phnmr);
        for name in phasor_names {
            let unit = PhasorUnit::from_word(take_u32(body, &mut at)?);
            phasor_channels.push(PhasorChannel { name, unit });
        }
        let mut analog_channels = Vec::with_capacity(annmr);
        for name in analog_names {
            let word = take_u32(body, &mut at)?;
            analog_channels.push(AnalogChannel { name, kind: (word >> 24) as u8, factor: word & 0x00FF_FFFF });
        }
        let mut digital_channels = Vec::with_capacity(dgnmr);
        for names in digital_names {
            let normal = take_u16(body, &mut at)?;
            let valid = take_u16(body, &mut at)?;
            digital_channels.push(DigitalChannel { names, normal, valid });
        }
        let nominal_freq = NominalFreq::from_word(take_u16(body, &mut at)?);
        let config_count = take_u16(body, &mut at)?;
        pmus.push(PmuConfigBlock {
            station_name,
            idcode,
            format,
            phasor_channels,
            analog_channels,
            digital_channels,
            nominal_freq,
            config_count,
        });
    }
    let data_rate = take_u16(body, &mut at)? as i16;
    if at != body.len() {
        return Err(FrameError::invalid(format!("{} unread bytes after the configuration body", body.len() - at)));
    }
    Ok(ConfigFrame2 { time_base, pmus, data_rate })
}

// ---------------------------------------------------------------- data

fn encode_i16(value: f64, what: &str) -> Result<[u8; 2], FrameError> {
    if !value.is_finite() || value.fract() != 0.0 || value < i16::MIN as f64 || value > i16::MAX as f64 {
        return Err(FrameError::invalid(format!("{what} {value} is not representable as a 16-bit integer")));
    }
    Ok((value as i16).to_be_bytes())
}

fn encode_f32(value: f64, what: &str) -> Result<[u8; 4], FrameError> {
    if !value.is_finite() {
        return Err(FrameError::invalid(format!("{what} {value} is not finite")));
    }
    Ok((value as f32).to_be_bytes())
}

fn scaled_i16(value: f64, scale: f64, what: &str) -> Result<[u8; 2], FrameError> {
    if !value.is_finite() {
        return Err(FrameError::invalid(format!("{what} {value} is not finite")));
    }
    let counts = (value * scale).round();
    if counts < i16::MIN as f64 || counts > i16::MAX as f64 {
        return Err(FrameError::invalid(format!("{what} {value} overflows the 16-bit encoding")));
    }
    Ok((counts as i16).to_be_bytes())
}

fn build_data(data: &DataFrame, cfg: &ConfigFrame2) -> Result<Vec<u8>, FrameError> {
    if data.pmus.len() != cfg.pmus.len() {
        return Err(FrameError::invalid(format!(
            "data frame has {} PMU blocks, configuration expects {}",
            data.pmus.len(),
            cfg.pmus.len()
        )));
    }
    let mut out = Vec::with_capacity(cfg.data_body_len());
    for (pmu, block) in data.pmus.iter().zip(&cfg.pmus) {
        let fmt = block.format;
        if fmt.phasor_polar && !fmt.phasor_float {
            return Err(FrameError::UnsupportedPhasorFormat);
        }
        if pmu.phasors.len() != block.phnmr() {
            return Err(FrameError::invalid(format!(
                "PMU {} carries {} phasors, configuration expects {}",
                block.idcode,
                pmu.phasors.len(),
                block.phnmr()
            )));
        }
        if pmu.analogs.len() != block.annmr() || pmu.digitals.len() != block.dgnmr() {
            return Err(FrameError::invalid(format!(
                "PMU {} analog/digital counts do not match the configuration",
                block.idcode
            )));
        }
        out.extend_from_slice(&pmu.stat.to_be_bytes());
        for (i, phasor) in pmu.phasors.iter().enumerate() {
            match (*phasor, fmt.phasor_float, fmt.phasor_polar) {
                (PhasorValue::Rect(c), false, false) => {
                    out.extend_from_slice(&encode_i16(c.re, "phasor real part")?);
                    out.extend_from_slice(&encode_i16(c.im, "phasor imaginary part")?);
                }
                (PhasorValue::Rect(c), true, false) => {
                    out.extend_from_slice(&encode_f32(c.re, "phasor real part")?);
                    out.extend_from_slice(&encode_f32(c.im, "phasor imaginary part")?);
                }
                (PhasorValue::Polar { magnitude, angle }, true, true) => {
                    out.extend_from_slice(&encode_f32(magnitude, "phasor magnitude")?);
                    out.extend_from_slice(&encode_f32(angle, "phasor angle")?);
                }
                _ => {
                    return Err(FrameError::invalid(format!(
                        "phasor {i} representation does not match the configured format"
                    )));
                }
            }
        }
        if fmt.freq_float {
            out.extend_from_slice(&encode_f32(pmu.freq, "freq")?);
            out.extend_from_slice(&encode_f32(pmu.dfreq, "dfreq")?);
        } else {
            out.extend_from_slice(&scaled_i16(pmu.freq, 1000.0, "freq")?);
            out.extend_from_slice(&scaled_i16(pmu.dfreq, 100.0, "dfreq")?);
        }
        for analog in &pmu.analogs {
            if fmt.analog_float {
                out.extend_from_slice(&encode_f32(*analog, "analog")?);
            } else {
                out.extend_from_slice(&scaled_i16(*analog, 1.0, "analog")?);
            }
        }
        for digital in &pmu.digitals {
            out.extend_from_slice(&digital.to_be_bytes());
        }
    }
    Ok(out)
}

fn parse_data(body: &[u8], cfg: &ConfigFrame2) -> Result<DataFrame, FrameError> {
    let expected = cfg.data_body_len();
    if body.len() != expected {
        return Err(FrameError::invalid(format!(
            "data body is {} bytes, configuration expects {expected}",
            body.len()
        )));
    }
    let mut at = 0;
    let mut pmus = Vec::with_capacity(cfg.pmus.len());
    for block in &cfg.pmus {
        let fmt = block.format;
        if fmt.phasor_polar && !fmt.phasor_float {
            return Err(FrameError::UnsupportedPhasorFormat);
        }
        let stat = take_u16(body, &mut at)?;
        let mut phasors = Vec::with_capacity(block.phnmr());
        for _ in 0..block.phnmr() {
            if fmt.phasor_float {
                let a = f32::from_be_bytes(take(body, &mut at, 4)?.try_into().unwrap()) as f64;
                let b = f32::from_be_bytes(take(body, &mut at, 4)?.try_into().unwrap()) as f64;
                phasors.push(if fmt.phasor_polar {
                    PhasorValue::Polar { magnitude: a, angle: b }
                } else {
                    PhasorValue::Rect(Complex64::new(a, b))
                });
            } else {
                let re = i16::from_be_bytes(take(body, &mut at, 2)?.try_into().unwrap()) as f64;
                let im = i16::from_be_bytes(take(body, &mut at, 2)?.try_into().unwrap()) as f64;
                phasors.push(PhasorValue::Rect(Complex64::new(re, im)));
            }
        }
        let (freq, dfreq) = if fmt.freq_float {
            (
                f32::from_be_bytes(take(body, &mut at, 4)?.try_into().unwrap()) as f64,
                f32::from_be_bytes(take(body, &mut at, 4)?.try_into().unwrap()) as f64,
            )
        } else {
            (
                i16::from_be_bytes(take(body, &mut at, 2)?.try_into().unwrap()) as f64 / 1000.0,
                i16::from_be_bytes(take(body, &mut at, 2)?.try_into().unwrap()) as f64 / 100.0,
            )
        };
        let mut analogs = Vec::with_capacity(block.annmr());
        for _ in 0..block.annmr() {
            analogs.push(if fmt.analog_float {
                f32::from_be_bytes(take(body, &mut at, 4)?.try_into().unwrap()) as f64
            } else {
                i16::from_be_bytes(take(body, &mut at, 2)?.try_into().unwrap()) as f64
            });
        }
        let mut digitals = Vec::with_capacity(block.dgnmr());
        for _ in 0..block.dgnmr() {
            digitals.push(take_u16(body, &mut at)?);
        }
        pmus.push(PmuData { stat, phasors, freq, dfreq, analogs, digitals });
    }
    Ok(DataFrame { pmus })
}

/// Accumulates wire bytes and yields one complete frame at a time, skipping
/// garbage ahead of the next sync byte. TCP delivery may split or merge
/// frames arbitrarily, so endpoints feed everything through this.
#[derive(Debug, Default)]
pub struct FrameSplitter {
    buf: Vec<u8>,
    skipped: usize,
}

impl FrameSplitter {
    pub fn new() -> Self {
        FrameSplitter::default()
    }

    pub fn push(&mut self, bytes: &[u8]) {
        self.buf.extend_from_slice(bytes);
    }

    /// Bytes discarded while hunting for a sync byte.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    /// Pop the next complete frame's bytes, if any are buffered.
    pub fn next_frame(&mut self) -> Option<Vec<u8>> {
        let start = self.buf.iter().position(|&b| b == SYNC_BYTE);
        match start {
            None => {
                self.skipped += self.buf.len();
                self.buf.clear();
                return None;
            }
            Some(n) if n > 0 => {
                self.skipped += n;
                self.buf.drain(..n);
            }
            _ => {}
        }
        let framesize = frame_length(&self.buf)?;
        if framesize < MIN_FRAME_LEN {
            // Cannot be a real frame: drop the bogus sync byte and retry.
            self.skipped += 1;
            self.buf.drain(..1);
            return self.next_frame();
        }
        if self.buf.len() < framesize {
            return None;
        }
        let frame: Vec<u8> = self.buf.drain(..framesize).collect();
        Some(frame)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmd_frame() -> Frame {
        Frame::command(1, Timestamp::new(0, 0), Command::DataOn)
    }

    // Hand-assembled per the standard layout; CHK from the shift-register oracle.
    const CMD_VECTOR: [u8; 18] = [
        0xAA, 0x41, 0x00, 0x12, 0x00, 0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
        0x02, 0x95, 0x0F,
    ];

    #[test]
    fn command_frame_golden_bytes() {
        let bytes = build_frame(&cmd_frame(), None).unwrap();
        assert_eq!(bytes, CMD_VECTOR);
    }

    #[test]
    fn command_frame_golden_parse() {
        let frame = parse_frame(&CMD_VECTOR, None).unwrap();
        assert_eq!(frame.as_command().unwrap().cmd, Command::DataOn);
        assert_eq!(frame.idcode, 1);
        assert_eq!(frame, cmd_frame());
    }

    #[test]
    fn corrupted_chk_is_rejected() {
        let mut bytes = build_frame(&cmd_frame(), None).unwrap();
        *bytes.last_mut().unwrap() ^= 0x01;
        assert!(matches!(parse_frame(&bytes, None), Err(FrameError::BadCrc { .. })));
    }

    #[test]
    fn truncated_frame_is_rejected() {
        let bytes = build_frame(&cmd_frame(), None).unwrap();
        let err = parse_frame(&bytes[..bytes.len() - 3], None).unwrap_err();
        assert_eq!(err, FrameError::Truncated { needed: 18, available: 15 });
    }

    #[test]
    fn bad_sync_is_rejected() {
        let mut bytes = build_frame(&cmd_frame(), None).unwrap();
        bytes[0] = 0x55;
        assert_eq!(parse_frame(&bytes, None), Err(FrameError::BadSync(0x55)));
    }

    #[test]
    fn data_frame_requires_config() {
        let frame = Frame::new(
            2,
            Timestamp::new(0, 0),
            FrameBody::Data(DataFrame::single(PmuData::new(vec![PhasorValue::rect(1.0, 0.0)]))),
        );
        assert_eq!(build_frame(&frame, None), Err(FrameError::MissingConfig));
    }

    fn float_rect_config(phnmr: usize) -> ConfigFrame2 {
        ConfigFrame2 {
            time_base: 1_000_000,
            pmus: vec![PmuConfigBlock {
                station_name: "PMU_632".into(),
                idcode: 2,
                format: DataFormat::FLOAT_RECT,
                phasor_channels: (0..phnmr)
                    .map(|i| PhasorChannel { name: format!("VA{i}"), unit: PhasorUnit::voltage(915527) })
                    .collect(),
                analog_channels: vec![],
                digital_channels: vec![],
                nominal_freq: NominalFreq::Hz60,
                config_count: 0,
            }],
            data_rate: 30,
        }
    }

    #[test]
    fn paper_phasors_roundtrip() {
        let cfg = float_rect_config(3);
        let phasors = vec![
            PhasorValue::rect(2453.0, 2444.0),
            PhasorValue::rect(2954.0, 2780.0),
            PhasorValue::rect(2922.0, 2079.0),
        ];
        let frame = Frame::new(
            2,
            Timestamp::new(1_652_000_000, 400_000),
            FrameBody::Data(DataFrame::single(PmuData::new(phasors.clone()))),
        );
        let bytes = build_frame(&frame, Some(&cfg)).unwrap();
        let parsed = parse_frame(&bytes, Some(&cfg)).unwrap();
        assert_eq!(parsed.as_data().unwrap().pmus[0].phasors, phasors);
        assert_eq!(parsed, frame);
    }

    #[test]
    fn data_frame_without_config_is_rejected_on_parse() {
        let cfg = float_rect_config(1);
        let frame = Frame::new(
            2,
            Timestamp::new(0, 0),
            FrameBody::Data(DataFrame::single(PmuData::new(vec![PhasorValue::rect(1.0, 0.5)]))),
        );
        let bytes = build_frame(&frame, Some(&cfg)).unwrap();
        assert_eq!(parse_frame(&bytes, None), Err(FrameError::MissingConfig));
    }

    #[test]
    fn int_polar_format_is_unsupported() {
        let mut cfg = float_rect_config(1);
        cfg.pmus[0].format = DataFormat { phasor_polar: true, ..DataFormat::INT_RECT };
        let frame = Frame::new(
            2,
            Timestamp::new(0, 0),
            FrameBody::Data(DataFrame::single(PmuData::new(vec![PhasorValue::Polar {
                magnitude: 1.0,
                angle: 0.0,
            }]))),
        );
        assert_eq!(build_frame(&frame, Some(&cfg)), Err(FrameError::UnsupportedPhasorFormat));
    }

    #[test]
    fn phasor_count_mismatch_is_invalid() {
        let cfg = float_rect_config(3);
        let frame = Frame::new(
            2,
            Timestamp::new(0, 0),
            FrameBody::Data(DataFrame::single(PmuData::new(vec![PhasorValue::rect(1.0, 0.0)]))),
        );
        assert!(matches!(build_frame(&frame, Some(&cfg)), Err(FrameError::Invalid(_))));
    }

    #[test]
    fn framesize_equals_output_length() {
        let cfg = float_rect_config(3);
        let frame = Frame::new(
            2,
            Timestamp::new(7, 3),
            FrameBody::Data(DataFrame::single(PmuData::new(vec![
                PhasorValue::rect(1.0, -2.0),
                PhasorValue::rect(0.0, 0.0),
                PhasorValue::rect(-3.5, 4.25),
            ]))),
        );
        for (frame, cfg) in [
            (&cmd_frame(), None),
            (&frame, Some(&cfg)),
            (&Frame::new(9, Timestamp::new(1, 0), FrameBody::Header(HeaderFrame::from_text("hi"))), None),
        ] {
            let bytes = build_frame(frame, cfg).unwrap();
            assert_eq!(frame_length(&bytes).unwrap(), bytes.len());
        }
    }

    #[test]
    fn cfg1_and_cfg3_bodies_are_unsupported() {
        let mut bytes = build_frame(&cmd_frame(), None).unwrap();
        for (bits, kind) in [(0b010u8, FrameType::Cfg1), (0b101, FrameType::Cfg3)] {
            bytes[1] = (bits << 4) | 0x01;
            let len = bytes.len();
            let chk = compute_crc(&bytes[..len - 2]).to_be_bytes();
            bytes[len - 2..].copy_from_slice(&chk);
            assert_eq!(parse_frame(&bytes, None), Err(FrameError::UnsupportedFrameKind(kind)));
        }
    }

    #[test]
    fn splitter_reassembles_across_boundaries_and_skips_garbage() {
        let cfg = float_rect_config(1);
        let frame = Frame::new(
            2,
            Timestamp::new(5, 0),
            FrameBody::Data(DataFrame::single(PmuData::new(vec![PhasorValue::rect(1.5, -0.25)]))),
        );
        let a = build_frame(&cmd_frame(), None).unwrap();
        let b = build_frame(&frame, Some(&cfg)).unwrap();
        let mut wire = vec![0x00, 0x13];
        wire.extend_from_slice(&a);
        wire.extend_from_slice(&b);

        let mut splitter = FrameSplitter::new();
        for chunk in wire.chunks(7) {
            splitter.push(chunk);
        }
        assert_eq!(splitter.next_frame().unwrap(), a);
        assert_eq!(splitter.next_frame().unwrap(), b);
        assert_eq!(splitter.next_frame(), None);
        assert_eq!(splitter.skipped(), 2);
    }
}
