//! Human-readable, field-per-line rendering of decoded frames.

use std::fmt::Write;

use num_complex::Complex64;

use crate::codec::build_frame;
use crate::crc::compute_crc;
use crate::frame::*;

/// Format a complex number the way the protocol literature writes phasors,
/// e.g. `2453+2444j`.
pub fn format_complex(c: Complex64) -> String {
    if c.im < 0.0 || (c.im == 0.0 && c.im.is_sign_negative()) {
        format!("{}-{}j", trim_float(c.re), trim_float(-c.im))
    } else {
        format!("{}+{}j", trim_float(c.re), trim_float(c.im))
    }
}

fn trim_float(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Render every header and body field, one `name = value` line each.
pub fn render_frame(frame: &Frame, config: Option<&ConfigFrame2>) -> String {
    let mut out = String::new();
    let ty = frame.frame_type();
    writeln!(out, "frame_type = {}", ty.name()).unwrap();
    writeln!(out, "version = {}", frame.version).unwrap();
    if let Ok(bytes) = build_frame(frame, config) {
        writeln!(out, "framesize = {}", bytes.len()).unwrap();
    }
    writeln!(out, "idcode = {}", frame.idcode).unwrap();
    writeln!(out, "soc = {}", frame.time.soc).unwrap();
    writeln!(out, "fracsec = {}", frame.time.fracsec).unwrap();
    writeln!(out, "time_quality = 0x{:02X}", frame.time.time_quality).unwrap();

    match &frame.body {
        FrameBody::Command(cmd) => {
            writeln!(out, "cmd = {}", cmd.cmd.name()).unwrap();
            if !cmd.ext.is_empty() {
                writeln!(out, "extframe = {}", hex(&cmd.ext)).unwrap();
            }
        }
        FrameBody::Header(hdr) => {
            writeln!(out, "info = {:?}", hdr.text()).unwrap();
        }
        FrameBody::Config2(cfg) => render_config2(&mut out, cfg),
        FrameBody::Data(data) => render_data(&mut out, data, config),
    }

    if let Ok(bytes) = build_frame(frame, config) {
        let chk = compute_crc(&bytes[..bytes.len() - CHK_LEN]);
        writeln!(out, "chk = 0x{chk:04X}").unwrap();
    }
    out
}

fn render_config2(out: &mut String, cfg: &ConfigFrame2) {
    writeln!(out, "time_base = {}", cfg.time_base).unwrap();
    writeln!(out, "num_pmu = {}", cfg.num_pmu()).unwrap();
    for (i, pmu) in cfg.pmus.iter().enumerate() {
        writeln!(out, "pmu[{i}].stn = {:?}", pmu.station_name).unwrap();
        writeln!(out, "pmu[{i}].idcode = {}", pmu.idcode).unwrap();
        writeln!(out, "pmu[{i}].format = 0x{:04X}", pmu.format.to_word()).unwrap();
        writeln!(out, "pmu[{i}].phnmr = {}", pmu.phnmr()).unwrap();
        writeln!(out, "pmu[{i}].annmr = {}", pmu.annmr()).unwrap();
        writeln!(out, "pmu[{i}].dgnmr = {}", pmu.dgnmr()).unwrap();
        for (k, ch) in pmu.phasor_channels.iter().enumerate() {
            let kind = if ch.unit.current { "I" } else { "V" };
            writeln!(out, "pmu[{i}].chnam[{k}] = {:?} ({kind}, factor {})", ch.name, ch.unit.factor).unwrap();
        }
        for (k, ch) in pmu.analog_channels.iter().enumerate() {
            writeln!(out, "pmu[{i}].anname[{k}] = {:?} (kind {}, factor {})", ch.name, ch.kind, ch.factor)
                .unwrap();
        }
        for (k, ch) in pmu.digital_channels.iter().enumerate() {
            writeln!(
                out,
                "pmu[{i}].dgunit[{k}] = normal 0x{:04X} valid 0x{:04X}",
                ch.normal, ch.valid
            )
            .unwrap();
        }
        writeln!(out, "pmu[{i}].fnom = {} Hz", pmu.nominal_freq.hz()).unwrap();
        writeln!(out, "pmu[{i}].cfgcnt = {}", pmu.config_count).unwrap();
    }
    writeln!(out, "data_rate = {}", cfg.data_rate).unwrap();
}

fn render_data(out: &mut String, data: &DataFrame, config: Option<&ConfigFrame2>) {
    for (i, pmu) in data.pmus.iter().enumerate() {
        writeln!(out, "pmu[{i}].stat = 0x{:04X}", pmu.stat).unwrap();
        for (k, phasor) in pmu.phasors.iter().enumerate() {
            let name = config
                .and_then(|c| c.pmus.get(i))
                .and_then(|b| b.phasor_channels.get(k))
                .map(|ch| format!(" ({})", ch.name))
                .unwrap_or_default();
            match phasor {
                PhasorValue::Rect(c) => {
                    writeln!(out, "pmu[{i}].phasor[{k}] = {}{name}", format_complex(*c)).unwrap();
                }
                PhasorValue::Polar { magnitude, angle } => {
                    writeln!(
                        out,
                        "pmu[{i}].phasor[{k}] = {} ({magnitude} < {angle} rad){name}",
                        format_complex(phasor.to_complex())
                    )
                    .unwrap();
                }
            }
        }
        writeln!(out, "pmu[{i}].freq = {}", pmu.freq).unwrap();
        writeln!(out, "pmu[{i}].dfreq = {}", pmu.dfreq).unwrap();
        for (k, analog) in pmu.analogs.iter().enumerate() {
            writeln!(out, "pmu[{i}].analog[{k}] = {analog}").unwrap();
        }
        for (k, digital) in pmu.digitals.iter().enumerate() {
            writeln!(out, "pmu[{i}].digital[{k}] = 0x{digital:04X}").unwrap();
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{Command, Frame, Timestamp};

    #[test]
    fn command_render_has_expected_lines() {
        let frame = Frame::command(1, Timestamp::new(0, 0), Command::DataOn);
        let text = render_frame(&frame, None);
        assert!(text.lines().any(|l| l == "frame_type = CMD"), "{text}");
        assert!(text.lines().any(|l| l == "cmd = DATA_ON"), "{text}");
        assert!(text.lines().any(|l| l == "framesize = 18"), "{text}");
    }

    #[test]
    fn header_render_contains_info() {
        let frame = Frame::new(3, Timestamp::new(0, 0), FrameBody::Header(HeaderFrame::from_text("hi")));
        let text = render_frame(&frame, None);
        assert!(text.contains("hi"), "{text}");
    }

    #[test]
    fn data_render_lists_phasors_as_complex() {
        let data = DataFrame::single(PmuData::new(vec![
            PhasorValue::rect(2453.0, 2444.0),
            PhasorValue::rect(2954.0, -2780.0),
        ]));
        let frame = Frame::new(2, Timestamp::new(0, 0), FrameBody::Data(data));
        let text = render_frame(&frame, None);
        assert!(text.contains("2453+2444j"), "{text}");
        assert!(text.contains("2954-2780j"), "{text}");
    }
}
