//! Plain-text file formats for I/Q series, spectra and moment records.
//!
//! All files are UTF-8 with LF line endings and `.` as the decimal separator.
//! Floating-point values are written with the shortest representation that
//! parses back to the same `f64`, so write/read round trips are exact.
//!
//! I/Q file:
//!
//! ```text
//! # wavelength_m = 0.1
//! # prt_s = 0.001
//! # noise_power = 0
//! # cell_id = 1
//! index,i,q
//! 0,0.25,-1.5
//! 1,0.5,0.75
//! ```
//!
//! Header lines are `# key = value` with lowercase keys; `wavelength_m` and
//! `prt_s` are mandatory, `noise_power` defaults to 0, and every other key is
//! kept verbatim as metadata. `#` lines without `=` are comments. The
//! `index,i,q` column line is optional on input; indices must count up from 0.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::moments::{DopplerMoments, IqSeries, Method, RadarParams, Spectrum, SpectrumBin, SpectrumKind};
use crate::{Error, Result};

pub const IQ_COLUMNS: &str = "index,i,q";
pub const SPECTRUM_COLUMNS: &str = "frequency_hz,density";
pub const MOMENTS_COLUMNS: &str = "method,power,velocity_mps,width_mps,elapsed_ms";

const KNOWN_KEYS: [&str; 3] = ["wavelength_m", "prt_s", "noise_power"];

/// An I/Q series with its header metadata (everything except the radar
/// parameters), in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct IqFile {
    pub series: IqSeries,
    pub metadata: Vec<(String, String)>,
}

impl IqFile {
    pub fn new(series: IqSeries) -> Self {
        Self {
            series,
            metadata: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Vec<(String, String, usize)> = Vec::new();
        let mut samples = Vec::new();
        let mut last_line = 0;
        let mut in_body = false;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let Some((k, v)) = rest.split_once('=') else {
                    continue;
                };
                if in_body {
                    return Err(Error::parse(line_no, "header line after data rows"));
                }
                let key = k.trim();
                if key.is_empty() {
                    return Err(Error::parse(line_no, "empty header key"));
                }
                if key.chars().any(|c| c.is_ascii_uppercase()) {
                    return Err(Error::parse(line_no, format!("header key `{key}` must be lowercase")));
                }
                if header.iter().any(|(k, _, _)| k == key) {
                    return Err(Error::parse(line_no, format!("duplicate header key `{key}`")));
                }
                header.push((key.to_string(), v.trim().to_string(), line_no));
                continue;
            }
            if !in_body && line.eq_ignore_ascii_case(IQ_COLUMNS) {
                in_body = true;
                continue;
            }
            in_body = true;
            samples.push(parse_iq_row(line, line_no, samples.len())?);
        }

        let number = |key: &'static str| -> Result<Option<f64>> {
            match header.iter().find(|(k, _, _)| k == key) {
                None => Ok(None),
                Some((_, v, line)) => v
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| Error::parse(*line, format!("`{key}` is not a number: `{v}`"))),
            }
        };
        let header_end = header.iter().map(|h| h.2).max().unwrap_or(1);
        let wavelength = number("wavelength_m")?.ok_or(Error::MissingKey {
            key: "wavelength_m",
            line: header_end,
        })?;
        let prt = number("prt_s")?.ok_or(Error::MissingKey {
            key: "prt_s",
            line: header_end,
        })?;
        let noise = number("noise_power")?.unwrap_or(0.0);
        let line_of = |key: &str| header.iter().find(|h| h.0 == key).map_or(header_end, |h| h.2);
        let params = RadarParams::new(wavelength, prt, noise).map_err(|e| {
            let line = if !(wavelength > 0.0) {
                line_of("wavelength_m")
            } else if !(prt > 0.0) {
                line_of("prt_s")
            } else {
                line_of("noise_power")
            };
            Error::parse(line, e.to_string())
        })?;

        if samples.len() < IqSeries::MIN_SAMPLES {
            return Err(Error::parse(
                last_line.max(1),
                format!(
                    "need at least {} pulse records, found {}",
                    IqSeries::MIN_SAMPLES,
                    samples.len()
                ),
            ));
        }
        let series = IqSeries::new(samples, params)?;
        let metadata = header
            .into_iter()
            .filter(|(k, _, _)| !KNOWN_KEYS.contains(&k.as_str()))
            .map(|(k, v, _)| (k, v))
            .collect();
        Ok(Self { series, metadata })
    }

    pub fn to_text(&self) -> String {
        let p = self.series.params();
        let mut out = String::new();
        let _ = writeln!(out, "# wavelength_m = {}", p.wavelength_m);
        let _ = writeln!(out, "# prt_s = {}", p.prt_s);
        let _ = writeln!(out, "# noise_power = {}", p.noise_power);
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        out.push_str(IQ_COLUMNS);
        out.push('\n');
        for (i, z) in self.series.samples().iter().enumerate() {
            let _ = writeln!(out, "{i},{},{}", z.re, z.im);
        }
        out
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn parse_iq_row(line: &str, line_no: usize, expected_index: usize) -> Result<Complex64> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    let [index, i, q] = fields[..] else {
        return Err(Error::parse(
            line_no,
            format!("expected 3 fields `index,i,q`, got {}", fields.len()),
        ));
    };
    let index: usize = index
        .parse()
        .map_err(|_| Error::parse(line_no, format!("bad pulse index `{index}`")))?;
    if index != expected_index {
        return Err(Error::parse(
            line_no,
            format!("pulse index {index} out of sequence (expected {expected_index})"),
        ));
    }
    let value = |s: &str, name: &str| -> Result<f64> {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::parse(line_no, format!("bad {name} value `{s}`")))
    };
    Ok(Complex64::new(value(i, "I")?, value(q, "Q")?))
}

pub fn read_iq(path: impl AsRef<Path>) -> Result<IqFile> {
    IqFile::read(path)
}

pub fn write_iq(file: &IqFile, path: impl AsRef<Path>) -> Result<()> {
    file.write(path)
}

/// One row of a moments file.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MomentsRecord {
    pub method: Method,
    pub power: f64,
    pub velocity_mps: f64,
    pub width_mps: f64,
    pub elapsed_ms: f64,
}

impl MomentsRecord {
    pub fn new(m: &DopplerMoments, elapsed_ms: f64) -> Self {
        Self {
            method: m.method,
            power: m.power,
            velocity_mps: m.mean_velocity_mps,
            width_mps: m.width_mps,
            elapsed_ms,
        }
    }
}

pub fn moments_to_text(records: &[MomentsRecord]) -> String {
    let mut out = String::from(MOMENTS_COLUMNS);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.method, r.power, r.velocity_mps, r.width_mps, r.elapsed_ms
        );
    }
    out
}

pub fn parse_moments(text: &str) -> Result<Vec<MomentsRecord>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line == MOMENTS_COLUMNS {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [method, rest @ ..] = &fields[..] else {
            unreachable!("split yields at least one field")
        };
        if rest.len() != 4 {
            return Err(Error::parse(line_no, format!("expected 5 fields, got {}", fields.len())));
        }
        let method: Method = method.parse().map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
        let nums = rest
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::parse(line_no, format!("bad number `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(MomentsRecord {
            method,
            power: nums[0],
            velocity_mps: nums[1],
            width_mps: nums[2],
            elapsed_ms: nums[3],
        });
    }
    Ok(out)
}

pub fn write_moments(records: &[MomentsRecord], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, moments_to_text(records))?;
    Ok(())
}

pub fn read_moments(path: impl AsRef<Path>) -> Result<Vec<MomentsRecord>> {
    parse_moments(&fs::read_to_string(path)?)
}

pub fn spectrum_to_text(s: &Spectrum) -> String {
    let mut out = format!("# kind = {}\n", s.kind.as_str());
    if s.kind == SpectrumKind::RftOrder {
        out.push_str("# rows are Ramanujan orders q = 1, 2, ...\n");
    }
    out.push_str(SPECTRUM_COLUMNS);
    out.push('\n');
    for b in &s.bins {
        let _ = writeln!(out, "{},{}", b.frequency_hz, b.density);
    }
    out
}

pub fn parse_spectrum(text: &str) -> Result<Spectrum> {
    let mut kind = None;
    let mut bins = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == SPECTRUM_COLUMNS {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                if k.trim() == "kind" {
                    kind = Some(
                        v.parse::<SpectrumKind>()
                            .map_err(|e| Error::parse(line_no, e.to_string()))?,
                    );
                }
            }
            continue;
        }
        let (f, d) = line
            .split_once(',')
            .ok_or_else(|| Error::parse(line_no, "expected `frequency_hz,density`"))?;
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::parse(line_no, format!("bad number `{}`", s.trim())))
        };
        bins.push(SpectrumBin {
            frequency_hz: num(f)?,
            density: num(d)?,
        });
    }
    let kind = kind.ok_or(Error::MissingKey { key: "kind", line: 1 })?;
    Spectrum::new(kind, bins)
}

pub fn write_spectrum(s: &Spectrum, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, spectrum_to_text(s))?;
    Ok(())
}

pub fn read_spectrum(path: impl AsRef<Path>) -> Result<Spectrum> {
    parse_spectrum(&fs::read_to_string(path)?)
}
