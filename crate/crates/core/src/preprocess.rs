//! Clutter rejection ahead of moment estimation.
//!
//! [`FilterSpec`] is a cascade of real-coefficient biquads (`a0 = 1`) run in
//! direct form II transposed over the complex samples, starting from a zero
//! state. The shipped default is a 4th-order elliptic high-pass; its design
//! parameters are recorded in `filters/clutter_ellip4.txt`.
//!
//! Spec files hold one section per line, `b0 b1 b2 a1 a2`, separated by
//! whitespace or commas. `#` starts a comment; comment lines before the first
//! section become the description.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::moments::IqSeries;
use crate::{Error, Result};

const DEFAULT_CLUTTER_SPEC: &str = include_str!("../filters/clutter_ellip4.txt");

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Biquad {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Biquad {
    pub const IDENTITY: Biquad = Biquad {
        b0: 1.0,
        b1: 0.0,
        b2: 0.0,
        a1: 0.0,
        a2: 0.0,
    };

    /// Poles strictly inside the unit circle (stability triangle).
    pub fn is_stable(&self) -> bool {
        self.a2.abs() < 1.0 && self.a1.abs() < 1.0 + self.a2
    }

    fn is_finite(&self) -> bool {
        [self.b0, self.b1, self.b2, self.a1, self.a2]
            .iter()
            .all(|c| c.is_finite())
    }

    /// `H(z)` evaluated at `z`.
    pub fn response_at(&self, z: Complex64) -> Complex64 {
        let zi = z.inv();
        let zi2 = zi * zi;
        (self.b0 + zi * self.b1 + zi2 * self.b2) / (1.0 + zi * self.a1 + zi2 * self.a2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterSpec {
    sections: Vec<Biquad>,
    description: String,
}

impl FilterSpec {
    pub fn new(sections: Vec<Biquad>, description: impl Into<String>) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::invalid("a filter needs at least one biquad section"));
        }
        for (i, s) in sections.iter().enumerate() {
            if !s.is_finite() {
                return Err(Error::invalid(format!("section {i} has non-finite coefficients")));
            }
            if !s.is_stable() {
                return Err(Error::invalid(format!(
                    "section {i} is unstable (a1 = {}, a2 = {})",
                    s.a1, s.a2
                )));
            }
        }
        Ok(Self {
            sections,
            description: description.into(),
        })
    }

    pub fn identity() -> Self {
        Self {
            sections: vec![Biquad::IDENTITY],
            description: "identity".into(),
        }
    }

    /// The shipped 4th-order elliptic high-pass clutter filter.
    pub fn default_clutter() -> Self {
        Self::parse(DEFAULT_CLUTTER_SPEC).expect("shipped filter spec is valid")
    }

    pub fn sections(&self) -> &[Biquad] {
        &self.sections
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut sections = Vec::new();
        let mut description = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let (body, comment) = match raw.find('#') {
                Some(pos) => (&raw[..pos], Some(raw[pos + 1..].trim())),
                None => (raw, None),
            };
            let body = body.trim();
            if body.is_empty() {
                if let Some(c) = comment.filter(|_| sections.is_empty()) {
                    description.push(c.to_string());
                }
                continue;
            }
            let coeffs = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| Error::parse(line_no, format!("bad coefficient `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            let [b0, b1, b2, a1, a2] = coeffs[..] else {
                return Err(Error::parse(
                    line_no,
                    format!("expected 5 coefficients (b0 b1 b2 a1 a2), got {}", coeffs.len()),
                ));
            };
            sections.push(Biquad { b0, b1, b2, a1, a2 });
        }
        Self::new(sections, description.join("\n"))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in self.description.lines() {
            let _ = writeln!(out, "# {line}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "{} {} {} {} {}", s.b0, s.b1, s.b2, s.a1, s.a2);
        }
        out
    }

    /// Cascade response at `z`.
    pub fn response_at(&self, z: Complex64) -> Complex64 {
        self.sections.iter().map(|s| s.response_at(z)).product()
    }

    /// Cascade response at a normalized frequency in cycles per sample.
    pub fn response(&self, cycles_per_sample: f64) -> Complex64 {
        self.response_at(Complex64::from_polar(1.0, 2.0 * PI * cycles_per_sample))
    }

    /// Filter a bare sample slice.
    pub fn filter(&self, input: &[Complex64]) -> Vec<Complex64> {
        let mut out = input.to_vec();
        for s in &self.sections {
            let (mut s1, mut s2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for x in out.iter_mut() {
                let xin = *x;
                let y = xin * s.b0 + s1;
                s1 = xin * s.b1 - y * s.a1 + s2;
                s2 = xin * s.b2 - y * s.a2;
                *x = y;
            }
        }
        out
    }
}

pub fn apply_filter(z: &IqSeries, spec: &FilterSpec) -> Result<IqSeries> {
    z.with_samples(spec.filter(z.samples()))
}

/// Subtract the complex mean.
pub fn remove_dc(z: &IqSeries) -> Result<IqSeries> {
    let mean = z.samples().iter().sum::<Complex64>() / z.len() as f64;
    z.with_samples(z.samples().iter().map(|s| s - mean).collect())
}
