//! Radar parameters, I/Q series, spectra and the three moment estimators.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub mod fourier;
pub mod pulse_pair;
pub mod ramanujan;

/// Wavelength, pulse-repetition time and (optional) receiver noise power.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadarParams {
    pub wavelength_m: f64,
    pub prt_s: f64,
    /// Noise power `N` in the same linear units as `|Z|^2`; 0 when unknown.
    pub noise_power: f64,
}

impl RadarParams {
    pub fn new(wavelength_m: f64, prt_s: f64, noise_power: f64) -> Result<Self> {
        let p = Self {
            wavelength_m,
            prt_s,
            noise_power,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.wavelength_m.is_finite() && self.wavelength_m > 0.0) {
            return Err(Error::invalid(format!(
                "wavelength must be finite and positive, got {}",
                self.wavelength_m
            )));
        }
        if !(self.prt_s.is_finite() && self.prt_s > 0.0) {
            return Err(Error::invalid(format!(
                "pulse repetition time must be finite and positive, got {}",
                self.prt_s
            )));
        }
        if !(self.noise_power.is_finite() && self.noise_power >= 0.0) {
            return Err(Error::invalid(format!(
                "noise power must be finite and non-negative, got {}",
                self.noise_power
            )));
        }
        if !self.nyquist_velocity().is_finite() {
            return Err(Error::invalid("Nyquist velocity is not finite"));
        }
        Ok(())
    }

    /// `lambda / (4 Ts)`.
    pub fn nyquist_velocity(&self) -> f64 {
        self.wavelength_m / (4.0 * self.prt_s)
    }

    /// `1 / (2 Ts)` in Hz.
    pub fn nyquist_frequency(&self) -> f64 {
        0.5 / self.prt_s
    }

    pub fn with_noise_power(self, noise_power: f64) -> Self {
        Self {
            noise_power,
            ..self
        }
    }
}

/// Complex samples `Z(k Ts) = I + jQ` of one range cell.
#[derive(Debug, Clone, PartialEq)]
pub struct IqSeries {
    samples: Vec<Complex64>,
    params: RadarParams,
}

impl IqSeries {
    pub const MIN_SAMPLES: usize = 2;

    pub fn new(samples: Vec<Complex64>, params: RadarParams) -> Result<Self> {
        params.validate()?;
        if samples.len() < Self::MIN_SAMPLES {
            return Err(Error::invalid(format!(
                "an I/Q series needs at least {} samples, got {}",
                Self::MIN_SAMPLES,
                samples.len()
            )));
        }
        if samples.iter().any(|z| !z.is_finite()) {
            return Err(Error::invalid("I/Q samples must be finite"));
        }
        Ok(Self { samples, params })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn params(&self) -> &RadarParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// Same parameters, new samples (used by filters).
    pub fn with_samples(&self, samples: Vec<Complex64>) -> Result<Self> {
        Self::new(samples, self.params)
    }

    pub fn with_params(mut self, params: RadarParams) -> Result<Self> {
        params.validate()?;
        self.params = params;
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[serde(rename = "pp")]
    PulsePair,
    Fft,
    Rft,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::PulsePair, Method::Fft, Method::Rft];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::PulsePair => "pp",
            Method::Fft => "fft",
            Method::Rft => "rft",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pp" | "pulse-pair" | "pulsepair" => Ok(Method::PulsePair),
            "fft" => Ok(Method::Fft),
            "rft" => Ok(Method::Rft),
            other => Err(Error::invalid(format!("unknown method `{other}`"))),
        }
    }
}

/// Power, mean radial velocity and spectrum width of one cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DopplerMoments {
    pub power: f64,
    pub mean_velocity_mps: f64,
    pub width_mps: f64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    /// `|DFT|^2` bins ordered from `-M/2` to `M/2 - 1`.
    DftPeriodogram,
    /// One bin per Ramanujan order `q = 1..=Q`.
    RftOrder,
    /// One bin per coprime resonance `p/q`, ordered by frequency.
    RftResonance,
}

impl SpectrumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumKind::DftPeriodogram => "dft_periodogram",
            SpectrumKind::RftOrder => "rft_order",
            SpectrumKind::RftResonance => "rft_resonance",
        }
    }
}

impl FromStr for SpectrumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "dft_periodogram" => Ok(SpectrumKind::DftPeriodogram),
            "rft_order" => Ok(SpectrumKind::RftOrder),
            "rft_resonance" => Ok(SpectrumKind::RftResonance),
            other => Err(Error::invalid(format!("unknown spectrum kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBin {
    pub frequency_hz: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub bins: Vec<SpectrumBin>,
}

impl Spectrum {
    pub fn new(kind: SpectrumKind, bins: Vec<SpectrumBin>) -> Result<Self> {
        if let Some(b) = bins
            .iter()
            .find(|b| !(b.density.is_finite() && b.density >= 0.0 && b.frequency_hz.is_finite()))
        {
            return Err(Error::invalid(format!(
                "spectrum bins need finite frequency and non-negative density, got {b:?}"
            )));
        }
        Ok(Self { kind, bins })
    }

    pub fn total_density(&self) -> f64 {
        self.bins.iter().map(|b| b.density).sum()
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// Index of the bin with the largest density.
    pub fn peak(&self) -> Option<usize> {
        self.bins
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.density.total_cmp(&b.1.density))
            .map(|(i, _)| i)
    }
}

/// Doppler frequency to radial velocity, `v = (lambda / 2) f`.
pub fn freq_to_velocity(frequency_hz: f64, params: &RadarParams) -> f64 {
    0.5 * params.wavelength_m * frequency_hz
}

/// Frequency standard deviation to velocity width, `w = (lambda / 2) sigma_f`.
pub fn width_scale(sigma_f_hz: f64, params: &RadarParams) -> f64 {
    0.5 * params.wavelength_m * sigma_f_hz
}

pub fn velocity_to_freq(velocity_mps: f64, params: &RadarParams) -> f64 {
    2.0 * velocity_mps / params.wavelength_m
}

/// Mean of `|Z|^2` minus the noise power, clamped at zero.
pub fn power_estimate(z: &IqSeries) -> f64 {
    let mean = z.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / z.len() as f64;
    (mean - z.params.noise_power).max(0.0)
}
