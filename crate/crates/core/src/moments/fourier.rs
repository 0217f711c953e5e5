//! Frequency-domain estimators: the DFT periodogram and its first two moments.
//!
//! The velocity and width sums index bins by `k = -M/2 .. M/2 - 1` and
//! normalize by `M - 1` by default ([`MomentConvention::AsPrinted`]); the
//! textbook `k / M` form is available for cross-checks.
//!
//! When the series carries a noise power `N`, the expected white-noise floor
//! `N / M` per bin is removed inside the moment sums so that they stay
//! consistent with the noise-corrected power `P = mean|Z|^2 - N` they are
//! divided by. With `N = 0` the sums are used unchanged.

use std::str::FromStr;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::{
    power_estimate, DopplerMoments, IqSeries, Method, RadarParams, Spectrum, SpectrumBin,
    SpectrumKind,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Window {
    #[default]
    Rectangular,
    Hann,
}

impl Window {
    pub fn coefficients(&self, len: usize) -> Vec<f64> {
        match self {
            Window::Rectangular => vec![1.0; len],
            Window::Hann if len < 2 => vec![1.0; len],
            Window::Hann => (0..len)
                .map(|n| {
                    let x = 2.0 * std::f64::consts::PI * n as f64 / (len - 1) as f64;
                    0.5 - 0.5 * x.cos()
                })
                .collect(),
        }
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rectangular" | "rect" | "none" => Ok(Window::Rectangular),
            "hann" | "hanning" => Ok(Window::Hann),
            other => Err(Error::invalid(format!("unknown window `{other}`"))),
        }
    }
}

/// Denominator used for the normalized bin frequency in the moment sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentConvention {
    /// `k / (M - 1)`.
    #[default]
    #[serde(rename = "paper")]
    AsPrinted,
    /// `k / M`.
    Conventional,
}

impl MomentConvention {
    fn denominator(&self, fft_size: usize) -> f64 {
        match self {
            MomentConvention::AsPrinted => (fft_size - 1) as f64,
            MomentConvention::Conventional => fft_size as f64,
        }
    }
}

impl FromStr for MomentConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper" => Ok(MomentConvention::AsPrinted),
            "conventional" => Ok(MomentConvention::Conventional),
            other => Err(Error::invalid(format!(
                "unknown moment convention `{other}` (expected paper|conventional)"
            ))),
        }
    }
}

/// Windowed periodogram on `fft_size` points.
///
/// Bins run from `k = -M/2` to `M/2 - 1` at `k / (M Ts)` Hz. Densities are
/// `|DFT(w Z)|^2 / (M sum w^2)`, so for the rectangular window they sum to
/// the mean of `|Z|^2`.
pub fn periodogram(z: &IqSeries, fft_size: usize, window: Window) -> Result<Spectrum> {
    let m = z.len();
    if fft_size < m {
        return Err(Error::invalid(format!(
            "FFT size {fft_size} is shorter than the series ({m} samples)"
        )));
    }
    if !fft_size.is_power_of_two() {
        return Err(Error::invalid(format!(
            "FFT size must be a power of two, got {fft_size}"
        )));
    }
    let w = window.coefficients(m);
    let energy: f64 = w.iter().map(|x| x * x).sum();

    let mut buf: Vec<Complex64> = z
        .samples()
        .iter()
        .zip(&w)
        .map(|(s, wi)| s * wi)
        .chain(std::iter::repeat(Complex64::new(0.0, 0.0)))
        .take(fft_size)
        .collect();
    FftPlanner::new().plan_fft_forward(fft_size).process(&mut buf);

    let scale = 1.0 / (fft_size as f64 * energy);
    let df = 1.0 / (fft_size as f64 * z.params().prt_s);
    let half = fft_size / 2;
    let bins = (0..fft_size)
        .map(|i| {
            // i = 0 is k = -M/2, stored at FFT index M/2.
            let src = (i + half) % fft_size;
            let k = i as f64 - half as f64;
            SpectrumBin {
                frequency_hz: k * df,
                density: buf[src].norm_sqr() * scale,
            }
        })
        .collect();
    Spectrum::new(SpectrumKind::DftPeriodogram, bins)
}

fn check_dft(s: &Spectrum, p_hat: f64) -> Result<()> {
    if s.kind != SpectrumKind::DftPeriodogram {
        return Err(Error::invalid(format!(
            "expected a DFT periodogram, got {}",
            s.kind.as_str()
        )));
    }
    if s.len() < 2 {
        return Err(Error::invalid("periodogram needs at least two bins"));
    }
    if !(p_hat > 0.0) {
        return Err(Error::degenerate("estimated power is zero"));
    }
    Ok(())
}

/// `(S_k - N/M, k / denom)` for each bin.
fn centered_terms<'a>(
    s: &'a Spectrum,
    params: &RadarParams,
    convention: MomentConvention,
) -> impl Iterator<Item = (f64, f64)> + 'a {
    let m = s.len();
    let floor = params.noise_power / m as f64;
    let denom = convention.denominator(m);
    let half = (m / 2) as f64;
    s.bins
        .iter()
        .enumerate()
        .map(move |(i, b)| (b.density - floor, (i as f64 - half) / denom))
}

/// Mean velocity from the periodogram first moment.
pub fn fft_velocity(
    s: &Spectrum,
    p_hat: f64,
    params: &RadarParams,
    convention: MomentConvention,
) -> Result<f64> {
    check_dft(s, p_hat)?;
    let first: f64 = centered_terms(s, params, convention)
        .map(|(d, x)| d * x)
        .sum();
    Ok(params.wavelength_m / (2.0 * p_hat * params.prt_s) * first)
}

/// Spectrum width from the periodogram second moment about `v_hat`.
///
/// The bracket is `k / denom - 2 v Ts / lambda`, i.e. centered on the
/// estimated mean, so a point mass has zero width.
pub fn fft_width(
    s: &Spectrum,
    p_hat: f64,
    v_hat: f64,
    params: &RadarParams,
    convention: MomentConvention,
) -> Result<f64> {
    check_dft(s, p_hat)?;
    let center = 2.0 * v_hat * params.prt_s / params.wavelength_m;
    let second: f64 = centered_terms(s, params, convention)
        .map(|(d, x)| d * (x - center).powi(2))
        .sum();
    let lambda = params.wavelength_m;
    let w2 = lambda * lambda / (4.0 * p_hat * params.prt_s * params.prt_s) * second;
    Ok(w2.max(0.0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FftOptions {
    /// Defaults to the next power of two at or above the series length.
    pub fft_size: Option<usize>,
    pub window: Window,
    pub convention: MomentConvention,
}

impl FftOptions {
    pub fn resolved_size(&self, len: usize) -> usize {
        self.fft_size.unwrap_or_else(|| len.next_power_of_two())
    }
}

/// Periodogram plus its moments, with power from the noise-corrected mean.
pub fn fft_moments(z: &IqSeries, opts: &FftOptions) -> Result<(DopplerMoments, Spectrum)> {
    let spectrum = periodogram(z, opts.resolved_size(z.len()), opts.window)?;
    let p_hat = power_estimate(z);
    let params = z.params();
    let v = fft_velocity(&spectrum, p_hat, params, opts.convention)?;
    let w = fft_width(&spectrum, p_hat, v, params, opts.convention)?;
    let moments = DopplerMoments {
        power: p_hat,
        mean_velocity_mps: v,
        width_mps: w,
        method: Method::Fft,
    };
    Ok((moments, spectrum))
}
