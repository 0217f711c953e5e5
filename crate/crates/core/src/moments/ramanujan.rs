//! Moments of Ramanujan spectra: density-weighted mean and spread of the bin
//! frequencies, scaled to velocity by `lambda / 2`.

use serde::{Deserialize, Serialize};

use super::{freq_to_velocity, width_scale, DopplerMoments, IqSeries, Method, RadarParams, Spectrum, SpectrumKind};
use crate::rft;
use crate::{Error, Result};

pub fn rft_moments(s: &Spectrum, params: &RadarParams) -> Result<DopplerMoments> {
    if !matches!(s.kind, SpectrumKind::RftOrder | SpectrumKind::RftResonance) {
        return Err(Error::invalid(format!(
            "expected a Ramanujan spectrum, got {}",
            s.kind.as_str()
        )));
    }
    let total = s.total_density();
    if !(total > 0.0) {
        return Err(Error::degenerate("Ramanujan spectrum has no power"));
    }
    let mean_f = s.bins.iter().map(|b| b.frequency_hz * b.density).sum::<f64>() / total;
    let var_f = s
        .bins
        .iter()
        .map(|b| (b.frequency_hz - mean_f).powi(2) * b.density)
        .sum::<f64>()
        / total;
    Ok(DopplerMoments {
        power: total,
        mean_velocity_mps: freq_to_velocity(mean_f, params),
        width_mps: width_scale(var_f.max(0.0).sqrt(), params),
        method: Method::Rft,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RftOptions {
    /// Defaults to [`rft::default_max_order`] of the series length.
    pub max_order: Option<usize>,
}

impl RftOptions {
    pub fn resolved_order(&self, len: usize) -> usize {
        self.max_order.unwrap_or_else(|| rft::default_max_order(len))
    }
}

/// RFT estimate of one cell.
///
/// Moments come from the resonance spectrum; the returned spectrum is the
/// order-indexed one, for plotting.
pub fn rft_estimate(z: &IqSeries, opts: &RftOptions) -> Result<(DopplerMoments, Spectrum)> {
    let q = opts.resolved_order(z.len());
    let params = z.params();
    let resonances = rft::resonance_spectrum(z.samples(), q, params)?;
    let moments = rft_moments(&resonances, params)?;
    let coeffs = rft::rft_forward(z.samples(), q)?;
    let orders = rft::rft_power_spectrum(&coeffs, params)?;
    Ok((moments, orders))
}
