//! Time-domain (pulse-pair) estimators built on the lag-one autocorrelation.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{power_estimate, DopplerMoments, IqSeries, Method};
use crate::{Error, Result};

/// Lag-one autocorrelation `R(Ts)`, averaged over the `m - 1` available pairs.
pub fn autocorr_lag1(z: &IqSeries) -> Complex64 {
    let s = z.samples();
    let pairs = s.len() - 1;
    let sum: Complex64 = s.windows(2).map(|w| w[0].conj() * w[1]).sum();
    sum / pairs as f64
}

/// Phase of `r` mapped to `(-pi, pi]`.
fn phase(r: Complex64) -> f64 {
    let a = r.arg();
    if a <= -PI {
        PI
    } else {
        a
    }
}

fn velocity_from_lag1(r: Complex64, z: &IqSeries) -> Result<f64> {
    if r.norm() == 0.0 {
        return Err(Error::degenerate(
            "lag-one autocorrelation is zero; mean velocity undefined",
        ));
    }
    let p = z.params();
    Ok(p.wavelength_m / (4.0 * PI * p.prt_s) * phase(r))
}

fn width_from_lag1(r: Complex64, p_hat: f64, z: &IqSeries) -> Result<f64> {
    if p_hat <= 0.0 {
        return Err(Error::degenerate(
            "estimated signal power is zero; spectrum width undefined",
        ));
    }
    let p = z.params();
    let bracket = (1.0 - r.norm() / p_hat).clamp(0.0, 1.0);
    let scale = p.wavelength_m * p.wavelength_m / (8.0 * PI * PI * p.prt_s * p.prt_s);
    Ok((scale * bracket).sqrt())
}

/// `lambda / (4 pi Ts) * arg R(Ts)`, in `(-v_N, v_N]`.
pub fn pp_velocity(z: &IqSeries) -> Result<f64> {
    velocity_from_lag1(autocorr_lag1(z), z)
}

/// Pulse-pair width using `|R(Ts)|`, with the bracket clamped to `[0, 1]`.
pub fn pp_width(z: &IqSeries) -> Result<f64> {
    width_from_lag1(autocorr_lag1(z), power_estimate(z), z)
}

pub fn pp_moments(z: &IqSeries) -> Result<DopplerMoments> {
    let r = autocorr_lag1(z);
    let power = power_estimate(z);
    Ok(DopplerMoments {
        power,
        mean_velocity_mps: velocity_from_lag1(r, z)?,
        width_mps: width_from_lag1(r, power, z)?,
        method: Method::PulsePair,
    })
}
