//! Ramanujan-Fourier analysis of finite complex sequences.
//!
//! Samples are indexed from `n = 1`. The forward coefficient of order `q` is
//!
//! ```text
//! x_q = (1 / phi(q)) * (1 / t) * sum_{n=1..t} x(n) c_q(n)
//! ```
//!
//! i.e. the finite-record mean value of `x(n) c_q(n)`. Two spectra are built
//! from the analysis:
//!
//! - [`rft_power_spectrum`]: one bin per order, density `phi(q) |x_q|^2`,
//!   labelled with the order's fundamental `1 / (q Ts)`;
//! - [`resonance_spectrum`]: `x_q` split into its coprime-character
//!   projections `X_{p/q}`, one bin per resonance `p/q` at `(p/q) / Ts`.
//!   Because `c_q(n) = sum_p exp(-2 pi i p n / q)`, the projections satisfy
//!   `x_q = (1 / phi(q)) sum_p X_{p/q}`. This is the spectrum the RFT moment
//!   estimator uses, since the order spectrum cannot tell `+f` from `-f`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::moments::{RadarParams, Spectrum, SpectrumBin, SpectrumKind};
use crate::numtheory::{self, RamanujanTable};
use crate::{Error, Result};

/// Forward coefficients `x_q` for `q = 1..=Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct RftCoefficients {
    coeffs: Vec<Complex64>,
    sample_count: usize,
}

impl RftCoefficients {
    pub fn new(coeffs: Vec<Complex64>, sample_count: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("at least one coefficient (q = 1) is required"));
        }
        if sample_count == 0 {
            return Err(Error::invalid("sample count must be >= 1"));
        }
        Ok(Self {
            coeffs,
            sample_count,
        })
    }

    pub fn max_order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    /// `x_q`, for `1 <= q <= max_order`.
    pub fn get(&self, q: usize) -> Complex64 {
        self.coeffs[q - 1]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }
}

/// `min(64, t / 2)`, at least 1.
pub fn default_max_order(sample_count: usize) -> usize {
    (sample_count / 2).clamp(1, 64)
}

/// Finite-record mean value `(1 / t) sum x(n)`.
pub fn mean_value(x: &[Complex64]) -> Result<Complex64> {
    if x.is_empty() {
        return Err(Error::invalid("mean value of an empty sequence"));
    }
    Ok(x.iter().sum::<Complex64>() / x.len() as f64)
}

fn check_forward(x: &[Complex64], max_order: usize) -> Result<()> {
    if x.is_empty() {
        return Err(Error::invalid("cannot transform an empty sequence"));
    }
    if max_order == 0 {
        return Err(Error::invalid("maximum order Q must be >= 1"));
    }
    Ok(())
}

pub fn rft_forward(x: &[Complex64], max_order: usize) -> Result<RftCoefficients> {
    check_forward(x, max_order)?;
    let table = RamanujanTable::new(max_order)?;
    let t = x.len() as f64;
    let coeffs = (1..=max_order)
        .map(|q| {
            let period = table.period(q);
            let acc: Complex64 = x
                .iter()
                .enumerate()
                .map(|(i, v)| v * period[(i + 1) % q] as f64)
                .sum();
            acc / (t * table.totient(q) as f64)
        })
        .collect();
    RftCoefficients::new(coeffs, x.len())
}

/// Truncated synthesis `sum_{q=1..Q} x_q c_q(n)` for `n = 1..=length`.
pub fn rft_inverse(coeffs: &RftCoefficients, length: usize) -> Result<Vec<Complex64>> {
    if length == 0 {
        return Err(Error::invalid("reconstruction length must be >= 1"));
    }
    let table = RamanujanTable::new(coeffs.max_order())?;
    Ok((1..=length as u64)
        .map(|n| {
            coeffs
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, xq)| xq * table.get(i + 1, n) as f64)
                .sum()
        })
        .collect())
}

/// Ramanujan expansion of the divisor sum, `(pi^2 n / 6) sum_{q<=Q} c_q(n) / q^2`.
pub fn divisor_sum_expansion(n: u64, max_order: u64) -> Result<f64> {
    if max_order == 0 {
        return Err(Error::invalid("maximum order Q must be >= 1"));
    }
    let mut acc = 0.0;
    for q in 1..=max_order {
        let c = numtheory::ramanujan_sum(q, n)?;
        acc += c as f64 / (q * q) as f64;
    }
    Ok(PI * PI * n as f64 / 6.0 * acc)
}

/// Fold a frequency in cycles/sample into `(-1/2, 1/2]`.
fn fold_cycles(x: f64) -> f64 {
    let r = x - x.round();
    if r <= -0.5 {
        r + 1.0
    } else {
        r
    }
}

/// Order-indexed spectrum: bin `q` carries `phi(q) |x_q|^2` at `1 / (q Ts)`
/// Hz. Order 1 is the constant sequence and is placed at 0 Hz.
pub fn rft_power_spectrum(coeffs: &RftCoefficients, params: &RadarParams) -> Result<Spectrum> {
    let bins = coeffs
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, xq)| {
            let q = (i + 1) as u64;
            let phi = numtheory::totient(q)? as f64;
            Ok(SpectrumBin {
                frequency_hz: fold_cycles(1.0 / q as f64) / params.prt_s,
                density: phi * xq.norm_sqr(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Spectrum::new(SpectrumKind::RftOrder, bins)
}

/// Projection of the sequence on one Ramanujan character `exp(2 pi i p n / q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub p: u64,
    pub q: u64,
    /// `A_v(x(n) exp(-2 pi i p n / q))`.
    pub value: Complex64,
}

impl Resonance {
    /// `p / q` folded into `(-1/2, 1/2]` cycles per sample.
    pub fn cycles_per_sample(&self) -> f64 {
        fold_cycles(self.p as f64 / self.q as f64)
    }
}

/// Every coprime resonance `p/q` with `1 <= p <= q <= Q`, grouped by `q`.
pub fn resonance_components(x: &[Complex64], max_order: usize) -> Result<Vec<Resonance>> {
    check_forward(x, max_order)?;
    let t = x.len() as f64;
    let mut out = Vec::new();
    for q in 1..=max_order as u64 {
        let qs = q as usize;
        let twiddle: Vec<Complex64> = (0..q)
            .map(|r| Complex64::from_polar(1.0, -2.0 * PI * r as f64 / q as f64))
            .collect();
        for p in (1..=q).filter(|&p| matches!(numtheory::gcd(p, q), Ok(1))) {
            let step = (p % q) as usize;
            let mut r = step; // n = 1
            let mut acc = Complex64::new(0.0, 0.0);
            for v in x {
                acc += v * twiddle[r];
                r += step;
                if r >= qs {
                    r -= qs;
                }
            }
            out.push(Resonance {
                p,
                q,
                value: acc / t,
            });
        }
    }
    Ok(out)
}

/// Resonance spectrum sorted by frequency.
///
/// Each bin's density is `t |X_{p/q}|^2` (the periodogram value at `p/q`)
/// times the width of its cell on the circle of frequencies, half-way to
/// each neighbour. The densities therefore form a Riemann sum of the
/// periodogram and total roughly the mean of `|x|^2`.
pub fn resonance_spectrum(
    x: &[Complex64],
    max_order: usize,
    params: &RadarParams,
) -> Result<Spectrum> {
    let mut points: Vec<(f64, f64)> = resonance_components(x, max_order)?
        .iter()
        .map(|r| (r.cycles_per_sample(), r.value.norm_sqr()))
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));

    let k = points.len();
    let t = x.len() as f64;
    let bins = (0..k)
        .map(|i| {
            let width = if k == 1 {
                1.0
            } else {
                let prev = if i == 0 { points[k - 1].0 - 1.0 } else { points[i - 1].0 };
                let next = if i + 1 == k { points[0].0 + 1.0 } else { points[i + 1].0 };
                0.5 * (next - prev)
            };
            SpectrumBin {
                frequency_hz: points[i].0 / params.prt_s,
                density: t * points[i].1 * width,
            }
        })
        .collect();
    Spectrum::new(SpectrumKind::RftResonance, bins)
}
