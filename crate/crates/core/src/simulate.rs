//! Synthetic weather-radar I/Q series with known moments.
//!
//! Each of the `m` DFT bins receives an independent circular complex Gaussian
//! draw whose variance follows a Gaussian power spectral density centred at
//! `2 v / lambda` with standard deviation `2 w / lambda` (wrapped over one
//! alias on each side). The inverse DFT of those draws is the signal; complex
//! white noise at the requested SNR is added afterwards. The series is
//! periodic in `m`, so a rectangular-window periodogram of size `m` recovers
//! the bin draws exactly.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::moments::{IqSeries, RadarParams};
use crate::{Error, Result};

/// Identifier of the random generator, recorded in simulated file headers.
pub const RNG_ALGORITHM: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimSpec {
    pub power: f64,
    pub mean_velocity_mps: f64,
    pub width_mps: f64,
    pub snr_db: f64,
    pub n_pulses: usize,
    pub seed: u64,
    /// Wavelength and PRT of the simulated radar. The noise power of the
    /// generated series is derived from `power` and `snr_db` instead.
    pub params: RadarParams,
}

impl SimSpec {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        let vn = self.params.nyquist_velocity();
        if !(self.power.is_finite() && self.power > 0.0) {
            return Err(Error::invalid(format!("power must be positive, got {}", self.power)));
        }
        if !(self.mean_velocity_mps.is_finite() && self.mean_velocity_mps.abs() < vn) {
            return Err(Error::invalid(format!(
                "mean velocity {} m/s is outside the Nyquist interval (+/- {vn} m/s)",
                self.mean_velocity_mps
            )));
        }
        if !(self.width_mps.is_finite() && self.width_mps > 0.0 && self.width_mps < vn / 2.0) {
            return Err(Error::invalid(format!(
                "width must be in (0, {}) m/s, got {}",
                vn / 2.0,
                self.width_mps
            )));
        }
        if !self.snr_db.is_finite() {
            return Err(Error::invalid("SNR must be finite"));
        }
        if self.n_pulses < IqSeries::MIN_SAMPLES {
            return Err(Error::invalid(format!(
                "need at least {} pulses, got {}",
                IqSeries::MIN_SAMPLES,
                self.n_pulses
            )));
        }
        Ok(())
    }

    /// `power * 10^(-snr / 10)`.
    pub fn noise_power(&self) -> f64 {
        self.power * 10f64.powf(-self.snr_db / 10.0)
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Relative power of each FFT-ordered bin, summing to 1.
fn gaussian_bin_weights(spec: &SimSpec) -> Vec<f64> {
    let m = spec.n_pulses;
    let ts = spec.params.prt_s;
    let lambda = spec.params.wavelength_m;
    let center = 2.0 * spec.mean_velocity_mps * ts / lambda;
    let sigma = 2.0 * spec.width_mps * ts / lambda;
    let mut w: Vec<f64> = (0..m)
        .map(|j| {
            let f = if j < m.div_ceil(2) { j as f64 } else { j as f64 - m as f64 } / m as f64;
            (-1..=1)
                .map(|alias| {
                    let d = f - center + alias as f64;
                    (-d * d / (2.0 * sigma * sigma)).exp()
                })
                .sum()
        })
        .collect();
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        w.iter_mut().for_each(|x| *x /= total);
    } else {
        // Narrower than the grid resolves: put everything in the nearest bin.
        let j = (center * m as f64).round().rem_euclid(m as f64) as usize;
        w[j] = 1.0;
    }
    w
}

/// Deterministic for a given spec and seed. The returned series carries the
/// true noise power as its `noise_power`.
pub fn generate(spec: &SimSpec) -> Result<IqSeries> {
    spec.validate()?;
    let m = spec.n_pulses;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    // The inverse FFT is unnormalized, so draws with variance P w_j give
    // E|z|^2 = sum_j P w_j = P.
    let mut buf: Vec<Complex64> = gaussian_bin_weights(spec)
        .into_iter()
        .map(|w| complex_normal(&mut rng) * (spec.power * w).sqrt())
        .collect();
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);

    let noise = spec.noise_power();
    let noise_amp = noise.sqrt();
    for z in buf.iter_mut() {
        *z += complex_normal(&mut rng) * noise_amp;
    }
    IqSeries::new(buf, spec.params.with_noise_power(noise))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::fourier::{periodogram, Window};
    use crate::moments::{power_estimate, pulse_pair};

    fn base() -> SimSpec {
        SimSpec {
            power: 1.0,
            mean_velocity_mps: 7.5,
            width_mps: 1.25,
            snr_db: 20.0,
            n_pulses: 64,
            seed: 1,
            params: RadarParams::new(0.1, 1e-3, 0.0).unwrap(),
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate(&base()).unwrap();
        let b = generate(&base()).unwrap();
        assert_eq!(a, b);
        let c = generate(&base().with_seed(2)).unwrap();
        assert_ne!(a.samples(), c.samples());
    }

    #[test]
    fn rejects_bad_specs() {
        let bad = [
            SimSpec { mean_velocity_mps: 25.0, ..base() },
            SimSpec { mean_velocity_mps: -30.0, ..base() },
            SimSpec { width_mps: 0.0, ..base() },
            SimSpec { width_mps: 12.5, ..base() },
            SimSpec { power: 0.0, ..base() },
            SimSpec { n_pulses: 1, ..base() },
            SimSpec { snr_db: f64::NAN, ..base() },
        ];
        for s in bad {
            assert!(generate(&s).is_err(), "{s:?}");
        }
    }

    #[test]
    fn weights_sum_to_one_and_peak_at_mean() {
        let w = gaussian_bin_weights(&base());
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        // 150 Hz over 15.625 Hz bins is bin 9.6 -> 10 is the largest.
        let peak = w.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        assert_eq!(peak, 10);
    }

    #[test]
    fn near_tone_recovers_velocity() {
        // On-grid truth: 8 bins of 15.625 Hz = 125 Hz = 6.25 m/s.
        let spec = SimSpec {
            mean_velocity_mps: 6.25,
            width_mps: 1e-4 * 25.0,
            snr_db: 60.0,
            ..base()
        };
        for seed in 0..20 {
            let z = generate(&spec.with_seed(seed)).unwrap();
            let v = pulse_pair::pp_velocity(&z).unwrap();
            assert!((v - 6.25).abs() < 1e-3 * 25.0, "seed {seed}: {v}");
        }
    }

    #[test]
    fn noise_only_is_flat() {
        let spec = SimSpec { snr_db: -60.0, ..base() };
        let trials = 100;
        let mut acc = vec![0.0; 64];
        for seed in 0..trials {
            let z = generate(&spec.with_seed(seed)).unwrap();
            assert!(power_estimate(&z) / z.params().noise_power < 0.6);
            let s = periodogram(&z, 64, Window::Rectangular).unwrap();
            for (a, b) in acc.iter_mut().zip(&s.bins) {
                *a += b.density;
            }
        }
        // Each averaged bin is Gamma(100, mean/100): +/- 50% holds with
        // probability far above 1 - 1e-4 per bin.
        let mean = acc.iter().sum::<f64>() / 64.0;
        let (lo, hi) = acc.iter().fold((f64::MAX, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
        assert!(lo > 0.5 * mean && hi < 1.5 * mean, "{lo} {hi} {mean}");
        assert!(hi / lo < 3.0);
    }

    #[test]
    fn ensemble_power_and_mean_frequency() {
        let spec = base();
        let seeds = 200;
        let mut power = 0.0;
        let mut mean_f = 0.0;
        for seed in 0..seeds {
            let z = generate(&spec.with_seed(seed)).unwrap();
            power += z.samples().iter().map(|s| s.norm_sqr()).sum::<f64>() / 64.0;
            let s = periodogram(&z, 64, Window::Rectangular).unwrap();
            mean_f += s.bins.iter().map(|b| b.frequency_hz * b.density).sum::<f64>() / s.total_density();
        }
        power /= seeds as f64;
        mean_f /= seeds as f64;
        let want_power = 1.0 + 10f64.powf(-2.0);
        assert!((power - want_power).abs() / want_power < 0.05, "{power}");
        assert!((mean_f - 150.0).abs() < 0.02 * 500.0, "{mean_f}");
    }
}
