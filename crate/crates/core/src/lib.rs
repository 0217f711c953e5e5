//! Spectral moment estimation for pulsed Doppler weather-radar I/Q series.
//!
//! Each estimator returns power, mean radial velocity and spectrum width for
//! one range cell:
//!
//! - pulse-pair, from the lag-one autocorrelation ([`moments::pulse_pair`]);
//! - DFT periodogram moments ([`moments::fourier`]);
//! - Ramanujan-Fourier transform moments ([`rft`], [`moments::ramanujan`]).
//!
//! [`simulate`] produces Gaussian-spectrum series with known moments,
//! [`preprocess`] holds the clutter filter, and [`ingest`] reads and writes
//! the plain-text file formats used by the `rft-doppler` binary.
//!
//! ```
//! use rft_doppler::moments::{IqSeries, RadarParams};
//! use rft_doppler::moments::pulse_pair;
//! use num_complex::Complex64;
//!
//! let params = RadarParams::new(0.1, 1e-3, 0.0).unwrap();
//! let tone: Vec<Complex64> = (0..64)
//!     .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 100.0 * k as f64 * 1e-3))
//!     .collect();
//! let series = IqSeries::new(tone, params).unwrap();
//! let v = pulse_pair::pp_velocity(&series).unwrap();
//! assert!((v - 5.0).abs() < 1e-9);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod cli;
mod error;
pub mod ingest;
pub mod moments;
pub mod numtheory;
pub mod pipeline;
pub mod preprocess;
pub mod rft;
pub mod simulate;

pub use error::{Error, Result};
pub use moments::{DopplerMoments, IqSeries, Method, RadarParams, Spectrum, SpectrumKind};
pub use num_complex::Complex64;
