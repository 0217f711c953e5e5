//! Filter-then-estimate pipeline shared by the binary, the bench harness and
//! the examples.

use std::time::Instant;

use crate::moments::fourier::{self, FftOptions};
use crate::moments::ramanujan::{self, RftOptions};
use crate::moments::{pulse_pair, DopplerMoments, IqSeries, Method, Spectrum};
use crate::preprocess::{self, FilterSpec};
use crate::Result;

#[derive(Debug, Clone, Default)]
pub struct EstimateOptions {
    /// Clutter filter applied before every estimator; `None` skips it.
    pub filter: Option<FilterSpec>,
    pub fft: FftOptions,
    pub rft: RftOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub moments: DopplerMoments,
    /// Periodogram for FFT, order spectrum for RFT, nothing for pulse-pair.
    pub spectrum: Option<Spectrum>,
    pub elapsed_ms: f64,
}

/// One estimator on an already-filtered series.
pub fn estimate_with(z: &IqSeries, method: Method, opts: &EstimateOptions) -> Result<(DopplerMoments, Option<Spectrum>)> {
    match method {
        Method::PulsePair => pulse_pair::pp_moments(z).map(|m| (m, None)),
        Method::Fft => fourier::fft_moments(z, &opts.fft).map(|(m, s)| (m, Some(s))),
        Method::Rft => ramanujan::rft_estimate(z, &opts.rft).map(|(m, s)| (m, Some(s))),
    }
}

pub fn prepare(z: &IqSeries, opts: &EstimateOptions) -> Result<IqSeries> {
    match &opts.filter {
        Some(spec) => preprocess::apply_filter(z, spec),
        None => Ok(z.clone()),
    }
}

/// Filter once, then run each requested estimator, timing each one.
pub fn estimate(z: &IqSeries, methods: &[Method], opts: &EstimateOptions) -> Result<Vec<Estimate>> {
    let filtered = prepare(z, opts)?;
    methods
        .iter()
        .map(|&method| {
            let start = Instant::now();
            let (moments, spectrum) = estimate_with(&filtered, method, opts)?;
            Ok(Estimate {
                moments,
                spectrum,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{RadarParams, SpectrumKind};
    use num_complex::Complex64;
    use std::f64::consts::PI;

    #[test]
    fn all_methods_agree_on_a_tone() {
        let p = RadarParams::new(0.1, 1e-3, 0.0).unwrap();
        // 9 bins of 1000/64 Hz
        let f0 = 9.0 * 1000.0 / 64.0;
        let s = (0..64)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * f0 * k as f64 * 1e-3))
            .collect();
        let z = IqSeries::new(s, p).unwrap();
        let out = estimate(&z, &Method::ALL, &EstimateOptions::default()).unwrap();
        assert_eq!(out.len(), 3);
        assert!(out[0].spectrum.is_none());
        assert_eq!(out[1].spectrum.as_ref().unwrap().kind, SpectrumKind::DftPeriodogram);
        assert_eq!(out[2].spectrum.as_ref().unwrap().kind, SpectrumKind::RftOrder);
        for e in &out {
            assert!((e.moments.mean_velocity_mps - 0.05 * f0).abs() < 0.1 * 25.0, "{e:?}");
            assert!(e.elapsed_ms >= 0.0);
        }
        assert!((out[0].moments.mean_velocity_mps - 0.05 * f0).abs() < 1e-9);
    }

    #[test]
    fn filter_removes_clutter_before_estimation() {
        let p = RadarParams::new(0.1, 1e-3, 0.0).unwrap();
        let f0 = 250.0;
        // The zero-state filter rings for a few hundred pulses after the
        // clutter step, so the series is long relative to that transient.
        let s = (0..2048)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * f0 * k as f64 * 1e-3) + 5.0)
            .collect();
        let z = IqSeries::new(s, p).unwrap();
        let raw = estimate(&z, &[Method::PulsePair], &EstimateOptions::default()).unwrap();
        assert!(raw[0].moments.mean_velocity_mps.abs() < 1.0);
        let opts = EstimateOptions {
            filter: Some(FilterSpec::default_clutter()),
            ..Default::default()
        };
        let clean = estimate(&z, &[Method::PulsePair], &opts).unwrap();
        assert!((clean[0].moments.mean_velocity_mps - 12.5).abs() < 0.5, "{:?}", clean[0]);
    }
}
