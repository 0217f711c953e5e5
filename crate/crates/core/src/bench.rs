//! Per-method timing of full-cell estimates.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::moments::{IqSeries, Method};
use crate::pipeline::{self, EstimateOptions};
use crate::{Error, Result};

/// Minimum number of timed repetitions per method.
pub const MIN_REPETITIONS: usize = 30;
const WARMUP_CALLS: usize = 3;
/// Each repetition repeats the estimate until at least this much time passes.
const MIN_BATCH: Duration = Duration::from_micros(50);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub cell_id: String,
    pub method: Method,
    pub velocity_mps: f64,
    pub width_mps: f64,
    /// Median wall-clock time of one full-cell estimate.
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub input: String,
    pub trials: usize,
    pub repetitions: usize,
    pub samples: usize,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, method: Method) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.method == method)
    }
}

fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Time `f`, batching calls so each sample spans at least [`MIN_BATCH`].
fn time_per_call<F: FnMut() -> Result<()>>(mut f: F, repetitions: usize) -> Result<f64> {
    for _ in 0..WARMUP_CALLS {
        f()?;
    }
    let mut batch = 1usize;
    loop {
        let start = Instant::now();
        for _ in 0..batch {
            f()?;
        }
        if start.elapsed() >= MIN_BATCH || batch >= 1 << 20 {
            break;
        }
        batch *= 2;
    }
    let mut samples = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let start = Instant::now();
        for _ in 0..batch {
            f()?;
        }
        samples.push(start.elapsed().as_secs_f64() * 1e3 / batch as f64);
    }
    Ok(median(&mut samples))
}

/// Time each method over `trials` repetitions (at least [`MIN_REPETITIONS`]).
///
/// The filter stage, when configured, runs once outside the timed region.
pub fn run_bench(
    z: &IqSeries,
    cell_id: &str,
    input: &str,
    methods: &[Method],
    trials: usize,
    opts: &EstimateOptions,
) -> Result<BenchReport> {
    if trials == 0 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    if methods.is_empty() {
        return Err(Error::invalid("no methods requested"));
    }
    let repetitions = trials.max(MIN_REPETITIONS);
    let filtered = pipeline::prepare(z, opts)?;
    let mut rows = Vec::with_capacity(methods.len());
    for &method in methods {
        let (moments, _) = pipeline::estimate_with(&filtered, method, opts)?;
        let elapsed_ms = time_per_call(
            || pipeline::estimate_with(&filtered, method, opts).map(drop),
            repetitions,
        )?;
        rows.push(BenchRow {
            cell_id: cell_id.to_string(),
            method,
            velocity_mps: moments.mean_velocity_mps,
            width_mps: moments.width_mps,
            elapsed_ms: elapsed_ms.max(f64::MIN_POSITIVE),
        });
    }
    Ok(BenchReport {
        input: input.to_string(),
        trials,
        repetitions,
        samples: z.len(),
        rows,
    })
}

impl std::fmt::Display for BenchReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "input: {} ({} pulses, {} trials, {} timed repetitions)",
            self.input, self.samples, self.trials, self.repetitions
        )?;
        writeln!(f, "{:<8} {:<8} {:>12} {:>12} {:>14}", "cell", "method", "V [m/s]", "W [m/s]", "time [ms]")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<8} {:<8} {:>12.3} {:>12.3} {:>14.6}",
                r.cell_id, r.method, r.velocity_mps, r.width_mps, r.elapsed_ms
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::RadarParams;
    use crate::simulate::{generate, SimSpec};

    fn cell(n: usize) -> IqSeries {
        generate(&SimSpec {
            power: 1.0,
            mean_velocity_mps: 5.0,
            width_mps: 1.0,
            snr_db: 20.0,
            n_pulses: n,
            seed: 3,
            params: RadarParams::new(0.1, 1e-3, 0.0).unwrap(),
        })
        .unwrap()
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn report_has_one_row_per_method() {
        let z = cell(64);
        let r = run_bench(&z, "1", "sim", &Method::ALL, 5, &EstimateOptions::default()).unwrap();
        assert_eq!(r.rows.len(), 3);
        assert_eq!(r.repetitions, MIN_REPETITIONS);
        assert!(r.rows.iter().all(|row| row.elapsed_ms > 0.0));
        let single = run_bench(&z, "1", "sim", &[Method::Fft], 1, &EstimateOptions::default()).unwrap();
        assert_eq!(single.rows.len(), 1);
        assert_eq!(single.rows[0].method, Method::Fft);
        assert!(run_bench(&z, "1", "sim", &[Method::Fft], 0, &EstimateOptions::default()).is_err());
        let text = r.to_string();
        assert!(text.contains("pp") && text.contains("rft"));
    }
}
