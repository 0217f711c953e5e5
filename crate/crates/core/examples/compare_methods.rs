//! Monte-Carlo comparison of the three estimators against simulated truth.
//!
//! `cargo run --release --example compare_methods -- [seeds]`

use rft_doppler::pipeline::{estimate, EstimateOptions};
use rft_doppler::simulate::{generate, SimSpec};
use rft_doppler::{Method, RadarParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seeds: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(200);
    let params = RadarParams::new(0.1, 1e-3, 0.0)?;
    let base = SimSpec {
        power: 1.0,
        mean_velocity_mps: 7.5,
        width_mps: 1.25,
        snr_db: 20.0,
        n_pulses: 64,
        seed: 0,
        params,
    };
    let opts = EstimateOptions::default();
    let mut v = vec![Vec::new(); 3];
    let mut w = vec![Vec::new(); 3];
    for seed in 0..seeds {
        for (i, e) in estimate(&generate(&base.with_seed(seed))?, &Method::ALL, &opts)?.iter().enumerate() {
            v[i].push(e.moments.mean_velocity_mps);
            w[i].push(e.moments.width_mps);
        }
    }
    let stats = |xs: &[f64]| {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        (mean, (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt())
    };
    println!("{seeds} seeds, truth v = {} m/s, w = {} m/s", base.mean_velocity_mps, base.width_mps);
    println!("{:<6} {:>10} {:>10} {:>10} {:>10}", "method", "mean v", "std v", "mean w", "std w");
    for (i, m) in Method::ALL.iter().enumerate() {
        let (mv, sv) = stats(&v[i]);
        let (mw, sw) = stats(&w[i]);
        println!("{m:<6} {mv:>10.3} {sv:>10.3} {mw:>10.3} {sw:>10.3}");
    }
    Ok(())
}
