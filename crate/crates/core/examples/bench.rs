//! Median per-call time of each estimator on simulated cells of growing length.

use rft_doppler::bench::run_bench;
use rft_doppler::pipeline::EstimateOptions;
use rft_doppler::simulate::{generate, SimSpec};
use rft_doppler::{Method, RadarParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = RadarParams::new(0.1, 1e-3, 0.0)?;
    for pulses in [64, 256, 1024] {
        let spec = SimSpec {
            power: 1.0,
            mean_velocity_mps: 7.5,
            width_mps: 1.25,
            snr_db: 20.0,
            n_pulses: pulses,
            seed: 0,
            params,
        };
        let report = run_bench(&generate(&spec)?, &pulses.to_string(), "simulated", &Method::ALL, 30, &EstimateOptions::default())?;
        println!("{report}");
    }
    Ok(())
}
