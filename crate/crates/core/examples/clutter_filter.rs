//! Frequency response of the shipped clutter filter, and what it does to a
//! weather echo buried under zero-velocity clutter.

use rft_doppler::moments::pulse_pair::pp_moments;
use rft_doppler::preprocess::{apply_filter, FilterSpec};
use rft_doppler::simulate::{generate, SimSpec};
use rft_doppler::{Complex64, IqSeries, RadarParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let filter = FilterSpec::default_clutter();
    println!("{}", filter.description());
    for f in [0.0, 0.005, 0.01, 0.02, 0.04, 0.1, 0.25, 0.5] {
        println!("  {f:>5} cycles/sample: {:>7.2} dB", 20.0 * filter.response(f).norm().log10());
    }

    let params = RadarParams::new(0.1, 1e-3, 0.0)?;
    let spec = SimSpec {
        power: 1.0,
        mean_velocity_mps: 10.0,
        width_mps: 1.5,
        snr_db: 30.0,
        n_pulses: 2048,
        seed: 3,
        params,
    };
    let weather = generate(&spec)?;
    let clutter = Complex64::new(6.0, -4.0);
    let mixed = IqSeries::new(weather.samples().iter().map(|z| z + clutter).collect(), *weather.params())?;
    let raw = pp_moments(&mixed)?;
    let clean = pp_moments(&apply_filter(&mixed, &filter)?)?;
    println!("\ntruth v = {} m/s", spec.mean_velocity_mps);
    println!("unfiltered pulse-pair v = {:+.3} m/s", raw.mean_velocity_mps);
    println!("filtered   pulse-pair v = {:+.3} m/s", clean.mean_velocity_mps);
    Ok(())
}
