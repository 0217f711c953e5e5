//! Pulse-pair moments of a simulated Gaussian echo at several SNRs.

use rft_doppler::moments::pulse_pair::pp_moments;
use rft_doppler::simulate::{generate, SimSpec};
use rft_doppler::RadarParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let params = RadarParams::new(0.1, 1e-3, 0.0)?;
    println!("Nyquist velocity {} m/s; truth v = -12 m/s, w = 2 m/s", params.nyquist_velocity());
    for snr_db in [0.0, 10.0, 20.0, 40.0] {
        let spec = SimSpec {
            power: 1.0,
            mean_velocity_mps: -12.0,
            width_mps: 2.0,
            snr_db,
            n_pulses: 128,
            seed: 7,
            params,
        };
        let m = pp_moments(&generate(&spec)?)?;
        println!(
            "snr {snr_db:>4} dB: power {:.3}  v {:+.3} m/s  w {:.3} m/s",
            m.power, m.mean_velocity_mps, m.width_mps
        );
    }
    Ok(())
}
