//! Ramanujan-Fourier coefficients of a periodic sequence and of a radar tone.

use std::f64::consts::PI;

use rft_doppler::numtheory::ramanujan_sum;
use rft_doppler::rft::{resonance_components, resonance_spectrum, rft_forward, rft_inverse, rft_power_spectrum};
use rft_doppler::{Complex64, RadarParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A sequence that is exactly c_6: all the weight lands on order 6.
    let x: Vec<Complex64> = (1..=600).map(|n| Complex64::new(ramanujan_sum(6, n).unwrap() as f64, 0.0)).collect();
    let coeffs = rft_forward(&x, 12)?;
    for (q, xq) in coeffs.coeffs().iter().enumerate() {
        println!("x_{:<2} = {:+.4}", q + 1, xq.re);
    }
    let back = rft_inverse(&coeffs, 6)?;
    println!("reconstruction of n = 1..=6: {:?}", back.iter().map(|z| z.re.round()).collect::<Vec<_>>());

    // A 150 Hz tone sampled at 1 kHz, seen through both spectra.
    let params = RadarParams::new(0.1, 1e-3, 0.0)?;
    let tone: Vec<Complex64> = (1..=128).map(|n| Complex64::from_polar(1.0, 2.0 * PI * 0.15 * n as f64)).collect();
    // The order spectrum only knows the period (3/20 has order 20), so the
    // tone shows up at 1/20 cycles per sample.
    let orders = rft_power_spectrum(&rft_forward(&tone, 32)?, &params)?;
    let q = orders.peak().unwrap() + 1;
    println!("\norder spectrum peak: q = {q} at {:.1} Hz", orders.bins[q - 1].frequency_hz);
    let strongest = resonance_components(&tone, 32)?
        .into_iter()
        .max_by(|a, b| a.value.norm().total_cmp(&b.value.norm()))
        .unwrap();
    println!(
        "strongest resonance: {}/{} -> {:.1} Hz, |X| = {:.3}",
        strongest.p,
        strongest.q,
        strongest.cycles_per_sample() / params.prt_s,
        strongest.value.norm()
    );
    let res = resonance_spectrum(&tone, 32, &params)?;
    println!("resonance spectrum: {} bins, total density {:.3}", res.len(), res.total_density());
    Ok(())
}
