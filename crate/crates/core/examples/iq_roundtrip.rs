//! Write a simulated cell to disk, read it back and estimate from both copies.

use rft_doppler::ingest::{self, IqFile, MomentsRecord};
use rft_doppler::pipeline::{estimate, EstimateOptions};
use rft_doppler::simulate::{generate, SimSpec, RNG_ALGORITHM};
use rft_doppler::{Method, RadarParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("rft-doppler-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("cell.iq");

    let spec = SimSpec {
        power: 2.0,
        mean_velocity_mps: -4.2,
        width_mps: 0.8,
        snr_db: 15.0,
        n_pulses: 64,
        seed: 11,
        params: RadarParams::new(0.1, 1e-3, 0.0)?,
    };
    let series = generate(&spec)?;
    IqFile::new(series.clone())
        .with_meta("cell_id", "demo")
        .with_meta("rng", RNG_ALGORITHM)
        .with_meta("seed", spec.seed)
        .write(&path)?;
    println!("wrote {}", path.display());

    let back = ingest::read_iq(&path)?;
    println!("cell_id = {:?}, {} pulses, identical samples: {}", back.meta("cell_id"), back.series.len(), back.series == series);

    let opts = EstimateOptions::default();
    let records: Vec<MomentsRecord> = estimate(&back.series, &Method::ALL, &opts)?
        .iter()
        .map(|e| MomentsRecord::new(&e.moments, e.elapsed_ms))
        .collect();
    print!("{}", ingest::moments_to_text(&records));
    Ok(())
}
