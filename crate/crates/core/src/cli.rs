//! Command-line front end behind the `rft-doppler` binary.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, out-of-range
//! simulation parameters), 2 for data errors (unreadable or malformed files,
//! degenerate estimates).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bench;
use crate::ingest::{self, IqFile, MomentsRecord};
use crate::moments::fourier::{FftOptions, MomentConvention, Window};
use crate::moments::ramanujan::RftOptions;
use crate::moments::{Method, RadarParams};
use crate::pipeline::{self, EstimateOptions};
use crate::preprocess::FilterSpec;
use crate::simulate::{self, SimSpec};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rft-doppler", version, about = "Doppler moment estimation: pulse-pair, FFT and Ramanujan-Fourier")]
struct Cli {
    /// Structured JSON output instead of tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a simulated I/Q file and echo its ground truth.
    Simulate(SimulateArgs),
    /// Estimate moments of one I/Q file.
    Estimate(EstimateArgs),
    /// Time the estimators on a file or a simulated cell.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct SimArgs {
    /// Mean radial velocity [m/s].
    #[arg(long, default_value_t = 7.5, allow_negative_numbers = true)]
    velocity: f64,
    /// Spectrum width [m/s].
    #[arg(long, default_value_t = 1.25)]
    width: f64,
    /// Signal power (linear).
    #[arg(long, default_value_t = 1.0)]
    power: f64,
    /// Signal-to-noise ratio [dB].
    #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
    snr: f64,
    #[arg(long, default_value_t = 64)]
    pulses: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Radar wavelength [m].
    #[arg(long, default_value_t = 0.1)]
    wavelength: f64,
    /// Pulse repetition time [s].
    #[arg(long, default_value_t = 1e-3)]
    prt: f64,
}

impl SimArgs {
    fn spec(&self) -> Result<SimSpec, Error> {
        let spec = SimSpec {
            power: self.power,
            mean_velocity_mps: self.velocity,
            width_mps: self.width,
            snr_db: self.snr,
            n_pulses: self.pulses,
            seed: self.seed,
            params: RadarParams::new(self.wavelength, self.prt, 0.0)?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    sim: SimArgs,
    /// Destination I/Q file.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    cell_id: Option<String>,
}

#[derive(Debug, Args)]
struct ProcessingArgs {
    /// `none`, `default` (shipped elliptic clutter filter) or a filter spec file.
    #[arg(long, default_value = "none")]
    filter: String,
    /// Periodogram size (power of two >= pulse count).
    #[arg(long)]
    fft_size: Option<usize>,
    /// Highest Ramanujan order Q.
    #[arg(long)]
    rft_max_q: Option<usize>,
    /// `paper` (k / (M - 1)) or `conventional` (k / M).
    #[arg(long, default_value = "paper")]
    moment_convention: String,
    /// Periodogram window: rectangular or hann.
    #[arg(long, default_value = "rectangular")]
    window: String,
}

impl ProcessingArgs {
    fn options(&self) -> Result<EstimateOptions, Error> {
        let filter = match self.filter.as_str() {
            "none" => None,
            "default" => Some(FilterSpec::default_clutter()),
            path => Some(FilterSpec::load(path)?),
        };
        if self.rft_max_q == Some(0) {
            return Err(Error::InvalidArgument("--rft-max-q must be >= 1".into()));
        }
        Ok(EstimateOptions {
            filter,
            fft: FftOptions {
                fft_size: self.fft_size,
                window: self.window.parse::<Window>()?,
                convention: self.moment_convention.parse::<MomentConvention>()?,
            },
            rft: RftOptions {
                max_order: self.rft_max_q,
            },
        })
    }
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(long)]
    input: PathBuf,
    /// pp, fft, rft or all.
    #[arg(long, default_value = "all")]
    method: String,
    /// Write the moments record here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the spectrum (FFT periodogram or RFT order spectrum) here.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[command(flatten)]
    processing: ProcessingArgs,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// I/Q file to time; a simulated cell is used when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "all")]
    method: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    sim: SimArgs,
    #[command(flatten)]
    processing: ProcessingArgs,
}

fn parse_methods(s: &str) -> Result<Vec<Method>, Error> {
    if s.trim() == "all" {
        return Ok(Method::ALL.to_vec());
    }
    let mut out: Vec<Method> = Vec::new();
    for part in s.split(',') {
        let m: Method = part.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn data(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_DATA,
        message: e.to_string(),
    }
}

/// Run the CLI with explicit arguments (including the program name) and
/// output streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(a, cli.json, out),
        Command::Estimate(a) => cmd_estimate(a, cli.json, out),
        Command::Bench(a) => cmd_bench(a, cli.json, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if f.code == EXIT_USAGE {
                let _ = writeln!(err, "run `rft-doppler --help` for usage");
            }
            f.code
        }
    }
}

fn cmd_simulate(a: &SimulateArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let spec = a.sim.spec().map_err(usage)?;
    let series = simulate::generate(&spec).map_err(usage)?;
    let mut file = IqFile::new(series)
        .with_meta("source", "simulate")
        .with_meta("rng", simulate::RNG_ALGORITHM)
        .with_meta("seed", spec.seed)
        .with_meta("truth_power", spec.power)
        .with_meta("truth_velocity_mps", spec.mean_velocity_mps)
        .with_meta("truth_width_mps", spec.width_mps)
        .with_meta("snr_db", spec.snr_db);
    if let Some(id) = &a.cell_id {
        file = file.with_meta("cell_id", id);
    }
    ingest::write_iq(&file, &a.out).map_err(data)?;

    let noise = spec.noise_power();
    let w = if json {
        writeln!(
            out,
            "{}",
            json!({
                "out": a.out.display().to_string(),
                "power": spec.power,
                "velocity_mps": spec.mean_velocity_mps,
                "width_mps": spec.width_mps,
                "snr_db": spec.snr_db,
                "noise_power": noise,
                "pulses": spec.n_pulses,
                "seed": spec.seed,
                "rng": simulate::RNG_ALGORITHM,
            })
        )
    } else {
        writeln!(
            out,
            "wrote {} ({} pulses, seed {})\ntruth: power {} velocity {} m/s width {} m/s snr {} dB (noise power {})",
            a.out.display(),
            spec.n_pulses,
            spec.seed,
            spec.power,
            spec.mean_velocity_mps,
            spec.width_mps,
            spec.snr_db,
            noise
        )
    };
    w.map_err(data)
}

fn spectrum_path(base: &Path, method: Method, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}.{method}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{method}"),
    };
    base.with_file_name(name)
}

fn cmd_estimate(a: &EstimateArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let methods = parse_methods(&a.method).map_err(usage)?;
    let opts = a.processing.options().map_err(usage)?;
    let file = ingest::read_iq(&a.input).map_err(data)?;
    let estimates = pipeline::estimate(&file.series, &methods, &opts).map_err(data)?;

    let records: Vec<MomentsRecord> = estimates
        .iter()
        .map(|e| MomentsRecord::new(&e.moments, e.elapsed_ms))
        .collect();
    if let Some(path) = &a.out {
        ingest::write_moments(&records, path).map_err(data)?;
    }
    if let Some(base) = &a.spectrum {
        let spectral: Vec<_> = estimates.iter().filter(|e| e.spectrum.is_some()).collect();
        for e in &spectral {
            let path = spectrum_path(base, e.moments.method, spectral.len() > 1);
            ingest::write_spectrum(e.spectrum.as_ref().expect("filtered"), path).map_err(data)?;
        }
    }

    let w = if json {
        writeln!(out, "{}", serde_json::to_string(&records).expect("plain records"))
    } else {
        write!(out, "{}", format_moments_table(&records))
    };
    w.map_err(data)
}

fn format_moments_table(records: &[MomentsRecord]) -> String {
    let mut s = format!(
        "{:<8} {:>14} {:>14} {:>14} {:>12}\n",
        "method", "power", "V [m/s]", "W [m/s]", "time [ms]"
    );
    for r in records {
        s.push_str(&format!(
            "{:<8} {:>14.6} {:>14.4} {:>14.4} {:>12.4}\n",
            r.method, r.power, r.velocity_mps, r.width_mps, r.elapsed_ms
        ));
    }
    s
}

fn cmd_bench(a: &BenchArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let methods = parse_methods(&a.method).map_err(usage)?;
    let opts = a.processing.options().map_err(usage)?;
    if a.trials == 0 {
        return Err(usage("--trials must be >= 1"));
    }
    let (series, cell_id, input) = match &a.input {
        Some(path) => {
            let file = ingest::read_iq(path).map_err(data)?;
            let cell = file.meta("cell_id").unwrap_or("1").to_string();
            (file.series, cell, path.display().to_string())
        }
        None => {
            let spec = a.sim.spec().map_err(usage)?;
            let series = simulate::generate(&spec).map_err(usage)?;
            let desc = format!(
                "simulated v={} w={} snr={} m={} seed={}",
                spec.mean_velocity_mps, spec.width_mps, spec.snr_db, spec.n_pulses, spec.seed
            );
            (series, "sim".to_string(), desc)
        }
    };
    let report = bench::run_bench(&series, &cell_id, &input, &methods, a.trials, &opts).map_err(data)?;
    let w = if json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("plain report"))
    } else {
        write!(out, "{report}")
    };
    w.map_err(data)
}
