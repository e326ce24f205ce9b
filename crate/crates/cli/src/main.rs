//! `pncs` command-line tool.
//!
//! Exit status: 0 on success, 1 on a domain error or a failed verification,
//! 2 on a usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pncs::coherent::{coherent_params, pncs};
use pncs::coupled::{evolve_phase, partition_function, spectrum, OscillatorSpec, PartitionMode, ThermalInput};
use pncs::numerics::{DEFAULT_RADIAL_POINTS, DEFAULT_RHO_MAX};
use pncs::su2::Irrep;
use pncs::verify::{run_verification, VerifyConfig};
use pncs::wavefn::{grid_eval, PolarGrid, DEFAULT_ANGLE_POINTS};
use pncs::HalfInt;

#[derive(Parser)]
#[command(name = "pncs", version, about = "SU(2) number coherent states and coupled oscillators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy levels of one block, μ ascending
    Spectrum {
        #[command(flatten)]
        osc: Oscillator,
        #[arg(long, allow_negative_numbers = true)]
        j: f64,
    },
    /// Number coherent state amplitudes in the Dicke basis
    Pncs {
        #[command(flatten)]
        state: State,
    },
    /// Number coherent state wavefunction sampled on a polar grid (CSV)
    Wavefunction {
        #[command(flatten)]
        state: State,
        #[arg(long, default_value_t = DEFAULT_RHO_MAX)]
        rho_max: f64,
        #[arg(long, default_value_t = DEFAULT_RADIAL_POINTS)]
        n_rho: usize,
        #[arg(long, default_value_t = DEFAULT_ANGLE_POINTS)]
        n_angle: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition function of one block
    Partition {
        #[command(flatten)]
        osc: Oscillator,
        #[arg(long, allow_negative_numbers = true)]
        j: f64,
        #[arg(long, allow_negative_numbers = true)]
        temperature: f64,
        #[arg(long, value_enum, default_value_t = Mode::Paper)]
        mode: Mode,
    },
    /// Phase exp(−iEt) acquired by the (j, μ) eigenstate
    Evolve {
        #[command(flatten)]
        osc: Oscillator,
        #[arg(long, allow_negative_numbers = true)]
        j: f64,
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Run every named check and print the report
    Verify {
        #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
        jmax: f64,
        #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
        nmax: i64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args)]
struct Oscillator {
    #[arg(long, allow_negative_numbers = true)]
    omega1: f64,
    #[arg(long, allow_negative_numbers = true)]
    omega2: f64,
    #[arg(long, allow_negative_numbers = true)]
    lambda: f64,
}

impl Oscillator {
    fn spec(&self) -> pncs::Result<OscillatorSpec> {
        OscillatorSpec::new(self.omega1, self.omega2, self.lambda)
    }
}

#[derive(Args)]
struct State {
    #[arg(long, allow_negative_numbers = true)]
    j: f64,
    #[arg(long, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, allow_negative_numbers = true)]
    phi: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Paper,
    Exact,
}

#[derive(Serialize)]
struct Level {
    mu: f64,
    energy: f64,
}

#[derive(Serialize)]
struct Amplitude {
    mu: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct Complex {
    re: f64,
    im: f64,
}

enum Failure {
    Domain(String),
    Verification,
}

impl From<pncs::Error> for Failure {
    fn from(e: pncs::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Domain(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Spectrum { osc, j } => {
            let levels: Vec<Level> = spectrum(&osc.spec()?, HalfInt::from_f64(j)?)?
                .into_iter()
                .map(|e| Level {
                    mu: e.mu.value(),
                    energy: e.energy,
                })
                .collect();
            print_json(&levels)
        }
        Command::Pncs { state } => {
            let j = HalfInt::from_f64(state.j)?;
            let p = coherent_params(state.theta, state.phi)?;
            let v = pncs(j, HalfInt::from_f64(state.mu)?, &p)?;
            let irrep = Irrep::new(j)?;
            let rows: Vec<Amplitude> = irrep
                .mus()
                .zip(&v.amplitudes)
                .map(|(mu, z)| Amplitude {
                    mu: mu.value(),
                    re: z.re,
                    im: z.im,
                })
                .collect();
            print_json(&rows)
        }
        Command::Wavefunction {
            state,
            rho_max,
            n_rho,
            n_angle,
            out,
        } => {
            let j = HalfInt::from_f64(state.j)?;
            let p = coherent_params(state.theta, state.phi)?;
            let grid = PolarGrid::uniform(rho_max, n_rho, n_angle)?;
            let rows = grid_eval(j, HalfInt::from_f64(state.mu)?, &p, &grid)?;
            let sink: Box<dyn Write> = match out {
                Some(path) => Box::new(File::create(path)?),
                None => Box::new(io::stdout().lock()),
            };
            let mut w = BufWriter::new(sink);
            writeln!(w, "rho,angle,re,im")?;
            for r in rows {
                writeln!(w, "{:?},{:?},{:?},{:?}", r.rho, r.angle, r.re, r.im)?;
            }
            w.flush()?;
            Ok(())
        }
        Command::Partition {
            osc,
            j,
            temperature,
            mode,
        } => {
            let mode = match mode {
                Mode::Paper => PartitionMode::Paper,
                Mode::Exact => PartitionMode::Exact,
            };
            let z = partition_function(&osc.spec()?, HalfInt::from_f64(j)?, &ThermalInput::new(temperature)?, mode)?;
            print_json(&z)
        }
        Command::Evolve { osc, j, mu, t } => {
            if !t.is_finite() {
                return Err(Failure::Domain(format!("t must be finite, got {t}")));
            }
            let z = evolve_phase(&osc.spec()?, HalfInt::from_f64(j)?, HalfInt::from_f64(mu)?, t)?;
            print_json(&Complex { re: z.re, im: z.im })
        }
        Command::Verify { jmax, nmax, seed } => {
            let cfg = VerifyConfig::new(HalfInt::from_f64(jmax)?, nmax, seed)?;
            let report = run_verification(&cfg);
            print_json(&report)?;
            if report.overall {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
    }
}
