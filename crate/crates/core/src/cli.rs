//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 invalid state (from
//! `classify`), 3 verification failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::oracles::{
    bisep_inner_oracle, sample_biproduct_atoms, sample_trisep_inner, trisep_inner_oracle,
    ProductState,
};
use crate::region::{
    fmt_f64, region_map_figure1, region_map_figure2, write_figure1_csv, write_figure1_json,
    write_figure2_csv, write_figure2_json,
};
use crate::separability::{classify, margins, Margins, Partition, RegionLabel};
use crate::tensor::seeded_rng;
use crate::verify::{self, Suite, VerifyConfig};
use crate::werner::WernerPoint;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_STATE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "werner3",
    version,
    about = "Separability tests for U⊗U⊗U-invariant three-party states"
)]
pub struct Cli {
    #[command(flatten)]
    pub tol: TolArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Slack for every criterion inequality.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub criterion_tol: f64,
    /// Eigenvalue tolerance for matrix-level checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub spectral_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            criterion: self.criterion_tol,
            spectral: self.spectral_tol,
            ..Tolerances::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    Trisep,
    Bisep,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one point and print every criterion margin.
    Classify {
        /// Coordinates r+,r-,r1,r2,r3.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Machine-readable output instead of the text report.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Region map over the permutation-invariant triangle.
    Figure1 {
        #[arg(long, default_value_t = 31)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Region map over the Bloch ball above one (r+, r-).
    Figure2 {
        #[arg(long, default_value_t = 0.27)]
        rplus: f64,
        #[arg(long, default_value_t = 0.1)]
        rminus: f64,
        #[arg(long, default_value_t = 41)]
        resolution: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Twirled coordinates of random product (or 1|23 biproduct) states.
    Sample {
        #[arg(long, value_enum, default_value_t = SampleKind::Trisep)]
        kind: SampleKind,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a separable decomposition of a point and emit it as JSON.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value_t = SampleKind::Trisep)]
        kind: SampleKind,
        /// Lone site of the bipartition (1, 2 or 3) for `--kind bisep`.
        #[arg(long, default_value = "1")]
        partition: String,
        #[arg(long, default_value_t = 5000)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random points per sampled property.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `stdout` unless `--out` is given.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn with_output<F>(out: &Option<PathBuf>, stdout: &mut dyn Write, f: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { min: 2, got: d });
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassifyReport {
    point: WernerPoint,
    r0: f64,
    d: usize,
    label: RegionLabel,
    regions: [&'static str; 3],
    margins: Margins,
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let tol = cli.tol.tolerances();
    match &cli.command {
        Command::Classify {
            point,
            d,
            format,
            out,
        } => {
            check_dim(*d)?;
            let p = WernerPoint::parse_csv(point)?;
            let label = classify(&p, *d, &tol);
            let report = ClassifyReport {
                point: p,
                r0: p.r0(),
                d: *d,
                label,
                regions: Partition::ALL.map(|part| label.region(part).name()),
                margins: margins(&p),
            };
            with_output(out, stdout, |w| match format {
                None => write_classify_text(w, &report),
                Some(Format::Json) => {
                    serde_json::to_writer_pretty(&mut *w, &report)?;
                    writeln!(w)?;
                    Ok(())
                }
                Some(Format::Csv) => write_classify_csv(w, &report),
            })?;
            Ok(if label.valid {
                EXIT_OK
            } else {
                EXIT_INVALID_STATE
            })
        }
        Command::Figure1 {
            resolution,
            format,
            out,
        } => {
            let cells = region_map_figure1(*resolution, &tol)?;
            with_output(out, stdout, |w| match format {
                Format::Csv => write_figure1_csv(w, &cells),
                Format::Json => write_figure1_json(w, *resolution, &cells),
            })?;
            Ok(EXIT_OK)
        }
        Command::Figure2 {
            rplus,
            rminus,
            resolution,
            d,
            format,
            out,
        } => {
            check_dim(*d)?;
            let cells = region_map_figure2(*rplus, *rminus, *resolution, *d, &tol)?;
            with_output(out, stdout, |w| match format {
                Format::Csv => write_figure2_csv(w, &cells),
                Format::Json => write_figure2_json(w, *rplus, *rminus, *resolution, *d, &cells),
            })?;
            Ok(EXIT_OK)
        }
        Command::Sample {
            kind,
            n,
            d,
            seed,
            format,
            out,
        } => {
            check_dim(*d)?;
            let points = match kind {
                SampleKind::Trisep => sample_trisep_inner(*n, *d, *seed),
                SampleKind::Bisep => {
                    let mut rng = seeded_rng(*seed);
                    sample_biproduct_atoms(*n, *d, &mut rng)
                        .iter()
                        .map(ProductState::twirled_point)
                        .collect()
                }
            };
            with_output(out, stdout, |w| match format {
                Format::Csv => {
                    writeln!(w, "r_plus,r_minus,r1,r2,r3")?;
                    for p in &points {
                        let cols: Vec<String> = p.to_array().iter().map(|&x| fmt_f64(x)).collect();
                        writeln!(w, "{}", cols.join(","))?;
                    }
                    Ok(())
                }
                Format::Json => {
                    serde_json::to_writer_pretty(&mut *w, &points)?;
                    writeln!(w)?;
                    Ok(())
                }
            })?;
            Ok(EXIT_OK)
        }
        Command::Certify {
            point,
            kind,
            partition,
            n,
            d,
            seed,
            out,
        } => {
            check_dim(*d)?;
            let p = WernerPoint::parse_csv(point)?;
            let part: Partition = partition.parse()?;
            let found = match kind {
                SampleKind::Trisep => trisep_inner_oracle(&p, *n, *d, *seed, &tol),
                SampleKind::Bisep => bisep_inner_oracle(&p, *n, *d, *seed, part, &tol),
            };
            #[derive(Serialize)]
            struct CertifyReport<'a> {
                point: WernerPoint,
                certified: bool,
                decomposition: Option<&'a crate::oracles::SeparableDecomposition>,
            }
            let report = CertifyReport {
                point: p,
                certified: found.is_some(),
                decomposition: found.as_ref(),
            };
            with_output(out, stdout, |w| {
                serde_json::to_writer_pretty(&mut *w, &report)?;
                writeln!(w)?;
                Ok(())
            })?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            d,
            seed,
            samples,
            out,
        } => {
            check_dim(*d)?;
            let suite: Suite = suite.parse()?;
            let cfg = VerifyConfig {
                d: *d,
                seed: *seed,
                samples: *samples,
                tol,
                ..VerifyConfig::default()
            };
            let report = verify::run(suite, &cfg)?;
            with_output(out, stdout, |w| {
                serde_json::to_writer_pretty(&mut *w, &report)?;
                writeln!(w)?;
                Ok(())
            })?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                writeln!(
                    stderr,
                    "FAILED {}: {}: {}",
                    c.suite,
                    c.name,
                    c.failing_case.as_deref().unwrap_or("-")
                )?;
            }
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
    }
}

fn write_classify_text(w: &mut dyn Write, r: &ClassifyReport) -> Result<()> {
    let p = &r.point;
    writeln!(w, "point  (r+, r-, r1, r2, r3) = {p}   r0 = {}", r.r0)?;
    writeln!(w, "d      {}", r.d)?;
    writeln!(
        w,
        "valid  {}   (margin {:.6e})",
        r.label.valid, r.margins.validity
    )?;
    let t = &r.margins.triseparable;
    writeln!(
        w,
        "triseparable  {}   (margin {:.6e})",
        r.label.triseparable,
        t.min()
    )?;
    writeln!(
        w,
        "  r- window {:.6e}  r+ window {:.6e}  cubic {:.6e}  factors {:.6e}",
        t.minus_window, t.plus_window, t.cubic, t.factors
    )?;
    for part in Partition::ALL {
        let i = part.index();
        let s = r.margins.ppt_slacks[i];
        writeln!(
            w,
            "{part}  biseparable {} (margin {:.6e})  ppt {} (margin {:.6e}, s1 {:.6e}, s2 {:.6e})  region {}",
            r.label.biseparable[i], r.margins.biseparable[i], r.label.ppt[i], r.margins.ppt[i], s.s1, s.s2, r.regions[i]
        )?;
    }
    Ok(())
}

fn write_classify_csv(w: &mut dyn Write, r: &ClassifyReport) -> Result<()> {
    writeln!(
        w,
        "r_plus,r_minus,r1,r2,r3,valid,trisep,bisep_1,bisep_2,bisep_3,ppt_1,ppt_2,ppt_3"
    )?;
    let mut cols: Vec<String> = r.point.to_array().iter().map(|&x| fmt_f64(x)).collect();
    let bit = |b: bool| if b { "1".to_string() } else { "0".to_string() };
    cols.push(bit(r.label.valid));
    cols.push(bit(r.label.triseparable));
    cols.extend(r.label.biseparable.iter().map(|&b| bit(b)));
    cols.extend(r.label.ppt.iter().map(|&b| bit(b)));
    writeln!(w, "{}", cols.join(","))?;
    Ok(())
}
