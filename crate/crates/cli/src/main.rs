use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dcross::arrangements::{ArrangementSpec, DCParams};
use dcross::bounds::{conjecture1_sweep, radius_sweep};
use dcross::closed_forms::{beta_profile, evaluate, lemma1_bounds, Formula, FormulaArgs};
use dcross::formats::{render_svg, sweep_csv, LayoutFile};
use dcross::geom::{count_crossings_brute, count_crossings_partition_layout};
use dcross::threshold::{crossing_threshold, ThresholdConfig};
use dcross::Error;

/// `println!` that ignores a closed stdout.
macro_rules! outln {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "dcross", version, about = "Crossing counts for straight-line drawings of K_{m,n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Arr {
    Dc,
    Dpl,
    Tpl,
    Dol,
    Lic,
    Fic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Partition,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Dpl,
    Tpl,
    Tplmin,
    Dol,
    Dolmin,
    Dolmax,
    Lic,
    Licmin,
    Dc,
    Zarankiewicz,
    Cyl,
    Cyldiv,
    Beta,
    Lemma1,
}

#[derive(clap::Args)]
struct Counts {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Vertices on the right half of the horizontal line (dol).
    #[arg(long)]
    rc: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a layout file.
    Gen {
        #[arg(long)]
        arr: Arr,
        #[command(flatten)]
        counts: Counts,
        /// Inner radius (dc).
        #[arg(long)]
        r: Option<f64>,
        /// Outer or circle radius (dc, lic, fic).
        #[arg(long = "R", default_value_t = 1.0)]
        big_r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi_in: f64,
        /// Defaults to the clearance-maximizing rotation.
        #[arg(long, allow_negative_numbers = true)]
        phi_out: Option<f64>,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
        #[arg(long, default_value_t = 1.0)]
        line_gap: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count crossings of a layout file.
    Count {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
    },
    /// Evaluate a closed form.
    Formula {
        #[arg(long)]
        which: Which,
        #[command(flatten)]
        counts: Counts,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long = "R", default_value_t = 1.0)]
        big_r: f64,
    },
    /// Largest inner radius attaining the crossing number.
    Threshold {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "R", default_value_t = 1.0)]
        big_r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi_in: f64,
        #[arg(long, allow_negative_numbers = true)]
        phi_out: Option<f64>,
        /// Bracket width relative to R.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        allow_non_monotone: bool,
    },
    /// Crossing counts over a range of inner radii, as CSV.
    Sweep {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "R", default_value_t = 1.0)]
        big_r: f64,
        #[arg(long)]
        r_from: f64,
        #[arg(long)]
        r_to: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi_in: f64,
        #[arg(long, allow_negative_numbers = true)]
        phi_out: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Crossing counts of seeded random interior layouts, as JSON.
    Montecarlo {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a layout file as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 600)]
        width: u32,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateLayout(_) | Error::ClassInconsistent { .. } => 3,
            Error::NotMonotone { .. }
            | Error::NoBalancedRadius { .. }
            | Error::NoConvergence { .. }
            | Error::Sampling(_) => 4,
            Error::InvalidParams(_) | Error::ArgumentOrder { .. } | Error::InfeasibleSplit { .. } | Error::Format(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| usage(format!("--{flag} is required here")))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn read_layout(path: &Path) -> Result<LayoutFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(LayoutFile::from_json(&text)?)
}

fn dc_params(m: usize, n: usize, r: f64, big_r: f64, phi_in: f64, phi_out: Option<f64>) -> Result<DCParams, Failure> {
    let phi_out = phi_out.unwrap_or_else(|| DCParams::default_phi_out(m, n));
    Ok(DCParams::with_rotation(m, n, r, big_r, phi_in, phi_out)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen {
            arr,
            counts: c,
            r,
            big_r,
            phi_in,
            phi_out,
            spacing,
            line_gap,
            seed,
            output,
        } => {
            let spec = match arr {
                Arr::Dc => ArrangementSpec::Dc(dc_params(
                    need(c.m, "m")?,
                    need(c.n, "n")?,
                    r.ok_or_else(|| usage("--r is required for dc"))?,
                    big_r,
                    phi_in,
                    phi_out,
                )?),
                Arr::Dpl => ArrangementSpec::Dpl {
                    m: need(c.m, "m")?,
                    n: need(c.n, "n")?,
                    spacing,
                },
                Arr::Tpl => ArrangementSpec::Tpl {
                    t: need(c.t, "t")?,
                    c: need(c.c, "c")?,
                    b: need(c.b, "b")?,
                    spacing,
                    line_gap,
                },
                Arr::Dol => ArrangementSpec::Dol {
                    l: need(c.l, "l")?,
                    r_count: need(c.rc, "rc")?,
                    t: need(c.t, "t")?,
                    b: need(c.b, "b")?,
                    spacing,
                },
                Arr::Lic => ArrangementSpec::Lic {
                    m: need(c.m, "m")?,
                    k: need(c.k, "k")?,
                    l: need(c.l, "l")?,
                    r_circle: big_r,
                },
                Arr::Fic => ArrangementSpec::Fic {
                    m: need(c.m, "m")?,
                    n: need(c.n, "n")?,
                    r_circle: big_r,
                    seed,
                },
            };
            let (layout, used) = spec.generate()?;
            emit(output.as_deref(), &LayoutFile::new(&layout, &used).to_json())
        }
        Command::Count { file, method } => {
            let file = read_layout(&file)?;
            let layout = file.layout();
            let partition = || -> Result<u64, Failure> {
                match file.meta.arrangement.as_str() {
                    "dc" | "lic" | "fic" | "dpl" | "tpl" => Ok(count_crossings_partition_layout(&layout)?.count),
                    other => Err(usage(format!("partition counting is not exact for '{other}' layouts"))),
                }
            };
            match method {
                Method::Brute => outln!("{}", count_crossings_brute(&layout)?.count),
                Method::Partition => outln!("{}", partition()?),
                Method::Both => {
                    let brute = count_crossings_brute(&layout)?.count;
                    let part = partition()?;
                    outln!("brute {brute}\npartition {part}");
                    if brute != part {
                        return Err(Failure {
                            code: 1,
                            message: format!("methods disagree: brute {brute}, partition {part}"),
                        });
                    }
                }
            }
            Ok(())
        }
        Command::Formula {
            which,
            counts: c,
            r,
            big_r,
        } => {
            let zero = |v: Option<usize>| v.unwrap_or(0);
            let args = FormulaArgs {
                m: c.m.or(c.c).unwrap_or(0),
                n: zero(c.n),
                t: zero(c.t),
                b: zero(c.b),
                l: zero(c.l),
                r_count: zero(c.rc),
                k: zero(c.k),
            };
            let formula = match which {
                Which::Beta | Which::Lemma1 => {
                    let params = DCParams::new(
                        need(c.m, "m")?,
                        need(c.n, "n")?,
                        r.ok_or_else(|| usage("--r is required"))?,
                        big_r,
                    )?;
                    if matches!(which, Which::Beta) {
                        let prof = beta_profile(&params);
                        let betas: Vec<String> = prof.betas.iter().map(u64::to_string).collect();
                        outln!("{}", betas.join(" "));
                        if prof.has_ambiguous_floor() {
                            eprintln!("warning: some β_j ratios are within 1e-9 of an integer");
                        }
                    } else {
                        let bounds = lemma1_bounds(&params)?;
                        outln!("{} {}", bounds.lower, bounds.upper);
                    }
                    return Ok(());
                }
                Which::Dpl => Formula::Dpl,
                Which::Tpl => Formula::Tpl,
                Which::Tplmin => Formula::TplMin,
                Which::Dol => Formula::Dol,
                Which::Dolmin => Formula::DolMin,
                Which::Dolmax => Formula::DolMax,
                Which::Lic => Formula::Lic,
                Which::Licmin => Formula::LicMin,
                Which::Dc => Formula::Dc,
                Which::Zarankiewicz => Formula::Zarankiewicz,
                Which::Cyl => Formula::Cyl,
                Which::Cyldiv => Formula::CylDivisible,
            };
            outln!("{}", evaluate(formula, args)?.value);
            Ok(())
        }
        Command::Threshold {
            m,
            n,
            big_r,
            phi_in,
            phi_out,
            tol,
            allow_non_monotone,
        } => {
            let cfg = ThresholdConfig {
                tol_bisect: tol,
                allow_non_monotone,
                ..ThresholdConfig::default()
            };
            let phi_out = phi_out.unwrap_or_else(|| DCParams::default_phi_out(m, n));
            let res = crossing_threshold(m, n, big_r, phi_in, phi_out, &cfg)?;
            outln!("{:.16e}", res.t_cr);
            outln!("{}", serde_json::to_string(&res).expect("result serializes"));
            Ok(())
        }
        Command::Sweep {
            m,
            n,
            big_r,
            r_from,
            r_to,
            steps,
            phi_in,
            phi_out,
            output,
        } => {
            let base = dc_params(m, n, r_from, big_r, phi_in, phi_out)?;
            let rows = radius_sweep(&base, r_from, r_to, steps)?;
            let lower = rows.iter().filter(|r| !r.within_lower).count();
            let upper = rows.iter().filter(|r| !r.within_upper).count();
            let above = rows.iter().filter(|r| r.measured > r.formula_cr).count();
            eprintln!("rows {} above_cr {above} lower_violations {lower} upper_violations {upper}", rows.len());
            emit(output.as_deref(), &sweep_csv(&rows))
        }
        Command::Montecarlo { m, n, samples, seed } => {
            let summary = conjecture1_sweep(m, n, samples, seed)?;
            outln!("{}", serde_json::to_string(&summary).expect("summary serializes"));
            if !summary.out_of_range.is_empty() {
                eprintln!("{} samples outside [{}, {}]", summary.out_of_range.len(), summary.lower_bound, summary.upper_bound);
            }
            Ok(())
        }
        Command::Render { file, output, width } => {
            let file = read_layout(&file)?;
            emit(output.as_deref(), &render_svg(&file, width))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("dcross: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
