//! The `fhp` command line. [`run`] returns the process exit code: 0 when a
//! result was computed, 2 on unreadable or invalid input, 3 when `--strict`
//! meets an incomplete enumeration.

pub mod casebook;
pub mod doc;
pub mod dot;
pub mod matgit;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::exactcore::{parse_rational, Rational, Ring};
use crate::oriented::{walls_for_family, walls_for_pair, TypeData};
use crate::sheafp1::BundleP1;

pub use doc::{DocError, Instance, InstanceDoc, MatrixDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "fhp", about = "Exact stability computations for framed Hitchin pairs on P1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Exit with status 3 when the invariant subsheaf enumeration is incomplete.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Write reports (and the DOT diagram) into this directory instead of stdout.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    Ex1,
    Master,
    Obs,
    Counterexample,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one instance document at a stability parameter.
    Classify {
        file: PathBuf,
        /// Stability parameter as an exact fraction; defaults to 1.
        #[arg(long)]
        sigma: Option<String>,
        /// Cross-check against exhaustive line enumeration where it applies.
        #[arg(long)]
        oracle: bool,
    },
    /// Walls, chambers and the flip diagram, for an instance or a bare type.
    Walls {
        /// Instance document; omit to describe the family given by --d, --r, --ell, --h.
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 0)]
        ell: i64,
        /// Splitting type of H, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        h: Option<Vec<i64>>,
        /// Bound C on mu_max(E) - mu(E) entering sigma_infinity.
        #[arg(long)]
        c: Option<String>,
        /// Print only the DOT diagram.
        #[arg(long)]
        dot: bool,
    },
    /// Invariant-theory report for a tuple of square matrices.
    Matgit { file: PathBuf },
    /// Run a scripted verification scenario.
    Casebook {
        #[arg(value_enum)]
        name: Case,
        /// Coefficient range {-g..g} for ex1.
        #[arg(long, default_value_t = 2)]
        grid: i64,
        /// Sample count (master points, or obs pairs per type).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Restrict obs to one degree.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        /// Restrict obs to one m0.
        #[arg(long)]
        m0: Option<i64>,
    },
}

struct Output {
    text: String,
    json: serde_json::Value,
    dot: Option<String>,
    incomplete: bool,
}

fn input_error(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_INPUT
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance, String> {
    let text = read(path)?;
    let doc = InstanceDoc::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    doc.validate().map_err(|e| format!("{}: {e}", path.display()))
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("--{name}: {e}"))
}

fn to_json<T: serde::Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("plain data serializes")
}

/// `C` when not given: `m₀` for `H = O(m₀)`, otherwise `a₁ − μ(E)`, never below 0.
fn default_c(inst: &Instance) -> Rational {
    let pair = &inst.pair;
    let c = if pair.h().rank() == 1 {
        Rational::from_int(pair.h().degree())
    } else {
        Rational::from_int(pair.e().splitting()[0]) - pair.e().slope()
    };
    std::cmp::max(c, Rational::zero())
}

fn execute(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Classify { file, sigma, oracle } => {
            let inst = load_instance(file)?;
            let sigma = sigma.as_deref().map(|s| rational_arg("sigma", s)).transpose()?;
            let r = report::classify(&inst, sigma.as_ref(), *oracle).map_err(|e| e.to_string())?;
            Ok(Output { text: report::render_classify(&r), json: to_json(&r), dot: None, incomplete: !r.is_complete() })
        }
        Command::Walls { file, d, r, ell, h, c, dot } => {
            let c_arg = c.as_deref().map(|s| rational_arg("c", s)).transpose()?;
            let (rep, dec) = match file {
                Some(f) => {
                    let inst = load_instance(f)?;
                    let c = c_arg.unwrap_or_else(|| default_c(&inst));
                    let (dec, complete) = walls_for_pair(&inst.pair, &c).map_err(|e| e.to_string())?;
                    (report::walls_report(&dec, &c, Some(&inst), complete).map_err(|e| e.to_string())?, dec)
                }
                None => {
                    let (Some(d), Some(r), Some(h)) = (d, r, h) else {
                        return Err("walls needs a file or all of --d, --r, --h".into());
                    };
                    let c = c_arg.ok_or("walls for a bare type needs --c")?;
                    let h = BundleP1::new(h.clone()).map_err(|e| format!("--h: {e}"))?;
                    let t = TypeData { d: *d, r: *r, ell: *ell, h };
                    let dec = walls_for_family(&t, &c);
                    (report::walls_report(&dec, &c, None, true).map_err(|e| e.to_string())?, dec)
                }
            };
            let diagram = dot::flip_diagram(&dec);
            let text = if *dot { diagram.clone() } else { format!("{}\n{diagram}", report::render_walls(&rep)) };
            let mut json = to_json(&rep);
            json["dot"] = serde_json::Value::String(diagram.clone());
            Ok(Output { text, json, dot: Some(diagram), incomplete: !rep.complete })
        }
        Command::Matgit { file } => {
            let text = read(file)?;
            let doc = MatrixDoc::parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let (eps, mats) = doc.validate().map_err(|e| format!("{}: {e}", file.display()))?;
            let r = matgit::matgit(&eps, mats).map_err(|e| format!("{}: {e}", file.display()))?;
            Ok(Output { text: matgit::render_matgit(&r), json: to_json(&r), dot: None, incomplete: false })
        }
        Command::Casebook { name, grid, samples, seed, d, m0 } => {
            let lines = match name {
                Case::Ex1 => casebook::ex1(*grid),
                Case::Master => casebook::master(samples.unwrap_or(1000), *seed),
                Case::Obs => {
                    let types: Vec<(i64, i64)> = casebook::obs_types()
                        .into_iter()
                        .filter(|(td, tm)| d.is_none_or(|x| x == *td) && m0.is_none_or(|x| x == *tm))
                        .collect();
                    let types = if types.is_empty() { vec![(d.unwrap_or(0), m0.unwrap_or(1))] } else { types };
                    casebook::obs(&types, samples.unwrap_or(10), *seed)
                }
                Case::Counterexample => casebook::counterexample(&casebook::counterexample_sigmas()),
            };
            let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
            Ok(Output { text, json: to_json(&lines), dot: None, incomplete: false })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Walls { .. } => "walls",
        Command::Matgit { .. } => "matgit",
        Command::Casebook { .. } => "casebook",
    }
}

/// Runs a parsed command line, writing to stdout or `--out-dir`.
pub fn run(cli: &Cli) -> i32 {
    let out = match execute(cli) {
        Ok(o) => o,
        Err(msg) => return input_error(msg),
    };
    let body = match cli.format {
        Format::Text => out.text,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("valid json")),
    };
    match &cli.out_dir {
        Some(dir) => {
            let name = command_name(&cli.command);
            let ext = if cli.format == Format::Json { "json" } else { "txt" };
            let write = || -> std::io::Result<()> {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("{name}.{ext}")), &body)?;
                if let Some(d) = &out.dot {
                    std::fs::write(dir.join("flips.dot"), d)?;
                }
                Ok(())
            };
            if let Err(e) = write() {
                return input_error(format!("{}: {e}", dir.display()));
            }
        }
        None => {
            let _ = std::io::stdout().write_all(body.as_bytes());
        }
    }
    if cli.strict && out.incomplete {
        eprintln!("incomplete enumeration over Q (--strict)");
        return EXIT_INCOMPLETE;
    }
    EXIT_OK
}
