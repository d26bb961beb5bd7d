//! The `ssd` command line.
//!
//! Exit codes: 0 on success, 1 when a design or block file fails verification,
//! 2 on invalid input.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::blocks::{bibd_to_design, is_bibd};
use crate::bounds::{bound_table, improved_bound, render_table};
use crate::catalog::Catalog;
use crate::construction::{construct, equivalence_classes, plan, ConstructionSpec, Part};
use crate::design::e_s2;
use crate::error::{Error, Result};
use crate::formats::{parse_blocks, parse_design, print_blocks, print_design};
use crate::rational::{fraction, render, Rational, Rendering};
use crate::search::{search, SearchConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ssd", version, about = "E(s^2)-optimal supersaturated designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the improved and classical lower bounds for one (N, m).
    Bound {
        #[arg(long)]
        runs: usize,
        #[arg(long)]
        factors: usize,
        /// Reduced fractions instead of 5 decimals.
        #[arg(long)]
        exact: bool,
        /// Also print q, the branch taken, and the floors applied.
        #[arg(long)]
        report: bool,
    },
    /// Print `m improved ntw` rows for a range of m.
    Table {
        #[arg(long)]
        runs: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        exact: bool,
    },
    /// Build a BIBD from shift sets and write the design and block files.
    Construct(ConstructArgs),
    /// Validate a design file and compare its E(s^2) with the bound.
    Evaluate { file: PathBuf },
    /// Search for a design meeting the bound.
    Search(SearchArgs),
    /// Check a block file for the BIBD property and distinct blocks.
    VerifyBibd { file: PathBuf },
    /// Manage the design catalog (root: $SSD_CATALOG, default ./ssd-catalog).
    Catalog {
        #[arg(long)]
        root: Option<PathBuf>,
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    runs: u32,
    /// A spec file with lines `N=<int> part q=<int> T=<csv> [U=<csv>]`.
    #[arg(long, conflicts_with_all = ["q", "blocks"])]
    spec: Option<PathBuf>,
    #[arg(long, requires = "classes")]
    q: Option<u32>,
    /// 0-based indices into the class listing for q.
    #[arg(long, value_delimiter = ',')]
    classes: Vec<usize>,
    /// Use half designs for the listed classes.
    #[arg(long, requires = "q")]
    half: bool,
    /// Let the planner pick parts giving this many blocks.
    #[arg(long, conflicts_with = "q")]
    blocks: Option<usize>,
    #[arg(long)]
    out_design: Option<PathBuf>,
    #[arg(long)]
    out_blocks: Option<PathBuf>,
    #[arg(long)]
    out_spec: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    runs: usize,
    #[arg(long)]
    factors: usize,
    /// Decimal or 0x-prefixed hex.
    #[arg(long, default_value = "0", value_parser = parse_seed)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    restarts: usize,
    /// Seconds.
    #[arg(long, default_value_t = 60.0)]
    budget: f64,
    #[arg(long, default_value_t = 1000)]
    passes: usize,
    /// Target E(s^2) as `num/den`; defaults to the improved bound.
    #[arg(long, value_parser = parse_target)]
    target: Option<Rational>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// Validate a design file and store it.
    Add {
        file: PathBuf,
        #[arg(long, default_value = "manual")]
        provenance: String,
        /// Read provenance from a file, e.g. a construction spec.
        #[arg(long, conflicts_with = "provenance")]
        provenance_file: Option<PathBuf>,
    },
    /// List entries sorted by (N, m).
    List,
    /// Print a stored design after checking its hash.
    Get {
        hash: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed {s:?}: {e}"))
}

fn parse_target(s: &str) -> std::result::Result<Rational, String> {
    crate::rational::parse_fraction(s).ok_or_else(|| format!("bad fraction {s:?}"))
}

/// Maps an error to the exit-code contract.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotBibd(_)
        | Error::RepeatedBlocks(..)
        | Error::InvalidDesign(_)
        | Error::HashMismatch { .. } => EXIT_FAILED,
        _ => EXIT_INVALID,
    }
}

fn round5(r: Rational) -> String {
    render(r, 5, Rendering::Round)
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut String) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.push_str(text),
    }
    Ok(())
}

/// Runs one command, returning its stdout text and exit code.
fn dispatch(cli: Cli) -> Result<(String, i32)> {
    let mut out = String::new();
    let mut code = EXIT_OK;
    match cli.command {
        Command::Bound {
            runs,
            factors,
            exact,
            report,
        } => {
            let r = improved_bound(runs, factors)?;
            let cell = |v| if exact { fraction(v) } else { crate::rational::decimal5(v) };
            out.push_str(&format!("{} {}\n", cell(r.improved), cell(r.ntw)));
            if report {
                out.push_str(&format!("{r}\n"));
            }
        }
        Command::Table { runs, from, to, exact } => {
            out.push_str(&render_table(&bound_table(runs, from, to)?, exact));
        }
        Command::Construct(args) => {
            let spec = if let Some(path) = &args.spec {
                let spec = ConstructionSpec::parse(&read(path)?)?;
                if spec.runs != args.runs {
                    return Err(Error::parse(1, format!("spec has N={}, --runs is {}", spec.runs, args.runs)));
                }
                spec
            } else if let Some(q) = args.q {
                ConstructionSpec::new(args.runs).field()?;
                let classes = equivalence_classes(q)?;
                let mut spec = ConstructionSpec::new(args.runs);
                for &c in &args.classes {
                    let class = classes.get(c).ok_or_else(|| {
                        Error::parse(0, format!("class index {c} out of range, q={q} has {}", classes.len()))
                    })?;
                    let t = class.representative;
                    spec.parts.push(if args.half { Part::half(t)? } else { Part::full(t) });
                }
                spec
            } else if let Some(b) = args.blocks {
                ConstructionSpec::new(args.runs).field()?;
                plan(args.runs, b)?
            } else {
                return Err(Error::parse(0, "give --spec, --q with --classes, or --blocks"));
            };
            let blocks = construct(&spec)?;
            let params = is_bibd(&blocks).map_err(|f| Error::NotBibd(f.to_string()))?;
            let x = bibd_to_design(&blocks)?;
            let value = e_s2(&x)?;
            if let Some(p) = &args.out_spec {
                fs::write(p, spec.to_text())?;
            }
            if let Some(p) = &args.out_blocks {
                fs::write(p, print_blocks(&blocks))?;
            }
            out.push_str(&format!(
                "# {params} distinct=yes design={}x{} E(s2)={}\n",
                x.runs(),
                x.factors(),
                fraction(value)
            ));
            write_or_print(args.out_design.as_deref(), &print_design(&x), &mut out)?;
        }
        Command::Evaluate { file } => {
            let x = parse_design(&read(&file)?)?;
            let report = x.validate();
            if !report.passed() {
                out.push_str(&format!("INVALID {report}\n"));
                return Ok((out, EXIT_FAILED));
            }
            let value = e_s2(&x)?;
            match improved_bound(x.runs(), x.factors()) {
                Ok(b) => {
                    let verdict = if value == b.improved {
                        "OPTIMAL".to_string()
                    } else {
                        format!("gap={}", round5(value - b.improved))
                    };
                    out.push_str(&format!("E(s2)={} bound={} {verdict}\n", round5(value), round5(b.improved)));
                    out.push_str(&format!("# exact E(s2)={} bound={}\n", fraction(value), fraction(b.improved)));
                }
                Err(Error::BadRange { .. }) => {
                    out.push_str(&format!("E(s2)={} bound=none\n", round5(value)));
                }
                Err(e) => return Err(e),
            }
        }
        Command::Search(args) => {
            let mut cfg = SearchConfig::new(args.runs, args.factors)
                .seed(args.seed)
                .restarts(args.restarts)
                .max_passes(args.passes)
                .budget(Duration::from_secs_f64(args.budget.max(0.0)));
            cfg.target = args.target;
            let r = search(&cfg)?;
            out.push_str(&r.summary_line());
            out.push('\n');
            if let Some(p) = &args.out {
                fs::write(p, print_design(&r.best))?;
            }
        }
        Command::VerifyBibd { file } => {
            let blocks = parse_blocks(&read(&file)?)?;
            let distinct = blocks.has_distinct_blocks();
            match is_bibd(&blocks) {
                Ok(p) => out.push_str(&format!("{p} distinct={}\n", if distinct { "yes" } else { "no" })),
                Err(f) => {
                    out.push_str(&format!("not a BIBD: {f} distinct={}\n", if distinct { "yes" } else { "no" }));
                    code = EXIT_FAILED;
                }
            }
            if !distinct {
                code = EXIT_FAILED;
            }
        }
        Command::Catalog { root, action } => {
            let cat = Catalog::open(root.unwrap_or_else(Catalog::default_root))?;
            match action {
                CatalogAction::Add {
                    file,
                    provenance,
                    provenance_file,
                } => {
                    let x = parse_design(&read(&file)?)?;
                    let prov = match provenance_file {
                        Some(p) => read(&p)?.trim_end().to_string(),
                        None => provenance,
                    };
                    let (e, new) = cat.add(&x, &prov)?;
                    out.push_str(&format!(
                        "{} {} {} {} {}\n",
                        if new { "added" } else { "exists" },
                        e.runs,
                        e.factors,
                        fraction(e.es2),
                        e.hash
                    ));
                }
                CatalogAction::List => {
                    for e in cat.list()? {
                        out.push_str(&format!(
                            "{}\t{}\t{}\t{}\t{}\n",
                            e.runs,
                            e.factors,
                            fraction(e.es2),
                            e.hash,
                            e.path.display()
                        ));
                    }
                }
                CatalogAction::Get { hash, out: path } => {
                    let (_, text, _) = cat.get(&hash)?;
                    write_or_print(path.as_deref(), &text, &mut out)?;
                }
            }
        }
    }
    Ok((out, code))
}

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok((text, code)) => {
            print!("{text}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
