//! Command-line frontend. Every command produces a [`Report`] whose body is
//! deterministic; wall-clock data lives only in the header.

use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::combinatorics::{enum_m, Object};
use crate::dsl::parse_diagram;
use crate::eval::Evaluator;
use crate::exact::fmt_q;
use crate::howe::double_centralizer_check;
use crate::reduce::{reduce_to_basis, verify_suite};
use crate::schur::{check_web_schur_iso, schur_dim};
use crate::superalgebra::GoodPair;
use crate::udot::{fullness_check, verify_udot};
use crate::wreath::{schur_weyl_check, wreath_from_web};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "webcalc", version, about = "Exact web calculus for good pairs of superalgebras")]
pub struct RunConfig {
    /// Builtin algebra (trivial, cyclic(k), clifford1, kxk, zigzag) or path to a JSON algebra file
    #[arg(long, global = true, default_value = "trivial")]
    pub algebra: String,

    /// Write the JSON report here (`-` for stdout)
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for sweeps
    #[arg(long, global = true, env = "WEBCALC_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Algebra files
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Basis enumeration
    #[command(subcommand)]
    Basis(BasisCmd),
    /// Diagram evaluation, reduction and relation suites
    #[command(subcommand)]
    Web(WebCmd),
    /// Schur algebra comparison
    #[command(subcommand)]
    Schur(SchurCmd),
    /// Wreath product comparison
    #[command(subcommand)]
    Wreath(WreathCmd),
    /// Relations of the idempotented enveloping category
    #[command(subcommand)]
    Udot(UdotCmd),
    /// Howe duality
    #[command(subcommand)]
    Howe(HoweCmd),
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    Validate,
}

#[derive(Subcommand, Debug)]
pub enum BasisCmd {
    Enum {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum WebCmd {
    Eval {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    Reduce {
        #[arg(long)]
        diagram: PathBuf,
    },
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `defining`, `implied`, `all`, or a comma-separated list of relation ids
    #[arg(long, default_value = "defining")]
    pub relations: String,
    #[arg(long, default_value_t = 2)]
    pub bound: i64,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum SchurCmd {
    CheckIso {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WreathCmd {
    Check {
        #[arg(long)]
        d: usize,
        /// Also compare the image of ρ with its commutant on V_n^{⊗d}
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum UdotCmd {
    Verify {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Compare generated hom spaces of the image of W_n with |M|
    Full {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum HoweCmd {
    Check {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

/// Result of one command.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    /// One-line human summary printed on stdout.
    pub summary: String,
    pub body: Value,
}

impl Report {
    pub fn to_json(&self, algebra: &str, elapsed_ms: u128) -> Value {
        let ts = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        json!({
            "schema_version": SCHEMA_VERSION,
            "header": { "timestamp": ts, "elapsed_ms": elapsed_ms as u64, "version": env!("CARGO_PKG_VERSION") },
            "command": self.command,
            "algebra": algebra,
            "passed": self.passed,
            "result": self.body,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn report(command: &str, passed: bool, summary: String, body: Value) -> Report {
    Report { command: command.to_string(), passed, summary, body }
}

fn read_diagram(pair: &GoodPair, path: &PathBuf) -> Result<crate::webcat::WebMorphism, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_diagram(pair, &text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parses a subcommand and its flags, e.g. `["schur", "dim", "--n", "2", "--d", "2"]`.
/// Global flags other than the subcommand's own are accepted and ignored.
pub fn parse_command<I, S>(args: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("webcalc")).chain(args.into_iter().map(Into::into));
    RunConfig::try_parse_from(argv).map(|c| c.command).map_err(|e| CliError::Input(e.to_string()))
}

/// Executes a command against an already resolved algebra.
pub fn execute(pair: &GoodPair, command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Algebra(AlgebraCmd::Validate) => {
            let violations = pair.validate();
            let (even, odd) = pair.graded_dim();
            let summary = if violations.is_empty() {
                format!("{}: valid, dim {even}|{odd}", pair.name)
            } else {
                violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n")
            };
            let body = json!({
                "name": pair.name,
                "dim_even": even,
                "dim_odd": odd,
                "colors": pair.ncolors(),
                "violations": to_value(&violations),
            });
            Ok(report("algebra validate", violations.is_empty(), summary, body))
        }
        Command::Basis(BasisCmd::Enum { src, dst }) => {
            let s = Object::parse(pair, src).map_err(CliError::Input)?;
            let t = Object::parse(pair, dst).map_err(CliError::Input)?;
            let ms = enum_m(pair, &s, &t);
            let items: Vec<Value> = ms.iter().map(|m| json!({ "label": m.display(pair), "parity": m.parity(pair).bit() })).collect();
            let body = json!({ "src": s.display(pair), "dst": t.display(pair), "count": ms.len(), "basis": items });
            Ok(report("basis enum", true, ms.len().to_string(), body))
        }
        Command::Web(WebCmd::Eval { diagram, n }) => {
            if *n == 0 {
                return Err(CliError::Input("n must be at least 1".into()));
            }
            let f = read_diagram(pair, diagram)?;
            let ev = Evaluator::new(pair, *n);
            let mat = ev.eval(&f);
            let mut entries = Vec::new();
            for (c, col) in mat.cols.iter().enumerate() {
                for (r, x) in col {
                    entries.push(json!([r, c, fmt_q(x)]));
                }
            }
            let body = json!({
                "n": n,
                "dom": f.dom.display(pair),
                "cod": f.cod.display(pair),
                "rows": mat.rows,
                "cols": mat.ncols(),
                "nnz": mat.nnz(),
                "entries": entries,
            });
            Ok(report("web eval", true, format!("{}x{} matrix, {} nonzero", mat.rows, mat.ncols(), mat.nnz()), body))
        }
        Command::Web(WebCmd::Reduce { diagram }) => {
            let f = read_diagram(pair, diagram)?;
            let bc = reduce_to_basis(pair, &f).map_err(|e| CliError::Internal(e.to_string()))?;
            let coords: Vec<Value> = bc
                .coords
                .entries
                .iter()
                .map(|(i, c)| json!({ "basis": bc.basis[*i].display(pair), "coefficient": fmt_q(c) }))
                .collect();
            let body = json!({
                "dom": f.dom.display(pair),
                "cod": f.cod.display(pair),
                "basis_size": bc.basis.len(),
                "coordinates": coords,
            });
            Ok(report("web reduce", true, format!("{} nonzero coordinates in a basis of size {}", coords.len(), bc.basis.len()), body))
        }
        Command::Web(WebCmd::Verify(a)) => {
            let rep = verify_suite(pair, a.bound, a.n, &a.relations).map_err(input)?;
            let summary = format!("{}/{} instances equal", rep.equal, rep.instances);
            Ok(report("web verify", rep.all_equal, summary, to_value(&rep)))
        }
        Command::Schur(SchurCmd::CheckIso { n, d, samples }) => {
            if *n == 0 {
                return Err(CliError::Input("n must be at least 1".into()));
            }
            let rep = check_web_schur_iso(pair, *n, *d, *samples).map_err(|e| CliError::Internal(e.to_string()))?;
            let summary = format!("{}/{} images equal, {}/{} structure samples equal", rep.equal, rep.compared, rep.structure_equal, rep.structure_samples);
            Ok(report("schur check-iso", rep.all_equal, summary, to_value(&rep)))
        }
        Command::Schur(SchurCmd::Dim { n, d }) => {
            let dim = schur_dim(pair, *n, *d);
            Ok(report("schur dim", true, dim.to_string(), json!({ "n": n, "d": d, "dim": dim })))
        }
        Command::Wreath(WreathCmd::Check { d, n, samples }) => {
            let rep = wreath_from_web(pair, *d, *samples).map_err(|e| CliError::Internal(e.to_string()))?;
            let sw = n.map(|n| schur_weyl_check(pair, n, *d));
            let passed = rep.all_equal && sw.as_ref().map_or(true, |s| s.passed());
            let mut summary = format!("dim {} vs web {}, {}/{} samples equal", rep.wreath_dim, rep.web_dim, rep.samples_equal, rep.samples);
            if let Some(s) = &sw {
                summary += &format!("; image rank {} vs commutant {}", s.image_rank, s.commutant_dim);
            }
            Ok(report("wreath check", passed, summary, json!({ "wreath": to_value(&rep), "schur_weyl": sw.map(|s| to_value(&s)) })))
        }
        Command::Udot(UdotCmd::Verify { n, bound }) => {
            let rep = verify_udot(pair, *n, *bound).map_err(input)?;
            let summary = format!("{}/{} instances equal", rep.equal, rep.instances);
            Ok(report("udot verify", rep.all_equal, summary, to_value(&rep)))
        }
        Command::Udot(UdotCmd::Full { n, d }) => {
            if *n == 0 {
                return Err(CliError::Input("n must be at least 1".into()));
            }
            let rep = fullness_check(pair, *n, *d).map_err(input)?;
            let hit = rep.entries.iter().filter(|e| e.image_rank == e.hom_dim).count();
            let summary = format!("{hit}/{} hom spaces spanned", rep.entries.len());
            Ok(report("udot full", rep.full, summary, to_value(&rep)))
        }
        Command::Howe(HoweCmd::Check { m, n, d }) => {
            if *m == 0 || *n == 0 {
                return Err(CliError::Input("m and n must be at least 1".into()));
            }
            let rep = double_centralizer_check(pair, *m, *n, *d);
            let summary = format!(
                "dim {}: C(L) {} vs R {}, C(R) {} vs L {}",
                rep.space_dim, rep.dim_commutant_left, rep.dim_right, rep.dim_commutant_right, rep.dim_left
            );
            Ok(report("howe check", rep.passed(), summary, to_value(&rep)))
        }
    }
}

/// Runs a parsed configuration and returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    if let Some(j) = config.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return EXIT_INPUT;
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let pair = match GoodPair::resolve(&config.algebra) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let start = Instant::now();
    let rep = match execute(&pair, &config.command) {
        Ok(r) => r,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let doc = rep.to_json(&pair.name, start.elapsed().as_millis());
    let text = serde_json::to_string_pretty(&doc).expect("json") + "\n";
    match config.output.as_deref() {
        Some(p) if p.as_os_str() == "-" => print!("{text}"),
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return EXIT_INPUT;
            }
            println!("{}", rep.summary);
        }
        None => println!("{}", rep.summary),
    }
    if rep.passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
