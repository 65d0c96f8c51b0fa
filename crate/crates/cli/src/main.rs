//! `bookx`: command-line access to the book-crossing toolkit.
//!
//! Exit status is 0 on success, 1 on invalid input or a failed check, and 2
//! when the answer is correct but only a bound (composition, analytic upper
//! bound, or a search that ran out of budget).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bookx_core::bounds::{best_asymptotic_coefficient, default_scan, emit_table, BoundReport, TableId};
use bookx_core::emax::{
    analytic_upper, emax_closed_form_record, emax_composition_bound, emax_exact, estar_acyclic, EdgeMaxRecord,
    SearchBudget,
};
use bookx_core::error::Error;
use bookx_core::optimizer::{anneal, improve_from, Schedule};
use bookx_core::rational::format_sci;
use bookx_core::repro;
use bookx_core::zk::{block_permutation_variant, count_monochromatic_crossings, dps_construction, zk_value, BookDrawing};

#[derive(Parser, Debug)]
#[command(name = "bookx", version, about = "Crossings of complete graphs in k-page book drawings")]
struct Cli {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    emit: Option<Emit>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Z_k(n), the crossings of the block construction.
    Zk(NK),
    /// Build the block construction, optionally with reordered block sizes.
    Construct {
        #[command(flatten)]
        nk: NK,
        /// Block sizes in page order, e.g. 4,3,4,3.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count the crossings of a drawing JSON file and compare with Z_k(n).
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// The maximum edge count e_l(n) of a convex graph with local crossing number l.
    Emax {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        method: EmaxMethod,
        /// Write the witness graph here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
        max_nodes: u64,
    },
    /// Most edges of a convex graph whose crossing graph is a forest.
    Estar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
        max_nodes: u64,
    },
    /// Counting lower bounds on the k-page crossing number of K_n.
    Bounds {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Best asymptotic lower-bound coefficient over a range of n'.
    Coeff {
        #[arg(long)]
        k: usize,
        /// Inclusive range LO:HI; defaults to 2k:8k.
        #[arg(long)]
        scan: Option<String>,
    },
    /// Emit one of the result tables as CSV.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for drawings with few crossings by simulated annealing.
    Optimize {
        #[command(flatten)]
        nk: NK,
        #[arg(long, default_value_t = 8)]
        restarts: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start from this drawing instead of random ones.
        #[arg(long)]
        from: Option<PathBuf>,
        /// Proposed moves per restart.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for drawings that beat Z_k(n).
        #[arg(long, default_value = "alerts")]
        alerts: PathBuf,
    },
    /// Run the reproduction checks.
    Repro {
        /// Run every check.
        #[arg(long, conflicts_with = "only")]
        all: bool,
        /// Comma-separated check numbers.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct NK {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EmaxMethod {
    Exact,
    Closed,
    Compose,
    Upper,
}

enum Failure {
    Invalid(String),
    Inexact,
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// What produced an output file, written next to it as `<file>.manifest.json`.
struct RunManifest {
    subcommand: &'static str,
    argv: Vec<String>,
    seed: Option<u64>,
    started: Instant,
}

impl RunManifest {
    fn write_output(&self, path: &Path, body: &str) -> std::io::Result<()> {
        std::fs::write(path, body)?;
        let mut sidecar = path.as_os_str().to_owned();
        sidecar.push(".manifest.json");
        let manifest = json!({
            "subcommand": self.subcommand,
            "flags": self.argv,
            "seed": self.seed,
            "versions": { "bookx": env!("CARGO_PKG_VERSION") },
            "threads": rayon::current_num_threads(),
            "elapsed_ms": self.started.elapsed().as_millis() as u64,
            "outputs": [path.display().to_string()],
        });
        std::fs::write(sidecar, serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n")
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(threads) = std::env::var("BOOKX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if threads > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    }
    match dispatch(cli, argv.into_iter().skip(1).collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Inexact) => ExitCode::from(2),
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Zk(_) => "zk",
        Command::Construct { .. } => "construct",
        Command::Verify { .. } => "verify",
        Command::Emax { .. } => "emax",
        Command::Estar { .. } => "estar",
        Command::Bounds { .. } => "bounds",
        Command::Coeff { .. } => "coeff",
        Command::Tables { .. } => "tables",
        Command::Optimize { .. } => "optimize",
        Command::Repro { .. } => "repro",
    }
}

fn dispatch(cli: Cli, argv: Vec<String>) -> Outcome {
    let seed = match &cli.command {
        Command::Optimize { seed, .. } | Command::Repro { seed, .. } => Some(*seed),
        _ => None,
    };
    let manifest = RunManifest { subcommand: subcommand_name(&cli.command), argv, seed, started: Instant::now() };
    let emit = cli.emit;
    match cli.command {
        Command::Zk(NK { n, k }) => {
            if n < 3 || k == 0 {
                return Err(Failure::Invalid(format!("need n >= 3 and k >= 1, got n = {n}, k = {k}")));
            }
            let z = zk_value(n, k);
            match emit.unwrap_or(Emit::Text) {
                Emit::Text => println!("{z}"),
                Emit::Csv => print!("n,k,zk\n{n},{k},{z}\n"),
                Emit::Json => print_json(&json!({ "n": n, "k": k, "zk": z })),
            }
            Ok(())
        }
        Command::Construct { nk: NK { n, k }, order, out } => {
            let d = match order {
                Some(sizes) => block_permutation_variant(n, k, &sizes)?,
                None => dps_construction(n, k)?,
            };
            let body = match emit.unwrap_or(Emit::Json) {
                Emit::Json => d.to_json() + "\n",
                Emit::Text => drawing_text(&d),
                Emit::Csv => return Err(csv_unsupported("construct")),
            };
            deliver(&manifest, out.as_deref(), &body)
        }
        Command::Verify { file } => {
            let d = BookDrawing::from_json(&std::fs::read_to_string(&file)?)?;
            let count = count_monochromatic_crossings(&d);
            let z = zk_value(d.n(), d.k());
            let relation = match count.cmp(&z) {
                std::cmp::Ordering::Less => "below",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "above",
            };
            match emit.unwrap_or(Emit::Text) {
                Emit::Text => print!("crossings {count}\nzk {z}\nrelation {relation}\n"),
                Emit::Csv => print!("n,k,crossings,zk,relation\n{},{},{count},{z},{relation}\n", d.n(), d.k()),
                Emit::Json => print_json(&json!({
                    "n": d.n(), "k": d.k(), "crossings": count, "zk": z, "relation": relation,
                })),
            }
            Ok(())
        }
        Command::Emax { ell, n, method, certificate, max_nodes } => {
            let budget = SearchBudget { max_nodes };
            let record = match method {
                EmaxMethod::Exact => emax_exact(ell, n, &budget)?,
                EmaxMethod::Closed => emax_closed_form_record(ell, n)?,
                EmaxMethod::Compose => emax_composition_bound(ell, n)?,
                EmaxMethod::Upper => return emax_upper(ell, n, emit),
            };
            report_record(&manifest, &record, certificate.as_deref(), emit)
        }
        Command::Estar { n, certificate, max_nodes } => {
            let record = estar_acyclic(n, &SearchBudget { max_nodes })?;
            report_record(&manifest, &record, certificate.as_deref(), emit)
        }
        Command::Bounds { k, n } => {
            let r = BoundReport::new(k, n)?;
            match emit.unwrap_or(Emit::Text) {
                Emit::Json => print_json(&r.to_json_value()),
                Emit::Csv => {
                    print!("k,n,m,l_value\n");
                    for (m, v) in r.l_values.iter().enumerate() {
                        println!("{k},{n},{m},{v}");
                    }
                }
                Emit::Text => {
                    let mut s = String::new();
                    for (m, v) in r.l_values.iter().enumerate() {
                        let _ = writeln!(s, "L(m={m}) = {v}");
                    }
                    let _ = writeln!(s, "best m = {}{}", r.best_m, if r.cap_active { " (capped)" } else { "" });
                    let _ = writeln!(s, "lower bound = {} ({})", r.best_bound, r.best_rational);
                    if let Some(t) = &r.piecewise {
                        let _ = writeln!(s, "piecewise bound = {} (branch {})", t.value, t.branch);
                    }
                    let _ = writeln!(s, "upper bound Z_k(n) = {}", zk_value(n, k));
                    print!("{s}");
                }
            }
            Ok(())
        }
        Command::Coeff { k, scan } => {
            let (lo, hi) = match scan {
                Some(s) => parse_scan(&s)?,
                None => default_scan(k),
            };
            let (c, nprime, m) = best_asymptotic_coefficient(k, lo, hi)?;
            match emit.unwrap_or(Emit::Text) {
                Emit::Text => println!("{c} at n' = {nprime}, m = {m} (~{})", format_sci(&c, 5)),
                Emit::Csv => print!("k,coefficient,nprime,m\n{k},{c},{nprime},{m}\n"),
                Emit::Json => print_json(&json!({
                    "k": k, "coefficient": c.to_string(), "nprime": nprime, "m": m, "scan": [lo, hi],
                })),
            }
            Ok(())
        }
        Command::Tables { which, out } => {
            if matches!(emit, Some(Emit::Json | Emit::Text)) {
                return Err(Failure::Invalid("tables are only emitted as CSV".into()));
            }
            let csv = emit_table(TableId::from_number(which)?)?;
            deliver(&manifest, out.as_deref(), &csv)
        }
        Command::Optimize { nk: NK { n, k }, restarts, seed, from, budget, out, alerts } => {
            let mut schedule = Schedule::default();
            if let Some(iters) = budget {
                schedule.iterations = iters;
            }
            let (drawing, count, lower, z) = match from {
                Some(path) => {
                    let start = BookDrawing::from_json(&std::fs::read_to_string(path)?)?;
                    if start.n() != n || start.k() != k {
                        return Err(Failure::Invalid(format!(
                            "drawing has n = {}, k = {}, but --n {n} --k {k} was given",
                            start.n(),
                            start.k()
                        )));
                    }
                    let d = improve_from(&start, seed, &schedule);
                    let c = count_monochromatic_crossings(&d);
                    (d, c, BoundReport::new(k, n)?.best_bound, zk_value(n, k))
                }
                None => {
                    let r = anneal(n, k, restarts, seed, &schedule)?;
                    (r.drawing, r.count, r.lower_bound, r.zk)
                }
            };
            if count < z {
                let alert = bookx_core::optimizer::ConjectureAlert { n, k, count, zk: z, drawing: drawing.clone() };
                let path = alert.persist(&alerts)?;
                eprintln!("found {count} < Z_k(n) = {z}; saved {}", path.display());
            }
            let body = match emit.unwrap_or(Emit::Json) {
                Emit::Json => {
                    serde_json::to_string_pretty(&json!({
                        "n": n, "k": k, "count": count, "zk": z, "lower_bound": lower,
                        "drawing": drawing.to_json_value(),
                    }))? + "\n"
                }
                Emit::Text => format!("count {count}\nzk {z}\nlower_bound {lower}\n{}", drawing_text(&drawing)),
                Emit::Csv => format!("n,k,count,zk,lower_bound\n{n},{k},{count},{z},{lower}\n"),
            };
            deliver(&manifest, out.as_deref(), &body)
        }
        Command::Repro { all, only, seed } => {
            let ids = match (all, only) {
                (true, _) => Vec::new(),
                (false, Some(ids)) => ids,
                (false, None) => return Err(Failure::Invalid("pass --all or --only N,M".into())),
            };
            if let Some(bad) = ids.iter().find(|&&i| !(1..=10).contains(&i)) {
                return Err(Failure::Invalid(format!("no check numbered {bad}")));
            }
            let mut failed = false;
            for r in repro::run(&ids, seed) {
                println!("{r}");
                failed |= !r.passed;
            }
            if failed {
                Err(Failure::Check)
            } else {
                Ok(())
            }
        }
    }
}

fn csv_unsupported(cmd: &str) -> Failure {
    Failure::Invalid(format!("{cmd} has no CSV form"))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("value serializes"));
}

fn deliver(manifest: &RunManifest, out: Option<&Path>, body: &str) -> Outcome {
    match out {
        Some(path) => manifest.write_output(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn drawing_text(d: &BookDrawing) -> String {
    let mut s = format!("n {} k {} crossings {}\n", d.n(), d.k(), count_monochromatic_crossings(d));
    for (p, edges) in d.pages().iter().enumerate() {
        let list: Vec<String> = edges.iter().map(|e| format!("{}-{}", e.u, e.v)).collect();
        let _ = writeln!(s, "page {p}: {}", list.join(" "));
    }
    s
}

fn parse_scan(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Invalid(format!("--scan expects LO:HI, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn report_record(manifest: &RunManifest, r: &EdgeMaxRecord, cert: Option<&Path>, emit: Option<Emit>) -> Outcome {
    r.validate()?;
    if let (Some(path), Some(g)) = (cert, &r.certificate) {
        manifest.write_output(path, &(g.to_json() + "\n"))?;
    }
    match emit.unwrap_or(Emit::Text) {
        Emit::Json => print_json(&r.to_json_value()),
        Emit::Csv => print!(
            "ell,n,value,method,status\n{},{},{},{},{}\n",
            r.ell,
            r.n,
            r.value,
            r.method.as_str(),
            if r.is_exact() { "exact" } else { "inexact" }
        ),
        Emit::Text => {
            println!("{}", r.value);
            if !r.is_exact() {
                eprintln!("{} gives a lower bound only", r.method.as_str());
            }
        }
    }
    if r.is_exact() {
        Ok(())
    } else {
        Err(Failure::Inexact)
    }
}

fn emax_upper(ell: usize, n: usize, emit: Option<Emit>) -> Outcome {
    let bound = analytic_upper(ell, n);
    let floor = bound.floor().to_integer();
    match emit.unwrap_or(Emit::Text) {
        Emit::Text => println!("{floor}"),
        Emit::Csv => print!("ell,n,value,method,status\n{ell},{n},{floor},analytic-upper,inexact\n"),
        Emit::Json => print_json(&json!({
            "ell": ell, "n": n, "value": floor.to_string(), "exact_bound": bound.to_string(),
            "method": "analytic-upper", "status": "inexact",
        })),
    }
    Err(Failure::Inexact)
}
