use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use orbitfourier::cli::cache::{resolve_dir, CacheKey, FormulaCache, PutOutcome, CACHE_ENV};
use orbitfourier::cli::record::{ComponentRecord, FormulaRecord, SemisimpleRecord};
use orbitfourier::cli::verify::{self, Suite, VerifyConfig};
use orbitfourier::cli::{exit_code, parse_component, render};
use orbitfourier::formulas::{
    nilpotent_ft_direct, nilpotent_ft_oracle, semisimple_ft, support_set, ComponentFormula, Engine, Fault,
};
use orbitfourier::levi::{levi_classes, orbit_of_levi, LeviClass};
use orbitfourier::rootdata::{make_cartan, positive_system_at, CartanModel, Component, WitnessStyle};
use orbitfourier::{Error, Result};

#[derive(Parser)]
#[command(name = "orbitfourier", version, about = "Fourier transforms of coadjoint orbits of GL(n, R)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate Cartans, Levi classes or nilpotent orbits of gl(n).
    List {
        #[arg(value_enum)]
        what: ListKind,
        #[arg(long)]
        n: usize,
    },
    /// Fourier transform of a nilpotent orbit on one Cartan component.
    Ft(FtArgs),
    /// Fourier transform of a regular semisimple orbit on one Cartan component.
    FtSemisimple(SemisimpleArgs),
    /// Run the verification suites and print a JSON report.
    Verify(VerifyArgs),
    /// Inspect or populate the formula cache.
    Cache {
        #[command(subcommand)]
        cmd: CacheCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ListKind {
    Cartans,
    Levis,
    Orbits,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Direct,
    Oracle,
    Both,
}

#[derive(Args)]
struct Selector {
    #[arg(long)]
    n: usize,
    /// Cartan index l of h_l (number of complex pairs).
    #[arg(long)]
    cartan: usize,
    /// For example "real-order=3,1,2 pair-signs=+,-". Defaults to the standard component.
    #[arg(long, default_value = "")]
    component: String,
}

#[derive(Args)]
struct FtArgs {
    #[command(flatten)]
    sel: Selector,
    /// Levi class as block sizes, e.g. "2,1".
    #[arg(long)]
    levi: LeviClass,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, value_enum, default_value = "direct")]
    engine: EngineChoice,
    /// Cache directory. Without this flag the cache is used only when
    /// ORBITFOURIER_CACHE is set.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Recorded verbatim in JSON provenance. Omitted by default so output is
    /// reproducible.
    #[arg(long)]
    timestamp: Option<String>,
}

#[derive(Args)]
struct SemisimpleArgs {
    #[command(flatten)]
    sel: Selector,
    /// Index of the Cartan h_k carrying the orbit parameter.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Comma separated subset of suites; all by default.
    #[arg(long, value_delimiter = ',')]
    suites: Vec<Suite>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Stop starting new cells after this many seconds and mark the report incomplete.
    #[arg(long)]
    budget_secs: Option<u64>,
    #[arg(long, value_enum)]
    inject_fault: Option<FaultChoice>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultChoice {
    EpsSign,
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Validate a JSON record and store it.
    Put {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
    /// Print a cached record, exiting 1 on a miss.
    Get {
        #[command(flatten)]
        sel: Selector,
        #[arg(long)]
        levi: LeviClass,
        #[arg(long, value_enum, default_value = "direct")]
        engine: EngineChoice,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::List { what, n } => list(what, n),
        Cmd::Ft(a) => ft(a),
        Cmd::FtSemisimple(a) => ft_semisimple(a),
        Cmd::Verify(a) => run_verify(a),
        Cmd::Cache { cmd } => cache(cmd),
    }
}

fn checked_n(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if n > orbitfourier::DEFAULT_N_BOUND {
        return Err(Error::BoundExceeded { n, bound: orbitfourier::DEFAULT_N_BOUND });
    }
    Ok(n)
}

fn list(what: ListKind, n: usize) -> Result<u8> {
    let n = checked_n(n)?;
    let out = match what {
        ListKind::Cartans => CartanModel::all(n)?
            .iter()
            .map(|c| {
                json!({
                    "l": c.l(),
                    "pairs": c.pairs().iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
                    "reals": c.reals().iter().map(|r| r + 1).collect::<Vec<_>>(),
                    "split": c.is_split(),
                    "fundamental": c.is_fundamental(),
                })
            })
            .collect::<Vec<_>>(),
        ListKind::Levis => levi_classes(n)
            .iter()
            .map(|l| {
                Ok(json!({
                    "levi": l,
                    "fundamental_cartan": l.fundamental_cartan_index(),
                    "support": support_set(n, l)?,
                }))
            })
            .collect::<Result<Vec<_>>>()?,
        ListKind::Orbits => levi_classes(n)
            .iter()
            .map(|l| {
                let o = orbit_of_levi(l);
                json!({ "levi": l, "jordan_type": o.jordan_type, "dim": o.dim })
            })
            .collect(),
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(0)
}

fn component(sel: &Selector) -> Result<Component> {
    let n = checked_n(sel.n)?;
    let c = make_cartan(n, sel.cartan)?;
    parse_component(&c, &sel.component)
}

fn check_class(levi: &LeviClass, n: usize) -> Result<()> {
    if levi.n() != n {
        return Err(Error::Domain(format!("Levi class {levi} does not partition n = {n}")));
    }
    Ok(())
}

fn engines(choice: EngineChoice) -> Vec<Engine> {
    match choice {
        EngineChoice::Direct => vec![Engine::Direct],
        EngineChoice::Oracle => vec![Engine::Oracle],
        EngineChoice::Both => vec![Engine::Direct, Engine::Oracle],
    }
}

/// The cache configured by flag or environment, if any.
fn optional_cache(flag: Option<&PathBuf>) -> Result<Option<FormulaCache>> {
    if flag.is_none() && std::env::var_os(CACHE_ENV).map_or(true, |v| v.is_empty()) {
        return Ok(None);
    }
    Ok(Some(FormulaCache::open(resolve_dir(flag.map(PathBuf::as_path)))?))
}

fn compute(levi: &LeviClass, comp: &Component, engine: Engine, cache: Option<&FormulaCache>) -> Result<ComponentFormula> {
    let key = CacheKey::new(
        comp.cartan().n(),
        levi.clone(),
        comp.cartan().l(),
        ComponentRecord::from_component(comp),
        engine,
    );
    if let Some(cache) = cache {
        if let Some(rec) = cache.get(&key)? {
            log::info!("cache hit {}", key.digest());
            return rec.to_formula();
        }
    }
    let f = match engine {
        Engine::Direct => nilpotent_ft_direct(levi, comp)?,
        Engine::Oracle => nilpotent_ft_oracle(levi, comp)?,
    };
    if let Some(cache) = cache {
        cache.put(&FormulaRecord::from_formula(&f, None))?;
    }
    Ok(f)
}

fn ft(a: FtArgs) -> Result<u8> {
    let comp = component(&a.sel)?;
    check_class(&a.levi, a.sel.n)?;
    let cache = optional_cache(a.cache_dir.as_ref())?;
    let formulas = engines(a.engine)
        .into_iter()
        .map(|e| compute(&a.levi, &comp, e, cache.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    match a.format {
        Format::Json => {
            let recs: Vec<_> = formulas.iter().map(|f| FormulaRecord::from_formula(f, a.timestamp.clone())).collect();
            if recs.len() == 1 {
                println!("{}", recs[0].to_json());
            } else {
                println!("{}", serde_json::to_string_pretty(&recs)?);
            }
        }
        Format::Latex => formulas.iter().for_each(|f| println!("{}", render::formula_latex(f))),
        Format::Text => formulas.iter().for_each(|f| print!("{}", render::formula_text(f))),
    }
    if let [d, o] = formulas.as_slice() {
        if d.numerator != o.numerator {
            eprintln!("engines disagree: direct {} vs oracle {}", d.numerator, o.numerator);
            return Ok(1);
        }
    }
    Ok(0)
}

fn ft_semisimple(a: SemisimpleArgs) -> Result<u8> {
    let comp = component(&a.sel)?;
    let pos = positive_system_at(&comp, WitnessStyle::Canonical);
    let f = semisimple_ft(a.k, &comp, &pos)?;
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&SemisimpleRecord::from_formula(&f))?),
        Format::Latex => println!("{}", render::semisimple_latex(&f)),
        Format::Text => print!("{}", render::semisimple_text(&f)),
    }
    Ok(0)
}

fn run_verify(a: VerifyArgs) -> Result<u8> {
    let mut cfg = VerifyConfig::new(checked_n(a.n_max)?);
    if !a.suites.is_empty() {
        cfg.suites = a.suites;
    }
    cfg.jobs = a.jobs.max(1);
    cfg.budget = a.budget_secs.map(Duration::from_secs);
    cfg.fault = a.inject_fault.map(|FaultChoice::EpsSign| Fault::EpsSign);
    cfg.timing = a.timing;
    cfg.seed = a.seed;
    let report = verify::run(&cfg)?;
    println!("{}", report.to_json());
    Ok(if report.passed() { 0 } else { 1 })
}

fn cache(cmd: CacheCmd) -> Result<u8> {
    match cmd {
        CacheCmd::Put { file, cache_dir } => {
            let rec = FormulaRecord::from_json(&std::fs::read_to_string(&file)?)?;
            rec.to_formula()?;
            let cache = FormulaCache::open(resolve_dir(cache_dir.as_deref()))?;
            let key = CacheKey::of(&rec);
            let what = match cache.put(&rec)? {
                PutOutcome::Stored => "stored",
                PutOutcome::AlreadyPresent => "already present",
            };
            println!("{what} {}", key.digest());
            Ok(0)
        }
        CacheCmd::Get { sel, levi, engine, cache_dir } => {
            let comp = component(&sel)?;
            check_class(&levi, sel.n)?;
            let engine = match engine {
                EngineChoice::Direct => Engine::Direct,
                EngineChoice::Oracle => Engine::Oracle,
                EngineChoice::Both => return Err(Error::Parse("cache get needs a single engine".into())),
            };
            let cache = FormulaCache::open(resolve_dir(cache_dir.as_deref()))?;
            let key = CacheKey::new(sel.n, levi, sel.cartan, ComponentRecord::from_component(&comp), engine);
            match cache.get(&key)? {
                Some(rec) => {
                    println!("{}", rec.to_json());
                    Ok(0)
                }
                None => {
                    eprintln!("miss {}", key.digest());
                    Ok(1)
                }
            }
        }
    }
}
