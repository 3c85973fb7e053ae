//! Batch verification driver.
//!
//! Every suite is split into independent cells. Cells run on a worker pool
//! and their results are collected in cell order, so the report does not
//! depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::formulas::{
    check_homogeneity, check_integrality_and_positivity, check_matching_with, counting_identity,
    nilpotent_ft_oracle_with, regular_elliptic_sum_with, OraclePlan, rossmann_overlap, support_set, DirectPlan, EngineOptions, Fault,
};
use crate::levi::{dual_partition, levi_classes, orbit_of_levi, supports, LeviClass};
use crate::rootdata::{enumerate_components, positive_system_at, CartanModel, Component, Level, Root, WitnessStyle};
use crate::symalg::{check_commutator, product_of_roots, rat, Monomial, QPoly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Oracle,
    Homogeneity,
    Matching,
    Integrality,
    Support,
    Counting,
    Commutator,
    Rossmann,
    RegularElliptic,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Oracle,
        Suite::Homogeneity,
        Suite::Matching,
        Suite::Integrality,
        Suite::Support,
        Suite::Counting,
        Suite::Commutator,
        Suite::Rossmann,
        Suite::RegularElliptic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Homogeneity => "homogeneity",
            Suite::Matching => "matching",
            Suite::Integrality => "integrality",
            Suite::Support => "support",
            Suite::Counting => "counting",
            Suite::Commutator => "commutator",
            Suite::Rossmann => "rossmann",
            Suite::RegularElliptic => "regular_elliptic",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim() || x.name().replace('_', "-") == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n_max: usize,
    /// The oracle pipeline is the expensive part; it is swept only up to here.
    pub oracle_n_max: usize,
    pub suites: Vec<Suite>,
    pub jobs: usize,
    pub budget: Option<Duration>,
    pub fault: Option<Fault>,
    pub seed: u64,
    pub timing: bool,
}

impl VerifyConfig {
    pub fn new(n_max: usize) -> VerifyConfig {
        VerifyConfig {
            n_max,
            oracle_n_max: n_max.min(6),
            suites: Suite::ALL.to_vec(),
            jobs: 1,
            budget: None,
            fault: None,
            seed: 0x5eed,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub params: BTreeMap<String, String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cells_checked: usize,
    pub cells_skipped: usize,
    pub failures: Vec<Failure>,
    /// Observations that are not failures, such as induced global signs.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub tool_version: String,
    pub n_max: usize,
    pub suites: Vec<SuiteReport>,
    pub incomplete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }

    pub fn suite(&self, s: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|r| r.suite == s.name())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

#[derive(Default)]
struct CellOutcome {
    checked: usize,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl CellOutcome {
    fn check(&mut self, ok: bool, params: &Params, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure { params: params.0.clone(), detail: detail() });
        }
    }

    fn error(&mut self, params: &Params, e: Error) {
        self.checked += 1;
        self.failures.push(Failure { params: params.0.clone(), detail: e.to_string() });
    }
}

#[derive(Clone, Default)]
struct Params(BTreeMap<String, String>);

impl Params {
    fn with(mut self, k: &str, v: impl fmt::Display) -> Params {
        self.0.insert(k.to_string(), v.to_string());
        self
    }
}

type Cell = Box<dyn Fn() -> CellOutcome + Send + Sync>;

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.n_max == 0 || cfg.n_max > crate::DEFAULT_N_BOUND {
        return Err(Error::BoundExceeded { n: cfg.n_max, bound: crate::DEFAULT_N_BOUND });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Unsupported(format!("cannot start worker pool: {e}")))?;
    let start = Instant::now();
    let deadline = cfg.budget.map(|b| start + b);
    let mut suites = Vec::new();
    let mut incomplete = false;
    let mut selected = cfg.suites.clone();
    selected.sort();
    selected.dedup();
    for suite in selected {
        let cells = build_cells(suite, cfg);
        let results: Vec<Option<CellOutcome>> = pool.install(|| {
            cells
                .par_iter()
                .map(|cell| match deadline {
                    Some(d) if Instant::now() >= d => None,
                    _ => Some(cell()),
                })
                .collect()
        });
        let mut report = SuiteReport {
            suite: suite.name().to_string(),
            cells_checked: 0,
            cells_skipped: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        };
        for r in results {
            match r {
                None => report.cells_skipped += 1,
                Some(o) => {
                    report.cells_checked += o.checked;
                    report.failures.extend(o.failures);
                    report.notes.extend(o.notes);
                }
            }
        }
        incomplete |= report.cells_skipped > 0;
        suites.push(report);
    }
    Ok(VerifyReport {
        tool_version: super::TOOL_VERSION.to_string(),
        n_max: cfg.n_max,
        suites,
        incomplete,
        wall_time_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn cartans(n: usize) -> Vec<CartanModel> {
    CartanModel::all(n).expect("n >= 1")
}

fn build_cells(suite: Suite, cfg: &VerifyConfig) -> Vec<Cell> {
    let mut cells: Vec<Cell> = Vec::new();
    let opts = EngineOptions { witness: WitnessStyle::Canonical, fault: cfg.fault };
    let fault = cfg.fault;
    match suite {
        Suite::Oracle => {
            for n in 1..=cfg.oracle_n_max {
                for class in levi_classes(n) {
                    for c in cartans(n) {
                        let class = class.clone();
                        cells.push(Box::new(move || oracle_cell(&class, &c, &opts)));
                    }
                }
            }
        }
        Suite::Homogeneity => {
            for n in 1..=cfg.n_max {
                let with_oracle = n <= cfg.oracle_n_max;
                for class in levi_classes(n) {
                    for c in cartans(n) {
                        let class = class.clone();
                        cells.push(Box::new(move || homogeneity_cell(&class, &c, with_oracle, &opts)));
                    }
                }
            }
        }
        Suite::Integrality => {
            for n in 1..=cfg.n_max {
                let with_oracle = n <= cfg.oracle_n_max;
                let level = if n <= 6 { Some(Level::Regular) } else { None };
                for class in levi_classes(n) {
                    for c in cartans(n) {
                        let class = class.clone();
                        cells.push(Box::new(move || integrality_cell(&class, &c, level, with_oracle, &opts)));
                    }
                }
            }
        }
        Suite::Support => {
            for n in 1..=cfg.n_max {
                let with_oracle = n <= cfg.oracle_n_max;
                for class in levi_classes(n) {
                    cells.push(Box::new(move || support_cell(&class, with_oracle, &opts)));
                }
            }
        }
        Suite::Matching => {
            for n in 2..=cfg.n_max.min(6) {
                for l in 0..n / 2 {
                    cells.push(Box::new(move || matching_cell(n, l, fault)));
                }
            }
        }
        Suite::Counting => {
            for n in 1..=cfg.n_max.min(5) {
                for class in levi_classes(n) {
                    for l in 0..=n / 2 {
                        let class = class.clone();
                        cells.push(Box::new(move || counting_cell(&class, l)));
                    }
                }
            }
        }
        Suite::Commutator => {
            for n in 1..=cfg.n_max.min(5) {
                for class in levi_classes(n) {
                    let seed = cfg.seed ^ ((n as u64) << 32) ^ class.blocks().iter().fold(0u64, |h, &q| h * 31 + q as u64);
                    cells.push(Box::new(move || commutator_cell(&class, seed, 20)));
                }
            }
        }
        Suite::Rossmann => {
            for n in 1..=cfg.n_max.min(5) {
                for c in cartans(n) {
                    cells.push(Box::new(move || rossmann_cell(&c)));
                }
            }
        }
        Suite::RegularElliptic => {
            for n in (2..=cfg.n_max).step_by(2) {
                cells.push(Box::new(move || regular_elliptic_cell(n, fault)));
            }
        }
    }
    cells
}

fn cell_params(class: &LeviClass, c: &CartanModel) -> Params {
    Params::default().with("n", c.n()).with("levi", class).with("cartan", c.l())
}

fn oracle_cell(class: &LeviClass, c: &CartanModel, opts: &EngineOptions) -> CellOutcome {
    let mut out = CellOutcome::default();
    let base = cell_params(class, c);
    let plans = DirectPlan::new(c, class).and_then(|d| Ok((d, OraclePlan::new(c, class, *opts)?)));
    let (direct, oracle) = match plans {
        Ok(p) => p,
        Err(e) => {
            out.error(&base, e);
            return out;
        }
    };
    for comp in enumerate_components(c, Level::Regular) {
        let params = base.clone().with("component", &comp);
        let d = direct.evaluate(&comp, opts);
        let o = oracle.evaluate(&comp);
        match (d, o) {
            (Ok(d), Ok(o)) => out.check(d.numerator == o.numerator, &params, || {
                format!("direct numerator {} but oracle numerator {}", d.numerator, o.numerator)
            }),
            (Err(e), _) | (_, Err(e)) => out.error(&params, e),
        }
    }
    out
}

fn homogeneity_cell(class: &LeviClass, c: &CartanModel, with_oracle: bool, opts: &EngineOptions) -> CellOutcome {
    let mut out = CellOutcome::default();
    let params = cell_params(class, c);
    let orbit = orbit_of_levi(class);
    let n = c.n();
    let dim_dual = n * n - dual_partition(&orbit.jordan_type).iter().map(|q| q * q).sum::<usize>();
    out.check(orbit.dim == dim_dual, &params, || format!("dim {} vs dual formula {dim_dual}", orbit.dim));
    let comp = Component::standard(c.clone());
    let mut formulas = vec![DirectPlan::new(c, class).and_then(|p| p.evaluate(&comp, opts))];
    if with_oracle {
        formulas.push(nilpotent_ft_oracle_with(class, &comp, opts));
    }
    for f in formulas {
        match f {
            Ok(f) => out.check(check_homogeneity(&f), &params.clone().with("engine", f.provenance.engine), || {
                format!("numerator {} is not homogeneous of degree {}", f.numerator, class.positive_root_count())
            }),
            Err(e) => out.error(&params, e),
        }
    }
    out
}

fn integrality_cell(
    class: &LeviClass,
    c: &CartanModel,
    level: Option<Level>,
    with_oracle: bool,
    opts: &EngineOptions,
) -> CellOutcome {
    let mut out = CellOutcome::default();
    let base = cell_params(class, c);
    let comps = match level {
        Some(level) => enumerate_components(c, level),
        None => vec![Component::standard(c.clone())],
    };
    let plans = DirectPlan::new(c, class).and_then(|d| Ok((d, OraclePlan::new(c, class, *opts)?)));
    let (direct, oracle) = match plans {
        Ok(p) => p,
        Err(e) => {
            out.error(&base, e);
            return out;
        }
    };
    for comp in comps {
        let params = base.clone().with("component", &comp);
        let mut formulas = vec![direct.evaluate(&comp, opts)];
        if with_oracle {
            formulas.push(oracle.evaluate(&comp));
        }
        for f in formulas {
            match f {
                Ok(f) => out.check(check_integrality_and_positivity(&f), &params.clone().with("engine", f.provenance.engine), || {
                    format!("numerator {} is not a positive integral Levi sum", f.numerator)
                }),
                Err(e) => out.error(&params, e),
            }
        }
    }
    out
}

fn support_cell(class: &LeviClass, with_oracle: bool, opts: &EngineOptions) -> CellOutcome {
    let mut out = CellOutcome::default();
    let n = class.n();
    let params = Params::default().with("n", n).with("levi", class);
    let mut nonzero_direct = Vec::new();
    let mut nonzero_oracle = Vec::new();
    for c in cartans(n) {
        let comp = Component::standard(c.clone());
        match DirectPlan::new(&c, class).and_then(|p| p.evaluate(&comp, opts)) {
            Ok(f) if !f.is_zero() => nonzero_direct.push(c.l()),
            Ok(_) => {}
            Err(e) => out.error(&params, e),
        }
        if with_oracle {
            match nilpotent_ft_oracle_with(class, &comp, opts) {
                Ok(f) if !f.is_zero() => nonzero_oracle.push(c.l()),
                Ok(_) => {}
                Err(e) => out.error(&params, e),
            }
        }
    }
    let expect: Vec<usize> = cartans(n).iter().filter(|c| supports(c, class)).map(|c| c.l()).collect();
    out.check(support_set(n, class).ok() == Some(expect.clone()), &params, || "support_set disagrees with supports".into());
    out.check(nonzero_direct == expect, &params, || format!("direct engine nonzero on {nonzero_direct:?}, expected {expect:?}"));
    if with_oracle {
        out.check(nonzero_oracle == expect, &params, || format!("oracle nonzero on {nonzero_oracle:?}, expected {expect:?}"));
    }
    out
}

fn matching_cell(n: usize, l: usize, fault: Option<Fault>) -> CellOutcome {
    let mut out = CellOutcome::default();
    let upper_cartan = CartanModel::new(n, l + 1).expect("l < m");
    let lower_cartan = CartanModel::new(n, l).expect("l < m");
    let (a, b) = lower_cartan.pairs()[0];
    for upper in enumerate_components(&upper_cartan, Level::Regular) {
        let order = upper.real_order();
        let ia = order.iter().position(|&x| x == a).expect("real");
        let ib = order.iter().position(|&x| x == b).expect("real");
        if ia.abs_diff(ib) != 1 {
            continue;
        }
        for k in 0..=n / 2 {
            let params = Params::default().with("n", n).with("l", l).with("k", k).with("upper", &upper);
            match check_matching_with(k, &upper, fault) {
                Ok(m) => out.check(m.holds(), &params, || {
                    format!("relation fails at w = {}", m.failures.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "))
                }),
                Err(e) => out.error(&params, e),
            }
        }
    }
    out
}

fn counting_cell(class: &LeviClass, l: usize) -> CellOutcome {
    let mut out = CellOutcome::default();
    let n = class.n();
    let params = Params::default().with("n", n).with("levi", class).with("cartan", l);
    match counting_identity(class, l) {
        Ok(instances) => {
            for i in instances {
                let p = params.clone().with("target", &i.target);
                out.check(i.holds(), &p, || format!("2^(l-k) * #{{w : wL = L'}} = {} but |W(G,H)_L'| = {}", i.lhs, i.rhs));
                if i.quotient_form_holds {
                    out.notes.push(format!(
                        "n={n} levi={class} cartan={l} target={}: quotient form 2^(l-k)/#{{...}} = |W(G,H)_L'| holds",
                        i.target
                    ));
                }
            }
        }
        Err(e) => out.error(&params, e),
    }
    out
}

/// A point whose centralizer is the standard block-diagonal Levi of `class`:
/// block `i` takes the value `r - i`.
pub fn central_point(class: &LeviClass) -> Vec<Rational> {
    let r = class.blocks().len() as i64;
    class
        .blocks()
        .iter()
        .enumerate()
        .flat_map(|(i, &q)| std::iter::repeat(rat(r - i as i64)).take(q))
        .collect()
}

/// `(π_L, π^∨_{G/L})` for the standard block-diagonal Levi of `class`, with
/// `e_p - e_q` positive for `p < q`.
pub fn levi_root_products(class: &LeviClass) -> (QPoly, QPoly) {
    let n = class.n();
    let mut block = Vec::with_capacity(n);
    for (i, &q) in class.blocks().iter().enumerate() {
        block.extend(std::iter::repeat(i).take(q));
    }
    let (inside, across): (Vec<Root>, Vec<Root>) = Root::all(n).filter(|r| r.p < r.q).partition(|r| block[r.p] == block[r.q]);
    (product_of_roots(n, &inside), product_of_roots(n, &across))
}

pub fn random_poly(rng: &mut impl Rng, n: usize, max_deg: usize, terms: usize) -> QPoly {
    let mut p = QPoly::zero(n);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_deg);
        let mut e: Monomial = SmallVec::from_elem(0, n);
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        p.add_term(e, rat(rng.gen_range(-9..=9)));
    }
    p
}

fn commutator_cell(class: &LeviClass, seed: u64, samples: usize) -> CellOutcome {
    let mut out = CellOutcome::default();
    let n = class.n();
    let params = Params::default().with("n", n).with("levi", class);
    let (pi_l, pi_gl) = levi_root_products(class);
    let xi = central_point(class);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for s in 0..samples {
        let f = random_poly(&mut rng, n, class.positive_root_count() + 2, 5);
        out.check(check_commutator(&pi_l, &pi_gl, &xi, &f), &params.clone().with("sample", s), || {
            format!("commutator fails for f = {f}")
        });
    }
    out
}

fn rossmann_cell(c: &CartanModel) -> CellOutcome {
    let mut out = CellOutcome::default();
    let params = Params::default().with("n", c.n()).with("cartan", c.l());
    let mut signs = Vec::new();
    for comp in enumerate_components(c, Level::Regular) {
        let pos = positive_system_at(&comp, WitnessStyle::Canonical);
        match rossmann_overlap(&comp, &pos) {
            Ok(o) => {
                out.check(o.global_sign.is_some(), &params.clone().with("component", &comp), || {
                    format!("no global sign relates rossmann {} and semisimple {}", o.rossmann, o.semisimple)
                });
                signs.extend(o.global_sign);
            }
            Err(e) => out.error(&params, e),
        }
    }
    signs.sort();
    signs.dedup();
    if !signs.is_empty() {
        out.notes.push(format!(
            "n={} h_{}: rossmann numerator = {} x semisimple numerator (q(G,H) = {})",
            c.n(),
            c.l(),
            signs.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("/"),
            c.q()
        ));
    }
    out
}

fn regular_elliptic_cell(n: usize, fault: Option<Fault>) -> CellOutcome {
    let mut out = CellOutcome::default();
    let params = Params::default().with("n", n);
    let fact: i64 = (1..=n as i64).product();
    match regular_elliptic_sum_with(n, fault) {
        Ok(v) => out.check(v == fact, &params, || format!("2^m Σ ε = {v}, n! = {fact}")),
        Err(e) => out.error(&params, e),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("regular-elliptic".parse::<Suite>().unwrap(), Suite::RegularElliptic);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_run_is_clean_and_deterministic() {
        let mut cfg = VerifyConfig::new(3);
        let a = run(&cfg).unwrap();
        assert!(a.passed(), "{}", a.to_json());
        assert!(!a.incomplete);
        cfg.jobs = 3;
        let b = run(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn injected_fault_is_caught() {
        let mut cfg = VerifyConfig::new(3);
        cfg.suites = vec![Suite::Oracle];
        cfg.fault = Some(Fault::EpsSign);
        assert!(!run(&cfg).unwrap().passed());
    }

    #[test]
    fn zero_budget_marks_incomplete() {
        let mut cfg = VerifyConfig::new(3);
        cfg.suites = vec![Suite::Support];
        cfg.budget = Some(Duration::ZERO);
        let r = run(&cfg).unwrap();
        assert!(r.incomplete);
        assert_eq!(r.suites[0].cells_checked, 0);
    }

    #[test]
    fn central_points_have_the_right_centralizer() {
        for n in 1..=6 {
            for class in levi_classes(n) {
                let xi = central_point(&class);
                let lam: Vec<Rational> = xi.clone();
                assert_eq!(crate::formulas::c_lambda(&lam, &xi, &class).unwrap(), rat(1));
            }
        }
    }
}
