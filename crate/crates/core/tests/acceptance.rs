//! Acceptance criteria. Each criterion prints one PASS/FAIL line.
//!
//! Two criteria cannot be met by a faithful implementation (see the README,
//! "Known discrepancies"). They still run in full and print FAIL; the test
//! pins their exact failure sets so that any change in either direction is
//! noticed.

use std::collections::BTreeSet;
use std::process::Command;

use num_traits::{One, Signed, Zero};
use orbitfourier::cli::record::FormulaRecord;
use orbitfourier::cli::verify::{central_point, levi_root_products, random_poly};
use orbitfourier::formulas::{
    c_lambda, check_integrality_and_positivity, check_matching, counting_identity, nilpotent_ft_direct,
    regular_elliptic_sum, ComponentFormula, DirectPlan, EngineOptions, OraclePlan,
};
use orbitfourier::levi::{dual_partition, levi_classes, orbit_of_levi, LeviClass};
use orbitfourier::rootdata::{enumerate_components, make_cartan, CartanModel, Component, Level};
use orbitfourier::symalg::{check_commutator, frac, rat, QPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned tolerances.
const ORACLE_N_MAX: usize = 5;
const SWEEP_N_MAX: usize = 6;
const MATCHING_N_MAX: usize = 4;
const COUNTING_N_MAX: usize = 5;
const COMMUTATOR_N_MAX: usize = 5;
const COMMUTATOR_SAMPLES: usize = 20;
const NILRADICAL_SAMPLES: usize = 50;
const C_LAMBDA_N_MAX: usize = 4;
const C_LAMBDA_DIRECTIONS: usize = 3;
const C_LAMBDA_RATIO: (f64, f64) = (0.4, 0.6);
const C_LAMBDA_J_FROM: i32 = 8;
const C_LAMBDA_J_TO: i32 = 24;
const ROUND_TRIP_N_MAX: usize = 4;

/// Criteria that are reported as FAIL by design, with their pinned failure sets.
const KNOWN_FAILING: [usize; 2] = [1, 7];

struct Outcome {
    id: usize,
    name: &'static str,
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn print(&self) {
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{}]: {verdict} ({})", self.id, self.name, self.summary);
        for f in self.failures.iter().take(24) {
            println!("      {f}");
        }
        if self.failures.len() > 24 {
            println!("      ... {} more", self.failures.len() - 24);
        }
    }
}

fn class(v: &[usize]) -> LeviClass {
    LeviClass::new(v.to_vec()).unwrap()
}

fn x(n: usize, i: usize) -> QPoly {
    QPoly::var(n, i)
}

fn root(n: usize, p: usize, q: usize) -> QPoly {
    x(n, p - 1) - x(n, q - 1)
}

/// Everything that needs the per-component sweep, in one pass.
#[derive(Default)]
struct Sweep {
    oracle_cells: usize,
    oracle_diff: Vec<String>,
    oracle_diff_cells: BTreeSet<(usize, LeviClass, usize)>,
    integrality_cells: usize,
    integrality: Vec<String>,
    homogeneity_cells: usize,
    homogeneity: Vec<String>,
    support_cells: usize,
    support: Vec<String>,
}

fn sweep() -> Sweep {
    let mut s = Sweep::default();
    let opts = EngineOptions::default();
    for n in 1..=SWEEP_N_MAX {
        let m = n / 2;
        for cl in levi_classes(n) {
            let orbit = orbit_of_levi(&cl);
            let r_l = cl.positive_root_count();
            let r_g = n * (n - 1) / 2;
            let half_dim = (n * n - cl.blocks().iter().map(|q| q * q).sum::<usize>()) / 2;
            if r_g - r_l != half_dim || 2 * half_dim != orbit.dim {
                s.homogeneity.push(format!("n={n} {cl}: r(G)-r(L)={} but dim/2={}", r_g - r_l, orbit.dim / 2));
            }
            let capacity: usize = cl.blocks().iter().map(|q| q / 2).sum();
            for c in CartanModel::all(n).unwrap() {
                let direct = DirectPlan::new(&c, &cl).unwrap();
                let oracle = OraclePlan::new(&c, &cl, opts).unwrap();
                let expect_nonzero = m - c.l() <= capacity;
                for comp in enumerate_components(&c, Level::Regular) {
                    let d = direct.evaluate(&comp, &opts).unwrap();
                    let o = match oracle.evaluate(&comp) {
                        Ok(o) => o,
                        Err(e) => {
                            s.integrality.push(format!("n={n} {cl} h_{} {comp}: oracle error {e}", c.l()));
                            continue;
                        }
                    };
                    if n <= ORACLE_N_MAX {
                        s.oracle_cells += 1;
                        if d.numerator != o.numerator {
                            s.oracle_diff.push(format!(
                                "n={n} {cl} h_{} {comp}: direct {} | oracle {}",
                                c.l(),
                                d.numerator,
                                o.numerator
                            ));
                            s.oracle_diff_cells.insert((n, cl.clone(), c.l()));
                        }
                    }
                    for f in [&d, &o] {
                        s.integrality_cells += 1;
                        if !check_integrality_and_positivity(f) {
                            s.integrality.push(format!("n={n} {cl} h_{} {comp} {}: {}", c.l(), f.provenance.engine, f.numerator));
                        }
                        s.homogeneity_cells += 1;
                        if !f.is_zero() && (f.numerator.degree() != Some(r_l) || !f.numerator.is_homogeneous()) {
                            s.homogeneity.push(format!("n={n} {cl} h_{} {comp} {}: degree {:?}", c.l(), f.provenance.engine, f.numerator.degree()));
                        }
                        s.support_cells += 1;
                        if f.is_zero() == expect_nonzero {
                            s.support.push(format!(
                                "n={n} {cl} h_{} {comp} {}: zero={} but m-l <= Σfloor(q/2) is {expect_nonzero}",
                                c.l(),
                                f.provenance.engine,
                                f.is_zero()
                            ));
                        }
                    }
                }
            }
        }
    }
    s
}

fn criterion_1(s: &Sweep) -> Outcome {
    Outcome {
        id: 1,
        name: "oracle equivalence, n <= 5",
        summary: format!(
            "{} of {} cells differ, in {} (n, class, cartan) groups",
            s.oracle_diff.len(),
            s.oracle_cells,
            s.oracle_diff_cells.len()
        ),
        failures: s.oracle_diff.clone(),
    }
}

fn criterion_2() -> Outcome {
    let sum = |ps: Vec<QPoly>| ps.into_iter().fold(QPoly::zero(4), |a, b| &a + &b);
    let cases: Vec<(usize, Vec<usize>, usize, QPoly)> = vec![
        (2, vec![1, 1], 1, QPoly::constant(2, rat(2))),
        (3, vec![1, 1, 1], 1, QPoly::constant(3, rat(6))),
        (3, vec![2, 1], 0, root(3, 1, 2)),
        (4, vec![2, 2], 0, (&root(4, 1, 2) * &root(4, 3, 4)).scale(&rat(2))),
        (4, vec![2, 2], 1, &root(4, 1, 2) * &root(4, 3, 4)),
        (
            4,
            vec![2, 2],
            2,
            sum(vec![
                &root(4, 1, 2) * &root(4, 3, 4),
                &root(4, 1, 3) * &root(4, 2, 4),
                &root(4, 1, 4) * &root(4, 2, 3),
            ])
            .scale(&rat(2)),
        ),
    ];
    let mut failures = Vec::new();
    for (n, blocks, l, want) in &cases {
        let comp = Component::standard(make_cartan(*n, *l).unwrap());
        let f = nilpotent_ft_direct(&class(blocks), &comp).unwrap();
        // π is the product of the standard component's positive roots.
        if f.numerator != *want || f.denominator_roots() != f.positive_system.positives() {
            failures.push(format!("n={n} {blocks:?} h_{l}: got {}, want {want}", f.numerator));
        }
    }
    Outcome { id: 2, name: "hand-derived catalog", summary: format!("{} entries", cases.len()), failures }
}

fn criterion_3(s: &Sweep) -> Outcome {
    Outcome {
        id: 3,
        name: "integrality and positivity, n <= 6",
        summary: format!("{} formulas, both engines, all h' components", s.integrality_cells),
        failures: s.integrality.clone(),
    }
}

fn criterion_4(s: &Sweep) -> Outcome {
    Outcome {
        id: 4,
        name: "support, n <= 6",
        summary: format!("{} formulas checked against m - l <= Σ floor(q_i/2)", s.support_cells),
        failures: s.support.clone(),
    }
}

/// Exact rank by elimination over the rationals.
fn rank(mut a: Vec<Vec<Rational>>) -> usize {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &pivot;
                let row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Jordan type of a random element of the nilradical of the standard
/// parabolic with Levi blocks `cl`, from ranks of powers.
fn sampled_jordan_type(cl: &LeviClass, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = cl.n();
    let mut block = Vec::new();
    for (i, &q) in cl.blocks().iter().enumerate() {
        block.extend(std::iter::repeat(i).take(q));
    }
    let x: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if block[i] < block[j] { rat(rng.gen_range(-1_000_000..=1_000_000)) } else { Rational::zero() }).collect())
        .collect();
    let mut ranks = vec![n];
    let mut p = x.clone();
    while *ranks.last().unwrap() > 0 {
        ranks.push(rank(p.clone()));
        p = matmul(&p, &x);
    }
    // #blocks of size >= j is rank(X^{j-1}) - rank(X^j); transpose to sizes.
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    dual_partition(&at_least)
}

fn criterion_5(s: &Sweep) -> Outcome {
    let mut failures = s.homogeneity.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut samples = 0;
    for n in 1..=SWEEP_N_MAX {
        for cl in levi_classes(n) {
            let want = dual_partition(cl.blocks());
            let dim = n * n - dual_partition(&want).iter().map(|q| q * q).sum::<usize>();
            if orbit_of_levi(&cl).jordan_type != want || orbit_of_levi(&cl).dim != dim {
                failures.push(format!("n={n} {cl}: orbit label disagrees with the dual partition"));
            }
            for _ in 0..NILRADICAL_SAMPLES {
                samples += 1;
                let got = sampled_jordan_type(&cl, &mut rng);
                if got != want {
                    failures.push(format!("n={n} {cl}: sampled Jordan type {got:?}, dual partition {want:?}"));
                }
            }
        }
    }
    Outcome {
        id: 5,
        name: "homogeneity and dimension, n <= 6",
        summary: format!("{} formulas; {samples} nilradical samples", s.homogeneity_cells),
        failures,
    }
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=MATCHING_N_MAX {
        for l in 0..n / 2 {
            let upper_cartan = make_cartan(n, l + 1).unwrap();
            let (a, b) = make_cartan(n, l).unwrap().pairs()[0];
            for upper in enumerate_components(&upper_cartan, Level::Regular) {
                let ord = upper.real_order();
                let (ia, ib) = (ord.iter().position(|&r| r == a).unwrap(), ord.iter().position(|&r| r == b).unwrap());
                if ia.abs_diff(ib) != 1 {
                    continue;
                }
                for k in 0..=n / 2 {
                    checked += 1;
                    let m = check_matching(k, &upper).unwrap();
                    if !m.holds() {
                        failures.push(format!("n={n} k={k} {} | {}: {} relations fail", m.lower, m.upper, m.failures.len()));
                    }
                }
            }
        }
    }
    Outcome { id: 6, name: "matching conditions, n <= 4", summary: format!("{checked} wall crossings"), failures }
}

fn criterion_7() -> (Outcome, BTreeSet<(usize, LeviClass, usize, String)>) {
    let mut failures = Vec::new();
    let mut failing = BTreeSet::new();
    let mut quotient = Vec::new();
    let mut checked = 0;
    for n in 1..=COUNTING_N_MAX {
        for cl in levi_classes(n) {
            for l in 0..=n / 2 {
                for i in counting_identity(&cl, l).unwrap() {
                    checked += 1;
                    if !i.holds() {
                        failures.push(format!("n={n} {cl} h_{l} L'={}: lhs {} rhs {}", i.target, i.lhs, i.rhs));
                        failing.insert((n, cl.clone(), l, i.target.to_string()));
                    }
                    if i.quotient_form_holds {
                        quotient.push(format!("n={n} {cl} h_{l} L'={}", i.target));
                    }
                }
            }
        }
    }
    let summary = format!(
        "{} of {checked} instances fail; quotient form holds in {} instances{}",
        failures.len(),
        quotient.len(),
        if quotient.is_empty() { String::new() } else { format!(": {}", quotient.join("; ")) }
    );
    (Outcome { id: 7, name: "counting identity, n <= 5", summary, failures }, failing)
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=COMMUTATOR_N_MAX {
        for cl in levi_classes(n) {
            let (pi_l, pi_gl) = levi_root_products(&cl);
            let xi = central_point(&cl);
            for _ in 0..COMMUTATOR_SAMPLES {
                checked += 1;
                let f = random_poly(&mut rng, n, cl.positive_root_count() + 2, 6);
                if !check_commutator(&pi_l, &pi_gl, &xi, &f) {
                    failures.push(format!("n={n} {cl}: f = {f}"));
                }
            }
        }
    }
    Outcome { id: 8, name: "commutator lemma, n <= 5", summary: format!("{checked} random polynomials"), failures }
}

fn criterion_9() -> Outcome {
    let mut failures = Vec::new();
    let mut got = Vec::new();
    for n in [2usize, 4, 6] {
        let v = regular_elliptic_sum(n).unwrap();
        let fact: i64 = (1..=n as i64).product();
        got.push(format!("n={n}: {v}"));
        if v != fact {
            failures.push(format!("n={n}: 2^m Σ ε = {v}, n! = {fact}"));
        }
    }
    Outcome { id: 9, name: "regular elliptic cross-check", summary: got.join(", "), failures }
}

fn criterion_10() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut paths = 0;
    for n in 2..=C_LAMBDA_N_MAX {
        for cl in levi_classes(n).into_iter().filter(|c| c.blocks().len() > 1) {
            let xi = central_point(&cl);
            for _ in 0..C_LAMBDA_DIRECTIONS {
                paths += 1;
                let eta: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect();
                let mut prev: Option<Rational> = None;
                for j in 1..=C_LAMBDA_J_TO {
                    let h = frac(1, 1i64 << j);
                    let lambda: Vec<Rational> = xi.iter().zip(&eta).map(|(a, b)| a + &h * b).collect();
                    let dev = (c_lambda(&lambda, &xi, &cl).unwrap() - Rational::one()).abs();
                    // O(2^-j): bounded by a fixed multiple of h.
                    if dev > &h * rat(1000) {
                        failures.push(format!("n={n} {cl} η={eta:?} j={j}: |c-1| = {dev} not O(2^-j)"));
                    }
                    if j > C_LAMBDA_J_FROM {
                        let p = prev.clone().unwrap();
                        let ratio = if p.is_zero() {
                            f64::NAN
                        } else {
                            num_traits::ToPrimitive::to_f64(&(&dev / &p)).unwrap()
                        };
                        if !(C_LAMBDA_RATIO.0..=C_LAMBDA_RATIO.1).contains(&ratio) {
                            failures.push(format!("n={n} {cl} η={eta:?} j={j}: ratio {ratio}"));
                        }
                    }
                    prev = Some(dev);
                }
            }
        }
    }
    Outcome {
        id: 10,
        name: "c_λ -> 1, n <= 4",
        summary: format!("{paths} paths, ratio in [{}, {}] for j > {C_LAMBDA_J_FROM}", C_LAMBDA_RATIO.0, C_LAMBDA_RATIO.1),
        failures,
    }
}

fn cli(args: &[&str]) -> Vec<u8> {
    let o = Command::new(env!("CARGO_BIN_EXE_orbitfourier"))
        .args(args)
        .env_remove("ORBITFOURIER_CACHE")
        .output()
        .unwrap();
    o.stdout
}

fn criterion_11() -> Outcome {
    let mut failures = Vec::new();
    let runs: [&[&str]; 4] = [
        &["ft", "--n", "4", "--levi", "2,1,1", "--cartan", "1", "--engine", "both", "--format", "json"],
        &["ft", "--n", "5", "--levi", "3,2", "--cartan", "2", "--component", "real-order=5,1,3,2,4", "--format", "text"],
        &["list", "levis", "--n", "6"],
        &["verify", "--n-max", "4"],
    ];
    for args in runs {
        if cli(args) != cli(args) {
            failures.push(format!("{args:?}: two runs differ"));
        }
    }
    if cli(&["verify", "--n-max", "4", "--jobs", "1"]) != cli(&["verify", "--n-max", "4", "--jobs", "4"]) {
        failures.push("verify --jobs 1 and --jobs 4 differ".into());
    }
    let mut records = 0;
    let opts = EngineOptions::default();
    for n in 1..=ROUND_TRIP_N_MAX {
        for cl in levi_classes(n) {
            for c in CartanModel::all(n).unwrap() {
                let direct = DirectPlan::new(&c, &cl).unwrap();
                let oracle = OraclePlan::new(&c, &cl, opts).unwrap();
                for comp in enumerate_components(&c, Level::Regular) {
                    let fs: [ComponentFormula; 2] = [direct.evaluate(&comp, &opts).unwrap(), oracle.evaluate(&comp).unwrap()];
                    for f in fs {
                        records += 1;
                        let rec = FormulaRecord::from_formula(&f, None);
                        let json = rec.to_json();
                        let back = FormulaRecord::from_json(&json).unwrap();
                        if back.to_json() != json || back.to_formula().ok().as_ref() != Some(&f) {
                            failures.push(format!("round trip lost data for {cl} on {comp}"));
                        }
                    }
                }
            }
        }
    }
    Outcome {
        id: 11,
        name: "determinism and round trip",
        summary: format!("5 CLI comparisons, {records} JSON records"),
        failures,
    }
}

#[test]
fn acceptance() {
    let s = sweep();
    let (c7, counting_failures) = criterion_7();
    let outcomes = vec![
        criterion_1(&s),
        criterion_2(),
        criterion_3(&s),
        criterion_4(&s),
        criterion_5(&s),
        criterion_6(),
        c7,
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
    ];
    for o in &outcomes {
        o.print();
    }

    for o in outcomes.iter().filter(|o| !KNOWN_FAILING.contains(&o.id)) {
        assert!(o.failures.is_empty(), "criterion {} failed", o.id);
    }

    // Criterion 1: the Levi-sum coefficient |W(G,H)_L|/|W(L,H)| misses the
    // swaps of equal blocks that carry different numbers of complex pairs.
    // Through n = 5 that happens only here, and the oracle is exactly twice
    // the direct value.
    let expected: BTreeSet<_> = [(4, class(&[2, 2]), 1), (5, class(&[2, 2, 1]), 1)].into_iter().collect();
    assert_eq!(s.oracle_diff_cells, expected);
    assert_eq!(s.oracle_diff.len(), 16);
    for n in [4, 5] {
        let cl = if n == 4 { class(&[2, 2]) } else { class(&[2, 2, 1]) };
        let c = make_cartan(n, 1).unwrap();
        let d = DirectPlan::new(&c, &cl).unwrap();
        let o = OraclePlan::new(&c, &cl, EngineOptions::default()).unwrap();
        for comp in enumerate_components(&c, Level::Regular) {
            let dn = d.evaluate(&comp, &EngineOptions::default()).unwrap().numerator;
            assert_eq!(o.evaluate(&comp).unwrap().numerator, dn.scale(&rat(2)));
        }
    }

    // Criterion 7: the product form overcounts by exactly 2 on h_1 whenever
    // k = 0 < l = 1 and n >= 4.
    let expected: BTreeSet<(usize, LeviClass, usize, String)> = [
        (4, &[4][..], "{1,2,3,4}"),
        (4, &[2, 2], "{1,2}|{3,4}"),
        (5, &[5], "{1,2,3,4,5}"),
        (5, &[4, 1], "{1}|{2,3,4,5}"),
        (5, &[4, 1], "{1,2,3,4}|{5}"),
        (5, &[4, 1], "{1,3,4,5}|{2}"),
        (5, &[2, 2, 1], "{1}|{2,5}|{3,4}"),
        (5, &[2, 2, 1], "{1,2}|{3,4}|{5}"),
        (5, &[2, 2, 1], "{1,5}|{2}|{3,4}"),
    ]
    .into_iter()
    .map(|(n, b, t)| (n, class(b), 1, t.to_string()))
    .collect();
    assert_eq!(counting_failures, expected);
    for n in 1..=COUNTING_N_MAX {
        for cl in levi_classes(n) {
            for l in 0..=n / 2 {
                for i in counting_identity(&cl, l).unwrap() {
                    if !i.holds() {
                        assert_eq!(i.lhs, 2 * i.rhs);
                    }
                }
            }
        }
    }
}
