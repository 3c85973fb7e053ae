//! Formula engines.
//!
//! * [`semisimple_ft`]: the transform of a regular semisimple orbit through
//!   `h_k`, restricted to a component of `h_l'`, as an exponential sum over
//!   `W_{k,l}`.
//! * [`nilpotent_ft_direct`]: the nilpotent orbit transform as a weighted sum
//!   of `π_L` over the Levi subgroups of the class containing `H`.
//! * [`nilpotent_ft_oracle`]: the same transform obtained by applying
//!   `∂(π_L)` to the semisimple formula for `O_{tξ}` and letting `t → 0`.
//!
//! All transforms share the denominator `π = Π_{α∈Δ⁺} α` of the component's
//! positive system, so they are compared through their numerators.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::levi::{coefficient, enumerate_levis_containing, orbit_of_levi, supports, LeviClass, LeviEmbedding};
use crate::rootdata::{
    make_cartan, positive_system_at, CartanModel, Component, PositiveSystem, Root, RootKind, Sign, Witness,
    WitnessStyle,
};
use crate::symalg::{
    apply_diffop_exp, limit_t0, product_of_roots, rat, DiffOp, ExpSum, Gaussian, QPoly, Rational,
};
use crate::weyl::{compute_wkl, epsilon_imag, real_weyl, Perm, WklSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Direct,
    Oracle,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Direct => "direct",
            Engine::Oracle => "oracle",
        })
    }
}

/// Deliberate defects, used as negative controls for the verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Multiplies `ε_{k,l}(w)` by the determinant `ε(w)`.
    EpsSign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    pub witness: WitnessStyle,
    pub fault: Option<Fault>,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { witness: WitnessStyle::Canonical, fault: None }
    }
}

/// `coeff * Π roots`, roots positive for the formula's positive system.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactoredTerm {
    pub coeff: Rational,
    pub roots: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub engine: Engine,
    /// Power of `i` divided out of the oracle's limit.
    pub i_power: Option<u32>,
    /// Index `k` of the Cartan the oracle's semisimple orbits live on.
    pub source_cartan: Option<usize>,
    /// Real Weyl element carrying the component the oracle worked on to the
    /// requested one.
    pub transport: Option<Perm>,
}

impl Provenance {
    fn direct() -> Provenance {
        Provenance { engine: Engine::Direct, i_power: None, source_cartan: None, transport: None }
    }
}

/// A nilpotent orbit transform on one component: `numerator / π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentFormula {
    pub class: LeviClass,
    pub component: Component,
    pub positive_system: PositiveSystem,
    pub factored: Vec<FactoredTerm>,
    pub numerator: QPoly,
    pub provenance: Provenance,
}

impl ComponentFormula {
    pub fn n(&self) -> usize {
        self.component.cartan().n()
    }

    pub fn l(&self) -> usize {
        self.component.cartan().l()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn denominator_roots(&self) -> Vec<Root> {
        self.positive_system.positives()
    }

    pub fn denominator(&self) -> QPoly {
        product_of_roots(self.n(), &self.denominator_roots())
    }

    pub fn expand_factored(&self) -> QPoly {
        expand_terms(self.n(), &self.factored)
    }

    /// Factored and expanded numerators agree and every root used is positive.
    pub fn check_consistency(&self) -> Result<()> {
        if self.expand_factored() != self.numerator {
            return Err(Error::InvariantBreach(format!(
                "factored and expanded numerators differ for {} on {}",
                self.class, self.component
            )));
        }
        for t in &self.factored {
            if let Some(r) = t.roots.iter().find(|&&r| !self.positive_system.is_positive(r)) {
                return Err(Error::InvariantBreach(format!("factored root {r} is not positive")));
            }
        }
        Ok(())
    }

    /// Equality as functions on the component, allowing different positive
    /// systems: `N_1 / π_1 = N_2 / π_2`.
    pub fn same_function_as(&self, other: &ComponentFormula) -> bool {
        if self.component != other.component || self.class != other.class {
            return false;
        }
        let s = relative_sign(&self.positive_system, &other.positive_system);
        self.numerator.scale(&rat(s as i64)) == other.numerator
    }
}

/// `π_b / π_a` for two positive systems of the same rank.
pub fn relative_sign(a: &PositiveSystem, b: &PositiveSystem) -> i8 {
    let flips = a.positives().into_iter().filter(|&r| !b.is_positive(r)).count();
    if flips % 2 == 0 {
        1
    } else {
        -1
    }
}

fn expand_terms(n: usize, terms: &[FactoredTerm]) -> QPoly {
    let mut out = QPoly::zero(n);
    for t in terms {
        out += &product_of_roots::<Rational>(n, &t.roots).scale(&t.coeff);
    }
    out
}

pub fn nilpotent_ft_direct(class: &LeviClass, comp: &Component) -> Result<ComponentFormula> {
    nilpotent_ft_direct_with(class, comp, &EngineOptions::default())
}

pub fn nilpotent_ft_direct_with(class: &LeviClass, comp: &Component, opts: &EngineOptions) -> Result<ComponentFormula> {
    DirectPlan::new(comp.cartan(), class)?.evaluate(comp, opts)
}

/// The Levi subgroups of a class containing `h_l`, with their coefficients.
/// Neither depends on the component, so sweeps over components reuse one plan.
#[derive(Clone, Debug)]
pub struct DirectPlan {
    class: LeviClass,
    cartan: CartanModel,
    terms: Vec<(LeviEmbedding, u64)>,
}

impl DirectPlan {
    pub fn new(c: &CartanModel, class: &LeviClass) -> Result<DirectPlan> {
        if class.n() != c.n() {
            return Err(domain(format!("Levi class {class} is not a partition of {}", c.n())));
        }
        let terms = enumerate_levis_containing(c, class)
            .into_iter()
            .map(|emb| coefficient(c, &emb).map(|k| (emb, k)))
            .collect::<Result<_>>()?;
        Ok(DirectPlan { class: class.clone(), cartan: c.clone(), terms })
    }

    pub fn embeddings(&self) -> &[(LeviEmbedding, u64)] {
        &self.terms
    }

    pub fn evaluate(&self, comp: &Component, opts: &EngineOptions) -> Result<ComponentFormula> {
        if comp.cartan() != &self.cartan {
            return Err(domain(format!("component {comp} is not on {}", self.cartan)));
        }
        let pos = positive_system_at(comp, opts.witness);
        let mut factored: Vec<FactoredTerm> = self
            .terms
            .iter()
            .map(|(emb, k)| FactoredTerm { coeff: rat(*k as i64), roots: emb.positive_roots(&pos) })
            .collect();
        factored.sort_by(|a, b| a.roots.cmp(&b.roots));
        let numerator = expand_terms(self.cartan.n(), &factored);
        Ok(ComponentFormula {
            class: self.class.clone(),
            component: comp.clone(),
            positive_system: pos,
            factored,
            numerator,
            provenance: Provenance::direct(),
        })
    }
}

/// A component of the same Cartan on which the `h_k` pairs that are real on
/// `h_l` sit next to each other in the positive order, and the real Weyl
/// element `u` with `u . good = comp`.
fn good_component(comp: &Component, k: usize) -> Result<(Component, Perm)> {
    let c = comp.cartan();
    let n = c.n();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    for j in k..c.l() {
        partner[2 * j] = Some(2 * j + 1);
        partner[2 * j + 1] = Some(2 * j);
    }
    let mut good = Vec::with_capacity(comp.real_order().len());
    let mut seen = vec![false; n];
    for &r in comp.real_order() {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        good.push(r);
        if let Some(p) = partner[r] {
            seen[p] = true;
            good.push(p);
        }
    }
    let mut images: Vec<usize> = (0..n).collect();
    for (&g, &o) in good.iter().zip(comp.real_order()) {
        images[g] = o;
    }
    let u = Perm::from_images(images)?;
    Ok((Component::new(c.clone(), good, comp.pair_signs().to_vec())?, u))
}

/// The sign of each `w ∈ W_{k,l}`, with the optional injected fault.
fn signed_members(wkl: &WklSet, fault: Option<Fault>) -> Vec<(Perm, i8)> {
    wkl.members
        .iter()
        .map(|(w, e)| match fault {
            Some(Fault::EpsSign) => (w.clone(), e * w.sign()),
            None => (w.clone(), *e),
        })
        .collect()
}

pub fn nilpotent_ft_oracle(class: &LeviClass, comp: &Component) -> Result<ComponentFormula> {
    nilpotent_ft_oracle_with(class, comp, &EngineOptions::default())
}

pub fn nilpotent_ft_oracle_with(class: &LeviClass, comp: &Component, opts: &EngineOptions) -> Result<ComponentFormula> {
    OraclePlan::new(comp.cartan(), class, *opts)?.evaluate(comp)
}

/// The limit computed on a good component, before transport.
#[derive(Debug)]
struct OracleSource {
    numerator: QPoly,
    factored: Vec<(Vec<Root>, Rational)>,
    i_power: u32,
}

/// Oracle evaluation for one class on one Cartan. The pipeline runs once per
/// good component and every other component is reached by transport, so a
/// sweep over all components of `h_l` reuses most of the work.
#[derive(Debug)]
pub struct OraclePlan {
    class: LeviClass,
    cartan: CartanModel,
    opts: EngineOptions,
    k: usize,
    /// A Levi of the class containing `h_k`; `None` when `l < k`.
    source: Option<(CartanModel, LeviEmbedding)>,
    memo: RefCell<HashMap<Component, Rc<OracleSource>>>,
}

impl OraclePlan {
    pub fn new(c: &CartanModel, class: &LeviClass, opts: EngineOptions) -> Result<OraclePlan> {
        if class.n() != c.n() {
            return Err(domain(format!("Levi class {class} is not a partition of {}", c.n())));
        }
        let k = class.fundamental_cartan_index();
        let source = if c.l() < k {
            None
        } else {
            let hk = make_cartan(c.n(), k)?;
            let levi = enumerate_levis_containing(&hk, class)
                .into_iter()
                .next()
                .ok_or_else(|| Error::InvariantBreach(format!("{class} has no Levi containing h_{k}")))?;
            Some((hk, levi))
        };
        Ok(OraclePlan { class: class.clone(), cartan: c.clone(), opts, k, source, memo: RefCell::default() })
    }

    pub fn evaluate(&self, comp: &Component) -> Result<ComponentFormula> {
        if comp.cartan() != &self.cartan {
            return Err(domain(format!("component {comp} is not on {}", self.cartan)));
        }
        let n = self.cartan.n();
        let pos = positive_system_at(comp, self.opts.witness);
        let mut provenance =
            Provenance { engine: Engine::Oracle, i_power: None, source_cartan: Some(self.k), transport: None };
        let Some((hk, levi)) = &self.source else {
            return Ok(ComponentFormula {
                class: self.class.clone(),
                component: comp.clone(),
                positive_system: pos,
                factored: Vec::new(),
                numerator: QPoly::zero(n),
                provenance,
            });
        };
        let (good, u) = good_component(comp, self.k)?;
        let cached = self.memo.borrow().get(&good).cloned();
        let src = match cached {
            Some(src) => src,
            None => {
                let src = Rc::new(self.limit_on(hk, levi, &good)?);
                self.memo.borrow_mut().insert(good.clone(), src.clone());
                src
            }
        };
        provenance.i_power = Some(src.i_power);

        // Back to the requested component: N = s (u . N'), s = π / (u . π').
        let gpos = positive_system_at(&good, self.opts.witness);
        let s = if gpos.positives().into_iter().filter(|&a| !pos.is_positive(u.act_root(a))).count() % 2 == 0 {
            1
        } else {
            -1
        };
        let numerator = src.numerator.relabel(&u).scale(&rat(s));
        let mut moved: BTreeMap<Vec<Root>, Rational> = BTreeMap::new();
        for (roots, c) in &src.factored {
            let mut sign = s;
            let roots: Vec<Root> = roots
                .iter()
                .map(|&a| {
                    let (r, t) = pos.make_positive(u.act_root(a));
                    sign *= t as i64;
                    r
                })
                .sorted()
                .collect();
            *moved.entry(roots).or_insert_with(Rational::zero) += c * rat(sign);
        }
        if !u.is_identity() {
            provenance.transport = Some(u);
        }
        let f = ComponentFormula {
            class: self.class.clone(),
            component: comp.clone(),
            positive_system: pos,
            factored: moved
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(roots, coeff)| FactoredTerm { coeff, roots })
                .collect(),
            numerator,
            provenance,
        };
        f.check_consistency()?;
        Ok(f)
    }

    /// `(2^{l-k} / |W(L,H)|) lim_{t->0} ∂(π_L) Σ_{W_{k,l}} ε(w) e^{i<w tξ, X>}` on a good
    /// component, with the power of `i` that makes it rational and positive.
    fn limit_on(&self, hk: &CartanModel, levi: &LeviEmbedding, good: &Component) -> Result<OracleSource> {
        let hl = &self.cartan;
        let n = hl.n();
        let class = &self.class;
        let gpos = positive_system_at(good, self.opts.witness);
        let pi_l_roots = levi.positive_roots(&gpos);
        let pi_l: QPoly = product_of_roots(n, &pi_l_roots);
        let wkl = compute_wkl(hk, hl, &gpos, &gpos)?;
        let scale = Rational::new(BigInt::one() << (hl.l() - self.k), BigInt::one());

        let mut ss = ExpSum::zero(n);
        let mut factored: BTreeMap<Vec<Root>, Gaussian> = BTreeMap::new();
        let deg = pi_l_roots.len() as u32;
        for (w, e) in signed_members(&wkl, self.opts.fault) {
            let c = scale.clone() * rat(e as i64);
            ss.add_exp(Gaussian::from(c.clone()), w.clone());
            let mut sign = e as i64;
            let roots: Vec<Root> = pi_l_roots
                .iter()
                .map(|&a| {
                    let (r, s) = gpos.make_positive(w.act_root(a));
                    sign *= s as i64;
                    r
                })
                .sorted()
                .collect();
            let entry = factored.entry(roots).or_default();
            *entry = entry.clone() + Gaussian::from(scale.clone() * rat(sign)) * Gaussian::i_pow(deg);
        }
        let limit = limit_t0(&apply_diffop_exp(&DiffOp::new(pi_l), &ss)?);

        let wl = Rational::from_integer(BigInt::from(levi.real_weyl_order()));
        let factored: Vec<(Vec<Root>, Gaussian)> = factored.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let normalize = |c: &Gaussian, e: u32| -> Option<Rational> {
            (c.clone() * Gaussian::i_pow(e).recip()).to_rational().map(|r| r / &wl)
        };
        let e = (0..4u32)
            .find(|&e| factored.iter().all(|(_, c)| normalize(c, e).is_some_and(|r| r.is_positive())))
            .ok_or_else(|| {
                Error::InvariantBreach(format!("no power of i makes the limit rational and positive for {class} on {good}"))
            })?;
        let numerator = limit
            .scale(&Gaussian::i_pow(e).recip())
            .to_rational()
            .ok_or_else(|| Error::InvariantBreach(format!("non-rational oracle numerator for {class} on {good}")))?
            .scale(&(Rational::one() / &wl));
        let factored = factored
            .iter()
            .map(|(roots, c)| (roots.clone(), normalize(c, e).expect("checked above")))
            .collect();
        Ok(OracleSource { numerator, factored, i_power: e })
    }
}

/// Integer expanded coefficients and positive integer factored coefficients.
pub fn check_integrality_and_positivity(f: &ComponentFormula) -> bool {
    f.numerator.has_integer_coefficients()
        && f.factored.iter().all(|t| t.coeff.is_integer() && t.coeff.is_positive())
}

/// Degree of the numerator is `r(L)` and `r(G) - r(L)` is half the orbit
/// dimension. Zero formulas pass.
pub fn check_homogeneity(f: &ComponentFormula) -> bool {
    if f.is_zero() {
        return true;
    }
    let rl = f.class.positive_root_count();
    let rg = f.component.cartan().r();
    f.numerator.is_homogeneous()
        && f.numerator.degree() == Some(rl)
        && 2 * (rg - rl) == orbit_of_levi(&f.class).dim
}

/// Cartan indices `l` on which the transform of `O_L` is nonzero.
pub fn support_set(n: usize, class: &LeviClass) -> Result<Vec<usize>> {
    Ok(CartanModel::all(n)?.into_iter().filter(|c| supports(c, class)).map(|c| c.l()).collect())
}

/// A semisimple orbit transform `numerator / π` with an exponential-sum
/// numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleFormula {
    pub k: usize,
    pub component: Component,
    pub positive_system: PositiveSystem,
    pub numerator: ExpSum,
}

impl SemisimpleFormula {
    /// Coefficient `a_w` of `e^{i<wλ,X>}`.
    pub fn coefficient(&self, w: &Perm) -> Rational {
        self.numerator
            .exp_coefficient(w)
            .ok()
            .and_then(|g| g.to_rational())
            .expect("semisimple numerators are real pure exponential sums")
    }
}

/// A parameter `λ ∈ h_k*`, given by its complexified coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimpleParam {
    pub k: usize,
    pub lambda: Witness,
}

impl SemisimpleParam {
    /// Regularity plus the sign conditions: `<λ, iα∨> < 0` for positive
    /// imaginary `α` and `<λ, β∨> < 0` for positive real `β` of `h_k`.
    pub fn satisfies_conditions(&self, hk: &CartanModel, pos: &PositiveSystem) -> bool {
        let n = hk.n();
        if self.lambda.0.len() != n {
            return false;
        }
        let regular = Root::all(n).all(|r| {
            let (re, im) = self.lambda.eval(r);
            !(re.is_zero() && im.is_zero())
        });
        regular
            && Root::all(n).filter(|&r| pos.is_positive(r)).all(|r| {
                let (re, im) = self.lambda.eval(r);
                match hk.classify(r) {
                    // i(re + i im) = -im + i re
                    RootKind::Imaginary => re.is_zero() && (-im).is_negative(),
                    RootKind::Real => im.is_zero() && re.is_negative(),
                    RootKind::Complex => true,
                }
            })
    }
}

/// `2^{l-k} Σ_{w ∈ W_{k,l}} ε_{k,l}(w) e^{i<wλ,X>}`; zero when `l < k`.
/// One positive system serves both Cartans.
pub fn semisimple_ft(k: usize, comp: &Component, pos: &PositiveSystem) -> Result<SemisimpleFormula> {
    semisimple_ft_with(k, comp, pos, None)
}

pub fn semisimple_ft_with(k: usize, comp: &Component, pos: &PositiveSystem, fault: Option<Fault>) -> Result<SemisimpleFormula> {
    let hl = comp.cartan();
    let n = hl.n();
    let hk = make_cartan(n, k)?;
    let mut numerator = ExpSum::zero(n);
    if hl.l() >= k {
        let scale = Rational::new(BigInt::one() << (hl.l() - k), BigInt::one());
        for (w, e) in signed_members(&compute_wkl(&hk, hl, pos, pos)?, fault) {
            numerator.add_exp(Gaussian::from(scale.clone() * rat(e as i64)), w);
        }
    }
    Ok(SemisimpleFormula { k, component: comp.clone(), positive_system: pos.clone(), numerator })
}

/// `(-1)^{q(G,H)} Σ_{w ∈ W(G,H)} ε_I(w) e^{i<wλ,X>}` on a component of `h_l`,
/// with `λ ∈ h_l*` positive in the opposite convention to
/// [`semisimple_ft`].
pub fn rossmann_ft(comp: &Component, pos: &PositiveSystem) -> Result<ExpSum> {
    let c = comp.cartan();
    let sign = if c.q() % 2 == 0 { 1 } else { -1 };
    let mut out = ExpSum::zero(c.n());
    for w in real_weyl(c) {
        let e = epsilon_imag(c, pos, &w)
            .ok_or_else(|| Error::InvariantBreach(format!("{w} does not normalize the imaginary roots")))?;
        out.add_exp(Gaussian::from(rat((sign * e) as i64)), w);
    }
    Ok(out)
}

/// The Rossmann formula against the `k = l` semisimple formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RossmannOverlap {
    pub rossmann: ExpSum,
    pub semisimple: ExpSum,
    /// `Some(s)` when `rossmann = s * semisimple`.
    pub global_sign: Option<i8>,
}

pub fn rossmann_overlap(comp: &Component, pos: &PositiveSystem) -> Result<RossmannOverlap> {
    let rossmann = rossmann_ft(comp, pos)?;
    let semisimple = semisimple_ft(comp.cartan().l(), comp, pos)?.numerator;
    let global_sign = [1i8, -1]
        .into_iter()
        .find(|&s| semisimple.scale(&Gaussian::from(rat(s as i64))) == rossmann);
    Ok(RossmannOverlap { rossmann, semisimple, global_sign })
}

/// Outcome of the two-term matching relations across one Cayley wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingOutcome {
    pub k: usize,
    pub lower: Component,
    pub upper: Component,
    /// Elements `w` at which the relation fails.
    pub failures: Vec<Perm>,
}

impl MatchingOutcome {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The component of `h_l''` whose closure meets the wall of `upper ⊂ h_{l+1}''`
/// obtained by merging the two coordinates created by the Cayley transform.
pub fn wall_component(upper: &Component) -> Result<Component> {
    let c2 = upper.cartan();
    if c2.l() == 0 {
        return Err(domain("the fundamental Cartan has no Cayley predecessor"));
    }
    let c1 = make_cartan(c2.n(), c2.l() - 1)?;
    let (a, b) = c1.pairs()[0];
    let order = upper.real_order();
    let ia = order.iter().position(|&x| x == a).expect("a is real on h_{l+1}");
    let ib = order.iter().position(|&x| x == b).expect("b is real on h_{l+1}");
    if ia.abs_diff(ib) != 1 {
        return Err(domain(format!(
            "component {upper} does not meet the wall x{} = x{}",
            a + 1,
            b + 1
        )));
    }
    let real_order = order.iter().copied().filter(|&x| x != a && x != b).collect();
    let mut signs = vec![if ia < ib { Sign::Plus } else { Sign::Minus }];
    signs.extend_from_slice(upper.pair_signs());
    Component::new(c1, real_order, signs)
}

/// `ε(w) a_w + ε(sw) a_{sw} = ε(w) b_w + ε(sw) b_{sw}` for all `w ∈ S_n`.
pub fn matching_failures(
    n: usize,
    s: &Perm,
    a: impl Fn(&Perm) -> Rational,
    b: impl Fn(&Perm) -> Rational,
) -> Vec<Perm> {
    crate::weyl::all_perms(n)
        .filter(|w| {
            let sw = s.compose(w);
            let (e, es) = (rat(w.sign() as i64), rat(sw.sign() as i64));
            let lhs = &e * a(w) + &es * a(&sw);
            let rhs = &e * b(w) + &es * b(&sw);
            lhs != rhs
        })
        .collect()
}

/// Checks the matching conditions between `upper ⊂ h_{l+1}` and the
/// component of `h_l` across its Cayley wall, for orbits through `h_k`.
/// Both semisimple formulas use the positive system of `upper`.
pub fn check_matching(k: usize, upper: &Component) -> Result<MatchingOutcome> {
    check_matching_with(k, upper, None)
}

pub fn check_matching_with(k: usize, upper: &Component, fault: Option<Fault>) -> Result<MatchingOutcome> {
    let lower = wall_component(upper)?;
    let n = upper.cartan().n();
    let pos = positive_system_at(upper, WitnessStyle::Canonical);
    pos.check_invariants(&lower)?;
    let fa = semisimple_ft_with(k, &lower, &pos, fault)?;
    let fb = semisimple_ft_with(k, upper, &pos, fault)?;
    let (a, b) = lower.cartan().pairs()[0];
    let s = Perm::transposition(n, a, b);
    let failures = matching_failures(n, &s, |w| fa.coefficient(w), |w| fb.coefficient(w));
    Ok(MatchingOutcome { k, lower, upper: upper.clone(), failures })
}

/// `Π_{α ∈ Δ⁺ \ Δ⁺_L} <λ, α∨> / Π_{α ∈ Δ⁺ \ Δ⁺_L} <ξ, α∨>`, where `L` is the
/// centralizer of `ξ`, required to have class `class`.
pub fn c_lambda(lambda: &[Rational], xi: &[Rational], class: &LeviClass) -> Result<Rational> {
    let n = xi.len();
    if lambda.len() != n || class.n() != n {
        return Err(domain("λ, ξ and the Levi class must live in one gl(n)"));
    }
    let blocks: Vec<usize> = xi
        .iter()
        .sorted()
        .dedup_with_count()
        .map(|(count, _)| count)
        .collect();
    if LeviClass::new(blocks)? != *class {
        return Err(domain(format!("the centralizer of ξ is not of class {class}")));
    }
    let mut num = Rational::one();
    let mut den = Rational::one();
    for (p, q) in (0..n).tuple_combinations() {
        if xi[p] != xi[q] {
            num *= &lambda[p] - &lambda[q];
            den *= &xi[p] - &xi[q];
        }
    }
    Ok(num / den)
}

/// One instance of `2^{l-k} #{w ∈ W_{k,l} : wL = L'}` against `|W(G,H_l)_{L'}|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingInstance {
    pub class: LeviClass,
    pub l: usize,
    pub target: LeviEmbedding,
    pub lhs: u64,
    pub rhs: u64,
    /// Whether `2^{l-k} / #{...} = |W(G,H_l)_{L'}|` holds instead.
    pub quotient_form_holds: bool,
}

impl CountingInstance {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// All counting instances for `class` on `h_l`, using the positive system of
/// the standard component `C_l(e)` for both Cartans.
pub fn counting_identity(class: &LeviClass, l: usize) -> Result<Vec<CountingInstance>> {
    let n = class.n();
    let k = class.fundamental_cartan_index();
    if l < k {
        return Ok(Vec::new());
    }
    let hl = make_cartan(n, l)?;
    let hk = make_cartan(n, k)?;
    let pos = positive_system_at(&Component::standard(hl.clone()), WitnessStyle::Canonical);
    let wkl = compute_wkl(&hk, &hl, &pos, &pos)?;
    let source = enumerate_levis_containing(&hk, class)
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvariantBreach(format!("{class} has no Levi containing h_{k}")))?;
    let pow = 1u64 << (l - k);
    let mut out = Vec::new();
    for target in enumerate_levis_containing(&hl, class) {
        let want = target.set_partition();
        let count = wkl
            .members
            .iter()
            .filter(|(w, _)| {
                let img: Vec<Vec<usize>> = source.set_partition().iter().map(|b| w.act_set(b)).sorted().collect();
                img == want
            })
            .count() as u64;
        let rhs = crate::weyl::stabilizer_of_levi(&hl, &target)?.len() as u64;
        let quotient_form_holds = count > 0 && pow % count == 0 && pow / count == rhs;
        out.push(CountingInstance { class: class.clone(), l, target, lhs: pow * count, rhs, quotient_form_holds });
    }
    Ok(out)
}

/// `2^m Σ_{w ∈ W_{0,m}} ε_{0,m}(w)` on the split Cartan, with the positive
/// system of its standard component.
pub fn regular_elliptic_sum(n: usize) -> Result<i64> {
    regular_elliptic_sum_with(n, None)
}

pub fn regular_elliptic_sum_with(n: usize, fault: Option<Fault>) -> Result<i64> {
    let m = n / 2;
    let h0 = make_cartan(n, 0)?;
    let hm = make_cartan(n, m)?;
    let pos = positive_system_at(&Component::standard(hm.clone()), WitnessStyle::Canonical);
    let sum: i64 = signed_members(&compute_wkl(&h0, &hm, &pos, &pos)?, fault).iter().map(|(_, e)| *e as i64).sum();
    Ok((1i64 << m) * sum)
}
