//! Coordinate model of the Cartan subalgebras `h_0, ..., h_m` of `gl(n, R)`.
//!
//! `h_l` has `m - l` complex-conjugate coordinate pairs and `2l + δ` real
//! coordinates, where `n = 2m + δ`. Pair `j` (for `j = l..m`) occupies
//! coordinates `(2j, 2j+1)`; the real slots are `0..2l` plus `n-1` when `n` is
//! odd. Cayley transforms convert the lowest remaining pair into two real
//! slots and identify coordinates by the identity map. Any consistent choice
//! would do; this one keeps every `h_l` a prefix-extension of `h_{l-1}`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// The root `e_p - e_q` (0-based coordinates).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub p: usize,
    pub q: usize,
}

impl Root {
    pub fn new(p: usize, q: usize) -> Root {
        assert_ne!(p, q, "e_p - e_p is not a root");
        Root { p, q }
    }

    /// `e_p - e_q` with 1-based indices, as written on paper.
    pub fn e(p: usize, q: usize) -> Root {
        assert!(p >= 1 && q >= 1, "1-based indices start at 1");
        Root::new(p - 1, q - 1)
    }


    /// All `n(n-1)` roots, ordered lexicographically by `(p, q)`.
    pub fn all(n: usize) -> impl Iterator<Item = Root> {
        (0..n)
            .cartesian_product(0..n)
            .filter(|(p, q)| p != q)
            .map(|(p, q)| Root { p, q })
    }

    pub fn check(self, n: usize) -> Result<Root> {
        if self.p >= n || self.q >= n || self.p == self.q {
            return Err(domain(format!("{self} is not a root of gl({n})")));
        }
        Ok(self)
    }
}

impl std::ops::Neg for Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root { p: self.q, q: self.p }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.p + 1, self.q + 1)
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.p + 1, self.q + 1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [p, q] = <[usize; 2]>::deserialize(d)?;
        if p == 0 || q == 0 || p == q {
            return Err(serde::de::Error::custom(format!("bad root [{p},{q}]")));
        }
        Ok(Root::e(p, q))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Imaginary,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanModel {
    n: usize,
    l: usize,
    pairs: Vec<(usize, usize)>,
    reals: Vec<usize>,
    /// `slot[i]` is `Some(j)` when coordinate `i` belongs to pair `j`.
    slot: Vec<Option<usize>>,
}

pub fn make_cartan(n: usize, l: usize) -> Result<CartanModel> {
    CartanModel::new(n, l)
}

impl CartanModel {
    pub fn new(n: usize, l: usize) -> Result<CartanModel> {
        if n == 0 {
            return Err(domain("n must be positive"));
        }
        let m = n / 2;
        if l > m {
            return Err(domain(format!("Cartan index {l} out of range 0..={m} for n = {n}")));
        }
        let pairs: Vec<_> = (l..m).map(|j| (2 * j, 2 * j + 1)).collect();
        let mut reals: Vec<_> = (0..2 * l).collect();
        if n % 2 == 1 {
            reals.push(n - 1);
        }
        let mut slot = vec![None; n];
        for (j, &(a, b)) in pairs.iter().enumerate() {
            slot[a] = Some(j);
            slot[b] = Some(j);
        }
        Ok(CartanModel { n, l, pairs, reals, slot })
    }

    /// All Cartans `h_0 .. h_m` of `gl(n)`.
    pub fn all(n: usize) -> Result<Vec<CartanModel>> {
        (0..=n / 2).map(|l| CartanModel::new(n, l)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn l(&self) -> usize {
        self.l
    }
    pub fn m(&self) -> usize {
        self.n / 2
    }
    pub fn delta(&self) -> usize {
        self.n % 2
    }
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
    pub fn reals(&self) -> &[usize] {
        &self.reals
    }
    pub fn is_split(&self) -> bool {
        self.pairs.is_empty()
    }
    pub fn is_fundamental(&self) -> bool {
        self.l == 0
    }

    /// Number of positive imaginary roots, all noncompact for `GL(n, R)`.
    pub fn q(&self) -> usize {
        self.m() - self.l
    }

    /// Number of positive roots of `gl(n)`.
    pub fn r(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn pair_of(&self, coord: usize) -> Option<usize> {
        self.slot[coord]
    }

    pub fn is_real_slot(&self, coord: usize) -> bool {
        self.slot[coord].is_none()
    }

    /// The coordinate swapped with `coord` by complex conjugation.
    pub fn conj_coord(&self, coord: usize) -> usize {
        match self.slot[coord] {
            Some(j) => {
                let (a, b) = self.pairs[j];
                if coord == a {
                    b
                } else {
                    a
                }
            }
            None => coord,
        }
    }

    pub fn classify(&self, r: Root) -> RootKind {
        match (self.slot[r.p], self.slot[r.q]) {
            (None, None) => RootKind::Real,
            (Some(a), Some(b)) if a == b => RootKind::Imaginary,
            _ => RootKind::Complex,
        }
    }

    pub fn conjugate(&self, r: Root) -> Root {
        Root::new(self.conj_coord(r.p), self.conj_coord(r.q))
    }

    pub fn roots_of_kind(&self, kind: RootKind) -> impl Iterator<Item = Root> + '_ {
        Root::all(self.n).filter(move |&r| self.classify(r) == kind)
    }

    /// `h_{l+1}`, together with the two coordinates that just became real.
    pub fn cayley_neighbor(&self) -> Result<(CartanModel, (usize, usize))> {
        if self.l >= self.m() {
            return Err(domain(format!(
                "h_{} of gl({}) is split and has no Cayley neighbor",
                self.l, self.n
            )));
        }
        Ok((CartanModel::new(self.n, self.l + 1)?, self.pairs[0]))
    }

    /// Coordinates `0..n` grouped into atoms: each pair (weight 2), then each
    /// real slot (weight 1).
    pub fn atoms(&self) -> Vec<Vec<usize>> {
        self.pairs
            .iter()
            .map(|&(a, b)| vec![a, b])
            .chain(self.reals.iter().map(|&r| vec![r]))
            .collect()
    }
}

impl fmt::Display for CartanModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h_{} of gl({}): pairs [", self.l, self.n)?;
        let pairs = self.pairs.iter().map(|(a, b)| format!("({},{})", a + 1, b + 1));
        write!(f, "{}", pairs.format(","))?;
        write!(f, "], reals [{}]", self.reals.iter().map(|r| r + 1).format(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A connected component of the regular set of a Cartan subalgebra.
///
/// `real_order` lists the real slots from largest to smallest value on the
/// component. `pair_signs[j]` is the sign of the imaginary part carried by
/// the first coordinate of pair `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    cartan: CartanModel,
    real_order: Vec<usize>,
    pair_signs: Vec<Sign>,
}

/// `h''` components are cut out by the real roots alone; `h'` components
/// also see the walls of the imaginary roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    RealRegular,
    Regular,
}

impl Component {
    pub fn new(cartan: CartanModel, real_order: Vec<usize>, pair_signs: Vec<Sign>) -> Result<Component> {
        let sorted: Vec<_> = real_order.iter().copied().sorted().collect();
        if sorted != cartan.reals() {
            return Err(domain(format!(
                "real order {:?} is not a permutation of the real slots {:?}",
                real_order.iter().map(|r| r + 1).collect_vec(),
                cartan.reals().iter().map(|r| r + 1).collect_vec()
            )));
        }
        if pair_signs.len() != cartan.pairs().len() {
            return Err(domain(format!(
                "expected {} pair signs, got {}",
                cartan.pairs().len(),
                pair_signs.len()
            )));
        }
        Ok(Component { cartan, real_order, pair_signs })
    }

    /// `C_l(e)`: real slots in increasing index order take decreasing values,
    /// every pair sign `+`.
    pub fn standard(cartan: CartanModel) -> Component {
        let real_order = cartan.reals().to_vec();
        let pair_signs = vec![Sign::Plus; cartan.pairs().len()];
        Component { cartan, real_order, pair_signs }
    }

    pub fn cartan(&self) -> &CartanModel {
        &self.cartan
    }
    pub fn real_order(&self) -> &[usize] {
        &self.real_order
    }
    pub fn pair_signs(&self) -> &[Sign] {
        &self.pair_signs
    }

    pub fn with_pair_signs(&self, pair_signs: Vec<Sign>) -> Result<Component> {
        Component::new(self.cartan.clone(), self.real_order.clone(), pair_signs)
    }

    /// Deterministic rational witness point: `(Re, Im)` for every coordinate.
    pub fn witness(&self, style: WitnessStyle) -> Witness {
        let n = self.cartan.n();
        let zero = BigRational::zero();
        let mut pt = vec![(zero.clone(), zero); n];
        let nr = self.real_order.len() as i64;
        for (i, &r) in self.real_order.iter().enumerate() {
            pt[r].0 = int(2 * (nr - i as i64));
        }
        for (j, (&(a, b), s)) in self.cartan.pairs().iter().zip(&self.pair_signs).enumerate() {
            let re = match style {
                WitnessStyle::Canonical => BigRational::new(BigInt::one(), BigInt::one() << (j + 1)),
                // Interleave pairs above and below the real slots.
                WitnessStyle::Alternate if j % 2 == 0 => int(2 * nr + 1 + j as i64),
                WitnessStyle::Alternate => int(-1 - j as i64),
            };
            let im = int(s.to_i8() as i64);
            pt[a] = (re.clone(), im.clone());
            pt[b] = (re, -im);
        }
        let w = Witness(pt);
        assert!(w.is_generic(&self.cartan), "witness for {self} is not generic");
        w
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "real-order={} pair-signs={}",
            self.real_order.iter().map(|r| r + 1).format(","),
            self.pair_signs.iter().format(",")
        )
    }
}

pub fn enumerate_components(c: &CartanModel, level: Level) -> Vec<Component> {
    let orders = c.reals().iter().copied().permutations(c.reals().len());
    let signs: Vec<Vec<Sign>> = match level {
        Level::RealRegular => vec![vec![Sign::Plus; c.pairs().len()]],
        Level::Regular => (0..c.pairs().len())
            .map(|_| [Sign::Plus, Sign::Minus])
            .multi_cartesian_product()
            .map(|v| v.to_vec())
            .collect(),
    };
    // multi_cartesian_product of zero factors yields nothing; keep the empty pattern.
    let signs = if signs.is_empty() { vec![vec![]] } else { signs };
    orders
        .cartesian_product(signs)
        .map(|(order, s)| Component { cartan: c.clone(), real_order: order, pair_signs: s })
        .collect()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessStyle {
    Canonical,
    Alternate,
}

/// A point of the complexified Cartan, given as `(Re, Im)` per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness(pub Vec<(BigRational, BigRational)>);

impl Witness {
    /// `(Re alpha(Y), Im alpha(Y))`.
    pub fn eval(&self, r: Root) -> (BigRational, BigRational) {
        let (a, b) = (&self.0[r.p], &self.0[r.q]);
        (&a.0 - &b.0, &a.1 - &b.1)
    }

    fn is_generic(&self, c: &CartanModel) -> bool {
        Root::all(c.n()).all(|r| {
            let (re, im) = self.eval(r);
            match c.classify(r) {
                RootKind::Imaginary => re.is_zero() && !im.is_zero(),
                RootKind::Real => !re.is_zero() && im.is_zero(),
                RootKind::Complex => !re.is_zero(),
            }
        })
    }

    fn lex_positive(&self, r: Root) -> bool {
        let (re, im) = self.eval(r);
        match re.cmp(&BigRational::zero()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => im.is_positive(),
        }
    }
}

/// A positive system of the type `A_{n-1}` root system.
///
/// Every positive system of type A is the set of `e_p - e_q` with `p` before
/// `q` in some total order of the coordinates, so that order is what we store.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositiveSystem {
    /// Coordinates from largest to smallest.
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl PositiveSystem {
    pub fn from_order(order: Vec<usize>) -> Result<PositiveSystem> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (i, &c) in order.iter().enumerate() {
            if c >= n || rank[c] != usize::MAX {
                return Err(domain(format!("{order:?} is not a permutation")));
            }
            rank[c] = i;
        }
        Ok(PositiveSystem { order, rank })
    }

    /// Builds the system from an explicit set of positive roots, checking that
    /// it is one.
    pub fn from_positives(n: usize, positives: &BTreeSet<Root>) -> Result<PositiveSystem> {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| std::cmp::Reverse((0..n).filter(|&q| positives.contains(&Root { p, q })).count()));
        let ps = PositiveSystem::from_order(order)?;
        if ps.positives().into_iter().collect::<BTreeSet<_>>() != *positives {
            return Err(Error::InvariantBreach("root set is not a positive system".into()));
        }
        Ok(ps)
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_positive(&self, r: Root) -> bool {
        self.rank[r.p] < self.rank[r.q]
    }

    /// `r` or `-r`, whichever is positive, and the sign relating them.
    pub fn make_positive(&self, r: Root) -> (Root, i8) {
        if self.is_positive(r) {
            (r, 1)
        } else {
            (-r, -1)
        }
    }

    /// Positive roots in `(p, q)` lexicographic order.
    pub fn positives(&self) -> Vec<Root> {
        Root::all(self.n()).filter(|&r| self.is_positive(r)).collect()
    }

    pub fn is_additively_closed(&self) -> bool {
        let n = self.n();
        for (p, q, r) in (0..n).tuple_combinations::<(_, _, _)>() {
            for (a, b, c) in [(p, q, r), (p, r, q), (q, p, r), (q, r, p), (r, p, q), (r, q, p)] {
                if self.is_positive(Root::new(a, b))
                    && self.is_positive(Root::new(b, c))
                    && !self.is_positive(Root::new(a, c))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Every positive real root is positive on the component.
    pub fn satisfies_real_condition(&self, comp: &Component) -> bool {
        let order = comp.real_order();
        order
            .iter()
            .enumerate()
            .all(|(i, &a)| order[i + 1..].iter().all(|&b| self.is_positive(Root::new(a, b))))
    }

    /// Complex `alpha` is positive exactly when its conjugate is.
    pub fn respects_conjugation(&self, c: &CartanModel) -> bool {
        c.roots_of_kind(RootKind::Complex)
            .all(|r| self.is_positive(r) == self.is_positive(c.conjugate(r)))
    }

    /// The full list of positive-system axioms for `comp`.
    pub fn check_invariants(&self, comp: &Component) -> Result<()> {
        let n = comp.cartan().n();
        if self.n() != n {
            return Err(Error::InvariantBreach(format!("positive system of rank {} on gl({n})", self.n())));
        }
        for r in Root::all(n) {
            if self.is_positive(r) == self.is_positive(-r) {
                return Err(Error::InvariantBreach(format!("exactly one of ±{r} must be positive")));
            }
        }
        if !self.is_additively_closed() {
            return Err(Error::InvariantBreach("positive system not additively closed".into()));
        }
        if !self.satisfies_real_condition(comp) {
            return Err(Error::InvariantBreach(format!("real root negative on component {comp}")));
        }
        if !self.respects_conjugation(comp.cartan()) {
            return Err(Error::InvariantBreach("positivity of complex roots not conjugation stable".into()));
        }
        Ok(())
    }
}

pub fn canonical_positive_system(comp: &Component) -> PositiveSystem {
    positive_system_at(comp, WitnessStyle::Canonical)
}

pub fn positive_system_at(comp: &Component, style: WitnessStyle) -> PositiveSystem {
    let n = comp.cartan().n();
    let w = comp.witness(style);
    let positives: BTreeSet<Root> = Root::all(n).filter(|&r| w.lex_positive(r)).collect();
    let ps = PositiveSystem::from_positives(n, &positives)
        .expect("lexicographic order at a generic point is a positive system");
    debug_assert!(ps.check_invariants(comp).is_ok());
    ps
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_based(v: &[usize]) -> Vec<usize> {
        v.iter().map(|x| x + 1).collect()
    }

    #[test]
    fn cartan_layouts() {
        let c = make_cartan(4, 1).unwrap();
        assert_eq!(c.pairs(), &[(2, 3)]);
        assert_eq!(one_based(c.reals()), vec![1, 2]);
        let c = make_cartan(3, 0).unwrap();
        assert_eq!(c.pairs(), &[(0, 1)]);
        assert_eq!(one_based(c.reals()), vec![3]);
        let c = make_cartan(5, 2).unwrap();
        assert!(c.pairs().is_empty());
        assert_eq!(one_based(c.reals()), vec![1, 2, 3, 4, 5]);
        assert!(make_cartan(4, 3).is_err());
        assert!(make_cartan(0, 0).is_err());
    }

    #[test]
    fn classification_examples() {
        let h1 = make_cartan(4, 1).unwrap();
        assert_eq!(h1.classify(Root::e(3, 4)), RootKind::Imaginary);
        assert_eq!(h1.classify(Root::e(1, 2)), RootKind::Real);
        assert_eq!(make_cartan(3, 0).unwrap().classify(Root::e(1, 3)), RootKind::Complex);
    }

    #[test]
    fn conjugation_examples() {
        let h0 = make_cartan(4, 0).unwrap();
        assert_eq!(h0.conjugate(Root::e(1, 3)), Root::e(2, 4));
        assert_eq!(h0.conjugate(Root::e(1, 2)), Root::e(2, 1));
        let h1 = make_cartan(4, 1).unwrap();
        assert_eq!(h1.conjugate(Root::e(1, 2)), Root::e(1, 2));
    }

    #[test]
    fn root_counts_by_kind() {
        for n in 1..=8 {
            for c in CartanModel::all(n).unwrap() {
                let (m, l, d) = (c.m(), c.l(), c.delta());
                let imag = c.roots_of_kind(RootKind::Imaginary).count();
                let real = c.roots_of_kind(RootKind::Real).count();
                let cx = c.roots_of_kind(RootKind::Complex).count();
                assert_eq!(imag, 2 * (m - l));
                assert_eq!(real, (2 * l + d) * (2 * l + d).saturating_sub(1));
                assert_eq!(imag + real + cx, n * (n - 1));
                for r in Root::all(n) {
                    let s = c.conjugate(r);
                    assert_eq!(c.conjugate(s), r);
                    assert_eq!(c.conjugate(-r), -s);
                    assert_eq!(c.classify(s), c.classify(r));
                    match c.classify(r) {
                        RootKind::Real => assert_eq!(s, r),
                        RootKind::Imaginary => assert_eq!(s, -r),
                        RootKind::Complex => assert!(s != r && s != -r),
                    }
                }
            }
        }
    }

    #[test]
    fn positive_system_examples() {
        let split = make_cartan(4, 2).unwrap();
        let ps = canonical_positive_system(&Component::standard(split));
        let expect: Vec<Root> = (0..4).tuple_combinations().map(|(p, q)| Root::new(p, q)).collect();
        assert_eq!(ps.positives(), expect);

        let h0 = make_cartan(2, 0).unwrap();
        assert_eq!(canonical_positive_system(&Component::standard(h0)).positives(), vec![Root::e(1, 2)]);

        let h1 = make_cartan(4, 1).unwrap();
        let comp = Component::standard(h1);
        let ps = canonical_positive_system(&comp);
        assert!(ps.is_positive(Root::e(1, 2)));
        assert!(ps.is_positive(Root::e(3, 4)));
        ps.check_invariants(&comp).unwrap();
    }

    #[test]
    fn every_component_gets_a_valid_system() {
        for n in 1..=6 {
            for c in CartanModel::all(n).unwrap() {
                for comp in enumerate_components(&c, Level::Regular) {
                    for style in [WitnessStyle::Canonical, WitnessStyle::Alternate] {
                        positive_system_at(&comp, style).check_invariants(&comp).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn component_counts() {
        let h2 = make_cartan(4, 2).unwrap();
        assert_eq!(enumerate_components(&h2, Level::RealRegular).len(), 24);
        let h0 = make_cartan(4, 0).unwrap();
        assert_eq!(enumerate_components(&h0, Level::RealRegular).len(), 1);
        assert_eq!(enumerate_components(&h0, Level::Regular).len(), 4);
        let h1 = make_cartan(3, 1).unwrap();
        assert_eq!(enumerate_components(&h1, Level::RealRegular).len(), 6);
        assert_eq!(enumerate_components(&h1, Level::Regular).len(), 6);
    }

    #[test]
    fn cayley_neighbors() {
        let (h1, new) = make_cartan(2, 0).unwrap().cayley_neighbor().unwrap();
        assert_eq!((h1.l(), new), (1, (0, 1)));
        let (h1, new) = make_cartan(4, 0).unwrap().cayley_neighbor().unwrap();
        assert_eq!(h1.l(), 1);
        assert_eq!(new, (0, 1));
        assert!(make_cartan(4, 2).unwrap().cayley_neighbor().is_err());
    }

    #[test]
    fn component_validation() {
        let c = make_cartan(4, 1).unwrap();
        assert!(Component::new(c.clone(), vec![0, 0], vec![Sign::Plus]).is_err());
        assert!(Component::new(c.clone(), vec![1, 0], vec![]).is_err());
        assert!(Component::new(c, vec![1, 0], vec![Sign::Minus]).is_ok());
    }

    #[test]
    fn root_serde_is_one_based() {
        let s = serde_json::to_string(&Root::e(1, 3)).unwrap();
        assert_eq!(s, "[1,3]");
        assert_eq!(serde_json::from_str::<Root>(&s).unwrap(), Root::new(0, 2));
        assert!(serde_json::from_str::<Root>("[0,1]").is_err());
    }
}
