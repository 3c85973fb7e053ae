//! The complex Weyl group `S_n` acting on coordinates, the real Weyl groups
//! `W(G, H_l)` as permutation subgroups, and the sets `W_{k,l}`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::levi::LeviEmbedding;
use crate::rootdata::{CartanModel, PositiveSystem, Root, RootKind};

/// A permutation of the coordinates `0..n`, stored as its images.
///
/// It acts on roots by `w(e_p - e_q) = e_{w(p)} - e_{w(q)}` and on
/// polynomials by `(w.f)(x) = f(x_{w(0)}, ..., x_{w(n-1)})`, so that the two
/// actions agree on linear forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(domain(format!("{images:?} is not a permutation")));
            }
        }
        if n > u8::MAX as usize {
            return Err(Error::BoundExceeded { n, bound: u8::MAX as usize });
        }
        Ok(Perm(images.into_iter().map(|i| i as u8).collect()))
    }

    /// One-line notation with 1-based images, e.g. `[2, 1, 3]` for `(1 2)`.
    pub fn from_one_based(images: &[usize]) -> Result<Perm> {
        if images.contains(&0) {
            return Err(domain("1-based images start at 1"));
        }
        Perm::from_images(images.iter().map(|i| i - 1).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
        let mut v: Vec<u8> = (0..n as u8).collect();
        v.swap(a, b);
        Perm(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0u8; self.n()];
        for (i, &w) in self.0.iter().enumerate() {
            v[w as usize] = i as u8;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &w)| i == w as usize)
    }

    /// The determinant character `ε(w)`.
    pub fn sign(&self) -> i8 {
        let mut seen = vec![false; self.n()];
        let mut s = 1i8;
        for start in 0..self.n() {
            let mut j = start;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.apply(j);
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    pub fn act_root(&self, r: Root) -> Root {
        Root::new(self.apply(r.p), self.apply(r.q))
    }

    /// Image of a set of coordinates.
    pub fn act_set(&self, coords: &[usize]) -> Vec<usize> {
        coords.iter().map(|&c| self.apply(c)).sorted().collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().map(|&i| i as usize + 1).format(","))
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().map(|&i| i as usize + 1).collect_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}

pub fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        Err(Error::BoundExceeded { n, bound })
    } else {
        Ok(())
    }
}

/// All of `S_n` in lexicographic order of the image vectors.
pub fn enumerate_complex_weyl(n: usize, bound: usize) -> Result<impl Iterator<Item = Perm>> {
    check_bound(n, bound)?;
    Ok((0..n as u8).permutations(n).map(Perm))
}

pub(crate) fn all_perms(n: usize) -> impl Iterator<Item = Perm> {
    (0..n as u8).permutations(n).map(Perm)
}

/// The group generated by permutations of `pair_groups[g]` among themselves
/// (moving both members together), swaps inside each pair, and permutations
/// of each `real_groups[g]`. Every coordinate not mentioned is fixed.
pub(crate) fn signed_perm_group(
    n: usize,
    pair_groups: &[Vec<(usize, usize)>],
    real_groups: &[Vec<usize>],
) -> Vec<Perm> {
    let mut factors: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    for pg in pair_groups {
        let k = pg.len();
        let mut maps = Vec::new();
        for sigma in (0..k).permutations(k) {
            for mask in 0..(1u32 << k) {
                let mut m = Vec::with_capacity(2 * k);
                for (j, &(a, b)) in pg.iter().enumerate() {
                    let (c, d) = pg[sigma[j]];
                    let (c, d) = if mask >> j & 1 == 1 { (d, c) } else { (c, d) };
                    m.push((a, c));
                    m.push((b, d));
                }
                maps.push(m);
            }
        }
        factors.push(maps);
    }
    for rg in real_groups {
        let maps = rg
            .iter()
            .copied()
            .permutations(rg.len())
            .map(|img| rg.iter().copied().zip(img).collect())
            .collect();
        factors.push(maps);
    }
    let mut out: Vec<Perm> = factors
        .iter()
        .map(|f| f.iter())
        .multi_cartesian_product()
        .map(|choice| {
            let mut v: Vec<u8> = (0..n as u8).collect();
            for m in choice {
                for &(from, to) in m {
                    v[from] = to as u8;
                }
            }
            Perm(v)
        })
        .collect();
    if factors.is_empty() {
        out.push(Perm::identity(n));
    }
    out.sort();
    out.dedup();
    out
}

/// `W(G, H_l)`: pair permutations, conjugations and real-slot permutations.
pub fn real_weyl(c: &CartanModel) -> Vec<Perm> {
    signed_perm_group(c.n(), &[c.pairs().to_vec()], &[c.reals().to_vec()])
}

/// `2^{m-l} (m-l)! (2l+δ)!`
pub fn real_weyl_order(c: &CartanModel) -> u64 {
    let q = c.pairs().len() as u64;
    (1u64 << q) * factorial(q) * factorial(c.reals().len() as u64)
}

pub(crate) fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// `W(G, H)_L`: elements of the real Weyl group preserving the blocks of `L`.
pub fn stabilizer_of_levi(c: &CartanModel, emb: &LeviEmbedding) -> Result<Vec<Perm>> {
    if emb.cartan() != c {
        return Err(domain("Levi embedding does not contain this Cartan"));
    }
    let blocks: BTreeSet<Vec<usize>> = emb.blocks().iter().map(|b| b.coords.clone()).collect();
    Ok(real_weyl(c)
        .into_iter()
        .filter(|w| emb.blocks().iter().all(|b| blocks.contains(&w.act_set(&b.coords))))
        .collect())
}

/// `W(L, H)`: the product of the real Weyl groups of the blocks.
pub fn real_weyl_of_levi(c: &CartanModel, emb: &LeviEmbedding) -> Result<Vec<Perm>> {
    if emb.cartan() != c {
        return Err(domain("Levi embedding does not contain this Cartan"));
    }
    let pair_groups: Vec<_> = emb
        .blocks()
        .iter()
        .map(|b| c.pairs().iter().copied().filter(|&(a, _)| b.coords.contains(&a)).collect())
        .collect();
    let real_groups: Vec<_> = emb
        .blocks()
        .iter()
        .map(|b| b.coords.iter().copied().filter(|&x| c.is_real_slot(x)).collect())
        .collect();
    Ok(signed_perm_group(c.n(), &pair_groups, &real_groups))
}

/// `ε_I(w)`, defined by `w.π_I = ε_I(w) π_I`, where `π_I` is the product of
/// the positive imaginary roots. `None` when `w` does not preserve the
/// imaginary roots up to sign.
pub fn epsilon_imag(c: &CartanModel, pos: &PositiveSystem, w: &Perm) -> Option<i8> {
    let imag: BTreeSet<Root> = c.roots_of_kind(RootKind::Imaginary).filter(|&r| pos.is_positive(r)).collect();
    let mut sign = 1i8;
    let mut image = BTreeSet::new();
    for &r in &imag {
        let (r2, s) = pos.make_positive(w.act_root(r));
        sign *= s;
        image.insert(r2);
    }
    (image == imag).then_some(sign)
}

/// `W_{k,l}` with its signs `ε_{k,l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WklSet {
    pub k: usize,
    pub l: usize,
    pub members: Vec<(Perm, i8)>,
}

impl WklSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn sign_sum(&self) -> i64 {
        self.members.iter().map(|(_, e)| *e as i64).sum()
    }
}

/// Filters `S_n` by the three conditions defining `W_{k,l}`:
///
/// 1. `w^{-1}` maps imaginary roots of `h_l` to imaginary roots of `h_k`;
/// 2. `w^{-1}` maps complex roots of `h_l` to complex roots of `h_k`;
/// 3. a positive imaginary root of `h_k` that `w` does not send to an
///    imaginary root of `h_l` goes to a positive real root of `h_l`.
///
/// The sign is `(-1)^N` with `N` the number of positive imaginary roots of
/// `h_l` whose preimage is not a positive imaginary root of `h_k`.
/// For `k > l` the set is empty.
pub fn compute_wkl(hk: &CartanModel, hl: &CartanModel, pos_k: &PositiveSystem, pos_l: &PositiveSystem) -> Result<WklSet> {
    let n = hk.n();
    if hl.n() != n || pos_k.n() != n || pos_l.n() != n {
        return Err(domain("W_{k,l} needs Cartans and positive systems of one gl(n)"));
    }
    let roots: Vec<Root> = Root::all(n).collect();
    let restricted: Vec<(Root, RootKind)> = roots
        .iter()
        .map(|&r| (r, hl.classify(r)))
        .filter(|(_, k)| *k != RootKind::Real)
        .collect();
    let pos_imag_k: Vec<Root> = hk.roots_of_kind(RootKind::Imaginary).filter(|&r| pos_k.is_positive(r)).collect();
    let pos_imag_l: Vec<Root> = hl.roots_of_kind(RootKind::Imaginary).filter(|&r| pos_l.is_positive(r)).collect();

    let mut members = Vec::new();
    for w in all_perms(n) {
        let winv = w.inverse();
        let cond12 = restricted.iter().all(|&(r, kind)| hk.classify(winv.act_root(r)) == kind);
        if !cond12 {
            continue;
        }
        let cond3 = pos_imag_k.iter().all(|&a| {
            let b = w.act_root(a);
            match hl.classify(b) {
                RootKind::Imaginary => true,
                RootKind::Real => pos_l.is_positive(b),
                RootKind::Complex => false,
            }
        });
        if !cond3 {
            continue;
        }
        let flipped = pos_imag_l
            .iter()
            .filter(|&&a| {
                let b = winv.act_root(a);
                !(hk.classify(b) == RootKind::Imaginary && pos_k.is_positive(b))
            })
            .count();
        members.push((w, if flipped % 2 == 0 { 1 } else { -1 }));
    }
    Ok(WklSet { k: hk.l(), l: hl.l(), members })
}
