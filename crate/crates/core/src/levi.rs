//! Levi classes of `GL(n, R)` as partitions of `n`, the Levi subgroups that
//! contain a given Cartan, and the Levi class to nilpotent orbit dictionary.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::rootdata::{CartanModel, PositiveSystem, Root};
use crate::weyl::{factorial, real_weyl_of_levi, stabilizer_of_levi};

/// Conjugacy class of `GL(q_1) x ... x GL(q_r)`, blocks sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct LeviClass(Vec<usize>);

impl LeviClass {
    pub fn new(mut blocks: Vec<usize>) -> Result<LeviClass> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(domain(format!("{blocks:?} is not a partition")));
        }
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        Ok(LeviClass(blocks))
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn dual(&self) -> LeviClass {
        LeviClass(dual_partition(&self.0))
    }

    /// The most complex pairs a Cartan inside `L` can have: `Σ floor(q_i/2)`.
    pub fn pair_capacity(&self) -> usize {
        self.0.iter().map(|q| q / 2).sum()
    }

    /// Index of the fundamental Cartan of `L` among `h_0..h_m` of `gl(n)`.
    pub fn fundamental_cartan_index(&self) -> usize {
        self.n() / 2 - self.pair_capacity()
    }

    /// `r(L) = |Δ⁺_L|`.
    pub fn positive_root_count(&self) -> usize {
        self.0.iter().map(|q| q * (q - 1) / 2).sum()
    }
}

impl TryFrom<Vec<usize>> for LeviClass {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        LeviClass::new(v)
    }
}

impl From<LeviClass> for Vec<usize> {
    fn from(c: LeviClass) -> Vec<usize> {
        c.0
    }
}

impl fmt::Display for LeviClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().format(","))
    }
}

impl FromStr for LeviClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let blocks = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad block {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        LeviClass::new(blocks)
    }
}

/// Partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            go(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn levi_classes(n: usize) -> Vec<LeviClass> {
    partitions(n).into_iter().map(LeviClass).collect()
}

/// Transpose of a partition given in descending order.
pub fn dual_partition(p: &[usize]) -> Vec<usize> {
    let largest = p.iter().copied().max().unwrap_or(0);
    (1..=largest).map(|i| p.iter().filter(|&&q| q >= i).count()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeviBlock {
    /// Sorted coordinates of the block.
    pub coords: Vec<usize>,
    pub pairs: usize,
    pub reals: usize,
}

impl LeviBlock {
    pub fn size(&self) -> usize {
        self.coords.len()
    }
}

/// A block-diagonal Levi subgroup containing a fixed Cartan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeviEmbedding {
    cartan: CartanModel,
    class: LeviClass,
    blocks: Vec<LeviBlock>,
    block_of: Vec<usize>,
}

impl LeviEmbedding {
    /// Builds an embedding from blocks of coordinates. Each block must be a
    /// union of atoms of `cartan`.
    pub fn from_blocks(cartan: &CartanModel, blocks: Vec<Vec<usize>>) -> Result<LeviEmbedding> {
        let n = cartan.n();
        let mut block_of = vec![usize::MAX; n];
        let mut out: Vec<LeviBlock> = Vec::new();
        for b in blocks {
            let coords: Vec<usize> = b.into_iter().sorted().collect();
            if coords.is_empty() {
                return Err(domain("empty Levi block"));
            }
            let mut pairs = 0;
            let mut reals = 0;
            for &c in &coords {
                if c >= n || block_of[c] != usize::MAX {
                    return Err(domain("Levi blocks must partition the coordinates"));
                }
                block_of[c] = 0;
                match cartan.pair_of(c) {
                    None => reals += 1,
                    Some(_) => {
                        if !coords.contains(&cartan.conj_coord(c)) {
                            return Err(domain(format!(
                                "block {:?} splits a complex pair, so L does not contain {cartan}",
                                coords.iter().map(|x| x + 1).collect_vec()
                            )));
                        }
                        pairs += 1;
                    }
                }
            }
            out.push(LeviBlock { coords, pairs: pairs / 2, reals });
        }
        if block_of.contains(&usize::MAX) {
            return Err(domain("Levi blocks must cover every coordinate"));
        }
        out.sort();
        for (i, b) in out.iter().enumerate() {
            for &c in &b.coords {
                block_of[c] = i;
            }
        }
        let class = LeviClass::new(out.iter().map(LeviBlock::size).collect())?;
        Ok(LeviEmbedding { cartan: cartan.clone(), class, blocks: out, block_of })
    }

    pub fn cartan(&self) -> &CartanModel {
        &self.cartan
    }
    pub fn class(&self) -> &LeviClass {
        &self.class
    }
    pub fn blocks(&self) -> &[LeviBlock] {
        &self.blocks
    }
    pub fn block_of(&self, coord: usize) -> usize {
        self.block_of[coord]
    }

    pub fn contains_root(&self, r: Root) -> bool {
        self.block_of[r.p] == self.block_of[r.q]
    }

    /// `Δ⁺_L` for the given positive system of `G`.
    pub fn positive_roots(&self, pos: &PositiveSystem) -> Vec<Root> {
        pos.positives().into_iter().filter(|&r| self.contains_root(r)).collect()
    }

    /// `|W(L, H)| = Π 2^{c_i} c_i! r_i!`.
    pub fn real_weyl_order(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| (1u64 << b.pairs) * factorial(b.pairs as u64) * factorial(b.reals as u64))
            .product()
    }

    /// Whether `H` is a fundamental Cartan of `L`: every block of size `q`
    /// carries `floor(q/2)` pairs.
    pub fn is_fundamental(&self) -> bool {
        self.blocks.iter().all(|b| b.pairs == b.size() / 2)
    }

    /// Coordinate blocks as a canonical set partition.
    pub fn set_partition(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.coords.clone()).collect()
    }
}

impl fmt::Display for LeviEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.coords.iter().map(|c| c + 1).format(",")));
        write!(f, "{}", blocks.format("|"))
    }
}

/// All Levi subgroups of class `class` containing `h_l`, in canonical order.
pub fn enumerate_levis_containing(c: &CartanModel, class: &LeviClass) -> Vec<LeviEmbedding> {
    if class.n() != c.n() {
        return Vec::new();
    }
    let atoms = c.atoms();
    let mut sizes: Vec<(usize, usize)> = class.blocks().iter().copied().dedup_with_count().map(|(k, q)| (q, k)).collect();
    let mut used = vec![false; atoms.len()];
    let mut current: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    place(&atoms, &mut used, &mut sizes, &mut current, &mut out);
    let mut embs: Vec<LeviEmbedding> = out
        .into_iter()
        .map(|blocks| {
            let blocks = blocks.into_iter().map(|ix| ix.iter().flat_map(|&i| atoms[i].clone()).collect()).collect();
            LeviEmbedding::from_blocks(c, blocks).expect("blocks are unions of atoms")
        })
        .collect();
    embs.sort_by(|a, b| a.blocks.cmp(&b.blocks));
    embs
}

// Anchors every new block at the first unused atom, so each unordered set
// partition is produced exactly once.
fn place(
    atoms: &[Vec<usize>],
    used: &mut [bool],
    sizes: &mut [(usize, usize)],
    current: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    let Some(first) = used.iter().position(|u| !u) else {
        if sizes.iter().all(|s| s.1 == 0) {
            out.push(current.clone());
        }
        return;
    };
    used[first] = true;
    for si in 0..sizes.len() {
        let (q, left) = sizes[si];
        if left == 0 || q < atoms[first].len() {
            continue;
        }
        sizes[si].1 -= 1;
        let mut block = vec![first];
        fill(atoms, used, first + 1, q - atoms[first].len(), &mut block, &mut |block, used| {
            current.push(block.to_vec());
            place(atoms, used, sizes, current, out);
            current.pop();
        });
        sizes[si].1 += 1;
    }
    used[first] = false;
}

fn fill(
    atoms: &[Vec<usize>],
    used: &mut [bool],
    from: usize,
    need: usize,
    block: &mut Vec<usize>,
    k: &mut dyn FnMut(&[usize], &mut [bool]),
) {
    if need == 0 {
        k(block, used);
        return;
    }
    for i in from..atoms.len() {
        if used[i] || atoms[i].len() > need {
            continue;
        }
        used[i] = true;
        block.push(i);
        fill(atoms, used, i + 1, need - atoms[i].len(), block, k);
        block.pop();
        used[i] = false;
    }
}

/// Jordan type and dimension of the nilpotent orbit attached to a Levi class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub jordan_type: Vec<usize>,
    pub dim: usize,
}

/// The Richardson orbit of a parabolic with Levi class `class`: its Jordan
/// type is the dual partition.
pub fn orbit_of_levi(class: &LeviClass) -> OrbitLabel {
    let n = class.n();
    let jordan_type = dual_partition(class.blocks());
    let dim = n * n - class.blocks().iter().map(|q| q * q).sum::<usize>();
    debug_assert_eq!(
        dim,
        n * n - dual_partition(&jordan_type).iter().map(|q| q * q).sum::<usize>()
    );
    OrbitLabel { jordan_type, dim }
}

/// `|W(G,H)_L| / |W(L,H)|`.
pub fn coefficient(c: &CartanModel, emb: &LeviEmbedding) -> Result<u64> {
    let stab = stabilizer_of_levi(c, emb)?.len() as u64;
    let wl = real_weyl_of_levi(c, emb)?.len() as u64;
    if stab % wl != 0 {
        return Err(Error::InvariantBreach(format!(
            "|W(G,H)_L| = {stab} is not divisible by |W(L,H)| = {wl} for {emb}"
        )));
    }
    Ok(stab / wl)
}

/// Whether some Levi subgroup of class `class` contains `h_l`.
pub fn supports(c: &CartanModel, class: &LeviClass) -> bool {
    c.q() <= class.pair_capacity()
}
