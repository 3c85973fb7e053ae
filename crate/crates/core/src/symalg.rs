//! Exact multivariate polynomials over `Q` and `Q(i)`, constant coefficient
//! differential operators, and finite exponential sums.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rootdata::Root;
use crate::weyl::Perm;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Gaussian rational `re + im i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Gaussian {
        Gaussian { re, im }
    }

    pub fn i() -> Gaussian {
        Gaussian::new(Rational::zero(), Rational::one())
    }

    /// `i^k`.
    pub fn i_pow(k: u32) -> Gaussian {
        match k % 4 {
            0 => Gaussian::one(),
            1 => Gaussian::i(),
            2 => -Gaussian::one(),
            _ => -Gaussian::i(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_real().then(|| self.re.clone())
    }

    pub fn conj(&self) -> Gaussian {
        Gaussian::new(self.re.clone(), -&self.im)
    }

    /// `1/self`; panics on zero like rational division does.
    pub fn recip(&self) -> Gaussian {
        let norm = &self.re * &self.re + &self.im * &self.im;
        Gaussian::new(&self.re / &norm, -&self.im / &norm)
    }
}

impl From<Rational> for Gaussian {
    fn from(re: Rational) -> Gaussian {
        Gaussian::new(re, Rational::zero())
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Zero for Gaussian {
    fn zero() -> Gaussian {
        Gaussian::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Gaussian {
        Gaussian::new(Rational::one(), Rational::zero())
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

/// Coefficient field of a [`Polynomial`].
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<Rational>
{
}

impl Coefficient for Rational {}
impl Coefficient for Gaussian {}

/// Exponent vector of a monomial.
pub type Monomial = SmallVec<[u8; 8]>;

/// Sparse polynomial in `x_0 .. x_{n-1}`. Terms are kept in ascending
/// lexicographic order of exponent vectors and zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type QPoly = Polynomial<Rational>;
pub type GPoly = Polynomial<Gaussian>;

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(SmallVec::from_elem(0, nvars), c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e: Monomial = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, C::one());
        p
    }

    /// The linear form `x_p - x_q` of a root.
    pub fn root(nvars: usize, r: Root) -> Self {
        Self::var(nvars, r.p) - Self::var(nvars, r.q)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u8]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, e: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&d| d as usize).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().map(|e| e.iter().map(|&d| d as usize).sum::<usize>()).all_equal()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Coefficient, E>(&self, f: impl Fn(&C) -> std::result::Result<D, E>) -> std::result::Result<Polynomial<D>, E> {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// `(w.f)(x) = f(x_{w(0)}, ..., x_{w(n-1)})`: every `x_i` becomes `x_{w(i)}`.
    pub fn relabel(&self, w: &Perm) -> Self {
        assert_eq!(w.n(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f: Monomial = SmallVec::from_elem(0, self.nvars);
            for (i, &d) in e.iter().enumerate() {
                f[w.apply(i)] = d;
            }
            out.terms.insert(f, c.clone());
        }
        out
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c.clone() * C::from(rat(e[i] as i64)));
        }
        out
    }

    pub fn eval(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.nvars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &d) in x.iter().zip(e.iter()) {
                for _ in 0..d {
                    t = t * xi.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }
}

impl QPoly {
    pub fn to_gaussian(&self) -> GPoly {
        self.map_coeffs(|c| Gaussian::from(c.clone()))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl GPoly {
    /// The rational polynomial, if every imaginary part vanishes.
    pub fn to_rational(&self) -> Option<QPoly> {
        self.try_map_coeffs(|c| c.to_rational().ok_or(())).ok()
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, o: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coefficient> Add for Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, o: Polynomial<C>) -> Polynomial<C> {
        &self + &o
    }
}

impl<C: Coefficient> AddAssign<&Polynomial<C>> for Polynomial<C> {
    fn add_assign(&mut self, o: &Polynomial<C>) {
        assert_eq!(self.nvars, o.nvars);
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial { nvars: self.nvars, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, o: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, o: Polynomial<C>) -> Polynomial<C> {
        &self - &o
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, o: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                let g: Monomial = e.iter().zip(f.iter()).map(|(x, y)| x + y).collect();
                out.add_term(g, a.clone() * b.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, o: Polynomial<C>) -> Polynomial<C> {
        &self * &o
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    /// Plain text with 1-based variables, highest monomial first:
    /// `2*x1^2*x2 - x3 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_text(e, "*x", "^");
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let compound = body.contains(['+', '-']);
            let body = if compound { format!("({body})") } else { body };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.is_empty() {
                f.write_str(&body)?;
            } else if body == "1" {
                f.write_str(&mono[1..])?;
            } else {
                write!(f, "{body}{mono}")?;
            }
        }
        Ok(())
    }
}

/// `*x1^2*x3` style rendering of a monomial; empty for the constant.
pub(crate) fn monomial_text(e: &[u8], var: &str, pow: &str) -> String {
    let mut s = String::new();
    for (i, &d) in e.iter().enumerate() {
        match d {
            0 => {}
            1 => s.push_str(&format!("{var}{}", i + 1)),
            _ => s.push_str(&format!("{var}{}{pow}{d}", i + 1)),
        }
    }
    s
}

/// Expanded `Π (x_p - x_q)`; the empty product is 1.
pub fn product_of_roots<C: Coefficient>(nvars: usize, roots: &[Root]) -> Polynomial<C> {
    roots
        .iter()
        .fold(Polynomial::one(nvars), |acc, &r| &acc * &Polynomial::root(nvars, r))
}

/// The constant coefficient operator `∂(p)`: every `x_i` in the symbol is
/// replaced by `∂/∂x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp<C> {
    pub symbol: Polynomial<C>,
}

impl<C: Coefficient> DiffOp<C> {
    pub fn new(symbol: Polynomial<C>) -> Self {
        DiffOp { symbol }
    }

    pub fn compose(&self, other: &DiffOp<C>) -> DiffOp<C> {
        DiffOp::new(&self.symbol * &other.symbol)
    }

    /// Degree of the symbol. All symbols used here are homogeneous.
    pub fn degree(&self) -> usize {
        self.symbol.degree().unwrap_or(0)
    }
}

pub fn apply_diffop_poly<C: Coefficient>(d: &DiffOp<C>, q: &Polynomial<C>) -> Polynomial<C> {
    let mut out = Polynomial::zero(q.nvars());
    for (e, c) in d.symbol.terms() {
        let mut t = q.clone();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                t = t.derivative(i);
                if t.is_zero() {
                    break;
                }
            }
        }
        out += &t.scale(c);
    }
    out
}

/// `Σ_w p_w(X) e^{i<wλ, X>}`, keyed by the Weyl element `w`. Coefficients
/// live in the polynomial `p_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSum {
    nvars: usize,
    terms: BTreeMap<Perm, GPoly>,
}

impl ExpSum {
    pub fn zero(nvars: usize) -> ExpSum {
        ExpSum { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c p(X) e^{i<wλ,X>}`, merging with an existing `w` term.
    pub fn add_term(&mut self, c: Gaussian, p: &GPoly, w: Perm) {
        assert_eq!(w.n(), self.nvars);
        let add = p.scale(&c);
        if add.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(|| Polynomial::zero(self.nvars));
        *entry += &add;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// Adds a pure exponential `c e^{i<wλ,X>}`.
    pub fn add_exp(&mut self, c: Gaussian, w: Perm) {
        let one = Polynomial::one(self.nvars);
        self.add_term(c, &one, w);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &GPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Scalar coefficient of a pure exponential term (0 if absent).
    pub fn exp_coefficient(&self, w: &Perm) -> Result<Gaussian> {
        match self.terms.get(w) {
            None => Ok(Gaussian::zero()),
            Some(p) if p.degree() == Some(0) => Ok(p.coeff(&SmallVec::<[u8; 8]>::from_elem(0, self.nvars))),
            Some(_) => Err(Error::Unsupported(format!("term at {w} is not a pure exponential"))),
        }
    }

    pub fn scale(&self, c: &Gaussian) -> ExpSum {
        let mut out = ExpSum::zero(self.nvars);
        for (w, p) in &self.terms {
            out.add_term(c.clone(), p, w.clone());
        }
        out
    }
}

impl fmt::Display for ExpSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts = self.terms.iter().map(|(w, p)| format!("({p})*exp(i<{w}λ,X>)"));
        write!(f, "{}", parts.format(" + "))
    }
}

/// `∂(D) e^{i<wλ,X>} = i^{deg D} (w.D)(X) e^{i<wλ,X>}`, applied termwise.
/// Here `(w.D)` is the symbol with `x_j` replaced by `x_{w(j)}`, paired with
/// `λ`, read as a polynomial in the Cartan variable.
pub fn apply_diffop_exp(d: &DiffOp<Rational>, s: &ExpSum) -> Result<ExpSum> {
    let ipow = Gaussian::i_pow(d.degree() as u32);
    let sym = d.symbol.to_gaussian();
    let mut out = ExpSum::zero(s.nvars());
    for (w, p) in s.terms() {
        if p.degree() != Some(0) {
            return Err(Error::Unsupported(
                "differential operators act only on pure exponential sums".into(),
            ));
        }
        let c = p.coeff(&SmallVec::<[u8; 8]>::from_elem(0, s.nvars()));
        out.add_term(c * ipow.clone(), &sym.relabel(w), w.clone());
    }
    Ok(out)
}

/// Value at `t = 0` of the sum evaluated at `λ = tξ`: every exponential
/// factor becomes 1.
pub fn limit_t0(s: &ExpSum) -> GPoly {
    let mut out = Polynomial::zero(s.nvars());
    for (_, p) in s.terms() {
        out += p;
    }
    out
}

/// Evaluates both sides of `∂(π_L)(π^∨_{G/L} f)(ξ) = π^∨_{G/L}(ξ) (∂(π_L) f)(ξ)`.
pub fn check_commutator(pi_l: &QPoly, pi_gl: &QPoly, xi: &[Rational], f: &QPoly) -> bool {
    let d = DiffOp::new(pi_l.clone());
    let lhs = apply_diffop_poly(&d, &(pi_gl * f)).eval(xi);
    let rhs = pi_gl.eval(xi) * apply_diffop_poly(&d, f).eval(xi);
    lhs == rhs
}

/// `Σ_w coeff * (w.p)` style products need to know if a rational is a
/// positive integer.
pub fn is_positive_integer(c: &Rational) -> bool {
    c.is_integer() && c.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> QPoly {
        QPoly::var(n, i)
    }

    #[test]
    fn root_products() {
        assert_eq!(product_of_roots::<Rational>(3, &[]), QPoly::one(3));
        assert_eq!(product_of_roots::<Rational>(2, &[Root::e(1, 2)]), x(2, 0) - x(2, 1));
        let v = product_of_roots::<Rational>(3, &[Root::e(1, 2), Root::e(1, 3), Root::e(2, 3)]);
        let expect = &(&(x(3, 0) - x(3, 1)) * &(x(3, 0) - x(3, 2))) * &(x(3, 1) - x(3, 2));
        assert_eq!(v, expect);
        // Vandermonde at (a, b, c) = (a-b)(a-c)(b-c).
        for (a, b, c) in [(1, 5, -2), (3, 0, 7), (-4, -1, 2)] {
            let got = v.eval(&[rat(a), rat(b), rat(c)]);
            assert_eq!(got, rat((a - b) * (a - c) * (b - c)));
        }
    }

    #[test]
    fn diffop_examples() {
        let d = DiffOp::new(x(2, 0));
        assert_eq!(apply_diffop_poly(&d, &x(2, 0).pow(2)), x(2, 0).scale(&rat(2)));
        let r = x(2, 0) - x(2, 1);
        assert_eq!(apply_diffop_poly(&DiffOp::new(r.clone()), &r), QPoly::constant(2, rat(2)));
        let d = DiffOp::new(&x(2, 0) * &x(2, 1));
        assert!(apply_diffop_poly(&d, &x(2, 0).pow(2)).is_zero());
    }

    #[test]
    fn diffop_on_exponentials() {
        let n = 2;
        let r = x(n, 0) - x(n, 1);
        let d = DiffOp::new(r.clone());
        let s_perm = Perm::transposition(2, 0, 1);
        let mut e = ExpSum::zero(n);
        e.add_exp(Gaussian::one(), Perm::identity(n));
        let out = apply_diffop_exp(&d, &e).unwrap();
        let mut expect = ExpSum::zero(n);
        expect.add_term(Gaussian::i(), &r.to_gaussian(), Perm::identity(n));
        assert_eq!(out, expect);

        let mut e = ExpSum::zero(n);
        e.add_exp(Gaussian::one(), s_perm.clone());
        let out = apply_diffop_exp(&d, &e).unwrap();
        let mut expect = ExpSum::zero(n);
        expect.add_term(Gaussian::i(), &(x(n, 1) - x(n, 0)).to_gaussian(), s_perm);
        assert_eq!(out, expect);

        let id = DiffOp::new(QPoly::one(n));
        assert_eq!(apply_diffop_exp(&id, &e).unwrap(), e);
        assert!(apply_diffop_exp(&d, &expect).is_err());
    }

    #[test]
    fn limits() {
        let n = 2;
        let r = (x(n, 0) - x(n, 1)).to_gaussian();
        let w = Perm::identity(n);
        let mut s = ExpSum::zero(n);
        s.add_term(Gaussian::one(), &r, w.clone());
        assert_eq!(limit_t0(&s), r);
        let mut s = ExpSum::zero(n);
        s.add_term(Gaussian::one(), &r, w.clone());
        s.add_term(-Gaussian::one(), &r, Perm::transposition(2, 0, 1));
        assert!(limit_t0(&s).is_zero());

        // Principal orbit of gl(2): 2 i (x1 - x2) e^{...}, divided by i |W(L,H)| = i.
        let mut e = ExpSum::zero(n);
        e.add_exp(Gaussian::from(rat(2)), w);
        let lim = limit_t0(&apply_diffop_exp(&DiffOp::new(x(n, 0) - x(n, 1)), &e).unwrap());
        let lim = lim.scale(&Gaussian::i().recip());
        assert_eq!(lim.to_rational().unwrap(), (x(n, 0) - x(n, 1)).scale(&rat(2)));
    }

    #[test]
    fn commutator_examples() {
        let xi = [rat(1), rat(-1)];
        let f = (x(2, 0) + x(2, 1)).pow(3);
        let pi_gl = x(2, 0) - x(2, 1);
        assert!(check_commutator(&QPoly::one(2), &pi_gl, &xi, &f));
    }

    #[test]
    fn display() {
        let p = &(x(3, 0).pow(2) * x(3, 1)).scale(&rat(2)) - &x(3, 2) + QPoly::constant(3, frac(1, 2));
        assert_eq!(p.to_string(), "2*x1^2*x2 - x3 + 1/2");
        assert_eq!(QPoly::zero(2).to_string(), "0");
        assert_eq!((-x(2, 1)).to_string(), "-x2");
        let g = GPoly::constant(1, Gaussian::new(rat(1), rat(-2)));
        assert_eq!(g.to_string(), "(1-2i)");
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = Gaussian::i();
        assert_eq!(i.clone() * i.clone(), -Gaussian::one());
        for k in 0..8 {
            assert_eq!(Gaussian::i_pow(k) * Gaussian::i_pow(4 - k % 4), Gaussian::one());
        }
        let z = Gaussian::new(rat(3), frac(-1, 2));
        assert_eq!(z.clone() * z.recip(), Gaussian::one());
        assert_eq!(z.conj().conj(), z);
    }

    fn poly_strategy(n: usize, max_deg: u8) -> impl Strategy<Value = QPoly> {
        prop::collection::vec((prop::collection::vec(0..=max_deg, n), -5i64..=5, 1i64..=3), 0..6).prop_map(
            move |terms| {
                QPoly::from_terms(
                    n,
                    terms.into_iter().map(|(e, a, b)| (Monomial::from_vec(e), frac(a, b))),
                )
            },
        )
    }

    fn nvars_and_polys(k: usize) -> impl Strategy<Value = (usize, Vec<QPoly>)> {
        (1usize..=6).prop_flat_map(move |n| (Just(n), prop::collection::vec(poly_strategy(n, 2), k)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms((_n, ps) in nvars_and_polys(3)) {
            let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
            prop_assert_eq!(&(a * b) * c, a * &(b * c));
            prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a + b, b + a);
            prop_assert!((a - a).is_zero());
        }

        #[test]
        fn diffop_composition_is_symbol_product((_n, ps) in nvars_and_polys(3)) {
            let (p, q, f) = (DiffOp::new(ps[0].clone()), DiffOp::new(ps[1].clone()), &ps[2]);
            let sequential = apply_diffop_poly(&p, &apply_diffop_poly(&q, f));
            prop_assert_eq!(apply_diffop_poly(&p.compose(&q), f), sequential);
        }

        #[test]
        fn relabel_is_an_action((n, ps) in nvars_and_polys(1), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut a: Vec<usize> = (0..n).collect();
            let mut b = a.clone();
            a.shuffle(&mut rng);
            b.shuffle(&mut rng);
            let (u, v) = (Perm::from_images(a).unwrap(), Perm::from_images(b).unwrap());
            let p = &ps[0];
            prop_assert_eq!(p.relabel(&v).relabel(&u), p.relabel(&u.compose(&v)));
        }

        #[test]
        fn relabel_agrees_with_root_action(n in 2usize..=6, seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut a: Vec<usize> = (0..n).collect();
            a.shuffle(&mut rng);
            let w = Perm::from_images(a).unwrap();
            for r in Root::all(n) {
                prop_assert_eq!(QPoly::root(n, r).relabel(&w), QPoly::root(n, w.act_root(r)));
            }
        }
    }
}
