//! Text and LaTeX presentations. Purely for display; never parsed back.

use itertools::Itertools;
use num_traits::One;

use crate::formulas::{ComponentFormula, FactoredTerm, SemisimpleFormula};
use crate::rootdata::Root;
use crate::symalg::Rational;

fn root_text(r: Root) -> String {
    format!("(x{} - x{})", r.p + 1, r.q + 1)
}

fn root_latex(r: Root) -> String {
    format!("x_{} - x_{}", r.p + 1, r.q + 1)
}

fn term_text(t: &FactoredTerm) -> String {
    let roots = t.roots.iter().map(|&r| root_text(r)).join("");
    match (t.coeff.is_one(), roots.is_empty()) {
        (_, true) => t.coeff.to_string(),
        (true, false) => roots,
        (false, false) => format!("{} {roots}", t.coeff),
    }
}

pub fn factored_text(terms: &[FactoredTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(term_text).join(" + ")
}

pub fn roots_text(roots: &[Root]) -> String {
    if roots.is_empty() {
        return "1".into();
    }
    roots.iter().map(|&r| root_text(r)).join("")
}

pub fn formula_text(f: &ComponentFormula) -> String {
    let mut s = format!(
        "n={} levi={} cartan=h_{} component: {} engine={}\n",
        f.n(),
        f.class,
        f.l(),
        f.component,
        f.provenance.engine
    );
    if f.is_zero() {
        s.push_str("FT = 0\n");
        return s;
    }
    s.push_str(&format!("FT = {} / π\n", factored_text(&f.factored)));
    s.push_str(&format!("numerator = {}\n", f.numerator));
    s.push_str(&format!("π = {}\n", roots_text(&f.denominator_roots())));
    s
}

fn roots_latex(roots: &[Root]) -> String {
    match roots {
        [] => "1".into(),
        [r] => root_latex(*r),
        _ => roots.iter().map(|&r| format!("({})", root_latex(r))).join(""),
    }
}

fn coeff_latex(c: &Rational) -> String {
    if c.is_integer() {
        c.to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// `\frac{numerator}{π}` with the factored numerator.
pub fn formula_latex(f: &ComponentFormula) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let num = f
        .factored
        .iter()
        .map(|t| {
            let roots = t.roots.iter().map(|&r| format!("({})", root_latex(r))).join("");
            match (t.coeff.is_one(), roots.is_empty()) {
                (_, true) => coeff_latex(&t.coeff),
                (true, false) => roots,
                (false, false) => format!("{} {roots}", coeff_latex(&t.coeff)),
            }
        })
        .join(" + ");
    format!("\\frac{{{num}}}{{{}}}", roots_latex(&f.denominator_roots()))
}

pub fn semisimple_text(f: &SemisimpleFormula) -> String {
    let c = f.component.cartan();
    let mut s = format!("n={} k={} cartan=h_{} component: {}\n", c.n(), f.k, c.l(), f.component);
    if f.numerator.is_zero() {
        s.push_str("FT = 0\n");
        return s;
    }
    let terms = f
        .numerator
        .terms()
        .map(|(w, _)| format!("{} exp(i<{w}λ, X>)", f.coefficient(w)))
        .join(" + ");
    s.push_str(&format!("FT = ({terms}) / π\n"));
    s.push_str(&format!("π = {}\n", roots_text(&f.positive_system.positives())));
    s
}

pub fn semisimple_latex(f: &SemisimpleFormula) -> String {
    if f.numerator.is_zero() {
        return "0".into();
    }
    let terms = f
        .numerator
        .terms()
        .map(|(w, _)| {
            let c = f.coefficient(w);
            format!("{} e^{{i\\langle {w}\\lambda, X\\rangle}}", coeff_latex(&c))
        })
        .join(" + ");
    format!("\\frac{{{terms}}}{{{}}}", roots_latex(&f.positive_system.positives()))
}
