//! Serialized formula records. Coefficients travel as decimal strings so
//! arbitrary precision survives JSON; coordinates are 1-based.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::formulas::{ComponentFormula, Engine, FactoredTerm, Provenance, SemisimpleFormula};
use crate::levi::LeviClass;
use crate::rootdata::{make_cartan, Component, PositiveSystem, Root, Sign};
use crate::symalg::{QPoly, Rational};
use crate::weyl::Perm;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub real_order: Vec<usize>,
    pub pair_signs: Vec<String>,
}

impl ComponentRecord {
    pub fn from_component(c: &Component) -> ComponentRecord {
        ComponentRecord {
            real_order: c.real_order().iter().map(|r| r + 1).collect(),
            pair_signs: c.pair_signs().iter().map(Sign::to_string).collect(),
        }
    }

    pub fn to_component(&self, n: usize, l: usize) -> Result<Component> {
        let order = self
            .real_order
            .iter()
            .map(|&r| r.checked_sub(1).ok_or_else(|| Error::Parse("real_order is 1-based".into())))
            .collect::<Result<_>>()?;
        let signs = self
            .pair_signs
            .iter()
            .map(|s| match s.as_str() {
                "+" => Ok(Sign::Plus),
                "-" => Ok(Sign::Minus),
                _ => Err(Error::Parse(format!("bad pair sign {s:?}"))),
            })
            .collect::<Result<_>>()?;
        Component::new(make_cartan(n, l)?, order, signs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredRecord {
    pub coeff: String,
    pub roots: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub exponents: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumeratorRecord {
    pub factored: Vec<FactoredRecord>,
    pub expanded: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceRecord {
    pub engine: Engine,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_power: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_cartan: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transport: Option<Perm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaRecord {
    pub schema_version: u32,
    pub n: usize,
    pub levi_class: LeviClass,
    pub cartan: usize,
    pub component: ComponentRecord,
    pub positive_system: Vec<Root>,
    pub numerator: NumeratorRecord,
    pub denominator_roots: Vec<Root>,
    pub provenance: ProvenanceRecord,
}

fn parse_rational(s: &str) -> Result<Rational> {
    BigRational::from_str(s).map_err(|e| Error::Parse(format!("bad coefficient {s:?}: {e}")))
}

fn parse_integer(s: &str) -> Result<Rational> {
    let r = parse_rational(s)?;
    if !r.is_integer() || s.contains('/') {
        return Err(Error::Parse(format!("coefficient {s:?} is not an integer")));
    }
    Ok(r)
}

impl FormulaRecord {
    pub fn from_formula(f: &ComponentFormula, timestamp: Option<String>) -> FormulaRecord {
        FormulaRecord {
            schema_version: SCHEMA_VERSION,
            n: f.n(),
            levi_class: f.class.clone(),
            cartan: f.l(),
            component: ComponentRecord::from_component(&f.component),
            positive_system: f.positive_system.positives(),
            numerator: NumeratorRecord {
                factored: f
                    .factored
                    .iter()
                    .map(|t| FactoredRecord { coeff: t.coeff.to_string(), roots: t.roots.clone() })
                    .collect(),
                expanded: f
                    .numerator
                    .terms()
                    .rev()
                    .map(|(e, c)| TermRecord { coeff: c.to_string(), exponents: e.to_vec() })
                    .collect(),
            },
            denominator_roots: f.denominator_roots(),
            provenance: ProvenanceRecord {
                engine: f.provenance.engine,
                tool_version: super::TOOL_VERSION.to_string(),
                timestamp,
                i_power: f.provenance.i_power,
                source_cartan: f.provenance.source_cartan,
                transport: f.provenance.transport.clone(),
            },
        }
    }

    /// Rebuilds the formula, validating every invariant of the record.
    pub fn to_formula(&self) -> Result<ComponentFormula> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema version {}", self.schema_version)));
        }
        let n = self.n;
        if self.levi_class.n() != n {
            return Err(Error::Parse(format!("Levi class {} does not partition {n}", self.levi_class)));
        }
        let component = self.component.to_component(n, self.cartan)?;
        let positives = self.positive_system.iter().map(|r| r.check(n)).collect::<Result<_>>()?;
        let positive_system = PositiveSystem::from_positives(n, &positives)?;
        positive_system.check_invariants(&component)?;
        if self.denominator_roots != positive_system.positives() {
            return Err(Error::InvariantBreach("denominator is not the product of the positive roots".into()));
        }
        let factored = self
            .numerator
            .factored
            .iter()
            .map(|t| {
                Ok(FactoredTerm {
                    coeff: parse_integer(&t.coeff)?,
                    roots: t.roots.iter().map(|r| r.check(n)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut numerator = QPoly::zero(n);
        for t in &self.numerator.expanded {
            if t.exponents.len() != n {
                return Err(Error::Parse(format!("exponent vector {:?} has the wrong length", t.exponents)));
            }
            numerator.add_term(SmallVec::from_slice(&t.exponents), parse_integer(&t.coeff)?);
        }
        let f = ComponentFormula {
            class: self.levi_class.clone(),
            component,
            positive_system,
            factored,
            numerator,
            provenance: Provenance {
                engine: self.provenance.engine,
                i_power: self.provenance.i_power,
                source_cartan: self.provenance.source_cartan,
                transport: self.provenance.transport.clone(),
            },
        };
        f.check_consistency()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records always serialize")
    }

    pub fn from_json(s: &str) -> Result<FormulaRecord> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpTermRecord {
    pub coeff: String,
    pub w: Perm,
}

/// `numerator / π` for a semisimple orbit; the numerator is
/// `Σ coeff e^{i<wλ, X>}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimpleRecord {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub cartan: usize,
    pub component: ComponentRecord,
    pub positive_system: Vec<Root>,
    pub numerator: Vec<ExpTermRecord>,
    pub denominator_roots: Vec<Root>,
    pub tool_version: String,
}

impl SemisimpleRecord {
    pub fn from_formula(f: &SemisimpleFormula) -> SemisimpleRecord {
        let c = f.component.cartan();
        SemisimpleRecord {
            schema_version: SCHEMA_VERSION,
            n: c.n(),
            k: f.k,
            cartan: c.l(),
            component: ComponentRecord::from_component(&f.component),
            positive_system: f.positive_system.positives(),
            numerator: f
                .numerator
                .terms()
                .map(|(w, _)| ExpTermRecord { coeff: f.coefficient(w).to_string(), w: w.clone() })
                .collect(),
            denominator_roots: f.positive_system.positives(),
            tool_version: super::TOOL_VERSION.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{nilpotent_ft_direct, nilpotent_ft_oracle};

    #[test]
    fn round_trip_through_json() {
        let class = LeviClass::new(vec![2, 1, 1]).unwrap();
        let comp = Component::new(make_cartan(4, 1).unwrap(), vec![1, 0], vec![Sign::Minus]).unwrap();
        for f in [nilpotent_ft_direct(&class, &comp).unwrap(), nilpotent_ft_oracle(&class, &comp).unwrap()] {
            let rec = FormulaRecord::from_formula(&f, None);
            let json = rec.to_json();
            let back = FormulaRecord::from_json(&json).unwrap();
            assert_eq!(back, rec);
            assert_eq!(back.to_json(), json);
            assert_eq!(back.to_formula().unwrap(), f);
        }
    }

    #[test]
    fn rejects_tampered_records() {
        let class = LeviClass::new(vec![1, 1]).unwrap();
        let f = nilpotent_ft_direct(&class, &Component::standard(make_cartan(2, 1).unwrap())).unwrap();
        let rec = FormulaRecord::from_formula(&f, None);

        let mut bad = rec.clone();
        bad.numerator.expanded[0].coeff = "3".into();
        assert!(bad.to_formula().is_err());

        let mut bad = rec.clone();
        bad.numerator.factored[0].coeff = "1/2".into();
        assert!(bad.to_formula().is_err());

        let mut bad = rec;
        bad.positive_system = vec![Root::e(2, 1)];
        assert!(bad.to_formula().is_err());
    }
}
