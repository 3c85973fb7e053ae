//! Library side of the `orbitfourier` command line tool: serialized records,
//! renderers, the formula cache and the verification driver.

pub mod cache;
pub mod record;
pub mod render;
pub mod verify;

use crate::error::{Error, Result};
use crate::rootdata::{CartanModel, Component, Sign};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Parses a component selector such as `real-order=3,1,2 pair-signs=+,-`.
///
/// Indices are 1-based. Omitted keys default to the standard component
/// `C_l(e)`: real slots in increasing order, every pair sign `+`.
pub fn parse_component(c: &CartanModel, spec: &str) -> Result<Component> {
    let std = Component::standard(c.clone());
    let mut order = std.real_order().to_vec();
    let mut signs = std.pair_signs().to_vec();
    for tok in spec.split_whitespace() {
        let (key, val) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))?;
        let items = || val.split(',').map(str::trim).filter(|s| !s.is_empty());
        match key {
            "real-order" => {
                order = items()
                    .map(|s| match s.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(Error::Parse(format!("bad coordinate {s:?} in real-order"))),
                    })
                    .collect::<Result<_>>()?;
            }
            "pair-signs" => {
                signs = items()
                    .map(|s| match s {
                        "+" | "+1" | "1" => Ok(Sign::Plus),
                        "-" | "-1" => Ok(Sign::Minus),
                        _ => Err(Error::Parse(format!("bad sign {s:?} in pair-signs"))),
                    })
                    .collect::<Result<_>>()?;
            }
            _ => return Err(Error::Parse(format!("unknown component key {key:?}"))),
        }
    }
    Component::new(c.clone(), order, signs)
}

/// Exit status for an error: usage problems are 2, anything else 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::BoundExceeded { .. } | Error::Parse(_) | Error::Unsupported(_) => 2,
        _ => 1,
    }
}
