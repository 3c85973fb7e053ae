//! Exact Fourier transforms of coadjoint orbits of `GL(n, R)`, restricted to
//! connected components of the regular set of each Cartan subalgebra.
//!
//! Two independent engines produce nilpotent orbit transforms: a direct Levi
//! sum ([`formulas::nilpotent_ft_direct`]) and a derivative-and-limit pipeline
//! built on the semisimple formula ([`formulas::nilpotent_ft_oracle`]).
//!
//! Coordinates are 0-based everywhere in the API. Anything printed or
//! serialized uses the 1-based `x_1 .. x_n` of the mathematical literature.

pub mod cli;
pub mod error;
pub mod formulas;
pub mod levi;
pub mod rootdata;
pub mod symalg;
pub mod weyl;

pub use error::{Error, Result};

/// Largest `n` accepted by default. `S_8` has 40320 elements, which keeps the
/// brute-force filters over the complex Weyl group interactive.
pub const DEFAULT_N_BOUND: usize = 8;
