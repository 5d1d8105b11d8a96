//! Representations of integers by ternary sums `x(a1 x + b1) + y(a2 y + b2) + z(a3 z + b3)`.
//!
//! * [`model`]: the polynomial and diagonal-form types and the
//!   completing-the-square reduction between them.
//! * [`repr`]: exhaustive representation search and exceptional-set sieves.
//! * [`oracles`]: closed-form exceptional sets for a few classical forms.
//! * [`lemmas`]: the auxiliary representation lemmas.
//! * [`witness`]: constructive witnesses for the universal sums.
//! * [`survey`]: finite searches over coefficient tuples.

pub mod arith;
mod error;
pub mod lemmas;
pub mod model;
pub mod oracles;
pub mod repr;
pub mod survey;
pub mod witness;

pub use error::{Error, Result};
pub use model::{
    evaluate, lift, normalize_sign, reduce, verify, CongruenceClass, ConstrainedForm, DiagonalForm,
    PolySum, ReductionData, SquareRep, Term, Witness,
};
pub use repr::{
    exceptional_set, exceptional_set_with, represent, represent_diag, SieveOptions, SieveReport,
};
