//! Brute-force representability search and exceptional-set sieves.

mod search;
mod sieve;

pub use search::{
    all_representations, all_representations_diag, count_representations, find_binary,
    find_constrained, find_diag, represent, represent_constrained, represent_diag,
    scan_constrained, ClassMembers,
};
pub use sieve::{
    coverage, exceptional_set, exceptional_set_with, Coverage, SieveOptions, SieveReport,
    SieveTarget, Strategy,
};
