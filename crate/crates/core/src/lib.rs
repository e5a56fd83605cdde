//! Antiautomorphisms of finite abelian groups.
//!
//! An antiautomorphism of `G` is a bijection `f: G -> G` for which
//! `x -> x - f(x)` is also a bijection; a biantiautomorphism is a linear one.
//! The crate represents groups as ordered lists of cyclic moduli, maps as dense
//! index tables, and provides explicit constructions, exact counting by pruned
//! backtracking, closed-form counts and bounds, and a classifier that produces
//! verified witnesses.

pub mod arith;
pub mod budget;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod group;
pub mod linear;
pub mod map;
pub mod search;
pub mod verify;

pub use budget::SearchBudget;
pub use classify::{decide_antiautomorphism, decide_biantiautomorphism, Method, Reason, Status, Verdict};
pub use error::{Error, Result};
pub use group::{abelian_groups_of_order, abelian_groups_up_to, AbelianGroup, GroupElement, GroupIsomorphism};
pub use linear::{irreducible_poly_z2, multiplication_map, BinaryPolynomial, ResidueMatrix};
pub use map::TableMap;
