//! Maximal-parabolic Kazhdan–Lusztig polynomials of the symmetric group.
//!
//! Four independent routes compute the same polynomials: Dyck-strip
//! configurations under Rule I and Rule II, Lascoux–Schützenberger tree
//! labellings, and the bar-invariant bases of the Hecke modules `M^±`.
//! The remaining modules cross-check them against each other and against
//! the full Kazhdan–Lusztig basis of `S_N` at desk scale.
//!
//! Everything is generic over the coefficient ring [`Coeff`]; the aliases
//! below fix `i64`, which is ample for every size the crate is tested at.
//! Use the `Big*` aliases when a computation overflows.

pub mod canonical;
pub mod coeff;
pub mod combinatorics;
pub mod dyck;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod linkage;
pub mod ls_tree;
pub mod sn_oracle;
pub mod table;
pub mod verify;

pub use coeff::Coeff;
pub use combinatorics::{BinaryString, LinkPattern, Path, PathSet, Permutation, Sign, Step, Tableau};
pub use dyck::{DyckStrip, Rule, StripConfig, UnitBox};
pub use error::{Error, Result};
pub use hecke::{HeckeModule, KlTable, ModuleElement};
pub use laurent::LaurentPoly;
pub use linkage::Linkage;
pub use ls_tree::{CapTree, Labelling};
pub use sn_oracle::{HeckeElement, KlBasis, SymmetricGroup};

pub type Poly = LaurentPoly<i64>;
pub type BigPoly = LaurentPoly<num_bigint::BigInt>;
pub type ModElem = ModuleElement<i64>;
pub type BigModElem = ModuleElement<num_bigint::BigInt>;
pub type HeckeElem = HeckeElement<i64>;
pub type BigHeckeElem = HeckeElement<num_bigint::BigInt>;
