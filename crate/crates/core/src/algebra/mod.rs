//! Exact fields, sparse forms, subspaces and Hensel lifting.

pub mod field;
pub mod form;
pub mod hensel;
pub mod linalg;
pub mod padic;
pub mod parse;
pub mod subspace;
pub mod system;

pub use field::{parse_rational, Field, FieldDescriptor, PrimeField, Rationals};
pub use form::{Form, Monomial};
pub use hensel::{hensel_lift, lift_system, IntPoly};
pub use padic::{PadicElem, PadicField};
pub use parse::{FormJson, TermJson};
pub use subspace::Subspace;
pub use system::{FormSystem, SystemJson};
