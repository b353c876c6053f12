//! Combinatorial invariants of string links: Kauffman states, filtration
//! indices and gradings, the torsion polynomial and its Fox-calculus oracle.

pub mod check;
pub mod diagram;
pub mod foxcalc;
pub mod homology;
pub mod laurent;
pub mod planar;
pub mod random;
pub mod states;
pub mod torsion;
pub mod weights;

pub use diagram::{parse_mld, Diagram, DiagramError, Event};
pub use laurent::LaurentPoly;
