//! Computational toolkit for Artin groups of a family of diagrams (a linear
//! "fork" diagram, an n-gon, and a square with two arms), their one-relator
//! quotients by cycle-commutator and twisted-cycle-commutator words, explicit
//! generator maps between those quotients, Reidemeister–Schreier subgroup
//! presentations, exact-integer abelianization, and low-index subgroup
//! enumeration.
//!
//! Global conventions (used consistently everywhere):
//!
//! * words are freely reduced at all times;
//! * permutations and all other group elements compose **left to right**:
//!   `(p·q)(x) = q(p(x))`;
//! * conjugation is `g^h = h⁻¹·g·h`;
//! * commutators are `[g,h] = g⁻¹·h⁻¹·g·h`.

pub mod abelian;
pub mod diagrams;
pub mod lowindex;
pub mod perm_eval;
pub mod schreier;
pub mod word_core;
pub mod word_maps;

pub use diagrams::{Diagram, DiagramFamily, Presentation, Quotient};
pub use word_core::{Gen, Letter, Word};
