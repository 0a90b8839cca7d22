//! Gröbner bases for shuffle and nonsymmetric operads.
//!
//! Tree monomials, admissible orders, reduction and completion, normal monomials,
//! Koszul duals of binary quadratic presentations, freeness criteria, compatible
//! structures and Hilbert series.

pub mod algebra;
pub mod compat;
pub mod error;
pub mod format;
pub mod freeness;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod ordering;
pub mod parse;
pub mod presentation;
pub mod presets;
pub mod rewriting;
pub mod series;
pub mod signature;
pub mod tree;

pub use algebra::{Coeff, Element};
pub use error::{OperadError, Result};
pub use groebner::{complete, GroebnerResult};
pub use ordering::OrderSpec;
pub use presentation::Presentation;
pub use signature::{GenId, Generator, Mode, Signature, Symmetry};
pub use tree::{SubtreeEmbedding, Tree, TreeMonomial};
