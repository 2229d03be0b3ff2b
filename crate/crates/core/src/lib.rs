//! Degree-zero Poisson homology of hypertoric varieties, computed from the
//! combinatorics of a totally unimodular integer matrix.

pub mod bc_complex;
pub mod corpus;
pub mod error;
pub mod gale_frame;
pub mod hilbert;
pub mod hp0;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod sheaf;

pub use error::{Error, Result};
pub use gale_frame::{ColumnSet, Flat, FlatLattice, GaleFrame, LocalFrame, SignedCircuit};
pub use hilbert::HilbertFunction;
pub use poly::{GradedSpan, Monomial, Poly};
pub use rational::Rat;
