//! Principal vector-spread Borel ideals `B_t(u)` and the computations around
//! them: minimal primary decomposition, Alexander duality and vertex
//! splittings, symbolic powers and the normally torsionfree criterion, and the
//! linear relation graph. Every closed-form answer is paired with a
//! brute-force recomputation, and [`sweep`] runs the comparisons over a whole
//! box of instances.

pub mod decomposition;
pub mod duality;
pub mod error;
pub mod ideal;
pub mod limits;
pub mod monomial;
pub mod powers;
pub mod relation_graph;
pub mod spread;
pub mod sweep;

pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use limits::Limits;
pub use monomial::{Monomial, PrimeSupport, VarSet};
pub use spread::{borel_gens, BorelInstance, SpreadVector};
