//! Exact dimension-vector calculus, local quivers and determinantal
//! semi-invariants for moduli spaces of θ-semistable representations of the
//! bipartite quivers `Q_{p,q}`, together with enumerative audits of which of
//! these moduli spaces are smooth.

#![allow(clippy::needless_range_loop)]

pub mod linalg;
pub mod local;
pub mod quiver;
pub mod semiinv;
pub mod smoothness;
pub mod stability;
pub mod suites;

pub use local::{Copies, Decomposition, LocalQuiver, Part};
pub use quiver::{BipartiteShape, DimVector, GDimVector, GeneralQuiver, Int};
pub use stability::{ExceptionRule, StableExistence};
