//! Computations around filtered deformations of graded rings over Q:
//! tangent cones, blowups, differential forms, cyclic homology and the
//! bookkeeping of long exact sequences.

pub mod algebra;
pub mod cyclic;
pub mod differentials;
pub mod dims;
pub mod error;
pub mod exactseq;
pub mod geometry;
pub mod groebner;
pub mod ktheory;
pub mod linalg;
pub mod poly;
pub mod rational;

pub use dims::{Bounds, DimensionValue, Stability, WindowedDim};
pub use error::{Error, Result};
pub use groebner::{ColonMode, GroebnerBasis, Ideal, ModuleGb, ModuleOrder, Term};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring, RingRef};
pub use rational::Q;
