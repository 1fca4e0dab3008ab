//! Concrete 4-dimensional matrix Lie groups with hypercomplex structures and
//! Hermitian-Norden metrics.
//!
//! The crate builds the eight parameterized families of 4-dimensional Lie
//! algebra generators, evaluates their matrix exponentials both in closed form
//! (`e^A = E + tA + uA^2`) and through an independent series oracle, recovers
//! the structure constants of each family, computes the full tensor apparatus
//! of the induced left-invariant geometry (Levi-Civita connection, fundamental
//! tensors, Lee forms, Nijenhuis tensors) and classifies each family among the
//! Kaehler-type and conformal classes. The explicit matrix groups G6, G8 and
//! G10 are constructed and checked against the families they realize.
//!
//! All numerical kernels are pure functions on small fixed-size values and are
//! safe to call concurrently. The `parallel` feature (on by default) runs the
//! random-draw verification sweeps on a rayon pool; without it the same sweeps
//! run sequentially with identical results.

pub mod error;
pub mod families;
pub mod geometry;
pub mod hypercomplex;
pub mod known_groups;
pub mod lie_algebra;
pub mod mat4;
pub mod sweep;
pub mod verify;

pub use error::Error;
pub use families::{ExpCoefficients, FamilyElement, FamilyId};
pub use hypercomplex::{HypercomplexTriple, NeutralMetric};
pub use lie_algebra::StructureConstants;
pub use mat4::{Mat4, Poly4, Vec4};
