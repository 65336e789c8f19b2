//! Exact Rickart *-ring structure on matrix *-rings.
//!
//! Matrices over the Gaussian rationals `Q(i)` (conjugate transpose) or a
//! prime field `F_p` (transpose) form *-regular rings whenever the involution
//! is proper. This crate computes Moore-Penrose inverses, the Rickart prime
//! operations `a‵, a′, a‵‵, a″`, the orthomodular lattice of projections, the
//! one-sided star orders in five equivalent formulations, and the lattice
//! structure of initial segments under the right star order. The [`harness`]
//! module checks all of it by exhaustive enumeration of small finite rings and
//! by seeded random sampling over `Q(i)`.

pub mod error;
pub mod harness;
pub mod json;
pub mod matrix;
pub mod order_structure;
pub mod orders;
pub mod projections;
pub mod rational;
pub mod scalars;
pub mod star_ring;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use orders::{OrderFormulation, OrderReport, OrderStrategy, FormulationRegistry};
pub use projections::Projection;
pub use scalars::{FieldDescriptor, Scalar};
pub use star_ring::{PrimeQuadruple, RingDescriptor, Side};
