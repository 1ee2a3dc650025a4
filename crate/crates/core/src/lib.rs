//! Exact computations with vector-valued modular forms for `SL_2(Z)`:
//! arithmetic in `Q(zeta_12)` and `Q[E4, E6]`, the Euler-characteristic
//! bookkeeping that bounds weight profiles, and the reduction of derivative
//! matrices.

pub mod arith;
pub mod component;
pub mod dmatrix;
pub mod error;
pub mod euler;
pub mod graded;
pub mod profile;
pub mod qseries;
pub mod search;

pub use arith::{Cyc12, CycPoly, IntPoly, Rational};
pub use component::{ComponentParams, Parity, TraceData};
pub use dmatrix::{BlockShape, DMatrix, MatrixFile, Transformation};
pub use error::{Error, Result};
pub use euler::{ChiContext, DimensionAnswer, MiddleRange};
pub use graded::{GradedPoly, Monomial};
pub use profile::{AVector, Profile};
pub use search::{CandidateRecord, Enumeration, FilterSet, TypeEntry};
