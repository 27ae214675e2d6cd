//! Exact computations with directed A∞-categories over GF(2).

pub mod gf2;
pub mod graded;

pub use gf2::{BitVec, Echelon, Matrix};
pub use graded::{ChainComplex, Cohomology, GradedError, GradedSpace, Grading, Splitting};
pub mod ainfty;
pub mod twcx;
pub mod fixtures;
pub mod hochschild;
pub mod mutation;
pub mod zerodim;
pub mod spherical;
pub mod morse;
pub mod formats;
