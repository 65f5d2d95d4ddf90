//! Quasi-quadratic modules of `A = 𝔙(H)` and their Θ-families.

pub mod ideal;
pub mod module;
pub mod theta;
pub mod witness;

pub use ideal::{ideal_decompose, IdealClasses};
pub use module::{phi_contains, QQModule, Repr};
pub use theta::{FamilySpec, Patch, PatchSpec, ThetaFamily};
pub use witness::{certify, four_squares, Certificate};
