//! Exact algebra: cyclotomic fields, Laurent polynomials, rational functions,
//! matrices and Smith normal forms.

pub mod cyclotomic;
pub mod interval;
pub mod laurent;
pub mod matrix;
pub mod ratfunc;
pub mod smith;

pub use cyclotomic::{CycNum, RootOfUnity};
pub use laurent::LaurentPoly;
pub use matrix::{Euclidean, IntMatrix, Matrix, PolyMatrix, Ring};
pub use ratfunc::{ModCoset, RatFunc};
pub use smith::{smith_normal_form, solve_linear, SmithForm};
