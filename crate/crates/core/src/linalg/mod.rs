//! Exact integer linear algebra.

mod matrix;
mod poly;
mod smith;
mod sturm;

pub use matrix::IntMatrix;
pub use poly::IntPolynomial;
pub use smith::{smith_normal_form, SmithForm};
pub use sturm::{count_eigen_signs, count_root_signs, EigenSigns};
