//! Reidemeister-number engines, each with an independent cross-check.

mod abelian;
mod finite;
mod product;

pub use abelian::{alternating_exterior_trace, coset_count, r_abelian, r_abelian_trace};
pub use finite::{class_function_matrix, class_map, r_finite, ClassFunctionMap};
pub use product::{r_product, r_product_oracle, r_product_trace, ProductEndomorphism, ORACLE_ELEMENT_CAP};
