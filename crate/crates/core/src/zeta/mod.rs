//! Reidemeister zeta functions in closed form, their defining series, and
//! the identities they satisfy.

mod congruence;
mod functional;
mod rational;
mod series;
mod torsion;

pub use congruence::{congruence_check, congruences_hold, mobius};
pub use functional::{functional_equation_check, FunctionalEquation};
pub use rational::{
    det_one_minus_xz, ensure_finite_iterates, lefschetz_zeta, zeta_formal, zeta_product, Factor,
    FactoredRationalFunction, SignConvention, POLE_GUARD,
};
pub use series::{expand_rational, zeta_series_oracle, TruncatedSeries, ZetaSeries};
pub use torsion::{
    dual_homology_matrices, lefschetz_torsion, torsion_special_value, unit_from_angle, TorsionValue,
    TORSION_TOLERANCE,
};
