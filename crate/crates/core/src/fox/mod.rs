//! Free groups, Fox calculus over their integral group rings, and radius
//! of convergence bounds for the Nielsen zeta function of a bouquet map.

mod bounds;
mod calculus;
mod ring;
mod spectral;
mod word;

pub use bounds::{chain_matrices, nielsen_radius_bounds, NielsenBounds};
pub use calculus::{fox_derivative, jacobian, twisted_power, twisted_power_norm, FreeGroupEndo};
pub use ring::{matrix_norm, matrix_of_norms, ring_norm, GroupRingElement, GroupRingMatrix};
pub use spectral::{spectral_radius, SpectralRadius};
pub use word::{free_reduce, FreeWord, Letter};
