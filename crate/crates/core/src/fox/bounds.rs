use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::fox::{jacobian, spectral_radius, FreeGroupEndo, GroupRingMatrix, SpectralRadius};

/// Lower bounds for the radius of convergence of the Nielsen zeta function
/// of a map of a bouquet of circles inducing `φ` on the fundamental group.
#[derive(Clone, Debug, PartialEq)]
pub struct NielsenBounds {
    /// `1 / max_d ‖F_d‖`.
    pub bound_norm: BigRational,
    /// `1 / max_d s(F_d^norm)`.
    pub bound_spectral: f64,
    /// Enclosure of `bound_spectral` from the certified spectral bracket.
    pub spectral_enclosure: (f64, f64),
    /// Largest total norm over the chain matrices.
    pub max_norm: BigInt,
    /// Largest spectral radius over the chain matrices.
    pub max_spectral: SpectralRadius,
}

/// Chain matrices of the bouquet: `F_0 = (1)` and `F_1 = D`, the Fox Jacobian.
pub fn chain_matrices(phi: &FreeGroupEndo) -> Vec<GroupRingMatrix> {
    vec![GroupRingMatrix::identity(1), jacobian(phi)]
}

pub fn nielsen_radius_bounds(phi: &FreeGroupEndo) -> Result<NielsenBounds> {
    let chain = chain_matrices(phi);
    let max_norm = chain.iter().map(GroupRingMatrix::norm).max().expect("two chain matrices");
    let mut max_spectral = spectral_radius(&chain[0].norm_matrix())?;
    for f in &chain[1..] {
        let s = spectral_radius(&f.norm_matrix())?;
        if s.value > max_spectral.value {
            max_spectral = s;
        }
    }
    Ok(NielsenBounds {
        bound_norm: BigRational::new(BigInt::one(), max_norm.clone()),
        bound_spectral: max_spectral.value.recip(),
        spectral_enclosure: (max_spectral.upper.recip(), max_spectral.lower.recip()),
        max_norm,
        max_spectral,
    })
}
