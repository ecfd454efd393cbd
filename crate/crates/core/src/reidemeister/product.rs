use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupEndomorphism};
use crate::linalg::{count_eigen_signs, smith_normal_form, IntMatrix};
use crate::reidemeister::abelian::parity_sign;
use crate::reidemeister::{class_function_matrix, r_finite};

/// Endomorphism of `Z^k × F` of the form `(v, f) -> (M v, psi(v) phi_F(f))`.
///
/// `psi` lists the images in `F` of the `k` standard basis vectors. For the
/// map to be a homomorphism those images must commute with each other and
/// with everything in `phi_F(F)`; the constructor checks this.
#[derive(Clone, Debug)]
pub struct ProductEndomorphism {
    matrix: IntMatrix,
    psi: Vec<usize>,
    phi_f: GroupEndomorphism,
    finite: FiniteGroup,
}

impl ProductEndomorphism {
    pub fn new(matrix: IntMatrix, finite: FiniteGroup, phi_f: GroupEndomorphism, psi: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if psi.len() != matrix.rows() {
            return Err(Error::Shape(format!(
                "psi has {} images but the lattice has rank {}",
                psi.len(),
                matrix.rows()
            )));
        }
        if let Some(&bad) = psi.iter().find(|&&x| x >= finite.order()) {
            return Err(Error::NotAHomomorphism(format!("psi image {bad} is not an element of F")));
        }
        phi_f.check_homomorphism(&finite)?;
        for (i, &a) in psi.iter().enumerate() {
            for &b in &psi[i + 1..] {
                if !finite.commute(a, b) {
                    return Err(Error::NotAHomomorphism(format!("psi images {a} and {b} do not commute")));
                }
            }
            if let Some(f) = finite.elements().find(|&f| !finite.commute(a, phi_f.apply(f))) {
                return Err(Error::NotAHomomorphism(format!(
                    "psi image {a} does not commute with phi_F({f})"
                )));
            }
        }
        Ok(Self {
            matrix,
            psi,
            phi_f,
            finite,
        })
    }

    /// Pure lattice endomorphism: `F` trivial.
    pub fn abelian(matrix: IntMatrix) -> Result<Self> {
        let k = matrix.rows();
        let f = FiniteGroup::trivial();
        let phi = GroupEndomorphism::identity(&f);
        Self::new(matrix, f, phi, vec![0; k])
    }

    /// Pure finite endomorphism: rank-0 lattice.
    pub fn finite(group: FiniteGroup, phi: GroupEndomorphism) -> Result<Self> {
        Self::new(IntMatrix::zeros(0, 0), group, phi, Vec::new())
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn psi(&self) -> &[usize] {
        &self.psi
    }

    pub fn phi_f(&self) -> &GroupEndomorphism {
        &self.phi_f
    }

    pub fn finite_group(&self) -> &FiniteGroup {
        &self.finite
    }

    /// `psi(v) = prod_i psi_i^(v_i)`.
    pub fn psi_of(&self, v: &[BigInt]) -> usize {
        let f = &self.finite;
        self.psi.iter().zip(v).fold(f.identity(), |acc, (&g, vi)| {
            let ord = BigInt::from(f.element_order(g));
            let e = vi.mod_floor(&ord).to_i64().expect("reduced exponent fits");
            f.mul(acc, f.pow(g, e))
        })
    }

    pub fn apply(&self, v: &[BigInt], f: usize) -> (Vec<BigInt>, usize) {
        let w = self.matrix.mul_vec(v);
        let g = self.finite.mul(self.psi_of(v), self.phi_f.apply(f));
        (w, g)
    }

    /// `phi^n` applied `n` times to `(v, f)`.
    pub fn apply_iterate(&self, n: u32, v: &[BigInt], f: usize) -> (Vec<BigInt>, usize) {
        let mut cur = (v.to_vec(), f);
        for _ in 0..n {
            cur = self.apply(&cur.0, cur.1);
        }
        cur
    }

    /// The `n`-th iterate, again in product form `(M^n, psi_n, phi_F^n)`.
    pub fn iterate(&self, n: u32) -> Result<Self> {
        let k = self.rank();
        let psi = (0..k)
            .map(|i| {
                let e: Vec<BigInt> = (0..k).map(|j| BigInt::from(u8::from(i == j))).collect();
                self.apply_iterate(n, &e, self.finite.identity()).1
            })
            .collect();
        Self::new(self.matrix.pow(n)?, self.finite.clone(), self.phi_f.iterate(n), psi)
    }

    /// True when both the lattice part and the finite part are invertible.
    pub fn is_automorphism(&self) -> Result<bool> {
        Ok(self.matrix.det()?.abs() == BigInt::from(1) && self.phi_f.is_bijective())
    }
}

/// `|det(I - M^n)| · R(phi_F^n)`.
pub fn r_product(p: &ProductEndomorphism, n: u32) -> Result<BigInt> {
    let d = p.matrix.pow(n)?.one_minus()?.det()?;
    if d.is_zero() {
        return Err(Error::InfiniteReidemeister { n });
    }
    Ok(d.abs() * BigInt::from(r_finite(&p.finite, &p.phi_f.iterate(n))))
}

/// `(-1)^(r + p n) sum_i (-1)^i Tr((∧^i M ⊗ B)^n)`.
pub fn r_product_trace(p: &ProductEndomorphism, n: u32) -> Result<BigInt> {
    let signs = count_eigen_signs(&p.matrix)?;
    let b = class_function_matrix(&p.finite, &p.phi_f).matrix;
    let mut sum = BigInt::zero();
    for i in 0..=p.rank() {
        let block = p.matrix.exterior_power(i)?.kron(&b);
        sum += parity_sign(i) * block.pow(n)?.trace();
    }
    let value = parity_sign(signs.r + signs.p * n as usize) * sum;
    if value.is_zero() {
        return Err(Error::InfiniteReidemeister { n });
    }
    Ok(value)
}

/// Largest `|det(I - M^n)| · |F|` the oracle will enumerate.
pub const ORACLE_ELEMENT_CAP: usize = 4096;

/// Independent count of `phi^n`-conjugacy classes of `Z^k × F`.
///
/// Enumerates one lattice vector per coset of `(I - M^n) Z^k` (from the
/// Smith form) times all of `F`, then merges pairs `(v1, f1) ~ (v2, f2)`
/// when `(I - M^n) w = v2 - v1` has an integral solution `w` and some
/// `h ∈ F` satisfies `h f1 = f2 · pr_F(phi^n(w, 1)) · phi_F^n(h)`.
pub fn r_product_oracle(p: &ProductEndomorphism, n: u32) -> Result<BigInt> {
    let k = p.rank();
    let a = p.matrix.pow(n)?.one_minus()?;
    let smith = smith_normal_form(&a);
    let cosets = smith
        .cokernel_order(k)
        .ok_or(Error::InfiniteReidemeister { n })?;
    let total = cosets
        .to_usize()
        .and_then(|c| c.checked_mul(p.finite.order()))
        .filter(|&t| t <= ORACLE_ELEMENT_CAP)
        .ok_or_else(|| Error::OracleTooLarge(format!("oracle would enumerate {cosets} cosets times |F| = {}", p.finite.order())))?;

    let left_inv = smith.left.inverse_unimodular()?;
    let mut reps: Vec<Vec<BigInt>> = vec![Vec::new()];
    for d in &smith.diagonal {
        let d = d.to_usize().expect("bounded by cap");
        reps = reps
            .into_iter()
            .flat_map(|u| {
                (0..d).map(move |x| {
                    let mut u = u.clone();
                    u.push(BigInt::from(x));
                    u
                })
            })
            .collect();
    }
    let reps: Vec<Vec<BigInt>> = reps.iter().map(|u| left_inv.mul_vec(u)).collect();

    let f = &p.finite;
    let phi_n = p.phi_f.iterate(n);
    let equivalent = |(v1, f1): (&[BigInt], usize), (v2, f2): (&[BigInt], usize)| -> bool {
        let delta: Vec<BigInt> = v2.iter().zip(v1).map(|(a, b)| a - b).collect();
        let Some(w) = smith.solve(&delta) else {
            return false;
        };
        let twist = p.apply_iterate(n, &w, f.identity()).1;
        let rhs_prefix = f.mul(f2, twist);
        f.elements()
            .any(|h| f.mul(h, f1) == f.mul(rhs_prefix, phi_n.apply(h)))
    };

    // Distinct representatives differ by a vector outside the image of
    // I - M^n, so the solve step can only succeed within one coset.
    let mut classes = 0usize;
    let mut elements = 0;
    for v in &reps {
        let mut class_reps: Vec<usize> = Vec::new();
        for g in f.elements() {
            elements += 1;
            if !class_reps.iter().any(|&rf| equivalent((v, rf), (v, g))) {
                class_reps.push(g);
            }
        }
        classes += class_reps.len();
    }
    debug_assert_eq!(elements, total);
    Ok(BigInt::from(classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, endo_from_generator_images, phi_conjugacy_classes};

    fn klein_swap() -> (FiniteGroup, GroupEndomorphism) {
        let (v4, g) = catalog::klein_four();
        let swap = endo_from_generator_images(&v4, &g, &[g[1], g[0]]).unwrap();
        (v4, swap)
    }

    fn all_routes(p: &ProductEndomorphism, n: u32) -> BigInt {
        let direct = r_product(p, n).unwrap();
        assert_eq!(r_product_oracle(p, n).unwrap(), direct, "oracle, n={n}");
        assert_eq!(r_product_trace(p, n).unwrap(), direct, "trace, n={n}");
        direct
    }

    #[test]
    fn trivial_fibre_reduces_to_lattice() {
        let p = ProductEndomorphism::abelian(IntMatrix::from_i64(&[&[-2]])).unwrap();
        assert_eq!(all_routes(&p, 1), BigInt::from(3));
        assert_eq!(all_routes(&p, 2), BigInt::from(3));
        assert_eq!(all_routes(&p, 3), BigInt::from(9));
    }

    #[test]
    fn klein_swap_times_minus_two() {
        let (v4, swap) = klein_swap();
        let p = ProductEndomorphism::new(IntMatrix::from_i64(&[&[-2]]), v4.clone(), swap.clone(), vec![0]).unwrap();
        assert_eq!(all_routes(&p, 1), BigInt::from(6));
        // swap^2 = id, so R(phi_F^2) = 4 and |1 - 4| = 3
        assert_eq!(all_routes(&p, 2), BigInt::from(12));
    }

    #[test]
    fn nontrivial_psi() {
        let (v4, swap) = klein_swap();
        // psi must commute with the image of phi_F; V4 is abelian
        for psi in 0..4 {
            let p = ProductEndomorphism::new(IntMatrix::from_i64(&[&[-2]]), v4.clone(), swap.clone(), vec![psi]).unwrap();
            for n in 1..=3 {
                all_routes(&p, n);
            }
        }
    }

    #[test]
    fn pure_finite_matches_brute_force() {
        let (s3, g) = catalog::symmetric(3);
        for phi in crate::group::all_endomorphisms(&s3, &g) {
            let p = ProductEndomorphism::finite(s3.clone(), phi.clone()).unwrap();
            let expected = phi_conjugacy_classes(&s3, &phi).class_count();
            assert_eq!(all_routes(&p, 1), BigInt::from(expected));
        }
    }

    #[test]
    fn psi_must_centralise_the_image() {
        let (s3, g) = catalog::symmetric(3);
        let id = GroupEndomorphism::identity(&s3);
        let err = ProductEndomorphism::new(IntMatrix::from_i64(&[&[-2]]), s3, id, vec![g[0]]).unwrap_err();
        assert!(matches!(err, Error::NotAHomomorphism(_)));
    }

    #[test]
    fn iterate_coherence() {
        let (v4, swap) = klein_swap();
        let p = ProductEndomorphism::new(IntMatrix::from_i64(&[&[0, 2], &[1, 0]]), v4, swap, vec![1, 3]).unwrap();
        for n in 1..=4 {
            let it = p.iterate(n).unwrap();
            assert_eq!(r_product(&p, n).unwrap(), r_product(&it, 1).unwrap());
            assert_eq!(r_product_oracle(&p, n).unwrap(), r_product_oracle(&it, 1).unwrap());
        }
    }

    #[test]
    fn infinite_is_reported_with_the_iterate() {
        let p = ProductEndomorphism::abelian(IntMatrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        assert!(r_product(&p, 3).is_ok());
        assert!(matches!(r_product(&p, 4), Err(Error::InfiniteReidemeister { n: 4 })));
        assert!(matches!(r_product_oracle(&p, 4), Err(Error::InfiniteReidemeister { n: 4 })));
        assert!(matches!(r_product_trace(&p, 4), Err(Error::InfiniteReidemeister { n: 4 })));
    }
}
