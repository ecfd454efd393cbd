use num_bigint::BigInt;
use num_traits::One;

use crate::group::{ordinary_conjugacy_classes, ConjugacyPartition, FiniteGroup, GroupEndomorphism};
use crate::linalg::IntMatrix;

/// Matrix of `f -> f ∘ phi` on class functions, in the basis of
/// characteristic functions of conjugacy classes.
///
/// `matrix[(c, c')] = 1` exactly when `phi` sends class `c'` into class `c`,
/// so every column holds a single 1.
#[derive(Clone, Debug)]
pub struct ClassFunctionMap {
    pub matrix: IntMatrix,
    pub classes: ConjugacyPartition,
}

/// Induced map on ordinary conjugacy classes: `class_map[c]` is the class
/// containing `phi(rep_c)`.
pub fn class_map(phi: &GroupEndomorphism, classes: &ConjugacyPartition) -> Vec<usize> {
    classes
        .representatives
        .iter()
        .map(|&g| classes.class_of[phi.apply(g)])
        .collect()
}

/// Number of ordinary classes `<x>` with `<phi(x)> = <x>`.
pub fn r_finite(group: &FiniteGroup, phi: &GroupEndomorphism) -> usize {
    let classes = ordinary_conjugacy_classes(group);
    class_map(phi, &classes)
        .iter()
        .enumerate()
        .filter(|&(c, &d)| c == d)
        .count()
}

pub fn class_function_matrix(group: &FiniteGroup, phi: &GroupEndomorphism) -> ClassFunctionMap {
    let classes = ordinary_conjugacy_classes(group);
    let n = classes.class_count();
    let map = class_map(phi, &classes);
    let mut matrix = IntMatrix::zeros(n, n);
    for (src, &dst) in map.iter().enumerate() {
        matrix[(dst, src)] = BigInt::one();
    }
    ClassFunctionMap { matrix, classes }
}
