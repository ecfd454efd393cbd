use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

const RELATIVE_TARGET: f64 = 1e-12;
const MAX_ITERATIONS: usize = 200_000;

/// Perron root of a non-negative matrix with a Collatz–Wielandt enclosure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralRadius {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl SpectralRadius {
    const ZERO: Self = Self {
        value: 0.0,
        lower: 0.0,
        upper: 0.0,
    };

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Spectral radius of a square non-negative integer matrix.
///
/// The matrix is split into strongly connected components of its support
/// graph. On each irreducible block, power iteration runs on `A + I`,
/// which is primitive, and the min/max ratios `(Ax)_i / x_i` bracket the
/// root. The result is the largest root over all blocks; a matrix with
/// no cycles in its support is nilpotent and gets 0.
pub fn spectral_radius(a: &IntMatrix) -> Result<SpectralRadius> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.entries().iter().any(Signed::is_negative) {
        return Err(Error::Shape("spectral radius needs a non-negative matrix".into()));
    }
    let n = a.rows();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if !a[(i, j)].is_zero() {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut best = SpectralRadius::ZERO;
    for component in tarjan_scc(&graph) {
        let idx: Vec<usize> = component.iter().map(|v| v.index()).collect();
        if idx.len() == 1 && a[(idx[0], idx[0])].is_zero() {
            continue;
        }
        let block: Vec<Vec<f64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| to_f64(&a[(i, j)])).collect())
            .collect();
        let s = irreducible_radius(&block);
        if s.value > best.value {
            best = s;
        }
    }
    Ok(best)
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

fn irreducible_radius(a: &[Vec<f64>]) -> SpectralRadius {
    let n = a.len();
    let mut x = vec![1.0; n];
    let mut lower = 0.0f64;
    let mut upper = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + (0..n).map(|j| a[i][j] * x[j]).sum::<f64>())
            .collect();
        let (lo, hi) = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| yi / xi)
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        lower = lower.max(lo - 1.0);
        upper = upper.min(hi - 1.0);
        let scale = y.iter().copied().fold(0.0f64, f64::max);
        x = y.into_iter().map(|v| v / scale).collect();
        if upper - lower <= RELATIVE_TARGET * upper.max(1.0) {
            break;
        }
    }
    // absorb accumulated rounding into the enclosure
    let slack = 8.0 * f64::EPSILON * (n as f64) * upper.max(1.0);
    SpectralRadius {
        value: 0.5 * (lower + upper),
        lower: (lower - slack).max(0.0),
        upper: upper + slack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: f64 = 1.618_033_988_749_895;

    #[test]
    fn golden_ratio() {
        let s = spectral_radius(&IntMatrix::from_i64(&[&[1, 1], &[1, 0]])).unwrap();
        assert!((s.value - GOLDEN).abs() < 1e-10);
        assert!(s.lower <= GOLDEN && GOLDEN <= s.upper);
        assert!(s.width() < 1e-9);
    }

    #[test]
    fn identity_and_nilpotent() {
        let s = spectral_radius(&IntMatrix::identity(3)).unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        assert_eq!(spectral_radius(&IntMatrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap().value, 0.0);
        assert_eq!(spectral_radius(&IntMatrix::zeros(0, 0)).unwrap().value, 0.0);
    }

    #[test]
    fn periodic_and_reducible() {
        // a 3-cycle has all eigenvalues on the unit circle
        let cyc = IntMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!((spectral_radius(&cyc).unwrap().value - 1.0).abs() < 1e-10);
        // upper block triangular: blocks with roots 3 and golden
        let m = IntMatrix::from_i64(&[&[3, 5, 7], &[0, 1, 1], &[0, 1, 0]]);
        assert!((spectral_radius(&m).unwrap().value - 3.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_negative_entries() {
        assert!(spectral_radius(&IntMatrix::from_i64(&[&[-1]])).is_err());
    }
}
