//! Small named groups, each returned with a generating set.

use crate::group::{group_from_permutations, FiniteGroup, DEFAULT_ORDER_CAP};

fn perm_group(degree: usize, gens: Vec<Vec<usize>>) -> (FiniteGroup, Vec<usize>) {
    let g = group_from_permutations(degree, &gens, DEFAULT_ORDER_CAP).expect("catalog generators are valid");
    let idx = gens
        .iter()
        .map(|p| g.element_of_permutation(p).expect("generator is in its closure"))
        .collect();
    (g, idx)
}

fn rotation(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// Cyclic group of order `n` acting on `n` points.
pub fn cyclic(n: usize) -> (FiniteGroup, Vec<usize>) {
    assert!(n >= 1);
    if n == 1 {
        return (FiniteGroup::trivial(), Vec::new());
    }
    perm_group(n, vec![rotation(n)])
}

pub fn klein_four() -> (FiniteGroup, Vec<usize>) {
    perm_group(4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]])
}

/// Symmetric group on `n` letters, generated by an `n`-cycle and a
/// transposition.
pub fn symmetric(n: usize) -> (FiniteGroup, Vec<usize>) {
    assert!(n >= 2);
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    perm_group(n, vec![rotation(n), swap])
}

/// Dihedral group of order `2n` (symmetries of an `n`-gon), `n >= 3`.
pub fn dihedral(n: usize) -> (FiniteGroup, Vec<usize>) {
    assert!(n >= 3);
    let reflection = (0..n).map(|i| (n - i) % n).collect();
    perm_group(n, vec![rotation(n), reflection])
}

/// Quaternion group `{±1, ±i, ±j, ±k}`; element `4s + u` is `(-1)^s * unit[u]`
/// with units `1, i, j, k`. Generated by `i` and `j`.
pub fn quaternion() -> (FiniteGroup, Vec<usize>) {
    // unit products as (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (s, u) = UNIT[a % 4][b % 4];
                    4 * ((s + a / 4 + b / 4) % 2) + u
                })
                .collect()
        })
        .collect();
    let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let g = FiniteGroup::from_table(table)
        .and_then(|g| g.with_names(names))
        .expect("quaternion table is a group");
    (g, vec![1, 2])
}

/// Looks up a catalog group: `C<n>` (or `Z<n>`), `V4`, `S<n>`, `D<n>` for the
/// symmetries of an `n`-gon, and `Q8`. Returns `None` for unknown names and
/// for symmetric groups above `S7`.
pub fn by_name(name: &str) -> Option<(FiniteGroup, Vec<usize>)> {
    match name {
        "V4" => return Some(klein_four()),
        "Q8" => return Some(quaternion()),
        _ => {}
    }
    let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
    let n: usize = tail.parse().ok()?;
    match head {
        "C" | "Z" if n >= 1 => Some(cyclic(n)),
        "S" if (2..=7).contains(&n) => Some(symmetric(n)),
        "D" if n >= 3 => Some(dihedral(n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ordinary_conjugacy_classes;

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("D4").unwrap().0.order(), 8);
        assert_eq!(by_name("Z5").unwrap().0.order(), 5);
        assert_eq!(by_name("S3").unwrap().0.order(), 6);
        assert!(by_name("Q8").is_some());
        assert!(by_name("D2").is_none());
        assert!(by_name("X4").is_none());
        assert!(by_name("").is_none());
    }

    #[test]
    fn orders_and_class_counts() {
        let cases: Vec<(&str, (FiniteGroup, Vec<usize>), usize, usize)> = vec![
            ("C1", cyclic(1), 1, 1),
            ("C12", cyclic(12), 12, 12),
            ("V4", klein_four(), 4, 4),
            ("S3", symmetric(3), 6, 3),
            ("S4", symmetric(4), 24, 5),
            ("D4", dihedral(4), 8, 5),
            ("Q8", quaternion(), 8, 5),
        ];
        for (name, (g, gens), order, classes) in cases {
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.subgroup_closure(&gens).len(), order, "{name} generators");
            assert_eq!(ordinary_conjugacy_classes(&g).class_count(), classes, "{name}");
        }
    }

    #[test]
    fn quaternion_relations() {
        let (q, _) = quaternion();
        let (i, j, k, minus_one) = (1, 2, 3, 4);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), 4 + k);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.name(q.mul(k, k)), "-1");
    }
}
