#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use rzeta::fox::{FreeGroupEndo, FreeWord, Letter};
use rzeta::group::{all_endomorphisms, catalog, endo_from_generator_images, FiniteGroup, GroupEndomorphism};
use rzeta::linalg::{count_eigen_signs, IntMatrix};
use rzeta::reidemeister::{ProductEndomorphism, ORACLE_ELEMENT_CAP};

pub fn finite_catalog() -> Vec<(String, FiniteGroup, Vec<usize>)> {
    let mut out: Vec<(String, FiniteGroup, Vec<usize>)> = (1..=12)
        .map(|n| {
            let (g, gens) = catalog::cyclic(n);
            (format!("C{n}"), g, gens)
        })
        .collect();
    for (name, (g, gens)) in [
        ("V4", catalog::klein_four()),
        ("S3", catalog::symmetric(3)),
        ("S4", catalog::symmetric(4)),
        ("D4", catalog::dihedral(4)),
        ("Q8", catalog::quaternion()),
    ] {
        out.push((name.to_string(), g, gens));
    }
    out
}

/// Every catalog group paired with each of its endomorphisms.
pub fn finite_cases() -> Vec<(String, FiniteGroup, GroupEndomorphism)> {
    let mut out = Vec::new();
    for (name, g, gens) in finite_catalog() {
        for (i, phi) in all_endomorphisms(&g, &gens).into_iter().enumerate() {
            out.push((format!("{name}#{i}"), g.clone(), phi));
        }
    }
    out
}

pub fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

/// Lattice maps with finite Reidemeister numbers for every iterate.
pub fn abelian_catalog() -> Vec<(String, IntMatrix)> {
    vec![
        ("[[-2]]".into(), m(&[&[-2]])),
        ("[[2]]".into(), m(&[&[2]])),
        ("[[3]]".into(), m(&[&[3]])),
        ("[[-3]]".into(), m(&[&[-3]])),
        ("cat map".into(), m(&[&[2, 1], &[1, 1]])),
        ("[[0,2],[1,0]]".into(), m(&[&[0, 2], &[1, 0]])),
        ("[[-2,1],[0,3]]".into(), m(&[&[-2, 1], &[0, 3]])),
        ("[[1,1],[1,2]]".into(), m(&[&[1, 1], &[1, 2]])),
        ("3x3".into(), m(&[&[2, 1, 0], &[0, 2, 1], &[1, 0, 2]])),
        ("singular".into(), m(&[&[0, 0], &[0, 2]])),
    ]
}

fn endo(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> GroupEndomorphism {
    endo_from_generator_images(g, gens, images).expect("test endomorphism")
}

/// Mixed lattice/finite cases used for the zeta, congruence and torsion checks.
pub fn product_catalog() -> Vec<(String, ProductEndomorphism)> {
    let mut out = Vec::new();
    for (name, g, phi) in finite_cases() {
        out.push((name, ProductEndomorphism::finite(g, phi).unwrap()));
    }
    for (name, a) in abelian_catalog() {
        out.push((name, ProductEndomorphism::abelian(a).unwrap()));
    }
    let (v4, g) = catalog::klein_four();
    let swap = endo(&v4, &g, &[g[1], g[0]]);
    out.push((
        "V4 swap x [[-2]]".into(),
        ProductEndomorphism::new(m(&[&[-2]]), v4.clone(), swap.clone(), vec![v4.identity()]).unwrap(),
    ));
    out.push((
        "V4 id x [[-2]], psi".into(),
        ProductEndomorphism::new(m(&[&[-2]]), v4.clone(), GroupEndomorphism::identity(&v4), vec![g[0]]).unwrap(),
    ));
    let (c3, g) = catalog::cyclic(3);
    let inversion = endo(&c3, &g, &[c3.inverse(g[0])]);
    out.push((
        "C3 inv x cat map".into(),
        ProductEndomorphism::new(m(&[&[2, 1], &[1, 1]]), c3, inversion, vec![0, 0]).unwrap(),
    ));
    let (s3, g) = catalog::symmetric(3);
    let inner = GroupEndomorphism::inner(&s3, g[1]);
    out.push((
        "S3 inner x [[3]]".into(),
        ProductEndomorphism::new(m(&[&[3]]), s3, inner, vec![0]).unwrap(),
    ));
    let (q8, g) = catalog::quaternion();
    let cyc = endo(&q8, &g, &[g[1], q8.mul(g[0], g[1])]);
    out.push((
        "Q8 x [[-2,1],[0,3]], psi central".into(),
        ProductEndomorphism::new(m(&[&[-2, 1], &[0, 3]]), q8, cyc, vec![4, 0]).unwrap(),
    ));
    out
}

pub fn random_matrix(rng: &mut ChaCha8Rng, k: usize, bound: i64) -> IntMatrix {
    let entries = (0..k * k).map(|_| rng.random_range(-bound..=bound).into()).collect();
    IntMatrix::new(k, k, entries).unwrap()
}

/// Random `Z^k x F` endomorphism whose first `max_n` iterates all have
/// finite Reidemeister numbers small enough for the coset oracle.
pub fn random_product(rng: &mut ChaCha8Rng, max_n: u32) -> ProductEndomorphism {
    let groups: Vec<(FiniteGroup, Vec<usize>)> = (1..=8)
        .map(catalog::cyclic)
        .chain([
            catalog::klein_four(),
            catalog::symmetric(3),
            catalog::dihedral(4),
            catalog::quaternion(),
        ])
        .collect();
    loop {
        let (g, gens) = groups[rng.random_range(0..groups.len())].clone();
        let endos = all_endomorphisms(&g, &gens);
        let phi = endos[rng.random_range(0..endos.len())].clone();
        let k = rng.random_range(1..=2);
        let a = random_matrix(rng, k, 2);
        if count_eigen_signs(&a).is_err() {
            continue;
        }
        let small = (1..=max_n).all(|n| {
            let d = a.pow(n).unwrap().one_minus().unwrap().det().unwrap();
            let d = d.magnitude().clone();
            d != 0u32.into() && d * g.order() <= ORACLE_ELEMENT_CAP.into()
        });
        if !small {
            continue;
        }
        let image: Vec<usize> = phi.image_of(&g.elements().collect::<Vec<_>>());
        let mut psi = Vec::new();
        for _ in 0..k {
            let allowed: Vec<usize> = g
                .elements()
                .filter(|&x| image.iter().chain(&psi).all(|&y| g.commute(x, y)))
                .collect();
            psi.push(allowed[rng.random_range(0..allowed.len())]);
        }
        return ProductEndomorphism::new(a, g, phi, psi).expect("psi commutes by construction");
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, rank: u32, max_len: usize) -> FreeWord {
    let len = rng.random_range(0..=max_len);
    rzeta::fox::free_reduce((0..len).map(|_| Letter::new(rng.random_range(1..=rank), rng.random_bool(0.5))))
}

pub fn random_free_endo(rng: &mut ChaCha8Rng, rank: u32, max_len: usize) -> FreeGroupEndo {
    let images = (0..rank).map(|_| random_word(rng, rank, max_len)).collect();
    FreeGroupEndo::new(rank, images).unwrap()
}

/// Free-group endomorphisms with known structure.
pub fn free_catalog() -> Vec<(String, FreeGroupEndo)> {
    [
        (2, vec!["ab", "a"]),
        (2, vec!["a", "b"]),
        (1, vec!["a"]),
        (2, vec!["b", "a"]),
        (2, vec!["aab", "bA"]),
        (2, vec!["abAB", "ba"]),
        (3, vec!["bc", "ca", "ab"]),
        (2, vec!["1", "1"]),
        (3, vec!["abc", "B", "cA"]),
    ]
    .into_iter()
    .map(|(r, imgs)| (imgs.join(","), FreeGroupEndo::parse(r, &imgs).unwrap()))
    .collect()
}
