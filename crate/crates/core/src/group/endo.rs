use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// An endomorphism stored as its full element table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupEndomorphism {
    image: Vec<u32>,
}

impl GroupEndomorphism {
    /// Wraps a full image table after checking the homomorphism property.
    pub fn from_table(group: &FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != group.order() || image.iter().any(|&x| x >= group.order()) {
            return Err(Error::NotAHomomorphism(format!(
                "image table must map 0..{} into itself",
                group.order()
            )));
        }
        let endo = Self {
            image: image.into_iter().map(|x| x as u32).collect(),
        };
        endo.check_homomorphism(group)?;
        Ok(endo)
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Self {
            image: (0..group.order() as u32).collect(),
        }
    }

    /// Sends everything to the identity.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self {
            image: vec![group.identity() as u32; group.order()],
        }
    }

    /// Conjugation `x -> g x g^-1`.
    pub fn inner(group: &FiniteGroup, g: usize) -> Self {
        let gi = group.inverse(g);
        Self {
            image: group
                .elements()
                .map(|x| group.mul(group.mul(g, x), gi) as u32)
                .collect(),
        }
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g] as usize
    }

    pub fn table(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    pub fn check_homomorphism(&self, group: &FiniteGroup) -> Result<()> {
        if self.apply(group.identity()) != group.identity() {
            return Err(Error::NotAHomomorphism("identity is not fixed".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                if self.apply(group.mul(g, h)) != group.mul(self.apply(g), self.apply(h)) {
                    return Err(Error::NotAHomomorphism(format!(
                        "phi({g} {h}) != phi({g}) phi({h})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
        }
    }

    /// `phi^n`; `n = 0` gives the identity.
    pub fn iterate(&self, n: u32) -> Self {
        let mut out = Self {
            image: (0..self.image.len() as u32).collect(),
        };
        for _ in 0..n {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        for &x in &self.image {
            if std::mem::replace(&mut seen[x as usize], true) {
                return false;
            }
        }
        true
    }

    /// Sorted image set `phi(S)` of a set of elements.
    pub fn image_of(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&g| self.apply(g)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Extends generator images to an endomorphism by walking the Cayley graph.
///
/// Every edge `x -> x g` is checked, not only spanning-tree edges, so a
/// consistent assignment is automatically a homomorphism.
pub fn endo_from_generator_images(
    group: &FiniteGroup,
    generators: &[usize],
    images: &[usize],
) -> Result<GroupEndomorphism> {
    if generators.len() != images.len() {
        return Err(Error::NotAHomomorphism(format!(
            "{} generators but {} images",
            generators.len(),
            images.len()
        )));
    }
    if let Some(&bad) = generators.iter().chain(images).find(|&&x| x >= group.order()) {
        return Err(Error::NotAHomomorphism(format!("element {bad} is out of range")));
    }
    let mut image: Vec<Option<usize>> = vec![None; group.order()];
    image[group.identity()] = Some(group.identity());
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = image[x].expect("queued elements have images");
        for (&g, &fg) in generators.iter().zip(images) {
            let y = group.mul(x, g);
            let fy = group.mul(fx, fg);
            match image[y] {
                Some(prev) if prev != fy => {
                    return Err(Error::NotAHomomorphism(format!(
                        "element {y} would map to both {prev} and {fy}"
                    )));
                }
                Some(_) => {}
                None => {
                    image[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    let reached = image.iter().filter(|x| x.is_some()).count();
    if reached != group.order() {
        return Err(Error::DoesNotGenerate {
            closure: reached,
            order: group.order(),
        });
    }
    let endo = GroupEndomorphism {
        image: image.into_iter().map(|x| x.unwrap() as u32).collect(),
    };
    debug_assert!(endo.check_homomorphism(group).is_ok());
    Ok(endo)
}

/// Every endomorphism of `group`, found by trying all image tuples for
/// the given generators. Exponential in the number of generators.
pub fn all_endomorphisms(group: &FiniteGroup, generators: &[usize]) -> Vec<GroupEndomorphism> {
    let n = group.order();
    let k = generators.len();
    let mut out = Vec::new();
    let mut images = vec![0usize; k];
    loop {
        if let Ok(e) = endo_from_generator_images(group, generators, &images) {
            out.push(e);
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            images[i] += 1;
            if images[i] < n {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn identity_from_generators() {
        let (s3, gens) = catalog::symmetric(3);
        let e = endo_from_generator_images(&s3, &gens, &gens).unwrap();
        assert_eq!(e, GroupEndomorphism::identity(&s3));
    }

    #[test]
    fn klein_swap() {
        let (v4, gens) = catalog::klein_four();
        let swap = endo_from_generator_images(&v4, &gens, &[gens[1], gens[0]]).unwrap();
        assert!(swap.is_bijective());
        assert_ne!(swap, GroupEndomorphism::identity(&v4));
        assert_eq!(swap.iterate(2), GroupEndomorphism::identity(&v4));
    }

    #[test]
    fn doubling_on_cyclic_six() {
        let (c6, gens) = catalog::cyclic(6);
        let g = gens[0];
        let g2 = c6.mul(g, g);
        let d = endo_from_generator_images(&c6, &gens, &[g2]).unwrap();
        assert_eq!(d.image_of(&c6.elements().collect::<Vec<_>>()).len(), 3);
        assert_eq!(d.iterate(1), d);
        assert_eq!(d.iterate(2).apply(g), c6.pow(g, 4));
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let (c6, gens) = catalog::cyclic(6);
        // a 3-cycle cannot map to a transposition
        let (s3, sgens) = catalog::symmetric(3);
        let transposition = sgens[1];
        assert!(matches!(
            endo_from_generator_images(&s3, &sgens, &[transposition, transposition]),
            Err(Error::NotAHomomorphism(_))
        ));
        let g2 = c6.mul(gens[0], gens[0]);
        assert!(matches!(
            endo_from_generator_images(&c6, &[g2], &[g2]),
            Err(Error::DoesNotGenerate { closure: 3, order: 6 })
        ));
    }

    #[test]
    fn endomorphism_counts() {
        // |End(Z/n)| = n, |End(V4)| = 16, |End(S3)| = 10
        let (c12, g) = catalog::cyclic(12);
        assert_eq!(all_endomorphisms(&c12, &g).len(), 12);
        let (v4, g) = catalog::klein_four();
        assert_eq!(all_endomorphisms(&v4, &g).len(), 16);
        let (s3, g) = catalog::symmetric(3);
        assert_eq!(all_endomorphisms(&s3, &g).len(), 10);
    }

    #[test]
    fn inner_automorphisms_are_homomorphisms() {
        let (s3, _) = catalog::symmetric(3);
        for g in s3.elements() {
            GroupEndomorphism::inner(&s3, g).check_homomorphism(&s3).unwrap();
        }
    }
}
