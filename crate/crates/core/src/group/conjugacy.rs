use crate::error::Result;
use crate::group::{FiniteGroup, GroupEndomorphism};

/// A partition of a group into (twisted) conjugacy classes.
///
/// Class ids are assigned in order of each class's smallest element, which
/// is also its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyPartition {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count()];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(move |&(_, &c)| c == class)
            .map(|(g, _)| g)
    }
}

/// Orbits of the action `gamma . alpha = gamma alpha phi(gamma)^-1`,
/// found by applying every `gamma` to every unclassified element.
fn orbits(group: &FiniteGroup, phi: &GroupEndomorphism) -> ConjugacyPartition {
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for alpha in group.elements() {
        if class_of[alpha] != usize::MAX {
            continue;
        }
        let id = representatives.len();
        representatives.push(alpha);
        for gamma in group.elements() {
            let beta = group.mul(group.mul(gamma, alpha), group.inverse(phi.apply(gamma)));
            class_of[beta] = id;
        }
    }
    ConjugacyPartition {
        class_of,
        representatives,
    }
}

pub fn ordinary_conjugacy_classes(group: &FiniteGroup) -> ConjugacyPartition {
    orbits(group, &GroupEndomorphism::identity(group))
}

/// Brute-force phi-conjugacy classes; the class count is `R(phi)`.
pub fn phi_conjugacy_classes(group: &FiniteGroup, phi: &GroupEndomorphism) -> ConjugacyPartition {
    orbits(group, phi)
}

/// The stable image `H = phi^n(G)` with `phi` restricted to it.
#[derive(Clone, Debug)]
pub struct EventualImage {
    pub group: FiniteGroup,
    pub endo: GroupEndomorphism,
    /// `embedding[h]` is the element of the ambient group for `h` in `H`.
    pub embedding: Vec<usize>,
    /// Number of iterations until the image stabilised.
    pub steps: usize,
}

pub fn eventual_image(group: &FiniteGroup, phi: &GroupEndomorphism) -> Result<EventualImage> {
    let mut current: Vec<usize> = group.elements().collect();
    let mut steps = 0;
    loop {
        let next = phi.image_of(&current);
        if next.len() == current.len() {
            break;
        }
        current = next;
        steps += 1;
    }
    let (sub, embedding) = group.subgroup(&current)?;
    let mut position = vec![usize::MAX; group.order()];
    for (i, &g) in embedding.iter().enumerate() {
        position[g] = i;
    }
    let restricted = embedding.iter().map(|&g| position[phi.apply(g)]).collect();
    let endo = GroupEndomorphism::from_table(&sub, restricted)?;
    Ok(EventualImage {
        group: sub,
        endo,
        embedding,
        steps,
    })
}
