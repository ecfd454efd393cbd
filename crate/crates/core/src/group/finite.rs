use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Default cap on the order of a permutation closure.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// A finite group given by its full multiplication table.
///
/// Elements are `0..order`. `mult[g * order + h]` is the index of `g h`.
/// When the group was built from permutations, the permutation of each
/// element is kept so callers can translate between the two views.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
    names: Option<Vec<String>>,
    permutations: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    /// Builds a group from a Cayley table, checking all group axioms.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut mult = Vec::with_capacity(order * order);
        for row in &table {
            if row.len() != order || row.iter().any(|&x| x >= order) {
                return Err(Error::InvalidGroup("table is not square over 0..order".into()));
            }
            mult.extend(row.iter().map(|&x| x as u32));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mult[e * order + g] as usize == g && mult[g * order + e] as usize == g))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let h = (0..order)
                .find(|&h| mult[g * order + h] as usize == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
            inv[g] = h as u32;
        }
        let group = Self {
            order,
            mult,
            inv,
            identity,
            names: None,
            permutations: None,
        };
        group.check_axioms()?;
        Ok(group)
    }

    pub fn trivial() -> Self {
        Self {
            order: 1,
            mult: vec![0],
            inv: vec![0],
            identity: 0,
            names: None,
            permutations: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::InvalidGroup(format!(
                "{} names for a group of order {}",
                names.len(),
                self.order
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Full O(order^3) check of associativity, identity and inverses.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for g in 0..n {
            if self.mul(self.identity, g) != g || self.mul(g, self.identity) != g {
                return Err(Error::InvalidGroup(format!("identity fails on {g}")));
            }
            let gi = self.inverse(g);
            if self.mul(g, gi) != self.identity || self.mul(gi, g) != self.identity {
                return Err(Error::InvalidGroup(format!("inverse of {g} is wrong")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!("({a} {b}) {c} != {a} ({b} {c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mult[g * self.order + h] as usize
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, g: usize) -> String {
        match &self.names {
            Some(n) => n[g].clone(),
            None => g.to_string(),
        }
    }

    /// `g^e` for any integer exponent.
    pub fn pow(&self, g: usize, e: i64) -> usize {
        let ord = self.element_order(g) as i64;
        let e = e.rem_euclid(ord);
        (0..e).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn commute(&self, g: usize, h: usize) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|g| self.elements().all(|h| self.commute(g, h)))
    }

    /// Elements of the subgroup generated by `gens`, in ascending order.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Greedy generating set: scan elements, keep those outside the
    /// subgroup generated so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = vec![self.identity];
        let mut by_order: Vec<usize> = self.elements().collect();
        by_order.sort_by_key(|&g| std::cmp::Reverse(self.element_order(g)));
        for g in by_order {
            if current.len() == self.order {
                break;
            }
            if current.binary_search(&g).is_err() {
                gens.push(g);
                current = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    /// Re-indexes a subgroup (given by its elements) as a standalone group.
    /// Returns the group and the embedding `new index -> old index`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut embedding = elements.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        // identity first
        let pos = embedding
            .iter()
            .position(|&x| x == self.identity)
            .ok_or_else(|| Error::InvalidGroup("subgroup misses the identity".into()))?;
        embedding[..=pos].rotate_right(1);
        let index: HashMap<usize, usize> = embedding.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table = embedding
            .iter()
            .map(|&a| {
                embedding
                    .iter()
                    .map(|&b| {
                        index
                            .get(&self.mul(a, b))
                            .copied()
                            .ok_or_else(|| Error::InvalidGroup("subset is not closed".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sub = FiniteGroup::from_table(table)?;
        if let Some(names) = &self.names {
            sub.names = Some(embedding.iter().map(|&g| names[g].clone()).collect());
        }
        if let Some(perms) = &self.permutations {
            sub.permutations = Some(embedding.iter().map(|&g| perms[g].clone()).collect());
        }
        Ok((sub, embedding))
    }

    /// Permutation of element `g`, when the group came from permutations.
    pub fn permutation(&self, g: usize) -> Option<&[usize]> {
        self.permutations.as_ref().map(|p| p[g].as_slice())
    }

    /// Element index of a permutation, when the group came from permutations.
    pub fn element_of_permutation(&self, perm: &[usize]) -> Option<usize> {
        let perms = self.permutations.as_ref()?;
        perms.binary_search_by(|p| p.as_slice().cmp(perm)).ok()
    }
}

fn check_permutation(degree: usize, p: &[usize]) -> Result<()> {
    if p.len() != degree {
        return Err(Error::NotAPermutation(format!(
            "{p:?} has length {} but the degree is {degree}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || seen[x] {
            return Err(Error::NotAPermutation(format!("{p:?} is not a bijection of 0..{degree}")));
        }
        seen[x] = true;
    }
    Ok(())
}

/// `(a * b)(x) = a(b(x))`: apply `b` first.
fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// Closure of a set of permutations as a multiplication table.
///
/// Elements are ordered by their image tuples, so the identity is element 0.
/// Products follow function composition: `g h` applies `h` first.
pub fn group_from_permutations(
    degree: usize,
    generators: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup> {
    for g in generators {
        check_permutation(degree, g)?;
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::from([(id.clone(), ())]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = compose(&x, g);
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(Error::ClosureTooLarge { cap });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    let mut perms: Vec<Vec<usize>> = seen.into_keys().collect();
    perms.sort_unstable();
    let order = perms.len();
    let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut mult = Vec::with_capacity(order * order);
    for a in &perms {
        for b in &perms {
            mult.push(index[compose(a, b).as_slice()] as u32);
        }
    }
    let mut inv = vec![0u32; order];
    for (i, p) in perms.iter().enumerate() {
        let mut q = vec![0; degree];
        for (x, &y) in p.iter().enumerate() {
            q[y] = x;
        }
        inv[i] = index[q.as_slice()] as u32;
    }
    Ok(FiniteGroup {
        order,
        mult,
        inv,
        identity: 0,
        names: None,
        permutations: Some(perms),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three() {
        let g = group_from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.permutation(0), Some(&[0, 1, 2][..]));
        g.check_axioms().unwrap();
        assert!(!g.is_abelian());
    }

    #[test]
    fn trivial_closure() {
        let g = group_from_permutations(1, &[], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn klein_four_is_elementary_abelian() {
        let g = group_from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.elements().all(|x| g.inverse(x) == x));
        assert!(g.is_abelian());
    }

    #[test]
    fn malformed_permutations() {
        assert!(matches!(
            group_from_permutations(3, &[vec![0, 0, 1]], DEFAULT_ORDER_CAP),
            Err(Error::NotAPermutation(_))
        ));
        assert!(matches!(
            group_from_permutations(3, &[vec![0, 1]], DEFAULT_ORDER_CAP),
            Err(Error::NotAPermutation(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let s4 = [vec![1, 2, 3, 0], vec![1, 0, 2, 3]];
        assert!(matches!(group_from_permutations(4, &s4, 10), Err(Error::ClosureTooLarge { cap: 10 })));
        assert_eq!(group_from_permutations(4, &s4, 24).unwrap().order(), 24);
    }

    #[test]
    fn composition_convention() {
        let g = group_from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_ORDER_CAP).unwrap();
        let a = g.element_of_permutation(&[1, 2, 0]).unwrap();
        let b = g.element_of_permutation(&[1, 0, 2]).unwrap();
        // a(b(x)): b swaps 0,1 then a rotates
        assert_eq!(g.permutation(g.mul(a, b)), Some(&[2, 1, 0][..]));
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        let z3 = FiniteGroup::from_table((0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect()).unwrap();
        assert_eq!(z3.element_order(1), 3);
        assert_eq!(z3.pow(1, -1), 2);
    }

    #[test]
    fn subgroup_reindexing() {
        let z6 = FiniteGroup::from_table((0..6).map(|i| (0..6).map(|j| (i + j) % 6).collect()).collect()).unwrap();
        let (h, emb) = z6.subgroup(&[4, 2, 0]).unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(emb, vec![0, 2, 4]);
        assert!(z6.subgroup(&[0, 1]).is_err());
    }

    #[test]
    fn generating_sets_generate() {
        let s4 = group_from_permutations(4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], DEFAULT_ORDER_CAP).unwrap();
        let gens = s4.generating_set();
        assert_eq!(s4.subgroup_closure(&gens).len(), 24);
    }
}
