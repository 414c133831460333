//! Finite permutation groups with fully enumerated element sets.
//!
//! Every element of a [`Group`] is addressed by a dense id (`usize`), with
//! the identity at id 0. Products go through the permutations themselves and
//! a hash lookup back to ids, so no multiplication table is ever stored.

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// Default bound on the number of elements a group may have.
pub const DEFAULT_ENUMERATION_CAP: usize = 200_000;

/// A finite permutation group given by generators.
pub struct Group {
    label: String,
    degree: usize,
    generators: Vec<Permutation>,
    generator_ids: Vec<usize>,
    elements: Vec<Permutation>,
    lookup: FxHashMap<Permutation, u32>,
    inverses: Vec<u32>,
    classes: OnceLock<ConjugacyClasses>,
    pub(crate) normal_cache: OnceLock<Vec<(fixedbitset::FixedBitSet, Vec<usize>)>>,
}

/// Conjugacy classes, listed in order of their smallest element id.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    classes: Vec<Vec<usize>>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.classes.iter().map(Vec::as_slice)
    }
}

impl Group {
    /// Enumerates the group generated by `gens` on `degree` points by a
    /// breadth-first search from the identity under right multiplication.
    pub fn generate(
        label: impl Into<String>,
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<Arc<Self>> {
        if degree == 0 {
            return Err(GroupError::BadParameter("degree must be positive".into()));
        }
        if cap == 0 {
            return Err(GroupError::BadParameter(
                "enumeration cap must be positive".into(),
            ));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }

        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut lookup = FxHashMap::default();
        lookup.insert(identity, 0u32);
        let mut head = 0;
        let mut buf = vec![0u32; degree];
        while head < elements.len() {
            for g in &gens {
                elements[head].compose_into(g, &mut buf);
                if !lookup.contains_key(buf.as_slice()) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded {
                            what: "group enumeration",
                            cap,
                        });
                    }
                    let p = Permutation::from_images_unchecked(buf.clone().into_boxed_slice());
                    lookup.insert(p.clone(), elements.len() as u32);
                    elements.push(p);
                }
            }
            head += 1;
        }

        let inverses = elements
            .iter()
            .map(|e| lookup[e.inverse().images()])
            .collect();
        let generator_ids = gens.iter().map(|g| lookup[g.images()] as usize).collect();

        Ok(Arc::new(Self {
            label: label.into(),
            degree,
            generators: gens,
            generator_ids,
            elements,
            lookup,
            inverses,
            classes: OnceLock::new(),
            normal_cache: OnceLock::new(),
        }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[usize] {
        &self.generator_ids
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn id_of(&self, perm: &Permutation) -> Option<usize> {
        self.lookup.get(perm.images()).map(|&i| i as usize)
    }

    pub const IDENTITY: usize = 0;

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let mut buf: SmallVec<[u32; 32]> = SmallVec::from_elem(0, self.degree);
        self.elements[a].compose_into(&self.elements[b], &mut buf);
        self.lookup[buf.as_slice()] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// `x^g = g⁻¹ x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        self.lookup[self.elements[x].pow(k).images()] as usize
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.elements[x].order()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generator_ids;
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Returns `Some(p)` if the order is a power of the prime `p` (the trivial
    /// group counts as a `p`-group for every `p`, reported as `None`).
    pub fn prime_of_p_group(&self) -> Option<u64> {
        prime_power_base(self.order() as u64)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order() as u64, p)
    }

    /// Conjugacy classes, computed on first use.
    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n {
                if class_of[start] != u32::MAX {
                    continue;
                }
                let idx = classes.len() as u32;
                class_of[start] = idx;
                let mut class = vec![start];
                let mut queue = VecDeque::from([start]);
                while let Some(x) = queue.pop_front() {
                    for &g in &self.generator_ids {
                        let y = self.conj(x, g);
                        if class_of[y] == u32::MAX {
                            class_of[y] = idx;
                            class.push(y);
                            queue.push_back(y);
                        }
                    }
                }
                class.sort_unstable();
                classes.push(class);
            }
            ConjugacyClasses { class_of, classes }
        })
    }

    /// Multiset of element orders as a sorted `(order, count)` list.
    pub fn order_profile(&self) -> Vec<(u64, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for e in &self.elements {
            *counts.entry(e.order()).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .fold(1, |acc, e| crate::perm::lcm(acc, e.order()))
    }

    /// The same group under a different label.
    pub fn relabeled(self: &Arc<Self>, label: impl Into<String>) -> Arc<Self> {
        Arc::new(Self {
            label: label.into(),
            degree: self.degree,
            generators: self.generators.clone(),
            generator_ids: self.generator_ids.clone(),
            elements: self.elements.clone(),
            lookup: self.lookup.clone(),
            inverses: self.inverses.clone(),
            classes: OnceLock::new(),
            normal_cache: OnceLock::new(),
        })
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

pub(crate) fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// The prime `p` with `n = p^k`, `k ≥ 1`.
pub(crate) fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    is_power_of(n, p).then_some(p)
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn cyclic_generator() {
        let g = Group::generate("C3", 3, vec![perm(3, &[&[0, 1, 2]])], 100).unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let g = Group::generate("1", 1, vec![], 100).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn dihedral_of_square() {
        let g = Group::generate(
            "D8",
            4,
            vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])],
            100,
        )
        .unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert_eq!(g.conjugacy_classes().len(), 5);
    }

    #[test]
    fn cap_and_degree_errors() {
        let s4 = vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])];
        assert_eq!(
            Group::generate("S4", 4, s4, 10).unwrap_err(),
            GroupError::CapExceeded {
                what: "group enumeration",
                cap: 10
            }
        );
        let bad = vec![perm(4, &[&[0, 1]]), perm(3, &[&[0, 1]])];
        assert!(matches!(
            Group::generate("x", 4, bad, 10),
            Err(GroupError::DegreeMismatch {
                expected: 4,
                found: 3
            })
        ));
    }

    #[test]
    fn element_arithmetic_is_consistent() {
        let g = Group::generate(
            "S4",
            4,
            vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])],
            100,
        )
        .unwrap();
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), Group::IDENTITY);
            for b in 0..g.order() {
                let c = g.comm(a, b);
                assert_eq!(g.element(c), &g.element(a).commutator(g.element(b)));
            }
        }
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(prime_divisors(120), vec![2, 3, 5]);
        assert_eq!(prime_power_base(81), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert!(is_prime(7) && !is_prime(9));
    }
}
