//! Subgroups of an enumerated [`Group`], stored as membership masks.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{Group, DEFAULT_ENUMERATION_CAP};
use crate::perm::Permutation;

/// A subgroup of an ambient group.
///
/// Two subgroups compare equal when they have the same ambient group (by
/// pointer) and the same members; generators are not compared.
#[derive(Clone)]
pub struct Subgroup {
    ambient: Arc<Group>,
    members: FixedBitSet,
    /// Not necessarily minimal.
    generators: Vec<usize>,
    order: usize,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("ambient", &self.ambient.label())
            .field("order", &self.order)
            .field("generators", &self.generator_perms())
            .finish()
    }
}

impl Subgroup {
    pub fn trivial(ambient: &Arc<Group>) -> Self {
        let mut members = FixedBitSet::with_capacity(ambient.order());
        members.insert(Group::IDENTITY);
        Self {
            ambient: ambient.clone(),
            members,
            generators: vec![],
            order: 1,
        }
    }

    pub fn whole(ambient: &Arc<Group>) -> Self {
        let mut members = FixedBitSet::with_capacity(ambient.order());
        members.insert_range(..);
        Self {
            ambient: ambient.clone(),
            members,
            generators: ambient.generator_ids().to_vec(),
            order: ambient.order(),
        }
    }

    /// The subgroup generated by the given element ids.
    pub fn generated(ambient: &Arc<Group>, gens: &[usize]) -> Self {
        let mut h = Self::trivial(ambient);
        h.add_generators(gens);
        h
    }

    /// The subgroup generated by the given permutations, which must all be
    /// elements of `ambient`.
    pub fn from_perms(ambient: &Arc<Group>, perms: &[Permutation]) -> Result<Self> {
        let ids = perms
            .iter()
            .map(|p| ambient.id_of(p).ok_or(GroupError::NotMember))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated(ambient, &ids))
    }

    /// Rebuilds a subgroup from a member set known to be closed, choosing a
    /// generating set greedily in id order.
    pub fn from_members(ambient: &Arc<Group>, members: FixedBitSet) -> Self {
        let mut h = Self::trivial(ambient);
        for x in members.ones() {
            if !h.contains(x) {
                h.add_generators(&[x]);
            }
        }
        debug_assert_eq!(h.members, members, "member set is not a subgroup");
        h
    }

    pub(crate) fn from_parts(
        ambient: &Arc<Group>,
        members: FixedBitSet,
        generators: Vec<usize>,
    ) -> Self {
        let order = members.count_ones(..);
        Self {
            ambient: ambient.clone(),
            members,
            generators,
            order,
        }
    }

    /// Adds generators and closes under right multiplication.
    ///
    /// The current member set is already closed under the old generators, so
    /// only products with the new generator can leave it; newly found elements
    /// are then closed under every generator.
    pub fn add_generators(&mut self, new_gens: &[usize]) {
        let g = self.ambient.clone();
        for &s in new_gens {
            if self.members.contains(s) {
                continue;
            }
            self.generators.push(s);
            let old: Vec<usize> = self.members.ones().collect();
            let mut queue = Vec::new();
            for x in old {
                let y = g.mul(x, s);
                if !self.members.put(y) {
                    queue.push(y);
                }
            }
            while let Some(x) = queue.pop() {
                for &t in &self.generators {
                    let y = g.mul(x, t);
                    if !self.members.put(y) {
                        queue.push(y);
                    }
                }
            }
            self.order = self.members.count_ones(..);
        }
    }

    pub fn ambient(&self) -> &Arc<Group> {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn index(&self) -> usize {
        self.ambient.order() / self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.ambient.order()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn member_set(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .map(|&g| self.ambient.element(g).clone())
            .collect()
    }

    pub fn same_ambient(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(GroupError::AmbientMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.same_ambient(other) && self.members.is_subset(&other.members)
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        crate::group::is_power_of(self.order as u64, p)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        Ok(Self::from_members(&self.ambient, members))
    }

    /// `⟨self ∪ other⟩`; equals the product set when either is normal.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let (big, small) = if self.order >= other.order {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        out.add_generators(&small.generators);
        Ok(out)
    }

    /// True when every generator of `over` normalizes `self`.
    pub fn is_normalized_by(&self, over: &Self) -> bool {
        let g = &self.ambient;
        over.generators
            .iter()
            .all(|&s| self.generators.iter().all(|&x| self.contains(g.conj(x, s))))
    }

    /// Normal in `over` (and contained in it).
    pub fn is_normal_in(&self, over: &Self) -> bool {
        self.is_subgroup_of(over) && self.is_normalized_by(over)
    }

    pub fn is_normal(&self) -> bool {
        self.is_normalized_by(&Self::whole(&self.ambient))
    }

    /// `H^g`.
    pub fn conjugate_by(&self, g: usize) -> Self {
        let a = &self.ambient;
        let mut members = FixedBitSet::with_capacity(a.order());
        for x in self.members.ones() {
            members.insert(a.conj(x, g));
        }
        let generators = self.generators.iter().map(|&x| a.conj(x, g)).collect();
        Self::from_parts(a, members, generators)
    }

    /// Smallest subgroup containing `seeds` and normalized by every element
    /// of `conjugators`.
    pub fn normal_closure_under(
        ambient: &Arc<Group>,
        conjugators: &[usize],
        seeds: &[usize],
    ) -> Self {
        let mut h = Self::generated(ambient, seeds);
        loop {
            let mut fresh = Vec::new();
            for &x in &h.generators {
                for &s in conjugators {
                    let y = ambient.conj(x, s);
                    if !h.contains(y) && !fresh.contains(&y) {
                        fresh.push(y);
                    }
                }
            }
            if fresh.is_empty() {
                return h;
            }
            h.add_generators(&fresh);
        }
    }

    /// `[A, B]`: normal closure in `⟨A ∪ B⟩` of the commutators of generator
    /// pairs.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let g = &self.ambient;
        let mut seeds = Vec::new();
        for &a in &self.generators {
            for &b in &other.generators {
                let c = g.comm(a, b);
                if c != Group::IDENTITY {
                    seeds.push(c);
                }
            }
        }
        let mut conjugators = self.generators.clone();
        conjugators.extend_from_slice(&other.generators);
        Ok(Self::normal_closure_under(g, &conjugators, &seeds))
    }

    /// `[N, _t P]`, with `[N, _1 P] = [N, P]`.
    pub fn iterated_commutator(&self, p: &Self, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(GroupError::BadParameter(
                "iterated commutator needs t ≥ 1".into(),
            ));
        }
        let mut acc = self.commutator(p)?;
        for _ in 1..t {
            acc = acc.commutator(p)?;
        }
        Ok(acc)
    }

    /// `⟨x^k : x ∈ self⟩`, over all members.
    pub fn power(&self, k: u64) -> Self {
        let g = &self.ambient;
        let mut h = Self::trivial(g);
        for x in self.members.ones() {
            let y = g.pow(x, k);
            if !h.contains(y) {
                h.add_generators(&[y]);
            }
        }
        h
    }

    /// The derived subgroup `[H, H]`.
    pub fn derived(&self) -> Self {
        self.commutator(self).expect("same ambient")
    }

    /// This subgroup as a group in its own right, on the same points.
    pub fn to_group(&self, label: impl Into<String>) -> Arc<Group> {
        Group::generate(
            label,
            self.ambient.degree(),
            self.generator_perms(),
            DEFAULT_ENUMERATION_CAP.max(self.order),
        )
        .expect("subgroup of an enumerated group")
    }

    /// Maps a subgroup of `self.to_group(..)` back into the ambient group.
    pub fn lift(&self, inner: &Subgroup) -> Self {
        let g = &self.ambient;
        let src = inner.ambient();
        let mut members = FixedBitSet::with_capacity(g.order());
        for x in inner.members() {
            members.insert(
                g.id_of(src.element(x))
                    .expect("inner element lies in ambient"),
            );
        }
        let generators = inner
            .generators
            .iter()
            .map(|&x| {
                g.id_of(src.element(x))
                    .expect("inner element lies in ambient")
            })
            .collect();
        Self::from_parts(g, members, generators)
    }

    /// The subgroup of `group` with the same permutations as `self`.
    /// Fails when some member of `self` is not in `group`.
    pub fn transport(&self, group: &Arc<Group>) -> Result<Self> {
        let src = &self.ambient;
        let mut members = FixedBitSet::with_capacity(group.order());
        for x in self.members() {
            members.insert(group.id_of(src.element(x)).ok_or(GroupError::NotMember)?);
        }
        let generators = self
            .generators
            .iter()
            .map(|&x| group.id_of(src.element(x)).ok_or(GroupError::NotMember))
            .collect::<Result<_>>()?;
        Ok(Self::from_parts(group, members, generators))
    }
}

/// Group-level constructions on an ambient group.
pub trait GroupExt {
    fn trivial_subgroup(&self) -> Subgroup;
    fn whole_subgroup(&self) -> Subgroup;
    /// Smallest normal subgroup containing `seeds`.
    fn normal_closure(&self, seeds: &[usize]) -> Subgroup;
    fn center(&self) -> Subgroup;
    fn centralizer(&self, set: &[usize]) -> Subgroup;
    fn normalizer(&self, h: &Subgroup) -> Subgroup;
    fn derived_subgroup(&self) -> Subgroup;
}

impl GroupExt for Arc<Group> {
    fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trivial(self)
    }

    fn whole_subgroup(&self) -> Subgroup {
        Subgroup::whole(self)
    }

    fn normal_closure(&self, seeds: &[usize]) -> Subgroup {
        Subgroup::normal_closure_under(self, self.generator_ids(), seeds)
    }

    fn center(&self) -> Subgroup {
        self.centralizer(self.generator_ids())
    }

    fn centralizer(&self, set: &[usize]) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if set.iter().all(|&s| self.mul(g, s) == self.mul(s, g)) {
                members.insert(g);
            }
        }
        Subgroup::from_members(self, members)
    }

    fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order());
        for g in 0..self.order() {
            if h.generators().iter().all(|&x| h.contains(self.conj(x, g))) {
                members.insert(g);
            }
        }
        Subgroup::from_members(self, members)
    }

    fn derived_subgroup(&self) -> Subgroup {
        Subgroup::whole(self).derived()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn d8() -> Arc<Group> {
        Group::generate(
            "D8",
            4,
            vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])],
            100,
        )
        .unwrap()
    }

    fn s3() -> Arc<Group> {
        Group::generate(
            "S3",
            3,
            vec![perm(3, &[&[0, 1, 2]]), perm(3, &[&[0, 1]])],
            100,
        )
        .unwrap()
    }

    fn s4() -> Arc<Group> {
        Group::generate(
            "S4",
            4,
            vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])],
            100,
        )
        .unwrap()
    }

    #[test]
    fn normal_closure_examples() {
        let g = s3();
        let t = g.id_of(&perm(3, &[&[0, 1]])).unwrap();
        assert_eq!(g.normal_closure(&[t]).order(), 6);
        assert!(g.normal_closure(&[Group::IDENTITY]).is_trivial());

        let d = d8();
        let r2 = d.id_of(&perm(4, &[&[0, 2], &[1, 3]])).unwrap();
        assert_eq!(d.normal_closure(&[r2]).order(), 2);
    }

    #[test]
    fn commutator_examples() {
        let d = d8();
        let whole = d.whole_subgroup();
        assert!(whole
            .commutator(&d.trivial_subgroup())
            .unwrap()
            .is_trivial());
        let dd = whole.derived();
        assert_eq!(dd.order(), 2);
        assert_eq!(dd, d.center());

        let s = s4();
        assert_eq!(s.derived_subgroup().order(), 12);
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = d8().whole_subgroup();
        let b = d8().whole_subgroup();
        assert_eq!(a.commutator(&b).unwrap_err(), GroupError::AmbientMismatch);
    }

    #[test]
    fn iterated_commutator_of_d8_terminates() {
        let d = d8().whole_subgroup();
        assert_eq!(d.iterated_commutator(&d, 1).unwrap().order(), 2);
        assert!(d.iterated_commutator(&d, 2).unwrap().is_trivial());
        assert!(d.iterated_commutator(&d, 0).is_err());
    }

    #[test]
    fn power_subgroup_uses_all_elements() {
        let d = d8();
        let sq = d.whole_subgroup().power(2);
        assert_eq!(sq, d.center());
        // C2 x C2 has exponent 2.
        let v4 =
            Group::generate("V4", 4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])], 10).unwrap();
        assert!(v4.whole_subgroup().power(2).is_trivial());
    }

    #[test]
    fn normalizer_and_centralizer() {
        let s = s4();
        let whole = s.whole_subgroup();
        assert_eq!(s.normalizer(&whole), whole);
        let d =
            Subgroup::from_perms(&s, &[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]).unwrap();
        assert_eq!(d.order(), 8);
        assert_eq!(s.normalizer(&d), d);

        let dd = d8();
        let r2 = dd.id_of(&perm(4, &[&[0, 2], &[1, 3]])).unwrap();
        assert!(dd.centralizer(&[r2]).is_whole());
    }

    #[test]
    fn lift_round_trip() {
        let s = s4();
        let d =
            Subgroup::from_perms(&s, &[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]).unwrap();
        let dg = d.to_group("D8");
        let z = dg.center();
        let lifted = d.lift(&z);
        assert_eq!(lifted.order(), 2);
        assert!(lifted.is_subgroup_of(&d));
        assert_eq!(lifted.transport(&dg).unwrap(), z);
    }

    #[test]
    fn lagrange_on_s4_cyclic_subgroups() {
        let s = s4();
        for x in 0..s.order() {
            let c = Subgroup::generated(&s, &[x]);
            assert_eq!(s.order() % c.order(), 0);
            assert_eq!(c.order() as u64, s.element_order(x));
        }
    }
}
