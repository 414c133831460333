//! Powerfully embedded subgroups, `η(P)`, the upper `η`-series, powerful
//! height and class, and potent filtrations.
//!
//! A normal subgroup `N` of a `p`-group `P` is powerfully embedded when
//! `[N, P] ≤ N^{2p}`, with `N^{2p}` the subgroup generated by all `2p`-th
//! powers (for odd `p` this is `N^p`, for `p = 2` it is `N^4`).
//!
//! Computations in a quotient `P/K` are carried out in `P` itself through the
//! correspondence between normal subgroups of `P/K` and normal subgroups of
//! `P` containing `K`: `M/K` is powerfully embedded in `P/K` exactly when
//! `[M, P] ≤ M^{2p} K`. [`EtaLattice`] precomputes `[M, P]`, `M^p` and
//! `M^{2p}` for every normal `M`, after which everything is mask arithmetic.

use std::collections::VecDeque;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::lattice::normal_subgroups;
use crate::series::{upper_central_series, SeriesChain, SeriesKind};
use crate::subgroup::{GroupExt, Subgroup};

fn require_p_group(p_group: &Arc<Group>, p: u64) -> Result<()> {
    if p_group.is_p_group(p) || p_group.order() == 1 {
        Ok(())
    } else {
        Err(GroupError::NotPGroup {
            order: p_group.order(),
            p,
        })
    }
}

/// The normal subgroups of a `p`-group together with their commutators with
/// `P` and their `p`-th and `2p`-th power subgroups, as lattice indices.
///
/// Index 0 is the trivial subgroup and the last index is `P`; indices are
/// sorted by order.
#[derive(Debug, Clone)]
pub struct EtaLattice {
    group: Arc<Group>,
    p: u64,
    subs: Vec<Subgroup>,
    index: FxHashMap<FixedBitSet, usize>,
    comm: Vec<usize>,
    pow_p: Vec<usize>,
    pow_2p: Vec<usize>,
}

impl EtaLattice {
    pub fn new(p_group: &Arc<Group>, p: u64) -> Result<Self> {
        require_p_group(p_group, p)?;
        let subs = normal_subgroups(p_group)?;
        let index: FxHashMap<FixedBitSet, usize> = subs
            .iter()
            .enumerate()
            .map(|(i, h)| (h.member_set().clone(), i))
            .collect();
        let whole = p_group.whole_subgroup();
        let find = |h: &Subgroup| -> Result<usize> {
            index.get(h.member_set()).copied().ok_or_else(|| {
                GroupError::Inconsistent("derived subgroup missing from normal lattice".into())
            })
        };
        let mut comm = Vec::with_capacity(subs.len());
        let mut pow_p = Vec::with_capacity(subs.len());
        let mut pow_2p = Vec::with_capacity(subs.len());
        for h in &subs {
            comm.push(find(&h.commutator(&whole)?)?);
            pow_p.push(find(&h.power(p))?);
            pow_2p.push(find(&h.power(2 * p))?);
        }
        Ok(Self {
            group: p_group.clone(),
            p,
            subs,
            index,
            comm,
            pow_p,
            pow_2p,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subs[i]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subs
    }

    /// Lattice index of a normal subgroup of `P`.
    pub fn index_of(&self, h: &Subgroup) -> Result<usize> {
        if !Arc::ptr_eq(h.ambient(), &self.group) {
            return Err(GroupError::AmbientMismatch);
        }
        self.index
            .get(h.member_set())
            .copied()
            .ok_or(GroupError::NotNormal)
    }

    /// `subs[small] ≤ subs[big]`.
    pub fn le(&self, small: usize, big: usize) -> bool {
        self.subs[small]
            .member_set()
            .is_subset(self.subs[big].member_set())
    }

    /// The product of two normal subgroups: the smallest lattice element
    /// containing both.
    pub fn join(&self, a: usize, b: usize) -> usize {
        if self.le(a, b) {
            return b;
        }
        if self.le(b, a) {
            return a;
        }
        (a.max(b)..self.subs.len())
            .find(|&k| self.le(a, k) && self.le(b, k))
            .expect("P contains every normal subgroup")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        (0..=a.min(b))
            .rev()
            .find(|&k| self.le(k, a) && self.le(k, b))
            .expect("trivial subgroup lies in every normal subgroup")
    }

    pub fn commutator_with_p(&self, i: usize) -> usize {
        self.comm[i]
    }

    /// `[N_i, _t P]`.
    pub fn iterated_commutator(&self, i: usize, t: usize) -> usize {
        (0..t).fold(i, |acc, _| self.comm[acc])
    }

    pub fn power_p(&self, i: usize) -> usize {
        self.pow_p[i]
    }

    pub fn power_2p(&self, i: usize) -> usize {
        self.pow_2p[i]
    }

    /// `M/K` is powerfully embedded in `P/K`, i.e. `[M, P] ≤ M^{2p} K`.
    pub fn is_pe_modulo(&self, m: usize, k: usize) -> bool {
        debug_assert!(self.le(k, m));
        self.le(self.comm[m], self.join(self.pow_2p[m], k))
    }

    pub fn is_powerfully_embedded(&self, i: usize) -> bool {
        self.is_pe_modulo(i, self.trivial())
    }

    /// Preimage of the largest powerfully embedded subgroup of `P/K`
    /// contained in `N/K`, for `K ≤ N`.
    pub fn eta_between(&self, k: usize, n: usize) -> Result<usize> {
        let mut acc = k;
        for m in 0..self.subs.len() {
            if self.le(k, m) && self.le(m, n) && self.is_pe_modulo(m, k) {
                acc = self.join(acc, m);
            }
        }
        if !self.is_pe_modulo(acc, k) {
            return Err(GroupError::Inconsistent(
                "product of powerfully embedded subgroups is not powerfully embedded".into(),
            ));
        }
        Ok(acc)
    }

    /// `η(P)`.
    pub fn eta(&self) -> Result<usize> {
        self.eta_between(self.trivial(), self.whole())
    }

    /// The largest powerfully embedded subgroup of `P` inside `N_i`.
    pub fn eta_relative(&self, n: usize) -> Result<usize> {
        self.eta_between(self.trivial(), n)
    }

    /// The greedy `η`-series of `N_n`: each term is the preimage of the
    /// largest powerfully embedded subgroup of `P/N_i` inside `N_n/N_i`.
    pub fn greedy_eta_series(&self, n: usize) -> Result<Vec<usize>> {
        let mut terms = vec![self.trivial()];
        let mut k = self.trivial();
        while k != n {
            let next = self.eta_between(k, n)?;
            if next == k {
                return Err(GroupError::GreedyStalled {
                    step: terms.len() - 1,
                });
            }
            terms.push(next);
            k = next;
        }
        Ok(terms)
    }

    /// The upper `η`-series `η_0(P) = 1 < η_1(P) < … < P`.
    pub fn upper_eta_series(&self) -> Result<Vec<usize>> {
        self.greedy_eta_series(self.whole())
    }

    /// Powerful height by greedy ascent.
    pub fn powerful_height(&self, n: usize) -> Result<usize> {
        Ok(self.greedy_eta_series(n)?.len() - 1)
    }

    /// Powerful class `pwh_P(P)`.
    pub fn powerful_class(&self) -> Result<usize> {
        self.powerful_height(self.whole())
    }

    /// Powerful height by breadth-first search over all chains of normal
    /// subgroups inside `N_n`.
    pub fn brute_force_pwh(&self, n: usize) -> usize {
        let mut dist = vec![usize::MAX; self.subs.len()];
        dist[self.trivial()] = 0;
        let mut queue = VecDeque::from([self.trivial()]);
        while let Some(k) = queue.pop_front() {
            if k == n {
                return dist[k];
            }
            for m in 0..self.subs.len() {
                if dist[m] == usize::MAX
                    && m != k
                    && self.le(k, m)
                    && self.le(m, n)
                    && self.is_pe_modulo(m, k)
                {
                    dist[m] = dist[k] + 1;
                    queue.push_back(m);
                }
            }
        }
        unreachable!("the greedy series reaches every normal subgroup")
    }

    /// `η_i(P)` for `i` beyond the series length is `P`.
    pub fn eta_term(&self, series: &[usize], i: usize) -> usize {
        series.get(i).copied().unwrap_or(self.whole())
    }

    /// An ascending chain of lattice indices is an `η`-series: starts at 1,
    /// and each factor is powerfully embedded in the corresponding quotient.
    pub fn is_eta_series(&self, chain: &[usize]) -> bool {
        chain.first() == Some(&self.trivial())
            && chain
                .windows(2)
                .all(|w| self.le(w[0], w[1]) && self.is_pe_modulo(w[1], w[0]))
    }

    /// The chain `M_1 = N`, `M_{i+1} = M_i^p N_{p-i-2}` built from an
    /// `η`-series `1 = N_0 ≤ … ≤ N_k = N` with `k < p − 1`, padded by
    /// `N_j = 1` for `j ≤ 0` and `N_j = N` for `j ≥ k`. Ends at 1; terms may
    /// repeat while `p − i − 2 > 0`.
    pub fn prop43_chain(&self, n: usize) -> Result<Vec<usize>> {
        let p = self.p;
        if p <= 3 {
            return Err(GroupError::UnsupportedPrime(p));
        }
        let series = self.greedy_eta_series(n)?;
        let k = series.len() - 1;
        if k as u64 >= p - 1 {
            return Err(GroupError::HypothesisViolated(format!(
                "powerful height {k} is not below p - 1 = {}",
                p - 1
            )));
        }
        let padded = |j: i64| -> usize {
            if j <= 0 {
                self.trivial()
            } else if j as usize >= k {
                n
            } else {
                series[j as usize]
            }
        };
        let mut chain = vec![n];
        let mut i: i64 = 1;
        while *chain.last().unwrap() != self.trivial() {
            let m = *chain.last().unwrap();
            let j = p as i64 - i - 2;
            let next = self.join(self.pow_p[m], padded(j));
            // While N_j is still a padded copy of N (or a later series term)
            // the chain may repeat; once N_j = 1 it must strictly descend.
            if next == m && j <= 0 {
                return Err(GroupError::Inconsistent(format!(
                    "filtration stabilized above 1 at term {i}"
                )));
            }
            chain.push(next);
            i += 1;
        }
        Ok(chain)
    }

    pub fn to_chain(&self, kind: SeriesKind, indices: &[usize]) -> SeriesChain {
        SeriesChain::new(
            kind,
            indices.iter().map(|&i| self.subs[i].clone()).collect(),
        )
    }
}

/// The upper `η`-series of a `p`-group and the quantities derived from it.
#[derive(Debug, Clone)]
pub struct EtaProfile {
    pub prime: u64,
    pub group: Arc<Group>,
    pub eta_series: SeriesChain,
    pub pwc: usize,
    pub small_powerful_class: bool,
    pub is_powerful: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaSummary {
    pub prime: u64,
    pub order: usize,
    pub eta_orders: Vec<usize>,
    pub pwc: usize,
    pub small_powerful_class: bool,
    pub is_powerful: bool,
}

impl EtaProfile {
    pub fn from_lattice(lattice: &EtaLattice) -> Result<Self> {
        let series = lattice.upper_eta_series()?;
        let pwc = series.len() - 1;
        Ok(Self {
            prime: lattice.p,
            group: lattice.group.clone(),
            eta_series: lattice.to_chain(SeriesKind::EtaAscending, &series),
            pwc,
            small_powerful_class: (pwc as u64) < lattice.p,
            is_powerful: pwc <= 1,
        })
    }

    /// `η_i(P)`, equal to `P` past the end of the series.
    pub fn eta_i(&self, i: usize) -> &Subgroup {
        let terms = &self.eta_series.terms;
        &terms[i.min(terms.len() - 1)]
    }

    /// Whether `η_i(P) = Z_i(P)` for every `i`.
    pub fn matches_upper_central_series(&self) -> bool {
        let upper = upper_central_series(&self.group);
        let n = upper.terms.len().max(self.eta_series.terms.len());
        (0..n).all(|i| {
            let z = &upper.terms[i.min(upper.terms.len() - 1)];
            z == self.eta_i(i)
        })
    }

    pub fn summary(&self) -> EtaSummary {
        EtaSummary {
            prime: self.prime,
            order: self.group.order(),
            eta_orders: self.eta_series.orders(),
            pwc: self.pwc,
            small_powerful_class: self.small_powerful_class,
            is_powerful: self.is_powerful,
        }
    }
}

/// `[N, P] ≤ N^{2p}`, computed directly.
pub fn is_powerfully_embedded(n: &Subgroup, p_group: &Arc<Group>, p: u64) -> Result<bool> {
    require_p_group(p_group, p)?;
    if !Arc::ptr_eq(n.ambient(), p_group) {
        return Err(GroupError::AmbientMismatch);
    }
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let comm = n.commutator(&p_group.whole_subgroup())?;
    Ok(comm.is_subgroup_of(&n.power(2 * p)))
}

/// `η(P)`, the product of all powerfully embedded subgroups. Checked to
/// contain `Z(P)`.
pub fn eta(p_group: &Arc<Group>, p: u64) -> Result<Subgroup> {
    let lattice = EtaLattice::new(p_group, p)?;
    let w = lattice.subgroup(lattice.eta()?).clone();
    if !p_group.center().is_subgroup_of(&w) {
        return Err(GroupError::Inconsistent(
            "η(P) does not contain Z(P)".into(),
        ));
    }
    Ok(w)
}

/// The largest powerfully embedded subgroup of `P` contained in `N`.
pub fn eta_relative(n: &Subgroup, p_group: &Arc<Group>, p: u64) -> Result<Subgroup> {
    let lattice = EtaLattice::new(p_group, p)?;
    let i = lattice.index_of(n)?;
    Ok(lattice.subgroup(lattice.eta_relative(i)?).clone())
}

pub fn upper_eta_series(p_group: &Arc<Group>, p: u64) -> Result<EtaProfile> {
    EtaProfile::from_lattice(&EtaLattice::new(p_group, p)?)
}

/// `pwh_P(N)` by greedy ascent.
pub fn powerful_height(n: &Subgroup, p_group: &Arc<Group>, p: u64) -> Result<usize> {
    let lattice = EtaLattice::new(p_group, p)?;
    lattice.powerful_height(lattice.index_of(n)?)
}

/// `pwh_P(N)` by exhaustive search over chains of normal subgroups.
pub fn brute_force_pwh(n: &Subgroup, p_group: &Arc<Group>, p: u64) -> Result<usize> {
    let lattice = EtaLattice::new(p_group, p)?;
    Ok(lattice.brute_force_pwh(lattice.index_of(n)?))
}

/// Outcome of checking a chain against a defining condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChainCheck {
    Holds,
    /// The condition fails for the step from term `i` to term `i + 1`.
    FailsAt(usize),
}

impl ChainCheck {
    pub fn holds(self) -> bool {
        self == Self::Holds
    }
}

/// Checks `1 = N_0 ≤ N_1 ≤ …` with every `N_{i+1}/N_i` powerfully embedded
/// in `P/N_i`, using the condition `[N_{i+1}, P] ≤ N_{i+1}^{2p} N_i`.
pub fn verify_eta_series(chain: &SeriesChain, p_group: &Arc<Group>, p: u64) -> ChainCheck {
    let whole = p_group.whole_subgroup();
    let terms = &chain.terms;
    if terms.is_empty() || !terms[0].is_trivial() {
        return ChainCheck::FailsAt(0);
    }
    for (i, w) in terms.windows(2).enumerate() {
        let (lo, hi) = (&w[0], &w[1]);
        let ok = Arc::ptr_eq(hi.ambient(), p_group)
            && lo.is_subgroup_of(hi)
            && hi.is_normal()
            && lo.is_normal()
            && {
                let comm = hi.commutator(&whole).expect("same ambient");
                let bound = hi.power(2 * p).join(lo).expect("same ambient");
                comm.is_subgroup_of(&bound)
            };
        if !ok {
            return ChainCheck::FailsAt(i);
        }
    }
    ChainCheck::Holds
}

/// Checks `N_1 ≥ N_2 ≥ … ≥ 1` with `[N_i, P] ≤ N_{i+1}` and
/// `[N_i, _t P] ≤ N_{i+1}^p` for every step.
pub fn verify_potent_filtration(
    chain: &SeriesChain,
    p_group: &Arc<Group>,
    p: u64,
    t: usize,
) -> ChainCheck {
    let whole = p_group.whole_subgroup();
    let terms = &chain.terms;
    if t == 0 || terms.is_empty() || !terms.last().unwrap().is_trivial() {
        return ChainCheck::FailsAt(terms.len().saturating_sub(1));
    }
    for (i, w) in terms.windows(2).enumerate() {
        let (hi, lo) = (&w[0], &w[1]);
        let ok = Arc::ptr_eq(hi.ambient(), p_group)
            && lo.is_subgroup_of(hi)
            && hi.is_normal()
            && hi
                .commutator(&whole)
                .expect("same ambient")
                .is_subgroup_of(lo)
            && hi
                .iterated_commutator(&whole, t)
                .expect("same ambient")
                .is_subgroup_of(&lo.power(p));
        if !ok {
            return ChainCheck::FailsAt(i);
        }
    }
    ChainCheck::Holds
}

/// `N ≥ N^2 ≥ N^4 ≥ … ≥ 1` for `N` powerfully embedded in a 2-group;
/// checked to be a potent filtration of type 1.
pub fn potent_filtration_p2(n: &Subgroup, p_group: &Arc<Group>) -> Result<SeriesChain> {
    if !is_powerfully_embedded(n, p_group, 2)? {
        return Err(GroupError::NotPowerfullyEmbedded);
    }
    let mut terms = vec![n.clone()];
    let mut k = 2u64;
    while !terms.last().unwrap().is_trivial() {
        terms.push(n.power(k));
        k *= 2;
    }
    let chain = SeriesChain {
        kind: SeriesKind::PotentDescending,
        terms,
        type_t: Some(1),
    };
    if let ChainCheck::FailsAt(i) = verify_potent_filtration(&chain, p_group, 2, 1) {
        return Err(GroupError::Inconsistent(format!(
            "square filtration fails at step {i}"
        )));
    }
    Ok(chain)
}

/// The filtration `M_1 = N`, `M_{i+1} = M_i^p N_{p-i-2}` for `p > 3` and
/// `pwh_P(N) < p − 1`; checked to be a potent filtration of type `p − 2`.
pub fn potent_filtration_prop43(n: &Subgroup, p_group: &Arc<Group>, p: u64) -> Result<SeriesChain> {
    let lattice = EtaLattice::new(p_group, p)?;
    potent_filtration_prop43_in(&lattice, lattice.index_of(n)?)
}

/// As [`potent_filtration_prop43`], reusing a lattice.
pub fn potent_filtration_prop43_in(lattice: &EtaLattice, n: usize) -> Result<SeriesChain> {
    let p = lattice.prime();
    let indices = lattice.prop43_chain(n)?;
    let mut chain = lattice.to_chain(SeriesKind::PotentDescending, &indices);
    chain.type_t = Some(p as usize - 2);
    if let ChainCheck::FailsAt(i) =
        verify_potent_filtration(&chain, lattice.group(), p, p as usize - 2)
    {
        return Err(GroupError::Inconsistent(format!(
            "constructed filtration fails at step {i}"
        )));
    }
    Ok(chain)
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

    fn c4_in(d: &Arc<Group>) -> Subgroup {
        Subgroup::from_perms(d, &[perm(4, &[&[0, 1, 2, 3]])]).unwrap()
    }

    #[test]
    fn pe_examples_in_d8() {
        let d = d8();
        assert!(is_powerfully_embedded(&d.center(), &d, 2).unwrap());
        assert!(!is_powerfully_embedded(&c4_in(&d), &d, 2).unwrap());
        let s = Subgroup::from_perms(&d, &[perm(4, &[&[0, 2]])]).unwrap();
        assert_eq!(
            is_powerfully_embedded(&s, &d, 2),
            Err(GroupError::NotNormal)
        );
        assert!(matches!(
            is_powerfully_embedded(&d.center(), &d, 3),
            Err(GroupError::NotPGroup { .. })
        ));
    }

    #[test]
    fn eta_of_d8_is_center() {
        let d = d8();
        assert_eq!(eta(&d, 2).unwrap(), d.center());
        assert_eq!(eta_relative(&c4_in(&d), &d, 2).unwrap(), d.center());
        let profile = upper_eta_series(&d, 2).unwrap();
        assert_eq!(profile.pwc, 2);
        assert_eq!(profile.eta_series.orders(), vec![1, 2, 8]);
        assert!(!profile.is_powerful);
        assert!(!profile.small_powerful_class);
    }

    #[test]
    fn heights_in_d8() {
        let d = d8();
        assert_eq!(powerful_height(&c4_in(&d), &d, 2).unwrap(), 2);
        assert_eq!(brute_force_pwh(&c4_in(&d), &d, 2).unwrap(), 2);
        assert_eq!(powerful_height(&d.center(), &d, 2).unwrap(), 1);
        assert_eq!(brute_force_pwh(&d.trivial_subgroup(), &d, 2).unwrap(), 0);
    }

    #[test]
    fn abelian_groups_are_powerful() {
        let c4c2 = Group::generate(
            "C4xC2",
            6,
            vec![perm(6, &[&[0, 1, 2, 3]]), perm(6, &[&[4, 5]])],
            100,
        )
        .unwrap();
        assert!(is_powerfully_embedded(&c4c2.whole_subgroup(), &c4c2, 2).unwrap());
        let profile = upper_eta_series(&c4c2, 2).unwrap();
        assert_eq!(profile.pwc, 1);
        assert!(profile.is_powerful);
    }

    #[test]
    fn eta_series_checks() {
        let d = d8();
        let bad = SeriesChain::new(
            SeriesKind::EtaAscending,
            vec![d.trivial_subgroup(), c4_in(&d), d.whole_subgroup()],
        );
        assert_eq!(verify_eta_series(&bad, &d, 2), ChainCheck::FailsAt(0));
        let good = upper_eta_series(&d, 2).unwrap().eta_series;
        assert!(verify_eta_series(&good, &d, 2).holds());
    }

    #[test]
    fn central_exponent_p_filtration() {
        let d = d8();
        let chain = SeriesChain::new(
            SeriesKind::PotentDescending,
            vec![d.center(), d.trivial_subgroup()],
        );
        assert!(verify_potent_filtration(&chain, &d, 2, 1).holds());
        let chain = SeriesChain::new(
            SeriesKind::PotentDescending,
            vec![c4_in(&d), d.trivial_subgroup()],
        );
        assert_eq!(
            verify_potent_filtration(&chain, &d, 2, 1),
            ChainCheck::FailsAt(0)
        );
        assert_eq!(
            potent_filtration_p2(&c4_in(&d), &d).unwrap_err(),
            GroupError::NotPowerfullyEmbedded
        );
        let z = potent_filtration_p2(&d.center(), &d).unwrap();
        assert_eq!(z.orders(), vec![2, 1]);
    }

    #[test]
    fn type_p_minus_two_chain_needs_p_above_three() {
        let d = d8();
        assert_eq!(
            potent_filtration_prop43(&d.center(), &d, 2).unwrap_err(),
            GroupError::UnsupportedPrime(2)
        );
    }
}
