//! Chains of normal subgroups and the central series.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::group::Group;
use crate::subgroup::{GroupExt, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    EtaAscending,
    PotentDescending,
    CentralUpper,
    CentralLower,
    PUpper,
}

impl SeriesKind {
    pub fn is_ascending(self) -> bool {
        matches!(self, Self::EtaAscending | Self::CentralUpper | Self::PUpper)
    }
}

/// An ascending or descending chain of subgroups of one ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesChain {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    /// Type of a potent filtration.
    pub type_t: Option<usize>,
}

impl SeriesChain {
    pub fn new(kind: SeriesKind, terms: Vec<Subgroup>) -> Self {
        Self {
            kind,
            terms,
            type_t: None,
        }
    }

    /// Number of steps, i.e. one less than the number of terms.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }

    /// Consecutive terms nest in the direction of the kind.
    pub fn is_nested(&self) -> bool {
        self.terms.windows(2).all(|w| {
            if self.kind.is_ascending() {
                w[0].is_subgroup_of(&w[1])
            } else {
                w[1].is_subgroup_of(&w[0])
            }
        })
    }

    pub fn all_normal(&self) -> bool {
        self.terms.iter().all(Subgroup::is_normal)
    }
}

/// `Z_{i+1} = {x : [x, g] ∈ Z_i for every generator g}`, run until it stops
/// growing. Ends at `G` exactly when `G` is nilpotent.
pub fn upper_central_series(g: &Arc<Group>) -> SeriesChain {
    let mut terms = vec![g.trivial_subgroup()];
    loop {
        let current = terms.last().unwrap();
        let mut members = FixedBitSet::with_capacity(g.order());
        for x in 0..g.order() {
            if g.generator_ids()
                .iter()
                .all(|&s| current.contains(g.comm(x, s)))
            {
                members.insert(x);
            }
        }
        if members == *current.member_set() {
            break;
        }
        terms.push(Subgroup::from_members(g, members));
    }
    SeriesChain::new(SeriesKind::CentralUpper, terms)
}

/// `γ_1 = G`, `γ_{i+1} = [γ_i, G]`, run until it stops shrinking.
pub fn lower_central_series(g: &Arc<Group>) -> SeriesChain {
    let whole = g.whole_subgroup();
    let mut terms = vec![whole.clone()];
    loop {
        let next = terms
            .last()
            .unwrap()
            .commutator(&whole)
            .expect("same ambient");
        if next == *terms.last().unwrap() {
            break;
        }
        let done = next.is_trivial();
        terms.push(next);
        if done {
            break;
        }
    }
    SeriesChain::new(SeriesKind::CentralLower, terms)
}

/// Nilpotency class, or `None` when the group is not nilpotent. The trivial
/// group has class 0.
pub fn nilpotency_class(g: &Arc<Group>) -> Option<usize> {
    let lower = lower_central_series(g);
    lower
        .terms
        .last()
        .unwrap()
        .is_trivial()
        .then(|| lower.length())
}
