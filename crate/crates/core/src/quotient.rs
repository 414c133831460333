//! Homomorphisms and quotient groups realized as coset actions.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{Group, DEFAULT_ENUMERATION_CAP};
use crate::perm::Permutation;
use crate::subgroup::Subgroup;

/// A group homomorphism stored as a table on source element ids.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    source: Arc<Group>,
    target: Arc<Group>,
    table: Vec<u32>,
}

impl Homomorphism {
    pub fn identity(g: &Arc<Group>) -> Self {
        Self {
            source: g.clone(),
            target: g.clone(),
            table: (0..g.order() as u32).collect(),
        }
    }

    /// Extends an assignment of images of the source generators along the
    /// Cayley graph. Returns `None` if the assignment is inconsistent, i.e.
    /// does not define a homomorphism.
    pub fn from_generator_images(
        source: &Arc<Group>,
        target: &Arc<Group>,
        images: &[usize],
    ) -> Option<Self> {
        let gens = source.generator_ids();
        assert_eq!(gens.len(), images.len());
        let mut table = vec![u32::MAX; source.order()];
        table[Group::IDENTITY] = Group::IDENTITY as u32;
        let mut queue = vec![Group::IDENTITY];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&s, &t) in gens.iter().zip(images) {
                let y = source.mul(x, s);
                let fy = target.mul(table[x] as usize, t) as u32;
                if table[y] == u32::MAX {
                    table[y] = fy;
                    queue.push(y);
                } else if table[y] != fy {
                    return None;
                }
            }
        }
        Some(Self {
            source: source.clone(),
            target: target.clone(),
            table,
        })
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x] as usize
    }

    /// Exhaustive check of `f(xy) = f(x) f(y)`.
    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        (0..s.order()).all(|x| {
            (0..s.order()).all(|y| self.apply(s.mul(x, y)) == t.mul(self.apply(x), self.apply(y)))
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.target.order());
        self.table.iter().all(|&y| !seen.put(y as usize))
    }

    pub fn kernel(&self) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.source.order());
        for (x, &y) in self.table.iter().enumerate() {
            if y as usize == Group::IDENTITY {
                members.insert(x);
            }
        }
        Subgroup::from_members(&self.source, members)
    }

    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = h.generators().iter().map(|&x| self.apply(x)).collect();
        Subgroup::generated(&self.target, &gens)
    }

    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.source.order());
        for (x, &y) in self.table.iter().enumerate() {
            if h.contains(y as usize) {
                members.insert(x);
            }
        }
        Subgroup::from_members(&self.source, members)
    }
}

/// Right cosets `Nx` of `n`: returns the coset index of every element and one
/// representative per coset (the smallest id).
pub fn right_cosets(n: &Subgroup) -> (Vec<u32>, Vec<usize>) {
    let g = n.ambient();
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    let members: Vec<usize> = n.members().collect();
    for x in 0..g.order() {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let idx = reps.len() as u32;
        for &m in &members {
            coset_of[g.mul(m, x)] = idx;
        }
        reps.push(x);
    }
    (coset_of, reps)
}

/// `G/N` as the permutation group induced on the right cosets of `N`,
/// together with the projection.
pub fn quotient(g: &Arc<Group>, n: &Subgroup) -> Result<(Arc<Group>, Homomorphism)> {
    if !Arc::ptr_eq(n.ambient(), g) {
        return Err(GroupError::AmbientMismatch);
    }
    if !n.is_normal() {
        return Err(GroupError::NotNormal);
    }
    let (coset_of, reps) = right_cosets(n);
    let index = reps.len();
    let qgens: Vec<Permutation> = g
        .generator_ids()
        .iter()
        .map(|&s| {
            let images = reps.iter().map(|&r| coset_of[g.mul(r, s)]).collect();
            Permutation::from_images(images).expect("coset action is a bijection")
        })
        .collect();
    let label = format!("{}/[{}]", g.label(), n.order());
    let q = Group::generate(label, index, qgens, DEFAULT_ENUMERATION_CAP.max(index))?;
    let images: Vec<usize> = (0..g.generator_ids().len())
        .map(|i| q.generator_ids()[i])
        .collect();
    let hom = Homomorphism::from_generator_images(g, &q, &images)
        .expect("coset action is a homomorphism");
    debug_assert_eq!(q.order(), index);
    Ok((q, hom))
}
