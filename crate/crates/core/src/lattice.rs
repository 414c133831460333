//! Enumeration of the normal subgroups of a group.
//!
//! Every normal subgroup is the join of the normal closures of its elements,
//! so the lattice is the join-closure of the element closures. The closure of
//! `x` is generated by the conjugacy class of `x`, and `x^k` for `k` prime to
//! the order of `x` has the same closure, so one closure per class of cyclic
//! subgroups is enough.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::gcd;
use crate::subgroup::Subgroup;

/// Default bound on the number of distinct normal subgroups.
pub const DEFAULT_NORMAL_LATTICE_CAP: usize = 100_000;

/// All normal subgroups, sorted by order and then by member ids. Cached on
/// the group after the first successful call.
pub fn normal_subgroups(g: &Arc<Group>) -> Result<Vec<Subgroup>> {
    if let Some(cached) = g.normal_cache.get() {
        return Ok(cached
            .iter()
            .map(|(m, gens)| Subgroup::from_parts(g, m.clone(), gens.clone()))
            .collect());
    }
    let list = normal_subgroups_capped(g, DEFAULT_NORMAL_LATTICE_CAP)?;
    let _ = g.normal_cache.set(
        list.iter()
            .map(|h| (h.member_set().clone(), h.generators().to_vec()))
            .collect(),
    );
    Ok(list)
}

/// The normal closures `⟨x^G⟩`, one per class of cyclic subgroups,
/// deduplicated.
pub fn element_normal_closures(g: &Arc<Group>) -> Vec<Subgroup> {
    let classes = g.conjugacy_classes();
    let mut done = vec![false; classes.len()];
    let mut seen = FxHashSet::default();
    let mut out = Vec::new();
    for i in 0..classes.len() {
        if done[i] {
            continue;
        }
        let class = classes.class(i);
        let x = class[0];
        let ord = g.element_order(x);
        for k in 1..=ord.max(1) {
            if gcd(k, ord) == 1 {
                done[classes.class_of(g.pow(x, k))] = true;
            }
        }
        let mut h = Subgroup::trivial(g);
        for &y in class {
            if !h.contains(y) {
                h.add_generators(&[y]);
            }
        }
        if seen.insert(h.member_set().clone()) {
            out.push(h);
        }
    }
    out
}

pub fn normal_subgroups_capped(g: &Arc<Group>, cap: usize) -> Result<Vec<Subgroup>> {
    let base = element_normal_closures(g);
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut all = Vec::new();
    let trivial = Subgroup::trivial(g);
    seen.insert(trivial.member_set().clone());
    all.push(trivial);
    for h in &base {
        if seen.insert(h.member_set().clone()) {
            all.push(h.clone());
        }
    }

    let mut idx = 0;
    while idx < all.len() {
        let a = all[idx].clone();
        for b in &base {
            if b.is_subgroup_of(&a) {
                continue;
            }
            let j = a.join(b)?;
            if seen.insert(j.member_set().clone()) {
                all.push(j);
                if all.len() > cap {
                    return Err(GroupError::CapExceeded {
                        what: "normal subgroup lattice",
                        cap,
                    });
                }
            }
        }
        idx += 1;
    }

    all.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    Ok(all)
}

/// Every subgroup, as the join-closure of the cyclic subgroups, sorted like
/// [`normal_subgroups`]. Fails once more than `cap` subgroups are found.
pub fn all_subgroups_capped(g: &Arc<Group>, cap: usize) -> Result<Vec<Subgroup>> {
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut cyclic = Vec::new();
    for x in 0..g.order() {
        let h = Subgroup::generated(g, &[x]);
        if seen.insert(h.member_set().clone()) {
            cyclic.push(h);
        }
    }
    let mut all = cyclic.clone();
    if all.len() > cap {
        return Err(GroupError::CapExceeded {
            what: "subgroup lattice",
            cap,
        });
    }
    let mut idx = 0;
    while idx < all.len() {
        let a = all[idx].clone();
        for c in &cyclic {
            if c.is_subgroup_of(&a) {
                continue;
            }
            let j = a.join(c)?;
            if seen.insert(j.member_set().clone()) {
                all.push(j);
                if all.len() > cap {
                    return Err(GroupError::CapExceeded {
                        what: "subgroup lattice",
                        cap,
                    });
                }
            }
        }
        idx += 1;
    }
    all.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.members().cmp(b.members()))
    });
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn klein_four_has_five() {
        let v4 =
            Group::generate("V4", 4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])], 10).unwrap();
        let normals = normal_subgroups(&v4).unwrap();
        assert_eq!(normals.len(), 5);
        assert_eq!(
            normals.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 2, 2, 2, 4]
        );
    }

    #[test]
    fn d8_has_six() {
        let d = Group::generate(
            "D8",
            4,
            vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])],
            100,
        )
        .unwrap();
        assert_eq!(normal_subgroups(&d).unwrap().len(), 6);
        // Cached path gives the same answer.
        assert_eq!(normal_subgroups(&d).unwrap().len(), 6);
    }

    #[test]
    fn alternating_five_is_simple() {
        let a5 = Group::generate(
            "A5",
            5,
            vec![perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])],
            1000,
        )
        .unwrap();
        assert_eq!(a5.order(), 60);
        let orders: Vec<_> = normal_subgroups(&a5)
            .unwrap()
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(orders, vec![1, 60]);
    }

    #[test]
    fn subgroups_of_s4() {
        let s4 = Group::generate(
            "S4",
            4,
            vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])],
            100,
        )
        .unwrap();
        assert_eq!(all_subgroups_capped(&s4, 1000).unwrap().len(), 30);
        assert!(all_subgroups_capped(&s4, 20).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let v4 =
            Group::generate("V4", 4, vec![perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])], 10).unwrap();
        assert!(matches!(
            normal_subgroups_capped(&v4, 3),
            Err(GroupError::CapExceeded { .. })
        ));
    }
}
