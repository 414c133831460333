//! Isomorphism testing for small groups by backtracking over generator
//! images.

use std::sync::Arc;

use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::quotient::Homomorphism;
use crate::subgroup::{GroupExt, Subgroup};

pub const DEFAULT_ISO_CAP: usize = 512;

/// Cheap isomorphism invariants compared before any search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub order: usize,
    pub order_profile: Vec<(u64, usize)>,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: u64,
    pub class_count: usize,
}

impl Invariants {
    pub fn of(g: &Arc<Group>) -> Self {
        Self {
            order: g.order(),
            order_profile: g.order_profile(),
            center_order: g.center().order(),
            derived_order: g.derived_subgroup().order(),
            exponent: g.exponent(),
            class_count: g.conjugacy_classes().len(),
        }
    }
}

/// Greedy generating set: elements of largest order first.
fn small_generating_set(g: &Arc<Group>) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..g.order()).collect();
    ids.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut h = Subgroup::trivial(g);
    let mut gens = Vec::new();
    for x in ids {
        if h.is_whole() {
            break;
        }
        if !h.contains(x) {
            h.add_generators(&[x]);
            gens.push(x);
        }
    }
    gens
}

/// Extends `gens[i] ↦ images[i]` over `⟨gens⟩`, returning the partial table
/// (`u32::MAX` off the subgroup) or `None` on a clash or a collision.
fn extend(a: &Group, b: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
    let mut table = vec![u32::MAX; a.order()];
    let mut hit = vec![false; b.order()];
    table[Group::IDENTITY] = Group::IDENTITY as u32;
    hit[Group::IDENTITY] = true;
    let mut queue = vec![Group::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = a.mul(x, s);
            let fy = b.mul(table[x] as usize, t);
            if table[y] == u32::MAX {
                if std::mem::replace(&mut hit[fy], true) {
                    return None;
                }
                table[y] = fy as u32;
                queue.push(y);
            } else if table[y] as usize != fy {
                return None;
            }
        }
    }
    Some(table)
}

/// An isomorphism `a → b` if one exists.
pub fn find_isomorphism(
    a: &Arc<Group>,
    b: &Arc<Group>,
    cap: usize,
) -> Result<Option<Homomorphism>> {
    for g in [a, b] {
        if g.order() > cap {
            return Err(GroupError::CapExceeded {
                what: "isomorphism test order",
                cap,
            });
        }
    }
    if Invariants::of(a) != Invariants::of(b) {
        return Ok(None);
    }
    let gens = small_generating_set(a);
    let class_size = |g: &Arc<Group>, x: usize| {
        g.conjugacy_classes()
            .class(g.conjugacy_classes().class_of(x))
            .len()
    };
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            (0..b.order())
                .filter(|&y| {
                    b.element_order(y) == a.element_order(s) && class_size(b, y) == class_size(a, s)
                })
                .collect()
        })
        .collect();

    let mut images = Vec::with_capacity(gens.len());
    let table = search(a, b, &gens, &candidates, &mut images);
    Ok(table.map(|table| {
        let gen_images: Vec<usize> = a
            .generator_ids()
            .iter()
            .map(|&s| table[s] as usize)
            .collect();
        Homomorphism::from_generator_images(a, b, &gen_images).expect("extension is a homomorphism")
    }))
}

fn search(
    a: &Group,
    b: &Group,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<u32>> {
    let depth = images.len();
    if depth == gens.len() {
        let table = extend(a, b, gens, images)?;
        return table.iter().all(|&y| y != u32::MAX).then_some(table);
    }
    for &y in &candidates[depth] {
        images.push(y);
        if extend(a, b, &gens[..=depth], images).is_some() {
            if let Some(t) = search(a, b, gens, candidates, images) {
                return Some(t);
            }
        }
        images.pop();
    }
    None
}

pub fn is_isomorphic(a: &Arc<Group>, b: &Arc<Group>) -> Result<bool> {
    Ok(find_isomorphism(a, b, DEFAULT_ISO_CAP)?.is_some())
}
