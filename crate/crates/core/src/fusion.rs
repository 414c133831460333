//! Closure conditions, focal subgroups, the transfer into `P/P'`, control of
//! transfer and of fusion.
//!
//! Two notions used here are operational:
//! - `H ≥ P` *controls transfer* when `P ∩ G' = P ∩ H'`;
//! - `W` *strongly controls fusion* when for every subgroup `A ≤ P` and every
//!   `g` with `A^g ≤ P` there are `c ∈ C_G(A)` and `n ∈ N_G(W)` with
//!   `g = cn`. Only subgroups `A` are checked, not arbitrary subsets.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::corpus::wreath_cpcp;
use crate::error::{GroupError, Result};
use crate::group::{p_part, Group};
use crate::iso::is_isomorphic;
use crate::lattice::{all_subgroups_capped, normal_subgroups};
use crate::psylow::sylow_p;
use crate::quotient::{quotient, right_cosets};
use crate::subgroup::{GroupExt, Subgroup};

/// Default bound on the number of subgroups of `P` scanned for fusion.
pub const DEFAULT_FUSION_SUBGROUP_CAP: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    Weak,
    Strong,
}

/// Outcome of a closure scan. On failure, `witness` holds the first `g` (by
/// element id) violating the condition and the conjugate `W^g`.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub subject: Subgroup,
    pub kind: ClosureKind,
    pub holds: bool,
    pub witness: Option<(usize, Subgroup)>,
}

fn check_inside(w: &Subgroup, p: &Subgroup) -> Result<()> {
    if !w.same_ambient(p) {
        return Err(GroupError::AmbientMismatch);
    }
    if !w.is_subgroup_of(p) {
        return Err(GroupError::BadParameter("W is not contained in P".into()));
    }
    Ok(())
}

/// Every `G`-conjugate of `W` lying in `P` equals `W`. `G` is the common
/// ambient group.
pub fn is_weakly_closed(w: &Subgroup, p: &Subgroup) -> Result<ClosureReport> {
    check_inside(w, p)?;
    let g = w.ambient();
    let witness = (0..g.order()).find_map(|x| {
        let conj: Vec<usize> = w.generators().iter().map(|&s| g.conj(s, x)).collect();
        let inside = conj.iter().all(|&c| p.contains(c));
        let equal = conj.iter().all(|&c| w.contains(c));
        (inside && !equal).then(|| (x, w.conjugate_by(x)))
    });
    Ok(ClosureReport {
        subject: w.clone(),
        kind: ClosureKind::Weak,
        holds: witness.is_none(),
        witness,
    })
}

/// `W^g ∩ P ≤ W` for every `g ∈ G`.
pub fn is_strongly_closed(w: &Subgroup, p: &Subgroup) -> Result<ClosureReport> {
    check_inside(w, p)?;
    let g = w.ambient();
    let members: Vec<usize> = w.members().collect();
    let witness = (0..g.order()).find_map(|x| {
        members
            .iter()
            .any(|&m| {
                let c = g.conj(m, x);
                p.contains(c) && !w.contains(c)
            })
            .then(|| (x, w.conjugate_by(x)))
    });
    Ok(ClosureReport {
        subject: w.clone(),
        kind: ClosureKind::Strong,
        holds: witness.is_none(),
        witness,
    })
}

fn require_sylow(p_sub: &Subgroup) -> Result<u64> {
    let g = p_sub.ambient();
    let order = p_sub.order() as u64;
    if order == 1 {
        // The trivial subgroup is Sylow for every prime not dividing |G|;
        // the prime is irrelevant to the computations below.
        return Ok(1);
    }
    let p = crate::group::smallest_prime_factor(order);
    if !p_sub.is_p_group(p) || p_part(g.order() as u64, p) != order {
        return Err(GroupError::NotSylow {
            order: p_sub.order(),
            p,
        });
    }
    Ok(p)
}

/// `⟨x⁻¹ y : x, y ∈ P, y conjugate to x in G⟩`.
pub fn focal_fusion_form(p_sub: &Subgroup) -> Subgroup {
    let g = p_sub.ambient();
    let classes = g.conjugacy_classes();
    let mut focal = Subgroup::trivial(g);
    for x in p_sub.members() {
        let xi = g.inv(x);
        for &y in classes.class(classes.class_of(x)) {
            if p_sub.contains(y) {
                let q = g.mul(xi, y);
                if !focal.contains(q) {
                    focal.add_generators(&[q]);
                }
            }
        }
    }
    focal
}

/// The focal subgroup `P ∩ G'` of a Sylow subgroup `P`, cross-checked against
/// the subgroup generated by `G`-fusion inside `P`.
pub fn focal_subgroup(p_sub: &Subgroup) -> Result<Subgroup> {
    require_sylow(p_sub)?;
    let g = p_sub.ambient();
    let direct = p_sub.intersection(&g.derived_subgroup())?;
    if direct != focal_fusion_form(p_sub) {
        return Err(GroupError::Inconsistent(
            "P ∩ G' differs from the fusion-generated focal subgroup".into(),
        ));
    }
    Ok(direct)
}

/// Right cosets `Px` of `P` inside `H ≥ P`: the coset index of every member
/// of `H` (`u32::MAX` elsewhere) and the smallest member of each coset.
fn cosets_within(h: &Subgroup, p_sub: &Subgroup) -> (Vec<u32>, Vec<usize>) {
    let g = h.ambient();
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    let members: Vec<usize> = p_sub.members().collect();
    for x in h.members() {
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

/// The transfer `H → P/P'` for `P ≤ H`, relative to a right transversal of
/// `P` in `H`. Values are reported as the smallest element id of the coset
/// `P'x`.
#[derive(Debug, Clone)]
pub struct TransferData {
    pub transversal: Vec<usize>,
    /// `(element id, value)` for every member of `H`, by element id.
    pub values: Vec<(usize, usize)>,
}

/// Computes transfer values for a fixed transversal.
#[derive(Debug, Clone)]
pub struct Transfer {
    big: Subgroup,
    p_sub: Subgroup,
    derived_coset: Vec<u32>,
    derived_reps: Vec<usize>,
    coset_of: Vec<u32>,
    transversal: Vec<usize>,
}

impl Transfer {
    /// Transfer from `H` into `P/P'`. The representative of the `i`-th
    /// coset `P r_i` is `m r_i` with `m` the member of `P` at position
    /// `offset mod |P|`; different offsets give different transversals.
    pub fn new(h: &Subgroup, p_sub: &Subgroup, offset: usize) -> Result<Self> {
        if !h.same_ambient(p_sub) {
            return Err(GroupError::AmbientMismatch);
        }
        if !p_sub.is_subgroup_of(h) {
            return Err(GroupError::BadParameter("P is not contained in H".into()));
        }
        let g = h.ambient();
        let (coset_of, reps) = cosets_within(h, p_sub);
        let members: Vec<usize> = p_sub.members().collect();
        let m = members[offset % members.len()];
        let transversal = reps.iter().map(|&r| g.mul(m, r)).collect();
        let (derived_coset, derived_reps) = right_cosets(&p_sub.derived());
        Ok(Self {
            big: h.clone(),
            p_sub: p_sub.clone(),
            derived_coset,
            derived_reps,
            coset_of,
            transversal,
        })
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// Canonical representative of `xP'` for `x ∈ P`.
    pub fn canonical(&self, x: usize) -> usize {
        self.derived_reps[self.derived_coset[x] as usize]
    }

    /// `∏ t_i g t_{j(i)}⁻¹ mod P'` where `t_i g ∈ P t_{j(i)}`.
    pub fn value(&self, x: usize) -> usize {
        let g = self.big.ambient();
        let mut acc = Group::IDENTITY;
        for &t in &self.transversal {
            let tg = g.mul(t, x);
            let j = self.coset_of[tg] as usize;
            let h = g.mul(tg, g.inv(self.transversal[j]));
            debug_assert!(self.p_sub.contains(h));
            acc = g.mul(acc, h);
        }
        self.canonical(acc)
    }

    pub fn data(&self) -> TransferData {
        TransferData {
            transversal: self.transversal.clone(),
            values: self.big.members().map(|x| (x, self.value(x))).collect(),
        }
    }

    /// `V(xs) = V(x)V(s)` for every `x ∈ H` and every generator `s` of `H`,
    /// which forces `V` to be a homomorphism.
    pub fn is_homomorphism(&self) -> bool {
        let g = self.big.ambient();
        let gens = self.big.generators();
        let gen_values: Vec<usize> = gens.iter().map(|&s| self.value(s)).collect();
        self.big.members().all(|x| {
            let vx = self.value(x);
            gens.iter()
                .zip(&gen_values)
                .all(|(&s, &vs)| self.value(g.mul(x, s)) == self.canonical(g.mul(vx, vs)))
        })
    }

    /// The image of the transfer, as the subgroup of `P` it generates
    /// together with `P'`.
    pub fn image(&self) -> Subgroup {
        let mut img = self.p_sub.derived();
        for &s in self.big.generators() {
            let v = self.value(s);
            if !img.contains(v) {
                img.add_generators(&[v]);
            }
        }
        img
    }
}

/// The transfer `G → P/P'` of a single element with the default transversal.
pub fn transfer(p_sub: &Subgroup, x: usize) -> Result<usize> {
    let whole = p_sub.ambient().whole_subgroup();
    Ok(Transfer::new(&whole, p_sub, 0)?.value(x))
}

/// A Sylow `p`-subgroup of `G` inside `H`, found in `H` itself.
pub fn sylow_inside(h: &Subgroup, p: u64) -> Result<Subgroup> {
    let g = h.ambient();
    let inner = h.to_group(format!("{}≤", g.label()));
    let s = h.lift(&sylow_p(&inner, p));
    if s.order() as u64 != p_part(g.order() as u64, p) {
        return Err(GroupError::SylowNotInside { p });
    }
    Ok(s)
}

/// `P ∩ G' = P ∩ H'` for a Sylow `p`-subgroup `P` of `G` chosen inside `H`.
pub fn controls_transfer(h: &Subgroup, p: u64) -> Result<bool> {
    let g = h.ambient();
    let s = sylow_inside(h, p)?;
    let lhs = s.intersection(&g.derived_subgroup())?;
    let rhs = s.intersection(&h.derived())?;
    Ok(lhs == rhs)
}

/// Some quotient of the `p`-group `P` is isomorphic to `C_p ≀ C_p`. Decided
/// for `p ∈ {2, 3}` only.
pub fn has_cpwrcp_quotient(p_group: &Arc<Group>, p: u64) -> Result<bool> {
    if p != 2 && p != 3 {
        return Err(GroupError::UnsupportedPrime(p));
    }
    if !p_group.is_p_group(p) && p_group.order() != 1 {
        return Err(GroupError::NotPGroup {
            order: p_group.order(),
            p,
        });
    }
    let target_order = (p as usize).pow(p as u32 + 1);
    if p_group.order() < target_order || !p_group.order().is_multiple_of(target_order) {
        return Ok(false);
    }
    let wreath = wreath_cpcp(p)?;
    for n in normal_subgroups(p_group)? {
        if n.index() != target_order {
            continue;
        }
        let (q, _) = quotient(p_group, &n)?;
        if is_isomorphic(&q, &wreath)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The first subgroup `A ≤ P` and element `g` with `A^g ≤ P` but
/// `g ∉ C_G(A) N_G(W)`, if any.
pub fn fusion_control_failure(
    w: &Subgroup,
    p_sub: &Subgroup,
    cap: usize,
) -> Result<Option<(Subgroup, usize)>> {
    check_inside(w, p_sub)?;
    let g = w.ambient();
    let n = g.normalizer(w);
    if n.is_whole() {
        return Ok(None);
    }
    let inner = p_sub.to_group(format!("{}≤", g.label()));
    let subgroups = all_subgroups_capped(&inner, cap)?;
    // g ∈ C·N exactly when the left coset gN is some cN with c ∈ C; the
    // left coset of x is the right coset of x⁻¹, inverted.
    let (right_coset, reps) = right_cosets(&n);
    let left = |x: usize| right_coset[g.inv(x)] as usize;
    for a_inner in &subgroups {
        let a = p_sub.lift(a_inner);
        let c = g.centralizer(a.generators());
        let mut allowed = FixedBitSet::with_capacity(reps.len());
        for x in c.members() {
            allowed.insert(left(x));
        }
        for x in 0..g.order() {
            if a.generators().iter().all(|&s| p_sub.contains(g.conj(s, x)))
                && !allowed.contains(left(x))
            {
                return Ok(Some((a, x)));
            }
        }
    }
    Ok(None)
}

pub fn strongly_controls_fusion(w: &Subgroup, p_sub: &Subgroup, cap: usize) -> Result<bool> {
    Ok(fusion_control_failure(w, p_sub, cap)?.is_none())
}

/// Both sides of `P ∩ G' = ⟨P ∩ N_G(P)', P ∩ (P')^g : g ∈ G⟩` for a Sylow
/// `p`-subgroup `P`, as `(left, right)`.
pub fn gruen_first_sides(g: &Arc<Group>, p: u64) -> Result<(Subgroup, Subgroup)> {
    let s = sylow_p(g, p);
    let lhs = s.intersection(&g.derived_subgroup())?;
    let mut rhs = s.intersection(&g.normalizer(&s).derived())?;
    let pd = s.derived();
    for x in 0..g.order() {
        let t = s.intersection(&pd.conjugate_by(x))?;
        if !t.is_subgroup_of(&rhs) {
            rhs = rhs.join(&t)?;
        }
    }
    Ok((lhs, rhs))
}

pub fn verify_gruen_first(g: &Arc<Group>, p: u64) -> Result<bool> {
    let (lhs, rhs) = gruen_first_sides(g, p)?;
    Ok(lhs == rhs)
}
