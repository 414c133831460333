//! Sylow subgroups, `p`-cores, the upper `p`-series and `p`-nilpotence.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::group::{is_power_of, p_part, Group};
use crate::perm::gcd;
use crate::quotient::{quotient, Homomorphism};
use crate::series::{SeriesChain, SeriesKind};
use crate::subgroup::{GroupExt, Subgroup};

/// A Sylow `p`-subgroup, found by climbing normalizers from the trivial
/// subgroup. Returns the trivial subgroup when `p` does not divide `|G|`.
pub fn sylow_p(g: &Arc<Group>, p: u64) -> Subgroup {
    sylow_p_seeded(g, p, 0)
}

/// As [`sylow_p`], scanning candidate elements cyclically from id `seed`.
/// Different seeds may give different (always conjugate) Sylow subgroups.
pub fn sylow_p_seeded(g: &Arc<Group>, p: u64, seed: usize) -> Subgroup {
    let target = p_part(g.order() as u64, p) as usize;
    if target == g.order() {
        return g.whole_subgroup();
    }
    let mut h = g.trivial_subgroup();
    while h.order() < target {
        let n = g.normalizer(&h);
        let step = (0..g.order())
            .map(|i| (i + seed) % g.order())
            .filter(|&x| n.contains(x) && !h.contains(x))
            .find_map(|x| {
                // Order of xH in N/H.
                let mut y = x;
                let mut k = 1u64;
                while !h.contains(y) {
                    y = g.mul(y, x);
                    k += 1;
                }
                is_power_of(k, p).then(|| g.pow(x, k / p))
            })
            .expect("N_G(H)/H has an element of order p while H is not Sylow");
        h.add_generators(&[step]);
    }
    h
}

fn core_by<F: Fn(u64) -> bool>(g: &Arc<Group>, admissible: F) -> Subgroup {
    let mut core = g.trivial_subgroup();
    let classes = g.conjugacy_classes();
    for class in classes.iter() {
        let x = class[0];
        if core.contains(x) || !admissible(g.element_order(x)) {
            continue;
        }
        let ncl = g.normal_closure(&[x]);
        if admissible(ncl.order() as u64) {
            core = core.join(&ncl).expect("same ambient");
        }
    }
    core
}

/// `O_p(G)`, the largest normal `p`-subgroup.
pub fn p_core(g: &Arc<Group>, p: u64) -> Subgroup {
    if g.is_p_group(p) || g.order() == 1 {
        return g.whole_subgroup();
    }
    core_by(g, |n| is_power_of(n, p) || n == 1)
}

/// `O_{p'}(G)`, the largest normal subgroup of order prime to `p`.
pub fn pprime_core(g: &Arc<Group>, p: u64) -> Subgroup {
    if g.is_p_group(p) {
        return g.trivial_subgroup();
    }
    core_by(g, |n| gcd(n, p) == 1)
}

/// The upper `p`-series `1 = K_0 ≤ K_1 ≤ K_2 ≤ …` with `K_1/K_0 = O_{p'}`,
/// `K_2/K_1 = O_p`, alternating. Terms are kept positionally, so trivial
/// factors may repeat a term.
#[derive(Debug, Clone)]
pub struct PSeriesResult {
    pub prime: u64,
    pub chain: SeriesChain,
    pub p_solvable: bool,
    /// Number of nontrivial `p`-factors; `None` when not `p`-solvable.
    pub p_length: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PSeriesSummary {
    pub prime: u64,
    pub orders: Vec<usize>,
    pub p_solvable: bool,
    pub p_length: Option<usize>,
}

impl PSeriesResult {
    /// `O_{p'p}(G)`, the term `K_2`.
    pub fn o_pprime_p(&self) -> &Subgroup {
        &self.chain.terms[2.min(self.chain.terms.len() - 1)]
    }

    /// `O_{p'}(G)`.
    pub fn o_pprime(&self) -> &Subgroup {
        &self.chain.terms[1.min(self.chain.terms.len() - 1)]
    }

    pub fn summary(&self) -> PSeriesSummary {
        PSeriesSummary {
            prime: self.prime,
            orders: self.chain.orders(),
            p_solvable: self.p_solvable,
            p_length: self.p_length,
        }
    }
}

pub fn upper_p_series(g: &Arc<Group>, p: u64) -> Result<PSeriesResult> {
    let mut terms = vec![g.trivial_subgroup()];
    let mut stalls = 0;
    let mut p_step = false;
    loop {
        let k = terms.last().unwrap().clone();
        if k.is_whole() {
            break;
        }
        let (q, f): (Arc<Group>, Homomorphism) = if k.is_trivial() {
            (g.clone(), Homomorphism::identity(g))
        } else {
            quotient(g, &k)?
        };
        let core = if p_step {
            p_core(&q, p)
        } else {
            pprime_core(&q, p)
        };
        let next = f.preimage(&core);
        if next == k {
            stalls += 1;
        } else {
            stalls = 0;
        }
        terms.push(next);
        if stalls >= 2 {
            break;
        }
        p_step = !p_step;
    }
    // Drop trailing terms that did not grow, but keep K_1 so that positions
    // still alternate.
    while terms.len() > 2 && terms[terms.len() - 1] == terms[terms.len() - 2] {
        terms.pop();
    }
    let p_solvable = terms.last().unwrap().is_whole();
    let p_length = p_solvable.then(|| {
        (2..terms.len())
            .step_by(2)
            .filter(|&i| terms[i] != terms[i - 1])
            .count()
    });
    Ok(PSeriesResult {
        prime: p,
        chain: SeriesChain::new(SeriesKind::PUpper, terms),
        p_solvable,
        p_length,
    })
}

/// `G` has a normal `p`-complement.
pub fn is_p_nilpotent(g: &Arc<Group>, p: u64) -> bool {
    let core = pprime_core(g, p);
    core.order() as u64 * p_part(g.order() as u64, p) == g.order() as u64
}
