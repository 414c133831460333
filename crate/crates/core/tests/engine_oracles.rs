//! Cross-checks of the group engine against slower, independent methods.

use std::sync::Arc;

use proptest::prelude::*;

use powclass::corpus::{regular_embedding, standard_corpus, symmetric, wreath_cpcp, CorpusEntry};
use powclass::fusion::{focal_fusion_form, focal_subgroup, gruen_first_sides, Transfer};
use powclass::iso::is_isomorphic;
use powclass::lattice::{all_subgroups_capped, normal_subgroups};
use powclass::powerful::{eta, is_powerfully_embedded, verify_eta_series, EtaLattice};
use powclass::psylow::{p_core, sylow_p, sylow_p_seeded};
use powclass::quotient::{quotient, Homomorphism};
use powclass::series::{SeriesChain, SeriesKind};
use powclass::{Group, GroupExt, Subgroup};

fn corpus() -> Vec<CorpusEntry> {
    standard_corpus().unwrap()
}

/// `⟨[a, b] : a ∈ A, b ∈ B⟩` over all pairs.
fn all_pairs_commutator(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let g = a.ambient();
    let mut h = Subgroup::trivial(g);
    for x in a.members() {
        for y in b.members() {
            let c = g.comm(x, y);
            if !h.contains(c) {
                h.add_generators(&[c]);
            }
        }
    }
    h
}

/// Sylow subgroups of every corpus group at every prime of interest, as
/// groups, plus the corpus p-groups themselves.
fn p_groups(max_order: usize) -> Vec<(Arc<Group>, u64)> {
    let mut out = Vec::new();
    for e in corpus() {
        for &p in &e.primes {
            let s = sylow_p(&e.group, p);
            if s.order() > 1 && s.order() <= max_order {
                let pg = if s.is_whole() {
                    e.group.clone()
                } else {
                    s.to_group(format!("Syl{p}({})", e.label()))
                };
                out.push((pg, p));
            }
        }
    }
    out
}

#[test]
fn commutator_matches_all_pairs_on_normal_subgroups() {
    let mut pairs = 0;
    for e in corpus().into_iter().filter(|e| e.group.order() <= 128) {
        let normals = normal_subgroups(&e.group).unwrap();
        for a in &normals {
            for b in &normals {
                assert_eq!(
                    a.commutator(b).unwrap(),
                    all_pairs_commutator(a, b),
                    "{}",
                    e.label()
                );
                pairs += 1;
            }
        }
    }
    assert!(pairs > 1000, "{pairs}");
}

#[test]
fn commutator_matches_all_pairs_on_all_subgroups_of_small_groups() {
    for e in corpus().into_iter().filter(|e| e.group.order() <= 24) {
        let subs = all_subgroups_capped(&e.group, 10_000).unwrap();
        for a in &subs {
            for b in &subs {
                assert_eq!(
                    a.commutator(b).unwrap(),
                    all_pairs_commutator(a, b),
                    "{}",
                    e.label()
                );
            }
        }
    }
}

fn arb_ids(order: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..order, 1..4)
}

proptest! {
    #[test]
    fn commutator_oracle_random_subgroups(a in arb_ids(81), b in arb_ids(81)) {
        let g = wreath_cpcp(3).unwrap();
        let a = Subgroup::generated(&g, &a);
        let b = Subgroup::generated(&g, &b);
        prop_assert_eq!(a.commutator(&b).unwrap(), all_pairs_commutator(&a, &b));
    }

    #[test]
    fn normal_closure_is_smallest_normal_overgroup(xs in arb_ids(24)) {
        let g = symmetric(4).unwrap();
        let ncl = g.normal_closure(&xs);
        prop_assert!(ncl.is_normal());
        for n in normal_subgroups(&g).unwrap() {
            if xs.iter().all(|&x| n.contains(x)) {
                prop_assert!(ncl.is_subgroup_of(&n));
            }
        }
    }
}

#[test]
fn normal_subgroups_match_exhaustive_filter() {
    for e in corpus().into_iter().filter(|e| e.group.order() <= 64) {
        let fast = normal_subgroups(&e.group).unwrap();
        let slow: Vec<Subgroup> = all_subgroups_capped(&e.group, 100_000)
            .unwrap()
            .into_iter()
            .filter(Subgroup::is_normal)
            .collect();
        assert_eq!(fast, slow, "{}", e.label());
    }
}

#[test]
fn eta_matches_exhaustive_subgroup_scan() {
    for (pg, p) in p_groups(64) {
        let mut join = pg.trivial_subgroup();
        for h in all_subgroups_capped(&pg, 100_000).unwrap() {
            if h.is_normal() && is_powerfully_embedded(&h, &pg, p).unwrap() {
                join = join.join(&h).unwrap();
            }
        }
        assert_eq!(eta(&pg, p).unwrap(), join, "{}", pg.label());
    }
}

/// The upper `η`-series by explicit quotients: `η_{i+1}` is the preimage of
/// `η(P/η_i)` computed in the coset-action group `P/η_i`.
fn upper_eta_by_quotients(pg: &Arc<Group>, p: u64) -> Vec<Subgroup> {
    let mut terms = vec![pg.trivial_subgroup()];
    while !terms.last().unwrap().is_whole() {
        let k = terms.last().unwrap();
        let (q, f): (Arc<Group>, Homomorphism) = quotient(pg, k).unwrap();
        let e = eta(&q, p).unwrap();
        let next = f.preimage(&e);
        assert_ne!(&next, k, "η of a nontrivial p-group is nontrivial");
        terms.push(next);
    }
    terms
}

#[test]
fn upper_eta_series_matches_quotient_route() {
    for (pg, p) in p_groups(243) {
        let lat = EtaLattice::new(&pg, p).unwrap();
        let fast: Vec<Subgroup> = lat
            .upper_eta_series()
            .unwrap()
            .iter()
            .map(|&i| lat.subgroup(i).clone())
            .collect();
        assert_eq!(fast, upper_eta_by_quotients(&pg, p), "{}", pg.label());
        let chain = SeriesChain::new(SeriesKind::EtaAscending, fast);
        assert!(verify_eta_series(&chain, &pg, p).holds());
    }
}

#[test]
fn power_subgroups_agree_for_odd_primes() {
    for (pg, p) in p_groups(243).into_iter().filter(|(_, p)| *p != 2) {
        for n in normal_subgroups(&pg).unwrap() {
            assert_eq!(n.power(2 * p), n.power(p), "{}", pg.label());
        }
    }
}

#[test]
fn focal_subgroup_equals_fusion_form() {
    for e in corpus().into_iter().filter(|e| e.group.order() <= 2000) {
        for &p in &e.primes {
            let s = sylow_p(&e.group, p);
            let direct = s.intersection(&e.group.derived_subgroup()).unwrap();
            assert_eq!(focal_fusion_form(&s), direct, "{} p={p}", e.label());
            assert_eq!(focal_subgroup(&s).unwrap(), direct);
        }
    }
}

#[test]
fn transfer_is_a_transversal_independent_homomorphism() {
    for e in corpus().into_iter().filter(|e| e.group.order() <= 2000) {
        let whole = e.group.whole_subgroup();
        let derived = e.group.derived_subgroup();
        for &p in &e.primes {
            let s = sylow_p(&e.group, p);
            let base = Transfer::new(&whole, &s, 0).unwrap();
            let values = base.data().values;
            assert!(base.is_homomorphism(), "{} p={p}", e.label());
            for offset in [1, 2, 7] {
                let other = Transfer::new(&whole, &s, offset).unwrap();
                if s.order() > 1 && offset % s.order() != 0 {
                    assert_ne!(other.transversal(), base.transversal());
                }
                assert_eq!(
                    other.data().values,
                    values,
                    "{} p={p} offset={offset}",
                    e.label()
                );
            }
            let identity = base.canonical(Group::IDENTITY);
            for x in derived.members() {
                assert_eq!(base.value(x), identity, "commutators lie in the kernel");
            }
        }
    }
}

#[test]
fn gruen_first_identity_holds_on_corpus() {
    for e in corpus().into_iter().filter(|e| e.group.order() <= 2000) {
        for &p in &e.primes {
            let (lhs, rhs) = gruen_first_sides(&e.group, p).unwrap();
            assert_eq!(lhs, rhs, "{} p={p}", e.label());
        }
    }
}

#[test]
fn sylow_subgroups_are_conjugate_and_of_full_order() {
    for e in corpus().into_iter().filter(|e| e.group.order() <= 2000) {
        let g = &e.group;
        for &p in &e.primes {
            let a = sylow_p(g, p);
            assert!(a.is_p_group(p));
            assert_eq!(
                a.order() as u64,
                powclass::group::p_part(g.order() as u64, p)
            );
            let b = sylow_p_seeded(g, p, g.order() / 2 + 1);
            assert!(
                (0..g.order()).any(|x| a.conjugate_by(x) == b),
                "{} p={p}",
                e.label()
            );
            assert!(p_core(g, p).is_subgroup_of(&a));
        }
    }
}

#[test]
fn quotients_and_isomorphisms() {
    let s4 = symmetric(4).unwrap();
    let (q, f) = quotient(&s4, &p_core(&s4, 2)).unwrap();
    assert!(f.is_homomorphism());
    assert_eq!(f.kernel(), p_core(&s4, 2));
    assert!(is_isomorphic(&q, &symmetric(3).unwrap()).unwrap());
    let s3 = symmetric(3).unwrap();
    assert!(is_isomorphic(&regular_embedding(&s3).unwrap(), &s3).unwrap());
}
