//! Powerful height, powerful class and potent filtrations, checked against
//! direct subgroup arithmetic on the corpus p-groups.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use rustc_hash::FxHashMap;

use powclass::corpus::{
    cyclic, dihedral, direct_product, quaternion, standard_corpus, wreath_cpcp,
};
use powclass::lattice::normal_subgroups;
use powclass::powerful::{
    eta, potent_filtration_p2, potent_filtration_prop43, potent_filtration_prop43_in,
    powerful_height, upper_eta_series, verify_eta_series, verify_potent_filtration, ChainCheck,
    EtaLattice,
};
use powclass::psylow::sylow_p;
use powclass::series::{nilpotency_class, upper_central_series};
use powclass::{quotient, Group, GroupError, GroupExt, SeriesChain, SeriesKind, Subgroup};

/// Sylow subgroups of corpus groups (the group itself for p-groups) of
/// order at most `max_order`.
fn p_groups(max_order: usize) -> Vec<(Arc<Group>, u64)> {
    let mut out: Vec<(Arc<Group>, u64)> = Vec::new();
    for e in standard_corpus().unwrap() {
        for &p in &e.primes {
            let s = sylow_p(&e.group, p);
            if s.order() <= 1 || s.order() > max_order {
                continue;
            }
            let pg = if s.is_whole() {
                e.group.clone()
            } else {
                s.to_group(format!("Syl{p}({})", e.label()))
            };
            out.push((pg, p));
        }
    }
    out
}

/// Normal subgroups with `[N, P]` and `N^{2p}` precomputed as subgroups,
/// independent of the lattice index arithmetic used by [`EtaLattice`].
struct Direct {
    subs: Vec<Subgroup>,
    index: FxHashMap<FixedBitSet, usize>,
    comm: Vec<Subgroup>,
    pow_2p: Vec<Subgroup>,
}

impl Direct {
    fn new(pg: &Arc<Group>, p: u64) -> Self {
        let whole = pg.whole_subgroup();
        let subs = normal_subgroups(pg).unwrap();
        let index = subs
            .iter()
            .enumerate()
            .map(|(i, h)| (h.member_set().clone(), i))
            .collect();
        let comm = subs.iter().map(|n| n.commutator(&whole).unwrap()).collect();
        let pow_2p = subs.iter().map(|n| n.power(2 * p)).collect();
        Self {
            subs,
            index,
            comm,
            pow_2p,
        }
    }

    fn idx(&self, h: &Subgroup) -> usize {
        self.index[h.member_set()]
    }

    /// `M/K` powerfully embedded in `P/K`, from `[M, P] ≤ M^{2p} K`.
    fn pe_mod(&self, m: usize, k: usize) -> bool {
        self.subs[k].is_subgroup_of(&self.subs[m])
            && self.comm[m].is_subgroup_of(&self.pow_2p[m].join(&self.subs[k]).unwrap())
    }

    /// `reach[m]` = least `i` such that some `η`-series of length `i` ends at
    /// `N_m`, found level by level over all chains.
    fn reach(&self) -> Vec<usize> {
        let n = self.subs.len();
        let mut depth = vec![usize::MAX; n];
        depth[0] = 0;
        let mut frontier = vec![0];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for m in 0..n {
                if depth[m] == usize::MAX && frontier.iter().any(|&k| self.pe_mod(m, k)) {
                    depth[m] = level;
                    next.push(m);
                }
            }
            // Chains may stay put, so everything reached so far can be
            // extended at the next level too.
            frontier = (0..n).filter(|&m| depth[m] != usize::MAX).collect();
            if next.is_empty() {
                break;
            }
        }
        assert!(
            depth.iter().all(|&d| d != usize::MAX),
            "every normal subgroup has an η-series"
        );
        depth
    }
}

fn oracle_groups() -> Vec<(Arc<Group>, u64)> {
    p_groups(243)
        .into_iter()
        .filter(|(g, p)| *p == 3 || (*p == 2 && g.order() <= 64))
        .collect()
}

#[test]
fn greedy_height_matches_brute_force_and_chain_search() {
    let mut checked = 0;
    for (pg, p) in oracle_groups() {
        let lat = EtaLattice::new(&pg, p).unwrap();
        let direct = Direct::new(&pg, p);
        let depth = direct.reach();
        for i in 0..lat.len() {
            let greedy = lat.powerful_height(i).unwrap();
            assert_eq!(
                greedy,
                lat.brute_force_pwh(i),
                "{} |N| = {}",
                pg.label(),
                lat.subgroup(i).order()
            );
            assert_eq!(greedy, depth[direct.idx(lat.subgroup(i))], "{}", pg.label());
            checked += 1;
        }
    }
    assert!(checked > 200, "{checked}");
}

#[test]
fn upper_eta_series_dominates_every_eta_series() {
    for (pg, p) in oracle_groups() {
        let profile = upper_eta_series(&pg, p).unwrap();
        assert!(verify_eta_series(&profile.eta_series, &pg, p).holds());
        let direct = Direct::new(&pg, p);
        let depth = direct.reach();
        for (m, &d) in depth.iter().enumerate() {
            // N_m is term d of some η-series, and every η-series term of
            // index i lies in η_i; equivalently N_m ≤ η_{depth}.
            assert!(
                direct.subs[m].is_subgroup_of(profile.eta_i(d)),
                "{}",
                pg.label()
            );
        }
        assert_eq!(depth[direct.idx(&pg.whole_subgroup())], profile.pwc);
    }
}

#[test]
fn height_lemmas_hold_for_odd_primes() {
    let mut pairs = 0;
    for (pg, p) in p_groups(243).into_iter().filter(|(_, p)| *p != 2) {
        let direct = Direct::new(&pg, p);
        let h = direct.reach();
        for n in 0..direct.subs.len() {
            let nn = &direct.subs[n];
            assert!(h[direct.idx(&direct.comm[n])] <= h[n], "{}", pg.label());
            assert!(h[direct.idx(&nn.power(p))] <= h[n], "{}", pg.label());
            for m in 0..direct.subs.len() {
                let mn = nn.join(&direct.subs[m]).unwrap();
                assert!(h[direct.idx(&mn)] <= h[n].max(h[m]), "{}", pg.label());
                pairs += 1;
            }
            for j in h[n].max(1)..=h[n].max(1) + 2 {
                let c = nn.iterated_commutator(&pg.whole_subgroup(), j).unwrap();
                assert!(c.is_subgroup_of(&nn.power(p)), "{} j={j}", pg.label());
            }
        }
    }
    assert!(pairs > 1000, "{pairs}");
}

#[test]
fn powerful_class_bounded_by_nilpotency_class() {
    for (pg, p) in p_groups(20_000) {
        let profile = upper_eta_series(&pg, p).unwrap();
        let class = nilpotency_class(&pg).unwrap();
        assert!(
            profile.pwc <= class.max(1),
            "{}: pwc {} class {class}",
            pg.label(),
            profile.pwc
        );
        let whole = pg.whole_subgroup();
        let powerful = pg.derived_subgroup().is_subgroup_of(&whole.power(2 * p));
        assert_eq!(profile.is_powerful, powerful, "{}", pg.label());
        assert_eq!(profile.is_powerful, profile.pwc <= 1);
    }
}

#[test]
fn powerful_class_does_not_grow_in_quotients() {
    let mut quotients = 0;
    for (pg, p) in p_groups(243) {
        let pwc = upper_eta_series(&pg, p).unwrap().pwc;
        let e = eta(&pg, p).unwrap();
        for k in normal_subgroups(&pg).unwrap() {
            let (q, f) = quotient(&pg, &k).unwrap();
            assert!(
                upper_eta_series(&q, p).unwrap().pwc <= pwc,
                "{} / {}",
                pg.label(),
                k.order()
            );
            assert!(f.image(&e).is_subgroup_of(&eta(&q, p).unwrap()));
            quotients += 1;
        }
    }
    assert!(quotients > 300, "{quotients}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_by_eta_drops_class_by_one(pick in 0usize..1000) {
        let groups = oracle_groups();
        let (pg, p) = &groups[pick % groups.len()];
        let profile = upper_eta_series(pg, *p).unwrap();
        let (q, _) = quotient(pg, &eta(pg, *p).unwrap()).unwrap();
        prop_assert_eq!(upper_eta_series(&q, *p).unwrap().pwc, profile.pwc - 1);
    }

    #[test]
    fn pe_subgroups_are_closed_under_products(pick in 0usize..1000, a in 0usize..1000, b in 0usize..1000) {
        let groups = oracle_groups();
        let (pg, p) = &groups[pick % groups.len()];
        let lat = EtaLattice::new(pg, *p).unwrap();
        let pe: Vec<usize> = (0..lat.len()).filter(|&i| lat.is_powerfully_embedded(i)).collect();
        let (m, n) = (pe[a % pe.len()], pe[b % pe.len()]);
        prop_assert!(lat.is_powerfully_embedded(lat.join(m, n)));
        prop_assert!(lat.le(lat.join(m, n), lat.eta().unwrap()));
    }
}

#[test]
fn square_filtrations_on_all_corpus_two_groups() {
    let mut count = 0;
    for (pg, _) in p_groups(20_000).into_iter().filter(|(_, p)| *p == 2) {
        let lat = EtaLattice::new(&pg, 2).unwrap();
        for i in (0..lat.len()).filter(|&i| lat.is_powerfully_embedded(i)) {
            let chain = potent_filtration_p2(lat.subgroup(i), &pg).unwrap();
            assert_eq!(chain.type_t, Some(1));
            assert!(verify_potent_filtration(&chain, &pg, 2, 1).holds());
            count += 1;
        }
    }
    assert!(count > 50, "{count}");
}

#[test]
fn wreath_products_have_eta_equal_to_upper_centre() {
    for (p, pwc) in [(2, 2), (3, 3), (5, 5)] {
        let w = wreath_cpcp(p).unwrap();
        let profile = upper_eta_series(&w, p).unwrap();
        assert_eq!(profile.pwc, pwc);
        assert!(profile.matches_upper_central_series());
        let centre = upper_central_series(&w);
        for (i, z) in centre.terms.iter().enumerate() {
            assert_eq!(z.member_set(), profile.eta_i(i).member_set(), "p={p} i={i}");
        }
    }
    let w3 = wreath_cpcp(3).unwrap();
    let z2 = &upper_central_series(&w3).terms[2];
    assert_eq!(powerful_height(z2, &w3, 3).unwrap(), 2);
}

#[test]
fn order_five_filtrations_on_c5_wreath_c5() {
    let w = wreath_cpcp(5).unwrap();
    let lat = EtaLattice::new(&w, 5).unwrap();
    let z3 = upper_central_series(&w).terms[3].clone();
    let mut instances = 0;
    let mut saw_z3 = false;
    for i in 1..lat.len() {
        let h = lat.powerful_height(i).unwrap();
        if h >= 4 {
            assert!(matches!(
                potent_filtration_prop43_in(&lat, i),
                Err(GroupError::HypothesisViolated(_))
            ));
            continue;
        }
        let chain = potent_filtration_prop43_in(&lat, i).unwrap();
        assert_eq!(chain.type_t, Some(3));
        assert_eq!(&chain.terms[0], lat.subgroup(i));
        assert!(chain.terms.last().unwrap().is_trivial());
        assert!(chain.is_nested());
        assert_eq!(
            verify_potent_filtration(&chain, &w, 5, 3),
            ChainCheck::Holds
        );
        saw_z3 |= lat.subgroup(i) == &z3;
        instances += 1;
    }
    assert!(instances >= 3, "{instances}");
    assert!(saw_z3);
    assert!(matches!(
        potent_filtration_prop43(&w.whole_subgroup(), &w, 5),
        Err(GroupError::HypothesisViolated(_))
    ));
    assert!(matches!(
        potent_filtration_prop43(&w.center(), &w, 3),
        Err(GroupError::NotPGroup { .. })
    ));
}

#[test]
fn centre_filtration_collapses_to_centre_then_one() {
    let w = wreath_cpcp(5).unwrap();
    let chain = potent_filtration_prop43(&w.center(), &w, 5).unwrap();
    let mut distinct: Vec<usize> = chain.orders();
    distinct.dedup();
    assert_eq!(distinct, vec![5, 1]);
}

fn cyclic_four_in(d8: &Arc<Group>) -> Subgroup {
    normal_subgroups(d8)
        .unwrap()
        .into_iter()
        .find(|n| n.order() == 4 && n.members().any(|x| d8.pow(x, 2) != Group::IDENTITY))
        .unwrap()
}

#[test]
fn small_two_group_examples() {
    let d8 = dihedral(8).unwrap();
    let c4 = cyclic_four_in(&d8);
    assert_eq!(eta(&d8, 2).unwrap(), d8.center());
    assert_eq!(
        upper_eta_series(&d8, 2).unwrap().eta_series.orders(),
        vec![1, 2, 8]
    );
    assert_eq!(powerful_height(&c4, &d8, 2).unwrap(), 2);
    let bad = SeriesChain::new(
        SeriesKind::EtaAscending,
        vec![d8.trivial_subgroup(), c4, d8.whole_subgroup()],
    );
    assert_eq!(verify_eta_series(&bad, &d8, 2), ChainCheck::FailsAt(0));

    let q8 = quaternion(8).unwrap();
    assert_eq!(normal_subgroups(&q8).unwrap().len(), 6);
    assert_eq!(eta(&q8, 2).unwrap(), q8.center());
    assert_eq!(upper_eta_series(&q8, 2).unwrap().pwc, 2);
    let chain = potent_filtration_p2(&q8.center(), &q8).unwrap();
    assert_eq!(chain.orders(), vec![2, 1]);

    let c4 = cyclic(4).unwrap();
    let c4c4 = direct_product(&c4, &c4).unwrap();
    let profile = upper_eta_series(&c4c4, 2).unwrap();
    assert!(profile.is_powerful);
    let chain = potent_filtration_p2(&c4c4.whole_subgroup(), &c4c4).unwrap();
    assert_eq!(chain.orders(), vec![16, 4, 1]);
}
