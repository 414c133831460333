//! Executable checks of statements about `η`, powerful class, transfer,
//! fusion and `p`-length on concrete groups.
//!
//! Every check produces a [`VerificationReport`] recording whether the
//! hypothesis and the conclusion hold. A row whose hypothesis holds and whose
//! conclusion does not is a failure; rows with a false hypothesis are
//! vacuous and never fail.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::corpus::CorpusEntry;
use crate::error::{GroupError, Result};
use crate::fusion::{
    controls_transfer, fusion_control_failure, has_cpwrcp_quotient, is_strongly_closed,
    is_weakly_closed, ClosureReport, Transfer, DEFAULT_FUSION_SUBGROUP_CAP,
};
use crate::group::Group;
use crate::powerful::{
    potent_filtration_p2, potent_filtration_prop43_in, verify_potent_filtration, EtaLattice,
    EtaProfile,
};
use crate::psylow::{is_p_nilpotent, sylow_p, upper_p_series, PSeriesResult};
use crate::series::upper_central_series;
use crate::subgroup::{GroupExt, Subgroup};

/// Groups above this order get `G`-level rows only when they are `p`-groups.
pub const G_LEVEL_MAX_ORDER: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "thm1.1")]
    Thm1_1,
    #[serde(rename = "thm1.2")]
    Thm1_2,
    #[serde(rename = "prop3.2")]
    Prop3_2,
    #[serde(rename = "prop3.3")]
    Prop3_3,
    #[serde(rename = "prop3.5")]
    Prop3_5,
    #[serde(rename = "cor-eta-transfer")]
    CorEtaTransfer,
    #[serde(rename = "prop4.2")]
    Prop4_2,
    #[serde(rename = "prop4.3")]
    Prop4_3,
    #[serde(rename = "cor4.4")]
    Cor4_4,
    #[serde(rename = "lemma2.1")]
    Lemma2_1,
    #[serde(rename = "lemma2.2")]
    Lemma2_2,
    #[serde(rename = "lemma3.1")]
    Lemma3_1,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Thm1_1,
        TheoremId::Thm1_2,
        TheoremId::Prop3_2,
        TheoremId::Prop3_3,
        TheoremId::Prop3_5,
        TheoremId::CorEtaTransfer,
        TheoremId::Prop4_2,
        TheoremId::Prop4_3,
        TheoremId::Cor4_4,
        TheoremId::Lemma2_1,
        TheoremId::Lemma2_2,
        TheoremId::Lemma3_1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm1_1 => "thm1.1",
            TheoremId::Thm1_2 => "thm1.2",
            TheoremId::Prop3_2 => "prop3.2",
            TheoremId::Prop3_3 => "prop3.3",
            TheoremId::Prop3_5 => "prop3.5",
            TheoremId::CorEtaTransfer => "cor-eta-transfer",
            TheoremId::Prop4_2 => "prop4.2",
            TheoremId::Prop4_3 => "prop4.3",
            TheoremId::Cor4_4 => "cor4.4",
            TheoremId::Lemma2_1 => "lemma2.1",
            TheoremId::Lemma2_2 => "lemma2.2",
            TheoremId::Lemma3_1 => "lemma3.1",
        }
    }

    /// One-line statement of what the row checks.
    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::Thm1_1 => "η(P) weakly closed ⇒ P∩G' = P∩N_G(η(P))'",
            TheoremId::Thm1_2 => "G p-solvable ⇒ ℓ_p(G) ≤ ⌈pwc(P)/(p−2)⌉ (p odd), ℓ_2(G) ≤ pwc(P)",
            TheoremId::Prop3_2 => "pwc(P) < p ⇒ N_G(P) controls transfer",
            TheoremId::Prop3_3 => "pwc(P) < p and N_G(P) p-nilpotent ⇒ G p-nilpotent",
            TheoremId::Prop3_5 => "η(P) strongly closed, all η(P)^{p^i} weakly closed ⇒ η strongly controls fusion",
            TheoremId::CorEtaTransfer => "η(P) weakly closed ⇒ N_G(η(P)) controls transfer",
            TheoremId::Prop4_2 => "G p-solvable, N powerfully embedded in P ⇒ N ≤ O_{p'p}(G)",
            TheoremId::Prop4_3 => "p > 3, G p-solvable, pwh_P(N) < p−1 ⇒ N has a potent filtration of type p−2 and N ≤ O_{p'p}(G)",
            TheoremId::Cor4_4 => "p > 2, G p-solvable ⇒ η_{p−2}(P) ≤ O_{p'p}(G)",
            TheoremId::Lemma2_1 => "p odd ⇒ pwh[N,P], pwh N^p ≤ pwh N and pwh MN ≤ max(pwh M, pwh N)",
            TheoremId::Lemma2_2 => "p odd, pwh_P(N) ≤ j ⇒ [N, _j P] ≤ N^p",
            TheoremId::Lemma3_1 => "η_i(C_p≀C_p) = Z_i(C_p≀C_p) for all i, pwc = p",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| GroupError::BadParameter(format!("unknown theorem id `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "FAILED")]
    Failed,
}

impl Status {
    pub fn of(hypothesis: bool, conclusion: bool) -> Self {
        match (hypothesis, conclusion) {
            (true, true) => Status::Verified,
            (true, false) => Status::Failed,
            (false, _) => Status::Vacuous,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Vacuous => "vacuous",
            Status::Failed => "FAILED",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: String,
    pub prime: u64,
    pub theorem: TheoremId,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub status: Status,
    pub witnesses: BTreeMap<String, String>,
}

impl VerificationReport {
    fn new(ctx: &SylowContext, theorem: TheoremId, hypothesis: bool, conclusion: bool) -> Self {
        Self {
            group: ctx.group.label().to_string(),
            prime: ctx.p,
            theorem,
            hypothesis,
            conclusion,
            status: Status::of(hypothesis, conclusion),
            witnesses: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.witnesses.insert(key.to_string(), value.to_string());
        self
    }

    fn skipped(ctx: &SylowContext, theorem: TheoremId, why: &str) -> Self {
        Self::new(ctx, theorem, false, false).with("skipped", why)
    }
}

/// Everything about a group and a prime that the checks share: a Sylow
/// subgroup `P`, its normal lattice with `η`-data, and (for groups of
/// moderate order) the upper `p`-series.
#[derive(Debug, Clone)]
pub struct SylowContext {
    pub group: Arc<Group>,
    pub p: u64,
    /// `P` as a subgroup of `G`.
    pub sylow: Subgroup,
    /// `P` as a group in its own right (the same `Arc` as `group` when `G`
    /// is a `p`-group).
    pub p_group: Arc<Group>,
    pub lattice: EtaLattice,
    /// The upper `η`-series of `P`, as lattice indices.
    pub upper_eta: Vec<usize>,
    pub pwc: usize,
    /// `η(P)` inside `G`.
    pub eta: Subgroup,
    /// `None` when `G` is too large for `G`-level checks.
    pub p_series: Option<PSeriesResult>,
}

impl SylowContext {
    pub fn new(g: &Arc<Group>, p: u64) -> Result<Self> {
        let sylow = sylow_p(g, p);
        let p_group = if sylow.is_whole() {
            g.clone()
        } else {
            sylow.to_group(format!("Syl{p}({})", g.label()))
        };
        let lattice = EtaLattice::new(&p_group, p)?;
        let upper_eta = lattice.upper_eta_series()?;
        let pwc = upper_eta.len() - 1;
        let eta_p = lattice.subgroup(lattice.eta_term(&upper_eta, 1));
        let eta = sylow.lift(eta_p);
        let g_level = g.order() <= G_LEVEL_MAX_ORDER || g.is_p_group(p);
        let p_series = if g_level {
            Some(upper_p_series(g, p)?)
        } else {
            None
        };
        Ok(Self {
            group: g.clone(),
            p,
            sylow,
            p_group,
            lattice,
            upper_eta,
            pwc,
            eta,
            p_series,
        })
    }

    /// A subgroup of the group `P` as a subgroup of `G`.
    pub fn in_g(&self, h: &Subgroup) -> Subgroup {
        self.sylow.lift(h)
    }

    /// `η_i(P)` inside `G`.
    pub fn eta_i(&self, i: usize) -> Subgroup {
        self.in_g(
            self.lattice
                .subgroup(self.lattice.eta_term(&self.upper_eta, i)),
        )
    }

    pub fn profile(&self) -> Result<EtaProfile> {
        EtaProfile::from_lattice(&self.lattice)
    }

    /// Whether `G`-level checks run for this group.
    pub fn g_level(&self) -> bool {
        self.p_series.is_some()
    }

    pub fn p_solvable(&self) -> bool {
        self.p_series.as_ref().is_some_and(|s| s.p_solvable)
    }

    fn o_pprime_p(&self) -> Option<&Subgroup> {
        self.p_series.as_ref().map(PSeriesResult::o_pprime_p)
    }

    pub fn weak_closure_of_eta(&self) -> Result<ClosureReport> {
        is_weakly_closed(&self.eta, &self.sylow)
    }

    pub fn strong_closure_of_eta(&self) -> Result<ClosureReport> {
        let strong = is_strongly_closed(&self.eta, &self.sylow)?;
        let weak = self.weak_closure_of_eta()?;
        if strong.holds && !weak.holds {
            return Err(GroupError::Inconsistent(
                "strongly closed subgroup is not weakly closed".into(),
            ));
        }
        Ok(strong)
    }
}

fn witness_element(g: &Group, x: usize) -> String {
    g.element(x).to_string()
}

fn too_large(ctx: &SylowContext, theorem: TheoremId) -> VerificationReport {
    VerificationReport::skipped(
        ctx,
        theorem,
        &format!("|G| = {} exceeds {G_LEVEL_MAX_ORDER}", ctx.group.order()),
    )
}

pub fn check_thm1_1(ctx: &SylowContext) -> Result<VerificationReport> {
    if !ctx.g_level() {
        return Ok(too_large(ctx, TheoremId::Thm1_1));
    }
    let g = &ctx.group;
    let weak = ctx.weak_closure_of_eta()?;
    ctx.strong_closure_of_eta()?;
    let lhs = ctx.sylow.intersection(&g.derived_subgroup())?;
    let rhs = ctx.sylow.intersection(&g.normalizer(&ctx.eta).derived())?;
    let mut r = VerificationReport::new(ctx, TheoremId::Thm1_1, weak.holds, lhs == rhs)
        .with("eta_order", ctx.eta.order())
        .with("focal_order", lhs.order())
        .with("focal_in_normalizer_order", rhs.order());
    if let Some((x, _)) = weak.witness {
        r = r.with("weak_closure_witness", witness_element(g, x));
    }
    Ok(r)
}

pub fn check_cor_eta_transfer(ctx: &SylowContext) -> Result<VerificationReport> {
    if !ctx.g_level() {
        return Ok(too_large(ctx, TheoremId::CorEtaTransfer));
    }
    let g = &ctx.group;
    let weak = ctx.weak_closure_of_eta()?;
    let n = g.normalizer(&ctx.eta);
    let controls = controls_transfer(&n, ctx.p)?;
    // Independent route: |image of the transfer into P/P'| equals
    // |P : P ∩ G'|, so equal images mean equal focal subgroups.
    let from_g = Transfer::new(&g.whole_subgroup(), &ctx.sylow, 0)?.image();
    let from_n = Transfer::new(&n, &ctx.sylow, 0)?.image();
    let focal = ctx.sylow.intersection(&g.derived_subgroup())?;
    let pd = ctx.sylow.derived().order();
    if from_g.order() / pd != ctx.sylow.order() / focal.order() {
        return Err(GroupError::Inconsistent(
            "transfer image disagrees with the focal subgroup".into(),
        ));
    }
    let same_image = from_g == from_n;
    Ok(VerificationReport::new(
        ctx,
        TheoremId::CorEtaTransfer,
        weak.holds,
        controls && same_image,
    )
    .with("normalizer_order", n.order())
    .with("transfer_image_order_g", from_g.order() / pd)
    .with("transfer_image_order_normalizer", from_n.order() / pd))
}

pub fn check_prop3_2(ctx: &SylowContext) -> Result<VerificationReport> {
    if !ctx.g_level() {
        return Ok(too_large(ctx, TheoremId::Prop3_2));
    }
    let g = &ctx.group;
    let small = (ctx.pwc as u64) < ctx.p;
    let controls = controls_transfer(&g.normalizer(&ctx.sylow), ctx.p)?;
    let mut r =
        VerificationReport::new(ctx, TheoremId::Prop3_2, small, controls).with("pwc", ctx.pwc);
    if ctx.p <= 3 {
        let wreath = has_cpwrcp_quotient(&ctx.p_group, ctx.p)?;
        r = r.with("wreath_quotient", wreath);
        if small && wreath {
            r.conclusion = false;
            r.status = Status::of(r.hypothesis, r.conclusion);
        }
    } else {
        r = r.with("wreath_quotient", "not tested for p ≥ 5");
    }
    Ok(r)
}

pub fn check_prop3_3(ctx: &SylowContext) -> Result<VerificationReport> {
    if !ctx.g_level() {
        return Ok(too_large(ctx, TheoremId::Prop3_3));
    }
    let g = &ctx.group;
    let small = (ctx.pwc as u64) < ctx.p;
    let n = g.normalizer(&ctx.sylow);
    let n_nilp = is_p_nilpotent(&n.to_group(format!("N({})", g.label())), ctx.p);
    let g_nilp = is_p_nilpotent(g, ctx.p);
    Ok(
        VerificationReport::new(ctx, TheoremId::Prop3_3, small && n_nilp, g_nilp)
            .with("pwc", ctx.pwc)
            .with("normalizer_p_nilpotent", n_nilp),
    )
}

pub fn check_prop3_5(ctx: &SylowContext) -> Result<VerificationReport> {
    if !ctx.g_level() {
        return Ok(too_large(ctx, TheoremId::Prop3_5));
    }
    let g = &ctx.group;
    let strong = ctx.strong_closure_of_eta()?;
    let mut powers_weak = true;
    let mut k = ctx.p;
    let mut powers = 0;
    loop {
        let wp = ctx.eta.power(k);
        if !is_weakly_closed(&wp, &ctx.sylow)?.holds {
            powers_weak = false;
            break;
        }
        powers += 1;
        if wp.is_trivial() {
            break;
        }
        k *= ctx.p;
    }
    let failure = fusion_control_failure(&ctx.eta, &ctx.sylow, DEFAULT_FUSION_SUBGROUP_CAP)?;
    let mut r = VerificationReport::new(
        ctx,
        TheoremId::Prop3_5,
        strong.holds && powers_weak,
        failure.is_none(),
    )
    .with("eta_strongly_closed", strong.holds)
    .with("eta_powers_weakly_closed", powers_weak)
    .with("eta_powers_checked", powers);
    if let Some((a, x)) = failure {
        r = r.with(
            "fusion_witness",
            format!("|A| = {}, g = {}", a.order(), witness_element(g, x)),
        );
    }
    Ok(r)
}

/// The bound on `ℓ_p(G)` in terms of the powerful class of `P`.
pub fn p_length_bound(p: u64, pwc: usize) -> usize {
    if p == 2 {
        pwc
    } else {
        pwc.div_ceil(p as usize - 2)
    }
}

pub fn check_thm1_2(ctx: &SylowContext) -> Result<VerificationReport> {
    let Some(series) = &ctx.p_series else {
        return Ok(too_large(ctx, TheoremId::Thm1_2));
    };
    let bound = p_length_bound(ctx.p, ctx.pwc);
    let mut r = VerificationReport::new(ctx, TheoremId::Thm1_2, series.p_solvable, false)
        .with("pwc", ctx.pwc)
        .with("bound", bound)
        .with("powerful", ctx.pwc <= 1);
    if let Some(ell) = series.p_length {
        r.conclusion = ell <= bound;
        r.status = Status::of(r.hypothesis, r.conclusion);
        r = r.with("p_length", ell).with("attains_bound", ell == bound);
    }
    Ok(r)
}

pub fn check_prop4_2(ctx: &SylowContext) -> Result<VerificationReport> {
    let Some(o) = ctx.o_pprime_p() else {
        return Ok(too_large(ctx, TheoremId::Prop4_2));
    };
    let lat = &ctx.lattice;
    let mut count = 0;
    let mut inside = true;
    let mut filtrations = true;
    for i in 0..lat.len() {
        if !lat.is_powerfully_embedded(i) {
            continue;
        }
        count += 1;
        let n = lat.subgroup(i);
        if !ctx.in_g(n).is_subgroup_of(o) {
            inside = false;
        }
        if ctx.p == 2 {
            let chain = potent_filtration_p2(n, &ctx.p_group)?;
            if !verify_potent_filtration(&chain, &ctx.p_group, 2, 1).holds() {
                filtrations = false;
            }
        }
    }
    let mut r = VerificationReport::new(
        ctx,
        TheoremId::Prop4_2,
        ctx.p_solvable(),
        inside && filtrations,
    )
    .with("pe_subgroups", count)
    .with("o_pprime_p_order", o.order());
    if ctx.p == 2 {
        r = r.with("type1_filtrations_verified", filtrations);
    }
    Ok(r)
}

pub fn check_prop4_3(ctx: &SylowContext) -> Result<VerificationReport> {
    let Some(o) = ctx.o_pprime_p() else {
        return Ok(too_large(ctx, TheoremId::Prop4_3));
    };
    if ctx.p <= 3 {
        return Ok(
            VerificationReport::new(ctx, TheoremId::Prop4_3, false, true)
                .with("skipped", "needs p > 3"),
        );
    }
    let lat = &ctx.lattice;
    let t = ctx.p as usize - 2;
    let mut instances = 0;
    let mut conclusion = true;
    let mut first_bad = None;
    for i in 1..lat.len() {
        if lat.powerful_height(i)? + 1 >= ctx.p as usize {
            continue;
        }
        instances += 1;
        let chain = potent_filtration_prop43_in(lat, i)?;
        let check = verify_potent_filtration(&chain, &ctx.p_group, ctx.p, t);
        let within = ctx.in_g(lat.subgroup(i)).is_subgroup_of(o);
        if !(check.holds() && within) {
            conclusion = false;
            first_bad.get_or_insert(lat.subgroup(i).order());
        }
    }
    let mut r = VerificationReport::new(
        ctx,
        TheoremId::Prop4_3,
        ctx.p_solvable() && instances > 0,
        conclusion,
    )
    .with("instances", instances)
    .with("filtration_type", t);
    if let Some(order) = first_bad {
        r = r.with("first_failure_order", order);
    }
    Ok(r)
}

pub fn check_cor4_4(ctx: &SylowContext) -> Result<VerificationReport> {
    let Some(o) = ctx.o_pprime_p() else {
        return Ok(too_large(ctx, TheoremId::Cor4_4));
    };
    if ctx.p == 2 {
        return Ok(VerificationReport::new(ctx, TheoremId::Cor4_4, false, true)
            .with("skipped", "needs p > 2"));
    }
    let e = ctx.eta_i(ctx.p as usize - 2);
    Ok(VerificationReport::new(
        ctx,
        TheoremId::Cor4_4,
        ctx.p_solvable(),
        e.is_subgroup_of(o),
    )
    .with("eta_term_order", e.order())
    .with("o_pprime_p_order", o.order()))
}

/// Powerful heights of every lattice element.
fn heights(lat: &EtaLattice) -> Result<Vec<usize>> {
    (0..lat.len()).map(|i| lat.powerful_height(i)).collect()
}

pub fn check_lemma2_1(ctx: &SylowContext) -> Result<VerificationReport> {
    let lat = &ctx.lattice;
    let odd = ctx.p != 2;
    if !odd {
        return Ok(
            VerificationReport::new(ctx, TheoremId::Lemma2_1, false, true)
                .with("skipped", "needs odd p"),
        );
    }
    let h = heights(lat)?;
    let mut violation = None;
    for n in 0..lat.len() {
        if h[lat.commutator_with_p(n)] > h[n] {
            violation.get_or_insert(format!(
                "pwh [N,P] > pwh N for |N| = {}",
                lat.subgroup(n).order()
            ));
        }
        if h[lat.power_p(n)] > h[n] {
            violation.get_or_insert(format!(
                "pwh N^p > pwh N for |N| = {}",
                lat.subgroup(n).order()
            ));
        }
    }
    let mut pairs = 0usize;
    for m in 0..lat.len() {
        for n in m..lat.len() {
            pairs += 1;
            if h[lat.join(m, n)] > h[m].max(h[n]) {
                violation.get_or_insert(format!(
                    "pwh MN > max for |M| = {}, |N| = {}",
                    lat.subgroup(m).order(),
                    lat.subgroup(n).order()
                ));
            }
        }
    }
    let mut r = VerificationReport::new(ctx, TheoremId::Lemma2_1, true, violation.is_none())
        .with("normal_subgroups", lat.len())
        .with("pairs", pairs);
    if let Some(v) = violation {
        r = r.with("violation", v);
    }
    Ok(r)
}

pub fn check_lemma2_2(ctx: &SylowContext) -> Result<VerificationReport> {
    let lat = &ctx.lattice;
    if ctx.p == 2 {
        return Ok(
            VerificationReport::new(ctx, TheoremId::Lemma2_2, false, true)
                .with("skipped", "needs odd p"),
        );
    }
    let h = heights(lat)?;
    let mut checked = 0;
    let mut violation = None;
    for (n, &hn) in h.iter().enumerate().skip(1) {
        for j in hn..=hn.max(ctx.pwc) {
            checked += 1;
            if !lat.le(lat.iterated_commutator(n, j), lat.power_p(n)) {
                violation.get_or_insert(format!("|N| = {}, j = {j}", lat.subgroup(n).order()));
            }
        }
    }
    let mut r = VerificationReport::new(ctx, TheoremId::Lemma2_2, true, violation.is_none())
        .with("checks", checked);
    if let Some(v) = violation {
        r = r.with("violation", v);
    }
    Ok(r)
}

/// Compares the upper `η`-series of `P` with its upper central series,
/// term by term as member sets; `P` is assumed to be `C_p ≀ C_p`.
pub fn check_lemma3_1(ctx: &SylowContext) -> Result<VerificationReport> {
    let profile = ctx.profile()?;
    let centre = upper_central_series(&ctx.p_group);
    let equal = profile.matches_upper_central_series();
    Ok(VerificationReport::new(
        ctx,
        TheoremId::Lemma3_1,
        true,
        equal && ctx.pwc as u64 == ctx.p,
    )
    .with("pwc", ctx.pwc)
    .with("eta_orders", format!("{:?}", profile.eta_series.orders()))
    .with("center_orders", format!("{:?}", centre.orders())))
}

pub fn check(ctx: &SylowContext, theorem: TheoremId) -> Result<VerificationReport> {
    match theorem {
        TheoremId::Thm1_1 => check_thm1_1(ctx),
        TheoremId::Thm1_2 => check_thm1_2(ctx),
        TheoremId::Prop3_2 => check_prop3_2(ctx),
        TheoremId::Prop3_3 => check_prop3_3(ctx),
        TheoremId::Prop3_5 => check_prop3_5(ctx),
        TheoremId::CorEtaTransfer => check_cor_eta_transfer(ctx),
        TheoremId::Prop4_2 => check_prop4_2(ctx),
        TheoremId::Prop4_3 => check_prop4_3(ctx),
        TheoremId::Cor4_4 => check_cor4_4(ctx),
        TheoremId::Lemma2_1 => check_lemma2_1(ctx),
        TheoremId::Lemma2_2 => check_lemma2_2(ctx),
        TheoremId::Lemma3_1 => check_lemma3_1(ctx),
    }
}

/// Whether a corpus entry gets a row for `theorem` at prime `p`. Wreath
/// rows are produced only for the entries built as `C_p ≀ C_p` with
/// `p ∈ {2, 3}`; every other theorem applies to every entry and prime.
pub fn applies(entry: &CorpusEntry, p: u64, theorem: TheoremId) -> bool {
    match theorem {
        TheoremId::Lemma3_1 => entry.wreath_prime() == Some(p) && (p == 2 || p == 3),
        _ => true,
    }
}

/// All rows for a corpus entry, ordered by prime and then theorem.
pub fn verify_entry(
    entry: &CorpusEntry,
    theorems: &[TheoremId],
) -> Result<Vec<VerificationReport>> {
    let mut rows = Vec::new();
    for &p in &entry.primes {
        let wanted: Vec<TheoremId> = TheoremId::ALL
            .into_iter()
            .filter(|t| theorems.contains(t) && applies(entry, p, *t))
            .collect();
        if wanted.is_empty() {
            continue;
        }
        let ctx = SylowContext::new(&entry.group, p)?;
        for t in wanted {
            rows.push(check(&ctx, t)?);
        }
    }
    Ok(rows)
}

/// Single checks taking a group and a prime.
pub fn verify_thm_2ndgrun(g: &Arc<Group>, p: u64) -> Result<VerificationReport> {
    check_thm1_1(&SylowContext::new(g, p)?)
}

pub fn verify_prop_smallpwc_transfer(g: &Arc<Group>, p: u64) -> Result<VerificationReport> {
    check_prop3_2(&SylowContext::new(g, p)?)
}

pub fn verify_prop_pnilpotent(g: &Arc<Group>, p: u64) -> Result<VerificationReport> {
    check_prop3_3(&SylowContext::new(g, p)?)
}
