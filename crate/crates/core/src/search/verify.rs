//! Exhaustive verification of the non-trivial bound at small `n`.
//!
//! Every maximal intersecting family `B` of `P` is visited once per
//! isomorphism class. A class qualifies when its valuable part (layers
//! `q..=k`) has empty total intersection, which is exactly when the
//! multiset family `φ^{-1}(B)` is non-trivial. For qualifying classes the
//! verifier checks that `Σ_l C(k, l) |B(l)|` never exceeds `|H|`, collects the
//! classes attaining it, and checks the layer statements that the bound
//! rests on:
//!
//! * `missing-layer`: `(U - B)(n - k)` is non-empty,
//! * `layer-bound`: `|B(l)| <= |V(l)|` for `2 <= l <= w`,
//! * `valuable-structure`: `|B(q)| = |V(q)|` forces `B* ≅ V*`.
//!
//! The first statement depends on which element plays the role of `1`; it
//! is checked with every element as the center of `U`, which covers every
//! labeled family in the class. The other two are invariant under
//! relabeling.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{fold_maximal, maximal_iso_classes, IsoClass, SearchOptions};
use crate::coeffs;
use crate::families::hm_size;
use crate::universe::{
    all_masks, build_v, is_down_set_in_u, is_maximal_intersecting_definitional, is_up_set,
    pair_rule_holds, star, twist, union_never_full, SetFamily, SubsetMask,
};
use crate::{canon::mix64, Error, Multiplicity, Params, Result, VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamsRecord {
    pub n: usize,
    pub k: usize,
    pub m: Multiplicity,
    pub m_effective: usize,
    pub q: usize,
    pub w: usize,
}

impl From<&Params> for ParamsRecord {
    fn from(p: &Params) -> Self {
        ParamsRecord {
            n: p.n(),
            k: p.k(),
            m: p.requested_m(),
            m_effective: p.m(),
            q: p.q(),
            w: p.w(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniquenessVerdict {
    UniqueIso,
    MultipleIso,
    NotApplicable,
}

impl fmt::Display for UniquenessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UniquenessVerdict::UniqueIso => "unique-iso",
            UniquenessVerdict::MultipleIso => "multiple-iso",
            UniquenessVerdict::NotApplicable => "not-applicable",
        })
    }
}

/// The checks a verifier can run; names double as CLI arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Pair rule, up-set and size `2^(n-1) - 1` for every maximal family.
    PairRule,
    /// `(U - D) ∪ D^c` maximal iff `D` is a down-set with no covering pair.
    Twist,
    MissingLayer,
    LayerBound,
    ValuableStructure,
    Bound,
    Uniqueness,
}

impl Check {
    pub const LEMMAS: [Check; 5] = [
        Check::PairRule,
        Check::Twist,
        Check::MissingLayer,
        Check::LayerBound,
        Check::ValuableStructure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::PairRule => "pair-rule",
            Check::Twist => "twist",
            Check::MissingLayer => "missing-layer",
            Check::LayerBound => "layer-bound",
            Check::ValuableStructure => "valuable-structure",
            Check::Bound => "bound",
            Check::Uniqueness => "uniqueness",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Check::PairRule,
            Check::Twist,
            Check::MissingLayer,
            Check::LayerBound,
            Check::ValuableStructure,
            Check::Bound,
            Check::Uniqueness,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::Params(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub family: Vec<Vec<usize>>,
    pub detail: String,
}

impl Violation {
    fn new(check: Check, family: &SetFamily, detail: impl Into<String>) -> Self {
        Violation {
            check,
            family: family.to_lists(),
            detail: detail.into(),
        }
    }
}

/// Outcome of [`verify_main_theorem`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub tool_version: &'static str,
    pub params: ParamsRecord,
    /// `|H|`, as a decimal string.
    pub bound: String,
    /// Labeled maximal families covered.
    pub families_checked: u64,
    pub iso_classes_checked: usize,
    /// Classes whose valuable part has empty total intersection.
    pub qualifying_classes: usize,
    /// Canonical valuable parts of the classes attaining the bound, least first.
    pub achievers: Vec<Vec<Vec<usize>>>,
    pub uniqueness_verdict: UniquenessVerdict,
    pub lemma_violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.lemma_violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Outcome of a single structural check over the enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub tool_version: &'static str,
    pub check: Check,
    pub n: usize,
    pub params: Option<ParamsRecord>,
    /// Labeled families (or twisted subfamilies) covered.
    pub families_checked: u64,
    pub iso_classes_checked: usize,
    pub qualifying_classes: usize,
    pub violations: Vec<Violation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Everything derived once per parameter set.
struct Context {
    p: Params,
    coeffs: Vec<BigUint>,
    bound: BigUint,
    v_layers: Vec<usize>,
    v_star: SetFamily,
    /// Sets of size `n - k`, for the missing-layer check.
    co_k_sets: Vec<SubsetMask>,
}

impl Context {
    fn new(p: &Params, opts: &SearchOptions) -> Result<Self> {
        if !opts.unchecked {
            p.check_theorem_hypotheses()?;
        }
        let v = build_v(p)?;
        let t = coeffs::table(p.k(), p.requested_m());
        let n = p.n();
        Ok(Context {
            p: *p,
            coeffs: (0..=n).map(|l| t.get(l).clone()).collect(),
            bound: hm_size(p)?,
            v_layers: v.layer_sizes(),
            v_star: v.valuable_part(p).canonical_form(),
            co_k_sets: all_masks(n).filter(|s| s.len() == n - p.k()).collect(),
        })
    }

    fn value(&self, layers: &[usize]) -> BigUint {
        layers
            .iter()
            .zip(&self.coeffs)
            .filter(|(&count, c)| count > 0 && !c.is_zero())
            .map(|(&count, c)| c * BigUint::from(count))
            .sum()
    }
}

#[derive(Default)]
struct ClassOutcome {
    qualifying: bool,
    violations: Vec<Violation>,
    achiever: Option<SetFamily>,
}

fn evaluate(ctx: &Context, b: &SetFamily, checks: &[Check]) -> ClassOutcome {
    let p = &ctx.p;
    let n = p.n();
    let valuable = b.valuable_part(p);
    let mut out = ClassOutcome {
        qualifying: !valuable.has_common_element(),
        ..Default::default()
    };
    if !out.qualifying {
        return out;
    }
    let layers = b.layer_sizes();

    if checks.contains(&Check::MissingLayer) {
        for center in 1..=n {
            let present = ctx
                .co_k_sets
                .iter()
                .any(|s| s.contains(center) && !b.contains(*s));
            if !present {
                out.violations.push(Violation::new(
                    Check::MissingLayer,
                    b,
                    format!(
                        "every {}-set through {center} lies in the family",
                        n - p.k()
                    ),
                ));
            }
        }
    }
    if checks.contains(&Check::LayerBound) {
        for (l, (have, cap)) in layers.iter().zip(&ctx.v_layers).enumerate() {
            if !(2..=p.w()).contains(&l) || have <= cap {
                continue;
            }
            out.violations.push(Violation::new(
                Check::LayerBound,
                b,
                format!("|B({l})| = {have} > |V({l})| = {cap}"),
            ));
        }
    }
    let q = p.q();
    let mut valuable_canon = None;
    if checks.contains(&Check::ValuableStructure) && layers[q] == ctx.v_layers[q] {
        let canon = valuable.canonical_form();
        if canon != ctx.v_star {
            out.violations.push(Violation::new(
                Check::ValuableStructure,
                b,
                format!(
                    "|B({q})| = |V({q})| = {} but B* is not isomorphic to V*",
                    layers[q]
                ),
            ));
        }
        valuable_canon = Some(canon);
    }
    if checks.contains(&Check::Bound) {
        let value = ctx.value(&layers);
        if value > ctx.bound {
            out.violations.push(Violation::new(
                Check::Bound,
                b,
                format!("preimage size {value} exceeds {}", ctx.bound),
            ));
        }
        if value >= ctx.bound {
            out.achiever = Some(valuable_canon.unwrap_or_else(|| valuable.canonical_form()));
        }
    }
    out
}

struct Sweep {
    families_checked: u64,
    iso_classes_checked: usize,
    qualifying: usize,
    violations: Vec<Violation>,
    achievers: Vec<SetFamily>,
}

fn sweep(
    p: &Params,
    classes: Option<&[IsoClass]>,
    checks: &[Check],
    opts: &SearchOptions,
) -> Result<(Context, Sweep)> {
    let ctx = Context::new(p, opts)?;
    let owned;
    let classes = match classes {
        Some(c) => {
            if c.iter().any(|c| c.representative.n() != p.n()) {
                return Err(Error::Params(
                    "class list was enumerated for another n".into(),
                ));
            }
            c
        }
        None => {
            owned = maximal_iso_classes(p.n(), opts)?;
            &owned[..]
        }
    };
    let outcomes: Vec<ClassOutcome> = opts.run(|| {
        classes
            .par_iter()
            .map(|c| evaluate(&ctx, &c.representative, checks))
            .collect()
    });
    let mut result = Sweep {
        families_checked: classes.iter().map(|c| c.orbit_size).sum(),
        iso_classes_checked: classes.len(),
        qualifying: 0,
        violations: Vec::new(),
        achievers: Vec::new(),
    };
    for outcome in outcomes {
        result.qualifying += usize::from(outcome.qualifying);
        result.violations.extend(outcome.violations);
        result.achievers.extend(outcome.achiever);
    }
    result.achievers.sort();
    result.achievers.dedup();
    Ok((ctx, result))
}

/// Checks the bound `|φ^{-1}(B)| <= |H|` over every qualifying maximal
/// family, the layer statements, and uniqueness of the extremal class where
/// it is claimed.
pub fn verify_main_theorem(p: &Params, opts: &SearchOptions) -> Result<VerificationReport> {
    main_theorem(p, None, opts)
}

/// [`verify_main_theorem`] over a class list from [`maximal_iso_classes`],
/// so several parameter sets can share one enumeration.
pub fn verify_main_theorem_on(
    p: &Params,
    classes: &[IsoClass],
    opts: &SearchOptions,
) -> Result<VerificationReport> {
    main_theorem(p, Some(classes), opts)
}

fn main_theorem(
    p: &Params,
    classes: Option<&[IsoClass]>,
    opts: &SearchOptions,
) -> Result<VerificationReport> {
    let mut checks = vec![Check::MissingLayer, Check::LayerBound, Check::Bound];
    // With q = 1 no qualifying family has a 1-set, so |B(1)| = |V(1)| = 0
    // says nothing; uniqueness is then judged from the achievers alone.
    if p.q() >= 2 {
        checks.push(Check::ValuableStructure);
    }
    let (ctx, mut s) = sweep(p, classes, &checks, opts)?;
    let verdict = if !p.uniqueness_condition() {
        UniquenessVerdict::NotApplicable
    } else if s.achievers.len() == 1 && s.achievers[0] == ctx.v_star {
        UniquenessVerdict::UniqueIso
    } else {
        UniquenessVerdict::MultipleIso
    };
    if verdict == UniquenessVerdict::MultipleIso {
        s.violations.push(Violation {
            check: Check::Uniqueness,
            family: Vec::new(),
            detail: format!(
                "{} extremal classes where exactly one (V*) is expected",
                s.achievers.len()
            ),
        });
    }
    if s.achievers.is_empty() {
        s.violations.push(Violation {
            check: Check::Bound,
            family: Vec::new(),
            detail: "no family attains the bound".into(),
        });
    }
    Ok(VerificationReport {
        tool_version: VERSION,
        params: ParamsRecord::from(p),
        bound: ctx.bound.to_string(),
        families_checked: s.families_checked,
        iso_classes_checked: s.iso_classes_checked,
        qualifying_classes: s.qualifying,
        achievers: s.achievers.iter().map(SetFamily::to_lists).collect(),
        uniqueness_verdict: verdict,
        lemma_violations: s.violations,
    })
}

/// Runs one of the layer checks (`missing-layer`, `layer-bound`,
/// `valuable-structure`), optionally over a precomputed class list.
pub fn verify_layer_check(
    p: &Params,
    check: Check,
    classes: Option<&[IsoClass]>,
    opts: &SearchOptions,
) -> Result<LemmaReport> {
    if !matches!(
        check,
        Check::MissingLayer | Check::LayerBound | Check::ValuableStructure
    ) {
        return Err(Error::Params(format!("{check} is not a layer check")));
    }
    let (_, s) = sweep(p, classes, &[check], opts)?;
    Ok(LemmaReport {
        tool_version: VERSION,
        check,
        n: p.n(),
        params: Some(ParamsRecord::from(p)),
        families_checked: s.families_checked,
        iso_classes_checked: s.iso_classes_checked,
        qualifying_classes: s.qualifying,
        violations: s.violations,
    })
}

/// `(U - B)(n - k) ≠ ∅` for every qualifying maximal `B` and every choice
/// of the star's center.
pub fn verify_missing_layer(p: &Params, opts: &SearchOptions) -> Result<LemmaReport> {
    verify_layer_check(p, Check::MissingLayer, None, opts)
}

/// `|B(l)| <= |V(l)|` for every qualifying maximal `B` and `2 <= l <= w`.
pub fn verify_layer_bound(p: &Params, opts: &SearchOptions) -> Result<LemmaReport> {
    verify_layer_check(p, Check::LayerBound, None, opts)
}

/// `|B(q)| = |V(q)|` implies `B* ≅ V*` for every qualifying maximal `B`.
pub fn verify_valuable_structure(p: &Params, opts: &SearchOptions) -> Result<LemmaReport> {
    verify_layer_check(p, Check::ValuableStructure, None, opts)
}

/// Every labeled maximal family has size `2^(n-1) - 1`, obeys the pair
/// rule, is an up-set, and is maximal by the literal definition.
pub fn verify_pair_rule(n: usize, opts: &SearchOptions) -> Result<LemmaReport> {
    let expected = (1usize << (n - 1)) - 1;
    let parts = fold_maximal(
        n,
        opts,
        |acc: &mut (u64, Vec<Violation>), f| {
            acc.0 += 1;
            let mut fail = |what: &str| acc.1.push(Violation::new(Check::PairRule, &f, what));
            if f.len() != expected {
                fail("size differs from 2^(n-1) - 1");
            }
            if !pair_rule_holds(&f) {
                fail("pair rule fails");
            }
            if !is_up_set(&f) {
                fail("not an up-set");
            }
            if !is_maximal_intersecting_definitional(&f) {
                fail("not maximal by definition");
            }
        },
        || (0, Vec::new()),
    )?;
    let mut report = LemmaReport {
        tool_version: VERSION,
        check: Check::PairRule,
        n,
        params: None,
        families_checked: 0,
        iso_classes_checked: 0,
        qualifying_classes: 0,
        violations: Vec::new(),
    };
    for (count, violations) in parts {
        report.families_checked += count;
        report.violations.extend(violations);
    }
    Ok(report)
}

/// Largest star size for which every subfamily is tried.
pub const TWIST_EXHAUSTIVE_MAX: usize = 20;

/// Compares maximality of `(U - D) ∪ D^c` with the down-set and covering
/// conditions on `D`. With `samples = None` every `D ⊆ U` is tried (needs
/// `n <= 5`); otherwise a deterministic sample is drawn, half of it
/// down-closures of random families so both sides of the equivalence are
/// exercised.
pub fn verify_twist(n: usize, samples: Option<usize>, seed: u64) -> Result<LemmaReport> {
    if !(2..=crate::params::MAX_N).contains(&n) {
        return Err(Error::Params(format!("twist check needs 2 <= n, got {n}")));
    }
    let u = star(n, 1);
    let members: Vec<SubsetMask> = u.iter().collect();
    let mut report = LemmaReport {
        tool_version: VERSION,
        check: Check::Twist,
        n,
        params: None,
        families_checked: 0,
        iso_classes_checked: 0,
        qualifying_classes: 0,
        violations: Vec::new(),
    };
    let mut check_one = |d: SetFamily| -> Result<()> {
        let structural = is_down_set_in_u(&d)? && union_never_full(&d)?;
        let maximal = is_maximal_intersecting_definitional(&twist(&u, &d)?);
        report.families_checked += 1;
        report.qualifying_classes += usize::from(structural);
        if structural != maximal {
            report.violations.push(Violation::new(
                Check::Twist,
                &d,
                format!("conditions hold: {structural}, twist maximal: {maximal}"),
            ));
        }
        Ok(())
    };
    match samples {
        None => {
            if members.len() > TWIST_EXHAUSTIVE_MAX {
                return Err(Error::Guard(format!(
                    "2^{} subfamilies is too many for an exhaustive pass",
                    members.len()
                )));
            }
            for pick in 0u64..(1 << members.len()) {
                let d = SetFamily::from_masks(
                    n,
                    members
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| pick >> i & 1 == 1)
                        .map(|(_, b)| *b),
                );
                check_one(d)?;
            }
        }
        Some(count) => {
            let mut state = seed;
            let mut next = move || {
                state = state.wrapping_add(1);
                mix64(state)
            };
            for i in 0..count {
                let mut d = SetFamily::new(n);
                if i % 2 == 0 {
                    for b in &members {
                        if next() & 1 == 1 {
                            d.insert(*b);
                        }
                    }
                } else {
                    let generators = 1 + (next() % 3) as usize;
                    for _ in 0..generators {
                        let top = members[(next() % members.len() as u64) as usize];
                        for b in &members {
                            if b.is_subset_of(top) {
                                d.insert(*b);
                            }
                        }
                    }
                }
                check_one(d)?;
            }
        }
    }
    Ok(report)
}
