//! Self-verification: exhaustive identity sweeps and seeded randomized
//! property suites over the whole library.
//!
//! A [`Mutation`] swaps in a deliberately wrong formula so the suites can be
//! seen to fail; it never affects the library proper.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{firstbound_c3, oldbound_threshold, section_c3_bound};
use crate::chow::{binom_poly, chi_line_bundle, NumericalThreefold};
use crate::error::{Error, Result};
use crate::euler::{chi_closed_form, chi_dual_formula, chi_rr, chi_sheaf, ChernInput};
use crate::moduli::{check_cy_theorem, check_fano_theorem, check_fanocor, moduli_dimension, STANDARD_ASSERTIONS};
use crate::serre::{sheaf_from_curve, CurveData};
use crate::sheaf::Rank2Sheaf;
use crate::vanish::{infer, Context, FactSet, Group, Hypothesis, RuleId, SheafExpr};
use crate::Q;

/// Grid used by the exhaustive sweeps.
pub const SWEEP_R: std::ops::RangeInclusive<i64> = 1..=10;
pub const SWEEP_K: std::ops::RangeInclusive<i64> = -5..=5;
pub const SWEEP_D: std::ops::RangeInclusive<i64> = 1..=40;
pub const SWEEP_PA: std::ops::RangeInclusive<i64> = 0..=60;

/// Cases per randomized property suite.
pub const RANDOM_CASES: usize = 1000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    #[default]
    None,
    /// Ordinary binomials (zero below range) in the dual Euler characteristic.
    StandardBinomial,
    /// Twisting forgets the `t²·h³` term of `c₂`.
    BrokenTwist,
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Mutation::None),
            "standard-binomial" => Ok(Mutation::StandardBinomial),
            "broken-twist" => Ok(Mutation::BrokenTwist),
            _ => Err(Error::InvalidInput(format!("unknown mutation {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
    pub millis: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} {:>8} cases {:>6} failures {:>6} ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failures,
            self.millis
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, "  first: {first}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub mutation: Mutation,
    pub suites: Vec<SuiteResult>,
    pub millis: u128,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

/// Tally of one suite; `check` records a failing case by its description.
struct Tally {
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first.is_none() {
            self.first = other.first;
        }
        self
    }
}

fn run(name: &str, body: impl FnOnce() -> Tally) -> SuiteResult {
    let start = Instant::now();
    let t = body();
    SuiteResult {
        name: name.to_string(),
        cases: t.cases,
        failures: t.failures,
        first_failure: t.first,
        millis: start.elapsed().as_millis(),
    }
}

fn hypersurfaces() -> Vec<Arc<NumericalThreefold>> {
    SWEEP_R
        .map(|r| Arc::new(NumericalThreefold::hypersurface(r).expect("positive degree")))
        .collect()
}

fn dual_formula(mutation: Mutation, r: i64, k: i64, pa: &Q) -> Q {
    if mutation != Mutation::StandardBinomial {
        return chi_dual_formula(r, k, pa);
    }
    let c4 = |n: i64| Q::from(if n < 4 { 0.into() } else { binom_poly(n) });
    pa - c4(r - 1 + k) + c4(k - 1) - c4(r - 1)
}

fn twist(mutation: Mutation, f: &Rank2Sheaf, t: i64) -> Rank2Sheaf {
    if mutation != Mutation::BrokenTwist {
        return f.twist(t);
    }
    let n = f.threefold().degree;
    Rank2Sheaf::new(
        Arc::clone(f.threefold_arc()),
        f.k() + 2 * t,
        f.s() + Q::from(t * f.k() * n),
        f.c3().clone(),
    )
    .expect("c3 unchanged")
}

/// Sweep every `(r, k, d, pa)` point with `c₃ ≥ 0`, in parallel over `(r, k)`.
fn sweep<F>(ks: std::ops::RangeInclusive<i64>, body: F) -> Tally
where
    F: Fn(&mut Tally, i64, i64, i64, i64, &Rank2Sheaf) + Sync,
{
    let xs = hypersurfaces();
    let pairs: Vec<(usize, i64)> = (0..xs.len()).flat_map(|i| ks.clone().map(move |k| (i, k))).collect();
    pairs
        .par_iter()
        .map(|&(i, k)| {
            let x = &xs[i];
            let r = x.hypersurface_degree.expect("hypersurface");
            let mut t = Tally::new();
            for d in SWEEP_D {
                for pa in SWEEP_PA {
                    let curve = CurveData::new(Q::from(d), pa).expect("d > 0");
                    if let Ok(f) = sheaf_from_curve(x, k, &curve) {
                        body(&mut t, r, k, d, pa, &f);
                    }
                }
            }
            t
        })
        .reduce(Tally::new, Tally::merge)
}

fn rank_one_rr() -> Tally {
    let mut t = Tally::new();
    for x in hypersurfaces() {
        let r = x.hypersurface_degree.expect("hypersurface");
        for m in -10..=10 {
            let lhs = chi_rr(&ChernInput::line_bundle(Arc::clone(&x), m));
            let rhs = chi_line_bundle(r, m).map(Q::from);
            t.check(rhs.as_ref().is_ok_and(|v| *v == lhs), || format!("r={r} m={m}"));
        }
    }
    t
}

fn closed_form() -> Tally {
    sweep(SWEEP_K, |t, r, k, d, pa, f| {
        let ok = chi_closed_form(r, k, &Q::from(d), &Q::from(pa)) == chi_sheaf(f);
        t.check(ok, || format!("r={r} k={k} d={d} pa={pa}"));
    })
}

/// Covers every `k`, not only `k ≥ 1`: the two binomial conventions agree
/// on non-negative arguments, so only `k ≤ 0` tells them apart.
fn dual_identity(mutation: Mutation) -> Tally {
    sweep(SWEEP_K, |t, r, k, d, pa, f| {
        let ok = dual_formula(mutation, r, k, &Q::from(pa)) == chi_sheaf(&f.dual());
        t.check(ok, || format!("r={r} k={k} d={d} pa={pa}"));
    })
}

fn canonical_zero() -> Tally {
    sweep(SWEEP_K, |t, r, k, d, pa, f| {
        if k == -f.threefold().a && f.c3().is_zero() {
            t.check(chi_sheaf(f).is_zero(), || format!("r={r} k={k} d={d} pa={pa}"));
        }
    })
}

fn castelnuovo() -> Tally {
    sweep(SWEEP_K, |t, r, k, d, pa, f| {
        let holds = section_c3_bound(f).holds;
        let genus_ok = 2 * pa <= (d - 1) * (d - 2);
        t.check(holds == genus_ok, || format!("r={r} k={k} d={d} pa={pa}"));
    })
}

fn oldbound() -> Tally {
    let mut t = Tally::new();
    for (s, n) in [(19, 31), (20, 66), (25, 89)] {
        let got = oldbound_threshold(s);
        t.check(got.as_ref().is_ok_and(|&g| g == n), || format!("S={s}: {got:?}"));
    }
    t
}

fn firstbound() -> Tally {
    let mut t = Tally::new();
    for x in hypersurfaces() {
        for s in 1..=40 {
            let f = Rank2Sheaf::new(Arc::clone(&x), 0, Q::from(s), Q::zero()).expect("c3 = 0");
            let ok = firstbound_c3(&x, 0, &Q::from(s), 1) == section_c3_bound(&f).rhs;
            t.check(ok, || format!("{} S={s}", x.label));
        }
    }
    t
}

fn constants() -> Tally {
    let mut t = Tally::new();
    let q = NumericalThreefold::hypersurface(5).expect("quintic");
    t.check(q.degree == 5 && q.a == 0 && q.b == 50, || format!("{q:?}"));
    t.check(q.chi_structure_sheaf().is_zero(), || "chi(O) on the quintic".into());
    let c = NumericalThreefold::hypersurface(3).expect("cubic");
    t.check(c.degree == 3 && c.a == 2 && c.b == 12, || format!("{c:?}"));
    t.check(c.chi_structure_sheaf() == 1, || "chi(O) on the cubic".into());
    for r in 1..=20 {
        let x = NumericalThreefold::hypersurface(r).expect("positive degree");
        let b = Q::from(r * (10 - 5 * r + r * r));
        t.check(x.degree == r && x.a == 5 - r && x.b == b, || format!("r={r}"));
    }
    t
}

fn conic_context() -> Context {
    let x = Arc::new(NumericalThreefold::hypersurface(3).expect("cubic"));
    Context::from_curve(&x, 1, &CurveData::new(Q::from(2), 0).expect("d > 0")).expect("c3 = 0")
}

fn inference_regression() -> Tally {
    let mut t = Tally::new();
    let ctx = conic_context().assume_all([
        Hypothesis::Section,
        Hypothesis::CurveRational,
        Hypothesis::CurveNotLine,
    ]);
    let want = [RuleId::AmpleDetDualH01, RuleId::RationalCurveDualH23];
    match infer(&ctx) {
        Ok(set) => {
            for i in [2u8, 3] {
                let g = Group::new(i, SheafExpr::Dual(0));
                let ok = set.get(g).is_some_and(|f| {
                    f.is_zero()
                        && f.provenance
                            .iter()
                            .any(|d| set.fact_rules_in(d).into_iter().eq(want))
                });
                t.check(ok, || format!("{g} missing or with other provenance"));
            }
        }
        Err(e) => t.check(false, || e.to_string()),
    }
    match infer(&ctx.without(Hypothesis::CurveRational)) {
        Ok(set) => {
            for i in [2u8, 3] {
                let g = Group::new(i, SheafExpr::Dual(0));
                t.check(set.get(g).is_none(), || format!("{g} survives without rationality"));
            }
        }
        Err(e) => t.check(false, || e.to_string()),
    }
    t
}

fn moduli_reports() -> Tally {
    let mut t = Tally::new();
    let ctx = conic_context().assume_all(STANDARD_ASSERTIONS.iter().copied());
    for (name, rep) in [("fano", check_fano_theorem(&ctx)), ("fanocor", check_fanocor(&ctx))] {
        let ok = rep
            .as_ref()
            .is_ok_and(|r| r.is_smooth() && r.dimension == Some(Q::from(2)));
        t.check(ok, || format!("{name}: {rep:?}"));
    }
    let x = Arc::new(NumericalThreefold::hypersurface(5).expect("quintic"));
    let cy = Context::from_curve(&x, 0, &CurveData::new(Q::from(5), 1).expect("d > 0"))
        .expect("c3 = 0")
        .assume_all([
            Hypothesis::Stable,
            Hypothesis::Section,
            Hypothesis::H1IcDetZero,
            Hypothesis::H1NormalZero,
        ]);
    let rep = check_cy_theorem(&cy);
    let ok = rep.as_ref().is_ok_and(|r| {
        r.is_smooth() && r.dimension == Some(Q::zero()) && r.notes.iter().any(|n| n.contains("tension"))
    });
    t.check(ok, || format!("cy: {rep:?}"));
    t
}

/// A random threefold: usually a hypersurface, sometimes arbitrary data.
fn random_threefold(rng: &mut ChaCha8Rng) -> Arc<NumericalThreefold> {
    if rng.gen_bool(0.7) {
        Arc::new(NumericalThreefold::hypersurface(rng.gen_range(1..=12)).expect("positive degree"))
    } else {
        let n = rng.gen_range(1..=30);
        let a = rng.gen_range(-6..=6);
        let b = Q::new(rng.gen_range(-200..=200), rng.gen_range(1..=4));
        Arc::new(NumericalThreefold::new(n, a, b, "random").expect("positive degree"))
    }
}

fn random_sheaf(rng: &mut ChaCha8Rng) -> Rank2Sheaf {
    let x = random_threefold(rng);
    let k = rng.gen_range(-20..=20);
    let s = Q::new(rng.gen_range(-500..=500), rng.gen_range(1..=3));
    let c3 = Q::new(rng.gen_range(0..=300), rng.gen_range(1..=2));
    Rank2Sheaf::new(x, k, s, c3).expect("c3 >= 0")
}

fn group_action(rng: &mut ChaCha8Rng, mutation: Mutation) -> Tally {
    let mut t = Tally::new();
    for _ in 0..RANDOM_CASES {
        let f = random_sheaf(rng);
        let (a, b) = (rng.gen_range(-30..=30), rng.gen_range(-30..=30));
        let ok = twist(mutation, &twist(mutation, &f, a), b) == twist(mutation, &f, a + b)
            && twist(mutation, &f, 0) == f;
        t.check(ok, || format!("{f:?} t1={a} t2={b}"));
    }
    t
}

fn dual_involution(rng: &mut ChaCha8Rng, mutation: Mutation) -> Tally {
    let mut t = Tally::new();
    for _ in 0..RANDOM_CASES {
        let f = random_sheaf(rng);
        let s = rng.gen_range(-30..=30);
        let ok = f.dual().dual() == f
            && twist(mutation, &f, s).dual() == twist(mutation, &f.dual(), -s);
        t.check(ok, || format!("{f:?} t={s}"));
    }
    t
}

fn c3_invariance(rng: &mut ChaCha8Rng, mutation: Mutation) -> Tally {
    let mut t = Tally::new();
    for _ in 0..RANDOM_CASES {
        let f = random_sheaf(rng);
        let s = rng.gen_range(-50..=50);
        t.check(twist(mutation, &f, s).c3() == f.c3(), || format!("{f:?} t={s}"));
    }
    t
}

fn parity_uniqueness(rng: &mut ChaCha8Rng, mutation: Mutation) -> Tally {
    let mut t = Tally::new();
    for _ in 0..RANDOM_CASES {
        let f = random_sheaf(rng);
        let a = f.threefold().a;
        let hits: Vec<i64> = (-40..=40).filter(|&s| twist(mutation, &f, s).k() == -a).collect();
        let ok = match f.canonical_parity() {
            Some(m) => hits == [m],
            None => hits.is_empty(),
        };
        t.check(ok, || format!("{f:?} hits={hits:?}"));
    }
    t
}

fn dimension_invariance(rng: &mut ChaCha8Rng, mutation: Mutation) -> Tally {
    let mut t = Tally::new();
    for _ in 0..RANDOM_CASES {
        let f = random_sheaf(rng);
        let s = rng.gen_range(-30..=30);
        let ok = moduli_dimension(&twist(mutation, &f, s)) == moduli_dimension(&f)
            && twist(mutation, &f, s).delta_pair() == f.delta_pair();
        t.check(ok, || format!("{f:?} t={s}"));
    }
    t
}

const POOL: &[Hypothesis] = &[
    Hypothesis::Stable,
    Hypothesis::CurveConnected,
    Hypothesis::CurveRational,
    Hypothesis::CurveNotLine,
    Hypothesis::ComponentCount(1),
    Hypothesis::ComponentCount(2),
    Hypothesis::H1IcDetOmegaZero,
    Hypothesis::H1IcDetZero,
    Hypothesis::NonspecialDetOnCurve,
    Hypothesis::H1NormalZero,
    Hypothesis::PicardRankOne,
    Hypothesis::LineBundlesH12Zero,
    Hypothesis::H2OZero,
    Hypothesis::DetAmple,
    Hypothesis::DetEffective,
    Hypothesis::H0CDetOmegaZero,
    Hypothesis::Lci,
    Hypothesis::H2FDualZero,
];

fn random_context(rng: &mut ChaCha8Rng) -> Option<Context> {
    let x = if rng.gen_bool(0.85) {
        Arc::new(NumericalThreefold::hypersurface(rng.gen_range(1..=5)).expect("positive degree"))
    } else {
        random_threefold(rng)
    };
    let k = rng.gen_range(-3..=4);
    let d = rng.gen_range(1..=12);
    let pa = rng.gen_range(0..=8);
    let r = x.hypersurface_degree.unwrap_or(5);
    let mut ctx = Context::from_curve(&x, k, &CurveData::new(Q::from(d), pa).ok()?)
        .ok()?
        .with_twists(-2..=3);
    if rng.gen_bool(0.9) {
        ctx = ctx.assume(Hypothesis::Section);
    }
    let mut pool = POOL.to_vec();
    pool.push(Hypothesis::H0IcZero(r - 5 + k));
    pool.shuffle(rng);
    let take = rng.gen_range(1..=7);
    Some(ctx.assume_all(pool.into_iter().take(take)))
}

/// Facts must replay, and removing one assertion must keep exactly the
/// facts that had a derivation independent of it.
fn provenance_soundness(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::new();
    let mut attempts = 0;
    while t.cases < RANDOM_CASES as u64 && attempts < 50 * RANDOM_CASES {
        attempts += 1;
        let Some(ctx) = random_context(rng) else { continue };
        let Ok(full) = infer(&ctx) else { continue };
        let asserted: Vec<Hypothesis> = ctx.assumptions().iter().copied().collect();
        let Some(&removed) = asserted.choose(rng) else { continue };
        let reduced = infer(&ctx.clone().without(removed));
        let ok = full.replay().is_ok() && reduced.as_ref().is_ok_and(|r| agrees(&full, r, removed));
        t.check(ok, || format!("{:?} minus {removed}", ctx.assumptions()));
    }
    t
}

fn agrees(full: &FactSet, reduced: &FactSet, removed: Hypothesis) -> bool {
    let facts_ok = full.iter().all(|f| {
        let after = reduced.get(f.group).map(|g| g.status);
        if full.fact_survives(f, removed) {
            after == Some(f.status)
        } else {
            after != Some(f.status)
        }
    });
    let no_new = reduced
        .iter()
        .all(|g| full.get(g.group).is_some_and(|f| f.status.implies(g.status)));
    let hyps_ok = full
        .hypotheses
        .keys()
        .all(|h| full.hypothesis_survives(*h, removed) == reduced.holds(*h));
    facts_ok && no_new && hyps_ok && reduced.replay().is_ok()
}

/// Run every suite. Randomized suites draw from a ChaCha stream seeded by
/// `seed`, so a run is reproducible.
pub fn run_selftest(mutation: Mutation, seed: u64) -> SelftestReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        run("rank-one-rr", rank_one_rr),
        run("closed-form-vs-rr", closed_form),
        run("dual-euler-identity", || dual_identity(mutation)),
        run("canonical-det-zero-chi", canonical_zero),
        run("oldbound-thresholds", oldbound),
        run("castelnuovo-equivalence", castelnuovo),
        run("firstbound-degeneration", firstbound),
        run("hypersurface-constants", constants),
        run("inference-regression", inference_regression),
        run("moduli-reports", moduli_reports),
        run("twist-group-action", || group_action(&mut rng, mutation)),
        run("dual-involution", || dual_involution(&mut rng, mutation)),
        run("c3-twist-invariance", || c3_invariance(&mut rng, mutation)),
        run("parity-uniqueness", || parity_uniqueness(&mut rng, mutation)),
        run("dimension-twist-invariance", || dimension_invariance(&mut rng, mutation)),
        run("provenance-soundness", || provenance_soundness(&mut rng)),
    ];
    SelftestReport {
        seed,
        mutation,
        suites,
        millis: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suite<'a>(r: &'a SelftestReport, name: &str) -> &'a SuiteResult {
        r.suites.iter().find(|s| s.name == name).unwrap()
    }

    #[test]
    fn mutations_are_caught() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(dual_identity(Mutation::StandardBinomial).failures > 0);
        assert!(dimension_invariance(&mut rng, Mutation::BrokenTwist).failures > 0);
        assert!(group_action(&mut rng, Mutation::BrokenTwist).failures > 0);
    }

    #[test]
    fn mutation_names() {
        assert_eq!("broken-twist".parse::<Mutation>().unwrap(), Mutation::BrokenTwist);
        assert!("other".parse::<Mutation>().is_err());
    }

    #[test]
    fn provenance_suite_reaches_its_quota() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = provenance_soundness(&mut rng);
        assert_eq!(t.cases, RANDOM_CASES as u64);
        assert_eq!(t.failures, 0, "{:?}", t.first);
    }

    #[test]
    fn small_suites_pass() {
        let r = SelftestReport {
            seed: 0,
            mutation: Mutation::None,
            suites: vec![
                run("oldbound-thresholds", oldbound),
                run("inference-regression", inference_regression),
                run("moduli-reports", moduli_reports),
            ],
            millis: 0,
        };
        for s in &r.suites {
            assert!(s.passed(), "{s}");
        }
        assert!(suite(&r, "moduli-reports").cases == 3);
    }
}
