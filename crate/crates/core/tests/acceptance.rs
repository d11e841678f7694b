//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflexive::bounds::{firstbound_c3, oldbound_threshold, section_c3_bound};
use reflexive::chow::{chi_line_bundle, TruncatedSeries};
use reflexive::euler::{chi_closed_form, chi_dual_formula, chi_rr, ChernInput};
use reflexive::moduli::{check_cy_theorem, check_fano_theorem, check_fanocor, moduli_dimension, STANDARD_ASSERTIONS};
use reflexive::serre::sheaf_from_curve;
use reflexive::vanish::{infer, Context, FactSet, Group, Hypothesis, RuleId, SheafExpr};
use reflexive::verify::{run_selftest, Mutation};
use reflexive::{CurveData, NumericalThreefold, Rank2Sheaf, Q};

const RS: std::ops::RangeInclusive<i64> = 1..=10;
const KS: std::ops::RangeInclusive<i64> = -5..=5;
const DS: std::ops::RangeInclusive<i64> = 1..=40;
const PAS: std::ops::RangeInclusive<i64> = 0..=60;
const CASES: usize = 1000;

struct Outcome {
    cases: u64,
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 3 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }
}

fn criterion(id: u32, name: &str, budget: Option<Duration>, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = body();
    let elapsed = start.elapsed();
    let in_time = budget.is_none_or(|b| elapsed < b);
    let pass = out.failures.is_empty() && out.cases > 0 && in_time;
    let budget_note = budget.map_or(String::new(), |b| format!(" / budget {} ms", b.as_millis()));
    println!(
        "{} {id:>2} {name:<44} {:>7} cases {:>6} failures {:>7} ms{budget_note}",
        if pass { "PASS" } else { "FAIL" },
        out.cases,
        out.failures.len(),
        elapsed.as_millis(),
    );
    for f in out.failures.iter().filter(|f| !f.is_empty()) {
        println!("       {f}");
    }
    if !in_time {
        println!("       over the time budget");
    }
    pass
}

fn hypersurface(r: i64) -> Arc<NumericalThreefold> {
    Arc::new(NumericalThreefold::hypersurface(r).unwrap())
}

fn rr(f: &Rank2Sheaf) -> Q {
    chi_rr(&ChernInput::new(2, f.k(), f.s().clone(), f.c3().clone(), Arc::clone(f.threefold_arc())).unwrap())
}

/// Every sweep point with `c₃ ≥ 0`.
fn sweep(ks: std::ops::RangeInclusive<i64>, mut body: impl FnMut(i64, i64, i64, i64, &Rank2Sheaf)) {
    for r in RS {
        let x = hypersurface(r);
        for k in ks.clone() {
            for d in DS {
                for pa in PAS {
                    let curve = CurveData::new(Q::from(d), pa).unwrap();
                    if let Ok(f) = sheaf_from_curve(&x, k, &curve) {
                        body(r, k, d, pa, &f);
                    }
                }
            }
        }
    }
}

fn rank_one() -> Outcome {
    let mut o = Outcome::new();
    for r in RS {
        let x = hypersurface(r);
        for m in -10..=10 {
            let lhs = chi_rr(&ChernInput::line_bundle(Arc::clone(&x), m));
            let rhs = Q::from_bigint(chi_line_bundle(r, m).unwrap());
            o.check(lhs == rhs, || format!("r={r} m={m}: {lhs} != {rhs}"));
        }
    }
    o
}

fn closed_form() -> Outcome {
    let mut o = Outcome::new();
    sweep(KS, |r, k, d, pa, f| {
        let lhs = chi_closed_form(r, k, &Q::from(d), &Q::from(pa));
        let rhs = rr(f);
        o.check(lhs == rhs, || format!("r={r} k={k} d={d} pa={pa}: {lhs} != {rhs}"));
    });
    o
}

fn dual_identity() -> Outcome {
    let mut o = Outcome::new();
    sweep(1..=*KS.end(), |r, k, d, pa, f| {
        let lhs = chi_dual_formula(r, k, &Q::from(pa));
        let rhs = rr(&f.dual());
        o.check(lhs == rhs, || format!("r={r} k={k} d={d} pa={pa}: {lhs} != {rhs}"));
    });
    o.check(chi_dual_formula(4, 1, &Q::from(1)).is_zero(), || "(4,1,1) != 0".into());
    for pa in PAS {
        o.check(chi_dual_formula(5, 1, &Q::from(pa)) == pa - 6, || format!("(5,1,{pa}) != pa-6"));
    }
    o
}

fn canonical_zero() -> Outcome {
    let mut o = Outcome::new();
    sweep(KS, |r, k, d, pa, f| {
        if k == -f.threefold().a && f.c3().is_zero() {
            o.check(rr(f).is_zero(), || format!("r={r} k={k} d={d} pa={pa}"));
        }
    });
    o
}

fn oldbound() -> Outcome {
    let mut o = Outcome::new();
    for (s, want) in [(19, 31), (20, 66), (25, 89)] {
        let got = oldbound_threshold(s).unwrap();
        o.check(got == want, || format!("S={s}: {got} != {want}"));
    }
    // Brute force over n: least n >= 4S - 27 with (2(n - 4S + 27))² >= 60S - 525.
    for s in 20..=200 {
        let disc = 60 * s - 525;
        let brute = (4 * s - 27..).find(|n: &i64| 4 * (n - 4 * s + 27).pow(2) >= disc).unwrap();
        o.check(oldbound_threshold(s).unwrap() == brute, || format!("S={s}: brute force gives {brute}"));
    }
    o
}

fn castelnuovo() -> Outcome {
    let mut o = Outcome::new();
    sweep(KS, |r, k, d, pa, f| {
        let holds = section_c3_bound(f).holds;
        let genus = Q::new((d - 1) * (d - 2), 2) >= pa;
        o.check(holds == genus, || format!("r={r} k={k} d={d} pa={pa}"));
    });
    o
}

fn firstbound() -> Outcome {
    let mut o = Outcome::new();
    for r in RS {
        let x = hypersurface(r);
        for s in 1..=40 {
            let f = Rank2Sheaf::new(Arc::clone(&x), 0, Q::from(s), Q::zero()).unwrap();
            let lhs = firstbound_c3(&x, 0, &Q::from(s), 1);
            let rhs = section_c3_bound(&f).rhs;
            o.check(lhs == rhs, || format!("r={r} S={s}: {lhs} != {rhs}"));
        }
    }
    o
}

fn constants() -> Outcome {
    let mut o = Outcome::new();
    let q5 = NumericalThreefold::hypersurface(5).unwrap();
    o.check((q5.degree, q5.a, q5.b.clone()) == (5, 0, Q::from(50)), || format!("{q5:?}"));
    o.check(q5.chi_structure_sheaf().is_zero(), || "chi(O) of the quintic".into());
    let c3 = NumericalThreefold::hypersurface(3).unwrap();
    o.check((c3.degree, c3.a, c3.b.clone()) == (3, 2, Q::from(12)), || format!("{c3:?}"));
    o.check(c3.chi_structure_sheaf() == Q::one(), || "chi(O) of the cubic".into());
    let ambient = TruncatedSeries::linear(1, 3).pow(5);
    for r in 1..=20 {
        let x = NumericalThreefold::hypersurface(r).unwrap();
        // c(T_X)·(1 + r h) = (1 + h)⁵ mod h³
        let chern = TruncatedSeries::new(vec![Q::one(), Q::from(x.a), &x.b / r], 3);
        let back = chern.mul(&TruncatedSeries::linear(r, 3));
        o.check(back == ambient, || format!("r={r}: series division"));
        o.check(
            x.a == 5 - r && x.b == r * (10 - 5 * r + r * r),
            || format!("r={r}: (a, b) = ({}, {})", x.a, x.b),
        );
    }
    o
}

fn conic(extra: &[Hypothesis]) -> FactSet {
    let x = hypersurface(3);
    let ctx = Context::from_curve(&x, 1, &CurveData::new(Q::from(2), 0).unwrap())
        .unwrap()
        .assume_all([Hypothesis::Section, Hypothesis::CurveNotLine])
        .assume_all(extra.iter().copied());
    infer(&ctx).unwrap()
}

fn inference() -> Outcome {
    let mut o = Outcome::new();
    let with = conic(&[Hypothesis::CurveRational]);
    let without = conic(&[]);
    // Rationality also gives connectedness, which kills H^0 and H^1 of F*
    // by itself; compare against a connected baseline to isolate the rest.
    let connected = conic(&[Hypothesis::CurveConnected]);
    let h2 = Group::new(2, SheafExpr::Dual(0));
    let h3 = Group::new(3, SheafExpr::Dual(0));
    let gained: Vec<Group> = with
        .iter()
        .filter(|f| matches!(f.group.expr, SheafExpr::Dual(_)) && connected.get(f.group) != Some(f))
        .map(|f| f.group)
        .collect();
    o.check(gained == vec![h2, h3], || format!("facts on F* gained by rationality: {gained:?}"));
    let two_rule = vec![RuleId::AmpleDetDualH01, RuleId::RationalCurveDualH23];
    for g in [h2, h3] {
        let f = with.get(g);
        o.check(f.is_some_and(|f| f.is_zero()), || format!("{g} not derived"));
        let chains: Vec<Vec<RuleId>> = f
            .map(|f| f.provenance.iter().map(|d| with.fact_rules_in(d).into_iter().collect()).collect())
            .unwrap_or_default();
        o.check(chains.contains(&two_rule), || format!("{g}: provenance chains {chains:?}"));
        o.check(without.get(g).is_none(), || format!("{g} survives without rationality"));
    }
    o.check(with.replay().is_ok(), || "replay".into());
    o
}

fn moduli() -> Outcome {
    let mut o = Outcome::new();
    let cubic = hypersurface(3);
    let ctx = Context::from_curve(&cubic, 1, &CurveData::new(Q::from(2), 0).unwrap())
        .unwrap()
        .assume_all(STANDARD_ASSERTIONS.iter().copied());
    for (name, report) in [("fano", check_fano_theorem(&ctx)), ("fanocor", check_fanocor(&ctx))] {
        let ok = report.as_ref().is_ok_and(|r| r.is_smooth() && r.dimension == Some(Q::from(2)));
        o.check(ok, || format!("{name}: {report:?}"));
    }
    // Independent expansion: 1 − ab/6 + (4aS − ak²N)/2 with a = 2, b = 12, N = 3, k = 1, S = 2.
    let by_hand = Q::one() - Q::from(2 * 12) / 6 + Q::from(4 * 2 * 2 - 2 * 3) / 2;
    o.check(moduli_dimension(ctx.sheaf()) == by_hand, || "dimension expansion".into());

    let quintic = hypersurface(5);
    let ctx = Context::from_curve(&quintic, 0, &CurveData::new(Q::from(5), 1).unwrap())
        .unwrap()
        .assume_all([
            Hypothesis::Stable,
            Hypothesis::Section,
            Hypothesis::H1IcDetZero,
            Hypothesis::H1NormalZero,
        ]);
    let report = check_cy_theorem(&ctx);
    let ok = report.as_ref().is_ok_and(|r| {
        r.is_smooth() && r.dimension == Some(Q::zero()) && r.notes.iter().any(|n| n.contains("tension"))
    });
    o.check(ok, || format!("cy: {report:?}"));
    o
}

fn random_sheaf(rng: &mut ChaCha8Rng) -> Rank2Sheaf {
    let x = Arc::new(
        NumericalThreefold::new(rng.gen_range(1..=20), rng.gen_range(-6..=6), Q::new(rng.gen_range(-200..=200), rng.gen_range(1..=4)), "random")
            .unwrap(),
    );
    let s = Q::new(rng.gen_range(-300..=300), rng.gen_range(1..=3));
    let c3 = Q::new(rng.gen_range(0..=300), rng.gen_range(1..=2));
    Rank2Sheaf::new(x, rng.gen_range(-20..=20), s, c3).unwrap()
}

fn property(rng: &mut ChaCha8Rng, mut prop: impl FnMut(&mut ChaCha8Rng, &Rank2Sheaf) -> bool) -> Outcome {
    let mut o = Outcome::new();
    for _ in 0..CASES {
        let f = random_sheaf(rng);
        o.check(prop(rng, &f), || format!("{f:?}"));
    }
    o
}

const POOL: &[Hypothesis] = &[
    Hypothesis::Section,
    Hypothesis::Stable,
    Hypothesis::CurveConnected,
    Hypothesis::CurveRational,
    Hypothesis::CurveNotLine,
    Hypothesis::ComponentCount(1),
    Hypothesis::PicardRankOne,
    Hypothesis::H1IcDetZero,
    Hypothesis::H1IcDetOmegaZero,
    Hypothesis::H1NormalZero,
    Hypothesis::H0IcZero(0),
    Hypothesis::NonspecialDetOnCurve,
    Hypothesis::DetBigNef,
];

fn provenance(rng: &mut ChaCha8Rng) -> Outcome {
    let mut o = Outcome::new();
    while o.cases < CASES as u64 {
        let x = hypersurface(rng.gen_range(1..=6));
        let curve = CurveData::new(Q::from(rng.gen_range(1..=10)), rng.gen_range(0..=8)).unwrap();
        let Ok(ctx) = Context::from_curve(&x, rng.gen_range(-3..=3), &curve) else { continue };
        let n = rng.gen_range(1..=POOL.len());
        let ctx = ctx.assume_all(POOL.choose_multiple(rng, n).copied());
        let Ok(full) = infer(&ctx) else { continue };
        let removed = *ctx.assumptions().iter().collect::<Vec<_>>().choose(rng).unwrap();
        let reduced = infer(&ctx.clone().without(*removed));
        let ok = reduced.as_ref().is_ok_and(|reduced| {
            let facts = full.iter().all(|f| {
                let kept = reduced.get(f.group).is_some_and(|g| g.status == f.status);
                kept == full.fact_survives(f, *removed)
            });
            let monotone = reduced
                .iter()
                .all(|g| full.get(g.group).is_some_and(|f| f.status.implies(g.status)));
            facts && monotone && full.replay().is_ok() && reduced.replay().is_ok()
        });
        o.check(ok, || format!("{:?} minus {removed}", ctx.assumptions()));
    }
    o
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut o = Outcome::new();
    let mut merge = |name: &str, sub: Outcome| {
        o.cases += sub.cases;
        if sub.cases < CASES as u64 {
            o.failures.push(format!("{name}: only {} cases", sub.cases));
        }
        o.failures.extend(sub.failures.into_iter().map(|f| format!("{name}: {f}")));
    };
    merge(
        "twist group action",
        property(&mut rng, |rng, f| {
            let (s, t) = (rng.gen_range(-30..=30), rng.gen_range(-30..=30));
            f.twist(s).twist(t) == f.twist(s + t) && f.twist(0) == *f
        }),
    );
    merge("dual involution", property(&mut rng, |_, f| f.dual().dual() == *f && f.dual().s() == f.s()));
    merge(
        "c3 twist invariance",
        property(&mut rng, |rng, f| f.twist(rng.gen_range(-30..=30)).c3() == f.c3()),
    );
    merge(
        "parity twist uniqueness",
        property(&mut rng, |_, f| {
            let a = f.threefold().a;
            let hits: Vec<i64> = (-40..=40).filter(|m| f.twist(*m).k() == -a).collect();
            match f.canonical_parity() {
                Some(m) => hits == vec![m],
                None => hits.is_empty() && (a + f.k()) % 2 != 0,
            }
        }),
    );
    merge(
        "dimension twist invariance",
        property(&mut rng, |rng, f| moduli_dimension(&f.twist(rng.gen_range(-30..=30))) == moduli_dimension(f)),
    );
    merge("provenance soundness", provenance(&mut rng));

    let start = Instant::now();
    let report = run_selftest(Mutation::None, 0);
    let elapsed = start.elapsed();
    o.check(report.all_passed(), || "selftest has failing suites".into());
    o.check(elapsed < Duration::from_secs(30), || format!("selftest took {} ms", elapsed.as_millis()));
    o
}

fn main() {
    // `cargo test` passes harness flags; listing must succeed without running.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        criterion(1, "rank-one Riemann-Roch consistency", secs(1), rank_one),
        criterion(2, "closed form equals Riemann-Roch", secs(10), closed_form),
        criterion(3, "dual Euler characteristic identity", secs(10), dual_identity),
        criterion(4, "canonical determinant, c3 = 0 gives chi = 0", None, canonical_zero),
        criterion(5, "quintic H^2 twist thresholds", None, oldbound),
        criterion(6, "section bound equals Castelnuovo genus bound", None, castelnuovo),
        criterion(7, "twisted section bound at n = 0", None, firstbound),
        criterion(8, "hypersurface constants", None, constants),
        criterion(9, "rational non-line curve inference", None, inference),
        criterion(10, "moduli reports", None, moduli),
        criterion(11, "randomized property suites and selftest", secs(60), properties),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("{} criteria, {failed} failed", results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
