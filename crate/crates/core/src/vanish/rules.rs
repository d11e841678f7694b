//! The rule base. Each rule reads the context and the current fact set and
//! returns what it can conclude; it never mutates anything itself.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::context::Context;
use super::fact::{Derivation, Fact, FactSet, Group, Premise, Relation, SheafExpr, Status};
use super::hypothesis::Hypothesis;
use crate::chow::h0_line_bundle;
use crate::error::{Error, Result};
use crate::euler::{chi_dual_formula, chi_sheaf};
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    Asserted,
    // Rules concluding hypotheses.
    HypersurfaceLineBundles,
    Kodaira,
    DetDegree,
    PicardStability,
    RationalConnected,
    ConnectedComponents,
    NonspecialDegree,
    NonspecialNormalBundle,
    CyDeterminant,
    CurveDegreeDetOmega,
    CurveDegreeOmega,
    EffectiveDetCondition,
    // Rules concluding cohomology facts.
    HypersurfaceTwistH2,
    SectionTwistH2,
    DegreeKillsH2,
    TwistKillsH3H0,
    AmpleDetDualH01,
    DualH2FromGenus,
    RationalCurveDualH23,
    NonspecialH2,
    IdealH1DualH2,
    SelfDualH2,
    BigNefRationalDualH2,
    CanonicalDetDuality,
    ReflexiveNotAcm,
}

impl RuleId {
    /// Every rule, in the engine's default evaluation order.
    pub const ALL: &'static [RuleId] = &[
        RuleId::Asserted,
        RuleId::HypersurfaceLineBundles,
        RuleId::Kodaira,
        RuleId::DetDegree,
        RuleId::PicardStability,
        RuleId::RationalConnected,
        RuleId::ConnectedComponents,
        RuleId::NonspecialDegree,
        RuleId::NonspecialNormalBundle,
        RuleId::CyDeterminant,
        RuleId::CurveDegreeDetOmega,
        RuleId::CurveDegreeOmega,
        RuleId::EffectiveDetCondition,
        RuleId::HypersurfaceTwistH2,
        RuleId::SectionTwistH2,
        RuleId::DegreeKillsH2,
        RuleId::TwistKillsH3H0,
        RuleId::AmpleDetDualH01,
        RuleId::DualH2FromGenus,
        RuleId::RationalCurveDualH23,
        RuleId::NonspecialH2,
        RuleId::IdealH1DualH2,
        RuleId::SelfDualH2,
        RuleId::BigNefRationalDualH2,
        RuleId::CanonicalDetDuality,
        RuleId::ReflexiveNotAcm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Asserted => "asserted",
            RuleId::HypersurfaceLineBundles => "hypersurface-line-bundles",
            RuleId::Kodaira => "kodaira",
            RuleId::DetDegree => "det-degree",
            RuleId::PicardStability => "picard-stability",
            RuleId::RationalConnected => "rational-connected",
            RuleId::ConnectedComponents => "connected-components",
            RuleId::NonspecialDegree => "nonspecial-degree",
            RuleId::NonspecialNormalBundle => "nonspecial-normal-bundle",
            RuleId::CyDeterminant => "cy-determinant",
            RuleId::CurveDegreeDetOmega => "curve-degree-det-omega",
            RuleId::CurveDegreeOmega => "curve-degree-omega",
            RuleId::EffectiveDetCondition => "effective-det-condition",
            RuleId::HypersurfaceTwistH2 => "hypersurface-twist-h2",
            RuleId::SectionTwistH2 => "section-twist-h2",
            RuleId::DegreeKillsH2 => "degree-kills-h2",
            RuleId::TwistKillsH3H0 => "twist-kills-h3-h0",
            RuleId::AmpleDetDualH01 => "ample-det-dual-h01",
            RuleId::DualH2FromGenus => "dual-h2-from-genus",
            RuleId::RationalCurveDualH23 => "rational-curve-dual-h23",
            RuleId::NonspecialH2 => "nonspecial-h2",
            RuleId::IdealH1DualH2 => "ideal-h1-dual-h2",
            RuleId::SelfDualH2 => "self-dual-h2",
            RuleId::BigNefRationalDualH2 => "big-nef-rational-dual-h2",
            RuleId::CanonicalDetDuality => "canonical-det-duality",
            RuleId::ReflexiveNotAcm => "reflexive-not-acm",
        }
    }

    /// One-line statement of what the rule licenses.
    pub fn summary(self) -> &'static str {
        match self {
            RuleId::Asserted => "a vanishing supplied directly by the user",
            RuleId::HypersurfaceLineBundles => "H^1 and H^2 of every O_X(m) vanish on a hypersurface in P^4",
            RuleId::Kodaira => "ω_X^* ample kills H^1(O_X) and H^2(O_X)",
            RuleId::DetDegree => "O_X(k) is ample and big-nef for k >= 1, effective for k = 0 or k >= 0 on a hypersurface",
            RuleId::PicardStability => "with Pic(X) = Z, stability of F makes det F big and nef",
            RuleId::RationalConnected => "a rational curve is irreducible, hence connected",
            RuleId::ConnectedComponents => "C is connected iff h^0(O_C) = 1",
            RuleId::NonspecialDegree => "det F|_C is non-special once k·d > 2p_a - 2",
            RuleId::NonspecialNormalBundle => "det F nef on a rational curve: H^1(C, det F|_C) = 0, i.e. 2 + deg N > c3",
            RuleId::CyDeterminant => "ω_X = O_X identifies the two H^1(I_C ⊗ ...) conditions",
            RuleId::CurveDegreeDetOmega => "det F ⊗ ω_X has degree (k - a)d < 0 on C",
            RuleId::CurveDegreeOmega => "ω_X has degree -a·d < 0 on C",
            RuleId::EffectiveDetCondition => "det F effective: H^0(C, det F ⊗ ω|_C) = 0 implies H^0(C, ω|_C) = 0",
            RuleId::HypersurfaceTwistH2 => "on a hypersurface, p·d > c3 kills H^2(F ⊗ ω(p)); p·d = c3 bounds it by 1",
            RuleId::SectionTwistH2 => "a section plus H^2 vanishing of line bundles kills H^2(F ⊗ ω(n)) when n·d > c3",
            RuleId::DegreeKillsH2 => "on a hypersurface, k·d > 2p_a - 2 kills H^2(F)",
            RuleId::TwistKillsH3H0 => "on a hypersurface, p > max(0, -k) kills H^3(F(p) ⊗ ω) and H^0(F(-k-p))",
            RuleId::AmpleDetDualH01 => "ample det F and a connected zero curve kill H^0(F*) and H^1(F*)",
            RuleId::DualH2FromGenus => "r <= 4, effective det F, H^0(I_C(r-5+k)) = 0: h^2(F*) = p_a - h^0(O_X(r-5+k))",
            RuleId::RationalCurveDualH23 => "a rational non-line curve on a hypersurface of degree <= 3 with k = 1 kills H^2(F*) and H^3(F*)",
            RuleId::NonspecialH2 => "H^2(O_X) = 0, a section, det F|_C non-special: H^2(F) = 0",
            RuleId::IdealH1DualH2 => "H^2(O_X) = 0, F locally free with a section, H^1(I_C ⊗ det F ⊗ ω_X) = 0: H^2(F*) = 0",
            RuleId::SelfDualH2 => "a = k = 0 gives F ≅ F*, so H^2(F*) = 0 transfers to H^2(F)",
            RuleId::BigNefRationalDualH2 => "det F big and nef, C rational, H^2(O_X) = 0: H^2(F*) = 0",
            RuleId::CanonicalDetDuality => "det F = ω_X: c3 = 2h^2(F) - 2h^1(F)",
            RuleId::ReflexiveNotAcm => "c3 > 0: F is not L-ACM and h^2(F ⊗ L^n) = c3 for n << 0",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Something a rule concluded.
#[derive(Debug, Clone)]
pub enum Emission {
    Hypothesis(Hypothesis, Derivation),
    Fact(Fact),
    Relation(Relation),
}

fn assume(h: Hypothesis) -> Premise {
    Premise::Assumption(h)
}

fn check(s: impl Into<String>) -> Premise {
    Premise::Check(s.into())
}

fn builtin(s: impl Into<String>) -> Premise {
    Premise::Builtin(s.into())
}

fn zero_premise(group: Group) -> Premise {
    Premise::Fact {
        group,
        status: Status::Zero,
    }
}

fn h(i: u8, expr: SheafExpr) -> Group {
    Group::new(i, expr)
}

struct Out {
    rule: RuleId,
    items: Vec<Emission>,
}

impl Out {
    fn hyp(&mut self, h: Hypothesis, premises: Vec<Premise>) {
        self.items
            .push(Emission::Hypothesis(h, Derivation::new(self.rule, premises)));
    }

    fn fact(&mut self, group: Group, status: Status, premises: Vec<Premise>) {
        self.items.push(Emission::Fact(Fact::new(
            group,
            status,
            Derivation::new(self.rule, premises),
        )));
    }

    fn relation(&mut self, statement: String, asymptotic: bool, premises: Vec<Premise>) {
        self.items.push(Emission::Relation(Relation {
            rule: self.rule,
            statement,
            asymptotic,
            premises,
        }));
    }
}

/// Evaluate one rule against the current state.
pub fn apply(rule: RuleId, ctx: &Context, set: &FactSet) -> Result<Vec<Emission>> {
    let mut out = Out {
        rule,
        items: Vec::new(),
    };
    let x = ctx.threefold();
    let (a, k) = (x.a, ctx.k());
    let d = ctx.degree();
    let c3 = ctx.c3();
    let r = x.hypersurface_degree;
    let pa = ctx.genus();
    let holds = |h| set.holds(h);
    let hyp_check = || {
        check(format!(
            "X is a hypersurface of degree {} in P^4",
            r.unwrap_or_default()
        ))
    };

    match rule {
        RuleId::Asserted => {
            if holds(Hypothesis::H2FZero) && ctx.is_asserted(Hypothesis::H2FZero) {
                out.fact(h(2, SheafExpr::F(0)), Status::Zero, vec![assume(Hypothesis::H2FZero)]);
            }
            if holds(Hypothesis::H2FDualZero) && ctx.is_asserted(Hypothesis::H2FDualZero) {
                out.fact(
                    h(2, SheafExpr::Dual(0)),
                    Status::Zero,
                    vec![assume(Hypothesis::H2FDualZero)],
                );
            }
        }

        RuleId::HypersurfaceLineBundles => {
            if r.is_some() {
                for target in [
                    Hypothesis::LineBundlesH12Zero,
                    Hypothesis::H1OZero,
                    Hypothesis::H2OZero,
                ] {
                    out.hyp(target, vec![hyp_check(), builtin("Koszul sequence of X ⊂ P^4")]);
                }
            }
        }

        RuleId::Kodaira => {
            if a > 0 {
                for target in [Hypothesis::H1OZero, Hypothesis::H2OZero] {
                    out.hyp(
                        target,
                        vec![
                            check(format!("c1(X) = {a}h with a > 0, so X is Fano")),
                            builtin("Kodaira vanishing"),
                        ],
                    );
                }
            }
        }

        RuleId::DetDegree => {
            if k >= 1 {
                for target in [Hypothesis::DetAmple, Hypothesis::DetBigNef] {
                    out.hyp(target, vec![check(format!("det F = O_X({k}) with k >= 1"))]);
                }
            }
            if k == 0 {
                out.hyp(Hypothesis::DetEffective, vec![check("det F = O_X")]);
            } else if k > 0 && r.is_some() {
                out.hyp(
                    Hypothesis::DetEffective,
                    vec![hyp_check(), check(format!("det F = O_X({k}) with k > 0"))],
                );
            }
        }

        RuleId::PicardStability => {
            if holds(Hypothesis::Stable) && holds(Hypothesis::PicardRankOne) {
                out.hyp(
                    Hypothesis::DetBigNef,
                    vec![assume(Hypothesis::Stable), assume(Hypothesis::PicardRankOne)],
                );
            }
        }

        RuleId::RationalConnected => {
            if holds(Hypothesis::CurveRational) {
                out.hyp(Hypothesis::CurveConnected, vec![assume(Hypothesis::CurveRational)]);
            }
        }

        RuleId::ConnectedComponents => {
            if holds(Hypothesis::CurveConnected) {
                if let Some(c) = set.hypotheses.keys().find_map(|h| match h {
                    Hypothesis::ComponentCount(c) if *c != 1 => Some(*c),
                    _ => None,
                }) {
                    return Err(Error::Inconsistent(format!(
                        "C is connected but h^0(O_C) = {c} is asserted"
                    )));
                }
                out.hyp(Hypothesis::ComponentCount(1), vec![assume(Hypothesis::CurveConnected)]);
            }
            if holds(Hypothesis::ComponentCount(1)) {
                out.hyp(Hypothesis::CurveConnected, vec![assume(Hypothesis::ComponentCount(1))]);
            }
        }

        RuleId::NonspecialDegree => {
            if let (true, Some(pa)) = (holds(Hypothesis::Section), pa) {
                let lhs = d * k;
                if lhs > 2 * pa - 2 {
                    out.hyp(
                        Hypothesis::NonspecialDetOnCurve,
                        vec![
                            assume(Hypothesis::Section),
                            check(format!("k·d = {lhs} > 2p_a - 2 = {}", 2 * pa - 2)),
                        ],
                    );
                }
            }
        }

        RuleId::NonspecialNormalBundle => {
            let ready = holds(Hypothesis::Section)
                && holds(Hypothesis::CurveRational)
                && holds(Hypothesis::DetBigNef);
            if let (true, Some(0)) = (ready, pa) {
                let deg_n = d * a - 2;
                let lhs = &deg_n + 2;
                if &lhs > c3 {
                    let lci = if holds(Hypothesis::Lci) {
                        assume(Hypothesis::Lci)
                    } else {
                        builtin("deg N_C/X = 2p_a - 2 + a·d, valid for C a local complete intersection")
                    };
                    out.hyp(
                        Hypothesis::NonspecialDetOnCurve,
                        vec![
                            assume(Hypothesis::Section),
                            assume(Hypothesis::CurveRational),
                            assume(Hypothesis::DetBigNef),
                            check("p_a = 0"),
                            lci,
                            check(format!("2 + deg N = {lhs} > c3 = {c3}")),
                        ],
                    );
                }
            }
        }

        RuleId::CyDeterminant => {
            if a == 0 && holds(Hypothesis::H1IcDetZero) {
                out.hyp(
                    Hypothesis::H1IcDetOmegaZero,
                    vec![assume(Hypothesis::H1IcDetZero), check("a = 0, so ω_X = O_X")],
                );
            }
        }

        RuleId::CurveDegreeDetOmega => {
            let deg = d * (k - a);
            if holds(Hypothesis::Section) && deg.is_negative() {
                out.hyp(
                    Hypothesis::H0CDetOmegaZero,
                    vec![
                        assume(Hypothesis::Section),
                        check(format!("deg(det F ⊗ ω_X|_C) = (k - a)d = {deg} < 0")),
                        builtin("a negative-degree line bundle on an integral curve has no sections (C taken integral)"),
                    ],
                );
            }
        }

        RuleId::CurveDegreeOmega => {
            if holds(Hypothesis::Section) && a > 0 {
                out.hyp(
                    Hypothesis::H0COmegaZero,
                    vec![
                        assume(Hypothesis::Section),
                        check(format!("deg(ω_X|_C) = -a·d = {} < 0", -(d * a))),
                        builtin("a negative-degree line bundle on an integral curve has no sections (C taken integral)"),
                    ],
                );
            }
        }

        RuleId::EffectiveDetCondition => {
            if holds(Hypothesis::DetEffective) && holds(Hypothesis::H0CDetOmegaZero) {
                out.hyp(
                    Hypothesis::H0COmegaZero,
                    vec![assume(Hypothesis::DetEffective), assume(Hypothesis::H0CDetOmegaZero)],
                );
            }
        }

        RuleId::HypersurfaceTwistH2 => {
            if r.is_some() && holds(Hypothesis::Section) {
                let mut ps: BTreeSet<i64> = ctx.twists().clone();
                if c3.is_zero() {
                    ps.insert(1);
                }
                for p in ps {
                    let lhs = d * p;
                    let base = vec![hyp_check(), assume(Hypothesis::Section)];
                    if &lhs > c3 {
                        let mut prem = base;
                        prem.push(check(format!("p·d = {lhs} > c3 = {c3}")));
                        out.fact(h(2, SheafExpr::Omega(p)), Status::Zero, prem);
                    } else if &lhs == c3 {
                        let mut prem = base;
                        prem.push(check(format!("p·d = {lhs} = c3")));
                        out.fact(h(2, SheafExpr::Omega(p)), Status::DimAtMost(1), prem);
                    }
                }
                if c3.is_zero() {
                    if let Some(c) = set.hypotheses.keys().find_map(|h| match h {
                        Hypothesis::ComponentCount(c) => Some(*c),
                        _ => None,
                    }) {
                        out.fact(
                            h(2, SheafExpr::Omega(0)),
                            Status::DimEquals(u64::from(c) - 1),
                            vec![
                                hyp_check(),
                                assume(Hypothesis::Section),
                                check("c3 = 0, F locally free"),
                                assume(Hypothesis::ComponentCount(c)),
                            ],
                        );
                    }
                }
            }
        }

        RuleId::SectionTwistH2 => {
            if holds(Hypothesis::Section) {
                for &n in ctx.twists() {
                    let base = vec![assume(Hypothesis::Section)];
                    if holds(Hypothesis::LineBundlesH12Zero) {
                        let lhs = d * n;
                        let mut prem = base.clone();
                        prem.push(assume(Hypothesis::LineBundlesH12Zero));
                        if &lhs > c3 {
                            prem.push(check(format!("n·d = {lhs} > c3 = {c3}")));
                            out.fact(h(2, SheafExpr::Omega(n)), Status::Zero, prem);
                        } else {
                            out.relation(
                                format!(
                                    "h^2({}) <= h^1(C, det F ⊗ ω_X({n})|_C)",
                                    SheafExpr::Omega(n)
                                ),
                                false,
                                prem,
                            );
                        }
                    }
                    if n > 0 && n + k > 0 {
                        let mut prem = base;
                        prem.push(check(format!("n = {n} > 0 and n + k = {} > 0", n + k)));
                        prem.push(builtin("H^3(O_X(m)) = H^0(O_X(-m))^* = 0 for m > 0"));
                        out.fact(h(3, SheafExpr::Omega(n)), Status::Zero, prem);
                    }
                }
            }
        }

        RuleId::DegreeKillsH2 => {
            if let (Some(_), true, Some(pa)) = (r, holds(Hypothesis::Section), pa) {
                let lhs = d * k;
                if lhs > 2 * pa - 2 {
                    out.fact(
                        h(2, SheafExpr::F(0)),
                        Status::Zero,
                        vec![
                            hyp_check(),
                            assume(Hypothesis::Section),
                            check(format!("k·d = {lhs} > 2p_a - 2 = {}", 2 * pa - 2)),
                        ],
                    );
                }
            }
        }

        RuleId::TwistKillsH3H0 => {
            if r.is_some() && holds(Hypothesis::Section) {
                for &p in ctx.twists() {
                    if p > 0.max(-k) {
                        let prem = vec![
                            hyp_check(),
                            assume(Hypothesis::Section),
                            check(format!("p = {p} > max(0, -k) = {}", 0.max(-k))),
                        ];
                        out.fact(h(3, SheafExpr::Omega(p)), Status::Zero, prem.clone());
                        out.fact(h(0, SheafExpr::F(-k - p)), Status::Zero, prem);
                    }
                }
            }
        }

        RuleId::AmpleDetDualH01 => {
            let ready = holds(Hypothesis::DetAmple)
                && holds(Hypothesis::Section)
                && holds(Hypothesis::CurveConnected);
            if let (Some(r), true) = (r, ready) {
                let prem = vec![
                    hyp_check(),
                    assume(Hypothesis::DetAmple),
                    assume(Hypothesis::Section),
                    assume(Hypothesis::CurveConnected),
                ];
                out.fact(h(0, SheafExpr::Dual(0)), Status::Zero, prem.clone());
                out.fact(h(1, SheafExpr::Dual(0)), Status::Zero, prem.clone());
                if let Some(pa) = pa {
                    let chi = chi_dual_formula(r, k, &Q::from(pa));
                    out.relation(format!("h^2(F*) - h^3(F*) = χ(F*) = {chi}"), false, prem);
                }
            }
        }

        RuleId::DualH2FromGenus => {
            let ready = holds(Hypothesis::Section)
                && holds(Hypothesis::CurveConnected)
                && holds(Hypothesis::DetEffective);
            if let (Some(r), true, Some(pa)) = (r, ready, pa) {
                let m = r - 5 + k;
                if r <= 4 && holds(Hypothesis::H0IcZero(m)) {
                    let h0 = Q::from(h0_line_bundle(r, m)?);
                    let value = Q::from(pa) - &h0;
                    if value.is_negative() {
                        return Err(Error::Inconsistent(format!(
                            "p_a = {pa} < h^0(O_X({m})) = {h0}, impossible when H^0(I_C({m})) = 0"
                        )));
                    }
                    let n = value.to_i64().and_then(|v| u64::try_from(v).ok()).ok_or_else(|| {
                        Error::InvalidInput(format!("h^2(F*) = {value} out of range"))
                    })?;
                    let prem = vec![
                        hyp_check(),
                        check(format!("r = {r} <= 4")),
                        assume(Hypothesis::Section),
                        assume(Hypothesis::CurveConnected),
                        assume(Hypothesis::DetEffective),
                        assume(Hypothesis::H0IcZero(m)),
                        check(format!("p_a = {pa}, h^0(O_X({m})) = {h0}")),
                    ];
                    out.fact(h(2, SheafExpr::Dual(0)), Status::DimEquals(n), prem.clone());
                    out.fact(h(3, SheafExpr::Dual(0)), Status::Zero, prem);
                }
            }
        }

        RuleId::RationalCurveDualH23 => {
            let h1 = h(1, SheafExpr::Dual(0));
            let ready = holds(Hypothesis::CurveRational)
                && holds(Hypothesis::CurveNotLine)
                && holds(Hypothesis::Section)
                && set.is_zero(h1);
            if let (Some(r), true, Some(0)) = (r, ready, pa) {
                if r <= 3 && k == 1 {
                    let prem = vec![
                        check(format!("X is a hypersurface of degree {r} <= 3")),
                        check("det F = O_X(1)"),
                        assume(Hypothesis::Section),
                        assume(Hypothesis::CurveRational),
                        assume(Hypothesis::CurveNotLine),
                        check("p_a = 0, so H^1(O_C) = 0"),
                        zero_premise(h1),
                    ];
                    out.fact(h(2, SheafExpr::Dual(0)), Status::Zero, prem.clone());
                    out.fact(h(3, SheafExpr::Dual(0)), Status::Zero, prem);
                }
            }
        }

        RuleId::NonspecialH2 => {
            if holds(Hypothesis::H2OZero)
                && holds(Hypothesis::Section)
                && holds(Hypothesis::NonspecialDetOnCurve)
            {
                out.fact(
                    h(2, SheafExpr::F(0)),
                    Status::Zero,
                    vec![
                        assume(Hypothesis::H2OZero),
                        assume(Hypothesis::Section),
                        assume(Hypothesis::NonspecialDetOnCurve),
                    ],
                );
            }
        }

        RuleId::IdealH1DualH2 => {
            if holds(Hypothesis::H2OZero)
                && c3.is_zero()
                && holds(Hypothesis::Section)
                && holds(Hypothesis::H1IcDetOmegaZero)
            {
                out.fact(
                    h(2, SheafExpr::Dual(0)),
                    Status::Zero,
                    vec![
                        assume(Hypothesis::H2OZero),
                        check("c3 = 0, F locally free"),
                        assume(Hypothesis::Section),
                        assume(Hypothesis::H1IcDetOmegaZero),
                    ],
                );
            }
        }

        RuleId::SelfDualH2 => {
            let dual = h(2, SheafExpr::Dual(0));
            if a == 0 && k == 0 && set.is_zero(dual) {
                out.fact(
                    h(2, SheafExpr::F(0)),
                    Status::Zero,
                    vec![
                        check("a = 0 and k = 0, so F* ≅ F and H^2(F) = H^1(F*)^* = H^1(F)^* = H^2(F*)"),
                        zero_premise(dual),
                    ],
                );
            }
        }

        RuleId::BigNefRationalDualH2 => {
            let ready = holds(Hypothesis::DetBigNef)
                && holds(Hypothesis::CurveRational)
                && holds(Hypothesis::H2OZero)
                && holds(Hypothesis::Section);
            if let (true, Some(0)) = (ready, pa) {
                out.fact(
                    h(2, SheafExpr::Dual(0)),
                    Status::Zero,
                    vec![
                        assume(Hypothesis::DetBigNef),
                        builtin("Kawamata-Viehweg: H^2(det F^*) = 0"),
                        assume(Hypothesis::CurveRational),
                        check("p_a = 0"),
                        assume(Hypothesis::H2OZero),
                        assume(Hypothesis::Section),
                    ],
                );
            }
        }

        RuleId::CanonicalDetDuality => {
            if k == -a {
                let half = c3 / 2;
                let prem = vec![check(format!("k = -a = {k}, det F = ω_X"))];
                let h2 = h(2, SheafExpr::F(0));
                if c3.is_positive() && set.is_zero(h2) {
                    return Err(Error::Inconsistent(format!(
                        "det F = ω_X forces h^2(F) - h^1(F) = c3/2 = {half} > 0, but H^2(F) = 0 was derived"
                    )));
                }
                out.relation(format!("h^2(F) - h^1(F) = c3/2 = {half}"), false, prem.clone());
                let chi = chi_sheaf(ctx.sheaf());
                let lf = c3.is_zero();
                out.relation(
                    format!(
                        "h^2 <= h^1 ⟺ h^2 = h^1 ⟺ χ(F) = 0 ⟺ F locally free: χ(F) = {chi}, locally free = {lf}"
                    ),
                    false,
                    prem,
                );
            }
        }

        RuleId::ReflexiveNotAcm => {
            if c3.is_positive() {
                let prem = vec![check(format!("c3 = {c3} > 0"))];
                out.relation("F is not L-ACM for any ample L".into(), false, prem.clone());
                out.relation(format!("h^2(F ⊗ L^n) = c3 = {c3} for n << 0"), true, prem);
            }
        }
    }
    Ok(out.items)
}
