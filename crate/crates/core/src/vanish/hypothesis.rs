use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// The closed vocabulary of geometric hypotheses the engine understands.
///
/// Most of these cannot be checked from Chern numbers; they enter either as
/// user assertions or as conclusions of a derivation rule that records its
/// premises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hypothesis {
    Stable,
    Semistable,
    /// `F` has a section whose zero scheme is a curve `C`.
    Section,
    CurveConnected,
    CurveRational,
    CurveIsLine,
    CurveNotLine,
    /// `h⁰(C, O_C) = c`.
    ComponentCount(u32),
    H1OZero,
    H2OZero,
    /// `H¹(O_X(m)) = H²(O_X(m)) = 0` for every `m`.
    LineBundlesH12Zero,
    /// `H¹(X, I_C ⊗ det F ⊗ ω_X) = 0`.
    H1IcDetOmegaZero,
    /// `H¹(X, I_C ⊗ det F) = 0`.
    H1IcDetZero,
    /// `det F ⊗ O_C` is non-special.
    NonspecialDetOnCurve,
    /// `H¹(C, N_{C/X}) = 0`.
    H1NormalZero,
    DetAmple,
    DetBigNef,
    DetEffective,
    /// `H⁰(X, I_C(m)) = 0`.
    H0IcZero(i64),
    PicardRankOne,
    OmegaDualEffective,
    /// Some `n` has `H⁰(F ⊗ ωⁿ) ≠ 0` and `H⁰(F ⊗ ωⁿ⁺¹) = 0`.
    TwistJump,
    Acm,
    /// `C` is a local complete intersection.
    Lci,
    /// `H⁰(C, det F ⊗ ω_X ⊗ O_C) = 0`.
    H0CDetOmegaZero,
    /// `H⁰(C, ω_X ⊗ O_C) = 0`.
    H0COmegaZero,
    H2FZero,
    H2FDualZero,
}

impl Hypothesis {
    /// Every parameter-free identifier, for help text.
    pub const SIMPLE: &'static [Hypothesis] = &[
        Hypothesis::Stable,
        Hypothesis::Semistable,
        Hypothesis::Section,
        Hypothesis::CurveConnected,
        Hypothesis::CurveRational,
        Hypothesis::CurveIsLine,
        Hypothesis::CurveNotLine,
        Hypothesis::H1OZero,
        Hypothesis::H2OZero,
        Hypothesis::LineBundlesH12Zero,
        Hypothesis::H1IcDetOmegaZero,
        Hypothesis::H1IcDetZero,
        Hypothesis::NonspecialDetOnCurve,
        Hypothesis::H1NormalZero,
        Hypothesis::DetAmple,
        Hypothesis::DetBigNef,
        Hypothesis::DetEffective,
        Hypothesis::PicardRankOne,
        Hypothesis::OmegaDualEffective,
        Hypothesis::TwistJump,
        Hypothesis::Acm,
        Hypothesis::Lci,
        Hypothesis::H0CDetOmegaZero,
        Hypothesis::H0COmegaZero,
        Hypothesis::H2FZero,
        Hypothesis::H2FDualZero,
    ];

    fn simple_id(self) -> Option<&'static str> {
        Some(match self {
            Hypothesis::Stable => "stable",
            Hypothesis::Semistable => "semistable",
            Hypothesis::Section => "section",
            Hypothesis::CurveConnected => "connected",
            Hypothesis::CurveRational => "rational",
            Hypothesis::CurveIsLine => "line",
            Hypothesis::CurveNotLine => "not-line",
            Hypothesis::H1OZero => "h1-o-zero",
            Hypothesis::H2OZero => "h2-o-zero",
            Hypothesis::LineBundlesH12Zero => "line-bundles-h12-zero",
            Hypothesis::H1IcDetOmegaZero => "h1-ic-det-omega-zero",
            Hypothesis::H1IcDetZero => "h1-ic-det-zero",
            Hypothesis::NonspecialDetOnCurve => "nonspecial",
            Hypothesis::H1NormalZero => "normal-h1-zero",
            Hypothesis::DetAmple => "det-ample",
            Hypothesis::DetBigNef => "det-big-nef",
            Hypothesis::DetEffective => "det-effective",
            Hypothesis::PicardRankOne => "picard-rank-one",
            Hypothesis::OmegaDualEffective => "omega-dual-effective",
            Hypothesis::TwistJump => "twist-jump",
            Hypothesis::Acm => "acm",
            Hypothesis::Lci => "lci",
            Hypothesis::H0CDetOmegaZero => "h0-c-det-omega-zero",
            Hypothesis::H0COmegaZero => "h0-c-omega-zero",
            Hypothesis::H2FZero => "h2-f-zero",
            Hypothesis::H2FDualZero => "h2-fdual-zero",
            Hypothesis::ComponentCount(_) | Hypothesis::H0IcZero(_) => return None,
        })
    }

    /// Human-readable statement.
    pub fn statement(self) -> String {
        match self {
            Hypothesis::Stable => "F is stable".into(),
            Hypothesis::Semistable => "F is semistable".into(),
            Hypothesis::Section => "F has a section whose zero scheme is a curve C".into(),
            Hypothesis::CurveConnected => "C is connected".into(),
            Hypothesis::CurveRational => "C is rational".into(),
            Hypothesis::CurveIsLine => "C is a line".into(),
            Hypothesis::CurveNotLine => "C is not a line".into(),
            Hypothesis::ComponentCount(c) => format!("h^0(C, O_C) = {c}"),
            Hypothesis::H1OZero => "H^1(X, O_X) = 0".into(),
            Hypothesis::H2OZero => "H^2(X, O_X) = 0".into(),
            Hypothesis::LineBundlesH12Zero => "H^1(O_X(m)) = H^2(O_X(m)) = 0 for all m".into(),
            Hypothesis::H1IcDetOmegaZero => "H^1(X, I_C ⊗ det F ⊗ ω_X) = 0".into(),
            Hypothesis::H1IcDetZero => "H^1(X, I_C ⊗ det F) = 0".into(),
            Hypothesis::NonspecialDetOnCurve => "det F ⊗ O_C is non-special".into(),
            Hypothesis::H1NormalZero => "H^1(C, N_C/X) = 0".into(),
            Hypothesis::DetAmple => "det F is ample".into(),
            Hypothesis::DetBigNef => "det F is big and nef".into(),
            Hypothesis::DetEffective => "det F is effective".into(),
            Hypothesis::H0IcZero(m) => format!("H^0(X, I_C({m})) = 0"),
            Hypothesis::PicardRankOne => "Pic(X) = Z".into(),
            Hypothesis::OmegaDualEffective => "ω_X^* is effective".into(),
            Hypothesis::TwistJump => {
                "some n has H^0(F ⊗ ω^n) != 0 and H^0(F ⊗ ω^(n+1)) = 0".into()
            }
            Hypothesis::Acm => "F is L-ACM".into(),
            Hypothesis::Lci => "C is a local complete intersection".into(),
            Hypothesis::H0CDetOmegaZero => "H^0(C, det F ⊗ ω_X ⊗ O_C) = 0".into(),
            Hypothesis::H0COmegaZero => "H^0(C, ω_X ⊗ O_C) = 0".into(),
            Hypothesis::H2FZero => "H^2(X, F) = 0".into(),
            Hypothesis::H2FDualZero => "H^2(X, F*) = 0".into(),
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::ComponentCount(c) => write!(f, "components={c}"),
            Hypothesis::H0IcZero(m) => write!(f, "h0-ic-zero={m}"),
            h => f.write_str(h.simple_id().expect("simple hypothesis")),
        }
    }
}

impl FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidInput(format!("unknown assumption id {s:?}"));
        if let Some(v) = s.strip_prefix("components=") {
            return v.parse().map(Hypothesis::ComponentCount).map_err(|_| bad());
        }
        if let Some(v) = s.strip_prefix("h0-ic-zero=") {
            return v.parse().map(Hypothesis::H0IcZero).map_err(|_| bad());
        }
        Hypothesis::SIMPLE
            .iter()
            .copied()
            .find(|h| h.simple_id() == Some(s))
            .ok_or_else(bad)
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Hypothesis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
