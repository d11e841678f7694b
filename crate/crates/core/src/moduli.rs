//! Smoothness and dimension of the moduli space of semistable rank-2 sheaves
//! at a point `[F]`, checked hypothesis by hypothesis.
//!
//! Nothing here concludes smoothness from numbers alone: stability and the
//! normal-bundle condition can only enter as assertions, and every report
//! says which hypotheses were verified, asserted or derived.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sheaf::Rank2Sheaf;
use crate::vanish::{infer, Context, FactSet, Group, Hypothesis, SheafExpr};
use crate::Q;

/// `1 − c₁(X)c₂(X)/6 + c₁(X)Δ(F)/2`.
pub fn moduli_dimension(f: &Rank2Sheaf) -> Q {
    let x = f.threefold();
    Q::one() - x.c1_c2() / 6 + f.delta_pair() / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Fano,
    Cy,
    Big,
    Fanocor,
    Ext2Only,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Fano => "fano",
            Theorem::Cy => "cy",
            Theorem::Big => "big",
            Theorem::Fanocor => "fanocor",
            Theorem::Ext2Only => "ext2-only",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Checked from the numbers.
    Verified,
    /// Supplied by the user (or taken as given, with a note).
    Asserted,
    /// Concluded by the inference engine from other entries.
    Derived,
    /// Refuted by the numbers.
    Failed,
    /// Neither supplied nor derivable.
    Missing,
}

impl Verdict {
    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Verified | Verdict::Asserted | Verdict::Derived)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub hypothesis: String,
    pub status: Verdict,
    pub provenance: Vec<String>,
}

impl LedgerEntry {
    fn new(hypothesis: &str, status: Verdict, provenance: Vec<String>) -> Self {
        LedgerEntry {
            hypothesis: hypothesis.to_string(),
            status,
            provenance,
        }
    }

    fn numeric(hypothesis: &str, ok: bool, detail: String) -> Self {
        let status = if ok { Verdict::Verified } else { Verdict::Failed };
        LedgerEntry::new(hypothesis, status, vec![detail])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    NotEstablished,
}

impl Serialize for Smoothness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Smoothness::Smooth => s.serialize_bool(true),
            Smoothness::NotEstablished => s.serialize_str("not-established"),
        }
    }
}

impl<'de> Deserialize<'de> for Smoothness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Bool(true) => Ok(Smoothness::Smooth),
            serde_json::Value::String(s) if s == "not-established" => Ok(Smoothness::NotEstablished),
            other => Err(serde::de::Error::custom(format!("bad smoothness {other}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliReport {
    pub theorem: Theorem,
    pub smooth: Smoothness,
    pub dimension: Option<Q>,
    pub ledger: Vec<LedgerEntry>,
    /// Intermediate vanishings the proof goes through, for information.
    #[serde(default)]
    pub steps: Vec<LedgerEntry>,
    pub integrality_ok: bool,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl ModuliReport {
    pub fn is_smooth(&self) -> bool {
        self.smooth == Smoothness::Smooth
    }

    fn conclude(theorem: Theorem, ledger: Vec<LedgerEntry>, steps: Vec<LedgerEntry>, value: Option<Q>) -> Result<Self> {
        let ok = ledger.iter().all(|e| e.status.is_ok());
        let integrality_ok = value.as_ref().is_none_or(Q::is_integer);
        let mut notes = Vec::new();
        if let Some(v) = &value {
            if !v.is_integer() {
                if ok {
                    return Err(Error::Inconsistent(format!(
                        "{theorem} theorem would give a non-integral dimension {v}"
                    )));
                }
                notes.push(format!("dimension formula gives non-integral {v}"));
            }
            if v.is_negative() {
                notes.push(format!(
                    "dimension formula gives {v} < 0; the hypotheses cannot all hold"
                ));
            }
        }
        Ok(ModuliReport {
            theorem,
            smooth: if ok { Smoothness::Smooth } else { Smoothness::NotEstablished },
            dimension: if ok { value } else { None },
            ledger,
            steps,
            integrality_ok,
            notes,
        })
    }
}

impl fmt::Display for ModuliReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.smooth, &self.dimension) {
            (Smoothness::Smooth, Some(d)) => writeln!(f, "[{}] smooth, dimension {d}", self.theorem)?,
            (Smoothness::Smooth, None) => writeln!(f, "[{}] established", self.theorem)?,
            _ => writeln!(f, "[{}] not established", self.theorem)?,
        }
        for e in &self.ledger {
            writeln!(f, "  {:<9} {}  ({})", format!("{:?}", e.status).to_lowercase(), e.hypothesis, e.provenance.join("; "))?;
        }
        for e in &self.steps {
            writeln!(f, "  step {:<9} {}  ({})", format!("{:?}", e.status).to_lowercase(), e.hypothesis, e.provenance.join("; "))?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

fn hyp_entry(ctx: &Context, set: &FactSet, name: &str, h: Hypothesis) -> LedgerEntry {
    if ctx.is_asserted(h) {
        return LedgerEntry::new(name, Verdict::Asserted, vec![format!("--assume {h}")]);
    }
    match set.hypotheses.get(&h) {
        Some(rec) => LedgerEntry::new(
            name,
            Verdict::Derived,
            rec.derivations.iter().map(|d| format!("by {}", d.rule)).collect(),
        ),
        None => LedgerEntry::new(name, Verdict::Missing, vec![format!("assert with --assume {h}")]),
    }
}

fn fact_entry(set: &FactSet, name: &str, group: Group) -> LedgerEntry {
    match set.get(group) {
        Some(f) if f.is_zero() => {
            let only_asserted = f
                .provenance
                .iter()
                .all(|d| d.rule == crate::vanish::RuleId::Asserted);
            let status = if only_asserted { Verdict::Asserted } else { Verdict::Derived };
            let rules = f
                .provenance
                .iter()
                .map(|d| {
                    let chain: Vec<String> =
                        set.fact_rules_in(d).iter().map(ToString::to_string).collect();
                    format!("by {}", chain.join(" + "))
                })
                .collect();
            LedgerEntry::new(name, status, rules)
        }
        _ => LedgerEntry::new(name, Verdict::Missing, vec!["not derived".into()]),
    }
}

fn h2_f() -> Group {
    Group::new(2, SheafExpr::F(0))
}

fn h2_dual() -> Group {
    Group::new(2, SheafExpr::Dual(0))
}

fn fano_entry(ctx: &Context) -> LedgerEntry {
    let a = ctx.a();
    LedgerEntry::numeric("X is Fano", a > 0, format!("c1(X) = {a}h"))
}

fn locally_free_entry(ctx: &Context) -> LedgerEntry {
    LedgerEntry::numeric(
        "F is locally free",
        ctx.c3().is_zero(),
        format!("c3 = {}", ctx.c3()),
    )
}

/// The ext-vanishing conditions: a section and the five listed vanishings.
fn ext2_conditions(ctx: &Context, set: &FactSet) -> Vec<LedgerEntry> {
    vec![
        hyp_entry(ctx, set, "F has a section vanishing on a curve C", Hypothesis::Section),
        fact_entry(set, "H^2(F) = 0", h2_f()),
        fact_entry(set, "H^2(F*) = 0", h2_dual()),
        hyp_entry(ctx, set, "H^0(C, det F ⊗ ω_X|_C) = 0", Hypothesis::H0CDetOmegaZero),
        hyp_entry(ctx, set, "H^0(C, ω_X|_C) = 0", Hypothesis::H0COmegaZero),
        hyp_entry(ctx, set, "H^1(C, N_C/X) = 0", Hypothesis::H1NormalZero),
    ]
}

pub fn check_fano_theorem(ctx: &Context) -> Result<ModuliReport> {
    let set = infer(ctx)?;
    let ledger = vec![
        fano_entry(ctx),
        hyp_entry(ctx, &set, "F is stable", Hypothesis::Stable),
        locally_free_entry(ctx),
        hyp_entry(ctx, &set, "F has a section vanishing on a curve C", Hypothesis::Section),
        hyp_entry(ctx, &set, "H^1(I_C ⊗ det F ⊗ ω_X) = 0", Hypothesis::H1IcDetOmegaZero),
        hyp_entry(ctx, &set, "H^1(C, N_C/X) = 0", Hypothesis::H1NormalZero),
    ];
    let steps = vec![
        fact_entry(&set, "H^2(F) = 0", h2_f()),
        fact_entry(&set, "H^2(F*) = 0", h2_dual()),
    ];
    ModuliReport::conclude(Theorem::Fano, ledger, steps, Some(moduli_dimension(ctx.sheaf())))
}

pub fn check_cy_theorem(ctx: &Context) -> Result<ModuliReport> {
    let set = infer(ctx)?;
    let a = ctx.a();
    let ledger = vec![
        LedgerEntry::numeric("X is Calabi-Yau", a == 0, format!("c1(X) = {a}h")),
        hyp_entry(ctx, &set, "H^1(O_X) = 0", Hypothesis::H1OZero),
        hyp_entry(ctx, &set, "F is stable", Hypothesis::Stable),
        locally_free_entry(ctx),
        hyp_entry(ctx, &set, "F has a section vanishing on a curve C", Hypothesis::Section),
        hyp_entry(ctx, &set, "H^1(I_C ⊗ det F) = 0", Hypothesis::H1IcDetZero),
        hyp_entry(ctx, &set, "H^1(C, N_C/X) = 0", Hypothesis::H1NormalZero),
    ];
    let steps = vec![
        fact_entry(&set, "H^2(F) = 0", h2_f()),
        fact_entry(&set, "H^2(F*) = 0", h2_dual()),
    ];
    let mut report = ModuliReport::conclude(Theorem::Cy, ledger, steps, Some(Q::zero()))?;
    if a == 0 {
        report.notes.push(format!(
            "tension: ω_X^* = O_X is effective, so the big theorem's formula also applies and gives dimension {}; both values are reported and neither is preferred",
            moduli_dimension(ctx.sheaf())
        ));
    }
    Ok(report)
}

/// Whether `Ext²(F, F) = 0` follows from the five-condition criterion.
pub fn check_ext2_vanishing(ctx: &Context) -> Result<ModuliReport> {
    let set = infer(ctx)?;
    let mut report = ModuliReport::conclude(Theorem::Ext2Only, ext2_conditions(ctx, &set), vec![], None)?;
    if report.is_smooth() {
        report.notes.push("Ext^2(F, F) = 0".into());
    }
    Ok(report)
}

pub fn check_bigthm(ctx: &Context) -> Result<ModuliReport> {
    let set = infer(ctx)?;
    let a = ctx.a();
    let omega = if a > 0 {
        LedgerEntry::new(
            "ω_X^* is effective, or a twist jump exists",
            Verdict::Verified,
            vec![format!("ω_X^* = O_X({a}) with a > 0")],
        )
    } else if a == 0 {
        LedgerEntry::new(
            "ω_X^* is effective, or a twist jump exists",
            Verdict::Asserted,
            vec!["ω_X = O_X taken as effective".into()],
        )
    } else {
        let asserted: Vec<String> = [Hypothesis::OmegaDualEffective, Hypothesis::TwistJump]
            .into_iter()
            .filter(|h| ctx.is_asserted(*h))
            .map(|h| format!("--assume {h}"))
            .collect();
        if asserted.is_empty() {
            LedgerEntry::new(
                "ω_X^* is effective, or a twist jump exists",
                Verdict::Missing,
                vec!["assert omega-dual-effective or twist-jump".into()],
            )
        } else {
            LedgerEntry::new("ω_X^* is effective, or a twist jump exists", Verdict::Asserted, asserted)
        }
    };
    let mut ledger = vec![
        hyp_entry(ctx, &set, "F is stable", Hypothesis::Stable),
        LedgerEntry::numeric("F is reflexive", !ctx.c3().is_negative(), format!("c3 = {} >= 0", ctx.c3())),
        omega,
    ];
    ledger.extend(ext2_conditions(ctx, &set));
    ModuliReport::conclude(Theorem::Big, ledger, vec![], Some(moduli_dimension(ctx.sheaf())))
}

pub fn check_fanocor(ctx: &Context) -> Result<ModuliReport> {
    let set = infer(ctx)?;
    let k = ctx.k();
    let big_nef = if k > 0 {
        LedgerEntry::new("det F is big and nef", Verdict::Verified, vec![format!("det F = O_X({k}) with k > 0")])
    } else {
        let mut e = hyp_entry(ctx, &set, "det F is big and nef", Hypothesis::DetBigNef);
        if e.status == Verdict::Missing {
            e.status = Verdict::Failed;
        }
        e.provenance.insert(0, format!("direct test k > 0 fails (k = {k})"));
        e
    };
    let rational = match (ctx.is_asserted(Hypothesis::CurveRational), ctx.genus()) {
        (false, _) => LedgerEntry::new("C is rational", Verdict::Missing, vec!["assert with --assume rational".into()]),
        (true, Some(0)) => LedgerEntry::new("C is rational", Verdict::Asserted, vec!["--assume rational".into(), "p_a = 0".into()]),
        (true, g) => LedgerEntry::new(
            "C is rational",
            Verdict::Failed,
            vec![format!("p_a = {} but the argument needs H^1(O_C) = 0", g.map_or("?".to_string(), |g| g.to_string()))],
        ),
    };
    let ledger = vec![
        fano_entry(ctx),
        hyp_entry(ctx, &set, "F is stable", Hypothesis::Stable),
        big_nef,
        hyp_entry(ctx, &set, "F has a section vanishing on a curve C", Hypothesis::Section),
        rational,
        hyp_entry(ctx, &set, "H^1(C, N_C/X) = 0", Hypothesis::H1NormalZero),
    ];
    let steps = vec![
        fact_entry(&set, "H^2(F) = 0", h2_f()),
        fact_entry(&set, "H^2(F*) = 0", h2_dual()),
    ];
    ModuliReport::conclude(Theorem::Fanocor, ledger, steps, Some(moduli_dimension(ctx.sheaf())))
}

/// The assertion set under which the conic on the cubic threefold passes
/// both the Fano theorem and its rational-curve corollary.
pub const STANDARD_ASSERTIONS: &[Hypothesis] = &[
    Hypothesis::Stable,
    Hypothesis::Section,
    Hypothesis::CurveRational,
    Hypothesis::CurveNotLine,
    Hypothesis::H1NormalZero,
    Hypothesis::H1IcDetOmegaZero,
];
