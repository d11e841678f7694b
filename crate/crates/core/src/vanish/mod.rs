//! Forward-chaining inference over cohomology vanishing statements.
//!
//! A [`Context`] carries the numerical data and the asserted hypotheses.
//! [`infer`] saturates it under the rule base in [`rules`] and returns a
//! [`FactSet`] in which every fact and every derived hypothesis records the
//! rule and premises that produced it.

mod context;
mod engine;
mod fact;
mod hypothesis;
pub mod rules;

use serde::{Deserialize, Serialize};

pub use context::{Context, DEFAULT_TWISTS};
pub use engine::{infer, infer_with_order};
pub use fact::{Derivation, Fact, FactSet, Group, HypothesisRecord, Premise, Relation, SheafExpr, Status};
pub use hypothesis::Hypothesis;
pub use rules::RuleId;

use crate::euler::chi_sheaf;
use crate::sheaf::Rank2Sheaf;
use crate::Q;

/// The duality relation for a sheaf with `det F = ω_X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalDetReport {
    /// `h²(F) − h¹(F)`, which equals `c₃/2`.
    pub h2_minus_h1: Q,
    pub chi: Q,
    pub locally_free: bool,
    /// `h² ≤ h¹`, `h² = h¹`, `χ = 0` and local freeness agree.
    pub equivalences_hold: bool,
}

/// `None` unless `k = −a`.
pub fn canonical_det_report(f: &Rank2Sheaf) -> Option<CanonicalDetReport> {
    if f.k() != -f.threefold().a {
        return None;
    }
    let h2_minus_h1 = f.c3() / 2;
    let chi = chi_sheaf(f);
    let locally_free = f.is_locally_free();
    let flags = [
        !h2_minus_h1.is_positive(),
        h2_minus_h1.is_zero(),
        chi.is_zero(),
        locally_free,
    ];
    Some(CanonicalDetReport {
        equivalences_hold: flags.iter().all(|&b| b == flags[0]) && chi == h2_minus_h1,
        h2_minus_h1,
        chi,
        locally_free,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcmReport {
    /// `Some(false)` when `F` cannot be L-ACM; `None` when no conclusion.
    pub acm_possible: Option<bool>,
    /// `h²(F ⊗ Lⁿ)` for `n ≪ 0`.
    pub asymptotic_h2: Option<Q>,
}

pub fn acm_report(f: &Rank2Sheaf) -> AcmReport {
    if f.c3().is_positive() {
        AcmReport {
            acm_possible: Some(false),
            asymptotic_h2: Some(f.c3().clone()),
        }
    } else {
        AcmReport {
            acm_possible: None,
            asymptotic_h2: None,
        }
    }
}
