//! Numerical Chern data of rank-2 reflexive sheaves, with the twist, dual
//! and parity calculus.

use std::fmt;
use std::sync::Arc;

use crate::chow::NumericalThreefold;
use crate::error::{Error, Result};
use crate::Q;

/// A rank-2 reflexive sheaf `F` on `X`, seen through its numbers:
/// `c₁(F) = k·h`, `S = c₂(F)·h` and `c₃(F)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rank2Sheaf {
    x: Arc<NumericalThreefold>,
    k: i64,
    s: Q,
    c3: Q,
}

impl Rank2Sheaf {
    /// Rejects `c₃ < 0`: a reflexive sheaf has `c₃ = h⁰(Ext¹(F, ω_X)) ≥ 0`.
    pub fn new(x: Arc<NumericalThreefold>, k: i64, s: Q, c3: Q) -> Result<Self> {
        if c3.is_negative() {
            return Err(Error::NoSuchSheaf { c3 });
        }
        Ok(Rank2Sheaf { x, k, s, c3 })
    }

    /// Like [`Rank2Sheaf::new`], but also validates a caller's claim about
    /// local freeness against `c₃`.
    pub fn with_locally_free_claim(
        x: Arc<NumericalThreefold>,
        k: i64,
        s: Q,
        c3: Q,
        locally_free: bool,
    ) -> Result<Self> {
        let f = Self::new(x, k, s, c3)?;
        if f.is_locally_free() != locally_free {
            return Err(Error::Inconsistent(format!(
                "locally free = {locally_free} contradicts c3 = {}",
                f.c3
            )));
        }
        Ok(f)
    }

    pub fn threefold(&self) -> &NumericalThreefold {
        &self.x
    }

    pub fn threefold_arc(&self) -> &Arc<NumericalThreefold> {
        &self.x
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn s(&self) -> &Q {
        &self.s
    }

    pub fn c3(&self) -> &Q {
        &self.c3
    }

    /// Always true in this model; kept for symmetry with [`Self::is_locally_free`].
    pub fn is_reflexive(&self) -> bool {
        true
    }

    pub fn is_locally_free(&self) -> bool {
        self.c3.is_zero()
    }

    /// `c₁(F)·c₂(F) = k·S`.
    pub fn c1_c2(&self) -> Q {
        &self.s * self.k
    }

    /// `c₁(X)·c₂(F) = a·S`.
    pub fn c1x_c2(&self) -> Q {
        &self.s * self.x.a
    }

    /// `c₁(F)³ = k³·h³`.
    pub fn c1_cubed(&self) -> Q {
        Q::from(self.k.pow(3) * self.x.degree)
    }

    /// `F ⊗ O(t)`: `c₁ ↦ c₁ + 2t·h`, `c₂ ↦ c₂ + t·c₁·h + t²·h²`, `c₃` fixed.
    pub fn twist(&self, t: i64) -> Rank2Sheaf {
        let n = self.x.degree;
        Rank2Sheaf {
            x: Arc::clone(&self.x),
            k: self.k + 2 * t,
            s: &self.s + Q::from(t * self.k * n + t * t * n),
            c3: self.c3.clone(),
        }
    }

    /// `F* ≅ F ⊗ det(F)⁻¹`, so `c₁ ↦ −c₁` and `c₂`, `c₃` are unchanged.
    pub fn dual(&self) -> Rank2Sheaf {
        Rank2Sheaf {
            x: Arc::clone(&self.x),
            k: -self.k,
            s: self.s.clone(),
            c3: self.c3.clone(),
        }
    }

    /// The unique `m` with `c₁(F(m)) = c₁(ω_X)`, if `F` has canonical parity.
    pub fn canonical_parity(&self) -> Option<i64> {
        let diff = -self.x.a - self.k;
        (diff % 2 == 0).then_some(diff / 2)
    }

    /// `c₁(X)·Δ(F)` with `Δ = 4c₂ − c₁²`.
    pub fn delta_pair(&self) -> Q {
        let a = self.x.a;
        &self.s * (4 * a) - Q::from(a * self.k * self.k * self.x.degree)
    }
}

impl fmt::Debug for Rank2Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rank2Sheaf")
            .field("x", &self.x.label)
            .field("k", &self.k)
            .field("s", &self.s)
            .field("c3", &self.c3)
            .finish()
    }
}
