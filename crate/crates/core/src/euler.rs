//! Euler characteristics.
//!
//! Two independent routes are provided: the general Riemann–Roch formula on a
//! threefold ([`chi_rr`]) and the closed forms for sheaves built from curves
//! on hypersurfaces in P⁴ ([`chi_closed_form`], [`chi_dual_formula`]). The
//! test suites assert that they agree exactly.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chow::{binom_poly, NumericalThreefold};
use crate::error::{Error, Result};
use crate::sheaf::Rank2Sheaf;
use crate::Q;

/// Chern data of a rank 1 or rank 2 sheaf, in rank-one numerics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernInput {
    pub rank: u8,
    pub k: i64,
    pub s: Q,
    pub c3: Q,
    pub x: Arc<NumericalThreefold>,
}

impl ChernInput {
    pub fn new(rank: u8, k: i64, s: Q, c3: Q, x: Arc<NumericalThreefold>) -> Result<Self> {
        match rank {
            1 if !s.is_zero() || !c3.is_zero() => Err(Error::InvalidInput(
                "a line bundle has c2 = c3 = 0".into(),
            )),
            1 | 2 => Ok(ChernInput { rank, k, s, c3, x }),
            _ => Err(Error::InvalidInput(format!("rank must be 1 or 2, got {rank}"))),
        }
    }

    /// The line bundle `O_X(m)`.
    pub fn line_bundle(x: Arc<NumericalThreefold>, m: i64) -> Self {
        ChernInput {
            rank: 1,
            k: m,
            s: Q::zero(),
            c3: Q::zero(),
            x,
        }
    }
}

impl From<&Rank2Sheaf> for ChernInput {
    fn from(f: &Rank2Sheaf) -> Self {
        ChernInput {
            rank: 2,
            k: f.k(),
            s: f.s().clone(),
            c3: f.c3().clone(),
            x: Arc::clone(f.threefold_arc()),
        }
    }
}

/// Riemann–Roch on a smooth threefold:
///
/// ```text
/// χ = c₁³/6 − c₁c₂/2 − c₁(X)c₂/2 + c₁(X)c₁²/4 + c₁(X)²c₁/12
///     + c₁c₂(X)/12 + rank·c₁(X)c₂(X)/24 + c₃/2
/// ```
pub fn chi_rr(c: &ChernInput) -> Q {
    let x = &c.x;
    let (k, a, n) = (c.k, x.a, x.degree);
    let terms = [
        Q::new(k.pow(3) * n, 6),
        -(&c.s * k) / 2,
        -(&c.s * a) / 2,
        Q::new(a * k * k * n, 4),
        Q::new(a * a * k * n, 12),
        &x.b * k / 12,
        &x.b * (i64::from(c.rank) * a) / 24,
        &c.c3 / 2,
    ];
    terms.into_iter().sum()
}

/// `χ(F)` via Riemann–Roch.
pub fn chi_sheaf(f: &Rank2Sheaf) -> Q {
    chi_rr(&ChernInput::from(f))
}

/// Closed form for `χ(F)` when `F` on a degree-`r` hypersurface has
/// `det F = O(k)` and a section vanishing on a curve of degree `d` and
/// arithmetic genus `pa`.
pub fn chi_closed_form(r: i64, k: i64, d: &Q, pa: &Q) -> Q {
    let poly = r * (k + 5 - r) * (2 * k * k + 5 * k - k * r + 10 - 5 * r + r * r);
    Q::new(poly, 12) + pa - 1 - d * k
}

/// `χ(F*)` from the exact sequence `0 → O(−k) → F* → I_C → 0`, with the
/// binomials read as polynomials in the top argument.
pub fn chi_dual_formula(r: i64, k: i64, pa: &Q) -> Q {
    pa - Q::from(binom_poly(r - 1 + k)) + Q::from(binom_poly(k - 1)) - Q::from(binom_poly(r - 1))
}

/// Dimension bookkeeping for the local-to-global spectral sequence of a
/// reflexive sheaf:
///
/// `Ext⁰ = H⁰(Hom)`, `Ext³ = H³(Hom)`, and
/// `0 → H¹(Hom) → Ext¹ → H⁰(Ext¹) → H²(Hom) → Ext² → 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtLedger {
    pub ext0: u64,
    pub ext3: u64,
    pub ext1_min: u64,
    pub ext1_max: u64,
    h1: u64,
    h2: u64,
    e1: u64,
}

impl ExtLedger {
    /// `dim Ext²` forced by exactness once `dim Ext¹` is known; `None` if
    /// `ext1` is outside the admissible range.
    pub fn ext2_for(&self, ext1: u64) -> Option<u64> {
        (self.ext1_min..=self.ext1_max)
            .contains(&ext1)
            .then(|| ext1 + self.h2 - self.h1 - self.e1)
    }

    pub fn ext2_range(&self) -> (u64, u64) {
        (
            self.ext2_for(self.ext1_min).expect("min is admissible"),
            self.ext2_for(self.ext1_max).expect("max is admissible"),
        )
    }

    /// `h¹ − ext¹ + e¹ − h² + ext²`, which exactness forces to zero.
    pub fn alternating_sum(&self, ext1: u64) -> Option<i128> {
        let ext2 = self.ext2_for(ext1)?;
        Some(
            i128::from(self.h1) - i128::from(ext1) + i128::from(self.e1) - i128::from(self.h2)
                + i128::from(ext2),
        )
    }
}

/// `h0..h3` are `h^i(Hom(F, G))`, `e1` is `h⁰(Ext¹(F, G))`.
pub fn ext_constraints(h0: u64, h1: u64, h2: u64, h3: u64, e1: u64) -> ExtLedger {
    // Ext¹ sits between H¹(Hom) and H¹(Hom) + H⁰(Ext¹); Ext² ≥ 0 raises the floor.
    let ext1_max = h1 + e1;
    let ext1_min = h1.max((h1 + e1).saturating_sub(h2));
    ExtLedger {
        ext0: h0,
        ext3: h3,
        ext1_min,
        ext1_max,
        h1,
        h2,
        e1,
    }
}
