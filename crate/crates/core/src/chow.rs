//! Numerical intersection theory on a threefold whose Picard group is
//! generated (numerically) by one ample class `h`.
//!
//! Every divisor is `m·h` for an integer `m`, and every 2-cycle is recorded
//! only through its pairing with `h`. That leaves three numbers per threefold:
//! `h³`, the coefficient `a` with `c₁(X) = a·h`, and the pairing `c₂(X)·h`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Q;

/// A power series in `h` truncated to a fixed number of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Q>,
}

impl TruncatedSeries {
    pub fn new(mut coeffs: Vec<Q>, len: usize) -> Self {
        coeffs.resize(len, Q::zero());
        coeffs.truncate(len);
        TruncatedSeries { coeffs }
    }

    /// `(1 + c·h)` truncated to `len` terms.
    pub fn linear(c: i64, len: usize) -> Self {
        Self::new(vec![Q::one(), Q::from(c)], len)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> &Q {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut out = vec![Q::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate().take(len) {
            for (j, y) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::new(vec![Q::one()], self.len());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs.first()?;
        if c0.is_zero() {
            return None;
        }
        let mut inv = vec![Q::zero(); self.len()];
        inv[0] = Q::one() / c0;
        for n in 1..self.len() {
            let mut acc = Q::zero();
            for i in 1..=n {
                acc += &self.coeffs[i] * &inv[n - i];
            }
            inv[n] = -(acc * &inv[0]);
        }
        Some(TruncatedSeries { coeffs: inv })
    }
}

/// The intersection numbers of a smooth projective threefold `X` that every
/// formula in the crate consumes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumericalThreefold {
    /// `h³`.
    pub degree: i64,
    /// `c₁(X) = a·h`.
    pub a: i64,
    /// `c₂(X)·h`.
    pub b: Q,
    pub label: String,
    /// Set when the threefold is a smooth hypersurface of this degree in P⁴.
    pub hypersurface_degree: Option<i64>,
}

impl NumericalThreefold {
    pub fn new(degree: i64, a: i64, b: Q, label: impl Into<String>) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidInput(format!(
                "h^3 must be a positive integer, got {degree}"
            )));
        }
        Ok(NumericalThreefold {
            degree,
            a,
            b,
            label: label.into(),
            hypersurface_degree: None,
        })
    }

    /// A smooth hypersurface of degree `r` in P⁴.
    ///
    /// The total Chern class of `T_X` is the truncation of `(1+h)⁵/(1+r·h)`;
    /// `c₂(X)·h` is its `h²` coefficient times `h³ = r`.
    pub fn hypersurface(r: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidInput(format!(
                "hypersurface degree must be positive, got {r}"
            )));
        }
        let ambient = TruncatedSeries::linear(1, 3).pow(5);
        let normal = TruncatedSeries::linear(r, 3)
            .inverse()
            .expect("constant term is 1");
        let chern = ambient.mul(&normal);
        let a = chern
            .coeff(1)
            .to_i64()
            .expect("c1 coefficient of a hypersurface is an integer");
        Ok(NumericalThreefold {
            degree: r,
            a,
            b: chern.coeff(2) * r,
            label: format!("hypersurface r={r}"),
            hypersurface_degree: Some(r),
        })
    }

    pub fn is_hypersurface(&self) -> bool {
        self.hypersurface_degree.is_some()
    }

    pub fn is_fano(&self) -> bool {
        self.a > 0
    }

    pub fn is_canonically_trivial(&self) -> bool {
        self.a == 0
    }

    /// `c₁(X)·c₂(X) = a·b`.
    pub fn c1_c2(&self) -> Q {
        &self.b * self.a
    }

    /// `c₁(X)³ = a³·h³`.
    pub fn c1_cubed(&self) -> Q {
        Q::from(self.a.pow(3) * self.degree)
    }

    /// `χ(O_X) = c₁(X)c₂(X)/24`.
    pub fn chi_structure_sheaf(&self) -> Q {
        self.c1_c2() / 24
    }
}

/// `n(n−1)(n−2)(n−3)/24`, the binomial coefficient `C(n,4)` continued as a
/// polynomial to every integer (so `binom_poly(-1) = 1`).
pub fn binom_poly(n: i64) -> BigInt {
    let n = BigInt::from(n);
    let prod = &n * (&n - 1) * (&n - 2) * (&n - 3);
    prod / 24
}

/// `χ(O_X(m))` on a degree-`r` hypersurface in P⁴, read off the Koszul
/// sequence `0 → O_P(m−r) → O_P(m) → O_X(m) → 0`.
pub fn chi_line_bundle(r: i64, m: i64) -> Result<BigInt> {
    if r < 1 {
        return Err(Error::InvalidInput(format!(
            "hypersurface degree must be positive, got {r}"
        )));
    }
    Ok(binom_poly(m + 4) - binom_poly(m + 4 - r))
}

/// `h⁰(O_X(m))` on a degree-`r` hypersurface in P⁴, from the same sequence
/// with ordinary binomials (zero below the range).
pub fn h0_line_bundle(r: i64, m: i64) -> Result<BigInt> {
    let c4 = |n: i64| if n < 4 { BigInt::from(0) } else { binom_poly(n) };
    if r < 1 {
        return Err(Error::InvalidInput(format!(
            "hypersurface degree must be positive, got {r}"
        )));
    }
    Ok(c4(m + 4) - c4(m + 4 - r))
}
