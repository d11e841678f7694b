//! Bounds on `c₃` and twist thresholds, as exact predicates and
//! minimal-integer solvers.
//!
//! Hypotheses that cannot be checked from numbers (semistability, vanishing
//! of `H¹`/`H²` of the determinant, ...) are echoed in [`BoundReport::assumed`].

use std::fmt;

use num_integer::Roots;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::chow::NumericalThreefold;
use crate::error::{Error, Result};
use crate::serre::{c3_from_curve, CurveData};
use crate::sheaf::Rank2Sheaf;
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Comparison {
    pub fn eval(self, lhs: &Q, rhs: &Q) -> bool {
        match self {
            Comparison::Le => lhs <= rhs,
            Comparison::Lt => lhs < rhs,
            Comparison::Ge => lhs >= rhs,
            Comparison::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Le => "<=",
            Comparison::Lt => "<",
            Comparison::Ge => ">=",
            Comparison::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub holds: bool,
    pub lhs: Q,
    pub comparison: Comparison,
    pub rhs: Q,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<i64>,
    /// Input echo as `(name, value)` pairs.
    pub context: Vec<(String, String)>,
    /// Hypotheses taken on trust rather than checked.
    pub assumed: Vec<String>,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn new(name: &str, lhs: Q, comparison: Comparison, rhs: Q) -> Self {
        BoundReport {
            name: name.to_string(),
            holds: comparison.eval(&lhs, &rhs),
            lhs,
            comparison,
            rhs,
            threshold: None,
            context: Vec::new(),
            assumed: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn ctx(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.context.push((key.to_string(), value.to_string()));
        self
    }

    fn assume(mut self, what: &str) -> Self {
        self.assumed.push(what.to_string());
        self
    }

    /// `rhs − lhs`; non-negative exactly when a `<=` bound holds.
    pub fn slack(&self) -> Q {
        &self.rhs - &self.lhs
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} -> {}",
            self.name,
            self.lhs,
            self.comparison.symbol(),
            self.rhs,
            if self.holds { "holds" } else { "fails" }
        )?;
        if let Some(t) = self.threshold {
            write!(f, " (threshold {t})")?;
        }
        Ok(())
    }
}

fn sheaf_context(report: BoundReport, f: &Rank2Sheaf) -> BoundReport {
    report
        .ctx("X", &f.threefold().label)
        .ctx("k", f.k())
        .ctx("S", f.s())
        .ctx("c3", f.c3())
}

/// `c₃ ≤ S² − 3S + c₁(X)c₂ − c₁c₂` for a sheaf with a section vanishing on a
/// curve, `S` taken against `h`.
pub fn section_c3_bound(f: &Rank2Sheaf) -> BoundReport {
    let s = f.s();
    let rhs = s * s - s * 3 + s * (f.threefold().a - f.k());
    sheaf_context(
        BoundReport::new("section_c3_bound", f.c3().clone(), Comparison::Le, rhs),
        f,
    )
    .assume("F has a section whose zero scheme is a curve")
    .assume("h^1(det F^*) = h^2(det F^*) = 0")
}

/// The Riemann–Roch criterion for `F ⊗ Lⁿ` to have a section, `L = O(t)`,
/// requiring `c₁(F) = 0`.
pub fn section_exists_rr(f: &Rank2Sheaf, n: i64, t: i64) -> Result<BoundReport> {
    if f.k() != 0 {
        return Err(Error::Precondition(format!(
            "the section criterion needs c1(F) = 0, got k = {}",
            f.k()
        )));
    }
    if t < 1 {
        return Err(Error::InvalidInput(format!("L = O(t) needs t >= 1, got {t}")));
    }
    let x = f.threefold();
    let (a, big_n) = (x.a, x.degree);
    let d = t.pow(3) * big_n;
    let lhs = Q::from(4 * n.pow(3) * d)
        + Q::from(6 * n * n * a * t * t * big_n)
        + Q::from(2 * n * a * a * t * big_n)
        + &x.b * (2 * n * t);
    let s_l = f.s() * t;
    let rhs = s_l * (12 * n) + f.c1x_c2() * 6 - x.c1_c2() - f.c3() * 6;
    Ok(sheaf_context(
        BoundReport::new("section_exists_rr", lhs, Comparison::Gt, rhs),
        f,
    )
    .ctx("n", n)
    .ctx("t", t)
    .assume("H^2(X, F ⊗ L^n) = 0"))
}

fn firstbound_with(x: &NumericalThreefold, n: i64, s_l: &Q, t: i64, factor: i64) -> Q {
    let d = t.pow(3) * x.degree;
    let shift = Q::from(factor * n * n * d);
    let c1x_c2 = s_l * x.a / t;
    (s_l - 3 - 2 * n + &shift) * (s_l + &shift) + c1x_c2 + Q::from(factor * n * n * x.a * t * t * x.degree)
}

/// The printed `c₃` bound obtained from a section of `F ⊗ Lⁿ`, `L = O(t)`,
/// for `c₁(F) = 0`. `s_l` is `c₁(L)·c₂(F)`.
pub fn firstbound_c3(x: &NumericalThreefold, n: i64, s_l: &Q, t: i64) -> Q {
    firstbound_with(x, n, s_l, t, 2)
}

/// The same bound recomputed by applying [`section_c3_bound`] to `F ⊗ Lⁿ`
/// with the twist formulas of [`Rank2Sheaf::twist`]. Differs from
/// [`firstbound_c3`] in the coefficient of `n²d` (one instead of two).
pub fn firstbound_c3_rederived(x: &NumericalThreefold, n: i64, s_l: &Q, t: i64) -> Q {
    firstbound_with(x, n, s_l, t, 1)
}

/// Compares `c₃(F)` with both forms of the twisted section bound.
pub fn firstbound_report(f: &Rank2Sheaf, n: i64, t: i64) -> Result<BoundReport> {
    if f.k() != 0 {
        return Err(Error::Precondition(format!(
            "the twisted section bound needs c1(F) = 0, got k = {}",
            f.k()
        )));
    }
    if t < 1 {
        return Err(Error::InvalidInput(format!("L = O(t) needs t >= 1, got {t}")));
    }
    let x = f.threefold();
    let s_l = f.s() * t;
    let printed = firstbound_c3(x, n, &s_l, t);
    let rederived = firstbound_c3_rederived(x, n, &s_l, t);
    let mut report = sheaf_context(
        BoundReport::new("firstbound_c3", f.c3().clone(), Comparison::Le, printed),
        f,
    )
    .ctx("n", n)
    .ctx("t", t)
    .assume("F ⊗ L^n has a section whose zero scheme is a curve")
    .assume("L very ample");
    report.notes.push(format!(
        "rederived bound (section bound applied to F ⊗ L^n): {rederived}; c3 {} it",
        if f.c3() <= &rederived { "satisfies" } else { "violates" }
    ));
    Ok(report)
}

/// Minimal `n` with `H²(X, F(n)) = 0` for a semistable `F` with `c₁ = 0` on
/// a quintic: `31` for `S ≤ 19`, otherwise the least integer
/// `n ≥ 4S − 27 + √(60S − 525)/2`, decided by exact integer squaring.
pub fn oldbound_threshold(s: i64) -> Result<i64> {
    if s < 1 {
        return Err(Error::InvalidInput(format!("S must be positive, got {s}")));
    }
    if s <= 19 {
        return Ok(31);
    }
    let base = 4 * s - 27;
    let disc = 60 * s - 525;
    // least m >= 0 with (2m)² >= disc
    let mut m = (disc / 4).sqrt();
    while 4 * m * m < disc {
        m += 1;
    }
    while m > 0 && 4 * (m - 1) * (m - 1) >= disc {
        m -= 1;
    }
    Ok(base + m)
}

pub fn oldbound_report(s: i64) -> Result<BoundReport> {
    let n = oldbound_threshold(s)?;
    let mut report = BoundReport::new("oldbound_threshold", Q::from(n), Comparison::Ge, Q::from(n))
        .ctx("S", s)
        .assume("X is a smooth quintic hypersurface")
        .assume("F is rank 2 semistable reflexive with c1(F) = 0");
    report.threshold = Some(n);
    report.notes.push(format!("H^2(X, F(n)) = 0 for n >= {n}"));
    Ok(report)
}

/// Least `p` making `c₁(O(p))·c₂(F) ≥ c₃(F)` for `F` built from a curve on a
/// degree-`r` hypersurface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PThreshold {
    pub c3: Q,
    /// Least `p` with `p·d ≥ c₃`; from here `h²(F ⊗ ω ⊗ O(p)) ≤ 1`.
    pub p: i64,
    /// Least `p` with `p·d > c₃`; from here `h²(F ⊗ ω ⊗ O(p)) = 0`.
    pub p_strict: i64,
    /// True when `p·d = c₃` exactly, so only the `≤ 1` conclusion holds at `p`.
    pub boundary: bool,
}

pub fn p_threshold(r: i64, k: i64, d: &Q, pa: i64) -> Result<PThreshold> {
    if !d.is_positive() {
        return Err(Error::InvalidInput(format!("degree must be positive, got {d}")));
    }
    let x = NumericalThreefold::hypersurface(r)?;
    let c3 = c3_from_curve(&x, k, &CurveData::new(d.clone(), pa)?);
    let ratio = &c3 / d;
    let p = ratio
        .ceil()
        .to_i64()
        .ok_or_else(|| Error::InvalidInput("threshold out of range".into()))?;
    let boundary = ratio.is_integer();
    let p_strict = if boundary { p + 1 } else { p };
    Ok(PThreshold {
        c3,
        p,
        p_strict,
        boundary,
    })
}

/// `p_a ≤ (S² − 3S + 2)/2` for a curve on a threefold with trivial canonical
/// class and `h¹(O) = h²(O) = 0`.
pub fn cy_genus_bound(s: &Q, pa: i64) -> BoundReport {
    let rhs = (s * s - s * 3 + 2) / 2;
    BoundReport::new("cy_genus_bound", Q::from(pa), Comparison::Le, rhs)
        .ctx("S", s)
        .ctx("pa", pa)
        .assume("omega_X = O_X and h^1(O_X) = h^2(O_X) = 0")
        .assume("F has a section vanishing on a non-rational CM curve")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::serre::sheaf_from_curve;
    use std::sync::Arc;

    fn x(r: i64) -> Arc<NumericalThreefold> {
        Arc::new(NumericalThreefold::hypersurface(r).unwrap())
    }

    fn sheaf(r: i64, k: i64, s: i64, c3: i64) -> Rank2Sheaf {
        Rank2Sheaf::new(x(r), k, Q::from(s), Q::from(c3)).unwrap()
    }

    #[test]
    fn section_bound_examples() {
        let rep = section_c3_bound(&sheaf(5, 0, 3, 0));
        assert!(rep.holds);
        assert_eq!(rep.slack(), Q::zero());
        let rep = section_c3_bound(&sheaf(5, 0, 7, 3));
        assert_eq!(rep.rhs, Q::from(49 - 21));
    }

    #[test]
    fn castelnuovo_equivalence() {
        for r in 1..=10 {
            let xr = x(r);
            for k in -5..=5 {
                for d in 1..=20 {
                    for pa in 0..=60 {
                        let c = CurveData::new(Q::from(d), pa).unwrap();
                        let Ok(f) = sheaf_from_curve(&xr, k, &c) else { continue };
                        let castelnuovo = 2 * pa <= (d - 1) * (d - 2);
                        assert_eq!(section_c3_bound(&f).holds, castelnuovo);
                    }
                }
            }
        }
    }

    #[test]
    fn section_exists_examples() {
        let q = sheaf(5, 0, 5, 0);
        let rep = section_exists_rr(&q, 10, 1).unwrap();
        assert_eq!((rep.lhs.clone(), rep.rhs.clone()), (Q::from(21000), Q::from(600)));
        assert!(rep.holds);
        let rep = section_exists_rr(&q, 0, 1).unwrap();
        assert_eq!((rep.lhs.clone(), rep.rhs.clone()), (Q::zero(), Q::zero()));
        assert!(!rep.holds);
        let rep = section_exists_rr(&sheaf(1, 0, 1, 0), 1, 1).unwrap();
        assert_eq!((rep.lhs.clone(), rep.rhs.clone()), (Q::from(72), Q::from(12)));
        assert!(rep.holds);
        assert!(matches!(
            section_exists_rr(&sheaf(5, 1, 5, 0), 1, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn firstbound_examples() {
        assert_eq!(firstbound_c3(&x(5), 1, &Q::from(5), 1), Q::from(150));
        assert_eq!(firstbound_c3(&x(3), 1, &Q::from(2), 1), Q::from(40));
        for r in 1..=10 {
            for s in 1..=40 {
                let s = Q::from(s);
                let expect = &s * &s - &s * 3 + &s * x(r).a;
                assert_eq!(firstbound_c3(&x(r), 0, &s, 1), expect);
                assert_eq!(firstbound_c3_rederived(&x(r), 0, &s, 1), expect);
            }
        }
    }

    #[test]
    fn rederived_bound_matches_twisted_section_bound() {
        for r in 1..=6 {
            for s in 1..=12 {
                for n in -3..=3 {
                    let f = sheaf(r, 0, s, 0);
                    let tw = f.twist(n);
                    let direct = section_c3_bound(&tw).rhs;
                    assert_eq!(firstbound_c3_rederived(&x(r), n, &Q::from(s), 1), direct);
                }
            }
        }
        let rep = firstbound_report(&sheaf(5, 0, 5, 0), 1, 1).unwrap();
        assert_eq!(rep.rhs, Q::from(150));
        assert!(rep.notes[0].contains("rederived bound"));
    }

    #[test]
    fn oldbound_values() {
        assert_eq!(oldbound_threshold(1).unwrap(), 31);
        assert_eq!(oldbound_threshold(19).unwrap(), 31);
        assert_eq!(oldbound_threshold(20).unwrap(), 66);
        assert_eq!(oldbound_threshold(25).unwrap(), 89);
        assert!(oldbound_threshold(0).is_err());
    }

    #[test]
    fn oldbound_is_minimal_and_monotone() {
        let satisfies = |s: i64, n: i64| {
            let m = n - (4 * s - 27);
            m >= 0 && 4 * m * m >= 60 * s - 525
        };
        let mut prev = 0;
        for s in 20..=2000 {
            let n = oldbound_threshold(s).unwrap();
            assert!(satisfies(s, n));
            assert!(!satisfies(s, n - 1));
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn p_threshold_examples() {
        let t = p_threshold(5, 0, &Q::from(6), 4).unwrap();
        assert_eq!((t.p, t.boundary, t.p_strict), (1, true, 2));
        assert_eq!(p_threshold(5, 0, &Q::from(1), 0).unwrap().p, -2);
        let t = p_threshold(4, 1, &Q::from(3), 1).unwrap();
        assert_eq!((t.p, t.p_strict), (0, 1));
        let t = p_threshold(3, 0, &Q::from(4), 3).unwrap();
        // c3 = 4 + 2*4 = 12, 12/4 = 3
        assert_eq!((t.c3.clone(), t.p), (Q::from(12), 3));
        assert!(p_threshold(5, 0, &Q::zero(), 1).is_err());
    }

    #[test]
    fn p_threshold_is_least() {
        for r in 1..=8 {
            for k in -3..=3 {
                for d in 1..=15 {
                    for pa in 0..=20 {
                        let dq = Q::from(d);
                        let t = p_threshold(r, k, &dq, pa).unwrap();
                        assert!(&dq * t.p >= t.c3);
                        assert!(&dq * (t.p - 1) < t.c3);
                        assert!(&dq * t.p_strict > t.c3);
                        assert!(&dq * (t.p_strict - 1) <= t.c3);
                    }
                }
            }
        }
    }

    #[test]
    fn cy_genus_examples() {
        assert!(cy_genus_bound(&Q::from(6), 4).holds);
        let r = cy_genus_bound(&Q::from(3), 1);
        assert!(r.holds);
        assert_eq!(r.slack(), Q::zero());
        assert!(!cy_genus_bound(&Q::from(3), 2).holds);
    }
}
