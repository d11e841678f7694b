//! Workloads shared by the benchmarks.

use std::sync::Arc;

use reflexive::euler::{chi_closed_form, chi_sheaf};
use reflexive::serre::sheaf_from_curve;
use reflexive::moduli::STANDARD_ASSERTIONS;
use reflexive::vanish::Context;
use reflexive::{CurveData, NumericalThreefold, Rank2Sheaf, Q};

/// Every valid sheaf on a degree-`r` hypersurface for `k`, `d`, `pa` in the
/// given ranges.
pub fn grid(r: i64, ks: std::ops::RangeInclusive<i64>, ds: std::ops::RangeInclusive<i64>, pas: std::ops::RangeInclusive<i64>) -> Vec<(i64, i64, i64, Rank2Sheaf)> {
    let x = Arc::new(NumericalThreefold::hypersurface(r).expect("positive degree"));
    let mut out = Vec::new();
    for k in ks {
        for d in ds.clone() {
            for pa in pas.clone() {
                let curve = CurveData::new(Q::from(d), pa).expect("d > 0");
                if let Ok(f) = sheaf_from_curve(&x, k, &curve) {
                    out.push((k, d, pa, f));
                }
            }
        }
    }
    out
}

/// Count of grid points where the closed form and Riemann–Roch agree.
pub fn closed_form_agreements(r: i64, grid: &[(i64, i64, i64, Rank2Sheaf)]) -> usize {
    grid.iter()
        .filter(|(k, d, pa, f)| chi_closed_form(r, *k, &Q::from(*d), &Q::from(*pa)) == chi_sheaf(f))
        .count()
}

/// The conic on the cubic threefold with the standard assertions.
pub fn conic_context() -> Context {
    let x = Arc::new(NumericalThreefold::hypersurface(3).expect("cubic"));
    Context::from_curve(&x, 1, &CurveData::new(Q::from(2), 0).expect("d > 0"))
        .expect("c3 = 0")
        .assume_all(STANDARD_ASSERTIONS.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_agrees() {
        let g = grid(4, -2..=2, 1..=5, 0..=5);
        assert!(!g.is_empty());
        assert_eq!(closed_form_agreements(4, &g), g.len());
    }
}
