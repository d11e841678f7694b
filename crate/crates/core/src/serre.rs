//! The numerical shadow of the Serre correspondence between rank-2 reflexive
//! sheaves with a section and Cohen–Macaulay curves.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::chow::NumericalThreefold;
use crate::error::{Error, Result};
use crate::sheaf::Rank2Sheaf;
use crate::Q;

/// A curve `C ⊂ X` seen through its degree `d = c₂(F)·h` and arithmetic genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub degree: Q,
    pub genus: i64,
}

impl CurveData {
    pub fn new(degree: Q, genus: i64) -> Result<Self> {
        if !degree.is_positive() {
            return Err(Error::InvalidInput(format!(
                "curve degree must be positive, got {degree}"
            )));
        }
        Ok(CurveData { degree, genus })
    }
}

/// `c₃(F) = 2p_a − 2 + (a − k)·d`.
pub fn c3_from_curve(x: &NumericalThreefold, k: i64, curve: &CurveData) -> Q {
    Q::from(2 * curve.genus - 2) + &curve.degree * (x.a - k)
}

/// The sheaf whose section vanishes along `curve`, with `det F = O(k)`.
pub fn sheaf_from_curve(x: &Arc<NumericalThreefold>, k: i64, curve: &CurveData) -> Result<Rank2Sheaf> {
    let c3 = c3_from_curve(x, k, curve);
    Rank2Sheaf::new(Arc::clone(x), k, curve.degree.clone(), c3)
}

/// The genus recovered from `c₃`, with a warning when it is not a
/// non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReading {
    pub genus: Q,
    pub warning: Option<String>,
}

impl GenusReading {
    pub fn is_consistent(&self) -> bool {
        self.warning.is_none()
    }

    pub fn into_integer(self) -> Result<i64> {
        match (self.warning, self.genus.to_i64()) {
            (None, Some(g)) => Ok(g),
            (Some(w), _) => Err(Error::Inconsistent(w)),
            (None, None) => Err(Error::Inconsistent(format!(
                "genus {} out of range",
                self.genus
            ))),
        }
    }
}

/// `p_a = (c₃ − (a − k)·d + 2)/2`.
pub fn genus_from_c3(x: &NumericalThreefold, k: i64, d: &Q, c3: &Q) -> GenusReading {
    let genus = (c3 - d * (x.a - k) + 2) / 2;
    let warning = if !genus.is_integer() {
        Some(format!("arithmetic genus {genus} is not an integer"))
    } else if genus.is_negative() {
        Some(format!("arithmetic genus {genus} is negative"))
    } else {
        None
    };
    GenusReading { genus, warning }
}
