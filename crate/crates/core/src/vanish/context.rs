use std::collections::BTreeSet;
use std::sync::Arc;

use super::hypothesis::Hypothesis;
use crate::chow::NumericalThreefold;
use crate::error::{Error, Result};
use crate::serre::{genus_from_c3, sheaf_from_curve, CurveData};
use crate::sheaf::Rank2Sheaf;
use crate::Q;

/// Twists instantiated when the caller does not ask for specific ones.
pub const DEFAULT_TWISTS: std::ops::RangeInclusive<i64> = -2..=4;

/// Input to the inference engine: numerical data, the curve genus when a
/// section is in play, asserted hypotheses and the twists to instantiate.
#[derive(Debug, Clone)]
pub struct Context {
    sheaf: Rank2Sheaf,
    genus: Option<i64>,
    assumptions: BTreeSet<Hypothesis>,
    twists: BTreeSet<i64>,
}

impl Context {
    /// The sheaf attached to a curve of the given degree and genus.
    pub fn from_curve(x: &Arc<NumericalThreefold>, k: i64, curve: &CurveData) -> Result<Self> {
        let sheaf = sheaf_from_curve(x, k, curve)?;
        Ok(Context {
            sheaf,
            genus: Some(curve.genus),
            assumptions: BTreeSet::new(),
            twists: DEFAULT_TWISTS.collect(),
        })
    }

    /// Raw Chern data; the genus is read back from `c₃` when it is a
    /// non-negative integer.
    pub fn from_sheaf(sheaf: Rank2Sheaf) -> Self {
        let reading = genus_from_c3(sheaf.threefold(), sheaf.k(), sheaf.s(), sheaf.c3());
        let genus = if reading.is_consistent() && sheaf.s().is_positive() {
            reading.genus.to_i64()
        } else {
            None
        };
        Context {
            sheaf,
            genus,
            assumptions: BTreeSet::new(),
            twists: DEFAULT_TWISTS.collect(),
        }
    }

    pub fn assume(mut self, h: Hypothesis) -> Self {
        self.assumptions.insert(h);
        self
    }

    pub fn assume_all(mut self, hs: impl IntoIterator<Item = Hypothesis>) -> Self {
        self.assumptions.extend(hs);
        self
    }

    pub fn without(mut self, h: Hypothesis) -> Self {
        self.assumptions.remove(&h);
        self
    }

    pub fn with_twists(mut self, twists: impl IntoIterator<Item = i64>) -> Self {
        self.twists = twists.into_iter().collect();
        self
    }

    pub fn sheaf(&self) -> &Rank2Sheaf {
        &self.sheaf
    }

    pub fn threefold(&self) -> &NumericalThreefold {
        self.sheaf.threefold()
    }

    pub fn genus(&self) -> Option<i64> {
        self.genus
    }

    pub fn assumptions(&self) -> &BTreeSet<Hypothesis> {
        &self.assumptions
    }

    pub fn twists(&self) -> &BTreeSet<i64> {
        &self.twists
    }

    pub fn is_asserted(&self, h: Hypothesis) -> bool {
        self.assumptions.contains(&h)
    }

    pub fn k(&self) -> i64 {
        self.sheaf.k()
    }

    pub fn a(&self) -> i64 {
        self.threefold().a
    }

    pub fn degree(&self) -> &Q {
        self.sheaf.s()
    }

    pub fn c3(&self) -> &Q {
        self.sheaf.c3()
    }

    /// Rejects assertion sets that are contradictory on their face or
    /// contradicted by the numbers.
    pub fn validate(&self) -> Result<()> {
        let has = |h| self.assumptions.contains(&h);
        if has(Hypothesis::CurveIsLine) && has(Hypothesis::CurveNotLine) {
            return Err(Error::InvalidInput(
                "assumptions `line` and `not-line` are mutually exclusive".into(),
            ));
        }
        let counts: Vec<u32> = self
            .assumptions
            .iter()
            .filter_map(|h| match h {
                Hypothesis::ComponentCount(c) => Some(*c),
                _ => None,
            })
            .collect();
        if counts.len() > 1 {
            return Err(Error::InvalidInput(format!(
                "several component counts asserted: {counts:?}"
            )));
        }
        if counts.first() == Some(&0) {
            return Err(Error::InvalidInput("a curve has at least one component".into()));
        }
        if has(Hypothesis::CurveIsLine) && *self.degree() != 1 {
            return Err(Error::Inconsistent(format!(
                "a line has degree 1, got d = {}",
                self.degree()
            )));
        }
        if has(Hypothesis::Acm) && self.c3().is_positive() {
            return Err(Error::Inconsistent(format!(
                "F is asserted L-ACM but c3 = {} > 0, and a reflexive L-ACM sheaf is locally free",
                self.c3()
            )));
        }
        let needs_curve = [
            Hypothesis::Section,
            Hypothesis::CurveConnected,
            Hypothesis::CurveRational,
            Hypothesis::CurveIsLine,
            Hypothesis::CurveNotLine,
        ];
        if needs_curve.iter().any(|h| has(*h)) && self.genus.is_none() {
            let reading = genus_from_c3(self.threefold(), self.k(), self.degree(), self.c3());
            return Err(Error::Inconsistent(reading.warning.unwrap_or_else(|| {
                format!("no curve of degree {} can be the zero scheme", self.degree())
            })));
        }
        Ok(())
    }
}
