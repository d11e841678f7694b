use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::sync::Arc;

use clap::Args;
use reflexive::serre::sheaf_from_curve;
use reflexive::vanish::{Context, Hypothesis};
use reflexive::{CurveData, Error, NumericalThreefold, Rank2Sheaf, Result, Q};

pub fn parse_q(s: &str) -> std::result::Result<Q, String> {
    s.trim().parse::<Q>().map_err(|e| e.to_string())
}

/// `A..B`, inclusive, non-empty.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range A..B, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: i64 = hi
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

pub fn parse_threefold(s: &str) -> std::result::Result<(i64, i64, Q), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, a, b] = parts[..] else {
        return Err(format!("expected N,A,B, got {s:?}"));
    };
    let n = n.parse().map_err(|_| format!("bad N in {s:?}"))?;
    let a = a.parse().map_err(|_| format!("bad A in {s:?}"))?;
    Ok((n, a, parse_q(b)?))
}

pub fn parse_curve(s: &str) -> std::result::Result<(Q, i64), String> {
    let (d, pa) = s
        .split_once(',')
        .ok_or_else(|| format!("expected D,PA, got {s:?}"))?;
    let pa = pa.trim().parse().map_err(|_| format!("bad genus in {s:?}"))?;
    Ok((parse_q(d)?, pa))
}

pub fn parse_hypothesis(s: &str) -> std::result::Result<Hypothesis, String> {
    s.parse::<Hypothesis>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct ThreefoldArgs {
    /// Smooth hypersurface of degree R in P^4.
    #[arg(long, value_name = "R", conflicts_with = "threefold", required_unless_present = "threefold")]
    pub hypersurface: Option<i64>,

    /// Numerical threefold h^3 = N, c1 = A·h, c2·h = B.
    #[arg(long, value_name = "N,A,B", value_parser = parse_threefold, allow_hyphen_values = true)]
    pub threefold: Option<(i64, i64, Q)>,
}

impl ThreefoldArgs {
    pub fn build(&self) -> Result<Arc<NumericalThreefold>> {
        let x = match (&self.hypersurface, &self.threefold) {
            (Some(r), None) => NumericalThreefold::hypersurface(*r)?,
            (None, Some((n, a, b))) => NumericalThreefold::new(*n, *a, b.clone(), format!("N={n} a={a} b={b}"))?,
            _ => return Err(Error::InvalidInput("give exactly one of --hypersurface, --threefold".into())),
        };
        Ok(Arc::new(x))
    }
}

#[derive(Debug, Clone, Args)]
pub struct SheafArgs {
    #[command(flatten)]
    pub threefold: ThreefoldArgs,

    /// c1(F) = K·h.
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    pub det: i64,

    /// c2(F)·h.
    #[arg(long, value_name = "S", value_parser = parse_q, allow_hyphen_values = true,
          requires = "c3", conflicts_with = "curve")]
    pub c2: Option<Q>,

    /// c3(F); must be non-negative.
    #[arg(long, value_name = "C3", value_parser = parse_q, allow_hyphen_values = true, requires = "c2")]
    pub c3: Option<Q>,

    /// The curve cut out by a section: degree D and arithmetic genus PA.
    #[arg(long, value_name = "D,PA", value_parser = parse_curve, allow_hyphen_values = true,
          required_unless_present = "c2")]
    pub curve: Option<(Q, i64)>,

    /// Assert a hypothesis (repeatable).
    #[arg(long = "assume", value_name = "ID", value_parser = parse_hypothesis)]
    pub assume: Vec<Hypothesis>,

    /// Twists m considered by the vanishing rules.
    #[arg(long, value_name = "A..B", value_parser = parse_range, allow_hyphen_values = true)]
    pub twists: Option<RangeInclusive<i64>>,
}

/// Parsed and validated command-line input.
pub struct Input {
    pub x: Arc<NumericalThreefold>,
    pub sheaf: Rank2Sheaf,
    pub curve: Option<CurveData>,
    pub assumptions: BTreeSet<Hypothesis>,
    pub twists: Option<RangeInclusive<i64>>,
}

impl SheafArgs {
    pub fn build(&self) -> Result<Input> {
        let x = self.threefold.build()?;
        let k = self.det;
        let (sheaf, curve) = match (&self.curve, &self.c2, &self.c3) {
            (Some((d, pa)), None, None) => {
                let curve = CurveData::new(d.clone(), *pa)?;
                (sheaf_from_curve(&x, k, &curve)?, Some(curve))
            }
            (None, Some(s), Some(c3)) => (Rank2Sheaf::new(Arc::clone(&x), k, s.clone(), c3.clone())?, None),
            _ => return Err(Error::InvalidInput("give either --curve D,PA or --c2 S --c3 C3".into())),
        };
        Ok(Input {
            x,
            sheaf,
            curve,
            assumptions: self.assume.iter().copied().collect(),
            twists: self.twists.clone(),
        })
    }
}

impl Input {
    pub fn context(&self) -> Result<Context> {
        let ctx = match &self.curve {
            Some(c) => Context::from_curve(&self.x, self.sheaf.k(), c)?,
            None => Context::from_sheaf(self.sheaf.clone()),
        };
        let ctx = ctx.assume_all(self.assumptions.iter().copied());
        Ok(match &self.twists {
            Some(t) => ctx.with_twists(t.clone()),
            None => ctx,
        })
    }

    /// `(r, d, pa)` when the closed hypersurface formulas apply.
    pub fn hypersurface_curve(&self) -> Option<(i64, &CurveData)> {
        Some((self.x.hypersurface_degree?, self.curve.as_ref()?))
    }
}
