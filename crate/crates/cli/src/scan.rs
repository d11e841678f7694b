use std::io::Write;
use std::ops::RangeInclusive;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use reflexive::bounds::{oldbound_threshold, section_c3_bound};
use reflexive::euler::chi_sheaf;
use reflexive::moduli::moduli_dimension;
use reflexive::serre::{c3_from_curve, sheaf_from_curve};
use reflexive::{CurveData, NumericalThreefold, Result};
use serde::{Deserialize, Serialize};

use crate::args::parse_range;

pub const HEADER: [&str; 10] = [
    "r",
    "k",
    "d",
    "pa",
    "c3",
    "chi",
    "chi_dual",
    "sectionbound_holds",
    "oldbound_n",
    "moduli_dim",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    /// Points with c3 >= 0.
    Valid,
    /// Points with c3 = 0.
    Boundary,
    /// Every grid point; c3 < 0 rows are marked invalid.
    All,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, value_name = "A..B", value_parser = parse_range, allow_hyphen_values = true)]
    pub r: RangeInclusive<i64>,
    #[arg(long, value_name = "A..B", value_parser = parse_range, allow_hyphen_values = true)]
    pub k: RangeInclusive<i64>,
    #[arg(long, value_name = "A..B", value_parser = parse_range, allow_hyphen_values = true)]
    pub d: RangeInclusive<i64>,
    #[arg(long, value_name = "A..B", value_parser = parse_range, allow_hyphen_values = true)]
    pub pa: RangeInclusive<i64>,
    #[arg(long, value_enum, default_value = "valid")]
    pub filter: Filter,
}

/// One CSV row; `None` renders as an empty field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub r: i64,
    pub k: i64,
    pub d: i64,
    pub pa: i64,
    pub c3: String,
    pub chi: Option<String>,
    pub chi_dual: Option<String>,
    pub sectionbound_holds: Option<bool>,
    pub oldbound_n: Option<i64>,
    pub moduli_dim: Option<String>,
}

impl Row {
    fn fields(&self) -> [String; 10] {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        [
            self.r.to_string(),
            self.k.to_string(),
            self.d.to_string(),
            self.pa.to_string(),
            self.c3.clone(),
            opt(&self.chi),
            opt(&self.chi_dual),
            self.sectionbound_holds.map(|b| b.to_string()).unwrap_or_default(),
            self.oldbound_n.map(|n| n.to_string()).unwrap_or_default(),
            opt(&self.moduli_dim),
        ]
    }
}

fn row(x: &Arc<NumericalThreefold>, r: i64, k: i64, d: i64, pa: i64, filter: Filter) -> Result<Option<Row>> {
    let curve = CurveData::new(d.into(), pa)?;
    let c3 = c3_from_curve(x, k, &curve);
    if c3.is_negative() {
        return Ok((filter == Filter::All).then(|| Row {
            r,
            k,
            d,
            pa,
            c3: format!("invalid:{c3}"),
            chi: None,
            chi_dual: None,
            sectionbound_holds: None,
            oldbound_n: None,
            moduli_dim: None,
        }));
    }
    if filter == Filter::Boundary && !c3.is_zero() {
        return Ok(None);
    }
    let f = sheaf_from_curve(x, k, &curve)?;
    let oldbound_n = if r == 5 && k == 0 { Some(oldbound_threshold(d)?) } else { None };
    Ok(Some(Row {
        r,
        k,
        d,
        pa,
        c3: c3.to_string(),
        chi: Some(chi_sheaf(&f).to_string()),
        chi_dual: Some(chi_sheaf(&f.dual()).to_string()),
        sectionbound_holds: Some(section_c3_bound(&f).holds),
        oldbound_n,
        moduli_dim: Some(moduli_dimension(&f).to_string()),
    }))
}

/// Rows in lexicographic `(r, k, d, pa)` order, computed in parallel over `(r, k)`.
pub fn rows(args: &ScanArgs) -> Result<Vec<Row>> {
    let xs = args
        .r
        .clone()
        .map(|r| Ok((r, Arc::new(NumericalThreefold::hypersurface(r)?))))
        .collect::<Result<Vec<_>>>()?;
    let cells: Vec<(i64, &Arc<NumericalThreefold>, i64)> = xs
        .iter()
        .flat_map(|(r, x)| args.k.clone().map(move |k| (*r, x, k)))
        .collect();
    let blocks = cells
        .par_iter()
        .map(|&(r, x, k)| {
            let mut out = Vec::new();
            for d in args.d.clone() {
                for pa in args.pa.clone() {
                    out.extend(row(x, r, k, d, pa, args.filter)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<Vec<Row>>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

pub fn write_csv(rows: &[Row], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}
