use std::io::{self, Write};

use clap::{Args, ValueEnum};
use reflexive::bounds::{
    cy_genus_bound, firstbound_report, oldbound_report, p_threshold, section_c3_bound, section_exists_rr,
    BoundReport, PThreshold,
};
use reflexive::euler::{chi_closed_form, chi_dual_formula, chi_sheaf, ext_constraints, ExtLedger};
use reflexive::moduli::{
    check_bigthm, check_cy_theorem, check_ext2_vanishing, check_fano_theorem, check_fanocor, moduli_dimension,
    ModuliReport,
};
use reflexive::serre::{genus_from_c3, GenusReading};
use reflexive::vanish::{acm_report, canonical_det_report, infer, AcmReport, CanonicalDetReport};
use reflexive::verify::{run_selftest, Mutation};
use reflexive::{CurveData, Error, NumericalThreefold, Rank2Sheaf, Result, Q};
use serde::{Deserialize, Serialize};

use crate::args::{Input, SheafArgs, ThreefoldArgs};
use crate::scan::{self, ScanArgs};

/// `println!` that ends the process quietly when stdout is closed early.
macro_rules! say {
    ($($arg:tt)*) => {
        if let Err(e) = writeln!(io::stdout(), $($arg)*) {
            finish_write(e);
        }
    };
}

fn finish_write(e: io::Error) {
    if e.kind() == io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    eprintln!("error: writing output: {e}");
    std::process::exit(1);
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Error::Identity(format!("json: {e}")))?;
    say!("{s}");
    Ok(())
}

fn describe_threefold(x: &NumericalThreefold) -> String {
    format!("X: {} (h^3 = {}, c1 = {}h, c2·h = {})", x.label, x.degree, x.a, x.b)
}

fn describe_sheaf(f: &Rank2Sheaf) -> String {
    format!("F: c1 = {}h, c2·h = {}, c3 = {}", f.k(), f.s(), f.c3())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafNumbers {
    pub k: i64,
    pub c2: Q,
    pub c3: Q,
}

impl From<&Rank2Sheaf> for SheafNumbers {
    fn from(f: &Rank2Sheaf) -> Self {
        SheafNumbers {
            k: f.k(),
            c2: f.s().clone(),
            c3: f.c3().clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafInfo {
    #[serde(flatten)]
    pub numbers: SheafNumbers,
    pub locally_free: bool,
    pub curve: Option<CurveData>,
    /// Genus read back from `c3` with `d = S`, when no curve was given.
    pub genus_reading: Option<GenusReading>,
    pub canonical_twist: Option<i64>,
    pub dual: SheafNumbers,
    pub delta_pair: Q,
    pub moduli_dimension: Q,
    pub canonical_det: Option<CanonicalDetReport>,
    pub acm: AcmReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoOutput {
    pub threefold: NumericalThreefold,
    pub chi_o: Q,
    pub c1_c2: Q,
    pub c1_cubed: Q,
    pub fano: bool,
    pub canonically_trivial: bool,
    pub sheaf: Option<SheafInfo>,
}

pub fn info(threefold: &ThreefoldArgs, sheaf: Option<&SheafArgs>, json: bool) -> Result<()> {
    let input = sheaf.map(SheafArgs::build).transpose()?;
    let x = match &input {
        Some(i) => i.x.clone(),
        None => threefold.build()?,
    };
    let sheaf = input.as_ref().map(|i| {
        let f = &i.sheaf;
        SheafInfo {
            numbers: f.into(),
            locally_free: f.is_locally_free(),
            curve: i.curve.clone(),
            genus_reading: i
                .curve
                .is_none()
                .then(|| genus_from_c3(&x, f.k(), f.s(), f.c3())),
            canonical_twist: f.canonical_parity(),
            dual: (&f.dual()).into(),
            delta_pair: f.delta_pair(),
            moduli_dimension: moduli_dimension(f),
            canonical_det: canonical_det_report(f),
            acm: acm_report(f),
        }
    });
    let out = InfoOutput {
        threefold: (*x).clone(),
        chi_o: x.chi_structure_sheaf(),
        c1_c2: x.c1_c2(),
        c1_cubed: x.c1_cubed(),
        fano: x.is_fano(),
        canonically_trivial: x.is_canonically_trivial(),
        sheaf,
    };
    if json {
        return print_json(&out);
    }
    say!("{}", describe_threefold(&x));
    say!("  chi(O_X) = {}, c1·c2 = {}, c1^3 = {}", out.chi_o, out.c1_c2, out.c1_cubed);
    say!("  fano: {}, c1 = 0: {}", out.fano, out.canonically_trivial);
    if let (Some(i), Some(s)) = (&input, &out.sheaf) {
        say!("{}", describe_sheaf(&i.sheaf));
        say!("  locally free: {}", s.locally_free);
        if let Some(c) = &s.curve {
            say!("  curve: d = {}, p_a = {}", c.degree, c.genus);
        }
        if let Some(g) = &s.genus_reading {
            match &g.warning {
                None => say!("  genus of a section curve: {}", g.genus),
                Some(w) => say!("  genus of a section curve: {} ({w})", g.genus),
            }
        }
        match s.canonical_twist {
            Some(t) => say!("  F({t}) has det = ω_X"),
            None => say!("  no twist has det = ω_X"),
        }
        say!("  F*: c1 = {}h, c2·h = {}, c3 = {}", s.dual.k, s.dual.c2, s.dual.c3);
        say!("  c1(X)·Δ(F) = {}", s.delta_pair);
        say!("  moduli dimension formula: {}", s.moduli_dimension);
        if let Some(c) = &s.canonical_det {
            say!(
                "  det F = ω_X: h^2 - h^1 = {}, chi = {}, equivalences hold: {}",
                c.h2_minus_h1, c.chi, c.equivalences_hold
            );
        }
        if s.acm.acm_possible == Some(false) {
            let h2 = s.acm.asymptotic_h2.as_ref().expect("set with acm_possible");
            say!("  not ACM: h^2(F(n)) = {h2} for n << 0");
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiOutput {
    pub threefold: NumericalThreefold,
    #[serde(flatten)]
    pub sheaf: SheafNumbers,
    pub chi: Q,
    pub chi_dual: Q,
    pub closed_form: Option<Q>,
    pub dual_formula: Option<Q>,
    pub agreement: Option<bool>,
}

pub fn chi_output(input: &Input) -> ChiOutput {
    let f = &input.sheaf;
    let chi = chi_sheaf(f);
    let chi_dual = chi_sheaf(&f.dual());
    let (closed_form, dual_formula) = match input.hypersurface_curve() {
        Some((r, c)) => {
            let pa = Q::from(c.genus);
            (
                Some(chi_closed_form(r, f.k(), &c.degree, &pa)),
                Some(chi_dual_formula(r, f.k(), &pa)),
            )
        }
        None => (None, None),
    };
    let agreement = match (&closed_form, &dual_formula) {
        (Some(c), Some(d)) => Some(*c == chi && *d == chi_dual),
        _ => None,
    };
    ChiOutput {
        threefold: (*input.x).clone(),
        sheaf: f.into(),
        chi,
        chi_dual,
        closed_form,
        dual_formula,
        agreement,
    }
}

pub fn chi(input: &Input, json: bool) -> Result<()> {
    let out = chi_output(input);
    if json {
        print_json(&out)?;
    } else {
        say!("{}", describe_threefold(&input.x));
        say!("{}", describe_sheaf(&input.sheaf));
        say!("chi(F)  = {}", out.chi);
        say!("chi(F*) = {}", out.chi_dual);
        if let (Some(c), Some(d)) = (&out.closed_form, &out.dual_formula) {
            let mark = |ok: bool| if ok { "ok" } else { "MISMATCH" };
            say!("closed form  = {c}  {}", mark(*c == out.chi));
            say!("dual formula = {d}  {}", mark(*d == out.chi_dual));
        }
    }
    match out.agreement {
        Some(false) => Err(Error::Identity(format!(
            "closed forms disagree with Riemann-Roch: chi = {}, chi(F*) = {}",
            out.chi, out.chi_dual
        ))),
        _ => Ok(()),
    }
}

pub fn scan(args: &ScanArgs, json: bool) -> Result<()> {
    let rows = scan::rows(args)?;
    if json {
        return print_json(&rows);
    }
    let stdout = io::stdout();
    if let Err(e) = scan::write_csv(&rows, stdout.lock()) {
        match e.into_kind() {
            csv::ErrorKind::Io(e) => finish_write(e),
            other => return Err(Error::InvalidInput(format!("writing csv: {other:?}"))),
        }
    }
    Ok(())
}

pub fn vanish(input: &Input, json: bool) -> Result<()> {
    let ctx = input.context()?;
    let set = infer(&ctx)?;
    set.replay()?;
    if json {
        return print_json(&set);
    }
    let mut out = io::stdout().lock();
    let mut body = || -> io::Result<()> {
        writeln!(out, "{}", describe_threefold(&input.x))?;
        writeln!(out, "{}", describe_sheaf(&input.sheaf))?;
        let asserted: Vec<String> = ctx.assumptions().iter().map(ToString::to_string).collect();
        writeln!(out, "assumptions: {}", if asserted.is_empty() { "none".into() } else { asserted.join(", ") })?;
        writeln!(out, "\nfacts ({}):", set.len())?;
        for fact in set.iter() {
            write!(out, "{}", set.explain(fact))?;
        }
        let derived: Vec<_> = set.hypotheses.iter().filter(|(_, r)| !r.asserted).collect();
        if !derived.is_empty() {
            writeln!(out, "\nderived hypotheses:")?;
            for (h, rec) in derived {
                let rules: Vec<String> = rec.derivations.iter().map(|d| d.rule.to_string()).collect();
                writeln!(out, "  {h}: {}  by {}", h.statement(), rules.join(" | "))?;
            }
        }
        if !set.relations.is_empty() {
            writeln!(out, "\nrelations:")?;
            for r in &set.relations {
                let tag = if r.asymptotic { " (n << 0)" } else { "" };
                writeln!(out, "  {}{tag}  by {}", r.statement, r.rule)?;
            }
        }
        Ok(())
    };
    if let Err(e) = body() {
        finish_write(e);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Fano,
    Cy,
    Big,
    Fanocor,
    Ext2,
    All,
}

#[derive(Debug, Args)]
pub struct ModuliArgs {
    #[command(flatten)]
    pub sheaf: SheafArgs,

    #[arg(long, value_enum, default_value = "all")]
    pub theorem: TheoremArg,
}

pub fn moduli_reports(input: &Input, theorem: TheoremArg) -> Result<Vec<ModuliReport>> {
    let ctx = input.context()?;
    let checks: &[fn(&reflexive::vanish::Context) -> Result<ModuliReport>] = match theorem {
        TheoremArg::Fano => &[check_fano_theorem],
        TheoremArg::Cy => &[check_cy_theorem],
        TheoremArg::Big => &[check_bigthm],
        TheoremArg::Fanocor => &[check_fanocor],
        TheoremArg::Ext2 => &[check_ext2_vanishing],
        TheoremArg::All => &[
            check_fano_theorem,
            check_cy_theorem,
            check_bigthm,
            check_fanocor,
            check_ext2_vanishing,
        ],
    };
    checks.iter().map(|check| check(&ctx)).collect()
}

pub fn moduli(args: &ModuliArgs, json: bool) -> Result<()> {
    let input = args.sheaf.build()?;
    let reports = moduli_reports(&input, args.theorem)?;
    if json {
        return print_json(&reports);
    }
    say!("{}", describe_threefold(&input.x));
    say!("{}", describe_sheaf(&input.sheaf));
    say!("dimension formula: {}", moduli_dimension(&input.sheaf));
    for r in &reports {
        print!("\n{r}");
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub sheaf: SheafArgs,

    /// Twist exponent for the twisted section bound (needs c1(F) = 0).
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,

    /// L = O(t).
    #[arg(long, default_value_t = 1)]
    pub t: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOutput {
    pub bounds: Vec<BoundReport>,
    pub p_threshold: Option<PThreshold>,
}

pub fn bound_output(args: &BoundArgs) -> Result<BoundOutput> {
    let input = args.sheaf.build()?;
    let f = &input.sheaf;
    let x = &input.x;
    let mut bounds = vec![section_c3_bound(f)];
    if let Some(n) = args.n {
        bounds.push(firstbound_report(f, n, args.t)?);
        bounds.push(section_exists_rr(f, n, args.t)?);
    }
    if let Some(c) = &input.curve {
        if x.a == 0 {
            bounds.push(cy_genus_bound(&c.degree, c.genus));
        }
    }
    if x.hypersurface_degree == Some(5) && f.k() == 0 {
        if let Some(s) = f.s().to_i64() {
            bounds.push(oldbound_report(s)?);
        }
    }
    let p_threshold = match input.hypersurface_curve() {
        Some((r, c)) => Some(p_threshold(r, f.k(), &c.degree, c.genus)?),
        None => None,
    };
    Ok(BoundOutput { bounds, p_threshold })
}

pub fn bound(args: &BoundArgs, json: bool) -> Result<()> {
    let out = bound_output(args)?;
    if json {
        return print_json(&out);
    }
    for b in &out.bounds {
        say!("{b}");
        for n in &b.notes {
            say!("  note: {n}");
        }
        for a in &b.assumed {
            say!("  assumed: {a}");
        }
    }
    if let Some(p) = &out.p_threshold {
        say!(
            "p_threshold: c3 = {}, h^2(F ⊗ ω(p)) <= 1 from p = {}, = 0 from p = {}{}",
            p.c3,
            p.p,
            p.p_strict,
            if p.boundary { " (boundary case)" } else { "" }
        );
    }
    Ok(())
}

fn parse_h(s: &str) -> std::result::Result<[u64; 4], String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| format!("bad dimension in {s:?}")))
        .collect::<std::result::Result<_, _>>()?;
    v.try_into().map_err(|_| format!("expected H0,H1,H2,H3, got {s:?}"))
}

#[derive(Debug, Args)]
pub struct ExtArgs {
    /// h^i(Hom(F, G)) for i = 0..3.
    #[arg(long, value_name = "H0,H1,H2,H3", value_parser = parse_h)]
    pub h: [u64; 4],

    /// h^0(Ext^1(F, G)).
    #[arg(long)]
    pub e1: u64,
}

pub fn ext(args: &ExtArgs, json: bool) -> Result<()> {
    let [h0, h1, h2, h3] = args.h;
    let ledger: ExtLedger = ext_constraints(h0, h1, h2, h3, args.e1);
    if json {
        return print_json(&ledger);
    }
    let (lo, hi) = ledger.ext2_range();
    say!("ext^0 = {}", ledger.ext0);
    say!("ext^1 in [{}, {}]", ledger.ext1_min, ledger.ext1_max);
    say!("ext^2 in [{lo}, {hi}], ext^2 - ext^1 = {}", i128::from(lo) - i128::from(ledger.ext1_min));
    say!("ext^3 = {}", ledger.ext3);
    Ok(())
}

fn parse_mutation(s: &str) -> std::result::Result<Mutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Deliberately break one formula: none, standard-binomial, broken-twist.
    #[arg(long, value_parser = parse_mutation, default_value = "none")]
    pub mutation: Mutation,
}

pub fn selftest(args: &SelftestArgs, json: bool) -> Result<()> {
    let report = run_selftest(args.mutation, args.seed);
    if json {
        print_json(&report)?;
    } else {
        for s in &report.suites {
            say!("{s}");
        }
        let failed = report.suites.iter().filter(|s| !s.passed()).count();
        say!(
            "{} suites, {failed} failed, {} ms (seed {})",
            report.suites.len(),
            report.millis,
            report.seed
        );
    }
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report
            .suites
            .iter()
            .filter(|s| !s.passed())
            .map(|s| s.name.as_str())
            .collect();
        Err(Error::Identity(format!("failing suites: {}", names.join(", "))))
    }
}
