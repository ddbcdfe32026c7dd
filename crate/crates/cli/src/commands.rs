use std::fmt::Write as _;

use clap::ValueEnum;
use cuplen_core::bounds::{full_report, BoundReport, BoundsError, Certificate, ComputedData, FieldTag, ReportOptions};
use cuplen_core::bounds::CSV_HEADER;
use cuplen_core::gf2poly::{ideal_gens_k3, Gf2Polynomial, PolyError, SmallN};
use cuplen_core::grassmann::{available_target_dim, check_hypothesis, GrassmannError, GrassmannPresentation, OrientedContext};
use cuplen_core::heights::{height_direct, lemma_f_height, HeightError, HeightRecord, HeightTarget};
use cuplen_core::SizeCaps;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::Cache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldSelector {
    Gf2,
    Rational,
    Both,
}

impl FieldSelector {
    fn fields(self, k: u32) -> Vec<FieldTag> {
        match self {
            FieldSelector::Gf2 => vec![FieldTag::Gf2],
            FieldSelector::Rational => vec![FieldTag::Rational],
            FieldSelector::Both if k >= 4 => vec![FieldTag::Gf2, FieldTag::Rational],
            FieldSelector::Both => vec![FieldTag::Gf2],
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    /// `None` when caching is off.
    pub cache: Option<Cache>,
    pub caps: SizeCaps,
    pub q_override: Option<u32>,
    pub field: FieldSelector,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Check(String),
    #[error("{0}")]
    Undefined(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Check(_) => 2,
            CliError::Undefined(_) => 3,
        }
    }
}

impl From<GrassmannError> for CliError {
    fn from(e: GrassmannError) -> Self {
        match e {
            GrassmannError::Hypothesis(_) | GrassmannError::Poly(_) | GrassmannError::W1Exponent => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Check(e.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Hypothesis(_) | BoundsError::Profile(_) => CliError::Usage(e.to_string()),
            BoundsError::Grassmann(g) => g.into(),
            BoundsError::Height(h) => h.into(),
            _ => CliError::Check(e.to_string()),
        }
    }
}

impl From<HeightError> for CliError {
    fn from(e: HeightError) -> Self {
        match e {
            HeightError::ZeroClass(_) | HeightError::DegreeZero(_) => CliError::Undefined(e.to_string()),
            HeightError::Hypothesis(_) => CliError::Usage(e.to_string()),
            HeightError::Grassmann(g) => g.into(),
        }
    }
}

impl From<SmallN> for CliError {
    fn from(e: SmallN) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok,
    CheckFailure,
    PartialSweep,
}

impl Exit {
    pub fn code(self) -> u8 {
        match self {
            Exit::Ok => 0,
            Exit::CheckFailure => 2,
            Exit::PartialSweep => 4,
        }
    }
}

/// Standard output of a command plus the exit status it implies.
#[derive(Debug)]
pub struct Output {
    pub body: String,
    pub exit: Exit,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, exit: Exit::Ok }
    }
}

pub(crate) fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn binomial(n: u32, k: u32) -> Option<u128> {
    (0..k).try_fold(1u128, |acc, i| acc.checked_mul(u128::from(n - i)).map(|v| v / u128::from(i + 1)))
}

fn presentation(cfg: &RunConfig, n: u32, k: u32) -> Result<GrassmannPresentation, CliError> {
    Ok(GrassmannPresentation::build_with_caps(n, k, cfg.caps)?)
}

#[derive(Serialize)]
struct RingSummary {
    n: u32,
    k: u32,
    formal_dim: u32,
    betti: Vec<usize>,
    total: u128,
    binomial: u128,
    palindromic: bool,
    ok: bool,
}

pub fn ring(cfg: &RunConfig, n: u32, k: u32) -> Result<Output, CliError> {
    let p = presentation(cfg, n, k)?;
    let betti = p.betti()?;
    let total: u128 = betti.iter().map(|&b| b as u128).sum();
    let binomial = binomial(n, k).ok_or_else(|| CliError::Usage(format!("C({n},{k}) overflows")))?;
    let palindromic = betti.iter().eq(betti.iter().rev());
    let ok = palindromic && total == binomial && betti.first() == Some(&1);
    let s = RingSummary { n, k, formal_dim: p.formal_dim(), betti, total, binomial, palindromic, ok };
    let body = match cfg.format {
        Format::Json => to_json(&s),
        Format::Csv => {
            let mut out = String::from("degree,betti\n");
            for (d, b) in s.betti.iter().enumerate() {
                writeln!(out, "{d},{b}").unwrap();
            }
            out
        }
        Format::Text => {
            let betti: Vec<String> = s.betti.iter().map(ToString::to_string).collect();
            format!(
                "G({n},{k}): formal dimension {}\nbetti: {}\ntotal: {}\nbinomial C({n},{k}): {}\nduality: {}\nchecks: {}\n",
                s.formal_dim,
                betti.join(" "),
                s.total,
                s.binomial,
                if s.palindromic { "palindromic" } else { "NOT palindromic" },
                if s.ok { "ok" } else { "FAILED" }
            )
        }
    };
    Ok(Output { body, exit: if ok { Exit::Ok } else { Exit::CheckFailure } })
}

#[derive(Serialize)]
struct Generator {
    degree: u32,
    polynomial: String,
}

#[derive(Serialize)]
struct GeneratorSummary {
    n: u32,
    k: u32,
    generators: Vec<Generator>,
    /// Generators after setting `w1 = 0`, from the closed formula (`k = 3` only).
    reduced: Option<Vec<Generator>>,
}

pub fn ideal_gens(cfg: &RunConfig, n: u32, k: u32) -> Result<Output, CliError> {
    let p = presentation(cfg, n, k)?;
    let listed = |gens: &[Gf2Polynomial], first: u32| -> Vec<Generator> {
        gens.iter().zip(first..).map(|(g, degree)| Generator { degree, polynomial: g.to_string() }).collect()
    };
    let generators = listed(p.ideal_gens(), n - k + 1);
    let reduced = if k == 3 { Some(listed(&ideal_gens_k3(n).expect("n >= 6"), n - 2)) } else { None };
    let s = GeneratorSummary { n, k, generators, reduced };
    let body = match cfg.format {
        Format::Json => to_json(&s),
        Format::Csv => {
            let mut out = String::from("set,degree,polynomial\n");
            for (set, gens) in [("full", Some(&s.generators)), ("reduced", s.reduced.as_ref())] {
                for g in gens.into_iter().flatten() {
                    writeln!(out, "{set},{},{}", g.degree, g.polynomial).unwrap();
                }
            }
            out
        }
        Format::Text => {
            let mut out = format!("generators of I({n},{k}):\n");
            for g in &s.generators {
                writeln!(out, "  degree {}: {}", g.degree, g.polynomial).unwrap();
            }
            if let Some(reduced) = &s.reduced {
                out.push_str("with w1 = 0:\n");
                for g in reduced {
                    writeln!(out, "  g_{}: {}", g.degree, g.polynomial).unwrap();
                }
            }
            out
        }
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct HeightSummary {
    record: HeightRecord,
    /// Closed-form height of `w2` over the unoriented Grassmannian.
    closed_form: Option<u32>,
    verdict: Option<&'static str>,
}

pub fn height(cfg: &RunConfig, n: u32, k: u32, class: &str, oriented: bool) -> Result<Output, CliError> {
    let base = presentation(cfg, n, k)?;
    let x = base.parse(class)?;
    let is_w2 = x == base.parse("w2")?;
    let (record, closed_form, verdict) = if oriented {
        let ctx = OrientedContext::with_caps(base, cfg.caps)?;
        let record = height_direct(HeightTarget::Oriented(&ctx), &x)?;
        // For k = 3 the reduced ideal gives an independent value.
        let verdict = match (is_w2, k) {
            (true, 3) => Some(if 2 * record.height == available_target_dim(n)? { "AGREE" } else { "DISAGREE" }),
            _ => None,
        };
        let closed = if is_w2 { Some(lemma_f_height(n, k)?) } else { None };
        (record, closed, verdict)
    } else {
        let record = height_direct(HeightTarget::Unoriented(&base), &x)?;
        let closed = if is_w2 { Some(lemma_f_height(n, k)?) } else { None };
        let verdict = closed.map(|c| if c == record.height { "AGREE" } else { "DISAGREE" });
        (record, closed, verdict)
    };
    let s = HeightSummary { record, closed_form, verdict };
    let r = &s.record;
    let body = match cfg.format {
        Format::Json => to_json(&s),
        Format::Csv => format!(
            "class,context,n,k,height,witness_nonzero,witness_zero,closed_form,verdict\n{},{},{},{},{},{},{},{},{}\n",
            r.class_label,
            r.context,
            r.n,
            r.k,
            r.height,
            r.witness_nonzero,
            r.witness_zero,
            s.closed_form.map(|c| c.to_string()).unwrap_or_default(),
            s.verdict.unwrap_or_default()
        ),
        Format::Text => {
            let mut out = format!(
                "class: {}\ncontext: {}\n(n, k): ({n}, {k})\nheight: {}\nlast nonzero power: degree {}\nfirst zero power: exponent {}\n",
                r.class_label, r.context, r.height, r.witness_nonzero, r.witness_zero
            );
            match (s.closed_form, oriented) {
                (Some(c), false) => writeln!(out, "closed form: {c} {}", s.verdict.unwrap()).unwrap(),
                (Some(c), true) => {
                    writeln!(out, "closed form (unoriented, upper bound): {c}").unwrap();
                    if let Some(v) = s.verdict {
                        writeln!(out, "reduced-ideal target dimension: {} {v}", available_target_dim(n)?).unwrap();
                    }
                }
                (None, _) => {}
            }
            out
        }
    };
    Ok(Output::ok(body))
}

fn computed(cfg: &RunConfig, n: u32, k: u32) -> Result<ComputedData, CliError> {
    if let Some(cache) = &cfg.cache {
        match cache.load(n, k) {
            Ok(Some(data)) => return Ok(data),
            Ok(None) => {}
            Err(e) => eprintln!("warning: {e}; recomputing"),
        }
    }
    let data = ComputedData::compute(n, k, cfg.caps)?;
    if let Some(cache) = &cfg.cache {
        if let Err(e) = cache.store(&data) {
            eprintln!("warning: {e}");
        }
    }
    Ok(data)
}

fn reports(cfg: &RunConfig, n: u32, k: u32, closed_form_only: bool) -> Result<Vec<BoundReport>, CliError> {
    check_hypothesis(n, k)?;
    let fields = cfg.field.fields(k);
    let data = if fields.contains(&FieldTag::Gf2) && !closed_form_only { Some(computed(cfg, n, k)?) } else { None };
    let opts = ReportOptions { q_override: cfg.q_override };
    fields.into_iter().map(|f| Ok(full_report(n, k, f, &opts, data.as_ref())?)).collect()
}

fn report_text(r: &BoundReport) -> String {
    let mut out = format!("G~({},{}) over {}, formal dimension {}", r.n, r.k, r.field, r.formal_dim);
    if let Some(q) = r.q {
        write!(out, ", q = {q}").unwrap();
    }
    out.push('\n');
    writeln!(out, "lower: {} [{}]  closed form {} [{}]", r.lower, r.lower_method, r.closed_lower, r.closed_lower_method)
        .unwrap();
    writeln!(out, "upper: {} [{}]  closed form {} [{}]", r.upper, r.upper_method, r.closed_upper, r.closed_upper_method)
        .unwrap();
    if r.exact {
        writeln!(out, "exact: {}", r.lower).unwrap();
    } else {
        writeln!(out, "exact: no, gap {}", r.gap).unwrap();
    }
    writeln!(out, "category: [{}, {}]  closed form [{}, {}]", r.cat_lower, r.cat_upper, r.closed_cat_lower, r.cat_upper)
        .unwrap();
    out.push_str("certificates:\n");
    for c in &r.certificates {
        match c {
            Certificate::Height { record, closed_form } => writeln!(
                out,
                "  ht({}) = {} ({}, {})",
                record.class_label,
                record.height,
                record.context,
                if *closed_form { "closed form" } else { "computed" }
            )
            .unwrap(),
            Certificate::Product { product, rendered } => writeln!(
                out,
                "  nonzero product {rendered} (length {}, degree {})",
                product.length, product.degree
            )
            .unwrap(),
        }
    }
    out
}

pub fn bounds(cfg: &RunConfig, n: u32, k: u32, closed_form_only: bool) -> Result<Output, CliError> {
    if cfg.field == FieldSelector::Rational && k < 4 {
        return Err(CliError::Usage(format!("rational bounds need k >= 4, got {k}")));
    }
    let reports = reports(cfg, n, k, closed_form_only)?;
    let body = match cfg.format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in &reports {
                writeln!(out, "{}", r.csv_row()).unwrap();
            }
            out
        }
        Format::Text => reports.iter().map(report_text).collect::<Vec<_>>().join("\n"),
    };
    Ok(Output::ok(body))
}

#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub k: u32,
    pub n_min: u32,
    pub n_max: u32,
    pub closed_form_only: bool,
    pub jobs: usize,
}

#[derive(Serialize)]
#[serde(untagged)]
enum SweepRow {
    Report(Box<BoundReport>),
    Failed { n: u32, k: u32, field: FieldTag, error: String },
}

pub fn sweep(cfg: &RunConfig, spec: SweepSpec) -> Result<Output, CliError> {
    let SweepSpec { k, n_min, n_max, closed_form_only, jobs } = spec;
    if k < 3 {
        return Err(CliError::Usage(format!("need k >= 3, got {k}")));
    }
    if n_min <= n_max && n_min < 2 * k {
        return Err(CliError::Usage(format!("need n >= 2k = {}, got n-min {n_min}", 2 * k)));
    }
    if cfg.field == FieldSelector::Rational && k < 4 {
        return Err(CliError::Usage(format!("rational bounds need k >= 4, got {k}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Check(e.to_string()))?;
    let fields = cfg.field.fields(k);
    let rows: Vec<SweepRow> = pool.install(|| {
        (n_min..=n_max)
            .into_par_iter()
            .map(|n| match reports(cfg, n, k, closed_form_only) {
                Ok(rs) => rs.into_iter().map(|r| SweepRow::Report(Box::new(r))).collect(),
                Err(e) => fields
                    .iter()
                    .map(|&field| SweepRow::Failed { n, k, field, error: e.to_string() })
                    .collect::<Vec<_>>(),
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    });
    let failed = rows.iter().filter(|r| matches!(r, SweepRow::Failed { .. })).count();
    for row in &rows {
        if let SweepRow::Failed { n, k, field, error } = row {
            eprintln!("error: ({n},{k}) over {field}: {error}");
        }
    }
    let body = match cfg.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for row in &rows {
                match row {
                    SweepRow::Report(r) => writeln!(out, "{}", r.csv_row()).unwrap(),
                    SweepRow::Failed { n, k, field, .. } => writeln!(out, "{n},{k},{field},ERROR,,,,,,").unwrap(),
                }
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "{:>4} {:>3} {:<8} {:>5} {:<6} {:>5} {:<6} {:>9} {:>5} {:>3}\n",
                "n", "k", "field", "lower", "method", "upper", "method", "category", "exact", "gap"
            );
            for row in &rows {
                match row {
                    SweepRow::Report(r) => writeln!(
                        out,
                        "{:>4} {:>3} {:<8} {:>5} {:<6} {:>5} {:<6} {:>9} {:>5} {:>3}",
                        r.n,
                        r.k,
                        r.field.to_string(),
                        r.lower,
                        r.lower_method.tag(),
                        r.upper,
                        r.upper_method.tag(),
                        format!("[{},{}]", r.cat_lower, r.cat_upper),
                        if r.exact { "yes" } else { "no" },
                        r.gap
                    )
                    .unwrap(),
                    SweepRow::Failed { n, k, field, error } => {
                        writeln!(out, "{n:>4} {k:>3} {:<8} ERROR: {error}", field.to_string()).unwrap()
                    }
                }
            }
            out
        }
    };
    Ok(Output { body, exit: if failed > 0 { Exit::PartialSweep } else { Exit::Ok } })
}
