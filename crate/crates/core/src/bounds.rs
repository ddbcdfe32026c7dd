//! Cup-length and category bounds for oriented Grassmannians `G~_{n,k}`.
//!
//! The generic inequalities for Poincaré spaces (tags `a1`, `a2`, `a3`, `b1`)
//! are evaluated on a [`PoincareProfile`]; the closed-form tables for
//! `G~_{n,k}` carry the tags `B(a)`..`B(e)` (lower) and `D(a)`..`D(c)` (upper).
//! [`full_report`] reconciles both, keeping the closed-form values next to any
//! sharper value obtained from direct computation.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grassmann::{check_hypothesis, GrassmannError, OrientedContext, ProductCertificate, SizeCaps};
use crate::heights::{
    decompose_n, lemma_f_height, lemma_f_record, rational_p1_height, rational_p1_record, HeightContext, HeightError,
    HeightRecord, K3Form,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid Poincaré profile: {0}")]
    Profile(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("product of degree {degree} exceeds the formal dimension {formal_dim}")]
    ProductTooDeep { degree: u32, formal_dim: u32 },
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error("inconsistent bounds for ({n},{k}) over {field}: lower {lower} > upper {upper}")]
    Inconsistent { n: u32, k: u32, field: FieldTag, lower: u32, upper: u32 },
    #[error(transparent)]
    Height(#[from] HeightError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Gf2,
    Rational,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldTag::Gf2 => "gf2",
            FieldTag::Rational => "rational",
        })
    }
}

/// Which inequality or closed form produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "a1")]
    A1,
    #[serde(rename = "a2")]
    A2,
    #[serde(rename = "a3")]
    A3,
    #[serde(rename = "b1")]
    B1,
    #[serde(rename = "B(a)")]
    PropBa,
    #[serde(rename = "B(b)")]
    PropBb,
    #[serde(rename = "B(c)")]
    PropBc,
    #[serde(rename = "B(d)")]
    PropBd,
    #[serde(rename = "B(e)")]
    PropBe,
    #[serde(rename = "D(a)")]
    PropDa,
    #[serde(rename = "D(b)")]
    PropDb,
    #[serde(rename = "D(c)")]
    PropDc,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::A1 => "a1",
            Method::A2 => "a2",
            Method::A3 => "a3",
            Method::B1 => "b1",
            Method::PropBa => "B(a)",
            Method::PropBb => "B(b)",
            Method::PropBc => "B(c)",
            Method::PropBd => "B(d)",
            Method::PropBe => "B(e)",
            Method::PropDa => "D(a)",
            Method::PropDb => "D(b)",
            Method::PropDc => "D(c)",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Formal dimension and the first two nonzero reduced cohomology degrees.
///
/// `q` is `None` when only `r` is known (the rational profile), which leaves
/// `b1` unavailable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoincareProfile {
    pub formal_dim: u32,
    pub r: u32,
    pub q: Option<u32>,
    pub field: FieldTag,
}

impl PoincareProfile {
    pub fn new(formal_dim: u32, r: u32, q: Option<u32>, field: FieldTag) -> Result<Self, BoundsError> {
        if r == 0 || r >= formal_dim {
            return Err(BoundsError::Profile(format!("need 0 < r < N, got r={r}, N={formal_dim}")));
        }
        if let Some(q) = q {
            if q < r || q >= formal_dim {
                return Err(BoundsError::Profile(format!("need r <= q < N, got r={r}, q={q}, N={formal_dim}")));
            }
        }
        Ok(PoincareProfile { formal_dim, r, q, field })
    }

    /// Mod-2 profile of `G~_{n,k}`: `r = 2`, with `q` supplied by the caller.
    pub fn gf2(n: u32, k: u32, q: u32) -> Result<Self, BoundsError> {
        check_hypothesis(n, k)?;
        Self::new(k * (n - k), 2, Some(q), FieldTag::Gf2)
    }

    /// Rational profile of `G~_{n,k}`, `k >= 4`: `r = 4`.
    pub fn rational(n: u32, k: u32) -> Result<Self, BoundsError> {
        check_hypothesis(n, k)?;
        if k < 4 {
            return Err(BoundsError::Hypothesis(format!("rational bounds need k >= 4, got {k}")));
        }
        Self::new(k * (n - k), 4, None, FieldTag::Rational)
    }
}

/// Nilpotency exponents `k_i` with `a_i^(k_i + 1) = 0` for a basis `a_i` of `H^r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NilpotencyData {
    pub exponents: Vec<u32>,
}

impl NilpotencyData {
    pub fn new(exponents: Vec<u32>) -> Result<Self, BoundsError> {
        if exponents.is_empty() || exponents.contains(&0) {
            return Err(BoundsError::Hypothesis("nilpotency exponents must be positive".into()));
        }
        Ok(NilpotencyData { exponents })
    }

    pub fn single(k1: u32) -> Result<Self, BoundsError> {
        Self::new(vec![k1])
    }

    pub fn total(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

pub fn upper_a1(p: &PoincareProfile) -> u32 {
    p.formal_dim / p.r
}

/// Exact cup-length `N / r` when a degree-`r` class has `r * h = N`.
pub fn check_a2(p: &PoincareProfile, h: u32) -> Option<u32> {
    (h >= 1 && p.r * h == p.formal_dim).then_some(h)
}

/// Lower bound from a nonzero product of `length` positive-degree classes
/// of total degree `degree`.
pub fn lower_a3(p: &PoincareProfile, length: u32, degree: u32) -> Result<u32, BoundsError> {
    if degree > p.formal_dim {
        return Err(BoundsError::ProductTooDeep { degree, formal_dim: p.formal_dim });
    }
    Ok(if degree < p.formal_dim { length + 1 } else { length })
}

pub fn upper_b1(p: &PoincareProfile, nd: &NilpotencyData) -> Result<u32, BoundsError> {
    let q = p.q.ok_or_else(|| BoundsError::Hypothesis("b1 needs the second degree q".into()))?;
    if q == p.r {
        return Err(BoundsError::Hypothesis(format!("b1 needs r < q, got r = q = {q}")));
    }
    let total = nd.total();
    if p.r * total >= p.formal_dim {
        return Err(BoundsError::Hypothesis(format!(
            "b1 needs r * sum(k_i) < N, got {} * {total} >= {}",
            p.r, p.formal_dim
        )));
    }
    let bound = total + (p.formal_dim - p.r * total) / q;
    // Strict improvement over N / r.
    if bound * p.r >= p.formal_dim {
        return Err(BoundsError::Postcondition(format!("b1 gave {bound}, not below N/r = {}/{}", p.formal_dim, p.r)));
    }
    Ok(bound)
}

pub fn grossman_upper(dim: u32, r: u32) -> u32 {
    1 + dim / r
}

pub fn cat_lower(cup: u32) -> u32 {
    cup + 1
}

fn check_k3_plus(n: u32, k: u32) -> Result<(), BoundsError> {
    check_hypothesis(n, k).map_err(|e| BoundsError::Hypothesis(e.to_string()))
}

/// Exponent `c` of the `w~2` power behind the closed-form mod-2 lower bound,
/// as a function of `m = n - k + 3`. `None` for `(6,3)`, whose bound comes
/// from `w2*w3` instead.
pub fn prop_b_certificate_exponent(n: u32, k: u32) -> Result<Option<u32>, BoundsError> {
    check_k3_plus(n, k)?;
    let m = n - k + 3;
    Ok(match m {
        6 => None,
        9..=12 => Some(4),
        m if m % 2 == 1 => Some(m.div_ceil(2)),
        m => Some(m / 2),
    })
}

/// Closed-form mod-2 cup-length lower bound with its tag.
pub fn prop_b_lower_tagged(n: u32, k: u32) -> Result<(u32, Method), BoundsError> {
    check_k3_plus(n, k)?;
    let m = n - k + 3;
    let value = match m {
        6 => 3,
        9..=12 => 5,
        m if m % 2 == 1 => (m + 3) / 2,
        m => (m + 2) / 2,
    };
    let method = match (k, m) {
        (3, 6) => Method::PropBa,
        (3, 9..=12) => Method::PropBc,
        (3, _) => Method::PropBb,
        _ => Method::PropBd,
    };
    Ok((value, method))
}

pub fn prop_b_lower(n: u32, k: u32) -> Result<u32, BoundsError> {
    Ok(prop_b_lower_tagged(n, k)?.0)
}

/// The raw closed-form table for the mod-2 upper bound, without the
/// half-dimension fallback. `(6,3)` returns 3.
pub fn prop_d_table(n: u32, k: u32) -> Result<u32, BoundsError> {
    check_k3_plus(n, k)?;
    if (n, k) == (6, 3) {
        return Ok(3);
    }
    let dec = decompose_n(n)?;
    let two_s = 1i64 << dec.s;
    let (n_, k_) = (i64::from(n), i64::from(k));
    let offset = dec.offset(n);
    let v = match k {
        3 => match dec.form {
            K3Form::PowerPlusOne => (4 * two_s - 7) / 3,
            K3Form::PowerPlusTwo => (4 * two_s - 3) / 3,
            K3Form::TwoPowersPlusOne { p } => (4 * two_s + 5 * (1i64 << p) - 8) / 3,
            K3Form::TwoPowersPlusTail { p, t } => (4 * two_s + 5 * (1i64 << p) + 3 * i64::from(t) - 7) / 3,
        },
        4 => match offset {
            1 => (5 * two_s - 13) / 3,
            2 => 2 * two_s - 4,
            3 => 2 * two_s - 3,
            _ => (2 * two_s + 4 * n_ - 17) / 3,
        },
        _ => match offset {
            1 => ((k_ + 1) * two_s + k_ - k_ * k_ - 1) / 3,
            _ => (2 * two_s + k_ * n_ - k_ * k_ - 1) / 3,
        },
    };
    u32::try_from(v).map_err(|_| BoundsError::Postcondition(format!("negative table value at ({n},{k})")))
}

/// Closed-form mod-2 upper bound. Falls back to `a1` when the closed-form
/// height of `w2` reaches half the formal dimension, where `b1` does not apply.
pub fn prop_d_upper_tagged(n: u32, k: u32) -> Result<(u32, Method), BoundsError> {
    check_k3_plus(n, k)?;
    if (n, k) == (6, 3) {
        return Ok((3, Method::PropDa));
    }
    let dim = k * (n - k);
    if 2 * lemma_f_height(n, k)? >= dim {
        return Ok((dim / 2, Method::A1));
    }
    Ok((prop_d_table(n, k)?, Method::PropDb))
}

pub fn prop_d_upper(n: u32, k: u32) -> Result<u32, BoundsError> {
    Ok(prop_d_upper_tagged(n, k)?.0)
}

/// `min(a1, b1 with the closed-form w2 height)` using `q = 3`: the engine
/// evaluation the closed-form upper table is meant to reproduce.
pub fn engine_upper_lemma_f(n: u32, k: u32, q: u32) -> Result<(u32, Method), BoundsError> {
    let profile = PoincareProfile::gf2(n, k, q)?;
    let a1 = upper_a1(&profile);
    match upper_b1(&profile, &NilpotencyData::single(lemma_f_height(n, k)?)?) {
        Ok(b) if b < a1 => Ok((b, Method::B1)),
        Ok(_) | Err(BoundsError::Hypothesis(_)) => Ok((a1, Method::A1)),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalBounds {
    pub lower: u32,
    pub lower_method: Method,
    pub upper: u32,
    pub exact: bool,
}

pub fn rational_bounds(n: u32, k: u32) -> Result<RationalBounds, BoundsError> {
    let profile = PoincareProfile::rational(n, k)?;
    let h = rational_p1_height(n, k)?;
    let (lower, lower_method) = match check_a2(&profile, h) {
        Some(exact) => (exact, Method::A2),
        None => (lower_a3(&profile, h, 4 * h)?, Method::A3),
    };
    let upper = upper_a1(&profile);
    Ok(RationalBounds { lower, lower_method, upper, exact: lower == upper })
}

/// One piece of evidence behind a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Certificate {
    Height { record: HeightRecord, closed_form: bool },
    Product { product: ProductCertificate, rendered: String },
}

/// Results of direct computation in the characteristic subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputedData {
    pub n: u32,
    pub k: u32,
    pub oriented_w2_height: u32,
    pub longest_product: ProductCertificate,
    /// First degree above 2 with a nonzero component.
    pub q: u32,
    pub char_dims: Vec<usize>,
}

impl ComputedData {
    pub fn compute(n: u32, k: u32, caps: SizeCaps) -> Result<Self, BoundsError> {
        let ctx = OrientedContext::with_caps(crate::grassmann::GrassmannPresentation::build_with_caps(n, k, caps)?, caps)?;
        Self::from_context(&ctx)
    }

    pub fn from_context(ctx: &OrientedContext) -> Result<Self, BoundsError> {
        let base = ctx.base();
        let q = ctx
            .next_nonzero_degree(2)?
            .ok_or_else(|| BoundsError::Profile("no nonzero degree above 2 below N".into()))?;
        Ok(ComputedData {
            n: base.n(),
            k: base.k(),
            oriented_w2_height: ctx.w2_height()?,
            longest_product: ctx.longest_monomial_product()?,
            q,
            char_dims: ctx.char_subalgebra_dims()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReportOptions {
    /// Replaces the `q` used for `b1` in mod-2 reports.
    pub q_override: Option<u32>,
}

/// Lower and upper bounds for one `(n, k, field)`, best and closed-form side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundReport {
    pub n: u32,
    pub k: u32,
    pub field: FieldTag,
    pub formal_dim: u32,
    pub lower: u32,
    pub lower_method: Method,
    pub upper: u32,
    pub upper_method: Method,
    pub closed_lower: u32,
    pub closed_lower_method: Method,
    pub closed_upper: u32,
    pub closed_upper_method: Method,
    pub cat_lower: u32,
    pub cat_upper: u32,
    pub closed_cat_lower: u32,
    pub exact: bool,
    pub gap: u32,
    pub q: Option<u32>,
    pub certificates: Vec<Certificate>,
}

pub const CSV_HEADER: &str = "n,k,field,lower,lower_method,upper,upper_method,cat_lower,cat_upper,exact";

impl BoundReport {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.field,
            self.lower,
            self.lower_method,
            self.upper,
            self.upper_method,
            self.cat_lower,
            self.cat_upper,
            self.exact
        )
    }
}

/// Builds the report; `computed` switches on the sharpened branch.
///
/// The category upper bound always uses `r = 2`: `G~_{n,k}` is simply
/// connected but not 3-connected, so the rational `r = 4` does not apply to it.
pub fn full_report(
    n: u32,
    k: u32,
    field: FieldTag,
    opts: &ReportOptions,
    computed: Option<&ComputedData>,
) -> Result<BoundReport, BoundsError> {
    check_k3_plus(n, k)?;
    if let Some(c) = computed {
        if (c.n, c.k) != (n, k) {
            return Err(BoundsError::Hypothesis(format!("computed data for ({},{}) used for ({n},{k})", c.n, c.k)));
        }
    }
    let report = match field {
        FieldTag::Gf2 => gf2_report(n, k, opts, computed)?,
        FieldTag::Rational => rational_report(n, k)?,
    };
    if report.lower > report.upper || report.closed_lower > report.closed_upper {
        return Err(BoundsError::Inconsistent { n, k, field, lower: report.lower, upper: report.upper });
    }
    Ok(report)
}

fn gf2_report(n: u32, k: u32, opts: &ReportOptions, computed: Option<&ComputedData>) -> Result<BoundReport, BoundsError> {
    let q = opts.q_override.or(computed.map(|c| c.q)).unwrap_or(3);
    let profile = PoincareProfile::gf2(n, k, q)?;
    let dim = profile.formal_dim;
    let (closed_lower, closed_lower_method) = prop_b_lower_tagged(n, k)?;
    let (closed_upper, closed_upper_method) = prop_d_upper_tagged(n, k)?;

    let mut certificates = vec![Certificate::Height { record: lemma_f_record(n, k)?, closed_form: true }];
    let (mut lower, mut lower_method) = (closed_lower, closed_lower_method);
    let (mut upper, mut upper_method) = (upper_a1(&profile), Method::A1);
    fn consider_upper(value: u32, method: Method, upper: &mut u32, upper_method: &mut Method) {
        if value < *upper {
            *upper = value;
            *upper_method = method;
        }
    }
    if let Ok(b) = upper_b1(&profile, &NilpotencyData::single(lemma_f_height(n, k)?)?) {
        consider_upper(b, Method::B1, &mut upper, &mut upper_method);
    }
    if closed_upper_method == Method::PropDa {
        consider_upper(closed_upper, closed_upper_method, &mut upper, &mut upper_method);
    }

    if let Some(c) = computed {
        let h = c.oriented_w2_height;
        certificates.push(Certificate::Height {
            record: HeightRecord {
                class_label: "w2".into(),
                context: HeightContext::OrientedCharacteristic,
                n,
                k,
                height: h,
                witness_nonzero: 2 * h,
                witness_zero: h + 1,
            },
            closed_form: false,
        });
        certificates.push(Certificate::Product { product: c.longest_product.clone(), rendered: c.longest_product.render() });
        if let Some(exact) = check_a2(&profile, h) {
            if exact > lower {
                (lower, lower_method) = (exact, Method::A2);
            }
        }
        let a3 = lower_a3(&profile, c.longest_product.length, c.longest_product.degree)?;
        if a3 > lower {
            (lower, lower_method) = (a3, Method::A3);
        }
        if h >= 1 {
            if let Ok(b) = upper_b1(&profile, &NilpotencyData::single(h)?) {
                consider_upper(b, Method::B1, &mut upper, &mut upper_method);
            }
        }
    }
    // Never report worse than the printed closed form.
    if closed_upper < upper {
        (upper, upper_method) = (closed_upper, closed_upper_method);
    }

    Ok(BoundReport {
        n,
        k,
        field: FieldTag::Gf2,
        formal_dim: dim,
        lower,
        lower_method,
        upper,
        upper_method,
        closed_lower,
        closed_lower_method,
        closed_upper,
        closed_upper_method,
        cat_lower: cat_lower(lower),
        cat_upper: grossman_upper(dim, 2),
        closed_cat_lower: cat_lower(closed_lower),
        exact: lower == upper,
        gap: upper.saturating_sub(lower),
        q: Some(q),
        certificates,
    })
}

fn rational_report(n: u32, k: u32) -> Result<BoundReport, BoundsError> {
    let rb = rational_bounds(n, k)?;
    let dim = k * (n - k);
    Ok(BoundReport {
        n,
        k,
        field: FieldTag::Rational,
        formal_dim: dim,
        lower: rb.lower,
        lower_method: Method::PropBe,
        upper: rb.upper,
        upper_method: Method::PropDc,
        closed_lower: rb.lower,
        closed_lower_method: Method::PropBe,
        closed_upper: rb.upper,
        closed_upper_method: Method::PropDc,
        cat_lower: cat_lower(rb.lower),
        cat_upper: grossman_upper(dim, 2),
        closed_cat_lower: cat_lower(rb.lower),
        exact: rb.exact,
        gap: rb.upper - rb.lower,
        q: None,
        certificates: vec![Certificate::Height { record: rational_p1_record(n, k)?, closed_form: true }],
    })
}
