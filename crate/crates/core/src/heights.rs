//! Heights of cohomology classes: the largest `c` with `x^c != 0`.
//!
//! Direct heights are computed by repeated multiplication in a quotient ring.
//! Known closed forms for `ht(w2)` of the tautological bundle over `G_{n,k}`
//! and for the rational first Pontryagin class are evaluated separately so
//! the two can be compared.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2poly::{Gf2Polynomial, PolyError};
use crate::grassmann::{GrassmannError, GrassmannPresentation, OrientedContext, QuotientRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("class {0} is zero in the quotient; its height is undefined")]
    ZeroClass(String),
    #[error("class {0} has degree zero")]
    DegreeZero(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
}

impl From<PolyError> for HeightError {
    fn from(e: PolyError) -> Self {
        HeightError::Grassmann(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeightContext {
    Unoriented,
    OrientedCharacteristic,
    RationalClosedForm,
}

impl std::fmt::Display for HeightContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HeightContext::Unoriented => "unoriented",
            HeightContext::OrientedCharacteristic => "oriented-characteristic",
            HeightContext::RationalClosedForm => "rational-closed-form",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeightRecord {
    pub class_label: String,
    pub context: HeightContext,
    pub n: u32,
    pub k: u32,
    pub height: u32,
    /// Degree of `x^height`, the last nonzero power.
    pub witness_nonzero: u32,
    /// The exponent of the first vanishing power, `height + 1`.
    pub witness_zero: u32,
}

/// Where a direct height is computed.
#[derive(Debug, Clone, Copy)]
pub enum HeightTarget<'a> {
    Unoriented(&'a GrassmannPresentation),
    Oriented(&'a OrientedContext),
}

impl<'a> HeightTarget<'a> {
    fn ring(&self) -> &'a QuotientRing {
        match self {
            HeightTarget::Unoriented(p) => p.ring(),
            HeightTarget::Oriented(c) => c.ring(),
        }
    }

    fn presentation(&self) -> &'a GrassmannPresentation {
        match self {
            HeightTarget::Unoriented(p) => p,
            HeightTarget::Oriented(c) => c.base(),
        }
    }

    fn context(&self) -> HeightContext {
        match self {
            HeightTarget::Unoriented(_) => HeightContext::Unoriented,
            HeightTarget::Oriented(_) => HeightContext::OrientedCharacteristic,
        }
    }
}

/// Height of the homogeneous class `x`, by multiplying out powers in normal form.
pub fn height_direct(target: HeightTarget<'_>, x: &Gf2Polynomial) -> Result<HeightRecord, HeightError> {
    let label = x.to_string();
    let ring = target.ring();
    if x.is_zero() {
        return Err(HeightError::ZeroClass(label));
    }
    let degree = x.homogeneous_degree().ok_or(PolyError::NotHomogeneous)?;
    if degree == 0 {
        return Err(HeightError::DegreeZero(label));
    }
    let mut power = ring.normal_form(x)?;
    if power.is_zero() {
        return Err(HeightError::ZeroClass(label));
    }
    let mut height = 1;
    loop {
        let next = ring.mul_poly(&power, x)?;
        if next.is_zero() {
            break;
        }
        power = next;
        height += 1;
    }
    let p = target.presentation();
    Ok(HeightRecord {
        class_label: label,
        context: target.context(),
        n: p.n(),
        k: p.k(),
        height,
        witness_nonzero: height * degree,
        witness_zero: height + 1,
    })
}

/// `ht(w2)` in the given context.
pub fn w2_height(target: HeightTarget<'_>) -> Result<HeightRecord, HeightError> {
    let vars = target.presentation().vars();
    let w2 = Gf2Polynomial::parse(vars, "w2")?;
    height_direct(target, &w2)
}

/// How `n` sits between powers of two: `2^s < n <= 2^(s+1)`, and the finer
/// split `n = 2^s + 2^p + t + 1` used for `k = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NDecomposition {
    pub s: u32,
    pub form: K3Form,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "form")]
pub enum K3Form {
    /// `n = 2^s + 1`
    PowerPlusOne,
    /// `n = 2^s + 2`
    PowerPlusTwo,
    /// `n = 2^s + 2^p + 1`, `s > p >= 1`
    TwoPowersPlusOne { p: u32 },
    /// `n = 2^s + 2^p + t + 1`, `s > p >= 1`, `1 <= t <= 2^p - 1`
    TwoPowersPlusTail { p: u32, t: u32 },
}

impl NDecomposition {
    /// `n - 2^s`, in `1..=2^s`.
    pub fn offset(&self, n: u32) -> u32 {
        n - (1 << self.s)
    }
}

pub fn decompose_n(n: u32) -> Result<NDecomposition, HeightError> {
    if n < 6 {
        return Err(HeightError::Hypothesis(format!("need n >= 6, got {n}")));
    }
    let s = 31 - (n - 1).leading_zeros();
    let m = n - (1 << s) - 1;
    let form = match m {
        0 => K3Form::PowerPlusOne,
        1 => K3Form::PowerPlusTwo,
        _ => {
            let p = 31 - m.leading_zeros();
            match m - (1 << p) {
                0 => K3Form::TwoPowersPlusOne { p },
                t => K3Form::TwoPowersPlusTail { p, t },
            }
        }
    };
    Ok(NDecomposition { s, form })
}

fn check_nk(n: u32, k: u32) -> Result<(), HeightError> {
    if k < 3 || n < 2 * k {
        return Err(HeightError::Hypothesis(format!("need n >= 2k >= 6, got ({n}, {k})")));
    }
    Ok(())
}

/// Closed-form `ht(w2)` over `G_{n,k}` for `k = 3`, `k = 4` and `k >= 5`.
pub fn lemma_f_height(n: u32, k: u32) -> Result<u32, HeightError> {
    check_nk(n, k)?;
    let dec = decompose_n(n)?;
    let two_s = 1u32 << dec.s;
    let offset = dec.offset(n);
    Ok(match k {
        3 => match dec.form {
            K3Form::PowerPlusOne => two_s - 1,
            K3Form::PowerPlusTwo => two_s,
            K3Form::TwoPowersPlusOne { p } => two_s + (2 << p) - 2,
            K3Form::TwoPowersPlusTail { p, .. } => two_s + (2 << p) - 1,
        },
        4 => match offset {
            1 => two_s - 1,
            2 | 3 => 2 * two_s - 4,
            _ => 2 * two_s - 1,
        },
        _ => match offset {
            1 => two_s - 1,
            _ => 2 * two_s - 1,
        },
    })
}

pub fn lemma_f_record(n: u32, k: u32) -> Result<HeightRecord, HeightError> {
    let height = lemma_f_height(n, k)?;
    Ok(HeightRecord {
        class_label: "w2".into(),
        context: HeightContext::Unoriented,
        n,
        k,
        height,
        witness_nonzero: 2 * height,
        witness_zero: height + 1,
    })
}

/// `ht(p1)` over the rationals: `floor(k/2) * floor((n-k)/2)`.
pub fn rational_p1_height(n: u32, k: u32) -> Result<u32, HeightError> {
    if k < 4 || n < 2 * k {
        return Err(HeightError::Hypothesis(format!("rational bounds need k >= 4 and n >= 2k, got ({n}, {k})")));
    }
    Ok((k / 2) * ((n - k) / 2))
}

pub fn rational_p1_record(n: u32, k: u32) -> Result<HeightRecord, HeightError> {
    let height = rational_p1_height(n, k)?;
    Ok(HeightRecord {
        class_label: "p1".into(),
        context: HeightContext::RationalClosedForm,
        n,
        k,
        height,
        witness_nonzero: 4 * height,
        witness_zero: height + 1,
    })
}
