//! Weighted polynomials over GF(2).
//!
//! Variables are Stiefel-Whitney classes `w_i` carrying weight `i`. A ring is
//! described by [`Vars`]: either the full ring `w1..wk` or the ring `w2..wk`
//! obtained by setting `w1 = 0`. Coefficients are implicit: a polynomial is a
//! set of monomials, and adding a monomial twice removes it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on the degree of any explicitly constructed polynomial.
pub const DEFAULT_DEGREE_CAP: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable sets differ: {0} vs {1}")]
    VarMismatch(Vars, Vars),
    #[error("exponent vector has {got} entries, ring has {expected} variables")]
    ExponentLength { expected: usize, got: usize },
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

/// The variables `w_first, ..., w_{first+count-1}`; variable `w_i` has weight `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vars {
    first: u8,
    count: u8,
}

impl Vars {
    /// `w1, ..., wk`.
    pub fn full(k: u8) -> Self {
        assert!(k >= 1, "need at least one variable");
        Vars { first: 1, count: k }
    }

    /// `w2, ..., wk`, the ring with `w1` set to zero.
    pub fn without_w1(k: u8) -> Self {
        assert!(k >= 2, "need at least w2");
        Vars { first: 2, count: k - 1 }
    }

    pub fn count(&self) -> usize {
        self.count as usize
    }

    pub fn first_weight(&self) -> u32 {
        self.first as u32
    }

    pub fn weight(&self, index: usize) -> u32 {
        debug_assert!(index < self.count());
        self.first as u32 + index as u32
    }

    pub fn weights(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.count()).map(|i| self.weight(i))
    }

    /// Index of `w_weight` in this ring, if present.
    pub fn index_of(&self, weight: u32) -> Option<usize> {
        let first = self.first as u32;
        (weight >= first && weight < first + self.count as u32).then(|| (weight - first) as usize)
    }

    /// Number of monomials of weighted degree `degree`.
    pub fn monomial_count(&self, degree: u32) -> usize {
        let d = degree as usize;
        let mut ways = vec![0usize; d + 1];
        ways[0] = 1;
        for w in self.weights() {
            let w = w as usize;
            for t in w..=d {
                ways[t] += ways[t - w];
            }
        }
        ways[d]
    }

    /// All monomials of weighted degree `degree`, in ascending monomial order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.monomial_count(degree));
        let mut exps = vec![0u32; self.count()];
        self.fill_monomials(self.count(), degree, &mut exps, &mut out);
        out.sort();
        out
    }

    fn fill_monomials(&self, upto: usize, remaining: u32, exps: &mut [u32], out: &mut Vec<Monomial>) {
        if upto == 0 {
            if remaining == 0 {
                out.push(Monomial::from_parts(*self, exps.to_vec()));
            }
            return;
        }
        let idx = upto - 1;
        let w = self.weight(idx);
        for e in 0..=remaining / w {
            exps[idx] = e;
            self.fill_monomials(idx, remaining - e * w, exps, out);
        }
        exps[idx] = 0;
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}..w{}", self.first, self.first as u32 + self.count as u32 - 1)
    }
}

/// A monomial `w_first^e0 * w_{first+1}^e1 * ...` with its weighted degree.
///
/// Ordered by degree, then lexicographically on the exponent vector with the
/// last variable most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    vars: Vars,
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(vars: Vars, exps: Vec<u32>) -> Result<Self, PolyError> {
        if exps.len() != vars.count() {
            return Err(PolyError::ExponentLength { expected: vars.count(), got: exps.len() });
        }
        Ok(Self::from_parts(vars, exps))
    }

    fn from_parts(vars: Vars, exps: Vec<u32>) -> Self {
        let degree = exps.iter().enumerate().map(|(i, e)| vars.weight(i) * e).sum();
        Monomial { vars, exps, degree }
    }

    pub fn one(vars: Vars) -> Self {
        Monomial { vars, exps: vec![0; vars.count()], degree: 0 }
    }

    /// The single variable `w_weight`.
    pub fn var(vars: Vars, weight: u32) -> Option<Self> {
        let idx = vars.index_of(weight)?;
        let mut exps = vec![0; vars.count()];
        exps[idx] = 1;
        Some(Monomial { vars, exps, degree: weight })
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Exponent of `w_weight` (zero if the ring lacks that variable).
    pub fn exponent_of(&self, weight: u32) -> u32 {
        self.vars.index_of(weight).map_or(0, |i| self.exps[i])
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarMismatch(self.vars, other.vars));
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Ok(Monomial { vars: self.vars, exps, degree: self.degree + other.degree })
    }

    /// Multiply by the variable with the given index.
    pub fn mul_var(&self, index: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[index] += 1;
        Monomial { vars: self.vars, exps, degree: self.degree + self.vars.weight(index) }
    }

    /// Splits off the lowest-index variable: `self = w_v * rest`.
    pub fn split_first(&self) -> Option<(usize, Monomial)> {
        let idx = self.exps.iter().position(|&e| e > 0)?;
        let mut exps = self.exps.clone();
        exps[idx] -= 1;
        let degree = self.degree - self.vars.weight(idx);
        Some((idx, Monomial { vars: self.vars, exps, degree }))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "w{}", self.vars.weight(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial over GF(2): a set of monomials in canonical (ascending) order.
/// Equality and hashing ignore the declared degree of the zero polynomial.
#[derive(Debug, Clone)]
pub struct Gf2Polynomial {
    vars: Vars,
    terms: Vec<Monomial>,
    homogeneous_degree: Option<u32>,
}

impl PartialEq for Gf2Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for Gf2Polynomial {}

impl std::hash::Hash for Gf2Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
        self.terms.hash(state);
    }
}

impl Gf2Polynomial {
    pub fn zero(vars: Vars) -> Self {
        Gf2Polynomial { vars, terms: Vec::new(), homogeneous_degree: None }
    }

    /// The zero element of the degree-`degree` component.
    pub fn zero_of_degree(vars: Vars, degree: u32) -> Self {
        Gf2Polynomial { vars, terms: Vec::new(), homogeneous_degree: Some(degree) }
    }

    pub fn one(vars: Vars) -> Self {
        Self::from_monomial(Monomial::one(vars))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let degree = m.degree;
        Gf2Polynomial { vars: m.vars, terms: vec![m], homogeneous_degree: Some(degree) }
    }

    /// Builds a polynomial from monomials; repeated monomials cancel in pairs.
    pub fn from_monomials<I>(vars: Vars, monomials: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut set = BTreeSet::new();
        for m in monomials {
            if m.vars != vars {
                return Err(PolyError::VarMismatch(vars, m.vars));
            }
            if m.degree > DEFAULT_DEGREE_CAP {
                return Err(PolyError::DegreeCap { degree: m.degree, cap: DEFAULT_DEGREE_CAP });
            }
            if !set.remove(&m) {
                set.insert(m);
            }
        }
        Ok(Self::from_sorted(vars, set.into_iter().collect(), None))
    }

    fn from_sorted(vars: Vars, terms: Vec<Monomial>, declared: Option<u32>) -> Self {
        let homogeneous_degree = match (terms.first(), terms.last()) {
            (Some(lo), Some(hi)) if lo.degree == hi.degree => Some(lo.degree),
            (Some(_), Some(_)) => None,
            _ => declared,
        };
        Gf2Polynomial { vars, terms, homogeneous_degree }
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, or the declared degree of a zero component.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.homogeneous_degree
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.binary_search(m).is_ok()
    }

    pub fn add(&self, other: &Gf2Polynomial) -> Result<Gf2Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].cmp(&other.terms[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        let declared = match (self.homogeneous_degree, other.homogeneous_degree) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Ok(Self::from_sorted(self.vars, out, declared))
    }

    pub fn mul(&self, other: &Gf2Polynomial) -> Result<Gf2Polynomial, PolyError> {
        self.mul_capped(other, DEFAULT_DEGREE_CAP)
    }

    /// Product with mod-2 cancellation, rejecting results above `cap`.
    pub fn mul_capped(&self, other: &Gf2Polynomial, cap: u32) -> Result<Gf2Polynomial, PolyError> {
        self.check_vars(other)?;
        let top = self.terms.last().map_or(0, |m| m.degree) + other.terms.last().map_or(0, |m| m.degree);
        if top > cap {
            return Err(PolyError::DegreeCap { degree: top, cap });
        }
        let mut set = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mul(b)?;
                if !set.remove(&m) {
                    set.insert(m);
                }
            }
        }
        let declared = match (self.homogeneous_degree, other.homogeneous_degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(Self::from_sorted(self.vars, set.into_iter().collect(), declared))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Gf2Polynomial, PolyError> {
        if m.vars != self.vars {
            return Err(PolyError::VarMismatch(self.vars, m.vars));
        }
        let terms = self.terms.iter().map(|t| t.mul(m)).collect::<Result<Vec<_>, _>>()?;
        // multiplying by a monomial preserves the order
        let declared = self.homogeneous_degree.map(|d| d + m.degree);
        Ok(Self::from_sorted(self.vars, terms, declared))
    }

    /// Multiply by the variable with the given index.
    pub fn mul_var(&self, index: usize) -> Gf2Polynomial {
        let terms = self.terms.iter().map(|t| t.mul_var(index)).collect();
        let declared = self.homogeneous_degree.map(|d| d + self.vars.weight(index));
        Self::from_sorted(self.vars, terms, declared)
    }

    /// The homogeneous component of degree `degree`.
    pub fn component(&self, degree: u32) -> Gf2Polynomial {
        let terms = self.terms.iter().filter(|m| m.degree == degree).cloned().collect();
        Self::from_sorted(self.vars, terms, Some(degree))
    }

    /// Substitute `w1 = 0` and move into the ring `w2..wk`.
    pub fn drop_w1(&self) -> Gf2Polynomial {
        assert_eq!(self.vars.first, 1, "polynomial is already free of w1");
        let vars = Vars::without_w1(self.vars.count);
        let terms = self
            .terms
            .iter()
            .filter(|m| m.exps[0] == 0)
            .map(|m| Monomial { vars, exps: m.exps[1..].to_vec(), degree: m.degree })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Self::from_sorted(vars, terms, self.homogeneous_degree)
    }

    /// Parses the canonical syntax: `wI^E` factors joined by `*`, terms by `+`.
    pub fn parse(vars: Vars, text: &str) -> Result<Gf2Polynomial, PolyError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        if text == "0" {
            return Ok(Self::zero(vars));
        }
        let mut monomials = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(PolyError::Parse(format!("empty term in {text:?}")));
            }
            let mut exps = vec![0u32; vars.count()];
            if term != "1" {
                for factor in term.split('*') {
                    let (weight, exp) = parse_factor(factor.trim())?;
                    let idx = vars
                        .index_of(weight)
                        .ok_or_else(|| PolyError::Parse(format!("w{weight} is not a variable of {vars}")))?;
                    exps[idx] += exp;
                }
            }
            monomials.push(Monomial::from_parts(vars, exps));
        }
        Self::from_monomials(vars, monomials)
    }

    fn check_vars(&self, other: &Gf2Polynomial) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarMismatch(self.vars, other.vars));
        }
        Ok(())
    }
}

fn parse_factor(factor: &str) -> Result<(u32, u32), PolyError> {
    let bad = || PolyError::Parse(format!("bad factor {factor:?}"));
    let rest = factor.strip_prefix('w').ok_or_else(bad)?;
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i.trim(), e.trim().parse::<u32>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let idx = idx.parse::<u32>().map_err(|_| bad())?;
    Ok((idx, exp))
}

impl fmt::Display for Gf2Polynomial {
    /// Terms from largest to smallest, joined by ` + `; `0` for the empty sum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// `C(i, j) mod 2` by Lucas' theorem.
pub fn lucas_parity(i: u64, j: u64) -> bool {
    j & !i == 0
}

/// Homogeneous components, degrees `0..=max_deg`, of `1 / (1 + sum of all variables)`.
///
/// Uses `c_d = sum_j w_j c_{d - weight(w_j)}` with `c_0 = 1`.
pub fn inverse_series(vars: Vars, max_deg: u32) -> Vec<Gf2Polynomial> {
    let mut comps: Vec<Gf2Polynomial> = Vec::with_capacity(max_deg as usize + 1);
    comps.push(Gf2Polynomial::one(vars));
    for d in 1..=max_deg {
        let mut acc = Gf2Polynomial::zero_of_degree(vars, d);
        for idx in 0..vars.count() {
            let w = vars.weight(idx);
            if w <= d {
                let shifted = comps[(d - w) as usize].mul_var(idx);
                acc = acc.add(&shifted).expect("same ring");
            }
        }
        comps.push(acc);
    }
    comps
}

/// Inverse series in the full ring `w1..wk`.
pub fn inverse_series_components(k: u8, max_deg: u32) -> Vec<Gf2Polynomial> {
    inverse_series(Vars::full(k), max_deg)
}

/// `prod_{i < m} (1 + sum_v w_v^(2^i))`, truncated above `max_deg`.
///
/// Over GF(2) this is `(1 + sum_v w_v)^(2^m - 1)`, which agrees with the
/// inverse series below degree `2^m`.
pub fn frobenius_product_series(vars: Vars, m: u32, max_deg: u32) -> Gf2Polynomial {
    let mut acc = Gf2Polynomial::one(vars);
    for i in 0..m {
        let p = 1u32 << i;
        let mut factor = vec![Monomial::one(vars)];
        for idx in 0..vars.count() {
            if vars.weight(idx) * p <= max_deg {
                let mut exps = vec![0; vars.count()];
                exps[idx] = p;
                factor.push(Monomial::from_parts(vars, exps));
            }
        }
        let mut set = BTreeSet::new();
        for a in acc.terms() {
            for b in &factor {
                let t = a.mul(b).expect("same ring");
                if t.degree <= max_deg && !set.remove(&t) {
                    set.insert(t);
                }
            }
        }
        acc = Gf2Polynomial::from_sorted(vars, set.into_iter().collect(), None);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("generator formula needs n >= 6, got {0}")]
pub struct SmallN(pub u32);

/// `g_kappa = sum_{kappa/3 <= i <= kappa/2} C(i, 3i - kappa) w2^(3i - kappa) w3^(kappa - 2i)`.
pub fn closed_form_generator(kappa: u32) -> Gf2Polynomial {
    let vars = Vars::without_w1(3);
    let lo = kappa.div_ceil(3);
    let hi = kappa / 2;
    let mut terms = Vec::new();
    for i in lo..=hi {
        let j = 3 * i - kappa;
        if lucas_parity(i as u64, j as u64) {
            terms.push(Monomial::from_parts(vars, vec![j, kappa - 2 * i]));
        }
    }
    terms.sort();
    Gf2Polynomial::from_sorted(vars, terms, Some(kappa))
}

/// Generators `(g_{n-2}, g_{n-1}, g_n)` of the `w1 = 0` ideal for `k = 3`.
pub fn ideal_gens_k3(n: u32) -> Result<[Gf2Polynomial; 3], SmallN> {
    if n < 6 {
        return Err(SmallN(n));
    }
    Ok([closed_form_generator(n - 2), closed_form_generator(n - 1), closed_form_generator(n)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Vars {
        Vars::without_w1(3)
    }

    fn p(s: &str) -> Gf2Polynomial {
        Gf2Polynomial::parse(r3(), s).unwrap()
    }

    #[test]
    fn add_cancels_mod_two() {
        assert_eq!(p("w2^2 + w3").add(&p("w3")).unwrap(), p("w2^2"));
        let x = p("w2^2*w3 + w3^3 + 1");
        assert!(x.add(&x).unwrap().is_zero());
    }

    #[test]
    fn w2_fifth_power_from_generators() {
        let [g7, g8, _] = ideal_gens_k3(9).unwrap();
        let w2 = p("w2");
        let w3 = p("w3");
        let sum = w3.mul(&g7).unwrap().add(&w2.mul(&g8).unwrap()).unwrap();
        assert_eq!(sum, p("w2^5"));
    }

    #[test]
    fn mul_examples() {
        let prod = p("w2").mul(&p("w3")).unwrap();
        assert_eq!(prod, p("w2*w3"));
        assert_eq!(prod.homogeneous_degree(), Some(5));
        let x = p("1 + w2 + w3");
        assert_eq!(x.mul(&x).unwrap(), p("1 + w2^2 + w3^2"));
        assert_eq!(p("w3").mul(&p("w2^2*w3")).unwrap(), p("w2^2*w3^2"));
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Gf2Polynomial::one(Vars::full(3));
        let b = Gf2Polynomial::one(Vars::without_w1(3));
        assert!(matches!(a.add(&b), Err(PolyError::VarMismatch(..))));
        assert!(matches!(a.mul(&b), Err(PolyError::VarMismatch(..))));
    }

    #[test]
    fn degree_cap_is_enforced() {
        let big = Gf2Polynomial::parse(r3(), "w2^100").unwrap();
        assert!(matches!(big.mul(&big), Err(PolyError::DegreeCap { degree: 400, .. })));
        assert!(big.mul_capped(&big, 400).is_ok());
        assert!(Gf2Polynomial::parse(r3(), "w3^90").is_err());
    }

    #[test]
    fn lucas_small_cases() {
        assert!(!lucas_parity(2, 1));
        assert!(lucas_parity(3, 2));
        assert!(!lucas_parity(2, 3));
        for s in 0..5u32 {
            let top = (1u64 << (s + 3)) - 1;
            assert!((0..=top).all(|i| lucas_parity(top, i)));
        }
    }

    #[test]
    fn inverse_series_low_degrees() {
        let full = inverse_series_components(3, 2);
        assert_eq!(full[0].to_string(), "1");
        assert_eq!(full[1].to_string(), "w1");
        let red = inverse_series(r3(), 6);
        assert_eq!(red[4], p("w2^2"));
        assert!(red[5].is_zero());
        assert_eq!(red[5].homogeneous_degree(), Some(5));
        assert_eq!(red[6], p("w3^2 + w2^3"));
    }

    #[test]
    fn generator_golden_values() {
        let g6: Vec<String> = ideal_gens_k3(6).unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(g6, ["w2^2", "0", "w3^2 + w2^3"]);
        let g9: Vec<String> = ideal_gens_k3(9).unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(g9, ["w2^2*w3", "w2*w3^2 + w2^4", "w3^3"]);
        assert_eq!(ideal_gens_k3(5), Err(SmallN(5)));
        for n in 6..40 {
            for (g, kappa) in ideal_gens_k3(n).unwrap().iter().zip(n - 2..) {
                assert_eq!(g.homogeneous_degree(), Some(kappa));
            }
        }
    }

    #[test]
    fn rendering_and_parsing() {
        let x = p("w3^3 + w2*w3^2 + w2^4");
        assert_eq!(x.to_string(), "w3^3 + w2*w3^2 + w2^4");
        assert_eq!(p(&x.to_string()), x);
        assert_eq!(p("w2 * w2").to_string(), "w2^2");
        assert!(Gf2Polynomial::parse(r3(), "w1").is_err());
        assert!(Gf2Polynomial::parse(r3(), "w2 +").is_err());
        assert!(Gf2Polynomial::parse(r3(), "x2").is_err());
        assert_eq!(p("0").to_string(), "0");
    }

    #[test]
    fn monomial_order() {
        let vars = r3();
        let a = Monomial::new(vars, vec![3, 0]).unwrap();
        let b = Monomial::new(vars, vec![0, 2]).unwrap();
        let c = Monomial::new(vars, vec![1, 0]).unwrap();
        assert!(c < a && a < b);
        assert_eq!(vars.monomials_of_degree(6), vec![a, b]);
        assert_eq!(Vars::full(3).monomial_count(6), 7);
        assert!(Monomial::new(vars, vec![1]).is_err());
    }

    #[test]
    fn drop_w1_restricts() {
        let full = inverse_series_components(3, 6);
        assert_eq!(full[4].drop_w1(), p("w2^2"));
        assert_eq!(full[6].drop_w1(), p("w3^2 + w2^3"));
    }
}
