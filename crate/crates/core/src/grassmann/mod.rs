//! Mod-2 cohomology of real Grassmannians `G_{n,k}` as the quotient
//! `GF(2)[w1..wk] / I_{n,k}`, and of the characteristic subalgebra of the
//! oriented Grassmannian as the quotient by `I_{n,k} + (w1)`.
//!
//! `I_{n,k}` is generated by the components of `1 / (1 + w1 + ... + wk)` in
//! degrees `n-k+1..=n`. A monomial in `w2..wk` is nonzero in the oriented
//! Grassmannian exactly when it survives modulo `I_{n,k} + (w1)`.

mod quotient;
mod reduced_k3;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2linalg::BitVector;
use crate::gf2poly::{inverse_series, Gf2Polynomial, Monomial, PolyError, Vars};

pub use quotient::{Class, QuotientRing};
pub use reduced_k3::ReducedK3Ideal;

pub const DEFAULT_MAX_FORMAL_DIM: u32 = 400;
pub const DEFAULT_MAX_BASIS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("formal dimension {dim} exceeds the cap {cap}")]
    FormalDimCap { dim: u32, cap: u32 },
    #[error("degree {degree} needs a {size}-column elimination, cap is {cap}")]
    SizeCap { degree: u32, size: usize, cap: usize },
    #[error("generators must have positive degree")]
    ConstantGenerator,
    #[error("monomial has a nonzero w1 exponent")]
    W1Exponent,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Resource bounds for building presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeCaps {
    pub max_formal_dim: u32,
    pub max_basis: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps { max_formal_dim: DEFAULT_MAX_FORMAL_DIM, max_basis: DEFAULT_MAX_BASIS }
    }
}

/// Checks `3 <= k` and `2k <= n`.
pub fn check_hypothesis(n: u32, k: u32) -> Result<(), GrassmannError> {
    if k < 3 || 2 * k > n {
        return Err(GrassmannError::Hypothesis(format!("need n >= 2k >= 6, got (n, k) = ({n}, {k})")));
    }
    Ok(())
}

/// Borel presentation of `H*(G_{n,k}; Z2)`.
#[derive(Debug)]
pub struct GrassmannPresentation {
    n: u32,
    k: u32,
    formal_dim: u32,
    ideal_gens: Vec<Gf2Polynomial>,
    ring: QuotientRing,
}

pub fn build_presentation(n: u32, k: u32) -> Result<GrassmannPresentation, GrassmannError> {
    GrassmannPresentation::build(n, k)
}

impl GrassmannPresentation {
    pub fn build(n: u32, k: u32) -> Result<Self, GrassmannError> {
        Self::build_with_caps(n, k, SizeCaps::default())
    }

    pub fn build_with_caps(n: u32, k: u32, caps: SizeCaps) -> Result<Self, GrassmannError> {
        check_hypothesis(n, k)?;
        let formal_dim = k * (n - k);
        if formal_dim > caps.max_formal_dim {
            return Err(GrassmannError::FormalDimCap { dim: formal_dim, cap: caps.max_formal_dim });
        }
        let vars = Vars::full(k as u8);
        let series = inverse_series(vars, n);
        let ideal_gens: Vec<_> = series[(n - k + 1) as usize..].to_vec();
        let ring = QuotientRing::new(vars, ideal_gens.clone(), formal_dim, caps.max_basis)?;
        Ok(GrassmannPresentation { n, k, formal_dim, ideal_gens, ring })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `k (n - k)`.
    pub fn formal_dim(&self) -> u32 {
        self.formal_dim
    }

    pub fn vars(&self) -> Vars {
        self.ring.vars()
    }

    /// Generators of `I_{n,k}` in degrees `n-k+1..=n`.
    pub fn ideal_gens(&self) -> &[Gf2Polynomial] {
        &self.ideal_gens
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// Mod-2 Betti numbers `b_0..=b_N`.
    pub fn betti(&self) -> Result<Vec<usize>, GrassmannError> {
        self.ring.dims()
    }

    /// Is the homogeneous polynomial `x` in `I_{n,k}`? Degrees above `N` count as zero.
    pub fn is_zero_in_quotient(&self, x: &Gf2Polynomial) -> Result<bool, GrassmannError> {
        if x.is_zero() {
            return Ok(true);
        }
        Ok(self.ring.normal_form(x)?.is_zero())
    }

    /// Parses a class in the canonical syntax over `w1..wk`.
    pub fn parse(&self, text: &str) -> Result<Gf2Polynomial, GrassmannError> {
        Ok(Gf2Polynomial::parse(self.vars(), text)?)
    }
}

/// The characteristic subalgebra of `H*(G~_{n,k}; Z2)`, modelled as
/// `GF(2)[w1..wk] / (I_{n,k} + (w1))`.
#[derive(Debug)]
pub struct OrientedContext {
    base: GrassmannPresentation,
    ring: QuotientRing,
}

/// One longest nonzero monomial product found in the oriented context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductCertificate {
    /// Exponents of `w2..wk`.
    pub exponents: Vec<u32>,
    pub length: u32,
    pub degree: u32,
}

impl ProductCertificate {
    /// `length`, plus one when the product sits below the top degree.
    pub fn score(&self, formal_dim: u32) -> u32 {
        self.length + u32::from(self.degree < formal_dim)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .zip(2..)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, w)| if e == 1 { format!("w{w}") } else { format!("w{w}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl OrientedContext {
    pub fn new(base: GrassmannPresentation) -> Result<Self, GrassmannError> {
        Self::with_caps(base, SizeCaps::default())
    }

    pub fn with_caps(base: GrassmannPresentation, caps: SizeCaps) -> Result<Self, GrassmannError> {
        let vars = base.vars();
        let mut gens = base.ideal_gens.clone();
        gens.push(Gf2Polynomial::from_monomial(Monomial::var(vars, 1).expect("w1")));
        let ring = QuotientRing::new(vars, gens, base.formal_dim, caps.max_basis)?;
        Ok(OrientedContext { base, ring })
    }

    pub fn build(n: u32, k: u32) -> Result<Self, GrassmannError> {
        Self::new(GrassmannPresentation::build(n, k)?)
    }

    pub fn base(&self) -> &GrassmannPresentation {
        &self.base
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn formal_dim(&self) -> u32 {
        self.base.formal_dim
    }

    /// Does the monomial in `w2..wk` survive modulo `I_{n,k} + (w1)`?
    pub fn oriented_nonzero(&self, m: &Monomial) -> Result<bool, GrassmannError> {
        if m.vars() != self.base.vars() {
            return Err(PolyError::VarMismatch(self.base.vars(), m.vars()).into());
        }
        if m.exponent_of(1) > 0 {
            return Err(GrassmannError::W1Exponent);
        }
        Ok(!self.ring.monomial_class(m)?.is_zero())
    }

    /// Nonzero test for an arbitrary homogeneous polynomial.
    pub fn is_zero(&self, x: &Gf2Polynomial) -> Result<bool, GrassmannError> {
        if x.is_zero() {
            return Ok(true);
        }
        Ok(self.ring.normal_form(x)?.is_zero())
    }

    /// Per-degree dimensions of the characteristic subalgebra, degrees `0..=N`.
    pub fn char_subalgebra_dims(&self) -> Result<Vec<usize>, GrassmannError> {
        self.ring.dims()
    }

    /// First degree above `after` with a nonzero component, if any below `N`.
    pub fn next_nonzero_degree(&self, after: u32) -> Result<Option<u32>, GrassmannError> {
        for d in after + 1..self.formal_dim() {
            if self.ring.dim(d)? > 0 {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    /// Longest nonzero product of classes `w2..wk`, scored as
    /// `length + [degree < N]`.
    ///
    /// Partial products are grouped by degree and normal form; within a group
    /// only the longest (then lexicographically smallest) survives, since all
    /// later extensions depend only on the class. Ties in the final score go to
    /// the lexicographically smallest exponent vector.
    pub fn longest_monomial_product(&self) -> Result<ProductCertificate, GrassmannError> {
        let vars = self.base.vars();
        let top = self.formal_dim();
        let nv = vars.count();
        type Layer = HashMap<BitVector, (u32, Vec<u32>)>;
        let mut layers: Vec<Layer> = (0..=top).map(|_| HashMap::new()).collect();
        let mut classes: Vec<HashMap<BitVector, Class>> = (0..=top).map(|_| HashMap::new()).collect();
        let one = self.ring.one();
        layers[0].insert(one.coords().clone(), (0, vec![0; nv]));
        classes[0].insert(one.coords().clone(), one);

        let mut best = ProductCertificate { exponents: vec![0; nv - 1], length: 0, degree: 0 };
        let mut best_key = (best.score(top), best.exponents.clone());
        for d in 0..=top {
            let mut layer: Vec<_> = std::mem::take(&mut layers[d as usize]).into_iter().collect();
            layer.sort_by(|a, b| a.1.cmp(&b.1));
            for (key, (len, exps)) in layer {
                let cert = ProductCertificate { exponents: exps[1..].to_vec(), length: len, degree: d };
                let score = cert.score(top);
                if score > best_key.0 || (score == best_key.0 && cert.exponents < best_key.1) {
                    best_key = (score, cert.exponents.clone());
                    best = cert;
                }
                let class = classes[d as usize].remove(&key).expect("class recorded");
                for v in 1..nv {
                    let nd = d + vars.weight(v);
                    if nd > top {
                        continue;
                    }
                    let next = self.ring.mul_var(&class, v)?;
                    if next.is_zero() {
                        continue;
                    }
                    let mut nexps = exps.clone();
                    nexps[v] += 1;
                    let cand = (len + 1, nexps);
                    let slot = layers[nd as usize].entry(next.coords().clone());
                    match slot {
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(cand);
                            classes[nd as usize].insert(next.coords().clone(), next);
                        }
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            let cur = e.get();
                            if cand.0 > cur.0 || (cand.0 == cur.0 && cand.1 < cur.1) {
                                e.insert(cand);
                            }
                        }
                    }
                }
            }
        }
        Ok(best)
    }

    /// Largest `c` with `w2^c` nonzero.
    pub fn w2_height(&self) -> Result<u32, GrassmannError> {
        let mut class = self.ring.one();
        let mut c = 0;
        loop {
            class = self.ring.mul_var(&class, 1)?;
            if class.is_zero() {
                return Ok(c);
            }
            c += 1;
        }
    }
}

/// Is the homogeneous `x` in `J_{n,3}`? Builds a fresh ideal; reuse
/// [`ReducedK3Ideal`] for repeated queries.
pub fn k3_reduced_membership(n: u32, x: &Gf2Polynomial) -> Result<bool, GrassmannError> {
    ReducedK3Ideal::new(n)?.contains(x)
}

/// Largest even `a <= 3(n - 3)` with `w2^(a/2)` outside `J_{n,3}`.
pub fn available_target_dim(n: u32) -> Result<u32, GrassmannError> {
    let ideal = ReducedK3Ideal::new(n)?;
    available_target_dim_in(&ideal)
}

pub fn available_target_dim_in(ideal: &ReducedK3Ideal) -> Result<u32, GrassmannError> {
    let top = 3 * (ideal.n() - 3);
    let vars = ideal.vars();
    let mut best = 0;
    for c in 1..=top / 2 {
        let m = Monomial::new(vars, vec![c, 0])?;
        if ideal.contains_monomial(&m)? {
            break;
        }
        best = 2 * c;
    }
    Ok(best)
}

/// `w2^c` in the full ring `w1..wk`.
pub fn w2_power(k: u32, c: u32) -> Monomial {
    let vars = Vars::full(k as u8);
    let mut exps = vec![0; vars.count()];
    exps[1] = c;
    Monomial::new(vars, exps).expect("length matches")
}
