//! Graded quotients `GF(2)[vars] / (generators)`, built degree by degree.
//!
//! Degree `d` of the quotient is presented as a quotient of
//! `⊕_v Q_{d - wt(v)}` (slot `v` stands for "`w_v` times a class of lower
//! degree") by two kinds of relations:
//!
//! * commutation: `w_u (w_v t) = w_v (w_u t)` for `u < v` and every basis
//!   class `t` of `Q_{d - wt(u) - wt(v)}`;
//! * generators of degree `d`, each split as `sum w_v * rest`.
//!
//! Because the variables form a regular sequence these relations generate
//! the whole kernel, so the result is exactly the degree-`d` quotient. Each
//! basis element is labelled by a monomial that represents it.

use std::sync::{Arc, RwLock};

use crate::gf2linalg::{echelonize_rows, BitVector};
use crate::gf2poly::{Gf2Polynomial, Monomial, PolyError, Vars};

use super::GrassmannError;

/// A homogeneous element of the quotient in normal-form coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Class {
    degree: u32,
    coords: BitVector,
}

impl Class {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &BitVector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

#[derive(Debug)]
struct Piece {
    basis: Vec<Monomial>,
    /// `mult[v][t]`: `w_v` times basis class `t` of degree `d - wt(v)`.
    mult: Vec<Vec<BitVector>>,
}

impl Piece {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The graded ring `GF(2)[vars] / (generators)`, truncated above `top_degree`.
///
/// Degrees are materialized on demand and kept; all components above
/// `top_degree` are taken to be zero.
#[derive(Debug)]
pub struct QuotientRing {
    vars: Vars,
    generators: Vec<Gf2Polynomial>,
    top_degree: u32,
    max_width: usize,
    tower: RwLock<Vec<Arc<Piece>>>,
}

impl QuotientRing {
    /// `generators` must be homogeneous of positive degree.
    pub fn new(
        vars: Vars,
        generators: Vec<Gf2Polynomial>,
        top_degree: u32,
        max_width: usize,
    ) -> Result<Self, GrassmannError> {
        for g in &generators {
            if g.vars() != vars {
                return Err(PolyError::VarMismatch(vars, g.vars()).into());
            }
            match g.homogeneous_degree() {
                Some(d) if d > 0 => {}
                Some(_) => return Err(GrassmannError::ConstantGenerator),
                None => return Err(PolyError::NotHomogeneous.into()),
            }
        }
        let one = Piece { basis: vec![Monomial::one(vars)], mult: vec![Vec::new(); vars.count()] };
        Ok(QuotientRing {
            vars,
            generators,
            top_degree,
            max_width,
            tower: RwLock::new(vec![Arc::new(one)]),
        })
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn generators(&self) -> &[Gf2Polynomial] {
        &self.generators
    }

    fn piece(&self, degree: u32) -> Result<Arc<Piece>, GrassmannError> {
        debug_assert!(degree <= self.top_degree);
        {
            let tower = self.tower.read().expect("tower lock");
            if let Some(p) = tower.get(degree as usize) {
                return Ok(Arc::clone(p));
            }
        }
        let mut tower = self.tower.write().expect("tower lock");
        while tower.len() <= degree as usize {
            let d = tower.len() as u32;
            let piece = self.build_piece(&tower, d)?;
            tower.push(Arc::new(piece));
        }
        Ok(Arc::clone(&tower[degree as usize]))
    }

    fn build_piece(&self, tower: &[Arc<Piece>], d: u32) -> Result<Piece, GrassmannError> {
        let vars = self.vars;
        let nv = vars.count();
        let below = |w: u32| -> Option<&Arc<Piece>> { (w <= d).then(|| &tower[(d - w) as usize]) };

        let mut offsets = vec![None; nv];
        let mut width = 0usize;
        for (v, off) in offsets.iter_mut().enumerate() {
            if let Some(p) = below(vars.weight(v)) {
                *off = Some(width);
                width += p.dim();
            }
        }
        if width > self.max_width {
            return Err(GrassmannError::SizeCap { degree: d, size: width, cap: self.max_width });
        }

        let mut rows = Vec::new();
        for u in 0..nv {
            for v in u + 1..nv {
                let (wu, wv) = (vars.weight(u), vars.weight(v));
                if wu + wv > d {
                    continue;
                }
                let (ou, ov) = (offsets[u].unwrap(), offsets[v].unwrap());
                let inner = &tower[(d - wu - wv) as usize];
                let via_u = &tower[(d - wu) as usize];
                let via_v = &tower[(d - wv) as usize];
                for t in 0..inner.dim() {
                    let mut row = BitVector::zeros(width);
                    for i in via_u.mult[v][t].ones() {
                        row.flip(ou + i);
                    }
                    for i in via_v.mult[u][t].ones() {
                        row.flip(ov + i);
                    }
                    rows.push(row);
                }
            }
        }
        for g in self.generators.iter().filter(|g| g.homogeneous_degree() == Some(d)) {
            let mut row = BitVector::zeros(width);
            for m in g.terms() {
                let (v, rest) = m.split_first().expect("positive degree");
                let nf = normal_form_in(tower, vars, &rest);
                let off = offsets[v].unwrap();
                for i in nf.ones() {
                    row.flip(off + i);
                }
            }
            rows.push(row);
        }

        let echelon = echelonize_rows(width, rows);
        let pivot_rows = echelon.pivot_rows();
        let mut basis_index = vec![None; width];
        let mut basis = Vec::new();
        for v in 0..nv {
            let Some(off) = offsets[v] else { continue };
            for (t, label) in tower[(d - vars.weight(v)) as usize].basis.iter().enumerate() {
                if pivot_rows[off + t].is_none() {
                    basis_index[off + t] = Some(basis.len());
                    basis.push(label.mul_var(v));
                }
            }
        }

        let dim = basis.len();
        let mut mult = vec![Vec::new(); nv];
        for v in 0..nv {
            let Some(off) = offsets[v] else { continue };
            let src = tower[(d - vars.weight(v)) as usize].dim();
            mult[v] = (0..src)
                .map(|t| {
                    let col = off + t;
                    let mut out = BitVector::zeros(dim);
                    match pivot_rows[col] {
                        None => out.set(basis_index[col].unwrap(), true),
                        Some(r) => {
                            for c in echelon.rows()[r].ones() {
                                if let Some(b) = basis_index[c] {
                                    out.set(b, true);
                                }
                            }
                        }
                    }
                    out
                })
                .collect();
        }
        Ok(Piece { basis, mult })
    }

    /// Dimension of the degree-`degree` component.
    pub fn dim(&self, degree: u32) -> Result<usize, GrassmannError> {
        if degree > self.top_degree {
            return Ok(0);
        }
        Ok(self.piece(degree)?.dim())
    }

    /// Dimensions of degrees `0..=top_degree`.
    pub fn dims(&self) -> Result<Vec<usize>, GrassmannError> {
        (0..=self.top_degree).map(|d| self.dim(d)).collect()
    }

    /// Monomials representing the basis of the degree-`degree` component.
    pub fn basis(&self, degree: u32) -> Result<Vec<Monomial>, GrassmannError> {
        if degree > self.top_degree {
            return Ok(Vec::new());
        }
        Ok(self.piece(degree)?.basis.clone())
    }

    /// Rank of the degree-`degree` part of the ideal.
    pub fn ideal_rank(&self, degree: u32) -> Result<usize, GrassmannError> {
        Ok(self.vars.monomial_count(degree) - self.dim(degree)?)
    }

    pub fn one(&self) -> Class {
        Class { degree: 0, coords: BitVector::unit(1, 0) }
    }

    fn zero_beyond(degree: u32) -> Class {
        Class { degree, coords: BitVector::zeros(0) }
    }

    /// `w_v * class`, where `v` is a variable index.
    pub fn mul_var(&self, class: &Class, v: usize) -> Result<Class, GrassmannError> {
        let degree = class.degree + self.vars.weight(v);
        if degree > self.top_degree {
            return Ok(Self::zero_beyond(degree));
        }
        let piece = self.piece(degree)?;
        let mut coords = BitVector::zeros(piece.dim());
        for t in class.coords.ones() {
            coords.xor_assign(&piece.mult[v][t]);
        }
        Ok(Class { degree, coords })
    }

    pub fn mul_monomial(&self, class: &Class, m: &Monomial) -> Result<Class, GrassmannError> {
        if m.vars() != self.vars {
            return Err(PolyError::VarMismatch(self.vars, m.vars()).into());
        }
        let mut out = class.clone();
        for (v, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                out = self.mul_var(&out, v)?;
            }
        }
        Ok(out)
    }

    /// `x * class` for a homogeneous polynomial `x`.
    pub fn mul_poly(&self, class: &Class, x: &Gf2Polynomial) -> Result<Class, GrassmannError> {
        let degree = x.homogeneous_degree().ok_or(PolyError::NotHomogeneous)?;
        let total = class.degree + degree;
        let mut acc = if total > self.top_degree {
            return Ok(Self::zero_beyond(total));
        } else {
            Class { degree: total, coords: BitVector::zeros(self.dim(total)?) }
        };
        for m in x.terms() {
            let part = self.mul_monomial(class, m)?;
            acc.coords.xor_assign(&part.coords);
        }
        Ok(acc)
    }

    /// Normal form of a homogeneous polynomial (zero polynomials need a declared degree).
    pub fn normal_form(&self, x: &Gf2Polynomial) -> Result<Class, GrassmannError> {
        if x.vars() != self.vars {
            return Err(PolyError::VarMismatch(self.vars, x.vars()).into());
        }
        self.mul_poly(&self.one(), x)
    }

    pub fn monomial_class(&self, m: &Monomial) -> Result<Class, GrassmannError> {
        self.mul_monomial(&self.one(), m)
    }

    /// Renders a class as the sum of its basis labels.
    pub fn to_polynomial(&self, class: &Class) -> Result<Gf2Polynomial, GrassmannError> {
        if class.coords.is_zero() {
            return Ok(Gf2Polynomial::zero_of_degree(self.vars, class.degree));
        }
        let basis = self.basis(class.degree)?;
        Ok(Gf2Polynomial::from_monomials(self.vars, class.coords.ones().map(|i| basis[i].clone()))?)
    }
}

fn normal_form_in(tower: &[Arc<Piece>], vars: Vars, m: &Monomial) -> BitVector {
    let mut coords = BitVector::unit(1, 0);
    let mut degree = 0u32;
    for (v, &e) in m.exps().iter().enumerate() {
        for _ in 0..e {
            degree += vars.weight(v);
            let piece = &tower[degree as usize];
            let mut next = BitVector::zeros(piece.dim());
            for t in coords.ones() {
                next.xor_assign(&piece.mult[v][t]);
            }
            coords = next;
        }
    }
    coords
}
