//! The ideal `J_{n,3} = (g_{n-2}, g_{n-1}, g_n)` of `GF(2)[w2, w3]`, with the
//! generators taken from the closed-form binomial formula.
//!
//! Membership is decided by spanning each degree component explicitly: the
//! rows are all products `m * g` over monomials `m`, echelonized over the
//! monomial basis of that degree. This is deliberately a different route
//! from [`super::quotient::QuotientRing`].

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::gf2linalg::{echelonize_rows, BitVector, EchelonBasis};
use crate::gf2poly::{ideal_gens_k3, Gf2Polynomial, Monomial, PolyError, Vars};

use super::GrassmannError;

#[derive(Debug)]
struct Component {
    basis: Vec<Monomial>,
    echelon: EchelonBasis,
}

impl Component {
    fn vector(&self, x: &Gf2Polynomial) -> BitVector {
        let mut v = BitVector::zeros(self.basis.len());
        for m in x.terms() {
            let i = self.basis.binary_search(m).expect("monomial of this degree");
            v.flip(i);
        }
        v
    }
}

#[derive(Debug)]
pub struct ReducedK3Ideal {
    n: u32,
    generators: [Gf2Polynomial; 3],
    components: RwLock<HashMap<u32, Arc<Component>>>,
}

impl ReducedK3Ideal {
    pub fn new(n: u32) -> Result<Self, GrassmannError> {
        let generators = ideal_gens_k3(n).map_err(|e| GrassmannError::Hypothesis(e.to_string()))?;
        Ok(ReducedK3Ideal { n, generators, components: RwLock::new(HashMap::new()) })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[Gf2Polynomial; 3] {
        &self.generators
    }

    pub fn vars(&self) -> Vars {
        Vars::without_w1(3)
    }

    fn component(&self, degree: u32) -> Arc<Component> {
        if let Some(c) = self.components.read().expect("lock").get(&degree) {
            return Arc::clone(c);
        }
        let vars = self.vars();
        let basis = vars.monomials_of_degree(degree);
        let width = basis.len();
        let mut rows = Vec::new();
        for g in &self.generators {
            let gd = g.homogeneous_degree().expect("declared degree");
            if g.is_zero() || gd > degree {
                continue;
            }
            for m in vars.monomials_of_degree(degree - gd) {
                let mut row = BitVector::zeros(width);
                for t in g.terms() {
                    let prod = t.mul(&m).expect("same ring");
                    row.flip(basis.binary_search(&prod).expect("degree matches"));
                }
                rows.push(row);
            }
        }
        let echelon = echelonize_rows(width, rows);
        let comp = Arc::new(Component { basis, echelon });
        self.components.write().expect("lock").entry(degree).or_insert(comp).clone()
    }

    /// Echelon basis of the degree-`degree` component of the ideal.
    pub fn echelon(&self, degree: u32) -> EchelonBasis {
        self.component(degree).echelon.clone()
    }

    /// Is the homogeneous polynomial `x` in `J_{n,3}`?
    pub fn contains(&self, x: &Gf2Polynomial) -> Result<bool, GrassmannError> {
        if x.vars() != self.vars() {
            return Err(PolyError::VarMismatch(self.vars(), x.vars()).into());
        }
        if x.is_zero() {
            return Ok(true);
        }
        let degree = x.homogeneous_degree().ok_or(PolyError::NotHomogeneous)?;
        let comp = self.component(degree);
        Ok(comp.echelon.contains(&comp.vector(x)).expect("width matches"))
    }

    pub fn contains_monomial(&self, m: &Monomial) -> Result<bool, GrassmannError> {
        self.contains(&Gf2Polynomial::from_monomial(m.clone()))
    }
}
