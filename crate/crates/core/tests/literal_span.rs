//! The quotient builder against the literal definition of the ideal: the
//! degree-`d` component of `I_{n,k}` is the span of all `m * g` with `g` a
//! generator and `m` a monomial.

use cuplen_core::gf2linalg::{echelonize_rows, BitVector, EchelonBasis};
use cuplen_core::gf2poly::{Gf2Polynomial, Monomial, Vars};
use cuplen_core::grassmann::{GrassmannPresentation, OrientedContext};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct LiteralIdeal {
    basis: Vec<Vec<Monomial>>,
    components: Vec<EchelonBasis>,
}

impl LiteralIdeal {
    fn new(vars: Vars, gens: &[Gf2Polynomial], top: u32) -> Self {
        let mut basis = Vec::new();
        let mut components = Vec::new();
        for d in 0..=top {
            let monos = vars.monomials_of_degree(d);
            let mut rows = Vec::new();
            for g in gens {
                let gd = g.homogeneous_degree().unwrap();
                if gd > d {
                    continue;
                }
                for m in vars.monomials_of_degree(d - gd) {
                    let mut row = BitVector::zeros(monos.len());
                    for t in g.terms() {
                        row.flip(monos.binary_search(&t.mul(&m).unwrap()).unwrap());
                    }
                    rows.push(row);
                }
            }
            components.push(echelonize_rows(monos.len(), rows));
            basis.push(monos);
        }
        LiteralIdeal { basis, components }
    }

    fn contains(&self, d: u32, x: &Gf2Polynomial) -> bool {
        let d = d as usize;
        let mut v = BitVector::zeros(self.basis[d].len());
        for t in x.terms() {
            v.flip(self.basis[d].binary_search(t).unwrap());
        }
        self.components[d].contains(&v).unwrap()
    }
}

const CASES: [(u32, u32); 7] = [(6, 3), (7, 3), (8, 3), (9, 3), (8, 4), (9, 4), (10, 5)];

#[test]
fn betti_numbers_match_literal_ranks() {
    for (n, k) in CASES {
        let p = GrassmannPresentation::build(n, k).unwrap();
        let top = p.formal_dim();
        let lit = LiteralIdeal::new(p.vars(), p.ideal_gens(), top + 1);
        let betti = p.betti().unwrap();
        for d in 0..=top {
            let expected = lit.basis[d as usize].len() - lit.components[d as usize].rank();
            assert_eq!(betti[d as usize], expected, "G({n},{k}) degree {d}");
            assert_eq!(p.ring().ideal_rank(d).unwrap(), lit.components[d as usize].rank());
        }
        let above = (top + 1) as usize;
        assert_eq!(lit.components[above].rank(), lit.basis[above].len());
    }
}

#[test]
fn membership_matches_literal_span() {
    let mut rng = StdRng::seed_from_u64(7);
    for (n, k) in CASES {
        let p = GrassmannPresentation::build(n, k).unwrap();
        let vars = p.vars();
        let top = p.formal_dim();
        let lit = LiteralIdeal::new(vars, p.ideal_gens(), top);

        let mut w1_gens = p.ideal_gens().to_vec();
        w1_gens.push(p.parse("w1").unwrap());
        let lit_oriented = LiteralIdeal::new(vars, &w1_gens, top);
        let oriented = OrientedContext::build(n, k).unwrap();

        for d in 1..=top {
            let monos = vars.monomials_of_degree(d);
            for m in &monos {
                let x = Gf2Polynomial::from_monomial(m.clone());
                assert_eq!(p.is_zero_in_quotient(&x).unwrap(), lit.contains(d, &x), "G({n},{k}) {m}");
                assert_eq!(oriented.is_zero(&x).unwrap(), lit_oriented.contains(d, &x), "oriented ({n},{k}) {m}");
            }
            for _ in 0..20 {
                let picks: Vec<Monomial> = monos.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
                let x = Gf2Polynomial::from_monomials(vars, picks).unwrap();
                assert_eq!(p.is_zero_in_quotient(&x).unwrap(), lit.contains(d, &x));
            }
        }
    }
}
