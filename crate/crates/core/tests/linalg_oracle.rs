//! The packed eliminator against brute force: enumerate spans outright, and
//! rank by a textbook elimination over `Vec<bool>` rows.

use cuplen_core::gf2linalg::{echelonize, echelonize_rows, rank, BitMatrix, BitVector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::HashSet;

fn random_vector(rng: &mut StdRng, width: usize) -> Vec<bool> {
    (0..width).map(|_| rng.gen()).collect()
}

fn span(generators: &[Vec<bool>], width: usize) -> HashSet<Vec<bool>> {
    let mut out = HashSet::new();
    for mask in 0u32..1 << generators.len() {
        let mut v = vec![false; width];
        for (i, g) in generators.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, b) in v.iter_mut().zip(g) {
                    *a ^= *b;
                }
            }
        }
        out.insert(v);
    }
    out
}

fn naive_rank(mut rows: Vec<Vec<bool>>, width: usize) -> usize {
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col]) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= *b;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn membership_agrees_with_span_enumeration() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    for _ in 0..1000 {
        let width = rng.gen_range(1..=90);
        let count = rng.gen_range(0..=12);
        let mut gens: Vec<Vec<bool>> = (0..count).map(|_| random_vector(&mut rng, width)).collect();
        // Force dependencies sometimes.
        if count >= 3 && rng.gen_bool(0.5) {
            let mixed: Vec<bool> = gens[0].iter().zip(&gens[1]).map(|(a, b)| a ^ b).collect();
            gens[2] = mixed;
        }
        let spanned = span(&gens, width);
        let basis = echelonize_rows(width, gens.iter().map(|g| BitVector::from_bools(g)).collect());
        assert_eq!(1usize << basis.rank(), spanned.len());
        for member in spanned.iter().take(8) {
            assert!(basis.contains(&BitVector::from_bools(member)).unwrap());
        }
        for _ in 0..8 {
            let probe = random_vector(&mut rng, width);
            assert_eq!(basis.contains(&BitVector::from_bools(&probe)).unwrap(), spanned.contains(&probe));
        }
    }
}

#[test]
fn rank_agrees_with_naive_elimination() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for case in 0..100 {
        let width = 200;
        let mut rows: Vec<Vec<bool>> = (0..200).map(|_| random_vector(&mut rng, width)).collect();
        // Push some matrices well below full rank.
        if case % 2 == 1 {
            let keep = rng.gen_range(1..200);
            for i in keep..200 {
                let a = rng.gen_range(0..keep);
                let b = rng.gen_range(0..keep);
                rows[i] = rows[a].iter().zip(&rows[b]).map(|(x, y)| x ^ y).collect();
            }
        }
        let m = BitMatrix::from_rows(width, rows.iter().map(|r| BitVector::from_bools(r)).collect()).unwrap();
        let expected = naive_rank(rows, width);
        assert_eq!(rank(&m), expected, "case {case}");
        assert_eq!(echelonize(&m).rank(), expected);
    }
}
