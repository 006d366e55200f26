//! Brute-force chain enumeration straight from the cover relation, used as
//! an independent oracle for the matrix-product formulas.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use level_eulerian::matlin::BinMatrix;
use level_eulerian::ncalg::{Alphabet, NcPoly};
use num_bigint::BigInt;

/// Every saturated chain `(i,0) < (v_1,1) < ... < (j,p)`, as its vertex list.
pub fn maximal_chains(m: &BinMatrix, i: usize, j: usize, p: u32) -> Vec<Vec<usize>> {
    fn walk(m: &BinMatrix, path: &mut Vec<usize>, left: u32, j: usize, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if left == 0 {
            if last == j {
                out.push(path.clone());
            }
            return;
        }
        for next in 0..m.cols() {
            if m.is_edge(last, next) {
                path.push(next);
                walk(m, path, left - 1, j, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(m, &mut vec![i], p, j, &mut out);
    out
}

pub fn elements(m: &BinMatrix, i: usize, j: usize, p: u32, s: u32) -> BTreeSet<usize> {
    maximal_chains(m, i, j, p).iter().map(|c| c[s as usize]).collect()
}

/// `f_S` for every `S ⊆ {1..p-1}`, counting distinct restrictions of
/// maximal chains to the ranks in `S`.
pub fn flag_vector(m: &BinMatrix, i: usize, j: usize, p: u32) -> BTreeMap<Vec<u32>, BigInt> {
    let chains = maximal_chains(m, i, j, p);
    let inner = p.saturating_sub(1);
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << inner) {
        let ranks: Vec<u32> = (1..=inner).filter(|s| mask >> (s - 1) & 1 == 1).collect();
        let distinct: HashSet<Vec<usize>> = chains
            .iter()
            .map(|c| ranks.iter().map(|&s| c[s as usize]).collect())
            .collect();
        out.insert(ranks, BigInt::from(distinct.len()));
    }
    out
}

/// The ab-index as a sum over chains of products of `(a-b)` gaps and `b`
/// markers, multiplied out with polynomial arithmetic.
pub fn ab_index(m: &BinMatrix, i: usize, j: usize, p: u32) -> NcPoly {
    let a_minus_b = NcPoly::parse_in(Alphabet::Ab, "a - b").unwrap();
    let b = NcPoly::parse_in(Alphabet::Ab, "b").unwrap();
    let gap = |len: u32| (0..len).fold(NcPoly::one(Alphabet::Ab), |acc, _| acc.try_mul(&a_minus_b).unwrap());
    let mut total = NcPoly::zero(Alphabet::Ab);
    for (ranks, f) in flag_vector(m, i, j, p) {
        let mut word = NcPoly::one(Alphabet::Ab);
        let mut prev = 0;
        for &s in &ranks {
            word = word.try_mul(&gap(s - prev - 1)).unwrap().try_mul(&b).unwrap();
            prev = s;
        }
        word = word.try_mul(&gap(p - prev - 1)).unwrap();
        total = total.try_add(&word.scale(&f)).unwrap();
    }
    total
}
