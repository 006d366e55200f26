#![allow(dead_code)]

pub mod chains;
pub mod props;
pub mod strategies;

use level_eulerian::families::{family_matrix, FamilySpec};
use level_eulerian::matlin::BinMatrix;

/// Family members known to be Eulerian, butterfly included.
pub fn certified_family_matrices() -> Vec<(String, BinMatrix)> {
    let mut out: Vec<(String, BinMatrix)> = (0..=4)
        .map(|r| (format!("M({r})"), family_matrix(FamilySpec::m(r))))
        .collect();
    for r in 2..=4 {
        out.push((format!("N({r})"), family_matrix(FamilySpec::n_family(r).unwrap())));
    }
    out
}

/// `P M P^T` for the permutation `perm` (vertex `i` becomes `perm[i]`).
pub fn conjugate(m: &BinMatrix, perm: &[usize]) -> BinMatrix {
    let n = m.rows();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    BinMatrix::from_fn(n, n, |i, j| m.is_edge(inv[i], inv[j]))
}
