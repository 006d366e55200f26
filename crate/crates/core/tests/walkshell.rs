mod common;

use common::strategies::{bin_matrix, runner};
use level_eulerian::families::{family_matrix, FamilySpec};
use level_eulerian::matlin::BinMatrix;
use level_eulerian::walkshell::{
    forbidden_triple, reduced_powers, shellability_certificate, walk_survives, WalkMonomial,
};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn all_walks(m: &BinMatrix, i: usize, p: usize) -> Vec<Vec<usize>> {
    let mut walks = vec![vec![i]];
    for _ in 0..p {
        walks = walks
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                (0..m.cols()).filter(move |&k| m.is_edge(last, k)).map(move |k| {
                    let mut w = w.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    walks
}

/// Each internal vertex is the least common neighbour of its two neighbours.
fn minimal_interior(m: &BinMatrix, walk: &[usize]) -> bool {
    walk.windows(3)
        .all(|t| (0..m.rows()).find(|&v| m.is_edge(t[0], v) && m.is_edge(v, t[2])) == Some(t[1]))
}

#[test]
fn dp_matches_exhaustive_enumeration() {
    runner(40, 41)
        .run(&bin_matrix(1..=6), |m| {
            let table = reduced_powers(&m, 5, 3).unwrap();
            let powers: Vec<_> = (0..=5).map(|p| m.to_int().pow(p).unwrap()).collect();
            for i in 0..m.rows() {
                for (p, power) in powers.iter().enumerate().skip(1) {
                    let walks = all_walks(&m, i, p);
                    for j in 0..m.rows() {
                        let to_j: Vec<&Vec<usize>> = walks.iter().filter(|w| *w.last().unwrap() == j).collect();
                        prop_assert_eq!(BigInt::from(to_j.len()), power.get(i, j).clone());
                        let mut survivors: Vec<Vec<usize>> = Vec::new();
                        for w in to_j {
                            let mono = WalkMonomial::new(&m, w.clone()).unwrap();
                            let survives = walk_survives(&m, &mono).unwrap();
                            prop_assert_eq!(survives, minimal_interior(&m, w));
                            if survives {
                                survivors.push(w.clone());
                            }
                        }
                        survivors.sort();
                        let entry = table.entry(i, j, p as u32).unwrap();
                        prop_assert_eq!(entry.count.clone(), BigUint::from(survivors.len()));
                        let shown: Vec<Vec<usize>> = entry.witnesses.iter().map(|w| w.vertices().to_vec()).collect();
                        prop_assert_eq!(shown, survivors.into_iter().take(3).collect::<Vec<_>>());
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn certified_family_entries_saturate() {
    for r in 1..=4 {
        let m = family_matrix(FamilySpec::m(r));
        assert!(shellability_certificate(&m, 8).unwrap().is_certified());
        let table = reduced_powers(&m, 8, 2).unwrap();
        for i in 0..m.rows() {
            for j in 0..m.rows() {
                assert_eq!(table.entry(i, j, 8).unwrap().count, BigUint::from(1u8));
            }
        }
    }
}

#[test]
fn minimal_middle_vertex_is_never_forbidden() {
    let m = family_matrix(FamilySpec::n_family(3).unwrap());
    for i in 0..m.rows() {
        for k in 0..m.rows() {
            if let Some(j) = (0..m.rows()).find(|&j| m.is_edge(i, j) && m.is_edge(j, k)) {
                assert_eq!(forbidden_triple(&m, i, j, k), Ok(false));
            }
        }
    }
}
