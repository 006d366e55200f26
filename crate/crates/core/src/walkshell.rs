//! Walks in the digraph of a 0,1-matrix, reduced modulo the monomial ideal
//! of triples `(i, j, k)` that admit a smaller middle vertex `j' < j`.
//!
//! An entry of every reduced power being zero or a single monomial means
//! the natural vertex order is a vertex shelling order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matlin::{BinMatrix, Matrix};

/// A walk `i_0, i_1, ..., i_p`, printed as `x_{i_0,...,i_p}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalkMonomial {
    vertices: Vec<usize>,
}

impl WalkMonomial {
    /// Checks that consecutive vertices are edges of `m`.
    pub fn new(m: &BinMatrix, vertices: Vec<usize>) -> Result<Self> {
        for w in vertices.windows(2) {
            if w[0] >= m.rows() || w[1] >= m.cols() || !m.is_edge(w[0], w[1]) {
                return Err(Error::NotAnEdge(w[0], w[1]));
            }
        }
        Ok(WalkMonomial { vertices })
    }

    pub(crate) fn from_vertices(vertices: Vec<usize>) -> Self {
        WalkMonomial { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

impl fmt::Display for WalkMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(usize::to_string).collect();
        write!(f, "x_{{{}}}", parts.join(","))
    }
}

fn check_edge(m: &BinMatrix, i: usize, j: usize) -> Result<()> {
    if i < m.rows() && j < m.cols() && m.is_edge(i, j) {
        Ok(())
    } else {
        Err(Error::NotAnEdge(i, j))
    }
}

/// Whether `x_{i,j,k}` lies in the ideal: some `j' < j` has `i -> j'` and
/// `j' -> k`.
pub fn forbidden_triple(m: &BinMatrix, i: usize, j: usize, k: usize) -> Result<bool> {
    m.require_square()?;
    check_edge(m, i, j)?;
    check_edge(m, j, k)?;
    Ok((0..j).any(|jp| m.is_edge(i, jp) && m.is_edge(jp, k)))
}

/// Whether a walk avoids every forbidden triple.
pub fn walk_survives(m: &BinMatrix, walk: &WalkMonomial) -> Result<bool> {
    for t in walk.vertices().windows(3) {
        if forbidden_triple(m, t[0], t[1], t[2])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Surviving walks from `i` to `j` of one length: the exact count and the
/// lexicographically smallest few.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WalkEntry {
    pub count: BigUint,
    pub witnesses: Vec<WalkMonomial>,
}

impl WalkEntry {
    /// Zero or a single monomial.
    pub fn is_tight(&self) -> bool {
        self.count <= BigUint::one()
    }

    /// Sum of the witnesses, e.g. `x_{1,3,6,7} + x_{1,4,3,7}`, or `0`.
    pub fn render(&self) -> String {
        if self.witnesses.is_empty() {
            return "0".to_string();
        }
        let mut s: Vec<String> = self.witnesses.iter().map(WalkMonomial::to_string).collect();
        if BigUint::from(self.witnesses.len()) < self.count {
            s.push("...".to_string());
        }
        s.join(" + ")
    }
}

/// Reduced powers `Z_M^p` for `1 <= p <= p_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTable {
    p_max: u32,
    witness_cap: usize,
    powers: Vec<Matrix<WalkEntry>>,
}

impl WalkTable {
    pub fn p_max(&self) -> u32 {
        self.p_max
    }

    pub fn witness_cap(&self) -> usize {
        self.witness_cap
    }

    pub fn n(&self) -> usize {
        self.powers.first().map_or(0, Matrix::rows)
    }

    /// Entry `(i, j)` of `Z_M^p`, `1 <= p <= p_max`.
    pub fn entry(&self, i: usize, j: usize, p: u32) -> Option<&WalkEntry> {
        let m = self.powers.get((p as usize).checked_sub(1)?)?;
        (i < m.rows() && j < m.cols()).then(|| m.get(i, j))
    }
}

#[derive(Clone, Default)]
struct Cell {
    count: BigUint,
    witnesses: Vec<Vec<usize>>,
}

fn merge_witnesses(into: &mut Vec<Vec<usize>>, more: impl IntoIterator<Item = Vec<usize>>, cap: usize) {
    into.extend(more);
    into.sort();
    into.truncate(cap);
}

/// Extends walks one edge at a time; a state is the pair of the last two
/// vertices, so the forbidden-triple test needs nothing else.
pub fn reduced_powers(m: &BinMatrix, p_max: u32, witness_cap: usize) -> Result<WalkTable> {
    m.require_square()?;
    let n = m.rows();
    let mut forbidden = vec![false; n * n * n];
    for i in 0..n {
        for j in (0..n).filter(|&j| m.is_edge(i, j)) {
            for k in (0..n).filter(|&k| m.is_edge(j, k)) {
                forbidden[(i * n + j) * n + k] = (0..j).any(|jp| m.is_edge(i, jp) && m.is_edge(jp, k));
            }
        }
    }
    let succ: Vec<Vec<usize>> = (0..n).map(|v| (0..n).filter(|&w| m.is_edge(v, w)).collect()).collect();

    let mut rows: Vec<Vec<Vec<WalkEntry>>> = vec![vec![vec![WalkEntry::default(); n]; n]; p_max as usize];
    for src in 0..n {
        // key (u, v): u is the vertex before v, or None for the length-1 walk
        let mut states: BTreeMap<(Option<usize>, usize), Cell> = BTreeMap::new();
        for &v in &succ[src] {
            states.insert(
                (None, v),
                Cell {
                    count: BigUint::one(),
                    witnesses: vec![vec![src, v]],
                },
            );
        }
        for p in 1..=p_max {
            if p > 1 {
                let mut next: BTreeMap<(Option<usize>, usize), Cell> = BTreeMap::new();
                for (&(u, v), cell) in &states {
                    let from = u.unwrap_or(src);
                    for &w in &succ[v] {
                        if forbidden[(from * n + v) * n + w] {
                            continue;
                        }
                        let target = next.entry((Some(v), w)).or_default();
                        target.count += &cell.count;
                        let extended = cell.witnesses.iter().map(|walk| {
                            let mut walk = walk.clone();
                            walk.push(w);
                            walk
                        });
                        merge_witnesses(&mut target.witnesses, extended, witness_cap);
                    }
                }
                states = next;
            }
            let row = &mut rows[p as usize - 1][src];
            let mut gathered: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
            for (&(_, v), cell) in &states {
                row[v].count += &cell.count;
                merge_witnesses(&mut gathered[v], cell.witnesses.iter().cloned(), witness_cap);
            }
            for (entry, walks) in row.iter_mut().zip(gathered) {
                entry.witnesses = walks.into_iter().map(WalkMonomial::from_vertices).collect();
            }
        }
    }
    let powers = rows
        .into_iter()
        .map(|t| Matrix::from_rows(t).expect("square table"))
        .collect();
    Ok(WalkTable {
        p_max,
        witness_cap,
        powers,
    })
}

/// A non-tight entry of `Z_M^p`: its exact number of surviving walks and
/// the two lexicographically smallest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub i: usize,
    pub j: usize,
    pub count: BigUint,
    pub witnesses: [WalkMonomial; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShellingCertificate {
    /// Every entry of `Z_M^p`, `p <= p_max`, is zero or a single monomial.
    Certified { p_max: u32 },
    /// The least failing length `p` and every failing entry there, in
    /// row-major order; the first is the smallest counterexample.
    Refuted {
        p: u32,
        counterexamples: Vec<Counterexample>,
    },
}

impl ShellingCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, ShellingCertificate::Certified { .. })
    }

    pub fn counterexample(&self, i: usize, j: usize) -> Option<&Counterexample> {
        match self {
            ShellingCertificate::Certified { .. } => None,
            ShellingCertificate::Refuted { counterexamples, .. } => {
                counterexamples.iter().find(|c| (c.i, c.j) == (i, j))
            }
        }
    }
}

/// Bounded check of the single-monomial criterion up to `p_max`.
pub fn shellability_certificate(m: &BinMatrix, p_max: u32) -> Result<ShellingCertificate> {
    let table = reduced_powers(m, p_max, 2)?;
    let n = m.rows();
    for p in 1..=p_max {
        let counterexamples: Vec<Counterexample> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let entry = table.entry(i, j, p).expect("in range");
                (!entry.is_tight()).then(|| Counterexample {
                    i,
                    j,
                    count: entry.count.clone(),
                    witnesses: [entry.witnesses[0].clone(), entry.witnesses[1].clone()],
                })
            })
            .collect();
        if !counterexamples.is_empty() {
            return Ok(ShellingCertificate::Refuted { p, counterexamples });
        }
    }
    Ok(ShellingCertificate::Certified { p_max })
}

/// Closed form of the reduced power entry `(Z_M^p)_{i,j}` for `M(r)`,
/// `r >= 1`, `p >= 2`. `None` means the entry is zero.
pub fn reduced_power_closed_form(r: usize, p: usize, i: usize, j: usize) -> Result<Option<WalkMonomial>> {
    let n = 2 * r + 2;
    for idx in [i, j] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, dim: n });
        }
    }
    if r == 0 || p < 2 {
        return Err(Error::InvalidFamily(format!(
            "closed form needs r >= 1 and p >= 2, got r = {r}, p = {p}"
        )));
    }
    let zeros = |k: usize| std::iter::repeat_n(0, k);
    let walk: Vec<usize> = match (i <= r, j <= r) {
        // southwest
        (false, true) => std::iter::once(i).chain(zeros(p - 1)).chain([j]).collect(),
        // southeast
        (false, false) => std::iter::once(i).chain(zeros(p - 2)).chain([j - r - 1, j]).collect(),
        (true, true) if i == 0 => zeros(p).chain([j]).collect(),
        (true, true) => [i, i + r].into_iter().chain(zeros(p - 2)).chain([j]).collect(),
        (true, false) if i == 0 => zeros(p - 1).chain([j - r - 1, j]).collect(),
        (true, false) if p == 2 && j < 2 * r + 1 => return Ok(None),
        (true, false) if p == 2 => vec![i, i + r, j],
        (true, false) => [i, i + r]
            .into_iter()
            .chain(zeros(p - 3))
            .chain([j - r - 1, j])
            .collect(),
    };
    Ok(Some(WalkMonomial::from_vertices(walk)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_matrix, FamilySpec};
    use num_traits::Zero;

    #[test]
    fn triples_of_m3() {
        let m = family_matrix(FamilySpec::m(3));
        assert_eq!(forbidden_triple(&m, 1, 4, 0), Ok(false));
        assert_eq!(forbidden_triple(&m, 1, 5, 0), Ok(true));
        assert_eq!(forbidden_triple(&m, 0, 0, 4), Ok(false));
        assert_eq!(forbidden_triple(&m, 1, 2, 0), Err(Error::NotAnEdge(1, 2)));
    }

    #[test]
    fn first_power_is_the_matrix() {
        let m = family_matrix(FamilySpec::m(2));
        let table = reduced_powers(&m, 1, 3).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let e = table.entry(i, j, 1).unwrap();
                if m.is_edge(i, j) {
                    assert_eq!(e.render(), format!("x_{{{i},{j}}}"));
                } else {
                    assert_eq!(e.count, BigUint::zero());
                }
            }
        }
        assert!(table.entry(0, 0, 2).is_none());
    }

    #[test]
    fn n_obstruction() {
        for r in [2usize, 3] {
            let m = family_matrix(FamilySpec::n_family(r as u32).unwrap());
            let cert = shellability_certificate(&m, 3).unwrap();
            let expected = [
                WalkMonomial::from_vertices(vec![1, r, 2 * r, 2 * r + 1]),
                WalkMonomial::from_vertices(vec![1, r + 1, r, 2 * r + 1]),
            ];
            assert!(matches!(cert, ShellingCertificate::Refuted { p: 3, .. }));
            let c = cert.counterexample(1, 2 * r + 1).unwrap();
            assert_eq!(c.count, BigUint::from(2u8));
            assert_eq!(c.witnesses, expected);
        }
    }

    #[test]
    fn butterfly_certified() {
        let m = BinMatrix::bin_ones(2, 2);
        assert_eq!(
            shellability_certificate(&m, 6),
            Ok(ShellingCertificate::Certified { p_max: 6 })
        );
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(
            reduced_power_closed_form(3, 2, 0, 7).unwrap().unwrap().to_string(),
            "x_{0,3,7}"
        );
        assert_eq!(reduced_power_closed_form(3, 2, 1, 5).unwrap(), None);
        assert_eq!(
            reduced_power_closed_form(2, 5, 4, 1).unwrap().unwrap().to_string(),
            "x_{4,0,0,0,0,1}"
        );
        assert_eq!(
            reduced_power_closed_form(3, 2, 1, 0).unwrap().unwrap().to_string(),
            "x_{1,4,0}"
        );
        assert!(reduced_power_closed_form(3, 2, 8, 0).is_err());
    }

    #[test]
    fn monomial_checks_edges() {
        let m = BinMatrix::bin_identity(2);
        assert!(WalkMonomial::new(&m, vec![0, 0, 0]).is_ok());
        assert_eq!(WalkMonomial::new(&m, vec![0, 1]), Err(Error::NotAnEdge(0, 1)));
    }
}
