//! The level poset of a square 0,1-matrix `M`: elements `(i, s)` with
//! `(i, s) <= (j, p)` iff `s <= p` and `Bin(M^{p-s})_{i,j} = 1`.
//!
//! Intervals are keyed by `(i, j, p)` with the bottom element at rank 0.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matlin::{BinMatrix, IntMatrix, Matrix, SeriesMatrix};
use crate::ncalg::{ab_to_cd, Alphabet, Letter, NcPoly, Word};

#[derive(Debug, Clone)]
pub struct LevelPoset {
    matrix: BinMatrix,
    /// `Bin(M^k)` for `k < cycle_start + period`; the sequence repeats with
    /// `period` from `cycle_start` on.
    powers: Vec<BinMatrix>,
    cycle_start: usize,
    period: usize,
    exponent: Option<u32>,
}

impl LevelPoset {
    /// Builds the poset and eagerly caches the (eventually periodic)
    /// sequence of binarized powers.
    pub fn new(matrix: BinMatrix) -> Result<Self> {
        matrix.require_square()?;
        let n = matrix.rows();
        let mut powers = vec![BinMatrix::bin_identity(n)];
        let mut seen: HashMap<BinMatrix, usize> = HashMap::new();
        seen.insert(powers[0].clone(), 0);
        let (cycle_start, period) = loop {
            let next = powers.last().expect("nonempty").bool_mul(&matrix)?;
            let k = powers.len();
            if let Some(&first) = seen.get(&next) {
                break (first, k - first);
            }
            seen.insert(next.clone(), k);
            powers.push(next);
        };
        let mut poset = LevelPoset {
            matrix,
            powers,
            cycle_start,
            period,
            exponent: None,
        };
        let horizon = (cycle_start + period) as u32;
        poset.exponent = (1..=horizon).find(|&k| poset.bin_power(k).is_all_ones());
        Ok(poset)
    }

    pub fn matrix(&self) -> &BinMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// Exact exponent, or `None` when no power of `M` binarizes to `J`.
    pub fn exponent(&self) -> Option<u32> {
        self.exponent
    }

    pub fn bin_power(&self, k: u32) -> &BinMatrix {
        let k = k as usize;
        if k < self.powers.len() {
            &self.powers[k]
        } else {
            &self.powers[self.cycle_start + (k - self.cycle_start) % self.period]
        }
    }

    pub fn leq(&self, (i, s): (usize, i64), (j, p): (usize, i64)) -> bool {
        s <= p && self.bin_power((p - s) as u32).is_edge(i, j)
    }

    pub fn interval(&self, from: usize, to: usize, length: u32) -> Result<Interval<'_>> {
        for idx in [from, to] {
            if idx >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    dim: self.n(),
                });
            }
        }
        if !self.bin_power(length).is_edge(from, to) {
            return Err(Error::EmptyInterval { from, to, length });
        }
        Ok(Interval {
            poset: self,
            from,
            to,
            length,
        })
    }

    /// `sum_s (-1)^s Bin(M^s) Bin(M^{p-s})`; zero iff every interval of
    /// length `p` has as many even- as odd-rank elements.
    pub fn euler_sum(&self, p: u32) -> IntMatrix {
        let n = self.n();
        let mut acc = IntMatrix::zeros(n, n);
        for s in 0..=p {
            let prod = self
                .bin_power(s)
                .to_int()
                .try_mul(&self.bin_power(p - s).to_int())
                .expect("square");
            acc = if s % 2 == 0 {
                acc.try_add(&prod)
            } else {
                acc.try_sub(&prod)
            }
            .expect("square");
        }
        acc
    }
}

/// The interval `[(from, 0), (to, length)]`, guaranteed nonempty.
#[derive(Debug, Clone, Copy)]
pub struct Interval<'a> {
    poset: &'a LevelPoset,
    from: usize,
    to: usize,
    length: u32,
}

impl<'a> Interval<'a> {
    pub fn from(&self) -> usize {
        self.from
    }

    pub fn to(&self) -> usize {
        self.to
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn poset(&self) -> &'a LevelPoset {
        self.poset
    }

    /// Node indices `l` with `(from,0) <= (l,s) <= (to,length)`.
    pub fn elements(&self, rank: u32) -> Result<Vec<usize>> {
        if rank > self.length {
            return Err(Error::RankOutOfRange {
                rank,
                length: self.length,
            });
        }
        let down = self.poset.bin_power(rank);
        let up = self.poset.bin_power(self.length - rank);
        Ok((0..self.poset.n())
            .filter(|&l| down.is_edge(self.from, l) && up.is_edge(l, self.to))
            .collect())
    }

    /// Number of chains through the ranks in `ranks` (a subset of
    /// `1..length`), as the `(from, to)` entry of a product of binarized
    /// powers.
    pub fn flag_f(&self, ranks: &[u32]) -> Result<BigInt> {
        let mut sorted = ranks.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&s| s == 0 || s >= self.length) {
            return Err(Error::RankOutOfRange {
                rank: bad,
                length: self.length,
            });
        }
        Ok(self.flag_f_sorted(&sorted))
    }

    fn flag_f_sorted(&self, ranks: &[u32]) -> BigInt {
        let n = self.poset.n();
        let mut row = vec![BigInt::zero(); n];
        row[self.from] = BigInt::one();
        let mut prev = 0;
        for &s in ranks.iter().chain(std::iter::once(&self.length)) {
            let step = self.poset.bin_power(s - prev);
            let mut next = vec![BigInt::zero(); n];
            for (k, v) in row.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (l, out) in next.iter_mut().enumerate() {
                    if step.is_edge(k, l) {
                        *out += v;
                    }
                }
            }
            row = next;
            prev = s;
        }
        row.swap_remove(self.to)
    }

    pub fn flag_vector(&self) -> FlagVector {
        let inner = self.length.saturating_sub(1);
        let entries = (0u64..1 << inner)
            .map(|mask| {
                let ranks: Vec<u32> = (1..=inner).filter(|s| mask >> (s - 1) & 1 == 1).collect();
                let f = self.flag_f_sorted(&ranks);
                (ranks, f)
            })
            .collect();
        FlagVector {
            length: self.length,
            entries,
        }
    }

    /// `sum_S f_S * w_S` where `w_S` has `b` at the positions in `S` and
    /// `a - b` elsewhere. Homogeneous of degree `length - 1`.
    pub fn ab_index(&self) -> Result<NcPoly> {
        if self.length == 0 {
            return Err(Error::TrivialInterval);
        }
        Ok(self.flag_vector().ab_index())
    }

    pub fn cd_index(&self) -> Result<NcPoly> {
        ab_to_cd(&self.ab_index()?)
    }
}

/// Flag f-vector of an interval of the given length, indexed by rank sets
/// `S ⊆ {1, ..., length-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagVector {
    pub length: u32,
    pub entries: BTreeMap<Vec<u32>, BigInt>,
}

impl FlagVector {
    pub fn get(&self, ranks: &[u32]) -> Option<&BigInt> {
        self.entries.get(ranks)
    }

    pub fn ab_index(&self) -> NcPoly {
        let degree = self.length.saturating_sub(1);
        let mut coeffs: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (ranks, f) in self.entries.iter().filter(|(_, f)| !f.is_zero()) {
            let mask: u64 = ranks.iter().map(|s| 1u64 << (s - 1)).sum();
            let free = !mask & ((1u64 << degree) - 1);
            // choosing b out of a factor (a - b) contributes a sign
            let mut extra = free;
            loop {
                let sign_neg = extra.count_ones() % 2 == 1;
                let entry = coeffs.entry(mask | extra).or_default();
                if sign_neg {
                    *entry -= f;
                } else {
                    *entry += f;
                }
                if extra == 0 {
                    break;
                }
                extra = (extra - 1) & free;
            }
        }
        let terms = coeffs.into_iter().map(|(bits, c)| {
            let word =
                Word::from_letters((0..degree).map(|pos| if bits >> pos & 1 == 1 { Letter::B } else { Letter::A }));
            (word, c)
        });
        NcPoly::from_terms(Alphabet::Ab, terms).expect("ab words")
    }

    /// Structured form: rank-set label (e.g. `"{1,2}"`) to count.
    pub fn structured(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.entries
                .iter()
                .map(|(s, f)| {
                    let label = format!("{{{}}}", s.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
                    let num = f.to_string().parse::<serde_json::Number>().expect("integer");
                    (label, serde_json::Value::Number(num))
                })
                .collect(),
        )
    }
}

/// Result of one Eulerian rank condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankCheck {
    Pass,
    /// A nonzero entry of the alternating sum.
    Fail {
        i: usize,
        j: usize,
        value: BigInt,
    },
}

impl RankCheck {
    pub fn passed(&self) -> bool {
        matches!(self, RankCheck::Pass)
    }
}

/// Rank-`p` Eulerian condition for an even positive `p`.
pub fn eulerian_rank_check(poset: &LevelPoset, p: u32) -> Result<RankCheck> {
    if p == 0 || p % 2 == 1 {
        return Err(Error::OddRank(p));
    }
    Ok(eulerian_rank_check_any_parity(poset, p))
}

/// Diagnostic variant that also accepts odd ranks. Odd-rank results never
/// enter a certificate.
pub fn eulerian_rank_check_any_parity(poset: &LevelPoset, p: u32) -> RankCheck {
    match poset.euler_sum(p).first_nonzero() {
        None => RankCheck::Pass,
        Some(((i, j), v)) => RankCheck::Fail { i, j, value: v.clone() },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    FailsAtRank { rank: u32 },
}

/// Outcome of the exponent-based Eulerian certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub exponent: u32,
    /// `W = sum_{s=1}^{exponent-1} (-1)^s Bin(M^s)`.
    pub w: IntMatrix,
    pub row_sums: Vec<BigInt>,
    pub col_sums: Vec<BigInt>,
    /// `(-1)^{exponent-1} n/2 - 1`, when it is an integer.
    pub target_sum: Option<BigInt>,
    /// Line sums of `W` all hit the target: every rank `2k >= 2*exponent`
    /// is Eulerian.
    pub uniform_sums: bool,
    /// `(J - Bin(M^{exponent-1}))^2 = 0`: rank `2*exponent - 2` follows
    /// from rank `2*exponent`.
    pub square_vanishes: bool,
    /// Direct checks for every even rank below `2*exponent`.
    pub direct: Vec<(u32, RankCheck)>,
    pub verdict: Verdict,
}

pub fn eulerian_certificate(poset: &LevelPoset) -> Result<CertificateReport> {
    let gamma = poset.exponent().ok_or(Error::NotPrimitive)?;
    let n = poset.n();
    let mut w = IntMatrix::zeros(n, n);
    for s in 1..gamma {
        let term = poset.bin_power(s).to_int();
        w = if s % 2 == 0 { w.try_add(&term) } else { w.try_sub(&term) }?;
    }
    let row_sums = w.row_sums();
    let col_sums = w.col_sums();
    let target_sum = n.is_multiple_of(2).then(|| {
        let half = BigInt::from(n / 2);
        let signed = if gamma % 2 == 1 { half } else { -half };
        signed - 1
    });
    let uniform_sums = target_sum
        .as_ref()
        .is_some_and(|t| row_sums.iter().chain(&col_sums).all(|s| s == t));

    let j = IntMatrix::ones(n, n);
    let gap = j.try_sub(&poset.bin_power(gamma - 1).to_int())?;
    let square_vanishes = gap.try_mul(&gap)?.is_zero();

    let direct: Vec<(u32, RankCheck)> = (1..gamma)
        .map(|k| (2 * k, eulerian_rank_check_any_parity(poset, 2 * k)))
        .collect();
    let verdict = match direct.iter().find(|(_, c)| !c.passed()) {
        Some(&(rank, _)) => Verdict::FailsAtRank { rank },
        None if !uniform_sums => Verdict::FailsAtRank { rank: 2 * gamma },
        None => Verdict::Certified,
    };
    Ok(CertificateReport {
        exponent: gamma,
        w,
        row_sums,
        col_sums,
        target_sum,
        uniform_sums,
        square_vanishes,
        direct,
        verdict,
    })
}

/// `K_M(t) = sum_{k>=0} Bin(M^{k+1}) t^k`, kept as its coefficient matrices
/// up to `t^cutoff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSeries {
    pub coeffs: Vec<BinMatrix>,
}

impl KSeries {
    pub fn cutoff(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    /// Coefficients of the `(i, j)` entry, indexed by the power of `t`.
    pub fn entry(&self, i: usize, j: usize) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|c| BigInt::from(u8::from(c.is_edge(i, j))))
            .collect()
    }

    /// Evaluates at `t = value` (a polynomial without constant term),
    /// truncated at the series cutoff.
    pub fn evaluate(&self, value: &NcPoly) -> Result<SeriesMatrix> {
        if !value.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let cutoff = self.cutoff();
        let alphabet = value.alphabet();
        let n = self.coeffs[0].rows();
        let mut power = NcPoly::one(alphabet);
        let mut acc: Matrix<NcPoly> = Matrix::from_fn(n, n, |_, _| NcPoly::zero(alphabet));
        for coeff in &self.coeffs {
            if power.is_zero() {
                break;
            }
            acc = Matrix::from_fn(n, n, |i, j| {
                let cur = acc.get(i, j);
                if coeff.is_edge(i, j) {
                    cur.try_add(&power).expect("same alphabet")
                } else {
                    cur.clone()
                }
            });
            power = power.try_mul(value)?.truncated(cutoff);
        }
        SeriesMatrix::new(alphabet, cutoff, acc)
    }
}

pub fn k_series(poset: &LevelPoset, cutoff: u32) -> KSeries {
    KSeries {
        coeffs: (0..=cutoff).map(|k| poset.bin_power(k + 1).clone()).collect(),
    }
}

/// `Psi_{i,j}` truncated at degree `cutoff`, as the sum of ab-indices of
/// the intervals `[(i,0),(j,k)]`, `1 <= k <= cutoff + 1`.
pub fn psi_truncated(poset: &LevelPoset, cutoff: u32) -> SeriesMatrix {
    let n = poset.n();
    let entries = Matrix::from_fn(n, n, |i, j| {
        let mut acc = NcPoly::zero(Alphabet::Ab);
        for k in 1..=cutoff + 1 {
            if let Ok(iv) = poset.interval(i, j, k) {
                acc = acc.try_add(&iv.ab_index().expect("length >= 1")).expect("ab");
            }
        }
        acc
    });
    SeriesMatrix::new(Alphabet::Ab, cutoff, entries).expect("ab entries")
}

/// `Psi` as the path-sum of the weighted automaton with start states `s_i`,
/// final states `f_j`, weights `K(a-b)_{i,j}` on `s_i -> f_j` and
/// `b K(a-b)_{i,j}` on `f_i -> f_j`; i.e. `sum_{mu>=0} K (b K)^mu`.
pub fn psi_automaton(poset: &LevelPoset, cutoff: u32) -> SeriesMatrix {
    let a_minus_b = NcPoly::parse_in(Alphabet::Ab, "a - b").expect("literal");
    let b = NcPoly::var(Alphabet::Ab, Letter::B).expect("literal");
    let k_tilde = k_series(poset, cutoff).evaluate(&a_minus_b).expect("no constant term");
    let step = k_tilde.mul_scalar_left(&b).expect("ab");
    let mut total = k_tilde.clone();
    let mut term = k_tilde;
    loop {
        term = term.try_mul(&step).expect("conformable");
        if term.matrix().entries().all(|(_, p)| p.is_zero()) {
            return total;
        }
        total = total.try_add(&term).expect("conformable");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(rows: &[&[u8]]) -> LevelPoset {
        LevelPoset::new(BinMatrix::from_01_rows(rows).unwrap()).unwrap()
    }

    fn butterfly() -> LevelPoset {
        poset(&[&[1, 1], &[1, 1]])
    }

    fn p(s: &str) -> NcPoly {
        s.parse().unwrap()
    }

    #[test]
    fn power_cache_handles_periodic_matrices() {
        let swap = poset(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.exponent(), None);
        assert_eq!(swap.bin_power(7), swap.matrix());
        assert_eq!(*swap.bin_power(10), BinMatrix::bin_identity(2));
        assert_eq!(butterfly().exponent(), Some(1));
    }

    #[test]
    fn diamond_interval() {
        let b = butterfly();
        let iv = b.interval(0, 0, 2).unwrap();
        assert_eq!(iv.elements(1).unwrap(), vec![0, 1]);
        assert_eq!(iv.elements(0).unwrap(), vec![0]);
        assert_eq!(iv.flag_f(&[]).unwrap(), BigInt::from(1));
        assert_eq!(iv.flag_f(&[1]).unwrap(), BigInt::from(2));
        assert_eq!(iv.ab_index().unwrap(), p("a + b"));
        assert_eq!(iv.cd_index().unwrap(), p("c"));
        assert!(matches!(iv.elements(3), Err(Error::RankOutOfRange { .. })));
        assert!(matches!(iv.flag_f(&[2]), Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn chain_poset_has_trivial_flag_vector() {
        let chain = poset(&[&[1]]);
        let iv = chain.interval(0, 0, 3).unwrap();
        assert_eq!(iv.ab_index().unwrap(), p("aa"));
        assert_eq!(iv.cd_index(), Err(Error::NotInCdSpan { degree: 2 }));
    }

    #[test]
    fn empty_and_trivial_intervals() {
        let m = poset(&[&[0, 1], &[0, 1]]);
        assert_eq!(
            m.interval(1, 0, 3).unwrap_err(),
            Error::EmptyInterval {
                from: 1,
                to: 0,
                length: 3
            }
        );
        assert_eq!(m.interval(0, 0, 0).unwrap().ab_index(), Err(Error::TrivialInterval));
    }

    #[test]
    fn rank_checks() {
        assert_eq!(eulerian_rank_check(&butterfly(), 2), Ok(RankCheck::Pass));
        assert_eq!(eulerian_rank_check(&butterfly(), 3), Err(Error::OddRank(3)));
        let chain = poset(&[&[1]]);
        assert_eq!(
            eulerian_rank_check(&chain, 2),
            Ok(RankCheck::Fail {
                i: 0,
                j: 0,
                value: BigInt::from(1)
            })
        );
        let cert = eulerian_certificate(&chain).unwrap();
        assert_eq!(cert.verdict, Verdict::FailsAtRank { rank: 2 });
        assert_eq!(cert.target_sum, None);
    }

    #[test]
    fn butterfly_certificate() {
        let cert = eulerian_certificate(&butterfly()).unwrap();
        assert_eq!(cert.exponent, 1);
        assert!(cert.uniform_sums);
        assert_eq!(cert.verdict, Verdict::Certified);
        assert_eq!(
            eulerian_certificate(&poset(&[&[0, 1], &[1, 0]])).unwrap_err(),
            Error::NotPrimitive
        );
    }

    #[test]
    fn k_series_of_butterfly_is_geometric() {
        let k = k_series(&butterfly(), 3);
        assert_eq!(k.entry(1, 0), vec![BigInt::from(1); 4]);
        let chain = k_series(&poset(&[&[1]]), 2);
        assert_eq!(chain.entry(0, 0), vec![BigInt::from(1); 3]);
    }

    #[test]
    fn psi_constant_terms_are_the_matrix() {
        let m = poset(&[&[1, 1, 0], &[0, 0, 1], &[1, 0, 1]]);
        let psi = psi_truncated(&m, 0);
        for i in 0..3 {
            for j in 0..3 {
                let expected = u8::from(m.matrix().is_edge(i, j));
                assert_eq!(psi.poly(i, j).constant_term(), BigInt::from(expected));
            }
        }
        assert_eq!(psi_automaton(&m, 0), psi);
    }
}
