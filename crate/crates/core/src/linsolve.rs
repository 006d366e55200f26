//! Exact solving of small dense integer systems `A x = b` with full column
//! rank, by rational Gauss-Jordan elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A precomputed left inverse of a full-column-rank integer matrix,
/// restricted to a set of pivot rows.
///
/// `solve` returns the unique candidate solution; the caller decides whether
/// the remaining rows are satisfied (see [`residual_is_zero`]).
#[derive(Debug, Clone)]
pub struct ExactSolver {
    rows: usize,
    cols: usize,
    pivot_rows: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankDeficient {
    pub rank: usize,
    pub cols: usize,
}

impl ExactSolver {
    pub fn new(a: &[Vec<BigInt>]) -> Result<Self, RankDeficient> {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let pivot_rows = pivot_rows(a, cols);
        if pivot_rows.len() < cols {
            return Err(RankDeficient {
                rank: pivot_rows.len(),
                cols,
            });
        }
        let square: Vec<Vec<BigRational>> = pivot_rows
            .iter()
            .map(|&r| a[r].iter().map(|v| BigRational::from_integer(v.clone())).collect())
            .collect();
        let inverse = invert(square).expect("pivot rows are independent");
        Ok(ExactSolver {
            rows,
            cols,
            pivot_rows,
            inverse,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn solve(&self, b: &[BigInt]) -> Vec<BigRational> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        self.inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.pivot_rows)
                    .filter(|(_, &r)| !b[r].is_zero())
                    .fold(BigRational::zero(), |acc, (coef, &r)| {
                        acc + coef * BigRational::from_integer(b[r].clone())
                    })
            })
            .collect()
    }
}

/// True when `A x = b` holds exactly.
pub fn residual_is_zero(a: &[Vec<BigInt>], x: &[BigRational], b: &[BigInt]) -> bool {
    a.iter().zip(b).all(|(row, rhs)| {
        let lhs = row.iter().zip(x).fold(BigRational::zero(), |acc, (v, xi)| {
            acc + BigRational::from_integer(v.clone()) * xi
        });
        lhs == BigRational::from_integer(rhs.clone())
    })
}

/// Greedy choice of rows spanning the row space, via elimination on a
/// working copy.
fn pivot_rows(a: &[Vec<BigInt>], cols: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in a.iter().enumerate() {
        let mut v: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (pc, brow) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (vi, bi) in v.iter_mut().zip(brow) {
                    *vi -= &f * bi;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].recip();
            for vi in v.iter_mut() {
                *vi *= &inv;
            }
            basis.push((pc, v));
            chosen.push(idx);
            if chosen.len() == cols {
                break;
            }
        }
    }
    chosen
}

fn invert(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let scale = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &scale;
        }
        for x in inv[col].iter_mut() {
            *x *= &scale;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (src_m, src_inv) = (m[col].clone(), inv[col].clone());
                for (x, s) in m[r].iter_mut().zip(&src_m) {
                    *x -= &f * s;
                }
                for (x, s) in inv[r].iter_mut().zip(&src_inv) {
                    *x -= &f * s;
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn overdetermined_consistent() {
        let a = mat(&[&[1, 0], &[1, 1], &[0, 1], &[2, 1]]);
        let s = ExactSolver::new(&a).unwrap();
        let b = ints(&[3, 5, 2, 8]);
        let x = s.solve(&b);
        assert_eq!(
            x,
            vec![BigRational::from_integer(3.into()), BigRational::from_integer(2.into())]
        );
        assert!(residual_is_zero(&a, &x, &b));
    }

    #[test]
    fn inconsistent_rhs_leaves_residual() {
        let a = mat(&[&[1], &[1]]);
        let s = ExactSolver::new(&a).unwrap();
        let b = ints(&[1, 0]);
        let x = s.solve(&b);
        assert!(!residual_is_zero(&a, &x, &b));
    }

    #[test]
    fn rational_solution() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let x = ExactSolver::new(&a).unwrap().solve(&ints(&[1, 1]));
        assert_eq!(x[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(x[1], BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn rank_deficient_rejected() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(ExactSolver::new(&a).unwrap_err(), RankDeficient { rank: 1, cols: 2 });
    }
}
