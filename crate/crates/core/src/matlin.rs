//! Exact matrices over the integers, over `{0,1}` and over truncated
//! non-commutative series.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ncalg::{Alphabet, NcPoly, TruncSeries};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Integer matrix. Entries are signed so that alternating sums and the
/// correction blocks can live in the same type.
pub type IntMatrix = Matrix<BigInt>;

/// 0,1-matrix.
pub type BinMatrix = Matrix<bool>;

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    left: (n_rows, n_cols),
                    right: (1, row.len()),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| ((k / cols, k % cols), v))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    pub fn try_map<U>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    fn require_same_dims<U>(&self, other: &Matrix<U>) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }

    fn require_conformable<U>(&self, other: &Matrix<U>) -> Result<()> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }
}

impl<T: Clone> Matrix<T> {
    /// `(M^flip)_{i,j} = entry_flip(m_{rows-1-j, cols-1-i})`; an `m x n`
    /// input gives an `n x m` output.
    pub fn anti_flip_with(&self, mut entry_flip: impl FnMut(&T) -> T) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| {
            entry_flip(self.get(self.rows - 1 - j, self.cols - 1 - i))
        })
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Assembles `[[nw, ne], [sw, se]]`.
    pub fn block2x2(nw: &Matrix<T>, ne: &Matrix<T>, sw: &Matrix<T>, se: &Matrix<T>) -> Result<Matrix<T>> {
        let mismatch = |a: &Matrix<T>, b: &Matrix<T>| Error::DimensionMismatch {
            left: a.dims(),
            right: b.dims(),
        };
        if nw.rows != ne.rows {
            return Err(mismatch(nw, ne));
        }
        if sw.rows != se.rows {
            return Err(mismatch(sw, se));
        }
        if nw.cols != sw.cols {
            return Err(mismatch(nw, sw));
        }
        if ne.cols != se.cols {
            return Err(mismatch(ne, se));
        }
        let (top, left) = (nw.rows, nw.cols);
        Ok(Matrix::from_fn(top + sw.rows, left + ne.cols, |i, j| {
            match (i < top, j < left) {
                (true, true) => nw.get(i, j),
                (true, false) => ne.get(i, j - left),
                (false, true) => sw.get(i - top, j),
                (false, false) => se.get(i - top, j - left),
            }
            .clone()
        }))
    }

    /// The `(rows x cols)` sub-block starting at `(top, left)`.
    pub fn block(&self, top: usize, left: usize, rows: usize, cols: usize) -> Matrix<T> {
        Matrix::from_fn(rows, cols, |i, j| self.get(top + i, left + j).clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        self.get(i, j)
    }
}

/// Reflection across the anti-diagonal combined with entry reversal.
pub trait AntiFlip {
    fn anti_flip(&self) -> Self;
}

impl AntiFlip for IntMatrix {
    fn anti_flip(&self) -> Self {
        self.anti_flip_with(Clone::clone)
    }
}

impl AntiFlip for BinMatrix {
    fn anti_flip(&self) -> Self {
        self.anti_flip_with(Clone::clone)
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| BigInt::zero())
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| BigInt::one())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| BigInt::from(u8::from(i == j)))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    pub fn try_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.require_same_dims(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.require_same_dims(rhs)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.require_conformable(rhs)?;
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: impl Into<BigInt>) -> IntMatrix {
        let f = factor.into();
        self.map(|v| v * &f)
    }

    pub fn pow(&self, k: u32) -> Result<IntMatrix> {
        self.require_square()?;
        let mut acc = IntMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<BigInt> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<((usize, usize), &BigInt)> {
        self.entries().find(|(_, v)| !v.is_zero())
    }
}

impl BinMatrix {
    pub fn bin_zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| false)
    }

    pub fn bin_ones(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| true)
    }

    pub fn bin_identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| i == j)
    }

    pub fn from_01_rows(rows: &[&[u8]]) -> Result<Self> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| v != 0).collect()).collect())
    }

    pub fn is_all_ones(&self) -> bool {
        self.data.iter().all(|&b| b)
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        *self.get(i, j)
    }

    pub fn to_int(&self) -> IntMatrix {
        self.map(|&b| BigInt::from(u8::from(b)))
    }

    /// `Bin(X * Y)` for 0,1-matrices `X`, `Y`.
    pub fn bool_mul(&self, rhs: &BinMatrix) -> Result<BinMatrix> {
        self.require_conformable(rhs)?;
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).any(|k| *self.get(i, k) && *rhs.get(k, j))
        }))
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }
}

/// Entrywise `1` where positive, `0` otherwise.
pub fn binarize(m: &IntMatrix) -> BinMatrix {
    m.map(|v| v.is_positive())
}

/// `Bin(M^k)`, computed with boolean products; `Bin(M^0)` is the identity.
pub fn bin_power(m: &BinMatrix, k: u32) -> Result<BinMatrix> {
    m.require_square()?;
    let mut acc = BinMatrix::bin_identity(m.rows());
    for _ in 0..k {
        acc = acc.bool_mul(m)?;
    }
    Ok(acc)
}

/// Default search bound for [`exponent`]: `4 n^2`, above the classical
/// bound `(n-1)^2 + 1` for primitive matrices.
pub fn default_exponent_bound(n: usize) -> u32 {
    (4 * n * n).max(1) as u32
}

/// Smallest `k >= 1` with `Bin(M^k) = J`, searching up to `k_max`.
pub fn exponent(m: &BinMatrix, k_max: u32) -> Result<u32> {
    m.require_square()?;
    let mut power = m.clone();
    for k in 1..=k_max {
        if power.is_all_ones() {
            return Ok(k);
        }
        power = power.bool_mul(m)?;
    }
    Err(Error::NotPrimitiveWithin(k_max))
}

/// Parses the text matrix format: one row per line, entries separated by
/// whitespace, with an optional leading `rows cols` header line.
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix> {
    let lines: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|toks| !toks.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    let parse = |tok: &str| {
        tok.parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad entry {tok:?}: {e}")))
    };
    let body = match header(&lines) {
        Some(_) => &lines[1..],
        None => &lines[..],
    };
    let rows = body
        .iter()
        .map(|toks| toks.iter().map(|t| parse(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows).map_err(|_| Error::Parse("rows have unequal lengths".into()))
}

fn header(lines: &[Vec<&str>]) -> Option<(usize, usize)> {
    let first = &lines[0];
    if first.len() != 2 {
        return None;
    }
    let rows: usize = first[0].parse().ok()?;
    let cols: usize = first[1].parse().ok()?;
    let body = &lines[1..];
    (body.len() == rows && body.iter().all(|r| r.len() == cols)).then_some((rows, cols))
}

/// [`parse_int_matrix`] restricted to entries in `{0, 1}`.
pub fn parse_bin_matrix(text: &str) -> Result<BinMatrix> {
    let m = parse_int_matrix(text)?;
    if let Some(((i, j), v)) = m.entries().find(|(_, v)| !v.is_zero() && !v.is_one()) {
        return Err(Error::Parse(format!("entry ({i},{j}) = {v} is not 0 or 1")));
    }
    Ok(binarize(&m))
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self, |v| v.to_string())
    }
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self, |&b| if b { "1".into() } else { "0".into() })
    }
}

fn write_rows<T>(f: &mut fmt::Formatter<'_>, m: &Matrix<T>, show: impl Fn(&T) -> String) -> fmt::Result {
    for i in 0..m.rows {
        let line: Vec<String> = m.row(i).iter().map(&show).collect();
        writeln!(f, "{}", line.join(" "))?;
    }
    Ok(())
}

/// Matrix of truncated series sharing one alphabet and one cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesMatrix {
    alphabet: Alphabet,
    cutoff: u32,
    entries: Matrix<NcPoly>,
}

impl SeriesMatrix {
    /// Entries are truncated to `cutoff`; every entry must carry `alphabet`.
    pub fn new(alphabet: Alphabet, cutoff: u32, entries: Matrix<NcPoly>) -> Result<Self> {
        if let Some((_, p)) = entries.entries().find(|(_, p)| p.alphabet() != alphabet) {
            return Err(Error::AlphabetMismatch {
                left: alphabet,
                right: p.alphabet(),
            });
        }
        Ok(SeriesMatrix {
            alphabet,
            cutoff,
            entries: entries.map(|p| p.truncated(cutoff)),
        })
    }

    pub fn from_int(m: &IntMatrix, alphabet: Alphabet, cutoff: u32) -> Self {
        SeriesMatrix {
            alphabet,
            cutoff,
            entries: m.map(|v| NcPoly::constant(alphabet, v.clone())),
        }
    }

    pub fn zeros(rows: usize, cols: usize, alphabet: Alphabet, cutoff: u32) -> Self {
        SeriesMatrix::from_int(&IntMatrix::zeros(rows, cols), alphabet, cutoff)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.entries.dims()
    }

    pub fn poly(&self, i: usize, j: usize) -> &NcPoly {
        self.entries.get(i, j)
    }

    pub fn entry(&self, i: usize, j: usize) -> TruncSeries {
        TruncSeries::new(self.entries.get(i, j).clone(), self.cutoff)
    }

    pub fn matrix(&self) -> &Matrix<NcPoly> {
        &self.entries
    }

    fn check_compatible(&self, other: &SeriesMatrix) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch {
                left: self.cutoff,
                right: other.cutoff,
            });
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &SeriesMatrix, op: impl Fn(&NcPoly, &NcPoly) -> Result<NcPoly>) -> Result<SeriesMatrix> {
        self.check_compatible(rhs)?;
        self.entries.require_same_dims(&rhs.entries)?;
        let data = self
            .entries
            .data
            .iter()
            .zip(&rhs.entries.data)
            .map(|(a, b)| op(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesMatrix {
            alphabet: self.alphabet,
            cutoff: self.cutoff,
            entries: Matrix {
                rows: self.rows(),
                cols: self.cols(),
                data,
            },
        })
    }

    pub fn try_add(&self, rhs: &SeriesMatrix) -> Result<SeriesMatrix> {
        self.zip_with(rhs, NcPoly::try_add)
    }

    pub fn try_sub(&self, rhs: &SeriesMatrix) -> Result<SeriesMatrix> {
        self.zip_with(rhs, NcPoly::try_sub)
    }

    /// Matrix product with non-commutative entry products, truncated.
    pub fn try_mul(&self, rhs: &SeriesMatrix) -> Result<SeriesMatrix> {
        self.check_compatible(rhs)?;
        self.entries.require_conformable(&rhs.entries)?;
        let cut = Some(self.cutoff);
        let entries = Matrix::from_fn(self.rows(), rhs.cols(), |i, j| {
            let mut acc = NcPoly::zero(self.alphabet);
            for k in 0..self.cols() {
                let (a, b) = (self.poly(i, k), rhs.poly(k, j));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.try_add(&a.mul_upto(b, cut)).expect("same alphabet");
            }
            acc
        });
        Ok(SeriesMatrix {
            alphabet: self.alphabet,
            cutoff: self.cutoff,
            entries,
        })
    }

    /// Multiplies every entry on the right by the scalar series `s`.
    pub fn mul_scalar_right(&self, s: &NcPoly) -> Result<SeriesMatrix> {
        self.map_entries(|p| p.try_mul(s).map(|q| q.truncated(self.cutoff)))
    }

    /// Multiplies every entry on the left by the scalar series `s`.
    pub fn mul_scalar_left(&self, s: &NcPoly) -> Result<SeriesMatrix> {
        self.map_entries(|p| s.try_mul(p).map(|q| q.truncated(self.cutoff)))
    }

    /// Applies `f` entrywise; the results are re-tagged with the alphabet of
    /// the first entry (or kept when the matrix is empty) and truncated.
    pub fn map_entries(&self, f: impl FnMut(&NcPoly) -> Result<NcPoly>) -> Result<SeriesMatrix> {
        let entries = self.entries.try_map(f)?;
        let alphabet = entries.data.first().map_or(self.alphabet, NcPoly::alphabet);
        SeriesMatrix::new(alphabet, self.cutoff, entries)
    }

    pub fn delta(&self) -> Result<SeriesMatrix> {
        self.map_entries(NcPoly::delta)
    }

    pub fn cd_to_ab(&self) -> Result<SeriesMatrix> {
        let entries = self.entries.try_map(NcPoly::cd_to_ab)?;
        SeriesMatrix::new(Alphabet::Ab, self.cutoff, entries)
    }

    /// Re-truncates at a lower cutoff.
    pub fn truncated(&self, cutoff: u32) -> SeriesMatrix {
        let cutoff = cutoff.min(self.cutoff);
        SeriesMatrix {
            alphabet: self.alphabet,
            cutoff,
            entries: self.entries.map(|p| p.truncated(cutoff)),
        }
    }

    pub fn block2x2(
        nw: &SeriesMatrix,
        ne: &SeriesMatrix,
        sw: &SeriesMatrix,
        se: &SeriesMatrix,
    ) -> Result<SeriesMatrix> {
        nw.check_compatible(ne)?;
        nw.check_compatible(sw)?;
        nw.check_compatible(se)?;
        Ok(SeriesMatrix {
            alphabet: nw.alphabet,
            cutoff: nw.cutoff,
            entries: Matrix::block2x2(&nw.entries, &ne.entries, &sw.entries, &se.entries)?,
        })
    }
}

impl AntiFlip for SeriesMatrix {
    fn anti_flip(&self) -> Self {
        SeriesMatrix {
            alphabet: self.alphabet,
            cutoff: self.cutoff,
            entries: self.entries.anti_flip_with(NcPoly::reverse),
        }
    }
}

impl fmt::Display for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.entries, |p| format!("[{p}]"))
    }
}
