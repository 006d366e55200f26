//! Python module `level_eulerian`.

use std::collections::BTreeMap;

use level_eulerian::families::{self, EquationOutcome, Family, FamilySpec};
use level_eulerian::levelposet::{self, RankCheck, Verdict};
use level_eulerian::matlin::{BinMatrix, SeriesMatrix};
use level_eulerian::ncalg::{self, Alphabet};
use level_eulerian::walkshell::{self, ShellingCertificate};
use level_eulerian::Error;
use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn alphabet(name: &str) -> PyResult<Alphabet> {
    match name {
        "ab" => Ok(Alphabet::Ab),
        "cd" => Ok(Alphabet::Cd),
        other => Err(PyValueError::new_err(format!(
            "alphabet must be 'ab' or 'cd', got {other:?}"
        ))),
    }
}

fn spec(family: &str, r: u32) -> PyResult<FamilySpec> {
    let f: Family = family.parse().map_err(err)?;
    FamilySpec::new(f, r).map_err(err)
}

fn to_rows(m: &BinMatrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&b| u8::from(b)).collect())
        .collect()
}

fn from_rows(rows: Vec<Vec<u8>>) -> PyResult<BinMatrix> {
    let refs: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
    BinMatrix::from_01_rows(&refs).map_err(err)
}

fn series_rows(s: &SeriesMatrix) -> Vec<Vec<Poly>> {
    (0..s.rows())
        .map(|i| (0..s.cols()).map(|j| Poly(s.poly(i, j).clone())).collect())
        .collect()
}

/// Non-commutative polynomial over the integers in `a, b` or `c, d`
/// (plus `t`).
#[pyclass(name = "NcPoly", module = "level_eulerian", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct Poly(ncalg::NcPoly);

#[pymethods]
impl Poly {
    /// `NcPoly("cc + 2*d")`; the alphabet is inferred unless given.
    #[new]
    #[pyo3(signature = (text, alphabet = None))]
    fn new(text: &str, alphabet: Option<&str>) -> PyResult<Self> {
        let p = match alphabet {
            Some(a) => ncalg::NcPoly::parse_in(self::alphabet(a)?, text),
            None => text.parse(),
        };
        p.map(Poly).map_err(err)
    }

    #[getter]
    fn alphabet(&self) -> String {
        self.0.alphabet().to_string()
    }

    /// Highest degree, `None` for zero.
    #[getter]
    fn degree(&self) -> Option<u32> {
        match self.0.degree() {
            ncalg::Degree::Finite(d) => Some(d),
            ncalg::Degree::NegInfinity => None,
        }
    }

    fn terms(&self) -> BTreeMap<String, BigInt> {
        self.0.terms().map(|(w, c)| (w.to_string(), c.clone())).collect()
    }

    fn coeff(&self, word: &str) -> PyResult<BigInt> {
        let w = ncalg::Word::parse(word).map_err(err)?;
        Ok(self.0.coeff(&w))
    }

    fn delta(&self) -> PyResult<Poly> {
        self.0.delta().map(Poly).map_err(err)
    }

    fn reverse(&self) -> Poly {
        Poly(self.0.reverse())
    }

    /// Expand `c = a + b`, `d = ab + ba`.
    fn to_ab(&self) -> PyResult<Poly> {
        match self.0.alphabet() {
            Alphabet::Ab => Ok(self.clone()),
            Alphabet::Cd => self.0.cd_to_ab().map(Poly).map_err(err),
        }
    }

    /// Rewrite in `c, d`; raises if some graded piece is outside the cd-span.
    fn to_cd(&self) -> PyResult<Poly> {
        match self.0.alphabet() {
            Alphabet::Cd => Ok(self.clone()),
            Alphabet::Ab => ncalg::ab_to_cd_graded(&self.0).map(Poly).map_err(err),
        }
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        self.0.try_add(&other.0).map(Poly).map_err(err)
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        self.0.try_sub(&other.0).map(Poly).map_err(err)
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        self.0.try_mul(&other.0).map(Poly).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "NcPoly({:?}, alphabet={:?})",
            self.0.to_string(),
            self.0.alphabet().to_string()
        )
    }
}

/// Level poset of a square 0,1-matrix.
#[pyclass(name = "LevelPoset", module = "level_eulerian", frozen)]
struct Poset(levelposet::LevelPoset);

#[pymethods]
impl Poset {
    #[new]
    fn new(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        levelposet::LevelPoset::new(from_rows(rows)?).map(Poset).map_err(err)
    }

    /// `LevelPoset.family("M", 2)`.
    #[staticmethod]
    fn family(family: &str, r: u32) -> PyResult<Self> {
        let m = families::family_matrix(spec(family, r)?);
        levelposet::LevelPoset::new(m).map(Poset).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn matrix(&self) -> Vec<Vec<u8>> {
        to_rows(self.0.matrix())
    }

    /// Least `k` with `Bin(M^k)` all ones, `None` if not primitive.
    #[getter]
    fn exponent(&self) -> Option<u32> {
        self.0.exponent()
    }

    fn leq(&self, x: (usize, i64), y: (usize, i64)) -> bool {
        self.0.leq(x, y)
    }

    /// Whether the alternating sum at even rank `p` vanishes.
    fn eulerian_rank(&self, p: u32) -> PyResult<bool> {
        levelposet::eulerian_rank_check(&self.0, p)
            .map(|c| c.passed())
            .map_err(err)
    }

    fn certificate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let cert = levelposet::eulerian_certificate(&self.0).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("exponent", cert.exponent)?;
        d.set_item("row_sums", cert.row_sums)?;
        d.set_item("col_sums", cert.col_sums)?;
        d.set_item("target_sum", cert.target_sum)?;
        d.set_item("uniform_sums", cert.uniform_sums)?;
        d.set_item("square_vanishes", cert.square_vanishes)?;
        let direct: Vec<(u32, bool)> = cert
            .direct
            .iter()
            .map(|(p, c)| (*p, matches!(c, RankCheck::Pass)))
            .collect();
        d.set_item("direct", direct)?;
        match cert.verdict {
            Verdict::Certified => {
                d.set_item("certified", true)?;
                d.set_item("fails_at_rank", py.None())?;
            }
            Verdict::FailsAtRank { rank } => {
                d.set_item("certified", false)?;
                d.set_item("fails_at_rank", rank)?;
            }
        }
        Ok(d)
    }

    /// Flag f-vector of `[(i,0),(j,p)]`, keyed by rank tuples.
    fn flag_vector<'py>(&self, py: Python<'py>, i: usize, j: usize, p: u32) -> PyResult<Bound<'py, PyDict>> {
        let fv = self.0.interval(i, j, p).map_err(err)?.flag_vector();
        let d = PyDict::new(py);
        for (ranks, f) in fv.entries {
            d.set_item(PyTuple::new(py, ranks)?, f)?;
        }
        Ok(d)
    }

    fn ab_index(&self, i: usize, j: usize, p: u32) -> PyResult<Poly> {
        self.0
            .interval(i, j, p)
            .and_then(|iv| iv.ab_index())
            .map(Poly)
            .map_err(err)
    }

    fn cd_index(&self, i: usize, j: usize, p: u32) -> PyResult<Poly> {
        self.0
            .interval(i, j, p)
            .and_then(|iv| iv.cd_index())
            .map(Poly)
            .map_err(err)
    }

    /// Truncated series matrix in the ab alphabet; `route` is
    /// `"intervals"` or `"automaton"`.
    #[pyo3(signature = (cutoff, route = "intervals"))]
    fn psi(&self, cutoff: u32, route: &str) -> PyResult<Vec<Vec<Poly>>> {
        let s = match route {
            "intervals" => levelposet::psi_truncated(&self.0, cutoff),
            "automaton" => levelposet::psi_automaton(&self.0, cutoff),
            other => return Err(PyValueError::new_err(format!("unknown route {other:?}"))),
        };
        Ok(series_rows(&s))
    }
}

#[pyfunction]
fn family_matrix(family: &str, r: u32) -> PyResult<Vec<Vec<u8>>> {
    Ok(to_rows(&families::family_matrix(spec(family, r)?)))
}

/// Closed-form cd series matrix of a family member.
#[pyfunction]
fn closed_form(family: &str, r: u32, cutoff: u32) -> PyResult<Vec<Vec<Poly>>> {
    Ok(series_rows(&families::closed_form_psi(spec(family, r)?, cutoff)))
}

/// Block relations, both series equations and the crosscheck, as a dict.
#[pyfunction]
#[pyo3(signature = (family, r, degree = 6))]
fn verify_family<'py>(py: Python<'py>, family: &str, r: u32, degree: u32) -> PyResult<Bound<'py, PyDict>> {
    let spec = spec(family, r)?;
    let d = PyDict::new(py);
    let lemmas: Vec<(String, bool)> = families::verify_block_lemmas(spec)
        .into_iter()
        .map(|l| (l.relation, l.holds))
        .collect();
    d.set_item("lemmas", lemmas)?;
    let psi = families::closed_form_psi(spec, degree);
    let outcome = families::verify_series_equations(&families::family_matrix(spec), &psi, degree).map_err(err)?;
    match outcome {
        EquationOutcome::Pass => d.set_item("equations", py.None())?,
        EquationOutcome::Fail { equation, i, j, degree } => {
            d.set_item("equations", (equation.to_string(), i, j, degree))?
        }
    }
    d.set_item(
        "crosscheck",
        families::crosscheck_family(spec, degree).map_err(err)?.passed(),
    )?;
    Ok(d)
}

/// `None` when certified up to `pmax`, else `(p, [(i, j, count, [walk, walk]), ...])`
/// with walks as vertex lists.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn shellability(
    rows: Vec<Vec<u8>>,
    pmax: u32,
) -> PyResult<Option<(u32, Vec<(usize, usize, BigInt, Vec<Vec<usize>>)>)>> {
    let m = from_rows(rows)?;
    Ok(match walkshell::shellability_certificate(&m, pmax).map_err(err)? {
        ShellingCertificate::Certified { .. } => None,
        ShellingCertificate::Refuted { p, counterexamples } => Some((
            p,
            counterexamples
                .into_iter()
                .map(|c| {
                    (
                        c.i,
                        c.j,
                        c.count.into(),
                        c.witnesses.iter().map(|w| w.vertices().to_vec()).collect(),
                    )
                })
                .collect(),
        )),
    })
}

#[pymodule]
#[pyo3(name = "level_eulerian")]
fn level_eulerian_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<Poset>()?;
    m.add_function(wrap_pyfunction!(family_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(shellability, m)?)?;
    Ok(())
}
