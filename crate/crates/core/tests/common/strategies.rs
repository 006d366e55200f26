use level_eulerian::matlin::{BinMatrix, Matrix, SeriesMatrix};
use level_eulerian::ncalg::{Alphabet, Letter, NcPoly, Word};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Deterministic runner: fixed ChaCha seed, no failure persistence.
pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn letters(alphabet: Alphabet) -> Vec<Letter> {
    match alphabet {
        Alphabet::Ab => vec![Letter::A, Letter::B],
        Alphabet::Cd => vec![Letter::C, Letter::D],
    }
}

pub fn word(alphabet: Alphabet, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(letters(alphabet)), 0..=max_len).prop_map(Word::from_letters)
}

pub fn poly(alphabet: Alphabet, max_len: usize, max_terms: usize) -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((word(alphabet, max_len), -3i64..=3), 0..=max_terms)
        .prop_map(move |terms| NcPoly::from_terms(alphabet, terms.into_iter().map(|(w, c)| (w, c.into()))).unwrap())
}

/// Polynomials without constant term.
pub fn poly_no_constant(alphabet: Alphabet, max_len: usize, max_terms: usize) -> impl Strategy<Value = NcPoly> {
    poly(alphabet, max_len, max_terms).prop_map(|p| {
        let c = p.constant_term();
        p.try_sub(&NcPoly::constant(p.alphabet(), c)).unwrap()
    })
}

/// Homogeneous cd polynomial of the given degree.
pub fn homogeneous_cd(degree: u32) -> impl Strategy<Value = NcPoly> {
    let words = level_eulerian::ncalg::cd_words(degree);
    let k = words.len();
    prop::collection::vec(-4i64..=4, k).prop_map(move |coeffs| {
        NcPoly::from_terms(
            Alphabet::Cd,
            words.clone().into_iter().zip(coeffs.into_iter().map(Into::into)),
        )
        .unwrap()
    })
}

pub fn bin_matrix(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BinMatrix> {
    n.prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n)
            .prop_map(move |bits| BinMatrix::from_fn(n, n, |i, j| bits[i * n + j]))
    })
}

pub fn series_matrix(n: usize, alphabet: Alphabet, cutoff: u32) -> impl Strategy<Value = SeriesMatrix> {
    prop::collection::vec(poly(alphabet, 3, 3), n * n).prop_map(move |ps| {
        SeriesMatrix::new(alphabet, cutoff, Matrix::from_fn(n, n, |i, j| ps[i * n + j].clone())).unwrap()
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}
