use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Degree, NcPoly};
use super::word::{ab_words, cd_words, Alphabet, Word};
use crate::error::{Error, Result};
use crate::linsolve::ExactSolver;

/// The linear system relating degree-`n` cd-words to their ab-expansions.
///
/// Columns are cd-words, rows are ab-words; conversion solves the system
/// exactly and then re-expands to confirm there is no residual.
#[derive(Debug, Clone)]
pub struct CdBasis {
    degree: u32,
    cd_words: Vec<Word>,
    rows: BTreeMap<Word, usize>,
    solver: ExactSolver,
}

impl CdBasis {
    pub fn new(degree: u32) -> Self {
        let cd = cd_words(degree);
        let rows: BTreeMap<Word, usize> = ab_words(degree).into_iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut matrix = vec![vec![BigInt::zero(); cd.len()]; rows.len()];
        for (col, w) in cd.iter().enumerate() {
            let expanded = NcPoly::monomial(Alphabet::Cd, w.clone(), 1)
                .and_then(|m| m.cd_to_ab())
                .expect("cd-word expands");
            for (aw, c) in expanded.terms() {
                matrix[rows[aw]][col] = c.clone();
            }
        }
        let solver = ExactSolver::new(&matrix).expect("cd-word expansions are linearly independent");
        CdBasis {
            degree,
            cd_words: cd,
            rows,
            solver,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dimension(&self) -> usize {
        self.cd_words.len()
    }

    /// Rewrites a homogeneous ab-polynomial of this basis' degree in c and d.
    pub fn to_cd(&self, p: &NcPoly) -> Result<NcPoly> {
        if p.alphabet() != Alphabet::Ab {
            return Err(Error::AlphabetMismatch {
                left: Alphabet::Ab,
                right: p.alphabet(),
            });
        }
        if p.contains_t() {
            return Err(Error::ContainsT);
        }
        let mut rhs = vec![BigInt::zero(); self.rows.len()];
        for (w, c) in p.terms() {
            match self.rows.get(w) {
                Some(&r) => rhs[r] = c.clone(),
                None => return Err(Error::NotHomogeneous),
            }
        }
        let not_in_span = Error::NotInCdSpan { degree: self.degree };
        let mut terms = Vec::new();
        for (x, w) in self.solver.solve(&rhs).into_iter().zip(&self.cd_words) {
            if !x.is_integer() {
                return Err(not_in_span);
            }
            terms.push((w.clone(), x.to_integer()));
        }
        let q = NcPoly::from_terms(Alphabet::Cd, terms)?;
        if q.cd_to_ab()? != *p {
            return Err(not_in_span);
        }
        Ok(q)
    }
}

/// Rewrites a homogeneous, `t`-free ab-polynomial in terms of `c = a + b`
/// and `d = ab + ba`, or reports that no such rewriting exists.
pub fn ab_to_cd(p: &NcPoly) -> Result<NcPoly> {
    if p.alphabet() != Alphabet::Ab {
        return Err(Error::AlphabetMismatch {
            left: Alphabet::Ab,
            right: p.alphabet(),
        });
    }
    if p.contains_t() {
        return Err(Error::ContainsT);
    }
    match p.degree() {
        Degree::NegInfinity => Ok(NcPoly::zero(Alphabet::Cd)),
        Degree::Finite(_) if !p.is_homogeneous() => Err(Error::NotHomogeneous),
        Degree::Finite(n) => CdBasis::new(n).to_cd(p),
    }
}

/// Degree-by-degree [`ab_to_cd`] for inhomogeneous input such as a
/// truncated series.
pub fn ab_to_cd_graded(p: &NcPoly) -> Result<NcPoly> {
    let mut out = NcPoly::zero(Alphabet::Cd);
    if let Degree::Finite(top) = p.degree() {
        for k in 0..=top {
            let part = p.homogeneous_part(k);
            if !part.is_zero() {
                out = out.try_add(&ab_to_cd(&part)?)?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NcPoly {
        s.parse().unwrap()
    }

    #[test]
    fn conversion_examples() {
        assert_eq!(ab_to_cd(&p("a + b")).unwrap(), p("c"));
        assert_eq!(ab_to_cd(&p("aa + 2*ab + 2*ba + bb")).unwrap(), p("cc + d"));
        assert_eq!(ab_to_cd(&p("a")), Err(Error::NotInCdSpan { degree: 1 }));
    }

    #[test]
    fn preconditions() {
        assert_eq!(ab_to_cd(&p("a + bb")), Err(Error::NotHomogeneous));
        assert_eq!(ab_to_cd(&p("at + bt")), Err(Error::ContainsT));
        assert!(matches!(ab_to_cd(&p("c")), Err(Error::AlphabetMismatch { .. })));
        assert_eq!(
            ab_to_cd(&NcPoly::zero(Alphabet::Ab)).unwrap(),
            NcPoly::zero(Alphabet::Cd)
        );
        assert_eq!(
            ab_to_cd(&NcPoly::constant(Alphabet::Ab, 5)).unwrap(),
            NcPoly::constant(Alphabet::Cd, 5)
        );
    }

    #[test]
    fn graded_conversion() {
        let q = p("1 + c + cc + d + 3*cd - dc");
        assert_eq!(ab_to_cd_graded(&q.cd_to_ab().unwrap()).unwrap(), q);
    }

    #[test]
    fn every_cd_word_round_trips_up_to_degree_eight() {
        for n in 0..=8 {
            let basis = CdBasis::new(n);
            for w in cd_words(n) {
                let q = NcPoly::monomial(Alphabet::Cd, w, 1).unwrap();
                assert_eq!(basis.to_cd(&q.cd_to_ab().unwrap()).unwrap(), q);
            }
        }
    }
}
