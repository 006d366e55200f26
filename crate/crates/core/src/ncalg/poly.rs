use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::word::{Alphabet, Letter, Word};
use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial has its own sentinel that
/// sorts below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

/// A finitely supported integer combination of words over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, BigInt>,
}

impl NcPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        NcPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        NcPoly::constant(alphabet, BigInt::one())
    }

    pub fn constant(alphabet: Alphabet, value: impl Into<BigInt>) -> Self {
        let mut p = NcPoly::zero(alphabet);
        p.add_term(Word::empty(), value.into());
        p
    }

    /// The polynomial consisting of a single letter. `t` is accepted in
    /// either alphabet.
    pub fn var(alphabet: Alphabet, letter: Letter) -> Result<Self> {
        NcPoly::monomial(alphabet, Word::letter(letter), 1)
    }

    pub fn monomial(alphabet: Alphabet, word: Word, coeff: impl Into<BigInt>) -> Result<Self> {
        check_word(alphabet, &word)?;
        let mut p = NcPoly::zero(alphabet);
        p.add_term(word, coeff.into());
        Ok(p)
    }

    pub fn from_terms<I>(alphabet: Alphabet, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, BigInt)>,
    {
        let mut p = NcPoly::zero(alphabet);
        for (w, c) in terms {
            check_word(alphabet, &w)?;
            p.add_term(w, c);
        }
        Ok(p)
    }

    /// Parses the canonical text form (`"cc + 2*d"`, `"a - b"`, `"0"`) in a
    /// fixed alphabet.
    pub fn parse_in(alphabet: Alphabet, text: &str) -> Result<Self> {
        let mut p = NcPoly::zero(alphabet);
        for (coeff, word) in parse_terms(text)? {
            check_word(alphabet, &word)?;
            p.add_term(word, coeff);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Terms in canonical (degree, lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &Word) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |w| Degree::Finite(w.degree()))
    }

    pub fn min_degree(&self) -> Degree {
        self.terms
            .keys()
            .next()
            .map_or(Degree::NegInfinity, |w| Degree::Finite(w.degree()))
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Word::empty())
    }

    pub fn contains_t(&self) -> bool {
        self.terms.keys().any(Word::contains_t)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.degree()
    }

    pub fn homogeneous_part(&self, degree: u32) -> NcPoly {
        NcPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every word of degree above `cutoff`.
    pub fn truncated(&self, cutoff: u32) -> NcPoly {
        NcPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .take_while(|(w, _)| w.degree() <= cutoff)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_alphabet(&self, other: &NcPoly) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &NcPoly) -> Result<NcPoly> {
        self.check_alphabet(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &NcPoly) -> Result<NcPoly> {
        self.check_alphabet(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &NcPoly) -> Result<NcPoly> {
        self.check_alphabet(rhs)?;
        Ok(self.mul_upto(rhs, None))
    }

    /// Product keeping only words of degree at most `cutoff`.
    pub(crate) fn mul_upto(&self, rhs: &NcPoly, cutoff: Option<u32>) -> NcPoly {
        let mut out = NcPoly::zero(self.alphabet);
        for (lw, lc) in &self.terms {
            let budget = match cutoff {
                Some(cut) if lw.degree() > cut => break,
                Some(cut) => Some(cut - lw.degree()),
                None => None,
            };
            for (rw, rc) in &rhs.terms {
                if budget.is_some_and(|b| rw.degree() > b) {
                    break;
                }
                out.add_term(lw.concat(rw), lc * rc);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> NcPoly {
        if factor.is_zero() {
            return NcPoly::zero(self.alphabet);
        }
        NcPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * factor)).collect(),
        }
    }

    /// Word reversal `u1 u2 ... uk -> uk ... u2 u1`, extended linearly.
    pub fn reverse(&self) -> NcPoly {
        let mut out = NcPoly::zero(self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.reversed(), c.clone());
        }
        out
    }

    /// The derivation with `a, b -> t`, `c -> 2t`, `d -> ct + tc`.
    ///
    /// Every output word carries exactly one `t`; degree is preserved.
    pub fn delta(&self) -> Result<NcPoly> {
        if self.contains_t() {
            return Err(Error::ContainsT);
        }
        let t = Word::letter(Letter::T);
        let ct = Word::from_letters([Letter::C, Letter::T]);
        let tc = Word::from_letters([Letter::T, Letter::C]);
        let mut out = NcPoly::zero(self.alphabet);
        for (w, coeff) in &self.terms {
            for pos in 0..w.len() {
                let (prefix, rest) = w.split_at(pos);
                let (_, suffix) = rest.split_at(1);
                let images: &[(&Word, i32)] = match w.letters()[pos] {
                    Letter::A | Letter::B => &[(&t, 1)],
                    Letter::C => &[(&t, 2)],
                    Letter::D => &[(&ct, 1), (&tc, 1)],
                    Letter::T => unreachable!(),
                };
                for &(img, mult) in images {
                    out.add_term(prefix.concat(img).concat(&suffix), coeff * mult);
                }
            }
        }
        Ok(out)
    }

    /// Applies the algebra homomorphism sending each letter to `image(letter)`
    /// (polynomials in `target`), keeping words of degree at most `cutoff`.
    pub fn substitute<F>(&self, target: Alphabet, mut image: F, cutoff: Option<u32>) -> Result<NcPoly>
    where
        F: FnMut(Letter) -> Result<NcPoly>,
    {
        let mut cache: BTreeMap<Letter, NcPoly> = BTreeMap::new();
        let mut out = NcPoly::zero(target);
        for (w, coeff) in &self.terms {
            let mut acc = NcPoly::constant(target, coeff.clone());
            for &letter in w.letters() {
                if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(letter) {
                    let img = image(letter)?;
                    if img.alphabet != target {
                        return Err(Error::AlphabetMismatch {
                            left: target,
                            right: img.alphabet,
                        });
                    }
                    e.insert(img);
                }
                acc = acc.mul_upto(&cache[&letter], cutoff);
                if acc.is_zero() {
                    break;
                }
            }
            for (w, c) in acc.terms {
                out.add_term(w, c);
            }
        }
        Ok(out)
    }

    /// Expands `c -> a + b`, `d -> ab + ba`; `t` passes through.
    pub fn cd_to_ab(&self) -> Result<NcPoly> {
        if self.alphabet != Alphabet::Cd {
            return Err(Error::AlphabetMismatch {
                left: Alphabet::Cd,
                right: self.alphabet,
            });
        }
        self.substitute(Alphabet::Ab, cd_letter_image, None)
    }

    /// Sets `a = t, b = 0` (ab alphabet) or `c = t, d = 0` (cd alphabet) and
    /// returns the coefficients of the resulting univariate series, indexed
    /// by the power of `t`.
    pub fn substitute_line(&self) -> Result<Vec<BigInt>> {
        if self.contains_t() {
            return Err(Error::ContainsT);
        }
        let survivor = match self.alphabet {
            Alphabet::Ab => Letter::A,
            Alphabet::Cd => Letter::C,
        };
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (w, c) in &self.terms {
            if w.letters().iter().all(|&l| l == survivor) {
                let k = w.len();
                if coeffs.len() <= k {
                    coeffs.resize(k + 1, BigInt::zero());
                }
                coeffs[k] += c;
            }
        }
        Ok(coeffs)
    }

    /// Structured form: a JSON object from word string to integer coefficient.
    pub fn structured(&self) -> serde_json::Value {
        let map = self
            .terms
            .iter()
            .map(|(w, c)| {
                let num = serde_json::Number::from_str(&c.to_string()).expect("integer literal");
                (w.to_string(), serde_json::Value::Number(num))
            })
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_structured(alphabet: Alphabet, value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("expected an object of word -> coefficient".into()))?;
        let mut terms = Vec::with_capacity(obj.len());
        for (key, v) in obj {
            let n = match v {
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::String(s) => s.clone(),
                _ => return Err(Error::Parse(format!("bad coefficient for {key:?}"))),
            };
            let c = BigInt::from_str(&n).map_err(|e| Error::Parse(format!("{key:?}: {e}")))?;
            terms.push((Word::parse(key)?, c));
        }
        NcPoly::from_terms(alphabet, terms)
    }
}

pub(crate) fn cd_letter_image(letter: Letter) -> Result<NcPoly> {
    Ok(match letter {
        Letter::C => NcPoly::parse_in(Alphabet::Ab, "a + b")?,
        Letter::D => NcPoly::parse_in(Alphabet::Ab, "ab + ba")?,
        Letter::T => NcPoly::var(Alphabet::Ab, Letter::T)?,
        Letter::A | Letter::B => return Err(Error::MixedAlphabet),
    })
}

fn check_word(alphabet: Alphabet, word: &Word) -> Result<()> {
    match word.alphabet()? {
        Some(a) if a != alphabet => Err(Error::AlphabetMismatch {
            left: alphabet,
            right: a,
        }),
        _ => Ok(()),
    }
}

fn parse_terms(text: &str) -> Result<Vec<(BigInt, Word)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if compact == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    let mut first = true;
    while !rest.is_empty() {
        let negative = match rest.as_bytes()[0] {
            b'+' if !first => {
                rest = &rest[1..];
                false
            }
            b'-' => {
                rest = &rest[1..];
                true
            }
            _ if first => false,
            _ => return Err(Error::Parse(format!("expected '+' or '-' in {text:?}"))),
        };
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        rest = &rest[end..];
        if term.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {text:?}")));
        }
        let (coeff, word) = match term.split_once('*') {
            Some((c, w)) => (parse_int(c)?, Word::parse(w)?),
            None if term.bytes().all(|b| b.is_ascii_digit()) && !term.is_empty() => (parse_int(term)?, Word::empty()),
            None => (BigInt::one(), Word::parse(term)?),
        };
        out.push((if negative { -coeff } else { coeff }, word));
    }
    Ok(out)
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|e| Error::Parse(format!("bad coefficient {s:?}: {e}")))
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for NcPoly {
    type Err = Error;

    /// Infers the alphabet from the letters present; letter-free input (or
    /// `t`-only input) defaults to the cd alphabet.
    fn from_str(s: &str) -> Result<Self> {
        let mut alphabet = None;
        for (_, w) in parse_terms(s)? {
            if let Some(a) = w.alphabet()? {
                if alphabet.is_some_and(|prev| prev != a) {
                    return Err(Error::MixedAlphabet);
                }
                alphabet = Some(a);
            }
        }
        NcPoly::parse_in(alphabet.unwrap_or(Alphabet::Cd), s)
    }
}

impl std::ops::Neg for &NcPoly {
    type Output = NcPoly;

    fn neg(self) -> NcPoly {
        NcPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}
