use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// The two coefficient alphabets. `t` is shared by both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Ab,
    Cd,
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Ab => f.write_str("ab"),
            Alphabet::Cd => f.write_str("cd"),
        }
    }
}

/// A single non-commuting variable. Declaration order is the lexicographic
/// order used for canonical output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    T,
}

impl Letter {
    pub const fn degree(self) -> u32 {
        match self {
            Letter::D => 2,
            _ => 1,
        }
    }

    pub const fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
            Letter::T => 't',
        }
    }

    pub fn from_symbol(ch: char) -> Option<Letter> {
        Some(match ch {
            'a' => Letter::A,
            'b' => Letter::B,
            'c' => Letter::C,
            'd' => Letter::D,
            't' => Letter::T,
            _ => return None,
        })
    }

    /// The alphabet this letter pins down, `None` for `t`.
    pub const fn alphabet(self) -> Option<Alphabet> {
        match self {
            Letter::A | Letter::B => Some(Alphabet::Ab),
            Letter::C | Letter::D => Some(Alphabet::Cd),
            Letter::T => None,
        }
    }
}

/// A monomial in non-commuting letters.
///
/// Ordering is by total degree first and then lexicographically by letters,
/// which is the canonical term order for printing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    degree: u32,
    letters: SmallVec<[Letter; 12]>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letter(letter: Letter) -> Self {
        Word::from_letters([letter])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let letters: SmallVec<[Letter; 12]> = letters.into_iter().collect();
        let degree = letters.iter().map(|l| l.degree()).sum();
        Word { degree, letters }
    }

    /// Parses a letter string such as `"ccd"`; `"1"` is the empty word.
    /// Mixed alphabets are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "1" => return Ok(Word::empty()),
            "" => return Err(Error::Parse("empty word".into())),
            _ => {}
        }
        let letters = text
            .chars()
            .map(|ch| Letter::from_symbol(ch).ok_or_else(|| Error::Parse(format!("bad letter {ch:?} in {text:?}"))))
            .collect::<Result<SmallVec<[Letter; 12]>>>()?;
        let word = Word::from_letters(letters);
        word.alphabet()?;
        Ok(word)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    pub fn contains_t(&self) -> bool {
        self.letters.contains(&Letter::T)
    }

    /// Alphabet forced by the letters present; `None` for words made only of
    /// `t` (and the empty word).
    pub fn alphabet(&self) -> Result<Option<Alphabet>> {
        let mut found = None;
        for alpha in self.letters.iter().filter_map(|l| l.alphabet()) {
            match found {
                None => found = Some(alpha),
                Some(prev) if prev != alpha => return Err(Error::MixedAlphabet),
                _ => {}
            }
        }
        Ok(found)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            degree: self.degree + other.degree,
            letters,
        }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            degree: self.degree,
            letters,
        }
    }

    pub(crate) fn split_at(&self, pos: usize) -> (Word, Word) {
        let (l, r) = self.letters.split_at(pos);
        (
            Word::from_letters(l.iter().copied()),
            Word::from_letters(r.iter().copied()),
        )
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

/// All cd-words of the given degree, in canonical order. There are
/// Fibonacci-many of them.
pub fn cd_words(degree: u32) -> Vec<Word> {
    let mut by_degree: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    for k in 1..=degree as usize {
        let mut words = Vec::new();
        for w in &by_degree[k - 1] {
            words.push(w.concat(&Word::letter(Letter::C)));
        }
        if k >= 2 {
            for w in &by_degree[k - 2] {
                words.push(w.concat(&Word::letter(Letter::D)));
            }
        }
        by_degree.push(words);
    }
    let mut out = by_degree.swap_remove(degree as usize);
    out.sort();
    out
}

/// All ab-words of the given degree, in canonical order.
pub fn ab_words(degree: u32) -> Vec<Word> {
    (0..1u64 << degree)
        .map(|bits| {
            Word::from_letters(
                (0..degree)
                    .rev()
                    .map(|pos| if bits >> pos & 1 == 1 { Letter::B } else { Letter::A }),
            )
        })
        .collect()
}
