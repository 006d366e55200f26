//! Free non-commutative polynomials and truncated series over `{a, b, t}`
//! and `{c, d, t}` with integer coefficients.
//!
//! `t` has degree 1, `d` has degree 2, every other letter degree 1, so the
//! derivation `delta` preserves degree.

mod basis;
mod poly;
mod series;
mod word;

pub use basis::{ab_to_cd, ab_to_cd_graded, CdBasis};
pub use poly::{Degree, NcPoly};
pub use series::TruncSeries;
pub use word::{ab_words, cd_words, Alphabet, Letter, Word};
