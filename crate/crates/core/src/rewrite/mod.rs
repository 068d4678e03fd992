//! The presentation of `IG(B)` as a rewriting system on generator words.
//!
//! A word `ē₁ ē₂ … ēₙ` is stored as the element indices `e₁ … eₙ`.
//! Contraction replaces an adjacent basic pair `ū v̄` by `(uv)‾`; expansion
//! is the reverse step. Equality in `IG(B)` is the equivalence generated by
//! both, and every equality this crate reports comes with a
//! [`RewriteCertificate`] that [`check_certificate`] replays.

mod certificate;
mod reduce;
mod search;

pub(crate) use certificate::Derivation;
pub use certificate::{check_certificate, Direction, RewriteCertificate, RewriteStep};
pub use reduce::{
    check_local_confluence, contract, expansions, normal_form, ConfluenceReport, CriticalPair,
    Rules,
};
pub use search::{bfs_equal, bounded_closure, BfsOutcome, Budget, Closure};

use std::fmt;
use std::ops::Deref;

use crate::band::{Band, Elem};
use crate::error::{Error, Result};

/// A non-empty word over the generators `ē`, `e ∈ B`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenWord(Vec<Elem>);

impl GenWord {
    pub fn new(letters: Vec<Elem>) -> Result<GenWord> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(GenWord(letters))
    }

    pub fn single(e: Elem) -> GenWord {
        GenWord(vec![e])
    }

    /// Parses space-separated element names.
    pub fn parse(b: &Band, text: &str) -> Result<GenWord> {
        let letters = text
            .split_whitespace()
            .map(|t| {
                b.index_of(t)
                    .ok_or_else(|| Error::UnknownLetter(t.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        GenWord::new(letters)
    }

    /// Fails on the first letter that is not an element of `b`.
    pub fn check(&self, b: &Band) -> Result<()> {
        match self.0.iter().find(|&&e| e >= b.len()) {
            Some(&e) => Err(Error::InvalidLetter(e)),
            None => Ok(()),
        }
    }

    pub fn letters(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Elem> {
        self.0
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GenWord(v)
    }

    pub fn render(&self, b: &Band) -> String {
        render(b, &self.0)
    }

    /// The image under the natural map `IG(B) → B`.
    pub fn evaluate(&self, b: &Band) -> Elem {
        b.product(&self.0)
    }
}

impl Deref for GenWord {
    type Target = [Elem];

    fn deref(&self) -> &[Elem] {
        &self.0
    }
}

impl fmt::Debug for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenWord{:?}", self.0)
    }
}

impl TryFrom<Vec<Elem>> for GenWord {
    type Error = Error;

    fn try_from(letters: Vec<Elem>) -> Result<GenWord> {
        GenWord::new(letters)
    }
}

/// Space-separated element names.
pub fn render(b: &Band, letters: &[Elem]) -> String {
    letters
        .iter()
        .map(|&e| b.name(e))
        .collect::<Vec<_>>()
        .join(" ")
}

/// All words of length `len` over `alphabet` letters, in lexicographic
/// order of element indices.
pub fn words_of_len(alphabet: usize, len: usize) -> impl Iterator<Item = GenWord> {
    let total = if alphabet == 0 || len == 0 {
        0
    } else {
        alphabet.pow(len as u32)
    };
    (0..total).map(move |mut code| {
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = code % alphabet;
            code /= alphabet;
        }
        GenWord(letters)
    })
}

/// All words of length `1..=max_len`, shorter first.
pub fn words_up_to(alphabet: usize, max_len: usize) -> impl Iterator<Item = GenWord> {
    (1..=max_len).flat_map(move |len| words_of_len(alphabet, len))
}
