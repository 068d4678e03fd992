use std::fmt::Write as _;

use super::{render, GenWord};
use crate::band::{Band, Elem};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `ū v̄ → (uv)‾`
    Contraction,
    /// `(uv)‾ → ū v̄`
    Expansion,
}

/// One elementary step. `position` is the 0-based index of `ū` (for a
/// contraction) or of `(uv)‾` (for an expansion).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub position: usize,
    pub direction: Direction,
    pub pair: (Elem, Elem),
    pub product: Elem,
}

impl RewriteStep {
    pub fn contraction(position: usize, u: Elem, v: Elem, product: Elem) -> RewriteStep {
        RewriteStep {
            position,
            direction: Direction::Contraction,
            pair: (u, v),
            product,
        }
    }

    pub fn expansion(position: usize, u: Elem, v: Elem, product: Elem) -> RewriteStep {
        RewriteStep {
            position,
            direction: Direction::Expansion,
            pair: (u, v),
            product,
        }
    }

    /// The step undoing this one.
    pub fn inverse(&self) -> RewriteStep {
        let direction = match self.direction {
            Direction::Contraction => Direction::Expansion,
            Direction::Expansion => Direction::Contraction,
        };
        RewriteStep { direction, ..*self }
    }

    pub fn shifted(&self, by: usize) -> RewriteStep {
        RewriteStep {
            position: self.position + by,
            ..*self
        }
    }

    /// True when `(u, v)` is basic in `b` with `uv = product`.
    pub fn is_valid_rule(&self, b: &Band) -> bool {
        let (u, v) = self.pair;
        let n = b.len();
        u < n
            && v < n
            && self.product < n
            && b.is_basic_pair(u, v).is_some()
            && b.mul(u, v) == self.product
    }

    /// Applies the step to `w`, or `None` if it does not match.
    pub fn apply(&self, b: &Band, w: &[Elem]) -> Option<Vec<Elem>> {
        if !self.is_valid_rule(b) {
            return None;
        }
        let p = self.position;
        let (u, v) = self.pair;
        match self.direction {
            Direction::Contraction => {
                if p + 1 >= w.len() || w[p] != u || w[p + 1] != v {
                    return None;
                }
                let mut out = Vec::with_capacity(w.len() - 1);
                out.extend_from_slice(&w[..p]);
                out.push(self.product);
                out.extend_from_slice(&w[p + 2..]);
                Some(out)
            }
            Direction::Expansion => {
                if p >= w.len() || w[p] != self.product {
                    return None;
                }
                let mut out = Vec::with_capacity(w.len() + 1);
                out.extend_from_slice(&w[..p]);
                out.push(u);
                out.push(v);
                out.extend_from_slice(&w[p + 1..]);
                Some(out)
            }
        }
    }

    pub fn to_line(&self, b: &Band) -> String {
        let (u, v) = self.pair;
        match self.direction {
            Direction::Contraction => format!(
                "{} C {} {} -> {}",
                self.position,
                b.name(u),
                b.name(v),
                b.name(self.product)
            ),
            Direction::Expansion => format!(
                "{} E {} -> {} {}",
                self.position,
                b.name(self.product),
                b.name(u),
                b.name(v)
            ),
        }
    }
}

/// A replayable derivation `start ↔ … ↔ end` in `IG(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteCertificate {
    pub start: GenWord,
    pub steps: Vec<RewriteStep>,
    pub end: GenWord,
}

impl RewriteCertificate {
    pub fn identity(w: GenWord) -> RewriteCertificate {
        RewriteCertificate {
            start: w.clone(),
            steps: Vec::new(),
            end: w,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The derivation read backwards, from `end` to `start`.
    pub fn reversed(&self) -> RewriteCertificate {
        RewriteCertificate {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(RewriteStep::inverse).collect(),
            end: self.start.clone(),
        }
    }

    /// Concatenation; `self.end` must equal `next.start`.
    pub fn then(mut self, next: RewriteCertificate) -> RewriteCertificate {
        assert_eq!(self.end, next.start, "certificates do not compose");
        self.steps.extend(next.steps);
        self.end = next.end;
        self
    }

    /// The same derivation performed inside `prefix · _ · suffix`.
    pub fn embed(&self, prefix: &[Elem], suffix: &[Elem]) -> RewriteCertificate {
        let wrap = |w: &GenWord| {
            let mut v = prefix.to_vec();
            v.extend_from_slice(w);
            v.extend_from_slice(suffix);
            GenWord(v)
        };
        RewriteCertificate {
            start: wrap(&self.start),
            steps: self.steps.iter().map(|s| s.shifted(prefix.len())).collect(),
            end: wrap(&self.end),
        }
    }

    /// Every intermediate word, `start` and `end` included, or the index of
    /// the first step that fails to apply.
    pub fn replay(&self, b: &Band) -> std::result::Result<Vec<GenWord>, usize> {
        let mut words = vec![self.start.clone()];
        let mut cur = self.start.0.clone();
        for (i, step) in self.steps.iter().enumerate() {
            cur = step.apply(b, &cur).ok_or(i)?;
            words.push(GenWord(cur.clone()));
        }
        if cur != self.end.0 {
            return Err(self.steps.len());
        }
        Ok(words)
    }

    /// Length of the longest word in the derivation.
    pub fn max_word_len(&self, b: &Band) -> Option<usize> {
        self.replay(b)
            .ok()
            .map(|ws| ws.iter().map(|w| w.len()).max().unwrap())
    }

    /// Line-oriented text:
    ///
    /// ```text
    /// start: c d
    /// 1 E d -> a d
    /// 0 C c a -> b
    /// end: b d
    /// ```
    pub fn to_text(&self, b: &Band) -> String {
        let mut out = format!("start: {}\n", render(b, &self.start));
        for s in &self.steps {
            let _ = writeln!(out, "{}", s.to_line(b));
        }
        let _ = writeln!(out, "end: {}", render(b, &self.end));
        out
    }

    /// Parses [`RewriteCertificate::to_text`] output. Only syntax is
    /// checked here; use [`check_certificate`] for validity.
    pub fn parse(b: &Band, text: &str) -> Result<RewriteCertificate> {
        let bad = |line: usize, message: String| Error::Certificate { line, message };
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let word =
            |line: usize, s: &str| GenWord::parse(b, s).map_err(|e| bad(line, e.to_string()));
        let elem = |line: usize, s: &str| {
            b.index_of(s)
                .ok_or_else(|| bad(line, format!("unknown element `{s}`")))
        };
        let (&(first_no, first), rest) = lines
            .split_first()
            .ok_or_else(|| bad(1, "empty certificate".into()))?;
        let start = word(
            first_no,
            first
                .strip_prefix("start:")
                .ok_or_else(|| bad(first_no, "expected `start:`".into()))?,
        )?;
        let (&(last_no, last), middle) = rest
            .split_last()
            .ok_or_else(|| bad(first_no + 1, "missing `end:`".into()))?;
        let end = word(
            last_no,
            last.strip_prefix("end:")
                .ok_or_else(|| bad(last_no, "expected `end:`".into()))?,
        )?;
        let mut steps = Vec::with_capacity(middle.len());
        for &(no, line) in middle {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let position: usize = toks
                .first()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad(no, "expected a position".into()))?;
            let step = match toks.as_slice() {
                [_, "C", u, v, "->", uv] => {
                    RewriteStep::contraction(position, elem(no, u)?, elem(no, v)?, elem(no, uv)?)
                }
                [_, "E", uv, "->", u, v] => {
                    RewriteStep::expansion(position, elem(no, u)?, elem(no, v)?, elem(no, uv)?)
                }
                _ => return Err(bad(no, format!("malformed step `{line}`"))),
            };
            steps.push(step);
        }
        Ok(RewriteCertificate { start, steps, end })
    }
}

/// True iff replaying the steps from `start` produces `end`, every step
/// being a valid contraction or expansion.
pub fn check_certificate(b: &Band, c: &RewriteCertificate) -> bool {
    c.start.check(b).is_ok() && c.end.check(b).is_ok() && c.replay(b).is_ok()
}

/// Builds a certificate step by step; every step is checked as it is
/// recorded, so a malformed derivation is caught where it is made.
pub(crate) struct Derivation<'a> {
    b: &'a Band,
    start: Vec<Elem>,
    word: Vec<Elem>,
    steps: Vec<RewriteStep>,
}

impl<'a> Derivation<'a> {
    pub fn new(b: &'a Band, start: &[Elem]) -> Self {
        Derivation {
            b,
            start: start.to_vec(),
            word: start.to_vec(),
            steps: Vec::new(),
        }
    }

    pub fn word(&self) -> &[Elem] {
        &self.word
    }

    fn push(&mut self, step: RewriteStep) {
        self.word = step
            .apply(self.b, &self.word)
            .unwrap_or_else(|| panic!("invalid rewrite step {step:?} on {:?}", self.word));
        self.steps.push(step);
    }

    /// Contracts the pair at `pos`.
    pub fn contract(&mut self, pos: usize) {
        let (u, v) = (self.word[pos], self.word[pos + 1]);
        self.push(RewriteStep::contraction(pos, u, v, self.b.mul(u, v)));
    }

    /// Replaces the letter at `pos` by `ū v̄`.
    pub fn expand(&mut self, pos: usize, u: Elem, v: Elem) {
        self.push(RewriteStep::expansion(pos, u, v, self.b.mul(u, v)));
    }

    pub fn finish(self) -> RewriteCertificate {
        RewriteCertificate {
            start: GenWord(self.start),
            steps: self.steps,
            end: GenWord(self.word),
        }
    }
}
