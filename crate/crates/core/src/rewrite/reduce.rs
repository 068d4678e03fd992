use rustc_hash::FxHashSet;

use super::{Derivation, GenWord, RewriteCertificate};
use crate::band::{Band, Elem};
use crate::error::{Error, Result};

/// The rule set of the presentation, tabulated: which adjacent pairs
/// contract and how each letter factors as a basic product.
#[derive(Clone, Debug)]
pub struct Rules {
    n: usize,
    contract: Vec<Option<Elem>>,
    factors: Vec<Vec<(Elem, Elem)>>,
}

impl Rules {
    pub fn new(b: &Band) -> Rules {
        let n = b.len();
        let mut contract = vec![None; n * n];
        let mut factors = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if b.is_basic_pair(u, v).is_some() {
                    let uv = b.mul(u, v);
                    contract[u * n + v] = Some(uv);
                    factors[uv].push((u, v));
                }
            }
        }
        Rules {
            n,
            contract,
            factors,
        }
    }

    /// `Some(uv)` when `(u, v)` is a basic pair.
    #[inline]
    pub fn contraction(&self, u: Elem, v: Elem) -> Option<Elem> {
        self.contract[u * self.n + v]
    }

    /// All basic pairs `(u, v)` with `uv = g`, in lexicographic order.
    #[inline]
    pub fn factors(&self, g: Elem) -> &[(Elem, Elem)] {
        &self.factors[g]
    }

    pub fn is_irreducible(&self, w: &[Elem]) -> bool {
        w.windows(2).all(|p| self.contraction(p[0], p[1]).is_none())
    }
}

/// Contracts the pair at `pos` if it is basic.
pub fn contract(b: &Band, w: &GenWord, pos: usize) -> Result<Option<GenWord>> {
    if pos + 1 >= w.len() {
        return Err(Error::PositionOutOfRange {
            position: pos,
            len: w.len(),
        });
    }
    let (u, v) = (w[pos], w[pos + 1]);
    Ok(b.is_basic_pair(u, v).map(|(uv, _)| {
        let mut out = w[..pos].to_vec();
        out.push(uv);
        out.extend_from_slice(&w[pos + 2..]);
        GenWord(out)
    }))
}

/// Every word obtained by replacing the letter at `pos` with `ū v̄` for a
/// basic pair `(u, v)` with `uv` equal to that letter.
pub fn expansions(b: &Band, w: &GenWord, pos: usize) -> Result<Vec<GenWord>> {
    if pos >= w.len() {
        return Err(Error::PositionOutOfRange {
            position: pos,
            len: w.len(),
        });
    }
    let rules = Rules::new(b);
    Ok(rules
        .factors(w[pos])
        .iter()
        .map(|&(u, v)| {
            let mut out = w[..pos].to_vec();
            out.push(u);
            out.push(v);
            out.extend_from_slice(&w[pos + 1..]);
            GenWord(out)
        })
        .collect())
}

/// Contracts the leftmost redex until none is left.
pub fn normal_form(b: &Band, w: &GenWord) -> (GenWord, RewriteCertificate) {
    let mut d = Derivation::new(b, w);
    let mut i = 0;
    while i + 1 < d.word().len() {
        let (u, v) = (d.word()[i], d.word()[i + 1]);
        if b.is_basic_pair(u, v).is_some() {
            d.contract(i);
            // The new letter may now form a redex with its left neighbour,
            // which is the leftmost candidate.
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    let c = d.finish();
    (c.end.clone(), c)
}

/// A length-3 word with two overlapping redexes whose results do not join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub word: GenWord,
    /// Normal form reached by contracting the left pair first.
    pub left: GenWord,
    /// Normal form reached by contracting the right pair first.
    pub right: GenWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    /// Number of critical words examined.
    pub critical_words: usize,
    /// The first non-joinable critical word in lexicographic order.
    pub counterexample: Option<CriticalPair>,
    /// Every non-joinable critical word, in lexicographic order.
    pub all_counterexamples: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn is_locally_confluent(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Words reachable from `w` by contractions alone, `w` included.
fn contraction_descendants(rules: &Rules, w: &[Elem]) -> FxHashSet<Vec<Elem>> {
    let mut seen = FxHashSet::default();
    let mut stack = vec![w.to_vec()];
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        for i in 0..cur.len().saturating_sub(1) {
            if let Some(p) = rules.contraction(cur[i], cur[i + 1]) {
                let mut next = cur[..i].to_vec();
                next.push(p);
                next.extend_from_slice(&cur[i + 2..]);
                stack.push(next);
            }
        }
    }
    seen
}

/// Examines every `ē f̄ ḡ` with `(e, f)` and `(f, g)` basic and checks that
/// the two one-step results have a common contraction descendant.
pub fn check_local_confluence(b: &Band) -> ConfluenceReport {
    let rules = Rules::new(b);
    let n = b.len();
    let mut critical_words = 0;
    let mut all = Vec::new();
    for e in 0..n {
        for f in 0..n {
            let Some(ef) = rules.contraction(e, f) else {
                continue;
            };
            for g in 0..n {
                let Some(fg) = rules.contraction(f, g) else {
                    continue;
                };
                critical_words += 1;
                let left = [ef, g];
                let right = [e, fg];
                let dl = contraction_descendants(&rules, &left);
                let dr = contraction_descendants(&rules, &right);
                if dl.iter().any(|w| dr.contains(w)) {
                    continue;
                }
                let word = GenWord(vec![e, f, g]);
                all.push(CriticalPair {
                    left: normal_form(b, &GenWord(left.to_vec())).0,
                    right: normal_form(b, &GenWord(right.to_vec())).0,
                    word,
                });
            }
        }
    }
    ConfluenceReport {
        critical_words,
        counterexample: all.first().cloned(),
        all_counterexamples: all,
    }
}
