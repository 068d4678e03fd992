use std::ops::Range;

use crate::analysis::Analysis;
use crate::band::{ClassId, DClassDecomposition, Elem};
use crate::rewrite::{normal_form, Derivation, GenWord, RewriteCertificate};

/// A word split into single-component blocks whose neighbouring
/// components are incomparable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostNormalForm {
    word: GenWord,
    /// Block end positions `i₁ < … < i_{r-1}` (1-based, so also the
    /// number of letters before each split).
    bounds: Vec<usize>,
    components: Vec<ClassId>,
}

impl AlmostNormalForm {
    /// The block structure of `w` if it is in almost normal form. Blocks
    /// are necessarily the maximal single-class runs.
    pub fn from_word(d: &DClassDecomposition, w: &GenWord) -> Option<AlmostNormalForm> {
        let mut bounds = Vec::new();
        let mut components = vec![d.class_of(w[0])];
        for i in 1..w.len() {
            let c = d.class_of(w[i]);
            let prev = *components.last().unwrap();
            if c != prev {
                if d.comparable(c, prev) {
                    return None;
                }
                bounds.push(i);
                components.push(c);
            }
        }
        Some(AlmostNormalForm {
            word: w.clone(),
            bounds,
            components,
        })
    }

    pub fn single(d: &DClassDecomposition, e: Elem) -> AlmostNormalForm {
        AlmostNormalForm {
            word: GenWord::single(e),
            bounds: Vec::new(),
            components: vec![d.class_of(e)],
        }
    }

    pub fn word(&self) -> &GenWord {
        &self.word
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn components(&self) -> &[ClassId] {
        &self.components
    }

    pub fn y_length(&self) -> usize {
        self.components.len()
    }

    /// 0-based letter ranges of the blocks.
    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut starts = vec![0];
        starts.extend_from_slice(&self.bounds);
        let mut ends = self.bounds.clone();
        ends.push(self.word.len());
        starts.into_iter().zip(ends).map(|(s, e)| s..e).collect()
    }

    pub fn blocks(&self) -> Vec<&[Elem]> {
        self.block_ranges()
            .into_iter()
            .map(|r| &self.word[r])
            .collect()
    }

    /// Checks the defining invariants against `d`.
    pub fn is_valid(&self, d: &DClassDecomposition) -> bool {
        let ranges = self.block_ranges();
        ranges.len() == self.components.len()
            && ranges.iter().all(|r| !r.is_empty())
            && ranges
                .iter()
                .zip(&self.components)
                .all(|(r, &c)| self.word[r.clone()].iter().all(|&x| d.class_of(x) == c))
            && self
                .components
                .windows(2)
                .all(|p| !d.comparable(p[0], p[1]))
    }

    /// Blocks separated by `|`, e.g. `e h | v`.
    pub fn render(&self, a: &Analysis) -> String {
        self.blocks()
            .iter()
            .map(|blk| a.render(blk))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// Conjugates the letters at `positions` (walking right to left) by the
/// letter to their right: `x̄ c̄ → x̄ (cx)‾ c̄ → (xcx)‾ c̄`.
fn conjugate_leftwards(
    a: &Analysis,
    d: &mut Derivation<'_>,
    positions: Range<usize>,
    target: ClassId,
) {
    let b = a.band();
    for j in positions.rev() {
        let (x, c) = (d.word()[j], d.word()[j + 1]);
        if a.class_of(x) == target {
            // xcx = x inside one rectangular component.
            continue;
        }
        d.expand(j + 1, b.mul(c, x), c);
        d.contract(j);
        debug_assert_eq!(d.word()[j], b.product(&[x, c, x]));
        if let Some(m) = a.morphisms() {
            debug_assert_eq!(Some(d.word()[j]), m.apply(x, target));
        }
    }
}

/// Conjugates the letters at `positions` (walking left to right) by the
/// letter to their left: `c̄ ȳ → c̄ (yc)‾ ȳ → c̄ (ycy)‾`.
fn conjugate_rightwards(
    a: &Analysis,
    d: &mut Derivation<'_>,
    positions: Range<usize>,
    target: ClassId,
) {
    let b = a.band();
    for j in positions {
        let (c, y) = (d.word()[j - 1], d.word()[j]);
        if a.class_of(y) == target {
            continue;
        }
        d.expand(j - 1, c, b.mul(y, c));
        d.contract(j);
        debug_assert_eq!(d.word()[j], b.product(&[y, c, y]));
        if let Some(m) = a.morphisms() {
            debug_assert_eq!(Some(d.word()[j]), m.apply(y, target));
        }
    }
}

/// An almost normal form of the product of two almost normal forms, with
/// a certificate from the concatenation `left · right` to the result.
///
/// When the boundary components are comparable the blocks on the higher
/// side are conjugated down into the lower component and merged with it.
/// Every block of the result is then contracted to its normal form.
pub fn anf_multiply(
    a: &Analysis,
    left: &AlmostNormalForm,
    right: &AlmostNormalForm,
) -> (AlmostNormalForm, RewriteCertificate) {
    let dec = a.decomposition();
    let joined = left.word.concat(&right.word);
    let mut d = Derivation::new(a.band(), &joined);
    let alpha = *left.components.last().unwrap();
    let beta = right.components[0];
    let n = left.word.len();
    if dec.leq(beta, alpha) {
        // Walk left over blocks lying above beta.
        let ranges = left.block_ranges();
        let mut t = ranges.len();
        while t > 0 && dec.leq(beta, left.components[t - 1]) {
            t -= 1;
        }
        debug_assert!(t == 0 || !dec.comparable(left.components[t - 1], beta));
        conjugate_leftwards(a, &mut d, ranges[t].start..n, beta);
    } else if dec.leq(alpha, beta) {
        let ranges = right.block_ranges();
        let mut v = 0;
        while v < ranges.len() && dec.leq(alpha, right.components[v]) {
            v += 1;
        }
        debug_assert!(v == ranges.len() || !dec.comparable(right.components[v], alpha));
        conjugate_rightwards(a, &mut d, n..n + ranges[v - 1].end, alpha);
    }
    let conjugated = d.finish();
    let (nf, contraction) = normal_form(a.band(), &conjugated.end);
    let cert = conjugated.then(contraction);
    let result = AlmostNormalForm::from_word(dec, &nf)
        .expect("the product construction yields an almost normal form");
    (result, cert)
}

/// An almost normal form of `w`, folding letters in from the left, with
/// a certificate from `w` to it.
pub fn anf(a: &Analysis, w: &GenWord) -> (AlmostNormalForm, RewriteCertificate) {
    let dec = a.decomposition();
    let mut acc = AlmostNormalForm::single(dec, w[0]);
    let mut cert = RewriteCertificate::identity(GenWord::single(w[0]));
    for &x in &w[1..] {
        let (next, step) = anf_multiply(a, &acc, &AlmostNormalForm::single(dec, x));
        cert = cert.embed(&[], &[x]).then(step);
        acc = next;
    }
    (acc, cert)
}
