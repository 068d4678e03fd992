//! Structure of words in `IG(B)` read through the semilattice `Y`:
//! significant indices, Y-length, projection to `IG(Y)` and almost normal
//! forms.

mod anf;

pub use anf::{anf, anf_multiply, AlmostNormalForm};

use crate::analysis::Analysis;
use crate::band::{ClassId, DClassDecomposition, Elem};
use crate::rewrite::{normal_form, GenWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanDirection {
    LeftToRight,
    RightToLeft,
}

/// Significant indices of a word, with the stop reached after each one.
///
/// Positions are 1-based and increasing in both directions. For a
/// left-to-right scan `stops[l] ≥ indices[l]`; for a right-to-left scan
/// `stops[l] ≤ indices[l]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignificantProfile {
    pub direction: ScanDirection,
    pub indices: Vec<usize>,
    pub stops: Vec<usize>,
    pub components: Vec<ClassId>,
}

impl SignificantProfile {
    pub fn y_length(&self) -> usize {
        self.indices.len()
    }
}

/// Greedy left-to-right scan over a class sequence; 0-based `(i, k)` pairs.
fn scan(d: &DClassDecomposition, classes: &[ClassId]) -> Vec<(usize, usize)> {
    let n = classes.len();
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        // i: the largest j with classes[start..=j] all ≥ classes[j].
        let mut i = start;
        for j in start..n {
            if classes[start..=j].iter().all(|&c| d.leq(classes[j], c)) {
                i = j;
            }
        }
        // k: extend while classes[i] stays below.
        let mut k = i;
        while k + 1 < n && d.leq(classes[i], classes[k + 1]) {
            k += 1;
        }
        out.push((i, k));
        start = k + 1;
    }
    out
}

pub fn significant_indices(
    d: &DClassDecomposition,
    w: &[Elem],
    direction: ScanDirection,
) -> SignificantProfile {
    let classes = d.project(w);
    let n = classes.len();
    let (indices, stops, components) = match direction {
        ScanDirection::LeftToRight => {
            let found = scan(d, &classes);
            (
                found.iter().map(|&(i, _)| i + 1).collect(),
                found.iter().map(|&(_, k)| k + 1).collect(),
                found.iter().map(|&(i, _)| classes[i]).collect(),
            )
        }
        ScanDirection::RightToLeft => {
            let reversed: Vec<ClassId> = classes.iter().rev().copied().collect();
            let mut found = scan(d, &reversed);
            found.reverse();
            (
                found.iter().map(|&(i, _)| n - i).collect(),
                found.iter().map(|&(_, k)| n - k).collect(),
                found.iter().map(|&(i, _)| reversed[i]).collect(),
            )
        }
    };
    SignificantProfile {
        direction,
        indices,
        stops,
        components,
    }
}

/// The image of a word in `IG(Y)`, with elements of `Y` named as in
/// [`DClassDecomposition::semilattice_band`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YProjection {
    pub word: GenWord,
    pub normal_form: GenWord,
}

pub fn y_projection(a: &Analysis, w: &GenWord) -> YProjection {
    let d = a.decomposition();
    let word = GenWord::new(d.project(w)).expect("non-empty");
    let y = d.semilattice_band();
    let (nf, _) = normal_form(&y, &word);
    YProjection {
        word,
        normal_form: nf,
    }
}
