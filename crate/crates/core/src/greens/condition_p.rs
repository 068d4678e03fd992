use std::fmt::Write as _;

use crate::analysis::Analysis;
use crate::band::{ClassId, Elem};
use crate::decide::{equal, EqualityVerdict, Verdict};
use crate::igword::AlmostNormalForm;
use crate::rewrite::{Budget, GenWord, RewriteCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PClause {
    /// L-related block ends with distinct prefixes.
    Prefix,
    /// R-related block starts with distinct suffixes.
    Suffix,
}

/// Two equal almost normal forms breaking Condition (P).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionPViolation {
    pub u: AlmostNormalForm,
    pub v: AlmostNormalForm,
    /// From `u` to `v`.
    pub certificate: RewriteCertificate,
    pub clause: PClause,
    /// The 1-based block boundary `s` (prefix clause) or `t` (suffix
    /// clause).
    pub index: usize,
    /// The L-related (prefix) or R-related (suffix) letters of `u` and `v`.
    pub related: (Elem, Elem),
    /// The two prefixes or suffixes.
    pub parts: (GenWord, GenWord),
    pub inequality: EqualityVerdict,
}

impl ConditionPViolation {
    pub fn render(&self, a: &Analysis) -> String {
        let b = a.band();
        let mut out = String::new();
        let _ = writeln!(out, "u: {}", self.u.render(a));
        let _ = writeln!(out, "v: {}", self.v.render(a));
        let (rel, what) = match self.clause {
            PClause::Prefix => ("L", "prefixes"),
            PClause::Suffix => ("R", "suffixes"),
        };
        let _ = writeln!(
            out,
            "boundary {}: {} {rel} {} but {} {} and {} differ ({})",
            self.index,
            b.name(self.related.0),
            b.name(self.related.1),
            what,
            self.parts.0.render(b),
            self.parts.1.render(b),
            self.inequality.method
        );
        out.push_str("certificate u = v:\n");
        out.push_str(&self.certificate.to_text(b));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionPReport {
    pub violation: Option<ConditionPViolation>,
    /// Almost normal forms of Y-length at least 2 used as `u`.
    pub words: usize,
    /// Pairs whose equality was decided.
    pub pairs_decided: usize,
    /// Pairs skipped because a decision came back inconclusive.
    pub inconclusive: usize,
}

/// Almost normal form words of length `1..=max_len`, shorter first and
/// lexicographic within a length.
fn anf_words(a: &Analysis, max_len: usize) -> Vec<GenWord> {
    let d = a.decomposition();
    let n = a.band().len();
    let mut out: Vec<GenWord> = Vec::new();
    let mut layer: Vec<Vec<Elem>> = (0..n).map(|x| vec![x]).collect();
    for len in 1..=max_len {
        if len > 1 {
            layer = layer
                .iter()
                .flat_map(|w| {
                    let last = d.class_of(*w.last().unwrap());
                    (0..n)
                        .filter(move |&x| {
                            let c = d.class_of(x);
                            c == last || !d.comparable(c, last)
                        })
                        .map(move |x| [w.as_slice(), &[x]].concat())
                })
                .collect();
        }
        out.extend(layer.iter().map(|w| GenWord::new(w.clone()).unwrap()));
    }
    out
}

/// Checks the clauses for one pair; `None` if neither premise yields a
/// decided inequality.
fn broken_clause(
    a: &Analysis,
    u: &AlmostNormalForm,
    v: &AlmostNormalForm,
    budget: Budget,
    inconclusive: &mut usize,
) -> Option<(
    PClause,
    usize,
    (Elem, Elem),
    (GenWord, GenWord),
    EqualityVerdict,
)> {
    let b = a.band();
    let (uw, vw) = (u.word(), v.word());
    for (s, (&i, &l)) in u.bounds().iter().zip(v.bounds()).enumerate() {
        let (x, y) = (uw[i - 1], vw[l - 1]);
        if !b.l_related(x, y) {
            continue;
        }
        let p = (
            GenWord::new(uw[..i].to_vec()).unwrap(),
            GenWord::new(vw[..l].to_vec()).unwrap(),
        );
        let verdict = equal(a, &p.0, &p.1, budget);
        match verdict.verdict {
            Verdict::NotEqual => return Some((PClause::Prefix, s + 1, (x, y), p, verdict)),
            Verdict::Inconclusive => *inconclusive += 1,
            Verdict::Equal => {}
        }
    }
    for (t, (&i, &l)) in u.bounds().iter().zip(v.bounds()).enumerate() {
        let (x, y) = (uw[i], vw[l]);
        if !b.r_related(x, y) {
            continue;
        }
        let p = (
            GenWord::new(uw[i..].to_vec()).unwrap(),
            GenWord::new(vw[l..].to_vec()).unwrap(),
        );
        let verdict = equal(a, &p.0, &p.1, budget);
        match verdict.verdict {
            Verdict::NotEqual => return Some((PClause::Suffix, t + 1, (x, y), p, verdict)),
            Verdict::Inconclusive => *inconclusive += 1,
            Verdict::Equal => {}
        }
    }
    None
}

/// Enumerates pairs of almost normal forms of Y-length at least 2 and
/// length at most `max_len` with the same Y-components and image in `B`,
/// looking for a pair whose clause premise holds, whose prefixes (or
/// suffixes) are decided distinct, and which is certified equal.
/// Inconclusive decisions never count as violations.
pub fn condition_p_search(a: &Analysis, max_len: usize, budget: Budget) -> ConditionPReport {
    let d = a.decomposition();
    let b = a.band();
    let forms: Vec<AlmostNormalForm> = anf_words(a, max_len)
        .into_iter()
        .filter_map(|w| AlmostNormalForm::from_word(d, &w))
        .filter(|f| f.y_length() >= 2)
        .collect();
    let images: Vec<Elem> = forms.iter().map(|f| f.word().evaluate(b)).collect();
    let mut report = ConditionPReport {
        violation: None,
        words: forms.len(),
        pairs_decided: 0,
        inconclusive: 0,
    };
    for (ui, u) in forms.iter().enumerate() {
        let comps: &[ClassId] = u.components();
        for (vi, v) in forms.iter().enumerate() {
            if vi == ui || v.components() != comps || images[vi] != images[ui] {
                continue;
            }
            let Some((clause, index, related, parts, inequality)) =
                broken_clause(a, u, v, budget, &mut report.inconclusive)
            else {
                continue;
            };
            report.pairs_decided += 1;
            let verdict = equal(a, u.word(), v.word(), budget);
            match verdict.verdict {
                Verdict::Equal => {
                    report.violation = Some(ConditionPViolation {
                        u: u.clone(),
                        v: v.clone(),
                        certificate: verdict.certificate().unwrap().clone(),
                        clause,
                        index,
                        related,
                        parts,
                        inequality,
                    });
                    return report;
                }
                Verdict::Inconclusive => report.inconclusive += 1,
                Verdict::NotEqual => {}
            }
        }
    }
    report
}

pub fn falsify_condition_p(
    a: &Analysis,
    max_len: usize,
    budget: Budget,
) -> Option<ConditionPViolation> {
    condition_p_search(a, max_len, budget).violation
}
