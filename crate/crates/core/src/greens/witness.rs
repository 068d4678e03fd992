use std::fmt::Write as _;

use super::{tilde_idempotent, Side};
use crate::analysis::Analysis;
use crate::band::Elem;
use crate::decide::{equal, EqualityVerdict, Verdict};
use crate::error::{Error, Result};
use crate::rewrite::{check_certificate, words_up_to, Budget, GenWord, RewriteCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// `x a = a` but `x ē ≠ ē`.
    Single,
    /// `x a = y a` but `x ē ≠ y ē`.
    Pair,
}

/// Evidence that `target` is R*-related to no idempotent: `target R̃ ē`,
/// and left multiplication separates `target` from `ē`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAbundanceWitness {
    pub target: GenWord,
    pub tilde_idempotent: Elem,
    pub kind: WitnessKind,
    pub x: GenWord,
    pub y: Option<GenWord>,
    /// From `x · target` to `target` (single) or `y · target` (pair).
    pub equality_evidence: RewriteCertificate,
    /// `x ē` against `ē` (single) or `y ē` (pair).
    pub inequality_evidence: EqualityVerdict,
}

impl NonAbundanceWitness {
    /// The two words the equality certificate must connect.
    fn equal_sides(&self) -> Option<(GenWord, GenWord)> {
        let left = self.x.concat(&self.target);
        match (self.kind, &self.y) {
            (WitnessKind::Single, None) => Some((left, self.target.clone())),
            (WitnessKind::Pair, Some(y)) => Some((left, y.concat(&self.target))),
            _ => None,
        }
    }

    /// The two words that must be distinct.
    fn distinct_sides(&self) -> Option<(GenWord, GenWord)> {
        let e = GenWord::single(self.tilde_idempotent);
        let left = self.x.concat(&e);
        match (self.kind, &self.y) {
            (WitnessKind::Single, None) => Some((left, e)),
            (WitnessKind::Pair, Some(y)) => Some((left, y.concat(&e))),
            _ => None,
        }
    }

    /// Decides both conditions for the given candidate; a pair witness
    /// when `y` is present. The error says which condition failed.
    pub fn build(
        a: &Analysis,
        target: &GenWord,
        x: GenWord,
        y: Option<GenWord>,
        budget: Budget,
    ) -> Result<NonAbundanceWitness, String> {
        let b = a.band();
        for word in [Some(target), Some(&x), y.as_ref()].into_iter().flatten() {
            word.check(b).map_err(|e| e.to_string())?;
        }
        let e = tilde_idempotent(a, target, Side::R);
        let ebar = GenWord::single(e);
        let other = y.as_ref().map_or_else(|| ebar.clone(), |y| y.concat(&ebar));
        let ineq = equal(a, &x.concat(&ebar), &other, budget);
        if ineq.verdict != Verdict::NotEqual {
            return Err(format!(
                "inequality decides {} ({})",
                ineq.verdict, ineq.method
            ));
        }
        let other = y
            .as_ref()
            .map_or_else(|| target.clone(), |y| y.concat(target));
        let eq = equal(a, &x.concat(target), &other, budget);
        let Some(cert) = eq.certificate() else {
            return Err(format!("equality decides {} ({})", eq.verdict, eq.method));
        };
        Ok(NonAbundanceWitness {
            target: target.clone(),
            tilde_idempotent: e,
            kind: if y.is_some() {
                WitnessKind::Pair
            } else {
                WitnessKind::Single
            },
            x,
            y,
            equality_evidence: cert.clone(),
            inequality_evidence: ineq,
        })
    }

    pub fn to_text(&self, a: &Analysis) -> String {
        let b = a.band();
        let mut out = String::new();
        let _ = writeln!(out, "target: {}", self.target.render(b));
        let _ = writeln!(out, "tilde: {}", b.name(self.tilde_idempotent));
        let kind = match self.kind {
            WitnessKind::Single => "single",
            WitnessKind::Pair => "pair",
        };
        let _ = writeln!(out, "kind: {kind}");
        let _ = writeln!(out, "x: {}", self.x.render(b));
        if let Some(y) = &self.y {
            let _ = writeln!(out, "y: {}", y.render(b));
        }
        out.push_str("certificate:\n");
        out.push_str(&self.equality_evidence.to_text(b));
        let _ = writeln!(
            out,
            "inequality: {} {}",
            self.inequality_evidence.verdict, self.inequality_evidence.method
        );
        out
    }

    /// Parses [`NonAbundanceWitness::to_text`] output. The inequality tag
    /// is not trusted: the inequality is decided again under `budget` and
    /// the recomputed verdict is stored.
    pub fn parse(a: &Analysis, text: &str, budget: Budget) -> Result<NonAbundanceWitness> {
        let b = a.band();
        let bad = |line: usize, message: String| Error::Witness { line, message };
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let mut it = lines.iter().copied().peekable();
        let mut field = |key: &str, optional: bool| -> Result<Option<(usize, String)>> {
            match it.peek() {
                Some(&(no, l)) if l.starts_with(key) => {
                    it.next();
                    Ok(Some((no, l[key.len()..].trim().to_string())))
                }
                Some(&(no, l)) if !optional => {
                    Err(bad(no, format!("expected `{key}`, found `{l}`")))
                }
                None if !optional => Err(bad(0, format!("missing `{key}`"))),
                _ => Ok(None),
            }
        };
        let word =
            |(no, s): (usize, String)| GenWord::parse(b, &s).map_err(|e| bad(no, e.to_string()));
        let target = word(field("target:", false)?.unwrap())?;
        let (tno, tilde) = field("tilde:", false)?.unwrap();
        let tilde_idempotent = b
            .index_of(&tilde)
            .ok_or_else(|| bad(tno, format!("unknown element `{tilde}`")))?;
        let (kno, kind) = field("kind:", false)?.unwrap();
        let kind = match kind.as_str() {
            "single" => WitnessKind::Single,
            "pair" => WitnessKind::Pair,
            other => return Err(bad(kno, format!("unknown kind `{other}`"))),
        };
        let x = word(field("x:", false)?.unwrap())?;
        let y = field("y:", true)?.map(word).transpose()?;
        let (cno, _) = field("certificate:", false)?.unwrap();
        let rest: Vec<(usize, &str)> = it.collect();
        let split = rest
            .iter()
            .position(|(_, l)| l.starts_with("inequality:"))
            .ok_or_else(|| bad(cno, "missing `inequality:`".into()))?;
        let cert_text: String = rest[..split]
            .iter()
            .map(|(_, l)| format!("{l}\n"))
            .collect();
        let equality_evidence = RewriteCertificate::parse(b, &cert_text).map_err(|e| match e {
            Error::Certificate { line, message } => bad(cno + line, message),
            other => bad(cno, other.to_string()),
        })?;
        if let Some(&(no, l)) = rest.get(split + 1) {
            return Err(bad(no, format!("unexpected trailing line `{l}`")));
        }
        let mut w = NonAbundanceWitness {
            target,
            tilde_idempotent,
            kind,
            x,
            y,
            equality_evidence,
            inequality_evidence: EqualityVerdict {
                verdict: Verdict::Inconclusive,
                method: crate::decide::Method::BfsOracle,
                evidence: crate::decide::Evidence::Budget {
                    explored: 0,
                    exhausted: false,
                },
            },
        };
        let (l, r) = w
            .distinct_sides()
            .ok_or_else(|| bad(kno, "kind and presence of `y:` disagree".into()))?;
        w.inequality_evidence = equal(a, &l, &r, budget);
        Ok(w)
    }
}

/// Re-checks every part of `w`; the error names the first failed check.
pub fn verify_nonabundance(
    a: &Analysis,
    w: &NonAbundanceWitness,
    budget: Budget,
) -> Result<(), String> {
    let b = a.band();
    for word in [Some(&w.target), Some(&w.x), w.y.as_ref()]
        .into_iter()
        .flatten()
    {
        word.check(b).map_err(|e| e.to_string())?;
    }
    let e = tilde_idempotent(a, &w.target, Side::R);
    if e != w.tilde_idempotent {
        return Err(format!(
            "tilde idempotent of the target is {}, not {}",
            b.name(e),
            b.name(w.tilde_idempotent)
        ));
    }
    let (l, r) = w.equal_sides().ok_or("kind and presence of y disagree")?;
    let c = &w.equality_evidence;
    if c.start != l || c.end != r {
        return Err(format!(
            "certificate connects {} to {}, expected {} to {}",
            c.start.render(b),
            c.end.render(b),
            l.render(b),
            r.render(b)
        ));
    }
    if !check_certificate(b, c) {
        return Err("equality certificate does not replay".into());
    }
    if w.inequality_evidence.verdict != Verdict::NotEqual {
        return Err(format!(
            "inequality evidence is {}",
            w.inequality_evidence.verdict
        ));
    }
    let (l, r) = w
        .distinct_sides()
        .ok_or("kind and presence of y disagree")?;
    let v = equal(a, &l, &r, budget);
    if v.verdict != Verdict::NotEqual {
        return Err(format!(
            "{} vs {} decides {} ({})",
            l.render(b),
            r.render(b),
            v.verdict,
            v.method
        ));
    }
    Ok(())
}

/// The first witness for `target`: every single candidate `x` up to
/// `max_len` before any pair, shorter first, lexicographic within a
/// length. Pairs `(x, y)` with `x < y` are ordered by the longer length.
pub fn search_nonabundance(
    a: &Analysis,
    target: &GenWord,
    max_len: usize,
    budget: Budget,
) -> Option<NonAbundanceWitness> {
    let b = a.band();
    let make = |x: &GenWord, y: Option<&GenWord>| {
        NonAbundanceWitness::build(a, target, x.clone(), y.cloned(), budget).ok()
    };
    for x in words_up_to(b.len(), max_len) {
        if let Some(w) = make(&x, None) {
            return Some(w);
        }
    }
    for len in 1..=max_len {
        let shorter: Vec<GenWord> = words_up_to(b.len(), len).collect();
        for (i, x) in shorter.iter().enumerate() {
            for y in &shorter[i + 1..] {
                if x.len().max(y.len()) != len {
                    continue;
                }
                if let Some(w) = make(x, Some(y)) {
                    return Some(w);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band4_pair() {
        let a = Analysis::bundled("band4");
        let w = search_nonabundance(&a, &a.w("a b"), 2, Budget::default()).unwrap();
        assert_eq!(w.kind, WitnessKind::Pair);
        assert_eq!(w.x, a.w("x"));
        assert_eq!(w.y, Some(a.w("y")));
        assert_eq!(verify_nonabundance(&a, &w, Budget::default()), Ok(()));
        let text = w.to_text(&a);
        let back = NonAbundanceWitness::parse(&a, &text, Budget::default()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn normal10_single() {
        let a = Analysis::bundled("normal10");
        let w = search_nonabundance(&a, &a.w("e v"), 2, Budget::default()).unwrap();
        assert_eq!(w.kind, WitnessKind::Single);
        // ā d̄ acts on B_β as ē h̄ does.
        assert_eq!(w.x, a.w("a d"));
        assert_eq!(verify_nonabundance(&a, &w, Budget::default()), Ok(()));
        let w = NonAbundanceWitness::build(&a, &a.w("e v"), a.w("e h"), None, Budget::default())
            .unwrap();
        assert_eq!(w.equality_evidence.start, a.w("e h e v"));
        assert_eq!(verify_nonabundance(&a, &w, Budget::default()), Ok(()));
    }

    #[test]
    fn inconsistent_witness_is_rejected() {
        let a = Analysis::bundled("band4");
        let mut w = search_nonabundance(&a, &a.w("a b"), 1, Budget::default()).unwrap();
        // x ā = ā ā decides equal to ā.
        w.kind = WitnessKind::Single;
        w.y = None;
        w.x = a.w("a");
        w.equality_evidence = RewriteCertificate::identity(a.w("a a b"));
        assert!(verify_nonabundance(&a, &w, Budget::default()).is_err());
    }

    #[test]
    fn y3_has_no_witness_for_a_power() {
        let a = Analysis::bundled("y3");
        assert_eq!(
            search_nonabundance(&a, &a.w("e f e f"), 3, Budget::default()),
            None
        );
    }
}
