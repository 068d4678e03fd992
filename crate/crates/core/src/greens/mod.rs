//! Generalised Green's relations on `IG(B)` at the level of witnesses:
//! tilde idempotents, non-abundance witnesses, regularity witnesses and a
//! bounded search for failures of Condition (P).

mod condition_p;
mod congruence;
mod witness;

pub use condition_p::{
    condition_p_search, falsify_condition_p, ConditionPReport, ConditionPViolation, PClause,
};
pub use congruence::{sample_congruence, CongruenceSample, CongruenceViolation};
pub use witness::{search_nonabundance, verify_nonabundance, NonAbundanceWitness, WitnessKind};

use crate::analysis::Analysis;
use crate::band::Elem;
use crate::error::{Error, Result};
use crate::igword::anf;
use crate::rewrite::{Derivation, GenWord, RewriteCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    R,
    L,
}

/// The idempotent `ē` with `w R̃ ē` (side R: first letter of the almost
/// normal form) or `w L̃ ē` (side L: last letter).
pub fn tilde_idempotent(a: &Analysis, w: &GenWord, side: Side) -> Elem {
    let (f, _) = anf(a, w);
    match side {
        Side::R => f.word()[0],
        Side::L => *f.word().last().unwrap(),
    }
}

/// True iff the tilde idempotents of the two words are R-related (side R)
/// or L-related (side L) in `B`.
pub fn tilde_related(a: &Analysis, w1: &GenWord, w2: &GenWord, side: Side) -> bool {
    let (e1, e2) = (tilde_idempotent(a, w1, side), tilde_idempotent(a, w2, side));
    match side {
        Side::R => a.band().r_related(e1, e2),
        Side::L => a.band().l_related(e1, e2),
    }
}

/// For `w = x̄₁ ⋯ x̄ₙ` inside one D-class, the inverse
/// `z = (xₙxₙ₋₁)‾ ⋯ (x₂x₁)‾` (just `x̄₁` when `n = 1`) and a certificate
/// `w z w → w`.
pub fn regularity_witness(a: &Analysis, w: &GenWord) -> Result<(GenWord, RewriteCertificate)> {
    let b = a.band();
    w.check(b)?;
    let alpha = a.class_of(w[0]);
    if let Some(&x) = w.iter().find(|&&x| a.class_of(x) != alpha) {
        return Err(Error::MixedComponents(b.name(x).to_string()));
    }
    let n = w.len();
    let z = if n == 1 {
        w.clone()
    } else {
        GenWord::new((1..n).rev().map(|k| b.mul(w[k], w[k - 1])).collect())?
    };
    let wzw = w.concat(&z).concat(w);
    let mut d = Derivation::new(b, &wzw);
    // x̄ₖ (xₖxₖ₋₁)‾ → (xₖxₖ₋₁)‾, then x̄ₖ₋₁ (xₖxₖ₋₁)‾ → x̄ₖ₋₁.
    for k in (1..n).rev() {
        d.contract(k);
        d.contract(k - 1);
    }
    d.contract(0);
    if n == 1 {
        d.contract(0);
    }
    let cert = d.finish();
    debug_assert_eq!(&cert.end, w);
    Ok((z, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::check_certificate;

    #[test]
    fn tilde_examples() {
        let b4 = Analysis::bundled("band4");
        assert_eq!(
            b4.band().name(tilde_idempotent(&b4, &b4.w("a b"), Side::R)),
            "a"
        );
        let n10 = Analysis::bundled("normal10");
        assert_eq!(
            n10.band()
                .name(tilde_idempotent(&n10, &n10.w("e v"), Side::R)),
            "e"
        );
        for side in [Side::R, Side::L] {
            assert_eq!(
                n10.band().name(tilde_idempotent(&n10, &n10.w("e"), side)),
                "e"
            );
        }
    }

    #[test]
    fn tilde_related_examples() {
        let y = Analysis::bundled("y3");
        let e = y.w("e");
        for n in 1..=4 {
            assert!(tilde_related(
                &y,
                &y.w(&vec!["e f"; n].join(" ")),
                &e,
                Side::R
            ));
        }
        assert!(!tilde_related(&y, &e, &y.w("f"), Side::R));
        assert!(tilde_related(&y, &e, &e, Side::L));
    }

    #[test]
    fn regularity_examples() {
        let r = Analysis::bundled("rect1");
        let (z, c) = regularity_witness(&r, &r.w("p s")).unwrap();
        assert_eq!(z, r.w("r"));
        assert_eq!(c.start, r.w("p s r p s"));
        assert!(check_certificate(r.band(), &c));

        let n10 = Analysis::bundled("normal10");
        let (z, c) = regularity_witness(&n10, &n10.w("e")).unwrap();
        assert_eq!(z, n10.w("e"));
        assert_eq!(c.end, n10.w("e"));
        let (z, c) = regularity_witness(&n10, &n10.w("e h")).unwrap();
        assert_eq!(z, n10.w("g"));
        assert!(check_certificate(n10.band(), &c));
        let (_, c) = regularity_witness(&n10, &n10.w("e h g f e")).unwrap();
        assert!(check_certificate(n10.band(), &c));
        assert!(matches!(
            regularity_witness(&n10, &n10.w("e v")),
            Err(Error::MixedComponents(_))
        ));
    }
}
