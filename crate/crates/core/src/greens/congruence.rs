use rand::Rng;

use super::{tilde_idempotent, tilde_related, Side};
use crate::analysis::Analysis;
use crate::band::Elem;
use crate::rewrite::GenWord;

/// A sampled triple that broke the congruence condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceViolation {
    pub side: Side,
    pub z: GenWord,
    pub w1: GenWord,
    pub w2: GenWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CongruenceSample {
    /// Related pairs tested on the side with fewer of them.
    pub triples: usize,
    /// Pairs drawn, related or not.
    pub attempts: usize,
    pub violations: Vec<CongruenceViolation>,
}

/// A word of length `1..=max_len` (`0..max_len` when `allow_empty`).
fn random_word(a: &Analysis, rng: &mut impl Rng, max_len: usize, allow_empty: bool) -> Vec<Elem> {
    let len = if allow_empty {
        rng.gen_range(0..max_len)
    } else {
        rng.gen_range(1..=max_len)
    };
    (0..len).map(|_| rng.gen_range(0..a.band().len())).collect()
}

/// Draws a word likely to share the tilde class of `w1`: a letter related
/// to its tilde idempotent, padded with random letters on the far side.
fn related_candidate(
    a: &Analysis,
    rng: &mut impl Rng,
    w1: &GenWord,
    side: Side,
    max_len: usize,
) -> GenWord {
    let b = a.band();
    let e = tilde_idempotent(a, w1, side);
    let class: Vec<Elem> = b
        .elements()
        .filter(|&x| match side {
            Side::R => b.r_related(x, e),
            Side::L => b.l_related(x, e),
        })
        .collect();
    let x = class[rng.gen_range(0..class.len())];
    let pad = random_word(a, rng, max_len, true);
    let letters = match side {
        Side::R => [&[x][..], &pad].concat(),
        Side::L => [&pad[..], &[x]].concat(),
    };
    GenWord::new(letters).unwrap()
}

/// Samples `triples` triples `(z, w1, w2)` with `w1 R̃ w2` and checks
/// `z w1 R̃ z w2`; dually `w1 L̃ w2` against `w1 z L̃ w2 z`. Words have
/// length `1..=max_len`.
pub fn sample_congruence(
    a: &Analysis,
    rng: &mut impl Rng,
    triples: usize,
    max_len: usize,
) -> CongruenceSample {
    let mut out = CongruenceSample::default();
    let mut counts = Vec::new();
    for side in [Side::R, Side::L] {
        let mut found = 0;
        while found < triples && out.attempts < 200 * triples * (counts.len() + 1) {
            out.attempts += 1;
            let w1 = GenWord::new(random_word(a, rng, max_len, false)).unwrap();
            let w2 = if rng.gen_bool(0.25) {
                GenWord::new(random_word(a, rng, max_len, false)).unwrap()
            } else {
                related_candidate(a, rng, &w1, side, max_len)
            };
            if !tilde_related(a, &w1, &w2, side) {
                continue;
            }
            found += 1;
            let z = GenWord::new(random_word(a, rng, max_len, false)).unwrap();
            let (p1, p2) = match side {
                Side::R => (z.concat(&w1), z.concat(&w2)),
                Side::L => (w1.concat(&z), w2.concat(&z)),
            };
            if !tilde_related(a, &p1, &p2, side) {
                out.violations.push(CongruenceViolation { side, z, w1, w2 });
            }
        }
        counts.push(found);
    }
    out.triples = counts.into_iter().min().unwrap_or(0);
    out
}
