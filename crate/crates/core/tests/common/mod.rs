//! Decider/oracle agreement, shared by the acceptance suite and the
//! larger ignored run in `agreement.rs`.

use igband::decide::{
    equal_locally_large, equal_normal_component, equal_semilattice, EqualityVerdict, Verdict,
};
use igband::rewrite::{
    bfs_equal, bounded_closure, check_certificate, contract, expansions, words_up_to, BfsOutcome,
    Budget, Closure, GenWord,
};
use igband::{Analysis, Band, Elem};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Scale {
    /// Every pair of words up to this length is compared.
    pub exhaustive_len: usize,
    /// Number of random pairs per band (per class for normal bands).
    pub random_pairs: usize,
    pub random_len: usize,
    /// Length cap for the closures answering exhaustive pairs.
    pub closure_len: usize,
    /// State budget for `bfs_equal` on random pairs.
    pub random_states: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decider {
    Semilattice,
    LocallyLarge,
    /// Single-class words of a normal band.
    NormalComponent,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Agreement {
    pub compared: usize,
    pub equal: usize,
    pub inconclusive: usize,
}

impl Agreement {
    fn record(
        &mut self,
        decided: &EqualityVerdict,
        oracle: Option<bool>,
        what: impl Fn() -> String,
    ) -> Result<(), String> {
        let Some(oracle_equal) = oracle else {
            self.inconclusive += 1;
            return Ok(());
        };
        ensure(decided.verdict != Verdict::Inconclusive, || {
            format!("decider inconclusive on {}", what())
        })?;
        ensure(decided.is_equal() == oracle_equal, || {
            format!(
                "decider {} but oracle {} on {}",
                decided.verdict,
                oracle_equal,
                what()
            )
        })?;
        self.compared += 1;
        self.equal += usize::from(oracle_equal);
        Ok(())
    }

    fn add(&mut self, other: Agreement) {
        self.compared += other.compared;
        self.equal += other.equal;
        self.inconclusive += other.inconclusive;
    }
}

/// A short random walk of contractions and expansions from `w`, keeping
/// every word within `max_len` and inside `domain`.
fn random_walk(
    b: &Band,
    w: &GenWord,
    rng: &mut ChaCha8Rng,
    max_len: usize,
    domain: &dyn Fn(&GenWord) -> bool,
) -> GenWord {
    let mut cur = w.clone();
    for _ in 0..6 {
        let mut next = Vec::new();
        for pos in 0..cur.len() {
            if let Ok(Some(c)) = contract(b, &cur, pos) {
                next.push(c);
            }
            if cur.len() < max_len {
                next.extend(expansions(b, &cur, pos).unwrap());
            }
        }
        next.retain(|w| domain(w));
        if next.is_empty() {
            break;
        }
        cur = next.swap_remove(rng.gen_range(0..next.len()));
    }
    cur
}

fn random_word_from(letters: &[Elem], rng: &mut ChaCha8Rng, max_len: usize) -> GenWord {
    let len = rng.gen_range(1..=max_len);
    GenWord::new(
        (0..len)
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect(),
    )
    .unwrap()
}

/// Compares `decide` with the oracle on every pair over `letters` up to
/// the exhaustive length and on random pairs. Half of the random pairs
/// are a word and the end of a random walk from it, so that equal pairs
/// are well represented.
fn over_letters(
    a: &Analysis,
    letters: &[Elem],
    decide: &dyn Fn(&GenWord, &GenWord) -> EqualityVerdict,
    scale: Scale,
    rng: &mut ChaCha8Rng,
) -> Result<Agreement, String> {
    let b = a.band();
    let domain = |w: &GenWord| w.iter().all(|x| letters.contains(x));
    let exhaustive: Vec<GenWord> = words_up_to(letters.len(), scale.exhaustive_len)
        .map(|w| GenWord::new(w.iter().map(|&i| letters[i]).collect()).unwrap())
        .collect();
    let mut stats = Agreement::default();
    // Bounded closures stand in for bfs_equal with the same length cap on
    // every pair. An exhausted closure is the whole capped component, so it
    // is shared by every word it contains.
    let cap = Budget::new(scale.closure_len, 2_000_000);
    let mut components: Vec<Closure> = Vec::new();
    for w1 in &exhaustive {
        let cached = components.iter().position(|c| c.contains(w1));
        let fresh;
        let closure = match cached {
            Some(i) => &components[i],
            None => {
                let c = bounded_closure(b, w1, cap);
                if c.is_exhausted() {
                    components.push(c);
                    components.last().unwrap()
                } else {
                    fresh = c;
                    &fresh
                }
            }
        };
        for w2 in &exhaustive {
            let oracle = if closure.contains(w2) {
                Some(true)
            } else if closure.is_exhausted() {
                Some(false)
            } else {
                None
            };
            let v = decide(w1, w2);
            if let Some(c) = v.certificate() {
                ensure(check_certificate(b, c), || {
                    format!("bad certificate for {} / {}", w1.render(b), w2.render(b))
                })?;
            }
            stats.record(&v, oracle, || {
                format!("{} / {}", w1.render(b), w2.render(b))
            })?;
        }
    }
    let budget = Budget {
        max_len: None,
        max_states: scale.random_states,
    };
    for i in 0..scale.random_pairs {
        let w1 = random_word_from(letters, rng, scale.random_len);
        let w2 = if i % 2 == 0 {
            random_word_from(letters, rng, scale.random_len)
        } else {
            random_walk(b, &w1, rng, scale.random_len, &domain)
        };
        let oracle = match bfs_equal(b, &w1, &w2, budget) {
            BfsOutcome::Equal(_) => Some(true),
            BfsOutcome::DistinctWithinBudget { .. } => Some(false),
            BfsOutcome::Inconclusive { .. } => None,
        };
        let v = decide(&w1, &w2);
        stats.record(&v, oracle, || {
            format!("{} / {}", w1.render(b), w2.render(b))
        })?;
    }
    Ok(stats)
}

/// Runs one decider against the oracle on its whole domain in `a`.
pub fn agreement(
    a: &Analysis,
    decider: Decider,
    scale: Scale,
    rng: &mut ChaCha8Rng,
) -> Result<Agreement, String> {
    let b = a.band();
    let all: Vec<Elem> = b.elements().collect();
    match decider {
        Decider::Semilattice => over_letters(
            a,
            &all,
            &|u, v| equal_semilattice(b, u, v).unwrap(),
            scale,
            rng,
        ),
        Decider::LocallyLarge => over_letters(
            a,
            &all,
            &|u, v| equal_locally_large(a, u, v).unwrap(),
            scale,
            rng,
        ),
        Decider::NormalComponent => {
            let mut total = Agreement::default();
            for members in a.decomposition().classes() {
                let s = over_letters(
                    a,
                    members,
                    &|u, v| equal_normal_component(a, u, v).unwrap(),
                    scale,
                    rng,
                )?;
                total.add(s);
            }
            Ok(total)
        }
    }
}

/// The deciders that apply to `a`.
#[allow(dead_code)]
pub fn applicable(a: &Analysis) -> Vec<Decider> {
    let c = a.classification();
    let mut out = Vec::new();
    if c.is_semilattice {
        out.push(Decider::Semilattice);
    }
    if c.is_locally_large {
        out.push(Decider::LocallyLarge);
    }
    if c.is_normal {
        out.push(Decider::NormalComponent);
    }
    out
}
