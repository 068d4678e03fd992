//! Bundled worked examples. Each demo checks its expected outcome and
//! reports failure with exit code 1.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CliResult, Report};
use crate::analysis::Analysis;
use crate::decide::{equal, equal_normal_component, equal_rectangular, equal_semilattice};
use crate::greens::{
    sample_congruence, search_nonabundance, tilde_idempotent, verify_nonabundance,
    NonAbundanceWitness, Side, WitnessKind,
};
use crate::rewrite::{
    bfs_equal, check_certificate, check_local_confluence, words_up_to, BfsOutcome, Budget, GenWord,
};

pub const NAMES: [&str; 7] = [
    "y3-nonregular",
    "normal5-nonunique",
    "normal5-derivation",
    "band4-nonabundant",
    "nonnormal5-projection",
    "normal10-nonabundant",
    "congruence",
];

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub(super) fn run(name: &str, seed: u64) -> CliResult<Report> {
    if name == "all" {
        let mut r = Report::default();
        for n in NAMES {
            r.absorb(run(n, seed)?);
        }
        return Ok(r);
    }
    let mut r = Report::default();
    r.say(format!("== {name}"));
    let result = match name {
        "y3-nonregular" => y3_nonregular(&mut r),
        "normal5-nonunique" => normal5_nonunique(&mut r),
        "normal5-derivation" => normal5_derivation(&mut r),
        "band4-nonabundant" => band4_nonabundant(&mut r),
        "nonnormal5-projection" => nonnormal5_projection(&mut r),
        "normal10-nonabundant" => normal10_nonabundant(&mut r),
        "congruence" => congruence(&mut r, seed),
        other => {
            return Err(super::CliError(format!(
                "unknown demo `{other}` (known: {}, all)",
                NAMES.join(", ")
            )))
        }
    };
    match result {
        Ok(()) => {
            r.say("ok");
            r.field(name, "ok");
        }
        Err(msg) => {
            r.say(format!("FAILED: {msg}"));
            r.field(name, "failed");
            r.code = 1;
        }
    }
    Ok(r)
}

fn power(a: &Analysis, base: &str, n: usize) -> GenWord {
    a.w(&vec![base; n].join(" "))
}

fn y3_nonregular(r: &mut Report) -> Outcome {
    let a = Analysis::bundled("y3");
    let b = a.band();
    let max = 6;
    for n in 1..=3 {
        let p = power(&a, "e f", n);
        let mut checked = 0;
        for w in words_up_to(b.len(), max) {
            let v =
                equal_semilattice(b, &p.concat(&w).concat(&p), &p).map_err(|e| e.to_string())?;
            ensure(v.is_not_equal(), || {
                format!("(e f)^{n} {} (e f)^{n} equals (e f)^{n}", w.render(b))
            })?;
            checked += 1;
        }
        r.say(format!(
            "(e f)^{n} w (e f)^{n} != (e f)^{n} for all {checked} words w of length <= {max}"
        ));
    }
    r.say("so no power of e f has an inverse: IG(Y) is not regular");
    Ok(())
}

fn normal5_nonunique(r: &mut Report) -> Outcome {
    let a = Analysis::bundled("normal5");
    let b = a.band();
    let rep = check_local_confluence(b);
    let p = rep
        .counterexample
        .ok_or("contraction rules are locally confluent")?;
    r.say(format!(
        "{} contracts to the normal forms {} and {}",
        p.word.render(b),
        p.left.render(b),
        p.right.render(b)
    ));
    ensure(
        p.word == a.w("c a d") && p.left == a.w("b d") && p.right == a.w("c d"),
        || "unexpected first critical word".into(),
    )?;
    let v = bfs_equal(b, &p.left, &p.right, Budget::with_max_len(4));
    let BfsOutcome::Equal(c) = v else {
        return Err("the two normal forms were not joined".into());
    };
    r.say("both normal forms name the same element:");
    r.certificate(b, &c);
    Ok(())
}

fn normal5_derivation(r: &mut Report) -> Outcome {
    let a = Analysis::bundled("normal5");
    let b = a.band();
    let BfsOutcome::Equal(c) = bfs_equal(b, &a.w("c d"), &a.w("b d"), Budget::with_max_len(4))
    else {
        return Err("c d = b d not found with max_len 4".into());
    };
    ensure(check_certificate(b, &c), || {
        "certificate does not replay".into()
    })?;
    r.certificate(b, &c);
    Ok(())
}

fn band4_nonabundant(r: &mut Report) -> Outcome {
    let a = Analysis::bundled("band4");
    let b = a.band();
    let target = a.w("a b");
    let e = tilde_idempotent(&a, &target, Side::R);
    r.say(format!("a b is R-tilde related to {}", b.name(e)));
    let w = search_nonabundance(&a, &target, 2, Budget::default()).ok_or("no witness found")?;
    ensure(
        w.kind == WitnessKind::Pair && w.x == a.w("x") && w.y == Some(a.w("y")),
        || format!("unexpected witness x = {}", w.x.render(b)),
    )?;
    verify_nonabundance(&a, &w, Budget::default())?;
    r.say(w.to_text(&a));
    r.say("witness verified: a b is R*-related to no idempotent");
    Ok(())
}

fn nonnormal5_projection(r: &mut Report) -> Outcome {
    let a = Analysis::bundled("nonnormal5");
    let b = a.band();
    let (w1, w2) = (a.w("u' w"), a.w("w'"));
    let v = equal(&a, &w1, &w2, Budget::default());
    let c = v.certificate().ok_or("u' w = w' was not certified")?;
    ensure(c.len() <= 6, || {
        format!("certificate has {} steps", c.len())
    })?;
    r.say("in IG(B):");
    r.certificate(b, c);
    let d = a.decomposition();
    let beta = d.class_of(b.index_of("w'").unwrap());
    let comp = b.restrict(d.members(beta)).map_err(|e| e.to_string())?;
    let local = |s: &str| GenWord::parse(&comp, s).unwrap();
    let v = equal_rectangular(&comp, &local("u' w"), &local("w'")).map_err(|e| e.to_string())?;
    ensure(v.is_not_equal(), || "component decider says equal".into())?;
    r.say(format!(
        "in IG of the component {} alone: not equal ({})",
        d.label(b, beta),
        v.method
    ));
    Ok(())
}

fn normal10_nonabundant(r: &mut Report) -> Outcome {
    let a = Analysis::bundled("normal10");
    let b = a.band();
    let BfsOutcome::Equal(c) = bfs_equal(b, &a.w("e v"), &a.w("e h e v"), Budget::default()) else {
        return Err("e v = e h e v not found".into());
    };
    ensure(c.len() <= 8, || {
        format!("certificate has {} steps", c.len())
    })?;
    r.certificate(b, &c);
    let v = equal_normal_component(&a, &a.w("e h e"), &a.w("e")).map_err(|e| e.to_string())?;
    ensure(v.is_not_equal(), || "e h e = e".into())?;
    r.say("e h e != e (normal-component)");
    let w = NonAbundanceWitness::build(&a, &a.w("e v"), a.w("e h"), None, Budget::default())?;
    verify_nonabundance(&a, &w, Budget::default())?;
    r.say(w.to_text(&a));
    r.say("witness verified: e v is R*-related to no idempotent");
    Ok(())
}

fn congruence(r: &mut Report, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, band) in crate::bundled::all() {
        let a = Analysis::new(band).map_err(|e| e.to_string())?;
        let s = sample_congruence(&a, &mut rng, 200, 4);
        r.say(format!(
            "{name}: {} related pairs per side, {} violations",
            s.triples,
            s.violations.len()
        ));
        ensure(s.violations.is_empty(), || {
            format!("{name}: {:?}", s.violations[0])
        })?;
    }
    Ok(())
}
