//! Acceptance suite: ten checks, one PASS/FAIL line each, with runtime
//! limits. Runs without the libtest harness so the lines always show.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use igband::band::rectangular_band;
use igband::bundled;
use igband::decide::{equal, equal_normal_component, equal_rectangular, equal_semilattice};
use igband::greens::{
    falsify_condition_p, sample_congruence, search_nonabundance, verify_nonabundance,
    NonAbundanceWitness, WitnessKind,
};
use igband::igword::{anf, significant_indices, ScanDirection};
use igband::rewrite::{
    bfs_equal, check_certificate, check_local_confluence, words_up_to, BfsOutcome, Budget, GenWord,
};
use igband::{Analysis, Band, Elem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{agreement, Decider, Scale};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn power(a: &Analysis, base: &str, n: usize) -> GenWord {
    a.w(&vec![base; n].join(" "))
}

/// Normal form in IG(Y) for Y = {e, f > g}: any g absorbs everything,
/// otherwise adjacent repeats collapse.
fn y3_oracle_nf(b: &Band, w: &[Elem]) -> Vec<Elem> {
    let g = b.index_of("g").unwrap();
    if w.contains(&g) {
        return vec![g];
    }
    let mut out: Vec<Elem> = Vec::new();
    for &x in w {
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    out
}

fn c1_y3_nonregular() -> Check {
    let a = Analysis::bundled("y3");
    let b = a.band();
    let mut checked = 0;
    for n in 1..=3 {
        let p = power(&a, "e f", n);
        for w in words_up_to(b.len(), 8) {
            let lhs = p.concat(&w).concat(&p);
            let v = equal_semilattice(b, &lhs, &p).map_err(|e| e.to_string())?;
            ensure(v.is_not_equal(), || {
                format!("n={n}, w={} decided equal", w.render(b))
            })?;
            ensure(y3_oracle_nf(b, &lhs) != y3_oracle_nf(b, &p), || {
                format!("oracle disagrees at n={n}, w={}", w.render(b))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, w) pairs, 0 counterexamples"))
}

fn c2_confluence() -> Check {
    let y3 = bundled::band("y3").unwrap();
    ensure(check_local_confluence(&y3).is_locally_confluent(), || {
        "y3 not confluent".into()
    })?;
    let names = ["a", "b", "c", "d", "e", "f", "g", "h", "i"];
    for rows in 1..=3 {
        for cols in 1..=3 {
            let r = rectangular_band(rows, cols, &names[..rows * cols]).unwrap();
            ensure(check_local_confluence(&r).is_locally_confluent(), || {
                format!("{rows}x{cols} rectangular band not confluent")
            })?;
        }
    }
    let n5 = Analysis::bundled("normal5");
    let rep = check_local_confluence(n5.band());
    let p = rep.counterexample.ok_or("normal5 reported confluent")?;
    ensure(
        p.word == n5.w("c a d") && p.left == n5.w("b d") && p.right == n5.w("c d"),
        || format!("normal5 counterexample {:?}", p),
    )?;
    Ok("y3 and 9 rectangular bands confluent; normal5: c a d -> {b d, c d}".into())
}

fn c3_band4() -> Check {
    let a = Analysis::bundled("band4");
    let budget = Budget::default();
    let w = NonAbundanceWitness::build(&a, &a.w("a b"), a.w("x"), Some(a.w("y")), budget)?;
    verify_nonabundance(&a, &w, budget)?;
    let found = search_nonabundance(&a, &a.w("a b"), 1, budget).ok_or("search found nothing")?;
    ensure(
        found.kind == WitnessKind::Pair && found.x == a.w("x") && found.y == Some(a.w("y")),
        || format!("search found x = {}", found.x.render(a.band())),
    )?;
    Ok("pair (x, y) verified and rediscovered at length 1".into())
}

fn c4_nonnormal5() -> Check {
    let a = Analysis::bundled("nonnormal5");
    let b = a.band();
    let v = equal(&a, &a.w("u' w"), &a.w("w'"), Budget::default());
    let c = v
        .certificate()
        .ok_or_else(|| format!("decided {}", v.verdict))?;
    ensure(check_certificate(b, c) && c.len() <= 6, || {
        format!("{} steps", c.len())
    })?;
    let d = a.decomposition();
    let beta = d.class_of(b.index_of("w'").unwrap());
    let comp = b.restrict(d.members(beta)).unwrap();
    let w = |s: &str| GenWord::parse(&comp, s).unwrap();
    let r = equal_rectangular(&comp, &w("u' w"), &w("w'")).map_err(|e| e.to_string())?;
    ensure(r.is_not_equal(), || "component decider says equal".into())?;
    Ok(format!(
        "{}-step certificate in IG(B); not equal in IG(B_beta)",
        c.len()
    ))
}

fn c5_normal10() -> Check {
    let a = Analysis::bundled("normal10");
    let b = a.band();
    let BfsOutcome::Equal(c) = bfs_equal(b, &a.w("e v"), &a.w("e h e v"), Budget::default()) else {
        return Err("e v = e h e v not certified".into());
    };
    ensure(check_certificate(b, &c) && c.len() <= 8, || {
        format!("{} steps", c.len())
    })?;
    let v = equal_normal_component(&a, &a.w("e h e"), &a.w("e")).map_err(|e| e.to_string())?;
    ensure(v.is_not_equal(), || "e h e decided equal to e".into())?;
    let budget = Budget::default();
    let w = NonAbundanceWitness::build(&a, &a.w("e v"), a.w("e h"), None, budget)?;
    ensure(w.kind == WitnessKind::Single, || {
        "not a single witness".into()
    })?;
    verify_nonabundance(&a, &w, budget)?;
    Ok(format!(
        "{}-step certificate; e h e != e; witness x = e h verified",
        c.len()
    ))
}

fn c6_normal5_derivation() -> Check {
    let a = Analysis::bundled("normal5");
    let BfsOutcome::Equal(c) =
        bfs_equal(a.band(), &a.w("c d"), &a.w("b d"), Budget::with_max_len(4))
    else {
        return Err("not certified with max_len 4".into());
    };
    ensure(check_certificate(a.band(), &c), || {
        "certificate does not replay".into()
    })?;
    Ok(format!("{}-step certificate", c.len()))
}

fn c7_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let scale = Scale {
        exhaustive_len: 3,
        random_pairs: 500,
        random_len: 5,
        closure_len: 7,
        random_states: 20_000,
    };
    let mut summary = Vec::new();
    for (name, decider) in [
        ("y3", Decider::Semilattice),
        ("rect1", Decider::LocallyLarge),
        ("normal10", Decider::NormalComponent),
    ] {
        let s = agreement(&Analysis::bundled(name), decider, scale, &mut rng)?;
        summary.push(format!(
            "{name}: {} compared ({} equal), {} oracle-inconclusive",
            s.compared, s.equal, s.inconclusive
        ));
    }
    Ok(summary.join("; "))
}

fn c8_anf() -> Check {
    let mut total = 0;
    for (name, band) in bundled::all() {
        let a = Analysis::new(band).map_err(|e| e.to_string())?;
        let d = a.decomposition();
        for w in words_up_to(a.band().len(), 4) {
            let (f, c) = anf(&a, &w);
            let what = || format!("{name}: {}", w.render(a.band()));
            ensure(f.is_valid(d), || format!("invalid blocks for {}", what()))?;
            ensure(
                c.start == w && &c.end == f.word() && check_certificate(a.band(), &c),
                || format!("bad certificate for {}", what()),
            )?;
            let ltr = significant_indices(d, f.word(), ScanDirection::LeftToRight);
            let mut ends = f.bounds().to_vec();
            ends.push(f.word().len());
            let rtl = significant_indices(d, f.word(), ScanDirection::RightToLeft);
            let starts: Vec<usize> = f.block_ranges().iter().map(|r| r.start + 1).collect();
            ensure(ltr.indices == ends && rtl.indices == starts, || {
                format!("indices off the block boundaries for {}", what())
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} words, 0 violations"))
}

fn c9_congruence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut parts = Vec::new();
    for (name, band) in bundled::all() {
        let a = Analysis::new(band).map_err(|e| e.to_string())?;
        let s = sample_congruence(&a, &mut rng, 500, 5);
        ensure(s.triples == 500, || {
            format!("{name}: only {} related pairs drawn", s.triples)
        })?;
        ensure(s.violations.is_empty(), || {
            format!("{name}: {:?}", s.violations[0])
        })?;
        parts.push(name);
    }
    Ok(format!(
        "500 triples per side for {}; 0 violations",
        parts.join(", ")
    ))
}

fn c10_condition_p() -> Check {
    let budget = Budget::default();
    let n10 = Analysis::bundled("normal10");
    let v = falsify_condition_p(&n10, 6, budget).ok_or("no violation found for normal10")?;
    ensure(check_certificate(n10.band(), &v.certificate), || {
        "violation certificate does not replay".into()
    })?;
    for name in ["y3", "rect1"] {
        let a = Analysis::bundled(name);
        ensure(falsify_condition_p(&a, 6, budget).is_none(), || {
            format!("violation reported for {name}")
        })?;
    }
    Ok(format!(
        "normal10: {} = {}; none for y3, rect1",
        v.u.render(&n10),
        v.v.render(&n10)
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("y3 powers of e f are not regular", 5, c1_y3_nonregular),
        ("local confluence verdicts", 1, c2_confluence),
        ("band4 non-abundance witness", 1, c3_band4),
        ("nonnormal5 projection counterexample", 1, c4_nonnormal5),
        ("normal10 non-abundance", 2, c5_normal10),
        ("normal5 derivation", 1, c6_normal5_derivation),
        ("decider and oracle agreement", 60, c7_agreement),
        ("almost normal form invariants", 30, c8_anf),
        ("congruence condition sampling", 30, c9_congruence),
        ("Condition (P) falsifier", 120, c10_condition_p),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let (status, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} {name}: {detail} ({:.2}s, limit {limit}s)",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
