//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use garside_core::bkl::enumerate_canonical_factors;
use garside_core::dynamics::{exponent_sum, linking_number, verify_strand_deletion};
use garside_core::families::{alpha, uss_census, verify_alpha_family, verify_beta_family, BETA_USS_LIMIT};
use garside_core::summit::DEFAULT_BUDGET;
use garside_core::{ArtinGroup, BklGroup, BklWord, BraidWord, GarsideStructure, Presentation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn random_word(rng: &mut StdRng, n: usize, len: usize) -> BraidWord {
    let signed: Vec<i64> = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n as i64);
            if rng.gen_bool(0.5) { i } else { -i }
        })
        .collect();
    BraidWord::from_signed(n, &signed).unwrap()
}

fn splice(w: &BraidWord, at: usize, mid: &[i64]) -> BraidWord {
    let s = w.signed();
    let v: Vec<i64> = s[..at].iter().chain(mid).chain(&s[at..]).copied().collect();
    BraidWord::from_signed(w.strands(), &v).unwrap()
}

fn word_problem() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    for k in 0..1000 {
        let n = rng.gen_range(2..=7);
        let len = rng.gen_range(0..=30);
        let w = random_word(&mut rng, n, len);
        let g = ArtinGroup::new(n).unwrap();
        if !g.normal_form(&w.concat(&w.inverse()).unwrap()).unwrap().is_identity() {
            return Err(format!("word {k}: w·w⁻¹ not trivial for {w}"));
        }
        let at = rng.gen_range(0..=w.len());
        let i = rng.gen_range(1..n as i64);
        if !g.equals(&splice(&w, at, &[i, -i]), &w).unwrap() {
            return Err(format!("word {k}: free cancellation of {i} fails in {w}"));
        }
        if n >= 3 {
            let i = rng.gen_range(1..n as i64 - 1);
            if !g.equals(&splice(&w, at, &[i, i + 1, i]), &splice(&w, at, &[i + 1, i, i + 1])).unwrap() {
                return Err(format!("word {k}: braid relation at {i} fails in {w}"));
            }
        }
        if n >= 4 {
            let i = rng.gen_range(1..n as i64 - 2);
            let j = rng.gen_range(i + 2..n as i64);
            if !g.equals(&splice(&w, at, &[i, -j]), &splice(&w, at, &[-j, i])).unwrap() {
                return Err(format!("word {k}: commutation of {i}, {j} fails in {w}"));
            }
        }
    }
    Ok("1000 random words".into())
}

fn census(p: Presentation, expected: &[usize]) -> Outcome {
    let got: Vec<usize> = (3..3 + expected.len())
        .map(|n| uss_census(n, p, DEFAULT_BUDGET).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let text = format!("{p} sizes {got:?} for n = 3..{}", 2 + expected.len());
    if got == expected {
        Ok(text)
    } else {
        Err(format!("{text}, expected {expected:?}"))
    }
}

fn alpha_families() -> Outcome {
    let mut failures = Vec::new();
    for n in 3..=9 {
        let r = verify_alpha_family(n).map_err(|e| e.to_string())?;
        for c in r.failed_checks() {
            failures.push(format!("n={n} {}: {}", c.name, c.detail));
        }
    }
    if failures.is_empty() {
        Ok("n = 3..9 all checks".into())
    } else {
        Err(failures.join("; "))
    }
}

fn beta_families() -> Outcome {
    let mut failures = Vec::new();
    for n in [3, 5, 7, 9] {
        let r = verify_beta_family(n, BETA_USS_LIMIT).map_err(|e| e.to_string())?;
        for c in r.failed_checks() {
            failures.push(format!("n={n} {}: {}", c.name, c.detail));
        }
        if n <= 7 && !r.checks.iter().any(|c| c.name == "in_uss") {
            failures.push(format!("n={n}: USS membership not checked"));
        }
    }
    if failures.is_empty() {
        Ok("n = 3, 5, 7, 9 rigid and distinct; USS membership for n <= 7".into())
    } else {
        Err(failures.join("; "))
    }
}

fn strand_deletion() -> Outcome {
    for n in (3..=11).step_by(2) {
        let s = exponent_sum(&alpha(n).unwrap());
        if s != 0 {
            return Err(format!("exponent sum of alpha_{n} is {s}"));
        }
    }
    for n in [5, 7] {
        let r = verify_strand_deletion(n).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("n={n}: {:?}", r.failed_checks()));
        }
    }
    let cube = alpha(3).unwrap().pow(3);
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        let l = linking_number(&cube, i, j).unwrap();
        if l.twice != 0 {
            return Err(format!("strands {i}, {j} of alpha_3^3 link {l}"));
        }
    }
    Ok("exponent sums, odd-gap triples for n = 5, 7, unlinked alpha_3^3".into())
}

fn structure() -> Outcome {
    for (n, fact) in [(3, 6), (4, 24)] {
        let simples = ArtinGroup::new(n).unwrap().simples();
        let distinct: std::collections::BTreeSet<_> = simples.iter().collect();
        if simples.len() != fact || distinct.len() != fact {
            return Err(format!("{} simples at n = {n}", simples.len()));
        }
    }
    for (n, cat) in (2..=6).zip([2, 5, 14, 42, 132]) {
        let c = enumerate_canonical_factors(n).len();
        let via_trait = BklGroup::new(n).unwrap().simples().len();
        if c != cat || via_trait != cat {
            return Err(format!("{c} canonical factors at n = {n}, expected {cat}"));
        }
    }
    for n in [5usize, 7, 9] {
        let half = (n - 1) / 2;
        let mut bands: Vec<String> = (1..=half).map(|i| format!("({},{i})", n - i)).collect();
        bands.extend((1..=half).map(|i| format!("({},{i})", n + 1 - i)));
        let w = BklWord::parse(n, &bands.join(";")).unwrap();
        let g = ArtinGroup::new(n).unwrap();
        if !g.equals(&w.to_artin(), &BklWord::delta(n).to_artin()).unwrap() {
            return Err(format!("delta factorization fails at n = {n}"));
        }
    }
    Ok("n! simples, Catalan canonical factors, delta factorization".into())
}

fn random_bkl(rng: &mut StdRng, n: usize, len: usize) -> BklWord {
    let items: Vec<String> = (0..len)
        .map(|_| {
            let t = rng.gen_range(2..=n);
            let s = rng.gen_range(1..t);
            format!("{}({t},{s})", if rng.gen_bool(0.5) { "" } else { "-" })
        })
        .collect();
    BklWord::parse(n, &items.join(";")).unwrap()
}

fn cross_presentation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut equal_pairs = 0;
    for k in 0..500 {
        let n = rng.gen_range(2..=6);
        let b = BklGroup::new(n).unwrap();
        let a = ArtinGroup::new(n).unwrap();
        let len = rng.gen_range(0..=12);
        let u = random_bkl(&mut rng, n, len);
        // half the partners are rewritten forms of u, so both verdicts occur
        let v = if k % 2 == 0 {
            let x = random_bkl(&mut rng, n, 2);
            let nf_word = b.to_word(&b.normal_form(&u).unwrap());
            x.concat(&x.inverse()).unwrap().concat(&nf_word).unwrap()
        } else {
            random_bkl(&mut rng, n, len)
        };
        let bkl = b.equals(&u, &v).unwrap();
        let artin = a.equals(&u.to_artin(), &v.to_artin()).unwrap();
        if bkl != artin {
            return Err(format!("disagreement on {u} vs {v}"));
        }
        equal_pairs += bkl as usize;
    }
    Ok(format!("500 pairs, {equal_pairs} equal"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("word problem soundness", word_problem, Duration::from_secs(10)),
        ("Artin USS census", || census(Presentation::Artin, &[4, 6, 36, 54, 324]), Duration::from_secs(300)),
        ("BKL USS census", || census(Presentation::Bkl, &[6, 12, 90, 162, 1134]), Duration::from_secs(300)),
        ("alpha_n constrained family", alpha_families, Duration::from_secs(60)),
        ("beta subset conjugates", beta_families, Duration::from_secs(300)),
        ("strand deletion and linking", strand_deletion, Duration::from_secs(30)),
        ("structural invariants", structure, Duration::from_secs(60)),
        ("cross-presentation oracle", cross_presentation, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= *limit => (true, d),
            Ok(d) => (false, format!("{d}, but took longer than {limit:?}")),
            Err(d) => (false, d),
        };
        failed += !ok as usize;
        println!(
            "criterion {}: {} {name} ({:.2}s): {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
