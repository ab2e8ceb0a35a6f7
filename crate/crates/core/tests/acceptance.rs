//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use janet::complement::{check_partition, complementary_set, hilbert_from};
use janet::janet::{complete, in_cone, iteration_cap, mult_table};
use janet::monomial::{enumerate_degree, enumerate_up_to};
use janet::order::{has_degree_dominance, is_multiplication_compatible, is_total_order, DerivativeOrder};
use janet::pde::{
    canonicalize_system, integrability_conditions, monomial_template, normal_form_with, solve_series_monomial,
    substitution_residues, Canonical, MonomialPdeSystem, Strategy,
};
use janet::text::{parse_monomial_document, parse_pde_file, print_monomial_document, print_pde_document};
use janet::{Monomial, MonomialSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn m(e: &[u32]) -> Monomial {
    Monomial::from_slice(e)
}

fn random_sets(rng: &mut ChaCha8Rng, count: usize, max_len: usize, max_deg: u32) -> Vec<MonomialSet> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            common::random_monomials(rng, n, max_len, max_deg)
        })
        .collect()
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let u = MonomialSet::from_exponents(&[&[0, 2, 1], &[2, 0, 3]]);
    let trace = complete(&u).map_err(|e| e.to_string())?;
    let added: Vec<Monomial> = trace.steps.iter().map(|s| s.added.clone()).collect();
    ensure(added == [m(&[0, 2, 2]), m(&[0, 2, 3]), m(&[2, 1, 3])], || format!("steps {added:?}"))?;
    let expected = MonomialSet::from_exponents(&[&[2, 0, 3], &[0, 2, 1], &[0, 2, 2], &[0, 2, 3], &[2, 1, 3]]);
    ensure(trace.result == expected, || format!("result {:?}", trace.result))?;

    // (monomial, multiplicative variables) for the three tables before each step
    let tables: [&[(&[u32], &[usize])]; 3] = [
        &[(&[2, 0, 3], &[1, 2, 3]), (&[0, 2, 1], &[1, 2])],
        &[(&[2, 0, 3], &[1, 2, 3]), (&[0, 2, 2], &[1, 2]), (&[0, 2, 1], &[1, 2])],
        &[
            (&[0, 2, 3], &[1, 2, 3]),
            (&[2, 0, 3], &[1, 3]),
            (&[0, 2, 2], &[1, 2]),
            (&[0, 2, 1], &[1, 2]),
        ],
    ];
    let sets = trace.intermediate_sets();
    for (k, rows) in tables.iter().enumerate() {
        let table = mult_table(&sets[k]).map_err(|e| e.to_string())?;
        ensure(table.len() == rows.len(), || format!("table {k} has {} rows", table.len()))?;
        for (mono, vars) in rows.iter() {
            let got = table.mult(&m(mono)).map(|v| v.to_vec());
            ensure(got.as_deref() == Some(*vars), || format!("table {k}, {mono:?}: {got:?}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("3 steps, 5 monomials, 3 tables in {elapsed:?}"))
}

fn partition(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for u in random_sets(rng, 500, 8, 5) {
        let bound = u.max_degree() + 6;
        if let Some(v) = check_partition(&u, bound).map_err(|e| e.to_string())? {
            return Err(format!(
                "{:?}: {:?} in cone={} covers={}",
                v.set, v.monomial, v.in_cone, v.covers
            ));
        }
        checked += enumerate_up_to(u.arity(), bound).len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("500 sets, {checked} monomials, 0 violations in {elapsed:?}"))
}

fn completed_sets(rng: &mut ChaCha8Rng) -> Vec<(MonomialSet, janet::janet::CompletionTrace)> {
    random_sets(rng, 200, 6, 4)
        .into_iter()
        .map(|u| {
            let t = complete(&u).expect("completion within the cap");
            (u, t)
        })
        .collect()
}

fn unique_divisor(sets: &[(MonomialSet, janet::janet::CompletionTrace)]) -> Outcome {
    let mut checked = 0usize;
    for (_, trace) in sets {
        let j = &trace.result;
        let table = mult_table(j).map_err(|e| e.to_string())?;
        for w in enumerate_up_to(j.arity(), j.max_degree() + 5).iter() {
            let divisors = table.janet_divisors(w).len();
            let expected = usize::from(in_cone(j, w));
            ensure(divisors == expected, || format!("{w:?} has {divisors} Janet divisors in {j:?}"))?;
            checked += expected;
        }
    }
    Ok(format!("200 completed sets, {checked} cone members with one divisor"))
}

fn completion_soundness(sets: &[(MonomialSet, janet::janet::CompletionTrace)]) -> Outcome {
    let mut max_steps = 0;
    for (u, trace) in sets {
        let j = &trace.result;
        ensure(trace.steps.len() < iteration_cap(u), || format!("cap reached on {u:?}"))?;
        max_steps = max_steps.max(trace.steps.len());
        for w in enumerate_up_to(u.arity(), j.max_degree() + 5).iter() {
            ensure(in_cone(u, w) == in_cone(j, w), || format!("cones differ at {w:?} for {u:?}"))?;
        }
        let again = complete(j).map_err(|e| e.to_string())?;
        ensure(again.steps.is_empty() && &again.result == j, || format!("not idempotent on {j:?}"))?;
    }
    Ok(format!("200 sets, cones equal, idempotent, at most {max_steps} steps"))
}

fn hilbert(rng: &mut ChaCha8Rng) -> Outcome {
    for u in random_sets(rng, 100, 6, 5) {
        let comp = complementary_set(&u).map_err(|e| e.to_string())?;
        for d in 0..=10 {
            let brute = enumerate_degree(u.arity(), d).iter().filter(|w| !in_cone(&u, w)).count() as u64;
            let h = hilbert_from(&comp, d);
            ensure(h == brute, || format!("{u:?}, degree {d}: {h} vs {brute}"))?;
        }
    }
    Ok("100 sets, degrees 0..=10 agree".into())
}

fn orders(rng: &mut ChaCha8Rng) -> Outcome {
    let mut checked = 0;
    let mut check = |ord: &DerivativeOrder, n: usize, m: usize| -> Result<(), String> {
        ensure(is_total_order(ord, n, m, 4), || format!("{ord:?} not total"))?;
        ensure(has_degree_dominance(ord, n, m, 4), || format!("{ord:?} lacks degree dominance"))?;
        ensure(is_multiplication_compatible(ord, n, m, 4), || format!("{ord:?} not compatible"))?;
        checked += 1;
        Ok(())
    };
    for n in 1..=3 {
        for m in 1..=2 {
            check(&DerivativeOrder::Deglex, n, m)?;
        }
    }
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        check(&common::random_weight_order(rng, n, m), n, m)?;
    }
    Ok(format!("{checked} orders, degree <= 4"))
}

fn integrability() -> Outcome {
    let doc = |rhs: &str| parse_pde_file(&format!("vars x1 x2; unknowns phi; D[2,0] phi = {rhs}; D[1,1] phi = 0;"));
    let system = |d: janet::text::PdeDocument| match d.body {
        janet::text::PdeBody::System(s) => s,
        _ => unreachable!("solved form"),
    };

    let s = system(doc("0").map_err(|e| e.to_string())?);
    let c = integrability_conditions(&s).map_err(|e| e.to_string())?;
    ensure(c.len() == 1 && c[0].is_trivial(), || format!("{c:?}"))?;

    let s = system(doc("phi").map_err(|e| e.to_string())?);
    let c = integrability_conditions(&s).map_err(|e| e.to_string())?;
    ensure(c.len() == 1, || format!("{c:?}"))?;
    let r = &c[0].residual;
    let phi_x2 = janet::order::DerivativeSymbol::new(1, m(&[0, 1]));
    ensure(
        r.num_terms() == 1 && r.inhomogeneous().is_zero() && r.coefficient(&phi_x2).is_some_and(|k| k.as_constant().is_some()),
        || format!("residual {r:?}"),
    )?;

    let expected = system(parse_pde_file("vars x1 x2; unknowns phi; D[2,0] phi = phi; D[0,1] phi = 0;").map_err(|e| e.to_string())?);
    match canonicalize_system(&s).map_err(|e| e.to_string())? {
        Canonical::Canonical(c) => ensure(c == expected, || format!("canonical form {c:?}"))?,
        Canonical::Incompatible(w) => return Err(format!("incompatible: {w:?}")),
    }
    Ok("trivial condition, residual ~ phi_x2, canonical fixed point reached".into())
}

fn series(rng: &mut ChaCha8Rng) -> Outcome {
    let d = 6;
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let u = common::random_monomials(rng, n, 3, 3);
        let min = u.iter().map(Monomial::degree).min().expect("non-empty");
        let phi = common::random_poly(rng, n, 8, (3 + min).min(d));
        let sys = MonomialPdeSystem::from_solution(&u, &phi)
            .and_then(|s| s.completed())
            .map_err(|e| e.to_string())?;
        ensure(sys.is_complete(), || format!("{u:?} not complete after completion"))?;
        ensure(sys.rhs().values().all(|f| f.total_degree() <= 3), || "f of degree above 3".into())?;
        let data = monomial_template(&sys).map_err(|e| e.to_string())?.data_from_solution(&[phi.clone()]);
        let solved = solve_series_monomial(&sys, &data, d).map_err(|e| e.to_string())?;
        ensure(solved == phi.truncate(d), || format!("{u:?}: {solved} vs {phi}"))?;
        for (a, r) in substitution_residues(&sys, &solved, d) {
            ensure(r.is_zero(), || format!("residue {r} for {a:?}"))?;
        }
    }
    Ok(format!("50 systems reconstructed to degree {d}"))
}

fn confluence(rng: &mut ChaCha8Rng) -> Outcome {
    let mut compared = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let sys = common::random_complete_system(rng, n, m, 3);
        for _ in 0..5 {
            let e = common::random_expr(rng, n, m, 4);
            let a = normal_form_with(&sys, &e, Strategy::GreatestFirst).map_err(|e| e.to_string())?;
            let b = normal_form_with(&sys, &e, Strategy::SmallestFirst).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("strategies differ on {e:?}: {a:?} vs {b:?}"))?;
            compared += 1;
        }
    }
    Ok(format!("50 systems, {compared} expressions"))
}

fn command_for(path: &std::path::Path) -> Vec<String> {
    let file = path.display().to_string();
    let name = path.file_name().and_then(|f| f.to_str()).unwrap_or_default();
    match path.extension().and_then(|e| e.to_str()) {
        Some("mon") => vec!["complete".into(), file],
        _ if name.starts_with("monomial_") => vec!["pde".into(), "check".into(), file],
        _ => vec!["pde".into(), "canonicalize".into(), file],
    }
}

fn cli_round_trip() -> Outcome {
    let files = common::corpus_files();
    ensure(files.len() >= 20, || format!("only {} corpus files", files.len()))?;
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let name = path.display();
        if path.extension().is_some_and(|e| e == "mon") {
            let doc = parse_monomial_document(&text).map_err(|e| format!("{name}: {e}"))?;
            let once = print_monomial_document(&doc);
            let twice = print_monomial_document(&parse_monomial_document(&once).map_err(|e| e.to_string())?);
            ensure(once == twice, || format!("{name} is not a fixpoint"))?;
        } else {
            let doc = parse_pde_file(&text).map_err(|e| format!("{name}: {e}"))?;
            let once = print_pde_document(&doc);
            let twice = print_pde_document(&parse_pde_file(&once).map_err(|e| e.to_string())?);
            ensure(once == twice, || format!("{name} is not a fixpoint"))?;
        }
        let args = command_for(path);
        let run = || Command::new(env!("CARGO_BIN_EXE_janet")).args(&args).output();
        let (a, b) = (run().map_err(|e| e.to_string())?, run().map_err(|e| e.to_string())?);
        ensure(a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status, || {
            format!("{name}: reports differ between runs")
        })?;
    }
    Ok(format!("{} files", files.len()))
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failed = 0;
    let mut report = |k: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {k:>2} {name}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {k:>2} {name}: {detail} [{secs:.2}s]");
            }
        }
    };

    report(1, "worked example", &mut worked_example);
    report(2, "partition", &mut || partition(&mut rng));
    let sets = completed_sets(&mut rng);
    report(3, "unique Janet divisor", &mut || unique_divisor(&sets));
    report(4, "completion soundness", &mut || completion_soundness(&sets));
    report(5, "Hilbert function", &mut || hilbert(&mut rng));
    report(6, "order contracts", &mut || orders(&mut rng));
    report(7, "integrability decision", &mut integrability);
    report(8, "series solutions", &mut || series(&mut rng));
    report(9, "confluence", &mut || confluence(&mut rng));
    report(10, "round trip and determinism", &mut cli_round_trip);

    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
