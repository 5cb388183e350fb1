//! Acceptance gate: every shipped claim pinned to a check, one
//! pass/fail line per criterion. Run with `--nocapture` to see the
//! lines for passing criteria too.

mod common;

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ccspace::consequence::{Operator, Rule, RuleSystem};
use ccspace::lattice::{
    build_cct, check_structure_theorems, cognitive_closure_in, enumerate_deductive, TheoremConfig,
};
use ccspace::metric::{detect_black_hole, detect_limits, PseudoMetric, ThoughtSequence};
use ccspace::report::Verdict;
use ccspace::set::{subsets_of, SentenceSet};
use ccspace::universe::Universe;

use common::{brute_force_deductive, naive_close, random_system};

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn run(&mut self, id: u32, name: &str, body: impl FnOnce() -> Result<(), String>) {
        match body() {
            Ok(()) => println!("criterion {id:02} ({name}): pass"),
            Err(msg) => {
                println!("criterion {id:02} ({name}): FAIL — {msg}");
                self.failures.push(format!("{id:02} {name}: {msg}"));
            }
        }
    }
}

fn rules_of(op: &Operator) -> &[Rule] {
    match op {
        Operator::Rules(r) => r.rules(),
        Operator::Table(_) => unreachable!(),
    }
}

fn quadratic_metric() -> PseudoMetric {
    PseudoMetric::weight(vec![0.1, 0.3, 0.5, 0.7, 0.85, 0.9, 1.0]).unwrap()
}

fn criterion_1() -> Result<(), String> {
    let started = Instant::now();
    let m = quadratic_metric();
    if m.cog(0, 1).unwrap() != 0.2 {
        return Err(format!("cog(x1, x2) = {}, expected exactly 0.2", m.cog(0, 1).unwrap()));
    }
    let ball = m.ball(6, 0.2).unwrap();
    if ball.iter().collect::<Vec<_>>() != vec![4, 5, 6] {
        return Err(format!("ball(x7, 0.2) = {ball:?}, expected {{x5, x6, x7}}"));
    }
    let seq = ThoughtSequence::new((0..7).collect()).unwrap();
    let report = detect_limits(&m, &seq, 0.2, None).unwrap();
    let x7 = &report.candidates[6];
    if !x7.detected || x7.onset != Some(5) {
        return Err(format!("x7 detection {:?}, expected onset 5", x7.onset));
    }
    let elapsed = started.elapsed();
    if elapsed.as_millis() >= 10 {
        return Err(format!("took {elapsed:?}, budget 10 ms"));
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..500 {
        let n = rng.gen_range(1..=12);
        let op = random_system(&mut rng, n, 30);
        let u = op.universe();
        for a in subsets_of(&u.full_set()) {
            let fast = op.close(&a);
            let slow = naive_close(u, rules_of(&op), &a);
            if fast != slow {
                return Err(format!("trial {trial}: mismatch on {a:?}: {fast:?} vs {slow:?}"));
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed.as_secs() >= 60 {
        return Err(format!("took {elapsed:?}, budget 60 s"));
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..200 {
        let n = rng.gen_range(1..=10);
        let op = random_system(&mut rng, n, 20);
        let u = op.universe();
        let family = enumerate_deductive(&op, &u.full_set(), 24).unwrap();
        for a in subsets_of(&u.full_set()) {
            if cognitive_closure_in(&family, &a) != op.close(&a) {
                return Err(format!("trial {trial}: Cl□ differs from close on {a:?}"));
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 200 {
        attempts += 1;
        if attempts > 20_000 {
            return Err("could not generate 200 systems with non-empty τ".into());
        }
        let n = rng.gen_range(2..=9);
        let op = random_system(&mut rng, n, 20);
        let tau = build_cct(&op, 24).unwrap();
        if tau.is_empty() {
            continue;
        }
        accepted += 1;
        for (i, a) in tau.members.iter().enumerate() {
            for b in &tau.members[i + 1..] {
                if !tau.contains(&a.union(b)) {
                    return Err(format!("pairwise union escapes τ: {a:?} ∪ {b:?}"));
                }
            }
        }
        for _ in 0..5 {
            // 5 sampled k-wise unions per system: 1000 across the run
            let k = rng.gen_range(1..=tau.members.len());
            let mut union = SentenceSet::empty(tau.cognitive.width());
            for _ in 0..k {
                union.union_with(&tau.members[rng.gen_range(0..tau.members.len())]);
            }
            if !tau.contains(&union) {
                return Err(format!("sampled union escapes τ: {union:?}"));
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < 200 {
        attempts += 1;
        if attempts > 40_000 {
            return Err("could not generate 200 systems satisfying the cognitive conditions".into());
        }
        let n = rng.gen_range(2..=9);
        let op = random_system(&mut rng, n, 20);
        let u = op.universe();
        let c = u.cognitive();
        if u.logic_base().is_empty() || op.close(c) == *c {
            continue;
        }
        accepted += 1;
        let tau = build_cct(&op, 24).unwrap();
        let mut union_all = u.empty_set();
        for m in &tau.members {
            union_all.union_with(m);
        }
        if c.difference(&union_all).is_empty() {
            return Err(format!("t3 violated: every sentence of C is covered (attempt {attempts})"));
        }
        for a in subsets_of(c) {
            if op.is_deductive(&a) && op.is_deductive(&a.complement_in(c).unwrap()) {
                return Err(format!("t5 violated by {a:?}"));
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..200 {
        let n = rng.gen_range(1..=12);
        let op = random_system(&mut rng, n, 25);
        let u = op.universe();
        for within in [u.full_set(), u.cognitive().clone()] {
            let fast = enumerate_deductive(&op, &within, 24).unwrap();
            let slow = brute_force_deductive(&op, &within);
            if fast.members != slow {
                return Err(format!("trial {trial}: enumeration differs from brute force"));
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut discrepancies = 0usize;
    for trial in 0..100 {
        let n = rng.gen_range(2..=10);
        let op = random_system(&mut rng, n, 20);
        let u = op.universe();
        let cn_c = op.close(u.cognitive());
        for f in cn_c.iter() {
            let family = ccspace::families::build_fhat_filter(&op, f, 14)
                .map_err(|e| format!("trial {trial}: construction crashed: {e}"))?;
            let checks = ccspace::families::check_fhat_filter(&op, &family, f);
            for c in checks {
                match (c.id.as_str(), c.verdict) {
                    ("fhat_upward_closed", Verdict::Pass) => {}
                    ("fhat_upward_closed", v) => {
                        return Err(format!("trial {trial}: upward closure {v:?} for f = {f}"));
                    }
                    ("fhat_intersection_closed", Verdict::Discrepancy) => discrepancies += 1,
                    ("fhat_intersection_closed", Verdict::Fail) => {
                        return Err(format!(
                            "trial {trial}: intersection failure reported as a defect, not a discrepancy"
                        ));
                    }
                    _ => {}
                }
            }
        }
    }
    // the claim is expected to fail for some rule systems; the gate only
    // requires those cases to surface as discrepancy findings
    let _ = discrepancies;
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut found = 0usize;
    let mut attempts = 0usize;
    while found < 1000 {
        attempts += 1;
        if attempts > 200_000 {
            return Err(format!("only {found} black holes found in {attempts} attempts"));
        }
        let n = rng.gen_range(2..=10);
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..=1.0)).collect();
        let metric = PseudoMetric::weight(weights).unwrap();
        let entries: Vec<usize> = (0..rng.gen_range(1..=20)).map(|_| rng.gen_range(0..n)).collect();
        let seq = ThoughtSequence::new(entries).unwrap();
        let x = rng.gen_range(0..n);
        let epsilon = rng.gen_range(0.01..0.3);
        let mut region = metric.ball(x, epsilon).unwrap();
        for i in 0..n {
            if rng.gen_bool(0.3) {
                region.insert(i);
            }
        }
        if let Some(_k) = detect_black_hole(&metric, &seq, x, epsilon, &region).unwrap() {
            found += 1;
            let limits = detect_limits(&metric, &seq, epsilon, None).unwrap();
            if limits.detected.contains(&x) {
                return Err(format!(
                    "sequence converges to a black-hole center (x = {x}, ε = {epsilon})"
                ));
            }
        }
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/tiny-cog.toml");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/tiny-cog-all.golden.json");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_ccspace"))
        .args(["all", fixture.to_str().unwrap(), "--format", "structured"])
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        return Err(format!("exit code {:?}", out.status.code()));
    }
    let text = String::from_utf8(out.stdout.clone()).map_err(|e| e.to_string())?;
    for needle in [
        "\"members\":[\"{a}\",\"{b}\",\"{a b}\"]",
        "\"t3.witness\":[\"t\"]",
        "\"members\":[\"{a b}\",\"{t a b}\"]",
        "\"members\":[\"{t a}\"]",
        "\"onset\":1",
    ] {
        if !text.contains(needle) {
            return Err(format!("report is missing `{needle}`"));
        }
    }
    let stored = std::fs::read(&golden).map_err(|e| format!("golden file: {e}"))?;
    if out.stdout != stored {
        return Err("report differs from the stored golden bytes".into());
    }
    Ok(())
}

fn criterion_10() -> Result<(), String> {
    // large closure: 10^4 symbols, 10^5 rules
    let n = 10_000;
    let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let universe = Arc::new(Universe::new(&labels, &labels[..100].to_vec(), &[]).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let rules: Vec<Rule> = (0..100_000)
        .map(|_| {
            let mut premises = SentenceSet::empty(n);
            for _ in 0..rng.gen_range(1..=3) {
                premises.insert(rng.gen_range(0..n));
            }
            Rule {
                premises,
                conclusion: rng.gen_range(0..n),
            }
        })
        .collect();
    let op = Operator::Rules(RuleSystem::new(universe.clone(), rules).unwrap());
    let mut seed_set = SentenceSet::empty(n);
    for i in 0..200 {
        seed_set.insert(i * 50);
    }
    let started = Instant::now();
    let closure = op.close(&seed_set);
    let elapsed = started.elapsed();
    if closure.len() < seed_set.len() {
        return Err("closure lost elements".into());
    }
    if elapsed.as_millis() >= 1000 {
        return Err(format!("close took {elapsed:?}, budget 1 s"));
    }

    // enumeration: 5 independent 4-symbol chains → 5^5 = 3125 closed sets
    let n = 20;
    let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let universe = Arc::new(Universe::new(&labels, &labels, &[]).unwrap());
    let mut rules = Vec::new();
    for chain in 0..5 {
        for link in 0..3 {
            let from = chain * 4 + link;
            rules.push(Rule {
                premises: SentenceSet::singleton(n, from),
                conclusion: from + 1,
            });
        }
    }
    let op = Operator::Rules(RuleSystem::new(universe.clone(), rules).unwrap());
    let started = Instant::now();
    let family = enumerate_deductive(&op, &universe.full_set(), 24).unwrap();
    let elapsed = started.elapsed();
    if family.len() != 3125 {
        return Err(format!("expected 3125 closed sets, found {}", family.len()));
    }
    if elapsed.as_secs() >= 5 {
        return Err(format!("enumeration took {elapsed:?}, budget 5 s"));
    }
    Ok(())
}

#[test]
fn acceptance_gate() {
    let mut gate = Gate { failures: Vec::new() };
    gate.run(1, "quadratic example reproduction", criterion_1);
    gate.run(2, "closure-oracle equivalence", criterion_2);
    gate.run(3, "cognitive closure equals close", criterion_3);
    gate.run(4, "tau union-closed", criterion_4);
    gate.run(5, "t3/t5 under cognitive conditions", criterion_5);
    gate.run(6, "moore-family enumeration", criterion_6);
    gate.run(7, "fhat filter axioms", criterion_7);
    gate.run(8, "black holes exclude convergence", criterion_8);
    gate.run(9, "tiny-cog golden report", criterion_9);
    gate.run(10, "performance budgets", criterion_10);
    assert!(
        gate.failures.is_empty(),
        "acceptance failures:\n{}",
        gate.failures.join("\n")
    );
}

#[test]
fn structure_theorems_pass_on_random_cognitive_systems() {
    // sanity companion to the gate: the full theorem checker stays
    // free of hard failures on systems meeting the theorems' hypotheses
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut accepted = 0;
    while accepted < 25 {
        let op = random_system(&mut rng, 7, 15);
        let u = op.universe();
        if u.logic_base().is_empty() || op.close(u.cognitive()) == *u.cognitive() {
            continue;
        }
        accepted += 1;
        let tau = build_cct(&op, 24).unwrap();
        let report = check_structure_theorems(&op, &tau, &TheoremConfig::default());
        for c in &report.checks {
            // t4 is an existence claim that legitimately fails when C
            // has no proper deductive subset; everything else must hold
            if c.id == "t4" {
                continue;
            }
            assert_ne!(c.verdict, Verdict::Fail, "{}: {:?}", c.id, c.note);
        }
    }
}
