//! Shared test oracles: naive fixpoints, brute-force enumerations, and
//! seeded random scenario generators. These deliberately use the
//! slowest obviously-correct algorithms.

use std::sync::Arc;

use rand::Rng;

use ccspace::consequence::{Operator, Rule, RuleSystem};
use ccspace::set::{subsets_of, SentenceSet};
use ccspace::universe::Universe;

/// Naive fixpoint: re-scan every rule until nothing changes.
pub fn naive_close(universe: &Universe, rules: &[Rule], a: &SentenceSet) -> SentenceSet {
    let mut result = a.union(universe.logic_base());
    loop {
        let mut changed = false;
        for rule in rules {
            if rule.premises.is_subset_of(&result) && !result.contains(rule.conclusion) {
                result.insert(rule.conclusion);
                changed = true;
            }
        }
        if !changed {
            return result;
        }
    }
}

/// Brute-force deductive filter over every subset of `within`.
pub fn brute_force_deductive(op: &Operator, within: &SentenceSet) -> Vec<SentenceSet> {
    subsets_of(within)
        .filter(|d| op.is_deductive(d))
        .collect()
}

/// A random rule system over `n` fresh symbols with a random cognitive
/// space, a logic base drawn inside it, and up to `max_rules` rules.
pub fn random_system<R: Rng>(rng: &mut R, n: usize, max_rules: usize) -> Operator {
    let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let cognitive: Vec<String> = labels
        .iter()
        .filter(|_| rng.gen_bool(0.7))
        .cloned()
        .collect();
    let logic_base: Vec<String> = if cognitive.is_empty() {
        Vec::new()
    } else {
        cognitive
            .iter()
            .filter(|_| rng.gen_bool(0.3))
            .cloned()
            .collect()
    };
    let universe = Arc::new(Universe::new(&labels, &cognitive, &logic_base).unwrap());
    let rule_count = rng.gen_range(0..=max_rules);
    let rules = (0..rule_count)
        .map(|_| {
            let premise_count = rng.gen_range(1..=3.min(n));
            let mut premises = SentenceSet::empty(n);
            for _ in 0..premise_count {
                premises.insert(rng.gen_range(0..n));
            }
            Rule {
                premises,
                conclusion: rng.gen_range(0..n),
            }
        })
        .collect();
    Operator::Rules(RuleSystem::new(universe, rules).unwrap())
}

/// Naive quadratic limit scan: for each candidate, try every onset.
/// A detected limit needs at least two tail entries inside the ball.
#[allow(dead_code)] // not every suite that includes this module uses it
pub fn naive_detect_limits(
    weights: &[f64],
    entries: &[usize],
    epsilon: f64,
) -> Vec<(usize, usize)> {
    let quantize = |d: f64| (d * 1e9).round() / 1e9;
    let mut detected = Vec::new();
    for x in 0..weights.len() {
        let mut onset = None;
        for m in 1..entries.len() {
            let tail_in = entries[m - 1..]
                .iter()
                .all(|&e| quantize((weights[x] - weights[e]).abs()) < epsilon);
            if tail_in {
                onset = Some(m);
                break;
            }
        }
        if let Some(m) = onset {
            detected.push((x, m));
        }
    }
    detected
}
