//! Consequence operators: least-fixpoint closure of Horn-style rules
//! over a universe, explicit closure tables for counterexample
//! construction, and the axiom validator.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::report::{Check, Verdict};
use crate::set::{subsets_of, SentenceSet};
use crate::universe::Universe;

/// Largest universe for which the validator runs exhaustive subset scans.
pub const EXHAUSTIVE_LIMIT: usize = 14;

/// A finitary inference rule: all premises derived implies the conclusion.
#[derive(Debug, Clone)]
pub struct Rule {
    pub premises: SentenceSet,
    pub conclusion: usize,
}

/// A rule system realizes the operator as the least fixpoint of its
/// rules over `A ∪ L`. Rules are indexed by premise membership so a
/// closure only touches rules reachable from newly derived sentences.
#[derive(Debug)]
pub struct RuleSystem {
    universe: Arc<Universe>,
    rules: Vec<Rule>,
    // rule ids listed under each premise symbol
    premise_index: Vec<Vec<u32>>,
    premise_counts: Vec<u32>,
    axioms: Vec<u32>, // rules with no premises
}

impl RuleSystem {
    pub fn new(universe: Arc<Universe>, rules: Vec<Rule>) -> Result<RuleSystem, Error> {
        let n = universe.len();
        let mut premise_index = vec![Vec::new(); n];
        let mut premise_counts = Vec::with_capacity(rules.len());
        let mut axioms = Vec::new();
        for (rid, rule) in rules.iter().enumerate() {
            if rule.conclusion >= n || rule.premises.width() != n {
                return Err(Error::Precondition(
                    "rule refers to symbols outside the universe".into(),
                ));
            }
            let count = rule.premises.len() as u32;
            if count == 0 {
                axioms.push(rid as u32);
            }
            for p in rule.premises.iter() {
                premise_index[p].push(rid as u32);
            }
            premise_counts.push(count);
        }
        Ok(RuleSystem {
            universe,
            rules,
            premise_index,
            premise_counts,
            axioms,
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Least fixpoint of `a ∪ L` under the rules. Each rule keeps a
    /// count of premises not yet derived and fires when it hits zero,
    /// so the run is linear in derivations plus touched premises.
    pub fn close(&self, a: &SentenceSet) -> SentenceSet {
        let mut result = a.union(self.universe.logic_base());
        let mut counts = self.premise_counts.clone();
        let mut stack: Vec<usize> = result.iter().collect();
        for &rid in &self.axioms {
            let c = self.rules[rid as usize].conclusion;
            if !result.contains(c) {
                result.insert(c);
                stack.push(c);
            }
        }
        while let Some(s) = stack.pop() {
            for &rid in &self.premise_index[s] {
                let count = &mut counts[rid as usize];
                *count -= 1;
                if *count == 0 {
                    let c = self.rules[rid as usize].conclusion;
                    if !result.contains(c) {
                        result.insert(c);
                        stack.push(c);
                    }
                }
            }
        }
        result
    }

    /// Closure with per-sentence derivation support: `support[x]` is the
    /// subset of `a` a derivation of `x` rests on. Used to replay
    /// finitariness.
    pub fn close_with_support(&self, a: &SentenceSet) -> (SentenceSet, Vec<Option<SentenceSet>>) {
        let n = self.universe.len();
        let mut result = a.union(self.universe.logic_base());
        let mut support: Vec<Option<SentenceSet>> = vec![None; n];
        for s in self.universe.logic_base().iter() {
            support[s] = Some(self.universe.empty_set());
        }
        for s in a.iter() {
            support[s] = Some(SentenceSet::singleton(n, s));
        }
        for &rid in &self.axioms {
            let c = self.rules[rid as usize].conclusion;
            result.insert(c);
            support[c].get_or_insert_with(|| self.universe.empty_set());
        }
        // quadratic re-scan; only used by the validator on small inputs
        loop {
            let mut changed = false;
            for rule in &self.rules {
                if rule.premises.is_subset_of(&result) && support[rule.conclusion].is_none() {
                    let mut s = self.universe.empty_set();
                    for p in rule.premises.iter() {
                        s.union_with(support[p].as_ref().expect("premise derived"));
                    }
                    result.insert(rule.conclusion);
                    support[rule.conclusion] = Some(s);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (result, support)
    }
}

/// An explicit closure table over all subsets of a small universe.
/// Exists to construct axiom violations for validator tests; never
/// produced from scenario files.
#[derive(Debug)]
pub struct TableOperator {
    universe: Arc<Universe>,
    table: Vec<SentenceSet>,
}

impl TableOperator {
    pub fn new(universe: Arc<Universe>, table: Vec<SentenceSet>) -> Result<TableOperator, Error> {
        let n = universe.len();
        if n > 16 {
            return Err(Error::TooLargeForExhaustive { got: n, max: 16 });
        }
        if table.len() != 1 << n {
            return Err(Error::Precondition(format!(
                "closure table must have {} entries, got {}",
                1usize << n,
                table.len()
            )));
        }
        Ok(TableOperator { universe, table })
    }

    /// Identity table overridden at the given label-set entries.
    pub fn from_entries<S: AsRef<str>>(
        universe: Arc<Universe>,
        entries: &[(&[S], &[S])],
    ) -> Result<TableOperator, Error> {
        let n = universe.len();
        let mut table: Vec<SentenceSet> = (0..1u64 << n)
            .map(|bits| SentenceSet::from_bits(n, bits))
            .collect();
        for (key, value) in entries {
            let k = universe.set_of(key)?.to_bits().unwrap();
            table[k as usize] = universe.set_of(value)?;
        }
        TableOperator::new(universe, table)
    }

    pub fn close(&self, a: &SentenceSet) -> SentenceSet {
        self.table[a.to_bits().expect("table universes fit one word") as usize].clone()
    }
}

/// Either realization behind the operator contract.
#[derive(Debug)]
pub enum Operator {
    Rules(RuleSystem),
    Table(TableOperator),
}

impl Operator {
    pub fn universe(&self) -> &Arc<Universe> {
        match self {
            Operator::Rules(r) => &r.universe,
            Operator::Table(t) => &t.universe,
        }
    }

    pub fn close(&self, a: &SentenceSet) -> SentenceSet {
        match self {
            Operator::Rules(r) => r.close(a),
            Operator::Table(t) => t.close(a),
        }
    }

    pub fn is_deductive(&self, a: &SentenceSet) -> bool {
        self.close(a) == *a
    }
}

/// Optional encoding of implication sentences, keyed by (premise,
/// conclusion) index pairs; required to evaluate the deduction axiom.
#[derive(Debug, Default, Clone)]
pub struct ImplicationMap {
    pairs: std::collections::BTreeMap<(usize, usize), usize>,
}

impl ImplicationMap {
    pub fn insert(&mut self, premise: usize, conclusion: usize, sentence: usize) {
        self.pairs.insert((premise, conclusion), sentence);
    }

    pub fn get(&self, premise: usize, conclusion: usize) -> Option<usize> {
        self.pairs.get(&(premise, conclusion)).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.pairs.iter().map(|(&(x, y), &s)| (x, y, s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone)]
pub struct ValidationConfig {
    pub mode: ValidationMode,
    pub samples: usize,
    pub seed: u64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            mode: ValidationMode::Auto,
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug)]
pub struct AxiomReport {
    pub exhaustive: bool,
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Checks the operator axioms (inclusion, monotonicity, idempotence,
/// finitariness; the deduction axiom when an implication encoding is
/// supplied) plus the cognitive conditions `Cn(∅) ≠ ∅` and
/// `Cn(C) ≠ C`. Rule systems satisfy the structural axioms by
/// construction; the scan doubles as a self-test. Cognitive conditions
/// are diagnostics, never fatal.
pub fn validate_operator(
    op: &Operator,
    implications: Option<&ImplicationMap>,
    cfg: &ValidationConfig,
) -> Result<AxiomReport, Error> {
    let universe = op.universe();
    let n = universe.len();
    let exhaustive = match cfg.mode {
        ValidationMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::TooLargeForExhaustive {
                    got: n,
                    max: EXHAUSTIVE_LIMIT,
                });
            }
            true
        }
        ValidationMode::Sampled => false,
        ValidationMode::Auto => n <= EXHAUSTIVE_LIMIT,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let test_sets: Vec<SentenceSet> = if exhaustive {
        subsets_of(&universe.full_set()).collect()
    } else {
        (0..cfg.samples).map(|_| random_subset(&mut rng, n)).collect()
    };

    let mut checks = Vec::new();
    checks.push(
        Check::new("axiom_i", Verdict::Pass)
            .with_note("vacuously satisfied (finite universe)"),
    );

    // (ii) inclusion and (iv) idempotence over the test sets
    let closures: Vec<SentenceSet> = test_sets.iter().map(|a| op.close(a)).collect();
    let mut inclusion = Check::new("axiom_ii", Verdict::Pass);
    for (a, ca) in test_sets.iter().zip(&closures) {
        if !a.is_subset_of(ca) {
            inclusion = Check::new("axiom_ii", Verdict::Fail)
                .with_witness(universe.labels_of(a))
                .with_note("A is not contained in Cn(A)");
            break;
        }
    }
    checks.push(inclusion);

    // (iii) monotonicity: exhaustive walks every subset pair via subset
    // masks; sampled draws random A ⊆ B pairs.
    let mut monotone = Check::new("axiom_iii", Verdict::Pass);
    if exhaustive {
        'outer: for (b_idx, cb) in closures.iter().enumerate() {
            let b_bits = b_idx as u64;
            let mut a_bits = b_bits;
            loop {
                if !closures[a_bits as usize].is_subset_of(cb) {
                    monotone = Check::new("axiom_iii", Verdict::Fail)
                        .with_witness(universe.labels_of(&SentenceSet::from_bits(n, a_bits)))
                        .with_note(format!(
                            "Cn(A) escapes Cn(B) for B = {:?}",
                            universe.labels_of(&SentenceSet::from_bits(n, b_bits))
                        ));
                    break 'outer;
                }
                if a_bits == 0 {
                    break;
                }
                a_bits = (a_bits - 1) & b_bits;
            }
        }
    } else {
        for _ in 0..cfg.samples {
            let a = random_subset(&mut rng, n);
            let b = a.union(&random_subset(&mut rng, n));
            if !op.close(&a).is_subset_of(&op.close(&b)) {
                monotone = Check::new("axiom_iii", Verdict::Fail)
                    .with_witness(universe.labels_of(&a))
                    .with_note(format!("Cn(A) escapes Cn(B) for B = {:?}", universe.labels_of(&b)));
                break;
            }
        }
    }
    checks.push(monotone);

    let mut idempotent = Check::new("axiom_iv", Verdict::Pass);
    for (a, ca) in test_sets.iter().zip(&closures) {
        if op.close(ca) != *ca {
            idempotent = Check::new("axiom_iv", Verdict::Fail)
                .with_witness(universe.labels_of(a))
                .with_note("Cn(Cn(A)) differs from Cn(A)");
            break;
        }
    }
    checks.push(idempotent);

    // (v) finitariness: every derivation of a rule system rests on a
    // finite premise set; replay traces to confirm. Tables are finite,
    // so B = A already witnesses the axiom.
    let finitary = match op {
        Operator::Rules(rules) => {
            let mut check = Check::new("axiom_v", Verdict::Pass)
                .with_note("derivation traces replayed against finite supports");
            'sets: for a in &test_sets {
                let (closure, support) = rules.close_with_support(a);
                for x in closure.iter() {
                    let b = support[x].as_ref().expect("derived sentence has support");
                    if !rules.close(b).contains(x) {
                        check = Check::new("axiom_v", Verdict::Fail)
                            .with_witness(universe.labels_of(a))
                            .with_note(format!(
                                "trace for `{}` does not replay from its support",
                                universe.label(x)
                            ));
                        break 'sets;
                    }
                }
            }
            check
        }
        Operator::Table(_) => Check::new("axiom_v", Verdict::Pass)
            .with_note("finite universe: B = A witnesses the axiom"),
    };
    checks.push(finitary);

    // (vi) deduction axiom, only where an implication encoding exists
    let deduction = match implications {
        None => Check::new("axiom_vi", Verdict::NotEvaluated)
            .with_note("no implication encoding supplied"),
        Some(map) if map.is_empty() => Check::new("axiom_vi", Verdict::NotEvaluated)
            .with_note("no implication encoding supplied"),
        Some(map) => {
            let mut check = Check::new("axiom_vi", Verdict::Pass);
            'dsets: for a in &test_sets {
                for (x, y, imp) in map.iter() {
                    let mut ax = a.clone();
                    ax.insert(x);
                    if op.close(&ax).contains(y) && !op.close(a).contains(imp) {
                        check = Check::new("axiom_vi", Verdict::Fail)
                            .with_witness(universe.labels_of(a))
                            .with_note(format!(
                                "Y = `{}` follows from A ∪ {{`{}`}} but `{}` is not in Cn(A)",
                                universe.label(y),
                                universe.label(x),
                                universe.label(imp)
                            ));
                        break 'dsets;
                    }
                }
            }
            check
        }
    };
    checks.push(deduction);

    let cn_empty = op.close(&universe.empty_set());
    checks.push(if cn_empty.is_empty() {
        Check::new("cn_empty_nonempty", Verdict::Fail)
            .with_note("cognitive condition violated: Cn(∅) = ∅")
    } else {
        Check::new("cn_empty_nonempty", Verdict::Pass)
            .with_witness(universe.labels_of(&cn_empty))
    });

    let cognitive = universe.cognitive();
    let cn_c = op.close(cognitive);
    checks.push(if cn_c == *cognitive {
        Check::new("cn_cognitive_proper", Verdict::Fail)
            .with_note("cognitive condition violated: Cn(C) = C")
    } else {
        Check::new("cn_cognitive_proper", Verdict::Pass)
            .with_witness(universe.labels_of(&cn_c.difference(cognitive)))
    });

    Ok(AxiomReport { exhaustive, checks })
}

pub(crate) fn random_subset<R: Rng>(rng: &mut R, width: usize) -> SentenceSet {
    let mut s = SentenceSet::empty(width);
    for i in 0..width {
        if rng.gen_bool(0.5) {
            s.insert(i);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_cog() -> Operator {
        let u = Arc::new(Universe::new(&["t", "a", "b", "e"], &["t", "a", "b"], &["t"]).unwrap());
        let rule = Rule {
            premises: u.set_of(&["a", "b"]).unwrap(),
            conclusion: u.resolve("e").unwrap(),
        };
        Operator::Rules(RuleSystem::new(u, vec![rule]).unwrap())
    }

    #[test]
    fn tiny_cog_closures() {
        let op = tiny_cog();
        let u = op.universe().clone();
        assert_eq!(op.close(&u.set_of(&["a"]).unwrap()), u.set_of(&["t", "a"]).unwrap());
        assert_eq!(
            op.close(&u.set_of(&["t", "a", "b"]).unwrap()),
            u.set_of(&["t", "a", "b", "e"]).unwrap()
        );
        assert_eq!(op.close(&u.empty_set()), u.set_of(&["t"]).unwrap());
    }

    #[test]
    fn empty_rules_no_base_is_identity() {
        let u = Arc::new(Universe::new(&["a", "b", "c"], &["a", "b"], &[]).unwrap());
        let op = Operator::Rules(RuleSystem::new(u.clone(), vec![]).unwrap());
        for a in subsets_of(&u.full_set()) {
            assert_eq!(op.close(&a), a);
        }
    }

    #[test]
    fn deductive_checks() {
        let op = tiny_cog();
        let u = op.universe().clone();
        assert!(op.is_deductive(&u.set_of(&["t", "a"]).unwrap()));
        assert!(!op.is_deductive(&u.set_of(&["a"]).unwrap()));
        assert!(!op.is_deductive(&u.empty_set()));
    }

    #[test]
    fn tiny_cog_validates() {
        let op = tiny_cog();
        let report = validate_operator(&op, None, &ValidationConfig::default()).unwrap();
        assert!(report.exhaustive);
        for id in ["axiom_ii", "axiom_iii", "axiom_iv", "axiom_v"] {
            assert_eq!(report.check(id).unwrap().verdict, Verdict::Pass, "{id}");
        }
        assert_eq!(report.check("axiom_vi").unwrap().verdict, Verdict::NotEvaluated);
        assert_eq!(report.check("cn_empty_nonempty").unwrap().verdict, Verdict::Pass);
        assert_eq!(report.check("cn_cognitive_proper").unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn table_idempotence_violation_has_witness() {
        let u = Arc::new(Universe::new(&["a", "b", "c"], &["a", "b", "c"], &[]).unwrap());
        let table = TableOperator::from_entries(
            u,
            &[(&["a"], &["a", "b"]), (&["a", "b"], &["a", "b", "c"])],
        )
        .unwrap();
        let report =
            validate_operator(&Operator::Table(table), None, &ValidationConfig::default()).unwrap();
        let idem = report.check("axiom_iv").unwrap();
        assert_eq!(idem.verdict, Verdict::Fail);
        assert_eq!(idem.witness, vec!["a".to_string()]);
    }

    #[test]
    fn degenerate_mode_reports_cognitive_violation() {
        let u = Arc::new(Universe::new(&["a", "b"], &["a", "b"], &[]).unwrap());
        let op = Operator::Rules(RuleSystem::new(u, vec![]).unwrap());
        let report = validate_operator(&op, None, &ValidationConfig::default()).unwrap();
        assert_eq!(report.check("axiom_ii").unwrap().verdict, Verdict::Pass);
        assert_eq!(report.check("cn_empty_nonempty").unwrap().verdict, Verdict::Fail);
        assert_eq!(report.check("cn_cognitive_proper").unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn deduction_axiom_with_encoding() {
        // a ⊢ b, with "a⇒b" as a dedicated sentence derivable from nothing
        let u = Arc::new(Universe::new(&["a", "b", "imp"], &["a", "b"], &[]).unwrap());
        let rules = vec![
            Rule {
                premises: u.set_of(&["a"]).unwrap(),
                conclusion: u.resolve("b").unwrap(),
            },
            Rule {
                premises: u.empty_set(),
                conclusion: u.resolve("imp").unwrap(),
            },
        ];
        let op = Operator::Rules(RuleSystem::new(u.clone(), rules).unwrap());
        let mut map = ImplicationMap::default();
        map.insert(u.resolve("a").unwrap(), u.resolve("b").unwrap(), u.resolve("imp").unwrap());
        let report = validate_operator(&op, Some(&map), &ValidationConfig::default()).unwrap();
        assert_eq!(report.check("axiom_vi").unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn deduction_axiom_violation_detected() {
        let u = Arc::new(Universe::new(&["a", "b", "imp"], &["a", "b"], &[]).unwrap());
        let rules = vec![Rule {
            premises: u.set_of(&["a"]).unwrap(),
            conclusion: u.resolve("b").unwrap(),
        }];
        let op = Operator::Rules(RuleSystem::new(u.clone(), rules).unwrap());
        let mut map = ImplicationMap::default();
        map.insert(u.resolve("a").unwrap(), u.resolve("b").unwrap(), u.resolve("imp").unwrap());
        let report = validate_operator(&op, Some(&map), &ValidationConfig::default()).unwrap();
        assert_eq!(report.check("axiom_vi").unwrap().verdict, Verdict::Fail);
    }
}
