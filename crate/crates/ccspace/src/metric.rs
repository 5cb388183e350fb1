//! Cognitive similarity pseudometrics, thought sequences, limit and
//! limit-point detection, the limit theorems, and black-hole /
//! compactness analysis.
//!
//! Sequences are finite prefixes; "for all n ≥ m" is evaluated on the
//! stored prefix, which is the only computable reading.

use crate::consequence::Operator;
use crate::error::Error;
use crate::lattice::enumerate_deductive;
use crate::report::{Check, Verdict};
use crate::set::SentenceSet;
use crate::universe::Universe;

pub const DEFAULT_TOL_EQ: f64 = 1e-9;

/// Largest universe scanned exhaustively by the pseudometric validator.
pub const TRIPLE_SCAN_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
pub enum MetricKind {
    /// `cog(x, y) = |w(x) - w(y)|` for a weight function into [0, 1].
    Weight(Vec<f64>),
    /// Explicit symmetric distance table with entries in [0, 1].
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone)]
pub struct PseudoMetric {
    kind: MetricKind,
    pub tol_eq: f64,
}

impl PseudoMetric {
    pub fn weight(weights: Vec<f64>) -> Result<PseudoMetric, Error> {
        if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(Error::Precondition(format!("weight {w} outside [0, 1]")));
        }
        Ok(PseudoMetric {
            kind: MetricKind::Weight(weights),
            tol_eq: DEFAULT_TOL_EQ,
        })
    }

    pub fn matrix(table: Vec<Vec<f64>>) -> Result<PseudoMetric, Error> {
        let n = table.len();
        for row in &table {
            if row.len() != n {
                return Err(Error::Precondition("similarity matrix is not square".into()));
            }
            if let Some(v) = row.iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::Precondition(format!("distance {v} outside [0, 1]")));
            }
        }
        Ok(PseudoMetric {
            kind: MetricKind::Matrix(table),
            tol_eq: DEFAULT_TOL_EQ,
        })
    }

    pub fn with_tolerance(mut self, tol_eq: f64) -> Self {
        self.tol_eq = tol_eq;
        self
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            MetricKind::Weight(w) => w.len(),
            MetricKind::Matrix(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_weight_based(&self) -> bool {
        matches!(self.kind, MetricKind::Weight(_))
    }

    pub fn cog(&self, x: usize, y: usize) -> Result<f64, Error> {
        let n = self.len();
        if x >= n || y >= n {
            return Err(Error::Precondition("sentence outside the metric domain".into()));
        }
        Ok(self.cog_unchecked(x, y))
    }

    /// Distances are quantized to nine fractional digits (the report
    /// precision) so strict comparisons against decimal thresholds
    /// behave like exact decimal arithmetic.
    fn cog_unchecked(&self, x: usize, y: usize) -> f64 {
        let d = match &self.kind {
            MetricKind::Weight(w) => (w[x] - w[y]).abs(),
            MetricKind::Matrix(m) => m[x][y],
        };
        (d * 1e9).round() / 1e9
    }

    /// The cognition ball `{y : cog(x, y) < ε}` with strict inequality;
    /// the threshold lives in the open interval (0, 1).
    pub fn ball(&self, x: usize, epsilon: f64) -> Result<SentenceSet, Error> {
        check_epsilon(epsilon)?;
        let n = self.len();
        if x >= n {
            return Err(Error::Precondition("sentence outside the metric domain".into()));
        }
        let mut out = SentenceSet::empty(n);
        for y in 0..n {
            if self.cog_unchecked(x, y) < epsilon {
                out.insert(y);
            }
        }
        Ok(out)
    }
}

pub fn check_epsilon(epsilon: f64) -> Result<(), Error> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange(epsilon))
    }
}

/// Pseudometric axiom scan. Weight metrics satisfy the axioms
/// structurally, so their scan is a self-test; matrix metrics are
/// checked literally and failures carry witness triples.
pub fn validate_pseudometric(
    metric: &PseudoMetric,
    universe: &Universe,
    sample_triples: usize,
    seed: u64,
) -> Vec<Check> {
    use rand::Rng;
    use rand::SeedableRng;

    let n = metric.len();
    let mut checks = Vec::new();
    if n != universe.len() {
        checks.push(
            Check::new("metric_domain", Verdict::Fail)
                .with_note("metric domain does not match the universe"),
        );
        return checks;
    }
    let lbl = |i: usize| universe.label(i).to_string();

    let mut non_negative = Check::new("cog_i_non_negative", Verdict::Pass);
    let mut identity = Check::new("cog_ii_self_distance", Verdict::Pass);
    let mut symmetry = Check::new("cog_iii_symmetry", Verdict::Pass);
    for x in 0..n {
        if metric.cog_unchecked(x, x).abs() > metric.tol_eq {
            identity = Check::new("cog_ii_self_distance", Verdict::Fail)
                .with_witness(vec![lbl(x)]);
            break;
        }
    }
    for x in 0..n {
        for y in 0..n {
            let d = metric.cog_unchecked(x, y);
            if d < 0.0 {
                non_negative = Check::new("cog_i_non_negative", Verdict::Fail)
                    .with_witness(vec![lbl(x), lbl(y)]);
            }
            if (d - metric.cog_unchecked(y, x)).abs() > metric.tol_eq {
                symmetry = Check::new("cog_iii_symmetry", Verdict::Fail)
                    .with_witness(vec![lbl(x), lbl(y)]);
            }
        }
    }
    checks.push(non_negative);
    checks.push(identity);
    checks.push(symmetry);

    // (iv) congruence and (v) triangle inequality
    let mut congruence = Check::new("cog_iv_congruence", Verdict::Pass);
    let mut triangle = Check::new("cog_v_triangle", Verdict::Pass);
    let visit = |x: usize, y: usize, z: usize, congruence: &mut Check, triangle: &mut Check| {
        let xy = metric.cog_unchecked(x, y);
        let yz = metric.cog_unchecked(y, z);
        let xz = metric.cog_unchecked(x, z);
        if xz > xy + yz + metric.tol_eq && triangle.verdict == Verdict::Pass {
            *triangle = Check::new("cog_v_triangle", Verdict::Fail)
                .with_witness(vec![lbl(x), lbl(y), lbl(z)]);
        }
        if xy <= metric.tol_eq
            && (xz - yz).abs() > metric.tol_eq
            && congruence.verdict == Verdict::Pass
        {
            *congruence = Check::new("cog_iv_congruence", Verdict::Fail)
                .with_witness(vec![lbl(x), lbl(y), lbl(z)]);
        }
    };
    if n <= TRIPLE_SCAN_LIMIT && n * n * n <= 1 << 24 {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    visit(x, y, z, &mut congruence, &mut triangle);
                }
            }
        }
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sample_triples {
            let x = rng.gen_range(0..n);
            let y = rng.gen_range(0..n);
            let z = rng.gen_range(0..n);
            visit(x, y, z, &mut congruence, &mut triangle);
        }
        triangle = triangle.with_note("sampled triple scan");
    }
    checks.push(congruence);
    checks.push(triangle);
    checks
}

/// A finite prefix of a thought sequence; entries index the universe.
#[derive(Debug, Clone)]
pub struct ThoughtSequence {
    entries: Vec<usize>,
    pub virtual_limit: Option<usize>,
}

impl ThoughtSequence {
    pub fn new(entries: Vec<usize>) -> Result<ThoughtSequence, Error> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(ThoughtSequence {
            entries,
            virtual_limit: None,
        })
    }

    pub fn with_virtual_limit(mut self, limit: usize) -> Self {
        self.virtual_limit = Some(limit);
        self
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor rejects empty sequences
    }

    /// The set of sentences occurring in the prefix.
    pub fn support(&self, width: usize) -> SentenceSet {
        SentenceSet::from_indices(width, self.entries.iter().copied())
    }
}

#[derive(Debug, Clone)]
pub struct LimitCandidate {
    pub sentence: usize,
    pub detected: bool,
    /// 1-based onset m with every later entry inside the ball.
    pub onset: Option<usize>,
    /// Number of sequence entries (with multiplicity) inside the ball.
    pub ball_count: usize,
}

#[derive(Debug, Clone)]
pub struct LimitReport {
    pub epsilon: f64,
    pub candidates: Vec<LimitCandidate>,
    /// Detected ε-limits, ascending by index.
    pub detected: Vec<usize>,
    /// Limit points: candidates whose ball holds at least `threshold`
    /// entries of the prefix.
    pub limit_points: Vec<usize>,
    pub threshold: usize,
}

/// Scans every sentence of the universe as a limit candidate. A
/// candidate is a detected ε-limit when some onset m keeps the whole
/// tail inside its ball; the in-ball tail must hold at least two
/// entries, otherwise every final thought would trivially qualify.
/// Limit points use an occurrence threshold as the finite-prefix proxy
/// for "infinitely many". When no threshold is given it defaults to a
/// strict majority of the tail after the best detected onset (the
/// whole prefix when nothing is detected).
pub fn detect_limits(
    metric: &PseudoMetric,
    seq: &ThoughtSequence,
    epsilon: f64,
    limit_point_min: Option<usize>,
) -> Result<LimitReport, Error> {
    check_epsilon(epsilon)?;
    let n = metric.len();
    let len = seq.len();
    let mut candidates = Vec::with_capacity(n);
    let mut detected = Vec::new();
    let mut best_onset: Option<usize> = None;
    for x in 0..n {
        let mut last_outside = 0usize; // 1-based; 0 when every entry is inside
        let mut ball_count = 0usize;
        for (i, &entry) in seq.entries().iter().enumerate() {
            if metric.cog(x, entry)? < epsilon {
                ball_count += 1;
            } else {
                last_outside = i + 1;
            }
        }
        let onset = last_outside + 1;
        let is_limit = onset + 1 <= len;
        if is_limit {
            detected.push(x);
            best_onset = Some(best_onset.map_or(onset, |b| b.min(onset)));
        }
        candidates.push(LimitCandidate {
            sentence: x,
            detected: is_limit,
            onset: is_limit.then_some(onset),
            ball_count,
        });
    }
    let threshold = limit_point_min.unwrap_or_else(|| {
        let tail = len - best_onset.unwrap_or(1) + 1;
        tail / 2 + 1
    });
    let limit_points = candidates
        .iter()
        .filter(|c| c.ball_count >= threshold)
        .map(|c| c.sentence)
        .collect();
    Ok(LimitReport {
        epsilon,
        candidates,
        detected,
        limit_points,
        threshold,
    })
}

/// Checks the limit theorems on a detection report.
///
/// On a finite prefix, coincidence of two detected limits is provable
/// only up to the triangle bound `cog < 2ε`; the exact statement is
/// additionally asserted when the tail after the earliest onset is
/// constant.
pub fn check_limit_theorems(
    op: &Operator,
    metric: &PseudoMetric,
    seq: &ThoughtSequence,
    report: &LimitReport,
    cap: usize,
) -> Vec<Check> {
    let universe = op.universe();
    let n = universe.len();
    let mut checks = Vec::new();
    let lbl = |i: usize| universe.label(i).to_string();

    // 3.7 (finite form): detected limits pairwise within 2ε
    let mut coincide = Check::new("thm_3_7", Verdict::Pass)
        .with_note("finite-prefix form: pairwise cog < 2ε");
    'outer: for (i, &x) in report.detected.iter().enumerate() {
        for &y in &report.detected[i + 1..] {
            let d = metric.cog_unchecked(x, y);
            if d >= 2.0 * report.epsilon {
                coincide = Check::new("thm_3_7", Verdict::Fail)
                    .with_witness(vec![lbl(x), lbl(y)])
                    .with_note(format!("cog = {d} exceeds the 2ε bound"));
                break 'outer;
            }
        }
    }
    checks.push(coincide);

    // exact coincidence only for declared-constant tails
    let min_onset = report
        .detected
        .iter()
        .filter_map(|&x| report.candidates[x].onset)
        .min();
    if let Some(m) = min_onset {
        let tail = &seq.entries()[m - 1..];
        if tail.iter().all(|&t| t == tail[0]) && report.detected.len() > 1 {
            let mut exact = Check::new("thm_3_7_exact", Verdict::Pass)
                .with_note("constant tail: limits cognitively coincide");
            'exact: for (i, &x) in report.detected.iter().enumerate() {
                for &y in &report.detected[i + 1..] {
                    if metric.cog_unchecked(x, y) > metric.tol_eq {
                        exact = Check::new("thm_3_7_exact", Verdict::Discrepancy)
                            .with_witness(vec![lbl(x), lbl(y)])
                            .with_note("constant tail but limits do not coincide exactly");
                        break 'exact;
                    }
                }
            }
            checks.push(exact);
        }
    }

    let support = seq.support(n);
    let closure = op.close(&support);
    let d_set = SentenceSet::from_indices(n, report.detected.iter().copied());

    // t8: for a deductive support every detected limit already occurs
    checks.push(if closure == support {
        if d_set.is_subset_of(&support) {
            Check::new("thm_t8", Verdict::Pass)
        } else {
            Check::new("thm_t8", Verdict::Fail)
                .with_witness(universe.labels_of(&d_set.difference(&support)))
                .with_note("detected limit outside a deductive sequence")
        }
    } else {
        Check::new("thm_t8", Verdict::NotApplicable)
            .with_note("sequence support is not deductive")
    });

    // 3.10: Cn(support) = support ∪ D, reported with the counterexample set
    let support_and_d = support.union(&d_set);
    let thm_3_10_holds = closure == support_and_d;
    checks.push(if thm_3_10_holds {
        Check::new("thm_3_10", Verdict::Pass)
    } else {
        let mut diff = closure.difference(&support_and_d);
        diff.union_with(&support_and_d.difference(&closure));
        Check::new("thm_3_10", Verdict::Discrepancy)
            .with_witness(universe.labels_of(&diff))
            .with_note("Cn(support) differs from support ∪ detected limits")
    });

    // 3.11: detected limits stay inside every deductive superset of the
    // support, conditional on 3.10
    checks.push(if !thm_3_10_holds {
        Check::new("thm_3_11", Verdict::NotApplicable)
            .with_note("conditional on thm_3_10, which does not hold here")
    } else {
        match enumerate_deductive(op, &universe.full_set(), cap) {
            Err(_) => Check::new("thm_3_11", Verdict::NotEvaluated)
                .with_note("universe exceeds the enumeration cap"),
            Ok(family) => {
                let mut verdict = Check::new("thm_3_11", Verdict::Pass);
                for member in &family.members {
                    if support.is_subset_of(member) && !d_set.is_subset_of(member) {
                        verdict = Check::new("thm_3_11", Verdict::Fail)
                            .with_witness(universe.labels_of(member))
                            .with_note("detected limit escapes a deductive superset");
                        break;
                    }
                }
                verdict
            }
        }
    });

    checks
}

/// 3.12: when two sequences cognitively coincide from some position on,
/// their detected limits are pairwise within 2ε.
pub fn check_tail_coincidence(
    universe: &Universe,
    metric: &PseudoMetric,
    a: (&ThoughtSequence, &LimitReport),
    b: (&ThoughtSequence, &LimitReport),
) -> Check {
    let (seq_a, rep_a) = a;
    let (seq_b, rep_b) = b;
    let common = seq_a.len().min(seq_b.len());
    // longest shared suffix whose aligned entries coincide (cog ≈ 0)
    let mut suffix = 0usize;
    for k in 1..=common {
        let xa = seq_a.entries()[seq_a.len() - k];
        let xb = seq_b.entries()[seq_b.len() - k];
        if metric.cog_unchecked(xa, xb) <= metric.tol_eq {
            suffix = k;
        } else {
            break;
        }
    }
    if suffix == 0 {
        return Check::new("thm_3_12", Verdict::NotApplicable)
            .with_note("sequences do not coincide on any tail");
    }
    let eps = rep_a.epsilon.max(rep_b.epsilon);
    for &x in &rep_a.detected {
        for &y in &rep_b.detected {
            let d = metric.cog_unchecked(x, y);
            if d >= 2.0 * eps {
                return Check::new("thm_3_12", Verdict::Fail)
                    .with_witness(vec![
                        universe.label(x).to_string(),
                        universe.label(y).to_string(),
                    ])
                    .with_note(format!("limits {d} apart despite a coinciding tail"));
            }
        }
    }
    Check::new("thm_3_12", Verdict::Pass)
        .with_note(format!("tails coincide on the last {suffix} entries"))
}

/// Detects an incompleteness black hole around the virtual limit `x`:
/// the smallest onset `k` (always 1 on a finite prefix) such that
/// `ball(x, ε) ⊆ region` and no entry at index ≥ k enters the ball.
/// Absent when the ball escapes the region or when the sequence enters
/// the ball at any point — a visited ball is reachable, not a black
/// hole.
pub fn detect_black_hole(
    metric: &PseudoMetric,
    seq: &ThoughtSequence,
    x: usize,
    epsilon: f64,
    region: &SentenceSet,
) -> Result<Option<usize>, Error> {
    let ball = metric.ball(x, epsilon)?;
    if !ball.is_subset_of(region) {
        return Ok(None);
    }
    let entered = seq.entries().iter().any(|&entry| ball.contains(entry));
    Ok(if entered { None } else { Some(1) })
}

#[derive(Debug, Clone)]
pub struct BlackHoleWitness {
    pub sequence: String,
    pub center: usize,
    pub epsilon: f64,
    pub onset: usize,
}

#[derive(Debug)]
pub struct CompactnessReport {
    pub compact: bool,
    pub vacuous: bool,
    pub witnesses: Vec<BlackHoleWitness>,
    /// One entry per witness: the non-convergence assertion on it.
    pub divergence_checks: Vec<Check>,
}

/// Scans every registered sequence against every center in the solution
/// space and every threshold in the grid, with the solution space
/// itself as the region. Each found black hole is re-checked for
/// non-convergence at its center.
pub fn check_compactness(
    metric: &PseudoMetric,
    solution_space: &SentenceSet,
    sequences: &[(String, ThoughtSequence)],
    epsilon_grid: &[f64],
) -> Result<CompactnessReport, Error> {
    for &eps in epsilon_grid {
        check_epsilon(eps)?;
    }
    let mut witnesses = Vec::new();
    let mut divergence_checks = Vec::new();
    for (name, seq) in sequences {
        for x in solution_space.iter() {
            for &eps in epsilon_grid {
                if let Some(k) = detect_black_hole(metric, seq, x, eps, solution_space)? {
                    let limits = detect_limits(metric, seq, eps, None)?;
                    let id = format!("thm_5_1[{name}/{x}/{eps}]");
                    divergence_checks.push(if limits.detected.contains(&x) {
                        Check::new(id, Verdict::Fail)
                            .with_note("black hole found yet the sequence converges to its center")
                    } else {
                        Check::new(id, Verdict::Pass)
                    });
                    witnesses.push(BlackHoleWitness {
                        sequence: name.clone(),
                        center: x,
                        epsilon: eps,
                        onset: k,
                    });
                }
            }
        }
    }
    Ok(CompactnessReport {
        compact: witnesses.is_empty(),
        vacuous: sequences.is_empty(),
        witnesses,
        divergence_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consequence::{Rule, RuleSystem};
    use std::sync::Arc;

    fn quadratic_metric() -> PseudoMetric {
        PseudoMetric::weight(vec![0.1, 0.3, 0.5, 0.7, 0.85, 0.9, 1.0]).unwrap()
    }

    fn quadratic_seq() -> ThoughtSequence {
        ThoughtSequence::new((0..7).collect()).unwrap()
    }

    #[test]
    fn quadratic_distances() {
        let m = quadratic_metric();
        assert_eq!(m.cog(0, 1).unwrap(), 0.2);
        assert!((m.cog(4, 5).unwrap() - 0.05).abs() < 1e-12);
        assert_eq!(m.cog(3, 3).unwrap(), 0.0);
    }

    #[test]
    fn quadratic_balls() {
        let m = quadratic_metric();
        let b = m.ball(6, 0.2).unwrap();
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![4, 5, 6]);
        let tight = m.ball(6, 0.05).unwrap();
        assert_eq!(tight.iter().collect::<Vec<_>>(), vec![6]);
        assert!(b.contains(6));
        assert!(matches!(m.ball(6, 1.0), Err(Error::EpsilonOutOfRange(_))));
        assert!(matches!(m.ball(6, 0.0), Err(Error::EpsilonOutOfRange(_))));
    }

    #[test]
    fn ball_monotone_in_epsilon() {
        let m = quadratic_metric();
        let small = m.ball(3, 0.1).unwrap();
        let large = m.ball(3, 0.4).unwrap();
        assert!(small.is_subset_of(&large));
    }

    #[test]
    fn quadratic_limit_detection() {
        let m = quadratic_metric();
        let report = detect_limits(&m, &quadratic_seq(), 0.2, None).unwrap();
        let x7 = &report.candidates[6];
        assert!(x7.detected);
        assert_eq!(x7.onset, Some(5));
        let x6 = &report.candidates[5];
        assert!(x6.detected);
        assert_eq!(x6.onset, Some(5));
        // x₅ also keeps x₄…x₇ within 0.2
        let x5 = &report.candidates[4];
        assert!(x5.detected);
        assert_eq!(x5.onset, Some(4));
        assert_eq!(report.detected, vec![4, 5, 6]);
    }

    #[test]
    fn constant_sequence_converges_immediately() {
        let m = PseudoMetric::weight(vec![0.4, 0.9]).unwrap();
        let seq = ThoughtSequence::new(vec![0, 0, 0]).unwrap();
        let report = detect_limits(&m, &seq, 0.3, None).unwrap();
        assert!(report.candidates[0].detected);
        assert_eq!(report.candidates[0].onset, Some(1));
        assert!(!report.candidates[1].detected);
    }

    #[test]
    fn alternating_sequence_has_no_limit() {
        let m = PseudoMetric::weight(vec![0.05, 0.95]).unwrap();
        let seq = ThoughtSequence::new(vec![0, 1, 0, 1, 0, 1]).unwrap();
        let report = detect_limits(&m, &seq, 0.2, None).unwrap();
        assert!(report.detected.is_empty());
    }

    #[test]
    fn matrix_triangle_violation_has_witness() {
        let u = Universe::new(&["a", "b", "c"], &["a", "b", "c"], &[]).unwrap();
        let m = PseudoMetric::matrix(vec![
            vec![0.0, 0.1, 0.9],
            vec![0.1, 0.0, 0.1],
            vec![0.9, 0.1, 0.0],
        ])
        .unwrap();
        let checks = validate_pseudometric(&m, &u, 1000, 0);
        let triangle = checks.iter().find(|c| c.id == "cog_v_triangle").unwrap();
        assert_eq!(triangle.verdict, Verdict::Fail);
        assert_eq!(triangle.witness, vec!["a", "b", "c"]);
    }

    #[test]
    fn weight_metric_validates() {
        let u = Universe::new(&["a", "b", "c", "d"], &["a"], &[]).unwrap();
        let m = PseudoMetric::weight(vec![0.2, 0.2, 0.7, 1.0]).unwrap();
        for c in validate_pseudometric(&m, &u, 1000, 0) {
            assert_eq!(c.verdict, Verdict::Pass, "{}", c.id);
        }
    }

    fn tiny_cog_with_weights() -> (Operator, PseudoMetric) {
        let u = Arc::new(Universe::new(&["t", "a", "b", "e"], &["t", "a", "b"], &["t"]).unwrap());
        let rule = Rule {
            premises: u.set_of(&["a", "b"]).unwrap(),
            conclusion: u.resolve("e").unwrap(),
        };
        let op = Operator::Rules(RuleSystem::new(u, vec![rule]).unwrap());
        let m = PseudoMetric::weight(vec![0.9, 1.0, 0.2, 0.5]).unwrap();
        (op, m)
    }

    #[test]
    fn limit_theorems_on_deductive_support() {
        // (t, a, a, a): support {t, a} is deductive, limit a occurs in it
        let (op, m) = tiny_cog_with_weights();
        let seq = ThoughtSequence::new(vec![0, 1, 1, 1]).unwrap();
        let report = detect_limits(&m, &seq, 0.1, None).unwrap();
        assert_eq!(report.detected, vec![1]);
        let checks = check_limit_theorems(&op, &m, &seq, &report, 24);
        let t8 = checks.iter().find(|c| c.id == "thm_t8").unwrap();
        assert_eq!(t8.verdict, Verdict::Pass);
    }

    #[test]
    fn thm_3_10_reports_counterexample() {
        // (a, a): close adds t, so closure != support ∪ D
        let (op, m) = tiny_cog_with_weights();
        let seq = ThoughtSequence::new(vec![1, 1]).unwrap();
        let report = detect_limits(&m, &seq, 0.05, None).unwrap();
        assert_eq!(report.detected, vec![1]);
        let checks = check_limit_theorems(&op, &m, &seq, &report, 24);
        let c = checks.iter().find(|c| c.id == "thm_3_10").unwrap();
        assert_eq!(c.verdict, Verdict::Discrepancy);
        assert_eq!(c.witness, vec!["t".to_string()]);
        let c311 = checks.iter().find(|c| c.id == "thm_3_11").unwrap();
        assert_eq!(c311.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn quadratic_limits_within_two_epsilon() {
        let m = quadratic_metric();
        let seq = quadratic_seq();
        let report = detect_limits(&m, &seq, 0.2, None).unwrap();
        let u = Arc::new(Universe::new(
            &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
            &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
            &[],
        )
        .unwrap());
        let op = Operator::Rules(RuleSystem::new(u, vec![]).unwrap());
        let checks = check_limit_theorems(&op, &m, &seq, &report, 24);
        let c = checks.iter().find(|c| c.id == "thm_3_7").unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
    }

    #[test]
    fn truncated_quadratic_black_hole() {
        let m = quadratic_metric();
        let truncated = ThoughtSequence::new(vec![0, 1, 2, 3]).unwrap();
        let region = SentenceSet::from_indices(7, [4, 5, 6]);
        let k = detect_black_hole(&m, &truncated, 6, 0.2, &region).unwrap();
        assert_eq!(k, Some(1));

        // full sequence re-enters the ball
        let full = quadratic_seq();
        assert_eq!(detect_black_hole(&m, &full, 6, 0.2, &region).unwrap(), None);

        // ball not contained in the region
        let small_region = SentenceSet::from_indices(7, [6]);
        assert_eq!(
            detect_black_hole(&m, &truncated, 6, 0.2, &small_region).unwrap(),
            None
        );
    }

    #[test]
    fn compactness_scan() {
        let m = quadratic_metric();
        let space = SentenceSet::from_indices(7, [4, 5, 6]);
        let grid = [0.1, 0.2];
        let truncated = ThoughtSequence::new(vec![0, 1, 2, 3]).unwrap();
        let report = check_compactness(
            &m,
            &space,
            &[("truncated".into(), truncated)],
            &grid,
        )
        .unwrap();
        assert!(!report.compact);
        assert!(report
            .divergence_checks
            .iter()
            .all(|c| c.verdict == Verdict::Pass));

        let full = quadratic_seq();
        let report = check_compactness(&m, &space, &[("full".into(), full)], &grid).unwrap();
        assert!(report.compact);

        let report = check_compactness(&m, &space, &[], &grid).unwrap();
        assert!(report.compact);
        assert!(report.vacuous);
    }
}
