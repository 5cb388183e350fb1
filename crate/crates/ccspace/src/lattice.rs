//! Deductive-set enumeration (the closed-set lattice), cognitive
//! closure, the consequence-wise-open family over the cognitive space,
//! and the structure-theorem checker.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::consequence::Operator;
use crate::error::Error;
use crate::report::{Check, Verdict};
use crate::set::SentenceSet;

/// Default cap on the carrier size for closed-set enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// Deductive subsets of a carrier, in lectic order.
#[derive(Debug, Clone)]
pub struct MooreFamily {
    pub within: SentenceSet,
    pub members: Vec<SentenceSet>,
}

impl MooreFamily {
    pub fn contains(&self, set: &SentenceSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The family τ of subsets of C whose relative complement in C is
/// deductive; closed under union, never contains ∅ or C while the
/// cognitive conditions hold.
#[derive(Debug, Clone)]
pub struct CctFamily {
    pub cognitive: SentenceSet,
    pub members: Vec<SentenceSet>,
}

impl CctFamily {
    pub fn contains(&self, set: &SentenceSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// NextClosure step for the operator `phi` on the elements of `within`,
/// with lectic significance growing with the symbol index.
fn next_closure<F>(phi: &F, elems: &[usize], current: &SentenceSet) -> Option<SentenceSet>
where
    F: Fn(&SentenceSet) -> SentenceSet,
{
    let mut a = current.clone();
    for &m in elems {
        if a.contains(m) {
            a.remove(m);
        } else {
            let mut seed = a.clone();
            seed.insert(m);
            let b = phi(&seed);
            if b.difference(&a).iter().all(|x| x <= m) {
                return Some(b);
            }
        }
    }
    None
}

/// Enumerates the deductive subsets of `within` in lectic order.
///
/// Runs NextClosure on the induced closure operator
/// `D ↦ close(D) ∩ within`, then keeps the sets whose full closure does
/// not escape the carrier.
pub fn enumerate_deductive(
    op: &Operator,
    within: &SentenceSet,
    cap: usize,
) -> Result<MooreFamily, Error> {
    let size = within.len();
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let elems: Vec<usize> = within.iter().collect();
    let phi = |d: &SentenceSet| op.close(d).intersection(within);
    let mut members = Vec::new();
    let mut current = Some(phi(&SentenceSet::empty(within.width())));
    while let Some(set) = current {
        if op.is_deductive(&set) {
            members.push(set.clone());
        }
        current = next_closure(&phi, &elems, &set);
    }
    Ok(MooreFamily {
        within: within.clone(),
        members,
    })
}

/// Intersection of all deductive supersets of `a` drawn from a family
/// enumerated over the full universe.
pub fn cognitive_closure_in(family: &MooreFamily, a: &SentenceSet) -> SentenceSet {
    let mut out = SentenceSet::full(a.width());
    for m in &family.members {
        if a.is_subset_of(m) {
            out.intersect_with(m);
        }
    }
    out
}

/// Cognitive closure of `a`: the intersection of every deductive set of
/// the universe containing `a`. Agrees with `close` on every input.
pub fn cognitive_closure(op: &Operator, a: &SentenceSet, cap: usize) -> Result<SentenceSet, Error> {
    let family = enumerate_deductive(op, &op.universe().full_set(), cap)?;
    Ok(cognitive_closure_in(&family, a))
}

/// Builds τ over the cognitive space: complements (in C) of the
/// deductive subsets of C, in lectic order.
pub fn build_cct(op: &Operator, cap: usize) -> Result<CctFamily, Error> {
    let cognitive = op.universe().cognitive().clone();
    let deductive = enumerate_deductive(op, &cognitive, cap)?;
    let mut members: Vec<SentenceSet> = deductive
        .members
        .iter()
        .map(|d| d.complement_in(&cognitive).expect("member of P(C)"))
        .collect();
    members.sort();
    Ok(CctFamily { cognitive, members })
}

#[derive(Debug, Clone)]
pub struct TheoremConfig {
    pub seed: u64,
    /// Random sub-family draws once the family outgrows the exhaustive limit.
    pub samples: usize,
    /// Largest family for which every sub-family union is scanned.
    pub exhaustive_family_limit: usize,
    /// Largest universe for which closure properties scan every subset pair.
    pub exhaustive_pair_limit: usize,
}

impl Default for TheoremConfig {
    fn default() -> Self {
        TheoremConfig {
            seed: 0,
            samples: 1000,
            exhaustive_family_limit: 20,
            exhaustive_pair_limit: 12,
        }
    }
}

#[derive(Debug)]
pub struct TheoremReport {
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Machine-checks the structural theorems of the open-set family τ and
/// the closure-property list.
pub fn check_structure_theorems(
    op: &Operator,
    tau: &CctFamily,
    cfg: &TheoremConfig,
) -> TheoremReport {
    let universe = op.universe();
    let cognitive = &tau.cognitive;
    let cn_empty = op.close(&universe.empty_set());
    let cn_c = op.close(cognitive);
    let conditions_hold = !cn_empty.is_empty() && cn_c != *cognitive;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = Vec::new();

    checks.push(check_union_closure(tau, cfg, &mut rng));
    checks.push(check_intersection_conditional(op, tau, cfg, &mut rng));

    // t3: some sentence of C lies outside every open set
    let union_all = tau
        .members
        .iter()
        .fold(SentenceSet::empty(cognitive.width()), |acc, m| acc.union(m));
    checks.push(if cn_empty.is_empty() {
        Check::new("t3", Verdict::NotApplicable).with_note("not applicable: Cn(∅) = ∅")
    } else {
        let uncovered = cognitive.difference(&union_all);
        match uncovered.min_element() {
            Some(f) => Check::new("t3", Verdict::Pass)
                .with_witness(vec![universe.label(f).to_string()]),
            None => Check::new("t3", Verdict::Fail)
                .with_note("every sentence of C lies in some open set"),
        }
    });

    // t4: some sentence of C lies in an open set; an existence claim
    // that can fail for finite operators, so it is reported, not assumed
    checks.push(match union_all.min_element() {
        Some(f) => {
            Check::new("t4", Verdict::Pass).with_witness(vec![universe.label(f).to_string()])
        }
        None => Check::new("t4", Verdict::Fail)
            .with_note("fails: no proper deductive subset of C"),
    });

    // t5: A ∈ τ and C∖A ∈ τ would make both A and C∖A deductive
    checks.push(if !conditions_hold {
        Check::new("t5", Verdict::NotApplicable)
            .with_note("not applicable: cognitive conditions violated")
    } else {
        let mut verdict = Check::new("t5", Verdict::Pass);
        for a in &tau.members {
            let complement = a.complement_in(cognitive).expect("member of P(C)");
            if tau.contains(&complement) {
                verdict = Check::new("t5", Verdict::Fail)
                    .with_witness(universe.labels_of(a))
                    .with_note("both the set and its complement in C are deductive");
                break;
            }
        }
        verdict
    });

    checks.extend(check_closure_properties(op, cfg, &mut rng));
    TheoremReport { checks }
}

fn check_union_closure(tau: &CctFamily, cfg: &TheoremConfig, rng: &mut ChaCha8Rng) -> Check {
    let members = &tau.members;
    if members.is_empty() {
        return Check::new("t1", Verdict::Pass).with_note("empty family: vacuous");
    }
    // all pairs first
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if !tau.contains(&a.union(b)) {
                return Check::new("t1", Verdict::Fail)
                    .with_witness(vec![format!("{:?}", a), format!("{:?}", b)])
                    .with_note("pairwise union escapes τ");
            }
        }
    }
    let width = tau.cognitive.width();
    let check_family = |picks: &[&SentenceSet]| -> bool {
        let union = picks
            .iter()
            .fold(SentenceSet::empty(width), |acc, m| acc.union(m));
        tau.contains(&union)
    };
    if members.len() <= cfg.exhaustive_family_limit {
        for mask in 1u64..1 << members.len() {
            let picks: Vec<&SentenceSet> = members
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, m)| m)
                .collect();
            if !check_family(&picks) {
                return Check::new("t1", Verdict::Fail).with_note("sub-family union escapes τ");
            }
        }
        Check::new("t1", Verdict::Pass).with_note("all sub-family unions verified")
    } else {
        for _ in 0..cfg.samples {
            let k = rng.gen_range(1..=members.len());
            let picks: Vec<&SentenceSet> =
                members.choose_multiple(rng, k).collect();
            if !check_family(&picks) {
                return Check::new("t1", Verdict::Fail)
                    .with_note("sampled sub-family union escapes τ");
            }
        }
        Check::new("t1", Verdict::Pass)
            .with_note(format!("pairwise plus {} sampled sub-family unions", cfg.samples))
    }
}

/// t2: when the union of the complements of picked open sets is
/// deductive, their intersection must stay in τ.
fn check_intersection_conditional(
    op: &Operator,
    tau: &CctFamily,
    cfg: &TheoremConfig,
    rng: &mut ChaCha8Rng,
) -> Check {
    let members = &tau.members;
    if members.is_empty() {
        return Check::new("t2", Verdict::Pass).with_note("empty family: vacuous");
    }
    let cognitive = &tau.cognitive;
    let mut premise_instances = 0usize;
    let mut evaluate = |picks: &[&SentenceSet]| -> Option<Check> {
        let mut inter = cognitive.clone();
        let mut comp_union = SentenceSet::empty(cognitive.width());
        for m in picks {
            inter.intersect_with(m);
            comp_union.union_with(&m.complement_in(cognitive).expect("member of P(C)"));
        }
        if op.is_deductive(&comp_union) {
            premise_instances += 1;
            if !tau.contains(&inter) {
                return Some(
                    Check::new("t2", Verdict::Fail)
                        .with_witness(picks.iter().map(|m| format!("{:?}", m)).collect())
                        .with_note("premise holds but the intersection escapes τ"),
                );
            }
        }
        None
    };
    if members.len() <= cfg.exhaustive_family_limit {
        for mask in 1u64..1 << members.len() {
            let picks: Vec<&SentenceSet> = members
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, m)| m)
                .collect();
            if let Some(fail) = evaluate(&picks) {
                return fail;
            }
        }
    } else {
        for _ in 0..cfg.samples {
            let k = rng.gen_range(1..=members.len());
            let picks: Vec<&SentenceSet> = members.choose_multiple(rng, k).collect();
            if let Some(fail) = evaluate(&picks) {
                return fail;
            }
        }
    }
    Check::new("t2", Verdict::Pass).with_note(format!(
        "{} instances satisfied the deductive-union premise",
        premise_instances
    ))
}

fn check_closure_properties(
    op: &Operator,
    cfg: &TheoremConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<Check> {
    let universe = op.universe();
    let n = universe.len();
    let mut fails: [Option<(SentenceSet, SentenceSet)>; 5] = Default::default();

    if n <= cfg.exhaustive_pair_limit {
        // memoized single-word closures let the pair scan stay on u64 ops
        let total = 1u64 << n;
        let closures: Vec<u64> = (0..total)
            .map(|bits| {
                op.close(&SentenceSet::from_bits(n, bits))
                    .to_bits()
                    .expect("small universe")
            })
            .collect();
        let witness = |a: u64, b: u64| {
            Some((SentenceSet::from_bits(n, a), SentenceSet::from_bits(n, b)))
        };
        for a in 0..total {
            let ca = closures[a as usize];
            let deductive_a = ca == a;
            for b in 0..total {
                let cb = closures[b as usize];
                let c_union = closures[(a | b) as usize];
                let c_inter = closures[(a & b) as usize];
                if a & !b == 0 && ca & !cb != 0 && fails[0].is_none() {
                    fails[0] = witness(a, b);
                }
                if (ca | cb) & !c_union != 0 && fails[1].is_none() {
                    fails[1] = witness(a, b);
                }
                let deductive_b = cb == b;
                if deductive_a && deductive_b {
                    if c_union == (a | b) && c_union != (ca | cb) && fails[2].is_none() {
                        fails[2] = witness(a, b);
                    }
                    if c_inter == (a & b) && c_inter != (ca & cb) && fails[4].is_none() {
                        fails[4] = witness(a, b);
                    }
                }
                if c_inter & !(ca & cb) != 0 && fails[3].is_none() {
                    fails[3] = witness(a, b);
                }
            }
        }
    } else {
        for _ in 0..cfg.samples {
            let a = crate::consequence::random_subset(rng, n);
            let b = crate::consequence::random_subset(rng, n);
            let ca = op.close(&a);
            let cb = op.close(&b);
            let union = a.union(&b);
            let inter = a.intersection(&b);
            let c_union = op.close(&union);
            let c_inter = op.close(&inter);
            if a.is_subset_of(&b) && !ca.is_subset_of(&cb) && fails[0].is_none() {
                fails[0] = Some((a.clone(), b.clone()));
            }
            if !ca.union(&cb).is_subset_of(&c_union) && fails[1].is_none() {
                fails[1] = Some((a.clone(), b.clone()));
            }
            let all_deductive = ca == a && cb == b;
            if all_deductive && c_union == union && c_union != ca.union(&cb) && fails[2].is_none() {
                fails[2] = Some((a.clone(), b.clone()));
            }
            if !c_inter.is_subset_of(&ca.intersection(&cb)) && fails[3].is_none() {
                fails[3] = Some((a.clone(), b.clone()));
            }
            if all_deductive && c_inter == inter && c_inter != ca.intersection(&cb) && fails[4].is_none() {
                fails[4] = Some((a.clone(), b.clone()));
            }
        }
    }

    let names = [
        "closure_i",
        "closure_ii",
        "closure_iii",
        "closure_iv",
        "closure_v",
    ];
    names
        .iter()
        .zip(fails)
        .map(|(name, fail)| match fail {
            None => Check::new(*name, Verdict::Pass),
            Some((a, b)) => {
                let la = universe.labels_of(&a).join(" ");
                let lb = universe.labels_of(&b).join(" ");
                Check::new(*name, Verdict::Fail)
                    .with_witness(vec![format!("A = {{{la}}}"), format!("B = {{{lb}}}")])
            }
        })
        .collect()
}
