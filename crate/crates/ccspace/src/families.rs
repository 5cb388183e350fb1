//! Explicit set families with ideal/filter axiom checking, plus the
//! connection-ideal and filter constructions over a consequence
//! operator.

use std::collections::VecDeque;

use crate::consequence::Operator;
use crate::error::Error;
use crate::lattice::enumerate_deductive;
use crate::report::{Check, Verdict};
use crate::set::{subsets_of, SentenceSet};
use crate::universe::Universe;

/// Default cap on the family domain for exhaustive axiom scans.
pub const DEFAULT_FAMILY_CAP: usize = 14;

/// A finite family of subsets of a domain, deduplicated and kept in
/// lectic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    pub domain: SentenceSet,
    pub members: Vec<SentenceSet>,
}

impl SetFamily {
    pub fn new(domain: SentenceSet, mut members: Vec<SentenceSet>) -> Result<SetFamily, Error> {
        for m in &members {
            if !m.is_subset_of(&domain) {
                return Err(Error::NotASubset);
            }
        }
        members.sort();
        members.dedup();
        Ok(SetFamily { domain, members })
    }

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

/// Undirected connection graph over the universe. "Connected in a
/// direct or indirect manner" is read as transitive reachability.
#[derive(Debug, Clone)]
pub struct ConnectionGraph {
    adjacency: Vec<SentenceSet>,
}

impl ConnectionGraph {
    pub fn new(width: usize) -> ConnectionGraph {
        ConnectionGraph {
            adjacency: vec![SentenceSet::empty(width); width],
        }
    }

    pub fn add_edge(&mut self, x: usize, y: usize) -> Result<(), Error> {
        if x >= self.adjacency.len() || y >= self.adjacency.len() {
            return Err(Error::Precondition("edge endpoint outside the universe".into()));
        }
        self.adjacency[x].insert(y);
        self.adjacency[y].insert(x);
        Ok(())
    }

    /// All sentences reachable from `start`, including `start` itself.
    pub fn reachable(&self, start: usize) -> SentenceSet {
        let width = self.adjacency.len();
        let mut seen = SentenceSet::singleton(width, start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in self.adjacency[x].iter() {
                if !seen.contains(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    ClassicIdeal,
    ClassicFilter,
    ConsequenceIdeal,
    ConsequenceFilter,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::ClassicIdeal => "classic-ideal",
            FamilyKind::ClassicFilter => "classic-filter",
            FamilyKind::ConsequenceIdeal => "consequence-ideal",
            FamilyKind::ConsequenceFilter => "consequence-filter",
        }
    }
}

fn witness_pair(universe: &Universe, a: &SentenceSet, b: &SentenceSet) -> Vec<String> {
    vec![
        format!("{{{}}}", universe.labels_of(a).join(" ")),
        format!("{{{}}}", universe.labels_of(b).join(" ")),
    ]
}

/// Checks the ideal or filter axioms over every member exhaustively
/// (pairs for union/intersection closure; all subsets or supersets
/// within the domain for downward/upward closure). Consequence kinds
/// additionally test membership of `close(∅)` or `close(C)` as written
/// and require an operator.
pub fn check_family_axioms(
    universe: &Universe,
    family: &SetFamily,
    kind: FamilyKind,
    op: Option<&Operator>,
    cap: usize,
) -> Result<Vec<Check>, Error> {
    let size = family.domain.len();
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    if matches!(kind, FamilyKind::ConsequenceIdeal | FamilyKind::ConsequenceFilter) && op.is_none()
    {
        return Err(Error::Precondition(
            "consequence family kinds require an operator".into(),
        ));
    }
    let mut checks = Vec::new();
    let downward = matches!(kind, FamilyKind::ClassicIdeal | FamilyKind::ConsequenceIdeal);
    if downward {
        let mut c = Check::new("ideal_downward_closed", Verdict::Pass);
        'down: for m in &family.members {
            for sub in subsets_of(m) {
                if !family.contains(&sub) {
                    c = Check::new("ideal_downward_closed", Verdict::Fail)
                        .with_witness(witness_pair(universe, m, &sub))
                        .with_note("subset of a member escapes the family");
                    break 'down;
                }
            }
        }
        checks.push(c);
        let mut c = Check::new("ideal_union_closed", Verdict::Pass);
        'union: for (i, a) in family.members.iter().enumerate() {
            for b in &family.members[i + 1..] {
                if !family.contains(&a.union(b)) {
                    c = Check::new("ideal_union_closed", Verdict::Fail)
                        .with_witness(witness_pair(universe, a, b));
                    break 'union;
                }
            }
        }
        checks.push(c);
    } else {
        let mut c = Check::new("filter_upward_closed", Verdict::Pass);
        'up: for m in &family.members {
            let rest = family.domain.difference(m);
            for extra in subsets_of(&rest) {
                let sup = m.union(&extra);
                if !family.contains(&sup) {
                    c = Check::new("filter_upward_closed", Verdict::Fail)
                        .with_witness(witness_pair(universe, m, &sup))
                        .with_note("superset of a member escapes the family");
                    break 'up;
                }
            }
        }
        checks.push(c);
        let mut c = Check::new("filter_intersection_closed", Verdict::Pass);
        'inter: for (i, a) in family.members.iter().enumerate() {
            for b in &family.members[i + 1..] {
                if !family.contains(&a.intersection(b)) {
                    c = Check::new("filter_intersection_closed", Verdict::Fail)
                        .with_witness(witness_pair(universe, a, b));
                    break 'inter;
                }
            }
        }
        checks.push(c);
    }
    match kind {
        FamilyKind::ConsequenceIdeal => {
            let cn_empty = op.unwrap().close(&universe.empty_set());
            checks.push(if family.contains(&cn_empty) {
                Check::new("consequence_ideal_cn_empty", Verdict::Pass)
            } else {
                Check::new("consequence_ideal_cn_empty", Verdict::Fail)
                    .with_witness(vec![format!(
                        "{{{}}}",
                        universe.labels_of(&cn_empty).join(" ")
                    )])
                    .with_note("Cn(∅) is not a member")
            });
        }
        FamilyKind::ConsequenceFilter => {
            let cn_c = op.unwrap().close(universe.cognitive());
            checks.push(if family.contains(&cn_c) {
                Check::new("consequence_filter_cn_c", Verdict::Pass)
            } else {
                Check::new("consequence_filter_cn_c", Verdict::Fail)
                    .with_witness(vec![format!("{{{}}}", universe.labels_of(&cn_c).join(" "))])
                    .with_note("Cn(C) is not a member")
            });
        }
        _ => {}
    }
    Ok(checks)
}

/// The connection ideal of `f_star`: every subset of the reachability
/// set of `f_star` restricted to `within`, including ∅ ("no thoughts
/// about f*" is itself connected).
pub fn build_connection_ideal(
    graph: &ConnectionGraph,
    f_star: usize,
    within: &SentenceSet,
    cap: usize,
) -> Result<SetFamily, Error> {
    if !within.contains(f_star) {
        return Err(Error::Precondition(
            "connection-ideal target lies outside the domain".into(),
        ));
    }
    let reach = graph.reachable(f_star).intersection(within);
    let size = reach.len();
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    SetFamily::new(within.clone(), subsets_of(&reach).collect())
}

/// Restricts a family to the members made entirely of logically-true
/// sentences, per a scenario-supplied truth labeling.
pub fn filter_by_truth(family: &SetFamily, truth: &SentenceSet) -> SetFamily {
    SetFamily {
        domain: family.domain.clone(),
        members: family
            .members
            .iter()
            .filter(|m| m.is_subset_of(truth))
            .cloned()
            .collect(),
    }
}

/// The principal-style filter f_d on a deductive carrier C_d:
/// `{A ⊆ C_d : f ∈ A and some deductive B ⊆ A}`.
pub fn build_fd_filter(
    op: &Operator,
    c_d: &SentenceSet,
    f: usize,
    cap: usize,
) -> Result<SetFamily, Error> {
    if !op.is_deductive(c_d) {
        return Err(Error::Precondition("the carrier C_d is not deductive".into()));
    }
    if !c_d.contains(f) {
        return Err(Error::Precondition("f lies outside C_d".into()));
    }
    let deductive = enumerate_deductive(op, c_d, cap)?;
    let members = subsets_of(c_d)
        .filter(|a| a.contains(f) && deductive.members.iter().any(|d| d.is_subset_of(a)))
        .collect();
    SetFamily::new(c_d.clone(), members)
}

/// The derivability filter f̂ over the cognitive space:
/// `{A ⊆ C : f ∈ close(A)}`. Empty exactly when f is underivable from C.
pub fn build_fhat_filter(op: &Operator, f: usize, cap: usize) -> Result<SetFamily, Error> {
    let cognitive = op.universe().cognitive();
    let size = cognitive.len();
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let members = subsets_of(cognitive)
        .filter(|a| op.close(a).contains(f))
        .collect();
    SetFamily::new(cognitive.clone(), members)
}

/// Filter-axiom scan for a constructed f̂ family. Upward closure is a
/// construction invariant, so a violation is a failure; intersection
/// closure rests on the claim `f ∈ Cn(A) ∩ Cn(B) ⇒ f ∈ Cn(A ∩ B)`,
/// which does not follow from monotonicity, so a violation is reported
/// as a discrepancy in the claim rather than a defect.
pub fn check_fhat_filter(
    op: &Operator,
    family: &SetFamily,
    f: usize,
) -> Vec<Check> {
    let universe = op.universe();
    let mut checks = Vec::new();
    if family.is_empty() {
        checks.push(
            Check::new("fhat_nonempty", Verdict::NotApplicable)
                .with_note(format!("no filter ({} underivable from C)", universe.label(f))),
        );
        return checks;
    }
    checks.push(Check::new("fhat_nonempty", Verdict::Pass));
    let mut upward = Check::new("fhat_upward_closed", Verdict::Pass);
    'up: for m in &family.members {
        let rest = family.domain.difference(m);
        for extra in subsets_of(&rest) {
            let sup = m.union(&extra);
            if !family.contains(&sup) {
                upward = Check::new("fhat_upward_closed", Verdict::Fail)
                    .with_witness(witness_pair(universe, m, &sup));
                break 'up;
            }
        }
    }
    checks.push(upward);
    let mut inter = Check::new("fhat_intersection_closed", Verdict::Pass);
    'inter: for (i, a) in family.members.iter().enumerate() {
        for b in &family.members[i + 1..] {
            let meet = a.intersection(b);
            if !family.contains(&meet) {
                inter = Check::new("fhat_intersection_closed", Verdict::Discrepancy)
                    .with_witness(witness_pair(universe, a, b))
                    .with_note(
                        "f is derivable from both members but not from their intersection",
                    );
                break 'inter;
            }
        }
    }
    checks.push(inter);
    checks
}
