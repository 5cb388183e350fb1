//! Finite practical-whole topologies on an environment and cognitive
//! continuity of maps from the cognitive space into it.

use std::collections::HashMap;

use crate::error::Error;
use crate::lattice::CctFamily;
use crate::report::{Check, Verdict};
use crate::set::{subsets_of, SentenceSet};
use crate::universe::Universe;

/// Cap on the number of base objects for the union scans.
pub const BASE_OBJECT_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectTag {
    Complete,
    /// Carried and reported; drives no logic.
    Irreducible,
}

impl ObjectTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ObjectTag::Complete => "complete",
            ObjectTag::Irreducible => "irreducible",
        }
    }
}

/// An environment: labelled points, tagged base objects, and the
/// scenario-declared practical wholes.
#[derive(Debug)]
pub struct Environment {
    points: Vec<String>,
    index: HashMap<String, usize>,
    pub base_objects: Vec<(SentenceSet, ObjectTag)>,
    pub practical_wholes: Vec<SentenceSet>,
}

impl Environment {
    pub fn new<S: AsRef<str>>(points: &[S]) -> Result<Environment, Error> {
        let mut index = HashMap::with_capacity(points.len());
        let mut labels = Vec::with_capacity(points.len());
        for p in points {
            let p = p.as_ref();
            if p.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if index.insert(p.to_string(), labels.len()).is_some() {
                return Err(Error::DuplicateLabel(p.to_string()));
            }
            labels.push(p.to_string());
        }
        Ok(Environment {
            points: labels,
            index,
            base_objects: Vec::new(),
            practical_wholes: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn resolve(&self, label: &str) -> Result<usize, Error> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<SentenceSet, Error> {
        let mut set = SentenceSet::empty(self.len());
        for l in labels {
            set.insert(self.resolve(l.as_ref())?);
        }
        Ok(set)
    }

    pub fn full_set(&self) -> SentenceSet {
        SentenceSet::full(self.len())
    }

    pub fn labels_of(&self, set: &SentenceSet) -> Vec<String> {
        set.iter().map(|i| self.points[i].clone()).collect()
    }

    pub fn add_base_object(&mut self, members: SentenceSet, tag: ObjectTag) {
        self.base_objects.push((members, tag));
    }

    pub fn add_practical_whole(&mut self, members: SentenceSet) {
        self.practical_wholes.push(members);
    }

    /// The union of every base object contained in `target`; equals
    /// `target` exactly when the target is expressible as a union of
    /// base objects.
    fn base_cover(&self, target: &SentenceSet) -> SentenceSet {
        let mut cover = SentenceSet::empty(self.len());
        for (b, _) in &self.base_objects {
            if b.is_subset_of(target) {
                cover.union_with(b);
            }
        }
        cover
    }
}

/// Opens of the practical topology: ∅, E, and every declared practical
/// whole expressible as a union of base objects, in lectic order.
#[derive(Debug)]
pub struct PracticalTopology {
    pub opens: Vec<SentenceSet>,
    width: usize,
}

impl PracticalTopology {
    /// Opens other than ∅ and E.
    pub fn proper_opens(&self) -> impl Iterator<Item = &SentenceSet> {
        let full = SentenceSet::full(self.width);
        self.opens
            .iter()
            .filter(move |o| !o.is_empty() && **o != full)
    }
}

pub fn build_practical_topology(env: &Environment) -> Result<PracticalTopology, Error> {
    if env.base_objects.len() > BASE_OBJECT_LIMIT {
        return Err(Error::Precondition(format!(
            "{} base objects exceed the limit of {BASE_OBJECT_LIMIT}",
            env.base_objects.len()
        )));
    }
    let mut opens = vec![SentenceSet::empty(env.len()), env.full_set()];
    for pw in &env.practical_wholes {
        if env.base_cover(pw) != *pw {
            return Err(Error::Precondition(format!(
                "practical whole {{{}}} is not a union of base objects",
                env.labels_of(pw).join(" ")
            )));
        }
        opens.push(pw.clone());
    }
    opens.sort();
    opens.dedup();
    Ok(PracticalTopology {
        opens,
        width: env.len(),
    })
}

#[derive(Debug)]
pub struct BaseClosure {
    pub closure: SentenceSet,
    /// Set when more than one practical whole of minimal cardinality
    /// contains the base object; ties resolve lectically.
    pub ambiguous: bool,
    /// Number of practical wholes containing the base object.
    pub multiplicity: usize,
}

/// The smallest practical whole containing a base object, with
/// smallest-cardinality-then-lectic tie-breaking.
pub fn base_closure(env: &Environment, base_index: usize) -> Result<BaseClosure, Error> {
    let (b, _) = env
        .base_objects
        .get(base_index)
        .ok_or_else(|| Error::Precondition("base object index out of range".into()))?;
    let mut candidates: Vec<&SentenceSet> = env
        .practical_wholes
        .iter()
        .filter(|pw| b.is_subset_of(pw))
        .collect();
    if candidates.is_empty() {
        return Err(Error::Precondition(format!(
            "no practical whole contains base object {{{}}}",
            env.labels_of(b).join(" ")
        )));
    }
    let multiplicity = candidates.len();
    candidates.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let min_len = candidates[0].len();
    let ambiguous = candidates.iter().filter(|c| c.len() == min_len).count() > 1;
    Ok(BaseClosure {
        closure: candidates[0].clone(),
        ambiguous,
        multiplicity,
    })
}

/// A total map from the cognitive space into the environment's points.
#[derive(Debug, Clone)]
pub struct CognitiveMap {
    /// Indexed by universe sentence; None outside C.
    targets: Vec<Option<usize>>,
}

impl CognitiveMap {
    pub fn new(universe: &Universe, pairs: &[(usize, usize)]) -> Result<CognitiveMap, Error> {
        let mut targets = vec![None; universe.len()];
        for &(sentence, point) in pairs {
            if sentence >= universe.len() {
                return Err(Error::Precondition("map source outside the universe".into()));
            }
            targets[sentence] = Some(point);
        }
        for c in universe.cognitive().iter() {
            if targets[c].is_none() {
                return Err(Error::Precondition(format!(
                    "cognitive map is not total: no image for {}",
                    universe.label(c)
                )));
            }
        }
        Ok(CognitiveMap { targets })
    }

    pub fn image_of(&self, sentence: usize) -> Option<usize> {
        self.targets.get(sentence).copied().flatten()
    }

    /// `{c ∈ C : map(c) ∈ open}`.
    pub fn preimage(&self, universe: &Universe, open: &SentenceSet) -> SentenceSet {
        let mut pre = universe.empty_set();
        for c in universe.cognitive().iter() {
            if let Some(p) = self.targets[c] {
                if open.contains(p) {
                    pre.insert(c);
                }
            }
        }
        pre
    }
}

/// Continuity over the proper opens only: preimage(E) = C and C never
/// lies in τ while the cognitive conditions hold, so the literal
/// all-opens reading would make continuity impossible. The restriction
/// is stated in the emitted note.
pub fn check_cognitive_continuity(
    universe: &Universe,
    env: &Environment,
    map: &CognitiveMap,
    topology: &PracticalTopology,
    tau: &CctFamily,
) -> Check {
    for open in topology.proper_opens() {
        let pre = map.preimage(universe, open);
        if !tau.contains(&pre) {
            return Check::new("cognitive_continuity", Verdict::Fail)
                .with_witness(vec![
                    format!("{{{}}}", env.labels_of(open).join(" ")),
                    format!("{{{}}}", universe.labels_of(&pre).join(" ")),
                ])
                .with_note("preimage of a proper open is not consequence-wise open");
        }
    }
    Check::new("cognitive_continuity", Verdict::Pass)
        .with_note("evaluated over proper opens; preimage(E) = C is excluded by construction")
}

#[derive(Debug)]
pub struct WeakTopologyReport {
    /// `{preimage(U) : U ∈ T}` in lectic order, deduplicated.
    pub family: Vec<SentenceSet>,
    pub checks: Vec<Check>,
}

/// Materializes the weak-topology family of preimages and tests the
/// clopen claim literally: a member's complement in C must also be a
/// member. The claim regularly fails, which is reported as a
/// discrepancy in the claim, alongside the designation-based reading
/// under which every proper open is clopen by construction.
pub fn weak_topology_clopen(
    universe: &Universe,
    map: &CognitiveMap,
    topology: &PracticalTopology,
) -> WeakTopologyReport {
    let cognitive = universe.cognitive();
    let mut family: Vec<SentenceSet> = topology
        .opens
        .iter()
        .map(|o| map.preimage(universe, o))
        .collect();
    family.sort();
    family.dedup();
    let mut checks = Vec::new();
    let mut clopen = Check::new("weak_topology_clopen", Verdict::Pass);
    for m in &family {
        let complement = m.complement_in(cognitive).expect("preimage lies in C");
        if family.binary_search(&complement).is_err() {
            clopen = Check::new("weak_topology_clopen", Verdict::Discrepancy)
                .with_witness(vec![
                    format!("{{{}}}", universe.labels_of(m).join(" ")),
                    format!("{{{}}}", universe.labels_of(&complement).join(" ")),
                ])
                .with_note(
                    "complement of a preimage is not a preimage; the clopen claim fails as stated",
                );
            break;
        }
    }
    checks.push(clopen);
    checks.push(
        Check::new("clopen_by_designation", Verdict::Pass)
            .with_note("every proper open is a declared practical whole; tautology of the construction"),
    );
    WeakTopologyReport { family, checks }
}

/// Sanity scan used by tests: every proper open is a union of base
/// objects and appears among the declared practical wholes.
pub fn verify_opens(env: &Environment, topology: &PracticalTopology) -> bool {
    topology.proper_opens().all(|o| {
        env.base_cover(o) == *o && env.practical_wholes.contains(o)
    })
}

/// All unions of base-object subsets, used as a brute-force oracle.
pub fn all_base_unions(env: &Environment) -> Vec<SentenceSet> {
    let picks = SentenceSet::full(env.base_objects.len());
    let mut out: Vec<SentenceSet> = subsets_of(&picks)
        .map(|pick| {
            let mut u = SentenceSet::empty(env.len());
            for k in pick.iter() {
                u.union_with(&env.base_objects[k].0);
            }
            u
        })
        .collect();
    out.sort();
    out.dedup();
    out
}
