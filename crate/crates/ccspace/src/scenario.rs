//! Scenario files: the serialized problem instances consumed by the
//! CLI. The format is TOML with a mandatory `version` key; every label
//! used anywhere must be declared in the universe or environment
//! blocks.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::consequence::{ImplicationMap, Operator, Rule, RuleSystem};
use crate::environment::{CognitiveMap, Environment, ObjectTag};
use crate::error::Error;
use crate::families::ConnectionGraph;
use crate::metric::{check_epsilon, PseudoMetric, ThoughtSequence, DEFAULT_TOL_EQ};
use crate::set::SentenceSet;
use crate::universe::Universe;

pub const SCENARIO_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: u32,
    pub universe: UniverseBlock,
    #[serde(default)]
    pub rules: Vec<RuleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity: Option<SimilarityBlock>,
    #[serde(default)]
    pub implications: Vec<ImplicationBlock>,
    #[serde(default)]
    pub sequences: Vec<SequenceBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionBlock>,
    #[serde(default)]
    pub ideals: Vec<IdealBlock>,
    #[serde(default)]
    pub fd_filters: Vec<FdFilterBlock>,
    #[serde(default)]
    pub fhat_filters: Vec<FhatFilterBlock>,
    #[serde(default)]
    pub blackholes: Vec<BlackHoleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compactness: Option<CompactnessBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<EnvironmentBlock>,
    #[serde(default)]
    pub parameters: Parameters,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniverseBlock {
    pub symbols: Vec<String>,
    pub cognitive: Vec<String>,
    #[serde(default)]
    pub logic_base: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleBlock {
    #[serde(default)]
    pub premises: Vec<String>,
    pub conclusion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimilarityBlock {
    /// Row-major symmetric matrix in universe symbol order.
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImplicationBlock {
    pub premise: String,
    pub conclusion: String,
    pub sentence: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceBlock {
    pub name: String,
    pub entries: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub virtual_limit: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionBlock {
    #[serde(default)]
    pub edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truth: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealBlock {
    pub f_star: String,
    /// Defaults to the cognitive space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within: Option<Vec<String>>,
    /// Restrict the ideal to logically-true members per the truth labeling.
    #[serde(default)]
    pub apply_truth: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FdFilterBlock {
    pub carrier: Vec<String>,
    pub f: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FhatFilterBlock {
    pub f: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlackHoleBlock {
    pub sequence: String,
    pub center: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub region: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompactnessBlock {
    pub solution_space: Vec<String>,
    /// Names of registered sequences; defaults to every sequence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequences: Option<Vec<String>>,
    pub epsilon_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentBlock {
    pub points: Vec<String>,
    #[serde(default)]
    pub base: Vec<BaseObjectBlock>,
    #[serde(default)]
    pub practical_wholes: Vec<Vec<String>>,
    /// Cognitive map: sentence label → point label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseObjectBlock {
    pub members: Vec<String>,
    #[serde(default = "default_kind")]
    pub kind: String,
}

fn default_kind() -> String {
    "complete".to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Parameters {
    pub epsilon: f64,
    pub seed: u64,
    pub cap: usize,
    pub samples: usize,
    pub tol_eq: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_point_min: Option<usize>,
}

impl Default for Parameters {
    fn default() -> Self {
        Parameters {
            epsilon: 0.2,
            seed: 0,
            cap: crate::lattice::DEFAULT_ENUMERATION_CAP,
            samples: 1000,
            tol_eq: DEFAULT_TOL_EQ,
            limit_point_min: None,
        }
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, Error> {
        let scenario: Scenario =
            toml::from_str(text).map_err(|e| Error::Scenario(e.to_string()))?;
        if scenario.version != SCENARIO_SCHEMA_VERSION {
            return Err(Error::Scenario(format!(
                "unsupported scenario version {} (expected {})",
                scenario.version, SCENARIO_SCHEMA_VERSION
            )));
        }
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<(Scenario, Vec<u8>), Error> {
        let bytes = std::fs::read(path)?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Error::Scenario("scenario file is not UTF-8".into()))?;
        Ok((Scenario::parse(&text)?, bytes))
    }

    pub fn emit(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    /// Resolves every block into workbench values, failing on any
    /// undeclared label or malformed parameter.
    pub fn build(&self) -> Result<Workbench, Error> {
        let universe = Arc::new(Universe::new(
            &self.universe.symbols,
            &self.universe.cognitive,
            &self.universe.logic_base,
        )?);
        let n = universe.len();

        let mut rules = Vec::with_capacity(self.rules.len());
        for r in &self.rules {
            rules.push(Rule {
                premises: universe.set_of(&r.premises)?,
                conclusion: universe.resolve(&r.conclusion)?,
            });
        }
        let operator = Operator::Rules(RuleSystem::new(universe.clone(), rules)?);

        if self.weights.is_some() && self.similarity.is_some() {
            return Err(Error::Scenario(
                "scenario declares both weights and a similarity matrix".into(),
            ));
        }
        let metric = if let Some(weights) = &self.weights {
            for label in weights.keys() {
                universe.resolve(label)?;
            }
            let mut w = Vec::with_capacity(n);
            for i in 0..n {
                let label = universe.label(i);
                let &value = weights.get(label).ok_or_else(|| {
                    Error::Scenario(format!("no weight declared for `{label}`"))
                })?;
                w.push(value);
            }
            Some(PseudoMetric::weight(w)?.with_tolerance(self.parameters.tol_eq))
        } else if let Some(sim) = &self.similarity {
            Some(PseudoMetric::matrix(sim.matrix.clone())?.with_tolerance(self.parameters.tol_eq))
        } else {
            None
        };
        if let Some(m) = &metric {
            if m.len() != n {
                return Err(Error::Scenario(
                    "similarity matrix size does not match the universe".into(),
                ));
            }
        }

        let mut implications = ImplicationMap::default();
        for imp in &self.implications {
            implications.insert(
                universe.resolve(&imp.premise)?,
                universe.resolve(&imp.conclusion)?,
                universe.resolve(&imp.sentence)?,
            );
        }

        let mut sequences = Vec::with_capacity(self.sequences.len());
        for s in &self.sequences {
            if sequences.iter().any(|(name, _)| name == &s.name) {
                return Err(Error::Scenario(format!("duplicate sequence name `{}`", s.name)));
            }
            let mut entries = Vec::with_capacity(s.entries.len());
            for e in &s.entries {
                entries.push(universe.resolve(e)?);
            }
            let mut seq = ThoughtSequence::new(entries)
                .map_err(|_| Error::Scenario(format!("sequence `{}` is empty", s.name)))?;
            if let Some(v) = &s.virtual_limit {
                seq = seq.with_virtual_limit(universe.resolve(v)?);
            }
            sequences.push((s.name.clone(), seq));
        }

        let (graph, truth) = match &self.connection {
            None => (None, None),
            Some(block) => {
                let mut g = ConnectionGraph::new(n);
                for (x, y) in &block.edges {
                    g.add_edge(universe.resolve(x)?, universe.resolve(y)?)?;
                }
                let truth = match &block.truth {
                    None => None,
                    Some(labels) => Some(universe.set_of(labels)?),
                };
                (Some(g), truth)
            }
        };

        let mut ideals = Vec::with_capacity(self.ideals.len());
        for block in &self.ideals {
            if graph.is_none() {
                return Err(Error::Scenario(
                    "ideals require a [connection] block".into(),
                ));
            }
            if block.apply_truth && truth.is_none() {
                return Err(Error::Scenario(
                    "apply_truth requires a truth labeling in [connection]".into(),
                ));
            }
            let within = match &block.within {
                None => universe.cognitive().clone(),
                Some(labels) => universe.set_of(labels)?,
            };
            ideals.push(IdealSpec {
                f_star: universe.resolve(&block.f_star)?,
                within,
                apply_truth: block.apply_truth,
            });
        }

        let mut fd_filters = Vec::with_capacity(self.fd_filters.len());
        for block in &self.fd_filters {
            fd_filters.push(FdSpec {
                carrier: universe.set_of(&block.carrier)?,
                f: universe.resolve(&block.f)?,
            });
        }
        let mut fhat_filters = Vec::with_capacity(self.fhat_filters.len());
        for block in &self.fhat_filters {
            fhat_filters.push(universe.resolve(&block.f)?);
        }

        let mut blackholes = Vec::with_capacity(self.blackholes.len());
        for block in &self.blackholes {
            if !sequences.iter().any(|(name, _)| name == &block.sequence) {
                return Err(Error::Scenario(format!(
                    "black hole refers to unknown sequence `{}`",
                    block.sequence
                )));
            }
            if let Some(eps) = block.epsilon {
                check_epsilon(eps)?;
            }
            blackholes.push(BlackHoleSpec {
                sequence: block.sequence.clone(),
                center: universe.resolve(&block.center)?,
                epsilon: block.epsilon,
                region: universe.set_of(&block.region)?,
            });
        }

        let compactness = match &self.compactness {
            None => None,
            Some(block) => {
                for eps in &block.epsilon_grid {
                    check_epsilon(*eps)?;
                }
                let names = match &block.sequences {
                    None => sequences.iter().map(|(n, _)| n.clone()).collect(),
                    Some(names) => {
                        for name in names {
                            if !sequences.iter().any(|(n, _)| n == name) {
                                return Err(Error::Scenario(format!(
                                    "compactness refers to unknown sequence `{name}`"
                                )));
                            }
                        }
                        names.clone()
                    }
                };
                Some(CompactnessSpec {
                    solution_space: universe.set_of(&block.solution_space)?,
                    sequences: names,
                    epsilon_grid: block.epsilon_grid.clone(),
                })
            }
        };

        let environment = match &self.environment {
            None => None,
            Some(block) => {
                let mut env = Environment::new(&block.points)?;
                for b in &block.base {
                    let tag = match b.kind.as_str() {
                        "complete" => ObjectTag::Complete,
                        "irreducible" => ObjectTag::Irreducible,
                        other => {
                            return Err(Error::Scenario(format!(
                                "unknown base-object kind `{other}`"
                            )))
                        }
                    };
                    let members = env.set_of(&b.members)?;
                    env.add_base_object(members, tag);
                }
                for pw in &block.practical_wholes {
                    let members = env.set_of(pw)?;
                    env.add_practical_whole(members);
                }
                let map = match &block.map {
                    None => None,
                    Some(entries) => {
                        let mut pairs = Vec::with_capacity(entries.len());
                        for (sentence, point) in entries {
                            pairs.push((universe.resolve(sentence)?, env.resolve(point)?));
                        }
                        Some(CognitiveMap::new(&universe, &pairs)?)
                    }
                };
                Some(EnvironmentSpec { env, map })
            }
        };

        check_epsilon(self.parameters.epsilon)?;

        Ok(Workbench {
            universe,
            operator,
            metric,
            implications,
            sequences,
            graph,
            truth,
            ideals,
            fd_filters,
            fhat_filters,
            blackholes,
            compactness,
            environment,
            parameters: self.parameters.clone(),
        })
    }
}

#[derive(Debug)]
pub struct IdealSpec {
    pub f_star: usize,
    pub within: SentenceSet,
    pub apply_truth: bool,
}

#[derive(Debug)]
pub struct FdSpec {
    pub carrier: SentenceSet,
    pub f: usize,
}

#[derive(Debug)]
pub struct BlackHoleSpec {
    pub sequence: String,
    pub center: usize,
    pub epsilon: Option<f64>,
    pub region: SentenceSet,
}

#[derive(Debug)]
pub struct CompactnessSpec {
    pub solution_space: SentenceSet,
    pub sequences: Vec<String>,
    pub epsilon_grid: Vec<f64>,
}

#[derive(Debug)]
pub struct EnvironmentSpec {
    pub env: Environment,
    pub map: Option<CognitiveMap>,
}

/// A fully resolved scenario: every label bound to indices, every
/// structure constructed and ready for the command layer.
#[derive(Debug)]
pub struct Workbench {
    pub universe: Arc<Universe>,
    pub operator: Operator,
    pub metric: Option<PseudoMetric>,
    pub implications: ImplicationMap,
    pub sequences: Vec<(String, ThoughtSequence)>,
    pub graph: Option<ConnectionGraph>,
    pub truth: Option<SentenceSet>,
    pub ideals: Vec<IdealSpec>,
    pub fd_filters: Vec<FdSpec>,
    pub fhat_filters: Vec<usize>,
    pub blackholes: Vec<BlackHoleSpec>,
    pub compactness: Option<CompactnessSpec>,
    pub environment: Option<EnvironmentSpec>,
    pub parameters: Parameters,
}

impl Workbench {
    pub fn sequence(&self, name: &str) -> Option<&ThoughtSequence> {
        self.sequences
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }
}
