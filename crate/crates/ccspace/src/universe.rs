//! Finite sentence universes: an ambient carrier Ω with a distinguished
//! cognitive subspace C and a logic base L.
//!
//! Closures are always taken in Ω, so a cognitive space C with
//! `close(C) ⊋ C` is representable even though every sentence set is
//! finite.

use std::collections::HashMap;

use crate::error::Error;
use crate::set::SentenceSet;

/// Number of symbols that stay on the single-word set representation.
pub const FAST_PATH_SYMBOLS: usize = 64;

#[derive(Debug)]
pub struct Universe {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
    cognitive: SentenceSet,
    logic_base: SentenceSet,
    warnings: Vec<String>,
}

impl Universe {
    /// Builds a universe from label lists. `cognitive` and `logic_base`
    /// must be drawn from `symbols`. When the logic base falls outside
    /// the cognitive space a warning is recorded (no subset of C can be
    /// deductive, so the open-set family over C will be empty).
    pub fn new<S: AsRef<str>>(
        symbols: &[S],
        cognitive: &[S],
        logic_base: &[S],
    ) -> Result<Universe, Error> {
        let mut index = HashMap::with_capacity(symbols.len());
        let mut labels = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if index.insert(s.to_string(), labels.len()).is_some() {
                return Err(Error::DuplicateLabel(s.to_string()));
            }
            labels.push(s.to_string());
        }
        let width = labels.len();
        let resolve_all = |names: &[S]| -> Result<SentenceSet, Error> {
            let mut set = SentenceSet::empty(width);
            for n in names {
                let n = n.as_ref();
                let &i = index
                    .get(n)
                    .ok_or_else(|| Error::UnknownLabel(n.to_string()))?;
                set.insert(i);
            }
            Ok(set)
        };
        let cognitive = resolve_all(cognitive)?;
        let logic_base = resolve_all(logic_base)?;
        let mut warnings = Vec::new();
        if !logic_base.is_subset_of(&cognitive) {
            warnings.push(
                "logic base outside cognitive space; the open-set family over C will be empty"
                    .to_string(),
            );
        }
        Ok(Universe {
            symbols: labels,
            index,
            cognitive,
            logic_base,
            warnings,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn resolve(&self, label: &str) -> Result<usize, Error> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<SentenceSet, Error> {
        let mut set = self.empty_set();
        for l in labels {
            set.insert(self.resolve(l.as_ref())?);
        }
        Ok(set)
    }

    pub fn empty_set(&self) -> SentenceSet {
        SentenceSet::empty(self.len())
    }

    pub fn full_set(&self) -> SentenceSet {
        SentenceSet::full(self.len())
    }

    pub fn cognitive(&self) -> &SentenceSet {
        &self.cognitive
    }

    pub fn logic_base(&self) -> &SentenceSet {
        &self.logic_base
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Labels of a set's members, in index order.
    pub fn labels_of(&self, set: &SentenceSet) -> Vec<String> {
        set.iter().map(|i| self.symbols[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_cog_accepted_without_warning() {
        let u = Universe::new(&["t", "a", "b", "e"], &["t", "a", "b"], &["t"]).unwrap();
        assert!(u.warnings().is_empty());
        assert_eq!(u.cognitive().len(), 3);
        assert!(u.logic_base().contains(0));
    }

    #[test]
    fn logic_base_outside_cognitive_warns() {
        let u = Universe::new(&["t", "a", "b"], &["a", "b"], &["t"]).unwrap();
        assert_eq!(u.warnings().len(), 1);
        assert!(u.warnings()[0].contains("logic base outside cognitive space"));
    }

    #[test]
    fn duplicate_label_rejected() {
        assert!(matches!(
            Universe::new(&["a", "a"], &[], &[]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn unknown_label_rejected() {
        assert!(matches!(
            Universe::new(&["a", "b"], &["c"], &[]),
            Err(Error::UnknownLabel(_))
        ));
    }
}
