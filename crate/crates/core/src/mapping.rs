use std::collections::HashMap;
use std::fmt::Display;
use std::hash::Hash;

/// Bijection between graph vertex ids and application entities.
#[derive(Clone, Debug)]
pub struct ScenarioMapping<L> {
    labels: Vec<L>,
    ids: HashMap<L, usize>,
}

impl<L: Clone + Eq + Hash> ScenarioMapping<L> {
    /// Vertex `i` maps to `labels[i]`. Panics on duplicate labels, which would
    /// break the bijection.
    pub fn new(labels: Vec<L>) -> Self {
        let mut ids = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let previous = ids.insert(l.clone(), i);
            assert!(previous.is_none(), "duplicate label for vertex {i}");
        }
        ScenarioMapping { labels, ids }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, vertex: usize) -> &L {
        &self.labels[vertex]
    }

    pub fn vertex(&self, label: &L) -> Option<usize> {
        self.ids.get(label).copied()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn decode(&self, vertices: &[usize]) -> Vec<L> {
        vertices.iter().map(|&v| self.labels[v].clone()).collect()
    }
}

impl<L: Display> ScenarioMapping<L> {
    pub fn display(&self, vertices: &[usize]) -> Vec<String> {
        vertices.iter().map(|&v| self.labels[v].to_string()).collect()
    }
}
