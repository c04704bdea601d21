//! Undirected vertex-weighted graphs with bit-parallel adjacency.
//!
//! Vertices are dense ids `0..n`. Application-level labels live in
//! [`ScenarioMapping`](crate::mapping::ScenarioMapping), never here.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Immutable simple graph. Adjacency is symmetric and loop-free.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    adjacency: Vec<BitSet>,
    weights: Vec<f64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges are collapsed,
    /// self-loops are rejected and every weight must be finite and strictly
    /// positive.
    pub fn new(n: usize, edges: &[(usize, usize)], weights: Vec<f64>) -> Result<Self> {
        Self::build(n, edges, weights, false)
    }

    /// Unit weights on every vertex.
    pub fn unweighted(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges, vec![1.0; n])
    }

    /// Like [`Graph::new`] but accepts zero weights. Reductions whose vertices
    /// may carry no utility (a zero rate weight, a silenced link) still need
    /// those vertices present for size-constrained searches.
    pub fn new_allowing_zero_weights(
        n: usize,
        edges: &[(usize, usize)],
        weights: Vec<f64>,
    ) -> Result<Self> {
        Self::build(n, edges, weights, true)
    }

    fn build(n: usize, edges: &[(usize, usize)], weights: Vec<f64>, allow_zero: bool) -> Result<Self> {
        if weights.len() != n {
            return Err(Error::WeightCountMismatch {
                expected: n,
                got: weights.len(),
            });
        }
        for (vertex, &weight) in weights.iter().enumerate() {
            let ok = weight.is_finite() && (weight > 0.0 || (allow_zero && weight == 0.0));
            if !ok {
                return Err(Error::InvalidWeight { vertex, weight });
            }
        }
        let mut adjacency = vec![BitSet::new(n); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            adjacency[a].insert(b);
            adjacency[b].insert(a);
        }
        Ok(Graph { adjacency, weights })
    }

    /// Builds from a pairwise predicate evaluated once per unordered pair.
    pub fn from_predicate(
        weights: Vec<f64>,
        allow_zero: bool,
        mut adjacent: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = weights.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Self::build(n, &edges, weights, allow_zero)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, row) in self.adjacency.iter().enumerate() {
            out.extend(row.iter().filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    /// Sum of the weights of the members of `set`.
    pub fn set_weight(&self, set: &BitSet) -> f64 {
        set.iter().map(|v| self.weights[v]).sum()
    }

    /// Same vertices and weights; an edge `(i, j)`, `i != j`, exists exactly
    /// when it is absent here.
    pub fn complement(&self) -> Graph {
        let n = self.n();
        let full = BitSet::full(n);
        let adjacency = (0..n)
            .map(|v| {
                let mut row = full.clone();
                row.difference_with(&self.adjacency[v]);
                row.remove(v);
                row
            })
            .collect();
        Graph {
            adjacency,
            weights: self.weights.clone(),
        }
    }

    /// Induced subgraph on `keep` (ascending ids). Returns the subgraph; vertex
    /// `i` of the result is `keep[i]` here.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut adjacency = vec![BitSet::new(keep.len()); keep.len()];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        Graph {
            adjacency,
            weights: keep.iter().map(|&v| self.weights[v]).collect(),
        }
    }

    /// Returns the same graph with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Graph> {
        let weights: Vec<f64> = self.weights.iter().map(|w| w * factor).collect();
        Graph::build(self.n(), &self.edges(), weights, true)
    }

    fn check_members(&self, members: &[usize]) -> Result<()> {
        match members.iter().find(|&&v| v >= self.n()) {
            Some(&vertex) => Err(Error::VertexOutOfRange { vertex, n: self.n() }),
            None => Ok(()),
        }
    }

    /// True iff every pair of members is adjacent. The empty set and
    /// singletons are cliques.
    pub fn is_clique(&self, members: &[usize]) -> Result<bool> {
        self.check_members(members)?;
        Ok(members.iter().enumerate().all(|(i, &a)| {
            members[i + 1..]
                .iter()
                .all(|&b| a != b && self.has_edge(a, b))
        }))
    }

    /// True iff no pair of members is adjacent.
    pub fn is_independent_set(&self, members: &[usize]) -> Result<bool> {
        self.check_members(members)?;
        Ok(members.iter().enumerate().all(|(i, &a)| {
            members[i + 1..].iter().all(|&b| !self.has_edge(a, b))
        }))
    }

    /// True iff `members` is a clique that no outside vertex extends.
    pub fn is_maximal_clique(&self, members: &[usize]) -> Result<bool> {
        if !self.is_clique(members)? {
            return Ok(false);
        }
        let set = BitSet::from_ids(self.n(), members.iter().copied());
        Ok((0..self.n())
            .filter(|v| !set.contains(*v))
            .all(|v| !set.is_subset(&self.adjacency[v])))
    }
}

/// A set of vertex ids, kept sorted, with its cached total weight.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VertexSet {
    members: Vec<usize>,
    weight: f64,
}

impl VertexSet {
    pub fn new(g: &Graph, mut members: Vec<usize>) -> Result<Self> {
        g.check_members(&members)?;
        members.sort_unstable();
        members.dedup();
        let weight = members.iter().map(|&v| g.weight(v)).sum();
        Ok(VertexSet { members, weight })
    }

    pub(crate) fn from_bits(g: &Graph, bits: &BitSet) -> Self {
        VertexSet {
            members: bits.iter().collect(),
            weight: g.set_weight(bits),
        }
    }

    pub fn empty() -> Self {
        VertexSet {
            members: Vec::new(),
            weight: 0.0,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Re-expresses the set in another id space, e.g. after pruning.
    pub fn remap(&self, g: &Graph, map: &[usize]) -> Result<Self> {
        VertexSet::new(g, self.members.iter().map(|&v| map[v]).collect())
    }
}
