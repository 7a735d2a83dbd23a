use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A finite simple graph with named vertices; edges are stored as `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    /// Duplicate edges are merged; loops and out-of-range endpoints are rejected.
    pub fn new(vertices: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let distinct: BTreeSet<&String> = vertices.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidGraph("duplicate vertex name".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a}, {b}) has an endpoint out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", vertices[a])));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(SimpleGraph { vertices, edges: set })
    }

    /// Graph on `n` vertices named `a, b, c, ...`.
    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(super::letter_names(n), edges.iter().copied())
    }

    pub fn empty(n: usize) -> Self {
        Self::with_edges(n, &[]).expect("no edges")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::with_edges(n, &edges).expect("valid")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::with_edges(n, &edges).expect("valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        Self::with_edges(n, &edges).expect("valid")
    }

    /// Complete bipartite graph with parts `0..m` and `m..m+n`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let edges: Vec<_> = (0..m).flat_map(|a| (m..m + n).map(move |b| (a, b))).collect();
        Self::with_edges(m + n, &edges).expect("valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn complement(&self) -> SimpleGraph {
        let n = self.vertex_count();
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !self.adjacent(a, b));
        SimpleGraph { vertices: self.vertices.clone(), edges: edges.collect() }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if !seen[w] && self.adjacent(v, w) {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Smallest edge bitmask over all vertex relabellings; equal for isomorphic graphs.
    /// Exhaustive over permutations, so only meant for small graphs.
    pub fn canonical_code(&self) -> u64 {
        let n = self.vertex_count();
        assert!(n <= 8, "canonical_code is exhaustive and limited to 8 vertices");
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        loop {
            let mut code = 0u64;
            for &(a, b) in &self.edges {
                let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
                code |= 1 << (x * n + y);
            }
            best = best.min(code);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// All simple graphs on exactly `n` vertices, one per isomorphism class.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = SimpleGraph::with_edges(n, &edges).expect("valid");
        if seen.insert(g.canonical_code()) {
            out.push(g);
        }
    }
    out
}
