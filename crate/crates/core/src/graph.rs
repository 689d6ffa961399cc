//! Simple undirected graphs, matchings, trails and decompositions.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;

/// Unordered edge, always stored as `(min, max)`.
pub type Edge = (Vertex, Vertex);

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {}-{}", .0.0, .0.1)]
    DuplicateEdge(Edge),
    #[error("vertex {0} is covered twice by the matching")]
    MatchingOverlap(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrailError {
    #[error("empty vertex sequence")]
    Empty,
    #[error("step {}-{} is not an edge", .0.0, .0.1)]
    NonEdge(Edge),
    #[error("edge {}-{} is used twice", .0.0, .0.1)]
    RepeatedEdge(Edge),
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: HashSet<Edge>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, edges: HashSet::new(), adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        let e = edge(u, v);
        if !self.edges.insert(e) {
            return Err(GraphError::DuplicateEdge(e));
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&edge(u, v))
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// True iff every vertex has degree `k`; vacuously true on zero vertices.
    pub fn is_regular(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == k)
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.edges.iter().copied().collect();
        out.sort_unstable();
        out
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Copy of the graph without the given edges.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let removed: HashSet<Edge> = removed.iter().map(|&(u, v)| edge(u, v)).collect();
        let mut g = Graph::new(self.n);
        for e in self.edges() {
            if !removed.contains(&e) {
                g.add_edge(e.0, e.1).expect("subgraph of a simple graph");
            }
        }
        g
    }

    /// Two-colouring if bipartite.
    pub fn bipartition(&self, comp: &[Vertex]) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let mut side = vec![None; self.n];
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for &s in comp {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        for &v in comp {
            if side[v] == Some(false) {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        left.sort_unstable();
        right.sort_unstable();
        Some((left, right))
    }
}

/// Set of pairwise vertex-disjoint pairs over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    n: usize,
    pairs: Vec<Edge>,
    mate: Vec<Option<Vertex>>,
}

impl Matching {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut mate = vec![None; n];
        let mut out = Vec::new();
        for (u, v) in pairs {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            for x in [u, v] {
                if mate[x].is_some() {
                    return Err(GraphError::MatchingOverlap(x));
                }
            }
            mate[u] = Some(v);
            mate[v] = Some(u);
            out.push(edge(u, v));
        }
        out.sort_unstable();
        Ok(Matching { n, pairs: out, mate })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Pairs as `(min, max)`, sorted.
    pub fn pairs(&self) -> &[Edge] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.mate.get(v).copied().flatten()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.mate(u) == Some(v)
    }

    /// Covers every vertex.
    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }
}

/// A walk with pairwise distinct edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trail {
    vertices: Vec<Vertex>,
    is_path: bool,
}

impl Trail {
    pub fn validate(g: &Graph, seq: &[Vertex]) -> Result<Trail, TrailError> {
        if seq.is_empty() {
            return Err(TrailError::Empty);
        }
        if let Some(&v) = seq.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(TrailError::NonEdge((v, v)));
        }
        let mut used = HashSet::with_capacity(seq.len());
        for w in seq.windows(2) {
            let e = edge(w[0], w[1]);
            if !g.has_edge(w[0], w[1]) {
                return Err(TrailError::NonEdge(e));
            }
            if !used.insert(e) {
                return Err(TrailError::RepeatedEdge(e));
            }
        }
        Ok(Trail::from_vertices_unchecked(seq.to_vec()))
    }

    /// Builds a trail without consulting a host graph. Distinct edges are still required
    /// for the result to be meaningful; callers validate separately.
    pub fn from_vertices_unchecked(vertices: Vec<Vertex>) -> Trail {
        let mut seen = HashSet::with_capacity(vertices.len());
        let is_path = vertices.iter().all(|v| seen.insert(*v));
        Trail { vertices, is_path }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn is_path(&self) -> bool {
        self.is_path
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| edge(w[0], w[1]))
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    /// The middle edge of an odd-length trail.
    pub fn middle_edge(&self) -> Option<Edge> {
        let l = self.len();
        if l.is_multiple_of(2) {
            return None;
        }
        let i = (l - 1) / 2;
        Some(edge(self.vertices[i], self.vertices[i + 1]))
    }

    pub fn reversed(&self) -> Trail {
        let mut v = self.vertices.clone();
        v.reverse();
        Trail { vertices: v, is_path: self.is_path }
    }
}

/// A list of trails of a common target length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub length: usize,
    pub trails: Vec<Trail>,
}

impl Decomposition {
    pub fn new(length: usize, trails: Vec<Trail>) -> Self {
        Decomposition { length, trails }
    }

    /// Number of elements that are not paths.
    pub fn tau(&self) -> usize {
        self.trails.iter().filter(|t| !t.is_path()).count()
    }

    pub fn len(&self) -> usize {
        self.trails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trails.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn k44() -> Graph {
        let mut g = Graph::new(8);
        for u in 0..4 {
            for v in 4..8 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn degrees_and_regularity() {
        let k4 = complete(4);
        assert!((0..4).all(|v| k4.degree(v) == 3));
        let empty = Graph::new(3);
        assert_eq!(empty.degree(1), 0);
        let mut k = k44();
        assert!(k.is_regular(4));
        k.add_edge(0, 1).unwrap();
        assert!(!k.is_regular(4));
        assert!(Graph::new(0).is_regular(7));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::Loop(1)));
        g.add_edge(0, 2).unwrap();
        assert_eq!(g.add_edge(2, 0), Err(GraphError::DuplicateEdge((0, 2))));
        assert!(g.add_edge(0, 3).is_err());
    }

    #[test]
    fn two_triangles() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn trails() {
        let tri = complete(3);
        let t = Trail::validate(&tri, &[0, 1, 2]).unwrap();
        assert!(t.is_path());
        assert_eq!(Trail::validate(&tri, &[0, 1, 2, 0, 1]), Err(TrailError::RepeatedEdge((0, 1))));
        assert_eq!(Trail::validate(&Graph::new(3), &[0, 1]), Err(TrailError::NonEdge((0, 1))));

        // a0 a1 a2 a3 a4 a2 over distinct edges
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 2)]).unwrap();
        let t = Trail::validate(&g, &[0, 1, 2, 3, 4, 2]).unwrap();
        assert!(!t.is_path());
        assert_eq!(t.len(), 5);
        assert_eq!(t.middle_edge(), Some((2, 3)));
    }

    #[test]
    fn matching_rules() {
        assert_eq!(Matching::new(4, [(0, 1), (1, 2)]), Err(GraphError::MatchingOverlap(1)));
        let m = Matching::new(4, [(3, 1), (0, 2)]).unwrap();
        assert!(m.is_perfect());
        assert_eq!(m.pairs(), &[(0, 2), (1, 3)]);
        assert!(!Matching::new(4, [(0, 1)]).unwrap().is_perfect());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..20).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..60).prop_map(move |pairs| {
                let mut g = Graph::new(n);
                for (u, v) in pairs {
                    let _ = g.add_edge(u, v);
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn handshake(g in arb_graph()) {
            let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(total, 2 * g.edge_count());
        }

        #[test]
        fn components_partition(g in arb_graph()) {
            let comps = g.components();
            let mut which = vec![usize::MAX; g.vertex_count()];
            for (i, c) in comps.iter().enumerate() {
                for &v in c {
                    prop_assert_eq!(which[v], usize::MAX);
                    which[v] = i;
                }
                // internally connected: BFS restricted to the component reaches all of it
                let sub: HashSet<Vertex> = c.iter().copied().collect();
                let mut seen = HashSet::from([c[0]]);
                let mut q = VecDeque::from([c[0]]);
                while let Some(u) = q.pop_front() {
                    for &w in g.neighbors(u) {
                        if sub.contains(&w) && seen.insert(w) {
                            q.push_back(w);
                        }
                    }
                }
                prop_assert_eq!(seen.len(), c.len());
            }
            prop_assert!(which.iter().all(|&w| w != usize::MAX));
            for (u, v) in g.edges() {
                prop_assert_eq!(which[u], which[v]);
            }
        }
    }
}
