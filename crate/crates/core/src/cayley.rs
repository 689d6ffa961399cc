//! Coloured Cayley graphs of simple commutative generator pairs and `{g,r}`-graphs.
//!
//! Out edges follow right translation: the green out edge of `u` is `u -> u + g`, the red
//! out edge is `u -> u + r`.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{edge, Edge, Graph, Matching, Vertex};
use crate::group::{Group, ScgPair};
use crate::matching::seeded_perfect_matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Green,
    Red,
}

/// Colour and orientation of one Cayley edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub color: Color,
    pub tail: Vertex,
    pub head: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("group of odd order {0} has no perfect matching")]
    OddOrder(usize),
    #[error("matching is not perfect")]
    NotPerfect,
    #[error("matching edge {}-{} is also a Cayley edge", .0.0, .0.1)]
    Overlap(Edge),
    #[error("matching covers {got} vertices but the group has order {order}")]
    SizeMismatch { got: usize, order: usize },
    #[error("complement of the Cayley graph has no perfect matching")]
    NoComplementMatching,
}

/// The 4-regular Cayley graph `X(Γ, {g, -g, r, -r})` with its base factorization.
#[derive(Debug, Clone)]
pub struct ColoredCayley {
    pub pair: ScgPair,
    pub graph: Graph,
    arcs: HashMap<Edge, Arc>,
    green_out: Vec<Vertex>,
    green_in: Vec<Vertex>,
    red_out: Vec<Vertex>,
    red_in: Vec<Vertex>,
}

impl ColoredCayley {
    pub fn build(group: &Group, pair: ScgPair) -> Self {
        let n = group.order();
        let mut graph = Graph::new(n);
        let mut arcs = HashMap::with_capacity(2 * n);
        let mut green_out = vec![0; n];
        let mut green_in = vec![0; n];
        let mut red_out = vec![0; n];
        let mut red_in = vec![0; n];
        for (color, x, outs, ins) in [
            (Color::Green, pair.g, &mut green_out, &mut green_in),
            (Color::Red, pair.r, &mut red_out, &mut red_in),
        ] {
            for u in group.elements() {
                let v = group.add(u, x);
                outs[u] = v;
                ins[v] = u;
                let e = edge(u, v);
                let prev = arcs.insert(e, Arc { color, tail: u, head: v });
                assert!(prev.is_none(), "edge {e:?} coloured twice; generator pair is not simple");
                graph.add_edge(u, v).expect("generator conditions guarantee a simple graph");
            }
        }
        ColoredCayley { pair, graph, arcs, green_out, green_in, red_out, red_in }
    }

    pub fn arc(&self, u: Vertex, v: Vertex) -> Option<Arc> {
        self.arcs.get(&edge(u, v)).copied()
    }

    pub fn green_out(&self, u: Vertex) -> Vertex {
        self.green_out[u]
    }

    pub fn green_in(&self, u: Vertex) -> Vertex {
        self.green_in[u]
    }

    pub fn red_out(&self, u: Vertex) -> Vertex {
        self.red_out[u]
    }

    pub fn red_in(&self, u: Vertex) -> Vertex {
        self.red_in[u]
    }

    /// Per-vertex census `(green out, green in, red out, red in)`.
    pub fn census(&self, u: Vertex) -> (usize, usize, usize, usize) {
        let mut c = (0, 0, 0, 0);
        for &w in self.graph.neighbors(u) {
            let a = self.arcs[&edge(u, w)];
            match (a.color, a.tail == u) {
                (Color::Green, true) => c.0 += 1,
                (Color::Green, false) => c.1 += 1,
                (Color::Red, true) => c.2 += 1,
                (Color::Red, false) => c.3 += 1,
            }
        }
        c
    }
}

/// A 5-regular graph on a group containing the spanning Cayley graph of `{g, r}`,
/// together with the complementary perfect matching.
#[derive(Debug, Clone)]
pub struct GrGraph {
    pub group: Group,
    pub pair: ScgPair,
    pub cayley: ColoredCayley,
    pub matching: Matching,
    pub graph: Graph,
}

impl GrGraph {
    pub fn assemble(group: Group, pair: ScgPair, matching: Matching) -> Result<Self, BuildError> {
        let n = group.order();
        if n % 2 == 1 {
            return Err(BuildError::OddOrder(n));
        }
        if matching.vertex_count() != n {
            return Err(BuildError::SizeMismatch { got: matching.vertex_count(), order: n });
        }
        if !matching.is_perfect() {
            return Err(BuildError::NotPerfect);
        }
        let cayley = ColoredCayley::build(&group, pair);
        let mut graph = cayley.graph.clone();
        for &(u, v) in matching.pairs() {
            if cayley.graph.has_edge(u, v) {
                return Err(BuildError::Overlap((u, v)));
            }
            graph.add_edge(u, v).expect("matching edges are new and loop-free");
        }
        debug_assert!(graph.is_regular(5));
        Ok(GrGraph { group, pair, cayley, matching, graph })
    }

    /// Same undirected graph and matching, recoloured for the pair `{g, -r}`.
    pub fn with_red_flipped(&self) -> Option<GrGraph> {
        let pair = self.pair.flip_red(&self.group).ok()?;
        GrGraph::assemble(self.group.clone(), pair, self.matching.clone()).ok()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn g(&self) -> usize {
        self.pair.g
    }

    pub fn r(&self) -> usize {
        self.pair.r
    }

    pub fn is_m(&self, u: Vertex, v: Vertex) -> bool {
        self.matching.contains(u, v)
    }

    /// `v = u + g`
    pub fn is_green_out(&self, u: Vertex, v: Vertex) -> bool {
        self.cayley.green_out(u) == v
    }

    /// `v = u + r`
    pub fn is_red_out(&self, u: Vertex, v: Vertex) -> bool {
        self.cayley.red_out(u) == v
    }

    /// `uv` is an out edge of `u` or a matching edge; the condition for an end edge to hang at `u`.
    pub fn hangs_at(&self, u: Vertex, v: Vertex) -> bool {
        self.is_m(u, v) || self.is_green_out(u, v) || self.is_red_out(u, v)
    }
}

/// Seeded perfect matching on the group avoiding every Cayley edge of `pair`.
pub fn random_matching(group: &Group, pair: ScgPair, seed: u64) -> Result<Matching, BuildError> {
    let n = group.order();
    if n % 2 == 1 {
        return Err(BuildError::OddOrder(n));
    }
    let x = ColoredCayley::build(group, pair);
    let adj: Vec<Vec<Vertex>> =
        (0..n).map(|u| (0..n).filter(|&v| v != u && !x.graph.has_edge(u, v)).collect()).collect();
    let pairs = seeded_perfect_matching(&adj, seed).ok_or(BuildError::NoComplementMatching)?;
    Ok(Matching::new(n, pairs).expect("matching algorithm yields disjoint pairs"))
}

/// Searches for a cyclic order `v_0 … v_{m-1}` of `comp` under which the induced graph is
/// exactly `C_m^k`. Backtracks over placements, checking adjacency against circular distance
/// for every placed vertex.
pub fn is_power_of_cycle(g: &Graph, comp: &[Vertex], k: usize) -> Option<Vec<Vertex>> {
    let m = comp.len();
    if k == 0 || m < 2 * k + 1 {
        return None;
    }
    let inside: std::collections::HashSet<Vertex> = comp.iter().copied().collect();
    for &v in comp {
        let deg = g.neighbors(v).iter().filter(|w| inside.contains(w)).count();
        if deg != 2 * k {
            return None;
        }
    }
    let circ = |i: usize, j: usize| {
        let d = i.abs_diff(j);
        d.min(m - d)
    };
    let mut order = vec![comp[0]];
    let mut used: std::collections::HashSet<Vertex> = std::collections::HashSet::from([comp[0]]);

    fn extend(
        g: &Graph,
        comp: &[Vertex],
        order: &mut Vec<Vertex>,
        used: &mut std::collections::HashSet<Vertex>,
        k: usize,
        circ: &dyn Fn(usize, usize) -> usize,
    ) -> bool {
        let m = comp.len();
        let pos = order.len();
        if pos == m {
            return true;
        }
        let prev = order[pos - 1];
        let candidates: Vec<Vertex> =
            g.neighbors(prev).iter().copied().filter(|w| !used.contains(w) && comp.binary_search(w).is_ok()).collect();
        for w in candidates {
            let consistent = order.iter().enumerate().all(|(i, &u)| g.has_edge(u, w) == (circ(i, pos) <= k));
            if !consistent {
                continue;
            }
            order.push(w);
            used.insert(w);
            if extend(g, comp, order, used, k, circ) {
                return true;
            }
            order.pop();
            used.remove(&w);
        }
        false
    }

    let mut sorted = comp.to_vec();
    sorted.sort_unstable();
    if extend(g, &sorted, &mut order, &mut used, k, &circ) {
        Some(order)
    } else {
        None
    }
}
