//! `K_{4,4}` blocks, matching-edge splicing between M-centered decompositions, and the
//! route for `{g,r}`-graphs with `2g + 2r = 0` and `2g - 2r = 0`.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::cayley::GrGraph;
use crate::graph::{edge, Decomposition, Edge, Graph, Matching, Trail, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollageError {
    #[error("matching pair {}-{} crosses the bipartition", .0.0, .0.1)]
    CrossSide(Edge),
    #[error("block needs two matching pairs on each side")]
    BadBlockMatching,
    #[error("virtual edge {}-{} is not the middle edge of exactly one path", .0.0, .0.1)]
    NotMiddle(Edge),
    #[error("endpoint {0} of a virtual edge is not covered exactly once by crossing edges")]
    Unbalanced(Vertex),
    #[error("spliced trail {trail:?} is not a path; alternating cycle {cycle:?}")]
    SpliceNotPath { trail: Vec<Vertex>, cycle: Vec<Vertex> },
    #[error("component containing {vertex} of G - M is not K_4,4")]
    NotK44 { vertex: Vertex },
    #[error("matching is not perfect")]
    NotPerfect,
    #[error("every virtual pairing of crossing endpoints failed")]
    Exhausted,
    #[error("route needs 2g+2r = 0 and 2g-2r = 0")]
    NotDegenerate,
}

/// A copy of `K_{4,4}` with sides `right` and `left` and four within-side pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K44Block {
    pub right: [Vertex; 4],
    pub left: [Vertex; 4],
    pub pairs: Vec<Edge>,
}

impl K44Block {
    pub fn new(right: [Vertex; 4], left: [Vertex; 4], pairs: Vec<Edge>) -> Self {
        K44Block { right, left, pairs }
    }

    pub fn graph_edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> =
            self.right.iter().flat_map(|&r| self.left.iter().map(move |&l| edge(r, l))).collect();
        out.extend(self.pairs.iter().map(|&(u, v)| edge(u, v)));
        out
    }
}

/// The four paths over the canonical matching `{r1r2, r3r4, l1l2, l3l4}`.
pub fn canonical_k44_paths(r: [Vertex; 4], l: [Vertex; 4]) -> [[Vertex; 6]; 4] {
    let [r1, r2, r3, r4] = r;
    let [l1, l2, l3, l4] = l;
    [
        [l1, r1, l3, l4, r2, l2],
        [l3, r3, l1, l2, r4, l4],
        [r1, l2, r3, r4, l1, r2],
        [r3, l4, r1, r2, l3, r4],
    ]
}

/// Relabels the block onto the canonical matching and returns its four paths. Each path's
/// middle edge is one of the block's pairs.
pub fn decompose_k44(block: &K44Block) -> Result<Decomposition, CollageError> {
    let on_right: HashSet<Vertex> = block.right.iter().copied().collect();
    let on_left: HashSet<Vertex> = block.left.iter().copied().collect();
    let mut rp = Vec::new();
    let mut lp = Vec::new();
    for &(u, v) in &block.pairs {
        let (u, v) = edge(u, v);
        if on_right.contains(&u) && on_right.contains(&v) {
            rp.push((u, v));
        } else if on_left.contains(&u) && on_left.contains(&v) {
            lp.push((u, v));
        } else if (on_right.contains(&u) && on_left.contains(&v)) || (on_left.contains(&u) && on_right.contains(&v)) {
            return Err(CollageError::CrossSide((u, v)));
        } else {
            return Err(CollageError::BadBlockMatching);
        }
    }
    if rp.len() != 2 || lp.len() != 2 {
        return Err(CollageError::BadBlockMatching);
    }
    rp.sort_unstable();
    lp.sort_unstable();
    let r = [rp[0].0, rp[0].1, rp[1].0, rp[1].1];
    let l = [lp[0].0, lp[0].1, lp[1].0, lp[1].1];
    let mut distinct: Vec<Vertex> = r.iter().chain(&l).copied().collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 8 {
        return Err(CollageError::BadBlockMatching);
    }
    let trails = canonical_k44_paths(r, l).iter().map(|p| Trail::from_vertices_unchecked(p.to_vec())).collect();
    Ok(Decomposition::new(5, trails))
}

/// Pieces with M-centered decompositions, the virtual matching edges to remove, and the
/// crossing edges that replace them.
#[derive(Debug, Clone, Default)]
pub struct CollagePlan {
    pub pieces: Vec<Decomposition>,
    pub virtual_edges: Vec<Edge>,
    pub crossing_edges: Vec<Edge>,
}

impl CollagePlan {
    /// Merge pairs `(a b, x y)`: remove `ab` and `xy`, add `ax` and `by`.
    pub fn from_merge_pairs(pieces: Vec<Decomposition>, pairs: &[(Edge, Edge)]) -> Self {
        let mut plan = CollagePlan { pieces, ..Default::default() };
        for &((a, b), (x, y)) in pairs {
            plan.virtual_edges.push(edge(a, b));
            plan.virtual_edges.push(edge(x, y));
            plan.crossing_edges.push(edge(a, x));
            plan.crossing_edges.push(edge(b, y));
        }
        plan
    }
}

/// Splits each path at its virtual middle edge and rejoins the halves across crossing edges.
pub fn collage_merge(plan: &CollagePlan) -> Result<Decomposition, CollageError> {
    let virtuals: HashSet<Edge> = plan.virtual_edges.iter().map(|&(u, v)| edge(u, v)).collect();
    let length = plan.pieces.first().map_or(5, |d| d.length);
    let mut kept = Vec::new();
    // half[v]: the half-path starting at v, read away from its virtual edge
    let mut half: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    let mut partner: HashMap<Vertex, Vertex> = HashMap::new();
    let mut found: HashMap<Edge, usize> = HashMap::new();
    for d in &plan.pieces {
        for t in &d.trails {
            let touches_virtual = t.edges().find(|e| virtuals.contains(e));
            let Some(mid) = t.middle_edge().filter(|e| virtuals.contains(e)) else {
                if let Some(e) = touches_virtual {
                    return Err(CollageError::NotMiddle(e));
                }
                kept.push(t.clone());
                continue;
            };
            if t.edges().filter(|e| virtuals.contains(e)).count() > 1 {
                let e = t.edges().find(|e| virtuals.contains(e) && *e != mid).unwrap();
                return Err(CollageError::NotMiddle(e));
            }
            *found.entry(mid).or_default() += 1;
            let vs = t.vertices();
            let i = (vs.len() - 2) / 2;
            let (a, b) = (vs[i], vs[i + 1]);
            half.insert(a, vs[..=i].iter().rev().copied().collect());
            half.insert(b, vs[i + 1..].to_vec());
            partner.insert(a, b);
            partner.insert(b, a);
        }
    }
    for &e in &virtuals {
        if found.get(&e) != Some(&1) {
            return Err(CollageError::NotMiddle(e));
        }
    }
    let mut cover: HashMap<Vertex, Vertex> = HashMap::new();
    for &(u, v) in &plan.crossing_edges {
        for (x, y) in [(u, v), (v, u)] {
            if !half.contains_key(&x) || cover.insert(x, y).is_some() {
                return Err(CollageError::Unbalanced(x));
            }
        }
    }
    if let Some(&v) = half.keys().find(|v| !cover.contains_key(v)) {
        return Err(CollageError::Unbalanced(v));
    }
    let mut out = kept;
    for &(u, v) in &plan.crossing_edges {
        let mut seq: Vec<Vertex> = half[&u].iter().rev().copied().collect();
        seq.extend(&half[&v]);
        let t = Trail::from_vertices_unchecked(seq.clone());
        if !t.is_path() {
            return Err(CollageError::SpliceNotPath { trail: seq, cycle: alternating_cycle(u, &partner, &cover) });
        }
        out.push(t);
    }
    Ok(Decomposition::new(length, out))
}

/// The cycle through `start` alternating virtual edges and crossing edges.
fn alternating_cycle(start: Vertex, partner: &HashMap<Vertex, Vertex>, cover: &HashMap<Vertex, Vertex>) -> Vec<Vertex> {
    let mut out = vec![start];
    let mut v = start;
    loop {
        let w = partner[&v];
        out.push(w);
        v = cover[&w];
        if v == start {
            return out;
        }
        out.push(v);
    }
}

fn check_k44(h: &Graph, comp: &[Vertex]) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    if comp.len() != 8 || comp.iter().any(|&v| h.degree(v) != 4) {
        return None;
    }
    let (a, b) = h.bipartition(comp)?;
    if a.len() != 4 || b.len() != 4 {
        return None;
    }
    a.iter().all(|&u| b.iter().all(|&v| h.has_edge(u, v))).then_some((a, b))
}

/// All perfect pairings of `items` in lexicographic order.
fn pairings(items: &[Vertex]) -> Vec<Vec<Edge>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for i in 1..items.len() {
        let rest: Vec<Vertex> = items[1..].iter().enumerate().filter(|&(j, _)| j + 1 != i).map(|(_, &v)| v).collect();
        for mut p in pairings(&rest) {
            p.insert(0, edge(first, items[i]));
            out.push(p);
        }
    }
    out
}

/// `G` regular of degree 5 where every component of `G - M` is `K_{4,4}`.
pub fn decompose_k44_factor(g: &Graph, m: &Matching) -> Result<Decomposition, CollageError> {
    if !m.is_perfect() || m.vertex_count() != g.vertex_count() {
        return Err(CollageError::NotPerfect);
    }
    let h = g.without_edges(m.pairs());
    let comps = h.components();
    let mut block_of = vec![0; g.vertex_count()];
    let mut sides = Vec::new();
    for (i, comp) in comps.iter().enumerate() {
        let (a, b) = check_k44(&h, comp).ok_or(CollageError::NotK44 { vertex: comp[0] })?;
        for &v in comp {
            block_of[v] = i;
        }
        sides.push((a, b));
    }
    // per block side: the matching pairs inside it and the endpoints of crossing edges
    let mut internal: Vec<Vec<Edge>> = vec![Vec::new(); comps.len()];
    let mut crossing = Vec::new();
    for &(u, v) in m.pairs() {
        if block_of[u] == block_of[v] {
            internal[block_of[u]].push((u, v));
        } else {
            crossing.push((u, v));
        }
    }
    let mut options: Vec<Vec<Vec<Edge>>> = Vec::with_capacity(comps.len());
    for (i, (a, b)) in sides.iter().enumerate() {
        let mut side_opts = Vec::new();
        for side in [a, b] {
            let loose: Vec<Vertex> = side.iter().copied().filter(|&v| block_of[m.mate(v).unwrap()] != i).collect();
            side_opts.push(pairings(&loose));
        }
        let mut combos = Vec::new();
        for p in &side_opts[0] {
            for q in &side_opts[1] {
                combos.push(p.iter().chain(q).copied().collect::<Vec<_>>());
            }
        }
        options.push(combos);
    }
    let mut choice = vec![0; comps.len()];
    loop {
        let mut pieces = Vec::with_capacity(comps.len());
        let mut virtuals = Vec::new();
        for (i, (a, b)) in sides.iter().enumerate() {
            let mut pairs = internal[i].clone();
            pairs.extend(&options[i][choice[i]]);
            virtuals.extend(&options[i][choice[i]]);
            let block = K44Block::new([a[0], a[1], a[2], a[3]], [b[0], b[1], b[2], b[3]], pairs);
            pieces.push(decompose_k44(&block)?);
        }
        let plan = CollagePlan { pieces, virtual_edges: virtuals, crossing_edges: crossing.clone() };
        match collage_merge(&plan) {
            Ok(d) => return Ok(d),
            Err(CollageError::SpliceNotPath { .. }) => {}
            Err(e) => return Err(e),
        }
        // odometer over pairing choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Err(CollageError::Exhausted);
            }
            choice[i] += 1;
            if choice[i] < options[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// The route for `2g + 2r = 0` and `2g - 2r = 0`: every component of `G - M` is `K_{4,4}`.
pub fn decompose_degenerate(gg: &GrGraph) -> Result<Decomposition, CollageError> {
    if !(gg.pair.sum_doubles_zero && gg.pair.diff_doubles_zero) {
        return Err(CollageError::NotDegenerate);
    }
    let h = gg.cayley.graph.clone();
    for comp in h.components() {
        assert!(
            check_k44(&h, &comp).is_some(),
            "component {comp:?} of the Cayley graph is not K_4,4 although 2g+2r = 2g-2r = 0"
        );
    }
    decompose_k44_factor(&gg.graph, &gg.matching)
}
