//! Construction-blind checks of decompositions, invariant checkers for the exchange engine,
//! and an exhaustive search used as an oracle on small graphs.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::cayley::GrGraph;
use crate::engine::chains::{arcs, ChainStructure};
use crate::engine::classify::{classify_trail, hanging_of, Tag, TrailClass};
use crate::graph::{edge, Decomposition, Edge, Graph, Matching, Trail, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Per-check results plus the odd-degree statistics of the elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    /// Number of odd-degree vertices of each element.
    pub odd_per_element: Vec<usize>,
    /// Number of elements with odd degree at each vertex.
    pub odd_at_vertex: Vec<usize>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, witness: Option<String>) {
        self.checks.push(CheckResult { name, passed: witness.is_none(), witness });
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (&c.witness, c.passed) {
                (_, true) => writeln!(f, "CHECK {} PASS", c.name)?,
                (Some(w), false) => writeln!(f, "CHECK {} FAIL {}", c.name, w)?,
                (None, false) => writeln!(f, "CHECK {} FAIL", c.name)?,
            }
        }
        Ok(())
    }
}

fn join(v: &[Vertex]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn odd_degree_vertices(seq: &[Vertex]) -> Vec<Vertex> {
    let mut deg: HashMap<Vertex, usize> = HashMap::new();
    for w in seq.windows(2) {
        *deg.entry(w[0]).or_default() += 1;
        *deg.entry(w[1]).or_default() += 1;
    }
    let mut odd: Vec<Vertex> = deg.into_iter().filter(|&(_, d)| d % 2 == 1).map(|(v, _)| v).collect();
    odd.sort_unstable();
    odd
}

/// Checks that `d` is a decomposition of `g` into paths with `l` edges, and optionally that
/// the middle edges are exactly the edges of `m`.
pub fn verify_decomposition(g: &Graph, d: &Decomposition, l: usize, m: Option<&Matching>) -> VerifyReport {
    let mut report = VerifyReport::default();
    let seqs: Vec<&[Vertex]> = d.trails.iter().map(|t| t.vertices()).collect();

    let bad_len = seqs.iter().position(|s| s.len() != l + 1);
    report.push("length", bad_len.map(|i| format!("element {i}: {} has {} edges", join(seqs[i]), seqs[i].len().saturating_sub(1))));

    let mut not_edge = None;
    'outer: for (i, s) in seqs.iter().enumerate() {
        for w in s.windows(2) {
            if w[0] >= g.vertex_count() || w[1] >= g.vertex_count() || !g.has_edge(w[0], w[1]) {
                not_edge = Some(format!("element {i}: {}-{} is not an edge", w[0], w[1]));
                break 'outer;
            }
        }
    }
    report.push("in-graph", not_edge);

    let not_path = seqs.iter().position(|s| {
        let mut seen = HashSet::new();
        !s.iter().all(|v| seen.insert(*v))
    });
    report.push("path", not_path.map(|i| format!("element {i}: {} repeats a vertex", join(seqs[i]))));

    let mut first_owner: HashMap<Edge, usize> = HashMap::new();
    let mut repeat = None;
    for (i, s) in seqs.iter().enumerate() {
        for w in s.windows(2) {
            let e = edge(w[0], w[1]);
            if let Some(&j) = first_owner.get(&e) {
                repeat.get_or_insert_with(|| format!("edge {}-{} in elements {j} and {i}", e.0, e.1));
            } else {
                first_owner.insert(e, i);
            }
        }
    }
    report.push("disjoint", repeat);

    let missing: Vec<Edge> = g.edges().into_iter().filter(|e| !first_owner.contains_key(e)).collect();
    let extra = first_owner.keys().filter(|&&(u, v)| u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v)).count();
    let coverage = if missing.is_empty() && extra == 0 {
        None
    } else {
        let listed: Vec<String> = missing.iter().take(8).map(|e| format!("{}-{}", e.0, e.1)).collect();
        Some(format!("{} missing edges: {}", missing.len(), listed.join(" ")))
    };
    report.push("coverage", coverage);

    report.odd_at_vertex = vec![0; g.vertex_count()];
    for s in &seqs {
        let odd = odd_degree_vertices(s);
        report.odd_per_element.push(odd.len());
        for v in odd {
            if v < g.vertex_count() {
                report.odd_at_vertex[v] += 1;
            }
        }
    }
    if l % 2 == 1 && g.is_regular(l) {
        let bad = report.odd_at_vertex.iter().position(|&c| c != 1);
        let w = bad.map(|v| format!("vertex {v} is an end of {} elements", report.odd_at_vertex[v]));
        report.push("endpoints", w);
    }

    if let Some(m) = m {
        let mut middles = Vec::with_capacity(seqs.len());
        let mut witness = None;
        for (i, s) in seqs.iter().enumerate() {
            if s.len() % 2 == 1 || s.len() < 2 {
                witness.get_or_insert_with(|| format!("element {i} has no middle edge"));
                continue;
            }
            let k = s.len() / 2;
            let e = edge(s[k - 1], s[k]);
            if !m.contains(e.0, e.1) {
                witness.get_or_insert_with(|| format!("element {i}: middle edge {}-{} not in M", e.0, e.1));
            }
            middles.push(e);
        }
        middles.sort_unstable();
        if witness.is_none() && middles != m.pairs() {
            witness = Some("middle edges do not enumerate M".to_string());
        }
        report.push("m-centered", witness);
    }
    report
}

fn classes_of(gg: &GrGraph, trails: &[Vec<Vertex>]) -> Vec<TrailClass> {
    trails.iter().map(|t| classify_trail(gg, t)).collect()
}

fn hang_counts(gg: &GrGraph, classes: &[TrailClass]) -> Vec<usize> {
    let mut hang = vec![0; gg.order()];
    for c in classes {
        for (v, _) in hanging_of(gg, c) {
            hang[v] += 1;
        }
    }
    hang
}

fn owners(trails: &[Vec<Vertex>]) -> HashMap<Edge, usize> {
    let mut out = HashMap::new();
    for (t, s) in trails.iter().enumerate() {
        for w in s.windows(2) {
            out.insert(edge(w[0], w[1]), t);
        }
    }
    out
}

/// Every element is of type A, B, C or D; every type-A element has at least two hanging
/// edges at `cv1` and one at `cv2`.
pub fn check_complete(gg: &GrGraph, trails: &[Vec<Vertex>]) -> VerifyReport {
    let classes = classes_of(gg, trails);
    let hang = hang_counts(gg, &classes);
    let mut report = VerifyReport::default();
    let bad = classes.iter().position(|c| !matches!(c.tag, Tag::A | Tag::B | Tag::C | Tag::D));
    report.push("types", bad.map(|t| format!("element {t} ({}) is {}", join(&trails[t]), classes[t].tag)));
    let a: Vec<usize> = (0..classes.len()).filter(|&t| classes[t].tag == Tag::A).collect();
    let low1 = a.iter().find(|&&t| hang[classes[t].seq[3]] < 2);
    report.push("hang-cv1", low1.map(|&t| format!("element {t} cv1={} hang={}", classes[t].seq[3], hang[classes[t].seq[3]])));
    let low2 = a.iter().find(|&&t| hang[classes[t].seq[2]] < 1);
    report.push("hang-cv2", low2.map(|&t| format!("element {t} cv2={} hang=0", classes[t].seq[2])));
    report
}

/// Every element is a path or of type A; `hang(cv1) >= 2` for type A; at most one type-A
/// element with `hang(cv2) = 0`, and it is the last type-A element of the open chain; the
/// type-A elements split into A-chains and at most one open chain.
pub fn check_admissible(gg: &GrGraph, trails: &[Vec<Vertex>]) -> VerifyReport {
    let classes = classes_of(gg, trails);
    let hang = hang_counts(gg, &classes);
    let mut report = VerifyReport::default();
    let bad = classes.iter().position(|c| c.tag != Tag::A && !c.tag.is_path());
    report.push("types", bad.map(|t| format!("element {t} ({}) is {}", join(&trails[t]), classes[t].tag)));
    let a: Vec<usize> = (0..classes.len()).filter(|&t| classes[t].tag == Tag::A).collect();
    let low1 = a.iter().find(|&&t| hang[classes[t].seq[3]] < 2);
    report.push("hang-cv1", low1.map(|&t| format!("element {t} cv1={} hang={}", classes[t].seq[3], hang[classes[t].seq[3]])));

    let structure = ChainStructure::extract(gg, &classes, &owners(trails));
    let zero: Vec<usize> = a.iter().copied().filter(|&t| hang[classes[t].seq[2]] == 0).collect();
    let cv2_witness = match (zero.as_slice(), &structure) {
        ([], _) => None,
        ([t], Ok(s)) if s.open.as_ref().and_then(|o| o.members.last()) == Some(t) => None,
        ([t], _) => Some(format!("element {t} has hang(cv2)=0 but does not end the open chain")),
        (many, _) => Some(format!("elements {many:?} all have hang(cv2)=0")),
    };
    report.push("hang-cv2", cv2_witness);
    report.push("chains", structure.err().map(|e| e.to_string()));
    report
}

/// Properties that hold in every intermediate state: each vertex ends exactly one element; no
/// vertex is a connection vertex of two type-A elements; `tr(T2) = cv1(T1)` forces
/// `aux(T2) = cv2(T1)`.
pub fn check_engine_invariants(gg: &GrGraph, trails: &[Vec<Vertex>]) -> VerifyReport {
    let classes = classes_of(gg, trails);
    let mut report = VerifyReport::default();
    let mut ends = vec![0usize; gg.order()];
    for s in trails {
        ends[s[0]] += 1;
        ends[s[s.len() - 1]] += 1;
    }
    let bad = ends.iter().position(|&c| c != 1);
    report.push("endpoints", bad.map(|v| format!("vertex {v} ends {} elements", ends[v])));

    let mut cv_owner: HashMap<Vertex, usize> = HashMap::new();
    let mut shared = None;
    for (t, c) in classes.iter().enumerate() {
        for v in [c.cv1(), c.cv2()].into_iter().flatten() {
            if let Some(&t0) = cv_owner.get(&v) {
                shared.get_or_insert_with(|| format!("vertex {v} is a connection vertex of {t0} and {t}"));
            }
            cv_owner.insert(v, t);
        }
    }
    report.push("connection", shared);

    let broken = arcs(&classes).into_iter().find(|&(t1, t2, i)| i == 1 && classes[t2].aux() != classes[t1].cv2());
    report.push("type12", broken.map(|(t1, t2, _)| format!("tr({t2}) = cv1({t1}) but aux({t2}) != cv2({t1})")));
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("{edges} edges are not divisible by l={l}")]
    Divisibility { edges: usize, l: usize },
    #[error("path length must be positive")]
    ZeroLength,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteOutcome {
    Found(Decomposition),
    None,
    Budget,
}

struct Search<'a> {
    g: &'a Graph,
    l: usize,
    edges: Vec<Edge>,
    /// Adjacency-matrix flags for covered edges.
    used: Vec<bool>,
    chosen: Vec<Vec<Vertex>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    fn is_used(&self, u: Vertex, v: Vertex) -> bool {
        self.used[u * self.g.vertex_count() + v]
    }

    fn mark(&mut self, p: &[Vertex], on: bool) {
        let n = self.g.vertex_count();
        for w in p.windows(2) {
            self.used[w[0] * n + w[1]] = on;
            self.used[w[1] * n + w[0]] = on;
        }
    }

    /// Simple paths of `len` edges starting at `from`, avoiding `avoid` and used edges.
    fn rays(&mut self, from: Vertex, len: usize, avoid: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) -> bool {
        if !self.tick() {
            return false;
        }
        if len == 0 {
            out.push(vec![from]);
            return true;
        }
        let g = self.g;
        for &w in g.neighbors(from) {
            if avoid.contains(&w) || self.is_used(from, w) {
                continue;
            }
            avoid.push(w);
            let mut tails = Vec::new();
            let ok = self.rays(w, len - 1, avoid, &mut tails);
            avoid.pop();
            if !ok {
                return false;
            }
            for t in tails {
                let mut p = vec![from];
                p.extend(t);
                out.push(p);
            }
        }
        true
    }

    /// Paths of `l` edges through `(u, v)`, traversed from `u` to `v`.
    fn candidates(&mut self, u: Vertex, v: Vertex) -> Option<Vec<Vec<Vertex>>> {
        let mut out = Vec::new();
        for left_len in 0..self.l {
            let right_len = self.l - 1 - left_len;
            let mut lefts = Vec::new();
            let mut avoid = vec![v, u];
            if !self.rays(u, left_len, &mut avoid, &mut lefts) {
                return None;
            }
            for left in lefts {
                let mut avoid: Vec<Vertex> = left.clone();
                avoid.push(v);
                let mut rights = Vec::new();
                if !self.rays(v, right_len, &mut avoid, &mut rights) {
                    return None;
                }
                for right in rights {
                    let mut p: Vec<Vertex> = left.iter().rev().copied().collect();
                    p.extend(right);
                    out.push(p);
                }
            }
        }
        Some(out)
    }

    /// `Some(true)` found, `Some(false)` exhausted, `None` budget.
    fn run(&mut self, from: usize) -> Option<bool> {
        let Some(i) = (from..self.edges.len()).find(|&i| !self.is_used(self.edges[i].0, self.edges[i].1)) else {
            return Some(true);
        };
        let (u, v) = self.edges[i];
        for p in self.candidates(u, v)? {
            self.mark(&p, true);
            self.chosen.push(p);
            match self.run(i + 1) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            let p = self.chosen.pop().unwrap_or_default();
            self.mark(&p, false);
        }
        Some(false)
    }
}

/// Exhaustive search for a decomposition into paths with `l` edges, always extending from the
/// lowest uncovered edge. `budget` bounds the number of search nodes.
pub fn brute_force_p_l(g: &Graph, l: usize, budget: u64) -> Result<BruteOutcome, BruteError> {
    if l == 0 {
        return Err(BruteError::ZeroLength);
    }
    if !g.edge_count().is_multiple_of(l) {
        return Err(BruteError::Divisibility { edges: g.edge_count(), l });
    }
    let n = g.vertex_count();
    let mut s = Search { g, l, edges: g.edges(), used: vec![false; n * n], chosen: Vec::new(), nodes: 0, budget };
    Ok(match s.run(0) {
        Some(true) => {
            let trails = s.chosen.into_iter().map(Trail::from_vertices_unchecked).collect();
            BruteOutcome::Found(Decomposition::new(l, trails))
        }
        Some(false) => BruteOutcome::None,
        None => BruteOutcome::Budget,
    })
}
