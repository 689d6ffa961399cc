//! M-centered decompositions of cycle powers plus a perfect matching.
//!
//! For `C_n^k` with a perfect matching `M` whose pairs sit at circular distance greater than
//! `k`, the path through a matching edge `ij` is `Q_i` reversed, then `ij`, then `Q_j`, where
//! `Q_i` zig-zags away from `i` using one edge of each length `1..=k`.

use thiserror::Error;

use crate::cayley::is_power_of_cycle;
use crate::graph::{edge, Decomposition, Graph, Matching, Trail, Vertex};
use crate::matching::seeded_perfect_matching;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowerError {
    #[error("need 0 <= i < n and k < n/2, got i={i}, k={k}, n={n}")]
    Bounds { i: usize, k: usize, n: usize },
    #[error("n={0} is odd")]
    OddOrder(usize),
    #[error("matching is not perfect on {0} vertices")]
    NotPerfect(usize),
    #[error("matching pair {}-{} is at circular distance {dist} <= k={k}", .pair.0, .pair.1)]
    Distance { pair: (Vertex, Vertex), dist: usize, k: usize },
    #[error("path length l={0} must be odd")]
    EvenLength(usize),
    #[error("graph is not regular of odd degree")]
    NotOddRegular,
    #[error("component containing {vertex} is not the {k}-th power of a cycle")]
    NotCyclePower { vertex: Vertex, k: usize },
    #[error("joined trail {0:?} is not a path")]
    JoinedNotPath(Vec<Vertex>),
    #[error("no perfect matching at circular distance > {k} on {n} vertices")]
    NoMatching { n: usize, k: usize },
}

pub fn circular_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

/// `Q_i`: `v_0 = i`, then `v_j = v_{j-1} + j` for odd `j` and `v_{j-1} - j` for even `j`.
/// `k = 0` gives the single vertex `i`.
pub fn q_path(i: usize, k: usize, n: usize) -> Result<Vec<Vertex>, PowerError> {
    if i >= n || 2 * k >= n {
        return Err(PowerError::Bounds { i, k, n });
    }
    let mut out = Vec::with_capacity(k + 1);
    let mut v = i as i64;
    out.push(i);
    for j in 1..=k as i64 {
        v += if j % 2 == 1 { j } else { -j };
        out.push(v.rem_euclid(n as i64) as usize);
    }
    Ok(out)
}

/// `C_n^k`: vertices `0..n`, adjacent iff circular distance is in `1..=k`.
pub fn cycle_power(n: usize, k: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for d in 1..=k {
            let v = (u + d) % n;
            if !g.has_edge(u, v) {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCycleInstance {
    pub n: usize,
    pub k: usize,
    pub matching: Matching,
}

impl PowerCycleInstance {
    pub fn new(n: usize, k: usize, matching: Matching) -> Result<Self, PowerError> {
        if n % 2 == 1 {
            return Err(PowerError::OddOrder(n));
        }
        if 2 * k >= n {
            return Err(PowerError::Bounds { i: 0, k, n });
        }
        if matching.vertex_count() != n || !matching.is_perfect() {
            return Err(PowerError::NotPerfect(n));
        }
        for &(u, v) in matching.pairs() {
            let dist = circular_distance(u, v, n);
            if dist <= k {
                return Err(PowerError::Distance { pair: (u, v), dist, k });
            }
        }
        Ok(PowerCycleInstance { n, k, matching })
    }

    /// Seeded random matching with every pair at circular distance greater than `k`.
    pub fn random(n: usize, k: usize, seed: u64) -> Result<Self, PowerError> {
        if n % 2 == 1 {
            return Err(PowerError::OddOrder(n));
        }
        if 2 * k >= n {
            return Err(PowerError::Bounds { i: 0, k, n });
        }
        let adj: Vec<Vec<Vertex>> =
            (0..n).map(|u| (0..n).filter(|&v| circular_distance(u, v, n) > k).collect()).collect();
        let pairs = seeded_perfect_matching(&adj, seed).ok_or(PowerError::NoMatching { n, k })?;
        PowerCycleInstance::new(n, k, Matching::new(n, pairs).expect("disjoint pairs"))
    }

    /// `C_n^k ∪ M`.
    pub fn graph(&self) -> Graph {
        let mut g = cycle_power(self.n, self.k);
        for &(u, v) in self.matching.pairs() {
            g.add_edge(u, v).expect("pairs are longer than k");
        }
        g
    }
}

/// One path `P_e` per matching edge, in matching order.
pub fn decompose_power_cycle(inst: &PowerCycleInstance) -> Result<Decomposition, PowerError> {
    let PowerCycleInstance { n, k, .. } = *inst;
    let mut trails = Vec::with_capacity(n / 2);
    for &(i, j) in inst.matching.pairs() {
        let dist = circular_distance(i, j, n);
        if dist <= k {
            return Err(PowerError::Distance { pair: (i, j), dist, k });
        }
        let mut seq = q_path(i, k, n)?;
        seq.reverse();
        seq.extend(q_path(j, k, n)?);
        trails.push(Trail::from_vertices_unchecked(seq));
    }
    Ok(Decomposition::new(2 * k + 1, trails))
}

/// `K_{l+1}` as `C_{l+1}^{(l-1)/2}` plus the antipodal matching.
pub fn complete_instance(l: usize) -> Result<PowerCycleInstance, PowerError> {
    if l.is_multiple_of(2) {
        return Err(PowerError::EvenLength(l));
    }
    let n = l + 1;
    let m = Matching::new(n, (0..n / 2).map(|i| (i, i + n / 2))).expect("antipodal pairs are disjoint");
    PowerCycleInstance::new(n, (l - 1) / 2, m)
}

/// `(l+1)/2` Hamilton paths of `K_{l+1}`.
pub fn decompose_complete(l: usize) -> Result<Decomposition, PowerError> {
    decompose_power_cycle(&complete_instance(l)?)
}

/// Decomposes an `l`-regular graph (`l` odd) whose components after removing `M` are all
/// `((l-1)/2)`-th powers of cycles. Each joined trail is checked to be a path.
pub fn decompose_cycle_power_factors(g: &Graph, m: &Matching) -> Result<Decomposition, PowerError> {
    let n = g.vertex_count();
    if !m.is_perfect() || m.vertex_count() != n {
        return Err(PowerError::NotPerfect(n));
    }
    let l = if n == 0 { 1 } else { g.degree(0) };
    if l % 2 == 0 || !g.is_regular(l) {
        return Err(PowerError::NotOddRegular);
    }
    let k = (l - 1) / 2;
    let h = g.without_edges(m.pairs());
    // half[v]: the Q-path at v in its component's cyclic order
    let mut half: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for comp in h.components() {
        let order = if k == 0 {
            comp.clone()
        } else {
            is_power_of_cycle(&h, &comp, k).ok_or(PowerError::NotCyclePower { vertex: comp[0], k })?
        };
        let size = order.len();
        for (pos, &v) in order.iter().enumerate() {
            half[v] = if k == 0 {
                vec![v]
            } else {
                q_path(pos, k, size)?.into_iter().map(|p| order[p]).collect()
            };
        }
    }
    let mut trails = Vec::with_capacity(n / 2);
    for &(u, v) in m.pairs() {
        let mut seq: Vec<Vertex> = half[u].iter().rev().copied().collect();
        seq.extend(&half[v]);
        let t = Trail::validate(g, &seq).map_err(|_| PowerError::JoinedNotPath(seq.clone()))?;
        if !t.is_path() {
            return Err(PowerError::JoinedNotPath(seq));
        }
        debug_assert_eq!(t.middle_edge(), Some(edge(u, v)));
        trails.push(t);
    }
    Ok(Decomposition::new(l, trails))
}
