//! Seeded perfect matchings on arbitrary graphs: randomized greedy start, then
//! augmenting-path repair with Edmonds' blossom search.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{edge, Edge, Vertex};

/// Returns a perfect matching of the graph given by `adj`, or `None` if it has none.
/// The result is fully determined by `seed`.
pub fn seeded_perfect_matching(adj: &[Vec<Vertex>], seed: u64) -> Option<Vec<Edge>> {
    let n = adj.len();
    if n % 2 == 1 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<Vertex>> = adj.to_vec();
    for list in adj.iter_mut() {
        list.shuffle(&mut rng);
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut mate: Vec<Option<Vertex>> = vec![None; n];
    for &u in &order {
        if mate[u].is_some() {
            continue;
        }
        if let Some(&v) = adj[u].iter().find(|&&v| mate[v].is_none()) {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
    }
    for &root in &order {
        if mate[root].is_none() && !augment(&adj, &mut mate, root) {
            return None;
        }
    }
    let mut pairs: Vec<Edge> = (0..n).filter_map(|u| mate[u].filter(|&v| u < v).map(|v| edge(u, v))).collect();
    pairs.sort_unstable();
    Some(pairs)
}

fn lca(match_: &[Option<Vertex>], base: &[Vertex], parent: &[Option<Vertex>], a: Vertex, b: Vertex) -> Vertex {
    let n = base.len();
    let mut used = vec![false; n];
    let mut a = a;
    loop {
        a = base[a];
        used[a] = true;
        match match_[a] {
            None => break,
            Some(m) => a = parent[m].expect("matched vertex on alternating tree has a parent"),
        }
    }
    let mut b = b;
    loop {
        b = base[b];
        if used[b] {
            return b;
        }
        b = parent[match_[b].expect("tree vertex is matched")].expect("parent set");
    }
}

struct Search {
    parent: Vec<Option<Vertex>>,
    base: Vec<Vertex>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<Vertex>,
}

impl Search {
    fn mark_path(&mut self, mate: &[Option<Vertex>], mut v: Vertex, b: Vertex, mut child: Vertex) {
        while self.base[v] != b {
            let m = mate[v].expect("blossom vertex matched");
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("parent in blossom");
        }
    }
}

/// Finds and applies one augmenting path from `root`. Returns false if none exists.
fn augment(adj: &[Vec<Vertex>], mate: &mut [Option<Vertex>], root: Vertex) -> bool {
    let n = adj.len();
    let mut s = Search {
        parent: vec![None; n],
        base: (0..n).collect(),
        used: vec![false; n],
        blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    s.used[root] = true;
    s.queue.push_back(root);
    while let Some(v) = s.queue.pop_front() {
        for &to in &adj[v] {
            if s.base[v] == s.base[to] || mate[v] == Some(to) {
                continue;
            }
            if to == root || mate[to].is_some_and(|m| s.parent[m].is_some()) {
                let cur = lca(mate, &s.base, &s.parent, v, to);
                s.blossom.iter_mut().for_each(|b| *b = false);
                s.mark_path(mate, v, cur, to);
                s.mark_path(mate, to, cur, v);
                for i in 0..n {
                    if s.blossom[s.base[i]] {
                        s.base[i] = cur;
                        if !s.used[i] {
                            s.used[i] = true;
                            s.queue.push_back(i);
                        }
                    }
                }
            } else if s.parent[to].is_none() {
                s.parent[to] = Some(v);
                match mate[to] {
                    None => {
                        // flip the alternating path ending at `to`
                        let mut x = Some(to);
                        while let Some(u) = x {
                            let pv = s.parent[u].expect("path vertex has parent");
                            let ppv = mate[pv];
                            mate[u] = Some(pv);
                            mate[pv] = Some(u);
                            x = ppv;
                        }
                        return true;
                    }
                    Some(m) => {
                        s.used[m] = true;
                        s.queue.push_back(m);
                    }
                }
            }
        }
    }
    false
}
