//! Arcs between type-A elements and their decomposition into A-chains and an open chain.
//!
//! There is an arc `T1 -> T2` of link type `i` when `tr(T2) = cv_i(T1)`.

use std::collections::HashMap;
use std::fmt;

use crate::cayley::GrGraph;
use crate::graph::{edge, Edge, Vertex};

use super::classify::{Tag, TrailClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    OutDegree(usize),
    InDegree(usize),
    /// A path of arcs that does not end in an exceptional pair.
    Dangling(Vec<usize>),
    TwoOpenChains,
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::OutDegree(t) => write!(f, "element {t} has two successors"),
            ChainError::InDegree(t) => write!(f, "element {t} has two predecessors"),
            ChainError::Dangling(p) => write!(f, "chain {p:?} does not end in an exceptional pair"),
            ChainError::TwoOpenChains => write!(f, "more than one open chain"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainKind {
    Type1,
    Type2,
    Mixed,
}

/// A directed cycle of type-A elements. `links[j]` is the type of `members[j] -> members[j+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub members: Vec<usize>,
    pub links: Vec<u8>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn kind(&self) -> ChainKind {
        if self.links.iter().all(|&l| l == 1) {
            ChainKind::Type1
        } else if self.links.iter().all(|&l| l == 2) {
            ChainKind::Type2
        } else {
            ChainKind::Mixed
        }
    }

    /// Member at position `j` taken cyclically.
    pub fn at(&self, j: usize) -> usize {
        self.members[j % self.members.len()]
    }

    pub fn link(&self, j: usize) -> u8 {
        self.links[j % self.links.len()]
    }
}

/// Free element `members[0]`, type-A successors, then the type-C element `exceptional`.
/// `links[j]` is the type of `members[j] -> members[j+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenChain {
    pub members: Vec<usize>,
    pub links: Vec<u8>,
    pub exceptional: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChainStructure {
    pub chains: Vec<Chain>,
    pub open: Option<OpenChain>,
}

/// All arcs `(from, to, link)` in ascending order.
pub fn arcs(classes: &[TrailClass]) -> Vec<(usize, usize, u8)> {
    let tr_owner: HashMap<Vertex, usize> =
        classes.iter().enumerate().filter_map(|(t, c)| c.tr().map(|v| (v, t))).collect();
    let mut out = Vec::new();
    for (t, c) in classes.iter().enumerate() {
        for i in [1u8, 2] {
            if let Some(&t2) = c.cv(i).and_then(|v| tr_owner.get(&v)) {
                out.push((t, t2, i));
            }
        }
    }
    out
}

/// Type-A elements whose tricky vertex is nobody's connection vertex.
pub fn free_elements(classes: &[TrailClass]) -> Vec<usize> {
    let mut has_pred = vec![false; classes.len()];
    for (_, t2, _) in arcs(classes) {
        has_pred[t2] = true;
    }
    (0..classes.len()).filter(|&t| classes[t].tag == Tag::A && !has_pred[t]).collect()
}

/// `(T1, T2)` with `T1` of type A, `T2` of type C and `b3 = cv2(T1)`.
pub fn is_exceptional_pair(a: &TrailClass, c: &TrailClass) -> bool {
    a.tag == Tag::A && c.tag == Tag::C && Some(c.seq[3]) == a.cv2()
}

/// The element completing an exceptional pair with `a`: the owner of the red out edge of
/// `cv2(a)`, provided it is of type C in the right position.
pub fn exceptional_partner(
    gg: &GrGraph,
    classes: &[TrailClass],
    owner: &HashMap<Edge, usize>,
    a: usize,
) -> Option<usize> {
    let v = classes[a].cv2()?;
    let t = *owner.get(&edge(v, gg.cayley.red_out(v)))?;
    is_exceptional_pair(&classes[a], &classes[t]).then_some(t)
}

impl ChainStructure {
    pub fn extract(gg: &GrGraph, classes: &[TrailClass], owner: &HashMap<Edge, usize>) -> Result<Self, ChainError> {
        let n = classes.len();
        let mut succ: Vec<Option<(usize, u8)>> = vec![None; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        for (t1, t2, i) in arcs(classes) {
            if succ[t1].replace((t2, i)).is_some() {
                return Err(ChainError::OutDegree(t1));
            }
            if pred[t2].replace(t1).is_some() {
                return Err(ChainError::InDegree(t2));
            }
        }
        let mut seen = vec![false; n];
        let mut open = None;
        for start in 0..n {
            if classes[start].tag != Tag::A || pred[start].is_some() {
                continue;
            }
            let mut members = vec![start];
            let mut links = Vec::new();
            seen[start] = true;
            let mut t = start;
            while let Some((next, i)) = succ[t] {
                members.push(next);
                links.push(i);
                seen[next] = true;
                t = next;
            }
            let Some(exceptional) = exceptional_partner(gg, classes, owner, t) else {
                return Err(ChainError::Dangling(members));
            };
            if open.is_some() {
                return Err(ChainError::TwoOpenChains);
            }
            open = Some(OpenChain { members, links, exceptional });
        }
        let mut chains = Vec::new();
        for start in 0..n {
            if classes[start].tag != Tag::A || seen[start] {
                continue;
            }
            let mut members = Vec::new();
            let mut links = Vec::new();
            let mut t = start;
            loop {
                seen[t] = true;
                members.push(t);
                let Some((next, i)) = succ[t] else {
                    return Err(ChainError::Dangling(members));
                };
                links.push(i);
                t = next;
                if t == start {
                    break;
                }
            }
            chains.push(Chain { members, links });
        }
        Ok(ChainStructure { chains, open })
    }
}
