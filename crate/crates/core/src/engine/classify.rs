//! Trail types A, B, C, D of a `{g,r}`-graph and their hanging edges.

use std::fmt;

use crate::cayley::GrGraph;
use crate::graph::{edge, Edge, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    A,
    B,
    C,
    D,
    PathOther,
    Invalid,
}

impl Tag {
    pub fn is_path(self) -> bool {
        !matches!(self, Tag::A | Tag::Invalid)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::A => "A",
            Tag::B => "B",
            Tag::C => "C",
            Tag::D => "D",
            Tag::PathOther => "path",
            Tag::Invalid => "invalid",
        };
        f.write_str(s)
    }
}

/// A tag with the writing `a0 … a5` that witnesses it. For `PathOther` and `Invalid` the
/// writing is the input order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailClass {
    pub tag: Tag,
    pub seq: [Vertex; 6],
}

impl TrailClass {
    /// Primary connection vertex `a3` of a type-A element.
    pub fn cv1(&self) -> Option<Vertex> {
        (self.tag == Tag::A).then_some(self.seq[3])
    }

    /// Secondary connection vertex `a2`.
    pub fn cv2(&self) -> Option<Vertex> {
        (self.tag == Tag::A).then_some(self.seq[2])
    }

    /// Auxiliary vertex `a1`.
    pub fn aux(&self) -> Option<Vertex> {
        (self.tag == Tag::A).then_some(self.seq[1])
    }

    /// Tricky vertex `a4`.
    pub fn tr(&self) -> Option<Vertex> {
        (self.tag == Tag::A).then_some(self.seq[4])
    }

    /// `cv_i` for `i` in `{1, 2}`.
    pub fn cv(&self, i: u8) -> Option<Vertex> {
        match i {
            1 => self.cv1(),
            2 => self.cv2(),
            _ => None,
        }
    }
}

fn distinct(x: &[Vertex]) -> bool {
    (0..x.len()).all(|i| (i + 1..x.len()).all(|j| x[i] != x[j]))
}

fn plus_g(gg: &GrGraph, u: Vertex) -> Vertex {
    gg.cayley.green_out(u)
}

fn plus_r(gg: &GrGraph, u: Vertex) -> Vertex {
    gg.cayley.red_out(u)
}

fn is_type_a(gg: &GrGraph, x: &[Vertex; 6]) -> bool {
    x[5] == x[2]
        && distinct(&x[..5])
        && gg.is_m(x[2], x[3])
        && x[1] == plus_g(gg, x[2])
        && x[4] == plus_g(gg, x[3])
        && x[2] == plus_r(gg, x[4])
        && gg.hangs_at(x[1], x[0])
}

fn is_type_b(gg: &GrGraph, x: &[Vertex; 6]) -> bool {
    distinct(x)
        && gg.is_m(x[2], x[3])
        && x[1] == plus_g(gg, x[2])
        && x[4] == plus_g(gg, x[3])
        && gg.hangs_at(x[1], x[0])
        && gg.hangs_at(x[4], x[5])
}

fn is_type_c(gg: &GrGraph, x: &[Vertex; 6]) -> bool {
    distinct(x)
        && x[1] == plus_g(gg, x[2])
        && x[3] == plus_g(gg, x[4])
        && x[2] == plus_r(gg, x[3])
        && x[5] == plus_r(gg, x[4])
        && gg.hangs_at(x[1], x[0])
        && gg.is_m(x[2], x[4])
}

fn is_type_d(gg: &GrGraph, x: &[Vertex; 6]) -> bool {
    distinct(x)
        && x[0] == plus_r(gg, x[1])
        && gg.is_m(x[1], x[2])
        && x[2] == plus_g(gg, x[3])
        && gg.is_m(x[3], x[4])
        && x[5] == plus_r(gg, x[4])
}

type Pattern = fn(&GrGraph, &[Vertex; 6]) -> bool;

fn is_trail(gg: &GrGraph, x: &[Vertex]) -> bool {
    let mut seen: Vec<Edge> = Vec::with_capacity(5);
    for w in x.windows(2) {
        if !gg.graph.has_edge(w[0], w[1]) {
            return false;
        }
        let e = edge(w[0], w[1]);
        if seen.contains(&e) {
            return false;
        }
        seen.push(e);
    }
    true
}

/// First tag in priority A, B, C, D that matches the trail in either orientation.
pub fn classify_trail(gg: &GrGraph, seq: &[Vertex]) -> TrailClass {
    let Ok(x): Result<[Vertex; 6], _> = seq.try_into() else {
        let mut pad = [usize::MAX; 6];
        for (p, &v) in pad.iter_mut().zip(seq) {
            *p = v;
        }
        return TrailClass { tag: Tag::Invalid, seq: pad };
    };
    let mut rev = x;
    rev.reverse();
    if !x.iter().all(|&v| v < gg.order()) || !is_trail(gg, &x) {
        return TrailClass { tag: Tag::Invalid, seq: x };
    }
    let checks: [(Tag, Pattern); 4] =
        [(Tag::A, is_type_a), (Tag::B, is_type_b), (Tag::C, is_type_c), (Tag::D, is_type_d)];
    for (tag, check) in checks {
        for w in [x, rev] {
            if check(gg, &w) {
                return TrailClass { tag, seq: w };
            }
        }
    }
    let tag = if distinct(&x) { Tag::PathOther } else { Tag::Invalid };
    TrailClass { tag, seq: x }
}

/// Hanging edges of one element as `(vertex, edge)` pairs: `x0x1` at `x1` and `x4x5` at `x4`
/// when the edge is in `M` or an out edge of that vertex, plus `a2a3` at `a3` for type A.
pub fn hanging_of(gg: &GrGraph, class: &TrailClass) -> Vec<(Vertex, Edge)> {
    let x = class.seq;
    let mut out = Vec::with_capacity(3);
    if class.tag == Tag::Invalid && x.contains(&usize::MAX) {
        return out;
    }
    if gg.hangs_at(x[1], x[0]) {
        out.push((x[1], edge(x[0], x[1])));
    }
    if gg.hangs_at(x[4], x[5]) {
        out.push((x[4], edge(x[4], x[5])));
    }
    if class.tag == Tag::A {
        out.push((x[3], edge(x[2], x[3])));
    }
    out
}
