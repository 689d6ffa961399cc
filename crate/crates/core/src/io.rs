//! Line-based text formats for instances, decompositions and traces.
//!
//! Instance:
//! ```text
//! # comment
//! group cyclic 12        | group product 4 2 | group table N (then N rows)
//! g 1
//! r 3
//! matching 0-4 1-5 2-6 3-7 8-10 9-11
//! ```
//! or `power N K` followed by `matching`. Product elements are comma-joined coordinates.
//!
//! Decomposition: `paths COUNT length L`, then one trail per line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cayley::{BuildError, GrGraph};
use crate::graph::{Decomposition, GraphError, Matching, Trail, Vertex};
use crate::group::{Group, GroupError, GroupKind, ScgPair, ScgViolation};
use crate::power::{PowerCycleInstance, PowerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scg(#[from] ScgViolation),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Power(#[from] PowerError),
}

#[derive(Debug, Clone)]
pub enum Instance {
    Gr(GrGraph),
    Power(PowerCycleInstance),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn number(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("expected a number, got `{tok}`")))
}

fn pairs(
    line: usize,
    toks: &[&str],
    elem: impl Fn(&str) -> Result<Vertex, ParseError>,
) -> Result<Vec<(Vertex, Vertex)>, ParseError> {
    toks.iter()
        .map(|t| {
            let (a, b) = t.split_once('-').ok_or_else(|| syntax(line, format!("expected `u-v`, got `{t}`")))?;
            Ok((elem(a)?, elem(b)?))
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or(ParseError::Missing("group"))?;
    match head.as_slice() {
        ["power", n, k] => {
            let (n, k) = (number(ln, n)?, number(ln, k)?);
            let (ln, toks) = it.next().ok_or(ParseError::Missing("matching"))?;
            if toks[0] != "matching" {
                return Err(syntax(ln, format!("expected `matching`, got `{}`", toks[0])));
            }
            let ps = pairs(ln, &toks[1..], |s| number(ln, s))?;
            if let Some((ln, _)) = it.next() {
                return Err(syntax(ln, "trailing content"));
            }
            Ok(Instance::Power(PowerCycleInstance::new(n, k, Matching::new(n, ps)?)?))
        }
        ["group", kind, rest @ ..] => {
            let group = match (*kind, rest) {
                ("cyclic", [n]) => Group::cyclic(number(ln, n)?)?,
                ("product", ms) if !ms.is_empty() => {
                    Group::product(&ms.iter().map(|m| number(ln, m)).collect::<Result<Vec<_>, _>>()?)?
                }
                ("table", [n]) => {
                    let n = number(ln, n)?;
                    let mut rows = Vec::with_capacity(n);
                    for _ in 0..n {
                        let (ln, toks) = it.next().ok_or(ParseError::Missing("table row"))?;
                        rows.push(toks.iter().map(|t| number(ln, t)).collect::<Result<Vec<_>, _>>()?);
                    }
                    Group::from_table(n, rows)?
                }
                _ => return Err(syntax(ln, format!("bad group line `{}`", head.join(" ")))),
            };
            let elem = |ln: usize, s: &str| group.parse_element(s).map_err(|e| syntax(ln, e.to_string()));
            let mut g = None;
            let mut r = None;
            let mut m = None;
            for (ln, toks) in it {
                match (toks[0], &toks[1..]) {
                    ("g", [x]) if g.is_none() => g = Some(elem(ln, x)?),
                    ("r", [x]) if r.is_none() => r = Some(elem(ln, x)?),
                    ("matching", ps) if m.is_none() => m = Some(pairs(ln, ps, |s| elem(ln, s))?),
                    _ => return Err(syntax(ln, format!("unexpected line `{}`", toks.join(" ")))),
                }
            }
            let g = g.ok_or(ParseError::Missing("g"))?;
            let r = r.ok_or(ParseError::Missing("r"))?;
            let m = m.ok_or(ParseError::Missing("matching"))?;
            let pair = ScgPair::validate(&group, g, r)?;
            let matching = Matching::new(group.order(), m)?;
            Ok(Instance::Gr(GrGraph::assemble(group, pair, matching)?))
        }
        _ => Err(syntax(ln, format!("expected `group` or `power`, got `{}`", head.join(" ")))),
    }
}

pub fn format_group(group: &Group) -> String {
    match group.kind() {
        GroupKind::Cyclic => format!("group cyclic {}\n", group.order()),
        GroupKind::Product(ms) => {
            let ms: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
            format!("group product {}\n", ms.join(" "))
        }
        GroupKind::Table => {
            let n = group.order();
            let mut out = format!("group table {n}\n");
            for a in 0..n {
                let row: Vec<String> = (0..n).map(|b| group.add(a, b).to_string()).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
            out
        }
    }
}

pub fn format_instance(inst: &Instance) -> String {
    match inst {
        Instance::Gr(gg) => {
            let grp = &gg.group;
            let f = |x| grp.format_element(x);
            let ms: Vec<String> = gg.matching.pairs().iter().map(|&(u, v)| format!("{}-{}", f(u), f(v))).collect();
            format!("{}g {}\nr {}\nmatching {}\n", format_group(grp), f(gg.g()), f(gg.r()), ms.join(" "))
        }
        Instance::Power(p) => {
            let ms: Vec<String> = p.matching.pairs().iter().map(|&(u, v)| format!("{u}-{v}")).collect();
            format!("power {} {}\nmatching {}\n", p.n, p.k, ms.join(" "))
        }
    }
}

pub fn format_decomposition(d: &Decomposition) -> String {
    let mut out = format!("paths {} length {}\n", d.trails.len(), d.length);
    for t in &d.trails {
        let vs: Vec<String> = t.vertices().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", vs.join(" "));
    }
    out
}

/// Parses the decomposition format. Trails are checked for shape only; graph membership is
/// left to the verifier.
pub fn parse_decomposition(text: &str) -> Result<Decomposition, ParseError> {
    let mut it = lines(text);
    let (ln, head) = it.next().ok_or(ParseError::Missing("paths"))?;
    let ["paths", count, "length", l] = head.as_slice() else {
        return Err(syntax(ln, "expected `paths COUNT length L`"));
    };
    let (count, l) = (number(ln, count)?, number(ln, l)?);
    let mut trails = Vec::with_capacity(count);
    for (ln, toks) in it {
        if toks.len() != l + 1 {
            return Err(syntax(ln, format!("expected {} vertices, got {}", l + 1, toks.len())));
        }
        let vs = toks.iter().map(|t| number(ln, t)).collect::<Result<Vec<_>, _>>()?;
        trails.push(Trail::from_vertices_unchecked(vs));
    }
    if trails.len() != count {
        return Err(syntax(ln, format!("header announces {count} paths, found {}", trails.len())));
    }
    Ok(Decomposition::new(l, trails))
}
