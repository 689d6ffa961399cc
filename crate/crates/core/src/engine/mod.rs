//! Exchange algorithm for `P5`-decompositions of `{g,r}`-graphs.
//!
//! Start from one trail per matching edge, remove free type-A elements while keeping the
//! decomposition complete, then dissolve A-chains while keeping it admissible. Every rewrite
//! replaces a few elements by trails over the same edges and lowers the number of non-paths.

pub mod chains;
pub mod classify;
mod phase1;
mod phase2;

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::cayley::GrGraph;
use crate::collage::{decompose_degenerate, CollageError};
use crate::graph::{edge, Decomposition, Edge, Trail, Vertex};
use crate::verify::{check_admissible, check_complete, check_engine_invariants, verify_decomposition, VerifyReport};

use chains::ChainStructure;
use classify::{classify_trail, hanging_of, Tag, TrailClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("no exchange applies: {context}\n{dump}")]
    NoExchange { context: String, dump: String },
    #[error("rewrite {rule} broke an invariant:\n{report}{dump}")]
    Invariant { rule: String, report: String, dump: String },
    #[error("A-chain of length 2 implies a parallel edge:\n{0}")]
    ParallelEdge(String),
    #[error("final decomposition rejected:\n{0}")]
    Rejected(String),
    #[error(transparent)]
    Collage(#[from] CollageError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Complete,
    Admissible,
}

/// How a decomposition was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Engine,
    SignFlipEngine,
    K44,
    Power,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Engine => "engine",
            Route::SignFlipEngine => "sign-flip engine",
            Route::K44 => "k44",
            Route::Power => "power",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub step: usize,
    pub rule: &'static str,
    pub tau_before: usize,
    pub tau_after: usize,
    pub touched: Vec<usize>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.touched.iter().map(|t| t.to_string()).collect();
        write!(f, "{}\t{}\t{}\t{}\t{}", self.step, self.rule, self.tau_before, self.tau_after, ids.join(","))
    }
}

/// Trace lines, one per rewrite, each ending in a newline.
pub fn format_trace(trace: &[TraceStep]) -> String {
    let mut out = String::new();
    for s in trace {
        let _ = writeln!(out, "{s}");
    }
    out
}

/// What a replacement element is required to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Want {
    Is(Tag),
    Path,
    PathOrA,
}

impl Want {
    fn accepts(self, tag: Tag) -> bool {
        match self {
            Want::Is(t) => t == tag,
            Want::Path => tag.is_path(),
            Want::PathOrA => tag.is_path() || tag == Tag::A,
        }
    }
}

/// The decomposition being rewritten. Element ids are stable slots.
#[derive(Debug, Clone)]
pub struct EngineState {
    gg: GrGraph,
    trails: Vec<Vec<Vertex>>,
    classes: Vec<TrailClass>,
    owner: HashMap<Edge, usize>,
    phase: Phase,
    trace: Vec<TraceStep>,
    /// Run every invariant checker after each rewrite.
    pub audit: bool,
}

impl EngineState {
    /// One trail `a0 … a5` per matching edge `xy` (`x < y`): `a2 = x`, `a3 = y`,
    /// `a1 = a2 + g`, `a0 = a1 + r`, `a4 = a3 + g`, `a5 = a4 + r`.
    pub fn initial(gg: &GrGraph) -> Result<Self, EngineError> {
        if gg.pair.sum_doubles_zero {
            return Err(EngineError::Precondition("2g+2r = 0; the exchange engine needs 2g+2r != 0".into()));
        }
        let x = &gg.cayley;
        let trails: Vec<Vec<Vertex>> = gg
            .matching
            .pairs()
            .iter()
            .map(|&(a2, a3)| {
                let a1 = x.green_out(a2);
                let a4 = x.green_out(a3);
                vec![x.red_out(a1), a1, a2, a3, a4, x.red_out(a4)]
            })
            .collect();
        let mut state = EngineState {
            gg: gg.clone(),
            classes: Vec::new(),
            owner: HashMap::new(),
            trails,
            phase: Phase::Complete,
            trace: Vec::new(),
            audit: true,
        };
        state.reindex();
        for (t, c) in state.classes.iter().enumerate() {
            if !matches!(c.tag, Tag::A | Tag::B) {
                return Err(EngineError::Invariant {
                    rule: "init".into(),
                    report: format!("initial element {t} is {}\n", c.tag),
                    dump: state.dump(),
                });
            }
        }
        state.audit_now("init")?;
        Ok(state)
    }

    fn reindex(&mut self) {
        self.classes = self.trails.iter().map(|t| classify_trail(&self.gg, t)).collect();
        self.owner.clear();
        for (t, s) in self.trails.iter().enumerate() {
            for w in s.windows(2) {
                self.owner.insert(edge(w[0], w[1]), t);
            }
        }
    }

    pub fn gr_graph(&self) -> &GrGraph {
        &self.gg
    }

    pub fn trails(&self) -> &[Vec<Vertex>] {
        &self.trails
    }

    pub fn classes(&self) -> &[TrailClass] {
        &self.classes
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    /// Number of elements that are not paths.
    pub fn tau(&self) -> usize {
        self.classes.iter().filter(|c| !c.tag.is_path()).count()
    }

    pub fn owner(&self, e: Edge) -> Option<usize> {
        self.owner.get(&edge(e.0, e.1)).copied()
    }

    /// Hanging edges at `u` with their elements, ordered by edge.
    pub fn hanging_edges(&self, u: Vertex) -> Vec<(Edge, usize)> {
        let mut out = Vec::new();
        for &w in self.gg.graph.neighbors(u) {
            let e = edge(u, w);
            let t = self.owner[&e];
            if hanging_of(&self.gg, &self.classes[t]).iter().any(|&(v, f)| v == u && f == e) {
                out.push((e, t));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn hang(&self, u: Vertex) -> usize {
        self.hanging_edges(u).len()
    }

    pub fn chains(&self) -> Result<ChainStructure, EngineError> {
        ChainStructure::extract(&self.gg, &self.classes, &self.owner).map_err(|e| EngineError::NoExchange {
            context: format!("chain structure: {e}"),
            dump: self.dump(),
        })
    }

    pub fn check_complete(&self) -> VerifyReport {
        check_complete(&self.gg, &self.trails)
    }

    pub fn check_admissible(&self) -> VerifyReport {
        check_admissible(&self.gg, &self.trails)
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (t, (s, c)) in self.trails.iter().zip(&self.classes).enumerate() {
            let vs: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "  {t}\t{}\t{}", c.tag, vs.join(" "));
        }
        out
    }

    fn audit_now(&self, rule: &str) -> Result<(), EngineError> {
        if !self.audit {
            return Ok(());
        }
        let mut report = match self.phase {
            Phase::Complete => self.check_complete(),
            Phase::Admissible => self.check_admissible(),
        };
        report.checks.extend(check_engine_invariants(&self.gg, &self.trails).checks);
        if report.ok() {
            Ok(())
        } else {
            Err(EngineError::Invariant { rule: rule.into(), report: report.to_string(), dump: self.dump() })
        }
    }

    /// Replaces elements by new trails over the same edges, checking the replacements' types,
    /// the decrease of `tau`, and the phase invariant.
    pub(crate) fn apply(&mut self, rule: &'static str, repl: &[(usize, Vec<Vertex>)], want: &[Want]) -> Result<(), EngineError> {
        debug_assert_eq!(repl.len(), want.len());
        let fail = |state: &EngineState, why: String| EngineError::Invariant {
            rule: rule.into(),
            report: format!("{why}\nreplacements: {repl:?}\n"),
            dump: state.dump(),
        };
        let mut old: Vec<Edge> = Vec::new();
        let mut new: Vec<Edge> = Vec::new();
        for (t, seq) in repl {
            old.extend(self.trails[*t].windows(2).map(|w| edge(w[0], w[1])));
            new.extend(seq.windows(2).map(|w| edge(w[0], w[1])));
            if seq.len() != 6 {
                return Err(fail(self, format!("replacement for {t} has {} vertices", seq.len())));
            }
            if let Err(e) = Trail::validate(&self.gg.graph, seq) {
                return Err(fail(self, format!("replacement for {t} is not a trail: {e}")));
            }
        }
        old.sort_unstable();
        new.sort_unstable();
        if old != new {
            return Err(fail(self, "replacements do not use the same edges".into()));
        }
        let tau_before = self.tau();
        let before = self.clone();
        for (t, seq) in repl {
            self.trails[*t] = seq.clone();
            self.classes[*t] = classify_trail(&self.gg, seq);
        }
        for ((t, _), w) in repl.iter().zip(want) {
            if !w.accepts(self.classes[*t].tag) {
                let why = format!("element {t} became {} but {w:?} was required", self.classes[*t].tag);
                *self = before;
                return Err(fail(self, why));
            }
        }
        let tau_after = self.tau();
        if tau_after >= tau_before {
            *self = before;
            return Err(fail(self, format!("tau did not decrease: {tau_before} -> {tau_after}")));
        }
        for (t, seq) in repl {
            for w in seq.windows(2) {
                self.owner.insert(edge(w[0], w[1]), *t);
            }
        }
        let mut touched: Vec<usize> = repl.iter().map(|(t, _)| *t).collect();
        touched.sort_unstable();
        self.trace.push(TraceStep { step: self.trace.len() + 1, rule, tau_before, tau_after, touched });
        self.audit_now(rule)
    }

    /// Performs one rewrite. Returns false when nothing is left to do.
    pub fn step(&mut self) -> Result<bool, EngineError> {
        match self.phase {
            Phase::Complete => {
                if self.phase1_step()? {
                    return Ok(true);
                }
                self.phase = Phase::Admissible;
                self.audit_now("phase")?;
                self.phase2_step()
            }
            Phase::Admissible => self.phase2_step(),
        }
    }

    /// Removes every free type-A element.
    pub fn eliminate_free_a(&mut self) -> Result<(), EngineError> {
        if self.phase != Phase::Complete {
            return Err(EngineError::Precondition("free elements are removed in the complete phase".into()));
        }
        while self.phase1_step()? {}
        Ok(())
    }

    /// The chain structure once no free type-A element remains.
    pub fn extract_chains(&self) -> Result<ChainStructure, EngineError> {
        let s = self.chains()?;
        if s.open.is_some() && self.phase == Phase::Complete {
            return Err(EngineError::Precondition("a free type-A element remains".into()));
        }
        Ok(s)
    }

    /// Dissolves all A-chains and the open chain.
    pub fn reduce_admissible(&mut self) -> Result<(), EngineError> {
        self.phase = Phase::Admissible;
        self.audit_now("phase")?;
        while self.phase2_step()? {}
        Ok(())
    }

    /// Runs both phases to the end.
    pub fn run(&mut self) -> Result<(), EngineError> {
        while self.step()? {}
        Ok(())
    }

    pub fn into_decomposition(self) -> Decomposition {
        Decomposition::new(5, self.trails.into_iter().map(Trail::from_vertices_unchecked).collect())
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub decomposition: Decomposition,
    pub route: Route,
    pub trace: Vec<TraceStep>,
    pub initial_tau: usize,
}

/// `P5`-decomposition of a `{g,r}`-graph, verified before it is returned.
pub fn decompose(gg: &GrGraph) -> Result<Outcome, EngineError> {
    decompose_with(gg, true)
}

/// As [`decompose`], optionally skipping the per-rewrite invariant audit.
pub fn decompose_with(gg: &GrGraph, audit: bool) -> Result<Outcome, EngineError> {
    let p = gg.pair;
    let (outcome, centered) = if p.sum_doubles_zero && p.diff_doubles_zero {
        let d = decompose_degenerate(gg)?;
        (Outcome { decomposition: d, route: Route::K44, trace: Vec::new(), initial_tau: 0 }, true)
    } else {
        let (host, route) = if p.sum_doubles_zero {
            let flipped = gg
                .with_red_flipped()
                .ok_or_else(|| EngineError::Precondition("pair (g, -r) is not simple commutative".into()))?;
            (flipped, Route::SignFlipEngine)
        } else {
            (gg.clone(), Route::Engine)
        };
        let mut state = EngineState::initial(&host)?;
        state.audit = audit;
        let initial_tau = state.tau();
        state.run()?;
        let trace = state.trace.clone();
        (Outcome { decomposition: state.into_decomposition(), route, trace, initial_tau }, false)
    };
    let report = verify_decomposition(&gg.graph, &outcome.decomposition, 5, centered.then_some(&gg.matching));
    if !report.ok() {
        return Err(EngineError::Rejected(report.to_string()));
    }
    Ok(outcome)
}
