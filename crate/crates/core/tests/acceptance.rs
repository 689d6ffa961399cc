//! Acceptance suite. Prints one line per criterion and exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pathdecomp::cayley::{random_matching, GrGraph};
use pathdecomp::collage::{decompose_k44, K44Block};
use pathdecomp::engine::{decompose, format_trace, EngineState, Phase, Route};
use pathdecomp::graph::{Decomposition, Graph, Matching, Vertex};
use pathdecomp::group::{Group, ScgPair};
use pathdecomp::io::{format_decomposition, format_instance, Instance};
use pathdecomp::power::{decompose_complete, decompose_power_cycle, PowerCycleInstance};
use pathdecomp::verify::{brute_force_p_l, check_engine_invariants, verify_decomposition, BruteOutcome};

use common::{corpus, Case, Regime};

const K44_LIMIT: Duration = Duration::from_millis(10);
const POWER_LIMIT: Duration = Duration::from_secs(30);
const COMPLETE_LIMIT: Duration = Duration::from_secs(10);
const INSTANCE_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: u64 = 50_000_000;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seqs(d: &Decomposition) -> Vec<Vec<Vertex>> {
    d.trails.iter().map(|t| t.vertices().to_vec()).collect()
}

/// Each vertex is an end of exactly one path.
fn ends_once(n: usize, d: &Decomposition) -> bool {
    let mut count = vec![0; n];
    for t in &d.trails {
        let v = t.vertices();
        count[v[0]] += 1;
        count[v[v.len() - 1]] += 1;
    }
    count.iter().all(|&c| c == 1)
}

fn k44_golden() -> Outcome {
    // r1..r4 -> 0..3, l1..l4 -> 4..7; M = {r1r2, r3r4, l1l2, l3l4}
    let label = |tok: &str| -> Vertex {
        let i: usize = tok[1..].parse().unwrap();
        if tok.starts_with('r') { i - 1 } else { i + 3 }
    };
    let written = ["l1 r1 l3 l4 r2 l2", "l3 r3 l1 l2 r4 l4", "r1 l2 r3 r4 l1 r2", "r3 l4 r1 r2 l3 r4"];
    let expected: Vec<Vec<Vertex>> = written.iter().map(|p| p.split(' ').map(label).collect()).collect();
    let pairs = vec![(0, 1), (2, 3), (4, 5), (6, 7)];
    let start = Instant::now();
    let d = decompose_k44(&K44Block::new([0, 1, 2, 3], [4, 5, 6, 7], pairs.clone())).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(seqs(&d) == expected, || format!("paths {:?} differ from {expected:?}", seqs(&d)))?;
    let mut edges: Vec<(Vertex, Vertex)> = (0..4).flat_map(|r| (4..8).map(move |l| (r, l))).collect();
    edges.extend(&pairs);
    let g = Graph::from_edges(8, edges).unwrap();
    let report = verify_decomposition(&g, &d, 5, Some(&Matching::new(8, pairs).unwrap()));
    ensure(report.ok(), || format!("verifier: {report}"))?;
    ensure(elapsed < K44_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("4 paths match, m-centered, {elapsed:?} < {K44_LIMIT:?}"))
}

fn powers_of_cycles() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for n in (8usize..=128).step_by(2) {
        for k in 1..=10.min(n.div_ceil(2) - 1) {
            for seed in 0..5 {
                let inst = PowerCycleInstance::random(n, k, seed).map_err(|e| format!("n={n} k={k}: {e}"))?;
                let d = decompose_power_cycle(&inst).map_err(|e| format!("n={n} k={k} seed={seed}: {e}"))?;
                let report = verify_decomposition(&inst.graph(), &d, 2 * k + 1, Some(&inst.matching));
                ensure(report.ok(), || format!("n={n} k={k} seed={seed}: {report}"))?;
                ensure(d.trails.len() == n / 2, || format!("n={n} k={k}: {} paths", d.trails.len()))?;
                runs += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    // n = 10, k = 3, M containing 2-8
    let m = Matching::new(10, [(2, 8), (0, 5), (1, 6), (3, 7), (4, 9)]).unwrap();
    let d = decompose_power_cycle(&PowerCycleInstance::new(10, 3, m).unwrap()).map_err(|e| e.to_string())?;
    let witness = vec![4, 1, 3, 2, 8, 9, 7, 0];
    let found = seqs(&d).iter().any(|s| *s == witness || s.iter().rev().eq(witness.iter()));
    ensure(found, || format!("witness path missing from {:?}", seqs(&d)))?;
    ensure(elapsed < POWER_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{runs} instances, witness path found, {elapsed:?} < {POWER_LIMIT:?}"))
}

fn complete_graphs() -> Outcome {
    let start = Instant::now();
    for l in (1..=99).step_by(2) {
        let n = l + 1;
        let d = decompose_complete(l).map_err(|e| format!("l={l}: {e}"))?;
        let g = Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap();
        let report = verify_decomposition(&g, &d, l, None);
        ensure(report.ok(), || format!("l={l}: {report}"))?;
        ensure(d.trails.len() == n / 2, || format!("l={l}: {} paths", d.trails.len()))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < COMPLETE_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("l = 1, 3, ..., 99 Hamilton paths verified, {elapsed:?} < {COMPLETE_LIMIT:?}"))
}

fn engine_corpus(cases: &[Case]) -> Outcome {
    let mut regimes = std::collections::BTreeMap::new();
    let mut slowest = Duration::ZERO;
    for c in cases {
        let n = c.gg.order();
        let start = Instant::now();
        let out = decompose(&c.gg).map_err(|e| format!("{}: {e}", c.name))?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let d = &out.decomposition;
        let report = verify_decomposition(&c.gg.graph, d, 5, None);
        ensure(report.ok(), || format!("{}: {report}", c.name))?;
        ensure(d.trails.len() == n / 2, || format!("{}: {} paths", c.name, d.trails.len()))?;
        ensure(d.trails.iter().all(|t| t.len() == 5), || format!("{}: wrong length", c.name))?;
        ensure(ends_once(n, d), || format!("{}: endpoint invariant", c.name))?;
        let mut tau = out.initial_tau;
        for s in &out.trace {
            ensure(s.tau_before == tau && s.tau_after < s.tau_before, || format!("{}: tau trace {s}", c.name))?;
            tau = s.tau_after;
        }
        ensure(tau == 0 || out.route == Route::K44, || format!("{}: final tau {tau}", c.name))?;
        ensure(out.trace.len() <= n, || format!("{}: {} rewrites", c.name, out.trace.len()))?;
        ensure(elapsed < INSTANCE_LIMIT, || format!("{}: took {elapsed:?}", c.name))?;
        let expected_route = match c.regime {
            Regime::BothZero => Route::K44,
            Regime::SignFlip => Route::SignFlipEngine,
            _ => Route::Engine,
        };
        ensure(out.route == expected_route, || format!("{}: route {}", c.name, out.route))?;
        *regimes.entry(c.regime).or_insert(0) += 1;
    }
    ensure(cases.len() >= 200, || format!("only {} instances", cases.len()))?;
    ensure(regimes.len() == 4, || format!("regimes covered: {regimes:?}"))?;
    Ok(format!("{} instances {regimes:?}, slowest {slowest:?} < {INSTANCE_LIMIT:?}", cases.len()))
}

fn oracle_equivalence(cases: &[Case]) -> Outcome {
    let mut runs = 0;
    for c in cases.iter().filter(|c| c.gg.order() <= 12) {
        let ours = decompose(&c.gg).map_err(|e| format!("{}: {e}", c.name))?.decomposition;
        let report = verify_decomposition(&c.gg.graph, &ours, 5, None);
        ensure(report.ok(), || format!("{}: engine output {report}", c.name))?;
        match brute_force_p_l(&c.gg.graph, 5, ORACLE_BUDGET).map_err(|e| format!("{}: {e}", c.name))? {
            BruteOutcome::Found(theirs) => {
                let report = verify_decomposition(&c.gg.graph, &theirs, 5, None);
                ensure(report.ok(), || format!("{}: oracle output {report}", c.name))?;
            }
            BruteOutcome::None => return Err(format!("{}: oracle finds no decomposition", c.name)),
            BruteOutcome::Budget => return Err(format!("{}: oracle budget exhausted", c.name)),
        }
        runs += 1;
    }
    ensure(runs > 0, || "no instance with n <= 12".into())?;
    Ok(format!("{runs} instances with n <= 12 agree"))
}

/// Steps the engine by hand, checking the phase invariant after every rewrite.
fn audit_run(name: &str, gg: &GrGraph) -> Result<usize, String> {
    let host = if gg.pair.sum_doubles_zero { gg.with_red_flipped().unwrap() } else { gg.clone() };
    let mut state = EngineState::initial(&host).map_err(|e| format!("{name}: {e}"))?;
    state.audit = false;
    let mut steps = 0;
    loop {
        let report = match state.phase() {
            Phase::Complete => state.check_complete(),
            Phase::Admissible => state.check_admissible(),
        };
        ensure(report.ok(), || format!("{name} after {steps} rewrites: {report}"))?;
        let inv = check_engine_invariants(&host, state.trails());
        ensure(inv.ok(), || format!("{name} after {steps} rewrites: {inv}"))?;
        if !state.step().map_err(|e| format!("{name}: {e}"))? {
            break;
        }
        steps += 1;
    }
    ensure(state.tau() == 0, || format!("{name}: tau {} at the end", state.tau()))?;
    Ok(steps)
}

fn scg_oracle(n: usize, g: usize, r: usize) -> Option<(bool, bool, bool)> {
    let m = |x: usize| x % n;
    let bad = g == 0 || r == 0 || m(2 * g) == 0 || m(2 * r) == 0 || g == r || m(g + r) == 0;
    (!bad).then(|| (m(2 * g + 2 * r) == 0, m(2 * g + 2 * n - 2 * r) == 0, r == m(2 * g)))
}

fn invariant_suites() -> Outcome {
    let mut states = 0;
    let mut instances = 0;
    let mut groups: Vec<Group> = (6..=24).step_by(2).map(|n| Group::cyclic(n).unwrap()).collect();
    for m in [[4, 2], [4, 4], [6, 2], [8, 2], [10, 2], [6, 4], [12, 2]] {
        groups.push(Group::product(&m).unwrap());
    }
    for grp in &groups {
        for g in grp.elements() {
            for r in grp.elements() {
                let Ok(p) = ScgPair::validate(grp, g, r) else { continue };
                if p.sum_doubles_zero && p.diff_doubles_zero {
                    continue;
                }
                for seed in 0..3 {
                    let Ok(m) = random_matching(grp, p, seed) else { continue };
                    let gg = GrGraph::assemble(grp.clone(), p, m).unwrap();
                    let name = format!("{:?} g={g} r={r} seed={seed}", grp.kind());
                    states += 1 + audit_run(&name, &gg)?;
                    instances += 1;
                }
            }
        }
    }
    let mut pairs = 0;
    for n in 1..=24 {
        let grp = Group::cyclic(n).unwrap();
        for g in 0..n {
            for r in 0..n {
                let ours = ScgPair::validate(&grp, g, r).ok().map(|p| (p.sum_doubles_zero, p.diff_doubles_zero, p.r_is_double_g));
                let want = scg_oracle(n, g, r);
                ensure(ours == want, || format!("Z{n} g={g} r={r}: {ours:?} vs {want:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{states} states over {instances} instances audited, {pairs} SCG pairs agree"))
}

fn determinism(cases: &[Case]) -> Outcome {
    let mut runs = 0;
    for c in cases.iter().step_by(5) {
        let regen = random_matching(&c.gg.group, c.gg.pair, c.seed).map_err(|e| e.to_string())?;
        let again = GrGraph::assemble(c.gg.group.clone(), c.gg.pair, regen).unwrap();
        let (ia, ib) = (format_instance(&Instance::Gr(c.gg.clone())), format_instance(&Instance::Gr(again.clone())));
        ensure(ia == ib, || format!("{}: instance differs", c.name))?;
        let a = decompose(&c.gg).map_err(|e| e.to_string())?;
        let b = decompose(&again).map_err(|e| e.to_string())?;
        ensure(format_decomposition(&a.decomposition) == format_decomposition(&b.decomposition), || {
            format!("{}: decomposition differs", c.name)
        })?;
        ensure(format_trace(&a.trace) == format_trace(&b.trace), || format!("{}: trace differs", c.name))?;
        runs += 1;
    }
    Ok(format!("{runs} instances byte-identical on rerun"))
}

fn main() -> ExitCode {
    let cases = corpus();
    let criteria: [Criterion; 7] = [
        ("k44-golden", Box::new(k44_golden)),
        ("powers-of-cycles", Box::new(powers_of_cycles)),
        ("complete-graphs", Box::new(complete_graphs)),
        ("engine-corpus", Box::new(|| engine_corpus(&cases))),
        ("oracle-equivalence", Box::new(|| oracle_equivalence(&cases))),
        ("invariant-suites", Box::new(invariant_suites)),
        ("determinism", Box::new(|| determinism(&cases))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let wall = start.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg}) [{wall:.2}s]", i + 1),
            Err(msg) => {
                println!("criterion {} {name}: FAIL ({msg}) [{wall:.2}s]", i + 1);
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
