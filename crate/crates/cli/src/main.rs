use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use pathdecomp::cayley::{random_matching, GrGraph};
use pathdecomp::engine::{decompose, format_trace, Route};
use pathdecomp::graph::{Decomposition, Graph, Matching};
use pathdecomp::group::{Group, ScgPair};
use pathdecomp::io::{format_decomposition, format_instance, parse_decomposition, parse_instance, Instance};
use pathdecomp::power::{decompose_complete, decompose_power_cycle, PowerCycleInstance};
use pathdecomp::verify::{brute_force_p_l, verify_decomposition, BruteOutcome};

/// Exit codes.
const VERIFY_FAIL: u8 = 1;
const INPUT: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Debug)]
struct Fail {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Fail {
    Fail { code, msg: msg.into() }
}

type Res<T> = Result<T, Fail>;

#[derive(Parser)]
#[command(name = "pathdecomp", version, about = "Path decompositions of odd-regular graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a {g,r}-graph instance with a seeded random matching
    Gen {
        /// `cyclic:N` or `product:M1,M2,...`
        #[arg(long)]
        group: String,
        /// Green generator (integer or comma-joined coordinates)
        #[arg(long)]
        g: String,
        /// Red generator
        #[arg(long)]
        r: String,
        #[arg(long, env = "PD_SEED", default_value_t = 0)]
        seed: u64,
        /// Output file, stdout if absent
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Decompose one or more instances into paths
    Decompose {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Output file for a single input, stdout if absent
        #[arg(short, long, conflicts_with = "out_dir")]
        out: Option<PathBuf>,
        /// Exchange trace for a single input
        #[arg(long, conflicts_with = "out_dir")]
        trace: Option<PathBuf>,
        /// Batch mode: writes `<stem>.paths` and `<stem>.trace` per input
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a decomposition against an instance
    Verify {
        instance: PathBuf,
        decomposition: PathBuf,
        /// Also require middle edges to enumerate the matching
        #[arg(long)]
        m_centered: bool,
    },
    /// Generate a power-of-cycle instance
    Power {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, env = "PD_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Hamilton path decomposition of K_{L+1} for odd L
    Complete {
        l: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for a decomposition
    Oracle {
        instance: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn write_out(out: Option<&Path>, text: &str) -> Res<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| fail(INPUT, format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| fail(INPUT, e.to_string())),
    }
}

fn read(p: &Path) -> Res<String> {
    fs::read_to_string(p).map_err(|e| fail(INPUT, format!("{}: {e}", p.display())))
}

fn load_instance(p: &Path) -> Res<Instance> {
    parse_instance(&read(p)?).map_err(|e| fail(INPUT, format!("{}: {e}", p.display())))
}

fn parse_group(spec: &str) -> Res<Group> {
    let bad = || fail(INPUT, format!("bad group `{spec}`, expected cyclic:N or product:M1,M2"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let nums: Vec<usize> = rest.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let g = match (kind, nums.as_slice()) {
        ("cyclic", [n]) => Group::cyclic(*n),
        ("product", ms) => Group::product(ms),
        _ => return Err(bad()),
    };
    g.map_err(|e| fail(INPUT, e.to_string()))
}

fn cmd_gen(group: &str, g: &str, r: &str, seed: u64, out: Option<&Path>) -> Res<()> {
    let grp = parse_group(group)?;
    let elem = |s: &str| grp.parse_element(s).map_err(|e| fail(INPUT, e.to_string()));
    let pair = ScgPair::validate(&grp, elem(g)?, elem(r)?).map_err(|e| fail(INPUT, e.to_string()))?;
    let m = random_matching(&grp, pair, seed).map_err(|e| fail(INPUT, e.to_string()))?;
    let gg = GrGraph::assemble(grp, pair, m).map_err(|e| fail(INTERNAL, e.to_string()))?;
    write_out(out, &format_instance(&Instance::Gr(gg)))
}

/// Graph, path length and matching an instance describes.
fn host(inst: &Instance) -> (Graph, usize, Matching) {
    match inst {
        Instance::Gr(gg) => (gg.graph.clone(), 5, gg.matching.clone()),
        Instance::Power(p) => (p.graph(), 2 * p.k + 1, p.matching.clone()),
    }
}

struct Solved {
    decomposition: Decomposition,
    route: Route,
    trace: String,
    rewrites: usize,
}

fn solve(inst: &Instance) -> Res<Solved> {
    match inst {
        Instance::Gr(gg) => {
            let o = decompose(gg).map_err(|e| fail(INTERNAL, e.to_string()))?;
            let rewrites = o.trace.len();
            Ok(Solved { decomposition: o.decomposition, route: o.route, trace: format_trace(&o.trace), rewrites })
        }
        Instance::Power(p) => {
            let d = decompose_power_cycle(p).map_err(|e| fail(INTERNAL, e.to_string()))?;
            let report = verify_decomposition(&p.graph(), &d, 2 * p.k + 1, Some(&p.matching));
            if !report.ok() {
                return Err(fail(INTERNAL, format!("verifier rejected output:\n{report}")));
            }
            Ok(Solved { decomposition: d, route: Route::Power, trace: String::new(), rewrites: 0 })
        }
    }
}

fn decompose_one(input: &Path, out: Option<&Path>, trace: Option<&Path>) -> Res<String> {
    let s = solve(&load_instance(input)?)?;
    write_out(out, &format_decomposition(&s.decomposition))?;
    if let Some(t) = trace {
        write_out(Some(t), &s.trace)?;
    }
    Ok(format!("{}\troute {}\trewrites {}", input.display(), s.route, s.rewrites))
}

fn cmd_decompose(inputs: &[PathBuf], out: Option<&Path>, trace: Option<&Path>, out_dir: Option<&Path>, jobs: usize) -> Res<()> {
    let Some(dir) = out_dir else {
        if inputs.len() > 1 {
            return Err(fail(INPUT, "several inputs need --out-dir"));
        }
        let line = decompose_one(&inputs[0], out, trace)?;
        if out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
        return Ok(());
    };
    fs::create_dir_all(dir).map_err(|e| fail(INPUT, format!("{}: {e}", dir.display())))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| fail(INTERNAL, e.to_string()))?;
    let results: Vec<Res<String>> = pool.install(|| {
        inputs
            .par_iter()
            .map(|input| {
                let stem = input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let paths = dir.join(format!("{stem}.paths"));
                let trace = dir.join(format!("{stem}.trace"));
                decompose_one(input, Some(&paths), Some(&trace))
            })
            .collect()
    });
    let mut worst = None::<Fail>;
    for r in results {
        match r {
            Ok(line) => println!("{line}"),
            Err(f) => {
                eprintln!("error: {}", f.msg);
                if worst.as_ref().is_none_or(|w| f.code > w.code) {
                    worst = Some(f);
                }
            }
        }
    }
    match worst {
        Some(f) => Err(fail(f.code, "batch had failures")),
        None => Ok(()),
    }
}

fn cmd_verify(instance: &Path, decomposition: &Path, m_centered: bool) -> Res<()> {
    let inst = load_instance(instance)?;
    let d = parse_decomposition(&read(decomposition)?).map_err(|e| fail(INPUT, format!("{}: {e}", decomposition.display())))?;
    let (g, l, m) = host(&inst);
    let report = verify_decomposition(&g, &d, l, m_centered.then_some(&m));
    print!("{report}");
    if report.ok() {
        Ok(())
    } else {
        Err(fail(VERIFY_FAIL, "verification failed"))
    }
}

fn cmd_power(n: usize, k: usize, seed: u64, out: Option<&Path>) -> Res<()> {
    let p = PowerCycleInstance::random(n, k, seed).map_err(|e| fail(INPUT, e.to_string()))?;
    write_out(out, &format_instance(&Instance::Power(p)))
}

fn cmd_complete(l: usize, out: Option<&Path>) -> Res<()> {
    let d = decompose_complete(l).map_err(|e| fail(INPUT, e.to_string()))?;
    let n = l + 1;
    let g = Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).map_err(|e| fail(INTERNAL, e.to_string()))?;
    let report = verify_decomposition(&g, &d, l, None);
    if !report.ok() {
        return Err(fail(INTERNAL, format!("verifier rejected output:\n{report}")));
    }
    write_out(out, &format_decomposition(&d))
}

fn cmd_oracle(instance: &Path, budget: u64, out: Option<&Path>) -> Res<()> {
    let (g, l, _) = host(&load_instance(instance)?);
    match brute_force_p_l(&g, l, budget).map_err(|e| fail(INPUT, e.to_string()))? {
        BruteOutcome::Found(d) => {
            let report = verify_decomposition(&g, &d, l, None);
            if !report.ok() {
                return Err(fail(INTERNAL, format!("verifier rejected oracle output:\n{report}")));
            }
            write_out(out, &format_decomposition(&d))
        }
        BruteOutcome::None => Err(fail(VERIFY_FAIL, "no decomposition exists")),
        BruteOutcome::Budget => Err(fail(VERIFY_FAIL, format!("search budget of {budget} nodes exhausted"))),
    }
}

fn run(cli: Cli) -> Res<()> {
    match cli.cmd {
        Cmd::Gen { group, g, r, seed, out } => cmd_gen(&group, &g, &r, seed, out.as_deref()),
        Cmd::Decompose { inputs, out, trace, out_dir, jobs } => {
            cmd_decompose(&inputs, out.as_deref(), trace.as_deref(), out_dir.as_deref(), jobs)
        }
        Cmd::Verify { instance, decomposition, m_centered } => cmd_verify(&instance, &decomposition, m_centered),
        Cmd::Power { n, k, seed, out } => cmd_power(n, k, seed, out.as_deref()),
        Cmd::Complete { l, out } => cmd_complete(l, out.as_deref()),
        Cmd::Oracle { instance, budget, out } => cmd_oracle(&instance, budget, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
