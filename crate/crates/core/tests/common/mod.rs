#![allow(dead_code)]

use pathdecomp::cayley::{random_matching, GrGraph};
use pathdecomp::group::{Group, ScgPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Regime {
    /// `2g + 2r != 0`, `r != 2g`
    General,
    /// `r = 2g`
    DoubleG,
    /// `2g + 2r = 0`, `2g - 2r != 0`
    SignFlip,
    /// `2g + 2r = 0 = 2g - 2r`
    BothZero,
}

pub fn regime(p: &ScgPair) -> Regime {
    match (p.sum_doubles_zero, p.diff_doubles_zero) {
        (true, true) => Regime::BothZero,
        (true, false) => Regime::SignFlip,
        _ if p.r_is_double_g => Regime::DoubleG,
        _ => Regime::General,
    }
}

#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub regime: Regime,
    pub seed: u64,
    pub gg: GrGraph,
}

fn groups() -> Vec<(String, Group)> {
    let mut out: Vec<(String, Group)> =
        (6..=200).step_by(2).map(|n| (format!("Z{n}"), Group::cyclic(n).unwrap())).collect();
    for m in [[4, 2], [4, 4], [6, 2], [8, 2], [10, 2], [6, 4], [8, 4], [12, 2], [6, 6], [8, 8]] {
        out.push((format!("Z{}xZ{}", m[0], m[1]), Group::product(&m).unwrap()));
    }
    out.push(("Z2xZ2xZ4".into(), Group::product(&[2, 2, 4]).unwrap()));
    out
}

/// Seeded instances over cyclic groups of even order up to 200 and small products: for each
/// group, the first valid pair of every regime it admits, with two matchings each.
pub fn corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for (gname, grp) in groups() {
        let mut taken: Vec<Regime> = Vec::new();
        for g in grp.elements() {
            for r in grp.elements() {
                let Ok(p) = ScgPair::validate(&grp, g, r) else { continue };
                let reg = regime(&p);
                if taken.contains(&reg) {
                    continue;
                }
                let mut any = false;
                for seed in 0..2u64 {
                    let Ok(m) = random_matching(&grp, p, seed) else { continue };
                    let gg = GrGraph::assemble(grp.clone(), p, m).unwrap();
                    let name = format!("{gname} g={} r={} seed={seed}", grp.format_element(g), grp.format_element(r));
                    out.push(Case { name, regime: reg, seed, gg });
                    any = true;
                }
                if any {
                    taken.push(reg);
                }
            }
        }
    }
    out
}
