//! Dissolving A-chains and the open chain of an admissible decomposition.

use crate::graph::Vertex;

use super::chains::{Chain, ChainKind, OpenChain};
use super::classify::Tag;
use super::{EngineError, EngineState, Want};

impl EngineState {
    pub(crate) fn phase2_step(&mut self) -> Result<bool, EngineError> {
        if self.tau() == 0 {
            return Ok(false);
        }
        let s = self.chains()?;
        if let Some(ch) = s.chains.iter().find(|c| c.kind() == ChainKind::Type1) {
            self.dissolve_type1(ch)?;
        } else if let Some(ch) = s.chains.iter().find(|c| c.kind() == ChainKind::Type2) {
            self.dissolve_type2(ch)?;
        } else if let Some(ch) = s.chains.iter().find(|c| c.len() <= 3) {
            if ch.len() < 3 {
                return Err(EngineError::ParallelEdge(self.dump()));
            }
            self.dissolve_short(ch)?;
        } else if let Some(open) = &s.open {
            self.shorten_open(open)?;
        } else if let Some(ch) = s.chains.first() {
            self.open_chain(ch)?;
        } else {
            return Err(self.no_exchange(format!("tau = {} but no chain found", self.tau())));
        }
        Ok(true)
    }

    fn dissolve_type1(&mut self, ch: &Chain) -> Result<(), EngineError> {
        let s = ch.len();
        let x: Vec<[Vertex; 6]> = ch.members.iter().map(|&t| self.seq(t)).collect();
        let repl: Vec<(usize, Vec<Vertex>)> = (0..s)
            .map(|j| {
                let (a, n) = (x[j], x[(j + 1) % s]);
                (ch.members[j], vec![n[2], a[3], a[4], a[1], a[2], n[0]])
            })
            .collect();
        self.apply("T.type1", &repl, &vec![Want::Path; s])
    }

    fn dissolve_type2(&mut self, ch: &Chain) -> Result<(), EngineError> {
        let s = ch.len();
        let x: Vec<[Vertex; 6]> = ch.members.iter().map(|&t| self.seq(t)).collect();
        let repl: Vec<(usize, Vec<Vertex>)> = (0..s)
            .map(|j| {
                let (a, p) = (x[j], x[(j + s - 1) % s]);
                (ch.members[j], vec![a[0], a[1], a[2], a[3], a[4], p[4]])
            })
            .collect();
        self.apply("T.type2", &repl, &vec![Want::Path; s])
    }

    /// Mixed chain of three elements.
    fn dissolve_short(&mut self, ch: &Chain) -> Result<(), EngineError> {
        let Some(j) = (0..3).find(|&j| ch.link(j + 2) == 2 && ch.link(j) == 1) else {
            return Err(self.no_exchange(format!("mixed chain {:?} without a 2-then-1 turn", ch.members)));
        };
        let (t1, t2, t3) = (ch.at(j), ch.at(j + 1), ch.at(j + 2));
        let (a, b, c) = (self.seq(t1), self.seq(t2), self.seq(t3));
        let repl = if ch.link(j + 1) == 1 {
            [
                (t1, vec![a[0], a[1], a[2], a[3], a[4], c[1]]),
                (t2, vec![b[0], b[1], b[2], b[4], b[3], c[2]]),
                (t3, vec![c[0], c[1], c[4], c[3], c[2], a[2]]),
            ]
        } else {
            [
                (t1, vec![a[0], a[1], a[2], a[4], a[3], b[5]]),
                (t2, vec![b[0], b[1], b[4], b[3], b[2], c[2]]),
                (t3, vec![c[0], c[1], c[2], c[3], c[4], b[1]]),
            ]
        };
        self.apply("T.short", &repl, &[Want::Path; 3])
    }

    fn shorten_open(&mut self, open: &OpenChain) -> Result<(), EngineError> {
        let t0 = open.members[0];
        let a = self.seq(t0);
        if open.members.len() == 1 || open.links[0] == 2 {
            let Some((_, tu)) = self.hanging_holder(a[3], t0) else {
                return Err(self.no_exchange(format!("no hanging edge at cv1 {} of free element {t0}", a[3])));
            };
            if open.members.get(1) == Some(&tu) {
                return Err(self.no_exchange(format!("hanging edge at cv1 of {t0} lies in its successor {tu}")));
            }
            let Some(u) = self.oriented(tu, a[3]) else {
                return Err(self.no_exchange(format!("element {tu} does not pass through {} second", a[3])));
            };
            return self.apply(
                "T.open.head",
                &[(t0, vec![a[0], a[1], a[2], a[4], a[3], u[0]]), (tu, vec![a[2], u[1], u[2], u[3], u[4], u[5]])],
                &[Want::Is(Tag::C), Want::PathOrA],
            );
        }
        let t1 = open.members[1];
        let b = self.seq(t1);
        if open.members.len() == 2 {
            let tc = open.exceptional;
            let c = self.seq(tc);
            return self.apply(
                "T.open.exc",
                &[
                    (t0, vec![a[0], a[1], a[2], a[4], a[3], b[2]]),
                    (t1, vec![b[1], b[4], b[3], b[2], c[2], b[0]]),
                    (tc, vec![c[0], c[1], b[1], c[3], c[4], c[5]]),
                ],
                &[Want::Path; 3],
            );
        }
        let t2 = open.members[2];
        let c = self.seq(t2);
        let t0_new = vec![a[0], a[1], a[2], a[4], a[3], b[2]];
        if open.links[1] == 1 {
            self.apply(
                "T.open.cv1",
                &[
                    (t0, t0_new),
                    (t1, vec![b[0], b[1], b[4], b[3], b[2], c[0]]),
                    (t2, vec![b[1], c[1], c[2], c[3], c[4], c[2]]),
                ],
                &[Want::Path, Want::Path, Want::Is(Tag::A)],
            )
        } else {
            self.apply(
                "T.open.cv2",
                &[
                    (t0, t0_new),
                    (t1, vec![b[0], b[1], b[4], b[3], b[2], c[2]]),
                    (t2, vec![c[0], c[1], c[2], c[3], c[4], b[1]]),
                ],
                &[Want::Path; 3],
            )
        }
    }

    /// Mixed chain of at least four elements, cut open at a 2-then-1 turn.
    fn open_chain(&mut self, ch: &Chain) -> Result<(), EngineError> {
        let s = ch.len();
        let Some(j) = (0..s).find(|&j| ch.link(j) == 2 && ch.link(j + 1) == 1) else {
            return Err(self.no_exchange(format!("chain {:?} without a 2-then-1 turn", ch.members)));
        };
        let (t1, t2, t3) = (ch.at(j + 1), ch.at(j + 2), ch.at(j + 3));
        let (b, c, d) = (self.seq(t1), self.seq(t2), self.seq(t3));
        let t1_new = vec![b[0], b[1], b[2], b[4], b[3], c[2]];
        if ch.link(j + 2) == 1 {
            self.apply(
                "T.open.create",
                &[
                    (t1, t1_new),
                    (t2, vec![c[0], c[1], c[4], c[3], c[2], d[0]]),
                    (t3, vec![c[1], d[1], d[2], d[3], d[4], d[2]]),
                ],
                &[Want::Is(Tag::C), Want::Path, Want::Is(Tag::A)],
            )
        } else {
            self.apply(
                "T.open.create",
                &[
                    (t1, t1_new),
                    (t2, vec![c[0], c[1], c[4], c[3], c[2], d[2]]),
                    (t3, vec![d[0], d[1], d[2], d[3], d[4], c[1]]),
                ],
                &[Want::Is(Tag::C), Want::Path, Want::Path],
            )
        }
    }
}
