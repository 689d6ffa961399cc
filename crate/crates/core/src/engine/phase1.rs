//! Removal of free type-A elements from a complete decomposition.

use crate::graph::Vertex;

use super::chains::free_elements;
use super::classify::Tag;
use super::{EngineError, EngineState, Want};

impl EngineState {
    pub(crate) fn seq(&self, t: usize) -> [Vertex; 6] {
        self.classes[t].seq
    }

    /// The element's writing reversed when `at` is not its second vertex.
    pub(crate) fn oriented(&self, t: usize, at: Vertex) -> Option<[Vertex; 6]> {
        let mut s = self.seq(t);
        if s[1] == at {
            return Some(s);
        }
        s.reverse();
        (s[1] == at).then_some(s)
    }

    pub(crate) fn no_exchange(&self, context: String) -> EngineError {
        EngineError::NoExchange { context, dump: self.dump() }
    }

    /// Lowest hanging edge at `u` held by an element other than `not`.
    pub(crate) fn hanging_holder(&self, u: Vertex, not: usize) -> Option<(Vertex, usize)> {
        self.hanging_edges(u)
            .into_iter()
            .find(|&(_, t)| t != not)
            .map(|((x, y), t)| (if x == u { y } else { x }, t))
    }

    pub(crate) fn phase1_step(&mut self) -> Result<bool, EngineError> {
        let Some(&t1) = free_elements(&self.classes).first() else {
            return Ok(false);
        };
        let a = self.seq(t1);
        let Some((u, t2)) = self.hanging_holder(a[3], t1) else {
            return Err(self.no_exchange(format!("no hanging edge at cv1 {} of free element {t1}", a[3])));
        };
        if u != self.gg.cayley.red_out(a[3]) {
            return Err(self.no_exchange(format!(
                "hanging edge {}-{u} at cv1 of free element {t1} is not the red out edge",
                a[3]
            )));
        }
        let b = self.seq(t2);
        match self.classes[t2].tag {
            Tag::B => {
                let mut b = b;
                if b[4] != a[3] {
                    b.reverse();
                }
                self.apply(
                    "L.AB",
                    &[(t1, vec![a[0], a[1], a[2], a[4], a[3], b[5]]), (t2, vec![b[0], b[1], b[2], b[3], b[4], a[2]])],
                    &[Want::Is(Tag::C), Want::Is(Tag::B)],
                )?;
            }
            Tag::C if b[1] == a[3] => {
                self.apply(
                    "L.AC",
                    &[(t1, vec![a[0], a[1], a[2], a[4], a[3], b[0]]), (t2, vec![a[2], b[1], b[2], b[3], b[4], b[5]])],
                    &[Want::Is(Tag::C), Want::Is(Tag::C)],
                )?;
            }
            Tag::A if b[1] == a[3] => {
                self.apply(
                    "L.AA",
                    &[(t1, vec![a[0], a[1], a[2], a[4], a[3], b[0]]), (t2, vec![a[2], b[1], b[2], b[3], b[4], b[2]])],
                    &[Want::Is(Tag::C), Want::Is(Tag::A)],
                )?;
            }
            Tag::A if b[4] == a[3] => self.phase1_chained(t1, t2)?,
            tag => {
                return Err(self.no_exchange(format!(
                    "free element {t1}: red out edge {}-{u} held by {t2} of type {tag} in no matching position",
                    a[3]
                )))
            }
        }
        Ok(true)
    }

    /// `T2` is of type A with `tr(T2) = cv1(T1)`; a third element is involved.
    fn phase1_chained(&mut self, t1: usize, t2: usize) -> Result<(), EngineError> {
        let a = self.seq(t1);
        let b = self.seq(t2);
        if b[1] != a[2] {
            return Err(self.no_exchange(format!("elements {t1}, {t2}: aux of {t2} is not cv2 of {t1}")));
        }
        let Some((_, t3)) = self.hanging_holder(b[2], t2) else {
            return Err(self.no_exchange(format!("no hanging edge at cv2 {} of {t2}", b[2])));
        };
        if t3 == t1 {
            return Err(self.no_exchange(format!("hanging edge at cv2 of {t2} lies in {t1}")));
        }
        let c = self.seq(t3);
        let tag = self.classes[t3].tag;
        let (rule, t3_new, w3) = match tag {
            Tag::A if c[4] == b[2] => {
                return self.apply(
                    "L.AAA",
                    &[
                        (t1, vec![a[0], a[1], a[2], a[4], a[3], b[5]]),
                        (t2, vec![b[0], b[1], b[4], b[3], b[2], c[2]]),
                        (t3, vec![b[1], c[4], c[3], c[2], c[1], c[0]]),
                    ],
                    &[Want::Is(Tag::C), Want::Is(Tag::D), Want::Is(Tag::B)],
                );
            }
            Tag::A if c[1] == b[2] => ("L.AAA.aux", c, Tag::A),
            Tag::B => match self.oriented(t3, b[2]) {
                Some(c) => ("L.AAB", c, Tag::B),
                None => return Err(self.no_exchange(format!("element {t3} of type B does not meet {}", b[2]))),
            },
            Tag::C if c[1] == b[2] => ("L.AAC", c, Tag::C),
            _ => {
                return Err(self.no_exchange(format!(
                    "hanging edge at cv2 {} of {t2} held by {t3} of type {tag} in no matching position",
                    b[2]
                )))
            }
        };
        let c = t3_new;
        self.apply(
            rule,
            &[
                (t1, vec![a[0], a[1], a[2], a[4], a[3], b[2]]),
                (t2, vec![b[0], b[1], b[4], b[3], b[2], c[0]]),
                (t3, vec![b[1], c[1], c[2], c[3], c[4], c[5]]),
            ],
            &[Want::Is(Tag::C), Want::Is(Tag::D), Want::Is(w3)],
        )
    }
}
