//! Finite groups with dense element indexing and simple commutative generator pairs.
//!
//! Every element is a dense index `0..n`, with the identity at index 0. Cyclic groups use
//! the residue, direct products of cyclic groups use mixed-radix coordinates (first
//! coordinate most significant), and explicit tables use the row index.

use std::fmt;

use thiserror::Error;

/// Dense element index.
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("modulus {0} in product must be positive")]
    BadModulus(usize),
    #[error("table has {rows} rows but order is {order}")]
    TableShape { order: usize, rows: usize },
    #[error("table row {row} has {len} entries, expected {order}")]
    RowShape { row: usize, len: usize, order: usize },
    #[error("closure violated: {a} + {b} = {value} is not an element")]
    Closure { a: Element, b: Element, value: usize },
    #[error("identity axiom violated: 0 + {x} = {left}, {x} + 0 = {right}")]
    Identity { x: Element, left: Element, right: Element },
    #[error("inverse axiom violated: {x} has no two-sided inverse")]
    Inverse { x: Element },
    #[error("associativity violated: ({a} + {b}) + {c} != {a} + ({b} + {c})")]
    Associativity { a: Element, b: Element, c: Element },
    #[error("cannot parse element `{0}`")]
    ParseElement(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic,
    Product(Vec<usize>),
    Table,
}

/// A finite group. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    order: usize,
    kind: GroupKind,
    /// Row-major Cayley table, only for `GroupKind::Table`.
    table: Vec<Element>,
    inverses: Vec<Element>,
}

impl Group {
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::EmptyGroup);
        }
        let inverses = (0..n).map(|x| (n - x) % n).collect();
        Ok(Group { order: n, kind: GroupKind::Cyclic, table: Vec::new(), inverses })
    }

    pub fn product(moduli: &[usize]) -> Result<Self, GroupError> {
        if moduli.is_empty() {
            return Err(GroupError::EmptyGroup);
        }
        if let Some(&m) = moduli.iter().find(|&&m| m == 0) {
            return Err(GroupError::BadModulus(m));
        }
        let order = moduli.iter().product();
        let mut g = Group {
            order,
            kind: GroupKind::Product(moduli.to_vec()),
            table: Vec::new(),
            inverses: Vec::new(),
        };
        g.inverses = (0..order)
            .map(|x| {
                let c: Vec<usize> = g.coords(x).iter().zip(moduli).map(|(&c, &m)| (m - c) % m).collect();
                g.from_coords(&c).expect("coordinates in range")
            })
            .collect();
        Ok(g)
    }

    /// Validates an explicit Cayley table. Identity must sit at index 0.
    pub fn from_table(n: usize, rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if rows.len() != n {
            return Err(GroupError::TableShape { order: n, rows: rows.len() });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::RowShape { row: i, len: row.len(), order: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::Closure { a: i, b: j, value: v });
                }
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * n + b];
        for x in 0..n {
            if at(0, x) != x || at(x, 0) != x {
                return Err(GroupError::Identity { x, left: at(0, x), right: at(x, 0) });
            }
        }
        let mut inverses = vec![0; n];
        for x in 0..n {
            match (0..n).find(|&y| at(x, y) == 0 && at(y, x) == 0) {
                Some(y) => inverses[x] = y,
                None => return Err(GroupError::Inverse { x }),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::Associativity { a, b, c });
                    }
                }
            }
        }
        Ok(Group { order: n, kind: GroupKind::Table, table, inverses })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        debug_assert!(a < self.order && b < self.order);
        match &self.kind {
            GroupKind::Cyclic => (a + b) % self.order,
            GroupKind::Product(moduli) => {
                // mixed radix, last coordinate least significant
                let mut out = 0;
                let mut place = 1;
                let (mut a, mut b) = (a, b);
                for &m in moduli.iter().rev() {
                    let s = (a % m + b % m) % m;
                    out += s * place;
                    place *= m;
                    a /= m;
                    b /= m;
                }
                out
            }
            GroupKind::Table => self.table[a * self.order + b],
        }
    }

    pub fn neg(&self, a: Element) -> Element {
        self.inverses[a]
    }

    /// `a - b`, i.e. `a + (-b)`.
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// `x + x`.
    pub fn double(&self, x: Element) -> Element {
        self.add(x, x)
    }

    pub fn is_element(&self, x: usize) -> bool {
        x < self.order
    }

    /// Coordinates of `x`: a single residue for cyclic and table groups.
    pub fn coords(&self, x: Element) -> Vec<usize> {
        match &self.kind {
            GroupKind::Product(moduli) => {
                let mut c = vec![0; moduli.len()];
                let mut rest = x;
                for (slot, &m) in c.iter_mut().zip(moduli).rev() {
                    *slot = rest % m;
                    rest /= m;
                }
                c
            }
            _ => vec![x],
        }
    }

    pub fn from_coords(&self, coords: &[usize]) -> Option<Element> {
        match &self.kind {
            GroupKind::Product(moduli) => {
                if coords.len() != moduli.len() {
                    return None;
                }
                let mut x = 0;
                for (&c, &m) in coords.iter().zip(moduli) {
                    if c >= m {
                        return None;
                    }
                    x = x * m + c;
                }
                Some(x)
            }
            _ => match coords {
                [x] if *x < self.order => Some(*x),
                _ => None,
            },
        }
    }

    /// Element syntax used in instance files: an integer, or comma-joined coordinates.
    pub fn format_element(&self, x: Element) -> String {
        self.coords(x).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_element(&self, s: &str) -> Result<Element, GroupError> {
        let coords: Result<Vec<usize>, _> = s.trim().split(',').map(|t| t.trim().parse::<usize>()).collect();
        let coords = coords.map_err(|_| GroupError::ParseElement(s.to_string()))?;
        self.from_coords(&coords).ok_or_else(|| GroupError::ParseElement(s.to_string()))
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }
}

/// Which of the three generator conditions failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScgViolation {
    #[error("element index out of range: {0}")]
    OutOfRange(usize),
    #[error("condition (a) violated: {equation}")]
    ZeroOrInvolution { equation: String },
    #[error("condition (b) violated: {equation}")]
    InverseOrEqual { equation: String },
    #[error("condition (c) violated: {equation}")]
    NotCommuting { equation: String },
}

impl ScgViolation {
    /// Condition label, `a`, `b` or `c`.
    pub fn condition(&self) -> Option<char> {
        match self {
            ScgViolation::OutOfRange(_) => None,
            ScgViolation::ZeroOrInvolution { .. } => Some('a'),
            ScgViolation::InverseOrEqual { .. } => Some('b'),
            ScgViolation::NotCommuting { .. } => Some('c'),
        }
    }
}

/// A validated simple commutative generator pair `{g, r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScgPair {
    pub g: Element,
    pub r: Element,
    /// `2g + 2r = 0`
    pub sum_doubles_zero: bool,
    /// `2g - 2r = 0`
    pub diff_doubles_zero: bool,
    /// `r = 2g`
    pub r_is_double_g: bool,
}

impl ScgPair {
    pub fn validate(group: &Group, g: Element, r: Element) -> Result<Self, ScgViolation> {
        for x in [g, r] {
            if !group.is_element(x) {
                return Err(ScgViolation::OutOfRange(x));
            }
        }
        let fmt = |x| group.format_element(x);
        let (g2, r2) = (group.double(g), group.double(r));
        let zero = group.identity();
        let checks = [(g, "g = 0"), (r, "r = 0"), (g2, "2g = 0"), (r2, "2r = 0")];
        if let Some((_, eq)) = checks.iter().find(|(x, _)| *x == zero) {
            return Err(ScgViolation::ZeroOrInvolution {
                equation: format!("{eq} (g = {}, r = {})", fmt(g), fmt(r)),
            });
        }
        if g == r {
            return Err(ScgViolation::InverseOrEqual { equation: format!("g = r = {}", fmt(g)) });
        }
        if g == group.neg(r) {
            return Err(ScgViolation::InverseOrEqual {
                equation: format!("r = -g (g = {}, r = {})", fmt(g), fmt(r)),
            });
        }
        let (gr, rg) = (group.add(g, r), group.add(r, g));
        if gr != rg {
            return Err(ScgViolation::NotCommuting {
                equation: format!("g + r = {} but r + g = {}", fmt(gr), fmt(rg)),
            });
        }
        Ok(ScgPair {
            g,
            r,
            sum_doubles_zero: group.add(g2, r2) == zero,
            diff_doubles_zero: group.sub(g2, r2) == zero,
            r_is_double_g: r == g2,
        })
    }

    /// The generating set `{g, -g, r, -r}`.
    pub fn generating_set(&self, group: &Group) -> [Element; 4] {
        [self.g, group.neg(self.g), self.r, group.neg(self.r)]
    }

    /// The pair `{g, -r}` over the same undirected Cayley graph.
    pub fn flip_red(&self, group: &Group) -> Result<Self, ScgViolation> {
        ScgPair::validate(group, self.g, group.neg(self.r))
    }
}

impl fmt::Display for ScgPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{g={}, r={}}}", self.g, self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]
    }

    #[test]
    fn cyclic_arithmetic() {
        let z12 = Group::cyclic(12).unwrap();
        assert_eq!(z12.add(5, 9), 2);
        let z1 = Group::cyclic(1).unwrap();
        assert_eq!(z1.elements().collect::<Vec<_>>(), vec![0]);
        assert_eq!(z1.add(0, 0), 0);
        assert_eq!(Group::cyclic(4).unwrap().neg(1), 3);
        assert_eq!(Group::cyclic(0), Err(GroupError::EmptyGroup));
    }

    #[test]
    fn product_arithmetic() {
        let g = Group::product(&[4, 2]).unwrap();
        let x = g.from_coords(&[3, 1]).unwrap();
        let y = g.from_coords(&[1, 1]).unwrap();
        assert_eq!(g.coords(g.add(x, y)), vec![0, 0]);
        assert_eq!(g.coords(g.identity()), vec![0, 0]);
        let h = Group::product(&[4, 4]).unwrap();
        let z = h.from_coords(&[1, 2]).unwrap();
        assert_eq!(h.coords(h.neg(z)), vec![3, 2]);
        assert_eq!(h.format_element(z), "1,2");
        assert_eq!(h.parse_element("1,2").unwrap(), z);
        assert!(h.parse_element("4,0").is_err());
        assert!(h.parse_element("1").is_err());
    }

    #[test]
    fn table_validation() {
        let k = Group::from_table(4, klein()).unwrap();
        assert_eq!(k.add(1, 2), 3);
        assert_eq!(k.neg(3), 3);

        let mut bad = klein();
        bad[0] = vec![1, 0, 3, 2];
        assert!(matches!(Group::from_table(4, bad), Err(GroupError::Identity { .. })));

        // identity 0; 1+1=2, 2+2=1, but 1+2=1: breaks associativity
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]];
        let err = Group::from_table(3, t).unwrap_err();
        assert!(
            matches!(err, GroupError::Associativity { .. } | GroupError::Inverse { .. }),
            "{err}"
        );

        // associativity witness with inverses present: a commutative loop that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(Group::from_table(5, t), Err(GroupError::Associativity { .. })));

        let missing_inverse = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(Group::from_table(2, missing_inverse), Err(GroupError::Inverse { x: 1 })));
        assert!(matches!(
            Group::from_table(2, vec![vec![0, 2], vec![1, 0]]),
            Err(GroupError::Closure { .. })
        ));
    }

    #[test]
    fn scg_examples() {
        let z12 = Group::cyclic(12).unwrap();
        let p = ScgPair::validate(&z12, 1, 3).unwrap();
        assert!(!p.sum_doubles_zero);
        assert!(!p.diff_doubles_zero);
        assert!(!p.r_is_double_g);
        assert_eq!(z12.sub(2, 6), 8);

        let z42 = Group::product(&[4, 2]).unwrap();
        let g = z42.from_coords(&[1, 0]).unwrap();
        let r = z42.from_coords(&[1, 1]).unwrap();
        let p = ScgPair::validate(&z42, g, r).unwrap();
        assert!(p.sum_doubles_zero && p.diff_doubles_zero);

        let err = ScgPair::validate(&z12, 3, 9).unwrap_err();
        assert_eq!(err.condition(), Some('b'));
        assert_eq!(ScgPair::validate(&z12, 6, 1).unwrap_err().condition(), Some('a'));
        assert!(ScgPair::validate(&z12, 2, 4).unwrap().r_is_double_g);
    }

    #[test]
    fn inverse_exhaustive_small() {
        for n in 1..=64 {
            let z = Group::cyclic(n).unwrap();
            for x in z.elements() {
                assert_eq!(z.add(x, z.neg(x)), 0);
            }
        }
        let p = Group::product(&[6, 4, 3]).unwrap();
        for x in p.elements() {
            assert_eq!(p.add(x, p.neg(x)), 0);
            assert_eq!(p.add(p.neg(x), x), 0);
        }
    }
}
