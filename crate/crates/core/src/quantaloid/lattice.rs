use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

/// Index of an element inside one hom-lattice carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Elem(pub u16);

impl Elem {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A finite lattice given by explicit tables.
///
/// Finiteness makes it complete: arbitrary joins and meets are folds of the
/// binary tables starting from `bottom` and `top` respectively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    top: Elem,
    bottom: Elem,
}

impl HomLattice {
    /// Builds a lattice from raw tables, checking only that they are total and
    /// refer to carrier elements. Use [`HomLattice::validate`] for the laws.
    pub fn from_tables(
        labels: Vec<String>,
        leq: Vec<bool>,
        join: Vec<Elem>,
        meet: Vec<Elem>,
        top: Elem,
        bottom: Elem,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structural("empty hom carrier".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::Structural(format!("carrier of size {n} is too large")));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(',') || l.contains('|') {
                return Err(Error::Structural(format!(
                    "element label `{l}` must be non-empty and free of ',' and '|'"
                )));
            }
            if labels[..i].contains(l) {
                return Err(Error::Structural(format!("duplicate element `{l}`")));
            }
        }
        if leq.len() != n * n || join.len() != n * n || meet.len() != n * n {
            return Err(Error::Structural(format!(
                "lattice tables must have {} entries",
                n * n
            )));
        }
        let in_range = |e: &Elem| e.idx() < n;
        if !join.iter().all(in_range) || !meet.iter().all(in_range) {
            return Err(Error::Structural("table entry outside carrier".into()));
        }
        if !in_range(&top) || !in_range(&bottom) {
            return Err(Error::Structural("top/bottom outside carrier".into()));
        }
        Ok(Self {
            labels,
            leq,
            join,
            meet,
            top,
            bottom,
        })
    }

    /// Derives joins, meets, top and bottom from a partial order.
    /// Fails when the order is not a lattice.
    pub fn from_order(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n * n {
            return Err(Error::Structural("order table has the wrong size".into()));
        }
        if n == 0 {
            return Err(Error::Structural("empty hom carrier".into()));
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        let least = |cands: &[usize]| -> Option<usize> {
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| le(c, d)))
        };
        let greatest = |cands: &[usize]| -> Option<usize> {
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| le(d, c)))
        };
        let all: Vec<usize> = (0..n).collect();
        let top = greatest(&all).ok_or_else(|| Error::Structural("no top element".into()))?;
        let bottom = least(&all).ok_or_else(|| Error::Structural("no bottom element".into()))?;
        let mut join = Vec::with_capacity(n * n);
        let mut meet = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let ub: Vec<usize> = (0..n).filter(|&c| le(a, c) && le(b, c)).collect();
                let lb: Vec<usize> = (0..n).filter(|&c| le(c, a) && le(c, b)).collect();
                let j = least(&ub)
                    .ok_or_else(|| Error::Structural(format!("no join of {a} and {b}")))?;
                let m = greatest(&lb)
                    .ok_or_else(|| Error::Structural(format!("no meet of {a} and {b}")))?;
                join.push(Elem(j as u16));
                meet.push(Elem(m as u16));
            }
        }
        Self::from_tables(
            labels,
            leq,
            join,
            meet,
            Elem(top as u16),
            Elem(bottom as u16),
        )
    }

    /// The chain `0 < 1 < ... < n-1` with the given labels.
    pub fn chain(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let leq = (0..n * n).map(|k| k / n <= k % n).collect();
        Self::from_order(labels, leq)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.labels[e.idx()]
    }

    pub fn find(&self, label: &str) -> Option<Elem> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| Elem(i as u16))
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.labels.len() as u16).map(Elem)
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.idx() * self.len() + b.idx()]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a.idx() * self.len() + b.idx()]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a.idx() * self.len() + b.idx()]
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    /// Order and lattice laws. `ctx` prefixes every witness.
    pub fn validate(&self, ctx: &str) -> Report {
        let mut r = Report::new();
        let n = self.len();
        let l = |e: Elem| self.label(e).to_string();
        for a in self.elems() {
            r.check(self.leq(a, a), "leq reflexive", || format!("{ctx}: {}", l(a)));
            for b in self.elems() {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    r.push("leq antisymmetric", format!("{ctx}: ({}, {})", l(a), l(b)));
                }
                for c in self.elems() {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        r.push(
                            "leq transitive",
                            format!("{ctx}: ({}, {}, {})", l(a), l(b), l(c)),
                        );
                    }
                }
                let j = self.join(a, b);
                let is_lub = self.leq(a, j)
                    && self.leq(b, j)
                    && self
                        .elems()
                        .all(|c| !(self.leq(a, c) && self.leq(b, c)) || self.leq(j, c));
                r.check(is_lub, "join is least upper bound", || {
                    format!("{ctx}: ({}, {}) -> {}", l(a), l(b), l(j))
                });
                let m = self.meet(a, b);
                let is_glb = self.leq(m, a)
                    && self.leq(m, b)
                    && self
                        .elems()
                        .all(|c| !(self.leq(c, a) && self.leq(c, b)) || self.leq(c, m));
                r.check(is_glb, "meet is greatest lower bound", || {
                    format!("{ctx}: ({}, {}) -> {}", l(a), l(b), l(m))
                });
            }
            r.check(self.leq(self.bottom, a), "bottom is least", || {
                format!("{ctx}: {}", l(a))
            });
            r.check(self.leq(a, self.top), "top is greatest", || {
                format!("{ctx}: {}", l(a))
            });
        }
        debug_assert_eq!(self.leq.len(), n * n);
        r
    }
}
