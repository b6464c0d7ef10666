use serde::{Deserialize, Serialize};

use super::{Elem, Obj, Quantaloid};
use crate::error::{Error, Result};
use crate::report::Report;

/// A family `d_A ∈ Q(A,A)`, one element per object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualizingFamily {
    pub d: Vec<Elem>,
}

impl DualizingFamily {
    pub fn new(d: Vec<Elem>) -> Self {
        Self { d }
    }

    /// Uses the bottom of every `Q(A,A)`.
    pub fn bottoms(q: &Quantaloid) -> Self {
        Self::new(q.objects().map(|a| q.bottom(a, a)).collect())
    }

    #[inline]
    pub fn at(&self, a: Obj) -> Elem {
        self.d[a.idx()]
    }

    pub fn check_structure(&self, q: &Quantaloid) -> Result<()> {
        if self.d.len() != q.n_objects() {
            return Err(Error::Structural(format!(
                "dualizing family has {} entries for {} objects",
                self.d.len(),
                q.n_objects()
            )));
        }
        for a in q.objects() {
            if self.at(a).idx() >= q.hom(a, a).len() {
                return Err(Error::Structural(format!(
                    "d_{} outside its carrier",
                    q.object_name(a)
                )));
            }
        }
        Ok(())
    }

    /// `¬f = d_A↙f ∈ Q(b,a)` for `f ∈ Q(a,b)`.
    #[inline]
    pub fn neg(&self, q: &Quantaloid, a: Obj, b: Obj, f: Elem) -> Elem {
        q.left_impl(a, b, a, self.at(a), f)
    }

    /// Cyclic and dualizing laws over every arrow.
    pub fn validate(&self, q: &Quantaloid) -> Report {
        let mut r = Report::new();
        if let Err(e) = self.check_structure(q) {
            r.push("structure", e.to_string());
            return r;
        }
        for a in q.objects() {
            for b in q.objects() {
                let (da, db) = (self.at(a), self.at(b));
                for f in q.hom(a, b).elems() {
                    let w = || format!("f={} in Q({},{})", q.label(a, b, f), q.object_name(a), q.object_name(b));
                    let l = q.left_impl(a, b, a, da, f);
                    let rr = q.right_impl(a, b, b, f, db);
                    r.check(l == rr, "cyclic", w);
                    r.check(q.right_impl(b, a, a, l, da) == f, "dualizing (left)", w);
                    r.check(q.left_impl(b, a, b, db, rr) == f, "dualizing (right)", w);
                }
            }
        }
        r
    }
}
