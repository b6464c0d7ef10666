//! Finite quantaloids: complete-lattice hom-objects, composition, units and
//! the two implications (residuals of pre- and post-composition).

mod builtin;
mod girard;
mod lattice;
mod laws;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

pub use builtin::{boolean, builtin_quantaloid, lukasiewicz, rel_like, Builtin};
pub use girard::DualizingFamily;
pub use lattice::{Elem, HomLattice};
pub use laws::{adjoint_arrow_identities, girard_identities, residuation_report};

/// Index of a quantaloid object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Obj(pub u16);

impl Obj {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// An arrow `value ∈ Q(src, dst)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QArrow {
    pub src: Obj,
    pub dst: Obj,
    pub value: Elem,
}

impl QArrow {
    pub fn new(src: Obj, dst: Obj, value: Elem) -> Self {
        Self { src, dst, value }
    }
}

/// Implication tables, filled on first use.
#[derive(Debug)]
struct Residuals {
    // (a, b, x): g ∈ Q(a,x), f ∈ Q(a,b) ↦ g↙f ∈ Q(b,x), indexed g * |Q(a,b)| + f
    left: Vec<Vec<Elem>>,
    // (a, b, x): f ∈ Q(a,b), g ∈ Q(x,b) ↦ f↘g ∈ Q(x,a), indexed f * |Q(x,b)| + g
    right: Vec<Vec<Elem>>,
}

/// A finite quantaloid stored as explicit tables.
///
/// Construction only checks that tables are total; the quantaloid laws are
/// checked by [`Quantaloid::validate`].
pub struct Quantaloid {
    objects: Vec<String>,
    homs: Vec<HomLattice>,
    // (a, b, c): g ∈ Q(b,c), f ∈ Q(a,b) ↦ g∘f, indexed g * |Q(a,b)| + f
    compose: Vec<Vec<Elem>>,
    units: Vec<Elem>,
    dualizing: Option<DualizingFamily>,
    residuals: OnceLock<Residuals>,
}

impl Clone for Quantaloid {
    fn clone(&self) -> Self {
        Self {
            objects: self.objects.clone(),
            homs: self.homs.clone(),
            compose: self.compose.clone(),
            units: self.units.clone(),
            dualizing: self.dualizing.clone(),
            residuals: OnceLock::new(),
        }
    }
}

impl PartialEq for Quantaloid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.homs == other.homs
            && self.compose == other.compose
            && self.units == other.units
            && self.dualizing == other.dualizing
    }
}

impl Eq for Quantaloid {}

impl fmt::Debug for Quantaloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quantaloid")
            .field("objects", &self.objects)
            .field("homs", &self.homs.len())
            .finish_non_exhaustive()
    }
}

impl Quantaloid {
    /// `homs[a * n + b]` is `Q(a,b)`; `compose[(a * n + b) * n + c]` is the
    /// table `g * |Q(a,b)| + f ↦ g∘f` for `f ∈ Q(a,b)`, `g ∈ Q(b,c)`.
    pub fn from_parts(
        objects: Vec<String>,
        homs: Vec<HomLattice>,
        compose: Vec<Vec<Elem>>,
        units: Vec<Elem>,
    ) -> Result<Self> {
        let n = objects.len();
        if n == 0 {
            return Err(Error::Structural("a quantaloid needs at least one object".into()));
        }
        if n > u16::MAX as usize {
            return Err(Error::Structural("too many objects".into()));
        }
        for (i, o) in objects.iter().enumerate() {
            if o.is_empty() || o.contains("->") || o.contains(',') {
                return Err(Error::Structural(format!("bad object id `{o}`")));
            }
            if objects[..i].contains(o) {
                return Err(Error::Structural(format!("duplicate object `{o}`")));
            }
        }
        if homs.len() != n * n {
            return Err(Error::Structural(format!("expected {} hom lattices", n * n)));
        }
        if compose.len() != n * n * n {
            return Err(Error::Structural(format!(
                "expected {} composition tables",
                n * n * n
            )));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = &compose[(a * n + b) * n + c];
                    let (ab, bc, ac) = (&homs[a * n + b], &homs[b * n + c], &homs[a * n + c]);
                    if t.len() != ab.len() * bc.len() {
                        return Err(Error::Structural(format!(
                            "composition table {}->{}->{} has {} entries, expected {}",
                            objects[a],
                            objects[b],
                            objects[c],
                            t.len(),
                            ab.len() * bc.len()
                        )));
                    }
                    if t.iter().any(|e| e.idx() >= ac.len()) {
                        return Err(Error::Structural(format!(
                            "composition table {}->{}->{} leaves Q({},{})",
                            objects[a], objects[b], objects[c], objects[a], objects[c]
                        )));
                    }
                }
            }
        }
        if units.len() != n {
            return Err(Error::Structural("one unit per object required".into()));
        }
        for (a, u) in units.iter().enumerate() {
            if u.idx() >= homs[a * n + a].len() {
                return Err(Error::Structural(format!(
                    "unit of {} outside its carrier",
                    objects[a]
                )));
            }
        }
        Ok(Self {
            objects,
            homs,
            compose,
            units,
            dualizing: None,
            residuals: OnceLock::new(),
        })
    }

    /// Attaches a dualizing family; only structural checks happen here.
    pub fn with_dualizing(mut self, family: DualizingFamily) -> Result<Self> {
        family.check_structure(&self)?;
        self.dualizing = Some(family);
        Ok(self)
    }

    pub fn dualizing(&self) -> Option<&DualizingFamily> {
        self.dualizing.as_ref()
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + Clone {
        (0..self.objects.len() as u16).map(Obj)
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, a: Obj) -> &str {
        &self.objects[a.idx()]
    }

    pub fn object(&self, name: &str) -> Result<Obj> {
        self.objects
            .iter()
            .position(|o| o == name)
            .map(|i| Obj(i as u16))
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    #[inline]
    pub fn hom(&self, a: Obj, b: Obj) -> &HomLattice {
        &self.homs[a.idx() * self.objects.len() + b.idx()]
    }

    #[inline]
    pub fn unit(&self, a: Obj) -> Elem {
        self.units[a.idx()]
    }

    pub(crate) fn compose_table(&self, a: Obj, b: Obj, c: Obj) -> &[Elem] {
        let n = self.objects.len();
        &self.compose[(a.idx() * n + b.idx()) * n + c.idx()]
    }

    pub(crate) fn compose_table_mut(&mut self, a: Obj, b: Obj, c: Obj) -> &mut Vec<Elem> {
        let n = self.objects.len();
        self.residuals = OnceLock::new();
        &mut self.compose[(a.idx() * n + b.idx()) * n + c.idx()]
    }

    /// Overwrites one composition entry. Intended for building deliberately
    /// broken fixtures; the result should be revalidated.
    pub fn set_compose(&mut self, a: Obj, b: Obj, c: Obj, g: Elem, f: Elem, v: Elem) -> Result<()> {
        let w = self.hom(a, b).len();
        if g.idx() >= self.hom(b, c).len() || f.idx() >= w || v.idx() >= self.hom(a, c).len() {
            return Err(Error::Structural("element outside carrier".into()));
        }
        self.compose_table_mut(a, b, c)[g.idx() * w + f.idx()] = v;
        Ok(())
    }

    /// `g∘f` for `f ∈ Q(a,b)`, `g ∈ Q(b,c)`.
    #[inline]
    pub fn comp(&self, a: Obj, b: Obj, c: Obj, g: Elem, f: Elem) -> Elem {
        let w = self.hom(a, b).len();
        self.compose_table(a, b, c)[g.idx() * w + f.idx()]
    }

    #[inline]
    pub fn leq(&self, a: Obj, b: Obj, x: Elem, y: Elem) -> bool {
        self.hom(a, b).leq(x, y)
    }

    #[inline]
    pub fn join(&self, a: Obj, b: Obj, x: Elem, y: Elem) -> Elem {
        self.hom(a, b).join(x, y)
    }

    #[inline]
    pub fn meet(&self, a: Obj, b: Obj, x: Elem, y: Elem) -> Elem {
        self.hom(a, b).meet(x, y)
    }

    pub fn top(&self, a: Obj, b: Obj) -> Elem {
        self.hom(a, b).top()
    }

    pub fn bottom(&self, a: Obj, b: Obj) -> Elem {
        self.hom(a, b).bottom()
    }

    pub fn label(&self, a: Obj, b: Obj, e: Elem) -> &str {
        self.hom(a, b).label(e)
    }

    /// `g↙f = ⋁{h ∈ Q(b,x) : h∘f ≤ g}` by a scan of the carrier.
    pub fn left_impl_by_scan(&self, a: Obj, b: Obj, x: Obj, g: Elem, f: Elem) -> Elem {
        let hbx = self.hom(b, x);
        let hax = self.hom(a, x);
        hbx.join_all(hbx.elems().filter(|&h| hax.leq(self.comp(a, b, x, h, f), g)))
    }

    /// `f↘g = ⋁{h ∈ Q(x,a) : f∘h ≤ g}` by a scan of the carrier.
    pub fn right_impl_by_scan(&self, a: Obj, b: Obj, x: Obj, f: Elem, g: Elem) -> Elem {
        let hxa = self.hom(x, a);
        let hxb = self.hom(x, b);
        hxa.join_all(hxa.elems().filter(|&h| hxb.leq(self.comp(x, a, b, f, h), g)))
    }

    fn residuals(&self) -> &Residuals {
        self.residuals.get_or_init(|| {
            let n = self.objects.len();
            let mut left = Vec::with_capacity(n * n * n);
            let mut right = Vec::with_capacity(n * n * n);
            for a in self.objects() {
                for b in self.objects() {
                    for x in self.objects() {
                        let mut t = Vec::with_capacity(self.hom(a, x).len() * self.hom(a, b).len());
                        for g in self.hom(a, x).elems() {
                            for f in self.hom(a, b).elems() {
                                t.push(self.left_impl_by_scan(a, b, x, g, f));
                            }
                        }
                        left.push(t);
                        let mut t = Vec::with_capacity(self.hom(a, b).len() * self.hom(x, b).len());
                        for f in self.hom(a, b).elems() {
                            for g in self.hom(x, b).elems() {
                                t.push(self.right_impl_by_scan(a, b, x, f, g));
                            }
                        }
                        right.push(t);
                    }
                }
            }
            Residuals { left, right }
        })
    }

    /// Left implication `g↙f ∈ Q(b,x)` for `g ∈ Q(a,x)`, `f ∈ Q(a,b)`.
    #[inline]
    pub fn left_impl(&self, a: Obj, b: Obj, x: Obj, g: Elem, f: Elem) -> Elem {
        let n = self.objects.len();
        let t = &self.residuals().left[(a.idx() * n + b.idx()) * n + x.idx()];
        t[g.idx() * self.hom(a, b).len() + f.idx()]
    }

    /// Right implication `f↘g ∈ Q(x,a)` for `f ∈ Q(a,b)`, `g ∈ Q(x,b)`.
    #[inline]
    pub fn right_impl(&self, a: Obj, b: Obj, x: Obj, f: Elem, g: Elem) -> Elem {
        let n = self.objects.len();
        let t = &self.residuals().right[(a.idx() * n + b.idx()) * n + x.idx()];
        t[f.idx() * self.hom(x, b).len() + g.idx()]
    }

    fn check_arrow(&self, f: QArrow) -> Result<()> {
        if f.src.idx() >= self.n_objects() || f.dst.idx() >= self.n_objects() {
            return Err(Error::UnknownObject(format!("{:?}", f)));
        }
        if f.value.idx() >= self.hom(f.src, f.dst).len() {
            return Err(Error::Structural(format!(
                "element {} outside Q({},{})",
                f.value.0,
                self.object_name(f.src),
                self.object_name(f.dst)
            )));
        }
        Ok(())
    }

    pub fn arrow(&self, src: &str, dst: &str, label: &str) -> Result<QArrow> {
        let (a, b) = (self.object(src)?, self.object(dst)?);
        let e = self
            .hom(a, b)
            .find(label)
            .ok_or_else(|| Error::Structural(format!("no element `{label}` in Q({src},{dst})")))?;
        Ok(QArrow::new(a, b, e))
    }

    pub fn identity(&self, a: Obj) -> QArrow {
        QArrow::new(a, a, self.unit(a))
    }

    pub fn compose(&self, g: QArrow, f: QArrow) -> Result<QArrow> {
        self.check_arrow(f)?;
        self.check_arrow(g)?;
        if f.dst != g.src {
            return Err(Error::TypeMismatch("g∘f needs f.dst = g.src".into()));
        }
        Ok(QArrow::new(
            f.src,
            g.dst,
            self.comp(f.src, f.dst, g.dst, g.value, f.value),
        ))
    }

    /// `g↙f: B→X` for `g: A→X`, `f: A→B`.
    pub fn left_implication(&self, g: QArrow, f: QArrow) -> Result<QArrow> {
        self.check_arrow(f)?;
        self.check_arrow(g)?;
        if g.src != f.src {
            return Err(Error::TypeMismatch("g↙f needs g.src = f.src".into()));
        }
        Ok(QArrow::new(
            f.dst,
            g.dst,
            self.left_impl(f.src, f.dst, g.dst, g.value, f.value),
        ))
    }

    /// `f↘g: X→A` for `f: A→B`, `g: X→B`.
    pub fn right_implication(&self, f: QArrow, g: QArrow) -> Result<QArrow> {
        self.check_arrow(f)?;
        self.check_arrow(g)?;
        if f.dst != g.dst {
            return Err(Error::TypeMismatch("f↘g needs f.dst = g.dst".into()));
        }
        Ok(QArrow::new(
            g.src,
            f.src,
            self.right_impl(f.src, f.dst, g.src, f.value, g.value),
        ))
    }

    /// `f ⊣ g` iff `1_A ≤ g∘f` and `f∘g ≤ 1_B`.
    pub fn is_arrow_adjunction(&self, f: QArrow, g: QArrow) -> Result<bool> {
        if f.src != g.dst || f.dst != g.src {
            return Err(Error::TypeMismatch("adjunction needs f: A→B, g: B→A".into()));
        }
        let gf = self.compose(g, f)?;
        let fg = self.compose(f, g)?;
        let (a, b) = (f.src, f.dst);
        Ok(self.leq(a, a, self.unit(a), gf.value) && self.leq(b, b, fg.value, self.unit(b)))
    }

    /// `¬f = d_A↙f: B→A`, for a validated cyclic dualizing family.
    pub fn negation(&self, family: &DualizingFamily, f: QArrow) -> Result<QArrow> {
        family.check_structure(self)?;
        if !family.validate(self).is_empty() {
            return Err(Error::InvalidFamily("family is not cyclic and dualizing".into()));
        }
        self.check_arrow(f)?;
        Ok(QArrow::new(f.dst, f.src, family.neg(self, f.src, f.dst, f.value)))
    }

    /// Every law that makes the tables a quantaloid.
    pub fn validate(&self) -> Report {
        laws::validate_quantaloid(self)
    }

    pub fn validate_dualizing_family(&self, family: &DualizingFamily) -> Report {
        family.validate(self)
    }

    /// Every arrow of the quantaloid.
    pub fn arrows(&self) -> impl Iterator<Item = QArrow> + '_ {
        self.objects().flat_map(move |a| {
            self.objects()
                .flat_map(move |b| self.hom(a, b).elems().map(move |e| QArrow::new(a, b, e)))
        })
    }

    pub fn fmt_arrow(&self, f: QArrow) -> String {
        format!(
            "{}:{}->{}",
            self.label(f.src, f.dst, f.value),
            self.object_name(f.src),
            self.object_name(f.dst)
        )
    }
}
