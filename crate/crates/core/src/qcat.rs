//! Q-typed sets, Q-categories, Q-functors and their adjunctions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quantaloid::{Elem, Obj, Quantaloid};
use crate::report::Report;

/// Identifiers together with their types.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QTypedSet {
    pub names: Vec<String>,
    pub types: Vec<Obj>,
}

impl QTypedSet {
    pub fn new(elements: impl IntoIterator<Item = (String, Obj)>) -> Self {
        let (names, types) = elements.into_iter().unzip();
        Self { names, types }
    }

    /// All elements of one type.
    pub fn uniform<S: Into<String>>(names: impl IntoIterator<Item = S>, ty: Obj) -> Self {
        Self::new(names.into_iter().map(|n| (n.into(), ty)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A finite Q-category: typed objects and a hom matrix `A(x,y) ∈ Q(tx,ty)`.
#[derive(Clone)]
pub struct QCategory {
    q: Arc<Quantaloid>,
    names: Vec<String>,
    types: Vec<Obj>,
    hom: Vec<Elem>,
    index: HashMap<String, usize>,
}

impl PartialEq for QCategory {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.q, &other.q) || self.q == other.q)
            && self.names == other.names
            && self.types == other.types
            && self.hom == other.hom
    }
}

impl Eq for QCategory {}

impl fmt::Debug for QCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for x in 0..self.len() {
            for y in 0..self.len() {
                m.entry(
                    &format_args!("{},{}", self.names[x], self.names[y]),
                    &self.label(x, y, self.hom(x, y)),
                );
            }
        }
        m.finish()
    }
}

/// The underlying preorder `x ≤ y ⇔ tx = ty ∧ 1_tx ≤ A(x,y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    n: usize,
    leq: Vec<bool>,
}

impl Preorder {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    pub fn iso(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    /// Pairs `x < y` (by index) that are isomorphic.
    pub fn iso_pairs(&self) -> Vec<(usize, usize)> {
        let mut v = vec![];
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.iso(x, y) {
                    v.push((x, y));
                }
            }
        }
        v
    }

    pub fn is_skeletal(&self) -> bool {
        self.iso_pairs().is_empty()
    }

    pub fn is_preorder(&self) -> bool {
        (0..self.n).all(|x| self.leq(x, x))
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| !self.leq(x, y) || (0..self.n).all(|z| !self.leq(y, z) || self.leq(x, z)))
            })
    }

    /// Class representative: the least index isomorphic to `x`.
    pub fn representative(&self, x: usize) -> usize {
        (0..=x).find(|&y| self.iso(x, y)).unwrap_or(x)
    }
}

impl QCategory {
    /// Builds a category from a full hom matrix (`hom[x * n + y]`), checking
    /// only that the entries are in range. Use [`QCategory::validate`] for the
    /// axioms.
    pub fn new(q: Arc<Quantaloid>, base: QTypedSet, hom: Vec<Elem>) -> Result<Self> {
        let n = base.len();
        if base.types.len() != n {
            return Err(Error::Structural("every object needs a type".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, name) in base.names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Structural("empty object identifier".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Structural(format!("duplicate object `{name}`")));
            }
        }
        for &t in &base.types {
            if t.idx() >= q.n_objects() {
                return Err(Error::UnknownObject(format!("type #{}", t.0)));
            }
        }
        if hom.len() != n * n {
            return Err(Error::Structural(format!("hom matrix needs {} entries", n * n)));
        }
        for x in 0..n {
            for y in 0..n {
                let e = hom[x * n + y];
                if e.idx() >= q.hom(base.types[x], base.types[y]).len() {
                    return Err(Error::Structural(format!(
                        "hom({},{}) outside its carrier",
                        base.names[x], base.names[y]
                    )));
                }
            }
        }
        Ok(Self {
            q,
            names: base.names,
            types: base.types,
            hom,
            index,
        })
    }

    pub fn from_fn(q: Arc<Quantaloid>, base: QTypedSet, mut f: impl FnMut(usize, usize) -> Elem) -> Result<Self> {
        let n = base.len();
        let hom = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(q, base, hom)
    }

    /// `A(x,x) = 1_tx` and `⊥` elsewhere.
    pub fn discrete(q: Arc<Quantaloid>, base: QTypedSet) -> Result<Self> {
        let types = base.types.clone();
        for &t in &types {
            if t.idx() >= q.n_objects() {
                return Err(Error::UnknownObject(format!("type #{}", t.0)));
            }
        }
        let q2 = q.clone();
        Self::from_fn(q, base, move |x, y| {
            if x == y {
                q2.unit(types[x])
            } else {
                q2.bottom(types[x], types[y])
            }
        })
    }

    /// The one-object category `*_X` with hom `1_X`.
    pub fn star(q: Arc<Quantaloid>, x: Obj) -> Result<Self> {
        if x.idx() >= q.n_objects() {
            return Err(Error::UnknownObject(format!("type #{}", x.0)));
        }
        let u = q.unit(x);
        Self::new(q, QTypedSet::uniform(["*"], x), vec![u])
    }

    pub fn quantaloid(&self) -> &Arc<Quantaloid> {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn types(&self) -> &[Obj] {
        &self.types
    }

    pub fn typed_set(&self) -> QTypedSet {
        QTypedSet {
            names: self.names.clone(),
            types: self.types.clone(),
        }
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    #[inline]
    pub fn ty(&self, x: usize) -> Obj {
        self.types[x]
    }

    #[inline]
    pub fn hom(&self, x: usize, y: usize) -> Elem {
        self.hom[x * self.len() + y]
    }

    pub fn hom_matrix(&self) -> &[Elem] {
        &self.hom
    }

    pub fn label(&self, x: usize, y: usize, e: Elem) -> &str {
        self.q.label(self.types[x], self.types[y], e)
    }

    /// Overwrites one hom entry (for building deliberately broken examples).
    pub fn set_hom(&mut self, x: usize, y: usize, e: Elem) -> Result<()> {
        if e.idx() >= self.q.hom(self.types[x], self.types[y]).len() {
            return Err(Error::Structural("element outside carrier".into()));
        }
        let n = self.len();
        self.hom[x * n + y] = e;
        Ok(())
    }

    /// Both axioms: `1_tx ≤ A(x,x)` and `A(y,z)∘A(x,y) ≤ A(x,z)`.
    pub fn validate(&self) -> Report {
        let q = &*self.q;
        let t = &self.types;
        let mut r = Report::new();
        for x in self.objects() {
            r.check(q.leq(t[x], t[x], q.unit(t[x]), self.hom(x, x)), "unit axiom", || {
                format!("x={}", self.names[x])
            });
        }
        for x in self.objects() {
            for y in self.objects() {
                let xy = self.hom(x, y);
                for z in self.objects() {
                    let c = q.comp(t[x], t[y], t[z], self.hom(y, z), xy);
                    r.check(q.leq(t[x], t[z], c, self.hom(x, z)), "composition axiom", || {
                        format!("(x,y,z)=({},{},{})", self.names[x], self.names[y], self.names[z])
                    });
                }
            }
        }
        r
    }

    /// `x ≤ y` in the underlying preorder.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        let (tx, ty) = (self.types[x], self.types[y]);
        tx == ty && self.q.leq(tx, tx, self.q.unit(tx), self.hom(x, y))
    }

    pub fn iso(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    pub fn underlying_preorder(&self) -> Preorder {
        let n = self.len();
        Preorder {
            n,
            leq: (0..n * n).map(|k| self.leq(k / n, k % n)).collect(),
        }
    }

    pub fn is_skeletal(&self) -> bool {
        self.underlying_preorder().is_skeletal()
    }

    /// Same quantaloid (by identity or value).
    pub fn same_base(&self, other: &QCategory) -> bool {
        Arc::ptr_eq(&self.q, &other.q) || self.q == other.q
    }

    /// The full subcategory on `objs`, in the given order.
    pub fn full_subcategory(&self, objs: &[usize]) -> Result<QCategory> {
        let base = QTypedSet::new(objs.iter().map(|&x| (self.names[x].clone(), self.types[x])));
        QCategory::from_fn(self.q.clone(), base, |i, j| self.hom(objs[i], objs[j]))
    }

    /// `g∘f` for hom elements along `x → y → z`.
    #[inline]
    pub fn comp(&self, x: usize, y: usize, z: usize, g: Elem, f: Elem) -> Elem {
        self.q.comp(self.types[x], self.types[y], self.types[z], g, f)
    }
}

pub(crate) fn same_category(a: &Arc<QCategory>, b: &Arc<QCategory>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A map of objects `F: A → B`.
#[derive(Clone, PartialEq, Eq)]
pub struct QFunctor {
    pub source: Arc<QCategory>,
    pub target: Arc<QCategory>,
    pub map: Vec<usize>,
}

impl fmt::Debug for QFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (x, &y) in self.map.iter().enumerate() {
            m.entry(&self.source.name(x), &self.target.name(y));
        }
        m.finish()
    }
}

/// Outcome of [`QFunctor::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorReport {
    pub is_functor: bool,
    pub is_fully_faithful: bool,
    pub report: Report,
}

impl QFunctor {
    pub fn new(source: Arc<QCategory>, target: Arc<QCategory>, map: Vec<usize>) -> Result<Self> {
        if !source.same_base(&target) {
            return Err(Error::BoundaryMismatch("functor between different quantaloids".into()));
        }
        if map.len() != source.len() {
            return Err(Error::Structural("functor map must be total".into()));
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.len()) {
            return Err(Error::Structural(format!("image #{y} outside target")));
        }
        Ok(Self { source, target, map })
    }

    pub fn from_names(source: Arc<QCategory>, target: Arc<QCategory>, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut map = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            map[source.index(x)?] = target.index(y)?;
        }
        if map.contains(&usize::MAX) {
            return Err(Error::Structural("functor map must be total".into()));
        }
        Self::new(source, target, map)
    }

    pub fn identity(a: Arc<QCategory>) -> Self {
        let map = a.objects().collect();
        Self {
            source: a.clone(),
            target: a,
            map,
        }
    }

    pub fn constant(source: Arc<QCategory>, target: Arc<QCategory>, y: usize) -> Result<Self> {
        let map = vec![y; source.len()];
        Self::new(source, target, map)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `G∘F`.
    pub fn then(&self, g: &QFunctor) -> Result<QFunctor> {
        if !same_category(&self.target, &g.source) {
            return Err(Error::BoundaryMismatch("G∘F needs F.target = G.source".into()));
        }
        Ok(QFunctor {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&y| g.map[y]).collect(),
        })
    }

    pub fn is_functor(&self) -> bool {
        let (a, b) = (&*self.source, &*self.target);
        let q = a.quantaloid();
        a.objects().all(|x| b.ty(self.map[x]) == a.ty(x))
            && a.objects().all(|x| {
                a.objects().all(|y| {
                    q.leq(a.ty(x), a.ty(y), a.hom(x, y), b.hom(self.map[x], self.map[y]))
                })
            })
    }

    pub fn validate(&self) -> FunctorReport {
        let (a, b) = (&*self.source, &*self.target);
        let q = a.quantaloid();
        let mut r = Report::new();
        for x in a.objects() {
            r.check(b.ty(self.map[x]) == a.ty(x), "type preservation", || {
                format!("x={}", a.name(x))
            });
        }
        let typed = r.is_empty();
        let mut ff = typed;
        if typed {
            for x in a.objects() {
                for y in a.objects() {
                    let (h, k) = (a.hom(x, y), b.hom(self.map[x], self.map[y]));
                    r.check(q.leq(a.ty(x), a.ty(y), h, k), "hom expansion", || {
                        format!("(x,y)=({},{})", a.name(x), a.name(y))
                    });
                    ff &= h == k;
                }
            }
        }
        FunctorReport {
            is_functor: r.is_empty(),
            is_fully_faithful: r.is_empty() && ff,
            report: r,
        }
    }

    /// Every `y` is isomorphic to some `Fx`.
    pub fn is_essentially_surjective(&self) -> bool {
        let b = &self.target;
        b.objects().all(|y| self.map.iter().any(|&fx| b.iso(fx, y)))
    }
}

fn same_signature(f: &QFunctor, g: &QFunctor) -> bool {
    same_category(&f.source, &g.source) && same_category(&f.target, &g.target)
}

/// `F ≤ G` iff `Fx ≤ Gx` in the target for every `x`.
pub fn functor_leq(f: &QFunctor, g: &QFunctor) -> Result<bool> {
    if !same_signature(f, g) {
        return Err(Error::BoundaryMismatch("functors with different signatures".into()));
    }
    Ok(f.source.objects().all(|x| f.target.leq(f.map[x], g.map[x])))
}

/// `F ⊣ G` iff `1_A ≤ G∘F` and `F∘G ≤ 1_B`.
pub fn is_functor_adjunction(f: &QFunctor, g: &QFunctor) -> Result<bool> {
    if !same_category(&f.source, &g.target) || !same_category(&f.target, &g.source) {
        return Err(Error::BoundaryMismatch("adjunction needs F: A→B, G: B→A".into()));
    }
    let (a, b) = (&f.source, &f.target);
    Ok(a.objects().all(|x| a.leq(x, g.map[f.map[x]])) && b.objects().all(|y| b.leq(f.map[g.map[y]], y)))
}

/// Every functor `A → B`, in lexicographic order of the object map.
pub fn enumerate_functors(a: &Arc<QCategory>, b: &Arc<QCategory>) -> Result<Vec<QFunctor>> {
    if !a.same_base(b) {
        return Err(Error::BoundaryMismatch("categories over different quantaloids".into()));
    }
    let q = a.quantaloid().clone();
    let n = a.len();
    let mut out = vec![];
    let mut map = Vec::with_capacity(n);
    fn go(
        a: &QCategory,
        b: &QCategory,
        q: &Quantaloid,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let x = map.len();
        if x == a.len() {
            out.push(map.clone());
            return;
        }
        for y in b.objects() {
            if b.ty(y) != a.ty(x) {
                continue;
            }
            map.push(y);
            let ok = (0..=x).all(|z| {
                q.leq(a.ty(z), a.ty(x), a.hom(z, x), b.hom(map[z], y))
                    && q.leq(a.ty(x), a.ty(z), a.hom(x, z), b.hom(y, map[z]))
            });
            if ok {
                go(a, b, q, map, out);
            }
            map.pop();
        }
    }
    let mut maps = vec![];
    go(a, b, &q, &mut map, &mut maps);
    for m in maps {
        out.push(QFunctor {
            source: a.clone(),
            target: b.clone(),
            map: m,
        });
    }
    Ok(out)
}

/// A right adjoint of `F`, if one exists: `Gy` with `B(Fx,y) = A(x,Gy)`.
pub fn right_adjoint(f: &QFunctor) -> Option<QFunctor> {
    let (a, b) = (&f.source, &f.target);
    let mut map = Vec::with_capacity(b.len());
    for y in b.objects() {
        let gy = a
            .objects()
            .find(|&c| a.ty(c) == b.ty(y) && a.objects().all(|x| b.hom(f.map[x], y) == a.hom(x, c)))?;
        map.push(gy);
    }
    Some(QFunctor {
        source: b.clone(),
        target: a.clone(),
        map,
    })
}

/// A left adjoint of `G: B → A`, if one exists: `Fx` with `B(Fx,y) = A(x,Gy)`.
pub fn left_adjoint(g: &QFunctor) -> Option<QFunctor> {
    let (b, a) = (&g.source, &g.target);
    let mut map = Vec::with_capacity(a.len());
    for x in a.objects() {
        let fx = b
            .objects()
            .find(|&c| b.ty(c) == a.ty(x) && b.objects().all(|y| b.hom(c, y) == a.hom(x, g.map[y])))?;
        map.push(fx);
    }
    Some(QFunctor {
        source: a.clone(),
        target: b.clone(),
        map,
    })
}
