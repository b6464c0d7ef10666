//! Presheaf categories `PA` and `P†A`, Yoneda embeddings and the functors
//! induced on presheaves by a Q-functor.

mod bounds;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcat::{same_category, QCategory, QFunctor, QTypedSet};
use crate::quantaloid::{Elem, Obj, Quantaloid};
use crate::report::Report;

pub use bounds::{
    bound_search, cotensor_search, density_check, inf_search, is_complete, is_inf_of, is_sup_of, presheaf_inf,
    presheaf_sup, sup_search, tensor_search, weighted_colimit, weighted_limit, BoundKind, Completeness, Density,
    TensorKind, Weight,
};

/// Default bound on the number of objects of an enumerated presheaf category.
pub const DEFAULT_CAP: usize = 20_000;

/// `μ: A ⇸ *_X`, stored as `μ(x) ∈ Q(tx, X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Presheaf {
    pub ty: Obj,
    pub values: Vec<Elem>,
}

/// `λ: *_X ⇸ A`, stored as `λ(x) ∈ Q(X, tx)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoPresheaf {
    pub ty: Obj,
    pub values: Vec<Elem>,
}

fn check_shape(a: &QCategory, ty: Obj, values: &[Elem], contra: bool) -> Result<()> {
    let q = a.quantaloid();
    if ty.idx() >= q.n_objects() {
        return Err(Error::UnknownObject(format!("type #{}", ty.0)));
    }
    if values.len() != a.len() {
        return Err(Error::Structural(format!(
            "presheaf needs {} values, got {}",
            a.len(),
            values.len()
        )));
    }
    for (x, v) in values.iter().enumerate() {
        let h = if contra { q.hom(a.ty(x), ty) } else { q.hom(ty, a.ty(x)) };
        if v.idx() >= h.len() {
            return Err(Error::Structural(format!("value at {} outside its carrier", a.name(x))));
        }
    }
    Ok(())
}

impl Presheaf {
    pub fn new(a: &QCategory, ty: Obj, values: Vec<Elem>) -> Result<Self> {
        check_shape(a, ty, &values, true)?;
        Ok(Self { ty, values })
    }

    /// `Y a = A(−,a)`.
    pub fn yoneda(a: &QCategory, x: usize) -> Self {
        Self {
            ty: a.ty(x),
            values: a.objects().map(|y| a.hom(y, x)).collect(),
        }
    }

    pub fn bottom(a: &QCategory, ty: Obj) -> Self {
        let q = a.quantaloid();
        Self {
            ty,
            values: a.objects().map(|x| q.bottom(a.ty(x), ty)).collect(),
        }
    }

    pub fn top(a: &QCategory, ty: Obj) -> Self {
        let q = a.quantaloid();
        Self {
            ty,
            values: a.objects().map(|x| q.top(a.ty(x), ty)).collect(),
        }
    }

    /// `μ(x')∘A(x,x') ≤ μ(x)`.
    pub fn validate(&self, a: &QCategory) -> Report {
        let q = a.quantaloid();
        let mut r = Report::new();
        if let Err(e) = check_shape(a, self.ty, &self.values, true) {
            r.push("structure", e.to_string());
            return r;
        }
        for x in a.objects() {
            for x2 in a.objects() {
                let c = q.comp(a.ty(x), a.ty(x2), self.ty, self.values[x2], a.hom(x, x2));
                r.check(q.leq(a.ty(x), self.ty, c, self.values[x]), "presheaf condition", || {
                    format!("(x,x')=({},{})", a.name(x), a.name(x2))
                });
            }
        }
        r
    }

    pub fn is_valid(&self, a: &QCategory) -> bool {
        self.validate(a).is_empty()
    }
}

impl CoPresheaf {
    pub fn new(a: &QCategory, ty: Obj, values: Vec<Elem>) -> Result<Self> {
        check_shape(a, ty, &values, false)?;
        Ok(Self { ty, values })
    }

    /// `Y† a = A(a,−)`.
    pub fn yoneda(a: &QCategory, x: usize) -> Self {
        Self {
            ty: a.ty(x),
            values: a.objects().map(|y| a.hom(x, y)).collect(),
        }
    }

    pub fn bottom(a: &QCategory, ty: Obj) -> Self {
        let q = a.quantaloid();
        Self {
            ty,
            values: a.objects().map(|x| q.bottom(ty, a.ty(x))).collect(),
        }
    }

    pub fn top(a: &QCategory, ty: Obj) -> Self {
        let q = a.quantaloid();
        Self {
            ty,
            values: a.objects().map(|x| q.top(ty, a.ty(x))).collect(),
        }
    }

    /// `A(x,x')∘λ(x) ≤ λ(x')`.
    pub fn validate(&self, a: &QCategory) -> Report {
        let q = a.quantaloid();
        let mut r = Report::new();
        if let Err(e) = check_shape(a, self.ty, &self.values, false) {
            r.push("structure", e.to_string());
            return r;
        }
        for x in a.objects() {
            for x2 in a.objects() {
                let c = q.comp(self.ty, a.ty(x), a.ty(x2), a.hom(x, x2), self.values[x]);
                r.check(q.leq(self.ty, a.ty(x2), c, self.values[x2]), "copresheaf condition", || {
                    format!("(x,x')=({},{})", a.name(x), a.name(x2))
                });
            }
        }
        r
    }

    pub fn is_valid(&self, a: &QCategory) -> bool {
        self.validate(a).is_empty()
    }
}

/// `PA(μ,λ) = λ↙μ = ⋀_x λ(x)↙μ(x) ∈ Q(tμ,tλ)`.
pub fn presheaf_hom(a: &QCategory, mu: &Presheaf, lam: &Presheaf) -> Elem {
    let q = a.quantaloid();
    q.hom(mu.ty, lam.ty).meet_all(
        a.objects()
            .map(|x| q.left_impl(a.ty(x), mu.ty, lam.ty, lam.values[x], mu.values[x])),
    )
}

/// `P†A(μ,λ) = λ↘μ = ⋀_x λ(x)↘μ(x) ∈ Q(tμ,tλ)`.
pub fn copresheaf_hom(a: &QCategory, mu: &CoPresheaf, lam: &CoPresheaf) -> Elem {
    let q = a.quantaloid();
    q.hom(mu.ty, lam.ty).meet_all(
        a.objects()
            .map(|x| q.right_impl(lam.ty, a.ty(x), mu.ty, lam.values[x], mu.values[x])),
    )
}

/// Contravariant (`PA`) or covariant (`P†A`) presheaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variance {
    Contravariant,
    Covariant,
}

/// Forward (`F→`, `F⇒`) or backward (`F←`, `F⇐`) transport.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// Every presheaf (or copresheaf) on a finite category, interned in
/// canonical order: by type object, then lexicographically by value vector.
pub struct PresheafCategory {
    base: Arc<QCategory>,
    variance: Variance,
    types: Vec<Obj>,
    values: Vec<Vec<Elem>>,
    index: HashMap<(Obj, Vec<Elem>), usize>,
    category: OnceLock<Arc<QCategory>>,
}

impl fmt::Debug for PresheafCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresheafCategory")
            .field("variance", &self.variance)
            .field("objects", &self.len())
            .finish_non_exhaustive()
    }
}

/// `Σ_X Π_x |carrier at x|`, the number of value maps before filtering.
pub fn enumeration_estimate(a: &QCategory, variance: Variance) -> u128 {
    let q = a.quantaloid();
    q.objects()
        .map(|t| {
            a.objects()
                .map(|x| match variance {
                    Variance::Contravariant => q.hom(a.ty(x), t).len() as u128,
                    Variance::Covariant => q.hom(t, a.ty(x)).len() as u128,
                })
                .fold(1u128, |acc, k| acc.saturating_mul(k))
        })
        .fold(0u128, |acc, k| acc.saturating_add(k))
}

impl PresheafCategory {
    /// Enumerates all presheaves, refusing when the raw estimate exceeds `cap`.
    pub fn enumerate(base: Arc<QCategory>, variance: Variance, cap: usize) -> Result<Self> {
        let estimate = enumeration_estimate(&base, variance);
        if estimate > cap as u128 {
            return Err(Error::CapExceeded { estimate, cap });
        }
        if !base.validate().is_empty() {
            return Err(Error::Precondition("presheaves over an invalid category".into()));
        }
        let q = base.quantaloid().clone();
        let mut types = vec![];
        let mut values = vec![];
        let mut cur = Vec::with_capacity(base.len());
        for t in q.objects() {
            enumerate_type(&base, &q, variance, t, &mut cur, &mut |v| {
                types.push(t);
                values.push(v.to_vec());
            });
        }
        let index = types
            .iter()
            .zip(&values)
            .enumerate()
            .map(|(i, (&t, v))| ((t, v.clone()), i))
            .collect();
        Ok(Self {
            base,
            variance,
            types,
            values,
            index,
            category: OnceLock::new(),
        })
    }

    pub fn contravariant(base: Arc<QCategory>, cap: usize) -> Result<Self> {
        Self::enumerate(base, Variance::Contravariant, cap)
    }

    pub fn covariant(base: Arc<QCategory>, cap: usize) -> Result<Self> {
        Self::enumerate(base, Variance::Covariant, cap)
    }

    pub fn base(&self) -> &Arc<QCategory> {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn quantaloid(&self) -> &Arc<Quantaloid> {
        self.base.quantaloid()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn ty(&self, i: usize) -> Obj {
        self.types[i]
    }

    #[inline]
    pub fn values(&self, i: usize) -> &[Elem] {
        &self.values[i]
    }

    pub fn find(&self, ty: Obj, values: &[Elem]) -> Option<usize> {
        self.index.get(&(ty, values.to_vec())).copied()
    }

    pub fn presheaf(&self, i: usize) -> Presheaf {
        debug_assert_eq!(self.variance, Variance::Contravariant);
        Presheaf {
            ty: self.types[i],
            values: self.values[i].clone(),
        }
    }

    pub fn copresheaf(&self, i: usize) -> CoPresheaf {
        debug_assert_eq!(self.variance, Variance::Covariant);
        CoPresheaf {
            ty: self.types[i],
            values: self.values[i].clone(),
        }
    }

    pub fn index_of(&self, mu: &Presheaf) -> Option<usize> {
        (self.variance == Variance::Contravariant).then(|| self.find(mu.ty, &mu.values))?
    }

    pub fn index_of_co(&self, lam: &CoPresheaf) -> Option<usize> {
        (self.variance == Variance::Covariant).then(|| self.find(lam.ty, &lam.values))?
    }

    /// `PA(i,j) = λ↙μ` or `P†A(i,j) = λ↘μ`.
    pub fn hom(&self, i: usize, j: usize) -> Elem {
        let a = &*self.base;
        let q = a.quantaloid();
        let (ti, tj) = (self.types[i], self.types[j]);
        let (vi, vj) = (&self.values[i], &self.values[j]);
        let h = q.hom(ti, tj);
        match self.variance {
            Variance::Contravariant => {
                h.meet_all(a.objects().map(|x| q.left_impl(a.ty(x), ti, tj, vj[x], vi[x])))
            }
            Variance::Covariant => {
                h.meet_all(a.objects().map(|x| q.right_impl(tj, a.ty(x), ti, vj[x], vi[x])))
            }
        }
    }

    /// Pointwise order of value maps of the same type.
    pub fn local_leq(&self, i: usize, j: usize) -> bool {
        let a = &*self.base;
        let q = a.quantaloid();
        let t = self.types[i];
        t == self.types[j]
            && a.objects().all(|x| match self.variance {
                Variance::Contravariant => q.leq(a.ty(x), t, self.values[i][x], self.values[j][x]),
                Variance::Covariant => q.leq(t, a.ty(x), self.values[i][x], self.values[j][x]),
            })
    }

    pub fn object_name(&self, i: usize) -> String {
        let a = &*self.base;
        let q = a.quantaloid();
        let t = self.types[i];
        let labels: Vec<&str> = a
            .objects()
            .map(|x| match self.variance {
                Variance::Contravariant => q.label(a.ty(x), t, self.values[i][x]),
                Variance::Covariant => q.label(t, a.ty(x), self.values[i][x]),
            })
            .collect();
        format!("{}[{}]", q.object_name(t), labels.join("|"))
    }

    /// The presheaf category as an explicit Q-category (built on first use).
    pub fn category(&self) -> &Arc<QCategory> {
        self.category.get_or_init(|| {
            let base = QTypedSet::new(self.objects().map(|i| (self.object_name(i), self.types[i])));
            Arc::new(
                QCategory::from_fn(self.quantaloid().clone(), base, |i, j| self.hom(i, j))
                    .expect("presheaf homs lie in their carriers"),
            )
        })
    }

    /// The full subcategory on `members` (indices in canonical order), built
    /// without materializing the whole presheaf category.
    pub fn subcategory(&self, members: &[usize]) -> QCategory {
        if let Some(c) = self.category.get() {
            return c.full_subcategory(members).expect("members are objects");
        }
        let base = QTypedSet::new(members.iter().map(|&i| (self.object_name(i), self.types[i])));
        QCategory::from_fn(self.quantaloid().clone(), base, |i, j| self.hom(members[i], members[j]))
            .expect("presheaf homs lie in their carriers")
    }

    /// Index of `Y a` (or `Y† a`).
    pub fn yoneda_index(&self, x: usize) -> usize {
        let a = &*self.base;
        let values: Vec<Elem> = match self.variance {
            Variance::Contravariant => a.objects().map(|y| a.hom(y, x)).collect(),
            Variance::Covariant => a.objects().map(|y| a.hom(x, y)).collect(),
        };
        self.find(a.ty(x), &values).expect("representables are presheaves")
    }

    /// `Y: A → PA` or `Y†: A → P†A`.
    pub fn yoneda_functor(&self) -> QFunctor {
        QFunctor {
            source: self.base.clone(),
            target: self.category().clone(),
            map: self.base.objects().map(|x| self.yoneda_index(x)).collect(),
        }
    }
}

fn enumerate_type(
    a: &QCategory,
    q: &Quantaloid,
    variance: Variance,
    t: Obj,
    cur: &mut Vec<Elem>,
    emit: &mut dyn FnMut(&[Elem]),
) {
    let x = cur.len();
    if x == a.len() {
        emit(cur);
        return;
    }
    let tx = a.ty(x);
    let carrier = match variance {
        Variance::Contravariant => q.hom(tx, t),
        Variance::Covariant => q.hom(t, tx),
    };
    for v in carrier.elems() {
        cur.push(v);
        let ok = (0..=x).all(|y| {
            let ty = a.ty(y);
            match variance {
                // μ(x')∘A(x,x') ≤ μ(x), both orientations between x and earlier y
                Variance::Contravariant => {
                    q.leq(ty, t, q.comp(ty, tx, t, v, a.hom(y, x)), cur[y])
                        && q.leq(tx, t, q.comp(tx, ty, t, cur[y], a.hom(x, y)), v)
                }
                // A(x,x')∘λ(x) ≤ λ(x')
                Variance::Covariant => {
                    q.leq(t, tx, q.comp(t, ty, tx, a.hom(y, x), cur[y]), v)
                        && q.leq(t, ty, q.comp(t, tx, ty, a.hom(x, y), v), cur[y])
                }
            }
        });
        if ok {
            enumerate_type(a, q, variance, t, cur, emit);
        }
        cur.pop();
    }
}

/// `F→(μ)(y) = ⋁_x μ(x)∘B(y,Fx)`.
pub fn forward_presheaf(f: &QFunctor, mu: &Presheaf) -> Presheaf {
    let (a, b) = (&*f.source, &*f.target);
    let q = a.quantaloid();
    Presheaf {
        ty: mu.ty,
        values: b
            .objects()
            .map(|y| {
                q.hom(b.ty(y), mu.ty).join_all(
                    a.objects()
                        .map(|x| q.comp(b.ty(y), a.ty(x), mu.ty, mu.values[x], b.hom(y, f.map[x]))),
                )
            })
            .collect(),
    }
}

/// `F←(λ)(x) = λ(Fx)`.
pub fn backward_presheaf(f: &QFunctor, lam: &Presheaf) -> Presheaf {
    Presheaf {
        ty: lam.ty,
        values: f.map.iter().map(|&y| lam.values[y]).collect(),
    }
}

/// `F⇒(λ)(y) = ⋁_x B(Fx,y)∘λ(x)`.
pub fn forward_copresheaf(f: &QFunctor, lam: &CoPresheaf) -> CoPresheaf {
    let (a, b) = (&*f.source, &*f.target);
    let q = a.quantaloid();
    CoPresheaf {
        ty: lam.ty,
        values: b
            .objects()
            .map(|y| {
                q.hom(lam.ty, b.ty(y)).join_all(
                    a.objects()
                        .map(|x| q.comp(lam.ty, a.ty(x), b.ty(y), b.hom(f.map[x], y), lam.values[x])),
                )
            })
            .collect(),
    }
}

/// `F⇐(λ)(x) = λ(Fx)`.
pub fn backward_copresheaf(f: &QFunctor, lam: &CoPresheaf) -> CoPresheaf {
    CoPresheaf {
        ty: lam.ty,
        values: f.map.iter().map(|&y| lam.values[y]).collect(),
    }
}

/// The functor between presheaf categories induced by `F: A → B`.
///
/// `pa` and `pb` are the presheaf categories of `F.source` and `F.target` with
/// the requested variance; the result goes from one to the other according to
/// `direction`.
pub fn transport(
    f: &QFunctor,
    direction: Direction,
    pa: &PresheafCategory,
    pb: &PresheafCategory,
) -> Result<QFunctor> {
    if !same_category(pa.base(), &f.source) || !same_category(pb.base(), &f.target) {
        return Err(Error::BoundaryMismatch("presheaf categories do not match the functor".into()));
    }
    if pa.variance() != pb.variance() {
        return Err(Error::BoundaryMismatch("mixed variances".into()));
    }
    let (from, to) = match direction {
        Direction::Forward => (pa, pb),
        Direction::Backward => (pb, pa),
    };
    let map = from
        .objects()
        .map(|i| {
            let (t, v) = match (pa.variance(), direction) {
                (Variance::Contravariant, Direction::Forward) => {
                    let r = forward_presheaf(f, &from.presheaf(i));
                    (r.ty, r.values)
                }
                (Variance::Contravariant, Direction::Backward) => {
                    let r = backward_presheaf(f, &from.presheaf(i));
                    (r.ty, r.values)
                }
                (Variance::Covariant, Direction::Forward) => {
                    let r = forward_copresheaf(f, &from.copresheaf(i));
                    (r.ty, r.values)
                }
                (Variance::Covariant, Direction::Backward) => {
                    let r = backward_copresheaf(f, &from.copresheaf(i));
                    (r.ty, r.values)
                }
            };
            to.find(t, &v).expect("transported presheaves are presheaves")
        })
        .collect();
    Ok(QFunctor {
        source: from.category().clone(),
        target: to.category().clone(),
        map,
    })
}

#[cfg(test)]
mod tests;
