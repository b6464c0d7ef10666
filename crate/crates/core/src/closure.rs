//! Closure and interior operators, closure systems, closure spaces on
//! presheaf categories, continuous functors and the unit and universal
//! extension of the reflection of closure spaces into complete categories.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presheaf::{
    backward_presheaf, forward_presheaf, sup_search, transport, Direction, PresheafCategory, Variance,
};
use crate::qcat::{enumerate_functors, functor_leq, left_adjoint, same_category, QCategory, QFunctor};
use crate::report::Report;

/// Both flags of [`classify_endo`]; the identity is closure and interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndoClass {
    pub closure: bool,
    pub interior: bool,
}

impl EndoClass {
    pub fn neither(self) -> bool {
        !self.closure && !self.interior
    }
}

fn check_endo(f: &QFunctor) -> Result<()> {
    if !same_category(&f.source, &f.target) {
        return Err(Error::BoundaryMismatch("not an endofunctor".into()));
    }
    if !f.is_functor() {
        return Err(Error::Precondition("map is not a Q-functor".into()));
    }
    Ok(())
}

/// Closure: `1 ≤ F` and `F² ≅ F`; interior: `F ≤ 1` and `F² ≅ F`.
pub fn classify_endo(f: &QFunctor) -> Result<EndoClass> {
    check_endo(f)?;
    let id = QFunctor::identity(f.source.clone());
    let ff = f.then(f)?;
    let idem = functor_leq(&ff, f)? && functor_leq(f, &ff)?;
    Ok(EndoClass {
        closure: idem && functor_leq(&id, f)?,
        interior: idem && functor_leq(f, &id)?,
    })
}

/// An isomorphism-closed set of objects of an ambient category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSystem {
    ambient: Arc<QCategory>,
    members: Vec<usize>,
}

impl ClosureSystem {
    /// Saturates `members` under isomorphism in the ambient category.
    pub fn new(ambient: Arc<QCategory>, members: impl IntoIterator<Item = usize>) -> Self {
        let given: Vec<usize> = members.into_iter().collect();
        let members = ambient
            .objects()
            .filter(|&x| given.iter().any(|&m| ambient.iso(x, m)))
            .collect();
        Self { ambient, members }
    }

    pub fn ambient(&self) -> &Arc<QCategory> {
        &self.ambient
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The full subcategory on the members.
    pub fn subcategory(&self) -> Arc<QCategory> {
        Arc::new(self.ambient.full_subcategory(&self.members).expect("members are objects"))
    }

    pub fn inclusion(&self) -> QFunctor {
        QFunctor {
            source: self.subcategory(),
            target: self.ambient.clone(),
            map: self.members.clone(),
        }
    }

    /// A left adjoint of the inclusion, when the members form a closure system.
    pub fn reflector(&self) -> Option<QFunctor> {
        left_adjoint(&self.inclusion())
    }

    pub fn is_closure_system(&self) -> bool {
        self.reflector().is_some()
    }

    /// Closed under every ambient infimum of a weight supported on members
    /// and under cotensors of members.
    pub fn closed_under_meets_and_cotensors(&self) -> bool {
        let a = &*self.ambient;
        let q = a.quantaloid();
        for x in self.members.iter().copied() {
            for t in q.objects() {
                for f in q.hom(t, a.ty(x)).elems() {
                    match crate::presheaf::cotensor_search(a, t, f, x) {
                        Some(c) if self.contains(c) => {}
                        Some(_) => return false,
                        None => {}
                    }
                }
            }
        }
        // meets of every subset of members of one type
        let m = &self.members;
        if m.len() > 20 {
            return true;
        }
        for mask in 0u32..1 << m.len() {
            let subset: Vec<usize> = (0..m.len()).filter(|i| mask >> i & 1 == 1).map(|i| m[i]).collect();
            for t in q.objects() {
                if subset.iter().any(|&x| a.ty(x) != t) {
                    continue;
                }
                let glb = a.objects().find(|&c| {
                    a.ty(c) == t
                        && subset.iter().all(|&x| a.leq(c, x))
                        && a.objects().all(|d| {
                            a.ty(d) != t || !subset.iter().all(|&x| a.leq(d, x)) || a.leq(d, c)
                        })
                });
                if let Some(c) = glb {
                    if !self.contains(c) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Objects fixed up to isomorphism by a closure or interior operator.
pub fn fixed_points(f: &QFunctor) -> Result<ClosureSystem> {
    if classify_endo(f)?.neither() {
        return Err(Error::Precondition("neither a closure nor an interior operator".into()));
    }
    let a = f.source.clone();
    let members: Vec<usize> = a.objects().filter(|&x| a.iso(f.map[x], x)).collect();
    Ok(ClosureSystem::new(a, members))
}

/// A category `A` with a closure operator `C` on `PA`, stored as an index map
/// over the canonical enumeration of `PA`.
#[derive(Debug, Clone)]
pub struct QClosureSpace {
    pa: Arc<PresheafCategory>,
    op: Vec<usize>,
}

impl QClosureSpace {
    /// Checks shape only; see [`QClosureSpace::validate`] for the laws.
    pub fn new(pa: Arc<PresheafCategory>, op: Vec<usize>) -> Result<Self> {
        if pa.variance() != Variance::Contravariant {
            return Err(Error::Precondition("closure spaces live on PA".into()));
        }
        if op.len() != pa.len() {
            return Err(Error::Structural(format!(
                "closure map needs {} entries, got {}",
                pa.len(),
                op.len()
            )));
        }
        if let Some(&j) = op.iter().find(|&&j| j >= pa.len()) {
            return Err(Error::Structural(format!("closure image #{j} outside PA")));
        }
        Ok(Self { pa, op })
    }

    pub fn identity(pa: Arc<PresheafCategory>) -> Result<Self> {
        let op = pa.objects().collect();
        Self::new(pa, op)
    }

    /// `C` as an endofunctor of `PA`.
    pub fn operator(&self) -> QFunctor {
        let c = self.pa.category().clone();
        QFunctor {
            source: c.clone(),
            target: c,
            map: self.op.clone(),
        }
    }

    /// Functor, `1 ≤ C`, `C∘C = C`.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let pa = &*self.pa;
        let f = self.operator();
        r.extend(f.validate().report);
        for m in pa.objects() {
            r.check(pa.local_leq(m, self.op[m]), "inflationary", || pa.object_name(m));
            r.check(self.op[self.op[m]] == self.op[m], "idempotent", || pa.object_name(m));
            r.check(pa.ty(self.op[m]) == pa.ty(m), "type preservation", || pa.object_name(m));
        }
        r
    }

    pub fn presheaves(&self) -> &Arc<PresheafCategory> {
        &self.pa
    }

    pub fn base(&self) -> &Arc<QCategory> {
        self.pa.base()
    }

    pub fn map(&self) -> &[usize] {
        &self.op
    }

    #[inline]
    pub fn apply(&self, m: usize) -> usize {
        self.op[m]
    }

    pub fn is_closed(&self, m: usize) -> bool {
        self.op[m] == m
    }

    /// `C(PA)`, in canonical order of `PA`.
    pub fn closed(&self) -> Vec<usize> {
        self.pa.objects().filter(|&m| self.is_closed(m)).collect()
    }

    /// `C(PA)` as a full subcategory of `PA`.
    pub fn fixed_category(&self) -> Arc<QCategory> {
        Arc::new(self.pa.subcategory(&self.closed()))
    }

    fn fixed_position(&self, m: usize) -> usize {
        self.closed().binary_search(&m).expect("object is closed")
    }
}

fn check_spaces(f: &QFunctor, c: &QClosureSpace, d: &QClosureSpace) -> Result<()> {
    if !same_category(&f.source, c.base()) || !same_category(&f.target, d.base()) {
        return Err(Error::BoundaryMismatch("closure spaces do not match the functor".into()));
    }
    Ok(())
}

fn forward_map(f: &QFunctor, c: &QClosureSpace, d: &QClosureSpace) -> Vec<usize> {
    let (pa, pb) = (c.presheaves(), d.presheaves());
    pa.objects()
        .map(|m| {
            let img = forward_presheaf(f, &pa.presheaf(m));
            pb.find(img.ty, &img.values).expect("presheaf")
        })
        .collect()
}

/// `F→∘C ≤ D∘F→` pointwise.
pub fn is_continuous(f: &QFunctor, c: &QClosureSpace, d: &QClosureSpace) -> Result<bool> {
    check_spaces(f, c, d)?;
    let fwd = forward_map(f, c, d);
    let pb = d.presheaves();
    Ok(c.presheaves().objects().all(|m| pb.local_leq(fwd[c.apply(m)], d.apply(fwd[m]))))
}

/// `F←(λ)` is `C`-closed for every `D`-closed `λ`.
pub fn preimages_of_closed_are_closed(f: &QFunctor, c: &QClosureSpace, d: &QClosureSpace) -> Result<bool> {
    check_spaces(f, c, d)?;
    let (pa, pb) = (c.presheaves(), d.presheaves());
    Ok(d.closed().into_iter().all(|l| {
        let img = backward_presheaf(f, &pb.presheaf(l));
        c.is_closed(pa.find(img.ty, &img.values).expect("presheaf"))
    }))
}

/// `C_A = Y∘sup`, defined when `A` is complete.
pub fn canonical_closure(a: Arc<QCategory>, cap: usize) -> Result<QClosureSpace> {
    let pa = Arc::new(PresheafCategory::contravariant(a.clone(), cap)?);
    let mut op = Vec::with_capacity(pa.len());
    for m in pa.objects() {
        let s = sup_search(&a, &pa.presheaf(m))
            .ok_or_else(|| Error::Precondition(format!("{} has no supremum", pa.object_name(m))))?;
        op.push(pa.yoneda_index(s));
    }
    QClosureSpace::new(pa, op)
}

/// `F▷ = D∘F→` on `C(PA)` and `F◁ = F←` on `D(PB)`.
pub fn triangle_functors(f: &QFunctor, c: &QClosureSpace, d: &QClosureSpace) -> Result<(QFunctor, QFunctor)> {
    if !is_continuous(f, c, d)? {
        return Err(Error::Precondition("functor is not continuous".into()));
    }
    let (pa, pb) = (c.presheaves(), d.presheaves());
    let fwd = forward_map(f, c, d);
    let (cx, dx) = (c.fixed_category(), d.fixed_category());
    let right = d
        .closed()
        .into_iter()
        .map(|l| {
            let img = backward_presheaf(f, &pb.presheaf(l));
            c.fixed_position(pa.find(img.ty, &img.values).expect("presheaf"))
        })
        .collect();
    let left = c.closed().into_iter().map(|m| d.fixed_position(d.apply(fwd[m]))).collect();
    Ok((
        QFunctor {
            source: cx.clone(),
            target: dx.clone(),
            map: left,
        },
        QFunctor {
            source: dx,
            target: cx,
            map: right,
        },
    ))
}

/// `η = C∘Y: A → C(PA)`.
pub fn eta_unit(space: &QClosureSpace) -> QFunctor {
    let pa = space.presheaves();
    let a = space.base();
    QFunctor {
        source: a.clone(),
        target: space.fixed_category(),
        map: a
            .objects()
            .map(|x| space.fixed_position(space.apply(pa.yoneda_index(x))))
            .collect(),
    }
}

/// Outcome of [`universal_extension`].
#[derive(Debug, Clone)]
pub struct UniversalExtension {
    /// `F̄ = sup_B∘F→` restricted to `C(PA)`.
    pub extension: QFunctor,
    pub is_left_adjoint: bool,
    /// `F̄∘η = F`.
    pub commutes: bool,
    /// No other left adjoint `H: C(PA) → B` satisfies `H∘η = F`.
    pub unique: bool,
}

/// The unique left adjoint extending a continuous `F: (A,C) → (B,C_B)` along `η`.
pub fn universal_extension(f: &QFunctor, c: &QClosureSpace, cap: usize) -> Result<UniversalExtension> {
    let b = f.target.clone();
    if !b.is_skeletal() {
        return Err(Error::Precondition("target is not skeletal".into()));
    }
    let cb = canonical_closure(b.clone(), cap)?;
    if !is_continuous(f, c, &cb)? {
        return Err(Error::Precondition("functor is not continuous into the canonical closure".into()));
    }
    let pa = c.presheaves();
    let closed = c.closed();
    let mut map = Vec::with_capacity(closed.len());
    for &m in &closed {
        let img = forward_presheaf(f, &pa.presheaf(m));
        map.push(sup_search(&b, &img).expect("target is complete"));
    }
    let ext = QFunctor {
        source: c.fixed_category(),
        target: b.clone(),
        map,
    };
    let eta = eta_unit(c);
    let is_left = crate::qcat::right_adjoint(&ext).is_some();
    let commutes = eta.then(&ext)?.map == f.map;
    let unique = enumerate_functors(&ext.source, &b)?
        .into_iter()
        .filter(|h| h.map != ext.map)
        .all(|h| crate::qcat::right_adjoint(&h).is_none() || eta.map.iter().map(|&i| h.map[i]).ne(f.map.iter().copied()));
    Ok(UniversalExtension {
        extension: ext,
        is_left_adjoint: is_left,
        commutes,
        unique,
    })
}

/// `F→` as a functor `PA → PB`, for callers that need the transported map.
pub fn forward_functor(f: &QFunctor, c: &QClosureSpace, d: &QClosureSpace) -> Result<QFunctor> {
    check_spaces(f, c, d)?;
    transport(f, Direction::Forward, c.presheaves(), d.presheaves())
}
