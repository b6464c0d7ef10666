//! Kan adjunctions `φ* ⊣ φ_*`, the complete category `K(φ)`, pointwise Kan
//! extensions, and negation of categories and distributors over a Girard
//! quantaloid.

use std::sync::Arc;

use crate::closure::QClosureSpace;
use crate::error::{Error, Result};
use crate::isbell::{phi_down, phi_up, zeta, ConceptLattice, IsbellAdjunction, LatticeKind};
use crate::presheaf::{backward_presheaf, sup_search, CoPresheaf, Presheaf, PresheafCategory};
use crate::qcat::{same_category, QCategory, QFunctor};
use crate::qdist::{cograph, graph, QDistributor};
use crate::quantaloid::{DualizingFamily, Quantaloid};
use crate::report::Report;

fn check_len(c: &QCategory, n: usize) -> Result<()> {
    if n != c.len() {
        return Err(Error::BoundaryMismatch(format!(
            "presheaf has {n} values over a category with {} objects",
            c.len()
        )));
    }
    Ok(())
}

/// `φ*(λ) = λ∘φ`, i.e. `x ↦ ⋁_y λ(y)∘φ(x,y)`, from `PB` to `PA`.
pub fn phi_star(phi: &QDistributor, lam: &Presheaf) -> Result<Presheaf> {
    let (a, b) = (&*phi.source, &*phi.target);
    check_len(b, lam.values.len())?;
    let q = a.quantaloid();
    let t = lam.ty;
    Ok(Presheaf {
        ty: t,
        values: a
            .objects()
            .map(|x| {
                q.hom(a.ty(x), t)
                    .join_all(b.objects().map(|y| q.comp(a.ty(x), b.ty(y), t, lam.values[y], phi.get(x, y))))
            })
            .collect(),
    })
}

/// `φ_*(μ) = μ↙φ`, i.e. `y ↦ ⋀_x μ(x)↙φ(x,y)`, from `PA` to `PB`.
pub fn phi_lowstar(phi: &QDistributor, mu: &Presheaf) -> Result<Presheaf> {
    let (a, b) = (&*phi.source, &*phi.target);
    check_len(a, mu.values.len())?;
    let q = a.quantaloid();
    let t = mu.ty;
    Ok(Presheaf {
        ty: t,
        values: b
            .objects()
            .map(|y| {
                q.hom(b.ty(y), t)
                    .meet_all(a.objects().map(|x| q.left_impl(a.ty(x), b.ty(y), t, mu.values[x], phi.get(x, y))))
            })
            .collect(),
    })
}

/// `φ*` and `φ_*` tabulated over `PB` and `PA`.
#[derive(Debug, Clone)]
pub struct KanAdjunction {
    pub phi: QDistributor,
    pub pa: Arc<PresheafCategory>,
    pub pb: Arc<PresheafCategory>,
    /// `PB → PA`.
    pub star: Vec<usize>,
    /// `PA → PB`.
    pub lowstar: Vec<usize>,
}

impl KanAdjunction {
    pub fn new(phi: &QDistributor, cap: usize) -> Result<Self> {
        let pa = Arc::new(PresheafCategory::contravariant(phi.source.clone(), cap)?);
        let pb = Arc::new(PresheafCategory::contravariant(phi.target.clone(), cap)?);
        Self::with_presheaves(phi, pa, pb)
    }

    pub fn with_presheaves(phi: &QDistributor, pa: Arc<PresheafCategory>, pb: Arc<PresheafCategory>) -> Result<Self> {
        if !same_category(pa.base(), &phi.source) || !same_category(pb.base(), &phi.target) {
            return Err(Error::BoundaryMismatch("presheaf categories do not match φ".into()));
        }
        let bad = || Error::Precondition("φ is not a distributor".into());
        let star = pb
            .objects()
            .map(|l| pa.index_of(&phi_star(phi, &pb.presheaf(l))?).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        let lowstar = pa
            .objects()
            .map(|m| pb.index_of(&phi_lowstar(phi, &pa.presheaf(m))?).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            phi: phi.clone(),
            pa,
            pb,
            star,
            lowstar,
        })
    }

    /// `φ_*∘φ*` on `PB`.
    pub fn closure(&self) -> QClosureSpace {
        let op = self.star.iter().map(|&m| self.lowstar[m]).collect();
        QClosureSpace::new(self.pb.clone(), op).expect("indices are in range")
    }

    /// `PA(φ*λ, μ) = PB(λ, φ_*μ)` for all `λ`, `μ`; the first failure.
    pub fn adjunction_failure(&self) -> Option<(usize, usize)> {
        for l in self.pb.objects() {
            for m in self.pa.objects() {
                if self.pa.hom(self.star[l], m) != self.pb.hom(l, self.lowstar[m]) {
                    return Some((l, m));
                }
            }
        }
        None
    }
}

/// `φ_*∘φ*` as a closure space on `B`.
pub fn kan_closure(phi: &QDistributor, cap: usize) -> Result<QClosureSpace> {
    Ok(KanAdjunction::new(phi, cap)?.closure())
}

/// `K(φ)`: the presheaves on `B` fixed by `φ_*∘φ*`.
pub fn kan_lattice(phi: &QDistributor, cap: usize) -> Result<ConceptLattice> {
    let space = kan_closure(phi, cap)?;
    Ok(ConceptLattice::from_closure(LatticeKind::Kan, phi, &space))
}

/// `(F^♮)_* = F← = (F_♮)*` on `PB`, plus both Kan adjunctions, and for fully
/// faithful `F` the two restriction identities along `F_♮`.
pub fn why_kan_check(f: &QFunctor, cap: usize) -> Result<Report> {
    let pa = Arc::new(PresheafCategory::contravariant(f.source.clone(), cap)?);
    let pb = Arc::new(PresheafCategory::contravariant(f.target.clone(), cap)?);
    why_kan_check_with(f, &pa, &pb)
}

/// [`why_kan_check`] over already enumerated presheaf categories.
pub fn why_kan_check_with(f: &QFunctor, pa: &Arc<PresheafCategory>, pb: &Arc<PresheafCategory>) -> Result<Report> {
    let mut r = Report::new();
    let g = graph(f);
    let c = cograph(f);
    // the graph runs A ⇸ B, the cograph B ⇸ A
    let kg = KanAdjunction::with_presheaves(&g, pa.clone(), pb.clone())?;
    let kc = KanAdjunction::with_presheaves(&c, pb.clone(), pa.clone())?;
    for l in pb.objects() {
        let lam = pb.presheaf(l);
        let back = pa.index_of(&backward_presheaf(f, &lam)).expect("presheaf");
        let name = || pb.object_name(l);
        r.check(kc.lowstar[l] == back, "cograph lower star equals F←", name);
        r.check(kg.star[l] == back, "graph star equals F←", name);
    }
    if let Some((x, y)) = kg.adjunction_failure() {
        r.push("graph Kan adjunction", format!("({}, {})", pb.object_name(x), pa.object_name(y)));
    }
    if let Some((x, y)) = kc.adjunction_failure() {
        r.push("cograph Kan adjunction", format!("({}, {})", pa.object_name(x), pb.object_name(y)));
    }
    if f.validate().is_fully_faithful {
        for m in pa.objects() {
            let mu = pa.presheaf(m);
            // (F^♮)*(μ)∘F_♮ and (F_♮)_*(μ)∘F_♮, both presheaves on A
            for (law, nu) in [
                ("cograph star restricts to identity", pb.presheaf(kc.star[m])),
                ("graph lower star restricts to identity", pb.presheaf(kg.lowstar[m])),
            ] {
                let back = phi_star(&g, &nu)?;
                r.check(back == mu, law, || pa.object_name(m));
            }
        }
    }
    Ok(r)
}

/// Outcome of [`pointwise_kan_extension`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseKan {
    /// `B↙((F^♮)*(G_♮(−,c)))`, a covariant presheaf on `B`.
    pub presheaf: CoPresheaf,
    /// First object `b` of `B` with `B(b,−)` equal to the presheaf.
    pub representing: Option<usize>,
}

/// The pointwise formula at `c ∈ C` for `F: A → B`, `G: A → C`.
pub fn pointwise_kan_extension(f: &QFunctor, g: &QFunctor, c: usize) -> Result<PointwiseKan> {
    if !same_category(&f.source, &g.source) {
        return Err(Error::BoundaryMismatch("F and G need a common source".into()));
    }
    if c >= g.target.len() {
        return Err(Error::UnknownObject(format!("object #{c}")));
    }
    let b = &f.target;
    let q = b.quantaloid();
    // G_♮(−,c) as a presheaf on A, then (F^♮)* of it as a presheaf on B
    let col = graph(g).column(c);
    let nu = phi_star(&cograph(f), &col)?;
    let t = nu.ty;
    let values = b
        .objects()
        .map(|y| {
            q.hom(t, b.ty(y))
                .meet_all(b.objects().map(|y2| q.left_impl(b.ty(y2), t, b.ty(y), b.hom(y2, y), nu.values[y2])))
        })
        .collect();
    let presheaf = CoPresheaf { ty: t, values };
    let representing = b
        .objects()
        .find(|&y| b.ty(y) == t && b.objects().all(|z| b.hom(y, z) == presheaf.values[z]));
    debug_assert_eq!(representing.is_some(), sup_search(b, &nu).is_some());
    Ok(PointwiseKan { presheaf, representing })
}

/// A quantaloid with a validated cyclic dualizing family.
#[derive(Debug, Clone)]
pub struct GirardDistributorContext {
    q: Arc<Quantaloid>,
    family: DualizingFamily,
}

impl GirardDistributorContext {
    /// Uses the family attached to `q`.
    pub fn new(q: Arc<Quantaloid>) -> Result<Self> {
        let family = q.dualizing().cloned().ok_or(Error::NotGirard)?;
        Self::with_family(q, family)
    }

    pub fn with_family(q: Arc<Quantaloid>, family: DualizingFamily) -> Result<Self> {
        family.check_structure(&q)?;
        let r = family.validate(&q);
        if !r.is_empty() {
            return Err(Error::InvalidFamily(r.to_string().trim().to_string()));
        }
        Ok(Self { q, family })
    }

    pub fn quantaloid(&self) -> &Arc<Quantaloid> {
        &self.q
    }

    pub fn family(&self) -> &DualizingFamily {
        &self.family
    }

    fn check(&self, c: &QCategory) -> Result<()> {
        if Arc::ptr_eq(c.quantaloid(), &self.q) || **c.quantaloid() == *self.q {
            Ok(())
        } else {
            Err(Error::BoundaryMismatch("category over a different quantaloid".into()))
        }
    }

    /// `(¬A)(y,x) = ¬A(x,y)` as a distributor `A ⇸ A`.
    pub fn neg_category(&self, a: &Arc<QCategory>) -> Result<QDistributor> {
        self.check(a)?;
        let q = &*self.q;
        QDistributor::from_fn(a.clone(), a.clone(), |u, v| self.family.neg(q, a.ty(v), a.ty(u), a.hom(v, u)))
    }

    /// `(¬φ)(y,x) = ¬φ(x,y)`.
    pub fn neg_entrywise(&self, phi: &QDistributor) -> Result<QDistributor> {
        self.check(&phi.source)?;
        let q = &*self.q;
        let (a, b) = (&phi.source, &phi.target);
        QDistributor::from_fn(b.clone(), a.clone(), |y, x| self.family.neg(q, a.ty(x), b.ty(y), phi.get(x, y)))
    }

    /// `¬λ` for a copresheaf: `x ↦ ¬λ(x)`, a presheaf.
    pub fn neg_copresheaf(&self, a: &QCategory, lam: &CoPresheaf) -> Presheaf {
        Presheaf {
            ty: lam.ty,
            values: a
                .objects()
                .map(|x| self.family.neg(&self.q, lam.ty, a.ty(x), lam.values[x]))
                .collect(),
        }
    }

    /// `¬μ` for a presheaf: `x ↦ ¬μ(x)`, a copresheaf.
    pub fn neg_presheaf(&self, a: &QCategory, mu: &Presheaf) -> CoPresheaf {
        CoPresheaf {
            ty: mu.ty,
            values: a
                .objects()
                .map(|x| self.family.neg(&self.q, a.ty(x), mu.ty, mu.values[x]))
                .collect(),
        }
    }
}

/// `¬φ = ¬A↙φ`; checked against `φ↘¬B`.
pub fn neg_dist(ctx: &GirardDistributorContext, phi: &QDistributor) -> Result<QDistributor> {
    let r = phi.validate();
    if !r.is_empty() {
        return Err(Error::Precondition(format!("not a distributor: {}", r.to_string().trim())));
    }
    let na = ctx.neg_category(&phi.source)?;
    let nb = ctx.neg_category(&phi.target)?;
    let left = crate::qdist::dist_left_implication(&na, phi)?;
    let right = crate::qdist::dist_right_implication(phi, &nb)?;
    if left != right {
        return Err(Error::InvalidFamily("the two negation formulas disagree".into()));
    }
    Ok(left)
}

/// `φ* = ¬∘(¬φ)↑` and `φ_* = (¬φ)↓∘¬` on every presheaf, `¬¬φ = φ`, the
/// entrywise form of `¬φ`, `φ_*φ* = (¬φ)↓(¬φ)↑`, and `K(¬ζ_C) = C(PA)` for
/// the Isbell closure `C` of `φ`.
pub fn girard_kan_identity_check(ctx: &GirardDistributorContext, phi: &QDistributor, cap: usize) -> Result<Report> {
    let mut r = Report::new();
    let a = &phi.source;
    let nphi = neg_dist(ctx, phi)?;
    r.check(nphi == ctx.neg_entrywise(phi)?, "entrywise negation", || "¬φ".into());
    r.check(neg_dist(ctx, &nphi)? == *phi, "double negation", || "¬¬φ".into());

    let kan = KanAdjunction::new(phi, cap)?;
    let (pa, pb) = (&kan.pa, &kan.pb);
    for l in pb.objects() {
        let lam = pb.presheaf(l);
        let lhs = pa.presheaf(kan.star[l]);
        let rhs = ctx.neg_copresheaf(a, &phi_up(&nphi, &lam)?);
        r.check(lhs == rhs, "star via negated Isbell up", || pb.object_name(l));
    }
    for m in pa.objects() {
        let mu = pa.presheaf(m);
        let lhs = pb.presheaf(kan.lowstar[m]);
        let rhs = phi_down(&nphi, &ctx.neg_presheaf(a, &mu))?;
        r.check(lhs == rhs, "lower star via negated Isbell down", || pa.object_name(m));
    }
    // V = U∘¬ on φ
    let isb = IsbellAdjunction::new(&nphi, cap)?;
    let u = isb.closure();
    let v = kan.closure();
    r.check(u.map() == v.map(), "Kan closure equals Isbell closure of ¬φ", String::new);

    // G = ¬∘F is a right inverse of V: K(¬ζ_C) = C(PA)
    let c = IsbellAdjunction::new(phi, cap)?.closure();
    let z = zeta(&c);
    let nz = neg_dist(ctx, &z)?;
    let kz = KanAdjunction::with_presheaves(
        &nz,
        Arc::new(PresheafCategory::contravariant(nz.source.clone(), cap)?),
        c.presheaves().clone(),
    )?;
    r.check(kz.closure().map() == c.map(), "K(¬ζ_C) = C", String::new);
    Ok(r)
}

#[cfg(test)]
mod tests;
