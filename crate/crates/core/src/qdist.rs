//! Q-distributors: composition, identities, implications, graphs and
//! cographs, adjunctions in Q-Dist, and infomorphisms.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presheaf::{CoPresheaf, Presheaf};
use crate::qcat::{same_category, QCategory, QFunctor};
use crate::quantaloid::Elem;
use crate::report::Report;

/// A matrix `φ(x,y) ∈ Q(tx,ty)` from `A` to `B`, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QDistributor {
    pub source: Arc<QCategory>,
    pub target: Arc<QCategory>,
    matrix: Vec<Elem>,
}

impl fmt::Debug for QDistributor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (&self.source, &self.target);
        let mut m = f.debug_map();
        for x in a.objects() {
            for y in b.objects() {
                let q = a.quantaloid();
                m.entry(
                    &format_args!("{},{}", a.name(x), b.name(y)),
                    &q.label(a.ty(x), b.ty(y), self.get(x, y)),
                );
            }
        }
        m.finish()
    }
}

impl QDistributor {
    pub fn new(source: Arc<QCategory>, target: Arc<QCategory>, matrix: Vec<Elem>) -> Result<Self> {
        if !source.same_base(&target) {
            return Err(Error::BoundaryMismatch("distributor between different quantaloids".into()));
        }
        let (n, m) = (source.len(), target.len());
        if matrix.len() != n * m {
            return Err(Error::Structural(format!("distributor matrix needs {} entries", n * m)));
        }
        let q = source.quantaloid();
        for x in 0..n {
            for y in 0..m {
                if matrix[x * m + y].idx() >= q.hom(source.ty(x), target.ty(y)).len() {
                    return Err(Error::Structural(format!(
                        "entry ({},{}) outside its carrier",
                        source.name(x),
                        target.name(y)
                    )));
                }
            }
        }
        Ok(Self { source, target, matrix })
    }

    pub fn from_fn(
        source: Arc<QCategory>,
        target: Arc<QCategory>,
        f: impl Fn(usize, usize) -> Elem,
    ) -> Result<Self> {
        let m = target.len();
        let matrix = (0..source.len() * m).map(|k| f(k / m, k % m)).collect();
        Self::new(source, target, matrix)
    }

    /// The constant-⊥ distributor.
    pub fn bottom(source: Arc<QCategory>, target: Arc<QCategory>) -> Result<Self> {
        let q = source.quantaloid().clone();
        let (s, t) = (source.clone(), target.clone());
        Self::from_fn(source, target, |x, y| q.bottom(s.ty(x), t.ty(y)))
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Elem {
        self.matrix[x * self.target.len() + y]
    }

    pub fn matrix(&self) -> &[Elem] {
        &self.matrix
    }

    pub fn set(&mut self, x: usize, y: usize, e: Elem) -> Result<()> {
        let q = self.source.quantaloid();
        if e.idx() >= q.hom(self.source.ty(x), self.target.ty(y)).len() {
            return Err(Error::Structural("element outside carrier".into()));
        }
        let m = self.target.len();
        self.matrix[x * m + y] = e;
        Ok(())
    }

    /// `B(y',y)∘φ(x,y') ≤ φ(x,y)` and `φ(x',y)∘A(x,x') ≤ φ(x,y)`.
    pub fn validate(&self) -> Report {
        let (a, b) = (&*self.source, &*self.target);
        let q = a.quantaloid();
        let mut r = Report::new();
        for x in a.objects() {
            for y in b.objects() {
                let xy = self.get(x, y);
                for y2 in b.objects() {
                    let c = q.comp(a.ty(x), b.ty(y2), b.ty(y), b.hom(y2, y), self.get(x, y2));
                    r.check(q.leq(a.ty(x), b.ty(y), c, xy), "target action", || {
                        format!("(x,y',y)=({},{},{})", a.name(x), b.name(y2), b.name(y))
                    });
                }
                for x2 in a.objects() {
                    let c = q.comp(a.ty(x), a.ty(x2), b.ty(y), self.get(x2, y), a.hom(x, x2));
                    r.check(q.leq(a.ty(x), b.ty(y), c, xy), "source action", || {
                        format!("(x,x',y)=({},{},{})", a.name(x), a.name(x2), b.name(y))
                    });
                }
            }
        }
        r
    }

    /// Pointwise (local) order `φ ≤ ψ`.
    pub fn leq(&self, other: &QDistributor) -> Result<bool> {
        self.check_parallel(other)?;
        let q = self.source.quantaloid();
        Ok(self.source.objects().all(|x| {
            self.target.objects().all(|y| {
                q.leq(self.source.ty(x), self.target.ty(y), self.get(x, y), other.get(x, y))
            })
        }))
    }

    fn check_parallel(&self, other: &QDistributor) -> Result<()> {
        if same_category(&self.source, &other.source) && same_category(&self.target, &other.target) {
            Ok(())
        } else {
            Err(Error::BoundaryMismatch("distributors are not parallel".into()))
        }
    }

    /// Row `φ(x,−)`, an object of `P†B`.
    pub fn row(&self, x: usize) -> CoPresheaf {
        CoPresheaf {
            ty: self.source.ty(x),
            values: self.target.objects().map(|y| self.get(x, y)).collect(),
        }
    }

    /// Column `φ(−,y)`, an object of `PA`.
    pub fn column(&self, y: usize) -> Presheaf {
        Presheaf {
            ty: self.target.ty(y),
            values: self.source.objects().map(|x| self.get(x, y)).collect(),
        }
    }
}

/// The hom matrix of `A` as a distributor `A ⇸ A`.
pub fn identity_dist(a: &Arc<QCategory>) -> QDistributor {
    QDistributor {
        source: a.clone(),
        target: a.clone(),
        matrix: a.hom_matrix().to_vec(),
    }
}

/// `(ψ∘φ)(x,z) = ⋁_y ψ(y,z)∘φ(x,y)`.
pub fn compose_dist(psi: &QDistributor, phi: &QDistributor) -> Result<QDistributor> {
    if !same_category(&phi.target, &psi.source) {
        return Err(Error::BoundaryMismatch("ψ∘φ needs φ.target = ψ.source".into()));
    }
    let (a, b, c) = (&phi.source, &phi.target, &psi.target);
    let q = a.quantaloid();
    QDistributor::from_fn(a.clone(), c.clone(), |x, z| {
        let h = q.hom(a.ty(x), c.ty(z));
        h.join_all(b.objects().map(|y| q.comp(a.ty(x), b.ty(y), c.ty(z), psi.get(y, z), phi.get(x, y))))
    })
}

/// `(η↙φ)(y,z) = ⋀_x η(x,z)↙φ(x,y)` for `η: A ⇸ C`, `φ: A ⇸ B`.
pub fn dist_left_implication(eta: &QDistributor, phi: &QDistributor) -> Result<QDistributor> {
    if !same_category(&eta.source, &phi.source) {
        return Err(Error::BoundaryMismatch("η↙φ needs a common source".into()));
    }
    let (a, b, c) = (&phi.source, &phi.target, &eta.target);
    let q = a.quantaloid();
    QDistributor::from_fn(b.clone(), c.clone(), |y, z| {
        let h = q.hom(b.ty(y), c.ty(z));
        h.meet_all(a.objects().map(|x| q.left_impl(a.ty(x), b.ty(y), c.ty(z), eta.get(x, z), phi.get(x, y))))
    })
}

/// `(ψ↘η)(x,y) = ⋀_z ψ(y,z)↘η(x,z)` for `ψ: B ⇸ C`, `η: A ⇸ C`.
pub fn dist_right_implication(psi: &QDistributor, eta: &QDistributor) -> Result<QDistributor> {
    if !same_category(&psi.target, &eta.target) {
        return Err(Error::BoundaryMismatch("ψ↘η needs a common target".into()));
    }
    let (a, b, c) = (&eta.source, &psi.source, &psi.target);
    let q = a.quantaloid();
    QDistributor::from_fn(a.clone(), b.clone(), |x, y| {
        let h = q.hom(a.ty(x), b.ty(y));
        h.meet_all(c.objects().map(|z| q.right_impl(b.ty(y), c.ty(z), a.ty(x), psi.get(y, z), eta.get(x, z))))
    })
}

/// `F_♮(x,y) = B(Fx,y)`.
pub fn graph(f: &QFunctor) -> QDistributor {
    let b = &f.target;
    QDistributor {
        source: f.source.clone(),
        target: b.clone(),
        matrix: f.source.objects().flat_map(|x| b.objects().map(move |y| b.hom(f.map[x], y))).collect(),
    }
}

/// `F^♮(y,x) = B(y,Fx)`.
pub fn cograph(f: &QFunctor) -> QDistributor {
    let b = &f.target;
    QDistributor {
        source: b.clone(),
        target: f.source.clone(),
        matrix: b.objects().flat_map(|y| f.source.objects().map(move |x| b.hom(y, f.map[x]))).collect(),
    }
}

/// `φ ⊣ ψ` iff `A ≤ ψ∘φ` and `φ∘ψ ≤ B` in the local order.
pub fn is_dist_adjunction(phi: &QDistributor, psi: &QDistributor) -> Result<bool> {
    if !same_category(&phi.source, &psi.target) || !same_category(&phi.target, &psi.source) {
        return Err(Error::BoundaryMismatch("adjunction needs φ: A⇸B, ψ: B⇸A".into()));
    }
    let unit = identity_dist(&phi.source).leq(&compose_dist(psi, phi)?)?;
    let counit = compose_dist(phi, psi)?.leq(&identity_dist(&phi.target))?;
    Ok(unit && counit)
}

/// A pair `F: A → A'`, `G: B' → B` between `φ: A ⇸ B` and `ψ: A' ⇸ B'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infomorphism {
    pub f: QFunctor,
    pub g: QFunctor,
    pub phi: QDistributor,
    pub psi: QDistributor,
}

impl Infomorphism {
    pub fn new(f: QFunctor, g: QFunctor, phi: QDistributor, psi: QDistributor) -> Result<Self> {
        check_info_boundaries(&f, &g, &phi, &psi)?;
        Ok(Self { f, g, phi, psi })
    }

    pub fn identity(phi: QDistributor) -> Self {
        Self {
            f: QFunctor::identity(phi.source.clone()),
            g: QFunctor::identity(phi.target.clone()),
            psi: phi.clone(),
            phi,
        }
    }

    pub fn holds(&self) -> bool {
        is_infomorphism(&self.f, &self.g, &self.phi, &self.psi).unwrap_or(false)
    }
}

fn check_info_boundaries(f: &QFunctor, g: &QFunctor, phi: &QDistributor, psi: &QDistributor) -> Result<()> {
    let ok = same_category(&f.source, &phi.source)
        && same_category(&f.target, &psi.source)
        && same_category(&g.source, &psi.target)
        && same_category(&g.target, &phi.target);
    if ok {
        Ok(())
    } else {
        Err(Error::BoundaryMismatch(
            "infomorphism needs F: A→A', G: B'→B for φ: A⇸B, ψ: A'⇸B'".into(),
        ))
    }
}

/// `φ(x,Gy') = ψ(Fx,y')` for all `x, y'`.
pub fn is_infomorphism(f: &QFunctor, g: &QFunctor, phi: &QDistributor, psi: &QDistributor) -> Result<bool> {
    check_info_boundaries(f, g, phi, psi)?;
    Ok(phi
        .source
        .objects()
        .all(|x| psi.target.objects().all(|y2| phi.get(x, g.map[y2]) == psi.get(f.map[x], y2))))
}

/// `(F',G')∘(F,G) = (F'∘F, G∘G')`.
pub fn compose_infomorphisms(first: &Infomorphism, second: &Infomorphism) -> Result<Infomorphism> {
    if first.psi != second.phi {
        return Err(Error::BoundaryMismatch("infomorphisms do not share the middle distributor".into()));
    }
    Ok(Infomorphism {
        f: first.f.then(&second.f)?,
        g: second.g.then(&first.g)?,
        phi: first.phi.clone(),
        psi: second.psi.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcat::QTypedSet;
    use crate::quantaloid::{boolean, Obj};

    fn ctx() -> (Arc<QCategory>, Arc<QCategory>, QDistributor) {
        let q = Arc::new(boolean());
        let a = Arc::new(QCategory::discrete(q.clone(), QTypedSet::uniform(["x1", "x2"], Obj(0))).unwrap());
        let b = Arc::new(QCategory::discrete(q, QTypedSet::uniform(["y1", "y2"], Obj(0))).unwrap());
        let inc = [[1, 1], [0, 1]];
        let phi = QDistributor::from_fn(a.clone(), b.clone(), |x, y| Elem(inc[x][y])).unwrap();
        (a, b, phi)
    }

    fn star(c: &Arc<QCategory>) -> Arc<QCategory> {
        Arc::new(QCategory::star(c.quantaloid().clone(), Obj(0)).unwrap())
    }

    #[test]
    fn ctx_is_a_distributor() {
        let (a, _, phi) = ctx();
        assert!(phi.validate().is_empty());
        assert!(identity_dist(&a).validate().is_empty());
    }

    #[test]
    fn monotonicity_violation_has_witness() {
        let q = Arc::new(boolean());
        let a = Arc::new(
            QCategory::from_fn(q.clone(), QTypedSet::uniform(["x", "x'"], Obj(0)), |i, j| Elem((i <= j) as u16))
                .unwrap(),
        );
        let s = Arc::new(QCategory::star(q, Obj(0)).unwrap());
        let phi = QDistributor::new(a, s, vec![Elem(0), Elem(1)]).unwrap();
        let r = phi.validate();
        assert!(r.has_law("source action"));
        assert_eq!(r.violations[0].witness, "(x,x',y)=(x,x',*)");
    }

    #[test]
    fn ctx_compositions_and_implications() {
        let (a, b, phi) = ctx();
        let s = star(&a);
        let psi = QDistributor::new(b.clone(), s.clone(), vec![Elem(1), Elem(0)]).unwrap();
        assert_eq!(compose_dist(&psi, &phi).unwrap().matrix(), &[Elem(1), Elem(0)]);
        assert_eq!(compose_dist(&psi, &identity_dist(&b)).unwrap(), psi);

        // Y x1 as a distributor A ⇸ *
        let yx1 = QDistributor::new(a.clone(), s.clone(), vec![Elem(1), Elem(0)]).unwrap();
        let r = dist_left_implication(&phi, &yx1).unwrap();
        assert_eq!(r.matrix(), &[Elem(1), Elem(1)]);
        assert_eq!(dist_left_implication(&phi, &identity_dist(&a)).unwrap(), phi);
        assert_eq!(dist_right_implication(&identity_dist(&b), &phi).unwrap(), phi);
    }

    #[test]
    fn empty_boundaries() {
        let (a, _, _) = ctx();
        let q = a.quantaloid().clone();
        let e = Arc::new(QCategory::discrete(q, QTypedSet::default()).unwrap());
        let ae = QDistributor::bottom(a.clone(), e.clone()).unwrap();
        let ea = QDistributor::bottom(e.clone(), a.clone()).unwrap();
        assert_eq!(compose_dist(&ea, &ae).unwrap().matrix(), &[Elem(0); 4]);
        let ea2 = QDistributor::bottom(e.clone(), a.clone()).unwrap();
        assert_eq!(dist_left_implication(&ea2, &ea).unwrap().matrix(), &[Elem(1); 4]);
        assert_eq!(dist_right_implication(&ae, &ae).unwrap().matrix(), &[Elem(1); 4]);
    }

    #[test]
    fn graphs_and_adjunctions() {
        let (a, b, phi) = ctx();
        let id = QFunctor::identity(a.clone());
        assert_eq!(graph(&id), identity_dist(&a));
        assert_eq!(cograph(&id), identity_dist(&a));
        assert!(is_dist_adjunction(&graph(&id), &cograph(&id)).unwrap());

        let s = star(&a);
        let f = QFunctor::new(s.clone(), b.clone(), vec![0]).unwrap();
        assert_eq!(graph(&f).matrix(), &[Elem(1), Elem(0)]);
        assert!(is_dist_adjunction(&graph(&f), &cograph(&f)).unwrap());
        assert_eq!(compose_dist(&cograph(&f), &graph(&f)).unwrap(), identity_dist(&s));

        let t = QDistributor::from_fn(b.clone(), a.clone(), |y, x| phi.get(x, y)).unwrap();
        assert!(!is_dist_adjunction(&phi, &t).unwrap());
    }

    #[test]
    fn infomorphisms() {
        let (a, b, phi) = ctx();
        let idi = Infomorphism::identity(phi.clone());
        assert!(idi.holds());
        let c = compose_infomorphisms(&idi, &idi).unwrap();
        assert_eq!(c, idi);

        let sub = Arc::new(a.full_subcategory(&[0]).unwrap());
        let restricted = QDistributor::from_fn(sub.clone(), b.clone(), |_, y| phi.get(0, y)).unwrap();
        // (G, F) direction: F: sub → A inclusion, G = id_B, between restricted and phi
        let inc = QFunctor::new(sub.clone(), a.clone(), vec![0]).unwrap();
        let gid = QFunctor::identity(b.clone());
        assert!(is_infomorphism(&inc, &gid, &restricted, &phi).unwrap());
        let wrong = QFunctor::new(sub, a.clone(), vec![1]).unwrap();
        assert!(!is_infomorphism(&wrong, &gid, &restricted, &phi).unwrap());
    }
}
