//! Isbell adjunctions `φ↑ ⊣ φ↓`, the complete category `M(φ)` of concept
//! pairs, closure spaces from infomorphisms, state property systems and the
//! dense-pair characterization of `M(φ)`.

use std::fmt;
use std::sync::Arc;

use crate::closure::{is_continuous, QClosureSpace};
use crate::error::{Error, Result};
use crate::presheaf::{inf_search, is_complete, CoPresheaf, Presheaf, PresheafCategory};
use crate::qcat::{same_category, QCategory, QFunctor};
use crate::qdist::{is_infomorphism, Infomorphism, QDistributor};
use crate::quantaloid::Elem;

fn check_len(c: &QCategory, n: usize, what: &str) -> Result<()> {
    if n != c.len() {
        return Err(Error::BoundaryMismatch(format!(
            "{what} has {n} values over a category with {} objects",
            c.len()
        )));
    }
    Ok(())
}

/// `φ↑(μ) = φ↙μ`, i.e. `y ↦ ⋀_x φ(x,y)↙μ(x)`.
pub fn phi_up(phi: &QDistributor, mu: &Presheaf) -> Result<CoPresheaf> {
    let (a, b) = (&*phi.source, &*phi.target);
    check_len(a, mu.values.len(), "presheaf")?;
    let q = a.quantaloid();
    let t = mu.ty;
    Ok(CoPresheaf {
        ty: t,
        values: b
            .objects()
            .map(|y| {
                q.hom(t, b.ty(y))
                    .meet_all(a.objects().map(|x| q.left_impl(a.ty(x), t, b.ty(y), phi.get(x, y), mu.values[x])))
            })
            .collect(),
    })
}

/// `φ↓(λ) = λ↘φ`, i.e. `x ↦ ⋀_y λ(y)↘φ(x,y)`.
pub fn phi_down(phi: &QDistributor, lam: &CoPresheaf) -> Result<Presheaf> {
    let (a, b) = (&*phi.source, &*phi.target);
    check_len(b, lam.values.len(), "copresheaf")?;
    let q = a.quantaloid();
    let t = lam.ty;
    Ok(Presheaf {
        ty: t,
        values: a
            .objects()
            .map(|x| {
                q.hom(a.ty(x), t)
                    .meet_all(b.objects().map(|y| q.right_impl(t, b.ty(y), a.ty(x), lam.values[y], phi.get(x, y))))
            })
            .collect(),
    })
}

/// `φ↑` and `φ↓` tabulated over the enumerations of `PA` and `P†B`.
#[derive(Debug, Clone)]
pub struct IsbellAdjunction {
    pub phi: QDistributor,
    pub pa: Arc<PresheafCategory>,
    pub pdb: Arc<PresheafCategory>,
    /// `PA → P†B`.
    pub up: Vec<usize>,
    /// `P†B → PA`.
    pub down: Vec<usize>,
}

impl IsbellAdjunction {
    pub fn new(phi: &QDistributor, cap: usize) -> Result<Self> {
        let pa = Arc::new(PresheafCategory::contravariant(phi.source.clone(), cap)?);
        let pdb = Arc::new(PresheafCategory::covariant(phi.target.clone(), cap)?);
        Self::with_presheaves(phi, pa, pdb)
    }

    pub fn with_presheaves(phi: &QDistributor, pa: Arc<PresheafCategory>, pdb: Arc<PresheafCategory>) -> Result<Self> {
        if !same_category(pa.base(), &phi.source) || !same_category(pdb.base(), &phi.target) {
            return Err(Error::BoundaryMismatch("presheaf categories do not match φ".into()));
        }
        let up = pa
            .objects()
            .map(|m| {
                let l = phi_up(phi, &pa.presheaf(m))?;
                pdb.index_of_co(&l)
                    .ok_or_else(|| Error::Precondition("φ is not a distributor".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let down = pdb
            .objects()
            .map(|l| {
                let m = phi_down(phi, &pdb.copresheaf(l))?;
                pa.index_of(&m)
                    .ok_or_else(|| Error::Precondition("φ is not a distributor".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            phi: phi.clone(),
            pa,
            pdb,
            up,
            down,
        })
    }

    /// `φ↓∘φ↑` on `PA`.
    pub fn closure(&self) -> QClosureSpace {
        let op = self.up.iter().map(|&l| self.down[l]).collect();
        QClosureSpace::new(self.pa.clone(), op).expect("indices are in range")
    }

    /// `φ↑∘φ↓` on `P†B`.
    pub fn interior(&self) -> Vec<usize> {
        self.down.iter().map(|&m| self.up[m]).collect()
    }

    /// `P†B(φ↑μ, λ) = PA(μ, φ↓λ)` for every `μ`, `λ`; returns the first failure.
    pub fn adjunction_failure(&self) -> Option<(usize, usize)> {
        for m in self.pa.objects() {
            for l in self.pdb.objects() {
                if self.pdb.hom(self.up[m], l) != self.pa.hom(m, self.down[l]) {
                    return Some((m, l));
                }
            }
        }
        None
    }
}

/// Isbell (`M(φ)`) or Kan (`K(φ)`) fixed points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Isbell,
    Kan,
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeKind::Isbell => "isbell",
            LatticeKind::Kan => "kan",
        })
    }
}

/// The fixed points of `φ↓∘φ↑` on `PA` (Isbell) or `φ_*∘φ*` on `PB` (Kan),
/// stored as canonically ordered extents with their induced homs.
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    pub kind: LatticeKind,
    pub phi: QDistributor,
    /// The presheaf category holding the extents (`PA` or `PB`).
    pub space: Arc<PresheafCategory>,
    /// Indices of extents in `space`.
    pub extents: Vec<usize>,
    /// The fixed points as a Q-category.
    pub category: Arc<QCategory>,
}

impl ConceptLattice {
    pub fn len(&self) -> usize {
        self.extents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extents.is_empty()
    }

    pub fn extent(&self, i: usize) -> Presheaf {
        self.space.presheaf(self.extents[i])
    }

    /// `φ↑` of the extent; only Isbell lattices carry intents.
    pub fn intent(&self, i: usize) -> Option<CoPresheaf> {
        match self.kind {
            LatticeKind::Isbell => Some(phi_up(&self.phi, &self.extent(i)).expect("shapes match")),
            LatticeKind::Kan => None,
        }
    }

    pub fn position(&self, extent: &Presheaf) -> Option<usize> {
        let m = self.space.index_of(extent)?;
        self.extents.binary_search(&m).ok()
    }

    pub fn hom(&self, i: usize, j: usize) -> Elem {
        self.category.hom(i, j)
    }

    pub(crate) fn from_closure(kind: LatticeKind, phi: &QDistributor, space: &QClosureSpace) -> Self {
        let extents = space.closed();
        let category = Arc::new(space.presheaves().subcategory(&extents));
        Self {
            kind,
            phi: phi.clone(),
            space: space.presheaves().clone(),
            extents,
            category,
        }
    }
}

/// `φ↓∘φ↑` as a closure space on `A`.
pub fn isbell_closure(phi: &QDistributor, cap: usize) -> Result<QClosureSpace> {
    Ok(IsbellAdjunction::new(phi, cap)?.closure())
}

/// `M(φ)`: every presheaf closed under `φ↓∘φ↑`, paired with its intent.
pub fn concept_lattice(phi: &QDistributor, cap: usize) -> Result<ConceptLattice> {
    let adj = IsbellAdjunction::new(phi, cap)?;
    Ok(ConceptLattice::from_closure(LatticeKind::Isbell, phi, &adj.closure()))
}

/// For an infomorphism `(F,G): φ → ψ`, certifies that `F` is continuous
/// `(A, φ↓φ↑) → (A', ψ↓ψ↑)` and returns it.
pub fn infomorphism_to_continuous(info: &Infomorphism, cap: usize) -> Result<QFunctor> {
    if !is_infomorphism(&info.f, &info.g, &info.phi, &info.psi)? {
        return Err(Error::Precondition("not an infomorphism".into()));
    }
    let c = isbell_closure(&info.phi, cap)?;
    let d = isbell_closure(&info.psi, cap)?;
    if !is_continuous(&info.f, &c, &d)? {
        return Err(Error::Precondition("infomorphism did not yield a continuous map".into()));
    }
    Ok(info.f.clone())
}

/// `ζ_C(x, μ) = μ(x)` from `A` to `C(PA)`.
pub fn zeta(space: &QClosureSpace) -> QDistributor {
    let pa = space.presheaves();
    let closed = space.closed();
    QDistributor::from_fn(space.base().clone(), space.fixed_category(), |x, j| pa.values(closed[j])[x])
        .expect("closed presheaves have values in the right carriers")
}

/// Outcome of [`is_state_property_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpsCheck {
    pub holds: bool,
    /// First failing condition with its witness.
    pub failure: Option<String>,
}

fn require_complete_skeletal(b: &Arc<QCategory>, cap: usize) -> Result<()> {
    if !b.is_skeletal() {
        return Err(Error::Precondition("target is not skeletal".into()));
    }
    let pb = PresheafCategory::contravariant(b.clone(), cap)?;
    if !is_complete(&pb)?.complete {
        return Err(Error::Precondition("target is not complete".into()));
    }
    Ok(())
}

/// `φ(−, inf λ) = λ↘φ` for every `λ ∈ P†B` and `B(y,y') = φ(−,y')↙φ(−,y)`.
pub fn is_state_property_system(phi: &QDistributor, cap: usize) -> Result<SpsCheck> {
    let (a, b) = (&phi.source, &phi.target);
    require_complete_skeletal(b, cap)?;
    let pdb = PresheafCategory::covariant(b.clone(), cap)?;
    for l in pdb.objects() {
        let lam = pdb.copresheaf(l);
        let inf = inf_search(b, &lam).expect("complete");
        let want = phi_down(phi, &lam)?;
        if phi.column(inf).values != want.values {
            return Ok(SpsCheck {
                holds: false,
                failure: Some(format!("infimum condition at {}", pdb.object_name(l))),
            });
        }
    }
    let q = a.quantaloid();
    for y in b.objects() {
        for y2 in b.objects() {
            let (cy, cy2) = (phi.column(y), phi.column(y2));
            let h = q.hom(b.ty(y), b.ty(y2)).meet_all(
                a.objects()
                    .map(|x| q.left_impl(a.ty(x), b.ty(y), b.ty(y2), cy2.values[x], cy.values[x])),
            );
            if h != b.hom(y, y2) {
                return Ok(SpsCheck {
                    holds: false,
                    failure: Some(format!("hom condition at ({},{})", b.name(y), b.name(y2))),
                });
            }
        }
    }
    Ok(SpsCheck {
        holds: true,
        failure: None,
    })
}

/// The column map `y ↦ φ(−,y)` of a state property system, as a functor into
/// the fixed points of `φ↓∘φ↑`, together with whether it is an isomorphism.
pub fn sps_unit(phi: &QDistributor, cap: usize) -> Result<(QFunctor, bool)> {
    let check = is_state_property_system(phi, cap)?;
    if !check.holds {
        return Err(Error::Precondition(format!(
            "not a state property system: {}",
            check.failure.unwrap_or_default()
        )));
    }
    let space = isbell_closure(phi, cap)?;
    let pa = space.presheaves();
    let closed = space.closed();
    let b = &phi.target;
    let map = b
        .objects()
        .map(|y| {
            let m = pa.index_of(&phi.column(y)).expect("columns are presheaves");
            closed.binary_search(&m).expect("columns are closed")
        })
        .collect();
    let f = QFunctor {
        source: b.clone(),
        target: space.fixed_category(),
        map,
    };
    let iso = is_isomorphism(&f);
    Ok((f, iso))
}

/// Bijective on objects and fully faithful.
pub fn is_isomorphism(f: &QFunctor) -> bool {
    let mut seen = vec![false; f.target.len()];
    for &y in &f.map {
        if seen[y] {
            return false;
        }
        seen[y] = true;
    }
    seen.iter().all(|&s| s) && f.validate().is_fully_faithful
}

/// `Fa = (φ↓φ(a,−), φ(a,−))` and `Gb = (φ(−,b), φ↑φ(−,b))` into `M(φ)`.
pub fn dense_pair_reconstruction(m: &ConceptLattice) -> Result<(QFunctor, QFunctor)> {
    if m.kind != LatticeKind::Isbell {
        return Err(Error::Precondition("dense pairs live on Isbell lattices".into()));
    }
    let phi = &m.phi;
    let (a, b) = (&phi.source, &phi.target);
    let f = a
        .objects()
        .map(|x| {
            let ext = phi_down(phi, &phi.row(x))?;
            m.position(&ext).ok_or_else(|| Error::Precondition("extent not closed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = b
        .objects()
        .map(|y| m.position(&phi.column(y)).ok_or_else(|| Error::Precondition("column not closed".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        QFunctor {
            source: a.clone(),
            target: m.category.clone(),
            map: f,
        },
        QFunctor {
            source: b.clone(),
            target: m.category.clone(),
            map: g,
        },
    ))
}

/// Outcome of [`certify_dense_pair`].
#[derive(Debug, Clone)]
pub enum Certification {
    /// `H x = (X(F−,x), X(x,G−))`, an isomorphism `X → M(φ)`.
    Iso(QFunctor),
    /// The first failing condition, in the order: `F` sup-dense, `G`
    /// inf-dense, `X(F−,G−) = φ`, `H` an isomorphism.
    Counterexample(String),
}

/// Given complete skeletal `X`, `F: A → X`, `G: B → X`, either builds the
/// isomorphism onto `M(φ)` or reports why the dense-pair conditions fail.
pub fn certify_dense_pair(
    phi: &QDistributor,
    x: &Arc<QCategory>,
    f: &QFunctor,
    g: &QFunctor,
    cap: usize,
) -> Result<Certification> {
    if !same_category(&f.source, &phi.source)
        || !same_category(&g.source, &phi.target)
        || !same_category(&f.target, x)
        || !same_category(&g.target, x)
    {
        return Err(Error::BoundaryMismatch("F: A→X and G: B→X required".into()));
    }
    require_complete_skeletal(x, cap)?;
    let (a, b) = (&phi.source, &phi.target);
    let pa = PresheafCategory::contravariant(a.clone(), cap)?;
    let d = crate::presheaf::density_check(f, &pa)?;
    if let Some(y) = d.witnesses.iter().position(Option::is_none) {
        return Ok(Certification::Counterexample(format!("F is not sup-dense: {} is not reached", x.name(y))));
    }
    let pdb = PresheafCategory::covariant(b.clone(), cap)?;
    let d = crate::presheaf::density_check(g, &pdb)?;
    if let Some(y) = d.witnesses.iter().position(Option::is_none) {
        return Ok(Certification::Counterexample(format!("G is not inf-dense: {} is not reached", x.name(y))));
    }
    for u in a.objects() {
        for v in b.objects() {
            if x.hom(f.map[u], g.map[v]) != phi.get(u, v) {
                return Ok(Certification::Counterexample(format!(
                    "X(F{},G{}) differs from φ",
                    a.name(u),
                    b.name(v)
                )));
            }
        }
    }
    let m = concept_lattice(phi, cap)?;
    let mut map = Vec::with_capacity(x.len());
    for p in x.objects() {
        let ext = Presheaf {
            ty: x.ty(p),
            values: a.objects().map(|u| x.hom(f.map[u], p)).collect(),
        };
        let int: Vec<Elem> = b.objects().map(|v| x.hom(p, g.map[v])).collect();
        let Some(i) = m.position(&ext) else {
            return Ok(Certification::Counterexample(format!("H {} is not a concept", x.name(p))));
        };
        if m.intent(i).expect("isbell").values != int {
            return Ok(Certification::Counterexample(format!("H {} has the wrong intent", x.name(p))));
        }
        map.push(i);
    }
    let h = QFunctor {
        source: x.clone(),
        target: m.category.clone(),
        map,
    };
    if !is_isomorphism(&h) {
        return Ok(Certification::Counterexample("H is not an isomorphism".into()));
    }
    Ok(Certification::Iso(h))
}

#[cfg(test)]
mod tests;
