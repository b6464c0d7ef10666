//! Suprema, infima, tensors, cotensors and weighted (co)limits, by witness
//! scan in an arbitrary category and by closed formulas in presheaf
//! categories.

use super::{forward_copresheaf, forward_presheaf, CoPresheaf, Presheaf, PresheafCategory, Variance};
use crate::error::{Error, Result};
use crate::qcat::{QCategory, QFunctor};
use crate::quantaloid::{Elem, Obj};

/// `sup` of a presheaf weight or `inf` of a copresheaf weight.
#[derive(Debug, Clone, Copy)]
pub enum Weight<'a> {
    Sup(&'a Presheaf),
    Inf(&'a CoPresheaf),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Sup,
    Inf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorKind {
    Tensor,
    Cotensor,
}

/// `A(a,−) = ⋀_x A(x,−)↙μ(x)`.
pub fn is_sup_of(a: &QCategory, c: usize, mu: &Presheaf) -> bool {
    let q = a.quantaloid();
    a.ty(c) == mu.ty
        && a.objects().all(|y| {
            let want = q.hom(mu.ty, a.ty(y)).meet_all(
                a.objects()
                    .map(|x| q.left_impl(a.ty(x), mu.ty, a.ty(y), a.hom(x, y), mu.values[x])),
            );
            a.hom(c, y) == want
        })
}

/// `A(−,a) = ⋀_y λ(y)↘A(−,y)`.
pub fn is_inf_of(a: &QCategory, c: usize, lam: &CoPresheaf) -> bool {
    let q = a.quantaloid();
    a.ty(c) == lam.ty
        && a.objects().all(|x| {
            let want = q.hom(a.ty(x), lam.ty).meet_all(
                a.objects()
                    .map(|y| q.right_impl(lam.ty, a.ty(y), a.ty(x), lam.values[y], a.hom(x, y))),
            );
            a.hom(x, c) == want
        })
}

/// First object (in declared order) that is a supremum of `μ`.
pub fn sup_search(a: &QCategory, mu: &Presheaf) -> Option<usize> {
    a.objects().find(|&c| is_sup_of(a, c, mu))
}

/// First object (in declared order) that is an infimum of `λ`.
pub fn inf_search(a: &QCategory, lam: &CoPresheaf) -> Option<usize> {
    a.objects().find(|&c| is_inf_of(a, c, lam))
}

pub fn bound_search(a: &QCategory, weight: Weight<'_>) -> Option<usize> {
    match weight {
        Weight::Sup(mu) => sup_search(a, mu),
        Weight::Inf(lam) => inf_search(a, lam),
    }
}

/// Tensor `f⊗x` for `f ∈ Q(tx, X)`: `A(f⊗x,−) = A(x,−)↙f`.
/// Cotensor `f↣x` for `f ∈ Q(X, tx)`: `A(−,f↣x) = f↘A(−,x)`.
pub fn tensor_search(a: &QCategory, kind: TensorKind, f_ty: Obj, f: Elem, x: usize) -> Option<usize> {
    let q = a.quantaloid();
    let tx = a.ty(x);
    match kind {
        TensorKind::Tensor => a.objects().find(|&c| {
            a.ty(c) == f_ty
                && a.objects()
                    .all(|y| a.hom(c, y) == q.left_impl(tx, f_ty, a.ty(y), a.hom(x, y), f))
        }),
        TensorKind::Cotensor => a.objects().find(|&c| {
            a.ty(c) == f_ty
                && a.objects()
                    .all(|y| a.hom(y, c) == q.right_impl(f_ty, tx, a.ty(y), f, a.hom(y, x)))
        }),
    }
}

pub fn cotensor_search(a: &QCategory, f_ty: Obj, f: Elem, x: usize) -> Option<usize> {
    tensor_search(a, TensorKind::Cotensor, f_ty, f, x)
}

/// `colim_μ F`: `B(c,−) = ⋀_x B(Fx,−)↙μ(x)`.
pub fn weighted_colimit(f: &QFunctor, mu: &Presheaf) -> Option<usize> {
    let (a, b) = (&*f.source, &*f.target);
    let q = a.quantaloid();
    b.objects().find(|&c| {
        b.ty(c) == mu.ty
            && b.objects().all(|y| {
                let want = q.hom(mu.ty, b.ty(y)).meet_all(
                    a.objects()
                        .map(|x| q.left_impl(a.ty(x), mu.ty, b.ty(y), b.hom(f.map[x], y), mu.values[x])),
                );
                b.hom(c, y) == want
            })
    })
}

/// `lim_λ F`: `B(−,l) = ⋀_x λ(x)↘B(−,Fx)`.
pub fn weighted_limit(f: &QFunctor, lam: &CoPresheaf) -> Option<usize> {
    let (a, b) = (&*f.source, &*f.target);
    let q = a.quantaloid();
    b.objects().find(|&c| {
        b.ty(c) == lam.ty
            && b.objects().all(|y| {
                let want = q.hom(b.ty(y), lam.ty).meet_all(
                    a.objects()
                        .map(|x| q.right_impl(lam.ty, a.ty(x), b.ty(y), lam.values[x], b.hom(y, f.map[x]))),
                );
                b.hom(y, c) == want
            })
    })
}

/// Supremum in `PA` or `P†A` of a weight on it, by the closed formulas.
///
/// `phi` holds one value per object of `p`; `ty` is its type. The result is the
/// index of the bound inside `p`.
pub fn presheaf_sup(p: &PresheafCategory, ty: Obj, phi: &[Elem]) -> Result<usize> {
    check_weight(p, phi)?;
    let a = &**p.base();
    let q = a.quantaloid();
    let values: Vec<Elem> = match p.variance() {
        // ⋁_μ Φ(μ)∘μ(x)
        Variance::Contravariant => a
            .objects()
            .map(|x| {
                q.hom(a.ty(x), ty).join_all(
                    p.objects()
                        .map(|m| q.comp(a.ty(x), p.ty(m), ty, phi[m], p.values(m)[x])),
                )
            })
            .collect(),
        // ⋀_λ λ(x)↙Φ(λ)
        Variance::Covariant => a
            .objects()
            .map(|x| {
                q.hom(ty, a.ty(x)).meet_all(
                    p.objects()
                        .map(|l| q.left_impl(p.ty(l), ty, a.ty(x), p.values(l)[x], phi[l])),
                )
            })
            .collect(),
    };
    p.find(ty, &values)
        .ok_or_else(|| Error::Precondition("weight is not a presheaf on the presheaf category".into()))
}

/// Infimum in `PA` or `P†A` of a coweight on it, by the closed formulas.
pub fn presheaf_inf(p: &PresheafCategory, ty: Obj, psi: &[Elem]) -> Result<usize> {
    check_weight(p, psi)?;
    let a = &**p.base();
    let q = a.quantaloid();
    let values: Vec<Elem> = match p.variance() {
        // ⋀_μ Ψ(μ)↘μ(x)
        Variance::Contravariant => a
            .objects()
            .map(|x| {
                q.hom(a.ty(x), ty).meet_all(
                    p.objects()
                        .map(|m| q.right_impl(ty, p.ty(m), a.ty(x), psi[m], p.values(m)[x])),
                )
            })
            .collect(),
        // ⋁_λ λ(x)∘Ψ(λ)
        Variance::Covariant => a
            .objects()
            .map(|x| {
                q.hom(ty, a.ty(x)).join_all(
                    p.objects()
                        .map(|l| q.comp(ty, p.ty(l), a.ty(x), p.values(l)[x], psi[l])),
                )
            })
            .collect(),
    };
    p.find(ty, &values)
        .ok_or_else(|| Error::Precondition("coweight is not a copresheaf on the presheaf category".into()))
}

fn check_weight(p: &PresheafCategory, w: &[Elem]) -> Result<()> {
    if w.len() != p.len() {
        return Err(Error::Structural(format!(
            "weight needs {} values, got {}",
            p.len(),
            w.len()
        )));
    }
    Ok(())
}

/// Result of [`is_complete`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completeness {
    /// Every presheaf has a supremum.
    pub complete: bool,
    /// `sup μ` for every object `μ` of `PA`, in its canonical order.
    pub sup_table: Vec<Option<usize>>,
    /// Every `f⊗x` and `f↣x` exists.
    pub tensored_and_cotensored: bool,
    /// Each type-wise underlying order has all joins.
    pub order_complete: bool,
    /// When complete: `sup μ` is the join of the tensors `μ(a)⊗a` for all `μ`.
    pub sup_is_join_of_tensors: bool,
}

impl Completeness {
    /// The equivalence between the two characterizations holds on this instance.
    pub fn consistent(&self) -> bool {
        self.complete == (self.tensored_and_cotensored && self.order_complete)
            && (!self.complete || self.sup_is_join_of_tensors)
    }
}

/// Completeness by exhaustive supremum search over `PA`.
pub fn is_complete(pa: &PresheafCategory) -> Result<Completeness> {
    if pa.variance() != Variance::Contravariant {
        return Err(Error::Precondition("completeness is checked against PA".into()));
    }
    let a = &**pa.base();
    let q = a.quantaloid();
    let sup_table: Vec<Option<usize>> = pa.objects().map(|m| sup_search(a, &pa.presheaf(m))).collect();
    let complete = sup_table.iter().all(Option::is_some);

    let mut tensored = true;
    'outer: for x in a.objects() {
        for t in q.objects() {
            for f in q.hom(a.ty(x), t).elems() {
                if tensor_search(a, TensorKind::Tensor, t, f, x).is_none() {
                    tensored = false;
                    break 'outer;
                }
            }
            for f in q.hom(t, a.ty(x)).elems() {
                if tensor_search(a, TensorKind::Cotensor, t, f, x).is_none() {
                    tensored = false;
                    break 'outer;
                }
            }
        }
    }

    let order_complete = q.objects().all(|t| {
        let objs: Vec<usize> = a.objects().filter(|&x| a.ty(x) == t).collect();
        let least = objs.iter().any(|&b| objs.iter().all(|&y| a.leq(b, y)));
        let binary = objs.iter().all(|&x| {
            objs.iter().all(|&y| {
                objs.iter().any(|&j| {
                    a.leq(x, j)
                        && a.leq(y, j)
                        && objs.iter().all(|&u| !(a.leq(x, u) && a.leq(y, u)) || a.leq(j, u))
                })
            })
        });
        least && binary
    });

    let mut sup_is_join_of_tensors = complete;
    if complete && tensored {
        for (m, s) in sup_table.iter().enumerate() {
            let s = s.expect("complete");
            let mu = pa.presheaf(m);
            let tensors: Vec<usize> = a
                .objects()
                .map(|x| tensor_search(a, TensorKind::Tensor, mu.ty, mu.values[x], x).expect("tensored"))
                .collect();
            let is_join = a.objects().filter(|&y| a.ty(y) == mu.ty).all(|y| {
                a.leq(s, y) == tensors.iter().all(|&t| a.leq(t, y))
            });
            if !is_join {
                sup_is_join_of_tensors = false;
                break;
            }
        }
    } else {
        sup_is_join_of_tensors = false;
    }

    Ok(Completeness {
        complete,
        sup_table,
        tensored_and_cotensored: tensored,
        order_complete,
        sup_is_join_of_tensors,
    })
}

/// Result of [`density_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density {
    pub dense: bool,
    /// For each `y`, the first weight (index into the presheaf category of the
    /// source) whose transported bound is `y`.
    pub witnesses: Vec<Option<usize>>,
}

/// `sup`-density (`y = sup_B F→(μ)`) against `PA` (contravariant `pa`), or
/// `inf`-density (`y = inf_B F⇒(λ)`) against `P†A` (covariant `pa`).
pub fn density_check(f: &QFunctor, pa: &PresheafCategory) -> Result<Density> {
    if !crate::qcat::same_category(pa.base(), &f.source) {
        return Err(Error::BoundaryMismatch("presheaf category is not over the functor's source".into()));
    }
    let b = &*f.target;
    let images: Vec<Option<usize>> = match pa.variance() {
        Variance::Contravariant => pa
            .objects()
            .map(|m| sup_search(b, &forward_presheaf(f, &pa.presheaf(m))))
            .collect(),
        Variance::Covariant => pa
            .objects()
            .map(|l| inf_search(b, &forward_copresheaf(f, &pa.copresheaf(l))))
            .collect(),
    };
    let witnesses: Vec<Option<usize>> = b
        .objects()
        .map(|y| {
            pa.objects().find(|&m| match images[m] {
                Some(s) => b.iso(s, y) && b.ty(s) == b.ty(y),
                None => false,
            })
        })
        .collect();
    Ok(Density {
        dense: witnesses.iter().all(Option::is_some),
        witnesses,
    })
}
