use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;
use crate::closure::is_continuous;
use crate::fixtures::{boolean_distributor, ctx, discrete, point, preorder};
use crate::qcat::{enumerate_functors, is_functor_adjunction, right_adjoint, QTypedSet};
use crate::qdist::{identity_dist, is_dist_adjunction, Infomorphism};
use crate::quantaloid::{boolean, lukasiewicz, rel_like, Elem, Obj};
use crate::DEFAULT_CAP;

fn set(n: usize, members: &[usize]) -> Vec<Elem> {
    (0..n).map(|i| Elem(members.contains(&i) as u16)).collect()
}

fn ps(n: usize, members: &[usize]) -> Presheaf {
    Presheaf { ty: Obj(0), values: set(n, members) }
}

fn functor(f: &[usize], p: &Arc<PresheafCategory>, q: &Arc<PresheafCategory>) -> QFunctor {
    QFunctor::new(p.category().clone(), q.category().clone(), f.to_vec()).unwrap()
}

#[test]
fn ctx_star_and_lowstar() {
    let c = ctx();
    assert_eq!(phi_star(&c.phi, &ps(2, &[0])).unwrap(), ps(2, &[0]));
    assert_eq!(phi_lowstar(&c.phi, &ps(2, &[0])).unwrap(), ps(2, &[0]));
    assert_eq!(phi_lowstar(&c.phi, &ps(2, &[0, 1])).unwrap(), ps(2, &[0, 1]));
    for y in c.b.objects() {
        assert_eq!(phi_star(&c.phi, &Presheaf::yoneda(&c.b, y)).unwrap(), c.phi.column(y));
    }
    assert!(matches!(phi_star(&c.phi, &ps(3, &[])), Err(Error::BoundaryMismatch(_))));
    assert!(matches!(phi_lowstar(&c.phi, &ps(1, &[])), Err(Error::BoundaryMismatch(_))));
}

#[test]
fn identity_distributor_gives_identity_maps() {
    let l3 = Arc::new(lukasiewicz(3).unwrap());
    let a = Arc::new(
        QCategory::from_fn(l3.clone(), QTypedSet::uniform(["a", "b"], Obj(0)), |x, y| {
            if x == y {
                Elem(2)
            } else {
                Elem(1)
            }
        })
        .unwrap(),
    );
    let k = KanAdjunction::new(&identity_dist(&a), DEFAULT_CAP).unwrap();
    let id: Vec<usize> = k.pa.objects().collect();
    assert_eq!(k.star, id);
    assert_eq!(k.lowstar, id);
    assert_eq!(kan_lattice(&identity_dist(&a), DEFAULT_CAP).unwrap().len(), k.pb.len());
}

#[test]
fn ctx_kan_lattice() {
    let c = ctx();
    let k = kan_lattice(&c.phi, DEFAULT_CAP).unwrap();
    assert_eq!(k.kind, LatticeKind::Kan);
    assert!(k.intent(0).is_none());
    let got: Vec<Vec<Elem>> = (0..k.len()).map(|i| k.extent(i).values).collect();
    assert_eq!(got, vec![set(2, &[]), set(2, &[0]), set(2, &[0, 1])]);
}

#[test]
fn kan_lattice_of_fully_faithful_cograph_is_everything() {
    let q = Arc::new(boolean());
    let big = preorder(&q, &["c0", "c1", "c2"], |x, y| x <= y);
    let small = preorder(&q, &["c0", "c2"], |x, y| x <= y);
    let f = QFunctor::new(small.clone(), big, vec![0, 2]).unwrap();
    assert!(f.validate().is_fully_faithful);
    let k = kan_lattice(&cograph(&f), DEFAULT_CAP).unwrap();
    assert_eq!(k.len(), k.space.len());
}

#[test]
fn kan_adjunction_holds() {
    let c = ctx();
    let l3 = Arc::new(lukasiewicz(3).unwrap());
    let a = discrete(&l3, &["x1", "x2"]);
    let b = point(&l3, "y");
    let mut phis = vec![c.phi.clone()];
    for v in 0..9u16 {
        phis.push(QDistributor::new(a.clone(), b.clone(), vec![Elem(v / 3), Elem(v % 3)]).unwrap());
    }
    for phi in &phis {
        let k = KanAdjunction::new(phi, DEFAULT_CAP).unwrap();
        assert_eq!(k.adjunction_failure(), None);
        assert!(k.closure().validate().is_empty());
    }
}

#[test]
fn why_kan_on_functors() {
    let c = ctx();
    let q = c.q.clone();
    let star = point(&q, "*");
    let f = QFunctor::new(star.clone(), c.b.clone(), vec![0]).unwrap();
    assert!(why_kan_check(&f, DEFAULT_CAP).unwrap().is_empty());
    let pb = PresheafCategory::contravariant(c.b.clone(), DEFAULT_CAP).unwrap();
    let g = graph(&f);
    for l in pb.objects() {
        let lam = pb.presheaf(l);
        assert_eq!(phi_star(&g, &lam).unwrap().values, vec![lam.values[0]]);
    }
    assert!(why_kan_check(&QFunctor::identity(c.a.clone()), DEFAULT_CAP).unwrap().is_empty());

    let cats = [
        preorder(&q, &["c0", "c1", "c2"], |x, y| x <= y),
        preorder(&q, &["a", "b"], |x, y| x <= y),
        discrete(&q, &["u", "v"]),
        preorder(&q, &["a", "b", "c"], |x, y| x == y || y == 1),
    ];
    let mut ff = 0;
    for a in &cats {
        for b in &cats {
            for f in enumerate_functors(a, b).unwrap() {
                let r = why_kan_check(&f, DEFAULT_CAP).unwrap();
                assert!(r.is_empty(), "{r}");
                ff += f.validate().is_fully_faithful as usize;
            }
        }
    }
    assert!(ff > 5);
}

#[test]
fn pointwise_extensions() {
    let c = ctx();
    let a = preorder(&c.q, &["c0", "c1", "c2"], |x, y| x <= y);
    let id = QFunctor::identity(a.clone());
    for x in a.objects() {
        let k = pointwise_kan_extension(&id, &id, x).unwrap();
        assert_eq!(k.presheaf, CoPresheaf::yoneda(&a, x));
        assert_eq!(k.representing, Some(x));
    }

    let star = point(&c.q, "*");
    let f = QFunctor::new(star.clone(), c.b.clone(), vec![0]).unwrap();
    let g = QFunctor::identity(star.clone());
    let k = pointwise_kan_extension(&f, &g, 0).unwrap();
    assert_eq!(k.presheaf, CoPresheaf::yoneda(&c.b, 0));
    assert_eq!(k.representing, Some(0));

    let f = QFunctor::new(c.a.clone(), c.b.clone(), vec![0, 1]).unwrap();
    let g = QFunctor::constant(c.a.clone(), star, 0).unwrap();
    let k = pointwise_kan_extension(&f, &g, 0).unwrap();
    assert_eq!(k.representing, None);
    assert_eq!(k.presheaf.values, set(2, &[]));

    assert!(matches!(pointwise_kan_extension(&f, &g, 5), Err(Error::UnknownObject(_))));
}

#[test]
fn negation_examples() {
    let l3 = Arc::new(lukasiewicz(3).unwrap());
    let gctx = GirardDistributorContext::new(l3.clone()).unwrap();
    let a = discrete(&l3, &["x1", "x2"]);
    let b = discrete(&l3, &["y1", "y2"]);
    let half = QDistributor::new(a.clone(), b.clone(), vec![Elem(1); 4]).unwrap();
    let n = neg_dist(&gctx, &half).unwrap();
    assert_eq!(n.source, b);
    assert_eq!(n.matrix(), &[Elem(1); 4]);
    assert_eq!(neg_dist(&gctx, &identity_dist(&a)).unwrap(), gctx.neg_category(&a).unwrap());

    let c = ctx();
    let g2 = GirardDistributorContext::new(c.q.clone()).unwrap();
    let n = neg_dist(&g2, &c.phi).unwrap();
    for x in c.a.objects() {
        for y in c.b.objects() {
            assert_eq!(n.get(y, x).0, 1 - c.phi.get(x, y).0);
        }
    }
    assert!(gctx.neg_category(&a).unwrap().validate().is_empty());
}

#[test]
fn not_girard_is_an_error() {
    let r = Arc::new(rel_like(2).unwrap());
    assert!(matches!(GirardDistributorContext::new(r), Err(Error::NotGirard)));
}

#[test]
fn girard_identities_on_contexts() {
    let c = ctx();
    let g2 = GirardDistributorContext::new(c.q.clone()).unwrap();
    let r = girard_kan_identity_check(&g2, &c.phi, DEFAULT_CAP).unwrap();
    assert!(r.is_empty(), "{r}");
    let lam = ps(2, &[0]);
    let nphi = neg_dist(&g2, &c.phi).unwrap();
    let via = g2.neg_copresheaf(&c.a, &phi_up(&nphi, &lam).unwrap());
    assert_eq!(via, ps(2, &[0]));
    assert!(girard_kan_identity_check(&g2, &identity_dist(&c.a), DEFAULT_CAP).unwrap().is_empty());

    let l3 = Arc::new(lukasiewicz(3).unwrap());
    let gl = GirardDistributorContext::new(l3.clone()).unwrap();
    let p = point(&l3, "a");
    let half = Arc::new(
        QCategory::from_fn(l3.clone(), QTypedSet::uniform(["a", "b"], Obj(0)), |x, y| {
            if x == y {
                Elem(2)
            } else {
                Elem(1)
            }
        })
        .unwrap(),
    );
    for (a, b) in [(p.clone(), p.clone()), (discrete(&l3, &["x1", "x2"]), p.clone()), (p.clone(), half.clone())] {
        let cells = a.len() * b.len();
        for code in 0..3usize.pow(cells as u32) {
            let vals: Vec<Elem> = (0..cells).map(|i| Elem((code / 3usize.pow(i as u32) % 3) as u16)).collect();
            let phi = QDistributor::new(a.clone(), b.clone(), vals).unwrap();
            if !phi.validate().is_empty() {
                assert!(matches!(neg_dist(&gl, &phi), Err(Error::Precondition(_))));
                continue;
            }
            let r = girard_kan_identity_check(&gl, &phi, DEFAULT_CAP).unwrap();
            assert!(r.is_empty(), "{r}");
        }
    }
}

#[test]
fn left_adjoint_distributor_criterion() {
    let q = Arc::new(boolean());
    let a = discrete(&q, &["x1", "x2"]);
    let b = preorder(&q, &["lo", "hi"], |x, y| x <= y);
    let pa = Arc::new(PresheafCategory::contravariant(a.clone(), DEFAULT_CAP).unwrap());
    let pb = Arc::new(PresheafCategory::contravariant(b.clone(), DEFAULT_CAP).unwrap());
    let cells: Vec<(usize, usize)> = (0..2).flat_map(|x| (0..2).map(move |y| (x, y))).collect();
    let all = |s: &Arc<QCategory>, t: &Arc<QCategory>| -> Vec<QDistributor> {
        (0..16u32)
            .map(|m| cells.iter().copied().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, c)| c).collect::<Vec<_>>())
            .filter_map(|rel| {
                let h = q.hom(Obj(0), Obj(0));
                QDistributor::from_fn(s.clone(), t.clone(), |x, y| if rel.contains(&(x, y)) { h.top() } else { h.bottom() })
                    .ok()
                    .filter(|d| d.validate().is_empty())
            })
            .collect()
    };
    let phis = all(&a, &b);
    let psis = all(&b, &a);
    let mut adjoint = 0;
    for phi in &phis {
        let kphi = KanAdjunction::with_presheaves(phi, pa.clone(), pb.clone()).unwrap();
        for psi in &psis {
            let kpsi = KanAdjunction::with_presheaves(psi, pb.clone(), pa.clone()).unwrap();
            let lhs = is_dist_adjunction(phi, psi).unwrap();
            let rhs = is_functor_adjunction(&functor(&kpsi.star, &pa, &pb), &functor(&kphi.star, &pb, &pa)).unwrap();
            assert_eq!(lhs, rhs);
            adjoint += lhs as usize;
        }
    }
    assert!(adjoint > 0);

    // φ ↦ φ* is a bijection onto the left adjoints PB → PA
    let lefts: BTreeSet<Vec<usize>> = enumerate_functors(pb.category(), pa.category())
        .unwrap()
        .into_iter()
        .filter(|f| right_adjoint(f).is_some())
        .map(|f| f.map)
        .collect();
    let stars: BTreeSet<Vec<usize>> = phis
        .iter()
        .map(|phi| KanAdjunction::with_presheaves(phi, pa.clone(), pb.clone()).unwrap().star)
        .collect();
    assert_eq!(stars.len(), phis.len());
    assert_eq!(stars, lefts);
    for phi in &phis {
        let k = KanAdjunction::with_presheaves(phi, pa.clone(), pb.clone()).unwrap();
        for y in b.objects() {
            assert_eq!(pa.values(k.star[pb.yoneda_index(y)]), &phi.column(y).values[..]);
        }
    }
}

#[test]
fn infomorphisms_give_continuous_maps_backwards() {
    let c = ctx();
    let kc = kan_closure(&c.phi, DEFAULT_CAP).unwrap();
    let mut found = 0;
    for f in enumerate_functors(&c.a, &c.a).unwrap() {
        for g in enumerate_functors(&c.b, &c.b).unwrap() {
            let info = Infomorphism::new(f.clone(), g.clone(), c.phi.clone(), c.phi.clone()).unwrap();
            if info.holds() {
                found += 1;
                assert!(is_continuous(&g, &kc, &kc).unwrap());
            }
        }
    }
    assert!(found >= 1);
    let b2 = discrete(&c.q, &["y2"]);
    let psi = boolean_distributor(&c.a, &b2, &[(0, 0), (1, 0)]);
    let g = QFunctor::new(b2.clone(), c.b.clone(), vec![1]).unwrap();
    assert!(Infomorphism::new(QFunctor::identity(c.a.clone()), g.clone(), c.phi.clone(), psi.clone()).unwrap().holds());
    let kpsi = kan_closure(&psi, DEFAULT_CAP).unwrap();
    assert!(is_continuous(&g, &kpsi, &kc).unwrap());
}
