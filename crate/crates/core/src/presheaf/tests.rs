use std::sync::Arc;

use super::*;
use crate::fixtures::{ctx, discrete, elems, point, preorder};
use crate::qcat::{functor_leq, is_functor_adjunction};
use crate::quantaloid::{boolean, lukasiewicz, rel_like};

/// All value maps by odometer, filtered by the presheaf condition.
fn brute_force(a: &QCategory, variance: Variance) -> Vec<(Obj, Vec<Elem>)> {
    let q = a.quantaloid();
    let mut out = vec![];
    for t in q.objects() {
        let sizes: Vec<usize> = a
            .objects()
            .map(|x| match variance {
                Variance::Contravariant => q.hom(a.ty(x), t).len(),
                Variance::Covariant => q.hom(t, a.ty(x)).len(),
            })
            .collect();
        let mut cur = vec![0usize; a.len()];
        loop {
            let v: Vec<Elem> = cur.iter().map(|&i| Elem(i as u16)).collect();
            let ok = match variance {
                Variance::Contravariant => Presheaf { ty: t, values: v.clone() }.is_valid(a),
                Variance::Covariant => CoPresheaf { ty: t, values: v.clone() }.is_valid(a),
            };
            if ok {
                out.push((t, v));
            }
            // increment, last position fastest
            let mut k = a.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < sizes[k] {
                    break;
                }
                cur[k] = 0;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX || a.is_empty() {
                break;
            }
        }
    }
    out
}

fn all(p: &PresheafCategory) -> Vec<(Obj, Vec<Elem>)> {
    p.objects().map(|i| (p.ty(i), p.values(i).to_vec())).collect()
}

fn fixtures() -> Vec<Arc<QCategory>> {
    let q2 = Arc::new(boolean());
    let l3 = Arc::new(lukasiewicz(3).unwrap());
    let r2 = Arc::new(rel_like(2).unwrap());
    vec![
        discrete(&q2, &[]),
        discrete(&q2, &["x1", "x2"]),
        preorder(&q2, &["a", "b", "c"], |x, y| x <= y),
        preorder(&q2, &["a", "b", "c"], |x, y| y == 1 || x == y),
        point(&l3, "a"),
        Arc::new(
            QCategory::from_fn(l3.clone(), QTypedSet::uniform(["a", "b"], Obj(0)), |x, y| {
                if x == y {
                    Elem(2)
                } else {
                    Elem(1)
                }
            })
            .unwrap(),
        ),
        Arc::new(
            QCategory::from_fn(
                r2.clone(),
                QTypedSet::new([("p".to_string(), Obj(0)), ("r".to_string(), Obj(1))]),
                |x, y| if x == y || (x, y) == (0, 1) { Elem(1) } else { Elem(0) },
            )
            .unwrap(),
        ),
    ]
}

#[test]
fn enumeration_counts() {
    let q2 = Arc::new(boolean());
    let l3 = Arc::new(lukasiewicz(3).unwrap());
    let pa = PresheafCategory::contravariant(discrete(&q2, &["x1", "x2"]), DEFAULT_CAP).unwrap();
    assert_eq!(pa.len(), 4);
    let pe = PresheafCategory::contravariant(discrete(&q2, &[]), DEFAULT_CAP).unwrap();
    assert_eq!(pe.len(), 1);
    let p3 = PresheafCategory::contravariant(point(&l3, "a"), DEFAULT_CAP).unwrap();
    assert_eq!(p3.len(), 3);
}

#[test]
fn enumeration_matches_brute_force_in_canonical_order() {
    for a in fixtures() {
        for v in [Variance::Contravariant, Variance::Covariant] {
            let p = PresheafCategory::enumerate(a.clone(), v, DEFAULT_CAP).unwrap();
            assert_eq!(all(&p), brute_force(&a, v), "{a:?} {v:?}");
        }
    }
}

#[test]
fn cap_is_checked_before_enumeration() {
    let q2 = Arc::new(boolean());
    let names: Vec<String> = (0..16).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let a = discrete(&q2, &refs);
    match PresheafCategory::contravariant(a, 1000) {
        Err(Error::CapExceeded { estimate, cap }) => assert_eq!((estimate, cap), (65536, 1000)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn presheaf_categories_are_valid_skeletal_and_yoneda_holds() {
    for a in fixtures() {
        let pa = PresheafCategory::contravariant(a.clone(), DEFAULT_CAP).unwrap();
        let pd = PresheafCategory::covariant(a.clone(), DEFAULT_CAP).unwrap();
        for p in [&pa, &pd] {
            let c = p.category();
            assert!(c.validate().is_empty());
            assert!(c.is_skeletal());
            let y = p.yoneda_functor().validate();
            assert!(y.is_functor && y.is_fully_faithful);
        }
        for x in a.objects() {
            let yx = pa.yoneda_index(x);
            for m in pa.objects() {
                assert_eq!(pa.hom(yx, m), pa.values(m)[x]);
            }
            let yd = pd.yoneda_index(x);
            for l in pd.objects() {
                assert_eq!(pd.hom(l, yd), pd.values(l)[x]);
            }
        }
        // underlying order of P†A is the reverse local order
        for i in pd.objects() {
            for j in pd.objects() {
                assert_eq!(pd.category().leq(i, j), pd.local_leq(j, i));
            }
        }
        for i in pa.objects() {
            for j in pa.objects() {
                assert_eq!(pa.category().leq(i, j), pa.local_leq(i, j));
            }
        }
        let comp = is_complete(&PresheafCategory::contravariant(pa.category().clone(), DEFAULT_CAP).unwrap()).unwrap();
        assert!(comp.complete && comp.consistent());
    }
}

#[test]
fn yoneda_examples() {
    let c = ctx();
    assert_eq!(Presheaf::yoneda(&c.a, 0).values, elems(&[1, 0]));
    let l3 = Arc::new(lukasiewicz(3).unwrap());
    assert_eq!(Presheaf::yoneda(&point(&l3, "a"), 0).values, elems(&[2]));
}

#[test]
fn transport_examples_and_adjunctions() {
    let c = ctx();
    let s = point(&c.q, "*");
    let f = QFunctor::new(s.clone(), c.b.clone(), vec![0]).unwrap();
    assert_eq!(backward_presheaf(&f, &Presheaf { ty: Obj(0), values: elems(&[1, 0]) }).values, elems(&[1]));
    assert_eq!(backward_presheaf(&f, &Presheaf { ty: Obj(0), values: elems(&[0, 1]) }).values, elems(&[0]));

    let cats = fixtures();
    for a in &cats {
        for b in &cats {
            if !a.same_base(b) {
                continue;
            }
            let pa = PresheafCategory::contravariant(a.clone(), DEFAULT_CAP).unwrap();
            let pb = PresheafCategory::contravariant(b.clone(), DEFAULT_CAP).unwrap();
            let da = PresheafCategory::covariant(a.clone(), DEFAULT_CAP).unwrap();
            let db = PresheafCategory::covariant(b.clone(), DEFAULT_CAP).unwrap();
            for f in crate::qcat::enumerate_functors(a, b).unwrap() {
                let fwd = transport(&f, Direction::Forward, &pa, &pb).unwrap();
                let bwd = transport(&f, Direction::Backward, &pa, &pb).unwrap();
                assert!(fwd.is_functor() && bwd.is_functor());
                assert!(is_functor_adjunction(&fwd, &bwd).unwrap());
                let cf = transport(&f, Direction::Forward, &da, &db).unwrap();
                let cb = transport(&f, Direction::Backward, &da, &db).unwrap();
                assert!(cf.is_functor() && cb.is_functor());
                assert!(is_functor_adjunction(&cb, &cf).unwrap());
                // Y_B∘F = F→∘Y_A
                let lhs = f.then(&pb.yoneda_functor()).unwrap();
                let rhs = pa.yoneda_functor().then(&fwd).unwrap();
                assert_eq!(lhs.map, rhs.map);
                // μ ≤ F←F→μ pointwise
                for m in pa.objects() {
                    assert!(pa.local_leq(m, bwd.map[fwd.map[m]]));
                }
            }
            if Arc::ptr_eq(a, b) {
                let id = QFunctor::identity(a.clone());
                let t = transport(&id, Direction::Forward, &pa, &pb).unwrap();
                assert_eq!(t.map, (0..pa.len()).collect::<Vec<_>>());
                assert!(functor_leq(&t, &QFunctor::identity(pa.category().clone())).unwrap());
            }
        }
    }
}

#[test]
fn presheaf_sup_and_inf_examples() {
    let q2 = Arc::new(boolean());
    let a = point(&q2, "a");
    let pa = PresheafCategory::contravariant(a, DEFAULT_CAP).unwrap();
    // objects: ∅ then {a}
    assert_eq!(presheaf_sup(&pa, Obj(0), &elems(&[0, 1])).unwrap(), 1);
    for m in pa.objects() {
        let ym = Presheaf::yoneda(pa.category(), m);
        assert_eq!(presheaf_sup(&pa, Obj(0), &ym.values).unwrap(), m);
    }
    assert_eq!(presheaf_inf(&pa, Obj(0), &elems(&[1, 1])).unwrap(), 0);
}

#[test]
fn closed_form_bounds_match_witness_scan() {
    for a in fixtures() {
        for v in [Variance::Contravariant, Variance::Covariant] {
            let p = PresheafCategory::enumerate(a.clone(), v, DEFAULT_CAP).unwrap();
            let c = p.category();
            let pp = PresheafCategory::contravariant(c.clone(), DEFAULT_CAP).unwrap();
            for w in pp.objects() {
                let mu = pp.presheaf(w);
                let s = presheaf_sup(&p, mu.ty, &mu.values).unwrap();
                assert!(is_sup_of(c, s, &mu));
                assert_eq!(sup_search(c, &mu), Some(s));
            }
            let pd = PresheafCategory::covariant(c.clone(), DEFAULT_CAP).unwrap();
            for w in pd.objects() {
                let lam = pd.copresheaf(w);
                let s = presheaf_inf(&p, lam.ty, &lam.values).unwrap();
                assert_eq!(inf_search(c, &lam), Some(s));
            }
            // tensors and cotensors by closed formula
            let q = a.quantaloid();
            for m in p.objects() {
                let tm = p.ty(m);
                for t in q.objects() {
                    for f in q.hom(tm, t).elems() {
                        let vals: Vec<Elem> = a
                            .objects()
                            .map(|x| match v {
                                Variance::Contravariant => q.comp(a.ty(x), tm, t, f, p.values(m)[x]),
                                Variance::Covariant => q.left_impl(tm, t, a.ty(x), p.values(m)[x], f),
                            })
                            .collect();
                        assert_eq!(tensor_search(c, TensorKind::Tensor, t, f, m), p.find(t, &vals));
                    }
                    for g in q.hom(t, tm).elems() {
                        let vals: Vec<Elem> = a
                            .objects()
                            .map(|x| match v {
                                Variance::Contravariant => q.right_impl(t, tm, a.ty(x), g, p.values(m)[x]),
                                Variance::Covariant => q.comp(t, tm, a.ty(x), p.values(m)[x], g),
                            })
                            .collect();
                        assert_eq!(tensor_search(c, TensorKind::Cotensor, t, g, m), p.find(t, &vals));
                    }
                }
            }
        }
    }
}

#[test]
fn bound_and_tensor_examples() {
    let c = ctx();
    let full = Presheaf { ty: Obj(0), values: elems(&[1, 1]) };
    assert_eq!(bound_search(&c.a, Weight::Sup(&full)), None);
    for x in c.a.objects() {
        assert_eq!(bound_search(&c.a, Weight::Sup(&Presheaf::yoneda(&c.a, x))), Some(x));
        assert_eq!(bound_search(&c.a, Weight::Inf(&CoPresheaf::yoneda(&c.a, x))), Some(x));
        assert_eq!(tensor_search(&c.a, TensorKind::Tensor, Obj(0), Elem(1), x), Some(x));
    }
    let pa = PresheafCategory::contravariant(c.a.clone(), DEFAULT_CAP).unwrap();
    for m in pa.objects() {
        assert_eq!(tensor_search(pa.category(), TensorKind::Tensor, Obj(0), Elem(0), m), Some(0));
    }

    let l3 = Arc::new(lukasiewicz(3).unwrap());
    let a = point(&l3, "a");
    // one object with top hom: every tensor exists and is that object
    assert_eq!(tensor_search(&a, TensorKind::Tensor, Obj(0), Elem(1), 0), Some(0));
    let pa = PresheafCategory::contravariant(a.clone(), DEFAULT_CAP).unwrap();
    let ya = pa.yoneda_index(0);
    let t = tensor_search(pa.category(), TensorKind::Tensor, Obj(0), Elem(1), ya).unwrap();
    assert_eq!(pa.values(t), &elems(&[1]));
}

#[test]
fn weighted_colimit_examples() {
    let c = ctx();
    let id = QFunctor::identity(c.a.clone());
    for x in c.a.objects() {
        assert_eq!(weighted_colimit(&id, &Presheaf::yoneda(&c.a, x)), Some(x));
        assert_eq!(weighted_limit(&id, &CoPresheaf::yoneda(&c.a, x)), Some(x));
    }
    assert_eq!(weighted_colimit(&id, &Presheaf::bottom(&c.a, Obj(0))), None);

    let pb = PresheafCategory::contravariant(c.a.clone(), DEFAULT_CAP).unwrap();
    let y = pb.yoneda_functor();
    for m in pb.objects() {
        let mu = pb.presheaf(m);
        let colim = weighted_colimit(&y, &mu).unwrap();
        assert_eq!(colim, m);
        let fwd = forward_presheaf(&y, &mu);
        assert_eq!(sup_search(pb.category(), &fwd), Some(colim));
    }
}

#[test]
fn completeness_examples() {
    let c = ctx();
    let r = is_complete(&PresheafCategory::contravariant(c.a.clone(), DEFAULT_CAP).unwrap()).unwrap();
    assert!(!r.complete && r.consistent());
    let q2 = Arc::new(boolean());
    let p = point(&q2, "a");
    let r = is_complete(&PresheafCategory::contravariant(p, DEFAULT_CAP).unwrap()).unwrap();
    assert!(r.complete && r.consistent());
    assert_eq!(r.sup_table, vec![Some(0), Some(0)]);
    let chain = preorder(&q2, &["a", "b", "c"], |x, y| x <= y);
    let r = is_complete(&PresheafCategory::contravariant(chain, DEFAULT_CAP).unwrap()).unwrap();
    assert!(r.complete && r.consistent());
}

#[test]
fn density_examples() {
    for a in fixtures() {
        let pa = PresheafCategory::contravariant(a.clone(), DEFAULT_CAP).unwrap();
        assert!(density_check(&pa.yoneda_functor(), &pa).unwrap().dense);
        let pd = PresheafCategory::covariant(a.clone(), DEFAULT_CAP).unwrap();
        assert!(density_check(&pd.yoneda_functor(), &pd).unwrap().dense);
    }
    let c = ctx();
    let sub = Arc::new(c.a.full_subcategory(&[0]).unwrap());
    let inc = QFunctor::new(sub.clone(), c.a.clone(), vec![0]).unwrap();
    let ps = PresheafCategory::contravariant(sub, DEFAULT_CAP).unwrap();
    let d = density_check(&inc, &ps).unwrap();
    assert!(!d.dense);
    assert_eq!(d.witnesses[1], None);
}
