use super::{DualizingFamily, Elem, Obj, Quantaloid};
use crate::report::Report;

/// Carriers up to this size get join preservation checked on every subset;
/// larger ones on the empty join and all binary joins, which is equivalent for
/// finite lattices.
const SUBSET_LIMIT: usize = 12;

fn subsets_of(n: usize) -> Vec<Vec<Elem>> {
    if n <= SUBSET_LIMIT {
        (0u32..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| Elem(i as u16)).collect())
            .collect()
    } else {
        let mut v = vec![vec![]];
        for i in 0..n {
            for j in i + 1..n {
                v.push(vec![Elem(i as u16), Elem(j as u16)]);
            }
        }
        v
    }
}

pub(super) fn validate_quantaloid(q: &Quantaloid) -> Report {
    let mut r = Report::new();
    let name = |a: Obj| q.object_name(a).to_string();
    for a in q.objects() {
        for b in q.objects() {
            r.extend(q.hom(a, b).validate(&format!("Q({},{})", name(a), name(b))));
        }
    }
    if !r.is_empty() {
        return r;
    }
    for a in q.objects() {
        for b in q.objects() {
            let hab = q.hom(a, b);
            for f in hab.elems() {
                let w = || format!("f={} in Q({},{})", hab.label(f), name(a), name(b));
                r.check(q.comp(a, b, b, q.unit(b), f) == f, "unit law (left)", w);
                r.check(q.comp(a, a, b, f, q.unit(a)) == f, "unit law (right)", w);
            }
        }
    }
    for a in q.objects() {
        for b in q.objects() {
            for c in q.objects() {
                for d in q.objects() {
                    for f in q.hom(a, b).elems() {
                        for g in q.hom(b, c).elems() {
                            let gf = q.comp(a, b, c, g, f);
                            for h in q.hom(c, d).elems() {
                                let lhs = q.comp(a, c, d, h, gf);
                                let rhs = q.comp(a, b, d, q.comp(b, c, d, h, g), f);
                                r.check(lhs == rhs, "associativity", || {
                                    format!(
                                        "f={} g={} h={} over {}->{}->{}->{}",
                                        q.label(a, b, f),
                                        q.label(b, c, g),
                                        q.label(c, d, h),
                                        name(a),
                                        name(b),
                                        name(c),
                                        name(d)
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    for a in q.objects() {
        for b in q.objects() {
            for c in q.objects() {
                let (hab, hbc, hac) = (q.hom(a, b), q.hom(b, c), q.hom(a, c));
                let path = || format!("{}->{}->{}", name(a), name(b), name(c));
                for s in subsets_of(hab.len()) {
                    let js = hab.join_all(s.iter().copied());
                    for g in hbc.elems() {
                        let lhs = q.comp(a, b, c, g, js);
                        let rhs = hac.join_all(s.iter().map(|&f| q.comp(a, b, c, g, f)));
                        r.check(lhs == rhs, "join preservation (right variable)", || {
                            format!("g={} f∈{{{}}} over {}", hbc.label(g), labels(hab, &s), path())
                        });
                    }
                }
                for s in subsets_of(hbc.len()) {
                    let js = hbc.join_all(s.iter().copied());
                    for f in hab.elems() {
                        let lhs = q.comp(a, b, c, js, f);
                        let rhs = hac.join_all(s.iter().map(|&g| q.comp(a, b, c, g, f)));
                        r.check(lhs == rhs, "join preservation (left variable)", || {
                            format!("f={} g∈{{{}}} over {}", hab.label(f), labels(hbc, &s), path())
                        });
                    }
                }
            }
        }
    }
    r
}

fn labels(h: &super::HomLattice, s: &[Elem]) -> String {
    s.iter().map(|&e| h.label(e)).collect::<Vec<_>>().join(" ")
}

/// `h∘f ≤ g ⇔ h ≤ g↙f` and `f∘h ≤ g ⇔ h ≤ f↘g` over every compatible triple.
pub fn residuation_report(q: &Quantaloid) -> Report {
    let mut r = Report::new();
    for a in q.objects() {
        for b in q.objects() {
            for x in q.objects() {
                let w = |f: Elem, g: Elem, h: Elem, ff: Obj, gg: Obj| {
                    format!(
                        "f={} g={} h={} ({},{},{})",
                        q.label(a, b, f),
                        q.label(ff, gg, g),
                        h.0,
                        q.object_name(a),
                        q.object_name(b),
                        q.object_name(x)
                    )
                };
                for f in q.hom(a, b).elems() {
                    for g in q.hom(a, x).elems() {
                        let li = q.left_impl(a, b, x, g, f);
                        for h in q.hom(b, x).elems() {
                            let lhs = q.leq(a, x, q.comp(a, b, x, h, f), g);
                            r.check(lhs == q.leq(b, x, h, li), "left residuation", || w(f, g, h, a, x));
                        }
                    }
                    for g in q.hom(x, b).elems() {
                        let ri = q.right_impl(a, b, x, f, g);
                        for h in q.hom(x, a).elems() {
                            let lhs = q.leq(x, b, q.comp(x, a, b, f, h), g);
                            r.check(lhs == q.leq(x, a, h, ri), "right residuation", || w(f, g, h, x, b));
                        }
                    }
                }
            }
        }
    }
    r
}

/// The three identity groups that hold in any quantaloid with a dualizing
/// family, for `f: A→B`, `g: B→C`, `h: A→C`.
pub fn girard_identities(q: &Quantaloid, fam: &DualizingFamily) -> Report {
    let mut r = Report::new();
    let d = |o: Obj| fam.at(o);
    for a in q.objects() {
        for b in q.objects() {
            for c in q.objects() {
                let objs = || format!("({},{},{})", q.object_name(a), q.object_name(b), q.object_name(c));
                for f in q.hom(a, b).elems() {
                    for g in q.hom(b, c).elems() {
                        let w = || format!("f={} g={} {}", q.label(a, b, f), q.label(b, c, g), objs());
                        let gf = q.comp(a, b, c, g, f);
                        let g_dc = q.right_impl(b, c, c, g, d(c));
                        let e1 = q.left_impl(c, a, c, d(c), q.right_impl(a, b, c, f, g_dc));
                        r.check(gf == e1, "girard (1a)", w);
                        let da_f = q.left_impl(a, b, a, d(a), f);
                        let e2 = q.right_impl(c, a, a, q.left_impl(b, c, a, da_f, g), d(a));
                        r.check(gf == e2, "girard (1b)", w);
                        let db_g = q.left_impl(b, c, b, d(b), g);
                        let f_db = q.right_impl(a, b, b, f, d(b));
                        r.check(
                            q.right_impl(c, b, a, db_g, f) == q.left_impl(b, c, a, g, f_db),
                            "girard (3)",
                            w,
                        );
                    }
                    for h in q.hom(a, c).elems() {
                        let w = || format!("f={} h={} {}", q.label(a, b, f), q.label(a, c, h), objs());
                        let lhs = q.right_impl(b, c, c, q.left_impl(a, b, c, h, f), d(c));
                        let rhs = q.comp(c, a, b, f, q.right_impl(a, c, c, h, d(c)));
                        r.check(lhs == rhs, "girard (2a)", w);
                    }
                }
                for g in q.hom(b, c).elems() {
                    for h in q.hom(a, c).elems() {
                        let w = || format!("g={} h={} {}", q.label(b, c, g), q.label(a, c, h), objs());
                        let lhs = q.left_impl(a, b, a, d(a), q.right_impl(b, c, a, g, h));
                        let rhs = q.comp(b, c, a, q.left_impl(a, c, a, d(a), h), g);
                        r.check(lhs == rhs, "girard (2b)", w);
                    }
                }
            }
        }
    }
    r
}

/// Every adjoint pair `f ⊣ g` of arrows, found by exhaustive search.
pub fn adjoint_pairs(q: &Quantaloid) -> Vec<(Obj, Obj, Elem, Elem)> {
    let mut v = vec![];
    for a in q.objects() {
        for b in q.objects() {
            for f in q.hom(a, b).elems() {
                for g in q.hom(b, a).elems() {
                    if q.leq(a, a, q.unit(a), q.comp(a, b, a, g, f)) && q.leq(b, b, q.comp(b, a, b, f, g), q.unit(b)) {
                        v.push((a, b, f, g));
                    }
                }
            }
        }
    }
    v
}

/// The identities satisfied by an adjoint pair `f ⊣ g: A ⇀ B` against all
/// compatible arrows `h, h'`, checked for every adjoint pair of `q`.
pub fn adjoint_arrow_identities(q: &Quantaloid) -> Report {
    let mut r = Report::new();
    for (a, b, f, g) in adjoint_pairs(q) {
        let pair = || format!("f={} g={} ({},{})", q.label(a, b, f), q.label(b, a, g), q.object_name(a), q.object_name(b));
        for x in q.objects() {
            for h in q.hom(b, x).elems() {
                r.check(
                    q.comp(a, b, x, h, f) == q.left_impl(b, a, x, h, g),
                    "adjoint (1a)",
                    || format!("{} h={}", pair(), h.0),
                );
            }
            for h in q.hom(x, b).elems() {
                r.check(
                    q.comp(x, b, a, g, h) == q.right_impl(a, b, x, f, h),
                    "adjoint (1b)",
                    || format!("{} h={}", pair(), h.0),
                );
            }
            for y in q.objects() {
                // (2a) h: X→A, h': Y→B
                for h in q.hom(x, a).elems() {
                    let fh = q.comp(x, a, b, f, h);
                    for h2 in q.hom(y, b).elems() {
                        let lhs = q.right_impl(x, b, y, fh, h2);
                        let rhs = q.right_impl(x, a, y, h, q.comp(y, b, a, g, h2));
                        r.check(lhs == rhs, "adjoint (2a)", || format!("{} h={} h'={}", pair(), h.0, h2.0));
                    }
                }
                // (2b) h: A→X, h': B→Y
                for h in q.hom(a, x).elems() {
                    let hg = q.comp(b, a, x, h, g);
                    for h2 in q.hom(b, y).elems() {
                        let lhs = q.left_impl(a, x, y, q.comp(a, b, y, h2, f), h);
                        let rhs = q.left_impl(b, x, y, h2, hg);
                        r.check(lhs == rhs, "adjoint (2b)", || format!("{} h={} h'={}", pair(), h.0, h2.0));
                    }
                }
                // (3a) h: X→Y, h': B→Y
                for h in q.hom(x, y).elems() {
                    for h2 in q.hom(b, y).elems() {
                        let lhs = q.comp(a, b, x, q.right_impl(x, y, b, h, h2), f);
                        let rhs = q.right_impl(x, y, a, h, q.comp(a, b, y, h2, f));
                        r.check(lhs == rhs, "adjoint (3a)", || format!("{} h={} h'={}", pair(), h.0, h2.0));
                    }
                }
                // (3b) h: X→Y, h': X→B
                for h in q.hom(x, y).elems() {
                    for h2 in q.hom(x, b).elems() {
                        let lhs = q.comp(y, b, a, g, q.left_impl(x, y, b, h2, h));
                        let rhs = q.left_impl(x, y, a, q.comp(x, b, a, g, h2), h);
                        r.check(lhs == rhs, "adjoint (3b)", || format!("{} h={} h'={}", pair(), h.0, h2.0));
                    }
                }
                // (4a) h: B→Y, h': X→Y
                for h in q.hom(b, y).elems() {
                    let hf = q.comp(a, b, y, h, f);
                    for h2 in q.hom(x, y).elems() {
                        let lhs = q.comp(x, b, a, g, q.right_impl(b, y, x, h, h2));
                        let rhs = q.right_impl(a, y, x, hf, h2);
                        r.check(lhs == rhs, "adjoint (4a)", || format!("{} h={} h'={}", pair(), h.0, h2.0));
                    }
                }
                // (4b) h: X→B, h': X→Y
                for h in q.hom(x, b).elems() {
                    let gh = q.comp(x, b, a, g, h);
                    for h2 in q.hom(x, y).elems() {
                        let lhs = q.comp(a, b, y, q.left_impl(x, b, y, h2, h), f);
                        let rhs = q.left_impl(x, a, y, h2, gh);
                        r.check(lhs == rhs, "adjoint (4b)", || format!("{} h={} h'={}", pair(), h.0, h2.0));
                    }
                }
            }
        }
    }
    r
}
