//! Small bundled examples used by tests, benchmarks and the command line.

use std::sync::Arc;

use crate::qcat::{QCategory, QTypedSet};
use crate::qdist::QDistributor;
use crate::quantaloid::{boolean, Elem, Obj, Quantaloid};

/// Bundled workspace documents.
pub const CTX_JSON: &str = include_str!("../fixtures/ctx.json");
pub const DIAMOND_JSON: &str = include_str!("../fixtures/diamond.json");
pub const L3_JSON: &str = include_str!("../fixtures/l3.json");
pub const BROKEN_UNIT_JSON: &str = include_str!("../fixtures/broken_unit.json");
pub const BUNDLED: [(&str, &str); 3] = [("ctx", CTX_JSON), ("diamond", DIAMOND_JSON), ("l3", L3_JSON)];

#[derive(Debug, Clone)]
pub struct Ctx {
    pub q: Arc<Quantaloid>,
    pub a: Arc<QCategory>,
    pub b: Arc<QCategory>,
    pub phi: QDistributor,
}

/// The Boolean context `x1 ↦ {y1,y2}`, `x2 ↦ {y2}` between discrete categories.
pub fn ctx() -> Ctx {
    let q = Arc::new(boolean());
    let a = discrete(&q, &["x1", "x2"]);
    let b = discrete(&q, &["y1", "y2"]);
    let phi = boolean_distributor(&a, &b, &[(0, 0), (0, 1), (1, 1)]);
    Ctx { q, a, b, phi }
}

/// Discrete category on `names`, all of the first quantaloid object's type.
pub fn discrete(q: &Arc<Quantaloid>, names: &[&str]) -> Arc<QCategory> {
    Arc::new(
        QCategory::discrete(q.clone(), QTypedSet::uniform(names.iter().copied(), Obj(0)))
            .expect("discrete categories are well formed"),
    )
}

/// The preorder category of a relation over a two-element chain quantaloid:
/// hom is top on `leq` pairs and bottom elsewhere.
pub fn preorder(q: &Arc<Quantaloid>, names: &[&str], leq: impl Fn(usize, usize) -> bool) -> Arc<QCategory> {
    let h = q.hom(Obj(0), Obj(0));
    let (top, bot) = (h.top(), h.bottom());
    Arc::new(
        QCategory::from_fn(q.clone(), QTypedSet::uniform(names.iter().copied(), Obj(0)), |x, y| {
            if x == y || leq(x, y) {
                top
            } else {
                bot
            }
        })
        .expect("preorder categories are well formed"),
    )
}

/// The one-object category with hom the unit.
pub fn point(q: &Arc<Quantaloid>, name: &str) -> Arc<QCategory> {
    let u = q.unit(Obj(0));
    Arc::new(QCategory::new(q.clone(), QTypedSet::uniform([name], Obj(0)), vec![u]).expect("well formed"))
}

/// A distributor over a two-element chain quantaloid with top exactly on `pairs`.
pub fn boolean_distributor(a: &Arc<QCategory>, b: &Arc<QCategory>, pairs: &[(usize, usize)]) -> QDistributor {
    let h = a.quantaloid().hom(Obj(0), Obj(0));
    let (top, bot) = (h.top(), h.bottom());
    QDistributor::from_fn(a.clone(), b.clone(), |x, y| if pairs.contains(&(x, y)) { top } else { bot })
        .expect("well formed")
}

/// Convenience for tests: elements by index.
pub fn elems(v: &[u16]) -> Vec<Elem> {
    v.iter().map(|&i| Elem(i)).collect()
}
