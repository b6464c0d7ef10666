//! JSON documents: quantaloids, categories, functors, distributors,
//! infomorphisms, closure spaces, presheaf literals, whole workspaces, and
//! the lattice output of `M(φ)` and `K(φ)`.
//!
//! Serialization is canonical: maps are key-sorted, defaulted entries are
//! omitted, and every lattice element is written as its label.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::closure::QClosureSpace;
use crate::error::{Error, Result};
use crate::isbell::{ConceptLattice, LatticeKind};
use crate::presheaf::{Presheaf, PresheafCategory};
use crate::qcat::{QCategory, QFunctor, QTypedSet};
use crate::qdist::{Infomorphism, QDistributor};
use crate::quantaloid::{Builtin, DualizingFamily, Elem, HomLattice, Obj, Quantaloid};

/// One hom lattice. `leq` lists strict pairs `a < b`; any generating set is
/// accepted on input and closed reflexively and transitively. `joins` and
/// `meets` are optional on input and derived from the order when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub carrier: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joins: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meets: Option<Vec<Vec<String>>>,
}

/// An explicit quantaloid. `compose["A->B->C"][g][f]` is `g∘f` for
/// `f ∈ Q(A,B)`, `g ∈ Q(B,C)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaloidDoc {
    pub objects: Vec<String>,
    pub homs: BTreeMap<String, HomDoc>,
    pub compose: BTreeMap<String, Vec<Vec<String>>>,
    pub units: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dualizing: Option<BTreeMap<String, String>>,
}

/// A built-in name such as `"boolean"` or `"lukasiewicz(3)"`, or a full document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaloidRef {
    Builtin(String),
    Explicit(QuantaloidDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDoc {
    pub id: String,
    #[serde(rename = "type")]
    pub ty: String,
}

/// Omitted `"x,y"` entries are the unit on the diagonal and `⊥` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<ObjectDoc>,
    #[serde(default)]
    pub hom: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: String,
    pub target: String,
    pub map: BTreeMap<String, String>,
}

/// Omitted `"x,y"` entries are `⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributorDoc {
    pub source: String,
    pub target: String,
    #[serde(default)]
    pub matrix: BTreeMap<String, String>,
}

/// `(F, G): φ → ψ` by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfomorphismDoc {
    pub f: String,
    pub g: String,
    pub phi: String,
    pub psi: String,
}

/// A closure operator on `P(category)` as a map between canonical presheaf
/// indices; omitted indices are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureDoc {
    pub category: String,
    #[serde(default)]
    pub closure: BTreeMap<usize, usize>,
}

/// `{type, values: {x: elem}}` over a named category; omitted values are `⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafDoc {
    pub category: String,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    pub quantaloid: QuantaloidRef,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, CategoryDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functors: BTreeMap<String, FunctorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub distributors: BTreeMap<String, DistributorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub infomorphisms: BTreeMap<String, InfomorphismDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub closures: BTreeMap<String, ClosureDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub presheaves: BTreeMap<String, PresheafDoc>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn find_label(h: &HomLattice, label: &str, ctx: &str) -> Result<Elem> {
    h.find(label)
        .ok_or_else(|| parse_err(format!("`{label}` is not an element of {ctx}")))
}

fn split_pair(key: &str) -> Result<(&str, &str)> {
    key.split_once(',')
        .ok_or_else(|| parse_err(format!("key `{key}` is not of the form \"x,y\"")))
}

// ---------------------------------------------------------------------------
// quantaloids

impl QuantaloidDoc {
    pub fn build(&self) -> Result<Quantaloid> {
        let objs = &self.objects;
        let n = objs.len();
        let mut homs = Vec::with_capacity(n * n);
        for a in objs {
            for b in objs {
                let key = format!("{a}->{b}");
                let d = self
                    .homs
                    .get(&key)
                    .ok_or_else(|| parse_err(format!("missing hom `{key}`")))?;
                homs.push(d.build(&key)?);
            }
        }
        if self.homs.len() != n * n {
            let extra = self.homs.keys().find(|k| {
                !objs.iter().any(|a| objs.iter().any(|b| **k == format!("{a}->{b}")))
            });
            return Err(parse_err(format!("unknown hom `{}`", extra.map_or("", |s| s))));
        }
        let mut compose = Vec::with_capacity(n * n * n);
        for (ia, a) in objs.iter().enumerate() {
            for (ib, b) in objs.iter().enumerate() {
                for (ic, c) in objs.iter().enumerate() {
                    let key = format!("{a}->{b}->{c}");
                    let rows = self
                        .compose
                        .get(&key)
                        .ok_or_else(|| parse_err(format!("missing composition table `{key}`")))?;
                    let (ab, bc, ac) = (&homs[ia * n + ib], &homs[ib * n + ic], &homs[ia * n + ic]);
                    if rows.len() != bc.len() || rows.iter().any(|r| r.len() != ab.len()) {
                        return Err(parse_err(format!(
                            "composition table `{key}` must be {}×{}",
                            bc.len(),
                            ab.len()
                        )));
                    }
                    let ctx = format!("Q({a},{c})");
                    let mut t = Vec::with_capacity(ab.len() * bc.len());
                    for row in rows {
                        for l in row {
                            t.push(find_label(ac, l, &ctx)?);
                        }
                    }
                    compose.push(t);
                }
            }
        }
        if self.compose.len() != n * n * n {
            return Err(parse_err("unknown composition table"));
        }
        let mut units = Vec::with_capacity(n);
        for (i, a) in objs.iter().enumerate() {
            let l = self
                .units
                .get(a)
                .ok_or_else(|| parse_err(format!("missing unit of `{a}`")))?;
            units.push(find_label(&homs[i * n + i], l, &format!("Q({a},{a})"))?);
        }
        if self.units.len() != n {
            return Err(parse_err("unit given for an unknown object"));
        }
        let q = Quantaloid::from_parts(objs.clone(), homs, compose, units)?;
        match &self.dualizing {
            None => Ok(q),
            Some(d) => {
                let mut fam = Vec::with_capacity(n);
                for (i, a) in objs.iter().enumerate() {
                    let l = d
                        .get(a)
                        .ok_or_else(|| parse_err(format!("missing dualizing element of `{a}`")))?;
                    fam.push(find_label(q.hom(Obj(i as u16), Obj(i as u16)), l, &format!("Q({a},{a})"))?);
                }
                q.with_dualizing(DualizingFamily::new(fam))
            }
        }
    }

    pub fn from_quantaloid(q: &Quantaloid) -> Self {
        let names = q.object_names();
        let mut homs = BTreeMap::new();
        let mut compose = BTreeMap::new();
        for a in q.objects() {
            for b in q.objects() {
                let h = q.hom(a, b);
                homs.insert(format!("{}->{}", names[a.idx()], names[b.idx()]), HomDoc::from_lattice(h));
                for c in q.objects() {
                    let (ab, bc) = (q.hom(a, b), q.hom(b, c));
                    let rows = bc
                        .elems()
                        .map(|g| ab.elems().map(|f| q.label(a, c, q.comp(a, b, c, g, f)).to_string()).collect())
                        .collect();
                    compose.insert(
                        format!("{}->{}->{}", names[a.idx()], names[b.idx()], names[c.idx()]),
                        rows,
                    );
                }
            }
        }
        let units = q
            .objects()
            .map(|a| (names[a.idx()].clone(), q.label(a, a, q.unit(a)).to_string()))
            .collect();
        let dualizing = q.dualizing().map(|d| {
            q.objects()
                .map(|a| (names[a.idx()].clone(), q.label(a, a, d.at(a)).to_string()))
                .collect()
        });
        Self {
            objects: names.to_vec(),
            homs,
            compose,
            units,
            dualizing,
        }
    }
}

impl HomDoc {
    fn build(&self, ctx: &str) -> Result<HomLattice> {
        let labels = self.carrier.clone();
        let n = labels.len();
        let idx = |l: &str| {
            labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| parse_err(format!("`{l}` is not in the carrier of {ctx}")))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in &self.leq {
            leq[idx(a)? * n + idx(b)?] = true;
        }
        // transitive closure
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        match (&self.joins, &self.meets) {
            (None, None) => HomLattice::from_order(labels, leq),
            (Some(j), Some(m)) => {
                let table = |t: &Vec<Vec<String>>, what: &str| -> Result<Vec<Elem>> {
                    if t.len() != n || t.iter().any(|r| r.len() != n) {
                        return Err(parse_err(format!("{what} table of {ctx} must be {n}×{n}")));
                    }
                    t.iter()
                        .flatten()
                        .map(|l| idx(l).map(|i| Elem(i as u16)))
                        .collect()
                };
                let (join, meet) = (table(j, "join")?, table(m, "meet")?);
                let top = (0..n)
                    .find(|&t| (0..n).all(|x| leq[x * n + t]))
                    .ok_or_else(|| parse_err(format!("{ctx} has no top element")))?;
                let bottom = (0..n)
                    .find(|&b| (0..n).all(|x| leq[b * n + x]))
                    .ok_or_else(|| parse_err(format!("{ctx} has no bottom element")))?;
                HomLattice::from_tables(labels, leq, join, meet, Elem(top as u16), Elem(bottom as u16))
            }
            _ => Err(parse_err(format!("{ctx}: give both joins and meets, or neither"))),
        }
    }

    fn from_lattice(h: &HomLattice) -> Self {
        let l = |e: Elem| h.label(e).to_string();
        let mut leq = vec![];
        for a in h.elems() {
            for b in h.elems() {
                if a != b && h.leq(a, b) {
                    leq.push((l(a), l(b)));
                }
            }
        }
        let table = |f: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Vec<String>> {
            h.elems().map(|a| h.elems().map(|b| l(f(a, b))).collect()).collect()
        };
        Self {
            carrier: h.labels().to_vec(),
            leq,
            joins: Some(table(&|a, b| h.join(a, b))),
            meets: Some(table(&|a, b| h.meet(a, b))),
        }
    }
}

impl QuantaloidRef {
    pub fn build(&self) -> Result<Quantaloid> {
        match self {
            QuantaloidRef::Builtin(name) => {
                let b: Builtin = name.parse().map_err(|e: Error| parse_err(e.to_string()))?;
                b.build().map_err(|e| parse_err(e.to_string()))
            }
            QuantaloidRef::Explicit(doc) => doc.build(),
        }
    }
}

// ---------------------------------------------------------------------------
// categories, functors, distributors

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() || id.contains(',') {
        return Err(parse_err(format!("object id `{id}` must be non-empty and free of ','")));
    }
    Ok(())
}

impl CategoryDoc {
    pub fn build(&self, q: &Arc<Quantaloid>) -> Result<QCategory> {
        let mut elems = Vec::with_capacity(self.objects.len());
        for o in &self.objects {
            check_id(&o.id)?;
            elems.push((o.id.clone(), q.object(&o.ty).map_err(|e| parse_err(e.to_string()))?));
        }
        let base = QTypedSet::new(elems);
        let n = base.len();
        let mut hom: Vec<Elem> = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                if x == y {
                    q.unit(base.types[x])
                } else {
                    q.bottom(base.types[x], base.types[y])
                }
            })
            .collect();
        let find = |id: &str| {
            base.names
                .iter()
                .position(|s| s == id)
                .ok_or_else(|| Error::UnknownObject(id.to_string()))
        };
        for (key, label) in &self.hom {
            let (x, y) = split_pair(key)?;
            let (i, j) = (find(x)?, find(y)?);
            let h = q.hom(base.types[i], base.types[j]);
            hom[i * n + j] = find_label(h, label, &format!("hom({x},{y})"))?;
        }
        QCategory::new(q.clone(), base, hom)
    }

    pub fn from_category(c: &QCategory) -> Self {
        let q = c.quantaloid();
        let objects = c
            .objects()
            .map(|x| ObjectDoc {
                id: c.name(x).to_string(),
                ty: q.object_name(c.ty(x)).to_string(),
            })
            .collect();
        let mut hom = BTreeMap::new();
        for x in c.objects() {
            for y in c.objects() {
                let (tx, ty) = (c.ty(x), c.ty(y));
                let default = if x == y { q.unit(tx) } else { q.bottom(tx, ty) };
                let e = c.hom(x, y);
                if e != default {
                    hom.insert(format!("{},{}", c.name(x), c.name(y)), q.label(tx, ty, e).to_string());
                }
            }
        }
        Self { objects, hom }
    }
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, what: &str) -> Result<&'a T> {
    map.get(name)
        .ok_or_else(|| Error::UnknownObject(format!("{what} `{name}`")))
}

impl FunctorDoc {
    pub fn build(&self, cats: &BTreeMap<String, Arc<QCategory>>) -> Result<QFunctor> {
        let s = lookup(cats, &self.source, "category")?.clone();
        let t = lookup(cats, &self.target, "category")?.clone();
        let mut map = vec![usize::MAX; s.len()];
        for (x, y) in &self.map {
            map[s.index(x)?] = t.index(y)?;
        }
        if let Some(x) = map.iter().position(|&y| y == usize::MAX) {
            return Err(parse_err(format!("functor leaves `{}` unmapped", s.name(x))));
        }
        QFunctor::new(s, t, map)
    }

    pub fn from_functor(f: &QFunctor, source: &str, target: &str) -> Self {
        Self {
            source: source.to_string(),
            target: target.to_string(),
            map: f
                .source
                .objects()
                .map(|x| (f.source.name(x).to_string(), f.target.name(f.map[x]).to_string()))
                .collect(),
        }
    }
}

impl DistributorDoc {
    pub fn build(&self, cats: &BTreeMap<String, Arc<QCategory>>) -> Result<QDistributor> {
        let s = lookup(cats, &self.source, "category")?.clone();
        let t = lookup(cats, &self.target, "category")?.clone();
        let q = s.quantaloid().clone();
        let mut d = QDistributor::bottom(s.clone(), t.clone())?;
        for (key, label) in &self.matrix {
            let (x, y) = split_pair(key)?;
            let (i, j) = (s.index(x)?, t.index(y)?);
            d.set(i, j, find_label(q.hom(s.ty(i), t.ty(j)), label, &format!("entry ({x},{y})"))?)?;
        }
        Ok(d)
    }

    pub fn from_distributor(d: &QDistributor, source: &str, target: &str) -> Self {
        let (a, b) = (&d.source, &d.target);
        let q = a.quantaloid();
        let mut matrix = BTreeMap::new();
        for x in a.objects() {
            for y in b.objects() {
                let e = d.get(x, y);
                if e != q.bottom(a.ty(x), b.ty(y)) {
                    matrix.insert(format!("{},{}", a.name(x), b.name(y)), q.label(a.ty(x), b.ty(y), e).to_string());
                }
            }
        }
        Self {
            source: source.to_string(),
            target: target.to_string(),
            matrix,
        }
    }
}

impl PresheafDoc {
    pub fn build(&self, cats: &BTreeMap<String, Arc<QCategory>>) -> Result<Presheaf> {
        let a = lookup(cats, &self.category, "category")?;
        let q = a.quantaloid();
        let t = q.object(&self.ty).map_err(|e| parse_err(e.to_string()))?;
        let mut values: Vec<Elem> = a.objects().map(|x| q.bottom(a.ty(x), t)).collect();
        for (x, label) in &self.values {
            let i = a.index(x)?;
            values[i] = find_label(q.hom(a.ty(i), t), label, &format!("value at {x}"))?;
        }
        Ok(Presheaf { ty: t, values })
    }

    pub fn from_presheaf(a: &QCategory, category: &str, mu: &Presheaf) -> Self {
        let q = a.quantaloid();
        let values = a
            .objects()
            .filter(|&x| mu.values[x] != q.bottom(a.ty(x), mu.ty))
            .map(|x| (a.name(x).to_string(), q.label(a.ty(x), mu.ty, mu.values[x]).to_string()))
            .collect();
        Self {
            category: category.to_string(),
            ty: q.object_name(mu.ty).to_string(),
            values,
        }
    }
}

// ---------------------------------------------------------------------------
// workspaces

/// A resolved workspace. Everything is built and cross-referenced but no law
/// has been checked; closure spaces are resolved on demand because they need
/// the presheaf enumeration.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub quantaloid_ref: QuantaloidRef,
    pub quantaloid: Arc<Quantaloid>,
    pub categories: BTreeMap<String, Arc<QCategory>>,
    pub functors: BTreeMap<String, (String, String, QFunctor)>,
    pub distributors: BTreeMap<String, (String, String, QDistributor)>,
    pub infomorphisms: BTreeMap<String, InfomorphismDoc>,
    pub closures: BTreeMap<String, ClosureDoc>,
    pub presheaves: BTreeMap<String, (String, Presheaf)>,
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_doc(&from_json::<WorkspaceDoc>(text)?)
    }

    pub fn from_doc(doc: &WorkspaceDoc) -> Result<Self> {
        let q = Arc::new(doc.quantaloid.build()?);
        let mut categories = BTreeMap::new();
        for (name, c) in &doc.categories {
            categories.insert(name.clone(), Arc::new(c.build(&q)?));
        }
        let mut functors = BTreeMap::new();
        for (name, f) in &doc.functors {
            functors.insert(name.clone(), (f.source.clone(), f.target.clone(), f.build(&categories)?));
        }
        let mut distributors = BTreeMap::new();
        for (name, d) in &doc.distributors {
            distributors.insert(name.clone(), (d.source.clone(), d.target.clone(), d.build(&categories)?));
        }
        for (name, i) in &doc.infomorphisms {
            lookup(&functors, &i.f, "functor")?;
            lookup(&functors, &i.g, "functor")?;
            lookup(&distributors, &i.phi, "distributor")?;
            lookup(&distributors, &i.psi, "distributor")?;
            let ws_info = Self::infomorphism_from(&functors, &distributors, i);
            ws_info.map_err(|e| match e {
                Error::BoundaryMismatch(m) => Error::BoundaryMismatch(format!("infomorphism `{name}`: {m}")),
                e => e,
            })?;
        }
        for c in doc.closures.values() {
            lookup(&categories, &c.category, "category")?;
        }
        let mut presheaves = BTreeMap::new();
        for (name, p) in &doc.presheaves {
            presheaves.insert(name.clone(), (p.category.clone(), p.build(&categories)?));
        }
        Ok(Self {
            quantaloid_ref: doc.quantaloid.clone(),
            quantaloid: q,
            categories,
            functors,
            distributors,
            infomorphisms: doc.infomorphisms.clone(),
            closures: doc.closures.clone(),
            presheaves,
        })
    }

    fn infomorphism_from(
        functors: &BTreeMap<String, (String, String, QFunctor)>,
        distributors: &BTreeMap<String, (String, String, QDistributor)>,
        i: &InfomorphismDoc,
    ) -> Result<Infomorphism> {
        Infomorphism::new(
            lookup(functors, &i.f, "functor")?.2.clone(),
            lookup(functors, &i.g, "functor")?.2.clone(),
            lookup(distributors, &i.phi, "distributor")?.2.clone(),
            lookup(distributors, &i.psi, "distributor")?.2.clone(),
        )
    }

    pub fn to_doc(&self) -> WorkspaceDoc {
        WorkspaceDoc {
            quantaloid: self.quantaloid_ref.clone(),
            categories: self
                .categories
                .iter()
                .map(|(n, c)| (n.clone(), CategoryDoc::from_category(c)))
                .collect(),
            functors: self
                .functors
                .iter()
                .map(|(n, (s, t, f))| (n.clone(), FunctorDoc::from_functor(f, s, t)))
                .collect(),
            distributors: self
                .distributors
                .iter()
                .map(|(n, (s, t, d))| (n.clone(), DistributorDoc::from_distributor(d, s, t)))
                .collect(),
            infomorphisms: self.infomorphisms.clone(),
            closures: self
                .closures
                .iter()
                .map(|(n, c)| {
                    let closure = c.closure.iter().filter(|(k, v)| k != v).map(|(&k, &v)| (k, v)).collect();
                    (
                        n.clone(),
                        ClosureDoc {
                            category: c.category.clone(),
                            closure,
                        },
                    )
                })
                .collect(),
            presheaves: self
                .presheaves
                .iter()
                .map(|(n, (c, p))| (n.clone(), PresheafDoc::from_presheaf(&self.categories[c], c, p)))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        to_json(&self.to_doc())
    }

    pub fn category(&self, name: &str) -> Result<&Arc<QCategory>> {
        lookup(&self.categories, name, "category")
    }

    pub fn functor(&self, name: &str) -> Result<&QFunctor> {
        Ok(&lookup(&self.functors, name, "functor")?.2)
    }

    pub fn distributor(&self, name: &str) -> Result<&QDistributor> {
        Ok(&lookup(&self.distributors, name, "distributor")?.2)
    }

    pub fn infomorphism(&self, name: &str) -> Result<Infomorphism> {
        Self::infomorphism_from(&self.functors, &self.distributors, lookup(&self.infomorphisms, name, "infomorphism")?)
    }

    /// Enumerates `PA` and checks the index map against it (shape only).
    pub fn closure_space(&self, name: &str, cap: usize) -> Result<QClosureSpace> {
        let c = lookup(&self.closures, name, "closure space")?;
        let a = self.category(&c.category)?.clone();
        let pa = Arc::new(PresheafCategory::contravariant(a, cap)?);
        let mut op: Vec<usize> = pa.objects().collect();
        for (&k, &v) in &c.closure {
            if k >= op.len() {
                return Err(Error::Structural(format!(
                    "closure space `{name}`: presheaf index {k} outside the {} presheaves",
                    op.len()
                )));
            }
            op[k] = v;
        }
        QClosureSpace::new(pa, op)
    }
}

// ---------------------------------------------------------------------------
// lattice output

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConceptDoc {
    pub id: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub extent: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intent: Option<BTreeMap<String, String>>,
}

/// Output of the `concepts` and `kan` commands. `hom[i][j]` is the hom from
/// concept `i` to concept `j`; Kan documents carry no intents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub kind: LatticeKind,
    pub distributor: String,
    pub concepts: Vec<ConceptDoc>,
    pub hom: Vec<Vec<String>>,
}

impl LatticeDoc {
    pub fn from_lattice(m: &ConceptLattice, distributor: &str) -> Self {
        let base = m.space.base();
        let q = base.quantaloid();
        let phi = &m.phi;
        let concepts = (0..m.len())
            .map(|i| {
                let ext = m.extent(i);
                let t = ext.ty;
                let extent = base
                    .objects()
                    .map(|x| (base.name(x).to_string(), q.label(base.ty(x), t, ext.values[x]).to_string()))
                    .collect();
                let intent = m.intent(i).map(|lam| {
                    let b = &phi.target;
                    b.objects()
                        .map(|y| (b.name(y).to_string(), q.label(t, b.ty(y), lam.values[y]).to_string()))
                        .collect()
                });
                ConceptDoc {
                    id: m.category.name(i).to_string(),
                    ty: q.object_name(t).to_string(),
                    extent,
                    intent,
                }
            })
            .collect();
        let c = &m.category;
        let hom = c
            .objects()
            .map(|i| c.objects().map(|j| q.label(c.ty(i), c.ty(j), c.hom(i, j)).to_string()).collect())
            .collect();
        Self {
            kind: m.kind,
            distributor: distributor.to_string(),
            concepts,
            hom,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::ctx;
    use crate::isbell::concept_lattice;
    use crate::quantaloid::{lukasiewicz, rel_like};
    use crate::DEFAULT_CAP;

    const CTX: &str = r#"{
      "quantaloid": "boolean",
      "categories": {
        "A": {"objects": [{"id": "x1", "type": "*"}, {"id": "x2", "type": "*"}]},
        "B": {"objects": [{"id": "y1", "type": "*"}, {"id": "y2", "type": "*"}]}
      },
      "distributors": {
        "phi": {"source": "A", "target": "B", "matrix": {"x1,y1": "1", "x1,y2": "1", "x2,y2": "1"}}
      },
      "closures": {"C": {"category": "A", "closure": {"0": 1, "2": 3}}}
    }"#;

    #[test]
    fn quantaloid_round_trip() {
        for q in [lukasiewicz(3).unwrap(), rel_like(2).unwrap()] {
            let doc = QuantaloidDoc::from_quantaloid(&q);
            let text = to_json(&doc);
            let back: QuantaloidDoc = from_json(&text).unwrap();
            let q2 = back.build().unwrap();
            assert_eq!(q2, q);
            assert_eq!(to_json(&QuantaloidDoc::from_quantaloid(&q2)), text);
        }
    }

    #[test]
    fn quantaloid_from_order_only() {
        let doc = QuantaloidDoc::from_quantaloid(&lukasiewicz(3).unwrap());
        let mut stripped = doc.clone();
        for h in stripped.homs.values_mut() {
            h.joins = None;
            h.meets = None;
            // covers generate the order
            h.leq = vec![("0".into(), "1/2".into()), ("1/2".into(), "1".into())];
        }
        assert_eq!(stripped.build().unwrap(), lukasiewicz(3).unwrap());
    }

    #[test]
    fn workspace_round_trip() {
        let ws = Workspace::parse(CTX).unwrap();
        let c = ctx();
        assert_eq!(ws.distributor("phi").unwrap().matrix(), c.phi.matrix());
        let text = ws.to_json();
        let again = Workspace::parse(&text).unwrap().to_json();
        assert_eq!(text, again);
        let space = ws.closure_space("C", DEFAULT_CAP).unwrap();
        assert_eq!(space.map(), &[1, 1, 3, 3]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Workspace::parse("{"), Err(Error::Parse(_))));
        let bad = CTX.replace("\"x2,y2\": \"1\"", "\"x2,y2\": \"2\"");
        assert!(matches!(Workspace::parse(&bad), Err(Error::Parse(_))));
        let bad = CTX.replace("\"x2,y2\"", "\"x3,y2\"");
        assert!(matches!(Workspace::parse(&bad), Err(Error::UnknownObject(_))));
        let bad = CTX.replace("\"boolean\"", "\"nope\"");
        assert!(Workspace::parse(&bad).is_err());
    }

    #[test]
    fn lattice_document() {
        let c = ctx();
        let m = concept_lattice(&c.phi, DEFAULT_CAP).unwrap();
        let doc = LatticeDoc::from_lattice(&m, "phi");
        assert_eq!(doc.concepts.len(), 2);
        assert_eq!(doc.hom, vec![vec!["1", "1"], vec!["0", "1"]]);
        let text = to_json(&doc);
        assert!(text.contains("\"kind\": \"isbell\""));
        assert_eq!(from_json::<LatticeDoc>(&text).unwrap(), doc);
    }
}
