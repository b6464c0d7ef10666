//! Law suites run over a workspace: every invariant the library promises,
//! evaluated on the workspace's own quantaloid, categories, functors,
//! distributors, infomorphisms and closure spaces.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::closure::{
    canonical_closure, eta_unit, fixed_points, is_continuous, preimages_of_closed_are_closed, triangle_functors,
    QClosureSpace,
};
use crate::doc::Workspace;
use crate::error::{Error, Result};
use crate::isbell::{
    certify_dense_pair, concept_lattice, dense_pair_reconstruction, infomorphism_to_continuous, is_isomorphism,
    is_state_property_system, isbell_closure, zeta, Certification, IsbellAdjunction,
};
use crate::kan::{girard_kan_identity_check, kan_closure, why_kan_check, GirardDistributorContext, KanAdjunction};
use crate::presheaf::{is_complete, presheaf_hom, transport, Direction, Presheaf, PresheafCategory};
use crate::qcat::{is_functor_adjunction, same_category, QCategory};
use crate::qdist::{
    compose_dist, compose_infomorphisms, dist_left_implication, dist_right_implication, graph, cograph,
    identity_dist, is_dist_adjunction, QDistributor,
};
use crate::quantaloid::{adjoint_arrow_identities, girard_identities, residuation_report};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quantaloid,
    Dist,
    Presheaf,
    Closure,
    Isbell,
    Kan,
    Girard,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::Quantaloid,
        Suite::Dist,
        Suite::Presheaf,
        Suite::Closure,
        Suite::Isbell,
        Suite::Kan,
        Suite::Girard,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Quantaloid => "quantaloid",
            Suite::Dist => "dist",
            Suite::Presheaf => "presheaf",
            Suite::Closure => "closure",
            Suite::Isbell => "isbell",
            Suite::Kan => "kan",
            Suite::Girard => "girard",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub module: String,
    pub law: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "detail")]
pub enum SuiteStatus {
    Passed,
    Failed,
    Skipped(String),
    CapExceeded(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    #[serde(flatten)]
    pub status: SuiteStatus,
    pub findings: Vec<Finding>,
}

/// Collects scoped violations for one suite.
struct Log {
    module: &'static str,
    findings: Vec<Finding>,
}

impl Log {
    fn report(&mut self, scope: &str, r: Report) {
        for v in r.violations {
            self.findings.push(Finding {
                module: self.module.to_string(),
                law: v.law,
                witness: if scope.is_empty() {
                    v.witness
                } else {
                    format!("{scope}: {}", v.witness)
                },
            });
        }
    }

    fn check(&mut self, holds: bool, scope: &str, law: &str, witness: impl FnOnce() -> String) {
        if !holds {
            let mut r = Report::new();
            r.push(law, witness());
            self.report(scope, r);
        }
    }
}

/// Every validator over the workspace: quantaloid axioms, the dualizing
/// family if present, and the laws of each named category, functor,
/// distributor, infomorphism, closure space and presheaf.
pub fn validate_workspace(ws: &Workspace, cap: usize) -> Result<Vec<Finding>> {
    let mut out = vec![];
    let mut add = |module: &'static str, name: &str, r: Report| {
        let mut log = Log { module, findings: vec![] };
        log.report(name, r);
        out.extend(log.findings);
    };
    let q = &ws.quantaloid;
    add("quantaloid", "", q.validate());
    if let Some(fam) = q.dualizing() {
        add("quantaloid", "dualizing family", fam.validate(q));
    }
    for (n, c) in &ws.categories {
        add("category", n, c.validate());
    }
    for (n, (_, _, f)) in &ws.functors {
        add("functor", n, f.validate().report);
    }
    for (n, (_, _, d)) in &ws.distributors {
        add("distributor", n, d.validate());
    }
    for n in ws.infomorphisms.keys() {
        let mut r = Report::new();
        r.check(ws.infomorphism(n)?.holds(), "infomorphism", || "φ(x,Gy') ≠ ψ(Fx,y')".into());
        add("infomorphism", n, r);
    }
    for n in ws.closures.keys() {
        add("closure", n, ws.closure_space(n, cap)?.validate());
    }
    for (n, (c, mu)) in &ws.presheaves {
        add("presheaf", n, mu.validate(ws.category(c)?));
    }
    Ok(out)
}

/// Runs `suite` (each suite in turn for [`Suite::All`]).
pub fn run_suite(ws: &Workspace, suite: Suite, cap: usize) -> Vec<SuiteOutcome> {
    if suite == Suite::All {
        return Suite::EACH.into_iter().map(|s| run_one(ws, s, cap)).collect();
    }
    vec![run_one(ws, suite, cap)]
}

fn run_one(ws: &Workspace, suite: Suite, cap: usize) -> SuiteOutcome {
    let mut log = Log {
        module: suite.name(),
        findings: vec![],
    };
    let result = match suite {
        Suite::Quantaloid => quantaloid_suite(ws, &mut log),
        Suite::Dist => dist_suite(ws, &mut log),
        Suite::Presheaf => presheaf_suite(ws, cap, &mut log),
        Suite::Closure => closure_suite(ws, cap, &mut log),
        Suite::Isbell => isbell_suite(ws, cap, &mut log),
        Suite::Kan => kan_suite(ws, cap, &mut log),
        Suite::Girard => {
            if ws.quantaloid.dualizing().is_none() {
                return SuiteOutcome {
                    suite,
                    status: SuiteStatus::Skipped("the quantaloid carries no dualizing family".into()),
                    findings: vec![],
                };
            }
            girard_suite(ws, cap, &mut log)
        }
        Suite::All => unreachable!("expanded by run_suite"),
    };
    let status = match result {
        Ok(()) if log.findings.is_empty() => SuiteStatus::Passed,
        Ok(()) => SuiteStatus::Failed,
        Err(Error::CapExceeded { estimate, cap }) => {
            SuiteStatus::CapExceeded(format!("enumeration needs about {estimate} presheaves, cap is {cap}"))
        }
        Err(e) => {
            log.findings.push(Finding {
                module: suite.name().into(),
                law: "precondition".into(),
                witness: e.to_string(),
            });
            SuiteStatus::Failed
        }
    };
    SuiteOutcome {
        suite,
        status,
        findings: log.findings,
    }
}

fn quantaloid_suite(ws: &Workspace, log: &mut Log) -> Result<()> {
    let q = &ws.quantaloid;
    let laws = q.validate();
    let ok = laws.is_empty();
    log.report("quantaloid", laws);
    if ok {
        log.report("quantaloid", residuation_report(q));
        log.report("quantaloid", adjoint_arrow_identities(q));
    }
    Ok(())
}

fn join_dist(a: &QDistributor, b: &QDistributor) -> QDistributor {
    let q = a.source.quantaloid().clone();
    let (s, t) = (&a.source, &a.target);
    QDistributor::from_fn(s.clone(), t.clone(), |x, y| q.join(s.ty(x), t.ty(y), a.get(x, y), b.get(x, y)))
        .expect("joins stay in their carriers")
}

fn pool(ws: &Workspace) -> Vec<(String, QDistributor)> {
    let mut v: Vec<(String, QDistributor)> = ws
        .distributors
        .iter()
        .map(|(n, (_, _, d))| (n.clone(), d.clone()))
        .collect();
    for (n, c) in &ws.categories {
        v.push((format!("id[{n}]"), identity_dist(c)));
    }
    v
}

fn dist_suite(ws: &Workspace, log: &mut Log) -> Result<()> {
    for (name, (_, _, d)) in &ws.distributors {
        log.report(name, d.validate());
    }
    let pool = pool(ws);
    let chain = |a: &QDistributor, b: &QDistributor| same_category(&a.target, &b.source);
    for (n1, p) in &pool {
        let ida = identity_dist(&p.source);
        let idb = identity_dist(&p.target);
        log.check(compose_dist(p, &ida)? == *p, n1, "unit law (right)", String::new);
        log.check(compose_dist(&idb, p)? == *p, n1, "unit law (left)", String::new);
        for (n2, q) in pool.iter().filter(|(_, q)| chain(p, q)) {
            let qp = compose_dist(q, p)?;
            for (n3, r) in pool.iter().filter(|(_, r)| chain(q, r)) {
                let lhs = compose_dist(r, &qp)?;
                let rhs = compose_dist(&compose_dist(r, q)?, p)?;
                log.check(lhs == rhs, "", "associativity", || format!("{n3}∘{n2}∘{n1}"));
            }
            // residuation against every η with the boundary of q∘p
            for (n3, eta) in &pool {
                if !same_category(&eta.source, &p.source) || !same_category(&eta.target, &q.target) {
                    continue;
                }
                let le = qp.leq(eta)?;
                let left = q.leq(&dist_left_implication(eta, p)?)?;
                let right = p.leq(&dist_right_implication(q, eta)?)?;
                log.check(le == left, "", "left implication adjointness", || format!("{n2}∘{n1} ≤ {n3}"));
                log.check(le == right, "", "right implication adjointness", || format!("{n2}∘{n1} ≤ {n3}"));
            }
            // ψ∘(φ1 ∨ φ2) = ψ∘φ1 ∨ ψ∘φ2
            for (n4, p2) in &pool {
                if !same_category(&p2.source, &p.source) || !same_category(&p2.target, &p.target) {
                    continue;
                }
                let lhs = compose_dist(q, &join_dist(p, p2))?;
                let rhs = join_dist(&qp, &compose_dist(q, p2)?);
                log.check(lhs == rhs, "", "join preservation", || format!("{n2}∘({n1} ∨ {n4})"));
            }
        }
    }
    for (name, (_, _, f)) in &ws.functors {
        log.check(is_dist_adjunction(&graph(f), &cograph(f))?, name, "graph ⊣ cograph", String::new);
    }
    let infos: Vec<_> = ws
        .infomorphisms
        .keys()
        .map(|n| ws.infomorphism(n).map(|i| (n.clone(), i)))
        .collect::<Result<_>>()?;
    for (n, i) in &infos {
        log.check(i.holds(), n, "infomorphism", || "φ(x,Gy') ≠ ψ(Fx,y')".into());
    }
    for (n1, i1) in &infos {
        for (n2, i2) in &infos {
            if i1.psi == i2.phi && i1.holds() && i2.holds() {
                let c = compose_infomorphisms(i1, i2)?;
                log.check(c.holds(), "", "infomorphism composition", || format!("{n2}∘{n1}"));
            }
        }
    }
    Ok(())
}

fn presheaf_category(ws: &Workspace, name: &str, cap: usize) -> Result<Arc<PresheafCategory>> {
    Ok(Arc::new(PresheafCategory::contravariant(ws.category(name)?.clone(), cap)?))
}

fn presheaf_suite(ws: &Workspace, cap: usize, log: &mut Log) -> Result<()> {
    for (name, a) in &ws.categories {
        let pa = presheaf_category(ws, name, cap)?;
        for m in pa.objects() {
            let mu = pa.presheaf(m);
            for x in a.objects() {
                let y = Presheaf::yoneda(a, x);
                log.check(presheaf_hom(a, &y, &mu) == mu.values[x], name, "Yoneda", || {
                    format!("PA(Y {}, {})", a.name(x), pa.object_name(m))
                });
            }
        }
        let c = is_complete(&pa)?;
        log.check(c.consistent(), name, "completeness criteria agree", || format!("{c:?}"));
    }
    for (name, (s, t, f)) in &ws.functors {
        let (pa, pb) = (presheaf_category(ws, s, cap)?, presheaf_category(ws, t, cap)?);
        let fwd = transport(f, Direction::Forward, &pa, &pb)?;
        let back = transport(f, Direction::Backward, &pa, &pb)?;
        log.check(is_functor_adjunction(&fwd, &back)?, name, "F→ ⊣ F←", String::new);
        let ya = pa.yoneda_functor();
        let yb = pb.yoneda_functor();
        for x in f.source.objects() {
            log.check(fwd.map[ya.map[x]] == yb.map[f.map[x]], name, "Yoneda naturality", || {
                f.source.name(x).to_string()
            });
        }
    }
    for (name, (cat, mu)) in &ws.presheaves {
        log.report(name, mu.validate(ws.category(cat)?));
    }
    Ok(())
}

fn spaces(ws: &Workspace, cap: usize) -> Result<Vec<(String, QClosureSpace)>> {
    let mut v = vec![];
    for n in ws.closures.keys() {
        v.push((n.clone(), ws.closure_space(n, cap)?));
    }
    Ok(v)
}

fn complete_skeletal(a: &Arc<QCategory>, cap: usize) -> Result<bool> {
    Ok(a.is_skeletal() && is_complete(&PresheafCategory::contravariant(a.clone(), cap)?)?.complete)
}

fn closure_suite(ws: &Workspace, cap: usize, log: &mut Log) -> Result<()> {
    let mut all = spaces(ws, cap)?;
    for (name, s) in &all {
        log.report(name, s.validate());
    }
    for (name, (_, _, d)) in &ws.distributors {
        all.push((format!("isbell[{name}]"), isbell_closure(d, cap)?));
        all.push((format!("kan[{name}]"), kan_closure(d, cap)?));
    }
    for (name, s) in &all {
        if !s.validate().is_empty() {
            log.report(name, s.validate());
            continue;
        }
        let sys = fixed_points(&s.operator())?;
        log.check(sys.members() == &s.closed()[..], name, "fixed points", String::new);
        log.check(sys.is_closure_system(), name, "closure system", String::new);
        let eta = eta_unit(s);
        let fixed = eta.target.clone();
        let cx = canonical_closure(fixed, cap)?;
        log.check(is_continuous(&eta, s, &cx)?, name, "η is continuous", String::new);
    }
    for (fname, (_, _, f)) in &ws.functors {
        for (n1, c) in all.iter().filter(|(_, c)| same_category(c.base(), &f.source)) {
            for (n2, d) in all.iter().filter(|(_, d)| same_category(d.base(), &f.target)) {
                let cont = is_continuous(f, c, d)?;
                let pre = preimages_of_closed_are_closed(f, c, d)?;
                let w = || format!("{fname}: {n1} → {n2}");
                log.check(cont == pre, "", "continuity via closed preimages", w);
                if cont {
                    let (l, r) = triangle_functors(f, c, d)?;
                    log.check(is_functor_adjunction(&l, &r)?, "", "F▷ ⊣ F◁", w);
                }
            }
        }
    }
    for (name, a) in &ws.categories {
        if complete_skeletal(a, cap)? {
            let eta = eta_unit(&canonical_closure(a.clone(), cap)?);
            log.check(is_isomorphism(&eta), name, "T∘D(A) ≅ A", String::new);
        }
    }
    Ok(())
}

fn isbell_suite(ws: &Workspace, cap: usize, log: &mut Log) -> Result<()> {
    for (name, (_, _, phi)) in &ws.distributors {
        let adj = IsbellAdjunction::new(phi, cap)?;
        log.check(adj.adjunction_failure().is_none(), name, "φ↑ ⊣ φ↓", || {
            let (m, l) = adj.adjunction_failure().unwrap();
            format!("({}, {})", adj.pa.object_name(m), adj.pdb.object_name(l))
        });
        let m = concept_lattice(phi, cap)?;
        for i in 0..m.len() {
            for j in 0..m.len() {
                let li = adj.pdb.index_of_co(&m.intent(i).expect("isbell")).expect("copresheaf");
                let lj = adj.pdb.index_of_co(&m.intent(j).expect("isbell")).expect("copresheaf");
                log.check(m.hom(i, j) == adj.pdb.hom(li, lj), name, "PA(μ1,μ2) = P†B(λ1,λ2)", || {
                    format!("({}, {})", m.category.name(i), m.category.name(j))
                });
            }
        }
        let (f, g) = dense_pair_reconstruction(&m)?;
        match certify_dense_pair(phi, &m.category, &f, &g, cap)? {
            Certification::Iso(_) => {}
            Certification::Counterexample(w) => log.check(false, name, "dense pair", || w),
        }
        let space = adj.closure();
        let back = isbell_closure(&zeta(&space), cap)?;
        log.check(back.map() == space.map(), name, "C = ζ↓∘ζ↑", String::new);
    }
    for n in ws.infomorphisms.keys() {
        let info = ws.infomorphism(n)?;
        if info.holds() {
            log.check(infomorphism_to_continuous(&info, cap).is_ok(), n, "U(F,G) is continuous", String::new);
        }
    }
    for (name, s) in spaces(ws, cap)? {
        if !s.validate().is_empty() {
            continue;
        }
        let z = zeta(&s);
        let back = isbell_closure(&z, cap)?;
        log.check(back.map() == s.map(), &name, "C = ζ↓∘ζ↑", String::new);
        let sps = is_state_property_system(&z, cap)?;
        log.check(sps.holds, &name, "ζ_C is a state property system", || sps.failure.clone().unwrap_or_default());
    }
    Ok(())
}

fn kan_suite(ws: &Workspace, cap: usize, log: &mut Log) -> Result<()> {
    for (name, (_, _, phi)) in &ws.distributors {
        let k = KanAdjunction::new(phi, cap)?;
        log.check(k.adjunction_failure().is_none(), name, "φ* ⊣ φ_*", || {
            let (l, m) = k.adjunction_failure().unwrap();
            format!("({}, {})", k.pb.object_name(l), k.pa.object_name(m))
        });
        log.report(name, k.closure().validate());
    }
    for (name, (_, _, f)) in &ws.functors {
        log.report(name, why_kan_check(f, cap)?);
    }
    for n in ws.infomorphisms.keys() {
        let info = ws.infomorphism(n)?;
        if info.holds() {
            let c = kan_closure(&info.psi, cap)?;
            let d = kan_closure(&info.phi, cap)?;
            log.check(is_continuous(&info.g, &c, &d)?, n, "K(F,G) is continuous", String::new);
        }
    }
    Ok(())
}

fn girard_suite(ws: &Workspace, cap: usize, log: &mut Log) -> Result<()> {
    let q = &ws.quantaloid;
    let fam = q.dualizing().expect("checked by the caller").clone();
    let r = fam.validate(q);
    if !r.is_empty() {
        log.report("dualizing family", r);
        return Ok(());
    }
    log.report("quantaloid", girard_identities(q, &fam));
    let ctx = GirardDistributorContext::with_family(q.clone(), fam)?;
    for (name, (_, _, phi)) in &ws.distributors {
        log.report(name, girard_kan_identity_check(&ctx, phi, cap)?);
    }
    for (name, a) in &ws.categories {
        log.report(name, ctx.neg_category(a)?.validate());
    }
    Ok(())
}
