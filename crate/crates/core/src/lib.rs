//! Exact computation with finite quantaloids and quantaloid-enriched
//! categories: presheaf categories, Isbell and Kan adjunctions of a
//! distributor, their fixed-point categories, and exhaustive law checks.

pub mod closure;
pub mod doc;
pub mod dot;
pub mod error;
pub mod isbell;
pub mod kan;
pub mod fixtures;
pub mod presheaf;
pub mod qdist;
pub mod qcat;
pub mod quantaloid;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use quantaloid::{
    boolean, builtin_quantaloid, lukasiewicz, rel_like, Builtin, DualizingFamily, Elem, HomLattice, Obj, QArrow,
    Quantaloid,
};
pub use report::{Report, Violation};
pub use qcat::{
    enumerate_functors, functor_leq, is_functor_adjunction, left_adjoint, right_adjoint, FunctorReport, Preorder,
    QCategory, QFunctor, QTypedSet,
};
pub use presheaf::{
    backward_copresheaf, backward_presheaf, bound_search, copresheaf_hom, density_check, forward_copresheaf,
    forward_presheaf, inf_search, is_complete, presheaf_hom, presheaf_inf, presheaf_sup, sup_search,
    tensor_search, transport, weighted_colimit, weighted_limit, CoPresheaf, Direction, Presheaf,
    PresheafCategory, Variance, DEFAULT_CAP,
};
pub use qdist::{
    cograph, compose_dist, compose_infomorphisms, dist_left_implication, dist_right_implication, graph,
    identity_dist, is_dist_adjunction, is_infomorphism, Infomorphism, QDistributor,
};
pub use closure::{
    canonical_closure, classify_endo, eta_unit, fixed_points, is_continuous, preimages_of_closed_are_closed,
    triangle_functors, universal_extension, ClosureSystem, EndoClass, QClosureSpace, UniversalExtension,
};
pub use isbell::{
    certify_dense_pair, concept_lattice, dense_pair_reconstruction, infomorphism_to_continuous, is_isomorphism,
    is_state_property_system, isbell_closure, phi_down, phi_up, sps_unit, zeta, Certification, ConceptLattice,
    IsbellAdjunction, LatticeKind, SpsCheck,
};
pub use kan::{
    girard_kan_identity_check, kan_closure, kan_lattice, neg_dist, phi_lowstar, phi_star, pointwise_kan_extension,
    why_kan_check, GirardDistributorContext, KanAdjunction, PointwiseKan,
};
pub use doc::{LatticeDoc, Workspace, WorkspaceDoc};
pub use suites::{run_suite, Finding, Suite, SuiteOutcome, SuiteStatus};
