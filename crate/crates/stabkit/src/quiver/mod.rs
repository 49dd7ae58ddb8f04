//! Quiver representations over prime fields and very weak stability conditions on them.

mod charge;
mod field;
pub mod fixtures;
mod heart;
mod hn;
pub mod io;
mod lattice;
mod objects;
mod realize;
mod rep;
mod support;
mod tilt;

pub use charge::{
    bg_form_violations, cmp_slope, has_infinite_slope, in_c, validate_vw, IntCharge, VWCharge,
};
pub use field::{
    kernel, subspace_count, subspace_table, unit, Fp, Matrix, Subspace, SubspaceTable,
    MAX_SUBSPACES,
};
pub use heart::{ext1_from_simple, heart_membership, hom_from_simple, HeartInput, HeartReport};
pub use hn::{
    hn_filtration, hn_filtration_with, hn_from_lattice, is_semistable, is_semistable_with,
    HnFactor, HnFiltration,
};
pub use lattice::{quotient_rep, sub_rep, EnumCaps, SubLattice};
pub use objects::{
    in_torsion, lambda_verdict, object_sample, object_verdict, object_walls, small_t_classes,
    small_t_classes_at, stable_range, ObjectSample, ObjectWalls, SmallTReport, StableRange,
};
pub use realize::{
    bg_audit, bg_audit_from_table, find_semistable, realizable_classes, BgAudit, BgCheck,
    ClassEntry, Realizability, SearchConfig, Status,
};
pub use rep::{gl_order, DimVector, Quiver, QuiverRep, RepSpace};
pub use support::{
    check_delta_kt_support, delta_kt_matrix, delta_matrix, search_k, tilt_kernel, DeltaKtReport,
    KSearch, SupportData,
};
pub use tilt::{
    crossing, delta_inequality_check, lambda, mu_dag, small_t_bound, t_walls, tilt_charge,
    tilted_candidates, ClassWall, DeltaInequality, SmallT, TWalls,
};
