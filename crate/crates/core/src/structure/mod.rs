//! Conjugacy classes, normal structure, series, Frattini subgroup and
//! subgroup lattices.

mod classes;
mod egyptian;
mod frattini;
mod lattice;
mod normal;
mod series;

pub use classes::{
    center, centralizer, class_equation_sum, commutator_subgroup, conjugacy_classes,
    derived_subgroup, normal_closure, normalizer, ClassSummary, ConjClassTable,
};
pub use egyptian::{egyptian_decompositions, EGYPTIAN_MAX_H};
pub use frattini::{frattini_subgroup, frattini_via_lattice, frattini_via_powers};
pub(crate) use lattice::Lattice;
pub use lattice::{maximal_subgroups, subgroup_lattice, GroupTable, LATTICE_LIMIT};
pub use normal::{
    is_elementary_abelian, is_simple, maximal_normal_subgroups, minimal_normal_elementary,
    normal_subgroups, CLASS_LIMIT,
};
pub use series::{
    classify, derived_series, is_nilpotent, is_solvable, jordan_holder, jordan_holder_seeded,
    lower_central_series, FactorType, SeriesKind, SolvabilityReport, SubnormalSeries,
};
