//! Finite abelian groups, G-modules, group cohomology in low degrees,
//! extensions and coprime splitting.

mod abgroup;
mod cochain;
mod cohomology;
mod extension;
mod module;
mod zassenhaus;
pub(crate) mod zmod;

pub use abgroup::{abelianize, AbElement, Abelianization, FinAbGroup};
pub use cochain::{cobord, Cochain, MAX_DEGREE};
pub use cohomology::{cohomology, solve_coboundary, CohomologyGroup, CohomologySummary, MAX_ROWS};
pub use module::{ActionMatrix, GModule};
pub use extension::{extension_from_cocycle, h1_torsor_sections, split_class, Extension};
pub use zassenhaus::{
    complement_conjugacy, lift_homomorphism_mod_p, matrix_permutation, permutation_matrix,
    zassenhaus_complement, ModMatrix,
};
