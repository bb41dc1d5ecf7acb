//! Complex character tables from the class algebra, orthogonality and
//! integrality checks, and Burnside and Frobenius arguments run on them.

mod table;
mod theory;

pub use table::{
    character_table, character_table_seeded, class_algebra, display_value, inner_product,
    inverse_classes, regular_character, CharacterTable, CharacterTableSummary, ClassAlgebra,
    ClassFunction, Verification, C64, DEFAULT_SEED, MAX_CLASSES, TOLERANCE,
};
pub use theory::{
    burnside_solvable, burnside_witness, character_center, character_kernel,
    extend_class_function, frobenius_kernel_via_characters, integrality_report,
    simplicity_by_characters, BurnsideWitness, IntegralityReport,
};
