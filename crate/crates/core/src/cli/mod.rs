//! Command-line front end: group-spec parsing, command dispatch, JSON and
//! text reports, and the corpus runner.

mod corpus;
mod run;
mod spec;

pub use corpus::{
    coprime_elements_commute, standard_manifest, verify_corpus, verify_manifest, Check, CorpusEntry,
    CorpusSummary, Manifest, Suite, STANDARD_MANIFEST,
};
pub use run::{exit_code, parse_subgroup, render_text, run, Cli, Command, Report};
pub use spec::{parse_generators, parse_group_spec, Action, GroupSpec};
