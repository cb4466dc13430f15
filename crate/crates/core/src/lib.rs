//! Modal defeasible logic with obligations, permissions and reparation
//! chains, computed in linear time.

pub mod engine;
pub mod bench;
pub mod cli;
pub mod diff;
pub mod extension;
pub mod generate;
pub mod model;
pub mod oracle;
pub mod parser;
pub mod queries;
pub mod transform;

pub use engine::{compute_extension, compute_extension_with_stats, EngineConfig, RunStats, WorkingTheory};
pub use extension::{Extension, Sign, Tagged};
pub use model::{
    AntecedentItem, Atom, Chain, DefeaterMode, Literal, Modality, ModalLiteral, Rule, RuleKind,
    Superiority, Theory,
};
pub use oracle::oracle_extension;
pub use parser::{parse_theory, serialize_extension, serialize_theory, ExtensionFormat, ParseError};
pub use queries::{check_consistency, explain, is_weakly_permitted, ConsistencyReport, ProofTrace};
