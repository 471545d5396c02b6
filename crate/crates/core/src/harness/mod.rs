//! Protocol files, builtin protocols, end-to-end runs and lemma checks.

pub mod builtin;
pub mod file;
pub mod lemmas;
pub mod run;

pub use builtin::{builtin_file, builtin_protocol, BuiltinParams, BUILTIN_NAMES};
pub use file::{load_protocol, parse_protocol, LoadedProtocol, ProtocolFile};
pub use lemmas::{verify_lemmas, LemmaParams, LemmaReport, PropertyResult};
pub use run::{run, verify_report, Report, RunConfig, Status};
