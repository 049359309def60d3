//! Instance documents, the DIMACS-like importer and random generators.

mod dimacs;
mod document;
mod generate;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use document::{parse_instance, InstanceDocument, Kind, Payload, Provenance, FORMAT_VERSION};
pub use generate::{generate_random, GenKind, GenParams};
