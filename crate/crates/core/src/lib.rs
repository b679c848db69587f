//! Abstract polytopes and maniplexes encoded as edge-colored flag graphs.

pub mod constructions;
pub mod error;
pub mod flaggraph;
pub mod mix;
pub mod monodromy;
pub mod permgroup;
pub mod poset;
pub mod symmetry;

pub use error::{Error, Result};
pub use flaggraph::{ColorWord, FlagGraph, RootedFlagGraph};
pub use permgroup::{GroupHom, Perm, PermGroup};
/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
