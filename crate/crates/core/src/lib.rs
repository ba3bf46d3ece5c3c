//! Exact enumeration and asymptotics for relaxed and compacted binary trees.
//!
//! A relaxed tree of size `n` is a binary tree with `n` internal nodes whose
//! leaves, apart from the left-most one, are replaced by pointers to nodes
//! that come earlier in postorder. A compacted tree is a relaxed tree in
//! which no two nodes expand to the same binary tree.
//!
//! Modules:
//! - [`exact`]: integer and rational recurrence tables.
//! - [`trees`]: trees, decorated paths and the bijection between them.
//! - [`sampling`]: unranking and uniform random generation.
//! - [`asymptotics`]: Airy numerics, bound certification, extrapolation.
//! - [`automata`]: minimal acyclic DFAs built from compacted trees.

pub mod asymptotics;
pub mod automata;
mod error;
pub mod exact;
pub mod sampling;
pub mod trees;

pub use error::{Error, Result};

/// The two tree classes counted throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeKind {
    Relaxed,
    Compacted,
}

impl TreeKind {
    pub fn name(self) -> &'static str {
        match self {
            TreeKind::Relaxed => "relaxed",
            TreeKind::Compacted => "compacted",
        }
    }
}

impl std::fmt::Display for TreeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TreeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relaxed" => Ok(TreeKind::Relaxed),
            "compacted" => Ok(TreeKind::Compacted),
            other => Err(Error::Domain(format!("unknown tree kind `{other}`"))),
        }
    }
}
