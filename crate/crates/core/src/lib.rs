//! Automorphism groups of graphs, with the families and structural checks
//! used to study bipartite doubles and side stabilizers.
//!
//! [`auteng::automorphism_group`] is the main entry point; [`verify`]
//! turns structural statements into [`verify::VerifyReport`]s.

pub mod auteng;
pub mod cli;
pub mod families;
pub mod fq;
pub mod graph;
pub mod grassmann;
pub mod perm;
pub mod verify;

use thiserror::Error;

/// Any failure surfaced by the library, with the process exit code the
/// command line maps it to.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Family(#[from] families::FamilyError),
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// 2 for bad input, 3 for a violated invariant, 4 for a failed
    /// precondition.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Verify(verify::VerifyError::Invariant(_)) => 3,
            Error::Verify(verify::VerifyError::Precondition(_)) => 4,
            _ => 2,
        }
    }
}
