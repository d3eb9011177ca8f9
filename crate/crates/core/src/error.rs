use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("orientation-reversing periodic maps have even order, got n = {0}")]
    OddReversingOrder(u32),

    #[error("signature {signature} does not match character {character}")]
    CharacterMismatch { signature: String, character: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cover disconnected by construction is a bug in admissibility ({0})")]
    DisconnectedCover(String),

    #[error("cover of {0} is not orientable; deck action has no orientation character")]
    NonOrientableCover(String),

    #[error("power of {class} by {exponent} matches {} classes: {candidates:?}", candidates.len())]
    AmbiguousPower {
        class: String,
        exponent: u32,
        candidates: Vec<String>,
    },

    #[error("scan bound exceeded: genus {genus} has a class of order {order} above {bound}")]
    ScanBound { genus: u32, order: u32, bound: u32 },

    #[error("map does not preserve the vertex set of the graph pair for genus {0}")]
    NotGraphPreserving(u32),

    #[error("inconsistent extendability for {class} type {ty}: {ruled_out} vs {realized}")]
    Inconsistent {
        class: String,
        ty: String,
        ruled_out: String,
        realized: String,
    },

    #[error("catalog: {0}")]
    Catalog(String),
}
