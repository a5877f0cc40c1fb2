use thiserror::Error;

/// Domain errors raised while building, converting or analysing networks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MsnError {
    #[error("duplicate layer `{0}`")]
    DuplicateLayer(String),
    #[error("empty name")]
    EmptyName,
    #[error("invalid label `{0}`: labels must be non-empty, without surrounding whitespace, commas or newlines")]
    InvalidLabel(String),
    #[error("self-loop on actor `{0}`")]
    SelfLoop(String),
    #[error("unknown actor `{0}`")]
    UnknownActor(String),
    #[error("unknown layer `{0}`")]
    UnknownLayer(String),
    #[error("duplicate edge {0} -> {1} on layer `{2}`")]
    DuplicateEdge(String, String, String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("layer set is empty")]
    EmptyLayerSet,
    #[error("at least two actors are required, found {0}")]
    TooFewActors(usize),
    #[error("mapping is not one-to-one: {0}")]
    NonInjectiveMapping(String),
    #[error("local actor `{actor}` of network {network} belongs to no identity class")]
    UnmappedActor { network: usize, actor: String },
    #[error("actor `{0}` has no coarse assignment")]
    PartialMapping(String),
    #[error("edge set `{set}` contains self pair on `{actor}`")]
    SelfPair { set: String, actor: String },
    #[error("empty time window [{0}, {1})")]
    EmptyWindow(u64, u64),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = MsnError> = std::result::Result<T, E>;

/// Checks the external label rules shared by actors, layers and groups.
pub(crate) fn validate_label(label: &str) -> Result<()> {
    if label.is_empty() {
        return Err(MsnError::InvalidLabel(label.to_owned()));
    }
    if label.trim() != label || label.contains([',', '\n', '\r']) {
        return Err(MsnError::InvalidLabel(label.to_owned()));
    }
    Ok(())
}
