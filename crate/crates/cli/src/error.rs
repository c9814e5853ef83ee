//! Error-to-exit-code mapping. 0 success, 1 usage error, 2 missing or
//! unreadable input, 3 empty or degenerate data, 4 numerical failure.

use std::fmt;

use moralframe_core::{
    EmbeddingError, FrameAxisError, LexiconError, PipelineError, StatsError, ValenceError,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Data(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg)
            | CliError::Input(msg)
            | CliError::Data(msg)
            | CliError::Numeric(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ValenceError> for CliError {
    fn from(e: ValenceError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<LexiconError> for CliError {
    fn from(e: LexiconError) -> Self {
        match e {
            // pools that resolve empty against the vocabulary are a data
            // degeneracy, not a malformed file
            LexiconError::EmptyResolvedPole { .. } => CliError::Data(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<FrameAxisError> for CliError {
    fn from(e: FrameAxisError) -> Self {
        match e {
            FrameAxisError::TooFewScores { .. } | FrameAxisError::EmptyResolvedPole { .. } => {
                CliError::Data(e.to_string())
            }
            FrameAxisError::ZeroNormDirection { .. } | FrameAxisError::NonFiniteScore => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

impl From<StatsError> for CliError {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::EmptyInput
            | StatsError::TooFewObservations { .. }
            | StatsError::TooManyPredictors { .. } => CliError::Data(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Unreadable { .. } | PipelineError::MalformedMapping { .. } => {
                CliError::Input(e.to_string())
            }
            PipelineError::TooManyRejects { .. }
            | PipelineError::NoRows { .. }
            | PipelineError::NoQualifyingCampaigns { .. } => CliError::Data(e.to_string()),
            PipelineError::UnknownCategory(_) | PipelineError::InvalidMinDonations => {
                CliError::Usage(e.to_string())
            }
            PipelineError::Stats(inner) => inner.into(),
            PipelineError::FrameAxis(inner) => inner.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
