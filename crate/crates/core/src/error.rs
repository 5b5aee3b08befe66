use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhoneticsError {
    #[error("unknown Arpabet symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid digit `{0}`")]
    InvalidDigit(char),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("line {line}: unknown phone `{symbol}`")]
    UnknownPhone { line: usize, symbol: String },
    #[error("line {line}, token {position}: `{token}` has no tag")]
    MissingTag {
        line: usize,
        position: usize,
        token: String,
    },
    #[error("tag map line {line}: {message}")]
    BadTagMap { line: usize, message: String },
    #[error("pronunciation dictionary and corpus share no words")]
    EmptyIntersection,
    #[error("{0} is empty")]
    EmptyInput(&'static str),
    #[error("unsupported cache format: {0}")]
    CacheFormat(String),
}

impl CorpusError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CorpusError::Io {
            path: path.into(),
            source,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndexError {
    #[error("no word encodes the leading digit of `{remaining}`")]
    NoCandidate { remaining: String },
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("n-gram order must be between 1 and {max}, got {got}")]
    InvalidOrder { got: usize, max: usize },
    #[error("backoff factor must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("no sentence template survived filtering")]
    EmptyTemplateStore,
    #[error("no sentences to train on")]
    NoSentences,
    #[error("model cache line {line}: {message}")]
    CacheFormat { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("cannot encode `{remaining}` (position {position})")]
    Unencodable { position: usize, remaining: String },
    #[error("chunk `{chunk}` has no {slot} realization")]
    UnencodableChunk { chunk: String, slot: &'static str },
    #[error("gave up after {attempts} template resamples at position {position}")]
    RetryLimit { attempts: usize, position: usize },
    #[error("invalid encoder configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown word `{0}`")]
    UnknownWord(String),
}
