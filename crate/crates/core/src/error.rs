use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid image dimensions {width}x{height}")]
    InvalidDimensions { width: u32, height: u32 },

    #[error("buffer holds {actual} samples, expected {expected}")]
    BufferLength { expected: usize, actual: usize },

    #[error("unsupported channel count {0} (expected 1 or 3)")]
    UnsupportedChannels(usize),

    #[error("expected a {expected}-channel image, got {actual} channels")]
    ChannelMismatch { expected: usize, actual: usize },

    #[error("sample {index} is out of range or not finite")]
    InvalidSample { index: usize },

    #[error("image dimensions differ: {left:?} vs {right:?}")]
    DimensionMismatch { left: (u32, u32), right: (u32, u32) },

    #[error("image {width}x{height} is smaller than the required {min_width}x{min_height}")]
    TooSmall {
        width: u32,
        height: u32,
        min_width: u32,
        min_height: u32,
    },

    #[error("rectangle {w}x{h} at ({x0}, {y0}) does not fit in a {width}x{height} image")]
    RectOutOfBounds {
        x0: u32,
        y0: u32,
        w: u32,
        h: u32,
        width: u32,
        height: u32,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid pipeline: {0}")]
    InvalidPipeline(String),

    #[error("unknown preset `{name}`; valid presets are: {valid}")]
    UnknownPreset { name: String, valid: String },

    #[error("stage `{stage}` failed on image {index}: {source}")]
    Stage {
        stage: String,
        index: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Codec { path: PathBuf, message: String },

    #[error("unsupported image format for {0}")]
    UnsupportedFormat(PathBuf),

    #[error("log file is missing column `{0}`")]
    MissingColumn(String),

    #[error("malformed log: {0}")]
    MalformedLog(String),

    #[error("metric undefined: {0}")]
    Metric(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True for errors caused by bad configuration rather than failing I/O.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::InvalidPipeline(_)
                | Error::UnknownPreset { .. }
                | Error::MissingColumn(_)
                | Error::MalformedLog(_)
                | Error::Metric(_)
                | Error::Json(_)
        )
    }
}
