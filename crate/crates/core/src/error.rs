use thiserror::Error;

/// Region of a two-phase partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Inside,
    Outside,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Inside => f.write_str("inside"),
            Region::Outside => f.write_str("outside"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {}x{}, found {}x{}", expected.0, expected.1, found.0, found.1)]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("{format} parse error at byte {offset}: {message}")]
    Parse {
        format: &'static str,
        offset: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{}: {source}", path.display())]
    File {
        path: std::path::PathBuf,
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("numerical divergence at iteration {iteration}: {message}")]
    Divergence { iteration: usize, message: String },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("contour collapsed{}: {region} region vanished", iteration.map(|i| format!(" at iteration {i}")).unwrap_or_default())]
    ContourCollapse {
        region: Region,
        iteration: Option<usize>,
    },

    #[error("no prior value exceeds the init threshold {beta}; lower the threshold")]
    EmptyForeground { beta: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dims(expected: (usize, usize), found: (usize, usize)) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
