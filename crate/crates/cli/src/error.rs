use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("{0}")]
    Model(#[from] truthcoupling::Error),

    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    /// 1 for bad configuration, input files or output; 2 for domain and numeric failures.
    pub fn exit_code(&self) -> u8 {
        use truthcoupling::Error as E;
        match self {
            CliError::Config(_) | CliError::Output(_) => 1,
            CliError::Model(E::Format { .. } | E::Io(_)) => 1,
            CliError::Model(_) => 2,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
