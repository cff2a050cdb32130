use std::fs;
use std::path::Path;

use linest::ExperimentConfig;

/// Configs shipped with the binary, addressable by name.
pub const BUNDLED: &[(&str, &str)] = &[
    ("paper_fig2", include_str!("../configs/paper_fig2.json")),
    ("paper_fig3", include_str!("../configs/paper_fig3.json")),
];

#[derive(Debug)]
pub enum ConfigError {
    /// The file could not be read and is not a bundled name.
    Unreadable(String),
    /// The text is not a valid config document.
    Parse(String),
    /// The config parsed but violates one or more constraints.
    Invalid(Vec<String>),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Unreadable(msg) => write!(f, "cannot read config: {msg}"),
            ConfigError::Parse(msg) => write!(f, "invalid config: {msg}"),
            ConfigError::Invalid(problems) => {
                write!(f, "config has {} problem(s):", problems.len())?;
                for p in problems {
                    write!(f, "\n  - {p}")?;
                }
                Ok(())
            }
        }
    }
}

impl ConfigError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ConfigError::Unreadable(_) => 2,
            ConfigError::Parse(_) | ConfigError::Invalid(_) => 3,
        }
    }
}

/// Read a config from `source`, a file path or a bundled config name.
pub fn load(source: &str) -> Result<ExperimentConfig, ConfigError> {
    let path = Path::new(source);
    let text = if path.exists() {
        fs::read_to_string(path).map_err(|e| ConfigError::Unreadable(format!("{source}: {e}")))?
    } else if let Some((_, text)) = BUNDLED.iter().find(|(name, _)| *name == source) {
        text.to_string()
    } else {
        let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
        return Err(ConfigError::Unreadable(format!(
            "{source}: no such file and not a bundled config ({})",
            names.join(", ")
        )));
    };
    serde_json::from_str(&text).map_err(|e| ConfigError::Parse(e.to_string()))
}
