//! Run configuration: optional JSON config files, flag merging, error-to-
//! exit-code mapping, and atomic report delivery.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hardy_lab::classify::ClassifyConfig;
use hardy_lab::geometry::WitnessThresholds;
use hardy_lab::LabError;
use serde::Deserialize;

/// A command failure carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Malformed input or configuration (exit 2).
    Config(String),
    /// Numeric failure inside the laboratory (exit 3).
    Numeric(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Config(msg) | CliError::Numeric(msg) => msg,
        }
    }

    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<LabError> for CliError {
    fn from(err: LabError) -> Self {
        match err {
            LabError::Config(_) | LabError::InvalidCoefficients(_) => {
                CliError::Config(err.to_string())
            }
            other => CliError::Numeric(other.to_string()),
        }
    }
}

/// Config-file counterpart of the command-line flags. Any field may be
/// omitted; explicit flags always win over file values.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub lambda: Option<String>,
    pub phi: Option<String>,
    pub truncation: Option<usize>,
    pub n: Option<usize>,
    pub radius: Option<f64>,
    pub samples: Option<usize>,
    pub kind: Option<String>,
    pub z: Option<String>,
    pub n_max: Option<usize>,
    pub limit: Option<bool>,
    pub order: Option<usize>,
    pub tol: Option<f64>,
    pub x0: Option<String>,
    pub targets: Option<Vec<String>>,
    pub steps: Option<usize>,
    pub radial: Option<usize>,
    pub angular: Option<usize>,
    pub outer: Option<f64>,
    pub schedule_cap: Option<usize>,
    pub thresholds: Option<WitnessThresholds>,
    pub classify: Option<ClassifyConfig>,
}

impl FileConfig {
    /// Loads a config file, or an empty config when no path is given.
    ///
    /// # Errors
    ///
    /// Returns [`CliError::Config`] for unreadable files or JSON that does
    /// not match the documented fields.
    pub fn load(path: Option<&PathBuf>) -> Result<FileConfig, CliError> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path).map_err(|err| {
            CliError::Config(format!("cannot read config {}: {err}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|err| {
            CliError::Config(format!("bad config {}: {err}", path.display()))
        })
    }
}

/// Picks the effective value of one option: flag, then file, then default.
pub fn pick<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Picks an option that has no default and must come from somewhere.
///
/// # Errors
///
/// Returns [`CliError::Config`] naming the missing option.
pub fn require<T>(flag: Option<T>, file: Option<T>, name: &str) -> Result<T, CliError> {
    flag.or(file)
        .ok_or_else(|| CliError::Config(format!("missing required option --{name}")))
}

/// Ordered key/value lines echoed at the top of every report.
pub struct Echo {
    pairs: Vec<(String, String)>,
}

impl Echo {
    pub fn new(command: &str) -> Echo {
        Echo {
            pairs: vec![("command".into(), command.into())],
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.pairs.push((key.into(), value.to_string()));
    }

    /// Renders `# key = value` comment lines for CSV reports.
    pub fn csv_header(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.pairs {
            let _ = writeln!(out, "# {key} = {value}");
        }
        out
    }

    /// Renders the echo as a JSON object for JSON reports.
    pub fn json_object(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (key, value) in &self.pairs {
            map.insert(key.clone(), serde_json::Value::String(value.clone()));
        }
        serde_json::Value::Object(map)
    }
}

/// Writes a finished report to `--out` (atomically, via a temporary file in
/// the same directory) or to stdout when no path was given.
///
/// # Errors
///
/// Returns [`CliError::Numeric`] when the filesystem rejects the write.
pub fn deliver(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let Some(path) = out else {
        print!("{text}");
        return Ok(());
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, text)
        .map_err(|err| CliError::Numeric(format!("cannot write {}: {err}", tmp.display())))?;
    std::fs::rename(&tmp, path).map_err(|err| {
        CliError::Numeric(format!("cannot move report to {}: {err}", path.display()))
    })
}
