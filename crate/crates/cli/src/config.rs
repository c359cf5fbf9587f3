//! JSON config file handling: every flag has an optional counterpart in the
//! config file and flags override file values.

use serde::Deserialize;

/// File-level defaults; all fields optional so a partial file is fine.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<String>,
    pub alpha_re: Option<f64>,
    pub alpha_im: Option<f64>,
    pub lambda_re: Option<f64>,
    pub lambda_im: Option<f64>,
    pub z_re: Option<f64>,
    pub z_im: Option<f64>,
    pub gamma_phase: Option<f64>,
    pub gamma_mass: Option<f64>,
    pub profile: Option<String>,
    pub mass_file: Option<String>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub r_step: Option<f64>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
    pub n_max: Option<u32>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub format: Option<String>,
    pub out: Option<String>,
}

impl FileConfig {
    pub fn load(path: &str) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {path}: {e}"))?;
        serde_json::from_str(&text).map_err(|e| format!("config {path} invalid at {e}"))
    }
}

/// flag.or(file value).unwrap_or(default)
pub fn resolve<T: Clone>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

pub fn resolve_opt<T: Clone>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}
