//! Flat `key=value` experiment configuration with command-line
//! overrides (flags win).  Unknown keys are rejected by name, and the
//! resolved map echoed into the run manifest re-parses to an equivalent
//! configuration.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use obversim_core::fluctuation::DEFAULT_BIN_WIDTH;
use obversim_core::{Resolution, Rotation, SphereDensity};

/// Errors mapped onto the process exit codes: validation = 1,
/// runtime = 2, failed check = 3.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Runtime(String),
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
            CliError::CheckFailed(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid configuration: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
            CliError::CheckFailed(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<obversim_core::Error> for CliError {
    fn from(e: obversim_core::Error) -> Self {
        match e {
            obversim_core::Error::InvalidAxis { .. } => CliError::Validation(format!("{e}")),
            _ => CliError::Runtime(format!("{e}")),
        }
    }
}

const KNOWN_KEYS: &[&str] = &[
    "case",
    "u",
    "beta",
    "polar_exponent",
    "coefficients",
    "normalization",
    "axis",
    "angle",
    "t_grid",
    "n",
    "seed",
    "bin_width",
    "n_theta",
    "n_phi",
    "out",
];

/// The resolved flat configuration.  Values stay as strings until a
/// subcommand asks for them, so validation errors can name the key.
#[derive(Debug, Clone, Default)]
pub struct ExperimentConfig {
    values: BTreeMap<String, String>,
}

fn check_key(key: &str) -> Result<(), CliError> {
    if KNOWN_KEYS.contains(&key) {
        Ok(())
    } else {
        Err(CliError::Validation(format!("unknown key '{key}'")))
    }
}

impl ExperimentConfig {
    /// Reads the optional config file, then applies flag overrides.
    pub fn from_sources(
        config_path: Option<&Path>,
        overrides: &[(&str, String)],
    ) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        if let Some(path) = config_path {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Validation(format!("config: cannot read {}: {e}", path.display()))
            })?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    CliError::Validation(format!(
                        "config line {}: expected key=value, got '{line}'",
                        lineno + 1
                    ))
                })?;
                let key = key.trim();
                check_key(key)?;
                values.insert(key.to_string(), value.trim().to_string());
            }
        }
        for (key, value) in overrides {
            check_key(key)?;
            values.insert(key.to_string(), value.clone());
        }
        Ok(ExperimentConfig { values })
    }

    /// The flat key-value view, as echoed into the manifest.
    pub fn resolved(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(s) => s.parse::<T>().map(Some).map_err(|_| {
                CliError::Validation(format!("{key}: invalid value '{s}'"))
            }),
        }
    }

    fn parse_vec3(&self, key: &str) -> Result<Option<[f64; 3]>, CliError> {
        let Some(s) = self.get(key) else { return Ok(None) };
        let parts: Vec<&str> = s.split(',').collect();
        let err = || CliError::Validation(format!("{key}: expected three comma-separated reals, got '{s}'"));
        if parts.len() != 3 {
            return Err(err());
        }
        let mut v = [0.0; 3];
        for (i, p) in parts.iter().enumerate() {
            v[i] = p.trim().parse().map_err(|_| err())?;
        }
        Ok(Some(v))
    }

    pub fn density(&self) -> Result<SphereDensity, CliError> {
        let case = self.get("case").unwrap_or("uniform");
        match case {
            "uniform" => Ok(SphereDensity::uniform()),
            "1a" => Ok(SphereDensity::case1a()),
            "1b" => {
                let u = self
                    .parse_vec3("u")?
                    .unwrap_or([1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt(), 0.0]);
                let beta = self.parse::<f64>("beta")?.unwrap_or(PI / 3.0);
                SphereDensity::case1b(u, beta)
                    .map_err(|e| CliError::Validation(format!("u: {e}")))
            }
            "2a" => Ok(SphereDensity::case2a()),
            "2b" => Ok(SphereDensity::case2b()),
            "3" => Ok(SphereDensity::case3()),
            "custom" => {
                let p = self.parse::<u32>("polar_exponent")?.unwrap_or(0);
                let coeffs = self.coefficients()?;
                match self.parse::<f64>("normalization")? {
                    Some(c) => Ok(SphereDensity::custom(p, &coeffs, c)),
                    None => Ok(SphereDensity::custom_normalized(p, &coeffs)),
                }
            }
            other => Err(CliError::Validation(format!(
                "case: unknown density '{other}' (expected uniform, 1a, 1b, 2a, 2b, 3 or custom)"
            ))),
        }
    }

    /// Custom azimuthal coefficient list, `k:a:b` triples joined by `;`.
    fn coefficients(&self) -> Result<Vec<(u32, f64, f64)>, CliError> {
        let Some(s) = self.get("coefficients") else { return Ok(Vec::new()) };
        let err = |part: &str| {
            CliError::Validation(format!(
                "coefficients: expected k:a:b triples joined by ';', got '{part}'"
            ))
        };
        let mut out = Vec::new();
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let fields: Vec<&str> = part.split(':').collect();
            if fields.len() != 3 {
                return Err(err(part));
            }
            let k = fields[0].trim().parse().map_err(|_| err(part))?;
            let a = fields[1].trim().parse().map_err(|_| err(part))?;
            let b = fields[2].trim().parse().map_err(|_| err(part))?;
            out.push((k, a, b));
        }
        Ok(out)
    }

    pub fn axis(&self) -> Result<[f64; 3], CliError> {
        let axis = self.parse_vec3("axis")?.unwrap_or([0.0, 0.0, 1.0]);
        let n = axis.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(CliError::Validation("axis: must be nonzero".into()));
        }
        Ok(axis.map(|c| c / n))
    }

    pub fn rotation(&self) -> Result<Rotation, CliError> {
        let angle = self
            .parse::<f64>("angle")?
            .ok_or_else(|| CliError::Validation("angle: required".into()))?;
        Rotation::from_axis_angle(self.axis()?, angle)
            .map_err(|e| CliError::Validation(format!("axis: {e}")))
    }

    pub fn angle(&self) -> Result<f64, CliError> {
        self.parse::<f64>("angle")?
            .ok_or_else(|| CliError::Validation("angle: required".into()))
    }

    /// Time grid `start:stop:steps` (inclusive endpoints, steps >= 1).
    pub fn t_grid(&self) -> Result<Vec<f64>, CliError> {
        let s = self
            .get("t_grid")
            .ok_or_else(|| CliError::Validation("t_grid: required".into()))?;
        let err = || CliError::Validation(format!("t_grid: expected start:stop:steps, got '{s}'"));
        let fields: Vec<&str> = s.split(':').collect();
        if fields.len() != 3 {
            return Err(err());
        }
        let start: f64 = fields[0].trim().parse().map_err(|_| err())?;
        let stop: f64 = fields[1].trim().parse().map_err(|_| err())?;
        let steps: usize = fields[2].trim().parse().map_err(|_| err())?;
        if steps < 1 {
            return Err(CliError::Validation("t_grid: steps must be >= 1".into()));
        }
        if steps == 1 {
            return Ok(vec![start]);
        }
        let h = (stop - start) / (steps - 1) as f64;
        Ok((0..steps).map(|i| start + i as f64 * h).collect())
    }

    pub fn n(&self) -> Result<usize, CliError> {
        Ok(self.parse::<usize>("n")?.unwrap_or(10_000_000))
    }

    pub fn seed(&self) -> Result<u64, CliError> {
        Ok(self.parse::<u64>("seed")?.unwrap_or(42))
    }

    pub fn bin_width(&self) -> Result<f64, CliError> {
        let w = self.parse::<f64>("bin_width")?.unwrap_or(DEFAULT_BIN_WIDTH);
        if !(w > 0.0) {
            return Err(CliError::Validation(format!("bin_width: must be > 0, got {w}")));
        }
        Ok(w)
    }

    pub fn resolution(&self) -> Result<Resolution, CliError> {
        let d = Resolution::default();
        let n_theta = self.parse::<usize>("n_theta")?.unwrap_or(d.n_theta);
        let n_phi = self.parse::<usize>("n_phi")?.unwrap_or(d.n_phi);
        if n_theta < 2 {
            return Err(CliError::Validation("n_theta: must be >= 2".into()));
        }
        if n_phi < 4 {
            return Err(CliError::Validation("n_phi: must be >= 4".into()));
        }
        Ok(Resolution::new(n_theta, n_phi))
    }

    pub fn out_dir(&self) -> PathBuf {
        PathBuf::from(self.get("out").unwrap_or("."))
    }
}
