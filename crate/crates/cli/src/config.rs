//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Accepts integers written as `100000` or `1e5`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 {
        Ok(x as u64)
    } else {
        Err(format!("`{s}` is not a nonnegative integer"))
    }
}

/// Flags shared by every subcommand. Each one may also be set in the file
/// given by `--config`; flags win.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// TOML file with defaults for any of these flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Representation: trivial, trivial:D (quadratic field Q(sqrt D)),
    /// dirichlet:Q:INDEX, delta, newform:PATH (ap-table v1), formal:LABEL:RANK:sd|nsd.
    #[arg(long, alias = "pi")]
    pub rep: Option<String>,

    /// Second representation for `poles` and `conductor`.
    #[arg(long = "pi-prime")]
    #[serde(rename = "pi-prime")]
    pub pi_prime: Option<String>,

    /// Heights t (comma separated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub t: Option<Vec<f64>>,

    /// Scales Y (comma separated).
    #[arg(long = "Y", value_delimiter = ',')]
    #[serde(rename = "Y")]
    pub y: Option<Vec<f64>>,

    /// Sieve constants C (comma separated).
    #[arg(long = "C", value_delimiter = ',')]
    #[serde(rename = "C")]
    pub c: Option<Vec<f64>>,

    /// Real parts: absolute for `lfun`, offsets in units of 1/log(|t|+3) for `zerofree`.
    #[arg(long, value_delimiter = ',')]
    pub sigma: Option<Vec<f64>>,

    /// Largest prime (and eigenvalue) the run may use.
    #[arg(long, value_parser = parse_count)]
    pub capacity: Option<u64>,

    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Seed for randomized sweeps.
    #[arg(long, value_parser = parse_count)]
    pub seed: Option<u64>,

    /// Smooth weight transition points a,b (support [a, b], plateau [1, 2]).
    #[arg(long, value_delimiter = ',')]
    pub profile: Option<Vec<f64>>,

    /// Number of random samples for sweeps.
    #[arg(long, value_parser = parse_count)]
    pub samples: Option<u64>,

    /// Mode of `zerofree` (width, scan, chain) or place of `conductor` (real, complex, both, none).
    #[arg(long)]
    pub mode: Option<String>,

    /// O-constant A of the width solver.
    #[arg(long = "A")]
    #[serde(rename = "A")]
    pub a_const: Option<f64>,

    /// Offset c0 in sigma = 1 + c0/log(|gamma|+3) for the width solver.
    #[arg(long)]
    pub c0: Option<f64>,

    /// log of the conductor for the width solver; defaults to 2 log(|gamma|+3).
    #[arg(long = "log-q")]
    #[serde(rename = "log-q")]
    pub log_q: Option<f64>,

    /// Constant K of the coefficient-sum chain; chosen from the data when absent.
    #[arg(long = "K")]
    #[serde(rename = "K")]
    pub k_const: Option<f64>,
}

macro_rules! layer {
    ($dst:ident, $src:ident, $($f:ident),*) => {
        $( if $dst.$f.is_none() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl Settings {
    /// Fills unset flags from the configuration file, if one was given.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let file: Settings = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))?;
        layer!(
            self, file, rep, pi_prime, t, y, c, sigma, capacity, out, seed, profile, samples, mode,
            a_const, c0, log_q, k_const
        );
        Ok(self)
    }

    /// `sha256` of the resolved settings and subcommand, first 16 hex digits.
    pub fn hash(&self, command: &str) -> String {
        #[derive(Serialize)]
        struct Keyed<'a> {
            command: &'a str,
            settings: &'a Settings,
        }
        let text = toml::to_string(&Keyed {
            command,
            settings: self,
        })
        .expect("settings serialize");
        let digest = Sha256::digest(text.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn grid(&self, name: &str, values: &Option<Vec<f64>>) -> Result<Vec<f64>, CliError> {
        match values {
            Some(v) if !v.is_empty() => {
                if let Some(bad) = v.iter().find(|x| !x.is_finite()) {
                    return Err(CliError::Config(format!("--{name} contains non-finite value {bad}")));
                }
                Ok(v.clone())
            }
            Some(_) => Err(CliError::Config(format!("--{name} grid is empty"))),
            None => Err(CliError::Config(format!("--{name} is required for this subcommand"))),
        }
    }

    pub fn t_grid(&self) -> Result<Vec<f64>, CliError> {
        self.grid("t", &self.t)
    }

    pub fn y_grid(&self) -> Result<Vec<f64>, CliError> {
        let y = self.grid("Y", &self.y)?;
        if let Some(bad) = y.iter().find(|v| !(**v > 0.0)) {
            return Err(CliError::Config(format!("--Y values must be positive (got {bad})")));
        }
        Ok(y)
    }

    pub fn c_grid(&self) -> Result<Vec<f64>, CliError> {
        self.grid("C", &self.c)
    }

    pub fn sigma_grid(&self) -> Result<Vec<f64>, CliError> {
        self.grid("sigma", &self.sigma)
    }

    pub fn single_t(&self) -> Result<f64, CliError> {
        let t = self.t_grid()?;
        if t.len() != 1 {
            return Err(CliError::Config(format!("expected a single --t value, got {}", t.len())));
        }
        Ok(t[0])
    }
}
