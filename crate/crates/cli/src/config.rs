use std::path::{Path, PathBuf};

use serde::Deserialize;
use sl2hecke::casimir::{format_deformation, parse_deformation, CasimirPoly};
use sl2hecke::center::LiftBounds;
use sl2hecke::fields::PrimeField;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("p = {0} is not an odd prime")]
    BadPrime(u64),
    #[error(transparent)]
    Deformation(#[from] sl2hecke::casimir::CasimirError),
    #[error("deg z = {degree} but {command} needs deg z < p - 1 = {bound}")]
    DegreeTooLarge {
        command: &'static str,
        degree: usize,
        bound: u32,
    },
    #[error("{command} supports p in {{3, 5}}, got p = {p}")]
    UnsupportedPrime { command: &'static str, p: u32 },
    #[error("reading {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parsing {path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

/// Values from a config file; every key is optional and command-line flags
/// take precedence.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub p: Option<u64>,
    /// Coefficients of `z` in the rescaled Casimir, as `"c0,c1,..."`.
    pub z: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub samples: Option<usize>,
    pub ansatz_t: Option<u32>,
    pub ansatz_e: Option<u32>,
    pub ansatz_r: Option<u32>,
    /// Include the full `F_p` grid in the census.
    pub grid: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.into(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path.into(),
            source,
        })
    }

    /// Fills unset fields of `self` from `base`.
    pub fn or(self, base: FileConfig) -> FileConfig {
        FileConfig {
            p: self.p.or(base.p),
            z: self.z.or(base.z),
            seed: self.seed.or(base.seed),
            out: self.out.or(base.out),
            samples: self.samples.or(base.samples),
            ansatz_t: self.ansatz_t.or(base.ansatz_t),
            ansatz_e: self.ansatz_e.or(base.ansatz_e),
            ansatz_r: self.ansatz_r.or(base.ansatz_r),
            grid: self.grid.or(base.grid),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: PrimeField,
    pub z: CasimirPoly,
    pub seed: u64,
    pub out: PathBuf,
    pub samples: Option<usize>,
    pub bounds: LiftBounds,
    pub grid: Option<bool>,
}

impl RunConfig {
    pub fn resolve(raw: FileConfig) -> Result<Self, ConfigError> {
        let p = raw.p.unwrap_or(3);
        if p == 2 {
            return Err(ConfigError::BadPrime(p));
        }
        let field = PrimeField::new(p).map_err(|_| ConfigError::BadPrime(p))?;
        let z = parse_deformation(field, raw.z.as_deref().unwrap_or("0"))?;
        let defaults = LiftBounds::for_prime(field.p());
        let bounds = LiftBounds {
            max_t: raw.ansatz_t.unwrap_or(defaults.max_t),
            max_e: raw.ansatz_e.unwrap_or(defaults.max_e),
            max_r: raw.ansatz_r.unwrap_or(defaults.max_r),
        };
        if raw.samples == Some(0) {
            return Err(ConfigError::Invalid("samples must be positive".into()));
        }
        Ok(RunConfig {
            field,
            z,
            seed: raw.seed.unwrap_or(0),
            out: raw.out.unwrap_or_else(|| PathBuf::from("out")),
            samples: raw.samples,
            bounds,
            grid: raw.grid,
        })
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn z_text(&self) -> String {
        format_deformation(&self.z)
    }

    pub fn require_center_degree(&self, command: &'static str) -> Result<(), ConfigError> {
        let degree = self.z.degree().unwrap_or(0);
        if !self.z.is_zero() && degree + 1 >= self.p() as usize {
            return Err(ConfigError::DegreeTooLarge {
                command,
                degree,
                bound: self.p() - 1,
            });
        }
        Ok(())
    }
}
