//! TOML parameter files describing X-profile families.
//!
//! ```toml
//! kind = "affine"        # affine | quadratic | exponential
//! p = [1, 1, 1, 1]
//! q = [1, -1, -1, 1]
//! # r = [...]            # quadratic and exponential
//! # signs = [1, 1, 1, 1] # optional, mesh only
//! ```

use std::path::Path;

use minmin_core::separable::{
    extract_affine_system, extract_exponential_system, extract_quadratic_system, AnsatzSystem, XProfile,
};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Affine,
    Quadratic,
    Exponential,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Affine => "affine",
            Family::Quadratic => "quadratic",
            Family::Exponential => "exponential",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileParams {
    pub kind: Option<Family>,
    #[serde(default)]
    pub p: Vec<f64>,
    #[serde(default)]
    pub q: Vec<f64>,
    #[serde(default)]
    pub r: Vec<f64>,
    pub signs: Option<Vec<f64>>,
}

impl ProfileParams {
    pub fn parse(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("parameter file: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// The family, with `cli` taking precedence over the file.
    pub fn family(&self, cli: Option<Family>) -> CliResult<Family> {
        match (cli, self.kind) {
            (Some(a), Some(b)) if a != b => Err(CliError::Config(format!(
                "kind {} on the command line conflicts with {} in the parameter file",
                a.name(),
                b.name()
            ))),
            (Some(a), _) | (None, Some(a)) => Ok(a),
            (None, None) => Err(CliError::Config("ansatz kind not given".into())),
        }
    }

    fn need(&self, name: &str, v: &[f64], len: usize) -> CliResult<()> {
        if v.len() != len {
            return Err(CliError::Config(format!("{name} must have {len} entries, found {}", v.len())));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Config(format!("{name} has a non-finite entry")));
        }
        Ok(())
    }

    /// Checks lengths for `family` and returns the number of profiles.
    pub fn validate(&self, family: Family) -> CliResult<usize> {
        match family {
            Family::Affine => {
                let k = self.p.len();
                if k < 3 {
                    return Err(CliError::Config("affine ansatz needs at least 3 profiles".into()));
                }
                self.need("q", &self.q, k)?;
                Ok(k)
            }
            Family::Quadratic => {
                self.need("p", &self.p, 4)?;
                self.need("q", &self.q, 4)?;
                self.need("r", &self.r, 4)?;
                Ok(4)
            }
            Family::Exponential => {
                self.need("q", &self.q, 4)?;
                self.need("r", &self.r, 4)?;
                if !self.p.is_empty() {
                    return Err(CliError::Config("exponential ansatz takes no p".into()));
                }
                Ok(4)
            }
        }
    }

    pub fn system(&self, family: Family) -> CliResult<AnsatzSystem> {
        let k = self.validate(family)?;
        Ok(match family {
            Family::Affine => extract_affine_system(k - 1, &self.p, &self.q)?,
            Family::Quadratic => extract_quadratic_system(&self.p, &self.q, &self.r)?,
            Family::Exponential => extract_exponential_system(&self.q, &self.r)?,
        })
    }

    pub fn xprofiles(&self, family: Family) -> CliResult<Vec<XProfile>> {
        let k = self.validate(family)?;
        Ok((0..k)
            .map(|i| match family {
                Family::Affine => XProfile::affine(self.p[i], self.q[i]),
                Family::Quadratic => XProfile::quadratic(self.p[i], self.q[i], self.r[i]),
                Family::Exponential => XProfile::exponential(self.q[i], self.r[i]),
            })
            .collect())
    }

    /// Largest parameter magnitude, squared: the natural size of the
    /// coefficients, which are quadratic in the parameters.
    pub fn coefficient_scale(&self) -> f64 {
        let m = self.p.iter().chain(&self.q).chain(&self.r).fold(0.0f64, |a, v| a.max(v.abs()));
        m * m
    }
}
