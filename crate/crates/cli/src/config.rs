//! Run configuration: a TOML file with one flat table per block.
//!
//! ```toml
//! [link1]
//! alpha = 1.5
//! kappa = 5.0
//! mu = 1.2
//! m = 2.8
//! gamma_bar_db = 0.0
//!
//! [grid]
//! start = 0.01
//! stop = 10.0
//! points = 200
//! spacing = "log"   # linear | log | db
//! ```

use crate::CliError;
use fading_core::akmu::FadingParams;
use fading_core::apps::{db_to_linear, IrsScenario, Point};
use fading_core::mc::McConfig;
use fading_core::prodratio::{PairStats, Policy};
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub link1: Option<LinkCfg>,
    pub link2: Option<LinkCfg>,
    pub sd: Option<LinkCfg>,
    pub se: Option<LinkCfg>,
    pub sr: Option<LinkCfg>,
    pub rd: Option<LinkCfg>,
    pub grid: Option<GridCfg>,
    pub policy: Option<PolicyCfg>,
    pub secrecy: Option<SecrecyCfg>,
    pub irs: Option<IrsCfg>,
    pub mc: Option<McCfg>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkCfg {
    pub alpha: f64,
    pub kappa: f64,
    pub mu: f64,
    pub m: f64,
    #[serde(default)]
    pub gamma_bar_db: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
    /// `start`/`stop` in dB; grid values are returned in linear scale.
    Db,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridCfg {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyCfg {
    pub tol: Option<f64>,
    pub max_uv: Option<usize>,
    pub quad_tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SecrecyCfg {
    pub rate_rs: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrsCfg {
    pub n_elements: usize,
    pub gamma_s_db: f64,
    pub pathloss_beta: f64,
    pub source: Point,
    pub surface: Point,
    pub destination: Point,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McCfg {
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_streams")]
    pub streams: usize,
}

fn default_seed() -> u64 {
    1
}
fn default_trials() -> usize {
    1_000_000
}
fn default_streams() -> usize {
    8
}

impl Default for McCfg {
    fn default() -> Self {
        Self {
            seed: default_seed(),
            trials: default_trials(),
            streams: default_streams(),
        }
    }
}

fn cfg_err(e: fading_core::Error, what: &str) -> CliError {
    CliError::Config(format!("[{what}] {e}"))
}

fn need<'a, T>(v: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    v.as_ref()
        .ok_or_else(|| CliError::Config(format!("missing [{name}] section")))
}

impl LinkCfg {
    pub fn params(&self, name: &str) -> Result<FadingParams, CliError> {
        if !self.gamma_bar_db.is_finite() {
            return Err(CliError::Config(format!(
                "[{name}] gamma_bar_db must be finite"
            )));
        }
        FadingParams::new(
            self.alpha,
            self.kappa,
            self.mu,
            self.m,
            db_to_linear(self.gamma_bar_db),
        )
        .map_err(|e| cfg_err(e, name))
    }
}

impl GridCfg {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let bad = |msg: &str| Err(CliError::Config(format!("[grid] {msg}")));
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return bad("start and stop must be finite");
        }
        if self.points == 0 {
            return bad("points must be >= 1");
        }
        if self.points > 1 && !(self.stop > self.start) {
            return bad("grid must be strictly increasing (stop > start)");
        }
        if self.spacing == Spacing::Log && !(self.start > 0.0) {
            return bad("log spacing needs start > 0");
        }
        let n = self.points;
        let at = |i: usize| {
            if n == 1 {
                0.0
            } else {
                i as f64 / (n - 1) as f64
            }
        };
        let v: Vec<f64> = (0..n)
            .map(|i| match self.spacing {
                Spacing::Linear => self.start + (self.stop - self.start) * at(i),
                Spacing::Log => {
                    (self.start.ln() + (self.stop.ln() - self.start.ln()) * at(i)).exp()
                }
                Spacing::Db => db_to_linear(self.start + (self.stop - self.start) * at(i)),
            })
            .collect();
        if v.windows(2).any(|w| !(w[1] > w[0])) {
            return bad("grid values are not strictly increasing after conversion");
        }
        Ok(v)
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config: {}", e.message())))
    }

    pub fn policy(&self, tol: Option<f64>) -> Result<Policy, CliError> {
        let mut p = Policy::default();
        if let Some(c) = &self.policy {
            p.tol = c.tol.unwrap_or(p.tol);
            p.max_uv = c.max_uv.unwrap_or(p.max_uv);
            p.quad_tol = c.quad_tol.unwrap_or(p.quad_tol);
        }
        if let Some(t) = tol {
            p.tol = t;
            p.quad_tol = t;
        }
        Ok(p)
    }

    fn pair_of(
        &self,
        a: &Option<LinkCfg>,
        an: &str,
        b: &Option<LinkCfg>,
        bn: &str,
        tol: Option<f64>,
    ) -> Result<PairStats, CliError> {
        let ps = PairStats::with_policy(
            need(a, an)?.params(an)?,
            need(b, bn)?.params(bn)?,
            self.policy(tol)?,
        );
        ps.validate_policy().map_err(|e| cfg_err(e, "policy"))?;
        Ok(ps)
    }

    /// `[link1]` and `[link2]`.
    pub fn pair(&self, tol: Option<f64>) -> Result<PairStats, CliError> {
        self.pair_of(&self.link1, "link1", &self.link2, "link2", tol)
    }

    /// `[sd]` and `[se]`; the grid runs over the eavesdropper mean.
    pub fn secrecy_pair(&self, tol: Option<f64>) -> Result<(PairStats, f64), CliError> {
        let rate = self.secrecy.map(|s| s.rate_rs).unwrap_or(0.0);
        if !(rate.is_finite() && rate >= 0.0) {
            return Err(CliError::Config(format!(
                "[secrecy] rate_rs must be finite and >= 0, got {rate}"
            )));
        }
        Ok((self.pair_of(&self.sd, "sd", &self.se, "se", tol)?, rate))
    }

    pub fn irs(&self) -> Result<IrsScenario, CliError> {
        let c = need(&self.irs, "irs")?;
        IrsScenario::new(
            need(&self.sd, "sd")?.params("sd")?,
            need(&self.sr, "sr")?.params("sr")?,
            need(&self.rd, "rd")?.params("rd")?,
            c.n_elements,
            c.gamma_s_db,
            [c.source, c.surface, c.destination],
            c.pathloss_beta,
        )
        .map_err(|e| cfg_err(e, "irs"))
    }

    pub fn grid(&self) -> Result<Vec<f64>, CliError> {
        need(&self.grid, "grid")?.values()
    }

    pub fn mc(&self, seed: Option<u64>, trials: Option<usize>) -> Result<McConfig, CliError> {
        let c = self.mc.unwrap_or_default();
        McConfig::new(
            seed.unwrap_or(c.seed),
            trials.unwrap_or(c.trials),
            c.streams,
        )
        .map_err(|e| cfg_err(e, "mc"))
    }
}
