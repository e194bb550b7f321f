//! Monte Carlo reference harness.
//!
//! Stream `k` of a run is ChaCha20 seeded from `master_seed` with stream id
//! `k`, so any stream can be regenerated on its own and the merged result
//! does not depend on thread scheduling.

use crate::akmu::{sample_one, FadingParams};
use crate::apps::IrsScenario;
use crate::error::{ensure, Error, Result};
use crate::prodratio::PairStats;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

/// Two-sided 99% standard normal quantile.
pub const Z99: f64 = 2.575_829_303_548_901;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub master_seed: u64,
    pub trials: usize,
    pub stream_count: usize,
}

impl McConfig {
    pub fn new(master_seed: u64, trials: usize, stream_count: usize) -> Result<Self> {
        let c = Self {
            master_seed,
            trials,
            stream_count,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.trials >= 1000, || format!("trials must be >= 1000, got {}", self.trials))?;
        ensure(self.stream_count >= 1, || "stream_count must be >= 1".into())
    }

    /// Trials assigned to stream `k`; the remainder goes to the first streams.
    fn stream_trials(&self, k: usize) -> usize {
        let base = self.trials / self.stream_count;
        base + usize::from(k < self.trials % self.stream_count)
    }
}

/// Generator for stream `k` of a run.
pub fn stream_rng(master_seed: u64, k: u64) -> ChaCha20Rng {
    let mut r = ChaCha20Rng::seed_from_u64(master_seed);
    r.set_stream(k);
    r
}

/// Runs `draw` for every trial, stream by stream, and concatenates the
/// outputs in stream order.
fn run_streams<T, F>(cfg: &McConfig, draw: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha20Rng) -> T + Sync,
{
    cfg.validate()?;
    let chunks: Vec<Vec<T>> = (0..cfg.stream_count)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(cfg.master_seed, k as u64);
            (0..cfg.stream_trials(k)).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Sorted samples with moment estimates and their standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSummary {
    sorted: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    pub mean_se: f64,
    pub variance_se: f64,
}

impl SampleSummary {
    pub fn from_samples(mut xs: Vec<f64>) -> Result<Self> {
        if xs.len() < 2 || xs.iter().any(|x| x.is_nan()) {
            return Err(Error::Numerical("sample summary needs at least two non-NaN samples".into()));
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let (mut m2, mut m4) = (0.0, 0.0);
        for &x in &xs {
            let d = x - mean;
            m2 += d * d;
            m4 += d * d * d * d;
        }
        let variance = m2 / (n - 1.0);
        let m4 = m4 / n;
        xs.sort_by(f64::total_cmp);
        Ok(Self {
            sorted: xs,
            mean,
            variance,
            mean_se: (variance / n).sqrt(),
            variance_se: ((m4 - variance * variance).max(0.0) / n).sqrt(),
        })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `≤ x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&s| s <= x) as f64 / self.len() as f64
    }

    pub fn ecdf_grid(&self, grid: &[f64]) -> Vec<f64> {
        grid.iter().map(|&x| self.ecdf(x)).collect()
    }

    /// `sup |F_n − F|` over the samples for a continuous `F`.
    pub fn ks(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        let n = self.len() as f64;
        self.sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                (f - i as f64 / n).max((i + 1) as f64 / n - f)
            })
            .fold(0.0, f64::max)
    }
}

pub fn simulate_product(ps: &PairStats, cfg: &McConfig) -> Result<SampleSummary> {
    let (p1, p2) = (*ps.p1(), *ps.p2());
    SampleSummary::from_samples(run_streams(cfg, |r| sample_one(&p1, r) * sample_one(&p2, r))?)
}

pub fn simulate_ratio(ps: &PairStats, cfg: &McConfig) -> Result<SampleSummary> {
    let (p1, p2) = (*ps.p1(), *ps.p2());
    SampleSummary::from_samples(run_streams(cfg, |r| sample_one(&p1, r) / sample_one(&p2, r))?)
}

/// Empirical outage curve: `op[i]` estimates `P(γ < gamma_th[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutageCurve {
    pub gamma_th: Vec<f64>,
    pub op: Vec<f64>,
    pub trials: usize,
}

impl OutageCurve {
    /// Half-width of the 99% normal-approximation band at grid point `i`.
    pub fn ci99(&self, i: usize) -> f64 {
        binomial_ci99(self.op[i], self.trials)
    }
}

/// 99% half-width for a proportion `p` estimated from `n` trials.
pub fn binomial_ci99(p: f64, n: usize) -> f64 {
    Z99 * (p * (1.0 - p) / n as f64).sqrt()
}

fn envelope<R: Rng + ?Sized>(p: &FadingParams, rng: &mut R) -> f64 {
    sample_one(p, rng).sqrt()
}

/// Received SNR `γ_s (g_SD + Σ g_SR,i g_RD,i)²` with `n` surface elements
/// (`n = 0` leaves the direct link alone).
pub fn simulate_irs_snr(sc: &IrsScenario, n: usize, cfg: &McConfig) -> Result<Vec<f64>> {
    let gs = sc.gamma_s();
    run_streams(cfg, |r| {
        let mut a = envelope(&sc.sd, r);
        for _ in 0..n {
            a += envelope(&sc.sr, r) * envelope(&sc.rd, r);
        }
        gs * a * a
    })
}

/// Empirical outage probability of the IRS link over a threshold grid.
pub fn simulate_irs(sc: &IrsScenario, cfg: &McConfig, gamma_th: &[f64]) -> Result<OutageCurve> {
    let mut snr = simulate_irs_snr(sc, sc.n_elements, cfg)?;
    snr.sort_by(f64::total_cmp);
    let n = snr.len();
    Ok(OutageCurve {
        gamma_th: gamma_th.to_vec(),
        op: gamma_th.iter().map(|&g| snr.partition_point(|&s| s < g) as f64 / n as f64).collect(),
        trials: n,
    })
}

/// CDF tabulated on a grid by integrating the density, then evaluated by
/// cubic Hermite interpolation in `ln x` using the density for the slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfTable {
    x: Vec<f64>,
    f: Vec<f64>,
    pdf: Vec<f64>,
}

const GL8: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

impl CdfTable {
    /// `grid` must be increasing and positive; `f0` is the CDF at `grid[0]`.
    /// Each cell is integrated with 8-point Gauss–Legendre in `ln x`.
    pub fn from_pdf(grid: &[f64], f0: f64, pdf: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        ensure(grid.len() >= 2, || "CdfTable needs at least two grid points".into())?;
        ensure(grid[0] > 0.0 && grid.windows(2).all(|w| w[1] > w[0]), || {
            "CdfTable grid must be positive and strictly increasing".into()
        })?;
        let dens = grid.iter().map(|&x| pdf(x)).collect::<Result<Vec<_>>>()?;
        let mut f = vec![f0];
        for w in grid.windows(2) {
            let (a, b) = (w[0].ln(), w[1].ln());
            let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
            let mut s = 0.0;
            for (t, wt) in GL8 {
                for u in [c - h * t, c + h * t] {
                    let x = u.exp();
                    s += wt * x * pdf(x)?;
                }
            }
            f.push(f.last().unwrap() + h * s);
        }
        Ok(Self {
            x: grid.to_vec(),
            f,
            pdf: dens,
        })
    }

    /// Value at the last grid point (1 when the grid spans the mass).
    pub fn total(&self) -> f64 {
        *self.f.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.x.len();
        if x <= self.x[0] {
            return self.f[0];
        }
        if x >= self.x[n - 1] {
            return self.f[n - 1];
        }
        let i = self.x.partition_point(|&g| g <= x) - 1;
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = (x1 / x0).ln();
        let t = (x / x0).ln() / h;
        let (t2, t3) = (t * t, t * t * t);
        // slopes in ln x are x·f(x)
        (2.0 * t3 - 3.0 * t2 + 1.0) * self.f[i]
            + (t3 - 2.0 * t2 + t) * h * x0 * self.pdf[i]
            + (-2.0 * t3 + 3.0 * t2) * self.f[i + 1]
            + (t3 - t2) * h * x1 * self.pdf[i + 1]
    }
}

/// KS acceptance level for 10⁶ samples.
pub const KS_GATE: f64 = 0.0017;

/// KS distance between the samples and a positive law given by its density
/// and its CDF at one point. The CDF is tabulated over twice the sample
/// range on `points` log-spaced nodes.
pub fn ks_from_density(
    s: &SampleSummary,
    points: usize,
    cdf_at: impl FnOnce(f64) -> Result<f64>,
    pdf: impl Fn(f64) -> Result<f64>,
) -> Result<(f64, CdfTable)> {
    let xs = s.samples();
    let (lo, hi) = (xs[0] * 0.5, xs[xs.len() - 1] * 2.0);
    ensure(lo > 0.0 && hi.is_finite(), || "samples must be positive and finite".into())?;
    let table = CdfTable::from_pdf(&log_grid(lo, hi, points), cdf_at(lo)?, pdf)?;
    Ok((s.ks(|x| table.eval(x)), table))
}

/// `count` points from `lo` to `hi`, equally spaced in `ln x`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}
