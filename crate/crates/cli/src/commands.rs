use crate::config::RunConfig;
use crate::output::Table;
use crate::{CliError, Command, What};
use fading_core::approx::{fit_beta_prime_ratio, fit_gamma_product};
use fading_core::apps::{
    amount_of_fading, cascade_outage, irs_gamma_params, irs_outage, secrecy_outage, spsc,
    SecrecyScenario,
};
use fading_core::mc::{ks_from_density, simulate_irs, simulate_product, simulate_ratio, KS_GATE};
use fading_core::prodratio::{
    product_cdf, product_moment, product_pdf, ratio_cdf, ratio_moment, ratio_pdf, PairStats,
};
use fading_core::specfun::EvalResult;
use fading_core::Error;
use rayon::prelude::*;

/// Nodes of the analytic CDF table used for KS.
const KS_TABLE_POINTS: usize = 600;
/// Extra allowance for the IRS approximations against Monte Carlo.
const IRS_GAP: f64 = 0.02;

/// `f` over the grid in parallel; rows come back in grid order.
fn grid_rows<F>(grid: &[f64], header: Vec<&'static str>, f: F) -> Result<Table, CliError>
where
    F: Fn(f64) -> Result<(Vec<f64>, f64), CliError> + Sync,
{
    let rows: Vec<(Vec<f64>, f64)> = grid.par_iter().map(|&x| f(x)).collect::<Result<_, _>>()?;
    let mut t = Table::new(header);
    for (r, e) in rows {
        t.push(r, e);
    }
    Ok(t)
}

fn eval_rows(
    grid: &[f64],
    x_name: &'static str,
    y_name: &'static str,
    f: impl Fn(f64) -> fading_core::Result<EvalResult> + Sync,
) -> Result<Table, CliError> {
    grid_rows(grid, vec![x_name, y_name, "abs_err_est"], |x| {
        let r = f(x)?;
        Ok((vec![x, r.value, r.abs_err_est], r.abs_err_est))
    })
}

fn secrecy_rows(
    cfg: &RunConfig,
    tol: Option<f64>,
    name: &'static str,
    positive: bool,
) -> Result<Table, CliError> {
    let (ps, rate) = cfg.secrecy_pair(tol)?;
    let grid = cfg.grid()?;
    eval_rows(&grid, "gamma_bar_se", name, |g| {
        let sc = SecrecyScenario::new(*ps.p1(), ps.p2().with_gamma_bar(g)?, rate)?;
        if positive {
            spsc(&sc)
        } else {
            secrecy_outage(&sc)
        }
    })
}

fn validate_pair(
    ps: &PairStats,
    cfg: &RunConfig,
    mc: &fading_core::mc::McConfig,
    product: bool,
) -> Result<Table, CliError> {
    let grid = cfg.grid()?;
    let s = if product {
        simulate_product(ps, mc)?
    } else {
        simulate_ratio(ps, mc)?
    };
    let (ks, table) = if product {
        ks_from_density(
            &s,
            KS_TABLE_POINTS,
            |x| Ok(product_cdf(ps, x)?.value),
            |x| Ok(product_pdf(ps, x)?.value),
        )?
    } else {
        ks_from_density(
            &s,
            KS_TABLE_POINTS,
            |x| Ok(ratio_cdf(ps, x)?.value),
            |x| Ok(ratio_pdf(ps, x)?.value),
        )?
    };
    if !(ks < KS_GATE) {
        return Err(CliError::Accuracy(format!(
            "KS statistic {ks:.5} is not below {KS_GATE} ({} samples)",
            s.len()
        )));
    }
    let mut t = Table::new(vec!["x", "ecdf", "cdf", "ks"]);
    for &x in &grid {
        t.push(vec![x, s.ecdf(x), table.eval(x), ks], 0.0);
    }
    Ok(t)
}

fn validate_irs(cfg: &RunConfig, mc: &fading_core::mc::McConfig) -> Result<Table, CliError> {
    let sc = cfg.irs()?;
    let grid = cfg.grid()?;
    let curve = simulate_irs(&sc, mc, &grid)?;
    let mut t = Table::new(vec!["gamma_th", "op_mc", "op", "ci99"]);
    for (i, &g) in grid.iter().enumerate() {
        let a = irs_outage(&sc, g)?;
        let ci = curve.ci99(i);
        let gap = (a.value - curve.op[i]).abs();
        if gap > ci.max(IRS_GAP) {
            return Err(CliError::Accuracy(format!(
                "outage at gamma_th = {g:e} differs from Monte Carlo by {gap:.4} (band {:.4})",
                ci.max(IRS_GAP)
            )));
        }
        t.push(vec![g, curve.op[i], a.value, ci], a.abs_err_est);
    }
    Ok(t)
}

pub fn run_command(cmd: &Command, cfg: &RunConfig) -> Result<Table, CliError> {
    let tol = cmd.common().tol;
    match cmd {
        Command::PdfProduct(_) => {
            let ps = cfg.pair(tol)?;
            eval_rows(&cfg.grid()?, "y", "pdf", |y| product_pdf(&ps, y))
        }
        Command::CdfProduct(_) => {
            let ps = cfg.pair(tol)?;
            eval_rows(&cfg.grid()?, "y", "cdf", |y| product_cdf(&ps, y))
        }
        Command::PdfRatio(_) => {
            let ps = cfg.pair(tol)?;
            eval_rows(&cfg.grid()?, "z", "pdf", |z| ratio_pdf(&ps, z))
        }
        Command::CdfRatio(_) => {
            let ps = cfg.pair(tol)?;
            eval_rows(&cfg.grid()?, "z", "cdf", |z| ratio_cdf(&ps, z))
        }
        Command::Moments(_) => {
            let ps = cfg.pair(tol)?;
            grid_rows(
                &cfg.grid()?,
                vec!["n", "product_moment", "ratio_moment"],
                |n| {
                    let p = product_moment(&ps, n)?;
                    // A diverging ratio moment is a property of the inputs, not a failure.
                    let r = match ratio_moment(&ps, n) {
                        Ok(v) => v,
                        Err(Error::MomentUndefined { .. }) => f64::NAN,
                        Err(e) => return Err(e.into()),
                    };
                    Ok((vec![n, p, r], 0.0))
                },
            )
        }
        Command::ApproxFit(_) => {
            let ps = cfg.pair(tol)?;
            let g = fit_gamma_product(&ps)?;
            let b = fit_beta_prime_ratio(&ps)?;
            let mut t = Table::new(vec![
                "k_y", "theta_y", "k_z1", "theta_z1", "k_z2", "theta_z2", "c_pro", "c_ratio",
                "d_ratio",
            ]);
            t.push(
                vec![
                    g.k,
                    g.theta,
                    b.k1,
                    b.theta1,
                    b.k2,
                    b.theta2,
                    1.0 / g.k,
                    b.c_ratio(),
                    b.d_ratio(),
                ],
                0.0,
            );
            Ok(t)
        }
        Command::OpCascade(_) => {
            let ps = cfg.pair(tol)?;
            eval_rows(&cfg.grid()?, "gamma_th", "op", |g| cascade_outage(&ps, g))
        }
        Command::Af(_) => {
            let ps = cfg.pair(tol)?;
            let mut t = Table::new(vec!["af"]);
            t.push(vec![amount_of_fading(&ps)?], 0.0);
            Ok(t)
        }
        Command::Sop(_) => secrecy_rows(cfg, tol, "sop", false),
        Command::Spsc(_) => secrecy_rows(cfg, tol, "spsc", true),
        Command::IrsOp(_) => {
            let sc = cfg.irs()?;
            let k = irs_gamma_params(&sc)?.k_mom;
            grid_rows(
                &cfg.grid()?,
                vec!["gamma_th", "op", "abs_err_est", "k_mom"],
                |g| {
                    let r = irs_outage(&sc, g)?;
                    Ok((vec![g, r.value, r.abs_err_est, k], r.abs_err_est))
                },
            )
        }
        Command::Validate(v) => {
            let mc = cfg.mc(v.seed, v.trials)?;
            match v.what {
                What::Product => validate_pair(&cfg.pair(tol)?, cfg, &mc, true),
                What::Ratio => validate_pair(&cfg.pair(tol)?, cfg, &mc, false),
                What::Irs => validate_irs(cfg, &mc),
            }
        }
    }
}
