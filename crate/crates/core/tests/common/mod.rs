#![allow(dead_code)]

use fading_core::akmu::FadingParams;
use fading_core::prodratio::PairStats;

/// One line of `data/goldens.txt`.
#[derive(Debug, Clone)]
pub struct Golden {
    pub id: String,
    pub inputs: Vec<f64>,
    pub value: f64,
    pub tol: f64,
}

pub fn goldens() -> Vec<Golden> {
    let text = include_str!("../data/goldens.txt");
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split(',').map(str::trim).collect();
            let nums: Vec<f64> = f[1..].iter().map(|s| s.parse().unwrap()).collect();
            let (head, tail) = nums.split_at(nums.len() - 2);
            Golden {
                id: f[0].to_string(),
                inputs: head.to_vec(),
                value: tail[0],
                tol: tail[1],
            }
        })
        .collect()
}

pub fn golden(id: &str, inputs: &[f64]) -> Golden {
    goldens()
        .into_iter()
        .find(|g| g.id == id && g.inputs.len() >= inputs.len() && g.inputs[g.inputs.len() - inputs.len()..] == *inputs)
        .unwrap_or_else(|| panic!("no golden {id} {inputs:?}"))
}

pub fn link(alpha: f64, kappa: f64, mu: f64, m: f64) -> FadingParams {
    FadingParams::new(alpha, kappa, mu, m, 1.0).unwrap()
}

/// The reference pair used by the goldens.
pub fn fig_pair() -> PairStats {
    PairStats::new(link(1.5, 5.0, 1.2, 2.8), link(2.5, 2.1, 3.0, 4.4))
}

/// Parameter sets exercised by the cross-checks.
pub fn param_sets() -> Vec<(&'static str, PairStats)> {
    vec![
        ("S3a", PairStats::new(link(1.5, 5.0, 1.2, 2.8), link(2.5, 2.1, 3.0, 4.4))),
        ("S3b", PairStats::new(link(1.5, 3.0, 2.1, 10.0), link(2.5, 1.0, 1.5, 4.0))),
        ("S4a", PairStats::new(link(1.0, 2.2, 1.5, 10.0), link(1.5, 0.9, 2.5, 4.0))),
        ("S4b", PairStats::new(link(1.5, 5.0, 1.2, 1.0), link(2.5, 2.1, 3.0, 10.0))),
    ]
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
