//! Lambert-W estimates for the growth of `ℓ(n)`.
//!
//! `C m log m = log n` is solved by `m = (log n / C) / W(log n / C)`; the
//! experiment fits `C` to exact `ℓ(n)` at sample points and reports how far
//! the data strays from the fitted curve.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

/// Principal branch of `W` on `[0, ∞)`: the root of `w e^w = z`.
pub fn lambert_w(z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain(format!(
            "lambert_w needs a finite z >= 0, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let mut w = if z <= std::f64::consts::E {
        z.ln_1p()
    } else {
        let (l1, l2) = (z.ln(), z.ln().ln());
        l1 - l2 + l2 / l1
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - z;
        let step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

/// `m` with `C m log m = log n`; needs `log n >= C e`, i.e. `m >= e`.
pub fn ell_solution(log_n: f64, c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::domain(format!("C must be positive, got {c}")));
    }
    if !log_n.is_finite() || log_n < c * std::f64::consts::E {
        return Err(Error::domain(format!(
            "log n = {log_n} is below C·e = {}",
            c * std::f64::consts::E
        )));
    }
    let x = log_n / c;
    Ok(x / lambert_w(x)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthSample {
    pub n: u64,
    pub ell: u32,
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    /// Least-squares `C` for `ℓ(n) ≈ m_C(n)`.
    pub c: f64,
    pub samples: Vec<GrowthSample>,
    /// Extremes of `ℓ(n) / m_C(n)` over the samples.
    pub ratio_low: f64,
    pub ratio_high: f64,
}

/// `10^3, 2·10^3, 5·10^3, …, 10^16`.
pub fn default_growth_samples() -> Vec<u64> {
    let mut out = Vec::new();
    for e in 3..16 {
        let base = 10u64.pow(e);
        out.extend([base, 2 * base, 5 * base]);
    }
    out.push(10u64.pow(16));
    out
}

fn sse(ns: &[u64], ells: &[u32], c: f64) -> f64 {
    ns.iter()
        .zip(ells)
        .map(|(&n, &l)| {
            let m = ell_solution((n as f64).ln(), c).unwrap_or(f64::NAN);
            (l as f64 - m).powi(2)
        })
        .sum()
}

/// Fits `C` over `(0, min ln n / e]` by a grid search refined with golden
/// sections.
pub fn growth_experiment(samples: &[u64]) -> Result<GrowthReport> {
    if samples.is_empty() || samples.iter().any(|&n| n < 16) {
        return Err(Error::domain("growth samples must be nonempty and >= 16"));
    }
    let ells: Vec<u32> = samples.iter().map(|&n| arith::ell(n as u128)).collect();
    let c_max = samples
        .iter()
        .map(|&n| (n as f64).ln() / std::f64::consts::E)
        .fold(f64::INFINITY, f64::min);
    const GRID: usize = 2000;
    let at = |k: usize| c_max * k as f64 / GRID as f64;
    let best = (1..=GRID)
        .min_by(|&a, &b| sse(samples, &ells, at(a)).total_cmp(&sse(samples, &ells, at(b))))
        .expect("grid is nonempty");
    let (mut lo, mut hi) = (at(best - 1).max(c_max * 1e-9), at((best + 1).min(GRID)));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let (a, b) = (hi - ratio * (hi - lo), lo + ratio * (hi - lo));
        if sse(samples, &ells, a) <= sse(samples, &ells, b) {
            hi = b;
        } else {
            lo = a;
        }
    }
    let c = (lo + hi) / 2.0;
    let samples: Vec<GrowthSample> = samples
        .iter()
        .zip(&ells)
        .map(|(&n, &ell)| {
            Ok(GrowthSample {
                n,
                ell,
                estimate: ell_solution((n as f64).ln(), c)?,
            })
        })
        .collect::<Result<_>>()?;
    let ratios = samples.iter().map(|s| s.ell as f64 / s.estimate);
    Ok(GrowthReport {
        c,
        ratio_low: ratios.clone().fold(f64::INFINITY, f64::min),
        ratio_high: ratios.fold(f64::NEG_INFINITY, f64::max),
        samples,
    })
}
