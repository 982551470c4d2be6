//! Closed-form exponents, boxed conditions, blocking-set and island optima,
//! and the six-regime phase classifier for bootstrap percolation on the
//! circle.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Exponent controlling whether the infection starts at all:
/// `a (p - theta + theta log(theta/p))` for `theta > p`, zero otherwise.
pub fn f_start(a: f64, p: f64, theta: f64) -> f64 {
    if theta <= p {
        0.0
    } else {
        a * (p - theta + theta * (theta / p).ln())
    }
}

/// Exponent of the degenerate (low-degree vertex) obstruction:
/// `a (1 - theta + theta log theta)`.
pub fn f_0stop(a: f64, theta: f64) -> f64 {
    if theta == 0.0 {
        a
    } else {
        a * (1.0 - theta + theta * theta.ln())
    }
}

/// Supremum of `theta <= 1` with `f_start < 1` (bisection on the monotone
/// branch above `p`).
pub fn theta_start(a: f64, p: f64) -> f64 {
    if f_start(a, p, 1.0) < 1.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (p, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f_start(a, p, mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Island case selector `c* = 2 (theta (2-p)^2 - p^2) / (p (1-p) (2-p))`.
pub fn c_star(p: f64, theta: f64) -> f64 {
    2.0 * (theta * (2.0 - p) * (2.0 - p) - p * p) / (p * (1.0 - p) * (2.0 - p))
}

/// Interior-island stop exponent
/// `a (4(1-p)/(2-p)^2 + 2 theta log(p/(2-p)))`.
pub fn f_cstar_stop(a: f64, p: f64, theta: f64) -> f64 {
    a * (4.0 * (1.0 - p) / ((2.0 - p) * (2.0 - p)) + 2.0 * theta * (p / (2.0 - p)).ln())
}

/// `c = 1` island stop exponent, with `z = (sqrt(1 + 8 theta p) - 1) / (2p)`.
pub fn f_1stop(a: f64, p: f64, theta: f64) -> f64 {
    let s = (1.0 + 8.0 * theta * p).sqrt();
    let z = (s - 1.0) / (2.0 * p);
    a * (1.0 - theta + p / 2.0 - (s - 1.0) / (4.0 * p) + 2.0 * theta * z.ln())
}

/// The four boxed conditions plus the three-case full-percolation rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions1D {
    pub starting: bool,
    pub global_growth: bool,
    pub first_threshold: bool,
    pub second_threshold: bool,
    pub full_percolation: bool,
}

/// Six-regime classification of the 1-D phase diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "no_growth")]
    NoGrowth,
    #[serde(rename = "logarithmic_growth")]
    LogarithmicGrowth,
    #[serde(rename = "polynomial_growth")]
    PolynomialGrowth,
    #[serde(rename = "polynomial_obstructions")]
    PolynomialObstructions,
    #[serde(rename = "logarithmic_obstructions")]
    LogarithmicObstructions,
    #[serde(rename = "full_percolation")]
    FullPercolation,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::NoGrowth => "no_growth",
            Regime::LogarithmicGrowth => "logarithmic_growth",
            Regime::PolynomialGrowth => "polynomial_growth",
            Regime::PolynomialObstructions => "polynomial_obstructions",
            Regime::LogarithmicObstructions => "logarithmic_obstructions",
            Regime::FullPercolation => "full_percolation",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// All closed-form quantities and conditions at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport1D {
    pub a: f64,
    pub p: f64,
    pub theta: f64,
    pub f_start: f64,
    pub f_0stop: f64,
    /// Start-count exponent: `1 - f_start` for `theta > p`, else 1.
    pub alpha: f64,
    /// Blocking-set count exponent.
    pub beta: f64,
    pub c_star: f64,
    pub f_cstar_stop: f64,
    pub f_1stop: f64,
    pub conditions: Conditions1D,
    pub regime: Regime,
}

fn validate(a: f64, p: f64, theta: f64) -> Result<()> {
    if !(a > 1.0) {
        return Err(Error::InvalidParameter(format!("a must exceed 1, got {a}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Boundary(format!("p must lie strictly inside (0,1), got {p}")));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Boundary(format!("theta must lie strictly inside (0,1), got {theta}")));
    }
    Ok(())
}

/// The four boxed conditions and the three-case full-percolation rule.
pub fn conditions_1d(a: f64, p: f64, theta: f64) -> Result<Conditions1D> {
    validate(a, p, theta)?;
    let starting = theta <= p || f_start(a, p, theta) < 1.0;
    let global_growth = theta < (1.0 + p) / 2.0;
    let first_threshold = (1.0 - p) / 2.0 > theta * ((1.0 + p) / (2.0 * p)).ln();
    let second_threshold =
        theta < p || a * (1.0 - theta + theta * (4.0 * theta * p / ((1.0 + p) * (1.0 + p))).ln()) > 1.0;
    let cs = c_star(p, theta);
    let full_percolation = if cs <= 0.0 {
        f_0stop(a, theta) > 1.0
    } else if cs < 1.0 {
        f_cstar_stop(a, p, theta) > 1.0
    } else {
        f_1stop(a, p, theta) > 1.0
    };
    Ok(Conditions1D { starting, global_growth, first_threshold, second_threshold, full_percolation })
}

/// Classify a parameter point into its regime by evaluating the conditions in
/// the order they gate each other.
pub fn classify_phase_1d(a: f64, p: f64, theta: f64) -> Result<Regime> {
    let c = conditions_1d(a, p, theta)?;
    Ok(if !c.starting {
        Regime::NoGrowth
    } else if !c.global_growth {
        Regime::LogarithmicGrowth
    } else if !c.first_threshold {
        Regime::PolynomialGrowth
    } else if !c.second_threshold {
        Regime::PolynomialObstructions
    } else if !c.full_percolation {
        Regime::LogarithmicObstructions
    } else {
        Regime::FullPercolation
    })
}

/// All named exponents, conditions and the regime at `(a, p, theta)`.
pub fn exponents_1d(a: f64, p: f64, theta: f64) -> Result<ThresholdReport1D> {
    let conditions = conditions_1d(a, p, theta)?;
    let fs = f_start(a, p, theta);
    let alpha = if theta > p { 1.0 - fs } else { 1.0 };
    let beta =
        1.0 - a * ((1.0 + p) / 2.0 - theta + theta * (2.0 * theta / (1.0 + p)).ln());
    Ok(ThresholdReport1D {
        a,
        p,
        theta,
        f_start: fs,
        f_0stop: f_0stop(a, theta),
        alpha,
        beta,
        c_star: c_star(p, theta),
        f_cstar_stop: f_cstar_stop(a, p, theta),
        f_1stop: f_1stop(a, p, theta),
        conditions,
        regime: classify_phase_1d(a, p, theta)?,
    })
}

/// Closed-form blocking-set optimum: `x = z = 2 theta / (1+p)` with
/// `f_max = 2 theta - (1+p) - 2 theta log(2 theta/(1+p))`. Degenerates to
/// `x = z = 1, f_max = 0` when the global growth condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockingOptimum {
    pub x: f64,
    pub z: f64,
    pub f_max: f64,
    pub degenerate: bool,
}

pub fn blocking_optimum(p: f64, theta: f64) -> BlockingOptimum {
    if theta >= (1.0 + p) / 2.0 {
        return BlockingOptimum { x: 1.0, z: 1.0, f_max: 0.0, degenerate: true };
    }
    let x = 2.0 * theta / (1.0 + p);
    let f_max = 2.0 * theta - (1.0 + p) - 2.0 * theta * x.ln();
    BlockingOptimum { x, z: x, f_max, degenerate: false }
}

/// Which branch of the island analysis applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IslandCase {
    Degenerate,
    Interior,
    Unit,
}

/// Closed-form island optimum for the binding case at `(p, theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IslandOptimum {
    pub case: IslandCase,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub c: f64,
    pub stop_exponent: f64,
}

pub fn island_optimum(a: f64, p: f64, theta: f64) -> Result<IslandOptimum> {
    validate(a, p, theta)?;
    let cs = c_star(p, theta);
    Ok(if cs <= 0.0 {
        // 0-island: only the middle interval survives, optimal density theta
        IslandOptimum {
            case: IslandCase::Degenerate,
            x: theta,
            y: theta,
            z: theta,
            c: 0.0,
            stop_exponent: f_0stop(a, theta),
        }
    } else if cs < 1.0 {
        let z = p / (2.0 - p);
        IslandOptimum {
            case: IslandCase::Interior,
            x: z * z,
            y: z * z,
            z,
            c: cs,
            stop_exponent: f_cstar_stop(a, p, theta),
        }
    } else {
        let z = ((1.0 + 8.0 * theta * p).sqrt() - 1.0) / (2.0 * p);
        IslandOptimum {
            case: IslandCase::Unit,
            x: z * z,
            y: 1.0,
            z,
            c: 1.0,
            stop_exponent: f_1stop(a, p, theta),
        }
    })
}

/// One row of the phase diagram table.
pub type PhaseRow = ThresholdReport1D;

/// Evaluate the report over the product grid `p_grid x theta_grid`.
pub fn phase_diagram_1d(a: f64, p_grid: &[f64], theta_grid: &[f64]) -> Result<Vec<PhaseRow>> {
    let mut cells = Vec::with_capacity(p_grid.len() * theta_grid.len());
    for &p in p_grid {
        for &theta in theta_grid {
            cells.push((p, theta));
        }
    }
    let rows = crate::exec::par_map(cells, |(p, theta)| exponents_1d(a, p, theta));
    rows.into_iter().collect()
}

pub const PHASE_CSV_HEADER: &str =
    "a,p,theta,f_start,f_0stop,alpha,beta,c_star,f_cstar_stop,f_1stop,starting,global_growth,first,second,full,regime";

pub fn write_phase_csv<W: Write>(mut w: W, rows: &[PhaseRow]) -> Result<()> {
    writeln!(w, "{PHASE_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.a,
            r.p,
            r.theta,
            r.f_start,
            r.f_0stop,
            r.alpha,
            r.beta,
            r.c_star,
            r.f_cstar_stop,
            r.f_1stop,
            r.conditions.starting,
            r.conditions.global_growth,
            r.conditions.first_threshold,
            r.conditions.second_threshold,
            r.conditions.full_percolation,
            r.regime
        )?;
    }
    Ok(())
}
