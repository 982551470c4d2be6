//! Poisson point process sampling with Bernoulli infection marks, plus the
//! leading-order Poisson deviation exponent.

use crate::error::{Error, Result};
use crate::geometry::Space;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Model parameters: expected degree `a log n`, initial infection probability
/// `p`, threshold fraction `theta`, expected vertex count `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub a: f64,
    pub p: f64,
    pub theta: f64,
    pub n: f64,
    pub dim: usize,
    pub seed: u64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.a > 1.0) {
            return Err(Error::InvalidParameter(format!("a must exceed 1, got {}", self.a)));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidParameter(format!("p must lie in [0,1], got {}", self.p)));
        }
        if !(0.0..=1.0).contains(&self.theta) {
            return Err(Error::InvalidParameter(format!("theta must lie in [0,1], got {}", self.theta)));
        }
        if !(self.n > 1.0) {
            return Err(Error::InvalidParameter(format!("n must exceed 1, got {}", self.n)));
        }
        if self.dim != 1 && self.dim != 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        Ok(())
    }

    pub fn space(&self) -> Result<Space> {
        Space::with_volume(self.dim, self.n)
    }
}

/// Sampled vertex positions together with the initial-infection marks `A_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedPointSet {
    pub space: Space,
    /// Flat coordinate storage, `dim` entries per point.
    pub positions: Vec<f64>,
    pub marks: Vec<bool>,
}

impl MarkedPointSet {
    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        let d = self.space.dim;
        &self.positions[i * d..(i + 1) * d]
    }

    pub fn marked_count(&self) -> usize {
        self.marks.iter().filter(|&&m| m).count()
    }

    /// CSV layout: a `dim,side,count` header line, then one row per point
    /// with the coordinates and a 0/1 mark.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{},{},{}", self.space.dim, self.space.side, self.len())?;
        for i in 0..self.len() {
            for c in self.point(i) {
                write!(w, "{c},")?;
            }
            writeln!(w, "{}", u8::from(self.marks[i]))?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Config("empty point-set file".into()))??;
        let fields: Vec<&str> = header.trim().split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Config(format!("bad header line: {header}")));
        }
        let dim: usize = fields[0]
            .parse()
            .map_err(|_| Error::Config(format!("bad dim field: {}", fields[0])))?;
        let side: f64 = fields[1]
            .parse()
            .map_err(|_| Error::Config(format!("bad side field: {}", fields[1])))?;
        let count: usize = fields[2]
            .parse()
            .map_err(|_| Error::Config(format!("bad count field: {}", fields[2])))?;
        let space = Space::new(dim, side)?;
        let mut positions = Vec::with_capacity(count * dim);
        let mut marks = Vec::with_capacity(count);
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.trim().split(',').collect();
            if parts.len() != dim + 1 {
                return Err(Error::Config(format!("line {}: expected {} fields", lineno + 2, dim + 1)));
            }
            for part in &parts[..dim] {
                positions.push(
                    part.parse::<f64>()
                        .map_err(|_| Error::Config(format!("line {}: bad coordinate {part}", lineno + 2)))?,
                );
            }
            marks.push(parts[dim] == "1");
        }
        if marks.len() != count {
            return Err(Error::Config(format!("expected {count} points, found {}", marks.len())));
        }
        Ok(MarkedPointSet { space, positions, marks })
    }
}

const MAX_POINTS: f64 = 2e8;

fn draw_poisson(rng: &mut ChaCha8Rng, mean: f64) -> Result<usize> {
    if mean > MAX_POINTS {
        return Err(Error::Resource(format!("point count {mean:.3e} exceeds the in-memory budget")));
    }
    if mean <= 0.0 {
        return Ok(0);
    }
    let poisson = Poisson::new(mean)
        .map_err(|e| Error::InvalidParameter(format!("invalid Poisson mean {mean}: {e}")))?;
    Ok(poisson.sample(rng) as usize)
}

fn uniform_positions(rng: &mut ChaCha8Rng, space: &Space, count: usize) -> Vec<f64> {
    let mut positions = Vec::with_capacity(count * space.dim);
    for _ in 0..count * space.dim {
        // gen_range never returns `side` itself on half-open ranges
        positions.push(rng.gen_range(0.0..space.side));
    }
    positions
}

/// Poisson(`n`) points, i.i.d. uniform positions, marks Bernoulli(`p`).
/// Fully deterministic given `params.seed`.
pub fn sample_marked_ppp(params: &ModelParams) -> Result<MarkedPointSet> {
    params.validate()?;
    let space = params.space()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let count = draw_poisson(&mut rng, params.n)?;
    let positions = uniform_positions(&mut rng, &space, count);
    let marks = (0..count).map(|_| rng.gen_bool(params.p)).collect();
    Ok(MarkedPointSet { space, positions, marks })
}

/// The equivalent two-process construction: an intensity-`p` process of
/// marked points superposed with an intensity-`1-p` process of unmarked ones.
pub fn sample_two_process(params: &ModelParams) -> Result<MarkedPointSet> {
    params.validate()?;
    let space = params.space()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let marked = draw_poisson(&mut rng, params.p * params.n)?;
    let unmarked = draw_poisson(&mut rng, (1.0 - params.p) * params.n)?;
    let mut positions = uniform_positions(&mut rng, &space, marked);
    positions.extend(uniform_positions(&mut rng, &space, unmarked));
    let mut marks = vec![true; marked];
    marks.extend(std::iter::repeat(false).take(unmarked));
    Ok(MarkedPointSet { space, positions, marks })
}

/// Leading-order exponent of the probability that a Poisson process of
/// intensity 1 puts `rho * area` points in a region of the given area:
/// `(rho - 1 - rho log rho) * area`, with `0 log 0 = 0`. The polylog
/// correction is dropped.
pub fn poisson_deviation_exponent(rho: f64, area: f64) -> f64 {
    debug_assert!(rho >= 0.0 && area > 0.0);
    let rate = if rho == 0.0 { -1.0 } else { rho - 1.0 - rho * rho.ln() };
    rate * area
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, n: f64, seed: u64) -> ModelParams {
        ModelParams { a: 2.0, p, theta: 0.5, n, dim: 2, seed }
    }

    #[test]
    fn extreme_marks() {
        let all = sample_marked_ppp(&params(1.0, 500.0, 7)).unwrap();
        assert!(all.marks.iter().all(|&m| m));
        let none = sample_marked_ppp(&params(0.0, 500.0, 7)).unwrap();
        assert!(none.marks.iter().all(|&m| !m));
    }

    #[test]
    fn two_process_extremes() {
        let none = sample_two_process(&params(0.0, 500.0, 3)).unwrap();
        assert_eq!(none.marked_count(), 0);
        let all = sample_two_process(&params(1.0, 500.0, 3)).unwrap();
        assert_eq!(all.marked_count(), all.len());
    }

    #[test]
    fn deterministic_given_seed() {
        let a = sample_marked_ppp(&params(0.4, 2000.0, 99)).unwrap();
        let b = sample_marked_ppp(&params(0.4, 2000.0, 99)).unwrap();
        assert_eq!(a, b);
        let c = sample_marked_ppp(&params(0.4, 2000.0, 100)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn count_concentration() {
        // 60 replicates at n = 4000: sample mean within 4 sigma of the mean
        let n = 4000.0;
        let reps = 60;
        let mut total = 0usize;
        let mut marked = 0usize;
        for seed in 0..reps {
            let ps = sample_marked_ppp(&params(0.3, n, seed)).unwrap();
            total += ps.len();
            marked += ps.marked_count();
        }
        let mean = total as f64 / reps as f64;
        assert!((mean - n).abs() < 4.0 * (n / reps as f64).sqrt());
        let frac = marked as f64 / total as f64;
        assert!((frac - 0.3).abs() < 4.0 * (0.3f64 * 0.7 / (n * reps as f64)).sqrt());
    }

    #[test]
    fn exponent_properties() {
        assert_eq!(poisson_deviation_exponent(1.0, 12.3), 0.0);
        assert_eq!(poisson_deviation_exponent(0.0, 5.0), -5.0);
        let v = poisson_deviation_exponent(2.0, 10.0);
        assert!((v - 10.0 * (1.0 - 2.0 * 2f64.ln())).abs() < 1e-12);
        // concave in rho with maximum at rho = 1
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=100 {
            let rho = i as f64 * 0.01;
            let e = poisson_deviation_exponent(rho, 1.0);
            assert!(e <= 1e-15);
            if rho <= 1.0 {
                assert!(e >= prev - 1e-12);
            }
            prev = e;
        }
        // exact Poisson tail cross-check: |exponent - ln P(N >= 20 | mean 10)|
        // within the dropped polylog correction
        let exact = {
            // P(N >= 20), mean 10, by direct summation
            let lambda = 10.0f64;
            let mut term = (-lambda).exp();
            let mut cdf = term;
            for k in 1..20 {
                term *= lambda / k as f64;
                cdf += term;
            }
            (1.0 - cdf).ln()
        };
        let approx = poisson_deviation_exponent(2.0, 10.0);
        assert!((approx - exact).abs() <= (20.0f64).ln() + 1.0);
    }

    #[test]
    fn csv_round_trip() {
        let ps = sample_marked_ppp(&params(0.5, 300.0, 21)).unwrap();
        let mut buf = Vec::new();
        ps.write_csv(&mut buf).unwrap();
        let back = MarkedPointSet::read_csv(std::io::BufReader::new(buf.as_slice())).unwrap();
        assert_eq!(ps.len(), back.len());
        assert_eq!(ps.marks, back.marks);
        for i in 0..ps.len() {
            for (x, y) in ps.point(i).iter().zip(back.point(i)) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }
}
