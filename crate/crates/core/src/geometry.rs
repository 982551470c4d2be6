//! Geometric kernels on the plane, the circle and the torus: wrapped
//! distances, disc/lens/cap areas and the radial cap fractions that weight
//! infected-neighbour counts everywhere else in the crate.

use crate::error::{Error, Result};
use crate::quad;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Radius of the disc of unit area, `1/sqrt(pi)`.
pub const UNIT_AREA_RADIUS: f64 = 0.564_189_583_547_756_3;

/// The host space: a circle (`dim = 1`) or flat torus (`dim = 2`) of extent
/// `side` per axis, so total volume `side^dim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Space {
    pub dim: usize,
    pub side: f64,
}

impl Space {
    pub fn new(dim: usize, side: f64) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if !(side > 0.0) {
            return Err(Error::InvalidParameter(format!("side must be positive, got {side}")));
        }
        Ok(Space { dim, side })
    }

    /// Torus of volume `n`: side `n^(1/dim)`.
    pub fn with_volume(dim: usize, n: f64) -> Result<Self> {
        if !(n > 0.0) {
            return Err(Error::InvalidParameter(format!("volume must be positive, got {n}")));
        }
        Space::new(dim, n.powf(1.0 / dim as f64))
    }

    pub fn volume(&self) -> f64 {
        self.side.powi(self.dim as i32)
    }

    fn validate_point(&self, p: &[f64]) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::InvalidParameter(format!(
                "point has {} coordinates, space has dimension {}",
                p.len(),
                self.dim
            )));
        }
        for (axis, &x) in p.iter().enumerate() {
            if !(0.0..self.side).contains(&x) {
                return Err(Error::CoordinateOutOfRange { value: x, side: self.side, axis });
            }
        }
        Ok(())
    }

    /// Wrapped Euclidean distance between two points of the torus.
    pub fn torus_distance(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        self.validate_point(u)?;
        self.validate_point(v)?;
        Ok(self.torus_distance_unchecked(u, v))
    }

    /// Same metric without coordinate validation (hot path).
    #[inline]
    pub fn torus_distance_unchecked(&self, u: &[f64], v: &[f64]) -> f64 {
        let mut sq = 0.0;
        for i in 0..self.dim {
            let d = (u[i] - v[i]).abs();
            let d = d.min(self.side - d);
            sq += d * d;
        }
        sq.sqrt()
    }
}

/// Connection radius giving expected degree `a log n`: the ball of radius `r`
/// has volume `a log n`, i.e. `alpha_d r^d = a log n` with `alpha_1 = 2`,
/// `alpha_2 = pi`.
pub fn radius_for(a: f64, n: f64, dim: usize) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("a must be positive, got {a}")));
    }
    if !(n > 1.0) {
        return Err(Error::InvalidParameter(format!("n must exceed 1, got {n}")));
    }
    match dim {
        1 => Ok(a * n.ln() / 2.0),
        2 => Ok((a * n.ln() / PI).sqrt()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn clamped_acos(x: f64) -> f64 {
    x.clamp(-1.0, 1.0).acos()
}

/// Intersection area of two unit discs whose centres lie at distance `delta`:
/// `pi - gamma - sin gamma` with `delta/2 = sin(gamma/2)`. Zero for
/// `delta >= 2`, decreasing in between.
pub fn lens_area_l(delta: f64) -> f64 {
    if delta <= 0.0 {
        return PI;
    }
    if delta >= 2.0 {
        return 0.0;
    }
    let gamma = 2.0 * (delta / 2.0).asin();
    PI - gamma - gamma.sin()
}

/// Area of the intersection of a unit disc with a disc of radius `delta`,
/// the unit-disc centre sitting on the perimeter of the `delta`-disc:
/// `delta^2 (pi - beta - sin beta) + beta/2` with `2 delta = sec(beta/2)`.
/// For `delta <= 1/2` the `delta`-disc is contained in the unit disc.
pub fn big_disc_cap_m(delta: f64) -> f64 {
    if delta <= 0.5 {
        return PI * delta * delta;
    }
    let beta = 2.0 * clamped_acos(1.0 / (2.0 * delta));
    delta * delta * (PI - beta - beta.sin()) + beta / 2.0
}

/// Fraction of the circle of radius `s` centred at the origin that lies
/// inside the ball of radius `cap_radius` centred at distance `t`.
pub fn circle_cap_fraction(s: f64, t: f64, cap_radius: f64) -> f64 {
    if s <= cap_radius - t {
        return 1.0;
    }
    if s >= cap_radius + t {
        return 0.0;
    }
    if s == 0.0 {
        // degenerate circle: a point at the origin
        return if t < cap_radius { 1.0 } else { 0.0 };
    }
    clamped_acos((s * s + t * t - cap_radius * cap_radius) / (2.0 * s * t)) / PI
}

/// One-dimensional analogue of the cap fraction: the proportion of the two
/// points at distance `t` from the origin covered by the interval of radius 1
/// around a point at distance `tau`.
pub fn h1_profile(t: f64, tau: f64) -> f64 {
    if t <= 1.0 - tau {
        1.0
    } else if t <= 1.0 + tau {
        0.5
    } else {
        0.0
    }
}

/// Lens/lune areas with an auxiliary angle, as used by the full-percolation
/// lower bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LensLuneValue {
    pub delta: f64,
    pub area: f64,
    /// The auxiliary angle (`gamma` for the lens, the M-angle for the cap).
    pub beta_m: f64,
}

/// `lens_area_l` together with its auxiliary angle `gamma`.
pub fn lens_value(delta: f64) -> LensLuneValue {
    let gamma = if delta >= 2.0 { PI } else { 2.0 * (delta.max(0.0) / 2.0).asin() };
    LensLuneValue { delta, area: lens_area_l(delta), beta_m: gamma }
}

/// `big_disc_cap_m` together with its auxiliary angle.
pub fn cap_value(delta: f64) -> LensLuneValue {
    let beta = if delta <= 0.5 { 0.0 } else { 2.0 * clamped_acos(1.0 / (2.0 * delta)) };
    LensLuneValue { delta, area: big_disc_cap_m(delta), beta_m: beta }
}

/// Areas of the lens `B_ball(0) ∩ B_disc((t,0))` and the lune
/// `B_disc((t,0)) \ B_ball(0)`, computed by integrating the cap fraction
/// radially. The two always sum to the disc area.
pub fn lens_lune_areas_2d(t: f64, ball_radius: f64, disc_radius: f64) -> (f64, f64) {
    let disc_area = PI * disc_radius * disc_radius;
    if ball_radius <= 0.0 || t >= ball_radius + disc_radius {
        return (0.0, disc_area);
    }
    // circles with s < t - disc_radius miss the disc entirely and those with
    // s > t + disc_radius as well, so the radial integral has compact support
    let lo = (t - disc_radius).max(0.0);
    let hi = ball_radius.min(t + disc_radius);
    let kinks = [(t - disc_radius).abs(), t + disc_radius];
    let lens = quad::integrate_with_breakpoints(
        |s| 2.0 * PI * s * circle_cap_fraction(s, t, disc_radius),
        lo,
        hi,
        &kinks,
        1e-8,
    );
    let lens = lens.clamp(0.0, disc_area.min(PI * ball_radius * ball_radius));
    (lens, disc_area - lens)
}
