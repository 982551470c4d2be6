//! Rough and fine square tilings of the torus with the white/red/blue and
//! black/red/blue colourings used as empirical diagnostics of infection
//! spread.

use crate::engine::PercolationResult;
use crate::error::{Error, Result};
use crate::geometry::Space;
use crate::sampler::MarkedPointSet;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// Parameters of the two nested tilings. The rough tiling has `K c r`-side
/// tiles, each split into `K^4` fine tiles of side `c r / K`; `c >= 1` fixes
/// divisibility so the grid covers the torus exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TilingConfig {
    pub k: usize,
    pub c: f64,
    pub r: f64,
    pub rough_side: f64,
    pub fine_side: f64,
    /// Rough tiles per axis.
    pub rough_dims: usize,
    /// Fine tiles per axis (`rough_dims * K^2`).
    pub fine_dims: usize,
    pub side: f64,
}

impl TilingConfig {
    pub fn rough_count(&self) -> usize {
        self.rough_dims * self.rough_dims
    }

    pub fn fine_count(&self) -> usize {
        self.fine_dims * self.fine_dims
    }

    pub fn fine_tile_area(&self) -> f64 {
        self.fine_side * self.fine_side
    }

    #[inline]
    fn fine_index_of(&self, p: &[f64]) -> usize {
        let ix = ((p[0] / self.fine_side) as usize).min(self.fine_dims - 1);
        let iy = ((p[1] / self.fine_side) as usize).min(self.fine_dims - 1);
        ix * self.fine_dims + iy
    }

    /// Rough tile containing a given fine tile.
    #[inline]
    pub fn rough_of_fine(&self, fine: usize) -> usize {
        let k2 = self.k * self.k;
        let ix = fine / self.fine_dims;
        let iy = fine % self.fine_dims;
        (ix / k2) * self.rough_dims + iy / k2
    }
}

/// Build the tilings for a 2-D torus: `rough_dims = floor(side / (K r))` and
/// `c = side / (K r rough_dims)`.
pub fn build_tiling(space: &Space, r: f64, k: usize) -> Result<TilingConfig> {
    if space.dim != 2 {
        return Err(Error::UnsupportedDimension(space.dim));
    }
    if k == 0 {
        return Err(Error::Config("K must be positive".into()));
    }
    if !(r > 0.0) || k as f64 * r >= space.side {
        return Err(Error::Config(format!(
            "need 0 < K*r < side, got K*r = {} and side = {}",
            k as f64 * r,
            space.side
        )));
    }
    let rough_dims = (space.side / (k as f64 * r)).floor() as usize;
    let c = space.side / (k as f64 * r * rough_dims as f64);
    let rough_side = k as f64 * c * r;
    let fine_side = c * r / k as f64;
    Ok(TilingConfig {
        k,
        c,
        r,
        rough_side,
        fine_side,
        rough_dims,
        fine_dims: rough_dims * k * k,
        side: space.side,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Colour {
    White,
    Red,
    Blue,
    Black,
}

impl Colour {
    pub fn as_char(self) -> char {
        match self {
            Colour::White => 'W',
            Colour::Red => 'R',
            Colour::Blue => 'B',
            Colour::Black => 'K',
        }
    }
}

/// Fine and rough tile colours (row-major grids).
#[derive(Debug, Clone, PartialEq)]
pub struct TileColouring {
    pub config: TilingConfig,
    pub fine_colours: Vec<Colour>,
    pub rough_colours: Vec<Colour>,
}

impl TileColouring {
    /// One character per tile, one row per line.
    pub fn write_grid_csv<W: Write>(&self, mut w: W, rough: bool) -> Result<()> {
        let (dims, colours) = if rough {
            (self.config.rough_dims, &self.rough_colours)
        } else {
            (self.config.fine_dims, &self.fine_colours)
        };
        for row in 0..dims {
            let line: String = (0..dims)
                .map(|col| colours[row * dims + col].as_char())
                .collect();
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

struct TileCounts {
    points: Vec<usize>,
    marked: Vec<usize>,
    fully_infected: Vec<bool>,
    newly_infected: Vec<bool>,
}

fn count_tiles(config: &TilingConfig, points: &MarkedPointSet, result: &PercolationResult) -> TileCounts {
    let nf = config.fine_count();
    let mut counts = TileCounts {
        points: vec![0; nf],
        marked: vec![0; nf],
        fully_infected: vec![true; nf],
        newly_infected: vec![false; nf],
    };
    for i in 0..points.len() {
        let t = config.fine_index_of(points.point(i));
        counts.points[t] += 1;
        if points.marks[i] {
            counts.marked[t] += 1;
        }
        if !result.a_infinity[i] {
            counts.fully_infected[t] = false;
        }
        if result.a_infinity[i] && !points.marks[i] {
            counts.newly_infected[t] = true;
        }
    }
    counts
}

/// Growth colouring: a fine tile is white when it is under-dense in initially
/// infected points or in points overall, red when all its points end up
/// infected, blue otherwise. A rough tile is white if any fine subtile is
/// white, red if all are red, blue otherwise.
pub fn colour_growth(
    config: &TilingConfig,
    points: &MarkedPointSet,
    result: &PercolationResult,
    eta: f64,
    p: f64,
) -> TileColouring {
    let counts = count_tiles(config, points, result);
    let area = config.fine_tile_area();
    let fine_colours: Vec<Colour> = (0..config.fine_count())
        .map(|t| {
            if (counts.marked[t] as f64) < (1.0 - eta) * p * area
                || (counts.points[t] as f64) < (1.0 - eta) * area
            {
                Colour::White
            } else if counts.fully_infected[t] {
                Colour::Red
            } else {
                Colour::Blue
            }
        })
        .collect();
    let rough_colours = derive_rough_growth(config, &fine_colours);
    TileColouring { config: *config, fine_colours, rough_colours }
}

fn derive_rough_growth(config: &TilingConfig, fine: &[Colour]) -> Vec<Colour> {
    let mut any_white = vec![false; config.rough_count()];
    let mut all_red = vec![true; config.rough_count()];
    for (t, &c) in fine.iter().enumerate() {
        let rt = config.rough_of_fine(t);
        if c == Colour::White {
            any_white[rt] = true;
        }
        if c != Colour::Red {
            all_red[rt] = false;
        }
    }
    (0..config.rough_count())
        .map(|rt| {
            if any_white[rt] {
                Colour::White
            } else if all_red[rt] {
                Colour::Red
            } else {
                Colour::Blue
            }
        })
        .collect()
}

/// Non-growth colouring: a fine tile is black when over-dense (in `A_0`
/// points or points overall), red when one of its initially uninfected points
/// becomes infected, blue otherwise. A rough tile is black if any subtile is
/// black, red if any is red, blue otherwise.
pub fn colour_nongrowth(
    config: &TilingConfig,
    points: &MarkedPointSet,
    result: &PercolationResult,
    eta: f64,
    p: f64,
) -> TileColouring {
    let counts = count_tiles(config, points, result);
    let area = config.fine_tile_area();
    let fine_colours: Vec<Colour> = (0..config.fine_count())
        .map(|t| {
            if (counts.marked[t] as f64) > (1.0 + eta) * p * area
                || (counts.points[t] as f64) > (1.0 + eta) * area
            {
                Colour::Black
            } else if counts.newly_infected[t] {
                Colour::Red
            } else {
                Colour::Blue
            }
        })
        .collect();
    let rough_colours = derive_rough_nongrowth(config, &fine_colours);
    TileColouring { config: *config, fine_colours, rough_colours }
}

fn derive_rough_nongrowth(config: &TilingConfig, fine: &[Colour]) -> Vec<Colour> {
    let mut any_black = vec![false; config.rough_count()];
    let mut any_red = vec![false; config.rough_count()];
    for (t, &c) in fine.iter().enumerate() {
        let rt = config.rough_of_fine(t);
        match c {
            Colour::Black => any_black[rt] = true,
            Colour::Red => any_red[rt] = true,
            _ => {}
        }
    }
    (0..config.rough_count())
        .map(|rt| {
            if any_black[rt] {
                Colour::Black
            } else if any_red[rt] {
                Colour::Red
            } else {
                Colour::Blue
            }
        })
        .collect()
}

/// Sizes of the connected components of `colour` tiles in the `power`-th
/// power of the toroidal rough-grid graph (adjacency = toroidal Manhattan
/// distance at most `power`), largest first.
pub fn tile_components(colouring: &TileColouring, colour: Colour, power: usize) -> Vec<usize> {
    let dims = colouring.config.rough_dims;
    let grid = &colouring.rough_colours;
    let idx = |x: usize, y: usize| x * dims + y;
    let mut seen = vec![false; grid.len()];
    let mut sizes = Vec::new();
    let p = power as isize;
    let d = dims as isize;
    for start in 0..grid.len() {
        if grid[start] != colour || seen[start] {
            continue;
        }
        let mut size = 0usize;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(t) = stack.pop() {
            size += 1;
            let (x, y) = ((t / dims) as isize, (t % dims) as isize);
            for dx in -p..=p {
                let reach = p - dx.abs();
                for dy in -reach..=reach {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let nx = (x + dx).rem_euclid(d) as usize;
                    let ny = (y + dy).rem_euclid(d) as usize;
                    let nt = idx(nx, ny);
                    if grid[nt] == colour && !seen[nt] {
                        seen[nt] = true;
                        stack.push(nt);
                    }
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(side: f64) -> Space {
        Space::new(2, side).unwrap()
    }

    #[test]
    fn c_formula_cases() {
        // side exactly K*r: one rough tile, c = 1
        let t = build_tiling(&space(8.0), 2.0, 4).unwrap();
        assert_eq!(t.rough_dims, 1);
        assert!((t.c - 1.0).abs() < 1e-12);
        // side = 2.5 K r: 2x2 rough grid, c = 1.25
        let t = build_tiling(&space(20.0), 2.0, 4).unwrap();
        assert_eq!(t.rough_dims, 2);
        assert!((t.c - 1.25).abs() < 1e-12);
    }

    #[test]
    fn exact_cover() {
        for &(side, r, k) in &[(20.0, 2.0, 4usize), (33.1, 1.3, 3), (100.0, 2.7, 5)] {
            let t = build_tiling(&space(side), r, k).unwrap();
            let total_rough = t.rough_side * t.rough_side * t.rough_count() as f64;
            assert!((total_rough - side * side).abs() < 1e-6 * side * side);
            assert_eq!(t.fine_count(), t.rough_count() * k.pow(4));
            let total_fine = t.fine_tile_area() * t.fine_count() as f64;
            assert!((total_fine - side * side).abs() < 1e-6 * side * side);
        }
    }

    #[test]
    fn config_errors() {
        assert!(build_tiling(&space(5.0), 2.0, 4).is_err());
        assert!(build_tiling(&Space::new(1, 10.0).unwrap(), 1.0, 2).is_err());
    }

    fn tiny_instance(marks: Vec<bool>, infected: Vec<bool>, positions: Vec<f64>) -> (TilingConfig, MarkedPointSet, PercolationResult) {
        let sp = space(8.0);
        let config = build_tiling(&sp, 2.0, 2).unwrap();
        let uninfected = infected.iter().filter(|&&b| !b).count();
        let newly = infected
            .iter()
            .zip(&marks)
            .filter(|&(&i, &m)| i && !m)
            .count();
        let points = MarkedPointSet { space: sp, positions, marks };
        let result = PercolationResult {
            k: 1,
            round_sizes: None,
            a_infinity: infected,
            newly_infected_count: newly,
            uninfected_count: uninfected,
        };
        (config, points, result)
    }

    #[test]
    fn empty_tile_is_white() {
        let (config, points, result) = tiny_instance(vec![], vec![], vec![]);
        let colouring = colour_growth(&config, &points, &result, 0.1, 0.5);
        assert!(colouring.fine_colours.iter().all(|&c| c == Colour::White));
        assert!(colouring.rough_colours.iter().all(|&c| c == Colour::White));
    }

    #[test]
    fn dense_fully_infected_tile_is_red() {
        // pack one fine tile (side 1, area 1) with 3 marked+infected points
        let (config, points, result) = tiny_instance(
            vec![true, true, true],
            vec![true, true, true],
            vec![0.2, 0.2, 0.5, 0.5, 0.8, 0.8],
        );
        let colouring = colour_growth(&config, &points, &result, 0.1, 0.5);
        assert_eq!(colouring.fine_colours[0], Colour::Red);
        // the under-dense rest of the rough tile makes it white
        assert_eq!(colouring.rough_colours[0], Colour::White);
    }

    #[test]
    fn nongrowth_rules() {
        // no new infections anywhere: no red tiles
        let (config, points, result) = tiny_instance(
            vec![true, false],
            vec![true, false],
            vec![0.2, 0.2, 0.6, 0.6],
        );
        let colouring = colour_nongrowth(&config, &points, &result, 0.5, 0.5);
        assert!(colouring.fine_colours.iter().all(|&c| c != Colour::Red));

        // over-dense tile goes black: 9 points in a unit fine tile
        let mut pos = Vec::new();
        for i in 0..9 {
            pos.push(0.1 + 0.08 * i as f64);
            pos.push(0.1 + 0.08 * i as f64);
        }
        let (config, points, result) = tiny_instance(vec![false; 9], vec![false; 9], pos);
        let colouring = colour_nongrowth(&config, &points, &result, 0.5, 0.5);
        assert_eq!(colouring.fine_colours[0], Colour::Black);
        assert_eq!(colouring.rough_colours[0], Colour::Black);

        // a single newly infected vertex reddens exactly its tile
        let (config, points, result) = tiny_instance(
            vec![false],
            vec![true],
            vec![4.5, 4.5],
        );
        let colouring = colour_nongrowth(&config, &points, &result, 0.9, 0.5);
        let t = config.fine_index_of(&[4.5, 4.5]);
        for (i, &c) in colouring.fine_colours.iter().enumerate() {
            if i == t {
                assert_eq!(c, Colour::Red);
            } else {
                assert_ne!(c, Colour::Red);
            }
        }
    }

    #[test]
    fn hand_computed_components() {
        // 3x3 rough grid; paint an L-shape and an isolated corner red
        let sp = space(12.0);
        let config = build_tiling(&sp, 2.0, 2).unwrap();
        assert_eq!(config.rough_dims, 3);
        let mut rough = vec![Colour::Blue; 9];
        // tiles (0,0), (0,1), (1,0) red, plus (2,2) red
        rough[0] = Colour::Red;
        rough[1] = Colour::Red;
        rough[3] = Colour::Red;
        rough[8] = Colour::Red;
        let colouring = TileColouring {
            config,
            fine_colours: vec![Colour::Blue; config.fine_count()],
            rough_colours: rough,
        };
        // in H: the L-shape is one component of 3; (2,2) is adjacent to (0,2)?
        // no: (2,2) has neighbours (1,2),(0,2) via wrap? (2,2)->(0,2) wraps in x,
        // (2,2)->(2,0) wraps in y; none of those are red, so it is isolated.
        assert_eq!(tile_components(&colouring, Colour::Red, 1), vec![3, 1]);
        // in H^2 the corner (2,2) is within distance 2 of (0,0) (wrap both axes)
        assert_eq!(tile_components(&colouring, Colour::Red, 2), vec![4]);
        // no white tiles at all
        assert!(tile_components(&colouring, Colour::White, 1).is_empty());
        // single tile
        let mut rough = vec![Colour::Blue; 9];
        rough[4] = Colour::White;
        let colouring = TileColouring { rough_colours: rough, ..colouring };
        assert_eq!(tile_components(&colouring, Colour::White, 7), vec![1]);
    }

    proptest! {
        /// Rough-from-fine derivation rules hold exactly for random colourings.
        #[test]
        fn rough_derivation_rules(fines in proptest::collection::vec(0..3usize, 64)) {
            let sp = space(8.0);
            let config = build_tiling(&sp, 2.0, 2).unwrap();
            prop_assert_eq!(config.fine_count(), 64);
            let fine: Vec<Colour> = fines.iter().map(|&i| [Colour::White, Colour::Red, Colour::Blue][i]).collect();
            let rough = derive_rough_growth(&config, &fine);
            for (rt, &rc) in rough.iter().enumerate() {
                let subtiles: Vec<Colour> = (0..config.fine_count())
                    .filter(|&t| config.rough_of_fine(t) == rt)
                    .map(|t| fine[t])
                    .collect();
                prop_assert_eq!(subtiles.len(), 16);
                let any_white = subtiles.iter().any(|&c| c == Colour::White);
                let all_red = subtiles.iter().all(|&c| c == Colour::Red);
                let expect = if any_white { Colour::White } else if all_red { Colour::Red } else { Colour::Blue };
                prop_assert_eq!(rc, expect);
            }
            let fine_ng: Vec<Colour> = fines.iter().map(|&i| [Colour::Black, Colour::Red, Colour::Blue][i]).collect();
            let rough_ng = derive_rough_nongrowth(&config, &fine_ng);
            for (rt, &rc) in rough_ng.iter().enumerate() {
                let subtiles: Vec<Colour> = (0..config.fine_count())
                    .filter(|&t| config.rough_of_fine(t) == rt)
                    .map(|t| fine_ng[t])
                    .collect();
                let any_black = subtiles.iter().any(|&c| c == Colour::Black);
                let any_red = subtiles.iter().any(|&c| c == Colour::Red);
                let expect = if any_black { Colour::Black } else if any_red { Colour::Red } else { Colour::Blue };
                prop_assert_eq!(rc, expect);
            }
        }
    }
}
