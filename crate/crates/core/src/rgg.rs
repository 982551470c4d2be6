//! Gilbert graph construction over a marked point set, backed by a uniform
//! grid spatial index with periodic wrap-around.

use crate::error::{Error, Result};
use crate::sampler::MarkedPointSet;
use std::io::Write;

/// The Gilbert graph: vertices are the sampled points, edges join pairs at
/// torus distance strictly less than `r`. Adjacency is stored in CSR form.
#[derive(Debug, Clone)]
pub struct GeometricGraph {
    pub points: MarkedPointSet,
    pub r: f64,
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
}

impl GeometricGraph {
    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Edge list as `u,v` rows with `u < v`, one per undirected edge.
    pub fn write_edge_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "u,v")?;
        for u in 0..self.vertex_count() {
            for &v in self.neighbors(u) {
                if (v as usize) > u {
                    writeln!(w, "{u},{v}")?;
                }
            }
        }
        Ok(())
    }
}

struct CellGrid {
    cells_per_side: usize,
    /// CSR of vertex indices per cell.
    starts: Vec<usize>,
    items: Vec<u32>,
}

impl CellGrid {
    fn build(points: &MarkedPointSet, r: f64) -> Self {
        let dim = points.space.dim;
        let side = points.space.side;
        let cells_per_side = (side / r).floor() as usize;
        let cell_side = side / cells_per_side as f64;
        let n_cells = cells_per_side.pow(dim as u32);
        let cell_of = |p: &[f64]| -> usize {
            let mut idx = 0usize;
            for &x in p {
                let c = ((x / cell_side) as usize).min(cells_per_side - 1);
                idx = idx * cells_per_side + c;
            }
            idx
        };
        let mut counts = vec![0usize; n_cells + 1];
        for i in 0..points.len() {
            counts[cell_of(points.point(i)) + 1] += 1;
        }
        for c in 1..=n_cells {
            counts[c] += counts[c - 1];
        }
        let starts = counts.clone();
        let mut cursor = counts;
        let mut items = vec![0u32; points.len()];
        for i in 0..points.len() {
            let c = cell_of(points.point(i));
            items[cursor[c]] = i as u32;
            cursor[c] += 1;
        }
        CellGrid { cells_per_side, starts, items }
    }

    fn cell_items(&self, cell: usize) -> &[u32] {
        &self.items[self.starts[cell]..self.starts[cell + 1]]
    }
}

/// Build the Gilbert graph with the strict rule `distance < r`. The grid cell
/// side is `side / floor(side / r) >= r`, and candidate neighbours come from
/// the 3^dim surrounding cells; the precondition `r < side/4` keeps the
/// wrapped neighbourhoods disjoint.
pub fn build_rgg(points: MarkedPointSet, r: f64) -> Result<GeometricGraph> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {r}")));
    }
    let side = points.space.side;
    if r >= side / 4.0 {
        return Err(Error::Geometry(format!(
            "connection radius {r} must be below a quarter of the torus side {side}"
        )));
    }
    let n = points.len();
    if n == 0 {
        return Ok(GeometricGraph { points, r, offsets: vec![0], neighbors: Vec::new() });
    }
    let dim = points.space.dim;
    let grid = CellGrid::build(&points, r);
    let k = grid.cells_per_side;
    let space = points.space;

    let neighbor_cells_1d = |c: usize| -> [usize; 3] {
        [(c + k - 1) % k, c, (c + 1) % k]
    };

    let mut per_vertex: Vec<Vec<u32>> = vec![Vec::new(); n];
    match dim {
        1 => {
            for cx in 0..k {
                for &u in grid.cell_items(cx) {
                    let pu = points.point(u as usize);
                    for nx in neighbor_cells_1d(cx) {
                        for &v in grid.cell_items(nx) {
                            if v != u
                                && space.torus_distance_unchecked(pu, points.point(v as usize)) < r
                            {
                                per_vertex[u as usize].push(v);
                            }
                        }
                    }
                }
            }
        }
        2 => {
            for cx in 0..k {
                let xs = neighbor_cells_1d(cx);
                for cy in 0..k {
                    let ys = neighbor_cells_1d(cy);
                    let cell = cx * k + cy;
                    for &u in grid.cell_items(cell) {
                        let pu = points.point(u as usize);
                        let lst = &mut per_vertex[u as usize];
                        for &nx in &xs {
                            for &ny in &ys {
                                for &v in grid.cell_items(nx * k + ny) {
                                    if v != u
                                        && space.torus_distance_unchecked(pu, points.point(v as usize)) < r
                                    {
                                        lst.push(v);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        d => return Err(Error::UnsupportedDimension(d)),
    }

    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0usize);
    for lst in per_vertex.iter_mut() {
        lst.sort_unstable();
        offsets.push(offsets.last().unwrap() + lst.len());
    }
    let mut neighbors = Vec::with_capacity(*offsets.last().unwrap());
    for lst in per_vertex {
        neighbors.extend_from_slice(&lst);
    }
    Ok(GeometricGraph { points, r, offsets, neighbors })
}

/// Degree summary of a built graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    /// `None` on the empty graph.
    pub mean: Option<f64>,
    pub min: usize,
    pub max: usize,
    /// `histogram[d]` = number of vertices of degree `d`.
    pub histogram: Vec<usize>,
}

pub fn degree_stats(graph: &GeometricGraph) -> DegreeStats {
    let n = graph.vertex_count();
    if n == 0 {
        return DegreeStats { mean: None, min: 0, max: 0, histogram: Vec::new() };
    }
    let mut min = usize::MAX;
    let mut max = 0usize;
    let mut total = 0usize;
    for v in 0..n {
        let d = graph.degree(v);
        min = min.min(d);
        max = max.max(d);
        total += d;
    }
    let mut histogram = vec![0usize; max + 1];
    for v in 0..n {
        histogram[graph.degree(v)] += 1;
    }
    DegreeStats { mean: Some(total as f64 / n as f64), min, max, histogram }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Space;
    use crate::sampler::{sample_marked_ppp, ModelParams};

    fn point_set(dim: usize, side: f64, coords: &[f64]) -> MarkedPointSet {
        let space = Space::new(dim, side).unwrap();
        let count = coords.len() / dim;
        MarkedPointSet { space, positions: coords.to_vec(), marks: vec![false; count] }
    }

    fn brute_force_adjacency(points: &MarkedPointSet, r: f64) -> Vec<Vec<u32>> {
        let n = points.len();
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in 0..n {
                if u != v
                    && points
                        .space
                        .torus_distance_unchecked(points.point(u), points.point(v))
                        < r
                {
                    adj[u].push(v as u32);
                }
            }
        }
        adj
    }

    #[test]
    fn empty_graph() {
        let g = build_rgg(point_set(1, 10.0, &[]), 1.0).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(degree_stats(&g).mean, None);
    }

    #[test]
    fn circle_hand_instance() {
        let g = build_rgg(point_set(1, 10.0, &[0.0, 1.0, 5.0]), 1.5).unwrap();
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
        assert_eq!(g.neighbors(2), &[] as &[u32]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn radius_too_large_rejected() {
        let err = build_rgg(point_set(2, 10.0, &[1.0, 1.0]), 2.5).unwrap_err();
        assert!(matches!(err, Error::Geometry(_)));
    }

    #[test]
    fn grid_matches_brute_force_2d() {
        for seed in 0..5 {
            let params = ModelParams { a: 2.0, p: 0.5, theta: 0.5, n: 400.0, dim: 2, seed };
            let points = sample_marked_ppp(&params).unwrap();
            let r = 1.7;
            let brute = brute_force_adjacency(&points, r);
            let g = build_rgg(points, r).unwrap();
            for u in 0..g.vertex_count() {
                let mut expect = brute[u].clone();
                expect.sort_unstable();
                assert_eq!(g.neighbors(u), expect.as_slice(), "vertex {u} seed {seed}");
            }
        }
    }

    #[test]
    fn grid_matches_brute_force_1d() {
        for seed in 10..14 {
            let params = ModelParams { a: 2.0, p: 0.5, theta: 0.5, n: 300.0, dim: 1, seed };
            let points = sample_marked_ppp(&params).unwrap();
            let r = 11.0; // side = 300, wrap-heavy radius
            let brute = brute_force_adjacency(&points, r);
            let g = build_rgg(points, r).unwrap();
            for u in 0..g.vertex_count() {
                let mut expect = brute[u].clone();
                expect.sort_unstable();
                assert_eq!(g.neighbors(u), expect.as_slice());
            }
        }
    }

    #[test]
    fn adjacency_symmetric_and_edges_short() {
        let params = ModelParams { a: 2.0, p: 0.5, theta: 0.5, n: 800.0, dim: 2, seed: 5 };
        let points = sample_marked_ppp(&params).unwrap();
        let g = build_rgg(points, 2.0).unwrap();
        for u in 0..g.vertex_count() {
            for &v in g.neighbors(u) {
                assert!(g.neighbors(v as usize).contains(&(u as u32)));
                let d = g
                    .points
                    .space
                    .torus_distance_unchecked(g.points.point(u), g.points.point(v as usize));
                assert!(d < g.r);
            }
        }
    }

    #[test]
    fn degree_stats_small_cases() {
        let g = build_rgg(point_set(2, 10.0, &[5.0, 5.0]), 1.0).unwrap();
        assert_eq!(degree_stats(&g).mean, Some(0.0));
        let g = build_rgg(point_set(2, 10.0, &[5.0, 5.0, 5.5, 5.0]), 1.0).unwrap();
        let stats = degree_stats(&g);
        assert_eq!(stats.mean, Some(1.0));
        assert_eq!(stats.min, 1);
        assert_eq!(stats.max, 1);
        assert_eq!(stats.histogram, vec![0, 2]);
    }

    #[test]
    fn edge_csv_lists_each_edge_once() {
        let g = build_rgg(point_set(1, 10.0, &[0.0, 1.0, 1.5]), 1.2).unwrap();
        let mut buf = Vec::new();
        g.write_edge_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "u,v");
        assert_eq!(lines.len() - 1, g.edge_count());
        assert!(lines.contains(&"0,1"));
        assert!(lines.contains(&"1,2"));
    }
}
