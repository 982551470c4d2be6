//! The bootstrap percolation dynamics: run the infection to its fixpoint,
//! adversarial ball infection, and analysis of the uninfected remainder.

use crate::error::Result;
use crate::geometry::Space;
use crate::rgg::GeometricGraph;
use crate::sampler::{MarkedPointSet, ModelParams};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Absolute infection threshold `k = ceil(theta * a * log n)`: a vertex
/// becomes infected once it has at least `k` infected neighbours.
pub fn threshold_count(params: &ModelParams) -> usize {
    let x = params.theta * params.a * params.n.ln();
    // snap values that are integral up to float noise before taking the ceiling
    ((x - 1e-9).ceil().max(0.0)) as usize
}

/// Outcome of one percolation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PercolationResult {
    pub k: usize,
    /// `|A_t|` per synchronous round (recorded on request), starting from
    /// `|A_0|` and strictly increasing until the fixpoint.
    pub round_sizes: Option<Vec<usize>>,
    pub a_infinity: Vec<bool>,
    pub newly_infected_count: usize,
    pub uninfected_count: usize,
}

/// Least fixpoint of the rule "at least `k` infected neighbours infects",
/// computed by a work queue over per-vertex infected-neighbour counters.
/// Processing the queue in generations makes the recorded `round_sizes`
/// identical to the synchronous round-by-round definition.
pub fn run_bootstrap(
    graph: &GeometricGraph,
    k: usize,
    initial: &[bool],
    record_rounds: bool,
) -> PercolationResult {
    let n = graph.vertex_count();
    assert_eq!(initial.len(), n, "initial marking must cover every vertex");
    let mut infected = initial.to_vec();
    let mut rounds = record_rounds.then(Vec::new);

    let initial_count = infected.iter().filter(|&&b| b).count();
    if let Some(r) = rounds.as_mut() {
        r.push(initial_count);
    }

    let mut total = initial_count;
    if k == 0 {
        // every vertex is infectable immediately
        if total < n {
            infected.iter_mut().for_each(|b| *b = true);
            total = n;
            if let Some(r) = rounds.as_mut() {
                r.push(n);
            }
        }
        return PercolationResult {
            k,
            round_sizes: rounds,
            a_infinity: infected,
            newly_infected_count: total - initial_count,
            uninfected_count: n - total,
        };
    }

    let mut counts = vec![0u32; n];
    let mut queue: VecDeque<u32> = (0..n as u32).filter(|&v| infected[v as usize]).collect();
    let mut frontier: Vec<u32> = Vec::new();
    while !queue.is_empty() {
        // one generation = one synchronous round
        frontier.clear();
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u as usize) {
                let v = v as usize;
                if !infected[v] {
                    counts[v] += 1;
                    if counts[v] as usize >= k {
                        infected[v] = true;
                        frontier.push(v as u32);
                    }
                }
            }
        }
        if frontier.is_empty() {
            break;
        }
        total += frontier.len();
        if let Some(r) = rounds.as_mut() {
            r.push(total);
        }
        queue.extend(frontier.iter().copied());
    }

    PercolationResult {
        k,
        round_sizes: rounds,
        a_infinity: infected,
        newly_infected_count: total - initial_count,
        uninfected_count: n - total,
    }
}

/// Marks from `points` with every vertex strictly inside the ball flipped on.
pub fn infect_ball(points: &MarkedPointSet, center: &[f64], radius: f64) -> Result<Vec<bool>> {
    let space = points.space;
    // validate the centre once; point coordinates are trusted by construction
    space.torus_distance(center, center)?;
    let mut initial = points.marks.clone();
    if radius <= 0.0 {
        return Ok(initial);
    }
    for (i, m) in initial.iter_mut().enumerate() {
        if !*m && space.torus_distance_unchecked(points.point(i), center) < radius {
            *m = true;
        }
    }
    Ok(initial)
}

/// A connected component of never-infected vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub size: usize,
    /// Max pairwise torus distance; exact up to `DIAMETER_EXACT_LIMIT`
    /// vertices, a circular bounding-box estimate above.
    pub euclidean_diameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub components: Vec<Component>,
}

/// Components larger than this get the bounding-box diameter estimate
/// instead of the exact quadratic scan.
pub const DIAMETER_EXACT_LIMIT: usize = 5000;

fn component_diameter(points: &MarkedPointSet, members: &[u32]) -> f64 {
    let space = points.space;
    if members.len() <= 1 {
        return 0.0;
    }
    if members.len() <= DIAMETER_EXACT_LIMIT {
        let mut best = 0.0f64;
        for (idx, &u) in members.iter().enumerate() {
            let pu = points.point(u as usize);
            for &v in &members[idx + 1..] {
                let d = space.torus_distance_unchecked(pu, points.point(v as usize));
                best = best.max(d);
            }
        }
        best
    } else {
        // circular bounding box: per axis, the extent is the circumference
        // minus the largest gap between consecutive coordinates
        let dim = space.dim;
        let mut sq = 0.0;
        let mut coords: Vec<f64> = Vec::with_capacity(members.len());
        for axis in 0..dim {
            coords.clear();
            coords.extend(members.iter().map(|&v| points.point(v as usize)[axis]));
            coords.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut largest_gap = space.side - coords[coords.len() - 1] + coords[0];
            for w in coords.windows(2) {
                largest_gap = largest_gap.max(w[1] - w[0]);
            }
            let extent = (space.side - largest_gap).max(0.0);
            sq += extent * extent;
        }
        sq.sqrt()
    }
}

/// Connected components of the subgraph induced on never-infected vertices.
pub fn uninfected_components(graph: &GeometricGraph, result: &PercolationResult) -> ComponentReport {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    let mut members: Vec<u32> = Vec::new();
    for start in 0..n {
        if result.a_infinity[start] || seen[start] {
            continue;
        }
        members.clear();
        seen[start] = true;
        stack.push(start as u32);
        while let Some(u) = stack.pop() {
            members.push(u);
            for &v in graph.neighbors(u as usize) {
                let v = v as usize;
                if !result.a_infinity[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v as u32);
                }
            }
        }
        components.push(Component {
            size: members.len(),
            euclidean_diameter: component_diameter(&graph.points, &members),
        });
    }
    components.sort_by(|a, b| b.size.cmp(&a.size));
    ComponentReport { components }
}

/// Finite-size outcome label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutcomeLabel {
    #[serde(rename = "none")]
    None,
    #[serde(rename = "almost-none")]
    AlmostNone,
    #[serde(rename = "partial")]
    Partial,
    #[serde(rename = "almost-full")]
    AlmostFull,
    #[serde(rename = "full")]
    Full,
}

impl std::fmt::Display for OutcomeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OutcomeLabel::None => "none",
            OutcomeLabel::AlmostNone => "almost-none",
            OutcomeLabel::Partial => "partial",
            OutcomeLabel::AlmostFull => "almost-full",
            OutcomeLabel::Full => "full",
        };
        write!(f, "{s}")
    }
}

/// Classify a run: `none` when nothing new was infected, `full` when nothing
/// stayed uninfected, the `almost-` variants within `frac_tol` of those
/// extremes, `partial` otherwise. The empty graph is vacuously `full`.
pub fn classify_outcome(result: &PercolationResult, count: usize, frac_tol: f64) -> OutcomeLabel {
    debug_assert!(frac_tol > 0.0 && frac_tol < 0.5);
    if count == 0 {
        return OutcomeLabel::Full;
    }
    if result.newly_infected_count == 0 {
        return OutcomeLabel::None;
    }
    if result.uninfected_count == 0 {
        return OutcomeLabel::Full;
    }
    let newly = result.newly_infected_count as f64 / count as f64;
    let uninfected = result.uninfected_count as f64 / count as f64;
    if newly <= frac_tol {
        OutcomeLabel::AlmostNone
    } else if uninfected <= frac_tol {
        OutcomeLabel::AlmostFull
    } else {
        OutcomeLabel::Partial
    }
}

/// Per-run summary matching the documented JSON schema.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    pub n_points: usize,
    pub k: usize,
    pub newly_infected: usize,
    pub uninfected: usize,
    pub rounds: Option<usize>,
    pub label: OutcomeLabel,
    pub components: Vec<Component>,
}

pub fn summarize(
    graph: &GeometricGraph,
    result: &PercolationResult,
    frac_tol: f64,
    with_components: bool,
) -> RunSummary {
    let components = if with_components {
        uninfected_components(graph, result).components
    } else {
        Vec::new()
    };
    RunSummary {
        n_points: graph.vertex_count(),
        k: result.k,
        newly_infected: result.newly_infected_count,
        uninfected: result.uninfected_count,
        rounds: result.round_sizes.as_ref().map(|r| r.len().saturating_sub(1)),
        label: classify_outcome(result, graph.vertex_count(), frac_tol),
        components,
    }
}

/// Centre of the torus, the canonical adversarial ball placement.
pub fn domain_center(space: &Space) -> Vec<f64> {
    vec![space.side / 2.0; space.dim]
}
