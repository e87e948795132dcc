//! From transitivity of the fattened map to a dense true orbit.
//!
//! The fattened cat map at radius delta is checked for strong connectivity,
//! a trajectory through every image cell is built, its cell centers form a
//! pseudo-orbit, and the exact shadow of that pseudo-orbit is checked to
//! come within epsilon of every point of a finite net. A passing report is
//! evidence at the tested scales, not a proof for every epsilon.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::exact::{shadow_to, Verification};
use super::orbit::PseudoOrbit;
use super::{torus_distance, ShadowError, ToralAuto};
use crate::cellset::CellSet;
use crate::cellspace::CellSpace;
use crate::spectral::is_transitive;
use crate::svmap::{fatten, BaseMap, TransitionGraph};

/// An admissible trajectory through every cell of the image, starting from
/// the smallest image cell.
pub fn dense_delta_orbit(graph: &TransitionGraph) -> Result<Vec<usize>, ShadowError> {
    let image = graph.full_image();
    let start = image.first().ok_or(ShadowError::NotTransitive)?;
    dense_delta_orbit_from(graph, start)
}

/// As [`dense_delta_orbit`], starting from `start`. Each extension is a
/// shortest path to the nearest unvisited image cell.
pub fn dense_delta_orbit_from(
    graph: &TransitionGraph,
    start: usize,
) -> Result<Vec<usize>, ShadowError> {
    let image = graph.full_image();
    if !is_transitive(graph, &image) {
        return Err(ShadowError::NotTransitive);
    }
    let n = graph.len();
    let mut visited = CellSet::empty(graph.space());
    let mut remaining = image.len();
    let mark = |c: usize, visited: &mut CellSet, remaining: &mut usize| {
        if image.contains(c) && !visited.contains(c) {
            visited.insert(c);
            *remaining -= 1;
        }
    };
    let mut seq = vec![start];
    mark(start, &mut visited, &mut remaining);
    let mut stamp = vec![0u32; n];
    let mut parent = vec![0u32; n];
    let mut round = 0u32;
    let mut queue = std::collections::VecDeque::new();
    while remaining > 0 {
        round += 1;
        let from = *seq.last().expect("nonempty");
        queue.clear();
        queue.push_back(from);
        stamp[from] = round;
        let mut found = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &v in graph.row(u) {
                let v = v as usize;
                if stamp[v] == round {
                    continue;
                }
                stamp[v] = round;
                parent[v] = u as u32;
                if image.contains(v) && !visited.contains(v) {
                    found = Some(v);
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
        let target = found.ok_or(ShadowError::NotTransitive)?;
        // Walk back from the target to the first step after `from`.
        let mut path = vec![target];
        let mut cur = target;
        while parent[cur] as usize != from {
            cur = parent[cur] as usize;
            path.push(cur);
        }
        for &c in path.iter().rev() {
            seq.push(c);
            mark(c, &mut visited, &mut remaining);
        }
    }
    Ok(seq)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub matrix: [[i64; 2]; 2],
    pub grid: usize,
    pub delta: f64,
    pub eps: f64,
    pub seed: u64,
    pub start_cell: usize,
    pub transitive: bool,
    /// Number of cells in the trajectory.
    pub orbit_len: usize,
    /// The trajectory is admissible and visits every image cell.
    pub visits_all: bool,
    /// Defect bound of the center pseudo-orbit: delta plus the cell
    /// diameter and the Lipschitz spread of a cell.
    pub delta_eff: f64,
    pub max_shadow_dist: f64,
    /// Shadowing bound for `delta_eff`.
    pub bound: f64,
    /// Iterates of the shadow point examined for density.
    pub steps: usize,
    pub net_points: usize,
    pub density_ok: bool,
    pub uncovered: Vec<[f64; 2]>,
    pub verification: Verification,
    #[serde(skip)]
    pub shadow_orbit: Vec<[f64; 2]>,
}

/// Runs the pipeline for `auto` on a `grid x grid` torus.
///
/// `steps = 0` examines exactly the iterates that shadow the trajectory;
/// larger values follow the true orbit further. Preconditions: `delta` at
/// most `eps / C` with `C` the shadow constant, and grid cells narrower
/// than `delta`.
pub fn theorem_a_certificate(
    auto: &ToralAuto,
    grid: usize,
    delta: f64,
    eps: f64,
    steps: usize,
    seed: u64,
) -> Result<CertificateReport, ShadowError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(ShadowError::InvalidDelta(delta));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(ShadowError::InvalidDelta(eps));
    }
    let limit = eps / auto.shadow_constant;
    if delta > limit {
        return Err(ShadowError::ThresholdViolated { delta, limit });
    }
    let space = CellSpace::torus(grid, grid).map_err(crate::svmap::GraphError::from)?;
    let cell = space.cell_size();
    if cell >= delta {
        return Err(ShadowError::GridTooCoarse { cell, delta });
    }
    let base = BaseMap::toral(auto.matrix)?;
    let graph = fatten(&space, &base, delta)?;
    let image = graph.full_image();
    if !is_transitive(&graph, &image) {
        return Err(ShadowError::NotTransitive);
    }
    let cells = image.to_vec();
    let start_cell = cells[ChaCha8Rng::seed_from_u64(seed).gen_range(0..cells.len())];
    let trajectory = dense_delta_orbit_from(&graph, start_cell)?;
    let visits_all = trajectory
        .windows(2)
        .all(|w| graph.row(w[0]).contains(&(w[1] as u32)))
        && image.is_subset(&CellSet::from_sorted_ids(graph.space(), trajectory.iter().copied()));

    let radius = space.cell_radius(0);
    let delta_eff = delta + (base.lipschitz() + 1.0) * radius;
    let centers: Vec<[f64; 2]> = trajectory.iter().map(|&c| space.center(c)).collect();
    let po = PseudoOrbit::from_points(auto, &centers, delta_eff)?;
    let horizon = if steps == 0 { po.len() } else { steps };
    let shadow = shadow_to(auto, &po, horizon, false)?;
    let orbit: Vec<[f64; 2]> = shadow.orbit[..=horizon].to_vec();

    let side = (2.0 / eps).ceil() as usize;
    let spacing = eps / 2.0;
    let net: Vec<[f64; 2]> = (0..side)
        .flat_map(|i| (0..side).map(move |j| [i as f64 * spacing, j as f64 * spacing]))
        .collect();
    let uncovered: Vec<[f64; 2]> = net
        .par_iter()
        .filter(|&&p| !orbit.iter().any(|&y| torus_distance(p, y) < eps))
        .copied()
        .collect();

    let report = CertificateReport {
        matrix: auto.matrix,
        grid,
        delta,
        eps,
        seed,
        start_cell,
        transitive: true,
        orbit_len: trajectory.len(),
        visits_all,
        delta_eff,
        max_shadow_dist: shadow.max_distance,
        bound: auto.shadow_bound(delta_eff),
        steps: horizon,
        net_points: net.len(),
        density_ok: uncovered.is_empty(),
        uncovered,
        verification: shadow.verification,
        shadow_orbit: orbit,
    };
    if report.density_ok {
        Ok(report)
    } else {
        Err(ShadowError::DensityNotAchieved {
            report: Box::new(report),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::svmap::explicit_graph;

    fn graph(rows: Vec<Vec<usize>>) -> TransitionGraph {
        let s = CellSpace::interval(0.0, 1.0, rows.len()).unwrap();
        explicit_graph(&s, rows).unwrap()
    }

    #[test]
    fn small_graphs() {
        let full = graph(vec![vec![0, 1, 2]; 3]);
        assert_eq!(dense_delta_orbit(&full).unwrap(), vec![0, 1, 2]);
        let swap = graph(vec![vec![1], vec![0]]);
        assert_eq!(dense_delta_orbit(&swap).unwrap(), vec![0, 1]);
        let id = graph(vec![vec![0], vec![1]]);
        assert_eq!(dense_delta_orbit(&id), Err(ShadowError::NotTransitive));
        let cycle = graph(vec![vec![1], vec![2], vec![0]]);
        assert_eq!(dense_delta_orbit_from(&cycle, 2).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn cat_map_sweep_is_admissible() {
        let space = CellSpace::torus(16, 16).unwrap();
        let g = fatten(&space, &BaseMap::toral([[2, 1], [1, 1]]).unwrap(), 2.0 / 16.0).unwrap();
        let seq = dense_delta_orbit(&g).unwrap();
        assert!(seq.windows(2).all(|w| g.row(w[0]).contains(&(w[1] as u32))));
        let mut seen = seq.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 256);
    }

    #[test]
    fn preconditions() {
        let cat = ToralAuto::new([[2, 1], [1, 1]]).unwrap();
        assert!(matches!(
            theorem_a_certificate(&cat, 64, 0.1, 0.2, 0, 0),
            Err(ShadowError::ThresholdViolated { .. })
        ));
        assert!(matches!(
            theorem_a_certificate(&cat, 8, 0.05, 0.2, 0, 0),
            Err(ShadowError::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn coarse_certificate() {
        let cat = ToralAuto::new([[2, 1], [1, 1]]).unwrap();
        let r = theorem_a_certificate(&cat, 32, 0.1, 0.4, 0, 1).unwrap();
        assert!(r.transitive && r.visits_all && r.density_ok);
        assert!(r.max_shadow_dist <= r.bound);
    }
}
