//! Orbit growth of the combinatorial system: exact path counts, the
//! spectral-radius growth rate, greedy separated and spanning bounds, and
//! the refinement study in which the growth rate of fattened maps grows
//! without bound as the grid is refined.
//!
//! Distances between cell sequences are the maximum over steps of the
//! distance between cell centers.
//!
//! Every operation that counts orbits accepts an optional domain: when
//! given, only sequences staying inside the domain are counted. Orbits of
//! the whole space are the default.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;
use thiserror::Error;

use crate::cellset::CellSet;
use crate::cellspace::{CellSpace, SpaceKind};
use crate::recurrence::scc_labels;
use crate::svmap::{fatten, BaseMap, GraphError, MapKind, TransitionGraph};

const POWER_TOL: f64 = 1e-10;
const POWER_CAP: usize = 10_000;
const FALLBACK_N: usize = 64;
const PARALLEL_ROWS: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntropyError {
    #[error("enumeration budget exhausted after accepting {partial} sequences")]
    BudgetExceeded { partial: usize },
    #[error("region has {have} cells, {need} requested")]
    RegionTooSmall { have: usize, need: usize },
    #[error("orbit length must be at least 1")]
    ZeroLength,
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("domain is empty")]
    EmptyDomain,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl EntropyError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::BudgetExceeded { .. } => "BudgetExceeded",
            Self::RegionTooSmall { .. } => "RegionTooSmall",
            Self::ZeroLength => "ZeroLength",
            Self::InvalidEpsilon(_) => "InvalidEpsilon",
            Self::EmptyDomain => "EmptyDomain",
            Self::Graph(e) => e.code(),
        }
    }
}

fn check_domain(graph: &TransitionGraph, domain: Option<&CellSet>) {
    if let Some(d) = domain {
        assert_eq!(d.space_id(), graph.space().id(), "domain belongs to another space");
    }
}

fn mask_of<'a>(graph: &TransitionGraph, domain: Option<&'a CellSet>) -> impl Fn(usize) -> bool + Sync + 'a {
    check_domain(graph, domain);
    move |c| domain.is_none_or(|d| d.contains(c))
}

/// Number of admissible sequences `(x_1, ..., x_n)`.
pub fn count_orbits(graph: &TransitionGraph, n: usize) -> BigUint {
    count_orbits_series(graph, n, None)
        .pop()
        .unwrap_or_else(BigUint::zero)
}

/// Counts for `n = 1, ..., n_max`, optionally restricted to sequences
/// inside `domain`.
pub fn count_orbits_series(
    graph: &TransitionGraph,
    n_max: usize,
    domain: Option<&CellSet>,
) -> Vec<BigUint> {
    let inside = mask_of(graph, domain);
    let cells = graph.len();
    // paths[c] = number of admissible sequences of the current length
    // starting at c.
    let mut paths: Vec<BigUint> = (0..cells)
        .map(|c| if inside(c) { BigUint::one() } else { BigUint::zero() })
        .collect();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            let step = |c: usize| -> BigUint {
                if !inside(c) {
                    return BigUint::zero();
                }
                graph
                    .row(c)
                    .iter()
                    .filter(|&&t| inside(t as usize))
                    .map(|&t| &paths[t as usize])
                    .sum()
            };
            paths = if cells >= PARALLEL_ROWS {
                (0..cells).into_par_iter().map(step).collect()
            } else {
                (0..cells).map(step).collect()
            };
        }
        out.push(paths.iter().sum());
    }
    out
}

/// Natural logarithm of a big integer.
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("fits in f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthRate {
    /// Natural log of the spectral radius.
    pub rate: f64,
    pub spectral_radius: f64,
    pub iterations: usize,
    /// Power iteration hit its cap and the rate comes from path counts.
    pub reduced_precision: bool,
}

/// Log of the spectral radius of the 0/1 transition matrix.
pub fn growth_rate(graph: &TransitionGraph) -> GrowthRate {
    growth_rate_on(graph, None)
}

/// The spectral radius of a nonnegative matrix is the largest over its
/// irreducible blocks, so each nontrivial strongly connected component is
/// treated on its own. On a block, power iteration runs on `A + I`, which
/// is primitive there, so the iteration converges geometrically even for
/// periodic relations.
pub fn growth_rate_on(graph: &TransitionGraph, domain: Option<&CellSet>) -> GrowthRate {
    check_domain(graph, domain);
    let (label, count) = scc_labels(graph, domain.map(CellSet::bits));
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut local = vec![0usize; graph.len()];
    for (c, &l) in label.iter().enumerate() {
        if l != usize::MAX {
            local[c] = members[l].len();
            members[l].push(c);
        }
    }
    let mut best = GrowthRate {
        rate: f64::NEG_INFINITY,
        spectral_radius: 0.0,
        iterations: 0,
        reduced_precision: false,
    };
    for (id, cells) in members.iter().enumerate() {
        let block = block_rate(graph, cells, id, &label, &local);
        best.iterations = best.iterations.max(block.iterations);
        best.reduced_precision |= block.reduced_precision;
        if block.spectral_radius > best.spectral_radius {
            best.spectral_radius = block.spectral_radius;
            best.rate = block.rate;
        }
    }
    best
}

fn block_rate(graph: &TransitionGraph, cells: &[usize], id: usize, label: &[usize], local: &[usize]) -> GrowthRate {
    let rows: Vec<Vec<usize>> = cells
        .iter()
        .map(|&c| {
            graph
                .row(c)
                .iter()
                .map(|&t| t as usize)
                .filter(|&t| label[t] == id)
                .map(|t| local[t])
                .collect()
        })
        .collect();
    let edges: usize = rows.iter().map(Vec::len).sum();
    if edges == 0 {
        return GrowthRate {
            rate: f64::NEG_INFINITY,
            spectral_radius: 0.0,
            iterations: 0,
            reduced_precision: false,
        };
    }
    if cells.len() == 1 {
        return GrowthRate {
            rate: 0.0,
            spectral_radius: 1.0,
            iterations: 0,
            reduced_precision: false,
        };
    }
    let k = cells.len();
    let mut x = vec![1.0; k];
    normalize(&mut x);
    for it in 1..=POWER_CAP {
        let apply = |i: usize| -> f64 { x[i] + rows[i].iter().map(|&j| x[j]).sum::<f64>() };
        let mut y: Vec<f64> = if k >= PARALLEL_ROWS {
            (0..k).into_par_iter().map(apply).collect()
        } else {
            (0..k).map(apply).collect()
        };
        let estimate: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        // Stop on the eigen-residual: consecutive estimates can coincide
        // before the vector has converged.
        let residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - estimate * a).powi(2))
            .sum::<f64>()
            .sqrt();
        normalize(&mut y);
        x = y;
        if residual < POWER_TOL * estimate {
            let radius = (estimate - 1.0).max(0.0);
            return GrowthRate {
                rate: radius.ln(),
                spectral_radius: radius,
                iterations: it,
                reduced_precision: false,
            };
        }
    }
    let block = CellSet::from_sorted_ids(graph.space(), cells.iter().copied());
    let counts = count_orbits_series(graph, FALLBACK_N + 1, Some(&block));
    let rate = (big_ln(&counts[FALLBACK_N]) - big_ln(&counts[0])) / FALLBACK_N as f64;
    GrowthRate {
        rate,
        spectral_radius: rate.exp(),
        iterations: POWER_CAP,
        reduced_precision: true,
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

/// Lower bound on the maximal size of an `(n, epsilon)`-separated set.
///
/// Admissible sequences are enumerated depth-first in lexicographic order
/// and kept when they are at distance `>= epsilon` from every kept one.
/// `budget` caps the number of sequences enumerated.
pub fn separated_lower(
    graph: &TransitionGraph,
    n: usize,
    epsilon: f64,
    budget: Option<u64>,
    domain: Option<&CellSet>,
) -> Result<usize, EntropyError> {
    greedy_net(graph, n, epsilon, budget, domain)
}

/// Upper bound on the minimal size of an `(n, epsilon)`-spanning set.
///
/// The greedy net from [`separated_lower`] is maximal: every admissible
/// sequence lies within distance `< epsilon` of a kept one, so the net is
/// itself spanning. Consequently `separated_lower(n, 2 epsilon)` never
/// exceeds this bound.
pub fn spanning_upper(
    graph: &TransitionGraph,
    n: usize,
    epsilon: f64,
    budget: Option<u64>,
    domain: Option<&CellSet>,
) -> Result<usize, EntropyError> {
    greedy_net(graph, n, epsilon, budget, domain)
}

fn greedy_net(
    graph: &TransitionGraph,
    n: usize,
    epsilon: f64,
    budget: Option<u64>,
    domain: Option<&CellSet>,
) -> Result<usize, EntropyError> {
    if n == 0 {
        return Err(EntropyError::ZeroLength);
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(EntropyError::InvalidEpsilon(epsilon));
    }
    let space = graph.space();
    if epsilon <= min_center_gap(space) {
        // Distinct cells are epsilon apart, so every admissible sequence
        // is kept: the net is the set of all of them.
        let count = count_orbits_series(graph, n, domain).pop().expect("n >= 1");
        let count = count.to_u64().unwrap_or(u64::MAX);
        if let Some(b) = budget.filter(|&b| count > b) {
            return Err(EntropyError::BudgetExceeded { partial: b as usize });
        }
        return Ok(usize::try_from(count).unwrap_or(usize::MAX));
    }
    let inside = mask_of(graph, domain);
    let mut kept: Vec<Vec<u32>> = Vec::new();
    let mut seen: u64 = 0;
    let mut seq: Vec<u32> = Vec::with_capacity(n);
    // Stack of (row slice cursor) per depth.
    let mut cursors: Vec<(Vec<u32>, usize)> = Vec::with_capacity(n);
    let starts: Vec<u32> = (0..graph.len()).filter(|&c| inside(c)).map(|c| c as u32).collect();
    cursors.push((starts, 0));
    while let Some((choices, pos)) = cursors.last_mut() {
        if *pos >= choices.len() {
            cursors.pop();
            seq.pop();
            continue;
        }
        let cell = choices[*pos];
        *pos += 1;
        seq.push(cell);
        if seq.len() == n {
            seen += 1;
            if budget.is_some_and(|b| seen > b) {
                return Err(EntropyError::BudgetExceeded { partial: kept.len() });
            }
            let separated = kept.iter().all(|other| {
                seq.iter()
                    .zip(other)
                    .any(|(&a, &b)| space.center_distance(a as usize, b as usize) >= epsilon)
            });
            if separated {
                kept.push(seq.clone());
            }
            seq.pop();
        } else {
            let next: Vec<u32> = graph
                .row(cell as usize)
                .iter()
                .copied()
                .filter(|&t| inside(t as usize))
                .collect();
            cursors.push((next, 0));
        }
    }
    Ok(kept.len())
}

/// Smallest distance between the centers of two distinct cells.
fn min_center_gap(space: &CellSpace) -> f64 {
    match space.kind() {
        SpaceKind::Torus2 => {
            let [w, h] = space.grid();
            let along = |k: usize| if k > 1 { 1.0 / k as f64 } else { f64::INFINITY };
            along(w).min(along(h))
        }
        _ => (1..space.len())
            .map(|c| space.center_distance(c - 1, c))
            .fold(f64::INFINITY, f64::min),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationRadius {
    /// Smallest pairwise center distance among the chosen cells (half the
    /// region diameter when a single cell is requested).
    pub epsilon0: f64,
    /// Region diameter divided by `m + 1`.
    pub target: f64,
    pub points: Vec<usize>,
    pub meets_target: bool,
}

/// Picks `m` cells of `region` spread apart by farthest-point selection.
pub fn separation_radius(
    space: &CellSpace,
    region: &CellSet,
    m: usize,
) -> Result<SeparationRadius, EntropyError> {
    let cells = region.to_vec();
    if m == 0 || cells.len() < m {
        return Err(EntropyError::RegionTooSmall {
            have: cells.len(),
            need: m.max(1),
        });
    }
    let diameter = cells
        .par_iter()
        .map(|&a| {
            cells
                .iter()
                .map(|&b| space.center_distance(a, b))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    let target = diameter / (m + 1) as f64;
    if m == 1 {
        return Ok(SeparationRadius {
            epsilon0: diameter / 2.0,
            target,
            points: vec![cells[0]],
            meets_target: true,
        });
    }
    let far_from = |a: usize| {
        cells
            .iter()
            .copied()
            .max_by(|&x, &y| space.center_distance(a, x).total_cmp(&space.center_distance(a, y)))
            .expect("region is nonempty")
    };
    let start = far_from(cells[0]);
    let mut points = vec![start];
    let mut nearest: Vec<f64> = cells.iter().map(|&c| space.center_distance(start, c)).collect();
    while points.len() < m {
        let (idx, _) = nearest
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("region is nonempty");
        let pick = cells[idx];
        points.push(pick);
        for (k, &c) in cells.iter().enumerate() {
            nearest[k] = nearest[k].min(space.center_distance(pick, c));
        }
    }
    let mut epsilon0 = f64::INFINITY;
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            epsilon0 = epsilon0.min(space.center_distance(a, b));
        }
    }
    points.sort_unstable();
    Ok(SeparationRadius {
        epsilon0,
        target,
        points,
        meets_target: epsilon0 > target,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinementRow {
    pub subdivision: usize,
    pub min_row_size: usize,
    /// Cells that can be packed into every row at mutual distance of at
    /// least two cell widths.
    pub m: usize,
    pub log_m: f64,
    pub growth_rate: f64,
    pub reduced_precision: bool,
    pub bound_holds: bool,
}

/// Fattens `base` at radius `epsilon` on successively finer grids and
/// compares the growth rate with the packing count of the smallest row.
///
/// Interval maps use `[0, 1]` split into `s` cells, toral automorphisms an
/// `s x s` torus.
pub fn theorem_c_study(
    base: &BaseMap,
    epsilon: f64,
    subdivisions: &[usize],
) -> Result<Vec<RefinementRow>, EntropyError> {
    subdivisions
        .iter()
        .map(|&s| {
            let space = match base.kind() {
                MapKind::ToralAutomorphism { .. } => CellSpace::torus(s, s),
                _ => CellSpace::interval(0.0, 1.0, s),
            }
            .map_err(GraphError::from)?;
            let graph = fatten(&space, base, epsilon)?;
            let min_row_size = graph.min_out_degree();
            let m = (0..graph.len())
                .into_par_iter()
                .map(|c| packing_count(&space, graph.row(c)))
                .min()
                .unwrap_or(0);
            let growth = growth_rate(&graph);
            let log_m = (m as f64).ln();
            Ok(RefinementRow {
                subdivision: s,
                min_row_size,
                m,
                log_m,
                growth_rate: growth.rate,
                reduced_precision: growth.reduced_precision,
                bound_holds: growth.rate >= log_m - 1e-9,
            })
        })
        .collect()
}

fn packing_count(space: &CellSpace, row: &[u32]) -> usize {
    let gap = 2.0 * space.cell_size();
    let mut kept: Vec<usize> = Vec::new();
    for &c in row {
        let c = c as usize;
        if kept.iter().all(|&k| space.center_distance(c, k) >= gap - 1e-12 * gap) {
            kept.push(c);
        }
    }
    kept.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    PathCount,
    SpectralRadius,
    Separated,
    Spanning,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntropyValues {
    Counts(Vec<BigUint>),
    Reals(Vec<f64>),
}

impl Serialize for EntropyValues {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            // Exact integers as bare JSON numbers.
            EntropyValues::Counts(v) => serializer.collect_seq(v.iter().map(|x| {
                RawValue::from_string(x.to_string()).expect("decimal digits are valid JSON")
            })),
            EntropyValues::Reals(v) => serializer.collect_seq(v),
        }
    }
}

/// Per-`n` values of one estimation method and the rate extracted from them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub method: EntropyMethod,
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub values: EntropyValues,
    pub rate: f64,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub reduced_precision: bool,
}

impl EntropyReport {
    /// Path counts for `n = 1..=n_max`; the rate is `log(count(n_max)) / n_max`.
    pub fn path_count(graph: &TransitionGraph, n_max: usize, domain: Option<&CellSet>) -> Result<Self, EntropyError> {
        if n_max == 0 {
            return Err(EntropyError::ZeroLength);
        }
        let counts = count_orbits_series(graph, n_max, domain);
        let rate = big_ln(&counts[n_max - 1]) / n_max as f64;
        Ok(EntropyReport {
            method: EntropyMethod::PathCount,
            n_max,
            epsilon: None,
            values: EntropyValues::Counts(counts),
            rate,
            reduced_precision: false,
        })
    }

    /// The spectral radius as the single value.
    pub fn spectral(graph: &TransitionGraph, domain: Option<&CellSet>) -> Self {
        let g = growth_rate_on(graph, domain);
        EntropyReport {
            method: EntropyMethod::SpectralRadius,
            n_max: 0,
            epsilon: None,
            values: EntropyValues::Reals(vec![g.spectral_radius]),
            rate: g.rate,
            reduced_precision: g.reduced_precision,
        }
    }

    /// Greedy separated (or spanning) counts for `n = 1..=n_max`.
    pub fn greedy(
        graph: &TransitionGraph,
        method: EntropyMethod,
        n_max: usize,
        epsilon: f64,
        budget: Option<u64>,
        domain: Option<&CellSet>,
    ) -> Result<Self, EntropyError> {
        assert!(matches!(method, EntropyMethod::Separated | EntropyMethod::Spanning));
        if n_max == 0 {
            return Err(EntropyError::ZeroLength);
        }
        let counts = (1..=n_max)
            .map(|n| greedy_net(graph, n, epsilon, budget, domain).map(BigUint::from))
            .collect::<Result<Vec<_>, _>>()?;
        let rate = big_ln(&counts[n_max - 1]) / n_max as f64;
        Ok(EntropyReport {
            method,
            n_max,
            epsilon: Some(epsilon),
            values: EntropyValues::Counts(counts),
            rate,
            reduced_precision: false,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// `(n, value)` pairs as strings, for tabular export.
    pub fn table(&self) -> Vec<(String, String)> {
        match &self.values {
            EntropyValues::Counts(v) => v
                .iter()
                .enumerate()
                .map(|(i, x)| ((i + 1).to_string(), x.to_string()))
                .collect(),
            EntropyValues::Reals(v) => v
                .iter()
                .map(|x| (self.n_max.to_string(), format!("{x:?}")))
                .collect(),
        }
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
    fn counts() {
        let full = graph(vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(count_orbits(&full, 5), BigUint::from(32u32));
        let id = graph(vec![vec![0], vec![1], vec![2]]);
        assert_eq!(count_orbits(&id, 17), BigUint::from(3u32));
        let golden = graph(vec![vec![0, 1], vec![0]]);
        assert_eq!(count_orbits(&golden, 6), BigUint::from(21u32));
        let only_first = CellSet::from_cells(golden.space(), [0]).unwrap();
        assert_eq!(count_orbits_series(&golden, 3, Some(&only_first)), vec![BigUint::one(); 3]);
    }

    #[test]
    fn growth_rates() {
        let full = graph(vec![vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]]);
        assert!((growth_rate(&full).rate - 3f64.ln()).abs() < 1e-9);
        let id = graph(vec![vec![0], vec![1], vec![2]]);
        assert!(growth_rate(&id).rate.abs() < 1e-9);
        let golden = graph(vec![vec![0, 1], vec![0]]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((growth_rate(&golden).rate - phi.ln()).abs() < 1e-6);
        let swap = graph(vec![vec![1], vec![0]]);
        assert!(growth_rate(&swap).rate.abs() < 1e-9);
    }

    #[test]
    fn big_log_is_accurate() {
        let x = BigUint::one() << 3000u32;
        assert!((big_ln(&x) - 3000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn greedy_nets() {
        let full = graph(vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(separated_lower(&full, 4, 0.3, None, None).unwrap(), 16);
        assert_eq!(spanning_upper(&full, 3, 0.3, None, None).unwrap(), 8);
        assert_eq!(separated_lower(&full, 4, 2.0, None, None).unwrap(), 1);
        let golden = graph(vec![vec![0, 1], vec![0]]);
        assert_eq!(separated_lower(&golden, 6, 0.3, None, None).unwrap(), 21);
        assert_eq!(
            separated_lower(&full, 8, 0.3, Some(10), None),
            Err(EntropyError::BudgetExceeded { partial: 10 })
        );
    }

    #[test]
    fn separation() {
        let s = CellSpace::interval(0.0, 1.0, 10).unwrap();
        let all = CellSet::full(&s);
        let r = separation_radius(&s, &all, 2).unwrap();
        assert!(r.epsilon0 >= 0.3);
        assert!(r.meets_target);
        let one = separation_radius(&s, &all, 1).unwrap();
        assert!((one.epsilon0 - 0.45).abs() < 1e-12);
        let every = separation_radius(&s, &all, 10).unwrap();
        assert_eq!(every.points, (0..10).collect::<Vec<_>>());
        assert!((every.epsilon0 - 0.1).abs() < 1e-12);
        assert!(separation_radius(&s, &all, 11).is_err());
    }

    #[test]
    fn refinement_rows() {
        let rows = theorem_c_study(&BaseMap::identity(), 0.1, &[20, 40, 80]).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].growth_rate > w[0].growth_rate);
            assert!(w[1].m >= w[0].m);
        }
        assert!(rows.iter().all(|r| r.bound_holds));
        let whole = theorem_c_study(&BaseMap::identity(), 1.0, &[10]).unwrap();
        assert!((whole[0].growth_rate - 10f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn report_json() {
        let full = graph(vec![vec![0, 1], vec![0, 1]]);
        let r = EntropyReport::path_count(&full, 5, None).unwrap();
        assert_eq!(
            r.to_json(),
            format!(r#"{{"method":"path_count","n_max":5,"values":[2,4,8,16,32],"rate":{:?}}}"#, 32f64.ln() / 5.0)
        );
    }
}
