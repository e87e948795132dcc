//! Decomposition of the final recurrent set into final classes and their
//! cyclically permuted spatial components, with periods and
//! transitivity/mixing certificates.

use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cellset::CellSet;
use crate::cellspace::fnv1a;
use crate::recurrence::{condense, final_classes, scc_labels, RecurrenceError};
use crate::svmap::TransitionGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("the image of the component starting at cell {component} meets more than one component")]
    ComponentMapNotSingleValued { component: usize },
    #[error("components of the class starting at cell {class} are not permuted in a single cycle")]
    PermutationNotCyclic { class: usize },
    #[error("the relation restricted to the domain is not strongly connected")]
    NotStronglyConnected,
    #[error("no return within {cap} steps")]
    NoReturnFound { cap: usize },
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
}

impl SpectralError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::ComponentMapNotSingleValued { .. } => "ComponentMapNotSingleValued",
            Self::PermutationNotCyclic { .. } => "PermutationNotCyclic",
            Self::NotStronglyConnected => "NotStronglyConnected",
            Self::NoReturnFound { .. } => "NoReturnFound",
            Self::Recurrence(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinalClassReport {
    #[serde(rename = "cells")]
    pub class_cells: CellSet,
    /// Spatial components in cyclic order, starting with the one holding the
    /// smallest cell; component `k` maps onto component `k + 1`.
    pub components: Vec<CellSet>,
    /// Number of components.
    pub period: usize,
    #[serde(skip)]
    pub permutation: Vec<usize>,
    pub transitive: bool,
    /// Mixing of the relation itself on the class.
    pub mixing: bool,
    /// Mixing of the `period`-th power on each component.
    pub mixing_per_component: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decomposition {
    pub classes: Vec<FinalClassReport>,
    #[serde(skip)]
    pub graph_id: u64,
}

impl Decomposition {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }

    /// Graphviz rendering: one cluster per component, arrows for the cyclic
    /// permutation.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomposition {\n  compound=true;\n");
        for (j, class) in self.classes.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_class{j} {{\n    label=\"class {j} (period {})\";", class.period);
            for (k, comp) in class.components.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "    subgraph cluster_c{j}_{k} {{\n      style=filled; fillcolor=\"/set312/{}\"; label=\"component {k}\";",
                    (j * 3 + k) % 12 + 1
                );
                let _ = writeln!(out, "      c{j}_{k} [shape=box, label=\"{}\"];", cells_label(comp));
                out.push_str("    }\n");
            }
            out.push_str("  }\n");
            for (k, &next) in class.permutation.iter().enumerate() {
                let _ = writeln!(out, "  c{j}_{k} -> c{j}_{next};");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn cells_label(set: &CellSet) -> String {
    let ids: Vec<String> = set.iter().map(|c| c.to_string()).collect();
    if ids.len() <= 12 {
        ids.join(",")
    } else {
        format!("{} .. {} ({} cells)", ids[0], ids[ids.len() - 1], ids.len())
    }
}

pub(crate) fn graph_fingerprint(graph: &TransitionGraph) -> u64 {
    fnv1a(&graph.to_binary())
}

pub fn decompose(graph: &TransitionGraph) -> Result<Decomposition, SpectralError> {
    let condensation = condense(graph);
    let classes = final_classes(graph, &condensation)?;
    let reports = classes
        .into_par_iter()
        .map(|class| class_report(graph, class))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Decomposition {
        classes: reports,
        graph_id: graph_fingerprint(graph),
    })
}

fn class_report(graph: &TransitionGraph, class: CellSet) -> Result<FinalClassReport, SpectralError> {
    let space = graph.space();
    let parts = space.spatial_components(&class);
    let first = class.first().unwrap_or(0);
    let mut owner = vec![usize::MAX; graph.len()];
    for (k, part) in parts.iter().enumerate() {
        for c in part.iter() {
            owner[c] = k;
        }
    }
    let mut next = Vec::with_capacity(parts.len());
    for part in &parts {
        let image = graph.image(part);
        let mut target = None;
        for c in image.iter() {
            match target {
                None => target = Some(owner[c]),
                Some(t) if t == owner[c] => {}
                Some(_) => {
                    return Err(SpectralError::ComponentMapNotSingleValued {
                        component: part.first().unwrap_or(0),
                    })
                }
            }
        }
        next.push(target.expect("rows are nonempty"));
    }
    // Walk the cycle from the component holding the smallest cell.
    let n = parts.len();
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    for _ in 0..n {
        order.push(k);
        k = next[k];
    }
    let mut visited = order.clone();
    visited.sort_unstable();
    visited.dedup();
    if k != 0 || visited.len() != n {
        return Err(SpectralError::PermutationNotCyclic { class: first });
    }
    let components: Vec<CellSet> = order.iter().map(|&k| parts[k].clone()).collect();
    let permutation: Vec<usize> = (0..n).map(|k| (k + 1) % n).collect();

    let transitive = is_transitive(graph, &class);
    let mixing = is_mixing(graph, &class);
    let per_component: Vec<bool> = components
        .iter()
        .map(|comp| power_mixing_on(graph, n, comp))
        .collect();
    assert!(
        per_component.iter().all(|&m| m == per_component[0]),
        "components of one final class disagree on mixing"
    );
    Ok(FinalClassReport {
        class_cells: class,
        components,
        period: n,
        permutation,
        transitive,
        mixing,
        mixing_per_component: per_component[0],
    })
}

/// Mixing of `graph^n` restricted to `domain`, building only the rows that
/// the restriction needs.
pub fn power_mixing_on(graph: &TransitionGraph, n: usize, domain: &CellSet) -> bool {
    if n == 1 {
        return is_mixing(graph, domain);
    }
    let rows: Vec<Vec<usize>> = (0..graph.len())
        .into_par_iter()
        .map(|c| {
            if domain.contains(c) {
                let reached = graph.iterate_image(&graph.row_set(c), n - 1);
                let row: Vec<usize> = reached.intersection(domain).to_vec();
                if row.is_empty() {
                    vec![c]
                } else {
                    row
                }
            } else {
                vec![c]
            }
        })
        .collect();
    // Cells whose power row leaves the domain entirely keep a placeholder
    // self-loop; they cannot occur for invariant domains.
    let power = TransitionGraph::from_parts(
        graph.space().clone(),
        rows,
        graph.epsilon(),
        graph.source().clone(),
    )
    .expect("power rows are valid");
    is_mixing(&power, domain)
}

/// Strong connectivity of the relation restricted to `domain`. A single
/// cell counts only with a self-loop, so that every pair (including a cell
/// with itself) is joined by a path of length at least one.
pub fn is_transitive(graph: &TransitionGraph, domain: &CellSet) -> bool {
    let Some(first) = domain.first() else {
        return false;
    };
    let (_, count) = scc_labels(graph, Some(domain.bits()));
    if count != 1 {
        return false;
    }
    domain.len() >= 2 || graph.row(first).contains(&(first as u32))
}

/// Gcd of the cycle lengths of the restriction to `domain`.
pub fn period(graph: &TransitionGraph, domain: &CellSet) -> Result<usize, SpectralError> {
    if !is_transitive(graph, domain) {
        return Err(SpectralError::NotStronglyConnected);
    }
    let root = domain.first().expect("transitive domains are nonempty");
    let level = bfs_levels(graph, domain.bits(), root);
    let mut g = 0usize;
    for u in domain.iter() {
        for &v in graph.row(u) {
            let v = v as usize;
            if !domain.contains(v) {
                continue;
            }
            let diff = (level[u] + 1).abs_diff(level[v]);
            g = g.gcd(&diff);
            if g == 1 {
                return Ok(1);
            }
        }
    }
    Ok(g)
}

fn bfs_levels(graph: &TransitionGraph, mask: &FixedBitSet, root: usize) -> Vec<usize> {
    let mut level = vec![usize::MAX; graph.len()];
    level[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in graph.row(u) {
            let v = v as usize;
            if mask.contains(v) && level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    level
}

/// Strongly connected with period one.
pub fn is_mixing(graph: &TransitionGraph, domain: &CellSet) -> bool {
    matches!(period(graph, domain), Ok(1))
}

/// Smallest `n >= 1` with `u ⊆ f^n(u)`.
///
/// When the relation is transitive on its image (with period `p` and `k`
/// image cells) the search stops after `p * ((k - 1)^2 + 1)` steps, which
/// bounds the exponent of the primitive power on each component. Otherwise
/// the cap is `k * ((k - 1)^2 + 1)`.
pub fn return_time(graph: &TransitionGraph, u: &CellSet) -> Result<usize, SpectralError> {
    if u.is_empty() {
        return Err(SpectralError::NoReturnFound { cap: 0 });
    }
    let image = graph.full_image();
    let k = image.len();
    let p = period(graph, &image).unwrap_or(k);
    let cap = p.saturating_mul((k - 1).saturating_mul(k - 1).saturating_add(1));
    let mut cur = u.clone();
    for n in 1..=cap {
        cur = graph.image(&cur);
        if u.is_subset(&cur) {
            return Ok(n);
        }
    }
    Err(SpectralError::NoReturnFound { cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellspace::CellSpace;
    use crate::svmap::{explicit_graph, fatten, BaseMap};

    fn graph(rows: Vec<Vec<usize>>) -> TransitionGraph {
        let s = CellSpace::interval(0.0, 1.0, rows.len()).unwrap();
        explicit_graph(&s, rows).unwrap()
    }

    fn all(g: &TransitionGraph) -> CellSet {
        CellSet::full(g.space())
    }

    fn piece_swap() -> TransitionGraph {
        let s = CellSpace::interval_union(&[(0.0, 1.0, 4), (3.0, 4.0, 4)]).unwrap();
        let rows = (0..8)
            .map(|c| if c < 4 { (4..8).collect() } else { (0..4).collect() })
            .collect();
        explicit_graph(&s, rows).unwrap()
    }

    #[test]
    fn piece_swap_has_period_two() {
        let g = piece_swap();
        let d = decompose(&g).unwrap();
        assert_eq!(d.classes.len(), 1);
        let c = &d.classes[0];
        assert_eq!(c.period, 2);
        assert_eq!(c.components[0].to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(c.components[1].to_vec(), vec![4, 5, 6, 7]);
        assert_eq!(c.permutation, vec![1, 0]);
        assert!(c.transitive);
        assert!(!c.mixing);
        assert!(c.mixing_per_component);
        assert_eq!(period(&g, &all(&g)).unwrap(), 2);
    }

    #[test]
    fn halves_swap_is_transitive_not_mixing() {
        let g = graph(vec![vec![1], vec![0]]);
        let d = decompose(&g).unwrap();
        assert_eq!(d.classes.len(), 1);
        assert!(d.classes[0].transitive);
        assert!(!d.classes[0].mixing);
        assert_eq!(return_time(&g, &CellSet::from_cells(g.space(), [0]).unwrap()).unwrap(), 2);
    }

    #[test]
    fn transitivity_examples() {
        let full = graph(vec![vec![0, 1], vec![0, 1]]);
        assert!(is_transitive(&full, &all(&full)));
        assert_eq!(period(&full, &all(&full)).unwrap(), 1);
        assert_eq!(return_time(&full, &all(&full)).unwrap(), 1);
        let id = graph(vec![vec![0], vec![1]]);
        assert!(!is_transitive(&id, &all(&id)));
        let two = graph(vec![vec![0], vec![0, 2], vec![2]]);
        assert!(!is_transitive(&two, &all(&two)));
        assert!(is_transitive(&two, &CellSet::from_cells(two.space(), [0]).unwrap()));
        assert_eq!(decompose(&two).unwrap().classes.len(), 2);
        let lone = graph(vec![vec![1], vec![1]]);
        assert!(!is_transitive(&lone, &CellSet::from_cells(lone.space(), [0]).unwrap()));
    }

    #[test]
    fn three_cycle() {
        let g = graph(vec![vec![1], vec![2], vec![0]]);
        assert_eq!(period(&g, &all(&g)).unwrap(), 3);
        assert_eq!(return_time(&g, &CellSet::from_cells(g.space(), [1]).unwrap()).unwrap(), 3);
        assert_eq!(
            period(&graph(vec![vec![1], vec![1]]), &CellSet::full(g.space())),
            Err(SpectralError::NotStronglyConnected)
        );
    }

    #[test]
    fn fattened_maps_mix() {
        let s = CellSpace::interval(0.0, 1.0, 64).unwrap();
        let g = fatten(&s, &BaseMap::doubling(), 0.02).unwrap();
        let d = decompose(&g).unwrap();
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.classes[0].period, 1);
        assert!(d.classes[0].transitive && d.classes[0].mixing);

        let s = CellSpace::interval(0.0, 1.0, 16).unwrap();
        let id = fatten(&s, &BaseMap::identity(), 0.2).unwrap();
        assert!(is_mixing(&id, &all(&id)));
    }

    #[test]
    fn straddling_image_is_reported() {
        let s = CellSpace::interval_union(&[(0.0, 1.0, 1), (2.0, 3.0, 1), (4.0, 5.0, 1)]).unwrap();
        let g = explicit_graph(&s, vec![vec![1, 2], vec![0], vec![0]]).unwrap();
        assert_eq!(
            decompose(&g).unwrap_err(),
            SpectralError::ComponentMapNotSingleValued { component: 0 }
        );
    }

    #[test]
    fn json_shape() {
        let d = decompose(&piece_swap()).unwrap();
        assert_eq!(
            d.to_json(),
            r#"{"classes":[{"cells":[0,1,2,3,4,5,6,7],"components":[[0,1,2,3],[4,5,6,7]],"period":2,"transitive":true,"mixing":false,"mixing_per_component":true}]}"#
        );
        assert!(d.to_dot().contains("c0_0 -> c0_1"));
    }
}
