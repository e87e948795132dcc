//! Reachability structure of a transition graph: strongly connected
//! components, the recurrent set, the final recurrent set and its classes.
//!
//! `a ⇝ b` means a path of length at least one leads from `a` to `b`, so a
//! cell is recurrent exactly when it lies on a cycle. An isolated fixed cell
//! is recurrent only if it carries a self-loop.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::cellset::CellSet;
use crate::cellspace::SpaceId;
use crate::svmap::TransitionGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("final class starting at cell {first} is not invariant under the relation")]
    InvarianceViolation { first: usize },
}

impl RecurrenceError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::InvarianceViolation { .. } => "InvarianceViolation",
        }
    }
}

/// Strongly connected components and the condensation DAG.
///
/// Components are numbered in increasing order of their smallest cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Condensation {
    pub scc_of: Vec<usize>,
    pub scc_members: Vec<CellSet>,
    /// Sorted successor components, self excluded.
    pub dag_edges: Vec<Vec<usize>>,
    /// The component contains a cycle (two or more cells, or a self-loop).
    pub nontrivial: Vec<bool>,
    space_id: SpaceId,
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.scc_members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scc_members.is_empty()
    }

    /// Components with no outgoing DAG edge.
    pub fn terminal(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&s| self.dag_edges[s].is_empty())
    }
}

/// Strongly connected components of the graph restricted to `mask`
/// (all cells when `None`), as raw labels per cell and a component count.
/// Cells outside the mask get `usize::MAX`. Labels are ordered by the
/// smallest member cell.
pub(crate) fn scc_labels(graph: &TransitionGraph, mask: Option<&FixedBitSet>) -> (Vec<usize>, usize) {
    let n = graph.len();
    let inside = |c: usize| mask.is_none_or(|m| m.contains(c));
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut label = vec![UNSEEN; n];
    let mut stack: Vec<usize> = Vec::new();
    // (cell, position in its row)
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut raw_count = 0;

    for root in 0..n {
        if !inside(root) || index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let row = graph.row(v);
            if *pos < row.len() {
                let w = row[*pos] as usize;
                *pos += 1;
                if !inside(w) {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        label[w] = raw_count;
                        if w == v {
                            break;
                        }
                    }
                    raw_count += 1;
                }
            }
        }
    }

    // Renumber by smallest member: scanning cells in order meets each
    // component first at its smallest cell.
    let mut renumber = vec![UNSEEN; raw_count];
    let mut count = 0;
    for &l in &label {
        if l != UNSEEN && renumber[l] == UNSEEN {
            renumber[l] = count;
            count += 1;
        }
    }
    for l in label.iter_mut() {
        if *l != UNSEEN {
            *l = renumber[*l];
        }
    }
    (label, count)
}

pub fn condense(graph: &TransitionGraph) -> Condensation {
    let space = graph.space();
    let (scc_of, count) = scc_labels(graph, None);
    let mut members = vec![FixedBitSet::with_capacity(graph.len()); count];
    let mut dag_edges = vec![Vec::new(); count];
    let mut nontrivial = vec![false; count];
    let mut sizes = vec![0usize; count];
    for c in 0..graph.len() {
        let s = scc_of[c];
        members[s].insert(c);
        sizes[s] += 1;
        for &t in graph.row(c) {
            let t = t as usize;
            let st = scc_of[t];
            if st == s {
                if t == c {
                    nontrivial[s] = true;
                }
            } else {
                dag_edges[s].push(st);
            }
        }
    }
    for s in 0..count {
        if sizes[s] >= 2 {
            nontrivial[s] = true;
        }
        dag_edges[s].sort_unstable();
        dag_edges[s].dedup();
    }
    Condensation {
        scc_of,
        scc_members: members
            .into_iter()
            .map(|b| CellSet::with_bits(b, space.id()))
            .collect(),
        dag_edges,
        nontrivial,
        space_id: space.id(),
    }
}

/// Ω: cells lying on a cycle.
pub fn recurrent_set(c: &Condensation) -> CellSet {
    union_of(c, (0..c.len()).filter(|&s| c.nontrivial[s]))
}

/// Ω_final: cells in terminal components.
pub fn final_recurrent_set(c: &Condensation) -> CellSet {
    union_of(c, c.terminal())
}

fn union_of(c: &Condensation, sccs: impl Iterator<Item = usize>) -> CellSet {
    let universe = c.scc_of.len();
    let mut bits = FixedBitSet::with_capacity(universe);
    for s in sccs {
        bits.union_with(c.scc_members[s].bits());
    }
    CellSet::with_bits(bits, c.space_id)
}

/// Terminal components as cell sets, ordered by smallest member, each
/// checked to satisfy `image(class) = class`.
pub fn final_classes(
    graph: &TransitionGraph,
    c: &Condensation,
) -> Result<Vec<CellSet>, RecurrenceError> {
    c.terminal()
        .map(|s| {
            let class = c.scc_members[s].clone();
            if graph.image(&class) != class {
                return Err(RecurrenceError::InvarianceViolation {
                    first: class.first().unwrap_or(0),
                });
            }
            Ok(class)
        })
        .collect()
}

/// True when a path of length at least one leads from `a` to `b`.
pub fn reaches(c: &Condensation, a: usize, b: usize) -> bool {
    let (sa, sb) = (c.scc_of[a], c.scc_of[b]);
    if sa == sb {
        return c.nontrivial[sa];
    }
    let mut seen = vec![false; c.len()];
    let mut queue = VecDeque::from([sa]);
    seen[sa] = true;
    while let Some(s) = queue.pop_front() {
        for &t in &c.dag_edges[s] {
            if t == sb {
                return true;
            }
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellspace::CellSpace;
    use crate::svmap::explicit_graph;

    fn graph(rows: Vec<Vec<usize>>) -> TransitionGraph {
        let s = CellSpace::interval(0.0, 1.0, rows.len()).unwrap();
        explicit_graph(&s, rows).unwrap()
    }

    #[test]
    fn drain() {
        let g = graph(vec![vec![0, 1], vec![1]]);
        let c = condense(&g);
        assert_eq!(c.len(), 2);
        assert_eq!(c.nontrivial, vec![true, true]);
        assert_eq!(c.dag_edges, vec![vec![1], vec![]]);
        assert_eq!(recurrent_set(&c).to_vec(), vec![0, 1]);
        assert_eq!(final_recurrent_set(&c).to_vec(), vec![1]);
        assert!(reaches(&c, 0, 1));
        assert!(!reaches(&c, 1, 0));
    }

    #[test]
    fn swap_and_identity() {
        let g = graph(vec![vec![1], vec![0]]);
        let c = condense(&g);
        assert_eq!(c.len(), 1);
        assert!(c.nontrivial[0]);
        assert!(reaches(&c, 0, 0));
        assert_eq!(final_classes(&g, &c).unwrap()[0].to_vec(), vec![0, 1]);

        let id = graph(vec![vec![0], vec![1], vec![2]]);
        let c = condense(&id);
        assert_eq!(c.len(), 3);
        assert!(c.nontrivial.iter().all(|&b| b));
        assert!(!reaches(&c, 0, 1));
    }

    #[test]
    fn tail_into_fixed_cell() {
        let g = graph(vec![vec![1], vec![2], vec![2]]);
        let c = condense(&g);
        assert_eq!(recurrent_set(&c).to_vec(), vec![2]);
        assert_eq!(c.nontrivial, vec![false, false, true]);
    }

    #[test]
    fn two_final_classes() {
        let g = graph(vec![vec![0], vec![0, 2], vec![2]]);
        let c = condense(&g);
        let classes = final_classes(&g, &c).unwrap();
        let ids: Vec<_> = classes.iter().map(CellSet::to_vec).collect();
        assert_eq!(ids, vec![vec![0], vec![2]]);
        assert_eq!(final_recurrent_set(&c).to_vec(), vec![0, 2]);
    }

    #[test]
    fn numbering_follows_smallest_member() {
        // SCC {3,0} and {1,2}; Tarjan finishes {1,2} first.
        let g = graph(vec![vec![1, 3], vec![2], vec![1], vec![0]]);
        let c = condense(&g);
        assert_eq!(c.scc_of, vec![0, 1, 1, 0]);
        assert_eq!(c.dag_edges, vec![vec![1], vec![]]);
    }

    #[test]
    fn long_chain_does_not_overflow() {
        let n = 200_000;
        let rows: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
        let c = condense(&graph(rows));
        assert_eq!(c.len(), 1);
    }
}
