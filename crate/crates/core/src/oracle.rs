//! Brute-force reference implementations, used to cross-check the fast
//! graph algorithms on small graphs.
//!
//! Reachability comes from a boolean transitive closure (Warshall), and the
//! recurrence notions are then read off their set-theoretic definitions.
//! Periods come from closed walk lengths, mixing from the eventual
//! positivity of matrix powers.

use fixedbitset::FixedBitSet;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::cellset::CellSet;
use crate::recurrence::{condense, final_classes, final_recurrent_set, recurrent_set};
use crate::spectral::{is_mixing, is_transitive, period};
use crate::svmap::TransitionGraph;

/// Largest graph the cubic closure is run on.
pub const ORACLE_LIMIT: usize = 500;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {cells} cells; the oracle handles at most {ORACLE_LIMIT}")]
    TooLargeForOracle { cells: usize },
}

impl OracleError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::TooLargeForOracle { .. } => "TooLargeForOracle",
        }
    }
}

/// Boolean matrix over the cells of a domain, one bitset row per cell.
#[derive(Clone, PartialEq)]
struct BoolMatrix {
    rows: Vec<FixedBitSet>,
}

impl BoolMatrix {
    fn adjacency(graph: &TransitionGraph, domain: &[usize]) -> Self {
        let n = graph.len();
        let mut local = vec![usize::MAX; n];
        for (i, &c) in domain.iter().enumerate() {
            local[c] = i;
        }
        let rows = domain
            .iter()
            .map(|&c| {
                let mut row = FixedBitSet::with_capacity(domain.len());
                for &t in graph.row(c) {
                    let j = local[t as usize];
                    if j != usize::MAX {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        BoolMatrix { rows }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    fn product(&self, other: &BoolMatrix) -> BoolMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = FixedBitSet::with_capacity(self.len());
                for k in row.ones() {
                    out.union_with(&other.rows[k]);
                }
                out
            })
            .collect();
        BoolMatrix { rows }
    }

    /// Paths of length at least one.
    fn closure(&self) -> BoolMatrix {
        let mut r = self.clone();
        let n = self.len();
        for k in 0..n {
            let via = r.rows[k].clone();
            for i in 0..n {
                if r.rows[i].contains(k) {
                    r.rows[i].union_with(&via);
                }
            }
        }
        r
    }

    fn has_loop(&self) -> bool {
        (0..self.len()).any(|i| self.rows[i].contains(i))
    }

    fn all_positive(&self) -> bool {
        let n = self.len();
        self.rows.iter().all(|r| r.count_ones(..) == n)
    }
}

/// Facts about a graph computed by brute force.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleFacts {
    pub omega: Vec<usize>,
    pub omega_final: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    /// Transitivity of the whole space.
    pub transitive: bool,
    pub class_transitive: Vec<bool>,
    /// `None` when the class restriction is not strongly connected.
    pub class_period: Vec<Option<usize>>,
    pub class_mixing: Vec<bool>,
}

pub fn brute_force(graph: &TransitionGraph) -> Result<OracleFacts, OracleError> {
    let n = graph.len();
    if n > ORACLE_LIMIT {
        return Err(OracleError::TooLargeForOracle { cells: n });
    }
    let all: Vec<usize> = (0..n).collect();
    let reach = BoolMatrix::adjacency(graph, &all).closure();
    let r = |x: usize, y: usize| reach.rows[x].contains(y);
    let omega: Vec<usize> = all.iter().copied().filter(|&x| r(x, x)).collect();
    let omega_final: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&x| (0..n).all(|y| !r(x, y) || r(y, x)))
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &x in &omega_final {
        if classes.iter().any(|c| c.contains(&x)) {
            continue;
        }
        classes.push(omega_final.iter().copied().filter(|&y| r(x, y)).collect());
    }
    let transitive = domain_transitive(graph, &all);
    let class_transitive: Vec<bool> = classes.iter().map(|c| domain_transitive(graph, c)).collect();
    let class_period: Vec<Option<usize>> = classes
        .iter()
        .zip(&class_transitive)
        .map(|(c, &t)| t.then(|| domain_period(graph, c)))
        .collect();
    let class_mixing = classes
        .iter()
        .zip(&class_transitive)
        .map(|(c, &t)| t && domain_mixing(graph, c))
        .collect();
    Ok(OracleFacts {
        omega,
        omega_final,
        classes,
        transitive,
        class_transitive,
        class_period,
        class_mixing,
    })
}

/// Every ordered pair of domain cells, including a cell with itself, is
/// joined by a path inside the domain.
pub fn domain_transitive(graph: &TransitionGraph, domain: &[usize]) -> bool {
    if domain.is_empty() {
        return false;
    }
    BoolMatrix::adjacency(graph, domain).closure().all_positive()
}

/// Gcd of the lengths `n <= |domain|` of closed walks inside the domain.
pub fn domain_period(graph: &TransitionGraph, domain: &[usize]) -> usize {
    let a = BoolMatrix::adjacency(graph, domain);
    let mut power = a.clone();
    let mut g = 0;
    for n in 1..=domain.len() {
        if power.has_loop() {
            g = g.gcd(&n);
        }
        power = power.product(&a);
    }
    g
}

/// `f^n(a)` meets `b` for every pair of domain cells and every `n` in
/// `[n0, n0 + |domain|^2]`, with `n0 = (k - 1)^2 + 1`. Above 100 cells the
/// window shrinks to `[n0, n0 + k]`.
pub fn domain_mixing(graph: &TransitionGraph, domain: &[usize]) -> bool {
    let k = domain.len();
    if k == 0 {
        return false;
    }
    let a = BoolMatrix::adjacency(graph, domain);
    let n0 = (k - 1) * (k - 1) + 1;
    let mut power = matrix_power(&a, n0);
    let window = if k <= 100 { k * k } else { k };
    for _ in 0..=window {
        if !power.all_positive() {
            return false;
        }
        power = power.product(&a);
    }
    true
}

fn matrix_power(a: &BoolMatrix, mut exp: usize) -> BoolMatrix {
    let mut result: Option<BoolMatrix> = None;
    let mut base = a.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => r.product(&base),
            });
        }
        exp >>= 1;
        if exp > 0 {
            base = base.product(&base);
        }
    }
    result.expect("exponent is positive")
}

/// One compared quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleItem {
    pub item: &'static str,
    pub agree: bool,
    pub fast: serde_json::Value,
    pub oracle: serde_json::Value,
}

/// Compares the fast algorithms against [`brute_force`].
pub fn oracle_check(graph: &TransitionGraph) -> Result<Vec<OracleItem>, OracleError> {
    let facts = brute_force(graph)?;
    let space = graph.space();
    let condensation = condense(graph);
    let classes = final_classes(graph, &condensation).expect("condensation classes are invariant");
    let fast_classes: Vec<Vec<usize>> = classes.iter().map(CellSet::to_vec).collect();
    let fast_transitive = is_transitive(graph, &CellSet::full(space));
    let fast_class_transitive: Vec<bool> = classes.iter().map(|c| is_transitive(graph, c)).collect();
    let fast_period: Vec<Option<usize>> = classes.iter().map(|c| period(graph, c).ok()).collect();
    let fast_mixing: Vec<bool> = classes.iter().map(|c| is_mixing(graph, c)).collect();

    fn item<T: Serialize + PartialEq>(name: &'static str, fast: T, oracle: T) -> OracleItem {
        OracleItem {
            item: name,
            agree: fast == oracle,
            fast: serde_json::to_value(&fast).expect("serializable"),
            oracle: serde_json::to_value(&oracle).expect("serializable"),
        }
    }
    Ok(vec![
        item("omega", recurrent_set(&condensation).to_vec(), facts.omega),
        item("omega_final", final_recurrent_set(&condensation).to_vec(), facts.omega_final),
        item("classes", fast_classes, facts.classes),
        item("transitive", fast_transitive, facts.transitive),
        item("class_transitive", fast_class_transitive, facts.class_transitive),
        item("class_period", fast_period, facts.class_period),
        item("class_mixing", fast_mixing, facts.class_mixing),
    ])
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
    fn reference_values() {
        let drain = brute_force(&graph(vec![vec![0, 1], vec![1]])).unwrap();
        assert_eq!(drain.omega, vec![0, 1]);
        assert_eq!(drain.omega_final, vec![1]);
        let two = brute_force(&graph(vec![vec![0], vec![0, 2], vec![2]])).unwrap();
        assert_eq!(two.classes, vec![vec![0], vec![2]]);
        let cycle = graph(vec![vec![1], vec![2], vec![0]]);
        assert_eq!(domain_period(&cycle, &[0, 1, 2]), 3);
        assert!(!domain_mixing(&cycle, &[0, 1, 2]));
        let golden = graph(vec![vec![0, 1], vec![0]]);
        assert!(domain_mixing(&golden, &[0, 1]));
    }

    #[test]
    fn agrees_on_small_graphs() {
        for rows in [
            vec![vec![0, 1], vec![1]],
            vec![vec![1], vec![2], vec![2]],
            vec![vec![1], vec![0]],
            vec![vec![1, 3], vec![2], vec![1], vec![0]],
        ] {
            let report = oracle_check(&graph(rows)).unwrap();
            assert!(report.iter().all(|i| i.agree), "{report:?}");
        }
    }

    #[test]
    fn refuses_large_graphs() {
        let g = graph((0..501).map(|i| vec![i]).collect());
        assert_eq!(brute_force(&g).unwrap_err(), OracleError::TooLargeForOracle { cells: 501 });
    }
}
