//! Counting, deciding and finding color-constrained arborescences.
//!
//! The number of s-arborescences with exactly `alpha_c` arcs of each color
//! `c < q` is the coefficient of `x^alpha` in the determinant of the
//! symbolic in-degree Laplacian with row and column `s` deleted.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Result;
use crate::graph::{ColorConstraint, ColoredDigraph, ColoredMultigraph, EdgeId, VertexId};
use crate::laplacian::{build_laplacian, Mode, Orientation};
use crate::poly::{ExponentVector, IntPoly};
use crate::symdet::{det_poly_over, select_primes, Engine, PrimeBasis};

/// Spanning out-tree rooted at `root`, as edge ids of its host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arborescence {
    pub root: VertexId,
    pub edges: Vec<EdgeId>,
}

impl Arborescence {
    /// Number of edges of each color `1..=q` (index `c - 1`).
    pub fn color_histogram(&self, g: &ColoredDigraph) -> Vec<u32> {
        let mut hist = vec![0; g.q()];
        for &id in &self.edges {
            if let Some(e) = g.edge(id) {
                hist[e.color as usize - 1] += 1;
            }
        }
        hist
    }

    pub fn total_weight(&self, g: &ColoredDigraph) -> u64 {
        self.edges
            .iter()
            .filter_map(|&id| g.edge(id).and_then(|e| e.weight))
            .sum()
    }

    /// Checks every structural invariant against the host graph: edges
    /// exist and are distinct, the root has no parent, every other vertex has
    /// exactly one, and every vertex is reached from the root.
    pub fn validate(&self, g: &ColoredDigraph) -> std::result::Result<(), String> {
        let n = g.n();
        if self.root >= n {
            return Err(format!("root {} out of range", self.root));
        }
        if self.edges.len() + 1 != n {
            return Err(format!("{} edges for {n} vertices", self.edges.len()));
        }
        let mut parent = vec![None; n];
        for &id in &self.edges {
            let e = g.edge(id).ok_or_else(|| format!("edge {id} not in graph"))?;
            if e.head == self.root {
                return Err(format!("edge {id} enters the root"));
            }
            if parent[e.head].replace(e.tail).is_some() {
                return Err(format!("vertex {} has two parents", e.head));
            }
        }
        for v in 0..n {
            let mut cur = v;
            for _ in 0..n {
                if cur == self.root {
                    break;
                }
                cur = parent[cur].ok_or_else(|| format!("vertex {cur} has no parent"))?;
            }
            if cur != self.root {
                return Err(format!("vertex {v} lies on a cycle"));
            }
        }
        Ok(())
    }

    /// True when the histogram matches `alpha` on colors `1..q` and the
    /// implied count on color `q`.
    pub fn matches(&self, g: &ColoredDigraph, alpha: &ColorConstraint) -> bool {
        let hist = self.color_histogram(g);
        match alpha.implied_last(g.n()) {
            Some(last) => hist[..g.vars()] == *alpha.as_slice() && hist[g.vars()] == last,
            None => false,
        }
    }
}

/// Arborescence counts keyed by color constraint. Absent keys count zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    poly: IntPoly,
}

impl CountTable {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn get(&self, alpha: &ColorConstraint) -> BigUint {
        self.poly.coeff(alpha.as_slice())
    }

    pub fn total(&self) -> BigUint {
        self.poly.coefficient_sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ColorConstraint, &BigUint)> {
        self.poly
            .terms()
            .iter()
            .map(|(e, c)| (ColorConstraint::new(e.as_slice().to_vec()), c))
    }

    pub fn to_map(&self) -> BTreeMap<Vec<u32>, BigUint> {
        self.iter().map(|(a, c)| (a.as_slice().to_vec(), c.clone())).collect()
    }
}

/// Coefficient bound `m^n` (`m` = raw arc count) and the matching prime
/// basis, every prime above `max(m, 2n)`.
pub(crate) fn counting_basis(g: &ColoredDigraph) -> Result<PrimeBasis> {
    let m = g.edge_count().max(1);
    let bound = BigUint::from(m).pow(g.n() as u32);
    select_primes(m.max(2 * g.n()) as u64, &bound)
}

fn exceeds_budget(g: &ColoredDigraph, alpha: &ColorConstraint) -> bool {
    alpha.implied_last(g.n()).is_none()
}

/// Determinant polynomial of the root minor of the in-degree Laplacian.
pub fn arborescence_polynomial(g: &ColoredDigraph, s: VertexId, engine: &Engine) -> Result<IntPoly> {
    g.check_vertex(s)?;
    let g = g.remove_in_arcs(s);
    let lap = build_laplacian(&g, Orientation::In, Mode::Unweighted)?;
    let minor = lap.minor(s)?;
    det_poly_over(&minor, &counting_basis(&g)?, engine)
}

pub fn count_table(g: &ColoredDigraph, s: VertexId, engine: &Engine) -> Result<CountTable> {
    Ok(CountTable {
        poly: arborescence_polynomial(g, s, engine)?,
    })
}

/// Number of `alpha`-colored s-arborescences.
pub fn count(g: &ColoredDigraph, s: VertexId, alpha: &ColorConstraint, engine: &Engine) -> Result<BigUint> {
    alpha.check_len(g.q())?;
    g.check_vertex(s)?;
    if exceeds_budget(g, alpha) {
        return Ok(BigUint::zero());
    }
    Ok(count_table(g, s, engine)?.get(alpha))
}

pub fn decide(g: &ColoredDigraph, s: VertexId, alpha: &ColorConstraint, engine: &Engine) -> Result<bool> {
    Ok(!count(g, s, alpha, engine)?.is_zero())
}

/// Finds an `alpha`-colored s-arborescence by deleting, in ascending id
/// order, every edge whose removal keeps one in the graph. Duplicate
/// same-color parallel arcs and arcs into `s` are dropped first.
pub fn find(
    g: &ColoredDigraph,
    s: VertexId,
    alpha: &ColorConstraint,
    engine: &Engine,
) -> Result<Option<Arborescence>> {
    alpha.check_len(g.q())?;
    g.check_vertex(s)?;
    let mut current = g.dedup_min_weight().remove_in_arcs(s);
    if !decide(&current, s, alpha, engine)? {
        return Ok(None);
    }
    let ids: Vec<EdgeId> = current.edges().iter().map(|e| e.id).collect();
    for id in ids {
        let candidate = current.remove_edge(id)?;
        if decide(&candidate, s, alpha, engine)? {
            current = candidate;
        }
    }
    let tree = Arborescence {
        root: s,
        edges: current.edges().iter().map(|e| e.id).collect(),
    };
    debug_assert!(tree.validate(g).is_ok() && tree.matches(g, alpha));
    Ok(Some(tree))
}

/// Spanning-tree counts of an undirected graph, keyed by color constraint:
/// the root-1 arborescence table of its bidirected digraph.
pub fn spanning_tree_table(g: &ColoredMultigraph, engine: &Engine) -> Result<CountTable> {
    count_table(&g.bidirect(), 0, engine)
}

pub fn count_spanning_trees(g: &ColoredMultigraph, alpha: &ColorConstraint, engine: &Engine) -> Result<BigUint> {
    count(&g.bidirect(), 0, alpha, engine)
}

/// Number of `alpha`-colored spanning functional subgraphs all of whose
/// cycles are self-loops: a coefficient of the full out-degree Laplacian
/// determinant. Self-loops are allowed here.
pub fn count_functional(g: &ColoredDigraph, alpha: &ColorConstraint, engine: &Engine) -> Result<BigUint> {
    alpha.check_len(g.q())?;
    Ok(functional_polynomial(g, engine)?.coeff(alpha.as_slice()))
}

pub fn functional_polynomial(g: &ColoredDigraph, engine: &Engine) -> Result<IntPoly> {
    let lap = build_laplacian(g, Orientation::Out, Mode::Unweighted)?;
    det_poly_over(&lap, &counting_basis(g)?, engine)
}

/// Classical arborescence count: the root minor with every `x_c := 1`,
/// computed as a constant determinant independently of the colored table.
pub fn uncolored_count(g: &ColoredDigraph, s: VertexId, engine: &Engine) -> Result<BigUint> {
    g.check_vertex(s)?;
    let g = g.remove_in_arcs(s);
    let mono = ColoredDigraph::new(
        g.labels().to_vec(),
        1,
        g.edges().iter().map(|e| (e.tail, e.head, 1, None)),
    )?;
    let lap = build_laplacian(&mono, Orientation::In, Mode::Unweighted)?;
    let d = det_poly_over(&lap.minor(s)?, &counting_basis(&mono)?, engine)?;
    Ok(d.terms().get(&ExponentVector::zero(0)).cloned().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(v: &[u32]) -> ColorConstraint {
        ColorConstraint::new(v.to_vec())
    }

    fn big(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn single_vertex_table() {
        let g = ColoredDigraph::from_arcs(1, 1, &[]).unwrap();
        let t = count_table(&g, 0, &Engine::default()).unwrap();
        assert_eq!(t.to_map(), BTreeMap::from([(vec![], big(1))]));
    }

    #[test]
    fn two_parallel_colors() {
        let g = ColoredDigraph::from_arcs(2, 2, &[(0, 1, 1), (0, 1, 2)]).unwrap();
        let e = Engine::default();
        let t = count_table(&g, 0, &e).unwrap();
        assert_eq!(t.to_map(), BTreeMap::from([(vec![0], big(1)), (vec![1], big(1))]));
        assert_eq!(count(&g, 0, &alpha(&[1]), &e).unwrap(), big(1));
        assert_eq!(count(&g, 0, &alpha(&[2]), &e).unwrap(), big(0));
        assert!(decide(&g, 0, &alpha(&[1]), &e).unwrap());
        assert!(!decide(&g, 0, &alpha(&[2]), &e).unwrap());
        assert!(count(&g, 0, &alpha(&[1, 0]), &e).is_err());
    }

    #[test]
    fn bidirected_triangle() {
        let g = ColoredDigraph::from_arcs(
            3,
            1,
            &[(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1), (0, 2, 1), (2, 0, 1)],
        )
        .unwrap();
        for s in 0..3 {
            let t = count_table(&g, s, &Engine::default()).unwrap();
            assert_eq!(t.to_map(), BTreeMap::from([(vec![], big(3))]));
        }
    }

    #[test]
    fn find_unique_path() {
        let g = ColoredDigraph::from_arcs(3, 2, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let e = Engine::default();
        let t = find(&g, 0, &alpha(&[1]), &e).unwrap().unwrap();
        assert_eq!(t.edges, vec![0, 1]);
        assert!(t.validate(&g).is_ok());
        assert_eq!(find(&g, 0, &alpha(&[2]), &e).unwrap(), None);
        assert_eq!(find(&g, 0, &alpha(&[0]), &e).unwrap(), None);
    }

    #[test]
    fn spanning_tree_examples() {
        let e = Engine::default();
        let one = ColoredMultigraph::from_edges(2, 2, &[(0, 1, 1)]).unwrap();
        assert_eq!(count_spanning_trees(&one, &alpha(&[1]), &e).unwrap(), big(1));
        let tri = ColoredMultigraph::from_edges(3, 1, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(count_spanning_trees(&tri, &alpha(&[]), &e).unwrap(), big(3));
        let tri = ColoredMultigraph::from_edges(3, 2, &[(0, 1, 1), (1, 2, 1), (0, 2, 2)]).unwrap();
        assert_eq!(count_spanning_trees(&tri, &alpha(&[1]), &e).unwrap(), big(2));
    }

    #[test]
    fn functional_examples() {
        let e = Engine::default();
        let looped = ColoredDigraph::with_loops(vec!["a".into()], 1, [(0, 0, 1, None)]).unwrap();
        assert_eq!(count_functional(&looped, &alpha(&[]), &e).unwrap(), big(1));
        let bare = ColoredDigraph::from_arcs(1, 1, &[]).unwrap();
        assert_eq!(count_functional(&bare, &alpha(&[]), &e).unwrap(), big(0));
    }

    #[test]
    fn validate_rejects_bad_trees() {
        let g = ColoredDigraph::from_arcs(3, 1, &[(0, 1, 1), (1, 2, 1), (2, 1, 1), (1, 0, 1)]).unwrap();
        let bad = |edges: Vec<EdgeId>| Arborescence { root: 0, edges }.validate(&g);
        assert!(bad(vec![0, 1]).is_ok());
        assert!(bad(vec![0]).is_err());
        assert!(bad(vec![1, 2]).is_err());
        assert!(bad(vec![0, 3]).is_err());
        assert!(bad(vec![0, 9]).is_err());
    }
}
