//! Symbolic out-/in-degree Laplacians of colored digraphs.
//!
//! Out: entry `(i, j)` for `i != j` is `-sum_c a_{ijc} x_c` and the diagonal
//! is the row sum `sum_k sum_c a_{ikc} x_c`. In: the out-Laplacian of the
//! reversed graph. `a_{ijc}` is the arc multiplicity (unweighted) or the arc
//! weight (weighted), and `x_q = 1` so color `q` lands in the constant term.
//! A self-loop only contributes to the diagonal.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{ColoredDigraph, Edge};
use crate::poly::{ExponentVector, ZPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Out,
    In,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Unweighted,
    Weighted,
}

/// Square matrix of polynomials with degree at most one in each variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    dim: usize,
    vars: usize,
    entries: Vec<ZPoly>,
}

impl SymbolicMatrix {
    /// Row-major entries. Rejects any entry with a variable of degree > 1.
    pub fn new(dim: usize, vars: usize, entries: Vec<ZPoly>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Shape(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        for (k, e) in entries.iter().enumerate() {
            if e.vars() != vars {
                return Err(Error::Shape(format!(
                    "entry {k} has {} variables, expected {vars}",
                    e.vars()
                )));
            }
            if e.max_var_degree() > 1 {
                return Err(Error::EntryDegree {
                    row: k / dim.max(1),
                    col: k % dim.max(1),
                });
            }
        }
        Ok(Self { dim, vars, entries })
    }

    pub fn zeros(dim: usize, vars: usize) -> Self {
        Self {
            dim,
            vars,
            entries: vec![ZPoly::zero(vars); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn get(&self, row: usize, col: usize) -> &ZPoly {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[ZPoly] {
        &self.entries
    }

    fn add_to(&mut self, row: usize, col: usize, exp: &ExponentVector, c: BigInt) {
        self.entries[row * self.dim + col].add_term(exp.clone(), c);
    }

    /// Deletes row `s` and column `s` (0-based), keeping the remaining order.
    pub fn minor(&self, s: usize) -> Result<Self> {
        if s >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: s,
                dim: self.dim,
            });
        }
        let keep: Vec<usize> = (0..self.dim).filter(|&i| i != s).collect();
        let entries = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Ok(Self {
            dim: self.dim - 1,
            vars: self.vars,
            entries,
        })
    }

    /// Integer matrix obtained by substituting `point` for the variables.
    pub fn substitute(&self, point: &[i64]) -> Vec<BigInt> {
        self.entries.iter().map(|e| e.eval_int(point)).collect()
    }
}

/// Color `c` as a monomial: `x_c` for `c < q`, the constant 1 for `c = q`.
fn color_monomial(vars: usize, color: u32) -> ExponentVector {
    let c = color as usize;
    if c > vars {
        ExponentVector::zero(vars)
    } else {
        ExponentVector::unit(vars, c - 1)
    }
}

/// Builds the Laplacian with an arbitrary per-arc coefficient. Used directly
/// for transformed weights; [`build_laplacian`] wraps it.
pub fn build_with<F>(g: &ColoredDigraph, orientation: Orientation, mut coeff: F) -> SymbolicMatrix
where
    F: FnMut(&Edge) -> BigInt,
{
    let vars = g.vars();
    let mut m = SymbolicMatrix::zeros(g.n(), vars);
    for e in g.edges() {
        let c = coeff(e);
        if c.is_zero() {
            continue;
        }
        let exp = color_monomial(vars, e.color);
        // `pivot` owns the diagonal entry; the arc sits at (row, col)
        let (row, col, pivot) = match orientation {
            Orientation::Out => (e.tail, e.head, e.tail),
            Orientation::In => (e.head, e.tail, e.head),
        };
        m.add_to(pivot, pivot, &exp, c.clone());
        if row != col {
            m.add_to(row, col, &exp, -c);
        }
    }
    m
}

/// Symbolic out- or in-degree Laplacian. Weighted mode requires a weighted
/// graph without parallel arcs of the same color.
pub fn build_laplacian(
    g: &ColoredDigraph,
    orientation: Orientation,
    mode: Mode,
) -> Result<SymbolicMatrix> {
    match mode {
        Mode::Unweighted => Ok(build_with(g, orientation, |_| BigInt::from(1))),
        Mode::Weighted => {
            if !g.is_weighted() {
                return Err(Error::Unweighted);
            }
            if let Some(((tail, head, color), _)) = g.multiplicities().find(|(_, ids)| ids.len() > 1) {
                return Err(Error::DuplicateEdge { tail, head, color });
            }
            Ok(build_with(g, orientation, |e| {
                BigInt::from(e.weight.expect("weighted graph"))
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> ZPoly {
        ZPoly::from_terms(1, [(ExponentVector::unit(1, 0), BigInt::from(1))])
    }

    fn neg(p: &ZPoly) -> ZPoly {
        ZPoly::zero(p.vars()).sub(p)
    }

    #[test]
    fn single_arc_out_and_in() {
        let g = ColoredDigraph::from_arcs(2, 2, &[(0, 1, 1)]).unwrap();
        let out = build_laplacian(&g, Orientation::Out, Mode::Unweighted).unwrap();
        let z = ZPoly::zero(1);
        assert_eq!(out.entries(), &[x1(), neg(&x1()), z.clone(), z.clone()]);
        let inn = build_laplacian(&g, Orientation::In, Mode::Unweighted).unwrap();
        assert_eq!(inn.entries(), &[z.clone(), z, neg(&x1()), x1()]);
    }

    #[test]
    fn weighted_color_q_is_constant() {
        let g = ColoredDigraph::from_weighted_arcs(2, 2, &[(0, 1, 2, 7)]).unwrap();
        let m = build_laplacian(&g, Orientation::Out, Mode::Weighted).unwrap();
        let seven = ZPoly::constant(1, 7);
        assert_eq!(
            m.entries(),
            &[seven.clone(), neg(&seven), ZPoly::zero(1), ZPoly::zero(1)]
        );
    }

    #[test]
    fn weighted_rejects_duplicates_and_unweighted() {
        let g = ColoredDigraph::from_weighted_arcs(2, 2, &[(0, 1, 1, 2), (0, 1, 1, 5)]).unwrap();
        assert_eq!(
            build_laplacian(&g, Orientation::Out, Mode::Weighted),
            Err(Error::DuplicateEdge { tail: 0, head: 1, color: 1 })
        );
        let g = ColoredDigraph::from_arcs(2, 2, &[(0, 1, 1)]).unwrap();
        assert_eq!(
            build_laplacian(&g, Orientation::Out, Mode::Weighted),
            Err(Error::Unweighted)
        );
    }

    #[test]
    fn minor_examples() {
        let one = SymbolicMatrix::new(1, 0, vec![ZPoly::constant(0, 4)]).unwrap();
        assert_eq!(one.minor(0).unwrap().dim(), 0);

        let m = SymbolicMatrix::new(2, 0, (1..=4).map(|v| ZPoly::constant(0, v)).collect()).unwrap();
        assert_eq!(m.minor(0).unwrap().entries(), &[ZPoly::constant(0, 4)]);

        let m = SymbolicMatrix::new(3, 0, (1..=9).map(|v| ZPoly::constant(0, v)).collect()).unwrap();
        let kept: Vec<ZPoly> = [1, 3, 7, 9].iter().map(|&v| ZPoly::constant(0, v)).collect();
        assert_eq!(m.minor(1).unwrap().entries(), kept.as_slice());
        assert_eq!(m.minor(3), Err(Error::IndexOutOfRange { index: 3, dim: 3 }));
    }

    #[test]
    fn rejects_quadratic_entries() {
        let sq = x1().mul(&x1());
        assert_eq!(
            SymbolicMatrix::new(1, 1, vec![sq]),
            Err(Error::EntryDegree { row: 0, col: 0 })
        );
    }

    #[test]
    fn rows_sum_to_zero() {
        let g = ColoredDigraph::from_arcs(3, 3, &[(0, 1, 1), (0, 1, 1), (1, 2, 3), (2, 0, 2)]).unwrap();
        let m = build_laplacian(&g, Orientation::Out, Mode::Unweighted).unwrap();
        for i in 0..3 {
            let row = (0..3).fold(ZPoly::zero(2), |acc, j| acc.add(m.get(i, j)));
            assert!(row.is_zero());
        }
        let m = build_laplacian(&g, Orientation::In, Mode::Unweighted).unwrap();
        assert_eq!(m, build_laplacian(&g.reverse(), Orientation::Out, Mode::Unweighted).unwrap());
        for i in 0..3 {
            let row = (0..3).fold(ZPoly::zero(2), |acc, j| acc.add(m.get(i, j)));
            assert!(row.is_zero());
        }
    }

    #[test]
    fn self_loop_only_on_diagonal() {
        let g = ColoredDigraph::with_loops(vec!["a".into()], 1, [(0, 0, 1, None)]).unwrap();
        let m = build_laplacian(&g, Orientation::Out, Mode::Unweighted).unwrap();
        assert_eq!(m.entries(), &[ZPoly::constant(0, 1)]);
    }
}
