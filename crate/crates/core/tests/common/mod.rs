//! Seeded corpora and a cofactor-expansion determinant shared by the
//! integration tests.

#![allow(dead_code)]

use ccarb::graph::ColoredMultigraph;
use ccarb::{ColoredDigraph, ExponentVector, SymbolicMatrix, ZPoly};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Multiplicity in `0..=max_mult`, zero with probability `1 - density`.
fn multiplicity(rng: &mut ChaCha8Rng, density: f64, max_mult: usize) -> usize {
    if rng.gen_bool(density) {
        rng.gen_range(1..=max_mult)
    } else {
        0
    }
}

/// Loopless digraph with `n <= 5`, `q <= 3` and at most two parallel arcs
/// per (tail, head, color).
pub fn random_digraph(rng: &mut ChaCha8Rng) -> ColoredDigraph {
    let n = rng.gen_range(1..=5);
    let q = rng.gen_range(1..=3);
    let density = rng.gen_range(0.15..0.6);
    let mut arcs = Vec::new();
    for t in 0..n {
        for h in 0..n {
            if t == h {
                continue;
            }
            for c in 1..=q as u32 {
                for _ in 0..multiplicity(rng, density, 2) {
                    arcs.push((t, h, c));
                }
            }
        }
    }
    shuffle_ids(rng, &mut arcs);
    ColoredDigraph::from_arcs(n, q, &arcs).expect("valid digraph")
}

fn shuffle_ids<T>(rng: &mut ChaCha8Rng, items: &mut [T]) {
    use rand::seq::SliceRandom;
    items.shuffle(rng);
}

pub fn digraph_corpus(seed: u64, size: usize) -> Vec<ColoredDigraph> {
    let mut r = rng(seed);
    (0..size).map(|_| random_digraph(&mut r)).collect()
}

/// Undirected multigraph with `n <= 5`, `q <= 3`.
pub fn random_multigraph(rng: &mut ChaCha8Rng) -> ColoredMultigraph {
    let n = rng.gen_range(1..=5);
    let q = rng.gen_range(1..=3);
    let density = rng.gen_range(0.2..0.7);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for c in 1..=q as u32 {
                for _ in 0..multiplicity(rng, density, 2) {
                    edges.push((u, v, c));
                }
            }
        }
    }
    shuffle_ids(rng, &mut edges);
    ColoredMultigraph::from_edges(n, q, &edges).expect("valid multigraph")
}

/// Digraph with self-loops allowed, `n <= 4`, `q <= 3`.
pub fn random_looped(rng: &mut ChaCha8Rng) -> ColoredDigraph {
    let n = rng.gen_range(1..=4);
    let q = rng.gen_range(1..=3);
    let density = rng.gen_range(0.15..0.5);
    let mut arcs = Vec::new();
    for t in 0..n {
        for h in 0..n {
            for c in 1..=q as u32 {
                for _ in 0..multiplicity(rng, density, 2) {
                    arcs.push((t, h, c, None));
                }
            }
        }
    }
    shuffle_ids(rng, &mut arcs);
    let labels = (1..=n).map(|v| v.to_string()).collect();
    ColoredDigraph::with_loops(labels, q, arcs).expect("valid looped digraph")
}

/// Weighted loopless digraph, `n <= 5`, weights in `1..=max_w` with
/// `max_w <= 4`. Parallel same-color arcs may occur.
pub fn random_weighted(rng: &mut ChaCha8Rng) -> ColoredDigraph {
    let n = rng.gen_range(1..=5);
    let q = rng.gen_range(1..=3);
    let max_w = rng.gen_range(1..=4u64);
    let density = rng.gen_range(0.2..0.7);
    let mut arcs = Vec::new();
    for t in 0..n {
        for h in 0..n {
            if t == h {
                continue;
            }
            for c in 1..=q as u32 {
                for _ in 0..multiplicity(rng, density, 2) {
                    arcs.push((t, h, c, rng.gen_range(1..=max_w)));
                }
            }
        }
    }
    shuffle_ids(rng, &mut arcs);
    ColoredDigraph::from_weighted_arcs(n, q, &arcs).expect("valid weighted digraph")
}

/// Every `alpha` in `N^(q-1)` with total at most `n - 1`.
pub fn all_alphas(q: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 1..q {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=(n as u32 - 1 - used)).map(move |k| {
                    let mut next = prefix.clone();
                    next.push(k);
                    next
                })
            })
            .collect();
    }
    out
}

/// Random multilinear polynomial with small coefficients; nonnegative
/// unless `signed`.
pub fn random_entry(rng: &mut ChaCha8Rng, vars: usize, signed: bool) -> ZPoly {
    let mut p = ZPoly::zero(vars);
    for mask in 0..(1u32 << vars) {
        if !rng.gen_bool(0.45) {
            continue;
        }
        let exp = ExponentVector::new((0..vars).map(|v| (mask >> v) & 1).collect());
        let c: i64 = if signed {
            rng.gen_range(-3..=3)
        } else {
            rng.gen_range(0..=3)
        };
        p.add_term(exp, BigInt::from(c));
    }
    p
}

pub fn random_matrix(rng: &mut ChaCha8Rng, signed: bool) -> SymbolicMatrix {
    let dim = rng.gen_range(0..=4);
    let vars = rng.gen_range(0..=3);
    let entries = (0..dim * dim).map(|_| random_entry(rng, vars, signed)).collect();
    SymbolicMatrix::new(dim, vars, entries).expect("multilinear entries")
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &SymbolicMatrix) -> ZPoly {
    fn go(m: &SymbolicMatrix, rows: &[usize], cols: &[usize]) -> ZPoly {
        if rows.is_empty() {
            return ZPoly::constant(m.vars(), 1);
        }
        let mut acc = ZPoly::zero(m.vars());
        for (k, &c) in cols.iter().enumerate() {
            let entry = m.get(rows[0], c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry.mul(&go(m, &rows[1..], &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    let idx: Vec<usize> = (0..m.dim()).collect();
    go(m, &idx, &idx)
}

/// Product of row sums of absolute coefficient mass; bounds every
/// coefficient of the determinant in absolute value.
pub fn det_coefficient_bound(m: &SymbolicMatrix) -> BigUint {
    let mut bound = BigUint::from(1u32);
    for i in 0..m.dim() {
        let row: BigInt = (0..m.dim())
            .flat_map(|j| m.get(i, j).terms().values().map(|c| c.abs()).collect::<Vec<_>>())
            .sum();
        bound *= row.to_biguint().expect("absolute values");
    }
    bound
}
