//! Minimum-weight color-constrained arborescences.
//!
//! With arc weights replaced by `r^w(e)` for a prime `r`, the root-minor
//! determinant coefficient at `x^alpha` is `c(alpha, r) = sum_T r^w(T)` over
//! all `alpha`-colored arborescences `T`. Its `r`-adic valuation is at least
//! the minimum weight, with equality unless `r` divides the number of
//! minimizers. Taking the smallest valuation over `n` primes above `m`
//! recovers the minimum exactly, since their product exceeds `m^n`.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::arborescence::Arborescence;
use crate::error::{Error, Result};
use crate::graph::{ColorConstraint, ColoredDigraph, EdgeId, VertexId};
use crate::laplacian::{build_with, Orientation};
use crate::modp::next_prime;
use crate::poly::valuation;
use crate::symdet::{det_poly_over, select_primes, Engine};

/// Default cap on CRT primes per determinant.
pub const DEFAULT_PRIME_BUDGET: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinWeightConfig {
    /// Maximum number of CRT primes a single weighted determinant may use.
    pub prime_budget: usize,
}

impl Default for MinWeightConfig {
    fn default() -> Self {
        Self {
            prime_budget: DEFAULT_PRIME_BUDGET,
        }
    }
}

/// A weighted graph without same-color parallel arcs, a root and a color
/// constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedInstance {
    graph: ColoredDigraph,
    root: VertexId,
    alpha: ColorConstraint,
}

impl WeightedInstance {
    /// Keeps the lightest arc of every same-color parallel class.
    pub fn new(g: &ColoredDigraph, root: VertexId, alpha: ColorConstraint) -> Result<Self> {
        if !g.is_weighted() {
            return Err(Error::Unweighted);
        }
        g.check_vertex(root)?;
        alpha.check_len(g.q())?;
        Ok(Self {
            graph: g.dedup_min_weight(),
            root,
            alpha,
        })
    }

    pub fn graph(&self) -> &ColoredDigraph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn alpha(&self) -> &ColorConstraint {
        &self.alpha
    }

    pub fn max_weight(&self) -> u64 {
        self.graph.max_weight()
    }

    fn with_graph(&self, graph: ColoredDigraph) -> Self {
        Self {
            graph,
            root: self.root,
            alpha: self.alpha.clone(),
        }
    }
}

/// `c(alpha, r) = sum over alpha-colored arborescences T of r^w(T)`.
pub fn c_alpha_r(inst: &WeightedInstance, r: u64, cfg: &MinWeightConfig, engine: &Engine) -> Result<BigUint> {
    let g = inst.graph.remove_in_arcs(inst.root);
    if inst.alpha.implied_last(g.n()).is_none() {
        return Ok(BigUint::zero());
    }
    let n = g.n() as u32;
    let m = g.edge_count().max(1);
    let w_max = g.max_weight();
    let lap = build_with(&g, Orientation::In, |e| {
        BigInt::from(r).pow(e.weight.expect("weighted instance") as u32)
    });
    let minor = lap.minor(inst.root)?;

    // m^n * r^(n W)
    let bound = BigUint::from(m).pow(n) * BigUint::from(r).pow(n * w_max as u32);
    let basis = select_primes(m.max(2 * g.n()) as u64, &bound)?;
    if basis.len() > cfg.prime_budget {
        return Err(Error::PrimeBudget {
            needed: basis.len(),
            budget: cfg.prime_budget,
        });
    }
    let det = det_poly_over(&minor, &basis, engine)?;
    Ok(det.coeff(inst.alpha.as_slice()))
}

/// The `n` consecutive primes above `max(m, 2n)`.
pub fn weight_primes(inst: &WeightedInstance) -> Result<Vec<u64>> {
    let g = &inst.graph;
    let floor = g.edge_count().max(2 * g.n()) as u64;
    let mut primes = Vec::with_capacity(g.n());
    let mut last = floor;
    for _ in 0..g.n() {
        last = next_prime(last).ok_or(Error::PrimesExhausted { lower_bound: floor })?;
        primes.push(last);
    }
    Ok(primes)
}

fn min_weight_with(
    inst: &WeightedInstance,
    primes: &[u64],
    cfg: &MinWeightConfig,
    engine: &Engine,
) -> Result<Option<u64>> {
    let mut best: Option<u64> = None;
    for (k, &r) in primes.iter().enumerate() {
        let c = c_alpha_r(inst, r, cfg, engine)?;
        if c.is_zero() {
            // the arborescence count does not depend on r
            debug_assert_eq!(k, 0);
            return Ok(None);
        }
        let f = u64::from(valuation(&c, r)?);
        best = Some(best.map_or(f, |b| b.min(f)));
    }
    Ok(best)
}

/// Minimum total weight of an `alpha`-colored arborescence, or `None` when
/// there is none.
pub fn min_weight(inst: &WeightedInstance, cfg: &MinWeightConfig, engine: &Engine) -> Result<Option<u64>> {
    min_weight_with(inst, &weight_primes(inst)?, cfg, engine)
}

/// A minimum-weight `alpha`-colored arborescence and its weight. Edges are
/// tried in ascending id order and deleted whenever the minimum survives.
pub fn find_min(
    inst: &WeightedInstance,
    cfg: &MinWeightConfig,
    engine: &Engine,
) -> Result<Option<(Arborescence, u64)>> {
    let primes = weight_primes(inst)?;
    let Some(target) = min_weight_with(inst, &primes, cfg, engine)? else {
        return Ok(None);
    };
    let mut current = inst.with_graph(inst.graph.remove_in_arcs(inst.root));
    let ids: Vec<EdgeId> = current.graph.edges().iter().map(|e| e.id).collect();
    for id in ids {
        let candidate = current.with_graph(current.graph.remove_edge(id)?);
        if min_weight_with(&candidate, &primes, cfg, engine)? == Some(target) {
            current = candidate;
        }
    }
    let tree = Arborescence {
        root: inst.root,
        edges: current.graph.edges().iter().map(|e| e.id).collect(),
    };
    debug_assert!(tree.validate(&inst.graph).is_ok());
    debug_assert_eq!(tree.total_weight(&inst.graph), target);
    Ok(Some((tree, target)))
}
