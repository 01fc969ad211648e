//! Brute-force ground truth for small instances.
//!
//! Nothing here touches polynomials or determinants: arborescences are
//! enumerated by choosing one incoming arc per non-root vertex, functional
//! subgraphs by choosing one outgoing arc per vertex, and spanning trees by
//! choosing edge subsets with a union-find.

use std::collections::BTreeMap;

use crate::arborescence::Arborescence;
use crate::error::{Error, Result};
use crate::graph::{ColorConstraint, ColoredDigraph, ColoredMultigraph, Edge, VertexId};
use crate::minweight::WeightedInstance;

pub const DEFAULT_CAP: usize = 7;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Histogram over colors `1..q` (the color-`q` count is left implicit).
fn histogram<'a>(q: usize, edges: impl IntoIterator<Item = &'a Edge>) -> Vec<u32> {
    let mut hist = vec![0; q - 1];
    for e in edges {
        if (e.color as usize) < q {
            hist[e.color as usize - 1] += 1;
        }
    }
    hist
}

pub fn enumerate_arborescences(g: &ColoredDigraph, s: VertexId) -> Result<Vec<Arborescence>> {
    enumerate_arborescences_capped(g, s, DEFAULT_CAP)
}

/// Every s-arborescence exactly once, in lexicographic order of the vector
/// of chosen edge ids (vertices in index order).
pub fn enumerate_arborescences_capped(g: &ColoredDigraph, s: VertexId, cap: usize) -> Result<Vec<Arborescence>> {
    let n = g.n();
    check_cap(n, cap)?;
    g.check_vertex(s)?;
    let mut incoming: Vec<Vec<&Edge>> = vec![Vec::new(); n];
    for e in g.edges() {
        if e.head != s && e.tail != e.head {
            incoming[e.head].push(e);
        }
    }
    let order: Vec<VertexId> = (0..n).filter(|&v| v != s).collect();
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut chosen = Vec::with_capacity(order.len());
    let mut out = Vec::new();
    search(&order, 0, &incoming, &mut parent, &mut chosen, &mut |ids| {
        out.push(Arborescence {
            root: s,
            edges: ids.to_vec(),
        });
    });
    Ok(out)
}

fn search(
    order: &[VertexId],
    depth: usize,
    incoming: &[Vec<&Edge>],
    parent: &mut Vec<Option<VertexId>>,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let Some(&v) = order.get(depth) else {
        emit(chosen);
        return;
    };
    for e in &incoming[v] {
        parent[v] = Some(e.tail);
        if !closes_cycle(parent, v) {
            chosen.push(e.id);
            search(order, depth + 1, incoming, parent, chosen, emit);
            chosen.pop();
        }
        parent[v] = None;
    }
}

/// Walks parent pointers up from `v`; true if the walk returns to `v`.
fn closes_cycle(parent: &[Option<VertexId>], v: VertexId) -> bool {
    let mut cur = v;
    for _ in 0..parent.len() {
        match parent[cur] {
            Some(p) if p == v => return true,
            Some(p) => cur = p,
            None => return false,
        }
    }
    false
}

/// Arborescence counts keyed by the colors-`1..q` histogram.
pub fn oracle_table(g: &ColoredDigraph, s: VertexId) -> Result<BTreeMap<Vec<u32>, u64>> {
    let mut table = BTreeMap::new();
    for t in enumerate_arborescences(g, s)? {
        let hist = histogram(g.q(), t.edges.iter().map(|&id| g.edge(id).expect("host edge")));
        *table.entry(hist).or_insert(0) += 1;
    }
    Ok(table)
}

pub fn oracle_count(g: &ColoredDigraph, s: VertexId, alpha: &ColorConstraint) -> Result<u64> {
    alpha.check_len(g.q())?;
    Ok(oracle_table(g, s)?.get(alpha.as_slice()).copied().unwrap_or(0))
}

/// Minimum weight over `alpha`-colored arborescences and how many attain it.
pub fn oracle_min_weight(inst: &WeightedInstance) -> Result<Option<(u64, u64)>> {
    let g = inst.graph();
    let mut best: Option<(u64, u64)> = None;
    for t in enumerate_arborescences(g, inst.root())? {
        let edges: Vec<&Edge> = t.edges.iter().map(|&id| g.edge(id).expect("host edge")).collect();
        if histogram(g.q(), edges.iter().copied()) != inst.alpha().as_slice() {
            continue;
        }
        let w: u64 = edges.iter().map(|e| e.weight.expect("weighted instance")).sum();
        best = match best {
            Some((bw, k)) if bw == w => Some((bw, k + 1)),
            Some((bw, k)) if bw < w => Some((bw, k)),
            _ => Some((w, 1)),
        };
    }
    Ok(best)
}

/// Functional subgraphs (one out-arc per vertex, self-loops allowed) whose
/// only cycles are self-loops, counted by histogram.
pub fn functional_table(g: &ColoredDigraph) -> Result<BTreeMap<Vec<u32>, u64>> {
    let n = g.n();
    check_cap(n, DEFAULT_CAP)?;
    let mut outgoing: Vec<Vec<&Edge>> = vec![Vec::new(); n];
    for e in g.edges() {
        outgoing[e.tail].push(e);
    }
    let mut table = BTreeMap::new();
    let mut pick = vec![0usize; n];
    if outgoing.iter().any(Vec::is_empty) {
        return Ok(table);
    }
    loop {
        let chosen: Vec<&Edge> = (0..n).map(|v| outgoing[v][pick[v]]).collect();
        if only_loop_cycles(&chosen) {
            *table.entry(histogram(g.q(), chosen.iter().copied())).or_insert(0) += 1;
        }
        // odometer increment
        let mut v = 0;
        loop {
            if v == n {
                return Ok(table);
            }
            pick[v] += 1;
            if pick[v] < outgoing[v].len() {
                break;
            }
            pick[v] = 0;
            v += 1;
        }
    }
}

/// `chosen[v]` is the out-arc of `v`. Every walk must end in a self-loop.
fn only_loop_cycles(chosen: &[&Edge]) -> bool {
    let n = chosen.len();
    (0..n).all(|start| {
        let mut cur = start;
        for _ in 0..=n {
            let e = chosen[cur];
            if e.head == cur {
                return true;
            }
            cur = e.head;
        }
        false
    })
}

pub fn enumerate_functional(g: &ColoredDigraph, alpha: &ColorConstraint) -> Result<u64> {
    alpha.check_len(g.q())?;
    Ok(functional_table(g)?.get(alpha.as_slice()).copied().unwrap_or(0))
}

/// Spanning trees of an undirected multigraph counted by histogram, by
/// subset search with a union-find.
pub fn spanning_tree_table(g: &ColoredMultigraph) -> Result<BTreeMap<Vec<u32>, u64>> {
    let n = g.n();
    check_cap(n, DEFAULT_CAP)?;
    let edges: Vec<&Edge> = g.edges().iter().filter(|e| e.tail != e.head).collect();
    let mut table = BTreeMap::new();
    let mut picked: Vec<&Edge> = Vec::new();
    grow_forest(&edges, 0, n, &mut picked, &mut |tree| {
        *table.entry(histogram(g.q(), tree.iter().copied())).or_insert(0) += 1;
    });
    Ok(table)
}

fn grow_forest<'a>(
    edges: &[&'a Edge],
    from: usize,
    n: usize,
    picked: &mut Vec<&'a Edge>,
    emit: &mut dyn FnMut(&[&'a Edge]),
) {
    if picked.len() + 1 == n {
        emit(picked);
        return;
    }
    let needed = n - 1 - picked.len();
    for k in from..edges.len() {
        if edges.len() - k < needed {
            break;
        }
        picked.push(edges[k]);
        if is_forest(picked, n) {
            grow_forest(edges, k + 1, n, picked, emit);
        }
        picked.pop();
    }
}

fn is_forest(edges: &[&Edge], n: usize) -> bool {
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], mut x: usize) -> usize {
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for e in edges {
        let (a, b) = (find(&mut root, e.tail), find(&mut root, e.head));
        if a == b {
            return false;
        }
        root[a] = b;
    }
    true
}

pub fn oracle_spanning_trees(g: &ColoredMultigraph, alpha: &ColorConstraint) -> Result<u64> {
    alpha.check_len(g.q())?;
    Ok(spanning_tree_table(g)?.get(alpha.as_slice()).copied().unwrap_or(0))
}
