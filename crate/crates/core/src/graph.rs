//! Edge-colored, optionally weighted multidigraphs and the transforms the
//! counting and search algorithms need.
//!
//! Vertices are `0..n` internally and carry the string labels read from the
//! graph file. Colors are `1..=q`; color `q` is the one absorbed into the
//! constant term of every symbolic Laplacian. Edge ids are input order and
//! never renumbered by a transform.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub color: u32,
    pub weight: Option<u64>,
}

/// Prescribed number of edges for each of the colors `1..q`. The count for
/// color `q` is implied by the total `n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ColorConstraint(Vec<u32>);

impl ColorConstraint {
    pub fn new(alpha: Vec<u32>) -> Self {
        Self(alpha)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    /// Number of color-`q` edges an arborescence on `n` vertices must use,
    /// or `None` when the constraint already asks for more than `n - 1` edges.
    pub fn implied_last(&self, n: usize) -> Option<u32> {
        let budget = n.saturating_sub(1) as u64;
        budget.checked_sub(self.total()).map(|r| r as u32)
    }

    pub(crate) fn check_len(&self, q: usize) -> Result<()> {
        if self.0.len() + 1 != q {
            return Err(Error::AlphaLength {
                expected: q - 1,
                got: self.0.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<u32>> for ColorConstraint {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl FromStr for ColorConstraint {
    type Err = String;

    /// Comma-separated nonnegative integers; the empty string is the empty
    /// constraint used when `q = 1`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self(Vec::new()));
        }
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("invalid color count {tok:?}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl fmt::Display for ColorConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

type ArcKey = (VertexId, VertexId, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDigraph {
    labels: Vec<String>,
    q: usize,
    edges: Vec<Edge>,
    index: BTreeMap<ArcKey, Vec<EdgeId>>,
}

impl ColoredDigraph {
    /// Builds a loopless graph. Edge ids are assigned in iteration order.
    pub fn new<I>(labels: Vec<String>, q: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u32, Option<u64>)>,
    {
        Self::build(labels, q, number(edges), false)
    }

    /// Like [`ColoredDigraph::new`] but accepts self-loops. Only the
    /// functional-subgraph counter and the brute-force oracle consume such
    /// graphs.
    pub fn with_loops<I>(labels: Vec<String>, q: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u32, Option<u64>)>,
    {
        Self::build(labels, q, number(edges), true)
    }

    /// Unweighted graph on vertices labelled `"1"..="n"`.
    pub fn from_arcs(n: usize, q: usize, arcs: &[(VertexId, VertexId, u32)]) -> Result<Self> {
        Self::new(
            default_labels(n),
            q,
            arcs.iter().map(|&(t, h, c)| (t, h, c, None)),
        )
    }

    /// Weighted graph on vertices labelled `"1"..="n"`.
    pub fn from_weighted_arcs(
        n: usize,
        q: usize,
        arcs: &[(VertexId, VertexId, u32, u64)],
    ) -> Result<Self> {
        Self::new(
            default_labels(n),
            q,
            arcs.iter().map(|&(t, h, c, w)| (t, h, c, Some(w))),
        )
    }

    fn build(labels: Vec<String>, q: usize, edges: Vec<Edge>, allow_loops: bool) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph needs at least one vertex".into()));
        }
        if q == 0 {
            return Err(Error::InvalidGraph("graph needs at least one color".into()));
        }
        let weighted = edges.first().map(|e| e.weight.is_some());
        for e in &edges {
            if e.tail >= n {
                return Err(Error::VertexOutOfRange { index: e.tail, n });
            }
            if e.head >= n {
                return Err(Error::VertexOutOfRange { index: e.head, n });
            }
            if e.color == 0 || e.color as usize > q {
                return Err(Error::InvalidGraph(format!(
                    "edge {} has color {} outside [1, {q}]",
                    e.id, e.color
                )));
            }
            if !allow_loops && e.tail == e.head {
                return Err(Error::InvalidGraph(format!("edge {} is a self-loop", e.id)));
            }
            if e.weight == Some(0) {
                return Err(Error::InvalidGraph(format!("edge {} has weight 0", e.id)));
            }
            if Some(e.weight.is_some()) != weighted {
                return Err(Error::InvalidGraph(
                    "edges must be either all weighted or all unweighted".into(),
                ));
            }
        }
        Ok(Self::assemble(labels, q, edges))
    }

    fn assemble(labels: Vec<String>, q: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| e.id);
        let mut index: BTreeMap<ArcKey, Vec<EdgeId>> = BTreeMap::new();
        for e in &edges {
            index.entry((e.tail, e.head, e.color)).or_default().push(e.id);
        }
        Self { labels, q, edges, index }
    }

    fn retain(&self, mut keep: impl FnMut(&Edge) -> bool) -> Self {
        let edges = self.edges.iter().filter(|e| keep(e)).cloned().collect();
        Self::assemble(self.labels.clone(), self.q, edges)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of indeterminates, `q - 1`.
    pub fn vars(&self) -> usize {
        self.q - 1
    }

    /// Edges in ascending id order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|pos| &self.edges[pos])
    }

    /// Raw edge count, parallel duplicates included.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of distinct `(tail, head, color)` triples.
    pub fn distinct_edge_count(&self) -> usize {
        self.index.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { index: v, n: self.n() });
        }
        Ok(())
    }

    /// `d_{ijc}`: number of color-`c` arcs from `i` to `j`.
    pub fn multiplicity(&self, tail: VertexId, head: VertexId, color: u32) -> usize {
        self.index.get(&(tail, head, color)).map_or(0, Vec::len)
    }

    /// Ids of the parallel arcs `(tail, head, color)`, ascending.
    pub fn parallel(&self, tail: VertexId, head: VertexId, color: u32) -> &[EdgeId] {
        self.index.get(&(tail, head, color)).map_or(&[], Vec::as_slice)
    }

    /// Iterates `((tail, head, color), ids)` over every populated triple.
    pub fn multiplicities(&self) -> impl Iterator<Item = (ArcKey, &[EdgeId])> {
        self.index.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// True when every edge carries a weight (vacuously true with no edges).
    pub fn is_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_some())
    }

    pub fn max_weight(&self) -> u64 {
        self.edges.iter().filter_map(|e| e.weight).max().unwrap_or(0)
    }

    pub fn has_duplicates(&self) -> bool {
        self.index.values().any(|ids| ids.len() > 1)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.tail == e.head)
    }

    pub fn reverse(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                tail: e.head,
                head: e.tail,
                ..e.clone()
            })
            .collect();
        Self::assemble(self.labels.clone(), self.q, edges)
    }

    /// Keeps one arc per `(tail, head, color)`: the lightest, ties broken
    /// by smallest id. Unweighted graphs keep the smallest id.
    pub fn dedup_min_weight(&self) -> Self {
        let mut keep = Vec::with_capacity(self.index.len());
        for ids in self.index.values() {
            let best = ids
                .iter()
                .map(|&id| self.edge(id).expect("indexed edge exists"))
                .min_by_key(|e| (e.weight.unwrap_or(0), e.id))
                .expect("index entries are nonempty");
            keep.push(best.id);
        }
        keep.sort_unstable();
        self.retain(|e| keep.binary_search(&e.id).is_ok())
    }

    pub fn remove_in_arcs(&self, s: VertexId) -> Self {
        self.retain(|e| e.head != s)
    }

    pub fn remove_edge(&self, id: EdgeId) -> Result<Self> {
        if self.edge(id).is_none() {
            return Err(Error::UnknownEdge(id));
        }
        Ok(self.retain(|e| e.id != id))
    }

    /// Re-inserts an edge record under its own id. Fails if the id is taken
    /// or the record does not fit the graph.
    pub fn insert_edge(&self, edge: Edge) -> Result<Self> {
        if self.edge(edge.id).is_some() {
            return Err(Error::InvalidGraph(format!("edge id {} already present", edge.id)));
        }
        let mut edges = self.edges.clone();
        edges.push(edge);
        Self::build(self.labels.clone(), self.q, edges, self.has_loops())
    }

    /// Adds a color-`q` self-loop at `s` with the next free id.
    pub fn with_root_loop(&self, s: VertexId) -> Result<Self> {
        self.check_vertex(s)?;
        let id = self.edges.last().map_or(0, |e| e.id + 1);
        let mut edges = self.edges.clone();
        edges.push(Edge {
            id,
            tail: s,
            head: s,
            color: self.q as u32,
            weight: self.edges.first().and_then(|e| e.weight.map(|_| 1)),
        });
        Self::build(self.labels.clone(), self.q, edges, true)
    }
}

/// Undirected edge-colored multigraph. Edges are stored with the endpoint
/// order they were given in; orientation carries no meaning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredMultigraph {
    inner: ColoredDigraph,
}

impl ColoredMultigraph {
    pub fn new<I>(labels: Vec<String>, q: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u32, Option<u64>)>,
    {
        Ok(Self {
            inner: ColoredDigraph::new(labels, q, edges)?,
        })
    }

    pub fn from_edges(n: usize, q: usize, edges: &[(VertexId, VertexId, u32)]) -> Result<Self> {
        Ok(Self {
            inner: ColoredDigraph::from_arcs(n, q, edges)?,
        })
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    pub fn q(&self) -> usize {
        self.inner.q()
    }

    pub fn edges(&self) -> &[Edge] {
        self.inner.edges()
    }

    pub fn labels(&self) -> &[String] {
        self.inner.labels()
    }

    /// Replaces every edge `{u, v}` with id `k` by the arcs `(u, v)` with id
    /// `2k` and `(v, u)` with id `2k + 1`, both of the same color.
    pub fn bidirect(&self) -> ColoredDigraph {
        let edges = self
            .inner
            .edges()
            .iter()
            .flat_map(|e| {
                let fwd = Edge {
                    id: 2 * e.id,
                    ..e.clone()
                };
                let back = Edge {
                    id: 2 * e.id + 1,
                    tail: e.head,
                    head: e.tail,
                    ..e.clone()
                };
                [fwd, back]
            })
            .collect();
        ColoredDigraph::assemble(self.inner.labels.clone(), self.inner.q, edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedGraph {
    Directed(ColoredDigraph),
    Undirected(ColoredMultigraph),
}

fn number<I>(edges: I) -> Vec<Edge>
where
    I: IntoIterator<Item = (VertexId, VertexId, u32, Option<u64>)>,
{
    edges
        .into_iter()
        .enumerate()
        .map(|(id, (tail, head, color, weight))| Edge {
            id,
            tail,
            head,
            color,
            weight,
        })
        .collect()
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn parse_int(tok: &str, line: usize, what: &str) -> Result<i64, ParseError> {
    tok.parse::<i64>().map_err(|_| ParseError::Malformed {
        line,
        reason: format!("{what} {tok:?} is not an integer"),
    })
}

/// Parses the graph text format:
///
/// ```text
/// n q
/// [directed|undirected]
/// <tail> <head> <color> [<weight>]
/// ...
/// ```
///
/// Blank lines and lines starting with `#` are ignored. Vertex labels are
/// numbered by first appearance; vertices never mentioned are given
/// placeholder labels `#k`.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut orientation: Option<bool> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    let mut edges: Vec<(VertexId, VertexId, u32, Option<u64>)> = Vec::new();
    let mut weighted: Option<bool> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();

        let Some((n, q)) = header else {
            if toks.len() != 2 {
                return Err(ParseError::MissingHeader { line });
            }
            let n = parse_int(toks[0], line, "vertex count")?;
            let q = parse_int(toks[1], line, "color count")?;
            if n < 1 || q < 1 {
                return Err(ParseError::Malformed {
                    line,
                    reason: "vertex and color counts must be positive".into(),
                });
            }
            header = Some((n as usize, q as usize));
            continue;
        };

        if toks.len() == 1 && matches!(toks[0], "directed" | "undirected") {
            if orientation.is_some() {
                return Err(ParseError::DuplicateHeader { line });
            }
            if !edges.is_empty() {
                return Err(ParseError::Malformed {
                    line,
                    reason: "orientation must precede the edge lines".into(),
                });
            }
            orientation = Some(toks[0] == "directed");
            continue;
        }
        if toks.len() == 2 && toks.iter().all(|t| t.parse::<i64>().is_ok()) {
            return Err(ParseError::DuplicateHeader { line });
        }
        if toks.len() != 3 && toks.len() != 4 {
            return Err(ParseError::Malformed {
                line,
                reason: format!("expected 3 or 4 fields, found {}", toks.len()),
            });
        }

        let color = parse_int(toks[2], line, "color")?;
        if color < 1 || color as usize > q {
            return Err(ParseError::ColorOutOfRange { line, color, q });
        }
        let weight = match toks.get(3) {
            Some(tok) => {
                let w = parse_int(tok, line, "weight")?;
                if w < 1 {
                    return Err(ParseError::NonPositiveWeight { line, weight: w });
                }
                Some(w as u64)
            }
            None => None,
        };
        if *weighted.get_or_insert(weight.is_some()) != weight.is_some() {
            return Err(ParseError::MixedWeights { line });
        }
        if toks[0] == toks[1] {
            return Err(ParseError::SelfLoop {
                line,
                label: toks[0].to_string(),
            });
        }
        let mut vertex = |label: &str| -> Result<VertexId, ParseError> {
            if let Some(&v) = ids.get(label) {
                return Ok(v);
            }
            if labels.len() == n {
                return Err(ParseError::TooManyVertices { line, n });
            }
            labels.push(label.to_string());
            ids.insert(label.to_string(), labels.len() - 1);
            Ok(labels.len() - 1)
        };
        let tail = vertex(toks[0])?;
        let head = vertex(toks[1])?;
        edges.push((tail, head, color as u32, weight));
    }

    let Some((n, q)) = header else {
        return Err(ParseError::MissingHeader {
            line: last_line.max(1),
        });
    };
    let mut k = 1;
    while labels.len() < n {
        let mut candidate = format!("#{k}");
        while ids.contains_key(&candidate) {
            candidate.insert(0, '#');
        }
        ids.insert(candidate.clone(), labels.len());
        labels.push(candidate);
        k += 1;
    }

    let graph = ColoredDigraph::build(labels, q, number(edges), false)
        .expect("parser validated every edge");
    Ok(if orientation.unwrap_or(true) {
        ParsedGraph::Directed(graph)
    } else {
        ParsedGraph::Undirected(ColoredMultigraph { inner: graph })
    })
}
