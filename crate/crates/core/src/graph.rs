//! Prefix graphs.
//!
//! For a feasible array `y[1..n]` the prefix graph has vertices `1..n` and,
//! for every `i` in `2..n`:
//!
//! - a positive edge `(h, i+h-1)` for each `h` in `1..y[i]` (positions that
//!   must match);
//! - a negative edge `(1+y[i], i+y[i])` when `i+y[i] <= n` (positions that
//!   must not match).
//!
//! Every edge `(u, v)` has a unique source index `i = v-u+1`, so neither edge
//! set contains duplicates, and the two sets are disjoint.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::prefix_table::FeasibleArray;
use crate::string::{IndeterminateString, Letter};

/// Undirected edge with `1 <= u < v <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        debug_assert!(1 <= u && u < v);
        Edge { u, v }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixGraph {
    n: usize,
    pos_edges: Vec<Edge>,
    neg_edges: Vec<Edge>,
    /// 0-based by vertex; neighbor vertices are 1-based and ascending.
    neg_adj: Vec<Vec<usize>>,
}

/// Two stable counting-sort passes, by `v` then by `u`: ascending `(u, v)`
/// in `O(|edges| + n)`.
fn radix_sort_edges(edges: Vec<Edge>, n: usize) -> Vec<Edge> {
    fn pass(edges: Vec<Edge>, n: usize, key: impl Fn(&Edge) -> usize) -> Vec<Edge> {
        let mut start = vec![0usize; n + 2];
        for e in &edges {
            start[key(e) + 1] += 1;
        }
        for k in 1..start.len() {
            start[k] += start[k - 1];
        }
        let mut out = vec![Edge { u: 0, v: 0 }; edges.len()];
        for e in edges {
            let slot = &mut start[key(&e)];
            out[*slot] = e;
            *slot += 1;
        }
        out
    }
    let by_v = pass(edges, n, |e| e.v);
    pass(by_v, n, |e| e.u)
}

/// Builds the prefix graph of `y`.
pub fn build_prefix_graph(y: &FeasibleArray) -> PrefixGraph {
    let n = y.len();
    let mut pos = Vec::with_capacity(y.as_slice().iter().skip(1).sum());
    let mut neg = Vec::new();
    for i in 2..=n {
        let len = y.get(i);
        pos.extend((1..=len).map(|h| Edge::new(h, i + h - 1)));
        if i + len <= n {
            neg.push(Edge::new(1 + len, i + len));
        }
    }
    let pos_edges = radix_sort_edges(pos, n);
    let neg_edges = radix_sort_edges(neg, n);

    // Both orientations of every negative edge, radix sorted, give ascending
    // neighbor lists.
    let mut doubled: Vec<Edge> = Vec::with_capacity(2 * neg_edges.len());
    for e in &neg_edges {
        doubled.push(Edge { u: e.u, v: e.v });
        doubled.push(Edge { u: e.v, v: e.u });
    }
    let mut neg_adj = vec![Vec::new(); n];
    for e in radix_sort_edges(doubled, n) {
        neg_adj[e.u - 1].push(e.v);
    }

    PrefixGraph {
        n,
        pos_edges,
        neg_edges,
        neg_adj,
    }
}

impl PrefixGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Positive edges, ascending by `(u, v)`.
    pub fn pos_edges(&self) -> &[Edge] {
        &self.pos_edges
    }

    /// Negative edges, ascending by `(u, v)`.
    pub fn neg_edges(&self) -> &[Edge] {
        &self.neg_edges
    }

    /// Ascending negative neighbors of 1-based vertex `v`.
    pub fn neg_neighbors(&self, v: usize) -> &[usize] {
        &self.neg_adj[v - 1]
    }

    /// Degree of every vertex in the positive subgraph (0-based by vertex).
    pub fn positive_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.pos_edges {
            deg[e.u - 1] += 1;
            deg[e.v - 1] += 1;
        }
        deg
    }

    /// Connected components of the positive subgraph.
    pub fn positive_components(&self) -> ComponentLabeling {
        let mut sets = DisjointSets::new(self.n);
        for e in &self.pos_edges {
            sets.union(e.u - 1, e.v - 1);
        }
        // Number components by their smallest vertex: scanning vertices in
        // order meets each root's smallest member first.
        let mut id_of_root = vec![usize::MAX; self.n];
        let mut labels = Vec::with_capacity(self.n);
        let mut count = 0;
        for v in 0..self.n {
            let r = sets.find(v);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = count;
                count += 1;
            }
            labels.push(id_of_root[r]);
        }
        ComponentLabeling { labels, count }
    }

    /// First negative edge whose endpoints share a positive component.
    fn inner_negative_edge(&self, labeling: &ComponentLabeling) -> Option<Edge> {
        self.neg_edges
            .iter()
            .copied()
            .find(|e| labeling.label(e.u) == labeling.label(e.v))
    }
}

/// Component id per vertex, ids dense from 0 and ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    labels: Vec<usize>,
    count: usize,
}

impl ComponentLabeling {
    /// Component id of 1-based vertex `v`.
    pub fn label(&self, v: usize) -> usize {
        self.labels[v - 1]
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Members of each component, ascending, components in id order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (k, &c) in self.labels.iter().enumerate() {
            out[c].push(k + 1);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    pub components: ComponentLabeling,
    /// A negative edge inside one component, when not regular.
    pub witness: Option<Edge>,
}

/// `y` is regular iff every negative edge joins two different components of
/// the positive subgraph.
pub fn is_regular(y: &FeasibleArray) -> Regularity {
    regularity(&build_prefix_graph(y))
}

pub fn regularity(g: &PrefixGraph) -> Regularity {
    let components = g.positive_components();
    let witness = g.inner_negative_edge(&components);
    Regularity {
        regular: witness.is_none(),
        components,
        witness,
    }
}

/// Regular string giving every positive component its own symbol; component
/// `k` (numbered by smallest vertex) gets rank `k+1`.
pub fn regular_string_from_components(
    g: &PrefixGraph,
    labeling: &ComponentLabeling,
) -> Result<IndeterminateString> {
    if let Some(e) = g.inner_negative_edge(labeling) {
        return Err(Error::NotRegular { u: e.u, v: e.v });
    }
    let ranks: Vec<u32> = (1..=g.n).map(|v| labeling.label(v) as u32 + 1).collect();
    IndeterminateString::from_ranks(&ranks)
}

/// String whose letter at `i` is the set of positive edges incident with `i`.
/// Edges are ranked `1..=|E+|` in sorted order; each isolated vertex gets a
/// fresh loop symbol ranked after all edges, in vertex order.
pub fn edge_label_string(g: &PrefixGraph) -> IndeterminateString {
    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); g.n];
    for (k, e) in g.pos_edges.iter().enumerate() {
        let rank = k as u32 + 1;
        incident[e.u - 1].push(rank);
        incident[e.v - 1].push(rank);
    }
    let mut next_loop = g.pos_edges.len() as u32;
    incident
        .into_iter()
        .map(|mut ranks| {
            if ranks.is_empty() {
                next_loop += 1;
                ranks.push(next_loop);
            }
            // Already ascending: edges were visited in sorted order.
            Letter::from_sorted_ranks_unchecked(&ranks)
        })
        .collect()
}

/// Vertices isolated in the positive subgraph, from the array alone: `i` is
/// isolated iff (a) `y[i] = 0` or `i = 1`, (b) `y[j] < i` for all `j >= 2`,
/// and (c) `j + y[j] <= i` for every `j` in `2..i-1`.
pub fn isolated_by_conditions(y: &FeasibleArray) -> Vec<usize> {
    let n = y.len();
    let max_tail = (2..=n).map(|j| y.get(j)).max().unwrap_or(0);
    let mut reach = 0; // max of j + y[j] over 2 <= j < i
    let mut out = Vec::new();
    for i in 1..=n {
        let a = i == 1 || y.get(i) == 0;
        let b = max_tail < i;
        let c = reach <= i;
        if a && b && c {
            out.push(i);
        }
        if i >= 2 {
            reach = reach.max(i + y.get(i));
        }
    }
    out
}

/// Degree-zero vertices of the positive subgraph.
pub fn isolated_by_degree(g: &PrefixGraph) -> Vec<usize> {
    g.positive_degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 0)
        .map(|(k, _)| k + 1)
        .collect()
}

/// Isolated vertices by the array conditions. With `verify`, the result is
/// cross-checked against a degree count on the built graph.
pub fn isolated_positive_vertices(y: &FeasibleArray, verify: bool) -> Result<Vec<usize>> {
    let by_conditions = isolated_by_conditions(y);
    if verify {
        let by_degree = isolated_by_degree(&build_prefix_graph(y));
        if by_degree != by_conditions {
            return Err(Error::IsolatedMismatch {
                by_conditions,
                by_degree,
            });
        }
    }
    Ok(by_conditions)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            _ => Err(Error::UnknownFlag {
                kind: "format",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeSign {
    Positive,
    Negative,
    Both,
}

impl EdgeSign {
    fn positive(self) -> bool {
        matches!(self, EdgeSign::Positive | EdgeSign::Both)
    }

    fn negative(self) -> bool {
        matches!(self, EdgeSign::Negative | EdgeSign::Both)
    }
}

impl FromStr for EdgeSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" | "pos" => Ok(EdgeSign::Positive),
            "negative" | "neg" => Ok(EdgeSign::Negative),
            "both" => Ok(EdgeSign::Both),
            _ => Err(Error::UnknownFlag {
                kind: "edge sign",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Serialize)]
struct JsonGraph {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pos: Option<Vec<[usize; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    neg: Option<Vec<[usize; 2]>>,
}

fn pairs(edges: &[Edge]) -> Vec<[usize; 2]> {
    edges.iter().map(|e| [e.u, e.v]).collect()
}

/// Renders the graph. JSON is compact, `{"n":..,"pos":[[u,v],..],"neg":[..]}`,
/// with a key only for each selected sign. DOT draws negative edges dashed
/// when both signs are shown.
pub fn export_graph(g: &PrefixGraph, format: GraphFormat, sign: EdgeSign) -> String {
    match format {
        GraphFormat::Json => {
            let doc = JsonGraph {
                n: g.n,
                pos: sign.positive().then(|| pairs(&g.pos_edges)),
                neg: sign.negative().then(|| pairs(&g.neg_edges)),
            };
            serde_json::to_string(&doc).expect("plain integers serialize")
        }
        GraphFormat::Dot => {
            let mut out = String::from("graph prefix {\n");
            for v in 1..=g.n {
                let _ = writeln!(out, "  {v};");
            }
            if sign.positive() {
                for e in &g.pos_edges {
                    let _ = writeln!(out, "  {} -- {};", e.u, e.v);
                }
            }
            if sign.negative() {
                let style = if sign == EdgeSign::Both {
                    " [style=dashed]"
                } else {
                    ""
                };
                for e in &g.neg_edges {
                    let _ = writeln!(out, "  {} -- {}{};", e.u, e.v, style);
                }
            }
            out.push_str("}\n");
            out
        }
    }
}
