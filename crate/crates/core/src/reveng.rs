//! Inference of a lexicographically least indeterminate string for a
//! feasible array (Algorithm RevEng).
//!
//! Positive edges are visited in ascending `(i, j)` order. An edge whose
//! endpoints already match is skipped. Otherwise the candidate assignments
//! are the letters of either endpoint offered to the other one, tried in
//! ascending symbol order; the first one not forbidden at its target is taken.
//! If every candidate is forbidden, a fresh symbol goes to both endpoints.
//! Positions still empty afterwards are isolated in the positive subgraph and
//! receive, in ascending order, the least symbol absent from their negative
//! neighbors.
//!
//! A symbol is forbidden at `v` once it has been assigned to any negative
//! neighbor of `v`; this keeps every negative edge unmatched.

use std::fmt;

use crate::graph::{build_prefix_graph, PrefixGraph};
use crate::prefix_table::FeasibleArray;
use crate::string::{sorted_intersect, IndeterminateString, Letter, Symbol};

/// Per-vertex set of forbidden symbols, stored as growable bitsets.
#[derive(Debug, Clone, Default)]
pub struct ForbiddenMatrix {
    rows: Vec<Vec<u64>>,
}

impl ForbiddenMatrix {
    pub fn new(n: usize) -> Self {
        ForbiddenMatrix {
            rows: vec![Vec::new(); n],
        }
    }

    /// Whether `symbol` is forbidden at 1-based vertex `v`.
    pub fn contains(&self, v: usize, symbol: Symbol) -> bool {
        let bit = symbol.rank() as usize - 1;
        self.rows[v - 1]
            .get(bit / 64)
            .is_some_and(|w| w >> (bit % 64) & 1 == 1)
    }

    pub fn insert(&mut self, v: usize, symbol: Symbol) {
        let bit = symbol.rank() as usize - 1;
        let row = &mut self.rows[v - 1];
        if row.len() <= bit / 64 {
            row.resize(bit / 64 + 1, 0);
        }
        row[bit / 64] |= 1 << (bit % 64);
    }

    /// Ascending forbidden symbols at `v`.
    pub fn symbols(&self, v: usize) -> Vec<Symbol> {
        let mut out = Vec::new();
        for (w, &word) in self.rows[v - 1].iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(Symbol::from_rank_unchecked((w * 64 + b + 1) as u32));
                bits &= bits - 1;
            }
        }
        out
    }
}

/// A proposed assignment of `symbol` to vertex `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub symbol: Symbol,
    pub target: usize,
}

/// Candidates for an unmatched positive edge `(i, j)`: every symbol of `x[i]`
/// offered to `j` and every symbol of `x[j]` offered to `i`, merged in
/// ascending symbol order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CandidateSeq(Vec<Candidate>);

impl CandidateSeq {
    fn merge(from_i: &[u32], to_j: usize, from_j: &[u32], to_i: usize) -> Self {
        let mut out = Vec::with_capacity(from_i.len() + from_j.len());
        let (mut a, mut b) = (0, 0);
        while a < from_i.len() || b < from_j.len() {
            let take_i = match (from_i.get(a), from_j.get(b)) {
                (Some(l), Some(r)) => {
                    // x[i] and x[j] are disjoint here
                    debug_assert_ne!(l, r);
                    l < r
                }
                (Some(_), None) => true,
                _ => false,
            };
            if take_i {
                out.push(Candidate {
                    symbol: Symbol::from_rank_unchecked(from_i[a]),
                    target: to_j,
                });
                a += 1;
            } else {
                out.push(Candidate {
                    symbol: Symbol::from_rank_unchecked(from_j[b]),
                    target: to_i,
                });
                b += 1;
            }
        }
        CandidateSeq(out)
    }

    pub fn as_slice(&self) -> &[Candidate] {
        &self.0
    }
}

/// One step of an inference run, in execution order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    /// Positive edge taken from the sorted list.
    Edge {
        u: usize,
        v: usize,
    },
    /// The endpoints already match.
    Skip {
        u: usize,
        v: usize,
    },
    Reject(Candidate),
    Accept(Candidate),
    /// Fresh symbol given to both endpoints.
    NewLetter {
        symbol: Symbol,
        u: usize,
        v: usize,
    },
    /// `symbol` became forbidden at `at` after being assigned to `from`.
    Forbid {
        symbol: Symbol,
        from: usize,
        at: Vec<usize>,
    },
    /// Final pass assignment of an isolated position.
    Least {
        vertex: usize,
        symbol: Symbol,
    },
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Edge { u, v } => write!(f, "edge ({u},{v})"),
            TraceEvent::Skip { u, v } => write!(f, "skip ({u},{v})"),
            TraceEvent::Reject(c) => write!(f, "reject {} -> {}", c.symbol, c.target),
            TraceEvent::Accept(c) => write!(f, "accept {} -> {}", c.symbol, c.target),
            TraceEvent::NewLetter { symbol, u, v } => write!(f, "new {symbol} -> {u},{v}"),
            TraceEvent::Forbid { symbol, from, at } => {
                write!(f, "forbid {symbol} at {} (from {from})", join(at))
            }
            TraceEvent::Least { vertex, symbol } => write!(f, "least {vertex} -> {symbol}"),
        }
    }
}

/// Version line that opens every rendered trace.
pub const TRACE_HEADER: &str = "# reveng trace v1";

/// Renders a trace: header, one event per line, then `result <string>`.
pub fn render_trace(events: &[TraceEvent], result: &IndeterminateString) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for e in events {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out.push_str(&format!("result {result}\n"));
    out
}

/// Mutable state of a single inference run.
#[derive(Debug, Clone)]
pub struct InferenceState<'g> {
    graph: &'g PrefixGraph,
    /// Ascending symbol ranks per vertex (0-based), possibly empty.
    x: Vec<Vec<u32>>,
    lambda_max: u32,
    forbidden: ForbiddenMatrix,
    trace: Option<Vec<TraceEvent>>,
}

impl<'g> InferenceState<'g> {
    pub fn new(graph: &'g PrefixGraph) -> Self {
        InferenceState {
            graph,
            x: vec![Vec::new(); graph.n()],
            lambda_max: 0,
            forbidden: ForbiddenMatrix::new(graph.n()),
            trace: None,
        }
    }

    fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    fn record(&mut self, event: impl FnOnce() -> TraceEvent) {
        if let Some(t) = self.trace.as_mut() {
            t.push(event());
        }
    }

    /// Highest symbol rank introduced so far.
    pub fn lambda_max(&self) -> u32 {
        self.lambda_max
    }

    /// Symbols currently at 1-based vertex `v`, ascending.
    pub fn letter(&self, v: usize) -> Vec<Symbol> {
        self.x[v - 1]
            .iter()
            .map(|&r| Symbol::from_rank_unchecked(r))
            .collect()
    }

    pub fn forbidden(&self) -> &ForbiddenMatrix {
        &self.forbidden
    }

    /// Adds `symbol` to `x[h]` in order and forbids it at `h`'s negative
    /// neighbors. `symbol` may exceed `lambda_max` by at most one, in which
    /// case it becomes the new maximum.
    pub fn assign(&mut self, h: usize, symbol: Symbol) {
        let rank = symbol.rank();
        assert!(
            rank <= self.lambda_max + 1,
            "symbols are introduced densely"
        );
        self.lambda_max = self.lambda_max.max(rank);
        let letter = &mut self.x[h - 1];
        if let Err(pos) = letter.binary_search(&rank) {
            letter.insert(pos, rank);
        }
        self.update_forbidden(h, symbol);
    }

    /// Marks `symbol` forbidden at every negative neighbor of `h`. Idempotent.
    pub fn update_forbidden(&mut self, h: usize, symbol: Symbol) {
        let graph = self.graph;
        let neighbors = graph.neg_neighbors(h);
        for &j in neighbors {
            self.forbidden.insert(j, symbol);
        }
        if !neighbors.is_empty() {
            self.record(|| TraceEvent::Forbid {
                symbol,
                from: h,
                at: neighbors.to_vec(),
            });
        }
    }

    /// Least symbol in `1..=lambda_max+1` absent from every negative
    /// neighbor of `i`.
    pub fn least(&self, i: usize) -> Symbol {
        let mut seen = vec![false; self.lambda_max as usize + 1];
        for &j in self.graph.neg_neighbors(i) {
            for &r in &self.x[j - 1] {
                seen[r as usize - 1] = true;
            }
        }
        let rank = seen.iter().position(|&b| !b).unwrap() as u32 + 1;
        Symbol::from_rank_unchecked(rank)
    }

    fn candidates(&self, i: usize, j: usize) -> CandidateSeq {
        CandidateSeq::merge(&self.x[i - 1], j, &self.x[j - 1], i)
    }

    fn process_edge(&mut self, i: usize, j: usize) {
        self.record(|| TraceEvent::Edge { u: i, v: j });
        if sorted_intersect(&self.x[i - 1], &self.x[j - 1]) {
            self.record(|| TraceEvent::Skip { u: i, v: j });
            return;
        }
        for c in self.candidates(i, j).0 {
            if self.forbidden.contains(c.target, c.symbol) {
                self.record(|| TraceEvent::Reject(c));
            } else {
                self.record(|| TraceEvent::Accept(c));
                self.assign(c.target, c.symbol);
                return;
            }
        }
        let fresh = Symbol::from_rank_unchecked(self.lambda_max + 1);
        self.record(|| TraceEvent::NewLetter {
            symbol: fresh,
            u: i,
            v: j,
        });
        self.assign(i, fresh);
        self.assign(j, fresh);
    }

    fn fill_isolated(&mut self) {
        for i in 1..=self.graph.n() {
            if self.x[i - 1].is_empty() {
                let symbol = self.least(i);
                self.record(|| TraceEvent::Least { vertex: i, symbol });
                // No forbiddance update: later positions consult x directly.
                self.lambda_max = self.lambda_max.max(symbol.rank());
                self.x[i - 1].push(symbol.rank());
            }
        }
    }

    fn run(&mut self) {
        let graph = self.graph;
        for e in graph.pos_edges() {
            self.process_edge(e.u, e.v);
        }
        self.fill_isolated();
    }

    fn into_string(self) -> IndeterminateString {
        self.x
            .iter()
            .map(|ranks| Letter::from_sorted_ranks_unchecked(ranks))
            .collect()
    }
}

/// Infers the string for an already built prefix graph.
pub fn infer_graph(graph: &PrefixGraph) -> IndeterminateString {
    let mut state = InferenceState::new(graph);
    state.run();
    state.into_string()
}

/// Infers a lexicographically least string whose prefix table is `y`.
pub fn infer(y: &FeasibleArray) -> IndeterminateString {
    infer_graph(&build_prefix_graph(y))
}

/// Like [`infer`], also returning every step taken.
pub fn infer_traced(y: &FeasibleArray) -> (IndeterminateString, Vec<TraceEvent>) {
    let graph = build_prefix_graph(y);
    let mut state = InferenceState::new(&graph).with_trace();
    state.run();
    let trace = state.trace.take().unwrap_or_default();
    (state.into_string(), trace)
}
