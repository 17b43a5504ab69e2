//! n-neighbourhood graphs.
//!
//! For a loop-free graph `G` and `n >= 1`, `G_n` joins `u != v` when a path
//! (distinct vertices and edges) of length exactly `n` connects them. The
//! non-backtracking and walk variants relax the path condition. For a
//! hypergraph, `H_n` joins `u != v` when a path of `n` distinct hyperedges
//! through distinct vertices connects them.
//!
//! Self-pairs are never edges in any mode, even if a closed walk exists.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Hypergraph, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WalkMode {
    Path,
    NonBacktracking,
    Walk,
}

impl WalkMode {
    pub const ALL: [WalkMode; 3] = [WalkMode::Path, WalkMode::NonBacktracking, WalkMode::Walk];

    pub fn as_str(self) -> &'static str {
        match self {
            WalkMode::Path => "path",
            WalkMode::NonBacktracking => "nb",
            WalkMode::Walk => "walk",
        }
    }
}

impl fmt::Display for WalkMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WalkMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "path" => Ok(WalkMode::Path),
            "nb" | "non-backtracking" => Ok(WalkMode::NonBacktracking),
            "walk" => Ok(WalkMode::Walk),
            other => Err(format!("unknown mode `{other}` (expected path, nb or walk)")),
        }
    }
}

/// Resource caps for exhaustive path enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathLimits {
    pub max_length: usize,
    pub max_vertices: usize,
    /// DFS expansions allowed per construction before giving up.
    pub max_steps: u64,
}

impl Default for PathLimits {
    fn default() -> Self {
        PathLimits {
            max_length: 8,
            max_vertices: 256,
            max_steps: 50_000_000,
        }
    }
}

impl PathLimits {
    pub fn unbounded_length(self) -> Self {
        PathLimits {
            max_length: usize::MAX,
            ..self
        }
    }

    fn check(&self, n: usize, vertices: usize) -> Result<()> {
        if n > self.max_length {
            return Err(Error::CapExceeded {
                what: "path length n",
                value: n,
                cap: self.max_length,
            });
        }
        if vertices > self.max_vertices {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: vertices,
                cap: self.max_vertices,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Base<'a> {
    Graph(&'a Graph),
    Hypergraph(&'a Hypergraph),
}

#[derive(Debug, Clone)]
pub struct NeighborhoodGraph<'a> {
    pub base: Base<'a>,
    pub n: usize,
    /// `None` for hypergraph neighbourhood graphs, which only have path semantics.
    pub mode: Option<WalkMode>,
    pub graph: Graph,
}

impl NeighborhoodGraph<'_> {
    pub fn components(&self) -> crate::graph::Partition {
        self.graph.connected_components()
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n >= 1", "n = 0".into()));
    }
    Ok(())
}

pub fn neighborhood_graph(g: &Graph, n: usize, mode: WalkMode) -> Result<NeighborhoodGraph<'_>> {
    neighborhood_graph_with(g, n, mode, PathLimits::default())
}

pub fn neighborhood_graph_with(
    g: &Graph,
    n: usize,
    mode: WalkMode,
    limits: PathLimits,
) -> Result<NeighborhoodGraph<'_>> {
    g.require_loop_free()?;
    check_n(n)?;
    let edges = match mode {
        WalkMode::Path => {
            limits.check(n, g.vertex_count())?;
            path_edges(g, n, limits.max_steps)?
        }
        WalkMode::NonBacktracking => non_backtracking_edges(g, n),
        WalkMode::Walk => walk_edges(g, n),
    };
    Ok(NeighborhoodGraph {
        base: Base::Graph(g),
        n,
        mode: Some(mode),
        graph: g.with_edges(edges),
    })
}

struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.max {
            Err(Error::StepBudget(self.max))
        } else {
            Ok(())
        }
    }
}

fn path_edges(g: &Graph, n: usize, max_steps: u64) -> Result<BTreeSet<(Vertex, Vertex)>> {
    let vcount = g.vertex_count();
    let mut budget = Budget {
        used: 0,
        max: max_steps,
    };
    let mut edges = BTreeSet::new();
    let mut on_path = vec![false; vcount];
    let mut reached = vec![false; vcount];
    for s in 0..vcount {
        reached.iter_mut().for_each(|r| *r = false);
        on_path[s] = true;
        path_dfs(g, s, n, &mut on_path, &mut reached, &mut budget)?;
        on_path[s] = false;
        for t in s + 1..vcount {
            if reached[t] {
                edges.insert((s, t));
            }
        }
    }
    Ok(edges)
}

fn path_dfs(
    g: &Graph,
    u: Vertex,
    remaining: usize,
    on_path: &mut [bool],
    reached: &mut [bool],
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    if remaining == 0 {
        reached[u] = true;
        return Ok(());
    }
    for &w in g.neighbors(u) {
        if !on_path[w] {
            on_path[w] = true;
            path_dfs(g, w, remaining - 1, on_path, reached, budget)?;
            on_path[w] = false;
        }
    }
    Ok(())
}

/// Exact-length reachability on oriented edges, forbidding immediate reversal.
fn non_backtracking_edges(g: &Graph, n: usize) -> BTreeSet<(Vertex, Vertex)> {
    let vcount = g.vertex_count();
    // Oriented edge (u -> v) is identified by (u, position of v in adj(u)).
    let offsets: Vec<usize> = std::iter::once(0)
        .chain((0..vcount).scan(0, |acc, v| {
            *acc += g.degree(v);
            Some(*acc)
        }))
        .collect();
    let state_count = offsets[vcount];
    let state = |u: Vertex, i: usize| offsets[u] + i;
    let head_tail: Vec<(Vertex, Vertex)> = (0..vcount)
        .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v)))
        .collect();

    let mut edges = BTreeSet::new();
    let mut current = vec![false; state_count];
    let mut next = vec![false; state_count];
    for s in 0..vcount {
        current.iter_mut().for_each(|x| *x = false);
        for i in 0..g.degree(s) {
            current[state(s, i)] = true;
        }
        for _ in 1..n {
            next.iter_mut().for_each(|x| *x = false);
            for (idx, &(from, to)) in head_tail.iter().enumerate() {
                if !current[idx] {
                    continue;
                }
                for (j, &w) in g.neighbors(to).iter().enumerate() {
                    if w != from {
                        next[state(to, j)] = true;
                    }
                }
            }
            std::mem::swap(&mut current, &mut next);
        }
        for (idx, &(_, to)) in head_tail.iter().enumerate() {
            if current[idx] && to > s {
                edges.insert((s, to));
            }
        }
    }
    edges
}

/// Exact-length walk reachability by repeated frontier expansion.
fn walk_edges(g: &Graph, n: usize) -> BTreeSet<(Vertex, Vertex)> {
    let vcount = g.vertex_count();
    let mut edges = BTreeSet::new();
    let mut current = vec![false; vcount];
    let mut next = vec![false; vcount];
    for s in 0..vcount {
        current.iter_mut().for_each(|x| *x = false);
        current[s] = true;
        for _ in 0..n {
            next.iter_mut().for_each(|x| *x = false);
            for u in (0..vcount).filter(|&u| current[u]) {
                for &w in g.neighbors(u) {
                    next[w] = true;
                }
            }
            std::mem::swap(&mut current, &mut next);
        }
        for t in s + 1..vcount {
            if current[t] {
                edges.insert((s, t));
            }
        }
    }
    edges
}

pub fn hyper_neighborhood_graph(h: &Hypergraph, n: usize) -> Result<NeighborhoodGraph<'_>> {
    hyper_neighborhood_graph_with(h, n, PathLimits::default())
}

pub fn hyper_neighborhood_graph_with(h: &Hypergraph, n: usize, limits: PathLimits) -> Result<NeighborhoodGraph<'_>> {
    h.require_loop_free()?;
    check_n(n)?;
    limits.check(n, h.vertex_count())?;
    let vcount = h.vertex_count();
    let mut budget = Budget {
        used: 0,
        max: limits.max_steps,
    };
    let mut edges = BTreeSet::new();
    let mut on_path = vec![false; vcount];
    let mut used_edge = vec![false; h.hyperedges().len()];
    let mut reached = vec![false; vcount];
    for s in 0..vcount {
        reached.iter_mut().for_each(|r| *r = false);
        on_path[s] = true;
        hyper_dfs(h, s, n, &mut on_path, &mut used_edge, &mut reached, &mut budget)?;
        on_path[s] = false;
        for t in s + 1..vcount {
            if reached[t] {
                edges.insert((s, t));
            }
        }
    }
    let graph = h.associated_graph().with_edges(edges);
    Ok(NeighborhoodGraph {
        base: Base::Hypergraph(h),
        n,
        mode: None,
        graph,
    })
}

fn hyper_dfs(
    h: &Hypergraph,
    u: Vertex,
    remaining: usize,
    on_path: &mut [bool],
    used_edge: &mut [bool],
    reached: &mut [bool],
    budget: &mut Budget,
) -> Result<()> {
    budget.tick()?;
    if remaining == 0 {
        reached[u] = true;
        return Ok(());
    }
    for &e in h.incident(u) {
        if used_edge[e] {
            continue;
        }
        used_edge[e] = true;
        for &w in &h.hyperedges()[e] {
            if !on_path[w] {
                on_path[w] = true;
                hyper_dfs(h, w, remaining - 1, on_path, used_edge, reached, budget)?;
                on_path[w] = false;
            }
        }
        used_edge[e] = false;
    }
    Ok(())
}

/// Which inclusion of `E_n ⊆ E_n^NB ⊆ E_n^walk` a counterexample breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inclusion {
    PathInNonBacktracking,
    NonBacktrackingInWalk,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionReport {
    pub n: usize,
    pub path_edges: usize,
    pub nb_edges: usize,
    pub walk_edges: usize,
    pub counterexample: Option<(Inclusion, Vertex, Vertex)>,
}

impl InclusionReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn inclusion_check(g: &Graph, n: usize, limits: PathLimits) -> Result<InclusionReport> {
    let path = neighborhood_graph_with(g, n, WalkMode::Path, limits)?.graph;
    let nb = neighborhood_graph_with(g, n, WalkMode::NonBacktracking, limits)?.graph;
    let walk = neighborhood_graph_with(g, n, WalkMode::Walk, limits)?.graph;
    let missing = |small: &Graph, big: &Graph| small.edges().iter().copied().find(|&(u, v)| !big.has_edge(u, v));
    let counterexample = missing(&path, &nb)
        .map(|(u, v)| (Inclusion::PathInNonBacktracking, u, v))
        .or_else(|| missing(&nb, &walk).map(|(u, v)| (Inclusion::NonBacktrackingInWalk, u, v)));
    Ok(InclusionReport {
        n,
        path_edges: path.edge_count(),
        nb_edges: nb.edge_count(),
        walk_edges: walk.edge_count(),
        counterexample,
    })
}
