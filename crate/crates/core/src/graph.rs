//! Graphs, hypergraphs and vertex partitions.
//!
//! Vertices carry the string token they were read with and a dense index
//! assigned in first-appearance order. Every algorithm in this crate works on
//! dense indices; names only come back at the reporting boundary.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Dense vertex index, contiguous from 0.
pub type Vertex = usize;

/// Shortest-path distance, with an explicit marker for unreachable pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

/// Anything with named, densely indexed vertices.
pub trait VertexSet {
    fn vertex_count(&self) -> usize;
    fn name(&self, v: Vertex) -> &str;
    fn index_of(&self, name: &str) -> Option<Vertex>;

    fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct VertexTable {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
}

impl VertexTable {
    fn intern(&mut self, name: &str) -> Vertex {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    fn numbered(n: usize) -> Self {
        let mut table = VertexTable::default();
        for v in 0..n {
            table.intern(&v.to_string());
        }
        table
    }
}

fn comment_or_blank(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#')
}

/// Loop-permitting simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: VertexTable,
    adjacency: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl VertexSet for Graph {
    fn vertex_count(&self) -> usize {
        self.vertices.names.len()
    }

    fn name(&self, v: Vertex) -> &str {
        &self.vertices.names[v]
    }

    fn index_of(&self, name: &str) -> Option<Vertex> {
        self.vertices.index.get(name).copied()
    }
}

impl Graph {
    fn assemble(vertices: VertexTable, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let n = vertices.names.len();
        let edges: BTreeSet<(Vertex, Vertex)> = edges
            .into_iter()
            .map(|(u, v)| if u <= v { (u, v) } else { (v, u) })
            .collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            assert!(v < n, "edge endpoint {v} out of range for {n} vertices");
            adjacency[u].push(v);
            if u != v {
                adjacency[v].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            vertices,
            adjacency,
            edges: edges.into_iter().collect(),
        }
    }

    /// Graph on vertices named `"0"`..`"n-1"`. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        Graph::assemble(VertexTable::numbered(n), edges.iter().copied())
    }

    /// Graph on the given vertex names (must be unique).
    pub fn from_named_edges<S: AsRef<str>>(names: &[S], edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut table = VertexTable::default();
        for name in names {
            let before = table.names.len();
            if table.intern(name.as_ref()) != before {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate vertex name `{}`", name.as_ref()),
                });
            }
        }
        Ok(Graph::assemble(table, edges.iter().copied()))
    }

    /// Parses an edge list: one edge per line, one token for a loop.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = VertexTable::default();
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if comment_or_blank(line) {
                continue;
            }
            let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
            match tokens.as_slice() {
                [a] => {
                    let a = table.intern(a);
                    edges.push((a, a));
                }
                [a, b] => {
                    let a = table.intern(a);
                    let b = table.intern(b);
                    edges.push((a, b));
                }
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("expected 1 or 2 tokens, found {}", tokens.len()),
                    })
                }
            }
        }
        Ok(Graph::assemble(table, edges))
    }

    /// A graph on the same vertex set with a different edge set.
    pub fn with_edges(&self, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        Graph::assemble(self.vertices.clone(), edges)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u <= v`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn names(&self) -> &[String] {
        &self.vertices.names
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    /// Sorted neighbour list; contains `v` itself iff there is a loop at `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn loop_vertex(&self) -> Option<Vertex> {
        self.edges.iter().find(|(u, v)| u == v).map(|&(u, _)| u)
    }

    pub fn has_loops(&self) -> bool {
        self.loop_vertex().is_some()
    }

    pub(crate) fn require_loop_free(&self) -> Result<()> {
        match self.loop_vertex() {
            Some(v) => Err(Error::LoopNotAllowed(self.name(v).to_string())),
            None => Ok(()),
        }
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).min()
    }

    /// BFS distances from `source` to every vertex.
    pub fn distances_from(&self, source: Vertex) -> Vec<Distance> {
        let mut dist = vec![Distance::Unreachable; self.vertex_count()];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(du) = dist[u] else { unreachable!() };
            for &w in &self.adjacency[u] {
                if dist[w] == Distance::Unreachable {
                    dist[w] = Distance::Finite(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Distance {
        self.distances_from(u)[v]
    }

    /// Blocks ordered by smallest vertex index.
    pub fn connected_components(&self) -> Partition {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        Partition::from_labels(&label)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        let components = self.connected_components().len();
        if components > 1 {
            Err(Error::Disconnected { components })
        } else {
            Ok(())
        }
    }

    /// BFS parity colouring of a connected graph.
    pub fn bipartition(&self) -> Result<Bipartition> {
        self.require_connected()?;
        let n = self.vertex_count();
        let mut side = vec![u8::MAX; n];
        let mut is_bipartite = true;
        if n > 0 {
            side[0] = 0;
            let mut queue = VecDeque::from([0]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        is_bipartite = false;
                    }
                }
            }
        }
        let mut parts = [Vec::new(), Vec::new()];
        for (v, &s) in side.iter().enumerate() {
            parts[s as usize].push(v);
        }
        Ok(Bipartition { parts, is_bipartite })
    }
}

/// Two-colouring by BFS parity. The parts always cover V; they are a proper
/// colouring only when `is_bipartite` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub parts: [Vec<Vertex>; 2],
    pub is_bipartite: bool,
}

impl Bipartition {
    pub fn as_partition(&self, n: usize) -> Partition {
        let blocks: Vec<Vec<Vertex>> = self.parts.iter().filter(|p| !p.is_empty()).cloned().collect();
        Partition::from_blocks(n, blocks).expect("bipartition parts cover the vertex set")
    }
}

/// Vertex set plus a multiset of hyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: VertexTable,
    hyperedges: Vec<Vec<Vertex>>,
    incidence: Vec<Vec<usize>>,
    neighbors: Vec<Vec<Vertex>>,
    associated: Graph,
}

impl VertexSet for Hypergraph {
    fn vertex_count(&self) -> usize {
        self.vertices.names.len()
    }

    fn name(&self, v: Vertex) -> &str {
        &self.vertices.names[v]
    }

    fn index_of(&self, name: &str) -> Option<Vertex> {
        self.vertices.index.get(name).copied()
    }
}

impl Hypergraph {
    fn assemble(vertices: VertexTable, mut hyperedges: Vec<Vec<Vertex>>) -> Self {
        let n = vertices.names.len();
        let mut incidence = vec![Vec::new(); n];
        let mut neighbor_sets = vec![BTreeSet::new(); n];
        let mut pairs = Vec::new();
        for (i, e) in hyperedges.iter_mut().enumerate() {
            e.sort_unstable();
            for &v in e.iter() {
                incidence[v].push(i);
            }
            if let [v] = e.as_slice() {
                pairs.push((*v, *v));
            }
            for (a, &u) in e.iter().enumerate() {
                for &w in &e[a + 1..] {
                    neighbor_sets[u].insert(w);
                    neighbor_sets[w].insert(u);
                    pairs.push((u, w));
                }
            }
        }
        let associated = Graph::assemble(vertices.clone(), pairs);
        Hypergraph {
            vertices,
            hyperedges,
            incidence,
            neighbors: neighbor_sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            associated,
        }
    }

    /// Hypergraph on vertices `"0"`..`"n-1"`.
    ///
    /// Panics on an empty hyperedge, a repeated vertex inside one hyperedge
    /// or an out-of-range vertex.
    pub fn from_hyperedges(n: usize, hyperedges: &[Vec<Vertex>]) -> Self {
        for e in hyperedges {
            assert!(!e.is_empty(), "empty hyperedge");
            let set: BTreeSet<_> = e.iter().collect();
            assert_eq!(set.len(), e.len(), "repeated vertex in hyperedge {e:?}");
            assert!(e.iter().all(|&v| v < n), "hyperedge {e:?} out of range");
        }
        Hypergraph::assemble(VertexTable::numbered(n), hyperedges.to_vec())
    }

    /// Parses a hyperedge list, one hyperedge per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut table = VertexTable::default();
        let mut hyperedges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if comment_or_blank(line) {
                continue;
            }
            let mut seen = BTreeSet::new();
            let mut e = Vec::new();
            for token in line.split_ascii_whitespace() {
                if !seen.insert(token) {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("vertex `{token}` repeated within a hyperedge"),
                    });
                }
                e.push(table.intern(token));
            }
            hyperedges.push(e);
        }
        Ok(Hypergraph::assemble(table, hyperedges))
    }

    pub fn names(&self) -> &[String] {
        &self.vertices.names
    }

    /// Hyperedges in input order, each sorted by vertex index.
    pub fn hyperedges(&self) -> &[Vec<Vertex>] {
        &self.hyperedges
    }

    /// Indices of the hyperedges containing `v`, with multiplicity.
    pub fn incident(&self, v: Vertex) -> &[usize] {
        &self.incidence[v]
    }

    /// Number of incident hyperedges, counted with multiplicity.
    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    /// Sorted neighbours of `v`, never including `v` itself.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[v]
    }

    pub fn loop_vertex(&self) -> Option<Vertex> {
        self.hyperedges.iter().find(|e| e.len() == 1).map(|e| e[0])
    }

    pub(crate) fn require_loop_free(&self) -> Result<()> {
        match self.loop_vertex() {
            Some(v) => Err(Error::LoopNotAllowed(self.name(v).to_string())),
            None => Ok(()),
        }
    }

    /// The clique expansion H1; singleton hyperedges become loops.
    pub fn associated_graph(&self) -> &Graph {
        &self.associated
    }

    /// Hyperedge-hop distance (BFS on H1).
    pub fn distance(&self, u: Vertex, v: Vertex) -> Distance {
        self.associated.distance(u, v)
    }

    pub fn distances_from(&self, source: Vertex) -> Vec<Distance> {
        self.associated.distances_from(source)
    }

    pub fn connected_components(&self) -> Partition {
        self.associated.connected_components()
    }
}

/// Disjoint non-empty blocks covering `0..n`.
///
/// Blocks are kept in canonical order: each block sorted, blocks ordered by
/// their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<Vertex>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Groups vertices by arbitrary labels.
    pub fn from_labels<L: Eq + std::hash::Hash + Clone>(labels: &[L]) -> Self {
        let mut slot: HashMap<L, usize> = HashMap::new();
        let mut blocks: Vec<Vec<Vertex>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for (v, label) in labels.iter().enumerate() {
            let b = *slot.entry(label.clone()).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
            block_of.push(b);
        }
        Partition { blocks, block_of }
    }

    pub fn from_blocks(n: usize, blocks: Vec<Vec<Vertex>>) -> Result<Self> {
        Self::checked(n, blocks, |v| v.to_string())
    }

    fn checked(n: usize, blocks: Vec<Vec<Vertex>>, name: impl Fn(Vertex) -> String) -> Result<Self> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
                }
                if label[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {} appears twice", name(v))));
                }
                label[v] = b;
            }
        }
        if let Some(v) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {} not covered", name(v))));
        }
        Ok(Partition::from_labels(&label))
    }

    pub fn from_named_blocks<S: AsRef<str>>(structure: &impl VertexSet, blocks: &[Vec<S>]) -> Result<Self> {
        let mut resolved = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut b = Vec::with_capacity(block.len());
            for name in block {
                b.push(
                    structure
                        .index_of(name.as_ref())
                        .ok_or_else(|| Error::InvalidPartition(format!("unknown vertex `{}`", name.as_ref())))?,
                );
            }
            resolved.push(b);
        }
        Self::checked(structure.vertex_count(), resolved, |v| {
            format!("`{}`", structure.name(v))
        })
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn trivial(n: usize) -> Self {
        Partition::from_labels(&vec![0u8; n])
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        self.block_of[v]
    }

    pub fn same_block(&self, u: Vertex, v: Vertex) -> bool {
        self.block_of[u] == self.block_of[v]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    /// True when every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.vertex_count() == coarser.vertex_count()
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&v| coarser.same_block(v, b[0])))
    }

    pub fn named_blocks(&self, structure: &impl VertexSet) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&v| structure.name(v).to_string()).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const C6: &str = "1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";

    #[test]
    fn parses_edge_list_in_first_appearance_order() {
        let g = Graph::parse("a b\nb c").unwrap();
        assert_eq!(g.names(), ["a", "b", "c"]);
        assert_eq!(g.edges(), [(0, 1), (1, 2)]);
    }

    #[test]
    fn arity_violation_reports_line() {
        let err = Graph::parse("# header\na b c").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "expected 1 or 2 tokens, found 3".into()
            }
        );
        assert_eq!(Graph::parse("a b c").unwrap_err().kind(), crate::ErrorKind::Input);
    }

    #[test]
    fn duplicate_edges_collapse_and_loops_count_once() {
        let g = Graph::parse("a b\nb a\na b\nv").unwrap();
        assert_eq!(g.edge_count(), 2);
        let v = g.vertex("v").unwrap();
        assert_eq!(g.degree(v), 1);
        assert_eq!(g.neighbors(v), [v]);
        assert!(g.has_loops());
    }

    #[test]
    fn hypergraph_keeps_duplicates_and_rejects_repeats() {
        let h = Hypergraph::parse("a b\na b\nb c").unwrap();
        assert_eq!(h.hyperedges().len(), 3);
        assert_eq!(h.degree(h.vertex("a").unwrap()), 2);
        assert!(matches!(Hypergraph::parse("a a b"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn hypergraph_degrees_and_neighbours() {
        let hx = Hypergraph::parse("x a b c\ny a\ny b\ny c").unwrap();
        let (x, y) = (hx.vertex("x").unwrap(), hx.vertex("y").unwrap());
        assert_eq!((hx.degree(x), hx.degree(y)), (1, 3));
        assert_eq!(hx.neighbors(x), hx.neighbors(y));
        assert_eq!(hx.distance(x, y), Distance::Finite(2));

        let h1 = Hypergraph::parse("x a b c\na b y\nc d y\nx d").unwrap();
        let (x, y) = (h1.vertex("x").unwrap(), h1.vertex("y").unwrap());
        assert_eq!((h1.degree(x), h1.degree(y)), (2, 2));
        let names: Vec<&str> = h1.neighbors(x).iter().map(|&v| h1.name(v)).collect();
        assert_eq!(names, ["a", "b", "c", "d"]);
        assert_eq!(h1.neighbors(x), h1.neighbors(y));
    }

    #[test]
    fn associated_graph_is_clique_expansion() {
        let hx = Hypergraph::parse("x a b c\ny a\ny b\ny c").unwrap();
        let g = hx.associated_graph();
        let mut named: Vec<(String, String)> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (g.name(u).to_string(), g.name(v).to_string());
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        named.sort();
        let expected = [
            ("a", "b"),
            ("a", "c"),
            ("a", "x"),
            ("a", "y"),
            ("b", "c"),
            ("b", "x"),
            ("b", "y"),
            ("c", "x"),
            ("c", "y"),
        ];
        let expected: Vec<(String, String)> = expected.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(named, expected);

        let tri = Hypergraph::parse("a b c").unwrap();
        assert_eq!(tri.associated_graph().edge_count(), 3);
        assert!(!tri.associated_graph().has_loops());
        assert!(Hypergraph::parse("a\na b").unwrap().associated_graph().has_loops());
    }

    #[test]
    fn distances_and_components() {
        let c6 = Graph::parse(C6).unwrap();
        assert_eq!(c6.distance(0, 3), Distance::Finite(3));
        assert_eq!(c6.distance(2, 2), Distance::Finite(0));
        assert_eq!(c6.connected_components().len(), 1);

        let two = Graph::parse("a b\nc d").unwrap();
        assert_eq!(two.distance(0, 2), Distance::Unreachable);
        assert_eq!(two.connected_components().blocks(), [vec![0, 1], vec![2, 3]]);
        assert!(matches!(two.bipartition(), Err(Error::Disconnected { components: 2 })));
        assert!(matches!(two.vertex("zz"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn bipartition_by_parity() {
        let c6 = Graph::parse(C6).unwrap();
        let b = c6.bipartition().unwrap();
        assert!(b.is_bipartite);
        assert_eq!(b.parts, [vec![0, 2, 4], vec![1, 3, 5]]);
        assert!(
            !Graph::parse("a b\nb c\nc a")
                .unwrap()
                .bipartition()
                .unwrap()
                .is_bipartite
        );
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::from_blocks(3, vec![vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(3, vec![vec![0, 1, 2], vec![]]).is_err());
        let p = Partition::from_blocks(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(p.blocks(), [vec![0, 2], vec![1, 3]]);
        assert!(Partition::singletons(4).refines(&p));
        assert!(p.refines(&Partition::trivial(4)));
        assert!(!p.refines(&Partition::singletons(4)));
    }
}
