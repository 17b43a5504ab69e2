//! Regular and structural partitions built from neighbourhood-graph
//! components, curvature-one groups and edge-removal variants.
//!
//! Constructions never refuse because a soft precondition fails: the report
//! lists each precondition with its status and carries the post-hoc
//! regularity verdict. Hard violations (malformed removal sets, invalid
//! choices) are errors.

use std::collections::BTreeSet;

use crate::cycles::{cycle_edges, k_cycles, triangles};
use crate::equivalence::{
    is_regular_partition, is_weak_regular_partition, structural_classes, EquivalenceWitness, Violation,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Hypergraph, Partition, Vertex, VertexSet};
use crate::neighborhood::{hyper_neighborhood_graph_with, neighborhood_graph_with, PathLimits, WalkMode};
use crate::transport::{neighbor_measure, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precondition {
    pub name: &'static str,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub method: &'static str,
    pub partition: Partition,
    pub preconditions: Vec<Precondition>,
    /// Regularity of `partition` on the input structure, for hypergraphs weak regularity.
    pub verified: bool,
    pub violation: Option<Violation>,
    pub notes: Vec<String>,
}

impl ConstructionReport {
    fn new(
        method: &'static str,
        partition: Partition,
        preconditions: Vec<Precondition>,
        witness: EquivalenceWitness,
    ) -> Self {
        let mut notes = Vec::new();
        if partition.len() == 2 && matches!(method, "g2-components" | "h2-components") {
            notes.push("maximal: only the trivial partition is coarser".to_string());
        }
        ConstructionReport {
            method,
            partition,
            preconditions,
            verified: witness.verdict(),
            violation: witness.violation,
            notes,
        }
    }

    pub fn preconditions_met(&self) -> bool {
        self.preconditions.iter().all(|p| p.met)
    }
}

/// Edges to delete from a graph; every edge is checked to exist.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RemovalSet {
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl RemovalSet {
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
                let name = |w: Vertex| g.names().get(w).cloned().unwrap_or_else(|| w.to_string());
                return Err(Error::InvalidRemoval(format!(
                    "edge {}-{} is not in the graph",
                    name(u),
                    name(v)
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(RemovalSet { edges: set })
    }

    pub fn from_named<S: AsRef<str>>(g: &Graph, edges: &[(S, S)]) -> Result<Self> {
        let resolved = edges
            .iter()
            .map(|(a, b)| Ok((g.vertex(a.as_ref())?, g.vertex(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        RemovalSet::new(g, resolved)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn apply(&self, g: &Graph) -> Graph {
        g.with_edges(g.edges().iter().copied().filter(|&(u, v)| !self.contains(u, v)))
    }
}

fn cond(name: &'static str, met: bool) -> Precondition {
    Precondition { name, met }
}

fn min_degree_two(g: &Graph) -> bool {
    g.min_degree().is_none_or(|d| d >= 2)
}

fn path_components(g: &Graph, n: usize, limits: PathLimits) -> Result<Partition> {
    Ok(neighborhood_graph_with(g, n, WalkMode::Path, limits)?.components())
}

/// Components of `G_2`; regular on every connected loop-free graph.
pub fn regular_from_g2(g: &Graph) -> Result<ConstructionReport> {
    g.require_loop_free()?;
    g.require_connected()?;
    let p = path_components(g, 2, PathLimits::default())?;
    let w = is_regular_partition(g, &p)?;
    Ok(ConstructionReport::new(
        "g2-components",
        p,
        vec![cond("connected", true), cond("loop-free", true)],
        w,
    ))
}

pub fn regular_from_gn(g: &Graph, n: usize) -> Result<ConstructionReport> {
    regular_from_gn_with(g, n, PathLimits::default())
}

/// Components of `G_n`; the minimum-degree condition is reported, not enforced.
pub fn regular_from_gn_with(g: &Graph, n: usize, limits: PathLimits) -> Result<ConstructionReport> {
    let p = path_components(g, n, limits)?;
    let w = is_regular_partition(g, &p)?;
    let pre = vec![
        cond("connected", g.is_connected()),
        cond("min-degree-2", min_degree_two(g)),
    ];
    Ok(ConstructionReport::new("gn-components", p, pre, w))
}

/// Groups of identical neighbourhoods, each checked to be complete in `G_2`
/// with pairwise curvature one. Isolated vertices stay singletons.
pub fn structural_from_curvature(g: &Graph) -> Result<ConstructionReport> {
    g.require_loop_free()?;
    let g2 = neighborhood_graph_with(g, 2, WalkMode::Path, PathLimits::default())?.graph;
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    for class in structural_classes(g).blocks() {
        if g.degree(class[0]) == 0 {
            blocks.extend(class.iter().map(|&v| vec![v]));
            continue;
        }
        check_subclique(g, &g2, class)?;
        blocks.push(class.clone());
    }
    let p = Partition::from_blocks(g.vertex_count(), blocks)?;
    let w = is_regular_partition(g, &p)?;
    let pre = vec![cond("connected", g.is_connected()), cond("loop-free", true)];
    Ok(ConstructionReport::new("structural-curvature", p, pre, w))
}

fn check_subclique(g: &Graph, g2: &Graph, set: &[Vertex]) -> Result<()> {
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            let equal = g2.has_edge(x, y)
                && g.degree(x) > 0
                && g.degree(y) > 0
                && neighbor_measure(g, x)? == neighbor_measure(g, y)?;
            if !equal {
                return Err(Error::InvalidChoice(g.name(x).to_string(), g.name(y).to_string()));
            }
        }
    }
    Ok(())
}

/// Chosen curvature-one subcliques of `G_2` as blocks, everything else singletons.
pub fn regular_from_curvature_subcliques(g: &Graph, chosen: &[Vec<Vertex>]) -> Result<ConstructionReport> {
    g.require_loop_free()?;
    let g2 = neighborhood_graph_with(g, 2, WalkMode::Path, PathLimits::default())?.graph;
    let mut covered = vec![false; g.vertex_count()];
    let mut blocks = Vec::new();
    for set in chosen {
        let mut set = set.clone();
        set.sort_unstable();
        set.dedup();
        for &v in &set {
            if v >= covered.len() || std::mem::replace(&mut covered[v], true) {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} is out of range or chosen twice"
                )));
            }
        }
        check_subclique(g, &g2, &set)?;
        if !set.is_empty() {
            blocks.push(set);
        }
    }
    blocks.extend((0..g.vertex_count()).filter(|&v| !covered[v]).map(|v| vec![v]));
    let p = Partition::from_blocks(g.vertex_count(), blocks)?;
    let w = is_regular_partition(g, &p)?;
    Ok(ConstructionReport::new(
        "curvature-subcliques",
        p,
        vec![cond("chosen-sets-valid", true)],
        w,
    ))
}

fn check_triangles(g: &Graph, r: &RemovalSet) -> Result<()> {
    for t in triangles(g) {
        let hits = cycle_edges(&t).filter(|&(u, v)| r.contains(u, v)).count();
        if hits > 1 {
            let names: Vec<&str> = t.iter().map(|&v| g.name(v)).collect();
            return Err(Error::InvalidRemoval(format!(
                "triangle {} loses {hits} edges",
                names.join("-")
            )));
        }
    }
    Ok(())
}

/// Components of `(g - r)_2`, verified against the original `g`.
pub fn regular_from_triangle_removal(g: &Graph, r: &RemovalSet) -> Result<ConstructionReport> {
    g.require_loop_free()?;
    check_triangles(g, r)?;
    let reduced = r.apply(g);
    let p = path_components(&reduced, 2, PathLimits::default())?;
    let w = is_regular_partition(g, &p)?;
    let pre = vec![cond("connected", g.is_connected()), cond("one-edge-per-triangle", true)];
    Ok(ConstructionReport::new("triangle-removal", p, pre, w))
}

pub fn regular_from_kcycle_removal(g: &Graph, k: usize, r: &RemovalSet) -> Result<ConstructionReport> {
    regular_from_kcycle_removal_with(g, k, r, PathLimits::default())
}

/// Components of `(g - r)_{k-1}`. Each k-cycle (exactly k vertices) may lose
/// at most one edge, and both `g` and `g - r` need minimum degree two.
pub fn regular_from_kcycle_removal_with(
    g: &Graph,
    k: usize,
    r: &RemovalSet,
    limits: PathLimits,
) -> Result<ConstructionReport> {
    g.require_loop_free()?;
    if k < 3 {
        return Err(Error::CycleLength(k));
    }
    g.require_connected()?;
    if !min_degree_two(g) {
        return Err(Error::Precondition(
            "min-degree-2",
            "the graph has a vertex of degree below 2".into(),
        ));
    }
    for cycle in k_cycles(g, k)? {
        let hits = cycle_edges(&cycle).filter(|&(u, v)| r.contains(u, v)).count();
        if hits > 1 {
            let names: Vec<&str> = cycle.iter().map(|&v| g.name(v)).collect();
            return Err(Error::InvalidRemoval(format!(
                "{k}-cycle {} loses {hits} edges",
                names.join("-")
            )));
        }
    }
    let reduced = r.apply(g);
    if !min_degree_two(&reduced) {
        return Err(Error::Precondition(
            "min-degree-2-after-removal",
            "removal leaves a vertex of degree below 2".into(),
        ));
    }
    let p = path_components(&reduced, k - 1, limits)?;
    let w = is_regular_partition(g, &p)?;
    let pre = vec![
        cond("connected", true),
        cond("min-degree-2", true),
        cond("one-edge-per-k-cycle", true),
        cond("min-degree-2-after-removal", true),
    ];
    Ok(ConstructionReport::new("kcycle-removal", p, pre, w))
}

/// Largest graph accepted by [`valid_triangle_removal_sets`].
pub const REMOVAL_SEARCH_VERTEX_CAP: usize = 9;

/// Every removal set of at most `max_size` edges that takes at most one edge
/// from each triangle, ordered by size then lexicographically.
pub fn valid_triangle_removal_sets(g: &Graph, max_size: usize) -> Result<Vec<RemovalSet>> {
    if g.vertex_count() > REMOVAL_SEARCH_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "vertex count",
            value: g.vertex_count(),
            cap: REMOVAL_SEARCH_VERTEX_CAP,
        });
    }
    let tris = triangles(g);
    let edges = g.edges();
    let mut out = Vec::new();
    for size in 0..=max_size.min(edges.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let set = RemovalSet {
                edges: idx.iter().map(|&i| edges[i]).collect(),
            };
            let ok = tris
                .iter()
                .all(|t| cycle_edges(t).filter(|&(u, v)| set.contains(u, v)).count() <= 1);
            if ok {
                out.push(set);
            }
            // next combination of `size` indices out of `edges.len()`
            let Some(pos) = (0..size).rev().find(|&i| idx[i] < edges.len() - size + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(out)
}

fn hyper_connected(h: &Hypergraph) -> bool {
    h.connected_components().len() <= 1
}

fn at_least_two_neighbours(h: &Hypergraph) -> bool {
    (0..h.vertex_count()).all(|v| h.neighbors(v).len() >= 2)
}

/// Components of `H_2`; weak regular on every connected loop-free hypergraph.
pub fn weak_regular_from_h2(h: &Hypergraph) -> Result<ConstructionReport> {
    h.require_loop_free()?;
    let components = h.connected_components().len();
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    let p = hyper_neighborhood_graph_with(h, 2, PathLimits::default())?.components();
    let w = is_weak_regular_partition(h, &p)?;
    Ok(ConstructionReport::new(
        "h2-components",
        p,
        vec![cond("connected", true), cond("loop-free", true)],
        w,
    ))
}

pub fn weak_regular_from_hn(h: &Hypergraph, n: usize) -> Result<ConstructionReport> {
    weak_regular_from_hn_with(h, n, PathLimits::default())
}

pub fn weak_regular_from_hn_with(h: &Hypergraph, n: usize, limits: PathLimits) -> Result<ConstructionReport> {
    let p = hyper_neighborhood_graph_with(h, n, limits)?.components();
    let w = is_weak_regular_partition(h, &p)?;
    let pre = vec![
        cond("connected", hyper_connected(h)),
        cond("two-neighbours", at_least_two_neighbours(h)),
    ];
    Ok(ConstructionReport::new("hn-components", p, pre, w))
}

/// Curvature one between every pair of a set, straight from the definition.
pub fn pairwise_curvature_one(g: &Graph, set: &[Vertex]) -> Result<bool> {
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            if crate::transport::orc(g, x, y)?.kappa != Rational::from_integer(1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v<S: VertexSet>(s: &S, name: &str) -> Vertex {
        s.vertex(name).unwrap()
    }

    fn c6() -> Graph {
        Graph::parse("1 2\n2 3\n3 4\n4 5\n5 6\n6 1").unwrap()
    }

    fn h5() -> Graph {
        Graph::parse("a b\na c\na d\ne b\ne c\ne d").unwrap()
    }

    fn g3() -> Graph {
        Graph::parse("a b\nb c\nc e\ne g\ng f\nb d\nd f").unwrap()
    }

    fn p9() -> Graph {
        Graph::parse("1 2\n2 3\n3 4\n4 5\n5 6\n4 7\n7 8\n8 9\n6 9").unwrap()
    }

    fn triangle() -> Graph {
        Graph::parse("a b\nb c\nc a").unwrap()
    }

    #[test]
    fn g2_components() {
        let r = regular_from_g2(&c6()).unwrap();
        assert_eq!(r.partition.blocks(), [vec![0, 2, 4], vec![1, 3, 5]]);
        assert!(r.verified);
        assert_eq!(r.notes.len(), 1);
        assert_eq!(regular_from_g2(&triangle()).unwrap().partition.len(), 1);
        let h = h5();
        let r = regular_from_g2(&h).unwrap();
        assert_eq!(r.partition.named_blocks(&h), [vec!["a", "e"], vec!["b", "c", "d"]]);
        assert!(r.verified && r.method == "g2-components");
        assert!(matches!(
            regular_from_g2(&Graph::parse("a b\nc d").unwrap()),
            Err(Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn gn_components() {
        let r = regular_from_gn(&c6(), 3).unwrap();
        assert_eq!(r.partition.blocks(), [vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(r.verified && r.preconditions_met());

        // as drawn the graph is bipartite and G4 recovers the bipartition
        let g = p9();
        let r = regular_from_gn(&g, 4).unwrap();
        assert!(!r.preconditions_met());
        assert_eq!(r.partition, g.bipartition().unwrap().as_partition(9));
        assert!(r.verified);

        let g = g3();
        let r = regular_from_gn(&g, 3).unwrap();
        assert_eq!(
            r.partition.named_blocks(&g),
            [vec!["a", "c", "e", "f", "d"], vec!["b", "g"]]
        );
        assert!(!r.verified);
        let viol = r.violation.unwrap();
        assert_eq!(r.partition.block_of(viol.neighbor), viol.block);

        assert!(matches!(regular_from_gn(&c6(), 9), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn min_degree_counterexample() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)]);
        let r = regular_from_gn(&g, 5).unwrap();
        assert!(r.preconditions_met());
        assert_eq!(r.partition.blocks(), [vec![0, 2, 3, 4], vec![1], vec![5]]);
        assert!(!r.verified);
    }

    #[test]
    fn curvature_classes() {
        let f = Graph::parse("a d\na e\nb d\nb e\ne c").unwrap();
        let r = structural_from_curvature(&f).unwrap();
        assert!(r.partition.same_block(v(&f, "a"), v(&f, "b")));
        assert_eq!(r.partition.len(), 4);
        assert!(r.verified);
        let s = Graph::parse("hub l1\nhub l2\nhub l3").unwrap();
        assert_eq!(structural_from_curvature(&s).unwrap().partition.len(), 2);
        assert_eq!(structural_from_curvature(&c6()).unwrap().partition.len(), 6);
        assert!(pairwise_curvature_one(&f, &[v(&f, "a"), v(&f, "b")]).unwrap());
        assert!(!pairwise_curvature_one(&f, &[v(&f, "a"), v(&f, "b"), v(&f, "c")]).unwrap());
    }

    #[test]
    fn subcliques() {
        let h = h5();
        let ids = |names: &[&str]| names.iter().map(|n| v(&h, n)).collect::<Vec<_>>();
        let r = regular_from_curvature_subcliques(&h, &[ids(&["b", "c", "d"]), ids(&["a", "e"])]).unwrap();
        assert!(r.verified);
        assert_eq!(r.partition.len(), 2);
        let r = regular_from_curvature_subcliques(&h, &[ids(&["b", "c"])]).unwrap();
        assert!(r.verified);
        assert_eq!(r.partition.len(), 4);
        assert_eq!(
            regular_from_curvature_subcliques(&h, &[ids(&["a", "b"])]).unwrap_err(),
            Error::InvalidChoice("a".into(), "b".into())
        );
        assert!(matches!(
            regular_from_curvature_subcliques(&h, &[ids(&["b", "c"]), ids(&["c", "d"])]),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn triangle_removal() {
        let t = triangle();
        let r = RemovalSet::from_named(&t, &[("a", "b")]).unwrap();
        let rep = regular_from_triangle_removal(&t, &r).unwrap();
        assert_eq!(rep.partition.named_blocks(&t), [vec!["a", "b"], vec!["c"]]);
        assert!(rep.verified);

        let two = RemovalSet::from_named(&t, &[("a", "b"), ("b", "c")]).unwrap();
        assert!(matches!(
            regular_from_triangle_removal(&t, &two),
            Err(Error::InvalidRemoval(_))
        ));
        assert!(matches!(
            RemovalSet::from_named(&h5(), &[("a", "e")]),
            Err(Error::InvalidRemoval(_))
        ));

        let h = h5();
        let empty = RemovalSet::default();
        assert_eq!(
            regular_from_triangle_removal(&h, &empty).unwrap().partition,
            regular_from_g2(&h).unwrap().partition
        );
    }

    #[test]
    fn triangle_removal_counterexample() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 4), (1, 5), (2, 4), (3, 5)]);
        let r = RemovalSet::new(&g, [(1, 4)]).unwrap();
        let rep = regular_from_triangle_removal(&g, &r).unwrap();
        assert_eq!(rep.partition.blocks(), [vec![0, 2, 5], vec![1, 3, 4]]);
        assert!(!rep.verified);
    }

    #[test]
    fn kcycle_removal() {
        let g = c6();
        let r = RemovalSet::new(&g, [(0, 1)]).unwrap();
        assert!(matches!(
            regular_from_kcycle_removal(&g, 6, &r),
            Err(Error::Precondition("min-degree-2-after-removal", _))
        ));

        // two 5-cycles sharing vertex 0
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 0),
            ],
        );
        let r = RemovalSet::new(&g, [(1, 2)]).unwrap();
        assert!(matches!(
            regular_from_kcycle_removal(&g, 5, &r),
            Err(Error::Precondition(..))
        ));
        let rep = regular_from_kcycle_removal(&g, 5, &RemovalSet::default()).unwrap();
        assert!(rep.verified);
        assert_eq!(rep.partition.len(), 1);

        assert!(matches!(
            regular_from_kcycle_removal(&g, 2, &RemovalSet::default()),
            Err(Error::CycleLength(2))
        ));
        let path = Graph::parse("a b\nb c").unwrap();
        assert!(matches!(
            regular_from_kcycle_removal(&path, 3, &RemovalSet::default()),
            Err(Error::Precondition(..))
        ));
    }

    #[test]
    fn removal_enumeration() {
        let t = triangle();
        let sets = valid_triangle_removal_sets(&t, 3).unwrap();
        assert_eq!(sets.len(), 4);
        assert!(sets[0].is_empty());
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        // perfect matchings of K4 are the only valid pairs
        let pairs = valid_triangle_removal_sets(&k4, 2)
            .unwrap()
            .into_iter()
            .filter(|s| s.len() == 2)
            .count();
        assert_eq!(pairs, 3);
        assert!(valid_triangle_removal_sets(&Graph::from_edges(10, &[]), 1).is_err());
    }

    #[test]
    fn hypergraph_constructions() {
        let hx = Hypergraph::parse("x a b c\ny a\ny b\ny c").unwrap();
        let r = weak_regular_from_h2(&hx).unwrap();
        assert_eq!(r.partition.len(), 1);
        assert!(r.verified);
        let single = Hypergraph::parse("a b c").unwrap();
        let r = weak_regular_from_h2(&single).unwrap();
        assert_eq!(r.partition.len(), 3);
        assert!(r.verified);
        let bip = Hypergraph::parse("a b\nb c\nc d\nd a").unwrap();
        assert_eq!(weak_regular_from_h2(&bip).unwrap().partition.len(), 2);
        assert!(matches!(
            weak_regular_from_h2(&Hypergraph::parse("a b\nc d").unwrap()),
            Err(Error::Disconnected { .. })
        ));

        let r = weak_regular_from_hn(&hx, 2).unwrap();
        assert!(r.preconditions_met() && r.verified);
        let r = weak_regular_from_hn(&hx, 1).unwrap();
        assert_eq!(r.partition.len(), 1);
        let p9 = Hypergraph::parse("1 2\n2 3\n3 4\n4 5\n5 6\n4 7\n7 8\n8 9\n6 9").unwrap();
        assert!(!weak_regular_from_hn(&p9, 4).unwrap().preconditions_met());
    }
}
