//! Structural and regular equivalence: partition verifiers for graphs and
//! hypergraphs, structural classes, and the hypergraph equivalence hierarchy.
//!
//! A [`Violation`] `{pair: (a, b), neighbor: c, block: k}` reads: `c` is a
//! neighbour of `b` lying in block `k`, and `a` has no matching neighbour
//! there.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Graph, Hypergraph, Partition, Vertex, VertexSet};
use crate::transport::{ee_measure, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub pair: (Vertex, Vertex),
    pub neighbor: Vertex,
    pub block: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EquivalenceWitness {
    pub violation: Option<Violation>,
}

impl EquivalenceWitness {
    pub fn verdict(&self) -> bool {
        self.violation.is_none()
    }
}

fn check_partition(n: usize, p: &Partition) -> Result<()> {
    if p.vertex_count() != n {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices, structure has {n}",
            p.vertex_count()
        )));
    }
    Ok(())
}

/// Compares per-vertex signatures inside every block.
///
/// `signatures[v]` maps keys to a representative neighbour; a pair `(a, b)` is
/// violated by the first key of `b` that `a` lacks. `block_of_key` gives the
/// reported block.
fn first_mismatch<K: Ord + Clone>(
    p: &Partition,
    signatures: &[BTreeMap<K, Vertex>],
    block_of_key: impl Fn(&K) -> usize,
    collect_all: bool,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let missing = |a: Vertex, b: Vertex| {
        signatures[b]
            .iter()
            .find(|(k, _)| !signatures[a].contains_key(k))
            .map(|(k, &c)| Violation {
                pair: (a, b),
                neighbor: c,
                block: block_of_key(k),
            })
    };
    for block in p.blocks() {
        let rep = block[0];
        let keys = |v: Vertex| signatures[v].keys().cloned().collect::<Vec<_>>();
        if !collect_all && block.iter().all(|&v| keys(v) == keys(rep)) {
            continue;
        }
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                for v in [missing(a, b), missing(b, a)].into_iter().flatten() {
                    out.push(v);
                    if !collect_all {
                        return out;
                    }
                }
            }
        }
    }
    out
}

fn witness(mut found: Vec<Violation>) -> EquivalenceWitness {
    EquivalenceWitness {
        violation: found.drain(..).next(),
    }
}

/// Per vertex: neighbour -> neighbour.
fn neighbour_signatures(g: &Graph) -> Vec<BTreeMap<Vertex, Vertex>> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().map(|&c| (c, c)).collect())
        .collect()
}

/// Per vertex: block of neighbour -> smallest neighbour in that block.
fn block_signatures(p: &Partition, neighbors: impl Fn(Vertex) -> Vec<Vertex>) -> Vec<BTreeMap<usize, Vertex>> {
    (0..p.vertex_count())
        .map(|v| {
            let mut sig = BTreeMap::new();
            for c in neighbors(v) {
                sig.entry(p.block_of(c)).or_insert(c);
            }
            sig
        })
        .collect()
}

/// Same-block vertices have identical neighbour sets.
pub fn is_structural_partition(g: &Graph, p: &Partition) -> Result<EquivalenceWitness> {
    check_partition(g.vertex_count(), p)?;
    let sigs = neighbour_signatures(g);
    Ok(witness(first_mismatch(p, &sigs, |&c| p.block_of(c), false)))
}

/// Same-block vertices see the same set of neighbour blocks; checked in both
/// directions of every pair.
pub fn is_regular_partition(g: &Graph, p: &Partition) -> Result<EquivalenceWitness> {
    check_partition(g.vertex_count(), p)?;
    let sigs = block_signatures(p, |v| g.neighbors(v).to_vec());
    Ok(witness(first_mismatch(p, &sigs, |&k| k, false)))
}

/// Every violation of regularity, ordered by block then pair.
pub fn regular_violations(g: &Graph, p: &Partition) -> Result<Vec<Violation>> {
    check_partition(g.vertex_count(), p)?;
    let sigs = block_signatures(p, |v| g.neighbors(v).to_vec());
    Ok(first_mismatch(p, &sigs, |&k| k, true))
}

/// Vertices grouped by identical neighbour sets.
pub fn structural_classes(g: &Graph) -> Partition {
    let mut ids: HashMap<&[Vertex], usize> = HashMap::new();
    let labels: Vec<usize> = (0..g.vertex_count())
        .map(|v| {
            let next = ids.len();
            *ids.entry(g.neighbors(v)).or_insert(next)
        })
        .collect();
    Partition::from_labels(&labels)
}

/// `N(x) = N(y)`.
pub fn is_weak_structural(h: &Hypergraph, x: Vertex, y: Vertex) -> bool {
    h.neighbors(x) == h.neighbors(y)
}

/// Weak structural equivalence with matching incidence stars: the hyperedges
/// at `x` and at `y` pair up (with multiplicity) so that `e \ {x} = e' \ {y}`.
pub fn is_strong_structural(h: &Hypergraph, x: Vertex, y: Vertex) -> bool {
    is_weak_structural(h, x, y) && incidence_star(h, x) == incidence_star(h, y)
}

pub fn is_weak_structural_partition(h: &Hypergraph, p: &Partition) -> Result<EquivalenceWitness> {
    check_partition(h.vertex_count(), p)?;
    let sigs: Vec<BTreeMap<Vertex, Vertex>> = (0..h.vertex_count())
        .map(|v| h.neighbors(v).iter().map(|&c| (c, c)).collect())
        .collect();
    Ok(witness(first_mismatch(p, &sigs, |&c| p.block_of(c), false)))
}

pub fn is_strong_structural_partition(h: &Hypergraph, p: &Partition) -> Result<EquivalenceWitness> {
    check_partition(h.vertex_count(), p)?;
    // key: (e \ {v}, occurrence), value: a vertex of e \ {v} to report
    let sigs: Vec<BTreeMap<(Vec<Vertex>, usize), Vertex>> = (0..h.vertex_count())
        .map(|v| {
            let mut sig = BTreeMap::new();
            let mut seen: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
            for rest in incidence_star(h, v) {
                let count = seen.entry(rest.clone()).or_insert(0);
                let witness = rest.first().copied().unwrap_or(v);
                sig.insert((rest, *count), witness);
                *count += 1;
            }
            sig
        })
        .collect();
    Ok(witness(first_mismatch(
        p,
        &sigs,
        |(rest, _)| rest.first().map_or(0, |&c| p.block_of(c)),
        false,
    )))
}

/// Same-block vertices reach the same set of neighbour blocks.
pub fn is_weak_regular_partition(h: &Hypergraph, p: &Partition) -> Result<EquivalenceWitness> {
    check_partition(h.vertex_count(), p)?;
    let sigs = block_signatures(p, |v| h.neighbors(v).to_vec());
    Ok(witness(first_mismatch(p, &sigs, |&k| k, false)))
}

/// As the weak notion, but neighbour blocks are paired with the cardinality
/// of the witnessing hyperedge.
pub fn is_strong_regular_partition(h: &Hypergraph, p: &Partition) -> Result<EquivalenceWitness> {
    check_partition(h.vertex_count(), p)?;
    let sigs: Vec<BTreeMap<(usize, usize), Vertex>> = (0..h.vertex_count())
        .map(|v| {
            let mut sig = BTreeMap::new();
            for &e in h.incident(v) {
                let edge = &h.hyperedges()[e];
                for &a in edge.iter().filter(|&&a| a != v) {
                    let slot = sig.entry((p.block_of(a), edge.len())).or_insert(a);
                    *slot = (*slot).min(a);
                }
            }
            sig
        })
        .collect();
    Ok(witness(first_mismatch(p, &sigs, |&(k, _)| k, false)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HierarchyLevel {
    EEMeasure,
    WeightedNeighbourhood,
    Multiset,
    Strong,
}

impl HierarchyLevel {
    pub const ALL: [HierarchyLevel; 4] = [
        HierarchyLevel::EEMeasure,
        HierarchyLevel::WeightedNeighbourhood,
        HierarchyLevel::Multiset,
        HierarchyLevel::Strong,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            HierarchyLevel::EEMeasure => "ee-measure",
            HierarchyLevel::WeightedNeighbourhood => "weighted-neighbourhood",
            HierarchyLevel::Multiset => "multiset",
            HierarchyLevel::Strong => "strong",
        }
    }
}

/// `z -> sum over e ∋ x,z of 1/(|e| - 1)`.
pub fn neighbourhood_weights(h: &Hypergraph, x: Vertex) -> BTreeMap<Vertex, Rational> {
    let mut out = BTreeMap::new();
    for &e in h.incident(x) {
        let edge = &h.hyperedges()[e];
        for &z in edge.iter().filter(|&&z| z != x) {
            *out.entry(z).or_insert_with(|| Rational::from_integer(0)) += Rational::new(1, edge.len() as i128 - 1);
        }
    }
    out
}

fn cardinality_multisets(h: &Hypergraph, x: Vertex) -> BTreeMap<Vertex, Vec<usize>> {
    let mut out: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for &e in h.incident(x) {
        let edge = &h.hyperedges()[e];
        for &z in edge.iter().filter(|&&z| z != x) {
            out.entry(z).or_default().push(edge.len());
        }
    }
    for sizes in out.values_mut() {
        sizes.sort_unstable();
    }
    out
}

/// Multiset of `e \ {x}` over the hyperedges incident to `x`.
fn incidence_star(h: &Hypergraph, x: Vertex) -> Vec<Vec<Vertex>> {
    let mut star: Vec<Vec<Vertex>> = h
        .incident(x)
        .iter()
        .map(|&e| h.hyperedges()[e].iter().copied().filter(|&z| z != x).collect())
        .collect();
    star.sort();
    star
}

/// Every level of the hierarchy whose predicate holds for `(x, y)`.
pub fn hierarchy_level(h: &Hypergraph, x: Vertex, y: Vertex) -> Result<BTreeSet<HierarchyLevel>> {
    h.require_loop_free()?;
    let mut levels = BTreeSet::new();
    if ee_measure(h, x)? == ee_measure(h, y)? {
        levels.insert(HierarchyLevel::EEMeasure);
    }
    if neighbourhood_weights(h, x) == neighbourhood_weights(h, y) {
        levels.insert(HierarchyLevel::WeightedNeighbourhood);
    }
    if cardinality_multisets(h, x) == cardinality_multisets(h, y) {
        levels.insert(HierarchyLevel::Multiset);
    }
    if incidence_star(h, x) == incidence_star(h, y) {
        levels.insert(HierarchyLevel::Strong);
    }
    Ok(levels)
}

/// Hypotheses under which EE-ORC = 1 forces strong structural equivalence:
/// equal degrees, and a unique hyperedge over `{x, z}` and over `{y, z}` for
/// each common neighbour `z`.
pub fn single_edge_condition(h: &Hypergraph, x: Vertex, y: Vertex) -> bool {
    if h.degree(x) != h.degree(y) {
        return false;
    }
    let (mx, my) = (cardinality_multisets(h, x), cardinality_multisets(h, y));
    mx.iter()
        .filter_map(|(z, sx)| my.get(z).map(|sy| (sx, sy)))
        .all(|(sx, sy)| sx.len() == 1 && sy.len() == 1)
}
