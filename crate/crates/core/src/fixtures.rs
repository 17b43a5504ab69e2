//! Bundled example structures and a corpus of checkable claims about them.

use std::collections::BTreeSet;

use crate::equivalence::{
    hierarchy_level, is_regular_partition, is_strong_structural, is_structural_partition, is_weak_structural,
    regular_violations, HierarchyLevel,
};
use crate::error::Result;
use crate::graph::{Graph, Hypergraph, Partition, VertexSet};
use crate::neighborhood::{neighborhood_graph, WalkMode};
use crate::partitions::{regular_from_g2, regular_from_gn};
use crate::similarity::similarity_report;
use crate::transport::{ee_orc, en_orc, orc, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureKind {
    Graph,
    Hypergraph,
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub kind: FixtureKind,
    pub text: &'static str,
}

macro_rules! fixture {
    ($name:literal, $file:literal, $kind:ident) => {
        Fixture {
            name: $name,
            file: $file,
            kind: FixtureKind::$kind,
            text: include_str!(concat!("../../../fixtures/", $file)),
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("c6", "c6.edges", Graph),
    fixture!("p9", "p9.edges", Graph),
    fixture!("fig3", "fig3.edges", Graph),
    fixture!("h5", "h5.edges", Graph),
    fixture!("g3", "g3.edges", Graph),
    fixture!("l3", "l3.edges", Graph),
    fixture!("star3", "star3.edges", Graph),
    fixture!("triangle", "triangle.edges", Graph),
    fixture!("hx", "hx.hyper", Hypergraph),
    fixture!("h1", "h1.hyper", Hypergraph),
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Parsed graph fixture; panics on unknown names or hypergraph fixtures.
pub fn graph(name: &str) -> Graph {
    let f = fixture(name).unwrap_or_else(|| panic!("no fixture `{name}`"));
    assert_eq!(f.kind, FixtureKind::Graph, "`{name}` is a hypergraph");
    Graph::parse(f.text).expect("bundled fixtures parse")
}

pub fn hypergraph(name: &str) -> Hypergraph {
    let f = fixture(name).unwrap_or_else(|| panic!("no fixture `{name}`"));
    assert_eq!(f.kind, FixtureKind::Hypergraph, "`{name}` is a graph");
    Hypergraph::parse(f.text).expect("bundled fixtures parse")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimOutcome {
    pub id: &'static str,
    pub statement: &'static str,
    /// `Ok(true)` when the claim holds on the fixture.
    pub result: std::result::Result<bool, String>,
}

impl ClaimOutcome {
    pub fn passed(&self) -> bool {
        self.result == Ok(true)
    }
}

type Check = fn() -> Result<bool>;

fn one() -> Rational {
    Rational::from_integer(1)
}

fn named(s: &impl VertexSet, blocks: &[&[&str]]) -> Result<Partition> {
    let owned: Vec<Vec<&str>> = blocks.iter().map(|b| b.to_vec()).collect();
    Partition::from_named_blocks(s, &owned)
}

const CLAIMS: &[(&str, &str, Check)] = &[
    (
        "c6-component-counts",
        "hexagon: G_n component counts for n = 1..6 are 1,2,2,2,1,6",
        || {
            let g = graph("c6");
            let counts = (1..=6)
                .map(|n| Ok(neighborhood_graph(&g, n, WalkMode::Path)?.components().len()))
                .collect::<Result<Vec<_>>>()?;
            Ok(counts == [1, 2, 2, 2, 1, 6])
        },
    ),
    (
        "c6-g3-three-blocks",
        "hexagon: G_3 has three components of size two",
        || {
            let g = graph("c6");
            let p = neighborhood_graph(&g, 3, WalkMode::Path)?.components();
            Ok(p.len() == 3 && p.blocks().iter().all(|b| b.len() == 2))
        },
    ),
    (
        "c6-g2-bipartition",
        "hexagon: G_2 components are the bipartition classes",
        || {
            let g = graph("c6");
            Ok(regular_from_g2(&g)?.partition == g.bipartition()?.as_partition(6))
        },
    ),
    (
        "c6-adjacent-flat",
        "hexagon: adjacent vertices have curvature 0",
        || {
            let g = graph("c6");
            Ok(orc(&g, 0, 1)?.kappa == Rational::from_integer(0))
        },
    ),
    (
        "h5-g2-blocks",
        "K_{2,3}: G_2 splits into {a,e} and {b,c,d}, regular",
        || {
            let g = graph("h5");
            let r = regular_from_g2(&g)?;
            Ok(r.verified && r.partition == named(&g, &[&["a", "e"], &["b", "c", "d"]])?)
        },
    ),
    ("l3-endpoints", "path on four vertices: {1,4},{2,3} is regular", || {
        let g = graph("l3");
        Ok(is_regular_partition(&g, &named(&g, &[&["1", "4"], &["2", "3"]])?)?.verdict())
    }),
    (
        "p9-g4-not-regular",
        "nine-vertex graph: G_4 components are not a regular partition",
        || Ok(!regular_from_gn(&graph("p9"), 4)?.verified),
    ),
    (
        "p9-colouring-witness",
        "nine-vertex graph: blocks {3,9} | rest fail at (5,6) via 9",
        || {
            let g = graph("p9");
            let p = named(&g, &[&["3", "9"], &["1", "2", "4", "5", "6", "7", "8"]])?;
            let (x, y, nine) = (g.vertex("5")?, g.vertex("6")?, g.vertex("9")?);
            Ok(regular_violations(&g, &p)?
                .iter()
                .any(|v| v.pair == (x, y) && v.neighbor == nine))
        },
    ),
    (
        "g3-gn-regular",
        "degree-one example: G_3 components are regular",
        || Ok(regular_from_gn(&graph("g3"), 3)?.verified),
    ),
    (
        "fig3-structural",
        "square with pendant: {a,b} structural, {a,b,c} not",
        || {
            let g = graph("fig3");
            let ok = is_structural_partition(&g, &named(&g, &[&["a", "b"], &["c"], &["d"], &["e"]])?)?.verdict();
            let bad = is_structural_partition(&g, &named(&g, &[&["a", "b", "c"], &["d"], &["e"]])?)?.verdict();
            Ok(ok && !bad)
        },
    ),
    (
        "fig3-curvature",
        "square with pendant: kappa(a,b) = 1 and kappa(a,c) < 1",
        || {
            let g = graph("fig3");
            let (a, b, c) = (g.vertex("a")?, g.vertex("b")?, g.vertex("c")?);
            Ok(orc(&g, a, b)?.kappa == one() && orc(&g, a, c)?.kappa < one())
        },
    ),
    ("star-similarity", "star: leaves have cosine 1 and curvature 1", || {
        let g = graph("star3");
        let r = similarity_report(&g, g.vertex("l1")?, g.vertex("l2")?)?;
        Ok(r.cosine.is_one() && r.kappa == Some(one()))
    }),
    (
        "hx-curvatures",
        "hx: EN and EE curvature of (x,y) are 1, weak but not strong",
        || {
            let h = hypergraph("hx");
            let (x, y) = (h.vertex("x")?, h.vertex("y")?);
            Ok(en_orc(&h, x, y)?.kappa == one()
                && ee_orc(&h, x, y)?.kappa == one()
                && is_weak_structural(&h, x, y)
                && !is_strong_structural(&h, x, y))
        },
    ),
    (
        "h1-curvatures",
        "h1: EN curvature of (x,y) is 1, EE curvature is not",
        || {
            let h = hypergraph("h1");
            let (x, y) = (h.vertex("x")?, h.vertex("y")?);
            Ok(en_orc(&h, x, y)?.kappa == one()
                && ee_orc(&h, x, y)?.kappa != one()
                && is_weak_structural(&h, x, y)
                && !is_strong_structural(&h, x, y))
        },
    ),
    (
        "hx-hierarchy",
        "hx: (x,y) is EE-measure and weighted-neighbourhood equivalent only",
        || {
            let h = hypergraph("hx");
            let got = hierarchy_level(&h, h.vertex("x")?, h.vertex("y")?)?;
            Ok(got == BTreeSet::from([HierarchyLevel::EEMeasure, HierarchyLevel::WeightedNeighbourhood]))
        },
    ),
];

/// Evaluates every bundled claim in a fixed order.
pub fn run_claims() -> Vec<ClaimOutcome> {
    CLAIMS
        .iter()
        .map(|&(id, statement, check)| ClaimOutcome {
            id,
            statement,
            result: check().map_err(|e| e.to_string()),
        })
        .collect()
}
