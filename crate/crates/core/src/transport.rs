//! Exact one-step random-walk measures, 1-Wasserstein distance and
//! Ollivier–Ricci curvature.
//!
//! All masses are exact rationals. `W1` is solved as an integer
//! transportation problem: masses are scaled by the lcm `L` of their
//! denominators, a min-cost flow of value `L` is pushed through the
//! bipartite support graph with shortest-path costs, and the optimum is
//! divided by `L` again.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, Hypergraph, Vertex, VertexSet};

pub type Rational = Ratio<i128>;

/// Finitely supported probability measure with exact masses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Measure {
    masses: BTreeMap<Vertex, Rational>,
}

impl Measure {
    /// Fails unless every mass is positive and the masses sum to exactly one.
    pub fn new(entries: impl IntoIterator<Item = (Vertex, Rational)>) -> Result<Self> {
        let mut masses: BTreeMap<Vertex, Rational> = BTreeMap::new();
        for (v, m) in entries {
            *masses.entry(v).or_insert_with(Rational::zero) += m;
        }
        if masses.values().any(|m| *m <= Rational::zero()) {
            return Err(Error::Precondition("positive masses", "non-positive mass".into()));
        }
        let total: Rational = masses.values().copied().sum();
        if total != Rational::one() {
            return Err(Error::Precondition("unit total mass", format!("masses sum to {total}")));
        }
        Ok(Measure { masses })
    }

    pub fn uniform(support: &[Vertex]) -> Result<Self> {
        let len = support.len() as i128;
        Measure::new(support.iter().map(|&v| (v, Rational::new(1, len))))
    }

    pub fn mass(&self, v: Vertex) -> Rational {
        self.masses.get(&v).copied().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.masses.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Rational)> + '_ {
        self.masses.iter().map(|(&v, &m)| (v, m))
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }
}

/// Exact rational equality of supports and masses.
pub fn measures_equal(mu: &Measure, nu: &Measure) -> bool {
    mu == nu
}

/// Joint measure on `source × target`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coupling {
    entries: BTreeMap<(Vertex, Vertex), Rational>,
}

impl Coupling {
    pub fn iter(&self) -> impl Iterator<Item = ((Vertex, Vertex), Rational)> + '_ {
        self.entries.iter().map(|(&k, &m)| (k, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mass(&self, u: Vertex, v: Vertex) -> Rational {
        self.entries.get(&(u, v)).copied().unwrap_or_else(Rational::zero)
    }

    /// Whether the row and column marginals are exactly `mu` and `nu`.
    pub fn has_marginals(&self, mu: &Measure, nu: &Measure) -> bool {
        let mut rows: BTreeMap<Vertex, Rational> = BTreeMap::new();
        let mut cols: BTreeMap<Vertex, Rational> = BTreeMap::new();
        for (&(u, v), &m) in &self.entries {
            if m <= Rational::zero() {
                return false;
            }
            *rows.entry(u).or_insert_with(Rational::zero) += m;
            *cols.entry(v).or_insert_with(Rational::zero) += m;
        }
        rows == mu.masses && cols == nu.masses
    }

    pub fn cost(&self, dist: impl Fn(Vertex, Vertex) -> Distance) -> Option<Rational> {
        self.entries.iter().try_fold(Rational::zero(), |acc, (&(u, v), &m)| {
            dist(u, v).finite().map(|d| acc + m * Rational::from_integer(d as i128))
        })
    }
}

struct FlowEdge {
    to: usize,
    cap: i128,
    cost: i128,
    rev: usize,
}

struct FlowNetwork {
    adj: Vec<Vec<FlowEdge>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: (0..nodes).map(|_| Vec::new()).collect(),
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i128, cost: i128) -> (usize, usize) {
        let fwd = self.adj[from].len();
        let back = self.adj[to].len();
        self.adj[from].push(FlowEdge {
            to,
            cap,
            cost,
            rev: back,
        });
        self.adj[to].push(FlowEdge {
            to: from,
            cap: 0,
            cost: -cost,
            rev: fwd,
        });
        (from, fwd)
    }

    /// Successive shortest paths with Bellman-Ford. Relaxations scan nodes and
    /// edges in insertion order and only accept strict improvements, so the
    /// resulting flow is reproducible.
    fn min_cost_flow(&mut self, source: usize, sink: usize, amount: i128) -> Result<i128> {
        let nodes = self.adj.len();
        let mut remaining = amount;
        let mut total = 0i128;
        while remaining > 0 {
            let mut dist = vec![i128::MAX; nodes];
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; nodes];
            dist[source] = 0;
            for _ in 0..nodes {
                let mut changed = false;
                for u in 0..nodes {
                    if dist[u] == i128::MAX {
                        continue;
                    }
                    for (i, e) in self.adj[u].iter().enumerate() {
                        if e.cap > 0 && dist[u] + e.cost < dist[e.to] {
                            dist[e.to] = dist[u] + e.cost;
                            prev[e.to] = Some((u, i));
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if dist[sink] == i128::MAX {
                return Err(Error::Precondition("feasible transport", "sink unreachable".into()));
            }
            let mut push = remaining;
            let mut v = sink;
            while let Some((u, i)) = prev[v] {
                push = push.min(self.adj[u][i].cap);
                v = u;
            }
            let mut v = sink;
            while let Some((u, i)) = prev[v] {
                self.adj[u][i].cap -= push;
                let rev = self.adj[u][i].rev;
                self.adj[v][rev].cap += push;
                v = u;
            }
            total = push
                .checked_mul(dist[sink])
                .and_then(|c| total.checked_add(c))
                .ok_or(Error::Overflow("transport cost"))?;
            remaining -= push;
        }
        Ok(total)
    }
}

/// `W1(mu, nu)` under `dist`, with an optimal coupling witness.
pub fn wasserstein1(
    mu: &Measure,
    nu: &Measure,
    dist: impl Fn(Vertex, Vertex) -> Distance,
) -> Result<(Rational, Coupling)> {
    let sources: Vec<(Vertex, Rational)> = mu.iter().collect();
    let sinks: Vec<(Vertex, Rational)> = nu.iter().collect();
    let mut costs = vec![vec![0i128; sinks.len()]; sources.len()];
    for (i, &(u, _)) in sources.iter().enumerate() {
        for (j, &(v, _)) in sinks.iter().enumerate() {
            costs[i][j] = dist(u, v).finite().ok_or(Error::SupportsSpanComponents)? as i128;
        }
    }
    if mu == nu {
        let entries = sources.iter().map(|&(v, m)| ((v, v), m)).collect();
        return Ok((Rational::zero(), Coupling { entries }));
    }

    let scale = sources
        .iter()
        .chain(&sinks)
        .try_fold(1i128, |acc, (_, m)| {
            let d = *m.denom();
            (acc / acc.gcd(&d)).checked_mul(d)
        })
        .ok_or(Error::Overflow("mass denominator lcm"))?;
    let scaled = |m: &Rational| -> Result<i128> {
        m.numer()
            .checked_mul(scale / m.denom())
            .ok_or(Error::Overflow("scaled mass"))
    };

    let (m, n) = (sources.len(), sinks.len());
    let (s, t) = (0, m + n + 1);
    let mut net = FlowNetwork::new(m + n + 2);
    for (i, (_, mass)) in sources.iter().enumerate() {
        net.add_edge(s, 1 + i, scaled(mass)?, 0);
    }
    let mut middle = Vec::with_capacity(m * n);
    for i in 0..m {
        for j in 0..n {
            middle.push((i, j, net.add_edge(1 + i, 1 + m + j, scale, costs[i][j])));
        }
    }
    for (j, (_, mass)) in sinks.iter().enumerate() {
        net.add_edge(1 + m + j, t, scaled(mass)?, 0);
    }
    let total = net.min_cost_flow(s, t, scale)?;

    let mut entries = BTreeMap::new();
    for (i, j, (node, idx)) in middle {
        let flow = scale - net.adj[node][idx].cap;
        if flow > 0 {
            entries.insert((sources[i].0, sinks[j].0), Rational::new(flow, scale));
        }
    }
    Ok((Rational::new(total, scale), Coupling { entries }))
}

/// Curvature of a pair together with its transport witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureResult {
    pub kappa: Rational,
    pub w1: Rational,
    pub distance: usize,
    pub coupling: Coupling,
}

fn curvature(
    mu: &Measure,
    nu: &Measure,
    distance: usize,
    rows: impl Fn(Vertex) -> Vec<Distance>,
) -> Result<CurvatureResult> {
    let table: HashMap<Vertex, Vec<Distance>> = mu.support().map(|u| (u, rows(u))).collect();
    let (w1, coupling) = wasserstein1(mu, nu, |u, v| table[&u][v])?;
    let kappa = Rational::one() - w1 / Rational::from_integer(distance as i128);
    Ok(CurvatureResult {
        kappa,
        w1,
        distance,
        coupling,
    })
}

/// Uniform mass `1/d_x` on the neighbours of `x`.
pub fn neighbor_measure(g: &Graph, x: Vertex) -> Result<Measure> {
    g.require_loop_free()?;
    if g.degree(x) == 0 {
        return Err(Error::IsolatedVertex(g.name(x).to_string()));
    }
    Measure::uniform(g.neighbors(x))
}

fn pair_distance<S: VertexSet>(s: &S, x: Vertex, y: Vertex, d: Distance) -> Result<usize> {
    if x == y {
        return Err(Error::SameVertex(s.name(x).to_string()));
    }
    d.finite()
        .ok_or_else(|| Error::DifferentComponents(s.name(x).to_string(), s.name(y).to_string()))
}

/// Ollivier–Ricci curvature with neighbour measures and graph distance.
pub fn orc(g: &Graph, x: Vertex, y: Vertex) -> Result<CurvatureResult> {
    g.require_loop_free()?;
    let d = pair_distance(g, x, y, g.distance(x, y))?;
    let mu = neighbor_measure(g, x)?;
    let nu = neighbor_measure(g, y)?;
    curvature(&mu, &nu, d, |u| g.distances_from(u))
}

/// Equal-nodes walk: uniform on `N(x)`.
pub fn en_measure(h: &Hypergraph, x: Vertex) -> Result<Measure> {
    h.require_loop_free()?;
    if h.neighbors(x).is_empty() {
        return Err(Error::IsolatedVertex(h.name(x).to_string()));
    }
    Measure::uniform(h.neighbors(x))
}

/// Equal-edges walk: `mu_x(z) = (1/d_x) * sum over e ∋ x,z of 1/(|e| - 1)`.
pub fn ee_measure(h: &Hypergraph, x: Vertex) -> Result<Measure> {
    h.require_loop_free()?;
    let degree = h.degree(x) as i128;
    if degree == 0 {
        return Err(Error::IsolatedVertex(h.name(x).to_string()));
    }
    let mut entries = Vec::new();
    for &e in h.incident(x) {
        let edge = &h.hyperedges()[e];
        let share = Rational::new(1, degree * (edge.len() as i128 - 1));
        entries.extend(edge.iter().filter(|&&z| z != x).map(|&z| (z, share)));
    }
    Measure::new(entries)
}

pub fn en_orc(h: &Hypergraph, x: Vertex, y: Vertex) -> Result<CurvatureResult> {
    h.require_loop_free()?;
    let d = pair_distance(h, x, y, h.distance(x, y))?;
    curvature(&en_measure(h, x)?, &en_measure(h, y)?, d, |u| h.distances_from(u))
}

pub fn ee_orc(h: &Hypergraph, x: Vertex, y: Vertex) -> Result<CurvatureResult> {
    h.require_loop_free()?;
    let d = pair_distance(h, x, y, h.distance(x, y))?;
    curvature(&ee_measure(h, x)?, &ee_measure(h, y)?, d, |u| h.distances_from(u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn c6() -> Graph {
        Graph::parse("1 2\n2 3\n3 4\n4 5\n5 6\n6 1").unwrap()
    }

    // 4-cycle a-e-b-d plus pendant c at e
    fn fig3() -> Graph {
        Graph::parse("a e\ne b\nb d\nd a\ne c").unwrap()
    }

    fn star3() -> Graph {
        Graph::parse("hub l1\nhub l2\nhub l3").unwrap()
    }

    fn v<S: VertexSet>(s: &S, name: &str) -> Vertex {
        s.vertex(name).unwrap()
    }

    #[test]
    fn neighbour_measures() {
        let g = c6();
        let mu = neighbor_measure(&g, 0).unwrap();
        assert_eq!(mu.iter().collect::<Vec<_>>(), [(1, r(1, 2)), (5, r(1, 2))]);
        let s = star3();
        let hub = neighbor_measure(&s, v(&s, "hub")).unwrap();
        assert!(hub.iter().all(|(_, m)| m == r(1, 3)));
        let f = fig3();
        let a = neighbor_measure(&f, v(&f, "a")).unwrap();
        assert_eq!(a.len(), 2);
        assert!(a.iter().all(|(_, m)| m == r(1, 2)));

        let iso = Graph::parse("a b\nc").unwrap();
        assert!(matches!(neighbor_measure(&iso, 2), Err(Error::LoopNotAllowed(_))));
        let iso = Graph::from_edges(3, &[(0, 1)]);
        assert!(matches!(neighbor_measure(&iso, 2), Err(Error::IsolatedVertex(_))));
    }

    #[test]
    fn hypergraph_measures() {
        let hx = Hypergraph::parse("x a b c\ny a\ny b\ny c").unwrap();
        for who in ["x", "y"] {
            for mu in [
                en_measure(&hx, v(&hx, who)).unwrap(),
                ee_measure(&hx, v(&hx, who)).unwrap(),
            ] {
                assert_eq!(mu.len(), 3);
                assert!(mu.iter().all(|(_, m)| m == r(1, 3)));
            }
        }

        let h1 = Hypergraph::parse("x a b c\na b y\nc d y\nx d").unwrap();
        let en = en_measure(&h1, v(&h1, "x")).unwrap();
        assert!(en.iter().all(|(_, m)| m == r(1, 4)) && en.len() == 4);
        let ex = ee_measure(&h1, v(&h1, "x")).unwrap();
        let ey = ee_measure(&h1, v(&h1, "y")).unwrap();
        for (name, mx, my) in [
            ("a", r(1, 6), r(1, 4)),
            ("b", r(1, 6), r(1, 4)),
            ("c", r(1, 6), r(1, 4)),
            ("d", r(1, 2), r(1, 4)),
        ] {
            assert_eq!(ex.mass(v(&h1, name)), mx, "{name}");
            assert_eq!(ey.mass(v(&h1, name)), my, "{name}");
        }
        assert!(!measures_equal(&ex, &ey));

        let pair = Hypergraph::parse("a b").unwrap();
        assert_eq!(en_measure(&pair, 0).unwrap().iter().collect::<Vec<_>>(), [(1, r(1, 1))]);
        let tri = Hypergraph::parse("x a b").unwrap();
        let m = ee_measure(&tri, 0).unwrap();
        assert_eq!(m.iter().collect::<Vec<_>>(), [(1, r(1, 2)), (2, r(1, 2))]);
    }

    #[test]
    fn identical_measures_cost_nothing() {
        let g = c6();
        let mu = neighbor_measure(&g, 0).unwrap();
        let (w, coupling) = wasserstein1(&mu, &mu, |a, b| g.distance(a, b)).unwrap();
        assert_eq!(w, r(0, 1));
        assert_eq!(
            coupling.iter().collect::<Vec<_>>(),
            [((1, 1), r(1, 2)), ((5, 5), r(1, 2))]
        );
    }

    #[test]
    fn hexagon_curvature() {
        // mu_1 = {6, 2}, mu_2 = {1, 3}; every coupling of two 2-point measures with
        // halves is t*[[d(6,1), d(6,3)],[d(2,1),d(2,3)]] mixtures; d = [[1,3],[1,1]]:
        // cost(t) = t*1 + (1/2-t)*3 + (1/2-t)*1 + t*1 over t in [0,1/2] -> min 1 at t=1/2
        let g = c6();
        let res = orc(&g, 0, 1).unwrap();
        assert_eq!(res.w1, r(1, 1));
        assert_eq!(res.kappa, r(0, 1));
        assert_eq!(res.distance, 1);
        assert!(res
            .coupling
            .has_marginals(&neighbor_measure(&g, 0).unwrap(), &neighbor_measure(&g, 1).unwrap()));
        assert_eq!(res.coupling.cost(|a, b| g.distance(a, b)), Some(res.w1));
    }

    #[test]
    fn star_and_square_curvature() {
        let s = star3();
        let res = orc(&s, v(&s, "l1"), v(&s, "l2")).unwrap();
        assert_eq!((res.kappa, res.distance), (r(1, 1), 2));

        let f = fig3();
        assert_eq!(orc(&f, v(&f, "a"), v(&f, "b")).unwrap().kappa, r(1, 1));
        assert!(orc(&f, v(&f, "a"), v(&f, "c")).unwrap().kappa < r(1, 1));
    }

    #[test]
    fn curvature_errors() {
        let g = c6();
        assert_eq!(orc(&g, 2, 2).unwrap_err(), Error::SameVertex("3".into()));
        let two = Graph::parse("a b\nc d").unwrap();
        assert!(matches!(orc(&two, 0, 2), Err(Error::DifferentComponents(_, _))));
        let mu = neighbor_measure(&two, 0).unwrap();
        let nu = neighbor_measure(&two, 2).unwrap();
        assert_eq!(
            wasserstein1(&mu, &nu, |a, b| two.distance(a, b)).unwrap_err(),
            Error::SupportsSpanComponents
        );
        let hx = Hypergraph::parse("x a\ny b").unwrap();
        assert!(matches!(en_orc(&hx, 0, 2), Err(Error::DifferentComponents(_, _))));
        assert!(matches!(ee_orc(&hx, 0, 0), Err(Error::SameVertex(_))));
        assert!(matches!(
            ee_orc(&Hypergraph::parse("x\nx a").unwrap(), 0, 1),
            Err(Error::LoopNotAllowed(_))
        ));
    }

    #[test]
    fn hypergraph_curvatures() {
        let hx = Hypergraph::parse("x a b c\ny a\ny b\ny c").unwrap();
        let (x, y) = (v(&hx, "x"), v(&hx, "y"));
        assert_eq!(en_orc(&hx, x, y).unwrap().kappa, r(1, 1));
        assert_eq!(ee_orc(&hx, x, y).unwrap().kappa, r(1, 1));

        let h1 = Hypergraph::parse("x a b c\na b y\nc d y\nx d").unwrap();
        let (x, y) = (v(&h1, "x"), v(&h1, "y"));
        assert_eq!(en_orc(&h1, x, y).unwrap().kappa, r(1, 1));
        let ee = ee_orc(&h1, x, y).unwrap();
        assert_ne!(ee.kappa, r(1, 1));
        assert!(ee.w1 > r(0, 1));
    }

    #[test]
    fn invalid_measures_are_rejected() {
        assert!(Measure::new([(0, r(1, 2))]).is_err());
        assert!(Measure::new([(0, r(3, 2)), (1, r(-1, 2))]).is_err());
        assert!(Measure::new([(0, r(1, 2)), (0, r(1, 2))]).is_ok());
    }
}
