//! Cosine similarity and the curvature bounds it implies.
//!
//! `sigma = eta / sqrt(d_x d_y)` is usually irrational, so it is carried as
//! the exact triple `(eta, d_x, d_y)`. Every comparison is done on cleared
//! forms; the floating value is only for display.

use num_integer::Roots;
use num_traits::{One, Zero};

use crate::equivalence::is_weak_structural;
use crate::error::{Error, Result};
use crate::graph::{Distance, Graph, Hypergraph, Vertex, VertexSet};
use crate::transport::{ee_orc, en_orc, orc, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosineSimilarity {
    pub eta: usize,
    pub dx: usize,
    pub dy: usize,
}

impl CosineSimilarity {
    pub fn value(&self) -> f64 {
        self.eta as f64 / ((self.dx * self.dy) as f64).sqrt()
    }

    /// `sigma^2 = eta^2 / (d_x d_y)`.
    pub fn squared(&self) -> Rational {
        Rational::new((self.eta * self.eta) as i128, (self.dx * self.dy) as i128)
    }

    /// `sigma` itself when it is rational.
    pub fn exact(&self) -> Option<Rational> {
        if self.eta == 0 {
            return Some(Rational::zero());
        }
        let prod = (self.dx * self.dy) as u128;
        let root = prod.sqrt();
        (root * root == prod).then(|| Rational::new(self.eta as i128, root as i128))
    }

    pub fn is_one(&self) -> bool {
        self.eta * self.eta == self.dx * self.dy
    }

    pub fn is_zero(&self) -> bool {
        self.eta == 0
    }
}

fn common_count(a: &[Vertex], b: &[Vertex]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn cosine_of<S: VertexSet>(s: &S, nx: &[Vertex], ny: &[Vertex], x: Vertex, y: Vertex) -> Result<CosineSimilarity> {
    for (v, nv) in [(x, nx), (y, ny)] {
        if nv.is_empty() {
            return Err(Error::IsolatedVertex(s.name(v).to_string()));
        }
    }
    Ok(CosineSimilarity {
        eta: common_count(nx, ny),
        dx: nx.len(),
        dy: ny.len(),
    })
}

pub fn cosine_similarity(g: &Graph, x: Vertex, y: Vertex) -> Result<CosineSimilarity> {
    cosine_of(g, g.neighbors(x), g.neighbors(y), x, y)
}

/// Hypergraph variant over neighbour sets, so `d` here counts neighbours.
pub fn hyper_cosine_similarity(h: &Hypergraph, x: Vertex, y: Vertex) -> Result<CosineSimilarity> {
    cosine_of(h, h.neighbors(x), h.neighbors(y), x, y)
}

/// Upper bound on curvature; rational sigma gives an exact value, otherwise
/// an enclosing interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperBound {
    Exact(Rational),
    Interval { lo: Rational, hi: Rational },
}

impl UpperBound {
    pub fn hi(&self) -> Rational {
        match *self {
            UpperBound::Exact(v) => v,
            UpperBound::Interval { hi, .. } => hi,
        }
    }

    pub fn lo(&self) -> Rational {
        match *self {
            UpperBound::Exact(v) => v,
            UpperBound::Interval { lo, .. } => lo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurvatureBounds {
    pub lower: Rational,
    pub upper: UpperBound,
    pub distance: usize,
}

/// Fixed-point scale used when enclosing `sqrt(d_x d_y)`.
const SQRT_SCALE: u128 = 1 << 32;
const DENOMINATOR_CAP: u128 = 1 << 64;

fn require_distance(distance: Distance) -> Result<usize> {
    match distance.finite() {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::Precondition(
            "finite positive distance",
            format!("distance is {distance}"),
        )),
    }
}

/// `3 eta / max(d_x, d_y) - 2 <= kappa <= 1 - (1 - sigma) / d`.
pub fn curvature_bounds(sim: &CosineSimilarity, distance: Distance) -> Result<CurvatureBounds> {
    let d = require_distance(distance)?;
    let di = Rational::from_integer(d as i128);
    let lower = Rational::new(3 * sim.eta as i128, sim.dx.max(sim.dy) as i128) - Rational::from_integer(2);
    let at = |sigma: Rational| Rational::one() - (Rational::one() - sigma) / di;
    let upper = match sim.exact() {
        Some(sigma) => UpperBound::Exact(at(sigma)),
        None => {
            let prod = (sim.dx * sim.dy) as u128;
            let scaled = prod
                .checked_mul(SQRT_SCALE * SQRT_SCALE)
                .ok_or(Error::Overflow("scaled degree product"))?;
            // s_lo / S < sqrt(prod) < (s_lo + 1) / S
            let s_lo = scaled.sqrt();
            let s_hi = s_lo + 1;
            if s_hi.checked_mul(d as u128).is_none_or(|den| den > DENOMINATOR_CAP) {
                return Err(Error::Precision);
            }
            let num = sim.eta as i128 * SQRT_SCALE as i128;
            let sigma_lo = Rational::new(num, s_hi as i128);
            let sigma_hi = Rational::new(num, s_lo as i128);
            UpperBound::Interval {
                lo: at(sigma_lo),
                hi: at(sigma_hi),
            }
        }
    };
    Ok(CurvatureBounds {
        lower,
        upper,
        distance: d,
    })
}

/// Exact decision of `kappa <= 1 - (1 - sigma) / d`, rearranged to
/// `sigma >= t` with `t = 1 - d (1 - kappa)` and squared when `t > 0`.
pub fn upper_bound_holds(sim: &CosineSimilarity, distance: usize, kappa: Rational) -> bool {
    let t = Rational::one() - Rational::from_integer(distance as i128) * (Rational::one() - kappa);
    if t <= Rational::zero() {
        return true;
    }
    sim.squared() >= t * t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsCheck {
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// The interval enclosure agrees with the exact decision.
    pub interval_consistent: bool,
}

impl BoundsCheck {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds && self.interval_consistent
    }
}

pub fn bounds_hold(sim: &CosineSimilarity, bounds: &CurvatureBounds, kappa: Rational) -> BoundsCheck {
    let upper_holds = upper_bound_holds(sim, bounds.distance, kappa);
    let interval_consistent = match bounds.upper {
        UpperBound::Exact(u) => upper_holds == (kappa <= u),
        UpperBound::Interval { lo, hi } => (kappa > lo || upper_holds) && (kappa <= hi || !upper_holds),
    };
    BoundsCheck {
        lower_holds: bounds.lower <= kappa,
        upper_holds,
        interval_consistent,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkKind {
    Graph,
    En,
    Ee,
}

impl WalkKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WalkKind::Graph => "graph",
            WalkKind::En => "en",
            WalkKind::Ee => "ee",
        }
    }
}

impl std::str::FromStr for WalkKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "graph" => Ok(WalkKind::Graph),
            "en" => Ok(WalkKind::En),
            "ee" => Ok(WalkKind::Ee),
            other => Err(format!("unknown walk `{other}` (expected graph, en or ee)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityReport {
    pub x: Vertex,
    pub y: Vertex,
    pub walk: WalkKind,
    pub cosine: CosineSimilarity,
    pub distance: Distance,
    pub kappa: Option<Rational>,
    pub bounds: Option<CurvatureBounds>,
    pub check: Option<BoundsCheck>,
    pub fully_dissimilar: bool,
    /// Hypergraph inputs only.
    pub weak_structural: Option<bool>,
}

impl SimilarityReport {
    pub fn eta(&self) -> usize {
        self.cosine.eta
    }
}

fn distinct<S: VertexSet>(s: &S, x: Vertex, y: Vertex) -> Result<()> {
    if x == y {
        return Err(Error::SameVertex(s.name(x).to_string()));
    }
    Ok(())
}

fn fully_dissimilar(distance: Distance) -> bool {
    distance.finite().is_none_or(|d| d > 2)
}

/// Cosine, curvature and bounds for a graph pair.
pub fn similarity_report(g: &Graph, x: Vertex, y: Vertex) -> Result<SimilarityReport> {
    distinct(g, x, y)?;
    let cosine = cosine_similarity(g, x, y)?;
    let distance = g.distance(x, y);
    let (kappa, bounds, check) = if distance.is_finite() {
        let kappa = orc(g, x, y)?.kappa;
        let bounds = curvature_bounds(&cosine, distance)?;
        (Some(kappa), Some(bounds), Some(bounds_hold(&cosine, &bounds, kappa)))
    } else {
        (None, None, None)
    };
    Ok(SimilarityReport {
        x,
        y,
        walk: WalkKind::Graph,
        cosine,
        distance,
        kappa,
        bounds,
        check,
        fully_dissimilar: fully_dissimilar(distance),
        weak_structural: None,
    })
}

/// Hypergraph pair report. `WalkKind::Graph` works on the associated graph
/// and is the only walk with bounds.
pub fn hyper_similarity_report(h: &Hypergraph, x: Vertex, y: Vertex, walk: WalkKind) -> Result<SimilarityReport> {
    distinct(h, x, y)?;
    let weak = Some(is_weak_structural(h, x, y));
    if walk == WalkKind::Graph {
        h.require_loop_free()?;
        let mut report = similarity_report(h.associated_graph(), x, y)?;
        report.weak_structural = weak;
        return Ok(report);
    }
    let cosine = hyper_cosine_similarity(h, x, y)?;
    let distance = h.distance(x, y);
    let kappa = if distance.is_finite() {
        let result = match walk {
            WalkKind::En => en_orc(h, x, y)?,
            _ => ee_orc(h, x, y)?,
        };
        Some(result.kappa)
    } else {
        None
    };
    Ok(SimilarityReport {
        x,
        y,
        walk,
        cosine,
        distance,
        kappa,
        bounds: None,
        check: None,
        fully_dissimilar: fully_dissimilar(distance),
        weak_structural: weak,
    })
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

    fn v<S: VertexSet>(s: &S, name: &str) -> Vertex {
        s.vertex(name).unwrap()
    }

    #[test]
    fn cosine_values() {
        let s = Graph::parse("hub l1\nhub l2\nhub l3").unwrap();
        let c = cosine_similarity(&s, v(&s, "l1"), v(&s, "l2")).unwrap();
        assert!(c.is_one());
        assert_eq!(c.exact(), Some(r(1, 1)));
        let c = cosine_similarity(&c6(), 0, 1).unwrap();
        assert!(c.is_zero());
        let f = Graph::parse("a d\na e\nb d\nb e\ne c").unwrap();
        let c = cosine_similarity(&f, v(&f, "a"), v(&f, "c")).unwrap();
        assert_eq!((c.eta, c.dx, c.dy), (1, 2, 1));
        assert_eq!(c.squared(), r(1, 2));
        assert_eq!(c.exact(), None);
        assert!((c.value() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(
            cosine_similarity(&Graph::from_edges(3, &[(0, 1)]), 0, 2),
            Err(Error::IsolatedVertex(_))
        ));
    }

    #[test]
    fn bound_values() {
        let one = CosineSimilarity { eta: 3, dx: 3, dy: 3 };
        let b = curvature_bounds(&one, Distance::Finite(2)).unwrap();
        assert_eq!((b.lower, b.upper), (r(1, 1), UpperBound::Exact(r(1, 1))));

        let zero = CosineSimilarity { eta: 0, dx: 2, dy: 3 };
        let b = curvature_bounds(&zero, Distance::Finite(3)).unwrap();
        assert_eq!((b.lower, b.upper), (r(-2, 1), UpperBound::Exact(r(2, 3))));

        let half = CosineSimilarity { eta: 1, dx: 2, dy: 1 };
        let b = curvature_bounds(&half, Distance::Finite(2)).unwrap();
        let UpperBound::Interval { lo, hi } = b.upper else {
            panic!("irrational sigma")
        };
        // 1 - (1 - 1/sqrt 2)/2 = 0.853553390593...
        assert!(lo < hi);
        assert!(lo < r(853_553_390_594, 1_000_000_000_000) && hi > r(853_553_390_593, 1_000_000_000_000));
        assert!(hi - lo < r(1, 1 << 30));

        assert!(curvature_bounds(&zero, Distance::Finite(0)).is_err());
        assert!(curvature_bounds(&zero, Distance::Unreachable).is_err());
    }

    #[test]
    fn exact_upper_decision() {
        let half = CosineSimilarity { eta: 1, dx: 2, dy: 1 };
        // threshold kappa* = 1 - (1 - 1/sqrt 2)/2 ~ 0.8536
        assert!(upper_bound_holds(&half, 2, r(853, 1000)));
        assert!(!upper_bound_holds(&half, 2, r(854, 1000)));
        assert!(upper_bound_holds(&half, 2, r(-1, 1)));
    }

    #[test]
    fn reports() {
        let g = c6();
        let rep = similarity_report(&g, 0, 3).unwrap();
        assert_eq!(rep.distance, Distance::Finite(3));
        assert!(rep.fully_dissimilar);
        let rep = similarity_report(&g, 0, 1).unwrap();
        assert_eq!(rep.kappa, Some(r(0, 1)));
        assert!(rep.check.unwrap().holds());
        assert!(rep.bounds.unwrap().lower < r(0, 1));

        let s = Graph::parse("hub l1\nhub l2\nhub l3").unwrap();
        let rep = similarity_report(&s, v(&s, "l1"), v(&s, "l2")).unwrap();
        assert!(rep.cosine.is_one());
        assert_eq!((rep.kappa, rep.distance), (Some(r(1, 1)), Distance::Finite(2)));
        assert!(similarity_report(&s, 0, 0).is_err());

        let h1 = Hypergraph::parse("x a b c\na b y\nc d y\nx d").unwrap();
        let rep = hyper_similarity_report(&h1, v(&h1, "x"), v(&h1, "y"), WalkKind::Ee).unwrap();
        assert_ne!(rep.kappa, Some(r(1, 1)));
        assert_eq!(rep.weak_structural, Some(true));
        assert!(rep.bounds.is_none());
        let rep = hyper_similarity_report(&h1, v(&h1, "x"), v(&h1, "y"), WalkKind::Graph).unwrap();
        assert!(rep.check.unwrap().holds());
    }
}
