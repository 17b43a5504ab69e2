//! Triangle and k-cycle enumeration.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Default vertex-count cap for exhaustive cycle enumeration.
pub const DEFAULT_CYCLE_VERTEX_CAP: usize = 64;

/// Every 3-clique once, as `(u, v, w)` with `u < v < w`, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for u in 0..g.vertex_count() {
        let nu = g.neighbors(u);
        for (i, &v) in nu.iter().enumerate() {
            if v <= u {
                continue;
            }
            for &w in &nu[i + 1..] {
                if g.has_edge(v, w) {
                    out.push([u, v, w]);
                }
            }
        }
    }
    out
}

/// Simple cycles on exactly `k` distinct vertices, with the default cap.
pub fn k_cycles(g: &Graph, k: usize) -> Result<Vec<Vec<Vertex>>> {
    k_cycles_capped(g, k, DEFAULT_CYCLE_VERTEX_CAP)
}

/// Simple cycles on exactly `k` distinct vertices.
///
/// Each cycle is reported once in canonical form: it starts at its smallest
/// vertex and the second vertex is smaller than the last.
pub fn k_cycles_capped(g: &Graph, k: usize, vertex_cap: usize) -> Result<Vec<Vec<Vertex>>> {
    if k < 3 {
        return Err(Error::CycleLength(k));
    }
    let n = g.vertex_count();
    if n > vertex_cap {
        return Err(Error::CapExceeded {
            what: "vertex count",
            value: n,
            cap: vertex_cap,
        });
    }
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(k);
    let mut on_path = vec![false; n];
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        extend_cycle(g, k, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
        path.pop();
    }
    Ok(out)
}

fn extend_cycle(g: &Graph, k: usize, path: &mut Vec<Vertex>, on_path: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
    let start = path[0];
    let last = *path.last().unwrap();
    if path.len() == k {
        if g.has_edge(last, start) && path[1] < path[k - 1] {
            out.push(path.clone());
        }
        return;
    }
    for &w in g.neighbors(last) {
        if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            extend_cycle(g, k, path, on_path, out);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// The edges of a cycle as normalised `(min, max)` pairs.
pub fn cycle_edges(cycle: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    (0..cycle.len()).map(move |i| {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        (a.min(b), a.max(b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c6() -> Graph {
        Graph::parse("1 2\n2 3\n3 4\n4 5\n5 6\n6 1").unwrap()
    }

    #[test]
    fn triangle_listing() {
        assert_eq!(triangles(&Graph::parse("a b\nb c\nc a").unwrap()), [[0, 1, 2]]);
        assert!(triangles(&c6()).is_empty());
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(triangles(&k4), [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
    }

    #[test]
    fn hexagon_cycles() {
        assert_eq!(k_cycles(&c6(), 6).unwrap(), [vec![0, 1, 2, 3, 4, 5]]);
        assert!(k_cycles(&c6(), 3).unwrap().is_empty());
        assert_eq!(k_cycles(&c6(), 2), Err(Error::CycleLength(2)));
    }

    #[test]
    fn complete_graph_cycle_counts() {
        // K5 has C(5,k) * (k-1)!/2 k-cycles
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in u + 1..5 {
                edges.push((u, v));
            }
        }
        let k5 = Graph::from_edges(5, &edges);
        let counts: Vec<usize> = (3..=5).map(|k| k_cycles(&k5, k).unwrap().len()).collect();
        assert_eq!(counts, [10, 15, 12]);
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let g = Graph::from_edges(10, &[(0, 1)]);
        assert!(matches!(
            k_cycles_capped(&g, 3, 5),
            Err(Error::CapExceeded { value: 10, cap: 5, .. })
        ));
    }
}
