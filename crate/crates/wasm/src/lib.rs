//! Browser bindings. Every export takes edge-list text and returns a JSON
//! string; errors surface as thrown strings.

use equivcurv::neighborhood::{hyper_neighborhood_graph, neighborhood_graph, WalkMode};
use equivcurv::partitions::{regular_from_g2, regular_from_gn, structural_from_curvature, weak_regular_from_h2};
use equivcurv::report::{rational_string, ConstructionJson, NeighborhoodJson};
use equivcurv::transport::orc;
use equivcurv::{Graph, Hypergraph, VertexSet};
use serde_json::json;
use wasm_bindgen::prelude::*;

type Out = Result<String, String>;

fn graph(text: &str) -> Result<Graph, String> {
    Graph::parse(text).map_err(|e| e.to_string())
}

fn hypergraph(text: &str) -> Result<Hypergraph, String> {
    Hypergraph::parse(text).map_err(|e| e.to_string())
}

fn base_graph(text: &str, hyper: bool) -> Result<Graph, String> {
    if hyper {
        Ok(hypergraph(text)?.associated_graph().clone())
    } else {
        graph(text)
    }
}

/// Vertex names and edges of the input (the associated graph for hypergraphs).
pub fn structure_json(text: &str, hyper: bool) -> Out {
    let g = base_graph(text, hyper)?;
    let names = g.names();
    let edges: Vec<[&str; 2]> = g
        .edges()
        .iter()
        .map(|&(u, v)| [names[u].as_str(), names[v].as_str()])
        .collect();
    Ok(json!({ "vertices": names, "edges": edges }).to_string())
}

pub fn neighborhood_json(text: &str, n: usize, mode: &str, hyper: bool) -> Out {
    let ng = if hyper {
        let h = hypergraph(text)?;
        NeighborhoodJson::new(&hyper_neighborhood_graph(&h, n).map_err(|e| e.to_string())?)
    } else {
        let g = graph(text)?;
        let mode: WalkMode = mode.parse()?;
        NeighborhoodJson::new(&neighborhood_graph(&g, n, mode).map_err(|e| e.to_string())?)
    };
    serde_json::to_string(&ng).map_err(|e| e.to_string())
}

/// Curvature of every edge of a graph.
pub fn edge_curvature_json(text: &str) -> Out {
    let g = graph(text)?;
    let rows = g
        .edges()
        .iter()
        .map(|&(x, y)| {
            let r = orc(&g, x, y).map_err(|e| e.to_string())?;
            Ok(json!({ "x": g.name(x), "y": g.name(y), "kappa": rational_string(&r.kappa), "approx": approx(&r.kappa) }))
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(json!({ "edges": rows }).to_string())
}

fn approx(r: &equivcurv::Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `method` is one of `g2`, `gn`, `structural` (graphs) or `h2` (hypergraphs).
pub fn partition_json(text: &str, method: &str, n: usize) -> Out {
    let err = |e: equivcurv::Error| e.to_string();
    let report = match method {
        "h2" => {
            let h = hypergraph(text)?;
            return serde_json::to_string(&ConstructionJson::new(&weak_regular_from_h2(&h).map_err(err)?, &h))
                .map_err(|e| e.to_string());
        }
        _ => {
            let g = graph(text)?;
            let r = match method {
                "g2" => regular_from_g2(&g),
                "gn" => regular_from_gn(&g, n),
                "structural" => structural_from_curvature(&g),
                other => return Err(format!("unknown method `{other}`")),
            }
            .map_err(err)?;
            ConstructionJson::new(&r, &g)
        }
    };
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

fn js(r: Out) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn structure(text: &str, hyper: bool) -> Result<String, JsValue> {
    js(structure_json(text, hyper))
}

#[wasm_bindgen]
pub fn neighborhood(text: &str, n: usize, mode: &str, hyper: bool) -> Result<String, JsValue> {
    js(neighborhood_json(text, n, mode, hyper))
}

#[wasm_bindgen]
pub fn edge_curvature(text: &str) -> Result<String, JsValue> {
    js(edge_curvature_json(text))
}

#[wasm_bindgen]
pub fn partition(text: &str, method: &str, n: usize) -> Result<String, JsValue> {
    js(partition_json(text, method, n))
}
