use wasm_bindgen::prelude::*;

pub mod demo;

fn to_js<T: serde::Serialize>(r: ddatopo::Result<T>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

/// Random geometric graph as JSON `{n, positions, edges, connectivity}`.
#[wasm_bindgen]
pub fn sensor_graph(n: usize, radius: f64, seed: u64) -> Result<String, JsError> {
    to_js(demo::sensor_graph(n, radius, seed))
}

/// Greedy picks on the sensor graph with the connectivity after each pick.
#[wasm_bindgen]
pub fn greedy_design(n: usize, radius: f64, seed: u64, budget: usize) -> Result<String, JsError> {
    to_js(demo::greedy_design(&demo::Params { n, radius, seed, budget, ..demo::Params::default() }))
}

/// Regret of DDA with the greedy edges added every `delta` steps against
/// the static base graph.
#[wasm_bindgen]
pub fn simulate(n: usize, radius: f64, seed: u64, budget: usize, delta: usize, horizon: usize) -> Result<String, JsError> {
    to_js(demo::simulate(&demo::Params { n, radius, seed, budget, delta, horizon }))
}
