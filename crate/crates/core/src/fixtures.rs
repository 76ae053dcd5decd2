//! Small graphs used throughout the tests, the acceptance suite and the
//! documentation.

use std::sync::Arc;

use crate::graph::{parse_graph, Graph};

/// `v1 <-f1- v2 -f2-> v3 <-f3- v4 <-f4- v5`: two sinks, no cycles.
pub const ZIGZAG: &str = "graph zigzag {
  vertices: v1 v2 v3 v4 v5;
  edges: f1: v2 -> v1; f2: v2 -> v3; f3: v4 -> v3; f4: v5 -> v4;
}
";

/// A loop `e` at `v` fed by `f: w -> v`. No sinks.
pub const LOOP_FED: &str = "graph loop_fed {
  vertices: v w;
  edges: e: v -> v; f: w -> v;
}
";

/// A loop `e` at `u` with an exit `h: u -> w` into the sink `w`.
pub const LOOP_EXIT: &str = "graph loop_exit {
  vertices: u w;
  edges: e: u -> u; h: u -> w;
}
";

/// `v1` emits infinitely many edges to `v2`, three of them listed.
pub const INFINITE_FAN: &str = "graph infinite_fan {
  vertices: v1 v2;
  edges: f1: v1 -> v2; f2: v1 -> v2; f3: v1 -> v2;
  infinite: v1;
}
";

/// A single vertex.
pub const POINT: &str = "graph point { vertices: v; edges; }";

pub fn load(text: &str) -> Arc<Graph> {
    Arc::new(parse_graph(text).expect("fixture graphs parse"))
}

pub fn zigzag() -> Arc<Graph> {
    load(ZIGZAG)
}

pub fn loop_fed() -> Arc<Graph> {
    load(LOOP_FED)
}

pub fn loop_exit() -> Arc<Graph> {
    load(LOOP_EXIT)
}

pub fn infinite_fan() -> Arc<Graph> {
    load(INFINITE_FAN)
}

pub fn point() -> Arc<Graph> {
    load(POINT)
}

/// All fixture graphs with their names.
pub fn all() -> Vec<(&'static str, Arc<Graph>)> {
    vec![
        ("zigzag", zigzag()),
        ("loop_fed", loop_fed()),
        ("loop_exit", loop_exit()),
        ("infinite_fan", infinite_fan()),
        ("point", point()),
    ]
}
