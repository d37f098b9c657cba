//! Shared fixtures for the benchmarks.

use gbskit_core::{parse_graph, GbsGroup};

pub const BS23: &str = "vertex a\nedge t : a -> a [2, 3]\n";
pub const BS12: &str = "vertex a\nedge t : a -> a [1, 2]\n";
pub const F2XZ: &str = "vertex a\nedge t1 : a -> a [1, 1]\nedge t2 : a -> a [1, 1]\n";
pub const THETA: &str = "vertex u\nvertex v\nedge e1 : u -> v [2, 3]\nedge e2 : u -> v [5, 7]\n";

pub fn group(text: &str) -> GbsGroup {
    GbsGroup::new(parse_graph(text).expect("fixture graph parses")).expect("fixture graph is connected")
}
