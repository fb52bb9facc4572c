//! Corpus loaders shared by the benchmarks.

use conormal_core::Matroid;

pub fn pyramid() -> Matroid {
    conormal_core::io::parse_graph(include_str!("../../../corpus/pyramid.graph"), "pyramid.graph")
        .expect("corpus parses")
}

pub fn cube() -> Matroid {
    conormal_core::io::parse_graph(include_str!("../../../corpus/cube.graph"), "cube.graph")
        .expect("corpus parses")
}
