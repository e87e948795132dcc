#![allow(dead_code)]

use std::path::PathBuf;

use svdyn::{CellSpace, TransitionGraph};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> TransitionGraph {
    let text = std::fs::read_to_string(fixture_dir().join(format!("{name}.json"))).unwrap();
    TransitionGraph::from_json(&text).unwrap()
}

/// Every explicit graph fixture.
pub fn graph_fixtures() -> Vec<(String, TransitionGraph)> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json") && !n.ends_with("_build.json"))
        .map(|n| n.trim_end_matches(".json").to_string())
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), fixture(&n))).collect()
}

pub fn unit(cells: usize) -> CellSpace {
    CellSpace::interval(0.0, 1.0, cells).unwrap()
}
