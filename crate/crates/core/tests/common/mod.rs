#![allow(dead_code)]

use coxclique::cayley::Ball;
use coxclique::{CoxeterSystem, Element};
use coxclique_oracle::{oracle_group_graph, OracleGraph, PermModel};

/// The permutation model matching an engine preset, when there is one.
pub fn model_for(preset: &str) -> Option<PermModel> {
    let num = |p: &str| p.parse::<usize>().ok();
    if let Some(n) = preset.strip_prefix("Cube(").and_then(|r| r.strip_suffix(')')) {
        return Some(PermModel::hypercube(n.parse().ok()?));
    }
    if let Some(m) = preset.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        return Some(PermModel::Dihedral(if m == "inf" { None } else { Some(m.parse().ok()?) }));
    }
    let (head, tail) = preset.split_at(1);
    match head {
        "A" => num(tail).map(PermModel::A),
        "B" => num(tail).map(PermModel::B),
        "D" => num(tail).map(PermModel::D),
        _ => None,
    }
}

pub fn word_indices(w: &Element) -> Vec<usize> {
    w.word().iter().map(|g| g.index()).collect()
}

/// Engine ball vertices paired with oracle vertices.
pub struct Matched {
    pub graph: OracleGraph,
    /// `to_oracle[v]` is the oracle vertex of ball vertex `v`.
    pub to_oracle: Vec<usize>,
}

pub fn match_ball(model: &PermModel, ball: &Ball, oracle_radius: Option<usize>) -> Matched {
    let graph = oracle_group_graph(model, oracle_radius);
    let to_oracle = ball
        .vertices()
        .iter()
        .map(|w| graph.index[&model.word_to_elem(&word_indices(w))])
        .collect();
    Matched { graph, to_oracle }
}

pub fn el(sys: &CoxeterSystem, text: &str) -> Element {
    Element::parse(sys, text).unwrap()
}
