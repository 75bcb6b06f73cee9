//! Balls in the left Cayley graph `C(W,S)`, distance-two neighborhoods and
//! the half-graphs `Γ₁`, `Γ₂`.
//!
//! Adjacency is always `w ~ sw`. Balls are built by breadth-first search
//! from the identity where each vertex carries the images of the simple roots
//! under its inverse; the lexicographically least reduced word of a new
//! vertex `sw` is `s` followed by the word of `w` exactly when `s` is the
//! smallest left descent of `sw`, so every vertex is discovered once with its
//! canonical word already in hand.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::element::{self, format_word, Element};
use crate::error::Error;
use crate::root::Frame;
use crate::system::{CoxeterSystem, Gen};

/// Default cap on the number of vertices a ball may hold.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Left multiplication by generators on some set of vertices.
pub trait LeftAction {
    type Vertex: Clone + Ord + std::hash::Hash;

    fn system(&self) -> &CoxeterSystem;

    /// `s·v`, or `None` when it falls outside the represented set.
    fn act(&self, s: Gen, v: &Self::Vertex) -> Option<Self::Vertex>;

    fn element(&self, v: &Self::Vertex) -> Element;

    /// `x·v` for a word `x`, letters applied right to left.
    fn act_word(&self, x: &[Gen], v: &Self::Vertex) -> Option<Self::Vertex> {
        x.iter().rev().try_fold(v.clone(), |acc, &s| self.act(s, &acc))
    }

    /// All `ts·v` with `s ≠ t`, deduplicated and sorted; `None` if any of
    /// them is not represented.
    fn two_step(&self, v: &Self::Vertex) -> Option<Vec<Self::Vertex>> {
        let sys = self.system();
        let mut out = BTreeSet::new();
        for s in sys.gens() {
            let sv = self.act(s, v)?;
            for t in sys.gens().filter(|&t| t != s) {
                out.insert(self.act(t, &sv)?);
            }
        }
        Some(out.into_iter().collect())
    }
}

/// Exact multiplication with no table: every product is canonicalized.
#[derive(Clone, Copy, Debug)]
pub struct Algebraic<'a>(pub &'a CoxeterSystem);

impl LeftAction for Algebraic<'_> {
    type Vertex = Element;

    fn system(&self) -> &CoxeterSystem {
        self.0
    }

    fn act(&self, s: Gen, v: &Element) -> Option<Element> {
        Some(element::mul_gen_left(self.0, s, v))
    }

    fn element(&self, v: &Element) -> Element {
        v.clone()
    }

    fn act_word(&self, x: &[Gen], v: &Element) -> Option<Element> {
        Some(element::mul_word_left(self.0, x, v))
    }
}

/// The distinct elements of length two, ShortLex sorted.
pub fn length_two_elements(sys: &CoxeterSystem) -> Vec<Element> {
    let set: BTreeSet<Element> = sys
        .gens()
        .flat_map(|s| sys.gens().filter(move |&t| t != s).map(move |t| (s, t)))
        .map(|(s, t)| Element::from_word(sys, &[t, s]))
        .collect();
    set.into_iter().collect()
}

/// `{ v : d(u, v) = 2 } = { xu : l(x) = 2 }`.
pub fn two_neighbors(sys: &CoxeterSystem, u: &Element) -> BTreeSet<Element> {
    length_two_elements(sys)
        .iter()
        .map(|x| element::mul_word_left(sys, x.word(), u))
        .collect()
}

/// A ball `{ w : d(w, center) ≤ radius }` with its Cayley adjacency.
#[derive(Clone, Debug)]
pub struct Ball {
    group: String,
    center: Element,
    radius: usize,
    vertices: Vec<Element>,
    index: HashMap<Element, usize>,
    /// `left[v][s]` is the index of `s·v` when it lies in the ball.
    left: Vec<Vec<Option<usize>>>,
    depth: Vec<usize>,
    full_group: bool,
}

struct Layered {
    words: Vec<Vec<Gen>>,
    left: Vec<Vec<Option<usize>>>,
    depth: Vec<usize>,
    closed: bool,
}

fn bfs_from_identity(sys: &CoxeterSystem, radius: Option<usize>, budget: usize) -> Result<Layered, Error> {
    let rank = sys.rank();
    let mut words: Vec<Vec<Gen>> = vec![Vec::new()];
    let mut frames: Vec<Frame> = vec![Frame::identity(rank)];
    let mut depth = vec![0usize];
    let mut layer = 0..1usize;
    let closed;
    loop {
        if radius.is_some_and(|r| depth[layer.start] >= r) {
            // Closed exactly when nothing in the outer layer has an ascent.
            closed = layer
                .clone()
                .all(|v| sys.gens().all(|s| frames[v].column(s).is_negative()));
            break;
        }
        let mut next: Vec<(Vec<Gen>, Frame)> = Vec::new();
        for v in layer.clone() {
            for s in sys.gens() {
                if frames[v].column(s).is_negative() {
                    continue;
                }
                let mut f = frames[v].clone();
                f.push_right(sys, s);
                if f.first_negative() == Some(s) {
                    let mut w = Vec::with_capacity(words[v].len() + 1);
                    w.push(s);
                    w.extend_from_slice(&words[v]);
                    next.push((w, f));
                    if words.len() + next.len() > budget {
                        return Err(Error::BudgetExceeded {
                            budget,
                            found: words.len() + next.len(),
                        });
                    }
                }
            }
        }
        if next.is_empty() {
            closed = true;
            break;
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        let d = depth[layer.start] + 1;
        let start = words.len();
        for (w, f) in next {
            words.push(w);
            frames.push(f);
            depth.push(d);
        }
        layer = start..words.len();
    }

    let lookup: HashMap<&Frame, usize> = frames.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let left = frames
        .iter()
        .map(|f| {
            sys.gens()
                .map(|s| {
                    let mut g = f.clone();
                    g.push_right(sys, s);
                    lookup.get(&g).copied()
                })
                .collect()
        })
        .collect();
    Ok(Layered {
        words,
        left,
        depth,
        closed,
    })
}

impl Ball {
    fn from_layered(sys: &CoxeterSystem, center: &Element, radius: usize, layered: Layered) -> Self {
        let n = layered.words.len();
        let translated: Vec<Element> = if center.is_identity() {
            layered
                .words
                .iter()
                .map(|w| Element::from_canonical(sys, w.clone()))
                .collect()
        } else {
            layered
                .words
                .iter()
                .map(|w| element::mul_word_left(sys, w, center))
                .collect()
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| translated[a].cmp(&translated[b]));
        let mut rank_of = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            rank_of[old] = new;
        }
        let vertices: Vec<Element> = order.iter().map(|&old| translated[old].clone()).collect();
        let left = order
            .iter()
            .map(|&old| {
                layered.left[old]
                    .iter()
                    .map(|x| x.map(|o| rank_of[o]))
                    .collect()
            })
            .collect();
        let depth = order.iter().map(|&old| layered.depth[old]).collect();
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Ball {
            group: sys.name().to_string(),
            center: center.clone(),
            radius,
            vertices,
            index,
            left,
            depth,
            full_group: layered.closed,
        }
    }

    pub fn center(&self) -> &Element {
        &self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Vertices in ShortLex order.
    pub fn vertices(&self) -> &[Element] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Element {
        &self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True when the ball is the whole (finite) group.
    pub fn is_full_group(&self) -> bool {
        self.full_group
    }

    pub fn index_of(&self, w: &Element) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Index of `s·v` if it lies in the ball.
    pub fn left(&self, v: usize, s: Gen) -> Option<usize> {
        self.left[v][s.index()]
    }

    /// Distance from the center.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.left[v].iter().flatten().copied()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = (0..self.len())
            .flat_map(|v| self.neighbors(v).filter(move |&u| u > v).map(move |u| (v, u)))
            .collect();
        e.sort_unstable();
        e
    }

    /// Ball vertices at Cayley distance exactly two from vertex `v`. Products
    /// that leave the ball are recomputed exactly, so pairs whose middle
    /// vertex lies outside are still found.
    pub fn two_neighbors_of(&self, sys: &CoxeterSystem, v: usize) -> Vec<usize> {
        if let Some(found) = self.two_step(v) {
            return found;
        }
        let mut out: Vec<usize> = two_neighbors(sys, &self.vertices[v])
            .iter()
            .filter_map(|w| self.index_of(w))
            .collect();
        out.sort_unstable();
        out
    }

    /// `v ↦ vw` on a full group, via the left table: `v·w` is the word of
    /// `v` applied on the left of `w`.
    pub fn right_mul(&self, v: usize, w: usize) -> usize {
        self.vertices[v]
            .word()
            .iter()
            .rev()
            .try_fold(w, |acc, &s| self.left[acc][s.index()])
            .expect("right multiplication needs the full group")
    }

    /// All `ts·v` with `s ≠ t` from the table; `None` if one leaves the ball.
    pub(crate) fn two_step(&self, v: usize) -> Option<Vec<usize>> {
        let rank = self.left[v].len();
        let mut out = BTreeSet::new();
        for s in 0..rank {
            let sv = self.left[v][s]?;
            for t in (0..rank).filter(|&t| t != s) {
                out.insert(self.left[sv][t]?);
            }
        }
        Some(out.into_iter().collect())
    }

    pub fn to_dot(&self, sys: &CoxeterSystem) -> String {
        dot(
            &format!("{} ball r={}", self.group, self.radius),
            sys,
            &self.vertices,
            &self.edges(),
        )
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> BallJson {
        BallJson {
            group: self.group.clone(),
            center: self.center.to_text(sys),
            radius: self.radius,
            full_group: self.full_group,
            vertices: self.vertices.iter().map(|v| v.to_text(sys)).collect(),
            edges: self
                .edges()
                .into_iter()
                .map(|(a, b)| [self.vertices[a].to_text(sys), self.vertices[b].to_text(sys)])
                .collect(),
        }
    }
}

/// A ball paired with its system, usable wherever a [`LeftAction`] is needed.
#[derive(Clone, Copy, Debug)]
pub struct BallAction<'a> {
    pub sys: &'a CoxeterSystem,
    pub ball: &'a Ball,
}

impl LeftAction for BallAction<'_> {
    type Vertex = usize;

    fn system(&self) -> &CoxeterSystem {
        self.sys
    }

    fn act(&self, s: Gen, v: &usize) -> Option<usize> {
        self.ball.left(*v, s)
    }

    fn element(&self, v: &usize) -> Element {
        self.ball.vertex(*v).clone()
    }

    fn two_step(&self, v: &usize) -> Option<Vec<usize>> {
        self.ball.two_step(*v)
    }
}

/// Complete ball of the given radius around `center`.
pub fn generate_ball(sys: &CoxeterSystem, center: &Element, radius: usize, budget: usize) -> Result<Ball, Error> {
    assert_eq!(center.system(), sys.tag(), "center belongs to a different system");
    let layered = bfs_from_identity(sys, Some(radius), budget)?;
    Ok(Ball::from_layered(sys, center, radius, layered))
}

/// The whole group, if it has at most `budget` elements. The radius of the
/// result is the diameter of the Cayley graph.
pub fn full_group(sys: &CoxeterSystem, budget: usize) -> Result<Ball, Error> {
    let layered = bfs_from_identity(sys, None, budget)?;
    let radius = layered.depth.last().copied().unwrap_or(0);
    Ok(Ball::from_layered(sys, &Element::identity(sys), radius, layered))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub group: String,
    pub center: String,
    pub radius: usize,
    pub full_group: bool,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// `W₁` (odd length) or `W₂` (even length).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(w: &Element) -> Parity {
        if w.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// 1 for `W₁`, 2 for `W₂`.
    pub fn class_number(self) -> u8 {
        match self {
            Parity::Odd => 1,
            Parity::Even => 2,
        }
    }

    pub fn from_class_number(i: u8) -> Option<Parity> {
        match i {
            1 => Some(Parity::Odd),
            2 => Some(Parity::Even),
            _ => None,
        }
    }

    pub fn other(self) -> Parity {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
        }
    }
}

/// The graph `Γᵢ` on one parity class, with edges at Cayley distance two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGraph {
    pub parity: Parity,
    /// ShortLex sorted.
    pub vertices: Vec<Element>,
    /// Pairs of indices into `vertices`, `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl HalfGraph {
    pub fn index_of(&self, w: &Element) -> Option<usize> {
        self.vertices.binary_search(w).ok()
    }

    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn to_dot(&self, sys: &CoxeterSystem) -> String {
        dot(
            &format!("{} W{}", sys.name(), self.parity.class_number()),
            sys,
            &self.vertices,
            &self.edges,
        )
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> HalfGraphJson {
        HalfGraphJson {
            group: sys.name().to_string(),
            parity: self.parity.class_number(),
            vertices: self.vertices.iter().map(|v| v.to_text(sys)).collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.vertices[a].to_text(sys), self.vertices[b].to_text(sys)])
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfGraphJson {
    pub group: String,
    pub parity: u8,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// Splits a ball into `Γ₁` (odd lengths) and `Γ₂` (even lengths).
pub fn parity_split(sys: &CoxeterSystem, ball: &Ball) -> (HalfGraph, HalfGraph) {
    let build = |parity: Parity| {
        let members: Vec<usize> = (0..ball.len())
            .filter(|&v| Parity::of(ball.vertex(v)) == parity)
            .collect();
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in members.iter().enumerate() {
            for u in ball.two_neighbors_of(sys, v) {
                let j = local[&u];
                if j > i {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        HalfGraph {
            parity,
            vertices: members.iter().map(|&v| ball.vertex(v).clone()).collect(),
            edges,
        }
    };
    (build(Parity::Odd), build(Parity::Even))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dot(title: &str, sys: &CoxeterSystem, vertices: &[Element], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(title)).unwrap();
    for (i, v) in vertices.iter().enumerate() {
        writeln!(out, "  v{i} [label={}];", quote(&format_word(sys, v.word()))).unwrap();
    }
    for (a, b) in edges {
        writeln!(out, "  v{a} -- v{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::distance;
    use crate::system::parse_preset;

    #[test]
    fn radius_zero() {
        let sys = parse_preset("B3").unwrap();
        let c = Element::parse(&sys, "s1 s2").unwrap();
        let ball = generate_ball(&sys, &c, 0, 10).unwrap();
        assert_eq!(ball.vertices(), &[c]);
        let (odd, even) = parity_split(&sys, &generate_ball(&sys, &Element::identity(&sys), 0, 10).unwrap());
        assert!(odd.vertices.is_empty());
        assert_eq!(even.vertices, vec![Element::identity(&sys)]);
    }

    #[test]
    fn dihedral_balls_are_cycles() {
        for m in 2..=6 {
            let sys = parse_preset(&format!("I2({m})")).unwrap();
            let ball = generate_ball(&sys, &Element::identity(&sys), m + 1, 100).unwrap();
            assert_eq!(ball.len(), 2 * m);
            assert!(ball.is_full_group());
            assert_eq!(ball.edges().len(), 2 * m);
            assert!((0..ball.len()).all(|v| ball.neighbors(v).count() == 2));
        }
    }

    #[test]
    fn full_groups() {
        assert_eq!(full_group(&parse_preset("I2(2)").unwrap(), 100).unwrap().len(), 4);
        let a3 = full_group(&parse_preset("A3").unwrap(), 100).unwrap();
        assert_eq!((a3.len(), a3.radius()), (24, 6));
        let d4 = full_group(&parse_preset("D4").unwrap(), 1000).unwrap();
        assert_eq!((d4.len(), d4.radius()), (192, 12));
        let err = full_group(&parse_preset("Atilde2").unwrap(), 500).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 500, .. }));
    }

    #[test]
    fn ball_layers_are_distances() {
        let sys = parse_preset("Atilde2").unwrap();
        let c = Element::parse(&sys, "s1 s3").unwrap();
        let ball = generate_ball(&sys, &c, 3, 1000).unwrap();
        assert!(!ball.is_full_group());
        for v in 0..ball.len() {
            assert_eq!(ball.depth(v), distance(&sys, ball.vertex(v), &c));
            assert!(ball.neighbors(v).count() <= sys.rank());
            for u in ball.neighbors(v) {
                assert!(ball.neighbors(u).any(|x| x == v));
            }
        }
        assert!(ball.vertices().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn two_neighbor_examples() {
        let a1 = parse_preset("A1").unwrap();
        assert!(two_neighbors(&a1, &Element::identity(&a1)).is_empty());

        let a3 = parse_preset("A3").unwrap();
        let n: Vec<String> = two_neighbors(&a3, &Element::identity(&a3))
            .iter()
            .map(|w| w.to_text(&a3))
            .collect();
        assert_eq!(n, ["s1 s2", "s1 s3", "s2 s1", "s2 s3", "s3 s2"]);

        let inf = parse_preset("I2(inf)").unwrap();
        let u = Element::parse(&inf, "s1 s2 s1").unwrap();
        assert_eq!(two_neighbors(&inf, &u).len(), 2);
    }

    #[test]
    fn half_cube_degrees() {
        let q4 = parse_preset("Cube(4)").unwrap();
        let (odd, even) = parity_split(&q4, &full_group(&q4, 100).unwrap());
        for h in [&odd, &even] {
            assert_eq!(h.vertices.len(), 8);
            assert!((0..8).all(|v| h.degree(v) == 6));
        }
        let a2 = parse_preset("I2(3)").unwrap();
        let (odd, even) = parity_split(&a2, &full_group(&a2, 100).unwrap());
        assert_eq!(odd.edges.len(), 3);
        assert_eq!(even.edges.len(), 3);
    }

    #[test]
    fn boundary_pairs_are_found() {
        // In the radius-2 ball of the hexagon, s1 s2 and s2 s1 are 2-adjacent
        // only through s1 s2 s1, which lies outside.
        let sys = parse_preset("I2(3)").unwrap();
        let ball = generate_ball(&sys, &Element::identity(&sys), 2, 100).unwrap();
        assert!(!ball.is_full_group());
        let v = ball.index_of(&Element::parse(&sys, "s1 s2").unwrap()).unwrap();
        let found: Vec<String> = ball
            .two_neighbors_of(&sys, v)
            .into_iter()
            .map(|i| ball.vertex(i).to_text(&sys))
            .collect();
        assert_eq!(found, ["e", "s2 s1"]);
    }

    #[test]
    fn dot_and_json_exports() {
        let sys = parse_preset("I2(2)").unwrap();
        let ball = full_group(&sys, 10).unwrap();
        let dot = ball.to_dot(&sys);
        assert!(dot.starts_with("graph \"I2(2) ball r=2\" {\n"));
        assert!(dot.contains("v0 [label=\"e\"];"));
        assert!(dot.contains("v3 [label=\"s1 s2\"];"));
        assert!(dot.contains("v0 -- v1;"));
        let json = ball.to_json(&sys);
        assert_eq!(json.vertices, ["e", "s1", "s2", "s1 s2"]);
        assert_eq!(json.edges.len(), 4);
    }
}
