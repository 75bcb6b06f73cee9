//! Maximal 2-cliques of the Cayley graph and their classification.
//!
//! Every maximal 2-clique is one of
//!
//! * an S-coset `Sw`,
//! * `{sw, s'w, s''w, ss's''w}` for mutually commuting `s, s', s''`,
//! * `{sw, s'w, w(s,s')w}` for `m(s,s') = 3`, where `w(s,s') = ss's`.
//!
//! Cliques through a vertex `u` are found by a clique search on the
//! distance-two neighborhood of `u`: any vertex extending a clique that
//! contains `u` is itself 2-adjacent to `u`, so maximality inside the
//! neighborhood is maximality in the whole graph.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cayley::{full_group, generate_ball, Algebraic, BallAction, LeftAction};
use crate::element::{self, Element};
use crate::error::Error;
use crate::system::{CoxeterSystem, Gen, Label};

/// A set of elements that are pairwise at distance two.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoClique {
    members: Vec<Element>,
}

impl TwoClique {
    /// Checks pairwise distances and sorts the members ShortLex.
    pub fn new(sys: &CoxeterSystem, members: impl IntoIterator<Item = Element>) -> Result<Self, Error> {
        let members: Vec<Element> = members.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if members.len() < 2 {
            return Err(Error::InvalidMap("a 2-clique needs at least two members".into()));
        }
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let d = element::distance(sys, a, b);
                if d != 2 {
                    return Err(Error::InvalidMap(format!(
                        "{} and {} are at distance {d}",
                        a.to_text(sys),
                        b.to_text(sys)
                    )));
                }
            }
        }
        Ok(TwoClique { members })
    }

    fn from_sorted(members: Vec<Element>) -> Self {
        TwoClique { members }
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Element) -> bool {
        self.members.binary_search(w).is_ok()
    }

    /// Right translate `{ xw : x ∈ self }`.
    pub fn translate(&self, sys: &CoxeterSystem, w: &Element) -> TwoClique {
        let members: BTreeSet<Element> = self.members.iter().map(|x| element::mul(sys, x, w)).collect();
        TwoClique::from_sorted(members.into_iter().collect())
    }

    pub fn to_text(&self, sys: &CoxeterSystem) -> String {
        let words: Vec<String> = self.members.iter().map(|m| format!("[{}]", m.to_text(sys))).collect();
        format!("{{{}}}", words.join(", "))
    }
}

/// Which of the three templates a clique realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    /// `Sw`.
    #[serde(rename = "S-coset")]
    SCoset,
    /// `{sw, s'w, s''w, ss's''w}`.
    #[serde(rename = "commuting-triple")]
    CommutingTriple,
    /// `{sw, s'w, w(s,s')w}`.
    #[serde(rename = "braid")]
    Braid,
}

impl TypeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeTag::SCoset => "S-coset",
            TypeTag::CommutingTriple => "commuting-triple",
            TypeTag::Braid => "braid",
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// One template description of a clique.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CliqueType {
    SCoset { w: Element },
    CommutingTriple { w: Element, gens: [Gen; 3] },
    Braid { w: Element, gens: [Gen; 2] },
}

impl CliqueType {
    pub fn tag(&self) -> TypeTag {
        match self {
            CliqueType::SCoset { .. } => TypeTag::SCoset,
            CliqueType::CommutingTriple { .. } => TypeTag::CommutingTriple,
            CliqueType::Braid { .. } => TypeTag::Braid,
        }
    }

    pub fn w(&self) -> &Element {
        match self {
            CliqueType::SCoset { w } | CliqueType::CommutingTriple { w, .. } | CliqueType::Braid { w, .. } => w,
        }
    }

    pub fn generators(&self) -> Vec<Gen> {
        match self {
            CliqueType::SCoset { .. } => Vec::new(),
            CliqueType::CommutingTriple { gens, .. } => gens.to_vec(),
            CliqueType::Braid { gens, .. } => gens.to_vec(),
        }
    }

    /// The members the template describes, computed by multiplication.
    pub fn expand(&self, sys: &CoxeterSystem) -> BTreeSet<Element> {
        let w = self.w();
        let left = |x: &[Gen]| element::mul_word_left(sys, x, w);
        match self {
            CliqueType::SCoset { .. } => sys.gens().map(|s| left(&[s])).collect(),
            CliqueType::CommutingTriple { gens: [a, b, c], .. } => {
                [left(&[*a]), left(&[*b]), left(&[*c]), left(&[*a, *b, *c])].into()
            }
            CliqueType::Braid { gens: [a, b], .. } => [left(&[*a]), left(&[*b]), left(&[*a, *b, *a])].into(),
        }
    }
}

/// Every template a maximal 2-clique matches, one (ShortLex-least)
/// description per tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueClass {
    pub types: Vec<CliqueType>,
    /// The S-coset description holds for more than one `w` (only in `I₂(2)`).
    pub degenerate: bool,
}

impl CliqueClass {
    pub fn has(&self, tag: TypeTag) -> bool {
        self.types.iter().any(|t| t.tag() == tag)
    }

    pub fn get(&self, tag: TypeTag) -> Option<&CliqueType> {
        self.types.iter().find(|t| t.tag() == tag)
    }

    pub fn tags(&self) -> Vec<TypeTag> {
        self.types.iter().map(CliqueType::tag).collect()
    }
}

/// Matches a clique against the three templates. For each member `u` and
/// each generator `s`, the candidate translation is `w = su`; then the set
/// `G = { g ∈ S : gw ∈ clique }` decides which template can apply, and the
/// remaining member is checked by multiplying it out.
fn classify_with<A: LeftAction>(act: &A, members: &[A::Vertex]) -> Option<CliqueClass> {
    let sys = act.system();
    let set: BTreeSet<&A::Vertex> = members.iter().collect();
    let mut found: BTreeSet<CliqueType> = BTreeSet::new();
    let mut coset_ws: BTreeSet<Element> = BTreeSet::new();
    let mut tried = BTreeSet::new();
    for u in members {
        for s in sys.gens() {
            let Some(w) = act.act(s, u) else { continue };
            if !tried.insert(w.clone()) {
                continue;
            }
            let g: Vec<Gen> = sys
                .gens()
                .filter(|&g| act.act(g, &w).is_some_and(|x| set.contains(&x)))
                .collect();
            let holds = |x: &[Gen]| act.act_word(x, &w).is_some_and(|y| set.contains(&y));
            match g.as_slice() {
                all if all.len() == sys.rank() && set.len() == sys.rank() => {
                    let w = act.element(&w);
                    coset_ws.insert(w.clone());
                    found.insert(CliqueType::SCoset { w });
                }
                &[a, b, c] if set.len() == 4
                    && sys.commute(a, b)
                    && sys.commute(a, c)
                    && sys.commute(b, c)
                    && holds(&[a, b, c]) =>
                {
                    found.insert(CliqueType::CommutingTriple {
                        gens: [a, b, c],
                        w: act.element(&w),
                    });
                }
                &[a, b] if set.len() == 3 && sys.m(a, b) == Label::Finite(3) && holds(&[a, b, a]) => {
                    found.insert(CliqueType::Braid {
                        gens: [a, b],
                        w: act.element(&w),
                    });
                }
                _ => {}
            }
        }
    }
    if found.is_empty() {
        return None;
    }
    let mut types: Vec<CliqueType> = Vec::new();
    for t in found {
        if types.last().is_none_or(|last| last.tag() != t.tag()) {
            types.push(t);
        }
    }
    types.sort_by_key(CliqueType::tag);
    Some(CliqueClass {
        types,
        degenerate: coset_ws.len() > 1,
    })
}

/// Classifies a maximal 2-clique, recomputing every template membership
/// exactly. A clique matching no template is reported as a theorem violation.
pub fn classify_clique(sys: &CoxeterSystem, clique: &TwoClique) -> Result<CliqueClass, Error> {
    classify_with(&Algebraic(sys), clique.members())
        .ok_or_else(|| Error::TheoremViolation(clique.to_text(sys)))
}

/// Maximal cliques of a small graph (Bron–Kerbosch with pivoting).
fn maximal_cliques(adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn go(adj: &[Vec<bool>], r: &mut Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
            .unwrap();
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        for v in branch {
            r.push(v);
            let np = p.iter().copied().filter(|&y| adj[v][y]).collect();
            let nx = x.iter().copied().filter(|&y| adj[v][y]).collect();
            go(adj, r, np, nx, out);
            r.pop();
            p.retain(|&y| y != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    go(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut out);
    out
}

/// Maximal 2-cliques through `u`, each sorted; `None` when the action does
/// not reach far enough from `u`.
fn local_maximal_with<A: LeftAction>(act: &A, u: &A::Vertex) -> Option<Vec<Vec<A::Vertex>>> {
    let near = act.two_step(u)?;
    let mut adj = vec![vec![false; near.len()]; near.len()];
    for (i, a) in near.iter().enumerate() {
        let around: BTreeSet<A::Vertex> = act.two_step(a)?.into_iter().collect();
        for (j, b) in near.iter().enumerate() {
            adj[i][j] = around.contains(b);
        }
    }
    let mut out: Vec<Vec<A::Vertex>> = maximal_cliques(&adj)
        .into_iter()
        .filter(|k| !k.is_empty())
        .map(|k| {
            let mut c: Vec<A::Vertex> = k.into_iter().map(|i| near[i].clone()).collect();
            c.push(u.clone());
            c.sort();
            c
        })
        .collect();
    out.sort();
    Some(out)
}

/// All maximal 2-cliques containing `u`, computed exactly.
pub fn maximal_2cliques_at(sys: &CoxeterSystem, u: &Element) -> Vec<TwoClique> {
    local_maximal_with(&Algebraic(sys), u)
        .expect("exact multiplication is total")
        .into_iter()
        .map(TwoClique::from_sorted)
        .collect()
}

/// Where to look for cliques.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// The whole group, which must have at most `budget` elements.
    FullGroup { budget: usize },
    /// Cliques meeting the ball of the given radius around the identity,
    /// i.e. whose ShortLex-least member has length at most `radius`.
    Ball { radius: usize, budget: usize },
}

impl Scope {
    pub fn full() -> Self {
        Scope::FullGroup {
            budget: crate::cayley::DEFAULT_BUDGET,
        }
    }

    pub fn ball(radius: usize) -> Self {
        Scope::Ball {
            radius,
            budget: crate::cayley::DEFAULT_BUDGET,
        }
    }
}

/// Enumerates and classifies the maximal 2-cliques in `scope`, sorted by
/// member list and free of duplicates.
pub fn enumerate_maximal_2cliques(sys: &CoxeterSystem, scope: Scope) -> Result<Vec<(TwoClique, CliqueClass)>, Error> {
    let (ball, radius) = match scope {
        Scope::FullGroup { budget } => {
            let ball = full_group(sys, budget)?;
            let r = ball.radius();
            (ball, r)
        }
        // Members lie within radius + 2 and their neighborhoods within radius + 4.
        Scope::Ball { radius, budget } => (
            generate_ball(sys, &Element::identity(sys), radius + 4, budget)?,
            radius,
        ),
    };
    let act = BallAction { sys, ball: &ball };
    let mut cliques: BTreeSet<Vec<usize>> = BTreeSet::new();
    for u in (0..ball.len()).filter(|&u| ball.depth(u) <= radius) {
        let local = local_maximal_with(&act, &u).expect("ball reaches two steps past every member");
        cliques.extend(local);
    }
    cliques
        .into_iter()
        .map(|c| {
            let clique = TwoClique::from_sorted(c.iter().map(|&i| ball.vertex(i).clone()).collect());
            let class = classify_with(&act, &c).ok_or_else(|| Error::TheoremViolation(clique.to_text(sys)))?;
            Ok((clique, class))
        })
        .collect()
}

/// Re-derives every recorded template by exact multiplication and compares
/// it with the member set.
pub fn verify_class(sys: &CoxeterSystem, clique: &TwoClique, class: &CliqueClass) -> Result<(), Error> {
    let members: BTreeSet<Element> = clique.members().iter().cloned().collect();
    if class.types.is_empty() || class.types.iter().any(|t| t.expand(sys) != members) {
        return Err(Error::TheoremViolation(clique.to_text(sys)));
    }
    Ok(())
}

/// The groups whose cliques are checked exhaustively, with their scopes.
pub fn corpus() -> Vec<(&'static str, Scope)> {
    let full = [
        "I2(2)", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "A3", "B3", "H3", "A4", "B4", "D4", "F4", "A5", "D5", "B5",
        "Cube(3)", "Cube(4)", "Cube(5)",
    ];
    let mut out: Vec<(&'static str, Scope)> = full.into_iter().map(|p| (p, Scope::full())).collect();
    out.insert(5, ("I2(inf)", Scope::ball(8)));
    out.push(("Atilde2", Scope::ball(6)));
    out.push(("Universal(3)", Scope::ball(6)));
    out
}

/// Number of maximal 2-cliques carrying each tag. A clique matching several
/// templates counts once under each.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCounts {
    pub s_coset: usize,
    pub commuting_triple: usize,
    pub braid: usize,
    pub total: usize,
}

pub fn tally(cliques: &[(TwoClique, CliqueClass)]) -> TypeCounts {
    let mut counts = TypeCounts {
        total: cliques.len(),
        ..TypeCounts::default()
    };
    for (_, class) in cliques {
        for tag in class.tags() {
            match tag {
                TypeTag::SCoset => counts.s_coset += 1,
                TypeTag::CommutingTriple => counts.commuting_triple += 1,
                TypeTag::Braid => counts.braid += 1,
            }
        }
    }
    counts
}

pub fn count_by_type(sys: &CoxeterSystem, scope: Scope) -> Result<TypeCounts, Error> {
    Ok(tally(&enumerate_maximal_2cliques(sys, scope)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeJson {
    pub tag: TypeTag,
    pub w: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueJson {
    pub members: Vec<String>,
    pub types: Vec<TypeJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

pub fn clique_to_json(sys: &CoxeterSystem, clique: &TwoClique, class: &CliqueClass) -> CliqueJson {
    CliqueJson {
        members: clique.members().iter().map(|m| m.to_text(sys)).collect(),
        types: class
            .types
            .iter()
            .map(|t| TypeJson {
                tag: t.tag(),
                w: t.w().to_text(sys),
                generators: t.generators().into_iter().map(|g| sys.gen_name(g).to_string()).collect(),
            })
            .collect(),
        degenerate: class.degenerate,
    }
}

/// Reads the members back; the recorded types are not trusted.
pub fn clique_from_json(sys: &CoxeterSystem, json: &CliqueJson) -> Result<TwoClique, Error> {
    let members = json
        .members
        .iter()
        .map(|m| Element::parse(sys, m))
        .collect::<Result<Vec<_>, _>>()?;
    TwoClique::new(sys, members)
}
