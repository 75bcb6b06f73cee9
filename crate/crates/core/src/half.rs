//! Automorphisms of the Cayley graph built from the half-graphs `Γ₁`, `Γ₂`.
//!
//! For `|S| ≥ 5` the maximal cliques of size `|S|` in `Γᵢ` are exactly the
//! S-cosets `Sw` with `w` in the other class, and `w` is the only vertex
//! adjacent to all of `Sw`. An isomorphism `Γᵢ → Γⱼ` therefore sends `Sw` to
//! some `Sw'`, and setting `w ↦ w'` extends it to the whole Cayley graph.
//!
//! Everything here works on a finite group given as a full [`Ball`];
//! vertices are indices into it.

use std::collections::{BTreeMap, BTreeSet};

use crate::cayley::{Ball, Parity};
use crate::cliques::{classify_clique, TwoClique, TypeTag};
use crate::element::Element;
use crate::error::Error;
use crate::system::{CoxeterSystem, Gen};

fn require_full(ball: &Ball, sys: &CoxeterSystem) -> Result<(), Error> {
    if ball.is_full_group() {
        Ok(())
    } else {
        Err(Error::NotFullGroup(sys.name().to_string()))
    }
}

fn lookup(ball: &Ball, sys: &CoxeterSystem, w: &Element) -> Result<usize, Error> {
    ball.index_of(w)
        .ok_or_else(|| Error::InvalidMap(format!("{} is not in the group", w.to_text(sys))))
}

/// A bijection `W → W`, as images of ball indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(ball: &Ball) -> Self {
        Permutation {
            images: (0..ball.len()).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidMap("not a bijection".into()));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds the map from a function on elements.
    pub fn from_fn(
        sys: &CoxeterSystem,
        ball: &Ball,
        mut f: impl FnMut(&Element) -> Element,
    ) -> Result<Self, Error> {
        require_full(ball, sys)?;
        let images = ball
            .vertices()
            .iter()
            .map(|v| lookup(ball, sys, &f(v)))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(images)
    }

    pub fn from_pairs(sys: &CoxeterSystem, ball: &Ball, pairs: &[(Element, Element)]) -> Result<Self, Error> {
        require_full(ball, sys)?;
        let mut images = vec![usize::MAX; ball.len()];
        for (a, b) in pairs {
            let i = lookup(ball, sys, a)?;
            if images[i] != usize::MAX {
                return Err(Error::InvalidMap(format!("{} is mapped twice", a.to_text(sys))));
            }
            images[i] = lookup(ball, sys, b)?;
        }
        if let Some(i) = images.iter().position(|&x| x == usize::MAX) {
            return Err(Error::InvalidMap(format!(
                "{} has no image",
                ball.vertex(i).to_text(sys)
            )));
        }
        Permutation::from_images(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn apply(&self, ball: &Ball, w: &Element) -> Element {
        let i = ball.index_of(w).expect("element outside the group");
        ball.vertex(self.images[i]).clone()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Whether Cayley edges map to Cayley edges. For a bijection of a
    /// finite graph this also gives the reverse direction.
    pub fn preserves_adjacency(&self, ball: &Ball, sys: &CoxeterSystem) -> bool {
        (0..ball.len()).all(|v| {
            let fv = self.images[v];
            sys.gens().all(|s| {
                let target = self.images[ball.left(v, s).expect("full group")];
                sys.gens().any(|t| ball.left(fv, t) == Some(target))
            })
        })
    }

    /// Whether pairs at distance two map exactly to pairs at distance two.
    pub fn preserves_distance_two(&self, ball: &Ball) -> bool {
        (0..ball.len()).all(|v| {
            let mut mapped: Vec<usize> = ball_two(ball, v).iter().map(|&u| self.images[u]).collect();
            mapped.sort_unstable();
            mapped == ball_two(ball, self.images[v])
        })
    }

    /// Source/image pairs, ShortLex sorted by source.
    pub fn pairs<'a>(&self, ball: &'a Ball) -> Vec<(&'a Element, &'a Element)> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, &j)| (ball.vertex(i), ball.vertex(j)))
            .collect()
    }

    pub fn to_json(&self, sys: &CoxeterSystem, ball: &Ball) -> Vec<[String; 2]> {
        self.pairs(ball)
            .into_iter()
            .map(|(a, b)| [a.to_text(sys), b.to_text(sys)])
            .collect()
    }

    pub fn from_json(sys: &CoxeterSystem, ball: &Ball, json: &[[String; 2]]) -> Result<Self, Error> {
        let pairs = parse_pairs(sys, json)?;
        Permutation::from_pairs(sys, ball, &pairs)
    }
}

fn parse_pairs(sys: &CoxeterSystem, json: &[[String; 2]]) -> Result<Vec<(Element, Element)>, Error> {
    json.iter()
        .map(|[a, b]| Ok((Element::parse(sys, a)?, Element::parse(sys, b)?)))
        .collect()
}

fn ball_two(ball: &Ball, v: usize) -> Vec<usize> {
    ball.two_step(v).expect("full group")
}

/// Where a Cayley automorphism came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `R_w : v ↦ vw`.
    RightMul { w: Element },
    /// Letterwise relabeling by a label-preserving permutation of `S`.
    Diagram { perm: Vec<Gen> },
    /// Extension of a half-graph isomorphism. `choices` is the largest
    /// number of candidate images seen for a single vertex; 1 means the
    /// extension was forced everywhere.
    Extension { choices: usize },
    Composite,
}

/// A verified automorphism of the Cayley graph of a finite group.
/// Equality compares the maps only.
#[derive(Clone, Debug)]
pub struct CayleyAutomorphism {
    map: Permutation,
    provenance: Provenance,
}

impl PartialEq for CayleyAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for CayleyAutomorphism {}

impl CayleyAutomorphism {
    /// Checks adjacency preservation before accepting the map.
    pub fn new(sys: &CoxeterSystem, ball: &Ball, map: Permutation, provenance: Provenance) -> Result<Self, Error> {
        require_full(ball, sys)?;
        if map.len() != ball.len() || !map.preserves_adjacency(ball, sys) {
            return Err(Error::InvalidMap("not a Cayley graph automorphism".into()));
        }
        Ok(CayleyAutomorphism { map, provenance })
    }

    pub fn map(&self) -> &Permutation {
        &self.map
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn apply(&self, ball: &Ball, w: &Element) -> Element {
        self.map.apply(ball, w)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CayleyAutomorphism) -> CayleyAutomorphism {
        CayleyAutomorphism {
            map: self.map.compose(&other.map),
            provenance: Provenance::Composite,
        }
    }

    /// Restriction to one parity class, as a map between half-graphs.
    pub fn restrict(&self, ball: &Ball, parity: Parity) -> VertexMap {
        restrict(&self.map, ball, parity)
    }
}

fn restrict(map: &Permutation, ball: &Ball, parity: Parity) -> VertexMap {
    let pairs: Vec<(Element, Element)> = (0..ball.len())
        .filter(|&v| Parity::of(ball.vertex(v)) == parity)
        .map(|v| (ball.vertex(v).clone(), ball.vertex(map.image(v)).clone()))
        .collect();
    let to = pairs.first().map_or(parity, |(_, b)| Parity::of(b));
    VertexMap { from: parity, to, pairs }
}

/// A bijection between the vertex sets of `Γᵢ` and `Γⱼ`, ShortLex sorted
/// by source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    from: Parity,
    to: Parity,
    pairs: Vec<(Element, Element)>,
}

impl VertexMap {
    /// Checks that sources lie in `from`, images in `to`, and that no vertex
    /// is hit twice. Completeness is checked against a group later.
    pub fn new(
        sys: &CoxeterSystem,
        from: Parity,
        to: Parity,
        pairs: impl IntoIterator<Item = (Element, Element)>,
    ) -> Result<Self, Error> {
        let map: BTreeMap<Element, Element> = pairs.into_iter().collect();
        let mut seen = BTreeSet::new();
        for (a, b) in &map {
            if Parity::of(a) != from || Parity::of(b) != to {
                return Err(Error::InvalidMap(format!(
                    "{} -> {} leaves W{} -> W{}",
                    a.to_text(sys),
                    b.to_text(sys),
                    from.class_number(),
                    to.class_number()
                )));
            }
            if !seen.insert(b) {
                return Err(Error::InvalidMap(format!("{} is hit twice", b.to_text(sys))));
            }
        }
        Ok(VertexMap {
            from,
            to,
            pairs: map.into_iter().collect(),
        })
    }

    /// Reads `[source, image]` pairs; the classes are taken from the first pair.
    pub fn from_json(sys: &CoxeterSystem, json: &[[String; 2]]) -> Result<Self, Error> {
        let pairs = parse_pairs(sys, json)?;
        let (a, b) = pairs.first().ok_or_else(|| Error::InvalidMap("empty map".into()))?;
        let (from, to) = (Parity::of(a), Parity::of(b));
        VertexMap::new(sys, from, to, pairs)
    }

    pub fn from(&self) -> Parity {
        self.from
    }

    pub fn to(&self) -> Parity {
        self.to
    }

    pub fn pairs(&self) -> &[(Element, Element)] {
        &self.pairs
    }

    pub fn get(&self, w: &Element) -> Option<&Element> {
        self.pairs
            .binary_search_by(|(a, _)| a.cmp(w))
            .ok()
            .map(|i| &self.pairs[i].1)
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> Vec<[String; 2]> {
        self.pairs
            .iter()
            .map(|(a, b)| [a.to_text(sys), b.to_text(sys)])
            .collect()
    }

    /// Index form over a full group, checking that the map covers `Wᵢ`.
    fn indexed(&self, sys: &CoxeterSystem, ball: &Ball) -> Result<BTreeMap<usize, usize>, Error> {
        let class_size = (0..ball.len())
            .filter(|&v| Parity::of(ball.vertex(v)) == self.from)
            .count();
        if self.pairs.len() != class_size {
            return Err(Error::InvalidMap(format!(
                "map has {} pairs but W{} has {class_size} elements",
                self.pairs.len(),
                self.from.class_number()
            )));
        }
        self.pairs
            .iter()
            .map(|(a, b)| Ok((lookup(ball, sys, a)?, lookup(ball, sys, b)?)))
            .collect()
    }

    /// Whether the map is an isomorphism `Γᵢ → Γⱼ`.
    pub fn is_isomorphism(&self, sys: &CoxeterSystem, ball: &Ball) -> Result<bool, Error> {
        require_full(ball, sys)?;
        let f = self.indexed(sys, ball)?;
        Ok(is_isomorphism(ball, &f))
    }
}

fn is_isomorphism(ball: &Ball, f: &BTreeMap<usize, usize>) -> bool {
    f.iter().all(|(&a, &fa)| {
        let near = ball_two(ball, a);
        let image_near = ball_two(ball, fa);
        near.len() == image_near.len() && near.iter().all(|b| image_near.binary_search(&f[b]).is_ok())
    })
}

/// What [`builtin_automorphism`] should construct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `R_w : v ↦ vw`.
    RightMul(Element),
    /// The automorphism induced by a permutation of `S` preserving all labels;
    /// `perm[s]` is the image of `s`.
    Diagram(Vec<Gen>),
}

pub fn builtin_automorphism(sys: &CoxeterSystem, ball: &Ball, kind: Builtin) -> Result<CayleyAutomorphism, Error> {
    require_full(ball, sys)?;
    match kind {
        Builtin::RightMul(w) => {
            let wi = lookup(ball, sys, &w)?;
            let images = (0..ball.len()).map(|v| ball.right_mul(v, wi)).collect();
            CayleyAutomorphism::new(sys, ball, Permutation::from_images(images)?, Provenance::RightMul { w })
        }
        Builtin::Diagram(perm) => {
            check_diagram_permutation(sys, &perm)?;
            let identity = lookup(ball, sys, &Element::identity(sys))?;
            let images = ball
                .vertices()
                .iter()
                .map(|v| {
                    v.word()
                        .iter()
                        .rev()
                        .fold(identity, |acc, s| ball.left(acc, perm[s.index()]).expect("full group"))
                })
                .collect();
            CayleyAutomorphism::new(sys, ball, Permutation::from_images(images)?, Provenance::Diagram { perm })
        }
    }
}

fn check_diagram_permutation(sys: &CoxeterSystem, perm: &[Gen]) -> Result<(), Error> {
    if perm.len() != sys.rank() {
        return Err(Error::InvalidMap(format!(
            "permutation has {} entries for rank {}",
            perm.len(),
            sys.rank()
        )));
    }
    let distinct: BTreeSet<Gen> = perm.iter().copied().collect();
    if distinct.len() != perm.len() {
        return Err(Error::InvalidMap("generator permutation is not injective".into()));
    }
    for &p in perm {
        sys.check_gen(p)?;
    }
    for s in sys.gens() {
        for t in sys.gens() {
            if sys.m(s, t) != sys.m(perm[s.index()], perm[t.index()]) {
                return Err(Error::LabelBreaking(
                    sys.gen_name(s).to_string(),
                    sys.gen_name(t).to_string(),
                ));
            }
        }
    }
    Ok(())
}

/// Reverses the generator order, `sᵢ ↦ s₍ₙ₊₁₋ᵢ₎`.
pub fn reversal(sys: &CoxeterSystem) -> Vec<Gen> {
    (0..sys.rank()).rev().map(Gen::from).collect()
}

/// Extends an isomorphism `Γᵢ → Γⱼ` to an automorphism of the Cayley graph.
/// Needs `|S| ≥ 5`.
pub fn extend_half_automorphism(sys: &CoxeterSystem, ball: &Ball, f: &VertexMap) -> Result<CayleyAutomorphism, Error> {
    if sys.rank() < 5 {
        return Err(Error::RankTooSmall(sys.rank()));
    }
    extend_half_automorphism_any_rank(sys, ball, f)
}

/// The same construction without the rank requirement. For `|S| ≤ 4` the
/// construction can fail even for isomorphisms, which is reported as
/// [`Error::NotExtendable`].
pub fn extend_half_automorphism_any_rank(
    sys: &CoxeterSystem,
    ball: &Ball,
    f: &VertexMap,
) -> Result<CayleyAutomorphism, Error> {
    require_full(ball, sys)?;
    let fi = f.indexed(sys, ball)?;
    if !is_isomorphism(ball, &fi) {
        return Err(Error::InvalidMap(format!(
            "not an isomorphism W{} -> W{}",
            f.from.class_number(),
            f.to.class_number()
        )));
    }
    let mut images = vec![usize::MAX; ball.len()];
    for (&a, &b) in &fi {
        images[a] = b;
    }
    let mut choices = 0;
    for w in (0..ball.len()).filter(|&w| Parity::of(ball.vertex(w)) != f.from) {
        let coset: BTreeSet<usize> = sys
            .gens()
            .map(|s| fi[&ball.left(w, s).expect("full group")])
            .collect();
        let anchor = *coset.first().expect("rank is positive");
        let candidates: BTreeSet<usize> = sys
            .gens()
            .map(|t| ball.left(anchor, t).expect("full group"))
            .filter(|&c| {
                let around: BTreeSet<usize> = sys.gens().map(|s| ball.left(c, s).expect("full group")).collect();
                around == coset
            })
            .collect();
        let Some(&first) = candidates.first() else {
            let image = TwoClique::new(sys, coset.iter().map(|&v| ball.vertex(v).clone()))
                .map(|c| c.to_text(sys))
                .unwrap_or_else(|_| format!("{coset:?}"));
            return Err(Error::NotExtendable(format!(
                "the S-coset at {} maps to {image}, which is not an S-coset",
                ball.vertex(w).to_text(sys)
            )));
        };
        choices = choices.max(candidates.len());
        images[w] = first;
    }
    let map = Permutation::from_images(images)
        .map_err(|_| Error::NotExtendable("extension is not a bijection".into()))?;
    if !map.preserves_adjacency(ball, sys) {
        return Err(Error::NotExtendable("extension does not preserve adjacency".into()));
    }
    Ok(CayleyAutomorphism {
        map,
        provenance: Provenance::Extension { choices },
    })
}

/// Automorphisms of a small half-graph in lexicographic order of their
/// image lists, stopping when `keep` returns true. The vertex limit guards
/// against accidental use on large graphs.
fn search_half_automorphisms(
    adj: &[Vec<bool>],
    keep: &mut dyn FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    fn go(adj: &[Vec<bool>], images: &mut Vec<usize>, used: &mut [bool], keep: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let v = images.len();
        if v == adj.len() {
            return keep(images);
        }
        for c in 0..adj.len() {
            if used[c] || (0..v).any(|u| adj[u][v] != adj[images[u]][c]) {
                continue;
            }
            used[c] = true;
            images.push(c);
            if go(adj, images, used, keep) {
                return true;
            }
            images.pop();
            used[c] = false;
        }
        false
    }
    let mut images = Vec::new();
    let mut used = vec![false; adj.len()];
    go(adj, &mut images, &mut used, keep).then_some(images)
}

/// Largest half-graph [`type_changing_witness`] will search.
pub const WITNESS_VERTEX_LIMIT: usize = 16;

/// The ShortLex-least automorphism of `Γᵢ` (compared by image list) sending
/// some S-coset onto a commuting-triple clique that is not an S-coset.
/// `None` if there is none, as for every system of rank at least 5.
pub fn type_changing_witness(sys: &CoxeterSystem, ball: &Ball, parity: Parity) -> Result<Option<VertexMap>, Error> {
    require_full(ball, sys)?;
    let members: Vec<usize> = (0..ball.len())
        .filter(|&v| Parity::of(ball.vertex(v)) == parity)
        .collect();
    if members.len() > WITNESS_VERTEX_LIMIT {
        return Err(Error::BudgetExceeded {
            budget: WITNESS_VERTEX_LIMIT,
            found: members.len(),
        });
    }
    let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![vec![false; members.len()]; members.len()];
    for (i, &v) in members.iter().enumerate() {
        for u in ball_two(ball, v) {
            adj[i][local[&u]] = true;
        }
    }
    let cosets: Vec<Vec<usize>> = (0..ball.len())
        .filter(|&w| Parity::of(ball.vertex(w)) != parity)
        .map(|w| sys.gens().map(|s| local[&ball.left(w, s).expect("full group")]).collect())
        .collect();
    let is_coset = |set: &BTreeSet<usize>| cosets.iter().any(|c| c.iter().copied().collect::<BTreeSet<_>>() == *set);
    let mut keep = |images: &[usize]| {
        cosets.iter().any(|c| {
            let image: BTreeSet<usize> = c.iter().map(|&v| images[v]).collect();
            if is_coset(&image) {
                return false;
            }
            TwoClique::new(sys, image.iter().map(|&v| ball.vertex(members[v]).clone()))
                .and_then(|clique| classify_clique(sys, &clique))
                .is_ok_and(|class| class.has(TypeTag::CommutingTriple) && !class.has(TypeTag::SCoset))
        })
    };
    let Some(images) = search_half_automorphisms(&adj, &mut keep) else {
        return Ok(None);
    };
    let pairs = members
        .iter()
        .zip(&images)
        .map(|(&v, &i)| (ball.vertex(v).clone(), ball.vertex(members[i]).clone()));
    VertexMap::new(sys, parity, parity, pairs).map(Some)
}

/// A bijection preserving distance two, split into the automorphisms that
/// agree with it on `W₁` and on `W₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub f1: CayleyAutomorphism,
    pub f2: CayleyAutomorphism,
    /// The bijection exchanges `W₁` and `W₂`.
    pub swapped: bool,
    /// The bijection is itself a Cayley automorphism, i.e. `f1 == f2`.
    pub is_automorphism: bool,
}

pub fn decompose_distance2_bijection(sys: &CoxeterSystem, ball: &Ball, g: &Permutation) -> Result<Decomposition, Error> {
    require_full(ball, sys)?;
    if sys.rank() < 5 {
        return Err(Error::RankTooSmall(sys.rank()));
    }
    if g.len() != ball.len() {
        return Err(Error::InvalidMap("map does not cover the group".into()));
    }
    if !g.preserves_distance_two(ball) {
        return Err(Error::InvalidMap("distance two is not preserved".into()));
    }
    let flips: BTreeSet<bool> = (0..ball.len())
        .map(|v| Parity::of(ball.vertex(v)) != Parity::of(ball.vertex(g.image(v))))
        .collect();
    let swapped = match flips.len() {
        1 => *flips.first().unwrap(),
        _ => return Err(Error::InvalidMap("map mixes the parity classes".into())),
    };
    let f1 = extend_half_automorphism(sys, ball, &restrict(g, ball, Parity::Odd))?;
    let f2 = extend_half_automorphism(sys, ball, &restrict(g, ball, Parity::Even))?;
    let is_automorphism = f1 == f2;
    Ok(Decomposition {
        f1,
        f2,
        swapped,
        is_automorphism,
    })
}

/// `g = R_w` on `W₁` and `R_{w'}` on `W₂`, for even `w`, `w'`.
pub fn patched_right_mul(sys: &CoxeterSystem, ball: &Ball, w: &Element, w2: &Element) -> Result<Permutation, Error> {
    require_full(ball, sys)?;
    if w.is_odd() || w2.is_odd() {
        return Err(Error::InvalidMap("patching needs even elements".into()));
    }
    let (a, b) = (lookup(ball, sys, w)?, lookup(ball, sys, w2)?);
    let images = (0..ball.len())
        .map(|v| match Parity::of(ball.vertex(v)) {
            Parity::Odd => ball.right_mul(v, a),
            Parity::Even => ball.right_mul(v, b),
        })
        .collect();
    Permutation::from_images(images)
}
