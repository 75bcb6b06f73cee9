//! Independent reference models for Coxeter groups of classical type.
//!
//! Nothing here knows about root systems or reduced words: groups are
//! realised as explicit permutations, signed permutations or dihedral
//! symmetries, and every graph quantity is obtained by breadth-first search
//! and brute force. Generators are listed in the same order (`s1, s2, …`) as
//! the presets of the main engine:
//!
//! * `A_n`: `s_i` swaps points `i` and `i+1` of `{1, …, n+1}`.
//! * `B_n`: `s1` negates coordinate 1, `s_{i+1}` swaps coordinates `i, i+1`.
//! * `D_n`: `s1` sends `e1 ↦ -e2, e2 ↦ -e1`, `s_{i+1}` swaps coordinates `i, i+1`.
//! * `I₂(m)`: the reflections `x ↦ -x` and `x ↦ 1 - x` of `ℤ/m` (or `ℤ` for `m = ∞`).
//! * products: generators of each factor in turn, acting componentwise.

use std::collections::{BTreeSet, HashMap, VecDeque};

/// Explicit datum of a model element.
pub type Elem = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermModel {
    /// Permutations of `n + 1` points.
    A(usize),
    /// Signed permutations of `n` coordinates.
    B(usize),
    /// Signed permutations of `n` coordinates with an even number of sign changes.
    D(usize),
    /// Symmetries of a regular `m`-gon; `None` is the infinite dihedral group.
    Dihedral(Option<u64>),
    /// Direct product, generators concatenated.
    Product(Vec<PermModel>),
}

impl PermModel {
    /// `n` commuting involutions: the hypercube group `(ℤ/2)ⁿ`.
    pub fn hypercube(n: usize) -> Self {
        PermModel::Product(vec![PermModel::A(1); n])
    }

    pub fn rank(&self) -> usize {
        match self {
            PermModel::A(n) | PermModel::B(n) | PermModel::D(n) => *n,
            PermModel::Dihedral(_) => 2,
            PermModel::Product(fs) => fs.iter().map(PermModel::rank).sum(),
        }
    }

    fn datum_len(&self) -> usize {
        match self {
            PermModel::A(n) => n + 1,
            PermModel::B(n) | PermModel::D(n) => *n,
            PermModel::Dihedral(_) => 2,
            PermModel::Product(fs) => fs.iter().map(PermModel::datum_len).sum(),
        }
    }

    /// Known order, `None` for infinite groups.
    pub fn order(&self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            PermModel::A(n) => Some(fact(n + 1)),
            PermModel::B(n) => Some((1u128 << n) * fact(*n)),
            PermModel::D(n) => Some((1u128 << (n - 1)) * fact(*n)),
            PermModel::Dihedral(m) => m.map(|m| 2 * m as u128),
            PermModel::Product(fs) => fs.iter().map(PermModel::order).product(),
        }
    }

    pub fn identity(&self) -> Elem {
        match self {
            PermModel::A(n) => (0..=*n as i64).collect(),
            PermModel::B(n) | PermModel::D(n) => (1..=*n as i64).collect(),
            PermModel::Dihedral(_) => vec![0, 0],
            PermModel::Product(fs) => fs.iter().flat_map(PermModel::identity).collect(),
        }
    }

    pub fn generators(&self) -> Vec<Elem> {
        match self {
            PermModel::A(n) => (0..*n)
                .map(|i| {
                    let mut p = self.identity();
                    p.swap(i, i + 1);
                    p
                })
                .collect(),
            PermModel::B(n) | PermModel::D(n) => {
                let mut gens = Vec::new();
                let mut first = self.identity();
                if matches!(self, PermModel::B(_)) {
                    first[0] = -1;
                } else {
                    first[0] = -2;
                    first[1] = -1;
                }
                gens.push(first);
                for i in 0..n - 1 {
                    let mut p = self.identity();
                    p.swap(i, i + 1);
                    gens.push(p);
                }
                gens
            }
            PermModel::Dihedral(_) => vec![vec![0, 1], vec![1, 1]],
            PermModel::Product(fs) => {
                let mut gens = Vec::new();
                let mut offset = 0;
                let id = self.identity();
                for f in fs {
                    let len = f.datum_len();
                    for g in f.generators() {
                        let mut full = id.clone();
                        full[offset..offset + len].copy_from_slice(&g);
                        gens.push(full);
                    }
                    offset += len;
                }
                gens
            }
        }
    }

    /// Group product `a·b` (apply `b` first, then `a`).
    pub fn mul(&self, a: &[i64], b: &[i64]) -> Elem {
        match self {
            PermModel::A(_) => b.iter().map(|&x| a[x as usize]).collect(),
            PermModel::B(_) | PermModel::D(_) => b
                .iter()
                .map(|&x| {
                    let y = a[(x.unsigned_abs() - 1) as usize];
                    if x < 0 {
                        -y
                    } else {
                        y
                    }
                })
                .collect(),
            PermModel::Dihedral(m) => {
                // x ↦ ε x + r, with ε = -1 when the flip bit is set.
                let (r1, f1) = (a[0], a[1]);
                let (r2, f2) = (b[0], b[1]);
                let mut r = if f1 == 1 { r1 - r2 } else { r1 + r2 };
                if let Some(m) = m {
                    r = r.rem_euclid(*m as i64);
                }
                vec![r, f1 ^ f2]
            }
            PermModel::Product(fs) => {
                let mut out = Vec::with_capacity(a.len());
                let mut offset = 0;
                for f in fs {
                    let len = f.datum_len();
                    out.extend(f.mul(&a[offset..offset + len], &b[offset..offset + len]));
                    offset += len;
                }
                out
            }
        }
    }

    /// Product of the generators named by 0-based indices, left to right.
    pub fn word_to_elem(&self, word: &[usize]) -> Elem {
        let gens = self.generators();
        word.iter()
            .fold(self.identity(), |acc, &i| self.mul(&acc, &gens[i]))
    }
}

/// Left Cayley graph of a model, vertices in breadth-first order from the identity.
#[derive(Clone, Debug)]
pub struct OracleGraph {
    pub elems: Vec<Elem>,
    pub index: HashMap<Elem, usize>,
    /// `left[v][i]` is the vertex `g_i · v`, when it was reached.
    pub left: Vec<Vec<Option<usize>>>,
    /// Distance from the identity.
    pub depth: Vec<usize>,
}

impl OracleGraph {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.left[v].iter().flatten().copied()
    }

    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        (0..self.len())
            .flat_map(|v| self.neighbors(v).map(move |u| (v.min(u), v.max(u))))
            .collect()
    }

    /// Breadth-first distances from `src` (`usize::MAX` when unreachable).
    pub fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Vertices at graph distance exactly two from `v`.
    pub fn two_neighbors(&self, v: usize) -> BTreeSet<usize> {
        let first: BTreeSet<usize> = self.neighbors(v).collect();
        first
            .iter()
            .flat_map(|&u| self.neighbors(u))
            .filter(|&x| x != v && !first.contains(&x))
            .collect()
    }
}

/// Builds the left Cayley graph by multiplying model elements, out to
/// `max_radius` (required for infinite models).
pub fn oracle_group_graph(model: &PermModel, max_radius: Option<usize>) -> OracleGraph {
    assert!(
        model.order().is_some() || max_radius.is_some(),
        "infinite model needs a radius"
    );
    let gens = model.generators();
    let id = model.identity();
    let mut elems = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut depth = vec![0usize];
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if max_radius.is_some_and(|r| depth[v] >= r) {
            continue;
        }
        for g in &gens {
            let x = model.mul(g, &elems[v]);
            if !index.contains_key(&x) {
                index.insert(x.clone(), elems.len());
                elems.push(x);
                depth.push(depth[v] + 1);
                queue.push_back(elems.len() - 1);
            }
        }
    }
    let left = elems
        .iter()
        .map(|x| gens.iter().map(|g| index.get(&model.mul(g, x)).copied()).collect())
        .collect();
    OracleGraph {
        elems,
        index,
        left,
        depth,
    }
}

/// All maximal cliques of an undirected graph given by sorted adjacency
/// sets (Bron–Kerbosch with Tomita pivoting). Each clique is sorted.
pub fn bron_kerbosch(adj: &[BTreeSet<usize>]) -> BTreeSet<Vec<usize>> {
    fn recurse(
        adj: &[BTreeSet<usize>],
        r: &mut Vec<usize>,
        p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.insert(c);
            }
            return;
        }
        let pivot = *p
            .union(&x)
            .max_by_key(|&&u| p.intersection(&adj[u]).count())
            .unwrap();
        let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
        let mut p = p;
        for v in candidates {
            r.push(v);
            let np = p.intersection(&adj[v]).copied().collect();
            let nx = x.intersection(&adj[v]).copied().collect();
            recurse(adj, r, np, nx, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = BTreeSet::new();
    recurse(adj, &mut Vec::new(), (0..adj.len()).collect(), BTreeSet::new(), &mut out);
    out
}

/// Maximal cliques of the distance-two graph of `graph` that contain at
/// least two vertices.
pub fn oracle_maximal_2cliques(graph: &OracleGraph) -> BTreeSet<Vec<usize>> {
    let adj: Vec<BTreeSet<usize>> = (0..graph.len()).map(|v| graph.two_neighbors(v)).collect();
    bron_kerbosch(&adj)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .collect()
}

/// Explicit graph on `n` vertices from an edge list, as a one-generator-per-edge stand-in
/// for graphs that are not Cayley graphs (e.g. a path).
pub fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> OracleGraph {
    let mut left = vec![Vec::new(); n];
    for &(a, b) in edges {
        left[a].push(Some(b));
        left[b].push(Some(a));
    }
    OracleGraph {
        elems: (0..n as i64).map(|i| vec![i]).collect(),
        index: (0..n).map(|i| (vec![i as i64], i)).collect(),
        left,
        depth: vec![0; n],
    }
}
