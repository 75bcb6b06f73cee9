//! Coxeter matrices, presets and the diagram file format.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Error;
use crate::field::FieldElement;

/// Index of a generator in `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub u16);

impl Gen {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for Gen {
    fn from(i: usize) -> Self {
        Gen(i as u16)
    }
}

/// Entry `m(s,s')` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub fn is_commuting(self) -> bool {
        self == Label::Finite(2)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

/// Fingerprint tying elements to the system that produced them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SystemTag(pub u64);

/// A validated Coxeter system `(W, S)`.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    name: String,
    names: Vec<String>,
    matrix: Vec<Vec<Label>>,
    /// `2cos(π/m(s,t))` off the diagonal, `2` for `m = ∞`; equals `-2B(α_s, α_t)`.
    coeff: Vec<Vec<FieldElement>>,
    tag: SystemTag,
}

/// `2cos(π/m)` for the supported labels.
fn two_cos_pi_over(label: Label) -> Option<FieldElement> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    Some(match label {
        Label::Finite(2) => FieldElement::zero(),
        Label::Finite(3) => FieldElement::one(),
        Label::Finite(4) => FieldElement::sqrt(2).ok()?,
        Label::Finite(5) => {
            &FieldElement::from_rational(half.clone()) + &FieldElement::sqrt_term(half, 5).ok()?
        }
        Label::Finite(6) => FieldElement::sqrt(3).ok()?,
        Label::Infinite => FieldElement::from_int(2),
        Label::Finite(_) => return None,
    })
}

impl CoxeterSystem {
    /// Validates a Coxeter matrix.
    pub fn new(name: impl Into<String>, names: Vec<String>, matrix: Vec<Vec<Label>>) -> Result<Self, Error> {
        let rank = matrix.len();
        if rank == 0 {
            return Err(Error::Parse("rank must be at least 1".into()));
        }
        if names.len() != rank {
            return Err(Error::Parse(format!(
                "{} generator names for rank {rank}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name == "e" || name.chars().any(char::is_whitespace) {
                return Err(Error::Parse(format!("invalid generator name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::Parse(format!("duplicate generator name {name:?}")));
            }
        }
        let mut coeff = vec![vec![FieldElement::zero(); rank]; rank];
        for i in 0..rank {
            if matrix[i].len() != rank {
                return Err(Error::Parse(format!("row {} has {} entries", i + 1, matrix[i].len())));
            }
            if matrix[i][i] != Label::Finite(1) {
                return Err(Error::Parse(format!(
                    "diagonal entry m({0},{0}) = {1}, expected 1",
                    i + 1,
                    matrix[i][i]
                )));
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::Parse(format!(
                        "asymmetric entry m({},{}) = {} but m({},{}) = {}",
                        i + 1,
                        j + 1,
                        matrix[i][j],
                        j + 1,
                        i + 1,
                        matrix[j][i]
                    )));
                }
                coeff[i][j] = two_cos_pi_over(matrix[i][j]).ok_or_else(|| {
                    Error::Parse(format!(
                        "unsupported label m({},{}) = {} (allowed: 2..6, inf)",
                        i + 1,
                        j + 1,
                        matrix[i][j]
                    ))
                })?;
            }
        }
        let mut h = DefaultHasher::new();
        names.hash(&mut h);
        matrix.hash(&mut h);
        Ok(CoxeterSystem {
            name: name.into(),
            names,
            matrix,
            coeff,
            tag: SystemTag(h.finish()),
        })
    }

    /// Parses a preset name (see [`parse_preset`]) or, failing that, diagram file text.
    pub fn parse(input: &str) -> Result<Self, Error> {
        if input.trim_start().starts_with(|c: char| c.is_ascii_digit()) && input.contains('\n') {
            parse_diagram(input)
        } else {
            parse_preset(input)
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn tag(&self) -> SystemTag {
        self.tag
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> + Clone {
        (0..self.rank()).map(Gen::from)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gen_name(&self, s: Gen) -> &str {
        &self.names[s.index()]
    }

    pub fn gen_by_name(&self, name: &str) -> Result<Gen, Error> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(Gen::from)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn check_gen(&self, s: Gen) -> Result<Gen, Error> {
        if s.index() < self.rank() {
            Ok(s)
        } else {
            Err(Error::GeneratorOutOfRange(s.index(), self.rank()))
        }
    }

    pub fn m(&self, s: Gen, t: Gen) -> Label {
        self.matrix[s.index()][t.index()]
    }

    pub fn matrix(&self) -> &[Vec<Label>] {
        &self.matrix
    }

    pub fn commute(&self, s: Gen, t: Gen) -> bool {
        s == t || self.m(s, t).is_commuting()
    }

    /// `2cos(π/m(s,t))` for `s ≠ t`.
    pub fn reflection_coeff(&self, s: Gen, t: Gen) -> &FieldElement {
        &self.coeff[s.index()][t.index()]
    }

    /// `B(α_s, α_t)`: `1` on the diagonal, `-cos(π/m)` otherwise, `-1` for `m = ∞`.
    pub fn bilinear(&self, s: Gen, t: Gen) -> FieldElement {
        if s == t {
            FieldElement::one()
        } else {
            let half = FieldElement::from_rational(BigRational::new(BigInt::from(-1), BigInt::from(2)));
            &half * self.reflection_coeff(s, t)
        }
    }

    /// True when no pair of generators is joined by an edge of the diagram.
    pub fn is_commuting_system(&self) -> bool {
        self.gens().all(|s| self.gens().all(|t| self.commute(s, t)))
    }

    /// Diagram file text for this system (pairs with `m = 2` omitted).
    pub fn to_diagram(&self) -> String {
        let mut out = format!("{}\n", self.rank());
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                let m = self.matrix[i][j];
                if m != Label::Finite(2) {
                    out.push_str(&format!("{} {} {}\n", i + 1, j + 1, m));
                }
            }
        }
        out
    }
}

impl PartialEq for CoxeterSystem {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.matrix == other.matrix
    }
}

impl Eq for CoxeterSystem {}

fn default_names(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("s{i}")).collect()
}

fn commuting_matrix(rank: usize) -> Vec<Vec<Label>> {
    (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| if i == j { Label::Finite(1) } else { Label::Finite(2) })
                .collect()
        })
        .collect()
}

fn set_edge(m: &mut [Vec<Label>], i: usize, j: usize, label: Label) {
    m[i][j] = label;
    m[j][i] = label;
}

fn path(rank: usize, labels: &[(usize, Label)]) -> Vec<Vec<Label>> {
    let mut m = commuting_matrix(rank);
    for i in 0..rank.saturating_sub(1) {
        set_edge(&mut m, i, i + 1, Label::Finite(3));
    }
    for &(i, label) in labels {
        set_edge(&mut m, i, i + 1, label);
    }
    m
}

fn parse_rank(s: &str, what: &str) -> Result<usize, Error> {
    s.parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad rank {s:?} in preset {what:?}")))
}

fn parse_label(s: &str) -> Result<Label, Error> {
    match s {
        "inf" | "∞" | "infinity" => Ok(Label::Infinite),
        _ => s
            .parse::<u32>()
            .map(Label::Finite)
            .map_err(|_| Error::Parse(format!("bad label {s:?}"))),
    }
}

/// Matrix of a single irreducible (or named) preset block.
fn preset_block(name: &str) -> Result<Vec<Vec<Label>>, Error> {
    let bad = || Error::Parse(format!("unknown preset {name:?}"));
    let small = |min: usize, n: usize| {
        if n < min {
            Err(Error::Parse(format!("preset {name:?} needs rank >= {min}")))
        } else {
            Ok(n)
        }
    };
    if let Some(inner) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let label = parse_label(inner)?;
        if label == Label::Finite(1) || label == Label::Finite(0) {
            return Err(Error::Parse(format!("invalid dihedral label in {name:?}")));
        }
        let mut m = commuting_matrix(2);
        set_edge(&mut m, 0, 1, label);
        return Ok(m);
    }
    for (prefix, universal) in [("Universal(", true), ("Cube(", false)] {
        if let Some(inner) = name.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
            let n = small(1, parse_rank(inner, name)?)?;
            let mut m = commuting_matrix(n);
            if universal {
                for i in 0..n {
                    for j in i + 1..n {
                        set_edge(&mut m, i, j, Label::Infinite);
                    }
                }
            }
            return Ok(m);
        }
    }
    let tilde = name
        .strip_prefix("Atilde")
        .or_else(|| name.strip_prefix("Ã"))
        .or_else(|| name.strip_prefix("A~"));
    if let Some(rest) = tilde {
        let n = small(1, parse_rank(rest, name)?)?;
        if n == 1 {
            return preset_block("I2(inf)");
        }
        let mut m = path(n + 1, &[]);
        set_edge(&mut m, 0, n, Label::Finite(3));
        return Ok(m);
    }
    match name {
        "F4" => return Ok(path(4, &[(1, Label::Finite(4))])),
        "H3" => return Ok(path(3, &[(0, Label::Finite(5))])),
        "H4" => return Ok(path(4, &[(0, Label::Finite(5))])),
        "G2" => return preset_block("I2(6)"),
        _ => {}
    }
    let (family, rest) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let n = parse_rank(rest, name).map_err(|_| bad())?;
    match family {
        "A" => Ok(path(small(1, n)?, &[])),
        // s1 -4- s2 - s3 - ... - sn
        "B" | "C" => Ok(path(small(2, n)?, &[(0, Label::Finite(4))])),
        // s1 and s2 both attached to s3, then the path s3 - ... - sn
        "D" => {
            let n = small(3, n)?;
            let mut m = path(n, &[]);
            set_edge(&mut m, 0, 1, Label::Finite(2));
            set_edge(&mut m, 0, 2, Label::Finite(3));
            Ok(m)
        }
        // s1 - s3 - s4 - ... with s2 attached to s4 (Bourbaki numbering)
        "E" if (6..=8).contains(&n) => {
            let mut m = commuting_matrix(n);
            set_edge(&mut m, 0, 2, Label::Finite(3));
            set_edge(&mut m, 1, 3, Label::Finite(3));
            for i in 2..n - 1 {
                set_edge(&mut m, i, i + 1, Label::Finite(3));
            }
            Ok(m)
        }
        _ => Err(bad()),
    }
}

/// Block-diagonal assembly; `free` joins blocks by `∞` instead of `2`.
fn assemble(blocks: Vec<Vec<Vec<Label>>>, free: bool) -> Vec<Vec<Label>> {
    let rank: usize = blocks.iter().map(Vec::len).sum();
    let cross = if free { Label::Infinite } else { Label::Finite(2) };
    let mut m = vec![vec![cross; rank]; rank];
    let mut offset = 0;
    for b in &blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &label) in row.iter().enumerate() {
                m[offset + i][offset + j] = label;
            }
        }
        offset += b.len();
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Label::Finite(1);
    }
    m
}

fn parse_product(expr: &str) -> Result<Vec<Vec<Label>>, Error> {
    let mut blocks = Vec::new();
    for factor in expr.split('x') {
        let factor = factor.trim();
        match factor.split_once('^') {
            Some((base, power)) => {
                let k = parse_rank(power, expr)?;
                if k == 0 {
                    return Err(Error::Parse(format!("zero power in {expr:?}")));
                }
                let b = preset_block(base.trim())?;
                blocks.extend(std::iter::repeat_n(b, k));
            }
            None => blocks.push(preset_block(factor)?),
        }
    }
    Ok(assemble(blocks, false))
}

/// Parses a preset expression.
///
/// Blocks: `An`, `Bn`, `Dn`, `E6`..`E8`, `F4`, `H3`, `H4`, `I2(m)` with
/// `m` in `2..=6` or `inf`, `Atilde<n>` (affine, cyclic diagram),
/// `Cube(n)` (n commuting generators) and `Universal(n)` (all labels `∞`).
/// `X^k` repeats a block, `XxY` is the direct product and `X*Y` the free
/// product. Generators are named `s1..sn` in block order.
pub fn parse_preset(input: &str) -> Result<CoxeterSystem, Error> {
    let input = input.trim();
    if input.is_empty() {
        return Err(Error::Parse("empty preset name".into()));
    }
    let factors: Vec<_> = input.split('*').map(parse_product).collect::<Result<_, _>>()?;
    let matrix = if factors.len() == 1 {
        factors.into_iter().next().unwrap()
    } else {
        assemble(factors, true)
    };
    CoxeterSystem::new(input, default_names(matrix.len()), matrix)
}

/// Parses the diagram file format: the rank on the first line, then lines
/// `i j m` with 1-based indices and `m` in `2..=6` or `inf`. Pairs not
/// listed default to `m = 2`. Blank lines and `#` comments are ignored.
pub fn parse_diagram(text: &str) -> Result<CoxeterSystem, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, first) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty diagram file".into()))?;
    let rank: usize = first
        .parse()
        .map_err(|_| Error::Parse(format!("line 1: bad rank {first:?}")))?;
    if rank == 0 {
        return Err(Error::Parse("line 1: rank must be at least 1".into()));
    }
    let mut matrix = commuting_matrix(rank);
    let mut seen = vec![vec![None; rank]; rank];
    for (line_no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [i, j, m] = parts.as_slice() else {
            return Err(Error::Parse(format!("line {line_no}: expected `i j m`, got {line:?}")));
        };
        let index = |s: &str| -> Result<usize, Error> {
            match s.parse::<usize>() {
                Ok(k) if (1..=rank).contains(&k) => Ok(k - 1),
                _ => Err(Error::Parse(format!(
                    "line {line_no}: generator index {s:?} out of range 1..={rank}"
                ))),
            }
        };
        let (i, j) = (index(i)?, index(j)?);
        if i == j {
            return Err(Error::Parse(format!(
                "line {line_no}: entry {line:?} sets a diagonal entry"
            )));
        }
        let label = parse_label(m).map_err(|_| Error::Parse(format!("line {line_no}: bad label in {line:?}")))?;
        match label {
            Label::Finite(2..=6) | Label::Infinite => {}
            _ => {
                return Err(Error::Parse(format!(
                    "line {line_no}: entry {line:?} has unsupported label {label} (allowed: 2..6, inf)"
                )))
            }
        }
        if let Some(prev) = seen[i][j] {
            if prev != label {
                return Err(Error::Parse(format!(
                    "line {line_no}: entry {line:?} conflicts with earlier m({},{}) = {prev}",
                    i + 1,
                    j + 1
                )));
            }
        }
        seen[i][j] = Some(label);
        seen[j][i] = Some(label);
        set_edge(&mut matrix, i, j, label);
    }
    CoxeterSystem::new("diagram", default_names(rank), matrix)
}

/// Named presets accepted by [`parse_preset`], for listings.
pub const PRESET_HELP: &[&str] = &[
    "An (n>=1)",
    "Bn (n>=2)",
    "Dn (n>=3)",
    "E6, E7, E8",
    "F4",
    "G2, H3, H4",
    "I2(m) (m = 2..6 or inf)",
    "Atilde<n> (n>=1, affine)",
    "Cube(n) (n commuting generators)",
    "Universal(n) (all labels inf)",
    "X^k, XxY (direct product), X*Y (free product)",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_preset() {
        let sys = parse_preset("I2(3)").unwrap();
        assert_eq!(sys.rank(), 2);
        assert_eq!(sys.m(Gen(0), Gen(1)), Label::Finite(3));
        assert_eq!(parse_preset("I2(inf)").unwrap().m(Gen(0), Gen(1)), Label::Infinite);
    }

    #[test]
    fn a3_from_file_matches_preset() {
        let file = parse_diagram("3\n1 2 3\n2 3 3\n").unwrap();
        let preset = parse_preset("A3").unwrap();
        assert_eq!(file, preset);
    }

    #[test]
    fn unsupported_label_names_the_entry() {
        let err = parse_diagram("3\n1 2 7\n").unwrap_err();
        let Error::Parse(msg) = err else { panic!() };
        assert!(msg.contains("1 2 7"), "{msg}");
        assert!(parse_preset("I2(7)").is_err());
    }

    #[test]
    fn asymmetric_and_diagonal_errors() {
        let mut m = commuting_matrix(2);
        m[0][1] = Label::Finite(3);
        let err = CoxeterSystem::new("x", default_names(2), m).unwrap_err();
        assert!(err.to_string().contains("asymmetric"));
        let mut m = commuting_matrix(2);
        m[1][1] = Label::Finite(2);
        assert!(CoxeterSystem::new("x", default_names(2), m).is_err());
        assert!(parse_diagram("2\n1 1 3\n").is_err());
        assert!(parse_diagram("2\n1 3 3\n").is_err());
    }

    #[test]
    fn products() {
        let q = parse_preset("A1^4").unwrap();
        assert_eq!(q, parse_preset("Cube(4)").unwrap());
        assert!(q.is_commuting_system());
        let u = parse_preset("A1*A1*A1").unwrap();
        assert_eq!(u, parse_preset("Universal(3)").unwrap());
        let p = parse_preset("A2xA1").unwrap();
        assert_eq!(p.m(Gen(0), Gen(1)), Label::Finite(3));
        assert_eq!(p.m(Gen(1), Gen(2)), Label::Finite(2));
    }

    #[test]
    fn affine_a2_is_a_triangle() {
        let sys = parse_preset("Atilde2").unwrap();
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            assert_eq!(sys.m(Gen(i), Gen(j)), Label::Finite(3));
        }
    }

    #[test]
    fn diagram_roundtrip() {
        for name in ["B4", "D5", "F4", "H3", "Atilde3", "I2(inf)"] {
            let sys = parse_preset(name).unwrap();
            assert_eq!(parse_diagram(&sys.to_diagram()).unwrap().matrix(), sys.matrix());
        }
    }

    #[test]
    fn parse_dispatches_on_shape() {
        assert_eq!(CoxeterSystem::parse("3\n1 2 3\n2 3 3\n").unwrap().rank(), 3);
        assert_eq!(CoxeterSystem::parse("D4").unwrap().rank(), 4);
        assert!(CoxeterSystem::parse("Z9").is_err());
    }
}
