//! Group elements as canonical reduced words, and the word problem.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::root::{Frame, RootVector};
use crate::system::{CoxeterSystem, Gen, SystemTag};

/// An element of `W`, stored as its lexicographically least reduced word.
///
/// Two elements of the same system are equal exactly when their words are
/// equal. Elements order ShortLex: by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    word: Vec<Gen>,
    system: SystemTag,
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.system.cmp(&other.system))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Element {
    pub fn identity(sys: &CoxeterSystem) -> Self {
        Element {
            word: Vec::new(),
            system: sys.tag(),
        }
    }

    pub fn generator(sys: &CoxeterSystem, s: Gen) -> Self {
        assert!(s.index() < sys.rank(), "generator {s:?} out of range");
        Element {
            word: vec![s],
            system: sys.tag(),
        }
    }

    /// Canonical form of the product of the letters of `word`.
    pub fn from_word(sys: &CoxeterSystem, word: &[Gen]) -> Self {
        canonicalize(sys, word)
    }

    /// Wraps a word already known to be the canonical form.
    pub(crate) fn from_canonical(sys: &CoxeterSystem, word: Vec<Gen>) -> Self {
        Element {
            word,
            system: sys.tag(),
        }
    }

    /// Parses space-separated generator names; `e` (or an empty string) is the identity.
    pub fn parse(sys: &CoxeterSystem, text: &str) -> Result<Self, Error> {
        let text = text.trim();
        if text.is_empty() || text == "e" {
            return Ok(Self::identity(sys));
        }
        let word = text
            .split_whitespace()
            .map(|n| sys.gen_by_name(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(canonicalize(sys, &word))
    }

    pub fn word(&self) -> &[Gen] {
        &self.word
    }

    /// `l(w)`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn system(&self) -> SystemTag {
        self.system
    }

    /// True for odd length, i.e. membership in `W₁`.
    pub fn is_odd(&self) -> bool {
        self.word.len() % 2 == 1
    }

    pub fn display<'a>(&'a self, sys: &'a CoxeterSystem) -> WordDisplay<'a> {
        WordDisplay { sys, word: &self.word }
    }

    pub fn to_text(&self, sys: &CoxeterSystem) -> String {
        self.display(sys).to_string()
    }

    fn assert_in(&self, sys: &CoxeterSystem) {
        assert_eq!(
            self.system,
            sys.tag(),
            "element belongs to a different Coxeter system than {}",
            sys.name()
        );
    }
}

/// Renders a word as space-separated generator names, `e` when empty.
pub struct WordDisplay<'a> {
    sys: &'a CoxeterSystem,
    word: &'a [Gen],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (i, s) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.sys.gen_name(*s))?;
        }
        Ok(())
    }
}

pub fn format_word(sys: &CoxeterSystem, word: &[Gen]) -> String {
    WordDisplay { sys, word }.to_string()
}

/// Frame of `w⁻¹` for the element spelled by `word`.
pub(crate) fn inverse_frame(sys: &CoxeterSystem, word: &[Gen]) -> Frame {
    let mut frame = Frame::identity(sys.rank());
    for &s in word.iter().rev() {
        frame.push_right(sys, s);
    }
    frame
}

/// Greedy peeling: the smallest left descent is the first letter of the
/// lexicographically least reduced word.
pub(crate) fn peel(sys: &CoxeterSystem, mut frame: Frame) -> Vec<Gen> {
    let mut out = Vec::new();
    while let Some(s) = frame.first_negative() {
        out.push(s);
        frame.push_right(sys, s);
    }
    out
}

/// Lexicographically least reduced word for the product of `word`.
pub fn canonicalize(sys: &CoxeterSystem, word: &[Gen]) -> Element {
    for &s in word {
        assert!(s.index() < sys.rank(), "generator {s:?} out of range");
    }
    Element {
        word: peel(sys, inverse_frame(sys, word)),
        system: sys.tag(),
    }
}

/// `w⁻¹(α_s)`, computed by applying the letter reflections one at a time.
pub fn inverse_image_of_simple_root(sys: &CoxeterSystem, s: Gen, word: &[Gen]) -> RootVector {
    let mut v = RootVector::simple(sys.rank(), s);
    for &c in word {
        v.reflect(sys, c);
    }
    v
}

/// `l(sw) < l(w)`.
pub fn is_left_descent(sys: &CoxeterSystem, s: Gen, w: &Element) -> bool {
    w.assert_in(sys);
    inverse_image_of_simple_root(sys, s, &w.word).is_negative()
}

pub fn left_descents(sys: &CoxeterSystem, w: &Element) -> Vec<Gen> {
    w.assert_in(sys);
    inverse_frame(sys, &w.word).negative_columns().collect()
}

/// `s·w`.
pub fn mul_gen_left(sys: &CoxeterSystem, s: Gen, w: &Element) -> Element {
    w.assert_in(sys);
    let mut frame = inverse_frame(sys, &w.word);
    frame.push_right(sys, s);
    Element {
        word: peel(sys, frame),
        system: sys.tag(),
    }
}

/// Applies the letters of `x` on the left of `w`: returns `x·w`.
pub fn mul_word_left(sys: &CoxeterSystem, x: &[Gen], w: &Element) -> Element {
    w.assert_in(sys);
    let mut frame = inverse_frame(sys, &w.word);
    for &s in x.iter().rev() {
        frame.push_right(sys, s);
    }
    Element {
        word: peel(sys, frame),
        system: sys.tag(),
    }
}

pub fn mul(sys: &CoxeterSystem, w: &Element, v: &Element) -> Element {
    v.assert_in(sys);
    mul_word_left(sys, &w.word, v)
}

pub fn inverse(sys: &CoxeterSystem, w: &Element) -> Element {
    w.assert_in(sys);
    let reversed: Vec<Gen> = w.word.iter().rev().copied().collect();
    canonicalize(sys, &reversed)
}

pub fn length(sys: &CoxeterSystem, w: &Element) -> usize {
    w.assert_in(sys);
    w.len()
}

/// `d(w, v) = l(wv⁻¹)`.
pub fn distance(sys: &CoxeterSystem, w: &Element, v: &Element) -> usize {
    w.assert_in(sys);
    v.assert_in(sys);
    let mut frame = Frame::identity(sys.rank());
    // (w v⁻¹)⁻¹ = v w⁻¹: push the letters of v⁻¹ (v reversed) then w, rightmost first.
    for &s in v.word.iter() {
        frame.push_right(sys, s);
    }
    for &s in w.word.iter().rev() {
        frame.push_right(sys, s);
    }
    peel(sys, frame).len()
}

/// Length of the element spelled by an arbitrary word.
pub fn word_length(sys: &CoxeterSystem, word: &[Gen]) -> usize {
    peel(sys, inverse_frame(sys, word)).len()
}

/// For a reduced word `s₁…s_m` and a left descent `s`, the smallest
/// 0-based position `k` with `s·s₁…s_m = s₁…ŝ_k…s_m`.
///
/// `k` is where the root `s₁…s_{k-1}(α_{s_k})` equals `α_s`; the deletion
/// identity is then checked by multiplying out both sides.
pub fn exchange_index(sys: &CoxeterSystem, word: &[Gen], s: Gen) -> Result<usize, Error> {
    sys.check_gen(s)?;
    for &c in word {
        sys.check_gen(c)?;
    }
    let frame = inverse_frame(sys, word);
    let reduced = peel(sys, frame.clone());
    if reduced.len() != word.len() {
        return Err(Error::NotReduced(format_word(sys, word)));
    }
    if !frame.column(s).is_negative() {
        return Err(Error::NotADescent(sys.gen_name(s).to_string()));
    }
    let target = RootVector::simple(sys.rank(), s);
    let k = (0..word.len())
        .find(|&k| {
            let mut root = RootVector::simple(sys.rank(), word[k]);
            for &c in word[..k].iter().rev() {
                root.reflect(sys, c);
            }
            root == target
        })
        .expect("exchange condition holds for reduced words");
    let mut deleted = word.to_vec();
    deleted.remove(k);
    let mut with_s = Vec::with_capacity(word.len() + 1);
    with_s.push(s);
    with_s.extend_from_slice(word);
    assert_eq!(
        canonicalize(sys, &deleted),
        canonicalize(sys, &with_s),
        "exchange deletion identity failed"
    );
    Ok(k)
}

/// The generator set `S_w` shared by all reduced words of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Support(pub BTreeSet<Gen>);

impl Support {
    pub fn of_word(word: &[Gen]) -> Self {
        Support(word.iter().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: Gen) -> bool {
        self.0.contains(&s)
    }
}

pub fn support(sys: &CoxeterSystem, w: &Element) -> Support {
    w.assert_in(sys);
    Support::of_word(&w.word)
}

/// `w(s,s') = ss's = s'ss'` for a pair with `m(s,s') = 3`.
pub fn braid_element(sys: &CoxeterSystem, s: Gen, t: Gen) -> Result<Element, Error> {
    sys.check_gen(s)?;
    sys.check_gen(t)?;
    if s == t || sys.m(s, t) != crate::system::Label::Finite(3) {
        let m = if s == t { "1".to_string() } else { sys.m(s, t).to_string() };
        return Err(Error::NotBraidPair(m));
    }
    Ok(canonicalize(sys, &[s, t, s]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::parse_preset;

    fn el(sys: &CoxeterSystem, text: &str) -> Element {
        Element::parse(sys, text).unwrap()
    }

    #[test]
    fn descents_in_a2() {
        let sys = parse_preset("I2(3)").unwrap();
        let (s, t) = (Gen(0), Gen(1));
        let e = Element::identity(&sys);
        assert!(!is_left_descent(&sys, s, &e));
        assert!(is_left_descent(&sys, s, &Element::generator(&sys, s)));
        let st = el(&sys, "s1 s2");
        assert_eq!(st.word(), &[s, t]);
        assert!(is_left_descent(&sys, s, &st));
        assert!(!is_left_descent(&sys, t, &st));
    }

    #[test]
    fn multiplication_basics() {
        let sys = parse_preset("I2(3)").unwrap();
        let (s, t) = (Gen(0), Gen(1));
        let e = Element::identity(&sys);
        assert_eq!(mul_gen_left(&sys, s, &e).word(), &[s]);
        assert_eq!(mul_gen_left(&sys, s, &Element::generator(&sys, s)), e);
        let sts = mul_gen_left(&sys, s, &el(&sys, "s2 s1"));
        assert_eq!(sts, el(&sys, "s2 s1 s2"));
        assert_eq!(sts.word(), &[s, t, s]);
        assert_eq!(sts, braid_element(&sys, s, t).unwrap());

        let st = el(&sys, "s1 s2");
        assert_eq!(mul(&sys, &st, &e), st);
        assert_eq!(inverse(&sys, &st), el(&sys, "s2 s1"));
        assert_eq!(mul(&sys, &st, &inverse(&sys, &st)), e);

        let k = parse_preset("I2(2)").unwrap();
        let st = el(&k, "s1 s2");
        assert!(mul(&k, &st, &st).is_identity());
        assert_eq!(st, el(&k, "s2 s1"));
    }

    #[test]
    fn distances() {
        let sys = parse_preset("I2(4)").unwrap();
        let e = Element::identity(&sys);
        let longest = el(&sys, "s1 s2 s1 s2");
        assert_eq!(distance(&sys, &e, &longest), 4);
        assert_eq!(distance(&sys, &longest, &longest), 0);
        let (s, t) = (Element::generator(&sys, Gen(0)), Element::generator(&sys, Gen(1)));
        assert_eq!(distance(&sys, &s, &t), 2);
        assert_eq!(el(&sys, "s1 s2 s1 s2 s1"), el(&sys, "s2 s1 s2"));
    }

    #[test]
    fn exchange_examples() {
        let a2 = parse_preset("I2(3)").unwrap();
        assert_eq!(exchange_index(&a2, &[Gen(0), Gen(1)], Gen(0)).unwrap(), 0);
        let q = parse_preset("I2(2)").unwrap();
        assert_eq!(exchange_index(&q, &[Gen(0), Gen(1)], Gen(1)).unwrap(), 1);
        assert!(matches!(
            exchange_index(&a2, &[Gen(0), Gen(1)], Gen(1)),
            Err(Error::NotADescent(_))
        ));
        assert!(matches!(
            exchange_index(&a2, &[Gen(0), Gen(0)], Gen(0)),
            Err(Error::NotReduced(_))
        ));
    }

    #[test]
    fn supports() {
        let a2 = parse_preset("I2(3)").unwrap();
        assert!(support(&a2, &Element::identity(&a2)).is_empty());
        assert_eq!(support(&a2, &el(&a2, "s1 s2 s1")).len(), 2);
        let a3 = parse_preset("A3").unwrap();
        let longest = el(&a3, "s1 s2 s1 s3 s2 s1");
        assert_eq!(longest.len(), 6);
        assert_eq!(support(&a3, &longest).len(), 3);
    }

    #[test]
    fn braid_element_needs_label_three() {
        let a3 = parse_preset("A3").unwrap();
        let w = braid_element(&a3, Gen(0), Gen(1)).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(support(&a3, &w).0, [Gen(0), Gen(1)].into_iter().collect());
        assert!(matches!(braid_element(&a3, Gen(0), Gen(2)), Err(Error::NotBraidPair(_))));
        let b3 = parse_preset("B3").unwrap();
        assert!(braid_element(&b3, Gen(0), Gen(1)).is_err());
    }

    #[test]
    fn parse_and_display() {
        let sys = parse_preset("A3").unwrap();
        assert_eq!(Element::identity(&sys).to_text(&sys), "e");
        assert_eq!(el(&sys, "s3 s1").to_text(&sys), "s1 s3");
        assert!(Element::parse(&sys, "s1 s9").is_err());
    }

    #[test]
    #[should_panic(expected = "different Coxeter system")]
    fn mixing_systems_is_detected() {
        let a = parse_preset("A3").unwrap();
        let b = parse_preset("B3").unwrap();
        let w = Element::generator(&a, Gen(0));
        let _ = mul_gen_left(&b, Gen(0), &w);
    }
}
