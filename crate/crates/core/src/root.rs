//! The geometric representation: vectors over the simple roots and the
//! reflections `σ_s(v) = v - 2B(α_s, v)α_s`.

use std::ops::Index;

use crate::field::{FieldElement, Sign};
use crate::system::{CoxeterSystem, Gen};

/// Coordinates over the simple roots `α_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootVector(Vec<FieldElement>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![FieldElement::zero(); rank])
    }

    pub fn simple(rank: usize, s: Gen) -> Self {
        let mut v = Self::zero(rank);
        v.0[s.index()] = FieldElement::one();
        v
    }

    pub fn from_coords(coords: Vec<FieldElement>) -> Self {
        RootVector(coords)
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign of the first nonzero coordinate. For an actual root this is the
    /// sign of the whole vector.
    pub fn leading_sign(&self) -> Sign {
        self.0
            .iter()
            .find(|x| !x.is_zero())
            .map_or(Sign::Zero, FieldElement::sign)
    }

    pub fn is_negative(&self) -> bool {
        self.leading_sign() == Sign::Negative
    }

    /// `Some(sign)` when all nonzero coordinates share one sign.
    pub fn coherent_sign(&self) -> Option<Sign> {
        let mut seen = Sign::Zero;
        for x in &self.0 {
            match (seen, x.sign()) {
                (_, Sign::Zero) => {}
                (Sign::Zero, s) => seen = s,
                (a, b) if a == b => {}
                _ => return None,
            }
        }
        Some(seen)
    }

    pub fn add_scaled(&mut self, k: &FieldElement, other: &RootVector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_scaled(k, b);
        }
    }

    pub fn negate(&mut self) {
        for x in self.0.iter_mut() {
            *x = -&*x;
        }
    }

    /// In-place `σ_s`. Only the `s` coordinate changes:
    /// `v_s ← -v_s + Σ_{t≠s} 2cos(π/m(s,t)) v_t`.
    pub fn reflect(&mut self, sys: &CoxeterSystem, s: Gen) {
        let mut new = -&self.0[s.index()];
        for t in sys.gens().filter(|&t| t != s) {
            new.add_scaled(sys.reflection_coeff(s, t), &self.0[t.index()]);
        }
        self.0[s.index()] = new;
    }
}

impl Index<Gen> for RootVector {
    type Output = FieldElement;
    fn index(&self, s: Gen) -> &FieldElement {
        &self.0[s.index()]
    }
}

/// `B(u, v)` for the bilinear form with `B(α_s, α_t) = -cos(π/m(s,t))`.
pub fn bilinear_form(sys: &CoxeterSystem, u: &RootVector, v: &RootVector) -> FieldElement {
    let mut acc = FieldElement::zero();
    for s in sys.gens() {
        if u[s].is_zero() {
            continue;
        }
        for t in sys.gens() {
            if v[t].is_zero() {
                continue;
            }
            acc += &(&(&u[s] * &v[t]) * &sys.bilinear(s, t));
        }
    }
    acc
}

/// `σ_s(v)`.
pub fn reflect_root(sys: &CoxeterSystem, s: Gen, v: &RootVector) -> RootVector {
    let mut out = v.clone();
    out.reflect(sys, s);
    out
}

/// Images of the simple roots under an element `g`, one column per
/// generator. Right-multiplying `g` by `σ_s` only mixes columns, so frames
/// of `w⁻¹` can be updated in `O(rank²)` field operations per letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Frame(Vec<RootVector>);

impl Frame {
    pub(crate) fn identity(rank: usize) -> Self {
        Frame((0..rank).map(|s| RootVector::simple(rank, Gen::from(s))).collect())
    }

    pub(crate) fn column(&self, s: Gen) -> &RootVector {
        &self.0[s.index()]
    }

    /// Replaces `g` by `g·σ_s`: column `s` is negated and every other column
    /// `t` gains `2cos(π/m(s,t))` times the old column `s`.
    pub(crate) fn push_right(&mut self, sys: &CoxeterSystem, s: Gen) {
        let old = self.0[s.index()].clone();
        for t in sys.gens() {
            if t == s {
                self.0[t.index()].negate();
            } else {
                self.0[t.index()].add_scaled(sys.reflection_coeff(s, t), &old);
            }
        }
    }

    /// Smallest generator whose column is a negative root.
    pub(crate) fn first_negative(&self) -> Option<Gen> {
        self.0.iter().position(RootVector::is_negative).map(Gen::from)
    }

    pub(crate) fn negative_columns(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_negative())
            .map(|(i, _)| Gen::from(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::parse_preset;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn simple_reflections() {
        let a2 = parse_preset("A2").unwrap();
        let (s, t) = (Gen(0), Gen(1));
        let mut neg = RootVector::simple(2, s);
        neg.negate();
        assert_eq!(reflect_root(&a2, s, &RootVector::simple(2, s)), neg);
        // m = 3: σ_s(α_t) = α_t + α_s
        let img = reflect_root(&a2, s, &RootVector::simple(2, t));
        assert_eq!(img.coords(), &[FieldElement::one(), FieldElement::one()]);
        // m = 2: σ_s(α_t) = α_t
        let q = parse_preset("I2(2)").unwrap();
        assert_eq!(reflect_root(&q, s, &RootVector::simple(2, t)), RootVector::simple(2, t));
    }

    #[test]
    fn bilinear_on_simple_roots() {
        let b2 = parse_preset("B2").unwrap();
        let a = RootVector::simple(2, Gen(0));
        let b = RootVector::simple(2, Gen(1));
        assert!(bilinear_form(&b2, &a, &a).is_one());
        let expected = FieldElement::sqrt_term(BigRational::new(BigInt::from(-1), BigInt::from(2)), 2).unwrap();
        assert_eq!(bilinear_form(&b2, &a, &b), expected);
    }

    fn arb_vector(rank: usize) -> impl Strategy<Value = RootVector> {
        prop::collection::vec((-5i64..=5, -3i64..=3), rank).prop_map(|cs| {
            RootVector::from_coords(
                cs.into_iter()
                    .map(|(a, b)| &FieldElement::from_int(a) + &(&FieldElement::from_int(b) * &FieldElement::sqrt(5).unwrap()))
                    .collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn reflections_are_isometric_involutions(
            name in prop::sample::select(vec!["H3", "B3", "Atilde2", "I2(6)", "Universal(3)"]),
            u in arb_vector(3),
            v in arb_vector(3),
            s in 0usize..2,
        ) {
            let sys = parse_preset(name).unwrap();
            let (u, v) = if sys.rank() == 2 {
                (RootVector::from_coords(u.coords()[..2].to_vec()), RootVector::from_coords(v.coords()[..2].to_vec()))
            } else {
                (u, v)
            };
            let s = Gen::from(s);
            let su = reflect_root(&sys, s, &u);
            let sv = reflect_root(&sys, s, &v);
            prop_assert_eq!(bilinear_form(&sys, &su, &sv), bilinear_form(&sys, &u, &v));
            prop_assert_eq!(reflect_root(&sys, s, &su), u);
        }
    }
}
