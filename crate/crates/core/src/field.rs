//! Exact arithmetic in the real multiquadratic field Q(√2, √3, √5).
//!
//! An element is stored as eight rational coefficients over the basis of
//! square roots of the squarefree products of {2, 3, 5}. Internally the
//! coefficient for √d lives at the bitmask of primes dividing d
//! (bit 0 = 2, bit 1 = 3, bit 2 = 5), which makes basis products an XOR.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

const PRIMES: [u32; 3] = [2, 3, 5];

/// Radicand of each internal slot.
const RADICANDS: [u32; 8] = [1, 2, 3, 6, 5, 10, 15, 30];

/// Internal slot for each position of the public basis
/// `{1, √2, √3, √5, √6, √10, √15, √30}`.
const PUBLIC_ORDER: [usize; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

/// Sign of a real number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of_int(x: &BigInt) -> Sign {
        match x.sign() {
            num_bigint::Sign::Minus => Sign::Negative,
            num_bigint::Sign::NoSign => Sign::Zero,
            num_bigint::Sign::Plus => Sign::Positive,
        }
    }
}

/// Arithmetic operation selector for [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coords: [BigRational; 8],
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Product of the basis radicals in slots `a` and `b`: returns the slot of
/// the result and the rational factor pulled out of the square root.
fn basis_product(a: usize, b: usize) -> (usize, i64) {
    let common = a & b;
    let factor = PRIMES
        .iter()
        .enumerate()
        .filter(|(bit, _)| common & (1 << bit) != 0)
        .map(|(_, &p)| p as i64)
        .product();
    (a ^ b, factor)
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            coords: Default::default(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut x = Self::zero();
        x.coords[0] = q;
        x
    }

    /// `q·√d` for a squarefree `d` dividing 30.
    pub fn sqrt_term(q: BigRational, d: u32) -> Result<Self, Error> {
        let slot = RADICANDS
            .iter()
            .position(|&r| r == d)
            .ok_or(Error::UnsupportedRadicand(d))?;
        let mut x = Self::zero();
        x.coords[slot] = q;
        Ok(x)
    }

    /// `√d` for a squarefree `d` dividing 30.
    pub fn sqrt(d: u32) -> Result<Self, Error> {
        Self::sqrt_term(BigRational::one(), d)
    }

    /// Builds an element from coefficients over `{1, √2, √3, √5, √6, √10, √15, √30}`.
    pub fn from_coords(coords: [BigRational; 8]) -> Self {
        let mut x = Self::zero();
        for (public, q) in coords.into_iter().enumerate() {
            x.coords[PUBLIC_ORDER[public]] = q;
        }
        x
    }

    /// Coefficients over `{1, √2, √3, √5, √6, √10, √15, √30}`.
    pub fn coords(&self) -> [BigRational; 8] {
        std::array::from_fn(|public| self.coords[PUBLIC_ORDER[public]].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coords[0])
    }

    /// `self += k * other`, skipping the work when `k` is zero.
    pub fn add_scaled(&mut self, k: &FieldElement, other: &FieldElement) {
        if k.is_zero() || other.is_zero() {
            return;
        }
        if k.is_one() {
            *self += other;
            return;
        }
        for (i, a) in k.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (slot, factor) = basis_product(i, j);
                let term = a * b * BigInt::from(factor);
                self.coords[slot] += term;
            }
        }
    }

    /// Image under the field automorphism flipping the sign of √p for
    /// every prime `p` whose bit is set in `flips`.
    fn conjugate(&self, flips: usize) -> Self {
        let mut x = self.clone();
        for (slot, q) in x.coords.iter_mut().enumerate() {
            if (slot & flips).count_ones() % 2 == 1 {
                *q = -q.clone();
            }
        }
        x
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut conj = FieldElement::one();
        for flips in 1..8 {
            conj = &conj * &self.conjugate(flips);
        }
        let norm = (self * &conj)
            .as_rational()
            .cloned()
            .expect("field norm is rational");
        let inv_norm = norm.recip();
        for q in conj.coords.iter_mut() {
            *q = &*q * &inv_norm;
        }
        Ok(conj)
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<Self, Error> {
        Ok(self * &rhs.inverse()?)
    }

    /// Floating-point approximation.
    pub fn to_f64(&self) -> f64 {
        self.coords
            .iter()
            .zip(RADICANDS)
            .filter(|(q, _)| !q.is_zero())
            .map(|(q, d)| q.to_f64().unwrap_or(f64::NAN) * (d as f64).sqrt())
            .sum()
    }

    /// Exact sign under the embedding with all radicals positive.
    pub fn sign(&self) -> Sign {
        let terms: Vec<(usize, &BigRational)> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .collect();
        match terms.as_slice() {
            [] => return Sign::Zero,
            [(_, q)] => return Sign::of_int(&(q.numer() * q.denom())),
            _ => {}
        }

        // Each term is off by a few ulps at most; anything well above that is decided.
        let mut value = 0.0f64;
        let mut magnitude = 0.0f64;
        for &(slot, q) in &terms {
            let t = q.to_f64().unwrap_or(f64::NAN) * (RADICANDS[slot] as f64).sqrt();
            value += t;
            magnitude += t.abs();
        }
        if value.is_finite() && magnitude.is_finite() && value.abs() > 1e-9 * magnitude {
            return if value > 0.0 {
                Sign::Positive
            } else {
                Sign::Negative
            };
        }

        let mut bits = 64u32;
        loop {
            if let Some(sign) = interval_sign(&terms, bits) {
                return sign;
            }
            bits *= 2;
        }
    }

    pub fn cmp_value(&self, other: &FieldElement) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

/// Encloses the sum in a rational interval using `bits` binary digits for
/// every square root; `None` when the interval still straddles zero.
fn interval_sign(terms: &[(usize, &BigRational)], bits: u32) -> Option<Sign> {
    let scale = BigInt::one() << bits;
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for &(slot, q) in terms {
        let d = RADICANDS[slot];
        let (root_lo, root_hi) = if d == 1 {
            (BigRational::one(), BigRational::one())
        } else {
            let r = (BigInt::from(d) * &scale * &scale).sqrt();
            (
                BigRational::new(r.clone(), scale.clone()),
                BigRational::new(r + 1, scale.clone()),
            )
        };
        if q.is_positive() {
            lo += q * root_lo;
            hi += q * root_hi;
        } else {
            lo += q * root_hi;
            hi += q * root_lo;
        }
    }
    if lo.is_positive() {
        Some(Sign::Positive)
    } else if hi.is_negative() {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// Applies one of the four field operations.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement, Error> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let mut x = self.clone();
        x += rhs;
        x
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let mut x = self.clone();
        x -= rhs;
        x
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let mut x = FieldElement::zero();
        x.add_scaled(self, rhs);
        x
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            coords: std::array::from_fn(|i| -self.coords[i].clone()),
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(mut self, rhs: FieldElement) -> FieldElement {
        self += &rhs;
        self
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(mut self, rhs: FieldElement) -> FieldElement {
        self -= &rhs;
        self
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for slot in PUBLIC_ORDER {
            let q = &self.coords[slot];
            if q.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match RADICANDS[slot] {
                1 => write!(f, "{q}")?,
                d if q.is_one() => write!(f, "√{d}")?,
                d => write!(f, "({q})√{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq(d: u32) -> FieldElement {
        FieldElement::sqrt(d).unwrap()
    }

    #[test]
    fn basis_products() {
        assert_eq!(&sq(2) * &sq(3), sq(6));
        assert_eq!(&sq(6) * &sq(10), &FieldElement::from_int(2) * &sq(15));
        assert_eq!(&sq(30) * &sq(30), FieldElement::from_int(30));
    }

    #[test]
    fn conjugate_identity() {
        let one = FieldElement::one();
        let a = &one + &sq(2);
        let b = &sq(2) - &one;
        assert_eq!(&a * &b, one);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let r = field_arith(&FieldElement::one(), &FieldElement::zero(), FieldOp::Div);
        assert!(matches!(r, Err(Error::DivisionByZero)));
    }

    #[test]
    fn unsupported_radicand() {
        assert!(FieldElement::sqrt(7).is_err());
        assert!(FieldElement::sqrt(4).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(FieldElement::zero().sign(), Sign::Zero);
        assert_eq!((&sq(6) - &sq(5)).sign(), Sign::Positive);
        let golden_minus_one = FieldElement::from_coords([
            rat(-1, 2),
            rat(0, 1),
            rat(0, 1),
            rat(1, 2),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
        ]);
        assert_eq!(golden_minus_one.sign(), Sign::Positive);
        // 5 + 2√6 = (√2 + √3)^2, so √2 + √3 - sqrt(5 + 2√6) = 0; check a near miss instead.
        let near = &(&sq(2) + &sq(3)) - &FieldElement::from_rational(rat(31_464_265, 10_000_000));
        assert_eq!(near.sign(), Sign::Negative);
    }

    #[test]
    fn interval_refinement_decides_tiny_values() {
        // 1 + √2 - k/10^30 for k the 31-digit truncation of (1+√2)·10^30.
        let k = BigInt::parse_bytes(b"2414213562373095048801688724209", 10).unwrap();
        let approx = BigRational::new(k, BigInt::from(10).pow(30));
        let x = &(&FieldElement::one() + &sq(2)) - &FieldElement::from_rational(approx);
        assert_eq!(x.sign(), Sign::Positive);
        assert_eq!((-&x).sign(), Sign::Negative);
    }

    fn arb_element() -> impl Strategy<Value = FieldElement> {
        prop::array::uniform8((-20i64..=20, 1i64..=6)).prop_map(|cs| {
            FieldElement::from_coords(cs.map(|(n, d)| rat(n, d)))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !b.is_zero() {
                prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
            }
        }

        #[test]
        fn sign_matches_float_when_clear(a in arb_element()) {
            let v = a.to_f64();
            if v.abs() > 1e-6 {
                let expected = if v > 0.0 { Sign::Positive } else { Sign::Negative };
                prop_assert_eq!(a.sign(), expected);
            }
        }

        #[test]
        fn sign_is_multiplicative(a in arb_element(), b in arb_element()) {
            let s = (&a * &b).sign();
            let expected = match (a.sign(), b.sign()) {
                (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
                (x, y) if x == y => Sign::Positive,
                _ => Sign::Negative,
            };
            prop_assert_eq!(s, expected);
        }
    }
}
