//! Exact sparse Laurent polynomials in two variables over the integers.
//!
//! The same type carries `h(G; x, y)`, `g~`, `g(t, w)` and graded dimensions;
//! the variable names are only a matter of display.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent pair `(a, b)` of `x^a y^b`.
pub type Exponent = (i64, i64);

/// A polynomial in `x^{±1}, y^{±1}` with arbitrary-precision coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration is in ascending lexicographic
/// order of `(x-exponent, y-exponent)` and no zero coefficient is stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct BivariateLaurent {
    terms: BTreeMap<Exponent, BigInt>,
}

impl BivariateLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, a: i64, b: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b), c.into());
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Builds a polynomial from `(a, b, c)` triples; repeated exponents add.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, i64, C)>) -> Self {
        let mut p = Self::zero();
        for (a, b, c) in terms {
            p.add_term((a, b), c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: i64, b: i64) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exponent, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Smallest exponent of each variable, `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let &(a0, b0) = it.next()?;
        Some(it.fold((a0, b0), |(a, b), &(x, y)| (a.min(x), b.min(y))))
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.min_exponents().is_some_and(|(a, b)| a < 0 || b < 0)
    }

    /// `±x^a y^b`, the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NonUnitPower);
        }
        let (&(a, b), c) = self.terms.iter().next().expect("unit has one term");
        Ok(Self::monomial(c.clone(), -a, -b))
    }

    /// Multiplies by `x^a y^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// `self^k`; negative `k` is allowed only for units.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `p(1 + t, 1 + w)`, requiring nonnegative exponents.
    pub fn substitute_shift(&self) -> Result<Self> {
        if let Some((a, b)) = self.terms.keys().find(|&&(a, b)| a < 0 || b < 0) {
            return Err(Error::NegativeExponent(*a, *b));
        }
        let max_a = self.terms.keys().map(|e| e.0).max().unwrap_or(0) as usize;
        let max_b = self.terms.keys().map(|e| e.1).max().unwrap_or(0) as usize;
        let binom = binomial_rows(max_a.max(max_b));
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let (a, b) = (a as usize, b as usize);
            for (i, bi) in binom[a].iter().enumerate() {
                let ci = c * bi;
                for (j, bj) in binom[b].iter().enumerate() {
                    out.add_term((i as i64, j as i64), &ci * bj);
                }
            }
        }
        Ok(out)
    }

    /// Exact value at `(x0, y0)`.
    pub fn evaluate(&self, x0: &BigRational, y0: &BigRational) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            let px = rational_pow(x0, a)?;
            let py = rational_pow(y0, b)?;
            total += BigRational::from_integer(c.clone()) * px * py;
        }
        Ok(total)
    }

    pub fn display_with<'a>(&'a self, x: &'a str, y: &'a str) -> LaurentDisplay<'a> {
        LaurentDisplay { poly: self, x, y }
    }
}

fn rational_pow(base: &BigRational, e: i64) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if base.is_zero() {
        return if e < 0 {
            Err(Error::EvaluateAtZero)
        } else {
            Ok(BigRational::zero())
        };
    }
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= base;
    }
    Ok(if e < 0 { acc.recip() } else { acc })
}

fn binomial_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `sum_{k=0}^{n-2} a^k b^{n-2-k}`, the division-free form of
/// `(a^{n-1} - b^{n-1}) / (a - b)`. Zero for `n <= 1`.
pub fn geometric_sum(a: &BivariateLaurent, b: &BivariateLaurent, n: usize) -> BivariateLaurent {
    if n < 2 {
        return BivariateLaurent::zero();
    }
    let m = n - 2;
    // powers of b computed once, then a^k accumulated on the fly
    let mut b_pows = Vec::with_capacity(m + 1);
    b_pows.push(BivariateLaurent::one());
    for k in 1..=m {
        let next = &b_pows[k - 1] * b;
        b_pows.push(next);
    }
    let mut a_pow = BivariateLaurent::one();
    let mut out = BivariateLaurent::zero();
    for k in 0..=m {
        out += &a_pow * &b_pows[m - k];
        if k < m {
            a_pow = &a_pow * a;
        }
    }
    out
}

impl From<i64> for BivariateLaurent {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a BivariateLaurent> for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn add(self, rhs: &'a BivariateLaurent) -> BivariateLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&BivariateLaurent> for BivariateLaurent {
    fn add_assign(&mut self, rhs: &BivariateLaurent) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl AddAssign for BivariateLaurent {
    fn add_assign(&mut self, rhs: BivariateLaurent) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            for (e, c) in rhs.terms {
                self.add_term(e, c);
            }
        }
    }
}

impl Neg for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn neg(self) -> BivariateLaurent {
        BivariateLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl<'a> Sub<&'a BivariateLaurent> for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn sub(self, rhs: &'a BivariateLaurent) -> BivariateLaurent {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a BivariateLaurent> for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn mul(self, rhs: &'a BivariateLaurent) -> BivariateLaurent {
        let mut out = BivariateLaurent::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<BivariateLaurent> for BivariateLaurent {
            type Output = BivariateLaurent;
            fn $m(self, rhs: BivariateLaurent) -> BivariateLaurent {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a BivariateLaurent> for BivariateLaurent {
            type Output = BivariateLaurent;
            fn $m(self, rhs: &'a BivariateLaurent) -> BivariateLaurent {
                (&self).$m(rhs)
            }
        }
        impl $tr<BivariateLaurent> for &BivariateLaurent {
            type Output = BivariateLaurent;
            fn $m(self, rhs: BivariateLaurent) -> BivariateLaurent {
                self.$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for BivariateLaurent {
    type Output = BivariateLaurent;
    fn neg(mut self) -> BivariateLaurent {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sum for BivariateLaurent {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

/// Human form, terms from highest to lowest exponent, e.g. `x^3*y - x^2`.
pub struct LaurentDisplay<'a> {
    poly: &'a BivariateLaurent,
    x: &'a str,
    y: &'a str,
}

impl fmt::Display for LaurentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            for (var, e) in [(self.x, a), (self.y, b)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for BivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("x", "y").fmt(f)
    }
}

impl fmt::Debug for BivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTermJson {
    pub x: i64,
    pub y: i64,
    pub c: String,
}

/// Wire form: `{"terms":[{"x":a,"y":b,"c":"<decimal>"}]}` in canonical order.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub terms: Vec<PolyTermJson>,
}

impl From<BivariateLaurent> for PolyJson {
    fn from(p: BivariateLaurent) -> Self {
        PolyJson {
            terms: p
                .terms
                .into_iter()
                .map(|((x, y), c)| PolyTermJson {
                    x,
                    y,
                    c: c.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for BivariateLaurent {
    type Error = String;

    fn try_from(raw: PolyJson) -> std::result::Result<Self, String> {
        let mut p = Self::zero();
        for t in raw.terms {
            let c: BigInt = t
                .c
                .parse()
                .map_err(|e| format!("bad coefficient {:?}: {e}", t.c))?;
            p.add_term((t.x, t.y), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = BivariateLaurent;

    fn x() -> P {
        P::x()
    }

    fn y() -> P {
        P::y()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arith_examples() {
        let one = P::one();
        assert_eq!((&x() - &one) * (&x() + &one), &x().pow(2).unwrap() - &one);
        let m = -(x().inverse().unwrap());
        assert_eq!(m.pow(2).unwrap(), P::monomial(1, -2, 0));
        let p = &x() * &y() - P::constant(7);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn negative_power_needs_unit() {
        assert_eq!((x() + P::one()).pow(-1), Err(Error::NonUnitPower));
        assert_eq!(P::monomial(2, 1, 0).pow(-1), Err(Error::NonUnitPower));
        assert_eq!(P::monomial(-1, 1, 2).pow(-3).unwrap(), P::monomial(-1, -3, -6));
        assert_eq!(P::zero().pow(0).unwrap(), P::one());
    }

    #[test]
    fn substitute_examples() {
        let t1 = P::from_terms([(0, 0, 1), (1, 0, 1)]); // 1 + t
        let w1 = P::from_terms([(0, 0, 1), (0, 1, 1)]); // 1 + w
        let p = P::from_terms([(3, 1, 1), (2, 0, -1)]);
        let want = &t1.pow(3).unwrap() * &w1 - t1.pow(2).unwrap();
        assert_eq!(p.substitute_shift().unwrap(), want);
        assert_eq!(P::one().substitute_shift().unwrap(), P::one());
        // xy - 1 -> t + w + tw
        let xy1 = &x() * &y() - P::one();
        assert_eq!(
            xy1.substitute_shift().unwrap(),
            P::from_terms([(1, 0, 1), (0, 1, 1), (1, 1, 1)])
        );
        assert_eq!(
            P::monomial(1, -1, 0).substitute_shift(),
            Err(Error::NegativeExponent(-1, 0))
        );
    }

    #[test]
    fn evaluate_examples() {
        let p = &x() * &y() - P::one();
        assert_eq!(p.evaluate(&rat(2, 1), &rat(3, 1)).unwrap(), rat(5, 1));
        assert_eq!(
            P::monomial(1, -1, 0).evaluate(&rat(2, 1), &rat(0, 1)).unwrap(),
            rat(1, 2)
        );
        let l = x();
        let chrom = &(&l * &(&l - &P::one())) * &(&l - &P::constant(2));
        assert_eq!(chrom.evaluate(&rat(3, 1), &rat(0, 1)).unwrap(), rat(6, 1));
        assert_eq!(
            P::monomial(1, 0, -1).evaluate(&rat(1, 1), &rat(0, 1)),
            Err(Error::EvaluateAtZero)
        );
    }

    #[test]
    fn geometric_sum_examples() {
        let (a, b) = (P::monomial(3, 1, 2), P::monomial(-1, 0, 5));
        assert_eq!(geometric_sum(&a, &b, 1), P::zero());
        assert_eq!(geometric_sum(&a, &b, 2), P::one());
        assert_eq!(geometric_sum(&a, &b, 3), &a + &b);
        assert_eq!(
            geometric_sum(&x(), &P::constant(2), 4),
            P::from_terms([(2, 0, 1), (1, 0, 2), (0, 0, 4)])
        );
    }

    #[test]
    fn display_form() {
        let p = P::from_terms([(3, 1, 1), (2, 0, -1)]);
        assert_eq!(p.to_string(), "x^3*y - x^2");
        assert_eq!((&x() * &y() - P::one()).to_string(), "x*y - 1");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::from_terms([(-1, 0, -2), (0, 0, 3)]).to_string(), "3 - 2*x^-1");
        assert_eq!(
            P::from_terms([(1, 1, 3), (0, 1, 1)]).display_with("t", "w").to_string(),
            "3*t*w + w"
        );
    }

    #[test]
    fn json_is_canonical() {
        let p = P::from_terms([(3, 1, 1), (2, 0, -1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"x":2,"y":0,"c":"-1"},{"x":3,"y":1,"c":"1"}]}"#
        );
        let back: P = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<P>(r#"{"terms":[{"x":0,"y":0,"c":"1.5"}]}"#).is_err());
    }

    fn small_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-3i64..4, -3i64..4, -5i64..6), 0..5).prop_map(P::from_terms)
    }

    fn small_nonneg_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((0i64..4, 0i64..4, -5i64..6), 0..5).prop_map(P::from_terms)
    }

    fn unit() -> impl Strategy<Value = P> {
        (-3i64..4, -3i64..4, prop::bool::ANY)
            .prop_map(|(a, b, neg)| P::monomial(if neg { -1 } else { 1 }, a, b))
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) - &q, p.clone());
            prop_assert!(p.terms().all(|(_, c)| !c.is_zero()));
        }

        #[test]
        fn geometric_sum_telescopes(a in unit(), b in unit(), n in 1usize..7) {
            let lhs = &(&a - &b) * &geometric_sum(&a, &b, n);
            let e = n as i64 - 1;
            prop_assert_eq!(lhs, &a.pow(e).unwrap() - &b.pow(e).unwrap());
        }

        #[test]
        fn shift_is_multiplicative(p in small_nonneg_poly(), q in small_nonneg_poly()) {
            let lhs = (&p * &q).substitute_shift().unwrap();
            let rhs = &p.substitute_shift().unwrap() * &q.substitute_shift().unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn json_round_trip(p in small_poly()) {
            let s = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<P>(&s).unwrap(), p);
        }
    }
}
