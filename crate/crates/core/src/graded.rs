//! The graded ring Q[E4, E6] (weights 4 and 6) and its modular derivation
//! `D(E4) = -E6/3`, `D(E6) = -E4^2/2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

/// `E4^e4 * E6^e6`. Ordered by E6 exponent first, then E4 exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub e6: u32,
    pub e4: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e6: 0, e4: 0 };

    pub fn new(e4: u32, e6: u32) -> Self {
        Monomial { e6, e4 }
    }

    pub fn weight(&self) -> i64 {
        4 * self.e4 as i64 + 6 * self.e6 as i64
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.e4 + other.e4, self.e6 + other.e6)
    }
}

/// All monomials of weight `k`, by ascending E6 exponent.
pub fn weight_basis(k: i64) -> Vec<Monomial> {
    if k < 0 || k % 2 != 0 {
        return Vec::new();
    }
    (0..=k / 6)
        .filter(|b| (k - 6 * b) % 4 == 0)
        .map(|b| Monomial::new(((k - 6 * b) / 4) as u32, b as u32))
        .collect()
}

/// Largest E6 exponent of a monomial of weight `k`, if `M_k` is nonzero.
pub fn natural_e6_cap(k: i64) -> Option<u32> {
    weight_basis(k).last().map(|m| m.e6)
}

/// An element of Q[E4, E6], optionally tagged with a declared weight.
///
/// Zero coefficients are never stored. When a weight is declared every
/// term has that weight.
#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(into = "Vec<TermRepr>", try_from = "Vec<TermRepr>")]
pub struct GradedPoly {
    terms: BTreeMap<Monomial, Rational>,
    weight: Option<i64>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    /// The zero element of `M_k`.
    pub fn zero_of_weight(k: i64) -> Self {
        GradedPoly {
            terms: BTreeMap::new(),
            weight: Some(k),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn e4() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn e6() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn monomial(c: Rational, e4: u32, e6: u32) -> Self {
        let m = Monomial::new(e4, e6);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        GradedPoly {
            terms,
            weight: Some(m.weight()),
        }
    }

    /// Builds from `(monomial, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut out = GradedPoly::zero();
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out.weight = out.inferred_weight();
        out
    }

    /// Declares the weight. Fails if some term has a different weight.
    pub fn with_weight(mut self, k: i64) -> Result<Self> {
        if let Some(m) = self.terms.keys().find(|m| m.weight() != k) {
            return Err(Error::WeightMismatch {
                expected: k,
                found: m.weight(),
            });
        }
        self.weight = Some(k);
        Ok(self)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    fn inferred_weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Declared weight, else the common weight of the terms if homogeneous.
    pub fn weight(&self) -> Option<i64> {
        self.weight.or_else(|| self.inferred_weight())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.is_empty() || self.inferred_weight().is_some()
    }

    /// Largest E6 exponent among the terms; `None` stands for minus infinity
    /// (the zero polynomial).
    pub fn e6_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.e6).max()
    }

    /// The term of largest E6 exponent.
    pub fn top_term(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    /// Coefficient when the polynomial is `c * E4^e` (or zero); `None` if it
    /// involves E6 or several monomials.
    pub fn as_pure_e4(&self) -> Option<(Rational, u32)> {
        match self.terms.len() {
            0 => Some((Rational::zero(), 0)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.e6 == 0).then(|| (c.clone(), m.e4))
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly {
                terms: BTreeMap::new(),
                weight: self.weight(),
            };
        }
        GradedPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
            weight: self.weight,
        }
    }

    pub fn pow(&self, n: u32) -> GradedPoly {
        (0..n).fold(GradedPoly::one(), |acc, _| &acc * self)
    }

    /// Applies the modular derivation. The input must be homogeneous (or
    /// carry a declared weight); the result has weight `wt + 2`.
    pub fn serre_derive(&self) -> Result<GradedPoly> {
        let k = self.weight().ok_or(Error::NotHomogeneous)?;
        let mut out = GradedPoly::zero_of_weight(k + 2);
        for (m, c) in &self.terms {
            if m.e4 > 0 {
                let coef = -(c * rat(m.e4 as i64, 3));
                out.add_term(Monomial::new(m.e4 - 1, m.e6 + 1), &coef);
            }
            if m.e6 > 0 {
                let coef = -(c * rat(m.e6 as i64, 2));
                out.add_term(Monomial::new(m.e4 + 2, m.e6 - 1), &coef);
            }
        }
        Ok(out)
    }

    fn combine_weight(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) if x == y => Some(x),
            (Some(x), None) | (None, Some(x)) => Some(x),
            _ => None,
        }
    }
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out.weight = GradedPoly::combine_weight(self.weight(), rhs.weight());
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self + &(-rhs)
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            weight: self.weight,
        }
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(*mb), &(ca * cb));
            }
        }
        out.weight = match (self.weight(), rhs.weight()) {
            (Some(a), Some(b)) => Some(a + b),
            _ => out.inferred_weight(),
        };
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for GradedPoly {
            type Output = GradedPoly;
            fn $method(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPoly[{}]", self)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mono = match (m.e4, m.e6) {
                (0, 0) => String::new(),
                (x, 0) => power("E4", x),
                (0, y) => power("E6", y),
                (x, y) => format!("{}*{}", power("E4", x), power("E6", y)),
            };
            if mono.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", a, mono)?;
            }
        }
        Ok(())
    }
}

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{}^{}", name, e)
    }
}

/// JSON-friendly integer: a plain number when it fits in `i64`, otherwise a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BigIntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for BigIntRepr {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => BigIntRepr::Small(v),
            None => BigIntRepr::Big(n.to_string()),
        }
    }
}

impl TryFrom<&BigIntRepr> for BigInt {
    type Error = String;
    fn try_from(r: &BigIntRepr) -> std::result::Result<BigInt, String> {
        match r {
            BigIntRepr::Small(v) => Ok(BigInt::from(*v)),
            BigIntRepr::Big(s) => s.parse().map_err(|_| format!("bad integer {:?}", s)),
        }
    }
}

/// `[e4_exp, e6_exp, numerator, denominator]`.
pub type TermRepr = (u32, u32, BigIntRepr, BigIntRepr);

impl From<GradedPoly> for Vec<TermRepr> {
    fn from(p: GradedPoly) -> Self {
        p.terms
            .iter()
            .map(|(m, c)| (m.e4, m.e6, c.numer().into(), c.denom().into()))
            .collect()
    }
}

impl TryFrom<Vec<TermRepr>> for GradedPoly {
    type Error = String;
    fn try_from(v: Vec<TermRepr>) -> std::result::Result<Self, String> {
        let mut terms = Vec::with_capacity(v.len());
        for (e4, e6, n, d) in &v {
            let n = BigInt::try_from(n)?;
            let d = BigInt::try_from(d)?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            terms.push((Monomial::new(*e4, *e6), Rational::new(n, d)));
        }
        Ok(GradedPoly::from_terms(terms))
    }
}
