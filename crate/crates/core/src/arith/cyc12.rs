use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{rat_int, Rational};
use crate::error::{Error, Result};

/// An element `c0 + c1 z + c2 z^2 + c3 z^3` of Q(z), `z = exp(2 pi i / 12)`.
///
/// Coordinates are kept in the power basis reduced by `z^4 = z^2 - 1`, so two
/// equal field elements always have identical coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc12 {
    coords: [Rational; 4],
}

impl Cyc12 {
    pub fn new(coords: [Rational; 4]) -> Self {
        Cyc12 { coords }
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyc12 {
            coords: [q, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    /// `z^k` for any integer `k`; only `k mod 12` matters.
    pub fn root(k: i64) -> Self {
        let k = k.rem_euclid(12);
        // z^(k+6) = -z^k, and z^0..z^5 have short closed forms.
        let (base, negate) = if k >= 6 { (k - 6, true) } else { (k, false) };
        let c: [i64; 4] = match base {
            0 => [1, 0, 0, 0],
            1 => [0, 1, 0, 0],
            2 => [0, 0, 1, 0],
            3 => [0, 0, 0, 1],
            4 => [-1, 0, 1, 0],
            5 => [0, -1, 0, 1],
            _ => unreachable!(),
        };
        let sign = if negate { -1 } else { 1 };
        Cyc12 {
            coords: c.map(|v| rat_int(sign * v)),
        }
    }

    /// The imaginary unit, `z^3`.
    pub fn i() -> Self {
        Self::root(3)
    }

    /// `exp(2 pi i / 6) = z^2`.
    pub fn xi() -> Self {
        Self::root(2)
    }

    /// `exp(2 pi i / 3) = z^4`.
    pub fn zeta() -> Self {
        Self::root(4)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyc12 {
            coords: [
                &self.coords[0] * q,
                &self.coords[1] * q,
                &self.coords[2] * q,
                &self.coords[3] * q,
            ],
        }
    }

    /// Image under the field automorphism `z -> z^e` (`e` coprime to 12).
    fn conjugate(&self, e: i64) -> Self {
        let mut out = Cyc12::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                out += Cyc12::root(e * i as i64).scale(c);
            }
        }
        out
    }

    /// Multiplicative inverse via the product of the three nontrivial Galois
    /// conjugates; `x * conj = N(x)` is rational.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let conj = &(&self.conjugate(5) * &self.conjugate(7)) * &self.conjugate(11);
        let norm = self * &conj;
        debug_assert!(norm.coords[1..].iter().all(Zero::is_zero));
        let inv_norm = norm.coords[0].recip();
        Ok(conj.scale(&inv_norm))
    }

    /// Integer power; negative exponents go through [`Cyc12::inverse`].
    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Cyc12::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The value as an integer, or `None` if it is not a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coords[1..].iter().any(|c| !c.is_zero()) || !self.coords[0].is_integer() {
            return None;
        }
        Some(self.coords[0].to_integer())
    }

    /// The value as a rational, or `None` if it is irrational.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }
}

impl Zero for Cyc12 {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        Cyc12::is_zero(self)
    }
}

impl One for Cyc12 {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl<'a> Add<&'a Cyc12> for &'a Cyc12 {
    type Output = Cyc12;
    fn add(self, rhs: &Cyc12) -> Cyc12 {
        Cyc12 {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
        }
    }
}

impl<'a> Sub<&'a Cyc12> for &'a Cyc12 {
    type Output = Cyc12;
    fn sub(self, rhs: &Cyc12) -> Cyc12 {
        Cyc12 {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
        }
    }
}

impl<'a> Mul<&'a Cyc12> for &'a Cyc12 {
    type Output = Cyc12;
    fn mul(self, rhs: &Cyc12) -> Cyc12 {
        let mut raw: [Rational; 7] = std::array::from_fn(|_| Rational::zero());
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        // z^k = z^(k-2) - z^(k-4) for k >= 4
        for k in (4..7).rev() {
            let c = std::mem::take(&mut raw[k]);
            if !c.is_zero() {
                raw[k - 2] += &c;
                raw[k - 4] -= c;
            }
        }
        let [c0, c1, c2, c3, ..] = raw;
        Cyc12 {
            coords: [c0, c1, c2, c3],
        }
    }
}

impl Neg for &Cyc12 {
    type Output = Cyc12;
    fn neg(self) -> Cyc12 {
        Cyc12 {
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Cyc12> for Cyc12 {
            type Output = Cyc12;
            fn $method(self, rhs: Cyc12) -> Cyc12 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyc12> for Cyc12 {
            type Output = Cyc12;
            fn $method(self, rhs: &Cyc12) -> Cyc12 {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyc12 {
    type Output = Cyc12;
    fn neg(self) -> Cyc12 {
        -&self
    }
}

impl AddAssign<&Cyc12> for Cyc12 {
    fn add_assign(&mut self, rhs: &Cyc12) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl AddAssign for Cyc12 {
    fn add_assign(&mut self, rhs: Cyc12) {
        *self += &rhs;
    }
}

impl SubAssign<&Cyc12> for Cyc12 {
    fn sub_assign(&mut self, rhs: &Cyc12) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl MulAssign<&Cyc12> for Cyc12 {
    fn mul_assign(&mut self, rhs: &Cyc12) {
        *self = &*self * rhs;
    }
}

impl fmt::Debug for Cyc12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc12({})", self)
    }
}

impl fmt::Display for Cyc12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})z", c)?,
                _ => write!(f, "({})z^{}", c, i)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
