use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::Cyc12;

/// Dense polynomial with `i64` coefficients, `coeffs[n]` multiplying `T^n`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> i64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// `P'(1)`.
    pub fn derivative_at_one(&self) -> i64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| n as i64 * c)
            .sum()
    }

    pub fn only_even_powers(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let a = c.abs();
            match (n, a) {
                (0, _) => write!(f, "{}", a)?,
                (1, 1) => write!(f, "T")?,
                (1, _) => write!(f, "{}T", a)?,
                (_, 1) => write!(f, "T^{}", n)?,
                _ => write!(f, "{}T^{}", a, n)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Dense polynomial with [`Cyc12`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycPoly {
    coeffs: Vec<Cyc12>,
}

impl CycPoly {
    pub fn new(mut coeffs: Vec<Cyc12>) -> Self {
        while coeffs.last().is_some_and(Cyc12::is_zero) {
            coeffs.pop();
        }
        CycPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Cyc12::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        CycPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Cyc12] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Cyc12 {
        self.coeffs.get(n).cloned().unwrap_or_else(Cyc12::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &CycPoly) -> CycPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        CycPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Cyc12) -> CycPoly {
        CycPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return CycPoly::zero();
        }
        let mut out = vec![Cyc12::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CycPoly::new(out)
    }

    /// Replace `T` by `T^k`.
    pub fn inflate(&self, k: usize) -> CycPoly {
        if self.coeffs.is_empty() {
            return CycPoly::zero();
        }
        let mut out = vec![Cyc12::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        CycPoly::new(out)
    }

    pub fn eval(&self, t: &Cyc12) -> Cyc12 {
        self.coeffs
            .iter()
            .rev()
            .fold(Cyc12::zero(), |acc, c| &(&acc * t) + c)
    }

    /// Converts to an integer polynomial; `Err(n)` names the first
    /// non-integral coefficient.
    pub fn to_int_poly(&self) -> Result<IntPoly, usize> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.as_integer().and_then(|v| v.to_i64()).ok_or(n))
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn int_poly_basics() {
        let p = IntPoly::new(vec![1, 0, 1, 0, 0]);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.eval(1), 2);
        assert_eq!(p.derivative_at_one(), 2);
        assert!(p.only_even_powers());
        assert_eq!(p.to_string(), "1 + T^2");
        assert_eq!(IntPoly::new(vec![0, 0]).degree(), None);
        assert_eq!(IntPoly::new(vec![0, -2, 0, 3]).to_string(), "-2T + 3T^3");
    }

    #[test]
    fn cyc_poly_product_matches_evaluation() {
        let a = CycPoly::new(vec![Cyc12::root(1), Cyc12::from_int(2), Cyc12::root(5)]);
        let b = CycPoly::new(vec![Cyc12::from_rational(rat(1, 3)), Cyc12::root(7)]);
        let ab = a.mul(&b);
        for t in [Cyc12::from_int(2), Cyc12::root(3), Cyc12::from_rational(rat(-5, 7))] {
            assert_eq!(ab.eval(&t), a.eval(&t) * b.eval(&t));
        }
    }

    #[test]
    fn integrality_gate() {
        let p = CycPoly::new(vec![Cyc12::from_int(1), Cyc12::zero(), Cyc12::root(2)]);
        assert_eq!(p.to_int_poly(), Err(2));
        let q = CycPoly::from_ints(&[2, 0, -1]);
        assert_eq!(q.to_int_poly(), Ok(IntPoly::new(vec![2, 0, -1])));
        assert_eq!(q.inflate(2).to_int_poly().unwrap().coeffs(), &[2, 0, 0, 0, -1]);
    }
}
