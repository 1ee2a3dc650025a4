//! Truncated q-expansions of the level-one Eisenstein series with exact
//! rational coefficients. This is an independent check on the symbolic
//! derivation in [`crate::graded`]: mapping E4 and E6 to their expansions
//! must intertwine the two derivatives.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::arith::{rat, rat_int, Rational};
use crate::graded::GradedPoly;

/// Default number of terms kept by the oracle.
pub const DEFAULT_TERMS: usize = 50;

/// Coefficients of `q^0 .. q^(N-1)`. Binary operations truncate to the
/// shorter operand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        QSeries { coeffs }
    }

    pub fn zero(n_terms: usize) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); n_terms],
        }
    }

    pub fn constant(c: Rational, n_terms: usize) -> Self {
        let mut s = Self::zero(n_terms);
        if let Some(first) = s.coeffs.first_mut() {
            *first = c;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, n: usize) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().take(n).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `q d/dq`.
    pub fn theta(&self) -> QSeries {
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * rat_int(n as i64))
                .collect(),
        }
    }

    /// Truncated quotient; `None` if the divisor has zero constant term.
    pub fn div(&self, rhs: &QSeries) -> Option<QSeries> {
        let n = self.truncation().min(rhs.truncation());
        let lead = rhs.coeffs.first()?;
        if lead.is_zero() {
            return None;
        }
        let inv_lead = lead.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for (j, o) in out.iter().enumerate() {
                let r = &rhs.coeffs[k - j];
                if !r.is_zero() {
                    acc -= o * r;
                }
            }
            out.push(acc * &inv_lead);
        }
        Some(QSeries { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let one = QSeries::constant(Rational::one(), self.truncation());
        (0..e).fold(one, |acc, _| &acc * self)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.truncation().min(rhs.truncation());
        let mut out = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        QSeries { coeffs: out }
    }
}

fn divisor_power_sum(n: u64, p: u32) -> i64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| d.pow(p) as i64)
        .sum()
}

fn eisenstein(n_terms: usize, scale: i64, p: u32) -> QSeries {
    QSeries {
        coeffs: (0..n_terms)
            .map(|n| {
                if n == 0 {
                    Rational::one()
                } else {
                    rat_int(scale * divisor_power_sum(n as u64, p))
                }
            })
            .collect(),
    }
}

/// `E4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_e4(n_terms: usize) -> QSeries {
    eisenstein(n_terms, 240, 3)
}

/// `E6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein_e6(n_terms: usize) -> QSeries {
    eisenstein(n_terms, -504, 5)
}

/// `E2 = 1 - 24 sum sigma_1(n) q^n`.
pub fn eisenstein_e2(n_terms: usize) -> QSeries {
    eisenstein(n_terms, -24, 1)
}

/// `E2` recovered from `E4` and `E6` alone: `(3 q dE4/dq + E6) / E4`.
pub fn derive_e2(n_terms: usize) -> QSeries {
    let e4 = eisenstein_e4(n_terms);
    let e6 = eisenstein_e6(n_terms);
    let num = &e4.theta().scale(&rat_int(3)) + &e6;
    num.div(&e4).expect("E4 has constant term 1")
}

/// `q df/dq - (k/12) E2 f`, at the truncation of `f`.
pub fn serre_derivative(f: &QSeries, k: i64) -> QSeries {
    let e2 = eisenstein_e2(f.truncation());
    &f.theta() - &(&e2 * f).scale(&rat(k, 12))
}

/// Substitutes the q-expansions of E4 and E6.
pub fn graded_to_qseries(x: &GradedPoly, n_terms: usize) -> QSeries {
    let e4 = eisenstein_e4(n_terms);
    let e6 = eisenstein_e6(n_terms);
    let mut e4_pows = vec![QSeries::constant(Rational::one(), n_terms)];
    let mut e6_pows = vec![QSeries::constant(Rational::one(), n_terms)];
    let mut out = QSeries::zero(n_terms);
    for (m, c) in x.terms() {
        while e4_pows.len() <= m.e4 as usize {
            let next = e4_pows.last().unwrap() * &e4;
            e4_pows.push(next);
        }
        while e6_pows.len() <= m.e6 as usize {
            let next = e6_pows.last().unwrap() * &e6;
            e6_pows.push(next);
        }
        let term = &e4_pows[m.e4 as usize] * &e6_pows[m.e6 as usize];
        out = &out + &term.scale(c);
    }
    out
}

/// Result of one named identity in the oracle suite.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// The derivation identities checked by `qcheck`.
pub fn identity_suite(n_terms: usize) -> Vec<IdentityCheck> {
    let e4 = eisenstein_e4(n_terms);
    let e6 = eisenstein_e6(n_terms);
    let e2 = eisenstein_e2(n_terms);
    let one = QSeries::constant(Rational::one(), n_terms);
    vec![
        IdentityCheck {
            name: "E4 and E6 have constant term 1",
            passed: e4.coeffs()[0].is_one() && e6.coeffs()[0].is_one(),
        },
        IdentityCheck {
            name: "D(E4) = -E6/3",
            passed: serre_derivative(&e4, 4) == e6.scale(&rat(-1, 3)),
        },
        IdentityCheck {
            name: "D(E6) = -E4^2/2",
            passed: serre_derivative(&e6, 6) == (&e4 * &e4).scale(&rat(-1, 2)),
        },
        IdentityCheck {
            name: "E2 = (3 q dE4/dq + E6)/E4",
            passed: e2 == derive_e2(n_terms),
        },
        IdentityCheck {
            name: "D(1) = 0 in weight 0",
            passed: serre_derivative(&one, 0) == QSeries::zero(n_terms),
        },
        IdentityCheck {
            name: "D(E4 E6) matches the graded derivation",
            passed: {
                let x = &GradedPoly::e4() * &GradedPoly::e6();
                let lhs = graded_to_qseries(&x.serre_derive().expect("homogeneous"), n_terms);
                lhs == serre_derivative(&(&e4 * &e6), 10)
            },
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: usize) -> Vec<i64> {
        s.coeffs()
            .iter()
            .take(n)
            .map(|c| crate::arith::rational_to_i64(c).unwrap())
            .collect()
    }

    #[test]
    fn eisenstein_leading_coefficients() {
        assert_eq!(ints(&eisenstein_e4(10), 3), vec![1, 240, 2160]);
        assert_eq!(ints(&eisenstein_e6(10), 3), vec![1, -504, -16632]);
    }

    #[test]
    fn e2_leading_coefficients() {
        assert_eq!(ints(&derive_e2(10), 4), vec![1, -24, -72, -96]);
        assert_eq!(ints(&eisenstein_e2(10), 4), vec![1, -24, -72, -96]);
        assert_eq!(ints(&derive_e2(1), 1), vec![1]);
    }

    #[test]
    fn e2_also_satisfies_e6_identity() {
        let n = 30;
        let e4 = eisenstein_e4(n);
        let e6 = eisenstein_e6(n);
        let lhs = &e6.theta() - &(&eisenstein_e2(n) * &e6).scale(&rat(1, 2));
        assert_eq!(lhs, (&e4 * &e4).scale(&rat(-1, 2)));
    }

    #[test]
    fn derivatives_at_fifty_terms() {
        for c in identity_suite(DEFAULT_TERMS) {
            assert!(c.passed, "{}", c.name);
        }
    }

    #[test]
    fn graded_bridge() {
        let n = 12;
        assert_eq!(graded_to_qseries(&GradedPoly::e4(), n), eisenstein_e4(n));
        let prod = graded_to_qseries(&(&GradedPoly::e4() * &GradedPoly::e6()), n);
        assert_eq!(prod, &eisenstein_e4(n) * &eisenstein_e6(n));
        assert_eq!(graded_to_qseries(&GradedPoly::zero(), n), QSeries::zero(n));
    }

    #[test]
    fn mixed_truncations_use_the_shorter() {
        let a = eisenstein_e4(5);
        let b = eisenstein_e4(8);
        assert_eq!((&a * &b).truncation(), 5);
        assert_eq!((&a + &b).truncation(), 5);
    }
}
