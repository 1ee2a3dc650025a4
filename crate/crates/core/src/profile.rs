//! Weight profiles and the filters and combinators acting on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{rat, rat_int, IntPoly};

/// A sorted list of generator weights `k_1 <= ... <= k_d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Profile {
    weights: Vec<i64>,
}

impl Profile {
    pub fn new(mut weights: Vec<i64>) -> Self {
        weights.sort_unstable();
        Profile { weights }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.weights.first().copied()
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.weights.last().copied()
    }

    /// `(0, k_2 - k_1, ..., k_d - k_1)`.
    pub fn type_tuple(&self) -> Vec<i64> {
        let k1 = self.min_weight().unwrap_or(0);
        self.weights.iter().map(|k| k - k1).collect()
    }

    /// Distinct weights in increasing order.
    pub fn distinct_weights(&self) -> Vec<i64> {
        let mut w = self.weights.clone();
        w.dedup();
        w
    }

    /// Multiplicities of the distinct weights, in increasing weight order.
    pub fn mults(&self) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        let mut prev = None;
        for &k in &self.weights {
            if prev == Some(k) {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
                prev = Some(k);
            }
        }
        out
    }

    pub fn same_parity(&self) -> bool {
        self.weights
            .windows(2)
            .all(|w| (w[1] - w[0]).rem_euclid(2) == 0)
    }

    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// `a_j = dim S_{2 - l_j}(rho^vee)`, aligned with the middle range.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AVector {
    pub values: Vec<u32>,
}

impl AVector {
    pub fn new(values: Vec<u32>) -> Self {
        AVector { values }
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Read a profile off a weight generating polynomial `W(T) = T^offset * poly`.
/// Returns `None` if a coefficient is negative or the total is not `d`.
pub fn profile_from_poly(w: &IntPoly, offset: i64, d: u32) -> Option<Profile> {
    let mut weights = Vec::with_capacity(d as usize);
    for (i, &c) in w.coeffs().iter().enumerate() {
        if c < 0 {
            return None;
        }
        for _ in 0..c {
            weights.push(offset + i as i64);
        }
    }
    (weights.len() == d as usize).then(|| Profile::new(weights))
}

pub fn filter_no_gap(p: &Profile) -> bool {
    p.distinct_weights().windows(2).all(|w| w[1] - w[0] == 2)
}

pub fn filter_mult_bounds(mults: &[u32]) -> bool {
    let r = mults.len() as i64;
    let m = |i: i64| -> u32 {
        if (1..=r).contains(&i) {
            mults[(i - 1) as usize]
        } else {
            0
        }
    };
    (1..=r).all(|j| {
        let down: u32 = (0..).map(|t| j + 1 - 2 * t).take_while(|&i| i >= 1).map(m).sum();
        let up: u32 = (0..).map(|t| j - 1 + 2 * t).take_while(|&i| i <= r).map(m).sum();
        m(j) <= down && m(j) <= up
    })
}

pub fn filter_weight_bounds(p: &Profile, d: u32, twelve_trl: i64) -> bool {
    let (Some(lo), Some(hi)) = (p.min_weight(), p.max_weight()) else {
        return false;
    };
    let base = rat(twelve_trl, d as i64);
    &base + rat_int(1 - d as i64) <= rat_int(lo) && rat_int(hi) <= &base + rat_int(d as i64 - 1)
}

pub fn weight_sum_check(p: &Profile, twelve_trl: i64) -> bool {
    p.weight_sum() == twelve_trl
}

/// Exactly two distinct weights only in dimension 2.
pub fn filter_two_weight(mults: &[u32], d: u32) -> bool {
    mults.len() != 2 || d == 2
}

/// A multiplicity of `d/2` only in dimension 2 or as the middle of `(m_1, d/2, m_3)`.
pub fn filter_half_dimension(mults: &[u32], d: u32) -> bool {
    if !d.is_multiple_of(2) || d == 2 {
        return true;
    }
    let half = d / 2;
    !mults.contains(&half) || (mults.len() == 3 && mults[1] == half)
}

/// `r <= 8e + 7` with `e = min_j(floor(d/2) - m_j)`.
pub fn filter_ell_bound(mults: &[u32], d: u32) -> bool {
    let half = (d / 2) as i64;
    let e = mults.iter().map(|&m| half - m as i64).min().unwrap_or(half);
    mults.len() as i64 <= 8 * e + 7
}

pub fn filter_advanced(mults: &[u32], d: u32) -> bool {
    filter_two_weight(mults, d) && filter_half_dimension(mults, d) && filter_ell_bound(mults, d)
}

pub fn is_cyclic_profile(mults: &[u32]) -> bool {
    mults.iter().all(|&m| m == 1)
}

pub fn unitary_weight_filter(p: &Profile) -> bool {
    matches!((p.min_weight(), p.max_weight()), (Some(lo), Some(hi)) if lo >= 1 && hi <= 11)
}

/// `(12 - k_d, ..., 12 - k_1)`.
pub fn dual_cuspidal_profile(p: &Profile) -> Profile {
    Profile::new(p.weights.iter().map(|k| 12 - k).collect())
}

/// Multiplicities after tensoring with the standard two-dimensional representation.
pub fn tensor_standard(mults: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(mults.len() + 1);
    let mut prev = 0;
    for &m in mults {
        out.push(prev + m);
        prev = m;
    }
    out.push(prev);
    out
}

/// Expand a multiplicity tuple into the gap-free profile starting at `k1`.
pub fn profile_from_mults(mults: &[u32], k1: i64) -> Profile {
    let mut weights = Vec::new();
    for (i, &m) in mults.iter().enumerate() {
        weights.extend(std::iter::repeat_n(k1 + 2 * i as i64, m as usize));
    }
    Profile::new(weights)
}
