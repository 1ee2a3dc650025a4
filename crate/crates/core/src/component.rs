//! Components of the character variety of SL2(Z): parity plus eigenvalue
//! multiplicities of rho(S) and rho(R), and the trace data they determine.
//!
//! Parity is read as rho(S^2) = +I (even) or -I (odd). For odd
//! representations rho(S) has eigenvalues +-i and rho(R) has eigenvalues
//! -1, -zeta, -zeta^2, because S^2 = R^3 = -I.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::Cyc12;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// 0 for even, 1 for odd.
    pub fn residue(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn matches(self, k: i64) -> bool {
        k.rem_euclid(2) == self.residue()
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::InvalidArgument(format!("parity must be even or odd, got {s:?}"))),
        }
    }
}

/// `(parity; a, b; x, y, z)` with `a + b = x + y + z = d`.
///
/// `a`, `b` count the eigenvalues `1, -1` of rho(S) (`i, -i` when odd);
/// `x`, `y`, `z` count `1, zeta, zeta^2` of rho(R) (negated when odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComponentParams {
    pub parity: Parity,
    pub s_mults: (u32, u32),
    pub r_mults: (u32, u32, u32),
}

impl ComponentParams {
    pub fn new(parity: Parity, s_mults: (u32, u32), r_mults: (u32, u32, u32)) -> Result<Self> {
        let p = ComponentParams {
            parity,
            s_mults,
            r_mults,
        };
        if s_mults.0 + s_mults.1 != r_mults.0 + r_mults.1 + r_mults.2 {
            return Err(Error::InvalidArgument(format!(
                "multiplicities disagree: a+b = {} but x+y+z = {}",
                s_mults.0 + s_mults.1,
                r_mults.0 + r_mults.1 + r_mults.2
            )));
        }
        if p.dimension() == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Ok(p)
    }

    pub fn dimension(&self) -> u32 {
        self.s_mults.0 + self.s_mults.1
    }

    /// Exponent `m` with `det rho(S) = z^m`, `z = exp(2 pi i / 12)`.
    fn det_s_exponent(&self) -> i64 {
        let (a, b) = (self.s_mults.0 as i64, self.s_mults.1 as i64);
        match self.parity {
            Parity::Even => 6 * b,
            Parity::Odd => 3 * a + 9 * b,
        }
    }

    /// Exponent `m` with `det rho(R) = z^m`.
    fn det_r_exponent(&self) -> i64 {
        let (x, y, z) = (
            self.r_mults.0 as i64,
            self.r_mults.1 as i64,
            self.r_mults.2 as i64,
        );
        match self.parity {
            Parity::Even => 4 * y + 8 * z,
            Parity::Odd => 6 * x + 10 * y + 2 * z,
        }
    }

    pub fn det_s(&self) -> Cyc12 {
        Cyc12::root(self.det_s_exponent())
    }

    pub fn det_r(&self) -> Cyc12 {
        Cyc12::root(self.det_r_exponent())
    }
}

impl fmt::Display for ComponentParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({},{};{},{},{})",
            self.parity, self.s_mults.0, self.s_mults.1, self.r_mults.0, self.r_mults.1, self.r_mults.2
        )
    }
}

/// Traces of rho(S), rho(R), rho(R^2) and the integer `12 Tr(L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceData {
    pub s: Cyc12,
    pub r1: Cyc12,
    pub r2: Cyc12,
    pub twelve_trl: i64,
}

/// Every component in dimension `d`, both parities, ordered by
/// `(parity, a, x, y)`.
pub fn enumerate_components(d: u32) -> Vec<ComponentParams> {
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for a in 0..=d {
            for x in 0..=d {
                for y in 0..=(d - x) {
                    out.push(ComponentParams {
                        parity,
                        s_mults: (a, d - a),
                        r_mults: (x, y, d - x - y),
                    });
                }
            }
        }
    }
    out
}

/// `(Tr rho(S), Tr rho(R), Tr rho(R^2))`.
pub fn traces_of(p: &ComponentParams) -> (Cyc12, Cyc12, Cyc12) {
    let (a, b) = (p.s_mults.0 as i64, p.s_mults.1 as i64);
    let (x, y, z) = (p.r_mults.0 as i64, p.r_mults.1 as i64, p.r_mults.2 as i64);
    let zeta = Cyc12::zeta();
    let zeta2 = Cyc12::root(8);
    let cube_sum = |u: i64, v: i64, w: i64| -> Cyc12 {
        &(&Cyc12::from_int(u) + &zeta.scale(&crate::arith::rat_int(v)))
            + &zeta2.scale(&crate::arith::rat_int(w))
    };
    // R^2 has eigenvalues 1, zeta^2, zeta in both parities ((-w)^2 = w^2).
    let r2 = cube_sum(x, z, y);
    match p.parity {
        Parity::Even => (Cyc12::from_int(a - b), cube_sum(x, y, z), r2),
        Parity::Odd => (
            Cyc12::i().scale(&crate::arith::rat_int(a - b)),
            -cube_sum(x, y, z),
            r2,
        ),
    }
}

/// The `d` admissible values of `12 Tr(L)` on a component: `m, m+12, ...`,
/// where `z^m = det rho(T) = det rho(R) / det rho(S)`.
pub fn trace_l_candidates(p: &ComponentParams) -> Vec<i64> {
    let m = (p.det_r_exponent() - p.det_s_exponent()).rem_euclid(12);
    debug_assert_eq!(
        &Cyc12::root(m) * &p.det_s(),
        p.det_r(),
        "determinant ratio must be a 12th root of unity"
    );
    (0..p.dimension() as i64).map(|j| m + 12 * j).collect()
}

/// Trace data for one component and one choice of `12 Tr(L)`.
pub fn trace_data(p: &ComponentParams, twelve_trl: i64) -> TraceData {
    let (s, r1, r2) = traces_of(p);
    TraceData {
        s,
        r1,
        r2,
        twelve_trl,
    }
}
