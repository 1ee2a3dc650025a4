//! Euler characteristics of the weight-k bundles attached to a component,
//! the numerator polynomial `P(T)`, and the dimension formulas for `M_k(rho)`.
//!
//! For trace data `(d, s, r1, r2, 12 Tr L)` the Euler characteristic in weight
//! `k` is the quasi-polynomial
//!
//! ```text
//! chi(k) = (5d - 12 Tr L)/12 + d k/12 + (s/4) i^k
//!        + r1 xi^k / (3(1 - zeta)) + r2 zeta^k / (3(1 - zeta^2))
//! ```
//!
//! and multiplying its generating function (from the base weight `l1`) by
//! `(1 - T^4)(1 - T^6)` gives `T^l1 P(T)` with `P` of degree at most 8.

use log::debug;

use crate::arith::{ceil_i64, floor_i64, rat, rat_int, Cyc12, CycPoly, IntPoly, Rational};
use crate::component::{trace_data, ComponentParams, Parity, TraceData};
use crate::error::{Error, Result};

/// Parity-matching weights in the middle range of the dimension formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleRange {
    /// `l_1 < ... < l_r`, consecutive entries differing by 2.
    pub ell_list: Vec<i64>,
    /// Series base point: the smallest parity-matching integer at or above
    /// the lower bound. Equals `ell_list[0]` when the list is nonempty.
    pub ell_one: i64,
    /// `12 Tr(L)/d + 1 - d`.
    pub lower: Rational,
    /// `12 Tr(L)/d + d - 11`.
    pub upper: Rational,
}

impl MiddleRange {
    pub fn r(&self) -> usize {
        self.ell_list.len()
    }
}

fn smallest_matching_at_least(q: &Rational, parity: Parity) -> i64 {
    let n = ceil_i64(q);
    if parity.matches(n) {
        n
    } else {
        n + 1
    }
}

pub fn middle_range(d: u32, twelve_trl: i64, parity: Parity) -> MiddleRange {
    let base = rat(twelve_trl, d as i64);
    let lower = &base + rat_int(1 - d as i64);
    let upper = &base + rat_int(d as i64 - 11);
    let ell_one = smallest_matching_at_least(&lower, parity);
    let top = floor_i64(&upper);
    let ell_list = (ell_one..=top).step_by(2).collect();
    MiddleRange {
        ell_list,
        ell_one,
        lower,
        upper,
    }
}

/// Everything needed to evaluate the Euler characteristic series.
#[derive(Clone, Debug)]
pub struct ChiContext {
    pub d: u32,
    pub traces: TraceData,
    pub ell_one: i64,
    c1: Cyc12,
    c2: Cyc12,
    c3: Cyc12,
    c4: Cyc12,
    c5: Rational,
}

impl ChiContext {
    pub fn new(d: u32, traces: TraceData, ell_one: i64) -> Result<Self> {
        let one = Cyc12::from_int(1);
        let three = rat_int(3);
        let c1 = Cyc12::from_rational(rat(5 * d as i64 - traces.twelve_trl, 12));
        let c2 = traces.s.scale(&rat(1, 4));
        let c3 = &traces.r1 * &(&one - &Cyc12::zeta()).scale(&three).inverse()?;
        let c4 = &traces.r2 * &(&one - &Cyc12::root(8)).scale(&three).inverse()?;
        let c5 = rat(d as i64, 12);
        Ok(ChiContext {
            d,
            traces,
            ell_one,
            c1,
            c2,
            c3,
            c4,
            c5,
        })
    }

    /// Context for a component and `12 Tr L`, with the standard base point.
    pub fn for_component(p: &ComponentParams, twelve_trl: i64) -> Result<(Self, MiddleRange)> {
        let d = p.dimension();
        let middle = middle_range(d, twelve_trl, p.parity);
        let ctx = ChiContext::new(d, trace_data(p, twelve_trl), middle.ell_one)?;
        Ok((ctx, middle))
    }

    /// The five constants `(c1, c2, c3, c4, c5)`.
    pub fn constants(&self) -> (&Cyc12, &Cyc12, &Cyc12, &Cyc12, &Rational) {
        (&self.c1, &self.c2, &self.c3, &self.c4, &self.c5)
    }

    fn chi_exact(&self, n: i64) -> Cyc12 {
        let l1 = self.ell_one;
        let mut acc = &self.c1 + &Cyc12::from_rational(&self.c5 * rat_int(l1 + 2 * n));
        acc += &self.c2 * &(&Cyc12::root(3 * l1) * &Cyc12::root(6 * n));
        acc += &self.c3 * &(&Cyc12::root(2 * l1) * &Cyc12::root(4 * n));
        acc += &self.c4 * &(&Cyc12::root(4 * l1) * &Cyc12::root(8 * n));
        acc
    }

    /// Euler characteristic at weight `k`, evaluated directly in `k` rather
    /// than through the series index.
    pub fn chi_at_weight_exact(&self, k: i64) -> Cyc12 {
        let mut acc = &self.c1 + &Cyc12::from_rational(&self.c5 * rat_int(k));
        acc += &self.c2 * &Cyc12::root(3 * k);
        acc += &self.c3 * &Cyc12::root(2 * k);
        acc += &self.c4 * &Cyc12::root(4 * k);
        acc
    }

    fn non_integral(&self, what: String) -> Error {
        Error::NonIntegralChi {
            context: format!(
                "d={}, 12TrL={}, l1={}: {}",
                self.d, self.traces.twelve_trl, self.ell_one, what
            ),
        }
    }

    pub fn chi_at_weight(&self, k: i64) -> Result<i64> {
        let v = self.chi_at_weight_exact(k);
        v.as_integer()
            .and_then(|n| i64::try_from(n).ok())
            .ok_or_else(|| self.non_integral(format!("chi(V_{k}) = {v}")))
    }
}

/// `chi(V_{l1 + 2n})`.
pub fn euler_coefficient(ctx: &ChiContext, n: u32) -> Result<i64> {
    let v = ctx.chi_exact(n as i64);
    v.as_integer()
        .and_then(|x| i64::try_from(x).ok())
        .ok_or_else(|| ctx.non_integral(format!("coefficient {n} = {v}")))
}

/// The five partial-fraction numerators as polynomials in `u = T^2`, each
/// already multiplied through by `(1 - u^2)(1 - u^3)`.
pub(crate) fn p_terms_in_u(ctx: &ChiContext) -> [CycPoly; 5] {
    let l1 = ctx.ell_one;
    let int = CycPoly::from_ints;
    let one_minus_u3 = int(&[1, 0, 0, -1]);
    let one_minus_u2 = int(&[1, 0, -1]);
    let one_minus_u = int(&[1, -1]);
    let linear = |c: Cyc12| CycPoly::new(vec![Cyc12::from_int(1), -c]);

    let t1 = int(&[1, 1]).mul(&one_minus_u3).scale(&ctx.c1);
    let t2 = one_minus_u
        .mul(&one_minus_u3)
        .scale(&(&ctx.c2 * &Cyc12::root(3 * l1)));
    let t3 = one_minus_u2
        .mul(&one_minus_u)
        .mul(&linear(Cyc12::root(8)))
        .scale(&(&ctx.c3 * &Cyc12::root(2 * l1)));
    let t4 = one_minus_u2
        .mul(&one_minus_u)
        .mul(&linear(Cyc12::zeta()))
        .scale(&(&ctx.c4 * &Cyc12::root(4 * l1)));
    let t5 = int(&[l1, -(l1 - 2)])
        .mul(&int(&[1, 1]))
        .mul(&int(&[1, 1, 1]))
        .scale(&Cyc12::from_rational(ctx.c5.clone()));
    [t1, t2, t3, t4, t5]
}

/// `P(T)` with `sum_k chi(V_k) T^k (1 - T^4)(1 - T^6) = T^l1 P(T)`.
pub fn p_polynomial(ctx: &ChiContext) -> Result<IntPoly> {
    let sum = p_terms_in_u(ctx)
        .iter()
        .fold(CycPoly::zero(), |acc, t| acc.add(t));
    let in_t = sum.inflate(2);
    let p = in_t.to_int_poly().map_err(|n| {
        ctx.non_integral(format!("coefficient of T^{n} in P is {}", in_t.coeff(n)))
    })?;
    if p.degree().unwrap_or(0) > 8 {
        return Err(Error::InternalInconsistency(format!("deg P > 8: {p}")));
    }
    if p.eval(1) != ctx.d as i64 {
        return Err(Error::InternalInconsistency(format!(
            "P(1) = {} but d = {}",
            p.eval(1),
            ctx.d
        )));
    }
    debug!("P(T) = {} for d={} 12TrL={}", p, ctx.d, ctx.traces.twelve_trl);
    Ok(p)
}

/// `dim M_k(rho)` as far as the trace data determines it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimensionAnswer {
    /// Fully determined.
    Exact(i64),
    /// `chi + a_j`, where `a_j = dim S_{2-k}(rho^vee)` is the `index`-th
    /// unknown of the middle range.
    Symbolic { chi: i64, index: usize },
}

pub fn dimension_m(
    ctx: &ChiContext,
    middle: &MiddleRange,
    k: i64,
    cusp_dim: Option<u64>,
) -> Result<DimensionAnswer> {
    if (k - middle.ell_one).rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument(format!("weight {k} has the wrong parity")));
    }
    let kq = rat_int(k);
    if kq < middle.lower {
        return Ok(DimensionAnswer::Exact(0));
    }
    let chi = ctx.chi_at_weight(k)?;
    if kq > middle.upper {
        return Ok(DimensionAnswer::Exact(chi));
    }
    let index = middle
        .ell_list
        .iter()
        .position(|&l| l == k)
        .ok_or_else(|| Error::InternalInconsistency(format!("weight {k} not in middle range")))?;
    Ok(match cusp_dim {
        Some(a) => DimensionAnswer::Exact(chi + a as i64),
        None => DimensionAnswer::Symbolic { chi, index },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component::{enumerate_components, trace_l_candidates};

    fn trivial() -> (ChiContext, MiddleRange) {
        let p = ComponentParams::new(Parity::Even, (1, 0), (1, 0, 0)).unwrap();
        ChiContext::for_component(&p, 0).unwrap()
    }

    #[test]
    fn middle_range_examples() {
        let m = middle_range(12, 0, Parity::Even);
        assert_eq!(m.ell_list, vec![-10, -8, -6, -4, -2, 0]);
        assert_eq!(m.ell_one, -10);
        let m = middle_range(6, 36, Parity::Even);
        assert!(m.ell_list.is_empty());
        assert_eq!(m.ell_one, 2);
        let m = middle_range(1, 0, Parity::Even);
        assert!(m.ell_list.is_empty());
        assert_eq!(m.ell_one, 0);
    }

    #[test]
    fn trivial_representation_dimensions() {
        let (ctx, _) = trivial();
        assert_eq!(euler_coefficient(&ctx, 0), Ok(1));
        assert_eq!(euler_coefficient(&ctx, 1), Ok(0));
        assert_eq!(euler_coefficient(&ctx, 6), Ok(2));
        assert_eq!(p_polynomial(&ctx).unwrap(), IntPoly::new(vec![1]));
    }

    #[test]
    fn dimension_formula_cases() {
        let (ctx, m) = trivial();
        assert_eq!(dimension_m(&ctx, &m, -2, None), Ok(DimensionAnswer::Exact(0)));
        assert_eq!(dimension_m(&ctx, &m, 0, None), Ok(DimensionAnswer::Exact(1)));
        assert!(dimension_m(&ctx, &m, 1, None).is_err());

        let p = ComponentParams::new(Parity::Even, (12, 0), (12, 0, 0)).unwrap();
        let (ctx, m) = ChiContext::for_component(&p, 0).unwrap();
        match dimension_m(&ctx, &m, -10, None).unwrap() {
            DimensionAnswer::Symbolic { index, .. } => assert_eq!(index, 0),
            other => panic!("expected symbolic answer, got {other:?}"),
        }
        let DimensionAnswer::Symbolic { chi, .. } = dimension_m(&ctx, &m, -10, None).unwrap() else {
            unreachable!()
        };
        assert_eq!(dimension_m(&ctx, &m, -10, Some(3)), Ok(DimensionAnswer::Exact(chi + 3)));
    }

    #[test]
    fn two_dimensional_contexts() {
        for c in enumerate_components(2) {
            for t in trace_l_candidates(&c) {
                let (ctx, _) = ChiContext::for_component(&c, t).unwrap();
                let p = p_polynomial(&ctx).unwrap();
                assert_eq!(p.eval(1), 2);
                if c.s_mults == (2, 0) && c.r_mults == (2, 0, 0) && c.parity == Parity::Even && t == 0 {
                    assert_eq!(p, IntPoly::new(vec![2]));
                }
            }
        }
    }

    #[test]
    fn closed_form_agrees_with_weight_form() {
        for d in [1, 3, 6] {
            for c in enumerate_components(d) {
                for t in trace_l_candidates(&c) {
                    let (ctx, _) = ChiContext::for_component(&c, t).unwrap();
                    for n in 0..16 {
                        assert_eq!(
                            ctx.chi_exact(n),
                            ctx.chi_at_weight_exact(ctx.ell_one + 2 * n)
                        );
                    }
                }
            }
        }
    }
}
