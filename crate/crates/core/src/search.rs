//! Solving for the unknown cusp-form dimensions and enumerating all
//! candidate weight profiles of a given dimension.

use std::collections::BTreeMap;

use log::{debug, info};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::IntPoly;
use crate::component::{enumerate_components, trace_l_candidates, ComponentParams, Parity};
use crate::error::{Error, Result};
use crate::euler::{p_polynomial, ChiContext, MiddleRange};
use crate::profile::{
    filter_ell_bound, filter_half_dimension, filter_mult_bounds, filter_no_gap,
    filter_two_weight, filter_weight_bounds, profile_from_poly, unitary_weight_filter,
    weight_sum_check, AVector, Profile,
};

/// One solution of the generating-function equation: the unknowns and the
/// resulting `W(T) = T^l1 * poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASolution {
    pub a: AVector,
    pub poly: IntPoly,
    pub offset: i64,
}

/// `1 - T^4 - T^6 + T^10` in steps of `T^2`.
const CORRECTION: [(usize, i64); 4] = [(0, 1), (2, -1), (3, -1), (5, 1)];

/// All `a_1..a_r >= 0` for which every coefficient of
/// `W = T^l1 P + sum_j a_j T^{l_j} (1 - T^4)(1 - T^6)` lies in `[0, d]`.
pub fn enumerate_a_vectors(p: &IntPoly, middle: &MiddleRange, d: u32) -> Vec<ASolution> {
    let r = middle.r();
    let d = d as i64;
    // Coefficients indexed by (k - l1) / 2.
    let len = (r + 5).max(p.coeffs().len().div_ceil(2));
    let mut w = vec![0i64; len];
    for (i, &c) in p.coeffs().iter().enumerate() {
        if c != 0 {
            debug_assert!(i % 2 == 0, "P has an odd power");
            w[i / 2] += c;
        }
    }
    let mut out = Vec::new();
    let mut a = Vec::with_capacity(r);
    dfs(&mut w, &mut a, r, d, middle.ell_one, &mut out);
    out
}

fn dfs(w: &mut [i64], a: &mut Vec<u32>, r: usize, d: i64, offset: i64, out: &mut Vec<ASolution>) {
    let j = a.len();
    if j == r {
        if w.iter().all(|&c| (0..=d).contains(&c)) {
            let mut coeffs = vec![0i64; 2 * w.len()];
            for (i, &c) in w.iter().enumerate() {
                coeffs[2 * i] = c;
            }
            out.push(ASolution {
                a: AVector::new(a.clone()),
                poly: IntPoly::new(coeffs),
                offset,
            });
        }
        return;
    }
    let base = w[j];
    for value in (-base).max(0)..=d - base {
        for &(off, sign) in &CORRECTION {
            w[j + off] += sign * value;
        }
        a.push(value as u32);
        dfs(w, a, r, d, offset, out);
        a.pop();
        for &(off, sign) in &CORRECTION {
            w[j + off] -= sign * value;
        }
    }
}

/// Optional filters on top of the mandatory ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSet {
    /// Exactly two distinct weights only in dimension 2.
    pub two_weight: bool,
    /// A multiplicity `d/2` only in the shape `(m_1, d/2, m_3)`.
    pub half_dimension: bool,
    /// `r <= 8e + 7`.
    pub ell_bound: bool,
    /// All weights in `[1, 11]`.
    pub unitary: bool,
}

impl Default for FilterSet {
    fn default() -> Self {
        FilterSet {
            two_weight: true,
            half_dimension: false,
            ell_bound: false,
            unitary: false,
        }
    }
}

impl FilterSet {
    /// Only the mandatory filters.
    pub fn mandatory_only() -> Self {
        FilterSet {
            two_weight: false,
            half_dimension: false,
            ell_bound: false,
            unitary: false,
        }
    }

    /// Every refinement enabled except unitarity.
    pub fn advanced() -> Self {
        FilterSet {
            two_weight: true,
            half_dimension: true,
            ell_bound: true,
            unitary: false,
        }
    }
}

/// Outcome of each filter for one candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterFlags {
    pub weight_bounds: bool,
    pub weight_sum: bool,
    pub no_gap: bool,
    pub mult_bounds: bool,
    pub two_weight: bool,
    pub half_dimension: bool,
    pub ell_bound: bool,
    pub unitary: bool,
}

impl FilterFlags {
    pub fn evaluate(p: &Profile, d: u32, twelve_trl: i64) -> Self {
        let mults = p.mults();
        FilterFlags {
            weight_bounds: filter_weight_bounds(p, d, twelve_trl),
            weight_sum: weight_sum_check(p, twelve_trl),
            no_gap: filter_no_gap(p),
            mult_bounds: d < 2 || filter_mult_bounds(&mults),
            two_weight: filter_two_weight(&mults, d),
            half_dimension: filter_half_dimension(&mults, d),
            ell_bound: filter_ell_bound(&mults, d),
            unitary: unitary_weight_filter(p),
        }
    }

    pub fn mandatory(&self) -> bool {
        self.weight_bounds && self.weight_sum && self.no_gap && self.mult_bounds
    }

    pub fn passes(&self, f: &FilterSet) -> bool {
        self.mandatory()
            && (!f.two_weight || self.two_weight)
            && (!f.half_dimension || self.half_dimension)
            && (!f.ell_bound || self.ell_bound)
            && (!f.unitary || self.unitary)
    }
}

/// A profile produced by one component and one value of `12 Tr L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub component: ComponentParams,
    pub twelve_trl: i64,
    pub a_vector: AVector,
    pub profile: Profile,
    pub filter_flags: FilterFlags,
}

/// What happened to one `(component, 12 Tr L)` context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextOutcome {
    NonIntegral,
    WeightSumMismatch,
    Searched(Vec<CandidateRecord>),
}

/// Every profile the equation allows for one context, with all filter
/// outcomes recorded but nothing discarded.
pub fn candidates_for_context(c: &ComponentParams, twelve_trl: i64) -> Result<ContextOutcome> {
    let d = c.dimension();
    let (ctx, middle) = ChiContext::for_component(c, twelve_trl)?;
    let p = match p_polynomial(&ctx) {
        Ok(p) => p,
        Err(Error::NonIntegralChi { context }) => {
            debug!("skipping {c} 12TrL={twelve_trl}: {context}");
            return Ok(ContextOutcome::NonIntegral);
        }
        Err(e) => return Err(e),
    };
    // The correction terms have zero weight sum, so this is decided by P.
    let base_sum = middle.ell_one * d as i64 + p.derivative_at_one();
    if base_sum != twelve_trl {
        return Ok(ContextOutcome::WeightSumMismatch);
    }
    let mut out = Vec::new();
    for sol in enumerate_a_vectors(&p, &middle, d) {
        let profile = profile_from_poly(&sol.poly, sol.offset, d).ok_or_else(|| {
            Error::InternalInconsistency(format!("W(1) != {d} for {c} 12TrL={twelve_trl}"))
        })?;
        let filter_flags = FilterFlags::evaluate(&profile, d, twelve_trl);
        out.push(CandidateRecord {
            component: *c,
            twelve_trl,
            a_vector: sol.a,
            profile,
            filter_flags,
        });
    }
    Ok(ContextOutcome::Searched(out))
}

/// One context realizing a type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Realization {
    pub parity: Parity,
    pub a: u32,
    pub b: u32,
    pub x: u32,
    pub y: u32,
    pub z: u32,
    #[serde(rename = "twelve_trL")]
    pub twelve_trl: i64,
    pub k1: i64,
    pub a_vector: Vec<u32>,
}

impl Realization {
    fn from_record(r: &CandidateRecord) -> Self {
        let c = &r.component;
        Realization {
            parity: c.parity,
            a: c.s_mults.0,
            b: c.s_mults.1,
            x: c.r_mults.0,
            y: c.r_mults.1,
            z: c.r_mults.2,
            twelve_trl: r.twelve_trl,
            k1: r.profile.min_weight().unwrap_or(0),
            a_vector: r.a_vector.values.clone(),
        }
    }
}

/// A deduplicated candidate type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEntry {
    pub dimension: u32,
    #[serde(rename = "type")]
    pub type_tuple: Vec<i64>,
    pub mults: Vec<u32>,
    pub realizations: Vec<Realization>,
}

/// Counts of contexts and candidates that were dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub contexts: usize,
    pub non_integral: usize,
    pub weight_sum_mismatch: usize,
    pub candidates: usize,
    pub rejected_mandatory: usize,
    pub rejected_optional: usize,
}

impl SearchStats {
    fn merge(mut self, o: SearchStats) -> SearchStats {
        self.contexts += o.contexts;
        self.non_integral += o.non_integral;
        self.weight_sum_mismatch += o.weight_sum_mismatch;
        self.candidates += o.candidates;
        self.rejected_mandatory += o.rejected_mandatory;
        self.rejected_optional += o.rejected_optional;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub dimension: u32,
    pub types: Vec<TypeEntry>,
    pub stats: SearchStats,
}

type Merged = BTreeMap<(Vec<i64>, Vec<u32>), Vec<Realization>>;

fn merge_maps(mut a: Merged, b: Merged) -> Merged {
    for (k, mut v) in b {
        a.entry(k).or_default().append(&mut v);
    }
    a
}

/// All candidate types of dimension `d` passing the mandatory filters and
/// the selected optional ones, sorted and deduplicated.
pub fn enumerate_types(d: u32, filters: &FilterSet) -> Result<Enumeration> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let contexts: Vec<(ComponentParams, i64)> = enumerate_components(d)
        .into_iter()
        .flat_map(|c| trace_l_candidates(&c).into_iter().map(move |t| (c, t)))
        .collect();
    info!("dimension {d}: {} contexts", contexts.len());

    let (merged, stats) = contexts
        .par_iter()
        .map(|(c, t)| -> Result<(Merged, SearchStats)> {
            let mut stats = SearchStats {
                contexts: 1,
                ..Default::default()
            };
            let mut map = Merged::new();
            match candidates_for_context(c, *t)? {
                ContextOutcome::NonIntegral => stats.non_integral += 1,
                ContextOutcome::WeightSumMismatch => stats.weight_sum_mismatch += 1,
                ContextOutcome::Searched(records) => {
                    for r in records {
                        stats.candidates += 1;
                        if !r.filter_flags.mandatory() {
                            stats.rejected_mandatory += 1;
                        } else if !r.filter_flags.passes(filters) {
                            stats.rejected_optional += 1;
                        } else {
                            let key = (r.profile.type_tuple(), r.profile.mults());
                            map.entry(key).or_default().push(Realization::from_record(&r));
                        }
                    }
                }
            }
            Ok((map, stats))
        })
        .try_reduce(
            || (Merged::new(), SearchStats::default()),
            |(m1, s1), (m2, s2)| Ok((merge_maps(m1, m2), s1.merge(s2))),
        )?;

    let types = merged
        .into_iter()
        .map(|((type_tuple, mults), mut realizations)| {
            realizations.sort();
            realizations.dedup();
            TypeEntry {
                dimension: d,
                type_tuple,
                mults,
                realizations,
            }
        })
        .collect();
    Ok(Enumeration {
        dimension: d,
        types,
        stats,
    })
}
