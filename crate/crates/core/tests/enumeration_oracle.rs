//! The depth-first search over cusp-form dimensions against a brute-force
//! enumeration of gap-free weight tuples.

use std::collections::BTreeSet;

use vvmf_core::arith::IntPoly;
use vvmf_core::component::{enumerate_components, trace_l_candidates, ComponentParams};
use vvmf_core::euler::{p_polynomial, ChiContext, MiddleRange};
use vvmf_core::profile::{filter_no_gap, filter_weight_bounds, profile_from_mults, Profile};
use vvmf_core::search::{candidates_for_context, enumerate_types, ContextOutcome, FilterSet};

fn compositions(d: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    (1..=d)
        .flat_map(|first| {
            compositions(d - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Whether `W - T^l1 P` is `(1 - T^4)(1 - T^6)` times a nonnegative
/// combination of `T^{l_j}`.
fn solvable(profile: &Profile, p: &IntPoly, middle: &MiddleRange) -> bool {
    let l1 = middle.ell_one;
    let lo = profile.min_weight().unwrap();
    if lo < l1 {
        return false;
    }
    let hi = profile.max_weight().unwrap().max(l1 + 8);
    let len = ((hi - l1) / 2 + 1) as usize;
    // Residual in steps of T^2 from l1.
    let mut rest = vec![0i64; len];
    for &k in profile.weights() {
        rest[((k - l1) / 2) as usize] += 1;
    }
    for (i, &c) in p.coeffs().iter().enumerate() {
        rest[i / 2] -= c;
    }
    // Divide by 1 - u^2 - u^3 + u^5 from the bottom up.
    let mut quotient = vec![0i64; len];
    for i in 0..len {
        let q = rest[i];
        quotient[i] = q;
        for (off, sign) in [(0usize, 1i64), (2, -1), (3, -1), (5, 1)] {
            if i + off < len {
                rest[i + off] -= sign * q;
            } else if q != 0 {
                return false;
            }
        }
    }
    quotient.iter().enumerate().all(|(i, &q)| {
        q == 0 || (q > 0 && i < middle.r())
    })
}

fn brute_force(c: &ComponentParams, t: i64) -> Option<BTreeSet<Vec<i64>>> {
    let d = c.dimension();
    let (ctx, middle) = ChiContext::for_component(c, t).unwrap();
    let p = p_polynomial(&ctx).ok()?;
    let mut out = BTreeSet::new();
    for k1 in (1 - d as i64 - 1)..=(d as i64 + 11) {
        if !c.parity.matches(k1) {
            continue;
        }
        for m in compositions(d) {
            let prof = profile_from_mults(&m, k1);
            if prof.max_weight().unwrap() > d as i64 + 10 + 1 {
                continue;
            }
            if prof.weight_sum() == t
                && filter_weight_bounds(&prof, d, t)
                && solvable(&prof, &p, &middle)
            {
                out.insert(prof.weights().to_vec());
            }
        }
    }
    Some(out)
}

fn dfs(c: &ComponentParams, t: i64) -> Option<BTreeSet<Vec<i64>>> {
    match candidates_for_context(c, t).unwrap() {
        ContextOutcome::Searched(records) => Some(
            records
                .into_iter()
                .filter(|r| filter_weight_bounds(&r.profile, c.dimension(), t) && filter_no_gap(&r.profile))
                .map(|r| r.profile.weights().to_vec())
                .collect(),
        ),
        _ => None,
    }
}

#[test]
fn dfs_matches_brute_force_up_to_dimension_five() {
    for d in 1..=5 {
        for c in enumerate_components(d) {
            for t in trace_l_candidates(&c) {
                assert_eq!(dfs(&c, t), brute_force(&c, t), "{c} 12TrL={t}");
            }
        }
    }
}

#[test]
fn dfs_matches_brute_force_in_dimension_six_sample() {
    let comps = enumerate_components(6);
    for c in comps.iter().step_by(7) {
        for t in trace_l_candidates(c) {
            assert_eq!(dfs(c, t), brute_force(c, t), "{c} 12TrL={t}");
        }
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let run = |n: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| enumerate_types(6, &FilterSet::default()).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn every_emitted_type_satisfies_the_invariants() {
    let e = enumerate_types(7, &FilterSet::mandatory_only()).unwrap();
    for ty in &e.types {
        assert_eq!(ty.mults.iter().sum::<u32>(), 7);
        for r in &ty.realizations {
            let prof = profile_from_mults(&ty.mults, r.k1);
            assert_eq!(prof.weight_sum(), r.twelve_trl);
            assert!(filter_weight_bounds(&prof, 7, r.twelve_trl));
            assert_eq!(prof.type_tuple(), ty.type_tuple);
        }
    }
}
