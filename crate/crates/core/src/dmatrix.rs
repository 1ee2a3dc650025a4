//! Matrices of the modular derivative on a free module over `Q[E4, E6]`
//! and the elimination of `E6` from them.
//!
//! Generators are indexed `0..d` in weight order. With `p(i)` the block of
//! generator `i`, entry `(i, j)` has weight `2 (p(j) - p(i)) + 2`; the
//! diagonal of weight `w` is the set of entries with that weight.

use std::collections::BTreeMap;

use log::debug;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, Rational};
use crate::graded::{natural_e6_cap, weight_basis, GradedPoly};
use crate::error::{Error, Result};

/// Block sizes `m_1..m_r` of a generating set and its lowest weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockShape {
    pub mults: Vec<u32>,
    pub k1: i64,
}

impl BlockShape {
    pub fn new(mults: Vec<u32>, k1: i64) -> Result<Self> {
        if mults.is_empty() || mults.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "block sizes must be positive, got {mults:?}"
            )));
        }
        Ok(BlockShape { mults, k1 })
    }

    pub fn dimension(&self) -> usize {
        self.mults.iter().map(|&m| m as usize).sum()
    }

    pub fn blocks(&self) -> usize {
        self.mults.len()
    }

    /// Block of each generator.
    pub fn block_of(&self) -> Vec<usize> {
        self.mults
            .iter()
            .enumerate()
            .flat_map(|(p, &m)| std::iter::repeat_n(p, m as usize))
            .collect()
    }

    /// Index range of block `p`.
    pub fn block_range(&self, p: usize) -> std::ops::Range<usize> {
        let start: usize = self.mults[..p].iter().map(|&m| m as usize).sum();
        start..start + self.mults[p] as usize
    }

    pub fn generator_weight(&self, i: usize) -> i64 {
        self.k1 + 2 * self.block_of()[i] as i64
    }

    /// Weight of a matrix entry in block position `(p, q)`.
    pub fn entry_weight(p: usize, q: usize) -> i64 {
        2 * (q as i64 - p as i64) + 2
    }

    /// Largest weight of any entry.
    pub fn max_entry_weight(&self) -> i64 {
        2 * self.blocks() as i64
    }
}

/// Matrix of the derivative: `D(F_j) = sum_i A[i][j] F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMatrix {
    shape: BlockShape,
    entries: Vec<Vec<GradedPoly>>,
}

fn entry_admissible(w: i64) -> bool {
    w >= 0 && w != 2
}

impl DMatrix {
    pub fn zero(shape: BlockShape) -> Self {
        let blocks = shape.block_of();
        let d = shape.dimension();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| GradedPoly::zero_of_weight(BlockShape::entry_weight(blocks[i], blocks[j])))
                    .collect()
            })
            .collect();
        DMatrix { shape, entries }
    }

    /// Builds a matrix, checking every entry against its block weight.
    pub fn from_entries(shape: BlockShape, entries: Vec<Vec<GradedPoly>>) -> Result<Self> {
        let mut m = DMatrix::zero(shape);
        let d = m.dim();
        if entries.len() != d || entries.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidArgument(format!("expected a {d}x{d} matrix")));
        }
        for (i, row) in entries.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e)?;
            }
        }
        Ok(m)
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<GradedPoly>] {
        &self.entries
    }

    pub fn entry_weight(&self, i: usize, j: usize) -> i64 {
        let b = self.shape.block_of();
        BlockShape::entry_weight(b[i], b[j])
    }

    pub fn set(&mut self, i: usize, j: usize, value: GradedPoly) -> Result<()> {
        let w = self.entry_weight(i, j);
        if !value.is_zero() && !entry_admissible(w) {
            return Err(Error::WeightMismatch {
                expected: w,
                found: value.weight().unwrap_or(w),
            });
        }
        self.entries[i][j] = value.with_weight(w)?;
        Ok(())
    }

    /// Largest E6 exponent on the diagonal of weight `w` (`None` if zero).
    pub fn diagonal_e6_degree(&self, w: i64) -> Option<u32> {
        let d = self.dim();
        (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| self.entry_weight(i, j) == w)
            .filter_map(|(i, j)| self.entries[i][j].e6_degree())
            .max()
    }

    pub fn max_e6_degree(&self) -> Option<u32> {
        self.entries.iter().flatten().filter_map(|e| e.e6_degree()).max()
    }

    /// True when the blocks strictly below the subdiagonal vanish and the
    /// subdiagonal blocks are constants.
    pub fn is_well_formed(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let e = &self.entries[i][j];
                e.is_zero() || (entry_admissible(self.entry_weight(i, j)) && e.is_homogeneous())
            })
        })
    }
}

/// Change of generators `F' = F P`, unipotent in weight order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformation {
    shape: BlockShape,
    entries: Vec<Vec<GradedPoly>>,
}

impl Transformation {
    pub fn identity(shape: BlockShape) -> Self {
        let d = shape.dimension();
        let weights: Vec<i64> = (0..d).map(|i| shape.generator_weight(i)).collect();
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            GradedPoly::one()
                        } else {
                            GradedPoly::zero_of_weight(weights[j] - weights[i])
                        }
                    })
                    .collect()
            })
            .collect();
        Transformation { shape, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<GradedPoly>] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let e = &self.entries[i][j];
                if i == j {
                    *e == GradedPoly::one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Identity on the diagonal, zero unless `k_i < k_j`, homogeneous of
    /// weight `k_j - k_i`.
    pub fn is_unipotent(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                let e = &self.entries[i][j];
                let (ki, kj) = (self.shape.generator_weight(i), self.shape.generator_weight(j));
                if i == j {
                    *e == GradedPoly::one()
                } else if ki >= kj {
                    e.is_zero()
                } else {
                    e.is_zero() || e.weight() == Some(kj - ki)
                }
            })
        })
    }

    /// `P <- P (I - g E_ij)`.
    fn compose_elementary(&mut self, i: usize, j: usize, g: &GradedPoly) {
        for r in 0..self.dim() {
            let delta = &self.entries[r][i] * g;
            if !delta.is_zero() {
                self.entries[r][j] = &self.entries[r][j] - &delta;
            }
        }
    }

    /// Inverse by back-substitution.
    pub fn inverse(&self) -> Transformation {
        let d = self.dim();
        let mut inv = Transformation::identity(self.shape.clone());
        for j in 0..d {
            for i in (0..j).rev() {
                let mut acc = GradedPoly::zero();
                for k in i + 1..=j {
                    acc = &acc + &(&self.entries[i][k] * &inv.entries[k][j]);
                }
                let w = inv.entries[i][j].weight().expect("identity entries carry weights");
                inv.entries[i][j] = (-&acc).with_weight(w).expect("products keep the entry weight");
            }
        }
        inv
    }
}

fn mat_mul(a: &[Vec<GradedPoly>], b: &[Vec<GradedPoly>]) -> Vec<Vec<GradedPoly>> {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    (0..d).fold(GradedPoly::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Row `i` += `g` row `j`, column `j` -= `g` column `i`, entry `(i, j)` -= `D g`.
pub fn elementary_replacement(a: &DMatrix, i: usize, j: usize, g: &GradedPoly) -> Result<DMatrix> {
    let mut out = a.clone();
    apply_replacement(&mut out, i, j, g)?;
    Ok(out)
}

fn apply_replacement(a: &mut DMatrix, i: usize, j: usize, g: &GradedPoly) -> Result<()> {
    let shape = &a.shape;
    let d = a.dim();
    if i >= d || j >= d {
        return Err(Error::InvalidArgument(format!("index out of range for {d}x{d} matrix")));
    }
    let expected = shape.generator_weight(j) - shape.generator_weight(i);
    if expected <= 0 {
        return Err(Error::InvalidArgument(format!(
            "replacement needs k_i < k_j, got generators {i} and {j}"
        )));
    }
    if let Some(w) = g.weight() {
        if !g.is_zero() && w != expected {
            return Err(Error::WeightMismatch { expected, found: w });
        }
    } else if !g.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    if g.is_zero() {
        return Ok(());
    }
    let g = g.clone().with_weight(expected)?;
    for c in 0..d {
        let delta = &g * &a.entries[j][c];
        if !delta.is_zero() {
            let v = &a.entries[i][c] + &delta;
            a.set(i, c, v)?;
        }
    }
    for r in 0..d {
        let delta = &g * &a.entries[r][i];
        if !delta.is_zero() {
            let v = &a.entries[r][j] - &delta;
            a.set(r, j, v)?;
        }
    }
    let v = &a.entries[i][j] - &g.serre_derive()?;
    a.set(i, j, v)
}

/// Exponent cap on the diagonal of weight `w` once fully reduced:
/// `Some(0)` for `w = 0 mod 4`, `None` (identically zero) otherwise.
fn target_cap(w: i64) -> Option<u32> {
    (w % 4 == 0).then_some(0)
}

/// Planned E6 caps per diagonal weight, starting from the natural caps.
struct CapTable {
    caps: BTreeMap<i64, Option<u32>>,
}

impl CapTable {
    fn new(max_weight: i64) -> Self {
        let caps = (1..=max_weight / 2).map(|h| 2 * h).map(|w| (w, natural_e6_cap(w))).collect();
        CapTable { caps }
    }

    fn cap(&self, w: i64) -> Option<u32> {
        self.caps.get(&w).copied().unwrap_or_else(|| natural_e6_cap(w))
    }

    /// Lowest diagonal whose cap is above target and whose upper neighbour
    /// already sits exactly one step below it.
    fn next(&self, limit: i64) -> Option<i64> {
        self.caps
            .iter()
            .filter(|(&w, _)| w <= limit)
            .find_map(|(&w, &c)| {
                let c = c?;
                if c == 0 {
                    return None;
                }
                let above = self.cap(w + 2).map(|x| x as i64).unwrap_or(-1);
                (above == c as i64 - 1).then_some(w)
            })
    }

    fn lower(&mut self, w: i64) {
        let c = self.cap(w).expect("lowering an empty diagonal");
        self.caps.insert(w, c.checked_sub(2));
    }

    fn done_up_to(&self, w_max: i64) -> bool {
        self.caps
            .iter()
            .filter(|(&w, _)| w <= w_max)
            .all(|(&w, &c)| c == target_cap(w))
    }
}

fn check_caps(a: &DMatrix, table: &CapTable, after: i64) -> Result<()> {
    for w in (4..=a.shape.max_entry_weight()).step_by(2) {
        let actual = a.diagonal_e6_degree(w);
        let cap = table.cap(w);
        let ok = match (actual, cap) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(x), Some(c)) => x <= c,
        };
        if !ok {
            return Err(Error::CapViolation(format!(
                "after reducing weight {after}: diagonal of weight {w} has E6-degree {actual:?}, cap {cap:?}"
            )));
        }
    }
    Ok(())
}

/// Lowers the E6-degree of every entry on diagonal `w` by two steps.
fn reduce_diagonal(a: &mut DMatrix, p: &mut Transformation, w: i64, from: u32) -> Result<()> {
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            if a.entry_weight(i, j) != w {
                continue;
            }
            while let Some((m, alpha)) = a.entries[i][j].top_term() {
                if m.e6 + 2 <= from || m.e6 == 0 {
                    break;
                }
                let alpha = alpha.clone();
                let c = -(alpha * rat(3, 1)) / rat(m.e4 as i64 + 1, 1);
                let g = GradedPoly::monomial(c, m.e4 + 1, m.e6 - 1);
                apply_replacement(a, i, j, &g)?;
                p.compose_elementary(i, j, &g);
            }
        }
    }
    Ok(())
}

/// Eliminates E6 from every entry by elementary replacements, returning the
/// reduced matrix and the accumulated change of generators.
pub fn reduce_e6(a: &DMatrix) -> Result<(DMatrix, Transformation)> {
    if !a.is_well_formed() {
        return Err(Error::InvalidArgument("matrix entries do not match the block weights".into()));
    }
    let mut out = a.clone();
    let mut p = Transformation::identity(a.shape.clone());
    let w_max = a.shape.max_entry_weight();
    let mut table = CapTable::new(2 * w_max + 12);
    check_caps(&out, &table, 0)?;
    while !table.done_up_to(w_max) {
        let w = table.next(2 * w_max + 12).ok_or_else(|| {
            Error::CapViolation("no diagonal can be reduced without breaking a cap".into())
        })?;
        let from = table.cap(w).expect("selected diagonal has a cap");
        table.lower(w);
        if w <= w_max {
            debug!("reducing weight-{w} diagonal from E6-degree {from}");
            reduce_diagonal(&mut out, &mut p, w, from)?;
            check_caps(&out, &table, w)?;
        }
    }
    if out.max_e6_degree().unwrap_or(0) > 0 {
        return Err(Error::InternalInconsistency("E6 survived the reduction".into()));
    }
    Ok((out, p))
}

/// Checks `A' = P^-1 A P + P^-1 D(P)` exactly.
pub fn conjugation_check(a: &DMatrix, a_prime: &DMatrix, p: &Transformation) -> bool {
    if !p.is_unipotent() || a.shape != a_prime.shape {
        return false;
    }
    let inv = p.inverse();
    let d = p.dim();
    let product = mat_mul(&p.entries, &inv.entries);
    let identity_ok = (0..d).all(|i| {
        (0..d).all(|j| {
            let e = &product[i][j];
            if i == j {
                *e == GradedPoly::one()
            } else {
                e.is_zero()
            }
        })
    });
    if !identity_ok {
        return false;
    }
    let dp: Option<Vec<Vec<GradedPoly>>> = p
        .entries
        .iter()
        .map(|row| row.iter().map(|e| e.serre_derive().ok()).collect())
        .collect();
    let Some(dp) = dp else { return false };
    let ap = mat_mul(&a.entries, &p.entries);
    let lhs_inner: Vec<Vec<GradedPoly>> = ap
        .iter()
        .zip(&dp)
        .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x + y).collect())
        .collect();
    let rhs = mat_mul(&inv.entries, &lhs_inner);
    (0..d).all(|i| (0..d).all(|j| rhs[i][j] == a_prime.entries[i][j]))
}

fn small_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-5..=5);
        let den: i64 = rng.gen_range(1..=3);
        if n != 0 || !nonzero {
            return rat(n, den);
        }
    }
}

/// Random matrix of the given shape, deterministic in `seed`.
pub fn random_dmatrix(shape: &BlockShape, seed: u64) -> DMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = DMatrix::zero(shape.clone());
    let d = m.dim();
    for i in 0..d {
        for j in 0..d {
            let w = m.entry_weight(i, j);
            if !entry_admissible(w) {
                continue;
            }
            let value = if w == 0 {
                GradedPoly::constant(small_rational(&mut rng, true))
            } else {
                let terms: Vec<_> = weight_basis(w)
                    .into_iter()
                    .map(|mono| (mono, small_rational(&mut rng, false)))
                    .collect();
                GradedPoly::from_terms(terms)
            };
            m.set(i, j, value).expect("generated entry has the block weight");
        }
    }
    m
}

/// A nonzero rational vector `v` with `sum_c v_c A[r][c] = 0` for every row
/// `r` in blocks `j+1, j-1, j-3, ...`, where `c` runs over block `j`
/// (0-based block index). Requires an E6-free matrix.
pub fn kernel_flat_vector(a: &DMatrix, j: usize) -> Result<Option<Vec<Rational>>> {
    let shape = &a.shape;
    if j >= shape.blocks() {
        return Err(Error::InvalidArgument(format!("block index {j} out of range")));
    }
    let cols: Vec<usize> = shape.block_range(j).collect();
    let mut row_blocks = Vec::new();
    if j + 1 < shape.blocks() {
        row_blocks.push(j + 1);
    }
    let mut p = j as i64 - 1;
    while p >= 0 {
        row_blocks.push(p as usize);
        p -= 2;
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for pb in row_blocks {
        for r in shape.block_range(pb) {
            let mut row = Vec::with_capacity(cols.len());
            for &c in &cols {
                let (coef, _) = a.entries[r][c].as_pure_e4().ok_or_else(|| {
                    Error::InvalidArgument(format!("entry ({r},{c}) is not of the form c*E4^e"))
                })?;
                row.push(coef);
            }
            rows.push(row);
        }
    }
    Ok(nullspace_vector(rows, cols.len()))
}

/// One nonzero kernel vector of a rational matrix, by row reduction.
fn nullspace_vector(mut rows: Vec<Vec<Rational>>, n: usize) -> Option<Vec<Rational>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = Rational::one() / &rows[rank][col];
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); n];
    v[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -rows[r][free].clone();
    }
    Some(v)
}

/// On-disk form of a matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub mults: Vec<u32>,
    pub k1: i64,
    pub entries: Vec<Vec<GradedPoly>>,
}

impl From<&DMatrix> for MatrixFile {
    fn from(m: &DMatrix) -> Self {
        MatrixFile {
            mults: m.shape.mults.clone(),
            k1: m.shape.k1,
            entries: m.entries.clone(),
        }
    }
}

impl From<&Transformation> for MatrixFile {
    fn from(t: &Transformation) -> Self {
        MatrixFile {
            mults: t.shape.mults.clone(),
            k1: t.shape.k1,
            entries: t.entries.clone(),
        }
    }
}

impl TryFrom<MatrixFile> for DMatrix {
    type Error = Error;
    fn try_from(f: MatrixFile) -> Result<Self> {
        DMatrix::from_entries(BlockShape::new(f.mults, f.k1)?, f.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;
    use proptest::prelude::*;

    fn shape(m: &[u32]) -> BlockShape {
        BlockShape::new(m.to_vec(), 0).unwrap()
    }

    fn example_3x3() -> DMatrix {
        let mut a = DMatrix::zero(shape(&[1, 1, 1]));
        a.set(0, 2, GradedPoly::e6()).unwrap();
        a.set(1, 0, GradedPoly::one()).unwrap();
        a.set(2, 1, GradedPoly::one()).unwrap();
        a
    }

    #[test]
    fn replacement_by_zero_is_identity() {
        let a = random_dmatrix(&shape(&[1, 2, 1]), 3);
        let g = GradedPoly::zero_of_weight(4);
        assert_eq!(elementary_replacement(&a, 0, 3, &g).unwrap(), a);
    }

    #[test]
    fn replacement_example() {
        let a = example_3x3();
        let g = GradedPoly::monomial(rat_int(-3), 1, 0);
        let b = elementary_replacement(&a, 0, 2, &g).unwrap();
        assert!(b.get(0, 2).is_zero());
        assert_eq!(*b.get(0, 1), GradedPoly::monomial(rat_int(-3), 1, 0));
        assert_eq!(*b.get(1, 2), GradedPoly::monomial(rat_int(3), 1, 0));
    }

    #[test]
    fn replacement_rejects_wrong_weight() {
        let a = example_3x3();
        let err = elementary_replacement(&a, 0, 2, &GradedPoly::e6()).unwrap_err();
        assert_eq!(err, Error::WeightMismatch { expected: 4, found: 6 });
    }

    #[test]
    fn reduce_example() {
        let a = example_3x3();
        let (b, p) = reduce_e6(&a).unwrap();
        assert_eq!(b.max_e6_degree(), Some(0));
        assert_eq!(*b.get(0, 1), GradedPoly::monomial(rat_int(-3), 1, 0));
        assert_eq!(*b.get(1, 2), GradedPoly::monomial(rat_int(3), 1, 0));
        assert!(conjugation_check(&a, &b, &p));
    }

    #[test]
    fn reduce_e6_free_input_is_noop() {
        let mut a = DMatrix::zero(shape(&[1, 1]));
        a.set(1, 0, GradedPoly::one()).unwrap();
        a.set(0, 1, GradedPoly::e4()).unwrap();
        let (b, p) = reduce_e6(&a).unwrap();
        assert_eq!(a, b);
        assert!(p.is_identity());
    }

    #[test]
    fn conjugation_examples() {
        let a = random_dmatrix(&shape(&[1, 1, 1]), 11);
        let id = Transformation::identity(a.shape().clone());
        assert!(conjugation_check(&a, &a, &id));

        let g = GradedPoly::monomial(rat(2, 3), 1, 0);
        let b = elementary_replacement(&a, 0, 2, &g).unwrap();
        let mut p = Transformation::identity(a.shape().clone());
        p.compose_elementary(0, 2, &g);
        assert!(conjugation_check(&a, &b, &p));

        let mut bad = b.clone();
        let v = bad.get(1, 0) + &GradedPoly::one();
        bad.set(1, 0, v).unwrap();
        assert!(!conjugation_check(&a, &bad, &p));
    }

    #[test]
    fn random_matrix_weights() {
        let a = random_dmatrix(&shape(&[1, 1]), 5);
        assert!(a.get(0, 0).is_zero() && a.get(1, 1).is_zero());
        assert_eq!(a.get(1, 0).weight(), Some(0));
        assert!(!a.get(1, 0).is_zero());
        assert_eq!(a.get(0, 1).weight(), Some(4));
        assert_eq!(random_dmatrix(&shape(&[1, 1]), 5), a);

        let b = random_dmatrix(&shape(&[2, 2]), 9);
        for i in 0..2 {
            for j in 0..2 {
                assert!(b.get(i, j).is_zero() && b.get(i + 2, j + 2).is_zero());
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let mut a = DMatrix::zero(shape(&[1]));
        a.set(0, 0, GradedPoly::zero_of_weight(2)).unwrap();
        assert_eq!(kernel_flat_vector(&a, 0).unwrap(), Some(vec![rat_int(1)]));

        let (r, _) = reduce_e6(&random_dmatrix(&shape(&[1, 4, 1]), 1)).unwrap();
        let v = kernel_flat_vector(&r, 1).unwrap().expect("rank bound forces a kernel");
        assert!(v.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn kernel_generically_absent_when_bound_holds() {
        let hits = (0..20u64)
            .filter(|&s| {
                let (r, _) = reduce_e6(&random_dmatrix(&shape(&[1, 3, 2]), s)).unwrap();
                kernel_flat_vector(&r, 1).unwrap().is_some()
            })
            .count();
        assert!(hits <= 2, "{hits} of 20 seeds had a kernel");
    }

    #[test]
    fn reduce_is_idempotent() {
        let a = random_dmatrix(&shape(&[1, 2, 2, 1, 1]), 21);
        let (b, _) = reduce_e6(&a).unwrap();
        let (c, p) = reduce_e6(&b).unwrap();
        assert_eq!(b, c);
        assert!(p.is_identity());
    }

    #[test]
    fn long_shapes_reduce_without_cap_violation() {
        for r in 1..=12 {
            let a = random_dmatrix(&shape(&vec![1; r]), r as u64);
            let (b, p) = reduce_e6(&a).unwrap();
            assert!(b.max_e6_degree().unwrap_or(0) == 0);
            assert!(p.is_unipotent());
        }
    }

    #[test]
    fn matrix_file_roundtrip() {
        let a = random_dmatrix(&shape(&[2, 1]), 2);
        let json = serde_json::to_string(&MatrixFile::from(&a)).unwrap();
        let back: MatrixFile = serde_json::from_str(&json).unwrap();
        assert_eq!(DMatrix::try_from(back).unwrap(), a);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn reduction_satisfies_conjugation_identity(seed in any::<u64>()) {
            let a = random_dmatrix(&shape(&[1, 1, 1, 1, 1]), seed);
            let (b, p) = reduce_e6(&a).unwrap();
            prop_assert_eq!(b.max_e6_degree(), Some(0));
            prop_assert!(p.is_unipotent());
            prop_assert!(conjugation_check(&a, &b, &p));
        }

        #[test]
        fn weight_two_mod_four_blocks_vanish(seed in any::<u64>(), m in prop::collection::vec(1u32..3, 2..6)) {
            let a = random_dmatrix(&BlockShape::new(m, 0).unwrap(), seed);
            let (b, _) = reduce_e6(&a).unwrap();
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    let w = b.entry_weight(i, j);
                    if w % 4 == 2 {
                        prop_assert!(b.get(i, j).is_zero());
                    }
                }
            }
        }

        #[test]
        fn single_replacement_is_a_conjugation(seed in any::<u64>(), c in -4i64..5) {
            let a = random_dmatrix(&shape(&[1, 2, 1]), seed);
            let g = GradedPoly::monomial(rat(c, 2), 1, 0);
            let b = elementary_replacement(&a, 0, 3, &g).unwrap();
            let mut p = Transformation::identity(a.shape().clone());
            p.compose_elementary(0, 3, &g);
            prop_assert!(conjugation_check(&a, &b, &p));
        }

        #[test]
        fn kernel_exists_when_bound_fails(seed in any::<u64>()) {
            let (r, _) = reduce_e6(&random_dmatrix(&shape(&[1, 3, 1]), seed)).unwrap();
            prop_assert!(kernel_flat_vector(&r, 1).unwrap().is_some());
        }
    }
}
