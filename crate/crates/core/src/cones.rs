//! Weight systems, the cones they span, and the stability conditions built on
//! them.
//!
//! A weight system is a `k × n` integer matrix whose columns `Q_j` are the
//! torus weights of the `n` sections. For an index set `I` the cone `Δ_I` is
//! the set of nonnegative combinations of `{Q_j : j ∈ I}` and `S_I` its span.
//! Membership questions are linear programs solved exactly by [`crate::lp`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{precondition, Error, Result};
use crate::linalg::{self, from_columns, to_q};
use crate::lp::{self, LpOutcome};
use crate::scalars::{rat, PiPoly, Sign};

/// Largest number of sections for which subset enumeration is attempted.
pub const SUBSET_CAP: usize = 24;

/// Torus weights of the sections, stored by column.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    k: usize,
    columns: Vec<Vec<i64>>,
}

impl WeightSystem {
    /// Builds a weight system from its columns. The columns must span `ℝ^k`.
    pub fn new(k: usize, columns: Vec<Vec<i64>>) -> Result<Self> {
        if k == 0 {
            return Err(precondition("torus rank k must be positive"));
        }
        if columns.len() > 64 {
            return Err(precondition("at most 64 sections are supported"));
        }
        for c in &columns {
            if c.len() != k {
                return Err(Error::LengthMismatch {
                    expected: k,
                    found: c.len(),
                });
            }
        }
        let ws = WeightSystem { k, columns };
        if ws.rank_of(ws.all()) != k {
            return Err(Error::NotEffective { k });
        }
        Ok(ws)
    }

    /// Builds a weight system from the rows `Q^a` of the `k × n` matrix.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        for r in rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let columns = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Self::new(k, columns)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[i64] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    /// Row `a` of the weight matrix.
    pub fn row(&self, a: usize) -> Vec<i64> {
        self.columns.iter().map(|c| c[a]).collect()
    }

    pub fn all(&self) -> IndexSet {
        IndexSet::full(self.n())
    }

    fn q_columns(&self, i: IndexSet) -> Vec<Vec<BigRational>> {
        i.iter().map(|j| to_q(&self.columns[j])).collect()
    }

    pub(crate) fn rank_of(&self, i: IndexSet) -> usize {
        linalg::rank_of_columns(&self.q_columns(i), self.k)
    }

    fn check_set(&self, i: IndexSet) -> Result<()> {
        if i.max_index().is_some_and(|m| m >= self.n()) {
            return Err(precondition(format!("index set {i} out of range for n = {}", self.n())));
        }
        Ok(())
    }

    fn check_vec(&self, v: &[PiPoly]) -> Result<()> {
        if v.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_cap(&self) -> Result<()> {
        if self.n() > SUBSET_CAP {
            return Err(Error::TooManySections {
                n: self.n(),
                cap: SUBSET_CAP,
            });
        }
        Ok(())
    }
}

/// A subset of `{0, …, n−1}` stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(u64);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(0)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        IndexSet(bits)
    }

    pub fn from_indices(ix: &[usize]) -> Self {
        IndexSet(ix.iter().fold(0, |acc, &j| acc | (1u64 << j)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, j: usize) -> bool {
        j < 64 && self.0 >> j & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn minus(self, other: IndexSet) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&j| self.0 >> j & 1 == 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted index lists.
    pub fn lex_cmp(self, other: IndexSet) -> std::cmp::Ordering {
        self.to_vec().cmp(&other.to_vec())
    }
}

/// All subsets of `{0, …, n−1}` in increasing bit-mask order.
pub(crate) fn all_subsets(n: usize) -> impl Iterator<Item = IndexSet> {
    (0..1u64 << n).map(IndexSet)
}

/// Subsets of `{0, …, n−1}` of size `r` in lexicographic order.
pub(crate) fn subsets_of_size(n: usize, r: usize) -> Vec<IndexSet> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
        if cur.len() == r {
            out.push(IndexSet::from_indices(cur));
            return;
        }
        for j in start..n {
            if n - j < r - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&j| j >= 64) {
            return Err(serde::de::Error::custom("index out of range"));
        }
        Ok(IndexSet::from_indices(&v))
    }
}

/// The vector `σ ∈ ℚ[π]^k`.
pub type SigmaVector = Vec<PiPoly>;

/// `σ_a = τ_a·vol − (2m/e²)·slope_vol_a·π`.
pub fn sigma_vector(
    tau: &[BigRational],
    e2: &BigRational,
    vol: &BigRational,
    m: u32,
    slope_vol: &[BigRational],
) -> Result<SigmaVector> {
    if !e2.is_positive() {
        return Err(precondition("e² must be positive"));
    }
    sigma_vector_with_coupling(tau, &e2.recip(), vol, m, slope_vol)
}

/// Same as [`sigma_vector`] but parametrised by `1/e²`, which may be zero
/// (the strong-coupling limit).
pub fn sigma_vector_with_coupling(
    tau: &[BigRational],
    inv_e2: &BigRational,
    vol: &BigRational,
    m: u32,
    slope_vol: &[BigRational],
) -> Result<SigmaVector> {
    if tau.len() != slope_vol.len() {
        return Err(Error::LengthMismatch {
            expected: tau.len(),
            found: slope_vol.len(),
        });
    }
    if inv_e2.is_negative() {
        return Err(precondition("1/e² must be nonnegative"));
    }
    if m == 0 {
        return Err(precondition("base dimension must be positive"));
    }
    let factor = rat(2 * m as i64) * inv_e2;
    Ok(tau
        .iter()
        .zip(slope_vol)
        .map(|(t, s)| PiPoly::from_coeffs(vec![t * vol, -(&factor * s)]))
        .collect())
}

/// Whether `v` lies in the relative interior of `Δ_I`, i.e. `v = Σ_{j∈I} λ_j Q_j`
/// with every `λ_j > 0`.
///
/// Solved as `max t` subject to `Σ μ_j Q_j + t·Σ Q_j = v`, `μ ≥ 0`, `t` free.
pub fn in_cone_interior(ws: &WeightSystem, i: IndexSet, v: &[PiPoly]) -> Result<bool> {
    ws.check_set(i)?;
    ws.check_vec(v)?;
    if i.is_empty() {
        return Err(precondition("index set must be nonempty"));
    }
    Ok(interior_unchecked(ws, i, v))
}

fn interior_unchecked(ws: &WeightSystem, i: IndexSet, v: &[PiPoly]) -> bool {
    let cols = ws.q_columns(i);
    let k = ws.k;
    let s: Vec<BigRational> = (0..k).map(|r| cols.iter().map(|c| c[r].clone()).sum()).collect();
    let mut all = cols.clone();
    all.push(s.clone());
    all.push(s.iter().map(|x| -x).collect());
    let a = from_columns(&all, k);
    let mut c = vec![BigRational::zero(); cols.len()];
    c.push(-BigRational::one());
    c.push(BigRational::one());
    match lp::minimize(&a, v, &c) {
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => true,
        LpOutcome::Optimal { value, .. } => value.sign() == Sign::Negative,
    }
}

/// Whether `v ∈ Δ_I` (the closed cone; `Δ_∅ = {0}`).
pub fn in_cone_closed(ws: &WeightSystem, i: IndexSet, v: &[PiPoly]) -> Result<bool> {
    ws.check_set(i)?;
    ws.check_vec(v)?;
    if i.is_empty() {
        return Ok(v.iter().all(PiPoly::is_zero));
    }
    let a = from_columns(&ws.q_columns(i), ws.k);
    Ok(lp::feasible(&a, v))
}

/// Whether `{Q_j : j ∈ I}` spans `ℝ^k`.
pub fn is_simple(ws: &WeightSystem, i: IndexSet) -> Result<bool> {
    ws.check_set(i)?;
    Ok(ws.rank_of(i) == ws.k)
}

/// Whether `{Q_j : j ∈ I}` generates the lattice `ℤ^k`. Requires `I` to span.
pub fn generates_lattice(ws: &WeightSystem, i: IndexSet) -> Result<bool> {
    if !is_simple(ws, i)? {
        return Err(precondition(format!("{i} does not span R^{}", ws.k)));
    }
    let m: Vec<Vec<BigInt>> = (0..ws.k)
        .map(|r| i.iter().map(|j| BigInt::from(ws.columns[j][r])).collect())
        .collect();
    let inv = linalg::smith_invariants(m);
    Ok(inv.len() == ws.k && inv.iter().all(|d| d.is_one()))
}

/// Condition (C1): `v ∈ Δ` and `v` avoids every proper subspace spanned by a
/// subset of the weights (including the zero subspace).
///
/// A proper subspace spanned by weights is spanned by an independent subset
/// of size below `k`, so only subsets of size `< k` are enumerated.
pub fn check_c1(ws: &WeightSystem, v: &[PiPoly]) -> Result<bool> {
    ws.check_vec(v)?;
    ws.check_cap()?;
    if !in_cone_closed(ws, ws.all(), v)? {
        return Ok(false);
    }
    for r in 0..ws.k {
        for s in subsets_of_size(ws.n(), r) {
            if linalg::in_span_pi(&ws.q_columns(s), v, ws.k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Condition (C2): every spanning subset of weights generates `ℤ^k`.
///
/// Equivalent to every `k`-subset having determinant `0` or `±1`: a spanning
/// set contains a basis whose lattice it contains.
pub fn check_c2(ws: &WeightSystem) -> Result<bool> {
    ws.check_cap()?;
    for s in subsets_of_size(ws.n(), ws.k) {
        let d = linalg::det(&from_columns(&ws.q_columns(s), ws.k));
        if !d.is_zero() && d.abs() != BigRational::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether a solution with section support `I_φ` can exist: `v` interior to
/// `Δ_{I_φ}` (for empty support, `v = 0`).
pub fn hk_is_stable(ws: &WeightSystem, i_phi: IndexSet, v: &[PiPoly]) -> Result<bool> {
    if i_phi.is_empty() {
        ws.check_vec(v)?;
        return Ok(v.iter().all(PiPoly::is_zero));
    }
    in_cone_interior(ws, i_phi, v)
}

/// Unique expansion `v = Σ λ_j Q_j` for a square weight system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub lambda: Vec<PiPoly>,
    /// Indices with `λ_j > 0`.
    pub plus: IndexSet,
    /// Indices with `λ_j = 0`.
    pub zero: IndexSet,
}

/// Decomposes `v` in the basis of a square (`n = k`) weight system.
/// Returns `Error::Infeasible` when some coefficient is negative.
pub fn sigma_decomposition_square(ws: &WeightSystem, v: &[PiPoly]) -> Result<SquareDecomposition> {
    ws.check_vec(v)?;
    if ws.n() != ws.k {
        return Err(precondition("decomposition requires n = k"));
    }
    let a = from_columns(&ws.q_columns(ws.all()), ws.k);
    let lambda = linalg::solve_pi(&a, v).ok_or(Error::Infeasible)?;
    let mut plus = IndexSet::empty();
    let mut zero = IndexSet::empty();
    for (j, l) in lambda.iter().enumerate() {
        match l.sign() {
            Sign::Negative => return Err(Error::Infeasible),
            Sign::Zero => zero = zero.union(IndexSet::from_indices(&[j])),
            Sign::Positive => plus = plus.union(IndexSet::from_indices(&[j])),
        }
    }
    Ok(SquareDecomposition { lambda, plus, zero })
}

/// Lexicographically smallest `k`-subset `I` with `v` interior to `Δ_I`.
pub fn minimal_support(ws: &WeightSystem, v: &[PiPoly]) -> Result<IndexSet> {
    ws.check_vec(v)?;
    ws.check_cap()?;
    for s in subsets_of_size(ws.n(), ws.k) {
        if interior_unchecked(ws, s, v) {
            return Ok(s);
        }
    }
    Err(Error::NotFound)
}

/// Interior flag for every subset, indexed by bit mask (index 0 is the empty set,
/// interior iff `v = 0`).
pub fn interior_table(ws: &WeightSystem, v: &[PiPoly]) -> Result<Vec<bool>> {
    ws.check_vec(v)?;
    ws.check_cap()?;
    Ok(all_subsets(ws.n())
        .map(|s| {
            if s.is_empty() {
                v.iter().all(PiPoly::is_zero)
            } else {
                linalg::in_span_pi(&ws.q_columns(s), v, ws.k) && interior_unchecked(ws, s, v)
            }
        })
        .collect())
}

/// Where stability switches off as the coupling `u = 1/e²` grows.
///
/// Writing `σ(u) = τ·vol − 2m·u·π·slope`, the substitution `w = u·π` makes the
/// problem rational: `σ` is interior exactly for `0 ≤ w < w*`, so
/// `u* = w*/π` and stability holds for `e² > π/w*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Threshold {
    /// Interior for every coupling.
    Unbounded,
    /// Interior exactly for `u < w_star/π`.
    Bounded { w_star: BigRational },
}

impl Threshold {
    /// Smallest `e²` for which the model is stable (`None` if unbounded or `w* = 0`).
    pub fn e2_min(&self) -> Option<PiPoly> {
        match self {
            Threshold::Bounded { w_star } if w_star.is_positive() => Some(PiPoly::monomial(w_star.recip(), 1)),
            _ => None,
        }
    }

    /// Human form of `u*`, e.g. `1/(2π)`.
    pub fn u_star_text(&self) -> String {
        match self {
            Threshold::Unbounded => "∞".into(),
            Threshold::Bounded { w_star } => {
                if w_star.is_zero() {
                    "0".into()
                } else if w_star.numer().is_one() {
                    format!("1/({}π)", short_or_empty(&w_star.denom().clone().into()))
                } else {
                    format!(
                        "{}/({}π)",
                        w_star.numer(),
                        short_or_empty(&w_star.denom().clone().into())
                    )
                }
            }
        }
    }
}

fn short_or_empty(d: &BigInt) -> String {
    if d.is_one() {
        String::new()
    } else {
        d.to_string()
    }
}

/// Computes the coupling threshold for support `I`.
pub fn stability_threshold(
    ws: &WeightSystem,
    i: IndexSet,
    tau: &[BigRational],
    vol: &BigRational,
    m: u32,
    slope_vol: &[BigRational],
) -> Result<Threshold> {
    ws.check_set(i)?;
    if tau.len() != ws.k || slope_vol.len() != ws.k {
        return Err(Error::LengthMismatch {
            expected: ws.k,
            found: tau.len().min(slope_vol.len()),
        });
    }
    let a: Vec<PiPoly> = tau.iter().map(|t| PiPoly::constant(t * vol)).collect();
    if i.is_empty() || !in_cone_interior(ws, i, &a)? {
        return Err(Error::NoThreshold);
    }
    let b: Vec<BigRational> = slope_vol.iter().map(|s| -(rat(2 * m as i64) * s)).collect();
    let cols = ws.q_columns(i);
    if !linalg::in_span(&cols, &b, ws.k) {
        return Ok(Threshold::Bounded {
            w_star: BigRational::zero(),
        });
    }
    // max w  s.t.  Σ λ_j Q_j − w·b = a,  λ, w ≥ 0.
    let mut all = cols;
    all.push(b.iter().map(|x| -x).collect());
    let mat = from_columns(&all, ws.k);
    let mut c = vec![BigRational::zero(); all.len()];
    *c.last_mut().unwrap() = -BigRational::one();
    match lp::minimize(&mat, &a, &c) {
        LpOutcome::Unbounded => Ok(Threshold::Unbounded),
        LpOutcome::Optimal { value, .. } => Ok(Threshold::Bounded {
            w_star: -value.as_rational().expect("rational LP has rational optimum"),
        }),
        LpOutcome::Infeasible => unreachable!("w = 0 is feasible"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::frac;
    use proptest::prelude::*;

    fn ws(k: usize, cols: &[&[i64]]) -> WeightSystem {
        WeightSystem::new(k, cols.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<PiPoly> {
        xs.iter().map(|&x| PiPoly::from_int(x)).collect()
    }

    fn ix(xs: &[usize]) -> IndexSet {
        IndexSet::from_indices(xs)
    }

    #[test]
    fn sigma_examples() {
        let s = sigma_vector(&[rat(2)], &rat(1), &rat(1), 1, &[rat(1)]).unwrap();
        assert_eq!(s, vec![PiPoly::from_coeffs(vec![rat(2), rat(-2)])]);
        let s = sigma_vector(&[rat(5)], &rat(1), &rat(2), 1, &[rat(0)]).unwrap();
        assert_eq!(s, v(&[10]));
        let s = sigma_vector(&[rat(100)], &rat(1), &rat(1), 2, &[rat(3)]).unwrap();
        assert_eq!(s, vec![PiPoly::from_coeffs(vec![rat(100), rat(-12)])]);
        assert!(sigma_vector(&[rat(1)], &rat(0), &rat(1), 1, &[rat(1)]).is_err());
        assert!(sigma_vector(&[rat(1), rat(2)], &rat(1), &rat(1), 1, &[rat(1)]).is_err());
    }

    #[test]
    fn interior_examples() {
        assert!(in_cone_interior(&ws(1, &[&[1]]), ix(&[0]), &v(&[2])).unwrap());
        let id = ws(2, &[&[1, 0], &[0, 1]]);
        assert!(!in_cone_interior(&id, ix(&[0, 1]), &v(&[1, 0])).unwrap());
        assert!(in_cone_interior(&id, ix(&[0]), &v(&[1, 0])).unwrap());
        let tri = ws(2, &[&[1, 0], &[0, 1], &[-1, -1]]);
        assert!(in_cone_interior(&tri, tri.all(), &v(&[0, 0])).unwrap());
        assert!(in_cone_interior(&tri, tri.all(), &v(&[-5, 3])).unwrap());
        assert!(in_cone_interior(&id, IndexSet::empty(), &v(&[1, 0])).is_err());
    }

    #[test]
    fn closed_examples() {
        let three = ws(1, &[&[1], &[1], &[1]]);
        let s = vec![PiPoly::from_coeffs(vec![rat(2), rat(-2)])];
        assert!(!in_cone_closed(&three, three.all(), &s).unwrap());
        let id = ws(2, &[&[1, 0], &[0, 1]]);
        assert!(in_cone_closed(&id, id.all(), &v(&[1, 0])).unwrap());
        assert!(in_cone_closed(&id, IndexSet::empty(), &v(&[0, 0])).unwrap());
        assert!(!in_cone_closed(&id, IndexSet::empty(), &v(&[0, 1])).unwrap());
    }

    #[test]
    fn simplicity_and_lattice() {
        let w = ws(2, &[&[1, 1], &[2, 2], &[1, 0]]);
        assert!(!is_simple(&w, ix(&[0, 1])).unwrap());
        assert!(is_simple(&w, ix(&[0, 2])).unwrap());
        assert!(generates_lattice(&w, ix(&[0, 1])).is_err());
        let w = ws(2, &[&[2, 0], &[0, 1]]);
        assert!(!generates_lattice(&w, w.all()).unwrap());
        let w = ws(2, &[&[1, 1], &[1, -1], &[1, 0]]);
        assert!(generates_lattice(&w, w.all()).unwrap());
        assert!(!generates_lattice(&w, ix(&[0, 1])).unwrap());
    }

    #[test]
    fn c1_c2_examples() {
        let w = ws(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert!(check_c1(&w, &v(&[2, 3])).unwrap());
        assert!(!check_c1(&w, &v(&[2, 2])).unwrap());
        assert!(check_c2(&w).unwrap());
        let id = ws(2, &[&[1, 0], &[0, 1]]);
        assert!(!check_c1(&id, &v(&[1, 0])).unwrap());
        assert!(!check_c1(&id, &v(&[0, 0])).unwrap());
        assert!(!check_c2(&ws(1, &[&[1], &[2]])).unwrap());
        assert!(check_c2(&ws(1, &[&[1], &[1], &[1]])).unwrap());
    }

    #[test]
    fn hk_examples() {
        let id = ws(2, &[&[1, 0], &[0, 1]]);
        assert!(!hk_is_stable(&id, IndexSet::empty(), &v(&[1, 0])).unwrap());
        assert!(hk_is_stable(&id, IndexSet::empty(), &v(&[0, 0])).unwrap());
        assert!(hk_is_stable(&id, ix(&[0]), &v(&[1, 0])).unwrap());
        assert!(!hk_is_stable(&id, ix(&[1]), &v(&[1, 0])).unwrap());
    }

    #[test]
    fn square_decomposition() {
        let w = ws(2, &[&[1, 1], &[1, -1]]);
        let d = sigma_decomposition_square(&w, &v(&[2, 0])).unwrap();
        assert_eq!(d.lambda, v(&[1, 1]));
        assert_eq!(d.plus, w.all());
        let d = sigma_decomposition_square(&w, &v(&[1, 1])).unwrap();
        assert_eq!(d.lambda, v(&[1, 0]));
        assert_eq!(d.zero, ix(&[1]));
        assert_eq!(sigma_decomposition_square(&w, &v(&[0, 2])), Err(Error::Infeasible));
    }

    #[test]
    fn minimal_support_example() {
        let w = ws(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(minimal_support(&w, &v(&[1, 2])).unwrap(), ix(&[0, 1]));
        assert_eq!(minimal_support(&w, &v(&[1, 1])).unwrap(), ix(&[0, 1]));
        assert_eq!(minimal_support(&w, &v(&[-1, 1])), Err(Error::NotFound));
    }

    #[test]
    fn threshold_examples() {
        let w = ws(1, &[&[1]]);
        let t = stability_threshold(&w, w.all(), &[rat(1)], &rat(1), 1, &[rat(1)]).unwrap();
        assert_eq!(t, Threshold::Bounded { w_star: frac(1, 2) });
        assert_eq!(t.u_star_text(), "1/(2π)");
        assert_eq!(t.e2_min().unwrap(), PiPoly::monomial(rat(2), 1));
        let t = stability_threshold(&w, w.all(), &[rat(1)], &rat(1), 1, &[rat(-1)]).unwrap();
        assert_eq!(t, Threshold::Unbounded);
        assert_eq!(
            stability_threshold(&w, w.all(), &[rat(-1)], &rat(1), 1, &[rat(1)]),
            Err(Error::NoThreshold)
        );
        // Direction leaving the span of the support: threshold at zero.
        let w2 = ws(2, &[&[1, 0], &[0, 1]]);
        let t = stability_threshold(&w2, ix(&[0]), &[rat(1), rat(0)], &rat(1), 1, &[rat(0), rat(1)]).unwrap();
        assert_eq!(t, Threshold::Bounded { w_star: rat(0) });
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            WeightSystem::new(2, vec![vec![1, 1], vec![2, 2]]),
            Err(Error::NotEffective { .. })
        ));
        assert!(matches!(
            WeightSystem::new(2, vec![vec![1]]),
            Err(Error::LengthMismatch { .. })
        ));
        let big = WeightSystem::new(1, vec![vec![1]; 25]).unwrap();
        assert!(matches!(check_c2(&big), Err(Error::TooManySections { .. })));
    }

    fn arb_ws() -> impl Strategy<Value = WeightSystem> {
        (1usize..=2)
            .prop_flat_map(|k| {
                (
                    Just(k),
                    prop::collection::vec(prop::collection::vec(-2i64..=2, k), k..5),
                )
            })
            .prop_filter_map("effective", |(k, cols)| WeightSystem::new(k, cols).ok())
    }

    proptest! {
        #[test]
        fn lattice_implies_simple(w in arb_ws(), mask in 0u64..32) {
            let i = IndexSet::from_bits(mask & IndexSet::full(w.n()).bits());
            if let Ok(true) = generates_lattice(&w, i) {
                prop_assert!(is_simple(&w, i).unwrap());
            }
        }

        #[test]
        fn interior_implies_closed(w in arb_ws(), mask in 1u64..32, xs in prop::collection::vec(-3i64..=3, 2)) {
            let i = IndexSet::from_bits(mask & IndexSet::full(w.n()).bits());
            prop_assume!(!i.is_empty());
            let x: Vec<PiPoly> = xs[..w.k()].iter().map(|&a| PiPoly::from_int(a)).collect();
            if in_cone_interior(&w, i, &x).unwrap() {
                prop_assert!(in_cone_closed(&w, i, &x).unwrap());
            }
        }
    }
}
