//! Small exact linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalars::PiPoly;

pub(crate) type QMat = Vec<Vec<BigRational>>;

pub(crate) fn to_q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

/// Matrix whose columns are the given vectors (each of length `k`).
pub(crate) fn from_columns(cols: &[Vec<BigRational>], k: usize) -> QMat {
    (0..k).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(m: &QMat) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Rank of a set of column vectors.
pub(crate) fn rank_of_columns(cols: &[Vec<BigRational>], k: usize) -> usize {
    if cols.is_empty() {
        return 0;
    }
    rank(&from_columns(cols, k))
}

/// Some solution of `A x = b`, or `None` if inconsistent.
pub(crate) fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// Basis of the right null space of `a` with `n` columns.
#[cfg(test)]
pub(crate) fn nullspace(a: &QMat, n: usize) -> Vec<Vec<BigRational>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the real span of `cols`.
pub(crate) fn in_span(cols: &[Vec<BigRational>], v: &[BigRational], k: usize) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if cols.is_empty() {
        return false;
    }
    solve(&from_columns(cols, k), v).is_some()
}

/// Span membership for a vector with entries in ℚ[π]. The span is rational,
/// so this holds iff every π-coefficient vector lies in it.
pub(crate) fn in_span_pi(cols: &[Vec<BigRational>], v: &[PiPoly], k: usize) -> bool {
    let deg = v.iter().map(|x| x.coeffs().len()).max().unwrap_or(0);
    (0..deg).all(|i| {
        let vi: Vec<BigRational> = v.iter().map(|x| x.coeff(i)).collect();
        in_span(cols, &vi, k)
    })
}

/// Solves `A x = v` for `v ∈ ℚ[π]^k` coefficientwise, assuming a unique
/// solution when one exists (`A` of full column rank).
pub(crate) fn solve_pi(a: &QMat, v: &[PiPoly]) -> Option<Vec<PiPoly>> {
    let n = a.first().map_or(0, |r| r.len());
    let deg = v.iter().map(|x| x.coeffs().len()).max().unwrap_or(0);
    let mut out: Vec<Vec<BigRational>> = vec![Vec::new(); n];
    for i in 0..deg {
        let vi: Vec<BigRational> = v.iter().map(|x| x.coeff(i)).collect();
        let xi = solve(a, &vi)?;
        for (j, x) in xi.into_iter().enumerate() {
            out[j].push(x);
        }
    }
    Some(out.into_iter().map(PiPoly::from_coeffs).collect())
}

/// Nonzero invariant factors of an integer matrix (Smith normal form).
pub(crate) fn smith_invariants(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pick the smallest nonzero entry in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    for j in t..cols {
                        let d = &q * &m[t][j];
                        m[i][j] -= d;
                    }
                    if !m[i][t].is_zero() {
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    for i in t..rows {
                        let d = &q * &m[i][t];
                        m[i][j] -= d;
                    }
                    if !m[t][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                // Divisibility: fold any entry not divisible by the pivot into row t.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j].clone();
                            m[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Determinant of a square rational matrix.
pub(crate) fn det(m: &QMat) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let t = &a[c][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    d
}
