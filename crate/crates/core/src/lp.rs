//! Two-phase simplex with Bland's rule.
//!
//! Constraint and cost coefficients are rational while the right-hand side
//! lives in ℚ[π]. Pivots are always taken on constraint entries, so the
//! tableau body stays rational and only the right-hand column and the
//! objective value carry powers of π. Ratio tests compare elements of ℚ[π]
//! with the exact sign oracle.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::scalars::{PiPoly, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: PiPoly, x: Vec<PiPoly> },
}

struct Tableau {
    body: Vec<Vec<BigRational>>,
    rhs: Vec<PiPoly>,
    basis: Vec<usize>,
    cost: Vec<BigRational>,
    /// Negated objective value.
    obj: PiPoly,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.body[r][c].recip();
        for x in self.body[r].iter_mut() {
            *x = &*x * &inv;
        }
        self.rhs[r] = self.rhs[r].scale(&inv);
        for i in 0..self.body.len() {
            if i == r || self.body[i][c].is_zero() {
                continue;
            }
            let f = self.body[i][c].clone();
            for j in 0..self.body[i].len() {
                if !self.body[r][j].is_zero() {
                    let t = &self.body[r][j] * &f;
                    self.body[i][j] -= t;
                }
            }
            let t = self.rhs[r].scale(&f);
            self.rhs[i] -= &t;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for j in 0..self.cost.len() {
                if !self.body[r][j].is_zero() {
                    let t = &self.body[r][j] * &f;
                    self.cost[j] -= t;
                }
            }
            let t = self.rhs[r].scale(&f);
            self.obj -= &t;
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the columns in `allowed`. Returns `false` if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, PiPoly)> = None;
            for i in 0..self.body.len() {
                if !self.body[i][c].is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].scale(&self.body[i][c].recip());
                let better = match &best {
                    None => true,
                    Some((bi, br)) => match (&ratio - br).sign() {
                        Sign::Negative => true,
                        Sign::Zero => self.basis[i] < self.basis[*bi],
                        Sign::Positive => false,
                    },
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Minimizes `c·x` subject to `A x = b`, `x ≥ 0`.
pub(crate) fn minimize(a: &[Vec<BigRational>], b: &[PiPoly], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut body = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].sign() == Sign::Negative;
        let mut r: Vec<BigRational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|j| {
            if j == i {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            }
        }));
        body.push(r);
        rhs.push(if flip { -&b[i] } else { b[i].clone() });
    }
    // Phase one: minimize the sum of artificials.
    let mut cost = vec![BigRational::zero(); n + m];
    let mut obj = PiPoly::zero();
    for i in 0..m {
        for j in 0..n {
            cost[j] -= body[i][j].clone();
        }
        obj -= &rhs[i];
    }
    let mut t = Tableau {
        body,
        rhs,
        basis: (n..n + m).collect(),
        cost,
        obj,
    };
    t.optimize(n + m);
    if !t.obj.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.body.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.body[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.body.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    for row in t.body.iter_mut() {
        row.truncate(n);
    }
    // Phase two.
    let mut cost = c.to_vec();
    let mut obj = PiPoly::zero();
    for (i, &bv) in t.basis.iter().enumerate() {
        let cb = c[bv].clone();
        if cb.is_zero() {
            continue;
        }
        for j in 0..n {
            let d = &t.body[i][j] * &cb;
            cost[j] -= d;
        }
        obj -= &t.rhs[i].scale(&cb);
    }
    t.cost = cost;
    t.obj = obj;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![PiPoly::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        x[bv] = t.rhs[i].clone();
    }
    LpOutcome::Optimal { value: -t.obj, x }
}

/// Feasibility of `A x = b`, `x ≥ 0`.
pub(crate) fn feasible(a: &[Vec<BigRational>], b: &[PiPoly]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    !matches!(minimize(a, b, &vec![BigRational::zero(); n]), LpOutcome::Infeasible)
}
