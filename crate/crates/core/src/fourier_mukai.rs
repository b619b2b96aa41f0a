//! Fourier–Mukai calculus on a principally split abelian variety.
//!
//! `M = ℂ^m/Λ` has real coordinates `x^1, …, x^{2m}` with complex structure
//! pairing `x^j` and `x^{m+j}`; the dual torus `M̂` has coordinates `x*_α`.
//! Both tori are oriented by their complex structures, so the fibre class is
//! `dx^1∧dx^{m+1}∧dx^2∧dx^{m+2}∧⋯` (and likewise on `M̂`). A line bundle `L`
//! with `c₁(L) = Σ δ_j dx^j∧dx^{m+j}` transforms into a vector bundle `L̂` on
//! `M̂` of rank `∏ δ_j`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::cohomring::{
    fibre_integrate, formal_series, indexed, invert_unit, series_with_coefficients, tensor_presentation, RingElement,
    RingPresentation, Series, TopClass,
};
use crate::error::{precondition, Error, Result};
use crate::scalars::{factorial, rat, PiPoly};

/// Abelian variety with a diagonal polarisation `L` and Kähler class
/// `[ω] = Σ λ_j dx^j∧dx^{m+j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianVarietyData {
    pub m: usize,
    pub deltas: Vec<i64>,
    pub lambdas: Vec<BigRational>,
}

impl AbelianVarietyData {
    pub fn new(m: usize, deltas: Vec<i64>, lambdas: Vec<BigRational>) -> Result<Self> {
        if m == 0 || m > 16 {
            return Err(precondition("abelian variety dimension must be between 1 and 16"));
        }
        if deltas.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                found: deltas.len(),
            });
        }
        if lambdas.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                found: lambdas.len(),
            });
        }
        if deltas.iter().any(|&d| d < 1) {
            return Err(precondition("polarisation degrees δ_j must be at least 1"));
        }
        if lambdas.iter().any(|l| !l.is_positive()) {
            return Err(Error::NonPositiveVolume);
        }
        Ok(AbelianVarietyData { m, deltas, lambdas })
    }

    /// `r = ∏ δ_j`, the rank of the transform.
    pub fn rank(&self) -> BigInt {
        self.deltas.iter().map(|&d| BigInt::from(d)).product()
    }

    /// `Vol(M) = ∏ λ_j`.
    pub fn volume(&self) -> BigRational {
        self.lambdas.iter().product()
    }
}

/// `H*(M)`: exterior algebra on `dx₁, …, dx₂ₘ`.
pub fn torus_presentation(m: usize) -> Arc<RingPresentation> {
    RingPresentation::exterior((1..=2 * m).map(|i| indexed("dx", i)).collect())
        .into_arc()
        .expect("valid exterior algebra")
}

/// `H*(M̂)`: exterior algebra on `dx*₁, …, dx*₂ₘ`.
pub fn dual_torus_presentation(m: usize) -> Arc<RingPresentation> {
    RingPresentation::exterior((1..=2 * m).map(|i| indexed("dx*", i)).collect())
        .into_arc()
        .expect("valid exterior algebra")
}

/// Complex orientation class `dx_1 dx_{m+1} dx_2 dx_{m+2} ⋯` on a torus whose
/// odd generators start at `offset`.
pub fn torus_top(m: usize, offset: usize) -> TopClass {
    TopClass::odd_only((0..m).flat_map(|j| [offset + j, offset + m + j]).collect())
}

/// `Σ c_j·g_j g_{m+j}` for odd generators starting at `offset`.
pub(crate) fn pairing_form(p: &Arc<RingPresentation>, offset: usize, m: usize, coeffs: &[PiPoly]) -> RingElement {
    let mut acc = RingElement::zero(p);
    for (j, c) in coeffs.iter().enumerate() {
        acc = acc + RingElement::odd_word(p, &[offset + j, offset + m + j]).scale(c);
    }
    acc
}

/// `[ω] = Σ λ_j dx^j∧dx^{m+j}` on `M`.
pub fn kahler_form(av: &AbelianVarietyData) -> RingElement {
    let p = torus_presentation(av.m);
    let ls: Vec<PiPoly> = av.lambdas.iter().cloned().map(PiPoly::constant).collect();
    pairing_form(&p, 0, av.m, &ls)
}

/// `c₁(L) = Σ δ_j dx^j∧dx^{m+j}` on `M`.
pub fn line_bundle_class(av: &AbelianVarietyData) -> RingElement {
    let p = torus_presentation(av.m);
    let ds: Vec<PiPoly> = av.deltas.iter().map(|&d| PiPoly::from_int(d)).collect();
    pairing_form(&p, 0, av.m, &ds)
}

/// `ch(L̂) = ∏_k (δ_k − dx*_k∧dx*_{m+k})`.
pub fn ch_transform(av: &AbelianVarietyData) -> RingElement {
    let p = dual_torus_presentation(av.m);
    let mut acc = RingElement::one(&p);
    for (k, &d) in av.deltas.iter().enumerate() {
        let f = RingElement::scalar(&p, PiPoly::from_int(d)) - RingElement::odd_word(&p, &[k, av.m + k]);
        acc = &acc * &f;
    }
    acc
}

/// `H*(M × M̂)` with `M` first, and `c₁(𝒫) = Σ_α dx^α∧dx*_α`.
pub fn poincare_class(m: usize) -> (Arc<RingPresentation>, RingElement) {
    let t = tensor_presentation(&torus_presentation(m), &dual_torus_presentation(m)).expect("disjoint names");
    let mut c1 = RingElement::zero(&t);
    for a in 0..2 * m {
        c1 = c1 + RingElement::odd_word(&t, &[a, 2 * m + a]);
    }
    (t, c1)
}

/// `ch(L̂) = p₂*(ch(𝒫)∧p₁*ch(L))`, computed by fibre integration over `M`.
pub fn ch_transform_via_poincare(av: &AbelianVarietyData) -> Result<RingElement> {
    let (t, c1p) = poincare_class(av.m);
    let chp = formal_series(Series::Exp, &c1p)?;
    let chl = formal_series(Series::Exp, &line_bundle_class(av).embed(&t)?)?;
    let pushed = fibre_integrate(&(&chp * &chl), &torus_top(av.m, 0))?;
    pushed.embed(&dual_torus_presentation(av.m))
}

/// `ch_j`: the degree-`2j` component.
pub fn ch_component(ch: &RingElement, j: u32) -> RingElement {
    ch.degree_part(2 * j)
}

/// `c₁(L̂) = −Σ_k (∏_{i≠k} δ_i) dx*_k∧dx*_{m+k}`, written down directly.
pub fn first_chern_of_transform(av: &AbelianVarietyData) -> RingElement {
    let p = dual_torus_presentation(av.m);
    let coeffs: Vec<PiPoly> = (0..av.m)
        .map(|k| {
            let prod: i64 = av
                .deltas
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &d)| d)
                .product();
            PiPoly::from_int(-prod)
        })
        .collect();
    pairing_form(&p, 0, av.m, &coeffs)
}

/// `c = exp[Σ_{j≥1} (−1)^{j−1}(j−1)!·ch_j]`.
pub fn chern_from_character(ch: &RingElement) -> Result<RingElement> {
    let p = ch.presentation().clone();
    let r = ch.scalar_part();
    if r.as_rational().is_none_or(|q| !q.is_integer() || !q.is_positive()) {
        return Err(precondition(format!("rank {r} is not a positive integer")));
    }
    let mut x = RingElement::zero(&p);
    for j in 1..=p.top_degree() / 2 {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let f = BigRational::from_integer(factorial(j as u64 - 1) * sign);
        x = x + ch_component(ch, j).scale_rational(&f);
    }
    formal_series(Series::Exp, &x)
}

/// Exponent `Σ_k (−1)^{k(k−1)/2}(r/k)(c₁/r)^k` shared by the closed forms.
fn closed_form_exponent(
    r: &BigInt,
    c1: &RingElement,
    exp_coeffs: &dyn Fn(usize) -> BigRational,
) -> Result<RingElement> {
    let p = c1.presentation().clone();
    let rq = BigRational::from_integer(r.clone());
    let x = c1.scale_rational(&rq.recip());
    let mut sum = RingElement::zero(&p);
    let mut xk = RingElement::one(&p);
    for k in 1..=p.top_degree() / 2 {
        xk = &xk * &x;
        let sign = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
        sum = sum + xk.scale_rational(&(&rq * BigRational::new(sign.into(), (k as i64).into())));
    }
    series_with_coefficients(&sum, exp_coeffs)
}

/// `c(L̂) = exp[Σ_{k=1}^{m} (−1)^{k(k−1)/2}(r/k)(c₁/r)^k]`.
pub fn chern_closed_form(r: &BigInt, c1: &RingElement) -> Result<RingElement> {
    closed_form_exponent(r, c1, &|k| Series::Exp.coefficient(k))
}

/// Closed form with an arbitrary exponential series; used to exercise the
/// self-test's fault detection.
pub fn chern_closed_form_with(
    r: &BigInt,
    c1: &RingElement,
    exp_coeffs: &dyn Fn(usize) -> BigRational,
) -> Result<RingElement> {
    closed_form_exponent(r, c1, exp_coeffs)
}

/// `c(L̂) = exp(r·arctan(c₁/r))·(1 + (c₁/r)²)^{−r/2}`, assembled from the
/// arctan and log series.
pub fn chern_arctan_form(r: &BigInt, c1: &RingElement) -> Result<RingElement> {
    let rq = BigRational::from_integer(r.clone());
    let x = c1.scale_rational(&rq.recip());
    let at = formal_series(Series::Arctan, &x)?.scale_rational(&rq);
    let lg = formal_series(Series::Log1p, &(&x * &x))?.scale_rational(&(-&rq / rat(2)));
    formal_series(Series::Exp, &(at + lg))
}

/// `c(L̂) = (1 + c₁/r)^r`, which is what the character formula integrates to:
/// the components satisfy `ch_j = ch₁^j/(j!·r^{j−1})`, so
/// `Σ (−1)^{j−1}(j−1)!·ch_j = r·log(1 + c₁/r)`.
pub fn chern_power_form(r: &BigInt, c1: &RingElement) -> Result<RingElement> {
    let rq = BigRational::from_integer(r.clone());
    let x = c1.scale_rational(&rq.recip());
    let lg = formal_series(Series::Log1p, &x)?.scale_rational(&rq);
    formal_series(Series::Exp, &lg)
}

/// Total Segre class `s = c⁻¹`.
pub fn segre(c: &RingElement) -> Result<RingElement> {
    invert_unit(c)
}

/// Evaluates the signed recursion
/// `ch_j = (−1)^j/(j·∏δ)·ch₁·ch_{j−1} = (−1)^{(j+2)(j−1)/2}/(j!·(∏δ)^{j−1})·ch₁^j`.
///
/// For the product formula of [`ch_transform`] both equalities hold for even
/// `j` only; for odd `j ≥ 3` the true relation has no sign (see
/// [`unsigned_recursion_check`]).
pub fn recursion_check(ch: &RingElement, deltas: &[i64], j: u32) -> Result<bool> {
    let (lhs, prod, power, r) = recursion_parts(ch, deltas, j)?;
    let sign = if j % 2 == 0 { 1 } else { -1 };
    let rhs1 = prod.scale_rational(&(BigRational::new(sign.into(), BigInt::from(j)) / &r));
    let e = (j + 2) * (j - 1) / 2;
    let sign2 = if e % 2 == 0 { 1 } else { -1 };
    let rhs2 = power.scale_rational(&(rat(sign2) / power_denominator(&r, j)));
    Ok(lhs == rhs1 && lhs == rhs2)
}

/// Checks `ch_j = ch₁·ch_{j−1}/(j·∏δ) = ch₁^j/(j!·(∏δ)^{j−1})`.
pub fn unsigned_recursion_check(ch: &RingElement, deltas: &[i64], j: u32) -> Result<bool> {
    let (lhs, prod, power, r) = recursion_parts(ch, deltas, j)?;
    let rhs1 = prod.scale_rational(&(BigRational::new(1.into(), BigInt::from(j)) / &r));
    let rhs2 = power.scale_rational(&power_denominator(&r, j).recip());
    Ok(lhs == rhs1 && lhs == rhs2)
}

fn power_denominator(r: &BigRational, j: u32) -> BigRational {
    let mut den = BigRational::from_integer(factorial(j as u64));
    for _ in 0..j - 1 {
        den *= r;
    }
    den
}

fn recursion_parts(
    ch: &RingElement,
    deltas: &[i64],
    j: u32,
) -> Result<(RingElement, RingElement, RingElement, BigRational)> {
    let m = deltas.len() as u32;
    if j < 2 || j > m {
        return Err(precondition(format!("recursion index {j} outside 2..={m}")));
    }
    let r = BigRational::from_integer(deltas.iter().map(|&d| BigInt::from(d)).product());
    let ch1 = ch_component(ch, 1);
    Ok((ch_component(ch, j), &ch1 * &ch_component(ch, j - 1), ch1.pow(j), r))
}

/// `𝓕([ω]^{m−1}/(m−1)!) = p₂*(ch(𝒫)∧p₁*[ω]^{m−1}/(m−1)!)`, a degree-2 class on `M̂`.
pub fn fm_kahler_power(av: &AbelianVarietyData) -> Result<RingElement> {
    let (t, c1p) = poincare_class(av.m);
    let chp = formal_series(Series::Exp, &c1p)?;
    let w = kahler_form(av).embed(&t)?;
    let wp = w
        .pow(av.m as u32 - 1)
        .scale_rational(&BigRational::from_integer(factorial(av.m as u64 - 1)).recip());
    let pushed = fibre_integrate(&(&chp * &wp), &torus_top(av.m, 0))?;
    pushed.embed(&dual_torus_presentation(av.m))
}

/// `proj_*(η^l) = s_{l−r+1}` for a projective bundle of fibre dimension `r − 1`.
pub fn segre_pushforward(l: u32, s: &RingElement, r: u32) -> RingElement {
    if l + 1 < r {
        return RingElement::zero(s.presentation());
    }
    s.degree_part(2 * (l + 1 - r))
}

/// `H*(ℙ(V))` over `base`: adds `η` with `η^R = −Σ_k c_k(V) η^{R−k}`.
pub fn projectivization(c: &RingElement, rank: u32, name: &str) -> Result<Arc<RingPresentation>> {
    if rank == 0 {
        return Err(precondition("projectivisation of a rank-zero bundle"));
    }
    if !c.scalar_part().is_one() {
        return Err(precondition("total Chern class must have scalar part 1"));
    }
    let base = c.presentation();
    let coeffs: Vec<RingElement> = (1..=rank).map(|k| c.degree_part(2 * k)).collect();
    RingPresentation::extend_with_relation(base, name, 2, &coeffs, base.top_degree() + 2 * (rank - 1))
}

/// Cohomology of `ℙ(L̂)`.
pub fn projective_bundle_presentation(av: &AbelianVarietyData) -> Result<Arc<RingPresentation>> {
    sum_bundle_presentation(av, 1)
}

/// Cohomology of `ℙ(L̂^{⊕n})`, whose total Chern class is `c(L̂)^n`.
pub fn sum_bundle_presentation(av: &AbelianVarietyData, n: u32) -> Result<Arc<RingPresentation>> {
    if n == 0 {
        return Err(precondition("need at least one copy of the bundle"));
    }
    let rank = u32::try_from(av.rank() * n).map_err(|_| precondition("rank too large"))?;
    let c = chern_from_character(&ch_transform(av))?.pow(n);
    projectivization(&c, rank, "η")
}

/// Integral over `M̂` (complex orientation).
pub fn integrate_dual(x: &RingElement, m: usize) -> Result<PiPoly> {
    crate::cohomring::integrate(x, &torus_top(m, 0))
}

/// `θ = Σ_j dx*_j∧dx*_{m+j}`; for `m = 1` the positive generator of `H²(M̂)`.
pub fn theta(m: usize) -> RingElement {
    let p = dual_torus_presentation(m);
    let ones = vec![PiPoly::one(); m];
    pairing_form(&p, 0, m, &ones)
}

/// `Vol(M)·(1/m)Σ_j δ_j/λ_j`, i.e. `∫ c₁(L)∧ω^{m−1}/m!`.
pub fn slope_volume(av: &AbelianVarietyData) -> BigRational {
    let mut s = BigRational::from_integer(0.into());
    for j in 0..av.m {
        let mut t = BigRational::from_integer(av.deltas[j].into());
        for (i, l) in av.lambdas.iter().enumerate() {
            if i != j {
                t *= l;
            }
        }
        s += t;
    }
    s / rat(av.m as i64)
}
