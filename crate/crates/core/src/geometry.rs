//! Base manifolds and the topological data of line bundles over them.
//!
//! Kähler classes are fixed by rational parameters (`[ω] = λ·c₁(E)` on
//! manifolds with cyclic Picard group, `λ[F] + δ[C]` on Hirzebruch surfaces,
//! `Σ λ_j dx^j∧dx^{m+j}` on abelian varieties), so volumes and slopes stay
//! rational.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cohomring::{integrate, RingElement};
use crate::error::{precondition, Error, Result};
use crate::fourier_mukai::{pairing_form, torus_presentation, torus_top};
use crate::scalars::{binomial, factorial, rat, PiPoly};

/// Sections and slope of one bundle on a [`ManifoldDescriptor::GenericSimplyConnected`] base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionData {
    pub r: BigInt,
    pub slope_vol: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldDescriptor {
    /// `ℂℙ^m` with `[ω] = λ·c₁(O(1))`.
    ProjectiveSpace { m: u32, lambda: BigRational },
    /// `Gr(n, k)`, `k`-planes in `ℂ^n`, with `[ω] = λ·c₁(E)` for the Plücker generator.
    Grassmannian { n: u32, k: u32, lambda: BigRational },
    /// `F_k` with `[ω] = λ[F] + δ[C]`, `F² = 0`, `F·C = 1`, `C² = −k`.
    Hirzebruch {
        k: u32,
        lambda: BigRational,
        delta: BigRational,
    },
    /// Abelian variety of dimension `lambdas.len()`.
    AbelianVariety { lambdas: Vec<BigRational> },
    /// Cyclic Picard group with `t_M = ∫ c₁(E)^m`; `sections[d] = dim H⁰(E^d)`.
    GenericPicZ {
        m: u32,
        t_m: BigInt,
        lambda: BigRational,
        sections: BTreeMap<i64, BigInt>,
    },
    /// Any simply connected base with bundle data supplied directly.
    GenericSimplyConnected {
        m: u32,
        vol: BigRational,
        table: Vec<SectionData>,
    },
}

/// Topology of a line bundle, in the form matching its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleDescriptor {
    /// `c₁(L) = d·c₁(E)`.
    Degree(i64),
    /// `c₁(L) = a[C] + b[F]` on a Hirzebruch surface.
    Bidegree(i64, i64),
    /// `c₁(L) = Σ δ_j dx^j∧dx^{m+j}` on an abelian variety.
    Deltas(Vec<i64>),
    /// Row of the supplied table.
    Index(usize),
}

/// `∫ c₁(L)∧ω^{m−1}/(m−1)!` and, for `m ≥ 2`, `∫ c₁(L)²∧ω^{m−2}/(m−2)!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersections {
    pub linear: BigRational,
    pub quadratic: Option<BigRational>,
}

impl ManifoldDescriptor {
    /// Checks the Kähler data and dimensions.
    pub fn validate(&self) -> Result<()> {
        let positive = |q: &BigRational| {
            if q.is_positive() {
                Ok(())
            } else {
                Err(Error::NonPositiveVolume)
            }
        };
        match self {
            ManifoldDescriptor::ProjectiveSpace { m, lambda } => {
                if *m == 0 {
                    return Err(precondition("projective space needs m ≥ 1"));
                }
                positive(lambda)
            }
            ManifoldDescriptor::Grassmannian { n, k, lambda } => {
                if *k == 0 || k >= n {
                    return Err(precondition(format!("Gr({n}, {k}) needs 0 < k < n")));
                }
                positive(lambda)
            }
            ManifoldDescriptor::Hirzebruch { k, lambda, delta } => {
                positive(lambda)?;
                positive(delta)?;
                positive(&hirzebruch_volume(*k, lambda, delta))
            }
            ManifoldDescriptor::AbelianVariety { lambdas } => {
                if lambdas.is_empty() || lambdas.len() > 16 {
                    return Err(precondition("abelian variety dimension must be between 1 and 16"));
                }
                lambdas.iter().try_for_each(positive)
            }
            ManifoldDescriptor::GenericPicZ {
                m,
                t_m,
                lambda,
                sections,
            } => {
                if *m == 0 {
                    return Err(precondition("manifold dimension must be positive"));
                }
                if !t_m.is_positive() {
                    return Err(precondition("t_M must be a positive integer"));
                }
                if sections.values().any(|r| r.is_negative()) {
                    return Err(precondition("section counts must be nonnegative"));
                }
                positive(lambda)
            }
            ManifoldDescriptor::GenericSimplyConnected { m, vol, table } => {
                if *m == 0 {
                    return Err(precondition("manifold dimension must be positive"));
                }
                if table.iter().any(|s| s.r.is_negative()) {
                    return Err(precondition("section counts must be nonnegative"));
                }
                positive(vol)
            }
        }
    }

    /// Complex dimension.
    pub fn dim(&self) -> u32 {
        match self {
            ManifoldDescriptor::ProjectiveSpace { m, .. } => *m,
            ManifoldDescriptor::Grassmannian { n, k, .. } => k * (n - k),
            ManifoldDescriptor::Hirzebruch { .. } => 2,
            ManifoldDescriptor::AbelianVariety { lambdas } => lambdas.len() as u32,
            ManifoldDescriptor::GenericPicZ { m, .. } | ManifoldDescriptor::GenericSimplyConnected { m, .. } => *m,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, ManifoldDescriptor::AbelianVariety { .. })
    }

    /// Picard group `ℤ` generated by a positive bundle.
    pub fn has_cyclic_picard(&self) -> bool {
        matches!(
            self,
            ManifoldDescriptor::ProjectiveSpace { .. }
                | ManifoldDescriptor::Grassmannian { .. }
                | ManifoldDescriptor::GenericPicZ { .. }
        )
    }

    /// Short human name, e.g. `CP^2` or `Gr(4,2)`.
    pub fn label(&self) -> String {
        match self {
            ManifoldDescriptor::ProjectiveSpace { m, .. } => format!("CP^{m}"),
            ManifoldDescriptor::Grassmannian { n, k, .. } => format!("Gr({n},{k})"),
            ManifoldDescriptor::Hirzebruch { k, .. } => format!("F_{k}"),
            ManifoldDescriptor::AbelianVariety { lambdas } => format!("abelian variety of dimension {}", lambdas.len()),
            ManifoldDescriptor::GenericPicZ { m, .. } => format!("Pic=Z manifold of dimension {m}"),
            ManifoldDescriptor::GenericSimplyConnected { m, .. } => {
                format!("simply connected manifold of dimension {m}")
            }
        }
    }
}

fn hirzebruch_volume(k: u32, lambda: &BigRational, delta: &BigRational) -> BigRational {
    delta * (lambda * rat(2) - delta * rat(k as i64)) / rat(2)
}

fn unsupported(man: &ManifoldDescriptor, bun: &BundleDescriptor) -> Error {
    Error::Unsupported(format!("bundle {bun:?} on {}", man.label()))
}

/// `dim H⁰(Gr(n,k), E^d) = ∏_{i=1}^{k} ∏_{j=k+1}^{n} (d+j−i)/(j−i)`.
fn grassmannian_sections(n: u32, k: u32, d: i64) -> BigInt {
    let mut acc = BigRational::one();
    for i in 1..=k as i64 {
        for j in k as i64 + 1..=n as i64 {
            acc *= BigRational::new((d + j - i).into(), (j - i).into());
        }
    }
    acc.to_integer()
}

/// `dim H⁰(M, L)`.
pub fn r_sections(man: &ManifoldDescriptor, bun: &BundleDescriptor) -> Result<BigInt> {
    man.validate()?;
    match (man, bun) {
        (ManifoldDescriptor::ProjectiveSpace { m, .. }, BundleDescriptor::Degree(d)) => Ok(if *d < 0 {
            BigInt::zero()
        } else {
            binomial(*m as u64 + *d as u64, *m as u64)
        }),
        (ManifoldDescriptor::Grassmannian { n, k, .. }, BundleDescriptor::Degree(d)) => Ok(if *d < 0 {
            BigInt::zero()
        } else {
            grassmannian_sections(*n, *k, *d)
        }),
        (ManifoldDescriptor::Hirzebruch { k, .. }, BundleDescriptor::Bidegree(a, b)) => {
            let mut total = BigInt::zero();
            for l in 0..=*a {
                let t = b - *k as i64 * l + 1;
                if t > 0 {
                    total += t;
                }
            }
            Ok(total)
        }
        (ManifoldDescriptor::AbelianVariety { lambdas }, BundleDescriptor::Deltas(ds)) => {
            if ds.len() != lambdas.len() {
                return Err(Error::LengthMismatch {
                    expected: lambdas.len(),
                    found: ds.len(),
                });
            }
            if ds.iter().all(|&d| d > 0) {
                Ok(ds.iter().map(|&d| BigInt::from(d)).product())
            } else if ds.iter().any(|&d| d == 0) {
                // Degenerate classes: H⁰ depends on the holomorphic structure.
                Err(unsupported(man, bun))
            } else {
                Ok(BigInt::zero())
            }
        }
        (ManifoldDescriptor::GenericPicZ { sections, .. }, BundleDescriptor::Degree(d)) => {
            if *d < 0 {
                Ok(BigInt::zero())
            } else if *d == 0 {
                Ok(BigInt::one())
            } else {
                sections
                    .get(d)
                    .cloned()
                    .ok_or_else(|| Error::Unsupported(format!("no section count supplied for degree {d}")))
            }
        }
        (ManifoldDescriptor::GenericSimplyConnected { table, .. }, BundleDescriptor::Index(i)) => {
            table.get(*i).map(|s| s.r.clone()).ok_or(Error::LengthMismatch {
                expected: table.len(),
                found: *i + 1,
            })
        }
        _ => Err(unsupported(man, bun)),
    }
}

/// `t_M = ∫_M c₁(E)^m`.
pub fn t_number(man: &ManifoldDescriptor) -> Result<BigInt> {
    man.validate()?;
    match man {
        ManifoldDescriptor::ProjectiveSpace { .. } => Ok(BigInt::one()),
        ManifoldDescriptor::Grassmannian { n, k, .. } => {
            // Degree of the Plücker embedding: (k(n−k))!·∏_{j=1}^{k} (j−1)!/(n−k+j−1)!.
            let mut q = BigRational::from_integer(factorial((k * (n - k)) as u64));
            for j in 1..=*k as u64 {
                q *= BigRational::new(factorial(j - 1), factorial(*n as u64 - *k as u64 + j - 1));
            }
            Ok(q.to_integer())
        }
        ManifoldDescriptor::GenericPicZ { t_m, .. } => Ok(t_m.clone()),
        _ => Err(Error::Unsupported(format!("t_M is not defined for {}", man.label()))),
    }
}

fn cyclic_lambda(man: &ManifoldDescriptor) -> Option<&BigRational> {
    match man {
        ManifoldDescriptor::ProjectiveSpace { lambda, .. }
        | ManifoldDescriptor::Grassmannian { lambda, .. }
        | ManifoldDescriptor::GenericPicZ { lambda, .. } => Some(lambda),
        _ => None,
    }
}

fn pow(q: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * q)
}

/// `Vol(M) = ∫ ω^m/m!`.
pub fn volume(man: &ManifoldDescriptor) -> Result<BigRational> {
    man.validate()?;
    let m = man.dim();
    if let Some(lambda) = cyclic_lambda(man) {
        let t = BigRational::from_integer(t_number(man)?);
        return Ok(pow(lambda, m) * t / BigRational::from_integer(factorial(m as u64)));
    }
    match man {
        ManifoldDescriptor::Hirzebruch { k, lambda, delta } => Ok(hirzebruch_volume(*k, lambda, delta)),
        ManifoldDescriptor::AbelianVariety { lambdas } => Ok(lambdas.iter().product()),
        ManifoldDescriptor::GenericSimplyConnected { vol, .. } => Ok(vol.clone()),
        _ => unreachable!("cyclic cases handled above"),
    }
}

/// Integrals of `c₁(L)` and `c₁(L)²` against powers of the Kähler class.
pub fn intersections(man: &ManifoldDescriptor, bun: &BundleDescriptor) -> Result<Intersections> {
    man.validate()?;
    let m = man.dim();
    if let (Some(lambda), BundleDescriptor::Degree(d)) = (cyclic_lambda(man), bun) {
        let t = BigRational::from_integer(t_number(man)?);
        let d = rat(*d);
        let linear = &d * pow(lambda, m - 1) * &t / BigRational::from_integer(factorial(m as u64 - 1));
        let quadratic =
            (m >= 2).then(|| &d * &d * pow(lambda, m - 2) * &t / BigRational::from_integer(factorial(m as u64 - 2)));
        return Ok(Intersections { linear, quadratic });
    }
    match (man, bun) {
        (ManifoldDescriptor::Hirzebruch { k, lambda, delta }, BundleDescriptor::Bidegree(a, b)) => {
            // (a C + b F)·(λ F + δ C) and (a C + b F)².
            let (a, b, k) = (rat(*a), rat(*b), rat(*k as i64));
            let linear = &a * lambda + delta * (&b - &k * &a);
            let quadratic = rat(2) * &a * &b - &k * &a * &a;
            Ok(Intersections {
                linear,
                quadratic: Some(quadratic),
            })
        }
        (ManifoldDescriptor::AbelianVariety { lambdas }, BundleDescriptor::Deltas(ds)) => {
            if ds.len() != lambdas.len() {
                return Err(Error::LengthMismatch {
                    expected: lambdas.len(),
                    found: ds.len(),
                });
            }
            abelian_intersections(lambdas, ds)
        }
        (ManifoldDescriptor::GenericSimplyConnected { table, .. }, BundleDescriptor::Index(i)) => {
            let s = table.get(*i).ok_or(Error::LengthMismatch {
                expected: table.len(),
                found: *i + 1,
            })?;
            // Only the slope is supplied; ∫c₁∧ω^{m−1}/(m−1)! = m·slope_vol.
            Ok(Intersections {
                linear: &s.slope_vol * rat(m as i64),
                quadratic: None,
            })
        }
        _ => Err(unsupported(man, bun)),
    }
}

/// Evaluated in the exterior algebra of the torus.
fn abelian_intersections(lambdas: &[BigRational], ds: &[i64]) -> Result<Intersections> {
    let m = lambdas.len();
    let p = torus_presentation(m);
    let top = torus_top(m, 0);
    let w = pairing_form(
        &p,
        0,
        m,
        &lambdas.iter().cloned().map(PiPoly::constant).collect::<Vec<_>>(),
    );
    let c1 = pairing_form(&p, 0, m, &ds.iter().map(|&d| PiPoly::from_int(d)).collect::<Vec<_>>());
    let wpow = |e: usize| -> RingElement {
        w.pow(e as u32)
            .scale_rational(&BigRational::new(BigInt::one(), factorial(e as u64)))
    };
    let rational = |x: PiPoly| x.as_rational().expect("rational intersection number");
    let linear = rational(integrate(&(&c1 * &wpow(m - 1)), &top)?);
    let quadratic = if m >= 2 {
        Some(rational(integrate(&(&(&c1 * &c1) * &wpow(m - 2)), &top)?))
    } else {
        None
    };
    Ok(Intersections { linear, quadratic })
}

/// `(Vol M, slope_vol)` with `slope_vol = (1/m)·∫ c₁(L)∧ω^{m−1}/(m−1)!`, so that
/// `σ = τ·Vol M − (2πm/e²)·slope_vol`.
pub fn volume_and_slope(man: &ManifoldDescriptor, bun: &BundleDescriptor) -> Result<(BigRational, BigRational)> {
    let vol = volume(man)?;
    let linear = intersections(man, bun)?.linear;
    let slope = match (man, bun) {
        (ManifoldDescriptor::GenericSimplyConnected { table, .. }, BundleDescriptor::Index(i)) => {
            table[*i].slope_vol.clone()
        }
        _ => linear / rat(man.dim() as i64),
    };
    Ok((vol, slope))
}

/// Whether `L` is holomorphically trivial, decided from its topology.
///
/// On cyclic-Picard bases this is degree zero; with supplied tables a bundle
/// with one section and zero slope is trivial (the section cannot vanish).
pub fn is_trivial(man: &ManifoldDescriptor, bun: &BundleDescriptor) -> Result<bool> {
    match (man, bun) {
        (_, BundleDescriptor::Degree(d)) if man.has_cyclic_picard() => Ok(*d == 0),
        (ManifoldDescriptor::Hirzebruch { .. }, BundleDescriptor::Bidegree(a, b)) => Ok(*a == 0 && *b == 0),
        (ManifoldDescriptor::AbelianVariety { .. }, BundleDescriptor::Deltas(ds)) => Ok(ds.iter().all(|&d| d == 0)),
        (ManifoldDescriptor::GenericSimplyConnected { table, .. }, BundleDescriptor::Index(i)) => {
            let s = table.get(*i).ok_or(Error::LengthMismatch {
                expected: table.len(),
                found: *i + 1,
            })?;
            Ok(s.r.is_one() && s.slope_vol.is_zero())
        }
        _ => Err(unsupported(man, bun)),
    }
}

/// `Σ_a c_a·B_a` for bundles of a common shape.
pub fn combine(coeffs: &[i64], bundles: &[BundleDescriptor]) -> Result<BundleDescriptor> {
    if coeffs.len() != bundles.len() {
        return Err(Error::LengthMismatch {
            expected: bundles.len(),
            found: coeffs.len(),
        });
    }
    let first = bundles.first().ok_or_else(|| precondition("no bundles to combine"))?;
    match first {
        BundleDescriptor::Degree(_) => {
            let mut d = 0i64;
            for (c, b) in coeffs.iter().zip(bundles) {
                let BundleDescriptor::Degree(x) = b else {
                    return Err(mixed());
                };
                d = d
                    .checked_add(c.checked_mul(*x).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
            }
            Ok(BundleDescriptor::Degree(d))
        }
        BundleDescriptor::Bidegree(..) => {
            let (mut a, mut bb) = (0i64, 0i64);
            for (c, b) in coeffs.iter().zip(bundles) {
                let BundleDescriptor::Bidegree(x, y) = b else {
                    return Err(mixed());
                };
                a = a
                    .checked_add(c.checked_mul(*x).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
                bb = bb
                    .checked_add(c.checked_mul(*y).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
            }
            Ok(BundleDescriptor::Bidegree(a, bb))
        }
        BundleDescriptor::Deltas(d0) => {
            let mut acc = vec![0i64; d0.len()];
            for (c, b) in coeffs.iter().zip(bundles) {
                let BundleDescriptor::Deltas(x) = b else {
                    return Err(mixed());
                };
                if x.len() != acc.len() {
                    return Err(mixed());
                }
                for (s, v) in acc.iter_mut().zip(x) {
                    *s = s
                        .checked_add(c.checked_mul(*v).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                }
            }
            Ok(BundleDescriptor::Deltas(acc))
        }
        BundleDescriptor::Index(_) => Err(precondition("tabulated bundles cannot be combined")),
    }
}

fn mixed() -> Error {
    Error::InconsistentModel("bundle descriptors of different kinds".into())
}

fn overflow() -> Error {
    precondition("bundle degree overflow")
}

/// `dim H⁰` as a machine integer, for dimension counts.
pub(crate) fn small(r: &BigInt) -> Result<i64> {
    r.to_i64()
        .ok_or_else(|| precondition(format!("section count {r} too large")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ps(m: u32) -> ManifoldDescriptor {
        ManifoldDescriptor::ProjectiveSpace { m, lambda: rat(1) }
    }

    fn gr(n: u32, k: u32) -> ManifoldDescriptor {
        ManifoldDescriptor::Grassmannian { n, k, lambda: rat(1) }
    }

    fn hz(k: u32, lambda: i64, delta: i64) -> ManifoldDescriptor {
        ManifoldDescriptor::Hirzebruch {
            k,
            lambda: rat(lambda),
            delta: rat(delta),
        }
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn section_examples() {
        assert_eq!(r_sections(&ps(2), &BundleDescriptor::Degree(3)).unwrap(), int(10));
        assert_eq!(r_sections(&gr(4, 2), &BundleDescriptor::Degree(1)).unwrap(), int(6));
        assert_eq!(
            r_sections(&hz(1, 2, 1), &BundleDescriptor::Bidegree(2, 2)).unwrap(),
            int(6)
        );
        assert_eq!(r_sections(&ps(3), &BundleDescriptor::Degree(-1)).unwrap(), int(0));
        assert_eq!(r_sections(&gr(5, 2), &BundleDescriptor::Degree(0)).unwrap(), int(1));
        assert!(r_sections(&ps(2), &BundleDescriptor::Bidegree(1, 1)).is_err());
    }

    #[test]
    fn abelian_sections() {
        let av = ManifoldDescriptor::AbelianVariety {
            lambdas: vec![rat(1), rat(1)],
        };
        assert_eq!(r_sections(&av, &BundleDescriptor::Deltas(vec![2, 3])).unwrap(), int(6));
        assert_eq!(r_sections(&av, &BundleDescriptor::Deltas(vec![-1, 3])).unwrap(), int(0));
        assert!(r_sections(&av, &BundleDescriptor::Deltas(vec![0, 3])).is_err());
        assert!(r_sections(&av, &BundleDescriptor::Deltas(vec![1])).is_err());
    }

    #[test]
    fn generic_tables() {
        let mut sections = BTreeMap::new();
        sections.insert(1, int(4));
        let m = ManifoldDescriptor::GenericPicZ {
            m: 2,
            t_m: int(3),
            lambda: rat(1),
            sections,
        };
        assert_eq!(r_sections(&m, &BundleDescriptor::Degree(1)).unwrap(), int(4));
        assert_eq!(r_sections(&m, &BundleDescriptor::Degree(0)).unwrap(), int(1));
        assert!(r_sections(&m, &BundleDescriptor::Degree(2)).is_err());
        assert_eq!(t_number(&m).unwrap(), int(3));
        let sc = ManifoldDescriptor::GenericSimplyConnected {
            m: 1,
            vol: rat(2),
            table: vec![SectionData {
                r: int(1),
                slope_vol: rat(0),
            }],
        };
        assert!(is_trivial(&sc, &BundleDescriptor::Index(0)).unwrap());
        assert!(r_sections(&sc, &BundleDescriptor::Index(1)).is_err());
    }

    #[test]
    fn topological_numbers() {
        assert_eq!(t_number(&ps(4)).unwrap(), int(1));
        assert_eq!(t_number(&gr(4, 2)).unwrap(), int(2));
        assert_eq!(t_number(&gr(3, 1)).unwrap(), int(1));
        assert_eq!(t_number(&gr(5, 2)).unwrap(), int(5));
        assert!(t_number(&hz(1, 2, 1)).is_err());
    }

    #[test]
    fn volumes_and_slopes() {
        assert_eq!(
            volume_and_slope(&ps(1), &BundleDescriptor::Degree(1)).unwrap(),
            (rat(1), rat(1))
        );
        let av = ManifoldDescriptor::AbelianVariety {
            lambdas: vec![rat(1), rat(1)],
        };
        assert_eq!(
            volume_and_slope(&av, &BundleDescriptor::Deltas(vec![2, 4])).unwrap(),
            (rat(1), rat(3))
        );
        // F_1 with λ=2, δ=1: Vol = 1·(4−1)/2.
        let (v, s) = volume_and_slope(&hz(1, 2, 1), &BundleDescriptor::Bidegree(1, 1)).unwrap();
        assert_eq!(v, BigRational::new(3.into(), 2.into()));
        // a = b: (aλ + δ(b − ka))/2 = (2 + 0)/2.
        assert_eq!(s, rat(1));
        assert_eq!(volume(&hz(2, 1, 1)), Err(Error::NonPositiveVolume));
    }

    #[test]
    fn hirzebruch_slope_agrees_with_printed_form_on_diagonal() {
        for k in 0..4u32 {
            for a in -2..4i64 {
                let (l, d) = (rat(5), rat(2));
                let m = ManifoldDescriptor::Hirzebruch {
                    k,
                    lambda: l.clone(),
                    delta: d.clone(),
                };
                let (_, s) = volume_and_slope(&m, &BundleDescriptor::Bidegree(a, a)).unwrap();
                let printed = (rat(a) * &l + rat(a) * &d * rat(1 - k as i64)) / rat(2);
                assert_eq!(s, printed);
            }
        }
    }

    #[test]
    fn intersection_numbers() {
        let i = intersections(&hz(1, 3, 1), &BundleDescriptor::Bidegree(2, 3)).unwrap();
        assert_eq!(i.quadratic, Some(rat(2 * 2 * 3 - 4)));
        let i = intersections(&ps(1), &BundleDescriptor::Degree(5)).unwrap();
        assert_eq!((i.linear, i.quadratic), (rat(5), None));
        let i = intersections(&ps(2), &BundleDescriptor::Degree(3)).unwrap();
        assert_eq!((i.linear, i.quadratic), (rat(3), Some(rat(9))));
        let av = ManifoldDescriptor::AbelianVariety {
            lambdas: vec![rat(1), rat(2), rat(3)],
        };
        let i = intersections(&av, &BundleDescriptor::Deltas(vec![1, 1, 1])).unwrap();
        assert_eq!(i.linear, rat(6 + 3 + 2));
        assert_eq!(i.quadratic, Some(rat(2 * (1 + 2 + 3))));
    }

    #[test]
    fn combining_bundles() {
        let b = [BundleDescriptor::Degree(2), BundleDescriptor::Degree(-1)];
        assert_eq!(combine(&[1, 3], &b).unwrap(), BundleDescriptor::Degree(-1));
        let b = [
            BundleDescriptor::Deltas(vec![1, 2]),
            BundleDescriptor::Deltas(vec![0, 1]),
        ];
        assert_eq!(combine(&[2, -1], &b).unwrap(), BundleDescriptor::Deltas(vec![2, 3]));
        assert!(combine(
            &[1, 1],
            &[BundleDescriptor::Degree(1), BundleDescriptor::Bidegree(1, 1)]
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn grassmannian_degenerates_to_projective_space(m in 1u32..=4, d in 0i64..=6) {
            prop_assert_eq!(
                r_sections(&ps(m), &BundleDescriptor::Degree(d)).unwrap(),
                r_sections(&gr(m + 1, 1), &BundleDescriptor::Degree(d)).unwrap()
            );
        }

        #[test]
        fn hirzebruch_sections_monotone_in_b(k in 0u32..4, a in 0i64..5, b in -3i64..8) {
            let m = hz(k, 2 * k as i64 + 2, 1);
            let lo = r_sections(&m, &BundleDescriptor::Bidegree(a, b)).unwrap();
            let hi = r_sections(&m, &BundleDescriptor::Bidegree(a, b + 1)).unwrap();
            prop_assert!(lo <= hi);
        }

        #[test]
        fn slope_root_formula(m in 1u32..4, d in -4i64..6, ln in 1i64..5, ld in 1i64..4) {
            // Ratio c₁(L)/[ω] = slope_vol/Vol; (ratio)^m·t⁻¹·m!·Vol = d^m.
            let lambda = BigRational::new(ln.into(), ld.into());
            let man = ManifoldDescriptor::ProjectiveSpace { m, lambda };
            let (vol, slope) = volume_and_slope(&man, &BundleDescriptor::Degree(d)).unwrap();
            let ratio = slope / &vol;
            let lhs = pow(&ratio, m) * BigRational::from_integer(factorial(m as u64)) * vol;
            prop_assert_eq!(lhs, pow(&rat(d), m));
        }
    }
}
