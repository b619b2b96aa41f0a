//! The L² metric on vortex moduli spaces: energy, Kähler class, volume,
//! total scalar curvature and the strong-coupling limit `1/e² → 0`.
//!
//! Every public quantity has a `*_with_coupling` form taking `1/e²`
//! explicitly, so the limit is literally the same formula evaluated at zero.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cohomring::{
    fibre_integrate, indexed, integrate, tensor_presentation, EvenRule, RingElement, RingPresentation, TopClass,
};
use crate::error::{precondition, Error, Result};
use crate::fourier_mukai::{
    ch_transform, chern_from_character, fm_kahler_power, integrate_dual, pairing_form, segre, segre_pushforward,
    torus_presentation, torus_top, AbelianVarietyData,
};
use crate::geometry::{intersections, t_number, BundleDescriptor, ManifoldDescriptor};
use crate::moduli::{abelian_data, build_moduli_with_coupling, GlsmModel, ModuliDescription, ModuliKind, Verdict};
use crate::scalars::{factorial, rat, PiPoly};

/// `[ω_𝓜] = Σ_a eta_coefficients[a]·η_a + base_correction`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerClassReport {
    /// `π·σ_a`.
    pub eta_coefficients: Vec<PiPoly>,
    /// `−(2π²/e²)·𝓕([ω]^{m−1}/(m−1)!)` on `H*(M̂)`, pulled back along the
    /// projection; `None` when the base is simply connected (the term vanishes).
    pub base_correction: Option<RingElement>,
}

fn inv_factorial(n: u64) -> BigRational {
    BigRational::new(BigInt::one(), factorial(n))
}

fn coupling(model: &GlsmModel) -> BigRational {
    model.e2.recip()
}

/// The bundle whose curvature enters the energy: the circle bundle `P` for
/// `k = 1`, or the common bundle of a weight-one model.
fn energy_bundle(model: &GlsmModel) -> Result<BundleDescriptor> {
    if model.weights.k() != 1 {
        return Err(Error::Unsupported(
            "the vortex energy is defined here for a single circle factor".into(),
        ));
    }
    match model.principal_bundles() {
        Some([p]) => Ok(p.clone()),
        _ if model.is_weight_one() => Ok(model.bundles[0].clone()),
        _ => Err(Error::Unsupported(
            "circle bundle data cannot be recovered from the table".into(),
        )),
    }
}

/// `E = 2πτ·∫c₁∧ω^{m−1}/(m−1)! − (2π²/e²)·∫c₁²∧ω^{m−2}/(m−2)!`; the second
/// term is absent on curves.
pub fn vortex_energy(model: &GlsmModel) -> Result<PiPoly> {
    vortex_energy_with_coupling(model, &coupling(model))
}

/// [`vortex_energy`] with `1/e²` replaced by `inv_e2`.
pub fn vortex_energy_with_coupling(model: &GlsmModel, inv_e2: &BigRational) -> Result<PiPoly> {
    let bundle = energy_bundle(model)?;
    let ix = intersections(&model.manifold, &bundle)?;
    let first = PiPoly::monomial(rat(2) * &model.tau[0] * &ix.linear, 1);
    if model.base_dim() == 1 {
        return Ok(first);
    }
    if inv_e2.is_zero() {
        return Ok(first);
    }
    let q = ix
        .quadratic
        .ok_or_else(|| Error::Unsupported("∫c₁² is not available for this manifold".into()))?;
    Ok(&first + &PiPoly::monomial(-rat(2) * inv_e2 * q, 2))
}

fn require_stable(d: &ModuliDescription) -> Result<()> {
    if d.verdict == Verdict::Stable {
        Ok(())
    } else {
        Err(Error::NotStable)
    }
}

/// `−(2π²·inv_e2)·𝓕([ω]^{m−1}/(m−1)!)`. Only the Kähler form enters, so the
/// bundle is irrelevant here.
fn abelian_correction(lambdas: &[BigRational], inv_e2: &BigRational) -> Result<RingElement> {
    let av = AbelianVarietyData::new(lambdas.len(), vec![1; lambdas.len()], lambdas.to_vec())?;
    Ok(fm_kahler_power(&av)?.scale(&PiPoly::monomial(-rat(2) * inv_e2, 2)))
}

/// The Kähler class of the L² metric, read off from `σ`.
pub fn kahler_class(model: &GlsmModel) -> Result<KahlerClassReport> {
    kahler_class_with_coupling(model, &coupling(model))
}

/// [`kahler_class`] with `1/e²` replaced by `inv_e2`.
pub fn kahler_class_with_coupling(model: &GlsmModel, inv_e2: &BigRational) -> Result<KahlerClassReport> {
    let d = build_moduli_with_coupling(model, inv_e2)?;
    require_stable(&d)?;
    let eta_coefficients = d.sigma.iter().map(|s| s * &PiPoly::pi()).collect();
    let base_correction = match &model.manifold {
        ManifoldDescriptor::AbelianVariety { lambdas } => Some(abelian_correction(lambdas, inv_e2)?),
        _ => None,
    };
    Ok(KahlerClassReport {
        eta_coefficients,
        base_correction,
    })
}

/// The moduli space of a weight-one model together with its cohomology.
fn weight_one_moduli(model: &GlsmModel, inv_e2: &BigRational) -> Result<(ModuliDescription, Arc<RingPresentation>)> {
    if !model.is_weight_one() {
        return Err(Error::Unsupported(
            "the moduli cohomology ring is known only for weight-one models".into(),
        ));
    }
    let d = build_moduli_with_coupling(model, inv_e2)?;
    require_stable(&d)?;
    let ring = d
        .cohomology
        .clone()
        .ok_or_else(|| Error::UnsupportedKind("moduli space without a cohomology presentation".into()))?;
    Ok((d, ring))
}

/// `πσ·η + base_correction` as an element of `H*(𝓜)` for weight-one models.
pub fn kahler_class_element(model: &GlsmModel) -> Result<RingElement> {
    kahler_class_element_with_coupling(model, &coupling(model))
}

pub fn kahler_class_element_with_coupling(model: &GlsmModel, inv_e2: &BigRational) -> Result<RingElement> {
    let (_, ring) = weight_one_moduli(model, inv_e2)?;
    let report = kahler_class_with_coupling(model, inv_e2)?;
    let mut w = RingElement::generator(&ring, "η")?.scale(&report.eta_coefficients[0]);
    if let Some(c) = &report.base_correction {
        w = w + c.embed(&ring)?;
    }
    Ok(w)
}

/// `H*(M)` with its fundamental class, Kähler class and `c₁` of the bundle.
struct BaseRing {
    pres: Arc<RingPresentation>,
    top: TopClass,
    omega: RingElement,
    c1: RingElement,
}

fn base_ring(man: &ManifoldDescriptor, bundle: &BundleDescriptor) -> Result<BaseRing> {
    let m = man.dim();
    match (man, bundle) {
        (
            ManifoldDescriptor::ProjectiveSpace { lambda, .. }
            | ManifoldDescriptor::Grassmannian { lambda, .. }
            | ManifoldDescriptor::GenericPicZ { lambda, .. },
            BundleDescriptor::Degree(d),
        ) => {
            let pres = RingPresentation::new(2 * m)
                .with_even("E", 2, EvenRule::Truncated(m + 1))
                .into_arc()?;
            let e = RingElement::generator(&pres, "E")?;
            Ok(BaseRing {
                top: TopClass {
                    odd: Vec::new(),
                    even: vec![(0, m)],
                    value: PiPoly::constant(BigRational::from_integer(t_number(man)?)),
                },
                omega: e.scale_rational(lambda),
                c1: e.scale_rational(&rat(*d)),
                pres,
            })
        }
        (ManifoldDescriptor::Hirzebruch { k, lambda, delta }, BundleDescriptor::Bidegree(a, b)) => {
            // F² = 0, C² = −k·F·C, ∫F·C = 1.
            let base = RingPresentation::new(4)
                .with_even("F", 2, EvenRule::Truncated(2))
                .into_arc()?;
            let f = RingElement::generator(&base, "F")?;
            let tail = [f.scale_rational(&rat(*k as i64)), RingElement::zero(&base)];
            let pres = RingPresentation::extend_with_relation(&base, "C", 2, &tail, 4)?;
            let f = RingElement::generator(&pres, "F")?;
            let c = RingElement::generator(&pres, "C")?;
            Ok(BaseRing {
                top: TopClass {
                    odd: Vec::new(),
                    even: vec![(0, 1), (1, 1)],
                    value: PiPoly::one(),
                },
                omega: f.scale_rational(lambda) + c.scale_rational(delta),
                c1: c.scale_rational(&rat(*a)) + f.scale_rational(&rat(*b)),
                pres,
            })
        }
        (ManifoldDescriptor::AbelianVariety { lambdas }, BundleDescriptor::Deltas(ds)) => {
            let m = lambdas.len();
            let pres = torus_presentation(m);
            let ls: Vec<PiPoly> = lambdas.iter().cloned().map(PiPoly::constant).collect();
            let dv: Vec<PiPoly> = ds.iter().map(|&d| PiPoly::from_int(d)).collect();
            Ok(BaseRing {
                top: torus_top(m, 0),
                omega: pairing_form(&pres, 0, m, &ls),
                c1: pairing_form(&pres, 0, m, &dv),
                pres,
            })
        }
        _ => Err(Error::Unsupported(format!("no cohomology ring for {}", man.label()))),
    }
}

/// `[ω_𝓜] = ∫_M [πτ·c₁(𝓛)∧ω^m/m! − (π²/e²)·c₁(𝓛)²∧ω^{m−1}/(m−1)!]`
/// computed in `H*(M × 𝓜)` with `c₁(𝓛) = c₁(L) + η (+ c₁(𝒫) over a torus)`.
pub fn kahler_class_pipeline(model: &GlsmModel) -> Result<RingElement> {
    kahler_class_pipeline_with_coupling(model, &coupling(model))
}

pub fn kahler_class_pipeline_with_coupling(model: &GlsmModel, inv_e2: &BigRational) -> Result<RingElement> {
    let (_, ring) = weight_one_moduli(model, inv_e2)?;
    let base = base_ring(&model.manifold, &model.bundles[0])?;
    let m = model.base_dim();
    let t = tensor_presentation(&base.pres, &ring)?;
    let mut c1u = base.c1.embed(&t)? + RingElement::generator(&t, "η")?;
    if model.manifold.is_abelian() {
        for a in 0..2 * m as usize {
            let dual = t
                .odd_index(&indexed("dx*", a + 1))
                .ok_or_else(|| precondition("dual torus generators missing"))?;
            c1u = c1u + RingElement::odd_word(&t, &[a, dual]);
        }
    }
    let w = base.omega.embed(&t)?;
    let first = (&c1u * &w.pow(m)).scale(&PiPoly::monomial(&model.tau[0] * inv_factorial(m as u64), 1));
    let second = (&(&c1u * &c1u) * &w.pow(m - 1)).scale(&PiPoly::monomial(-inv_e2 * inv_factorial(m as u64 - 1), 2));
    let pushed = fibre_integrate(&(first + second), &base.top)?;
    pushed.embed(&ring)
}

/// Volume of the moduli space with the L² metric.
pub fn volume_moduli(model: &GlsmModel) -> Result<PiPoly> {
    volume_moduli_with_coupling(model, &coupling(model))
}

/// [`volume_moduli`] with `1/e²` replaced by `inv_e2`.
///
/// Projective spaces give `(πσ)^D/D!`; projective bundles `ℙ(V) → M̂` use the
/// Segre push-forward
/// `Σ_l (πσ)^{l+R−1}(−2π²/e²)^{m−l}/((l+R−1)!(m−l)!)·∫_{M̂} s_l(V)∧𝓕^{m−l}`.
pub fn volume_moduli_with_coupling(model: &GlsmModel, inv_e2: &BigRational) -> Result<PiPoly> {
    let d = build_moduli_with_coupling(model, inv_e2)?;
    require_stable(&d)?;
    let ps = &d.sigma[0] * &PiPoly::pi();
    match d.kind {
        Some(ModuliKind::Point) => Ok(PiPoly::one()),
        Some(ModuliKind::ProjectiveSpace { dim }) => {
            let ring = d.cohomology.as_ref().expect("projective space carries its ring");
            let w = RingElement::generator(ring, "η")?.scale(&ps);
            let top = TopClass {
                odd: Vec::new(),
                even: vec![(0, dim)],
                value: PiPoly::one(),
            };
            integrate(&w.pow(dim).scale_rational(&inv_factorial(dim as u64)), &top)
        }
        Some(ModuliKind::ProjectiveBundle { fibre_rank, base_dim }) => {
            let av = abelian_data(model)?;
            let n = model.weights.n() as u32;
            let s = segre(&chern_from_character(&ch_transform(&av))?.pow(n))?;
            let f = fm_kahler_power(&av)?;
            let corr = PiPoly::monomial(-rat(2) * inv_e2, 2);
            let mut total = PiPoly::zero();
            for l in 0..=base_dim {
                let e = l + fibre_rank - 1;
                let push = segre_pushforward(e, &s, fibre_rank);
                let integral = integrate_dual(&(&push * &f.pow(base_dim - l)), base_dim as usize)?;
                let coeff = (&ps.pow(e) * &corr.pow(base_dim - l))
                    .scale(&(inv_factorial(e as u64) * inv_factorial((base_dim - l) as u64)));
                total += &(&coeff * &integral);
            }
            Ok(total)
        }
        Some(kind) => Err(Error::UnsupportedKind(kind.name().into())),
        None => Err(Error::UnsupportedKind("empty moduli space".into())),
    }
}

/// `∫_𝓜 [ω_𝓜]^D/D!` evaluated directly in the presented cohomology ring of
/// a weight-one moduli space, using the fundamental class `η^{R−1}·[M̂]`.
pub fn volume_by_ring_relations(model: &GlsmModel) -> Result<PiPoly> {
    volume_by_ring_relations_with_coupling(model, &coupling(model))
}

pub fn volume_by_ring_relations_with_coupling(model: &GlsmModel, inv_e2: &BigRational) -> Result<PiPoly> {
    let (d, ring) = weight_one_moduli(model, inv_e2)?;
    let dim = d.complex_dimension.expect("stable moduli have a dimension");
    let w = kahler_class_element_with_coupling(model, inv_e2)?;
    let eta = ring.even_index("η").expect("moduli ring has η");
    let top = match d.kind {
        Some(ModuliKind::ProjectiveBundle { fibre_rank, base_dim }) => TopClass {
            odd: torus_top(base_dim as usize, 0).odd,
            even: if fibre_rank > 1 {
                vec![(eta, fibre_rank - 1)]
            } else {
                Vec::new()
            },
            value: PiPoly::one(),
        },
        Some(ModuliKind::Point) => return Ok(PiPoly::one()),
        _ => TopClass {
            odd: Vec::new(),
            even: vec![(eta, dim as u32)],
            value: PiPoly::one(),
        },
    };
    let dim = dim as u32;
    integrate(&w.pow(dim).scale_rational(&inv_factorial(dim as u64)), &top)
}

/// `∫ s·dvol = 2π/(D−1)!·∫ c₁(𝓜)∧[ω_𝓜]^{D−1}` with `c₁(ℂℙ^D) = (D+1)η`.
pub fn total_scalar_curvature(model: &GlsmModel) -> Result<PiPoly> {
    let inv_e2 = coupling(model);
    let d = build_moduli_with_coupling(model, &inv_e2)?;
    require_stable(&d)?;
    let Some(ModuliKind::ProjectiveSpace { dim }) = d.kind else {
        return Err(Error::UnsupportedKind(
            d.kind.map_or("empty moduli space", |k| k.name()).into(),
        ));
    };
    let ring = d.cohomology.as_ref().expect("projective space carries its ring");
    let eta = RingElement::generator(ring, "η")?;
    let w = kahler_class_element_with_coupling(model, &inv_e2)?;
    let c1 = eta.scale_rational(&rat(dim as i64 + 1));
    let top = TopClass {
        odd: Vec::new(),
        even: vec![(0, dim)],
        value: PiPoly::one(),
    };
    let integral = integrate(&(&c1 * &w.pow(dim - 1)), &top)?;
    Ok(&integral * &PiPoly::monomial(rat(2) * inv_factorial(dim as u64 - 1), 1))
}

/// `2π·r(r−1)/((r−1)!)^{1/(r−1)}·Vol^{(r−2)/(r−1)}` for `𝓜 = ℂℙ^{r−1}`.
pub fn scalar_curvature_from_volume(r: u32, volume: f64) -> Result<f64> {
    if r < 2 {
        return Err(precondition("need r ≥ 2"));
    }
    let r1 = (r - 1) as f64;
    let fact: f64 = (1..r).map(f64::from).product();
    Ok(2.0 * std::f64::consts::PI * r as f64 * r1 / fact.powf(1.0 / r1) * volume.powf((r as f64 - 2.0) / r1))
}

/// Volume of the locus cut out by a degree-`l` constraint:
/// `(πσ)^D·l^{r_l}/D!` with `D = n·r − 1 − r_l`.
pub fn constrained_volume(n: u32, r: u32, l: u32, r_l: u32, sigma: &PiPoly) -> Result<PiPoly> {
    if n == 0 || r == 0 || l == 0 || r_l == 0 {
        return Err(precondition("constraint data must be positive"));
    }
    let dim = constrained_dimension(n, r, r_l);
    if dim < 0 {
        return Err(Error::NegativeDimension(dim));
    }
    let mult = BigRational::from_integer(BigInt::from(l).pow(r_l)) * inv_factorial(dim as u64);
    Ok((sigma * &PiPoly::pi()).pow(dim as u32).scale(&mult))
}

/// `n·r − 1 − r_l`.
pub fn constrained_dimension(n: u32, r: u32, r_l: u32) -> i64 {
    n as i64 * r as i64 - 1 - r_l as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitQuantity {
    Volume,
    KahlerClass,
    Energy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitValue {
    Scalar(PiPoly),
    Kahler(KahlerClassReport),
}

/// The quantity at `1/e² = 0`: `σ → τ·Vol M` and every `2π²/e²` term drops.
pub fn strong_coupling_limit(model: &GlsmModel, quantity: LimitQuantity) -> Result<LimitValue> {
    let zero = BigRational::zero();
    Ok(match quantity {
        LimitQuantity::Volume => LimitValue::Scalar(volume_moduli_with_coupling(model, &zero)?),
        LimitQuantity::KahlerClass => LimitValue::Kahler(kahler_class_with_coupling(model, &zero)?),
        LimitQuantity::Energy => LimitValue::Scalar(vortex_energy_with_coupling(model, &zero)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier_mukai::{dual_torus_presentation, theta};
    use crate::geometry::r_sections;
    use crate::scalars::frac;
    use proptest::prelude::*;

    fn cp(m: u32) -> ManifoldDescriptor {
        ManifoldDescriptor::ProjectiveSpace { m, lambda: rat(1) }
    }

    fn line(man: ManifoldDescriptor, b: BundleDescriptor, tau: i64, e2: i64) -> GlsmModel {
        GlsmModel::line_bundle(man, b, rat(tau), rat(e2)).unwrap()
    }

    fn pi_sigma(model: &GlsmModel) -> PiPoly {
        &model.sigma().unwrap()[0] * &PiPoly::pi()
    }

    #[test]
    fn curve_energy() {
        let m = line(cp(1), BundleDescriptor::Degree(3), 5, 1);
        assert_eq!(vortex_energy(&m).unwrap(), PiPoly::monomial(rat(30), 1));
    }

    #[test]
    fn hirzebruch_energy() {
        let man = ManifoldDescriptor::Hirzebruch {
            k: 1,
            lambda: rat(3),
            delta: rat(1),
        };
        let m = line(man, BundleDescriptor::Bidegree(1, 2), 10, 2);
        // ∫c₁ω = 3 + 2 − 1 = 4, ∫c₁² = 4 − 1 = 3.
        let e = PiPoly::from_coeffs(vec![rat(0), rat(80), rat(-3)]);
        assert_eq!(vortex_energy(&m).unwrap(), e);
        let m0 = line(
            ManifoldDescriptor::Hirzebruch {
                k: 1,
                lambda: rat(3),
                delta: rat(1),
            },
            BundleDescriptor::Bidegree(1, 2),
            0,
            2,
        );
        assert_eq!(vortex_energy(&m0).unwrap(), PiPoly::monomial(rat(-3), 2));
    }

    #[test]
    fn elliptic_curve_class() {
        let man = ManifoldDescriptor::AbelianVariety { lambdas: vec![rat(5)] };
        let m = line(man, BundleDescriptor::Deltas(vec![2]), 10, 3);
        let rep = kahler_class(&m).unwrap();
        assert_eq!(rep.eta_coefficients, vec![pi_sigma(&m)]);
        let want = theta(1).scale(&PiPoly::monomial(frac(2, 3), 2));
        assert_eq!(rep.base_correction.unwrap(), want);
        assert_eq!(kahler_class_element(&m).unwrap(), kahler_class_pipeline(&m).unwrap());
    }

    #[test]
    fn abelian_surface_class() {
        let man = ManifoldDescriptor::AbelianVariety {
            lambdas: vec![rat(2), rat(3)],
        };
        let m = line(man, BundleDescriptor::Deltas(vec![1, 2]), 100, 1);
        let rep = kahler_class(&m).unwrap();
        let p = dual_torus_presentation(2);
        let f = -(RingElement::odd_word(&p, &[0, 2]).scale_rational(&rat(3))
            + RingElement::odd_word(&p, &[1, 3]).scale_rational(&rat(2)));
        assert_eq!(rep.base_correction.unwrap(), f.scale(&PiPoly::monomial(rat(-2), 2)));
        assert_eq!(kahler_class_element(&m).unwrap(), kahler_class_pipeline(&m).unwrap());
    }

    #[test]
    fn pipeline_on_simply_connected_bases() {
        let cases = [
            (cp(1), BundleDescriptor::Degree(2)),
            (cp(2), BundleDescriptor::Degree(1)),
            (cp(3), BundleDescriptor::Degree(2)),
            (
                ManifoldDescriptor::Grassmannian {
                    n: 4,
                    k: 2,
                    lambda: rat(1),
                },
                BundleDescriptor::Degree(1),
            ),
            (
                ManifoldDescriptor::Hirzebruch {
                    k: 1,
                    lambda: rat(3),
                    delta: rat(1),
                },
                BundleDescriptor::Bidegree(1, 2),
            ),
        ];
        for (man, b) in cases {
            let m = line(man, b, 100, 1);
            let p = kahler_class_pipeline(&m).unwrap();
            assert_eq!(p, kahler_class_element(&m).unwrap());
            assert!(kahler_class(&m).unwrap().base_correction.is_none());
        }
    }

    #[test]
    fn unstable_models_have_no_class() {
        let m = line(cp(1), BundleDescriptor::Degree(1), 2, 1);
        assert!(matches!(kahler_class(&m), Err(Error::NotStable)));
        assert!(matches!(volume_moduli(&m), Err(Error::NotStable)));
    }

    #[test]
    fn projective_volumes() {
        // ℂℙ² with d = 1: r = 3, Vol = (πσ)²/2.
        let m = line(cp(2), BundleDescriptor::Degree(1), 100, 1);
        let ps = pi_sigma(&m);
        assert_eq!(volume_moduli(&m).unwrap(), ps.pow(2).scale(&frac(1, 2)));
        assert_eq!(volume_by_ring_relations(&m).unwrap(), volume_moduli(&m).unwrap());
        // ℂℙ¹, n = 3, d = 2: ℂℙ⁸.
        let w = GlsmModel::weight_one(cp(1), BundleDescriptor::Degree(2), 3, rat(100), rat(1)).unwrap();
        let ps = pi_sigma(&w);
        assert_eq!(volume_moduli(&w).unwrap(), ps.pow(8).scale(&inv_factorial(8)));
        // d = 0 on ℂℙ¹: one section, the moduli space is a point.
        let p = line(cp(1), BundleDescriptor::Degree(0), 1, 1);
        assert_eq!(volume_moduli(&p).unwrap(), PiPoly::one());
    }

    fn surface_model(d1: i64, d2: i64, l1: i64, l2: i64, n: usize, tau: i64, e2: i64) -> GlsmModel {
        let man = ManifoldDescriptor::AbelianVariety {
            lambdas: vec![rat(l1), rat(l2)],
        };
        GlsmModel::weight_one(man, BundleDescriptor::Deltas(vec![d1, d2]), n, rat(tau), rat(e2)).unwrap()
    }

    /// `π·Vol(M)·[nτσ + 4π²nr/e⁴]·(πσ)^{nr}/(nr)!`, i.e. the volume times `σ`.
    fn surface_closed_form(m: &GlsmModel, n: i64) -> PiPoly {
        let ManifoldDescriptor::AbelianVariety { lambdas } = &m.manifold else {
            unreachable!()
        };
        let BundleDescriptor::Deltas(ds) = &m.bundles[0] else {
            unreachable!()
        };
        let r = ds[0] * ds[1];
        let vol: BigRational = lambdas.iter().product();
        let sigma = m.sigma().unwrap()[0].clone();
        let e4 = &m.e2 * &m.e2;
        let bracket = &sigma.scale(&(rat(n) * &m.tau[0])) + &PiPoly::monomial(rat(4 * n * r) / e4, 2);
        let nr = (n * r) as u32;
        (&(&bracket * &PiPoly::monomial(vol, 1)) * &(&sigma * &PiPoly::pi()).pow(nr)).scale(&inv_factorial(nr as u64))
    }

    #[test]
    fn abelian_surface_volume() {
        for (d1, d2, l1, l2) in [(1, 1, 1, 1), (2, 4, 1, 1), (3, 2, 1, 2)] {
            let m = surface_model(d1, d2, l1, l2, 1, 100, 1);
            let v = volume_moduli(&m).unwrap();
            let sigma = m.sigma().unwrap()[0].clone();
            assert_eq!(&v * &sigma, surface_closed_form(&m, 1));
            assert_eq!(v, volume_by_ring_relations(&m).unwrap());
        }
    }

    #[test]
    fn weight_one_abelian_surface_volume() {
        for n in [2, 3] {
            let m = surface_model(1, 2, 1, 1, n as usize, 100, 1);
            let v = volume_moduli(&m).unwrap();
            assert_eq!(v, volume_by_ring_relations(&m).unwrap());
            let sigma = m.sigma().unwrap()[0].clone();
            assert_eq!(&v * &sigma, surface_closed_form(&m, n));
        }
    }

    #[test]
    fn scalar_curvature_examples() {
        let m = line(cp(1), BundleDescriptor::Degree(1), 100, 1);
        assert_eq!(total_scalar_curvature(&m).unwrap(), PiPoly::monomial(rat(4), 1));
        let m = line(cp(2), BundleDescriptor::Degree(1), 100, 1);
        let want = (&m.sigma().unwrap()[0] * &PiPoly::monomial(rat(6), 2)).clone();
        assert_eq!(total_scalar_curvature(&m).unwrap(), want);
        let vol = volume_moduli(&m).unwrap().to_f64();
        let alt = scalar_curvature_from_volume(3, vol).unwrap();
        let exact = want.to_f64();
        assert!(((alt - exact) / exact).abs() < 1e-9);
    }

    #[test]
    fn constrained_examples() {
        let s = PiPoly::from_int(3);
        assert_eq!(constrained_volume(2, 2, 1, 2, &s).unwrap(), PiPoly::monomial(rat(3), 1));
        let r = r_sections(&cp(1), &BundleDescriptor::Degree(2)).unwrap();
        let r_l = r_sections(&cp(1), &BundleDescriptor::Degree(4)).unwrap();
        assert_eq!((r.clone(), r_l.clone()), (BigInt::from(3), BigInt::from(5)));
        let v = constrained_volume(3, 3, 2, 5, &PiPoly::one()).unwrap();
        assert_eq!(v, PiPoly::monomial(frac(32, 6), 3));
        assert!(matches!(
            constrained_volume(1, 2, 2, 5, &s),
            Err(Error::NegativeDimension(-4))
        ));
    }

    #[test]
    fn limits() {
        let m = line(cp(1), BundleDescriptor::Degree(3), 5, 1);
        assert_eq!(
            strong_coupling_limit(&m, LimitQuantity::Energy).unwrap(),
            LimitValue::Scalar(vortex_energy(&m).unwrap())
        );
        let w = GlsmModel::weight_one(cp(1), BundleDescriptor::Degree(1), 2, rat(1), rat(1)).unwrap();
        // τ·Vol = 1, r = 2: (π)³/3!.
        assert_eq!(
            strong_coupling_limit(&w, LimitQuantity::Volume).unwrap(),
            LimitValue::Scalar(PiPoly::monomial(frac(1, 6), 3))
        );
        let s = surface_model(2, 4, 1, 1, 1, 100, 1);
        let LimitValue::Kahler(k) = strong_coupling_limit(&s, LimitQuantity::KahlerClass).unwrap() else {
            panic!()
        };
        assert_eq!(k.eta_coefficients, vec![PiPoly::monomial(rat(100), 1)]);
        assert!(k.base_correction.unwrap().is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn volume_increases_with_tau(d in 1i64..4, m in 1u32..4, tau in 50i64..200) {
            let a = line(cp(m), BundleDescriptor::Degree(d), tau, 1);
            let b = line(cp(m), BundleDescriptor::Degree(d), tau + 1, 1);
            let (va, vb) = (volume_moduli(&a).unwrap(), volume_moduli(&b).unwrap());
            prop_assert!((&vb - &va).is_positive());
        }

        #[test]
        fn limit_is_substitution(d in 1i64..4, m in 1u32..3, tau in 1i64..20) {
            let model = line(cp(m), BundleDescriptor::Degree(d), tau, 1);
            let LimitValue::Scalar(v) = strong_coupling_limit(&model, LimitQuantity::Volume).unwrap() else {
                panic!()
            };
            let r = r_sections(&cp(m), &BundleDescriptor::Degree(d)).unwrap();
            let dim = crate::geometry::small(&r).unwrap() as u32 - 1;
            let vol = crate::geometry::volume(&cp(m)).unwrap();
            let want = PiPoly::monomial(rat(tau) * vol, 1).pow(dim).scale(&inv_factorial(dim as u64));
            prop_assert_eq!(v, want);
        }
    }
}
