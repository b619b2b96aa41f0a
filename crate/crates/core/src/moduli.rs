//! Moduli spaces of abelian vortices: stability verdict, structural kind,
//! dimension and cohomology.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cohomring::{EvenRule, RingPresentation};
use crate::cones::{
    check_c1, check_c2, in_cone_closed, in_cone_interior, interior_table, sigma_decomposition_square,
    sigma_vector_with_coupling, stability_threshold, IndexSet, SigmaVector, SquareDecomposition, Threshold,
    WeightSystem,
};
use crate::error::{precondition, Error, Result};
use crate::fourier_mukai::{sum_bundle_presentation, AbelianVarietyData};
use crate::geometry::{self, r_sections, small, volume_and_slope, BundleDescriptor, ManifoldDescriptor};
use crate::linalg::{solve, to_q};
use crate::scalars::{rat, PiPoly};

/// A gauged linear sigma model over a compact Kähler manifold.
///
/// `bundles[j]` describes `L_j = P ×_{ρ_j} ℂ`; the data of the circle factors
/// `P^a` is recovered from `c₁(L_j) = Σ_a Q_j^a c₁(P^a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlsmModel {
    pub manifold: ManifoldDescriptor,
    pub weights: WeightSystem,
    pub tau: Vec<BigRational>,
    pub e2: BigRational,
    pub bundles: Vec<BundleDescriptor>,
    principal: Option<Vec<BundleDescriptor>>,
    principal_slopes: Vec<BigRational>,
    volume: BigRational,
    sections: Vec<BigInt>,
}

impl GlsmModel {
    pub fn new(
        manifold: ManifoldDescriptor,
        weights: WeightSystem,
        tau: Vec<BigRational>,
        e2: BigRational,
        bundles: Vec<BundleDescriptor>,
    ) -> Result<Self> {
        manifold.validate()?;
        let (k, n) = (weights.k(), weights.n());
        if tau.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                found: tau.len(),
            });
        }
        if bundles.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: bundles.len(),
            });
        }
        if !e2.is_positive() {
            return Err(precondition("e² must be positive"));
        }
        let mut slopes = Vec::with_capacity(n);
        let mut sections = Vec::with_capacity(n);
        for b in &bundles {
            slopes.push(volume_and_slope(&manifold, b)?.1);
            sections.push(r_sections(&manifold, b)?);
        }
        let volume = geometry::volume(&manifold)?;
        // Q^T x = data, one equation per section.
        let qt: Vec<Vec<BigRational>> = weights.columns().iter().map(|c| to_q(c)).collect();
        let principal_slopes = solve(&qt, &slopes)
            .ok_or_else(|| Error::InconsistentModel("bundle slopes are not of the form Σ_a Q_j^a·slope(P^a)".into()))?;
        let principal = principal_bundles(&qt, &bundles)?;
        if let Some(p) = &principal {
            for (j, b) in bundles.iter().enumerate() {
                if geometry::combine(weights.column(j), p)? != *b {
                    return Err(Error::InconsistentModel(format!(
                        "bundle {j} is not the combination of the principal data given by its weight"
                    )));
                }
            }
        }
        Ok(GlsmModel {
            manifold,
            weights,
            tau,
            e2,
            bundles,
            principal,
            principal_slopes,
            volume,
            sections,
        })
    }

    /// A single line bundle `L` (torus of rank one acting with weight one).
    pub fn line_bundle(
        manifold: ManifoldDescriptor,
        bundle: BundleDescriptor,
        tau: BigRational,
        e2: BigRational,
    ) -> Result<Self> {
        Self::weight_one(manifold, bundle, 1, tau, e2)
    }

    /// `U(1)` acting with weight one on `n` sections of the same bundle.
    pub fn weight_one(
        manifold: ManifoldDescriptor,
        bundle: BundleDescriptor,
        n: usize,
        tau: BigRational,
        e2: BigRational,
    ) -> Result<Self> {
        let ws = WeightSystem::new(1, vec![vec![1]; n])?;
        Self::new(manifold, ws, vec![tau], e2, vec![bundle; n])
    }

    /// Topological data of the circle factors `P^a`, when it is determined.
    pub fn principal_bundles(&self) -> Option<&[BundleDescriptor]> {
        self.principal.as_deref()
    }

    /// `(c₁(P^a)^∥/[ω])·Vol M` for each circle factor.
    pub fn principal_slopes(&self) -> &[BigRational] {
        &self.principal_slopes
    }

    /// `Vol M`.
    pub fn base_volume(&self) -> &BigRational {
        &self.volume
    }

    /// `dim H⁰(M, L_j)` for each section.
    pub fn section_counts(&self) -> &[BigInt] {
        &self.sections
    }

    pub fn base_dim(&self) -> u32 {
        self.manifold.dim()
    }

    /// The stability vector `σ = τ·Vol M − (2πm/e²)·slope_vol`.
    pub fn sigma(&self) -> Result<SigmaVector> {
        self.sigma_with_coupling(&self.e2.recip())
    }

    /// `σ` with `1/e²` replaced by `inv_e2` (zero gives the strong-coupling limit).
    pub fn sigma_with_coupling(&self, inv_e2: &BigRational) -> Result<SigmaVector> {
        sigma_vector_with_coupling(&self.tau, inv_e2, &self.volume, self.base_dim(), &self.principal_slopes)
    }

    /// Coupling threshold for stability with full support.
    pub fn threshold(&self) -> Result<Threshold> {
        stability_threshold(
            &self.weights,
            self.weights.all(),
            &self.tau,
            &self.volume,
            self.base_dim(),
            &self.principal_slopes,
        )
    }

    /// `k = 1` with every weight equal to one: all sections live in one bundle.
    pub fn is_weight_one(&self) -> bool {
        self.weights.k() == 1 && self.weights.columns().iter().all(|c| c[0] == 1)
    }
}

/// Integral solution `P` of `Q^T P = L` for combinable bundle data.
fn principal_bundles(
    qt: &Vec<Vec<BigRational>>,
    bundles: &[BundleDescriptor],
) -> Result<Option<Vec<BundleDescriptor>>> {
    let coords: Vec<Vec<i64>> = match bundles.first() {
        None | Some(BundleDescriptor::Index(_)) => return Ok(None),
        Some(_) => bundles
            .iter()
            .map(|b| match b {
                BundleDescriptor::Degree(d) => Ok(vec![*d]),
                BundleDescriptor::Bidegree(a, c) => Ok(vec![*a, *c]),
                BundleDescriptor::Deltas(ds) => Ok(ds.clone()),
                BundleDescriptor::Index(_) => Err(Error::InconsistentModel("mixed bundle kinds".into())),
            })
            .collect::<Result<_>>()?,
    };
    let width = coords[0].len();
    if coords.iter().any(|c| c.len() != width) {
        return Err(Error::InconsistentModel("bundle data of different lengths".into()));
    }
    let k = qt.first().map_or(0, |r| r.len());
    let mut per_a = vec![Vec::with_capacity(width); k];
    for w in 0..width {
        let rhs: Vec<BigRational> = coords.iter().map(|c| rat(c[w])).collect();
        let x = solve(qt, &rhs)
            .ok_or_else(|| Error::InconsistentModel("bundle data is not generated by the weights".into()))?;
        for (a, v) in x.into_iter().enumerate() {
            if !v.is_integer() {
                return Err(Error::InconsistentModel(format!(
                    "principal class {a} would be fractional ({v})"
                )));
            }
            per_a[a].push(
                v.to_integer()
                    .to_i64()
                    .ok_or_else(|| precondition("principal degree too large"))?,
            );
        }
    }
    Ok(Some(
        per_a
            .into_iter()
            .map(|c| match bundles[0] {
                BundleDescriptor::Degree(_) => BundleDescriptor::Degree(c[0]),
                BundleDescriptor::Bidegree(..) => BundleDescriptor::Bidegree(c[0], c[1]),
                _ => BundleDescriptor::Deltas(c),
            })
            .collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// No vortex solutions.
    Empty,
    /// `σ` interior to the full cone and solutions exist.
    Stable,
    /// `σ` on the boundary of the cone; solutions exist only with restricted support.
    BoundaryUnstable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuliKind {
    Point,
    ProjectiveSpace {
        dim: u32,
    },
    /// `ℙ(V)` over the dual torus with `V` of rank `fibre_rank`.
    ProjectiveBundle {
        fibre_rank: u32,
        base_dim: u32,
    },
    ToricOrbifold {
        dim: i64,
    },
    ToricFibration {
        fibre_dim: i64,
        base_dim: u32,
    },
    /// `×^k Pic⁰M` (empty fibre, `σ = 0`).
    PicardProduct {
        copies: u32,
        base_dim: u32,
    },
}

impl ModuliKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModuliKind::Point => "point",
            ModuliKind::ProjectiveSpace { .. } => "projective_space",
            ModuliKind::ProjectiveBundle { .. } => "projective_bundle",
            ModuliKind::ToricOrbifold { .. } => "toric_orbifold",
            ModuliKind::ToricFibration { .. } => "toric_fibration",
            ModuliKind::PicardProduct { .. } => "picard_product",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ModuliDescription {
    pub verdict: Verdict,
    pub sigma: SigmaVector,
    pub kind: Option<ModuliKind>,
    pub complex_dimension: Option<i64>,
    pub smooth: bool,
    pub cohomology: Option<Arc<RingPresentation>>,
    pub decomposition: Option<SquareDecomposition>,
    pub notes: Vec<String>,
}

/// `max {Σ_{j∈I} r_j − rank{Q_j : j∈I}}` over nonempty supports `I` with `σ`
/// interior to `Δ_I` and `r_j > 0` for every `j ∈ I` (a support is only
/// realised if each of its bundles has a nonzero section). `None` if no
/// support qualifies.
pub fn moduli_dimension_glsm(ws: &WeightSystem, sigma: &[PiPoly], r: &[BigInt]) -> Result<Option<i64>> {
    if r.len() != ws.n() {
        return Err(Error::LengthMismatch {
            expected: ws.n(),
            found: r.len(),
        });
    }
    if r.iter().any(|x| x.is_negative()) {
        return Err(precondition("section counts must be nonnegative"));
    }
    let table = interior_table(ws, sigma)?;
    let rs: Vec<i64> = r.iter().map(small).collect::<Result<_>>()?;
    let mut best: Option<i64> = None;
    for (mask, &inside) in table.iter().enumerate().skip(1) {
        if !inside {
            continue;
        }
        let s = IndexSet::from_bits(mask as u64);
        if s.iter().any(|j| rs[j] == 0) {
            continue;
        }
        let d: i64 = s.iter().map(|j| rs[j]).sum::<i64>() - ws.rank_of(s) as i64;
        best = Some(best.map_or(d, |b| b.max(d)));
    }
    Ok(best)
}

/// Cohomology of `ℂℙ^D`: `η^{D+1} = 0`.
pub fn projective_space_presentation(dim: u32) -> Result<Arc<RingPresentation>> {
    RingPresentation::new(2 * dim)
        .with_even("η", 2, EvenRule::Truncated(dim + 1))
        .into_arc()
}

/// Abelian variety data for the circle bundle of a weight-one model.
pub(crate) fn abelian_data(model: &GlsmModel) -> Result<AbelianVarietyData> {
    let ManifoldDescriptor::AbelianVariety { lambdas } = &model.manifold else {
        return Err(precondition("base is not an abelian variety"));
    };
    let deltas = match model.principal_bundles() {
        Some([BundleDescriptor::Deltas(ds)]) => ds.clone(),
        _ => return Err(precondition("abelian data needs a single circle factor")),
    };
    AbelianVarietyData::new(lambdas.len(), deltas, lambdas.clone())
}

/// Describes the moduli space of `model`.
pub fn build_moduli(model: &GlsmModel) -> Result<ModuliDescription> {
    build_moduli_with_coupling(model, &model.e2.recip())
}

/// [`build_moduli`] with `1/e²` replaced by `inv_e2`.
pub fn build_moduli_with_coupling(model: &GlsmModel, inv_e2: &BigRational) -> Result<ModuliDescription> {
    let ws = &model.weights;
    let (k, n) = (ws.k(), ws.n());
    let m = model.base_dim();
    let sigma = model.sigma_with_coupling(inv_e2)?;
    let mut out = ModuliDescription {
        verdict: Verdict::Empty,
        sigma: sigma.clone(),
        kind: None,
        complex_dimension: None,
        smooth: false,
        cohomology: None,
        decomposition: None,
        notes: Vec::new(),
    };
    if n == k {
        out.decomposition = sigma_decomposition_square(ws, &sigma).ok();
    }
    if !in_cone_closed(ws, ws.all(), &sigma)? {
        out.notes
            .push("σ lies outside the closed weight cone: no vortex solutions".into());
        return Ok(out);
    }
    let sigma_zero = sigma.iter().all(PiPoly::is_zero);
    let r = model.section_counts();
    if model.manifold.is_abelian() && sigma_zero && r.iter().all(Zero::is_zero) {
        out.verdict = Verdict::Stable;
        out.kind = Some(ModuliKind::PicardProduct {
            copies: k as u32,
            base_dim: m,
        });
        out.complex_dimension = Some(k as i64 * m as i64);
        out.smooth = true;
        out.notes
            .push("no sections and σ = 0: the moduli space is a product of Picard tori".into());
        return Ok(out);
    }
    let Some(fibre_dim) = moduli_dimension_glsm(ws, &sigma, r)? else {
        out.notes
            .push("no realisable support has σ in the interior of its cone".into());
        return Ok(out);
    };
    out.verdict = if in_cone_interior(ws, ws.all(), &sigma)? {
        Verdict::Stable
    } else {
        Verdict::BoundaryUnstable
    };
    out.notes
        .push("Hitchin–Kobayashi criterion: stable supports are those with σ interior to their cone".into());
    if model.is_weight_one() {
        // σ > 0 here, and the moduli space is ℙ(H⁰(L)^{⊕n}) or its family over Pic⁰.
        let rank = u32::try_from(n as i64 * small(&r[0])?).map_err(|_| precondition("too many sections"))?;
        out.smooth = true;
        if model.manifold.is_abelian() {
            let av = abelian_data(model)?;
            out.kind = Some(ModuliKind::ProjectiveBundle {
                fibre_rank: rank,
                base_dim: m,
            });
            out.complex_dimension = Some(rank as i64 - 1 + m as i64);
            out.cohomology = Some(sum_bundle_presentation(&av, n as u32)?);
            out.notes
                .push("moduli space is the projectivisation of the Fourier–Mukai transform".into());
        } else {
            let dim = rank - 1;
            out.kind = Some(if dim == 0 {
                ModuliKind::Point
            } else {
                ModuliKind::ProjectiveSpace { dim }
            });
            out.complex_dimension = Some(dim as i64);
            out.cohomology = Some(projective_space_presentation(dim)?);
            out.notes
                .push("moduli space is the projective space of holomorphic sections".into());
        }
        return Ok(out);
    }
    out.smooth = check_c1(ws, &sigma)? && check_c2(ws)?;
    if model.manifold.is_abelian() {
        out.kind = Some(ModuliKind::ToricFibration {
            fibre_dim,
            base_dim: k as u32 * m,
        });
        out.complex_dimension = Some(fibre_dim + k as i64 * m as i64);
        out.notes
            .push("moduli space is a toric fibration over the product of Picard tori".into());
    } else {
        out.kind = Some(ModuliKind::ToricOrbifold { dim: fibre_dim });
        out.complex_dimension = Some(fibre_dim);
        out.notes
            .push("moduli space is the symplectic quotient of the space of sections".into());
    }
    if out.smooth {
        out.notes
            .push("conditions (C1) and (C2) hold: the quotient is smooth".into());
    }
    Ok(out)
}

/// Whether `σ` meets the necessary condition for solutions (closed cone).
pub fn necessary_condition(model: &GlsmModel) -> Result<bool> {
    in_cone_closed(&model.weights, model.weights.all(), &model.sigma()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomring::RingElement;
    use crate::fourier_mukai::theta;
    use proptest::prelude::*;

    fn cp(m: u32) -> ManifoldDescriptor {
        ManifoldDescriptor::ProjectiveSpace { m, lambda: rat(1) }
    }

    fn surface(l1: i64, l2: i64) -> ManifoldDescriptor {
        ManifoldDescriptor::AbelianVariety {
            lambdas: vec![rat(l1), rat(l2)],
        }
    }

    #[test]
    fn riemann_sphere_symmetric_product() {
        let model = GlsmModel::line_bundle(cp(1), BundleDescriptor::Degree(3), rat(100), rat(1)).unwrap();
        let d = build_moduli(&model).unwrap();
        assert_eq!(d.verdict, Verdict::Stable);
        assert_eq!(d.kind, Some(ModuliKind::ProjectiveSpace { dim: 3 }));
        assert_eq!(d.complex_dimension, Some(3));
        assert_eq!(d.cohomology.unwrap().top_degree(), 6);
    }

    #[test]
    fn small_coupling_is_empty() {
        // σ = 2 − 2π < 0.
        let model = GlsmModel::line_bundle(cp(1), BundleDescriptor::Degree(1), rat(2), rat(1)).unwrap();
        let d = build_moduli(&model).unwrap();
        assert_eq!(d.verdict, Verdict::Empty);
        assert_eq!(d.kind, None);
        assert!(!necessary_condition(&model).unwrap());
    }

    #[test]
    fn abelian_surface_bundle() {
        let model =
            GlsmModel::line_bundle(surface(1, 1), BundleDescriptor::Deltas(vec![2, 4]), rat(100), rat(1)).unwrap();
        let d = build_moduli(&model).unwrap();
        assert_eq!(
            d.kind,
            Some(ModuliKind::ProjectiveBundle {
                fibre_rank: 8,
                base_dim: 2
            })
        );
        assert_eq!(d.complex_dimension, Some(9));
        assert_eq!(d.cohomology.unwrap().top_degree(), 18);
    }

    #[test]
    fn weight_one_sections() {
        let model = GlsmModel::weight_one(cp(1), BundleDescriptor::Degree(2), 3, rat(100), rat(1)).unwrap();
        let d = build_moduli(&model).unwrap();
        assert_eq!(d.kind, Some(ModuliKind::ProjectiveSpace { dim: 8 }));
    }

    #[test]
    fn elliptic_curve_relation() {
        let man = ManifoldDescriptor::AbelianVariety { lambdas: vec![rat(1)] };
        for d in 1..4 {
            let model =
                GlsmModel::line_bundle(man.clone(), BundleDescriptor::Deltas(vec![d]), rat(100), rat(1)).unwrap();
            let p = build_moduli(&model).unwrap().cohomology.unwrap();
            let eta = RingElement::generator(&p, "η").unwrap();
            let th = theta(1).embed(&p).unwrap();
            assert_eq!(eta.pow(d as u32), &th * &eta.pow(d as u32 - 1));
        }
    }

    #[test]
    fn dimension_examples() {
        let ws = WeightSystem::new(1, vec![vec![1], vec![1]]).unwrap();
        let s = vec![PiPoly::one()];
        let r = vec![BigInt::from(2), BigInt::from(3)];
        assert_eq!(moduli_dimension_glsm(&ws, &s, &r).unwrap(), Some(4));
        let neg = vec![-PiPoly::one()];
        assert_eq!(moduli_dimension_glsm(&ws, &neg, &r).unwrap(), None);
        let r0 = vec![BigInt::from(0), BigInt::from(3)];
        assert_eq!(moduli_dimension_glsm(&ws, &s, &r0).unwrap(), Some(2));
    }

    #[test]
    fn toric_quotient_and_boundary() {
        // k = 2, Q = e₁, e₂, e₁+e₂ on ℂℙ¹; L_j of degrees 1, 1, 2.
        let ws = WeightSystem::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let b = vec![
            BundleDescriptor::Degree(1),
            BundleDescriptor::Degree(1),
            BundleDescriptor::Degree(2),
        ];
        let model = GlsmModel::new(cp(1), ws.clone(), vec![rat(100), rat(50)], rat(1), b.clone()).unwrap();
        assert_eq!(
            model.principal_bundles().unwrap(),
            &[BundleDescriptor::Degree(1), BundleDescriptor::Degree(1)]
        );
        let d = build_moduli(&model).unwrap();
        assert_eq!(d.verdict, Verdict::Stable);
        assert_eq!(d.kind, Some(ModuliKind::ToricOrbifold { dim: 2 + 2 + 3 - 2 }));
        assert!(d.smooth);
        // τ = (0, 100): σ₁ = −2π < 0 is outside the cone.
        let model = GlsmModel::new(cp(1), ws, vec![rat(0), rat(100)], rat(1), b).unwrap();
        assert_eq!(build_moduli(&model).unwrap().verdict, Verdict::Empty);
    }

    #[test]
    fn boundary_square_case() {
        // Degree-0 bundles give σ = τ·Vol; τ = (1, 0) sits on the boundary ray of e₁.
        let ws = WeightSystem::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let b = vec![BundleDescriptor::Degree(0), BundleDescriptor::Degree(0)];
        let model = GlsmModel::new(cp(1), ws, vec![rat(1), rat(0)], rat(1), b).unwrap();
        let d = build_moduli(&model).unwrap();
        assert_eq!(d.verdict, Verdict::BoundaryUnstable);
        let dec = d.decomposition.unwrap();
        assert_eq!(dec.plus, IndexSet::from_indices(&[0]));
        assert_eq!(dec.zero, IndexSet::from_indices(&[1]));
        assert_eq!(d.complex_dimension, Some(0));
    }

    #[test]
    fn inconsistent_bundles_rejected() {
        let ws = WeightSystem::new(1, vec![vec![2]]).unwrap();
        let err = GlsmModel::new(cp(1), ws, vec![rat(1)], rat(1), vec![BundleDescriptor::Degree(1)]).unwrap_err();
        assert!(matches!(err, Error::InconsistentModel(_)));
        let ws = WeightSystem::new(1, vec![vec![1], vec![1]]).unwrap();
        let err = GlsmModel::new(
            cp(1),
            ws,
            vec![rat(1)],
            rat(1),
            vec![BundleDescriptor::Degree(1), BundleDescriptor::Degree(2)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InconsistentModel(_)));
    }

    #[test]
    fn picard_product_branch() {
        let ws = WeightSystem::new(1, vec![vec![1]]).unwrap();
        let model = GlsmModel::new(
            surface(1, 1),
            ws,
            vec![rat(0)],
            rat(1),
            vec![BundleDescriptor::Deltas(vec![-1, -1])],
        );
        // Negative-definite class: σ = 4π > 0 but there are no sections.
        let model = model.unwrap();
        let d = build_moduli(&model).unwrap();
        assert_eq!(d.verdict, Verdict::Empty);
        let model = GlsmModel::new(
            surface(1, 1),
            WeightSystem::new(1, vec![vec![1]]).unwrap(),
            vec![rat(0)],
            rat(1),
            vec![BundleDescriptor::Deltas(vec![-1, 1])],
        )
        .unwrap();
        let d = build_moduli(&model).unwrap();
        assert_eq!(d.kind, Some(ModuliKind::PicardProduct { copies: 1, base_dim: 2 }));
        assert_eq!(d.complex_dimension, Some(2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn single_section_dimension(r in 0i64..6, s in -3i64..4) {
            let ws = WeightSystem::new(1, vec![vec![1]]).unwrap();
            let sigma = vec![PiPoly::from_int(s)];
            let dim = moduli_dimension_glsm(&ws, &sigma, &[BigInt::from(r)]).unwrap();
            if s > 0 && r > 0 {
                prop_assert_eq!(dim, Some(r - 1));
            } else {
                prop_assert_eq!(dim, None);
            }
        }

        #[test]
        fn projective_bundle_dimension(d1 in 1i64..4, d2 in 1i64..4, n in 1usize..3) {
            let model = GlsmModel::weight_one(surface(1, 2), BundleDescriptor::Deltas(vec![d1, d2]), n, rat(100), rat(1)).unwrap();
            let d = build_moduli(&model).unwrap();
            let Some(ModuliKind::ProjectiveBundle { fibre_rank, base_dim }) = d.kind else {
                return Err(TestCaseError::fail("expected a projective bundle"));
            };
            prop_assert_eq!(d.complex_dimension, Some(fibre_rank as i64 - 1 + base_dim as i64));
            prop_assert_eq!(fibre_rank as i64, n as i64 * d1 * d2);
        }

        #[test]
        fn empty_iff_necessary_condition_or_no_support(
            cols in prop::collection::vec(prop::collection::vec(-2i64..3, 2), 2..5),
            degs in prop::collection::vec(0i64..3, 4),
            t1 in -3i64..6,
            t2 in -3i64..6,
        ) {
            let Ok(ws) = WeightSystem::new(2, cols) else { return Ok(()) };
            let n = ws.n();
            // P^a of degree degs[a]; L_j from the weights.
            let p = [BundleDescriptor::Degree(degs[0]), BundleDescriptor::Degree(degs[1])];
            let b: Vec<_> = (0..n).map(|j| geometry::combine(ws.column(j), &p).unwrap()).collect();
            let model = GlsmModel::new(cp(1), ws.clone(), vec![rat(t1), rat(t2)], rat(1), b).unwrap();
            let d = build_moduli(&model).unwrap();
            let nec = necessary_condition(&model).unwrap();
            let dim = moduli_dimension_glsm(&ws, &model.sigma().unwrap(), model.section_counts()).unwrap();
            prop_assert_eq!(d.verdict == Verdict::Empty, !nec || dim.is_none());
            if d.verdict == Verdict::Stable {
                prop_assert!(d.complex_dimension.unwrap() >= 0);
            }
        }
    }
}
