//! Structured analysis reports: JSON for machines, plain text for people.
//!
//! Every scalar carries its exact `π`-polynomial and a decimal rendering.
//! Sections that fail carry `{"error": ...}` in place of their value, so a
//! partial report is still a valid report. Index sets are printed 1-based.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cones::{check_c1, check_c2, in_cone_closed, in_cone_interior, IndexSet};
use crate::error::{Error, Result};
use crate::geometry::{r_sections, BundleDescriptor, ManifoldDescriptor};
use crate::maps::{
    bundle_info, embedding_open_dense, maps_volume_conjectural, s_invariant, unstable_planes, ToricTarget,
};
use crate::metrics::{
    constrained_dimension, constrained_volume, kahler_class, kahler_class_element, kahler_class_pipeline,
    scalar_curvature_from_volume, strong_coupling_limit, total_scalar_curvature, volume_by_ring_relations,
    volume_moduli, vortex_energy, LimitQuantity, LimitValue,
};
use crate::model_file::{Analysis, ModelFile};
use crate::moduli::{build_moduli, GlsmModel, ModuliKind, Verdict};
use crate::scalars::{format_rational, PiPoly, ScalarJson};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionError {
    pub error: String,
}

/// A report section: its value, or why it could not be computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Outcome<T> {
    Failed(SectionError),
    Done(T),
}

impl<T> Outcome<T> {
    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(v) => Outcome::Done(v),
            Err(e) => Outcome::Failed(SectionError { error: e.to_string() }),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Outcome::Done(v) => Some(v),
            Outcome::Failed(_) => None,
        }
    }

    pub fn is_failed(&self) -> bool {
        matches!(self, Outcome::Failed(_))
    }
}

pub type Section<T> = Option<Outcome<T>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSummary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub manifold: String,
    pub k: usize,
    pub n: usize,
    pub tau: Vec<String>,
    pub e2: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionReport {
    pub lambda: Vec<ScalarJson>,
    pub positive: Vec<usize>,
    pub zero: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdReport {
    /// Stability holds for `1/e²` below this value.
    pub coupling_bound: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e2_min: Option<ScalarJson>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityReport {
    pub closed_cone: bool,
    pub interior: bool,
    pub c1: bool,
    pub c2: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Section<DecompositionReport>,
    pub threshold: Outcome<ThresholdReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuliReport {
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<i64>,
    pub smooth: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KahlerReport {
    pub eta_coefficients: Vec<ScalarJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_correction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    /// Whether fibre integration over the base reproduces the class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VolumeReport {
    pub value: ScalarJson,
    /// Whether integrating `[ω]^D/D!` in the presented ring gives the same number.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring_relations_agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureReport {
    pub value: ScalarJson,
    /// Relative gap to the closed form in terms of the volume.
    pub volume_form_relative_error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstrainedReport {
    pub degree: u32,
    pub dimension: i64,
    pub value: ScalarJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneReport {
    pub allowed: Vec<usize>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjecturalScalar {
    pub value: ScalarJson,
    pub conjectural: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingReport {
    pub planes: Vec<PlaneReport>,
    pub s: String,
    pub open_dense: Outcome<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps_volume: Section<ConjecturalScalar>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsReport {
    pub sigma: Vec<ScalarJson>,
    pub volume: Outcome<ScalarJson>,
    pub kahler_eta: Outcome<Vec<ScalarJson>>,
    pub energy: Outcome<ScalarJson>,
    pub conjectural: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub model: ModelSummary,
    pub sigma: Vec<ScalarJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stability: Section<StabilityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Section<ModuliReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kahler_class: Section<KahlerReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Section<VolumeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_curvature: Section<CurvatureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constrained_volume: Section<ConstrainedReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy: Section<ScalarJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Section<EmbeddingReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Section<LimitsReport>,
    pub warnings: Vec<String>,
    pub provenance: Vec<String>,
}

fn one_based(s: IndexSet) -> Vec<usize> {
    s.iter().map(|j| j + 1).collect()
}

struct Builder<'a> {
    model: &'a GlsmModel,
    file: &'a ModelFile,
    digits: usize,
    warnings: Vec<String>,
    provenance: Vec<String>,
}

impl Builder<'_> {
    fn scalar(&self, p: &PiPoly) -> ScalarJson {
        p.to_json(self.digits)
    }

    fn scalars(&self, ps: &[PiPoly]) -> Vec<ScalarJson> {
        ps.iter().map(|p| self.scalar(p)).collect()
    }

    fn cite(&mut self, s: &str) {
        if !self.provenance.iter().any(|p| p == s) {
            self.provenance.push(s.to_string());
        }
    }

    fn warn(&mut self, s: &str) {
        if !self.warnings.iter().any(|p| p == s) {
            self.warnings.push(s.to_string());
        }
    }

    fn stability(&mut self) -> Result<StabilityReport> {
        let ws = &self.model.weights;
        let sigma = self.model.sigma()?;
        self.cite("Hitchin–Kobayashi criterion");
        let decomposition = (ws.n() == ws.k()).then(|| {
            Outcome::from_result(
                crate::cones::sigma_decomposition_square(ws, &sigma).map(|d| DecompositionReport {
                    lambda: self.scalars(&d.lambda),
                    positive: one_based(d.plus),
                    zero: one_based(d.zero),
                }),
            )
        });
        let threshold = Outcome::from_result(self.model.threshold().map(|t| ThresholdReport {
            coupling_bound: t.u_star_text(),
            e2_min: t.e2_min().map(|e| self.scalar(&e)),
            note: "σ is interior to the cone exactly when e² exceeds e2_min".into(),
        }));
        Ok(StabilityReport {
            closed_cone: in_cone_closed(ws, ws.all(), &sigma)?,
            interior: in_cone_interior(ws, ws.all(), &sigma)?,
            c1: check_c1(ws, &sigma)?,
            c2: check_c2(ws)?,
            decomposition,
            threshold,
        })
    }

    fn moduli(&mut self) -> Result<ModuliReport> {
        let d = build_moduli(self.model)?;
        self.cite("Hitchin–Kobayashi criterion");
        match d.kind {
            Some(ModuliKind::ProjectiveBundle { .. }) => self.cite("Fourier–Mukai transform"),
            Some(ModuliKind::ToricOrbifold { .. } | ModuliKind::ToricFibration { .. }) => {
                self.cite("symplectic quotient of the space of sections")
            }
            _ => {}
        }
        Ok(ModuliReport {
            verdict: match d.verdict {
                Verdict::Empty => "empty",
                Verdict::Stable => "stable",
                Verdict::BoundaryUnstable => "boundary_unstable",
            }
            .into(),
            kind: d.kind.as_ref().map(|k| k.name().to_string()),
            dimension: d.complex_dimension,
            smooth: d.smooth,
            cohomology: d.cohomology.as_ref().map(|p| p.describe()),
            notes: d.notes,
        })
    }

    fn kahler(&mut self) -> Result<KahlerReport> {
        let rep = kahler_class(self.model)?;
        self.cite("L² Kähler class via fibre integration");
        let (class, pipeline_agrees) = if self.model.is_weight_one() {
            let direct = kahler_class_element(self.model)?;
            let agrees = kahler_class_pipeline(self.model).ok().map(|p| p == direct);
            (Some(direct.to_string()), agrees)
        } else {
            (None, None)
        };
        Ok(KahlerReport {
            eta_coefficients: self.scalars(&rep.eta_coefficients),
            base_correction: rep.base_correction.map(|c| c.to_string()),
            class,
            pipeline_agrees,
        })
    }

    fn volume(&mut self) -> Result<VolumeReport> {
        let v = volume_moduli(self.model)?;
        if matches!(
            build_moduli(self.model)?.kind,
            Some(ModuliKind::ProjectiveBundle { .. })
        ) {
            self.cite("Segre push-forward along the projective bundle");
        }
        let ring = self
            .model
            .is_weight_one()
            .then(|| volume_by_ring_relations(self.model).map(|w| w == v))
            .transpose()?;
        Ok(VolumeReport {
            value: self.scalar(&v),
            ring_relations_agree: ring,
        })
    }

    fn curvature(&mut self) -> Result<CurvatureReport> {
        let s = total_scalar_curvature(self.model)?;
        let d = build_moduli(self.model)?;
        let Some(ModuliKind::ProjectiveSpace { dim }) = d.kind else {
            unreachable!("curvature is only computed on projective spaces")
        };
        let alt = scalar_curvature_from_volume(dim + 1, volume_moduli(self.model)?.to_f64())?;
        let exact = s.to_f64();
        Ok(CurvatureReport {
            value: self.scalar(&s),
            volume_form_relative_error: format!("{:.3e}", ((alt - exact) / exact).abs()),
        })
    }

    fn constrained(&mut self, l: u32) -> Result<ConstrainedReport> {
        let man = &self.model.manifold;
        if !self.model.is_weight_one() || !man.has_cyclic_picard() {
            return Err(Error::Unsupported(
                "constraints are supported for weight-one models on cyclic-Picard bases".into(),
            ));
        }
        let BundleDescriptor::Degree(d) = self.model.bundles[0] else {
            return Err(Error::Unsupported("constraint needs a degree".into()));
        };
        let small = |b: BigInt| u32::try_from(b).map_err(|_| Error::Precondition("section count too large".into()));
        let r = small(r_sections(man, &BundleDescriptor::Degree(d))?)?;
        let r_l = small(r_sections(man, &BundleDescriptor::Degree(d * l as i64))?)?;
        let n = self.model.weights.n() as u32;
        let d_desc = build_moduli(self.model)?;
        if d_desc.verdict != Verdict::Stable {
            return Err(Error::NotStable);
        }
        let v = constrained_volume(n, r, l, r_l, &d_desc.sigma[0])?;
        Ok(ConstrainedReport {
            degree: l,
            dimension: constrained_dimension(n, r, r_l),
            value: self.scalar(&v),
        })
    }

    fn energy(&mut self) -> Result<ScalarJson> {
        let e = vortex_energy(self.model)?;
        Ok(self.scalar(&e))
    }

    fn embedding(&mut self) -> Result<EmbeddingReport> {
        let t = ToricTarget::new(self.model.weights.clone(), self.model.tau.clone())?;
        let data = bundle_info(&self.model.manifold, &self.model.bundles)?;
        let planes = unstable_planes(&t)?;
        let s = s_invariant(&t, &data)?;
        let open_dense = Outcome::from_result(embedding_open_dense(&t, &self.model.manifold, &data));
        let maps_volume = match (&self.model.manifold, &self.model.bundles[0]) {
            (ManifoldDescriptor::ProjectiveSpace { .. }, BundleDescriptor::Degree(d)) if self.model.is_weight_one() => {
                let r = maps_volume_conjectural(self.model.weights.n(), &self.model.manifold, *d, &self.model.tau[0]);
                if r.is_ok() {
                    self.warn(
                        "maps_volume is conjectural: it assumes the map-space volume equals the strong-coupling limit",
                    );
                }
                Some(Outcome::from_result(r.map(|c| ConjecturalScalar {
                    value: self.scalar(&c.value),
                    conjectural: c.conjectural,
                })))
            }
            _ => None,
        };
        self.cite("open-dense embedding criterion n − s > dim M");
        Ok(EmbeddingReport {
            planes: planes
                .iter()
                .map(|p| PlaneReport {
                    allowed: one_based(p.allowed),
                    dim: p.dim,
                })
                .collect(),
            s: s.to_string(),
            open_dense,
            maps_volume,
            note: "the embedding needs e² large; the stability threshold gives a sufficient bound that the theory leaves implicit".into(),
        })
    }

    fn limits(&mut self) -> Result<LimitsReport> {
        let sigma = self.model.sigma_with_coupling(&BigRational::from_integer(0.into()))?;
        let scalar_of = |b: &Self, r: Result<LimitValue>| -> Outcome<ScalarJson> {
            Outcome::from_result(r.and_then(|v| match v {
                LimitValue::Scalar(s) => Ok(b.scalar(&s)),
                LimitValue::Kahler(_) => unreachable!("scalar quantity"),
            }))
        };
        let volume = scalar_of(self, strong_coupling_limit(self.model, LimitQuantity::Volume));
        let energy = scalar_of(self, strong_coupling_limit(self.model, LimitQuantity::Energy));
        let kahler_eta =
            Outcome::from_result(
                strong_coupling_limit(self.model, LimitQuantity::KahlerClass).map(|v| match v {
                    LimitValue::Kahler(k) => self.scalars(&k.eta_coefficients),
                    LimitValue::Scalar(_) => unreachable!("class quantity"),
                }),
            );
        self.warn("strong-coupling limits are conjectural as metric statements; only the algebraic substitution 1/e² → 0 is computed");
        self.cite("strong-coupling limit 1/e² → 0");
        Ok(LimitsReport {
            sigma: self.scalars(&sigma),
            volume,
            kahler_eta,
            energy,
            conjectural: true,
        })
    }
}

/// Runs the requested analyses. Only a model that fails validation is an
/// error; analyses that do not apply are recorded in their section.
pub fn build_report(file: &ModelFile, analyses: &[Analysis], digits: usize) -> Result<Report> {
    let model = file.to_model()?;
    let mut b = Builder {
        model: &model,
        file,
        digits,
        warnings: Vec::new(),
        provenance: Vec::new(),
    };
    let sigma = model.sigma()?;
    let want = |a: Analysis| analyses.contains(&a);
    let stability = want(Analysis::Stability).then(|| Outcome::from_result(b.stability()));
    let moduli = want(Analysis::Moduli).then(|| Outcome::from_result(b.moduli()));
    let kahler_class = want(Analysis::Kahler).then(|| Outcome::from_result(b.kahler()));
    let (volume, scalar_curvature, constrained_volume) = if want(Analysis::Volume) {
        let v = Outcome::from_result(b.volume());
        let c = Outcome::from_result(b.curvature());
        let k = b
            .file
            .constraint
            .as_ref()
            .map(|c| Outcome::from_result(b.constrained(c.degree)));
        (Some(v), Some(c), k)
    } else {
        (None, None, None)
    };
    let energy = want(Analysis::Energy).then(|| Outcome::from_result(b.energy()));
    let embedding = want(Analysis::Embedding).then(|| Outcome::from_result(b.embedding()));
    let limits = want(Analysis::Limit).then(|| Outcome::from_result(b.limits()));
    Ok(Report {
        model: ModelSummary {
            name: file.name.clone(),
            manifold: model.manifold.label(),
            k: model.weights.k(),
            n: model.weights.n(),
            tau: model.tau.iter().map(format_rational).collect(),
            e2: format_rational(&model.e2),
        },
        sigma: b.scalars(&sigma),
        stability,
        moduli,
        kahler_class,
        volume,
        scalar_curvature,
        constrained_volume,
        energy,
        embedding,
        limits,
        warnings: b.warnings,
        provenance: b.provenance,
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    /// Whether any requested section failed.
    pub fn has_failures(&self) -> bool {
        fn f<T>(s: &Section<T>) -> bool {
            s.as_ref().is_some_and(Outcome::is_failed)
        }
        f(&self.stability)
            || f(&self.moduli)
            || f(&self.kahler_class)
            || f(&self.volume)
            || f(&self.scalar_curvature)
            || f(&self.constrained_volume)
            || f(&self.energy)
            || f(&self.embedding)
            || f(&self.limits)
    }

    /// Plain-text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let m = &self.model;
        if let Some(n) = &m.name {
            let _ = writeln!(out, "model: {n}");
        }
        let _ = writeln!(out, "base: {}  (k = {}, n = {})", m.manifold, m.k, m.n);
        let _ = writeln!(out, "tau = [{}]  e2 = {}", m.tau.join(", "), m.e2);
        let _ = writeln!(out, "sigma = [{}]", scalars_text(&self.sigma));
        if let Some(s) = &self.stability {
            section(&mut out, "stability", s, |o, s| {
                let _ = writeln!(
                    o,
                    "  closed cone: {}  interior: {}  C1: {}  C2: {}",
                    s.closed_cone, s.interior, s.c1, s.c2
                );
                if let Some(d) = &s.decomposition {
                    match d {
                        Outcome::Done(d) => {
                            let _ = writeln!(
                                o,
                                "  decomposition: λ = [{}]  positive {:?}  zero {:?}",
                                scalars_text(&d.lambda),
                                d.positive,
                                d.zero
                            );
                        }
                        Outcome::Failed(e) => {
                            let _ = writeln!(o, "  decomposition: {}", e.error);
                        }
                    }
                }
                match &s.threshold {
                    Outcome::Done(t) => {
                        let e2 = t.e2_min.as_ref().map_or("none".to_string(), scalar_text);
                        let _ = writeln!(o, "  threshold: 1/e² < {}  (e² > {e2})", t.coupling_bound);
                    }
                    Outcome::Failed(e) => {
                        let _ = writeln!(o, "  threshold: {}", e.error);
                    }
                }
            });
        }
        if let Some(s) = &self.moduli {
            section(&mut out, "moduli", s, |o, s| {
                let _ = writeln!(o, "  verdict: {}", s.verdict);
                if let Some(k) = &s.kind {
                    let _ = writeln!(o, "  kind: {k}");
                }
                if let Some(d) = s.dimension {
                    let _ = writeln!(o, "  complex dimension: {d}");
                }
                let _ = writeln!(o, "  smooth: {}", s.smooth);
                if let Some(c) = &s.cohomology {
                    let _ = writeln!(o, "  cohomology: {c}");
                }
                for n in &s.notes {
                    let _ = writeln!(o, "  note: {n}");
                }
            });
        }
        if let Some(s) = &self.kahler_class {
            section(&mut out, "kahler class", s, |o, s| {
                let _ = writeln!(o, "  η coefficients: [{}]", scalars_text(&s.eta_coefficients));
                if let Some(c) = &s.base_correction {
                    let _ = writeln!(o, "  base correction: {c}");
                }
                if let Some(c) = &s.class {
                    let _ = writeln!(o, "  class: {c}");
                }
                if let Some(a) = s.pipeline_agrees {
                    let _ = writeln!(
                        o,
                        "  fibre-integration check: {}",
                        if a { "agrees" } else { "DISAGREES" }
                    );
                }
            });
        }
        if let Some(s) = &self.volume {
            section(&mut out, "volume", s, |o, s| {
                let _ = writeln!(o, "  {}", scalar_text(&s.value));
                if let Some(a) = s.ring_relations_agree {
                    let _ = writeln!(o, "  ring-relation check: {}", if a { "agrees" } else { "DISAGREES" });
                }
            });
        }
        if let Some(s) = &self.scalar_curvature {
            section(&mut out, "total scalar curvature", s, |o, s| {
                let _ = writeln!(
                    o,
                    "  {}  (volume form relative error {})",
                    scalar_text(&s.value),
                    s.volume_form_relative_error
                );
            });
        }
        if let Some(s) = &self.constrained_volume {
            section(&mut out, "constrained volume", s, |o, s| {
                let _ = writeln!(
                    o,
                    "  degree {}  dimension {}  volume {}",
                    s.degree,
                    s.dimension,
                    scalar_text(&s.value)
                );
            });
        }
        if let Some(s) = &self.energy {
            section(&mut out, "energy", s, |o, s| {
                let _ = writeln!(o, "  {}", scalar_text(s));
            });
        }
        if let Some(s) = &self.embedding {
            section(&mut out, "embedding", s, |o, s| {
                let planes: Vec<String> = s.planes.iter().map(|p| format!("{:?}", p.allowed)).collect();
                let _ = writeln!(o, "  unstable planes (allowed coordinates): {}", planes.join(" "));
                let _ = writeln!(o, "  s = {}", s.s);
                match &s.open_dense {
                    Outcome::Done(b) => {
                        let _ = writeln!(o, "  open dense: {b}");
                    }
                    Outcome::Failed(e) => {
                        let _ = writeln!(o, "  open dense: {}", e.error);
                    }
                }
                match &s.maps_volume {
                    Some(Outcome::Done(v)) => {
                        let _ = writeln!(o, "  map-space volume (conjectural): {}", scalar_text(&v.value));
                    }
                    Some(Outcome::Failed(e)) => {
                        let _ = writeln!(o, "  map-space volume: {}", e.error);
                    }
                    None => {}
                }
            });
        }
        if let Some(s) = &self.limits {
            section(&mut out, "strong-coupling limits", s, |o, s| {
                let _ = writeln!(o, "  sigma → [{}]", scalars_text(&s.sigma));
                for (name, v) in [("volume", &s.volume), ("energy", &s.energy)] {
                    match v {
                        Outcome::Done(v) => {
                            let _ = writeln!(o, "  {name}: {}", scalar_text(v));
                        }
                        Outcome::Failed(e) => {
                            let _ = writeln!(o, "  {name}: {}", e.error);
                        }
                    }
                }
                match &s.kahler_eta {
                    Outcome::Done(v) => {
                        let _ = writeln!(o, "  kahler η coefficients: [{}]", scalars_text(v));
                    }
                    Outcome::Failed(e) => {
                        let _ = writeln!(o, "  kahler class: {}", e.error);
                    }
                }
            });
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        if !self.provenance.is_empty() {
            let _ = writeln!(out, "applied: {}", self.provenance.join("; "));
        }
        out
    }
}

fn section<T>(out: &mut String, title: &str, s: &Outcome<T>, body: impl FnOnce(&mut String, &T)) {
    match s {
        Outcome::Done(v) => {
            let _ = writeln!(out, "{title}:");
            body(out, v);
        }
        Outcome::Failed(e) => {
            let _ = writeln!(out, "{title}: error: {}", e.error);
        }
    }
}

fn scalar_text(s: &ScalarJson) -> String {
    match s.to_pipoly() {
        Ok(p) => format!("{p} ≈ {}", s.approx),
        Err(_) => s.approx.clone(),
    }
}

fn scalars_text(v: &[ScalarJson]) -> String {
    v.iter().map(scalar_text).collect::<Vec<_>>().join(", ")
}

/// Parses a JSON report.
pub fn parse_report(s: &str) -> Result<Report> {
    serde_json::from_str(s).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}
