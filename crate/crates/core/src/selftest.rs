//! Bundled consistency checks, runnable from the command line.
//!
//! Each check compares two independent routes to the same quantity (closed
//! form against pipeline, engine against a brute-force oracle). The fault
//! switch perturbs one exponential-series coefficient so the harness can be
//! seen to fail.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomring::{formal_series, RingElement, Series};
use crate::cones::{in_cone_closed, in_cone_interior, WeightSystem};
use crate::fourier_mukai::{
    ch_transform, ch_transform_via_poincare, chern_closed_form_with, chern_from_character, dual_torus_presentation,
    first_chern_of_transform, segre, AbelianVarietyData,
};
use crate::geometry::{r_sections, BundleDescriptor, ManifoldDescriptor};
use crate::maps::{bundle_info, embedding_open_dense, ToricTarget};
use crate::metrics::{kahler_class_element, kahler_class_pipeline, volume_by_ring_relations, volume_moduli};
use crate::moduli::{build_moduli, GlsmModel, ModuliKind};
use crate::scalars::{binomial, factorial, parse_scalar_json, rat, PiPoly, Sign, DEFAULT_DIGITS};

#[derive(Debug, Clone, Default)]
pub struct SelftestOptions {
    /// Runs only suites whose name, or checks whose `suite::name`, contains this.
    pub filter: Option<String>,
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&SelftestOptions) -> Result<(), String>;

const CHECKS: &[(&str, &str, Check)] = &[
    ("scalars", "pi_enclosure", scalars_pi),
    ("scalars", "json_round_trip", scalars_json),
    ("cones", "scalar_cones_against_signs", cones_scalar),
    ("cones", "planar_cones_against_cramer", cones_planar),
    ("cohomring", "exp_log_inverse", cohomring_exp_log),
    ("cohomring", "koszul_signs", cohomring_koszul),
    ("fourier_mukai", "closed_form_low_dimension", fm_closed_form),
    ("fourier_mukai", "poincare_transform", fm_poincare),
    ("fourier_mukai", "segre_inverse", fm_segre),
    ("geometry", "section_counts", geometry_sections),
    ("moduli", "projective_space_of_sections", moduli_projective),
    ("metrics", "kahler_two_routes", metrics_kahler),
    ("metrics", "volume_two_routes", metrics_volume),
    ("maps", "n_greater_than_m", maps_rule),
];

/// Suite names in execution order.
pub fn suite_names() -> Vec<&'static str> {
    let mut v: Vec<&str> = CHECKS.iter().map(|c| c.0).collect();
    v.dedup();
    v
}

pub fn run_selftest(opts: &SelftestOptions) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .filter(|(suite, name, _)| match &opts.filter {
            None => true,
            Some(f) => suite.contains(f.as_str()) || format!("{suite}::{name}").contains(f.as_str()),
        })
        .map(|&(suite, name, check)| {
            let r = std::panic::catch_unwind(|| check(opts)).unwrap_or_else(|_| Err("check panicked".into()));
            CheckResult {
                suite,
                name,
                passed: r.is_ok(),
                detail: r.err().unwrap_or_default(),
            }
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: crate::Error) -> String {
    err.to_string()
}

fn scalars_pi(_: &SelftestOptions) -> Result<(), String> {
    let lo = PiPoly::from_coeffs(vec![BigRational::new(333.into(), 106.into()), rat(-1)]);
    let hi = PiPoly::from_coeffs(vec![BigRational::new(355.into(), 113.into()), rat(-1)]);
    ensure(lo.sign() == Sign::Negative && hi.sign() == Sign::Positive, || {
        "π is not enclosed by 333/106 and 355/113".into()
    })?;
    ensure(PiPoly::pi().approx(12) == "3.141592653589", || PiPoly::pi().approx(12))
}

fn scalars_json(_: &SelftestOptions) -> Result<(), String> {
    let p = PiPoly::from_coeffs(vec![rat(2), BigRational::new((-1).into(), 50.into()), rat(7)]);
    let json = serde_json::to_string(&p.to_json(DEFAULT_DIGITS)).map_err(|x| x.to_string())?;
    let back = parse_scalar_json(&json).map_err(e)?;
    ensure(back == p, || format!("{p} came back as {back}"))
}

fn cones_scalar(_: &SelftestOptions) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let cols: Vec<Vec<i64>> = (0..n).map(|_| vec![rng.gen_range(-3..=3)]).collect();
        let Ok(ws) = WeightSystem::new(1, cols.clone()) else {
            continue;
        };
        let v = rng.gen_range(-3..=3i64);
        let vp = [PiPoly::from_int(v)];
        let closed = v == 0 || cols.iter().any(|c| c[0].signum() == v.signum());
        let interior = if v == 0 {
            cols.iter().any(|c| c[0] > 0) && cols.iter().any(|c| c[0] < 0)
        } else {
            closed
        };
        let all = ws.all();
        let got = (
            in_cone_closed(&ws, all, &vp).map_err(e)?,
            in_cone_interior(&ws, all, &vp).map_err(e)?,
        );
        ensure(got == (closed, interior), || {
            format!("weights {cols:?}, v = {v}: got {got:?}")
        })?;
    }
    Ok(())
}

fn cones_planar(_: &SelftestOptions) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let a: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-3..=3));
        let det = a[0] * a[3] - a[1] * a[2];
        if det == 0 {
            continue;
        }
        let ws = WeightSystem::new(2, vec![vec![a[0], a[2]], vec![a[1], a[3]]]).map_err(e)?;
        let v = [rng.gen_range(-3..=3i64), rng.gen_range(-3..=3i64)];
        // Cramer's rule: coefficients have the sign of these numerators over det.
        let l1 = (v[0] * a[3] - a[1] * v[1]) * det.signum();
        let l2 = (a[0] * v[1] - v[0] * a[2]) * det.signum();
        let vp = [PiPoly::from_int(v[0]), PiPoly::from_int(v[1])];
        let interior = in_cone_interior(&ws, ws.all(), &vp).map_err(e)?;
        let closed = in_cone_closed(&ws, ws.all(), &vp).map_err(e)?;
        ensure(interior == (l1 > 0 && l2 > 0) && closed == (l1 >= 0 && l2 >= 0), || {
            format!("matrix {a:?}, v = {v:?}")
        })?;
    }
    Ok(())
}

fn cohomring_exp_log(_: &SelftestOptions) -> Result<(), String> {
    let p = dual_torus_presentation(2);
    let x = RingElement::odd_word(&p, &[0, 2]).scale_rational(&rat(3)) + RingElement::odd_word(&p, &[1, 3]);
    let l = formal_series(Series::Log1p, &x).map_err(e)?;
    let back = formal_series(Series::Exp, &l).map_err(e)?;
    ensure(back == RingElement::one(&p) + x, || format!("exp(log(1 + x)) = {back}"))
}

fn cohomring_koszul(_: &SelftestOptions) -> Result<(), String> {
    let p = dual_torus_presentation(1);
    let a = &RingElement::odd_word(&p, &[0]) * &RingElement::odd_word(&p, &[1]);
    let b = &RingElement::odd_word(&p, &[1]) * &RingElement::odd_word(&p, &[0]);
    ensure(a == -b, || "odd generators commute".into())
}

fn fm_closed_form(opts: &SelftestOptions) -> Result<(), String> {
    let fault = opts.inject_fault;
    let coeff = move |k: usize| {
        let c = BigRational::new(BigInt::from(1), factorial(k as u64));
        if fault && k == 2 {
            c + BigRational::new(1.into(), 1000.into())
        } else {
            c
        }
    };
    for m in 1..=2usize {
        for d1 in 1..=3 {
            for d2 in 1..=3 {
                let deltas: Vec<i64> = [d1, d2][..m].to_vec();
                let av = AbelianVarietyData::new(m, deltas.clone(), vec![rat(1); m]).map_err(e)?;
                let truth = chern_from_character(&ch_transform(&av)).map_err(e)?;
                let closed = chern_closed_form_with(&av.rank(), &first_chern_of_transform(&av), &coeff).map_err(e)?;
                ensure(closed == truth, || {
                    format!("δ = {deltas:?}: closed form {closed} vs {truth}")
                })?;
            }
        }
    }
    Ok(())
}

fn fm_poincare(_: &SelftestOptions) -> Result<(), String> {
    for deltas in [vec![2], vec![1, 3], vec![2, 1, 2]] {
        let m = deltas.len();
        let av = AbelianVarietyData::new(m, deltas.clone(), vec![rat(1); m]).map_err(e)?;
        let a = ch_transform(&av);
        let b = ch_transform_via_poincare(&av).map_err(e)?;
        ensure(a == b, || format!("δ = {deltas:?}: {a} vs {b}"))?;
    }
    Ok(())
}

fn fm_segre(_: &SelftestOptions) -> Result<(), String> {
    for deltas in [vec![3], vec![2, 2], vec![1, 2, 3]] {
        let m = deltas.len();
        let av = AbelianVarietyData::new(m, deltas, vec![rat(1); m]).map_err(e)?;
        let c = chern_from_character(&ch_transform(&av)).map_err(e)?;
        let s = segre(&c).map_err(e)?;
        ensure((&s * &c) == RingElement::one(c.presentation()), || {
            format!("s·c ≠ 1 for c = {c}")
        })?;
    }
    Ok(())
}

fn geometry_sections(_: &SelftestOptions) -> Result<(), String> {
    let cp = |m| ManifoldDescriptor::ProjectiveSpace { m, lambda: rat(1) };
    for m in 1..=4u32 {
        for d in 0..=6i64 {
            let a = r_sections(&cp(m), &BundleDescriptor::Degree(d)).map_err(e)?;
            let gr = ManifoldDescriptor::Grassmannian {
                n: m + 1,
                k: 1,
                lambda: rat(1),
            };
            let b = r_sections(&gr, &BundleDescriptor::Degree(d)).map_err(e)?;
            let want = binomial(m as u64 + d as u64, d as u64);
            ensure(a == want && b == want, || {
                format!("m = {m}, d = {d}: {a}, {b}, want {want}")
            })?;
        }
    }
    let gr = ManifoldDescriptor::Grassmannian {
        n: 4,
        k: 2,
        lambda: rat(1),
    };
    ensure(
        r_sections(&gr, &BundleDescriptor::Degree(1)).map_err(e)? == 6.into(),
        || "Gr(4,2), d = 1".into(),
    )
}

fn moduli_projective(_: &SelftestOptions) -> Result<(), String> {
    let cp1 = ManifoldDescriptor::ProjectiveSpace { m: 1, lambda: rat(1) };
    let m = GlsmModel::weight_one(cp1, BundleDescriptor::Degree(2), 3, rat(100), rat(1)).map_err(e)?;
    let d = build_moduli(&m).map_err(e)?;
    ensure(d.kind == Some(ModuliKind::ProjectiveSpace { dim: 8 }), || {
        format!("{:?}", d.kind)
    })
}

fn sample_models() -> Result<Vec<GlsmModel>, String> {
    let cp2 = ManifoldDescriptor::ProjectiveSpace { m: 2, lambda: rat(1) };
    let surface = ManifoldDescriptor::AbelianVariety {
        lambdas: vec![rat(1), rat(2)],
    };
    let curve = ManifoldDescriptor::AbelianVariety { lambdas: vec![rat(3)] };
    Ok(vec![
        GlsmModel::line_bundle(cp2, BundleDescriptor::Degree(2), rat(100), rat(1)).map_err(e)?,
        GlsmModel::line_bundle(surface.clone(), BundleDescriptor::Deltas(vec![2, 1]), rat(100), rat(1)).map_err(e)?,
        GlsmModel::weight_one(surface, BundleDescriptor::Deltas(vec![1, 1]), 2, rat(50), rat(2)).map_err(e)?,
        GlsmModel::line_bundle(curve, BundleDescriptor::Deltas(vec![2]), rat(10), rat(1)).map_err(e)?,
    ])
}

fn metrics_kahler(_: &SelftestOptions) -> Result<(), String> {
    for m in sample_models()? {
        let a = kahler_class_element(&m).map_err(e)?;
        let b = kahler_class_pipeline(&m).map_err(e)?;
        ensure(a == b, || format!("{}: {a} vs {b}", m.manifold.label()))?;
    }
    Ok(())
}

fn metrics_volume(_: &SelftestOptions) -> Result<(), String> {
    for m in sample_models()? {
        let a = volume_moduli(&m).map_err(e)?;
        let b = volume_by_ring_relations(&m).map_err(e)?;
        ensure(a == b, || format!("{}: {a} vs {b}", m.manifold.label()))?;
    }
    Ok(())
}

fn maps_rule(_: &SelftestOptions) -> Result<(), String> {
    for m in 1..=4u32 {
        for n in 2..=5usize {
            let man = ManifoldDescriptor::ProjectiveSpace { m, lambda: rat(1) };
            let t = ToricTarget::projective_space(n, rat(1)).map_err(e)?;
            let data = bundle_info(&man, &vec![BundleDescriptor::Degree(1); n]).map_err(e)?;
            let got = embedding_open_dense(&t, &man, &data).map_err(e)?;
            ensure(got == (n as u32 > m), || format!("m = {m}, n = {n}: {got}"))?;
        }
    }
    Ok(())
}
