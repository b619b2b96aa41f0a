//! Holomorphic maps into toric targets: unstable coordinate planes, the
//! `s`-invariant, the open-dense embedding criterion and the conjectural
//! volume of spaces of maps.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cones::{all_subsets, check_c1, check_c2, interior_table, IndexSet, WeightSystem};
use crate::error::{precondition, Error, Result};
use crate::geometry::{is_trivial, r_sections, BundleDescriptor, ManifoldDescriptor};
use crate::metrics::{strong_coupling_limit, LimitQuantity, LimitValue};
use crate::moduli::GlsmModel;
use crate::scalars::{rat, PiPoly};

/// The toric manifold `μ⁻¹(τ)/T^k` with `μ` built from the weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricTarget {
    weights: WeightSystem,
    tau: Vec<BigRational>,
}

impl ToricTarget {
    /// Checks (H1) on `τ` and (H2) on the weights.
    pub fn new(weights: WeightSystem, tau: Vec<BigRational>) -> Result<Self> {
        if !check_c2(&weights)? {
            return Err(precondition("weights violate (H2): some spanning subset misses ℤ^k"));
        }
        Self::orbifold(weights, tau)
    }

    /// Checks (H1) only. The quotient may then have orbifold points, but the
    /// unstable locus and the `s`-invariant depend on (H1) alone.
    pub fn orbifold(weights: WeightSystem, tau: Vec<BigRational>) -> Result<Self> {
        let v: Vec<PiPoly> = tau.iter().cloned().map(PiPoly::constant).collect();
        if !check_c1(&weights, &v)? {
            return Err(precondition("τ violates (H1): it lies on a wall or outside the cone"));
        }
        Ok(ToricTarget { weights, tau })
    }

    /// `ℂℙ^{n−1}`: one circle acting with weight one on every coordinate.
    pub fn projective_space(n: usize, tau: BigRational) -> Result<Self> {
        Self::new(WeightSystem::new(1, vec![vec![1]; n])?, vec![tau])
    }

    pub fn weights(&self) -> &WeightSystem {
        &self.weights
    }

    pub fn tau(&self) -> &[BigRational] {
        &self.tau
    }

    pub fn n(&self) -> usize {
        self.weights.n()
    }

    fn tau_pi(&self) -> Vec<PiPoly> {
        self.tau.iter().cloned().map(PiPoly::constant).collect()
    }
}

/// The plane `{z : z_j = 0 for j ∉ allowed}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnstablePlane {
    pub allowed: IndexSet,
    pub dim: usize,
}

/// Maximal coordinate planes whose points are unstable (`τ` not interior to
/// the cone of their support), by dimension descending then lexicographic.
pub fn unstable_planes(t: &ToricTarget) -> Result<Vec<UnstablePlane>> {
    let table = interior_table(&t.weights, &t.tau_pi())?;
    let n = t.n();
    let full = IndexSet::full(n).bits();
    let mut out = Vec::new();
    for s in all_subsets(n) {
        if table[s.bits() as usize] {
            continue;
        }
        // Walk the nonempty submasks of the complement looking for a larger unstable set.
        let rest = full & !s.bits();
        let mut sub = rest;
        let mut maximal = true;
        while sub != 0 {
            if !table[(s.bits() | sub) as usize] {
                maximal = false;
                break;
            }
            sub = (sub - 1) & rest;
        }
        if maximal {
            out.push(UnstablePlane {
                allowed: s,
                dim: s.len(),
            });
        }
    }
    out.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.allowed.lex_cmp(b.allowed)));
    Ok(out)
}

/// `H⁰` dimension and triviality of one bundle `L_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleInfo {
    pub sections: BigInt,
    pub trivial: bool,
}

/// Section counts and triviality of each bundle, from the geometry module.
pub fn bundle_info(man: &ManifoldDescriptor, bundles: &[BundleDescriptor]) -> Result<Vec<BundleInfo>> {
    bundles
        .iter()
        .map(|b| {
            Ok(BundleInfo {
                sections: r_sections(man, b)?,
                trivial: is_trivial(man, b)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SInvariant {
    NegInfinity,
    Finite(i64),
}

impl PartialOrd for SInvariant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SInvariant {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (SInvariant::NegInfinity, SInvariant::NegInfinity) => Ordering::Equal,
            (SInvariant::NegInfinity, _) => Ordering::Less,
            (_, SInvariant::NegInfinity) => Ordering::Greater,
            (SInvariant::Finite(a), SInvariant::Finite(b)) => a.cmp(b),
        }
    }
}

impl std::fmt::Display for SInvariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SInvariant::NegInfinity => write!(f, "-inf"),
            SInvariant::Finite(s) => write!(f, "{s}"),
        }
    }
}

/// `s_α` for one plane: `−∞` if a coordinate forced to vanish lives in a
/// trivial bundle, else `dim E_α` plus the number of forced coordinates
/// whose bundle has no sections.
pub fn plane_invariant(plane: &UnstablePlane, data: &[BundleInfo]) -> SInvariant {
    let mut s = plane.dim as i64;
    for (j, b) in data.iter().enumerate() {
        if plane.allowed.contains(j) {
            continue;
        }
        if b.trivial {
            return SInvariant::NegInfinity;
        }
        if b.sections.is_zero() {
            s += 1;
        }
    }
    SInvariant::Finite(s)
}

/// `s = max_α s_α` over the maximal unstable planes.
pub fn s_invariant(t: &ToricTarget, data: &[BundleInfo]) -> Result<SInvariant> {
    if data.len() != t.n() {
        return Err(Error::LengthMismatch {
            expected: t.n(),
            found: data.len(),
        });
    }
    if data.iter().any(|b| b.sections.is_negative()) {
        return Err(precondition("section counts must be nonnegative"));
    }
    Ok(unstable_planes(t)?
        .iter()
        .map(|p| plane_invariant(p, data))
        .max()
        .unwrap_or(SInvariant::NegInfinity))
}

/// Whether maps `ℂℙᵐ → X` embed as an open dense subset of the vortex moduli
/// space: `n − s > m`. Only projective-space domains are accepted.
pub fn embedding_open_dense(t: &ToricTarget, man: &ManifoldDescriptor, data: &[BundleInfo]) -> Result<bool> {
    let ManifoldDescriptor::ProjectiveSpace { m, .. } = man else {
        return Err(Error::Unsupported(format!(
            "the embedding criterion is established for projective-space domains, not {}",
            man.label()
        )));
    };
    Ok(match s_invariant(t, data)? {
        SInvariant::NegInfinity => true,
        SInvariant::Finite(s) => t.n() as i64 - s > *m as i64,
    })
}

/// A value resting on the conjectured identification of the map-space
/// volume with the strong-coupling limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjectural {
    pub value: PiPoly,
    pub conjectural: bool,
}

/// `Vol(𝓗_d) = (πτ·Vol M)^{nr−1}/(nr−1)!` for degree-`d` maps `M → ℂℙ^{n−1}`,
/// obtained as the `1/e² → 0` limit of the weight-one vortex volume.
pub fn maps_volume_conjectural(n: usize, man: &ManifoldDescriptor, d: i64, tau: &BigRational) -> Result<Conjectural> {
    if d < 0 {
        return Err(precondition("map degree must be nonnegative"));
    }
    if !tau.is_positive() {
        return Err(precondition("τ must be positive"));
    }
    let t = ToricTarget::projective_space(n, tau.clone())?;
    let bundles = vec![BundleDescriptor::Degree(d); n];
    if !embedding_open_dense(&t, man, &bundle_info(man, &bundles)?)? {
        return Err(Error::NotOpenDense);
    }
    let model = GlsmModel::weight_one(man.clone(), BundleDescriptor::Degree(d), n, tau.clone(), rat(1))?;
    let LimitValue::Scalar(value) = strong_coupling_limit(&model, LimitQuantity::Volume)? else {
        unreachable!("volume limits are scalars")
    };
    Ok(Conjectural {
        value,
        conjectural: true,
    })
}
