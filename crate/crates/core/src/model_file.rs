//! JSON model files.
//!
//! ```json
//! {
//!   "manifold": {"type": "projective_space", "m": 1, "lambda": "1"},
//!   "weights": [[1, 1]],
//!   "tau": ["2"],
//!   "e2": "100",
//!   "bundles": [{"degree": 1}, {"degree": 1}]
//! }
//! ```
//!
//! Exact inputs are rationals written as `"p/q"` strings or JSON integers;
//! JSON floats are rejected.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cones::WeightSystem;
use crate::error::{Error, Result};
use crate::geometry::{BundleDescriptor, ManifoldDescriptor, SectionData};
use crate::moduli::GlsmModel;
use crate::scalars::{format_rational, parse_rational};

/// An exact rational in JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub BigRational);

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as a \"p/q\" string or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational(BigRational::from_integer(v.into())))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rational, E> {
        Err(E::custom(format!(
            "floating-point value {v} is not accepted; write exact rationals as \"p/q\" strings"
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        parse_rational(v).map(Rational).map_err(|e| E::custom(e.to_string()))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

/// An exact integer in JSON: a number or a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Integer(pub BigInt);

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct IntegerVisitor;

impl Visitor<'_> for IntegerVisitor {
    type Value = Integer;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Integer, E> {
        Ok(Integer(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Integer, E> {
        Ok(Integer(v.into()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Integer, E> {
        Err(E::custom(format!("floating-point value {v} is not an integer")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Integer, E> {
        v.trim()
            .parse::<BigInt>()
            .map(Integer)
            .map_err(|_| E::custom(format!("`{v}` is not an integer")))
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(IntegerVisitor)
    }
}

/// Map key holding a degree. Keys arrive as strings, including inside the
/// buffered content of a tagged enum, so the number is parsed by hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DegreeKey(pub i64);

struct DegreeKeyVisitor;

impl Visitor<'_> for DegreeKeyVisitor {
    type Value = DegreeKey;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer degree")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<DegreeKey, E> {
        Ok(DegreeKey(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<DegreeKey, E> {
        i64::try_from(v)
            .map(DegreeKey)
            .map_err(|_| E::custom("degree out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<DegreeKey, E> {
        v.trim()
            .parse()
            .map(DegreeKey)
            .map_err(|_| E::custom(format!("`{v}` is not an integer degree")))
    }
}

impl<'de> Deserialize<'de> for DegreeKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(DegreeKeyVisitor)
    }
}

fn one() -> Rational {
    Rational(BigRational::from_integer(1.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ManifoldSpec {
    ProjectiveSpace {
        m: u32,
        #[serde(default = "one")]
        lambda: Rational,
    },
    Grassmannian {
        n: u32,
        k: u32,
        #[serde(default = "one")]
        lambda: Rational,
    },
    Hirzebruch {
        k: u32,
        lambda: Rational,
        delta: Rational,
    },
    AbelianVariety {
        lambdas: Vec<Rational>,
    },
    GenericPicZ {
        m: u32,
        t_m: Integer,
        #[serde(default = "one")]
        lambda: Rational,
        /// `dim H⁰(E^d)` keyed by the degree `d`.
        #[serde(default)]
        sections: BTreeMap<DegreeKey, Integer>,
    },
    GenericSimplyConnected {
        m: u32,
        vol: Rational,
        table: Vec<SectionRow>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionRow {
    pub r: Integer,
    pub slope_vol: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BundleSpec {
    Degree(i64),
    Bidegree(i64, i64),
    Deltas(Vec<i64>),
    Index(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    /// The constraint is a section of `L^degree`.
    pub degree: u32,
}

/// Report sections a model file can ask for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    Stability,
    Moduli,
    Kahler,
    Volume,
    Energy,
    Embedding,
    Limit,
}

impl Analysis {
    pub const ALL: [Analysis; 7] = [
        Analysis::Stability,
        Analysis::Moduli,
        Analysis::Kahler,
        Analysis::Volume,
        Analysis::Energy,
        Analysis::Embedding,
        Analysis::Limit,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub manifold: ManifoldSpec,
    /// Rows `Q^a` of the `k × n` weight matrix.
    pub weights: Vec<Vec<i64>>,
    pub tau: Vec<Rational>,
    pub e2: Rational,
    pub bundles: Vec<BundleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint: Option<ConstraintSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<Vec<Analysis>>,
}

/// Parses a model file; syntax and schema errors carry line and column.
pub fn parse_model(s: &str) -> Result<ModelFile> {
    serde_json::from_str(s).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

impl ManifoldSpec {
    pub fn to_descriptor(&self) -> ManifoldDescriptor {
        match self {
            ManifoldSpec::ProjectiveSpace { m, lambda } => ManifoldDescriptor::ProjectiveSpace {
                m: *m,
                lambda: lambda.0.clone(),
            },
            ManifoldSpec::Grassmannian { n, k, lambda } => ManifoldDescriptor::Grassmannian {
                n: *n,
                k: *k,
                lambda: lambda.0.clone(),
            },
            ManifoldSpec::Hirzebruch { k, lambda, delta } => ManifoldDescriptor::Hirzebruch {
                k: *k,
                lambda: lambda.0.clone(),
                delta: delta.0.clone(),
            },
            ManifoldSpec::AbelianVariety { lambdas } => ManifoldDescriptor::AbelianVariety {
                lambdas: lambdas.iter().map(|l| l.0.clone()).collect(),
            },
            ManifoldSpec::GenericPicZ {
                m,
                t_m,
                lambda,
                sections,
            } => ManifoldDescriptor::GenericPicZ {
                m: *m,
                t_m: t_m.0.clone(),
                lambda: lambda.0.clone(),
                sections: sections.iter().map(|(d, r)| (d.0, r.0.clone())).collect(),
            },
            ManifoldSpec::GenericSimplyConnected { m, vol, table } => ManifoldDescriptor::GenericSimplyConnected {
                m: *m,
                vol: vol.0.clone(),
                table: table
                    .iter()
                    .map(|row| SectionData {
                        r: row.r.0.clone(),
                        slope_vol: row.slope_vol.0.clone(),
                    })
                    .collect(),
            },
        }
    }
}

impl BundleSpec {
    pub fn to_descriptor(&self) -> BundleDescriptor {
        match self {
            BundleSpec::Degree(d) => BundleDescriptor::Degree(*d),
            BundleSpec::Bidegree(a, b) => BundleDescriptor::Bidegree(*a, *b),
            BundleSpec::Deltas(ds) => BundleDescriptor::Deltas(ds.clone()),
            BundleSpec::Index(i) => BundleDescriptor::Index(*i),
        }
    }
}

impl ModelFile {
    pub fn manifold_descriptor(&self) -> ManifoldDescriptor {
        self.manifold.to_descriptor()
    }

    pub fn bundle_descriptors(&self) -> Vec<BundleDescriptor> {
        self.bundles.iter().map(BundleSpec::to_descriptor).collect()
    }

    /// Validates the file against the domain and builds the model.
    pub fn to_model(&self) -> Result<GlsmModel> {
        let weights = WeightSystem::from_rows(&self.weights)?;
        GlsmModel::new(
            self.manifold_descriptor(),
            weights,
            self.tau.iter().map(|t| t.0.clone()).collect(),
            self.e2.0.clone(),
            self.bundle_descriptors(),
        )
    }

    /// Requested analyses, all of them when the file does not say.
    pub fn analyses(&self) -> Vec<Analysis> {
        let mut a = self.analysis.clone().unwrap_or_else(|| Analysis::ALL.to_vec());
        a.sort();
        a.dedup();
        a
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model files serialise")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    const CP1: &str = r#"{
  "manifold": {"type": "projective_space", "m": 1},
  "weights": [[1]],
  "tau": ["2"],
  "e2": 1,
  "bundles": [{"degree": 1}]
}"#;

    #[test]
    fn parses_and_builds() {
        let f = parse_model(CP1).unwrap();
        let m = f.to_model().unwrap();
        assert_eq!(m.tau, vec![rat(2)]);
        assert_eq!(m.e2, rat(1));
        assert_eq!(f.analyses(), Analysis::ALL.to_vec());
        assert_eq!(parse_model(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn rejects_floats_with_position() {
        let bad = CP1.replace("\"2\"", "1.5");
        match parse_model(&bad) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 4);
                assert!(message.contains("floating-point"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_model(&CP1.replace("\"2\"", "\"1.5\"")),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn rejects_unknown_keys() {
        let bad = CP1.replace("\"e2\"", "\"e_2\"");
        assert!(matches!(parse_model(&bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn every_manifold_kind_parses() {
        let docs = [
            r#"{"type":"grassmannian","n":4,"k":2}"#,
            r#"{"type":"hirzebruch","k":1,"lambda":"3","delta":"1"}"#,
            r#"{"type":"abelian_variety","lambdas":["1","2"]}"#,
            r#"{"type":"generic_pic_z","m":3,"t_m":5,"sections":{"1":5,"2":"15"}}"#,
            r#"{"type":"generic_simply_connected","m":2,"vol":"3/2","table":[{"r":3,"slope_vol":"1/2"}]}"#,
        ];
        for d in docs {
            let spec: ManifoldSpec = serde_json::from_str(d).unwrap();
            spec.to_descriptor().validate().unwrap();
            let again: ManifoldSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
            assert_eq!(again, spec);
        }
    }

    #[test]
    fn domain_errors_are_not_parse_errors() {
        let f = parse_model(&CP1.replace("[[1]]", "[[1, 1]]")).unwrap();
        assert!(matches!(f.to_model(), Err(Error::LengthMismatch { .. })));
    }
}
