//! Exact scalars in ℚ[π].
//!
//! Every quantity the engine produces is a polynomial in π with rational
//! coefficients. Since π is transcendental the canonical coefficient vector
//! determines the value, so structural equality is value equality. Signs and
//! decimal renderings come from interval evaluation on a rigorous enclosure
//! of π that is refined until the answer is certain.

mod pi;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};

#[cfg(test)]
pub(crate) use rational::frac;
pub(crate) use rational::{binomial, factorial, format_rational_short, rat};
pub use rational::{format_rational, parse_rational};

/// Default number of decimal digits in rendered approximations.
pub const DEFAULT_DIGITS: usize = 12;

/// A polynomial `Σ c_i π^i` with rational coefficients, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiPoly {
    coeffs: Vec<BigRational>,
}

/// Sign of a real quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

impl PiPoly {
    pub fn zero() -> Self {
        PiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn pi() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(q: BigRational) -> Self {
        Self::from_coeffs(vec![q])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `q·π^i`.
    pub fn monomial(q: BigRational, i: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); i + 1];
        coeffs[i] = q;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PiPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `π^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree in π, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The rational value if the polynomial is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// `Some((q, i))` when the polynomial is the single term `q·π^i`.
    pub fn as_monomial(&self) -> Option<(BigRational, usize)> {
        let mut it = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let first = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some((first.1.clone(), first.0))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        PiPoly {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division by the monomial `q·π^i`.
    ///
    /// Fails unless `q ≠ 0` and every term of `self` has π-degree at least `i`.
    pub fn div_monomial(&self, q: &BigRational, i: usize) -> Result<Self> {
        if q.is_zero() {
            return Err(precondition("division by zero"));
        }
        if self.coeffs.iter().take(i).any(|c| !c.is_zero()) {
            return Err(precondition(format!("{self} is not divisible by π^{i} in ℚ[π]")));
        }
        let inv = q.recip();
        Ok(PiPoly::from_coeffs(
            self.coeffs.iter().skip(i).map(|c| c * &inv).collect(),
        ))
    }

    /// Divides by a nonzero scalar of the form `q·π^i`.
    pub fn div_by(&self, other: &PiPoly) -> Result<Self> {
        let (q, i) = other
            .as_monomial()
            .ok_or_else(|| precondition(format!("division by non-monomial {other}")))?;
        self.div_monomial(&q, i)
    }

    /// Interval image of the polynomial when π ranges over `[lo, hi]`, `lo > 0`.
    fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut low = BigRational::zero();
        let mut high = BigRational::zero();
        let mut plo = BigRational::one();
        let mut phi = BigRational::one();
        for c in &self.coeffs {
            if c.is_positive() {
                low += c * &plo;
                high += c * &phi;
            } else if c.is_negative() {
                low += c * &phi;
                high += c * &plo;
            }
            plo = &plo * lo;
            phi = &phi * hi;
        }
        (low, high)
    }

    /// Exact sign, decided on a π-enclosure refined until it is certain.
    pub fn sign(&self) -> Sign {
        if let Some(q) = self.as_rational() {
            return rational_sign(&q);
        }
        let mut bits = 160u32;
        loop {
            let (lo, hi) = pi::enclosure(bits);
            let (a, b) = self.eval_interval(&lo, &hi);
            if a.is_positive() {
                return Sign::Positive;
            }
            if b.is_negative() {
                return Sign::Negative;
            }
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    /// Decimal rendering with `digits` places after the point.
    ///
    /// The value is truncated toward zero at the last place, so the rendering
    /// never overstates the magnitude and a nonzero rendering always has the
    /// sign of the exact value. A negative quantity that truncates to zero is
    /// written without a minus sign.
    pub fn approx(&self, digits: usize) -> String {
        let scale = BigRational::from_integer(BigInt::from(10u32).pow(digits as u32));
        let n = if let Some(q) = self.as_rational() {
            (q * &scale).to_integer()
        } else {
            let mut bits = 160u32.max((digits as f64 * 3.33) as u32 + 64);
            loop {
                let (lo, hi) = pi::enclosure(bits);
                let (a, b) = self.eval_interval(&lo, &hi);
                let ta = (a * &scale).to_integer();
                let tb = (b * &scale).to_integer();
                if ta == tb {
                    break ta;
                }
                bits *= 2;
            }
        };
        render_fixed(&n, digits)
    }

    /// Nearest `f64` (through a 20-digit rendering).
    pub fn to_f64(&self) -> f64 {
        self.approx(20).parse().unwrap_or(f64::NAN)
    }

    /// Exact JSON form with a decimal approximation at `digits` places.
    pub fn to_json(&self, digits: usize) -> ScalarJson {
        ScalarJson {
            coeffs: self.coeffs.iter().map(format_rational).collect(),
            approx: self.approx(digits),
        }
    }

    /// Evaluates at π substituted by `x` (used for polynomials in other variables).
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

fn rational_sign(q: &BigRational) -> Sign {
    if q.is_positive() {
        Sign::Positive
    } else if q.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

fn render_fixed(n: &BigInt, digits: usize) -> String {
    let neg = n.is_negative();
    let mut s = n.abs().to_string();
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (int, frac) = s.split_at(s.len() - digits);
    let body = if digits == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// JSON shape of a scalar: exact coefficients of `π^0, π^1, …` plus a decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarJson {
    pub coeffs: Vec<String>,
    pub approx: String,
}

impl ScalarJson {
    /// Recovers the exact scalar; the approximation field is not trusted.
    pub fn to_pipoly(&self) -> Result<PiPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        let p = PiPoly::from_coeffs(coeffs);
        if p.coeffs.len() != self.coeffs.len() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "coefficient list has trailing zeros".into(),
            });
        }
        Ok(p)
    }
}

/// Parses the JSON object form of a scalar.
pub fn parse_scalar_json(s: &str) -> Result<PiPoly> {
    let j: ScalarJson = serde_json::from_str(s).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    j.to_pipoly()
}

impl PartialOrd for PiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl From<BigRational> for PiPoly {
    fn from(q: BigRational) -> Self {
        PiPoly::constant(q)
    }
}

impl From<i64> for PiPoly {
    fn from(n: i64) -> Self {
        PiPoly::from_int(n)
    }
}

impl<'a> Add<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        PiPoly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a PiPoly> for &'a PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        if self.is_zero() || rhs.is_zero() {
            return PiPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PiPoly::from_coeffs(coeffs)
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<PiPoly> for PiPoly {
            type Output = PiPoly;
            fn $m(self, rhs: PiPoly) -> PiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a PiPoly> for PiPoly {
            type Output = PiPoly;
            fn $m(self, rhs: &PiPoly) -> PiPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<PiPoly> for &'a PiPoly {
            type Output = PiPoly;
            fn $m(self, rhs: PiPoly) -> PiPoly {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&PiPoly> for PiPoly {
    fn add_assign(&mut self, rhs: &PiPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&PiPoly> for PiPoly {
    fn sub_assign(&mut self, rhs: &PiPoly) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for PiPoly {
    fn sum<I: Iterator<Item = PiPoly>>(iter: I) -> Self {
        iter.fold(PiPoly::zero(), |a, b| a + b)
    }
}

pub(crate) fn superscript(n: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| SUP[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub(crate) fn subscript(n: usize) -> String {
    const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| SUB[c.to_digit(10).unwrap() as usize])
        .collect()
}

impl fmt::Display for PiPoly {
    /// Ascending powers, e.g. `2 - 2·π` or `1/2·π²`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let pi_part = match i {
                0 => String::new(),
                1 => "π".to_string(),
                _ => format!("π{}", superscript(i)),
            };
            if i == 0 {
                write!(f, "{}", format_rational_short(&mag))?;
            } else if mag.is_one() {
                write!(f, "{pi_part}")?;
            } else {
                write!(f, "{}·{pi_part}", format_rational_short(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(cs: &[(i64, i64)]) -> PiPoly {
        PiPoly::from_coeffs(cs.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    #[test]
    fn approximations() {
        assert_eq!(PiPoly::pi().approx(5), "3.14159");
        assert_eq!(PiPoly::from_int(2).approx(3), "2.000");
        assert_eq!(PiPoly::pi().pow(2).approx(4), "9.8696");
        assert_eq!((-PiPoly::pi()).approx(3), "-3.141");
        assert_eq!(p(&[(2, 1), (-2, 1)]).approx(6), "-4.283185");
        assert_eq!(p(&[(1, 3)]).approx(4), "0.3333");
        assert_eq!(p(&[(-1, 300000)]).approx(3), "0.000");
        assert_eq!(PiPoly::pi().approx(0), "3");
        assert_eq!(PiPoly::pi().approx(40), "3.1415926535897932384626433832795028841971");
    }

    #[test]
    fn sign_near_cancellation() {
        // 355/113 − π is a tiny positive number.
        let x = p(&[(355, 113), (-1, 1)]);
        assert_eq!(x.sign(), Sign::Positive);
        // 22/7 − π > 0, 3 − π < 0.
        assert_eq!(p(&[(22, 7), (-1, 1)]).sign(), Sign::Positive);
        assert_eq!(p(&[(3, 1), (-1, 1)]).sign(), Sign::Negative);
        // A convergent from beyond the built-in enclosure forces refinement.
        let num: BigInt = "4170888101980193".parse().unwrap();
        let den: BigInt = "1327634917026315".parse().unwrap();
        let c = PiPoly::from_coeffs(vec![BigRational::new(num, den), frac(-1, 1)]);
        assert_ne!(c.sign(), Sign::Zero);
        assert_eq!(PiPoly::zero().sign(), Sign::Zero);
    }

    #[test]
    fn monomial_division() {
        let x = p(&[(0, 1), (2, 1), (6, 1)]);
        assert_eq!(x.div_monomial(&rat(2), 1).unwrap(), p(&[(1, 1), (3, 1)]));
        assert!(x.div_monomial(&rat(1), 2).is_err());
        assert!(x.div_monomial(&rat(0), 0).is_err());
        assert!(x.div_by(&p(&[(1, 1), (1, 1)])).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[(2, 1), (-2, 1)]).to_string(), "2 - 2·π");
        assert_eq!(p(&[(0, 1), (0, 1), (1, 2)]).to_string(), "1/2·π²");
        assert_eq!((-PiPoly::pi()).to_string(), "-π");
        assert_eq!(PiPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let x = p(&[(100, 1), (-12, 1)]);
        let j = x.to_json(12);
        assert_eq!(j.coeffs, vec!["100/1", "-12/1"]);
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(parse_scalar_json(&s).unwrap(), x);
        assert!(parse_scalar_json(r#"{"coeffs":["1/1","0/1"],"approx":"1"}"#).is_err());
        assert!(parse_scalar_json(r#"{"coeffs":[1.5],"approx":"1"}"#).is_err());
    }

    #[test]
    fn ordering_is_by_value() {
        let mut v = vec![PiPoly::pi(), PiPoly::from_int(3), p(&[(22, 7)]), p(&[(0, 1), (1, 2)])];
        v.sort();
        assert_eq!(
            v,
            vec![p(&[(0, 1), (1, 2)]), PiPoly::from_int(3), PiPoly::pi(), p(&[(22, 7)])]
        );
    }

    fn arb_poly() -> impl Strategy<Value = PiPoly> {
        prop::collection::vec((-50i64..50, 1i64..9), 0..4)
            .prop_map(|cs| PiPoly::from_coeffs(cs.into_iter().map(|(n, d)| frac(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &PiPoly::zero(), a.clone());
            prop_assert_eq!(&a * &PiPoly::one(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn squares_are_nonnegative(a in arb_poly()) {
            prop_assert_ne!((&a * &a).sign(), Sign::Negative);
        }

        #[test]
        fn sign_matches_rendering(a in arb_poly(), d in 0usize..8) {
            let s = a.approx(d);
            let nonzero = s.chars().any(|c| c.is_ascii_digit() && c != '0');
            if nonzero {
                let neg = s.starts_with('-');
                prop_assert_eq!(a.sign(), if neg { Sign::Negative } else { Sign::Positive });
            }
            let f = a.to_f64();
            let g: f64 = s.parse().unwrap();
            prop_assert!((f - g).abs() <= 10f64.powi(-(d as i32)) * (1.0 + f.abs() * 1e-12));
        }

        #[test]
        fn ordering_agrees_with_f64(a in arb_poly(), b in arb_poly()) {
            let (fa, fb) = (a.to_f64(), b.to_f64());
            if (fa - fb).abs() > 1e-9 {
                prop_assert_eq!(a < b, fa < fb);
            }
        }
    }
}
