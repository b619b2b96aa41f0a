//! Graded-commutative rings given by generators and relations.
//!
//! Odd generators have degree 1 and anticommute. Even generators commute and
//! are either free, truncated (`g^N = 0`) or subject to a monic relation
//! `g^r = −Σ_{k=1}^{r} c_k g^{r−k}` whose coefficients avoid `g`. Everything
//! above the presentation's top degree is discarded. Coefficients lie in ℚ[π].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Error, Result};
use crate::scalars::{factorial, format_rational_short, rat, subscript, superscript, PiPoly};

/// A monomial: a set of odd generators (bit mask, ordered by index) and an
/// exponent for each even generator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub odd: u64,
    pub even: Vec<u32>,
}

impl Monomial {
    pub fn one(n_even: usize) -> Self {
        Monomial {
            odd: 0,
            even: vec![0; n_even],
        }
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|&e| e == 0)
    }
}

type Terms = BTreeMap<Monomial, PiPoly>;

/// How an even generator is constrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvenRule {
    Free,
    /// `g^N = 0`.
    Truncated(u32),
    /// `g^power = −Σ_{k=1}^{power} tail[k−1]·g^{power−k}`.
    Relation {
        power: u32,
        tail: Vec<Terms>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenGenerator {
    pub name: String,
    pub degree: u32,
    pub rule: EvenRule,
}

/// Generators, relations and top degree of a graded ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    odd: Vec<String>,
    even: Vec<EvenGenerator>,
    top_degree: u32,
}

/// Subscripted generator name, e.g. `indexed("dx*", 3) == "dx*₃"`.
pub fn indexed(base: &str, i: usize) -> String {
    format!("{base}{}", subscript(i))
}

impl RingPresentation {
    pub fn new(top_degree: u32) -> Self {
        RingPresentation {
            odd: Vec::new(),
            even: Vec::new(),
            top_degree,
        }
    }

    /// Exterior algebra on the given odd generators.
    pub fn exterior(names: Vec<String>) -> Self {
        let top = names.len() as u32;
        RingPresentation {
            odd: names,
            even: Vec::new(),
            top_degree: top,
        }
    }

    pub fn with_odd(mut self, name: impl Into<String>) -> Self {
        self.odd.push(name.into());
        self
    }

    pub fn with_even(mut self, name: impl Into<String>, degree: u32, rule: EvenRule) -> Self {
        self.even.push(EvenGenerator {
            name: name.into(),
            degree,
            rule,
        });
        self
    }

    pub fn into_arc(self) -> Result<Arc<Self>> {
        self.validate()?;
        Ok(Arc::new(self))
    }

    fn validate(&self) -> Result<()> {
        if self.odd.len() > 64 {
            return Err(precondition("at most 64 odd generators are supported"));
        }
        let mut names: Vec<&str> = self.odd.iter().map(String::as_str).collect();
        names.extend(self.even.iter().map(|g| g.name.as_str()));
        let mut sorted = names.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NameCollision(w[0].to_string()));
        }
        for (i, g) in self.even.iter().enumerate() {
            if g.degree == 0 || g.degree % 2 == 1 {
                return Err(precondition(format!(
                    "even generator {} needs positive even degree",
                    g.name
                )));
            }
            if let EvenRule::Relation { power, tail } = &g.rule {
                if *power == 0 || tail.len() != *power as usize {
                    return Err(precondition(format!("relation for {} has wrong length", g.name)));
                }
                if tail.iter().flat_map(|t| t.keys()).any(|m| m.even[i] != 0) {
                    return Err(precondition(format!("relation for {} involves {}", g.name, g.name)));
                }
            }
        }
        Ok(())
    }

    pub fn top_degree(&self) -> u32 {
        self.top_degree
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd
    }

    pub fn even_generators(&self) -> &[EvenGenerator] {
        &self.even
    }

    pub fn odd_index(&self, name: &str) -> Option<usize> {
        self.odd.iter().position(|n| n == name)
    }

    pub fn even_index(&self, name: &str) -> Option<usize> {
        self.even.iter().position(|g| g.name == name)
    }

    fn degree_of(&self, m: &Monomial) -> u32 {
        m.odd.count_ones() + m.even.iter().zip(&self.even).map(|(e, g)| e * g.degree).sum::<u32>()
    }

    /// Adds an even generator subject to a monic relation whose coefficients
    /// `c_1, …, c_r` are elements of `base`. The result has the given top degree.
    pub fn extend_with_relation(
        base: &Arc<RingPresentation>,
        name: impl Into<String>,
        degree: u32,
        coeffs: &[RingElement],
        top_degree: u32,
    ) -> Result<Arc<RingPresentation>> {
        for c in coeffs {
            if !c.same_presentation(base) {
                return Err(Error::PresentationMismatch);
            }
        }
        let mut p = (**base).clone();
        for g in p.even.iter_mut() {
            if let EvenRule::Relation { tail, .. } = &mut g.rule {
                for t in tail.iter_mut() {
                    *t = extend_terms(t, 1);
                }
            }
        }
        let tail = coeffs.iter().map(|c| extend_terms(&c.terms, 1)).collect();
        p.even.push(EvenGenerator {
            name: name.into(),
            degree,
            rule: EvenRule::Relation {
                power: coeffs.len() as u32,
                tail,
            },
        });
        p.top_degree = top_degree;
        p.into_arc()
    }

    /// Human-readable description of generators and relations.
    pub fn describe(self: &Arc<Self>) -> String {
        let mut parts = Vec::new();
        if !self.odd.is_empty() {
            parts.push(format!("odd generators {}", self.odd.join(", ")));
        }
        for g in &self.even {
            let rule = match &g.rule {
                EvenRule::Free => String::new(),
                EvenRule::Truncated(n) => format!(", {}{} = 0", g.name, superscript(*n as usize)),
                EvenRule::Relation { power, tail } => {
                    let idx = self.even_index(&g.name).unwrap();
                    let mut rhs = RingElement::zero(self);
                    for (k, t) in tail.iter().enumerate() {
                        let c = RingElement {
                            pres: self.clone(),
                            terms: t.clone(),
                        };
                        let mut gm = Monomial::one(self.even.len());
                        gm.even[idx] = power - 1 - k as u32;
                        let gp = RingElement::from_monomial(self, gm, PiPoly::one());
                        rhs = rhs - raw_mul(&c, &gp);
                    }
                    format!(", {}{} = {}", g.name, superscript(*power as usize), rhs)
                }
            };
            parts.push(format!("{} (degree {}){}", g.name, g.degree, rule));
        }
        parts.push(format!("top degree {}", self.top_degree));
        parts.join("; ")
    }
}

fn extend_terms(t: &Terms, extra: usize) -> Terms {
    t.iter()
        .map(|(m, c)| {
            let mut m = m.clone();
            m.even.extend(std::iter::repeat_n(0, extra));
            (m, c.clone())
        })
        .collect()
}

/// Tensor product of two presentations. Generator names must be disjoint.
pub fn tensor_presentation(p: &Arc<RingPresentation>, q: &Arc<RingPresentation>) -> Result<Arc<RingPresentation>> {
    for n in p.odd.iter().chain(p.even.iter().map(|g| &g.name)) {
        if q.odd.contains(n) || q.even.iter().any(|g| &g.name == n) {
            return Err(Error::NameCollision(n.clone()));
        }
    }
    let shift = p.odd.len();
    let pe = p.even.len();
    let qe = q.even.len();
    let remap_p = |t: &Terms| -> Terms {
        t.iter()
            .map(|(m, c)| {
                let mut m = m.clone();
                m.even.extend(std::iter::repeat_n(0, qe));
                (m, c.clone())
            })
            .collect()
    };
    let remap_q = |t: &Terms| -> Terms {
        t.iter()
            .map(|(m, c)| {
                let mut even = vec![0; pe];
                even.extend(&m.even);
                (
                    Monomial {
                        odd: m.odd << shift,
                        even,
                    },
                    c.clone(),
                )
            })
            .collect()
    };
    let map_rule = |r: &EvenRule, f: &dyn Fn(&Terms) -> Terms| match r {
        EvenRule::Relation { power, tail } => EvenRule::Relation {
            power: *power,
            tail: tail.iter().map(f).collect(),
        },
        other => other.clone(),
    };
    let mut out = RingPresentation::new(p.top_degree + q.top_degree);
    out.odd = p.odd.iter().chain(&q.odd).cloned().collect();
    for g in &p.even {
        out.even.push(EvenGenerator {
            rule: map_rule(&g.rule, &remap_p),
            ..g.clone()
        });
    }
    for g in &q.even {
        out.even.push(EvenGenerator {
            rule: map_rule(&g.rule, &remap_q),
            ..g.clone()
        });
    }
    out.into_arc()
}

/// Product of two monomials with its Koszul sign, or `None` if an odd
/// generator repeats.
fn mono_mul(a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
    if a.odd & b.odd != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut bits = b.odd;
    while bits != 0 {
        let j = bits.trailing_zeros();
        swaps += (a.odd >> j).count_ones();
        bits &= bits - 1;
    }
    let even = a.even.iter().zip(&b.even).map(|(x, y)| x + y).collect();
    Some((
        Monomial {
            odd: a.odd | b.odd,
            even,
        },
        swaps % 2 == 1,
    ))
}

fn accumulate(out: &mut Terms, m: Monomial, c: PiPoly) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&m) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                out.remove(&m);
            }
        }
        None => {
            out.insert(m, c);
        }
    }
}

/// Rewrites a monomial into normal form, accumulating into `out`.
fn reduce_into(p: &RingPresentation, m: Monomial, c: PiPoly, out: &mut Terms) {
    if p.degree_of(&m) > p.top_degree {
        return;
    }
    for (i, g) in p.even.iter().enumerate() {
        match &g.rule {
            EvenRule::Free => {}
            EvenRule::Truncated(n) => {
                if m.even[i] >= *n {
                    return;
                }
            }
            EvenRule::Relation { power, tail } => {
                if m.even[i] >= *power {
                    let mut rest = m.clone();
                    rest.even[i] -= power;
                    for (k, t) in tail.iter().enumerate() {
                        let mut gm = Monomial::one(p.even.len());
                        gm.even[i] = power - 1 - k as u32;
                        let Some((base, s0)) = mono_mul(&rest, &gm) else {
                            continue;
                        };
                        for (tm, tc) in t {
                            if let Some((nm, s1)) = mono_mul(&base, tm) {
                                let mut nc = -(&c * tc);
                                if s0 ^ s1 {
                                    nc = -nc;
                                }
                                reduce_into(p, nm, nc, out);
                            }
                        }
                    }
                    return;
                }
            }
        }
    }
    accumulate(out, m, c);
}

/// An element of a presented ring, kept in normal form.
#[derive(Clone)]
pub struct RingElement {
    pres: Arc<RingPresentation>,
    terms: Terms,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(&other.pres) && self.terms == other.terms
    }
}

impl Eq for RingElement {}

fn raw_mul(a: &RingElement, b: &RingElement) -> RingElement {
    let mut out = Terms::new();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some((m, neg)) = mono_mul(ma, mb) {
                let c = ca * cb;
                reduce_into(&a.pres, m, if neg { -c } else { c }, &mut out);
            }
        }
    }
    RingElement {
        pres: a.pres.clone(),
        terms: out,
    }
}

impl RingElement {
    pub fn zero(p: &Arc<RingPresentation>) -> Self {
        RingElement {
            pres: p.clone(),
            terms: Terms::new(),
        }
    }

    pub fn one(p: &Arc<RingPresentation>) -> Self {
        Self::scalar(p, PiPoly::one())
    }

    pub fn scalar(p: &Arc<RingPresentation>, c: PiPoly) -> Self {
        Self::from_monomial(p, Monomial::one(p.even.len()), c)
    }

    pub fn from_monomial(p: &Arc<RingPresentation>, m: Monomial, c: PiPoly) -> Self {
        let mut terms = Terms::new();
        reduce_into(p, m, c, &mut terms);
        RingElement { pres: p.clone(), terms }
    }

    /// The generator with the given name.
    pub fn generator(p: &Arc<RingPresentation>, name: &str) -> Result<Self> {
        let mut m = Monomial::one(p.even.len());
        if let Some(i) = p.odd_index(name) {
            m.odd = 1 << i;
        } else if let Some(i) = p.even_index(name) {
            m.even[i] = 1;
        } else {
            return Err(precondition(format!("unknown generator {name}")));
        }
        Ok(Self::from_monomial(p, m, PiPoly::one()))
    }

    /// Product of odd generators in the given order.
    pub fn odd_word(p: &Arc<RingPresentation>, idx: &[usize]) -> Self {
        let mut acc = Self::one(p);
        for &i in idx {
            let mut m = Monomial::one(p.even.len());
            m.odd = 1 << i;
            acc = raw_mul(&acc, &Self::from_monomial(p, m, PiPoly::one()));
        }
        acc
    }

    pub fn presentation(&self) -> &Arc<RingPresentation> {
        &self.pres
    }

    pub fn same_presentation(&self, p: &Arc<RingPresentation>) -> bool {
        Arc::ptr_eq(&self.pres, p) || *self.pres == **p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &PiPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> PiPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Degree-0 coefficient.
    pub fn scalar_part(&self) -> PiPoly {
        self.coeff(&Monomial::one(self.pres.even.len()))
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        RingElement {
            pres: self.pres.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.pres.degree_of(m) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &PiPoly) -> Self {
        if c.is_zero() {
            return Self::zero(&self.pres);
        }
        RingElement {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&PiPoly::constant(q.clone()))
    }

    /// Graded product; fails if the presentations differ.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !self.same_presentation(&other.pres) {
            return Err(Error::PresentationMismatch);
        }
        Ok(raw_mul(self, other))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !self.same_presentation(&other.pres) {
            return Err(Error::PresentationMismatch);
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(RingElement {
            pres: self.pres.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.pres);
        for _ in 0..e {
            acc = raw_mul(&acc, self);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Re-expresses the element in another presentation, matching generators
    /// by name. Only generators that occur in the element need to exist in
    /// the target, so this both embeds into tensor products and restricts
    /// to a factor.
    pub fn embed(&self, target: &Arc<RingPresentation>) -> Result<Self> {
        let odd_map: Vec<Option<usize>> = self.pres.odd.iter().map(|n| target.odd_index(n)).collect();
        let even_map: Vec<Option<usize>> = self.pres.even.iter().map(|g| target.even_index(&g.name)).collect();
        let mut out = Terms::new();
        for (m, c) in &self.terms {
            let mut src = Vec::new();
            for i in (0..64).filter(|&i| m.odd >> i & 1 == 1) {
                src.push(odd_map[i].ok_or_else(|| precondition(format!("{} missing from target", self.pres.odd[i])))?);
            }
            let mut inversions = 0;
            for a in 0..src.len() {
                for b in a + 1..src.len() {
                    if src[a] > src[b] {
                        inversions += 1;
                    }
                }
            }
            let mut nm = Monomial::one(target.even.len());
            nm.odd = src.iter().fold(0, |acc, &i| acc | 1 << i);
            for (i, &e) in m.even.iter().enumerate() {
                if e > 0 {
                    let t = even_map[i]
                        .ok_or_else(|| precondition(format!("{} missing from target", self.pres.even[i].name)))?;
                    nm.even[t] = e;
                }
            }
            let nc = if inversions % 2 == 1 { -c } else { c.clone() };
            reduce_into(target, nm, nc, &mut out);
        }
        Ok(RingElement {
            pres: target.clone(),
            terms: out,
        })
    }

    /// Largest degree present (0 for scalars and zero).
    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| self.pres.degree_of(m)).max().unwrap_or(0)
    }

    fn monomial_text(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.even.iter().enumerate() {
            if e == 1 {
                parts.push(self.pres.even[i].name.clone());
            } else if e > 1 {
                parts.push(format!("{}{}", self.pres.even[i].name, superscript(e as usize)));
            }
        }
        let odd: String = (0..64)
            .filter(|&i| m.odd >> i & 1 == 1)
            .map(|i| self.pres.odd[i].as_str())
            .collect();
        if !odd.is_empty() {
            parts.push(odd);
        }
        parts.join("·")
    }
}

/// Named series for [`formal_series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    /// `exp(x)`.
    Exp,
    /// `log(1 + x)`.
    Log1p,
    /// `arctan(x)`.
    Arctan,
    /// `1/(1 + x)`.
    GeometricInverse,
}

impl Series {
    /// Maclaurin coefficient of `x^k`.
    pub fn coefficient(self, k: usize) -> BigRational {
        let k64 = k as i64;
        match self {
            Series::Exp => BigRational::from_integer(factorial(k as u64)).recip(),
            Series::Log1p => {
                if k == 0 {
                    BigRational::zero()
                } else {
                    let s = if k % 2 == 1 { 1 } else { -1 };
                    BigRational::new(s.into(), k64.into())
                }
            }
            Series::Arctan => {
                if k % 2 == 0 {
                    BigRational::zero()
                } else {
                    let s = if (k / 2) % 2 == 0 { 1 } else { -1 };
                    BigRational::new(s.into(), k64.into())
                }
            }
            Series::GeometricInverse => rat(if k % 2 == 0 { 1 } else { -1 }),
        }
    }
}

/// `Σ_k coeffs(k)·x^k` for nilpotent `x` (zero scalar part).
pub fn series_with_coefficients(x: &RingElement, coeffs: impl Fn(usize) -> BigRational) -> Result<RingElement> {
    let s = x.scalar_part();
    if !s.is_zero() {
        return Err(Error::NonNilpotent(s.to_string()));
    }
    let mut acc = RingElement::scalar(&x.pres, PiPoly::constant(coeffs(0)));
    let mut power = RingElement::one(&x.pres);
    for k in 1..=x.pres.top_degree as usize + 1 {
        power = raw_mul(&power, x);
        if power.is_zero() {
            break;
        }
        let c = coeffs(k);
        if !c.is_zero() {
            acc = acc + power.scale_rational(&c);
        }
    }
    Ok(acc)
}

/// Evaluates a named series on a nilpotent element.
pub fn formal_series(f: Series, x: &RingElement) -> Result<RingElement> {
    series_with_coefficients(x, |k| f.coefficient(k))
}

/// Inverse of an element whose scalar part is 1.
pub fn invert_unit(c: &RingElement) -> Result<RingElement> {
    let s = c.scalar_part();
    if !s.is_one() {
        return Err(Error::NonNilpotent(format!("scalar part {s} is not 1")));
    }
    let y = c - &RingElement::one(&c.pres);
    formal_series(Series::GeometricInverse, &y)
}

/// The fibre class integrated against: an ordered product of odd generators
/// and powers of even generators, with the value of its integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopClass {
    pub odd: Vec<usize>,
    pub even: Vec<(usize, u32)>,
    pub value: PiPoly,
}

impl TopClass {
    pub fn odd_only(odd: Vec<usize>) -> Self {
        TopClass {
            odd,
            even: Vec::new(),
            value: PiPoly::one(),
        }
    }
}

/// Integration along a fibre: `p_*(γ ∧ top) = value·γ` for `γ` free of the
/// fibre generators; every other normal-form monomial integrates to zero.
pub fn fibre_integrate(a: &RingElement, top: &TopClass) -> Result<RingElement> {
    let p = &a.pres;
    let mut mask = 0u64;
    for &i in &top.odd {
        if i >= p.odd.len() {
            return Err(Error::MalformedTop(format!("odd index {i} out of range")));
        }
        if mask >> i & 1 == 1 {
            return Err(Error::MalformedTop(format!("odd generator {} repeated", p.odd[i])));
        }
        mask |= 1 << i;
    }
    let mut seen = vec![false; p.even.len()];
    for &(i, e) in &top.even {
        if i >= p.even.len() || seen[i] || e == 0 {
            return Err(Error::MalformedTop(format!("bad even entry ({i}, {e})")));
        }
        seen[i] = true;
    }
    let mut out = Terms::new();
    for (m, c) in &a.terms {
        if m.odd & mask != mask || top.even.iter().any(|&(i, e)| m.even[i] != e) {
            continue;
        }
        let rest = m.odd & !mask;
        let seq: Vec<usize> = (0..64)
            .filter(|&i| rest >> i & 1 == 1)
            .chain(top.odd.iter().copied())
            .collect();
        let mut inversions = 0;
        for x in 0..seq.len() {
            for y in x + 1..seq.len() {
                if seq[x] > seq[y] {
                    inversions += 1;
                }
            }
        }
        let mut nm = m.clone();
        nm.odd = rest;
        for &(i, _) in &top.even {
            nm.even[i] = 0;
        }
        let v = c * &top.value;
        accumulate(&mut out, nm, if inversions % 2 == 1 { -v } else { v });
    }
    Ok(RingElement {
        pres: a.pres.clone(),
        terms: out,
    })
}

/// Integral over the whole space: the scalar part of [`fibre_integrate`].
pub fn integrate(a: &RingElement, top: &TopClass) -> Result<PiPoly> {
    Ok(fibre_integrate(a, top)?.scalar_part())
}

impl fmt::Display for RingElement {
    /// Deterministic text, terms by increasing degree, e.g. `3·π²·η²·dx*₁dx*₃`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &PiPoly)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            self.pres
                .degree_of(a.0)
                .cmp(&self.pres.degree_of(b.0))
                .then(a.0.cmp(b.0))
        });
        for (n, (m, c)) in terms.into_iter().enumerate() {
            let mono = self.monomial_text(m);
            let (neg, mut factors) = match c.as_monomial() {
                Some((q, i)) => {
                    let mut fs = Vec::new();
                    if !q.abs().is_one() || (i == 0 && mono.is_empty()) {
                        fs.push(format_rational_short(&q.abs()));
                    }
                    match i {
                        0 => {}
                        1 => fs.push("π".into()),
                        _ => fs.push(format!("π{}", superscript(i))),
                    }
                    (q.is_negative(), fs)
                }
                None => (false, vec![format!("({c})")]),
            };
            if !mono.is_empty() {
                factors.push(mono);
            }
            let body = factors.join("·");
            match (n, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

impl<'a> Add<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    /// Panics if the presentations differ; see [`RingElement::checked_add`].
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs)
            .expect("ring elements from different presentations")
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        &self + &rhs
    }
}

impl<'a> Sub<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            pres: self.pres.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl<'a> Mul<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    /// Panics if the presentations differ; see [`RingElement::checked_mul`].
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs)
            .expect("ring elements from different presentations")
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::frac;
    use proptest::prelude::*;

    fn ext(n: usize) -> Arc<RingPresentation> {
        RingPresentation::exterior((1..=n).map(|i| indexed("dx", i)).collect())
            .into_arc()
            .unwrap()
    }

    fn g(p: &Arc<RingPresentation>, name: &str) -> RingElement {
        RingElement::generator(p, name).unwrap()
    }

    #[test]
    fn koszul_signs() {
        let p = ext(3);
        let (a, b) = (g(&p, "dx₁"), g(&p, "dx₂"));
        assert_eq!(&a * &b, -(&b * &a));
        assert!((&a * &a).is_zero());
        let abc = &(&a * &b) * &g(&p, "dx₃");
        let cab = &(&g(&p, "dx₃") * &a) * &b;
        assert_eq!(abc, cab);
    }

    #[test]
    fn fibre_integration_sign() {
        let p = ext(3);
        // γ = dx₃ plays the base class; dx₂ ∧ dx₁ ∧ γ integrates to −γ over (dx₁, dx₂).
        let gamma = g(&p, "dx₃");
        let a = &(&g(&p, "dx₂") * &g(&p, "dx₁")) * &gamma;
        let r = fibre_integrate(&a, &TopClass::odd_only(vec![0, 1])).unwrap();
        assert_eq!(r, -gamma.clone());
        let a = &(&gamma * &g(&p, "dx₁")) * &g(&p, "dx₂");
        assert_eq!(fibre_integrate(&a, &TopClass::odd_only(vec![0, 1])).unwrap(), gamma);
        assert!(matches!(
            fibre_integrate(&a, &TopClass::odd_only(vec![0, 0])),
            Err(Error::MalformedTop(_))
        ));
    }

    #[test]
    fn truncation_and_relation() {
        let p = RingPresentation::new(6)
            .with_even("h", 2, EvenRule::Truncated(3))
            .into_arc()
            .unwrap();
        let h = g(&p, "h");
        assert!(!h.pow(2).is_zero());
        assert!(h.pow(3).is_zero());
        // η² = θη over an exterior algebra on two generators.
        let base = RingPresentation::exterior(vec!["a".into(), "b".into()])
            .into_arc()
            .unwrap();
        let theta = &g(&base, "a") * &g(&base, "b");
        let c1 = -theta.clone();
        let q = RingPresentation::extend_with_relation(&base, "η", 2, &[c1, RingElement::zero(&base)], 6).unwrap();
        let eta = g(&q, "η");
        let theta_q = theta.embed(&q).unwrap();
        assert_eq!(eta.pow(2), &theta_q * &eta);
        assert!(eta.pow(3).is_zero());
    }

    #[test]
    fn tensor_collisions_and_embedding() {
        let p = ext(2);
        assert_eq!(
            tensor_presentation(&p, &p).unwrap_err(),
            Error::NameCollision("dx₁".into())
        );
        let q = RingPresentation::exterior(vec!["y".into()]).into_arc().unwrap();
        let t = tensor_presentation(&q, &p).unwrap();
        let x = (&g(&p, "dx₁") * &g(&p, "dx₂")).embed(&t).unwrap();
        let y = g(&q, "y").embed(&t).unwrap();
        assert_eq!(&x * &y, &y * &x);
        assert!(g(&p, "dx₁").checked_mul(&y).is_err());
    }

    #[test]
    fn series_examples() {
        let p = ext(4);
        let x = &g(&p, "dx₁") * &g(&p, "dx₂");
        let y = &g(&p, "dx₃") * &g(&p, "dx₄");
        let s = &x + &y;
        let e = formal_series(Series::Exp, &s).unwrap();
        let expect = &(&RingElement::one(&p) + &s) + &(&x * &y);
        assert_eq!(e, expect);
        let l = formal_series(Series::Log1p, &(&e - &RingElement::one(&p))).unwrap();
        assert_eq!(l, s);
        assert!(matches!(
            formal_series(Series::Exp, &RingElement::one(&p)),
            Err(Error::NonNilpotent(_))
        ));
        let inv = invert_unit(&e).unwrap();
        assert_eq!(&inv * &e, RingElement::one(&p));
        let at = formal_series(Series::Arctan, &s).unwrap();
        assert_eq!(at, s);
    }

    #[test]
    fn pretty_printing() {
        let base = ext(4);
        let a = &g(&base, "dx₁") * &g(&base, "dx₃");
        let e = a.scale(&PiPoly::monomial(rat(3), 2))
            + RingElement::scalar(&base, PiPoly::from_coeffs(vec![rat(1), rat(-2)]));
        assert_eq!(e.to_string(), "(1 - 2·π) + 3·π²·dx₁dx₃");
        let p = RingPresentation::new(4)
            .with_even("η", 2, EvenRule::Free)
            .into_arc()
            .unwrap();
        let eta = g(&p, "η");
        assert_eq!(eta.pow(2).scale_rational(&frac(-1, 2)).to_string(), "-1/2·η²");
        assert_eq!(RingElement::zero(&p).to_string(), "0");
    }

    fn arb_elem(p: Arc<RingPresentation>) -> impl Strategy<Value = RingElement> {
        prop::collection::vec((0u64..16, -3i64..=3), 0..6).prop_map(move |ts| {
            let mut acc = RingElement::zero(&p);
            for (mask, c) in ts {
                let m = Monomial {
                    odd: mask,
                    even: vec![],
                };
                acc = acc + RingElement::from_monomial(&p, m, PiPoly::from_int(c));
            }
            acc
        })
    }

    fn parity_split(x: &RingElement) -> (RingElement, RingElement) {
        let mut even = RingElement::zero(&x.pres);
        let mut odd = RingElement::zero(&x.pres);
        for d in 0..=x.pres.top_degree {
            if d % 2 == 0 {
                even = even + x.degree_part(d);
            } else {
                odd = odd + x.degree_part(d);
            }
        }
        (even, odd)
    }

    proptest! {
        #[test]
        fn associativity(a in arb_elem(ext(4)), b in arb_elem(ext(4)), c in arb_elem(ext(4))) {
            let p = ext(4);
            let (a, b, c) = (a.embed(&p).unwrap(), b.embed(&p).unwrap(), c.embed(&p).unwrap());
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn graded_commutativity(a in arb_elem(ext(4)), b in arb_elem(ext(4))) {
            let p = ext(4);
            let (a, b) = (a.embed(&p).unwrap(), b.embed(&p).unwrap());
            for da in 0..=4 {
                for db in 0..=4 {
                    let x = a.degree_part(da);
                    let y = b.degree_part(db);
                    let sign = if da * db % 2 == 1 { -1 } else { 1 };
                    prop_assert_eq!(&x * &y, (&y * &x).scale(&PiPoly::from_int(sign)));
                }
            }
        }

        #[test]
        fn exp_log_inverse(a in arb_elem(ext(4))) {
            let p = ext(4);
            let a = a.embed(&p).unwrap();
            let x = &a - &RingElement::scalar(&p, a.scalar_part());
            let (even, _) = parity_split(&x);
            let e = formal_series(Series::Exp, &even).unwrap();
            let back = formal_series(Series::Log1p, &(&e - &RingElement::one(&p))).unwrap();
            prop_assert_eq!(back, even);
        }

        #[test]
        fn integration_is_linear(a in arb_elem(ext(4)), b in arb_elem(ext(4)), s in -5i64..5) {
            let p = ext(4);
            let (a, b) = (a.embed(&p).unwrap(), b.embed(&p).unwrap());
            let top = TopClass::odd_only(vec![1, 3]);
            let lhs = fibre_integrate(&(&a + &b.scale(&PiPoly::from_int(s))), &top).unwrap();
            let rhs = &fibre_integrate(&a, &top).unwrap() + &fibre_integrate(&b, &top).unwrap().scale(&PiPoly::from_int(s));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
