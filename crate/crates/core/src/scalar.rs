//! Exact coefficients: Laurent polynomials over the rationals in a fixed,
//! ordered set of named parameters (for example the loop value `delta` or the
//! Hecke parameter `z`).

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational numbers used throughout the crate.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("parameter sets differ: [{left}] vs [{right}]")]
    ParamMismatch { left: String, right: String },
    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),
    #[error("duplicate parameter `{0}`")]
    DuplicateParameter(String),
    #[error("parameter `{0}` occurs with a negative exponent and cannot be set to 0")]
    PoleAtZero(String),
    #[error("parameter `{0}` has no assigned value")]
    Unassigned(String),
    #[error("division by a non-invertible scalar")]
    NotInvertible,
    #[error("scalar syntax error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Ordered list of parameter names. The order fixes the meaning of exponent
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamSet {
    names: Vec<String>,
}

impl ParamSet {
    pub fn new<I, S>(names: I) -> Result<Arc<ParamSet>, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.into();
            if out.contains(&n) {
                return Err(ScalarError::DuplicateParameter(n));
            }
            out.push(n);
        }
        Ok(Arc::new(ParamSet { names: out }))
    }

    pub fn empty() -> Arc<ParamSet> {
        Arc::new(ParamSet { names: Vec::new() })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A Laurent polynomial with rational coefficients. Zero coefficients are
/// never stored and terms are kept sorted by exponent vector, so derived
/// structural equality is mathematical equality.
#[derive(Clone)]
pub struct Scalar {
    params: Arc<ParamSet>,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_params(&self.params, &other.params)
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.params.names.hash(state);
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

fn same_params(a: &Arc<ParamSet>, b: &Arc<ParamSet>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

impl Scalar {
    pub fn zero(params: &Arc<ParamSet>) -> Scalar {
        Scalar {
            params: params.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(params: &Arc<ParamSet>) -> Scalar {
        Scalar::constant(params, Rational::one())
    }

    pub fn constant(params: &Arc<ParamSet>, c: Rational) -> Scalar {
        Scalar::monomial(params, c, vec![0; params.len()])
    }

    pub fn integer(params: &Arc<ParamSet>, n: i64) -> Scalar {
        Scalar::constant(params, rat(n))
    }

    /// `c * p1^e1 * ... * pk^ek`; `exps` must have one entry per parameter.
    pub fn monomial(params: &Arc<ParamSet>, c: Rational, exps: Vec<i32>) -> Scalar {
        assert_eq!(exps.len(), params.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Scalar {
            params: params.clone(),
            terms,
        }
    }

    /// The parameter `name` raised to the power `exp`.
    pub fn param_pow(params: &Arc<ParamSet>, name: &str, exp: i32) -> Result<Scalar, ScalarError> {
        let idx = params
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownParameter(name.to_string()))?;
        let mut exps = vec![0; params.len()];
        exps[idx] = exp;
        Ok(Scalar::monomial(params, Rational::one(), exps))
    }

    pub fn param(params: &Arc<ParamSet>, name: &str) -> Result<Scalar, ScalarError> {
        Scalar::param_pow(params, name, 1)
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map_or(false, |c| c.is_one())
    }

    /// The value of a parameter-free scalar.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        if same_params(&self.params, &other.params) {
            Ok(())
        } else {
            Err(ScalarError::ParamMismatch {
                left: self.params.names.join(","),
                right: other.params.names.join(","),
            })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let mut out = Scalar::zero(&self.params);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<i32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn neg_ref(&self) -> Scalar {
        Scalar {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero(&self.params);
        }
        Scalar {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one(&self.params);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single-term scalar; sums are not units in this ring.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.terms.len() != 1 {
            return Err(ScalarError::NotInvertible);
        }
        let (e, c) = self.terms.iter().next().unwrap();
        Ok(Scalar::monomial(
            &self.params,
            c.recip(),
            e.iter().map(|x| -x).collect(),
        ))
    }

    /// Replaces the assigned parameters by rational values. Parameters that
    /// are not assigned stay symbolic.
    pub fn substitute(&self, assignment: &BTreeMap<String, Rational>) -> Result<Scalar, ScalarError> {
        for name in assignment.keys() {
            if self.params.index_of(name).is_none() {
                return Err(ScalarError::UnknownParameter(name.clone()));
            }
        }
        let slots: Vec<Option<&Rational>> = self
            .params
            .names
            .iter()
            .map(|n| assignment.get(n))
            .collect();
        let mut out = Scalar::zero(&self.params);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = e.clone();
            for (i, v) in slots.iter().enumerate() {
                let Some(v) = v else { continue };
                let k = e[i];
                if k < 0 && v.is_zero() {
                    return Err(ScalarError::PoleAtZero(self.params.names[i].clone()));
                }
                coeff *= rational_pow(v, k);
                rest[i] = 0;
            }
            out.add_term(rest, coeff);
        }
        Ok(out)
    }

    /// Full evaluation to a rational number.
    pub fn evaluate(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, ScalarError> {
        let known: BTreeMap<String, Rational> = assignment
            .iter()
            .filter(|(k, _)| self.params.index_of(k).is_some())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let s = self.substitute(&known)?;
        for (e, _) in &s.terms {
            if let Some(i) = e.iter().position(|&x| x != 0) {
                return Err(ScalarError::Unassigned(self.params.names[i].clone()));
            }
        }
        Ok(s.as_rational().expect("all parameters substituted"))
    }

    /// Re-expresses the scalar over a larger parameter set that contains
    /// every name of the current one.
    pub fn embed(&self, target: &Arc<ParamSet>) -> Result<Scalar, ScalarError> {
        let map: Vec<usize> = self
            .params
            .names
            .iter()
            .map(|n| {
                target
                    .index_of(n)
                    .ok_or_else(|| ScalarError::UnknownParameter(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Scalar::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] = k;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn parse(params: &Arc<ParamSet>, text: &str) -> Result<Scalar, ScalarError> {
        let mut p = ScalarParser {
            src: text.as_bytes(),
            pos: 0,
            base: 0,
            params,
        };
        let s = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(s)
    }

    /// Parses a scalar embedded in a longer text; `base` is added to reported
    /// error offsets.
    pub(crate) fn parse_at(params: &Arc<ParamSet>, text: &str, base: usize) -> Result<Scalar, ScalarError> {
        let mut p = ScalarParser {
            src: text.as_bytes(),
            pos: 0,
            base,
            params,
        };
        let s = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(s)
    }
}

pub fn rational_pow(v: &Rational, k: i32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= v;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        Some(Rational::from_integer(s.parse().ok()?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        self.params.names[j].clone()
                    } else {
                        format!("{}^{}", self.params.names[j], k)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join(" * "))?;
            } else {
                write!(f, "{} * {}", format_rational(&mag), factors.join(" * "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    params: &'a Arc<ParamSet>,
}

impl ScalarParser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse {
            pos: self.base + self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Scalar, ScalarError> {
        let mut sign = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = true;
        }
        let mut acc = self.product()?;
        if sign {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn integer(&mut self, allow_sign: bool) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        if allow_sign && self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().expect("digits"))
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer(false)?;
                let mut q = Rational::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.integer(false)?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    q /= Rational::from_integer(d);
                }
                Ok(Scalar::constant(self.params, q))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self.params.index_of(name).ok_or_else(|| ScalarError::Parse {
                    pos: self.base + start,
                    msg: format!("unknown parameter `{}`", name),
                })?;
                let mut exp = 1i32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let k = self.integer(true)?;
                    exp = i32::try_from(k).map_err(|_| self.err("exponent out of range"))?;
                }
                let mut exps = vec![0; self.params.len()];
                exps[idx] = exp;
                Ok(Scalar::monomial(self.params, Rational::one(), exps))
            }
            Some(b'(') => {
                self.pos += 1;
                let s = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err("expected a number or parameter")),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar addition")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar subtraction")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar multiplication")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
