//! Exact scalars: big rationals and multivariate polynomials over them.
//!
//! A [`PolyScalar`] is a polynomial in a fixed, lexicographically ordered set
//! of named parameters. Terms are kept fully expanded in a sorted map with no
//! zero coefficients, so structural equality is polynomial equality and
//! zero-testing is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("parameter-set mismatch: {left:?} vs {right:?}")]
    ParamMismatch { left: Vec<String>, right: Vec<String> },
    #[error("missing binding for parameter `{0}`")]
    MissingBinding(String),
    #[error("unknown parameter `{name}` at position {pos}")]
    UnknownParameter { name: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid parameter name `{0}`")]
    InvalidParamName(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-7"`, `"1/2"` or `"-4/6"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::InvalidRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Ordered set of parameter names shared by every scalar of one model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamSet(Arc<[String]>);

impl ParamSet {
    /// Builds a parameter set; names are sorted and deduplicated.
    pub fn new<I, S>(names: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
            return Err(ScalarError::InvalidParamName(bad.clone()));
        }
        names.sort();
        names.dedup();
        Ok(ParamSet(names.into()))
    }

    pub fn empty() -> Self {
        ParamSet(Arc::from(Vec::new()))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// The set with `removed` names dropped.
    pub fn without<'a>(&self, removed: impl IntoIterator<Item = &'a str>) -> Self {
        let removed: Vec<&str> = removed.into_iter().collect();
        let kept = self.0.iter().filter(|n| !removed.contains(&n.as_str())).cloned();
        ParamSet(kept.collect::<Vec<_>>().into())
    }
}

/// Image of a parameter under [`PolyScalar::rewrite`].
#[derive(Debug, Clone)]
pub enum ParamImage {
    Param(String),
    Value(Rational),
}

/// Exact polynomial over the rationals in the parameters of a [`ParamSet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyScalar {
    params: ParamSet,
    // exponent vector (one entry per parameter) -> nonzero coefficient
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PolyScalar {
    pub fn zero(params: &ParamSet) -> Self {
        PolyScalar { params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn one(params: &ParamSet) -> Self {
        Self::constant(params, Rational::one())
    }

    pub fn constant(params: &ParamSet, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(vec![0; params.len()], value);
        }
        PolyScalar { params: params.clone(), terms }
    }

    pub fn var(params: &ParamSet, name: &str) -> Result<Self, ScalarError> {
        let idx = params
            .index_of(name)
            .ok_or_else(|| ScalarError::UnknownParameter { name: name.to_string(), pos: 0 })?;
        let mut exps = vec![0; params.len()];
        exps[idx] = 1;
        Ok(PolyScalar { params: params.clone(), terms: BTreeMap::from([(exps, Rational::one())]) })
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `(exponents, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// The value if the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), ScalarError> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(ScalarError::ParamMismatch {
                left: self.params.names().to_vec(),
                right: other.params.names().to_vec(),
            })
        }
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.check_same(other)?;
        let mut out = PolyScalar::zero(&self.params);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return PolyScalar::zero(&self.params);
        }
        PolyScalar {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = PolyScalar::one(&self.params);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; every parameter with a nonzero exponent must be bound.
    pub fn substitute(&self, bindings: &BTreeMap<String, Rational>) -> Result<Rational, ScalarError> {
        let mut total = Rational::zero();
        for (exps, coeff) in &self.terms {
            let mut value = coeff.clone();
            for (idx, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = &self.params.names()[idx];
                let b = bindings.get(name).ok_or_else(|| ScalarError::MissingBinding(name.clone()))?;
                value *= num_traits::pow(b.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Re-expresses the polynomial over `target`, mapping each parameter either
    /// to a parameter of `target` or to a rational value.
    pub fn rewrite(
        &self,
        target: &ParamSet,
        image: impl Fn(&str) -> ParamImage,
    ) -> Result<Self, ScalarError> {
        let images: Vec<ParamImage> = self.params.names().iter().map(|n| image(n)).collect();
        let mut slots = Vec::with_capacity(images.len());
        for img in &images {
            slots.push(match img {
                ParamImage::Param(name) => Some(target.index_of(name).ok_or_else(|| {
                    ScalarError::UnknownParameter { name: name.clone(), pos: 0 }
                })?),
                ParamImage::Value(_) => None,
            });
        }
        let mut out = PolyScalar::zero(target);
        for (exps, coeff) in &self.terms {
            let mut new_exps = vec![0; target.len()];
            let mut value = coeff.clone();
            for (idx, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match (&slots[idx], &images[idx]) {
                    (Some(t), _) => new_exps[*t] += e,
                    (None, ParamImage::Value(v)) => value *= num_traits::pow(v.clone(), e as usize),
                    (None, ParamImage::Param(_)) => unreachable!(),
                }
            }
            out.add_term(new_exps, value);
        }
        Ok(out)
    }

    /// Substitutes the bound parameters, keeping the rest symbolic over `target`.
    pub fn bind(
        &self,
        bindings: &BTreeMap<String, Rational>,
        target: &ParamSet,
    ) -> Result<Self, ScalarError> {
        self.rewrite(target, |name| match bindings.get(name) {
            Some(v) => ParamImage::Value(v.clone()),
            None => ParamImage::Param(name.to_string()),
        })
    }

    /// Parses the textual grammar: integer and `int/int` literals, parameter
    /// identifiers, `+ - * ^` and parentheses.
    pub fn parse(text: &str, params: &ParamSet) -> Result<Self, ScalarError> {
        let mut parser = Parser { src: text.as_bytes(), pos: 0, params };
        let poly = parser.expr()?;
        parser.skip_ws();
        if parser.pos < parser.src.len() {
            return Err(parser.syntax("unexpected trailing input"));
        }
        Ok(poly)
    }

    fn total_degree(exps: &[u32]) -> u32 {
        exps.iter().sum()
    }
}

fn expect_same(a: &PolyScalar, b: &PolyScalar) {
    if let Err(e) = a.check_same(b) {
        panic!("{e}");
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(mut self) -> PolyScalar {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        expect_same(self, rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&PolyScalar> for PolyScalar {
    fn sub_assign(&mut self, rhs: &PolyScalar) {
        expect_same(self, rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        expect_same(self, rhs);
        self.try_mul(rhs).unwrap()
    }
}

impl Add for PolyScalar {
    type Output = PolyScalar;
    fn add(mut self, rhs: PolyScalar) -> PolyScalar {
        self += &rhs;
        self
    }
}

impl Sub for PolyScalar {
    type Output = PolyScalar;
    fn sub(mut self, rhs: PolyScalar) -> PolyScalar {
        self -= &rhs;
        self
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: PolyScalar) -> PolyScalar {
        &self * &rhs
    }
}

impl fmt::Display for PolyScalar {
    /// Renders in the same grammar [`PolyScalar::parse`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            Self::total_degree(b).cmp(&Self::total_degree(a)).then_with(|| b.cmp(a))
        });
        for (n, (exps, coeff)) in ordered.into_iter().enumerate() {
            let negative = coeff.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            for (idx, &e) in exps.iter().enumerate() {
                let name = &self.params.names()[idx];
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyScalar({self})")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a ParamSet,
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<PolyScalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyScalar, ScalarError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        if self.peek() == Some(b'/') {
            return Err(self.syntax("'/' is only allowed between integer literals"));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PolyScalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyScalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.integer().ok_or_else(|| self.syntax("expected exponent"))?;
            let exp: u32 = digits.parse().map_err(|_| ScalarError::Syntax {
                pos: start,
                msg: "exponent out of range".into(),
            })?;
            if exp == 0 {
                return Err(ScalarError::Syntax { pos: start, msg: "exponent must be positive".into() });
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<PolyScalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.integer().unwrap().parse().unwrap();
                let mut value = Rational::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den_pos = self.pos;
                    let den: BigInt = self
                        .integer()
                        .ok_or_else(|| self.syntax("'/' must be followed by an integer literal"))?
                        .parse()
                        .unwrap();
                    if den.is_zero() {
                        return Err(ScalarError::Syntax { pos: den_pos, msg: "division by zero".into() });
                    }
                    value /= Rational::from_integer(den);
                }
                Ok(PolyScalar::constant(self.params, value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                PolyScalar::var(self.params, &name)
                    .map_err(|_| ScalarError::UnknownParameter { name, pos: start })
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}
