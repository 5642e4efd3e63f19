//! Exact Laurent polynomials with unbounded integer coefficients.
//!
//! [`LaurentPoly2`] holds HOMFLY polynomials in the variables `v`, `z`;
//! [`LaurentPoly1`] holds Alexander polynomials in `t^{1/2}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponents of the monomial `v^ev z^ez`. Sorts by `(ez, ev)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub ez: i32,
    pub ev: i32,
}

impl Exponent {
    pub fn new(ev: i32, ez: i32) -> Self {
        Exponent { ez, ev }
    }
}

/// Integer Laurent polynomial in `v` and `z`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so the zero
/// polynomial is the empty term list and structural equality is polynomial
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: Vec<(Exponent, BigInt)>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        LaurentPoly2 { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    /// `c v^ev z^ez`.
    pub fn monomial(ev: i32, ez: i32, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly2 {
            terms: vec![(Exponent::new(ev, ez), c)],
        }
    }

    /// The split-union factor `(v^-1 - v) z^-1`, i.e. the value on a
    /// two-component unlink.
    pub fn delta() -> Self {
        Self::from_terms([(-1, -1, 1), (1, -1, -1)])
    }

    /// Builds a polynomial from `(ev, ez, c)` triples; repeated exponents
    /// are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, i32, C)>) -> Self {
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (ev, ez, c) in terms {
            *acc.entry(Exponent::new(ev, ez)).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(map: BTreeMap<Exponent, BigInt>) -> Self {
        LaurentPoly2 {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Exponent::new(0, 0) && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(ev, ez, coefficient)` in ascending `(ez, ev)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (e.ev, e.ez, c))
    }

    pub fn coeff(&self, ev: i32, ez: i32) -> BigInt {
        let key = Exponent::new(ev, ez);
        match self.terms.binary_search_by(|(e, _)| e.cmp(&key)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Coefficient of `z^ez` as a polynomial in `v`: `(ev, c)` pairs.
    pub fn z_coefficient(&self, ez: i32) -> Vec<(i32, BigInt)> {
        self.terms
            .iter()
            .filter(|(e, _)| e.ez == ez)
            .map(|(e, c)| (e.ev, c.clone()))
            .collect()
    }

    /// Highest power of `z`; `None` for the zero polynomial.
    pub fn maxdeg_z(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| e.ez)
    }

    pub fn mindeg_z(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| e.ez)
    }

    /// Multiplies by `v^ev z^ez`.
    pub fn shift(&self, ev: i32, ez: i32) -> Self {
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exponent::new(e.ev + ev, e.ez + ez), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by `c v^ev z^ez`.
    pub fn shift_scaled(&self, ev: i32, ez: i32, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let c = BigInt::from(c);
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (Exponent::new(e.ev + ev, e.ez + ez), x * &c))
                .collect(),
        }
    }

    /// The substitution `v -> v^-1`.
    pub fn mirror(&self) -> Self {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (Exponent::new(-e.ev, e.ez), c.clone()))
            .collect();
        terms.sort_by_key(|t| t.0);
        LaurentPoly2 { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Specializes to the Alexander polynomial: `v = 1`,
    /// `z = t^{1/2} - t^{-1/2}`.
    pub fn alexander(&self) -> Result<LaurentPoly1> {
        let mut conway: BTreeMap<i32, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.ez < 0 {
                return Err(Error::NegativeZDegree(e.ez));
            }
            *conway.entry(e.ez).or_default() += c;
        }
        let mut out: BTreeMap<i32, BigInt> = BTreeMap::new();
        for (k, a) in conway {
            if a.is_zero() {
                continue;
            }
            // (T - T^-1)^k with T = t^{1/2}
            let mut binom = BigInt::one();
            for j in 0..=k {
                let term = if j % 2 == 0 { &binom * &a } else { -(&binom * &a) };
                *out.entry(k - 2 * j).or_default() += term;
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
        }
        Ok(LaurentPoly1::from_map(out))
    }

    /// JSON term records, ordered by `(ez desc, ev desc)`.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(e, c)| TermRecord {
                ev: e.ev,
                ez: e.ez,
                c: c.to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self> {
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let c = BigInt::from_str(&r.c).map_err(|_| Error::parse(0, format!("bad coefficient {:?}", r.c)))?;
            terms.push((r.ev, r.ez, c));
        }
        Ok(Self::from_terms(terms))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("term records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let records: Vec<TermRecord> = serde_json::from_str(s)?;
        Self::from_records(&records)
    }
}

fn merge(a: &[(Exponent, BigInt)], b: &[(Exponent, BigInt)], negate_b: bool) -> Vec<(Exponent, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, take_b(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (*e, take_b(c))));
    out
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Add for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: LaurentPoly2) -> LaurentPoly2 {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly2> for LaurentPoly2 {
    fn add_assign(&mut self, rhs: &LaurentPoly2) {
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Sub for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: LaurentPoly2) -> LaurentPoly2 {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        -&self
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly2::zero();
        }
        if rhs.terms.len() == 1 && rhs.terms[0].1.is_one() {
            let e = rhs.terms[0].0;
            return self.shift(e.ev, e.ez);
        }
        let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *acc.entry(Exponent::new(ea.ev + eb.ev, ea.ez + eb.ez)).or_default() += ca * cb;
            }
        }
        LaurentPoly2::from_map(acc)
    }
}

impl Mul for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: LaurentPoly2) -> LaurentPoly2 {
        &self * &rhs
    }
}

impl Sum for LaurentPoly2 {
    fn sum<I: Iterator<Item = LaurentPoly2>>(iter: I) -> Self {
        iter.fold(LaurentPoly2::zero(), |acc, p| &acc + &p)
    }
}

impl Product for LaurentPoly2 {
    fn product<I: Iterator<Item = LaurentPoly2>>(iter: I) -> Self {
        iter.fold(LaurentPoly2::one(), |acc, p| &acc * &p)
    }
}

/// One serialized term: `{"ev": .., "ez": .., "c": "<decimal>"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub ev: i32,
    pub ez: i32,
    pub c: String,
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        LaurentPoly2::from_records(&records).map_err(serde::de::Error::custom)
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, var: char, e: i32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

fn fmt_v_term(f: &mut fmt::Formatter<'_>, ev: i32, c: &BigInt, first: bool) -> fmt::Result {
    if c.is_negative() {
        f.write_str("-")?;
    } else if !first {
        f.write_str("+")?;
    }
    let a = c.abs();
    if ev == 0 || !a.is_one() {
        write!(f, "{a}")?;
    }
    fmt_power(f, 'v', ev)
}

/// Mirrors the usual printed form: `(v^2+6v^-2)z^6+(...)z^4+...`.
impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut groups: Vec<(i32, Vec<(i32, &BigInt)>)> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            match groups.last_mut() {
                Some((ez, g)) if *ez == e.ez => g.push((e.ev, c)),
                _ => groups.push((e.ez, vec![(e.ev, c)])),
            }
        }
        for (i, (ez, g)) in groups.iter().enumerate() {
            if g.len() == 1 {
                let (ev, c) = g[0];
                if *ez != 0 && ev == 0 && c.abs().is_one() {
                    f.write_str(if c.is_negative() {
                        "-"
                    } else if i > 0 {
                        "+"
                    } else {
                        ""
                    })?;
                } else {
                    fmt_v_term(f, ev, c, i == 0)?;
                }
            } else {
                if i > 0 {
                    f.write_str("+")?;
                }
                f.write_str("(")?;
                for (j, (ev, c)) in g.iter().enumerate() {
                    fmt_v_term(f, *ev, c, j == 0)?;
                }
                f.write_str(")")?;
            }
            fmt_power(f, 'z', *ez)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}

/// Parses sums of products of integers, `v^k`, `z^k` and parenthesized
/// subexpressions. Exponents may be written `v^-2`, `v^{-2}` or `v^(-2)`.
impl FromStr for LaurentPoly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = ExprParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "unexpected trailing input"));
        }
        Ok(out)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly2> {
        let mut acc = LaurentPoly2::zero();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<LaurentPoly2> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'0'..=b'9' | b'v' | b'z' | b'(') => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly2> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let c = BigInt::from_str(digits).map_err(|_| Error::parse(start, "bad integer"))?;
                Ok(LaurentPoly2::monomial(0, 0, c))
            }
            Some(var @ (b'v' | b'z')) => {
                self.pos += 1;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                Ok(if var == b'v' {
                    LaurentPoly2::monomial(e, 0, 1)
                } else {
                    LaurentPoly2::monomial(0, e, 1)
                })
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(Error::parse(self.pos, "expected a number, 'v', 'z' or '('")),
        }
    }

    fn exponent(&mut self) -> Result<i32> {
        let close = match self.peek() {
            Some(b'{') => Some(b'}'),
            Some(b'(') => Some(b')'),
            _ => None,
        };
        if close.is_some() {
            self.pos += 1;
        }
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let e: i32 = text.parse().map_err(|_| Error::parse(start, "bad exponent"))?;
        if let Some(close) = close {
            if self.peek() != Some(close) {
                return Err(Error::parse(self.pos, "unclosed exponent"));
            }
            self.pos += 1;
        }
        Ok(e)
    }
}

/// Integer Laurent polynomial in `t^{1/2}`; the key `e` stands for `t^{e/2}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    terms: Vec<(i32, BigInt)>,
}

impl LaurentPoly1 {
    /// Builds from `(doubled exponent, coefficient)` pairs.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i32, C)>) -> Self {
        let mut acc: BTreeMap<i32, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_default() += c.into();
        }
        Self::from_map(acc)
    }

    fn from_map(map: BTreeMap<i32, BigInt>) -> Self {
        LaurentPoly1 {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(doubled exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, doubled_exp: i32) -> BigInt {
        self.terms
            .iter()
            .find(|(e, _)| *e == doubled_exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Span of the exponents measured in powers of `t`. For a symmetric
    /// Alexander polynomial this is twice its degree.
    pub fn span_t(&self) -> Option<i32> {
        let (lo, hi) = (self.terms.first()?.0, self.terms.last()?.0);
        Some((hi - lo) / 2)
    }

    /// True if the coefficient sequence is a palindrome, or an
    /// anti-palindrome, i.e. symmetric under `t -> t^-1` up to `±t^{k/2}`.
    pub fn is_symmetric_up_to_unit(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.terms.first(), self.terms.last()) else {
            return true;
        };
        let (lo, hi) = (lo.0, hi.0);
        let palindrome = (lo..=hi).all(|e| self.coeff(e) == self.coeff(lo + hi - e));
        let anti = (lo..=hi).all(|e| self.coeff(e) == -self.coeff(lo + hi - e));
        palindrome || anti
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if *e == 0 || !a.is_one() {
                write!(f, "{a}")?;
            }
            match (*e, e % 2 == 0) {
                (0, _) => {}
                (2, _) => f.write_str("t")?,
                (e, true) => write!(f, "t^{}", e / 2)?,
                (e, false) => write!(f, "t^{e}/2")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly1({self})")
    }
}
