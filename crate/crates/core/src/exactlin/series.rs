//! Truncated power series `Q[t]/t^N`.

use std::collections::BTreeMap;
use std::fmt;

use super::laurent::TruncLaurent;
use super::rational::{format_rational, Rational};
use super::scalar::{FieldScalar, Scalar};
use crate::error::{Error, Result};

/// Truncation marker for values known exactly (constants built from `Q`).
pub const EXACT: u32 = u32::MAX;

/// A power series known modulo `t^trunc`, stored sparsely.
///
/// Binary operations truncate at the smaller of the two orders. Values built
/// from rational constants carry [`EXACT`] and never lower the precision of
/// the other operand.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    trunc: u32,
    coeffs: BTreeMap<u32, Rational>,
}

impl TruncSeries {
    pub fn new<I: IntoIterator<Item = (u32, Rational)>>(trunc: u32, terms: I) -> Result<Self> {
        if trunc == 0 {
            return Err(Error::PrecisionExhausted(
                "series truncation order must be ≥ 1".into(),
            ));
        }
        let mut s = TruncSeries {
            trunc,
            coeffs: BTreeMap::new(),
        };
        for (k, c) in terms {
            if k < trunc {
                s.add_term(k, &c);
            }
        }
        Ok(s)
    }

    pub fn zero_mod(trunc: u32) -> Self {
        TruncSeries {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut s = TruncSeries {
            trunc: EXACT,
            coeffs: BTreeMap::new(),
        };
        s.add_term(0, &c);
        s
    }

    pub fn monomial(k: u32, c: Rational, trunc: u32) -> Self {
        let mut s = TruncSeries::zero_mod(trunc);
        if k < trunc {
            s.add_term(k, &c);
        }
        s
    }

    /// The parameter `t` itself, modulo `t^trunc`.
    pub fn t(trunc: u32) -> Self {
        TruncSeries::monomial(1, super::rational::int(1), trunc)
    }

    fn add_term(&mut self, k: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    /// Reduces modulo `t^n` (never raises the truncation order).
    pub fn retruncate(&self, n: u32) -> Self {
        let trunc = self.trunc.min(n);
        TruncSeries {
            trunc,
            coeffs: self
                .coeffs
                .range(..trunc)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `t ↦ f(t)`; requires `f(0) = 0`.
    pub fn compose(&self, f: &TruncSeries) -> Result<Self> {
        if !f.constant_term().is_zero() {
            return Err(Error::BadParameter(
                "substituted series must have zero constant term".into(),
            ));
        }
        let trunc = self.trunc.min(f.trunc);
        let mut out = TruncSeries::zero_mod(trunc);
        let mut power = TruncSeries::constant(super::rational::int(1)).retruncate(trunc);
        let mut last = 0u32;
        for (k, c) in self.coeffs.range(..trunc) {
            while last < *k {
                power = power.times(f);
                last += 1;
            }
            if power.coeffs.is_empty() {
                break;
            }
            out = out.plus(&power.scaled(c));
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut s = TruncSeries::zero_mod(self.trunc);
        for (k, v) in &self.coeffs {
            s.add_term(*k, &(v * c));
        }
        s
    }

    /// Inverse in the Laurent ring: `t^{-v}·u^{-1}` for `self = t^v·u`.
    pub fn invert(&self) -> Result<TruncLaurent> {
        TruncLaurent::from_series(self).inverse()
    }
}

impl Scalar for TruncSeries {
    fn zero() -> Self {
        TruncSeries {
            trunc: EXACT,
            coeffs: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        TruncSeries::constant(super::rational::int(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.trunc == EXACT
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut s = self.retruncate(rhs.trunc);
        for (k, c) in rhs.coeffs.range(..s.trunc) {
            s.add_term(*k, c);
        }
        s
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        let trunc = self.trunc.min(rhs.trunc);
        let mut s = TruncSeries::zero_mod(trunc);
        for (i, a) in &self.coeffs {
            for (j, b) in rhs.coeffs.range(..trunc.saturating_sub(*i)) {
                s.add_term(i + j, &(a * b));
            }
        }
        s
    }
    fn negated(&self) -> Self {
        TruncSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        TruncSeries::constant(q.clone())
    }
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        let c = format_rational(c);
        match k {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{c}*t")?,
            _ => write!(f, "{c}*t^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|(k, c)| (*k as i64, c)))?;
        if !self.is_exact() {
            write!(f, " + O(t^{})", self.trunc)?;
        }
        Ok(())
    }
}
