//! Truncated Laurent series, an approximation of `Q((t)) = Q[t⁻¹][[t]]`.

use std::collections::BTreeMap;
use std::fmt;

use super::rational::Rational;
use super::scalar::{FieldScalar, Scalar};
use super::series::{TruncSeries, EXACT};
use crate::error::{Error, Result};

/// Absolute precision of exactly known values.
pub const EXACT_PREC: i64 = i64::MAX;

/// Relative precision used when inverting an exact non-monomial value,
/// whose true inverse is an infinite series.
pub const EXACT_INVERSE_TERMS: i64 = 32;

/// `Σ c_k t^k + O(t^abs_prec)`.
///
/// A nonzero value is `t^v · u` with `u` a unit known to
/// `abs_prec − v ≥ 1` coefficients. A zero value still records how far it is
/// known to vanish.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncLaurent {
    coeffs: BTreeMap<i64, Rational>,
    abs_prec: i64,
}

fn shift(prec: i64, by: i64) -> i64 {
    if prec == EXACT_PREC {
        EXACT_PREC
    } else {
        prec.saturating_add(by)
    }
}

impl TruncLaurent {
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(abs_prec: i64, terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            if k < abs_prec && !c.is_zero() {
                let e = coeffs.entry(k).or_insert_with(Rational::zero);
                *e += c;
            }
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        TruncLaurent { coeffs, abs_prec }
    }

    pub fn from_series(s: &TruncSeries) -> Self {
        let abs_prec = if s.is_exact() {
            EXACT_PREC
        } else {
            s.trunc() as i64
        };
        TruncLaurent::from_terms(abs_prec, s.terms().map(|(k, c)| (k as i64, c.clone())))
    }

    pub fn monomial(k: i64, c: Rational) -> Self {
        TruncLaurent::from_terms(EXACT_PREC, [(k, c)])
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Exponent below which all coefficients are known.
    pub fn abs_precision(&self) -> i64 {
        self.abs_prec
    }

    /// Number of known coefficients from the leading term on
    /// (`EXACT_PREC` when exact, `0` for zero).
    pub fn precision(&self) -> i64 {
        match self.valuation() {
            None => 0,
            Some(_) if self.abs_prec == EXACT_PREC => EXACT_PREC,
            Some(v) => self.abs_prec - v,
        }
    }

    /// The unit part `u` of `t^v·u`, as a series known modulo `t^precision`.
    pub fn unit(&self) -> Option<TruncSeries> {
        let v = self.valuation()?;
        let trunc = if self.abs_prec == EXACT_PREC {
            EXACT
        } else {
            u32::try_from(self.abs_prec - v).unwrap_or(EXACT - 1)
        };
        TruncSeries::new(
            trunc,
            self.coeffs.iter().map(|(k, c)| ((k - v) as u32, c.clone())),
        )
        .ok()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_exact(&self) -> bool {
        self.abs_prec == EXACT_PREC
    }
}

impl Scalar for TruncLaurent {
    fn zero() -> Self {
        TruncLaurent {
            coeffs: BTreeMap::new(),
            abs_prec: EXACT_PREC,
        }
    }
    fn one() -> Self {
        TruncLaurent::monomial(0, super::rational::int(1))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.abs_prec == EXACT_PREC
    }
    fn plus(&self, rhs: &Self) -> Self {
        let abs_prec = self.abs_prec.min(rhs.abs_prec);
        TruncLaurent::from_terms(
            abs_prec,
            self.coeffs
                .iter()
                .chain(rhs.coeffs.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return Scalar::zero();
        }
        let abs_prec = match (self.valuation(), rhs.valuation()) {
            (Some(v), Some(w)) => shift(self.abs_prec, w).min(shift(rhs.abs_prec, v)),
            (None, Some(w)) => shift(self.abs_prec, w),
            (Some(v), None) => shift(rhs.abs_prec, v),
            (None, None) => self.abs_prec.saturating_add(rhs.abs_prec),
        };
        let mut terms = Vec::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                if i + j < abs_prec {
                    terms.push((i + j, a * b));
                }
            }
        }
        TruncLaurent::from_terms(abs_prec, terms)
    }
    fn negated(&self) -> Self {
        TruncLaurent {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
            abs_prec: self.abs_prec,
        }
    }
    fn from_rational(q: &Rational) -> Self {
        TruncLaurent::monomial(0, q.clone())
    }
}

impl FieldScalar for TruncLaurent {
    const VALUATION_FLOOR: Option<i64> = None;

    fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::ZeroDivision)?;
        let rel = if self.is_exact() {
            if self.coeffs.len() == 1 {
                let c = &self.coeffs[&v];
                return Ok(TruncLaurent::monomial(-v, c.recip()));
            }
            EXACT_INVERSE_TERMS
        } else {
            self.abs_prec - v
        };
        if rel < 1 {
            return Err(Error::PrecisionExhausted(
                "inverse of a value with no known unit".into(),
            ));
        }
        let u: Vec<Rational> = (0..rel).map(|i| self.coeff(v + i)).collect();
        let inv0 = u[0].recip();
        let mut w: Vec<Rational> = Vec::with_capacity(rel as usize);
        w.push(inv0.clone());
        for k in 1..rel as usize {
            let mut acc = Rational::zero();
            for i in 1..=k {
                if !u[i].is_zero() {
                    acc += &u[i] * &w[k - i];
                }
            }
            w.push(-(acc * &inv0));
        }
        Ok(TruncLaurent::from_terms(
            rel - v,
            w.into_iter().enumerate().map(|(i, c)| (i as i64 - v, c)),
        ))
    }

    fn valuation(&self) -> i64 {
        TruncLaurent::valuation(self).unwrap_or(i64::MAX)
    }

    fn relative_precision(&self) -> Option<i64> {
        match self.precision() {
            EXACT_PREC => None,
            p => Some(p),
        }
    }

    fn zero_precision(&self) -> Option<i64> {
        if self.coeffs.is_empty() && self.abs_prec != EXACT_PREC {
            Some(self.abs_prec)
        } else {
            None
        }
    }
}

impl fmt::Display for TruncLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::series::write_terms(f, self.coeffs.iter().map(|(k, c)| (*k, c)))?;
        if !self.is_exact() {
            write!(f, " + O(t^{})", self.abs_prec)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rational::{int, rational};

    fn series(trunc: u32, terms: &[(u32, Rational)]) -> TruncSeries {
        TruncSeries::new(trunc, terms.iter().cloned()).unwrap()
    }

    #[test]
    fn geometric_series() {
        let s = series(4, &[(0, int(1)), (1, int(-1))]);
        let inv = s.invert().unwrap();
        assert_eq!(
            inv,
            TruncLaurent::from_terms(4, (0..4).map(|k| (k, int(1))))
        );
        assert_eq!(inv.valuation(), Some(0));
        assert_eq!(inv.precision(), 4);
    }

    #[test]
    fn monomial_inverse() {
        let inv = TruncSeries::t(8).invert().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.unit().unwrap().constant_term(), int(1));
        assert_eq!(inv.precision(), 7);
    }

    #[test]
    fn two_plus_t() {
        // (2 + t)⁻¹ mod t² = 1/2 − t/4; check by multiplying back.
        let s = series(2, &[(0, int(2)), (1, int(1))]);
        let inv = s.invert().unwrap();
        assert_eq!(
            inv,
            TruncLaurent::from_terms(2, [(0, rational(1, 2)), (1, rational(-1, 4))])
        );
        let back = inv.times(&TruncLaurent::from_series(&s));
        assert_eq!(back, TruncLaurent::from_terms(2, [(0, int(1))]));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(TruncSeries::zero_mod(3).invert(), Err(Error::ZeroDivision));
    }

    #[test]
    fn cancellation_keeps_absolute_precision() {
        let a = TruncLaurent::from_terms(3, [(-1, int(1)), (0, int(2))]);
        let b = TruncLaurent::from_terms(5, [(-1, int(1))]);
        let d = a.minus(&b);
        assert_eq!(d.valuation(), Some(0));
        assert_eq!(d.abs_precision(), 3);
        assert_eq!(d.precision(), 3);
        let z = a.minus(&a);
        assert_eq!(z.zero_precision(), Some(3));
    }
}
