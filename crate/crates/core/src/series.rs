//! Truncated power series in one variable `t` with precision tracking.
//!
//! A series is either *exact* (a polynomial in `t`, every omitted coefficient
//! is zero) or known only modulo `t^precision`. Arithmetic propagates the
//! precision that is actually known; orders that cannot be decided at the
//! available precision are reported as [`Error::PrecisionExhausted`], never
//! guessed.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::MultiPoly;
use crate::value::Order;

/// Default number of coefficients kept when a computation leaves exact
/// polynomials (series division).
pub const DEFAULT_PRECISION: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    field: FieldSpec,
    // exact: trailing zeros trimmed; truncated: exactly `precision` entries
    coeffs: Vec<Scalar>,
    precision: usize,
    exact: bool,
}

fn min_prec(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_prec(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        _ => None,
    }
}

impl TruncatedSeries {
    pub fn exact(field: FieldSpec, coeffs: Vec<Scalar>) -> Self {
        let mut coeffs: Vec<Scalar> = coeffs.into_iter().map(|c| field.normalize(c)).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let precision = coeffs.len().max(1);
        TruncatedSeries {
            field,
            coeffs,
            precision,
            exact: true,
        }
    }

    /// A series known modulo `t^precision`.
    pub fn truncated(field: FieldSpec, mut coeffs: Vec<Scalar>, precision: usize) -> Self {
        assert!(precision >= 1, "precision must be at least 1");
        coeffs.resize(precision, Scalar::zero());
        let coeffs = coeffs.into_iter().map(|c| field.normalize(c)).collect();
        TruncatedSeries {
            field,
            coeffs,
            precision,
            exact: false,
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::exact(field, Vec::new())
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::exact(field, vec![field.one()])
    }

    /// `c * t^k`, exact.
    pub fn monomial(field: FieldSpec, c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        Self::exact(field, coeffs)
    }

    /// Builds an exact series from a polynomial in a single variable.
    pub fn from_poly(p: &MultiPoly) -> Result<Self> {
        if p.nvars() != 1 {
            return Err(Error::VariableMismatch {
                expected: "t".into(),
                found: p.vars().join(", "),
            });
        }
        let deg = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Scalar::zero(); deg + 1];
        for (e, c) in p.terms() {
            coeffs[e[0] as usize] = c.clone();
        }
        Ok(Self::exact(p.field(), coeffs))
    }

    /// Parses a polynomial in `t`, e.g. `"t^3 + 2*t^5"`.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        let p = MultiPoly::parse(text, &["t".to_string()], field)?;
        Self::from_poly(&p)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Stored precision; for exact series this is the stored length.
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `None` for exact series (infinite precision).
    pub fn known_precision(&self) -> Option<usize> {
        if self.exact {
            None
        } else {
            Some(self.precision)
        }
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, or `None` beyond the known precision.
    pub fn coeff(&self, i: usize) -> Option<Scalar> {
        match self.coeffs.get(i) {
            Some(c) => Some(c.clone()),
            None if self.exact => Some(Scalar::zero()),
            None => None,
        }
    }

    fn coeff_or_zero(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff_or_zero(0)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact && self.coeffs.is_empty()
    }

    /// Lower bound on the order: the first stored nonzero index, the
    /// precision if nothing nonzero is stored, `None` for the exact zero.
    fn valuation_bound(&self) -> Option<usize> {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Some(i),
            None if self.exact => None,
            None => Some(self.precision),
        }
    }

    /// Index of the first nonzero coefficient; ∞ only for the exact zero.
    pub fn order(&self) -> Result<Order> {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Ok(Order::Finite(i as u64)),
            None if self.exact => Ok(Order::Infinite),
            None => Err(Error::PrecisionExhausted {
                precision: self.precision,
            }),
        }
    }

    fn assert_field(&self, other: &Self) {
        assert_eq!(self.field, other.field, "field mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_field(other);
        let f = self.field;
        match min_prec(self.known_precision(), other.known_precision()) {
            None => {
                let n = self.coeffs.len().max(other.coeffs.len());
                let c = (0..n)
                    .map(|i| f.add(&self.coeff_or_zero(i), &other.coeff_or_zero(i)))
                    .collect();
                Self::exact(f, c)
            }
            Some(p) => {
                let c = (0..p)
                    .map(|i| f.add(&self.coeff_or_zero(i), &other.coeff_or_zero(i)))
                    .collect();
                Self::truncated(f, c, p)
            }
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
            precision: self.precision,
            exact: self.exact,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        if self.exact {
            Self::exact(self.field, coeffs)
        } else {
            Self::truncated(self.field, coeffs, self.precision)
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_field(other);
        let f = self.field;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(f);
        }
        let convolve = |len: usize| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); len];
            for (i, a) in self.coeffs.iter().enumerate().take(len) {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                    if !b.is_zero() {
                        out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                    }
                }
            }
            out
        };
        if self.exact && other.exact {
            let len = self.coeffs.len() + other.coeffs.len() - 1;
            return Self::exact(f, convolve(len));
        }
        // a = A + O(t^pa), b = B + O(t^pb): the error terms have order at
        // least min(pa + val(b), pb + val(a)).
        let prec = min_prec(
            add_prec(self.known_precision(), other.valuation_bound()),
            add_prec(other.known_precision(), self.valuation_bound()),
        )
        .expect("a truncated factor bounds the precision");
        Self::truncated(f, convolve(prec), prec)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient `self / divisor`.
    ///
    /// Requires `order(divisor) <= order(self)`. Exact polynomials whose
    /// quotient is a polynomial give an exact result; otherwise the result
    /// is known modulo `t^(min(precisions) - order(divisor))`, capped at `cap`
    /// coefficients.
    pub fn div(&self, divisor: &Self, cap: usize) -> Result<Self> {
        self.assert_field(divisor);
        let f = self.field;
        let ob = match divisor.order()? {
            Order::Finite(o) => o as usize,
            Order::Infinite => {
                return Err(Error::DivisionOrderError {
                    divisor: "inf".into(),
                    dividend: self.order().map_or("?".into(), |o| o.to_string()),
                })
            }
        };
        if self.is_exact_zero() {
            return Ok(Self::zero(f));
        }
        let va = self.valuation_bound().expect("nonzero dividend");
        let dividend_known = self.exact || va < self.precision;
        if dividend_known && va < ob {
            return Err(Error::DivisionOrderError {
                divisor: ob.to_string(),
                dividend: va.to_string(),
            });
        }
        if !dividend_known && self.precision <= ob {
            return Err(Error::PrecisionExhausted {
                precision: self.precision,
            });
        }
        if self.exact && divisor.exact {
            if let Some(q) = self.exact_poly_quotient(divisor) {
                return Ok(q);
            }
        }
        let prec = match min_prec(self.known_precision(), divisor.known_precision()) {
            Some(p) => (p - ob).min(cap),
            None => cap,
        };
        if prec == 0 {
            return Err(Error::PrecisionExhausted { precision: 0 });
        }
        // power-series division of the shifted series; the divisor becomes a unit
        let a: Vec<Scalar> = (0..prec).map(|k| self.coeff_or_zero(k + ob)).collect();
        let b: Vec<Scalar> = (0..prec).map(|k| divisor.coeff_or_zero(k + ob)).collect();
        let b0_inv = f.inv(&b[0]).expect("divisor order is exact");
        let mut q: Vec<Scalar> = Vec::with_capacity(prec);
        for k in 0..prec {
            let mut acc = a[k].clone();
            for i in 1..=k {
                if !b[i].is_zero() && !q[k - i].is_zero() {
                    acc = f.sub(&acc, &f.mul(&b[i], &q[k - i]));
                }
            }
            q.push(f.mul(&acc, &b0_inv));
        }
        Ok(Self::truncated(f, q, prec))
    }

    /// Polynomial long division; `Some` iff the remainder vanishes.
    fn exact_poly_quotient(&self, divisor: &Self) -> Option<Self> {
        let f = self.field;
        let mut rem = self.coeffs.clone();
        let d = &divisor.coeffs;
        let dl = d.len();
        if rem.len() < dl {
            return None;
        }
        let lead_inv = f.inv(&d[dl - 1])?;
        let mut quot = vec![Scalar::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dl - 1], &lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, dj));
            }
            quot[k] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::exact(f, quot))
        } else {
            None
        }
    }

    /// Composition with `t ↦ t^n`.
    pub fn reparametrize(&self, n: usize) -> Self {
        assert!(n >= 1, "reparametrization degree must be positive");
        let len = if self.exact {
            if self.coeffs.is_empty() {
                0
            } else {
                (self.coeffs.len() - 1) * n + 1
            }
        } else {
            self.precision * n
        };
        let mut coeffs = vec![Scalar::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * n] = c.clone();
        }
        if self.exact {
            Self::exact(self.field, coeffs)
        } else {
            Self::truncated(self.field, coeffs, len)
        }
    }

    /// Substitutes this series into a univariate polynomial `p(s)`.
    pub fn compose_into(&self, p: &MultiPoly) -> Result<Self> {
        let as_series = Self::from_poly(p)?;
        let mut acc = Self::zero(self.field);
        let mut power = Self::one(self.field);
        for (k, c) in as_series.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.mul(self);
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale(c));
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Vec<u32>, Scalar)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.push((vec![i as u32], c.clone()));
            }
        }
        let poly = MultiPoly::from_terms(&["t".to_string()], self.field, terms);
        if self.exact {
            write!(f, "{poly}")
        } else if poly.is_zero() {
            write!(f, "O(t^{})", self.precision)
        } else {
            write!(f, "{poly} + O(t^{})", self.precision)
        }
    }
}
