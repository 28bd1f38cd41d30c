//! Truncated Laurent series `Σ_{k<p} c_k u^k + O(u^p)` with per-value
//! precision.
//!
//! Every operation computes the exact precision its result is certified to.
//! With `v(a)` the valuation (or the precision, for a series that is zero up
//! to precision) the rules are:
//!
//! * `a + b`: `min(p_a, p_b)`
//! * `a * b`: `min(p_a + v(b), p_b + v(a))`
//! * `1 / a`: `p_a - 2 v(a)`
//! * `d/du a`: `p_a - 1` (or `p_a` when `p_a = 0`)

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::rational::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    terms: BTreeMap<i64, Rational>,
    precision: i64,
}

impl TruncatedSeries {
    /// The series that is zero up to `precision`; its valuation is +∞.
    pub fn zero(precision: i64) -> Self {
        Self {
            terms: BTreeMap::new(),
            precision,
        }
    }

    pub fn one(precision: i64) -> Self {
        Self::from_poly(&LaurentPolynomial::one(), precision)
    }

    /// Truncates an exact Laurent polynomial at `precision`.
    pub fn from_poly(p: &LaurentPolynomial, precision: i64) -> Self {
        Self {
            terms: p
                .terms()
                .filter(|&(e, _)| e < precision)
                .map(|(e, c)| (e, c.clone()))
                .collect(),
            precision,
        }
    }

    pub fn monomial(exp: i64, c: Rational, precision: i64) -> Self {
        Self::from_poly(&LaurentPolynomial::monomial(exp, c), precision)
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// `None` stands for +∞: the series is zero up to its precision.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Lower bound on the true valuation: the valuation, or the precision
    /// for a series that is zero up to precision.
    fn order(&self) -> i64 {
        self.valuation().unwrap_or(self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reads a certified coefficient.
    pub fn coeff(&self, exp: i64) -> Result<Rational> {
        if exp >= self.precision {
            return Err(Error::BeyondPrecision {
                exponent: exp,
                precision: self.precision,
            });
        }
        Ok(self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// The known part as an exact polynomial.
    pub fn to_poly(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms.iter().map(|(&e, c)| (e, c.clone())))
    }

    /// Lowers the precision to `p` (never raises it).
    pub fn truncate(&self, p: i64) -> Self {
        let precision = p.min(self.precision);
        Self {
            terms: self.terms.range(..precision).map(|(&e, c)| (e, c.clone())).collect(),
            precision,
        }
    }

    /// Equality of all coefficients below `p`; both sides must be certified
    /// up to `p`.
    pub fn eq_up_to(&self, other: &Self, p: i64) -> Result<bool> {
        let limit = self.precision.min(other.precision);
        if p > limit {
            return Err(Error::BeyondPrecision {
                exponent: p - 1,
                precision: limit,
            });
        }
        Ok(self.truncate(p).terms == other.truncate(p).terms)
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut out = self.truncate(precision);
        for (&e, c) in other.terms.range(..precision) {
            insert_add(&mut out.terms, e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.precision);
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
            precision: self.precision,
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            precision: self.precision + k,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let precision = (self.precision + other.order()).min(other.precision + self.order());
        let mut terms = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a + b >= precision {
                    break;
                }
                insert_add(&mut terms, a + b, ca * cb);
            }
        }
        Self { terms, precision }
    }

    /// Product with an exact polynomial: precision `p + v(poly)`.
    pub fn mul_poly(&self, p: &LaurentPolynomial) -> Self {
        let Some(v) = p.valuation() else {
            return Self::zero(self.precision);
        };
        let precision = self.precision + v;
        let mut terms = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (b, cb) in p.terms() {
                if a + b < precision {
                    insert_add(&mut terms, a + b, ca * cb);
                }
            }
        }
        Self { terms, precision }
    }

    pub fn invert(&self) -> Result<Self> {
        let Some(v) = self.valuation() else {
            return Err(Error::DivisionByZeroSeries {
                precision: self.precision,
            });
        };
        let relative = self.precision - v;
        let lead_inv = self.terms[&v].recip();
        // b_n = -(1/c_0) Σ_{k=1..n} c_k b_{n-k} on the unit part
        let c = |k: i64| self.terms.get(&(v + k)).cloned().unwrap_or_else(Rational::zero);
        let mut b: Vec<Rational> = Vec::with_capacity(relative as usize);
        for n in 0..relative {
            if n == 0 {
                b.push(lead_inv.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for k in 1..=n {
                let ck = c(k);
                if !ck.is_zero() {
                    acc += ck * &b[(n - k) as usize];
                }
            }
            b.push(-acc * &lead_inv);
        }
        let terms = b
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 - v, c))
            .collect();
        Ok(Self {
            terms,
            precision: self.precision - 2 * v,
        })
    }

    pub fn derivative(&self) -> Self {
        let precision = if self.precision == 0 { 0 } else { self.precision - 1 };
        let terms = self
            .terms
            .iter()
            .filter(|(&e, _)| e != 0)
            .map(|(&e, c)| (e - 1, c * rat(e)))
            .filter(|(e, _)| *e < precision)
            .collect();
        Self { terms, precision }
    }

    /// `a(u/(1+u))` truncated at `min(prec, precision of a)`.
    ///
    /// Each monomial `u^k` becomes `u^k (1+u)^{-k}`, so the valuation is
    /// preserved.
    pub fn substitute_mobius(&self, prec: i64) -> Result<Self> {
        if let Some(v) = self.valuation() {
            if prec < v {
                return Err(Error::InsufficientPrecision(format!(
                    "target precision {prec} is below the valuation {v}"
                )));
            }
        }
        let precision = prec.min(self.precision);
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            // (1+u)^{-k} = Σ_j binom(-k, j) u^j
            let mut b = Rational::one();
            for j in 0..(precision - k).max(0) {
                insert_add(&mut terms, k + j, c * &b);
                b = b * rat(-k - j) / rat(j + 1);
            }
        }
        Ok(Self { terms, precision })
    }
}

fn insert_add(terms: &mut BTreeMap<i64, Rational>, e: i64, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(e).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        terms.remove(&e);
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let known = self.to_poly();
        if known.is_zero() {
            write!(f, "O(u^{})", self.precision)
        } else {
            write!(f, "{} + O(u^{})", known.display_with("u"), self.precision)
        }
    }
}

impl From<&TruncatedSeries> for LaurentPolynomial {
    fn from(s: &TruncatedSeries) -> Self {
        s.to_poly()
    }
}
