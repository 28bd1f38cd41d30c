//! Univariate Laurent polynomials over ℚ and their rational roots.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, rat_pow, Rational};

/// A finite sum `Σ c_k t^k`, `k ∈ ℤ`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    /// The variable `t` itself.
    pub fn var() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coefficients listed from `t^0` upwards.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i64, rat(c))))
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn trailing_coeff(&self) -> Option<&Rational> {
        self.terms.values().next()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Evaluates at `t`. Panics if `t = 0` and a negative exponent is present.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&e, c)| c * rat_pow(t, e))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Substitutes `t ↦ t + s`. Requires non-negative exponents.
    pub fn taylor_shift(&self, s: &Rational) -> Self {
        assert!(
            self.valuation().is_none_or(|v| v >= 0),
            "taylor_shift needs a polynomial"
        );
        let linear = Self::from_terms([(0, s.clone()), (1, Rational::one())]);
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out = &out + &linear.pow(e as u32).scale(c);
        }
        out
    }

    /// Substitutes `t ↦ t^{-1}`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Divides by `t^valuation` so the lowest exponent is 0.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) => self.shift(-v),
            None => Self::zero(),
        }
    }

    /// Rational roots (each listed once, the root 0 coming from the
    /// valuation excluded) and the degree of the factor left after
    /// dividing out every rational root with multiplicity.
    pub fn rational_roots(&self) -> Result<(Vec<Rational>, usize)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut ints = clear_denominators(&self.normalized());
        let mut roots = Vec::new();
        loop {
            let deg = ints.len() - 1;
            if deg == 0 {
                break;
            }
            let Some(root) = find_rational_root(&ints) else {
                break;
            };
            while ints.len() > 1 && eval_int_poly(&ints, &root).is_zero() {
                ints = deflate(&ints, &root);
            }
            roots.push(root);
        }
        roots.sort();
        Ok((roots, ints.len() - 1))
    }
}

/// Integer coefficients (low to high) of a primitive multiple of `p`.
fn clear_denominators(p: &LaurentPolynomial) -> Vec<BigInt> {
    let deg = p.degree().unwrap_or(0) as usize;
    let lcm = p
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut coeffs: Vec<BigInt> = (0..=deg)
        .map(|e| (p.coeff(e as i64) * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut coeffs {
            *c /= &g;
        }
    }
    coeffs
}

fn eval_int_poly(coeffs: &[BigInt], t: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| {
        acc * t + Rational::from_integer(c.clone())
    })
}

/// Divides by `(q t - p)` where `root = p/q`; keeps integrality by the
/// Gauss lemma once the polynomial is primitive.
fn deflate(coeffs: &[BigInt], root: &Rational) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut quotient = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = carry * root + Rational::from_integer(coeffs[i + 1].clone());
        quotient[i] = carry.clone();
    }
    let lcm = quotient.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = quotient
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn find_rational_root(coeffs: &[BigInt]) -> Option<Rational> {
    let constant = coeffs.first()?.abs();
    let lead = coeffs.last()?.abs();
    let ps = divisors(&constant);
    let qs = divisors(&lead);
    for q in &qs {
        for p in &ps {
            for sign in [1, -1] {
                let cand = Rational::new(p * BigInt::from(sign), q.clone());
                if eval_int_poly(coeffs, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl LaurentPolynomial {
    /// Renders with the given variable name, e.g. `2*x^2 - x + 1/3`.
    pub fn display_with<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayPoly { poly: self, var }
    }
}

struct DisplayPoly<'a> {
    poly: &'a LaurentPolynomial,
    var: &'a str,
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.poly.terms().rev().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let monomial = match e {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, e),
            };
            match (mag.is_one(), monomial.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{monomial}")?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{monomial}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("t"))
    }
}
