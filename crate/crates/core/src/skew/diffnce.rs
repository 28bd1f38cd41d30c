//! Operators in `k[η]⟨Φ, Φ⁻¹⟩` with `[Φ, η] = Φ`, normal-ordered as
//! `Σ c η^e Φ^i` (shifts to the right).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::LaurentPolynomial;
use crate::rational::{binomial, rat, rat_pow, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffnceOp {
    /// `(i, e) ↦ c` for `c η^e Φ^i`.
    terms: BTreeMap<(i64, u32), Rational>,
}

impl DiffnceOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(phi: i64, eta: u32, c: Rational) -> Self {
        let mut op = Self::zero();
        op.add_term(phi, eta, c);
        op
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn eta() -> Self {
        Self::monomial(0, 1, Rational::one())
    }

    /// `Φ^i`, any integer `i`.
    pub fn phi_pow(i: i64) -> Self {
        Self::monomial(i, 0, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, u32), Rational)>>(terms: I) -> Self {
        let mut op = Self::zero();
        for ((i, e), c) in terms {
            op.add_term(i, e, c);
        }
        op
    }

    pub fn add_term(&mut self, phi: i64, eta: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((phi, eta)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(phi, eta));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, u32), &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// Lowest and highest power of `Φ`.
    pub fn phi_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?.0;
        let hi = self.terms.keys().next_back()?.0;
        Some((lo, hi))
    }

    /// The coefficient `a_i(η)` of `Φ^i` as a polynomial in `η`.
    pub fn coefficient(&self, phi: i64) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.terms
                .range((phi, 0)..=(phi, u32::MAX))
                .map(|(&(_, e), c)| (e as i64, c.clone())),
        )
    }

    /// Nonzero coefficients `(i, a_i(η))` in increasing `i`.
    pub fn coefficients(&self) -> Vec<(i64, LaurentPolynomial)> {
        let mut phis: Vec<i64> = self.terms.keys().map(|&(i, _)| i).collect();
        phis.dedup();
        phis.into_iter().map(|i| (i, self.coefficient(i))).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, e), c) in &other.terms {
            out.add_term(i, e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Normal-ordered product via `Φ^i f(η) = f(η + i) Φ^i`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, a), ca) in &self.terms {
            for (&(j, b), cb) in &other.terms {
                // η^a Φ^i η^b Φ^j = η^a (η + i)^b Φ^{i+j}
                let c = ca * cb;
                for k in 0..=b {
                    let coeff = binomial(b as i64, k) * rat_pow(&rat(i), (b - k) as i64);
                    out.add_term(i + j, a + k, &c * coeff);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for DiffnceOp {
    /// Groups by powers of `Φ`: `(-eta - 1)*Phi + (eta + 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, a)) in self.coefficients().into_iter().rev().enumerate() {
            let single = a.terms().count() == 1;
            let lead_negative = a.leading_coeff().is_some_and(|c| c.is_negative());
            let body = if single && lead_negative { -&a } else { a.clone() };
            let sign_out = single && lead_negative;
            if n == 0 {
                if sign_out {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if sign_out { "-" } else { "+" })?;
            }
            let coeff = body.display_with("eta").to_string();
            let is_one = body == LaurentPolynomial::one();
            let shift = match i {
                0 => String::new(),
                1 => "Phi".to_string(),
                _ => format!("Phi^{i}"),
            };
            match (shift.is_empty(), is_one, single) {
                (true, _, true) => write!(f, "{coeff}")?,
                (true, _, false) => write!(f, "({coeff})")?,
                (false, true, _) => write!(f, "{shift}")?,
                (false, false, true) => write!(f, "{coeff}*{shift}")?,
                (false, false, false) => write!(f, "({coeff})*{shift}")?,
            }
        }
        Ok(())
    }
}
