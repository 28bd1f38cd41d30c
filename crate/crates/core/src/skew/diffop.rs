//! Operators in `k[z, z⁻¹]⟨∂⟩`, stored normal-ordered with all powers of `z`
//! to the left.
//!
//! Two presentations are kept: monomials `z^r T^j` with `T = z∂` (the
//! "theta" form) and monomials `z^r ∂^i` (the "D" form). Commutation rules:
//! `T z^r = z^r (T + r)` and `∂ z^b = z^b ∂ + b z^{b-1}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::stirling::{stirling_first_signed, stirling_second};
use crate::poly::LaurentPolynomial;
use crate::rational::{binomial, falling, rat, rat_pow, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Presentation {
    /// `z^r T^j`, `T = z∂z`.
    Theta,
    /// `z^r ∂^i`.
    D,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    presentation: Presentation,
    /// `(r, j) ↦ c` for the monomial `c z^r X^j`.
    terms: BTreeMap<(i64, u32), Rational>,
}

impl DiffOp {
    pub fn zero(presentation: Presentation) -> Self {
        Self {
            presentation,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(presentation: Presentation, r: i64, j: u32, c: Rational) -> Self {
        let mut op = Self::zero(presentation);
        op.add_term(r, j, c);
        op
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Presentation::Theta, 0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `z^r`.
    pub fn z_pow(r: i64) -> Self {
        Self::monomial(Presentation::Theta, r, 0, Rational::one())
    }

    /// The Euler operator `T = z∂z`.
    pub fn theta() -> Self {
        Self::monomial(Presentation::Theta, 0, 1, Rational::one())
    }

    /// `∂z`, in the D presentation.
    pub fn d() -> Self {
        Self::monomial(Presentation::D, 0, 1, Rational::one())
    }

    pub fn from_terms<I>(presentation: Presentation, terms: I) -> Self
    where
        I: IntoIterator<Item = ((i64, u32), Rational)>,
    {
        let mut op = Self::zero(presentation);
        for ((r, j), c) in terms {
            op.add_term(r, j, c);
        }
        op
    }

    /// Theta-form operator `Σ_j a_j(z) T^j` from its coefficient list.
    pub fn from_t_coefficients(coeffs: &[LaurentPolynomial]) -> Self {
        let mut op = Self::zero(Presentation::Theta);
        for (j, a) in coeffs.iter().enumerate() {
            for (r, c) in a.terms() {
                op.add_term(r, j as u32, c.clone());
            }
        }
        op
    }

    pub fn add_term(&mut self, r: i64, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((r, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(r, j));
        }
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, u32), &Rational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, r: i64, j: u32) -> Rational {
        self.terms.get(&(r, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest power of `T` (or `∂`) present.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// The coefficient `a_j(z)` of `X^j` (`X = T` or `∂`).
    pub fn coefficient(&self, j: u32) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, jj), _)| jj == j)
                .map(|(&(r, _), c)| (r, c.clone())),
        )
    }

    /// All coefficients `a_0(z), …, a_d(z)`.
    pub fn coefficients(&self) -> Vec<LaurentPolynomial> {
        match self.order() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|j| self.coefficient(j)).collect(),
        }
    }

    /// `a_d(z)` for the top order `d`.
    pub fn leading_coefficient(&self) -> LaurentPolynomial {
        self.order().map(|d| self.coefficient(d)).unwrap_or_default()
    }

    /// Lowest and highest power of `z`.
    pub fn z_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|&(r, _)| r).min()?;
        let hi = self.terms.keys().map(|&(r, _)| r).max()?;
        Some((lo, hi))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.presentation);
        for (&(r, j), v) in &self.terms {
            out.add_term(r, j, v * c);
        }
        out
    }

    /// Left multiplication by `z^k`, which is already normal-ordered.
    pub fn shift_z(&self, k: i64) -> Self {
        Self {
            presentation: self.presentation,
            terms: self.terms.iter().map(|(&(r, j), c)| ((r + k, j), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let other = other.to_presentation(self.presentation);
        let mut out = self.clone();
        for (&(r, j), c) in &other.terms {
            out.add_term(r, j, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Normal-ordered product. `other` is converted to this operator's
    /// presentation first.
    pub fn mul(&self, other: &Self) -> Self {
        let other = other.to_presentation(self.presentation);
        let mut out = Self::zero(self.presentation);
        for (&(a, i), ca) in &self.terms {
            for (&(b, j), cb) in &other.terms {
                let c = ca * cb;
                match self.presentation {
                    // z^a T^i z^b T^j = z^{a+b} (T+b)^i T^j
                    Presentation::Theta => {
                        for k in 0..=i {
                            let coeff = binomial(i as i64, k) * rat_pow(&rat(b), (i - k) as i64);
                            out.add_term(a + b, k + j, &c * coeff);
                        }
                    }
                    // z^a ∂^i z^b ∂^j = Σ_k C(i,k) (b)_k z^{a+b-k} ∂^{i-k+j}
                    Presentation::D => {
                        for k in 0..=i {
                            let coeff = binomial(i as i64, k)
                                * Rational::from_integer(falling(b, k));
                            out.add_term(a + b - k as i64, i - k + j, &c * coeff);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let one = Self::one().to_presentation(self.presentation);
        (0..n).fold(one, |acc, _| acc.mul(self))
    }

    /// Converts between presentations. `T^j = Σ_i S(j,i) z^i ∂^i` and
    /// `z^n ∂^n = Σ_k s(n,k) T^k`.
    pub fn to_presentation(&self, target: Presentation) -> Self {
        if target == self.presentation {
            return self.clone();
        }
        let mut out = Self::zero(target);
        for (&(r, j), c) in &self.terms {
            let ju = j as usize;
            match target {
                Presentation::D => {
                    for i in 0..=ju {
                        let s = stirling_second(ju, i);
                        if !s.is_zero() {
                            out.add_term(r + i as i64, i as u32, c * Rational::from_integer(s));
                        }
                    }
                }
                Presentation::Theta => {
                    for k in 0..=ju {
                        let s = stirling_first_signed(ju, k);
                        if !s.is_zero() {
                            out.add_term(r - j as i64, k as u32, c * Rational::from_integer(s));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_theta(&self) -> Self {
        self.to_presentation(Presentation::Theta)
    }
}

impl fmt::Display for DiffOp {
    /// Prints in the CLI expression syntax, e.g. `z*T - T + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let var = match self.presentation {
            Presentation::Theta => "T",
            Presentation::D => "d",
        };
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|t| std::cmp::Reverse((t.0 .1, t.0 .0)));
        for (i, (&(r, j), c)) in ordered.into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (r == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            match r {
                0 => {}
                1 => factors.push("z".into()),
                _ => factors.push(format!("z^{r}")),
            }
            match j {
                0 => {}
                1 => factors.push(var.into()),
                _ => factors.push(format!("{var}^{j}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
