//! Germs of operators over `k((x))`, written `Σ a_i(x) (x∂x)^i`.

use std::fmt;

use num_traits::{One, Zero};

use super::diffop::{DiffOp, Presentation};
use super::stirling::stirling_first_signed;
use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDiffOp {
    coeffs: Vec<LaurentPolynomial>,
}

impl LocalDiffOp {
    /// Builds `Σ a_i (x∂x)^i`; trailing zero coefficients are dropped.
    pub fn new(mut coeffs: Vec<LaurentPolynomial>) -> Result<Self> {
        while coeffs.last().is_some_and(LaurentPolynomial::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroOperator);
        }
        Ok(Self { coeffs })
    }

    pub fn coefficients(&self) -> &[LaurentPolynomial] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> LaurentPolynomial {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Order `d` in `x∂x`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &LaurentPolynomial {
        &self.coeffs[self.order()]
    }

    /// Smallest `x`-valuation over all nonzero coefficients.
    pub fn min_valuation(&self) -> i64 {
        self.coeffs
            .iter()
            .filter_map(LaurentPolynomial::valuation)
            .min()
            .expect("nonzero operator")
    }

    pub fn is_normalized(&self) -> bool {
        self.min_valuation() == 0
    }

    /// Left-multiplies by the unit `x^{-m}` so that the minimal coefficient
    /// valuation is 0.
    pub fn normalized(&self) -> Self {
        let m = self.min_valuation();
        Self {
            coeffs: self.coeffs.iter().map(|a| a.shift(-m)).collect(),
        }
    }
}

impl fmt::Display for LocalDiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({})", a.display_with("x"))?,
                1 => write!(f, "({})*X", a.display_with("x"))?,
                _ => write!(f, "({})*X^{i}", a.display_with("x"))?,
            }
        }
        Ok(())
    }
}

/// Germ of `P` at the finite nonzero point `s`, in the coordinate
/// `x = z - s`.
///
/// Powers of `z⁻¹` are cleared by a unit, the operator is rewritten as
/// `Σ b_i(x) ∂^i` with polynomial `b_i`, multiplied on the left by `x^d`
/// and re-expressed through `x^i ∂^i = (x∂x)(x∂x - 1)…(x∂x - i + 1)`.
pub fn translate_op(p: &DiffOp, s: &Rational) -> Result<LocalDiffOp> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    if s.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let (lo, _) = p.to_theta().z_range().expect("nonzero");
    let cleared = p.to_theta().shift_z((-lo).max(0));
    let d_form = cleared.to_presentation(Presentation::D);
    let order = d_form.order().expect("nonzero") as usize;
    let b: Vec<LaurentPolynomial> = (0..=order)
        .map(|i| d_form.coefficient(i as u32).taylor_shift(s))
        .collect();
    let mut a = vec![LaurentPolynomial::zero(); order + 1];
    for (i, bi) in b.iter().enumerate() {
        if bi.is_zero() {
            continue;
        }
        let lifted = bi.shift((order - i) as i64);
        for (j, aj) in a.iter_mut().enumerate().take(i + 1) {
            let st = stirling_first_signed(i, j);
            if !st.is_zero() {
                *aj = &*aj + &lifted.scale(&Rational::from_integer(st));
            }
        }
    }
    Ok(LocalDiffOp::new(a)?.normalized())
}

/// Germ at infinity in `y = 1/z`: `z^r T^j ↦ (-1)^j y^{-r} (y∂y)^j`,
/// normalized.
pub fn invert_coordinate(p: &DiffOp) -> Result<LocalDiffOp> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let theta = p.to_theta();
    let coeffs = theta
        .coefficients()
        .into_iter()
        .enumerate()
        .map(|(j, a)| {
            let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
            a.reflect().scale(&sign)
        })
        .collect();
    Ok(LocalDiffOp::new(coeffs)?.normalized())
}

/// Germ at the origin: the theta-form coefficients read in `k((z))`,
/// normalized.
pub fn germ_at_zero(p: &DiffOp) -> Result<LocalDiffOp> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    Ok(LocalDiffOp::new(p.to_theta().coefficients())?.normalized())
}
