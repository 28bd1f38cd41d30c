//! Truncated microdifference operators `Σ_{i ≤ d} a_i(u) η^i`.
//!
//! The product is `P ∘_δ Q = Σ_{α≥0} (1/α!) ∂_η^α P · δ^α Q` for a
//! derivation `δ` of `k((u))`: either `δ_s = -(u+s)∂_u` or `δ_∞ = u∂_u`.
//!
//! A [`MicroOp`] knows the coefficients of `η^top, …, η^{top-depth+1}`;
//! everything below is unknown. Each coefficient is a [`TruncatedSeries`]
//! carrying its own certified `u`-precision. Both bounds are recomputed by
//! every operation and reads outside them fail.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::germ::Point;
use crate::poly::LaurentPolynomial;
use crate::rational::{binomial, rat, Rational};
use crate::series::TruncatedSeries;
use crate::skew::LocalDiffOp;

/// Which derivation twists the product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Derivation {
    /// `δ_s = -(u+s) ∂_u`.
    DeltaS(Rational),
    /// `δ_∞ = u ∂_u`.
    DeltaInf,
}

impl Derivation {
    fn multiplier(&self) -> LaurentPolynomial {
        match self {
            Derivation::DeltaS(s) => {
                LaurentPolynomial::from_terms([(0, -s.clone()), (1, -Rational::one())])
            }
            Derivation::DeltaInf => LaurentPolynomial::var(),
        }
    }

    pub fn apply(&self, f: &TruncatedSeries) -> TruncatedSeries {
        f.derivative().mul_poly(&self.multiplier())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MicroOp {
    top: i64,
    /// `coeffs[k]` multiplies `η^{top-k}`.
    coeffs: Vec<TruncatedSeries>,
    tag: Derivation,
}

impl MicroOp {
    pub fn new(tag: Derivation, top: i64, coeffs: Vec<TruncatedSeries>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyWindow);
        }
        Ok(Self { top, coeffs, tag })
    }

    /// Operator with the given `(η-exponent, coefficient)` terms; every other
    /// slot of the window is zero up to `u_precision`.
    pub fn from_terms<I>(
        tag: Derivation,
        top: i64,
        depth: usize,
        u_precision: i64,
        terms: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, TruncatedSeries)>,
    {
        let mut coeffs = vec![TruncatedSeries::zero(u_precision); depth];
        for (e, c) in terms {
            let k = top - e;
            if k < 0 || k >= depth as i64 {
                return Err(Error::EmptyWindow);
            }
            coeffs[k as usize] = coeffs[k as usize].add(&c);
        }
        Self::new(tag, top, coeffs)
    }

    /// `c(u) η^e`, known exactly down to `η^{e-depth+1}`.
    pub fn monomial(tag: Derivation, e: i64, c: TruncatedSeries, depth: usize) -> Result<Self> {
        let p = c.precision();
        Self::from_terms(tag, e, depth, p, [(e, c)])
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    pub fn tag(&self) -> &Derivation {
        &self.tag
    }

    /// Lowest `η`-exponent whose coefficient is known.
    pub fn lowest_known(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }

    /// Coefficients from `η^top` downwards.
    pub fn coefficients(&self) -> &[TruncatedSeries] {
        &self.coeffs
    }

    /// Coefficient of `η^e`. Above `top` it is zero; below the window it is
    /// unknown and the read fails.
    pub fn coeff(&self, e: i64) -> Result<TruncatedSeries> {
        if e > self.top {
            return Ok(TruncatedSeries::zero(self.u_precision()));
        }
        if e < self.lowest_known() {
            return Err(Error::InsufficientPrecision(format!(
                "η^{e} lies below the certified window (lowest η^{})",
                self.lowest_known()
            )));
        }
        Ok(self.coeffs[(self.top - e) as usize].clone())
    }

    /// Smallest certified `u`-precision over the window.
    pub fn u_precision(&self) -> i64 {
        self.coeffs.iter().map(TruncatedSeries::precision).min().expect("nonempty")
    }

    /// `u`-valuation of the top coefficient.
    pub fn leading_valuation(&self) -> Result<i64> {
        self.coeffs[0].valuation().ok_or_else(|| {
            Error::InsufficientPrecision(format!(
                "leading coefficient vanishes up to u^{}",
                self.coeffs[0].precision()
            ))
        })
    }

    fn check_tag(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let top = self.top.max(other.top);
        let low = self.lowest_known().max(other.lowest_known());
        if low > top {
            return Err(Error::EmptyWindow);
        }
        let coeffs = (low..=top)
            .rev()
            .map(|e| Ok(self.coeff(e)?.add(&other.coeff(e)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.tag.clone(), top, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            top: self.top,
            coeffs: self.coeffs.iter().map(TruncatedSeries::neg).collect(),
            tag: self.tag.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `self ∘_δ other`. The result spans `η^{t₁+t₂}` down through
    /// `min(depth₁, depth₂)` exponents.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_tag(other)?;
        let depth = self.depth().min(other.depth());
        let top = self.top + other.top;
        // δ^α applied to each coefficient of `other`, α ≤ depth-1-k
        let twisted: Vec<Vec<TruncatedSeries>> = other.coeffs[..depth]
            .iter()
            .enumerate()
            .map(|(kq, b)| {
                let mut powers = vec![b.clone()];
                for _ in kq + 1..depth {
                    let next = self.tag.apply(powers.last().expect("nonempty"));
                    powers.push(next);
                }
                powers
            })
            .collect();
        let mut coeffs = Vec::with_capacity(depth);
        for k in 0..depth {
            let mut acc: Option<TruncatedSeries> = None;
            for kp in 0..=k {
                let i = self.top - kp as i64;
                let a = &self.coeffs[kp];
                for (kq, powers) in twisted.iter().enumerate().take(k - kp + 1) {
                    let alpha = k - kp - kq;
                    let weight = binomial(i, alpha as u32);
                    // a zero weight still bounds the precision
                    let term = a.mul(&powers[alpha]).scale(&weight);
                    acc = Some(match acc {
                        None => term,
                        Some(sum) => sum.add(&term),
                    });
                }
            }
            coeffs.push(acc.expect("at least the α = 0 term"));
        }
        Self::new(self.tag.clone(), top, coeffs)
    }

    /// Coefficientwise equality on the window shared by both operators, up
    /// to `u^p`.
    pub fn eq_up_to(&self, other: &Self, p: i64) -> Result<bool> {
        let top = self.top.max(other.top);
        let low = self.lowest_known().max(other.lowest_known());
        for e in low..=top {
            if !self.coeff(e)?.eq_up_to(&other.coeff(e)?, p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for MicroOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*eta^{}", self.top - k as i64)?;
        }
        write!(f, " + O(eta^{})", self.lowest_known() - 1)
    }
}

/// Result of a Weierstrass-type division `S = Q ∘ P + R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotient: MicroOp,
    /// `Σ_{j<slots} u^j R_j(η)`: every coefficient is a polynomial in `u` of
    /// degree below `slots`.
    pub remainder: MicroOp,
    /// `u`-valuation of the leading coefficient of the divisor.
    pub slots: u64,
}

fn check_integral(op: &MicroOp, name: &str) -> Result<()> {
    for (k, c) in op.coeffs.iter().enumerate() {
        if c.valuation().is_some_and(|v| v < 0) {
            return Err(Error::NotIntegral(format!(
                "{name}: coefficient of η^{}",
                op.top - k as i64
            )));
        }
    }
    Ok(())
}

/// Divides `s` by `p` on their common window, top `η`-degree first.
///
/// With `a_d = u^v e(u)` the leading coefficient of `p`, each step splits
/// the current top coefficient `c` of `s - Q∘P - R` as `c = r + u^v t` with
/// `deg_u r < v`, records `q = t / e` and `r`, and subtracts
/// `q η^{e-d} ∘ P + r η^e`.
pub fn micro_divide(s: &MicroOp, p: &MicroOp) -> Result<Division> {
    s.check_tag(p)?;
    check_integral(s, "dividend")?;
    check_integral(p, "divisor")?;
    let v = p.leading_valuation()?;
    let lead = &p.coeffs[0];
    let unit_inv = lead.shift(-v).invert()?;
    let depth = s.depth().min(p.depth());
    let mut remaining = MicroOp::new(s.tag.clone(), s.top, s.coeffs[..depth].to_vec())?;
    let mut quotient = Vec::with_capacity(depth);
    let mut remainder = Vec::with_capacity(depth);
    for k in 0..depth {
        let e = s.top - k as i64;
        let c = remaining.coeff(e)?;
        if c.precision() < v {
            return Err(Error::InsufficientPrecision(format!(
                "coefficient of η^{e} is known to u^{} but the remainder needs u^{v}",
                c.precision()
            )));
        }
        let r = TruncatedSeries::from_poly(&c.truncate(v).to_poly(), c.precision());
        let q = c.sub(&r).shift(-v).mul(&unit_inv);
        let left = depth - k;
        let q_term = MicroOp::monomial(s.tag.clone(), e - p.top, q.clone(), left)?.product(p)?;
        let r_term = MicroOp::monomial(s.tag.clone(), e, r.clone(), left)?;
        remaining = remaining.sub(&q_term)?.sub(&r_term)?;
        quotient.push(q);
        remainder.push(r);
    }
    Ok(Division {
        quotient: MicroOp::new(s.tag.clone(), s.top - p.top, quotient)?,
        remainder: MicroOp::new(s.tag.clone(), s.top, remainder)?,
        slots: v as u64,
    })
}

/// Truncation window for microlocalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    /// Number of tracked `η`-levels; `None` means `d + 2`.
    pub depth: Option<usize>,
    /// Extra `u`-precision beyond `ord(a_d) + d`.
    pub guard: i64,
}

impl Default for Window {
    fn default() -> Self {
        Self {
            depth: None,
            guard: 8,
        }
    }
}

impl Window {
    pub fn with_guard(guard: i64) -> Self {
        Self {
            guard,
            ..Self::default()
        }
    }

    pub fn widened(self) -> Self {
        Self {
            depth: self.depth.map(|d| d * 2),
            guard: self.guard * 2,
        }
    }
}

/// `w(u) = Σ_{i≥0} (-u/s)^{i+1} = -u/(u+s)`, the image of `x∂x` divided by
/// `η` under the local transform at `s`.
fn finite_shift_factor(s: &Rational, precision: i64) -> TruncatedSeries {
    let ratio = -s.recip();
    let mut c = Rational::one();
    let terms = (1..precision.max(1)).map(|i| {
        c = &c * &ratio;
        (i, c.clone())
    });
    TruncatedSeries::from_poly(&LaurentPolynomial::from_terms(terms), precision)
}

pub fn derivation_for(point: &Point) -> Derivation {
    match point {
        Point::Zero => Derivation::DeltaS(Rational::zero()),
        Point::Finite(s) => Derivation::DeltaS(s.clone()),
        Point::Infinity => Derivation::DeltaInf,
    }
}

/// Image of `Σ a_i(x)(x∂x)^i` in the microdifference ring attached to
/// `point`: `x ↦ u` and `x∂x ↦ -η` (at 0), `w(u) η` (at `s ≠ 0`) or `η`
/// (at ∞).
pub fn micro_localize(l: &LocalDiffOp, point: &Point, window: Window) -> Result<MicroOp> {
    let l = l.normalized();
    let d = l.order();
    let ord_lead = l.leading().valuation().expect("nonzero leading coefficient");
    let depth = window.depth.unwrap_or(d + 2).max(1);
    let u_prec = ord_lead + d as i64 + window.guard;
    let tag = derivation_for(point);
    let eta_image = match point {
        Point::Zero => TruncatedSeries::from_poly(&LaurentPolynomial::constant(rat(-1)), u_prec),
        Point::Finite(s) => finite_shift_factor(s, u_prec),
        Point::Infinity => TruncatedSeries::one(u_prec),
    };
    let x = MicroOp::monomial(tag.clone(), 1, eta_image, depth)?;
    let mut power = MicroOp::monomial(tag.clone(), 0, TruncatedSeries::one(u_prec), depth)?;
    let mut total: Option<MicroOp> = None;
    for (i, a) in l.coefficients().iter().enumerate() {
        if i > 0 {
            power = power.product(&x)?;
        }
        if a.is_zero() {
            continue;
        }
        let coeff = MicroOp::monomial(tag.clone(), 0, TruncatedSeries::from_poly(a, u_prec), depth)?;
        let term = coeff.product(&power)?;
        total = Some(match total {
            None => term,
            Some(t) => t.add(&term)?,
        });
    }
    total.ok_or(Error::ZeroOperator)
}

/// `dim_{K_θ}` of the local transform at `point`: the number of remainder
/// slots of division by the microlocalized operator, i.e. the `u`-valuation
/// of its top coefficient.
pub fn local_mellin_dim(l: &LocalDiffOp, point: &Point, window: Window) -> Result<u64> {
    let op = micro_localize(l, point, window)?;
    if op.top() != l.order() as i64 {
        return Err(Error::InsufficientPrecision("top η-degree collapsed".into()));
    }
    Ok(op.leading_valuation()? as u64)
}
