//! Germs of a global operator at `0`, at finite nonzero points and at `∞`,
//! with their dimension, irregularity and vanishing-cycle count.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polygon::{local_diff_polygon, Side};
use crate::rational::{parse_rational, to_i64, Rational};
use crate::skew::{germ_at_zero, invert_coordinate, translate_op, DiffOp, LocalDiffOp};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Zero,
    Finite(Rational),
    Infinity,
}

impl Point {
    /// Parses `0`, `inf` or a nonzero rational.
    pub fn parse(text: &str) -> Option<Point> {
        match text.trim() {
            "inf" | "infinity" | "∞" => Some(Point::Infinity),
            other => {
                let r = parse_rational(other)?;
                Some(if r.is_zero() { Point::Zero } else { Point::Finite(r) })
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Zero => write!(f, "0"),
            Point::Finite(s) => write!(f, "{s}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermReport {
    pub point: Point,
    pub dim: u64,
    pub irr: u64,
    pub mu: u64,
    /// Positive-slope sides of the local polygon.
    pub slopes: Vec<Side>,
}

/// The normalized local operator of `P` at `point`.
pub fn germ_at(p: &DiffOp, point: &Point) -> Result<LocalDiffOp> {
    match point {
        Point::Zero => germ_at_zero(p),
        Point::Finite(s) => translate_op(p, s),
        Point::Infinity => invert_coordinate(p),
    }
}

/// Reads `dim`, `irr` and `μ = dim + irr` off the local polygon.
pub fn invariants(l: &LocalDiffOp, point: Point) -> Result<GermReport> {
    let polygon = local_diff_polygon(&l.normalized())?;
    let irr = to_i64(&polygon.height()).expect("integral height of a lattice polygon") as u64;
    let dim = l.order() as u64;
    Ok(GermReport {
        point,
        dim,
        irr,
        mu: dim + irr,
        slopes: polygon.positive_sides(),
    })
}

pub fn germ_report(p: &DiffOp, point: &Point) -> Result<GermReport> {
    invariants(&germ_at(p, point)?, point.clone())
}

/// Candidate singular points: nonzero rational roots of the leading
/// theta-coefficient, plus the degree of its non-rational residual factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoints {
    pub points: Vec<Rational>,
    pub residual_degree: usize,
}

pub fn singular_points(p: &DiffOp) -> Result<SingularPoints> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let (points, residual_degree) = p.to_theta().leading_coefficient().rational_roots()?;
    Ok(SingularPoints {
        points,
        residual_degree,
    })
}
