//! Newton polygons stored canonically as side lists.
//!
//! Three constructions share one representation:
//!
//! * **Global** — for `P = Σ_r α_r(T) z^r`, the convex envelope of the
//!   half-lines `{u ≤ deg α_r, v = r}`. The finite boundary is the right-hand
//!   chain, traversed bottom to top: sides of positive slope, then at most
//!   one vertical side (kept in `vertical_height`), then sides of negative
//!   slope.
//! * **Difference** — for `P = Σ_i a_i Φ^i`, the convex envelope of the
//!   half-lines `{x = i, y ≥ v(a_i)}`; the boundary is a lower hull traversed
//!   left to right, slopes strictly increasing.
//! * **Local differential** — for `Σ a_i(x)(x∂x)^i`, the convex envelope of
//!   the quadrants `{u ≤ i, v ≥ val a_i}`; only sides of positive slope occur.
//!
//! Side lists forget the position of the polygon, so equality (which ignores
//! the anchor vertex) is equality up to translation.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::rational::{rat, Rational};
use crate::skew::{DiffOp, DiffnceOp, LocalDiffOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolygonKind {
    Global,
    Difference,
    LocalDifferential,
}

impl PolygonKind {
    pub fn name(self) -> &'static str {
        match self {
            PolygonKind::Global => "global",
            PolygonKind::Difference => "difference",
            PolygonKind::LocalDifferential => "local-differential",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub slope: Rational,
    /// Horizontal extent, always positive.
    pub width: Rational,
}

impl Side {
    pub fn new(slope: Rational, width: Rational) -> Self {
        Self { slope, width }
    }

    pub fn rise(&self) -> Rational {
        (&self.slope * &self.width).abs()
    }
}

#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    kind: PolygonKind,
    sides: Vec<Side>,
    vertical_height: i64,
    anchor: (i64, i64),
}

impl PartialEq for NewtonPolygon {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.sides == other.sides
            && self.vertical_height == other.vertical_height
    }
}

impl Eq for NewtonPolygon {}

impl NewtonPolygon {
    pub fn kind(&self) -> PolygonKind {
        self.kind
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn vertical_height(&self) -> i64 {
        self.vertical_height
    }

    /// A vertex of the polygon: the bottom of the chain (global) or its
    /// leftmost vertex (difference, local). Only used for rendering.
    pub fn anchor(&self) -> (i64, i64) {
        self.anchor
    }

    pub fn is_point(&self) -> bool {
        self.sides.is_empty() && self.vertical_height == 0
    }

    /// Sum of side widths.
    pub fn width(&self) -> Rational {
        self.sides.iter().map(|s| s.width.clone()).sum()
    }

    /// Total vertical extent of the finite boundary.
    pub fn height(&self) -> Rational {
        self.sides.iter().map(Side::rise).sum::<Rational>() + rat(self.vertical_height)
    }

    /// Total width of sides with negative, zero and positive slope.
    pub fn widths_by_sign(&self) -> (Rational, Rational, Rational) {
        let mut out = (Rational::zero(), Rational::zero(), Rational::zero());
        for s in &self.sides {
            if s.slope.is_negative() {
                out.0 += &s.width;
            } else if s.slope.is_zero() {
                out.1 += &s.width;
            } else {
                out.2 += &s.width;
            }
        }
        out
    }

    /// Sides of strictly positive slope.
    pub fn positive_sides(&self) -> Vec<Side> {
        self.sides.iter().filter(|s| s.slope.is_positive()).cloned().collect()
    }

    /// Boundary vertices in traversal order, starting at the anchor.
    pub fn vertices(&self) -> Vec<(Rational, Rational)> {
        let mut at = (rat(self.anchor.0), rat(self.anchor.1));
        let mut out = vec![at.clone()];
        let mut step = |dx: Rational, dy: Rational, out: &mut Vec<(Rational, Rational)>| {
            at = (&at.0 + dx, &at.1 + dy);
            out.push(at.clone());
        };
        match self.kind {
            PolygonKind::Global => {
                for s in self.sides.iter().filter(|s| s.slope.is_positive()) {
                    step(s.width.clone(), s.rise(), &mut out);
                }
                if self.vertical_height > 0 {
                    step(Rational::zero(), rat(self.vertical_height), &mut out);
                }
                for s in self.sides.iter().filter(|s| s.slope.is_negative()) {
                    step(-s.width.clone(), s.rise(), &mut out);
                }
            }
            PolygonKind::Difference | PolygonKind::LocalDifferential => {
                for s in &self.sides {
                    step(s.width.clone(), &s.slope * &s.width, &mut out);
                }
            }
        }
        out
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} polygon:", self.kind.name())?;
        if self.is_point() {
            return write!(f, " single point");
        }
        for s in &self.sides {
            write!(f, " [slope {}, width {}]", s.slope, s.width)?;
        }
        if self.vertical_height > 0 {
            write!(f, " [vertical {}]", self.vertical_height)?;
        }
        Ok(())
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

/// Counter-clockwise convex chain through points already sorted along the
/// traversal; collinear interior points are dropped.
fn ccw_chain(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut chain: Vec<(i64, i64)> = Vec::with_capacity(points.len());
    for &p in points {
        while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0 {
            chain.pop();
        }
        chain.push(p);
    }
    chain
}

/// Lower hull of points with distinct abscissae, sorted by abscissa.
fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    ccw_chain(points)
}

fn sides_from_vertices(vertices: &[(i64, i64)]) -> Vec<Side> {
    vertices
        .windows(2)
        .map(|w| {
            let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            Side::new(Rational::new(dy.into(), dx.into()), rat(dx))
        })
        .collect()
}

/// Polygon of `P = Σ_r α_r(T) z^r` from the half-lines `{u ≤ deg α_r, v = r}`.
pub fn global_polygon(p: &DiffOp) -> Result<NewtonPolygon> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let theta = p.to_theta();
    // (u, v) = (deg α_r, r), one point per r, increasing v
    let mut points: Vec<(i64, i64)> = Vec::new();
    for ((r, j), _) in theta.terms() {
        match points.last_mut() {
            Some(last) if last.1 == r => last.0 = last.0.max(j as i64),
            _ => points.push((j as i64, r)),
        }
    }
    let chain = ccw_chain(&points);
    let mut sides = Vec::new();
    let mut vertical_height = 0;
    for w in chain.windows(2) {
        let (du, dv) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        if du == 0 {
            vertical_height += dv;
        } else {
            sides.push(Side::new(Rational::new(dv.into(), du.into()), rat(du.abs())));
        }
    }
    Ok(NewtonPolygon {
        kind: PolygonKind::Global,
        sides,
        vertical_height,
        anchor: chain[0],
    })
}

/// Valuation of a difference coefficient `a(η)`: in the θ-view (`θ = η⁻¹`)
/// this is `-deg_η a`, otherwise the `η`-adic order.
fn difference_valuation(a: &LaurentPolynomial, theta_view: bool) -> i64 {
    if theta_view {
        -a.degree().expect("nonzero coefficient")
    } else {
        a.valuation().expect("nonzero coefficient")
    }
}

fn difference_points(p: &DiffnceOp, theta_view: bool) -> Vec<(i64, i64, LaurentPolynomial)> {
    p.coefficients()
        .into_iter()
        .map(|(i, a)| (i, difference_valuation(&a, theta_view), a))
        .collect()
}

/// Polygon of `Σ a_i Φ^i` from the half-lines `{x = i, y ≥ v(a_i)}`.
pub fn difference_polygon(p: &DiffnceOp, theta_view: bool) -> Result<NewtonPolygon> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let points: Vec<(i64, i64)> = difference_points(p, theta_view)
        .into_iter()
        .map(|(i, v, _)| (i, v))
        .collect();
    let hull = lower_hull(&points);
    Ok(NewtonPolygon {
        kind: PolygonKind::Difference,
        sides: sides_from_vertices(&hull),
        vertical_height: 0,
        anchor: hull[0],
    })
}

/// Polygon of a local operator from the quadrants `{u ≤ i, v ≥ val a_i}`.
pub fn local_diff_polygon(l: &LocalDiffOp) -> Result<NewtonPolygon> {
    let points: Vec<(i64, i64)> = l
        .coefficients()
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.valuation().map(|v| (i as i64, v)))
        .collect();
    if points.is_empty() {
        return Err(Error::ZeroOperator);
    }
    let min_v = points.iter().map(|p| p.1).min().expect("nonempty");
    let start = points
        .iter()
        .filter(|p| p.1 == min_v)
        .map(|p| p.0)
        .max()
        .expect("nonempty");
    let relevant: Vec<(i64, i64)> = points.into_iter().filter(|p| p.0 >= start).collect();
    let hull = lower_hull(&relevant);
    Ok(NewtonPolygon {
        kind: PolygonKind::LocalDifferential,
        sides: sides_from_vertices(&hull),
        vertical_height: 0,
        anchor: hull[0],
    })
}

/// Clockwise quarter turn `(u, v) ↦ (v, -u)` of a global polygon.
pub fn rotate_cw(n: &NewtonPolygon) -> Result<NewtonPolygon> {
    if n.kind != PolygonKind::Global {
        return Err(Error::WrongKind {
            expected: PolygonKind::Global.name(),
            found: n.kind.name(),
        });
    }
    let turn = |s: &Side| Side::new(-s.slope.recip(), s.rise());
    let mut sides: Vec<Side> = n.sides.iter().filter(|s| s.slope.is_positive()).map(turn).collect();
    if n.vertical_height > 0 {
        sides.push(Side::new(Rational::zero(), rat(n.vertical_height)));
    }
    sides.extend(n.sides.iter().filter(|s| s.slope.is_negative()).map(turn));
    Ok(NewtonPolygon {
        kind: PolygonKind::Difference,
        sides,
        vertical_height: 0,
        anchor: (n.anchor.1, -n.anchor.0),
    })
}

/// `p_σ(t) = Σ lc(a_i) t^{i - i₀}` over the points on the horizontal side of
/// the θ-view difference polygon, or `None` when there is no such side.
/// `lc` is the leading θ-coefficient, i.e. the top `η` coefficient.
pub fn horizontal_side_polynomial(p: &DiffnceOp) -> Result<Option<LaurentPolynomial>> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let points = difference_points(p, true);
    let plain: Vec<(i64, i64)> = points.iter().map(|(i, v, _)| (*i, *v)).collect();
    let hull = lower_hull(&plain);
    let Some(side) = hull.windows(2).find(|w| w[0].1 == w[1].1) else {
        return Ok(None);
    };
    let (x0, x1, y) = (side[0].0, side[1].0, side[0].1);
    let poly = LaurentPolynomial::from_terms(
        points
            .iter()
            .filter(|(i, v, _)| *v == y && (x0..=x1).contains(i))
            .map(|(i, _, a)| (i - x0, a.leading_coeff().expect("nonzero").clone())),
    );
    Ok(Some(poly))
}

/// Rational horizontal zeros, and the degree of the non-rational residual
/// factor of `p_σ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HorizontalZeros {
    pub roots: Vec<Rational>,
    pub residual_degree: usize,
}

pub fn horz(p: &DiffnceOp) -> Result<HorizontalZeros> {
    match horizontal_side_polynomial(p)? {
        None => Ok(HorizontalZeros::default()),
        Some(poly) => {
            let (roots, residual_degree) = poly.rational_roots()?;
            Ok(HorizontalZeros {
                roots,
                residual_degree,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::skew::Presentation;

    fn t_op(terms: &[(i64, u32, i64)]) -> DiffOp {
        DiffOp::from_terms(
            Presentation::Theta,
            terms.iter().map(|&(r, j, c)| ((r, j), rat(c))),
        )
    }

    fn dop(terms: &[(i64, u32, i64)]) -> DiffnceOp {
        DiffnceOp::from_terms(terms.iter().map(|&(i, e, c)| ((i, e), rat(c))))
    }

    fn side(slope: i64, width: i64) -> Side {
        Side::new(rat(slope), rat(width))
    }

    #[test]
    fn global_examples() {
        let n = global_polygon(&t_op(&[(0, 1, 1), (1, 0, -1)])).unwrap();
        assert_eq!(n.sides(), &[side(-1, 1)]);
        assert_eq!(n.vertical_height(), 0);
        assert_eq!(n.height(), rat(1));

        let n = global_polygon(&t_op(&[(1, 0, 1), (0, 0, -2)])).unwrap();
        assert!(n.sides().is_empty());
        assert_eq!(n.vertical_height(), 1);
        assert_eq!(n.width(), rat(0));

        let n = global_polygon(&t_op(&[(0, 1, 1), (0, 0, -3)])).unwrap();
        assert!(n.is_point());
        assert_eq!(n.height(), rat(0));
    }

    #[test]
    fn global_chain_with_all_side_kinds() {
        // points (0,-1), (2,0), (2,1), (0,3): slope 1/2, vertical 1, slope -1
        let p = t_op(&[(-1, 0, 1), (0, 2, 1), (1, 2, 1), (3, 0, 1), (1, 1, 5)]);
        let n = global_polygon(&p).unwrap();
        assert_eq!(
            n.sides(),
            &[Side::new(ratio(1, 2), rat(2)), side(-1, 2)]
        );
        assert_eq!(n.vertical_height(), 1);
        assert_eq!(n.height(), rat(4));
        let r = rotate_cw(&n).unwrap();
        assert_eq!(
            r.sides(),
            &[side(-2, 1), side(0, 1), side(1, 2)]
        );
        assert_eq!(r.width(), n.height());
        assert_eq!(r.height(), n.width());
    }

    #[test]
    fn difference_examples() {
        let n = difference_polygon(&dop(&[(0, 1, -1), (1, 0, -1)]), true).unwrap();
        assert_eq!(n.sides(), &[side(1, 1)]);
        let n = difference_polygon(&dop(&[(1, 1, -1), (1, 0, -1), (0, 1, 1), (0, 0, 1)]), true).unwrap();
        assert_eq!(n.sides(), &[side(0, 1)]);
        let n = difference_polygon(&dop(&[(1, 0, 1), (0, 0, -5)]), true).unwrap();
        assert_eq!(n.sides(), &[side(0, 1)]);
    }

    #[test]
    fn local_examples() {
        let l = LocalDiffOp::new(vec![LaurentPolynomial::from_coeffs(&[-1]), LaurentPolynomial::from_coeffs(&[0, 1])]).unwrap();
        let n = local_diff_polygon(&l).unwrap();
        assert_eq!(n.sides(), &[side(1, 1)]);
        assert_eq!(n.height(), rat(1));

        let l = LocalDiffOp::new(vec![LaurentPolynomial::from_coeffs(&[1]), LaurentPolynomial::from_coeffs(&[1, 1])]).unwrap();
        assert_eq!(local_diff_polygon(&l).unwrap().height(), rat(0));

        let l = LocalDiffOp::new(vec![LaurentPolynomial::from_coeffs(&[1])]).unwrap();
        assert!(local_diff_polygon(&l).unwrap().is_point());
    }

    #[test]
    fn rotation_examples() {
        let n = global_polygon(&t_op(&[(0, 1, 1), (1, 0, -1)])).unwrap();
        assert_eq!(rotate_cw(&n).unwrap().sides(), &[side(1, 1)]);
        let n = global_polygon(&t_op(&[(1, 0, 1), (0, 0, -2)])).unwrap();
        let r = rotate_cw(&n).unwrap();
        assert_eq!(r.sides(), &[side(0, 1)]);
        assert_eq!(r.vertical_height(), 0);
        let n = global_polygon(&DiffOp::theta()).unwrap();
        assert!(rotate_cw(&n).unwrap().is_point());
    }

    #[test]
    fn rotation_needs_global() {
        let n = difference_polygon(&dop(&[(0, 0, 1)]), true).unwrap();
        assert!(matches!(rotate_cw(&n), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn horizontal_side_polynomials() {
        let p = dop(&[(1, 1, -1), (1, 0, -1), (0, 1, 1), (0, 0, 1)]);
        assert_eq!(
            horizontal_side_polynomial(&p).unwrap(),
            Some(LaurentPolynomial::from_coeffs(&[1, -1]))
        );
        assert_eq!(horz(&p).unwrap().roots, vec![rat(1)]);

        let p = dop(&[(1, 0, 1), (0, 0, -3)]);
        assert_eq!(
            horizontal_side_polynomial(&p).unwrap(),
            Some(LaurentPolynomial::from_coeffs(&[-3, 1]))
        );
        assert_eq!(horz(&p).unwrap().roots, vec![rat(3)]);

        let p = dop(&[(0, 1, -1), (1, 0, -1)]);
        assert_eq!(horizontal_side_polynomial(&p).unwrap(), None);
        assert_eq!(horz(&p).unwrap(), HorizontalZeros::default());
    }

    #[test]
    fn vertices_walk_the_boundary() {
        let p = t_op(&[(-1, 0, 1), (0, 2, 1), (1, 2, 1), (3, 0, 1)]);
        let n = global_polygon(&p).unwrap();
        let v: Vec<(Rational, Rational)> = [(0, -1), (2, 0), (2, 1), (0, 3)]
            .iter()
            .map(|&(a, b)| (rat(a), rat(b)))
            .collect();
        assert_eq!(n.vertices(), v);
    }
}
