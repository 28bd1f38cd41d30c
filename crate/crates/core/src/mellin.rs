//! The global Mellin transform `z∂z ↦ -η`, `z ↦ Φ` and its germ at infinity.

use crate::error::{Error, Result};
use crate::polygon::{difference_polygon, global_polygon, rotate_cw, NewtonPolygon};
use crate::skew::{DiffOp, DiffnceOp};

/// Image of `P` under the algebra map `T ↦ -η`, `z ↦ Φ`, normal-ordered in
/// `k[η]⟨Φ,Φ⁻¹⟩`.
pub fn mellin(p: &DiffOp) -> Result<DiffnceOp> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let minus_eta = DiffnceOp::eta().neg();
    let mut out = DiffnceOp::zero();
    for ((r, j), c) in p.to_theta().terms() {
        // z^r T^j ↦ Φ^r (-η)^j
        let image = DiffnceOp::phi_pow(r).mul(&minus_eta.pow(j));
        out = out.add(&image.scale(c));
    }
    Ok(out)
}

/// Cyclic presentation of the germ at infinity: left-multiplies by the unit
/// `Φ^{-r}` so the lowest shift is `Φ^0`. Its polygon is read in the θ-view.
pub fn germ_at_infinity_op(n: &DiffnceOp) -> Result<DiffnceOp> {
    let (lo, _) = n.phi_range().ok_or(Error::ZeroOperator)?;
    Ok(DiffnceOp::phi_pow(-lo).mul(n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationCheck {
    /// Polygon of the Mellin germ at infinity.
    pub lhs: NewtonPolygon,
    /// Clockwise rotation of the global polygon.
    pub rhs: NewtonPolygon,
    pub equal: bool,
}

pub fn mellin_polygon(p: &DiffOp) -> Result<NewtonPolygon> {
    difference_polygon(&germ_at_infinity_op(&mellin(p)?)?, true)
}

/// Compares the polygon of the Mellin germ at infinity with the rotated
/// global polygon.
pub fn check_rotation(p: &DiffOp) -> Result<RotationCheck> {
    let lhs = mellin_polygon(p)?;
    let rhs = rotate_cw(&global_polygon(p)?)?;
    let equal = lhs == rhs;
    Ok(RotationCheck { lhs, rhs, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::Side;
    use crate::rational::rat;
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

    #[test]
    fn mellin_examples() {
        assert_eq!(
            mellin(&t_op(&[(0, 1, 1), (1, 0, -1)])).unwrap(),
            dop(&[(0, 1, -1), (1, 0, -1)])
        );
        assert_eq!(
            mellin(&t_op(&[(1, 1, 1), (0, 1, -1), (0, 0, 1)])).unwrap(),
            dop(&[(1, 1, -1), (1, 0, -1), (0, 1, 1), (0, 0, 1)])
        );
        assert_eq!(
            mellin(&t_op(&[(1, 0, 1), (0, 0, -2)])).unwrap(),
            dop(&[(1, 0, 1), (0, 0, -2)])
        );
    }

    #[test]
    fn germ_at_infinity_examples() {
        let n = dop(&[(0, 1, -1), (-1, 0, -1)]);
        assert_eq!(
            germ_at_infinity_op(&n).unwrap(),
            dop(&[(1, 1, -1), (1, 0, -1), (0, 0, -1)])
        );
        let n = dop(&[(0, 1, -1), (1, 0, -1)]);
        assert_eq!(germ_at_infinity_op(&n).unwrap(), n);
        assert_eq!(germ_at_infinity_op(&dop(&[(2, 0, 1)])).unwrap(), DiffnceOp::one());
    }

    #[test]
    fn rotation_examples() {
        let one_side = |slope: i64| vec![Side::new(rat(slope), rat(1))];
        let c = check_rotation(&t_op(&[(0, 1, 1), (1, 0, -1)])).unwrap();
        assert!(c.equal);
        assert_eq!(c.lhs.sides(), one_side(1).as_slice());
        let c = check_rotation(&t_op(&[(0, 1, 1), (-1, 0, -1)])).unwrap();
        assert!(c.equal);
        assert_eq!(c.lhs.sides(), one_side(-1).as_slice());
        let c = check_rotation(&t_op(&[(1, 1, 1), (0, 1, -1), (0, 0, 1)])).unwrap();
        assert!(c.equal);
        assert_eq!(c.lhs.sides(), one_side(0).as_slice());
    }

    #[test]
    fn zero_operator_is_rejected() {
        assert_eq!(mellin(&DiffOp::zero(Presentation::Theta)), Err(Error::ZeroOperator));
    }
}
