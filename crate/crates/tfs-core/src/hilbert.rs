//! Finite-dimensional chart points: a commuting pair of operators with a
//! weight functional, written in a monomial chart, together with their Gram
//! classification and the rational series they expand to.

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::series::{frobenius_to_rational, FrobeniusPresentation, RationalForm};
use crate::poly::{Poly, Poly2};

/// A point of the dimension-k chart: a monomial basis (with the unit
/// monomial), the two multiplication operators in that basis, and the
/// weight functional's coordinate row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPoint<T: Scalar> {
    pub basis: Vec<(usize, usize)>,
    pub n1: Matrix<T>,
    pub n2: Matrix<T>,
    pub a: Vec<T>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PointViolation {
    #[error("dimensions are inconsistent with the basis size")]
    Dimensions,
    #[error("basis monomials must be distinct")]
    DuplicateBasis,
    #[error("basis must contain the unit monomial (0, 0)")]
    MissingUnit,
    #[error("commutativity fails: the two operators do not commute")]
    Commutativity,
    #[error("chart consistency fails at basis monomial {monomial:?}")]
    ChartConsistency { monomial: (usize, usize) },
}

/// Gram rank and divisor membership of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClass {
    pub k: usize,
    pub m: usize,
    pub in_dk: bool,
}

impl<T: Scalar> HilbertPoint<T> {
    pub fn k(&self) -> usize {
        self.basis.len()
    }

    fn unit_index(&self) -> Option<usize> {
        self.basis.iter().position(|&b| b == (0, 0))
    }

    /// Coordinates of T1^i T2^j applied to the unit.
    fn monomial_coords(&self, i: usize, j: usize) -> Vec<T> {
        let u = self.unit_index().expect("validated point has a unit monomial");
        let mut v = vec![T::zero(); self.k()];
        v[u] = T::one();
        for _ in 0..j {
            v = self.n2.mul_vec(&v);
        }
        for _ in 0..i {
            v = self.n1.mul_vec(&v);
        }
        v
    }
}

/// Check every chart invariant, reporting the first violated one:
/// consistent dimensions, distinct basis monomials including the unit,
/// commuting operators, and chart consistency (each basis monomial applied
/// to the unit must give its own coordinate vector).
pub fn point_validate<T: Scalar>(p: &HilbertPoint<T>) -> Result<(), PointViolation> {
    let k = p.k();
    if k == 0
        || !p.n1.is_square()
        || !p.n2.is_square()
        || p.n1.rows() != k
        || p.n2.rows() != k
        || p.a.len() != k
    {
        return Err(PointViolation::Dimensions);
    }
    for s in 0..k {
        for t in (s + 1)..k {
            if p.basis[s] == p.basis[t] {
                return Err(PointViolation::DuplicateBasis);
            }
        }
    }
    if p.unit_index().is_none() {
        return Err(PointViolation::MissingUnit);
    }
    if p.n1.mul(&p.n2) != p.n2.mul(&p.n1) {
        return Err(PointViolation::Commutativity);
    }
    for (u, &(i, j)) in p.basis.iter().enumerate() {
        let coords = p.monomial_coords(i, j);
        let mut e_u = vec![T::zero(); k];
        e_u[u] = T::one();
        if coords != e_u {
            return Err(PointViolation::ChartConsistency { monomial: (i, j) });
        }
    }
    Ok(())
}

/// Gram matrix of the point, M[u][v] = a · coords(basis[u] · basis[v]),
/// together with its determinant.
pub fn gram_point<T: Scalar>(p: &HilbertPoint<T>) -> Result<(Matrix<T>, T), PointViolation> {
    point_validate(p)?;
    let k = p.k();
    let m = Matrix::from_fn(k, k, |u, v| {
        let (iu, ju) = p.basis[u];
        let (iv, jv) = p.basis[v];
        let coords = p.monomial_coords(iu + iv, ju + jv);
        p.a.iter().zip(&coords).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    });
    let det = m.det();
    Ok((m, det))
}

/// Rank of the Gram form and membership in the degenerate divisor
/// (vanishing Gram determinant).
pub fn classify_point<T: Scalar>(p: &HilbertPoint<T>) -> Result<PointClass, PointViolation> {
    let (m, det) = gram_point(p)?;
    Ok(PointClass { k: p.k(), m: m.rank(), in_dk: det.is_zero() })
}

/// Expand the point's weight functional into its rational two-variable
/// series.
pub fn point_to_series<T: Scalar>(p: &HilbertPoint<T>) -> Result<RationalForm<T>, PointViolation> {
    point_validate(p)?;
    let u = p.unit_index().expect("validated");
    let mut unit = vec![T::zero(); p.k()];
    unit[u] = T::one();
    let pres = FrobeniusPresentation {
        g1: p.n1.clone(),
        g2: p.n2.clone(),
        beta: p.a.clone(),
        unit,
    };
    Ok(frobenius_to_rational(&pres).expect("chart-consistent points expand"))
}

/// The one-dimensional chart: weight λ at joint eigenvalue (λ1, λ2), i.e.
/// the series λ / ((1 − λ1 T1)(1 − λ2 T2)).
pub fn rec1_chart<T: Scalar>(l1: T, l2: T, l: T) -> RationalForm<T> {
    RationalForm::new(
        Poly2::monomial(0, 0, l),
        Poly::new(vec![T::one(), T::zero() - l1]),
        Poly::new(vec![T::one(), T::zero() - l2]),
    )
    .expect("denominators have constant term one")
}
