//! Dense univariate and sparse bivariate polynomials over an exact scalar.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::scalar::Scalar;

/// Univariate polynomial, coefficient of x^i at index i, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// x^n * p(1/x): the coefficient list reversed relative to degree n,
    /// trailing zeros of the result dropped. Requires deg p <= n.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.is_zero() || self.degree() <= n, "reversal degree too small");
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(coeffs)
    }

    /// First `order` coefficients of 1/p; requires p(0) != 0.
    pub fn inverse_series(&self, order: usize) -> Vec<T> {
        let c0 = self.coeff(0);
        assert!(!c0.is_zero(), "inverse of a series with zero constant term");
        let mut out: Vec<T> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = if k == 0 { T::one() } else { T::zero() };
            for i in 1..=k.min(self.degree()) {
                acc -= self.coeff(i) * out[k - i].clone();
            }
            out.push(acc / c0.clone());
        }
        out
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Bivariate polynomial in (T1, T2), sparse over exponent pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly2<T> {
    terms: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> Poly2<T> {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, T::one())
    }

    pub fn monomial(i: usize, j: usize, c: T) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Poly2 { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((usize, usize), T)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(T::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max T1-exponent (0 for the zero polynomial).
    pub fn deg1(&self) -> usize {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Max T2-exponent (0 for the zero polynomial).
    pub fn deg2(&self) -> usize {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, v)| (k, v.clone() * c.clone())))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Embed a univariate polynomial as a polynomial in T1.
    pub fn from_t1(p: &Poly<T>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i, 0), c.clone())))
    }

    /// Embed a univariate polynomial as a polynomial in T2.
    pub fn from_t2(p: &Poly<T>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(j, c)| ((0, j), c.clone())))
    }

    /// Restriction to T1 = 0, as a univariate polynomial in T2.
    pub fn subst_t1_zero(&self) -> Poly<T> {
        let mut coeffs = vec![T::zero(); self.deg2() + 1];
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                coeffs[j] = c.clone();
            }
        }
        Poly::new(coeffs)
    }

    /// Exact division by T1; None if some term has no T1 factor.
    pub fn div_exact_t1(&self) -> Option<Self> {
        if self.terms.keys().any(|&(i, _)| i == 0) {
            return None;
        }
        Some(Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((i - 1, j), c.clone()))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn poly_basics() {
        let p = Poly::new(vec![q(1), q(0), q(3), q(0)]);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.coeff(3), q(0));
        assert_eq!(p.eval(&q(2)), q(13));
        let r = p.reversed(3);
        assert_eq!(r.coeffs(), &[q(0), q(3), q(0), q(1)]);
        assert!(Poly::<Rat>::zero().is_zero());
    }

    #[test]
    fn inverse_series_geometric() {
        // 1/(1 - x) = 1 + x + x^2 + ...
        let p = Poly::new(vec![q(1), q(-1)]);
        assert_eq!(p.inverse_series(4), vec![q(1), q(1), q(1), q(1)]);
        // 1/(1 - x)^2 has coefficients k+1.
        let sq = &p * &p;
        assert_eq!(sq.inverse_series(4), vec![q(1), q(2), q(3), q(4)]);
    }

    #[test]
    fn poly2_ops() {
        let a = Poly2::from_terms([((0, 0), q(1)), ((1, 1), q(1))]);
        let b = Poly2::from_terms([((0, 0), q(1)), ((1, 1), q(-1))]);
        let prod = a.mul(&b);
        assert_eq!(prod.coeff(1, 1), q(0));
        assert_eq!(prod.coeff(2, 2), q(-1));
        assert_eq!(prod.deg1(), 2);
        let diff = a.sub(&a);
        assert!(diff.is_zero());
        let shifted = Poly2::from_terms([((1, 0), q(2)), ((2, 3), q(5))]);
        let div = shifted.div_exact_t1().unwrap();
        assert_eq!(div.coeff(0, 0), q(2));
        assert_eq!(div.coeff(1, 3), q(5));
        assert!(a.div_exact_t1().is_none());
    }
}
