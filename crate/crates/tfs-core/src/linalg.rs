//! Dense exact matrices: fraction-free rank/determinant, linear solving,
//! characteristic and minimal polynomials, incremental span tracking.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Rows must be nonempty and of equal length; a 0xN matrix needs `zeros`.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == nc), "ragged rows");
        Matrix { rows: nr, cols: nc, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc += self[(r, k)].clone() * other[(k, c)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc += self[(r, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rank by fraction-free (Bareiss) elimination; exact, no tolerances.
    pub fn rank(&self) -> usize {
        self.clone().fraction_free_elim().0
    }

    /// Determinant by fraction-free elimination. Panics on non-square input.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let (rank, sign, last) = {
            let (r, s, l) = self.clone().fraction_free_elim_full();
            (r, s, l)
        };
        if rank < n {
            T::zero()
        } else if sign {
            -last
        } else {
            last
        }
    }

    fn fraction_free_elim(self) -> (usize, T) {
        let (rank, sign, last) = self.fraction_free_elim_full();
        (rank, if sign { -last } else { last })
    }

    /// One-step Bareiss with row pivoting and column skipping.
    /// Returns (rank, sign flag, final pivot).
    fn fraction_free_elim_full(mut self) -> (usize, bool, T) {
        let mut rank = 0usize;
        let mut sign = false;
        let mut prev = T::one();
        let mut last = T::one();
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !self[(r, c)].is_zero()) else {
                continue;
            };
            if p != rank {
                self.swap_rows(p, rank);
                sign = !sign;
            }
            let pivot = self[(rank, c)].clone();
            for i in rank + 1..self.rows {
                let lead = std::mem::replace(&mut self[(i, c)], T::zero());
                for j in c + 1..self.cols {
                    let v = (pivot.clone() * self[(i, j)].clone() - lead.clone() * self[(rank, j)].clone())
                        / prev.clone();
                    self[(i, j)] = v;
                }
            }
            prev = pivot.clone();
            last = pivot;
            rank += 1;
        }
        (rank, sign, last)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// A particular solution X of `self * X = rhs` (free variables zero),
    /// or None if the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix<T>) -> Option<Matrix<T>> {
        assert_eq!(self.rows, rhs.rows, "dimension mismatch in solve");
        let n = self.rows;
        let un = self.cols;
        let k = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..un {
            let Some(p) = (r..n).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            b.swap_rows(p, r);
            let inv = T::one() / a[(r, c)].clone();
            for j in c..un {
                let v = a[(r, j)].clone() * inv.clone();
                a[(r, j)] = v;
            }
            for j in 0..k {
                let v = b[(r, j)].clone() * inv.clone();
                b[(r, j)] = v;
            }
            for i in 0..n {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..un {
                        let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                        a[(i, j)] = v;
                    }
                    for j in 0..k {
                        let v = b[(i, j)].clone() - f.clone() * b[(r, j)].clone();
                        b[(i, j)] = v;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        for i in r..n {
            if (0..k).any(|j| !b[(i, j)].is_zero()) {
                return None;
            }
        }
        let mut x = Matrix::zeros(un, k);
        for (row, &c) in pivot_cols.iter().enumerate() {
            for j in 0..k {
                x[(c, j)] = b[(row, j)].clone();
            }
        }
        Some(x)
    }

    /// Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier
    /// recurrence; exact because the base field has characteristic zero.
    pub fn charpoly(&self) -> Poly<T> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = self.clone();
        for k in 1..=n {
            let tr = m.trace();
            let ck = -(tr / T::from_usize(k).expect("small integer embeds"));
            coeffs[n - k] = ck.clone();
            if k < n {
                for i in 0..n {
                    m[(i, i)] += ck.clone();
                }
                m = self.mul(&m);
            }
        }
        Poly::new(coeffs)
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc += self[(i, i)].clone();
        }
        acc
    }

    /// Minimal polynomial: first monic dependency among I, A, A^2, ...
    pub fn minpoly(&self) -> Poly<T> {
        assert!(self.is_square(), "minpoly of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut span = LinearSpan::new(n * n);
        let mut power = Self::identity(n);
        for _ in 0..=n {
            match span.insert(power.data.clone()) {
                Ok(_) => power = self.mul(&power),
                Err(combo) => {
                    let deg = combo.len();
                    let mut coeffs = vec![T::zero(); deg + 1];
                    for (i, c) in combo.into_iter().enumerate() {
                        coeffs[i] = -c;
                    }
                    coeffs[deg] = T::one();
                    return Poly::new(coeffs);
                }
            }
        }
        unreachable!("powers of an n x n matrix are dependent by degree n")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Row space under construction: insertion either extends the span or
/// reports the new vector as an exact combination of the vectors inserted
/// so far.
pub struct LinearSpan<T> {
    dim: usize,
    inserted: usize,
    /// Echelon rows, each normalized to a unit pivot, with the expression of
    /// the row in terms of the inserted vectors.
    rows: Vec<(usize, Vec<T>, Vec<T>)>,
}

impl<T: Scalar> LinearSpan<T> {
    pub fn new(dim: usize) -> Self {
        LinearSpan { dim, inserted: 0, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Ok(rank index) if `v` is new direction; Err(c) with v = sum c_i * w_i
    /// over previously inserted w_i otherwise.
    pub fn insert(&mut self, mut v: Vec<T>) -> Result<usize, Vec<T>> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut expr = vec![T::zero(); self.inserted + 1];
        expr[self.inserted] = T::one();
        self.inserted += 1;
        for (piv, row, rexpr) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut v[*piv], T::zero());
            for j in *piv + 1..self.dim {
                if !row[j].is_zero() {
                    let d = f.clone() * row[j].clone();
                    v[j] -= d;
                }
            }
            for (j, c) in rexpr.iter().enumerate() {
                if !c.is_zero() {
                    let d = f.clone() * c.clone();
                    expr[j] -= d;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => {
                // v = sum expr_i * inserted_i with expr[last] = 1.
                expr.pop();
                Err(expr.into_iter().map(|c| -c).collect())
            }
            Some(piv) => {
                let inv = T::one() / v[piv].clone();
                for x in v.iter_mut() {
                    *x = x.clone() * inv.clone();
                }
                for c in expr.iter_mut() {
                    *c = c.clone() * inv.clone();
                }
                let mut padded = expr;
                padded.resize(self.inserted, T::zero());
                self.rows.push((piv, v, padded));
                Ok(self.rows.len() - 1)
            }
        }
    }
}
