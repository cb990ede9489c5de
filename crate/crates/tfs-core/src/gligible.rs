//! Pairings, Gram matrices, and negligible vectors of an α-evaluation.
//!
//! Two states u, v : 0 → n pair to the α-value of the closed surface
//! obtained by composing u with the reflection of v. The rank of that
//! pairing on the skein basis is the state dimension at arity n; vectors
//! pairing to zero against everything are negligible.

use thiserror::Error;

use crate::cobordism::{Cobordism, FloatingSet};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::series::{evaluate_floating, RationalForm, SyntacticAlgebra};
use crate::skein::{reduce, skein_basis, skein_compose, SkeinBasisElement, SkeinError, SkeinVector};

/// How Gram entries are computed: by closing raw surfaces directly, or by
/// composing in skein coordinates first. Both must agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramPath {
    RawClosure,
    SkeinPairing,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GligibleError {
    #[error("trace requires an endomorphism, got {n} -> {m}")]
    NotEndomorphism { n: usize, m: usize },
    #[error("state multiplication expects vectors out of the empty object")]
    NotAState,
    #[error("arity {found} exceeds the configured cap {cap}")]
    CapExceeded { found: usize, cap: usize },
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

/// Gram matrix of the closure pairing on the skein basis of Hom(0, n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix<T: Scalar> {
    pub n: usize,
    pub basis: Vec<SkeinBasisElement>,
    pub matrix: Matrix<T>,
    pub rank: usize,
}

/// α-value of a floating set through the algebra (the zero algebra sends
/// everything, including the empty set, to zero).
fn eval_floating_via_alg<T: Scalar>(alg: &SyntacticAlgebra<T>, fl: &FloatingSet) -> T {
    if alg.is_zero_algebra() {
        return T::zero();
    }
    let mut out = T::one();
    for (fc, &mult) in fl {
        let v = alg.pair(&alg.monomial_vector(fc.ell, fc.genus));
        for _ in 0..mult {
            out *= v.clone();
        }
    }
    out
}

/// α-value of the closure of an endomorphism, evaluated through the algebra.
fn alpha_closed<T: Scalar>(alg: &SyntacticAlgebra<T>, x: &Cobordism) -> T {
    let fl = x.close_up().expect("endomorphism required for closure");
    eval_floating_via_alg(alg, &fl)
}

/// Trace of an endomorphism cobordism: close it up and evaluate the
/// resulting floating set in the series.
pub fn trace_alpha<T: Scalar>(z: &RationalForm<T>, x: &Cobordism) -> Result<T, GligibleError> {
    if x.n() != x.m() {
        return Err(GligibleError::NotEndomorphism { n: x.n(), m: x.m() });
    }
    let fl = x.close_up().expect("arity checked");
    Ok(evaluate_floating(z, &fl))
}

/// Linear extension of the trace to skein vectors.
pub fn trace_alpha_vector<T: Scalar>(
    z: &RationalForm<T>,
    v: &SkeinVector<T>,
) -> Result<T, GligibleError> {
    if v.n() != v.m() {
        return Err(GligibleError::NotEndomorphism { n: v.n(), m: v.m() });
    }
    let mut out = T::zero();
    for (elt, c) in v.terms() {
        let fl = elt.realize().close_up().expect("arity checked");
        out += c.clone() * evaluate_floating(z, &fl);
    }
    Ok(out)
}

/// Gram matrix of Hom(0, n) under the closure pairing, with cached rank.
pub fn gram<T: Scalar>(alg: &SyntacticAlgebra<T>, n: usize, path: GramPath) -> GramMatrix<T> {
    let basis = skein_basis(alg, 0, n);
    let k = basis.len();
    let realized: Vec<Cobordism> = basis.iter().map(|e| e.realize()).collect();
    let matrix = match path {
        GramPath::RawClosure => Matrix::from_fn(k, k, |i, j| {
            let closed = realized[j].reflect().compose(&realized[i]).expect("arities match");
            alpha_closed(alg, &closed)
        }),
        GramPath::SkeinPairing => {
            let columns: Vec<SkeinVector<T>> = realized
                .iter()
                .map(|r| reduce(alg, &[(T::one(), r.reflect())]).expect("nonempty"))
                .collect();
            let empty_elt = SkeinBasisElement { minimal: Cobordism::empty(), decoration: vec![] };
            Matrix::from_fn(k, k, |i, j| {
                let mut vi = SkeinVector::zero(alg, 0, n);
                vi.add_term(basis[i].clone(), T::one());
                let closed = skein_compose(alg, &vi, &columns[j]).expect("arities match");
                closed.coeff(&empty_elt)
            })
        }
    };
    let rank = matrix.rank();
    GramMatrix { n, basis, matrix, rank }
}

/// Rank of the closure pairing at arity n.
pub fn state_dim<T: Scalar>(alg: &SyntacticAlgebra<T>, n: usize, path: GramPath) -> usize {
    gram(alg, n, path).rank
}

/// State dimensions for arities 0 ..= max_n.
pub fn dim_series<T: Scalar>(
    alg: &SyntacticAlgebra<T>,
    max_n: usize,
    path: GramPath,
) -> Vec<usize> {
    (0..=max_n).map(|n| state_dim(alg, n, path)).collect()
}

/// A vector is negligible when it pairs to zero against every skein basis
/// element of the opposing hom space.
pub fn is_negligible<T: Scalar>(
    alg: &SyntacticAlgebra<T>,
    v: &SkeinVector<T>,
) -> Result<bool, GligibleError> {
    if v.is_zero() {
        return Ok(true);
    }
    let realized: Vec<(Cobordism, T)> =
        v.terms().map(|(e, c)| (e.realize(), c.clone())).collect();
    for w in skein_basis(alg, v.m(), v.n()) {
        let rw = w.realize();
        let mut t = T::zero();
        for (rx, c) in &realized {
            let endo = rw.compose(rx).expect("arities match");
            t += c.clone() * alpha_closed(alg, &endo);
        }
        if !t.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product of two states: tensor the realizations and reduce. Errors if the
/// combined arity exceeds the cap.
pub fn state_multiply<T: Scalar>(
    alg: &SyntacticAlgebra<T>,
    u: &SkeinVector<T>,
    v: &SkeinVector<T>,
    cap: usize,
) -> Result<SkeinVector<T>, GligibleError> {
    if u.n() != 0 || v.n() != 0 {
        return Err(GligibleError::NotAState);
    }
    let arity = u.m() + v.m();
    if arity > cap {
        return Err(GligibleError::CapExceeded { found: arity, cap });
    }
    let mut terms: Vec<(T, Cobordism)> = Vec::new();
    for (eu, cu) in u.terms() {
        let ru = eu.realize();
        for (ev, cv) in v.terms() {
            terms.push((cu.clone() * cv.clone(), ru.tensor(&ev.realize())));
        }
    }
    if terms.is_empty() {
        return Ok(SkeinVector::zero(alg, 0, arity));
    }
    reduce(alg, &terms).map_err(GligibleError::from)
}
