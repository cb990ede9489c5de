//! JSON wire formats. All scalars travel as exact rational strings
//! ("num/den", or "num" for integers); exponents are plain integers but
//! quoted digits are tolerated on input.

use std::str::FromStr;

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cobordism::{
    Cobordism, CobordismError, FloatingComponent, FloatingSet, Token, ViewableComponent,
};
use crate::hilbert::HilbertPoint;
use crate::linalg::Matrix;
use crate::poly::{Poly, Poly2};
use crate::series::{CoeffTable, RationalForm, SeriesError, SyntacticAlgebra};
use crate::skein::{reduce, SkeinError, SkeinVector};
use crate::Rat;

#[derive(Error, Debug)]
pub enum JsonError {
    #[error("cannot parse rational value {0:?}")]
    BadRational(String),
    #[error("cannot parse exponent {0:?}")]
    BadExponent(String),
    #[error("cannot parse boundary token {0:?}")]
    BadToken(String),
    #[error(transparent)]
    Cobordism(#[from] CobordismError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error("matrix rows are ragged")]
    RaggedMatrix,
    #[error("field {0:?} is inconsistent with the declared dimensions")]
    DimensionMismatch(&'static str),
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
}

pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn rat_from_str(s: &str) -> Result<Rat, JsonError> {
    let bad = || JsonError::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Exponent that accepts both `3` and `"3"` on input; serialized as a bare
/// integer.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
pub enum Nat {
    Int(usize),
    Str(String),
}

impl Nat {
    pub fn value(&self) -> Result<usize, JsonError> {
        match self {
            Nat::Int(k) => Ok(*k),
            Nat::Str(s) => s.trim().parse().map_err(|_| JsonError::BadExponent(s.clone())),
        }
    }
}

// ---------------------------------------------------------------------------
// cobordisms

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ViewableDto {
    pub genus: usize,
    pub holes: usize,
    pub cycles: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct FloatingDto {
    pub ell: usize,
    pub genus: usize,
    pub mult: usize,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct CobordismDto {
    pub n: usize,
    pub m: usize,
    #[serde(default)]
    pub viewable: Vec<ViewableDto>,
    #[serde(default)]
    pub floating: Vec<FloatingDto>,
}

pub fn cobordism_to_dto(c: &Cobordism) -> CobordismDto {
    CobordismDto {
        n: c.n(),
        m: c.m(),
        viewable: c
            .viewable()
            .iter()
            .map(|v| ViewableDto {
                genus: v.genus,
                holes: v.holes,
                cycles: v
                    .cycles
                    .iter()
                    .map(|cy| cy.iter().map(Token::to_string).collect())
                    .collect(),
            })
            .collect(),
        floating: c
            .floating()
            .iter()
            .map(|(fc, &mult)| FloatingDto { ell: fc.ell, genus: fc.genus, mult })
            .collect(),
    }
}

pub fn cobordism_from_dto(d: &CobordismDto) -> Result<Cobordism, JsonError> {
    let mut viewable = Vec::new();
    for v in &d.viewable {
        let mut cycles = Vec::new();
        for cy in &v.cycles {
            let mut cycle = Vec::new();
            for s in cy {
                cycle.push(Token::from_str(s).map_err(|_| JsonError::BadToken(s.clone()))?);
            }
            cycles.push(cycle);
        }
        viewable.push(ViewableComponent { genus: v.genus, holes: v.holes, cycles });
    }
    let mut floating = FloatingSet::new();
    for f in &d.floating {
        if f.mult > 0 {
            *floating.entry(FloatingComponent { ell: f.ell, genus: f.genus }).or_insert(0) +=
                f.mult;
        }
    }
    Ok(Cobordism::new(d.n, d.m, viewable, floating)?)
}

// ---------------------------------------------------------------------------
// series and tables

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SeriesDto {
    #[serde(rename = "P", default)]
    pub p: Vec<(Nat, Nat, String)>,
    #[serde(rename = "Q1", default)]
    pub q1: Vec<(Nat, String)>,
    #[serde(rename = "Q2", default)]
    pub q2: Vec<(Nat, String)>,
}

fn poly_to_pairs(p: &Poly<Rat>) -> Vec<(Nat, String)> {
    p.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (Nat::Int(k), rat_to_string(c)))
        .collect()
}

/// An absent or empty denominator list means the constant polynomial 1.
fn pairs_to_poly(pairs: &[(Nat, String)]) -> Result<Poly<Rat>, JsonError> {
    if pairs.is_empty() {
        return Ok(Poly::one());
    }
    let mut coeffs: Vec<Rat> = Vec::new();
    for (k, c) in pairs {
        let k = k.value()?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rat::zero());
        }
        let v = rat_from_str(c)?;
        coeffs[k] = coeffs[k].clone() + v;
    }
    Ok(Poly::new(coeffs))
}

pub fn series_to_dto(z: &RationalForm<Rat>) -> SeriesDto {
    SeriesDto {
        p: z
            .p()
            .terms()
            .map(|(&(i, j), c)| (Nat::Int(i), Nat::Int(j), rat_to_string(c)))
            .collect(),
        q1: poly_to_pairs(z.q1()),
        q2: poly_to_pairs(z.q2()),
    }
}

pub fn series_from_dto(d: &SeriesDto) -> Result<RationalForm<Rat>, JsonError> {
    let mut p = Poly2::zero();
    for (i, j, c) in &d.p {
        p.add_term(i.value()?, j.value()?, rat_from_str(c)?);
    }
    Ok(RationalForm::new(p, pairs_to_poly(&d.q1)?, pairs_to_poly(&d.q2)?)?)
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TableDto {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "G")]
    pub g: usize,
    pub rows: Vec<Vec<String>>,
}

pub fn table_to_dto(t: &CoeffTable<Rat>) -> TableDto {
    TableDto {
        l: t.ell_max(),
        g: t.g_max(),
        rows: t.rows().iter().map(|row| row.iter().map(rat_to_string).collect()).collect(),
    }
}

pub fn table_from_dto(d: &TableDto) -> Result<CoeffTable<Rat>, JsonError> {
    if d.rows.len() != d.l + 1 || d.rows.iter().any(|row| row.len() != d.g + 1) {
        return Err(JsonError::DimensionMismatch("rows"));
    }
    let mut rows = Vec::with_capacity(d.rows.len());
    for row in &d.rows {
        let mut out = Vec::with_capacity(row.len());
        for s in row {
            out.push(rat_from_str(s)?);
        }
        rows.push(out);
    }
    Ok(CoeffTable::from_rows(rows)?)
}

// ---------------------------------------------------------------------------
// matrices and vectors of rationals

pub fn matrix_to_rows(m: &Matrix<Rat>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(rat_to_string).collect()).collect()
}

pub fn matrix_from_rows(rows: &[Vec<String>]) -> Result<Matrix<Rat>, JsonError> {
    let nc = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != nc) {
        return Err(JsonError::RaggedMatrix);
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(nc);
        for s in row {
            out.push(rat_from_str(s)?);
        }
        parsed.push(out);
    }
    Ok(Matrix::from_rows(parsed))
}

pub fn rationals_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

pub fn rationals_from_strings(v: &[String]) -> Result<Vec<Rat>, JsonError> {
    v.iter().map(|s| rat_from_str(s)).collect()
}

// ---------------------------------------------------------------------------
// skein vectors

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SkeinTermDto {
    pub minimal: CobordismDto,
    pub decoration: Vec<(usize, usize)>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct SkeinVectorDto {
    pub n: usize,
    pub m: usize,
    pub terms: Vec<SkeinTermDto>,
}

pub fn skein_vector_to_dto(v: &SkeinVector<Rat>) -> SkeinVectorDto {
    SkeinVectorDto {
        n: v.n(),
        m: v.m(),
        terms: v
            .terms()
            .map(|(elt, c)| SkeinTermDto {
                minimal: cobordism_to_dto(&elt.minimal),
                decoration: elt.decoration.clone(),
                coeff: rat_to_string(c),
            })
            .collect(),
    }
}

/// Rebuild a vector by realizing each term and reducing it in the given
/// algebra; terms that are not already in basis form are normalized.
pub fn skein_vector_from_dto(
    alg: &SyntacticAlgebra<Rat>,
    d: &SkeinVectorDto,
) -> Result<SkeinVector<Rat>, JsonError> {
    let mut out = SkeinVector::zero(alg, d.n, d.m);
    for term in &d.terms {
        let minimal = cobordism_from_dto(&term.minimal)?;
        if minimal.n() != d.n || minimal.m() != d.m {
            return Err(JsonError::DimensionMismatch("terms"));
        }
        if term.decoration.len() != minimal.viewable().len() {
            return Err(JsonError::DimensionMismatch("decoration"));
        }
        let realized = minimal.with_decorations(&term.decoration);
        let reduced = reduce(alg, &[(rat_from_str(&term.coeff)?, realized)])?;
        out = out.add(&reduced)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// chart points and algebras

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct HilbertPointDto {
    pub k: usize,
    pub basis: Vec<(Nat, Nat)>,
    #[serde(rename = "N1")]
    pub n1: Vec<Vec<String>>,
    #[serde(rename = "N2")]
    pub n2: Vec<Vec<String>>,
    pub a: Vec<String>,
}

pub fn point_to_dto(p: &HilbertPoint<Rat>) -> HilbertPointDto {
    HilbertPointDto {
        k: p.k(),
        basis: p.basis.iter().map(|&(i, j)| (Nat::Int(i), Nat::Int(j))).collect(),
        n1: matrix_to_rows(&p.n1),
        n2: matrix_to_rows(&p.n2),
        a: rationals_to_strings(&p.a),
    }
}

pub fn point_from_dto(d: &HilbertPointDto) -> Result<HilbertPoint<Rat>, JsonError> {
    if d.basis.len() != d.k {
        return Err(JsonError::DimensionMismatch("basis"));
    }
    let mut basis = Vec::with_capacity(d.k);
    for (i, j) in &d.basis {
        basis.push((i.value()?, j.value()?));
    }
    Ok(HilbertPoint {
        basis,
        n1: matrix_from_rows(&d.n1)?,
        n2: matrix_from_rows(&d.n2)?,
        a: rationals_from_strings(&d.a)?,
    })
}

/// Serialized view of a syntactic algebra (output only): dimension, basis
/// exponents, the minimal polynomials as dense coefficient lists, and the
/// multiplication matrices with the evaluation row.
#[derive(Serialize, Clone, Debug)]
pub struct AlgebraDto {
    pub d: usize,
    pub basis: Vec<(usize, usize)>,
    pub q1: Vec<String>,
    pub q2: Vec<String>,
    #[serde(rename = "M1")]
    pub m1: Vec<Vec<String>>,
    #[serde(rename = "M2")]
    pub m2: Vec<Vec<String>>,
    pub alphavec: Vec<String>,
}

pub fn algebra_to_dto(alg: &SyntacticAlgebra<Rat>) -> AlgebraDto {
    AlgebraDto {
        d: alg.d,
        basis: alg.basis.clone(),
        q1: alg.q1.coeffs().iter().map(rat_to_string).collect(),
        q2: alg.q2.coeffs().iter().map(rat_to_string).collect(),
        m1: matrix_to_rows(&alg.m1),
        m2: matrix_to_rows(&alg.m2),
        alphavec: rationals_to_strings(&alg.alphavec),
    }
}
