//! Skein bases of hom spaces under an α-evaluation.
//!
//! Every morphism splits into a minimal cobordism (no holes, no genus, no
//! floating part) decorated per component with a (holes, genus) exponent
//! pair. Modulo the evaluation's syntactic ideal, decorations reduce to the
//! algebra's monomial basis, so the decorated minimal cobordisms with
//! basis-exponent decorations span the hom space; this module enumerates
//! them and rewrites arbitrary linear combinations in those coordinates.

use std::collections::BTreeMap;

use itertools::Itertools;
use thiserror::Error;

use crate::cobordism::{Cobordism, FloatingSet, Token, ViewableComponent};
use crate::scalar::Scalar;
use crate::series::SyntacticAlgebra;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("arity mismatch: cannot feed {found} intervals into {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("vectors belong to different algebras")]
    AlgebraMismatch,
    #[error("terms must share source and target arities")]
    MixedArities,
    #[error("cannot reduce an empty term list (ambient arities unknown)")]
    EmptyInput,
}

/// A minimal cobordism with one algebra-basis exponent pair per viewable
/// component (in the component order of the canonical form).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SkeinBasisElement {
    pub minimal: Cobordism,
    pub decoration: Vec<(usize, usize)>,
}

impl SkeinBasisElement {
    /// The decorated cobordism this element stands for.
    pub fn realize(&self) -> Cobordism {
        self.minimal.with_decorations(&self.decoration)
    }
}

/// Sparse vector over the skein basis of Hom(n, m), tagged with the
/// algebra's monomial basis so cross-algebra mixups are detectable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkeinVector<T: Scalar> {
    n: usize,
    m: usize,
    algebra_basis: Vec<(usize, usize)>,
    terms: BTreeMap<SkeinBasisElement, T>,
}

impl<T: Scalar> SkeinVector<T> {
    pub fn zero(alg: &SyntacticAlgebra<T>, n: usize, m: usize) -> Self {
        SkeinVector { n, m, algebra_basis: alg.basis.clone(), terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkeinBasisElement, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, elt: &SkeinBasisElement) -> T {
        self.terms.get(elt).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, elt: SkeinBasisElement, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(elt);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return SkeinVector { n: self.n, m: self.m, algebra_basis: self.algebra_basis.clone(), terms: BTreeMap::new() };
        }
        SkeinVector {
            n: self.n,
            m: self.m,
            algebra_basis: self.algebra_basis.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), c.clone() * v.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SkeinError> {
        if self.n != other.n || self.m != other.m {
            return Err(SkeinError::MixedArities);
        }
        if self.algebra_basis != other.algebra_basis {
            return Err(SkeinError::AlgebraMismatch);
        }
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SkeinError> {
        self.add(&other.scale(&(T::zero() - T::one())))
    }

    pub(crate) fn same_algebra(&self, alg: &SyntacticAlgebra<T>) -> bool {
        self.algebra_basis == alg.basis
    }
}

/// All minimal cobordisms n → m: a set partition of the n + m tokens into
/// components, with each component carrying a permutation of its tokens
/// (its cycles are the boundary circles). Ordered by component count, then
/// canonical form.
pub fn enumerate_minimal(n: usize, m: usize) -> Vec<Cobordism> {
    let tokens: Vec<Token> =
        (1..=n).map(Token::bot).chain((1..=m).map(Token::top)).collect();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<Token>> = Vec::new();
    partition_rec(&tokens, 0, &mut blocks, &mut |blocks| {
        // Per block, all cycle structures = all permutations of the block.
        let per_block: Vec<Vec<Vec<Vec<Token>>>> =
            blocks.iter().map(|b| block_cycle_structures(b)).collect();
        for choice in cartesian_choices(&per_block) {
            let viewable: Vec<ViewableComponent> = choice
                .iter()
                .map(|cycles| ViewableComponent { genus: 0, holes: 0, cycles: (*cycles).clone() })
                .collect();
            out.push(
                Cobordism::new(n, m, viewable, FloatingSet::new())
                    .expect("enumerated partition data is well-formed"),
            );
        }
    });
    out.sort_by(|a, b| (a.viewable().len(), a).cmp(&(b.viewable().len(), b)));
    out
}

/// Cartesian product of the option lists; an empty list of lists yields one
/// empty choice (the unit), not zero choices.
fn cartesian_choices<X>(options: &[Vec<X>]) -> Vec<Vec<&X>> {
    let mut acc: Vec<Vec<&X>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for opt in opts {
                let mut row = prefix.clone();
                row.push(opt);
                next.push(row);
            }
        }
        acc = next;
    }
    acc
}

fn partition_rec(
    tokens: &[Token],
    idx: usize,
    blocks: &mut Vec<Vec<Token>>,
    emit: &mut impl FnMut(&[Vec<Token>]),
) {
    if idx == tokens.len() {
        emit(blocks);
        return;
    }
    let t = tokens[idx];
    for b in 0..blocks.len() {
        blocks[b].push(t);
        partition_rec(tokens, idx + 1, blocks, emit);
        blocks[b].pop();
    }
    blocks.push(vec![t]);
    partition_rec(tokens, idx + 1, blocks, emit);
    blocks.pop();
}

/// All cycle decompositions of a block: one per permutation of its tokens.
fn block_cycle_structures(block: &[Token]) -> Vec<Vec<Vec<Token>>> {
    let k = block.len();
    let mut out = Vec::new();
    for perm in (0..k).permutations(k) {
        // perm as a function position -> position; read off its cycles.
        let mut seen = vec![false; k];
        let mut cycles: Vec<Vec<Token>> = Vec::new();
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(block[cur]);
                cur = perm[cur];
            }
            cycles.push(cycle);
        }
        out.push(cycles);
    }
    out
}

/// Σ over minimal cobordisms of d^(number of components).
pub fn skein_dim<T: Scalar>(alg: &SyntacticAlgebra<T>, n: usize, m: usize) -> usize {
    enumerate_minimal(n, m)
        .iter()
        .map(|y| alg.d.pow(y.viewable().len() as u32))
        .sum()
}

/// The full skein basis of Hom(n, m): minimal cobordisms in enumeration
/// order, each with every choice of algebra-basis decoration per component
/// (decorations in lexicographic order over the algebra basis indices).
pub fn skein_basis<T: Scalar>(alg: &SyntacticAlgebra<T>, n: usize, m: usize) -> Vec<SkeinBasisElement> {
    let mut out = Vec::new();
    for minimal in enumerate_minimal(n, m) {
        let c = minimal.viewable().len();
        let mut stack = vec![Vec::new()];
        for _ in 0..c {
            let mut next = Vec::with_capacity(stack.len() * alg.d);
            for prefix in &stack {
                for &b in &alg.basis {
                    let mut row: Vec<(usize, usize)> = prefix.clone();
                    row.push(b);
                    next.push(row);
                }
            }
            stack = next;
        }
        for decoration in stack {
            out.push(SkeinBasisElement { minimal: minimal.clone(), decoration });
        }
    }
    out
}

/// Rewrite a linear combination of raw cobordisms in skein coordinates:
/// floating parts fold into the coefficient, each component's (holes,
/// genus) monomial expands through the algebra's normal form, and the
/// expansions distribute multilinearly over the components.
pub fn reduce<T: Scalar>(
    alg: &SyntacticAlgebra<T>,
    terms: &[(T, Cobordism)],
) -> Result<SkeinVector<T>, SkeinError> {
    let (n, m) = match terms.first() {
        Some((_, c)) => (c.n(), c.m()),
        None => return Err(SkeinError::EmptyInput),
    };
    let mut out = SkeinVector::zero(alg, n, m);
    for (c, x) in terms {
        if x.n() != n || x.m() != m {
            return Err(SkeinError::MixedArities);
        }
        if alg.d == 0 {
            continue; // the zero algebra annihilates every morphism
        }
        let (minimal, exps, floating) = x.split_minimal();
        let mut coeff = c.clone();
        for (fc, &mult) in &floating {
            let v = alg.pair(&alg.monomial_vector(fc.ell, fc.genus));
            for _ in 0..mult {
                coeff *= v.clone();
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let expansions: Vec<Vec<T>> =
            exps.iter().map(|&(h, g)| alg.monomial_vector(h, g)).collect();
        distribute(alg, &minimal, &expansions, coeff, &mut out);
    }
    Ok(out)
}

fn distribute<T: Scalar>(
    alg: &SyntacticAlgebra<T>,
    minimal: &Cobordism,
    expansions: &[Vec<T>],
    coeff: T,
    out: &mut SkeinVector<T>,
) {
    let c = expansions.len();
    let mut choice = vec![0usize; c];
    loop {
        let mut factor = coeff.clone();
        for (comp, &s) in choice.iter().enumerate() {
            factor *= expansions[comp][s].clone();
        }
        if !factor.is_zero() {
            let decoration: Vec<(usize, usize)> = choice.iter().map(|&s| alg.basis[s]).collect();
            out.add_term(SkeinBasisElement { minimal: minimal.clone(), decoration }, factor);
        }
        // next multi-index
        let mut i = 0;
        loop {
            if i == c {
                return;
            }
            choice[i] += 1;
            if choice[i] < alg.d {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Bilinear composition in skein coordinates: realize, compose, reduce.
/// `v` feeds into `w` (the result is w ∘ v).
pub fn skein_compose<T: Scalar>(
    alg: &SyntacticAlgebra<T>,
    v: &SkeinVector<T>,
    w: &SkeinVector<T>,
) -> Result<SkeinVector<T>, SkeinError> {
    if !v.same_algebra(alg) || !w.same_algebra(alg) {
        return Err(SkeinError::AlgebraMismatch);
    }
    if v.m() != w.n() {
        return Err(SkeinError::ArityMismatch { expected: w.n(), found: v.m() });
    }
    let mut terms: Vec<(T, Cobordism)> = Vec::new();
    for (ev, cv) in v.terms() {
        let rv = ev.realize();
        for (ew, cw) in w.terms() {
            let composed = ew.realize().compose(&rv).expect("arities checked");
            terms.push((cv.clone() * cw.clone(), composed));
        }
    }
    if terms.is_empty() {
        return Ok(SkeinVector::zero(alg, v.n(), w.m()));
    }
    reduce(alg, &terms)
}
