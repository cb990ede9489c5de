//! Helpers shared by the integration-test targets: the reference series
//! suite and a seeded generator of random well-typed morphism words.

#![allow(dead_code)]

use num::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tfs_core::cobordism::{Cobordism, GenKind};
use tfs_core::poly::{Poly, Poly2};
use tfs_core::series::RationalForm;
use tfs_core::Rat;

pub fn r(n: i64) -> Rat {
    BigRational::from_integer(n.into())
}

pub fn rq(n: i64, d: i64) -> Rat {
    BigRational::new(n.into(), d.into())
}

/// α_{ℓ,g} = 1 for all ℓ, g.
pub fn ones() -> RationalForm<Rat> {
    RationalForm::new(
        Poly2::monomial(0, 0, r(1)),
        Poly::new(vec![r(1), -r(1)]),
        Poly::new(vec![r(1), -r(1)]),
    )
    .unwrap()
}

/// α_{ℓ,g} = 5 · 2^ℓ · 3^g — a one-dimensional point with nonzero weight.
pub fn rec1() -> RationalForm<Rat> {
    RationalForm::new(
        Poly2::monomial(0, 0, r(5)),
        Poly::new(vec![r(1), -r(2)]),
        Poly::new(vec![r(1), -r(3)]),
    )
    .unwrap()
}

/// The polynomial series T2: α_{0,1} = 1 and every other coefficient 0.
pub fn t2() -> RationalForm<Rat> {
    RationalForm::polynomial(Poly2::monomial(0, 1, r(1)))
}

/// (1 + T1·T2) / ((1 − T1²)(1 − T2)): three-dimensional syntactic algebra.
pub fn fourth() -> RationalForm<Rat> {
    let mut p = Poly2::monomial(0, 0, r(1));
    p.add_term(1, 1, r(1));
    RationalForm::new(p, Poly::new(vec![r(1), r(0), -r(1)]), Poly::new(vec![r(1), -r(1)])).unwrap()
}

pub fn suite() -> Vec<(&'static str, RationalForm<Rat>)> {
    vec![("ones", ones()), ("rec1", rec1()), ("t2", t2()), ("fourth", fourth())]
}

/// One horizontal slice of a stacked word: a tensor product of generators.
#[derive(Clone, Debug)]
pub struct Layer {
    pub tiles: Vec<GenKind>,
}

fn arities(kind: &GenKind) -> (usize, usize) {
    match kind {
        GenKind::Iota => (0, 1),
        GenKind::Eps => (1, 0),
        GenKind::Mu => (2, 1),
        GenKind::Delta => (1, 2),
        GenKind::Perm => (2, 2),
        GenKind::B1 | GenKind::B2 | GenKind::B3 => (1, 1),
        GenKind::Id(n) => (*n, *n),
        GenKind::S { .. } => (0, 0),
    }
}

fn tile_word(kind: &GenKind) -> String {
    match kind {
        GenKind::Iota => "iota".into(),
        GenKind::Eps => "eps".into(),
        GenKind::Mu => "mu".into(),
        GenKind::Delta => "delta".into(),
        GenKind::Perm => "perm".into(),
        GenKind::B1 => "b1".into(),
        GenKind::B2 => "b2".into(),
        GenKind::B3 => "b3".into(),
        GenKind::Id(n) => format!("id({n})"),
        GenKind::S { ell, genus } => format!("S({ell},{genus})"),
    }
}

impl Layer {
    pub fn src(&self) -> usize {
        self.tiles.iter().map(|t| arities(t).0).sum()
    }

    pub fn tgt(&self) -> usize {
        self.tiles.iter().map(|t| arities(t).1).sum()
    }

    pub fn cobordism(&self) -> Cobordism {
        self.tiles
            .iter()
            .fold(Cobordism::empty(), |acc, t| acc.tensor(&Cobordism::generator(t.clone())))
    }

    pub fn word(&self) -> String {
        if self.tiles.is_empty() {
            "id(0)".into()
        } else {
            self.tiles.iter().map(tile_word).collect::<Vec<_>>().join(" @ ")
        }
    }
}

/// Tile one layer left to right so its source arity is exactly `src`.
pub fn random_layer(rng: &mut ChaCha8Rng, src: usize) -> Layer {
    let mut tiles = Vec::new();
    let mut remaining = src;
    while remaining > 0 {
        if rng.random_ratio(1, 8) {
            tiles.push(GenKind::Iota);
        }
        let kind = if remaining >= 2 && rng.random_ratio(2, 5) {
            if rng.random_bool(0.5) {
                GenKind::Perm
            } else {
                GenKind::Mu
            }
        } else {
            match rng.random_range(0..6u8) {
                0 => GenKind::Id(1),
                1 => GenKind::B1,
                2 => GenKind::B2,
                3 => GenKind::B3,
                4 => GenKind::Delta,
                _ => GenKind::Eps,
            }
        };
        remaining -= arities(&kind).0;
        tiles.push(kind);
    }
    if rng.random_ratio(1, 8) || tiles.is_empty() {
        tiles.push(GenKind::Iota);
    }
    Layer { tiles }
}

/// A stack of `depth` layers whose arities chain up, starting at `src`.
pub fn random_stack(rng: &mut ChaCha8Rng, src: usize, depth: usize) -> Vec<Layer> {
    let mut layers = Vec::with_capacity(depth);
    let mut arity = src;
    for _ in 0..depth {
        let layer = random_layer(rng, arity);
        arity = layer.tgt();
        layers.push(layer);
    }
    layers
}

/// Compose a stack bottom-to-top; the empty stack is the identity.
pub fn stack_cobordism(src: usize, layers: &[Layer]) -> Cobordism {
    layers.iter().fold(Cobordism::identity(src), |acc, layer| {
        layer.cobordism().compose(&acc).expect("stacked layers chain by construction")
    })
}

/// Random morphism with source arity `src` and whatever target the walk ends at.
pub fn random_morphism(rng: &mut ChaCha8Rng, src: usize, depth: usize) -> Cobordism {
    stack_cobordism(src, &random_stack(rng, src, depth))
}

/// The same stack as a DSL word with an arbitrary composition bracketing.
pub fn stack_word(rng: &mut ChaCha8Rng, layers: &[Layer]) -> String {
    fn bracket(rng: &mut ChaCha8Rng, words: &[String]) -> String {
        match words.len() {
            0 => "id(0)".into(),
            1 => words[0].clone(),
            n => {
                let cut = rng.random_range(1..n);
                format!(
                    "({}) ; ({})",
                    bracket(rng, &words[..cut]),
                    bracket(rng, &words[cut..])
                )
            }
        }
    }
    let words: Vec<String> = layers.iter().map(Layer::word).collect();
    bracket(rng, &words)
}
