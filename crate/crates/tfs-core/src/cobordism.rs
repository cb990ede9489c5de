//! Thin flat surfaces as classification data.
//!
//! A morphism from n intervals to m intervals is stored up to
//! boundary-fixing diffeomorphism: a list of viewable components (each with
//! genus, number of token-free boundary circles, and the cyclic order of
//! boundary tokens on the remaining circles) plus a multiset of floating
//! components classified by (ell, genus), where ell + 1 is the number of
//! boundary circles. Constructors canonicalize, so `==` decides equality of
//! morphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Side {
    Bot,
    Top,
}

/// One horizontal boundary interval: `B3` is the third bottom interval.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Token {
    pub side: Side,
    pub index: usize,
}

impl Token {
    pub fn bot(index: usize) -> Self {
        Token { side: Side::Bot, index }
    }

    pub fn top(index: usize) -> Self {
        Token { side: Side::Top, index }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Bot => 'B',
            Side::Top => 'T',
        };
        write!(f, "{}{}", s, self.index)
    }
}

impl FromStr for Token {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (side, rest) = match s.chars().next() {
            Some('B') => (Side::Bot, &s[1..]),
            Some('T') => (Side::Top, &s[1..]),
            _ => return Err(format!("token must start with B or T: {s:?}")),
        };
        let index: usize = rest.parse().map_err(|_| format!("bad token index: {s:?}"))?;
        if index == 0 {
            return Err(format!("token indices are 1-based: {s:?}"));
        }
        Ok(Token { side, index })
    }
}

/// Connected component that touches the horizontal boundary.
///
/// `cycles` lists, per boundary circle carrying tokens, the tokens in the
/// cyclic order induced by the boundary orientation (top tokens are crossed
/// right to left, bottom tokens left to right). `holes` counts the
/// token-free boundary circles of the component.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ViewableComponent {
    pub genus: usize,
    pub holes: usize,
    pub cycles: Vec<Vec<Token>>,
}

impl ViewableComponent {
    fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - (self.cycles.len() + self.holes) as i64
    }

    fn tokens(&self) -> impl Iterator<Item = Token> + '_ {
        self.cycles.iter().flatten().copied()
    }
}

/// Closed-off component with no tokens: ell + 1 boundary circles and the
/// given genus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FloatingComponent {
    pub ell: usize,
    pub genus: usize,
}

/// Multiset of floating components.
pub type FloatingSet = BTreeMap<FloatingComponent, usize>;

fn add_floating(set: &mut FloatingSet, fc: FloatingComponent, mult: usize) {
    if mult > 0 {
        *set.entry(fc).or_insert(0) += mult;
    }
}

fn merge_floating(into: &mut FloatingSet, from: &FloatingSet) {
    for (&fc, &mult) in from {
        add_floating(into, fc, mult);
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CobordismError {
    #[error("token {0} out of range for arities {1}->{2}")]
    TokenRange(Token, usize, usize),
    #[error("token {0} appears more than once")]
    TokenRepeated(Token),
    #[error("token {0} missing")]
    TokenMissing(Token),
    #[error("viewable component contains an empty cycle")]
    EmptyCycle,
    #[error("viewable component has no cycles")]
    NoCycles,
    #[error("arity mismatch: cannot feed {found} intervals into {expected} inputs")]
    ArityMismatch { expected: usize, found: usize },
    #[error("closing up requires an endomorphism, got {n}->{m}")]
    NotEndomorphism { n: usize, m: usize },
}

/// Generators of the monoidal category, plus the floating surfaces.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GenKind {
    /// Disk 0 -> 1.
    Iota,
    /// Disk 1 -> 0.
    Eps,
    /// Flat pair of pants 2 -> 1.
    Mu,
    /// Flat pair of pants 1 -> 2 (reflection of Mu).
    Delta,
    /// Virtual crossing 2 -> 2.
    Perm,
    /// Annulus 1 -> 1 with both tokens on one circle.
    B1,
    /// Genus-one surface 1 -> 1 with one boundary circle.
    B2,
    /// Annulus 1 -> 1 with the tokens on distinct circles.
    B3,
    /// Parallel strips n -> n.
    Id(usize),
    /// Floating surface with ell + 1 boundary circles and the given genus.
    S { ell: usize, genus: usize },
}

/// A morphism of the category, always stored in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Cobordism {
    n: usize,
    m: usize,
    viewable: Vec<ViewableComponent>,
    floating: FloatingSet,
}

impl Cobordism {
    /// Validates raw data (every token exactly once, indices in range,
    /// nonempty cycles) and brings it to canonical form: cycles rotated to
    /// their least token, cycles and components sorted.
    pub fn new(
        n: usize,
        m: usize,
        viewable: Vec<ViewableComponent>,
        floating: FloatingSet,
    ) -> Result<Self, CobordismError> {
        let mut seen = vec![false; n + m];
        let token_slot = |t: Token| match t.side {
            Side::Bot => t.index - 1,
            Side::Top => n + t.index - 1,
        };
        for comp in &viewable {
            if comp.cycles.is_empty() {
                return Err(CobordismError::NoCycles);
            }
            for cycle in &comp.cycles {
                if cycle.is_empty() {
                    return Err(CobordismError::EmptyCycle);
                }
                for &t in cycle {
                    let bound = match t.side {
                        Side::Bot => n,
                        Side::Top => m,
                    };
                    if t.index == 0 || t.index > bound {
                        return Err(CobordismError::TokenRange(t, n, m));
                    }
                    let slot = token_slot(t);
                    if seen[slot] {
                        return Err(CobordismError::TokenRepeated(t));
                    }
                    seen[slot] = true;
                }
            }
        }
        for (slot, &hit) in seen.iter().enumerate() {
            if !hit {
                let t = if slot < n { Token::bot(slot + 1) } else { Token::top(slot - n + 1) };
                return Err(CobordismError::TokenMissing(t));
            }
        }
        let mut viewable = viewable;
        for comp in &mut viewable {
            for cycle in &mut comp.cycles {
                let min_pos = cycle
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, t)| *t)
                    .map(|(i, _)| i)
                    .expect("cycle nonempty");
                cycle.rotate_left(min_pos);
            }
            comp.cycles.sort_by_key(|c| c[0]);
        }
        viewable.sort_by_cached_key(|comp| {
            let mut tokens: Vec<Token> = comp.tokens().collect();
            tokens.sort();
            (tokens, comp.genus, comp.holes, comp.cycles.clone())
        });
        let floating = floating.into_iter().filter(|&(_, mult)| mult > 0).collect();
        Ok(Cobordism { n, m, viewable, floating })
    }

    pub fn empty() -> Self {
        Cobordism { n: 0, m: 0, viewable: Vec::new(), floating: FloatingSet::new() }
    }

    pub fn identity(n: usize) -> Self {
        let viewable = (1..=n)
            .map(|i| ViewableComponent { genus: 0, holes: 0, cycles: vec![vec![Token::bot(i), Token::top(i)]] })
            .collect();
        Cobordism::new(n, n, viewable, FloatingSet::new()).expect("identity is well-formed")
    }

    pub fn generator(kind: GenKind) -> Self {
        let comp = |genus, holes, cycles: Vec<Vec<Token>>| ViewableComponent { genus, holes, cycles };
        let (n, m, viewable, floating) = match kind {
            GenKind::Iota => (0, 1, vec![comp(0, 0, vec![vec![Token::top(1)]])], FloatingSet::new()),
            GenKind::Eps => (1, 0, vec![comp(0, 0, vec![vec![Token::bot(1)]])], FloatingSet::new()),
            GenKind::Mu => (
                2,
                1,
                vec![comp(0, 0, vec![vec![Token::top(1), Token::bot(1), Token::bot(2)]])],
                FloatingSet::new(),
            ),
            GenKind::Delta => return Self::generator(GenKind::Mu).reflect(),
            GenKind::Perm => (
                2,
                2,
                vec![
                    comp(0, 0, vec![vec![Token::bot(1), Token::top(2)]]),
                    comp(0, 0, vec![vec![Token::bot(2), Token::top(1)]]),
                ],
                FloatingSet::new(),
            ),
            GenKind::B1 => (1, 1, vec![comp(0, 1, vec![vec![Token::bot(1), Token::top(1)]])], FloatingSet::new()),
            GenKind::B2 => (1, 1, vec![comp(1, 0, vec![vec![Token::bot(1), Token::top(1)]])], FloatingSet::new()),
            GenKind::B3 => (
                1,
                1,
                vec![comp(0, 0, vec![vec![Token::bot(1)], vec![Token::top(1)]])],
                FloatingSet::new(),
            ),
            GenKind::Id(k) => return Self::identity(k),
            GenKind::S { ell, genus } => {
                let mut floating = FloatingSet::new();
                add_floating(&mut floating, FloatingComponent { ell, genus }, 1);
                (0, 0, Vec::new(), floating)
            }
        };
        Cobordism::new(n, m, viewable, floating).expect("generator is well-formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn viewable(&self) -> &[ViewableComponent] {
        &self.viewable
    }

    pub fn floating(&self) -> &FloatingSet {
        &self.floating
    }

    /// No holes, no genus, no floating part: the shapes that index skein
    /// bases.
    pub fn is_minimal(&self) -> bool {
        self.floating.is_empty() && self.viewable.iter().all(|c| c.genus == 0 && c.holes == 0)
    }

    /// Horizontal juxtaposition; the right factor's tokens are shifted.
    pub fn tensor(&self, other: &Cobordism) -> Cobordism {
        let shift = |t: Token| match t.side {
            Side::Bot => Token::bot(t.index + self.n),
            Side::Top => Token::top(t.index + self.m),
        };
        let mut viewable = self.viewable.clone();
        viewable.extend(other.viewable.iter().map(|c| ViewableComponent {
            genus: c.genus,
            holes: c.holes,
            cycles: c.cycles.iter().map(|cy| cy.iter().map(|&t| shift(t)).collect()).collect(),
        }));
        let mut floating = self.floating.clone();
        merge_floating(&mut floating, &other.floating);
        Cobordism::new(self.n + other.n, self.m + other.m, viewable, floating)
            .expect("tensor of well-formed morphisms is well-formed")
    }

    /// `self ∘ f`: feed the outputs of `f` into the inputs of `self`.
    pub fn compose(&self, f: &Cobordism) -> Result<Cobordism, CobordismError> {
        if f.m != self.n {
            return Err(CobordismError::ArityMismatch { expected: self.n, found: f.m });
        }
        let lower = |t: Token| match t.side {
            Side::Bot => Fate::Survive(t),
            Side::Top => Fate::Glue(t.index),
        };
        let upper = |t: Token| match t.side {
            Side::Bot => Fate::Glue(t.index),
            Side::Top => Fate::Survive(t),
        };
        let (viewable, mut floating) = splice(&[(f, &lower), (self, &upper)]);
        merge_floating(&mut floating, &f.floating);
        merge_floating(&mut floating, &self.floating);
        Ok(Cobordism::new(f.n, self.m, viewable, floating).expect("glued morphism is well-formed"))
    }

    /// Mirror across the horizontal axis: swaps source and target and
    /// reverses every boundary cycle. Contravariant involution.
    pub fn reflect(&self) -> Cobordism {
        let flip = |t: Token| match t.side {
            Side::Bot => Token::top(t.index),
            Side::Top => Token::bot(t.index),
        };
        let viewable = self
            .viewable
            .iter()
            .map(|c| ViewableComponent {
                genus: c.genus,
                holes: c.holes,
                cycles: c
                    .cycles
                    .iter()
                    .map(|cy| {
                        let mut rev: Vec<Token> = cy.iter().map(|&t| flip(t)).collect();
                        rev.reverse();
                        rev
                    })
                    .collect(),
            })
            .collect();
        Cobordism::new(self.m, self.n, viewable, self.floating.clone())
            .expect("reflection of a well-formed morphism is well-formed")
    }

    /// Glue Top(i) to Bot(i) for every i; the result is a closed-off
    /// morphism 0 -> 0 reported as its floating multiset (including the
    /// floating part already present).
    pub fn close_up(&self) -> Result<FloatingSet, CobordismError> {
        if self.n != self.m {
            return Err(CobordismError::NotEndomorphism { n: self.n, m: self.m });
        }
        let fate = |t: Token| Fate::Glue(t.index);
        let (viewable, mut floating) = splice(&[(self, &fate)]);
        assert!(viewable.is_empty(), "self-gluing left surviving tokens");
        merge_floating(&mut floating, &self.floating);
        Ok(floating)
    }

    /// Strip decorations: returns the minimal shape, the (holes, genus)
    /// exponents per component in the shape's component order, and the
    /// floating multiset.
    pub fn split_minimal(&self) -> (Cobordism, Vec<(usize, usize)>, FloatingSet) {
        let stripped: Vec<ViewableComponent> = self
            .viewable
            .iter()
            .map(|c| ViewableComponent { genus: 0, holes: 0, cycles: c.cycles.clone() })
            .collect();
        let exps: Vec<(usize, usize)> = self.viewable.iter().map(|c| (c.holes, c.genus)).collect();
        let minimal = Cobordism::new(self.n, self.m, stripped, FloatingSet::new())
            .expect("stripping preserves well-formedness");
        // Component order is decided by token content alone (token sets are
        // disjoint), so stripping never reorders.
        debug_assert!(minimal
            .viewable
            .iter()
            .zip(&self.viewable)
            .all(|(a, b)| a.cycles == b.cycles));
        (minimal, exps, self.floating.clone())
    }

    /// Re-attach (holes, genus) decorations per component of a minimal
    /// shape. Inverse of `split_minimal` up to the floating part.
    pub fn with_decorations(&self, exps: &[(usize, usize)]) -> Cobordism {
        assert_eq!(exps.len(), self.viewable.len(), "one exponent pair per component");
        let viewable = self
            .viewable
            .iter()
            .zip(exps)
            .map(|(c, &(holes, genus))| ViewableComponent {
                genus: c.genus + genus,
                holes: c.holes + holes,
                cycles: c.cycles.clone(),
            })
            .collect();
        Cobordism::new(self.n, self.m, viewable, self.floating.clone())
            .expect("decorating preserves well-formedness")
    }

    /// Stable one-line rendering of the canonical form. One bracket group
    /// per boundary cycle (labelled with its component's genus and holes)
    /// and per floating component; not injective and not parseable back.
    pub fn format_text(&self) -> String {
        use std::fmt::Write;
        let mut out = format!("{}→{}", self.n, self.m);
        out.push(' ');
        let mut any = false;
        for comp in &self.viewable {
            for cycle in &comp.cycles {
                any = true;
                let toks: Vec<String> = cycle.iter().map(Token::to_string).collect();
                write!(out, "[g{} h{} ({})]", comp.genus, comp.holes, toks.join(" ")).unwrap();
            }
        }
        for (fc, &mult) in &self.floating {
            for _ in 0..mult {
                any = true;
                write!(out, "[float ell{} g{}]", fc.ell, fc.genus).unwrap();
            }
        }
        if !any {
            out.push_str("[]");
        }
        out
    }
}

enum Fate {
    Survive(Token),
    Glue(usize),
}

/// Glue a family of surfaces along matched token pairs and classify the
/// result. Tokens map to their fate: survive under a new label, or glue to
/// the unique other token sharing the key (always one Top and one Bot).
///
/// Walk rule per boundary cycle of the glued surface: arriving at a token's
/// entry corner, an unglued token is crossed and recorded, while a glued
/// token's entry corner coincides with its partner's exit corner, so the
/// walk continues behind the partner. Euler characteristics add and drop by
/// one per glued pair; genus is recovered from 2 - 2g - b = chi afterwards.
fn splice(parts: &[(&Cobordism, &dyn Fn(Token) -> Fate)]) -> (Vec<ViewableComponent>, FloatingSet) {
    // Flatten all token occurrences into slots.
    let mut comp_chi: Vec<i64> = Vec::new();
    let mut comp_holes: Vec<usize> = Vec::new();
    let mut slot_comp: Vec<usize> = Vec::new();
    let mut slot_succ: Vec<usize> = Vec::new();
    let mut slot_fate: Vec<Fate> = Vec::new();
    for (cob, fate) in parts {
        for comp in &cob.viewable {
            let comp_id = comp_chi.len();
            comp_chi.push(comp.euler());
            comp_holes.push(comp.holes);
            for cycle in &comp.cycles {
                let base = slot_comp.len();
                let len = cycle.len();
                for (pos, &t) in cycle.iter().enumerate() {
                    slot_comp.push(comp_id);
                    slot_succ.push(base + (pos + 1) % len);
                    slot_fate.push(fate(t));
                }
            }
        }
    }
    let nslots = slot_comp.len();

    // Match glue keys into partner links.
    let mut partner: Vec<Option<usize>> = vec![None; nslots];
    {
        let mut open: BTreeMap<usize, usize> = BTreeMap::new();
        for (slot, fate) in slot_fate.iter().enumerate() {
            if let Fate::Glue(key) = fate {
                match open.remove(key) {
                    None => {
                        open.insert(*key, slot);
                    }
                    Some(other) => {
                        partner[slot] = Some(other);
                        partner[other] = Some(slot);
                    }
                }
            }
        }
        assert!(open.is_empty(), "unmatched glue key");
    }

    // Union components along glued pairs; count pairs per class.
    let mut uf = UnionFind::new(comp_chi.len());
    for (slot, p) in partner.iter().enumerate() {
        if let Some(other) = p {
            if slot < *other {
                uf.union(slot_comp[slot], slot_comp[*other]);
            }
        }
    }

    // Walk the spliced boundary.
    let mut new_cycles: BTreeMap<usize, Vec<Vec<Token>>> = BTreeMap::new();
    let mut extra_holes: BTreeMap<usize, usize> = BTreeMap::new();
    let mut visited = vec![false; nslots];
    for start in 0..nslots {
        if visited[start] {
            continue;
        }
        let mut cycle: Vec<Token> = Vec::new();
        let mut cur = start;
        loop {
            visited[cur] = true;
            match slot_fate[cur] {
                Fate::Survive(t) => {
                    cycle.push(t);
                    cur = slot_succ[cur];
                }
                Fate::Glue(_) => {
                    let p = partner[cur].expect("glue slots are matched");
                    cur = slot_succ[p];
                }
            }
            if cur == start {
                break;
            }
        }
        let root = uf.find(slot_comp[start]);
        if cycle.is_empty() {
            *extra_holes.entry(root).or_insert(0) += 1;
        } else {
            new_cycles.entry(root).or_default().push(cycle);
        }
    }

    // Per-pair chi drop, charged to the class of the pair.
    let mut glued_pairs: BTreeMap<usize, i64> = BTreeMap::new();
    for (slot, p) in partner.iter().enumerate() {
        if let Some(other) = p {
            if slot < *other {
                *glued_pairs.entry(uf.find(slot_comp[slot])).or_insert(0) += 1;
            }
        }
    }

    // Assemble classes.
    let mut class_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for comp in 0..comp_chi.len() {
        class_members.entry(uf.find(comp)).or_default().push(comp);
    }
    let mut viewable = Vec::new();
    let mut floating = FloatingSet::new();
    for (root, members) in class_members {
        let chi: i64 = members.iter().map(|&c| comp_chi[c]).sum::<i64>() - glued_pairs.get(&root).unwrap_or(&0);
        let holes: usize =
            members.iter().map(|&c| comp_holes[c]).sum::<usize>() + extra_holes.get(&root).unwrap_or(&0);
        let cycles = new_cycles.remove(&root).unwrap_or_default();
        let b = (cycles.len() + holes) as i64;
        let two_genus = 2 - chi - b;
        assert!(
            two_genus >= 0 && two_genus % 2 == 0,
            "internal gluing error: chi {chi} with {b} boundary circles is impossible"
        );
        let genus = (two_genus / 2) as usize;
        if cycles.is_empty() {
            assert!(b >= 1, "internal gluing error: component lost its boundary");
            add_floating(&mut floating, FloatingComponent { ell: (b - 1) as usize, genus }, 1);
        } else {
            viewable.push(ViewableComponent { genus, holes, cycles });
        }
    }
    (viewable, floating)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
