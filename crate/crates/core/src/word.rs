//! Words in the free group F₂ = ⟨x, y⟩.
//!
//! Text encoding: `x`, `y` are the generators, `X`, `Y` their inverses.
//! Primitivity is decided by greedy Whitehead descent, which is complete
//! in rank two: a word that is not of minimal length in its automorphism
//! orbit is shortened by some Whitehead automorphism.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid character {0:?} in word (expected one of x, X, y, Y)")]
    InvalidCharacter(char),
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("word is empty")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
}

impl Generator {
    pub fn other(self) -> Self {
        match self {
            Generator::X => Generator::Y,
            Generator::Y => Generator::X,
        }
    }
}

/// A generator or its formal inverse.
///
/// The derived ordering is x < x⁻¹ < y < y⁻¹, which fixes the canonical
/// rotation of cyclic words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub base: Generator,
    pub inverted: bool,
}

impl Letter {
    pub const X: Letter = Letter { base: Generator::X, inverted: false };
    pub const X_INV: Letter = Letter { base: Generator::X, inverted: true };
    pub const Y: Letter = Letter { base: Generator::Y, inverted: false };
    pub const Y_INV: Letter = Letter { base: Generator::Y, inverted: true };

    pub const ALL: [Letter; 4] = [Letter::X, Letter::X_INV, Letter::Y, Letter::Y_INV];

    pub fn inverse(self) -> Self {
        Letter { base: self.base, inverted: !self.inverted }
    }

    pub fn sign(self) -> i64 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn from_char(c: char) -> Result<Self, WordError> {
        match c {
            'x' => Ok(Letter::X),
            'X' => Ok(Letter::X_INV),
            'y' => Ok(Letter::Y),
            'Y' => Ok(Letter::Y_INV),
            other => Err(WordError::InvalidCharacter(other)),
        }
    }

    pub fn to_char(self) -> char {
        match (self.base, self.inverted) {
            (Generator::X, false) => 'x',
            (Generator::X, true) => 'X',
            (Generator::Y, false) => 'y',
            (Generator::Y, true) => 'Y',
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        ReducedWord { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &ReducedWord) -> Self {
        reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&first), Some(&last)) => self.letters.len() == 1 || first != last.inverse(),
            _ => true,
        }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = parse_letters(s)?;
        Ok(reduce(letters))
    }
}

pub fn parse_letters(s: &str) -> Result<Vec<Letter>, WordError> {
    s.chars().map(Letter::from_char).collect()
}

/// Stack-based free reduction.
pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> ReducedWord {
    let mut letters: Vec<Letter> = Vec::new();
    for l in raw {
        if letters.last() == Some(&l.inverse()) {
            letters.pop();
        } else {
            letters.push(l);
        }
    }
    ReducedWord { letters }
}

/// A cyclically reduced word stored in its lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Accepts only letters that are already cyclically reduced.
    pub fn try_from_letters(letters: Vec<Letter>) -> Result<Self, WordError> {
        let w = ReducedWord { letters };
        if reduce(w.letters.iter().copied()) != w || !w.is_cyclically_reduced() {
            return Err(WordError::NotCyclicallyReduced);
        }
        Ok(CyclicWord { letters: least_rotation(&w.letters) })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_reduced(&self) -> ReducedWord {
        ReducedWord { letters: self.letters.clone() }
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let best = (0..n)
        .min_by(|&a, &b| {
            let ra = letters[a..].iter().chain(&letters[..a]);
            let rb = letters[b..].iter().chain(&letters[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0);
    letters[best..].iter().chain(&letters[..best]).copied().collect()
}

/// Strips conjugating letters and rotates to canonical form.
pub fn cyclic_reduce(w: &ReducedWord) -> CyclicWord {
    CyclicWord { letters: least_rotation(&strip_conjugation(w.letters.clone())) }
}

/// Exponent sums of x and y.
pub fn abelianize(w: &ReducedWord) -> (i64, i64) {
    w.letters().iter().fold((0, 0), |(ex, ey), l| match l.base {
        Generator::X => (ex + l.sign(), ey),
        Generator::Y => (ex, ey + l.sign()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimitivityVerdict {
    /// The word contains some generator with both signs, so it is never primitive.
    CertifiedNonPrimitive,
    Inconclusive,
}

/// Sign test: a cyclically reduced word that uses a generator with both
/// exponents cannot be a basis element.
pub fn mixed_sign_criterion(w: &CyclicWord) -> Result<PrimitivityVerdict, WordError> {
    if w.is_empty() {
        return Err(WordError::Empty);
    }
    let mut seen = [[false; 2]; 2];
    for l in w.letters() {
        seen[l.base as usize][l.inverted as usize] = true;
    }
    if seen.iter().any(|s| s[0] && s[1]) {
        Ok(PrimitivityVerdict::CertifiedNonPrimitive)
    } else {
        Ok(PrimitivityVerdict::Inconclusive)
    }
}

/// A Whitehead automorphism of F₂ of the second kind: fixes `multiplier`
/// and sends the other generator `z` to `a⁻¹ z`, `z a`, or `a⁻¹ z a`
/// depending on which of `z`, `z⁻¹` lie in the defining set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WhiteheadMove {
    pub multiplier: Letter,
    /// z ∈ A: z ↦ z·a
    pub right: bool,
    /// z⁻¹ ∈ A: z ↦ a⁻¹·z
    pub left: bool,
}

impl WhiteheadMove {
    /// The 12 non-trivial moves in a fixed order.
    pub fn all() -> Vec<WhiteheadMove> {
        let mut moves = Vec::with_capacity(12);
        for a in Letter::ALL {
            for (right, left) in [(true, false), (false, true), (true, true)] {
                moves.push(WhiteheadMove { multiplier: a, right, left });
            }
        }
        moves
    }

    fn image(&self, l: Letter) -> Vec<Letter> {
        let a = self.multiplier;
        if l.base == a.base {
            return vec![l];
        }
        let z = Letter { base: l.base, inverted: false };
        let mut img = Vec::with_capacity(3);
        if self.left {
            img.push(a.inverse());
        }
        img.push(z);
        if self.right {
            img.push(a);
        }
        if l.inverted {
            img.reverse();
            img.iter_mut().for_each(|x| *x = x.inverse());
        }
        img
    }

    pub fn apply(&self, w: &ReducedWord) -> ReducedWord {
        reduce(w.letters().iter().flat_map(|&l| self.image(l)))
    }
}

fn strip_conjugation(mut letters: Vec<Letter>) -> Vec<Letter> {
    let (mut lo, mut hi) = (0usize, letters.len());
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    letters.truncate(hi);
    letters.drain(..lo);
    letters
}

/// Greedy Whitehead descent: applies the first move that strictly shortens
/// the cyclic word until none does. The result has minimal length in the
/// automorphism orbit of `w`.
pub fn whitehead_minimize(w: &ReducedWord) -> CyclicWord {
    let moves = WhiteheadMove::all();
    let mut current = strip_conjugation(w.letters.clone());
    loop {
        let shorter = moves.iter().find_map(|m| {
            let image = reduce(current.iter().flat_map(|&l| m.image(l)));
            let next = strip_conjugation(image.letters);
            (next.len() < current.len()).then_some(next)
        });
        match shorter {
            Some(next) => current = next,
            None => return CyclicWord { letters: least_rotation(&current) },
        }
    }
}

/// True iff `w` is a member of some free basis of F₂.
pub fn is_primitive(w: &ReducedWord) -> bool {
    if w.is_empty() {
        return false;
    }
    whitehead_minimize(w).len() == 1
}
