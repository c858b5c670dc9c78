//! The genus-2 Goeritz group as the amalgamated product `H_P *_{H_e} H_Q`.
//!
//! Every element has a unique normal form `c₁ c₂ ⋯ cₙ · h` where the `cᵢ`
//! are non-trivial coset representatives alternating between the
//! transversals `{β^k}` of `H_P/H_e` and `{δ, δ²}` of `H_Q/H_e`, and `h`
//! lies in `H_e`. Words are rewritten right to left: each letter is
//! multiplied onto the front of the normal form of the suffix, and the
//! resulting `H_e` tail is pushed rightwards through the remaining
//! representatives.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::stabilizers::{hp_decompose, hq_decompose, HeElement, HpElement, HqElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgamError {
    #[error("invalid character {0:?} in word (expected one of b, B, g, d, D, a, t)")]
    InvalidCharacter(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenLetter {
    Beta,
    BetaInv,
    Gamma,
    Delta,
    DeltaInv,
}

impl GenLetter {
    pub const ALL: [GenLetter; 5] =
        [GenLetter::Beta, GenLetter::BetaInv, GenLetter::Gamma, GenLetter::Delta, GenLetter::DeltaInv];

    pub fn inverse(self) -> Self {
        match self {
            GenLetter::Beta => GenLetter::BetaInv,
            GenLetter::BetaInv => GenLetter::Beta,
            GenLetter::Gamma => GenLetter::Gamma,
            GenLetter::Delta => GenLetter::DeltaInv,
            GenLetter::DeltaInv => GenLetter::Delta,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            GenLetter::Beta => 'b',
            GenLetter::BetaInv => 'B',
            GenLetter::Gamma => 'g',
            GenLetter::Delta => 'd',
            GenLetter::DeltaInv => 'D',
        }
    }

    fn as_factor(self) -> FactorElement {
        match self {
            GenLetter::Beta => FactorElement::P(HpElement::BETA),
            GenLetter::BetaInv => FactorElement::P(HpElement::BETA_INV),
            GenLetter::Gamma => FactorElement::P(HpElement::GAMMA),
            GenLetter::Delta => FactorElement::Q(HqElement::DELTA),
            GenLetter::DeltaInv => FactorElement::Q(HqElement::DELTA_INV),
        }
    }
}

/// Word over `β^{±1}, γ, δ^{±1}`. No reduction is performed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GenWord(pub Vec<GenLetter>);

/// `α = β β' = β γ β⁻¹ γ`
const ALPHA_WORD: [GenLetter; 4] = [GenLetter::Beta, GenLetter::Gamma, GenLetter::BetaInv, GenLetter::Gamma];

impl GenWord {
    pub fn identity() -> Self {
        GenWord(Vec::new())
    }

    pub fn alpha() -> Self {
        GenWord(ALPHA_WORD.to_vec())
    }

    pub fn parse(s: &str) -> Result<Self, AmalgamError> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                'b' => letters.push(GenLetter::Beta),
                'B' => letters.push(GenLetter::BetaInv),
                'g' => letters.push(GenLetter::Gamma),
                'd' => letters.push(GenLetter::Delta),
                'D' => letters.push(GenLetter::DeltaInv),
                'a' | 't' => letters.extend_from_slice(&ALPHA_WORD),
                other => return Err(AmalgamError::InvalidCharacter(other)),
            }
        }
        Ok(GenWord(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GenWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &GenWord) -> Self {
        GenWord(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn conjugate_by(&self, u: &GenWord) -> Self {
        u.concat(self).concat(&u.inverse())
    }

    pub fn commutator(x: &GenWord, y: &GenWord) -> Self {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse())
    }

    pub fn pow(&self, n: usize) -> Self {
        GenWord(self.0.iter().copied().cycle().take(self.0.len() * n).collect())
    }
}

impl From<HeElement> for GenWord {
    fn from(h: HeElement) -> Self {
        let mut w = if h.c { GenWord(vec![GenLetter::Gamma]) } else { GenWord::identity() };
        if h.eps {
            w = w.concat(&GenWord::alpha());
        }
        w
    }
}

/// The word `δ^a γ^c α^ε`.
impl From<HqElement> for GenWord {
    fn from(h: HqElement) -> Self {
        GenWord(vec![GenLetter::Delta; h.a as usize]).concat(&HeElement { c: h.c, eps: h.eps }.into())
    }
}

impl FromStr for GenWord {
    type Err = AmalgamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GenWord::parse(s)
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorElement {
    P(HpElement),
    Q(HqElement),
}

/// Non-trivial coset representative: `β^k` with `k ≠ 0`, or `δ^a` with `a ∈ {1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Syllable {
    P(i64),
    Q(u8),
}

impl Syllable {
    pub fn is_p(&self) -> bool {
        matches!(self, Syllable::P(_))
    }

    pub fn as_factor(&self) -> FactorElement {
        match *self {
            Syllable::P(k) => FactorElement::P(HpElement::beta_pow(k)),
            Syllable::Q(a) => FactorElement::Q(HqElement::delta_pow(a as i64)),
        }
    }

    pub fn to_word(&self) -> GenWord {
        match *self {
            Syllable::P(k) if k > 0 => GenWord(vec![GenLetter::Beta; k as usize]),
            Syllable::P(k) => GenWord(vec![GenLetter::BetaInv; k.unsigned_abs() as usize]),
            Syllable::Q(a) => GenWord(vec![GenLetter::Delta; a as usize]),
        }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Syllable::P(k) => write!(f, "P(b^{k})"),
            Syllable::Q(a) => write!(f, "Q(d^{a})"),
        }
    }
}

/// Pushes `h` rightwards past one representative: `h · c = c' · h'`.
fn push_tail(h: HeElement, c: Syllable) -> (Syllable, HeElement) {
    match c {
        Syllable::P(k) => {
            let (k2, h2) = hp_decompose(&h.embed_p().mul(&HpElement::beta_pow(k)));
            debug_assert_eq!(k2, k);
            (Syllable::P(k2), h2)
        }
        Syllable::Q(a) => {
            let (a2, h2) = hq_decompose(&h.embed_q().mul(&HqElement::delta_pow(a as i64)));
            debug_assert!(a2 != 0);
            (Syllable::Q(a2), h2)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AmalgamNormalForm {
    syllables: Vec<Syllable>,
    tail: HeElement,
}

impl AmalgamNormalForm {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a normal form from parts, rejecting non-alternating or trivial syllables.
    pub fn from_parts(syllables: Vec<Syllable>, tail: HeElement) -> Option<Self> {
        let nf = AmalgamNormalForm { syllables, tail };
        nf.is_well_formed().then_some(nf)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn tail(&self) -> HeElement {
        self.tail
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.tail.is_identity()
    }

    pub fn is_well_formed(&self) -> bool {
        let nontrivial = self.syllables.iter().all(|s| match *s {
            Syllable::P(k) => k != 0,
            Syllable::Q(a) => a == 1 || a == 2,
        });
        let alternating = self.syllables.windows(2).all(|w| w[0].is_p() != w[1].is_p());
        nontrivial && alternating
    }

    /// Left multiplication by an element of one of the factors.
    pub fn left_mul(&self, x: FactorElement) -> Self {
        match (x, self.syllables.first()) {
            (FactorElement::P(hp), Some(&Syllable::P(k))) => {
                let (rep, h) = hp_decompose(&hp.mul(&HpElement::beta_pow(k)));
                self.rebuild((rep != 0).then_some(Syllable::P(rep)), h, &self.syllables[1..])
            }
            (FactorElement::Q(hq), Some(&Syllable::Q(a))) => {
                let (rep, h) = hq_decompose(&hq.mul(&HqElement::delta_pow(a as i64)));
                self.rebuild((rep != 0).then_some(Syllable::Q(rep)), h, &self.syllables[1..])
            }
            (FactorElement::P(hp), _) => {
                let (rep, h) = hp_decompose(&hp);
                self.rebuild((rep != 0).then_some(Syllable::P(rep)), h, &self.syllables)
            }
            (FactorElement::Q(hq), _) => {
                let (rep, h) = hq_decompose(&hq);
                self.rebuild((rep != 0).then_some(Syllable::Q(rep)), h, &self.syllables)
            }
        }
    }

    fn rebuild(&self, lead: Option<Syllable>, mut h: HeElement, rest: &[Syllable]) -> Self {
        let mut syllables = Vec::with_capacity(rest.len() + 1);
        syllables.extend(lead);
        for &c in rest {
            let (c2, h2) = push_tail(h, c);
            syllables.push(c2);
            h = h2;
        }
        let nf = AmalgamNormalForm { syllables, tail: h.mul(&self.tail) };
        debug_assert!(nf.is_well_formed(), "alternation broken: {nf}");
        nf
    }

    /// Converts back to a generator word representing the same element.
    pub fn to_word(&self) -> GenWord {
        let mut w = GenWord::identity();
        for s in &self.syllables {
            w = w.concat(&s.to_word());
        }
        if self.tail.c {
            w.0.push(GenLetter::Gamma);
        }
        if self.tail.eps {
            w.0.extend_from_slice(&ALPHA_WORD);
        }
        w
    }

    pub fn mul(&self, rhs: &AmalgamNormalForm) -> AmalgamNormalForm {
        let mut acc = rhs.left_mul(FactorElement::P(self.tail.embed_p()));
        for s in self.syllables.iter().rev() {
            acc = acc.left_mul(s.as_factor());
        }
        acc
    }

    pub fn inv(&self) -> AmalgamNormalForm {
        // (c₁⋯cₙ h)⁻¹ = h⁻¹ cₙ⁻¹ ⋯ c₁⁻¹, built right to left
        let mut acc = AmalgamNormalForm::identity();
        for s in &self.syllables {
            let inv = match s.as_factor() {
                FactorElement::P(p) => FactorElement::P(p.inv()),
                FactorElement::Q(q) => FactorElement::Q(q.inv()),
            };
            acc = acc.left_mul(inv);
        }
        acc.left_mul(FactorElement::P(self.tail.inv().embed_p()))
    }
}

impl fmt::Display for AmalgamNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            f.write_str("1")?;
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, " | tail={}", self.tail)
    }
}

pub fn normal_form(w: &GenWord) -> AmalgamNormalForm {
    w.0.iter().rev().fold(AmalgamNormalForm::identity(), |acc, l| acc.left_mul(l.as_factor()))
}

pub fn are_equal(u: &GenWord, v: &GenWord) -> bool {
    normal_form(u) == normal_form(v)
}

/// Defining relators on `β, γ, δ`, with `α := βγβ⁻¹γ`.
pub fn relators() -> Vec<(&'static str, GenWord)> {
    let b = GenWord(vec![GenLetter::Beta]);
    let g = GenWord(vec![GenLetter::Gamma]);
    let d = GenWord(vec![GenLetter::Delta]);
    let a = GenWord::alpha();
    vec![
        ("g^2", g.pow(2)),
        ("d^3", d.pow(3)),
        ("(gd)^2", g.concat(&d).pow(2)),
        ("a^2", a.pow(2)),
        ("[a,b]", GenWord::commutator(&a, &b)),
        ("[a,d]", GenWord::commutator(&a, &d)),
    ]
}

/// Relations that follow from the defining set.
pub fn derived_relators() -> Vec<(&'static str, GenWord)> {
    let g = GenWord(vec![GenLetter::Gamma]);
    let a = GenWord::alpha();
    vec![("[a,g]", GenWord::commutator(&a, &g))]
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, len: usize) -> GenWord {
    GenWord((0..len).map(|_| GenLetter::ALL[rng.gen_range(0..GenLetter::ALL.len())]).collect())
}

/// A random conjugate `u R^{±1} u⁻¹` of a defining relator, `|u| ≤ 6`.
pub fn random_conjugated_relator<R: Rng + ?Sized>(rng: &mut R) -> GenWord {
    let rels = relators();
    let (_, r) = &rels[rng.gen_range(0..rels.len())];
    let r = if rng.gen_bool(0.5) { r.clone() } else { r.inverse() };
    let ulen = rng.gen_range(0..=6);
    r.conjugate_by(&random_word(rng, ulen))
}

/// Product of conjugated relators, at most `max_len` letters long.
pub fn random_consequence<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> GenWord {
    let mut w = GenWord::identity();
    let factors = rng.gen_range(1..=12);
    for _ in 0..factors {
        let c = random_conjugated_relator(rng);
        if w.len() + c.len() > max_len {
            break;
        }
        w = w.concat(&c);
    }
    w
}

/// Inserts a conjugated relator at a random position of `w`.
pub fn insert_random_relator<R: Rng + ?Sized>(rng: &mut R, w: &GenWord) -> GenWord {
    let pos = rng.gen_range(0..=w.len());
    let c = random_conjugated_relator(rng);
    let mut letters = w.0[..pos].to_vec();
    letters.extend_from_slice(&c.0);
    letters.extend_from_slice(&w.0[pos..]);
    GenWord(letters)
}

#[derive(Debug, Clone, Serialize)]
pub struct RelatorCheck {
    pub name: String,
    pub word: String,
    pub normal_form: String,
    pub trivial: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationReport {
    pub relators: Vec<RelatorCheck>,
    pub derived: Vec<RelatorCheck>,
    pub consequences_checked: usize,
    /// Offending words, if any.
    pub consequence_failures: Vec<String>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.relators.iter().chain(&self.derived).all(|r| r.trivial) && self.consequence_failures.is_empty()
    }
}

/// Checks every relator, plus `samples` random consequences of length ≤ 200.
pub fn verify_presentation<R: Rng + ?Sized>(rng: &mut R, samples: usize) -> PresentationReport {
    let check = |(name, w): (&str, GenWord)| {
        let nf = normal_form(&w);
        RelatorCheck {
            name: name.to_string(),
            word: w.to_string(),
            normal_form: nf.to_string(),
            trivial: nf.is_identity(),
        }
    };
    let relators = relators().into_iter().map(check).collect();
    let derived = derived_relators().into_iter().map(check).collect();
    let mut consequence_failures = Vec::new();
    for _ in 0..samples {
        let w = random_consequence(rng, 200);
        if !normal_form(&w).is_identity() {
            consequence_failures.push(w.to_string());
        }
    }
    PresentationReport { relators, derived, consequences_checked: samples, consequence_failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn nf(s: &str) -> AmalgamNormalForm {
        normal_form(&GenWord::parse(s).unwrap())
    }

    #[test]
    fn parse_examples() {
        assert_eq!(GenWord::parse("gg").unwrap().to_string(), "gg");
        assert_eq!(GenWord::parse("a").unwrap().to_string(), "bgBg");
        assert_eq!(GenWord::parse("t").unwrap().to_string(), "bgBg");
        assert_eq!(GenWord::parse("bD").unwrap().0, vec![GenLetter::Beta, GenLetter::DeltaInv]);
        assert_eq!(GenWord::parse("bx"), Err(AmalgamError::InvalidCharacter('x')));
    }

    #[test]
    fn normal_form_examples() {
        assert!(nf("gg").is_identity());
        assert!(nf("ddd").is_identity());
        assert!(nf("bgBgbgBg").is_identity());
        let bd = nf("bd");
        assert_eq!(bd.syllables(), &[Syllable::P(1), Syllable::Q(1)]);
        assert!(bd.tail().is_identity());
        assert_eq!(nf("bbbDga").to_string(), "P(b^3) Q(d^2) | tail=ga");
        assert_eq!(nf("").to_string(), "1 | tail=1");
    }

    #[test]
    fn inverse_delta_normalizes_to_square() {
        assert_eq!(nf("D"), nf("dd"));
        assert_eq!(nf("D").syllables(), &[Syllable::Q(2)]);
    }

    #[test]
    fn tail_pushing_laws() {
        // γ β^k = β^k t^k γ
        assert_eq!(nf("gbbb"), nf("bbbag"));
        assert_eq!(nf("gbb"), nf("bbg"));
        // γ δ = δ² γ, α δ = δ α
        assert_eq!(nf("gd"), nf("ddg"));
        assert_eq!(nf("ad"), nf("da"));
    }

    #[test]
    fn equality_examples() {
        let eq = |u: &str, v: &str| are_equal(&GenWord::parse(u).unwrap(), &GenWord::parse(v).unwrap());
        assert!(eq("ad", "da"));
        assert!(eq("ag", "ga"));
        assert!(!eq("bd", "db"));
    }

    #[test]
    fn relators_are_trivial() {
        for (name, w) in relators().into_iter().chain(derived_relators()) {
            assert!(normal_form(&w).is_identity(), "{name} = {w} -> {}", normal_form(&w));
        }
        let u = GenWord::parse("bdg").unwrap();
        for (_, r) in relators() {
            assert!(normal_form(&r.conjugate_by(&u)).is_identity());
        }
    }

    #[test]
    fn presentation_report_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let report = verify_presentation(&mut rng, 200);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.relators.len(), 6);
    }

    #[test]
    fn mul_and_inverse() {
        let x = nf("bdgbbD");
        assert_eq!(AmalgamNormalForm::identity().mul(&x), x);
        assert_eq!(x.mul(&AmalgamNormalForm::identity()), x);
        let y = AmalgamNormalForm::from_parts(vec![Syllable::P(3)], HeElement::GAMMA).unwrap();
        assert!(y.mul(&y.inv()).is_identity());
        assert!(y.inv().mul(&y).is_identity());
        assert!(nf("b").mul(&nf("B")).is_identity());
    }

    #[test]
    fn from_parts_rejects_bad_shapes() {
        assert!(AmalgamNormalForm::from_parts(vec![Syllable::P(1), Syllable::P(2)], HeElement::IDENTITY).is_none());
        assert!(AmalgamNormalForm::from_parts(vec![Syllable::Q(0)], HeElement::IDENTITY).is_none());
        assert!(AmalgamNormalForm::from_parts(vec![Syllable::P(0)], HeElement::IDENTITY).is_none());
    }

    #[test]
    fn to_word_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let w = random_word(&mut rng, 30);
            let n = normal_form(&w);
            assert_eq!(normal_form(&n.to_word()), n);
        }
    }

    #[test]
    fn words_in_gamma_and_alpha_stay_in_edge_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let len = rng.gen_range(0..20);
            let s: String = (0..len).map(|_| if rng.gen_bool(0.5) { 'g' } else { 'a' }).collect();
            assert!(nf(&s).syllables().is_empty(), "{s}");
        }
    }
}
