//! The three vertex/edge stabilizers of the base edge of the tree.
//!
//! * `H_P` has normal form `β^k t^ε γ^d`, where `t = βγβ⁻¹γ` is central of
//!   order two and `γβγ = tβ`.
//! * `H_Q` has normal form `δ^a γ^c α^ε`: a dihedral group of order six
//!   times the central `⟨α⟩`, twelve elements in all.
//! * `H_e = ⟨γ, α⟩ ≅ Z/2 × Z/2`, embedded in `H_P` by `α ↦ t`.

use std::fmt;

/// Element `β^k t^eps γ^d` of the pair stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HpElement {
    pub k: i64,
    pub eps: bool,
    pub d: bool,
}

impl HpElement {
    pub const IDENTITY: HpElement = HpElement { k: 0, eps: false, d: false };
    pub const BETA: HpElement = HpElement { k: 1, eps: false, d: false };
    pub const BETA_INV: HpElement = HpElement { k: -1, eps: false, d: false };
    pub const GAMMA: HpElement = HpElement { k: 0, eps: false, d: true };
    pub const T: HpElement = HpElement { k: 0, eps: true, d: false };

    pub fn beta_pow(k: i64) -> Self {
        HpElement { k, ..Self::IDENTITY }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// `γ β^m = t^m β^m γ`, so moving `γ` rightwards past `β^m` picks up `t^m`.
    pub fn mul(&self, rhs: &HpElement) -> HpElement {
        let twist = self.d && rhs.k.rem_euclid(2) == 1;
        HpElement { k: self.k + rhs.k, eps: self.eps ^ rhs.eps ^ twist, d: self.d ^ rhs.d }
    }

    pub fn inv(&self) -> HpElement {
        // (β^k t^e γ^d)⁻¹ = γ^d t^e β^{-k} = β^{-k} t^{e + d·k} γ^d
        let twist = self.d && self.k.rem_euclid(2) == 1;
        HpElement { k: -self.k, eps: self.eps ^ twist, d: self.d }
    }

    pub fn pow(&self, n: u32) -> HpElement {
        (0..n).fold(Self::IDENTITY, |acc, _| acc.mul(self))
    }
}

impl fmt::Display for HpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.k != 0 {
            parts.push(format!("b^{}", self.k));
        }
        if self.eps {
            parts.push("t".to_string());
        }
        if self.d {
            parts.push("g".to_string());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Element `δ^a γ^c α^eps` of the triple stabilizer, `a ∈ {0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HqElement {
    pub a: u8,
    pub c: bool,
    pub eps: bool,
}

impl HqElement {
    pub const IDENTITY: HqElement = HqElement { a: 0, c: false, eps: false };
    pub const DELTA: HqElement = HqElement { a: 1, c: false, eps: false };
    pub const DELTA_INV: HqElement = HqElement { a: 2, c: false, eps: false };
    pub const GAMMA: HqElement = HqElement { a: 0, c: true, eps: false };
    pub const ALPHA: HqElement = HqElement { a: 0, c: false, eps: true };

    pub fn new(a: i64, c: bool, eps: bool) -> Self {
        HqElement { a: a.rem_euclid(3) as u8, c, eps }
    }

    pub fn delta_pow(a: i64) -> Self {
        Self::new(a, false, false)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// `γ δ^b = δ^{-b} γ`; `α` is central.
    pub fn mul(&self, rhs: &HqElement) -> HqElement {
        let b = if self.c { 3 - rhs.a } else { rhs.a };
        HqElement { a: (self.a + b) % 3, c: self.c ^ rhs.c, eps: self.eps ^ rhs.eps }
    }

    pub fn inv(&self) -> HqElement {
        // reflections are involutions
        let a = if self.c { self.a } else { (3 - self.a) % 3 };
        HqElement { a, c: self.c, eps: self.eps }
    }

    /// All twelve elements in normal-form order.
    pub fn enumerate() -> Vec<HqElement> {
        let mut out = Vec::with_capacity(12);
        for a in 0..3u8 {
            for c in [false, true] {
                for eps in [false, true] {
                    out.push(HqElement { a, c, eps });
                }
            }
        }
        out
    }
}

impl fmt::Display for HqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if self.a != 0 {
            s.push_str(&format!("d^{}", self.a));
        }
        if self.c {
            s.push_str(if s.is_empty() { "g" } else { " g" });
        }
        if self.eps {
            s.push_str(if s.is_empty() { "a" } else { " a" });
        }
        if s.is_empty() {
            s.push('1');
        }
        f.write_str(&s)
    }
}

/// Element `γ^c α^eps` of the edge stabilizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HeElement {
    pub c: bool,
    pub eps: bool,
}

impl HeElement {
    pub const IDENTITY: HeElement = HeElement { c: false, eps: false };
    pub const GAMMA: HeElement = HeElement { c: true, eps: false };
    pub const ALPHA: HeElement = HeElement { c: false, eps: true };
    pub const GAMMA_ALPHA: HeElement = HeElement { c: true, eps: true };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn mul(&self, rhs: &HeElement) -> HeElement {
        HeElement { c: self.c ^ rhs.c, eps: self.eps ^ rhs.eps }
    }

    pub fn inv(&self) -> HeElement {
        *self
    }

    pub fn enumerate() -> [HeElement; 4] {
        [Self::IDENTITY, Self::GAMMA, Self::ALPHA, Self::GAMMA_ALPHA]
    }

    pub fn embed_p(&self) -> HpElement {
        HpElement { k: 0, eps: self.eps, d: self.c }
    }

    pub fn embed_q(&self) -> HqElement {
        HqElement { a: 0, c: self.c, eps: self.eps }
    }
}

impl fmt::Display for HeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c, self.eps) {
            (false, false) => f.write_str("1"),
            (true, false) => f.write_str("g"),
            (false, true) => f.write_str("a"),
            (true, true) => f.write_str("ga"),
        }
    }
}

/// `g = β^rep · tail` with the transversal `{β^k}`.
pub fn hp_decompose(g: &HpElement) -> (i64, HeElement) {
    (g.k, HeElement { c: g.d, eps: g.eps })
}

/// `g = δ^rep · tail` with the transversal `{1, δ, δ²}`.
pub fn hq_decompose(g: &HqElement) -> (u8, HeElement) {
    (g.a, HeElement { c: g.c, eps: g.eps })
}
