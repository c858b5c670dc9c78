//! Computational models for the genus-2 Goeritz group and its tree.
//!
//! ```
//! use goeritz::{are_equal, ball, normal_form, GenWord};
//!
//! let w = GenWord::parse("bgBgbgBg").unwrap();
//! assert!(normal_form(&w).is_identity());
//! assert!(are_equal(&GenWord::parse("dgd").unwrap(), &GenWord::parse("g").unwrap()));
//! assert!(ball(2, 2).unwrap().is_tree());
//! ```

pub mod amalgam;
pub mod bass_serre;
pub mod contract;
pub mod farey;
pub mod simplicial;
pub mod stabilizers;
pub mod word;

pub use amalgam::{are_equal, normal_form, AmalgamNormalForm, GenLetter, GenWord, Syllable};
pub use bass_serre::{ball, quotient, CosetVertex, TreeBall, TreeEdge, VertexKind};
pub use contract::{contract_loop, validate, HomotopyCertificate, Move, SimplicialLoop};
pub use farey::{FareyConfig, FareyOracles, Slope};
pub use simplicial::Complex;
pub use stabilizers::{HeElement, HpElement, HqElement};
pub use word::{CyclicWord, Letter, ReducedWord};

/// Deterministic generator used by every sampling routine.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    SeededRng::seed_from_u64(seed)
}
