use std::collections::BTreeSet;

use goeritz::amalgam::{normal_form, GenLetter, GenWord};
use goeritz::bass_serre::{act, ball, CosetVertex, VertexKind};
use goeritz::contract::{contract_loop, validate, SimplicialLoop, DEFAULT_FUEL};
use goeritz::farey::{farey_adjacent, mediant, parents, random_loop, remoteness, FareyConfig, FareyOracles, Slope};
use goeritz::simplicial::Complex;
use goeritz::word::{abelianize, cyclic_reduce, is_primitive, reduce, Letter, ReducedWord};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letters(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop::sample::select(Letter::ALL.to_vec()), 0..=max)
}

fn gen_word(max: usize) -> impl Strategy<Value = GenWord> {
    prop::collection::vec(prop::sample::select(GenLetter::ALL.to_vec()), 0..=max).prop_map(GenWord)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn complex_on(triples: &[(u8, u8, u8)]) -> Complex {
    let simplices: Vec<Vec<String>> = triples
        .iter()
        .map(|&(a, b, c)| {
            let mut s: Vec<String> = [a, b, c].iter().map(|v| format!("v{v}")).collect();
            s.sort();
            s.dedup();
            s
        })
        .collect();
    Complex::from_maximal(&simplices).unwrap()
}

fn small_complex() -> impl Strategy<Value = Complex> {
    prop::collection::vec((0u8..7, 0u8..7, 0u8..7), 1..10).prop_map(|t| complex_on(&t))
}

proptest! {
    #[test]
    fn reduce_is_idempotent(raw in letters(30)) {
        let once = reduce(raw);
        prop_assert_eq!(reduce(once.letters().iter().copied()), once);
    }

    #[test]
    fn cyclic_reduction_is_a_shorter_conjugate(raw in letters(24)) {
        let w = reduce(raw);
        let c = cyclic_reduce(&w).to_reduced();
        prop_assert!(c.len() <= w.len());
        let found = (0..=w.len()).any(|split| {
            let prefix = reduce(w.letters()[..split].iter().copied());
            (0..=c.len()).any(|r| {
                let rotated = reduce(c.letters()[r..].iter().chain(&c.letters()[..r]).copied());
                let strip = (w.len() - c.len()) / 2;
                prefix.len() == strip && prefix.concat(&rotated).concat(&prefix.inverse()) == w
            })
        });
        prop_assert!(found, "{} is not conjugate to {}", c, w);
    }

    #[test]
    fn primitive_words_have_coprime_abelianization(raw in letters(14)) {
        let w = reduce(raw);
        if is_primitive(&w) {
            let (a, b) = abelianize(&w);
            prop_assert_eq!(gcd(a, b), 1);
        }
    }

    #[test]
    fn primitivity_is_conjugacy_invariant(raw in letters(14), u in letters(6)) {
        let w = reduce(raw);
        let u: ReducedWord = reduce(u);
        let conj = u.concat(&w).concat(&u.inverse());
        prop_assert_eq!(is_primitive(&w), is_primitive(&conj));
    }

    #[test]
    fn normal_form_is_multiplicative(u in gen_word(25), v in gen_word(25)) {
        prop_assert_eq!(normal_form(&u.concat(&v)), normal_form(&u).mul(&normal_form(&v)));
    }

    #[test]
    fn inverse_normal_form(u in gen_word(25)) {
        prop_assert_eq!(normal_form(&u.inverse()), normal_form(&u).inv());
        prop_assert!(normal_form(&u.concat(&u.inverse())).is_identity());
    }

    #[test]
    fn gamma_alpha_words_stay_in_edge_group(choices in prop::collection::vec(any::<bool>(), 0..20)) {
        let mut w = GenWord::identity();
        for gamma in choices {
            w = w.concat(&if gamma { GenWord(vec![GenLetter::Gamma]) } else { GenWord::alpha() });
        }
        let nf = normal_form(&w);
        prop_assert!(nf.syllables().is_empty());
    }

    #[test]
    fn canonical_rep_is_a_witness(u in gen_word(20), pair in any::<bool>()) {
        let kind = if pair { VertexKind::Pair } else { VertexKind::Triple };
        let v = act(&u, &CosetVertex::base(kind));
        prop_assert_eq!(act(&v.witness(), &CosetVertex::base(kind)), v.clone());
        prop_assert_eq!(CosetVertex::of(kind, &v.rep_element()), v);
    }

    #[test]
    fn barycentric_preserves_euler_characteristic(k in small_complex()) {
        let sd = k.barycentric();
        prop_assert!(sd.is_downward_closed());
        prop_assert_eq!(sd.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn links_of_flag_complexes_are_flag(k in small_complex()) {
        let k = if k.is_flag() { k } else { k.barycentric() };
        prop_assume!(k.is_flag());
        for v in k.vertices() {
            let link = k.link(&v).unwrap();
            prop_assert_eq!(link.full_subcomplex(&link.vertices()), link.clone());
            prop_assert!(link.is_flag());
        }
    }

    #[test]
    fn removed_stars_avoid_original_vertices(k in small_complex()) {
        let originals = k.vertices();
        let g = k.barycentric().remove_open_stars(&originals);
        prop_assert!(g.simplices().all(|s| s.iter().all(|v| !originals.contains(v))));
        prop_assert!(g.dimension() <= 1);
    }

    #[test]
    fn seeded_loops_contract_and_validate(seed in any::<u64>(), steps in 1usize..60) {
        let oracles = FareyOracles::new(50);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let images = random_loop(&mut rng, 50, steps, FareyConfig::default());
        let lp = SimplicialLoop::new(images, &oracles, &Slope::INF).unwrap();
        let c = contract_loop(&oracles, &oracles, &oracles, &lp, DEFAULT_FUEL).unwrap();
        prop_assert!(validate(&oracles, &c.certificate, &lp).is_valid());
        prop_assert!(c.certificate.final_loop.iter().all(|v| remoteness(v) == 0));
    }
}

#[test]
fn parents_are_adjacent_and_mediate() {
    for q in 2..=50 {
        for p in -q..=2 * q {
            let Ok(v) = Slope::new(p, q) else { continue };
            if v.q() != q {
                continue;
            }
            let (a, b) = parents(&v).unwrap();
            assert!(farey_adjacent(&a, &v) && farey_adjacent(&b, &v));
            assert!(remoteness(&a) < remoteness(&v) && remoteness(&b) < remoteness(&v));
            assert_eq!(mediant(&a, &b).unwrap(), v);
        }
    }
}

#[test]
fn action_preserves_adjacency() {
    use goeritz::amalgam::random_word;
    use goeritz::bass_serre::adjacent;
    let b = ball(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for len in [1, 3, 7, 12] {
        let g = random_word(&mut rng, len);
        for (i, j, _) in b.edges() {
            let (u, v) = (act(&g, &b.vertices()[*i]), act(&g, &b.vertices()[*j]));
            assert!(adjacent(&u, &v));
        }
        let images: BTreeSet<String> = b.vertices().iter().map(|v| act(&g, v).label()).collect();
        assert_eq!(images.len(), b.vertex_count());
    }
}
