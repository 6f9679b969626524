//! Seeded random automata for sampling sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::ops::Homomorphism;
use crate::Word;

pub type SweepRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform size in `1..=max_states`, uniform transitions, each state final
/// with probability 1/2; unreachable states are trimmed.
pub fn random_dfa(rng: &mut SweepRng, max_states: usize, alphabet: &Alphabet) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let table = (0..n * alphabet.len())
        .map(|_| rng.gen_range(0..n))
        .collect();
    let finals = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::from_table(alphabet.clone(), table, 0, finals)
        .expect("random table is well formed")
        .trimmed()
}

/// The first `1..=max_symbols` letters of `abc...`, size chosen uniformly.
pub fn random_alphabet(rng: &mut SweepRng, max_symbols: usize) -> Alphabet {
    let k = rng.gen_range(1..=max_symbols);
    Alphabet::from_chars(&"abcdefgh"[..k]).expect("letters are valid symbols")
}

/// λ-free homomorphism on `source` with images over `target` of length
/// `1..=max_image`.
pub fn random_homomorphism(
    rng: &mut SweepRng,
    source: &Alphabet,
    target: &Alphabet,
    max_image: usize,
) -> Homomorphism {
    let images = source
        .symbols()
        .iter()
        .map(|_| {
            let len = rng.gen_range(1..=max_image);
            Word(
                (0..len)
                    .map(|_| target.symbol(rng.gen_range(0..target.len())))
                    .collect(),
            )
        })
        .collect();
    Homomorphism::new(source.clone(), target.clone(), images).expect("images over target")
}
