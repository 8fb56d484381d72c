//! Seeded generators shared by the integration suites.

#![allow(dead_code)]

use lojax::{IntegerVector, MonomialIdeal};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ideal(n: usize, exps: &[&[i64]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, exps).unwrap()
}

/// A finite-colength ideal with at most `max_gens` generators (before pruning)
/// and exponents in `1..=max_exp`: one pure power per axis plus mixed terms.
pub fn random_ideal(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_gens: usize,
    max_exp: i64,
) -> MonomialIdeal {
    let mut gens = Vec::new();
    for axis in 0..n {
        let mut e = vec![0i64; n];
        e[axis] = rng.gen_range(1..=max_exp);
        gens.push(IntegerVector::from_i64(&e));
    }
    let extra = rng.gen_range(0..=max_gens.saturating_sub(n));
    for _ in 0..extra {
        let mut e: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        if e.iter().all(|&x| x == 0) {
            e[rng.gen_range(0..n)] = 1;
        }
        gens.push(IntegerVector::from_i64(&e));
    }
    MonomialIdeal::new(n, gens).unwrap()
}

pub fn random_exponents(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(lo..=hi)).collect()
}
