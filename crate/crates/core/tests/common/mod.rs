#![allow(dead_code)]

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rns_barrett::{ModuliSet, RangeCase, RnsBarrettContext};

pub fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `count` pairwise-coprime moduli of exactly `bits` bits.
pub fn random_moduli(rng: &mut impl Rng, count: usize, bits: u32) -> Vec<u64> {
    let lo = 1u64 << (bits - 1);
    let hi = (1u64 << bits) - 1;
    let mut out: Vec<u64> = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(
            attempts < 100_000,
            "cannot find {count} coprime {bits}-bit moduli"
        );
        let m = rng.gen_range(lo..=hi).max(2);
        if out.iter().all(|&o| o.gcd(&m) == 1) {
            out.push(m);
        }
    }
    out
}

pub fn random_set(rng: &mut impl Rng, count: usize, bits: u32) -> ModuliSet {
    ModuliSet::new(&random_moduli(rng, count, bits)).unwrap()
}

/// Random `N` with exactly `bits` bits (at least 2).
pub fn random_modulus(rng: &mut impl Rng, bits: u64) -> BigUint {
    let bits = bits.max(2);
    let lo = BigUint::one() << (bits - 1);
    rng.gen_biguint_range(&lo, &(&lo << 1u32))
}

/// Uniform in `[lo, hi]`.
pub fn uniform(rng: &mut impl Rng, lo: &BigUint, hi: &BigUint) -> BigUint {
    rng.gen_biguint_range(lo, &(hi + 1u32))
}

fn random_subset(rng: &mut impl Rng, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// A random valid context: 4..=12 moduli of 8..=40 bits, random and possibly
/// overlapping `G`/`H` channel groups, `N` up to 128 bits drawn from the
/// admissible range. Retries until one is found.
pub fn random_context(rng: &mut impl Rng, case: RangeCase) -> RnsBarrettContext {
    let cap = BigUint::one() << 128u32;
    loop {
        let count = rng.gen_range(4..=12);
        let bits = rng.gen_range(8..=40);
        let ms = random_set(rng, count, bits);
        let g_idx = random_subset(rng, count, 0.3);
        let h_idx = random_subset(rng, count, 0.5);
        if h_idx.is_empty() {
            continue;
        }
        let g = ms.product_of(&g_idx);
        let h = ms.product_of(&h_idx);
        let m = ms.product();
        let lo = &g * case.g_factor() + 1u32;
        let c = case.product_factor();
        let mut hi_product = (&g * &h / c).sqrt();
        if !case.product_bound_inclusive() && &hi_product * &hi_product * c == &g * &h {
            hi_product -= 1u32;
        }
        let hi_capacity = (m - 1u32) / (&h * case.capacity_factor());
        let hi = hi_product.min(hi_capacity).min(cap.clone());
        if lo > hi || lo < big(2) {
            continue;
        }
        let n = uniform(rng, &lo, &hi);
        match RnsBarrettContext::new(&ms, n, &g_idx, &h_idx, case) {
            Ok(ctx) => return ctx,
            Err(e) => panic!("generator produced an invalid context: {e}"),
        }
    }
}

/// Random operand below `input_bound * N`.
pub fn random_operand(rng: &mut impl Rng, ctx: &RnsBarrettContext) -> BigUint {
    rng.gen_biguint_below(&ctx.params().input_limit())
}

/// Random `N` whose bit length is uniform in `[lo_bits, hi_bits]`.
pub fn random_modulus_in(rng: &mut impl Rng, lo_bits: u64, hi_bits: u64) -> BigUint {
    let bits = rng.gen_range(lo_bits..=hi_bits);
    random_modulus(rng, bits)
}
