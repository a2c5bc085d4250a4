//! Greedy construction of a moduli set and `G`/`H` channel groups for a
//! given modulus `N`.
//!
//! `G` is grown first from the largest admissible moduli while it stays
//! under its bound, then `H` from the largest remaining candidates until the
//! `G*H` product bound holds, then further moduli are appended until the
//! capacity condition holds. The result always passes the context checks;
//! it is not optimal in the number of moduli.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::barrett::RangeCase;
use crate::error::{Error, Result};
use crate::rns::ModuliSet;
use crate::rns_barrett::RnsBarrettContext;

/// Upper bound on the number of moduli a selection may use.
pub const MAX_MODULI: usize = 512;

pub const MIN_WORD_BITS: u32 = 4;
pub const MAX_WORD_BITS: u32 = 62;

fn largest_coprime_at_most(limit: u64, chosen: &[u64]) -> Option<u64> {
    (2..=limit)
        .rev()
        .find(|m| chosen.iter().all(|c| c.gcd(m) == 1))
}

fn next_modulus(limit: u64, chosen: &mut Vec<u64>) -> Result<u64> {
    if chosen.len() >= MAX_MODULI {
        return Err(Error::SelectionFailed(format!(
            "more than {MAX_MODULI} moduli required"
        )));
    }
    let m = largest_coprime_at_most(limit, chosen)
        .ok_or_else(|| Error::SelectionFailed(format!("no coprime modulus left below {limit}")))?;
    chosen.push(m);
    Ok(m)
}

/// Picks moduli of at most `word_bits` bits and builds a context for `N`.
pub fn select(n: &BigUint, case: RangeCase, word_bits: u32) -> Result<RnsBarrettContext> {
    if *n < BigUint::from(2u32) {
        return Err(Error::InvalidModulus);
    }
    if !(MIN_WORD_BITS..=MAX_WORD_BITS).contains(&word_bits) {
        return Err(Error::SelectionFailed(format!(
            "word size must be between {MIN_WORD_BITS} and {MAX_WORD_BITS} bits"
        )));
    }
    let one = BigUint::from(1u32);
    if !case.g_condition_holds(n, &one) {
        return Err(Error::SelectionFailed(format!(
            "no G satisfies {} for N = {n}",
            case.g_condition_text()
        )));
    }
    let top = 1u64 << word_bits;
    let mut chosen = Vec::new();

    let mut g = one.clone();
    let mut g_moduli = Vec::new();
    loop {
        // largest m with g_factor * G * m < N
        let limit = (n - 1u32) / (&g * case.g_factor());
        let cap = limit.to_u64().map_or(top, |l| l.min(top));
        if cap < 2 {
            break;
        }
        match largest_coprime_at_most(cap, &chosen) {
            Some(m) => {
                chosen.push(m);
                g_moduli.push(m);
                g *= m;
            }
            None => break,
        }
    }

    let mut h = one;
    let mut h_moduli = Vec::new();
    while !case.product_condition_holds(n, &g, &h) {
        let m = next_modulus(top, &mut chosen)?;
        h_moduli.push(m);
        h *= m;
    }

    let mut product = &g * &h;
    let need = &h * n * case.capacity_factor();
    while product <= need {
        product *= next_modulus(top, &mut chosen)?;
    }

    let ms = ModuliSet::new(&chosen)?;
    let position = |m: &u64| {
        ms.moduli()
            .binary_search(m)
            .expect("chosen modulus is in the set")
    };
    let g_indices: Vec<usize> = g_moduli.iter().map(position).collect();
    let h_indices: Vec<usize> = h_moduli.iter().map(position).collect();
    RnsBarrettContext::new(&ms, n.clone(), &g_indices, &h_indices, case)
        .map_err(|e| Error::SelectionFailed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_valid(ctx: &RnsBarrettContext) {
        assert!(
            ctx.conditions().iter().all(|c| c.holds),
            "{:?}",
            ctx.conditions()
        );
    }

    #[test]
    fn small_modulus_case1() {
        let ctx = select(&21u32.into(), RangeCase::Case1, 4).unwrap();
        assert_valid(&ctx);
        assert!(ctx.moduli_set().moduli().iter().all(|&m| m <= 16));
    }

    #[test]
    fn tiny_modulus() {
        let ctx = select(&2u32.into(), RangeCase::Case1, 4).unwrap();
        assert_valid(&ctx);
        assert_eq!(ctx.params().g(), &BigUint::from(1u32));
        assert!(select(&2u32.into(), RangeCase::Case3, 8).is_err());
        assert!(select(&3u32.into(), RangeCase::Case4, 8).is_ok());
    }

    #[test]
    fn every_case_many_moduli() {
        for case in RangeCase::ALL {
            for n in [5u64, 21, 97, 1000, 65_537, 1 << 40, u64::MAX] {
                for bits in [8, 16, 30, 62] {
                    let ctx = select(&n.into(), case, bits).unwrap();
                    assert_valid(&ctx);
                }
            }
        }
    }

    #[test]
    fn large_prime_case2() {
        // 2^64 - 59 is prime
        let n = BigUint::from(18_446_744_073_709_551_557u64);
        let ctx = select(&n, RangeCase::Case2, 30).unwrap();
        assert_valid(&ctx);
        assert!(ctx.moduli_set().moduli().iter().all(|&m| m <= 1 << 30));
    }

    #[test]
    fn deterministic() {
        let n = BigUint::from(1_000_003u64);
        let a = select(&n, RangeCase::Case4, 12).unwrap();
        let b = select(&n, RangeCase::Case4, 12).unwrap();
        assert_eq!(a.moduli_set().moduli(), b.moduli_set().moduli());
        assert_eq!(a.g_indices(), b.g_indices());
        assert_eq!(a.h_indices(), b.h_indices());
    }

    #[test]
    fn word_size_too_small_for_modulus() {
        let n = BigUint::from(u64::MAX) * BigUint::from(u64::MAX);
        assert!(matches!(
            select(&n, RangeCase::Case1, 4),
            Err(Error::SelectionFailed(_))
        ));
        assert!(select(&21u32.into(), RangeCase::Case1, 3).is_err());
        assert!(select(&21u32.into(), RangeCase::Case1, 63).is_err());
    }
}
