//! Shared operands and contexts for the benchmarks.

use num_bigint::BigUint;
use rns_barrett::reference::Montgomery;
use rns_barrett::report::sample_operands;
use rns_barrett::{select, BarrettParams, RangeCase, ResidueVector, Result, RnsBarrettContext};

pub const SIZES: [u64; 3] = [64, 128, 256];

/// One modulus with its operands prepared for every routine.
pub struct Fixture {
    pub bits: u64,
    pub n: BigUint,
    pub a: BigUint,
    pub b: BigUint,
    pub params: BarrettParams,
    pub ctx: RnsBarrettContext,
    pub ra: ResidueVector,
    pub rb: ResidueVector,
    pub montgomery: Montgomery,
}

impl Fixture {
    pub fn new(bits: u64, word_bits: u32) -> Result<Self> {
        let (n, a, b) = sample_operands(bits);
        let ctx = select(&n, RangeCase::Case1, word_bits)?;
        let ra = ctx.encode_operand(&a)?;
        let rb = ctx.encode_operand(&b)?;
        let montgomery = Montgomery::new(&n, &(BigUint::from(1u32) << bits))?;
        Ok(Self {
            bits,
            params: ctx.params().clone(),
            n,
            a,
            b,
            ctx,
            ra,
            rb,
            montgomery,
        })
    }
}
