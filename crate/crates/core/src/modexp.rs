//! Modular exponentiation built on the residue Barrett multiplication.
//!
//! Exponent bits are scanned from `e_0` upward; the base is squared once per
//! bit after the first and multiplied into the accumulator when the bit is
//! set. Every multiplication stays in residues and returns `X^E mod N`
//! directly, with no domain conversion.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::rns::ResidueVector;
use crate::rns_barrett::RnsBarrettContext;

/// Residues of some `Y = X^E (mod N)` with `Y < output_bound * N`.
///
/// The context must use a closed range case (2 or 4) so that each product
/// can be fed back in; `x` must decode below `input_bound * N`.
pub fn bmm_modexp(
    x: &ResidueVector,
    exponent: &BigUint,
    ctx: &RnsBarrettContext,
) -> Result<ResidueVector> {
    bmm_modexp_observed(x, exponent, ctx, |_| {})
}

/// [`bmm_modexp`] calling `observe` on the result of every multiplication.
pub fn bmm_modexp_observed(
    x: &ResidueVector,
    exponent: &BigUint,
    ctx: &RnsBarrettContext,
    mut observe: impl FnMut(&ResidueVector),
) -> Result<ResidueVector> {
    let case = ctx.case();
    if !case.is_closed() {
        return Err(Error::CaseMismatch(case.number()));
    }
    if !x.moduli_set().same_as(ctx.moduli_set()) {
        return Err(Error::ContextMismatch);
    }
    let limit = ctx.params().input_limit();
    let value = x.decode();
    if value >= limit {
        return Err(Error::InputOutOfRange {
            value: value.to_string(),
            bound: limit.to_string(),
        });
    }

    let bits = exponent.bits();
    let mut base = x.clone();
    let mut acc = if exponent.bit(0) {
        base.clone()
    } else {
        ctx.moduli_set().one()
    };
    for j in 1..bits {
        base = ctx.bmm(&base, &base)?;
        observe(&base);
        debug_assert!(base.decode() < ctx.params().output_limit());
        if exponent.bit(j) {
            acc = ctx.bmm(&acc, &base)?;
            observe(&acc);
            debug_assert!(acc.decode() < ctx.params().output_limit());
        }
    }
    Ok(acc)
}

/// Decodes `y` and reduces it into `[0, N)`.
pub fn final_result(y: &ResidueVector, ctx: &RnsBarrettContext) -> BigUint {
    let n = ctx.modulus();
    let mut v = y.decode();
    for _ in 1..ctx.case().output_bound() {
        if v >= *n {
            v -= n;
        }
    }
    debug_assert!(v < *n);
    v
}
