//! Base extension without CRT reconstruction.
//!
//! The unknown channels are seeded with arbitrary values and carried through
//! the same peeling iteration as the known ones. After every known modulus
//! has been peeled, an unknown channel holds `Q = (X' - X) / P` for the
//! product `P` of the known moduli, where `X'` is whatever integer the seeded
//! vector happened to encode. Subtracting `Q * P` recovers `X` on that
//! channel, so the seed drops out.
//!
//! The caller must guarantee `X < P`; that cannot be detected from the
//! residues.

use crate::error::{Error, Result};
use crate::rns::{mul_mod, peel, sub_mod, PartialResidueVector, ResidueVector};

/// Result of an extension together with the digits peeled on the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseExtension {
    pub residues: ResidueVector,
    /// Mixed-radix digits of `X` over the known moduli, in ascending channel
    /// order.
    pub digits: Vec<u64>,
}

/// Fills in the unknown channels of `x`, seeding them with zeros.
pub fn base_extend(x: &PartialResidueVector) -> Result<ResidueVector> {
    let seed = vec![0; x.moduli_set().len()];
    base_extend_traced(x, &seed).map(|ext| ext.residues)
}

/// Same as [`base_extend`] with caller-chosen seeds for the unknown
/// channels. `seed[i]` is ignored on known channels. The output does not
/// depend on the seed.
pub fn base_extend_seeded(x: &PartialResidueVector, seed: &[u64]) -> Result<ResidueVector> {
    base_extend_traced(x, seed).map(|ext| ext.residues)
}

pub fn base_extend_traced(x: &PartialResidueVector, seed: &[u64]) -> Result<BaseExtension> {
    let set = x.moduli_set();
    let moduli = set.moduli();
    let n = set.len();
    if seed.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: seed.len(),
        });
    }
    let known = x.known_indices();
    if known.is_empty() {
        return Err(Error::EmptyKnownSet);
    }

    let mut initial = Vec::with_capacity(n);
    for (i, (&v, &m)) in x.values().iter().zip(moduli).enumerate() {
        match v {
            Some(v) => initial.push(v),
            None if seed[i] < m => initial.push(seed[i]),
            None => {
                return Err(Error::ResidueOutOfRange {
                    index: i,
                    value: seed[i],
                    modulus: m,
                })
            }
        }
    }

    let mut state = initial.clone();
    let mut peeled = vec![false; n];
    let digits = peel(set, &mut state, &mut peeled, &known);

    let mut out = initial;
    for i in 0..n {
        if x.values()[i].is_some() {
            continue;
        }
        let m = moduli[i];
        // P mod M_i, the product of every peeled modulus.
        let p = known
            .iter()
            .fold(1 % m, |acc, &k| mul_mod(acc, moduli[k] % m, m));
        out[i] = sub_mod(out[i], mul_mod(state[i], p, m), m);
    }

    Ok(BaseExtension {
        residues: ResidueVector::from_raw(set, out),
        digits,
    })
}
