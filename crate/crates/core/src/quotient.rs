//! Division by a product of moduli, carried out on residues only.
//!
//! For `M = M_I * M_II` with `M_I` the product of the divisor channels, the
//! quotient `Q = floor(X / M_I)` is below `M_II` and is therefore fixed by
//! its residues on the remaining channels. Each divisor modulus is peeled off
//! in turn with one subtraction and one multiplication by a precomputed
//! inverse per surviving channel.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::rns::{peel, ModuliSet, PartialResidueVector, ResidueVector};

/// A split of the channel indices into divisor channels (product `M_I`) and
/// remaining channels (product `M_II`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliPartition {
    set: ModuliSet,
    divisor: Vec<usize>,
    remaining: Vec<usize>,
}

impl ModuliPartition {
    /// `divisor_indices` must be a nonempty proper subset of the channels.
    /// Order and duplicates in the input are ignored.
    pub fn new(set: &ModuliSet, divisor_indices: &[usize]) -> Result<Self> {
        let mut divisor = divisor_indices.to_vec();
        divisor.sort_unstable();
        divisor.dedup();
        if let Some(&i) = divisor.iter().find(|&&i| i >= set.len()) {
            return Err(Error::IndexOutOfBounds(i));
        }
        if divisor.is_empty() {
            return Err(Error::InvalidPartition("divisor index set is empty".into()));
        }
        if divisor.len() == set.len() {
            return Err(Error::InvalidPartition(
                "divisor index set covers every channel".into(),
            ));
        }
        let remaining = (0..set.len())
            .filter(|i| divisor.binary_search(i).is_err())
            .collect();
        Ok(Self {
            set: set.clone(),
            divisor,
            remaining,
        })
    }

    pub fn moduli_set(&self) -> &ModuliSet {
        &self.set
    }

    pub fn divisor_indices(&self) -> &[usize] {
        &self.divisor
    }

    pub fn remaining_indices(&self) -> &[usize] {
        &self.remaining
    }

    /// `M_I`
    pub fn divisor(&self) -> BigUint {
        self.set.product_of(&self.divisor)
    }

    /// `M_II`
    pub fn remaining_product(&self) -> BigUint {
        self.set.product_of(&self.remaining)
    }
}

/// Residues of `floor(X / M_I)` on the partition's remaining channels.
pub fn quotient_by_moduli_product(
    x: &ResidueVector,
    part: &ModuliPartition,
) -> Result<PartialResidueVector> {
    if !x.moduli_set().same_as(&part.set) {
        return Err(Error::PartitionMismatch);
    }
    Ok(quotient_unchecked(x, part.divisor_indices()))
}

/// Peels `divisor` (ascending, nonempty, proper) off `x`. Shared with the
/// Barrett pipeline, which validates its index sets once at context build.
pub(crate) fn quotient_unchecked(x: &ResidueVector, divisor: &[usize]) -> PartialResidueVector {
    let set = x.moduli_set();
    let mut state = x.values().to_vec();
    let mut peeled = vec![false; set.len()];
    peel(set, &mut state, &mut peeled, divisor);
    let values = state
        .into_iter()
        .zip(peeled)
        .map(|(v, done)| (!done).then_some(v))
        .collect();
    PartialResidueVector::from_raw(set, values)
}
