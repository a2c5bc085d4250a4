//! Moduli sets, residue vectors and the channel-wise arithmetic on them.
//!
//! A [`ModuliSet`] owns every per-set table (CRT weights, cofactors and the
//! pairwise inverse table) and is cheap to clone: clones share one immutable
//! allocation. Channel indices in this crate are zero-based.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Computes `a^{-1} mod m` with the extended Euclidean algorithm.
pub fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(m)) as u64)
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) + u128::from(b)) % u128::from(m)) as u64
}

/// `(a - b) mod m` for `a < m` and arbitrary `b`.
#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    let b = b % m;
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

/// `big mod m` without allocating.
pub(crate) fn big_mod_u64(x: &BigUint, m: u64) -> u64 {
    let m128 = u128::from(m);
    x.iter_u32_digits()
        .rev()
        .fold(0u128, |acc, d| ((acc << 32) | u128::from(d)) % m128) as u64
}

struct Tables {
    moduli: Vec<u64>,
    product: BigUint,
    /// `M / M_i`
    cofactors: Vec<BigUint>,
    /// `A_i` with `A_i * (M / M_i) = 1 (mod M_i)`
    crt_weights: Vec<u64>,
    /// `inverses[k][i] = M_k^{-1} mod M_i` for `k != i`; zero on the diagonal.
    inverses: Vec<Vec<u64>>,
}

/// An ascending list of pairwise-coprime moduli `M_1 < ... < M_n` and the
/// ring `Z(M)` with `M = M_1 * ... * M_n`.
#[derive(Clone)]
pub struct ModuliSet(Arc<Tables>);

impl ModuliSet {
    /// Validates and sorts `moduli`, then precomputes the CRT and inverse
    /// tables.
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::EmptyModuli);
        }
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::ModulusTooSmall(m));
        }
        let mut moduli = moduli.to_vec();
        moduli.sort_unstable();
        for (i, &a) in moduli.iter().enumerate() {
            for &b in &moduli[i + 1..] {
                if a.gcd(&b) != 1 {
                    return Err(Error::DuplicateOrNonCoprime(a, b));
                }
            }
        }

        let n = moduli.len();
        let product = moduli
            .iter()
            .fold(BigUint::one(), |acc, &m| acc * BigUint::from(m));
        let cofactors: Vec<BigUint> = moduli.iter().map(|&m| &product / m).collect();
        let crt_weights = moduli
            .iter()
            .zip(&cofactors)
            .map(|(&m, c)| inv_mod_u64(big_mod_u64(c, m), m).expect("moduli are coprime"))
            .collect();
        let inverses = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| {
                        if i == k {
                            0
                        } else {
                            inv_mod_u64(moduli[k], moduli[i]).expect("moduli are coprime")
                        }
                    })
                    .collect()
            })
            .collect();

        Ok(Self(Arc::new(Tables {
            moduli,
            product,
            cofactors,
            crt_weights,
            inverses,
        })))
    }

    pub fn moduli(&self) -> &[u64] {
        &self.0.moduli
    }

    pub fn len(&self) -> usize {
        self.0.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.moduli.is_empty()
    }

    /// The dynamic range `M`.
    pub fn product(&self) -> &BigUint {
        &self.0.product
    }

    /// Product of the moduli at `indices`.
    pub fn product_of(&self, indices: &[usize]) -> BigUint {
        indices.iter().fold(BigUint::one(), |acc, &i| {
            acc * BigUint::from(self.0.moduli[i])
        })
    }

    /// CRT weight `A_i`, the inverse of `M / M_i` modulo `M_i`.
    pub fn crt_weight(&self, i: usize) -> u64 {
        self.0.crt_weights[i]
    }

    /// `M / M_i`.
    pub fn cofactor(&self, i: usize) -> &BigUint {
        &self.0.cofactors[i]
    }

    /// `M_k^{-1} mod M_i`; `k` and `i` must differ.
    #[inline]
    pub fn inverse(&self, k: usize, i: usize) -> u64 {
        debug_assert_ne!(k, i);
        self.0.inverses[k][i]
    }

    pub fn same_as(&self, other: &ModuliSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.moduli == other.0.moduli
    }

    /// Residues of `x`; fails when `x >= M`.
    pub fn encode(&self, x: &BigUint) -> Result<ResidueVector> {
        if x >= self.product() {
            return Err(Error::OutOfRange {
                bound: self.product().to_string(),
            });
        }
        Ok(self.encode_unchecked(x))
    }

    pub(crate) fn encode_unchecked(&self, x: &BigUint) -> ResidueVector {
        let values = self.moduli().iter().map(|&m| big_mod_u64(x, m)).collect();
        ResidueVector {
            set: self.clone(),
            values,
        }
    }

    pub fn encode_u64(&self, x: u64) -> Result<ResidueVector> {
        self.encode(&BigUint::from(x))
    }

    pub fn zero(&self) -> ResidueVector {
        ResidueVector {
            set: self.clone(),
            values: vec![0; self.len()],
        }
    }

    /// The all-ones vector, i.e. the residues of 1.
    pub fn one(&self) -> ResidueVector {
        ResidueVector {
            set: self.clone(),
            values: vec![1; self.len()],
        }
    }

    /// Reconstructs an integer below `M` from its residues by CRT.
    pub fn decode(&self, rv: &ResidueVector) -> BigUint {
        let sum = rv
            .values
            .iter()
            .enumerate()
            .fold(BigUint::zero(), |acc, (i, &x)| {
                let term = mul_mod(x, self.0.crt_weights[i], self.0.moduli[i]);
                acc + &self.0.cofactors[i] * term
            });
        sum % self.product()
    }

    /// Reconstructs from residues on a subset of channels by CRT over just
    /// those moduli.
    pub fn decode_partial(&self, prv: &PartialResidueVector) -> BigUint {
        let known = prv.known_indices();
        let sub: Vec<u64> = known.iter().map(|&i| self.0.moduli[i]).collect();
        let sub_set = ModuliSet::new(&sub).expect("subset of a valid moduli set");
        let values = known.iter().map(|&i| prv.values[i].unwrap()).collect();
        sub_set.decode(&ResidueVector {
            set: sub_set.clone(),
            values,
        })
    }
}

impl PartialEq for ModuliSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for ModuliSet {}

impl fmt::Debug for ModuliSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuliSet")
            .field("moduli", &self.0.moduli)
            .field("product", &self.0.product)
            .finish()
    }
}

/// Peels the channels listed in `order` off `state`, one modulus at a time.
///
/// On entry `state` holds residues of some integer `X` on every channel that
/// is not yet marked in `peeled`. Each step takes `R = state[p]` and divides
/// out `M_p`: every unpeeled channel becomes `(state[i] - R) * M_p^{-1}`.
/// Returns the peeled digits `R`, which are the mixed-radix digits of `X`
/// with respect to the moduli in `order`.
pub(crate) fn peel(
    set: &ModuliSet,
    state: &mut [u64],
    peeled: &mut [bool],
    order: &[usize],
) -> Vec<u64> {
    let moduli = set.moduli();
    let mut digits = Vec::with_capacity(order.len());
    for &p in order {
        debug_assert!(!peeled[p]);
        let r = state[p];
        peeled[p] = true;
        for i in 0..moduli.len() {
            if peeled[i] {
                continue;
            }
            let m = moduli[i];
            state[i] = mul_mod(sub_mod(state[i], r, m), set.inverse(p, i), m);
        }
        digits.push(r);
    }
    digits
}

/// Residues `X_i = X mod M_i` of an integer in `Z(M)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ResidueVector {
    set: ModuliSet,
    values: Vec<u64>,
}

impl ResidueVector {
    pub fn from_residues(set: &ModuliSet, values: Vec<u64>) -> Result<Self> {
        if values.len() != set.len() {
            return Err(Error::LengthMismatch {
                expected: set.len(),
                got: values.len(),
            });
        }
        for (i, (&v, &m)) in values.iter().zip(set.moduli()).enumerate() {
            if v >= m {
                return Err(Error::ResidueOutOfRange {
                    index: i,
                    value: v,
                    modulus: m,
                });
            }
        }
        Ok(Self {
            set: set.clone(),
            values,
        })
    }

    pub(crate) fn from_raw(set: &ModuliSet, values: Vec<u64>) -> Self {
        debug_assert!(values.iter().zip(set.moduli()).all(|(v, m)| v < m));
        Self {
            set: set.clone(),
            values,
        }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn moduli_set(&self) -> &ModuliSet {
        &self.set
    }

    pub fn decode(&self) -> BigUint {
        self.set.decode(self)
    }

    /// Mixed-radix digits obtained by peeling every modulus in ascending
    /// order; no CRT reconstruction is involved.
    pub fn to_mixed_radix(&self) -> MixedRadixDigits {
        let mut state = self.values.clone();
        let mut peeled = vec![false; self.set.len()];
        let order: Vec<usize> = (0..self.set.len()).collect();
        let digits = peel(&self.set, &mut state, &mut peeled, &order);
        MixedRadixDigits {
            set: self.set.clone(),
            digits,
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64, u64) -> u64) -> Result<Self> {
        if !self.set.same_as(&other.set) {
            return Err(Error::SetMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .zip(self.set.moduli())
            .map(|((&a, &b), &m)| f(a, b, m))
            .collect();
        Ok(Self {
            set: self.set.clone(),
            values,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, add_mod)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, sub_mod)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, mul_mod)
    }

    /// Restricts to the channels in `indices`.
    pub fn restrict(&self, indices: &[usize]) -> Result<PartialResidueVector> {
        let pairs = indices
            .iter()
            .map(|&i| {
                self.values
                    .get(i)
                    .map(|&v| (i, v))
                    .ok_or(Error::IndexOutOfBounds(i))
            })
            .collect::<Result<Vec<_>>>()?;
        PartialResidueVector::from_pairs(&self.set, pairs)
    }
}

impl fmt::Debug for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueVector{}", self)
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Residues known on a nonempty subset of channels. Unknown channels are
/// `None` and print as `*`.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialResidueVector {
    set: ModuliSet,
    values: Vec<Option<u64>>,
}

impl PartialResidueVector {
    /// Builds from `(channel, residue)` pairs.
    pub fn from_pairs(
        set: &ModuliSet,
        pairs: impl IntoIterator<Item = (usize, u64)>,
    ) -> Result<Self> {
        let mut values = vec![None; set.len()];
        for (i, v) in pairs {
            let m = *set.moduli().get(i).ok_or(Error::IndexOutOfBounds(i))?;
            if v >= m {
                return Err(Error::ResidueOutOfRange {
                    index: i,
                    value: v,
                    modulus: m,
                });
            }
            values[i] = Some(v);
        }
        if values.iter().all(Option::is_none) {
            return Err(Error::EmptyKnownSet);
        }
        Ok(Self {
            set: set.clone(),
            values,
        })
    }

    pub(crate) fn from_raw(set: &ModuliSet, values: Vec<Option<u64>>) -> Self {
        Self {
            set: set.clone(),
            values,
        }
    }

    pub fn moduli_set(&self) -> &ModuliSet {
        &self.set
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.values.get(i).copied().flatten()
    }

    pub fn values(&self) -> &[Option<u64>] {
        &self.values
    }

    pub fn known_indices(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|_| i))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    /// Product of the moduli on the known channels.
    pub fn known_product(&self) -> BigUint {
        self.set.product_of(&self.known_indices())
    }

    pub fn to_complete(&self) -> Option<ResidueVector> {
        let values = self.values.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(ResidueVector {
            set: self.set.clone(),
            values,
        })
    }
}

impl From<ResidueVector> for PartialResidueVector {
    fn from(rv: ResidueVector) -> Self {
        Self {
            values: rv.values.into_iter().map(Some).collect(),
            set: rv.set,
        }
    }
}

impl fmt::Debug for PartialResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialResidueVector{}", self)
    }
}

impl fmt::Display for PartialResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match v {
                Some(v) => write!(f, "{v}")?,
                None => write!(f, "*")?,
            }
        }
        write!(f, ")")
    }
}

/// Digits `Y_i` with `X = Y_1 + Y_2*M_1 + ... + Y_n*(M_1*...*M_{n-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRadixDigits {
    set: ModuliSet,
    digits: Vec<u64>,
}

impl MixedRadixDigits {
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn moduli_set(&self) -> &ModuliSet {
        &self.set
    }

    /// Evaluates the positional sum.
    pub fn value(&self) -> BigUint {
        self.digits
            .iter()
            .zip(self.set.moduli())
            .rev()
            .fold(BigUint::zero(), |acc, (&y, &m)| acc * m + y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex4() -> ModuliSet {
        ModuliSet::new(&[4, 5, 7, 11]).unwrap()
    }

    #[test]
    fn builds_example_set() {
        let ms = ex4();
        assert_eq!(ms.product(), &BigUint::from(1540u32));
        assert_eq!(
            ModuliSet::new(&[2]).unwrap().product(),
            &BigUint::from(2u32)
        );
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(
            ModuliSet::new(&[6, 10]).unwrap_err(),
            Error::DuplicateOrNonCoprime(6, 10)
        );
        assert_eq!(
            ModuliSet::new(&[7, 7]).unwrap_err(),
            Error::DuplicateOrNonCoprime(7, 7)
        );
        assert_eq!(
            ModuliSet::new(&[5, 1]).unwrap_err(),
            Error::ModulusTooSmall(1)
        );
        assert_eq!(ModuliSet::new(&[]).unwrap_err(), Error::EmptyModuli);
    }

    #[test]
    fn sorts_input() {
        let ms = ModuliSet::new(&[11, 4, 7, 5]).unwrap();
        assert_eq!(ms.moduli(), &[4, 5, 7, 11]);
    }

    #[test]
    fn encodes_example_values() {
        let ms = ex4();
        assert_eq!(ms.encode_u64(20).unwrap().values(), &[0, 0, 6, 9]);
        assert_eq!(ms.encode_u64(380).unwrap().values(), &[0, 0, 2, 6]);
        assert_eq!(ms.encode_u64(0).unwrap().values(), &[0, 0, 0, 0]);
        assert!(matches!(ms.encode_u64(1540), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn decodes_example_values() {
        let ms = ex4();
        let c = ResidueVector::from_residues(&ms, vec![3, 3, 2, 1]).unwrap();
        assert_eq!(c.decode(), BigUint::from(23u32));
        let q = ResidueVector::from_residues(&ms, vec![1, 2, 3, 6]).unwrap();
        assert_eq!(q.decode(), BigUint::from(17u32));
        assert_eq!(ms.zero().decode(), BigUint::zero());
    }

    #[test]
    fn rejects_unreduced_residues() {
        let ms = ex4();
        assert!(ResidueVector::from_residues(&ms, vec![4, 0, 0, 0]).is_err());
        assert!(ResidueVector::from_residues(&ms, vec![0, 0, 0]).is_err());
    }

    #[test]
    fn mixed_radix_digits() {
        let ms = ex4();
        assert_eq!(
            ms.encode_u64(19).unwrap().to_mixed_radix().digits(),
            &[3, 4, 0, 0]
        );
        assert_eq!(
            ms.encode_u64(1539).unwrap().to_mixed_radix().digits(),
            &[3, 4, 6, 10]
        );
        assert_eq!(ms.zero().to_mixed_radix().digits(), &[0, 0, 0, 0]);
    }

    #[test]
    fn channel_arithmetic() {
        let ms = ex4();
        let a = ms.encode_u64(20).unwrap();
        let b = ResidueVector::from_residues(&ms, vec![3, 4, 5, 8]).unwrap();
        assert_eq!(a.mul(&b).unwrap().values(), &[0, 0, 2, 6]);
        assert_eq!(a.add(&ms.zero()).unwrap(), a);
        let c = ResidueVector::from_residues(&ms, vec![3, 3, 2, 1]).unwrap();
        assert_eq!(c.sub(&c).unwrap(), ms.zero());
    }

    #[test]
    fn set_mismatch() {
        let a = ex4().encode_u64(3).unwrap();
        let b = ModuliSet::new(&[3, 5, 7, 11])
            .unwrap()
            .encode_u64(3)
            .unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::SetMismatch);
    }

    #[test]
    fn exhaustive_round_trip_small_set() {
        let ms = ModuliSet::new(&[7, 9, 10, 11, 13]).unwrap();
        let m = 7 * 9 * 10 * 11 * 13;
        for x in 0..m {
            let rv = ms.encode_u64(x).unwrap();
            assert_eq!(rv.decode(), BigUint::from(x));
            let mr = rv.to_mixed_radix();
            assert_eq!(mr.value(), BigUint::from(x));
        }
    }

    #[test]
    fn crt_weights_invert_cofactors() {
        let ms = ModuliSet::new(&[3, 4, 5, 7, 11, 13, 4_294_967_291]).unwrap();
        for (i, &m) in ms.moduli().iter().enumerate() {
            let c = big_mod_u64(ms.cofactor(i), m);
            assert_eq!(mul_mod(ms.crt_weight(i), c, m), 1);
        }
    }

    #[test]
    fn partial_display() {
        let ms = ex4();
        let p = PartialResidueVector::from_pairs(&ms, [(2, 5), (3, 8)]).unwrap();
        assert_eq!(p.to_string(), "(* * 5 8)");
        assert_eq!(p.known_indices(), vec![2, 3]);
        assert_eq!(ms.decode_partial(&p), BigUint::from(19u32));
        assert_eq!(
            PartialResidueVector::from_pairs(&ms, []).unwrap_err(),
            Error::EmptyKnownSet
        );
    }

    #[test]
    fn inverse_helper() {
        assert_eq!(inv_mod_u64(3, 7), Some(5));
        assert_eq!(inv_mod_u64(4, 8), None);
        assert_eq!(inv_mod_u64(21, 32), Some(29));
    }
}
