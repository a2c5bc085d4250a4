//! Big-integer baselines: a direct-division oracle, the classic power-of-two
//! Barrett quotient and Montgomery multiplication.
//!
//! None of these share code with the residue pipeline; they exist to check
//! it and to benchmark against it.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `A * B mod N` by direct division.
pub fn oracle_modmul(a: &BigUint, b: &BigUint, n: &BigUint) -> BigUint {
    (a * b) % n
}

/// `X^E mod N` by plain square-and-multiply over big integers.
pub fn oracle_modexp(x: &BigUint, e: &BigUint, n: &BigUint) -> BigUint {
    let mut result = BigUint::one() % n;
    let mut base = x % n;
    for i in 0..e.bits() {
        if e.bit(i) {
            result = (&result * &base) % n;
        }
        base = (&base * &base) % n;
    }
    result
}

/// `floor(floor(X / 2^a) * mu / 2^b)` with `mu = floor(2^(a+b) / N)`, using
/// shifts only. Within 2 of `floor(X / N)` when `2^a < N`, `N^2 <= 2^(a+b)`
/// and `X < 2^(a+b)`.
pub fn classic_barrett_quotient(x: &BigUint, n: &BigUint, a_bits: u64, b_bits: u64) -> BigUint {
    let mu = (BigUint::one() << (a_bits + b_bits)) / n;
    ((x >> a_bits) * mu) >> b_bits
}

/// Montgomery reduction context for an odd-or-coprime modulus `N` and radix
/// `R > N`.
#[derive(Clone, Debug)]
pub struct Montgomery {
    n: BigUint,
    r: BigUint,
    /// `-N^{-1} mod R`
    n_prime: BigUint,
    /// `log2(R)` when `R` is a power of two.
    shift: Option<u64>,
}

impl Montgomery {
    pub fn new(n: &BigUint, r: &BigUint) -> Result<Self> {
        if r <= n || n.is_zero() {
            return Err(Error::ConditionViolation("R > N > 0".into()));
        }
        let inv = n
            .modinv(r)
            .ok_or_else(|| Error::NotCoprime(n.to_string(), r.to_string()))?;
        let n_prime = (r - inv) % r;
        let shift = (r.count_ones() == 1).then(|| r.bits() - 1);
        Ok(Self {
            n: n.clone(),
            r: r.clone(),
            n_prime,
            shift,
        })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn radix(&self) -> &BigUint {
        &self.r
    }

    fn mod_r(&self, x: &BigUint) -> BigUint {
        match self.shift {
            Some(s) => {
                let mask = (BigUint::one() << s) - 1u32;
                x & mask
            }
            None => x % &self.r,
        }
    }

    fn div_r(&self, x: &BigUint) -> BigUint {
        match self.shift {
            Some(s) => x >> s,
            None => x / &self.r,
        }
    }

    /// REDC of `A * B`: a value `< 2N` congruent to `A * B * R^{-1}`.
    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        let c = a * b;
        let d = self.mod_r(&(self.mod_r(&c) * &self.n_prime));
        let f = c + d * &self.n;
        self.div_r(&f)
    }

    /// `x * R mod N`
    pub fn to_montgomery(&self, x: &BigUint) -> BigUint {
        (x * &self.r) % &self.n
    }
}

/// One-shot Montgomery product `A * B * R^{-1} (mod N)` in `[0, 2N)`.
pub fn montgomery_modmul(a: &BigUint, b: &BigUint, n: &BigUint, r: &BigUint) -> Result<BigUint> {
    Ok(Montgomery::new(n, r)?.mul(a, b))
}
