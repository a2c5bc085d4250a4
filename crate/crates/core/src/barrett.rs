//! Barrett reduction with arbitrary scaling constants `G` and `H`.
//!
//! The quotient `floor(X / N)` is estimated as `floor(floor(X / G) * mu / H)`
//! with `mu = floor(G * H / N)`. Powers of two recover the classic algorithm;
//! other choices (in particular products of RNS moduli) let both divisions be
//! done exactly in residue arithmetic.
//!
//! | case | inputs      | output      | conditions                  | max error |
//! |------|-------------|-------------|-----------------------------|-----------|
//! | 1    | `[0, N)`    | `[0, 3N)`   | `G < N`, `N^2 <= GH`        | 2         |
//! | 2    | `[0, 3N)`   | `[0, 3N)`   | `G < N`, `9N^2 <= GH`       | 2         |
//! | 3    | `[0, N)`    | `[0, 2N)`   | `2G < N`, `2N^2 <= GH`      | 1         |
//! | 4    | `[0, 2N)`   | `[0, 2N)`   | `2G < N`, `8N^2 < GH`       | 1         |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Input/output range regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RangeCase {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl RangeCase {
    pub const ALL: [RangeCase; 4] = [Self::Case1, Self::Case2, Self::Case3, Self::Case4];

    pub fn number(self) -> u8 {
        match self {
            Self::Case1 => 1,
            Self::Case2 => 2,
            Self::Case3 => 3,
            Self::Case4 => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Self::Case1),
            2 => Some(Self::Case2),
            3 => Some(Self::Case3),
            4 => Some(Self::Case4),
            _ => None,
        }
    }

    /// Inputs lie in `[0, input_bound * N)`.
    pub fn input_bound(self) -> u32 {
        match self {
            Self::Case1 | Self::Case3 => 1,
            Self::Case2 => 3,
            Self::Case4 => 2,
        }
    }

    /// Outputs lie in `[0, output_bound * N)`.
    pub fn output_bound(self) -> u32 {
        match self {
            Self::Case1 | Self::Case2 => 3,
            Self::Case3 | Self::Case4 => 2,
        }
    }

    /// Largest possible `floor(X / N) - estimate`.
    pub fn max_quotient_error(self) -> u32 {
        self.output_bound() - 1
    }

    /// Whether outputs can be fed back as inputs.
    pub fn is_closed(self) -> bool {
        self.input_bound() == self.output_bound()
    }

    /// Multiplier `c` in the `c * N^2` lower bound on `G * H`.
    pub fn product_factor(self) -> u32 {
        match self {
            Self::Case1 => 1,
            Self::Case2 => 9,
            Self::Case3 => 2,
            Self::Case4 => 8,
        }
    }

    /// Whether `c * N^2 = G * H` is admissible.
    pub fn product_bound_inclusive(self) -> bool {
        !matches!(self, Self::Case4)
    }

    /// Multiplier `k` in the RNS capacity condition `k * H * N < M`.
    pub fn capacity_factor(self) -> u32 {
        match self {
            Self::Case1 => 1,
            Self::Case2 => 9,
            Self::Case3 => 2,
            Self::Case4 => 4,
        }
    }

    /// `G < N` for cases 1 and 2, `2G < N` for cases 3 and 4.
    pub fn g_factor(self) -> u32 {
        match self {
            Self::Case1 | Self::Case2 => 1,
            Self::Case3 | Self::Case4 => 2,
        }
    }

    pub(crate) fn g_condition_text(self) -> &'static str {
        match self.g_factor() {
            1 => "G < N",
            _ => "2*G < N",
        }
    }

    pub(crate) fn product_condition_text(self) -> String {
        let c = match self.product_factor() {
            1 => String::new(),
            c => format!("{c}*"),
        };
        let op = if self.product_bound_inclusive() {
            "<="
        } else {
            "<"
        };
        format!("{c}N^2 {op} G*H")
    }

    pub(crate) fn g_condition_holds(self, n: &BigUint, g: &BigUint) -> bool {
        g * self.g_factor() < *n
    }

    pub(crate) fn product_condition_holds(self, n: &BigUint, g: &BigUint, h: &BigUint) -> bool {
        let lhs = n * n * self.product_factor();
        let gh = g * h;
        if self.product_bound_inclusive() {
            lhs <= gh
        } else {
            lhs < gh
        }
    }
}

impl fmt::Display for RangeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for RangeCase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let s = s
            .strip_prefix("Case")
            .or_else(|| s.strip_prefix("case"))
            .unwrap_or(s);
        s.parse::<u8>()
            .ok()
            .and_then(Self::from_number)
            .ok_or_else(|| format!("unknown range case {s:?}"))
    }
}

/// Precomputed constants for one modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarrettParams {
    n: BigUint,
    g: BigUint,
    h: BigUint,
    mu: BigUint,
    case: RangeCase,
}

impl BarrettParams {
    pub fn new(n: BigUint, g: BigUint, h: BigUint, case: RangeCase) -> Result<Self> {
        if n < BigUint::from(2u32) {
            return Err(Error::InvalidModulus);
        }
        if g.is_zero() || h.is_zero() {
            return Err(Error::ConditionViolation("G and H must be positive".into()));
        }
        if !case.g_condition_holds(&n, &g) {
            return Err(Error::ConditionViolation(case.g_condition_text().into()));
        }
        if !case.product_condition_holds(&n, &g, &h) {
            return Err(Error::ConditionViolation(case.product_condition_text()));
        }
        let mu = (&g * &h) / &n;
        Ok(Self { n, g, h, mu, case })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn g(&self) -> &BigUint {
        &self.g
    }

    pub fn h(&self) -> &BigUint {
        &self.h
    }

    pub fn mu(&self) -> &BigUint {
        &self.mu
    }

    pub fn case(&self) -> RangeCase {
        self.case
    }

    /// `input_bound * N`
    pub fn input_limit(&self) -> BigUint {
        &self.n * self.case.input_bound()
    }

    /// `output_bound * N`
    pub fn output_limit(&self) -> BigUint {
        &self.n * self.case.output_bound()
    }

    /// Quotient estimate `floor(floor(X / G) * mu / H)`.
    ///
    /// `X` must be below both `input_bound^2 * N^2` and `G * H`; the error
    /// bound is only guaranteed there.
    pub fn estimate_quotient(&self, x: &BigUint) -> BigUint {
        self.steps(x).q
    }

    fn steps(&self, x: &BigUint) -> BarrettSteps {
        debug_assert!(*x < &self.g * &self.h);
        let d = if self.g.is_one() {
            x.clone()
        } else {
            x / &self.g
        };
        let e = &d * &self.mu;
        let q = &e / &self.h;
        // the estimate never exceeds floor(X / N)
        let c = x - &q * &self.n;
        BarrettSteps {
            x: x.clone(),
            d,
            e,
            q,
            c,
        }
    }

    /// `A * B mod N` up to at most `output_bound - 1` extra multiples of `N`.
    pub fn modmul(&self, a: &BigUint, b: &BigUint) -> Result<BigUint> {
        self.modmul_steps(a, b).map(|s| s.c)
    }

    /// Runs the full pipeline and returns every intermediate value.
    pub fn modmul_steps(&self, a: &BigUint, b: &BigUint) -> Result<BarrettSteps> {
        let limit = self.input_limit();
        for v in [a, b] {
            if *v >= limit {
                return Err(Error::InputOutOfRange {
                    value: v.to_string(),
                    bound: limit.to_string(),
                });
            }
        }
        let steps = self.steps(&(a * b));
        debug_assert!(steps.c < self.output_limit());
        Ok(steps)
    }
}

/// Intermediate values of one reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarrettSteps {
    /// `A * B`
    pub x: BigUint,
    /// `floor(X / G)`
    pub d: BigUint,
    /// `D * mu`
    pub e: BigUint,
    /// `floor(E / H)`
    pub q: BigUint,
    /// `X - Q * N`
    pub c: BigUint,
}

/// Brings `c < 3N` into `[0, N)` with at most two subtractions.
pub fn final_correct(c: &BigUint, n: &BigUint) -> BigUint {
    let mut c = c.clone();
    for _ in 0..2 {
        if c >= *n {
            c -= n;
        }
    }
    debug_assert!(c < *n, "input was not below 3N");
    c
}
