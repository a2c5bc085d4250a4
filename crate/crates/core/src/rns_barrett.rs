//! Barrett modular multiplication carried out entirely on residues.
//!
//! `G` and `H` are chosen as products of moduli of the RNS, so both
//! divisions of the Barrett estimate become exact residue quotients followed
//! by a base extension back to the full moduli set:
//!
//! 1. `mu = floor(G*H / N)` is encoded once, at context construction.
//! 2. `X = A * B` channel-wise.
//! 3. `D = floor(X / G)` on the channels outside `G`, then extended.
//! 4. `E = D * mu` channel-wise.
//! 5. `Q = floor(E / H)` on the channels outside `H`, then extended.
//! 6. `C = X - Q * N` channel-wise.
//!
//! The result is the same representative `C` the scalar algorithm produces
//! with the same `(N, G, H)`, not merely a congruent value.

use std::fmt;

use num_bigint::BigUint;

use crate::barrett::{BarrettParams, RangeCase};
use crate::bex::base_extend;
use crate::error::{Error, Result};
use crate::quotient::quotient_unchecked;
use crate::rns::{mul_mod, sub_mod, ModuliSet, PartialResidueVector, ResidueVector};

/// One validity condition of a context and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub label: String,
    pub holds: bool,
}

/// Evaluates the five context conditions for a range case: the `G*H`
/// product bound, the `G` bound, `G | M`, `H | M` and the capacity bound
/// `k * H * N < M` that keeps every intermediate of the pipeline below `M`.
///
/// Index sets are zero-based; out-of-range or repeated indices make the
/// corresponding divisibility condition fail.
pub fn check_conditions(
    ms: &ModuliSet,
    n: &BigUint,
    g_indices: &[usize],
    h_indices: &[usize],
    case: RangeCase,
) -> Vec<ConditionCheck> {
    let valid_subset = |idx: &[usize]| {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == idx.len() && idx.iter().all(|&i| i < ms.len())
    };
    let g_ok = valid_subset(g_indices);
    let h_ok = valid_subset(h_indices);
    let g = if g_ok {
        ms.product_of(g_indices)
    } else {
        BigUint::from(0u32)
    };
    let h = if h_ok {
        ms.product_of(h_indices)
    } else {
        BigUint::from(0u32)
    };
    let k = case.capacity_factor();
    let capacity_label = match k {
        1 => "H*N < M".to_string(),
        k => format!("{k}*H*N < M"),
    };
    vec![
        ConditionCheck {
            label: case.product_condition_text(),
            holds: g_ok && h_ok && case.product_condition_holds(n, &g, &h),
        },
        ConditionCheck {
            label: case.g_condition_text().to_string(),
            holds: g_ok && case.g_condition_holds(n, &g),
        },
        ConditionCheck {
            label: "G | M".to_string(),
            holds: g_ok,
        },
        ConditionCheck {
            label: "H | M".to_string(),
            holds: h_ok && !h_indices.is_empty(),
        },
        ConditionCheck {
            label: capacity_label,
            holds: h_ok && &h * n * k < *ms.product(),
        },
    ]
}

/// The channels whose moduli multiply to `value`, if there are any. With
/// pairwise-coprime moduli such a subset is unique.
fn indices_for(ms: &ModuliSet, value: &BigUint) -> Option<Vec<usize>> {
    let idx: Vec<usize> = (0..ms.len())
        .filter(|&i| (value % ms.moduli()[i]) == BigUint::from(0u32))
        .collect();
    (ms.product_of(&idx) == *value).then_some(idx)
}

/// Everything needed to run the residue pipeline for one modulus `N`.
#[derive(Clone, Debug)]
pub struct RnsBarrettContext {
    ms: ModuliSet,
    params: BarrettParams,
    g_indices: Vec<usize>,
    h_indices: Vec<usize>,
    mu_rv: ResidueVector,
    n_rv: ResidueVector,
}

impl RnsBarrettContext {
    /// `g_indices` and `h_indices` are zero-based channel sets with
    /// products `G` and `H`. They may overlap; `g_indices` may be empty
    /// (`G = 1`).
    pub fn new(
        ms: &ModuliSet,
        n: BigUint,
        g_indices: &[usize],
        h_indices: &[usize],
        case: RangeCase,
    ) -> Result<Self> {
        if n < BigUint::from(2u32) {
            return Err(Error::InvalidModulus);
        }
        let checks = check_conditions(ms, &n, g_indices, h_indices, case);
        if let Some(failed) = checks.iter().find(|c| !c.holds) {
            return Err(Error::ConditionViolation(failed.label.clone()));
        }
        let mut g_indices = g_indices.to_vec();
        let mut h_indices = h_indices.to_vec();
        g_indices.sort_unstable();
        h_indices.sort_unstable();
        let params = BarrettParams::new(
            n.clone(),
            ms.product_of(&g_indices),
            ms.product_of(&h_indices),
            case,
        )?;
        // capacity puts N and mu below M
        let mu_rv = ms.encode(params.mu())?;
        let n_rv = ms.encode(&n)?;
        Ok(Self {
            ms: ms.clone(),
            params,
            g_indices,
            h_indices,
            mu_rv,
            n_rv,
        })
    }

    /// Builds a context from the values of `G` and `H`, each of which must
    /// be the product of some subset of the moduli.
    pub fn with_constants(
        ms: &ModuliSet,
        n: BigUint,
        g: &BigUint,
        h: &BigUint,
        case: RangeCase,
    ) -> Result<Self> {
        let g_indices =
            indices_for(ms, g).ok_or_else(|| Error::ConditionViolation("G | M".into()))?;
        let h_indices =
            indices_for(ms, h).ok_or_else(|| Error::ConditionViolation("H | M".into()))?;
        Self::new(ms, n, &g_indices, &h_indices, case)
    }

    pub fn moduli_set(&self) -> &ModuliSet {
        &self.ms
    }

    pub fn params(&self) -> &BarrettParams {
        &self.params
    }

    pub fn modulus(&self) -> &BigUint {
        self.params.modulus()
    }

    pub fn case(&self) -> RangeCase {
        self.params.case()
    }

    pub fn g_indices(&self) -> &[usize] {
        &self.g_indices
    }

    pub fn h_indices(&self) -> &[usize] {
        &self.h_indices
    }

    pub fn mu_residues(&self) -> &ResidueVector {
        &self.mu_rv
    }

    pub fn n_residues(&self) -> &ResidueVector {
        &self.n_rv
    }

    pub fn conditions(&self) -> Vec<ConditionCheck> {
        check_conditions(
            &self.ms,
            self.modulus(),
            &self.g_indices,
            &self.h_indices,
            self.case(),
        )
    }

    /// Encodes an operand, rejecting values at or above `input_bound * N`.
    pub fn encode_operand(&self, x: &BigUint) -> Result<ResidueVector> {
        let limit = self.params.input_limit();
        if *x >= limit {
            return Err(Error::InputOutOfRange {
                value: x.to_string(),
                bound: limit.to_string(),
            });
        }
        self.ms.encode(x)
    }

    /// Residues of `C = A * B - Q * N` with `C < output_bound * N`.
    ///
    /// Decoded inputs must lie below `input_bound * N`; that is a caller
    /// contract, checked only in debug builds.
    pub fn bmm(&self, a: &ResidueVector, b: &ResidueVector) -> Result<ResidueVector> {
        self.trace_bmm(a, b).map(|t| t.c)
    }

    /// Like [`bmm`](Self::bmm), keeping every intermediate vector.
    pub fn trace_bmm(&self, a: &ResidueVector, b: &ResidueVector) -> Result<StepTrace> {
        if !a.moduli_set().same_as(&self.ms) || !b.moduli_set().same_as(&self.ms) {
            return Err(Error::ContextMismatch);
        }
        debug_assert!(a.decode() < self.params.input_limit());
        debug_assert!(b.decode() < self.params.input_limit());

        let x = a.mul(b)?;
        // D < M / G as X < M
        let d_partial = if self.g_indices.is_empty() {
            PartialResidueVector::from(x.clone())
        } else {
            quotient_unchecked(&x, &self.g_indices)
        };
        let d = base_extend(&d_partial)?;
        let e = d.mul(&self.mu_rv)?;
        // Q < M / H as E < M
        let q_partial = quotient_unchecked(&e, &self.h_indices);
        let q = base_extend(&q_partial)?;
        let values = x
            .values()
            .iter()
            .zip(q.values())
            .zip(self.n_rv.values())
            .zip(self.ms.moduli())
            .map(|(((&x, &q), &n), &m)| sub_mod(x, mul_mod(q, n, m), m))
            .collect();
        let c = ResidueVector::from_raw(&self.ms, values);

        let trace = StepTrace {
            mu: self.mu_rv.clone(),
            x,
            d_partial,
            d,
            e,
            q_partial,
            q,
            c,
        };
        #[cfg(debug_assertions)]
        if let Err(msg) = trace.check_bounds(self) {
            panic!("pipeline bound violated: {msg}");
        }
        Ok(trace)
    }
}

/// Residue vectors after each step of one multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub mu: ResidueVector,
    pub x: ResidueVector,
    pub d_partial: PartialResidueVector,
    pub d: ResidueVector,
    pub e: ResidueVector,
    pub q_partial: PartialResidueVector,
    pub q: ResidueVector,
    pub c: ResidueVector,
}

impl StepTrace {
    /// `(label, rendered vector)` for each step in order.
    pub fn rows(&self) -> Vec<(&'static str, String)> {
        vec![
            ("Step1", self.mu.to_string()),
            ("Step2", self.x.to_string()),
            ("Step3a", self.d_partial.to_string()),
            ("Step3b", self.d.to_string()),
            ("Step4", self.e.to_string()),
            ("Step5a", self.q_partial.to_string()),
            ("Step5b", self.q.to_string()),
            ("Step6", self.c.to_string()),
        ]
    }

    /// Decodes every step and checks it against the integer pipeline:
    /// the quotients equal the exact floor divisions, the extension inputs
    /// are within their ranges and `C` is within the output range.
    pub fn check_bounds(&self, ctx: &RnsBarrettContext) -> std::result::Result<(), String> {
        let p = ctx.params();
        let m = ctx.moduli_set().product();
        let x = self.x.decode();
        let d = self.d.decode();
        let e = self.e.decode();
        let q = self.q.decode();
        let c = self.c.decode();
        if d != &x / p.g() {
            return Err(format!("D = {d} is not floor({x} / G)"));
        }
        if d >= m / p.g() {
            return Err(format!("D = {d} exceeds M / G"));
        }
        if e != &d * p.mu() || e >= *m {
            return Err(format!("E = {e} is not D * mu below M"));
        }
        if q != &e / p.h() || q >= m / p.h() {
            return Err(format!("Q = {q} is not floor(E / H) below M / H"));
        }
        if c >= p.output_limit() || &c + &q * p.modulus() != x {
            return Err(format!("C = {c} is not X - Q*N below the output bound"));
        }
        Ok(())
    }
}

impl fmt::Display for StepTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, row) in self.rows() {
            writeln!(f, "{label}: {row}")?;
        }
        Ok(())
    }
}
