//! Residue number system arithmetic with a Barrett reduction that uses
//! general scaling constants `G` and `H` instead of powers of two.
//!
//! When `G` and `H` are products of RNS moduli, every step of the reduction
//! (including both quotients) runs on residues, so a modular multiplication
//! or exponentiation never leaves residue form until the final decode.
//!
//! ```
//! use rns_barrett::{ModuliSet, RangeCase, RnsBarrettContext};
//!
//! let ms = ModuliSet::new(&[4, 5, 7, 11]).unwrap();
//! // G = 4 * 5, H = 4 * 7
//! let ctx = RnsBarrettContext::new(&ms, 21u32.into(), &[0, 1], &[0, 2], RangeCase::Case1).unwrap();
//! let c = ctx.bmm(&ms.encode_u64(20).unwrap(), &ms.encode_u64(19).unwrap()).unwrap();
//! assert_eq!(c.decode(), 23u32.into()); // 380 mod 21 = 2, plus one N
//! ```

pub mod barrett;
pub mod bex;
pub mod error;
pub mod modexp;
pub mod param_select;
pub mod quotient;
pub mod reference;
pub mod report;
pub mod rns;
pub mod rns_barrett;

pub use barrett::{final_correct, BarrettParams, BarrettSteps, RangeCase};
pub use bex::{base_extend, base_extend_seeded, base_extend_traced, BaseExtension};
pub use error::{Error, Result};
pub use modexp::{bmm_modexp, bmm_modexp_observed, final_result};
pub use param_select::select;
pub use quotient::{quotient_by_moduli_product, ModuliPartition};
pub use rns::{MixedRadixDigits, ModuliSet, PartialResidueVector, ResidueVector};
pub use rns_barrett::{check_conditions, ConditionCheck, RnsBarrettContext, StepTrace};

pub use num_bigint::BigUint;
