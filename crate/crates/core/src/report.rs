//! Wall-clock comparison of the multiplication routines at a few operand
//! sizes. Numbers are indicative only; use the criterion benches for
//! anything careful.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;

use crate::barrett::RangeCase;
use crate::error::Result;
use crate::param_select::select;
use crate::reference::{oracle_modmul, Montgomery};

/// Timings for one modulus size, in nanoseconds per multiplication.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub bits: u64,
    pub moduli: usize,
    pub word_bits: u32,
    pub oracle_ns: f64,
    pub scalar_barrett_ns: f64,
    pub rns_bmm_ns: f64,
    pub montgomery_ns: f64,
}

/// An odd modulus of exactly `bits` bits, and two operands below it.
pub fn sample_operands(bits: u64) -> (BigUint, BigUint, BigUint) {
    let n = (BigUint::one() << bits) - 189u32;
    let a = &n * 2u32 / 3u32;
    let b = &n * 5u32 / 7u32;
    (n, a, b)
}

fn time_ns(iterations: u32, mut f: impl FnMut()) -> f64 {
    let start = Instant::now();
    for _ in 0..iterations {
        f();
    }
    start.elapsed().as_nanos() as f64 / f64::from(iterations.max(1))
}

/// Times each routine on a fixed operand pair per size.
pub fn generate(bit_sizes: &[u64], word_bits: u32, iterations: u32) -> Result<Vec<ReportRow>> {
    bit_sizes
        .iter()
        .map(|&bits| {
            let (n, a, b) = sample_operands(bits);
            let ctx = select(&n, RangeCase::Case1, word_bits)?;
            let params = ctx.params().clone();
            let (ra, rb) = (ctx.encode_operand(&a)?, ctx.encode_operand(&b)?);
            let mont = Montgomery::new(&n, &(BigUint::one() << bits))?;

            let oracle_ns = time_ns(iterations, || {
                black_box(oracle_modmul(black_box(&a), black_box(&b), &n));
            });
            let scalar_barrett_ns = time_ns(iterations, || {
                black_box(params.modmul(black_box(&a), black_box(&b)).unwrap());
            });
            let rns_bmm_ns = time_ns(iterations, || {
                black_box(ctx.bmm(black_box(&ra), black_box(&rb)).unwrap());
            });
            let montgomery_ns = time_ns(iterations, || {
                black_box(mont.mul(black_box(&a), black_box(&b)));
            });
            Ok(ReportRow {
                bits,
                moduli: ctx.moduli_set().len(),
                word_bits,
                oracle_ns,
                scalar_barrett_ns,
                rns_bmm_ns,
                montgomery_ns,
            })
        })
        .collect()
}

pub fn to_markdown(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    out.push_str("| N bits | moduli | word bits | oracle (ns) | scalar Barrett (ns) | RNS BMM (ns) | Montgomery (ns) |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {:.0} | {:.0} | {:.0} | {:.0} |",
            r.bits,
            r.moduli,
            r.word_bits,
            r.oracle_ns,
            r.scalar_barrett_ns,
            r.rns_bmm_ns,
            r.montgomery_ns
        );
    }
    out
}
