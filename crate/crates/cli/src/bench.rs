//! Direct summation versus the reciprocity descent.

use std::fmt::Write as _;
use std::time::Instant;

use brieskorn_core::sums::{rademacher_sum, rademacher_sum_fast};
use brieskorn_core::{RademacherParams, Rational};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{BenchArgs, Format, Output, EXIT_FAILED, EXIT_OK};

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub k: u64,
    pub direct_time: f64,
    pub fast_time: f64,
    pub values_equal: bool,
}

/// `2, 4, 8, ...` up to `max_k`, with `max_k` itself appended.
pub fn k_ladder(max_k: u64) -> Vec<u64> {
    let mut ks: Vec<u64> = std::iter::successors(Some(2u64), |&k| k.checked_mul(2))
        .take_while(|&k| k <= max_k)
        .collect();
    if ks.last() != Some(&max_k) {
        ks.push(max_k);
    }
    ks
}

fn random_shift(rng: &mut ChaCha8Rng) -> Rational {
    match rng.random_range(0..3) {
        0 => Rational::zero(),
        1 => Rational::half(),
        _ => Rational::new(rng.random_range(-12i64..=12), rng.random_range(1i64..=12)),
    }
}

/// Random parameters with `gcd(h, k) = 1`.
pub fn random_params(rng: &mut ChaCha8Rng, k: u64) -> RademacherParams {
    let h = loop {
        let h = rng.random_range(-(10 * k as i64)..=10 * k as i64);
        if h.unsigned_abs().gcd(&k) == 1 {
            break h;
        }
    };
    RademacherParams::new(h, k, random_shift(rng), random_shift(rng))
}

pub fn run_bench(max_k: u64, trials: u64, seed: u64) -> Vec<BenchRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    k_ladder(max_k)
        .into_iter()
        .map(|k| {
            let params: Vec<_> = (0..trials).map(|_| random_params(&mut rng, k)).collect();
            let t = Instant::now();
            let direct: Vec<_> = params.iter().map(|p| rademacher_sum(p).expect("k >= 1")).collect();
            let direct_time = t.elapsed().as_secs_f64();
            let t = Instant::now();
            let fast: Vec<_> = params
                .iter()
                .map(|p| rademacher_sum_fast(p).expect("coprime by construction"))
                .collect();
            let fast_time = t.elapsed().as_secs_f64();
            BenchRow {
                k,
                direct_time,
                fast_time,
                values_equal: direct == fast,
            }
        })
        .collect()
}

pub fn cmd_bench(args: &BenchArgs, format: Format) -> Output {
    if args.max_k < 2 {
        return Output::invalid("--max-k must be at least 2");
    }
    let rows = run_bench(args.max_k, args.trials, args.seed);
    let stdout = match format {
        Format::Json => serde_json::to_string(&rows).expect("serializes") + "\n",
        Format::Csv | Format::Text => {
            let mut s = String::from("k,direct_time,fast_time,values_equal\n");
            for r in &rows {
                let _ = writeln!(s, "{},{:.6},{:.6},{}", r.k, r.direct_time, r.fast_time, r.values_equal);
            }
            s
        }
    };
    let code = if rows.iter().all(|r| r.values_equal) { EXIT_OK } else { EXIT_FAILED };
    Output::ok(stdout).with_code(code)
}
