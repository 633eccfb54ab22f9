//! Benchmark harness: the coefficient-sum divisibility test against exact
//! polynomial division, across a (N, degree) grid of seeded random inputs.
//!
//! Wall times are recorded but never asserted; operation counts are the
//! machine-independent signal (the coefficient-sum count is affine in the
//! degree at fixed N). Half of the trials at each grid point carry a
//! planted Phi_N factor so that both verdicts appear.

use crate::cyclotomic::phi_cached;
use crate::divisibility::{divides_cyclotomic_opts, CycloTestOptions};
use crate::numtheory::factorize;
use crate::poly::Poly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMethod {
    CoeffSum,
    ExactDivision,
}

impl BenchMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenchMethod::CoeffSum => "coeff_sum",
            BenchMethod::ExactDivision => "exact_division",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchRecord {
    pub method: BenchMethod,
    pub n: u64,
    pub degree: usize,
    pub trial: u32,
    pub ns_elapsed: u128,
    pub op_count: u64,
    pub verdict: bool,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub max_degree: usize,
    pub n_list: Vec<u64>,
    pub trials: u32,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            max_degree: 256,
            n_list: vec![6, 12, 30],
            trials: 8,
            seed: 0xC0FFEE,
        }
    }
}

fn grid_degrees(max_degree: usize, min_degree: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=4)
        .map(|i| max_degree * i / 4)
        .filter(|&d| d >= min_degree && d >= 1)
        .collect();
    out.dedup();
    out
}

/// Random polynomial of exactly the requested degree, coefficients in
/// [-9, 9], leading coefficient nonzero.
fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Poly {
    let mut coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-9..=9)).collect();
    if coeffs[degree] == 0 {
        coeffs[degree] = 1;
    }
    Poly::from_i64(&coeffs)
}

/// Run the full grid. Grid points execute in parallel; records come back
/// merged in (N, degree, trial, method) order, and every random draw is
/// keyed by (seed, N, degree, trial) so the output is independent of the
/// parallel schedule.
pub fn run_bench(cfg: &BenchConfig) -> Vec<BenchRecord> {
    let mut points = Vec::new();
    for &n in &cfg.n_list {
        let phi = factorize(n).expect("n >= 1").totient() as usize;
        for degree in grid_degrees(cfg.max_degree, phi.max(1)) {
            for trial in 0..cfg.trials {
                points.push((n, degree, trial));
            }
        }
    }
    let mut records: Vec<BenchRecord> = points
        .par_iter()
        .flat_map_iter(|&(n, degree, trial)| run_point(cfg.seed, n, degree, trial))
        .collect();
    records.sort_by_key(|r| (r.n, r.degree, r.trial, r.method as u8));
    records
}

fn run_point(seed: u64, n: u64, degree: usize, trial: u32) -> Vec<BenchRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed ^ (n << 40) ^ ((degree as u64) << 20) ^ trial as u64,
    );
    let phi_n = phi_cached(n).expect("n >= 1");
    let phi_deg = phi_n.degree().unwrap();
    let planted = trial % 2 == 0;
    let poly = if planted {
        let q = random_poly(&mut rng, degree - phi_deg);
        &*phi_n * &q
    } else {
        random_poly(&mut rng, degree)
    };

    let t0 = Instant::now();
    let report = divides_cyclotomic_opts(
        &poly,
        n,
        CycloTestOptions {
            force_general_path: true,
            ..Default::default()
        },
    )
    .expect("degree >= phi(n) by construction");
    let coeff_ns = t0.elapsed().as_nanos();

    let t1 = Instant::now();
    let ((_, remainder), div_ops) = poly.div_rem_counted(&phi_n).expect("monic divisor");
    let division_verdict = remainder.is_zero();
    let div_ns = t1.elapsed().as_nanos();

    vec![
        BenchRecord {
            method: BenchMethod::CoeffSum,
            n,
            degree,
            trial,
            ns_elapsed: coeff_ns,
            op_count: report.op_count,
            verdict: report.verdict,
        },
        BenchRecord {
            method: BenchMethod::ExactDivision,
            n,
            degree,
            trial,
            ns_elapsed: div_ns,
            op_count: div_ops,
            verdict: division_verdict,
        },
    ]
}

/// CSV with the fixed header method,N,degree,trial,ns_elapsed,op_count,verdict.
pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("method,N,degree,trial,ns_elapsed,op_count,verdict\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.method.as_str(),
            r.n,
            r.degree,
            r.trial,
            r.ns_elapsed,
            r.op_count,
            r.verdict
        ));
    }
    out
}

/// Coefficient of determination for the least-squares line through the
/// points. A single x value or a perfectly flat y yields 1.0.
pub fn linear_fit_r2(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return 1.0;
    }
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if syy == 0.0 {
        return 1.0;
    }
    if sxx == 0.0 {
        return 1.0;
    }
    (sxy * sxy) / (sxx * syy)
}

/// Fraction of (N, degree, trial) pairs where both methods agree, and the
/// per-N regression of coefficient-sum op count against degree.
#[derive(Debug, Clone, Serialize)]
pub struct BenchSummary {
    pub records: usize,
    pub verdict_agreement: f64,
    pub r_squared_by_n: Vec<(u64, f64)>,
}

pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let mut pairs = 0usize;
    let mut agree = 0usize;
    let mut by_n: std::collections::BTreeMap<u64, Vec<(f64, f64)>> = Default::default();
    let mut iter = records.chunks_exact(2);
    for pair in &mut iter {
        let (a, b) = (&pair[0], &pair[1]);
        debug_assert_eq!((a.n, a.degree, a.trial), (b.n, b.degree, b.trial));
        pairs += 1;
        if a.verdict == b.verdict {
            agree += 1;
        }
        let coeff = if a.method == BenchMethod::CoeffSum { a } else { b };
        by_n
            .entry(coeff.n)
            .or_default()
            .push((coeff.degree as f64, coeff.op_count as f64));
    }
    BenchSummary {
        records: records.len(),
        verdict_agreement: if pairs == 0 {
            1.0
        } else {
            agree as f64 / pairs as f64
        },
        r_squared_by_n: by_n
            .into_iter()
            .map(|(n, pts)| (n, linear_fit_r2(&pts)))
            .collect(),
    }
}
