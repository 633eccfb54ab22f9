//! Acceptance suite: every release-gating property, one test per
//! criterion, each printing a single PASS/FAIL line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use cyclokit::bench::{run_bench, summarize, BenchConfig};
use cyclokit::cyclotomic::{
    phi_arnold_monagan, phi_mobius, phi_prime_extension, phi_squarefree_reduce,
};
use cyclokit::divisibility::{
    divides_cyclotomic, divides_cyclotomic_opts, CycloTestOptions,
};
use cyclokit::numtheory::{factorize, gcd, is_prime};
use cyclokit::poly::Poly;
use cyclokit::ramanujan::{
    c_bruteforce, toth, verify_direct_identity, verify_excluded_sum, verify_omega2,
    verify_shifted_sum, RamanujanEvaluator,
};
use cyclokit::symmetric::{
    binary_coeff, h_closed_form, h_complex_precise, round_to_integer, RootVector,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Criterion {
    number: u32,
    description: &'static str,
}

impl Criterion {
    fn finish(self, failures: Vec<String>) {
        if failures.is_empty() {
            println!("criterion {} PASS: {}", self.number, self.description);
        } else {
            println!(
                "criterion {} FAIL: {} ({} failures, first: {})",
                self.number,
                self.description,
                failures.len(),
                failures[0]
            );
            panic!(
                "criterion {} failed with {} counterexamples, first: {}",
                self.number,
                failures.len(),
                failures[0]
            );
        }
    }
}

#[test]
fn criterion_1_cross_algorithm_agreement() {
    let crit = Criterion {
        number: 1,
        description: "independent cyclotomic algorithms agree bit-exactly \
                      (mobius vs reduce to 5000; chains to 2000 square-free)",
    };
    let mut failures: Vec<String> = (1u64..=5000)
        .into_par_iter()
        .filter_map(|n| {
            let reference = phi_mobius(n).unwrap().poly;
            if phi_squarefree_reduce(n).unwrap().poly != reference {
                return Some(format!("reduce mismatch at n={n}"));
            }
            if n > 1 && n <= 2000 && factorize(n).unwrap().mobius() != 0 {
                let (p, _) = *factorize(n).unwrap().factors().last().unwrap();
                if phi_prime_extension(n / p, p).unwrap().poly != reference {
                    return Some(format!("extension mismatch at n={n}"));
                }
                if phi_arnold_monagan(n / p, p).unwrap().poly != reference {
                    return Some(format!("arnold-monagan mismatch at n={n}"));
                }
            }
            None
        })
        .collect();
    failures.sort();
    crit.finish(failures);
}

#[test]
fn criterion_2_divisibility_oracle_equivalence() {
    let crit = Criterion {
        number: 2,
        description: "coefficient-sum verdicts equal exact-division verdicts on \
                      2400 seeded trials, including half-range and fast-path agreement",
    };
    let failures: Vec<String> = (0u32..2400)
        .into_par_iter()
        .filter_map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(0xACCE57 ^ trial as u64);
            let n = rng.gen_range(1..=40u64);
            let phi = factorize(n).unwrap().totient();
            let phi_n = phi_mobius(n).unwrap().poly;
            let deg = rng.gen_range(phi.max(1)..=40) as usize;
            let poly = if trial % 2 == 0 {
                let qdeg = deg - phi as usize;
                let mut coeffs: Vec<i64> = (0..=qdeg).map(|_| rng.gen_range(-9..=9)).collect();
                if coeffs[qdeg] == 0 {
                    coeffs[qdeg] = 1;
                }
                &phi_n * &Poly::from_i64(&coeffs)
            } else {
                let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
                if coeffs[deg] == 0 {
                    coeffs[deg] = 1;
                }
                Poly::from_i64(&coeffs)
            };
            let report = divides_cyclotomic(&poly, n).unwrap();
            let oracle = poly.div_exact(&phi_n).is_ok();
            if report.verdict != oracle {
                return Some(format!("verdict mismatch: trial={trial} n={n}"));
            }
            if trial % 2 == 0 && !report.verdict {
                return Some(format!("planted factor missed: trial={trial} n={n}"));
            }
            if n % 2 == 0 {
                let full = divides_cyclotomic_opts(
                    &poly,
                    n,
                    CycloTestOptions {
                        full_h_range: true,
                        ..Default::default()
                    },
                )
                .unwrap();
                if full.verdict != report.verdict {
                    return Some(format!("half-range mismatch: trial={trial} n={n}"));
                }
            }
            let deg_actual = poly.degree().unwrap() as u64;
            if phi <= deg_actual && deg_actual < n {
                let fast = divides_cyclotomic(&poly, n).unwrap();
                let general = divides_cyclotomic_opts(
                    &poly,
                    n,
                    CycloTestOptions {
                        force_general_path: true,
                        ..Default::default()
                    },
                )
                .unwrap();
                if !fast.fast_path || general.fast_path {
                    return Some(format!("path flags wrong: trial={trial} n={n}"));
                }
                if fast.witnesses != general.witnesses || fast.verdict != general.verdict {
                    return Some(format!("fast path mismatch: trial={trial} n={n}"));
                }
            }
            None
        })
        .collect();
    crit.finish(failures);
}

#[test]
fn criterion_3_ramanujan_identity_sweeps() {
    let crit = Criterion {
        number: 3,
        description: "mu-weighted Ramanujan-sum identities hold for every n <= 2000, \
                      every kernel divisor and every gated or windowed shift",
    };
    let failures: Vec<String> = (2u64..=2000)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut bad = Vec::new();
            let f = factorize(n).unwrap();
            for d1 in f.divisors(true) {
                let r = verify_direct_identity(n, d1).unwrap();
                if !r.pass {
                    bad.push(format!("direct identity n={n} d1={d1}: {} != {}", r.lhs, r.rhs));
                }
            }
            for r in verify_shifted_sum(n).unwrap() {
                if !r.pass {
                    bad.push(format!("shifted sum n={n} params={}", r.params));
                }
            }
            if f.mobius() == 0 {
                for d1 in f.divisors(true) {
                    if d1 > 1 {
                        for r in verify_excluded_sum(n, d1).unwrap() {
                            if !r.pass {
                                bad.push(format!("excluded sum n={n} params={}", r.params));
                            }
                        }
                    }
                }
            }
            bad
        })
        .collect();
    crit.finish(failures);
}

#[test]
fn criterion_4_toth_divisibility() {
    let crit = Criterion {
        number: 4,
        description: "Phi_n divides the Ramanujan-sum polynomial T_n for 2 <= n <= 2000, \
                      by coefficient sums and by exact division, with the stated degree",
    };
    let failures: Vec<String> = (2u64..=2000)
        .into_par_iter()
        .filter_map(|n| {
            let t = toth(n).unwrap();
            if !t.divisible_coeff_sum || !t.divisible_exact {
                return Some(format!(
                    "n={n}: coeff_sum={} exact={}",
                    t.divisible_coeff_sum, t.divisible_exact
                ));
            }
            let f = factorize(n).unwrap();
            let tau = n - n / f.kernel();
            if t.poly.degree() != Some(tau as usize) {
                return Some(format!("n={n}: degree {:?} != {tau}", t.poly.degree()));
            }
            None
        })
        .collect();
    crit.finish(failures);
}

#[test]
fn criterion_5_binary_coefficients() {
    let crit = Criterion {
        number: 5,
        description: "two-prime cyclotomic coefficients lie in {-1,0,1} for pq <= 1000, \
                      the interval device reproduces them, and brute force agrees for pq <= 143",
    };
    let primes: Vec<u64> = (2..=500).filter(|&x| is_prime(x)).collect();
    let mut pairs = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if p * q <= 1000 {
                pairs.push((p, q));
            }
        }
    }
    let failures: Vec<String> = pairs
        .par_iter()
        .flat_map_iter(|&(p, q)| {
            let mut bad = Vec::new();
            let n = p * q;
            let phi_poly = phi_mobius(n).unwrap().poly;
            let brute = if n <= 143 {
                Some(RootVector::all_roots(p).concat(&RootVector::all_roots(q)))
            } else {
                None
            };
            let mut prev_h = 0i64;
            for k in 0..=((p - 1) * (q - 1)) {
                let device = binary_coeff(p, q, k).unwrap();
                if device.abs() > 1 {
                    bad.push(format!("p={p} q={q} k={k}: device value {device}"));
                }
                if BigInt::from(device) != phi_poly.coeff_desc(k as usize) {
                    bad.push(format!("p={p} q={q} k={k}: device != exact coefficient"));
                }
                if let Some(v) = &brute {
                    let hk = match round_to_integer(v.h_precise(k as usize)) {
                        Ok(x) => x,
                        Err(_) => {
                            bad.push(format!("p={p} q={q} k={k}: brute H not integral"));
                            continue;
                        }
                    };
                    if hk - prev_h != device {
                        bad.push(format!("p={p} q={q} k={k}: brute H difference mismatch"));
                    }
                    prev_h = hk;
                }
            }
            bad
        })
        .collect();
    crit.finish(failures);
}

#[test]
fn criterion_6_coefficient_bridge() {
    let crit = Criterion {
        number: 6,
        description: "exact a_n(k) equals rounded complex H over non-primitive roots and \
                      rounded signed E over primitive roots for n <= 60, k <= phi(n)",
    };
    let failures: Vec<String> = (1u64..=60)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut bad = Vec::new();
            let phi_poly = phi_mobius(n).unwrap().poly;
            let phi = factorize(n).unwrap().totient();
            let primitive = RootVector::primitive(n);
            let non_primitive = RootVector::non_primitive(n);
            for k in 0..=phi as usize {
                let exact = phi_poly.coeff_desc(k).to_i64().unwrap();
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                match round_to_integer(primitive.e_precise(k) * sign) {
                    Ok(v) if v == exact => {}
                    other => bad.push(format!("E-branch n={n} k={k}: {other:?} != {exact}")),
                }
                // The non-primitive vector is empty padding for n = 1, where
                // H_1 = 0 cannot reproduce a_1(1) = -1; the H-branch starts
                // at n = 2.
                if n >= 2 {
                    match round_to_integer(non_primitive.h_precise(k)) {
                        Ok(v) if v == exact => {}
                        other => bad.push(format!("H-branch n={n} k={k}: {other:?} != {exact}")),
                    }
                }
            }
            bad
        })
        .collect();
    crit.finish(failures);
}

#[test]
fn criterion_7_ramanujan_sum_correctness() {
    let crit = Criterion {
        number: 7,
        description: "Holder evaluation equals brute force for n <= 300, the eight basic \
                      properties hold, and the two-prime families pass for n <= 2000",
    };
    let mut failures: Vec<String> = (1u64..=300)
        .into_par_iter()
        .flat_map_iter(|n| {
            let mut bad = Vec::new();
            let ev = RamanujanEvaluator::new(n).unwrap();
            let f = factorize(n).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(0x7A3 ^ n);
            // (1) value at zero, (4) Holder vs the defining sum.
            if ev.c(0) != f.totient() as i64 {
                bad.push(format!("c_{n}(0) != phi({n})"));
            }
            for r in 0..n as i64 {
                if ev.c(r) != c_bruteforce(n, r).unwrap() {
                    bad.push(format!("Holder vs brute at n={n} r={r}"));
                }
                // (2) evenness, (3) periodicity with a random multiple.
                if ev.c(r) != ev.c(-r) {
                    bad.push(format!("evenness at n={n} r={r}"));
                }
                let h = rng.gen_range(-3i64..=3);
                if ev.c(r) != ev.c(r + h * n as i64) {
                    bad.push(format!("period at n={n} r={r} h={h}"));
                }
                // (5) coprime arguments give mu(n); (n, 0) = n by convention.
                let rr = cyclokit::numtheory::residue(r, n).unwrap();
                let d = if rr == 0 { n } else { gcd(rr, n) };
                if d == 1 && ev.c(r) != f.mobius() {
                    bad.push(format!("coprime value at n={n} r={r}"));
                }
            }
            // (6) multiplicativity against a few random coprime companions.
            for _ in 0..4 {
                let m = rng.gen_range(1..=40u64);
                if gcd(m, n) == 1 && m * n <= 10_000 {
                    let em = RamanujanEvaluator::new(m).unwrap();
                    let enm = RamanujanEvaluator::new(n * m).unwrap();
                    for r in 0..(n * m).min(50) as i64 {
                        if enm.c(r) != ev.c(r) * em.c(r) {
                            bad.push(format!("multiplicativity at n={n} m={m} r={r}"));
                        }
                    }
                }
            }
            // (7) both kernel-quotient values.
            let q = (n / f.kernel()) as i64;
            let expect = if f.omega() % 2 == 0 { q } else { -q };
            if ev.c(q) != expect || ev.c(n as i64 - q) != expect {
                bad.push(format!("kernel quotient value at n={n}"));
            }
            // (8) even-index sign flip for random m.
            if n % 2 == 0 {
                for _ in 0..3 {
                    let m = rng.gen_range(1..=5i64);
                    let h = rng.gen_range(0..n as i64);
                    let sign = if m % 2 == 0 { 1 } else { -1 };
                    if ev.c(h + m * n as i64 / 2) != sign * ev.c(h) {
                        bad.push(format!("half-period flip at n={n} h={h} m={m}"));
                    }
                }
            }
            bad
        })
        .collect();
    let omega2_failures: Vec<String> = (2u64..=2000)
        .into_par_iter()
        .flat_map_iter(|n| {
            let f = factorize(n).unwrap();
            if f.omega() != 2 {
                return Vec::new();
            }
            verify_omega2(n)
                .unwrap()
                .into_iter()
                .filter(|r| !r.pass)
                .map(|r| format!("two-prime family n={n} params={}", r.params))
                .collect()
        })
        .collect();
    failures.extend(omega2_failures);
    crit.finish(failures);
}

#[test]
fn criterion_8_closed_form_oracle() {
    let crit = Criterion {
        number: 8,
        description: "the closed form for H_m(1, zeta, ..., zeta^k) matches brute force \
                      within 1e-9 for n <= 20, k <= 40, m <= 40, both degenerate cases included",
    };
    let mut failures = Vec::new();
    let mut ones = 0u64;
    let mut zeros = 0u64;
    for n in 2u64..=20 {
        for k in 0u64..=40 {
            // The closed form depends on k only through its residue; the
            // literal exponent list would repeat roots for k >= n, where H
            // is no longer periodic, so the oracle evaluates the reduced
            // vector (1, zeta, ..., zeta^{{k}_n}).
            let vector = RootVector::powers(n, k % n);
            for m in 0u64..=40 {
                let cf = h_closed_form(n, k, m);
                let bf = h_complex_precise(vector.entries(), m as usize);
                if (cf - bf).norm() > 1e-9 {
                    failures.push(format!("n={n} k={k} m={m}: |{cf} - {bf}|"));
                }
                if (k % n == 0 || m % n == 0) && cf == Complex64::new(1.0, 0.0) {
                    ones += 1;
                }
                if k % n != 0 && m % n != 0 && (k % n) + (m % n) >= n {
                    zeros += 1;
                    if cf != Complex64::new(0.0, 0.0) {
                        failures.push(format!("n={n} k={k} m={m}: zero case gave {cf}"));
                    }
                }
            }
        }
    }
    if ones == 0 || zeros == 0 {
        failures.push(format!("degenerate cases not exercised: ones={ones} zeros={zeros}"));
    }
    crit.finish(failures);
}

#[test]
fn criterion_9_bench_sanity() {
    let crit = Criterion {
        number: 9,
        description: "coefficient-sum op count grows linearly in degree (R^2 >= 0.99) \
                      and the two methods agree on every bench record",
    };
    let cfg = BenchConfig {
        max_degree: 512,
        n_list: vec![6, 12, 30],
        trials: 6,
        seed: 0xBE7C4,
    };
    let records = run_bench(&cfg);
    let summary = summarize(&records);
    let mut failures = Vec::new();
    if (summary.verdict_agreement - 1.0).abs() > f64::EPSILON {
        failures.push(format!(
            "verdict agreement {:.4} < 1.0",
            summary.verdict_agreement
        ));
    }
    for (n, r2) in &summary.r_squared_by_n {
        if *r2 < 0.99 {
            failures.push(format!("R^2 for N={n} is {r2:.6}"));
        }
    }
    crit.finish(failures);
}
