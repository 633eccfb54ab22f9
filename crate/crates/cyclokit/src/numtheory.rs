//! Integer factorization and the arithmetic functions built on it.
//!
//! Everything here is exact and deterministic: trial division up to sqrt(n),
//! with inputs capped at 2^63 - 1. A process-wide cache keyed by `n` backs
//! [`factorize`], since the identity verifiers re-factor the same integers
//! over and over.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

/// Largest accepted factorization input.
pub const MAX_INPUT: u64 = (1u64 << 63) - 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumTheoryError {
    /// Input was zero where a positive integer is required.
    ZeroInput,
    /// Input exceeds 2^63 - 1.
    InputTooLarge(u64),
    /// Modulus of zero passed to `residue`.
    ZeroModulus,
}

impl fmt::Display for NumTheoryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumTheoryError::ZeroInput => write!(f, "input must be a positive integer"),
            NumTheoryError::InputTooLarge(n) => {
                write!(f, "input {n} exceeds the supported bound 2^63 - 1")
            }
            NumTheoryError::ZeroModulus => write!(f, "modulus must be positive"),
        }
    }
}

impl std::error::Error for NumTheoryError {}

/// Prime factorization of a positive integer, primes ascending.
///
/// `n = 1` is represented by an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    fn compute(n: u64) -> Self {
        let mut factors = Vec::new();
        let mut rest = n;
        let mut p = 2u64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut v = 0u32;
                while rest % p == 0 {
                    rest /= p;
                    v += 1;
                }
                factors.push((p, v));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Factorization { n, factors }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Prime-exponent pairs, primes strictly ascending.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors. omega(1) = 0.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Mobius function: (-1)^omega(n) on square-free n, 0 otherwise. mu(1) = 1.
    pub fn mobius(&self) -> i64 {
        if self.factors.iter().any(|&(_, v)| v > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Euler totient, computed as n * prod (1 - 1/p) in exact integers.
    pub fn totient(&self) -> u64 {
        let mut t = self.n;
        for &(p, _) in &self.factors {
            t = t / p * (p - 1);
        }
        t
    }

    /// Square-free kernel: product of the distinct primes dividing n; gamma(1) = 1.
    pub fn kernel(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    /// All divisors in ascending order. With `squarefree_only`, exactly the
    /// divisors of the kernel.
    pub fn divisors(&self, squarefree_only: bool) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, v) in &self.factors {
            let reach = if squarefree_only { 1 } else { v };
            let prev = divs.clone();
            let mut pk = 1u64;
            for _ in 0..reach {
                pk *= p;
                divs.extend(prev.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Factorization of a divisor `q` of `n`, reusing the known prime list.
    ///
    /// Panics if `q` does not divide `n`.
    pub fn of_divisor(&self, q: u64) -> Factorization {
        assert!(q >= 1 && self.n % q == 0, "{q} does not divide {}", self.n);
        let mut rest = q;
        let mut factors = Vec::new();
        for &(p, _) in &self.factors {
            let mut v = 0u32;
            while rest % p == 0 {
                rest /= p;
                v += 1;
            }
            if v > 0 {
                factors.push((p, v));
            }
        }
        assert!(rest == 1);
        Factorization { n: q, factors }
    }
}

static FACT_CACHE: LazyLock<Mutex<HashMap<u64, Arc<Factorization>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Factor `n` by trial division, consulting the process-wide cache.
pub fn factorize(n: u64) -> Result<Arc<Factorization>, NumTheoryError> {
    if n == 0 {
        return Err(NumTheoryError::ZeroInput);
    }
    if n > MAX_INPUT {
        return Err(NumTheoryError::InputTooLarge(n));
    }
    if let Some(f) = FACT_CACHE.lock().unwrap().get(&n) {
        return Ok(Arc::clone(f));
    }
    let f = Arc::new(Factorization::compute(n));
    FACT_CACHE
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&f));
    Ok(f)
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Mathematical residue {m}_k in [0, k), correct for negative `m`.
pub fn residue(m: i64, k: u64) -> Result<u64, NumTheoryError> {
    if k == 0 {
        return Err(NumTheoryError::ZeroModulus);
    }
    Ok(residue_unchecked(m, k))
}

/// As [`residue`], with `k > 0` guaranteed by the caller.
pub(crate) fn residue_unchecked(m: i64, k: u64) -> u64 {
    debug_assert!(k > 0);
    let k = k as i128;
    let r = ((m as i128) % k + k) % k;
    r as u64
}

/// The index set H(n): {0..n/2-1} for even n, {0..n-1} for odd n.
pub fn half_range(n: u64) -> std::ops::Range<u64> {
    if n % 2 == 0 {
        0..n / 2
    } else {
        0..n
    }
}

/// One entry per divisor `d` of the kernel of `n`: the divisor itself, the
/// sign (-1)^omega(d) = mu(d), and the shift sum_{p|d} n/p (0 for d = 1).
pub fn kernel_divisor_offsets(f: &Factorization) -> Vec<(u64, i64, u64)> {
    let primes: Vec<u64> = f.factors.iter().map(|&(p, _)| p).collect();
    let w = primes.len();
    let mut out = Vec::with_capacity(1 << w);
    for mask in 0u32..(1u32 << w) {
        let mut d = 1u64;
        let mut offset = 0u64;
        for (i, &p) in primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                d *= p;
                offset += f.n / p;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.push((d, sign, offset));
    }
    out.sort_unstable_by_key(|&(d, _, _)| d);
    out
}
