//! Cyclotomic polynomials Phi_n and their inverse companions Psi_n,
//! computed by several independent algorithms and cross-validated.
//!
//! Routes:
//! - Mobius product: Phi_n = prod_{d|n} (z^{n/d} - 1)^{mu(d)}, multiplying
//!   the +1 factors and exactly dividing by the -1 factors.
//! - Prime extension: a_{mp}(k) = sum_s a_m(s) H_{k-sp}(primitive m-th
//!   roots), chaining a square-free kernel up from Phi_1 one prime at a
//!   time, with the H-values taken from an exact integer table.
//! - Arnold-Monagan recursion: a_{mp}(k) = a_{mp}(k-m) - sum a_m(j) b_m(h)
//!   over jp + h = k, where b are the coefficients of Psi_m.
//! - Square-free reduction: Phi_n(z) = Phi_{gamma(n)}(z^{n/gamma(n)}).
//!
//! The extension and Arnold-Monagan chains never touch the Mobius route,
//! so bit-exact agreement between them is a real cross-check.

use crate::numtheory::{factorize, is_prime};
use crate::poly::{Poly, PolyError};
use crate::report::{IdentityKind, IdentityReport};
use crate::symmetric::RootVector;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex, Once};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycloError {
    /// n = 0 (or another unusable index).
    InvalidIndex(u64),
    NotPrime(u64),
    /// The prime divides m where it must not.
    PrimeDividesIndex { m: u64, p: u64 },
    /// The prime does not divide m where it must.
    PrimeDoesNotDivideIndex { m: u64, p: u64 },
    /// An internal exact-arithmetic step failed; indicates a bug.
    Internal(PolyError),
}

impl fmt::Display for CycloError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycloError::InvalidIndex(n) => write!(f, "index {n} is not supported"),
            CycloError::NotPrime(p) => write!(f, "{p} is not prime"),
            CycloError::PrimeDividesIndex { m, p } => {
                write!(f, "{p} divides {m}; use the substitution route instead")
            }
            CycloError::PrimeDoesNotDivideIndex { m, p } => {
                write!(f, "{p} does not divide {m}; use the extension route instead")
            }
            CycloError::Internal(e) => write!(f, "internal consistency failure: {e}"),
        }
    }
}

impl std::error::Error for CycloError {}

impl From<PolyError> for CycloError {
    fn from(e: PolyError) -> Self {
        CycloError::Internal(e)
    }
}

/// Which algorithm produced a [`CycloResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CycloAlgorithm {
    MobiusProduct,
    PrimeExtension,
    ArnoldMonagan,
    SquarefreeReduce,
}

/// Phi_n together with the algorithm that computed it.
///
/// Construction checks the structural invariants: degree phi(n), integer
/// coefficients (by representation), leading coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloResult {
    pub n: u64,
    pub poly: Poly,
    pub algorithm: CycloAlgorithm,
}

impl CycloResult {
    fn checked(n: u64, poly: Poly, algorithm: CycloAlgorithm) -> Self {
        let phi = factorize(n).expect("positive index").totient();
        assert_eq!(
            poly.degree(),
            Some(phi as usize),
            "degree of Phi_{n} must be phi({n}) = {phi}"
        );
        assert!(poly.is_monic(), "Phi_{n} must be monic");
        CycloResult { n, poly, algorithm }
    }

    /// Descending coefficient a_n(k), the coefficient of z^{phi(n)-k}.
    pub fn a(&self, k: usize) -> BigInt {
        self.poly.coeff_desc(k)
    }
}

/// Psi_n = (z^n - 1)/Phi_n for n >= 2, with its ascending b-coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvCycloResult {
    pub n: u64,
    pub poly: Poly,
}

impl InvCycloResult {
    /// Ascending coefficient b_n(h) of z^h in Psi_n.
    pub fn b(&self, h: usize) -> BigInt {
        self.poly.coeff(h)
    }
}

/// Exact integer values H_k over the primitive m-th roots, k = 0..=K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStarTable {
    pub m: u64,
    pub values: Vec<BigInt>,
}

impl HStarTable {
    pub fn value(&self, k: usize) -> &BigInt {
        &self.values[k]
    }
}

/// Phi_n by the Mobius product over the divisors of the kernel.
pub fn phi_mobius(n: u64) -> Result<CycloResult, CycloError> {
    if n == 0 {
        return Err(CycloError::InvalidIndex(0));
    }
    let f = factorize(n).map_err(|_| CycloError::InvalidIndex(n))?;
    let mut num = Poly::one();
    let mut dens = Vec::new();
    for d in f.divisors(true) {
        let mu = factorize(d).unwrap().mobius();
        let factor = Poly::power_minus_one((n / d) as usize);
        if mu == 1 {
            num = &num * &factor;
        } else if mu == -1 {
            dens.push(factor);
        }
    }
    for den in &dens {
        num = num.div_exact(den)?;
    }
    Ok(CycloResult::checked(n, num, CycloAlgorithm::MobiusProduct))
}

/// Psi_n = (z^n - 1)/Phi_n, n >= 2. Psi_1 = 1 is kept as an internal
/// constant and n = 1 is rejected here.
pub fn psi(n: u64) -> Result<InvCycloResult, CycloError> {
    if n < 2 {
        return Err(CycloError::InvalidIndex(n));
    }
    let phi = phi_cached(n)?;
    let poly = Poly::power_minus_one(n as usize).div_exact(&phi)?;
    Ok(InvCycloResult { n, poly })
}

static PHI_CACHE: LazyLock<Mutex<HashMap<u64, Arc<Poly>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Memoized Phi_n (Mobius route) for callers that revisit the same index.
/// Indices past the cache limit are computed fresh each time.
pub fn phi_cached(n: u64) -> Result<Arc<Poly>, CycloError> {
    if let Some(p) = PHI_CACHE.lock().unwrap().get(&n) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(phi_mobius(n)?.poly);
    if n <= 4 * CHAIN_CACHE_LIMIT {
        PHI_CACHE
            .lock()
            .unwrap()
            .entry(n)
            .or_insert_with(|| Arc::clone(&p));
    }
    Ok(p)
}

/// The polynomial prod over primitive m-th roots of (1 - zeta z), whose
/// series inverse generates H_k over those roots. This is the coefficient
/// reversal of Phi_m (equal to Phi_m itself for m >= 2 by palindromicity;
/// for m = 1 it is 1 - z, giving H_k = 1 for every k).
fn hstar_generator(phi_m: &Poly) -> Poly {
    phi_m.reversal()
}

/// Exact integer table of H_k over the primitive m-th roots for k = 0..=K,
/// via power-series inversion of the reversed Phi_m.
pub fn hstar_table(m: u64, k_max: usize) -> Result<HStarTable, CycloError> {
    if m == 0 {
        return Err(CycloError::InvalidIndex(0));
    }
    let phi_m = phi_cached(m)?;
    hstar_table_from_phi(m, &phi_m, k_max)
}

fn hstar_table_from_phi(m: u64, phi_m: &Poly, k_max: usize) -> Result<HStarTable, CycloError> {
    let series = hstar_generator(phi_m).series_inverse(k_max)?;
    Ok(HStarTable {
        m,
        values: series.coeffs,
    })
}

/// The same table by the route through Psi_m: 1/Phi_m = -Psi_m * sum z^{sm}
/// as a power series, so H_k is minus the sum of ascending b_m over the
/// indices congruent to k mod m. Exists as an independent check of
/// [`hstar_table`].
pub fn hstar_table_via_psi(m: u64, k_max: usize) -> Result<HStarTable, CycloError> {
    if m < 2 {
        return Err(CycloError::InvalidIndex(m));
    }
    let psi_m = psi(m)?;
    let b = psi_m.poly.coeffs();
    let mut values = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut acc = BigInt::zero();
        let mut h = k % m as usize;
        while h <= k {
            if h < b.len() {
                acc += &b[h];
            }
            h += m as usize;
        }
        values.push(-acc);
    }
    Ok(HStarTable { m, values })
}

/// One prime-extension step: Phi_{mp} from Phi_m and the H table of the
/// primitive m-th roots, for p not dividing m. Phi_m itself comes from the
/// square-free chain (plus substitution when m is not square-free), so the
/// whole route is independent of the Mobius product.
pub fn phi_prime_extension(m: u64, p: u64) -> Result<CycloResult, CycloError> {
    validate_coprime_prime(m, p)?;
    let phi_m = phi_by_chain(m)?;
    let result = extension_step(m, &phi_m, p)?;
    Ok(CycloResult::checked(
        m * p,
        result,
        CycloAlgorithm::PrimeExtension,
    ))
}

fn validate_coprime_prime(m: u64, p: u64) -> Result<(), CycloError> {
    if m == 0 {
        return Err(CycloError::InvalidIndex(0));
    }
    if !is_prime(p) {
        return Err(CycloError::NotPrime(p));
    }
    if m % p == 0 {
        return Err(CycloError::PrimeDividesIndex { m, p });
    }
    Ok(())
}

/// a_{mp}(k) = sum_{s=0}^{[k/p]} a_m(s) H_{k-sp}, all indices descending.
/// For m = 1 the generator reversal makes every H value 1, matching the
/// convention that the single primitive first root is 1.
fn extension_step(m: u64, phi_m: &Poly, p: u64) -> Result<Poly, CycloError> {
    let phi_of_m = phi_m.degree().expect("Phi_m is nonzero") as u64;
    let deg_out = ((p - 1) * phi_of_m) as usize;
    let table = hstar_table_from_phi(m, phi_m, deg_out)?;
    let a_m = phi_m.to_descending();
    let p = p as usize;
    let mut a_out = vec![BigInt::zero(); deg_out + 1];
    for (k, slot) in a_out.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for s in 0..=(k / p).min(a_m.len() - 1) {
            acc += &a_m[s] * table.value(k - s * p);
        }
        *slot = acc;
    }
    Ok(Poly::from_descending(a_out))
}

/// Coefficient spreading for p | m: Phi_{mp}(z) = Phi_m(z^p).
pub fn phi_substitute(m: u64, p: u64) -> Result<CycloResult, CycloError> {
    if m == 0 {
        return Err(CycloError::InvalidIndex(0));
    }
    if !is_prime(p) {
        return Err(CycloError::NotPrime(p));
    }
    if m % p != 0 {
        return Err(CycloError::PrimeDoesNotDivideIndex { m, p });
    }
    let phi_m = phi_cached(m)?;
    Ok(CycloResult::checked(
        m * p,
        phi_m.substitute_power(p as usize),
        CycloAlgorithm::SquarefreeReduce,
    ))
}

/// Phi_n via the square-free reduction: run the prime-extension chain on
/// the kernel gamma(n), then substitute z^{n/gamma(n)}.
pub fn phi_squarefree_reduce(n: u64) -> Result<CycloResult, CycloError> {
    if n == 0 {
        return Err(CycloError::InvalidIndex(0));
    }
    let poly = phi_by_chain(n)?;
    Ok(CycloResult::checked(
        n,
        poly,
        CycloAlgorithm::SquarefreeReduce,
    ))
}

static EXT_CHAIN_CACHE: LazyLock<Mutex<HashMap<u64, Arc<Poly>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Chains memoize only below this index. Larger kernels recompute their
/// last steps from the cached prefixes, which keeps long range sweeps from
/// pinning hundreds of megabytes of coefficients.
const CHAIN_CACHE_LIMIT: u64 = 512;

/// Phi_n computed without the Mobius product: extension chain over the
/// kernel's primes (ascending), then coefficient spreading.
fn phi_by_chain(n: u64) -> Result<Poly, CycloError> {
    let f = factorize(n).map_err(|_| CycloError::InvalidIndex(n))?;
    let gamma = f.kernel();
    let core = extension_chain(gamma)?;
    let spread = (n / gamma) as usize;
    Ok(if spread == 1 {
        core.as_ref().clone()
    } else {
        core.substitute_power(spread)
    })
}

/// Extension chain for square-free m, memoized: Phi_1, then one prime at a
/// time in ascending order.
fn extension_chain(m: u64) -> Result<Arc<Poly>, CycloError> {
    if let Some(p) = EXT_CHAIN_CACHE.lock().unwrap().get(&m) {
        return Ok(Arc::clone(p));
    }
    let f = factorize(m).map_err(|_| CycloError::InvalidIndex(m))?;
    debug_assert!(f.factors().iter().all(|&(_, v)| v == 1));
    let result = match f.factors().split_last() {
        None => Poly::from_i64(&[-1, 1]), // Phi_1 = z - 1
        Some((&(p, _), _)) => {
            let prefix = extension_chain(m / p)?;
            extension_step(m / p, &prefix, p)?
        }
    };
    let arc = Arc::new(result);
    if m <= CHAIN_CACHE_LIMIT {
        EXT_CHAIN_CACHE
            .lock()
            .unwrap()
            .entry(m)
            .or_insert_with(|| Arc::clone(&arc));
    }
    Ok(arc)
}

/// One Arnold-Monagan step: Phi_{mp} from Phi_m and Psi_m for p not
/// dividing m, everything in ascending coefficient order.
pub fn phi_arnold_monagan(m: u64, p: u64) -> Result<CycloResult, CycloError> {
    validate_coprime_prime(m, p)?;
    ensure_am_convention();
    let (phi_m, psi_m) = am_inputs(m)?;
    let result = am_step(m, &phi_m, &psi_m, p);
    Ok(CycloResult::checked(
        m * p,
        result,
        CycloAlgorithm::ArnoldMonagan,
    ))
}

/// a_{mp}(k) = a_{mp}(k - m) - sum_{jp + h = k} a_m(j) b_m(h), filled in
/// ascending k so that the back-reference is already available.
fn am_step(m: u64, phi_m: &Poly, psi_m: &Poly, p: u64) -> Poly {
    let phi_of_m = phi_m.degree().expect("Phi_m is nonzero");
    let deg_out = (p as usize - 1) * phi_of_m;
    let a_m = phi_m.coeffs();
    let b_m = psi_m.coeffs();
    let m = m as usize;
    let p = p as usize;
    let mut a = vec![BigInt::zero(); deg_out + 1];
    for k in 0..=deg_out {
        let mut acc = if k >= m { a[k - m].clone() } else { BigInt::zero() };
        let mut j = 0usize;
        while j * p <= k && j < a_m.len() {
            let h = k - j * p;
            if h < b_m.len() {
                acc -= &a_m[j] * &b_m[h];
            }
            j += 1;
        }
        a[k] = acc;
    }
    Poly::from_coeffs(a)
}

static AM_CHAIN_CACHE: LazyLock<Mutex<HashMap<u64, Arc<(Poly, Poly)>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// (Phi_m, Psi_m) for the Arnold-Monagan route. Phi comes from this route's
/// own chain for the kernel (not the Mobius product); Psi is the exact
/// quotient (z^m - 1)/Phi_m, with Psi_1 = 1 as an explicit constant.
fn am_inputs(m: u64) -> Result<(Poly, Poly), CycloError> {
    if m == 1 {
        return Ok((Poly::from_i64(&[-1, 1]), Poly::one()));
    }
    let f = factorize(m).map_err(|_| CycloError::InvalidIndex(m))?;
    let gamma = f.kernel();
    let core = am_chain(gamma)?;
    let phi = if m == gamma {
        core.0.clone()
    } else {
        core.0.substitute_power((m / gamma) as usize)
    };
    let psi = Poly::power_minus_one(m as usize).div_exact(&phi)?;
    Ok((phi, psi))
}

/// Arnold-Monagan chain over square-free m, ascending prime order.
fn am_chain(m: u64) -> Result<Arc<(Poly, Poly)>, CycloError> {
    if let Some(pair) = AM_CHAIN_CACHE.lock().unwrap().get(&m) {
        return Ok(Arc::clone(pair));
    }
    let f = factorize(m).map_err(|_| CycloError::InvalidIndex(m))?;
    let phi = match f.factors().split_last() {
        None => Poly::from_i64(&[-1, 1]),
        Some((&(p, _), _)) => {
            let prefix = am_chain(m / p)?;
            am_step(m / p, &prefix.0, &prefix.1, p)
        }
    };
    let psi = if m == 1 {
        Poly::one()
    } else {
        Poly::power_minus_one(m as usize).div_exact(&phi)?
    };
    let arc = Arc::new((phi, psi));
    if m <= CHAIN_CACHE_LIMIT {
        AM_CHAIN_CACHE
            .lock()
            .unwrap()
            .entry(m)
            .or_insert_with(|| Arc::clone(&arc));
    }
    Ok(arc)
}

static AM_CONVENTION: Once = Once::new();

/// The recursion's coefficient-order convention is fixed empirically: on
/// first use, rebuild Phi_6 from (Phi_2, Psi_2) and compare against the
/// Mobius product.
fn ensure_am_convention() {
    AM_CONVENTION.call_once(|| {
        let phi2 = Poly::from_i64(&[1, 1]);
        let psi2 = Poly::from_i64(&[-1, 1]);
        let got = am_step(2, &phi2, &psi2, 3);
        let want = phi_mobius(6).expect("Phi_6").poly;
        assert_eq!(got, want, "coefficient-order convention self-test failed");
    });
}

/// Verify the recursion for H over non-primitive roots, both cases,
/// against exact coefficients and the complex brute force.
///
/// For coprime (m, p): H_k over the non-primitive mp-th roots must equal
/// both a_{mp}(k) and sum_s a_m(s) H_{k-sp}(primitive m-th roots), for
/// k = 0..=(p-1)phi(m). When mp*p stays small enough for the oracle, the
/// dividing-prime case is additionally checked one level up: H_k over the
/// non-primitive (mp*p)-th roots is a_{mp}(k/p) when p | k and 0 otherwise.
pub fn hstarstar_check(m: u64, p: u64) -> Result<IdentityReport, CycloError> {
    validate_coprime_prime(m, p)?;
    let mp = m * p;
    assert!(mp <= 60, "complex brute force is only trusted up to 60");
    let f_m = factorize(m).unwrap();
    let phi_of_m = f_m.totient();
    let k_top = ((p - 1) * phi_of_m) as usize;

    let phi_m = phi_cached(m)?;
    let phi_mp = phi_cached(mp)?;
    let table = hstar_table(m, k_top)?;
    let roots_mp = RootVector::non_primitive(mp);

    let mut pass = true;
    let mut max_dev = 0.0f64;
    for k in 0..=k_top {
        let exact = phi_mp.coeff_desc(k);
        // Recursion right-hand side, exactly.
        let mut rhs = BigInt::zero();
        let a_m = phi_m.to_descending();
        for s in 0..=(k / p as usize).min(a_m.len() - 1) {
            rhs += &a_m[s] * table.value(k - s * p as usize);
        }
        if rhs != exact {
            pass = false;
        }
        // Complex brute force over the non-primitive mp-th roots; the
        // tolerance scales with the largest intermediate the DP saw.
        let (brute, scale) = roots_mp.h_scaled(k);
        let dev = (brute - num_complex::Complex64::new(exact.to_f64().unwrap(), 0.0)).norm();
        max_dev = max_dev.max(dev);
        if dev > 1e-9 * (1.0 + scale) {
            pass = false;
        }
    }

    // Dividing case, one level up: p | mp. Only within the oracle's
    // envelope; past ~60 roots the complex DP loses the integer part to
    // cancellation.
    if mp * p <= 60 {
        let phi_mpp = phi_cached(mp * p)?;
        let roots_mpp = RootVector::non_primitive(mp * p);
        let top = (p * factorize(mp).unwrap().totient()) as usize;
        for k in (0..=top).step_by(7).chain([top]) {
            let expected = if k % p as usize == 0 {
                phi_mp.coeff_desc(k / p as usize)
            } else {
                BigInt::zero()
            };
            assert_eq!(phi_mpp.coeff_desc(k), expected, "spread layout k={k}");
            let (brute, scale) = roots_mpp.h_scaled(k);
            let dev =
                (brute - num_complex::Complex64::new(expected.to_f64().unwrap(), 0.0)).norm();
            max_dev = max_dev.max(dev);
            if dev > 1e-9 * (1.0 + scale) {
                pass = false;
            }
        }
    }

    Ok(IdentityReport::checked(
        IdentityKind::HStarRecursion,
        mp,
        serde_json::json!({ "m": m, "p": p }),
        "recursion",
        "exact and brute-force coefficients",
        pass,
    )
    .with_deviation(max_dev))
}
