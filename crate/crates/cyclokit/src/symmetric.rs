//! Complete homogeneous and elementary symmetric polynomials evaluated at
//! root-of-unity vectors.
//!
//! The evaluators use the column-by-column dynamic program (one variable at
//! a time) rather than monomial enumeration, so they stay exact in floating
//! complex arithmetic at the sizes the oracles need. Vectors may contain
//! exact zeros as padding; padded entries are skipped, which is what makes
//! H_k(x_1,...,x_h,0,...,0) = H_k(x_1,...,x_h) hold by construction.

use crate::numtheory::{gcd, is_prime, residue_unchecked};
use crate::poly::Poly;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::f64::consts::TAU;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricError {
    /// A claimed root failed the residual test.
    NotARoot { index: usize, residual: f64 },
    /// More roots than the polynomial's degree.
    TooManyRoots { given: usize, degree: usize },
    ZeroPolynomial,
    EqualPrimes(u64),
    NotPrime(u64),
    IndexOutOfRange { k: u64, max: u64 },
    /// A value that is provably an integer failed the rounding tolerance.
    NotAnInteger { re: f64, im: f64 },
}

impl fmt::Display for SymmetricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricError::NotARoot { index, residual } => {
                write!(f, "entry {index} is not a root (residual {residual:.3e})")
            }
            SymmetricError::TooManyRoots { given, degree } => {
                write!(f, "{given} roots given for a degree-{degree} polynomial")
            }
            SymmetricError::ZeroPolynomial => write!(f, "the zero polynomial has no roots list"),
            SymmetricError::EqualPrimes(p) => write!(f, "primes must be distinct, both are {p}"),
            SymmetricError::NotPrime(p) => write!(f, "{p} is not prime"),
            SymmetricError::IndexOutOfRange { k, max } => {
                write!(f, "index {k} out of range 0..={max}")
            }
            SymmetricError::NotAnInteger { re, im } => {
                write!(f, "value {re}+{im}i does not round to an integer within tolerance")
            }
        }
    }
}

impl std::error::Error for SymmetricError {}

/// e^{2 pi i j / n}.
pub fn zeta(n: u64, j: i64) -> Complex64 {
    let r = residue_unchecked(j, n) as f64;
    Complex64::from_polar(1.0, TAU * r / n as f64)
}

/// H_r over the nonzero entries: sum of all monomials of degree r.
/// H_0 = 1 on any vector, including the empty one.
pub fn h_complex(entries: &[Complex64], r: usize) -> Complex64 {
    let mut cur = vec![Complex64::new(0.0, 0.0); r + 1];
    cur[0] = Complex64::new(1.0, 0.0);
    for &x in entries {
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in 1..=r {
            let prev = cur[j - 1];
            cur[j] += x * prev;
        }
    }
    cur[r]
}

/// As [`h_complex`], also returning the largest intermediate magnitude the
/// dynamic program passed through. Floating error grows with that scale,
/// so tolerance decisions for large vectors should use it.
pub fn h_complex_scaled(entries: &[Complex64], r: usize) -> (Complex64, f64) {
    let mut cur = vec![Complex64::new(0.0, 0.0); r + 1];
    cur[0] = Complex64::new(1.0, 0.0);
    let mut scale = 1.0f64;
    for &x in entries {
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in 1..=r {
            let prev = cur[j - 1];
            cur[j] += x * prev;
            scale = scale.max(cur[j].norm());
        }
    }
    (cur[r], scale)
}

/// E_k over the nonzero entries: sum of all k-fold products of distinct
/// entries. E_0 = 1; E_k = 0 once k exceeds the nonzero count.
pub fn e_complex(entries: &[Complex64], k: usize) -> Complex64 {
    let mut cur = vec![Complex64::new(0.0, 0.0); k + 1];
    cur[0] = Complex64::new(1.0, 0.0);
    for &x in entries {
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for j in (1..=k).rev() {
            let prev = cur[j - 1];
            cur[j] += x * prev;
        }
    }
    cur[k]
}

/// Double-double arithmetic: an unevaluated sum of two f64s, giving about
/// 32 significant digits. The strict integer-rounding gates need the
/// evaluators to be far more accurate than the intermediate magnitudes
/// allow in plain f64, and this keeps them order-independent.
mod dd {
    #[derive(Debug, Clone, Copy, Default)]
    pub struct Dd {
        pub hi: f64,
        pub lo: f64,
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn quick_renorm(hi: f64, lo: f64) -> Dd {
        let s = hi + lo;
        Dd {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn two_prod(a: f64, b: f64) -> Dd {
        let p = a * b;
        Dd {
            hi: p,
            lo: a.mul_add(b, -p),
        }
    }

    impl Dd {
        pub fn from(x: f64) -> Dd {
            Dd { hi: x, lo: 0.0 }
        }

        pub fn add(self, other: Dd) -> Dd {
            let s = two_sum(self.hi, other.hi);
            quick_renorm(s.hi, s.lo + self.lo + other.lo)
        }

        pub fn mul(self, other: Dd) -> Dd {
            let p = two_prod(self.hi, other.hi);
            quick_renorm(p.hi, p.lo + self.hi * other.lo + self.lo * other.hi)
        }
    }

    #[derive(Debug, Clone, Copy, Default)]
    pub struct DdComplex {
        pub re: Dd,
        pub im: Dd,
    }

    impl DdComplex {
        pub fn from(z: num_complex::Complex64) -> DdComplex {
            DdComplex {
                re: Dd::from(z.re),
                im: Dd::from(z.im),
            }
        }

        pub fn one() -> DdComplex {
            DdComplex {
                re: Dd::from(1.0),
                im: Dd::from(0.0),
            }
        }

        pub fn add(self, other: DdComplex) -> DdComplex {
            DdComplex {
                re: self.re.add(other.re),
                im: self.im.add(other.im),
            }
        }

        pub fn mul(self, other: DdComplex) -> DdComplex {
            let neg = |d: Dd| Dd { hi: -d.hi, lo: -d.lo };
            DdComplex {
                re: self.re.mul(other.re).add(neg(self.im.mul(other.im))),
                im: self.re.mul(other.im).add(self.im.mul(other.re)),
            }
        }

        pub fn to_complex(self) -> num_complex::Complex64 {
            num_complex::Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
        }
    }
}

/// H_r in double-double precision, for checks gated by the strict integer
/// tolerance where intermediate growth would drown plain f64.
pub fn h_complex_precise(entries: &[Complex64], r: usize) -> Complex64 {
    use dd::DdComplex;
    let mut cur = vec![DdComplex::default(); r + 1];
    cur[0] = DdComplex::one();
    for &x in entries {
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        let xd = DdComplex::from(x);
        for j in 1..=r {
            let prev = cur[j - 1];
            cur[j] = cur[j].add(xd.mul(prev));
        }
    }
    cur[r].to_complex()
}

/// E_k in double-double precision.
pub fn e_complex_precise(entries: &[Complex64], k: usize) -> Complex64 {
    use dd::DdComplex;
    let mut cur = vec![DdComplex::default(); k + 1];
    cur[0] = DdComplex::one();
    for &x in entries {
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        let xd = DdComplex::from(x);
        for j in (1..=k).rev() {
            let prev = cur[j - 1];
            cur[j] = cur[j].add(xd.mul(prev));
        }
    }
    cur[k].to_complex()
}

/// A vector of roots of unity, possibly zero-padded.
#[derive(Debug, Clone)]
pub struct RootVector {
    entries: Vec<Complex64>,
}

impl RootVector {
    /// Wrap entries; every nonzero entry must have unit modulus within 1e-12.
    pub fn new(entries: Vec<Complex64>) -> Self {
        for (i, x) in entries.iter().enumerate() {
            if *x != Complex64::new(0.0, 0.0) {
                assert!(
                    (x.norm() - 1.0).abs() <= 1e-12,
                    "entry {i} has modulus {} away from the unit circle",
                    x.norm()
                );
            }
        }
        RootVector { entries }
    }

    /// (1, zeta_n, ..., zeta_n^{n-1}): all n-th roots of unity.
    pub fn all_roots(n: u64) -> Self {
        RootVector::new((0..n).map(|j| zeta(n, j as i64)).collect())
    }

    /// Length-n vector with zeta_n^j at slot j when gcd(j, n) = 1 and zero
    /// padding elsewhere: the primitive n-th roots.
    pub fn primitive(n: u64) -> Self {
        RootVector::new(
            (1..=n)
                .map(|j| {
                    if gcd(j, n) == 1 {
                        zeta(n, j as i64)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect(),
        )
    }

    /// The complement: zeta_n^j at slots with gcd(j, n) > 1, zeros elsewhere.
    pub fn non_primitive(n: u64) -> Self {
        RootVector::new(
            (1..=n)
                .map(|j| {
                    if gcd(j, n) > 1 {
                        zeta(n, j as i64)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
                .collect(),
        )
    }

    /// (1, zeta_n, ..., zeta_n^k), exponents wrapping around the circle.
    pub fn powers(n: u64, k: u64) -> Self {
        RootVector::new((0..=k).map(|j| zeta(n, j as i64)).collect())
    }

    pub fn concat(&self, other: &RootVector) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        RootVector { entries }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Number of nonzero (non-padding) entries.
    pub fn support(&self) -> usize {
        self.entries
            .iter()
            .filter(|x| **x != Complex64::new(0.0, 0.0))
            .count()
    }

    pub fn h(&self, r: usize) -> Complex64 {
        h_complex(&self.entries, r)
    }

    pub fn h_scaled(&self, r: usize) -> (Complex64, f64) {
        h_complex_scaled(&self.entries, r)
    }

    pub fn h_precise(&self, r: usize) -> Complex64 {
        h_complex_precise(&self.entries, r)
    }

    pub fn e_precise(&self, k: usize) -> Complex64 {
        e_complex_precise(&self.entries, k)
    }

    pub fn e(&self, k: usize) -> Complex64 {
        e_complex(&self.entries, k)
    }
}

/// Round a complex value that is provably an integer. Tolerances are strict:
/// |imag| <= 1e-9 and |real - round(real)| <= 1e-6; anything looser is an
/// error, never a silent round.
pub fn round_to_integer(z: Complex64) -> Result<i64, SymmetricError> {
    let r = z.re.round();
    if z.im.abs() <= 1e-9 && (z.re - r).abs() <= 1e-6 {
        Ok(r as i64)
    } else {
        Err(SymmetricError::NotAnInteger { re: z.re, im: z.im })
    }
}

/// Closed form for H_m(1, zeta_n, ..., zeta_n^k), n >= 2:
/// 1 when k or m vanishes mod n; 0 when the residues sum to at least n;
/// otherwise the product prod_{s=1}^{{k}_n} (1 - zeta^{{m}_n+s})/(1 - zeta^s).
/// The first case wins on overlap.
pub fn h_closed_form(n: u64, k: u64, m: u64) -> Complex64 {
    assert!(n >= 2);
    let kn = k % n;
    let mn = m % n;
    if kn == 0 || mn == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if kn + mn >= n {
        return Complex64::new(0.0, 0.0);
    }
    let mut acc = Complex64::new(1.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    for s in 1..=kn {
        acc *= (one - zeta(n, (mn + s) as i64)) / (one - zeta(n, s as i64));
    }
    acc
}

/// Tail coefficients of `p` after factoring out the given roots.
///
/// With t roots of a degree-m polynomial, returns c_0..c_{m-t} (descending
/// order) such that p(z) = prod (z - z_i) * sum_j c_j z^{m-t-j}, where
/// c_k = sum_{j<=k} a_j H_{k-j}(roots). The claimed roots are residual
/// tested first, the vanishing conditions for every root prefix are
/// checked, and the product is expanded and compared against `p`.
pub fn vieta_tail_coeffs(p: &Poly, roots: &[Complex64]) -> Result<Vec<Complex64>, SymmetricError> {
    let m = p.degree().ok_or(SymmetricError::ZeroPolynomial)?;
    let t = roots.len();
    if t > m {
        return Err(SymmetricError::TooManyRoots { given: t, degree: m });
    }
    let scale = p.abs_coeff_sum();
    let tol = 1e-9 * (1.0 + scale);
    for (index, z) in roots.iter().enumerate() {
        let residual = p.eval_complex(*z).norm();
        if residual > tol * (1.0 + z.norm().powi(m as i32)) {
            return Err(SymmetricError::NotARoot { index, residual });
        }
    }
    let a: Vec<Complex64> = p
        .to_descending()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();

    // Vanishing conditions: for each root prefix z_0..z_s the weighted sum
    // sum_j a_j H_{m-s-j}(prefix) must vanish.
    for s in 0..t {
        let prefix = &roots[..=s];
        let top = m - s;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut mag = 0.0f64;
        for (j, aj) in a.iter().enumerate().take(top + 1) {
            let hv = h_complex(prefix, top - j);
            sum += aj * hv;
            mag += aj.norm() * hv.norm();
        }
        if sum.norm() > 1e-9 * (1.0 + mag) {
            return Err(SymmetricError::NotARoot {
                index: s,
                residual: sum.norm(),
            });
        }
    }

    let tail_len = m - t;
    let coeffs: Vec<Complex64> = (0..=tail_len)
        .map(|k| {
            (0..=k)
                .map(|j| a[j] * h_complex(roots, k - j))
                .sum::<Complex64>()
        })
        .collect();

    // Multiply back: prod (z - z_i) * tail must reproduce p.
    let mut product = vec![Complex64::new(1.0, 0.0)];
    for z in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); product.len() + 1];
        for (i, c) in product.iter().enumerate() {
            next[i + 1] += c; // times z
            next[i] -= c * z;
        }
        product = next;
    }
    // product is ascending; coeffs is descending of the tail.
    let mut rebuilt = vec![Complex64::new(0.0, 0.0); m + 1];
    for (i, q) in product.iter().enumerate() {
        for (j, c) in coeffs.iter().enumerate() {
            rebuilt[i + tail_len - j] += q * c;
        }
    }
    let budget = 1e-9
        * (1.0
            + product.iter().map(|c| c.norm()).sum::<f64>()
                * coeffs.iter().map(|c| c.norm()).sum::<f64>()
            + scale);
    for (i, want) in rebuilt.iter().enumerate() {
        let got = Complex64::new(p.coeff(i).to_f64().unwrap_or(f64::NAN), 0.0);
        if (want - got).norm() > budget {
            return Err(SymmetricError::NotARoot {
                index: i,
                residual: (want - got).norm(),
            });
        }
    }
    Ok(coeffs)
}

/// Coefficient a_{pq}(k) of the two-prime cyclotomic polynomial, computed by
/// interval counting: with pv = 1 (mod q), H_k over the combined root
/// vectors is 1 exactly when [k(v/q - 1/(pq)), kv/q] contains an integer,
/// and the coefficient is the difference of consecutive H values.
pub fn binary_coeff(p: u64, q: u64, k: u64) -> Result<i64, SymmetricError> {
    if p == q {
        return Err(SymmetricError::EqualPrimes(p));
    }
    if !is_prime(p) {
        return Err(SymmetricError::NotPrime(p));
    }
    if !is_prime(q) {
        return Err(SymmetricError::NotPrime(q));
    }
    let max = (p - 1) * (q - 1);
    if k > max {
        return Err(SymmetricError::IndexOutOfRange { k, max });
    }
    Ok(interval_indicator(p, q, k as i64) - interval_indicator(p, q, k as i64 - 1))
}

/// 1 when [t(v/q - 1/(pq)), tv/q] contains an integer, 0 otherwise (and for
/// negative t). Exact integer arithmetic: the interval contains an integer
/// iff floor(tvp / pq) >= ceil(t(pv-1) / pq).
fn interval_indicator(p: u64, q: u64, t: i64) -> i64 {
    if t < 0 {
        return 0;
    }
    let t = t as u128;
    let (p, q) = (p as u128, q as u128);
    let v = (1..q).find(|v| (p * v) % q == 1).expect("p invertible mod q");
    let pq = p * q;
    let lo_num = t * (p * v - 1); // lower endpoint times pq
    let hi_num = t * v * p; // upper endpoint times pq
    let ceil_lo = lo_num.div_ceil(pq);
    let floor_hi = hi_num / pq;
    i64::from(floor_hi >= ceil_lo)
}
