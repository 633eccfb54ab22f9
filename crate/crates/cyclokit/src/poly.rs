//! Dense univariate polynomials with exact big-integer coefficients.
//!
//! `Poly` stores coefficients in ascending degree order as a `Vec<BigInt>`.
//! Invariant: the vector is either empty (zero polynomial) or the last
//! element is nonzero. The descending-index view a_j (the coefficient of
//! z^{m-j} in a degree-m polynomial) is confined to the conversion helpers;
//! everything else works ascending.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    DivisionByZero,
    /// The divisor does not divide the dividend exactly over the integers.
    NonExactDivision,
    /// Series inversion requires constant term +1 or -1.
    BadConstantTerm,
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DivisionByZero => write!(f, "division by the zero polynomial"),
            PolyError::NonExactDivision => write!(f, "division is not exact over the integers"),
            PolyError::BadConstantTerm => {
                write!(f, "series inversion requires constant term +1 or -1")
            }
            PolyError::Parse(msg) => write!(f, "cannot parse polynomial: {msg}"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Dense integer polynomial, ascending coefficient order, normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

/// Truncated power series: exactly K+1 ascending coefficients, zero-padded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    pub coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::from(1))
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Build from sparse (exponent, coefficient) terms.
    pub fn from_terms(terms: &[(usize, i64)]) -> Self {
        let top = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); top + 1];
        for &(e, c) in terms {
            coeffs[e] += BigInt::from(c);
        }
        Poly::from_coeffs(coeffs)
    }

    /// z^n - 1.
    pub fn power_minus_one(n: usize) -> Self {
        Poly::from_terms(&[(n, 1), (0, -1)])
    }

    /// The paper-style descending list: index j holds the coefficient of
    /// z^{deg - j}. Empty for the zero polynomial.
    pub fn from_descending(mut coeffs: Vec<BigInt>) -> Self {
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Ascending coefficient of z^i (zero outside the stored range).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Descending coefficient a_j, i.e. the coefficient of z^{deg - j}.
    /// Zero when j is out of range or the polynomial is zero.
    pub fn coeff_desc(&self, j: usize) -> BigInt {
        match self.coeffs.len().checked_sub(1 + j) {
            Some(i) => self.coeffs[i].clone(),
            None => BigInt::zero(),
        }
    }

    pub fn to_descending(&self) -> Vec<BigInt> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map(|c| *c == BigInt::from(1)).unwrap_or(false)
    }

    /// Reversal z^deg * p(1/z). Reversing twice returns the original only
    /// when the constant term is nonzero.
    pub fn reversal(&self) -> Poly {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::from_coeffs(v)
    }

    /// Substitute z -> z^k, spreading coefficients with zero gaps.
    pub fn substitute_power(&self, k: usize) -> Poly {
        assert!(k >= 1);
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Poly { coeffs }
    }

    /// Quotient and remainder. The divisor's leading coefficient must divide
    /// every intermediate leading term (always true for monic divisors);
    /// otherwise this reports `NonExactDivision`.
    pub fn div_rem(&self, den: &Poly) -> Result<(Poly, Poly), PolyError> {
        Ok(self.div_rem_counted(den)?.0)
    }

    /// As [`Poly::div_rem`], additionally returning the number of
    /// coefficient operations performed (for the benchmark harness).
    pub fn div_rem_counted(&self, den: &Poly) -> Result<((Poly, Poly), u64), PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.coeffs.len() < den.coeffs.len() {
            return Ok(((Poly::zero(), self.clone()), 0));
        }
        let dlead = den.coeffs.last().unwrap();
        let ddeg = den.coeffs.len() - 1;
        // Nonzero divisor terms below the leading one.
        let den_terms: Vec<(usize, &BigInt)> = den.coeffs[..ddeg]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut work = self.coeffs.clone();
        let qlen = work.len() - ddeg;
        let mut q = vec![BigInt::zero(); qlen];
        let mut ops = 0u64;
        for k in (0..qlen).rev() {
            let lead = std::mem::take(&mut work[k + ddeg]);
            if lead.is_zero() {
                continue;
            }
            let (qk, r) = num_integer::div_rem(lead, dlead.clone());
            ops += 1;
            if !r.is_zero() {
                return Err(PolyError::NonExactDivision);
            }
            for &(i, c) in &den_terms {
                let prod = &qk * c;
                work[k + i] -= prod;
                ops += 1;
            }
            q[k] = qk;
        }
        work.truncate(ddeg);
        Ok(((Poly::from_coeffs(q), Poly::from_coeffs(work)), ops))
    }

    /// Exact quotient; `NonExactDivision` doubles as a divisibility oracle.
    pub fn div_exact(&self, den: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NonExactDivision)
        }
    }

    /// Power-series inverse mod z^{K+1}; requires constant term +-1 and is
    /// normalized so that p * q == 1 (mod z^{K+1}).
    pub fn series_inverse(&self, k: usize) -> Result<SeriesPrefix, PolyError> {
        let one = BigInt::from(1);
        let c0 = self.coeff(0);
        if c0 != one && c0 != -&one {
            return Err(PolyError::BadConstantTerm);
        }
        let terms: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut q = vec![BigInt::zero(); k + 1];
        q[0] = c0.clone(); // 1/c0 = c0 for c0 = +-1
        for i in 1..=k {
            let mut acc = BigInt::zero();
            for &(j, c) in &terms {
                if j > i {
                    break;
                }
                acc += c * &q[i - j];
            }
            q[i] = -(&c0 * acc); // divide by c0 = multiply by c0
        }
        Ok(SeriesPrefix { coeffs: q })
    }

    /// Horner evaluation in double-precision complex arithmetic.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Sum of absolute coefficient values as f64, the scale used by the
    /// complex zero tolerance.
    pub fn abs_coeff_sum(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }
}

/// Scale-aware zero test for complex oracle values:
/// |value| <= 1e-9 * (1 + scale).
pub fn is_zero_scaled(value: Complex64, scale: f64) -> bool {
    value.norm() <= 1e-9 * (1.0 + scale)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(coeffs.len().max(rhs.coeffs.len()), BigInt::zero());
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Poly {
    /// Human-readable form, highest degree first: "z^4 - z^2 + 1".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = mag != BigInt::from(1) || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    /// Parse a comma-separated ascending coefficient list, e.g. "-1,0,1"
    /// for z^2 - 1. The Unicode minus sign is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned = s.replace('\u{2212}', "-");
        let mut coeffs = Vec::new();
        for part in cleaned.split(',') {
            let t = part.trim();
            if t.is_empty() {
                return Err(PolyError::Parse("empty coefficient".into()));
            }
            let c = BigInt::from_str(t)
                .map_err(|e| PolyError::Parse(format!("bad coefficient {t:?}: {e}")))?;
            coeffs.push(c);
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Serialize for Poly {
    /// JSON form: array of decimal strings, ascending, so coefficients
    /// beyond 64 bits survive the trip.
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(de)?;
        let mut coeffs = Vec::with_capacity(strings.len());
        for s in &strings {
            coeffs.push(
                BigInt::from_str(s.trim())
                    .map_err(|e| D::Error::custom(format!("bad coefficient {s:?}: {e}")))?,
            );
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}
