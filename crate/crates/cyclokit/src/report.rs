//! Structured pass/fail records emitted by the identity verifiers.
//!
//! Sweeps report one record per (identity, n, parameters) instance instead
//! of asserting inline, so a counterexample comes out with everything
//! needed to reproduce it, and the CLI can stream the records as JSONL.

use serde::{Deserialize, Serialize};

/// Which identity family a record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    /// Mu-weighted Ramanujan-sum combination equals n - phi(n).
    CnDirect,
    /// Gated alternating sum of shifted Ramanujan sums vanishes.
    CnShiftedSum,
    /// Non-square-free variant with one kernel divisor excluded.
    CnExcludedSum,
    /// Explicit two-prime-factor identity families.
    Omega2Family,
    /// Phi_n divides the Ramanujan-sum polynomial T_n, by both routes.
    TothDivisibility,
    /// deg T_n = n - n/gamma(n).
    TothDegree,
    /// Holder evaluation equals the direct complex root sum.
    HolderMatchesBruteforce,
    /// One of the basic Ramanujan-sum properties (parity, period, ...).
    RamanujanProperty,
    /// Recursion for H over non-primitive roots, both the coprime and the
    /// dividing-prime case, against exact coefficients.
    HStarRecursion,
    /// Closed form for H_m(1, zeta, ..., zeta^k) matches brute force.
    ClosedFormH,
    /// H_m over all n-th roots is 1 when n | m, else 0.
    FullRootVectorH,
    /// E/H exchange between primitive and non-primitive root vectors.
    RootFormulaBridge,
    /// Exact a_n(k) equals rounded complex H and E evaluations.
    CoefficientBridge,
    /// Coefficients of two-prime cyclotomics lie in {-1, 0, 1} and the
    /// interval counting device reproduces them.
    BinaryCoefficient,
    /// Independent cyclotomic algorithms agree bit-exactly.
    CrossAlgorithm,
    /// Phi_n vanishes exactly at the primitive n-th roots and nowhere else.
    EvalAtRoots,
}

/// Pass/fail record for one verification instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: IdentityKind,
    pub n: u64,
    /// Instance parameters, e.g. {"d1": 2, "h": 5}.
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    /// Largest numeric deviation observed, for tolerance-based checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
}

impl IdentityReport {
    pub fn exact(
        identity: IdentityKind,
        n: u64,
        params: serde_json::Value,
        lhs: i128,
        rhs: i128,
    ) -> Self {
        IdentityReport {
            identity,
            n,
            params,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
            max_deviation: None,
        }
    }

    pub fn checked(
        identity: IdentityKind,
        n: u64,
        params: serde_json::Value,
        lhs: impl ToString,
        rhs: impl ToString,
        pass: bool,
    ) -> Self {
        IdentityReport {
            identity,
            n,
            params,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
            max_deviation: None,
        }
    }

    pub fn with_deviation(mut self, dev: f64) -> Self {
        self.max_deviation = Some(dev);
        self
    }
}
