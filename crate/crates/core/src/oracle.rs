//! Brute-force ground truth for the fast path.
//!
//! The oracle materializes `n^n` as a full [`Natural`], renders it in
//! decimal, and reads every functional off the digit string — trailing
//! zeros by counting `'0'` characters, the tail pair by looking at the
//! last two characters that survive stripping.  It shares no modular
//! arithmetic with the `selfpow` module, which is the point: when the
//! differential sweep says the two routes agree, they agree for
//! independent reasons.
//!
//! Nothing here tries to be fast.  The limit guard exists because `n^n`
//! has about `n·log₁₀(n)` digits and someone will eventually type a
//! seven-digit `n`.

use std::fmt;
use std::str::FromStr;

use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Natural;
use crate::selfpow;

/// Default ceiling for oracle expansion; `n^n` at 5000 is ~18,500 digits,
/// which keeps a full differential sweep at desk scale.
pub const DEFAULT_ORACLE_LIMIT: u64 = 5000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n = {n} exceeds the oracle limit {limit} (guard against expanding n^n at that size)")]
    LimitExceeded { n: u64, limit: u64 },
    #[error("the oracle domain starts at n = 1")]
    ZeroInput,
}

/// The five functionals the differential sweep can compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    Tail2,
    Lnzd,
    Rbln,
    TrailingZeros,
    LastDigit,
}

impl Functional {
    pub const ALL: [Functional; 5] = [
        Functional::Tail2,
        Functional::Lnzd,
        Functional::Rbln,
        Functional::TrailingZeros,
        Functional::LastDigit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Functional::Tail2 => "tail2",
            Functional::Lnzd => "lnzd",
            Functional::Rbln => "rbln",
            Functional::TrailingZeros => "trailing_zeros",
            Functional::LastDigit => "last_digit",
        }
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Functional {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tail2" => Ok(Functional::Tail2),
            "lnzd" => Ok(Functional::Lnzd),
            "rbln" => Ok(Functional::Rbln),
            "trailing_zeros" | "trailing-zeros" => Ok(Functional::TrailingZeros),
            "last_digit" | "last-digit" => Ok(Functional::LastDigit),
            other => Err(format!(
                "unknown functional {other:?} (expected tail2, lnzd, rbln, trailing-zeros or last-digit)"
            )),
        }
    }
}

/// Everything the oracle can say about one `n^n`, read off the decimal
/// rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleFunctionals {
    pub tail2: u8,
    pub lnzd: u8,
    pub rbln: u8,
    pub trailing_zeros: u64,
    pub last_digit: u8,
}

/// One disagreement between the fast path and the oracle.  Values are
/// decimal strings so the five functionals share a shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u64,
    pub functional: Functional,
    pub fast: String,
    pub oracle: String,
}

/// Result of a differential sweep.  `checked_count` counts the values of
/// `n` visited (zero for an empty range); the sweep passes iff
/// `mismatches` is empty.
#[derive(Clone, Debug, Serialize)]
pub struct DifferentialReport {
    pub range_lo: u64,
    pub range_hi: u64,
    pub checked_count: u64,
    pub mismatches: Vec<Mismatch>,
}

impl DifferentialReport {
    pub fn passes(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Oracle with a configurable expansion ceiling.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    limit: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

impl Oracle {
    pub fn with_limit(limit: u64) -> Self {
        Oracle { limit }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `n^n`, computed in full.
    pub fn selfpow_exact(&self, n: u64) -> Result<Natural, OracleError> {
        if n == 0 {
            return Err(OracleError::ZeroInput);
        }
        if n > self.limit {
            return Err(OracleError::LimitExceeded {
                n,
                limit: self.limit,
            });
        }
        Ok(Pow::pow(&Natural::from(n), n))
    }

    /// All five functionals of `n^n`, read from the decimal rendering.
    pub fn functionals(&self, n: u64) -> Result<OracleFunctionals, OracleError> {
        Ok(functionals_of_rendering(&self.selfpow_exact(n)?))
    }

    /// Compare fast path vs. oracle for every `n` in `[lo, hi]` and every
    /// requested functional.  An inverted range is vacuously a pass.
    ///
    /// `fault_inject` is a harness self-test: it adds one to the fast
    /// value of the *first* requested functional at `n = lo`, which must
    /// surface as exactly one mismatch.
    pub fn differential_check(
        &self,
        lo: u64,
        hi: u64,
        functionals: &[Functional],
        fault_inject: bool,
    ) -> Result<DifferentialReport, OracleError> {
        if lo == 0 {
            return Err(OracleError::ZeroInput);
        }
        if lo > hi {
            return Ok(DifferentialReport {
                range_lo: lo,
                range_hi: hi,
                checked_count: 0,
                mismatches: Vec::new(),
            });
        }
        if hi > self.limit {
            return Err(OracleError::LimitExceeded {
                n: hi,
                limit: self.limit,
            });
        }

        let mut mismatches: Vec<Mismatch> = (lo..=hi)
            .into_par_iter()
            .flat_map_iter(|n| {
                let truth = functionals_of_rendering(&Pow::pow(&Natural::from(n), n));
                let big = Natural::from(n);
                let mut found = Vec::new();
                for (slot, &f) in functionals.iter().enumerate() {
                    let mut fast = fast_value(&big, f);
                    if fault_inject && n == lo && slot == 0 {
                        fast += 1u32;
                    }
                    let oracle = oracle_value(&truth, f);
                    if fast != oracle {
                        found.push(Mismatch {
                            n,
                            functional: f,
                            fast: fast.to_string(),
                            oracle: oracle.to_string(),
                        });
                    }
                }
                found
            })
            .collect();
        // The parallel collect already preserves order, but the report
        // contract is "sorted by n" regardless of how the sweep was split.
        mismatches.sort_by_key(|m| (m.n, m.functional as u8));

        Ok(DifferentialReport {
            range_lo: lo,
            range_hi: hi,
            checked_count: hi - lo + 1,
            mismatches,
        })
    }
}

fn fast_value(n: &Natural, f: Functional) -> Natural {
    match f {
        Functional::Tail2 => selfpow::selfpow_tail2(n).expect("n ≥ 1").value().into(),
        Functional::Lnzd => selfpow::lnzd_selfpow(n).expect("n ≥ 1").into(),
        Functional::Rbln => selfpow::rbln_selfpow(n).expect("n ≥ 1").into(),
        Functional::TrailingZeros => selfpow::selfpow_trailing_zeros(n).expect("n ≥ 1"),
        Functional::LastDigit => selfpow::last_digit_selfpow(n).expect("n ≥ 1").into(),
    }
}

fn oracle_value(truth: &OracleFunctionals, f: Functional) -> Natural {
    match f {
        Functional::Tail2 => truth.tail2.into(),
        Functional::Lnzd => truth.lnzd.into(),
        Functional::Rbln => truth.rbln.into(),
        Functional::TrailingZeros => truth.trailing_zeros.into(),
        Functional::LastDigit => truth.last_digit.into(),
    }
}

/// Read all functionals off the decimal rendering of `x ≥ 1`.
fn functionals_of_rendering(x: &Natural) -> OracleFunctionals {
    let rendered = x.to_string();
    let stripped = rendered.trim_end_matches('0');
    let zeros = (rendered.len() - stripped.len()) as u64;
    let bytes = stripped.as_bytes();
    let lnzd = bytes[bytes.len() - 1] - b'0';
    let rbln = if bytes.len() >= 2 {
        bytes[bytes.len() - 2] - b'0'
    } else {
        0
    };
    let last_digit = rendered.as_bytes()[rendered.len() - 1] - b'0';
    OracleFunctionals {
        tail2: rbln * 10 + lnzd,
        lnzd,
        rbln,
        trailing_zeros: zeros,
        last_digit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::pow10;

    #[test]
    fn exact_powers() {
        let oracle = Oracle::default();
        assert_eq!(oracle.selfpow_exact(4).unwrap(), Natural::from(256u32));
        assert_eq!(oracle.selfpow_exact(1).unwrap(), Natural::from(1u32));
        assert_eq!(
            oracle.selfpow_exact(9).unwrap(),
            Natural::from(387_420_489u32)
        );
    }

    #[test]
    fn guards() {
        let oracle = Oracle::with_limit(10);
        assert_eq!(
            oracle.selfpow_exact(11),
            Err(OracleError::LimitExceeded { n: 11, limit: 10 })
        );
        assert_eq!(oracle.selfpow_exact(0), Err(OracleError::ZeroInput));
        assert_eq!(
            oracle
                .differential_check(0, 5, &Functional::ALL, false)
                .unwrap_err(),
            OracleError::ZeroInput
        );
        assert!(oracle
            .differential_check(1, 11, &Functional::ALL, false)
            .is_err());
    }

    #[test]
    fn textual_functionals() {
        let oracle = Oracle::default();
        // 20^20 = 2^40 · 10^20; 2^40 ends in "76".
        let f = oracle.functionals(20).unwrap();
        assert_eq!(f.trailing_zeros, 20);
        assert_eq!((f.tail2, f.rbln, f.lnzd, f.last_digit), (76, 7, 6, 0));
        // 9^9 = 387420489: no zeros to strip.
        let f = oracle.functionals(9).unwrap();
        assert_eq!(f.trailing_zeros, 0);
        assert_eq!((f.tail2, f.rbln, f.lnzd, f.last_digit), (89, 8, 9, 9));
        // 10^10 strips all the way down to 1.
        let f = oracle.functionals(10).unwrap();
        assert_eq!((f.tail2, f.rbln, f.lnzd, f.last_digit), (1, 0, 1, 0));
        assert_eq!(f.trailing_zeros, 10);
    }

    #[test]
    fn differential_agrees_on_a_small_range() {
        let report = Oracle::default()
            .differential_check(1, 100, &Functional::ALL, false)
            .unwrap();
        assert_eq!(report.checked_count, 100);
        assert!(report.passes(), "mismatches: {:?}", report.mismatches);
    }

    #[test]
    fn inverted_range_is_vacuously_fine() {
        let report = Oracle::default()
            .differential_check(5, 4, &Functional::ALL, false)
            .unwrap();
        assert_eq!(report.checked_count, 0);
        assert!(report.passes());
    }

    #[test]
    fn fault_injection_surfaces_exactly_once() {
        let report = Oracle::default()
            .differential_check(1, 100, &Functional::ALL, true)
            .unwrap();
        assert_eq!(report.mismatches.len(), 1);
        let m = &report.mismatches[0];
        assert_eq!(m.n, 1);
        assert_eq!(m.functional, Functional::Tail2);
        assert_ne!(m.fast, m.oracle);
    }

    #[test]
    fn rendered_length_brackets_between_powers_of_ten() {
        // Length sanity for the rendering the oracle trusts: the decimal
        // length L of n^n must satisfy 10^(L−1) ≤ n^n < 10^L.
        let oracle = Oracle::default();
        for n in 2..=500u64 {
            let x = oracle.selfpow_exact(n).unwrap();
            let len = x.to_string().len() as u64;
            assert!(pow10(len - 1) <= x, "n = {n}");
            assert!(x < pow10(len), "n = {n}");
        }
    }
}
