//! Finite, reproducible verification of the number-theoretic facts the
//! rest of the toolkit leans on: the idempotents 76 and 25 mod 100, the
//! four-way classification of `x^100 mod 100`, the behaviour of the
//! rbln digit on multiples of 100, its invariance under `n ↦ n + 100`,
//! and the period-20 pattern of last digits.
//!
//! Every sweep returns a [`VerificationReport`] carrying the parameters
//! it ran with, the number of cases checked, and capped counterexamples —
//! so a failing run is reproducible from its own report.  Sweeps never
//! panic on mathematical failure; finding counterexamples is their job,
//! even though (if the underlying arithmetic is right) there are none to
//! find.

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{pow_mod, Natural};
use crate::oracle::Oracle;
use crate::selfpow::{last_digit_selfpow, lnzd_of, rbln_selfpow, selfpow_tail2};

/// Counterexample lists are capped to keep reports readable; the total
/// count is still reported.
pub const COUNTEREXAMPLE_CAP: usize = 10;

/// Default ceiling below which the `n ↦ n + 100` sweep cross-checks the
/// fast path against the brute-force oracle.
pub const DEFAULT_CROSS_CHECK_LIMIT: u64 = 200;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LemmaError {
    #[error("idempotent bases must end in 76 or 25; got {base}")]
    BadIdempotentBase { base: String },
    #[error("x must lie in 1..=99; got {x}")]
    ResidueOutOfRange { x: u8 },
    #[error("x = {x}: x^100 mod 100 = {residue}, breaking the four-way classification")]
    ClassificationViolated { x: u8, residue: u8 },
}

/// Which verified statement a report is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LemmaId {
    /// 76 and 25 are idempotent mod 100 and absorb powers.
    #[serde(rename = "skey")]
    Skey,
    /// `x^100 mod 100` lands in {1, 76, 25, 0} by the parity/divisibility
    /// class of `x`.
    #[serde(rename = "pow100")]
    Pow100,
    /// On multiples of 100, the last-non-zero digit of `n^n` pins the
    /// digit left of it.
    #[serde(rename = "inva")]
    Inva,
    /// For `n = 100k`, the rbln digit of `n^n` is determined by the last
    /// non-zero digit of `n` alone.
    #[serde(rename = "cG1")]
    CG1,
    /// For `100 ∤ n`, the rbln digit of `n^n` is invariant under
    /// `n ↦ n + 100`.
    #[serde(rename = "2inva")]
    TwoInva,
    /// Last digits of `n^n` repeat with period 20 in `n`.
    #[serde(rename = "period20")]
    Period20,
}

impl LemmaId {
    pub const ALL: [LemmaId; 6] = [
        LemmaId::Skey,
        LemmaId::Pow100,
        LemmaId::Inva,
        LemmaId::CG1,
        LemmaId::TwoInva,
        LemmaId::Period20,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Skey => "skey",
            LemmaId::Pow100 => "pow100",
            LemmaId::Inva => "inva",
            LemmaId::CG1 => "cG1",
            LemmaId::TwoInva => "2inva",
            LemmaId::Period20 => "period20",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "skey" => Ok(LemmaId::Skey),
            "pow100" => Ok(LemmaId::Pow100),
            "inva" => Ok(LemmaId::Inva),
            "cG1" | "cg1" => Ok(LemmaId::CG1),
            "2inva" => Ok(LemmaId::TwoInva),
            "period20" => Ok(LemmaId::Period20),
            other => Err(format!(
                "unknown suite {other:?} (expected skey, pow100, inva, cG1, 2inva or period20)"
            )),
        }
    }
}

/// One failed case: the input that failed and what was seen vs. required.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub observed: String,
    pub expected: String,
}

/// Outcome of one verification sweep.
///
/// `failures` holds at most [`COUNTEREXAMPLE_CAP`] entries;
/// `failure_count` is the uncapped total.  `params` records the exact
/// bounds the sweep ran with, making the report reproducible on its own.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub lemma: LemmaId,
    pub checked: u64,
    pub failure_count: u64,
    pub failures: Vec<Counterexample>,
    pub params: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn passes(&self) -> bool {
        self.failure_count == 0
    }
}

fn finish_report(
    lemma: LemmaId,
    params: Vec<(String, String)>,
    checked: u64,
    mut failures: Vec<Counterexample>,
) -> VerificationReport {
    let failure_count = failures.len() as u64;
    failures.truncate(COUNTEREXAMPLE_CAP);
    VerificationReport {
        lemma,
        checked,
        failure_count,
        failures,
        params,
    }
}

/// Verify that every base ending in 76 or 25 keeps that tail under all
/// powers `1..=max_power`.  Bases with any other tail are a usage error —
/// the claim is about these two residues only.
pub fn check_idempotents(
    bases: &[Natural],
    max_power: u64,
) -> Result<VerificationReport, LemmaError> {
    let hundred = Natural::from(100u8);
    let mut residues = Vec::with_capacity(bases.len());
    for base in bases {
        let r = (base % &hundred).to_u64().expect("residue fits");
        if r != 76 && r != 25 {
            return Err(LemmaError::BadIdempotentBase {
                base: base.to_string(),
            });
        }
        residues.push(r);
    }

    let mut checked = 0u64;
    let mut failures = Vec::new();
    for (base, &target) in bases.iter().zip(&residues) {
        let mut acc = 1u64;
        for j in 1..=max_power {
            acc = acc * target % 100;
            checked += 1;
            if acc != target {
                failures.push(Counterexample {
                    input: format!("{base}^{j} mod 100"),
                    observed: acc.to_string(),
                    expected: target.to_string(),
                });
            }
        }
    }

    let params = vec![
        (
            "bases".to_string(),
            bases
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(","),
        ),
        ("max_power".to_string(), max_power.to_string()),
    ];
    Ok(finish_report(LemmaId::Skey, params, checked, failures))
}

/// The four-way rule for `x^100 mod 100` on `1..=99`.
pub fn pow100_expected(x: u8) -> u8 {
    if x % 10 == 0 {
        0
    } else if x % 5 == 0 {
        25
    } else if x % 2 == 0 {
        76
    } else {
        1
    }
}

/// Compute `x^100 mod 100` and check it against [`pow100_expected`].
/// Returns the residue; a classification violation is an error (none
/// exists, but the contract is checked, not assumed).
pub fn classify_pow100(x: u8) -> Result<u8, LemmaError> {
    if x == 0 || x > 99 {
        return Err(LemmaError::ResidueOutOfRange { x });
    }
    let residue = pow_mod(
        &Natural::from(x),
        &Natural::from(100u8),
        &Natural::from(100u8),
    )
    .expect("modulus 100 is nonzero")
    .to_u64()
    .expect("residue fits") as u8;
    if residue != pow100_expected(x) {
        return Err(LemmaError::ClassificationViolated { x, residue });
    }
    Ok(residue)
}

/// Sweep [`classify_pow100`] over all of `1..=99`.
pub fn verify_pow100() -> VerificationReport {
    let mut failures = Vec::new();
    for x in 1..=99u8 {
        match classify_pow100(x) {
            Ok(_) => {}
            Err(LemmaError::ClassificationViolated { x, residue }) => {
                failures.push(Counterexample {
                    input: format!("{x}^100 mod 100"),
                    observed: residue.to_string(),
                    expected: pow100_expected(x).to_string(),
                });
            }
            Err(other) => unreachable!("sweep stays in range: {other}"),
        }
    }
    finish_report(
        LemmaId::Pow100,
        vec![("range".to_string(), "1..=99".to_string())],
        99,
        failures,
    )
}

/// On multiples of 100 up to `n_max`: if the last non-zero digit of `n^n`
/// is 6 the digit left of it must be 7; if 5, then 2; if 1, then 0.
pub fn verify_lemma_inva(n_max: u64) -> VerificationReport {
    let mut checked = 0u64;
    let mut failures = Vec::new();
    let mut n = 100u64;
    while n <= n_max {
        let tail = selfpow_tail2(&Natural::from(n)).expect("n ≥ 1");
        checked += 1;
        let expected = match tail.lnzd() {
            6 => Some(7),
            5 => Some(2),
            1 => Some(0),
            _ => None, // statement is conditional; other digits assert nothing
        };
        if let Some(expected) = expected {
            if tail.rbln() != expected {
                failures.push(Counterexample {
                    input: format!("n={n} (lnzd {})", tail.lnzd()),
                    observed: tail.rbln().to_string(),
                    expected: expected.to_string(),
                });
            }
        }
        n += 100;
    }
    finish_report(
        LemmaId::Inva,
        vec![("n_max".to_string(), n_max.to_string())],
        checked,
        failures,
    )
}

/// For `n = 100k`, `k = 1..=k_max`: the rbln digit of `n^n` is 7 when the
/// last non-zero digit of `n` is even, 2 when it is 5, and 0 when it is
/// coprime to 10.  Fast path only; this is the sweep that scales.
pub fn verify_corollary_cg1(k_max: u64) -> VerificationReport {
    let mut keyed: Vec<(u64, Counterexample)> = (1..=k_max)
        .into_par_iter()
        .filter_map(|k| {
            let n = 100 * k;
            let big = Natural::from(n);
            let lnzd_base = lnzd_of(&big).expect("n ≥ 1");
            let expected = match lnzd_base {
                2 | 4 | 6 | 8 => 7,
                5 => 2,
                _ => 0,
            };
            let observed = rbln_selfpow(&big).expect("n ≥ 1");
            if observed == expected {
                None
            } else {
                Some((
                    n,
                    Counterexample {
                        input: format!("n={n} (lnzd(n) = {lnzd_base})"),
                        observed: observed.to_string(),
                        expected: expected.to_string(),
                    },
                ))
            }
        })
        .collect();
    keyed.sort_by_key(|(n, _)| *n);
    let failures = keyed.into_iter().map(|(_, c)| c).collect();
    finish_report(
        LemmaId::CG1,
        vec![("k_max".to_string(), k_max.to_string())],
        k_max,
        failures,
    )
}

/// For every `n ≤ n_max` not divisible by 100: `n^n` and
/// `(n+100)^{n+100}` carry the same rbln digit.  Below
/// `cross_check_limit` both sides are additionally compared against the
/// brute-force oracle.
pub fn verify_lemma_2inva(n_max: u64, cross_check_limit: u64) -> VerificationReport {
    let oracle = Oracle::with_limit(cross_check_limit.saturating_add(100));
    let mut keyed: Vec<(u64, Counterexample)> = (1..=n_max)
        .into_par_iter()
        .filter(|n| n % 100 != 0)
        .flat_map_iter(|n| {
            let mut found = Vec::new();
            let here = rbln_selfpow(&Natural::from(n)).expect("n ≥ 1");
            let there = rbln_selfpow(&Natural::from(n + 100)).expect("n ≥ 1");
            if here != there {
                found.push((
                    n,
                    Counterexample {
                        input: format!("n={n} vs n={}", n + 100),
                        observed: there.to_string(),
                        expected: here.to_string(),
                    },
                ));
            }
            if n + 100 <= cross_check_limit {
                for (label, m, fast) in [("n", n, here), ("n+100", n + 100, there)] {
                    let truth = oracle
                        .functionals(m)
                        .expect("within cross-check limit")
                        .rbln;
                    if truth != fast {
                        found.push((
                            n,
                            Counterexample {
                                input: format!("oracle cross-check at {label}={m}"),
                                observed: fast.to_string(),
                                expected: truth.to_string(),
                            },
                        ));
                    }
                }
            }
            found
        })
        .collect();
    keyed.sort_by_key(|(n, _)| *n);
    let failures = keyed.into_iter().map(|(_, c)| c).collect();
    let checked = n_max - n_max / 100;
    finish_report(
        LemmaId::TwoInva,
        vec![
            ("n_max".to_string(), n_max.to_string()),
            (
                "cross_check_limit".to_string(),
                cross_check_limit.to_string(),
            ),
        ],
        checked,
        failures,
    )
}

/// Last digits of `n^n` repeat with period 20: compare every `n ≤ n_max`
/// against `n + 20`.
pub fn verify_period20(n_max: u64) -> VerificationReport {
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let here = last_digit_selfpow(&Natural::from(n)).expect("n ≥ 1");
        let there = last_digit_selfpow(&Natural::from(n + 20)).expect("n ≥ 1");
        if here != there {
            failures.push(Counterexample {
                input: format!("n={n} vs n={}", n + 20),
                observed: there.to_string(),
                expected: here.to_string(),
            });
        }
    }
    finish_report(
        LemmaId::Period20,
        vec![("n_max".to_string(), n_max.to_string())],
        n_max,
        failures,
    )
}
