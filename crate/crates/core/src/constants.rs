//! Digit streams for the two constants built from self-power digit
//! functionals, plus period detection and an exact fraction for the
//! rational one.
//!
//! * `N = 0.d₁d₂d₃…` where `dₙ` is the plain last digit of `n^n`.  The
//!   last digits repeat with period 20 in `n`, so `N` is rational:
//!   [`n_as_fraction`] returns its exact value over `10^20 − 1`.
//! * `P = 0.d₁d₂d₃…` where `dₙ` is the digit immediately left of the
//!   last non-zero digit of `n^n`.  This is the constant the `approx`
//!   module builds rational approximants against; no period is expected
//!   and [`detect_period`] finding none at scale is itself a test.
//!
//! Digits are generated on demand from the `selfpow` fast path and never
//! persisted unless a caller explicitly uses [`DigitCache`], whose tiny
//! file format exists so repeated large sweeps (the Roth checks want
//! thousands of digits) don't recompute the stream every run.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{decimal_digits, pow10, DigitBlock, ExactRational, Natural};
use crate::selfpow::{last_digit_selfpow, rbln_selfpow};

#[derive(Debug, Error)]
pub enum ConstantsError {
    #[error("digit positions start at 1")]
    ZeroPosition,
    #[error("inverted digit range {from}..{to}")]
    InvertedRange { from: u64, to: u64 },
    #[error("cache I/O failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed cache file: {0}")]
    CacheParse(String),
}

/// Which constant a digit stream belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConstantId {
    N,
    P,
}

impl ConstantId {
    pub fn name(self) -> &'static str {
        match self {
            ConstantId::N => "N",
            ConstantId::P => "P",
        }
    }
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstantId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "N" | "n" => Ok(ConstantId::N),
            "P" | "p" => Ok(ConstantId::P),
            other => Err(format!("unknown constant {other:?} (expected N or P)")),
        }
    }
}

/// The `m`-th decimal digit (1-indexed after the point) of the constant.
pub fn digit_of(c: ConstantId, m: u64) -> Result<u8, ConstantsError> {
    if m == 0 {
        return Err(ConstantsError::ZeroPosition);
    }
    let n = Natural::from(m);
    let digit = match c {
        ConstantId::N => last_digit_selfpow(&n),
        ConstantId::P => rbln_selfpow(&n),
    };
    Ok(digit.expect("m ≥ 1"))
}

/// Digits at positions `from..=to`.  Chunks are computed in parallel and
/// reassembled in position order, so the result is identical to a serial
/// loop of [`digit_of`] calls.
pub fn digit_range(c: ConstantId, from: u64, to: u64) -> Result<DigitBlock, ConstantsError> {
    if from == 0 {
        return Err(ConstantsError::ZeroPosition);
    }
    if from > to {
        return Err(ConstantsError::InvertedRange { from, to });
    }
    let digits: Vec<u8> = (from..=to)
        .into_par_iter()
        .map(|m| digit_of(c, m).expect("m ≥ 1"))
        .collect();
    Ok(DigitBlock::new(from, digits))
}

/// Smallest `p ≤ max_period` such that the block is periodic with period
/// `p` **from its first digit on** (pure periodicity, not eventual), or
/// `None`.
///
/// A period must repeat at least twice inside the block to be observable,
/// so candidates above `len/2` are never certified regardless of
/// `max_period`.
pub fn detect_period(block: &DigitBlock, max_period: u64) -> Option<u64> {
    let digits = block.digits();
    let cap = (digits.len() / 2) as u64;
    'candidate: for p in 1..=max_period.min(cap) {
        let p = p as usize;
        for i in 0..digits.len() - p {
            if digits[i] != digits[i + p] {
                continue 'candidate;
            }
        }
        return Some(p as u64);
    }
    None
}

/// The exact value of `N`: `14765636901636567490 / (10^20 − 1)`, i.e. the
/// period-20 digit block over a block of twenty nines.
///
/// Before returning, the fraction's decimal expansion is checked against
/// the live digit generator for 200 positions; a disagreement would mean
/// the arithmetic itself is broken, so it panics rather than returning.
pub fn n_as_fraction() -> ExactRational {
    let num = Natural::from(14_765_636_901_636_567_490u64);
    let den = pow10(20) - Natural::from(1u8);
    let frac = ExactRational::from_naturals(num, den).expect("denominator is nonzero");
    let rendered = decimal_digits(&frac, 200).expect("value lies in [0, 1)");
    let stream = digit_range(ConstantId::N, 1, 200).expect("valid range");
    assert_eq!(
        rendered, stream,
        "fraction expansion disagrees with the digit generator"
    );
    frac
}

/// A saved digit block with the constant it belongs to.
///
/// File format: one header line `constant=<N|P> from=<int> to=<int>`
/// followed by one line of ASCII digits (positions implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitCache {
    pub constant: ConstantId,
    pub block: DigitBlock,
}

impl DigitCache {
    /// Generate the block `from..=to` fresh.
    pub fn compute(constant: ConstantId, from: u64, to: u64) -> Result<Self, ConstantsError> {
        Ok(DigitCache {
            constant,
            block: digit_range(constant, from, to)?,
        })
    }

    /// Whether positions `from..=to` all lie inside the cached block.
    pub fn covers(&self, from: u64, to: u64) -> bool {
        from >= self.block.start() && to < self.block.end() && from >= 1
    }

    /// Cached digits for `from..=to`, if covered.
    pub fn slice(&self, from: u64, to: u64) -> Option<DigitBlock> {
        if !self.covers(from, to) {
            return None;
        }
        let lo = (from - self.block.start()) as usize;
        let hi = (to - self.block.start()) as usize;
        Some(DigitBlock::new(from, self.block.digits()[lo..=hi].to_vec()))
    }

    pub fn save(&self, path: &Path) -> Result<(), ConstantsError> {
        let header = format!(
            "constant={} from={} to={}",
            self.constant.name(),
            self.block.start(),
            self.block.end() - 1
        );
        fs::write(
            path,
            format!("{header}\n{}\n", self.block.to_digit_string()),
        )?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, ConstantsError> {
        let text = fs::read_to_string(path)?;
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| ConstantsError::CacheParse("empty file".to_string()))?;
        let mut constant = None;
        let mut from = None;
        let mut to = None;
        for token in header.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| ConstantsError::CacheParse(format!("bad header token {token:?}")))?;
            match key {
                "constant" => {
                    constant = Some(
                        value
                            .parse::<ConstantId>()
                            .map_err(ConstantsError::CacheParse)?,
                    )
                }
                "from" => {
                    from = Some(
                        value
                            .parse::<u64>()
                            .map_err(|e| ConstantsError::CacheParse(format!("bad from: {e}")))?,
                    )
                }
                "to" => {
                    to = Some(
                        value
                            .parse::<u64>()
                            .map_err(|e| ConstantsError::CacheParse(format!("bad to: {e}")))?,
                    )
                }
                other => {
                    return Err(ConstantsError::CacheParse(format!(
                        "unknown header key {other:?}"
                    )))
                }
            }
        }
        let (constant, from, to) = match (constant, from, to) {
            (Some(c), Some(f), Some(t)) => (c, f, t),
            _ => {
                return Err(ConstantsError::CacheParse(
                    "header must carry constant, from and to".to_string(),
                ))
            }
        };
        if from == 0 || from > to {
            return Err(ConstantsError::CacheParse(format!(
                "bad position range {from}..{to}"
            )));
        }
        let digits_line = lines
            .next()
            .ok_or_else(|| ConstantsError::CacheParse("missing digit line".to_string()))?;
        let block = DigitBlock::from_ascii(from, digits_line)
            .map_err(|e| ConstantsError::CacheParse(e.to_string()))?;
        if block.len() as u64 != to - from + 1 {
            return Err(ConstantsError::CacheParse(format!(
                "header promises {} digits, file carries {}",
                to - from + 1,
                block.len()
            )));
        }
        Ok(DigitCache { constant, block })
    }
}
