//! Rational approximants to `P` and the exact irrationality-measure
//! witness check.
//!
//! The tower, level by level:
//!
//! * [`MaskedExpansion`]: `P` with every digit zeroed except those at
//!   positions divisible by `10^level`.
//! * [`build_r`]`(i)`: the difference between mask levels `i` and `i+1`
//!   as an exact rational — the digits of `P` at positions `k·10^i` with
//!   `10 ∤ k`.  Those digits repeat (period `10^{i+1}` for `i ≥ 1`, period
//!   100 for `i = 0`), so each `R_i` is a repeating block over
//!   `10^L − 1`.
//! * [`build_s_t`]`(n)`: the tail series `7/(10^{2·10^n} − 1)` — a lone
//!   `7` every `2·10^n` digits.
//! * [`build_pq`]`(n)`: the approximant `Σ_{i<n} R_i + s_n/t_n` over a
//!   single common denominator.
//!
//! [`roth_witness`] then certifies `|P − p/q| < q^{−12/5}` (or its
//! failure) by pure integer arithmetic: `P` is pinned inside a
//! truncation interval of width `10^{−M}`, the difference is carried as
//! a [`RationalInterval`], and the exponent-2.4 comparison is done as
//! `diff⁵ · q¹² < 1`, i.e. `num⁵ · q¹² < den⁵` on naturals.  No floating
//! point, no rounding, and a third outcome — *inconclusive* — when the
//! interval straddles the threshold, which a larger `M` resolves.
//!
//! Everything carries resource guards: denominators grow doubly
//! exponentially in the level, so level 4 of anything is already a
//! hundred-thousand-digit affair.

use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::constants::{digit_of, digit_range, ConstantId};
use crate::exactnum::{decimal_digits, pow10, rat_cmp, DigitBlock, ExactRational, Natural, Sign};

/// Highest level [`build_s_t`] serves without an override; the level-5
/// denominator would carry 200,000 digits.
pub const DEFAULT_SERIES_GUARD: u32 = 4;

/// Highest level [`build_r`] serves by default (`R_3` spans 10,000
/// digits; `R_4` needs [`build_r_with_limit`]).
pub const DEFAULT_MASK_GUARD: u32 = 3;

/// Highest witness level [`build_pq`] and [`roth_witness`] serve by
/// default.
pub const DEFAULT_WITNESS_GUARD: u32 = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ApproxError {
    #[error(
        "level {level} exceeds the resource guard (max {max}); sizes grow doubly exponentially"
    )]
    LevelGuard { level: u32, max: u32 },
    #[error("witness levels start at 1")]
    ZeroLevel,
    #[error("digit budget must be at least 1")]
    ZeroDigits,
    #[error("digit stream must cover positions 1..={need}, got {have_from}..={have_to}")]
    InsufficientStream {
        need: u64,
        have_from: u64,
        have_to: u64,
    },
    #[error("the approximant agrees with the constant on all {digits} requested digits; nothing to separate — raise the digit budget")]
    NoSeparation { digits: u64 },
    #[error("a {digits}-digit enclosure straddles the threshold; raise the digit budget")]
    Straddles { digits: u64 },
}

impl ApproxError {
    /// Whether this outcome means "budget too small to decide" rather
    /// than a usage problem or a verified failure.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            ApproxError::NoSeparation { .. } | ApproxError::Straddles { .. }
        )
    }
}

/// View of `P` keeping only digits at positions divisible by
/// `10^level`.  Digits are computed on demand, so the masking invariant
/// holds by construction.
#[derive(Clone, Copy, Debug)]
pub struct MaskedExpansion {
    level: u32,
}

impl MaskedExpansion {
    pub fn new(level: u32) -> Self {
        MaskedExpansion { level }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Digit at 1-indexed position `pos`: `P`'s digit where
    /// `10^level | pos`, zero elsewhere.
    pub fn digit(&self, pos: u64) -> Result<u8, crate::constants::ConstantsError> {
        if pos == 0 {
            return Err(crate::constants::ConstantsError::ZeroPosition);
        }
        match 10u64.checked_pow(self.level) {
            Some(step) if pos % step == 0 => digit_of(ConstantId::P, pos),
            // Either not on the mask, or the step exceeds u64 (in which
            // case no representable position is on it).
            _ => Ok(0),
        }
    }
}

/// `7/(10^{2·10^n} − 1)`: the tail series whose expansion is a single
/// `7` every `2·10^n` positions.
pub fn build_s_t(n: u32) -> Result<ExactRational, ApproxError> {
    if n > DEFAULT_SERIES_GUARD {
        return Err(ApproxError::LevelGuard {
            level: n,
            max: DEFAULT_SERIES_GUARD,
        });
    }
    let exponent = 2 * 10u64.pow(n);
    let den = pow10(exponent) - Natural::one();
    Ok(ExactRational::from_naturals(Natural::from(7u8), den).expect("denominator is nonzero"))
}

/// The witness denominator `t_n = 10^{2·10^n} − 1`.
pub fn witness_denominator(n: u32) -> Natural {
    pow10(2 * 10u64.pow(n)) - Natural::one()
}

/// The mask-difference series `R_i`: keeps `P`'s digits at positions
/// `k·10^i` with `10 ∤ k`, zero elsewhere.  Its expansion repeats with
/// period `10^{i+1}` for `i ≥ 1` and period 100 for `i = 0`, so the
/// value is the period block over `10^L − 1`.
pub fn build_r(i: u32) -> Result<ExactRational, ApproxError> {
    build_r_with_limit(i, DEFAULT_MASK_GUARD)
}

/// [`build_r`] with an explicit guard, for callers that genuinely want
/// the 100,000-digit `R_4`.
pub fn build_r_with_limit(i: u32, max_level: u32) -> Result<ExactRational, ApproxError> {
    if i > max_level {
        return Err(ApproxError::LevelGuard {
            level: i,
            max: max_level,
        });
    }
    let period: u64 = if i == 0 { 100 } else { 10u64.pow(i + 1) };
    let step = 10u64.pow(i);
    let digits: Vec<u8> = (1..=period)
        .map(|pos| {
            if pos % step == 0 && (pos / step) % 10 != 0 {
                digit_of(ConstantId::P, pos).expect("pos ≥ 1")
            } else {
                0
            }
        })
        .collect();
    let block = DigitBlock::new(1, digits);
    let num = Natural::parse_bytes(block.to_digit_string().as_bytes(), 10)
        .expect("digit string is valid decimal");
    let den = pow10(period) - Natural::one();
    Ok(ExactRational::from_naturals(num, den).expect("denominator is nonzero"))
}

/// An approximant `p/q` to `P`.  `q` is the exact common denominator the
/// sum was assembled over: `t_n` for levels `n ≥ 2`; at level 1 the
/// ingredient `R_0` (denominator `10^100 − 1`) does not divide `t_1`, so
/// the exact denominator is `10^100 − 1` instead — the level-1 witness is
/// the documented-failure rung of the tower either way.
#[derive(Clone, Debug, Serialize)]
pub struct Approximant {
    pub level: u32,
    #[serde(serialize_with = "crate::exactnum::serialize_natural")]
    pub p: Natural,
    #[serde(serialize_with = "crate::exactnum::serialize_natural")]
    pub q: Natural,
}

impl Approximant {
    pub fn value(&self) -> ExactRational {
        ExactRational::from_naturals(self.p.clone(), self.q.clone())
            .expect("denominator is nonzero")
    }
}

/// Assemble `Σ_{i<n} R_i + s_n/t_n` over one common denominator.
pub fn build_pq(n: u32) -> Result<Approximant, ApproxError> {
    build_pq_with_limit(n, DEFAULT_WITNESS_GUARD)
}

/// [`build_pq`] with an explicit guard (level 4 works but is a
/// multi-second, 100,000-digit computation).
pub fn build_pq_with_limit(n: u32, max_level: u32) -> Result<Approximant, ApproxError> {
    if n == 0 {
        return Err(ApproxError::ZeroLevel);
    }
    if n > max_level {
        return Err(ApproxError::LevelGuard {
            level: n,
            max: max_level,
        });
    }

    let mut terms = Vec::with_capacity(n as usize + 1);
    for i in 0..n {
        terms.push(build_r_with_limit(i, max_level.max(DEFAULT_MASK_GUARD))?);
    }
    terms.push(build_s_t(n)?);

    // Common denominator: t_n absorbs every R_i denominator for n ≥ 2;
    // level 1 needs 10^100 − 1 because period 100 does not divide 20.
    let q = if n == 1 {
        pow10(100) - Natural::one()
    } else {
        witness_denominator(n)
    };

    let mut p = Natural::zero();
    for term in &terms {
        let (factor, rem) = q.div_rem(term.denominator());
        debug_assert!(
            rem.is_zero(),
            "every term denominator divides the common denominator"
        );
        p += term.numerator() * factor;
    }
    debug_assert!(p < q, "approximants to a number below 1 stay below 1");

    Ok(Approximant { level: n, p, q })
}

/// An exact rational interval certified to contain a real number.
#[derive(Clone, Debug, Serialize)]
pub struct RationalInterval {
    pub lo: ExactRational,
    pub hi: ExactRational,
}

impl RationalInterval {
    pub fn new(lo: ExactRational, hi: ExactRational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn width(&self) -> ExactRational {
        &self.hi - &self.lo
    }
}

fn interval_from_block(block: &DigitBlock) -> RationalInterval {
    let m = block.len() as u64;
    let t = block.as_integer();
    let scale = pow10(m);
    let lo =
        ExactRational::from_naturals(t.clone(), scale.clone()).expect("denominator is nonzero");
    let hi =
        ExactRational::from_naturals(t + Natural::one(), scale).expect("denominator is nonzero");
    RationalInterval::new(lo, hi)
}

/// The truncation interval `[T, T + 10^{−M}]` around `P`, where `T` is
/// `P`'s first `M` digits.
pub fn enclose_p(m: u64) -> Result<RationalInterval, ApproxError> {
    if m == 0 {
        return Err(ApproxError::ZeroDigits);
    }
    let block = digit_range(ConstantId::P, 1, m).expect("1 ≤ m is a valid range");
    Ok(interval_from_block(&block))
}

/// Everything [`roth_witness`] certifies about one witness level.
///
/// `q` is the tower's witness denominator `t_n = 10^{2·10^n} − 1` — the
/// denominator the inequality `|P − p/q| < q^{−12/5}` is evaluated
/// against.  `p` is exact over `approx_denominator`, which equals `q`
/// for every level except 1 (see [`Approximant`]).  The reduced pair is
/// informational: a smaller denominator only strengthens a pass.
#[derive(Clone, Debug, Serialize)]
pub struct RothWitnessReport {
    pub level: u32,
    #[serde(serialize_with = "crate::exactnum::serialize_natural")]
    pub q: Natural,
    #[serde(serialize_with = "crate::exactnum::serialize_natural")]
    pub p: Natural,
    #[serde(serialize_with = "crate::exactnum::serialize_natural")]
    pub approx_denominator: Natural,
    #[serde(serialize_with = "crate::exactnum::serialize_natural")]
    pub p_reduced: Natural,
    #[serde(serialize_with = "crate::exactnum::serialize_natural")]
    pub q_reduced: Natural,
    pub diff: RationalInterval,
    pub first_diff_position: u64,
    pub digits_used: u64,
    pub passes: bool,
}

/// `diff^5 · q^12 < 1` as a pure integer comparison:
/// `num^5 · q^12 < den^5`.
fn below_threshold(diff: &ExactRational, q: &Natural) -> bool {
    debug_assert!(diff.sign() != Sign::Minus);
    let num5 = Pow::pow(diff.numerator(), 5u32);
    let den5 = Pow::pow(diff.denominator(), 5u32);
    num5 * Pow::pow(q, 12u32) < den5
}

/// Certify `|P − p_n/q_n| < q_n^{−12/5}` (pass), its failure, or report
/// that `digits` positions cannot decide it.  See the module docs for
/// the mechanics.
pub fn roth_witness(level: u32, digits: u64) -> Result<RothWitnessReport, ApproxError> {
    roth_witness_with_limit(level, digits, DEFAULT_WITNESS_GUARD)
}

/// [`roth_witness`] with an explicit level guard.
pub fn roth_witness_with_limit(
    level: u32,
    digits: u64,
    max_level: u32,
) -> Result<RothWitnessReport, ApproxError> {
    if digits == 0 {
        return Err(ApproxError::ZeroDigits);
    }
    let stream = digit_range(ConstantId::P, 1, digits).expect("1 ≤ digits is a valid range");
    roth_witness_over_stream(level, digits, max_level, &stream)
}

/// [`roth_witness`] against a pre-computed digit stream of `P` (e.g. a
/// loaded [`crate::constants::DigitCache`] block).  The stream must
/// cover positions `1..=digits`.
pub fn roth_witness_over_stream(
    level: u32,
    digits: u64,
    max_level: u32,
    stream: &DigitBlock,
) -> Result<RothWitnessReport, ApproxError> {
    if level == 0 {
        return Err(ApproxError::ZeroLevel);
    }
    if level > max_level {
        return Err(ApproxError::LevelGuard {
            level,
            max: max_level,
        });
    }
    if digits == 0 {
        return Err(ApproxError::ZeroDigits);
    }
    if stream.start() != 1 || (stream.len() as u64) < digits {
        return Err(ApproxError::InsufficientStream {
            need: digits,
            have_from: stream.start(),
            have_to: stream.end().saturating_sub(1),
        });
    }
    let stream_digits = &stream.digits()[..digits as usize];

    let approximant = build_pq_with_limit(level, max_level)?;
    let value = approximant.value();
    let value_block = decimal_digits(&value, digits).expect("approximant lies in [0, 1)");

    // First decimal position where the approximant leaves the constant.
    let first_diff_position = match value_block
        .digits()
        .iter()
        .zip(stream_digits)
        .position(|(a, b)| a != b)
    {
        Some(idx) => idx as u64 + 1,
        None => return Err(ApproxError::NoSeparation { digits }),
    };

    // P lives in [T, T + 10^{−M}].  A digit disagreement at or before M
    // puts the approximant's value strictly outside the open interval,
    // so |P − value| is enclosed by subtracting endpoints.
    let enclosure = interval_from_block(&DigitBlock::new(1, stream_digits.to_vec()));
    let diff = if rat_cmp(&value, &enclosure.lo) != std::cmp::Ordering::Greater {
        RationalInterval::new(&enclosure.lo - &value, &enclosure.hi - &value)
    } else {
        debug_assert!(value >= enclosure.hi);
        RationalInterval::new(&value - &enclosure.hi, &value - &enclosure.lo)
    };

    let q_witness = witness_denominator(level);
    let passes = if below_threshold(&diff.hi, &q_witness) {
        true
    } else if !below_threshold(&diff.lo, &q_witness) {
        // Even the optimistic end of the interval violates the
        // inequality: a certified failure, not an artifact of M.
        false
    } else {
        return Err(ApproxError::Straddles { digits });
    };

    let g = approximant.p.gcd(&approximant.q);
    let report = RothWitnessReport {
        level,
        q: q_witness,
        p: approximant.p.clone(),
        approx_denominator: approximant.q.clone(),
        p_reduced: &approximant.p / &g,
        q_reduced: &approximant.q / &g,
        diff,
        first_diff_position,
        digits_used: digits,
        passes,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(num: u64, den: u64) -> ExactRational {
        ExactRational::from_u64(num, den).unwrap()
    }

    #[test]
    fn series_terms_match_the_formula() {
        let s1 = build_s_t(1).unwrap();
        assert_eq!(s1.numerator(), &Natural::from(7u8));
        assert_eq!(s1.denominator(), &(pow10(20) - Natural::one()));
        let block = decimal_digits(&s1, 40).unwrap();
        assert_eq!(
            block.to_digit_string(),
            "0000000000000000000700000000000000000007"
        );
        assert_eq!(
            build_s_t(2).unwrap().denominator(),
            &(pow10(200) - Natural::one())
        );
        assert_eq!(
            build_s_t(5).unwrap_err(),
            ApproxError::LevelGuard { level: 5, max: 4 }
        );
    }

    #[test]
    fn mask_views_zero_everything_off_grid() {
        let mask = MaskedExpansion::new(2);
        // Positions 100k for k = 1..=10 carry P's digits there...
        let expected = [0, 7, 0, 7, 2, 7, 0, 7, 0, 0];
        for (k, &e) in (1..=10u64).zip(&expected) {
            assert_eq!(mask.digit(100 * k).unwrap(), e);
        }
        // ...and everything else is masked to zero.
        assert_eq!(mask.digit(99).unwrap(), 0);
        assert_eq!(mask.digit(250).unwrap(), 0);
        assert!(mask.digit(0).is_err());
    }

    #[test]
    fn masked_pattern_repeats_with_period_ten_off_the_tens() {
        // At level 2 the digit at 100k, for 10 ∤ k, depends only on
        // k mod 10 — checked for k up to 100.
        let mask = MaskedExpansion::new(2);
        for k in 1..=100u64 {
            if k % 10 == 0 {
                continue;
            }
            let a = mask.digit(100 * k).unwrap();
            let b = mask.digit(100 * (k % 10)).unwrap();
            assert_eq!(a, b, "k = {k}");
        }
    }

    #[test]
    fn r_series_has_documented_blocks() {
        let r0 = build_r(0).unwrap();
        assert_eq!(r0.denominator(), &(pow10(100) - Natural::one()));

        let r1 = build_r(1).unwrap();
        assert_eq!(r1.denominator(), &(pow10(100) - Natural::one()));
        let block = decimal_digits(&r1, 100).unwrap();
        // Non-zero digits only at 10, 20, …, 90 with P's digits there.
        let expected = [0, 7, 4, 7, 2, 7, 4, 7, 0];
        for (k, &e) in (1..=9u64).zip(&expected) {
            assert_eq!(block.digit_at(10 * k), Some(e), "position {}", 10 * k);
        }
        assert_eq!(block.digit_at(100), Some(0));
        for pos in 1..=99u64 {
            if pos % 10 != 0 {
                assert_eq!(block.digit_at(pos), Some(0), "position {pos}");
            }
        }

        assert_eq!(
            build_r(4).unwrap_err(),
            ApproxError::LevelGuard { level: 4, max: 3 }
        );
    }

    #[test]
    fn approximant_denominators_follow_the_tower() {
        let a2 = build_pq(2).unwrap();
        assert_eq!(a2.q, pow10(200) - Natural::one());
        // Every ingredient denominator divides the common one.
        for i in 0..2 {
            let r = build_r(i).unwrap();
            assert!((&a2.q % r.denominator()).is_zero(), "R_{i}");
        }
        // Level 1 is the odd one out: R_0's period-100 block forces the
        // bigger denominator.
        let a1 = build_pq(1).unwrap();
        assert_eq!(a1.q, pow10(100) - Natural::one());
        assert!((&a1.q % build_s_t(1).unwrap().denominator()).is_zero());

        assert_eq!(build_pq(0).unwrap_err(), ApproxError::ZeroLevel);
        assert_eq!(
            build_pq(4).unwrap_err(),
            ApproxError::LevelGuard { level: 4, max: 3 }
        );
    }

    #[test]
    fn approximant_opens_with_the_constants_digits() {
        let a1 = build_pq(1).unwrap();
        let block = decimal_digits(&a1.value(), 9).unwrap();
        assert_eq!(block.to_digit_string(), "002525418");
    }

    #[test]
    fn telescoping_holds_at_levels_one_and_two() {
        for n in 1..=2u32 {
            let a = build_pq(n).unwrap();
            let span = 10u64.pow(n + 1);
            let block = decimal_digits(&a.value(), span).unwrap();
            let step = 10u64.pow(n);
            for m in 1..=span {
                if m % step == 0 {
                    continue;
                }
                assert_eq!(
                    block.digit_at(m),
                    Some(digit_of(ConstantId::P, m).unwrap()),
                    "level {n}, position {m}"
                );
            }
        }
    }

    #[test]
    fn enclosures_nest_and_contain_the_truncation() {
        let e1 = enclose_p(1).unwrap();
        assert_eq!(e1.lo, ExactRational::zero());
        assert_eq!(e1.hi, rat(1, 10));

        let e10 = enclose_p(10).unwrap();
        assert_eq!(
            e10.lo,
            ExactRational::from_naturals(Natural::from(25_254_180u64), pow10(10)).unwrap()
        );

        let e20 = enclose_p(20).unwrap();
        assert!(e20.is_subset_of(&e10));
        assert!(e10.is_subset_of(&e1));
        assert_eq!(
            e10.width(),
            ExactRational::from_naturals(Natural::one(), pow10(10)).unwrap()
        );
        assert_eq!(enclose_p(0).unwrap_err(), ApproxError::ZeroDigits);
    }

    #[test]
    fn witness_level_two_passes_at_modest_budget() {
        let report = roth_witness(2, 600).unwrap();
        assert!(report.passes);
        assert_eq!(report.first_diff_position, 500);
        assert_eq!(report.q, pow10(200) - Natural::one());
        assert_eq!(report.approx_denominator, report.q);
        assert_eq!(report.digits_used, 600);
        // Reduced form divides the exact pair.
        assert!((&report.p % &report.p_reduced).is_zero());
        assert!((&report.q % &report.q_reduced).is_zero());
    }

    #[test]
    fn witness_level_two_is_undecidable_below_the_first_difference() {
        assert_eq!(
            roth_witness(2, 400).unwrap_err(),
            ApproxError::NoSeparation { digits: 400 }
        );
        assert!(roth_witness(2, 400).unwrap_err().is_inconclusive());
    }

    #[test]
    fn witness_level_one_fails_honestly() {
        let report = roth_witness(1, 200).unwrap();
        assert!(!report.passes);
        assert_eq!(report.first_diff_position, 30);
        assert_eq!(report.q, pow10(20) - Natural::one());
        assert_eq!(report.approx_denominator, pow10(100) - Natural::one());
    }

    #[test]
    fn witness_guards() {
        assert_eq!(roth_witness(0, 100).unwrap_err(), ApproxError::ZeroLevel);
        assert_eq!(
            roth_witness(4, 100).unwrap_err(),
            ApproxError::LevelGuard { level: 4, max: 3 }
        );
        assert_eq!(roth_witness(2, 0).unwrap_err(), ApproxError::ZeroDigits);
        assert!(!roth_witness(4, 100).unwrap_err().is_inconclusive());
    }

    #[test]
    fn stream_variant_validates_coverage() {
        let stream = digit_range(ConstantId::P, 1, 600).unwrap();
        let report = roth_witness_over_stream(2, 600, 3, &stream).unwrap();
        assert!(report.passes);

        let short = digit_range(ConstantId::P, 1, 100).unwrap();
        assert_eq!(
            roth_witness_over_stream(2, 600, 3, &short).unwrap_err(),
            ApproxError::InsufficientStream {
                need: 600,
                have_from: 1,
                have_to: 100
            }
        );
        let offset = digit_range(ConstantId::P, 2, 700).unwrap();
        assert!(roth_witness_over_stream(2, 600, 3, &offset).is_err());
    }

    #[test]
    fn diff_interval_stays_tight() {
        let report = roth_witness(2, 600).unwrap();
        let width = report.diff.width();
        let bound = ExactRational::from_naturals(Natural::from(2u8), pow10(600)).unwrap();
        assert!(rat_cmp(&width, &bound) != std::cmp::Ordering::Greater);
    }
}
