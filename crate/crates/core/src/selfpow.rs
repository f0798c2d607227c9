//! Digit functionals of self-powers `n^n`, computed without ever
//! materializing the power.
//!
//! Write `n = 2^a · 5^b · m` with `gcd(m, 10) = 1`.  Then
//! `n^n = 10^{n·min(a,b)} · t`, where the stripped value `t` equals
//! `2^{(a−b)n} · m^n` when `a ≥ b` and `5^{(b−a)n} · m^n` when `b > a`;
//! by construction `10 ∤ t`.  Both functionals of interest — the last
//! non-zero digit and the digit to its left — live in `t mod 100`, which
//! is assembled by CRT from:
//!
//! * `t mod 4`: either the power of two swamps it (residue 0, or 2 in the
//!   exponent-one edge case), or every factor is odd and `m² ≡ 1 (mod 4)`
//!   reduces the exponent mod 2;
//! * `t mod 25`: either the power of five swamps it (residue 0, or
//!   `5·(m^n mod 5)` in the exponent-one edge case), or both bases are
//!   invertible mod 25 and their orders divide `λ(25) = 20`, so exponents
//!   reduce mod 20.
//!
//! The exponents `(a−b)·n` and `n mod 20` are taken on [`Natural`]s, so
//! the whole thing is `O(log n)` word operations and `n` near `10^1000`
//! is still instantaneous.  The brute-force counterpart that actually
//! expands `n^n` lives in the `oracle` module and exists to keep this one
//! honest.

use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactnum::{pow_mod, Natural};

/// The inputs here are bases of self-powers; zero has no factorization
/// over {2, 5} and `0^0` is not a value we assign digits to.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("self-power digit functionals are defined for n ≥ 1")]
pub struct ZeroInput;

/// `n` split over the prime factors of ten: `n = 2^v2 · 5^v5 · unit`
/// with `gcd(unit, 10) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization10 {
    pub v2: u64,
    pub v5: u64,
    pub unit: Natural,
}

impl Factorization10 {
    /// Reassemble `2^v2 · 5^v5 · unit`; inverse of [`factor10`].
    pub fn product(&self) -> Natural {
        let two_part = Pow::pow(
            &Natural::from(2u8),
            u32::try_from(self.v2).expect("v2 fits u32"),
        );
        let five_part = Pow::pow(
            &Natural::from(5u8),
            u32::try_from(self.v5).expect("v5 fits u32"),
        );
        two_part * five_part * &self.unit
    }
}

/// Largest `e` with `p^e | n`.  Intended for `p ∈ {2, 5}` (the factors of
/// ten); any `p ≥ 2` works.
pub fn valuation(n: &Natural, p: u32) -> Result<u64, ZeroInput> {
    debug_assert!(p >= 2, "valuation base must be at least 2");
    if n.is_zero() {
        return Err(ZeroInput);
    }
    if p == 2 {
        return Ok(n.trailing_zeros().unwrap_or(0));
    }
    let p = Natural::from(p);
    let mut e = 0u64;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        e += 1;
        rest = q;
    }
}

/// Factor `n` over {2, 5}.
pub fn factor10(n: &Natural) -> Result<Factorization10, ZeroInput> {
    if n.is_zero() {
        return Err(ZeroInput);
    }
    let v2 = n.trailing_zeros().unwrap_or(0);
    let mut unit = n >> v2;
    let mut v5 = 0u64;
    let five = Natural::from(5u8);
    loop {
        let (q, r) = unit.div_rem(&five);
        if !r.is_zero() {
            break;
        }
        v5 += 1;
        unit = q;
    }
    Ok(Factorization10 { v2, v5, unit })
}

/// The last two digits of `n^n` after stripping trailing zeros, packed as
/// `10·rbln + lnzd`.  The ones digit is never 0 — that is what "after
/// stripping" means.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tail2(u8);

impl Tail2 {
    fn new(value: u8) -> Self {
        debug_assert!(value < 100 && value % 10 != 0);
        Tail2(value)
    }

    /// Packed value in `0..100`.
    pub fn value(self) -> u8 {
        self.0
    }

    /// Last non-zero digit of `n^n` (the ones digit of the packed value).
    pub fn lnzd(self) -> u8 {
        self.0 % 10
    }

    /// Digit immediately left of the last non-zero digit; 0 when the
    /// stripped power has a single digit.
    pub fn rbln(self) -> u8 {
        self.0 / 10
    }
}

/// Exact count of trailing decimal zeros of `n^n`: `n · min(v₂(n), v₅(n))`.
///
/// The count itself can be astronomically large (it scales with `n`), so
/// it is returned as a [`Natural`].
pub fn selfpow_trailing_zeros(n: &Natural) -> Result<Natural, ZeroInput> {
    let f = factor10(n)?;
    Ok(n * Natural::from(f.v2.min(f.v5)))
}

fn pow_mod_small(base: u64, exp: u64, modulus: u64) -> u64 {
    pow_mod(
        &Natural::from(base),
        &Natural::from(exp),
        &Natural::from(modulus),
    )
    .expect("modulus is a nonzero constant")
    .to_u64()
    .expect("residue fits in u64")
}

/// `(n^n / 10^z) mod 100` where `z` counts the trailing zeros of `n^n`,
/// via the CRT scheme described in the module docs.  Never materializes
/// `n^n`.
pub fn selfpow_tail2(n: &Natural) -> Result<Tail2, ZeroInput> {
    let f = factor10(n)?;
    let small = |k: u64| -> u64 { (n % Natural::from(k)).to_u64().expect("residue fits u64") };
    let n_mod_20 = small(20);
    let n_mod_4 = n_mod_20 % 4;
    let n_is_even = n_mod_20 % 2 == 0;
    let m_mod_25 = (&f.unit % Natural::from(25u8)).to_u64().expect("fits");
    let m_mod_5 = m_mod_25 % 5;
    let m_mod_4 = (&f.unit % Natural::from(4u8)).to_u64().expect("fits");

    // t mod 4.
    let r4: u64 = if f.v2 > f.v5 {
        // t = 2^{(a−b)n}·m^n.  For a self-power the exponent is ≥ 2
        // whenever this branch is taken (a > b forces 2 | n, so n ≥ 2);
        // the exponent-one arm is kept to cover the case analysis in full.
        if f.v2 - f.v5 == 1 && n.is_one() {
            2
        } else {
            0
        }
    } else {
        // All factors odd; 5 ≡ 1 (mod 4) and m² ≡ 1 (mod 4).
        if n_is_even {
            1
        } else {
            m_mod_4
        }
    };

    // t mod 25.
    let r25: u64 = if f.v5 > f.v2 {
        // t = 5^{(b−a)n}·m^n; as above the exponent is ≥ 2 for every
        // self-power that reaches this branch.
        if f.v5 - f.v2 == 1 && n.is_one() {
            // ord(m) mod 5 divides 4, so m^n reduces through n mod 4.
            5 * pow_mod_small(m_mod_5, n_mod_4, 5)
        } else {
            0
        }
    } else {
        // Both 2 and m are invertible mod 25 with orders dividing 20.
        // (a−b)·n mod 20 factors through the residues of both terms.
        let e2 = (f.v2 - f.v5) % 20 * n_mod_20 % 20;
        pow_mod_small(2, e2, 25) * pow_mod_small(m_mod_25, n_mod_20, 25) % 25
    };

    // CRT: 25 ≡ 1 (mod 4), so r25 + 25·((r4 − r25) mod 4) hits both
    // residues.
    let k = (4 + r4 - r25 % 4) % 4;
    let value = r25 + 25 * k;
    Ok(Tail2::new(value as u8))
}

/// Last non-zero digit of `n^n`.
pub fn lnzd_selfpow(n: &Natural) -> Result<u8, ZeroInput> {
    Ok(selfpow_tail2(n)?.lnzd())
}

/// Digit immediately left of the last non-zero digit of `n^n`.
pub fn rbln_selfpow(n: &Natural) -> Result<u8, ZeroInput> {
    Ok(selfpow_tail2(n)?.rbln())
}

/// Plain last digit of `n^n`, zeros included: `n^n mod 10`.
///
/// Deliberately routed through modular exponentiation rather than
/// [`selfpow_tail2`], so the two agree by theorems, not by construction.
pub fn last_digit_selfpow(n: &Natural) -> Result<u8, ZeroInput> {
    if n.is_zero() {
        return Err(ZeroInput);
    }
    let d = pow_mod(n, n, &Natural::from(10u8)).expect("modulus 10 is nonzero");
    Ok(d.to_u64().expect("digit fits") as u8)
}

fn strip_trailing_zeros(x: &Natural) -> Natural {
    // Arithmetic stripping; the oracle module strips the decimal rendering
    // instead, keeping the two routes independent.
    let ten = Natural::from(10u8);
    let mut t = x.clone();
    loop {
        let (q, r) = t.div_rem(&ten);
        if !r.is_zero() {
            return t;
        }
        t = q;
    }
}

/// Last non-zero digit of an arbitrary `x ≥ 1`.
pub fn lnzd_of(x: &Natural) -> Result<u8, ZeroInput> {
    if x.is_zero() {
        return Err(ZeroInput);
    }
    let t = strip_trailing_zeros(x);
    Ok((&t % Natural::from(10u8)).to_u64().expect("digit fits") as u8)
}

/// Digit immediately left of the last non-zero digit of `x ≥ 1`; 0 when
/// `x` has exactly one non-zero digit.
pub fn rbln_of(x: &Natural) -> Result<u8, ZeroInput> {
    if x.is_zero() {
        return Err(ZeroInput);
    }
    let t = strip_trailing_zeros(x);
    let tens = (&t / Natural::from(10u8)) % Natural::from(10u8);
    Ok(tens.to_u64().expect("digit fits") as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::pow10;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&nat(40), 2).unwrap(), 3);
        assert_eq!(valuation(&nat(50), 5).unwrap(), 2);
        assert_eq!(valuation(&nat(7), 2).unwrap(), 0);
        assert_eq!(valuation(&nat(0), 2), Err(ZeroInput));
    }

    #[test]
    fn factor10_splits_and_reassembles() {
        let f = factor10(&nat(2000)).unwrap();
        assert_eq!((f.v2, f.v5, f.unit.clone()), (4, 3, nat(1)));
        assert_eq!(f.product(), nat(2000));

        let f = factor10(&nat(84)).unwrap();
        assert_eq!((f.v2, f.v5, f.unit.clone()), (2, 0, nat(21)));
        assert_eq!(f.product(), nat(84));

        let f = factor10(&nat(1)).unwrap();
        assert_eq!((f.v2, f.v5, f.unit), (0, 0, nat(1)));
    }

    #[test]
    fn trailing_zero_counts() {
        assert_eq!(selfpow_trailing_zeros(&nat(10)).unwrap(), nat(10));
        assert_eq!(selfpow_trailing_zeros(&nat(12)).unwrap(), nat(0));
        assert_eq!(selfpow_trailing_zeros(&nat(20)).unwrap(), nat(20));
        assert_eq!(selfpow_trailing_zeros(&nat(1)).unwrap(), nat(0));
        // 10^50 contributes min(v2, v5) = 50 per copy of the base.
        assert_eq!(
            selfpow_trailing_zeros(&pow10(50)).unwrap(),
            nat(50) * pow10(50)
        );
    }

    #[test]
    fn tail2_small_cases() {
        // 3^3 = 27, 4^4 = 256, 5^5 = 3125, 9^9 = 387420489.
        assert_eq!(selfpow_tail2(&nat(3)).unwrap().value(), 27);
        assert_eq!(selfpow_tail2(&nat(4)).unwrap().value(), 56);
        assert_eq!(selfpow_tail2(&nat(5)).unwrap().value(), 25);
        assert_eq!(selfpow_tail2(&nat(9)).unwrap().value(), 89);
        // 10^10 strips to 1; 20^20 = 2^40·10^20 and 2^40 ends in 76.
        assert_eq!(selfpow_tail2(&nat(10)).unwrap().value(), 1);
        assert_eq!(selfpow_tail2(&nat(20)).unwrap().value(), 76);
        // 2^2 = 4: a single digit, so the tens digit is 0.
        let t = selfpow_tail2(&nat(2)).unwrap();
        assert_eq!((t.value(), t.rbln(), t.lnzd()), (4, 0, 4));
    }

    #[test]
    fn lnzd_and_rbln_examples() {
        assert_eq!(lnzd_selfpow(&nat(4)).unwrap(), 6);
        assert_eq!(lnzd_selfpow(&nat(10)).unwrap(), 1);
        assert_eq!(lnzd_selfpow(&nat(20)).unwrap(), 6);
        assert_eq!(rbln_selfpow(&nat(9)).unwrap(), 8);
        assert_eq!(rbln_selfpow(&nat(1)).unwrap(), 0);
        // 16^16 = 18446744073709551616 ends in "16".
        assert_eq!(rbln_selfpow(&nat(16)).unwrap(), 1);
    }

    #[test]
    fn last_digit_examples() {
        assert_eq!(last_digit_selfpow(&nat(4)).unwrap(), 6);
        assert_eq!(last_digit_selfpow(&nat(10)).unwrap(), 0);
        assert_eq!(last_digit_selfpow(&nat(1)).unwrap(), 1);
        // 7^7 = 823543.
        assert_eq!(last_digit_selfpow(&nat(7)).unwrap(), 3);
    }

    #[test]
    fn value_functionals_on_arbitrary_naturals() {
        assert_eq!(rbln_of(&nat(1000)).unwrap(), 0);
        assert_eq!(rbln_of(&nat(10_504_200)).unwrap(), 4);
        assert_eq!(lnzd_of(&nat(256)).unwrap(), 6);
        assert_eq!(lnzd_of(&nat(1)).unwrap(), 1);
        assert_eq!(rbln_of(&nat(1)).unwrap(), 0);
        assert_eq!(rbln_of(&nat(0)), Err(ZeroInput));
    }

    #[test]
    fn huge_bases_stay_fast() {
        // 10^50 strips to 1.
        assert_eq!(selfpow_tail2(&pow10(50)).unwrap().value(), 1);
        // (2·10^50)^(2·10^50) strips to 2^(2·10^50); the exponent is
        // divisible by 20, and 2^20k ends in 76.
        let n = nat(2) * pow10(50);
        assert_eq!(selfpow_tail2(&n).unwrap().value(), 76);
        // 3·10^1000: strips to 3^(3·10^1000); exponent divisible by 20 and
        // ord(3) = 20 mod 100, so the tail is "01".
        let n = nat(3) * pow10(1000);
        let t = selfpow_tail2(&n).unwrap();
        assert_eq!((t.rbln(), t.lnzd()), (0, 1));
        // Trailing zeros for the same base: 1000 · n.
        assert_eq!(
            selfpow_trailing_zeros(&n).unwrap(),
            nat(1000) * (nat(3) * pow10(1000))
        );
    }

    #[test]
    fn zero_base_is_rejected_everywhere() {
        let z = nat(0);
        assert!(factor10(&z).is_err());
        assert!(selfpow_tail2(&z).is_err());
        assert!(selfpow_trailing_zeros(&z).is_err());
        assert!(lnzd_selfpow(&z).is_err());
        assert!(rbln_selfpow(&z).is_err());
        assert!(last_digit_selfpow(&z).is_err());
    }
}
