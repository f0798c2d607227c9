//! Exact arithmetic for digit functionals of self-powers `n^n` and the
//! decimal constants built from them.
//!
//! The toolkit has three floors:
//!
//! * **Arithmetic** ([`exactnum`]): arbitrary-precision naturals, an
//!   unreduced exact rational type whose denominators are never touched,
//!   and truncating decimal-digit extraction.
//! * **Digit functionals** ([`selfpow`], [`oracle`], [`lemmalab`]): the
//!   last non-zero digit of `n^n`, the digit to its left (`rbln`), the
//!   trailing-zero count, and the last digit — each computed two ways: a
//!   fast residue route through `n^n mod 4` and `mod 25` glued by CRT,
//!   and a brute-force oracle that expands `n^n` in full.  The two
//!   routes are kept independent on purpose: agreement is evidence, not
//!   tautology.  [`lemmalab`] turns the structural claims behind the
//!   fast route (idempotent tails, the `mod 100` power classification,
//!   shift invariances, periodicity) into sweepable checks.
//! * **Constants** ([`constants`], [`approx`]): the digit streams `N`
//!   (last digits — rational, period 20) and `P` (`rbln` digits — the
//!   irrational target), cached digit blocks, the rational approximant
//!   tower `p_n/q_n`, and an exact integer-arithmetic witness for the
//!   irrationality-measure inequality `|P − p/q| < q^{−12/5}`.
//!
//! Every verification reports *checked counts* alongside pass/fail, and
//! anything resource-hungry sits behind an explicit guard with a
//! `_with_limit` escape hatch.

// Divisibility tests stay in congruence form (`x % m == 0`) so they read
// like the modular arithmetic around them.
#![allow(clippy::manual_is_multiple_of)]

pub mod approx;
pub mod constants;
pub mod exactnum;
pub mod lemmalab;
pub mod oracle;
pub mod selfpow;

pub use approx::{build_pq, build_r, build_s_t, enclose_p, roth_witness, RothWitnessReport};
pub use constants::{detect_period, digit_of, digit_range, n_as_fraction, ConstantId, DigitCache};
pub use exactnum::{DigitBlock, ExactRational, Natural};
pub use lemmalab::{LemmaId, VerificationReport};
pub use oracle::{Oracle, DEFAULT_ORACLE_LIMIT};
pub use selfpow::{last_digit_selfpow, lnzd_of, lnzd_selfpow, rbln_of, rbln_selfpow, Tail2};
