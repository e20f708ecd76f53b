//! Exact scalar arithmetic: arbitrary-precision rationals with strict
//! text parsing (integers or `p/q`; floating-point literals are rejected).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// The scalar field used throughout: exact arbitrary-precision rationals.
pub type Scalar = BigRational;

/// The scalar with integer value `n`.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Parse an exact scalar: an optionally signed integer or `p/q` fraction.
///
/// Rejects anything else — in particular decimal points and exponents —
/// so no value can silently enter through floating point.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let bad = || Error::ScalarParse(text.to_string());
    let t = text.trim();
    let (num_text, den_text) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = parse_bigint(num_text).ok_or_else(bad)?;
    let den: BigInt = match den_text {
        Some(d) => parse_bigint(d).ok_or_else(bad)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn parse_bigint(t: &str) -> Option<BigInt> {
    if t.is_empty() {
        return None;
    }
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

/// Canonical text form: reduced, sign on the numerator, `p` or `p/q`.
pub fn fmt_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.denom().is_negative() {
        // BigRational::new normalizes, but guard reduced-form invariants
        // for values built through arithmetic.
        format!("{}/{}", -x.numer(), -x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_scalar("2").unwrap(), int(2));
        assert_eq!(parse_scalar("-1/2").unwrap(), int(-1) / int(2));
        assert_eq!(parse_scalar("4/6").unwrap(), int(2) / int(3));
        assert_eq!(parse_scalar(" 5 / 10 ").unwrap(), int(1) / int(2));
        assert_eq!(parse_scalar("+3").unwrap(), int(3));
        assert_eq!(parse_scalar("1/-2").unwrap(), int(-1) / int(2));
    }

    #[test]
    fn rejects_non_exact_forms() {
        for t in ["", "1.5", "1e3", "0x2", "1/0", "--2", "2/", "/3", "a"] {
            assert!(parse_scalar(t).is_err(), "accepted {t:?}");
        }
    }

    #[test]
    fn canonical_text() {
        assert_eq!(fmt_scalar(&int(-4)), "-4");
        assert_eq!(fmt_scalar(&(int(1) / int(-2))), "-1/2");
        assert_eq!(fmt_scalar(&(int(6) / int(4))), "3/2");
        assert_eq!(fmt_scalar(&int(0)), "0");
    }

    proptest! {
        #[test]
        fn roundtrip(n in -10_000i64..10_000, d in 1i64..500) {
            let x = int(n) / int(d);
            prop_assert_eq!(parse_scalar(&fmt_scalar(&x)).unwrap(), x);
        }
    }
}
