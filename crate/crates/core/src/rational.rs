//! Exact rationals used for every measure and group coordinate.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Always kept in lowest terms with a positive denominator.
pub type Rational = Ratio<i128>;

pub fn ratio(numer: i128, denom: i128) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// Parses `p/q` or `p`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer: i128 = numer
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {text:?}")))?;
    let denom: i128 = denom
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {text:?}")))?;
    if denom == 0 {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Distinct primes of `n` (trial division; the integers here are small).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// True iff `denom` divides some power of `m` (for `m = 1`, iff `denom = 1`).
pub fn divides_power_of(denom: i128, m: u64) -> bool {
    let mut d = denom.abs();
    if d == 0 {
        return false;
    }
    let m = m as i128;
    loop {
        if d == 1 {
            return true;
        }
        let g = d.gcd(&m);
        if g == 1 {
            return false;
        }
        d /= g;
    }
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn floor_int(r: &Rational) -> i128 {
    r.floor().to_integer()
}

/// Serializes as the `p/q` string, for use with `#[serde(serialize_with)]`.
pub fn serialize_rational<S: serde::Serializer>(
    r: &Rational,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        assert_eq!(parse_rational("2/8").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(format_rational(&ratio(3, 4)), "3/4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn power_divisibility() {
        assert!(divides_power_of(8, 2));
        assert!(divides_power_of(12, 6));
        assert!(!divides_power_of(3, 2));
        assert!(divides_power_of(1, 1));
        assert!(!divides_power_of(2, 1));
    }

    #[test]
    fn primes() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(97), vec![97]);
    }
}
