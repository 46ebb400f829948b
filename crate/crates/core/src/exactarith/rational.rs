//! Helpers for `BigRational` text and conversion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rational(r: &Q) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// A random small nonzero rational, used for specializations.
pub fn random_rational<R: rand::Rng>(rng: &mut R, bound: i64) -> Q {
    loop {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound.max(1));
        if n != 0 {
            return qfrac(n, d);
        }
    }
}

/// A random nonzero integer in `[-bound, bound]` as a rational.
pub fn random_int<R: rand::Rng>(rng: &mut R, bound: i64) -> Q {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return q(n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["0", "-3", "7/2", "-11/13"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_none());
        assert_eq!(parse_rational("4/6").unwrap(), qfrac(2, 3));
    }
}
