//! Arbitrary-precision numbers, binomial coefficients and ballot counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact signed integer.
pub type Integer = BigInt;

/// Exact rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `C(n, k)` for a nonnegative top argument. Vanishes outside `0 <= k <= n`.
pub fn choose(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::one();
    for i in 1..=k {
        // acc * (n - k + i) is always divisible by i here.
        acc = acc * Integer::from(n - k + i) / Integer::from(i);
    }
    acc
}

/// `C(n, k)` with a checked top argument.
///
/// Returns zero when `k < 0` or `k > n`; a negative `n` is a domain error.
pub fn binomial(n: i64, k: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::domain(format!("binomial top argument must be >= 0, got {n}")));
    }
    Ok(choose(n as u64, k))
}

/// Number of east/north lattice paths from `(0,0)` to `(m,n)` that never
/// touch a point on the line `y = x + t`.
///
/// Uses the reflection principle: paths that touch the line are in bijection
/// with unrestricted paths to the reflected endpoint `(n - t, m + t)`, giving
/// `C(m+n, n) - C(m+n, n-t)`. When the endpoint itself lies on or above the
/// line every path touches it and the count is zero.
pub fn ballot_paths(m: u64, n: u64, t: i64) -> Result<Integer> {
    if t <= 0 {
        return Err(Error::domain(format!("forbidden diagonal offset must be positive, got {t}")));
    }
    if n as i128 - m as i128 >= t as i128 {
        return Ok(Integer::zero());
    }
    Ok(choose(m + n, n as i64) - choose(m + n, n as i64 - t))
}

/// Converts an exact rational into an integer if its denominator is one.
pub fn to_integer(q: &Rational) -> Option<Integer> {
    q.is_integer().then(|| q.numer().clone())
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` (decimal, optional sign) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<Integer>()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Pascal's triangle built by additions only.
    fn pascal_rows(max: usize) -> Vec<Vec<Integer>> {
        let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::one()]];
        for n in 1..=max {
            let prev = &rows[n - 1];
            let mut row = vec![Integer::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    /// Counts lattice paths avoiding `y - x = t` by walking every path.
    fn enumerate_paths(m: i64, n: i64, t: i64) -> u64 {
        fn walk(x: i64, y: i64, m: i64, n: i64, t: i64) -> u64 {
            if y - x == t {
                return 0;
            }
            if x == m && y == n {
                return 1;
            }
            let mut total = 0;
            if x < m {
                total += walk(x + 1, y, m, n, t);
            }
            if y < n {
                total += walk(x, y + 1, m, n, t);
            }
            total
        }
        walk(0, 0, m, n, t)
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2).unwrap(), Integer::from(6));
        assert_eq!(binomial(0, 3).unwrap(), Integer::zero());
        assert_eq!(binomial(5, -1).unwrap(), Integer::zero());
        assert_eq!(binomial(0, 0).unwrap(), Integer::one());
    }

    #[test]
    fn binomial_matches_pascal_oracle() {
        let rows = pascal_rows(40);
        assert_eq!(rows[14][7], Integer::from(3432));
        assert_eq!(binomial(14, 7).unwrap(), rows[14][7]);
        for (n, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&choose(n as u64, k as i64), v, "C({n},{k})");
            }
        }
    }

    #[test]
    fn binomial_rejects_negative_top() {
        assert!(matches!(binomial(-1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_pascal_rule() {
        for n in 1..=40u64 {
            for k in 0..=n as i64 {
                assert_eq!(choose(n, k), choose(n - 1, k - 1) + choose(n - 1, k));
            }
        }
    }

    #[test]
    fn binomial_large_is_exact() {
        // C(64, 32) exceeds 2^60.
        assert_eq!(choose(64, 32).to_string(), "1832624140942590534");
        assert_eq!(choose(100, 49).to_string(), "98913082887808032681188722800");
    }

    #[test]
    fn ballot_examples() {
        assert_eq!(enumerate_paths(1, 1, 1), 1);
        assert_eq!(enumerate_paths(2, 1, 1), 2);
        assert_eq!(ballot_paths(1, 1, 1).unwrap(), Integer::from(1));
        assert_eq!(ballot_paths(2, 1, 1).unwrap(), Integer::from(2));
        // Line out of reach.
        assert_eq!(ballot_paths(3, 2, 3).unwrap(), choose(5, 2));
    }

    #[test]
    fn ballot_rejects_nonpositive_offset() {
        assert!(ballot_paths(2, 2, 0).is_err());
        assert!(ballot_paths(2, 2, -3).is_err());
    }

    #[test]
    fn ballot_matches_enumeration() {
        for m in 0..=8u64 {
            for n in 0..=8u64 {
                for t in 1..=9i64 {
                    let expected = enumerate_paths(m as i64, n as i64, t);
                    assert_eq!(ballot_paths(m, n, t).unwrap(), Integer::from(expected), "({m},{n},{t})");
                }
            }
        }
    }

    #[test]
    fn rational_parse_and_format() {
        let q = parse_rational("2/4").unwrap();
        assert_eq!(q, parse_rational("1/2").unwrap());
        assert_eq!(format_rational(&q), "1/2");
        assert_eq!(format_rational(&parse_rational("-6/3").unwrap()), "-2");
        assert_eq!(format_rational(&parse_rational("3/-4").unwrap()), "-3/4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    proptest! {
        #[test]
        fn rational_inverse_product_is_one(a in -1000i64..1000, b in 1i64..1000) {
            prop_assume!(a != 0);
            let q = Rational::new(a.into(), b.into());
            prop_assert_eq!(&q * q.recip(), Rational::one());
        }

        #[test]
        fn rational_normal_form(a in -1000i64..1000, b in -1000i64..1000) {
            prop_assume!(b != 0);
            let q = Rational::new(a.into(), b.into());
            prop_assert!(q.denom() > &Integer::zero());
            let again = Rational::new(q.numer().clone(), q.denom().clone());
            prop_assert_eq!(again.numer(), q.numer());
            prop_assert_eq!(again.denom(), q.denom());
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}
