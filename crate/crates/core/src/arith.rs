//! Exact integer and rational helpers shared by every module.

use num_traits::{One, Zero};

pub use num_bigint::BigInt;

/// Reduced fraction with positive denominator; displays as `p` or `p/q`.
pub type Rational = num_rational::BigRational;

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(-1)^t * C(n, t)`.
pub fn signed_binomial(n: u64, t: u64) -> BigInt {
    let b = binomial(n, t);
    if t % 2 == 1 {
        -b
    } else {
        b
    }
}

pub fn pow_int(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// Multinomial `n! / prod(parts!)` where `n = sum(parts)`.
pub fn multinomial(parts: impl IntoIterator<Item = u32>) -> BigInt {
    let mut total = 0u64;
    let mut denom = BigInt::one();
    for p in parts {
        total += u64::from(p);
        denom *= factorial(u64::from(p));
    }
    factorial(total) / denom
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}
