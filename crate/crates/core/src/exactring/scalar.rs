use alloc::string::ToString;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::{Error, Result};

/// Exact rationals. Elements of `Z_(p)` are the ones with denominator prime to `p`.
pub type Q = BigRational;

/// A small prime, the residue characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub const MAX: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self> {
        if (2..=Self::MAX).contains(&p) && is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    pub fn to_q(self) -> Q {
        Q::from_integer(self.to_bigint())
    }

    /// `p^k` for any integer `k`.
    pub fn pow_q(self, k: i64) -> Q {
        let base = self.to_bigint().pow(k.unsigned_abs());
        if k >= 0 {
            Q::from_integer(base)
        } else {
            Q::new(BigInt::one(), base)
        }
    }
}

impl core::fmt::Display for Prime {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn int_q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Multiplicity of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: Prime) -> u32 {
    debug_assert!(!n.is_zero());
    let pb = p.to_bigint();
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// The p-unit `c` for which the values `x / c` have no denominators and no
/// common divisors apart from powers of `p`. Returns `1` if every value is
/// zero.
pub fn unit_content<'a>(xs: impl IntoIterator<Item = &'a Q> + Clone, p: Prime) -> Q {
    let strip = |mut n: BigInt| {
        let pb = p.to_bigint();
        while !n.is_zero() && (&n % &pb).is_zero() {
            n /= &pb;
        }
        n
    };
    let lcm = strip(
        xs.clone()
            .into_iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom())),
    );
    let gcd = xs
        .into_iter()
        .fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()));
    if gcd.is_zero() {
        return Q::one();
    }
    Q::new(strip(gcd), lcm)
}

/// p-adic valuation; `None` for zero.
pub fn valuation(x: &Q, p: Prime) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64)
}

pub fn is_p_integral(x: &Q, p: Prime) -> bool {
    !(x.denom() % p.to_bigint()).is_zero() || x.is_zero()
}

pub fn is_p_unit(x: &Q, p: Prime) -> bool {
    valuation(x, p) == Some(0)
}

pub fn check_p_integral(x: &Q, p: Prime) -> Result<()> {
    if is_p_integral(x, p) {
        Ok(())
    } else {
        Err(Error::NotPIntegral {
            value: x.to_string(),
            p: p.get(),
        })
    }
}

/// The integer in `[0, p^k)` congruent to a p-integral `x` modulo `p^k`.
pub fn residue_mod_pk(x: &Q, p: Prime, k: u32) -> Option<BigInt> {
    if !is_p_integral(x, p) {
        return None;
    }
    let modulus = p.to_bigint().pow(k);
    if modulus.is_one() {
        return Some(BigInt::zero());
    }
    let num = x.numer().mod_floor(&modulus);
    let den = x.denom().mod_floor(&modulus);
    let inv = mod_inverse(&den, &modulus)?;
    Some((num * inv).mod_floor(&modulus))
}

pub fn residue_mod_p(x: &Q, p: Prime) -> Option<u64> {
    residue_mod_pk(x, p, 1).map(|r| {
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    })
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Canonical representative of the class of `x` in `Q / p^k Z_(p)`.
///
/// The representative has the form `n / p^m` with `0 <= n < p^(k+m)` and `m`
/// the smallest nonnegative integer making `p^m x` and `p^(k+m)` p-integral.
pub fn canonical_rep(x: &Q, p: Prime, k: i64) -> Q {
    if x.is_zero() {
        return Q::zero();
    }
    let vx = valuation(x, p).unwrap_or(0);
    let m = 0.max(-vx).max(-k);
    let scaled = x * p.pow_q(m);
    let r = residue_mod_pk(&scaled, p, (k + m) as u32).expect("scaled value is p-integral");
    Q::from_integer(r) / p.pow_q(m)
}

/// Inverse of `a` modulo a small prime.
pub fn fp_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    fp_pow(a, p - 2, p)
}

pub fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn unit_content_clears_units() {
        let p = Prime::new(3).unwrap();
        let xs = [
            Q::new(6.into(), 5.into()),
            Q::new(9.into(), 5.into()),
            Q::zero(),
        ];
        let c = unit_content(xs.iter(), p);
        assert_eq!(c, Q::new(1.into(), 5.into()));
        let ys = [Q::new(4.into(), 7.into()), Q::new(8.into(), 7.into())];
        assert_eq!(unit_content(ys.iter(), p), Q::new(4.into(), 7.into()));
        assert_eq!(unit_content([Q::zero()].iter(), p), Q::one());
        let zs = [Q::new(2.into(), 9.into()), Q::new(10.into(), 3.into())];
        assert_eq!(unit_content(zs.iter(), p), Q::from_integer(2.into()));
    }

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert_eq!(Prime::new(1), Err(Error::InvalidPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::InvalidPrime(9)));
    }

    #[test]
    fn valuations() {
        let p = Prime::new(2).unwrap();
        assert_eq!(valuation(&q(12, 1), p), Some(2));
        assert_eq!(valuation(&q(3, 8), p), Some(-3));
        assert_eq!(valuation(&q(0, 1), p), None);
        assert!(is_p_integral(&q(1, 3), p));
        assert!(!is_p_integral(&q(1, 2), p));
    }

    #[test]
    fn residues() {
        let p = Prime::new(5).unwrap();
        // 1/3 = 2 mod 5
        assert_eq!(residue_mod_p(&q(1, 3), p), Some(2));
        assert_eq!(residue_mod_p(&q(-1, 1), p), Some(4));
        assert_eq!(residue_mod_pk(&q(1, 3), p, 2), Some(BigInt::from(17)));
    }

    #[test]
    fn canonical_representatives() {
        let p = Prime::new(3).unwrap();
        assert_eq!(canonical_rep(&q(10, 1), p, 2), q(1, 1));
        assert_eq!(canonical_rep(&q(-1, 1), p, 1), q(2, 1));
        // 1/3 mod 3 Z_(3) stays 1/3
        assert_eq!(canonical_rep(&q(1, 3), p, 1), q(1, 3));
        assert_eq!(canonical_rep(&q(7, 1), p, 0), q(0, 1));
        // modulus 1/3: 5/9 = 2/9 + 1/3
        assert_eq!(canonical_rep(&q(5, 9), p, -1), q(2, 9));
    }
}
