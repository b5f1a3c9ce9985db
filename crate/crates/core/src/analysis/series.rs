//! Elementary divisors over a truncated power series ring `F[[t]]/t^n`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactring::{fp_inv, Q};

/// Coefficient field of a truncated series.
pub(crate) trait Coeff: Clone {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Coeff for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Self {
        Q::one() / self
    }
}

/// Element of `F_p` carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Coeff for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp {
            v: (self.v + other.v) % self.p,
            p: self.p,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Fp {
            v: (self.v + self.p - other.v) % self.p,
            p: self.p,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Fp {
            v: self.v * other.v % self.p,
            p: self.p,
        }
    }
    fn inv(&self) -> Self {
        Fp {
            v: fp_inv(self.v, self.p),
            p: self.p,
        }
    }
}

type Series<F> = Vec<F>;

fn valuation<F: Coeff>(s: &Series<F>) -> Option<usize> {
    s.iter().position(|c| !c.is_zero())
}

fn mul<F: Coeff>(a: &Series<F>, b: &Series<F>, n: usize) -> Series<F> {
    let zero = a[0].zero_like();
    let mut out = vec![zero; n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Inverse of a series with nonzero constant term, modulo `t^n`.
fn inverse<F: Coeff>(a: &Series<F>, n: usize) -> Series<F> {
    let c0 = a[0].inv();
    let mut out = vec![a[0].zero_like(); n];
    out[0] = c0.clone();
    for k in 1..n {
        let mut acc = a[0].zero_like();
        for j in 1..=k.min(a.len() - 1) {
            acc = acc.add(&a[j].mul(&out[k - j]));
        }
        out[k] = a[0].zero_like().sub(&acc.mul(&c0));
    }
    out
}

/// Exponents of the elementary divisors of a square matrix of series
/// truncated at `t^n`, ascending. `None` if some divisor is invisible at
/// this precision.
pub(crate) fn elementary_divisors<F: Coeff>(
    mut a: Vec<Vec<Series<F>>>,
    n: usize,
) -> Option<Vec<u32>> {
    let d = a.len();
    let mut out = Vec::with_capacity(d);
    for t in 0..d {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, s) in row.iter().enumerate().skip(t) {
                if let Some(v) = valuation(s) {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, r, c) = best?;
        a.swap(t, r);
        for row in a.iter_mut() {
            row.swap(t, c);
        }
        let unit: Series<F> = a[t][t][v..].to_vec();
        let unit_inv = inverse(&unit, n);
        for i in t + 1..d {
            if valuation(&a[i][t]).is_none() {
                continue;
            }
            let shifted: Series<F> = a[i][t][v..].to_vec();
            let f = mul(&shifted, &unit_inv, n);
            let (top, rest) = a.split_at_mut(i);
            for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                let prod = mul(&f, y, n);
                *x = x.iter().zip(&prod).map(|(a, b)| a.sub(b)).collect();
            }
        }
        out.push(v as u32);
    }
    out.sort_unstable();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::int_q;

    fn qs(v: &[i64], n: usize) -> Series<Q> {
        let mut s: Vec<Q> = v.iter().map(|&x| int_q(x)).collect();
        s.resize(n, Q::zero());
        s
    }

    #[test]
    fn inverse_is_inverse() {
        let a = qs(&[2, 3, -1], 5);
        let inv = inverse(&a, 5);
        assert_eq!(mul(&a, &inv, 5), qs(&[1], 5));
        let f = |v| Fp { v, p: 5 };
        let b = vec![f(3), f(1), f(4)];
        let inv = inverse(&b, 4);
        assert_eq!(mul(&b, &inv, 4), vec![f(1), f(0), f(0), f(0)]);
    }

    #[test]
    fn divisors_of_small_matrices() {
        let n = 4;
        // [[t^3, 1 + t], [0, 1]] has divisors 0 and 3.
        let a = vec![
            vec![qs(&[0, 0, 0, 1], n), qs(&[1, 1], n)],
            vec![qs(&[0], n), qs(&[1], n)],
        ];
        assert_eq!(elementary_divisors(a, n), Some(vec![0, 3]));
        // [[t, t], [t, t + t^2]] has divisors 1 and 2.
        let a = vec![
            vec![qs(&[0, 1], n), qs(&[0, 1], n)],
            vec![qs(&[0, 1], n), qs(&[0, 1, 1], n)],
        ];
        assert_eq!(elementary_divisors(a, n), Some(vec![1, 2]));
        let z = vec![vec![qs(&[0], n)]];
        assert_eq!(elementary_divisors(z, n), None);
    }
}
