use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::{check_p_integral, int_q, residue_mod_p, valuation, Prime, Q};
use crate::{Error, Result};

/// A polynomial in `u` with rational coefficients, standing in for an element
/// of `Z_p[[u]]`. Coefficient of `u^k` sits at index `k`; trailing zeros are
/// always trimmed, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyU {
    coeffs: Vec<Q>,
}

impl PolyU {
    pub fn from_coeffs(coeffs: Vec<Q>) -> Self {
        let mut f = PolyU { coeffs };
        f.trim();
        f
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int_q(c)).collect())
    }

    pub fn zero() -> Self {
        PolyU { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `u`.
    pub fn u() -> Self {
        Self::from_coeffs(vec![Q::zero(), Q::one()])
    }

    /// `u^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The Eisenstein polynomial `E = u - p`.
    pub fn eisenstein(p: Prime) -> Self {
        Self::from_coeffs(vec![-p.to_q(), Q::one()])
    }

    /// `E^k`.
    pub fn e_power(p: Prime, k: u32) -> Self {
        Self::eisenstein(p).pow(k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyU {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `f(p)`, the image under `ev_p`.
    pub fn eval_at_p(&self, p: Prime) -> Q {
        self.eval(&p.to_q())
    }

    /// Constant term `f(0)`.
    pub fn constant_term(&self) -> Q {
        self.coeff(0)
    }

    pub fn is_p_integral(&self, p: Prime) -> bool {
        self.coeffs.iter().all(|c| check_p_integral(c, p).is_ok())
    }

    pub fn check_p_integral(&self, p: Prime) -> Result<()> {
        self.coeffs.iter().try_for_each(|c| check_p_integral(c, p))
    }

    /// Unit of `Z_p[[u]]`: the constant term is a p-adic unit.
    pub fn is_unit_in_s(&self, p: Prime) -> bool {
        valuation(&self.constant_term(), p) == Some(0)
    }

    /// Division by `u - a`, returning quotient and remainder `f(a)`.
    pub fn div_linear(&self, a: &Q) -> (PolyU, Q) {
        let n = self.coeffs.len();
        if n == 0 {
            return (Self::zero(), Q::zero());
        }
        let mut quot = vec![Q::zero(); n - 1];
        let mut carry = Q::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &carry * a;
            if k == 0 {
                carry = v;
            } else {
                quot[k - 1] = v.clone();
                carry = v;
            }
        }
        (Self::from_coeffs(quot), carry)
    }

    /// `g` with `g * E^k = f`.
    pub fn div_by_e_exact(&self, p: Prime, k: u32) -> Result<PolyU> {
        let pq = p.to_q();
        let mut f = self.clone();
        for _ in 0..k {
            let (q, r) = f.div_linear(&pq);
            if !r.is_zero() {
                return Err(Error::NotDivisible { k });
            }
            f = q;
        }
        Ok(f)
    }

    /// Largest `k` with `E^k | f`; `None` for zero.
    pub fn e_valuation(&self, p: Prime) -> Option<u32> {
        self.split_e_power(p).map(|(k, _)| k)
    }

    /// Writes a nonzero `f` as `E^k * g` with `g(p) != 0`.
    pub fn split_e_power(&self, p: Prime) -> Option<(u32, PolyU)> {
        if self.is_zero() {
            return None;
        }
        let pq = p.to_q();
        let mut k = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.div_linear(&pq);
            if !r.is_zero() {
                return Some((k, f));
            }
            f = q;
            k += 1;
        }
    }

    /// Coefficients `(c_0, c_1, ...)` with `f = sum c_k E^k`.
    pub fn e_expand(&self, p: Prime) -> Vec<Q> {
        let pq = p.to_q();
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut f = self.clone();
        while !f.is_zero() {
            let (q, r) = f.div_linear(&pq);
            out.push(r);
            f = q;
        }
        out
    }

    /// Inverse of [`PolyU::e_expand`].
    pub fn from_e_expansion(cs: &[Q], p: Prime) -> Self {
        let e = Self::eisenstein(p);
        let mut acc = Self::zero();
        for c in cs.iter().rev() {
            acc = &(&acc * &e) + &Self::constant(c.clone());
        }
        acc
    }

    /// Euclidean division over `Q[u]`.
    pub fn div_rem(&self, divisor: &PolyU) -> (PolyU, PolyU) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] / &lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Quotient when `divisor` divides `self` exactly in `Q[u]`.
    pub fn div_exact(&self, divisor: &PolyU) -> Option<PolyU> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Reduction of a p-integral polynomial into `F_p[u]`, low degree first.
    pub fn mod_p(&self, p: Prime) -> Option<Vec<u64>> {
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| residue_mod_p(c, p))
            .collect::<Option<_>>()?;
        while out.last() == Some(&0) {
            out.pop();
        }
        Some(out)
    }

    /// Rendering in powers of `E`, e.g. `E^3 + 2*E`. Parses back to the same
    /// polynomial under the entry grammar.
    pub fn display_in_e(&self, p: Prime) -> String {
        render_terms(&self.e_expand(p), "E")
    }
}

fn render_terms(coeffs: &[Q], var: &str) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let var_part = match k {
            0 => None,
            1 => Some(String::from(var)),
            _ => Some(alloc::format!("{var}^{k}")),
        };
        match var_part {
            None => {
                let _ = write!(out, "{mag}");
            }
            Some(v) if mag.is_one() => out.push_str(&v),
            Some(v) => {
                let _ = write!(out, "{mag}*{v}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for PolyU {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(&self.coeffs, "u"))
    }
}

impl Add for &PolyU {
    type Output = PolyU;
    fn add(self, rhs: &PolyU) -> PolyU {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyU::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyU {
    type Output = PolyU;
    fn sub(self, rhs: &PolyU) -> PolyU {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyU::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolyU {
    type Output = PolyU;
    fn mul(self, rhs: &PolyU) -> PolyU {
        if self.is_zero() || rhs.is_zero() {
            return PolyU::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyU::from_coeffs(out)
    }
}

impl Neg for &PolyU {
    type Output = PolyU;
    fn neg(self) -> PolyU {
        PolyU {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyU {
            type Output = PolyU;
            fn $m(self, rhs: PolyU) -> PolyU {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyU {
    type Output = PolyU;
    fn neg(self) -> PolyU {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_bigint::BigInt;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_at_p_examples() {
        assert_eq!(PolyU::eisenstein(p(2)).eval_at_p(p(2)), int_q(0));
        assert_eq!(PolyU::from_ints(&[1, 0, 1]).eval_at_p(p(3)), int_q(10));
        assert_eq!(PolyU::constant(q(2, 7)).eval_at_p(p(5)), q(2, 7));
    }

    #[test]
    fn exact_division_by_e() {
        let pr = p(2);
        let e = PolyU::eisenstein(pr);
        assert_eq!(PolyU::e_power(pr, 3).div_by_e_exact(pr, 2).unwrap(), e);
        let ue = &PolyU::u() * &e;
        assert_eq!(ue.div_by_e_exact(pr, 1).unwrap(), PolyU::u());
        assert_eq!(
            PolyU::u().div_by_e_exact(pr, 1),
            Err(Error::NotDivisible { k: 1 })
        );
    }

    #[test]
    fn e_expansion_examples() {
        let pr = p(2);
        assert_eq!(PolyU::u().e_expand(pr), vec![int_q(2), int_q(1)]);
        assert_eq!(
            PolyU::e_power(p(7), 2).e_expand(p(7)),
            vec![int_q(0), int_q(0), int_q(1)]
        );
        assert_eq!(PolyU::one().e_expand(pr), vec![int_q(1)]);
        assert!(PolyU::zero().e_expand(pr).is_empty());
    }

    #[test]
    fn unit_test_examples() {
        assert!(PolyU::from_ints(&[1, 1]).is_unit_in_s(p(2)));
        assert!(!PolyU::eisenstein(p(2)).is_unit_in_s(p(2)));
        assert!(PolyU::from_ints(&[3, 1]).is_unit_in_s(p(2)));
        assert!(!PolyU::zero().is_unit_in_s(p(2)));
    }

    #[test]
    fn display() {
        assert_eq!(PolyU::e_power(p(2), 2).to_string(), "u^2 - 4*u + 4");
        assert_eq!(
            PolyU::from_coeffs(vec![q(1, 3), int_q(1)]).to_string(),
            "u + 1/3"
        );
        assert_eq!(
            PolyU::from_coeffs(vec![int_q(0), q(-2, 3)]).to_string(),
            "-2/3*u"
        );
        assert_eq!(PolyU::zero().to_string(), "0");
        assert_eq!(PolyU::u().display_in_e(p(2)), "E + 2");
    }

    #[test]
    fn div_rem_and_mod_p() {
        let f = PolyU::from_ints(&[-1, 0, 1]);
        let g = PolyU::from_ints(&[1, 1]);
        assert_eq!(f.div_exact(&g), Some(PolyU::from_ints(&[-1, 1])));
        let (_, r) = PolyU::from_ints(&[1, 0, 1]).div_rem(&g);
        assert_eq!(r, PolyU::from_ints(&[2]));
        assert_eq!(PolyU::e_power(p(2), 3).mod_p(p(2)), Some(vec![0, 0, 0, 1]));
    }
}
