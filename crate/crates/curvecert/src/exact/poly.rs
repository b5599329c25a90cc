//! Dense univariate polynomials over an exact commutative ring.
//!
//! Shared by the rational layer (`QPoly`) and by characteristic polynomials
//! over cyclotomic fields. Coefficients are stored in ascending degree order
//! with the leading coefficient nonzero.

use num_rational::BigRational;

/// Exact ring element usable as a polynomial coefficient.
///
/// Division is only invoked where it is exact (fields, or exact divisions in
/// fraction-free algorithms); implementations may panic on inexact division.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact division. Callers must ensure divisibility (or a field).
    fn div(&self, other: &Self) -> Self;
}

impl Ring for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        num_traits::One::is_one(self)
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
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Polynomial with coefficients in `T`, ascending degree, trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T: Ring> {
    coeffs: Vec<T>,
}

/// Polynomials over the rationals.
pub type QPoly = Poly<BigRational>;

impl<T: Ring> Poly<T> {
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    /// `x^n - 1`.
    pub fn xn_minus_one(n: usize) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[0] = T::one().neg();
        coeffs[n] = T::one();
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `deg 0 = None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division, valid when the divisor's leading coefficient is
    /// invertible in `T` (always, over a field).
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![T::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap().div(&lead);
            if !factor.is_zero() {
                for i in 0..=dd {
                    let t = divisor.coeffs[i].mul(&factor);
                    rem[k + i] = rem[k + i].sub(&t);
                }
                quo[k] = factor;
            }
            // The leading entry is now exactly zero by construction.
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divmod(divisor).1
    }

    /// Make the polynomial monic (field coefficients).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                if *l == T::one() {
                    self.clone()
                } else {
                    let inv_applied: Vec<T> = self.coeffs.iter().map(|c| c.div(l)).collect();
                    Self::from_coeffs(inv_applied)
                }
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm (field coefficients).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `x^n mod m` by binary exponentiation; `m` must be nonconstant.
    pub fn x_pow_mod(n: u64, m: &Self) -> Self {
        assert!(m.degree().map_or(false, |d| d >= 1));
        let mut result = Self::one().rem(m);
        let mut base = Self::x().rem(m);
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        result
    }

    pub fn eval(&self, at: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Substitute a polynomial argument: `self(arg)`.
    pub fn compose(&self, arg: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(arg).add(&Self::constant(c.clone()));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn poly(cs: &[i64]) -> QPoly {
        QPoly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn divmod_roundtrip() {
        let a = poly(&[2, 0, -3, 1, 5]);
        let b = poly(&[1, 1, 2]);
        let (quo, rem) = a.divmod(&b);
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert!(rem.degree().map_or(true, |d| d < 2));
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = poly(&[-1, 1]); // x - 1
        let a = f.mul(&poly(&[1, 1]));
        let b = f.mul(&poly(&[2, 0, 1]));
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn x_pow_mod_matches_naive() {
        let m = poly(&[1, 1, 1, 1, 1]); // Phi_5
        let direct = QPoly::x_pow_mod(13, &m);
        let mut naive = QPoly::one();
        for _ in 0..13 {
            naive = naive.mul(&QPoly::x()).rem(&m);
        }
        assert_eq!(direct, naive);
    }
}
