//! Elements of cyclotomic fields `Q(zeta_n)` in canonical form.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Poly, QPoly, Ring};
use super::{ExactError, MAX_FIELD_ORDER};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The `n`-th cyclotomic polynomial over `Q`, computed by stripping the
/// cyclotomic factors of every proper divisor out of `x^n - 1`.
pub fn cyclotomic_polynomial(n: u32) -> QPoly {
    static CACHE: OnceLock<Mutex<HashMap<u32, QPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        QPoly::from_coeffs(vec![
            BigRational::from_integer(BigInt::from(-1)),
            BigRational::one(),
        ])
    } else {
        let mut num = QPoly::xn_minus_one(n as usize);
        for d in divisors(n) {
            if d < n {
                let (quo, rem) = num.divmod(&cyclotomic_polynomial(d));
                debug_assert!(rem.is_zero());
                num = quo;
            }
        }
        num
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// An element of `Q(zeta_n)` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`
/// reduced modulo the `n`-th cyclotomic polynomial.
///
/// The representation is canonical: two elements of the same field order are
/// equal iff their coefficient vectors are equal. Elements of different
/// orders compare equal iff they agree after embedding into the field of the
/// lcm order.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    /// Length `phi(order)`.
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn phi(order: u32) -> usize {
        euler_phi(order) as usize
    }

    pub fn zero(order: u32) -> Self {
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); Self::phi(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = BigRational::one();
        z
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(n)))
    }

    /// The primitive root of unity `zeta_n` as an element of `Q(zeta_n)`.
    pub fn zeta(order: u32) -> Result<Self, ExactError> {
        if order as u64 > MAX_FIELD_ORDER as u64 {
            return Err(ExactError::OrderOverflow(order as u64));
        }
        Ok(Self::from_power_poly(order, &QPoly::x()))
    }

    /// Reduce a polynomial in `zeta_n` to canonical coordinates.
    fn from_power_poly(order: u32, p: &QPoly) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let r = p.rem(&modulus);
        let mut coeffs = vec![BigRational::zero(); Self::phi(order)];
        for (i, c) in r.coeffs().iter().enumerate() {
            coeffs[i] = c.clone();
        }
        Cyclotomic { order, coeffs }
    }

    fn to_poly(&self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part if the element lies in `Q`, else `None`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Embed into `Q(zeta_m)` for a multiple `m` of the current order.
    pub fn promote(&self, m: u32) -> Result<Self, ExactError> {
        if m as u64 > MAX_FIELD_ORDER as u64 {
            return Err(ExactError::OrderOverflow(m as u64));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        assert!(
            m % self.order == 0,
            "promotion target {} is not a multiple of {}",
            m,
            self.order
        );
        let k = (m / self.order) as usize;
        // zeta_n^i maps to zeta_m^(i*k).
        let mut p = QPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut mono = vec![BigRational::zero(); i * k + 1];
                mono[i * k] = c.clone();
                p = p.add(&QPoly::from_coeffs(mono));
            }
        }
        Ok(Self::from_power_poly(m, &p))
    }

    fn common_order(&self, other: &Self) -> Result<u32, ExactError> {
        if self.order == other.order {
            return Ok(self.order);
        }
        let l = (self.order as u64).lcm(&(other.order as u64));
        if l > MAX_FIELD_ORDER as u64 {
            return Err(ExactError::OrderOverflow(l));
        }
        Ok(l as u32)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let n = self.common_order(other)?;
        let a = self.promote(n)?;
        let b = other.promote(n)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Ok(Cyclotomic { order: n, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let n = self.common_order(other)?;
        let a = self.promote(n)?;
        let b = other.promote(n)?;
        Ok(Self::from_power_poly(n, &a.to_poly().mul(&b.to_poly())))
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against the
    /// cyclotomic modulus, which is irreducible over `Q`.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero(self.order));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order, r.recip()));
        }
        let modulus = cyclotomic_polynomial(self.order);
        let (g, u) = half_xgcd(&self.to_poly(), &modulus);
        // g is a nonzero constant since the modulus is irreducible.
        debug_assert!(g.is_constant() && !g.is_zero());
        let ginv = g.coeff(0).recip();
        Ok(Self::from_power_poly(self.order, &u.scale(&ginv)))
    }

    /// Galois automorphism `zeta -> zeta^j` for `gcd(j, n) = 1`.
    pub fn galois(&self, j: u32) -> Self {
        let n = self.order;
        assert!(
            (j % n != 0) && (j as u64).gcd(&(n as u64)) == 1,
            "galois exponent {} not coprime to {}",
            j,
            n
        );
        let mut p = QPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((i as u64 * j as u64) % n as u64) as usize;
                let mut mono = vec![BigRational::zero(); e + 1];
                mono[e] = c.clone();
                p = p.add(&QPoly::from_coeffs(mono));
            }
        }
        Self::from_power_poly(n, &p)
    }

    /// Complex conjugation `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        if e == 0 {
            return Ok(Self::one(self.order));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = Self::one(self.order);
        let mut acc = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.try_mul(&acc)?;
            }
            k >>= 1;
            if k > 0 {
                acc = acc.try_mul(&acc)?;
            }
        }
        Ok(result)
    }

    /// All Galois exponents of the field (units modulo the order).
    pub fn galois_exponents(order: u32) -> Vec<u32> {
        (1..=order)
            .filter(|j| (*j as u64).gcd(&(order as u64)) == 1)
            .collect()
    }
}

/// Extended gcd returning `(g, u)` with `u*a = g (mod b)`.
fn half_xgcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = QPoly::one();
    let mut s1 = QPoly::zero();
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        match self.common_order(other) {
            Ok(n) => match (self.promote(n), other.promote(n)) {
                (Ok(a), Ok(b)) => a.coeffs == b.coeffs,
                _ => false,
            },
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero(1)
    }
    fn one() -> Self {
        Cyclotomic::one(1)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Cyclotomic::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("field order overflow in add")
    }
    fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("field order overflow in sub")
    }
    fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("field order overflow in mul")
    }
    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }
    fn div(&self, other: &Self) -> Self {
        self.try_mul(&other.inv().expect("division by zero"))
            .expect("field order overflow in div")
    }
}

/// Characteristic-polynomial alias over the cyclotomic field.
pub type CycPoly = Poly<Cyclotomic>;

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc(n={};", self.order)?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if !first {
                    write!(f, " +")?;
                }
                write!(f, " {}*z^{}", c, i)?;
                first = false;
            }
        }
        if first {
            write!(f, " 0")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct CycWire {
    order: u32,
    /// Numerator/denominator decimal-string pairs, one per power-basis slot.
    coeffs: Vec<(String, String)>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| (c.numer().to_string(), c.denom().to_string()))
            .collect();
        CycWire {
            order: self.order,
            coeffs,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = CycWire::deserialize(deserializer)?;
        let phi = euler_phi(wire.order) as usize;
        if wire.coeffs.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for order {}, got {}",
                phi,
                wire.order,
                wire.coeffs.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(phi);
        for (n, d) in wire.coeffs {
            let numer: BigInt = n.parse().map_err(D::Error::custom)?;
            let denom: BigInt = d.parse().map_err(D::Error::custom)?;
            if num_traits::Zero::is_zero(&denom) || denom.is_negative() {
                return Err(D::Error::custom("denominator must be positive"));
            }
            coeffs.push(BigRational::new(numer, denom));
        }
        Ok(Cyclotomic {
            order: wire.order,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn phi_and_cyclotomic_degrees() {
        for n in 1..=50u32 {
            let p = cyclotomic_polynomial(n);
            assert_eq!(p.degree().unwrap() as u32, euler_phi(n), "n = {}", n);
        }
    }

    #[test]
    fn product_over_divisors_is_xn_minus_one() {
        for n in [1u32, 2, 6, 12, 30] {
            let mut prod = QPoly::one();
            for d in divisors(n) {
                prod = prod.mul(&cyclotomic_polynomial(d));
            }
            assert_eq!(prod, QPoly::xn_minus_one(n as usize));
        }
    }

    #[test]
    fn zeta5_inverse_is_fourth_power() {
        let z = Cyclotomic::zeta(5).unwrap();
        let inv = z.inv().unwrap();
        assert_eq!(inv, z.pow(4).unwrap());
        assert!(z.try_mul(&inv).unwrap().is_one());
    }

    #[test]
    fn inverse_of_one_plus_zeta5_certifies() {
        let z = Cyclotomic::zeta(5).unwrap();
        let x = Cyclotomic::one(5).try_add(&z).unwrap();
        let v = x.inv().unwrap();
        assert!(x.try_mul(&v).unwrap().is_one());
    }

    #[test]
    fn conjugation_inverts_roots_of_unity() {
        for n in [3u32, 4, 5, 8, 12] {
            let z = Cyclotomic::zeta(n).unwrap();
            assert_eq!(z.conj(), z.inv().unwrap(), "n = {}", n);
        }
    }

    #[test]
    fn cross_order_equality() {
        // zeta_2 = -1 in any containing field.
        let m1 = Cyclotomic::from_integer(1, -1);
        let z2 = Cyclotomic::zeta(2).unwrap();
        assert_eq!(m1, z2);
        // zeta_10^2 = zeta_5.
        let z10 = Cyclotomic::zeta(10).unwrap();
        let z5 = Cyclotomic::zeta(5).unwrap();
        assert_eq!(z10.pow(2).unwrap(), z5);
    }

    #[test]
    fn mixed_order_arithmetic_lands_in_lcm() {
        let z4 = Cyclotomic::zeta(4).unwrap();
        let z3 = Cyclotomic::zeta(3).unwrap();
        let s = z4.try_mul(&z3).unwrap();
        assert_eq!(s.order(), 12);
        assert_eq!(s, Cyclotomic::zeta(12).unwrap().pow(7).unwrap());
    }

    #[test]
    fn galois_fixes_rationals_and_permutes_roots() {
        let x = Cyclotomic::from_rational(7, rat(3, 5));
        assert_eq!(x.galois(3), x);
        let z = Cyclotomic::zeta(7).unwrap();
        assert_eq!(z.galois(3), z.pow(3).unwrap());
    }

    #[test]
    fn serde_roundtrip_is_bit_exact() {
        let z = Cyclotomic::zeta(12).unwrap();
        let x = z
            .pow(5)
            .unwrap()
            .try_add(&Cyclotomic::from_rational(12, rat(-7, 3)))
            .unwrap();
        let json = serde_json::to_string(&x).unwrap();
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(back.order(), x.order());
        assert_eq!(back.coeffs(), x.coeffs());
    }
}
