//! Root-of-unity certification and projective matrix orders.
//!
//! The infinite-order certificate reduces to an integer-polynomial question:
//! the eigenvalue ratios of `M` are the eigenvalues of the conjugation
//! operator `Ad(M)`, and `M` has finite projective order iff every such
//! ratio is a root of unity. Taking the product of the characteristic
//! polynomial of `Ad(M)` over all Galois embeddings yields a rational
//! polynomial whose roots are algebraic conjugates of those ratios, so the
//! question becomes: is every complex root of an explicit integer polynomial
//! a root of unity?

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::CycPoly;
use super::poly::QPoly;
use super::{Cyclotomic, ExactError, ExactMatrix};

/// Integer polynomial, ascending coefficients, nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Gcd of the coefficients (positive), zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divide out the content, normalizing the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            g = -g;
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Clear denominators of a rational polynomial (same roots).
    pub fn from_qpoly(p: &QPoly) -> Self {
        let mut lcm = BigInt::one();
        for c in p.coeffs() {
            lcm = lcm.lcm(c.denom());
        }
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        Self::from_coeffs(coeffs)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strings: Vec<String> = Vec::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

/// Decide whether every complex root of `q` is a root of unity.
///
/// Roots of unity of a degree-`d` product have order `N` with
/// `phi(N) <= d`, and `phi(N) >= sqrt(N/2)` forces `N <= 2 d^2`. The test
/// strips `gcd(q, x^N - 1)` for every `N` up to that bound and accepts iff
/// nothing but a constant survives. Non-monic input (after removing the
/// content) is rejected immediately since roots of unity are algebraic
/// integers.
pub fn is_cyclotomic_product(q: &IntPolynomial) -> Result<bool, ExactError> {
    if q.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let prim = q.primitive();
    if prim.is_constant_poly() {
        return Ok(true);
    }
    if !prim.is_monic() {
        return Ok(false);
    }
    // A zero constant term means 0 is a root.
    if prim.coeffs()[0].is_zero() {
        return Ok(false);
    }
    let deg = prim.degree().unwrap() as u64;
    let n_max = 2 * deg * deg;
    let mut residual = prim.to_qpoly();
    for n in 1..=n_max {
        if residual.is_constant() {
            break;
        }
        // gcd(residual, x^n - 1) via x^n mod residual.
        let xn = QPoly::x_pow_mod(n, &residual);
        let xn_minus_1 = xn.sub(&QPoly::one());
        let mut g = residual.gcd(&xn_minus_1);
        while !g.is_constant() {
            let (quo, rem) = residual.divmod(&g);
            debug_assert!(rem.is_zero());
            residual = quo;
            if residual.is_constant() {
                break;
            }
            g = residual.gcd(&xn_minus_1);
        }
    }
    Ok(residual.is_constant())
}

impl IntPolynomial {
    fn is_constant_poly(&self) -> bool {
        self.coeffs.len() <= 1
    }
}

/// Verdict of a projective-order computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum OrderVerdict {
    /// Least `k` with `M^k` scalar.
    Finite(u64),
    /// Some eigenvalue ratio is certified not to be a root of unity; the
    /// witness is the integer polynomial that failed the cyclotomic test.
    Infinite { witness: IntPolynomial },
    /// All eigenvalue ratios are roots of unity but no scalar power was
    /// found within `k_max`; the caller must raise `k_max`.
    Unknown { reason: String },
}

impl OrderVerdict {
    pub fn is_infinite(&self) -> bool {
        matches!(self, OrderVerdict::Infinite { .. })
    }
    pub fn is_finite(&self) -> bool {
        matches!(self, OrderVerdict::Finite(_))
    }
}

/// Projective order of an invertible matrix, i.e. its order modulo scalars.
///
/// Scans `M^k` for `k <= k_max` first; if no scalar power appears, certifies
/// finiteness or infiniteness through the `Ad`-matrix cyclotomic test.
pub fn projective_order(m: &ExactMatrix, k_max: u64) -> Result<OrderVerdict, ExactError> {
    // Fails here if M is singular.
    m.inverse()?;
    let mut power = m.clone();
    for k in 1..=k_max {
        if power.is_scalar() {
            return Ok(OrderVerdict::Finite(k));
        }
        if k < k_max {
            power = power.mul(m)?;
        }
    }
    let witness = galois_norm_char_poly(&m.ad_matrix()?)?;
    if is_cyclotomic_product(&witness)? {
        Ok(OrderVerdict::Unknown {
            reason: format!(
                "all eigenvalue ratios are roots of unity but no scalar power within k_max = {}",
                k_max
            ),
        })
    } else {
        Ok(OrderVerdict::Infinite { witness })
    }
}

/// The integer polynomial `prod_sigma sigma(char_poly(M))` over all Galois
/// embeddings of the entry field, content-normalized.
pub fn galois_norm_char_poly(m: &ExactMatrix) -> Result<IntPolynomial, ExactError> {
    let chi = m.char_poly();
    let order = m.order();
    let mut product = CycPoly::one();
    for j in Cyclotomic::galois_exponents(order) {
        let conj = CycPoly::from_coeffs(chi.coeffs().iter().map(|c| c.galois(j)).collect());
        product = product.mul(&conj);
    }
    // The Galois norm is rational coefficient-wise.
    let mut rational = Vec::with_capacity(product.coeffs().len());
    for c in product.coeffs() {
        match c.as_rational() {
            Some(r) => rational.push(r),
            None => unreachable!("Galois norm must have rational coefficients"),
        }
    }
    Ok(IntPolynomial::from_qpoly(&QPoly::from_coeffs(rational)).primitive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic::cyclotomic_polynomial;

    #[test]
    fn linear_and_quadratic_examples() {
        assert!(is_cyclotomic_product(&IntPolynomial::from_i64(&[-1, 1])).unwrap());
        // Golden ratio root: not on the unit circle.
        assert!(!is_cyclotomic_product(&IntPolynomial::from_i64(&[-1, -1, 1])).unwrap());
        // Phi_5.
        assert!(is_cyclotomic_product(&IntPolynomial::from_i64(&[1, 1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert_eq!(
            is_cyclotomic_product(&IntPolynomial::from_i64(&[])),
            Err(ExactError::ZeroPolynomial)
        );
    }

    #[test]
    fn all_cyclotomics_up_to_50() {
        for n in 1..=50u32 {
            let phi_n = IntPolynomial::from_qpoly(&cyclotomic_polynomial(n));
            assert!(is_cyclotomic_product(&phi_n).unwrap(), "Phi_{}", n);
        }
    }

    #[test]
    fn products_of_cyclotomics_pass() {
        let p = IntPolynomial::from_qpoly(
            &cyclotomic_polynomial(3).mul(&cyclotomic_polynomial(8)),
        );
        assert!(is_cyclotomic_product(&p).unwrap());
    }

    #[test]
    fn minimal_polynomial_of_2cos_2pi_over_7_fails() {
        // x^3 + x^2 - 2x - 1.
        let p = IntPolynomial::from_i64(&[-1, -2, 1, 1]);
        assert!(!is_cyclotomic_product(&p).unwrap());
    }

    #[test]
    fn projective_order_of_identity() {
        let m = ExactMatrix::identity(3, 1);
        assert_eq!(projective_order(&m, 4).unwrap(), OrderVerdict::Finite(1));
    }

    #[test]
    fn projective_order_of_diag_1_zeta5() {
        let z = Cyclotomic::zeta(5).unwrap();
        let mut m = ExactMatrix::identity(2, 5);
        *m.at_mut(1, 1) = z;
        assert_eq!(projective_order(&m, 10).unwrap(), OrderVerdict::Finite(5));
    }

    #[test]
    fn non_algebraic_integer_ratio_is_infinite() {
        // diag(1, (3+4i)/5) over Q(zeta_4): (3+4i)/5 has modulus 1 but is not
        // an algebraic integer, hence not a root of unity.
        let i = Cyclotomic::zeta(4).unwrap();
        let num = Cyclotomic::from_integer(4, 3)
            .try_add(&i.try_mul(&Cyclotomic::from_integer(4, 4)).unwrap())
            .unwrap();
        let val = num
            .try_mul(&Cyclotomic::from_rational(4, BigRational::new(1.into(), 5.into())).clone())
            .unwrap();
        let mut m = ExactMatrix::identity(2, 4);
        *m.at_mut(1, 1) = val;
        match projective_order(&m, 8).unwrap() {
            OrderVerdict::Infinite { .. } => {}
            other => panic!("expected infinite, got {:?}", other),
        }
    }

    #[test]
    fn finite_verdict_means_scalar_power_and_no_earlier() {
        let z = Cyclotomic::zeta(8).unwrap();
        let mut m = ExactMatrix::identity(2, 8);
        *m.at_mut(0, 0) = z.pow(2).unwrap();
        *m.at_mut(1, 1) = z.pow(6).unwrap();
        // Eigenvalue ratio is zeta_8^4 = -1, so projective order 2.
        match projective_order(&m, 16).unwrap() {
            OrderVerdict::Finite(k) => {
                assert_eq!(k, 2);
                assert!(m.pow(k).unwrap().is_scalar());
                for j in 1..k {
                    assert!(!m.pow(j).unwrap().is_scalar());
                }
            }
            other => panic!("unexpected verdict {:?}", other),
        }
    }

    #[test]
    fn unknown_when_k_max_too_small() {
        let z = Cyclotomic::zeta(32).unwrap();
        let mut m = ExactMatrix::identity(2, 32);
        *m.at_mut(1, 1) = z;
        match projective_order(&m, 5).unwrap() {
            OrderVerdict::Unknown { .. } => {}
            other => panic!("expected unknown, got {:?}", other),
        }
        assert_eq!(projective_order(&m, 32).unwrap(), OrderVerdict::Finite(32));
    }
}
