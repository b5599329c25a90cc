//! Square matrices over a cyclotomic field.

use serde::{Deserialize, Serialize};

use super::cyclotomic::CycPoly;
use super::poly::Ring;
use super::{Cyclotomic, ExactError};

/// A `dim x dim` matrix with entries in `Q(zeta_order)`, row-major.
///
/// All entries share one field order; mixed-order inputs are promoted at
/// construction.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactMatrix {
    dim: usize,
    order: u32,
    entries: Vec<Cyclotomic>,
}

impl ExactMatrix {
    pub fn new(dim: usize, order: u32, entries: Vec<Cyclotomic>) -> Result<Self, ExactError> {
        if entries.len() != dim * dim {
            return Err(ExactError::DimensionMismatch(entries.len(), dim * dim));
        }
        let entries = entries
            .into_iter()
            .map(|e| e.promote(order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix {
            dim,
            order,
            entries,
        })
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        let mut m = Self::zeros(dim, order);
        for i in 0..dim {
            *m.at_mut(i, i) = Cyclotomic::one(order);
        }
        m
    }

    pub fn zeros(dim: usize, order: u32) -> Self {
        ExactMatrix {
            dim,
            order,
            entries: vec![Cyclotomic::zero(order); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn at(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.dim + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Cyclotomic {
        &mut self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.dim != other.dim {
            return Err(ExactError::DimensionMismatch(self.dim, other.dim));
        }
        let order = lcm_order(self.order, other.order)?;
        let a = self.promote(order)?;
        let b = other.promote(order)?;
        let d = self.dim;
        let mut out = Self::zeros(d, order);
        for i in 0..d {
            for k in 0..d {
                let aik = a.at(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let bkj = b.at(k, j);
                    if bkj.is_zero() {
                        continue;
                    }
                    let t = aik.try_mul(bkj)?;
                    let cur = out.at(i, j).try_add(&t)?;
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        if self.dim != other.dim {
            return Err(ExactError::DimensionMismatch(self.dim, other.dim));
        }
        let order = lcm_order(self.order, other.order)?;
        let a = self.promote(order)?;
        let b = other.promote(order)?;
        let entries = a
            .entries
            .iter()
            .zip(b.entries.iter())
            .map(|(x, y)| x.try_add(y))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix {
            dim: self.dim,
            order,
            entries,
        })
    }

    pub fn scale(&self, c: &Cyclotomic) -> Result<Self, ExactError> {
        let order = lcm_order(self.order, c.order())?;
        let a = self.promote(order)?;
        let c = c.promote(order)?;
        let entries = a
            .entries
            .iter()
            .map(|x| x.try_mul(&c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix {
            dim: self.dim,
            order,
            entries,
        })
    }

    pub fn promote(&self, order: u32) -> Result<Self, ExactError> {
        if order == self.order {
            return Ok(self.clone());
        }
        let entries = self
            .entries
            .iter()
            .map(|e| e.promote(order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix {
            dim: self.dim,
            order,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d, self.order);
        for i in 0..d {
            for j in 0..d {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Conjugate transpose under `zeta -> zeta^(-1)`.
    pub fn conj_transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d, self.order);
        for i in 0..d {
            for j in 0..d {
                *out.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut t = Cyclotomic::zero(self.order);
        for i in 0..self.dim {
            t = t.try_add(self.at(i, i)).expect("trace overflow");
        }
        t
    }

    pub fn pow(&self, e: u64) -> Result<Self, ExactError> {
        let mut result = Self::identity(self.dim, self.order);
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Gauss-Jordan inverse. Fails on singular input.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(d, self.order);
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !a.at(r, col).is_zero())
                .ok_or(ExactError::SingularMatrix)?;
            if pivot != col {
                for j in 0..d {
                    let tmp = a.at(pivot, j).clone();
                    *a.at_mut(pivot, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot, j).clone();
                    *inv.at_mut(pivot, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let pinv = a.at(col, col).inv()?;
            for j in 0..d {
                *a.at_mut(col, j) = a.at(col, j).try_mul(&pinv)?;
                *inv.at_mut(col, j) = inv.at(col, j).try_mul(&pinv)?;
            }
            for r in 0..d {
                if r != col && !a.at(r, col).is_zero() {
                    let f = a.at(r, col).clone();
                    for j in 0..d {
                        let t = f.try_mul(a.at(col, j))?;
                        *a.at_mut(r, j) = a.at(r, j).try_sub(&t)?;
                        let t = f.try_mul(inv.at(col, j))?;
                        *inv.at_mut(r, j) = inv.at(r, j).try_sub(&t)?;
                    }
                }
            }
        }
        Ok(inv)
    }

    /// If the matrix is `c * I`, return `c`.
    pub fn as_scalar(&self) -> Option<Cyclotomic> {
        let c = self.at(0, 0).clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i == j {
                    if *self.at(i, j) != c {
                        return None;
                    }
                } else if !self.at(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_scalar(&self) -> bool {
        self.as_scalar().is_some()
    }

    /// Projective equality: `self = c * other` for some scalar `c`.
    pub fn proj_eq(&self, other: &Self) -> bool {
        if self.dim != other.dim {
            return false;
        }
        match other.inverse() {
            Ok(inv) => match self.mul(&inv) {
                Ok(q) => q.is_scalar(),
                Err(_) => false,
            },
            Err(_) => false,
        }
    }

    /// The conjugation operator `X -> M X M^(-1)` as a `d^2 x d^2` matrix
    /// acting on row-major vectorized `X`.
    pub fn ad_matrix(&self) -> Result<Self, ExactError> {
        let inv = self.inverse()?;
        let d = self.dim;
        let mut out = Self::zeros(d * d, self.order);
        for i in 0..d {
            for k in 0..d {
                let mik = self.at(i, k);
                if mik.is_zero() {
                    continue;
                }
                for l in 0..d {
                    for j in 0..d {
                        let w = inv.at(l, j);
                        if w.is_zero() {
                            continue;
                        }
                        *out.at_mut(i * d + j, k * d + l) = mik.try_mul(w)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Monic characteristic polynomial via Hessenberg reduction.
    pub fn char_poly(&self) -> CycPoly {
        let d = self.dim;
        let order = self.order;
        if d == 0 {
            return CycPoly::one();
        }
        // Reduce to upper Hessenberg form by a similarity transform.
        let mut h = self.clone();
        for j in 0..d.saturating_sub(2) {
            let pivot = ((j + 1)..d).find(|&r| !h.at(r, j).is_zero());
            let pivot = match pivot {
                Some(p) => p,
                None => continue,
            };
            if pivot != j + 1 {
                for c in 0..d {
                    let tmp = h.at(pivot, c).clone();
                    *h.at_mut(pivot, c) = h.at(j + 1, c).clone();
                    *h.at_mut(j + 1, c) = tmp;
                }
                for r in 0..d {
                    let tmp = h.at(r, pivot).clone();
                    *h.at_mut(r, pivot) = h.at(r, j + 1).clone();
                    *h.at_mut(r, j + 1) = tmp;
                }
            }
            let pinv = h.at(j + 1, j).inv().expect("nonzero pivot");
            for r in (j + 2)..d {
                if h.at(r, j).is_zero() {
                    continue;
                }
                let f = h.at(r, j).try_mul(&pinv).expect("order overflow");
                for c in 0..d {
                    let t = f.try_mul(h.at(j + 1, c)).expect("order overflow");
                    *h.at_mut(r, c) = h.at(r, c).try_sub(&t).expect("order overflow");
                }
                for rr in 0..d {
                    let t = h.at(rr, r).try_mul(&f).expect("order overflow");
                    *h.at_mut(rr, j + 1) = h.at(rr, j + 1).try_add(&t).expect("order overflow");
                }
            }
        }
        // Characteristic polynomials of leading principal submatrices.
        let one = Cyclotomic::one(order);
        let mut ps: Vec<CycPoly> = vec![CycPoly::one()];
        for k in 1..=d {
            // p_k = (x - h[k-1][k-1]) p_{k-1}
            //       - sum_{i<k-1} h[i][k-1] (prod_{m=i+1}^{k-1} h[m][m-1]) p_i
            let xk = CycPoly::from_coeffs(vec![h.at(k - 1, k - 1).neg(), one.clone()]);
            let mut p = ps[k - 1].mul(&xk);
            let mut beta = one.clone();
            for i in (0..k.saturating_sub(1)).rev() {
                beta = beta.mul(h.at(i + 1, i));
                if h.at(i, k - 1).is_zero() || beta.is_zero() {
                    continue;
                }
                let coeff = h.at(i, k - 1).mul(&beta);
                p = p.sub(&ps[i].scale(&coeff));
            }
            ps.push(p);
        }
        ps.pop().unwrap()
    }
}

fn lcm_order(a: u32, b: u32) -> Result<u32, ExactError> {
    if a == b {
        return Ok(a);
    }
    let l = num_integer::lcm(a as u64, b as u64);
    if l > super::MAX_FIELD_ORDER as u64 {
        return Err(ExactError::OrderOverflow(l));
    }
    Ok(l as u32)
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ExactMatrix[{}x{} over Q(zeta_{})]", self.dim, self.dim, self.order)?;
        for i in 0..self.dim {
            write!(f, "  [")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Ring;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::from_rational(1, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn char_poly_of_identity() {
        let m = ExactMatrix::identity(2, 1);
        let p = m.char_poly();
        // (x - 1)^2 = x^2 - 2x + 1
        assert_eq!(p.coeff(0), rat(1, 1));
        assert_eq!(p.coeff(1), rat(-2, 1));
        assert_eq!(p.coeff(2), rat(1, 1));
    }

    #[test]
    fn char_poly_of_companion_matrix() {
        // Companion of x^2 + x + 1.
        let m = ExactMatrix::new(
            2,
            1,
            vec![rat(0, 1), rat(-1, 1), rat(1, 1), rat(-1, 1)],
        )
        .unwrap();
        let p = m.char_poly();
        assert_eq!(p.coeff(0), rat(1, 1));
        assert_eq!(p.coeff(1), rat(1, 1));
        assert_eq!(p.coeff(2), rat(1, 1));
    }

    fn eval_poly_at_matrix(p: &CycPoly, m: &ExactMatrix) -> ExactMatrix {
        let mut acc = ExactMatrix::zeros(m.dim(), m.order());
        for k in (0..p.coeffs().len()).rev() {
            acc = acc.mul(m).unwrap();
            let c = p.coeff(k).promote(m.order()).unwrap();
            let mut diag = ExactMatrix::identity(m.dim(), m.order());
            diag = diag.scale(&c).unwrap();
            acc = acc.add(&diag).unwrap();
        }
        acc
    }

    #[test]
    fn cayley_hamilton_over_cyclotomic_field() {
        // A fixed "random-looking" 3x3 over Q(zeta_5).
        let z = Cyclotomic::zeta(5).unwrap();
        let e = |a: i64, b: i64| -> Cyclotomic {
            Cyclotomic::from_integer(5, a)
                .try_add(&z.pow(b).unwrap())
                .unwrap()
        };
        let m = ExactMatrix::new(
            3,
            5,
            vec![
                e(1, 1),
                e(0, 2),
                e(-1, 3),
                e(2, 4),
                e(1, 2),
                e(0, 1),
                e(-2, 2),
                e(1, 3),
                e(3, 1),
            ],
        )
        .unwrap();
        let p = m.char_poly();
        assert_eq!(p.degree(), Some(3));
        assert!(p.leading().unwrap().is_one());
        let z3 = eval_poly_at_matrix(&p, &m);
        assert!(z3.as_scalar().map_or(false, |c| c.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = Cyclotomic::zeta(8).unwrap();
        let m = ExactMatrix::new(
            2,
            8,
            vec![
                Cyclotomic::one(8),
                z.clone(),
                z.pow(3).unwrap(),
                Cyclotomic::from_integer(8, 2),
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().as_scalar().map_or(false, |c| c.is_one()));
    }

    #[test]
    fn ad_matrix_represents_conjugation() {
        let z = Cyclotomic::zeta(5).unwrap();
        let m = ExactMatrix::new(
            2,
            5,
            vec![
                Cyclotomic::one(5),
                z.clone(),
                Cyclotomic::zero(5),
                Cyclotomic::from_integer(5, 2),
            ],
        )
        .unwrap();
        let x = ExactMatrix::new(
            2,
            5,
            vec![
                z.pow(2).unwrap(),
                Cyclotomic::from_integer(5, 3),
                Cyclotomic::one(5),
                z.clone(),
            ],
        )
        .unwrap();
        let ad = m.ad_matrix().unwrap();
        // Apply ad to vec(X) and compare with M X M^-1.
        let direct = m
            .mul(&x)
            .unwrap()
            .mul(&m.inverse().unwrap())
            .unwrap();
        let d = 2;
        let mut vec_result = vec![Cyclotomic::zero(5); d * d];
        for r in 0..d * d {
            for c in 0..d * d {
                let t = ad
                    .at(r, c)
                    .try_mul(&x.entries()[c])
                    .unwrap();
                vec_result[r] = vec_result[r].try_add(&t).unwrap();
            }
        }
        for i in 0..d {
            for j in 0..d {
                assert_eq!(vec_result[i * d + j], *direct.at(i, j));
            }
        }
    }

    #[test]
    fn serde_roundtrip() {
        let z = Cyclotomic::zeta(10).unwrap();
        let m = ExactMatrix::new(
            2,
            10,
            vec![
                Cyclotomic::one(10),
                z.clone(),
                z.pow(7).unwrap(),
                z.pow(3).unwrap().neg(),
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        let back: ExactMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
