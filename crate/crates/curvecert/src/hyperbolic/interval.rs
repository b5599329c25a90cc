//! Outward-rounded interval arithmetic over dyadic big-floats.
//!
//! Every endpoint is an exact dyadic rational `m * 2^e`; operations compute
//! exactly and then round the lower endpoint toward minus infinity and the
//! upper endpoint toward plus infinity at the working precision. A
//! comparison is certified only when the intervals are disjoint, so no
//! uncertified decision can leak out of this module.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact dyadic rational `mantissa * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    m: BigInt,
    e: i64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Down,
    Up,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic {
            m: BigInt::from(v),
            e: 0,
        }
    }

    pub fn new(m: BigInt, e: i64) -> Self {
        Dyadic { m, e }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    fn bits(&self) -> u64 {
        self.m.magnitude().bits()
    }

    /// Round to `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, dir: Dir) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let shifted = &self.m >> shift;
        let m = match dir {
            // BigInt shr is floor division, which is rounding toward -inf.
            Dir::Down => shifted,
            Dir::Up => {
                let back = &shifted << shift;
                if back == self.m {
                    shifted
                } else {
                    shifted + 1
                }
            }
        };
        Dyadic {
            m,
            e: self.e + shift as i64,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let e = self.e.min(other.e);
        let m1 = &self.m << (self.e - e) as u64;
        let m2 = &other.m << (other.e - e) as u64;
        Dyadic { m: m1 + m2, e }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            m: -self.m.clone(),
            e: self.e,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Dyadic {
            m: &self.m * &other.m,
            e: self.e + other.e,
        }
    }

    /// Directed quotient at `prec` bits. `other` must be nonzero.
    pub fn div(&self, other: &Self, prec: u32, dir: Dir) -> Self {
        assert!(!other.m.is_zero(), "dyadic division by zero");
        if self.m.is_zero() {
            return Dyadic::zero();
        }
        // Scale the numerator so the integer quotient has >= prec+2 bits.
        let want = prec as i64 + 2;
        let have = self.bits() as i64 - other.bits() as i64;
        let s = (want - have).max(0) as u64;
        let num = &self.m << s;
        let (q, r) = num_integer::Integer::div_rem(&num, &other.m);
        let exact = r.is_zero();
        let mut q = q;
        if !exact {
            // div_rem truncates toward zero; fix the direction.
            let quotient_negative = (self.m.is_negative()) != (other.m.is_negative());
            match dir {
                Dir::Down => {
                    if quotient_negative {
                        q -= 1;
                    }
                }
                Dir::Up => {
                    if !quotient_negative {
                        q += 1;
                    }
                }
            }
        }
        Dyadic {
            m: q,
            e: self.e - other.e - s as i64,
        }
        .round(prec, dir)
    }

    /// Directed square root at `prec` bits. `self` must be nonnegative.
    pub fn sqrt(&self, prec: u32, dir: Dir) -> Self {
        assert!(!self.m.is_negative(), "sqrt of a negative dyadic");
        if self.m.is_zero() {
            return Dyadic::zero();
        }
        // Normalize to even exponent and enough mantissa bits.
        let mut m = self.m.clone();
        let mut e = self.e;
        let want_bits = 2 * (prec as u64 + 2);
        let cur = m.bits();
        let mut shift = want_bits.saturating_sub(cur);
        if (e - shift as i64) % 2 != 0 {
            shift += 1;
        }
        m <<= shift;
        e -= shift as i64;
        let root = m.sqrt(); // floor square root
        let exact = &root * &root == m;
        let r = match dir {
            Dir::Down => root,
            Dir::Up => {
                if exact {
                    root
                } else {
                    root + 1
                }
            }
        };
        Dyadic { m: r, e: e / 2 }.round(prec, dir)
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        let e = self.e.min(other.e);
        let m1 = &self.m << (self.e - e) as u64;
        let m2 = &other.m << (other.e - e) as u64;
        m1.cmp(&m2)
    }

    pub fn sign(&self) -> Ordering {
        self.m.cmp(&BigInt::zero())
    }

    pub fn to_f64(&self) -> f64 {
        // Round the mantissa to 60 bits first so the conversion stays finite.
        let r = self.round(60, Dir::Down);
        let m = r.m.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(r.e.clamp(-2000, 2000) as i32)
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            m: self.m.abs(),
            e: self.e,
        }
    }
}

/// Closed interval with dyadic endpoints and a working precision.
#[derive(Clone, Debug)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn exact(v: Dyadic, prec: u32) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::exact(Dyadic::from_i64(v), prec)
    }

    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo.cmp_exact(&hi) != Ordering::Greater);
        Interval { lo, hi, prec }
    }

    /// Enclosure of `p / q` for integers.
    pub fn from_ratio(p: i64, q: i64, prec: u32) -> Self {
        let num = Dyadic::from_i64(p);
        let den = Dyadic::from_i64(q);
        Interval {
            lo: num.div(&den, prec, Dir::Down),
            hi: num.div(&den, prec, Dir::Up),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    fn out(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        Interval {
            lo: lo.round(prec, Dir::Down),
            hi: hi.round(prec, Dir::Up),
            prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::out(
            self.lo.add(&other.lo),
            self.hi.add(&other.hi),
            self.prec.min(other.prec),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c.cmp_exact(&lo) == Ordering::Less {
                lo = c.clone();
            }
            if c.cmp_exact(&hi) == Ordering::Greater {
                hi = c.clone();
            }
        }
        Self::out(lo, hi, self.prec.min(other.prec))
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.mul(&Interval::from_i64(k, self.prec))
    }

    pub fn square(&self) -> Self {
        let s = self.mul(self);
        // Squares are nonnegative even when the interval straddles zero.
        if s.lo.sign() == Ordering::Less && self.contains_zero() {
            Self::out(Dyadic::zero(), s.hi, s.prec)
        } else {
            s
        }
    }

    /// Division; the divisor interval must exclude zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let prec = self.prec.min(other.prec);
        let cands = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for (a, b) in cands {
            let down = a.div(b, prec + 2, Dir::Down);
            let up = a.div(b, prec + 2, Dir::Up);
            lo = Some(match lo {
                None => down.clone(),
                Some(cur) => {
                    if down.cmp_exact(&cur) == Ordering::Less {
                        down.clone()
                    } else {
                        cur
                    }
                }
            });
            hi = Some(match hi {
                None => up.clone(),
                Some(cur) => {
                    if up.cmp_exact(&cur) == Ordering::Greater {
                        up.clone()
                    } else {
                        cur
                    }
                }
            });
        }
        Some(Self::out(lo.unwrap(), hi.unwrap(), prec))
    }

    /// Square root; the interval must be certified nonnegative (a lower
    /// endpoint within rounding slack of zero is clamped).
    pub fn sqrt(&self) -> Option<Self> {
        if self.hi.sign() == Ordering::Less {
            return None;
        }
        let lo = if self.lo.sign() == Ordering::Less {
            Dyadic::zero()
        } else {
            self.lo.sqrt(self.prec, Dir::Down)
        };
        let hi = self.hi.sqrt(self.prec, Dir::Up);
        Some(Interval {
            lo,
            hi,
            prec: self.prec,
        })
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.sign() != Ordering::Greater && self.hi.sign() != Ordering::Less
    }

    /// Certified sign: `Some(-1)` or `Some(1)` when the interval excludes
    /// zero, `Some(0)` when it is exactly zero, `None` otherwise.
    pub fn sign(&self) -> Option<i32> {
        if self.hi.sign() == Ordering::Less {
            Some(-1)
        } else if self.lo.sign() == Ordering::Greater {
            Some(1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    /// Certified comparison against another interval.
    pub fn cmp_certified(&self, other: &Self) -> Option<Ordering> {
        if self.hi.cmp_exact(&other.lo) == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lo.cmp_exact(&other.hi) == Ordering::Greater {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn contains_i64(&self, v: i64) -> bool {
        let d = Dyadic::from_i64(v);
        self.lo.cmp_exact(&d) != Ordering::Greater && self.hi.cmp_exact(&d) != Ordering::Less
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// True when the width is below `2^(-bits)`.
    pub fn width_below(&self, bits: u32) -> bool {
        let w = self.width();
        if w.is_zero() {
            return true;
        }
        let threshold = Dyadic::new(BigInt::from(1), -(bits as i64));
        w.cmp_exact(&threshold) == Ordering::Less
    }

    pub fn union(&self, other: &Self) -> Self {
        let lo = if self.lo.cmp_exact(&other.lo) == Ordering::Less {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi.cmp_exact(&other.hi) == Ordering::Greater {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        Interval {
            lo,
            hi,
            prec: self.prec.min(other.prec),
        }
    }

    /// Widen by `2^(-bits)` in both directions (used for explicit remainder
    /// terms of series).
    pub fn pad(&self, bits: u32) -> Self {
        let eps = Dyadic::new(BigInt::from(1), -(bits as i64));
        Interval {
            lo: self.lo.sub(&eps),
            hi: self.hi.add(&eps),
            prec: self.prec,
        }
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Enclosure of pi by the Machin formula
/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(prec: u32) -> Interval {
    let work = prec + 16;
    let a5 = atan_inv_int(5, work);
    let a239 = atan_inv_int(239, work);
    a5.scale_i64(16).sub(&a239.scale_i64(4))
}

/// Enclosure of `atan(1/n)` for integer `n >= 2` by the alternating series.
fn atan_inv_int(n: i64, prec: u32) -> Interval {
    let mut sum = Interval::zero(prec);
    let nn = n * n;
    let mut denom_pow = Dyadic::from_i64(n); // n^(2k+1)
    let mut k = 0u32;
    loop {
        let term_abs = Interval::from_endpoints(
            Dyadic::from_i64(1).div(
                &denom_pow.mul(&Dyadic::from_i64((2 * k + 1) as i64)),
                prec,
                Dir::Down,
            ),
            Dyadic::from_i64(1).div(
                &denom_pow.mul(&Dyadic::from_i64((2 * k + 1) as i64)),
                prec,
                Dir::Up,
            ),
            prec,
        );
        if k % 2 == 0 {
            sum = sum.add(&term_abs);
        } else {
            sum = sum.sub(&term_abs);
        }
        // Alternating series: the truncation error is below the next term.
        if term_abs.hi().cmp_exact(&Dyadic::new(BigInt::from(1), -(prec as i64 + 4)))
            == Ordering::Less
        {
            let tail = Interval::from_endpoints(
                Dyadic::new(BigInt::from(-1), -(prec as i64 + 4)),
                Dyadic::new(BigInt::from(1), -(prec as i64 + 4)),
                prec,
            );
            return sum.add(&tail);
        }
        denom_pow = denom_pow.mul(&Dyadic::from_i64(nn));
        k += 1;
    }
}

/// Enclosures of `sin x` and `cos x` by Taylor series with an explicit
/// remainder; intended for `|x| <= 2`.
pub fn sin_cos(x: &Interval, prec: u32) -> (Interval, Interval) {
    let mut sin = x.clone();
    let mut cos = Interval::one(prec);
    // term_s = x^(2k+1)/(2k+1)!, term_c = x^(2k)/(2k)!
    let x2 = x.square();
    let mut term_s = x.clone();
    let mut term_c = Interval::one(prec);
    let mut k = 1i64;
    loop {
        term_c = term_c
            .mul(&x2)
            .div(&Interval::from_i64((2 * k - 1) * (2 * k), prec))
            .unwrap();
        term_s = term_s
            .mul(&x2)
            .div(&Interval::from_i64((2 * k) * (2 * k + 1), prec))
            .unwrap();
        if k % 2 == 1 {
            cos = cos.sub(&term_c);
            sin = sin.sub(&term_s);
        } else {
            cos = cos.add(&term_c);
            sin = sin.add(&term_s);
        }
        let small = Dyadic::new(BigInt::from(1), -(prec as i64 + 4));
        if term_c.hi().abs().cmp_exact(&small) == Ordering::Less
            && term_s.hi().abs().cmp_exact(&small) == Ordering::Less
        {
            // |x| <= 2 makes both series alternating-dominated from the start,
            // so the dropped tails are below the last added term.
            return (sin.pad(prec + 2), cos.pad(prec + 2));
        }
        k += 1;
    }
}

/// Enclosure of `ln x` for a certified-positive interval.
///
/// Reduces to `m * 2^k` with `m` in `[1, 2)` and applies the atanh series
/// to `m`, so convergence never degrades for large arguments.
pub fn ln(x: &Interval, prec: u32) -> Option<Interval> {
    if x.lo().sign() != Ordering::Greater {
        return None;
    }
    let lo = ln_dyadic(x.lo(), prec, Dir::Down);
    let hi = ln_dyadic(x.hi(), prec, Dir::Up);
    Some(Interval::from_endpoints(lo, hi, prec))
}

fn ln_dyadic(v: &Dyadic, prec: u32, dir: Dir) -> Dyadic {
    let work = prec + 16;
    // v = m * 2^k with m in [1, 2).
    let bits = v.m_bits() as i64;
    let k = bits + v.exp() - 1;
    let m = Dyadic::new(v.mantissa().clone(), -(bits - 1));
    // ln m via atanh: u = (m-1)/(m+1) in [0, 1/3).
    let one = Dyadic::from_i64(1);
    let u_lo = m.sub(&one).div(&m.add(&one), work, Dir::Down);
    let u_hi = m.sub(&one).div(&m.add(&one), work, Dir::Up);
    let u = Interval::from_endpoints(u_lo, u_hi, work);
    let ln_m = atanh_small(&u, work).scale_i64(2);
    let ln2 = ln2_interval(work);
    let total = ln_m.add(&ln2.scale_i64(k));
    match dir {
        Dir::Down => total.lo().round(prec, Dir::Down),
        Dir::Up => total.hi().round(prec, Dir::Up),
    }
}

/// atanh on `[0, 1/2]` by series with a geometric tail bound.
fn atanh_small(u: &Interval, prec: u32) -> Interval {
    let u2 = u.square();
    let mut sum = u.clone();
    let mut pow = u.clone();
    let mut k = 1i64;
    loop {
        pow = pow.mul(&u2);
        let term = pow.div(&Interval::from_i64(2 * k + 1, prec)).unwrap();
        sum = sum.add(&term);
        let small = Dyadic::new(BigInt::from(1), -(prec as i64 + 6));
        if term.hi().abs().cmp_exact(&small) == Ordering::Less {
            // Tail below term * u^2/(1-u^2) <= term for u <= 1/2; pad by the
            // same magnitude.
            return sum.pad(prec + 4);
        }
        k += 1;
    }
}

fn ln2_interval(prec: u32) -> Interval {
    // ln 2 = 2 atanh(1/3).
    let third = Interval::from_ratio(1, 3, prec);
    atanh_small(&third, prec).scale_i64(2)
}

/// Enclosure of `arccosh x` for `x > 1`: `ln(x + sqrt(x^2 - 1))`.
pub fn arccosh(x: &Interval, prec: u32) -> Option<Interval> {
    let one = Interval::one(prec);
    let inside = x.square().sub(&one);
    if inside.lo().sign() == Ordering::Less {
        return None;
    }
    let s = inside.sqrt()?;
    ln(&x.add(&s), prec)
}

impl Dyadic {
    fn m_bits(&self) -> u64 {
        self.m.magnitude().bits()
    }
    fn exp(&self) -> i64 {
        self.e
    }
    fn mantissa(&self) -> &BigInt {
        &self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_contains(iv: &Interval, v: f64) {
        // Slack of a few ulps absorbs the to-nearest rounding of the f64
        // conversion itself.
        let eps = 1e-12 * (1.0 + v.abs());
        let (lo, hi) = iv.to_f64_pair();
        assert!(
            lo - eps <= v && v <= hi + eps,
            "interval [{}, {}] does not contain {}",
            lo,
            hi,
            v
        );
    }

    #[test]
    fn pi_enclosure() {
        for prec in [32u32, 64, 128, 256] {
            let p = pi(prec);
            assert_contains(&p, std::f64::consts::PI);
            assert!(p.width_below(prec - 8), "pi width at prec {}", prec);
        }
    }

    #[test]
    fn sqrt_two() {
        let two = Interval::from_i64(2, 128);
        let r = two.sqrt().unwrap();
        assert_contains(&r, std::f64::consts::SQRT_2);
        let back = r.square();
        assert!(back.contains_i64(2));
        assert!(back.width_below(100));
    }

    #[test]
    fn division_directed() {
        let a = Interval::from_i64(1, 64);
        let b = Interval::from_i64(3, 64);
        let q = a.div(&b).unwrap();
        assert_contains(&q, 1.0 / 3.0);
        assert!(q.width_below(56));
        assert!(a.div(&Interval::from_endpoints(
            Dyadic::from_i64(-1),
            Dyadic::from_i64(1),
            64
        ))
        .is_none());
    }

    #[test]
    fn trig_against_f64() {
        let prec = 96;
        for (p, q) in [(1i64, 8i64), (1, 4), (3, 8), (1, 3)] {
            let x = pi(prec).mul(&Interval::from_ratio(p, q, prec));
            let (s, c) = sin_cos(&x, prec);
            let xf = std::f64::consts::PI * (p as f64) / (q as f64);
            assert_contains(&s, xf.sin());
            assert_contains(&c, xf.cos());
            assert!(s.width_below(64));
        }
    }

    #[test]
    fn ln_and_arccosh() {
        let prec = 96;
        for v in [2i64, 3, 10, 1000] {
            let x = Interval::from_i64(v, prec);
            let l = ln(&x, prec).unwrap();
            assert_contains(&l, (v as f64).ln());
            assert!(l.width_below(64), "ln({}) width", v);
        }
        let x = Interval::from_i64(3, prec);
        let ac = arccosh(&x, prec).unwrap();
        assert_contains(&ac, 3f64.acosh());
    }

    #[test]
    fn certified_sign_refuses_straddles() {
        let iv = Interval::from_endpoints(Dyadic::from_i64(-1), Dyadic::from_i64(2), 32);
        assert_eq!(iv.sign(), None);
        assert!(iv.contains_zero());
        let pos = Interval::from_ratio(1, 7, 32);
        assert_eq!(pos.sign(), Some(1));
    }
}
