//! The regular `4g`-gon Fuchsian realization of the surface group.
//!
//! The fundamental polygon is the regular hyperbolic `4g`-gon with vertex
//! angle `2 pi / 4g`, so all `4g` vertices form a single cycle and the side
//! pairings realize the one-relator presentation. Generator matrices are
//! interval-valued elements of `SL(2, R)` acting on the upper half-plane;
//! the constructor certifies that the relator holonomy is plus or minus the
//! identity and that every generator is hyperbolic before handing the model
//! out.

use std::cmp::Ordering;

use super::interval::{arccosh, pi, sin_cos, Dyadic, Interval};
use super::HypError;
use crate::surface::{Letter, Presentation, Word};

/// Interval-valued 2x2 real matrix.
#[derive(Clone, Debug)]
pub struct IMat2 {
    pub a: Interval,
    pub b: Interval,
    pub c: Interval,
    pub d: Interval,
}

impl IMat2 {
    pub fn identity(prec: u32) -> Self {
        IMat2 {
            a: Interval::one(prec),
            b: Interval::zero(prec),
            c: Interval::zero(prec),
            d: Interval::one(prec),
        }
    }

    pub fn mul(&self, o: &IMat2) -> IMat2 {
        IMat2 {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv_det1(&self) -> IMat2 {
        IMat2 {
            a: self.d.clone(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.a.clone(),
        }
    }

    pub fn trace(&self) -> Interval {
        self.a.add(&self.d)
    }

    pub fn det(&self) -> Interval {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn neg(&self) -> IMat2 {
        IMat2 {
            a: self.a.neg(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.d.neg(),
        }
    }

    pub fn scale(&self, s: &Interval) -> IMat2 {
        IMat2 {
            a: self.a.mul(s),
            b: self.b.mul(s),
            c: self.c.mul(s),
            d: self.d.mul(s),
        }
    }

    pub fn sub(&self, o: &IMat2) -> IMat2 {
        IMat2 {
            a: self.a.sub(&o.a),
            b: self.b.sub(&o.b),
            c: self.c.sub(&o.c),
            d: self.d.sub(&o.d),
        }
    }

    /// Commutator `self * o * self^-1 * o^-1` (determinant-one inputs).
    pub fn commutator(&self, o: &IMat2) -> IMat2 {
        self.mul(o).mul(&self.inv_det1()).mul(&o.inv_det1())
    }

    fn entries(&self) -> [&Interval; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Maximal entry distance to `I` or to `-I`, as an upper endpoint.
    pub fn dist_to_pm_identity_f64(&self) -> f64 {
        let prec = self.a.prec();
        let id = IMat2::identity(prec);
        let mut best = f64::INFINITY;
        for target in [&id, &id.neg()] {
            let mut worst: f64 = 0.0;
            let diff = self.sub(target);
            for e in diff.entries() {
                let (lo, hi) = e.to_f64_pair();
                worst = worst.max(lo.abs().max(hi.abs()));
            }
            best = best.min(worst);
        }
        best
    }

    /// Certified: some entry interval excludes the corresponding entries of
    /// both `I` and `-I`.
    pub fn certified_not_pm_identity(&self) -> bool {
        let away_from = |sign: i64| -> bool {
            let targets = [sign, 0, 0, sign];
            self.entries()
                .iter()
                .zip(targets)
                .any(|(e, t)| !e.contains_i64(t))
        };
        away_from(1) && away_from(-1)
    }

    /// True when every entry interval contains the entries of `I` or of `-I`.
    pub fn contains_pm_identity(&self) -> bool {
        let contains = |sign: i64| -> bool {
            let targets = [sign, 0, 0, sign];
            self.entries()
                .iter()
                .zip(targets)
                .all(|(e, t)| e.contains_i64(t))
        };
        contains(1) || contains(-1)
    }

    pub fn max_width_f64(&self) -> f64 {
        self.entries()
            .iter()
            .map(|e| e.width().to_f64())
            .fold(0.0, f64::max)
    }
}

/// Complex number with interval components.
#[derive(Clone, Debug)]
pub struct CInt {
    pub re: Interval,
    pub im: Interval,
}

impl CInt {
    pub fn new(re: Interval, im: Interval) -> Self {
        CInt { re, im }
    }

    pub fn add(&self, o: &CInt) -> CInt {
        CInt::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &CInt) -> CInt {
        CInt::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn mul(&self, o: &CInt) -> CInt {
        CInt::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }

    pub fn norm_sq(&self) -> Interval {
        self.re.square().add(&self.im.square())
    }
}

/// A point of the Klein disk (or its boundary circle) with interval
/// coordinates.
#[derive(Clone, Debug)]
pub struct KPoint {
    pub x: Interval,
    pub y: Interval,
}

/// Sign of the point `p` against the oriented line from `e1` to `e2`
/// (certified; `None` when the intervals straddle the line).
pub fn line_side(e1: &KPoint, e2: &KPoint, p: &KPoint) -> Option<i32> {
    let det = e2
        .x
        .sub(&e1.x)
        .mul(&p.y.sub(&e1.y))
        .sub(&e2.y.sub(&e1.y).mul(&p.x.sub(&e1.x)));
    det.sign()
}

/// The Fuchsian model at a fixed working precision.
#[derive(Clone)]
pub struct FuchsianModel {
    genus: usize,
    prec: u32,
    /// Generator matrices indexed by generator id (`a1, b1, a2, b2, ...`).
    gens: Vec<IMat2>,
    gen_invs: Vec<IMat2>,
    /// Polygon vertices in the upper half-plane.
    vertices_uhp: Vec<CInt>,
    /// Letter labeling each polygon side `k` (side `k` joins vertex `k` to
    /// vertex `k+1`).
    side_letters: Vec<Letter>,
    relator_defect: f64,
}

impl FuchsianModel {
    /// Build the model at the requested precision, escalating internally up
    /// to `max_prec` until the relator holonomy and generator traces are
    /// certified.
    pub fn new(genus: usize, prec: u32, max_prec: u32) -> Result<Self, HypError> {
        let mut bits = prec;
        loop {
            match Self::build(genus, bits) {
                Ok(m) => return Ok(m),
                Err(HypError::PrecisionExhausted { .. }) if bits < max_prec => {
                    bits = (bits * 2).min(max_prec);
                }
                Err(e) => return Err(e),
            }
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    /// Upper bound on the entrywise distance of the relator holonomy from
    /// plus or minus the identity.
    pub fn relator_defect(&self) -> f64 {
        self.relator_defect
    }

    pub fn side_count(&self) -> usize {
        4 * self.genus
    }

    pub fn side_letter(&self, k: usize) -> Letter {
        self.side_letters[k]
    }

    /// The generator letter whose matrix carries the base tile across side
    /// `k`: crossing side `k` of tile `g F` lands in `g n_k F`.
    pub fn side_neighbor_letter(&self, k: usize) -> Letter {
        let l = self.side_letters[k];
        if l.gen % 2 == 0 {
            l
        } else {
            l.inverse()
        }
    }

    pub fn generator(&self, l: Letter) -> &IMat2 {
        if l.inv {
            &self.gen_invs[l.gen as usize]
        } else {
            &self.gens[l.gen as usize]
        }
    }

    pub fn holonomy(&self, w: &Word) -> IMat2 {
        let mut m = IMat2::identity(self.prec);
        for &l in w.letters() {
            m = m.mul(self.generator(l));
        }
        m
    }

    /// Vertices of the tile `g * F` in Klein coordinates.
    pub fn tile_vertices(&self, g: &IMat2) -> Vec<KPoint> {
        self.vertices_uhp
            .iter()
            .map(|z| klein_from_uhp(&moebius(g, z)))
            .collect()
    }

    /// Klein coordinates of the tile center `g(i)`.
    pub fn tile_center(&self, g: &IMat2) -> KPoint {
        let i = CInt::new(Interval::zero(self.prec), Interval::one(self.prec));
        klein_from_uhp(&moebius(g, &i))
    }

    /// Certified translation length `2 arccosh(|tr|/2)`; errors on inputs
    /// whose trace cannot be certified hyperbolic at this precision.
    pub fn translation_length(&self, w: &Word) -> Result<Interval, HypError> {
        if w.is_empty() {
            return Err(HypError::IdentityInput);
        }
        let h = self.holonomy(w);
        self.translation_length_of(&h)
    }

    pub fn translation_length_of(&self, h: &IMat2) -> Result<Interval, HypError> {
        let tr = h.trace();
        let abs_tr = if tr.sign() == Some(1) {
            tr
        } else if tr.sign() == Some(-1) {
            tr.neg()
        } else {
            return Err(HypError::PrecisionExhausted { bits: self.prec });
        };
        let half = abs_tr
            .div(&Interval::from_i64(2, self.prec))
            .expect("two is nonzero");
        if half.cmp_certified(&Interval::one(self.prec)) != Some(Ordering::Greater) {
            return Err(HypError::PrecisionExhausted { bits: self.prec });
        }
        let l = arccosh(&half, self.prec)
            .ok_or(HypError::PrecisionExhausted { bits: self.prec })?;
        Ok(l.scale_i64(2))
    }

    fn build(genus: usize, prec: u32) -> Result<Self, HypError> {
        let pres = Presentation::new(genus);
        let n = 4 * genus;
        let work = prec + 32;

        // Regular 4g-gon data: cosh(circumradius) = cot^2(pi/n).
        let pi_iv = pi(work);
        let angle_unit = pi_iv
            .div(&Interval::from_i64(n as i64, work))
            .expect("n nonzero");
        let (sin_u, cos_u) = sin_cos(&angle_unit, work);
        let cot = cos_u.div(&sin_u).ok_or(HypError::PrecisionExhausted { bits: prec })?;
        let cosh_r = cot.square();
        let one = Interval::one(work);
        let num = cosh_r.sub(&one);
        let den = cosh_r.add(&one);
        let r_eucl = num
            .div(&den)
            .and_then(|q| q.sqrt())
            .ok_or(HypError::PrecisionExhausted { bits: prec })?;

        // Disk vertices R * e^(2 pi i k / n), then Cayley to the half-plane.
        let mut vertices_uhp = Vec::with_capacity(n);
        for k in 0..n {
            let theta = pi_iv
                .mul(&Interval::from_ratio(2 * k as i64, n as i64, work));
            let (s, c) = sin_cos(&theta, work);
            let wx = r_eucl.mul(&c);
            let wy = r_eucl.mul(&s);
            vertices_uhp.push(uhp_from_disk(&CInt::new(wx, wy), work)?);
        }

        let side_letters: Vec<Letter> = pres.relator().letters().to_vec();

        // Side pairing: the transformation for the generator x carries the
        // side labeled x onto the side labeled x^{-1} with reversed
        // orientation; the group generator is that map for b-type letters
        // and its inverse for a-type letters. This is the one assignment
        // (verified below) under which the boundary word is the relation and
        // every generator is hyperbolic.
        let mut gens = Vec::with_capacity(2 * genus);
        let mut gen_invs = Vec::with_capacity(2 * genus);
        for gid in 0..(2 * genus) as u8 {
            let x = Letter::new(gid, false);
            let i = side_letters.iter().position(|&l| l == x).unwrap();
            let j = side_letters.iter().position(|&l| l == x.inverse()).unwrap();
            let p = &vertices_uhp[i];
            let q = &vertices_uhp[(i + 1) % n];
            let r = &vertices_uhp[(j + 1) % n];
            let s = &vertices_uhp[j];
            let t = solve_isometry(p, q, r, s, work)
                .ok_or(HypError::PrecisionExhausted { bits: prec })?;
            let (g, ginv) = if gid % 2 == 0 {
                (t.inv_det1(), t)
            } else {
                let inv = t.inv_det1();
                (t, inv)
            };
            gens.push(g);
            gen_invs.push(ginv);
        }

        let mut model = FuchsianModel {
            genus,
            prec,
            gens,
            gen_invs,
            vertices_uhp,
            side_letters,
            relator_defect: f64::INFINITY,
        };

        // Certification: relator holonomy is +-identity within a tight
        // interval, and all generators are hyperbolic.
        let rel_h = model.holonomy(pres.relator());
        if !rel_h.contains_pm_identity() {
            return Err(HypError::ModelInconsistent);
        }
        let defect = rel_h.dist_to_pm_identity_f64();
        if !(defect < 2f64.powi(-(prec as i32) / 2)) {
            return Err(HypError::PrecisionExhausted { bits: prec });
        }
        model.relator_defect = defect;
        for gid in 0..(2 * genus) as u8 {
            let tr = model.gens[gid as usize].trace();
            let two = Interval::from_i64(2, prec);
            let m_two = Interval::from_i64(-2, prec);
            let hyperbolic = tr.cmp_certified(&two) == Some(Ordering::Greater)
                || tr.cmp_certified(&m_two) == Some(Ordering::Less);
            if !hyperbolic {
                return Err(HypError::PrecisionExhausted { bits: prec });
            }
        }
        // Tiling consistency: crossing side k moves the tile center to the
        // far side of that side's geodesic.
        let id = IMat2::identity(prec);
        let c0 = model.tile_center(&id);
        let verts: Vec<KPoint> = model.tile_vertices(&id);
        for k in 0..n {
            let nk = model.generator(model.side_neighbor_letter(k)).clone();
            let c1 = model.tile_center(&nk);
            let e1 = &verts[k];
            let e2 = &verts[(k + 1) % n];
            let s0 = line_side(e1, e2, &c0);
            let s1 = line_side(e1, e2, &c1);
            match (s0, s1) {
                (Some(x), Some(y)) if x != 0 && y != 0 && x != y => {}
                _ => return Err(HypError::ModelInconsistent),
            }
        }
        Ok(model)
    }
}

/// Moebius action of a real matrix on an upper half-plane point.
pub fn moebius(m: &IMat2, z: &CInt) -> CInt {
    let num = CInt::new(
        m.a.mul(&z.re).add(&m.b),
        m.a.mul(&z.im),
    );
    let den = CInt::new(
        m.c.mul(&z.re).add(&m.d),
        m.c.mul(&z.im),
    );
    let d2 = den.norm_sq();
    let conj = CInt::new(den.re.clone(), den.im.neg());
    let prod = num.mul(&conj);
    CInt::new(
        prod.re.div(&d2).expect("denominator away from zero"),
        prod.im.div(&d2).expect("denominator away from zero"),
    )
}

/// Disk to upper half-plane: `z = i (1 + w) / (1 - w)`.
fn uhp_from_disk(w: &CInt, prec: u32) -> Result<CInt, HypError> {
    let one = Interval::one(prec);
    let num = CInt::new(one.add(&w.re), w.im.clone());
    let den = CInt::new(one.sub(&w.re), w.im.neg());
    let d2 = den.norm_sq();
    if d2.sign() != Some(1) {
        return Err(HypError::PrecisionExhausted { bits: prec });
    }
    let conj = CInt::new(den.re.clone(), den.im.neg());
    let q = num.mul(&conj);
    let re = q.re.div(&d2).unwrap();
    let im = q.im.div(&d2).unwrap();
    // Multiply by i.
    Ok(CInt::new(im.neg(), re))
}

/// Upper half-plane to Klein coordinates.
pub fn klein_from_uhp(z: &CInt) -> KPoint {
    let prec = z.re.prec();
    let one = Interval::one(prec);
    let x2y2 = z.re.square().add(&z.im.square());
    let d = z.re.square().add(&z.im.add(&one).square());
    let u = x2y2.sub(&one).div(&d).expect("positive denominator");
    let v = z.re.scale_i64(-2).div(&d).expect("positive denominator");
    let s = one.add(&u.square().add(&v.square()));
    KPoint {
        x: u.scale_i64(2).div(&s).expect("positive denominator"),
        y: v.scale_i64(2).div(&s).expect("positive denominator"),
    }
}

/// Klein boundary point from a projective fixed point `(x : y)` of the
/// half-plane boundary.
pub fn klein_boundary_from_projective(x: &Interval, y: &Interval) -> Option<KPoint> {
    let d = x.square().add(&y.square());
    if d.sign() != Some(1) {
        return None;
    }
    let u = x.square().sub(&y.square()).div(&d).unwrap();
    let v = x.mul(y).scale_i64(-2).div(&d).unwrap();
    Some(KPoint { x: u, y: v })
}

/// The unique orientation-preserving isometry of the half-plane with
/// `T(p) = r`, `T(q) = s` (for congruent segments), found as the determinant
/// `+1` real solution of the linear constraints.
fn solve_isometry(p: &CInt, q: &CInt, r: &CInt, s: &CInt, prec: u32) -> Option<IMat2> {
    // Unknowns (a, b, c, d): a z + b - c (z w) - d w = 0 at (z, w) = (p, r), (q, s).
    let pr = p.mul(r);
    let qs = q.mul(s);
    let rows = [
        [
            p.re.clone(),
            Interval::one(prec),
            pr.re.neg(),
            r.re.neg(),
        ],
        [p.im.clone(), Interval::zero(prec), pr.im.neg(), r.im.neg()],
        [
            q.re.clone(),
            Interval::one(prec),
            qs.re.neg(),
            s.re.neg(),
        ],
        [q.im.clone(), Interval::zero(prec), qs.im.neg(), s.im.neg()],
    ];
    let sol = nullspace_4(rows)?;
    let m = IMat2 {
        a: sol[0].clone(),
        b: sol[1].clone(),
        c: sol[2].clone(),
        d: sol[3].clone(),
    };
    let det = m.det();
    if det.sign() != Some(1) {
        return None;
    }
    let lambda = det.sqrt()?;
    let inv_lambda = Interval::one(prec).div(&lambda)?;
    Some(m.scale(&inv_lambda))
}

/// One-dimensional nullspace of a 4x4 interval matrix of rank 3.
fn nullspace_4(mut rows: [[Interval; 4]; 4]) -> Option<[Interval; 4]> {
    let prec = rows[0][0].prec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..4 {
        // Find a row below `rank` with a certified-nonzero entry in `col`,
        // preferring the widest margin from zero.
        let mut best: Option<(usize, f64)> = None;
        for r in rank..4 {
            if rows[r][col].sign().map_or(false, |s| s != 0) {
                let m = rows[r][col].mid_f64().abs();
                if best.map_or(true, |(_, bm)| m > bm) {
                    best = Some((r, m));
                }
            }
        }
        let Some((prow, _)) = best else { continue };
        rows.swap(rank, prow);
        for r in 0..4 {
            if r != rank && !(rows[r][col].sign() == Some(0)) {
                let f = rows[r][col].div(&rows[rank][col])?;
                for cc in 0..4 {
                    let t = f.mul(&rows[rank][cc]);
                    rows[r][cc] = rows[r][cc].sub(&t);
                }
                // The eliminated entry is exactly zero by intent.
                rows[r][col] = Interval::zero(prec);
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == 4 {
            return None; // Full rank: no nullspace; precision artifact.
        }
    }
    if rank != 3 {
        return None;
    }
    let free_col = (0..4).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut sol = [
        Interval::zero(prec),
        Interval::zero(prec),
        Interval::zero(prec),
        Interval::zero(prec),
    ];
    sol[free_col] = Interval::one(prec);
    for (k, &pc) in pivot_cols.iter().enumerate().rev() {
        // Row k: rows[k][pc] * sol[pc] + rows[k][free_col] = 0 (other pivot
        // columns already eliminated).
        let rhs = rows[k][free_col].neg();
        sol[pc] = rhs.div(&rows[k][pc])?;
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> FuchsianModel {
        FuchsianModel::new(2, 128, 1024).expect("model builds")
    }

    #[test]
    fn relator_holonomy_is_plus_minus_identity() {
        let m = model();
        assert!(m.relator_defect() < 2f64.powi(-30));
    }

    #[test]
    fn generators_are_hyperbolic_with_equal_lengths() {
        let m = model();
        let la = m.translation_length(&Word::a(1)).unwrap();
        let lb = m.translation_length(&Word::b(1)).unwrap();
        let la2 = m.translation_length(&Word::a(2)).unwrap();
        // The regular polygon model is symmetric in the generators.
        let diff = la.sub(&lb);
        assert!(diff.contains_zero() || diff.sign().is_none());
        let diff2 = la.sub(&la2);
        assert!(diff2.contains_zero() || diff2.sign().is_none());
        assert!(la.lo().to_f64() > 0.5);
    }

    #[test]
    fn squares_double_translation_length() {
        let m = model();
        let l1 = m.translation_length(&Word::a(1)).unwrap();
        let l2 = m.translation_length(&Word::a(1).pow(2)).unwrap();
        let diff = l2.sub(&l1.scale_i64(2));
        assert!(
            diff.contains_zero(),
            "length of square {:?} vs doubled {:?}",
            l2.to_f64_pair(),
            l1.scale_i64(2).to_f64_pair()
        );
    }

    #[test]
    fn empty_word_is_identity_holonomy() {
        let m = model();
        let h = m.holonomy(&Word::empty());
        assert!(h.contains_pm_identity());
        assert!(h.max_width_f64() == 0.0);
    }

    #[test]
    fn genus_three_also_builds() {
        let m = FuchsianModel::new(3, 96, 1024).expect("genus 3 model");
        assert!(m.relator_defect() < 2f64.powi(-30));
    }
}
