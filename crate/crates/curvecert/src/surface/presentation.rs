//! The one-relator surface presentation and Dehn's algorithm.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::word::{Letter, Word};

/// The standard presentation of the genus-`g` surface group with relator
/// `[a_1,b_1]...[a_g,b_g]`.
///
/// Construction verifies the small-cancellation data of the symmetrized
/// relator set by direct piece enumeration, which is what licenses Dehn's
/// algorithm below.
#[derive(Clone, Debug)]
pub struct Presentation {
    genus: usize,
    relator: Word,
    /// All cyclic rotations of the relator and of its inverse.
    symmetrized: Vec<Word>,
    max_piece_full: usize,
    max_piece_rotations_only: usize,
}

impl Presentation {
    pub fn new(genus: usize) -> Self {
        assert!(genus >= 2, "hyperbolic surface groups need genus >= 2");
        let mut letters = Vec::with_capacity(4 * genus);
        for i in 1..=genus as u8 {
            let a = Letter::new(2 * (i - 1), false);
            let b = Letter::new(2 * (i - 1) + 1, false);
            letters.push(a);
            letters.push(b);
            letters.push(a.inverse());
            letters.push(b.inverse());
        }
        let relator = Word::from_letters(letters);
        let mut symmetrized = Vec::with_capacity(8 * genus);
        for k in 0..relator.len() {
            symmetrized.push(relator.rotated(k));
        }
        let inv = relator.inverse();
        for k in 0..inv.len() {
            symmetrized.push(inv.rotated(k));
        }
        let max_piece_full = max_common_prefix(&symmetrized);
        let rotations: Vec<Word> = symmetrized[..relator.len()].to_vec();
        let max_piece_rotations_only = max_common_prefix(&rotations);
        let p = Presentation {
            genus,
            relator,
            symmetrized,
            max_piece_full,
            max_piece_rotations_only,
        };
        // Dehn's algorithm is justified by the metric small-cancellation
        // condition C'(1/6): every piece is shorter than 1/6 of the relator.
        assert!(
            6 * p.max_piece_full < p.relator.len(),
            "relator fails C'(1/6): max piece {} vs length {}",
            p.max_piece_full,
            p.relator.len()
        );
        p
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generator_count(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    /// Length of the longest piece of the fully symmetrized relator set
    /// (rotations of the relator and of its inverse).
    pub fn max_piece_length(&self) -> usize {
        self.max_piece_full
    }

    /// Length of the longest piece among relator rotations only.
    pub fn max_piece_length_rotations_only(&self) -> usize {
        self.max_piece_rotations_only
    }

    /// All signed generators.
    pub fn letters(&self) -> Vec<Letter> {
        let mut v = Vec::with_capacity(4 * self.genus);
        for g in 0..self.generator_count() as u8 {
            v.push(Letter::new(g, false));
            v.push(Letter::new(g, true));
        }
        v
    }

    /// One step of Dehn reduction: replace a subword that covers more than
    /// half of some symmetrized relator by the shorter complement.
    fn dehn_step(&self, w: &Word) -> Option<Word> {
        let n = self.relator.len();
        let half = n / 2;
        let letters = w.letters();
        if letters.len() <= half {
            return None;
        }
        // Search longest matches first so each replacement shortens maximally.
        for len in (half + 1..=n.min(letters.len())).rev() {
            for start in 0..=(letters.len() - len) {
                let window = &letters[start..start + len];
                for rel in &self.symmetrized {
                    if &rel.letters()[..len] == window {
                        // rel = window * tail, so window = tail^{-1}.
                        let tail = Word::from_letters(rel.letters()[len..].to_vec());
                        let mut out = letters[..start].to_vec();
                        out.extend(tail.inverse().letters().iter().copied());
                        out.extend_from_slice(&letters[start + len..]);
                        return Some(Word::from_letters(out).free_reduce());
                    }
                }
            }
        }
        None
    }

    /// Dehn's algorithm: freely reduce, then repeatedly replace
    /// more-than-half relator subwords by their shorter complements. The
    /// result is a geodesic representative; it is empty iff the word is
    /// trivial in the group.
    pub fn dehn_reduce(&self, w: &Word) -> Word {
        let mut cur = w.free_reduce();
        while let Some(next) = self.dehn_step(&cur) {
            cur = next;
        }
        cur
    }

    pub fn is_identity(&self, w: &Word) -> bool {
        self.dehn_reduce(w).is_empty()
    }

    /// Word length in the generating set: the letter count of the Dehn
    /// reduction.
    pub fn length(&self, w: &Word) -> usize {
        self.dehn_reduce(w).len()
    }

    /// Cyclic Dehn reduction: reduce the word as a cyclic word, so that every
    /// rotation is Dehn-reduced.
    pub fn cyclic_dehn_reduce(&self, w: &Word) -> Word {
        let mut cur = w.cyclic_free_reduce();
        'outer: loop {
            if cur.is_empty() {
                return cur;
            }
            for k in 0..cur.len() {
                let rot = cur.rotated(k);
                if let Some(next) = self.dehn_step(&rot) {
                    cur = next.cyclic_free_reduce();
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// All geodesic spellings of the same group element reachable by
    /// exact-half relator swaps, including the word itself.
    ///
    /// Dehn reduction removes every subword longer than half the relator;
    /// subwords of exactly half the relator length can be traded for the
    /// complementary half without changing length or group element. The
    /// closure under these swaps is finite and canonicalizes elements.
    pub fn half_swap_closure(&self, w: &Word) -> BTreeSet<Word> {
        let half = self.relator.len() / 2;
        let mut seen: BTreeSet<Word> = BTreeSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        let start = self.dehn_reduce(w);
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            let letters = cur.letters();
            if letters.len() >= half {
                for start_idx in 0..=(letters.len() - half) {
                    let window = &letters[start_idx..start_idx + half];
                    for rel in &self.symmetrized {
                        if &rel.letters()[..half] == window {
                            let tail = Word::from_letters(rel.letters()[half..].to_vec());
                            let mut out = letters[..start_idx].to_vec();
                            out.extend(tail.inverse().letters().iter().copied());
                            out.extend_from_slice(&letters[start_idx + half..]);
                            let cand = Word::from_letters(out).free_reduce();
                            // Swaps preserve geodesic length; anything shorter
                            // feeds back through full reduction.
                            let cand = if cand.len() < cur.len() {
                                self.dehn_reduce(&cand)
                            } else {
                                cand
                            };
                            if seen.insert(cand.clone()) {
                                queue.push_back(cand);
                            }
                        }
                    }
                }
            }
        }
        seen
    }

    /// Canonical form of a group element: the lexicographically least
    /// geodesic spelling.
    pub fn canonical_element(&self, w: &Word) -> Word {
        self.half_swap_closure(w)
            .into_iter()
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .unwrap()
    }

    /// Canonical form of a conjugacy class: cyclically Dehn-reduce, then take
    /// the least representative over all rotations and half swaps of the
    /// cyclic word.
    pub fn canonical_cyclic(&self, w: &Word) -> Word {
        self.cyclic_spellings_tracked(w)
            .into_iter()
            .map(|(v, _)| v)
            .min_by(cmp_canonical_ref)
            .unwrap()
    }

    /// All cyclically reduced spellings of conjugates of `w` reachable by
    /// rotations, half-relator swaps and Dehn reductions, each paired with a
    /// conjugator `h` such that `w = h v h^{-1}` in the group.
    ///
    /// The closure is finite: no move increases the length. It contains every
    /// minimal-length cyclic spelling of the class, which is what makes the
    /// minimum a class invariant and what the proper-power scan walks over.
    pub fn cyclic_spellings_tracked(&self, w: &Word) -> Vec<(Word, Word)> {
        let (base, base_h) = self.reduce_tracked(w.clone(), Word::empty());
        let mut seen: HashSet<Word> = HashSet::new();
        let mut out: Vec<(Word, Word)> = Vec::new();
        let mut queue: VecDeque<(Word, Word)> = VecDeque::new();
        seen.insert(base.clone());
        out.push((base.clone(), base_h.clone()));
        queue.push_back((base, base_h));
        let half = self.relator.len() / 2;
        while let Some((cur, h)) = queue.pop_front() {
            if cur.is_empty() {
                continue;
            }
            let n = cur.len();
            for k in 0..n {
                // Rotation by k conjugates: rot = p^{-1} cur p for the prefix p.
                let prefix = Word::from_letters(cur.letters()[..k].to_vec());
                let rot = cur.rotated(k);
                let h_rot = h.concat(&prefix);
                let mut candidates: Vec<(Word, Word)> = vec![(rot.clone(), h_rot.clone())];
                // Half swaps on non-wrapping windows; wrapped windows are
                // covered by other rotations.
                let letters = rot.letters();
                if letters.len() >= half {
                    for start_idx in 0..=(letters.len() - half) {
                        let window = &letters[start_idx..start_idx + half];
                        for rel in &self.symmetrized {
                            if &rel.letters()[..half] == window {
                                let tail = Word::from_letters(rel.letters()[half..].to_vec());
                                let mut swapped = letters[..start_idx].to_vec();
                                swapped.extend(tail.inverse().letters().iter().copied());
                                swapped.extend_from_slice(&letters[start_idx + half..]);
                                candidates
                                    .push((Word::from_letters(swapped), h_rot.clone()));
                            }
                        }
                    }
                }
                for (cand, hc) in candidates {
                    let (red, hr) = self.reduce_tracked(cand, hc);
                    if seen.insert(red.clone()) {
                        out.push((red.clone(), hr.clone()));
                        queue.push_back((red, hr));
                    }
                }
            }
        }
        out
    }

    /// Linear Dehn reduction plus cyclic end-trimming, threading the
    /// conjugator: returns `(v, h)` with `input = h v h^{-1}` given that the
    /// incoming pair already satisfied that relation for the caller's word.
    fn reduce_tracked(&self, input: Word, h: Word) -> (Word, Word) {
        let mut v = self.dehn_reduce(&input);
        let mut h = h;
        loop {
            let mut changed = false;
            while v.len() >= 2
                && v.letters()
                    .first()
                    .unwrap()
                    .cancels(*v.letters().last().unwrap())
            {
                // v = x m x^{-1}, so m = x^{-1} v x and the conjugator grows by x.
                let x = Word::from_letters(vec![v.letters()[0]]);
                let inner = Word::from_letters(v.letters()[1..v.len() - 1].to_vec());
                h = h.concat(&x);
                v = inner;
                changed = true;
            }
            let reduced = self.dehn_reduce(&v);
            if reduced != v {
                v = reduced;
                changed = true;
            }
            if !changed {
                return (v, h);
            }
        }
    }
}

fn cmp_canonical_ref(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Longest common prefix between any two distinct words in the set; this is
/// the maximal piece length because every piece extends to a common prefix of
/// two distinct rotations.
fn max_common_prefix(words: &[Word]) -> usize {
    let mut max = 0;
    for (i, u) in words.iter().enumerate() {
        for v in words.iter().skip(i + 1) {
            if u == v {
                continue;
            }
            let mut k = 0;
            while k < u.len() && k < v.len() && u.letters()[k] == v.letters()[k] {
                k += 1;
            }
            max = max.max(k);
        }
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Presentation {
        Presentation::new(2)
    }

    #[test]
    fn relator_spells_commutator_product() {
        let p = p2();
        assert_eq!(p.relator().to_string(), "a1 b1 A1 B1 a2 b2 A2 B2");
    }

    #[test]
    fn piece_lengths() {
        let p = p2();
        // Rotations of the relator alone share no prefix at all.
        assert_eq!(p.max_piece_length_rotations_only(), 0);
        // Adding inverse rotations produces single-letter pieces.
        assert_eq!(p.max_piece_length(), 1);
        // C'(1/6) strictly, which is what Dehn's algorithm needs.
        assert!(6 * p.max_piece_length() < p.relator().len());
        let p3 = Presentation::new(3);
        assert_eq!(p3.max_piece_length(), 1);
        assert!(8 * p3.max_piece_length() < p3.relator().len());
    }

    #[test]
    fn relator_and_conjugates_reduce_to_identity() {
        let p = p2();
        assert!(p.is_identity(p.relator()));
        let b1 = Word::b(1);
        let conj = p.relator().conjugated_by(&b1);
        assert!(p.is_identity(&conj));
        let rr = p.relator().concat(p.relator());
        assert!(p.is_identity(&rr));
    }

    #[test]
    fn generators_are_nontrivial() {
        let p = p2();
        assert_eq!(p.dehn_reduce(&Word::a(1)), Word::a(1));
        assert!(!p.is_identity(&Word::parse("a1 b1", 2).unwrap()));
    }

    #[test]
    fn dehn_reduce_is_idempotent_and_nonincreasing() {
        let p = p2();
        for s in [
            "a1 b1 A1 B1 a2 b2",
            "a1 b1 A1 B1 a2 b2 A2 B2 a1",
            "b2 A2 B2 a1 b1 A1",
            "a1 a1 a1 b2 B2 A1",
        ] {
            let w = Word::parse(s, 2).unwrap();
            let r = p.dehn_reduce(&w);
            assert!(r.len() <= w.len());
            assert_eq!(p.dehn_reduce(&r), r);
        }
    }

    #[test]
    fn commutator_identity_from_relator() {
        // [a1,b1] equals [b2,a2] in the group.
        let p = p2();
        let lhs = Word::a(1).commutator(&Word::b(1));
        let rhs = Word::b(2).commutator(&Word::a(2));
        assert!(p.is_identity(&lhs.concat(&rhs.inverse())));
        // And their canonical cyclic forms agree.
        assert_eq!(p.canonical_cyclic(&lhs), p.canonical_cyclic(&rhs));
    }

    #[test]
    fn canonical_element_separates_and_merges_correctly() {
        let p = p2();
        let u = Word::parse("a1 b1", 2).unwrap();
        let v = Word::parse("b1 a1", 2).unwrap();
        assert_ne!(p.canonical_element(&u), p.canonical_element(&v));
        let half1 = Word::parse("a1 b1 A1 B1", 2).unwrap();
        let half2 = Word::parse("b2 a2 B2 A2", 2).unwrap();
        assert!(p.is_identity(&half1.concat(&half2.inverse())));
        assert_eq!(p.canonical_element(&half1), p.canonical_element(&half2));
    }

    #[test]
    fn cyclic_canonical_is_rotation_invariant() {
        let p = p2();
        let w = Word::parse("a1 b2 A1 b2", 2).unwrap();
        for k in 0..w.len() {
            assert_eq!(p.canonical_cyclic(&w), p.canonical_cyclic(&w.rotated(k)));
        }
    }

    #[test]
    fn tracked_spellings_carry_valid_conjugators() {
        let p = p2();
        for s in ["a1 b1 A1 B1", "a1 a2 a1 B2", "b1 a1 b1"] {
            let w = Word::parse(s, 2).unwrap();
            for (v, h) in p.cyclic_spellings_tracked(&w) {
                let recon = v.conjugated_by(&h);
                assert!(
                    p.is_identity(&recon.concat(&w.inverse())),
                    "bad conjugator for spelling {} of {}",
                    v,
                    w
                );
            }
        }
    }
}
