//! Conjugacy classes and their enumeration by word length.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::{Letter, Word};

/// A free homotopy class: a conjugacy class of the surface group, held by its
/// canonical representative (cyclically Dehn-reduced, least under rotation
/// and half-relator swaps).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConjClass {
    representative: Word,
}

impl ConjClass {
    /// Canonicalize an arbitrary word into its class.
    pub fn of(pres: &Presentation, w: &Word) -> Self {
        ConjClass {
            representative: pres.canonical_cyclic(w),
        }
    }

    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn is_trivial(&self) -> bool {
        self.representative.is_empty()
    }

    /// Cyclically reduced word length of the class.
    pub fn length(&self) -> usize {
        self.representative.len()
    }
}

impl std::fmt::Debug for ConjClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ConjClass({})", self.representative)
    }
}

impl std::fmt::Display for ConjClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.representative)
    }
}

impl Presentation {
    /// Enumerate the nontrivial conjugacy classes with a representative of
    /// word length at most `radius`, one canonical representative each.
    ///
    /// Deduplication here is combinatorial (cyclic Dehn reduction, rotations,
    /// half-relator swaps). Callers that need the certified-geometry merge on
    /// top of this use the hyperbolic layer, which buckets by holonomy trace
    /// and runs a bounded conjugator search inside each bucket.
    pub fn enumerate_classes(&self, radius: usize) -> Vec<ConjClass> {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut out: Vec<ConjClass> = Vec::new();
        let letters = self.letters();
        // DFS over freely reduced words.
        let mut stack: Vec<Word> = vec![Word::empty()];
        while let Some(w) = stack.pop() {
            if w.len() < radius {
                for &l in &letters {
                    if w.letters().last().map_or(false, |&last| last.cancels(l)) {
                        continue;
                    }
                    let mut next = w.clone();
                    next.letters.push(l);
                    stack.push(next);
                }
            }
            if w.is_empty() {
                continue;
            }
            let canon = self.canonical_cyclic(&w);
            if canon.is_empty() {
                continue;
            }
            if seen.insert(canon.clone()) {
                out.push(ConjClass {
                    representative: canon,
                });
            }
        }
        out.sort_by(|a, b| {
            a.length()
                .cmp(&b.length())
                .then_with(|| a.representative.cmp(&b.representative))
        });
        out
    }

    /// Bounded conjugacy search: look for `x` with `x u x^{-1} = v`, exploring
    /// conjugations by single letters up to the given depth. Returns the
    /// conjugator on success.
    pub fn find_conjugator(&self, u: &Word, v: &Word, max_depth: usize) -> Option<Word> {
        let target = self.canonical_element(v);
        let start = self.canonical_element(u);
        if start == target {
            return Some(Word::empty());
        }
        // Breadth-first over canonical element forms; keep states from
        // exploding by capping the length of intermediate conjugates.
        let len_cap = start.len().max(target.len()) + 2 * self.relator().len();
        let mut seen: BTreeMap<Word, Word> = BTreeMap::new();
        let mut queue: VecDeque<(Word, Word, usize)> = VecDeque::new();
        seen.insert(start.clone(), Word::empty());
        queue.push_back((start, Word::empty(), 0));
        while let Some((cur, conj, depth)) = queue.pop_front() {
            if depth >= max_depth {
                continue;
            }
            for l in self.letters() {
                let x = Word::from_letters(vec![l]);
                let next = self.canonical_element(&cur.conjugated_by(&x));
                if next.len() > len_cap {
                    continue;
                }
                let conj_next = x.concat(&conj);
                if next == target {
                    return Some(conj_next);
                }
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), conj_next.clone());
                    queue.push_back((next, conj_next, depth + 1));
                }
            }
        }
        None
    }

    /// Homology class in `Z^(2g)` (exponent sums), a cheap conjugacy
    /// invariant.
    pub fn homology_vector(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0i64; self.generator_count()];
        for l in w.letters() {
            v[l.gen as usize] += if l.inv { -1 } else { 1 };
        }
        v
    }
}

/// Brute-force conjugacy oracle used by tests: enumerate all freely reduced
/// words up to `radius` and merge by exhaustive conjugacy checking with
/// conjugators up to `conj_len`.
pub fn brute_force_class_count(pres: &Presentation, radius: usize, conj_depth: usize) -> usize {
    let letters = pres.letters();
    let mut words: Vec<Word> = Vec::new();
    let mut stack: Vec<Word> = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        if w.len() < radius {
            for &l in &letters {
                if w.letters().last().map_or(false, |&last| last.cancels(l)) {
                    continue;
                }
                let mut next = w.clone();
                next.letters.push(l);
                stack.push(next);
            }
        }
        if !w.is_empty() && !pres.is_identity(&w) {
            words.push(w);
        }
    }
    let mut reps: Vec<Word> = Vec::new();
    'words: for w in words {
        for r in &reps {
            if pres.homology_vector(&pres.dehn_reduce(&w)) != pres.homology_vector(&pres.dehn_reduce(r)) {
                continue;
            }
            if pres.find_conjugator(&w, r, conj_depth).is_some() {
                continue 'words;
            }
        }
        reps.push(w);
    }
    reps.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_zero_is_empty() {
        let p = Presentation::new(2);
        assert!(p.enumerate_classes(0).is_empty());
    }

    #[test]
    fn radius_one_gives_eight_generator_classes() {
        let p = Presentation::new(2);
        let classes = p.enumerate_classes(1);
        assert_eq!(classes.len(), 8);
    }

    #[test]
    fn radius_two_matches_brute_force_oracle() {
        let p = Presentation::new(2);
        let classes = p.enumerate_classes(2);
        let oracle = brute_force_class_count(&p, 2, 12);
        assert_eq!(classes.len(), oracle);
    }

    #[test]
    fn rotations_collapse() {
        let p = Presentation::new(2);
        let u = Word::parse("a1 a2", 2).unwrap();
        let v = Word::parse("a2 a1", 2).unwrap();
        assert_eq!(ConjClass::of(&p, &u), ConjClass::of(&p, &v));
    }

    #[test]
    fn conjugates_collapse() {
        let p = Presentation::new(2);
        let u = Word::parse("a1 a2", 2).unwrap();
        let conj = u.conjugated_by(&Word::parse("b1 a1", 2).unwrap());
        assert_eq!(ConjClass::of(&p, &u), ConjClass::of(&p, &conj));
    }

    #[test]
    fn find_conjugator_validates() {
        let p = Presentation::new(2);
        let u = Word::parse("a1 b2", 2).unwrap();
        let x = Word::parse("b1", 2).unwrap();
        let v = u.conjugated_by(&x);
        let found = p.find_conjugator(&u, &v, 4).expect("conjugate pair");
        let check = u.conjugated_by(&found).concat(&v.inverse());
        assert!(p.is_identity(&check));
    }
}
