//! Words in free groups: free reduction, substitution, and a decidable
//! normal form for comparing relators up to cyclic rotation and inversion.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A single letter: generator index plus exponent +1 or -1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            exp: -self.exp,
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Word {
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word {
            letters: vec![Letter { gen, exp: 1 }],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        Word {
            letters: letters
                .into_iter()
                .map(|(gen, exp)| {
                    assert!(exp == 1 || exp == -1);
                    Letter { gen, exp }
                })
                .collect(),
        }
    }

    /// `x y x^-1 y^-1`.
    pub fn commutator(x: &Word, y: &Word) -> Self {
        let mut w = x.clone();
        w.letters.extend_from_slice(&y.letters);
        w.letters.extend(x.inverse().letters);
        w.letters.extend(y.inverse().letters);
        w.reduced()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Freely reduced form: no adjacent `x x^-1` pairs remain.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last().is_some_and(|p| *p == l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Cyclically reduced form: first and last letters are not inverse.
    pub fn cyclically_reduced(&self) -> Self {
        let mut w = self.reduced();
        while w.letters.len() >= 2
            && w.letters[0] == w.letters[w.letters.len() - 1].inverse()
        {
            w.letters.pop();
            w.letters.remove(0);
            w = w.reduced();
        }
        w
    }

    /// Replaces every `gen^±1` by `replacement^±1` and reduces. The
    /// replacement must not itself mention `gen`.
    pub fn substitute(&self, gen: usize, replacement: &Word) -> Result<Word> {
        if replacement.letters.iter().any(|l| l.gen == gen) {
            return Err(Error::SelfReferencingSubstitution);
        }
        let inv = replacement.inverse();
        let mut letters = Vec::new();
        for &l in &self.letters {
            if l.gen == gen {
                let r = if l.exp == 1 { replacement } else { &inv };
                letters.extend_from_slice(&r.letters);
            } else {
                letters.push(l);
            }
        }
        Ok(Word { letters }.reduced())
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.exp as i64)
            .sum()
    }

    pub fn total_exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exp as i64).sum()
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters.iter().map(|l| l.gen)
    }

    /// Comparison normal form: least cyclic rotation of the lexicographically
    /// smaller of the cyclically reduced word and its inverse.
    pub fn normal_form(&self) -> Word {
        let w = self.cyclically_reduced();
        if w.letters.is_empty() {
            return w;
        }
        let least_rotation = |w: &Word| -> Word {
            let n = w.letters.len();
            let mut best = w.clone();
            for s in 1..n {
                let rot: Vec<Letter> = w
                    .letters
                    .iter()
                    .cycle()
                    .skip(s)
                    .take(n)
                    .copied()
                    .collect();
                let cand = Word { letters: rot };
                if cand.letters < best.letters {
                    best = cand;
                }
            }
            best
        };
        let a = least_rotation(&w);
        let b = least_rotation(&w.inverse());
        if a.letters <= b.letters {
            a
        } else {
            b
        }
    }

    /// If this word is (up to normal form) a commutator `[x, y]` of two
    /// distinct single generators, returns `(x, y)` with `x < y`.
    pub fn as_generator_commutator(&self) -> Option<(usize, usize)> {
        let w = self.normal_form();
        if w.letters.len() != 4 {
            return None;
        }
        let [p, q, r, s] = [w.letters[0], w.letters[1], w.letters[2], w.letters[3]];
        if p.gen != q.gen && p == r.inverse() && q == s.inverse() {
            let (x, y) = (p.gen.min(q.gen), p.gen.max(q.gen));
            Some((x, y))
        } else {
            None
        }
    }

    /// Remaps generator indices through `map`.
    pub fn map_generators(&self, map: impl Fn(usize) -> usize) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    gen: map(l.gen),
                    exp: l.exp,
                })
                .collect(),
        }
    }

    /// Signed 1-based index sequence, e.g. `[1, -3]` for `x1 x3^-1`.
    pub fn signed_indices(&self) -> Vec<i64> {
        self.letters
            .iter()
            .map(|l| (l.gen as i64 + 1) * l.exp as i64)
            .collect()
    }

    pub fn from_signed_indices(seq: &[i64]) -> Word {
        Word {
            letters: seq
                .iter()
                .map(|&s| Letter {
                    gen: (s.unsigned_abs() - 1) as usize,
                    exp: if s > 0 { 1 } else { -1 },
                })
                .collect(),
        }
    }
}

/// Decides triviality of `w` in the right-angled Artin group whose
/// commuting generator pairs are `commuting`. Repeatedly cancels a letter
/// against a later inverse when everything in between commutes with it;
/// this shuffle-cancellation procedure is complete for RAAG word reduction.
pub fn trivial_in_raag(w: &Word, commuting: &std::collections::BTreeSet<(usize, usize)>) -> bool {
    // A generator always commutes with itself.
    let commutes = |a: usize, b: usize| a == b || commuting.contains(&(a.min(b), a.max(b)));
    let mut letters = w.reduced().letters;
    loop {
        if letters.is_empty() {
            return true;
        }
        let mut cancelled = false;
        'outer: for i in 0..letters.len() {
            for j in (i + 1)..letters.len() {
                if letters[j] == letters[i].inverse()
                    && letters[i + 1..j].iter().all(|m| commutes(m.gen, letters[i].gen))
                {
                    letters.remove(j);
                    letters.remove(i);
                    cancelled = true;
                    break 'outer;
                }
            }
        }
        if !cancelled {
            return false;
        }
    }
}
