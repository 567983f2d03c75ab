//! Word statistics: `gep`, `inv`, `maj`, and the pair-count state that
//! closes the three-letter recurrence.
//!
//! `gep(w)` counts index triples i<j<k whose letters form one of the odd
//! length-3 patterns 132, 213, 321 under strict comparisons. The definitional
//! triple loop here is the oracle of record; the enumeration and recurrence
//! engines must reproduce it.

use crate::error::{Error, Result};

/// A word over a positive-integer alphabet. Permutations are the special
/// case with each of 1..n appearing once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| l == 0) {
            return Err(Error::Domain {
                what: "word letter",
                needed: "a positive integer",
                got: l.to_string(),
            });
        }
        Ok(Word(letters))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }
}

/// Letter multiplicities (a_1, ..., a_k). The recurrence machinery always
/// uses k = 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition(pub Vec<u64>);

impl Composition {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Counts of position pairs i<j whose letters are exactly (3,2), (1,3), (2,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub c32: u64,
    pub c13: u64,
    pub c21: u64,
}

fn odd_triple(a: u32, b: u32, c: u32) -> bool {
    // patterns 132, 213, 321; ties never contribute
    (a < c && c < b) || (b < a && a < c) || (c < b && b < a)
}

/// Number of odd-pattern triples. O(m^3) by definition.
pub fn gep(w: &Word) -> u64 {
    let v = &w.0;
    let m = v.len();
    let mut count = 0u64;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                if odd_triple(v[i], v[j], v[k]) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Number of inversions: pairs i<j with w_i > w_j.
pub fn inv(w: &Word) -> u64 {
    let v = &w.0;
    let mut count = 0u64;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                count += 1;
            }
        }
    }
    count
}

/// Major index: sum of positions i (1-based) with w_i > w_{i+1}.
pub fn maj(w: &Word) -> u64 {
    w.0.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(i, _)| i as u64 + 1)
        .sum()
}

/// Exact counts of the tracked pairs for a word over {1,2,3}.
pub fn pair_counts(w: &Word) -> Result<PairCounts> {
    let v = &w.0;
    if let Some(&l) = v.iter().find(|&&l| !(1..=3).contains(&l)) {
        return Err(Error::LetterOutOfRange(l));
    }
    let mut pc = PairCounts::default();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            match (v[i], v[j]) {
                (3, 2) => pc.c32 += 1,
                (1, 3) => pc.c13 += 1,
                (2, 1) => pc.c21 += 1,
                _ => {}
            }
        }
    }
    Ok(pc)
}

/// Incremental state of a prefix over {1,2,3}: gep value, tracked pair
/// counts, and letter multiplicities. Appending a letter costs O(1).
///
/// The update rules:
///   append 1: gep += #32, then #21 += (count of 2s)
///   append 2: gep += #13, then #32 += (count of 3s)
///   append 3: gep += #21, then #13 += (count of 1s)
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GepState {
    pub gep: u64,
    pub pairs: PairCounts,
    pub mult: [u64; 3],
}

impl GepState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn append(&mut self, letter: u32) -> Result<()> {
        match letter {
            1 => {
                self.gep += self.pairs.c32;
                self.pairs.c21 += self.mult[1];
            }
            2 => {
                self.gep += self.pairs.c13;
                self.pairs.c32 += self.mult[2];
            }
            3 => {
                self.gep += self.pairs.c21;
                self.pairs.c13 += self.mult[0];
            }
            l => return Err(Error::LetterOutOfRange(l)),
        }
        self.mult[letter as usize - 1] += 1;
        Ok(())
    }

    /// Undo the most recent `append(letter)`.
    pub fn unappend(&mut self, letter: u32) {
        self.mult[letter as usize - 1] -= 1;
        match letter {
            1 => {
                self.pairs.c21 -= self.mult[1];
                self.gep -= self.pairs.c32;
            }
            2 => {
                self.pairs.c32 -= self.mult[2];
                self.gep -= self.pairs.c13;
            }
            3 => {
                self.pairs.c13 -= self.mult[0];
                self.gep -= self.pairs.c21;
            }
            _ => unreachable!(),
        }
    }

    /// Replay a whole word through the delta rules.
    pub fn replay(w: &Word) -> Result<Self> {
        let mut st = Self::new();
        for &l in &w.0 {
            st.append(l)?;
        }
        Ok(st)
    }
}
