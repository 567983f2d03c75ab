//! Brute-force enumeration of permutations and multiset words.
//!
//! These are the oracles of record: every polynomial the recurrence engines
//! produce is checked against an exhaustive generation here. Enumeration is
//! sharded by fixed prefixes of length <= 2 and the shard results are merged
//! by polynomial addition, so the output is independent of scheduling.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::{CatalyticPoly, UniPoly};
use crate::error::{Error, Result};
use crate::stats::{Composition, GepState};

/// Which statistic to tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKind {
    Gep,
    Inv,
    Maj,
}

/// Default brute-force cap on permutation length (n! growth).
pub const PERM_CAP: u64 = 10;
/// Default brute-force cap on total word length.
pub const WORD_TOTAL_CAP: u64 = 15;
/// Cap for the exact joint catalytic polynomial (validation-scale only).
pub const JOINT_TOTAL_CAP: u64 = 12;

fn check_cap(what: &'static str, requested: u64, cap: u64, reason: &'static str, allow_unsafe: bool) -> Result<()> {
    if requested > cap && !allow_unsafe {
        return Err(Error::CapExceeded { what, requested, cap, reason });
    }
    Ok(())
}

fn odd_triple(a: u32, b: u32, c: u32) -> bool {
    (a < c && c < b) || (b < a && a < c) || (c < b && b < a)
}

/// gep delta from appending `v` to `prefix`: the number of odd-pattern
/// triples whose last position is the new one.
fn perm_append_delta(prefix: &[u32], v: u32) -> u64 {
    let mut d = 0u64;
    for i in 0..prefix.len() {
        for j in i + 1..prefix.len() {
            if odd_triple(prefix[i], prefix[j], v) {
                d += 1;
            }
        }
    }
    d
}

fn perm_dfs(n: u32, prefix: &mut Vec<u32>, used: u32, gep: u64, counts: &mut Vec<u64>) {
    if prefix.len() == n as usize {
        counts[gep as usize] += 1;
        return;
    }
    for v in 1..=n {
        if used & (1 << v) != 0 {
            continue;
        }
        let d = perm_append_delta(prefix, v);
        prefix.push(v);
        perm_dfs(n, prefix, used | (1 << v), gep + d, counts);
        prefix.pop();
    }
}

fn counts_to_poly(counts: &[u64]) -> UniPoly {
    let mut poly = UniPoly::zero();
    for (e, &c) in counts.iter().enumerate() {
        if c != 0 {
            poly.add_term(e as u64, BigInt::from(c));
        }
    }
    poly
}

/// Gepner polynomial of the first kind: the gep distribution over S_n.
pub fn gepner_poly_perm(n: u64, allow_unsafe: bool) -> Result<UniPoly> {
    check_cap("permutation length", n, PERM_CAP, "cost grows as n!", allow_unsafe)?;
    let n = n as u32;
    let max_gep = if n >= 3 { (n as usize) * (n as usize - 1) * (n as usize - 2) / 6 } else { 0 };

    // shard on ordered prefixes of length 2 (length 1 below that)
    let mut shards: Vec<Vec<u32>> = Vec::new();
    if n < 3 {
        shards.push(Vec::new());
    } else {
        for a in 1..=n {
            for b in 1..=n {
                if a != b {
                    shards.push(vec![a, b]);
                }
            }
        }
    }

    let merged = shards
        .into_par_iter()
        .map(|prefix| {
            let mut counts = vec![0u64; max_gep + 1];
            let mut used = 0u32;
            let mut gep = 0u64;
            let mut p: Vec<u32> = Vec::with_capacity(n as usize);
            for &v in &prefix {
                gep += perm_append_delta(&p, v);
                p.push(v);
                used |= 1 << v;
            }
            perm_dfs(n, &mut p, used, gep, &mut counts);
            counts
        })
        .reduce(
            || vec![0u64; max_gep + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts_to_poly(&merged))
}

/// Incremental word-DFS state for whichever statistic is requested.
#[derive(Clone)]
struct WordState {
    stat: StatKind,
    gep: GepState,
    inv: u64,
    maj: u64,
    len: u64,
    last: u32,
}

impl WordState {
    fn new(stat: StatKind) -> Self {
        WordState { stat, gep: GepState::new(), inv: 0, maj: 0, len: 0, last: 0 }
    }

    fn append(&mut self, c: u32) {
        match self.stat {
            StatKind::Gep => self.gep.append(c).expect("letter in {1,2,3}"),
            StatKind::Inv => {
                // new inversions: prefix letters strictly above c
                let m = &self.gep.mult;
                self.inv += (c as usize..3).map(|i| m[i]).sum::<u64>();
                self.gep.mult[c as usize - 1] += 1;
            }
            StatKind::Maj => {
                if self.last > c {
                    self.maj += self.len; // descent at the previous position
                }
            }
        }
        self.len += 1;
        self.last = c;
    }

    fn value(&self) -> u64 {
        match self.stat {
            StatKind::Gep => self.gep.gep,
            StatKind::Inv => self.inv,
            StatKind::Maj => self.maj,
        }
    }
}

fn word_dfs(remaining: &mut [u64; 3], state: &WordState, counts: &mut Vec<u64>) {
    if remaining.iter().all(|&r| r == 0) {
        counts[state.value() as usize] += 1;
        return;
    }
    for c in 1..=3u32 {
        if remaining[c as usize - 1] == 0 {
            continue;
        }
        remaining[c as usize - 1] -= 1;
        let mut st = state.clone();
        st.append(c);
        word_dfs(remaining, &st, counts);
        remaining[c as usize - 1] += 1;
    }
}

fn three_counts(a: &Composition) -> Result<[u64; 3]> {
    if a.0.len() != 3 {
        return Err(Error::Domain {
            what: "word enumeration",
            needed: "a composition with exactly 3 parts",
            got: format!("{} parts", a.0.len()),
        });
    }
    Ok([a.0[0], a.0[1], a.0[2]])
}

/// Distribution polynomial of a statistic over the multiset words W(a1,a2,a3).
pub fn stat_poly_words(a: &Composition, stat: StatKind, allow_unsafe: bool) -> Result<UniPoly> {
    let counts3 = three_counts(a)?;
    let total = a.total();
    check_cap("word length", total, WORD_TOTAL_CAP, "multinomial growth", allow_unsafe)?;
    let max_val = match stat {
        StatKind::Gep => counts3[0] * counts3[1] * counts3[2],
        StatKind::Inv | StatKind::Maj => total.saturating_sub(1) * total / 2,
    } as usize;

    // shard on word prefixes of length <= 2
    let mut shards: Vec<Vec<u32>> = Vec::new();
    if total < 4 {
        shards.push(Vec::new());
    } else {
        for c1 in 1..=3u32 {
            if counts3[c1 as usize - 1] == 0 {
                continue;
            }
            for c2 in 1..=3u32 {
                let mut rem = counts3;
                rem[c1 as usize - 1] -= 1;
                if rem[c2 as usize - 1] == 0 {
                    continue;
                }
                shards.push(vec![c1, c2]);
            }
        }
    }

    let merged = shards
        .into_par_iter()
        .map(|prefix| {
            let mut counts = vec![0u64; max_val + 1];
            let mut rem = counts3;
            let mut st = WordState::new(stat);
            for &c in &prefix {
                rem[c as usize - 1] -= 1;
                st.append(c);
            }
            word_dfs(&mut rem, &st, &mut counts);
            counts
        })
        .reduce(
            || vec![0u64; max_val + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts_to_poly(&merged))
}

fn joint_dfs(remaining: &mut [u64; 3], st: &mut GepState, out: &mut CatalyticPoly) {
    if remaining.iter().all(|&r| r == 0) {
        out.add_term(
            [st.gep as u32, st.pairs.c32 as u32, st.pairs.c13 as u32, st.pairs.c21 as u32],
            BigInt::from(1),
        );
        return;
    }
    for c in 1..=3u32 {
        if remaining[c as usize - 1] == 0 {
            continue;
        }
        remaining[c as usize - 1] -= 1;
        st.append(c).expect("letter in {1,2,3}");
        joint_dfs(remaining, st, out);
        st.unappend(c);
        remaining[c as usize - 1] += 1;
    }
}

/// The exact 4-variable polynomial
/// sum_w q^gep(w) t32^#32(w) t13^#13(w) t21^#21(w), by exhaustive
/// generation. Oracle for the catalytic recurrence engine.
pub fn joint_catalytic_poly(a: &Composition, allow_unsafe: bool) -> Result<CatalyticPoly> {
    let mut rem = three_counts(a)?;
    check_cap("word length", a.total(), JOINT_TOTAL_CAP, "validation-scale oracle", allow_unsafe)?;
    let mut out = CatalyticPoly::zero();
    let mut st = GepState::new();
    joint_dfs(&mut rem, &mut st, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gaussian_multinomial, multinomial};
    use crate::stats::{self, Word};

    #[test]
    fn g3_and_g4() {
        assert_eq!(gepner_poly_perm(3, false).unwrap(), UniPoly::from_terms(&[(3, 1), (3, 0)]));
        assert_eq!(
            gepner_poly_perm(4, false).unwrap(),
            UniPoly::from_terms(&[(4, 4), (16, 2), (4, 0)])
        );
    }

    #[test]
    fn perm_cap_refused() {
        assert!(matches!(
            gepner_poly_perm(11, false),
            Err(Error::CapExceeded { .. })
        ));
    }

    // The incremental DFS must agree with per-permutation recomputation by
    // the definitional O(n^3) oracle.
    #[test]
    fn incremental_matches_naive_oracle() {
        for n in 1..=7u32 {
            let mut counts = vec![0u64; (n as usize).pow(3) / 6 + 1];
            let mut perm: Vec<u32> = (1..=n).collect();
            // Heap's algorithm
            fn heap(k: usize, perm: &mut Vec<u32>, counts: &mut Vec<u64>) {
                if k == 1 {
                    let g = stats::gep(&Word(perm.clone()));
                    counts[g as usize] += 1;
                    return;
                }
                for i in 0..k {
                    heap(k - 1, perm, counts);
                    if k % 2 == 0 {
                        perm.swap(i, k - 1);
                    } else {
                        perm.swap(0, k - 1);
                    }
                }
            }
            heap(n as usize, &mut perm, &mut counts);
            assert_eq!(gepner_poly_perm(n as u64, false).unwrap(), counts_to_poly(&counts));
        }
    }

    #[test]
    fn word_polys_small() {
        let a111 = Composition(vec![1, 1, 1]);
        assert_eq!(
            stat_poly_words(&a111, StatKind::Gep, false).unwrap(),
            UniPoly::from_terms(&[(3, 1), (3, 0)])
        );
        let inv = stat_poly_words(&a111, StatKind::Inv, false).unwrap();
        let maj = stat_poly_words(&a111, StatKind::Maj, false).unwrap();
        assert_eq!(inv, UniPoly::from_terms(&[(1, 0), (2, 1), (2, 2), (1, 3)]));
        assert_eq!(inv, maj);
        assert_eq!(inv, gaussian_multinomial(&a111));
    }

    #[test]
    fn coefficient_sum_is_multinomial() {
        for a in [[2u64, 1, 3], [3, 3, 3], [0, 4, 2]] {
            let comp = Composition(a.to_vec());
            for stat in [StatKind::Gep, StatKind::Inv, StatKind::Maj] {
                let p = stat_poly_words(&comp, stat, false).unwrap();
                assert_eq!(p.eval_one(), multinomial(&comp));
            }
        }
    }

    #[test]
    fn joint_poly_small() {
        // W(1,0,0): the single word "1", all statistics zero
        let p = joint_catalytic_poly(&Composition(vec![1, 0, 0]), false).unwrap();
        assert_eq!(p, CatalyticPoly::one());

        // W(0,1,1): word 23 contributes 1, word 32 contributes t32
        let p = joint_catalytic_poly(&Composition(vec![0, 1, 1]), false).unwrap();
        let mut expect = CatalyticPoly::one();
        expect.add_term([0, 1, 0, 0], BigInt::from(1));
        assert_eq!(p, expect);
    }

    #[test]
    fn joint_specializes_to_gep_poly() {
        for a in [[1u64, 1, 1], [2, 2, 2], [3, 2, 1], [0, 3, 3], [4, 1, 2]] {
            let comp = Composition(a.to_vec());
            let joint = joint_catalytic_poly(&comp, false).unwrap();
            let gep = stat_poly_words(&comp, StatKind::Gep, false).unwrap();
            assert_eq!(joint.specialize_t_one(), gep);
        }
    }
}
