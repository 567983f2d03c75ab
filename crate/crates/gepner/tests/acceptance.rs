//! The release gate. Each criterion prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them. The long
//! criteria share one truncated sweep through a process-wide fixture.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use gepner::algebra::numbers::Rat;
use gepner::algebra::{gaussian_multinomial, RatPoly, UniPoly};
use gepner::distributions::{classify, logistic_moment, Candidate, Verdict};
use gepner::enumerate::{self, StatKind};
use gepner::moments::{
    fit_moment_polynomial, limit_standardized, perms_moment_table, words_moment_tables, Limit,
    MomentKind, MomentTable,
};
use gepner::recurrence;
use gepner::stats::{self, Composition, Word};

fn report<F: FnOnce()>(label: &str, body: F) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {label}: PASS"),
        Err(e) => {
            println!("criterion {label}: FAIL");
            resume_unwind(e);
        }
    }
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn rn(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn poly(terms: &[(i64, u64)]) -> UniPoly {
    UniPoly::from_terms(terms)
}

// ---------------------------------------------------------------- fixtures

fn g_first_kind(n: u64) -> UniPoly {
    match n {
        1 => poly(&[(1, 0)]),
        2 => poly(&[(2, 0)]),
        3 => poly(&[(3, 1), (3, 0)]),
        4 => poly(&[(4, 4), (16, 2), (4, 0)]),
        5 => poly(&[(5, 10), (25, 7), (25, 6), (10, 5), (25, 4), (25, 3), (5, 0)]),
        6 => poly(&[
            (6, 20), (36, 16), (72, 14), (138, 12), (216, 10), (138, 8), (72, 6), (36, 4), (6, 0),
        ]),
        7 => poly(&[
            (7, 35), (49, 30), (98, 27), (49, 26), (98, 25), (98, 24), (147, 23), (441, 22),
            (308, 21), (196, 20), (490, 19), (539, 18), (539, 17), (490, 16), (196, 15),
            (308, 14), (441, 13), (147, 12), (98, 11), (98, 10), (49, 9), (98, 8), (49, 5), (7, 0),
        ]),
        8 => poly(&[
            (8, 56), (64, 50), (128, 46), (288, 44), (128, 42), (896, 40), (1344, 38),
            (1600, 36), (3200, 34), (4792, 32), (4352, 30), (6720, 28), (4352, 26), (4792, 24),
            (3200, 22), (1600, 20), (1344, 18), (896, 16), (128, 14), (288, 12), (128, 10),
            (64, 6), (8, 0),
        ]),
        _ => unreachable!(),
    }
}

fn g_second_kind(n: u64) -> UniPoly {
    match n {
        1 => poly(&[(3, 1), (3, 0)]),
        2 => poly(&[(6, 8), (21, 6), (36, 4), (21, 2), (6, 0)]),
        3 => poly(&[
            (9, 27), (27, 24), (108, 21), (264, 18), (432, 15), (432, 12), (264, 9), (108, 6),
            (27, 3), (9, 0),
        ]),
        4 => poly(&[
            (12, 64), (36, 60), (108, 56), (336, 52), (870, 48), (2016, 44), (4041, 40),
            (6252, 36), (7308, 32), (6252, 28), (4041, 24), (2016, 20), (870, 16), (336, 12),
            (108, 8), (36, 4), (12, 0),
        ]),
        5 => poly(&[
            (15, 125), (45, 120), (135, 115), (330, 110), (900, 105), (2115, 100), (4710, 95),
            (10230, 90), (21195, 85), (40290, 80), (69423, 75), (102780, 70), (126210, 65),
            (126210, 60), (102780, 55), (69423, 50), (40290, 45), (21195, 40), (10230, 35),
            (4710, 30), (2115, 25), (900, 20), (330, 15), (135, 10), (45, 5), (15, 0),
        ]),
        _ => unreachable!(),
    }
}

/// Known central moments of the word statistic, evaluated exactly at n.
fn words_central_at(r: u64, n: u64) -> Rat {
    let n = rn(n);
    let p = |e: u32| -> Rat {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc *= &n;
        }
        acc
    };
    match r {
        2 => rat(1, 4) * p(4),
        4 => rat(1, 80) * p(7) * (rat(21, 1) * &n - rat(16, 1)),
        6 => {
            rat(1, 448)
                * p(9)
                * (rat(279, 1) * p(3) - rat(656, 1) * p(2) + rat(512, 1) * &n - rat(128, 1))
        }
        8 => {
            rat(1, 1280)
                * p(11)
                * (rat(3429, 1) * p(5) - rat(16480, 1) * p(4) + rat(32512, 1) * p(3)
                    - rat(32512, 1) * p(2)
                    + rat(16384, 1) * &n
                    - rat(3328, 1))
        }
        10 => {
            rat(1, 11264)
                * p(13)
                * (rat(3, 1) * &n - rat(4, 1))
                * (rat(68985, 1) * p(6) - rat(469716, 1) * p(5) + rat(1391760, 1) * p(4)
                    - rat(2251584, 1) * p(3)
                    + rat(2072832, 1) * p(2)
                    - rat(1022208, 1) * &n
                    + rat(209920, 1))
        }
        12 => {
            p(15)
                * (rat(343717911, 1863680) * p(9) - rat(265635477, 116480) * p(8)
                    + rat(93771627, 7280) * p(7)
                    - rat(45012561, 1040) * p(6)
                    + rat(43093563, 455) * p(5)
                    - rat(77940021, 560) * p(4)
                    + rat(62196357, 455) * p(3)
                    - rat(39213532, 455) * p(2)
                    + rat(14354176, 455) * &n
                    - rat(463661, 91))
        }
        _ => unreachable!(),
    }
}

/// Known central moments of the permutation statistic, evaluated at n.
fn perms_central_at(r: u64, n: u64) -> Rat {
    let n = rn(n);
    let p = |e: u32| -> Rat {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc *= &n;
        }
        acc
    };
    let fall = (&n - Rat::one()) * (&n - rat(2, 1));
    match r {
        1 => rat(1, 12) * &n * fall,
        2 => rat(1, 72) * p(2) * fall,
        4 => {
            rat(1, 43200)
                * p(3)
                * fall
                * (rat(29, 1) * p(3) - rat(71, 1) * p(2) - rat(26, 1) * &n - rat(16, 1))
        }
        _ => unreachable!(),
    }
}

/// Fitted polynomial equals a closed form: agreement at more points than
/// the degree forces identity.
fn assert_matches_formula(fitted: &RatPoly, f: impl Fn(u64) -> Rat) {
    let degree = fitted.degree().unwrap_or(0);
    for n in 1..=(degree as u64 + 2) {
        assert_eq!(fitted.eval_int(n as i64), f(n), "mismatch at n={n}");
    }
}

// ------------------------------------------------------- shared fixtures

/// One truncated sweep (n <= 27, r = 12) shared by criteria 6 and 7.
fn word_tables() -> &'static [MomentTable] {
    static TABLES: OnceLock<Vec<MomentTable>> = OnceLock::new();
    TABLES.get_or_init(|| words_moment_tables(27, 12, None).expect("truncated sweep"))
}

/// Moment tables from brute-force G_1..G_10, shared by criterion 8.
fn perm_tables() -> &'static [MomentTable] {
    static TABLES: OnceLock<Vec<MomentTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (1..=10)
            .map(|n| perms_moment_table(n, 4, false).expect("perm table"))
            .collect()
    })
}

// ------------------------------------------------------------- criteria

#[test]
fn criterion_1_first_kind_polynomials() {
    report("1 (first-kind polynomials G_1..G_8)", || {
        for n in 1..=8 {
            let g = enumerate::gepner_poly_perm(n, false).unwrap();
            assert_eq!(g, g_first_kind(n), "G_{n}");
        }
        assert_eq!(g_first_kind(7).num_terms(), 24);
    });
}

#[test]
fn criterion_2_second_kind_polynomials() {
    report("2 (second-kind polynomials g_1..g_5, both engines)", || {
        for n in 1..=5u64 {
            let a = Composition(vec![n, n, n]);
            let brute = enumerate::stat_poly_words(&a, StatKind::Gep, true).unwrap();
            let fast = recurrence::gepner_poly_words_fast(&a).unwrap();
            assert_eq!(brute, g_second_kind(n), "g_{n} brute");
            assert_eq!(fast, g_second_kind(n), "g_{n} catalytic");
        }
    });
}

#[test]
fn criterion_3_macmahon() {
    report("3 (MacMahon four-way equality, a_i <= 4)", || {
        for a1 in 0..=4 {
            for a2 in 0..=4 {
                for a3 in 0..=4 {
                    let a = Composition(vec![a1, a2, a3]);
                    let inv = enumerate::stat_poly_words(&a, StatKind::Inv, false).unwrap();
                    let maj = enumerate::stat_poly_words(&a, StatKind::Maj, false).unwrap();
                    let gauss = gaussian_multinomial(&a);
                    let rec = recurrence::inv_poly_recurrence(a1, a2, a3);
                    assert_eq!(inv, maj, "({a1},{a2},{a3})");
                    assert_eq!(inv, gauss, "({a1},{a2},{a3})");
                    assert_eq!(inv, rec, "({a1},{a2},{a3})");
                }
            }
        }
    });
}

#[test]
fn criterion_4_catalytic_oracle_equivalence() {
    report("4 (catalytic engine vs brute joint polynomial, total <= 9)", || {
        for a1 in 0..=9u64 {
            for a2 in 0..=9 - a1 {
                for a3 in 0..=9 - a1 - a2 {
                    let a = Composition(vec![a1, a2, a3]);
                    let brute = enumerate::joint_catalytic_poly(&a, false).unwrap();
                    let fast = recurrence::f_catalytic(a1, a2, a3);
                    assert_eq!(brute, fast, "({a1},{a2},{a3})");
                }
            }
        }
    });
}

#[test]
fn criterion_5_truncation_soundness() {
    report("5 (truncated engine vs exact Taylor coefficients, n <= 4, r <= 12)", || {
        let diags = recurrence::h_truncated(4, 12, None).unwrap();
        for n in 1..=4u64 {
            let a = Composition(vec![n, n, n]);
            let exact = enumerate::stat_poly_words(&a, StatKind::Gep, false).unwrap();
            assert_eq!(diags[n as usize], exact.taylor_at_one(12), "n={n}");
        }
    });
}

#[test]
fn criterion_6_words_moment_formulas() {
    report("6 (fitted word central moments r = 2..12 over n = 1..27)", || {
        let tables = word_tables();
        for r in (2..=12u64).step_by(2) {
            let fitted = fit_moment_polynomial(tables, MomentKind::Central(r), 2).unwrap();
            assert_eq!(fitted.degree(), Some(2 * r as usize), "m_{r} degree");
            assert_matches_formula(&fitted, |n| words_central_at(r, n));
        }
        let m12 = fit_moment_polynomial(tables, MomentKind::Central(12), 2).unwrap();
        assert_eq!(m12.leading().unwrap(), &rat(343717911, 1863680));
    });
}

#[test]
fn criterion_7_words_limits_and_verdicts() {
    report("7 (limiting standardized word moments and verdicts)", || {
        let tables = word_tables();
        let m2 = fit_moment_polynomial(tables, MomentKind::Central(2), 2).unwrap();
        let expected: BTreeMap<u64, Rat> = [
            (4, rat(21, 5)),
            (6, rat(279, 7)),
            (8, rat(3429, 5)),
            (10, rat(206955, 11)),
            (12, rat(343717911, 455)),
        ]
        .into_iter()
        .collect();
        let mut kappas = BTreeMap::new();
        for (&r, want) in &expected {
            let mr = fit_moment_polynomial(tables, MomentKind::Central(r), 2).unwrap();
            match limit_standardized(&mr, &m2, r).unwrap() {
                Limit::Finite(k) => {
                    assert_eq!(&k, want, "kappa_{r}");
                    // and the closed logistic-moment formula agrees
                    assert_eq!(k, logistic_moment(r), "kappa_{r} vs formula");
                    kappas.insert(r, k);
                }
                Limit::Divergent => panic!("kappa_{r} divergent"),
            }
        }
        let verdicts = classify(&kappas).unwrap();
        let of = |c: Candidate| {
            verdicts
                .iter()
                .find(|v| v.candidate == c)
                .unwrap()
                .verdict
                .clone()
        };
        assert_eq!(of(Candidate::Logistic), Verdict::MatchesAllTested);
        assert_eq!(of(Candidate::Normal), Verdict::RejectedAtOrder(4));
    });
}

#[test]
fn criterion_8_perm_moments() {
    report("8 (fitted permutation moments from G_1..G_10, kurtosis 87/25)", || {
        let tables = perm_tables();
        let mean = fit_moment_polynomial(tables, MomentKind::Mean, 2).unwrap();
        assert_matches_formula(&mean, |n| perms_central_at(1, n));
        let m2 = fit_moment_polynomial(tables, MomentKind::Central(2), 2).unwrap();
        assert_matches_formula(&m2, |n| perms_central_at(2, n));
        // degree 8 on ten data points leaves room for a single guard
        let m4 = fit_moment_polynomial(tables, MomentKind::Central(4), 1).unwrap();
        assert_matches_formula(&m4, |n| perms_central_at(4, n));
        assert_eq!(
            limit_standardized(&m4, &m2, 4).unwrap(),
            Limit::Finite(rat(87, 25))
        );
    });
}

#[test]
fn criterion_9_property_suite() {
    report("9 (reversal, palindromicity, odd moments, normalization, determinism)", || {
        // reversal identity, exhaustive over {1,2,3}-words of length <= 8
        let mut w: Vec<u32> = vec![1];
        loop {
            let word = Word(w.clone());
            let counts: [u64; 3] = [1, 2, 3].map(|l| w.iter().filter(|&&x| x == l).count() as u64);
            assert_eq!(
                stats::gep(&word) + stats::gep(&word.reversed()),
                counts[0] * counts[1] * counts[2],
                "{w:?}"
            );
            if !advance(&mut w, 8) {
                break;
            }
        }
        // ... and over permutations: gep + reversed gep = C(n,3)
        for n in 1..=8u64 {
            let g = enumerate::gepner_poly_perm(n, false).unwrap();
            let top = if n >= 3 { n * (n - 1) * (n - 2) / 6 } else { 0 };
            assert!(g.is_palindromic(top), "G_{n} palindromic");
            assert_eq!(g.eval_one(), factorial(n), "G_{n}(1)");
        }
        // palindromicity of the word polynomials, total <= 12
        for a1 in 0..=12u64 {
            for a2 in 0..=12 - a1 {
                for a3 in 0..=12 - a1 - a2 {
                    let a = Composition(vec![a1, a2, a3]);
                    let g = enumerate::stat_poly_words(&a, StatKind::Gep, false).unwrap();
                    assert!(g.is_palindromic(a1 * a2 * a3), "({a1},{a2},{a3})");
                }
            }
        }
        // vanishing odd central moments and normalization for words
        let diags = recurrence::h_truncated(4, 7, None).unwrap();
        for n in 1..=4u64 {
            let g = recurrence::gepner_poly_words_fast(&Composition(vec![n, n, n])).unwrap();
            let pop = factorial(3 * n) / (factorial(n).pow(3));
            assert_eq!(g.eval_one(), pop, "g_{n}(1)");
            assert_eq!(diags[n as usize][0], pop, "truncated population n={n}");
            let t = gepner::moments::moments_from_poly(gepner::moments::Family::Words, n, &g, 7)
                .unwrap();
            for r in [1usize, 3, 5, 7] {
                assert!(t.central(r).is_zero(), "odd m_{r} at n={n}");
            }
        }
        // determinism: identical output under different worker counts
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| {
                (
                    recurrence::h_truncated(6, 6, None).unwrap(),
                    enumerate::gepner_poly_perm(7, false).unwrap(),
                )
            })
        };
        assert_eq!(run(1), run(4));
    });
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

/// Next {1,2,3}-word of length <= max, lengths before lexicographic rank.
fn advance(w: &mut Vec<u32>, max: usize) -> bool {
    for i in (0..w.len()).rev() {
        if w[i] < 3 {
            w[i] += 1;
            return true;
        }
        w[i] = 1;
    }
    if w.len() < max {
        w.iter_mut().for_each(|l| *l = 1);
        w.push(1);
        return true;
    }
    false
}
