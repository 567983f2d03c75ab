//! Randomized algebraic properties of the polynomial types.

use num_bigint::BigInt;
use proptest::prelude::*;

use gepner::algebra::numbers::Rat;
use gepner::algebra::{gaussian_multinomial, interpolate, multinomial, CatalyticPoly, TruncSeries, UniPoly};
use gepner::stats::Composition;

fn arb_unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((-20i64..=20, 0u64..12), 0..8)
        .prop_map(|terms| UniPoly::from_terms(&terms))
}

fn arb_catalytic() -> impl Strategy<Value = CatalyticPoly> {
    prop::collection::vec(((-9i64..=9), [0u32..4, 0u32..4, 0u32..4, 0u32..4]), 0..6).prop_map(
        |terms| {
            let mut p = CatalyticPoly::zero();
            for (c, e) in terms {
                p.add_term(e, BigInt::from(c));
            }
            p
        },
    )
}

proptest! {
    #[test]
    fn unipoly_add_commutes(a in arb_unipoly(), b in arb_unipoly()) {
        let mut ab = a.clone();
        ab.add_assign(&b);
        let mut ba = b.clone();
        ba.add_assign(&a);
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn unipoly_mul_commutes_and_distributes(
        a in arb_unipoly(), b in arb_unipoly(), c in arb_unipoly()
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        // a*(b+c) = a*b + a*c
        let mut bc = b.clone();
        bc.add_assign(&c);
        let mut rhs = a.mul(&b);
        rhs.add_assign(&a.mul(&c));
        prop_assert_eq!(a.mul(&bc), rhs);
    }

    #[test]
    fn eval_at_one_is_a_ring_morphism(a in arb_unipoly(), b in arb_unipoly()) {
        prop_assert_eq!(a.mul(&b).eval_one(), a.eval_one() * b.eval_one());
    }

    #[test]
    fn gaussian_multinomial_counts_words(
        a1 in 0u64..5, a2 in 0u64..5, a3 in 0u64..4
    ) {
        let comp = Composition(vec![a1, a2, a3]);
        let g = gaussian_multinomial(&comp);
        prop_assert_eq!(g.eval_one(), multinomial(&comp));
        let top = a1 * a2 + a1 * a3 + a2 * a3;
        prop_assert!(g.is_palindromic(top));
    }

    #[test]
    fn interpolation_reproduces_its_points(
        ys in prop::collection::vec(-50i64..=50, 1..7)
    ) {
        let points: Vec<(i64, Rat)> = ys
            .iter()
            .enumerate()
            .map(|(i, &y)| (i as i64, Rat::from_integer(BigInt::from(y))))
            .collect();
        let p = interpolate(&points).unwrap();
        for (x, y) in &points {
            prop_assert_eq!(&p.eval_int(*x), y);
        }
        prop_assert!(p.degree().unwrap_or(0) < points.len());
    }

    #[test]
    fn truncated_mul_is_truncation_of_exact_mul(
        a in arb_catalytic(), b in arb_catalytic(), order in 1usize..6
    ) {
        let ta = truncate(&a, order);
        let tb = truncate(&b, order);
        let exact = truncate(&a.mul(&b), order);
        prop_assert_eq!(ta.mul(&tb), exact);
    }
}

/// Read a four-variable polynomial into a truncated series, dropping terms
/// beyond the order (which TruncSeries::add_term does by construction).
fn truncate(p: &CatalyticPoly, order: usize) -> TruncSeries {
    let mut s = TruncSeries::zero(order);
    for (e, c) in p.terms() {
        s.add_term([e[0] as u8, e[1] as u8, e[2] as u8, e[3] as u8], c.clone());
    }
    s
}
