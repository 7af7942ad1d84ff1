use num_bigint::BigInt;
use proptest::prelude::*;
use taut_core::poly::{ExactMatrix, Polynomial, Rational};
use taut_core::taut_ring::GradedRing;
use taut_core::weyl::{all_elements, EOType, SignedPermutation};

const W: [u32; 3] = [1, 2, 3];

fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..=5, 1i64..4), 0..6).prop_map(
        |terms| {
            Polynomial::from_terms(
                &W,
                terms
                    .into_iter()
                    .map(|((a, b, c), n, d)| (vec![a, b, c], Rational::new(n, d).unwrap())),
            )
            .unwrap()
        },
    )
}

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    // sparse-ish small entries so that rank deficiency actually occurs
    proptest::collection::vec(
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..=3], cols),
        rows,
    )
}

fn to_exact(m: &[Vec<i64>]) -> ExactMatrix {
    ExactMatrix::from_rows(
        m.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect(),
    )
    .unwrap()
}

/// Fraction-free Bareiss elimination over the integers.
fn bareiss_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| a[i][c] != BigInt::from(0)) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::from(0);
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn polynomial_ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Polynomial::one(&W)), a.clone());
    }

    #[test]
    fn graded_decomposition_sums_back(a in poly_strategy()) {
        let parts = a.homogeneous_components();
        let mut total = Polynomial::zero(&W);
        for (d, p) in &parts {
            prop_assert!(p.is_homogeneous());
            prop_assert_eq!(p.degree(), Some(*d));
            total = total.add(p);
        }
        prop_assert_eq!(total, a);
    }

    #[test]
    fn text_round_trip(a in poly_strategy()) {
        let back = Polynomial::parse(&a.to_text("u"), &W, "u").unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn row_reduce_is_idempotent(m in matrix_strategy(6, 8)) {
        let e = to_exact(&m);
        let (r, pivots) = e.row_reduce();
        let (r2, pivots2) = r.row_reduce();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(pivots, pivots2);
        prop_assert_eq!(e.rank(), e.transpose().rank());
    }

    #[test]
    fn rank_matches_fraction_free_elimination(m in matrix_strategy(20, 30)) {
        prop_assert_eq!(to_exact(&m).rank(), bareiss_rank(&m));
    }

    #[test]
    fn normal_form_is_a_ring_map(a in poly_strategy(), b in poly_strategy()) {
        let ring = GradedRing::tautological(3).unwrap();
        let na = ring.normal_form(&a).unwrap();
        let nb = ring.normal_form(&b).unwrap();
        prop_assert_eq!(ring.normal_form(&a.mul(&b)).unwrap(), ring.multiply(&na, &nb).unwrap());
        prop_assert_eq!(ring.normal_form(&a.add(&b)).unwrap(), ring.add(&na, &nb).unwrap());
        prop_assert_eq!(ring.normal_form(na.polynomial()).unwrap(), na);
    }

    #[test]
    fn composition_is_associative(i in 0usize..384, j in 0usize..384, k in 0usize..384) {
        let w = all_elements(4);
        let (a, b, c) = (&w[i], &w[j], &w[k]);
        let left = a.compose(b).unwrap().compose(c).unwrap();
        let right = a.compose(&b.compose(c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), SignedPermutation::identity(4));
        let text = format!("{a}");
        prop_assert_eq!(&text.parse::<SignedPermutation>().unwrap(), a);
    }

    #[test]
    fn eo_type_text_round_trip(mask in 0u32..64) {
        let parts: Vec<u32> = (1..=6).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let t = EOType::new(6, parts).unwrap();
        prop_assert_eq!(EOType::parse(6, &format!("{t}")).unwrap(), t);
    }
}
