//! Cross-module invariants on randomized inputs.

use bineuler_core::bijection::{omega, omega_inv};
use bineuler_core::eulerian::{
    binomial_eulerian_polys, binomial_eulerian_threeterm_poly, symmetric_identity_sides,
    EulerianTable, Route,
};
use bineuler_core::perm::Permutation;
use bineuler_core::poly::IntPoly;
use bineuler_core::realroot::{count_real_roots, is_real_rooted, Bound};
use bineuler_core::table::{TableFamily, Triangle};
use bineuler_core::EnumLimit;
use num_bigint::BigInt;
use proptest::prelude::*;

/// A member of `Q_n`: an increasing run ending in `n`, then anything.
fn q_member(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n - 1),
            Just((1..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(move |(take, shuffled)| {
                let mut prefix: Vec<usize> = (1..n).filter(|&v| take[v - 1]).collect();
                prefix.push(n);
                prefix.extend(shuffled.into_iter().filter(|&v| !take[v - 1]));
                Permutation::new(prefix).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn omega_round_trips_and_transports(pi in q_member(9)) {
        prop_assert!(pi.is_in_q());
        let img = omega(&pi).unwrap();
        prop_assert!(img.is_in_q());
        prop_assert_eq!(pi.des(), img.asc());
        prop_assert_eq!(omega_inv(&img).unwrap(), pi);
    }

    #[test]
    fn gamma_vector_round_trips(n in 0usize..40) {
        let p = binomial_eulerian_threeterm_poly(n);
        let g = p.gamma_vector(n).unwrap();
        prop_assert!(g.iter().all(|c| *c >= BigInt::from(0)));
        prop_assert_eq!(IntPoly::from_gamma_vector(&g, n), p);
    }

    #[test]
    fn closed_routes_agree(n in 0usize..30) {
        let lim = EnumLimit::default();
        let reference = binomial_eulerian_polys(n, Route::ThreeTerm, lim).unwrap();
        for route in Route::CLOSED {
            prop_assert_eq!(&binomial_eulerian_polys(n, route, lim).unwrap(), &reference);
        }
    }

    #[test]
    fn symmetric_identity_random_cells(a in 1usize..30, b in 1usize..30) {
        let t = EulerianTable::build(a + b);
        let (l, r) = symmetric_identity_sides(a, b, &t).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn sturm_counts_rational_roots(
        roots in prop::collection::btree_set((1i64..6, -12i64..12), 0..6),
    ) {
        // Factors (a x - b); equal ratios b/a give repeated roots.
        let p = roots.iter().fold(IntPoly::from_i64s(&[1]), |acc, &(a, b)| {
            &acc * &IntPoly::from_i64s(&[-b, a])
        });
        let ratios: std::collections::BTreeSet<(i64, i64)> = roots
            .iter()
            .map(|&(a, b)| {
                let g = num_integer::gcd(a, b);
                (a / g, b / g)
            })
            .collect();
        let c = count_real_roots(&p, &Bound::NegInf, &Bound::PosInf).unwrap();
        prop_assert_eq!(c.distinct, ratios.len());
        prop_assert_eq!(c.with_multiplicity, roots.len());
        prop_assert!(is_real_rooted(&p).unwrap());
    }

    #[test]
    fn csv_has_one_line_per_cell(n in 0usize..15) {
        for f in TableFamily::ALL {
            let t = Triangle::build(f, n);
            let cells: usize = t.rows.iter().map(Vec::len).sum();
            prop_assert_eq!(t.to_csv().lines().count(), cells + 1);
        }
    }
}
