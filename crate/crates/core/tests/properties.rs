use proptest::prelude::*;

use num_bigint::BigInt;

use ucayley::arith;
use ucayley::coherent;
use ucayley::graphs::{self, ConnectionSet, DenseGraph};
use ucayley::polynomials::{self, IntPoly};
use ucayley::spectra::{self, Spectrum};

/// A symmetric connection set on `Z_n` from a bitmask over `1..=n/2`.
fn circulant(n: usize, mask: u64) -> ConnectionSet {
    let elems = (1..=n / 2)
        .filter(|s| mask >> (s - 1) & 1 == 1)
        .flat_map(|s| [s, n - s]);
    ConnectionSet::new(n, elems).unwrap()
}

fn arb_circulant(max_n: usize) -> impl Strategy<Value = ConnectionSet> {
    (3..=max_n, any::<u64>()).prop_map(|(n, mask)| circulant(n, mask))
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..=20, 0..=max_deg + 1).prop_map(|c| IntPoly::from_i64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_divisor_sum(n in 1u64..100_000, m in any::<u32>()) {
        let m = m as u64;
        prop_assert_eq!(arith::ramanujan_closed(n, m).unwrap(), arith::ramanujan_divisor_sum(n, m).unwrap());
        prop_assert_eq!(arith::ramanujan_closed(n, m).unwrap(), arith::ramanujan_closed(n, m % n).unwrap());
    }

    #[test]
    fn closed_form_matches_direct_sum(n in 1u64..3000, m in 0u64..3000) {
        prop_assert_eq!(arith::ramanujan_closed(n, m).unwrap(), arith::ramanujan_direct(n, m).unwrap());
    }

    #[test]
    fn ramanujan_sums_are_multiplicative(a in 1u64..300, b in 1u64..300, m in 0u64..10_000) {
        prop_assume!(arith::gcd(a, b) == 1);
        prop_assert_eq!(
            arith::ramanujan_closed(a * b, m).unwrap(),
            arith::ramanujan_closed(a, m).unwrap() * arith::ramanujan_closed(b, m).unwrap()
        );
    }

    #[test]
    fn division_identity(a in arb_poly(12), b in arb_poly(6), lead in prop::sample::select(vec![-1i64, 1])) {
        let monic_b = b + IntPoly::monomial(lead, 7);
        let (q, r) = a.div_rem(&monic_b).unwrap();
        prop_assert_eq!(&(&q * &monic_b) + &r, a);
        prop_assert!(r.degree().is_none_or(|d| d < 7));
    }

    #[test]
    fn gcd_divides_both(a in arb_poly(8), b in arb_poly(8), c in arb_poly(4)) {
        prop_assume!(!c.is_zero());
        let (a, b) = (&a * &c, &b * &c);
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = polynomials::poly_gcd(&a, &b).unwrap();
        prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
        prop_assert!(g.degree() >= c.degree() || a.is_zero() || b.is_zero());
    }

    #[test]
    fn spectrum_json_round_trip(n in 1u64..1000, pairs in prop::collection::vec((-1000i64..1000, 1u64..50), 0..10)) {
        let s = Spectrum::from_pairs(n, pairs);
        let back: Spectrum = serde_json::from_str(&s.to_json()).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn edge_list_round_trip(n in 1usize..40, edges in prop::collection::vec((0usize..40, 0usize..40), 0..120)) {
        let edges: Vec<_> = edges.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
        let g = DenseGraph::from_edges(n, edges).unwrap();
        let back = DenseGraph::from_edge_list(n, &g.to_edge_list()).unwrap();
        prop_assert_eq!(back.adjacency(), g.adjacency());
    }

    #[test]
    fn wl_colour_count_ignores_initial_labels(set in arb_circulant(24), shift in 1u32..1000) {
        let g = set.materialize();
        let n = g.order();
        let base = coherent::wl_closure(&g).unwrap();
        let initial: Vec<u32> = (0..n * n)
            .map(|i| {
                let (u, v) = (i / n, i % n);
                let class = if u == v { 2 } else if g.has_edge(u, v) { 0 } else { 1 };
                class * shift + 5
            })
            .collect();
        prop_assert!(coherent::wl_refine(n, &initial).same_partition(&base));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn srg_tests_agree_on_random_circulants(set in arb_circulant(40)) {
        let g = set.materialize();
        let combinatorial = graphs::is_strongly_regular_combinatorial(&g).is_some();
        let distinct = spectra::oracle_char_poly(&g).unwrap().distinct_root_count().unwrap();
        let spectral = graphs::bfs_all_pairs(&g).is_connected() && distinct == 3;
        prop_assert_eq!(combinatorial, spectral);
    }

    #[test]
    fn integral_spectrum_iff_gcd_classes(set in arb_circulant(24)) {
        let g = set.materialize();
        let n = g.order();
        let (_, leftover) = spectra::integer_roots(&spectra::oracle_char_poly(&g).unwrap(), n as i64);
        let integral = leftover.degree() == Some(0);
        let by_orbits = graphs::unit_orbits(n).values().all(|orbit| {
            orbit.iter().all(|&s| set.contains(s)) || orbit.iter().all(|&s| !set.contains(s))
        });
        prop_assert_eq!(coherent::span_membership(&g).unwrap(), by_orbits);
        prop_assert_eq!(integral, by_orbits);
    }
}

#[test]
fn constant_leftover_is_one() {
    let set = circulant(6, 0b11);
    let p = spectra::oracle_char_poly(&set.materialize()).unwrap();
    let (s, leftover) = spectra::integer_roots(&p, 6);
    assert_eq!(leftover, IntPoly::one());
    assert_eq!(s.total_multiplicity(), 6);
    assert_eq!(p.eval(&BigInt::from(s.largest().unwrap().0)), BigInt::from(0));
}
