//! Exhaustive checks of the structural invariants over fixed ranges of `n`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use ucayley::arith::{self, factorize};
use ucayley::coherent;
use ucayley::graphs::{self, unitary_graph, ConnectionSet};
use ucayley::polynomials::{self, IntPoly};
use ucayley::spectra;

#[test]
fn ramanujan_depends_only_on_gcd() {
    for n in 1..=200u64 {
        for m in 0..n {
            let d = arith::gcd(m, n);
            assert_eq!(
                arith::ramanujan_closed(n, m).unwrap(),
                arith::ramanujan_closed(n, d).unwrap(),
                "c_{n}({m})"
            );
            assert_eq!(arith::ramanujan_closed(n, m + 3 * n).unwrap(), arith::ramanujan_closed(n, m).unwrap());
        }
    }
}

#[test]
fn phi_counts_coprime_residues() {
    for n in 1..=500u64 {
        let brute = (0..n).filter(|&m| arith::gcd(m, n) == 1).count() as u64;
        assert_eq!(arith::euler_phi(n).unwrap(), brute, "n={n}");
        assert_eq!(arith::units(n).len() as u64, brute.max(1));
    }
}

#[test]
fn d_star_size_bound() {
    for n in 2..=2000u64 {
        let f = factorize(n).unwrap();
        let r = f.odd_prime_count() as u32;
        let d = f.d_star();
        assert!(d.len() as u64 <= (1u64 << r).saturating_sub(1), "n={n}");
        let subsets: u64 = d.iter().map(|e| e.subsets as u64).sum();
        assert_eq!(subsets, (1u64 << r) - 1, "n={n}");
    }
}

#[test]
fn cyclotomic_product_is_x_pow_n_minus_one() {
    for n in 1..=200u64 {
        let table = polynomials::cyclotomic_table(n).unwrap();
        let product = factorize(n)
            .unwrap()
            .divisors()
            .iter()
            .fold(IntPoly::one(), |acc, d| acc * table[d].clone());
        assert_eq!(product, IntPoly::x_pow_minus_one(n as usize), "n={n}");
    }
}

#[test]
fn kernel_dimension_matches_nullity() {
    for n in 2..=100u64 {
        let p = polynomials::representer(n, n).unwrap();
        let g = polynomials::poly_gcd(&p, &IntPoly::x_pow_minus_one(n as usize)).unwrap();
        let nullity = spectra::nullity(n).unwrap();
        assert_eq!(g.degree().unwrap() as u64, nullity, "n={n}");
        assert_eq!(spectra::unitary_spectrum(n).unwrap().multiplicity(0), nullity);
        assert_eq!(polynomials::is_singular_circulant(&p, n).unwrap(), nullity > 0);
    }
}

#[test]
fn representer_row_sum_is_phi() {
    for n in 1..=120u64 {
        for d in factorize(n).unwrap().divisors() {
            let p = polynomials::representer(n, d).unwrap();
            assert_eq!(p.eval(&BigInt::one()), BigInt::from(arith::euler_phi(d).unwrap()));
        }
    }
}

#[test]
fn gcd_circulants_are_regular_and_shift_invariant() {
    for n in 2..=64usize {
        for d in factorize(n as u64).unwrap().divisors() {
            let set = ConnectionSet::unitary(n, d as usize).unwrap();
            let g = set.materialize();
            let expected = if d == 1 { 0 } else { arith::euler_phi(d).unwrap() as usize };
            assert_eq!(g.regular_degree(), Some(expected), "n={n} d={d}");
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(g.has_edge(u, v), g.has_edge((u + 1) % n, (v + 1) % n));
                }
            }
            assert_eq!(g.circulant_connection_set().unwrap(), set);
        }
    }
}

#[test]
fn structure_predicates_match_arithmetic() {
    for n in 2..=64usize {
        let f = factorize(n as u64).unwrap();
        let g = unitary_graph(n).unwrap();
        let twice_odd_prime = n % 2 == 0 && n > 4 && factorize(n as u64 / 2).unwrap().is_prime();
        assert!(graphs::bfs_all_pairs(&g).is_connected(), "n={n}");
        assert_eq!(graphs::is_bipartite(&g), n % 2 == 0, "n={n}");
        assert_eq!(graphs::is_complete(&g), f.is_prime(), "n={n}");
        assert_eq!(graphs::is_complete_bipartite(&g), n.is_power_of_two(), "n={n}");
        assert_eq!(graphs::is_crown(&g), twice_odd_prime, "n={n}");
        assert_eq!(f.is_twice_odd_prime(), twice_odd_prime);
    }
}

#[test]
fn distance_regularity_and_shells() {
    for n in 2..=64usize {
        let g = unitary_graph(n).unwrap();
        let f = factorize(n as u64).unwrap();
        let expected = f.is_prime_power() || (n % 2 == 0 && factorize(n as u64 / 2).unwrap().is_prime());
        let shell = graphs::is_distance_regular_with(&g, graphs::DrCheck::Shell);
        let strict = graphs::is_distance_regular_with(&g, graphs::DrCheck::Strict);
        assert_eq!(shell, strict, "n={n}");
        assert_eq!(shell.is_distance_regular(), expected, "n={n}");
        if let Some(arr) = shell.intersection_array() {
            assert_eq!(arr.b[0], f.euler_phi() as usize);
            assert_eq!(arr.c[0], 1);
        }
    }
}

#[test]
fn spectrum_invariants() {
    for n in 2..=200u64 {
        let f = factorize(n).unwrap();
        let s = spectra::unitary_spectrum(n).unwrap();
        let phi = f.euler_phi() as i64;
        assert!(s.is_consistent());
        assert_eq!(s.total_multiplicity(), n);
        assert_eq!(s.trace(), 0);
        let nonzero: u64 = s.pairs.iter().filter(|p| p.0 != 0).map(|p| p.1).sum();
        assert_eq!(nonzero, f.radical(), "n={n}");
        for &(v, _) in &s.pairs {
            if v != 0 {
                assert_eq!(phi % v, 0, "n={n}: {v} does not divide phi");
            }
        }
        if !f.is_square_free() {
            assert_eq!(s.multiplicity(1) + s.multiplicity(-1), 0, "n={n}");
        }
        assert_eq!(s.distinct_count() as u64, spectra::minimal_polynomial_degree(n).unwrap());
        if n >= 3 {
            assert_eq!(s.largest(), Some((phi, 1)));
        }
        let mut sorted = spectra::eigenvalue_list(n).unwrap();
        sorted.sort_unstable();
        let mut expanded: Vec<i64> = s
            .pairs
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m as usize))
            .collect();
        expanded.sort_unstable();
        assert_eq!(sorted, expanded);
    }
}

#[test]
fn minimal_polynomial_divides_characteristic() {
    for n in 2..=64u64 {
        let min = spectra::minimal_polynomial(n).unwrap();
        let chr = spectra::characteristic_polynomial(n).unwrap();
        assert!(min.divides(&chr).unwrap(), "n={n}");
        assert!(min.is_monic() && chr.is_monic());
        let g = unitary_graph(n as usize).unwrap();
        assert!(spectra::is_zero_matrix(&spectra::evaluate_at_adjacency(&min, &g)), "n={n}");
    }
}

#[test]
fn determinants_agree() {
    for n in 2..=64u64 {
        let closed = spectra::determinant_closed(n).unwrap();
        let g = unitary_graph(n as usize).unwrap();
        let oracle = spectra::oracle_determinant(&g).unwrap();
        let constant = spectra::characteristic_polynomial(n).unwrap().coeff(0);
        let signed = if n % 2 == 0 { constant } else { -constant };
        assert_eq!(closed, oracle, "n={n}");
        assert_eq!(closed, signed, "n={n}");
        assert_eq!(closed.is_zero(), !factorize(n).unwrap().is_square_free());
    }
}

#[test]
fn basis_is_disjoint_cover() {
    for n in 2..=128usize {
        let basis = coherent::algebra_basis(n).unwrap();
        assert!(basis.pairwise_disjoint(), "n={n}");
        assert!(basis.covers_all(), "n={n}");
        assert_eq!(basis.members.len() as u64, coherent::algebra_dimension(n as u64).unwrap());
    }
}

#[test]
fn dimension_chain() {
    for n in 3..=64usize {
        let f = factorize(n as u64).unwrap();
        let dim = |g: &graphs::DenseGraph| coherent::wl_closure(g).unwrap().num_colors;
        let complete = ConnectionSet::new(n, 1..n).unwrap().materialize();
        let cycle = ConnectionSet::cycle(n).unwrap().materialize();
        let unitary = unitary_graph(n).unwrap();
        let (dk, dx, dc) = (dim(&complete), dim(&unitary), dim(&cycle));
        let tau = f.tau() as usize;
        assert_eq!(dk, 2);
        assert_eq!(dc, n / 2 + 1, "n={n}");
        assert!(dk <= dx && dx <= tau && tau <= dc && dc <= n, "n={n}: {dk} {dx} {tau} {dc}");
        // squares of primes are the one non-square-free case where the two
        // algebras still coincide: tau(p^2) = 3 = tau(p) + 1
        let prime_square = matches!(f.factors(), [(_, 2)]);
        assert_eq!(dx == tau, f.is_square_free() || prime_square, "n={n}");
        let distinct = spectra::unitary_spectrum(n as u64).unwrap().distinct_count();
        assert_eq!(dx, distinct, "n={n}");
    }
}

#[test]
fn wl_is_stable_and_relabelling_invariant() {
    for n in [6usize, 12, 18, 30, 36] {
        let g = unitary_graph(n).unwrap();
        let stable = coherent::wl_closure(&g).unwrap();
        let (again, count) = coherent::wl_round(n, &stable.color);
        assert_eq!(count, stable.num_colors);
        let redone = coherent::WLColoring { n, color: again, rounds: 0, num_colors: count };
        assert!(redone.same_partition(&stable));

        // swap which id marks the diagonal, the edges and the non-edges
        let relabelled: Vec<u32> = (0..n * n)
            .map(|i| {
                let (u, v) = (i / n, i % n);
                if u == v {
                    7
                } else if g.has_edge(u, v) {
                    3
                } else {
                    5
                }
            })
            .collect();
        assert!(coherent::wl_refine(n, &relabelled).same_partition(&stable));
    }
}

#[test]
fn unit_orbits_partition_nonzero_residues() {
    for n in 2..=256usize {
        let units = arith::units(n as u64);
        let mut seen = BTreeSet::new();
        let mut orbits = BTreeMap::new();
        for s in 1..n {
            if seen.contains(&s) {
                continue;
            }
            let orbit: BTreeSet<usize> = units.iter().map(|&u| (s * u as usize) % n).collect();
            seen.extend(orbit.iter().copied());
            orbits.insert(arith::gcd(s as u64, n as u64) as usize, orbit.into_iter().collect::<Vec<_>>());
        }
        assert_eq!(seen.len(), n - 1);
        assert_eq!(graphs::unit_orbits(n), orbits, "n={n}");
        for (g, orbit) in &orbits {
            let d = n / g;
            assert_eq!(ConnectionSet::unitary(n, d).unwrap().elems(), orbit.as_slice());
        }
    }
}
