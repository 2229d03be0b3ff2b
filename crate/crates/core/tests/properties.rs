use hp0_core::bc_complex::{fh_vectors, ih_betti_report, independence_complex};
use hp0_core::corpus::random_tu_frame;
use hp0_core::poly::{apply_derivation, Monomial};
use hp0_core::{linalg, ColumnSet, GaleFrame, GradedSpan, Poly, Rat};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn frame_from_seed(seed: u64) -> GaleFrame {
    random_tu_frame(&mut ChaCha8Rng::seed_from_u64(seed), 6)
}

fn monomial(max_n: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..4, 1..=max_n).prop_map(Monomial::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivation_is_additive(
        beta in monomial(5),
        a in prop::collection::vec(-5i64..=5, 5),
        b in prop::collection::vec(-5i64..=5, 5),
    ) {
        let n = beta.nvars();
        let (a, b) = (&a[..n], &b[..n]);
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let lhs = apply_derivation(a, &beta).unwrap().add(&apply_derivation(b, &beta).unwrap());
        prop_assert_eq!(lhs, apply_derivation(&sum, &beta).unwrap());
    }

    #[test]
    fn span_does_not_depend_on_insertion_order(
        coeffs in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..6),
        seed in any::<u64>(),
    ) {
        let monos = Monomial::of_degree(3, 2);
        let polys: Vec<Poly> = coeffs
            .iter()
            .map(|c| Poly::from_terms(monos.iter().cloned().zip(c.iter().map(|&x| Rat::from(x)))))
            .collect();
        let mut shuffled = polys.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let build = |ps: &[Poly]| {
            let mut s = GradedSpan::new(3, 2);
            for p in ps {
                s.insert(p).unwrap();
            }
            s.basis()
        };
        prop_assert_eq!(build(&polys), build(&shuffled));
    }

    #[test]
    fn leading_monomial_drops_the_largest_support_index(seed in any::<u64>(), extra in prop::collection::vec(0u32..3, 7)) {
        let frame = frame_from_seed(seed);
        for c in frame.signed_circuits() {
            let support = c.support();
            let beta = Monomial::new(
                (0..frame.n())
                    .map(|i| u32::from(support.contains(i)) + extra[i])
                    .collect(),
            );
            let p = apply_derivation(c.coeffs(), &beta).unwrap();
            let top = support.max().unwrap();
            prop_assert_eq!(p.leading_monomial().cloned(), beta.div_var(top));
        }
    }

    #[test]
    fn circuit_supports_form_a_clutter(seed in any::<u64>()) {
        let frame = frame_from_seed(seed);
        let supports: Vec<ColumnSet> = frame.signed_circuits().iter().map(|c| c.support()).collect();
        for (i, a) in supports.iter().enumerate() {
            for (j, b) in supports.iter().enumerate() {
                prop_assert!(i == j || !a.is_subset(*b));
            }
        }
    }

    #[test]
    fn double_dual_recovers_the_row_space(seed in any::<u64>()) {
        let frame = frame_from_seed(seed);
        prop_assume!(frame.k() < frame.n());
        let back = frame.dual_frame().unwrap().dual_frame().unwrap();
        prop_assert_eq!(back.k(), frame.k());
        let stacked: Vec<Vec<i64>> = frame.rows().iter().chain(back.rows()).cloned().collect();
        prop_assert_eq!(linalg::rank(&linalg::to_rational(&stacked)), frame.k());
        prop_assert_eq!(back.signed_circuits(), frame.signed_circuits());
    }

    #[test]
    fn flats_are_closed_under_intersection(seed in any::<u64>()) {
        let frame = frame_from_seed(seed);
        let lattice = frame.flats();
        for a in 0..lattice.len() {
            for b in 0..lattice.len() {
                prop_assert!(lattice.meet(a, b).is_some());
            }
        }
    }

    #[test]
    fn h_vector_ignores_the_ground_order(seed in any::<u64>(), shuffle in any::<u64>()) {
        let frame = frame_from_seed(seed);
        let mut order: Vec<usize> = (0..frame.n()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let other = frame.permuted(&order).unwrap();
        prop_assert_eq!(ih_betti_report(&frame, 6).unwrap().h, ih_betti_report(&other, 6).unwrap().h);
        let ind = |f: &GaleFrame| fh_vectors(&independence_complex(f), f.k()).unwrap().f;
        prop_assert_eq!(ind(&frame), ind(&other));
    }
}
