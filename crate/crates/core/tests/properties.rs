mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tensorcp::auxiliary::{aggregate_coefficient, truncate, AuxiliarySystem};
use tensorcp::io::{format_tensor, parse_tensor, parse_tensor_any, tensor_to_json};
use tensorcp::lcp::{enumerate_solutions, lemke_solve, LcpInstance, LemkeOutcome};
use tensorcp::linalg::Matrix;
use tensorcp::monomial::{binomial, MultiIndex};
use tensorcp::numeric::{dot, int, pow, zeros};
use tensorcp::tensor::componentwise_pow;
use tensorcp::{MonomialBasis, Rational, SparseTensor};

use common::*;

fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Order, dimension and a seed; the tensor itself is drawn from the seed so
/// that shrinking stays cheap.
fn shape() -> impl Strategy<Value = (usize, usize, u64)> {
    (2usize..=4, 1usize..=3, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn full_form_is_inner_product_with_the_degree_map((m, n, seed) in shape()) {
        let mut rng = rng_from(seed);
        let t = random_tensor(&mut rng, m, n, 6);
        let x = rational_point(&mut rng, n);
        let image = t.apply_deg(&x).unwrap();
        prop_assert_eq!(t.apply_full(&x).unwrap(), dot(&x, &image));
    }

    #[test]
    fn degree_map_is_homogeneous((m, n, seed) in shape(), c in -3i64..=3) {
        let mut rng = rng_from(seed);
        let t = random_tensor(&mut rng, m, n, 6);
        let x = rational_point(&mut rng, n);
        let cx: Vec<Rational> = x.iter().map(|v| v * int(c)).collect();
        let scale = pow(&int(c), m - 1);
        let expected: Vec<Rational> = t.apply_deg(&x).unwrap().iter().map(|v| v * &scale).collect();
        prop_assert_eq!(t.apply_deg(&cx).unwrap(), expected);
    }

    #[test]
    fn subtensor_matches_restricted_evaluation((m, n, seed) in shape(), mask in 1u32..8) {
        let mut rng = rng_from(seed);
        let t = random_tensor(&mut rng, m, n, 8);
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!subset.is_empty());
        let sub = t.principal_subtensor(&subset).unwrap();
        let y = rational_point(&mut rng, subset.len());
        let mut x = zeros(n);
        for (k, &i) in subset.iter().enumerate() {
            x[i] = y[k].clone();
        }
        let full = t.apply_deg(&x).unwrap();
        let restricted: Vec<Rational> = subset.iter().map(|&i| full[i].clone()).collect();
        prop_assert_eq!(sub.apply_deg(&y).unwrap(), restricted);
    }

    #[test]
    fn row_diagonal_tensors_act_through_majorization((m, n, seed) in shape()) {
        let mut rng = rng_from(seed);
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut index = vec![j; m];
                index[0] = i;
                entries.push((index, small_rational(&mut rng, 3)));
            }
        }
        let t = SparseTensor::from_entries(m, n, entries).unwrap();
        prop_assert!(t.is_row_diagonal());
        let x = rational_point(&mut rng, n);
        let expected = t.majorization().mul_vec(&componentwise_pow(&x, m - 1));
        prop_assert_eq!(t.apply_deg(&x).unwrap(), expected);
    }

    #[test]
    fn generic_tensors_with_mixed_entries_are_not_row_diagonal((m, n, seed) in shape()) {
        prop_assume!(m >= 3 && n >= 2);
        let mut rng = rng_from(seed);
        let t = random_tensor(&mut rng, m, n, 6);
        if !t.is_row_diagonal() && !mixed_part_cancels(&t) {
            // generic points separate A x^{m-1} from M(A) x^{[m-1]}
            let separated = [2i64, 3, 5].iter().any(|&c| {
                let x: Vec<Rational> = (0..n).map(|i| int(1 + c * (i as i64 + 1).pow(2))).collect();
                let lhs = t.apply_deg(&x).unwrap();
                let rhs = t.majorization().mul_vec(&componentwise_pow(&x, m - 1));
                lhs != rhs
            });
            prop_assert!(separated);
        }
    }

    #[test]
    fn permutation_transform_round_trips((m, n, seed) in shape()) {
        let mut rng = rng_from(seed);
        let t = random_tensor(&mut rng, m, n, 6);
        let perms = permutations(n);
        let sigma = &perms[(seed as usize) % perms.len()];
        let mut inverse = vec![0; n];
        for (i, &s) in sigma.iter().enumerate() {
            inverse[s] = i;
        }
        let forward = t.transform_perm(&Matrix::from_permutation(sigma)).unwrap();
        let back = forward.transform_perm(&Matrix::from_permutation(&inverse)).unwrap();
        prop_assert_eq!(&back, &t);

        // (B y^{m-1})_{sigma(i)} = (A x^{m-1})_i with y_{sigma(i)} = x_i
        let x = rational_point(&mut rng, n);
        let mut y = zeros(n);
        for i in 0..n {
            y[sigma[i]] = x[i].clone();
        }
        let ax = t.apply_deg(&x).unwrap();
        let by = forward.apply_deg(&y).unwrap();
        for i in 0..n {
            prop_assert_eq!(&by[sigma[i]], &ax[i]);
        }
    }

    #[test]
    fn basis_length_is_binomial(m in 2usize..=5, n in 1usize..=5) {
        let basis = MonomialBasis::new(m, n).unwrap();
        prop_assert_eq!(basis.len() as u128, binomial((m + n - 2) as u64, (n - 1) as u64));
        let pure = basis.labels().iter().take(n).all(MultiIndex::is_pure_power);
        prop_assert!(pure);
    }

    #[test]
    fn lift_starts_with_pure_powers((m, n, seed) in shape()) {
        let mut rng = rng_from(seed);
        let x = rational_point(&mut rng, n);
        let lifted = MonomialBasis::new(m, n).unwrap().lift(&x).unwrap();
        prop_assert_eq!(&lifted[..n], &componentwise_pow(&x, m - 1)[..]);
    }

    #[test]
    fn auxiliary_coefficients_reproduce_the_degree_map((m, n, seed) in shape()) {
        let mut rng = rng_from(seed);
        let t = random_tensor(&mut rng, m, n, 8);
        let aux = AuxiliarySystem::build(&t).unwrap();
        let x = rational_point(&mut rng, n);
        let lifted = aux.basis().lift(&x).unwrap();
        prop_assert_eq!(aux.coef().mul_vec(&lifted), t.apply_deg(&x).unwrap());
        let (major, _) = aux.split_blocks();
        prop_assert_eq!(major, t.majorization());
    }

    #[test]
    fn mixed_block_vanishes_iff_mixed_aggregates_vanish((m, n, seed) in shape()) {
        let mut rng = rng_from(seed);
        let t = if seed % 2 == 0 {
            random_tensor(&mut rng, m, n, 6)
        } else {
            let k = random_matrix(&mut rng, n);
            reducible_tensor(&mut rng, m, n, &k)
        };
        let aux = AuxiliarySystem::build(&t).unwrap();
        let mixed_zero = aux.basis().labels().iter().filter(|a| !a.is_pure_power()).all(|a| {
            (0..n).all(|i| aggregate_coefficient(&t, i, a).unwrap() == int(0))
        });
        prop_assert_eq!(aux.b_is_zero(), mixed_zero);
    }
}

/// The mixed monomials of every row cancel, so the tensor acts like its
/// majorization although it is not row diagonal.
fn mixed_part_cancels(t: &SparseTensor) -> bool {
    let aux = AuxiliarySystem::build(t).unwrap();
    aux.b_is_zero()
}

#[test]
fn text_and_json_round_trip_on_random_tensors() {
    let mut rng = rng_from(11);
    for k in 0..200 {
        let m = 2 + k % 3;
        let n = 1 + (k / 3) % 4;
        let t = random_tensor(&mut rng, m, n, 1 + k % 7);
        let text = format_tensor(&t);
        assert_eq!(parse_tensor(&text).unwrap(), t, "text round trip:\n{text}");
        let json = tensor_to_json(&t).to_string();
        assert_eq!(parse_tensor_any(&json).unwrap(), t, "json round trip: {json}");
    }
}

#[test]
fn truncated_auxiliary_solutions_solve_the_majorization_lcp() {
    let mut rng = rng_from(21);
    let mut checked = 0;
    for k in 0..40 {
        let n = 2 + k % 2;
        let major = mixed_matrix(&mut rng, n);
        let t = reducible_tensor(&mut rng, 4, n, &major);
        let aux = AuxiliarySystem::build(&t).unwrap();
        assert!(aux.b_is_zero());
        let q = solvable_q(&mut rng, &major);
        let big = aux.lcp_instance(&q).unwrap();
        let small = LcpInstance::new(major.clone(), q.clone()).unwrap();
        for piece in enumerate_solutions(&big, 12).unwrap() {
            for y in &piece.vertices {
                assert!(big.verify(&truncate(y, n)), "k={k} y={y:?}");
                assert!(small.verify(&y[..n]), "k={k} y={y:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn lemke_and_enumeration_are_sound() {
    let mut rng = rng_from(31);
    for k in 0..60 {
        let size = 2 + k % 3;
        let m = mixed_matrix(&mut rng, size);
        let q = if k % 4 == 0 {
            (0..size).map(|_| small_rational(&mut rng, 3)).collect()
        } else {
            solvable_q(&mut rng, &m)
        };
        let inst = LcpInstance::new(m, q).unwrap();
        if let LemkeOutcome::Solved { z, w, .. } = lemke_solve(&inst).unwrap() {
            assert!(inst.verify(&z));
            assert_eq!(inst.w(&z), w);
        }
        for piece in enumerate_solutions(&inst, 12).unwrap() {
            for v in &piece.vertices {
                assert!(inst.verify(v));
                assert!(piece.contains(&inst, v));
            }
            for r in &piece.rays {
                assert!(piece.recedes_along(&inst, r));
                let far: Vec<Rational> = piece.base.iter().zip(r).map(|(b, d)| b + d * int(7)).collect();
                assert!(inst.verify(&far));
            }
            if piece.w_constant {
                assert_eq!(piece.w.as_ref().unwrap(), &inst.w(&piece.base));
            }
        }
    }
}

#[test]
fn solvable_instances_are_found_by_enumeration() {
    let mut rng = rng_from(41);
    for k in 0..40 {
        let size = 2 + k % 3;
        let m = mixed_matrix(&mut rng, size);
        let q = solvable_q(&mut rng, &m);
        let inst = LcpInstance::new(m, q).unwrap();
        assert!(!enumerate_solutions(&inst, 12).unwrap().is_empty(), "k={k}");
    }
}
