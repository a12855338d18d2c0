//! Randomized structural properties.

use proptest::prelude::*;

use crystalbench::crystal::{tensor, tensor_seq, Crystal};
use crystalbench::decomp::{decompose_product, lr_coefficient};
use crystalbench::ffgeom::count::{count_mflags, count_spaltenstein};
use crystalbench::ffgeom::nilpotent::{count_nilpotent_orbit, OrbitMethod};
use crystalbench::ffgeom::{gaussian_binomial, Budget};
use crystalbench::schur::lr_oracle;
use crystalbench::tableaux::crystal_of;
use crystalbench::weights::{enumerate_partitions, enumerate_weights, Partition};

fn partition(n: usize, max_size: u32) -> impl Strategy<Value = Partition> {
    (0..=max_size).prop_flat_map(move |k| {
        let parts = enumerate_partitions(n, k);
        (0..parts.len()).prop_map(move |i| parts[i].clone())
    })
}

/// Highest weights with multiplicity, sorted: a complete isomorphism invariant
/// for normal crystals.
fn heads<T>(c: &Crystal<T>) -> Vec<String> {
    let mut out: Vec<String> = c.highest_elements().iter().map(|&h| c.weight(h).to_string()).collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tensor_is_associative(
        n in 2..=3usize,
        a in partition(3, 2),
        b in partition(3, 2),
        c in partition(3, 2),
    ) {
        let (a, b, c) = (a.with_len(n), b.with_len(n), c.with_len(n));
        prop_assume!(a.is_ok() && b.is_ok() && c.is_ok());
        let lift = |p: &Partition| crystal_of(p, n).unwrap().map_labels(|t| vec![t]);
        let (x, y, z) = (lift(&a.unwrap()), lift(&b.unwrap()), lift(&c.unwrap()));
        let left = tensor_seq(&tensor_seq(&x, &y).unwrap(), &z).unwrap();
        let right = tensor_seq(&x, &tensor_seq(&y, &z).unwrap()).unwrap();
        // Same labels (a, b, c) in the same order, and identical operators.
        prop_assert_eq!(left.elements(), right.elements());
        for i in 0..left.len() {
            for k in left.colors() {
                prop_assert_eq!(left.e(i, k), right.e(i, k));
                prop_assert_eq!(left.f(i, k), right.f(i, k));
            }
        }
    }

    #[test]
    fn tensor_is_commutative_up_to_isomorphism(n in 2..=3usize, a in partition(3, 3), b in partition(3, 3)) {
        let (a, b) = (a.with_len(n), b.with_len(n));
        prop_assume!(a.is_ok() && b.is_ok());
        let (x, y) = (crystal_of(&a.unwrap(), n).unwrap(), crystal_of(&b.unwrap(), n).unwrap());
        prop_assert_eq!(heads(&tensor(&x, &y).unwrap()), heads(&tensor(&y, &x).unwrap()));
    }

    #[test]
    fn crystal_and_oracle_agree(n in 2..=4usize, a in partition(4, 3), b in partition(4, 3)) {
        let (a, b) = (a.with_len(n), b.with_len(n));
        prop_assume!(a.is_ok() && b.is_ok());
        let (a, b) = (a.unwrap(), b.unwrap());
        let total = (a.size() + b.size()) as u32;
        let report = decompose_product(&[a.clone(), b.clone()], n).unwrap();
        for lambda in enumerate_partitions(n, total) {
            let c = lr_coefficient(&a, &b, &lambda, n).unwrap();
            prop_assert_eq!(c, report.multiplicity(&lambda));
            prop_assert_eq!(c as i64, lr_oracle(&a, &b, &lambda, n).unwrap());
        }
    }

    #[test]
    fn spaltenstein_counts_vanish_symmetrically(q in prop::sample::select(vec![2u32, 3]), a in partition(3, 2), b in partition(3, 2)) {
        // A count vanishes exactly when its LR coefficient does, and c^lambda_{ab} = c^lambda_{ba}.
        let total = (a.size() + b.size()) as u32;
        for lambda in enumerate_partitions(3, total) {
            let ab = count_spaltenstein(&[a.clone(), b.clone()], &lambda, q, Budget::default()).unwrap();
            let ba = count_spaltenstein(&[b.clone(), a.clone()], &lambda, q, Budget::default()).unwrap();
            prop_assert_eq!(ab == 0, ba == 0);
        }
    }
}

#[test]
fn two_step_flags_of_zero_operator_are_grassmannians() {
    // With t = 0 every flag is allowed, so a two-step flag of dimension v is a point of Gr(v_1, n).
    for q in [2u32, 3] {
        for n in 1..=3u32 {
            let zero = Partition::row(n, 2);
            for v in enumerate_weights(2, n) {
                let c = count_mflags(&v, &zero, q, Budget::default()).unwrap();
                assert_eq!(c, gaussian_binomial(n as usize, v.get(0) as usize, q as u64));
            }
        }
    }
}

#[test]
fn orbit_counts_sum_to_nilpotent_count() {
    for q in [2u32, 3] {
        for n in 1..=3usize {
            let total: u128 = enumerate_partitions(n, n as u32)
                .iter()
                .map(|l| count_nilpotent_orbit(l, q, OrbitMethod::Exhaustive, Budget::default()).unwrap())
                .sum();
            assert_eq!(total, (q as u128).pow((n * n - n) as u32));
        }
    }
}
