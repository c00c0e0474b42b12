//! Bicharacter laws, kernel computation against a brute-force oracle, and
//! transversal/genericity properties.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use common::{arb_boxed_config, arb_config, box_vectors, oracle_in_radical, ConfigData};
use qcps_core::lattice::{
    is_generic, kernel_lattice, restrict_to_stratum, subgroup_index, LatticeIndex, Transversal,
};

fn arb_vectors(max_n: usize) -> impl Strategy<Value = (ConfigData, Vec<Vec<i64>>)> {
    arb_config(max_n).prop_flat_map(|cfg| {
        let n = cfg.n;
        (
            Just(cfg),
            prop::collection::vec(prop::collection::vec(-4i64..=4, n), 3),
        )
    })
}

proptest! {
    #[test]
    fn bicharacter_laws((cfg, vs) in arb_vectors(3)) {
        let q = cfg.build();
        let (s, s2, t) = (&vs[0], &vs[1], &vs[2]);
        let sum: Vec<i64> = s.iter().zip(s2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(
            q.sigma(&sum, t).unwrap(),
            q.sigma(s, t).unwrap().mul(&q.sigma(s2, t).unwrap()).unwrap()
        );
        prop_assert!(q.sigma(s, t).unwrap().mul(&q.sigma(t, s).unwrap()).unwrap().is_identity());
        prop_assert!(q.sigma(s, s).unwrap().is_identity());
        // The reordering scalar factors through the bicharacter.
        prop_assert_eq!(
            q.mu(s, t).mul(&q.mu(t, s).inv()).unwrap(),
            q.sigma(s, t).unwrap()
        );
    }

    /// The lattice kernel and a brute-force box search over radius 6 agree:
    /// the canonical basis lies in the box and passes the direct membership
    /// predicate, and inside the box the two membership notions coincide.
    #[test]
    fn kernel_matches_box_oracle(cfg in arb_boxed_config()) {
        let q = cfg.build();
        let lat = kernel_lattice(&q);
        for b in lat.basis() {
            prop_assert!(b.iter().all(|e| e.abs() <= 6), "basis escaped the box: {:?}", b);
            prop_assert!(oracle_in_radical(&q, b));
        }
        for v in box_vectors(q.n(), 6) {
            prop_assert_eq!(lat.contains(&v).unwrap(), oracle_in_radical(&q, &v));
        }
    }

    /// Torsion-only configurations have full-rank radical (it contains
    /// m Z^n), and the index of an alternating form's radical is a square.
    #[test]
    fn full_rank_index_is_a_perfect_square(cfg in arb_boxed_config()) {
        let q = cfg.build();
        let lat = kernel_lattice(&q);
        if lat.rank() == q.n() {
            match subgroup_index(&lat) {
                LatticeIndex::Finite(idx) => {
                    let root = idx.sqrt();
                    prop_assert_eq!(&root * &root, idx);
                }
                LatticeIndex::Infinite => prop_assert!(false, "full rank must have finite index"),
            }
        } else {
            prop_assert_eq!(subgroup_index(&lat), LatticeIndex::Infinite);
        }
    }

    #[test]
    fn transversal_representatives_are_canonical((cfg, vs) in arb_vectors(3)) {
        let q = cfg.build();
        let lat = kernel_lattice(&q);
        let tr = Transversal::new(&lat);
        for e in &vs {
            let rep = tr.rep(e).unwrap();
            prop_assert_eq!(&tr.rep(&rep).unwrap(), &rep, "rep must be idempotent");
            let diff: Vec<i64> = e.iter().zip(&rep).map(|(a, b)| a - b).collect();
            prop_assert!(lat.contains(&diff).unwrap(), "e - rep(e) must lie in the lattice");
            for b in lat.basis() {
                let shifted: Vec<i64> = e.iter().zip(b).map(|(a, x)| a + x).collect();
                prop_assert_eq!(&tr.rep(&shifted).unwrap(), &rep);
            }
        }
    }
}

/// Scaling each independent generator by a nonzero exponent keeps the
/// configuration generic; all strata of a generic configuration have
/// trivial radical once at least two variables remain.
#[test]
fn generic_configurations_have_trivial_stratum_kernels() {
    for n in 2usize..=4 {
        let q = common::generic_config(n);
        assert!(is_generic(&q));
        let subsets: Vec<Vec<usize>> = (0..1u64 << n)
            .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
            .collect();
        for w in subsets {
            let restricted = restrict_to_stratum(&q, &w).unwrap();
            let lat = kernel_lattice(&restricted);
            match restricted.n() {
                0 | 1 => assert_eq!(lat.rank(), restricted.n(), "one variable leaves Z"),
                _ => assert!(lat.is_trivial(), "stratum {:?} kept a central monomial", w),
            }
        }
    }
}

#[test]
fn genericity_needs_independent_generators() {
    // Repeating a generator (or using none) collapses the free rank.
    use qcps_core::lattice::QMatrix;
    use qcps_core::scalar::{GroupUnit, Signature};
    let sig = Signature::new(1, 1);
    let gamma = GroupUnit::new(1, 0, vec![1]);
    let q = QMatrix::from_upper(
        3,
        sig,
        vec![GroupUnit::identity(sig), gamma.clone(), gamma],
    )
    .unwrap();
    assert!(!is_generic(&q));
    assert!(!is_generic(&common::root_config(5)));
    assert!(is_generic(&common::generic_config(4)));
}

#[test]
fn perfect_square_holds_on_named_root_configs() {
    for m in [2u64, 3, 4, 5, 6] {
        let lat = kernel_lattice(&common::root_config(m));
        assert_eq!(lat.rank(), 2);
        assert_eq!(
            subgroup_index(&lat),
            LatticeIndex::Finite(BigInt::from(m * m))
        );
    }
}
