//! Coset decomposition, shear, and monomialization properties.

mod common;

use proptest::prelude::*;

use common::{arb_config, arb_series_terms, build_series, ConfigData, TermData};
use qcps_core::center::{central_decompose, is_central_monomial, monomialize, rho_shear};
use qcps_core::lattice::{kernel_lattice, Transversal};
use qcps_core::scalar::FieldElem;
use qcps_core::series::{SeriesRing, SkewSeries, TorusElement};

fn arb_input() -> impl Strategy<Value = (ConfigData, TermData)> {
    arb_config(3).prop_flat_map(|cfg| {
        let n = cfg.n;
        (Just(cfg), arb_series_terms(n, 5, 2))
    })
}

fn prime_probe(ring: &SeriesRing) -> TorusElement {
    let sig = ring.q().sig();
    let primes = [2i64, 3, 5];
    TorusElement::new(
        (0..ring.n())
            .map(|i| FieldElem::from_int(sig, primes[i]))
            .collect(),
    )
    .unwrap()
}

fn commutes_with_generators(z: &SkewSeries, ring: &SeriesRing) -> bool {
    (1..=ring.n()).all(|i| {
        let xi = ring.var(i).unwrap();
        z.mul(&xi) == xi.mul(&z)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Summing x^t * z_t over the components recovers the input, and every
    /// component is central: supported on the radical lattice and commuting
    /// with each generator.
    #[test]
    fn decomposition_reassembles_and_components_are_central((cfg, a) in arb_input()) {
        let ring = SeriesRing::with_precision(cfg.build(), 6);
        let lat = kernel_lattice(ring.q());
        let tr = Transversal::new(&lat);
        let f = build_series(&ring, &a);
        let dec = central_decompose(&lat, &tr, &f).unwrap();
        prop_assert_eq!(dec.reassemble(), f.clone());
        for (t, z) in dec.components() {
            prop_assert_eq!(&tr.rep(t.exponents()).unwrap(), &t.exponents().to_vec());
            for s in z.support() {
                prop_assert!(is_central_monomial(&lat, s.exponents()).unwrap());
            }
            prop_assert!(commutes_with_generators(z, &ring));
        }
    }

    /// The shear fixes the component of its own coset exactly and kills the
    /// named other coset, so the component count strictly drops.
    #[test]
    fn shear_fixes_one_coset_and_removes_another((cfg, a) in arb_input()) {
        let ring = SeriesRing::with_precision(cfg.build(), 6);
        let lat = kernel_lattice(ring.q());
        let tr = Transversal::new(&lat);
        let f = build_series(&ring, &a);
        let dec = central_decompose(&lat, &tr, &f).unwrap();
        let reps = dec.representatives();
        prop_assume!(reps.len() >= 2);
        let t0 = &reps[0];
        let r = &reps[1];
        let diff: Vec<i64> = t0
            .exponents()
            .iter()
            .zip(r.exponents())
            .map(|(a, b)| a - b)
            .collect();
        // Some generator must see the two cosets differently, else they
        // would be the same coset.
        let v = (1..=ring.n())
            .map(|i| {
                let mut v = vec![0i64; ring.n()];
                v[i - 1] = 1;
                v
            })
            .find(|v| !ring.q().sigma(v, &diff).unwrap().is_identity())
            .expect("distinct representatives are separated by a generator");
        let sheared = rho_shear(&f, &v, t0.exponents(), r.exponents()).unwrap();
        let dec2 = central_decompose(&lat, &tr, &sheared).unwrap();
        prop_assert_eq!(dec2.component(t0), dec.component(t0));
        prop_assert!(dec2.component(r).is_none());
        prop_assert!(dec2.len() < dec.len());
    }

    /// Monomialization is a constructive identity: it returns exactly the
    /// support, and a probe of distinct primes never needs a retry.
    #[test]
    fn monomialize_returns_the_support((cfg, a) in arb_input()) {
        let ring = SeriesRing::with_precision(cfg.build(), 6);
        let f = build_series(&ring, &a);
        let out = monomialize(&f, &prime_probe(&ring)).unwrap();
        prop_assert_eq!(&out.monomials, &f.support());
        prop_assert_eq!(out.retries, 0);

        // A constant probe separates nothing; the built-in prime fallback
        // must still recover the support.
        let sig = ring.q().sig();
        let ones = TorusElement::new(vec![FieldElem::one(sig); ring.n()]).unwrap();
        let out = monomialize(&f, &ones).unwrap();
        prop_assert_eq!(&out.monomials, &f.support());
        if f.term_count() >= 2 {
            prop_assert!(out.retries >= 1);
        }
        prop_assert!(out.retries <= 3);
    }
}

/// A product of central series decomposes into the zero coset alone.
#[test]
fn central_products_stay_in_the_zero_coset() {
    for m in [2u64, 3] {
        let ring = SeriesRing::with_precision(common::root_config(m), 2 * m as u32 + 1);
        let sig = ring.q().sig();
        let lat = kernel_lattice(ring.q());
        let tr = Transversal::new(&lat);
        // 1 + x1^m and 1 + x2^m are central: exponents lie in m Z^2.
        let f = ring
            .one()
            .add(&ring.monomial(FieldElem::from_int(sig, 3), &[m as i64, 0]).unwrap());
        let g = ring
            .one()
            .add(&ring.monomial(FieldElem::from_int(sig, -2), &[0, m as i64]).unwrap());
        for s in f.support() {
            assert!(is_central_monomial(&lat, s.exponents()).unwrap());
        }
        let product = f.mul(&g);
        let dec = central_decompose(&lat, &tr, &product).unwrap();
        assert_eq!(dec.len(), 1);
        let (t, z) = dec.components().next().unwrap();
        assert!(t.is_constant(), "central input must land in the zero coset");
        assert_eq!(z, &product);
    }
}
