//! Shared generators and independent oracles for the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcps_core::lattice::QMatrix;
use qcps_core::scalar::{FieldElem, GroupUnit, Signature};
use qcps_core::series::{SeriesRing, SkewSeries};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Raw data for a commutation matrix, kept as plain integers so proptest
/// can shrink it.
#[derive(Debug, Clone)]
pub struct ConfigData {
    pub n: usize,
    pub m: u64,
    pub r: usize,
    /// One (torsion exponent, free exponent vector) per upper-triangle
    /// pair, row-major.
    pub entries: Vec<(i64, Vec<i64>)>,
}

impl ConfigData {
    pub fn build(&self) -> QMatrix {
        let sig = Signature::new(self.m, self.r);
        let upper = self
            .entries
            .iter()
            .map(|(tor, free)| GroupUnit::new(self.m, *tor, free.clone()))
            .collect();
        QMatrix::from_upper(self.n, sig, upper).expect("generated data is well formed")
    }
}

/// Unconstrained mixed configurations for series-level tests.
pub fn arb_config(max_n: usize) -> impl Strategy<Value = ConfigData> {
    (1..=max_n, 1u64..=4, 0usize..=2).prop_flat_map(|(n, m, r)| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(
            (0..m as i64, prop::collection::vec(-2i64..=2, r)),
            pairs..=pairs.max(1),
        )
        .prop_map(move |mut entries| {
            entries.truncate(pairs);
            ConfigData { n, m, r, entries }
        })
    })
}

/// Configurations whose canonical kernel basis provably fits in box
/// radius 6, so a brute-force box search sees the whole lattice:
///  - torsion only (n <= 3, m <= 6): basis entries divide m;
///  - free only with exponents in {-1,0,1} (n <= 3): kernel generators are
///    unit-vector combinations or a single cross product, entries <= 2;
///  - torsion plus free at n <= 2: a nonzero free part forces the
///    coordinate to 0 and the rest reduces to the torsion case.
pub fn arb_boxed_config() -> impl Strategy<Value = ConfigData> {
    let torsion_only = (1usize..=3, 1u64..=6).prop_flat_map(|(n, m)| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec((0..m as i64, Just(Vec::new())), pairs..=pairs.max(1)).prop_map(
            move |mut entries| {
                entries.truncate(pairs);
                ConfigData {
                    n,
                    m,
                    r: 0,
                    entries,
                }
            },
        )
    });
    let free_only = (1usize..=3, 1usize..=2).prop_flat_map(|(n, r)| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(
            (Just(0i64), prop::collection::vec(-1i64..=1, r)),
            pairs..=pairs.max(1),
        )
        .prop_map(move |mut entries| {
            entries.truncate(pairs);
            ConfigData {
                n,
                m: 1,
                r,
                entries,
            }
        })
    });
    let mixed_small = (1usize..=2, 2u64..=6, 1usize..=2).prop_flat_map(|(n, m, r)| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(
            (0..m as i64, prop::collection::vec(-1i64..=1, r)),
            pairs..=pairs.max(1),
        )
        .prop_map(move |mut entries| {
            entries.truncate(pairs);
            ConfigData { n, m, r, entries }
        })
    });
    prop_oneof![torsion_only, free_only, mixed_small]
}

/// Same distribution as `arb_boxed_config`, sampled with a seeded RNG.
pub fn random_boxed_config(rng: &mut ChaCha8Rng) -> QMatrix {
    let branch = rng.gen_range(0..3u8);
    let (n, m, r, max_free) = match branch {
        0 => (rng.gen_range(1..=3), rng.gen_range(1..=6), 0, 0),
        1 => (rng.gen_range(1..=3), 1, rng.gen_range(1..=2), 1),
        _ => (rng.gen_range(1..=2), rng.gen_range(2..=6), rng.gen_range(1..=2), 1),
    };
    random_config(rng, n, m, r, max_free)
}

pub fn random_config(rng: &mut ChaCha8Rng, n: usize, m: u64, r: usize, max_free: i64) -> QMatrix {
    let pairs = n * (n - 1) / 2;
    let entries = (0..pairs)
        .map(|_| {
            (
                rng.gen_range(0..m as i64),
                (0..r).map(|_| rng.gen_range(-max_free..=max_free)).collect(),
            )
        })
        .collect();
    ConfigData { n, m, r, entries }.build()
}

/// Torsion-only configuration; its radical always has full rank because it
/// contains m Z^n.
pub fn random_torsion_config(rng: &mut ChaCha8Rng, max_n: usize, max_m: u64) -> QMatrix {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(1..=max_m);
    random_config(rng, n, m, 0, 0)
}

/// A configuration with one independent free generator per pair, scaled by
/// a nonzero exponent: generic by construction.
pub fn generic_config(n: usize) -> QMatrix {
    let pairs = n * (n - 1) / 2;
    let sig = Signature::new(1, pairs);
    let upper = (0..pairs)
        .map(|k| {
            let mut free = vec![0; pairs];
            free[k] = 1;
            GroupUnit::new(1, 0, free)
        })
        .collect();
    QMatrix::from_upper(n, sig, upper).expect("generic construction is well formed")
}

/// n = 2 at an m-th root of unity: `y x = zeta_m x y`.
pub fn root_config(m: u64) -> QMatrix {
    let sig = Signature::new(m, 0);
    QMatrix::from_upper(2, sig, vec![GroupUnit::new(m, -1, vec![])])
        .expect("root-of-unity construction is well formed")
}

/// All integer vectors with every coordinate in [-radius, radius].
pub fn box_vectors(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Brute-force radical membership, independent of the lattice machinery:
/// accumulates the exponents of `prod_i q_ij^{v_i}` for each column j and
/// demands they all vanish.
pub fn oracle_in_radical(q: &QMatrix, v: &[i64]) -> bool {
    let n = q.n();
    let sig = q.sig();
    for j in 0..n {
        let mut torsion: i64 = 0;
        let mut free = vec![0i64; sig.r];
        for i in 0..n {
            if i == j {
                continue;
            }
            let u = q.entry(i, j);
            torsion += u.torsion() as i64 * v[i];
            for (k, e) in u.free().iter().enumerate() {
                free[k] += e * v[i];
            }
        }
        if torsion.rem_euclid(sig.m as i64) != 0 || free.iter().any(|e| *e != 0) {
            return false;
        }
    }
    true
}

/// Raw term data for a series: (exponents, numerator, denominator,
/// zeta exponent, exponent on t1).
pub type TermData = Vec<(Vec<i64>, i64, i64, i64, i64)>;

pub fn arb_series_terms(n: usize, max_terms: usize, max_exp: i64) -> impl Strategy<Value = TermData> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_exp, n),
            -9i64..=9,
            1i64..=4,
            0i64..=3,
            -1i64..=1,
        ),
        1..=max_terms,
    )
}

pub fn build_series(ring: &SeriesRing, terms: &TermData) -> SkewSeries {
    let sig = ring.q().sig();
    let mut f = ring.zero();
    for (exps, num, den, za, te) in terms {
        if *num == 0 {
            continue;
        }
        let mut c = FieldElem::from_rational(
            sig,
            BigRational::new(BigInt::from(*num), BigInt::from(*den)),
        );
        if sig.m > 1 {
            c = c.mul(&FieldElem::zeta(sig, *za));
        }
        if sig.r >= 1 && *te != 0 {
            c = c.mul(&FieldElem::t_pow(sig, 1, *te));
        }
        f = f.add(&ring.monomial(c, exps).expect("exponents are nonnegative"));
    }
    f
}

pub fn random_series(
    rng: &mut ChaCha8Rng,
    ring: &SeriesRing,
    max_terms: usize,
    min_deg: i64,
    max_exp: i64,
) -> SkewSeries {
    let n = ring.n();
    let count = rng.gen_range(1..=max_terms);
    let terms: TermData = (0..count)
        .map(|_| {
            let mut exps: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if exps.iter().sum::<i64>() < min_deg {
                exps[rng.gen_range(0..n)] += min_deg;
            }
            (
                exps,
                rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 },
                rng.gen_range(1..=4),
                rng.gen_range(0..=3),
                rng.gen_range(-1..=1),
            )
        })
        .collect();
    build_series(ring, &terms)
}
