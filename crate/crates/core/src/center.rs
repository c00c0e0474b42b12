//! Central elements and the coset split of a series over the center.
//!
//! A monomial `x^s` is central exactly when `s` lies in the radical lattice.
//! Grouping the terms of a series by the coset of their exponent splits it
//! as `f = sum_t x^t z_t` over canonical transversal representatives `t`,
//! with each `z_t` supported on the lattice; the cocycle correction
//! `mu(t, s)` makes the split exact.  Two constructive extraction
//! procedures are provided: `rho_shear` isolates one coset component by a
//! conjugation average, and `monomialize` recovers the support of a series
//! by torus averaging.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{KernelLattice, Transversal};
use crate::scalar::FieldElem;
use crate::series::{Monomial, SkewSeries, TorusElement};

/// Membership of the exponent in the radical lattice.
pub fn is_central_monomial(lat: &KernelLattice, s: &[i64]) -> Result<bool> {
    lat.contains(s)
}

/// The split `f = sum_t x^t z_t`, keyed by transversal representative.
///
/// A representative can have negative total degree, so each component
/// carries its own precision `d - |t|`: exactly the degrees determined by
/// the source series.
#[derive(Debug, Clone)]
pub struct CentralDecomposition {
    template: SkewSeries,
    components: BTreeMap<Monomial, SkewSeries>,
}

impl CentralDecomposition {
    pub fn precision(&self) -> i64 {
        self.template.precision()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Monomial, &SkewSeries)> {
        self.components.iter()
    }

    pub fn component(&self, t: &Monomial) -> Option<&SkewSeries> {
        self.components.get(t)
    }

    pub fn representatives(&self) -> Vec<Monomial> {
        self.components.keys().cloned().collect()
    }

    /// `sum_t x^t z_t` with the cocycle corrections, back at the source
    /// precision.
    pub fn reassemble(&self) -> SkewSeries {
        let mut out = self.template.clone();
        for (t, z) in &self.components {
            for (s, c) in z.terms() {
                let mu = out.q().mu(t.exponents(), s.exponents());
                out.add_term(t.add(s), c.mul(&FieldElem::from_unit(&mu)));
            }
        }
        out
    }
}

/// Groups each term `c x^e` under `t = rep(e)`, recording
/// `c mu(t, e - t)^{-1} x^{e-t}` so that reassembly is exact.
pub fn central_decompose(
    lat: &KernelLattice,
    tr: &Transversal,
    f: &SkewSeries,
) -> Result<CentralDecomposition> {
    let mut components: BTreeMap<Monomial, SkewSeries> = BTreeMap::new();
    for (e, c) in f.terms() {
        let t = Monomial::new(tr.rep(e.exponents())?);
        let s = Monomial::new(
            e.exponents()
                .iter()
                .zip(t.exponents())
                .map(|(a, b)| a - b)
                .collect(),
        );
        debug_assert!(lat.contains(s.exponents())?, "difference must be central");
        let mu = f.q().mu(t.exponents(), s.exponents());
        let coeff = c.mul(&FieldElem::from_unit(&mu.inv()));
        let z = components
            .entry(t.clone())
            .or_insert_with(|| f.empty_like(f.precision() - t.degree()));
        z.add_term(s, coeff);
    }
    components.retain(|_, z| !z.is_zero());
    Ok(CentralDecomposition {
        template: f.empty_like(f.precision()),
        components,
    })
}

/// One shear step: `(x^v f x^{-v} - sigma(v, r) f) / (sigma(v, t0) - sigma(v, r))`.
///
/// Term by term this scales `c x^e` by
/// `(sigma(v, e) - sigma(v, r)) / (sigma(v, t0) - sigma(v, r))`, so terms in
/// the coset of `t0` are fixed and terms in the coset of `r` vanish.
pub fn rho_shear(f: &SkewSeries, v: &[i64], t0: &[i64], r: &[i64]) -> Result<SkewSeries> {
    let q = f.q();
    let s_t0 = FieldElem::from_unit(&q.sigma(v, t0)?);
    let s_r = FieldElem::from_unit(&q.sigma(v, r)?);
    let denom = s_t0.sub(&s_r);
    if denom.is_zero() {
        return Err(Error::DegenerateShear);
    }
    let numerator = f.conjugate_by_exponent(v).sub(&f.scale(&s_r));
    Ok(numerator.scale(&denom.inv()?))
}

/// Result of the torus-averaging support extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomializeOutcome {
    pub monomials: Vec<Monomial>,
    /// Probe replacements that were needed before every leading pair
    /// separated.
    pub retries: u32,
}

const PROBE_PRIMES: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Extracts the support of `f` one monomial at a time by the averaging
/// recurrence `(h.w - h(j2) w) / (h(j1) - h(j2))`, which preserves the
/// `j1`-term and annihilates the `j2`-term.  If the supplied torus element
/// fails to separate a leading pair, the probe is replaced by consecutive
/// prime tuples (distinct primes separate distinct monomials outright).
pub fn monomialize(
    f: &SkewSeries,
    h: &TorusElement,
) -> Result<MonomializeOutcome> {
    let n = f.n();
    let sig = f.q().sig();
    let mut retries = 0u32;
    let mut attempt = 0usize;
    loop {
        let probe = if attempt == 0 {
            h.clone()
        } else {
            let start = attempt - 1;
            if start + n > PROBE_PRIMES.len() {
                return Err(Error::SeparationFailure { probes: attempt });
            }
            let entries = PROBE_PRIMES[start..start + n]
                .iter()
                .map(|p| FieldElem::from_int(sig, *p))
                .collect();
            TorusElement::new(entries).expect("primes are nonzero")
        };
        match try_monomialize(f, &probe) {
            Ok(monomials) => {
                return Ok(MonomializeOutcome { monomials, retries });
            }
            Err(Error::SeparationFailure { .. }) => {
                retries += 1;
                attempt += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

fn try_monomialize(f: &SkewSeries, h: &TorusElement) -> Result<Vec<Monomial>> {
    let mut out = Vec::new();
    let mut g = f.clone();
    while !g.is_zero() {
        let j1 = g.leading()?.0.clone();
        let h_j1 = h.eval(j1.exponents());
        let mut w = g.clone();
        for j2 in g.support() {
            if j2 == j1 {
                continue;
            }
            let h_j2 = h.eval(j2.exponents());
            let denom = h_j1.sub(&h_j2);
            if denom.is_zero() {
                return Err(Error::SeparationFailure { probes: 1 });
            }
            // (h.w - h(j2) w) / (h(j1) - h(j2))
            w = w
                .apply_torus(h)?
                .sub(&w.scale(&h_j2))
                .scale(&denom.inv()?);
        }
        debug_assert_eq!(w.term_count(), 1, "averaging must isolate one term");
        out.push(j1);
        g = g.sub(&w);
    }
    Ok(out)
}
