//! Elements of the Laurent localization, kept in the Ore form
//! `(x^u)^{-1} * body` with `u` a nonnegative shift and `body` a power
//! series.  Reshifting and factor-stripping use the cocycle identity
//! `x^a x^b = mu(a, b) x^{a+b}`, so every element compares exactly against
//! any other once both are brought to a common shift.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::FieldElem;
use crate::series::{Monomial, SkewSeries};

#[derive(Debug, Clone)]
pub struct LaurentElem {
    shift: Vec<i64>,
    body: SkewSeries,
}

impl LaurentElem {
    /// Wraps a power series as `(x^0)^{-1} * f`.
    pub fn from_series(body: SkewSeries) -> Self {
        let shift = vec![0; body.n()];
        let mut elem = LaurentElem { shift, body };
        elem.normalize();
        elem
    }

    /// `(x^shift)^{-1} * body`.
    pub fn new(shift: Vec<i64>, body: SkewSeries) -> Result<Self> {
        if shift.len() != body.n() {
            return Err(Error::DimensionMismatch {
                expected: body.n(),
                found: shift.len(),
            });
        }
        let mut elem = LaurentElem { shift, body };
        elem.normalize();
        Ok(elem)
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn body(&self) -> &SkewSeries {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn n(&self) -> usize {
        self.body.n()
    }

    /// Multiplies the body by `x^d` on the left, term by term, raising the
    /// precision bound to match (the element's meaning fixes what is known).
    fn shifted_body(body: &SkewSeries, d: &[i64]) -> SkewSeries {
        let degree: i64 = d.iter().sum();
        let mut out = body.empty_like(body.precision() + degree);
        for (m, c) in body.terms() {
            let mu = body.q().mu(d, m.exponents());
            let shifted = Monomial::new(
                d.iter().zip(m.exponents()).map(|(a, b)| a + b).collect(),
            );
            out.add_term(shifted, c.mul(&FieldElem::from_unit(&mu)));
        }
        out
    }

    /// Divides the body by `x^d` on the left: `x^d x^{s-d} = mu(d, s-d) x^s`
    /// fixes each new coefficient.  Negative entries of `d` multiply instead.
    fn stripped_body(body: &SkewSeries, d: &[i64]) -> SkewSeries {
        let degree: i64 = d.iter().sum();
        let mut out = body.empty_like(body.precision() - degree);
        for (m, c) in body.terms() {
            let reduced = Monomial::new(
                m.exponents().iter().zip(d).map(|(s, a)| s - a).collect(),
            );
            let mu = body.q().mu(d, reduced.exponents());
            let inv = FieldElem::from_unit(&mu.inv());
            out.add_term(reduced, c.mul(&inv));
        }
        out
    }

    /// Multiplies the body by `x^u` on the right, term by term.
    fn right_shifted_body(body: &SkewSeries, u: &[i64]) -> SkewSeries {
        let degree: i64 = u.iter().sum();
        let mut out = body.empty_like(body.precision() + degree);
        for (m, c) in body.terms() {
            let mu = body.q().mu(m.exponents(), u);
            let shifted = Monomial::new(
                m.exponents().iter().zip(u).map(|(a, b)| a + b).collect(),
            );
            out.add_term(shifted, c.mul(&FieldElem::from_unit(&mu)));
        }
        out
    }

    /// Rewrites in place to the equivalent `(x^w)^{-1} * body'` for w >= shift.
    fn reshift_to(&mut self, w: &[i64]) {
        let d: Vec<i64> = w.iter().zip(&self.shift).map(|(a, b)| a - b).collect();
        debug_assert!(d.iter().all(|x| *x >= 0), "reshift must raise the shift");
        if d.iter().all(|x| *x == 0) {
            return;
        }
        let factor = FieldElem::from_unit(&self.body.q().mu(&d, &self.shift).inv());
        self.body = Self::shifted_body(&self.body, &d).scale(&factor);
        self.shift = w.to_vec();
    }

    /// Canonical form: shift >= 0 and no common monomial factor between the
    /// shift and the body support.
    fn normalize(&mut self) {
        if self.body.is_zero() {
            self.shift = vec![0; self.n()];
            return;
        }
        let n = self.n();
        let mut support_min = vec![i64::MAX; n];
        for (m, _) in self.body.terms() {
            for (acc, e) in support_min.iter_mut().zip(m.exponents()) {
                *acc = (*acc).min(*e);
            }
        }
        let d: Vec<i64> = self
            .shift
            .iter()
            .zip(&support_min)
            .map(|(u, w)| (*u).min(*w))
            .collect();
        if d.iter().all(|x| *x == 0) {
            return;
        }
        let new_shift: Vec<i64> = self.shift.iter().zip(&d).map(|(u, x)| u - x).collect();
        let factor = FieldElem::from_unit(&self.body.q().mu(&d, &new_shift));
        self.body = Self::stripped_body(&self.body, &d).scale(&factor);
        self.shift = new_shift;
    }

    /// Brings both elements to the componentwise-max shift.
    fn aligned(&self, other: &LaurentElem) -> (LaurentElem, LaurentElem) {
        let w: Vec<i64> = self
            .shift
            .iter()
            .zip(&other.shift)
            .map(|(a, b)| *a.max(b))
            .collect();
        let mut a = self.clone();
        let mut b = other.clone();
        a.reshift_to(&w);
        b.reshift_to(&w);
        (a, b)
    }

    pub fn add(&self, other: &LaurentElem) -> LaurentElem {
        let (a, b) = self.aligned(other);
        let mut out = LaurentElem {
            shift: a.shift.clone(),
            body: a.body.add(&b.body),
        };
        out.normalize();
        out
    }

    pub fn neg(&self) -> LaurentElem {
        LaurentElem {
            shift: self.shift.clone(),
            body: self.body.neg(),
        }
    }

    pub fn sub(&self, other: &LaurentElem) -> LaurentElem {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> LaurentElem {
        let mut out = LaurentElem {
            shift: self.shift.clone(),
            body: self.body.scale(c),
        };
        out.normalize();
        out
    }

    /// `(x^u)^{-1} F * (x^v)^{-1} G = (x^{u+v})^{-1} mu(v,u)^{-1} (x^v F x^{-v}) G`.
    pub fn mul(&self, other: &LaurentElem) -> LaurentElem {
        let q = self.body.q().clone();
        let conj = self.body.conjugate_by_exponent(&other.shift);
        let factor = FieldElem::from_unit(&q.mu(&other.shift, &self.shift).inv());
        let body = conj.mul(&other.body).scale(&factor);
        let shift: Vec<i64> = self
            .shift
            .iter()
            .zip(&other.shift)
            .map(|(a, b)| a + b)
            .collect();
        let mut out = LaurentElem { shift, body };
        out.normalize();
        out
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<LaurentElem> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut one = self.body.empty_like(self.body.precision());
        one.add_term(
            Monomial::zero(self.n()),
            FieldElem::one(self.body.q().sig()),
        );
        let mut acc = LaurentElem::from_series(one);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Inverse of a monomial-times-unit element: the body must factor as
    /// `x^w * U` with `U` having an invertible constant term.
    pub fn inv(&self) -> Result<LaurentElem> {
        if self.body.is_zero() {
            return Err(Error::NotAUnit("zero element".into()));
        }
        let n = self.n();
        let mut w = vec![i64::MAX; n];
        for (m, _) in self.body.terms() {
            for (acc, e) in w.iter_mut().zip(m.exponents()) {
                *acc = (*acc).min(*e);
            }
        }
        let unit_part = Self::stripped_body(&self.body, &w);
        let inverted = unit_part.invert()?;
        // F = x^w U gives F^{-1} = U^{-1} (x^w)^{-1} = (x^w)^{-1} (x^w U^{-1} x^{-w});
        // the original shift multiplies back on the right.
        let mut body = inverted.conjugate_by_exponent(&w);
        if self.shift.iter().any(|x| *x != 0) {
            body = Self::right_shifted_body(&body, &self.shift);
        }
        let mut out = LaurentElem { shift: w, body };
        out.normalize();
        Ok(out)
    }
}

impl PartialEq for LaurentElem {
    /// Agreement of all commonly-known terms at the common shift.
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        let prec = a.body.precision().min(b.body.precision());
        a.body.truncated(prec) == b.body.truncated(prec)
    }
}

impl Eq for LaurentElem {}

impl fmt::Display for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift.iter().all(|x| *x == 0) {
            return write!(f, "{}", self.body);
        }
        let shift_mono = Monomial::new(self.shift.clone());
        if self.body.term_count() == 1 {
            let (m, c) = self.body.terms().next().unwrap();
            if m.is_constant() && c.is_one() {
                return write!(f, "inv({})", shift_mono.render());
            }
        }
        write!(f, "inv({}) * ({})", shift_mono.render(), self.body)
    }
}
