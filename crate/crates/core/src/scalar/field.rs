//! Elements of `Q(zeta_m)(t_1..t_r)` as fractions of sparse Laurent
//! polynomials.
//!
//! Fractions are kept exact: equality is cross-multiplication, and the only
//! reduction performed is content normalization (rational content divided
//! out, common monomial factors shifted away, sign of the denominator
//! pinned).  No polynomial gcd is ever computed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Cyclotomic, GroupUnit, Signature};

/// Sparse Laurent polynomial in `t_1..t_r` with cyclotomic coefficients.
/// Keys are exponent vectors of length `r`; zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    m: u64,
    r: usize,
    terms: BTreeMap<Vec<i64>, Cyclotomic>,
}

impl LaurentPoly {
    pub fn zero(sig: Signature) -> Self {
        LaurentPoly {
            m: sig.m,
            r: sig.r,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: Signature) -> Self {
        Self::constant(sig, Cyclotomic::one(sig.m))
    }

    pub fn constant(sig: Signature, c: Cyclotomic) -> Self {
        let mut p = Self::zero(sig);
        p.insert(vec![0; sig.r], c);
        p
    }

    pub fn monomial(sig: Signature, exps: Vec<i64>, c: Cyclotomic) -> Self {
        assert_eq!(exps.len(), sig.r, "exponent vector length");
        let mut p = Self::zero(sig);
        p.insert(exps, c);
        p
    }

    fn insert(&mut self, exps: Vec<i64>, c: Cyclotomic) {
        if !c.is_zero() {
            self.terms.insert(exps, c);
        }
    }

    fn add_assign_term(&mut self, exps: &[i64], c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(existing) => {
                let sum = existing.add(c);
                if sum.is_zero() {
                    self.terms.remove(exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps.to_vec(), c.clone());
            }
        }
    }

    pub fn sig(&self) -> Signature {
        Signature {
            m: self.m,
            r: self.r,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(vec![0; self.r].as_slice())
                .map(|c| *c == Cyclotomic::one(self.m))
                .unwrap_or(false)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.sig(), other.sig(), "scalar signatures differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_assign_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            m: self.m,
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.sig(), other.sig(), "scalar signatures differ");
        let mut out = LaurentPoly::zero(self.sig());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_assign_term(&exps, &ca.mul(cb));
            }
        }
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> LaurentPoly {
        if q.is_zero() {
            return LaurentPoly::zero(self.sig());
        }
        LaurentPoly {
            m: self.m,
            r: self.r,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.scale(q)))
                .collect(),
        }
    }

    fn shift(&mut self, by: &[i64]) {
        if by.iter().all(|b| *b == 0) {
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (mut e, c) in old {
            for (ei, bi) in e.iter_mut().zip(by) {
                *ei += bi;
            }
            self.terms.insert(e, c);
        }
    }

    fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for (a, b) in acc.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
            acc
        }))
    }

    /// Constant term when the polynomial is a rational constant.
    fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if e.iter().any(|x| *x != 0) {
            return None;
        }
        c.as_rational().cloned()
    }

    /// Sum-of-terms string in the series grammar; deterministic order.
    fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (exps, c) in &self.terms {
            let (neg, piece) = term_product_form(c, exps);
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&piece);
        }
        out
    }

    fn term_count(&self) -> usize {
        self.terms.len()
    }
}

fn rational_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn t_monomial_str(exps: &[i64]) -> Option<String> {
    let mut parts = Vec::new();
    for (k, e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("t{}", k + 1)),
            e => parts.push(format!("t{}^{}", k + 1, e)),
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// Render `c * t^exps` as a product-context piece with its sign folded out
/// when the cyclotomic part is a single basis multiple.
fn term_product_form(c: &Cyclotomic, exps: &[i64]) -> (bool, String) {
    let tpart = t_monomial_str(exps);
    if let Some(q) = c.as_rational() {
        let neg = q.is_negative();
        let mag = q.abs();
        let piece = match tpart {
            None => rational_str(&mag),
            Some(t) => {
                if mag.is_one() {
                    t
                } else {
                    format!("{}*{}", rational_str(&mag), t)
                }
            }
        };
        return (neg, piece);
    }
    // Single zeta-basis term folds its sign; anything else is parenthesized.
    let nonzero: Vec<usize> = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(k, _)| k)
        .collect();
    if nonzero.len() == 1 {
        let k = nonzero[0];
        let q = &c.coeffs()[k];
        let neg = q.is_negative();
        let mag = q.abs();
        let zeta = if k == 1 {
            "zeta".to_string()
        } else {
            format!("zeta^{}", k)
        };
        let mut piece = if mag.is_one() {
            zeta
        } else {
            format!("{}*{}", rational_str(&mag), zeta)
        };
        if let Some(t) = tpart {
            piece.push('*');
            piece.push_str(&t);
        }
        (neg, piece)
    } else {
        let mut piece = format!("({})", c);
        if let Some(t) = tpart {
            piece.push('*');
            piece.push_str(&t);
        }
        (false, piece)
    }
}

/// A fraction of Laurent polynomials.  The denominator is never zero.
#[derive(Debug, Clone)]
pub struct FieldElem {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl FieldElem {
    pub fn zero(sig: Signature) -> Self {
        FieldElem {
            num: LaurentPoly::zero(sig),
            den: LaurentPoly::one(sig),
        }
    }

    pub fn one(sig: Signature) -> Self {
        FieldElem {
            num: LaurentPoly::one(sig),
            den: LaurentPoly::one(sig),
        }
    }

    pub fn from_rational(sig: Signature, q: BigRational) -> Self {
        let mut f = FieldElem {
            num: LaurentPoly::constant(sig, Cyclotomic::from_rational(sig.m, q)),
            den: LaurentPoly::one(sig),
        };
        f.normalize();
        f
    }

    pub fn from_int(sig: Signature, n: i64) -> Self {
        Self::from_rational(sig, BigRational::from(BigInt::from(n)))
    }

    pub fn zeta(sig: Signature, a: i64) -> Self {
        FieldElem {
            num: LaurentPoly::constant(sig, Cyclotomic::zeta_pow(sig.m, a)),
            den: LaurentPoly::one(sig),
        }
    }

    /// `t_k^e` for a 1-based index `k`.
    pub fn t_pow(sig: Signature, k: usize, e: i64) -> Self {
        assert!(k >= 1 && k <= sig.r, "free generator index out of range");
        let mut exps = vec![0; sig.r];
        exps[k - 1] = e;
        let mut f = FieldElem {
            num: LaurentPoly::monomial(sig, exps, Cyclotomic::one(sig.m)),
            den: LaurentPoly::one(sig),
        };
        f.normalize();
        f
    }

    /// Multiplicative embedding of a scalar-group unit.
    pub fn from_unit(u: &GroupUnit) -> Self {
        let sig = u.sig();
        let mut f = FieldElem {
            num: LaurentPoly::monomial(
                sig,
                u.free().to_vec(),
                Cyclotomic::zeta_pow(sig.m, u.torsion() as i64),
            ),
            den: LaurentPoly::one(sig),
        };
        f.normalize();
        f
    }

    pub fn sig(&self) -> Signature {
        self.num.sig()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Some(q) when the element is the rational constant q.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_rational()?;
        let d = self.den.as_rational()?;
        Some(n / d)
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        let mut out = FieldElem {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        let mut out = FieldElem {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        };
        out.normalize();
        out
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = FieldElem {
            num: self.den.clone(),
            den: self.num.clone(),
        };
        out.normalize();
        Ok(out)
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = FieldElem::one(self.sig());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    fn normalize(&mut self) {
        assert!(!self.den.is_zero(), "zero denominator");
        if self.num.is_zero() {
            self.den = LaurentPoly::one(self.sig());
            return;
        }
        // Shift a common monomial factor away: union of supports gets
        // componentwise minimum zero.
        if self.sig().r > 0 {
            let mn = self.num.min_exponents().unwrap();
            let md = self.den.min_exponents().unwrap();
            let shift: Vec<i64> = mn.iter().zip(&md).map(|(a, b)| -(*a).min(*b)).collect();
            self.num.shift(&shift);
            self.den.shift(&shift);
        }
        // Divide out the rational content of all coefficients.
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for poly in [&self.num, &self.den] {
            for c in poly.terms.values() {
                for q in c.coeffs() {
                    if !q.is_zero() {
                        g = g.gcd(&q.numer().abs());
                        l = l.lcm(q.denom());
                    }
                }
            }
        }
        let content = BigRational::new(g, l);
        if !content.is_one() {
            let inv = content.recip();
            self.num = self.num.scale_rational(&inv);
            self.den = self.den.scale_rational(&inv);
        }
        // Pin the sign of the denominator's first coefficient positive.
        let lead = self
            .den
            .terms
            .values()
            .next()
            .and_then(|c| c.first_nonzero().cloned())
            .expect("nonzero denominator");
        if lead.is_negative() {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
        if self.num == self.den {
            self.num = LaurentPoly::one(self.sig());
            self.den = LaurentPoly::one(self.sig());
        }
    }

    /// Product-context rendering with folded sign, e.g. `(false, "2*zeta")`
    /// or `(true, "3/2*t1")` for `-3/2*t1`.
    pub fn display_product_form(&self) -> (bool, String) {
        if let Some(q) = self.as_rational() {
            return (q.is_negative(), rational_str(&q.abs()));
        }
        if self.den.is_one() {
            if self.num.term_count() == 1 {
                let (e, c) = self.num.terms.iter().next().unwrap();
                return term_product_form(c, e);
            }
            return (false, format!("({})", self.num.render()));
        }
        let den_str = format!("inv({})", self.den.render());
        if self.num.is_one() {
            return (false, den_str);
        }
        if self.num.term_count() == 1 {
            let (e, c) = self.num.terms.iter().next().unwrap();
            let (neg, piece) = term_product_form(c, e);
            return (neg, format!("{}*{}", piece, den_str));
        }
        (false, format!("({})*{}", self.num.render(), den_str))
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        if self.sig() != other.sig() {
            return false;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for FieldElem {}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, piece) = self.display_product_form();
        if neg {
            write!(f, "-{}", piece)
        } else {
            write!(f, "{}", piece)
        }
    }
}
