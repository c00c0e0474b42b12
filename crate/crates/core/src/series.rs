//! Truncated skew power series.
//!
//! A series is a sparse map from exponent vectors to coefficients together
//! with a precision bound: terms of total degree >= prec are unknown and
//! dropped.  Multiplication reorders monomials with the normalization
//! cocycle `mu`, so `x^s * x^t = mu(s, t) * x^{s+t}`.  Exponents are allowed
//! to be negative (the same arithmetic serves the Laurent localization);
//! ring-element constructors on [`SeriesRing`] produce ordinary power series.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::QMatrix;
use crate::scalar::{FieldElem, GroupUnit};

/// Exponent vector with the graded order: lower total degree first, ties
/// broken so that the vector whose first differing entry is larger comes
/// first.  The least element of a series under this order is its leading
/// term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Monomial(exponents)
    }

    pub fn zero(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The i-th unit vector, 1-based.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "generator index out of range");
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    pub fn add(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.len(), other.len(), "exponent length");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Renders `x1^2*x2`; the empty product renders as `1`.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                _ => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {
                for (a, b) in self.0.iter().zip(&other.0) {
                    match a.cmp(b) {
                        Ordering::Equal => {}
                        // Larger first entry precedes within a degree block.
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Less => return Ordering::Greater,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x^s * x^t` in normal form: the cocycle scalar and the summed exponent.
pub fn mono_mul(q: &QMatrix, s: &Monomial, t: &Monomial) -> (GroupUnit, Monomial) {
    (q.mu(s.exponents(), t.exponents()), s.add(t))
}

/// Ring context: the commutation matrix plus a working precision.
#[derive(Debug, Clone)]
pub struct SeriesRing {
    q: Arc<QMatrix>,
    prec: i64,
}

impl SeriesRing {
    pub fn new(q: QMatrix) -> Self {
        Self::with_precision(q, crate::DEFAULT_PRECISION)
    }

    pub fn with_precision(q: QMatrix, prec: u32) -> Self {
        assert!(prec >= 1, "precision must be positive");
        SeriesRing {
            q: Arc::new(q),
            prec: prec as i64,
        }
    }

    pub fn q(&self) -> &QMatrix {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.q.n()
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn zero(&self) -> SkewSeries {
        SkewSeries {
            q: Arc::clone(&self.q),
            prec: self.prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: FieldElem) -> SkewSeries {
        let mut s = self.zero();
        s.add_term(Monomial::zero(self.n()), c);
        s
    }

    pub fn one(&self) -> SkewSeries {
        self.constant(FieldElem::one(self.q.sig()))
    }

    /// The generator `x_i`, 1-based.
    pub fn var(&self, i: usize) -> Result<SkewSeries> {
        if i < 1 || i > self.n() {
            return Err(Error::InvalidConfig(format!(
                "generator index {} out of range 1..={}",
                i,
                self.n()
            )));
        }
        let mut s = self.zero();
        s.add_term(Monomial::unit(self.n(), i), FieldElem::one(self.q.sig()));
        Ok(s)
    }

    /// `c * x^e`; exponents may be negative (Laurent-side terms).
    pub fn monomial(&self, c: FieldElem, exponents: &[i64]) -> Result<SkewSeries> {
        if exponents.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: exponents.len(),
            });
        }
        let mut s = self.zero();
        s.add_term(Monomial::new(exponents.to_vec()), c);
        Ok(s)
    }
}

/// A truncated series `sum c_s x^s`.
#[derive(Debug, Clone)]
pub struct SkewSeries {
    q: Arc<QMatrix>,
    prec: i64,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl SkewSeries {
    fn compatible(&self, other: &SkewSeries) {
        assert!(
            Arc::ptr_eq(&self.q, &other.q) || self.q == other.q,
            "series from different rings"
        );
    }

    pub fn q(&self) -> &QMatrix {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.q.n()
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Lowers (never raises) the precision, dropping newly-unknown terms.
    pub fn truncated(&self, prec: i64) -> SkewSeries {
        let mut out = self.clone();
        out.prec = self.prec.min(prec);
        out.terms.retain(|m, _| m.degree() < out.prec);
        out
    }

    /// Same ring, no terms, explicit precision.
    pub(crate) fn empty_like(&self, prec: i64) -> SkewSeries {
        SkewSeries {
            q: Arc::clone(&self.q),
            prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&FieldElem> {
        self.terms.get(m)
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// Adds `c * x^m` in place, dropping the entry if it cancels and
    /// respecting the precision bound.
    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        assert_eq!(m.len(), self.n(), "exponent length");
        if c.is_zero() || m.degree() >= self.prec {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// The graded-order least term.
    pub fn leading(&self) -> Result<(&Monomial, &FieldElem)> {
        self.terms
            .iter()
            .next()
            .ok_or(Error::NoLeadingTerm)
    }

    pub fn add(&self, other: &SkewSeries) -> SkewSeries {
        self.compatible(other);
        let prec = self.prec.min(other.prec);
        let mut out = SkewSeries {
            q: Arc::clone(&self.q),
            prec,
            terms: BTreeMap::new(),
        };
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SkewSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn sub(&self, other: &SkewSeries) -> SkewSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElem) -> SkewSeries {
        let mut out = SkewSeries {
            q: Arc::clone(&self.q),
            prec: self.prec,
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &SkewSeries) -> SkewSeries {
        self.compatible(other);
        let prec = self.prec.min(other.prec);
        let mut out = SkewSeries {
            q: Arc::clone(&self.q),
            prec,
            terms: BTreeMap::new(),
        };
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                if s.degree() + t.degree() >= prec {
                    continue;
                }
                let (scalar, m) = mono_mul(&self.q, s, t);
                out.add_term(m, a.mul(b).mul(&FieldElem::from_unit(&scalar)));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SkewSeries {
        let mut acc = SkewSeries {
            q: Arc::clone(&self.q),
            prec: self.prec,
            terms: BTreeMap::new(),
        };
        acc.add_term(
            Monomial::zero(self.n()),
            FieldElem::one(self.q.sig()),
        );
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse of a series with invertible constant term.
    ///
    /// Writes `f = c0 (1 - u)` with `u` of strictly positive degree and sums
    /// the geometric series by Horner steps; `prec - 1` multiplications
    /// suffice because `u^prec` vanishes mod the truncation.
    pub fn invert(&self) -> Result<SkewSeries> {
        if self
            .terms
            .keys()
            .any(|m| m.exponents().iter().any(|e| *e < 0))
        {
            return Err(Error::NotAUnit(
                "series has negative exponents; invert through the Laurent form".into(),
            ));
        }
        let zero = Monomial::zero(self.n());
        let c0 = match self.terms.get(&zero) {
            Some(c) => c.clone(),
            None => {
                return Err(Error::NotAUnit(
                    "constant term is zero".into(),
                ))
            }
        };
        let c0_inv = c0.inv().expect("nonzero constant term");
        // u = 1 - f / c0 has zero constant term.
        let mut u = self.scale(&c0_inv).neg();
        u.add_term(zero.clone(), FieldElem::one(self.q.sig()));
        let one = {
            let mut s = SkewSeries {
                q: Arc::clone(&self.q),
                prec: self.prec,
                terms: BTreeMap::new(),
            };
            s.add_term(zero, FieldElem::one(self.q.sig()));
            s
        };
        let mut acc = one.clone();
        for _ in 1..self.prec {
            acc = one.add(&u.mul(&acc));
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Conjugation `x^v f x^{-v}`: each term `c x^s` becomes
    /// `sigma(v, s) c x^s`.
    pub fn conjugate_by_exponent(&self, v: &[i64]) -> SkewSeries {
        assert_eq!(v.len(), self.n(), "exponent length");
        let mut out = SkewSeries {
            q: Arc::clone(&self.q),
            prec: self.prec,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            let sc = self
                .q
                .sigma(v, m.exponents())
                .expect("dimension checked");
            out.add_term(m.clone(), c.mul(&FieldElem::from_unit(&sc)));
        }
        out
    }

    /// Conjugation by the generator `x_i` (1-based).
    pub fn conjugate_by_xi(&self, i: usize) -> Result<SkewSeries> {
        if i < 1 || i > self.n() {
            return Err(Error::InvalidConfig(format!(
                "generator index {} out of range 1..={}",
                i,
                self.n()
            )));
        }
        let mut v = vec![0; self.n()];
        v[i - 1] = 1;
        Ok(self.conjugate_by_exponent(&v))
    }

    /// Diagonal torus action: `c x^s` becomes `h(s) c x^s`.
    pub fn apply_torus(&self, h: &TorusElement) -> Result<SkewSeries> {
        if h.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: h.n(),
            });
        }
        let mut out = SkewSeries {
            q: Arc::clone(&self.q),
            prec: self.prec,
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(&h.eval(m.exponents())));
        }
        Ok(out)
    }

    /// Normality to the stored precision: for every generator `x_j` the
    /// equation `f * x_j = g_j * f` has a series solution `g_j` mod the
    /// truncation ideal.  Each generator contributes one degree-graded
    /// linear system over the coefficient field; `true` means every system
    /// is consistent, i.e. the element is normal to this precision.
    pub fn is_normal(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let n = self.n();
        let delta = self
            .terms
            .keys()
            .map(|m| m.degree())
            .min()
            .expect("nonzero series");
        let max_unknown = self.prec - 1 - delta;
        if max_unknown < 0 {
            return false;
        }
        let unknowns = monomials_up_to(n, max_unknown);
        for j in 1..=n {
            let xj = {
                let mut s = SkewSeries {
                    q: Arc::clone(&self.q),
                    prec: self.prec,
                    terms: BTreeMap::new(),
                };
                s.add_term(Monomial::unit(n, j), FieldElem::one(self.q.sig()));
                s
            };
            let rhs = self.mul(&xj);
            // Row index per monomial that can appear on either side.
            let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
            for (u, _) in unknowns.iter().enumerate() {
                for (s, _) in &self.terms {
                    let w = unknowns[u].add(s);
                    if w.degree() < self.prec {
                        let next = row_of.len();
                        row_of.entry(w).or_insert(next);
                    }
                }
            }
            for (w, _) in &rhs.terms {
                let next = row_of.len();
                row_of.entry(w.clone()).or_insert(next);
            }
            let zero = FieldElem::zero(self.q.sig());
            let width = unknowns.len() + 1;
            let mut rows = vec![vec![zero.clone(); width]; row_of.len()];
            for (uidx, u) in unknowns.iter().enumerate() {
                for (s, c) in &self.terms {
                    let w = u.add(s);
                    if w.degree() >= self.prec {
                        continue;
                    }
                    let row = row_of[&w];
                    let scalar = FieldElem::from_unit(&self.q.mu(u.exponents(), s.exponents()));
                    rows[row][uidx] = rows[row][uidx].add(&scalar.mul(c));
                }
            }
            for (w, c) in &rhs.terms {
                let row = row_of[w];
                rows[row][width - 1] = c.clone();
            }
            if !system_consistent(rows) {
                return false;
            }
        }
        true
    }
}

impl PartialEq for SkewSeries {
    /// Equality of the known terms; precision is not compared.
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for SkewSeries {}

impl fmt::Display for SkewSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (neg, coeff) = c.display_product_form();
            let body = if m.is_constant() {
                coeff
            } else if coeff == "1" {
                m.render()
            } else {
                format!("{}*{}", coeff, m.render())
            };
            if first {
                if neg {
                    write!(f, "-{}", body)?;
                } else {
                    write!(f, "{}", body)?;
                }
                first = false;
            } else if neg {
                write!(f, " - {}", body)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

/// A point of the torus `(k^x)^n` acting diagonally on monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    entries: Vec<FieldElem>,
}

impl TorusElement {
    pub fn new(entries: Vec<FieldElem>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.is_zero() {
                return Err(Error::InvalidTorusElement { index: i + 1 });
            }
        }
        Ok(TorusElement { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    /// `h(s) = h_1^{s_1} ... h_n^{s_n}`; multiplicative in `s`.
    pub fn eval(&self, s: &[i64]) -> FieldElem {
        assert_eq!(s.len(), self.entries.len(), "exponent length");
        let sig = self.entries[0].sig();
        let mut acc = FieldElem::one(sig);
        for (h, e) in self.entries.iter().zip(s) {
            if *e != 0 {
                acc = acc.mul(&h.pow(*e).expect("nonzero torus entry"));
            }
        }
        acc
    }
}

/// All exponent vectors in `N^n` of total degree <= max_degree, graded order.
pub fn monomials_up_to(n: usize, max_degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if max_degree < 0 {
        return out;
    }
    let mut cur = vec![0i64; n];
    fn rec(cur: &mut Vec<i64>, pos: usize, remaining: i64, out: &mut Vec<Monomial>) {
        if pos == cur.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=remaining {
            cur[pos] = e;
            rec(cur, pos + 1, remaining - e, out);
            cur[pos] = 0;
        }
    }
    rec(&mut cur, 0, max_degree, &mut out);
    out.sort();
    out
}

/// Gaussian elimination consistency check for `[A | b]` rows over the
/// coefficient field: consistent iff no reduced row is `0 = nonzero`.
fn system_consistent(mut rows: Vec<Vec<FieldElem>>) -> bool {
    if rows.is_empty() {
        return true;
    }
    let width = rows[0].len();
    let cols = width - 1;
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|r| !rows[*r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].inv().expect("nonzero pivot");
        for x in rows[pivot_row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..width {
                    let delta = rows[pivot_row][c].mul(&factor);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    for row in &rows {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return false;
        }
    }
    true
}
