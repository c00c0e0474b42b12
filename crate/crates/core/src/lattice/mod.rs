//! The commutation matrix, its bicharacter, and the radical lattice.
//!
//! `sigma(s, t) = prod_{i,j} q_ij^{s_i t_j}` governs monomial commutation:
//! `x^s x^t = sigma(s, t) x^t x^s`.  Its radical
//! `S = {s : sigma(s, t) = 1 for all t}` is the lattice of central monomial
//! exponents.  The kernel is computed by assembling the free-part equations
//! and the torsion congruences (augmented with `m * e_j` columns) into one
//! integer system and running Smith reduction; bases are canonicalized in
//! row Hermite form.

pub mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{GroupUnit, Signature};
use snf::{det_abs, hermite_rows, hnf_contains, kernel_basis, smith_normal_form, IntMat};

/// Multiplicatively antisymmetric matrix: `q_ii = 1`, `q_ij * q_ji = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    sig: Signature,
    entries: Vec<GroupUnit>, // row-major n x n
}

impl QMatrix {
    /// Build from the upper triangle, row-major: `(1,2), ..., (1,n), (2,3), ...`
    /// in 1-based naming.  The diagonal and lower triangle are filled in.
    pub fn from_upper(n: usize, sig: Signature, upper: Vec<GroupUnit>) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::InvalidConfig(format!(
                "expected {} upper-triangle entries for n = {}, found {}",
                expected,
                n,
                upper.len()
            )));
        }
        let id = GroupUnit::identity(sig);
        let mut entries = vec![id; n * n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let u = it.next().unwrap();
                if u.sig() != sig {
                    return Err(Error::SignatureMismatch {
                        expected_m: sig.m,
                        expected_r: sig.r,
                        found_m: u.sig().m,
                        found_r: u.sig().r,
                    });
                }
                entries[j * n + i] = u.inv();
                entries[i * n + j] = u;
            }
        }
        Ok(QMatrix { n, sig, entries })
    }

    /// Build from a full matrix, validating multiplicative antisymmetry.
    pub fn new(n: usize, sig: Signature, entries: Vec<GroupUnit>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidConfig(format!(
                "expected {} entries, found {}",
                n * n,
                entries.len()
            )));
        }
        for (idx, u) in entries.iter().enumerate() {
            if u.sig() != sig {
                return Err(Error::SignatureMismatch {
                    expected_m: sig.m,
                    expected_r: sig.r,
                    found_m: u.sig().m,
                    found_r: u.sig().r,
                });
            }
            let (i, j) = (idx / n, idx % n);
            if i == j && !u.is_identity() {
                return Err(Error::InvalidConfig(format!(
                    "diagonal entry q({},{}) must be 1",
                    i + 1,
                    j + 1
                )));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let prod = entries[i * n + j].mul(&entries[j * n + i])?;
                if !prod.is_identity() {
                    return Err(Error::InvalidConfig(format!(
                        "q({},{}) * q({},{}) must be 1",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(QMatrix { n, sig, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// 0-based entry access.
    pub fn entry(&self, i: usize, j: usize) -> &GroupUnit {
        &self.entries[i * self.n + j]
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// The commutation bicharacter `sigma(s, t) = prod_{i,j} q_ij^{s_i t_j}`.
    pub fn sigma(&self, s: &[i64], t: &[i64]) -> Result<GroupUnit> {
        self.check_dim(s)?;
        self.check_dim(t)?;
        let mut tor: i128 = 0;
        let mut free = vec![0i128; self.sig.r];
        for (i, si) in s.iter().enumerate() {
            if *si == 0 {
                continue;
            }
            for (j, tj) in t.iter().enumerate() {
                if *tj == 0 || i == j {
                    continue;
                }
                let c = *si as i128 * *tj as i128;
                let q = self.entry(i, j);
                tor += c * q.torsion() as i128;
                for (acc, e) in free.iter_mut().zip(q.free()) {
                    *acc += c * *e as i128;
                }
            }
        }
        Ok(self.unit_from_i128(tor, free))
    }

    /// Normalization cocycle: `x^s x^t = mu(s, t) x^{s+t}` with
    /// `mu(s, t) = prod_{i<j} q_ji^{s_j t_i}`.
    pub fn mu(&self, s: &[i64], t: &[i64]) -> GroupUnit {
        assert_eq!(s.len(), self.n, "exponent length");
        assert_eq!(t.len(), self.n, "exponent length");
        let mut tor: i128 = 0;
        let mut free = vec![0i128; self.sig.r];
        for i in 0..self.n {
            if t[i] == 0 {
                continue;
            }
            for j in i + 1..self.n {
                if s[j] == 0 {
                    continue;
                }
                let c = s[j] as i128 * t[i] as i128;
                let q = self.entry(j, i);
                tor += c * q.torsion() as i128;
                for (acc, e) in free.iter_mut().zip(q.free()) {
                    *acc += c * *e as i128;
                }
            }
        }
        self.unit_from_i128(tor, free)
    }

    fn unit_from_i128(&self, tor: i128, free: Vec<i128>) -> GroupUnit {
        let m = self.sig.m as i128;
        let t = tor.rem_euclid(m) as i64;
        let free: Vec<i64> = free
            .into_iter()
            .map(|e| i64::try_from(e).expect("free exponent overflow"))
            .collect();
        GroupUnit::new(self.sig.m, t, free)
    }
}

/// The radical `S = {s : sigma(s, .) = 1}` with a canonical Hermite basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelLattice {
    ambient: usize,
    basis: Vec<Vec<i64>>,
    basis_big: Vec<Vec<BigInt>>,
}

impl KernelLattice {
    fn from_generators(ambient: usize, gens: Vec<Vec<BigInt>>) -> Self {
        let basis_big = hermite_rows(&gens, ambient);
        let basis = basis_big
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| i64::try_from(x).expect("kernel basis entry overflow"))
                    .collect()
            })
            .collect();
        KernelLattice {
            ambient,
            basis,
            basis_big,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Canonical basis, rows in Hermite normal form.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(hnf_contains(&self.basis_big, v))
    }
}

/// Compute the radical lattice of the bicharacter.
///
/// For each generator index j the condition `sigma(s, e_j) = 1` contributes
/// `r` exact equations (free parts) and, when `m > 1`, one congruence mod m,
/// folded into the integer system with an auxiliary `m * e_j` column.
pub fn kernel_lattice(q: &QMatrix) -> KernelLattice {
    let n = q.n();
    let sig = q.sig();
    let torsion_rows = sig.m > 1;
    let naux = if torsion_rows { n } else { 0 };
    let width = n + naux;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..n {
        for k in 0..sig.r {
            let mut row = vec![BigInt::zero(); width];
            for i in 0..n {
                if i != j {
                    row[i] = BigInt::from(q.entry(i, j).free()[k]);
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
        if torsion_rows {
            let mut row = vec![BigInt::zero(); width];
            for i in 0..n {
                if i != j {
                    row[i] = BigInt::from(q.entry(i, j).torsion() as i64);
                }
            }
            row[n + j] = BigInt::from(sig.m as i64);
            if row[..n].iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let mat = if rows.is_empty() {
        IntMat::zeros(0, n)
    } else {
        IntMat::from_rows(rows)
    };
    let gens: Vec<Vec<BigInt>> = kernel_basis(&mat)
        .into_iter()
        .map(|col| col.into_iter().take(n).collect())
        .collect();
    KernelLattice::from_generators(n, gens)
}

/// Index of the lattice in its ambient `Z^n`: finite exactly when the rank
/// is full, in which case it is |det| of the basis matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{}", n),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for LatticeIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn subgroup_index(lat: &KernelLattice) -> LatticeIndex {
    if lat.rank() < lat.ambient() {
        return LatticeIndex::Infinite;
    }
    if lat.ambient() == 0 {
        return LatticeIndex::Finite(BigInt::from(1));
    }
    LatticeIndex::Finite(det_abs(&IntMat::from_rows(lat.basis_big.clone())))
}

/// Canonical coset representatives of `Z^n / S` from the Smith coordinates
/// of the kernel basis.
#[derive(Debug, Clone)]
pub struct Transversal {
    ambient: usize,
    divisors: Vec<BigInt>,
    v: IntMat,
    vinv: IntMat,
}

impl Transversal {
    pub fn new(lat: &KernelLattice) -> Self {
        let n = lat.ambient();
        let mat = if lat.rank() == 0 {
            IntMat::zeros(0, n)
        } else {
            IntMat::from_rows(lat.basis_big.clone())
        };
        let snf = smith_normal_form(&mat);
        Transversal {
            ambient: n,
            divisors: snf.divisors(),
            v: snf.v,
            vinv: snf.vinv,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// The canonical representative of `e + S`.
    pub fn rep(&self, e: &[i64]) -> Result<Vec<i64>> {
        if e.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: e.len(),
            });
        }
        use num_integer::Integer;
        // Row vector times v, reduce mod the divisors, map back through vinv.
        let mut c = vec![BigInt::zero(); self.ambient];
        for (j, cj) in c.iter_mut().enumerate() {
            for (i, ei) in e.iter().enumerate() {
                *cj += BigInt::from(*ei) * self.v.at(i, j);
            }
        }
        for (i, d) in self.divisors.iter().enumerate() {
            c[i] = c[i].mod_floor(d);
        }
        let mut rep = vec![BigInt::zero(); self.ambient];
        for (j, rj) in rep.iter_mut().enumerate() {
            for (i, ci) in c.iter().enumerate() {
                *rj += ci * self.vinv.at(i, j);
            }
        }
        Ok(rep
            .into_iter()
            .map(|x| i64::try_from(&x).expect("coset representative overflow"))
            .collect())
    }
}

/// Genericity: the `q_ij` (i < j) generate a free abelian group of rank
/// `n(n-1)/2`, i.e. the free-exponent matrix has full column rank.
/// Torsion parts cannot rescue a free-part relation, so they are ignored.
pub fn is_generic(q: &QMatrix) -> bool {
    let n = q.n();
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs == 0 {
        return true;
    }
    let r = q.sig().r;
    if r == 0 {
        return false;
    }
    let mut mat = IntMat::zeros(r, pairs);
    let mut col = 0;
    for i in 0..n {
        for j in i + 1..n {
            for (k, e) in q.entry(i, j).free().iter().enumerate() {
                mat.set(k, col, BigInt::from(*e));
            }
            col += 1;
        }
    }
    smith_normal_form(&mat).rank() == pairs
}

/// The submatrix on the variables *not* in `w` (1-based indices).
pub fn restrict_to_stratum(q: &QMatrix, w: &[usize]) -> Result<QMatrix> {
    let n = q.n();
    let mut seen = vec![false; n];
    for &i in w {
        if i < 1 || i > n {
            return Err(Error::InvalidConfig(format!(
                "stratum index {} out of range 1..={}",
                i, n
            )));
        }
        if seen[i - 1] {
            return Err(Error::InvalidConfig(format!(
                "stratum index {} repeated",
                i
            )));
        }
        seen[i - 1] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|i| !seen[*i]).collect();
    let nw = keep.len();
    let mut entries = Vec::with_capacity(nw * nw);
    for &i in &keep {
        for &j in &keep {
            entries.push(q.entry(i, j).clone());
        }
    }
    QMatrix::new(nw, q.sig(), entries)
}
