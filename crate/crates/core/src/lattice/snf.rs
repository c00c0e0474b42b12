//! Integer matrix normal forms over arbitrary-precision integers.
//!
//! Smith normal form with minimal-absolute-value pivoting, row-style Hermite
//! normal form for canonical lattice bases, and the kernel extraction used by
//! the radical computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|x| BigInt::from(*x)).collect())
                .collect(),
        )
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let x = self.at(a, j).clone();
            let y = self.at(b, j).clone();
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let x = self.at(i, a).clone();
            let y = self.at(i, b).clone();
            self.set(i, a, y);
            self.set(i, b, x);
        }
    }

    /// row_dst += k * row_src
    pub fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(dst, j) + k * self.at(src, j);
            self.set(dst, j, v);
        }
    }

    /// col_dst += k * col_src
    pub fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, dst) + k * self.at(i, src);
            self.set(i, dst, v);
        }
    }

    pub fn neg_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    pub fn neg_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && !self.at(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// `u * input * v = d` with `u`, `v` unimodular, `d` diagonal with
/// `d_1 | d_2 | ...` and nonnegative entries.  `vinv` is the inverse of `v`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub vinv: IntMat,
}

impl Snf {
    pub fn rank(&self) -> usize {
        let lim = self.d.rows.min(self.d.cols);
        (0..lim).filter(|&i| !self.d.at(i, i).is_zero()).count()
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let lim = self.d.rows.min(self.d.cols);
        (0..lim)
            .map(|i| self.d.at(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(input: &IntMat) -> Snf {
    let mut d = input.clone();
    let mut u = IntMat::identity(input.rows);
    let mut v = IntMat::identity(input.cols);
    let mut vinv = IntMat::identity(input.cols);

    // Column operation wrappers keep v and vinv in sync:
    // d -> d*F updates v -> v*F and vinv -> F^{-1}*vinv.
    let lim = d.rows.min(d.cols);
    let mut t = 0;
    while t < lim {
        // Minimal-absolute-value pivot from the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                if d.at(i, j).is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if d.at(i, j).abs() < d.at(*pi, *pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            None => break, // trailing submatrix is zero
            Some(p) => p,
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        vinv.swap_rows(t, pj);

        'reduce: loop {
            // Euclid on the pivot column.
            for i in t + 1..d.rows {
                if d.at(i, t).is_zero() {
                    continue;
                }
                let q = d.at(i, t) / d.at(t, t); // truncated: |rem| < |pivot|
                let k = -q;
                d.add_row(i, t, &k);
                u.add_row(i, t, &k);
                if !d.at(i, t).is_zero() {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                }
                continue 'reduce;
            }
            // Euclid on the pivot row.
            for j in t + 1..d.cols {
                if d.at(t, j).is_zero() {
                    continue;
                }
                let q = d.at(t, j) / d.at(t, t);
                let k = -q;
                d.add_col(j, t, &k);
                v.add_col(j, t, &k);
                // F = I + k*E_{t,j}; F^{-1} applies -k on rows of vinv.
                let nk = -&k;
                vinv.add_row(t, j, &nk);
                if !d.at(t, j).is_zero() {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    vinv.swap_rows(t, j);
                }
                continue 'reduce;
            }
            // Pivot must divide the whole trailing submatrix.
            for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !d.at(i, j).mod_floor(d.at(t, t)).is_zero() {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if d.at(t, t).is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    Snf { u, d, v, vinv }
}

/// Basis of `{x : input * x = 0}` as column vectors of the input width.
pub fn kernel_basis(input: &IntMat) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(input);
    let lim = input.rows.min(input.cols);
    let mut basis = Vec::new();
    for j in 0..input.cols {
        let diag_zero = j >= lim || snf.d.at(j, j).is_zero();
        if diag_zero {
            basis.push(snf.v.col(j));
        }
    }
    basis
}

/// Canonical row-style Hermite normal form of the lattice spanned by the
/// given rows: pivots positive, pivot columns strictly increasing, entries
/// above each pivot reduced into `[0, pivot)`.  Zero rows are dropped.
pub fn hermite_rows(gens: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    for g in gens {
        assert_eq!(g.len(), cols, "generator length mismatch");
    }
    let mut m = IntMat::from_rows(gens.to_vec());
    if gens.is_empty() {
        return Vec::new();
    }
    let mut r = 0;
    for col in 0..cols {
        loop {
            // Minimal nonzero entry of this column among rows >= r.
            let mut best: Option<usize> = None;
            for i in r..m.rows {
                if m.at(i, col).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if m.at(i, col).abs() < m.at(b, col).abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let b = match best {
                None => break,
                Some(b) => b,
            };
            m.swap_rows(r, b);
            let mut again = false;
            for i in r + 1..m.rows {
                if m.at(i, col).is_zero() {
                    continue;
                }
                let q = m.at(i, col) / m.at(r, col);
                let k = -q;
                m.add_row(i, r, &k);
                if !m.at(i, col).is_zero() {
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        if r < m.rows && !m.at(r, col).is_zero() {
            if m.at(r, col).is_negative() {
                m.neg_row(r);
            }
            // Reduce the entries above the pivot into [0, pivot).
            for i in 0..r {
                let q = m.at(i, col).div_floor(m.at(r, col));
                let k = -q;
                m.add_row(i, r, &k);
            }
            r += 1;
            if r == m.rows {
                break;
            }
        }
    }
    (0..r).map(|i| m.row(i)).collect()
}

/// |det| of a square matrix (product of Smith divisors).
pub fn det_abs(input: &IntMat) -> BigInt {
    assert_eq!(input.rows, input.cols, "determinant of non-square matrix");
    let snf = smith_normal_form(input);
    if snf.rank() < input.rows {
        return BigInt::zero();
    }
    snf.divisors().iter().product()
}

/// Membership of `v` in the row lattice of a Hermite-form basis.
pub fn hnf_contains(basis: &[Vec<BigInt>], v: &[i64]) -> bool {
    let mut rem: Vec<BigInt> = v.iter().map(|x| BigInt::from(*x)).collect();
    for row in basis {
        let p = match row.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => continue,
        };
        if !rem[p].mod_floor(&row[p]).is_zero() {
            return false;
        }
        let q = &rem[p] / &row[p];
        if !q.is_zero() {
            for (ri, bi) in rem.iter_mut().zip(row) {
                *ri -= &q * bi;
            }
        }
    }
    rem.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_i64_rows(rows)
    }

    fn diag_of(d: &IntMat) -> Vec<i64> {
        let lim = d.rows.min(d.cols);
        (0..lim).map(|i| i64::try_from(d.at(i, i)).unwrap()).collect()
    }

    /// Verify the full transform contract on one input.
    fn check_contract(m: &IntMat) -> Snf {
        let snf = smith_normal_form(m);
        assert!(snf.d.is_diagonal());
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.d, "u*m*v != d");
        assert_eq!(det_abs(&snf.u), BigInt::one(), "u not unimodular");
        assert_eq!(det_abs(&snf.v), BigInt::one(), "v not unimodular");
        assert_eq!(
            snf.v.mul(&snf.vinv),
            IntMat::identity(m.cols),
            "vinv is not the inverse of v"
        );
        let ds = snf.divisors();
        for w in ds.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisor chain broken: {:?}", ds);
        }
        snf
    }

    #[test]
    fn identity_is_fixed() {
        let snf = check_contract(&IntMat::identity(3));
        assert_eq!(diag_of(&snf.d), vec![1, 1, 1]);
    }

    #[test]
    fn two_by_two_hand_reduction() {
        // Hand reduction of [[2,4],[6,8]]: gcd of entries is 2 and
        // |det| = |16 - 24| = 8, so the divisors are 2 and 4.
        let snf = check_contract(&mat(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(diag_of(&snf.d), vec![2, 4]);
    }

    #[test]
    fn zero_matrix() {
        let snf = check_contract(&mat(&[vec![0, 0], vec![0, 0]]));
        assert_eq!(diag_of(&snf.d), vec![0, 0]);
        assert_eq!(snf.rank(), 0);
    }

    #[test]
    fn rectangular_shapes() {
        let snf = check_contract(&mat(&[vec![1, 2, 3]]));
        assert_eq!(snf.rank(), 1);
        let snf = check_contract(&mat(&[vec![2], vec![4], vec![6]]));
        assert_eq!(diag_of(&snf.d), vec![2]);
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = mat(&[vec![1, 2, 3]]);
        let basis = kernel_basis(&m);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            let dot: BigInt = b
                .iter()
                .zip([1, 2, 3])
                .map(|(x, c)| x * BigInt::from(c))
                .sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn kernel_of_full_rank_is_empty() {
        assert!(kernel_basis(&mat(&[vec![2, 0], vec![0, 3]])).is_empty());
    }

    #[test]
    fn hermite_canonical_form() {
        let big = |x: i64| BigInt::from(x);
        // <(1,1),(2,0)> and <(2,0),(0,2),(1,1)> are the same lattice.
        let a = hermite_rows(&[vec![big(1), big(1)], vec![big(2), big(0)]], 2);
        let b = hermite_rows(
            &[
                vec![big(2), big(0)],
                vec![big(0), big(2)],
                vec![big(1), big(1)],
            ],
            2,
        );
        assert_eq!(a, b);
        assert_eq!(
            a,
            vec![vec![big(1), big(1)], vec![big(0), big(2)]]
        );
    }

    #[test]
    fn hermite_drops_zero_rows_and_orders_pivots() {
        let big = |x: i64| BigInt::from(x);
        let h = hermite_rows(
            &[
                vec![big(0), big(0), big(0)],
                vec![big(0), big(0), big(3)],
                vec![big(0), big(2), big(1)],
            ],
            3,
        );
        assert_eq!(
            h,
            vec![vec![big(0), big(2), big(1)], vec![big(0), big(0), big(3)]]
        );
    }

    #[test]
    fn hnf_membership() {
        let big = |x: i64| BigInt::from(x);
        let basis = vec![vec![big(1), big(-1), big(0)]];
        assert!(hnf_contains(&basis, &[2, -2, 0]));
        assert!(hnf_contains(&basis, &[0, 0, 0]));
        assert!(!hnf_contains(&basis, &[1, 0, 0]));
        assert!(!hnf_contains(&basis, &[1, -1, 1]));
    }

    #[test]
    fn det_abs_values() {
        assert_eq!(det_abs(&mat(&[vec![2, 4], vec![6, 8]])), BigInt::from(8));
        assert_eq!(det_abs(&mat(&[vec![1, 1], vec![1, 1]])), BigInt::zero());
    }
}
