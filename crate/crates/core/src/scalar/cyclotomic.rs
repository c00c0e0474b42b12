//! Cyclotomic numbers: `Q(zeta_m)` in the power basis of `Q[z]/Phi_m(z)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Euler's totient, by trial-division factorization.
pub fn euler_phi(m: u64) -> usize {
    assert!(m >= 1);
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi as usize
}

fn divisors(m: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            ds.push(d);
            if d != m / d {
                ds.push(m / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Exact division of integer polynomials; `den` must be monic and divide
/// `num` exactly.  Coefficient vectors are little-endian.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    assert!(rem.len() >= den.len());
    let qn = rem.len() - den.len() + 1;
    let mut quot = vec![BigInt::zero(); qn];
    for k in (0..qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

struct CycTable {
    phi: usize,
    /// Monic minimal polynomial Phi_m, little-endian, length phi + 1.
    poly: Vec<BigInt>,
}

fn table(m: u64) -> Arc<CycTable> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&m) {
        return Arc::clone(t);
    }
    let poly = compute_cyclotomic(m);
    let t = Arc::new(CycTable {
        phi: poly.len() - 1,
        poly,
    });
    cache.lock().unwrap().insert(m, Arc::clone(&t));
    t
}

fn compute_cyclotomic(m: u64) -> Vec<BigInt> {
    if m == 1 {
        return vec![-BigInt::one(), BigInt::one()]; // z - 1
    }
    // Phi_m = (z^m - 1) / prod_{d | m, d < m} Phi_d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in divisors(m) {
        if d < m {
            let phi_d = cyclotomic_poly(d);
            den = int_poly_mul(&den, &phi_d);
        }
    }
    int_poly_div_exact(&num, &den)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// The m-th cyclotomic polynomial, little-endian coefficients, length
/// `phi(m) + 1`.  Cached per m.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    table(m).poly.clone()
}

/// An element of `Q(zeta_m)`, coordinates in the basis
/// `1, z, ..., z^{phi(m)-1}` of `Q[z]/Phi_m(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    m: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(m: u64) -> Self {
        let phi = table(m).phi;
        Cyclotomic {
            m,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u64, q: BigRational) -> Self {
        let mut c = Self::zero(m);
        c.coeffs[0] = q;
        c
    }

    /// `zeta^a` reduced into the power basis; `a` is taken mod m.
    pub fn zeta_pow(m: u64, a: i64) -> Self {
        let a = a.rem_euclid(m as i64) as usize;
        let t = table(m);
        let mut dense = vec![BigRational::zero(); a + 1];
        dense[a] = BigRational::one();
        Cyclotomic {
            m,
            coeffs: reduce_mod_phi(dense, &t),
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(q) when the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn first_nonzero(&self) -> Option<&BigRational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Iterate the basis coordinates (shared by content normalization).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.m, other.m, "cyclotomic orders differ");
        Cyclotomic {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.m, other.m, "cyclotomic orders differ");
        let t = table(self.m);
        let mut dense = vec![BigRational::zero(); 2 * t.phi]; // degree <= 2*phi - 2
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] += a * b;
                }
            }
        }
        Cyclotomic {
            m: self.m,
            coeffs: reduce_mod_phi(dense, &t),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

fn reduce_mod_phi(mut dense: Vec<BigRational>, t: &CycTable) -> Vec<BigRational> {
    for k in (t.phi..dense.len()).rev() {
        if dense[k].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut dense[k], BigRational::zero());
        // z^k = -c * (Phi - z^phi) * z^{k-phi} contribution
        for j in 0..t.phi {
            let pj = BigRational::from(t.poly[j].clone());
            dense[k - t.phi + j] -= &c * pj;
        }
    }
    dense.truncate(t.phi);
    dense.resize(t.phi, BigRational::zero());
    dense
}

fn rational_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Canonical sum over the power basis, e.g. `1 + 2*zeta - 1/2*zeta^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let base = match k {
                0 => None,
                1 => Some("zeta".to_string()),
                _ => Some(format!("zeta^{}", k)),
            };
            match base {
                None => write!(f, "{}", rational_str(&mag))?,
                Some(b) => {
                    if mag.is_one() {
                        write!(f, "{}", b)?;
                    } else {
                        write!(f, "{}*{}", rational_str(&mag), b)?;
                    }
                }
            }
        }
        Ok(())
    }
}
