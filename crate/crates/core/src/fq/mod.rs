//! Finite fields `F_q`, `q = p^m`, with table-driven arithmetic, plus
//! subspace enumeration and the counting formulas used as oracles.

mod subspace;

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use subspace::{apply_semilinear, enumerate_subspaces, rref, SubspaceRep};

/// Largest field order for which arithmetic tables are built.
pub const MAX_ORDER: u32 = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("modulus must be monic of degree {m} with coefficients below {p}")]
    BadModulus { p: u32, m: u32 },
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("entry {entry} is not an element of F_{q}")]
    ElementOutOfRange { entry: u32, q: u32 },
}

/// Characteristic, extension degree and defining polynomial of `F_q`.
/// `modulus` lists coefficients from the constant term up; it is monic of
/// degree `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    while a.len() > db {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let t = (a[shift + i] + p - (lead * c) % p) % p;
                a[shift + i] = t;
            }
        }
        a.pop();
    }
    a
}

impl FieldSpec {
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime(p));
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if m == 0 {
            return Err(FieldError::BadModulus { p, m });
        }
        if q > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge(q));
        }
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus { p, m });
        }
        let spec = FieldSpec { p, m, modulus };
        if !spec.modulus_is_irreducible() {
            return Err(FieldError::Reducible(spec.modulus));
        }
        Ok(spec)
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, vec![0, 1])
    }

    /// Field of order `q` with the default modulus: `x²+x+1`, `x³+x+1`,
    /// `x²+1` for `q = 4, 8, 9`; otherwise the least irreducible monic
    /// polynomial in coefficient order.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        if q > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge(q));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(FieldError::NotPrimePower(q))?;
        let mut m = 0u32;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            m += 1;
        }
        if r != 1 {
            return Err(FieldError::NotPrimePower(q));
        }
        let p = p as u32;
        if m == 1 {
            return Self::prime(p);
        }
        let shipped = match q {
            4 => Some(vec![1, 1, 1]),
            8 => Some(vec![1, 1, 0, 1]),
            9 => Some(vec![1, 0, 1]),
            _ => None,
        };
        if let Some(modulus) = shipped {
            return Self::new(p, m, modulus);
        }
        let lower = (p as u64).pow(m);
        (0..lower)
            .map(|code| {
                let mut modulus = digits(code, p, m as usize);
                modulus.push(1);
                modulus
            })
            .find_map(|modulus| Self::new(p, m, modulus).ok())
            .ok_or(FieldError::NotPrimePower(q))
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.m)
    }

    /// Trial division by every monic polynomial of degree `1..=m/2`.
    fn modulus_is_irreducible(&self) -> bool {
        let m = self.m as usize;
        for d in 1..=m / 2 {
            for code in 0..(self.p as u64).pow(d as u32) {
                let mut divisor = digits(code, self.p, d);
                divisor.push(1);
                if poly_rem(self.modulus.clone(), &divisor, self.p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((code % p as u64) as u32);
        code /= p as u64;
    }
    out
}

/// Table-driven arithmetic on `F_q`. Element `a` encodes the polynomial whose
/// coefficients are the base-`p` digits of `a`, constant term first.
#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Arc<Field> {
        let (p, m, q) = (spec.p, spec.m as usize, spec.q());
        let qs = q as usize;
        let encode = |coeffs: &[u32]| coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let decode = |a: u32| digits(a as u64, p, m);

        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = decode(a);
            for b in 0..q {
                let db = decode(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum);
                let mut prod = vec![0u32; 2 * m - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut rem = poly_rem(prod, &spec.modulus, p);
                rem.resize(m, 0);
                mul[(a * q + b) as usize] = encode(&rem);
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..q {
            neg[a as usize] = (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap();
            if a != 0 {
                inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("field has inverses");
            }
        }
        let frob = (0..q)
            .map(|a| (1..p).fold(a, |acc, _| mul[(acc * q + a) as usize]))
            .collect();
        Arc::new(Field {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
            frob,
        })
    }

    pub fn of_order(q: u64) -> Result<Arc<Field>, FieldError> {
        Ok(Field::new(FieldSpec::of_order(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.m
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.inv[a as usize])
    }

    /// `a^p`, the generator of the Galois group over `F_p`.
    #[inline]
    pub fn frobenius(&self, a: u32) -> u32 {
        self.frob[a as usize]
    }

    pub fn frobenius_pow(&self, a: u32, s: u32) -> u32 {
        (0..s % self.spec.m).fold(a, |acc, _| self.frobenius(acc))
    }

    pub(crate) fn check_element(&self, a: u32) -> Result<(), FieldError> {
        if a >= self.q {
            return Err(FieldError::ElementOutOfRange { entry: a, q: self.q });
        }
        Ok(())
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Result<BigUint, FieldError> {
    if k > n || q < 2 {
        return Err(FieldError::Parameters(format!("need 0 <= k <= n and q >= 2, got n={n}, k={k}, q={q}")));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow(n) - q.pow(i);
        den *= q.pow(k) - q.pow(i);
    }
    Ok(num / den)
}

/// `|PΓL_n(F_q)| = m · |GL_n(F_q)| / (q − 1)`.
pub fn pgammal_order(n: u32, field: &FieldSpec) -> Result<BigUint, FieldError> {
    if n < 2 {
        return Err(FieldError::Parameters(format!("PΓL needs n >= 2, got {n}")));
    }
    let q = BigUint::from(field.q());
    let gl = (0..n).fold(BigUint::one(), |acc, i| acc * (q.pow(n) - q.pow(i)));
    Ok(gl * field.m / (q - 1u32))
}
