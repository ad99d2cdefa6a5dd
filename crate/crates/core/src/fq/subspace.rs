use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{Field, FieldError, FieldSpec};

/// Reduced row echelon form of `mat` (same shape, zero rows last) and its rank.
pub fn rref(field: &Field, mat: &[Vec<u32>]) -> (Vec<Vec<u32>>, usize) {
    let mut rows = mat.to_vec();
    let rank = rref_in_place(field, &mut rows);
    (rows, rank)
}

fn rref_in_place(field: &Field, rows: &mut [Vec<u32>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let scale = field.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, scale);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let factor = row[col];
            if r == rank || factor == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A subspace of `F_q^n`, held as the nonzero rows of its reduced row
/// echelon basis. Equal subspaces have identical representatives.
#[derive(Clone)]
pub struct SubspaceRep {
    field: Arc<Field>,
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl PartialEq for SubspaceRep {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && self.field == other.field
    }
}

impl Eq for SubspaceRep {}

impl Hash for SubspaceRep {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

impl fmt::Debug for SubspaceRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubspaceRep(F_{}^{}: {})", self.field.q(), self.n, self)
    }
}

/// Rows separated by `|`, entries by `,`; the zero subspace prints as `0`.
impl fmt::Display for SubspaceRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return write!(f, "0");
        }
        let s = self.rows.iter().map(|r| r.iter().join(",")).join("|");
        write!(f, "{s}")
    }
}

impl SubspaceRep {
    /// The span of `vectors` in `F_q^n`.
    pub fn span(field: &Arc<Field>, n: usize, vectors: &[Vec<u32>]) -> Result<Self, FieldError> {
        for v in vectors {
            if v.len() != n {
                return Err(FieldError::DimensionMismatch(format!(
                    "vector of length {} in F_q^{n}",
                    v.len()
                )));
            }
            for &x in v {
                field.check_element(x)?;
            }
        }
        let mut rows = vectors.to_vec();
        let rank = rref_in_place(field, &mut rows);
        rows.truncate(rank);
        Ok(SubspaceRep {
            field: Arc::clone(field),
            n,
            rows,
        })
    }

    pub fn zero(field: &Arc<Field>, n: usize) -> Self {
        SubspaceRep {
            field: Arc::clone(field),
            n,
            rows: Vec::new(),
        }
    }

    pub fn full(field: &Arc<Field>, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        SubspaceRep {
            field: Arc::clone(field),
            n,
            rows,
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).expect("basis rows are nonzero"))
            .collect()
    }

    fn check_compatible(&self, other: &SubspaceRep) -> Result<(), FieldError> {
        if self.field != other.field || self.n != other.n {
            return Err(FieldError::DimensionMismatch(format!(
                "F_{}^{} vs F_{}^{}",
                self.field.q(),
                self.n,
                other.field.q(),
                other.n
            )));
        }
        Ok(())
    }

    fn stacked_rank(&self, other: &SubspaceRep) -> usize {
        let mut rows: Vec<Vec<u32>> = self.rows.iter().chain(&other.rows).cloned().collect();
        rref_in_place(&self.field, &mut rows)
    }

    pub fn sum_space(&self, other: &SubspaceRep) -> Result<SubspaceRep, FieldError> {
        self.check_compatible(other)?;
        let rows: Vec<Vec<u32>> = self.rows.iter().chain(&other.rows).cloned().collect();
        SubspaceRep::span(&self.field, self.n, &rows)
    }

    /// `dim(a ∩ b) = dim a + dim b − dim(a + b)`.
    pub fn intersect_dim(&self, other: &SubspaceRep) -> Result<usize, FieldError> {
        self.check_compatible(other)?;
        Ok(self.dim() + other.dim() - self.stacked_rank(other))
    }

    pub fn is_subspace_of(&self, other: &SubspaceRep) -> Result<bool, FieldError> {
        self.check_compatible(other)?;
        Ok(self.dim() <= other.dim() && self.stacked_rank(other) == other.dim())
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rref_in_place(&self.field, &mut rows) == self.dim()
    }

    /// `(a⊥ + b⊥)⊥`; valid for any nondegenerate form.
    pub fn intersection(&self, other: &SubspaceRep) -> Result<SubspaceRep, FieldError> {
        Ok(self.perp().sum_space(&other.perp())?.perp())
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self) -> SubspaceRep {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let f = &self.field;
        let basis: Vec<Vec<u32>> = (0..self.n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.n];
                v[free] = 1;
                for (row, &p) in self.rows.iter().zip(&pivots) {
                    v[p] = f.neg(row[free]);
                }
                v
            })
            .collect();
        SubspaceRep::span(f, self.n, &basis).expect("null space vectors are well formed")
    }

    /// Image under `v ↦ σ^s(v) · matrix`, where `σ` is the Frobenius map
    /// applied entrywise and vectors are rows.
    pub fn apply_semilinear(&self, matrix: &[Vec<u32>], frobenius_power: u32) -> Result<SubspaceRep, FieldError> {
        let f = &self.field;
        if matrix.len() != self.n || matrix.iter().any(|r| r.len() != self.n) {
            return Err(FieldError::DimensionMismatch(format!("matrix must be {0}x{0}", self.n)));
        }
        for &x in matrix.iter().flatten() {
            f.check_element(x)?;
        }
        if rref(f, matrix).1 != self.n {
            return Err(FieldError::SingularMatrix);
        }
        let image: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|row| {
                let twisted: Vec<u32> = row.iter().map(|&x| f.frobenius_pow(x, frobenius_power)).collect();
                (0..self.n)
                    .map(|j| {
                        twisted
                            .iter()
                            .zip(matrix)
                            .fold(0, |acc, (&x, mrow)| f.add(acc, f.mul(x, mrow[j])))
                    })
                    .collect()
            })
            .collect();
        SubspaceRep::span(f, self.n, &image)
    }
}

pub fn apply_semilinear(
    matrix: &[Vec<u32>],
    frobenius_power: u32,
    a: &SubspaceRep,
) -> Result<SubspaceRep, FieldError> {
    a.apply_semilinear(matrix, frobenius_power)
}

/// All `k`-subspaces of `F_q^n`. Order: pivot column sets lexicographically,
/// then the free entries read row by row as a base-`q` numeral, most
/// significant first.
pub fn enumerate_subspaces(field: &Arc<Field>, n: usize, k: usize) -> Result<Vec<SubspaceRep>, FieldError> {
    if k > n {
        return Err(FieldError::Parameters(format!("k={k} exceeds n={n}")));
    }
    let q = field.q();
    let mut out = Vec::new();
    for pivots in (0..n).combinations(k) {
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (p + 1..n).filter(|&c| !is_pivot[c]).map(move |c| (i, c)))
            .collect();
        let mut base = vec![vec![0u32; n]; k];
        for (i, &p) in pivots.iter().enumerate() {
            base[i][p] = 1;
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut rows = base.clone();
            for (&(i, c), &d) in free.iter().zip(&digits) {
                rows[i][c] = d;
            }
            out.push(SubspaceRep {
                field: Arc::clone(field),
                n,
                rows,
            });
            if !advance(&mut digits, q) {
                break;
            }
        }
    }
    Ok(out)
}

/// Base-`q` increment with the last digit least significant; false on wrap.
fn advance(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    field: FieldSpec,
    n: usize,
    k: usize,
    rows: Vec<Vec<u32>>,
}

impl Serialize for SubspaceRep {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SubspaceJson {
            field: self.field.spec().clone(),
            n: self.n,
            k: self.dim(),
            rows: self.rows.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SubspaceRep {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = SubspaceJson::deserialize(deserializer)?;
        let spec = FieldSpec::new(repr.field.p, repr.field.m, repr.field.modulus).map_err(D::Error::custom)?;
        let field = Field::new(spec);
        let s = SubspaceRep::span(&field, repr.n, &repr.rows).map_err(D::Error::custom)?;
        if s.rows != repr.rows || s.dim() != repr.k {
            return Err(D::Error::custom("rows are not a reduced row echelon basis of the stated dimension"));
        }
        Ok(s)
    }
}
