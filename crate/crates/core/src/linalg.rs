//! Dense exact matrices, canonical subspaces and subspace enumeration.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Upper bound on candidates examined by exhaustive enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_candidates: u64,
}

impl Budget {
    pub const DEFAULT_MAX: u64 = 10_000_000;

    pub fn new(max_candidates: u64) -> Self {
        Budget { max_candidates }
    }

    /// Refuses when `needed` exceeds the budget. Never truncates.
    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_candidates as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.max_candidates,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_MAX)
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Number of `k`-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(saturating_pow(q, n - i).saturating_sub(1));
        den = den.saturating_mul(saturating_pow(q, i + 1).saturating_sub(1));
    }
    num / den
}

pub mod vector {
    //! Helpers on coordinate vectors (`[Scalar]`).
    use crate::field::{FieldSpec, Scalar};

    pub fn zero(field: FieldSpec, n: usize) -> Vec<Scalar> {
        vec![field.zero(); n]
    }

    pub fn unit(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = zero(field, n);
        v[i] = field.one();
        v
    }

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    /// `acc += c * x`
    pub fn axpy(acc: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
        if c.is_zero() {
            return;
        }
        for (a, b) in acc.iter_mut().zip(x) {
            if !b.is_zero() {
                *a = &*a + &(c * b);
            }
        }
    }

    pub fn scale(c: &Scalar, x: &[Scalar]) -> Vec<Scalar> {
        x.iter().map(|b| c * b).collect()
    }

    pub fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn neg(x: &[Scalar]) -> Vec<Scalar> {
        x.iter().map(|a| -a).collect()
    }

    pub fn dot(field: FieldSpec, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = field.zero();
        for (a, b) in x.iter().zip(y) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }
}

pub(crate) fn check_vector(field: FieldSpec, n: usize, v: &[Scalar]) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if let Some(bad) = v.iter().find(|x| x.field() != field) {
        return Err(Error::FieldMismatch {
            left: field,
            right: bad.field(),
        });
    }
    Ok(())
}

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Matrix::from_fn(
            field,
            n,
            n,
            |i, j| if i == j { field.one() } else { field.zero() },
        )
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut entry: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows, rejecting ragged input and mixed fields.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            check_vector(field, cols, &row)?;
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Integer literal convenience, mostly for tests and built-in tables.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "field mismatch");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: rhs.field,
            });
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let (start, end) = (i * rhs.cols, (i + 1) * rhs.cols);
                vector::axpy(&mut out.data[start..end], a, rhs.row(k));
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, self.cols, v)?;
        Ok((0..self.rows)
            .map(|i| vector::dot(self.field, self.row(i), v))
            .collect())
    }

    /// `w M` for a row vector `w`.
    pub fn apply_left(&self, w: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, self.rows, w)?;
        let mut out = vector::zero(self.field, self.cols);
        for (i, c) in w.iter().enumerate() {
            vector::axpy(&mut out, c, self.row(i));
        }
        Ok(out)
    }

    /// Reduced row-echelon form (zero rows kept at the bottom) and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = &inv * m.get(r, j);
                m.data[r * m.cols + j] = v;
            }
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                let (start, end) = (i * m.cols, (i + 1) * m.cols);
                vector::axpy(&mut m.data[start..end], &-&factor, &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{x : M x = 0}`, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vector::zero(self.field, self.cols);
                v[fc] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc);
                }
                v
            })
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |i, j| {
            r.get(i, n + j).clone()
        }))
    }

    /// Flattened residues, the key for lexicographic orders over GF(p).
    pub fn residue_key(&self) -> Vec<u64> {
        self.data.iter().map(|s| s.residue().unwrap_or(0)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }
}

/// Row-major list of rows.
impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq((0..self.rows).map(|i| self.row(i)))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A subspace of `field^ambient_dim`, stored as its RREF basis.
///
/// Two subspaces are equal exactly when their canonical bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let rank = pivots.len();
        let basis = Matrix::from_fn(m.field(), rank, m.cols(), |i, j| r.get(i, j).clone());
        Subspace {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient_dim, vectors.to_vec())?;
        Ok(Subspace::row_space(&m))
    }

    /// `span{e_i : i in indices}` (0-based).
    pub fn coordinate(field: FieldSpec, ambient_dim: usize, indices: &[usize]) -> Self {
        let vs: Vec<_> = indices
            .iter()
            .map(|&i| vector::unit(field, ambient_dim, i))
            .collect();
        Subspace::span(field, ambient_dim, &vs).expect("unit vectors are well-formed")
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::span(self.field(), self.ambient_dim, &rows)
    }

    /// Intersection via the kernel of `[A^T | -B^T]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (da, db) = (self.dim(), other.dim());
        let field = self.field();
        let system = Matrix::from_fn(field, self.ambient_dim, da + db, |i, j| {
            if j < da {
                self.basis.get(j, i).clone()
            } else {
                -other.basis.get(j - da, i)
            }
        });
        let mut vectors = Vec::new();
        for k in system.kernel() {
            let mut v = vector::zero(field, self.ambient_dim);
            for (j, c) in k.iter().take(da).enumerate() {
                vector::axpy(&mut v, c, self.basis.row(j));
            }
            vectors.push(v);
        }
        Subspace::span(field, self.ambient_dim, &vectors)
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` is a member.
    pub(crate) fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = w[p].clone();
            if !c.is_zero() {
                vector::axpy(&mut w, &-&c, self.basis.row(r));
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        check_vector(self.field(), self.ambient_dim, v)?;
        Ok(vector::is_zero(&self.reduce(v)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for r in 0..self.dim() {
            if !other.contains(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of a member with respect to the canonical basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Columns not holding a pivot; they index the canonical complement.
    pub fn non_pivot_columns(&self) -> Vec<usize> {
        (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }
}

/// The canonical basis, one row per vector.
impl serde::Serialize for Subspace {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(serializer)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{}", self.basis)
    }
}

/// Every subspace of GF(p)^n exactly once, grouped by dimension and
/// lexicographically ordered on the flattened RREF basis within a dimension.
pub fn enumerate_subspaces(
    ambient_dim: usize,
    field: FieldSpec,
    budget: Budget,
) -> Result<std::vec::IntoIter<Subspace>> {
    let p = field.order().ok_or(Error::InfiniteField {
        operation: "subspace enumeration",
    })?;
    let total: u128 = (0..=ambient_dim)
        .map(|k| gaussian_binomial(ambient_dim, k, p))
        .sum();
    budget.check(total)?;
    let mut out = Vec::with_capacity(total as usize);
    for d in 0..=ambient_dim {
        out.extend(subspaces_of_dim(ambient_dim, d, field)?);
    }
    Ok(out.into_iter())
}

/// All `d`-dimensional subspaces of GF(p)^n in lexicographic RREF order.
pub fn subspaces_of_dim(ambient_dim: usize, d: usize, field: FieldSpec) -> Result<Vec<Subspace>> {
    let p = field.order().ok_or(Error::InfiniteField {
        operation: "subspace enumeration",
    })?;
    let mut found = Vec::new();
    for pivots in combinations(ambient_dim, d) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..ambient_dim)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let count = saturating_pow(p, free.len());
        for code in 0..count {
            let mut m = Matrix::zeros(field, d, ambient_dim);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, field.one());
            }
            let mut c = code;
            for &(r, col) in &free {
                m.set(r, col, field.residue((c % p as u128) as u64));
                c /= p as u128;
            }
            found.push(Subspace {
                ambient_dim,
                basis: m,
                pivots: pivots.clone(),
            });
        }
    }
    found.sort_by_key(|s| s.basis.residue_key());
    Ok(found)
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Odometer over all `rows x cols` matrices over GF(p), in little-endian
/// code order (entry 0 varies fastest).
pub struct MatrixSpace {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    digits: Vec<u64>,
    p: u64,
    done: bool,
}

impl MatrixSpace {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, budget: Budget) -> Result<Self> {
        let p = field.order().ok_or(Error::InfiniteField {
            operation: "matrix enumeration",
        })?;
        budget.check(saturating_pow(p, rows * cols))?;
        Ok(MatrixSpace {
            field,
            rows,
            cols,
            digits: vec![0; rows * cols],
            p,
            done: false,
        })
    }
}

impl Iterator for MatrixSpace {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.done {
            return None;
        }
        let digits = &self.digits;
        let (field, cols) = (self.field, self.cols);
        let m = Matrix::from_fn(field, self.rows, cols, |i, j| {
            field.residue(digits[i * cols + j])
        });
        self.done = true;
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.p {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(m)
    }
}

/// All vectors of GF(p)^n in odometer order.
pub fn all_vectors(field: FieldSpec, n: usize, budget: Budget) -> Result<Vec<Vec<Scalar>>> {
    Ok(MatrixSpace::new(field, 1, n, budget)?
        .map(|m| m.row(0).to_vec())
        .collect())
}
