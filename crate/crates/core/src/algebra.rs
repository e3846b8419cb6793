//! Structure-constant tables and the basic Leibniz predicates.
//!
//! A table holds `c[i][j][k]`, the `e_k` coefficient of `[e_i, e_j]`. Tables
//! need not satisfy the Leibniz identity; [`AlgebraTable::into_leibniz`]
//! checks it once and hands back a [`LeibnizAlgebra`], which is what every
//! theorem-level operation takes.

use std::fmt;
use std::ops::Deref;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{all_vectors, check_vector, saturating_pow, vector, Budget, Matrix, Subspace};

/// Seed used by sampled property checks unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x1eb1_2a19;

/// Largest `n^4` for which partial skew-symmetry is scanned on all basis tuples.
pub const BASIS_TUPLE_LIMIT: usize = 50_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    field: FieldSpec,
    dim: usize,
    constants: Vec<Scalar>,
}

/// Outcome of the basis-triple Leibniz scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketReport {
    pub holds: bool,
    pub witness: Option<LeibnizWitness>,
}

/// A basis triple `(i, j, k)` (0-based) where
/// `[e_i,[e_j,e_k]] != [[e_i,e_j],e_k] - [[e_i,e_k],e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizWitness {
    pub indices: [usize; 3],
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl fmt::Display for LeibnizWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.indices.map(|x| x + 1);
        write!(
            f,
            "[e{i},[e{j},e{k}]] = {} but [[e{i},e{j}],e{k}] - [[e{i},e{k}],e{j}] = {}",
            format_vector(&self.lhs),
            format_vector(&self.rhs)
        )
    }
}

/// Renders a coordinate vector as `2*e1 - e3`, or `0`.
pub fn format_vector(v: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(format!("e{}", i + 1));
        } else {
            parts.push(format!("{c}*e{}", i + 1));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl AlgebraTable {
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        AlgebraTable {
            field,
            dim,
            constants: vec![field.zero(); dim * dim * dim],
        }
    }

    /// Table from 0-based `(i, j, k, c)` entries; duplicates are summed.
    pub fn from_entries(
        field: FieldSpec,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut t = AlgebraTable::zero(field, dim);
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: idx + 1,
                    });
                }
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: c.field(),
                });
            }
            t.add_constant(i, j, k, &c);
        }
        Ok(t)
    }

    /// Table from 1-based integer entries `[e_i, e_j] += c e_k`.
    pub fn from_brackets(
        field: FieldSpec,
        dim: usize,
        brackets: &[(usize, usize, usize, i64)],
    ) -> Self {
        let mut t = AlgebraTable::zero(field, dim);
        for &(i, j, k, c) in brackets {
            t.add_constant(i - 1, j - 1, k - 1, &field.from_i64(c));
        }
        t
    }

    /// Like [`from_brackets`](Self::from_brackets), also setting
    /// `[e_j, e_i] -= c e_k` so the result is skew-symmetric.
    pub fn skew_from_brackets(
        field: FieldSpec,
        dim: usize,
        brackets: &[(usize, usize, usize, i64)],
    ) -> Self {
        let mut t = AlgebraTable::from_brackets(field, dim, brackets);
        for &(i, j, k, c) in brackets {
            t.add_constant(j - 1, i - 1, k - 1, &field.from_i64(-c));
        }
        t
    }

    /// Builds `[e_i, e_j] = value(i, j)` for all pairs (0-based).
    pub fn from_bracket_fn(
        field: FieldSpec,
        dim: usize,
        mut value: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = value(i, j);
                debug_assert_eq!(v.len(), dim);
                constants.extend(v);
            }
        }
        AlgebraTable {
            field,
            dim,
            constants,
        }
    }

    fn add_constant(&mut self, i: usize, j: usize, k: usize, c: &Scalar) {
        let idx = (i * self.dim + j) * self.dim + k;
        self.constants[idx] = &self.constants[idx] + c;
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// `[e_i, e_j]` as a coordinate slice.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.constants[start..start + self.dim]
    }

    /// Nonzero structure constants in `(i, j, k)` order, 0-based.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let n = self.dim;
        self.constants
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (idx / (n * n), (idx / n) % n, idx % n, c))
    }

    pub fn is_abelian(&self) -> bool {
        vector::is_zero(&self.constants)
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        check_vector(self.field, self.dim, x)?;
        check_vector(self.field, self.dim, y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zero(self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(xi * yj), self.basis_bracket(i, j));
            }
        }
        out
    }

    /// Checks the Leibniz identity on all basis triples in lexicographic
    /// order and reports the first failure.
    pub fn is_leibniz(&self) -> BracketReport {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let eij = self.basis_bracket(i, j);
                for k in 0..n {
                    let lhs = self.bracket_unchecked(
                        &vector::unit(self.field, n, i),
                        self.basis_bracket(j, k),
                    );
                    let mut rhs = self.bracket_unchecked(eij, &vector::unit(self.field, n, k));
                    let sub = self.bracket_unchecked(
                        self.basis_bracket(i, k),
                        &vector::unit(self.field, n, j),
                    );
                    rhs = vector::sub(&rhs, &sub);
                    if lhs != rhs {
                        return BracketReport {
                            holds: false,
                            witness: Some(LeibnizWitness {
                                indices: [i, j, k],
                                lhs,
                                rhs,
                            }),
                        };
                    }
                }
            }
        }
        BracketReport {
            holds: true,
            witness: None,
        }
    }

    /// Validates the Leibniz identity once; the result carries the proof.
    pub fn into_leibniz(self) -> Result<LeibnizAlgebra> {
        match self.is_leibniz().witness {
            None => Ok(LeibnizAlgebra(self)),
            Some(w) => Err(Error::NotLeibniz(w.to_string())),
        }
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: s.field(),
            });
        }
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `[A, B]`: the span of brackets of basis vectors.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut values = Vec::new();
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                let v = self.bracket_unchecked(&x, &y);
                if !vector::is_zero(&v) {
                    values.push(v);
                }
            }
        }
        Subspace::span(self.field, self.dim, &values)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    /// The derived subalgebra `[g, g]`.
    pub fn derived_algebra(&self) -> Subspace {
        let mut values = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                values.push(self.basis_bracket(i, j).to_vec());
            }
        }
        Subspace::span(self.field, self.dim, &values).expect("table vectors are well-formed")
    }

    /// Smallest bracket-closed subspace containing `seed`.
    pub fn subalgebra_closure(&self, seed: &Subspace) -> Result<Subspace> {
        self.check_subspace(seed)?;
        let mut current = seed.clone();
        loop {
            let next = current.sum(&self.bracket_span(&current, &current)?)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Smallest two-sided ideal containing `seed`.
    pub fn ideal_closure(&self, seed: &Subspace) -> Result<Subspace> {
        self.check_subspace(seed)?;
        let full = self.full_space();
        let mut current = seed.clone();
        loop {
            let next = current
                .sum(&self.bracket_span(&current, &full)?)?
                .sum(&self.bracket_span(&full, &current)?)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// True iff the bracket vanishes on all pairs of basis vectors of `s`.
    pub fn is_abelian_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        let basis = s.basis_vectors();
        for x in &basis {
            for y in &basis {
                if !vector::is_zero(&self.bracket_unchecked(x, y)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.bracket_span(s, s)?.is_subspace_of(s)
    }

    /// First bracket leaving `h`, described for error messages.
    pub fn ideal_violation(&self, h: &Subspace) -> Result<Option<String>> {
        self.check_subspace(h)?;
        let n = self.dim;
        for (r, b) in h.basis_vectors().iter().enumerate() {
            for j in 0..n {
                let e = vector::unit(self.field, n, j);
                let right = self.bracket_unchecked(b, &e);
                if !h.contains(&right)? {
                    return Ok(Some(format!(
                        "[h{}, e{}] = {} is not in the subspace (h{} = {})",
                        r + 1,
                        j + 1,
                        format_vector(&right),
                        r + 1,
                        format_vector(b)
                    )));
                }
                let left = self.bracket_unchecked(&e, b);
                if !h.contains(&left)? {
                    return Ok(Some(format!(
                        "[e{}, h{}] = {} is not in the subspace (h{} = {})",
                        j + 1,
                        r + 1,
                        format_vector(&left),
                        r + 1,
                        format_vector(b)
                    )));
                }
            }
        }
        Ok(None)
    }

    pub fn is_two_sided_ideal(&self, h: &Subspace) -> Result<bool> {
        Ok(self.ideal_violation(h)?.is_none())
    }

    /// Structure constants of a subalgebra in its canonical (RREF) basis.
    pub fn restrict(&self, s: &Subspace) -> Result<AlgebraTable> {
        if !self.is_subalgebra(s)? {
            return Err(Error::NotSubalgebra(s.to_string()));
        }
        let basis = s.basis_vectors();
        let m = basis.len();
        Ok(AlgebraTable::from_bracket_fn(self.field, m, |i, j| {
            let v = self.bracket_unchecked(&basis[i], &basis[j]);
            s.coordinates(&v)
                .expect("well-formed")
                .expect("closed under bracket")
        }))
    }

    /// The same algebra in the basis given by the columns of `change`.
    pub fn change_basis(&self, change: &Matrix) -> Result<AlgebraTable> {
        if change.rows() != self.dim || change.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: change.rows(),
            });
        }
        let inv = change.inverse().ok_or(Error::Singular)?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| change.column(j)).collect();
        Ok(AlgebraTable::from_bracket_fn(
            self.field,
            self.dim,
            |i, j| {
                inv.apply(&self.bracket_unchecked(&cols[i], &cols[j]))
                    .expect("square")
            },
        ))
    }

    /// True iff `map` (columns are images of basis vectors) sends brackets
    /// of `self` to brackets of `target`.
    pub fn preserves_brackets(&self, target: &AlgebraTable, map: &Matrix) -> Result<bool> {
        if map.cols() != self.dim || map.rows() != target.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: map.cols(),
            });
        }
        let images: Vec<Vec<Scalar>> = (0..self.dim).map(|j| map.column(j)).collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = map.apply(self.basis_bracket(i, j))?;
                let rhs = target.bracket_unchecked(&images[i], &images[j]);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every linear map `self -> target` that preserves brackets (finite
    /// fields), as matrices whose columns are the images of basis vectors.
    ///
    /// Columns are chosen one at a time over all of `target`, and a partial
    /// choice is abandoned as soon as some `[e_i, e_j]` whose inputs are all
    /// chosen is not preserved, so every linear map is either returned or
    /// refuted by a specific bracket. The budget bounds the number of partial
    /// choices visited.
    pub fn bracket_preserving_maps(
        &self,
        target: &AlgebraTable,
        budget: Budget,
    ) -> Result<Vec<Matrix>> {
        self.same_field(target)?;
        let (n, m) = (self.dim, target.dim);
        let candidates = all_vectors(self.field, m, Budget::new(u64::MAX))?;
        // pair (i, j) can be checked once columns 0..=ready are chosen
        let mut checks_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let support = self
                    .basis_bracket(i, j)
                    .iter()
                    .rposition(|c| !c.is_zero())
                    .unwrap_or(0);
                checks_at[i.max(j).max(support)].push((i, j));
            }
        }
        let mut search = MapSearch {
            source: self,
            target,
            candidates: &candidates,
            checks_at: &checks_at,
            columns: Vec::with_capacity(n),
            visited: 0,
            budget,
            found: Vec::new(),
        };
        search.extend()?;
        Ok(search.found)
    }

    /// First invertible bracket-preserving map `self -> target`, by exhaustive search.
    pub fn find_isomorphism(
        &self,
        target: &AlgebraTable,
        budget: Budget,
    ) -> Result<Option<Matrix>> {
        self.same_field(target)?;
        if self.dim != target.dim {
            return Ok(None);
        }
        Ok(self
            .bracket_preserving_maps(target, budget)?
            .into_iter()
            .find(Matrix::is_invertible))
    }

    fn same_field(&self, other: &AlgebraTable) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    /// Reinterprets the constants in another field (Q to GF(p)), listing
    /// constants that were nonzero before and vanish after.
    pub fn map_field(&self, target: FieldSpec) -> Result<(AlgebraTable, Vec<[usize; 3]>)> {
        if target == self.field {
            return Ok((self.clone(), Vec::new()));
        }
        let FieldSpec::Rationals = self.field else {
            return Err(Error::FieldMismatch {
                left: self.field,
                right: target,
            });
        };
        let mut out = AlgebraTable::zero(target, self.dim);
        let mut vanished = Vec::new();
        for (i, j, k, c) in self.nonzero_entries() {
            let Scalar::Rational(q) = c else {
                unreachable!()
            };
            let mapped = target.from_rational(q)?;
            if mapped.is_zero() {
                vanished.push([i, j, k]);
            }
            out.add_constant(i, j, k, &mapped);
        }
        Ok((out, vanished))
    }
}

struct MapSearch<'a> {
    source: &'a AlgebraTable,
    target: &'a AlgebraTable,
    candidates: &'a [Vec<Scalar>],
    checks_at: &'a [Vec<(usize, usize)>],
    columns: Vec<Vec<Scalar>>,
    visited: u64,
    budget: Budget,
    found: Vec<Matrix>,
}

impl MapSearch<'_> {
    fn extend(&mut self) -> Result<()> {
        let d = self.columns.len();
        if d == self.source.dim {
            let cols = &self.columns;
            self.found.push(Matrix::from_fn(
                self.source.field,
                self.target.dim,
                d,
                |i, j| cols[j][i].clone(),
            ));
            return Ok(());
        }
        for cand in self.candidates {
            self.visited += 1;
            if self.visited > self.budget.max_candidates {
                let q = self.source.field.order().unwrap_or(0);
                return Err(Error::BudgetExceeded {
                    needed: saturating_pow(q, self.source.dim * self.target.dim),
                    budget: self.budget.max_candidates,
                });
            }
            self.columns.push(cand.clone());
            if self.consistent(d) {
                self.extend()?;
            }
            self.columns.pop();
        }
        Ok(())
    }

    fn consistent(&self, d: usize) -> bool {
        let field = self.source.field;
        self.checks_at[d].iter().all(|&(i, j)| {
            let mut lhs = vector::zero(field, self.target.dim);
            for (k, c) in self.source.basis_bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    vector::axpy(&mut lhs, c, &self.columns[k]);
                }
            }
            lhs == self
                .target
                .bracket_unchecked(&self.columns[i], &self.columns[j])
        })
    }
}

/// A table known to satisfy the Leibniz identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra(AlgebraTable);

impl Deref for LeibnizAlgebra {
    type Target = AlgebraTable;
    fn deref(&self) -> &AlgebraTable {
        &self.0
    }
}

/// Result of a sampled-or-exhaustive identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub holds: bool,
    pub exhaustive: bool,
    pub cases: usize,
    pub seed: Option<u64>,
    pub witness: Option<String>,
}

/// A basis 4-tuple (0-based) with `[[e_i,e_j],[e_k,e_l]] != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabelianObstruction {
    pub indices: [usize; 4],
    pub value: Vec<Scalar>,
}

impl fmt::Display for MetabelianObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.indices.map(|x| x + 1);
        write!(
            f,
            "[[e{i},e{j}],[e{k},e{l}]] = {}",
            format_vector(&self.value)
        )
    }
}

/// Quotient algebra on the canonical complement plus the projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LeibnizAlgebra,
    /// `(n - dim h) x n`; column `j` is the image of `e_j`.
    pub projection: Matrix,
    /// Coordinates of `g` spanning the complement, in order.
    pub complement: Vec<usize>,
}

impl LeibnizAlgebra {
    pub fn table(&self) -> &AlgebraTable {
        &self.0
    }

    pub fn into_table(self) -> AlgebraTable {
        self.0
    }

    /// Lie iff `[e_i,e_i] = 0` and `[e_i,e_j] = -[e_j,e_i]`; the second check
    /// matters in characteristic 2.
    pub fn is_lie(&self) -> bool {
        self.lie_violation().is_none()
    }

    pub fn lie_violation(&self) -> Option<String> {
        let n = self.dim();
        for i in 0..n {
            let d = self.basis_bracket(i, i);
            if !vector::is_zero(d) {
                return Some(format!("[e{},e{}] = {}", i + 1, i + 1, format_vector(d)));
            }
            for j in i + 1..n {
                let s = vector::add(self.basis_bracket(i, j), self.basis_bracket(j, i));
                if !vector::is_zero(&s) {
                    return Some(format!(
                        "[e{},e{}] + [e{},e{}] = {}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        format_vector(&s)
                    ));
                }
            }
        }
        None
    }

    fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
        let field = self.field();
        (0..self.dim()).map(|_| field.sample(rng)).collect()
    }

    /// `[[x,y],[z,t]] = -[[x,y],[t,z]]`, on all basis tuples when `n^4` is at
    /// most [`BASIS_TUPLE_LIMIT`], otherwise on `trials` seeded random tuples.
    pub fn check_partial_skew(&self, trials: usize, seed: u64) -> PropertyCheck {
        let n = self.dim();
        if n.pow(4) <= BASIS_TUPLE_LIMIT {
            let brackets: Vec<Vec<Scalar>> = (0..n * n)
                .map(|ij| self.basis_bracket(ij / n, ij % n).to_vec())
                .collect();
            for i in 0..n {
                for j in 0..n {
                    let xy = &brackets[i * n + j];
                    for k in 0..n {
                        for l in 0..n {
                            let a = self.bracket_unchecked(xy, &brackets[k * n + l]);
                            let b = self.bracket_unchecked(xy, &brackets[l * n + k]);
                            let s = vector::add(&a, &b);
                            if !vector::is_zero(&s) {
                                return PropertyCheck {
                                    holds: false,
                                    exhaustive: true,
                                    cases: n.pow(4),
                                    seed: None,
                                    witness: Some(format!(
                                        "basis tuple ({}, {}, {}, {}): sum {}",
                                        i + 1,
                                        j + 1,
                                        k + 1,
                                        l + 1,
                                        format_vector(&s)
                                    )),
                                };
                            }
                        }
                    }
                }
            }
            return PropertyCheck {
                holds: true,
                exhaustive: true,
                cases: n.pow(4),
                seed: None,
                witness: None,
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..trials {
            let [x, y, z, w] = [(); 4].map(|_| self.random_vector(&mut rng));
            let xy = self.bracket_unchecked(&x, &y);
            let a = self.bracket_unchecked(&xy, &self.bracket_unchecked(&z, &w));
            let b = self.bracket_unchecked(&xy, &self.bracket_unchecked(&w, &z));
            if !vector::is_zero(&vector::add(&a, &b)) {
                return PropertyCheck {
                    holds: false,
                    exhaustive: false,
                    cases: t + 1,
                    seed: Some(seed),
                    witness: Some(format!("random trial {t}")),
                };
            }
        }
        PropertyCheck {
            holds: true,
            exhaustive: false,
            cases: trials,
            seed: Some(seed),
            witness: None,
        }
    }

    /// `[[x,z],y] = [[x,y],z] - [x,[y,z]]` on all basis triples.
    pub fn check_equivalent_law(&self) -> PropertyCheck {
        let n = self.dim();
        let f = self.field();
        for i in 0..n {
            let ei = vector::unit(f, n, i);
            for j in 0..n {
                let ej = vector::unit(f, n, j);
                for k in 0..n {
                    let ek = vector::unit(f, n, k);
                    let lhs = self.bracket_unchecked(self.basis_bracket(i, k), &ej);
                    let rhs = vector::sub(
                        &self.bracket_unchecked(self.basis_bracket(i, j), &ek),
                        &self.bracket_unchecked(&ei, self.basis_bracket(j, k)),
                    );
                    if lhs != rhs {
                        return PropertyCheck {
                            holds: false,
                            exhaustive: true,
                            cases: n.pow(3),
                            seed: None,
                            witness: Some(format!(
                                "basis triple ({}, {}, {})",
                                i + 1,
                                j + 1,
                                k + 1
                            )),
                        };
                    }
                }
            }
        }
        PropertyCheck {
            holds: true,
            exhaustive: true,
            cases: n.pow(3),
            seed: None,
            witness: None,
        }
    }

    /// `[g, g', g'', ...]`, stopping once a term repeats.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![self.full_space()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_span(last, last).expect("same ambient space");
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_metabelian(&self) -> bool {
        let d = self.derived_algebra();
        self.bracket_span(&d, &d)
            .expect("same ambient space")
            .is_zero()
    }

    /// First basis 4-tuple in lexicographic order with a nonzero
    /// `[[e_i,e_j],[e_k,e_l]]`; `None` iff the algebra is metabelian.
    pub fn metabelian_obstruction(&self) -> Option<MetabelianObstruction> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let xy = self.basis_bracket(i, j);
                if vector::is_zero(xy) {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        let value = self.bracket_unchecked(xy, self.basis_bracket(k, l));
                        if !vector::is_zero(&value) {
                            return Some(MetabelianObstruction {
                                indices: [i, j, k, l],
                                value,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// `g / h` on the coordinates that are not pivots of `h`.
    pub fn quotient(&self, h: &Subspace) -> Result<Quotient> {
        if let Some(v) = self.ideal_violation(h)? {
            return Err(Error::NotIdeal(v));
        }
        let n = self.dim();
        let complement = h.non_pivot_columns();
        let project = |w: &[Scalar]| -> Vec<Scalar> {
            let r = h.reduce(w);
            complement.iter().map(|&c| r[c].clone()).collect()
        };
        let m = complement.len();
        let projection = Matrix::from_rows(
            self.field(),
            m,
            (0..n)
                .map(|j| project(&vector::unit(self.field(), n, j)))
                .collect(),
        )?
        .transpose();
        let table = AlgebraTable::from_bracket_fn(self.field(), m, |a, b| {
            project(self.basis_bracket(complement[a], complement[b]))
        });
        // quotients of Leibniz algebras by ideals are Leibniz
        let algebra = table
            .into_leibniz()
            .map_err(|e| Error::TheoremViolation(e.to_string()))?;
        Ok(Quotient {
            algebra,
            projection,
            complement,
        })
    }

    /// `g'` abelian and `g/g'` abelian.
    pub fn is_extension_of_abelian_by_abelian(&self) -> bool {
        let d = self.derived_algebra();
        let kernel_abelian = self.is_abelian_subalgebra(&d).expect("same ambient space");
        let quotient = self.quotient(&d).expect("the derived algebra is an ideal");
        kernel_abelian && quotient.algebra.is_abelian()
    }

    /// The subalgebra `s` as a Leibniz algebra in its canonical basis.
    pub fn subalgebra(&self, s: &Subspace) -> Result<LeibnizAlgebra> {
        Ok(LeibnizAlgebra(self.restrict(s)?))
    }
}

impl fmt::Display for AlgebraTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim;
        let mut first = true;
        for i in 0..n {
            for j in 0..n {
                let v = self.basis_bracket(i, j);
                if vector::is_zero(v) {
                    continue;
                }
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "[e{},e{}] = {}", i + 1, j + 1, format_vector(v))?;
            }
        }
        if first {
            write!(f, "abelian of dimension {n}")?;
        }
        Ok(())
    }
}
