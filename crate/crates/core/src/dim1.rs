//! Leibniz algebras whose derived algebra is a line.
//!
//! Writing `g = k × P` with `k = g'`, the bracket is determined by two
//! linear forms and a bilinear form on `P`:
//!
//! ```text
//! {(a, p), (b, q)} = (a·λ(q) + b·Λ(p) + f(p, q), 0)
//! ```
//!
//! Here `λ` is the *right weight* (`[x, p] = λ(p) x` for the generator `x`),
//! `Λ` the *left weight* (`[p, x] = Λ(p) x`) and `f` the *form*. Every such
//! algebra falls in exactly one of three families, and morphisms between them
//! are triples `(v, u, ψ)` acting as `(a, p) -> (a·u + v(p), ψ(p))`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::algebra::{AlgebraTable, LeibnizAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{all_vectors, saturating_pow, vector, Budget, Matrix, MatrixSpace};
use crate::metabelian::{build_metabelian_product, extract_datum, Bilinear, MetabelianDatum};

/// `(λ, Λ, f)` on a space `P` of dimension `p_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Dim1Triple {
    field: FieldSpec,
    p_dim: usize,
    right_weight: Vec<Scalar>,
    left_weight: Vec<Scalar>,
    form: Matrix,
}

impl Dim1Triple {
    /// Validates the compatibility identities
    /// `Λ(p)Λ(q) = -Λ(p)λ(q)` and `Λ(p)f(q,r) - λ(r)f(p,q) + λ(q)f(p,r) = 0`.
    pub fn new(right_weight: Vec<Scalar>, left_weight: Vec<Scalar>, form: Matrix) -> Result<Self> {
        let t = Self::new_unchecked(right_weight, left_weight, form)?;
        match t.violation() {
            Some(v) => Err(Error::InvalidTriple(v)),
            None => Ok(t),
        }
    }

    /// Shape checks only.
    pub fn new_unchecked(
        right_weight: Vec<Scalar>,
        left_weight: Vec<Scalar>,
        form: Matrix,
    ) -> Result<Self> {
        let field = form.field();
        let n = form.rows();
        if form.cols() != n {
            return Err(Error::WrongShape(format!(
                "form is {} x {}, expected square",
                n,
                form.cols()
            )));
        }
        for w in [&right_weight, &left_weight] {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
            if let Some(c) = w.iter().find(|c| c.field() != field) {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: c.field(),
                });
            }
        }
        Ok(Dim1Triple {
            field,
            p_dim: n,
            right_weight,
            left_weight,
            form,
        })
    }

    pub fn zero(field: FieldSpec, p_dim: usize) -> Self {
        Dim1Triple {
            field,
            p_dim,
            right_weight: vector::zero(field, p_dim),
            left_weight: vector::zero(field, p_dim),
            form: Matrix::zeros(field, p_dim, p_dim),
        }
    }

    /// First failing compatibility instance, 1-based.
    pub fn violation(&self) -> Option<String> {
        let (l, big, f) = (&self.right_weight, &self.left_weight, &self.form);
        let n = self.p_dim;
        for p in 0..n {
            for q in 0..n {
                if &big[p] * &big[q] != -(&big[p] * &l[q]) {
                    return Some(format!(
                        "Λ(p)Λ(q) = -Λ(p)λ(q) fails at p = p{}, q = p{}",
                        p + 1,
                        q + 1
                    ));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let s = &(&(&big[p] * f.get(q, r)) - &(&l[r] * f.get(p, q)))
                        + &(&l[q] * f.get(p, r));
                    if !s.is_zero() {
                        return Some(format!(
                            "Λ(p)f(q,r) - λ(r)f(p,q) + λ(q)f(p,r) = 0 fails at p = p{}, q = p{}, r = p{}",
                            p + 1,
                            q + 1,
                            r + 1
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn p_dim(&self) -> usize {
        self.p_dim
    }

    /// `λ`: `[x, p] = λ(p) x`.
    pub fn right_weight(&self) -> &[Scalar] {
        &self.right_weight
    }

    /// `Λ`: `[p, x] = Λ(p) x`.
    pub fn left_weight(&self) -> &[Scalar] {
        &self.left_weight
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.right_weight)
            && vector::is_zero(&self.left_weight)
            && self.form.is_zero()
    }

    /// As a metabelian datum with `V = k`.
    pub fn to_datum(&self) -> MetabelianDatum {
        let (field, n) = (self.field, self.p_dim);
        MetabelianDatum::new(
            Bilinear::from_fn(field, 1, n, 1, |_, q| vec![self.right_weight[q].clone()]),
            Bilinear::from_fn(field, n, 1, 1, |p, _| vec![self.left_weight[p].clone()]),
            Bilinear::from_fn(field, n, n, 1, |p, q| vec![self.form.get(p, q).clone()]),
        )
        .expect("shapes agree")
    }

    /// The algebra on `k × P`, generator first.
    pub fn build_table(&self) -> Result<LeibnizAlgebra> {
        if let Some(v) = self.violation() {
            return Err(Error::InvalidTriple(v));
        }
        build_metabelian_product(&self.to_datum())
    }
}

impl fmt::Display for Dim1Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[Scalar]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "λ = ({}), Λ = ({}), f = {}",
            show(&self.right_weight),
            show(&self.left_weight),
            self.form
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyTag {
    /// `{(a,p),(b,q)} = (a λ(q), 0)`; non-Lie.
    WeightOnly,
    /// `{(a,p),(b,q)} = (f(p,q), 0)`.
    FormOnly,
    /// `[(a,p),(b,q)] = (-a Λ(q) + b Λ(p) + f(p,q), 0)`.
    Lie,
    Abelian,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::WeightOnly => "P_lambda",
            FamilyTag::FormOnly => "P_f",
            FamilyTag::Lie => "P_Lie",
            FamilyTag::Abelian => "abelian",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for FamilyTag {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// Parameters of a family representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    WeightOnly {
        weight: Vec<Scalar>,
    },
    FormOnly {
        form: Matrix,
    },
    /// `weight` is the left weight `Λ`; the right weight is `-Λ`.
    Lie {
        weight: Vec<Scalar>,
        form: Matrix,
    },
}

impl Family {
    pub fn tag(&self) -> FamilyTag {
        match self {
            Family::WeightOnly { .. } => FamilyTag::WeightOnly,
            Family::FormOnly { .. } => FamilyTag::FormOnly,
            Family::Lie { .. } => FamilyTag::Lie,
        }
    }

    /// The triple whose general bracket agrees with the family bracket.
    pub fn triple(&self) -> Result<Dim1Triple> {
        match self {
            Family::WeightOnly { weight } => {
                let field = weight.first().map(Scalar::field).ok_or_else(empty_p)?;
                let n = weight.len();
                Dim1Triple::new(
                    weight.clone(),
                    vector::zero(field, n),
                    Matrix::zeros(field, n, n),
                )
            }
            Family::FormOnly { form } => {
                let n = form.rows();
                Dim1Triple::new(
                    vector::zero(form.field(), n),
                    vector::zero(form.field(), n),
                    form.clone(),
                )
            }
            Family::Lie { weight, form } => {
                Dim1Triple::new(vector::neg(weight), weight.clone(), form.clone())
            }
        }
    }
}

fn empty_p() -> Error {
    Error::WrongShape("P must be nonzero".into())
}

/// `Λ(p)f(q,r) + Λ(r)f(p,q) - Λ(q)f(p,r) = 0` on basis triples.
fn lie_compatibility_violation(weight: &[Scalar], form: &Matrix) -> Option<String> {
    let n = weight.len();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let s = &(&(&weight[p] * form.get(q, r)) + &(&weight[r] * form.get(p, q)))
                    - &(&weight[q] * form.get(p, r));
                if !s.is_zero() {
                    return Some(format!(
                        "Λ(p)f(q,r) + Λ(r)f(p,q) - Λ(q)f(p,r) = 0 fails at p = p{}, q = p{}, r = p{}",
                        p + 1,
                        q + 1,
                        r + 1
                    ));
                }
            }
        }
    }
    None
}

/// The family representative on `k × P`, written directly from the family
/// bracket (not through the general triple).
pub fn build_family(family: &Family) -> Result<LeibnizAlgebra> {
    let (field, n) = match family {
        Family::WeightOnly { weight } => (
            weight.first().map(Scalar::field).ok_or_else(empty_p)?,
            weight.len(),
        ),
        Family::FormOnly { form } | Family::Lie { form, .. } => (form.field(), form.rows()),
    };
    if let Family::Lie { weight, form } = family {
        if weight.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: weight.len(),
            });
        }
        if let Some(v) = lie_compatibility_violation(weight, form) {
            return Err(Error::InvalidTriple(v));
        }
    }
    let mut entries = Vec::new();
    let mut push = |i: usize, j: usize, c: &Scalar| {
        if !c.is_zero() {
            entries.push((i, j, 0, c.clone()));
        }
    };
    match family {
        Family::WeightOnly { weight } => {
            for (q, c) in weight.iter().enumerate() {
                push(0, q + 1, c);
            }
        }
        Family::FormOnly { form } => {
            for p in 0..n {
                for q in 0..n {
                    push(p + 1, q + 1, form.get(p, q));
                }
            }
        }
        Family::Lie { weight, form } => {
            for (p, c) in weight.iter().enumerate() {
                push(0, p + 1, &-c);
                push(p + 1, 0, c);
            }
            for p in 0..n {
                for q in 0..n {
                    push(p + 1, q + 1, form.get(p, q));
                }
            }
        }
    }
    let table = AlgebraTable::from_entries(field, n + 1, entries)?;
    let g = table
        .into_leibniz()
        .map_err(|e| Error::TheoremViolation(format!("family table: {e}")))?;
    if family.tag() == FamilyTag::Lie {
        if let Some(v) = g.lie_violation() {
            return Err(Error::TheoremViolation(format!(
                "Lie family table is not Lie: {v}"
            )));
        }
    }
    Ok(g)
}

/// A triple read off an algebra, with the basis it was read in.
#[derive(Clone, Debug)]
pub struct ExtractedTriple {
    pub triple: Dim1Triple,
    /// Columns: the RREF generator of `g'`, then the complement coordinates.
    pub basis: Matrix,
}

/// Reads `(λ, Λ, f)` against the RREF generator of `g'`, with `P` spanned by
/// the coordinate vectors off its pivot.
pub fn extract_triple(g: &LeibnizAlgebra) -> Result<ExtractedTriple> {
    let d = g.derived_algebra().dim();
    if d != 1 {
        return Err(Error::WrongShape(format!("dim g' = {d}, expected 1")));
    }
    let ex = extract_datum(g)?;
    let datum = &ex.datum;
    let n = datum.p_dim();
    let field = g.field();
    let right_weight = (0..n)
        .map(|q| datum.left_act().basis_value(0, q)[0].clone())
        .collect();
    let left_weight = (0..n)
        .map(|p| datum.right_act().basis_value(p, 0)[0].clone())
        .collect();
    let form = Matrix::from_fn(field, n, n, |p, q| {
        datum.cocycle().basis_value(p, q)[0].clone()
    });
    let triple = Dim1Triple::new(right_weight, left_weight, form)
        .map_err(|e| Error::TheoremViolation(format!("extracted triple: {e}")))?;
    Ok(ExtractedTriple {
        triple,
        basis: ex.basis,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub family: FamilyTag,
    pub canonical: Dim1Triple,
    /// For the weight-only family, `θ` with `f(p,q) = θ(p)λ(q)`.
    pub theta: Option<Vec<Scalar>>,
}

/// Case split on `Λ`, then `λ`, then `f`.
pub fn classify(t: &Dim1Triple) -> Result<Classification> {
    if let Some(v) = t.violation() {
        return Err(Error::InvalidTriple(v));
    }
    let n = t.p_dim;
    if !vector::is_zero(&t.left_weight) {
        if t.right_weight != vector::neg(&t.left_weight) {
            return Err(Error::TheoremViolation(format!("Λ ≠ 0 but λ ≠ -Λ for {t}")));
        }
        return Ok(Classification {
            family: FamilyTag::Lie,
            canonical: t.clone(),
            theta: None,
        });
    }
    if let Some(r0) = t.right_weight.iter().position(|c| !c.is_zero()) {
        let inv = t.right_weight[r0].inv().expect("nonzero");
        let theta: Vec<Scalar> = (0..n).map(|p| t.form.get(p, r0) * &inv).collect();
        for p in 0..n {
            for q in 0..n {
                if t.form.get(p, q) != &(&theta[p] * &t.right_weight[q]) {
                    return Err(Error::TheoremViolation(format!(
                        "f does not factor as θ ⊗ λ at p{}, p{} for {t}",
                        p + 1,
                        q + 1
                    )));
                }
            }
        }
        let canonical = Family::WeightOnly {
            weight: t.right_weight.clone(),
        }
        .triple()?;
        return Ok(Classification {
            family: FamilyTag::WeightOnly,
            canonical,
            theta: Some(theta),
        });
    }
    let family = if t.form.is_zero() {
        FamilyTag::Abelian
    } else {
        FamilyTag::FormOnly
    };
    Ok(Classification {
        family,
        canonical: t.clone(),
        theta: None,
    })
}

/// `φ(a, p) = (a·u + v(p), ψ(p))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MorphismTriple {
    /// `v`, a linear form on `P`.
    pub shift: Vec<Scalar>,
    /// `u`.
    pub scale: Scalar,
    /// `ψ`, acting on column vectors.
    pub endo: Matrix,
}

impl MorphismTriple {
    pub fn identity(field: FieldSpec, p_dim: usize) -> Self {
        MorphismTriple {
            shift: vector::zero(field, p_dim),
            scale: field.one(),
            endo: Matrix::identity(field, p_dim),
        }
    }

    pub fn p_dim(&self) -> usize {
        self.endo.rows()
    }

    pub fn is_invertible(&self) -> bool {
        !self.scale.is_zero() && self.endo.is_invertible()
    }

    /// Matrix on `k × P`; column `0` is the image of the generator.
    pub fn to_matrix(&self) -> Matrix {
        let n = self.p_dim();
        let field = self.endo.field();
        Matrix::from_fn(field, n + 1, n + 1, |i, j| match (i, j) {
            (0, 0) => self.scale.clone(),
            (_, 0) => field.zero(),
            (0, j) => self.shift[j - 1].clone(),
            (i, j) => self.endo.get(i - 1, j - 1).clone(),
        })
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); `None` when the generator
    /// is not sent into the `k`-line.
    pub fn from_matrix(m: &Matrix) -> Option<Self> {
        let n = m.rows().checked_sub(1)?;
        if m.cols() != n + 1 || (1..=n).any(|i| !m.get(i, 0).is_zero()) {
            return None;
        }
        Some(MorphismTriple {
            shift: (1..=n).map(|j| m.get(0, j).clone()).collect(),
            scale: m.get(0, 0).clone(),
            endo: Matrix::from_fn(m.field(), n, n, |i, j| m.get(i + 1, j + 1).clone()),
        })
    }

    /// `self ∘ other`: `(u v' + v∘ψ', u u', ψ ψ')`.
    pub fn compose(&self, other: &MorphismTriple) -> MorphismTriple {
        let field = self.endo.field();
        let vpsi = other.endo.apply_left(&self.shift).expect("same P");
        let mut shift = vector::scale(&self.scale, &other.shift);
        vector::axpy(&mut shift, &field.one(), &vpsi);
        MorphismTriple {
            shift,
            scale: &self.scale * &other.scale,
            endo: self.endo.mul(&other.endo).expect("same P"),
        }
    }
}

fn check_pair(src: &Dim1Triple, dst: &Dim1Triple) -> Result<()> {
    if src.field != dst.field {
        return Err(Error::FieldMismatch {
            left: src.field,
            right: dst.field,
        });
    }
    if src.p_dim != dst.p_dim {
        return Err(Error::DimensionMismatch {
            expected: src.p_dim,
            found: dst.p_dim,
        });
    }
    Ok(())
}

/// `f(ψ·, ψ·)` as the matrix `ψᵀ F ψ`.
fn pulled_back_form(form: &Matrix, psi: &Matrix) -> Matrix {
    psi.transpose()
        .mul(form)
        .and_then(|m| m.mul(psi))
        .expect("same P")
}

/// Data of the target pulled back along `ψ`: `λ'∘ψ`, `Λ'∘ψ` and `f'(ψ·, ψ·)`.
struct Pullback {
    right: Vec<Scalar>,
    left: Vec<Scalar>,
    form: Matrix,
}

impl Pullback {
    fn new(dst: &Dim1Triple, psi: &Matrix) -> Self {
        Pullback {
            right: psi.apply_left(&dst.right_weight).expect("same P"),
            left: psi.apply_left(&dst.left_weight).expect("same P"),
            form: pulled_back_form(&dst.form, psi),
        }
    }

    /// Only the weights; the form is filled in by [`Pullback::with_form`].
    fn weights_only(dst: &Dim1Triple, psi: &Matrix) -> Self {
        Pullback {
            right: psi.apply_left(&dst.right_weight).expect("same P"),
            left: psi.apply_left(&dst.left_weight).expect("same P"),
            form: Matrix::zeros(dst.field, 0, 0),
        }
    }

    fn with_form(mut self, dst: &Dim1Triple, psi: &Matrix) -> Self {
        self.form = pulled_back_form(&dst.form, psi);
        self
    }

    /// `u λ = u λ'ψ` and `u Λ = u Λ'ψ`.
    fn weights_match(&self, src: &Dim1Triple) -> bool {
        src.right_weight == self.right && src.left_weight == self.left
    }

    /// `u f(p,q) = f'(ψp,ψq) + v(p)λ'(ψq) + v(q)Λ'(ψp)` on basis pairs.
    fn form_matches(&self, src: &Dim1Triple, u: &Scalar, v: &[Scalar]) -> bool {
        let n = src.p_dim;
        (0..n).all(|p| {
            (0..n).all(|q| {
                let rhs =
                    &(self.form.get(p, q) + &(&v[p] * &self.right[q])) + &(&v[q] * &self.left[p]);
                (u * src.form.get(p, q)) == rhs
            })
        })
    }
}

/// True iff `(v, u, ψ)` satisfies the morphism equations between the two
/// triples. Also checks, independently, that the induced map on the built
/// tables preserves brackets; disagreement is a [`Error::TheoremViolation`].
pub fn verify_morphism(src: &Dim1Triple, dst: &Dim1Triple, m: &MorphismTriple) -> Result<bool> {
    check_pair(src, dst)?;
    if m.p_dim() != src.p_dim || m.shift.len() != src.p_dim || m.endo.cols() != src.p_dim {
        return Err(Error::DimensionMismatch {
            expected: src.p_dim,
            found: m.p_dim(),
        });
    }
    let pb = Pullback::new(dst, &m.endo);
    let weights = m.scale.is_zero() || pb.weights_match(src);
    let by_equations = weights && pb.form_matches(src, &m.scale, &m.shift);
    let by_tables = src
        .build_table()?
        .preserves_brackets(dst.build_table()?.table(), &m.to_matrix())?;
    if by_equations != by_tables {
        return Err(Error::TheoremViolation(format!(
            "morphism equations say {by_equations}, bracket check says {by_tables} for {m:?} from {src} to {dst}"
        )));
    }
    Ok(by_equations)
}

fn require_finite(field: FieldSpec, operation: &'static str) -> Result<u64> {
    field.order().ok_or(Error::InfiniteField { operation })
}

fn require_nonzero(t: &Dim1Triple) -> Result<()> {
    if t.is_zero() {
        return Err(Error::InvalidTriple(
            "the zero triple (abelian algebra) is excluded".into(),
        ));
    }
    Ok(())
}

/// Every morphism triple from `src` to `dst`: `ψ` outer, then `u`, then `v`,
/// each in odometer order.
pub fn enumerate_morphisms(
    src: &Dim1Triple,
    dst: &Dim1Triple,
    budget: Budget,
) -> Result<Vec<MorphismTriple>> {
    check_pair(src, dst)?;
    require_nonzero(src)?;
    require_nonzero(dst)?;
    let q = require_finite(src.field, "morphism enumeration")?;
    let n = src.p_dim;
    budget.check(saturating_pow(q, n * n + n + 1))?;
    let field = src.field;
    let shifts = all_vectors(field, n, budget)?;
    let scales = field.elements();
    let mut out = Vec::new();
    for psi in MatrixSpace::new(field, n, n, budget)? {
        let pb = Pullback::new(dst, &psi);
        let weights = pb.weights_match(src);
        for u in &scales {
            if !u.is_zero() && !weights {
                continue;
            }
            for v in &shifts {
                if pb.form_matches(src, u, v) {
                    out.push(MorphismTriple {
                        shift: v.clone(),
                        scale: u.clone(),
                        endo: psi.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Every bracket-preserving linear map between the built tables, by brute
/// force over all `(n+1) x (n+1)` matrices.
pub fn brute_force_morphisms(
    src: &Dim1Triple,
    dst: &Dim1Triple,
    budget: Budget,
) -> Result<Vec<Matrix>> {
    check_pair(src, dst)?;
    require_finite(src.field, "morphism enumeration")?;
    src.build_table()?
        .bracket_preserving_maps(dst.build_table()?.table(), budget)
}

/// An isomorphism `a -> b`, or `None` when there is none (finite fields).
///
/// Search order: invertible `ψ` with `λ = λ'ψ` and `Λ = Λ'ψ`, then `u ≠ 0`,
/// then `v`. The witness returned is re-verified.
pub fn are_isomorphic(
    a: &Dim1Triple,
    b: &Dim1Triple,
    budget: Budget,
) -> Result<Option<MorphismTriple>> {
    check_pair(a, b)?;
    let q = require_finite(a.field, "isomorphism search")?;
    for t in [a, b] {
        if let Some(v) = t.violation() {
            return Err(Error::InvalidTriple(v));
        }
    }
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ok(Some(MorphismTriple::identity(a.field, a.p_dim))),
        (true, false) | (false, true) => return Ok(None),
        _ => {}
    }
    let n = a.p_dim;
    budget.check(saturating_pow(q, n * n + n + 1))?;
    let field = a.field;
    let shifts = all_vectors(field, n, budget)?;
    let units = field.units();
    for psi in MatrixSpace::new(field, n, n, budget)? {
        let pb = Pullback::weights_only(b, &psi);
        if !pb.weights_match(a) || !psi.is_invertible() {
            continue;
        }
        let pb = pb.with_form(b, &psi);
        for u in &units {
            for v in &shifts {
                if pb.form_matches(a, u, v) {
                    let w = MorphismTriple {
                        shift: v.clone(),
                        scale: u.clone(),
                        endo: psi.clone(),
                    };
                    if !verify_morphism(a, b, &w)? {
                        return Err(Error::TheoremViolation(format!(
                            "search produced a non-morphism {w:?}"
                        )));
                    }
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Checks a supplied isomorphism; works over any field.
pub fn verify_isomorphism_witness(
    a: &Dim1Triple,
    b: &Dim1Triple,
    w: &MorphismTriple,
) -> Result<()> {
    if !w.is_invertible() {
        return Err(Error::WitnessRejected("u = 0 or ψ is singular".into()));
    }
    if !verify_morphism(a, b, w)? {
        return Err(Error::WitnessRejected("the morphism equations fail".into()));
    }
    Ok(())
}

/// An element `(v, u, ψ)` of `P* ⋊ (k* × Aut(P))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SemidirectElement(MorphismTriple);

impl SemidirectElement {
    pub fn new(shift: Vec<Scalar>, scale: Scalar, endo: Matrix) -> Result<Self> {
        let n = endo.rows();
        if shift.len() != n || endo.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: shift.len(),
            });
        }
        if scale.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !endo.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(SemidirectElement(MorphismTriple { shift, scale, endo }))
    }

    pub fn from_morphism(m: MorphismTriple) -> Result<Self> {
        Self::new(m.shift, m.scale, m.endo)
    }

    pub fn identity(field: FieldSpec, p_dim: usize) -> Self {
        SemidirectElement(MorphismTriple::identity(field, p_dim))
    }

    pub fn morphism(&self) -> &MorphismTriple {
        &self.0
    }

    pub fn shift(&self) -> &[Scalar] {
        &self.0.shift
    }

    pub fn scale(&self) -> &Scalar {
        &self.0.scale
    }

    pub fn endo(&self) -> &Matrix {
        &self.0.endo
    }

    /// `(v,u,ψ)·(v',u',ψ') = (u v' + v∘ψ', uu', ψψ')`.
    pub fn mul(&self, other: &SemidirectElement) -> SemidirectElement {
        SemidirectElement(self.0.compose(&other.0))
    }

    /// `(-u⁻¹ v∘ψ⁻¹, u⁻¹, ψ⁻¹)`.
    pub fn inv(&self) -> SemidirectElement {
        let u_inv = self.0.scale.inv().expect("u is nonzero");
        let psi_inv = self.0.endo.inverse().expect("ψ is invertible");
        let shift = vector::scale(
            &-&u_inv,
            &psi_inv.apply_left(&self.0.shift).expect("same P"),
        );
        SemidirectElement(MorphismTriple {
            shift,
            scale: u_inv,
            endo: psi_inv,
        })
    }

    /// `(v∘ψ⁻¹, 1, Id)` and `(0, u, ψ)`, whose product is `self`.
    pub fn factor(&self) -> (SemidirectElement, SemidirectElement) {
        let field = self.0.endo.field();
        let n = self.0.p_dim();
        let psi_inv = self.0.endo.inverse().expect("ψ is invertible");
        let translation = MorphismTriple {
            shift: psi_inv.apply_left(&self.0.shift).expect("same P"),
            scale: field.one(),
            endo: Matrix::identity(field, n),
        };
        let linear = MorphismTriple {
            shift: vector::zero(field, n),
            scale: self.0.scale.clone(),
            endo: self.0.endo.clone(),
        };
        (SemidirectElement(translation), SemidirectElement(linear))
    }
}

/// Automorphisms of a triple by the family description, with cross-checks.
#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismReport {
    pub family: FamilyTag,
    pub order: usize,
    pub elements: Vec<SemidirectElement>,
    pub generators: Vec<SemidirectElement>,
    pub brute_force_order: usize,
    /// The element matrices are exactly the invertible bracket-preserving maps.
    pub matches_brute_force: bool,
    pub closed_under_product: bool,
    pub identity_and_inverses: bool,
    pub factorization: bool,
    /// Every element passes [`verify_morphism`].
    pub verified_as_morphisms: bool,
}

impl AutomorphismReport {
    pub fn holds(&self) -> bool {
        self.order == self.brute_force_order
            && self.matches_brute_force
            && self.closed_under_product
            && self.identity_and_inverses
            && self.factorization
            && self.verified_as_morphisms
    }
}

/// The automorphism set from the family description:
/// weight-only (with `θ = 0`): `v = 0`, `λψ = λ`, any `u ≠ 0`;
/// form-only: `u f = f(ψ·, ψ·)`, any `v`;
/// Lie: `Λψ = Λ` and `u f(p,q) = f(ψp,ψq) + v(q)Λ(p) - v(p)Λ(q)`.
/// A weight-only triple with `θ ≠ 0` gets the canonical group conjugated by
/// the isomorphism `(θ, 1, Id)` onto its canonical form.
pub fn family_automorphisms(t: &Dim1Triple, budget: Budget) -> Result<Vec<SemidirectElement>> {
    require_nonzero(t)?;
    let q = require_finite(t.field, "automorphism enumeration")?;
    let n = t.p_dim;
    budget.check(saturating_pow(q, n * n + n + 1))?;
    let class = classify(t)?;
    let field = t.field;
    if let Some(theta) = class.theta.as_ref().filter(|th| !vector::is_zero(th)) {
        let to_canonical =
            SemidirectElement::new(theta.clone(), field.one(), Matrix::identity(field, n))?;
        let back = to_canonical.inv();
        return Ok(family_automorphisms(&class.canonical, budget)?
            .iter()
            .map(|a| back.mul(a).mul(&to_canonical))
            .collect());
    }
    let shifts = all_vectors(field, n, budget)?;
    let units = field.units();
    let zero_shift = vector::zero(field, n);
    let mut out = Vec::new();
    for psi in MatrixSpace::new(field, n, n, budget)? {
        if !psi.is_invertible() {
            continue;
        }
        let form_psi = pulled_back_form(&t.form, &psi);
        match class.family {
            FamilyTag::WeightOnly => {
                if psi.apply_left(&t.right_weight)? != t.right_weight {
                    continue;
                }
                for u in &units {
                    out.push(SemidirectElement::new(
                        zero_shift.clone(),
                        u.clone(),
                        psi.clone(),
                    )?);
                }
            }
            FamilyTag::FormOnly => {
                for u in &units {
                    if (0..n).all(|p| (0..n).all(|r| &(u * t.form.get(p, r)) == form_psi.get(p, r)))
                    {
                        for v in &shifts {
                            out.push(SemidirectElement::new(v.clone(), u.clone(), psi.clone())?);
                        }
                    }
                }
            }
            FamilyTag::Lie => {
                let big = &t.left_weight;
                if &psi.apply_left(big)? != big {
                    continue;
                }
                for u in &units {
                    for v in &shifts {
                        let ok = (0..n).all(|p| {
                            (0..n).all(|r| {
                                let rhs =
                                    &(form_psi.get(p, r) + &(&v[r] * &big[p])) - &(&v[p] * &big[r]);
                                (u * t.form.get(p, r)) == rhs
                            })
                        });
                        if ok {
                            out.push(SemidirectElement::new(v.clone(), u.clone(), psi.clone())?);
                        }
                    }
                }
            }
            FamilyTag::Abelian => unreachable!("zero triple rejected above"),
        }
    }
    Ok(out)
}

/// A generating set, chosen greedily in element order.
pub fn generators(elements: &[SemidirectElement]) -> Vec<SemidirectElement> {
    let Some(first) = elements.first() else {
        return Vec::new();
    };
    let id = SemidirectElement::identity(first.endo().field(), first.morphism().p_dim());
    let mut gens: Vec<SemidirectElement> = Vec::new();
    let mut reached: HashSet<SemidirectElement> = HashSet::from([id.clone()]);
    for x in elements {
        if reached.contains(x) {
            continue;
        }
        gens.push(x.clone());
        // closing under products is enough in a finite group
        let mut queue: VecDeque<SemidirectElement> = reached.iter().cloned().collect();
        while let Some(y) = queue.pop_front() {
            for g in &gens {
                let z = y.mul(g);
                if reached.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
    }
    gens
}

/// Builds the family description of `Aut(t)` and checks it against brute
/// force and the group law.
pub fn automorphism_group(t: &Dim1Triple, budget: Budget) -> Result<AutomorphismReport> {
    let elements = family_automorphisms(t, budget)?;
    let family = classify(t)?.family;
    let field = t.field;
    let n = t.p_dim;

    let table = t.build_table()?;
    let brute: HashSet<Matrix> = table
        .bracket_preserving_maps(table.table(), budget)?
        .into_iter()
        .filter(Matrix::is_invertible)
        .collect();
    let index: HashMap<SemidirectElement, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();

    let matrices: Vec<Matrix> = elements.iter().map(|e| e.morphism().to_matrix()).collect();
    let mut closed = true;
    'outer: for (x, mx) in elements.iter().zip(&matrices) {
        for (y, my) in elements.iter().zip(&matrices) {
            let xy = x.mul(y);
            let Some(&k) = index.get(&xy) else {
                closed = false;
                break 'outer;
            };
            if matrices[k] != mx.mul(my)? {
                closed = false;
                break 'outer;
            }
        }
    }
    let as_set: HashSet<Matrix> = matrices.iter().cloned().collect();
    let matches_brute_force = as_set == brute && as_set.len() == elements.len();
    let id = SemidirectElement::identity(field, n);
    let identity_and_inverses = index.contains_key(&id)
        && elements.iter().all(|x| {
            let xi = x.inv();
            index.contains_key(&xi)
                && x.mul(&xi) == id
                && xi.mul(x) == id
                && x.mul(&id) == *x
                && id.mul(x) == *x
        });
    let factorization = elements.iter().all(|x| {
        let (a, b) = x.factor();
        a.mul(&b) == *x
            && a.scale().is_one()
            && a.endo() == &Matrix::identity(field, n)
            && vector::is_zero(b.shift())
    });
    let mut verified = true;
    for x in &elements {
        verified &= verify_morphism(t, t, x.morphism())?;
    }
    Ok(AutomorphismReport {
        family,
        order: elements.len(),
        generators: generators(&elements),
        elements,
        brute_force_order: brute.len(),
        matches_brute_force,
        closed_under_product: closed,
        identity_and_inverses,
        factorization,
        verified_as_morphisms: verified,
    })
}

/// Every valid triple over a finite field with the given `p_dim`, in
/// odometer order over `(λ, Λ, f)`.
pub fn all_triples(field: FieldSpec, p_dim: usize, budget: Budget) -> Result<Vec<Dim1Triple>> {
    let n = p_dim;
    let q = require_finite(field, "triple enumeration")?;
    budget.check(saturating_pow(q, n * n + 2 * n))?;
    let mut out = Vec::new();
    for m in MatrixSpace::new(field, 1, n * n + 2 * n, budget)? {
        let row = m.row(0);
        let form = Matrix::from_fn(field, n, n, |i, j| row[2 * n + i * n + j].clone());
        let t = Dim1Triple::new_unchecked(row[..n].to_vec(), row[n..2 * n].to_vec(), form)?;
        if t.violation().is_none() {
            out.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn s(field: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    fn triple(field: FieldSpec, l: &[i64], big: &[i64], f: &[&[i64]]) -> Dim1Triple {
        Dim1Triple::new(s(field, l), s(field, big), Matrix::from_i64(field, f)).unwrap()
    }

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::Prime(2);
    const F3: FieldSpec = FieldSpec::Prime(3);

    #[test]
    fn extraction_examples() {
        let g = AlgebraTable::from_brackets(Q, 2, &[(1, 2, 1, 1)])
            .into_leibniz()
            .unwrap();
        let t = extract_triple(&g).unwrap().triple;
        assert_eq!(t, triple(Q, &[1], &[0], &[&[0]]));

        let ex = extract_triple(&builtins::ex3dim(Q).into_leibniz().unwrap())
            .unwrap()
            .triple;
        assert_eq!(ex, triple(Q, &[0, 0], &[0, 0], &[&[1, 0], &[0, 1]]));

        // basis h1, h2, e: g' = span{e}, P = span{h1, h2}
        let b2 = extract_triple(&builtins::b2(Q).into_leibniz().unwrap()).unwrap();
        assert_eq!(
            b2.triple,
            triple(Q, &[-1, 1], &[1, -1], &[&[0, 0], &[0, 0]])
        );
        assert_eq!(b2.basis.column(0), s(Q, &[0, 0, 1]));

        let l5 = builtins::l5(Q).into_leibniz().unwrap();
        assert!(matches!(extract_triple(&l5), Err(Error::WrongShape(_))));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify(&triple(Q, &[1], &[0], &[&[0]])).unwrap().family,
            FamilyTag::WeightOnly
        );
        assert_eq!(
            classify(&triple(Q, &[0, 0], &[0, 0], &[&[1, 0], &[0, 1]]))
                .unwrap()
                .family,
            FamilyTag::FormOnly
        );
        let c = classify(&triple(Q, &[-1, 1], &[1, -1], &[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!(c.family, FamilyTag::Lie);
        assert!(c.canonical.form().is_zero());
        assert_eq!(
            classify(&Dim1Triple::zero(Q, 2)).unwrap().family,
            FamilyTag::Abelian
        );

        // f = θ ⊗ λ with θ = (2, 1), λ = (1, 0)
        let c = classify(&triple(Q, &[1, 0], &[0, 0], &[&[2, 0], &[1, 0]])).unwrap();
        assert_eq!(c.family, FamilyTag::WeightOnly);
        assert_eq!(c.theta.unwrap(), s(Q, &[2, 1]));
        assert!(c.canonical.form().is_zero());
    }

    #[test]
    fn invalid_triples_are_rejected() {
        // Λ ≠ 0 forces λ = -Λ
        let err =
            Dim1Triple::new(s(Q, &[1]), s(Q, &[1]), Matrix::from_i64(Q, &[&[0]])).unwrap_err();
        assert!(matches!(err, Error::InvalidTriple(ref m) if m.contains("Λ(p)Λ(q)")));
        // Λ = 0, λ = (1, 0), f = e2 ⊗ e2 does not factor through λ
        let err = Dim1Triple::new(
            s(Q, &[1, 0]),
            s(Q, &[0, 0]),
            Matrix::from_i64(Q, &[&[0, 0], &[0, 1]]),
        );
        assert!(matches!(err, Err(Error::InvalidTriple(_))));
    }

    #[test]
    fn family_tables() {
        let g = build_family(&Family::WeightOnly { weight: s(Q, &[1]) }).unwrap();
        assert_eq!(
            g.table(),
            &AlgebraTable::from_brackets(Q, 2, &[(1, 2, 1, 1)])
        );
        assert!(!g.is_lie());

        let g = build_family(&Family::FormOnly {
            form: Matrix::from_i64(Q, &[&[1, 0], &[0, 1]]),
        })
        .unwrap();
        assert_eq!(g.table(), &builtins::ex3dim(Q));

        let g = build_family(&Family::Lie {
            weight: s(Q, &[1, -1]),
            form: Matrix::zeros(Q, 2, 2),
        })
        .unwrap();
        assert!(g.is_lie());
        // generator first here, last in the builtin
        let perm = Matrix::from_i64(Q, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(builtins::b2(Q).change_basis(&perm).unwrap(), *g.table());

        let bad = Family::Lie {
            weight: s(Q, &[1, 0]),
            form: Matrix::from_i64(Q, &[&[0, 1], &[0, 0]]),
        };
        assert!(matches!(build_family(&bad), Err(Error::InvalidTriple(_))));
    }

    #[test]
    fn family_tables_agree_with_general_builder() {
        for field in [F2, F3] {
            for n in 1..=2 {
                for t in all_triples(field, n, Budget::default()).unwrap() {
                    let c = classify(&t).unwrap();
                    let family = match c.family {
                        FamilyTag::WeightOnly => Family::WeightOnly {
                            weight: t.right_weight.clone(),
                        },
                        FamilyTag::FormOnly => Family::FormOnly {
                            form: t.form.clone(),
                        },
                        FamilyTag::Lie => Family::Lie {
                            weight: t.left_weight.clone(),
                            form: t.form.clone(),
                        },
                        FamilyTag::Abelian => continue,
                    };
                    let direct = build_family(&family).unwrap();
                    assert_eq!(direct.table(), c.canonical.build_table().unwrap().table());
                    match c.family {
                        FamilyTag::Lie => assert!(direct.is_lie(), "{t}"),
                        FamilyTag::WeightOnly => assert!(!direct.is_lie(), "{t}"),
                        _ => {}
                    }
                }
            }
        }
    }

    #[test]
    fn morphism_examples() {
        let t = triple(F3, &[0, 0], &[0, 0], &[&[1, 0], &[0, 1]]);
        assert!(verify_morphism(&t, &t, &MorphismTriple::identity(F3, 2)).unwrap());
        let scaled = MorphismTriple {
            shift: s(F3, &[0, 0]),
            scale: F3.from_i64(2),
            endo: Matrix::identity(F3, 2),
        };
        assert!(!verify_morphism(&t, &t, &scaled).unwrap());

        // P^(λ,θ) -> P^(λ,0) via (θ, 1, Id)
        let with_theta = triple(Q, &[1, 0], &[0, 0], &[&[2, 0], &[1, 0]]);
        let canonical = triple(Q, &[1, 0], &[0, 0], &[&[0, 0], &[0, 0]]);
        let m = MorphismTriple {
            shift: s(Q, &[2, 1]),
            scale: Q.one(),
            endo: Matrix::identity(Q, 2),
        };
        assert!(verify_morphism(&with_theta, &canonical, &m).unwrap());
        verify_isomorphism_witness(&with_theta, &canonical, &m).unwrap();
    }

    #[test]
    fn composition_is_matrix_product() {
        let t = triple(F3, &[1, 0], &[0, 0], &[&[0, 0], &[0, 0]]);
        let ms = enumerate_morphisms(&t, &t, Budget::default()).unwrap();
        for a in ms.iter().step_by(7) {
            for b in ms.iter().step_by(5) {
                let c = a.compose(b);
                assert_eq!(c.to_matrix(), a.to_matrix().mul(&b.to_matrix()).unwrap());
                assert!(verify_morphism(&t, &t, &c).unwrap());
            }
        }
    }

    #[test]
    fn matrix_round_trip() {
        let m = MorphismTriple {
            shift: s(F3, &[1, 2]),
            scale: F3.from_i64(2),
            endo: Matrix::from_i64(F3, &[&[0, 1], &[1, 1]]),
        };
        assert_eq!(MorphismTriple::from_matrix(&m.to_matrix()).unwrap(), m);
        let mut moved = m.to_matrix();
        moved.set(1, 0, F3.one());
        assert!(MorphismTriple::from_matrix(&moved).is_none());
    }

    #[test]
    fn morphism_count_matches_brute_force_pinned_case() {
        let t = triple(F2, &[1, 0], &[0, 0], &[&[0, 0], &[0, 0]]);
        let ms = enumerate_morphisms(&t, &t, Budget::default()).unwrap();
        let brute = brute_force_morphisms(&t, &t, Budget::default()).unwrap();
        assert_eq!(ms.len(), brute.len());
        let a: HashSet<Matrix> = ms.iter().map(MorphismTriple::to_matrix).collect();
        let b: HashSet<Matrix> = brute.into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn isomorphism_examples() {
        let a = triple(F2, &[1, 0], &[0, 0], &[&[0, 0], &[0, 0]]);
        let b = triple(F2, &[0, 1], &[0, 0], &[&[0, 0], &[0, 0]]);
        let w = are_isomorphic(&a, &b, Budget::default()).unwrap().unwrap();
        assert_eq!(w.endo, Matrix::from_i64(F2, &[&[0, 1], &[1, 0]]));

        let f = triple(F3, &[0, 0], &[0, 0], &[&[1, 0], &[0, 1]]);
        let f2 = triple(F3, &[0, 0], &[0, 0], &[&[2, 0], &[0, 2]]);
        let w = are_isomorphic(&f, &f2, Budget::default()).unwrap().unwrap();
        assert!(w.is_invertible());

        let lam = triple(F3, &[1, 0], &[0, 0], &[&[0, 0], &[0, 0]]);
        assert!(are_isomorphic(&f, &lam, Budget::default())
            .unwrap()
            .is_none());
        assert!(matches!(
            are_isomorphic(
                &triple(Q, &[1], &[0], &[&[0]]),
                &triple(Q, &[1], &[0], &[&[0]]),
                Budget::default()
            ),
            Err(Error::InfiniteField { .. })
        ));
    }

    #[test]
    fn scaling_witness_over_gf3() {
        let f = triple(F3, &[0, 0], &[0, 0], &[&[1, 0], &[0, 1]]);
        let f2 = triple(F3, &[0, 0], &[0, 0], &[&[2, 0], &[0, 2]]);
        let w = MorphismTriple {
            shift: s(F3, &[0, 0]),
            scale: F3.from_i64(2),
            endo: Matrix::identity(F3, 2),
        };
        verify_isomorphism_witness(&f, &f2, &w).unwrap();
    }

    #[test]
    fn semidirect_group_axioms_gf2() {
        let elements: Vec<SemidirectElement> = MatrixSpace::new(F2, 2, 2, Budget::default())
            .unwrap()
            .filter(Matrix::is_invertible)
            .flat_map(|psi| {
                all_vectors(F2, 2, Budget::default())
                    .unwrap()
                    .into_iter()
                    .map(move |v| SemidirectElement::new(v, F2.one(), psi.clone()).unwrap())
            })
            .collect();
        assert_eq!(elements.len(), 24);
        let id = SemidirectElement::identity(F2, 2);
        for x in &elements {
            assert_eq!(x.mul(&id), *x);
            assert_eq!(x.mul(&x.inv()), id);
            let (a, b) = x.factor();
            assert_eq!(a.mul(&b), *x);
            for y in &elements {
                for z in &elements {
                    assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
                }
            }
        }
        assert!(matches!(
            SemidirectElement::new(s(F2, &[0, 0]), F2.one(), Matrix::zeros(F2, 2, 2)),
            Err(Error::Singular)
        ));
        assert!(matches!(
            SemidirectElement::new(s(F2, &[0, 0]), F2.zero(), Matrix::identity(F2, 2)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn translations_form_a_normal_subgroup() {
        let t = triple(F3, &[0, 0], &[0, 0], &[&[0, 1], &[2, 0]]);
        let group = family_automorphisms(&t, Budget::default()).unwrap();
        let translations: Vec<&SemidirectElement> = group
            .iter()
            .filter(|x| x.scale().is_one() && x.endo() == &Matrix::identity(F3, 2))
            .collect();
        assert_eq!(translations.len(), 9);
        for g in &group {
            for n in &translations {
                let c = g.mul(n).mul(&g.inv());
                assert!(c.scale().is_one() && c.endo() == &Matrix::identity(F3, 2));
            }
        }
    }

    #[test]
    fn pinned_weight_only_group() {
        let t = triple(F2, &[1, 0], &[0, 0], &[&[0, 0], &[0, 0]]);
        let r = automorphism_group(&t, Budget::default()).unwrap();
        assert_eq!(r.order, 2);
        assert_eq!(r.brute_force_order, 2);
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.generators.len(), 1);
    }

    #[test]
    fn lie_group_matches_brute_force() {
        let t = triple(F3, &[-1, 1], &[1, -1], &[&[0, 0], &[0, 0]]);
        let r = automorphism_group(&t, Budget::default()).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn shifted_weight_only_group() {
        let t = triple(F3, &[1, 0], &[0, 0], &[&[1, 0], &[2, 0]]);
        let r = automorphism_group(&t, Budget::default()).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn zero_triple_is_excluded() {
        let z = Dim1Triple::zero(F2, 2);
        assert!(matches!(
            enumerate_morphisms(&z, &z, Budget::default()),
            Err(Error::InvalidTriple(_))
        ));
        assert!(matches!(
            automorphism_group(&z, Budget::default()),
            Err(Error::InvalidTriple(_))
        ));
    }
}
