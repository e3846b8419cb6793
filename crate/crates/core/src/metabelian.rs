//! Metabelian datums and their products.
//!
//! A datum is two spaces `V`, `P` with a left action `x ◁ p`, a right action
//! `p ▷ x` and a bilinear map `f: P × P -> V`. When the axioms hold, the
//! bracket `{(x,p),(y,q)} = (x◁q + p▷y + f(p,q), 0)` on `V × P` is a
//! metabelian Leibniz algebra, and every metabelian algebra arises this way.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{format_vector, AlgebraTable, LeibnizAlgebra};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{vector, Matrix};

/// Attempts allowed to [`random_valid_datum`] before it gives up.
pub const MAX_SAMPLE_ATTEMPTS: u64 = 10_000;

/// A bilinear map `k^left × k^right -> k^out`, stored by basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    field: FieldSpec,
    left: usize,
    right: usize,
    out: usize,
    data: Vec<Scalar>,
}

impl Bilinear {
    pub fn zero(field: FieldSpec, left: usize, right: usize, out: usize) -> Self {
        Bilinear {
            field,
            left,
            right,
            out,
            data: vec![field.zero(); left * right * out],
        }
    }

    pub fn from_fn(
        field: FieldSpec,
        left: usize,
        right: usize,
        out: usize,
        mut value: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let mut t = Bilinear::zero(field, left, right, out);
        for i in 0..left {
            for j in 0..right {
                let v = value(i, j);
                assert_eq!(v.len(), out, "bilinear value has the wrong length");
                t.data[(i * right + j) * out..(i * right + j + 1) * out].clone_from_slice(&v);
            }
        }
        t
    }

    /// Sparse construction from 0-based `(i, j, k, c)`; repeated entries add up.
    pub fn from_entries(
        field: FieldSpec,
        (left, right, out): (usize, usize, usize),
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self> {
        let mut t = Bilinear::zero(field, left, right, out);
        for (i, j, k, c) in entries {
            if *i >= left || *j >= right || *k >= out {
                return Err(Error::WrongShape(format!(
                    "entry ({}, {}, {}) outside {left} x {right} -> {out}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: c.field(),
                });
            }
            let slot = &mut t.data[(i * right + j) * out + k];
            *slot = &*slot + c;
        }
        Ok(t)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `(left, right, out)` dimensions.
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    pub fn basis_value(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.right + j) * self.out;
        &self.data[start..start + self.out]
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.left);
        assert_eq!(y.len(), self.right);
        let mut acc = vector::zero(self.field, self.out);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                vector::axpy(&mut acc, &(xi * yj), self.basis_value(i, j));
            }
        }
        acc
    }

    /// `T(x, e_j)` for a vector `x`.
    fn apply_right_basis(&self, x: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut acc = vector::zero(self.field, self.out);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            vector::axpy(&mut acc, xi, self.basis_value(i, j));
        }
        acc
    }

    /// `T(e_i, y)` for a vector `y`.
    fn apply_left_basis(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vector::zero(self.field, self.out);
        for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            vector::axpy(&mut acc, yj, self.basis_value(i, j));
        }
        acc
    }

    /// Matrix of `x -> T(x, e_j)`.
    pub fn right_slice(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.field, self.out, self.left, |k, i| {
            self.basis_value(i, j)[k].clone()
        })
    }

    /// Matrix of `y -> T(e_i, y)`.
    pub fn left_slice(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.field, self.out, self.right, |k, j| {
            self.basis_value(i, j)[k].clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    /// Nonzero entries as 0-based `(i, j, k, c)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let (r, o) = (self.right, self.out);
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (idx / (r * o), (idx / o) % r, idx % o, c))
    }

    fn negated(&self) -> Bilinear {
        Bilinear {
            data: vector::neg(&self.data),
            ..self.clone()
        }
    }

    /// `S(y, x) = T(x, y)`.
    fn swapped(&self) -> Bilinear {
        Bilinear::from_fn(self.field, self.right, self.left, self.out, |j, i| {
            self.basis_value(i, j).to_vec()
        })
    }
}

/// The data `(V, P, ◁, ▷, f)` of a metabelian product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetabelianDatum {
    field: FieldSpec,
    v_dim: usize,
    p_dim: usize,
    left_act: Bilinear,
    right_act: Bilinear,
    cocycle: Bilinear,
}

impl MetabelianDatum {
    /// Checks only the tensor shapes; see [`validate_datum`] for the axioms.
    pub fn new(left_act: Bilinear, right_act: Bilinear, cocycle: Bilinear) -> Result<Self> {
        let field = left_act.field;
        let (v_dim, p_dim, _) = left_act.shape();
        for t in [&right_act, &cocycle] {
            if t.field != field {
                return Err(Error::FieldMismatch {
                    left: field,
                    right: t.field,
                });
            }
        }
        let expect = [
            ("left action", left_act.shape(), (v_dim, p_dim, v_dim)),
            ("right action", right_act.shape(), (p_dim, v_dim, v_dim)),
            ("f", cocycle.shape(), (p_dim, p_dim, v_dim)),
        ];
        for (name, got, want) in expect {
            if got != want {
                return Err(Error::WrongShape(format!(
                    "{name} has shape {got:?}, expected {want:?}"
                )));
            }
        }
        Ok(MetabelianDatum {
            field,
            v_dim,
            p_dim,
            left_act,
            right_act,
            cocycle,
        })
    }

    pub fn zero(field: FieldSpec, v_dim: usize, p_dim: usize) -> Self {
        MetabelianDatum {
            field,
            v_dim,
            p_dim,
            left_act: Bilinear::zero(field, v_dim, p_dim, v_dim),
            right_act: Bilinear::zero(field, p_dim, v_dim, v_dim),
            cocycle: Bilinear::zero(field, p_dim, p_dim, v_dim),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn p_dim(&self) -> usize {
        self.p_dim
    }

    /// `x ◁ p`.
    pub fn left_act(&self) -> &Bilinear {
        &self.left_act
    }

    /// `p ▷ x`.
    pub fn right_act(&self) -> &Bilinear {
        &self.right_act
    }

    pub fn cocycle(&self) -> &Bilinear {
        &self.cocycle
    }
}

/// A Lie datum: one action `p ▷ x` and an alternating `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieMetabelianDatum {
    field: FieldSpec,
    v_dim: usize,
    p_dim: usize,
    act: Bilinear,
    cocycle: Bilinear,
}

impl LieMetabelianDatum {
    pub fn new(act: Bilinear, cocycle: Bilinear) -> Result<Self> {
        let field = act.field;
        let (p_dim, v_dim, _) = act.shape();
        if cocycle.field != field {
            return Err(Error::FieldMismatch {
                left: field,
                right: cocycle.field,
            });
        }
        if act.shape() != (p_dim, v_dim, v_dim) {
            return Err(Error::WrongShape(format!(
                "action has shape {:?}, expected {:?}",
                act.shape(),
                (p_dim, v_dim, v_dim)
            )));
        }
        if cocycle.shape() != (p_dim, p_dim, v_dim) {
            return Err(Error::WrongShape(format!(
                "f has shape {:?}, expected {:?}",
                cocycle.shape(),
                (p_dim, p_dim, v_dim)
            )));
        }
        Ok(LieMetabelianDatum {
            field,
            v_dim,
            p_dim,
            act,
            cocycle,
        })
    }

    pub fn zero(field: FieldSpec, v_dim: usize, p_dim: usize) -> Self {
        LieMetabelianDatum {
            field,
            v_dim,
            p_dim,
            act: Bilinear::zero(field, p_dim, v_dim, v_dim),
            cocycle: Bilinear::zero(field, p_dim, p_dim, v_dim),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn p_dim(&self) -> usize {
        self.p_dim
    }

    pub fn act(&self) -> &Bilinear {
        &self.act
    }

    pub fn cocycle(&self) -> &Bilinear {
        &self.cocycle
    }

    /// The same product written as a general datum: `x ◁ q = -(q ▷ x)`.
    pub fn to_datum(&self) -> MetabelianDatum {
        MetabelianDatum {
            field: self.field,
            v_dim: self.v_dim,
            p_dim: self.p_dim,
            left_act: self.act.swapped().negated(),
            right_act: self.act.clone(),
            cocycle: self.cocycle.clone(),
        }
    }
}

/// First failing axiom instance. Indices are 1-based in the message.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumViolation {
    pub axiom: &'static str,
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for DatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at {}: {} vs {}",
            self.axiom, self.at, self.lhs, self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DatumReport {
    pub valid: bool,
    pub violation: Option<DatumViolation>,
}

impl DatumReport {
    fn from_violation(violation: Option<DatumViolation>) -> Self {
        DatumReport {
            valid: violation.is_none(),
            violation,
        }
    }
}

fn compare(
    axiom: &'static str,
    at: String,
    lhs: Vec<Scalar>,
    rhs: Vec<Scalar>,
) -> Option<DatumViolation> {
    (lhs != rhs).then(|| DatumViolation {
        axiom,
        at,
        lhs: format_vector(&lhs),
        rhs: format_vector(&rhs),
    })
}

pub const AXIOM_LEFT_COMMUTE: &str = "(x◁p)◁q = (x◁q)◁p";
pub const AXIOM_MIXED: &str = "p▷(x◁q) = (p▷x)◁q";
pub const AXIOM_RIGHT_SQUARE: &str = "(p▷x)◁q = -p▷(q▷x)";
pub const AXIOM_COCYCLE: &str = "p▷f(q,r) - f(p,q)◁r + f(p,r)◁q = 0";
pub const AXIOM_LIE_COMMUTE: &str = "p▷(q▷x) = q▷(p▷x)";
pub const AXIOM_ALTERNATING: &str = "f(p, p) = 0";
pub const AXIOM_JACOBI: &str = "p▷f(q,r) + q▷f(r,p) + r▷f(p,q) = 0";

fn first_violation(d: &MetabelianDatum) -> Option<DatumViolation> {
    let (v, pd, field) = (d.v_dim, d.p_dim, d.field);
    let l = &d.left_act;
    let r = &d.right_act;
    for x in 0..v {
        for p in 0..pd {
            for q in 0..pd {
                let at = || format!("x = v{}, p = p{}, q = p{}", x + 1, p + 1, q + 1);
                let lhs = l.apply_right_basis(l.basis_value(x, p), q);
                let rhs = l.apply_right_basis(l.basis_value(x, q), p);
                if let Some(e) = compare(AXIOM_LEFT_COMMUTE, at(), lhs, rhs) {
                    return Some(e);
                }
                let p_xq = r.apply_left_basis(p, l.basis_value(x, q));
                let px_q = l.apply_right_basis(r.basis_value(p, x), q);
                if let Some(e) = compare(AXIOM_MIXED, at(), p_xq, px_q.clone()) {
                    return Some(e);
                }
                let p_qx = vector::neg(&r.apply_left_basis(p, r.basis_value(q, x)));
                if let Some(e) = compare(AXIOM_RIGHT_SQUARE, at(), px_q, p_qx) {
                    return Some(e);
                }
            }
        }
    }
    let f = &d.cocycle;
    for p in 0..pd {
        for q in 0..pd {
            for s in 0..pd {
                let mut acc = r.apply_left_basis(p, f.basis_value(q, s));
                acc = vector::sub(&acc, &l.apply_right_basis(f.basis_value(p, q), s));
                acc = vector::add(&acc, &l.apply_right_basis(f.basis_value(p, s), q));
                let at = format!("p = p{}, q = p{}, r = p{}", p + 1, q + 1, s + 1);
                if let Some(e) = compare(AXIOM_COCYCLE, at, acc, vector::zero(field, v)) {
                    return Some(e);
                }
            }
        }
    }
    None
}

/// Checks every axiom instance on basis vectors and reports the first failure.
pub fn validate_datum(d: &MetabelianDatum) -> DatumReport {
    DatumReport::from_violation(first_violation(d))
}

fn first_lie_violation(d: &LieMetabelianDatum) -> Option<DatumViolation> {
    let (v, pd, field) = (d.v_dim, d.p_dim, d.field);
    let a = &d.act;
    for p in 0..pd {
        for q in 0..pd {
            for x in 0..v {
                let at = format!("p = p{}, q = p{}, x = v{}", p + 1, q + 1, x + 1);
                let lhs = a.apply_left_basis(p, a.basis_value(q, x));
                let rhs = a.apply_left_basis(q, a.basis_value(p, x));
                if let Some(e) = compare(AXIOM_LIE_COMMUTE, at, lhs, rhs) {
                    return Some(e);
                }
            }
        }
    }
    let f = &d.cocycle;
    let zero = vector::zero(field, v);
    for p in 0..pd {
        let at = format!("p = p{}", p + 1);
        if let Some(e) = compare(
            AXIOM_ALTERNATING,
            at,
            f.basis_value(p, p).to_vec(),
            zero.clone(),
        ) {
            return Some(e);
        }
        for q in p + 1..pd {
            // polarization: f(p+q, p+q) = 0 on top of the diagonal
            let sum = vector::add(f.basis_value(p, q), f.basis_value(q, p));
            let at = format!("p = p{} + p{}", p + 1, q + 1);
            if let Some(e) = compare(AXIOM_ALTERNATING, at, sum, zero.clone()) {
                return Some(e);
            }
        }
    }
    for p in 0..pd {
        for q in 0..pd {
            for s in 0..pd {
                let mut acc = a.apply_left_basis(p, f.basis_value(q, s));
                acc = vector::add(&acc, &a.apply_left_basis(q, f.basis_value(s, p)));
                acc = vector::add(&acc, &a.apply_left_basis(s, f.basis_value(p, q)));
                let at = format!("p = p{}, q = p{}, r = p{}", p + 1, q + 1, s + 1);
                if let Some(e) = compare(AXIOM_JACOBI, at, acc, zero.clone()) {
                    return Some(e);
                }
            }
        }
    }
    None
}

pub fn validate_lie_datum(d: &LieMetabelianDatum) -> DatumReport {
    DatumReport::from_violation(first_lie_violation(d))
}

/// Table on `V × P` (basis of `V` first) for a bracket given blockwise.
fn product_table(
    field: FieldSpec,
    v: usize,
    p: usize,
    vp: impl Fn(usize, usize) -> Vec<Scalar>,
    pv: impl Fn(usize, usize) -> Vec<Scalar>,
    pp: impl Fn(usize, usize) -> Vec<Scalar>,
) -> AlgebraTable {
    AlgebraTable::from_bracket_fn(field, v + p, |i, j| {
        let mut out = match (i < v, j < v) {
            (true, true) => vector::zero(field, v),
            (true, false) => vp(i, j - v),
            (false, true) => pv(i - v, j),
            (false, false) => pp(i - v, j - v),
        };
        out.resize(v + p, field.zero());
        out
    })
}

fn certify(table: AlgebraTable) -> Result<LeibnizAlgebra> {
    let g = table
        .into_leibniz()
        .map_err(|e| Error::TheoremViolation(format!("product of a valid datum: {e}")))?;
    if let Some(ob) = g.metabelian_obstruction() {
        return Err(Error::TheoremViolation(format!(
            "product of a valid datum is not metabelian: {ob}"
        )));
    }
    Ok(g)
}

/// The product `{(x,p),(y,q)} = (x◁q + p▷y + f(p,q), 0)` on the basis
/// `v1..vm, p1..pn`. Rejects invalid datums with the violation.
pub fn build_metabelian_product(d: &MetabelianDatum) -> Result<LeibnizAlgebra> {
    if let Some(v) = first_violation(d) {
        return Err(Error::InvalidDatum(v.to_string()));
    }
    certify(product_table(
        d.field,
        d.v_dim,
        d.p_dim,
        |x, q| d.left_act.basis_value(x, q).to_vec(),
        |p, y| d.right_act.basis_value(p, y).to_vec(),
        |p, q| d.cocycle.basis_value(p, q).to_vec(),
    ))
}

/// The Lie product `[(x,p),(y,q)] = (p▷y - q▷x + f(p,q), 0)`.
pub fn build_lie_metabelian_product(d: &LieMetabelianDatum) -> Result<LeibnizAlgebra> {
    if let Some(v) = first_lie_violation(d) {
        return Err(Error::InvalidDatum(v.to_string()));
    }
    let g = certify(product_table(
        d.field,
        d.v_dim,
        d.p_dim,
        |x, q| vector::neg(d.act.basis_value(q, x)),
        |p, y| d.act.basis_value(p, y).to_vec(),
        |p, q| d.cocycle.basis_value(p, q).to_vec(),
    ))?;
    if let Some(v) = g.lie_violation() {
        return Err(Error::TheoremViolation(format!(
            "product of a valid Lie datum is not Lie: {v}"
        )));
    }
    Ok(g)
}

/// A metabelian algebra rewritten as a datum with `V = g'` and `P` spanned by
/// the coordinate vectors off the pivots of `g'`.
#[derive(Clone, Debug)]
pub struct ExtractedDatum {
    pub datum: MetabelianDatum,
    /// Columns: the RREF basis of `g'`, then the complement coordinates.
    /// The product of `datum` is `g` written in this basis.
    pub basis: Matrix,
}

pub fn extract_datum(g: &LeibnizAlgebra) -> Result<ExtractedDatum> {
    if let Some(ob) = g.metabelian_obstruction() {
        return Err(Error::WrongShape(format!(
            "algebra is not metabelian: {ob}"
        )));
    }
    let field = g.field();
    let n = g.dim();
    let derived = g.derived_algebra();
    let v = derived.dim();
    let complement = derived.non_pivot_columns();
    let mut columns = derived.basis_vectors();
    columns.extend(complement.iter().map(|&c| vector::unit(field, n, c)));
    let basis = Matrix::from_fn(field, n, n, |i, j| columns[j][i].clone());
    let h = g.change_basis(&basis)?;
    let p = n - v;
    let read = |i: usize, j: usize| -> Vec<Scalar> {
        let b = h.basis_bracket(i, j);
        debug_assert!(vector::is_zero(&b[v..]));
        b[..v].to_vec()
    };
    let datum = MetabelianDatum {
        field,
        v_dim: v,
        p_dim: p,
        left_act: Bilinear::from_fn(field, v, p, v, |x, q| read(x, v + q)),
        right_act: Bilinear::from_fn(field, p, v, v, |q, x| read(v + q, x)),
        cocycle: Bilinear::from_fn(field, p, p, v, |a, b| read(v + a, v + b)),
    };
    Ok(ExtractedDatum { datum, basis })
}

/// Commuting operators on `k^v`: `c0 + c1 M + c2 M^2` with one shared `M`.
fn commuting_family<R: Rng>(field: FieldSpec, v: usize, count: usize, rng: &mut R) -> Vec<Matrix> {
    let m = random_matrix(field, v, rng);
    let m2 = m.mul(&m).expect("square");
    let id = Matrix::identity(field, v);
    (0..count)
        .map(|_| {
            let (c0, c1, c2) = (field.sample(rng), field.sample(rng), field.sample(rng));
            Matrix::from_fn(field, v, v, |i, j| {
                &(&(&c0 * id.get(i, j)) + &(&c1 * m.get(i, j))) + &(&c2 * m2.get(i, j))
            })
        })
        .collect()
}

/// Dense, sparse or strictly upper triangular, chosen at random.
fn random_matrix<R: Rng>(field: FieldSpec, v: usize, rng: &mut R) -> Matrix {
    match rng.gen_range(0..3) {
        0 => Matrix::from_fn(field, v, v, |_, _| field.sample(rng)),
        1 => Matrix::from_fn(field, v, v, |_, _| {
            if rng.gen_bool(0.3) {
                field.sample(rng)
            } else {
                field.zero()
            }
        }),
        _ => Matrix::from_fn(field, v, v, |i, j| {
            if i < j {
                field.sample(rng)
            } else {
                field.zero()
            }
        }),
    }
}

/// Operators `c_a N` with `N^2 = 0`: `N` sends the coordinates outside a
/// random set `S` into `S` and kills `S`.
fn square_zero_family<R: Rng>(
    field: FieldSpec,
    v: usize,
    count: usize,
    rng: &mut R,
) -> Vec<Matrix> {
    let in_s: Vec<bool> = (0..v).map(|_| rng.gen_bool(0.5)).collect();
    let n = Matrix::from_fn(field, v, v, |i, j| {
        if in_s[i] && !in_s[j] {
            field.sample(rng)
        } else {
            field.zero()
        }
    });
    (0..count)
        .map(|_| {
            let c = field.sample(rng);
            Matrix::from_fn(field, v, v, |i, j| &c * n.get(i, j))
        })
        .collect()
}

fn sparse_family<R: Rng>(field: FieldSpec, v: usize, count: usize, rng: &mut R) -> Vec<Matrix> {
    let density = 1.0 / (v.max(1) as f64);
    (0..count)
        .map(|_| {
            Matrix::from_fn(field, v, v, |_, _| {
                if rng.gen_bool(density) {
                    field.sample(rng)
                } else {
                    field.zero()
                }
            })
        })
        .collect()
}

/// Left action from operators `R_q` (`x ◁ q = R_q x`).
fn left_from_ops(field: FieldSpec, v: usize, ops: &[Matrix]) -> Bilinear {
    Bilinear::from_fn(field, v, ops.len(), v, |x, q| ops[q].column(x))
}

/// Right action from operators `A_p` (`p ▷ x = A_p x`).
fn right_from_ops(field: FieldSpec, v: usize, ops: &[Matrix]) -> Bilinear {
    Bilinear::from_fn(field, ops.len(), v, v, |p, x| ops[p].column(x))
}

fn zero_ops(field: FieldSpec, v: usize, count: usize) -> Vec<Matrix> {
    vec![Matrix::zeros(field, v, v); count]
}

fn negate_ops(ops: &[Matrix]) -> Vec<Matrix> {
    ops.iter()
        .map(|m| Matrix::from_fn(m.field(), m.rows(), m.cols(), |i, j| -m.get(i, j)))
        .collect()
}

/// Random element of the solution space of `rows · f = 0` (unknowns indexed
/// `(a*p + b)*v + k`), returned as a `P × P -> V` tensor.
fn random_solution<R: Rng>(
    field: FieldSpec,
    p: usize,
    v: usize,
    rows: Vec<Vec<Scalar>>,
    rng: &mut R,
) -> Result<Bilinear> {
    let unknowns = p * p * v;
    let kernel = if rows.is_empty() {
        (0..unknowns)
            .map(|i| vector::unit(field, unknowns, i))
            .collect()
    } else {
        Matrix::from_rows(field, unknowns, rows)?.kernel()
    };
    let mut sol = vector::zero(field, unknowns);
    for k in &kernel {
        vector::axpy(&mut sol, &field.sample(rng), k);
    }
    Ok(Bilinear {
        field,
        left: p,
        right: p,
        out: v,
        data: sol,
    })
}

/// Linear equations in `f` for the cocycle axiom, given the actions.
fn cocycle_equations(
    field: FieldSpec,
    v: usize,
    p: usize,
    right: &[Matrix],
    left: &[Matrix],
) -> Vec<Vec<Scalar>> {
    let idx = |a: usize, b: usize, k: usize| (a * p + b) * v + k;
    let mut rows = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for k in 0..v {
                    let mut row = vector::zero(field, p * p * v);
                    for kk in 0..v {
                        row[idx(b, c, kk)] = &row[idx(b, c, kk)] + right[a].get(k, kk);
                        row[idx(a, b, kk)] = &row[idx(a, b, kk)] - left[c].get(k, kk);
                        row[idx(a, c, kk)] = &row[idx(a, c, kk)] + left[b].get(k, kk);
                    }
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn lie_equations(field: FieldSpec, v: usize, p: usize, act: &[Matrix]) -> Vec<Vec<Scalar>> {
    let idx = |a: usize, b: usize, k: usize| (a * p + b) * v + k;
    let one = field.one();
    let mut rows = Vec::new();
    for a in 0..p {
        for b in a..p {
            for k in 0..v {
                let mut row = vector::zero(field, p * p * v);
                row[idx(a, b, k)] = one.clone();
                row[idx(b, a, k)] = one.clone();
                rows.push(row);
            }
        }
    }
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for k in 0..v {
                    let mut row = vector::zero(field, p * p * v);
                    for kk in 0..v {
                        row[idx(b, c, kk)] = &row[idx(b, c, kk)] + act[a].get(k, kk);
                        row[idx(c, a, kk)] = &row[idx(c, a, kk)] + act[b].get(k, kk);
                        row[idx(a, b, kk)] = &row[idx(a, b, kk)] + act[c].get(k, kk);
                    }
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Seeded sampler for valid datums, reporting how many proposals it took.
///
/// Each proposal draws the two actions from one of five shapes: both zero,
/// a commuting left action alone, a right action with square-zero operators
/// alone, a right action equal to minus a commuting left action, or sparse
/// random tensors. Given the actions, `f` is a random point of the (linear)
/// solution space of the cocycle axiom, and the whole datum is then checked.
/// Only the sparse shape can fail the action axioms, so on average a valid
/// datum arrives within two or three proposals at dimensions up to 3.
pub fn sample_datum(
    field: FieldSpec,
    v_dim: usize,
    p_dim: usize,
    seed: u64,
    max_attempts: u64,
) -> Result<(MetabelianDatum, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let (left_ops, right_ops) = match rng.gen_range(0..5) {
            0 => (zero_ops(field, v_dim, p_dim), zero_ops(field, v_dim, p_dim)),
            1 => (
                commuting_family(field, v_dim, p_dim, &mut rng),
                zero_ops(field, v_dim, p_dim),
            ),
            2 => (
                zero_ops(field, v_dim, p_dim),
                square_zero_family(field, v_dim, p_dim, &mut rng),
            ),
            3 => {
                let l = commuting_family(field, v_dim, p_dim, &mut rng);
                let r = negate_ops(&l);
                (l, r)
            }
            _ => (
                sparse_family(field, v_dim, p_dim, &mut rng),
                sparse_family(field, v_dim, p_dim, &mut rng),
            ),
        };
        let rows = cocycle_equations(field, v_dim, p_dim, &right_ops, &left_ops);
        let cocycle = random_solution(field, p_dim, v_dim, rows, &mut rng)?;
        let datum = MetabelianDatum {
            field,
            v_dim,
            p_dim,
            left_act: left_from_ops(field, v_dim, &left_ops),
            right_act: right_from_ops(field, v_dim, &right_ops),
            cocycle,
        };
        if first_violation(&datum).is_none() {
            return Ok((datum, attempt));
        }
    }
    Err(Error::RetriesExhausted {
        attempts: max_attempts,
    })
}

/// Deterministic valid datum for `seed`; see [`sample_datum`].
pub fn random_valid_datum(
    field: FieldSpec,
    v_dim: usize,
    p_dim: usize,
    seed: u64,
) -> Result<MetabelianDatum> {
    sample_datum(field, v_dim, p_dim, seed, MAX_SAMPLE_ATTEMPTS).map(|(d, _)| d)
}

/// Lie analogue of [`sample_datum`]: commuting, zero or sparse action, then
/// `f` drawn from the solutions of the alternating and Jacobi-sum equations.
pub fn sample_lie_datum(
    field: FieldSpec,
    v_dim: usize,
    p_dim: usize,
    seed: u64,
    max_attempts: u64,
) -> Result<(LieMetabelianDatum, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let ops = match rng.gen_range(0..3) {
            0 => zero_ops(field, v_dim, p_dim),
            1 => commuting_family(field, v_dim, p_dim, &mut rng),
            _ => sparse_family(field, v_dim, p_dim, &mut rng),
        };
        let rows = lie_equations(field, v_dim, p_dim, &ops);
        let cocycle = random_solution(field, p_dim, v_dim, rows, &mut rng)?;
        let datum = LieMetabelianDatum {
            field,
            v_dim,
            p_dim,
            act: right_from_ops(field, v_dim, &ops),
            cocycle,
        };
        if first_lie_violation(&datum).is_none() {
            return Ok((datum, attempt));
        }
    }
    Err(Error::RetriesExhausted {
        attempts: max_attempts,
    })
}

pub fn random_valid_lie_datum(
    field: FieldSpec,
    v_dim: usize,
    p_dim: usize,
    seed: u64,
) -> Result<LieMetabelianDatum> {
    sample_lie_datum(field, v_dim, p_dim, seed, MAX_SAMPLE_ATTEMPTS).map(|(d, _)| d)
}
