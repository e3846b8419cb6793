//! JSON file formats.
//!
//! Algebra files:
//!
//! ```json
//! { "field": "Q", "dim": 3, "brackets": [[2, 2, 1, "1"], [3, 3, 1, "1"]] }
//! ```
//!
//! Each entry `[i, j, k, c]` adds `c·e_k` to `[e_i, e_j]`, with 1-based
//! indices; repeated entries add up. `field` is `"Q"` or `{"GF": p}`.
//! Coefficients are strings such as `"-3/4"` (plain integers are accepted).
//! Datum, triple and morphism files follow the same conventions.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraTable;
use crate::dim1::{Dim1Triple, MorphismTriple};
use crate::error::{Error, Result};
use crate::field::{parse_rational, FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::metabelian::{Bilinear, LieMetabelianDatum, MetabelianDatum};

/// An exact coefficient as written in a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient(pub BigRational);

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CoefficientVisitor;

        impl Visitor<'_> for CoefficientVisitor {
            type Value = Coefficient;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a coefficient such as \"3\" or \"-1/2\"")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Coefficient, E> {
                parse_rational(s).map(Coefficient).map_err(|e| match e {
                    Error::Parse(m) => E::custom(m),
                    other => E::custom(other),
                })
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coefficient, E> {
                Ok(Coefficient(BigRational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coefficient, E> {
                Ok(Coefficient(BigRational::from_integer(v.into())))
            }
        }

        deserializer.deserialize_any(CoefficientVisitor)
    }
}

/// `"Q"`, `"GF(p)"`, `"GF:p"` or `{"GF": p}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Name(String),
    Prime {
        #[serde(rename = "GF")]
        gf: u64,
    },
}

impl FieldRepr {
    fn resolve(&self) -> Result<FieldSpec> {
        match self {
            FieldRepr::Name(s) => s.parse(),
            FieldRepr::Prime { gf } => FieldSpec::prime(*gf),
        }
    }
}

fn field_json(field: FieldSpec) -> String {
    serde_json::to_string(&field).expect("serializable")
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn scalar(field: FieldSpec, c: &Coefficient, what: impl FnOnce() -> String) -> Result<Scalar> {
    field
        .from_rational(&c.0)
        .map_err(|e| Error::Parse(format!("{}: {e}", what())))
}

type Entry = (usize, usize, usize, Coefficient);

/// Converts 1-based entries to 0-based scalars, checking index ranges.
fn entries(
    field: FieldSpec,
    name: &str,
    raw: &[Entry],
    bounds: (usize, usize, usize),
) -> Result<Vec<(usize, usize, usize, Scalar)>> {
    raw.iter()
        .enumerate()
        .map(|(n, (i, j, k, c))| {
            let at = || format!("{name} entry {}", n + 1);
            for (idx, bound) in [(*i, bounds.0), (*j, bounds.1), (*k, bounds.2)] {
                if idx == 0 || idx > bound {
                    return Err(Error::Parse(format!(
                        "{}: index {idx} outside 1..={bound}",
                        at()
                    )));
                }
            }
            Ok((i - 1, j - 1, k - 1, scalar(field, c, at)?))
        })
        .collect()
}

fn entry_lines<'a>(items: impl Iterator<Item = (usize, usize, usize, &'a Scalar)>) -> String {
    let mut rows: Vec<(usize, usize, usize, String)> = items
        .map(|(i, j, k, c)| (i + 1, j + 1, k + 1, c.to_string()))
        .collect();
    rows.sort();
    if rows.is_empty() {
        return "[]".into();
    }
    let mut out = String::from("[\n");
    for (n, (i, j, k, c)) in rows.iter().enumerate() {
        let sep = if n + 1 < rows.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    [{i}, {j}, {k}, {}]{sep}",
            serde_json::to_string(c).expect("string")
        );
    }
    out.push_str("  ]");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    field: FieldRepr,
    dim: usize,
    #[serde(default)]
    brackets: Vec<Entry>,
}

pub fn parse_algebra(text: &str) -> Result<AlgebraTable> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(json_error)?;
    let field = file.field.resolve()?;
    let n = file.dim;
    AlgebraTable::from_entries(
        field,
        n,
        entries(field, "brackets", &file.brackets, (n, n, n))?,
    )
}

/// Canonical form: sorted entries, zeros dropped, coefficients as strings.
pub fn algebra_to_json(t: &AlgebraTable) -> String {
    format!(
        "{{\n  \"field\": {},\n  \"dim\": {},\n  \"brackets\": {}\n}}\n",
        field_json(t.field()),
        t.dim(),
        entry_lines(t.nonzero_entries())
    )
}

/// A datum file: general or Lie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumFile {
    Leibniz(MetabelianDatum),
    Lie(LieMetabelianDatum),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum DatumKind {
    Leibniz,
    Lie,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumRepr {
    field: FieldRepr,
    kind: DatumKind,
    v_dim: usize,
    p_dim: usize,
    #[serde(default)]
    left_act: Vec<Entry>,
    #[serde(default)]
    right_act: Vec<Entry>,
    #[serde(default)]
    act: Vec<Entry>,
    #[serde(default)]
    f: Vec<Entry>,
}

/// `left_act` entries are `[x, p, k]` (`v_x ◁ p_p` gains `c·v_k`),
/// `right_act` and `act` entries `[p, x, k]`, `f` entries `[p, q, k]`.
pub fn parse_datum(text: &str) -> Result<DatumFile> {
    let d: DatumRepr = serde_json::from_str(text).map_err(json_error)?;
    let field = d.field.resolve()?;
    let (v, p) = (d.v_dim, d.p_dim);
    let tensor = |name: &str, raw: &[Entry], shape: (usize, usize, usize)| {
        Bilinear::from_entries(field, shape, &entries(field, name, raw, shape)?)
    };
    let f = tensor("f", &d.f, (p, p, v))?;
    match d.kind {
        DatumKind::Leibniz => {
            if !d.act.is_empty() {
                return Err(Error::Parse(
                    "\"act\" belongs to Lie datums; use left_act/right_act".into(),
                ));
            }
            let left = tensor("left_act", &d.left_act, (v, p, v))?;
            let right = tensor("right_act", &d.right_act, (p, v, v))?;
            Ok(DatumFile::Leibniz(MetabelianDatum::new(left, right, f)?))
        }
        DatumKind::Lie => {
            if !d.left_act.is_empty() || !d.right_act.is_empty() {
                return Err(Error::Parse("Lie datums take a single \"act\"".into()));
            }
            let act = tensor("act", &d.act, (p, v, v))?;
            Ok(DatumFile::Lie(LieMetabelianDatum::new(act, f)?))
        }
    }
}

pub fn datum_to_json(d: &DatumFile) -> String {
    let (field, kind, v, p) = match d {
        DatumFile::Leibniz(d) => (d.field(), "leibniz", d.v_dim(), d.p_dim()),
        DatumFile::Lie(d) => (d.field(), "lie", d.v_dim(), d.p_dim()),
    };
    let mut out = format!(
        "{{\n  \"field\": {},\n  \"kind\": \"{kind}\",\n  \"v_dim\": {v},\n  \"p_dim\": {p},\n",
        field_json(field)
    );
    let tensors: Vec<(&str, &Bilinear)> = match d {
        DatumFile::Leibniz(d) => vec![
            ("left_act", d.left_act()),
            ("right_act", d.right_act()),
            ("f", d.cocycle()),
        ],
        DatumFile::Lie(d) => vec![("act", d.act()), ("f", d.cocycle())],
    };
    let body: Vec<String> = tensors
        .into_iter()
        .map(|(name, t)| format!("  \"{name}\": {}", entry_lines(t.nonzero_entries())))
        .collect();
    out.push_str(&body.join(",\n"));
    out.push_str("\n}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleRepr {
    field: FieldRepr,
    p_dim: usize,
    lambda: Vec<Coefficient>,
    #[serde(rename = "Lambda")]
    big_lambda: Vec<Coefficient>,
    f: Vec<Vec<Coefficient>>,
}

fn scalars(field: FieldSpec, name: &str, raw: &[Coefficient], len: usize) -> Result<Vec<Scalar>> {
    if raw.len() != len {
        return Err(Error::Parse(format!(
            "{name} has length {}, expected {len}",
            raw.len()
        )));
    }
    raw.iter()
        .enumerate()
        .map(|(i, c)| scalar(field, c, || format!("{name}[{}]", i + 1)))
        .collect()
}

fn square(field: FieldSpec, name: &str, raw: &[Vec<Coefficient>], n: usize) -> Result<Matrix> {
    if raw.len() != n {
        return Err(Error::Parse(format!(
            "{name} has {} rows, expected {n}",
            raw.len()
        )));
    }
    let rows = raw
        .iter()
        .enumerate()
        .map(|(i, r)| scalars(field, &format!("{name} row {}", i + 1), r, n))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, n, rows)
}

/// Dense triple file with keys `lambda` (right weight), `Lambda` (left
/// weight) and `f`. The compatibility identities are checked.
pub fn parse_triple(text: &str) -> Result<Dim1Triple> {
    let t: TripleRepr = serde_json::from_str(text).map_err(json_error)?;
    let field = t.field.resolve()?;
    let n = t.p_dim;
    Dim1Triple::new(
        scalars(field, "lambda", &t.lambda, n)?,
        scalars(field, "Lambda", &t.big_lambda, n)?,
        square(field, "f", &t.f, n)?,
    )
}

#[derive(Serialize)]
struct TripleOut<'a> {
    field: FieldSpec,
    p_dim: usize,
    lambda: &'a [Scalar],
    #[serde(rename = "Lambda")]
    big_lambda: &'a [Scalar],
    f: &'a Matrix,
}

pub fn triple_to_json(t: &Dim1Triple) -> String {
    let out = TripleOut {
        field: t.field(),
        p_dim: t.p_dim(),
        lambda: t.right_weight(),
        big_lambda: t.left_weight(),
        f: t.form(),
    };
    serde_json::to_string_pretty(&out).expect("serializable") + "\n"
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismRepr {
    #[serde(default)]
    field: Option<FieldRepr>,
    v: Vec<Coefficient>,
    u: Coefficient,
    psi: Vec<Vec<Coefficient>>,
}

/// Morphism witness `{"v": [...], "u": "...", "psi": [[...]]}`, where `psi`
/// acts on column vectors. A `field` key, if present, must agree.
pub fn parse_morphism(text: &str, field: FieldSpec) -> Result<MorphismTriple> {
    let m: MorphismRepr = serde_json::from_str(text).map_err(json_error)?;
    if let Some(declared) = &m.field {
        let declared = declared.resolve()?;
        if declared != field {
            return Err(Error::FieldMismatch {
                left: field,
                right: declared,
            });
        }
    }
    let n = m.v.len();
    Ok(MorphismTriple {
        shift: scalars(field, "v", &m.v, n)?,
        scale: scalar(field, &m.u, || "u".into())?,
        endo: square(field, "psi", &m.psi, n)?,
    })
}

#[derive(Serialize)]
struct MorphismOut<'a> {
    field: FieldSpec,
    v: &'a [Scalar],
    u: &'a Scalar,
    psi: &'a Matrix,
}

pub fn morphism_to_json(m: &MorphismTriple) -> String {
    let out = MorphismOut {
        field: m.endo.field(),
        v: &m.shift,
        u: &m.scale,
        psi: &m.endo,
    };
    serde_json::to_string_pretty(&out).expect("serializable") + "\n"
}
