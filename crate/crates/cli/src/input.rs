//! Resolves positional inputs: builtin names, algebra files, datum files and
//! dim-1 triple files.

use std::path::Path;

use leibniz::algebra::AlgebraTable;
use leibniz::builtins;
use leibniz::dim1::{extract_triple, Dim1Triple};
use leibniz::io::{parse_algebra, parse_datum, parse_triple, DatumFile};
use leibniz::metabelian::{build_lie_metabelian_product, build_metabelian_product};
use leibniz::{Error, FieldSpec, LeibnizAlgebra, Result};

/// A loaded input, with its table in the requested field.
#[derive(Debug)]
pub struct Loaded {
    pub name: String,
    pub kind: &'static str,
    pub table: AlgebraTable,
    /// Set when the input was given directly as a triple.
    pub triple: Option<Dim1Triple>,
    pub warnings: Vec<String>,
}

impl Loaded {
    pub fn leibniz(&self) -> Result<LeibnizAlgebra> {
        self.table.clone().into_leibniz()
    }

    /// The input as a dim-1 triple, extracting it from the table if needed.
    pub fn triple(&self) -> Result<Dim1Triple> {
        match &self.triple {
            Some(t) => Ok(t.clone()),
            None => Ok(extract_triple(&self.leibniz()?)?.triple),
        }
    }
}

fn vanished_warnings(name: &str, target: FieldSpec, vanished: &[[usize; 3]]) -> Vec<String> {
    vanished
        .iter()
        .map(|[i, j, k]| {
            format!(
                "{name}: coefficient of e{} in [e{}, e{}] vanishes over {target}",
                k + 1,
                i + 1,
                j + 1
            )
        })
        .collect()
}

fn reinterpret(
    name: &str,
    table: AlgebraTable,
    field: Option<FieldSpec>,
) -> Result<(AlgebraTable, Vec<String>)> {
    match field {
        Some(target) if target != table.field() => {
            let (mapped, vanished) = table.map_field(target)?;
            Ok((mapped, vanished_warnings(name, target, &vanished)))
        }
        _ => Ok((table, Vec::new())),
    }
}

/// Loads `arg`: a builtin name unless a file of that name exists.
pub fn load(arg: &str, field: Option<FieldSpec>) -> Result<Loaded> {
    if !Path::new(arg).exists() {
        if let Some(table) = builtins::by_name(arg, FieldSpec::Rationals) {
            let (table, warnings) = reinterpret(arg, table, field)?;
            return Ok(Loaded {
                name: arg.to_string(),
                kind: "builtin",
                table,
                triple: None,
                warnings,
            });
        }
    }
    let text = std::fs::read_to_string(arg).map_err(|e| {
        Error::Parse(format!(
            "{arg}: {e} (builtins: {})",
            builtins::NAMES.join(", ")
        ))
    })?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
    let has = |key: &str| value.get(key).is_some();
    let with_name = |e: Error| match e {
        Error::Parse(m) => Error::Parse(format!("{arg}: {m}")),
        other => other,
    };
    if has("lambda") || has("Lambda") {
        let t = parse_triple(&text).map_err(with_name)?;
        if let Some(target) = field {
            if target != t.field() {
                return Err(Error::FieldMismatch {
                    left: t.field(),
                    right: target,
                });
            }
        }
        let table = t.build_table()?.into_table();
        return Ok(Loaded {
            name: arg.to_string(),
            kind: "triple",
            table,
            triple: Some(t),
            warnings: Vec::new(),
        });
    }
    if has("kind") || has("v_dim") {
        let g = match parse_datum(&text).map_err(with_name)? {
            DatumFile::Leibniz(d) => build_metabelian_product(&d)?,
            DatumFile::Lie(d) => build_lie_metabelian_product(&d)?,
        };
        let (table, warnings) = reinterpret(arg, g.into_table(), field)?;
        return Ok(Loaded {
            name: arg.to_string(),
            kind: "datum",
            table,
            triple: None,
            warnings,
        });
    }
    let table = parse_algebra(&text).map_err(with_name)?;
    let (table, warnings) = reinterpret(arg, table, field)?;
    Ok(Loaded {
        name: arg.to_string(),
        kind: "algebra",
        table,
        triple: None,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_reduction_warns_about_vanishing_constants() {
        let l = load("l5", Some(FieldSpec::Prime(2))).unwrap();
        assert_eq!(l.kind, "builtin");
        assert!(!l.warnings.is_empty());
        assert!(l.warnings[0].contains("vanishes over GF(2)"));
        assert!(load("l5", None).unwrap().warnings.is_empty());
    }

    #[test]
    fn unknown_name_is_an_input_error() {
        let e = load("no-such-algebra", None).unwrap_err();
        assert!(matches!(e, Error::Parse(_)));
        assert!(e.to_string().contains("builtins: l5"));
    }
}
