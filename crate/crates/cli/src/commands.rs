use serde_json::{json, Value};

use leibniz::dim1::{
    are_isomorphic, automorphism_group, classify, extract_triple, verify_isomorphism_witness,
    Dim1Triple, MorphismTriple,
};
use leibniz::io::{morphism_to_json, parse_morphism};
use leibniz::ito::{
    census_small_leibniz, ito_exhaustive, ito_with_witness, CensusOptions, DecompositionWitness,
};
use leibniz::{Budget, Error, FieldSpec, LeibnizAlgebra, Matrix, Result, Subspace};

use crate::input::Loaded;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn subspace_value(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": to_value(s) })
}

pub fn check(input: &Loaded, seed: u64) -> Result<Value> {
    let t = &input.table;
    let report = t.is_leibniz();
    let mut result = json!({
        "field": t.field().to_string(),
        "dim": t.dim(),
        "leibniz": report.holds,
        "leibniz_witness": report.witness.as_ref().map(|w| w.to_string()),
    });
    if !report.holds {
        return Ok(result);
    }
    let g = input.leibniz()?;
    let obstruction = g.metabelian_obstruction();
    let extension = g.is_extension_of_abelian_by_abelian();
    if extension != obstruction.is_none() {
        return Err(Error::TheoremViolation(format!(
            "metabelian = {} but abelian-by-abelian = {extension}",
            obstruction.is_none()
        )));
    }
    let skew = g.check_partial_skew(1000, seed);
    let law = g.check_equivalent_law();
    for (name, c) in [
        ("partial skew-symmetry", &skew),
        ("equivalent Leibniz law", &law),
    ] {
        if !c.holds {
            return Err(Error::TheoremViolation(format!(
                "{name} fails on a Leibniz table: {}",
                c.witness.as_deref().unwrap_or("?")
            )));
        }
    }
    let series: Vec<Subspace> = g.derived_series();
    let extra = json!({
        "lie": g.is_lie(),
        "lie_witness": g.lie_violation(),
        "metabelian": obstruction.is_none(),
        "metabelian_witness": obstruction.map(|o| o.to_string()),
        "abelian_by_abelian": extension,
        "derived_dims": series.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "derived_algebra": to_value(&g.derived_algebra()),
        "partial_skew": to_value(&skew),
        "equivalent_law": to_value(&law),
    });
    for (k, v) in extra.as_object().unwrap() {
        result[k] = v.clone();
    }
    Ok(result)
}

/// Reads `{"A": [[..]], "B": [[..]]}` with rows in the algebra's coordinates.
pub fn parse_decomposition(
    text: &str,
    field: FieldSpec,
    dim: usize,
) -> Result<DecompositionWitness> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let span = |key: &str| -> Result<Subspace> {
        let rows = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("missing list \"{key}\"")))?;
        let mut vectors = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|row| row.len() == dim)
                .ok_or_else(|| {
                    Error::Parse(format!("{key} row {}: expected {dim} coefficients", r + 1))
                })?;
            let coords = row
                .iter()
                .map(|c| match c {
                    Value::String(s) => field.parse_scalar(s),
                    Value::Number(n) => field.parse_scalar(&n.to_string()),
                    other => Err(Error::Parse(format!("bad coefficient {other}"))),
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("{key} row {}: {e}", r + 1)))?;
            vectors.push(coords);
        }
        Subspace::span(field, dim, &vectors)
    };
    DecompositionWitness::new(span("A")?, span("B")?)
}

pub fn ito(
    input: &Loaded,
    exhaustive: bool,
    max_dim_pairs: bool,
    witness: Option<&str>,
    budget: Budget,
) -> Result<Value> {
    let g = input.leibniz()?;
    let mut result;
    if let Some(text) = witness {
        let w = parse_decomposition(text, g.field(), g.dim())?;
        let report = ito_with_witness(&g, &w)?;
        result = to_value(&report);
        result["a"] = subspace_value(&w.a);
        result["b"] = subspace_value(&w.b);
        if !report.ito_violations.is_empty() {
            return Err(Error::TheoremViolation(report.ito_violations.join("; ")));
        }
        if !exhaustive {
            return Ok(result);
        }
    }
    if !exhaustive && !g.field().is_finite() {
        return Err(Error::InfiniteField {
            operation: "the abelian pair search without --witness",
        });
    }
    let (report, pairs) = ito_exhaustive(&g, budget)?;
    if !report.ito_violations.is_empty() {
        return Err(Error::TheoremViolation(report.ito_violations.join("; ")));
    }
    result = to_value(&report);
    let spanning = pairs.spanning();
    result["spanning_pairs"] = json!(spanning.len());
    result["example_spanning_pair"] = match spanning.first() {
        Some(w) => json!({ "a": subspace_value(&w.a), "b": subspace_value(&w.b) }),
        None => Value::Null,
    };
    if max_dim_pairs {
        let maximal = pairs.maximal_pairs();
        result["maximal_pairs"] = Value::Array(
            maximal
                .iter()
                .map(|w| json!({ "a": subspace_value(&w.a), "b": subspace_value(&w.b), "sum_dim": w.sum_dim }))
                .collect(),
        );
    }
    Ok(result)
}

pub fn census(field: FieldSpec, dim: usize, ideal_form: bool, budget: Budget) -> Result<Value> {
    let report = census_small_leibniz(field, dim, CensusOptions { budget, ideal_form })?;
    if !report.is_clean() {
        return Err(Error::TheoremViolation(format!(
            "census found violations: {}",
            report.violation_examples.join("; ")
        )));
    }
    Ok(to_value(&report))
}

fn triple_value(t: &Dim1Triple) -> Value {
    json!({
        "text": t.to_string(),
        "lambda": to_value(&t.right_weight()),
        "Lambda": to_value(&t.left_weight()),
        "f": to_value(t.form()),
    })
}

fn morphism_value(m: &MorphismTriple) -> Value {
    serde_json::from_str(&morphism_to_json(m)).expect("valid json")
}

pub fn classify_cmd(input: &Loaded) -> Result<Value> {
    let (triple, basis) = match &input.triple {
        Some(t) => (t.clone(), None),
        None => {
            let ex = extract_triple(&input.leibniz()?)?;
            (ex.triple, Some(ex.basis))
        }
    };
    let c = classify(&triple)?;
    Ok(json!({
        "family": c.family.as_str(),
        "triple": triple_value(&triple),
        "canonical": triple_value(&c.canonical),
        "theta": c.theta.as_ref().map(to_value),
        "basis": basis.as_ref().map(to_value),
    }))
}

/// The triple of an input and the basis identifying the triple's product
/// with the input table.
fn triple_and_basis(input: &Loaded) -> Result<(Dim1Triple, LeibnizAlgebra, Matrix)> {
    let g = input.leibniz()?;
    match &input.triple {
        Some(t) => Ok((t.clone(), g.clone(), Matrix::identity(g.field(), g.dim()))),
        None => {
            let ex = extract_triple(&g)?;
            Ok((ex.triple, g, ex.basis))
        }
    }
}

/// Transports a triple-level isomorphism to the input tables and checks it.
fn algebra_map(a: &Loaded, b: &Loaded, w: &MorphismTriple) -> Result<Matrix> {
    let (_, ga, ea) = triple_and_basis(a)?;
    let (_, gb, eb) = triple_and_basis(b)?;
    let map = eb
        .mul(&w.to_matrix())?
        .mul(&ea.inverse().ok_or(Error::Singular)?)?;
    if !map.is_invertible() || !ga.preserves_brackets(gb.table(), &map)? {
        return Err(Error::TheoremViolation(format!(
            "triple isomorphism {w:?} does not transport to the input tables"
        )));
    }
    Ok(map)
}

pub fn iso(a: &Loaded, b: &Loaded, witness: Option<&str>, budget: Budget) -> Result<Value> {
    let (ta, _, _) = triple_and_basis(a)?;
    let (tb, _, _) = triple_and_basis(b)?;
    let mut result = json!({
        "triple_a": triple_value(&ta),
        "triple_b": triple_value(&tb),
        "family_a": classify(&ta)?.family.as_str(),
        "family_b": classify(&tb)?.family.as_str(),
    });
    let w = match witness {
        Some(text) => {
            let w = parse_morphism(text, ta.field())?;
            verify_isomorphism_witness(&ta, &tb, &w)?;
            result["witness_verified"] = json!(true);
            Some(w)
        }
        None => are_isomorphic(&ta, &tb, budget)?,
    };
    result["isomorphic"] = json!(w.is_some());
    if let Some(w) = &w {
        result["witness"] = morphism_value(w);
        result["algebra_map"] = to_value(&algebra_map(a, b, w)?);
    }
    Ok(result)
}

pub fn aut(input: &Loaded, elements: bool, budget: Budget) -> Result<Value> {
    let t = input.triple()?;
    let r = automorphism_group(&t, budget)?;
    if !r.holds() {
        return Err(Error::TheoremViolation(format!(
            "automorphism cross-checks failed for {t}: order {} vs brute force {}",
            r.order, r.brute_force_order
        )));
    }
    let mut result = json!({
        "triple": triple_value(&t),
        "family": r.family.as_str(),
        "order": r.order,
        "brute_force_order": r.brute_force_order,
        "generators": r.generators.iter().map(to_value).collect::<Vec<_>>(),
        "checks": {
            "matches_brute_force": r.matches_brute_force,
            "closed_under_product": r.closed_under_product,
            "identity_and_inverses": r.identity_and_inverses,
            "factorization": r.factorization,
            "verified_as_morphisms": r.verified_as_morphisms,
        },
    });
    if elements {
        result["elements"] = Value::Array(r.elements.iter().map(to_value).collect());
    }
    Ok(result)
}
