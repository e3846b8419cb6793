//! Named example algebras with integer structure constants.

use crate::algebra::AlgebraTable;
use crate::field::FieldSpec;

pub const NAMES: [&str; 5] = ["l5", "ex3dim", "ex5dim", "heisenberg", "b2"];

/// 4-dimensional Lie algebra: `[e1,e2]=e2, [e1,e3]=e3, [e1,e4]=2e4, [e2,e3]=e4`.
pub fn l5(field: FieldSpec) -> AlgebraTable {
    AlgebraTable::skew_from_brackets(
        field,
        4,
        &[(1, 2, 2, 1), (1, 3, 3, 1), (1, 4, 4, 2), (2, 3, 4, 1)],
    )
}

/// 3-dimensional metabelian non-Lie Leibniz algebra: `[e2,e2]=e1, [e3,e3]=e1`.
pub fn ex3dim(field: FieldSpec) -> AlgebraTable {
    AlgebraTable::from_brackets(field, 3, &[(2, 2, 1, 1), (3, 3, 1, 1)])
}

/// 5-dimensional metabelian Lie algebra: `[e1,e2]=e3, [e1,e3]=e4, [e2,e3]=e5`.
pub fn ex5dim(field: FieldSpec) -> AlgebraTable {
    AlgebraTable::skew_from_brackets(field, 5, &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 3, 5, 1)])
}

/// Heisenberg algebra `[e1,e2]=e3`.
pub fn heisenberg(field: FieldSpec) -> AlgebraTable {
    AlgebraTable::skew_from_brackets(field, 3, &[(1, 2, 3, 1)])
}

/// Upper triangular 2x2 matrices on the basis `h1, h2, e`:
/// `[h1,e]=e, [h2,e]=-e`.
pub fn b2(field: FieldSpec) -> AlgebraTable {
    AlgebraTable::skew_from_brackets(field, 3, &[(1, 3, 3, 1), (2, 3, 3, -1)])
}

pub fn by_name(name: &str, field: FieldSpec) -> Option<AlgebraTable> {
    Some(match name {
        "l5" => l5(field),
        "ex3dim" => ex3dim(field),
        "ex5dim" => ex5dim(field),
        "heisenberg" => heisenberg(field),
        "b2" => b2(field),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_are_leibniz_over_small_fields() {
        for name in NAMES {
            for field in [
                FieldSpec::Rationals,
                FieldSpec::Prime(2),
                FieldSpec::Prime(3),
            ] {
                let g = by_name(name, field).unwrap();
                assert!(g.is_leibniz().holds, "{name} over {field}");
            }
        }
        assert!(by_name("nope", FieldSpec::Rationals).is_none());
    }
}
