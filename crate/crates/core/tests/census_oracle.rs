//! Recounts the small censuses through the generic table API and compares
//! with the residue-packed fast path.

use leibniz::algebra::AlgebraTable;
use leibniz::ito::{census_small_leibniz, CensusOptions};
use leibniz::linalg::{enumerate_subspaces, Budget};
use leibniz::{FieldSpec, Subspace};

#[derive(Debug, Default, PartialEq)]
struct Counts {
    leibniz: usize,
    lie: usize,
    metabelian: usize,
    decomposable: usize,
    converse_failures: usize,
    ito_violations: usize,
    extension_discrepancies: usize,
}

fn abelian(g: &AlgebraTable, s: &Subspace) -> bool {
    let basis = s.basis_vectors();
    basis.iter().all(|x| {
        basis
            .iter()
            .all(|y| g.bracket(x, y).unwrap().iter().all(|c| c.is_zero()))
    })
}

fn oracle(field: FieldSpec, dim: usize) -> (usize, Counts) {
    let p = field.order().unwrap();
    let slots = dim * dim * dim;
    let total = p.pow(slots as u32) as usize;
    let subspaces: Vec<Subspace> = enumerate_subspaces(dim, field, Budget::default())
        .unwrap()
        .collect();
    let mut counts = Counts::default();
    for code in 0..total {
        let mut c = code as u64;
        let mut digits = Vec::with_capacity(slots);
        for _ in 0..slots {
            digits.push(field.from_i64((c % p) as i64));
            c /= p;
        }
        let t = AlgebraTable::from_bracket_fn(field, dim, |i, j| {
            digits[(i * dim + j) * dim..][..dim].to_vec()
        });
        let Ok(g) = t.into_leibniz() else { continue };
        counts.leibniz += 1;
        counts.lie += g.is_lie() as usize;
        let metabelian = g.is_metabelian();
        counts.metabelian += metabelian as usize;
        let abel: Vec<&Subspace> = subspaces.iter().filter(|s| abelian(g.table(), s)).collect();
        let decomposable = abel
            .iter()
            .any(|a| abel.iter().any(|b| a.sum(b).unwrap().is_full()));
        counts.decomposable += decomposable as usize;
        counts.converse_failures += (metabelian && !decomposable) as usize;
        counts.ito_violations += (decomposable && !metabelian) as usize;
        let d = g.derived_algebra();
        let extension = abelian(g.table(), &d) && g.quotient(&d).unwrap().algebra.is_abelian();
        counts.extension_discrepancies += (extension != metabelian) as usize;
    }
    (total, counts)
}

fn compare(field: FieldSpec, dim: usize) {
    let report = census_small_leibniz(field, dim, CensusOptions::default()).unwrap();
    let (total, counts) = oracle(field, dim);
    assert_eq!(report.tables_total as usize, total);
    let fast = Counts {
        leibniz: report.leibniz_tables as usize,
        lie: report.lie_tables as usize,
        metabelian: report.metabelian_tables as usize,
        decomposable: report.decomposable_tables as usize,
        converse_failures: report.converse_failures as usize,
        ito_violations: report.ito_violations as usize,
        extension_discrepancies: report.extension_discrepancies as usize,
    };
    assert_eq!(fast, counts, "{field} dim {dim}");
}

#[test]
fn gf2_dim1() {
    compare(FieldSpec::Prime(2), 1);
}

#[test]
fn gf2_dim2() {
    compare(FieldSpec::Prime(2), 2);
}

#[test]
fn gf3_dim2() {
    compare(FieldSpec::Prime(3), 2);
}

#[test]
fn gf5_dim1() {
    compare(FieldSpec::Prime(5), 1);
}
