//! Every metabelian algebra is a datum product, and the dim-1 classification
//! does not depend on the basis or complement chosen.

use leibniz::algebra::{AlgebraTable, LeibnizAlgebra};
use leibniz::dim1::{
    all_triples, are_isomorphic, classify, extract_triple, verify_isomorphism_witness,
};
use leibniz::metabelian::{
    build_metabelian_product, extract_datum, random_valid_datum, validate_datum,
};
use leibniz::{Budget, FieldSpec, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const F2: FieldSpec = FieldSpec::Prime(2);
const F3: FieldSpec = FieldSpec::Prime(3);

fn random_invertible(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| field.sample(rng));
        if m.is_invertible() {
            return m;
        }
    }
}

fn all_tables(field: FieldSpec, dim: usize) -> impl Iterator<Item = AlgebraTable> {
    let p = field.order().unwrap();
    let slots = dim * dim * dim;
    (0..p.pow(slots as u32)).map(move |code| {
        let mut c = code;
        let digits: Vec<_> = (0..slots)
            .map(|_| {
                let d = field.from_i64((c % p) as i64);
                c /= p;
                d
            })
            .collect();
        AlgebraTable::from_bracket_fn(field, dim, |i, j| {
            digits[(i * dim + j) * dim..][..dim].to_vec()
        })
    })
}

fn assert_is_datum_product(g: &LeibnizAlgebra) {
    let ex = extract_datum(g).unwrap();
    assert!(
        validate_datum(&ex.datum).valid,
        "extracted datum invalid for {g:?}"
    );
    assert_eq!(ex.datum.v_dim(), g.derived_algebra().dim());
    let rebuilt = build_metabelian_product(&ex.datum).unwrap();
    assert!(rebuilt.preserves_brackets(g.table(), &ex.basis).unwrap());
    assert!(ex.basis.is_invertible());
    let iso = rebuilt
        .find_isomorphism(g.table(), Budget::default())
        .unwrap();
    assert!(iso.is_some());
}

#[test]
fn every_small_metabelian_table_is_a_datum_product() {
    let mut seen = 0;
    for field in [F2, F3] {
        for dim in 1..=2 {
            for t in all_tables(field, dim) {
                let Ok(g) = t.into_leibniz() else { continue };
                if g.is_metabelian() {
                    assert_is_datum_product(&g);
                    seen += 1;
                }
            }
        }
    }
    assert_eq!(seen, 1 + 13 + 1 + 41);
}

#[test]
fn datum_products_in_disguise_are_recognized() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..60 {
        let field = [F2, F3, FieldSpec::Rationals][seed as usize % 3];
        let (v, p) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let g = build_metabelian_product(&random_valid_datum(field, v, p, seed).unwrap()).unwrap();
        let n = g.dim();
        let m = random_invertible(field, n, &mut rng);
        let h = g.change_basis(&m).unwrap().into_leibniz().unwrap();
        assert!(h.is_metabelian());
        let ex = extract_datum(&h).unwrap();
        let rebuilt = build_metabelian_product(&ex.datum).unwrap();
        assert!(rebuilt.preserves_brackets(h.table(), &ex.basis).unwrap());
        if field.is_finite() {
            assert!(rebuilt
                .find_isomorphism(g.table(), Budget::default())
                .unwrap()
                .is_some());
        }
    }
}

#[test]
fn extraction_inverts_construction_up_to_isomorphism() {
    let budget = Budget::default();
    for field in [F2, F3] {
        for p_dim in 1..=2 {
            for t in all_triples(field, p_dim, budget)
                .unwrap()
                .into_iter()
                .filter(|t| !t.is_zero())
            {
                let g = t.build_table().unwrap();
                let back = extract_triple(&g).unwrap().triple;
                let w = are_isomorphic(&back, &t, budget)
                    .unwrap()
                    .expect("extract . build is isomorphic");
                verify_isomorphism_witness(&back, &t, &w).unwrap();
            }
        }
    }
}

#[test]
fn classification_ignores_basis_and_complement() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for field in [F2, F3] {
        for p_dim in 1..=2 {
            for t in all_triples(field, p_dim, budget)
                .unwrap()
                .into_iter()
                .filter(|t| !t.is_zero())
            {
                let g = t.build_table().unwrap();
                for _ in 0..3 {
                    let m = random_invertible(field, g.dim(), &mut rng);
                    let h = g.change_basis(&m).unwrap().into_leibniz().unwrap();
                    let moved = extract_triple(&h).unwrap().triple;
                    assert_eq!(
                        classify(&moved).unwrap().family,
                        classify(&t).unwrap().family,
                        "{t} vs {moved}"
                    );
                    assert!(
                        are_isomorphic(&moved, &t, budget).unwrap().is_some(),
                        "{t} vs {moved}"
                    );
                }
            }
        }
    }
}
