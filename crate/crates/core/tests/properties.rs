use leibniz::algebra::{AlgebraTable, LeibnizAlgebra};
use leibniz::io::{
    algebra_to_json, datum_to_json, parse_algebra, parse_datum, parse_triple, triple_to_json,
    DatumFile,
};
use leibniz::linalg::vector;
use leibniz::metabelian::{random_valid_datum, random_valid_lie_datum};
use leibniz::{FieldSpec, Matrix, Scalar, Subspace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [FieldSpec; 4] = [
    FieldSpec::Rationals,
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
    FieldSpec::Prime(5),
];

fn field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(FIELDS.to_vec())
}

fn random_matrix(field: FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| field.sample(rng))
}

fn random_subspace(field: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let k = rng.gen_range(0..=n);
    Subspace::row_space(&random_matrix(field, k, n, rng))
}

/// A random subspace of `s`, spanned by combinations of its basis.
fn random_subspace_of(s: &Subspace, rng: &mut ChaCha8Rng) -> Subspace {
    let field = s.field();
    let coeffs = random_matrix(field, rng.gen_range(0..=s.dim()), s.dim(), rng);
    Subspace::row_space(&coeffs.mul(s.basis()).unwrap())
}

fn random_product(field: FieldSpec, seed: u64) -> LeibnizAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (v, p) = (rng.gen_range(0..=3), rng.gen_range(0..=2));
    let d = random_valid_datum(field, v, p, seed).unwrap();
    leibniz::metabelian::build_metabelian_product(&d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(field in field(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [a, b, c] = [(); 3].map(|_| field.sample(&mut rng));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
        match a.inv() {
            Some(inv) => prop_assert!((&a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn rref_is_idempotent(field in field(), seed in any::<u64>(), rows in 0usize..5, cols in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(field, rows, cols, &mut rng);
        let (r, rank) = m.rref();
        let (rr, rank2) = r.rref();
        prop_assert_eq!(&rr, &r);
        prop_assert_eq!(rank, rank2);
        prop_assert_eq!(rank, m.rank());
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len() + rank, cols);
        for v in &kernel {
            prop_assert!(vector::is_zero(&m.apply(v).unwrap()));
        }
        prop_assert_eq!(Subspace::row_space(&m), Subspace::row_space(&r));
    }

    #[test]
    fn inverse_is_two_sided(field in field(), seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(field, n, n, &mut rng);
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.is_invertible());
                prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(field, n));
                prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(field, n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn subspace_lattice_laws(field in field(), seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_subspace(field, n, &mut rng);
        let a = random_subspace_of(&c, &mut rng);
        let b = random_subspace(field, n, &mut rng);
        // modular law for a <= c
        let left = a.sum(&b.intersect(&c).unwrap()).unwrap();
        let right = a.sum(&b).unwrap().intersect(&c).unwrap();
        prop_assert_eq!(left, right);
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(meet.is_subspace_of(&a).unwrap() && a.is_subspace_of(&sum).unwrap());
        for v in b.basis_vectors() {
            prop_assert!(sum.contains(&v).unwrap());
            let coords = b.coordinates(&v).unwrap().unwrap();
            prop_assert_eq!(b.basis().apply_left(&coords).unwrap(), v);
        }
    }

    #[test]
    fn closures_are_idempotent_and_monotone(field in field(), seed in any::<u64>()) {
        let g = random_product(field, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let t = random_subspace(field, g.dim(), &mut rng);
        let s = random_subspace_of(&t, &mut rng);
        for closure in [AlgebraTable::subalgebra_closure, AlgebraTable::ideal_closure] {
            let cs = closure(&g, &s).unwrap();
            let ct = closure(&g, &t).unwrap();
            prop_assert!(s.is_subspace_of(&cs).unwrap());
            prop_assert_eq!(&closure(&g, &cs).unwrap(), &cs);
            prop_assert!(cs.is_subspace_of(&ct).unwrap());
            prop_assert!(g.is_subalgebra(&cs).unwrap());
        }
        prop_assert!(g.is_two_sided_ideal(&g.ideal_closure(&s).unwrap()).unwrap());
    }

    #[test]
    fn derived_quotient_is_abelian(field in field(), seed in any::<u64>()) {
        let g = random_product(field, seed);
        let d = g.derived_algebra();
        prop_assert!(g.is_two_sided_ideal(&d).unwrap());
        let q = g.quotient(&d).unwrap();
        prop_assert!(q.algebra.is_abelian());
        prop_assert_eq!(q.algebra.dim(), g.dim() - d.dim());
        prop_assert!(g.is_metabelian());
        prop_assert!(g.is_abelian_subalgebra(&d).unwrap());
        prop_assert!(g.is_extension_of_abelian_by_abelian());
    }

    #[test]
    fn files_round_trip(field in field(), seed in any::<u64>()) {
        let g = random_product(field, seed);
        let text = algebra_to_json(g.table());
        prop_assert_eq!(&parse_algebra(&text).unwrap(), g.table());
        prop_assert_eq!(algebra_to_json(&parse_algebra(&text).unwrap()), text);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (v, p) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let general = DatumFile::Leibniz(random_valid_datum(field, v, p, seed).unwrap());
        let lie = DatumFile::Lie(random_valid_lie_datum(field, v, p, seed).unwrap());
        for d in [general, lie] {
            prop_assert_eq!(parse_datum(&datum_to_json(&d)).unwrap(), d);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn triple_files_round_trip(field in prop::sample::select(vec![FieldSpec::Prime(2), FieldSpec::Prime(3)]), pick in any::<prop::sample::Index>(), p_dim in 1usize..3) {
        let all = leibniz::dim1::all_triples(field, p_dim, leibniz::Budget::default()).unwrap();
        let t = pick.get(&all);
        prop_assert_eq!(&parse_triple(&triple_to_json(t)).unwrap(), t);
    }
}

#[test]
fn rational_scalars_stay_exact() {
    let q = FieldSpec::Rationals;
    let third = q.parse_scalar("1/3").unwrap();
    let sum: Scalar = &(&third + &third) + &third;
    assert!(sum.is_one());
}
