//! Sums of abelian subalgebras.
//!
//! If `g = A + B` with `A`, `B` abelian subalgebras then `g` is metabelian,
//! and more generally every two-sided ideal inside `A + B` is metabelian.
//! Over GF(p) this module searches all subspaces for such decompositions and
//! checks the conclusion; over Q it only verifies supplied witnesses.

use serde::Serialize;

use crate::algebra::{format_vector, AlgebraTable, LeibnizAlgebra};
use crate::builtins;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{enumerate_subspaces, saturating_pow, vector, Budget, Matrix, Subspace};

/// A pair of abelian subalgebras and the dimension of their sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub a: Subspace,
    pub b: Subspace,
    pub sum_dim: usize,
    pub spans_g: bool,
}

impl DecompositionWitness {
    /// Computes the sum; does not check that `a` and `b` are abelian.
    pub fn new(a: Subspace, b: Subspace) -> Result<Self> {
        let sum = a.sum(&b)?;
        let spans_g = sum.is_full();
        Ok(DecompositionWitness {
            a,
            b,
            sum_dim: sum.dim(),
            spans_g,
        })
    }
}

/// First non-vanishing bracket of basis vectors of `s`, if any.
fn abelian_violation(g: &AlgebraTable, s: &Subspace) -> Result<Option<String>> {
    let basis = s.basis_vectors();
    for x in &basis {
        for y in &basis {
            let v = g.bracket(x, y)?;
            if !vector::is_zero(&v) {
                return Ok(Some(format!(
                    "[{}, {}] = {}",
                    format_vector(x),
                    format_vector(y),
                    format_vector(&v)
                )));
            }
        }
    }
    Ok(None)
}

/// Every abelian subalgebra of `g` (finite fields only), in enumeration order.
pub fn abelian_subalgebras(g: &AlgebraTable, budget: Budget) -> Result<Vec<Subspace>> {
    if !g.field().is_finite() {
        return Err(Error::InfiniteField {
            operation: "abelian subalgebra search",
        });
    }
    let mut out = Vec::new();
    for s in enumerate_subspaces(g.dim(), g.field(), budget)? {
        if g.is_abelian_subalgebra(&s)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// All abelian subalgebras of an algebra, with pair queries on top.
#[derive(Clone, Debug)]
pub struct AbelianPairs {
    dim: usize,
    subalgebras: Vec<Subspace>,
}

impl AbelianPairs {
    pub fn subalgebras(&self) -> &[Subspace] {
        &self.subalgebras
    }

    /// All unordered pairs `(A, B)`, `A` first in enumeration order, `A = B` allowed.
    pub fn iter(&self) -> impl Iterator<Item = DecompositionWitness> + '_ {
        let subs = &self.subalgebras;
        (0..subs.len()).flat_map(move |i| {
            (i..subs.len()).map(move |j| {
                DecompositionWitness::new(subs[i].clone(), subs[j].clone())
                    .expect("same ambient space")
            })
        })
    }

    /// Pairs with `A + B = g`, skipping pairs whose dimensions are too small.
    pub fn spanning(&self) -> Vec<DecompositionWitness> {
        let subs = &self.subalgebras;
        let mut out = Vec::new();
        for i in 0..subs.len() {
            for j in i..subs.len() {
                if subs[i].dim() + subs[j].dim() < self.dim {
                    continue;
                }
                let w = DecompositionWitness::new(subs[i].clone(), subs[j].clone())
                    .expect("same ambient space");
                if w.spans_g {
                    out.push(w);
                }
            }
        }
        out
    }

    /// `max dim(A + B)` over all pairs.
    pub fn max_sum_dim(&self) -> usize {
        let mut order: Vec<usize> = (0..self.subalgebras.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.subalgebras[i].dim()));
        let mut best = 0;
        for (pos, &i) in order.iter().enumerate() {
            let di = self.subalgebras[i].dim();
            if 2 * di <= best {
                break;
            }
            for &j in &order[pos..] {
                if di + self.subalgebras[j].dim() <= best {
                    break;
                }
                let s = self.subalgebras[i]
                    .sum(&self.subalgebras[j])
                    .expect("same ambient space");
                best = best.max(s.dim());
            }
        }
        best
    }

    /// Pairs attaining [`max_sum_dim`](Self::max_sum_dim).
    pub fn maximal_pairs(&self) -> Vec<DecompositionWitness> {
        let best = self.max_sum_dim();
        self.iter().filter(|w| w.sum_dim == best).collect()
    }
}

pub fn find_abelian_pairs(g: &LeibnizAlgebra, budget: Budget) -> Result<AbelianPairs> {
    Ok(AbelianPairs {
        dim: g.dim(),
        subalgebras: abelian_subalgebras(g, budget)?,
    })
}

/// Revalidates the witness, then checks that `g` is metabelian.
///
/// A spanning abelian pair on a non-metabelian algebra is reported as
/// [`Error::TheoremViolation`] carrying the full counterexample.
pub fn verify_ito_corollary(g: &LeibnizAlgebra, w: &DecompositionWitness) -> Result<bool> {
    for (name, s) in [("A", &w.a), ("B", &w.b)] {
        if let Some(v) = abelian_violation(g, s)? {
            return Err(Error::WitnessRejected(format!(
                "{name} is not abelian: {v}"
            )));
        }
    }
    let sum = w.a.sum(&w.b)?;
    if sum.dim() != w.sum_dim {
        return Err(Error::WitnessRejected(format!(
            "recorded dim(A + B) = {} but it is {}",
            w.sum_dim,
            sum.dim()
        )));
    }
    if !sum.is_full() {
        return Err(Error::WitnessRejected(format!(
            "A + B has dimension {} < {}",
            sum.dim(),
            g.dim()
        )));
    }
    if let Some(ob) = g.metabelian_obstruction() {
        return Err(Error::TheoremViolation(format!(
            "g = A + B with A = {}, B = {} abelian, yet {ob}; table: {}",
            w.a,
            w.b,
            g.table()
        )));
    }
    Ok(true)
}

/// Checks that the two-sided ideal `h` inside `A + B` is metabelian.
pub fn verify_ito_ideal(
    g: &LeibnizAlgebra,
    a: &Subspace,
    b: &Subspace,
    h: &Subspace,
) -> Result<bool> {
    for (name, s) in [("A", a), ("B", b)] {
        if let Some(v) = abelian_violation(g, s)? {
            return Err(Error::WitnessRejected(format!(
                "{name} is not abelian: {v}"
            )));
        }
    }
    if let Some(v) = g.ideal_violation(h)? {
        return Err(Error::WitnessRejected(format!(
            "h is not a two-sided ideal: {v}"
        )));
    }
    if !h.is_subspace_of(&a.sum(b)?)? {
        return Err(Error::WitnessRejected("h is not contained in A + B".into()));
    }
    let hh = g.bracket_span(h, h)?;
    if !g.bracket_span(&hh, &hh)?.is_zero() {
        return Err(Error::TheoremViolation(format!(
            "ideal {h} inside A + B (A = {a}, B = {b}) is not metabelian; table: {}",
            g.table()
        )));
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ItoMode {
    ExhaustiveFiniteField,
    SuppliedWitness,
}

#[derive(Clone, Debug, Serialize)]
pub struct ItoReport {
    pub mode: ItoMode,
    pub abelian_subalgebras: Option<usize>,
    pub decompositions_found: usize,
    pub ito_violations: Vec<String>,
    pub max_abelian_sum_dim: Option<usize>,
    pub metabelian: bool,
}

/// Exhaustive search for spanning abelian pairs, verifying each one found.
pub fn ito_exhaustive(g: &LeibnizAlgebra, budget: Budget) -> Result<(ItoReport, AbelianPairs)> {
    let pairs = find_abelian_pairs(g, budget)?;
    let spanning = pairs.spanning();
    let mut violations = Vec::new();
    for w in &spanning {
        match verify_ito_corollary(g, w) {
            Ok(_) => {}
            Err(Error::TheoremViolation(msg)) => violations.push(msg),
            Err(e) => return Err(e),
        }
    }
    let report = ItoReport {
        mode: ItoMode::ExhaustiveFiniteField,
        abelian_subalgebras: Some(pairs.subalgebras().len()),
        decompositions_found: spanning.len(),
        ito_violations: violations,
        max_abelian_sum_dim: Some(pairs.max_sum_dim()),
        metabelian: g.is_metabelian(),
    };
    Ok((report, pairs))
}

/// Verification of one supplied decomposition; works over any field.
pub fn ito_with_witness(g: &LeibnizAlgebra, w: &DecompositionWitness) -> Result<ItoReport> {
    let mut violations = Vec::new();
    match verify_ito_corollary(g, w) {
        Ok(_) => {}
        Err(Error::TheoremViolation(msg)) => violations.push(msg),
        Err(e) => return Err(e),
    }
    Ok(ItoReport {
        mode: ItoMode::SuppliedWitness,
        abelian_subalgebras: None,
        decompositions_found: 1,
        ito_violations: violations,
        max_abelian_sum_dim: Some(w.sum_dim),
        metabelian: g.is_metabelian(),
    })
}

/// Rank of the `rows x k` block of leading coordinates of the basis of `s`.
pub fn leading_coordinate_rank(s: &Subspace, k: usize) -> usize {
    let b = s.basis();
    Matrix::from_fn(b.field(), b.rows(), k.min(b.cols()), |i, j| {
        b.get(i, j).clone()
    })
    .rank()
}

/// Exhaustive check on the 5-dimensional algebra
/// `[e1,e2]=e3, [e1,e3]=e4, [e2,e3]=e5`.
#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub subspaces_examined: usize,
    pub abelian_subalgebras: usize,
    /// Abelian subalgebras whose first-three-coordinate block has rank > 1.
    pub rank_failures: Vec<String>,
    pub max_abelian_dim: usize,
    pub dim4_subspaces: usize,
    pub dim4_abelian: usize,
    pub max_abelian_sum_dim: usize,
    pub spanning_pairs: usize,
}

impl RankCertificate {
    pub fn holds(&self) -> bool {
        self.rank_failures.is_empty()
    }
}

pub fn rank_certificate_example16(g: &LeibnizAlgebra, budget: Budget) -> Result<RankCertificate> {
    if !g.field().is_finite() {
        return Err(Error::InfiniteField {
            operation: "rank certificate",
        });
    }
    if g.table() != &builtins::ex5dim(g.field()) {
        return Err(Error::WrongShape(
            "expected the table [e1,e2]=e3, [e1,e3]=e4, [e2,e3]=e5".into(),
        ));
    }
    let mut examined = 0;
    let mut abelian = Vec::new();
    let (mut dim4, mut dim4_abelian) = (0, 0);
    for s in enumerate_subspaces(g.dim(), g.field(), budget)? {
        examined += 1;
        let is_ab = g.is_abelian_subalgebra(&s)?;
        if s.dim() == 4 {
            dim4 += 1;
            dim4_abelian += is_ab as usize;
        }
        if is_ab {
            abelian.push(s);
        }
    }
    let rank_failures = abelian
        .iter()
        .filter(|s| leading_coordinate_rank(s, 3) > 1)
        .map(|s| s.to_string())
        .collect();
    let pairs = AbelianPairs {
        dim: g.dim(),
        subalgebras: abelian,
    };
    Ok(RankCertificate {
        subspaces_examined: examined,
        abelian_subalgebras: pairs.subalgebras.len(),
        rank_failures,
        max_abelian_dim: pairs
            .subalgebras
            .iter()
            .map(Subspace::dim)
            .max()
            .unwrap_or(0),
        dim4_subspaces: dim4,
        dim4_abelian,
        max_abelian_sum_dim: pairs.max_sum_dim(),
        spanning_pairs: pairs.spanning().len(),
    })
}

/// Leibniz identity on a small table of residues, flattened as
/// `t[(i*n + j)*n + k]`. Used to filter the raw census stream before the
/// exact machinery sees a table.
pub(crate) fn is_leibniz_residues(t: &[u32], n: usize, p: u32) -> bool {
    let p = p as i64;
    let at = |i: usize, j: usize, k: usize| t[(i * n + j) * n + k] as i64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut acc = 0i64;
                    for l in 0..n {
                        acc += at(j, k, l) * at(i, l, m);
                        acc -= at(i, j, l) * at(l, k, m);
                        acc += at(i, k, l) * at(l, j, m);
                    }
                    if acc.rem_euclid(p) != 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CensusOptions {
    pub budget: Budget,
    /// Also check every (abelian A, abelian B, ideal h inside A + B).
    pub ideal_form: bool,
}

/// Counts over every structure-constant table of a given size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CensusReport {
    pub field: String,
    pub dim: usize,
    pub tables_total: u64,
    pub leibniz_tables: u64,
    pub lie_tables: u64,
    pub metabelian_tables: u64,
    pub decomposable_tables: u64,
    /// Metabelian tables with no spanning abelian pair.
    pub converse_failures: u64,
    /// Decomposable tables that are not metabelian. Must be zero.
    pub ito_violations: u64,
    /// Tables where metabelian and abelian-by-abelian disagree. Must be zero.
    pub extension_discrepancies: u64,
    pub ideal_tuples_checked: Option<u64>,
    pub ideal_violations: Option<u64>,
    pub violation_examples: Vec<String>,
}

impl CensusReport {
    pub fn is_clean(&self) -> bool {
        self.ito_violations == 0
            && self.extension_discrepancies == 0
            && self.ideal_violations.unwrap_or(0) == 0
    }
}

/// Enumerates all `p^(dim^3)` tables over GF(p), keeps the Leibniz ones and
/// records decomposability against metabelianity for each.
pub fn census_small_leibniz(
    field: FieldSpec,
    dim: usize,
    options: CensusOptions,
) -> Result<CensusReport> {
    let p = field.order().ok_or(Error::InfiniteField {
        operation: "census",
    })?;
    let n3 = dim * dim * dim;
    let total = saturating_pow(p, n3);
    options.budget.check(total)?;
    let subspaces: Vec<Subspace> = enumerate_subspaces(dim, field, options.budget)?.collect();
    let s = subspaces.len();
    let index_of = |x: &Subspace| subspaces.iter().position(|y| y == x).expect("enumerated");
    // table-independent lattice data
    let mut sum_index = vec![0usize; s * s];
    for i in 0..s {
        for j in 0..s {
            sum_index[i * s + j] = index_of(&subspaces[i].sum(&subspaces[j])?);
        }
    }
    let full = s - 1;
    let mut contained = vec![false; s * s];
    for (i, a) in subspaces.iter().enumerate() {
        for (j, b) in subspaces.iter().enumerate() {
            contained[i * s + j] = a.is_subspace_of(b)?;
        }
    }

    let mut report = CensusReport {
        field: field.to_string(),
        dim,
        tables_total: total as u64,
        leibniz_tables: 0,
        lie_tables: 0,
        metabelian_tables: 0,
        decomposable_tables: 0,
        converse_failures: 0,
        ito_violations: 0,
        extension_discrepancies: 0,
        ideal_tuples_checked: options.ideal_form.then_some(0),
        ideal_violations: options.ideal_form.then_some(0),
        violation_examples: Vec::new(),
    };

    let mut digits = vec![0u32; n3];
    let p32 = p as u32;
    loop {
        if is_leibniz_residues(&digits, dim, p32) {
            let table = AlgebraTable::from_bracket_fn(field, dim, |i, j| {
                let start = (i * dim + j) * dim;
                digits[start..start + dim]
                    .iter()
                    .map(|&d| field.residue(d as u64))
                    .collect()
            });
            let g = table.into_leibniz().map_err(|e| {
                Error::TheoremViolation(format!("residue filter accepted a non-Leibniz table: {e}"))
            })?;
            census_one(
                &g,
                &subspaces,
                &sum_index,
                &contained,
                full,
                options,
                &mut report,
            )?;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == n3 {
                return Ok(report);
            }
            digits[pos] += 1;
            if digits[pos] < p32 {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn census_one(
    g: &LeibnizAlgebra,
    subspaces: &[Subspace],
    sum_index: &[usize],
    contained: &[bool],
    full: usize,
    options: CensusOptions,
    report: &mut CensusReport,
) -> Result<()> {
    let s = subspaces.len();
    report.leibniz_tables += 1;
    report.lie_tables += g.is_lie() as u64;
    let abelian: Vec<usize> = (0..s)
        .filter(|&i| {
            g.is_abelian_subalgebra(&subspaces[i])
                .expect("same ambient space")
        })
        .collect();
    let decomposable = abelian
        .iter()
        .any(|&i| abelian.iter().any(|&j| sum_index[i * s + j] == full));
    let metabelian = g.is_metabelian();
    report.metabelian_tables += metabelian as u64;
    report.decomposable_tables += decomposable as u64;
    if metabelian && !decomposable {
        report.converse_failures += 1;
    }
    if decomposable && !metabelian {
        report.ito_violations += 1;
        if report.violation_examples.len() < 10 {
            report
                .violation_examples
                .push(format!("decomposable, not metabelian: {}", g.table()));
        }
    }
    if g.is_extension_of_abelian_by_abelian() != metabelian {
        report.extension_discrepancies += 1;
        if report.violation_examples.len() < 10 {
            report
                .violation_examples
                .push(format!("extension test disagrees: {}", g.table()));
        }
    }
    if options.ideal_form {
        let ideals: Vec<usize> = (0..s)
            .filter(|&i| {
                g.is_two_sided_ideal(&subspaces[i])
                    .expect("same ambient space")
            })
            .collect();
        let mut checked = 0u64;
        let mut violations = 0u64;
        for (ai, &a) in abelian.iter().enumerate() {
            for &b in &abelian[ai..] {
                let sum = sum_index[a * s + b];
                for &h in &ideals {
                    if !contained[h * s + sum] {
                        continue;
                    }
                    checked += 1;
                    match verify_ito_ideal(g, &subspaces[a], &subspaces[b], &subspaces[h]) {
                        Ok(_) => {}
                        Err(Error::TheoremViolation(msg)) => {
                            violations += 1;
                            if report.violation_examples.len() < 10 {
                                report.violation_examples.push(msg);
                            }
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        *report.ideal_tuples_checked.as_mut().expect("enabled") += checked;
        *report.ideal_violations.as_mut().expect("enabled") += violations;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::MatrixSpace;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::Prime(p)
    }

    #[test]
    fn heisenberg_over_gf2_decomposes() {
        let g = builtins::heisenberg(f(2)).into_leibniz().unwrap();
        let a = Subspace::coordinate(f(2), 3, &[0, 2]);
        let b = Subspace::coordinate(f(2), 3, &[1, 2]);
        let w = DecompositionWitness::new(a.clone(), b.clone()).unwrap();
        assert!(w.spans_g);
        assert!(verify_ito_corollary(&g, &w).unwrap());
        let pairs = find_abelian_pairs(&g, Budget::default()).unwrap();
        let spanning = pairs.spanning();
        assert!(spanning
            .iter()
            .any(|w| w.a == a && w.b == b || w.a == b && w.b == a));
        assert_eq!(pairs.max_sum_dim(), 3);
    }

    #[test]
    fn ex3dim_over_gf3_has_no_spanning_pair() {
        let g = builtins::ex3dim(f(3)).into_leibniz().unwrap();
        let pairs = find_abelian_pairs(&g, Budget::default()).unwrap();
        assert_eq!(pairs.subalgebras().len(), 2); // 0 and span{e1}
        assert!(pairs.spanning().is_empty());
        assert_eq!(pairs.max_sum_dim(), 1);
        assert!(g.is_metabelian());
    }

    #[test]
    fn ex3dim_over_gf2_does_decompose() {
        // 1 + 1 = 0 in GF(2), so e2 + e3 is self-commuting
        let g = builtins::ex3dim(f(2)).into_leibniz().unwrap();
        let pairs = find_abelian_pairs(&g, Budget::default()).unwrap();
        assert!(pairs.max_sum_dim() >= 2);
    }

    #[test]
    fn ex5dim_over_gf2() {
        let g = builtins::ex5dim(f(2)).into_leibniz().unwrap();
        let pairs = find_abelian_pairs(&g, Budget::default()).unwrap();
        assert_eq!(pairs.max_sum_dim(), 4);
        assert!(pairs.spanning().is_empty());
    }

    #[test]
    fn infinite_field_refused() {
        let g = builtins::heisenberg(FieldSpec::Rationals)
            .into_leibniz()
            .unwrap();
        assert!(matches!(
            find_abelian_pairs(&g, Budget::default()),
            Err(Error::InfiniteField { .. })
        ));
    }

    #[test]
    fn corollary_trivial_cases() {
        let g = AlgebraTable::zero(FieldSpec::Rationals, 3)
            .into_leibniz()
            .unwrap();
        let full = g.full_space();
        let w = DecompositionWitness::new(full.clone(), full).unwrap();
        assert!(verify_ito_corollary(&g, &w).unwrap());
    }

    #[test]
    fn corollary_rejects_bad_witnesses() {
        let q = FieldSpec::Rationals;
        let g = builtins::l5(q).into_leibniz().unwrap();
        let a = Subspace::coordinate(q, 4, &[0, 1]);
        let b = Subspace::coordinate(q, 4, &[2, 3]);
        let w = DecompositionWitness::new(a, b.clone()).unwrap();
        let err = verify_ito_corollary(&g, &w).unwrap_err();
        assert!(matches!(err, Error::WitnessRejected(ref m) if m.starts_with("A is not abelian")));
        let w = DecompositionWitness::new(b.clone(), b).unwrap();
        assert!(matches!(
            verify_ito_corollary(&g, &w),
            Err(Error::WitnessRejected(_))
        ));
    }

    #[test]
    fn ideal_form_examples() {
        let q = FieldSpec::Rationals;
        let g = builtins::l5(q).into_leibniz().unwrap();
        let zero = Subspace::zero(q, 4);
        let a = Subspace::coordinate(q, 4, &[2, 3]);
        let b = Subspace::coordinate(q, 4, &[3]);
        assert!(verify_ito_ideal(&g, &a, &b, &zero).unwrap());
        assert!(verify_ito_ideal(&g, &a, &b, &b).unwrap());
        let not_ideal = Subspace::coordinate(q, 4, &[2]);
        assert!(matches!(
            verify_ito_ideal(&g, &a, &b, &not_ideal),
            Err(Error::WitnessRejected(ref m)) if m.starts_with("h is not a two-sided ideal")
        ));
    }

    #[test]
    fn rank_certificate_pieces() {
        let f2 = f(2);
        assert_eq!(
            leading_coordinate_rank(&Subspace::coordinate(f2, 5, &[3, 4]), 3),
            0
        );
        let g = builtins::ex5dim(f2);
        let s = Subspace::coordinate(f2, 5, &[0, 3]);
        assert!(g.is_abelian_subalgebra(&s).unwrap());
        assert_eq!(leading_coordinate_rank(&s, 3), 1);
        let cert =
            rank_certificate_example16(&g.into_leibniz().unwrap(), Budget::default()).unwrap();
        assert_eq!(cert.subspaces_examined, 374);
        assert!(cert.holds());
        let wrong = builtins::heisenberg(f2).into_leibniz().unwrap();
        assert!(matches!(
            rank_certificate_example16(&wrong, Budget::default()),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn residue_filter_matches_exact_check() {
        for (p, n) in [(2u64, 1usize), (2, 2), (3, 1), (3, 2), (5, 1)] {
            let field = f(p);
            let mut agree = 0;
            for m in MatrixSpace::new(field, 1, n * n * n, Budget::default()).unwrap() {
                let digits: Vec<u32> = m
                    .row(0)
                    .iter()
                    .map(|x| x.residue().unwrap() as u32)
                    .collect();
                let table = AlgebraTable::from_bracket_fn(field, n, |i, j| {
                    m.row(0)[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
                });
                assert_eq!(
                    is_leibniz_residues(&digits, n, p as u32),
                    table.is_leibniz().holds
                );
                agree += 1;
            }
            assert_eq!(agree as u128, saturating_pow(p, n * n * n));
        }
    }

    #[test]
    fn census_dim1_gf2() {
        let r = census_small_leibniz(f(2), 1, CensusOptions::default()).unwrap();
        assert_eq!(r.tables_total, 2);
        // [e1,e1] = e1 fails at (1,1,1)
        assert_eq!(r.leibniz_tables, 1);
        assert_eq!(r.metabelian_tables, 1);
        assert!(r.is_clean());
    }

    #[test]
    fn census_budget_refusal() {
        let opts = CensusOptions {
            budget: Budget::new(1000),
            ideal_form: false,
        };
        assert!(matches!(
            census_small_leibniz(f(2), 3, opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
