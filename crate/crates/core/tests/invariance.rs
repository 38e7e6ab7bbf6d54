//! Certifier verdicts must not depend on presentation choices: permuting the
//! basis or refining the weight poset to a compatible linear extension leaves
//! every verdict unchanged.

use std::sync::Arc;

use gradecert_core::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, SparseVec};
use gradecert_core::certify::{verdict_vector, CertOptions};
use gradecert_core::corpus;
use gradecert_core::qh::WeightPoset;
use gradecert_core::FieldMode;

fn opts() -> CertOptions {
    CertOptions { max_length: Some(6), deep: false }
}

/// Rebuilds an algebra with basis order permuted by `perm` (new index i holds
/// old basis vector perm[i]).
fn permute_basis(a: &GradedAlgebra, perm: &[usize]) -> Arc<GradedAlgebra> {
    let dim = a.dim();
    let inv: Vec<usize> = {
        let mut v = vec![0; dim];
        for (new, &old) in perm.iter().enumerate() {
            v[old] = new;
        }
        v
    };
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            mult[i][j] = a
                .structure_constant(perm[i], perm[j])
                .iter()
                .map(|(k, c)| (inv[*k], c.clone()))
                .collect();
            mult[i][j].sort_by_key(|(k, _)| *k);
        }
    }
    let reorder = |v: &[gradecert_core::ExactScalar]| -> Vec<gradecert_core::ExactScalar> {
        perm.iter().map(|&old| v[old].clone()).collect()
    };
    build_algebra(AlgebraSpec {
        mode: a.mode(),
        dim,
        labels: perm.iter().map(|&old| a.labels()[old].clone()).collect(),
        mult,
        unit: reorder(a.unit()),
        grades: perm.iter().map(|&old| a.grades()[old]).collect(),
        idempotents: a.idempotents().map(|es| es.iter().map(|e| reorder(e)).collect()),
        radical_basis: None,
    })
    .expect("permuted algebra is the same algebra")
}

#[test]
fn verdicts_survive_basis_permutation() {
    let cases = [
        ("path_a2", corpus::path_algebra_a2(FieldMode::Q, 1), WeightPoset::from_relations(2, &[(1, 0)]).unwrap()),
        ("kronecker", corpus::kronecker(FieldMode::Q), WeightPoset::from_relations(2, &[(1, 0)]).unwrap()),
        ("cube_zero", corpus::truncated_polynomial(FieldMode::Q, 3, 1), WeightPoset::antichain(1)),
    ];
    for (name, a, poset) in cases {
        let base = verdict_vector(&a, &poset, opts()).unwrap();
        // reverse the basis order
        let perm: Vec<usize> = (0..a.dim()).rev().collect();
        let permuted = permute_basis(&a, &perm);
        let got = verdict_vector(&permuted, &poset, opts()).unwrap();
        assert_eq!(base, got, "{name}: basis permutation changed a verdict");
    }
}

#[test]
fn verdicts_survive_poset_refinement() {
    // the commuting square has an incomparable middle pair; refine the
    // diamond to both linear extensions
    let a = corpus::commuting_square(FieldMode::Q);
    let diamond = WeightPoset::from_relations(4, &[(3, 1), (3, 2), (1, 0), (2, 0)]).unwrap();
    let chain_a = WeightPoset::from_relations(4, &[(3, 1), (1, 2), (2, 0)]).unwrap();
    let chain_b = WeightPoset::from_relations(4, &[(3, 2), (2, 1), (1, 0)]).unwrap();
    let base = verdict_vector(&a, &diamond, opts()).unwrap();
    for (name, refined) in [("3<1<2<0", &chain_a), ("3<2<1<0", &chain_b)] {
        let got = verdict_vector(&a, refined, opts()).unwrap();
        assert_eq!(base, got, "refinement {name} changed a verdict");
    }
}

#[test]
fn semisimple_verdicts_independent_of_order() {
    let a = corpus::product_of_fields(FieldMode::Q, 3);
    let orders = [
        WeightPoset::antichain(3),
        WeightPoset::from_relations(3, &[(0, 1), (1, 2)]).unwrap(),
        WeightPoset::from_relations(3, &[(2, 1), (1, 0)]).unwrap(),
    ];
    let base = verdict_vector(&a, &orders[0], opts()).unwrap();
    for p in &orders[1..] {
        assert_eq!(base, verdict_vector(&a, p, opts()).unwrap());
    }
}
