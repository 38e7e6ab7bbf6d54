//! Small example algebras used across the test suites and the acceptance run.

use std::sync::Arc;

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, SparseVec};
use crate::matrix::ExactMatrix;
use crate::quiver::{from_quiver, Arrow, QuiverPresentation};
use crate::scalar::{ExactScalar, FieldMode};

fn one(mode: FieldMode) -> ExactScalar {
    ExactScalar::one(mode)
}

/// k x k x ... x k with the basis idempotents installed.
pub fn product_of_fields(mode: FieldMode, n: usize) -> Arc<GradedAlgebra> {
    let mut spec = product_spec(mode, n);
    spec.idempotents = Some((0..n).map(|i| indicator(mode, n, i)).collect());
    spec.radical_basis = Some(ExactMatrix::zeros(mode, 0, n));
    build_algebra(spec).expect("semisimple product")
}

/// Same algebra with no idempotents and no radical hint.
pub fn product_of_fields_no_radical_hint(mode: FieldMode, n: usize) -> Arc<GradedAlgebra> {
    build_algebra(product_spec(mode, n)).expect("semisimple product")
}

fn product_spec(mode: FieldMode, n: usize) -> AlgebraSpec {
    let mut mult = vec![vec![SparseVec::new(); n]; n];
    for (i, row) in mult.iter_mut().enumerate() {
        row[i].push((i, one(mode)));
    }
    AlgebraSpec {
        mode,
        dim: n,
        labels: (0..n).map(|i| format!("e{}", i + 1)).collect(),
        mult,
        unit: vec![one(mode); n],
        grades: vec![0; n],
        idempotents: None,
        radical_basis: None,
    }
}

fn indicator(mode: FieldMode, n: usize, i: usize) -> Vec<ExactScalar> {
    let mut v = vec![ExactScalar::zero(mode); n];
    v[i] = one(mode);
    v
}

/// k[x]/(x^n) with x in the given grade (0 for the trivial grading).
pub fn truncated_polynomial(mode: FieldMode, n: usize, x_grade: usize) -> Arc<GradedAlgebra> {
    assert!(n >= 1);
    let mut mult = vec![vec![SparseVec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mult[i][j].push((i + j, one(mode)));
            }
        }
    }
    let radical = {
        let mut rows = Vec::new();
        for i in 1..n {
            rows.push(indicator(mode, n, i));
        }
        if rows.is_empty() {
            ExactMatrix::zeros(mode, 0, n)
        } else {
            ExactMatrix::from_rows(mode, rows).unwrap()
        }
    };
    build_algebra(AlgebraSpec {
        mode,
        dim: n,
        labels: (0..n).map(|i| if i == 0 { "1".into() } else { format!("x{i}") }).collect(),
        mult,
        unit: indicator(mode, n, 0),
        grades: (0..n).map(|i| i * x_grade).collect(),
        idempotents: Some(vec![indicator(mode, n, 0)]),
        radical_basis: Some(radical),
    })
    .expect("truncated polynomial ring")
}

/// Path algebra of 1 -> 2 with one arrow of the given grade.
pub fn path_algebra_a2(mode: FieldMode, arrow_grade: usize) -> Arc<GradedAlgebra> {
    from_quiver(&QuiverPresentation {
        mode,
        vertex_count: 2,
        arrows: vec![Arrow { source: 0, target: 1, label: "a".into(), grade: arrow_grade.max(1) }],
        relations: vec![],
        truncation_degree: 2 * arrow_grade.max(1),
    })
    .expect("A2 path algebra")
}

/// Linear quiver 1 -> 2 -> ... -> n, optionally with every length-2
/// composition set to zero.
pub fn linear_quiver(mode: FieldMode, n: usize, radical_square_zero: bool) -> Arc<GradedAlgebra> {
    assert!(n >= 2);
    let arrows: Vec<Arrow> = (0..n - 1)
        .map(|i| Arrow { source: i, target: i + 1, label: format!("a{}", i + 1), grade: 1 })
        .collect();
    let relations = if radical_square_zero {
        (0..n.saturating_sub(2)).map(|i| vec![(one(mode), vec![i, i + 1])]).collect()
    } else {
        vec![]
    };
    from_quiver(&QuiverPresentation {
        mode,
        vertex_count: n,
        arrows,
        relations,
        truncation_degree: n,
    })
    .expect("linear quiver algebra")
}

/// Kronecker quiver: two parallel arrows 1 -> 2.
pub fn kronecker(mode: FieldMode) -> Arc<GradedAlgebra> {
    from_quiver(&QuiverPresentation {
        mode,
        vertex_count: 2,
        arrows: vec![
            Arrow { source: 0, target: 1, label: "a".into(), grade: 1 },
            Arrow { source: 0, target: 1, label: "b".into(), grade: 1 },
        ],
        relations: vec![],
        truncation_degree: 3,
    })
    .expect("Kronecker algebra")
}

/// 1 <-> 2 with both length-2 compositions zero (self-injective, dim 4).
pub fn zigzag(mode: FieldMode) -> Arc<GradedAlgebra> {
    from_quiver(&QuiverPresentation {
        mode,
        vertex_count: 2,
        arrows: vec![
            Arrow { source: 0, target: 1, label: "a".into(), grade: 1 },
            Arrow { source: 1, target: 0, label: "b".into(), grade: 1 },
        ],
        relations: vec![vec![(one(mode), vec![0, 1])], vec![(one(mode), vec![1, 0])]],
        truncation_degree: 4,
    })
    .expect("zigzag algebra")
}

/// Commuting square: 1 -> 2 -> 4, 1 -> 3 -> 4 with the two compositions
/// identified (dim 9).
pub fn commuting_square(mode: FieldMode) -> Arc<GradedAlgebra> {
    from_quiver(&QuiverPresentation {
        mode,
        vertex_count: 4,
        arrows: vec![
            Arrow { source: 0, target: 1, label: "a".into(), grade: 1 },
            Arrow { source: 0, target: 2, label: "b".into(), grade: 1 },
            Arrow { source: 1, target: 3, label: "c".into(), grade: 1 },
            Arrow { source: 2, target: 3, label: "d".into(), grade: 1 },
        ],
        relations: vec![vec![(one(mode), vec![0, 2]), (one(mode).neg(), vec![1, 3])]],
        truncation_degree: 4,
    })
    .expect("commuting square algebra")
}

/// Full matrix algebra M_n(k), trivially graded, with the diagonal matrix
/// units installed as idempotents.
pub fn matrix_algebra(mode: FieldMode, n: usize) -> Arc<GradedAlgebra> {
    let dim = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j == k {
                        mult[idx(i, j)][idx(k, l)].push((idx(i, l), one(mode)));
                    }
                }
            }
        }
    }
    let mut unit = vec![ExactScalar::zero(mode); dim];
    let mut idempotents = Vec::new();
    for i in 0..n {
        unit[idx(i, i)] = one(mode);
        idempotents.push(indicator(mode, dim, idx(i, i)));
    }
    build_algebra(AlgebraSpec {
        mode,
        dim,
        labels: (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect(),
        mult,
        unit,
        grades: vec![0; dim],
        idempotents: Some(idempotents),
        radical_basis: Some(ExactMatrix::zeros(mode, 0, dim)),
    })
    .expect("matrix algebra")
}

/// Basis {1, x (grade 1), z (grade 2)} with all products of x, z zero.
/// Not tight: A_2 = kz but A_1 * A_1 = 0.
pub fn grade_gap(mode: FieldMode) -> Arc<GradedAlgebra> {
    let mut mult = vec![vec![SparseVec::new(); 3]; 3];
    for i in 0..3 {
        mult[0][i].push((i, one(mode)));
        if i != 0 {
            mult[i][0].push((i, one(mode)));
        }
    }
    let radical = ExactMatrix::from_rows(
        mode,
        vec![indicator(mode, 3, 1), indicator(mode, 3, 2)],
    )
    .unwrap();
    build_algebra(AlgebraSpec {
        mode,
        dim: 3,
        labels: vec!["1".into(), "x".into(), "z".into()],
        mult,
        unit: indicator(mode, 3, 0),
        grades: vec![0, 1, 2],
        idempotents: Some(vec![indicator(mode, 3, 0)]),
        radical_basis: Some(radical),
    })
    .expect("grade gap algebra")
}

/// Rebuilds an algebra with the trivial grading (everything in grade 0).
pub fn trivially_graded(a: &GradedAlgebra) -> Arc<GradedAlgebra> {
    let dim = a.dim();
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for (i, row) in mult.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a.structure_constant(i, j).clone();
        }
    }
    build_algebra(AlgebraSpec {
        mode: a.mode(),
        dim,
        labels: a.labels().to_vec(),
        mult,
        unit: a.unit().to_vec(),
        grades: vec![0; dim],
        idempotents: a.idempotents().map(|es| es.to_vec()),
        radical_basis: a.supplied_radical().cloned(),
    })
    .expect("regrading preserves the algebra")
}

/// A corpus member: algebra plus (when quasi-heredity is meaningful to ask)
/// a weight poset.
pub struct CorpusEntry {
    pub name: String,
    pub algebra: Arc<GradedAlgebra>,
    pub poset: Option<crate::qh::WeightPoset>,
}

fn entry(name: &str, algebra: Arc<GradedAlgebra>, poset: Option<crate::qh::WeightPoset>) -> CorpusEntry {
    CorpusEntry { name: name.to_string(), algebra, poset }
}

/// The standard test corpus: both field modes, dims up to 10, a mix of
/// semisimple, local, hereditary, self-injective, and matrix algebras.
pub fn full_corpus() -> Vec<CorpusEntry> {
    use crate::qh::WeightPoset;
    let chain = |n: usize| {
        // descending chain: n-1 < n-2 < ... < 0
        WeightPoset::from_relations(n, &(1..n).map(|i| (i, i - 1)).collect::<Vec<_>>()).unwrap()
    };
    let diamond =
        WeightPoset::from_relations(4, &[(3, 1), (3, 2), (1, 0), (2, 0)]).unwrap();
    let q = FieldMode::Q;
    vec![
        entry("k", product_of_fields(q, 1), Some(WeightPoset::antichain(1))),
        entry("k2", product_of_fields(q, 2), Some(WeightPoset::antichain(2))),
        entry("k3_f5", product_of_fields(FieldMode::Fp(5), 3), Some(WeightPoset::antichain(3))),
        entry("dual_numbers", truncated_polynomial(q, 2, 1), Some(WeightPoset::antichain(1))),
        entry(
            "dual_numbers_trivial",
            truncated_polynomial(q, 2, 0),
            Some(WeightPoset::antichain(1)),
        ),
        entry("cube_zero", truncated_polynomial(q, 3, 1), Some(WeightPoset::antichain(1))),
        entry(
            "cube_zero_f7",
            truncated_polynomial(FieldMode::Fp(7), 3, 1),
            Some(WeightPoset::antichain(1)),
        ),
        entry("path_a2", path_algebra_a2(q, 1), Some(chain(2))),
        entry(
            "path_a2_trivial",
            trivially_graded(&path_algebra_a2(q, 1)),
            Some(chain(2)),
        ),
        entry("path_a2_f3", path_algebra_a2(FieldMode::Fp(3), 1), Some(chain(2))),
        entry("linear_a3", linear_quiver(q, 3, false), Some(chain(3))),
        entry("linear_a3_rad2", linear_quiver(q, 3, true), Some(chain(3))),
        entry(
            "linear_a3_rad2_f3",
            linear_quiver(FieldMode::Fp(3), 3, true),
            Some(chain(3)),
        ),
        entry("linear_a4", linear_quiver(q, 4, false), Some(chain(4))),
        entry(
            "linear_a4_trivial",
            trivially_graded(&linear_quiver(q, 4, false)),
            Some(chain(4)),
        ),
        entry("kronecker", kronecker(q), Some(chain(2))),
        entry("kronecker_f2", kronecker(FieldMode::Fp(2)), Some(chain(2))),
        entry(
            "kronecker_trivial_f5",
            trivially_graded(&kronecker(FieldMode::Fp(5))),
            Some(chain(2)),
        ),
        entry("zigzag", zigzag(q), Some(chain(2))),
        entry("zigzag_f5", zigzag(FieldMode::Fp(5)), Some(chain(2))),
        entry("square", commuting_square(q), Some(diamond.clone())),
        entry(
            "square_trivial",
            trivially_graded(&commuting_square(q)),
            Some(diamond),
        ),
        entry("m2k", matrix_algebra(q, 2), Some(WeightPoset::antichain(1))),
        entry("grade_gap", grade_gap(q), Some(WeightPoset::antichain(1))),
    ]
}

/// Z[x]/(x^2 - c) as an integral order with a designated prime.
pub fn quadratic_order(c: i64, prime: u64) -> crate::forced::IntegralOrder {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let o = BigInt::one;
    let z = BigInt::zero;
    crate::forced::IntegralOrder {
        dim: 2,
        labels: vec!["1".into(), "x".into()],
        mult: vec![
            vec![vec![o(), z()], vec![z(), o()]],
            vec![vec![z(), o()], vec![BigInt::from(c), z()]],
        ],
        unit: vec![o(), z()],
        prime,
    }
}
