//! Jacobson radical and radical series.
//!
//! Supported regimes: over Q (or F_p with p > dim A) the radical is the
//! left kernel of the trace form of the regular representation,
//! rad = { x : trace(L_x L_y) = 0 for all y }; quiver-presented algebras carry
//! their arrow ideal as a precomputed radical basis; otherwise the caller must
//! supply one. Anything else is `RadicalUnavailable`.

use crate::algebra::GradedAlgebra;
use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::scalar::{ExactScalar, FieldMode};

/// Descending chain A = rad^0 ⊃ rad^1 ⊃ ... ⊃ rad^{length-1} ⊃ 0.
///
/// `layers[n]` holds a canonical (rref, per-grade) basis of rad^n as rows;
/// `length` is the first n with rad^n = 0.
#[derive(Debug, Clone)]
pub struct RadicalSeries {
    pub layers: Vec<ExactMatrix>,
    pub length: usize,
}

impl RadicalSeries {
    /// Basis of rad^n (empty matrix once the series has vanished).
    pub fn layer(&self, n: usize) -> ExactMatrix {
        if n < self.layers.len() {
            self.layers[n].clone()
        } else {
            ExactMatrix::zeros(self.layers[0].mode(), 0, self.layers[0].cols())
        }
    }

    pub fn radical(&self) -> ExactMatrix {
        self.layer(1)
    }

    pub fn is_semisimple(&self) -> bool {
        self.length == 1
    }
}

/// The radical of the algebra as a row basis, from the first supported regime:
/// supplied basis, then the trace form when the field mode permits it.
fn radical_basis(a: &GradedAlgebra) -> Result<ExactMatrix> {
    if let Some(r) = a.supplied_radical() {
        return Ok(r.row_basis());
    }
    let trace_ok = match a.mode() {
        FieldMode::Q => true,
        FieldMode::Fp(p) => (p as u128) > (a.dim() as u128),
    };
    if !trace_ok {
        return Err(CoreError::RadicalUnavailable);
    }
    Ok(trace_form_radical(a))
}

/// rad A = { x : trace(L_{x b_j}) = 0 for all j }, computed from the Gram
/// matrix G[i][j] = trace(L_{b_i b_j}).
pub fn trace_form_radical(a: &GradedAlgebra) -> ExactMatrix {
    let dim = a.dim();
    let mode = a.mode();
    // trace of left multiplication by each basis element
    let mut tr = vec![ExactScalar::zero(mode); dim];
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in a.structure_constant(i, j) {
                if *k == j {
                    tr[i] = tr[i].add(c);
                }
            }
        }
    }
    let mut gram = ExactMatrix::zeros(mode, dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut v = ExactScalar::zero(mode);
            for (k, c) in a.structure_constant(i, j) {
                v = v.add(&c.mul(&tr[*k]));
            }
            gram.set(i, j, v);
        }
    }
    // x * G = 0
    gram.transpose().right_nullspace_cols().row_basis()
}

/// Computes the full radical series. Results are cached on the algebra.
pub fn radical_series(a: &GradedAlgebra) -> Result<RadicalSeries> {
    a.radical_cache()
        .get_or_init(|| {
            let rad = radical_basis(a)?;
            let mut layers = vec![ExactMatrix::identity(a.mode(), a.dim())];
            let mut current = rad.clone();
            while current.rows() > 0 {
                if layers.len() > a.dim() {
                    return Err(CoreError::Invalid(
                        "radical series does not terminate; supplied radical is not nilpotent"
                            .into(),
                    ));
                }
                layers.push(current.clone());
                // rad^{n+1} = rad * rad^n
                let mut products = Vec::new();
                for i in 0..rad.rows() {
                    let u = rad.row(i);
                    for j in 0..current.rows() {
                        products.push(a.product(&u, &current.row(j)));
                    }
                }
                current = if products.is_empty() {
                    ExactMatrix::zeros(a.mode(), 0, a.dim())
                } else {
                    ExactMatrix::from_rows(a.mode(), products)?.row_basis()
                };
            }
            let length = layers.len();
            Ok(RadicalSeries { layers, length })
        })
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn semisimple_has_length_one() {
        let a = corpus::product_of_fields(FieldMode::Q, 2);
        let rs = radical_series(&a).unwrap();
        assert_eq!(rs.length, 1);
        assert!(rs.is_semisimple());
    }

    #[test]
    fn truncated_polynomial_series() {
        // k[x]/(x^3): A ⊃ (x) ⊃ (x^2) ⊃ 0
        let a = corpus::truncated_polynomial(FieldMode::Q, 3, 1);
        let rs = radical_series(&a).unwrap();
        assert_eq!(rs.length, 3);
        assert_eq!(rs.layer(1).rows(), 2);
        assert_eq!(rs.layer(2).rows(), 1);
        assert_eq!(rs.layer(3).rows(), 0);
    }

    #[test]
    fn path_algebra_radical_is_arrow_span() {
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let rs = radical_series(&a).unwrap();
        assert_eq!(rs.length, 2);
        assert_eq!(rs.radical().rows(), 1);
    }

    #[test]
    fn trace_form_agrees_with_arrow_ideal() {
        for a in [
            corpus::path_algebra_a2(FieldMode::Q, 1),
            corpus::linear_quiver(FieldMode::Q, 3, false),
            corpus::linear_quiver(FieldMode::Q, 3, true),
            corpus::kronecker(FieldMode::Q),
            corpus::zigzag(FieldMode::Q),
        ] {
            let from_arrows = a.supplied_radical().expect("quiver algebras carry one").row_basis();
            let from_trace = trace_form_radical(&a);
            assert_eq!(from_arrows, from_trace, "radical methods disagree on {a:?}");
        }
    }

    #[test]
    fn fp_small_prime_unavailable_without_basis() {
        // dim 3 over F_2 with no supplied radical: outside the trace regime
        let a = corpus::product_of_fields_no_radical_hint(FieldMode::Fp(2), 3);
        assert_eq!(radical_series(&a).unwrap_err(), CoreError::RadicalUnavailable);
    }

    #[test]
    fn positive_part_is_nilpotent() {
        for a in
            [corpus::truncated_polynomial(FieldMode::Q, 4, 1), corpus::kronecker(FieldMode::Q)]
        {
            // A_{>0} powers must vanish
            let dim = a.dim();
            let positive: Vec<usize> = (0..dim).filter(|&i| a.grades()[i] > 0).collect();
            let mut span = ExactMatrix::from_rows(
                a.mode(),
                positive
                    .iter()
                    .map(|&i| {
                        let mut v = a.zero_vector();
                        v[i] = ExactScalar::one(a.mode());
                        v
                    })
                    .collect(),
            )
            .unwrap();
            let gens = span.clone();
            let mut steps = 0;
            while span.rows() > 0 {
                steps += 1;
                assert!(steps <= dim, "A_{{>0}} not nilpotent");
                let mut prods = Vec::new();
                for i in 0..gens.rows() {
                    for j in 0..span.rows() {
                        prods.push(a.product(&gens.row(i), &span.row(j)));
                    }
                }
                span = ExactMatrix::from_rows(a.mode(), prods).unwrap().row_basis();
            }
        }
    }
}
