//! Forced gradings.
//!
//! At the field level, gr A = ⊕ rad^n A / rad^{n+1} A with the induced
//! multiplication, over a basis adapted to the radical series (layer
//! representatives fixed deterministically by rref pivots). At the integral
//! level, a Z-order Ã with a designated prime p is graded by the lattices
//! L_i = Ã ∩ rad^i(Ã ⊗ Q) and base-changed to F_p; the two constructions can
//! differ, which is the point of the integral variant.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, SparseVec};
use crate::error::{CoreError, Result};
use crate::lattice::{IntegerLattice, IntMatrix};
use crate::matrix::ExactMatrix;
use crate::module::GradedModule;
use crate::radical::radical_series;
use crate::scalar::{is_prime_u64, ExactScalar, FieldMode};

/// Basis data shared by gr A and gr M: an adapted basis of A listing, per
/// radical layer, representatives of rad^n / rad^{n+1}.
pub struct ForcedGrading {
    algebra: Arc<GradedAlgebra>,
    /// Rows: adapted basis vectors of A, sorted by layer.
    adapted: ExactMatrix,
    /// Layer (= new grade) of each adapted basis vector.
    layer: Vec<usize>,
}

/// Chooses layer representatives: vectors of layer n complete the rref basis
/// of rad^{n+1} to one of rad^n, taken in rref order.
fn adapted_basis(series_layers: &[ExactMatrix], mode: FieldMode, dim: usize) -> (ExactMatrix, Vec<usize>) {
    let mut rows: Vec<Vec<ExactScalar>> = Vec::with_capacity(dim);
    let mut layer = Vec::with_capacity(dim);
    let zero = ExactMatrix::zeros(mode, 0, dim);
    for n in 0..series_layers.len() {
        let this = series_layers[n].row_basis();
        let next = series_layers.get(n + 1).map(|m| m.row_basis()).unwrap_or_else(|| zero.clone());
        // representatives: rows of `this` independent over `next`
        let mut acc = next.clone();
        for i in 0..this.rows() {
            let candidate = ExactMatrix::from_rows(mode, vec![this.row(i)]).expect("row");
            if !acc.row_span_contains(&candidate) {
                acc = acc.vstack(&candidate).expect("same width");
                rows.push(this.row(i));
                layer.push(n);
            }
        }
    }
    (ExactMatrix::from_rows(mode, rows).expect("rows"), layer)
}

impl ForcedGrading {
    pub fn new(a: &Arc<GradedAlgebra>) -> Result<Self> {
        let rs = radical_series(a)?;
        let (adapted, layer) = adapted_basis(&rs.layers, a.mode(), a.dim());
        Ok(ForcedGrading { algebra: Arc::clone(a), adapted, layer })
    }

    /// gr A: grade-n component rad^n/rad^{n+1}, multiplication induced by
    /// truncating products to their leading layer.
    pub fn algebra(&self) -> Result<Arc<GradedAlgebra>> {
        let a = &self.algebra;
        let mode = a.mode();
        let dim = a.dim();
        let mut mult = vec![vec![SparseVec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let prod = a.product(&self.adapted.row(i), &self.adapted.row(j));
                mult[i][j] = self.truncate_to_layer(&prod, self.layer[i] + self.layer[j])?;
            }
        }
        let unit = {
            let coords = self.coords(a.unit())?;
            // 1 lies in layer 0 up to rad; its grade-0 coordinates represent
            // the unit of gr A
            coords
                .iter()
                .enumerate()
                .map(|(t, c)| if self.layer[t] == 0 { c.clone() } else { ExactScalar::zero(mode) })
                .collect()
        };
        let idempotents = a.idempotents().map(|es| {
            es.iter()
                .map(|e| {
                    let coords = self.coords(e).expect("idempotent coordinates");
                    coords
                        .iter()
                        .enumerate()
                        .map(|(t, c)| {
                            if self.layer[t] == 0 {
                                c.clone()
                            } else {
                                ExactScalar::zero(mode)
                            }
                        })
                        .collect()
                })
                .collect()
        });
        // radical of gr A: the positive layers (gr is radical-graded)
        let rad_rows: Vec<Vec<ExactScalar>> = (0..dim)
            .filter(|&t| self.layer[t] > 0)
            .map(|t| {
                let mut v = vec![ExactScalar::zero(mode); dim];
                v[t] = ExactScalar::one(mode);
                v
            })
            .collect();
        let radical = if rad_rows.is_empty() {
            ExactMatrix::zeros(mode, 0, dim)
        } else {
            ExactMatrix::from_rows(mode, rad_rows)?
        };
        build_algebra(AlgebraSpec {
            mode,
            dim,
            labels: (0..dim).map(|t| format!("g{}_{}", self.layer[t], t)).collect(),
            mult,
            unit,
            grades: self.layer.clone(),
            idempotents,
            radical_basis: Some(radical),
        })
    }

    /// gr M over gr A: grade-n component rad^n M / rad^{n+1} M.
    pub fn module(&self, gr_a: &Arc<GradedAlgebra>, m: &GradedModule) -> Result<GradedModule> {
        let a = &self.algebra;
        let mode = a.mode();
        let rs = radical_series(a)?;
        // module layers rad^n · M
        let mut mlayers: Vec<ExactMatrix> = vec![ExactMatrix::identity(mode, m.dim)];
        loop {
            let rad = rs.radical();
            let prev = mlayers.last().unwrap();
            let mut rows = Vec::new();
            for i in 0..rad.rows() {
                let act = m.action_of_element(&rad.row(i));
                for r in 0..prev.rows() {
                    rows.push(
                        ExactMatrix::from_rows(mode, vec![prev.row(r)])?.mul(&act)?.row(0),
                    );
                }
            }
            let next = if rows.is_empty() {
                ExactMatrix::zeros(mode, 0, m.dim)
            } else {
                ExactMatrix::from_rows(mode, rows)?.row_basis()
            };
            if next.rows() == 0 {
                break;
            }
            mlayers.push(next);
        }
        let (madapted, mlayer) = adapted_basis(&mlayers, mode, m.dim);

        // action of each adapted algebra vector on each adapted module vector,
        // truncated to the target layer
        let msolve = |v: &[ExactScalar], target_layer: usize| -> Result<Vec<ExactScalar>> {
            let coords = madapted
                .solve_left(&ExactMatrix::from_rows(mode, vec![v.to_vec()])?)?
                .ok_or_else(|| CoreError::Invalid("vector outside module span".into()))?
                .row(0);
            Ok(coords
                .iter()
                .enumerate()
                .map(|(t, c)| {
                    if mlayer[t] == target_layer { c.clone() } else { ExactScalar::zero(mode) }
                })
                .collect())
        };
        let mut action = Vec::with_capacity(gr_a.dim());
        for i in 0..gr_a.dim() {
            let elem = self.adapted.row(i);
            let act = m.action_of_element(&elem);
            let mut out = ExactMatrix::zeros(mode, madapted.rows(), madapted.rows());
            for r in 0..madapted.rows() {
                let img =
                    ExactMatrix::from_rows(mode, vec![madapted.row(r)])?.mul(&act)?.row(0);
                let coords = msolve(&img, self.layer[i] + mlayer[r])?;
                for (c, v) in coords.iter().enumerate() {
                    if !v.is_zero() {
                        out.set(r, c, v.clone());
                    }
                }
            }
            action.push(out);
        }
        Ok(GradedModule::new_unchecked(
            Arc::clone(gr_a),
            action,
            mlayer.iter().map(|&l| l as i64).collect(),
        ))
    }

    /// Coordinates of an element of A in the adapted basis.
    fn coords(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        Ok(self
            .adapted
            .solve_left(&ExactMatrix::from_rows(self.algebra.mode(), vec![v.to_vec()])?)?
            .ok_or_else(|| CoreError::Invalid("adapted basis does not span".into()))?
            .row(0))
    }

    /// Adapted coordinates truncated to one layer (the image in the layer's
    /// quotient rad^n/rad^{n+1}).
    fn truncate_to_layer(&self, v: &[ExactScalar], target: usize) -> Result<SparseVec> {
        let coords = self.coords(v)?;
        Ok(coords
            .into_iter()
            .enumerate()
            .filter(|(t, c)| self.layer[*t] == target && !c.is_zero())
            .collect())
    }
}

/// gr A in one call.
pub fn gr_algebra(a: &Arc<GradedAlgebra>) -> Result<Arc<GradedAlgebra>> {
    ForcedGrading::new(a)?.algebra()
}

/// gr M over gr A; returns both so callers can keep the pairing.
pub fn gr_pair(
    a: &Arc<GradedAlgebra>,
    m: &GradedModule,
) -> Result<(Arc<GradedAlgebra>, GradedModule)> {
    let fg = ForcedGrading::new(a)?;
    let gr_a = fg.algebra()?;
    let gr_m = fg.module(&gr_a, m)?;
    Ok((gr_a, gr_m))
}

// ---------------------------------------------------------------------------
// integral orders

/// A Z-order with a designated prime: integer structure constants whose base
/// change to Q is the generic fiber and to F_p the special fiber.
#[derive(Debug, Clone)]
pub struct IntegralOrder {
    pub dim: usize,
    pub labels: Vec<String>,
    /// mult[i][j] = integer coefficient vector of b_i * b_j.
    pub mult: Vec<Vec<Vec<BigInt>>>,
    pub unit: Vec<BigInt>,
    pub prime: u64,
}

impl IntegralOrder {
    /// Base change to Q or F_p, with the trivial grading.
    pub fn fiber(&self, mode: FieldMode) -> Result<Arc<GradedAlgebra>> {
        let dim = self.dim;
        let mut mult = vec![vec![SparseVec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    let s = ExactScalar::from_bigint(mode, c);
                    if !s.is_zero() {
                        mult[i][j].push((k, s));
                    }
                }
            }
        }
        build_algebra(AlgebraSpec {
            mode,
            dim,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.iter().map(|c| ExactScalar::from_bigint(mode, c)).collect(),
            grades: vec![0; dim],
            idempotents: None,
            radical_basis: None,
        })
    }

    /// Integer product of two integer coefficient vectors.
    fn product(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        use num_traits::Zero;
        let mut out = vec![BigInt::zero(); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }
}

/// The forced grading of an order: lattices L_i = Ã ∩ rad^i(Ã_K), graded
/// components (L_i / L_{i+1}) ⊗ F_p, multiplication induced by the order.
pub fn tilde_gr(order: &IntegralOrder) -> Result<Arc<GradedAlgebra>> {
    use num_traits::Zero;
    if !is_prime_u64(order.prime) {
        return Err(CoreError::Invalid(format!("{} is not prime", order.prime)));
    }
    let mode = FieldMode::Fp(order.prime);
    let dim = order.dim;
    let generic = order.fiber(FieldMode::Q)?;
    let rs = radical_series(&generic)?;

    // lattices L_i = Z^dim ∩ rad^i, saturated by construction
    let mut lattices: Vec<IntegerLattice> = Vec::with_capacity(rs.length + 1);
    for i in 0..=rs.length {
        let sub = rs.layer(i);
        if i == 0 {
            lattices.push(IntegerLattice::standard(dim));
        } else {
            lattices.push(IntegerLattice::standard(dim).intersect_subspace(&sub)?);
        }
    }

    // multiplicativity of the filtration, exhaustively on basis products
    for i in 0..lattices.len() {
        for j in 0..lattices.len() {
            let target = lattices.get((i + j).min(lattices.len() - 1)).unwrap();
            let li = lattices[i].basis();
            let lj = lattices[j].basis();
            for r in 0..li.rows() {
                for s in 0..lj.rows() {
                    let p = order.product(&li.row(r), &lj.row(s));
                    if i + j >= lattices.len() {
                        if p.iter().any(|c| !c.is_zero()) {
                            return Err(CoreError::Invalid(
                                "filtration multiplicativity fails beyond the top layer".into(),
                            ));
                        }
                    } else if !target.contains(&p) {
                        return Err(CoreError::Invalid(format!(
                            "filtration multiplicativity fails: L_{i}·L_{j} outside L_{}",
                            i + j
                        )));
                    }
                }
            }
        }
    }

    // adapted representatives per layer: rows of L_i whose images span
    // (L_i/L_{i+1}) ⊗ F_p; saturation keeps the mod-p rank full
    struct Layer {
        reps: Vec<Vec<BigInt>>,
    }
    let mut layers: Vec<Layer> = Vec::new();
    for i in 0..rs.length {
        let li = &lattices[i];
        let li1 = &lattices[i + 1];
        // coordinates of L_{i+1} basis inside L_i
        let mut coord_rows = Vec::new();
        for r in 0..li1.basis().rows() {
            let c = li
                .coords_of(&li1.basis().row(r))
                .ok_or_else(|| CoreError::Invalid("layer chain is not nested".into()))?;
            coord_rows.push(c);
        }
        let rank_i = li.rank();
        let cbar = if coord_rows.is_empty() {
            ExactMatrix::zeros(mode, 0, rank_i)
        } else {
            let im = IntMatrix::from_rows(coord_rows)?;
            im.to_exact(mode)
        };
        let (_, _, pivots) = cbar.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let reps: Vec<Vec<BigInt>> = (0..rank_i)
            .filter(|t| !pivot_set.contains(t))
            .map(|t| li.basis().row(t))
            .collect();
        layers.push(Layer { reps });
    }

    // assembled basis: integer representatives with their layer
    let mut reps: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for (i, l) in layers.iter().enumerate() {
        for r in &l.reps {
            reps.push((i, r.clone()));
        }
    }
    let new_dim = reps.len();
    if new_dim != dim {
        return Err(CoreError::Invalid(format!(
            "graded dimension {new_dim} differs from the order rank {dim}"
        )));
    }

    // mod-p coordinates of an integer vector v in L_i relative to the layer-i
    // representatives, reducing modulo L_{i+1} and p
    let layer_coords = |i: usize, v: &[BigInt]| -> Result<SparseVec> {
        // integer coordinates of v in the L_i basis
        let li = &lattices[i];
        let coords = li
            .coords_of(v)
            .ok_or_else(|| CoreError::Invalid("product escapes its filtration layer".into()))?;
        // reduce mod p, then eliminate the image of L_{i+1}
        let rank_i = li.rank();
        let mut cbar_rows = Vec::new();
        let li1 = &lattices[i + 1];
        for r in 0..li1.basis().rows() {
            let c = li.coords_of(&li1.basis().row(r)).expect("nested");
            cbar_rows.push(c);
        }
        let cbar = if cbar_rows.is_empty() {
            ExactMatrix::zeros(mode, 0, rank_i)
        } else {
            IntMatrix::from_rows(cbar_rows)?.to_exact(mode)
        };
        let (red, _, pivots) = cbar.rref();
        let mut vbar: Vec<ExactScalar> =
            coords.iter().map(|c| scalar_from_bigint(mode, c)).collect();
        // kill pivot coordinates with rref rows
        for (prow, &pcol) in pivots.iter().enumerate() {
            let c = vbar[pcol].clone();
            if !c.is_zero() {
                for t in 0..rank_i {
                    let x = red.get(prow, t).mul(&c);
                    vbar[t] = vbar[t].sub(&x);
                }
            }
        }
        // remaining support sits on free (representative) coordinates
        let free: Vec<usize> = (0..rank_i).filter(|t| !pivots.contains(t)).collect();
        let mut local = Vec::new();
        for (pos, &t) in free.iter().enumerate() {
            if !vbar[t].is_zero() {
                local.push((pos, vbar[t].clone()));
            }
        }
        // offset into the global basis
        let offset: usize = layers[..i].iter().map(|l| l.reps.len()).sum();
        Ok(local.into_iter().map(|(pos, c)| (offset + pos, c)).collect())
    };

    let mut mult = vec![vec![SparseVec::new(); new_dim]; new_dim];
    for (bi, (li, vi)) in reps.iter().enumerate() {
        for (bj, (lj, vj)) in reps.iter().enumerate() {
            let target = li + lj;
            if target >= rs.length {
                // the product lies in L_target with rad^target = 0, so its
                // class vanishes
                continue;
            }
            let p = order.product(vi, vj);
            mult[bi][bj] = layer_coords(target, &p)?;
        }
    }
    let unit = {
        let sv = layer_coords(0, &order.unit)?;
        let mut v = vec![ExactScalar::zero(mode); new_dim];
        for (k, c) in sv {
            v[k] = c;
        }
        v
    };
    build_algebra(AlgebraSpec {
        mode,
        dim: new_dim,
        labels: reps.iter().enumerate().map(|(t, (l, _))| format!("t{l}_{t}")).collect(),
        mult,
        unit,
        grades: reps.iter().map(|(l, _)| *l).collect(),
        idempotents: None,
        radical_basis: None,
    })
}

fn scalar_from_bigint(mode: FieldMode, v: &BigInt) -> ExactScalar {
    ExactScalar::from_bigint(mode, v)
}

// ---------------------------------------------------------------------------
// graded-isomorphism testing for small algebras

/// Outcome of the capped graded-isomorphism search between two graded
/// algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradedIsoOutcome {
    /// Isomorphic, with an explicit grade-preserving change of basis.
    Isomorphic,
    /// Grade dimension vectors differ: certainly not isomorphic as graded
    /// algebras.
    DimensionVectorsDiffer,
    /// Search exhausted without finding an isomorphism (dimension cap or
    /// seeded search failure); only the necessary conditions were checked.
    Undecided,
}

/// Compares grade dimension vectors and, below the dimension cap, searches
/// for a grade-preserving structure-constant match. Identical canonical
/// tables are recognized immediately.
pub fn graded_iso(a: &GradedAlgebra, b: &GradedAlgebra, seed: u64, cap: usize) -> GradedIsoOutcome {
    let dims = |x: &GradedAlgebra| -> Vec<(usize, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for &g in x.grades() {
            *m.entry(g).or_insert(0usize) += 1;
        }
        m.into_iter().collect()
    };
    if a.mode() != b.mode() || dims(a) != dims(b) {
        return GradedIsoOutcome::DimensionVectorsDiffer;
    }
    // identical tables in the canonical bases
    if a.dim() == b.dim() && a.grades() == b.grades() {
        let same = (0..a.dim()).all(|i| {
            (0..a.dim()).all(|j| a.structure_constant(i, j) == b.structure_constant(i, j))
        }) && a.unit() == b.unit();
        if same {
            return GradedIsoOutcome::Isomorphic;
        }
    }
    if a.dim() > cap {
        return GradedIsoOutcome::Undecided;
    }
    // seeded random grade-preserving maps: try images of a onto b
    let mode = a.mode();
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let by_grade_a: Vec<Vec<usize>> =
        (0..=a.top_grade()).map(|g| a.component_indices(g)).collect();
    let by_grade_b: Vec<Vec<usize>> =
        (0..=b.top_grade()).map(|g| b.component_indices(g)).collect();
    for _ in 0..200 {
        // random grade-preserving linear map
        let mut phi = ExactMatrix::zeros(mode, a.dim(), b.dim());
        for (ga, idx_a) in by_grade_a.iter().enumerate() {
            let idx_b = &by_grade_b[ga];
            for &r in idx_a {
                for &c in idx_b {
                    let v = match mode {
                        FieldMode::Q => ExactScalar::from_i64(mode, (next() % 5) as i64 - 2),
                        FieldMode::Fp(p) => ExactScalar::from_i64(mode, (next() % p) as i64),
                    };
                    if !v.is_zero() {
                        phi.set(r, c, v);
                    }
                }
            }
        }
        if phi.rank() != a.dim() {
            continue;
        }
        // algebra map check: phi(x·y) = phi(x)·phi(y) on basis pairs, unit to unit
        let apply = |v: &[ExactScalar]| -> Vec<ExactScalar> {
            ExactMatrix::from_rows(mode, vec![v.to_vec()])
                .expect("row")
                .mul(&phi)
                .expect("shape")
                .row(0)
        };
        if apply(a.unit()) != b.unit() {
            continue;
        }
        let hom = (0..a.dim()).all(|i| {
            (0..a.dim()).all(|j| {
                let lhs = apply(&crate::algebra::dense_from_sparse(
                    mode,
                    a.dim(),
                    a.structure_constant(i, j),
                ));
                let rhs = b.product(&apply(&a.basis_vector(i)), &apply(&a.basis_vector(j)));
                lhs == rhs
            })
        });
        if hom {
            return GradedIsoOutcome::Isomorphic;
        }
    }
    GradedIsoOutcome::Undecided
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use num_traits::{One, Zero};

    fn poly_order(coeff_of_x2: i64, prime: u64) -> IntegralOrder {
        // Z[x]/(x^2 - c): basis {1, x}
        let z = BigInt::zero;
        let o = BigInt::one;
        IntegralOrder {
            dim: 2,
            labels: vec!["1".into(), "x".into()],
            mult: vec![
                vec![vec![o(), z()], vec![z(), o()]],
                vec![vec![z(), o()], vec![BigInt::from(coeff_of_x2), z()]],
            ],
            unit: vec![o(), z()],
            prime,
        }
    }

    #[test]
    fn gr_of_semisimple_is_grade_zero() {
        let a = corpus::product_of_fields(FieldMode::Q, 3);
        let g = gr_algebra(&a).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.grades().iter().all(|&x| x == 0));
    }

    #[test]
    fn gr_of_truncated_polynomial() {
        // k[x]/(x^3) with the trivial grading regrades to x in grade 1
        let a = corpus::truncated_polynomial(FieldMode::Q, 3, 0);
        let g = gr_algebra(&a).unwrap();
        assert_eq!(g.dim(), 3);
        let mut grades = g.grades().to_vec();
        grades.sort_unstable();
        assert_eq!(grades, vec![0, 1, 2]);
    }

    #[test]
    fn gr_idempotent_on_radical_graded_algebras() {
        for a in [
            corpus::path_algebra_a2(FieldMode::Q, 1),
            corpus::truncated_polynomial(FieldMode::Q, 3, 1),
        ] {
            let g1 = gr_algebra(&a).unwrap();
            let g2 = gr_algebra(&g1).unwrap();
            assert_eq!(g1.grades(), g2.grades());
            for i in 0..g1.dim() {
                for j in 0..g1.dim() {
                    assert_eq!(g1.structure_constant(i, j), g2.structure_constant(i, j));
                }
            }
        }
    }

    #[test]
    fn gr_grade_zero_part_is_semisimple() {
        for a in [
            corpus::truncated_polynomial(FieldMode::Q, 4, 0),
            corpus::zigzag(FieldMode::Q),
            corpus::commuting_square(FieldMode::Q),
        ] {
            let g = gr_algebra(&a).unwrap();
            let (g0, _) = g.grade_zero_subalgebra().unwrap();
            assert!(radical_series(&g0).unwrap().is_semisimple());
        }
    }

    #[test]
    fn gr_module_of_regular_module() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 3, 0);
        let m = GradedModule::regular(&a);
        let (gr_a, gr_m) = gr_pair(&a, &m).unwrap();
        assert_eq!(gr_m.dim, 3);
        let mut grades = gr_m.grades.clone();
        grades.sort_unstable();
        assert_eq!(grades, vec![0, 1, 2]);
        gr_m.validate().unwrap();
        let _ = gr_a;
    }

    #[test]
    fn tilde_gr_nilpotent_order() {
        // Z[x]/(x^2): rad of the generic fiber is (x), so x lands in grade 1
        let o = poly_order(0, 5);
        let g = tilde_gr(&o).unwrap();
        assert_eq!(g.mode(), FieldMode::Fp(5));
        assert_eq!(g.dim(), 2);
        let mut grades = g.grades().to_vec();
        grades.sort_unstable();
        assert_eq!(grades, vec![0, 1]);
    }

    #[test]
    fn tilde_gr_ramified_order_concentrates_in_grade_zero() {
        // Z[x]/(x^2 - p): the generic fiber is a field, rad = 0, everything
        // sits in grade 0 even though the special fiber is F_p[x]/(x^2)
        for p in [3u64, 5, 7] {
            let o = poly_order(p as i64, p);
            let g = tilde_gr(&o).unwrap();
            assert_eq!(g.dim(), 2);
            assert!(g.grades().iter().all(|&x| x == 0));
            // special fiber is not semisimple: x is a nonzero nilpotent
            let x = g.basis_vector(1);
            assert!(!g.product(&x, &x).iter().any(|c| !c.is_zero()));
        }
    }

    #[test]
    fn showcase_pair_same_ungraded_algebra_different_gradings() {
        for p in [3u64, 5, 7] {
            let nil = tilde_gr(&poly_order(0, p)).unwrap();
            let ram = tilde_gr(&poly_order(p as i64, p)).unwrap();
            // identical structure constants in the canonical adapted bases
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(nil.structure_constant(i, j), ram.structure_constant(i, j));
                }
            }
            // but different graded algebras
            assert_eq!(graded_iso(&nil, &ram, 0, 8), GradedIsoOutcome::DimensionVectorsDiffer);
        }
    }

    #[test]
    fn tilde_gr_of_split_semisimple_order() {
        use num_traits::{One, Zero};
        // Z x Z: semisimple at every fiber, pure grade 0
        let o = IntegralOrder {
            dim: 2,
            labels: vec!["e1".into(), "e2".into()],
            mult: vec![
                vec![vec![BigInt::one(), BigInt::zero()], vec![BigInt::zero(), BigInt::zero()]],
                vec![vec![BigInt::zero(), BigInt::zero()], vec![BigInt::zero(), BigInt::one()]],
            ],
            unit: vec![BigInt::one(), BigInt::one()],
            prime: 5,
        };
        let g = tilde_gr(&o).unwrap();
        assert!(g.grades().iter().all(|&x| x == 0));
        assert_eq!(g.dim(), 2);
    }

    #[test]
    fn gr_vs_tilde_gr_differ_on_ramified_order() {
        // gr of the special fiber F_p[x]/(x^2) puts x in grade 1, while
        // tilde_gr of Z[x]/(x^2 - p) stays in grade 0
        let p = 5u64;
        let o = poly_order(p as i64, p);
        let special = o.fiber(FieldMode::Fp(p)).unwrap();
        let g_special = gr_algebra(&special);
        // F_5 with dim 2: trace regime p > dim applies
        let g_special = g_special.unwrap();
        let mut grades = g_special.grades().to_vec();
        grades.sort_unstable();
        assert_eq!(grades, vec![0, 1]);
        let tg = tilde_gr(&o).unwrap();
        assert!(tg.grades().iter().all(|&x| x == 0));
    }
}
