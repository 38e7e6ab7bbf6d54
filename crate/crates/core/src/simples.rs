//! Simple modules, primitive idempotents, and projective covers.
//!
//! Primitive idempotents are found in A_0 (they exist there: A_{>0} is
//! nilpotent), by refining a complete orthogonal family inside the split
//! semisimple quotient S = A_0 / rad A_0 and lifting back along the nilpotent
//! radical. Splitting inside S uses minimal polynomials: the center of a
//! corner splits via rational (or F_p) roots, and a central simple block is
//! split by hunting a zero divisor and descending to a minimal left ideal.
//! When no splitting is found the offending simple has an endomorphism ring
//! of dimension > 1 and the algebra is reported as not split.

use std::sync::Arc;

use crate::algebra::{build_algebra, AlgebraSpec, GradedAlgebra, SparseVec};
use crate::error::{CoreError, Result};
use crate::matrix::ExactMatrix;
use crate::module::{graded_row_basis, GradedModule};
use crate::radical::radical_series;
use crate::scalar::{ExactScalar, FieldMode};

#[derive(Debug, Clone)]
pub struct SimplesData {
    /// Number of isomorphism classes of simples.
    pub count: usize,
    /// Complete orthogonal primitive idempotents, homogeneous of grade 0.
    pub idempotents: Vec<Vec<ExactScalar>>,
    /// Class of each idempotent.
    pub class_of: Vec<usize>,
    /// Representative idempotent per class (index into `idempotents`).
    pub reps: Vec<usize>,
    /// L(λ), pure of grade 0.
    pub simples: Vec<GradedModule>,
    /// P(λ) = A e_λ with head in grade 0.
    pub projectives: Vec<GradedModule>,
    /// P(λ) basis vectors as elements of the algebra.
    pub proj_elements: Vec<Vec<Vec<ExactScalar>>>,
    /// Coordinates of e_λ in the P(λ) basis.
    pub gen_coords: Vec<Vec<ExactScalar>>,
}

/// Quotient of an algebra by a (two-sided, graded) ideal. Returns the
/// quotient, the projection (dim x qdim) and representative rows (qdim x dim).
pub fn quotient_algebra(
    a: &GradedAlgebra,
    ideal: &ExactMatrix,
) -> Result<(Arc<GradedAlgebra>, ExactMatrix, ExactMatrix)> {
    let mode = a.mode();
    let dim = a.dim();
    let col_grades: Vec<i64> = a.grades().iter().map(|&g| g as i64).collect();
    let (basis, _g, pivots) = graded_row_basis(ideal, &col_grades)?;
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..dim).filter(|i| !pivot_set.contains(i)).collect();
    let qdim = free.len();
    let free_pos: std::collections::HashMap<usize, usize> =
        free.iter().enumerate().map(|(a, &b)| (b, a)).collect();

    let mut projection = ExactMatrix::zeros(mode, dim, qdim);
    for t in 0..dim {
        if let Some(&fp) = free_pos.get(&t) {
            projection.set(t, fp, ExactScalar::one(mode));
        } else {
            let r = (0..basis.rows()).find(|&r| pivots[r] == t).expect("pivot row");
            for &f in &free {
                let v = basis.get(r, f);
                if !v.is_zero() {
                    projection.set(t, free_pos[&f], v.neg());
                }
            }
        }
    }
    let mut reps = ExactMatrix::zeros(mode, qdim, dim);
    for (fp, &f) in free.iter().enumerate() {
        reps.set(fp, f, ExactScalar::one(mode));
    }

    let project = |v: &[ExactScalar]| -> Vec<ExactScalar> {
        let vm = ExactMatrix::from_rows(mode, vec![v.to_vec()]).expect("row");
        vm.mul(&projection).expect("shape").row(0)
    };

    let mut mult = vec![vec![SparseVec::new(); qdim]; qdim];
    for i in 0..qdim {
        for j in 0..qdim {
            let p = a.product(&reps.row(i), &reps.row(j));
            mult[i][j] = crate::algebra::sparse_from_dense(&project(&p));
        }
    }
    let q = build_algebra(AlgebraSpec {
        mode,
        dim: qdim,
        labels: free.iter().map(|&f| a.labels()[f].clone()).collect(),
        mult,
        unit: project(a.unit()),
        grades: free.iter().map(|&f| a.grades()[f]).collect(),
        idempotents: None,
        radical_basis: None,
    })?;
    Ok((q, projection, reps))
}

// ---------------------------------------------------------------------------
// polynomial helpers (dense, ascending coefficients)

fn poly_normalize(mut p: Vec<ExactScalar>) -> Vec<ExactScalar> {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(mode: FieldMode, a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut out = vec![ExactScalar::zero(mode); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    poly_normalize(out)
}

/// (quotient, remainder) with b nonzero.
fn poly_divmod(
    mode: FieldMode,
    a: &[ExactScalar],
    b: &[ExactScalar],
) -> (Vec<ExactScalar>, Vec<ExactScalar>) {
    let b = poly_normalize(b.to_vec());
    let mut rem = poly_normalize(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b.last().unwrap().inv();
    if rem.len() - 1 < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![ExactScalar::zero(mode)], rem);
    }
    let mut quo = vec![ExactScalar::zero(mode); rem.len() - db];
    while rem.len() - 1 >= db && !(rem.len() == 1 && rem[0].is_zero()) {
        let dr = rem.len() - 1;
        let c = rem.last().unwrap().mul(&lead_inv);
        quo[dr - db] = c.clone();
        for i in 0..=db {
            let t = b[i].mul(&c);
            rem[dr - db + i] = rem[dr - db + i].sub(&t);
        }
        rem = poly_normalize(rem);
        if dr == db {
            break;
        }
    }
    (poly_normalize(quo), poly_normalize(rem))
}

fn poly_is_zero(p: &[ExactScalar]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Extended gcd: returns (g, u, v) with u a + v b = g, g monic.
fn poly_ext_gcd(
    mode: FieldMode,
    a: &[ExactScalar],
    b: &[ExactScalar],
) -> (Vec<ExactScalar>, Vec<ExactScalar>, Vec<ExactScalar>) {
    let one = vec![ExactScalar::one(mode)];
    let zero = vec![ExactScalar::zero(mode)];
    let (mut r0, mut r1) = (poly_normalize(a.to_vec()), poly_normalize(b.to_vec()));
    let (mut s0, mut s1) = (one.clone(), zero.clone());
    let (mut t0, mut t1) = (zero, one);
    while !poly_is_zero(&r1) {
        let (q, r) = poly_divmod(mode, &r0, &r1);
        let s = poly_sub(mode, &s0, &poly_mul(mode, &q, &s1));
        let t = poly_sub(mode, &t0, &poly_mul(mode, &q, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    let lead = r0.last().unwrap().clone();
    if !lead.is_one() && !lead.is_zero() {
        let inv = lead.inv();
        r0 = r0.iter().map(|c| c.mul(&inv)).collect();
        s0 = s0.iter().map(|c| c.mul(&inv)).collect();
        t0 = t0.iter().map(|c| c.mul(&inv)).collect();
    }
    (r0, s0, t0)
}

fn poly_sub(mode: FieldMode, a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    let n = a.len().max(b.len());
    let mut out = vec![ExactScalar::zero(mode); n];
    for (i, c) in a.iter().enumerate() {
        out[i] = out[i].add(c);
    }
    for (i, c) in b.iter().enumerate() {
        out[i] = out[i].sub(c);
    }
    poly_normalize(out)
}

fn poly_eval_scalar(p: &[ExactScalar], x: &ExactScalar) -> ExactScalar {
    let mut acc = ExactScalar::zero(x.mode());
    for c in p.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Roots of p in the base field. Over Q: rational root search through divisor
/// enumeration (bounded trial division). Over F_p: exhaustive for small p.
/// May be incomplete for adversarial coefficient sizes; callers treat a
/// missing factorization as "not split".
fn field_roots(mode: FieldMode, p: &[ExactScalar]) -> Vec<ExactScalar> {
    match mode {
        FieldMode::Fp(pr) => {
            let cap = 100_000u64.min(pr);
            (0..cap)
                .map(|c| ExactScalar::Fp { p: pr, val: c })
                .filter(|c| poly_eval_scalar(p, c).is_zero())
                .collect()
        }
        FieldMode::Q => {
            use num_bigint::BigInt;
            use num_rational::BigRational;
            use num_traits::{One, Signed, Zero};
            let mut poly = poly_normalize(p.to_vec());
            let mut roots = Vec::new();
            // strip t^k
            while poly.len() > 1 && poly[0].is_zero() {
                poly.remove(0);
                if !roots.iter().any(|r: &ExactScalar| r.is_zero()) {
                    roots.push(ExactScalar::zero(mode));
                }
            }
            if poly.len() <= 1 {
                return roots;
            }
            // integer scale
            let mut lcm = BigInt::one();
            for c in &poly {
                lcm = num_integer::Integer::lcm(&lcm, c.as_rational().unwrap().denom());
            }
            let scaled: Vec<BigInt> = poly
                .iter()
                .map(|c| {
                    let r = c.as_rational().unwrap() * BigRational::from(lcm.clone());
                    r.numer().clone()
                })
                .collect();
            let a0 = scaled[0].abs();
            let an = scaled.last().unwrap().abs();
            let divisors = |n: &BigInt| -> Vec<BigInt> {
                let mut out = vec![];
                if n.is_zero() {
                    return out;
                }
                let mut d = BigInt::one();
                let limit = BigInt::from(1_000_000u64);
                while &d * &d <= *n && d <= limit {
                    if (n % &d).is_zero() {
                        out.push(d.clone());
                        out.push(n / &d);
                    }
                    d += 1;
                }
                out
            };
            let nums = divisors(&a0);
            let dens = divisors(&an);
            for num in &nums {
                for den in &dens {
                    for sign in [1i64, -1] {
                        let cand = ExactScalar::Rat(BigRational::new(
                            num * BigInt::from(sign),
                            den.clone(),
                        ));
                        if poly_eval_scalar(&poly, &cand).is_zero()
                            && !roots.contains(&cand)
                        {
                            roots.push(cand);
                        }
                    }
                }
            }
            roots
        }
    }
}

// ---------------------------------------------------------------------------
// corner arithmetic inside a semisimple algebra

struct Corner<'a> {
    s: &'a GradedAlgebra,
    unit: Vec<ExactScalar>,
    basis: ExactMatrix,
}

impl<'a> Corner<'a> {
    fn new(s: &'a GradedAlgebra, e: &[ExactScalar]) -> Self {
        let mode = s.mode();
        let mut rows = Vec::new();
        for i in 0..s.dim() {
            let x = s.product(e, &s.product(&s.basis_vector(i), e));
            rows.push(x);
        }
        let basis = ExactMatrix::from_rows(mode, rows).expect("rows").row_basis();
        Corner { s, unit: e.to_vec(), basis }
    }

    fn dim(&self) -> usize {
        self.basis.rows()
    }

    fn min_poly(&self, x: &[ExactScalar]) -> Vec<ExactScalar> {
        let mode = self.s.mode();
        let mut powers = vec![self.unit.clone()];
        loop {
            let next = self.s.product(powers.last().unwrap(), x);
            let stacked =
                ExactMatrix::from_rows(mode, powers.clone()).expect("rows");
            if let Ok(Some(coords)) =
                stacked.solve_left(&ExactMatrix::from_rows(mode, vec![next.clone()]).unwrap())
            {
                // t^k = sum c_i t^i
                let k = powers.len();
                let mut poly = vec![ExactScalar::zero(mode); k + 1];
                for i in 0..k {
                    poly[i] = coords.get(0, i).neg();
                }
                poly[k] = ExactScalar::one(mode);
                return poly;
            }
            powers.push(next);
        }
    }

    fn eval_poly(&self, p: &[ExactScalar], x: &[ExactScalar]) -> Vec<ExactScalar> {
        let mode = self.s.mode();
        let mut acc = vec![ExactScalar::zero(mode); self.s.dim()];
        for c in p.iter().rev() {
            acc = self.s.product(&acc, x);
            if !c.is_zero() {
                for (i, u) in self.unit.iter().enumerate() {
                    acc[i] = acc[i].add(&c.mul(u));
                }
            }
        }
        acc
    }

    fn is_scalar(&self, x: &[ExactScalar]) -> bool {
        let mode = self.s.mode();
        let um = ExactMatrix::from_rows(mode, vec![self.unit.clone()]).unwrap();
        um.row_span_contains(&ExactMatrix::from_rows(mode, vec![x.to_vec()]).unwrap())
    }

    /// Splits off an idempotent from the minimal polynomial of x, when it has
    /// a root in the field and is not a pure power of one linear factor.
    fn idempotent_from_min_poly(&self, x: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        if self.is_scalar(x) {
            return None;
        }
        let mode = self.s.mode();
        let m = self.min_poly(x);
        for root in field_roots(mode, &m) {
            // m = (t - c)^e * g with g(c) != 0
            let lin = vec![root.neg(), ExactScalar::one(mode)];
            let mut g = m.clone();
            let mut h1 = vec![ExactScalar::one(mode)];
            loop {
                let (q, r) = poly_divmod(mode, &g, &lin);
                if poly_is_zero(&r) {
                    g = q;
                    h1 = poly_mul(mode, &h1, &lin);
                } else {
                    break;
                }
            }
            if g.len() <= 1 {
                continue; // pure power: x - c is nilpotent, no idempotent here
            }
            let (gcd, u, _v) = poly_ext_gcd(mode, &h1, &g);
            debug_assert!(gcd.len() == 1);
            // f = u*h1 evaluated at x: the unit of the g-primary component
            let uh1 = poly_mul(mode, &u, &h1);
            let f = self.eval_poly(&uh1, x);
            let f = normalize_idem(self.s, &f);
            if !is_zero_vec(&f) && f != self.unit {
                return Some(f);
            }
        }
        None
    }

    /// A nonzero nilpotent derived from x when its minimal polynomial is a
    /// pure power (t - c)^e with e >= 2.
    fn nilpotent_from_min_poly(&self, x: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        let mode = self.s.mode();
        let m = self.min_poly(x);
        if m.len() < 3 {
            return None;
        }
        for root in field_roots(mode, &m) {
            let lin = vec![root.neg(), ExactScalar::one(mode)];
            let e = {
                let mut g = m.clone();
                let mut e = 0;
                loop {
                    let (q, r) = poly_divmod(mode, &g, &lin);
                    if poly_is_zero(&r) {
                        e += 1;
                        g = q;
                    } else {
                        break;
                    }
                }
                e
            };
            if e == m.len() - 1 && e >= 2 {
                let mut y = x.to_vec();
                for (i, u) in self.unit.iter().enumerate() {
                    y[i] = y[i].sub(&root.mul(u));
                }
                if !is_zero_vec(&y) {
                    return Some(y);
                }
            }
        }
        None
    }

    /// Center of the corner, as rows.
    fn center(&self) -> Vec<Vec<ExactScalar>> {
        let mode = self.s.mode();
        let d = self.dim();
        if d == 0 {
            return vec![];
        }
        // solve sum_v c_v (basis_v * bx - bx * basis_v) = 0 for all corner
        // basis elements bx, coordinates c over the corner basis
        let mut eq_rows = Vec::new();
        for b in 0..d {
            let bx = self.basis.row(b);
            let commutators: Vec<Vec<ExactScalar>> = (0..d)
                .map(|v| {
                    let zv = self.basis.row(v);
                    sub_vec(&self.s.product(&zv, &bx), &self.s.product(&bx, &zv))
                })
                .collect();
            for col in 0..self.s.dim() {
                let row: Vec<ExactScalar> = (0..d).map(|v| commutators[v][col].clone()).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    eq_rows.push(row);
                }
            }
        }
        if eq_rows.is_empty() {
            return (0..d).map(|v| self.basis.row(v)).collect();
        }
        let eqs = ExactMatrix::from_rows(mode, eq_rows).expect("rows");
        let sols = eqs.right_nullspace_cols();
        (0..sols.rows())
            .map(|i| {
                let coords = sols.row(i);
                let mut z = vec![ExactScalar::zero(mode); self.s.dim()];
                for (v, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        for (k, b) in self.basis.row(v).iter().enumerate() {
                            z[k] = z[k].add(&c.mul(b));
                        }
                    }
                }
                z
            })
            .collect()
    }

    /// Searches for a proper idempotent inside the corner.
    fn find_proper_idempotent(&self) -> Option<Vec<ExactScalar>> {
        if self.dim() <= 1 {
            return None;
        }
        // 1. center elements split via commutative minimal polynomials
        for z in self.center() {
            if let Some(f) = self.idempotent_from_min_poly(&z) {
                return Some(f);
            }
        }
        // 2. zero-divisor hunt among basis elements and simple combinations
        let d = self.dim();
        let mut candidates: Vec<Vec<ExactScalar>> = Vec::new();
        for i in 0..d {
            candidates.push(self.basis.row(i));
        }
        for i in 0..d {
            for j in 0..d {
                let a = self.basis.row(i);
                let b = self.basis.row(j);
                candidates.push(self.s.product(&a, &b));
                if i < j {
                    candidates.push(add_vec(&a, &b));
                    candidates.push(sub_vec(&a, &b));
                    candidates.push(sub_vec(&self.s.product(&a, &b), &self.s.product(&b, &a)));
                }
            }
        }
        for x in &candidates {
            if is_zero_vec(x) || self.is_scalar(x) {
                continue;
            }
            if let Some(f) = self.idempotent_from_min_poly(x) {
                return Some(f);
            }
            if let Some(nil) = self.nilpotent_from_min_poly(x) {
                if let Some(f) = self.idempotent_from_minimal_ideal(&nil) {
                    return Some(f);
                }
            }
        }
        None
    }

    /// Minimal-left-ideal descent from a zero divisor, producing a proper
    /// idempotent of the corner.
    fn idempotent_from_minimal_ideal(&self, u: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        let mode = self.s.mode();
        let left_ideal = |y: &[ExactScalar]| -> ExactMatrix {
            let mut rows = Vec::new();
            for i in 0..self.dim() {
                rows.push(self.s.product(&self.basis.row(i), y));
            }
            ExactMatrix::from_rows(mode, rows).expect("rows").row_basis()
        };
        let mut ideal = left_ideal(u);
        if ideal.rows() == 0 || ideal.rows() == self.dim() {
            return None;
        }
        // descend to a minimal left ideal
        loop {
            let mut descended = false;
            for i in 0..ideal.rows() {
                let y = ideal.row(i);
                let sub = left_ideal(&y);
                if sub.rows() > 0 && sub.rows() < ideal.rows() {
                    ideal = sub;
                    descended = true;
                    break;
                }
            }
            if !descended {
                break;
            }
        }
        // solve e * y0 = y0 with e in the ideal, for y0 with ideal * y0 != 0
        for i in 0..ideal.rows() {
            let y0 = ideal.row(i);
            let images = ExactMatrix::from_rows(
                mode,
                (0..ideal.rows()).map(|r| self.s.product(&ideal.row(r), &y0)).collect::<Vec<_>>(),
            )
            .expect("rows");
            if images.rank() == 0 {
                continue;
            }
            let target = ExactMatrix::from_rows(mode, vec![y0.clone()]).expect("row");
            if let Ok(Some(coords)) = images.solve_left(&target) {
                let mut e = vec![ExactScalar::zero(mode); self.s.dim()];
                for r in 0..ideal.rows() {
                    let c = coords.get(0, r);
                    if !c.is_zero() {
                        for (k, b) in ideal.row(r).iter().enumerate() {
                            e[k] = e[k].add(&c.mul(b));
                        }
                    }
                }
                let e = normalize_idem(self.s, &e);
                if !is_zero_vec(&e) && e != self.unit && self.s.is_idempotent(&e) {
                    return Some(e);
                }
            }
        }
        None
    }
}

fn is_zero_vec(v: &[ExactScalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

fn add_vec(a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn sub_vec(a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn normalize_idem(_s: &GradedAlgebra, e: &[ExactScalar]) -> Vec<ExactScalar> {
    e.to_vec()
}

// ---------------------------------------------------------------------------

/// Computes (and caches) the simple modules, primitive idempotents, and
/// projective covers of the algebra.
pub fn simples_and_projectives(a: &Arc<GradedAlgebra>) -> Result<SimplesData> {
    a.simples_cache().get_or_init(|| compute_simples(a)).clone()
}

fn compute_simples(a: &Arc<GradedAlgebra>) -> Result<SimplesData> {
    let mode = a.mode();
    let _ = radical_series(a)?; // fail early when the radical is unavailable

    let (a0, embed) = a.grade_zero_subalgebra()?;
    let rs0 = radical_series_of_a0(a, &a0, &embed)?;
    let (s, s_proj, _s_reps) = quotient_algebra(&a0, &rs0)?;

    // initial complete orthogonal family in A_0: grade-0 parts of supplied
    // idempotents, or the unit
    let start_family: Vec<Vec<ExactScalar>> = match a.idempotents() {
        Some(es) => es
            .iter()
            .map(|e| {
                let e0 = a.homogeneous_part(e, 0);
                embed.iter().map(|&i| e0[i].clone()).collect()
            })
            .collect(),
        None => vec![a0.unit().to_vec()],
    };

    let to_s = |v: &[ExactScalar]| -> Vec<ExactScalar> {
        ExactMatrix::from_rows(mode, vec![v.to_vec()])
            .expect("row")
            .mul(&s_proj)
            .expect("shape")
            .row(0)
    };

    // refine in S until every member is primitive or unsplittable
    let mut family: Vec<Vec<ExactScalar>> = start_family.iter().map(|e| to_s(e)).collect();
    family.retain(|e| !is_zero_vec(e));
    loop {
        let mut refined = false;
        let mut next = Vec::new();
        for e in &family {
            let corner = Corner::new(&s, e);
            if corner.dim() <= 1 {
                next.push(e.clone());
                continue;
            }
            match corner.find_proper_idempotent() {
                Some(f) => {
                    let comp = sub_vec(e, &f);
                    debug_assert!(s.is_idempotent(&f));
                    debug_assert!(s.is_idempotent(&comp));
                    next.push(f);
                    next.push(comp);
                    refined = true;
                }
                None => next.push(e.clone()),
            }
        }
        family = next;
        if !refined {
            break;
        }
    }

    // split check: every corner must now be one dimensional
    for e in &family {
        let corner = Corner::new(&s, e);
        if corner.dim() > 1 {
            return Err(CoreError::NotSplit { end_dim: corner.dim() });
        }
    }

    // lift the family from S to A_0, then embed into A
    let lifted0 = lift_family(&a0, &rs0, &s_proj, &family)?;
    let idempotents: Vec<Vec<ExactScalar>> = lifted0
        .iter()
        .map(|e| {
            let mut v = a.zero_vector();
            for (i, &amb) in embed.iter().enumerate() {
                v[amb] = e[i].clone();
            }
            v
        })
        .collect();

    // group into isomorphism classes: e ~ f iff eSf != 0
    let n = family.len();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        class_of[i] = c;
        reps.push(i);
        for j in i + 1..n {
            if class_of[j] == usize::MAX && linked(&s, &family[i], &family[j]) {
                class_of[j] = c;
            }
        }
    }
    let count = reps.len();

    // L(λ) = S e_λ as a graded A-module pure of grade 0
    let mut simples = Vec::with_capacity(count);
    for &r in &reps {
        simples.push(simple_module(a, &s, &s_proj, &embed, &family[r])?);
    }

    // P(λ) = A e_λ
    let mut projectives = Vec::with_capacity(count);
    let mut proj_elements = Vec::with_capacity(count);
    let mut gen_coords = Vec::with_capacity(count);
    for &r in &reps {
        let e = &idempotents[r];
        let right = a.right_mult_matrix(e);
        let col_grades: Vec<i64> = a.grades().iter().map(|&g| g as i64).collect();
        let (basis, grades, _) = graded_row_basis(&right, &col_grades)?;
        let mut action = Vec::with_capacity(a.dim());
        for i in 0..a.dim() {
            let lm = a.left_mult_matrix(&a.basis_vector(i));
            let images = basis.mul(&lm)?;
            let coords = basis
                .solve_left(&images)?
                .ok_or_else(|| CoreError::Invalid("projective not invariant".into()))?;
            action.push(coords);
        }
        let module = GradedModule::new_unchecked(Arc::clone(a), action, grades);
        let elems: Vec<Vec<ExactScalar>> = (0..basis.rows()).map(|i| basis.row(i)).collect();
        let gc = basis
            .solve_left(&ExactMatrix::from_rows(mode, vec![e.clone()])?)?
            .ok_or_else(|| CoreError::Invalid("idempotent outside its projective".into()))?
            .row(0);
        projectives.push(module);
        proj_elements.push(elems);
        gen_coords.push(gc);
    }

    let data = SimplesData {
        count,
        idempotents,
        class_of,
        reps,
        simples,
        projectives,
        proj_elements,
        gen_coords,
    };
    verify_head_purity(a, &data)?;
    Ok(data)
}

/// rad(A_0) as rows in A_0 coordinates: the grade-0 block of rad(A).
fn radical_series_of_a0(
    a: &Arc<GradedAlgebra>,
    a0: &Arc<GradedAlgebra>,
    embed: &[usize],
) -> Result<ExactMatrix> {
    let mode = a.mode();
    let rs = radical_series(a)?;
    let rad = rs.radical();
    // grade-0 rows restricted to A_0 coordinates
    let col_grades: Vec<i64> = a.grades().iter().map(|&g| g as i64).collect();
    let (basis, grades, _) = graded_row_basis(&rad, &col_grades)?;
    let mut rows = Vec::new();
    for i in 0..basis.rows() {
        if grades[i] == 0 {
            rows.push(embed.iter().map(|&k| basis.get(i, k).clone()).collect());
        }
    }
    if rows.is_empty() {
        Ok(ExactMatrix::zeros(mode, 0, a0.dim()))
    } else {
        ExactMatrix::from_rows(mode, rows)
    }
}

/// eSf != 0 detects that the simples of two primitive idempotents agree.
fn linked(s: &GradedAlgebra, e: &[ExactScalar], f: &[ExactScalar]) -> bool {
    for i in 0..s.dim() {
        let x = s.product(e, &s.product(&s.basis_vector(i), f));
        if !is_zero_vec(&x) {
            return true;
        }
    }
    false
}

/// Newton lift of a complete orthogonal family from S = A_0/rad to A_0.
fn lift_family(
    a0: &Arc<GradedAlgebra>,
    rad0: &ExactMatrix,
    s_proj: &ExactMatrix,
    family: &[Vec<ExactScalar>],
) -> Result<Vec<Vec<ExactScalar>>> {
    let mode = a0.mode();
    // preimage choice: s_proj maps A_0 -> S along pivot reduction; the
    // representative rows give a section S -> A_0
    let section = {
        // reps: qdim x dim rows with identity at free columns; recompute
        let (_, _, reps) = quotient_algebra(a0, rad0)?;
        reps
    };
    let lift_raw = |e: &[ExactScalar]| -> Vec<ExactScalar> {
        ExactMatrix::from_rows(mode, vec![e.to_vec()])
            .expect("row")
            .mul(&section)
            .expect("shape")
            .row(0)
    };
    let project = |x: &[ExactScalar]| -> Vec<ExactScalar> {
        ExactMatrix::from_rows(mode, vec![x.to_vec()])
            .expect("row")
            .mul(s_proj)
            .expect("shape")
            .row(0)
    };

    let newton = |start: &[ExactScalar]| -> Vec<ExactScalar> {
        // e <- 3e^2 - 2e^3 squares the defect e^2 - e in every characteristic
        let mut e = start.to_vec();
        for _ in 0..64 {
            let e2 = a0.product(&e, &e);
            if e2 == e {
                return e;
            }
            let e3 = a0.product(&e2, &e);
            let mut next = vec![ExactScalar::zero(mode); e.len()];
            let three = ExactScalar::from_i64(mode, 3);
            let two = ExactScalar::from_i64(mode, 2);
            for i in 0..e.len() {
                next[i] = three.mul(&e2[i]).sub(&two.mul(&e3[i]));
            }
            e = next;
        }
        panic!("idempotent lift did not converge; radical not nilpotent?");
    };

    let mut lifted: Vec<Vec<ExactScalar>> = Vec::with_capacity(family.len());
    for (pos, ebar) in family.iter().enumerate() {
        if pos + 1 == family.len() {
            // force the family to sum to 1 exactly
            let mut rest = a0.unit().to_vec();
            for l in &lifted {
                rest = sub_vec(&rest, l);
            }
            debug_assert!(a0.is_idempotent(&rest));
            debug_assert_eq!(project(&rest), *ebar);
            lifted.push(rest);
        } else {
            // restrict the raw lift to the corner orthogonal to the previous
            // lifts so orthogonality is preserved
            let mut x = lift_raw(ebar);
            let mut co_unit = a0.unit().to_vec();
            for l in &lifted {
                co_unit = sub_vec(&co_unit, l);
            }
            x = a0.product(&co_unit, &a0.product(&x, &co_unit));
            let e = newton(&x);
            debug_assert_eq!(project(&e), *ebar);
            lifted.push(e);
        }
    }
    Ok(lifted)
}

/// S e as a graded A-module concentrated in grade 0.
fn simple_module(
    a: &Arc<GradedAlgebra>,
    s: &GradedAlgebra,
    s_proj: &ExactMatrix,
    embed: &[usize],
    ebar: &[ExactScalar],
) -> Result<GradedModule> {
    let mode = a.mode();
    let mut rows = Vec::new();
    for i in 0..s.dim() {
        rows.push(s.product(&s.basis_vector(i), ebar));
    }
    let basis = ExactMatrix::from_rows(mode, rows)?.row_basis();
    let ldim = basis.rows();
    let mut action = Vec::with_capacity(a.dim());
    for g in 0..a.dim() {
        if a.grades()[g] > 0 {
            action.push(ExactMatrix::zeros(mode, ldim, ldim));
            continue;
        }
        // image of b_g in S
        let a0_pos = embed.iter().position(|&k| k == g).expect("grade-0 index embeds");
        let mut a0_vec = vec![ExactScalar::zero(mode); embed.len()];
        a0_vec[a0_pos] = ExactScalar::one(mode);
        let sbar = ExactMatrix::from_rows(mode, vec![a0_vec])?.mul(s_proj)?.row(0);
        let images = ExactMatrix::from_rows(
            mode,
            (0..ldim).map(|r| s.product(&sbar, &basis.row(r))).collect::<Vec<_>>(),
        )?;
        let coords = basis
            .solve_left(&images)?
            .ok_or_else(|| CoreError::Invalid("simple not invariant".into()))?;
        action.push(coords);
    }
    Ok(GradedModule::new_unchecked(Arc::clone(a), action, vec![0; ldim]))
}

/// Head of each projective must be the matching simple, pure in grade 0.
fn verify_head_purity(a: &Arc<GradedAlgebra>, data: &SimplesData) -> Result<()> {
    for (lam, p) in data.projectives.iter().enumerate() {
        let (head, _) = p.head()?;
        if !head.is_pure_grade(0) {
            return Err(CoreError::HeadNotPure);
        }
        if head.dim != data.simples[lam].dim {
            return Err(CoreError::Invalid(format!(
                "head of P({lam}) has dimension {} but L({lam}) has {}",
                head.dim, data.simples[lam].dim
            )));
        }
    }
    let _ = a;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn semisimple_product() {
        let a = corpus::product_of_fields(FieldMode::Q, 2);
        let d = simples_and_projectives(&a).unwrap();
        assert_eq!(d.count, 2);
        for lam in 0..2 {
            assert_eq!(d.simples[lam].dim, 1);
            assert_eq!(d.projectives[lam].dim, 1);
        }
    }

    #[test]
    fn local_algebra_single_simple() {
        let a = corpus::truncated_polynomial(FieldMode::Q, 2, 1);
        let d = simples_and_projectives(&a).unwrap();
        assert_eq!(d.count, 1);
        assert_eq!(d.simples[0].dim, 1);
        assert_eq!(d.projectives[0].dim, 2);
        assert_eq!(d.projectives[0].grades, vec![0, 1]);
    }

    #[test]
    fn path_algebra_projectives() {
        let a = corpus::path_algebra_a2(FieldMode::Q, 1);
        let d = simples_and_projectives(&a).unwrap();
        assert_eq!(d.count, 2);
        let dims: Vec<usize> = d.projectives.iter().map(|p| p.dim).collect();
        // P(1) = {e1, a} dim 2 with grades {0,1}; P(2) = {e2} dim 1
        assert_eq!(dims, vec![2, 1]);
        assert_eq!(d.projectives[0].grades, vec![0, 1]);
    }

    #[test]
    fn matrix_algebra_one_class() {
        let a = corpus::matrix_algebra(FieldMode::Q, 2);
        let d = simples_and_projectives(&a).unwrap();
        assert_eq!(d.count, 1);
        assert_eq!(d.idempotents.len(), 2);
        assert_eq!(d.simples[0].dim, 2);
        assert_eq!(d.projectives[0].dim, 2);
    }

    #[test]
    fn matrix_algebra_without_idempotent_hints() {
        // force the refinement to split M_2(k) itself
        let m = corpus::matrix_algebra(FieldMode::Q, 2);
        let mut spec_mult = vec![vec![Vec::new(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                spec_mult[i][j] = m.structure_constant(i, j).clone();
            }
        }
        let a = build_algebra(AlgebraSpec {
            mode: FieldMode::Q,
            dim: 4,
            labels: m.labels().to_vec(),
            mult: spec_mult,
            unit: m.unit().to_vec(),
            grades: vec![0; 4],
            idempotents: None,
            radical_basis: None,
        })
        .unwrap();
        let d = simples_and_projectives(&a).unwrap();
        assert_eq!(d.count, 1);
        assert_eq!(d.simples[0].dim, 2);
    }

    #[test]
    fn not_split_detected() {
        // Q(sqrt 2) = Q[x]/(x^2-2): simple with 2-dimensional endomorphism ring
        let mode = FieldMode::Q;
        let one = ExactScalar::one(mode);
        let two = ExactScalar::from_i64(mode, 2);
        let a = build_algebra(AlgebraSpec {
            mode,
            dim: 2,
            labels: vec!["1".into(), "r".into()],
            mult: vec![
                vec![vec![(0, one.clone())], vec![(1, one.clone())]],
                vec![vec![(1, one.clone())], vec![(0, two)]],
            ],
            unit: vec![one.clone(), ExactScalar::zero(mode)],
            grades: vec![0, 0],
            idempotents: None,
            radical_basis: None,
        })
        .unwrap();
        assert!(matches!(
            simples_and_projectives(&a).unwrap_err(),
            CoreError::NotSplit { end_dim: 2 }
        ));
    }

    #[test]
    fn product_with_nilpotents_lifts_idempotents() {
        // k[x]/(x^2) x k: two classes, one local of dim 2
        let mode = FieldMode::Q;
        let one = ExactScalar::one(mode);
        let zero = ExactScalar::zero(mode);
        // basis: (1,0), (x,0), (0,1)
        let a = build_algebra(AlgebraSpec {
            mode,
            dim: 3,
            labels: vec!["u".into(), "x".into(), "v".into()],
            mult: vec![
                vec![vec![(0, one.clone())], vec![(1, one.clone())], vec![]],
                vec![vec![(1, one.clone())], vec![], vec![]],
                vec![vec![], vec![], vec![(2, one.clone())]],
            ],
            unit: vec![one.clone(), zero.clone(), one.clone()],
            grades: vec![0, 0, 0],
            idempotents: None,
            radical_basis: None,
        })
        .unwrap();
        let d = simples_and_projectives(&a).unwrap();
        assert_eq!(d.count, 2);
        let mut proj_dims: Vec<usize> = d.projectives.iter().map(|p| p.dim).collect();
        proj_dims.sort_unstable();
        assert_eq!(proj_dims, vec![1, 2]);
        // lifted idempotents are genuinely idempotent in A
        for e in &d.idempotents {
            assert!(a.is_idempotent(e));
        }
    }
}
