//! Group elements as integer affine transformations of the root space.
//!
//! An element is x -> w(x) + t with w an integer matrix in simple-root
//! coordinates and t a vector in the translation lattice (zero in finite
//! groups). The pair is a canonical form: equality of elements is equality
//! of the pair, no reduced words involved.

/// Canonical form of a (possibly affine) Weyl group element. The inverse
/// matrix is carried along so descents never require a matrix inversion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElem {
    pub n: usize,
    /// Finite part, row-major n x n, acting on column vectors of root coords.
    pub mat: Vec<i64>,
    /// Inverse of the finite part.
    pub inv: Vec<i64>,
    /// Translation in root coordinates (zero for finite groups).
    pub trans: Vec<i64>,
}

impl WeylElem {
    pub fn identity(n: usize) -> Self {
        let mut mat = vec![0i64; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        WeylElem { n, mat: mat.clone(), inv: mat, trans: vec![0; n] }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn apply_matrix(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n).map(|r| (0..n).map(|c| self.mat[r * n + c] * v[c]).sum()).collect()
    }

    pub fn apply_inverse_matrix(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n).map(|r| (0..n).map(|c| self.inv[r * n + c] * v[c]).sum()).collect()
    }

    /// Composition: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &WeylElem) -> WeylElem {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut mat = vec![0i64; n * n];
        let mut inv = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                mat[r * n + c] = (0..n).map(|k| self.mat[r * n + k] * other.mat[k * n + c]).sum();
                // (ab)^{-1} = b^{-1} a^{-1}
                inv[r * n + c] = (0..n).map(|k| other.inv[r * n + k] * self.inv[k * n + c]).sum();
            }
        }
        let mut trans = self.apply_matrix(&other.trans);
        for i in 0..n {
            trans[i] += self.trans[i];
        }
        WeylElem { n, mat, inv, trans }
    }

    pub fn inverse(&self) -> WeylElem {
        // (w, t)^{-1} = (w^{-1}, -w^{-1} t)
        let minus_t: Vec<i64> = self.trans.iter().map(|x| -x).collect();
        let trans = {
            let n = self.n;
            (0..n).map(|r| (0..n).map(|c| self.inv[r * n + c] * minus_t[c]).sum()).collect()
        };
        WeylElem { n: self.n, mat: self.inv.clone(), inv: self.mat.clone(), trans }
    }

    pub fn is_translation_free(&self) -> bool {
        self.trans.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_inverse() {
        let e = WeylElem::identity(2);
        assert!(e.is_identity());
        assert_eq!(e.compose(&e), e);
        let g = WeylElem {
            n: 2,
            mat: vec![0, 1, 1, 0],
            inv: vec![0, 1, 1, 0],
            trans: vec![3, -1],
        };
        let gi = g.inverse();
        assert!(g.compose(&gi).is_identity());
        assert!(gi.compose(&g).is_identity());
    }
}
