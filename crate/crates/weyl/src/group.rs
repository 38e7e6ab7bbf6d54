//! Group context: generators, descent tests, and the exact length function.
//!
//! Affine roots are pairs (root, level). The action of g = (w, t) is
//! g·(α, k) = (wα, k − <t, (wα)^∨>), all in integer arithmetic. Left and
//! right descents are negativity tests on images of the simple affine roots,
//! and the length of an affine element is computed by counting inverted
//! affine root strings, so no ball is needed to certify lengths.

use crate::element::WeylElem;
use crate::error::{Result, WeylError};
use crate::root_data::RootDatum;
use crate::types::CartanType;

/// An affine real root (α, k); finite roots are (α, 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineRoot {
    /// Index into the root datum's root list.
    pub root: usize,
    pub level: i64,
}

impl AffineRoot {
    pub fn is_positive(&self, datum: &RootDatum) -> bool {
        self.level > 0 || (self.level == 0 && datum.is_positive_index(self.root))
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub datum: RootDatum,
    pub affine: bool,
    generators: Vec<WeylElem>,
}

impl WeylGroup {
    pub fn new(t: CartanType, affine: bool) -> Result<WeylGroup> {
        let datum = RootDatum::new(t)?;
        let n = datum.rank;
        let mut generators = Vec::new();
        if affine {
            // s_0: reflection in the wall <x, θ^∨> = 1, i.e. s_θ plus a
            // translation by θ
            let theta = datum.roots[datum.highest].rc.clone();
            let s_theta = reflection_matrix(&datum, datum.highest);
            generators.push(WeylElem {
                n,
                mat: s_theta.clone(),
                inv: s_theta,
                trans: theta,
            });
        }
        for i in 0..n {
            let mut rc = vec![0i64; n];
            rc[i] = 1;
            let idx = datum.root_index(&rc).expect("simple root");
            let m = reflection_matrix(&datum, idx);
            generators.push(WeylElem { n, mat: m.clone(), inv: m, trans: vec![0; n] });
        }
        Ok(WeylGroup { datum, affine, generators })
    }

    /// Number of simple reflections (n, or n + 1 in the affine case; the
    /// affine one is generator 0 and the finite ones shift up by one).
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Human name of a generator: s1..sn finite, s0 the affine node.
    pub fn generator_name(&self, g: usize) -> String {
        if self.affine {
            format!("s{g}")
        } else {
            format!("s{}", g + 1)
        }
    }

    pub fn generator_by_name(&self, name: &str) -> Result<usize> {
        let name = name.trim();
        let idx: usize = name
            .strip_prefix('s')
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| WeylError::Invalid(format!("bad generator '{name}'")))?;
        let g = if self.affine {
            idx
        } else {
            idx.checked_sub(1).ok_or(WeylError::BadGenerator(0))?
        };
        if g >= self.generator_count() {
            return Err(WeylError::BadGenerator(g));
        }
        Ok(g)
    }

    pub fn identity(&self) -> WeylElem {
        WeylElem::identity(self.datum.rank)
    }

    pub fn generator(&self, g: usize) -> Result<&WeylElem> {
        self.generators.get(g).ok_or(WeylError::BadGenerator(g))
    }

    /// The simple affine root attached to generator g.
    fn simple_affine_root(&self, g: usize) -> AffineRoot {
        if self.affine {
            if g == 0 {
                // α_0 = (−θ, 1)
                let neg_highest = self.datum.highest + self.datum.positive_count;
                return AffineRoot { root: neg_highest, level: 1 };
            }
            let mut rc = vec![0i64; self.datum.rank];
            rc[g - 1] = 1;
            AffineRoot { root: self.datum.root_index(&rc).expect("simple"), level: 0 }
        } else {
            let mut rc = vec![0i64; self.datum.rank];
            rc[g] = 1;
            AffineRoot { root: self.datum.root_index(&rc).expect("simple"), level: 0 }
        }
    }

    /// g · (α, k) = (wα, k − <t, (wα)^∨>).
    pub fn act_affine_root(&self, g: &WeylElem, a: &AffineRoot) -> AffineRoot {
        let img = g.apply_matrix(&self.datum.roots[a.root].rc);
        let idx = self.datum.root_index(&img).expect("roots are permuted");
        let c = self.datum.pair_with_coroot(&g.trans, idx);
        AffineRoot { root: idx, level: a.level - c }
    }

    /// Left descent: l(s_g x) < l(x), equivalently x^{-1}(a_g) < 0.
    pub fn is_left_descent(&self, x: &WeylElem, g: usize) -> bool {
        let a = self.simple_affine_root(g);
        let img = self.act_affine_root(&x.inverse(), &a);
        !img.is_positive(&self.datum)
    }

    /// Right descent: l(x s_g) < l(x), equivalently x(a_g) < 0.
    pub fn is_right_descent(&self, x: &WeylElem, g: usize) -> bool {
        let a = self.simple_affine_root(g);
        let img = self.act_affine_root(x, &a);
        !img.is_positive(&self.datum)
    }

    /// Exact length by inversion counting; no ball needed.
    pub fn length(&self, x: &WeylElem) -> usize {
        let datum = &self.datum;
        let mut total: i64 = 0;
        for r in 0..datum.roots.len() {
            let img_rc = x.apply_matrix(&datum.roots[r].rc);
            let img = datum.root_index(&img_rc).expect("permuted");
            let c = datum.pair_with_coroot(&x.trans, img);
            let img_negative = !datum.is_positive_index(img);
            if datum.is_positive_index(r) {
                // affine roots (r, k), k >= 0: inverted when k < c, or k = c
                // with a negative image root
                total += c.max(0);
                if img_negative && c >= 0 {
                    total += 1;
                }
            } else {
                // affine roots (r, k), k >= 1
                total += (c - 1).max(0);
                if img_negative && c >= 1 {
                    total += 1;
                }
            }
        }
        total as usize
    }

    pub fn multiply(&self, a: &WeylElem, b: &WeylElem) -> WeylElem {
        a.compose(b)
    }

    /// Product of a word of generator indices.
    pub fn word_to_element(&self, word: &[usize]) -> Result<WeylElem> {
        let mut x = self.identity();
        for &g in word {
            x = x.compose(self.generator(g)?);
        }
        Ok(x)
    }

    /// Formats a BFS word like "s1.s2" ("e" for the identity).
    pub fn word_string(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|&g| self.generator_name(g)).collect::<Vec<_>>().join(".")
        }
    }

    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(vec![]);
        }
        s.split('.').map(|part| self.generator_by_name(part)).collect()
    }
}

fn reflection_matrix(datum: &RootDatum, root: usize) -> Vec<i64> {
    // s_β(x) = x − <x, β^∨> β
    let n = datum.rank;
    let beta = &datum.roots[root].rc;
    let mut m = vec![0i64; n * n];
    for c in 0..n {
        let mut x = vec![0i64; n];
        x[c] = 1;
        let pair = datum.pair_with_coroot(&x, root);
        for r in 0..n {
            m[r * n + c] = if r == c { 1 } else { 0 } - pair * beta[r];
        }
    }
    m
}
