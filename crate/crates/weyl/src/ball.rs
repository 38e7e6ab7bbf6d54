//! Finite BFS windows into a (possibly infinite) Weyl group, carrying
//! lengths, one reduced word per element, and the Bruhat order.
//!
//! Bruhat is computed by the standard recursion: for s with sw < w,
//! x <= w iff (sx <= sw when sx < x) else (x <= sw). The recursion only
//! descends in length, so a ball is Bruhat-complete for the intervals it
//! contains.

use std::collections::HashMap;

use crate::element::WeylElem;
use crate::error::{Result, WeylError};
use crate::group::WeylGroup;

pub struct CoxBall {
    pub group: WeylGroup,
    pub radius: usize,
    pub elements: Vec<WeylElem>,
    pub index: HashMap<WeylElem, usize>,
    pub length: Vec<usize>,
    /// One reduced word per element, from the BFS tree.
    pub words: Vec<Vec<usize>>,
    /// Bruhat relation le[x * n + w] for element ids x, w.
    bruhat: Vec<bool>,
}

impl CoxBall {
    pub fn new(group: WeylGroup, radius: usize) -> CoxBall {
        let mut elements = vec![group.identity()];
        let mut index = HashMap::new();
        index.insert(group.identity(), 0usize);
        let mut length = vec![0usize];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut frontier = vec![0usize];
        for l in 1..=radius {
            let mut next = Vec::new();
            for &id in &frontier {
                for g in 0..group.generator_count() {
                    let y = elements[id].compose(group.generator(g).expect("generator"));
                    if !index.contains_key(&y) {
                        index.insert(y.clone(), elements.len());
                        let mut w = words[id].clone();
                        w.push(g);
                        next.push(elements.len());
                        elements.push(y);
                        length.push(l);
                        words.push(w);
                    }
                }
            }
            frontier = next;
        }

        let n = elements.len();
        let mut ball = CoxBall {
            group,
            radius,
            elements,
            index,
            length,
            words,
            bruhat: vec![false; n * n],
        };
        ball.compute_bruhat();
        ball
    }

    fn compute_bruhat(&mut self) {
        let n = self.elements.len();
        // order ids by length so sw and x <= sw are always already known
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.length[i]);
        for &w in &order {
            self.bruhat[w * n + w] = true;
            if self.length[w] == 0 {
                continue;
            }
            let s = (0..self.group.generator_count())
                .find(|&g| self.group.is_left_descent(&self.elements[w], g))
                .expect("nonidentity element has a descent");
            let sw_el = self.group.generator(s).expect("gen").compose(&self.elements[w]);
            let sw = self.index[&sw_el];
            for &x in &order {
                if self.length[x] >= self.length[w] || x == w {
                    continue;
                }
                let le = if self.group.is_left_descent(&self.elements[x], s) {
                    let sx_el = self.group.generator(s).expect("gen").compose(&self.elements[x]);
                    let sx = self.index[&sx_el];
                    self.bruhat[sx * n + sw]
                } else {
                    self.bruhat[x * n + sw]
                };
                if le {
                    self.bruhat[x * n + w] = true;
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn id_of(&self, x: &WeylElem) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn bruhat_le(&self, x: usize, w: usize) -> bool {
        self.bruhat[x * self.len() + w]
    }

    /// Bruhat comparison by element, requiring both inside the ball.
    pub fn le_elements(&self, x: &WeylElem, w: &WeylElem) -> Result<bool> {
        let (xi, wi) = match (self.id_of(x), self.id_of(w)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(WeylError::IntervalEscapesBall),
        };
        Ok(self.bruhat_le(xi, wi))
    }

    pub fn word_of(&self, id: usize) -> String {
        self.group.word_string(&self.words[id])
    }

    /// Covering relations of the Bruhat order within the ball.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for w in 0..n {
                if x != w && self.length[w] == self.length[x] + 1 && self.bruhat[x * n + w] {
                    out.push((x, w));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::parse_type;

    fn ball(s: &str, r: usize) -> CoxBall {
        let (t, aff) = parse_type(s).unwrap();
        CoxBall::new(WeylGroup::new(t, aff).unwrap(), r)
    }

    #[test]
    fn s3_has_six_elements() {
        let b = ball("A2", 3);
        assert_eq!(b.len(), 6);
        let longest = b.group.word_to_element(&[0, 1, 0]).unwrap();
        let id = b.id_of(&longest).unwrap();
        assert_eq!(b.length[id], 3);
        // everything lies below the longest element
        for x in 0..6 {
            assert!(b.bruhat_le(x, id));
        }
    }

    #[test]
    fn radius_zero_is_identity_only() {
        let b = ball("A2", 0);
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn affine_a1_growth() {
        // infinite dihedral: identity + two elements per positive length
        let b = ball("A1~", 4);
        assert_eq!(b.len(), 9);
        for l in 1..=4 {
            assert_eq!(b.length.iter().filter(|&&x| x == l).count(), 2);
        }
    }

    #[test]
    fn lengths_match_exact_length() {
        for s in ["A2", "B2", "A2~"] {
            let b = ball(s, 4);
            for (i, x) in b.elements.iter().enumerate() {
                assert_eq!(b.group.length(x), b.length[i], "{s} id {i}");
            }
        }
    }

    #[test]
    fn bruhat_recursive_equals_subword_oracle() {
        for s in ["A2", "B2", "A1~", "A2~"] {
            let b = ball(s, 5);
            for x in 0..b.len() {
                for w in 0..b.len() {
                    let expect = crate::oracle::bruhat_le_subword(&b, x, w);
                    assert_eq!(b.bruhat_le(x, w), expect, "{s}: {x} vs {w}");
                }
            }
        }
    }

    #[test]
    fn bruhat_is_ball_invariant() {
        let small = ball("A2~", 4);
        let large = ball("A2~", 6);
        for x in 0..small.len() {
            for w in 0..small.len() {
                let lx = large.id_of(&small.elements[x]).unwrap();
                let lw = large.id_of(&small.elements[w]).unwrap();
                assert_eq!(small.bruhat_le(x, w), large.bruhat_le(lx, lw));
            }
        }
    }
}
