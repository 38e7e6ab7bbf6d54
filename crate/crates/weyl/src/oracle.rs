//! Independent slow references for cross-checking: the subword
//! characterization of Bruhat order, and Kazhdan-Lusztig polynomials
//! recovered from R-polynomials by inverting the defining functional
//! equation, with no use of the descent recursion for P itself.

use std::collections::HashMap;

use crate::ball::CoxBall;
use crate::kl::{poly_add, poly_is_zero, poly_shift, poly_sub, poly_trim, Poly};

/// x <= w iff some subsequence of length l(x) of a fixed reduced word of w
/// multiplies to x.
pub fn bruhat_le_subword(ball: &CoxBall, x: usize, w: usize) -> bool {
    let lx = ball.length[x];
    let word = &ball.words[w];
    if lx > word.len() {
        return false;
    }
    let target = &ball.elements[x];
    // choose positions greedily with backtracking
    fn rec(
        ball: &CoxBall,
        word: &[usize],
        pos: usize,
        remaining: usize,
        current: &crate::element::WeylElem,
        target: &crate::element::WeylElem,
    ) -> bool {
        if remaining == 0 {
            return current == target;
        }
        if word.len() - pos < remaining {
            return false;
        }
        // take word[pos] or skip it
        let taken = current.compose(ball.group.generator(word[pos]).expect("gen"));
        rec(ball, word, pos + 1, remaining - 1, &taken, target)
            || rec(ball, word, pos + 1, remaining, current, target)
    }
    rec(ball, word, 0, lx, &ball.group.identity(), target)
}

/// R-polynomials by their own recursion: R(x,x) = 1, R(x,w) = 0 unless
/// x <= w; for a left descent s of w:
/// R(x,w) = R(sx,sw) if sx < x, else (q−1) R(x,sw) + q R(sx,sw).
pub fn r_polynomial(
    ball: &CoxBall,
    cache: &mut HashMap<(usize, usize), Poly>,
    x: usize,
    w: usize,
) -> Poly {
    if x == w {
        return vec![1];
    }
    if !ball.bruhat_le(x, w) {
        return vec![0];
    }
    if let Some(p) = cache.get(&(x, w)) {
        return p.clone();
    }
    let group = &ball.group;
    let s = (0..group.generator_count())
        .find(|&g| group.is_left_descent(&ball.elements[w], g))
        .expect("descent");
    let sw = ball.index[&group.generator(s).expect("gen").compose(&ball.elements[w])];
    let sx_el = group.generator(s).expect("gen").compose(&ball.elements[x]);
    let sx = ball.index[&sx_el];
    let p = if group.is_left_descent(&ball.elements[x], s) {
        r_polynomial(ball, cache, sx, sw)
    } else {
        let a = r_polynomial(ball, cache, x, sw);
        let b = r_polynomial(ball, cache, sx, sw);
        // (q - 1) a + q b
        poly_add(&poly_sub(&poly_shift(&a, 1), &a), &poly_shift(&b, 1))
    };
    cache.insert((x, w), p.clone());
    p
}

/// Kazhdan-Lusztig polynomial from R-polynomials alone, by downward
/// induction on the interval: with l = l(w) − l(x),
/// q^l P(1/q) − P = Σ_{x < z ≤ w} R(x,z) P(z,w),
/// and deg P ≤ (l−1)/2 splits the two sides of the equation by degree.
/// The low-degree half is re-checked against −P, so an inconsistent result
/// panics rather than returning silently.
pub fn kl_via_r_polynomials(ball: &CoxBall, x: usize, w: usize) -> Poly {
    let mut r_cache: HashMap<(usize, usize), Poly> = HashMap::new();
    let mut p_cache: HashMap<usize, Poly> = HashMap::new();
    kl_inv_rec(ball, &mut r_cache, &mut p_cache, x, w)
}

fn kl_inv_rec(
    ball: &CoxBall,
    r_cache: &mut HashMap<(usize, usize), Poly>,
    p_cache: &mut HashMap<usize, Poly>,
    x: usize,
    w: usize,
) -> Poly {
    if x == w {
        return vec![1];
    }
    if !ball.bruhat_le(x, w) {
        return vec![0];
    }
    if let Some(p) = p_cache.get(&x) {
        return p.clone();
    }
    let l = ball.length[w] - ball.length[x];
    // F = sum over x < z <= w of R(x,z) P(z,w)
    let mut f: Poly = vec![0];
    for z in 0..ball.len() {
        if z == x || !ball.bruhat_le(x, z) || !ball.bruhat_le(z, w) {
            continue;
        }
        let r = r_polynomial(ball, r_cache, x, z);
        let pz = kl_inv_rec(ball, r_cache, p_cache, z, w);
        f = poly_add(&f, &poly_mul(&r, &pz));
    }
    // coefficients of P from the high part of F: a_i = [q^{l-i}] F
    let bound = (l - 1) / 2;
    let mut p = vec![0i64; bound + 1];
    for (i, coeff) in p.iter_mut().enumerate() {
        *coeff = f.get(l - i).copied().unwrap_or(0);
    }
    let p = poly_trim(p);
    // consistency: q^l P(1/q) - P must equal F exactly
    let mut lhs = vec![0i64; l + 1];
    for (i, c) in p.iter().enumerate() {
        lhs[l - i] += c;
    }
    let lhs = poly_sub(&poly_trim(lhs), &p);
    assert_eq!(poly_trim(f), lhs, "R-polynomial inversion inconsistent at ({x}, {w})");
    p_cache.insert(x, p.clone());
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if poly_is_zero(a) || poly_is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::WeylGroup;
    use crate::types::parse_type;

    fn ball(s: &str, r: usize) -> CoxBall {
        let (t, aff) = parse_type(s).unwrap();
        CoxBall::new(WeylGroup::new(t, aff).unwrap(), r)
    }

    #[test]
    fn r_polynomials_dihedral() {
        // R(e, s) = q - 1; R(e, st) = (q-1)^2
        let b = ball("A2", 3);
        let mut cache = HashMap::new();
        let e = b.id_of(&b.group.identity()).unwrap();
        let s = b.id_of(&b.group.word_to_element(&[0]).unwrap()).unwrap();
        let st = b.id_of(&b.group.word_to_element(&[0, 1]).unwrap()).unwrap();
        assert_eq!(r_polynomial(&b, &mut cache, e, s), vec![-1, 1]);
        assert_eq!(r_polynomial(&b, &mut cache, e, st), vec![1, -2, 1]);
    }

    #[test]
    fn inversion_gives_trivial_values_in_s3() {
        let b = ball("A2", 3);
        for x in 0..b.len() {
            for w in 0..b.len() {
                if b.bruhat_le(x, w) {
                    assert_eq!(kl_via_r_polynomials(&b, x, w), vec![1]);
                }
            }
        }
    }
}
