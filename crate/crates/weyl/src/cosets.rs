//! Cosets, double cosets, regularity, and the parabolic-singular index
//! posets with their anti-isomorphism.
//!
//! Extremality inside a coset is certified by exact descent tests: x is
//! minimal in W_J x iff no s in J is a left descent of x, maximal iff every
//! s in J is; for cosets x W_J the same holds with right descents. The index
//! posets read the extremal sets I_J^max/min on cosets z W_J, the convention
//! that makes their two characterizations (descent conditions vs. regular
//! double cosets) agree mechanically; disagreement would surface as
//! `ConventionMismatch`. A double coset W_{J1} z W_{J2} is regular when
//! z^{-1} W_{J1} z ∩ W_{J2} is trivial; its maximal-length element is then
//! w_{J1} d w_{J2} with d the distinguished minimal representative and the
//! lengths add.

use std::collections::HashSet;

use crate::ball::CoxBall;
use crate::element::WeylElem;
use crate::error::{Result, WeylError};
use crate::group::WeylGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Min,
    Max,
}

/// Fully enumerates the (finite) standard parabolic subgroup W_J.
pub fn parabolic_subgroup(group: &WeylGroup, j: &[usize]) -> Result<Vec<WeylElem>> {
    if group.affine && j.len() == group.generator_count() {
        return Err(WeylError::InfiniteParabolic(
            "the full affine generator set spans an infinite group".into(),
        ));
    }
    for &g in j {
        group.generator(g)?;
    }
    let mut elements = vec![group.identity()];
    let mut seen: HashSet<WeylElem> = elements.iter().cloned().collect();
    let mut frontier = elements.clone();
    let limit = 1_000_000usize;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for &g in j {
                let y = x.compose(group.generator(g)?);
                if seen.insert(y.clone()) {
                    next.push(y.clone());
                    elements.push(y);
                    if elements.len() > limit {
                        return Err(WeylError::InfiniteParabolic(format!(
                            "subgroup {j:?} exceeds the enumeration limit"
                        )));
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(elements)
}

/// The longest element of a finite standard parabolic.
pub fn longest_element(group: &WeylGroup, j: &[usize]) -> Result<WeylElem> {
    let elems = parabolic_subgroup(group, j)?;
    Ok(elems
        .into_iter()
        .max_by_key(|x| group.length(x))
        .expect("nonempty subgroup"))
}

/// Strips descents to reach the minimal representative of W_J x (side Left)
/// or x W_J (side Right).
pub fn coset_min_rep(group: &WeylGroup, j: &[usize], x: &WeylElem, side: Side) -> WeylElem {
    let mut x = x.clone();
    loop {
        let mut changed = false;
        for &g in j {
            match side {
                Side::Left => {
                    if group.is_left_descent(&x, g) {
                        x = group.generator(g).expect("gen").compose(&x);
                        changed = true;
                    }
                }
                Side::Right => {
                    if group.is_right_descent(&x, g) {
                        x = x.compose(group.generator(g).expect("gen"));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return x;
        }
    }
}

/// Distinguished minimal representative of the double coset W_{J1} x W_{J2}.
pub fn double_coset_min_rep(
    group: &WeylGroup,
    j1: &[usize],
    j2: &[usize],
    x: &WeylElem,
) -> WeylElem {
    let mut x = x.clone();
    loop {
        let stripped = coset_min_rep(group, j2, &coset_min_rep(group, j1, &x, Side::Left), Side::Right);
        if stripped == x {
            return x;
        }
        x = stripped;
    }
}

/// Extremal representatives, inside the ball, of the cosets W_J x (Left) or
/// x W_J (Right) that meet the ball. Minimality/maximality certificates are
/// exact descent tests; a maximal representative outside the ball raises
/// `UncertifiedAtRadius` with the radius that would be needed.
pub fn coset_reps(
    ball: &CoxBall,
    j: &[usize],
    side: Side,
    extremal: Extremal,
) -> Result<Vec<WeylElem>> {
    let group = &ball.group;
    let w_j = longest_element(group, j)?;
    let lw_j = group.length(&w_j);
    let mut seen: HashSet<WeylElem> = HashSet::new();
    let mut out = Vec::new();
    for x in &ball.elements {
        let min = coset_min_rep(group, j, x, side);
        if !seen.insert(min.clone()) {
            continue;
        }
        match extremal {
            Extremal::Min => out.push(min),
            Extremal::Max => {
                let max = match side {
                    Side::Left => w_j.compose(&min),
                    Side::Right => min.compose(&w_j),
                };
                let lmax = group.length(&max);
                debug_assert_eq!(lmax, lw_j + group.length(&min), "coset length additivity");
                if lmax > ball.radius {
                    return Err(WeylError::UncertifiedAtRadius {
                        radius: ball.radius,
                        needed: lmax,
                    });
                }
                out.push(max);
            }
        }
    }
    sort_elements(group, &mut out);
    Ok(out)
}

/// One double coset of (W_{J1}, W_{J2}) meeting the ball.
#[derive(Debug, Clone)]
pub struct DoubleCoset {
    pub min_rep: WeylElem,
    pub regular: bool,
    /// Size of the full double coset.
    pub size: usize,
    /// With `regular`: the maximal-length representative w_{J1} d w_{J2}.
    pub max_rep: Option<WeylElem>,
}

/// Enumerates (W_{J1}, W_{J2}) double cosets meeting the ball. Regularity is
/// the explicit conjugation-intersection test; for regular cosets the maximal
/// representative satisfies length additivity, which is asserted.
pub fn regular_double_cosets(
    ball: &CoxBall,
    j1: &[usize],
    j2: &[usize],
) -> Result<Vec<DoubleCoset>> {
    let group = &ball.group;
    let w1 = parabolic_subgroup(group, j1)?;
    let w2 = parabolic_subgroup(group, j2)?;
    let w2_set: HashSet<WeylElem> = w2.iter().cloned().collect();
    let w_j1 = longest_element(group, j1)?;
    let w_j2 = longest_element(group, j2)?;

    let mut seen: HashSet<WeylElem> = HashSet::new();
    let mut out = Vec::new();
    for x in &ball.elements {
        let d = double_coset_min_rep(group, j1, j2, x);
        if !seen.insert(d.clone()) {
            continue;
        }
        let d_inv = d.inverse();
        let stabilizer = w1
            .iter()
            .filter(|u| w2_set.contains(&d_inv.compose(u).compose(&d)))
            .count();
        let regular = stabilizer == 1;
        let size = w1.len() * w2.len() / stabilizer;
        let max_rep = if regular {
            let m = w_j1.compose(&d).compose(&w_j2);
            let lm = group.length(&m);
            let expect =
                group.length(&w_j1) + group.length(&d) + group.length(&w_j2);
            if lm != expect {
                return Err(WeylError::Invalid(format!(
                    "length additivity fails on a regular double coset: {lm} != {expect}"
                )));
            }
            Some(m)
        } else {
            None
        };
        out.push(DoubleCoset { min_rep: d, regular, size, max_rep });
    }
    out.sort_by_key(|c| element_sort_key(group, &c.min_rep));
    Ok(out)
}

/// Ψ: x ↦ w_μ x^{-1} w_ν.
pub fn psi(group: &WeylGroup, x: &WeylElem, mu: &[usize], nu: &[usize]) -> Result<WeylElem> {
    let w_mu = longest_element(group, mu)?;
    let w_nu = longest_element(group, nu)?;
    Ok(w_mu.compose(&x.inverse()).compose(&w_nu))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

/// A parabolic-singular index poset within a ball: elements plus an order
/// (Bruhat for the minus sign, opposite Bruhat for plus).
#[derive(Debug, Clone)]
pub struct IndexPoset {
    pub sign: Sign,
    pub elements: Vec<WeylElem>,
    /// le[a][b]: a ⪯ b in the poset order.
    pub le: Vec<Vec<bool>>,
}

impl IndexPoset {
    pub fn position(&self, x: &WeylElem) -> Option<usize> {
        self.elements.iter().position(|e| e == x)
    }

    /// The poset ideal generated by w (all elements ⪯ w).
    pub fn ideal(&self, w: &WeylElem) -> Result<Vec<WeylElem>> {
        let wi = self.position(w).ok_or(WeylError::ElementNotInPoset)?;
        Ok((0..self.elements.len())
            .filter(|&a| self.le[a][wi])
            .map(|a| self.elements[a].clone())
            .collect())
    }
}

/// Membership test for the minus-side index poset by characterization (a):
/// x w_μ lies in (I_ν^max)^{-1} ∩ I_μ^min, where I_J^max/min hold the
/// extremal representatives of the cosets z W_J. Inverting turns the I_ν^max
/// condition into "every s in ν is a left descent of x w_μ".
fn minus_membership_a(
    group: &WeylGroup,
    x: &WeylElem,
    mu: &[usize],
    nu: &[usize],
    w_mu: &WeylElem,
) -> bool {
    let y = x.compose(w_mu);
    let max_ok = nu.iter().all(|&g| group.is_left_descent(&y, g));
    // minimal in y W_μ: no right μ-descent
    let min_ok = mu.iter().all(|&g| !group.is_right_descent(&y, g));
    max_ok && min_ok
}

/// Membership by characterization (b): x is the maximal-length representative
/// of a regular (W_ν, W_μ) double coset.
fn minus_membership_b(
    group: &WeylGroup,
    x: &WeylElem,
    mu: &[usize],
    nu: &[usize],
    w_mu: &WeylElem,
    w_nu: &WeylElem,
    w_nu_elems: &[WeylElem],
    w_mu_set: &HashSet<WeylElem>,
) -> bool {
    let d = double_coset_min_rep(group, nu, mu, x);
    let d_inv = d.inverse();
    let regular = w_nu_elems
        .iter()
        .all(|u| u.is_identity() || !w_mu_set.contains(&d_inv.compose(u).compose(&d)));
    regular && *x == w_nu.compose(&d).compose(w_mu)
}

/// Plus-side membership by characterization (a): y w_ν ∈ (I_μ^min)^{-1} ∩
/// I_ν^max, i.e. y w_ν has no left μ-descent and every s in ν is a right
/// descent.
fn plus_membership_a(
    group: &WeylGroup,
    y: &WeylElem,
    mu: &[usize],
    nu: &[usize],
    w_nu: &WeylElem,
) -> bool {
    let z = y.compose(w_nu);
    let min_ok = mu.iter().all(|&g| !group.is_left_descent(&z, g));
    let max_ok = nu.iter().all(|&g| group.is_right_descent(&z, g));
    min_ok && max_ok
}

/// Plus-side membership by characterization (b): y is the minimal
/// representative of a regular (W_μ, W_ν) double coset.
fn plus_membership_b(
    group: &WeylGroup,
    y: &WeylElem,
    mu: &[usize],
    nu: &[usize],
    w_mu_elems: &[WeylElem],
    w_nu_set: &HashSet<WeylElem>,
) -> bool {
    let d = double_coset_min_rep(group, mu, nu, y);
    if d != *y {
        return false;
    }
    let d_inv = d.inverse();
    w_mu_elems
        .iter()
        .all(|u| u.is_identity() || !w_nu_set.contains(&d_inv.compose(u).compose(&d)))
}

/// Builds the index poset of the given sign within the ball. Both
/// characterizations are computed independently for every ball element and
/// must agree; a mismatch surfaces as `ConventionMismatch`.
pub fn parabolic_singular_poset(
    ball: &CoxBall,
    mu: &[usize],
    nu: &[usize],
    sign: Sign,
) -> Result<IndexPoset> {
    let group = &ball.group;
    let w_mu = longest_element(group, mu)?;
    let w_nu = longest_element(group, nu)?;
    let mu_elems = parabolic_subgroup(group, mu)?;
    let nu_elems = parabolic_subgroup(group, nu)?;
    let mu_set: HashSet<WeylElem> = mu_elems.iter().cloned().collect();
    let nu_set: HashSet<WeylElem> = nu_elems.iter().cloned().collect();

    let mut members = Vec::new();
    for x in &ball.elements {
        let (in_a, in_b) = match sign {
            Sign::Minus => (
                minus_membership_a(group, x, mu, nu, &w_mu),
                minus_membership_b(group, x, mu, nu, &w_mu, &w_nu, &nu_elems, &mu_set),
            ),
            Sign::Plus => (
                plus_membership_a(group, x, mu, nu, &w_nu),
                plus_membership_b(group, x, mu, nu, &mu_elems, &nu_set),
            ),
        };
        if in_a != in_b {
            return Err(WeylError::ConventionMismatch(format!(
                "element {} is in (a) = {in_a} but (b) = {in_b}",
                ball.word_of(ball.id_of(x).expect("ball element"))
            )));
        }
        if in_a {
            members.push(x.clone());
        }
    }
    sort_elements(group, &mut members);
    let n = members.len();
    let mut le = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            let br = ball.le_elements(&members[a], &members[b])?;
            le[a][b] = match sign {
                Sign::Minus => br,
                Sign::Plus => ball.le_elements(&members[b], &members[a])?,
            };
        }
    }
    Ok(IndexPoset { sign, elements: members, le })
}

fn element_sort_key(group: &WeylGroup, x: &WeylElem) -> (usize, Vec<i64>, Vec<i64>) {
    (group.length(x), x.mat.clone(), x.trans.clone())
}

fn sort_elements(group: &WeylGroup, v: &mut [WeylElem]) {
    v.sort_by_key(|x| element_sort_key(group, x));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::parse_type;

    fn ball(s: &str, r: usize) -> CoxBall {
        let (t, aff) = parse_type(s).unwrap();
        CoxBall::new(WeylGroup::new(t, aff).unwrap(), r)
    }

    fn words(ball: &CoxBall, v: &[WeylElem]) -> Vec<String> {
        v.iter().map(|x| ball.word_of(ball.id_of(x).unwrap())).collect()
    }

    #[test]
    fn s3_coset_representatives() {
        // J = {s1}: min reps {e, s2, s2.s1}, max reps {s1, s1.s2, s1.s2.s1}
        let b = ball("A2", 3);
        let mins = coset_reps(&b, &[0], Side::Left, Extremal::Min).unwrap();
        assert_eq!(words(&b, &mins), vec!["e", "s2", "s2.s1"]);
        let maxs = coset_reps(&b, &[0], Side::Left, Extremal::Max).unwrap();
        assert_eq!(words(&b, &maxs), vec!["s1", "s1.s2", "s1.s2.s1"]);
        // J empty: everything is both
        let all = coset_reps(&b, &[], Side::Left, Extremal::Min).unwrap();
        assert_eq!(all.len(), 6);
        let all_max = coset_reps(&b, &[], Side::Left, Extremal::Max).unwrap();
        assert_eq!(all_max.len(), 6);
    }

    #[test]
    fn right_coset_representatives() {
        // cosets x W_J: minimality = no right J-descent
        let b = ball("A2", 3);
        let mins = coset_reps(&b, &[1], Side::Right, Extremal::Min).unwrap();
        assert_eq!(words(&b, &mins), vec!["e", "s1", "s2.s1"]);
        let maxs = coset_reps(&b, &[1], Side::Right, Extremal::Max).unwrap();
        assert_eq!(words(&b, &maxs), vec!["s2", "s1.s2", "s1.s2.s1"]);
    }

    #[test]
    fn s3_double_cosets() {
        // (W_{s1}, W_{s2}): <s1> e <s2> of size 4 regular with max rep s1 s2,
        // and the size-2 irregular coset {s2.s1, s1.s2.s1}
        let b = ball("A2", 3);
        let cosets = regular_double_cosets(&b, &[0], &[1]).unwrap();
        assert_eq!(cosets.len(), 2);
        assert!(cosets[0].min_rep.is_identity());
        assert!(cosets[0].regular);
        assert_eq!(cosets[0].size, 4);
        let max = cosets[0].max_rep.clone().unwrap();
        assert_eq!(max, b.group.word_to_element(&[0, 1]).unwrap());
        assert!(!cosets[1].regular);
        assert_eq!(cosets[1].size, 2);
        assert!(cosets[1].max_rep.is_none());
    }

    #[test]
    fn self_double_coset_is_irregular() {
        let b = ball("A2", 3);
        let cosets = regular_double_cosets(&b, &[0], &[0]).unwrap();
        let identity_coset =
            cosets.iter().find(|c| c.min_rep.is_identity()).expect("identity coset");
        assert!(!identity_coset.regular);
    }

    #[test]
    fn empty_parabolic_singletons_regular() {
        let b = ball("A2", 2);
        let cosets = regular_double_cosets(&b, &[], &[]).unwrap();
        for c in &cosets {
            assert!(c.regular);
            assert_eq!(c.size, 1);
        }
    }

    #[test]
    fn psi_examples() {
        let b = ball("A2", 3);
        // μ = ν = ∅: psi = inverse
        let x = b.group.word_to_element(&[0, 1]).unwrap();
        assert_eq!(psi(&b.group, &x, &[], &[]).unwrap(), x.inverse());
        // μ = {s1}, ν = {s2}, x = s2.s1 -> e
        let x = b.group.word_to_element(&[1, 0]).unwrap();
        assert!(psi(&b.group, &x, &[0], &[1]).unwrap().is_identity());
        // μ = ν = {s1}: psi(s1) = s1
        let s1 = b.group.word_to_element(&[0]).unwrap();
        assert_eq!(psi(&b.group, &s1, &[0], &[0]).unwrap(), s1);
    }

    #[test]
    fn s3_index_posets() {
        let b = ball("A2", 3);
        let minus = parabolic_singular_poset(&b, &[0], &[1], Sign::Minus).unwrap();
        assert_eq!(words(&b, &minus.elements), vec!["s2.s1"]);
        let plus = parabolic_singular_poset(&b, &[0], &[1], Sign::Plus).unwrap();
        assert_eq!(words(&b, &plus.elements), vec!["e"]);
        // psi maps the minus poset onto the plus poset
        let y = psi(&b.group, &minus.elements[0], &[0], &[1]).unwrap();
        assert_eq!(y, plus.elements[0]);
    }

    #[test]
    fn empty_parameters_give_whole_ball() {
        let b = ball("A2", 3);
        let minus = parabolic_singular_poset(&b, &[], &[], Sign::Minus).unwrap();
        assert_eq!(minus.elements.len(), 6);
        let plus = parabolic_singular_poset(&b, &[], &[], Sign::Plus).unwrap();
        assert_eq!(plus.elements.len(), 6);
        // ideal of a minimal element in the opposite order is a coideal
        let w = b.group.word_to_element(&[0, 1]).unwrap();
        let ideal_minus = minus.ideal(&w).unwrap();
        assert_eq!(ideal_minus.len(), 4); // {e, s1, s2, s1s2}
        let ideal_plus = plus.ideal(&w).unwrap();
        // opposite order: everything above s1.s2 in Bruhat
        assert_eq!(ideal_plus.len(), 2); // {s1s2, s1s2s1}
    }

    #[test]
    fn ideal_of_minimal_element_is_singleton() {
        let b = ball("A2", 3);
        let minus = parabolic_singular_poset(&b, &[], &[], Sign::Minus).unwrap();
        let e = b.group.identity();
        assert_eq!(minus.ideal(&e).unwrap().len(), 1);
        // unknown element errors
        let foreign = ball("A2", 3).group.word_to_element(&[0]).unwrap();
        assert!(minus.ideal(&foreign).is_ok());
        let not_in = parabolic_singular_poset(&b, &[0], &[1], Sign::Minus).unwrap();
        assert_eq!(not_in.ideal(&e).unwrap_err(), WeylError::ElementNotInPoset);
    }
}
