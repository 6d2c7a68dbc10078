//! Finite abelian groups given by a fixed cyclic decomposition
//! `Z/M_1 ⊕ … ⊕ Z/M_σ`, their elements and characters.
//!
//! Character values are always returned at the exponent `L = lcm(M_ℓ)`.

use crate::cyclotomic::{lcm, Cyclotomic};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest group order accepted by [`AbelianGroup::automorphisms`].
pub const AUT_ORDER_BOUND: u64 = 128;
/// Cap on the number of automorphisms enumerated.
pub const AUT_COUNT_BOUND: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("malformed group spec `{0}`")]
    Parse(String),
    #[error("cyclic factors must be at least 2, got {0:?}")]
    BadFactor(Vec<u32>),
    #[error("exponent vector of length {got} for a group with {expected} factors")]
    Mismatch { expected: usize, got: usize },
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
}

/// Exponent vector `(n_1, …, n_σ)`, reduced mod `M_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u32>);

/// Character `y_ℓ ↦ ζ_{M_ℓ}^{c_ℓ}`, stored as `(c_1, …, c_σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<u32>);

/// Automorphism given by the images of the generators `y_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Automorphism(pub Vec<GroupElement>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self, GroupError> {
        if factors.is_empty() || factors.iter().any(|&m| m < 2) {
            return Err(GroupError::BadFactor(factors));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn cyclic(m: u32) -> Self {
        Self::new(vec![m]).expect("cyclic order must be at least 2")
    }

    /// Parses `"M1,M2,…"`.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let factors: Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        Self::new(factors.map_err(|_| GroupError::Parse(s.to_string()))?)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&m| m as u64).product()
    }

    /// `L = lcm(M_ℓ)`, the level of every character value.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().fold(1u64, |a, &m| lcm(a, m as u64)) as u32
    }

    pub fn check(&self, v: &[u32]) -> Result<(), GroupError> {
        if v.len() != self.rank() {
            return Err(GroupError::Mismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn element(&self, exps: &[i64]) -> GroupElement {
        GroupElement(self.reduce(exps))
    }

    /// The generator `y_ℓ`.
    pub fn generator(&self, l: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        v[l] = 1 % self.factors[l];
        GroupElement(v)
    }

    fn reduce(&self, exps: &[i64]) -> Vec<u32> {
        exps.iter()
            .zip(&self.factors)
            .map(|(&e, &m)| e.rem_euclid(m as i64) as u32)
            .collect()
    }

    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, m)| (m - x) % m)
                .collect(),
        )
    }

    pub fn power(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &m)| (x as i64 * k).rem_euclid(m as i64) as u32)
                .collect(),
        )
    }

    pub fn elem_order(&self, a: &GroupElement) -> u32 {
        a.0.iter()
            .zip(&self.factors)
            .map(|(&x, &m)| m / crate::cyclotomic::gcd(x as u64, m as u64) as u32)
            .fold(1u64, |acc, o| lcm(acc, o as u64)) as u32
    }

    /// Position of an element in the lexicographic enumeration.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &m)| acc * m as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut v = vec![0u32; self.rank()];
        for l in (0..self.rank()).rev() {
            let m = self.factors[l] as usize;
            v[l] = (idx % m) as u32;
            idx /= m;
        }
        GroupElement(v)
    }

    /// All elements, lexicographic in exponents.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    pub fn character(&self, exps: &[i64]) -> Character {
        Character(self.reduce(exps))
    }

    /// All characters, lexicographic in exponents.
    pub fn characters(&self) -> Vec<Character> {
        self.elements().into_iter().map(|g| Character(g.0)).collect()
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        Character(self.compose(&GroupElement(a.0.clone()), &GroupElement(b.0.clone())).0)
    }

    pub fn char_inverse(&self, a: &Character) -> Character {
        Character(self.inverse(&GroupElement(a.0.clone())).0)
    }

    pub fn char_power(&self, a: &Character, k: i64) -> Character {
        Character(self.power(&GroupElement(a.0.clone()), k).0)
    }

    pub fn char_order(&self, a: &Character) -> u32 {
        self.elem_order(&GroupElement(a.0.clone()))
    }

    /// `e` with `χ(g) = ζ_L^e`.
    pub fn eval_exponent(&self, chi: &Character, g: &GroupElement) -> u32 {
        let l = self.exponent() as u64;
        let e = chi
            .0
            .iter()
            .zip(&g.0)
            .zip(&self.factors)
            .map(|((&c, &n), &m)| (c as u64 * n as u64 % m as u64) * (l / m as u64))
            .sum::<u64>();
        (e % l) as u32
    }

    pub fn evaluate(&self, chi: &Character, g: &GroupElement) -> Result<Cyclotomic, GroupError> {
        self.check(&chi.0)?;
        self.check(&g.0)?;
        Ok(Cyclotomic::root_of_unity(
            self.exponent(),
            self.eval_exponent(chi, g) as i64,
        ))
    }

    /// The character with prescribed values `ζ_L^{e_ℓ}` on the generators,
    /// if one exists.
    pub fn character_from_exponents(&self, gen_values: &[u32]) -> Option<Character> {
        let l = self.exponent();
        let mut c = Vec::with_capacity(self.rank());
        for (&e, &m) in gen_values.iter().zip(&self.factors) {
            let step = l / m;
            if e % step != 0 {
                return None;
            }
            c.push((e / step) % m);
        }
        Some(Character(c))
    }

    pub fn apply(&self, phi: &Automorphism, g: &GroupElement) -> GroupElement {
        let mut acc = self.identity();
        for (img, &n) in phi.0.iter().zip(&g.0) {
            acc = self.compose(&acc, &self.power(img, n as i64));
        }
        acc
    }

    pub fn compose_aut(&self, outer: &Automorphism, inner: &Automorphism) -> Automorphism {
        Automorphism(inner.0.iter().map(|g| self.apply(outer, g)).collect())
    }

    pub fn identity_aut(&self) -> Automorphism {
        Automorphism((0..self.rank()).map(|l| self.generator(l)).collect())
    }

    pub fn invert_aut(&self, phi: &Automorphism) -> Automorphism {
        let mut inv = vec![self.identity(); self.rank()];
        let mut found = vec![false; self.rank()];
        for g in self.elements() {
            let img = self.apply(phi, &g);
            for l in 0..self.rank() {
                if !found[l] && img == self.generator(l) {
                    inv[l] = g.clone();
                    found[l] = true;
                }
            }
        }
        assert!(found.iter().all(|&f| f), "not an automorphism");
        Automorphism(inv)
    }

    /// `χ ∘ φ`.
    pub fn precompose(&self, chi: &Character, phi: &Automorphism) -> Character {
        let vals: Vec<u32> = phi.0.iter().map(|img| self.eval_exponent(chi, img)).collect();
        self.character_from_exponents(&vals)
            .expect("composite of a character with a homomorphism is a character")
    }

    /// Every automorphism, by backtracking over generator images: the images
    /// of `y_1..y_k` must generate a subgroup of order `M_1⋯M_k`.
    pub fn automorphisms(&self) -> Result<Vec<Automorphism>, GroupError> {
        if self.order() > AUT_ORDER_BOUND {
            return Err(GroupError::BoundExceeded(format!(
                "|Γ| = {} > {}",
                self.order(),
                AUT_ORDER_BOUND
            )));
        }
        let elems = self.elements();
        let mut out = Vec::new();
        let mut chosen: Vec<GroupElement> = Vec::new();
        let mut span = vec![self.identity()];
        self.aut_search(&elems, &mut chosen, &mut span, &mut out)?;
        out.sort();
        Ok(out)
    }

    fn aut_search(
        &self,
        elems: &[GroupElement],
        chosen: &mut Vec<GroupElement>,
        span: &mut Vec<GroupElement>,
        out: &mut Vec<Automorphism>,
    ) -> Result<(), GroupError> {
        let k = chosen.len();
        if k == self.rank() {
            if out.len() >= AUT_COUNT_BOUND {
                return Err(GroupError::BoundExceeded(format!(
                    "more than {AUT_COUNT_BOUND} automorphisms"
                )));
            }
            out.push(Automorphism(chosen.clone()));
            return Ok(());
        }
        let m = self.factors[k];
        for g in elems {
            if self.elem_order(g) != m {
                continue;
            }
            let mut new_span = Vec::with_capacity(span.len() * m as usize);
            for j in 0..m {
                let gj = self.power(g, j as i64);
                for s in span.iter() {
                    new_span.push(self.compose(s, &gj));
                }
            }
            new_span.sort();
            new_span.dedup();
            if new_span.len() != span.len() * m as usize {
                continue;
            }
            chosen.push(g.clone());
            let mut ns = new_span;
            self.aut_search(elems, chosen, &mut ns, out)?;
            chosen.pop();
        }
        Ok(())
    }

    /// The `"M1,M2,…"` form accepted by [`AbelianGroup::parse`].
    pub fn spec_string(&self) -> String {
        self.factors
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z/{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "χ({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[u32]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    /// Every cyclic decomposition with order at most `bound`, factors
    /// non-decreasing.
    fn small_groups(bound: u64) -> Vec<AbelianGroup> {
        fn rec(min: u32, prod: u64, bound: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            for m in min..=bound as u32 {
                if prod * m as u64 > bound {
                    break;
                }
                cur.push(m);
                rec(m, prod * m as u64, bound, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(2, 1, bound, &mut Vec::new(), &mut out);
        out.into_iter().map(|f| AbelianGroup::new(f).unwrap()).collect()
    }

    #[test]
    fn basic_ops() {
        let gr = AbelianGroup::parse("9,3").unwrap();
        assert_eq!(gr.elem_order(&g(&[1, 0])), 9);
        assert_eq!(gr.elem_order(&gr.identity()), 1);
        assert_eq!(gr.elem_order(&g(&[3, 1])), 3);
        assert_eq!(gr.exponent(), 9);
        let h = AbelianGroup::parse("3,5").unwrap();
        assert_eq!(h.characters().len(), 15);
        assert_eq!(h.exponent(), 15);
        assert_eq!(gr.elements()[1], g(&[0, 1]));
        for (i, e) in gr.elements().iter().enumerate() {
            assert_eq!(gr.index_of(e), i);
        }
        assert!(AbelianGroup::parse("3,1").is_err());
        assert!(AbelianGroup::parse("x").is_err());
    }

    #[test]
    fn evaluation_examples() {
        let z3 = AbelianGroup::cyclic(3);
        assert_eq!(
            z3.evaluate(&Character(vec![1]), &g(&[1])).unwrap(),
            Cyclotomic::root_of_unity(3, 1)
        );
        assert!(z3.evaluate(&z3.trivial_character(), &g(&[2])).unwrap().is_one());
        let z99 = AbelianGroup::parse("9,9").unwrap();
        assert_eq!(
            z99.evaluate(&Character(vec![2, 3]), &g(&[1, 1])).unwrap(),
            Cyclotomic::root_of_unity(9, 5)
        );
        assert!(z99.evaluate(&Character(vec![1]), &g(&[1, 1])).is_err());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(AbelianGroup::cyclic(5).automorphisms().unwrap().len(), 4);
        assert_eq!(AbelianGroup::cyclic(9).automorphisms().unwrap().len(), 6);
        let z33 = AbelianGroup::parse("3,3").unwrap();
        let auts = z33.automorphisms().unwrap();
        // independent count: invertible 2x2 matrices over F_3
        let mut det_nonzero = 0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        if (a * d + 9 - b * c) % 3 != 0 {
                            det_nonzero += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(auts.len(), det_nonzero);
        assert_eq!(auts.len(), 48);
        assert!(AbelianGroup::parse("2,2,2,2,2,2,2,2").unwrap().automorphisms().is_err());
    }

    #[test]
    fn automorphisms_closed_and_invertible() {
        for gr in [AbelianGroup::parse("3,3").unwrap(), AbelianGroup::parse("2,4").unwrap()] {
            let auts = gr.automorphisms().unwrap();
            let set: std::collections::HashSet<_> = auts.iter().cloned().collect();
            for a in &auts {
                let inv = gr.invert_aut(a);
                assert_eq!(gr.compose_aut(a, &inv), gr.identity_aut());
                for b in auts.iter().take(8) {
                    assert!(set.contains(&gr.compose_aut(a, b)));
                }
            }
        }
    }

    #[test]
    fn precompose_matches_evaluation() {
        let gr = AbelianGroup::parse("9,3").unwrap();
        let auts = gr.automorphisms().unwrap();
        for phi in auts.iter().step_by(7) {
            for chi in gr.characters().iter().step_by(5) {
                let c = gr.precompose(chi, phi);
                for x in gr.elements() {
                    assert_eq!(gr.eval_exponent(&c, &x), gr.eval_exponent(chi, &gr.apply(phi, &x)));
                }
            }
        }
    }

    #[test]
    fn characters_separate_points_exhaustive() {
        for gr in small_groups(60) {
            let chars = gr.characters();
            for x in gr.elements() {
                if x == gr.identity() {
                    continue;
                }
                assert!(
                    chars.iter().any(|c| gr.eval_exponent(c, &x) != 0),
                    "{gr}: {x} not separated"
                );
            }
        }
    }

    #[test]
    fn character_values_have_element_order_exhaustive() {
        for gr in small_groups(60) {
            let l = gr.exponent();
            for x in gr.elements() {
                let o = gr.elem_order(&x);
                for c in gr.characters() {
                    assert_eq!(gr.eval_exponent(&c, &x) as u64 * o as u64 % l as u64, 0);
                }
            }
        }
        // exact check through the field on a few groups
        for gr in small_groups(12) {
            for x in gr.elements() {
                let o = gr.elem_order(&x) as i64;
                for c in gr.characters() {
                    assert!(gr.evaluate(&c, &x).unwrap().pow(o).is_one());
                }
            }
        }
    }

    #[test]
    fn evaluation_is_bimultiplicative() {
        let gr = AbelianGroup::parse("4,6").unwrap();
        let l = gr.exponent();
        let els = gr.elements();
        for a in els.iter().step_by(5) {
            for b in els.iter().step_by(7) {
                for c in gr.characters().iter().step_by(3) {
                    let lhs = gr.eval_exponent(c, &gr.compose(a, b));
                    let rhs = (gr.eval_exponent(c, a) + gr.eval_exponent(c, b)) % l;
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
