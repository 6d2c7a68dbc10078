//! Coefficient rings for rewriting: the cyclotomic field itself and
//! polynomials over it in finitely many indeterminates.

use crate::cyclotomic::Cyclotomic;
use std::collections::BTreeMap;
use std::fmt::Debug;

/// Commutative ring of scalars used by the rewriting engine.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_cyc(c: &Cyclotomic) -> Self;
}

impl Coeff for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::zero()
    }
    fn one() -> Self {
        Cyclotomic::one()
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_cyc(c: &Cyclotomic) -> Self {
        c.clone()
    }
}

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(usize, u32)>;

/// Polynomial with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Cyclotomic>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<usize, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *out.entry(v).or_insert(0) += e;
    }
    out.into_iter().collect()
}

impl Poly {
    pub fn var(v: usize) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(v, 1)], Cyclotomic::one());
        Poly { terms }
    }

    pub fn constant(c: &Cyclotomic) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c.clone());
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    /// The variable when `self = c·x` for a nonzero constant `c`.
    pub fn as_scaled_var(&self) -> Option<usize> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, _) = self.terms.iter().next().unwrap();
        match m.as_slice() {
            [(v, 1)] => Some(*v),
            _ => None,
        }
    }

    /// Divides by the coefficient of the largest monomial.
    pub fn monic(&self) -> Poly {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, lead)) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                Poly {
                    terms: self.terms.iter().map(|(m, c)| (m.clone(), c * &inv)).collect(),
                }
            }
        }
    }

    pub fn eval(&self, values: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                t = &t * &values[v].pow(e as i64);
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .map(|&(v, e)| {
                        if e == 1 {
                            names[v].clone()
                        } else {
                            format!("{}^{}", names[v], e)
                        }
                    })
                    .collect();
                match (vars.is_empty(), c.is_one()) {
                    (true, _) => format!("{c}"),
                    (false, true) => vars.join("*"),
                    (false, false) => format!("({c})*{}", vars.join("*")),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(&Cyclotomic::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            let s = match terms.get(m) {
                Some(x) => x + c,
                None => c.clone(),
            };
            if s.is_zero() {
                terms.remove(m);
            } else {
                terms.insert(m.clone(), s);
            }
        }
        Poly { terms }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut acc = Poly::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut terms = BTreeMap::new();
                terms.insert(mono_mul(m1, m2), c1 * c2);
                acc = acc.add(&Poly { terms });
            }
        }
        acc
    }
    fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn from_cyc(c: &Cyclotomic) -> Self {
        Poly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_laws_and_eval() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let p = x.add(&y).mul(&x.add(&y.neg()));
        let q = x.mul(&x).add(&y.mul(&y).neg());
        assert_eq!(p, q);
        let vals = [Cyclotomic::from_int(2), z3.clone()];
        assert_eq!(p.eval(&vals), &Cyclotomic::from_int(4) - &(&z3 * &z3));
        assert!(x.add(&x.neg()).is_zero());
        assert_eq!(Poly::constant(&z3).mul(&x).as_scaled_var(), Some(0));
        assert_eq!(q.as_scaled_var(), None);
    }

    #[test]
    fn rendering() {
        let names = vec!["mu_1".to_string(), "lambda_12".to_string()];
        let p = Poly::var(1).mul(&Poly::constant(&Cyclotomic::from_int(3)));
        assert_eq!(p.render(&names), "(3)*lambda_12");
        assert_eq!(p.monic().render(&names), "lambda_12");
    }
}
