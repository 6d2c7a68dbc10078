//! Noncommutative rewriting for presentations of lifting type.
//!
//! Letters are `h_1 < … < h_σ < a_1 < … < a_θ`, stored as bytes `0..σ+θ`.
//! Monomials are ordered by their `a`-part in length-lexicographic order,
//! ties broken by the whole word in length-lexicographic order. Every rule
//! rewrites its left side into strictly smaller monomials, so reduction
//! terminates.

mod overlaps;
mod poly;

pub use overlaps::{check_overlaps, reference_constraints, OverlapFamily, OverlapReport, OverlapResult};
pub use poly::{Coeff, Monomial, Poly};

use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::cyclotomic::Cyclotomic;
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

pub type Word = Vec<u8>;
/// Linear combination of words.
pub type Combo<C> = BTreeMap<Word, C>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("invalid presentation data: {0}")]
    Invalid(String),
    #[error("rule {0} does not decrease the monomial order")]
    NotDecreasing(String),
    #[error("presentation is not confluent: {0}")]
    NotConfluent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    /// `h_ℓ^{M_ℓ} → 1`
    HPower(usize),
    /// `h_ℓ h_t → h_t h_ℓ` for `t < ℓ`, stored as `(ℓ, t)`.
    HCommute(usize, usize),
    /// `a_i h_ℓ → χ_i(y_ℓ)^{-1} h_ℓ a_i`, stored as `(i, ℓ)`.
    Action(usize, usize),
    /// `a_i^{N_i} → μ_i(1 - g_i^{N_i})`
    APower(usize),
    /// `a_j a_i → χ_i(g_j) a_i a_j + λ_{ij}(1 - g_i g_j)` for `i < j`,
    /// stored as `(j, i)`.
    ACommute(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Rule<C> {
    pub kind: RuleKind,
    pub lhs: Word,
    pub rhs: Vec<(Word, C)>,
}

/// Group, group-likes `g_i` and characters `χ_i` underlying a lifting
/// presentation. The letters `h_ℓ` stand for the generators of the cyclic
/// factors of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingShape {
    pub group: AbelianGroup,
    pub g: Vec<GroupElement>,
    pub chi: Vec<Character>,
}

impl LiftingShape {
    pub fn theta(&self) -> usize {
        self.g.len()
    }

    pub fn sigma(&self) -> usize {
        self.group.rank()
    }

    /// `χ(g)`.
    pub fn eval(&self, chi: &Character, g: &GroupElement) -> Cyclotomic {
        self.group.evaluate(chi, g).expect("shape elements belong to the group")
    }

    pub fn q(&self, i: usize) -> Cyclotomic {
        self.eval(&self.chi[i], &self.g[i])
    }

    /// Order of `q_i`.
    pub fn n(&self, i: usize) -> u32 {
        self.q(i).order().expect("character values are roots of unity")
    }

    /// Names of the scalar indeterminates: `mu_i` then `lambda_ij`, `i < j`.
    pub fn scalar_names(&self) -> Vec<String> {
        let t = self.theta();
        let mut out: Vec<String> = (1..=t).map(|i| format!("mu_{i}")).collect();
        for i in 0..t {
            for j in i + 1..t {
                out.push(format!("lambda_{}{}", i + 1, j + 1));
            }
        }
        out
    }

    /// Position of `λ_{ij}` among the scalar indeterminates.
    pub fn lambda_index(&self, i: usize, j: usize) -> usize {
        let t = self.theta();
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        t + (0..i).map(|k| t - k - 1).sum::<usize>() + (j - i - 1)
    }

    fn check(&self) -> Result<(), RewriteError> {
        if self.g.len() != self.chi.len() {
            return Err(RewriteError::Invalid(format!(
                "{} group-likes and {} characters",
                self.g.len(),
                self.chi.len()
            )));
        }
        for (g, c) in self.g.iter().zip(&self.chi) {
            self.group
                .check(&g.0)
                .and_then(|_| self.group.check(&c.0))
                .map_err(|e| RewriteError::Invalid(e.to_string()))?;
        }
        for i in 0..self.theta() {
            if self.n(i) < 2 {
                return Err(RewriteError::Invalid(format!("q_{} = 1", i + 1)));
            }
        }
        Ok(())
    }
}

/// The scalars `μ_i` and `λ_{ij}` (`i < j`, zero when absent).
#[derive(Clone, Debug, PartialEq)]
pub struct Scalars<C> {
    pub mu: Vec<C>,
    pub lambda: BTreeMap<(usize, usize), C>,
}

impl<C: Coeff> Scalars<C> {
    pub fn zero(theta: usize) -> Self {
        Scalars {
            mu: vec![C::zero(); theta],
            lambda: BTreeMap::new(),
        }
    }

    pub fn lambda(&self, i: usize, j: usize) -> C {
        let key = if i < j { (i, j) } else { (j, i) };
        self.lambda.get(&key).cloned().unwrap_or_else(C::zero)
    }
}

impl Scalars<Cyclotomic> {
    /// Values in the order of [`LiftingShape::scalar_names`].
    pub fn values(&self, shape: &LiftingShape) -> Vec<Cyclotomic> {
        let t = shape.theta();
        let mut out = self.mu.clone();
        for i in 0..t {
            for j in i + 1..t {
                out.push(self.lambda(i, j));
            }
        }
        out
    }
}

impl Scalars<Poly> {
    /// Every `μ_i` and `λ_{ij}` an independent indeterminate.
    pub fn symbolic(shape: &LiftingShape) -> Self {
        let t = shape.theta();
        let mu = (0..t).map(Poly::var).collect();
        let mut lambda = BTreeMap::new();
        for i in 0..t {
            for j in i + 1..t {
                lambda.insert((i, j), Poly::var(shape.lambda_index(i, j)));
            }
        }
        Scalars { mu, lambda }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug)]
pub struct Presentation<C> {
    shape: LiftingShape,
    scalars: Scalars<C>,
    h_orders: Vec<u32>,
    a_orders: Vec<u32>,
    rules: Vec<Rule<C>>,
    by_first: Vec<Vec<usize>>,
}

fn add_term<C: Coeff>(acc: &mut Combo<C>, w: Word, c: &C) {
    if c.is_zero() {
        return;
    }
    let s = match acc.get(&w) {
        Some(x) => x.add(c),
        None => c.clone(),
    };
    if s.is_zero() {
        acc.remove(&w);
    } else {
        acc.insert(w, s);
    }
}

fn length_lex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl<C: Coeff> Presentation<C> {
    /// The presentation with relations `h^M = 1`, commuting `h`'s, the
    /// action of the `h`'s on the `a`'s, the power relations with `μ` and
    /// the commutation relations with `λ`.
    pub fn lifting(shape: LiftingShape, scalars: Scalars<C>) -> Result<Self, RewriteError> {
        shape.check()?;
        let (s, t) = (shape.sigma(), shape.theta());
        if scalars.mu.len() != t {
            return Err(RewriteError::Invalid(format!("{} values of mu for rank {t}", scalars.mu.len())));
        }
        if s + t > u8::MAX as usize {
            return Err(RewriteError::Invalid("alphabet too large".into()));
        }
        let h_orders = shape.group.factors().to_vec();
        let a_orders: Vec<u32> = (0..t).map(|i| shape.n(i)).collect();
        let gw = |g: &GroupElement| -> Word {
            let mut w = Word::new();
            for (l, &e) in g.0.iter().enumerate() {
                w.extend(std::iter::repeat_n(l as u8, e as usize));
            }
            w
        };
        let cyc = |c: Cyclotomic| C::from_cyc(&c);
        let mut rules = Vec::new();
        for l in 0..s {
            rules.push(Rule {
                kind: RuleKind::HPower(l),
                lhs: vec![l as u8; h_orders[l] as usize],
                rhs: vec![(Word::new(), C::one())],
            });
            for tt in 0..l {
                rules.push(Rule {
                    kind: RuleKind::HCommute(l, tt),
                    lhs: vec![l as u8, tt as u8],
                    rhs: vec![(vec![tt as u8, l as u8], C::one())],
                });
            }
        }
        let combo_rhs = |terms: Vec<(Word, C)>| -> Vec<(Word, C)> {
            let mut acc = Combo::new();
            for (w, c) in terms {
                add_term(&mut acc, w, &c);
            }
            acc.into_iter().collect()
        };
        for i in 0..t {
            let ai = (s + i) as u8;
            for l in 0..s {
                let c = shape.eval(&shape.chi[i], &shape.group.generator(l)).inv().expect("root of unity");
                rules.push(Rule {
                    kind: RuleKind::Action(i, l),
                    lhs: vec![ai, l as u8],
                    rhs: vec![(vec![l as u8, ai], cyc(c))],
                });
            }
            let gn = shape.group.power(&shape.g[i], a_orders[i] as i64);
            let mu = &scalars.mu[i];
            rules.push(Rule {
                kind: RuleKind::APower(i),
                lhs: vec![ai; a_orders[i] as usize],
                rhs: combo_rhs(vec![(Word::new(), mu.clone()), (gw(&gn), mu.neg())]),
            });
        }
        for j in 0..t {
            for i in 0..j {
                let (ai, aj) = ((s + i) as u8, (s + j) as u8);
                let c = shape.eval(&shape.chi[i], &shape.g[j]);
                let gij = shape.group.compose(&shape.g[i], &shape.g[j]);
                let lam = scalars.lambda(i, j);
                rules.push(Rule {
                    kind: RuleKind::ACommute(j, i),
                    lhs: vec![aj, ai],
                    rhs: combo_rhs(vec![
                        (vec![ai, aj], cyc(c)),
                        (Word::new(), lam.clone()),
                        (gw(&gij), lam.neg()),
                    ]),
                });
            }
        }
        let mut by_first = vec![Vec::new(); s + t];
        for (k, r) in rules.iter().enumerate() {
            by_first[r.lhs[0] as usize].push(k);
        }
        let p = Presentation {
            shape,
            scalars,
            h_orders,
            a_orders,
            rules,
            by_first,
        };
        for r in &p.rules {
            if r.rhs.iter().any(|(w, _)| p.compare(w, &r.lhs) != Ordering::Less) {
                return Err(RewriteError::NotDecreasing(p.render_word(&r.lhs)));
            }
        }
        Ok(p)
    }

    pub fn shape(&self) -> &LiftingShape {
        &self.shape
    }

    pub fn scalars(&self) -> &Scalars<C> {
        &self.scalars
    }

    pub fn rules(&self) -> &[Rule<C>] {
        &self.rules
    }

    pub fn sigma(&self) -> usize {
        self.h_orders.len()
    }

    pub fn theta(&self) -> usize {
        self.a_orders.len()
    }

    pub fn h_orders(&self) -> &[u32] {
        &self.h_orders
    }

    pub fn a_orders(&self) -> &[u32] {
        &self.a_orders
    }

    fn a_part<'w>(&self, w: &'w [u8]) -> impl Iterator<Item = u8> + 'w {
        let s = self.sigma() as u8;
        w.iter().copied().filter(move |&x| x >= s)
    }

    /// The monomial order.
    pub fn compare(&self, a: &[u8], b: &[u8]) -> Ordering {
        let pa: Word = self.a_part(a).collect();
        let pb: Word = self.a_part(b).collect();
        length_lex(&pa, &pb).then_with(|| length_lex(a, b))
    }

    pub fn letter_name(&self, x: u8) -> String {
        let s = self.sigma();
        let x = x as usize;
        if x < s {
            format!("h{}", x + 1)
        } else {
            format!("a{}", x - s + 1)
        }
    }

    /// `h1^2 a1 a2`, with `1` for the empty word.
    pub fn render_word(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut k = 0;
        while k < w.len() {
            let mut e = 1;
            while k + e < w.len() && w[k + e] == w[k] {
                e += 1;
            }
            let n = self.letter_name(w[k]);
            parts.push(if e == 1 { n } else { format!("{n}^{e}") });
            k += e;
        }
        parts.join(" ")
    }

    /// Parses the output of [`render_word`](Self::render_word).
    pub fn parse_word(&self, s: &str) -> Result<Word, RewriteError> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::new());
        }
        let mut out = Word::new();
        for tok in s.split_whitespace() {
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<usize>().map_err(|_| RewriteError::Invalid(tok.into()))?),
                None => (tok, 1),
            };
            let letter = (0..(self.sigma() + self.theta()) as u8)
                .find(|&x| self.letter_name(x) == name)
                .ok_or_else(|| RewriteError::Invalid(format!("unknown letter `{name}`")))?;
            out.extend(std::iter::repeat_n(letter, e));
        }
        Ok(out)
    }

    pub fn word_of_group_element(&self, g: &GroupElement) -> Word {
        let mut w = Word::new();
        for (l, &e) in g.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(l as u8, e as usize));
        }
        w
    }

    /// Leftmost or rightmost occurrence of a rule's left side.
    pub fn find_redex(&self, w: &[u8], strategy: Strategy) -> Option<(usize, usize)> {
        let hit = |p: usize| {
            self.by_first[w[p] as usize]
                .iter()
                .find(|&&r| w[p..].starts_with(&self.rules[r].lhs))
                .map(|&r| (p, r))
        };
        match strategy {
            Strategy::Leftmost => (0..w.len()).find_map(hit),
            Strategy::Rightmost => (0..w.len()).rev().find_map(hit),
        }
    }

    pub fn is_irreducible(&self, w: &[u8]) -> bool {
        self.find_redex(w, Strategy::Leftmost).is_none()
    }

    /// Irreducible monomials `h^r a^s`, ordered by the `a`-exponents first
    /// and then by the `h`-exponents, both lexicographically.
    pub fn irreducible_monomials(&self) -> Vec<Word> {
        let a_exps = exponent_tuples(&self.a_orders);
        let h_exps = exponent_tuples(&self.h_orders);
        let s = self.sigma();
        let mut out = Vec::with_capacity(a_exps.len() * h_exps.len());
        for ae in &a_exps {
            for he in &h_exps {
                let mut w = Word::new();
                for (l, &e) in he.iter().enumerate() {
                    w.extend(std::iter::repeat_n(l as u8, e as usize));
                }
                for (i, &e) in ae.iter().enumerate() {
                    w.extend(std::iter::repeat_n((s + i) as u8, e as usize));
                }
                out.push(w);
            }
        }
        out
    }

    /// Upper bound on the length of any reduction sequence starting at `w`.
    ///
    /// While the `a`-part is fixed the triple (number of `h`'s, pairs
    /// `a … h`, inversions among the `h`'s) decreases lexicographically;
    /// the `a`-part itself only decreases.
    pub fn chain_bound(&self, w: &[u8]) -> u128 {
        let s = self.sigma();
        let t = self.theta() as u128;
        let phi: Word = self.a_part(w).collect();
        let mut a_count: u128 = (0..phi.len() as u32).map(|k| t.saturating_pow(k)).fold(0, u128::saturating_add);
        let mut rank: u128 = 0;
        for &x in &phi {
            rank = rank.saturating_mul(t).saturating_add((x as usize - s) as u128);
        }
        a_count = a_count.saturating_add(rank).saturating_add(1);
        let added = self
            .rules
            .iter()
            .filter(|r| matches!(r.kind, RuleKind::APower(_) | RuleKind::ACommute(..)))
            .flat_map(|r| r.rhs.iter().map(|(w, _)| w.iter().filter(|&&x| (x as usize) < s).count()))
            .max()
            .unwrap_or(0) as u128;
        let h0 = w.iter().filter(|&&x| (x as usize) < s).count() as u128;
        let hmax = h0.saturating_add(a_count.saturating_mul(added));
        let la = phi.len() as u128;
        let phase = (hmax + 1)
            .saturating_mul(hmax.saturating_mul(la) + 1)
            .saturating_mul(hmax.saturating_mul(hmax) + 1);
        a_count.saturating_mul(phase.saturating_add(1))
    }
}

impl Presentation<Cyclotomic> {
    /// Rules as `[lhs, [[word, coefficient], …]]` pairs.
    pub fn to_json(&self) -> Value {
        let rules: Vec<Value> = self
            .rules
            .iter()
            .map(|r| {
                let rhs: Vec<Value> = r
                    .rhs
                    .iter()
                    .map(|(w, c)| json!([self.render_word(w), c.to_string()]))
                    .collect();
                json!([self.render_word(&r.lhs), rhs])
            })
            .collect();
        let letters: Vec<String> = (0..(self.sigma() + self.theta()) as u8).map(|x| self.letter_name(x)).collect();
        json!({
            "group": self.shape.group.spec_string(),
            "letters": letters,
            "rules": rules,
        })
    }

    /// Irreducible monomials, after confirming confluence.
    pub fn irreducible_basis(&self) -> Result<Vec<Word>, RewriteError> {
        let report = check_overlaps(self, false);
        if let Some(bad) = report.overlaps.iter().find(|o| !o.resolved) {
            return Err(RewriteError::NotConfluent(format!("{} at {}", bad.family, bad.word)));
        }
        Ok(self.irreducible_monomials())
    }
}

fn exponent_tuples(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Memoized normal forms under a fixed strategy.
pub struct Rewriter<'p, C> {
    p: &'p Presentation<C>,
    strategy: Strategy,
    memo: HashMap<Word, (Combo<C>, usize)>,
}

impl<'p, C: Coeff> Rewriter<'p, C> {
    pub fn new(p: &'p Presentation<C>, strategy: Strategy) -> Self {
        Rewriter {
            p,
            strategy,
            memo: HashMap::new(),
        }
    }

    /// Normal form of a word and the length of the longest reduction
    /// sequence used.
    pub fn word_nf(&mut self, w: &[u8]) -> (Combo<C>, usize) {
        if let Some(x) = self.memo.get(w) {
            return x.clone();
        }
        let out = match self.p.find_redex(w, self.strategy) {
            None => {
                let mut c = Combo::new();
                c.insert(w.to_vec(), C::one());
                (c, 0)
            }
            Some((pos, r)) => {
                let rule = &self.p.rules[r];
                let tail = &w[pos + rule.lhs.len()..];
                let mut acc = Combo::new();
                let mut depth = 0;
                for (rw, c) in &rule.rhs {
                    let mut nw = w[..pos].to_vec();
                    nw.extend_from_slice(rw);
                    nw.extend_from_slice(tail);
                    let (sub, d) = self.word_nf(&nw);
                    depth = depth.max(d);
                    for (m, x) in sub {
                        add_term(&mut acc, m, &c.mul(&x));
                    }
                }
                (acc, depth + 1)
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    pub fn normal_form(&mut self, v: &Combo<C>) -> Combo<C> {
        let mut acc = Combo::new();
        for (w, c) in v {
            for (m, x) in self.word_nf(w).0 {
                add_term(&mut acc, m, &c.mul(&x));
            }
        }
        acc
    }

    pub fn word(&mut self, w: &[u8]) -> Combo<C> {
        self.word_nf(w).0
    }

    /// Normal form of `u·v`, folding the letters of `u` into `v` from the
    /// right so that only words `letter · irreducible` are reduced.
    pub fn multiply(&mut self, u: &[u8], v: &[u8]) -> Combo<C> {
        let mut acc = self.word(v);
        for &x in u.iter().rev() {
            let mut next = Combo::new();
            for (m, c) in acc {
                let mut w = vec![x];
                w.extend_from_slice(&m);
                for (n, y) in self.word(&w) {
                    add_term(&mut next, n, &c.mul(&y));
                }
            }
            acc = next;
        }
        acc
    }
}

/// `a - b`.
pub fn combo_sub<C: Coeff>(a: &Combo<C>, b: &Combo<C>) -> Combo<C> {
    let mut out = a.clone();
    for (w, c) in b {
        add_term(&mut out, w.clone(), &c.neg());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    pub(crate) fn taft() -> Presentation<Cyclotomic> {
        let gr = AbelianGroup::cyclic(3);
        let shape = LiftingShape {
            g: vec![gr.generator(0)],
            chi: vec![gr.character(&[1])],
            group: gr,
        };
        Presentation::lifting(shape, Scalars::zero(1)).unwrap()
    }

    pub(crate) fn family_b(lambda: Cyclotomic) -> Presentation<Cyclotomic> {
        let gr = AbelianGroup::cyclic(6);
        let y = gr.generator(0);
        let shape = LiftingShape {
            g: vec![y.clone(), y],
            chi: vec![gr.character(&[2]), gr.character(&[-2])],
            group: gr,
        };
        let mut lam = BTreeMap::new();
        lam.insert((0, 1), lambda);
        Presentation::lifting(
            shape,
            Scalars {
                mu: vec![Cyclotomic::one(), Cyclotomic::one()],
                lambda: lam,
            },
        )
        .unwrap()
    }

    #[test]
    fn taft_rules() {
        let p = taft();
        let mut rw = Rewriter::new(&p, Strategy::Leftmost);
        let ah = p.parse_word("a1 h1").unwrap();
        let nf = rw.word(&ah);
        let expect: Combo<Cyclotomic> = [(p.parse_word("h1 a1").unwrap(), z(3, -1))].into_iter().collect();
        assert_eq!(nf, expect);
        let h3 = p.parse_word("h1^3").unwrap();
        assert_eq!(rw.word(&h3), [(Word::new(), Cyclotomic::one())].into_iter().collect());
        assert!(rw.word(&p.parse_word("a1^3").unwrap()).is_empty());
        assert_eq!(p.irreducible_basis().unwrap().len(), 9);
    }

    #[test]
    fn family_commutation() {
        let p = family_b(Cyclotomic::one());
        let mut rw = Rewriter::new(&p, Strategy::Rightmost);
        let nf = rw.word(&p.parse_word("a2 a1").unwrap());
        let mut expect = Combo::new();
        expect.insert(p.parse_word("a1 a2").unwrap(), z(3, 1));
        expect.insert(Word::new(), Cyclotomic::one());
        expect.insert(p.parse_word("h1^2").unwrap(), -Cyclotomic::one());
        assert_eq!(nf, expect);
        let cube = rw.word(&p.parse_word("a1^3").unwrap());
        let mut expect = Combo::new();
        expect.insert(Word::new(), Cyclotomic::one());
        expect.insert(p.parse_word("h1^3").unwrap(), -Cyclotomic::one());
        assert_eq!(cube, expect);
        assert_eq!(p.irreducible_basis().unwrap().len(), 54);
    }

    #[test]
    fn rank_two_over_z3_has_27_monomials() {
        let gr = AbelianGroup::cyclic(3);
        let y = gr.generator(0);
        let shape = LiftingShape {
            g: vec![y.clone(), y],
            chi: vec![gr.character(&[1]), gr.character(&[2])],
            group: gr,
        };
        let p = Presentation::lifting(shape, Scalars::zero(2)).unwrap();
        assert_eq!(p.irreducible_basis().unwrap().len(), 27);
    }

    #[test]
    fn word_rendering_round_trips() {
        let p = family_b(Cyclotomic::zero());
        for w in p.irreducible_monomials() {
            assert_eq!(p.parse_word(&p.render_word(&w)).unwrap(), w);
        }
        assert!(p.parse_word("b1").is_err());
    }

    #[test]
    fn multiply_agrees_with_word_normal_form() {
        let p = family_b(z(3, 1));
        let basis = p.irreducible_monomials();
        let mut rw = Rewriter::new(&p, Strategy::Leftmost);
        for u in basis.iter().step_by(7) {
            for v in basis.iter().step_by(5) {
                let mut uv = u.clone();
                uv.extend_from_slice(v);
                assert_eq!(rw.multiply(u, v), rw.word(&uv));
            }
        }
    }

    #[test]
    fn reduction_chains_within_bound() {
        let p = family_b(Cyclotomic::one());
        let mut rw = Rewriter::new(&p, Strategy::Leftmost);
        let w = p.parse_word("a2 a2 h1 a1 a2 a1 h1 a2").unwrap();
        let (_, depth) = rw.word_nf(&w);
        assert!(depth as u128 <= p.chain_bound(&w));
    }

    #[test]
    fn json_lists_rules() {
        let p = taft();
        let v = p.to_json();
        assert_eq!(v["rules"].as_array().unwrap().len(), 3);
        assert_eq!(v["rules"][1][0], "a1 h1");
    }
}
