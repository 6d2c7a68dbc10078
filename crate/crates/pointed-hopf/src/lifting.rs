//! Liftings of quantum linear spaces: compatible data `(μ, λ)`, the Hopf
//! algebras they present, the two-parameter family `B(M, N, q, λ)` and its
//! isomorphisms and automorphisms.

use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::cyclotomic::Cyclotomic;
use crate::hopfcore::{verify_isomorphism, HopfError, Kind, Sparse, StructureHopf, Tensor2};
use crate::qls::{validate_datum, DatumViolation, QlsDatum};
use crate::rewrite::{check_overlaps, Presentation, RewriteError, Rewriter, Scalars, Strategy, Word};
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A quantum linear space datum with scalars `μ_i ∈ {0, 1}` and
/// `λ_{ij}` for `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatibleDatum {
    pub qls: QlsDatum,
    pub mu: Vec<bool>,
    pub lambda: BTreeMap<(usize, usize), Cyclotomic>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CompatViolation {
    Datum(DatumViolation),
    Shape(String),
    /// `μ_i = 1` although `g_i^{N_i} = 1` or `χ_i^{N_i} ≠ ε`.
    Mu { i: usize, grouplike_power_trivial: bool },
    /// `λ_{ij} ≠ 0` although `g_i g_j = 1` or `χ_i χ_j ≠ ε`.
    Lambda { i: usize, j: usize, product_trivial: bool },
    /// `λ_{ij}` and `λ_{ih}` both nonzero with `j ≠ h` and `N_i` odd.
    SharedIndex { i: usize, j: usize, h: usize },
}

impl fmt::Display for CompatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompatViolation::Datum(d) => write!(f, "{d}"),
            CompatViolation::Shape(s) => write!(f, "{s}"),
            CompatViolation::Mu { i, grouplike_power_trivial } => {
                let i = i + 1;
                if *grouplike_power_trivial {
                    write!(f, "mu_{i} = 1 needs g_{i}^N_{i} != 1")
                } else {
                    write!(f, "mu_{i} = 1 needs chi_{i}^N_{i} trivial")
                }
            }
            CompatViolation::Lambda { i, j, product_trivial } => {
                let (i, j) = (i + 1, j + 1);
                if *product_trivial {
                    write!(f, "lambda_{i}{j} != 0 needs g_{i} g_{j} != 1")
                } else {
                    write!(f, "lambda_{i}{j} != 0 needs chi_{i} chi_{j} trivial")
                }
            }
            CompatViolation::SharedIndex { i, j, h } => write!(
                f,
                "lambda_{a}{b} and lambda_{a}{c} both nonzero with N_{a} odd",
                a = i + 1,
                b = j + 1,
                c = h + 1
            ),
        }
    }
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Checks which scalars the datum allows, listing every violation.
pub fn validate_compatible(
    qls: &QlsDatum,
    mu: &[bool],
    lambda: &BTreeMap<(usize, usize), Cyclotomic>,
) -> Result<CompatibleDatum, Vec<CompatViolation>> {
    let t = qls.theta();
    let gr = &qls.group;
    if mu.len() != t {
        return Err(vec![CompatViolation::Shape(format!("{} values of mu for rank {t}", mu.len()))]);
    }
    if let Some(&(i, j)) = lambda.keys().find(|&&(i, j)| i >= j || j >= t) {
        return Err(vec![CompatViolation::Shape(format!("lambda index ({}, {})", i + 1, j + 1))]);
    }
    let mut out = Vec::new();
    let one = gr.identity();
    let eps = gr.trivial_character();
    for i in 0..t {
        if !mu[i] {
            continue;
        }
        let n = qls.n[i] as i64;
        if gr.power(&qls.g[i], n) == one {
            out.push(CompatViolation::Mu { i, grouplike_power_trivial: true });
        } else if gr.char_power(&qls.chi[i], n) != eps {
            out.push(CompatViolation::Mu { i, grouplike_power_trivial: false });
        }
    }
    let nonzero: Vec<(usize, usize)> = lambda.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| *k).collect();
    for &(i, j) in &nonzero {
        if gr.compose(&qls.g[i], &qls.g[j]) == one {
            out.push(CompatViolation::Lambda { i, j, product_trivial: true });
        } else if gr.char_mul(&qls.chi[i], &qls.chi[j]) != eps {
            out.push(CompatViolation::Lambda { i, j, product_trivial: false });
        }
    }
    for i in 0..t {
        if qls.n[i].is_multiple_of(2) {
            continue;
        }
        let partners: Vec<usize> = nonzero
            .iter()
            .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect();
        if partners.len() > 1 {
            out.push(CompatViolation::SharedIndex { i, j: partners[0], h: partners[1] });
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    Ok(CompatibleDatum {
        qls: qls.clone(),
        mu: mu.to_vec(),
        lambda: lambda.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect(),
    })
}

impl CompatibleDatum {
    pub fn scalars(&self) -> Scalars<Cyclotomic> {
        Scalars {
            mu: self
                .mu
                .iter()
                .map(|&m| if m { Cyclotomic::one() } else { Cyclotomic::zero() })
                .collect(),
            lambda: self.lambda.clone(),
        }
    }

    pub fn lambda(&self, i: usize, j: usize) -> Cyclotomic {
        self.lambda.get(&key(i, j)).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn presentation(&self) -> Presentation<Cyclotomic> {
        Presentation::lifting(self.qls.shape(), self.scalars()).expect("validated datum")
    }

    /// `{group, qls: {g, chi}, mu, lambda: {"i,j": value}}` with 1-based
    /// pair indices and values in the flag grammar.
    pub fn to_json(&self) -> Value {
        let mut lam = Map::new();
        for ((i, j), v) in &self.lambda {
            lam.insert(format!("{},{}", i + 1, j + 1), Value::String(v.to_string()));
        }
        json!({
            "group": self.qls.group.spec_string(),
            "qls": {
                "g": self.qls.g.iter().map(|g| g.0.clone()).collect::<Vec<_>>(),
                "chi": self.qls.chi.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
            },
            "mu": self.mu.iter().map(|&m| m as u8).collect::<Vec<_>>(),
            "lambda": lam,
        })
    }

    pub fn from_json(v: &Value) -> Result<CompatibleDatum, String> {
        let raw = RawDatum::from_json(v)?;
        validate_compatible(&raw.qls, &raw.mu, &raw.lambda).map_err(join)
    }
}

/// A quantum linear space datum with scalars that need not be
/// compatible, as read from datum JSON.
#[derive(Clone, Debug)]
pub struct RawDatum {
    pub qls: QlsDatum,
    pub mu: Vec<bool>,
    pub lambda: BTreeMap<(usize, usize), Cyclotomic>,
}

impl RawDatum {
    /// Reads the format of [`CompatibleDatum::to_json`]; `mu` and
    /// `lambda` may be omitted.
    pub fn from_json(v: &Value) -> Result<RawDatum, String> {
        let group = v["group"].as_str().ok_or("missing group")?;
        let gr = AbelianGroup::parse(group).map_err(|e| e.to_string())?;
        let vecs = |x: &Value, what: &str| -> Result<Vec<Vec<i64>>, String> {
            x.as_array()
                .ok_or(format!("missing qls.{what}"))?
                .iter()
                .map(|e| {
                    e.as_array()
                        .ok_or(format!("qls.{what} entries must be arrays"))?
                        .iter()
                        .map(|n| n.as_i64().ok_or(format!("qls.{what} exponents must be integers")))
                        .collect()
                })
                .collect()
        };
        let g: Vec<GroupElement> = vecs(&v["qls"]["g"], "g")?
            .iter()
            .map(|e| check_len(&gr, e).map(|_| gr.element(e)))
            .collect::<Result<_, _>>()?;
        let chi: Vec<Character> = vecs(&v["qls"]["chi"], "chi")?
            .iter()
            .map(|e| check_len(&gr, e).map(|_| gr.character(e)))
            .collect::<Result<_, _>>()?;
        let qls = validate_datum(&gr, &g, &chi).map_err(join)?;
        let mu: Vec<bool> = match &v["mu"] {
            Value::Null => vec![false; g.len()],
            Value::Array(a) => a
                .iter()
                .map(|m| match m.as_u64() {
                    Some(0) => Ok(false),
                    Some(1) => Ok(true),
                    _ => Err("mu entries must be 0 or 1".to_string()),
                })
                .collect::<Result<_, _>>()?,
            _ => return Err("mu must be an array".into()),
        };
        let mut lambda = BTreeMap::new();
        if let Some(obj) = v["lambda"].as_object() {
            for (k, x) in obj {
                let (a, b) = k.split_once(',').ok_or(format!("lambda key `{k}` is not `i,j`"))?;
                let parse = |s: &str| s.trim().parse::<usize>().ok().filter(|&n| n >= 1);
                let (i, j) = match (parse(a), parse(b)) {
                    (Some(i), Some(j)) => (i - 1, j - 1),
                    _ => return Err(format!("lambda key `{k}` is not `i,j`")),
                };
                let val = match x {
                    Value::String(s) => Cyclotomic::parse(s).map_err(|e| e.to_string())?,
                    Value::Number(n) => Cyclotomic::parse(&n.to_string()).map_err(|e| e.to_string())?,
                    other => serde_json::from_value(other.clone()).map_err(|e| e.to_string())?,
                };
                lambda.insert(key(i, j), val);
            }
        }
        if mu.len() != qls.theta() {
            return Err(format!("{} values of mu for rank {}", mu.len(), qls.theta()));
        }
        Ok(RawDatum { qls, mu, lambda })
    }

    pub fn scalars(&self) -> Scalars<Cyclotomic> {
        Scalars {
            mu: self.mu.iter().map(|&m| Cyclotomic::from_int(m as i64)).collect(),
            lambda: self.lambda.clone(),
        }
    }

    pub fn presentation(&self) -> Result<Presentation<Cyclotomic>, RewriteError> {
        Presentation::lifting(self.qls.shape(), self.scalars())
    }
}

fn check_len(gr: &AbelianGroup, e: &[i64]) -> Result<(), String> {
    if e.len() == gr.rank() {
        Ok(())
    } else {
        Err(format!("exponent vector {e:?} for a group of rank {}", gr.rank()))
    }
}

fn join<T: fmt::Display>(v: Vec<T>) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, thiserror::Error)]
pub enum LiftError {
    #[error("{0}")]
    Rewrite(#[from] RewriteError),
    #[error("{0}")]
    Hopf(#[from] HopfError),
    #[error("invalid parameters: {0}")]
    Parameters(String),
}

/// A lifted Hopf algebra together with its presentation and the
/// irreducible monomials indexing its basis.
#[derive(Clone, Debug)]
pub struct Lifting {
    pub datum: CompatibleDatum,
    pub presentation: Presentation<Cyclotomic>,
    pub words: Vec<Word>,
    pub hopf: StructureHopf,
}

impl Lifting {
    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }

    fn unit_word(&self, w: &Word) -> crate::exactla::SparseVec {
        let mut v = crate::exactla::SparseVec::new();
        v.insert(self.index_of(w).expect("irreducible word"), Cyclotomic::one());
        v
    }

    /// The generator `a_i`.
    pub fn a(&self, i: usize) -> crate::exactla::SparseVec {
        let s = self.presentation.sigma();
        self.unit_word(&vec![(s + i) as u8])
    }

    /// A group element as a basis vector.
    pub fn group_element(&self, g: &GroupElement) -> crate::exactla::SparseVec {
        self.unit_word(&self.presentation.word_of_group_element(g))
    }

    /// Number of `a`-letters of each basis monomial.
    pub fn a_degrees(&self) -> Vec<usize> {
        let s = self.presentation.sigma() as u8;
        self.words.iter().map(|w| w.iter().filter(|&&x| x >= s).count()).collect()
    }

    /// `S(a_i)^n = (-1)^n q_i^{n(n-1)/2} g_i^{-n} a_i^n` for `n ≤ N_i`.
    pub fn antipode_powers_hold(&self) -> bool {
        let h = &self.hopf;
        let gr = &self.datum.qls.group;
        (0..self.datum.qls.theta()).all(|i| {
            let q = &self.datum.qls.q[i];
            let a = self.a(i);
            let sa = h.antipode_of(&a).expect("antipode present");
            let (mut lhs, mut an) = (h.unit_vec(), h.unit_vec());
            (1..=self.datum.qls.n[i] as i64).all(|n| {
                lhs = h.mul(&lhs, &sa);
                an = h.mul(&an, &a);
                let ginv = self.group_element(&gr.power(&self.datum.qls.g[i], -n));
                let sign = if n % 2 == 0 { Cyclotomic::one() } else { -Cyclotomic::one() };
                let c = &sign * &q.pow(n * (n - 1) / 2);
                let rhs: crate::exactla::SparseVec =
                    h.mul(&ginv, &an).into_iter().map(|(k, x)| (k, &x * &c)).collect();
                lhs == rhs
            })
        })
    }
}

/// Builds the lifting of a compatible datum from its presentation.
///
/// Products of irreducible monomials are rewritten to normal form; `Δ`,
/// `ε` and `S` are extended from `Δ(h) = h⊗h`, `Δ(a_i) = a_i⊗1 + g_i⊗a_i`,
/// `S(h) = h^{-1}`, `S(a_i) = -g_i^{-1}a_i`.
pub fn build_lifting(cd: &CompatibleDatum) -> Result<Lifting, LiftError> {
    let p = cd.presentation();
    let words = p.irreducible_basis()?;
    let d = words.len();
    let index: HashMap<Word, usize> = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    let mut rw = Rewriter::new(&p, Strategy::Leftmost);
    let to_sparse = |c: crate::rewrite::Combo<Cyclotomic>| -> Sparse {
        let mut v: Sparse = c.into_iter().map(|(w, x)| (index[&w], x)).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    };
    let mut mult = vec![vec![Sparse::new(); d]; d];
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            mult[i][j] = to_sparse(rw.multiply(u, v));
        }
    }
    let s = p.sigma();
    let one = Cyclotomic::one();
    let unit_idx = index[&Word::new()];
    let mut h = StructureHopf {
        labels: words.iter().map(|w| p.render_word(w)).collect(),
        mult,
        comult: vec![Vec::new(); d],
        unit: vec![(unit_idx, one.clone())],
        counit: words
            .iter()
            .map(|w| if w.iter().all(|&x| (x as usize) < s) { one.clone() } else { Cyclotomic::zero() })
            .collect(),
        antipode: None,
        kind: Kind::Ordinary,
    };
    let gr = &cd.qls.group;
    let gw = |g: &GroupElement| index[&p.word_of_group_element(g)];
    // Δ and S on single letters
    let letter_delta = |x: u8| -> Tensor2 {
        let mut t = Tensor2::new();
        let xi = index[&vec![x]];
        if (x as usize) < s {
            t.insert((xi, xi), one.clone());
        } else {
            t.insert((xi, unit_idx), one.clone());
            t.insert((gw(&cd.qls.g[x as usize - s]), xi), one.clone());
        }
        t
    };
    let mut letter_antipode = |x: u8| -> crate::exactla::SparseVec {
        let mut v = crate::exactla::SparseVec::new();
        if (x as usize) < s {
            let g = gr.inverse(&gr.generator(x as usize));
            v.insert(gw(&g), one.clone());
        } else {
            let ginv = gr.inverse(&cd.qls.g[x as usize - s]);
            let mut w = p.word_of_group_element(&ginv);
            w.push(x);
            for (m, c) in rw.word(&w) {
                v.insert(index[&m], -c);
            }
        }
        v
    };
    let letters: Vec<u8> = (0..(s + p.theta()) as u8).collect();
    let ld: Vec<Tensor2> = letters.iter().map(|&x| letter_delta(x)).collect();
    let la: Vec<crate::exactla::SparseVec> = letters.iter().map(|&x| letter_antipode(x)).collect();
    // suffixes of irreducible words are irreducible, so fill by length
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&k| words[k].len());
    let mut deltas: Vec<Option<Tensor2>> = vec![None; d];
    let mut antipodes: Vec<Option<crate::exactla::SparseVec>> = vec![None; d];
    for k in order {
        let w = &words[k];
        if w.is_empty() {
            let mut t = Tensor2::new();
            t.insert((k, k), one.clone());
            deltas[k] = Some(t);
            antipodes[k] = Some([(k, one.clone())].into_iter().collect());
            continue;
        }
        let rest = index[&w[1..].to_vec()];
        let x = w[0] as usize;
        deltas[k] = Some(h.tensor_mul(&ld[x], deltas[rest].as_ref().unwrap()));
        antipodes[k] = Some(h.mul(antipodes[rest].as_ref().unwrap(), &la[x]));
    }
    h.comult = deltas
        .into_iter()
        .map(|t| t.unwrap().into_iter().map(|((a, b), c)| (a, b, c)).collect())
        .collect();
    h.antipode = Some(
        antipodes
            .into_iter()
            .map(|v| v.unwrap().into_iter().collect())
            .collect(),
    );
    Ok(Lifting {
        datum: cd.clone(),
        presentation: p,
        words,
        hopf: h,
    })
}

/// Coradical filtration dimensions and `dim P_{g,1}` for every `g`
/// predicted from the datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedFiltration {
    pub dims: Vec<usize>,
    /// `(g, dim P_{g,1})` over all group elements in enumeration order.
    pub skew_primitive_dims: Vec<(GroupElement, usize)>,
}

/// `dim A_n = |Γ| · #{s : s_i < N_i, |s| ≤ n}`; `P_{g_i,1}` has dimension
/// `1 + #{j : g_j = g_i}`, `P_{g,1} = k(1 - g)` otherwise.
pub fn predicted_filtration(qls: &QlsDatum) -> PredictedFiltration {
    let order = qls.group.order() as usize;
    let top: usize = qls.n.iter().map(|&x| x as usize - 1).sum();
    let mut counts = vec![0usize; top + 1];
    for s in qls.multi_indices() {
        counts[s.iter().map(|&e| e as usize).sum::<usize>()] += 1;
    }
    let mut dims = Vec::with_capacity(top + 1);
    let mut acc = 0;
    for c in counts {
        acc += c;
        dims.push(order * acc);
    }
    let id = qls.group.identity();
    let skew_primitive_dims = qls
        .group
        .elements()
        .into_iter()
        .map(|g| {
            let base = usize::from(g != id);
            let extra = qls.g.iter().filter(|&x| *x == g).count();
            (g, base + extra)
        })
        .collect();
    PredictedFiltration { dims, skew_primitive_dims }
}

/// Parameters of `B(M, N, q, λ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub m: u32,
    pub n: u32,
    pub q: Cyclotomic,
    pub lambda: Cyclotomic,
}

impl FamilyParams {
    pub fn new(m: u32, n: u32, q: Cyclotomic, lambda: Cyclotomic) -> Result<Self, LiftError> {
        if m < 2 || n < 3 {
            return Err(LiftError::Parameters(format!("need M > 1 and N > 2, got M = {m}, N = {n}")));
        }
        if q.order().ok() != Some(n) {
            return Err(LiftError::Parameters(format!("q = {q} is not a primitive {n}-th root of unity")));
        }
        Ok(FamilyParams { m, n, q, lambda })
    }

    /// `Γ = Z/MN`, `g_1 = g_2 = y`, `χ_1(y) = q`, `χ_2(y) = q^{-1}`,
    /// `μ_1 = μ_2 = 1`, `λ_{12} = λ`.
    pub fn datum(&self) -> CompatibleDatum {
        let order = self.m * self.n;
        let gr = AbelianGroup::cyclic(order);
        let y = gr.generator(0);
        let c = (0..order as i64)
            .map(|k| gr.character(&[k]))
            .find(|c| gr.evaluate(c, &y).unwrap() == self.q)
            .expect("q is an N-th root of unity and N divides MN");
        let qls = validate_datum(&gr, &[y.clone(), y], &[c.clone(), gr.char_inverse(&c)]).expect("family datum");
        let mut lambda = BTreeMap::new();
        lambda.insert((0, 1), self.lambda.clone());
        validate_compatible(&qls, &[true, true], &lambda).expect("family datum is compatible")
    }
}

pub fn build_family_b(params: &FamilyParams) -> Result<Lifting, LiftError> {
    build_lifting(&params.datum())
}

/// `B(M,N,q,λ) ≅ B(M,N,q,λ̃)` exactly when `λ̃ = uλ` with `u^N = 1`.
pub fn family_iso(n: u32, lambda: &Cyclotomic, lambda2: &Cyclotomic) -> bool {
    match (lambda.is_zero(), lambda2.is_zero()) {
        (true, true) => true,
        (false, false) => (lambda2 / lambda).pow(n as i64).is_one(),
        _ => false,
    }
}

/// A Hopf automorphism fixing the group-likes and scaling `a_i ↦ α_i a_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalAutomorphism {
    pub scalars: Vec<Cyclotomic>,
    pub images: Vec<crate::exactla::SparseVec>,
}

/// All diagonal automorphisms `a_i ↦ α_i a_i` with `α_i^{N_i} = 1`, each
/// verified on the full structure constants.
pub fn diagonal_automorphisms(l: &Lifting) -> Vec<DiagonalAutomorphism> {
    let s = l.presentation.sigma();
    let theta = l.datum.qls.theta();
    let roots: Vec<Vec<Cyclotomic>> = l
        .datum
        .qls
        .n
        .iter()
        .map(|&n| (0..n as i64).map(|k| Cyclotomic::root_of_unity(n, k)).collect())
        .collect();
    let mut choices: Vec<Vec<Cyclotomic>> = vec![Vec::new()];
    for r in &roots {
        choices = choices
            .into_iter()
            .flat_map(|c| {
                r.iter().map(move |x| {
                    let mut c = c.clone();
                    c.push(x.clone());
                    c
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for alpha in choices {
        let images: Vec<crate::exactla::SparseVec> = l
            .words
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let mut c = Cyclotomic::one();
                for &x in w {
                    if x as usize >= s {
                        c = &c * &alpha[x as usize - s];
                    }
                }
                [(k, c)].into_iter().collect()
            })
            .collect();
        debug_assert_eq!(alpha.len(), theta);
        if verify_isomorphism(&l.hopf, &l.hopf, &images).is_ok() {
            out.push(DiagonalAutomorphism { scalars: alpha, images });
        }
    }
    out
}

/// Confirms a lifting presentation resolves all overlaps.
pub fn is_confluent(cd: &CompatibleDatum) -> bool {
    check_overlaps(&cd.presentation(), false).confluent()
}
