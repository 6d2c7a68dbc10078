//! Pointed Hopf algebras of dimension `p³`: the census of types (a)–(f),
//! pairwise distinction, rank searches for quantum linear space data and
//! enumeration of liftings over small groups.

use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::cyclotomic::{prime_factors, Cyclotomic};
use crate::hopfcore::{HopfError, InvariantRecord, IsoOutcome, IsoSearchConfig, StructureHopf};
use crate::lifting::{build_lifting, validate_compatible, CompatibleDatum, LiftError};
use crate::qls::{validate_datum, QlsDatum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("{0}")]
    Lift(#[from] LiftError),
    #[error("{0}")]
    Hopf(#[from] HopfError),
}

fn is_odd_prime(p: u32) -> bool {
    p > 2 && prime_factors(p as u64) == vec![p as u64]
}

fn modp(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

fn inverse_mod(m: u32, p: u32) -> u32 {
    (1..p).find(|&k| (k as u64 * m as u64) % p as u64 == 1).expect("unit mod p")
}

/// The six types of the `p³` list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CensusType {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl CensusType {
    pub const ALL: [CensusType; 6] = [
        CensusType::A,
        CensusType::B,
        CensusType::C,
        CensusType::D,
        CensusType::E,
        CensusType::F,
    ];

    pub fn letter(self) -> &'static str {
        match self {
            CensusType::A => "(a)",
            CensusType::B => "(b)",
            CensusType::C => "(c)",
            CensusType::D => "(d)",
            CensusType::E => "(e)",
            CensusType::F => "(f)",
        }
    }

    /// Invariant factors of the group of group-likes.
    pub fn grouplike_invariants(self, p: u32) -> Vec<u32> {
        match self {
            CensusType::A => vec![p, p],
            CensusType::B | CensusType::C | CensusType::D => vec![p * p],
            CensusType::E | CensusType::F => vec![p],
        }
    }
}

/// One member of the list: type, `q = ζ_p^s` and, for book algebras, `m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CensusSpec {
    pub kind: CensusType,
    pub p: u32,
    pub s: u32,
    pub m: Option<u32>,
}

impl CensusSpec {
    pub fn new(kind: CensusType, p: u32, s: u32, m: Option<u32>) -> Result<Self, ClassifyError> {
        if !is_odd_prime(p) {
            return Err(ClassifyError::Parameters(format!("{p} is not an odd prime")));
        }
        if s.is_multiple_of(p) {
            return Err(ClassifyError::Parameters(format!("q = z{p}^{s} is 1")));
        }
        let m = match (kind, m) {
            (CensusType::F, Some(m)) if m % p != 0 => Some(m % p),
            (CensusType::F, _) => {
                return Err(ClassifyError::Parameters("book algebra needs m in Z/p - 0".into()))
            }
            (_, Some(_)) => return Err(ClassifyError::Parameters("m only applies to type (f)".into())),
            (_, None) => None,
        };
        Ok(CensusSpec { kind, p, s: s % p, m })
    }

    pub fn q(&self) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.p, self.s as i64)
    }

    pub fn label(&self) -> String {
        let q = if self.s == 1 {
            format!("z{}", self.p)
        } else {
            format!("z{}^{}", self.p, self.s)
        };
        let p = self.p;
        let name = match self.kind {
            CensusType::A => format!("T({q}) x kZ/{p}"),
            CensusType::B => format!("T~({q})"),
            CensusType::C => format!("T^({q})"),
            CensusType::D => format!("r({q})"),
            CensusType::E => format!("u({q})"),
            CensusType::F => format!("h({q},{})", self.m.expect("book parameter")),
        };
        format!("{} {name}", self.kind.letter())
    }

    /// The book algebra `h(q^{-m²}, m^{-1})` identified with `h(q, m)`.
    pub fn book_partner(&self) -> Option<CensusSpec> {
        let m = self.m?;
        let p = self.p;
        Some(CensusSpec {
            kind: CensusType::F,
            p,
            s: modp(-(self.s as i64) * (m as i64) * (m as i64), p),
            m: Some(inverse_mod(m, p)),
        })
    }

    /// The lifting datum in the normalization `Δ(a) = a⊗1 + g⊗a`: a
    /// generator `x ∈ P_{1,g}` of the list becomes `a = xg^{-1} ∈
    /// P_{g^{-1},1}` with the same conjugation character.
    pub fn datum(&self) -> CompatibleDatum {
        let p = self.p as i64;
        let s = self.s as i64;
        match self.kind {
            CensusType::A => {
                let gr = AbelianGroup::new(vec![self.p, self.p]).expect("p > 1");
                rank_one(&gr, gr.element(&[-1, 0]), gr.character(&[s, 0]), false)
            }
            CensusType::B => tilde_datum(self.p, self.s, 0),
            CensusType::C | CensusType::D => {
                let gr = AbelianGroup::cyclic(self.p * self.p);
                let mu = self.kind == CensusType::D;
                rank_one(&gr, gr.element(&[-1]), gr.character(&[p * s]), mu)
            }
            CensusType::E => {
                let gr = AbelianGroup::cyclic(self.p);
                let g = gr.element(&[-1]);
                rank_two(&gr, [g.clone(), g], [gr.character(&[2 * s]), gr.character(&[-2 * s])], true)
            }
            CensusType::F => {
                let gr = AbelianGroup::cyclic(self.p);
                let m = self.m.expect("book parameter") as i64;
                rank_two(
                    &gr,
                    [gr.element(&[-1]), gr.element(&[m])],
                    [gr.character(&[s]), gr.character(&[s * m])],
                    false,
                )
            }
        }
    }
}

fn rank_one(gr: &AbelianGroup, g: GroupElement, chi: Character, mu: bool) -> CompatibleDatum {
    let qls = validate_datum(gr, &[g], &[chi]).expect("rank one datum");
    validate_compatible(&qls, &[mu], &BTreeMap::new()).expect("compatible")
}

fn rank_two(gr: &AbelianGroup, g: [GroupElement; 2], chi: [Character; 2], lambda: bool) -> CompatibleDatum {
    let qls = validate_datum(gr, &g, &chi).expect("rank two datum");
    let mut l = BTreeMap::new();
    if lambda {
        l.insert((0, 1), Cyclotomic::one());
    }
    validate_compatible(&qls, &[false, false], &l).expect("compatible")
}

/// Type (b) with `q^{1/p}` taken as `ζ_{p²}^{s + pj}`; `j = 0` is the
/// principal choice.
pub fn tilde_datum(p: u32, s: u32, j: u32) -> CompatibleDatum {
    let gr = AbelianGroup::cyclic(p * p);
    let e = s as i64 + (p * j) as i64;
    rank_one(&gr, gr.element(&[-(p as i64)]), gr.character(&[e]), false)
}

/// Every member of the list at `p`: `q` ranges over `G_p - 1` and `m`
/// over `Z/p - 0`.
pub fn p3_specs(p: u32) -> Result<Vec<CensusSpec>, ClassifyError> {
    let mut out = Vec::new();
    for kind in CensusType::ALL {
        for s in 1..p {
            if kind == CensusType::F {
                for m in 1..p {
                    out.push(CensusSpec::new(kind, p, s, Some(m))?);
                }
            } else {
                out.push(CensusSpec::new(kind, p, s, None)?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub label: String,
    pub spec: Option<CensusSpec>,
    pub datum: CompatibleDatum,
    pub hopf: StructureHopf,
    pub invariants: InvariantRecord,
}

impl CensusEntry {
    pub fn build(label: String, spec: Option<CensusSpec>, datum: CompatibleDatum) -> Result<Self, ClassifyError> {
        let hopf = build_lifting(&datum)?.hopf;
        let invariants = hopf.invariants()?;
        Ok(CensusEntry {
            label,
            spec,
            datum,
            hopf,
            invariants,
        })
    }

    pub fn from_spec(spec: &CensusSpec) -> Result<Self, ClassifyError> {
        CensusEntry::build(spec.label(), Some(spec.clone()), spec.datum())
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "label": self.label,
            "datum": self.datum.to_json(),
            "invariants": self.invariants,
        });
        if let Some(s) = &self.spec {
            v["type"] = json!(s.kind.letter());
            v["q"] = json!(format!("z{}^{}", s.p, s.s));
            if let Some(m) = s.m {
                v["m"] = json!(m);
            }
        }
        v
    }
}

/// Builds the whole list at `p`, in the order of [`p3_specs`].
pub fn build_p3_list(p: u32) -> Result<Vec<CensusEntry>, ClassifyError> {
    build_entries(&p3_specs(p)?)
}

pub fn build_entries(specs: &[CensusSpec]) -> Result<Vec<CensusEntry>, ClassifyError> {
    specs.par_iter().map(CensusEntry::from_spec).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Separated by the named invariant, or by an exhausted search.
    Distinct { witness: String, detail: String },
    Isomorphic { map: String },
    Undecided { reason: String },
}

impl Verdict {
    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct { .. })
    }
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Verdict::Isomorphic { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinct { witness, detail } => write!(f, "distinct ({witness}: {detail})"),
            Verdict::Isomorphic { map } => write!(f, "isomorphic ({map})"),
            Verdict::Undecided { reason } => write!(f, "undecided ({reason})"),
        }
    }
}

/// Decides a single pair: first differing invariant, otherwise the
/// isomorphism search.
pub fn compare(a: &CensusEntry, b: &CensusEntry, cfg: &IsoSearchConfig) -> Verdict {
    if let Some((field, x, y)) = a.invariants.first_difference(&b.invariants) {
        return Verdict::Distinct {
            witness: field,
            detail: format!("{x} vs {y}"),
        };
    }
    match a.hopf.find_isomorphism(&b.hopf, cfg) {
        IsoOutcome::Found(iso) => Verdict::Isomorphic { map: iso.describe() },
        IsoOutcome::NoneFound(reason) => Verdict::Distinct {
            witness: "isomorphism search exhausted".into(),
            detail: reason,
        },
        IsoOutcome::BoundExceeded(reason) => Verdict::Undecided { reason },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub left: usize,
    pub right: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Verdicts for all pairs `i < j`, row-major.
#[derive(Clone, Debug, Serialize)]
pub struct DistinctionMatrix {
    pub labels: Vec<String>,
    pub pairs: Vec<PairVerdict>,
}

impl DistinctionMatrix {
    pub fn get(&self, i: usize, j: usize) -> Option<&Verdict> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.pairs.iter().find(|v| v.left == i && v.right == j).map(|v| &v.verdict)
    }

    pub fn undecided(&self) -> usize {
        self.pairs
            .iter()
            .filter(|v| matches!(v.verdict, Verdict::Undecided { .. }))
            .count()
    }

    pub fn isomorphic_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .filter(|v| v.verdict.is_isomorphic())
            .map(|v| (v.left, v.right))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|v| {
                let mut o = serde_json::to_value(&v.verdict).expect("serializable");
                o["left"] = json!(self.labels[v.left]);
                o["right"] = json!(self.labels[v.right]);
                o
            })
            .collect();
        json!({ "labels": self.labels, "pairs": pairs, "undecided": self.undecided() })
    }
}

pub fn distinguish(entries: &[CensusEntry], cfg: &IsoSearchConfig) -> DistinctionMatrix {
    let n = entries.len();
    let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pairs = idx
        .par_iter()
        .map(|&(i, j)| PairVerdict {
            left: i,
            right: j,
            verdict: compare(&entries[i], &entries[j], cfg),
        })
        .collect();
    DistinctionMatrix {
        labels: entries.iter().map(|e| e.label.clone()).collect(),
        pairs,
    }
}

/// Census report: entries with invariants and the distinction matrix.
pub fn census_report(p: u32, entries: &[CensusEntry], matrix: &DistinctionMatrix) -> Value {
    json!({
        "p": p,
        "dimension": p * p * p,
        "entries": entries.iter().map(CensusEntry::to_json).collect::<Vec<_>>(),
        "distinction": matrix.to_json(),
    })
}

/// Limits for [`theta_search_with`].
#[derive(Clone, Debug)]
pub struct ThetaConfig {
    pub max_rank: usize,
    /// Largest `|Γ|` searched exhaustively.
    pub group_bound: u64,
    /// Search nodes visited before giving up on exactness.
    pub node_budget: u64,
}

impl ThetaConfig {
    pub fn new(max_rank: usize) -> Self {
        ThetaConfig {
            max_rank,
            group_bound: 64,
            node_budget: 200_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ThetaResult {
    /// Largest rank found, capped at `max_rank`.
    pub theta: usize,
    /// Whether no datum of rank `theta + 1 ≤ max_rank` exists.
    pub exact: bool,
    pub witness: Option<QlsDatum>,
    pub nodes: u64,
    pub note: Option<String>,
}

impl ThetaResult {
    pub fn to_json(&self, max_rank: usize) -> Value {
        let witness = self.witness.as_ref().map(|d| {
            json!({
                "g": d.g.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "chi": d.chi.iter().map(|x| GroupElement(x.0.clone()).to_string()).collect::<Vec<_>>(),
                "q": d.q.iter().map(|x| x.root_label()).collect::<Vec<_>>(),
            })
        });
        json!({
            "theta": self.theta,
            "exact": self.exact,
            "max_rank": max_rank,
            "reached_max_rank": self.theta == max_rank,
            "witness": witness,
            "nodes": self.nodes,
            "note": self.note,
        })
    }
}

struct Compat {
    verts: Vec<(usize, usize)>,
    /// `E[χ][g]` with `χ(g) = ζ_L^E`.
    table: Vec<Vec<u32>>,
    l: u32,
}

impl Compat {
    fn new(gr: &AbelianGroup) -> Compat {
        let els = gr.elements();
        let chars = gr.characters();
        let table: Vec<Vec<u32>> = chars
            .iter()
            .map(|c| els.iter().map(|g| gr.eval_exponent(c, g)).collect())
            .collect();
        let mut verts = Vec::new();
        for gi in 0..els.len() {
            for ci in 0..chars.len() {
                if table[ci][gi] != 0 {
                    verts.push((gi, ci));
                }
            }
        }
        Compat {
            verts,
            table,
            l: gr.exponent(),
        }
    }

    fn adj(&self, u: usize, v: usize) -> bool {
        let (gu, cu) = self.verts[u];
        let (gv, cv) = self.verts[v];
        (self.table[cv][gu] + self.table[cu][gv]).is_multiple_of(self.l)
    }
}

struct CliqueSearch<'a> {
    c: &'a Compat,
    max_rank: usize,
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    exhausted: bool,
}

impl CliqueSearch<'_> {
    fn extend(&mut self, clique: &mut Vec<usize>, cand: &[usize]) {
        if clique.len() > self.best.len() {
            self.best = clique.clone();
        }
        if self.best.len() >= self.max_rank || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let repeatable = cand.iter().any(|&v| self.c.adj(v, v));
        let potential = if repeatable {
            self.max_rank
        } else {
            clique.len() + cand.len()
        };
        if potential <= self.best.len() {
            return;
        }
        for (k, &v) in cand.iter().enumerate() {
            if !repeatable && clique.len() + cand.len() - k <= self.best.len() {
                return;
            }
            let next: Vec<usize> = cand[k..]
                .iter()
                .copied()
                .filter(|&w| if w == v { self.c.adj(v, v) } else { self.c.adj(v, w) })
                .collect();
            clique.push(v);
            self.extend(clique, &next);
            clique.pop();
            if self.best.len() >= self.max_rank || self.exhausted {
                return;
            }
        }
    }
}

pub fn theta_search(gr: &AbelianGroup, max_rank: usize) -> ThetaResult {
    theta_search_with(gr, &ThetaConfig::new(max_rank))
}

/// Largest rank of a quantum linear space datum over `Γ`, by maximum
/// clique on pairs `(g, χ)` with `χ(g) ≠ 1` joined when
/// `χ_j(g_i)χ_i(g_j) = 1`. A pair may repeat when `χ(g) = -1`.
pub fn theta_search_with(gr: &AbelianGroup, cfg: &ThetaConfig) -> ThetaResult {
    let c = Compat::new(gr);
    let els = gr.elements();
    let chars = gr.characters();
    let witness_of = |clique: &[usize]| -> Option<QlsDatum> {
        if clique.is_empty() {
            return None;
        }
        let g: Vec<GroupElement> = clique.iter().map(|&v| els[c.verts[v].0].clone()).collect();
        let chi: Vec<Character> = clique.iter().map(|&v| chars[c.verts[v].1].clone()).collect();
        Some(validate_datum(gr, &g, &chi).expect("clique is a datum"))
    };
    if gr.order() > cfg.group_bound {
        // greedy lower bound
        let mut clique: Vec<usize> = Vec::new();
        for v in 0..c.verts.len() {
            while clique.len() < cfg.max_rank && clique.iter().chain([&v]).all(|&u| c.adj(u, v)) {
                clique.push(v);
                if !c.adj(v, v) {
                    break;
                }
            }
        }
        return ThetaResult {
            theta: clique.len(),
            exact: clique.len() >= cfg.max_rank,
            witness: witness_of(&clique),
            nodes: 0,
            note: Some(format!(
                "|G| = {} exceeds the bound {}; greedy lower bound",
                gr.order(),
                cfg.group_bound
            )),
        };
    }
    let mut s = CliqueSearch {
        c: &c,
        max_rank: cfg.max_rank,
        budget: cfg.node_budget,
        nodes: 0,
        best: Vec::new(),
        exhausted: false,
    };
    let all: Vec<usize> = (0..c.verts.len()).collect();
    s.extend(&mut Vec::new(), &all);
    let exact = !s.exhausted || s.best.len() >= cfg.max_rank;
    ThetaResult {
        theta: s.best.len(),
        exact,
        witness: witness_of(&s.best),
        nodes: s.nodes,
        note: (!exact).then(|| format!("node budget {} exhausted; lower bound", cfg.node_budget)),
    }
}

/// Presentation shapes of liftings of index `p` or `p²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Shape {
    A,
    B1,
    B2,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::A => "(A)",
            Shape::B1 => "(B1)",
            Shape::B2 => "(B2)",
        })
    }
}

/// An isomorphism class found by [`enumerate_liftings`].
#[derive(Clone, Debug)]
pub struct EnumeratedClass {
    pub shape: Shape,
    pub representative: CensusEntry,
    /// Descriptions of every datum in the class.
    pub members: Vec<String>,
}

impl EnumeratedClass {
    pub fn to_json(&self) -> Value {
        json!({
            "shape": self.shape.to_string(),
            "representative": self.representative.to_json(),
            "members": self.members,
        })
    }
}

/// Short description such as `g1=(1) chi1=(2) mu1=0, lambda12=1`.
pub fn describe_datum(cd: &CompatibleDatum) -> String {
    let d = &cd.qls;
    let mut parts: Vec<String> = (0..d.theta())
        .map(|i| {
            format!(
                "g{k}={} chi{k}={} mu{k}={}",
                d.g[i],
                GroupElement(d.chi[i].0.clone()),
                cd.mu[i] as u8,
                k = i + 1
            )
        })
        .collect();
    for ((i, j), l) in &cd.lambda {
        parts.push(format!("lambda{}{}={}", i + 1, j + 1, l.root_label()));
    }
    parts.join(", ")
}

/// Largest `|Γ| · index` accepted by [`enumerate_liftings`].
pub const ENUMERATION_DIM_BOUND: u64 = 81;

/// Compatible data over `Γ` of index `p` (rank one, `N = p`) or `p²`
/// (rank one with `N = p²`, rank two with `N_1 = N_2 = p`), each built and
/// grouped into isomorphism classes.
pub fn enumerate_liftings(
    gr: &AbelianGroup,
    index: u32,
    cfg: &IsoSearchConfig,
) -> Result<Vec<EnumeratedClass>, ClassifyError> {
    let primes = prime_factors(index as u64);
    let p = match primes.as_slice() {
        [p] if *p > 2 && (index as u64 == *p || index as u64 == p * p) => *p as u32,
        _ => {
            return Err(ClassifyError::Parameters(format!(
                "index {index} is not p or p^2 for an odd prime p"
            )))
        }
    };
    let dim = gr.order() * index as u64;
    if dim > ENUMERATION_DIM_BOUND {
        return Err(ClassifyError::Parameters(format!(
            "dimension {dim} exceeds the bound {ENUMERATION_DIM_BOUND}"
        )));
    }
    let c = Compat::new(gr);
    let els = gr.elements();
    let chars = gr.characters();
    let order_of_q = |v: usize| {
        let (g, ch) = c.verts[v];
        let e = c.table[ch][g];
        c.l / crate::cyclotomic::gcd(c.l as u64, e as u64) as u32
    };
    let mut data: Vec<(Shape, CompatibleDatum)> = Vec::new();
    let mut push_all = |shape: Shape, vs: &[usize]| {
        let g: Vec<GroupElement> = vs.iter().map(|&v| els[c.verts[v].0].clone()).collect();
        let chi: Vec<Character> = vs.iter().map(|&v| chars[c.verts[v].1].clone()).collect();
        let Ok(qls) = validate_datum(gr, &g, &chi) else { return };
        let t = vs.len();
        let lambdas: Vec<bool> = if t == 2 { vec![false, true] } else { vec![false] };
        for mask in 0..(1u32 << t) {
            let mu: Vec<bool> = (0..t).map(|i| mask >> i & 1 == 1).collect();
            for &l in &lambdas {
                let mut lam = BTreeMap::new();
                if l {
                    lam.insert((0, 1), Cyclotomic::one());
                }
                if let Ok(cd) = validate_compatible(&qls, &mu, &lam) {
                    data.push((shape, cd));
                }
            }
        }
    };
    let n = c.verts.len();
    let single = if index == p { Shape::A } else { Shape::B1 };
    for v in 0..n {
        if order_of_q(v) == index {
            push_all(single, &[v]);
        }
    }
    if index == p * p {
        for u in 0..n {
            for v in u + 1..n {
                if order_of_q(u) == p && order_of_q(v) == p && c.adj(u, v) {
                    push_all(Shape::B2, &[u, v]);
                }
            }
        }
    }
    // isomorphism-invariant bucket key: shape, and the multiset of
    // (ord g_i, q_i, μ_i) with whether λ vanishes
    let key = |shape: Shape, cd: &CompatibleDatum| {
        let d = &cd.qls;
        let mut parts: Vec<(u32, String, bool)> = (0..d.theta())
            .map(|i| (gr.elem_order(&d.g[i]), d.q[i].to_string(), cd.mu[i]))
            .collect();
        parts.sort();
        (shape, parts, cd.lambda.is_empty())
    };
    let mut buckets: BTreeMap<_, Vec<CompatibleDatum>> = BTreeMap::new();
    for (shape, cd) in data {
        buckets.entry(key(shape, &cd)).or_default().push(cd);
    }
    let buckets: Vec<_> = buckets.into_iter().collect();
    let per_bucket: Vec<Result<Vec<EnumeratedClass>, ClassifyError>> = buckets
        .par_iter()
        .map(|((shape, _, _), members)| {
            let built: Vec<StructureHopf> = members
                .iter()
                .map(|cd| build_lifting(cd).map(|l| l.hopf))
                .collect::<Result<_, _>>()?;
            let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
            'outer: for k in 0..members.len() {
                for (rep, list) in classes.iter_mut() {
                    if built[*rep].find_isomorphism(&built[k], cfg).is_found() {
                        list.push(k);
                        continue 'outer;
                    }
                }
                classes.push((k, vec![k]));
            }
            classes
                .into_iter()
                .map(|(rep, list)| {
                    let hopf = built[rep].clone();
                    let invariants = hopf.invariants()?;
                    Ok(EnumeratedClass {
                        shape: *shape,
                        representative: CensusEntry {
                            label: describe_datum(&members[rep]),
                            spec: None,
                            datum: members[rep].clone(),
                            hopf,
                            invariants,
                        },
                        members: list.iter().map(|&k| describe_datum(&members[k])).collect(),
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for r in per_bucket {
        out.extend(r?);
    }
    Ok(out)
}
