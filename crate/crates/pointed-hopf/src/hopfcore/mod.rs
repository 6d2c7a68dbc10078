//! Finite-dimensional Hopf algebras given by exact structure constants.
//!
//! A [`StructureHopf`] is either an ordinary Hopf algebra or a braided Hopf
//! algebra in the category of diagonal Yetter-Drinfeld modules over a
//! finite abelian group, where every basis vector carries a group degree
//! and an action character.

mod coradical;
mod iso;

pub use coradical::{
    GroupLikes, InvariantRecord, SkewPrimitiveBlock, SkewPrimitives, SkewTableRow,
};
pub use iso::{verify_isomorphism, IsoOutcome, IsoSearchConfig, Isomorphism};

use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::cyclotomic::{lcm, Cyclotomic};
use crate::exactla::{SparseEchelon, SparseVec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse coordinate list, sorted by index.
pub type Sparse = Vec<(usize, Cyclotomic)>;
/// Sparse element of `A ⊗ A`.
pub type Tensor2 = BTreeMap<(usize, usize), Cyclotomic>;
/// Sparse element of `A ⊗ A ⊗ A`.
pub type Tensor3 = BTreeMap<(usize, usize, usize), Cyclotomic>;

#[derive(Debug, thiserror::Error)]
pub enum HopfError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("operation needs an ordinary Hopf algebra")]
    NotOrdinary,
    #[error("antipode cannot be computed: {0}")]
    Antipode(String),
    #[error("coradical filtration did not stabilize at the full space")]
    FiltrationStalled,
}

/// Degree and action character of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YdData {
    pub group: AbelianGroup,
    pub degrees: Vec<GroupElement>,
    pub characters: Vec<Character>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Ordinary,
    Braided(YdData),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureHopf {
    pub labels: Vec<String>,
    /// `mult[i][j]` = `e_i e_j`.
    pub mult: Vec<Vec<Sparse>>,
    /// `comult[i]` = `Δ(e_i)` as `(j, k, c)` meaning `c e_j ⊗ e_k`.
    pub comult: Vec<Vec<(usize, usize, Cyclotomic)>>,
    pub unit: Sparse,
    pub counit: Vec<Cyclotomic>,
    /// Columns `S(e_i)`.
    pub antipode: Option<Vec<Sparse>>,
    pub kind: Kind,
}

/// One line of an axiom report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<28} {}", c.axiom, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub(crate) fn add_to(acc: &mut SparseVec, k: usize, c: &Cyclotomic) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Cyclotomic::zero);
    *e = &*e + c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

pub(crate) fn add_to2(acc: &mut Tensor2, k: (usize, usize), c: &Cyclotomic) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Cyclotomic::zero);
    *e = &*e + c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

fn add_to3(acc: &mut Tensor3, k: (usize, usize, usize), c: &Cyclotomic) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(Cyclotomic::zero);
    *e = &*e + c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

pub(crate) fn to_sparse(v: &SparseVec) -> Sparse {
    v.iter().map(|(k, c)| (*k, c.clone())).collect()
}

pub(crate) fn from_sparse(v: &Sparse) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, c) in v {
        add_to(&mut out, *k, c);
    }
    out
}

pub(crate) fn basis_vec(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Cyclotomic::one());
    v
}

/// Flattened index of `e_a ⊗ e_b`.
pub(crate) fn pair_index(d: usize, a: usize, b: usize) -> usize {
    a * d + b
}

impl StructureHopf {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn is_braided(&self) -> bool {
        matches!(self.kind, Kind::Braided(_))
    }

    pub fn yd(&self) -> Option<&YdData> {
        match &self.kind {
            Kind::Braided(y) => Some(y),
            Kind::Ordinary => None,
        }
    }

    /// The smallest level containing every structure constant.
    pub fn field_level(&self) -> u32 {
        let mut l = 1u64;
        let mut see = |c: &Cyclotomic| l = lcm(l, c.level() as u64);
        for row in &self.mult {
            for e in row {
                for (_, c) in e {
                    see(c);
                }
            }
        }
        for t in &self.comult {
            for (_, _, c) in t {
                see(c);
            }
        }
        for (_, c) in &self.unit {
            see(c);
        }
        for c in &self.counit {
            see(c);
        }
        if let Some(s) = &self.antipode {
            for col in s {
                for (_, c) in col {
                    see(c);
                }
            }
        }
        if let Kind::Braided(y) = &self.kind {
            l = lcm(l, y.group.exponent() as u64);
        }
        l as u32
    }

    pub fn unit_vec(&self) -> SparseVec {
        from_sparse(&self.unit)
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in &self.mult[*i][*j] {
                    add_to(&mut acc, *k, &(&ab * c));
                }
            }
        }
        acc
    }

    pub fn mul_basis(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, b) in y {
            for (k, c) in &self.mult[i][*j] {
                add_to(&mut acc, *k, &(b * c));
            }
        }
        acc
    }

    pub fn delta(&self, x: &SparseVec) -> Tensor2 {
        let mut acc = Tensor2::new();
        for (i, a) in x {
            for (j, k, c) in &self.comult[*i] {
                add_to2(&mut acc, (*j, *k), &(a * c));
            }
        }
        acc
    }

    pub fn delta_basis(&self, i: usize) -> Tensor2 {
        let mut acc = Tensor2::new();
        for (j, k, c) in &self.comult[i] {
            add_to2(&mut acc, (*j, *k), c);
        }
        acc
    }

    pub fn counit_of(&self, x: &SparseVec) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (i, a) in x {
            if !self.counit[*i].is_zero() {
                acc = &acc + &(a * &self.counit[*i]);
            }
        }
        acc
    }

    pub fn antipode_of(&self, x: &SparseVec) -> Option<SparseVec> {
        let s = self.antipode.as_ref()?;
        let mut acc = SparseVec::new();
        for (i, a) in x {
            for (k, c) in &s[*i] {
                add_to(&mut acc, *k, &(a * c));
            }
        }
        Some(acc)
    }

    /// Braiding scalar for moving `e_b` past `e_a`: `χ_b(deg a)`.
    fn braid_scalar(&self, a: usize, b: usize) -> Cyclotomic {
        match &self.kind {
            Kind::Ordinary => Cyclotomic::one(),
            Kind::Braided(y) => y
                .group
                .evaluate(&y.characters[b], &y.degrees[a])
                .expect("consistent yd data"),
        }
    }

    /// Product in `A ⊗ A`, using the braiding in the braided case:
    /// `(a⊗b)(c⊗d) = χ_c(deg b) ac ⊗ bd`.
    pub fn tensor_mul(&self, x: &Tensor2, y: &Tensor2) -> Tensor2 {
        let mut acc = Tensor2::new();
        for ((a, b), u) in x {
            for ((c, d), v) in y {
                let mut coef = u * v;
                if self.is_braided() {
                    coef = &coef * &self.braid_scalar(*b, *c);
                }
                for (p, s) in &self.mult[*a][*c] {
                    let cs = &coef * s;
                    for (q, t) in &self.mult[*b][*d] {
                        add_to2(&mut acc, (*p, *q), &(&cs * t));
                    }
                }
            }
        }
        acc
    }

    /// Basis indices generating the algebra: the smallest greedy set `S`
    /// (in index order) such that `1` and repeated left multiplication by
    /// `S` span `A`.
    pub fn generating_set(&self) -> Vec<usize> {
        let d = self.dim();
        let mut gens: Vec<usize> = Vec::new();
        loop {
            let (span, ech) = self.left_closure(&gens);
            if span.len() == d {
                return gens;
            }
            let next = (0..d)
                .find(|&i| !ech.contains(&basis_vec(i)))
                .expect("proper span misses a basis vector");
            gens.push(next);
        }
    }

    /// Basis of the span of right-nested words `s_1(s_2(…(s_k 1)))`.
    fn left_closure(&self, gens: &[usize]) -> (Vec<SparseVec>, SparseEchelon) {
        let mut ech = SparseEchelon::new();
        let mut span = Vec::new();
        let one = self.unit_vec();
        ech.push(&one);
        span.push(one);
        let mut frontier = 0;
        while frontier < span.len() {
            let v = span[frontier].clone();
            frontier += 1;
            for &s in gens {
                let w = self.mul_basis(s, &v);
                if !ech.contains(&w) {
                    ech.push(&w);
                    span.push(w);
                }
            }
        }
        (span, ech)
    }

    fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Exact check of every structure axiom.
    ///
    /// Associativity and multiplicativity of `Δ` and `ε` are checked on
    /// `S × A × A` and `S × A` for a generating set `S`; by induction on
    /// right-nested words this is equivalent to the full check.
    pub fn verify_axioms(&self) -> AxiomReport {
        let mut checks = Vec::new();
        let d = self.dim();
        let shape = self.shape_problem();
        checks.push(AxiomCheck {
            axiom: "shape".into(),
            passed: shape.is_none(),
            witness: shape.clone(),
        });
        if shape.is_some() {
            return AxiomReport { checks };
        }
        let one = self.unit_vec();
        let mut push = |name: &str, w: Option<String>| {
            checks.push(AxiomCheck {
                axiom: name.into(),
                passed: w.is_none(),
                witness: w,
            })
        };

        // unit
        let mut w = None;
        for i in 0..d {
            let e = basis_vec(i);
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                w = Some(format!("1·{0} or {0}·1 differs from {0}", self.label(i)));
                break;
            }
        }
        push("unit", w);

        let gens = self.generating_set();

        // associativity
        let mut w = None;
        'assoc: for &s in &gens {
            for b in 0..d {
                let sb = from_sparse(&self.mult[s][b]);
                for c in 0..d {
                    let lhs = self.mul(&sb, &basis_vec(c));
                    let rhs = self.mul_basis(s, &from_sparse(&self.mult[b][c]));
                    if lhs != rhs {
                        w = Some(format!(
                            "({} {}) {} != {} ({} {})",
                            self.label(s),
                            self.label(b),
                            self.label(c),
                            self.label(s),
                            self.label(b),
                            self.label(c)
                        ));
                        break 'assoc;
                    }
                }
            }
        }
        push("associativity", w);

        // counit
        let mut w = None;
        for i in 0..d {
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for (j, k, c) in &self.comult[i] {
                add_to(&mut left, *k, &(&self.counit[*j] * c));
                add_to(&mut right, *j, &(&self.counit[*k] * c));
            }
            if left != basis_vec(i) || right != basis_vec(i) {
                w = Some(format!("(ε⊗id)Δ or (id⊗ε)Δ differs at {}", self.label(i)));
                break;
            }
        }
        push("counit", w);

        // coassociativity
        let mut w = None;
        for i in 0..d {
            let mut l = Tensor3::new();
            let mut r = Tensor3::new();
            for (j, k, c) in &self.comult[i] {
                for (a, b, e) in &self.comult[*j] {
                    add_to3(&mut l, (*a, *b, *k), &(c * e));
                }
                for (a, b, e) in &self.comult[*k] {
                    add_to3(&mut r, (*j, *a, *b), &(c * e));
                }
            }
            if l != r {
                w = Some(format!("(Δ⊗id)Δ != (id⊗Δ)Δ at {}", self.label(i)));
                break;
            }
        }
        push("coassociativity", w);

        // Δ and ε are algebra maps
        let mut w = None;
        let mut one_one = Tensor2::new();
        for (a, x) in &one {
            for (b, y) in &one {
                add_to2(&mut one_one, (*a, *b), &(x * y));
            }
        }
        if self.delta(&one) != one_one {
            w = Some("Δ(1) != 1⊗1".to_string());
        }
        if w.is_none() {
            'dm: for &s in &gens {
                let ds = self.delta_basis(s);
                for b in 0..d {
                    let lhs = self.delta(&from_sparse(&self.mult[s][b]));
                    let rhs = self.tensor_mul(&ds, &self.delta_basis(b));
                    if lhs != rhs {
                        w = Some(format!(
                            "Δ({} {}) != Δ({})Δ({})",
                            self.label(s),
                            self.label(b),
                            self.label(s),
                            self.label(b)
                        ));
                        break 'dm;
                    }
                }
            }
        }
        push("comultiplication_multiplicative", w);

        let mut w = None;
        if !self.counit_of(&one).is_one() {
            w = Some("ε(1) != 1".to_string());
        }
        if w.is_none() {
            'em: for &s in &gens {
                for b in 0..d {
                    let lhs = self.counit_of(&from_sparse(&self.mult[s][b]));
                    let rhs = &self.counit[s] * &self.counit[b];
                    if lhs != rhs {
                        w = Some(format!(
                            "ε({} {}) != ε({})ε({})",
                            self.label(s),
                            self.label(b),
                            self.label(s),
                            self.label(b)
                        ));
                        break 'em;
                    }
                }
            }
        }
        push("counit_multiplicative", w);

        // antipode
        let w = match &self.antipode {
            None => Some("antipode missing".to_string()),
            Some(s) => {
                let mut w = None;
                for i in 0..d {
                    let mut l = SparseVec::new();
                    let mut r = SparseVec::new();
                    for (j, k, c) in &self.comult[i] {
                        let sj = from_sparse(&s[*j]);
                        let sk = from_sparse(&s[*k]);
                        for (t, x) in self.mul(&sj, &basis_vec(*k)) {
                            add_to(&mut l, t, &(c * &x));
                        }
                        for (t, x) in self.mul(&basis_vec(*j), &sk) {
                            add_to(&mut r, t, &(c * &x));
                        }
                    }
                    let mut target = SparseVec::new();
                    for (t, x) in &one {
                        add_to(&mut target, *t, &(x * &self.counit[i]));
                    }
                    if l != target || r != target {
                        w = Some(format!("S*id or id*S != ηε at {}", self.label(i)));
                        break;
                    }
                }
                w
            }
        };
        push("antipode", w);

        if let Kind::Braided(y) = &self.kind {
            let w = self.yd_problem(y);
            push("yetter_drinfeld_homogeneity", w);
        }
        AxiomReport { checks }
    }

    fn shape_problem(&self) -> Option<String> {
        let d = self.dim();
        if d == 0 {
            return Some("empty basis".into());
        }
        if self.mult.len() != d || self.mult.iter().any(|r| r.len() != d) {
            return Some("multiplication table is not d×d".into());
        }
        if self.comult.len() != d || self.counit.len() != d {
            return Some("comultiplication or counit has wrong length".into());
        }
        let bad_idx = self
            .mult
            .iter()
            .flatten()
            .flatten()
            .any(|(k, _)| *k >= d)
            || self
                .comult
                .iter()
                .flatten()
                .any(|(j, k, _)| *j >= d || *k >= d)
            || self.unit.iter().any(|(k, _)| *k >= d)
            || self
                .antipode
                .as_ref()
                .is_some_and(|s| s.len() != d || s.iter().flatten().any(|(k, _)| *k >= d));
        if bad_idx {
            return Some("basis index out of range".into());
        }
        if let Kind::Braided(y) = &self.kind {
            if y.degrees.len() != d || y.characters.len() != d {
                return Some("yd data length differs from dimension".into());
            }
            let r = y.group.rank();
            if y.degrees.iter().any(|g| g.0.len() != r) || y.characters.iter().any(|c| c.0.len() != r)
            {
                return Some("yd data rank differs from group".into());
            }
        }
        None
    }

    /// Every structure map must preserve degree and character.
    fn yd_problem(&self, y: &YdData) -> Option<String> {
        let gr = &y.group;
        let d = self.dim();
        let hom = |k: usize, g: &GroupElement, c: &Character| y.degrees[k] == *g && y.characters[k] == *c;
        for i in 0..d {
            for j in 0..d {
                let g = gr.compose(&y.degrees[i], &y.degrees[j]);
                let c = gr.char_mul(&y.characters[i], &y.characters[j]);
                if let Some((k, _)) = self.mult[i][j].iter().find(|(k, _)| !hom(*k, &g, &c)) {
                    return Some(format!(
                        "{}·{} has inhomogeneous component {}",
                        self.label(i),
                        self.label(j),
                        self.label(*k)
                    ));
                }
            }
            for (a, b, _) in &self.comult[i] {
                let g = gr.compose(&y.degrees[*a], &y.degrees[*b]);
                let c = gr.char_mul(&y.characters[*a], &y.characters[*b]);
                if g != y.degrees[i] || c != y.characters[i] {
                    return Some(format!(
                        "Δ({}) has inhomogeneous term {}⊗{}",
                        self.label(i),
                        self.label(*a),
                        self.label(*b)
                    ));
                }
            }
            let trivial = y.degrees[i] == gr.identity() && y.characters[i] == gr.trivial_character();
            if !trivial && !self.counit[i].is_zero() {
                return Some(format!("ε nonzero on inhomogeneous {}", self.label(i)));
            }
            if let Some(s) = &self.antipode {
                if let Some((k, _)) = s[i].iter().find(|(k, _)| !hom(*k, &y.degrees[i], &y.characters[i])) {
                    return Some(format!("S({}) has component {}", self.label(i), self.label(*k)));
                }
            }
        }
        let id = gr.identity();
        let eps = gr.trivial_character();
        if let Some((k, _)) = self.unit.iter().find(|(k, _)| !hom(*k, &id, &eps)) {
            return Some(format!("unit has component {}", self.label(*k)));
        }
        None
    }

    /// Antipode of a connected coalgebra by the recursion
    /// `S(x) = ε(x)1 - Σ S(x') x''` over the terms of `Δ(x)` other than
    /// `x ⊗ 1`. Needs the unit to be a basis vector and every other term
    /// to involve strictly earlier-resolvable basis vectors.
    pub fn compute_connected_antipode(&self) -> Result<Vec<Sparse>, HopfError> {
        let d = self.dim();
        let u = match self.unit.as_slice() {
            [(k, c)] if c.is_one() => *k,
            _ => return Err(HopfError::Antipode("unit is not a basis vector".into())),
        };
        let mut s: Vec<Option<SparseVec>> = vec![None; d];
        let mut remaining = d;
        while remaining > 0 {
            let mut progressed = false;
            for m in 0..d {
                if s[m].is_some() {
                    continue;
                }
                let mut lead = None;
                let mut ready = true;
                for (a, b, c) in &self.comult[m] {
                    if *a == m && *b == u {
                        lead = Some(c.clone());
                    } else if s[*a].is_none() {
                        ready = false;
                    }
                }
                let Some(lead) = lead else {
                    return Err(HopfError::Antipode(format!("Δ({}) lacks the x⊗1 term", self.label(m))));
                };
                if !ready {
                    continue;
                }
                let mut acc = SparseVec::new();
                for (t, x) in self.unit_vec() {
                    add_to(&mut acc, t, &(&x * &self.counit[m]));
                }
                for (a, b, c) in &self.comult[m] {
                    if *a == m && *b == u {
                        continue;
                    }
                    let prod = self.mul(s[*a].as_ref().unwrap(), &basis_vec(*b));
                    for (t, x) in prod {
                        add_to(&mut acc, t, &-&(c * &x));
                    }
                }
                let inv = lead.inv().map_err(|_| HopfError::Antipode("zero leading term".into()))?;
                let acc: SparseVec = acc.into_iter().map(|(t, x)| (t, &x * &inv)).collect();
                s[m] = Some(acc);
                remaining -= 1;
                progressed = true;
            }
            if !progressed {
                return Err(HopfError::Antipode("comultiplication is not triangular".into()));
            }
        }
        Ok(s.into_iter().map(|v| to_sparse(&v.unwrap())).collect())
    }

    /// The dual Hopf algebra on the dual basis `e^i`.
    pub fn dual(&self) -> Result<StructureHopf, HopfError> {
        if self.is_braided() {
            return Err(HopfError::NotOrdinary);
        }
        let d = self.dim();
        let mut mult: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); d]; d];
        for (m, terms) in self.comult.iter().enumerate() {
            for (k, l, c) in terms {
                add_to(&mut mult[*k][*l], m, c);
            }
        }
        let mut comult: Vec<Vec<(usize, usize, Cyclotomic)>> = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                for (m, c) in &self.mult[i][j] {
                    comult[*m].push((i, j, c.clone()));
                }
            }
        }
        for t in comult.iter_mut() {
            t.sort_by_key(|a| (a.0, a.1));
        }
        let unit: Sparse = self
            .counit
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        let mut counit = vec![Cyclotomic::zero(); d];
        for (k, c) in &self.unit {
            counit[*k] = c.clone();
        }
        let antipode = self.antipode.as_ref().map(|s| {
            let mut cols: Vec<SparseVec> = vec![SparseVec::new(); d];
            for (i, col) in s.iter().enumerate() {
                for (k, c) in col {
                    add_to(&mut cols[*k], i, c);
                }
            }
            cols.iter().map(to_sparse).collect()
        });
        Ok(StructureHopf {
            labels: self.labels.iter().map(|l| format!("f[{l}]")).collect(),
            mult: mult.iter().map(|r| r.iter().map(to_sparse).collect()).collect(),
            comult,
            unit,
            counit,
            antipode,
            kind: Kind::Ordinary,
        })
    }

    /// Re-expresses the structure in a new basis. `basis[p]` is the
    /// `p`-th new basis vector in old coordinates and `inverse[k]` gives
    /// old `e_k` in new coordinates.
    pub fn change_basis(
        &self,
        basis: &[SparseVec],
        inverse: &[SparseVec],
        labels: Vec<String>,
    ) -> StructureHopf {
        let d = self.dim();
        let to_new = |v: &SparseVec| -> SparseVec {
            let mut acc = SparseVec::new();
            for (k, c) in v {
                for (p, x) in &inverse[*k] {
                    add_to(&mut acc, *p, &(c * x));
                }
            }
            acc
        };
        let to_new2 = |t: &Tensor2| -> Vec<(usize, usize, Cyclotomic)> {
            let mut acc = Tensor2::new();
            for ((a, b), c) in t {
                for (p, x) in &inverse[*a] {
                    let cx = c * x;
                    for (q, y) in &inverse[*b] {
                        add_to2(&mut acc, (*p, *q), &(&cx * y));
                    }
                }
            }
            acc.into_iter().map(|((p, q), c)| (p, q, c)).collect()
        };
        let mult = (0..d)
            .map(|p| {
                (0..d)
                    .map(|q| to_sparse(&to_new(&self.mul(&basis[p], &basis[q]))))
                    .collect()
            })
            .collect();
        let comult = (0..d).map(|p| to_new2(&self.delta(&basis[p]))).collect();
        let unit = to_sparse(&to_new(&self.unit_vec()));
        let counit = (0..d).map(|p| self.counit_of(&basis[p])).collect();
        let antipode = self.antipode.as_ref().map(|_| {
            (0..d)
                .map(|p| to_sparse(&to_new(&self.antipode_of(&basis[p]).unwrap())))
                .collect()
        });
        StructureHopf {
            labels,
            mult,
            comult,
            unit,
            counit,
            antipode,
            kind: self.kind.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HopfJson::from(self)).expect("serializable")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<StructureHopf, HopfError> {
        let raw: HopfJson = serde_json::from_str(s)?;
        raw.into_hopf()
    }
}

#[derive(Serialize, Deserialize)]
struct YdJson {
    group: Vec<u32>,
    degrees: Vec<Vec<u32>>,
    characters: Vec<Vec<u32>>,
}

type SparseJson = Vec<(usize, Cyclotomic)>;

#[derive(Serialize, Deserialize)]
struct HopfJson {
    field_level: u32,
    basis: Vec<String>,
    mult: Vec<(usize, usize, SparseJson)>,
    comult: Vec<(usize, Vec<(usize, usize, Cyclotomic)>)>,
    unit: SparseJson,
    counit: Vec<Cyclotomic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    antipode: Option<Vec<(usize, SparseJson)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    yd: Option<YdJson>,
}

impl From<&StructureHopf> for HopfJson {
    fn from(h: &StructureHopf) -> Self {
        let d = h.dim();
        let mut mult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                if !h.mult[i][j].is_empty() {
                    mult.push((i, j, h.mult[i][j].clone()));
                }
            }
        }
        HopfJson {
            field_level: h.field_level(),
            basis: h.labels.clone(),
            mult,
            comult: h
                .comult
                .iter()
                .enumerate()
                .map(|(i, t)| (i, t.clone()))
                .collect(),
            unit: h.unit.clone(),
            counit: h.counit.clone(),
            antipode: h
                .antipode
                .as_ref()
                .map(|s| s.iter().enumerate().map(|(i, c)| (i, c.clone())).collect()),
            yd: h.yd().map(|y| YdJson {
                group: y.group.factors().to_vec(),
                degrees: y.degrees.iter().map(|g| g.0.clone()).collect(),
                characters: y.characters.iter().map(|c| c.0.clone()).collect(),
            }),
        }
    }
}

impl HopfJson {
    fn into_hopf(self) -> Result<StructureHopf, HopfError> {
        let d = self.basis.len();
        let bad = |m: &str| HopfError::Malformed(m.to_string());
        let mut mult = vec![vec![Vec::new(); d]; d];
        for (i, j, v) in self.mult {
            if i >= d || j >= d {
                return Err(bad("mult index out of range"));
            }
            mult[i][j] = to_sparse(&from_sparse(&v));
        }
        let mut comult = vec![Vec::new(); d];
        for (i, t) in self.comult {
            if i >= d {
                return Err(bad("comult index out of range"));
            }
            comult[i] = t;
        }
        if self.counit.len() != d {
            return Err(bad("counit length differs from basis size"));
        }
        let antipode = match self.antipode {
            None => None,
            Some(cols) => {
                let mut s = vec![Vec::new(); d];
                for (i, c) in cols {
                    if i >= d {
                        return Err(bad("antipode index out of range"));
                    }
                    s[i] = c;
                }
                Some(s)
            }
        };
        let kind = match self.yd {
            None => Kind::Ordinary,
            Some(y) => {
                let group = AbelianGroup::new(y.group).map_err(|e| HopfError::Malformed(e.to_string()))?;
                let norm = |v: Vec<u32>| -> Vec<i64> { v.into_iter().map(|x| x as i64).collect() };
                Kind::Braided(YdData {
                    degrees: y.degrees.into_iter().map(|g| group.element(&norm(g))).collect(),
                    characters: y.characters.into_iter().map(|c| group.character(&norm(c))).collect(),
                    group,
                })
            }
        };
        let h = StructureHopf {
            labels: self.basis,
            mult,
            comult,
            unit: self.unit,
            counit: self.counit,
            antipode,
            kind,
        };
        if let Some(p) = h.shape_problem() {
            return Err(HopfError::Malformed(p));
        }
        Ok(h)
    }
}

/// Group algebra `kΓ` on the basis of group elements in lexicographic
/// order.
pub fn group_algebra(gr: &AbelianGroup) -> StructureHopf {
    let els = gr.elements();
    let d = els.len();
    let one = Cyclotomic::one();
    let mult = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| vec![(gr.index_of(&gr.compose(&els[i], &els[j])), one.clone())])
                .collect()
        })
        .collect();
    StructureHopf {
        labels: els.iter().map(|g| format!("g{g}")).collect(),
        mult,
        comult: (0..d).map(|i| vec![(i, i, one.clone())]).collect(),
        unit: vec![(0, one.clone())],
        counit: vec![one.clone(); d],
        antipode: Some(
            els.iter()
                .map(|g| vec![(gr.index_of(&gr.inverse(g)), one.clone())])
                .collect(),
        ),
        kind: Kind::Ordinary,
    }
}
