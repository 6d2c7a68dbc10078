//! Coradical filtration, group-likes, skew-primitives, associated graded
//! and isomorphism invariants.

use super::{add_to, basis_vec, pair_index, HopfError, Kind, StructureHopf, Tensor2};
use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::cyclotomic::{lcm, prime_factors, Cyclotomic};
use crate::exactla::{
    kernel, kernel_of_columns, sparsify, trace_form, Matrix, SparseEchelon, SparseVec, Subspace,
};
use serde::Serialize;
use std::collections::HashMap;

/// The group-like elements of a Hopf algebra and the group they form.
#[derive(Clone, Debug)]
pub struct GroupLikes {
    /// Each group-like in basis coordinates; index 0 is the unit.
    pub elements: Vec<SparseVec>,
    /// Cayley table on indices into `elements`.
    pub table: Vec<Vec<usize>>,
    pub abelian: bool,
    /// Invariant factors `M_1 | M_2 | …`; empty for the trivial group or
    /// a non-abelian group.
    pub invariants: Vec<u32>,
    /// Elements of orders `M_1, M_2, …` giving a direct decomposition.
    pub generators: Vec<usize>,
    /// Exponent vector of each element over `generators`.
    pub exponents: Vec<GroupElement>,
    /// Dimension of the coradical the search ran in.
    pub coradical_dim: usize,
}

impl GroupLikes {
    pub fn count(&self) -> usize {
        self.elements.len()
    }

    /// Whether the group-likes span the coradical.
    pub fn pointed(&self) -> bool {
        self.count() == self.coradical_dim
    }

    /// The abstract group `Z/M_1 ⊕ …`, when nontrivial and abelian.
    pub fn group(&self) -> Option<AbelianGroup> {
        if !self.abelian || self.invariants.is_empty() {
            return None;
        }
        AbelianGroup::new(self.invariants.clone()).ok()
    }

    pub fn index_of_exponents(&self, g: &GroupElement) -> Option<usize> {
        self.exponents.iter().position(|e| e == g)
    }

    pub fn order_of(&self, i: usize) -> u32 {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.table[cur][i];
            k += 1;
        }
        k
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        (0..self.count()).find(|&j| self.table[i][j] == 0).expect("group")
    }
}

/// One character eigenspace `P_{g,1}^χ`.
#[derive(Clone, Debug)]
pub struct SkewPrimitiveBlock {
    pub character: Character,
    pub basis: Vec<SparseVec>,
}

/// `P_{g,1}` with its decomposition under conjugation by group-likes.
#[derive(Clone, Debug)]
pub struct SkewPrimitives {
    pub g: usize,
    pub space: Subspace,
    pub blocks: Vec<SkewPrimitiveBlock>,
}

impl SkewPrimitives {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Isomorphism-invariant summary of one `P_{g,1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SkewTableRow {
    pub g_order: u32,
    pub dim: usize,
    /// `(ord χ, χ(g), dim P_{g,1}^χ)` over nontrivial χ, sorted.
    pub blocks: Vec<(u32, String, usize)>,
}

impl std::fmt::Display for SkewTableRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P(ord {}):{}", self.g_order, self.dim)?;
        let b: Vec<String> = self
            .blocks
            .iter()
            .map(|(o, v, d)| format!("{v}/ord {o}:{d}"))
            .collect();
        if !b.is_empty() {
            write!(f, "[{}]", b.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub dimension: usize,
    pub grouplike_count: usize,
    pub group_abelian: bool,
    pub group_invariants: Vec<u32>,
    pub pointed: bool,
    pub filtration_dims: Vec<usize>,
    pub skew_primitive_table: Vec<SkewTableRow>,
    /// Algebra maps to `k̄`, from the abelianization.
    pub one_dim_reps: usize,
    /// Every simple module over `k̄` is one-dimensional.
    pub dual_pointed: bool,
}

impl InvariantRecord {
    /// Name and values of the first field on which two records differ.
    pub fn first_difference(&self, other: &InvariantRecord) -> Option<(String, String, String)> {
        macro_rules! cmp {
            ($f:ident) => {
                if self.$f != other.$f {
                    return Some((
                        stringify!($f).to_string(),
                        format!("{:?}", self.$f),
                        format!("{:?}", other.$f),
                    ));
                }
            };
        }
        cmp!(dimension);
        cmp!(grouplike_count);
        cmp!(group_invariants);
        cmp!(group_abelian);
        cmp!(pointed);
        cmp!(one_dim_reps);
        cmp!(dual_pointed);
        cmp!(filtration_dims);
        if self.skew_primitive_table != other.skew_primitive_table {
            let show = |t: &[SkewTableRow]| {
                t.iter().filter(|r| r.dim > 0).map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
            };
            return Some((
                "skew_primitive_table".into(),
                show(&self.skew_primitive_table),
                show(&other.skew_primitive_table),
            ));
        }
        None
    }
}

/// Roots of unity of `Q(ζ_level)` together with zero.
fn eigen_candidates(level: u32) -> Vec<Cyclotomic> {
    let n = if level % 2 == 1 { 2 * level } else { level };
    let mut out = vec![Cyclotomic::zero()];
    out.extend((0..n).map(|k| Cyclotomic::root_of_unity(n, k as i64)));
    out
}

fn combine(basis: &[SparseVec], coeffs: &[Cyclotomic]) -> SparseVec {
    let mut acc = SparseVec::new();
    for (v, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (k, x) in v {
            add_to(&mut acc, *k, &(c * x));
        }
    }
    acc
}

fn scale(v: &SparseVec, c: &Cyclotomic) -> SparseVec {
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// Splits the span of `basis` into eigenspaces of `op` for the candidate
/// eigenvalues, returning `(eigenvalue, eigenspace basis)` pairs.
fn split<F>(basis: &[SparseVec], op: F, candidates: &[Cyclotomic]) -> Vec<(Cyclotomic, Vec<SparseVec>)>
where
    F: Fn(&SparseVec) -> SparseVec,
{
    let images: Vec<SparseVec> = basis.iter().map(&op).collect();
    if images.iter().all(|v| v.is_empty()) {
        return vec![(Cyclotomic::zero(), basis.to_vec())];
    }
    let mut out = Vec::new();
    let mut found = 0;
    for lam in candidates {
        let cols: Vec<SparseVec> = images
            .iter()
            .zip(basis)
            .map(|(t, w)| {
                let mut c = t.clone();
                for (k, x) in w {
                    add_to(&mut c, *k, &-&(lam * x));
                }
                c
            })
            .collect();
        let ker = kernel_of_columns(&cols);
        if ker.dim() > 0 {
            found += ker.dim();
            let vecs = ker.basis().iter().map(|x| combine(basis, x)).collect();
            out.push((lam.clone(), vecs));
            if found == basis.len() {
                break;
            }
        }
    }
    out
}

/// Coordinates of each old basis vector in a new basis.
pub(crate) fn invert_basis(basis: &[SparseVec], d: usize) -> Vec<SparseVec> {
    let mut ech = SparseEchelon::new();
    for b in basis {
        assert!(ech.push(b).is_none(), "basis vectors must be independent");
    }
    (0..d)
        .map(|k| {
            let (res, combo) = ech.reduce(&basis_vec(k));
            assert!(res.is_empty(), "basis must span");
            combo.into_iter().map(|(i, c)| (i, -c)).collect()
        })
        .collect()
}

impl StructureHopf {
    /// Trace form of the dual algebra `A*`, whose product is the
    /// transpose of `Δ`.
    fn dual_trace_form(&self) -> Matrix {
        let d = self.dim();
        let mut prods: Vec<Vec<Vec<(usize, Cyclotomic)>>> = vec![vec![Vec::new(); d]; d];
        for (m, terms) in self.comult.iter().enumerate() {
            for (k, l, c) in terms {
                prods[*k][*l].push((m, c.clone()));
            }
        }
        trace_form(d, |i, j| &prods[i][j])
    }

    /// Jacobson radical of `A*` in dual coordinates.
    pub fn dual_radical(&self) -> Subspace {
        kernel(&self.dual_trace_form(), self.dim())
    }

    /// Jacobson radical of `A`.
    pub fn radical(&self) -> Subspace {
        let d = self.dim();
        kernel(&trace_form(d, |i, j| &self.mult[i][j]), d)
    }

    /// `A_0 = J^⊥` for the radical `J` of the dual.
    pub fn coradical(&self) -> Subspace {
        self.dual_radical().annihilator()
    }

    /// `Δ^{-1}(U ⊗ A + A ⊗ V)`.
    pub fn wedge(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let d = self.dim();
        let fu: Vec<SparseVec> = u.annihilator().basis().iter().map(|r| sparsify(r)).collect();
        let gv: Vec<SparseVec> = v.annihilator().basis().iter().map(|r| sparsify(r)).collect();
        if fu.is_empty() || gv.is_empty() {
            return Subspace::full(d);
        }
        let mut f_by_col: Vec<Vec<(usize, Cyclotomic)>> = vec![Vec::new(); d];
        for (fi, f) in fu.iter().enumerate() {
            for (k, x) in f {
                f_by_col[*k].push((fi, x.clone()));
            }
        }
        let mut g_by_col: Vec<Vec<(usize, Cyclotomic)>> = vec![Vec::new(); d];
        for (gi, g) in gv.iter().enumerate() {
            for (k, x) in g {
                g_by_col[*k].push((gi, x.clone()));
            }
        }
        let ng = gv.len();
        let cols: Vec<SparseVec> = (0..d)
            .map(|m| {
                let mut col = SparseVec::new();
                for (a, b, c) in &self.comult[m] {
                    for (fi, x) in &f_by_col[*a] {
                        let cx = c * x;
                        for (gi, y) in &g_by_col[*b] {
                            add_to(&mut col, fi * ng + gi, &(&cx * y));
                        }
                    }
                }
                col
            })
            .collect();
        kernel_of_columns(&cols)
    }

    /// The coradical filtration `A_0 ⊆ A_1 ⊆ …`, ending at the first term
    /// equal to `A`.
    pub fn coradical_filtration(&self) -> Result<Vec<Subspace>, HopfError> {
        let d = self.dim();
        let a0 = self.coradical();
        let mut out = vec![a0.clone()];
        while out.last().unwrap().dim() < d {
            let next = self.wedge(out.last().unwrap(), &a0);
            if next.dim() == out.last().unwrap().dim() {
                return Err(HopfError::FiltrationStalled);
            }
            out.push(next);
        }
        Ok(out)
    }

    /// Group-like elements, found inside the coradical as common
    /// eigenvectors of the operators `(e^k ⊗ id)Δ`.
    ///
    /// Only eigenvalues that are zero or roots of unity of order dividing
    /// `lcm(field level, dim A)` are searched, so a group-like is found
    /// exactly when all its coordinates are of that form. This holds for every algebra built
    /// in this crate and for their duals.
    pub fn grouplikes(&self) -> GroupLikes {
        let a0 = self.coradical();
        self.grouplikes_in(&a0)
    }

    pub fn grouplikes_in(&self, a0: &Subspace) -> GroupLikes {
        let d = self.dim();
        // orders of group-likes divide the dimension
        let cands = eigen_candidates(lcm(self.field_level() as u64, d as u64) as u32);
        let mut found: Vec<SparseVec> = Vec::new();
        // each piece carries the common eigenvalues seen so far, which are
        // the coordinates of the only group-like it can contain
        let mut pieces: Vec<(Vec<SparseVec>, SparseVec)> = vec![(
            a0.basis().iter().map(|r| sparsify(r)).collect(),
            SparseVec::new(),
        )];
        for k in 0..d {
            if pieces.is_empty() {
                break;
            }
            let op = |v: &SparseVec| -> SparseVec {
                let mut acc = SparseVec::new();
                for (m, x) in v {
                    for (a, b, c) in &self.comult[*m] {
                        if *a == k {
                            add_to(&mut acc, *b, &(x * c));
                        }
                    }
                }
                acc
            };
            let mut next = Vec::new();
            for (piece, lams) in pieces {
                if piece.len() == 1 {
                    if let Some(g) = self.as_grouplike(&piece[0]) {
                        found.push(g);
                    }
                    continue;
                }
                for (lam, sub) in split(&piece, op, &cands) {
                    let mut l = lams.clone();
                    add_to(&mut l, k, &lam);
                    next.push((sub, l));
                }
            }
            pieces = next;
        }
        for (piece, lams) in pieces {
            let cand = if piece.len() == 1 { piece[0].clone() } else { lams };
            if let Some(g) = self.as_grouplike(&cand) {
                found.push(g);
            }
        }
        self.assemble_group(found, a0.dim())
    }

    fn as_grouplike(&self, v: &SparseVec) -> Option<SparseVec> {
        let e = self.counit_of(v);
        if e.is_zero() {
            return None;
        }
        let g = scale(v, &e.inv().unwrap());
        let mut gg = Tensor2::new();
        for (a, x) in &g {
            for (b, y) in &g {
                super::add_to2(&mut gg, (*a, *b), &(x * y));
            }
        }
        (self.delta(&g) == gg).then_some(g)
    }

    fn assemble_group(&self, mut found: Vec<SparseVec>, coradical_dim: usize) -> GroupLikes {
        found.sort();
        found.dedup();
        let one = self.unit_vec();
        if let Some(p) = found.iter().position(|g| *g == one) {
            let u = found.remove(p);
            found.insert(0, u);
        }
        let n = found.len();
        let index: HashMap<SparseVec, usize> =
            found.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        *index
                            .get(&self.mul(&found[i], &found[j]))
                            .expect("group-likes closed under product")
                    })
                    .collect()
            })
            .collect();
        let abelian = (0..n).all(|i| (0..n).all(|j| table[i][j] == table[j][i]));
        let mut gl = GroupLikes {
            elements: found,
            table,
            abelian,
            invariants: Vec::new(),
            generators: Vec::new(),
            exponents: Vec::new(),
            coradical_dim,
        };
        if abelian && n > 1 {
            gl.invariants = invariant_factors(&gl);
            gl.generators = find_generators(&gl, &gl.invariants).expect("decomposition exists");
            let gr = AbelianGroup::new(gl.invariants.clone()).unwrap();
            let mut exps = vec![GroupElement(Vec::new()); n];
            for e in gr.elements() {
                let mut cur = 0;
                for (l, &x) in e.0.iter().enumerate() {
                    for _ in 0..x {
                        cur = gl.table[cur][gl.generators[l]];
                    }
                }
                exps[cur] = e;
            }
            gl.exponents = exps;
        } else if n == 1 {
            gl.exponents = vec![GroupElement(Vec::new())];
        }
        gl
    }

    pub fn is_pointed(&self) -> bool {
        self.grouplikes().pointed()
    }

    /// `P_{g,h} = {x : Δ(x) = x⊗h + g⊗x}`.
    pub fn skew_primitives(&self, g: &SparseVec, h: &SparseVec) -> Subspace {
        let d = self.dim();
        let cols: Vec<SparseVec> = (0..d)
            .map(|m| {
                let mut col = SparseVec::new();
                for (a, b, c) in &self.comult[m] {
                    add_to(&mut col, pair_index(d, *a, *b), c);
                }
                for (b, c) in h {
                    add_to(&mut col, pair_index(d, m, *b), &-c);
                }
                for (a, c) in g {
                    add_to(&mut col, pair_index(d, *a, m), &-c);
                }
                col
            })
            .collect();
        kernel_of_columns(&cols)
    }

    /// `P_{g,1}` for the `g`-th group-like, split into eigenspaces of
    /// conjugation by the group-likes.
    pub fn skew_primitive_blocks(&self, gl: &GroupLikes, g: usize) -> SkewPrimitives {
        let space = self.skew_primitives(&gl.elements[g], &gl.elements[0]);
        let basis: Vec<SparseVec> = space.basis().iter().map(|r| sparsify(r)).collect();
        let mut pieces: Vec<(Vec<u32>, Vec<SparseVec>)> = vec![(Vec::new(), basis)];
        for (l, &y) in gl.generators.iter().enumerate() {
            let m = gl.invariants[l];
            let yinv = &gl.elements[gl.inverse_of(y)];
            let yv = &gl.elements[y];
            let cands: Vec<Cyclotomic> = (0..m).map(|c| Cyclotomic::root_of_unity(m, c as i64)).collect();
            let op = |v: &SparseVec| self.mul(&self.mul(yv, v), yinv);
            let mut next = Vec::new();
            for (label, piece) in pieces {
                if piece.is_empty() {
                    continue;
                }
                for (lam, sub) in split(&piece, op, &cands) {
                    let c = cands.iter().position(|x| *x == lam).expect("candidate") as u32;
                    let mut lab = label.clone();
                    lab.push(c);
                    next.push((lab, sub));
                }
            }
            pieces = next;
        }
        let mut blocks: Vec<SkewPrimitiveBlock> = pieces
            .into_iter()
            .filter(|(_, b)| !b.is_empty())
            .map(|(c, b)| SkewPrimitiveBlock {
                character: Character(c),
                basis: b,
            })
            .collect();
        blocks.sort_by(|a, b| a.character.cmp(&b.character));
        SkewPrimitives { g, space, blocks }
    }

    /// `gr A` on a filtration-adapted basis, with the degree of each new
    /// basis vector.
    pub fn associated_graded(&self) -> Result<(StructureHopf, Vec<usize>), HopfError> {
        let filt = self.coradical_filtration()?;
        self.associated_graded_from(&filt)
    }

    /// Filtration-adapted basis: a basis of `A_0`, then complements of
    /// `A_{n-1}` in `A_n`. Returns the vectors and their degrees.
    pub fn adapted_basis(filt: &[Subspace]) -> (Vec<SparseVec>, Vec<usize>) {
        let mut basis = Vec::new();
        let mut degrees = Vec::new();
        for (n, a) in filt.iter().enumerate() {
            let new: Vec<Vec<Cyclotomic>> = if n == 0 {
                a.basis().clone()
            } else {
                filt[n - 1].complement_in(a)
            };
            for v in new {
                basis.push(sparsify(&v));
                degrees.push(n);
            }
        }
        (basis, degrees)
    }

    pub fn associated_graded_from(
        &self,
        filt: &[Subspace],
    ) -> Result<(StructureHopf, Vec<usize>), HopfError> {
        let d = self.dim();
        let (basis, deg) = Self::adapted_basis(filt);
        let inverse = invert_basis(&basis, d);
        let labels = basis
            .iter()
            .enumerate()
            .map(|(p, v)| match v.iter().next() {
                Some((k, c)) if v.len() == 1 && c.is_one() => self.labels[*k].clone(),
                _ => format!("b{p}"),
            })
            .collect();
        let full = self.change_basis(&basis, &inverse, labels);
        let mut gr = full.clone();
        for p in 0..d {
            for q in 0..d {
                if full.mult[p][q].iter().any(|(r, _)| deg[*r] > deg[p] + deg[q]) {
                    return Err(HopfError::Malformed("filtration is not multiplicative".into()));
                }
                gr.mult[p][q].retain(|(r, _)| deg[*r] == deg[p] + deg[q]);
            }
            if full.comult[p].iter().any(|(a, b, _)| deg[*a] + deg[*b] > deg[p]) {
                return Err(HopfError::Malformed(format!(
                    "Δ(A_{}) not inside Σ A_i ⊗ A_(n-i)",
                    deg[p]
                )));
            }
            gr.comult[p].retain(|(a, b, _)| deg[*a] + deg[*b] == deg[p]);
            if deg[p] > 0 {
                gr.counit[p] = Cyclotomic::zero();
            }
            if let Some(s) = gr.antipode.as_mut() {
                s[p].retain(|(r, _)| deg[*r] == deg[p]);
            }
        }
        Ok((gr, deg))
    }

    /// Whether the coradical filtration is the degree filtration of the
    /// given grading of the basis.
    pub fn is_coradically_graded(&self, degrees: &[usize]) -> bool {
        let Ok(filt) = self.coradical_filtration() else {
            return false;
        };
        let top = degrees.iter().copied().max().unwrap_or(0);
        if filt.len() != top + 1 {
            return false;
        }
        let d = self.dim();
        filt.iter().enumerate().all(|(m, a)| {
            let expect = Subspace::span(
                d,
                (0..d)
                    .filter(|&p| degrees[p] <= m)
                    .map(|p| crate::exactla::unit_vector(d, p))
                    .collect(),
            )
            .unwrap();
            *a == expect
        })
    }

    /// Two-sided ideal generated by `[s, t]` for generators `s, t`.
    pub fn commutator_ideal(&self) -> Subspace {
        let d = self.dim();
        let gens = self.generating_set();
        let mut ech = SparseEchelon::new();
        let mut span: Vec<SparseVec> = Vec::new();
        for &s in &gens {
            for &t in &gens {
                let mut c = super::from_sparse(&self.mult[s][t]);
                for (k, x) in &self.mult[t][s] {
                    add_to(&mut c, *k, &-x);
                }
                if !c.is_empty() && !ech.contains(&c) {
                    ech.push(&c);
                    span.push(c);
                }
            }
        }
        let mut i = 0;
        while i < span.len() {
            let v = span[i].clone();
            i += 1;
            for &s in &gens {
                let l = self.mul(&basis_vec(s), &v);
                let r = self.mul(&v, &basis_vec(s));
                for w in [l, r] {
                    if !w.is_empty() && !ech.contains(&w) {
                        ech.push(&w);
                        span.push(w);
                    }
                }
            }
        }
        Subspace::span_sparse(d, &span)
    }

    /// Number of algebra maps `A → k` found over the field: the
    /// group-likes of the dual.
    pub fn one_dim_reps(&self) -> Result<usize, HopfError> {
        Ok(self.dual()?.grouplikes().count())
    }

    /// `dim A / (J + [A, A])`: the number of algebra maps `A → k̄`.
    pub fn abelianization_dim(&self) -> usize {
        let j = self.radical();
        let c = self.commutator_ideal();
        self.dim() - j.sum(&c).expect("same ambient").dim()
    }

    /// Whether every simple module over `k̄` is one-dimensional, that is
    /// whether the dual is pointed.
    pub fn is_basic(&self) -> bool {
        self.dim() - self.radical().dim() == self.abelianization_dim()
    }

    pub fn invariants(&self) -> Result<InvariantRecord, HopfError> {
        if let Kind::Braided(_) = self.kind {
            return Err(HopfError::NotOrdinary);
        }
        let filt = self.coradical_filtration()?;
        let gl = self.grouplikes_in(&filt[0]);
        let mut table = Vec::new();
        if gl.abelian {
            let gr = gl.group();
            for g in 0..gl.count() {
                let sp = self.skew_primitive_blocks(&gl, g);
                let mut blocks = Vec::new();
                for b in &sp.blocks {
                    if b.character.0.iter().all(|&c| c == 0) {
                        continue;
                    }
                    let gr = gr.as_ref().expect("nontrivial character needs a group");
                    let val = root_label(gr.exponent(), gr.eval_exponent(&b.character, &gl.exponents[g]));
                    blocks.push((gr.char_order(&b.character), val, b.basis.len()));
                }
                blocks.sort();
                table.push(SkewTableRow {
                    g_order: gl.order_of(g),
                    dim: sp.dim(),
                    blocks,
                });
            }
            table.sort();
        }
        let j = self.radical();
        let reps = self.dim() - j.sum(&self.commutator_ideal()).expect("same ambient").dim();
        Ok(InvariantRecord {
            dimension: self.dim(),
            grouplike_count: gl.count(),
            group_abelian: gl.abelian,
            group_invariants: gl.invariants.clone(),
            pointed: gl.pointed(),
            filtration_dims: filt.iter().map(|a| a.dim()).collect(),
            skew_primitive_table: table,
            one_dim_reps: reps,
            dual_pointed: self.dim() - j.dim() == reps,
        })
    }
}

/// `ζ_L^e` reduced to lowest level, as `zN^k`.
fn root_label(l: u32, e: u32) -> String {
    if e == 0 {
        return "1".into();
    }
    let d = crate::cyclotomic::gcd(l as u64, e as u64) as u32;
    let (n, k) = (l / d, e / d);
    if k == 1 {
        format!("z{n}")
    } else {
        format!("z{n}^{k}")
    }
}

/// Invariant factors from the number of elements killed by each prime
/// power.
fn invariant_factors(gl: &GroupLikes) -> Vec<u32> {
    let n = gl.count() as u64;
    let orders: Vec<u64> = (0..gl.count()).map(|i| gl.order_of(i) as u64).collect();
    let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in prime_factors(n) {
        let mut exps = Vec::new();
        let mut prev = 1u64;
        let mut k = 1u32;
        loop {
            let pk = p.pow(k);
            let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            if count == prev {
                break;
            }
            let mut r = 0u32;
            let mut q = count / prev;
            while q > 1 {
                q /= p;
                r += 1;
            }
            exps.push(r);
            prev = count;
            k += 1;
        }
        // exps[k-1] = number of cyclic p-parts of exponent >= k
        let mut parts: Vec<u32> = Vec::new();
        for (k, &r) in exps.iter().enumerate() {
            let next = exps.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                parts.push(k as u32 + 1);
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push((p, parts));
    }
    let len = per_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            per_prime
                .iter()
                .map(|(p, v)| v.get(i).map_or(1, |&e| p.pow(e) as u32))
                .product()
        })
        .collect();
    out.reverse();
    out
}

/// Elements of orders `M_1, …` that generate independent cyclic factors.
fn find_generators(gl: &GroupLikes, inv: &[u32]) -> Option<Vec<usize>> {
    fn rec(gl: &GroupLikes, inv: &[u32], span: Vec<usize>, chosen: &mut Vec<usize>) -> bool {
        let k = chosen.len();
        if k == inv.len() {
            return true;
        }
        let m = inv[k];
        for g in 0..gl.count() {
            if gl.order_of(g) != m {
                continue;
            }
            let mut new = Vec::with_capacity(span.len() * m as usize);
            let mut p = 0usize;
            for _ in 0..m {
                for &s in &span {
                    new.push(gl.table[s][p]);
                }
                p = gl.table[p][g];
            }
            new.sort_unstable();
            new.dedup();
            if new.len() != span.len() * m as usize {
                continue;
            }
            chosen.push(g);
            if rec(gl, inv, new, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    rec(gl, inv, vec![0], &mut chosen).then_some(chosen)
}

#[cfg(test)]
mod tests {
    use super::super::group_algebra;
    use super::*;

    #[test]
    fn group_algebra_invariants() {
        let gr = AbelianGroup::parse("3,9").unwrap();
        let h = group_algebra(&gr);
        let filt = h.coradical_filtration().unwrap();
        assert_eq!(filt.len(), 1);
        assert_eq!(filt[0].dim(), 27);
        let gl = h.grouplikes_in(&filt[0]);
        assert_eq!(gl.count(), 27);
        assert!(gl.pointed());
        assert_eq!(gl.invariants, vec![3, 9]);
        let gl9 = group_algebra(&AbelianGroup::cyclic(9)).grouplikes();
        assert_eq!(gl9.invariants, vec![9]);
    }

    #[test]
    fn dual_of_group_algebra_characters() {
        let h = group_algebra(&AbelianGroup::parse("2,3").unwrap());
        assert_eq!(h.one_dim_reps().unwrap(), 6);
        assert_eq!(h.abelianization_dim(), 6);
        let dual = h.dual().unwrap();
        let gl = dual.grouplikes();
        assert_eq!(gl.count(), 6);
        assert_eq!(gl.invariants, vec![6]);
        // function algebra is cosemisimple only if commutative group; here it is
        assert_eq!(dual.coradical().dim(), 6);
    }

    #[test]
    fn trivial_skew_primitives() {
        let h = group_algebra(&AbelianGroup::cyclic(3));
        let gl = h.grouplikes();
        let sp = h.skew_primitive_blocks(&gl, 1);
        // P_{g,1} = k(g - 1) in a group algebra
        assert_eq!(sp.dim(), 1);
        assert_eq!(sp.blocks.len(), 1);
        assert_eq!(sp.blocks[0].character, Character(vec![0]));
        assert_eq!(h.skew_primitive_blocks(&gl, 0).dim(), 0);
    }

    #[test]
    fn graded_of_group_algebra_is_itself() {
        let h = group_algebra(&AbelianGroup::cyclic(4));
        let (gr, deg) = h.associated_graded().unwrap();
        assert_eq!(gr, h);
        assert!(deg.iter().all(|&d| d == 0));
        assert!(gr.is_coradically_graded(&deg));
    }
}
