//! Exact linear algebra over cyclotomic fields.
//!
//! Subspaces are kept in reduced row echelon form, which is canonical, so
//! equality of subspaces is equality of the stored rows.

use crate::cyclotomic::Cyclotomic;
use std::collections::BTreeMap;

pub type Vector = Vec<Cyclotomic>;
pub type Matrix = Vec<Vector>;
/// Sparse vector keyed by coordinate index.
pub type SparseVec = BTreeMap<usize, Cyclotomic>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LaError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("inconsistent linear system")]
    Inconsistent,
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Cyclotomic::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Cyclotomic::one();
    v
}

pub fn dot(a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

pub fn mat_vec(m: &Matrix, v: &[Cyclotomic]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn transpose(m: &Matrix, ncols: usize) -> Matrix {
    (0..ncols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn is_zero_vec(v: &[Cyclotomic]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn nnz(v: &[Cyclotomic]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// `row_a -= f * row_b`, touching only nonzero entries of `row_b`.
fn axpy(target: &mut [Cyclotomic], f: &Cyclotomic, src: &[Cyclotomic]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t = &*t - &(f * s);
        }
    }
}

/// Gauss-Jordan elimination in place. Returns the pivot columns; on exit
/// the first `pivots.len()` rows are the reduced echelon basis and the
/// remaining rows are dropped. Within a column the pivot row is the one
/// with fewest nonzeros, ties broken by lowest index.
pub fn rref(rows: &mut Matrix, ncols: usize) -> Vec<usize> {
    rows.retain(|r| !is_zero_vec(r));
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..ncols {
        if top >= rows.len() {
            break;
        }
        let cand = (top..rows.len())
            .filter(|&r| !rows[r][c].is_zero())
            .min_by_key(|&r| (nnz(&rows[r]), r));
        let Some(p) = cand else { continue };
        rows.swap(top, p);
        let inv = rows[top][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[top].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top && !row[c].is_zero() {
                let f = row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

/// A subspace of `K^d`, stored as its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Result<Self, LaError> {
        for v in &vectors {
            if v.len() != ambient {
                return Err(LaError::Dimension {
                    expected: ambient,
                    got: v.len(),
                });
            }
        }
        let mut rows = vectors;
        let pivots = rref(&mut rows, ambient);
        Ok(Subspace {
            ambient,
            rows,
            pivots,
        })
    }

    pub fn span_sparse(ambient: usize, vectors: &[SparseVec]) -> Self {
        Self::span(ambient, vectors.iter().map(|v| densify(v, ambient)).collect())
            .expect("indices within ambient")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Residue of `v` after clearing the pivot columns.
    pub fn reduce(&self, v: &[Cyclotomic]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                axpy(&mut out, &f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> bool {
        v.len() == self.ambient && is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[Cyclotomic]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LaError> {
        self.check(other)?;
        let mut v = self.rows.clone();
        v.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, v)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LaError> {
        self.check(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(a.sum(&b)?.annihilator())
    }

    /// Annihilator under the standard pairing `<u, v> = Σ u_i v_i`.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.rows, self.ambient)
    }

    /// `{v : B(u, v) = 0 for all u in self}` with `B(u, v) = uᵀ·pairing·v`.
    pub fn annihilator_with(&self, pairing: &Matrix) -> Result<Subspace, LaError> {
        if pairing.len() != self.ambient {
            return Err(LaError::Dimension {
                expected: self.ambient,
                got: pairing.len(),
            });
        }
        let n = pairing.first().map_or(0, |r| r.len());
        let rows: Matrix = self
            .rows
            .iter()
            .map(|u| (0..n).map(|j| {
                let mut acc = Cyclotomic::zero();
                for (i, ui) in u.iter().enumerate() {
                    if !ui.is_zero() && !pairing[i][j].is_zero() {
                        acc = &acc + &(ui * &pairing[i][j]);
                    }
                }
                acc
            }).collect())
            .collect();
        Ok(kernel(&rows, n))
    }

    /// Vectors of `sup` (taken from its echelon basis) completing a basis
    /// of `self` to one of `sup`.
    pub fn complement_in(&self, sup: &Subspace) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for r in &sup.rows {
            if !acc.contains(r) {
                out.push(r.clone());
                acc = acc
                    .sum(&Subspace::span(self.ambient, vec![r.clone()]).unwrap())
                    .unwrap();
            }
        }
        out
    }

    fn check(&self, other: &Subspace) -> Result<(), LaError> {
        if self.ambient != other.ambient {
            return Err(LaError::Dimension {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        Ok(())
    }
}

pub fn densify(v: &SparseVec, n: usize) -> Vector {
    let mut out = zero_vector(n);
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

pub fn sparsify(v: &[Cyclotomic]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Null space of the `m × ncols` matrix `rows`.
pub fn kernel(rows: &Matrix, ncols: usize) -> Subspace {
    let mut r = rows.clone();
    let pivots = rref(&mut r, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(ncols);
        v[f] = Cyclotomic::one();
        for (row, &p) in r.iter().zip(&pivots) {
            if !row[f].is_zero() {
                v[p] = -&row[f];
            }
        }
        basis.push(v);
    }
    Subspace::span(ncols, basis).expect("consistent dimensions")
}

/// One solution of `M x = b`.
pub fn solve(m: &Matrix, ncols: usize, b: &[Cyclotomic]) -> Result<Vector, LaError> {
    if b.len() != m.len() {
        return Err(LaError::Dimension {
            expected: m.len(),
            got: b.len(),
        });
    }
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Err(LaError::Inconsistent);
    }
    let mut x = zero_vector(ncols);
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Ok(x)
}

/// Incremental sparse elimination. Feeding vectors one at a time reports
/// whether each is independent of the previous ones, and tracks for every
/// basis vector the combination of inputs that produced it.
#[derive(Default)]
pub struct SparseEchelon {
    /// pivot -> (vector with pivot entry 1, combination of inputs)
    basis: BTreeMap<usize, (SparseVec, SparseVec)>,
    inputs: usize,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the current basis; returns the residue and the
    /// combination of earlier inputs subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.basis.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let (bv, bc) = &self.basis[&k];
            sparse_axpy(&mut v, &c, bv);
            sparse_axpy(&mut combo, &c, bc);
            cursor = k + 1;
        }
        (v, combo)
    }

    /// Adds the next input. Returns `Some(relation)` (coefficients over all
    /// inputs so far, including this one with coefficient 1) when `v` is
    /// dependent, otherwise extends the basis and returns `None`.
    pub fn push(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let idx = self.inputs;
        self.inputs += 1;
        let (res, mut combo) = self.reduce(v);
        combo.insert(idx, Cyclotomic::one());
        match res.iter().next().map(|(k, c)| (*k, c.clone())) {
            None => Some(combo),
            Some((p, lead)) => {
                let inv = lead.inv().expect("nonzero");
                let res: SparseVec = res.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
                let combo: SparseVec = combo.into_iter().map(|(k, c)| (k, &c * &inv)).collect();
                self.basis.insert(p, (res, combo));
                None
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// `v -= f * w` on sparse vectors.
pub fn sparse_axpy(v: &mut SparseVec, f: &Cyclotomic, w: &SparseVec) {
    for (k, x) in w {
        let d = f * x;
        let e = v.entry(*k).or_insert_with(Cyclotomic::zero);
        *e = &*e - &d;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Relations among the given sparse columns: the kernel of the matrix
/// whose `j`-th column is `cols[j]`, as a subspace of `K^{cols.len()}`.
pub fn kernel_of_columns(cols: &[SparseVec]) -> Subspace {
    let n = cols.len();
    let mut ech = SparseEchelon::new();
    let mut rels = Vec::new();
    for c in cols {
        if let Some(rel) = ech.push(c) {
            rels.push(densify(&rel, n));
        }
    }
    Subspace::span(n, rels).expect("relations have input length")
}

/// Structure constants `mult[i][j] = e_i e_j` as sparse combinations.
pub type StructureConstants = Vec<Vec<Vec<(usize, Cyclotomic)>>>;

/// Jacobson radical of a finite-dimensional algebra in characteristic
/// zero: the kernel of the trace form `(a, b) ↦ tr(L_{ab})`.
pub fn algebra_radical(mult: &StructureConstants) -> Subspace {
    let d = mult.len();
    let form = trace_form(d, |i, j| &mult[i][j]);
    kernel(&form, d)
}

/// Gram matrix of the trace form, given products as sparse combinations.
pub fn trace_form<'a, F>(d: usize, prod: F) -> Matrix
where
    F: Fn(usize, usize) -> &'a Vec<(usize, Cyclotomic)>,
{
    // t_m = trace of left multiplication by e_m
    let t: Vector = (0..d)
        .map(|m| {
            let mut acc = Cyclotomic::zero();
            for i in 0..d {
                for (k, c) in prod(m, i) {
                    if *k == i {
                        acc = &acc + c;
                    }
                }
            }
            acc
        })
        .collect();
    (0..d)
        .map(|k| {
            (0..d)
                .map(|l| {
                    let mut acc = Cyclotomic::zero();
                    for (m, c) in prod(k, l) {
                        if !t[*m].is_zero() {
                            acc = &acc + &(c * &t[*m]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_int(n)
    }

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    fn identity(n: usize) -> Matrix {
        (0..n).map(|i| unit_vector(n, i)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&identity(4), 4).is_zero());
        let m = vec![vec![c(1), c(2), c(3)], vec![c(2), c(4), c(6)]];
        let k = kernel(&m, 3);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(is_zero_vec(&mat_vec(&m, v)));
        }
    }

    #[test]
    fn annihilator_of_zero_is_full() {
        assert_eq!(Subspace::zero(3).annihilator(), Subspace::full(3));
        let pairing = vec![
            vec![c(0), c(1), c(0)],
            vec![c(1), c(0), c(0)],
            vec![c(0), c(0), z(3, 1)],
        ];
        assert_eq!(
            Subspace::zero(3).annihilator_with(&pairing).unwrap(),
            Subspace::full(3)
        );
        let u = Subspace::span(3, vec![vec![c(1), c(0), c(0)]]).unwrap();
        let a = u.annihilator_with(&pairing).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(!a.contains(&[c(0), c(1), c(0)]));
    }

    #[test]
    fn solve_examples() {
        let m = vec![vec![c(1), z(3, 1)], vec![c(0), c(2)]];
        let b = vec![c(1), c(4)];
        let x = solve(&m, 2, &b).unwrap();
        assert_eq!(mat_vec(&m, &x), b);
        let sing = vec![vec![c(1), c(1)], vec![c(1), c(1)]];
        assert_eq!(solve(&sing, 2, &[c(0), c(1)]), Err(LaError::Inconsistent));
    }

    #[test]
    fn radical_examples() {
        // group algebra of Z/3
        let gmult: StructureConstants = (0..3)
            .map(|i| (0..3).map(|j| vec![((i + j) % 3, c(1))]).collect())
            .collect();
        assert!(algebra_radical(&gmult).is_zero());
        // k[x]/(x^2)
        let dual: StructureConstants = vec![
            vec![vec![(0, c(1))], vec![(1, c(1))]],
            vec![vec![(1, c(1))], vec![]],
        ];
        let j = algebra_radical(&dual);
        assert_eq!(j, Subspace::span(2, vec![vec![c(0), c(1)]]).unwrap());
    }

    #[test]
    fn kernel_of_columns_finds_relations() {
        let cols: Vec<SparseVec> = vec![
            [(0, c(1)), (5, c(2))].into_iter().collect(),
            [(3, z(4, 1))].into_iter().collect(),
            [(0, c(2)), (5, c(4))].into_iter().collect(),
            [(0, c(1)), (3, z(4, 1)), (5, c(2))].into_iter().collect(),
        ];
        let k = kernel_of_columns(&cols);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            let mut acc = SparseVec::new();
            for (j, x) in v.iter().enumerate() {
                sparse_axpy(&mut acc, &-x, &cols[j]);
            }
            assert!(acc.is_empty());
        }
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, Matrix)> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, n)| {
            (
                Just(n),
                proptest::collection::vec(
                    proptest::collection::vec((-2i64..3, 0i64..3), n),
                    r,
                ),
            )
                .prop_map(|(n, m)| {
                    let mat = m
                        .into_iter()
                        .map(|row| {
                            row.into_iter()
                                .map(|(a, k)| &c(a) * &z(3, k))
                                .collect()
                        })
                        .collect();
                    (n, mat)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn intersect_idempotent((n, m) in arb_matrix()) {
            let u = Subspace::span(n, m).unwrap();
            prop_assert_eq!(u.intersect(&u).unwrap(), u.clone());
            prop_assert_eq!(u.sum(&u).unwrap(), u);
        }

        #[test]
        fn double_annihilator((n, m) in arb_matrix()) {
            let u = Subspace::span(n, m).unwrap();
            prop_assert_eq!(u.annihilator().dim() + u.dim(), n);
            prop_assert_eq!(u.annihilator().annihilator(), u);
        }

        #[test]
        fn kernel_rank_nullity((n, m) in arb_matrix()) {
            let k = kernel(&m, n);
            let rank = Subspace::span(n, m.clone()).unwrap().dim();
            prop_assert_eq!(k.dim() + rank, n);
            for v in k.basis() {
                prop_assert!(is_zero_vec(&mat_vec(&m, v)));
            }
            let cols: Vec<SparseVec> = transpose(&m, n).iter().map(|c| sparsify(c)).collect();
            prop_assert_eq!(kernel_of_columns(&cols), k);
        }

        #[test]
        fn dimension_formula((n, m) in arb_matrix(), (n2, m2) in arb_matrix()) {
            prop_assume!(n == n2);
            let u = Subspace::span(n, m).unwrap();
            let v = Subspace::span(n, m2).unwrap();
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&v));
        }
    }
}
