//! Quantum linear spaces as braided Hopf algebras over a group algebra
//! `kΓ` with diagonal Yetter-Drinfeld structure, and their bosonizations.

use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::cyclotomic::Cyclotomic;
use crate::hopfcore::{AxiomReport, HopfError, Kind, Sparse, StructureHopf, Tensor2, YdData};
use crate::rewrite::LiftingShape;
use std::collections::BTreeMap;
use std::fmt;

/// Group-likes `g_i` and characters `χ_i` with `q_i = χ_i(g_i)` of order
/// `N_i > 1` and `χ_j(g_i)χ_i(g_j) = 1` for `i ≠ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QlsDatum {
    pub group: AbelianGroup,
    pub g: Vec<GroupElement>,
    pub chi: Vec<Character>,
    pub q: Vec<Cyclotomic>,
    pub n: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DatumViolation {
    /// An element or character does not belong to the group.
    Malformed(String),
    /// `q_i = χ_i(g_i) = 1`.
    TrivialQ { i: usize },
    /// `χ_j(g_i)χ_i(g_j) ≠ 1`.
    Braiding { i: usize, j: usize, value: Cyclotomic },
}

impl fmt::Display for DatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumViolation::Malformed(s) => write!(f, "malformed datum: {s}"),
            DatumViolation::TrivialQ { i } => write!(f, "q_{} = chi_{}(g_{}) = 1", i + 1, i + 1, i + 1),
            DatumViolation::Braiding { i, j, value } => write!(
                f,
                "chi_{j1}(g_{i1}) chi_{i1}(g_{j1}) = {value} != 1",
                i1 = i + 1,
                j1 = j + 1
            ),
        }
    }
}

/// Checks the quantum linear space conditions, listing every violation.
pub fn validate_datum(
    group: &AbelianGroup,
    g: &[GroupElement],
    chi: &[Character],
) -> Result<QlsDatum, Vec<DatumViolation>> {
    if g.len() != chi.len() {
        return Err(vec![DatumViolation::Malformed(format!(
            "{} group-likes and {} characters",
            g.len(),
            chi.len()
        ))]);
    }
    let bad: Vec<DatumViolation> = g
        .iter()
        .map(|x| &x.0)
        .chain(chi.iter().map(|c| &c.0))
        .filter_map(|v| group.check(v).err())
        .map(|e| DatumViolation::Malformed(e.to_string()))
        .collect();
    if !bad.is_empty() {
        return Err(bad);
    }
    let ev = |c: &Character, x: &GroupElement| group.evaluate(c, x).expect("checked");
    let mut out = Vec::new();
    let q: Vec<Cyclotomic> = (0..g.len()).map(|i| ev(&chi[i], &g[i])).collect();
    for (i, qi) in q.iter().enumerate() {
        if qi.is_one() {
            out.push(DatumViolation::TrivialQ { i });
        }
    }
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let value = &ev(&chi[j], &g[i]) * &ev(&chi[i], &g[j]);
            if !value.is_one() {
                out.push(DatumViolation::Braiding { i, j, value });
            }
        }
    }
    if !out.is_empty() {
        return Err(out);
    }
    let n = q.iter().map(|x| x.order().expect("root of unity")).collect();
    Ok(QlsDatum {
        group: group.clone(),
        g: g.to_vec(),
        chi: chi.to_vec(),
        q,
        n,
    })
}

impl QlsDatum {
    pub fn theta(&self) -> usize {
        self.g.len()
    }

    pub fn shape(&self) -> LiftingShape {
        LiftingShape {
            group: self.group.clone(),
            g: self.g.clone(),
            chi: self.chi.clone(),
        }
    }

    /// Exponent vectors `n` with `n_i < N_i`, lexicographic.
    pub fn multi_indices(&self) -> Vec<Vec<u32>> {
        multi_indices(&self.n)
    }

    pub fn dim(&self) -> usize {
        self.n.iter().map(|&x| x as usize).product()
    }
}

fn multi_indices(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..b).map(move |e| {
                    let mut v = p.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

fn monomial_label(n: &[u32]) -> String {
    let parts: Vec<String> = n
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// The quantum linear space of a validated datum.
pub fn build_qls(d: &QlsDatum) -> StructureHopf {
    build_raw(&d.group, &d.g, &d.chi).expect("validated datum")
}

/// Builds the same structure constants without checking the braiding
/// condition, so that violations can be observed by the axiom checker.
/// Still needs every `q_i ≠ 1`.
pub fn build_qls_unchecked(
    group: &AbelianGroup,
    g: &[GroupElement],
    chi: &[Character],
) -> Result<StructureHopf, HopfError> {
    build_raw(group, g, chi)
}

fn build_raw(group: &AbelianGroup, g: &[GroupElement], chi: &[Character]) -> Result<StructureHopf, HopfError> {
    let theta = g.len();
    let ev = |c: &Character, x: &GroupElement| {
        group
            .evaluate(c, x)
            .map_err(|e| HopfError::Malformed(e.to_string()))
    };
    let mut n = Vec::with_capacity(theta);
    for i in 0..theta {
        let q = ev(&chi[i], &g[i])?;
        if q.is_one() {
            return Err(HopfError::Malformed(format!("q_{} = 1", i + 1)));
        }
        n.push(q.order().expect("root of unity"));
    }
    // c[i][j] = χ_j(g_i), the scalar in x_i x_j = c[i][j] x_j x_i
    let mut c = vec![vec![Cyclotomic::one(); theta]; theta];
    for i in 0..theta {
        for j in 0..theta {
            c[i][j] = ev(&chi[j], &g[i])?;
        }
    }
    let idx = multi_indices(&n);
    let pos: BTreeMap<Vec<u32>, usize> = idx.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
    let d = idx.len();
    let mut mult = vec![vec![Sparse::new(); d]; d];
    for (a, na) in idx.iter().enumerate() {
        for (b, nb) in idx.iter().enumerate() {
            let sum: Vec<u32> = na.iter().zip(nb).map(|(x, y)| x + y).collect();
            if sum.iter().zip(&n).any(|(s, m)| s >= m) {
                continue;
            }
            // move x_j^{nb_j} left past x_i^{na_i} for i > j
            let mut coef = Cyclotomic::one();
            for i in 0..theta {
                for j in 0..i {
                    let e = na[i] as i64 * nb[j] as i64;
                    if e > 0 {
                        coef = &coef * &c[i][j].pow(e);
                    }
                }
            }
            mult[a][b] = vec![(pos[&sum], coef)];
        }
    }
    let degrees: Vec<GroupElement> = idx
        .iter()
        .map(|v| {
            v.iter()
                .zip(g)
                .fold(group.identity(), |acc, (&e, gi)| group.compose(&acc, &group.power(gi, e as i64)))
        })
        .collect();
    let characters: Vec<Character> = idx
        .iter()
        .map(|v| {
            v.iter().zip(chi).fold(group.trivial_character(), |acc, (&e, ci)| {
                group.char_mul(&acc, &group.char_power(ci, e as i64))
            })
        })
        .collect();
    let one = Cyclotomic::one();
    let mut r = StructureHopf {
        labels: idx.iter().map(|v| monomial_label(v)).collect(),
        mult,
        comult: vec![Vec::new(); d],
        unit: vec![(0, one.clone())],
        counit: (0..d).map(|k| if k == 0 { one.clone() } else { Cyclotomic::zero() }).collect(),
        antipode: None,
        kind: Kind::Braided(YdData {
            group: group.clone(),
            degrees,
            characters,
        }),
    };
    // Δ(x^n) as the braided product of the Δ(x_i)^{n_i}
    let gens: Vec<Tensor2> = (0..theta)
        .map(|i| {
            let mut e = vec![0; theta];
            e[i] = 1;
            let x = pos[&e];
            let mut t = Tensor2::new();
            t.insert((x, 0), one.clone());
            t.insert((0, x), one.clone());
            t
        })
        .collect();
    for (k, v) in idx.iter().enumerate() {
        let mut acc = Tensor2::new();
        acc.insert((0, 0), one.clone());
        for (i, &e) in v.iter().enumerate() {
            for _ in 0..e {
                acc = r.tensor_mul(&acc, &gens[i]);
            }
        }
        r.comult[k] = acc.into_iter().map(|((a, b), x)| (a, b, x)).collect();
    }
    {
        let s = r.compute_connected_antipode()?;
        r.antipode = Some(s)
    }
    Ok(r)
}

/// Exact check of the braided Hopf axioms, including Yetter-Drinfeld
/// homogeneity of the structure maps.
pub fn verify_braided(r: &StructureHopf) -> AxiomReport {
    debug_assert!(r.is_braided());
    r.verify_axioms()
}

/// The biproduct `R # kΓ` on the basis `r # γ` (index `r·|Γ| + γ`):
/// `(r#h)(s#f) = χ_s(h) rs # hf`,
/// `Δ(r#h) = Σ r_1 # deg(r_2)h ⊗ r_2 # h`,
/// `S(r#h) = χ_{S(r)}(h^{-1}deg(r)^{-1}) S(r) # h^{-1}deg(r)^{-1}`.
pub fn bosonize(r: &StructureHopf) -> Result<StructureHopf, HopfError> {
    let yd = r
        .yd()
        .ok_or_else(|| HopfError::Malformed("bosonization needs a braided algebra".into()))?
        .clone();
    let gr = &yd.group;
    let els = gr.elements();
    let ng = els.len();
    let d = r.dim() * ng;
    let at = |a: usize, h: usize| a * ng + h;
    let gi = |x: &GroupElement| gr.index_of(x);
    let chi_at = |s: usize, h: &GroupElement| gr.evaluate(&yd.characters[s], h).expect("consistent yd data");
    let mut mult = vec![vec![Sparse::new(); d]; d];
    for a in 0..r.dim() {
        for (hi, h) in els.iter().enumerate() {
            for b in 0..r.dim() {
                let scal = chi_at(b, h);
                for (fi, f) in els.iter().enumerate() {
                    let hf = gi(&gr.compose(h, f));
                    let mut v: Sparse = r.mult[a][b]
                        .iter()
                        .map(|(p, c)| (at(*p, hf), c * &scal))
                        .collect();
                    v.sort_by_key(|(k, _)| *k);
                    mult[at(a, hi)][at(b, fi)] = v;
                }
            }
        }
    }
    let mut comult = vec![Vec::new(); d];
    for a in 0..r.dim() {
        for (hi, h) in els.iter().enumerate() {
            comult[at(a, hi)] = r.comult[a]
                .iter()
                .map(|(p, q, c)| {
                    let dh = gi(&gr.compose(&yd.degrees[*q], h));
                    (at(*p, dh), at(*q, hi), c.clone())
                })
                .collect();
        }
    }
    let unit: Sparse = r.unit.iter().map(|(k, c)| (at(*k, 0), c.clone())).collect();
    let counit: Vec<Cyclotomic> = (0..d).map(|k| r.counit[k / ng].clone()).collect();
    let antipode = match &r.antipode {
        None => None,
        Some(sr) => {
            let mut cols = Vec::with_capacity(d);
            for a in 0..r.dim() {
                for h in &els {
                    let k = gr.inverse(&gr.compose(h, &yd.degrees[a]));
                    let ki = gi(&k);
                    let mut v: Sparse = sr[a]
                        .iter()
                        .map(|(p, c)| (at(*p, ki), c * &chi_at(*p, &k)))
                        .collect();
                    v.sort_by_key(|(x, _)| *x);
                    cols.push(v);
                }
            }
            Some(cols)
        }
    };
    Ok(StructureHopf {
        labels: (0..d)
            .map(|k| format!("{}#g{}", r.labels[k / ng], els[k % ng]))
            .collect(),
        mult,
        comult,
        unit,
        counit,
        antipode,
        kind: Kind::Ordinary,
    })
}

/// Basis indices of the section `1 # γ` of a bosonization.
pub fn section_indices(r: &StructureHopf) -> Vec<usize> {
    let ng = r.yd().map(|y| y.group.order() as usize).unwrap_or(1);
    let one = r.unit.first().map(|(k, _)| *k).unwrap_or(0);
    (0..ng).map(|h| one * ng + h).collect()
}

/// Degree `|n|` of each basis vector `x^n`.
pub fn monomial_degrees(d: &QlsDatum) -> Vec<usize> {
    d.multi_indices()
        .iter()
        .map(|v| v.iter().map(|&e| e as usize).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfcore::group_algebra;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    pub(crate) fn plane_z3() -> QlsDatum {
        let gr = AbelianGroup::cyclic(3);
        let y = gr.generator(0);
        validate_datum(&gr, &[y.clone(), y], &[gr.character(&[1]), gr.character(&[-1])]).unwrap()
    }

    #[test]
    fn validation() {
        let d = plane_z3();
        assert_eq!(d.n, vec![3, 3]);
        let gr = AbelianGroup::cyclic(3);
        let e = validate_datum(&gr, &[gr.generator(0)], &[gr.trivial_character()]).unwrap_err();
        assert_eq!(e, vec![DatumViolation::TrivialQ { i: 0 }]);
        let gr9 = AbelianGroup::cyclic(9);
        let g = gr9.generator(0);
        let c = gr9.character(&[1]);
        let e = validate_datum(&gr9, &[g.clone(), g], &[c.clone(), c]).unwrap_err();
        assert_eq!(
            e,
            vec![DatumViolation::Braiding {
                i: 0,
                j: 1,
                value: z(9, 2)
            }]
        );
    }

    #[test]
    fn rank_one_coproduct() {
        let gr = AbelianGroup::cyclic(3);
        let d = validate_datum(&gr, &[gr.generator(0)], &[gr.character(&[1])]).unwrap();
        let r = build_qls(&d);
        assert_eq!(r.dim(), 3);
        let q = z(3, 1);
        let mut expect = Tensor2::new();
        expect.insert((2, 0), Cyclotomic::one());
        expect.insert((1, 1), &Cyclotomic::one() + &q);
        expect.insert((0, 2), Cyclotomic::one());
        assert_eq!(r.delta_basis(2), expect);
        // x^3 = 0
        assert!(r.mult[1][2].is_empty());
        assert!(verify_braided(&r).all_passed());
    }

    #[test]
    fn plane_is_braided_hopf() {
        let r = build_qls(&plane_z3());
        assert_eq!(r.dim(), 9);
        let rep = verify_braided(&r);
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn braiding_violation_detected() {
        let gr = AbelianGroup::cyclic(9);
        let g = gr.generator(0);
        let c = gr.character(&[1]);
        let r = build_qls_unchecked(&gr, &[g.clone(), g], &[c.clone(), c]).unwrap();
        let rep = verify_braided(&r);
        assert!(!rep.all_passed());
    }

    #[test]
    fn rank_zero() {
        let gr = AbelianGroup::cyclic(3);
        let d = validate_datum(&gr, &[], &[]).unwrap();
        let r = build_qls(&d);
        assert_eq!(r.dim(), 1);
        assert!(verify_braided(&r).all_passed());
        let b = bosonize(&r).unwrap();
        assert_eq!(b, {
            let mut ga = group_algebra(&gr);
            ga.labels = b.labels.clone();
            ga
        });
    }

    #[test]
    fn bosonization_of_plane() {
        let r = build_qls(&plane_z3());
        let b = bosonize(&r).unwrap();
        assert_eq!(b.dim(), 27);
        let rep = b.verify_axioms();
        assert!(rep.all_passed(), "{rep}");
        let gl = b.grouplikes();
        assert_eq!(gl.count(), 3);
        assert_eq!(section_indices(&r), vec![0, 1, 2]);
    }
}
