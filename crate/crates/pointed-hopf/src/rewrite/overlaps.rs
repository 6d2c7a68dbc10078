//! Overlap ambiguities of lifting presentations and the scalar
//! constraints that resolve them.

use super::{combo_sub, Coeff, Combo, LiftingShape, Poly, Presentation, Rewriter, RuleKind, Scalars, Strategy, Word};
use crate::cyclotomic::Cyclotomic;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OverlapFamily {
    /// `(a_i h_ℓ) h_ℓ^{M-1}`
    ActionHPower,
    /// `(a_i h_ℓ) h_t`
    ActionHCommute,
    /// `(a_i^{N-1} a_i) h_ℓ`
    PowerAction,
    /// `(a_j^{N-1} a_j) a_i`
    PowerCommute,
    /// `(a_j a_i) a_i^{N-1}`
    CommutePower,
    /// `(a_j a_i) h_ℓ`
    CommuteAction,
    /// Overlaps among the group relations.
    GroupOnly,
    /// `a_i^N` overlapping itself.
    PowerPower,
    /// `(a_k a_j) a_i`
    CommuteCommute,
    /// One left side inside another; never produced by lifting rules.
    Inclusion,
}

impl fmt::Display for OverlapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OverlapFamily::ActionHPower => "a_i h_l^M",
            OverlapFamily::ActionHCommute => "a_i h_l h_t",
            OverlapFamily::PowerAction => "a_i^N h_l",
            OverlapFamily::PowerCommute => "a_j^N a_i",
            OverlapFamily::CommutePower => "a_j a_i^N",
            OverlapFamily::CommuteAction => "a_j a_i h_l",
            OverlapFamily::GroupOnly => "h only",
            OverlapFamily::PowerPower => "a_i^N self-overlap",
            OverlapFamily::CommuteCommute => "a_k a_j a_i",
            OverlapFamily::Inclusion => "inclusion",
        };
        f.write_str(s)
    }
}

fn family(k1: RuleKind, k2: RuleKind) -> OverlapFamily {
    use RuleKind::*;
    match (k1, k2) {
        (Action(..), HPower(_)) => OverlapFamily::ActionHPower,
        (Action(..), HCommute(..)) => OverlapFamily::ActionHCommute,
        (APower(_), Action(..)) => OverlapFamily::PowerAction,
        (APower(_), ACommute(..)) => OverlapFamily::PowerCommute,
        (ACommute(..), APower(_)) => OverlapFamily::CommutePower,
        (ACommute(..), Action(..)) => OverlapFamily::CommuteAction,
        (HPower(_) | HCommute(..), HPower(_) | HCommute(..)) => OverlapFamily::GroupOnly,
        (APower(_), APower(_)) => OverlapFamily::PowerPower,
        (ACommute(..), ACommute(..)) => OverlapFamily::CommuteCommute,
        _ => OverlapFamily::Inclusion,
    }
}

#[derive(Clone, Debug)]
pub struct OverlapResult {
    pub family: OverlapFamily,
    /// The overlap word.
    pub word: String,
    pub resolved: bool,
    /// Normal form of the difference of the two reductions.
    pub residual: String,
    /// Statements `p = 0`, one per nonzero coefficient polynomial of the
    /// residual; `mu_i = 0` and `lambda_ij = 0` when `p` is a multiple of a
    /// single scalar.
    pub constraints: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct OverlapReport {
    pub symbolic: bool,
    pub overlaps: Vec<OverlapResult>,
    /// Distinct constraint polynomials over all overlaps.
    pub polynomials: Vec<Poly>,
    pub scalar_names: Vec<String>,
}

impl OverlapReport {
    pub fn confluent(&self) -> bool {
        self.overlaps.iter().all(|o| o.resolved)
    }

    pub fn constraints(&self) -> BTreeSet<String> {
        self.overlaps.iter().flat_map(|o| o.constraints.iter().cloned()).collect()
    }

    pub fn family_resolved(&self, f: OverlapFamily) -> bool {
        self.overlaps.iter().filter(|o| o.family == f).all(|o| o.resolved)
    }

    pub fn families(&self) -> BTreeSet<OverlapFamily> {
        self.overlaps.iter().map(|o| o.family).collect()
    }

    /// Whether the emitted constraints cut out the same set as `reference`
    /// (indices of scalars forced to vanish), tested on every assignment of
    /// `0` or `1` to the scalars.
    pub fn equivalent_to(&self, reference: &BTreeSet<usize>) -> bool {
        let n = self.scalar_names.len();
        if n > 20 {
            return false;
        }
        (0u32..1 << n).all(|mask| {
            let vals: Vec<Cyclotomic> = (0..n).map(|k| Cyclotomic::from_int(((mask >> k) & 1) as i64)).collect();
            let ours = self.polynomials.iter().all(|p| p.eval(&vals).is_zero());
            let theirs = reference.iter().all(|&k| vals[k].is_zero());
            ours == theirs
        })
    }
}

struct Ambiguity {
    family: OverlapFamily,
    word: Word,
    left: Combo<Poly>,
    right: Combo<Poly>,
}

fn rhs_combo(rhs: &[(Word, Poly)], prefix: &[u8], suffix: &[u8]) -> Combo<Poly> {
    let mut out = Combo::new();
    for (w, c) in rhs {
        let mut nw = prefix.to_vec();
        nw.extend_from_slice(w);
        nw.extend_from_slice(suffix);
        let s = match out.get(&nw) {
            Some(x) => Coeff::add(x, c),
            None => c.clone(),
        };
        out.insert(nw, s);
    }
    out
}

fn ambiguities(p: &Presentation<Poly>) -> Vec<Ambiguity> {
    let rules = p.rules();
    let mut out = Vec::new();
    for r1 in rules {
        let l1 = r1.lhs.len();
        for r2 in rules {
            let l2 = r2.lhs.len();
            for k in 1..l1.min(l2) {
                if r1.lhs[l1 - k..] != r2.lhs[..k] {
                    continue;
                }
                let mut word = r1.lhs.clone();
                word.extend_from_slice(&r2.lhs[k..]);
                out.push(Ambiguity {
                    family: family(r1.kind, r2.kind),
                    left: rhs_combo(&r1.rhs, &[], &r2.lhs[k..]),
                    right: rhs_combo(&r2.rhs, &r1.lhs[..l1 - k], &[]),
                    word,
                });
            }
            if r1.kind != r2.kind && l2 < l1 {
                for pos in 0..=l1 - l2 {
                    if r1.lhs[pos..pos + l2] == r2.lhs[..] {
                        out.push(Ambiguity {
                            family: OverlapFamily::Inclusion,
                            word: r1.lhs.clone(),
                            left: rhs_combo(&r1.rhs, &[], &[]),
                            right: rhs_combo(&r2.rhs, &r1.lhs[..pos], &r1.lhs[pos + l2..]),
                        });
                    }
                }
            }
        }
    }
    out
}

fn render_combo<C, F: Fn(&C) -> String>(p: &Presentation<Cyclotomic>, v: &Combo<C>, coeff: F) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(w, c)| format!("({})*{}", coeff(c), p.render_word(w)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn constraint_text(poly: &Poly, names: &[String]) -> String {
    match poly.as_scaled_var() {
        Some(v) => format!("{} = 0", names[v]),
        None => format!("{} = 0", poly.monic().render(names)),
    }
}

/// Reduces both sides of every overlap ambiguity of `p` to normal form.
///
/// The computation runs with `μ_i` and `λ_{ij}` as indeterminates. In
/// symbolic mode the residuals and constraints are reported as
/// polynomials; otherwise the residuals are specialized to the scalars of
/// `p` and only the constraints violated by those scalars are reported.
pub fn check_overlaps(p: &Presentation<Cyclotomic>, symbolic: bool) -> OverlapReport {
    let shape = p.shape().clone();
    let names = shape.scalar_names();
    let values = p.scalars().values(&shape);
    let sym = Presentation::lifting(shape, Scalars::symbolic(p.shape())).expect("shape already validated");
    let mut rw = Rewriter::new(&sym, Strategy::Leftmost);
    let mut concrete = Rewriter::new(p, Strategy::Leftmost);
    let mut overlaps = Vec::new();
    let mut polys: BTreeSet<Vec<(Vec<(usize, u32)>, Cyclotomic)>> = BTreeSet::new();
    let mut poly_list = Vec::new();
    for amb in ambiguities(&sym) {
        let left = rw.normal_form(&amb.left);
        let right = rw.normal_form(&amb.right);
        let residual = combo_sub(&left, &right);
        let mut constraints = BTreeSet::new();
        for c in residual.values() {
            let m = c.monic();
            if symbolic || !c.eval(&values).is_zero() {
                constraints.insert(constraint_text(&m, &names));
            }
            let key: Vec<_> = m.terms().map(|(a, b)| (a.clone(), b.clone())).collect();
            if polys.insert(key) {
                poly_list.push(m);
            }
        }
        let (resolved, residual_text) = if symbolic {
            (residual.is_empty(), render_combo(p, &residual, |c: &Poly| c.render(&names)))
        } else {
            let mut spec: Combo<Cyclotomic> = BTreeMap::new();
            for (w, c) in &residual {
                let v = c.eval(&values);
                if !v.is_zero() {
                    spec.insert(w.clone(), v);
                }
            }
            let direct = {
                let lc = specialize(&amb.left, &values);
                let rc = specialize(&amb.right, &values);
                combo_sub(&concrete.normal_form(&lc), &concrete.normal_form(&rc))
            };
            debug_assert_eq!(spec, direct);
            (direct.is_empty(), render_combo(p, &direct, |c: &Cyclotomic| c.to_string()))
        };
        overlaps.push(OverlapResult {
            family: amb.family,
            word: p.render_word(&amb.word),
            resolved,
            residual: residual_text,
            constraints: constraints.into_iter().collect(),
        });
    }
    OverlapReport {
        symbolic,
        overlaps,
        polynomials: poly_list,
        scalar_names: names,
    }
}

fn specialize(v: &Combo<Poly>, values: &[Cyclotomic]) -> Combo<Cyclotomic> {
    let mut out = Combo::new();
    for (w, c) in v {
        let x = c.eval(values);
        if !x.is_zero() {
            out.insert(w.clone(), x);
        }
    }
    out
}

/// Indices (as in [`LiftingShape::scalar_names`]) of the scalars that the
/// classical compatibility conditions force to vanish.
///
/// A scalar only enters the relations multiplied by `1 - g_i^{N_i}` or
/// `1 - g_i g_j`, so every condition includes the corresponding
/// non-triviality hypothesis. The condition coming from `a_j^{N_j} a_i`
/// concerns `μ_j`.
pub fn reference_constraints(shape: &LiftingShape) -> BTreeSet<usize> {
    let gr = &shape.group;
    let t = shape.theta();
    let one = gr.identity();
    let eps = gr.trivial_character();
    let mut out = BTreeSet::new();
    let n: Vec<u32> = (0..t).map(|i| shape.n(i)).collect();
    let gn_nontrivial = |i: usize| gr.power(&shape.g[i], n[i] as i64) != one;
    for i in 0..t {
        if gn_nontrivial(i) && gr.char_power(&shape.chi[i], n[i] as i64) != eps {
            out.insert(i);
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            let c = shape.eval(&shape.chi[i], &shape.g[j]);
            if gn_nontrivial(j) && !c.pow(n[j] as i64).is_one() {
                out.insert(j);
            }
            if gn_nontrivial(i) && !c.pow(n[i] as i64).is_one() {
                out.insert(i);
            }
            let gg = gr.compose(&shape.g[i], &shape.g[j]);
            if gg == one {
                continue;
            }
            let geo = |m: u32| (0..m).fold(Cyclotomic::zero(), |acc, k| &acc + &c.pow(k as i64));
            let chichi = gr.char_mul(&shape.chi[i], &shape.chi[j]);
            if !geo(n[j]).is_zero() || !geo(n[i]).is_zero() || chichi != eps {
                out.insert(shape.lambda_index(i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::{family_b, taft};
    use super::*;
    use crate::abelian::AbelianGroup;

    fn shape(factors: Vec<u32>, g: Vec<Vec<i64>>, chi: Vec<Vec<i64>>) -> LiftingShape {
        let gr = AbelianGroup::new(factors).unwrap();
        LiftingShape {
            g: g.iter().map(|e| gr.element(e)).collect(),
            chi: chi.iter().map(|e| gr.character(e)).collect(),
            group: gr,
        }
    }

    fn with(shape: LiftingShape, mu: Vec<i64>, lambda: Vec<((usize, usize), Cyclotomic)>) -> Presentation<Cyclotomic> {
        Presentation::lifting(
            shape,
            Scalars {
                mu: mu.into_iter().map(Cyclotomic::from_int).collect(),
                lambda: lambda.into_iter().collect(),
            },
        )
        .unwrap()
    }

    #[test]
    fn compatible_data_are_confluent() {
        assert!(check_overlaps(&taft(), false).confluent());
        for lam in [Cyclotomic::zero(), Cyclotomic::one(), Cyclotomic::from_int(2)] {
            let r = check_overlaps(&family_b(lam), false);
            assert!(r.confluent(), "{:?}", r.constraints());
        }
    }

    #[test]
    fn families_present_for_rank_two() {
        let r = check_overlaps(&family_b(Cyclotomic::one()), true);
        let fams = r.families();
        for f in [
            OverlapFamily::ActionHPower,
            OverlapFamily::PowerAction,
            OverlapFamily::PowerCommute,
            OverlapFamily::CommutePower,
            OverlapFamily::CommuteAction,
            OverlapFamily::GroupOnly,
            OverlapFamily::PowerPower,
        ] {
            assert!(fams.contains(&f), "{f}");
        }
        assert!(!fams.contains(&OverlapFamily::Inclusion));
    }

    #[test]
    fn power_violation_names_mu() {
        // g of order 4 with q = -1 and χ^2 ≠ ε
        let s = shape(vec![4, 4], vec![vec![1, 0]], vec![vec![2, 1]]);
        let r = check_overlaps(&with(s, vec![1], vec![]), false);
        assert!(!r.confluent());
        assert!(!r.family_resolved(OverlapFamily::PowerAction));
        assert_eq!(r.constraints(), ["mu_1 = 0".to_string()].into_iter().collect());
    }

    #[test]
    fn commutation_violation_names_lambda() {
        let s = shape(vec![9], vec![vec![1], vec![2]], vec![vec![3], vec![3]]);
        let r = check_overlaps(&with(s.clone(), vec![0, 0], vec![((0, 1), Cyclotomic::one())]), false);
        assert!(!r.family_resolved(OverlapFamily::CommuteAction));
        assert!(r.constraints().contains("lambda_12 = 0"));
        let sym = check_overlaps(&with(s.clone(), vec![0, 0], vec![]), true);
        assert!(sym.equivalent_to(&reference_constraints(&s)));
        assert_eq!(reference_constraints(&s), [2].into_iter().collect());
    }

    #[test]
    fn symbolic_matches_reference_on_family_shape() {
        let p = family_b(Cyclotomic::one());
        let r = check_overlaps(&p, true);
        let reference = reference_constraints(p.shape());
        assert!(reference.is_empty());
        assert!(r.confluent());
        assert!(r.equivalent_to(&reference));
    }
}
