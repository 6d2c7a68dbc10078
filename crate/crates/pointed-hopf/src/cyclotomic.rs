//! Exact arithmetic in cyclotomic fields `Q(ζ_L)`.
//!
//! A value is the residue of a rational polynomial modulo the `L`-th
//! cyclotomic polynomial, stored in the power basis `1, ζ, …, ζ^{φ(L)-1}`.
//! Every arithmetic result is moved to the smallest level whose field
//! contains it, so two canonical values are equal iff their levels and
//! coefficient vectors agree. `Q(ζ_L) = Q(ζ_{2L})` for odd `L`, hence
//! canonical levels are never `2 mod 4`.

use crate::rational::{ParseQError, Q};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::rc::Rc;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("level {from} does not divide target level {to}")]
    LevelMismatch { from: u32, to: u32 },
    #[error("not a root of unity")]
    NotRootOfUnity,
    #[error("q-binomial parameters out of range: n={n}, i={i}, ord(q)={order:?}")]
    QBinomialRange { n: u32, i: u32, order: Option<u32> },
    #[error("malformed scalar `{0}`")]
    Parse(String),
}

impl From<ParseQError> for CycError {
    fn from(e: ParseQError) -> Self {
        CycError::Parse(e.0)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Φ_n with integer coefficients, constant term first, by dividing
/// `x^n - 1` by every Φ_d with `d | n`, `d < n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    thread_local! {
        static PHI: RefCell<HashMap<u32, Vec<i64>>> = RefCell::new(HashMap::new());
    }
    if let Some(p) = PHI.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n as u64) {
        if d as u32 == n {
            continue;
        }
        let den = cyclotomic_polynomial(d as u32);
        num = exact_div_monic(&num, &den);
    }
    PHI.with(|c| c.borrow_mut().insert(n, num.clone()));
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quo = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quo[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quo
}

/// Per-level tables: powers of ζ in the power basis and projections onto
/// maximal proper subfields.
struct LevelData {
    deg: usize,
    phi: Vec<i64>,
    /// `red[k]` = coordinates of ζ^k, `0 <= k < level`.
    red: Vec<Vec<i64>>,
    /// `(sub_level, embedding columns, left inverse rows)`.
    subfields: Vec<(u32, Vec<Vec<i64>>, Vec<Vec<Q>>)>,
}

fn level_data(level: u32) -> Rc<LevelData> {
    thread_local! {
        static CACHE: RefCell<HashMap<u32, Rc<LevelData>>> = RefCell::new(HashMap::new());
    }
    if let Some(d) = CACHE.with(|c| c.borrow().get(&level).cloned()) {
        return d;
    }
    let data = Rc::new(build_level_data(level));
    CACHE.with(|c| c.borrow_mut().insert(level, data.clone()));
    data
}

fn build_level_data(level: u32) -> LevelData {
    let phi = cyclotomic_polynomial(level);
    let deg = phi.len() - 1;
    let mut red = Vec::with_capacity(level as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..level {
        red.push(cur.clone());
        // multiply by x and reduce with the monic Φ
        let top = cur[deg - 1];
        let mut next = vec![0i64; deg];
        for j in (1..deg).rev() {
            next[j] = cur[j - 1];
        }
        if top != 0 {
            for j in 0..deg {
                next[j] -= top * phi[j];
            }
        }
        cur = next;
    }
    let mut subs: Vec<u32> = Vec::new();
    if level % 4 == 2 {
        subs.push(level / 2);
    } else {
        for p in prime_factors(level as u64) {
            subs.push(level / p as u32);
        }
    }
    let mut subfields = Vec::new();
    for s in subs {
        let sdeg = euler_phi(s as u64) as usize;
        let step = (level / s) as usize;
        let cols: Vec<Vec<i64>> = (0..sdeg)
            .map(|j| red[(j * step) % level as usize].clone())
            .collect();
        let proj = left_inverse(&cols, deg);
        subfields.push((s, cols, proj));
    }
    LevelData {
        deg,
        phi,
        red,
        subfields,
    }
}

/// Rows `P` (sdeg × deg) with `P · E = I` where `E` has the given columns.
fn left_inverse(cols: &[Vec<i64>], deg: usize) -> Vec<Vec<Q>> {
    let sdeg = cols.len();
    // pick sdeg independent rows of E greedily
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for r in 0..deg {
        let mut row: Vec<Q> = (0..sdeg).map(|j| Q::from_int(cols[j][r])).collect();
        for (b, &piv) in basis.iter().zip(pivots(&basis).iter()) {
            if !row[piv].is_zero() {
                let f = &row[piv] / &b[piv];
                for k in 0..sdeg {
                    row[k] = &row[k] - &(&f * &b[k]);
                }
            }
        }
        if row.iter().any(|x| !x.is_zero()) {
            basis.push(row);
            chosen.push(r);
            if chosen.len() == sdeg {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), sdeg, "subfield embedding not injective");
    // invert the square submatrix S[i][j] = cols[j][chosen[i]]
    let mut aug: Vec<Vec<Q>> = (0..sdeg)
        .map(|i| {
            let mut row: Vec<Q> = (0..sdeg).map(|j| Q::from_int(cols[j][chosen[i]])).collect();
            row.extend((0..sdeg).map(|k| if k == i { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..sdeg {
        let p = (c..sdeg).find(|&r| !aug[r][c].is_zero()).expect("singular");
        aug.swap(c, p);
        let inv = aug[c][c].recip();
        for k in 0..2 * sdeg {
            aug[c][k] = &aug[c][k] * &inv;
        }
        for r in 0..sdeg {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for k in 0..2 * sdeg {
                    aug[r][k] = &aug[r][k] - &(&f * &aug[c][k]);
                }
            }
        }
    }
    // S^{-1} maps values at chosen rows to subfield coordinates
    let mut proj = vec![vec![Q::zero(); deg]; sdeg];
    for j in 0..sdeg {
        for i in 0..sdeg {
            proj[j][chosen[i]] = aug[j][sdeg + i].clone();
        }
    }
    proj
}

fn pivots(basis: &[Vec<Q>]) -> Vec<usize> {
    basis
        .iter()
        .map(|b| b.iter().position(|x| !x.is_zero()).unwrap())
        .collect()
}

/// An element of `Q(ζ_level)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    level: u32,
    coeffs: Vec<Q>,
    canon: bool,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            level: 1,
            coeffs: vec![Q::zero()],
            canon: true,
        }
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(Q::from_int(n))
    }

    pub fn from_q(q: Q) -> Self {
        Cyclotomic {
            level: 1,
            coeffs: vec![q],
            canon: true,
        }
    }

    /// Builds a canonical value from power-basis coordinates at `level`.
    pub fn from_coeffs(level: u32, coeffs: Vec<Q>) -> Self {
        assert!(level >= 1);
        let deg = level_data(level).deg;
        assert_eq!(coeffs.len(), deg, "coefficient count must equal deg Φ_L");
        normalize(level, coeffs)
    }

    /// ζ_n^k, canonicalized.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let e = k.rem_euclid(n as i64) as usize;
        let d = level_data(n);
        let coeffs = d.red[e].iter().map(|&c| Q::from_int(c)).collect();
        normalize(n, coeffs)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Q> {
        let c = self.canonical();
        if c.level == 1 {
            Some(c.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn canonical(&self) -> Cyclotomic {
        if self.canon {
            self.clone()
        } else {
            normalize(self.level, self.coeffs.clone())
        }
    }

    /// Re-expresses the value at a multiple of its level. The result is
    /// deliberately left in that (possibly non-minimal) representation.
    pub fn embed(&self, target: u32) -> Result<Cyclotomic, CycError> {
        if target == 0 || !target.is_multiple_of(self.level) {
            return Err(CycError::LevelMismatch {
                from: self.level,
                to: target,
            });
        }
        Ok(Cyclotomic {
            level: target,
            coeffs: embed_raw(self.level, &self.coeffs, target),
            canon: target == self.level && self.canon,
        })
    }

    pub fn inv(&self) -> Result<Cyclotomic, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if self.level == 1 {
            return Ok(Cyclotomic::from_q(self.coeffs[0].recip()));
        }
        let d = level_data(self.level);
        let phi: Vec<Q> = d.phi.iter().map(|&c| Q::from_int(c)).collect();
        let s = poly_inverse_mod(&self.coeffs, &phi);
        Ok(normalize(self.level, s))
    }

    pub fn checked_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, CycError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Cyclotomic {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut n = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Least `n >= 1` with `a^n = 1`; only divisors of `2L` are possible.
    pub fn order(&self) -> Result<u32, CycError> {
        if self.is_zero() {
            return Err(CycError::NotRootOfUnity);
        }
        let c = self.canonical();
        for n in divisors(2 * c.level as u64) {
            if c.pow(n as i64).is_one() {
                return Ok(n as u32);
            }
        }
        Err(CycError::NotRootOfUnity)
    }

    /// `zN^k` with `N` the order, for roots of unity; the canonical form
    /// otherwise.
    pub fn root_label(&self) -> String {
        match self.order() {
            Ok(1) => "1".into(),
            Ok(n) => {
                let k = (1..n).find(|&k| Cyclotomic::root_of_unity(n, k as i64) == *self).expect("order n");
                if k == 1 {
                    format!("z{n}")
                } else {
                    format!("z{n}^{k}")
                }
            }
            Err(_) => self.to_string(),
        }
    }

    pub fn scale(&self, q: &Q) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            canon: self.canon,
        }
    }

    fn binop_add(&self, other: &Cyclotomic, sign: bool) -> Cyclotomic {
        let (l, a, b) = align(self, other);
        let coeffs: Vec<Q> = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| if sign { x + y } else { x - y })
            .collect();
        normalize(l, coeffs)
    }

    fn binop_mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.level == 1 {
            return other.scale(&self.coeffs[0]).canonical_if(other);
        }
        if other.level == 1 {
            return self.scale(&other.coeffs[0]).canonical_if(self);
        }
        let (l, a, b) = align(self, other);
        let d = level_data(l);
        let lu = l as usize;
        let mut acc: Vec<Q> = vec![Q::zero(); lu];
        let mut any = vec![false; lu];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let k = (i + j) % lu;
                acc[k] = &acc[k] + &(x * y);
                any[k] = true;
            }
        }
        let mut out = vec![Q::zero(); d.deg];
        for k in 0..lu {
            if !any[k] || acc[k].is_zero() {
                continue;
            }
            for (t, &r) in d.red[k].iter().enumerate() {
                if r != 0 {
                    out[t] = &out[t] + &(&acc[k] * &Q::from_int(r));
                }
            }
        }
        normalize(l, out)
    }

    fn canonical_if(self, _src: &Cyclotomic) -> Cyclotomic {
        if self.canon {
            self
        } else {
            normalize(self.level, self.coeffs)
        }
    }

    /// Parses the scalar grammar used on the command line: a sum of terms
    /// `c`, `zN`, `zN^k` or `c*zN^k`, where `c` is an integer or `a/b`.
    pub fn parse(s: &str) -> Result<Cyclotomic, CycError> {
        let err = || CycError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx > 0 && !cur.ends_with('^') {
                if cur.is_empty() {
                    return Err(err());
                }
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && idx == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err());
        }
        terms.push((neg, cur));
        let mut total = Cyclotomic::zero();
        for (neg, term) in terms {
            let (coef, root) = match term.split_once('*') {
                Some((c, r)) => (Some(c.to_string()), Some(r.to_string())),
                None if term.starts_with('z') => (None, Some(term.clone())),
                None => (Some(term.clone()), None),
            };
            let mut v = match coef {
                Some(c) => Cyclotomic::from_q(c.parse::<Q>().map_err(|_| err())?),
                None => Cyclotomic::one(),
            };
            if let Some(r) = root {
                let r = r.strip_prefix('z').ok_or_else(err)?;
                let (n, k) = match r.split_once('^') {
                    Some((n, k)) => (n, k.parse::<i64>().map_err(|_| err())?),
                    None => (r, 1),
                };
                let n: u32 = n.parse().map_err(|_| err())?;
                if n == 0 {
                    return Err(err());
                }
                v = &v * &Cyclotomic::root_of_unity(n, k);
            }
            total = if neg { &total - &v } else { &total + &v };
        }
        Ok(total)
    }
}

fn embed_raw(from: u32, coeffs: &[Q], to: u32) -> Vec<Q> {
    if from == to {
        return coeffs.to_vec();
    }
    let d = level_data(to);
    let step = (to / from) as usize;
    let mut out = vec![Q::zero(); d.deg];
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (t, &r) in d.red[(j * step) % to as usize].iter().enumerate() {
            if r != 0 {
                out[t] = &out[t] + &(c * &Q::from_int(r));
            }
        }
    }
    out
}

fn align(a: &Cyclotomic, b: &Cyclotomic) -> (u32, Vec<Q>, Vec<Q>) {
    if a.level == b.level {
        return (a.level, a.coeffs.clone(), b.coeffs.clone());
    }
    let l = lcm(a.level as u64, b.level as u64) as u32;
    (
        l,
        embed_raw(a.level, &a.coeffs, l),
        embed_raw(b.level, &b.coeffs, l),
    )
}

/// Moves a value to its minimal level.
fn normalize(mut level: u32, mut coeffs: Vec<Q>) -> Cyclotomic {
    loop {
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            return Cyclotomic {
                level: 1,
                coeffs: vec![coeffs[0].clone()],
                canon: true,
            };
        }
        let d = level_data(level);
        let mut moved = false;
        for (sub, cols, proj) in &d.subfields {
            let b: Vec<Q> = proj
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(coeffs.iter())
                        .filter(|(r, c)| !r.is_zero() && !c.is_zero())
                        .fold(Q::zero(), |acc, (r, c)| &acc + &(r * c))
                })
                .collect();
            let member = (0..d.deg).all(|t| {
                let v = cols
                    .iter()
                    .zip(b.iter())
                    .filter(|(col, bj)| col[t] != 0 && !bj.is_zero())
                    .fold(Q::zero(), |acc, (col, bj)| &acc + &(bj * &Q::from_int(col[t])));
                v == coeffs[t]
            });
            if member {
                level = *sub;
                coeffs = b;
                moved = true;
                break;
            }
        }
        if !moved {
            return Cyclotomic {
                level,
                coeffs,
                canon: true,
            };
        }
    }
}

fn poly_trim(p: &mut Vec<Q>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if r.len() < b.len() {
        return (vec![Q::zero()], r);
    }
    let mut q = vec![Q::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead_inv;
        if !c.is_zero() {
            for j in 0..=db {
                r[k + j] = &r[k + j] - &(&c * &b[j]);
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    poly_trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out: Vec<Q> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            &x - &y
        })
        .collect();
    poly_trim(&mut out);
    out
}

/// `s` with `s·a ≡ 1 (mod m)`, by the extended Euclidean algorithm.
fn poly_inverse_mod(a: &[Q], m: &[Q]) -> Vec<Q> {
    let deg = m.len() - 1;
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    poly_trim(&mut r1);
    let (mut s0, mut s1) = (vec![Q::zero()], vec![Q::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant gcd
    assert_eq!(r0.len(), 1, "element not invertible modulo Φ");
    let c = r0[0].recip();
    let (_, rem) = poly_divrem(&s0, m);
    let mut out: Vec<Q> = rem.iter().map(|x| x * &c).collect();
    out.resize(deg, Q::zero());
    out
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        if self.canon && other.canon {
            return false;
        }
        let (a, b) = (self.canonical(), other.canonical());
        a.level == b.level && a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let c = self.canonical();
        c.level.hash(state);
        c.coeffs.hash(state);
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on canonical forms (level, then coefficients); used only
/// for deterministic sorting.
impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.canonical(), other.canonical());
        a.level.cmp(&b.level).then_with(|| a.coeffs.cmp(&b.coeffs))
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: &Cyclotomic) -> Cyclotomic {
        if o.is_zero() {
            return self.canonical();
        }
        if self.is_zero() {
            return o.canonical();
        }
        self.binop_add(o, true)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, o: &Cyclotomic) -> Cyclotomic {
        if o.is_zero() {
            return self.canonical();
        }
        self.binop_add(o, false)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || o.is_zero() {
            return Cyclotomic::zero();
        }
        self.binop_mul(o)
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on division by zero; use [`Cyclotomic::checked_div`] to get an error.
    fn div(self, o: &Cyclotomic) -> Cyclotomic {
        self.checked_div(o).expect("division by zero")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            canon: self.canon,
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! owned_cyc_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, o: Cyclotomic) -> Cyclotomic {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, o: &Cyclotomic) -> Cyclotomic {
                (&self).$m(o)
            }
        }
    };
}
owned_cyc_ops!(Add, add);
owned_cyc_ops!(Sub, sub);
owned_cyc_ops!(Mul, mul);
owned_cyc_ops!(Div, div);

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<Q> for Cyclotomic {
    fn from(q: Q) -> Self {
        Cyclotomic::from_q(q)
    }
}

impl fmt::Display for Cyclotomic {
    /// Renders in the same grammar [`Cyclotomic::parse`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.level == 1 {
            return write!(f, "{}", c.coeffs[0]);
        }
        let mut first = true;
        for (j, q) in c.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.signum() < 0;
            let mag = if neg { -q } else { q.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let root = match j {
                0 => String::new(),
                1 => format!("z{}", c.level),
                _ => format!("z{}^{}", c.level, j),
            };
            if root.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{mag}*{root}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Cyclotomic {
    type Err = CycError;
    fn from_str(s: &str) -> Result<Self, CycError> {
        Cyclotomic::parse(s)
    }
}

fn int_json(n: num_bigint::BigInt) -> serde_json::Value {
    use num_traits::ToPrimitive;
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c = self.canonical();
        let mut st = s.serialize_struct("Cyclotomic", 3)?;
        st.serialize_field("level", &c.level)?;
        let nums: Vec<serde_json::Value> = c.coeffs.iter().map(|q| int_json(q.numer())).collect();
        let dens: Vec<serde_json::Value> = c.coeffs.iter().map(|q| int_json(q.denom())).collect();
        st.serialize_field("numerators", &nums)?;
        st.serialize_field("denominators", &dens)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            level: u32,
            numerators: Vec<serde_json::Value>,
            denominators: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.level == 0 {
            return Err(de::Error::custom("level must be positive"));
        }
        let deg = euler_phi(raw.level as u64) as usize;
        if raw.numerators.len() != deg || raw.denominators.len() != deg {
            return Err(de::Error::custom(format!(
                "level {} needs {} coefficients",
                raw.level, deg
            )));
        }
        let text = |v: &serde_json::Value| -> Result<String, D::Error> {
            match v {
                serde_json::Value::Number(n) if n.is_i64() => Ok(n.to_string()),
                serde_json::Value::String(s) => Ok(s.clone()),
                _ => Err(de::Error::custom("coefficient must be an integer")),
            }
        };
        let mut coeffs = Vec::with_capacity(deg);
        for (n, dn) in raw.numerators.iter().zip(raw.denominators.iter()) {
            let q: Q = format!("{}/{}", text(n)?, text(dn)?)
                .parse()
                .map_err(de::Error::custom)?;
            coeffs.push(q);
        }
        Ok(Cyclotomic::from_coeffs(raw.level, coeffs))
    }
}

/// Gaussian binomial `(n choose i)_q` via
/// `C(n,i) = C(n-1,i-1) + q^i C(n-1,i)`; requires `0 <= i <= n < ord(q)`.
pub fn qbinomial(n: u32, i: u32, q: &Cyclotomic) -> Result<Cyclotomic, CycError> {
    let order = q.order().ok();
    let in_range = i <= n && !q.is_one() && order.is_none_or(|o| n < o);
    if !in_range {
        return Err(CycError::QBinomialRange { n, i, order });
    }
    Ok(qbinomial_recurrence(n, i, q))
}

/// The recurrence without range checks; well defined for every `n`,
/// including the boundary `n = ord(q)` where the factorial quotient is
/// undefined.
pub fn qbinomial_recurrence(n: u32, i: u32, q: &Cyclotomic) -> Cyclotomic {
    if i > n {
        return Cyclotomic::zero();
    }
    let mut row = vec![Cyclotomic::one()];
    let powers: Vec<Cyclotomic> = {
        let mut v = vec![Cyclotomic::one()];
        for k in 1..=n as usize {
            v.push(&v[k - 1] * q);
        }
        v
    };
    for m in 1..=n as usize {
        let mut next = vec![Cyclotomic::one(); m + 1];
        for k in 1..m {
            next[k] = &row[k - 1] + &(&powers[k] * &row[k]);
        }
        row = next;
    }
    row[i as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn phi_small() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn basic_identities() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_int(-1));
        let s = &(&Cyclotomic::one() + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
        let a = &Cyclotomic::one() - &z(5, 1);
        assert!((&a.inv().unwrap() * &a).is_one());
    }

    #[test]
    fn canonical_levels() {
        assert_eq!(z(2, 1).level(), 1);
        assert_eq!(z(6, 1).level(), 3);
        assert_eq!(z(9, 3), z(3, 1));
        assert_eq!(z(9, 3).level(), 3);
        assert_eq!(z(12, 4).level(), 3);
        assert_eq!(z(10, 2), z(5, 1));
        // ζ_6 = -ζ_3^2
        assert_eq!(z(6, 1), -z(3, 2));
    }

    #[test]
    fn embed_round_trip() {
        let e = Cyclotomic::from_int(-1).embed(6).unwrap();
        assert_eq!(e.level(), 6);
        assert_eq!(e, z(6, 3));
        assert_eq!(e.canonical().level(), 1);
        let e3 = z(3, 1).embed(9).unwrap();
        assert_eq!(e3.coeffs()[3], Q::one());
        assert_eq!(e3, z(9, 3));
        let x = &z(5, 2) + &Cyclotomic::from_q(Q::new(1, 3));
        assert_eq!(x.embed(5).unwrap(), x);
        assert!(z(3, 1).embed(4).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(z(9, 3).order().unwrap(), 3);
        assert_eq!(Cyclotomic::one().order().unwrap(), 1);
        assert_eq!(z(9, 4).order().unwrap(), 9);
        assert_eq!(Cyclotomic::from_int(-1).order().unwrap(), 2);
        assert_eq!((-z(3, 1)).order().unwrap(), 6);
        assert!(Cyclotomic::from_int(2).order().is_err());
        assert!((&Cyclotomic::one() + &z(5, 1)).order().is_err());
    }

    #[test]
    fn order_formula_exhaustive() {
        for n in 1..=24u32 {
            for k in 1..=n {
                let expected = n / gcd(n as u64, k as u64) as u32;
                assert_eq!(z(n, k as i64).order().unwrap(), expected, "ζ_{n}^{k}");
            }
        }
    }

    #[test]
    fn qbinomial_examples() {
        let q = z(7, 1);
        assert_eq!(qbinomial(2, 1, &q).unwrap(), &Cyclotomic::one() + &q);
        assert!(qbinomial(5, 0, &q).unwrap().is_one());
        let z5 = z(5, 1);
        // factorial quotient (q^4-1)(q^3-1)/((q^2-1)(q-1)) = (1+q^2)(1+q+q^2),
        // which collapses to q^2 at a primitive fifth root
        let one = Cyclotomic::one();
        let f = |k: i64| &z5.pow(k) - &one;
        let quotient = &(&f(4) * &f(3)) / &(&f(2) * &f(1));
        assert_eq!(qbinomial(4, 2, &z5).unwrap(), quotient);
        assert_eq!(quotient, z(5, 2));
        let two_factor = &(&one + &z5) * &(&one + &z(5, 2));
        assert_ne!(qbinomial(4, 2, &z5).unwrap(), two_factor);
        assert!(qbinomial(5, 2, &z5).is_err());
        assert!(qbinomial(2, 3, &z5).is_err());
        assert!(qbinomial(1, 1, &Cyclotomic::one()).is_err());
    }

    #[test]
    fn qbinomial_vanishes_at_order() {
        for n in 2..=9u32 {
            for k in 1..n as i64 {
                let q = z(n, k);
                let ord = q.order().unwrap();
                for i in 1..ord {
                    assert!(qbinomial_recurrence(ord, i, &q).is_zero());
                }
            }
        }
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "3/4", "z3", "-z3^2", "1 + z3", "2*z9^4 - 1/2", "z12^5 + z4"] {
            let v = Cyclotomic::parse(s).unwrap();
            let back = Cyclotomic::parse(&v.to_string()).unwrap();
            assert_eq!(v, back, "{s} -> {v}");
        }
        assert_eq!(Cyclotomic::parse("z3^-1").unwrap(), z(3, 2));
        assert!(Cyclotomic::parse("z0").is_err());
        assert!(Cyclotomic::parse("").is_err());
        assert!(Cyclotomic::parse("1+").is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = &z(9, 2) + &Cyclotomic::from_q(Q::new(-5, 7));
        let js = serde_json::to_string(&v).unwrap();
        assert_eq!(
            js,
            r#"{"level":9,"numerators":[-5,0,1,0,0,0],"denominators":[7,1,1,1,1,1]}"#
        );
        let back: Cyclotomic = serde_json::from_str(&js).unwrap();
        assert_eq!(back, v);
    }
}
