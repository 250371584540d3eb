//! The truncated tensor space `T_{≤d}`: monomials `M_f`, the right Hecke
//! action, the Chevalley generators, the bar involution and the two forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use crate::laurent::Poly;
use crate::weights::{Shape, SymElem, WeightFn};
use crate::{Error, Result};

pub type Terms = BTreeMap<WeightFn, Poly>;

fn add_into(terms: &mut Terms, f: WeightFn, c: &Poly) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&f) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                terms.remove(&f);
            }
        }
        None => {
            terms.insert(f, c.clone());
        }
    }
}

fn q_minus_qinv() -> Poly {
    Poly::from_terms([(1, BigInt::one()), (-1, -BigInt::one())])
}

/// `(-q)^k`.
pub fn neg_q_pow(k: i32) -> Poly {
    let c = if k.rem_euclid(2) == 0 { BigInt::one() } else { -BigInt::one() };
    Poly::monomial(c, k)
}

#[derive(Clone, PartialEq, Eq)]
pub struct TensorVector {
    shape: Shape,
    bound: i64,
    terms: Terms,
}

impl TensorVector {
    pub fn zero(shape: Shape, bound: i64) -> Self {
        Self { shape, bound, terms: Terms::new() }
    }

    /// `M_f` in `T_{≤d}`.
    pub fn monomial(f: &WeightFn, d: i64) -> Result<Self> {
        let mut v = Self::zero(f.shape(), d);
        v.add_term(f.clone(), &Poly::one())?;
        Ok(v)
    }

    /// Builds a vector from terms, dropping anything above the bound.
    pub fn from_terms_projected(shape: Shape, bound: i64, terms: impl IntoIterator<Item = (WeightFn, Poly)>) -> Self {
        let mut v = Self::zero(shape, bound);
        for (f, c) in terms {
            if f.max_value().is_none_or(|x| x <= bound) {
                add_into(&mut v.terms, f, &c);
            }
        }
        v
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn into_terms(self) -> Terms {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, f: &WeightFn) -> Poly {
        self.terms.get(f).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, f: WeightFn, c: &Poly) -> Result<()> {
        if f.shape() != self.shape {
            return Err(Error::Domain(format!("{} does not have shape {}", f, self.shape)));
        }
        if f.max_value().is_some_and(|x| x > self.bound) {
            return Err(Error::Domain(format!("{} exceeds the bound {}", f, self.bound)));
        }
        add_into(&mut self.terms, f, c);
        Ok(())
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.shape, other.shape, "shape mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        out.bound = self.bound.max(other.bound);
        for (f, c) in &other.terms {
            add_into(&mut out.terms, f.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Poly::one()))
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero(self.shape, self.bound);
        for (f, x) in &self.terms {
            add_into(&mut out.terms, f.clone(), &(x * c));
        }
        out
    }

    /// Conjugates coefficients only.
    pub fn bar_coeffs(&self) -> Self {
        Self {
            shape: self.shape,
            bound: self.bound,
            terms: self.terms.iter().map(|(f, c)| (f.clone(), c.bar())).collect(),
        }
    }

    /// `π_{≤e}`.
    pub fn project(&self, e: i64) -> Self {
        Self::from_terms_projected(self.shape, e, self.terms.clone())
    }

    /// Reinterprets the vector in a larger truncation.
    pub fn with_bound(&self, e: i64) -> Result<Self> {
        if self.terms.keys().any(|f| f.max_value().is_some_and(|x| x > e)) {
            return Err(Error::Domain(format!("support exceeds the bound {}", e)));
        }
        Ok(Self { shape: self.shape, bound: e, terms: self.terms.clone() })
    }

    /// `ω(M_f) = M_{ω(f)}`, into `T^{n|m}`.
    pub fn omega(&self) -> Self {
        Self {
            shape: self.shape.flipped(),
            bound: self.bound,
            terms: self.terms.iter().map(|(f, c)| (f.omega_flip(), c.clone())).collect(),
        }
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(f, c)| format!("({})*M{}", c, f)).collect();
        write!(out, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[{} ≤{}] {}", self.shape, self.bound, self)
    }
}

fn hecke_terms(terms: &Terms, i: i32) -> Result<Terms> {
    use std::cmp::Ordering::*;
    let mut out = Terms::new();
    let qq = q_minus_qinv();
    for (f, c) in terms {
        match f.hecke_cmp(i)? {
            Less => add_into(&mut out, f.act_s(i)?, c),
            Equal => add_into(&mut out, f.clone(), &c.shift(-1)),
            Greater => {
                add_into(&mut out, f.act_s(i)?, c);
                add_into(&mut out, f.clone(), &-(c * &qq));
            }
        }
    }
    Ok(out)
}

fn hecke_inverse_terms(terms: &Terms, i: i32) -> Result<Terms> {
    let mut out = hecke_terms(terms, i)?;
    let qq = q_minus_qinv();
    for (f, c) in terms {
        add_into(&mut out, f.clone(), &(c * &qq));
    }
    Ok(out)
}

/// `v H_i`.
pub fn hecke_act(v: &TensorVector, i: i32) -> Result<TensorVector> {
    Ok(TensorVector { shape: v.shape, bound: v.bound, terms: hecke_terms(&v.terms, i)? })
}

/// `v H_i^{-1}`, using `H_i^{-1} = H_i + (q - q^{-1})`.
pub fn hecke_act_inverse(v: &TensorVector, i: i32) -> Result<TensorVector> {
    Ok(TensorVector { shape: v.shape, bound: v.bound, terms: hecke_inverse_terms(&v.terms, i)? })
}

/// `v H_{i_1} ... H_{i_k}`.
pub fn hecke_act_word(v: &TensorVector, word: &[i32]) -> Result<TensorVector> {
    word.iter().try_fold(v.clone(), |acc, &i| hecke_act(&acc, i))
}

/// `v H_x` for `x` given by a reduced word.
pub fn hecke_act_elem(v: &TensorVector, x: &SymElem) -> Result<TensorVector> {
    hecke_act_word(v, &x.reduced_word())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    E(i64),
    F(i64),
    K(i64),
    KInv(i64),
}

impl Generator {
    pub fn omega(self) -> Generator {
        match self {
            Generator::E(a) => Generator::F(a),
            Generator::F(a) => Generator::E(a),
            Generator::K(a) => Generator::KInv(a),
            Generator::KInv(a) => Generator::K(a),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(a) => write!(out, "E_{}", a),
            Generator::F(a) => write!(out, "F_{}", a),
            Generator::K(a) => write!(out, "K_{}", a),
            Generator::KInv(a) => write!(out, "K_{}^-1", a),
        }
    }
}

/// Exponent of `q` from `K_a^{s} K_{a+1}^{t}`-type factors on one tensor
/// factor: `w_b` scales by `q^{-(s δ_ab + t δ_{a+1,b})}`, `v_b` by the
/// opposite power.
fn k_exponent(is_w: bool, b: i64, a: i64, s: i32, t: i32) -> i32 {
    let e = if b == a { s } else { 0 } + if b == a + 1 { t } else { 0 };
    if is_w {
        -e
    } else {
        e
    }
}

fn chevalley_terms(shape: Shape, terms: &Terms, g: Generator) -> Terms {
    let m = shape.m;
    let len = shape.len();
    let mut out = Terms::new();
    for (f, c) in terms {
        let vals = f.values();
        match g {
            Generator::K(a) | Generator::KInv(a) => {
                let s = if matches!(g, Generator::K(_)) { 1 } else { -1 };
                let e: i32 = (0..len).map(|p| k_exponent(p < m, vals[p], a, s, 0)).sum();
                add_into(&mut out, f.clone(), &c.shift(e));
            }
            Generator::E(a) => {
                // E_a on factor p, K_{a+1} K_a^{-1} on every factor to its right.
                let mut tail = 0;
                for p in (0..len).rev() {
                    let is_w = p < m;
                    let hit = if is_w { vals[p] == a } else { vals[p] == a + 1 };
                    if hit {
                        let mut h = vals.to_vec();
                        h[p] = if is_w { a + 1 } else { a };
                        add_into(&mut out, WeightFn::from_values(shape, h).unwrap(), &c.shift(tail));
                    }
                    tail += k_exponent(is_w, vals[p], a, -1, 1);
                }
            }
            Generator::F(a) => {
                // F_a on factor p, K_a K_{a+1}^{-1} on every factor to its left.
                let mut head = 0;
                for p in 0..len {
                    let is_w = p < m;
                    let hit = if is_w { vals[p] == a + 1 } else { vals[p] == a };
                    if hit {
                        let mut h = vals.to_vec();
                        h[p] = if is_w { a } else { a + 1 };
                        add_into(&mut out, WeightFn::from_values(shape, h).unwrap(), &c.shift(head));
                    }
                    head += k_exponent(is_w, vals[p], a, 1, -1);
                }
            }
        }
    }
    out
}

fn check_generator(bound: i64, g: Generator) -> Result<()> {
    let ok = match g {
        Generator::E(a) | Generator::F(a) => a < bound,
        Generator::K(a) | Generator::KInv(a) => a <= bound,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("{} is out of range for bound {}", g, bound)))
    }
}

/// `X v` for a Chevalley generator `X`.
pub fn chevalley_act(v: &TensorVector, g: Generator) -> Result<TensorVector> {
    check_generator(v.bound, g)?;
    Ok(TensorVector { shape: v.shape, bound: v.bound, terms: chevalley_terms(v.shape, &v.terms, g) })
}

/// `E_a^{(r)} v` or `F_a^{(r)} v`.
pub fn divided_power_act(v: &TensorVector, g: Generator, r: u32) -> Result<TensorVector> {
    if !matches!(g, Generator::E(_) | Generator::F(_)) {
        return Err(Error::Domain(format!("divided powers of {} are not defined", g)));
    }
    check_generator(v.bound, g)?;
    let mut terms = v.terms.clone();
    for _ in 0..r {
        terms = chevalley_terms(v.shape, &terms, g);
    }
    let fact = Poly::quantum_factorial(r);
    let mut out = Terms::new();
    for (f, c) in terms {
        let c =
            c.exact_div(&fact).map_err(|_| Error::Consistency(format!("{}^({}) is not integral on {}", g, r, f)))?;
        add_into(&mut out, f, &c);
    }
    Ok(TensorVector { shape: v.shape, bound: v.bound, terms: out })
}

/// A partition with strictly positive, weakly decreasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_k` (1-based, zero past the end).
    pub fn part(&self, k: usize) -> u32 {
        if k == 0 {
            return 0;
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `r(λ)`.
    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    /// `r_s(λ)`.
    pub fn multiplicity(&self, s: u32) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }

    /// `(1-q^2)^{r} (-q)^{-|λ|} Π_s q^{r_s(r_s-1)/2} [r_s]!`.
    pub fn p_coeff(&self) -> Poly {
        let one_minus_q2 = Poly::from_terms([(0, BigInt::one()), (2, -BigInt::one())]);
        let mut p = one_minus_q2.pow(self.num_parts() as u32) * neg_q_pow(-(self.size() as i32));
        let mut distinct = self.0.clone();
        distinct.dedup();
        for s in distinct {
            let r = self.multiplicity(s) as u32;
            p = p * Poly::quantum_factorial(r).shift((r * (r.saturating_sub(1)) / 2) as i32);
        }
        p
    }

    /// All partitions with at most `max_len` parts, each at most `max_part`.
    pub fn bounded(max_len: usize, max_part: u32) -> Vec<Partition> {
        fn rec(max_len: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() == max_len {
                return;
            }
            let top = cur.last().copied().unwrap_or(max_part);
            for x in 1..=top {
                cur.push(x);
                rec(max_len, max_part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_len, max_part, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(out, "({})", s.join(","))
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Distinct rearrangements of `vals`, in lexicographic order.
pub fn distinct_arrangements(vals: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = vals.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Pairs `i < j` with `v_i > v_j` (or `<` when `ascending_is_inversion`).
fn pair_inversions(v: &[i64], ascending_is_inversion: bool) -> usize {
    let mut c = 0;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if (!ascending_is_inversion && v[a] > v[b]) || (ascending_is_inversion && v[a] < v[b]) {
                c += 1;
            }
        }
    }
    c
}

/// Distance of a rearrangement from the dominant ordering: negative pairs
/// out of increasing order plus positive pairs out of decreasing order.
pub fn dominant_distance(h: &WeightFn) -> usize {
    pair_inversions(h.neg(), false) + pair_inversions(h.pos(), true)
}

/// Memoized bar involution on `T_{≤d}`.
pub struct BarInvolution {
    bound: i64,
    monomials: Mutex<HashMap<WeightFn, Terms>>,
    constant_blocks: Mutex<HashMap<(usize, usize, i64), Terms>>,
}

impl BarInvolution {
    pub fn new(bound: i64) -> Self {
        Self { bound, monomials: Mutex::new(HashMap::new()), constant_blocks: Mutex::new(HashMap::new()) }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Antilinear extension over the terms of `v`.
    pub fn apply(&self, v: &TensorVector) -> Result<TensorVector> {
        if v.bound != self.bound {
            return Err(Error::Domain(format!("vector bound {} differs from bar bound {}", v.bound, self.bound)));
        }
        let mut out = Terms::new();
        for (f, c) in &v.terms {
            let cb = c.bar();
            for (g, x) in self.monomial_terms(f).iter() {
                add_into(&mut out, g.clone(), &(x * &cb));
            }
        }
        Ok(TensorVector { shape: v.shape, bound: v.bound, terms: out })
    }

    /// `π_{≤d}(bar(M_f))`.
    pub fn monomial(&self, f: &WeightFn) -> Result<TensorVector> {
        if f.max_value().is_some_and(|x| x > self.bound) {
            return Err(Error::Domain(format!("{} exceeds the bound {}", f, self.bound)));
        }
        Ok(TensorVector { shape: f.shape(), bound: self.bound, terms: self.monomial_terms(f) })
    }

    fn monomial_terms(&self, f: &WeightFn) -> Terms {
        if let Some(t) = self.monomials.lock().unwrap().get(f) {
            return t.clone();
        }
        let t = self.compute(f);
        self.monomials.lock().unwrap().insert(f.clone(), t.clone());
        t
    }

    fn compute(&self, f: &WeightFn) -> Terms {
        let shape = f.shape();
        if !f.is_antidominant() {
            // bar(M_f) = bar(M_{f s_i}) H_i^{-1} at a descent.
            let i = shape
                .generators()
                .find(|&i| f.hecke_cmp(i).unwrap() == std::cmp::Ordering::Greater)
                .expect("non-antidominant weight has a descent");
            let lower = self.monomial_terms(&f.act_s(i).unwrap());
            return hecke_inverse_terms(&lower, i).unwrap();
        }
        let Some(a) = f.min_value() else {
            return Terms::from([(f.clone(), Poly::one())]);
        };
        let (m, n) = (shape.m, shape.n);
        let k = f.neg().iter().filter(|&&x| x == a).count();
        let l = f.pos().iter().filter(|&&x| x == a).count();
        if k == m && l == n {
            return self.constant_block(m, n, a);
        }
        // Split off the block of minimal entries, which sits innermost.
        let outer = WeightFn::new(&f.neg()[..m - k], &f.pos()[l..]);
        let outer_bar = self.monomial_terms(&outer);
        let inner_bar = self.constant_block(k, l, a);
        let mut out = Terms::new();
        for (g, x) in &outer_bar {
            for (h, y) in &inner_bar {
                let mut neg = g.neg().to_vec();
                neg.extend_from_slice(h.neg());
                let mut pos = h.pos().to_vec();
                pos.extend_from_slice(g.pos());
                add_into(&mut out, WeightFn::new(&neg, &pos), &(x * y));
            }
        }
        out
    }

    /// `π_{≤d}` of the bar image of `w_a^{⊗k} ⊗ v_a^{⊗l}`.
    fn constant_block(&self, k: usize, l: usize, a: i64) -> Terms {
        let room = self.bound - a;
        let key = (k, l, room);
        let cached = self.constant_blocks.lock().unwrap().get(&key).cloned();
        let base = match cached {
            Some(t) => t,
            None => {
                let t = constant_block_at_zero(k, l, room);
                self.constant_blocks.lock().unwrap().insert(key, t.clone());
                t
            }
        };
        base.into_iter().map(|(g, c)| (g.shifted(a), c)).collect()
    }
}

/// The partition sum for `w_0^{⊗m} ⊗ v_0^{⊗n}`, keeping values `≤ room`.
fn constant_block_at_zero(m: usize, n: usize, room: i64) -> Terms {
    let mut out = Terms::new();
    if room < 0 {
        return out;
    }
    for lam in Partition::bounded(m.min(n), room as u32) {
        let p = lam.p_coeff();
        // a_λ(i) = λ_{|i|}.
        let neg: Vec<i64> = (1..=m).rev().map(|k| lam.part(k) as i64).collect();
        let pos: Vec<i64> = (1..=n).map(|k| lam.part(k) as i64).collect();
        let negs: Vec<(Vec<i64>, usize)> = distinct_arrangements(&neg)
            .into_iter()
            .map(|v| {
                let c = pair_inversions(&v, false);
                (v, c)
            })
            .collect();
        let poss: Vec<(Vec<i64>, usize)> = distinct_arrangements(&pos)
            .into_iter()
            .map(|v| {
                let c = pair_inversions(&v, true);
                (v, c)
            })
            .collect();
        for (a, ia) in &negs {
            for (b, ib) in &poss {
                add_into(&mut out, WeightFn::new(a, b), &p.shift((ia + ib) as i32));
            }
        }
    }
    out
}

/// One-shot bar involution.
pub fn bar_involution(v: &TensorVector) -> Result<TensorVector> {
    BarInvolution::new(v.bound).apply(v)
}

/// `σ`: antilinear, `M_f -> M_{-f}`, into `T_{≤e}`.
pub fn sigma_map(v: &TensorVector, e: i64) -> Result<TensorVector> {
    let mut out = TensorVector::zero(v.shape, e);
    for (f, c) in &v.terms {
        out.add_term(f.neg_involution(), &c.bar())?;
    }
    Ok(out)
}

/// `(u, v)`, with the monomials orthonormal.
pub fn form_t(u: &TensorVector, v: &TensorVector) -> Poly {
    let mut s = Poly::zero();
    for (f, c) in &u.terms {
        if let Some(x) = v.terms.get(f) {
            s += c * x;
        }
    }
    s
}

/// `<u, v> = Σ_f (u, M_f) bar((M_{-f}, bar v))`, with `bar v` already
/// computed by the caller.
pub fn form_angle_t_barred(u: &TensorVector, v_bar: &TensorVector) -> Poly {
    let mut s = Poly::zero();
    for (f, c) in &u.terms {
        if let Some(x) = v_bar.terms.get(&f.neg_involution()) {
            s += c * &x.bar();
        }
    }
    s
}

/// `<u, v>`; only pairs inside the truncation of `v` contribute.
pub fn form_angle_t(u: &TensorVector, v: &TensorVector) -> Result<Poly> {
    Ok(form_angle_t_barred(u, &bar_involution(v)?))
}

/// `K_f = M_{f w0} H_0 = Σ_h (-q)^{-dist(h)} M_h` over rearrangements of `f`.
pub fn k_basis(f: &WeightFn, d: i64) -> Result<TensorVector> {
    if !f.is_dominant() {
        return Err(Error::Domain(format!("{} is not dominant", f)));
    }
    let mut v = TensorVector::zero(f.shape(), d);
    for x in SymElem::all(f.shape()) {
        let h = f.act(&x);
        v.add_term(h.clone(), &neg_q_pow(-(dominant_distance(&h) as i32)))?;
    }
    Ok(v)
}

/// `v H_0` through the closed form on monomials.
pub fn h0_act(v: &TensorVector) -> Result<TensorVector> {
    let mut out = TensorVector::zero(v.shape, v.bound);
    let mut cache: HashMap<WeightFn, TensorVector> = HashMap::new();
    for (f, c) in &v.terms {
        if !f.has_dominant_conjugate() {
            continue;
        }
        let (g, x) = f.antidominant_conjugate();
        let dom = g.times_w0();
        if !cache.contains_key(&dom) {
            cache.insert(dom.clone(), k_basis(&dom, v.bound)?);
        }
        let coeff = c * &neg_q_pow(x.length() as i32);
        out = out.add(&cache[&dom].scale(&coeff));
    }
    Ok(out)
}

/// Coefficients `(v, K_f)` of an element of `T H_0`: the monomial
/// coefficients at dominant keys.
pub fn k_coefficients(v: &TensorVector) -> Terms {
    v.terms.iter().filter(|(f, _)| f.is_dominant()).map(|(f, c)| (f.clone(), c.clone())).collect()
}
