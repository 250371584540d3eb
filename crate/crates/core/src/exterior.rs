//! The exterior space `E = T H_0` in its `K`-basis, crystal operators,
//! Procedures A and B, the lowering/raising operators and the closed
//! formulas for `u` and `l`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use crate::laurent::Poly;
use crate::tensor::{chevalley_act, neg_q_pow, Generator, TensorVector};
use crate::weights::WeightFn;
use crate::{Error, Result, Shape};

/// An element of `E^{m|n}` written in the basis `K_f`, `f` dominant.
#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorVector {
    shape: Shape,
    terms: BTreeMap<WeightFn, Poly>,
}

impl ExteriorVector {
    pub fn zero(shape: Shape) -> Self {
        Self { shape, terms: BTreeMap::new() }
    }

    pub fn k(f: &WeightFn) -> Result<Self> {
        let mut v = Self::zero(f.shape());
        v.add_term(f.clone(), &Poly::one())?;
        Ok(v)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn terms(&self) -> &BTreeMap<WeightFn, Poly> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, f: &WeightFn) -> Poly {
        self.terms.get(f).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, f: WeightFn, c: &Poly) -> Result<()> {
        if !f.is_dominant() || f.shape() != self.shape {
            return Err(Error::Domain(format!("{} is not a dominant weight of shape {}", f, self.shape)));
        }
        if c.is_zero() {
            return Ok(());
        }
        let e = self.terms.entry(f.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&f);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (f, c) in &other.terms {
            out.add_term(f.clone(), c).unwrap();
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero(self.shape);
        for (f, x) in &self.terms {
            out.add_term(f.clone(), &(x * c)).unwrap();
        }
        out
    }

    /// Reads off `K`-coefficients of an element of `T H_0`.
    pub fn from_tensor(v: &TensorVector) -> Self {
        let terms = crate::tensor::k_coefficients(v);
        Self { shape: v.shape(), terms }
    }
}

impl fmt::Display for ExteriorVector {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(f, c)| format!("({})*K{}", c, f)).collect();
        write!(out, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ExteriorVector {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self)
    }
}

/// `M_g H_0` in the `K`-basis: `(-q)^{ℓ(x)} K_{g x w0}` or zero.
fn monomial_h0(g: &WeightFn) -> Option<(WeightFn, Poly)> {
    if !g.has_dominant_conjugate() {
        return None;
    }
    let (anti, x) = g.antidominant_conjugate();
    Some((anti.times_w0(), neg_q_pow(x.length() as i32)))
}

/// `X v` for a Chevalley generator: `X K_f = (X M_{f w0}) H_0`.
pub fn ext_act(v: &ExteriorVector, g: Generator) -> Result<ExteriorVector> {
    let a = match g {
        Generator::E(a) | Generator::F(a) | Generator::K(a) | Generator::KInv(a) => a,
    };
    let mut out = ExteriorVector::zero(v.shape);
    for (f, c) in &v.terms {
        let bound = f.max_value().unwrap_or(a).max(a + 1);
        let lifted = chevalley_act(&TensorVector::monomial(&f.times_w0(), bound)?, g)?;
        for (h, x) in lifted.terms() {
            if let Some((k, s)) = monomial_h0(h) {
                out.add_term(k, &(&(x * &s) * c))?;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    shape: Shape,
    signs: Vec<Sign>,
}

impl Signature {
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Cancels `+-` pairs (`dual = false`) or `-+` pairs (`dual = true`),
    /// ignoring zeros in between.
    fn reduce(&self, dual: bool) -> Signature {
        let (open, close) = if dual { (Sign::Minus, Sign::Plus) } else { (Sign::Plus, Sign::Minus) };
        let mut signs = self.signs.clone();
        let mut stack = Vec::new();
        for p in 0..signs.len() {
            if signs[p] == open {
                stack.push(p);
            } else if signs[p] == close {
                if let Some(o) = stack.pop() {
                    signs[o] = Sign::Zero;
                    signs[p] = Sign::Zero;
                }
            }
        }
        Signature { shape: self.shape, signs }
    }

    pub fn reduced(&self) -> Signature {
        self.reduce(false)
    }

    pub fn dual_reduced(&self) -> Signature {
        self.reduce(true)
    }

    pub fn count(&self, s: Sign) -> usize {
        self.signs.iter().filter(|&&x| x == s).count()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |s: &Sign| match s {
            Sign::Plus => "+",
            Sign::Minus => "-",
            Sign::Zero => "0",
        };
        let neg: Vec<&str> = self.signs[..self.shape.m].iter().map(c).collect();
        let pos: Vec<&str> = self.signs[self.shape.m..].iter().map(c).collect();
        write!(out, "({}|{})", neg.join(","), pos.join(","))
    }
}

/// The `a`-signature of `f`.
pub fn a_signature(f: &WeightFn, a: i64) -> Signature {
    let shape = f.shape();
    let signs = (0..shape.len())
        .map(|p| {
            let v = f.at(p);
            let neg = p < shape.m;
            if (!neg && v == a) || (neg && v == a + 1) {
                Sign::Plus
            } else if (!neg && v == a + 1) || (neg && v == a) {
                Sign::Minus
            } else {
                Sign::Zero
            }
        })
        .collect();
    Signature { shape, signs }
}

/// Crystal data at one colour: `(Ẽ f, F̃ f, ε, φ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalData {
    pub e: Option<WeightFn>,
    pub f: Option<WeightFn>,
    pub eps: usize,
    pub phi: usize,
}

/// Kashiwara's tensor product rule on `Z^{m|n}`.
pub fn crystal_tensor(f: &WeightFn, a: i64) -> CrystalData {
    let red = a_signature(f, a).reduced();
    let shape = f.shape();
    let minus = red.signs.iter().rposition(|&s| s == Sign::Minus);
    let plus = red.signs.iter().position(|&s| s == Sign::Plus);
    CrystalData {
        e: minus.map(|p| f.add_d(shape.index(p), -1)),
        f: plus.map(|p| f.add_d(shape.index(p), 1)),
        eps: red.count(Sign::Minus),
        phi: red.count(Sign::Plus),
    }
}

/// The dual crystal on `Z^{m|n}`: cancel `-+`, act at the leftmost `-` and
/// rightmost `+`.
pub fn crystal_dual(f: &WeightFn, a: i64) -> CrystalData {
    let red = a_signature(f, a).dual_reduced();
    let shape = f.shape();
    let minus = red.signs.iter().position(|&s| s == Sign::Minus);
    let plus = red.signs.iter().rposition(|&s| s == Sign::Plus);
    CrystalData {
        e: minus.map(|p| f.add_d(shape.index(p), -1)),
        f: plus.map(|p| f.add_d(shape.index(p), 1)),
        eps: red.count(Sign::Minus),
        phi: red.count(Sign::Plus),
    }
}

/// The crystal of `E^{m|n}` on dominant weights, conjugated through `w0`.
pub fn crystal_dominant(f: &WeightFn, a: i64) -> CrystalData {
    let c = crystal_tensor(&f.times_w0(), a);
    CrystalData { e: c.e.map(|g| g.times_w0()), f: c.f.map(|g| g.times_w0()), eps: c.eps, phi: c.phi }
}

fn apply_crystal(g: Generator, data: CrystalData) -> Option<WeightFn> {
    match g {
        Generator::E(_) => data.e,
        Generator::F(_) => data.f,
        _ => None,
    }
}

fn generator_index(g: Generator) -> i64 {
    match g {
        Generator::E(a) | Generator::F(a) | Generator::K(a) | Generator::KInv(a) => a,
    }
}

/// `X̃_a(f)` on dominant weights.
pub fn dominant_op(g: Generator, f: &WeightFn) -> Option<WeightFn> {
    apply_crystal(g, crystal_dominant(f, generator_index(g)))
}

/// `X̃*_a(f)`, restricted to dominant weights.
pub fn dual_op(g: Generator, f: &WeightFn) -> Option<WeightFn> {
    apply_crystal(g, crystal_dual(f, generator_index(g)))
}

/// One step of Procedure A or B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcedureStep {
    pub h: WeightFn,
    pub x: Generator,
    pub y: Generator,
}

impl ProcedureStep {
    /// `#h = #f - 1`: the string through `f` has length two.
    pub fn lowers_atypicality(&self, f: &WeightFn) -> bool {
        self.h.atypicality() + 1 == f.atypicality()
    }
}

fn find_pos(f: &WeightFn, v: i64) -> Option<i32> {
    f.shape().indices().filter(|&j| j > 0).find(|&j| f.get(j) == v)
}

fn find_neg(f: &WeightFn, v: i64) -> Option<i32> {
    f.shape().indices().filter(|&i| i < 0).find(|&i| f.get(i) == v)
}

fn check_atypical_dominant(f: &WeightFn) -> Result<()> {
    if !f.is_dominant() {
        return Err(Error::Domain(format!("{} is not dominant", f)));
    }
    if f.is_typical() {
        return Err(Error::Domain(format!("{} is typical", f)));
    }
    Ok(())
}

/// Procedure A: `U_f = X_a U_h`.
pub fn procedure_a(f: &WeightFn) -> Result<ProcedureStep> {
    check_atypical_dominant(f)?;
    let m = f.shape().m as i32;
    let n = f.shape().n as i32;
    let mut i = (-m..0).rev().find(|&i| find_pos(f, f.get(i)).is_some()).unwrap();
    loop {
        while i < -1 && f.get(i + 1) == f.get(i) + 1 {
            i += 1;
        }
        let Some(mut j) = find_pos(f, f.get(i) + 1) else {
            let a = f.get(i);
            return Ok(ProcedureStep { h: f.add_d(i, -1), x: Generator::F(a), y: Generator::E(a) });
        };
        while j > 1 && f.get(j - 1) == f.get(j) + 1 {
            j -= 1;
        }
        match find_neg(f, f.get(j) + 1) {
            Some(k) => i = k,
            None => {
                let a = f.get(j);
                debug_assert!(j <= n);
                return Ok(ProcedureStep { h: f.add_d(j, 1), x: Generator::E(a), y: Generator::F(a) });
            }
        }
    }
}

/// Procedure B, Procedure A twisted by `f -> -f w0`.
pub fn procedure_b(g: &WeightFn) -> Result<ProcedureStep> {
    check_atypical_dominant(g)?;
    let m = g.shape().m as i32;
    let n = g.shape().n as i32;
    let mut i = (-m..0).find(|&i| find_pos(g, g.get(i)).is_some()).unwrap();
    loop {
        while i > -m && g.get(i - 1) == g.get(i) - 1 {
            i -= 1;
        }
        let Some(mut j) = find_pos(g, g.get(i) - 1) else {
            let h = g.add_d(i, 1);
            let a = h.get(i);
            return Ok(ProcedureStep { h, x: Generator::E(a), y: Generator::F(a) });
        };
        while j < n && g.get(j + 1) == g.get(j) - 1 {
            j += 1;
        }
        match find_neg(g, g.get(j) - 1) {
            Some(k) => i = k,
            None => {
                let h = g.add_d(j, -1);
                let a = h.get(j);
                return Ok(ProcedureStep { h, x: Generator::F(a), y: Generator::E(a) });
            }
        }
    }
}

/// Iterates Procedure A down to a typical weight. Returns the generators
/// in the order they act (innermost first) and the typical endpoint.
pub fn procedure_a_word(f: &WeightFn) -> Result<(Vec<Generator>, WeightFn)> {
    let mut word = Vec::new();
    let mut cur = f.clone();
    while !cur.is_typical() {
        let step = procedure_a(&cur)?;
        word.push(step.x);
        cur = step.h;
    }
    word.reverse();
    Ok((word, cur))
}

/// `U_f` by Procedure A and the exterior generator action.
pub fn u_basis(f: &WeightFn) -> Result<ExteriorVector> {
    if !f.is_dominant() {
        return Err(Error::Domain(format!("{} is not dominant", f)));
    }
    let (word, start) = procedure_a_word(f)?;
    let mut v = ExteriorVector::k(&start)?;
    for g in word {
        v = ext_act(&v, g)?;
    }
    Ok(v)
}

/// `U_f` through `π_{≤d}(T_{f w0}) H_0`, with `d = max + #f + 1` unless
/// given.
pub fn u_basis_via_tensor(canon: &crate::canonical::Canonical, f: &WeightFn, d: Option<i64>) -> Result<ExteriorVector> {
    if !f.is_dominant() {
        return Err(Error::Domain(format!("{} is not dominant", f)));
    }
    let d = d.unwrap_or(f.max_value().unwrap_or(0) + f.atypicality() as i64 + 1);
    let t = canon.t_basis(&f.times_w0(), d)?;
    Ok(ExteriorVector::from_tensor(&crate::tensor::h0_act(&t)?))
}

fn pair_shift(h: &WeightFn, i: i32, j: i32, c: i64) -> WeightFn {
    let mut g = h.clone();
    g.set(i, h.get(i) + c);
    g.set(j, h.get(j) + c);
    g
}

fn shift_cap(h: &WeightFn) -> i64 {
    let (lo, hi) = (h.min_value().unwrap_or(0), h.max_value().unwrap_or(0));
    (hi - lo) + 4 * (h.shape().len() as i64 + 1) * (h.shape().len() as i64 + 1)
}

fn check_pair(h: &WeightFn, i: i32, j: i32) -> Result<()> {
    let shape = h.shape();
    if !(i < 0 && j > 0 && shape.contains(i) && shape.contains(j)) || h.get(i) != h.get(j) {
        return Err(Error::Domain(format!("({}, {}) is not a matched pair of {}", i, j, h)));
    }
    Ok(())
}

/// `L_{i,j}(h)`: raise `h(i) = h(j)` by the least `a > 0` keeping `h` and
/// the lowered inner pairs conjugate to dominant weights.
pub fn lowering(h: &WeightFn, i: i32, j: i32) -> Result<WeightFn> {
    check_pair(h, i, j)?;
    let inner: Vec<WeightFn> = h
        .shape()
        .indices()
        .filter(|&k| k > i && k < 0)
        .flat_map(|k| h.shape().indices().filter(move |&l| l > 0 && l < j).map(move |l| (k, l)))
        .filter(|&(k, l)| h.get(k) == h.get(l))
        .map(|(k, l)| lowering(h, k, l))
        .collect::<Result<_>>()?;
    for a in 1..=shift_cap(h) {
        let cand = pair_shift(h, i, j, a);
        if cand.has_dominant_conjugate() && inner.iter().all(|g| pair_shift(g, i, j, a).has_dominant_conjugate()) {
            return Ok(cand);
        }
    }
    Err(Error::Consistency(format!("no lowering shift found for ({}, {}) on {}", i, j, h)))
}

/// `R_{i,j}(h)`: lower `h(i) = h(j)` by the least `b > 0` keeping `h` and
/// the raised outer pairs conjugate to dominant weights.
pub fn raising(h: &WeightFn, i: i32, j: i32) -> Result<WeightFn> {
    check_pair(h, i, j)?;
    let outer: Vec<WeightFn> = h
        .shape()
        .indices()
        .filter(|&k| k < i)
        .flat_map(|k| h.shape().indices().filter(move |&l| l > j).map(move |l| (k, l)))
        .filter(|&(k, l)| h.get(k) == h.get(l))
        .map(|(k, l)| raising(h, k, l))
        .collect::<Result<_>>()?;
    for b in 1..=shift_cap(h) {
        let cand = pair_shift(h, i, j, -b);
        if cand.has_dominant_conjugate() && outer.iter().all(|g| pair_shift(g, i, j, -b).has_dominant_conjugate()) {
            return Ok(cand);
        }
    }
    Err(Error::Consistency(format!("no raising shift found for ({}, {}) on {}", i, j, h)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `L_θ` / `R_θ`.
    Plain,
    /// `L'_θ` / `R'_θ`.
    Primed,
}

fn pairs_checked(f: &WeightFn, theta: &[u32]) -> Result<Vec<(i32, i32)>> {
    if !f.is_dominant() {
        return Err(Error::Domain(format!("{} is not dominant", f)));
    }
    let pairs = f.atypical_pairs();
    if pairs.len() != theta.len() {
        return Err(Error::Domain(format!("θ has length {} but #{} = {}", theta.len(), f, pairs.len())));
    }
    Ok(pairs)
}

fn compose(
    f: &WeightFn,
    theta: &[u32],
    pairs: &[(i32, i32)],
    order: impl Iterator<Item = usize>,
    op: fn(&WeightFn, i32, i32) -> Result<WeightFn>,
) -> Result<WeightFn> {
    let mut g = f.clone();
    for s in order {
        let (i, j) = pairs[s];
        for _ in 0..theta[s] {
            g = op(&g, i, j)?;
        }
    }
    g.dominant_conjugate().ok_or_else(|| Error::Consistency(format!("{} has no dominant conjugate", g)))
}

/// `L_θ(f)` (pair 1 first) or `L'_θ(f)` (pair r first).
pub fn theta_lower(f: &WeightFn, theta: &[u32], variant: Variant) -> Result<WeightFn> {
    let pairs = pairs_checked(f, theta)?;
    let r = pairs.len();
    match variant {
        Variant::Plain => compose(f, theta, &pairs, 0..r, lowering),
        Variant::Primed => compose(f, theta, &pairs, (0..r).rev(), lowering),
    }
}

/// `R_θ(f)` (pair r first) or `R'_θ(f)` (pair 1 first).
pub fn theta_raise(f: &WeightFn, theta: &[u32], variant: Variant) -> Result<WeightFn> {
    let pairs = pairs_checked(f, theta)?;
    let r = pairs.len();
    match variant {
        Variant::Plain => compose(f, theta, &pairs, (0..r).rev(), raising),
        Variant::Primed => compose(f, theta, &pairs, 0..r, raising),
    }
}

/// All of `{0,1}^r`.
pub fn binary_thetas(r: usize) -> Vec<Vec<u32>> {
    (0..1u32 << r).map(|mask| (0..r).map(|s| (mask >> s) & 1).collect()).collect()
}

/// The bijection `L = L_{(1,...,1)}`.
pub fn bijection_l(f: &WeightFn) -> Result<WeightFn> {
    theta_lower(f, &vec![1; f.atypicality()], Variant::Plain)
}

/// The bijection `R = R_{(1,...,1)}`, inverse to `L`.
pub fn bijection_r(f: &WeightFn) -> Result<WeightFn> {
    theta_raise(f, &vec![1; f.atypicality()], Variant::Plain)
}

/// `U_f = Σ_{θ ∈ {0,1}^r} q^{|θ|} K_{L_θ(f)}`.
pub fn closed_u_vector(f: &WeightFn) -> Result<ExteriorVector> {
    let mut v = ExteriorVector::zero(f.shape());
    for theta in binary_thetas(f.atypicality()) {
        let g = theta_lower(f, &theta, Variant::Plain)?;
        v.add_term(g, &Poly::q_pow(theta.iter().sum::<u32>() as i32))?;
    }
    Ok(v)
}

/// `u_{g,f}(q)` from the closed formula.
pub fn closed_u_poly(g: &WeightFn, f: &WeightFn) -> Result<Poly> {
    Ok(closed_u_vector(f)?.coeff(g))
}

/// Enumerates `θ ∈ N^{#g}` with `R'_θ(g) = f`, calling `visit(|θ|)`;
/// stops descending once `|θ|` exceeds `cap`.
fn raise_search(g: &WeightFn, f: &WeightFn, cap: Option<u32>, visit: &mut dyn FnMut(u32)) -> Result<()> {
    if !g.is_dominant() || !f.is_dominant() {
        return Err(Error::Domain(format!("{} and {} must be dominant", g, f)));
    }
    if g.wt() != f.wt() {
        return Ok(());
    }
    let pairs = g.atypical_pairs();
    let targets = f.atypical_values();
    let Some(&floor) = targets.first() else {
        if g == f {
            visit(0);
        }
        return Ok(());
    };
    #[allow(clippy::too_many_arguments)]
    fn rec(
        cur: &WeightFn,
        s: usize,
        total: u32,
        pairs: &[(i32, i32)],
        targets: &[i64],
        floor: i64,
        f: &WeightFn,
        cap: Option<u32>,
        visit: &mut dyn FnMut(u32),
    ) -> Result<()> {
        if s == pairs.len() {
            if cur.dominant_conjugate().as_ref() == Some(f) {
                visit(total);
            }
            return Ok(());
        }
        let (i, j) = pairs[s];
        let mut h = cur.clone();
        let mut k = 0;
        loop {
            if cap.is_some_and(|c| total + k > c) || h.get(i) < floor {
                return Ok(());
            }
            if targets.contains(&h.get(i)) {
                rec(&h, s + 1, total + k, pairs, targets, floor, f, cap, visit)?;
            }
            h = raising(&h, i, j)?;
            k += 1;
        }
    }
    rec(g, 0, 0, &pairs, &targets, floor, f, cap, visit)
}

/// `Σ_θ q^{|θ|}` over `θ` with `R'_θ(g) = f`, i.e. `l_{g,f}(-q^{-1})`.
pub fn closed_l_value(g: &WeightFn, f: &WeightFn) -> Result<Poly> {
    let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
    raise_search(g, f, None, &mut |k| *counts.entry(k).or_default() += 1)?;
    Ok(Poly::from_terms(counts.into_iter().map(|(k, c)| (k as i32, c.into()))))
}

/// As [`closed_l_value`], keeping only `|θ| ≤ cap`.
pub fn closed_l_value_capped(g: &WeightFn, f: &WeightFn, cap: u32) -> Result<Poly> {
    let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
    raise_search(g, f, Some(cap), &mut |k| *counts.entry(k).or_default() += 1)?;
    Ok(Poly::from_terms(counts.into_iter().map(|(k, c)| (k as i32, c.into()))))
}

/// `l_{g,f}(q)` from the closed formula.
pub fn closed_l_poly(g: &WeightFn, f: &WeightFn) -> Result<Poly> {
    Ok(closed_l_value(g, f)?.substitute_neg_inv())
}

/// The recursion on `l_{g,f}(-q^{-1})` driven by Procedure B, memoized.
#[derive(Default)]
pub struct LRecursion {
    memo: Mutex<HashMap<(WeightFn, WeightFn), Poly>>,
}

impl LRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    /// `l_{g,f}(-q^{-1})`.
    pub fn value(&self, g: &WeightFn, f: &WeightFn) -> Result<Poly> {
        if !g.is_dominant() || !f.is_dominant() {
            return Err(Error::Domain(format!("{} and {} must be dominant", g, f)));
        }
        if g.is_typical() {
            return Ok(if g == f { Poly::one() } else { Poly::zero() });
        }
        if !g.bruhat_leq(f) {
            return Ok(Poly::zero());
        }
        let key = (g.clone(), f.clone());
        if let Some(p) = self.memo.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let step = procedure_b(g)?;
        let mut p = match dual_op(step.y, f) {
            Some(fy) => self.value(&step.h, &fy)?,
            None => Poly::zero(),
        };
        if step.lowers_atypicality(g) {
            let xh = dominant_op(step.x, &step.h)
                .ok_or_else(|| Error::Consistency(format!("{} kills {} in Procedure B", step.x, step.h)))?;
            p += &self.value(&xh, f)?.shift(1);
        }
        self.memo.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    /// `l_{g,f}(q)`.
    pub fn l_poly(&self, g: &WeightFn, f: &WeightFn) -> Result<Poly> {
        Ok(self.value(g, f)?.substitute_neg_inv())
    }
}

/// `l_{g,f}(q)` by the recursion, with a fresh memo.
pub fn l_poly_recursive(g: &WeightFn, f: &WeightFn) -> Result<Poly> {
    LRecursion::new().l_poly(g, f)
}

/// `θ(g, f)` for dominant `g ⪯ f`: move pair `s` of `g` to the value of
/// pair `s` of `f`, counting the `R` steps.
pub fn theta_of(g: &WeightFn, f: &WeightFn) -> Result<Vec<u32>> {
    if !g.is_dominant() || !f.is_dominant() || !g.bruhat_leq(f) {
        return Err(Error::Domain(format!("θ({}, {}) needs dominant {} ⪯ {}", g, f, g, f)));
    }
    let gp = g.atypical_pairs();
    let fp = f.atypical_pairs();
    let mut cur = g.clone();
    let mut theta = Vec::with_capacity(gp.len());
    for (s, &(i, j)) in gp.iter().enumerate() {
        let target = f.get(fp[s].0);
        let mut k = 0;
        while cur.get(i) > target {
            cur = raising(&cur, i, j)?;
            k += 1;
        }
        if cur.get(i) != target {
            return Err(Error::Consistency(format!(
                "pair {} of {} overshoots {} on the way to {}",
                s + 1,
                g,
                target,
                f
            )));
        }
        theta.push(k);
    }
    if cur.dominant_conjugate().as_ref() != Some(f) {
        return Err(Error::Consistency(format!("θ({}, {}) does not reach {}", g, f, f)));
    }
    Ok(theta)
}

/// `ℓ(g, f)`, the length of `f` relative to `g`, for dominant weights of
/// the same `wt`; incomparable pairs go through a common lower bound
/// `L^k(g)` or `L^k(f)`.
pub fn rel_length(g: &WeightFn, f: &WeightFn) -> Result<i64> {
    let abs = |a: &WeightFn, b: &WeightFn| -> Result<i64> { Ok(theta_of(a, b)?.iter().map(|&x| x as i64).sum()) };
    if g.wt() != f.wt() {
        return Err(Error::Domain(format!("{} and {} have different weights", g, f)));
    }
    if g.bruhat_leq(f) {
        return abs(g, f);
    }
    if f.bruhat_leq(g) {
        return Ok(-abs(f, g)?);
    }
    let (mut a, mut b) = (g.clone(), f.clone());
    for _ in 0..64 {
        a = bijection_l(&a)?;
        b = bijection_l(&b)?;
        for h in [&a, &b] {
            if h.bruhat_leq(g) && h.bruhat_leq(f) {
                return Ok(abs(h, f)? - abs(h, g)?);
            }
        }
    }
    Err(Error::Consistency(format!("no common lower bound found for {} and {}", g, f)))
}

/// Failures of the crystal isomorphism `L` on a set of dominant weights,
/// over colours `a` in `colours`.
pub fn crystal_iso_check(fs: &[WeightFn], colours: std::ops::RangeInclusive<i64>) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for f in fs {
        let lf = bijection_l(f)?;
        if f.is_typical() && &lf != f {
            bad.push(format!("L({}) = {} moves a typical weight", f, lf));
        }
        if lf.wt() != f.wt() {
            bad.push(format!("L({}) = {} changes the weight", f, lf));
        }
        if &bijection_r(&lf)? != f {
            bad.push(format!("R(L({})) != {}", f, f));
        }
        for a in colours.clone() {
            let c = crystal_dominant(f, a);
            let d = crystal_dual(&lf, a);
            let le = c.e.as_ref().map(bijection_l).transpose()?;
            let lfw = c.f.as_ref().map(bijection_l).transpose()?;
            if le != d.e {
                bad.push(format!("E*_{} L({}) = {:?} but L(E_{} {}) = {:?}", a, f, d.e, a, f, le));
            }
            if lfw != d.f {
                bad.push(format!("F*_{} L({}) = {:?} but L(F_{} {}) = {:?}", a, f, d.f, a, f, lfw));
            }
        }
    }
    Ok(bad)
}

/// Which crystal structure to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrystalKind {
    /// `Ẽ'`, `F̃'` on all of `Z^{m|n}`.
    Tensor,
    /// `Ẽ*`, `F̃*` on all of `Z^{m|n}`.
    Dual,
    /// `Ẽ`, `F̃` on dominant weights.
    Exterior,
}

/// Edges `f -> F̃_a f` with both ends in `fs`, sorted.
pub fn crystal_edges(
    fs: &[WeightFn],
    colours: std::ops::RangeInclusive<i64>,
    kind: CrystalKind,
) -> Vec<(WeightFn, i64, WeightFn)> {
    let nodes: std::collections::BTreeSet<&WeightFn> = fs.iter().collect();
    let mut edges = Vec::new();
    for &f in &nodes {
        for a in colours.clone() {
            let data = match kind {
                CrystalKind::Tensor => crystal_tensor(f, a),
                CrystalKind::Dual => crystal_dual(f, a),
                CrystalKind::Exterior => crystal_dominant(f, a),
            };
            if let Some(g) = data.f {
                if nodes.contains(&g) {
                    edges.push((f.clone(), a, g));
                }
            }
        }
    }
    edges
}

/// The crystal graph on `fs` in DOT syntax.
pub fn crystal_dot(fs: &[WeightFn], colours: std::ops::RangeInclusive<i64>, kind: CrystalKind) -> String {
    let nodes: std::collections::BTreeSet<&WeightFn> = fs.iter().collect();
    let mut out = String::from("digraph crystal {\n");
    for f in &nodes {
        out.push_str(&format!("  \"{}\";\n", f));
    }
    for (f, a, g) in crystal_edges(fs, colours, kind) {
        out.push_str(&format!("  \"{}\" -> \"{}\" [label=\"a={}\"];\n", f, g, a));
    }
    out.push_str("}\n");
    out
}
