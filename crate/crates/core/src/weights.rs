//! Weight functions on `I(m|n)`, the symmetric group `S_m x S_n` acting on
//! them, the Bruhat ordering and the rho-shift to gl(m|n) weights.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n }
    }

    pub fn len(&self) -> usize {
        self.m + self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of index `i` in the value vector.
    pub fn pos(&self, i: i32) -> usize {
        debug_assert!(self.contains(i));
        if i < 0 {
            (self.m as i32 + i) as usize
        } else {
            self.m + i as usize - 1
        }
    }

    /// Index in `I(m|n)` stored at position `p`.
    pub fn index(&self, p: usize) -> i32 {
        if p < self.m {
            p as i32 - self.m as i32
        } else {
            (p - self.m) as i32 + 1
        }
    }

    pub fn contains(&self, i: i32) -> bool {
        (i < 0 && -i <= self.m as i32) || (i > 0 && i <= self.n as i32)
    }

    /// `I(m|n)` in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = i32> {
        let m = self.m as i32;
        let n = self.n as i32;
        (-m..0).chain(1..=n)
    }

    /// Indices of the basic transpositions `s_i`, i.e. `I(m-1|n-1)`.
    pub fn generators(&self) -> impl Iterator<Item = i32> {
        let m = self.m.saturating_sub(1) as i32;
        let n = self.n.saturating_sub(1) as i32;
        (-m..0).chain(1..=n)
    }

    /// The positions swapped by `s_i`.
    pub fn generator_positions(&self, i: i32) -> Result<(usize, usize)> {
        let ok = if i < 0 { -i < self.m as i32 } else { i > 0 && i < self.n as i32 };
        if !ok {
            return Err(Error::Domain(format!("s_{} is not a generator for shape {}", i, self)));
        }
        Ok(if i < 0 { (self.pos(i - 1), self.pos(i)) } else { (self.pos(i), self.pos(i + 1)) })
    }

    pub fn sgn_at(&self, p: usize) -> i64 {
        if p < self.m {
            -1
        } else {
            1
        }
    }

    /// Length of the longest element `w0`.
    pub fn w0_length(&self) -> usize {
        self.m * self.m.saturating_sub(1) / 2 + self.n * self.n.saturating_sub(1) / 2
    }

    pub fn flipped(&self) -> Shape {
        Shape::new(self.n, self.m)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}|{}", self.m, self.n)
    }
}

/// An element of `Z^{m|n}`: values `f(-m), ..., f(-1)` then `f(1), ..., f(n)`.
///
/// The derived order is lexicographic on `(neg, pos)` and is only used for
/// deterministic iteration.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightFn {
    shape: Shape,
    vals: Vec<i64>,
}

impl WeightFn {
    pub fn new(neg: &[i64], pos: &[i64]) -> Self {
        let mut vals = neg.to_vec();
        vals.extend_from_slice(pos);
        Self { shape: Shape::new(neg.len(), pos.len()), vals }
    }

    pub fn from_values(shape: Shape, vals: Vec<i64>) -> Result<Self> {
        if vals.len() != shape.len() {
            return Err(Error::Domain(format!("{} values for shape {}", vals.len(), shape)));
        }
        Ok(Self { shape, vals })
    }

    pub fn constant(shape: Shape, a: i64) -> Self {
        Self { shape, vals: vec![a; shape.len()] }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn values(&self) -> &[i64] {
        &self.vals
    }

    pub fn neg(&self) -> &[i64] {
        &self.vals[..self.shape.m]
    }

    pub fn pos(&self) -> &[i64] {
        &self.vals[self.shape.m..]
    }

    /// `f(i)` for `i` in `I(m|n)`.
    pub fn get(&self, i: i32) -> i64 {
        self.vals[self.shape.pos(i)]
    }

    pub fn set(&mut self, i: i32, v: i64) {
        let p = self.shape.pos(i);
        self.vals[p] = v;
    }

    pub fn at(&self, p: usize) -> i64 {
        self.vals[p]
    }

    pub fn max_value(&self) -> Option<i64> {
        self.vals.iter().copied().max()
    }

    pub fn min_value(&self) -> Option<i64> {
        self.vals.iter().copied().min()
    }

    /// `f + k d_i`, where `d_i = sgn(i) delta_i`.
    pub fn add_d(&self, i: i32, k: i64) -> Self {
        let mut g = self.clone();
        let p = self.shape.pos(i);
        g.vals[p] += k * self.shape.sgn_at(p);
        g
    }

    /// Adds `c` to every value.
    pub fn shifted(&self, c: i64) -> Self {
        Self { shape: self.shape, vals: self.vals.iter().map(|v| v + c).collect() }
    }

    pub fn wt(&self) -> InfWeight {
        let mut w = InfWeight::default();
        for (p, &v) in self.vals.iter().enumerate() {
            w.add(v, self.shape.sgn_at(p));
        }
        w
    }

    /// Number of matched values between the two blocks.
    pub fn atypicality(&self) -> usize {
        let total: i64 = self.wt().0.values().map(|c| c.abs()).sum();
        ((self.shape.len() as i64 - total) / 2) as usize
    }

    pub fn is_typical(&self) -> bool {
        self.neg().iter().all(|v| !self.pos().contains(v))
    }

    /// `#(f, a, j) = sum over i >= j with f(i) <= a of sgn(i)`.
    pub fn hash_count(&self, a: i64, j: i32) -> i64 {
        (self.shape.pos(j)..self.shape.len()).filter(|&p| self.vals[p] <= a).map(|p| self.shape.sgn_at(p)).sum()
    }

    /// `self ⪯ f` in the Bruhat ordering.
    pub fn bruhat_leq(&self, f: &WeightFn) -> bool {
        if self.shape != f.shape || self.wt() != f.wt() {
            return false;
        }
        let len = self.shape.len();
        let mut levels: Vec<i64> = self.vals.iter().chain(f.vals.iter()).copied().collect();
        levels.sort_unstable();
        levels.dedup();
        for a in levels {
            let (mut sg, mut sf) = (0i64, 0i64);
            for p in (0..len).rev() {
                let s = self.shape.sgn_at(p);
                if self.vals[p] <= a {
                    sg += s;
                }
                if f.vals[p] <= a {
                    sf += s;
                }
                if sg > sf {
                    return false;
                }
            }
        }
        true
    }

    pub fn bruhat_lt(&self, f: &WeightFn) -> bool {
        self != f && self.bruhat_leq(f)
    }

    /// All `g` with `f ↓ g`.
    pub fn downarrow_successors(&self) -> Vec<WeightFn> {
        let (m, len) = (self.shape.m, self.shape.len());
        let mut out = Vec::new();
        for i in 0..m {
            for j in m..len {
                if self.vals[i] == self.vals[j] {
                    let mut g = self.clone();
                    g.vals[i] += 1;
                    g.vals[j] += 1;
                    out.push(g);
                }
            }
        }
        for i in m..len {
            for j in i + 1..len {
                if self.vals[i] > self.vals[j] {
                    out.push(self.swapped(i, j));
                }
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if self.vals[i] < self.vals[j] {
                    out.push(self.swapped(i, j));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn swapped(&self, p: usize, q: usize) -> WeightFn {
        let mut g = self.clone();
        g.vals.swap(p, q);
        g
    }

    /// Right action `(f.x)(i) = f(x(i))`.
    pub fn act(&self, x: &SymElem) -> WeightFn {
        assert_eq!(self.shape, x.shape, "shape mismatch");
        Self { shape: self.shape, vals: x.perm.iter().map(|&p| self.vals[p]).collect() }
    }

    /// `f . s_i`.
    pub fn act_s(&self, i: i32) -> Result<WeightFn> {
        let (p, q) = self.shape.generator_positions(i)?;
        Ok(self.swapped(p, q))
    }

    /// Compares `f` with `f . s_i`: `Less` when `f ≺ f.s_i`, `Greater` when
    /// `f.s_i ≺ f`, `Equal` when they coincide.
    pub fn hecke_cmp(&self, i: i32) -> Result<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        let (p, q) = self.shape.generator_positions(i)?;
        let (a, b) = (self.vals[p], self.vals[q]);
        Ok(if a == b {
            Equal
        } else if i > 0 {
            if a > b {
                Greater
            } else {
                Less
            }
        } else if a < b {
            Greater
        } else {
            Less
        })
    }

    /// `f . w0`: each block reversed.
    pub fn times_w0(&self) -> WeightFn {
        let mut g = self.clone();
        g.vals[..self.shape.m].reverse();
        g.vals[self.shape.m..].reverse();
        g
    }

    pub fn is_antidominant(&self) -> bool {
        self.neg().windows(2).all(|w| w[0] >= w[1]) && self.pos().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_dominant(&self) -> bool {
        self.neg().windows(2).all(|w| w[0] < w[1]) && self.pos().windows(2).all(|w| w[0] > w[1])
    }

    /// No value repeats inside a block.
    pub fn has_dominant_conjugate(&self) -> bool {
        let mut a = self.neg().to_vec();
        let mut b = self.pos().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.windows(2).all(|w| w[0] != w[1]) && b.windows(2).all(|w| w[0] != w[1])
    }

    /// The antidominant conjugate together with the minimal `x` such that
    /// `f.x` is antidominant.
    pub fn antidominant_conjugate(&self) -> (WeightFn, SymElem) {
        let m = self.shape.m;
        let mut perm: Vec<usize> = (0..self.shape.len()).collect();
        perm[..m].sort_by(|&a, &b| self.vals[b].cmp(&self.vals[a]));
        perm[m..].sort_by(|&a, &b| self.vals[a].cmp(&self.vals[b]));
        let x = SymElem { shape: self.shape, perm };
        (self.act(&x), x)
    }

    /// The conjugate with strictly increasing negative block and strictly
    /// decreasing positive block, if one exists.
    pub fn dominant_conjugate(&self) -> Option<WeightFn> {
        let mut neg = self.neg().to_vec();
        let mut pos = self.pos().to_vec();
        neg.sort_unstable();
        pos.sort_unstable_by(|a, b| b.cmp(a));
        let g = WeightFn::new(&neg, &pos);
        g.is_dominant().then_some(g)
    }

    /// `ω(f)(i) = f(-i)`, an element of `Z^{n|m}`.
    pub fn omega_flip(&self) -> WeightFn {
        let mut neg = self.pos().to_vec();
        neg.reverse();
        let mut pos = self.neg().to_vec();
        pos.reverse();
        WeightFn::new(&neg, &pos)
    }

    /// `-f`.
    pub fn neg_involution(&self) -> WeightFn {
        Self { shape: self.shape, vals: self.vals.iter().map(|v| -v).collect() }
    }

    /// `-f.w0 - (m+n+1)`, the shifted form of `λ -> β - w0 λ`.
    pub fn beta_involution(&self) -> WeightFn {
        let c = self.shape.len() as i64 + 1;
        self.times_w0().neg_involution().shifted(-c)
    }

    /// Pairs `(i, j)`, `i < 0 < j`, with equal values, ordered outermost
    /// first: `i_1 < ... < i_r < 0 < j_r < ... < j_1`. Requires distinct
    /// values inside each block.
    pub fn atypical_pairs(&self) -> Vec<(i32, i32)> {
        let mut pairs = Vec::new();
        for i in self.shape.indices().filter(|&i| i < 0) {
            let v = self.get(i);
            if let Some(j) = self.shape.indices().find(|&j| j > 0 && self.get(j) == v) {
                pairs.push((i, j));
            }
        }
        pairs
    }

    /// All values occurring in both blocks.
    pub fn atypical_values(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.neg().iter().copied().filter(|x| self.pos().contains(x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for WeightFn {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[i64]| xs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        write!(out, "({}|{})", join(self.neg()), join(self.pos()))
    }
}

impl fmt::Debug for WeightFn {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self)
    }
}

fn parse_tuple(s: &str) -> Result<(Vec<i64>, Vec<i64>)> {
    let bad = || Error::Parse(format!("bad weight literal `{}`", s));
    let t = s.trim();
    let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (a, b) = inner.split_once('|').ok_or_else(bad)?;
    let side = |x: &str| -> Result<Vec<i64>> {
        let x = x.trim();
        if x.is_empty() || x == "-" {
            return Ok(Vec::new());
        }
        x.split(',').map(|v| v.trim().parse::<i64>().map_err(|_| bad())).collect()
    };
    Ok((side(a)?, side(b)?))
}

impl FromStr for WeightFn {
    type Err = Error;

    /// Parses `(a_{-m},...,a_{-1}|b_1,...,b_n)`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with("X:") {
            return Err(Error::Parse(format!("`{}` is a gl(m|n) weight, not a weight function", s)));
        }
        let (neg, pos) = parse_tuple(s)?;
        Ok(WeightFn::new(&neg, &pos))
    }
}

/// An element of `S_m x S_n`, stored as the image of each position.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymElem {
    shape: Shape,
    perm: Vec<usize>,
}

impl SymElem {
    pub fn identity(shape: Shape) -> Self {
        Self { shape, perm: (0..shape.len()).collect() }
    }

    pub fn from_perm(shape: Shape, perm: Vec<usize>) -> Result<Self> {
        let m = shape.m;
        let mut seen = vec![false; shape.len()];
        let ok = perm.len() == shape.len()
            && perm
                .iter()
                .enumerate()
                .all(|(p, &x)| x < shape.len() && (p < m) == (x < m) && !std::mem::replace(&mut seen[x], true));
        if !ok {
            return Err(Error::Domain(format!("{:?} is not an element of S_{}", perm, shape)));
        }
        Ok(Self { shape, perm })
    }

    pub fn s(shape: Shape, i: i32) -> Result<Self> {
        let (p, q) = shape.generator_positions(i)?;
        let mut x = Self::identity(shape);
        x.perm.swap(p, q);
        Ok(x)
    }

    pub fn w0(shape: Shape) -> Self {
        let m = shape.m;
        let mut perm: Vec<usize> = (0..m).rev().collect();
        perm.extend((m..shape.len()).rev());
        Self { shape, perm }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// `(self * y)(i) = self(y(i))`, so `f.(xy) = (f.x).y`.
    pub fn compose(&self, y: &SymElem) -> SymElem {
        Self { shape: self.shape, perm: y.perm.iter().map(|&p| self.perm[p]).collect() }
    }

    pub fn inverse(&self) -> SymElem {
        let mut perm = vec![0; self.perm.len()];
        for (p, &x) in self.perm.iter().enumerate() {
            perm[x] = p;
        }
        Self { shape: self.shape, perm }
    }

    /// Coxeter length: inversions inside each block.
    pub fn length(&self) -> usize {
        let m = self.shape.m;
        let inv = |xs: &[usize]| {
            let mut c = 0;
            for a in 0..xs.len() {
                for b in a + 1..xs.len() {
                    if xs[a] > xs[b] {
                        c += 1;
                    }
                }
            }
            c
        };
        inv(&self.perm[..m]) + inv(&self.perm[m..])
    }

    /// A reduced word `[i_1, ..., i_k]` with `x = s_{i_1} ... s_{i_k}`.
    pub fn reduced_word(&self) -> Vec<i32> {
        let mut perm = self.perm.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in self.shape.generators() {
                let (p, q) = self.shape.generator_positions(i).unwrap();
                if perm[p] > perm[q] {
                    perm.swap(p, q);
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(p, &x)| p == x)
    }

    /// Every element of `S_m x S_n`; meant for small brute-force checks.
    pub fn all(shape: Shape) -> Vec<SymElem> {
        fn perms(items: Vec<usize>) -> Vec<Vec<usize>> {
            if items.len() <= 1 {
                return vec![items];
            }
            let mut out = Vec::new();
            for k in 0..items.len() {
                let mut rest = items.clone();
                let head = rest.remove(k);
                for mut tail in perms(rest) {
                    tail.insert(0, head);
                    out.push(tail);
                }
            }
            out
        }
        let m = shape.m;
        let mut out = Vec::new();
        for a in perms((0..m).collect()) {
            for b in perms((m..shape.len()).collect()) {
                let mut perm = a.clone();
                perm.extend(b);
                out.push(SymElem { shape, perm });
            }
        }
        out
    }
}

/// A finitely supported element of the weight lattice `P` of gl(∞).
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfWeight(pub BTreeMap<i64, i64>);

impl InfWeight {
    pub fn add(&mut self, a: i64, c: i64) {
        let e = self.0.entry(a).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&a);
        }
    }

    /// `(self, ε_a)`.
    pub fn coeff(&self, a: i64) -> i64 {
        self.0.get(&a).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for InfWeight {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(out, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(a, c)| match c {
                1 => format!("e{}", a),
                -1 => format!("-e{}", a),
                _ => format!("{}*e{}", c, a),
            })
            .collect();
        write!(out, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for InfWeight {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self)
    }
}

/// A weight `λ = Σ λ_i δ_i` of gl(m|n), coefficients indexed by `I(m|n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlWeight {
    shape: Shape,
    coeffs: Vec<i64>,
}

impl GlWeight {
    pub fn new(neg: &[i64], pos: &[i64]) -> Self {
        let mut coeffs = neg.to_vec();
        coeffs.extend_from_slice(pos);
        Self { shape: Shape::new(neg.len(), pos.len()), coeffs }
    }

    pub fn zero(shape: Shape) -> Self {
        Self { shape, coeffs: vec![0; shape.len()] }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `f_λ(i) = (λ + ρ | δ_i)` with `ρ = -Σ i δ_i` and `(δ_i|δ_i) = sgn(i)`.
    pub fn rho_shift(&self) -> WeightFn {
        let vals = (0..self.shape.len())
            .map(|p| {
                let i = self.shape.index(p) as i64;
                self.shape.sgn_at(p) * self.coeffs[p] - i.abs()
            })
            .collect();
        WeightFn { shape: self.shape, vals }
    }

    /// Inverse of [`GlWeight::rho_shift`].
    pub fn rho_unshift(f: &WeightFn) -> GlWeight {
        let shape = f.shape();
        let coeffs = (0..shape.len())
            .map(|p| {
                let i = shape.index(p) as i64;
                shape.sgn_at(p) * (f.at(p) + i.abs())
            })
            .collect();
        GlWeight { shape, coeffs }
    }

    pub fn is_dominant(&self) -> bool {
        self.rho_shift().is_dominant()
    }
}

impl fmt::Display for GlWeight {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[i64]| xs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let m = self.shape.m;
        write!(out, "X:({}|{})", join(&self.coeffs[..m]), join(&self.coeffs[m..]))
    }
}

impl fmt::Debug for GlWeight {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self)
    }
}

impl FromStr for GlWeight {
    type Err = Error;

    /// Parses `X:(λ_{-m},...,λ_{-1}|λ_1,...,λ_n)`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("X:")
            .ok_or_else(|| Error::Parse(format!("gl(m|n) weight `{}` lacks the `X:` prefix", s)))?;
        let (neg, pos) = parse_tuple(body)?;
        Ok(GlWeight::new(&neg, &pos))
    }
}

/// Either literal form, converted to shifted coordinates.
pub fn parse_any_weight(s: &str) -> Result<WeightFn> {
    if s.trim_start().starts_with("X:") {
        Ok(s.parse::<GlWeight>()?.rho_shift())
    } else {
        s.parse()
    }
}

/// All functions with values in `[lo, hi]`, in lexicographic order.
pub fn box_weights(shape: Shape, lo: i64, hi: i64) -> Vec<WeightFn> {
    let len = shape.len();
    let mut out = Vec::new();
    if hi < lo {
        return out;
    }
    let mut vals = vec![lo; len];
    loop {
        out.push(WeightFn { shape, vals: vals.clone() });
        let mut p = len;
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            if vals[p] < hi {
                vals[p] += 1;
                for v in vals.iter_mut().skip(p + 1) {
                    *v = lo;
                }
                break;
            }
        }
    }
}

/// Dominant functions with values in `[lo, hi]`.
pub fn dominant_box(shape: Shape, lo: i64, hi: i64) -> Vec<WeightFn> {
    box_weights(shape, lo, hi).into_iter().filter(|f| f.is_dominant()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeightFn {
        s.parse().unwrap()
    }

    #[test]
    fn literals_round_trip() {
        for s in ["(0,4,1|0,2,3)", "(|1,2)", "(3,1|)", "(-2,-1|-1,-2,-3)"] {
            assert_eq!(w(s).to_string(), s);
        }
        assert!("(1,2".parse::<WeightFn>().is_err());
        assert!("(1,x|2)".parse::<WeightFn>().is_err());
        let g: GlWeight = "X:(0,0|0,0)".parse().unwrap();
        assert_eq!(g.to_string(), "X:(0,0|0,0)");
    }

    #[test]
    fn weight_and_atypicality() {
        assert!(w("(1,2|2,1)").wt().is_zero());
        let wt = w("(0,4,1|0,2,3)").wt();
        assert_eq!(wt.coeff(0), 0);
        assert_eq!(wt.coeff(1), -1);
        assert_eq!(wt.coeff(2), 1);
        assert_eq!(wt.coeff(3), 1);
        assert_eq!(wt.coeff(4), -1);
        assert_eq!(w("(0,1,3,4|2,1,0)").atypicality(), 2);
        for (m, n) in [(1, 1), (2, 3), (3, 2), (4, 4)] {
            let f = GlWeight::zero(Shape::new(m, n)).rho_shift();
            assert_eq!(f.atypicality(), m.min(n));
        }
    }

    #[test]
    fn hash_counts() {
        let f = w("(1,2|1,2)");
        assert_eq!(f.hash_count(1, 1), 1);
        assert_eq!(f.hash_count(1, -2), 0);
    }

    #[test]
    fn moves_chain() {
        let chain = ["(1,2|2,1)", "(1,2|1,2)", "(1,3|1,3)", "(3,1|1,3)"];
        for k in 0..3 {
            assert!(w(chain[k]).downarrow_successors().contains(&w(chain[k + 1])));
        }
        assert!(w("(3,1|1,3)").bruhat_leq(&w("(1,2|2,1)")));
        assert!(!w("(1,2|2,1)").bruhat_leq(&w("(3,1|1,3)")));
    }

    #[test]
    fn conjugates() {
        let (a, x) = w("(1,2|)").antidominant_conjugate();
        assert_eq!(a, w("(2,1|)"));
        assert_eq!(x, SymElem::s(Shape::new(2, 0), -1).unwrap());
        let (a, x) = w("(1,3,2|)").antidominant_conjugate();
        assert_eq!(a, w("(3,2,1|)"));
        assert_eq!(x.length(), 2);
        assert_eq!(w("(3,1,2|)").dominant_conjugate(), Some(w("(1,2,3|)")));
        assert_eq!(w("(1,1|)").dominant_conjugate(), None);
        assert_eq!(w("(2,1|)").act_s(-1).unwrap(), w("(1,2|)"));
    }

    #[test]
    fn rho_shift_examples() {
        let z = GlWeight::zero(Shape::new(3, 2));
        assert_eq!(z.rho_shift(), w("(-3,-2,-1|-1,-2)"));
        let l = GlWeight::new(&[3, 1, 0], &[2, -1]);
        assert_eq!(GlWeight::rho_unshift(&l.rho_shift()), l);
        assert!(l.is_dominant());
    }

    #[test]
    fn involutions() {
        let f = w("(0,4,1|0,2,3)");
        assert_eq!(f.neg_involution().neg_involution(), f);
        assert_eq!(f.beta_involution().beta_involution(), f);
        assert_eq!(f.omega_flip().omega_flip(), f);
        assert_eq!(w("(5|7)").omega_flip(), w("(7|5)"));
        for g in dominant_box(Shape::new(2, 2), 0, 4) {
            assert!(g.beta_involution().is_dominant());
        }
    }

    #[test]
    fn reduced_words() {
        let shape = Shape::new(3, 3);
        for x in SymElem::all(shape) {
            let word = x.reduced_word();
            assert_eq!(word.len(), x.length());
            let y = word.iter().fold(SymElem::identity(shape), |acc, &i| acc.compose(&SymElem::s(shape, i).unwrap()));
            assert_eq!(y, x);
        }
    }
}
