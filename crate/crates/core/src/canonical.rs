//! Canonical bases `T_f^{(d)}` and dual canonical bases `L_f^{(d)}` of the
//! truncated tensor space.
//!
//! Three routes are provided: a brute-force solver of the bar-invariance
//! equations (the oracle), the parabolic KL recursion for typical weights,
//! and the bumping algorithm with corrections for atypical ones. The dual
//! basis also has a second route through the inversion identity
//! `M_f = Σ_g t_{-f,-g}(q^{-1}) L_g`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::laurent::Poly;
use crate::tensor::{divided_power_act, hecke_act, BarInvolution, Generator, TensorVector};
use crate::weights::{Shape, WeightFn};
use crate::{Error, Result};

/// `Σ_{a in [lo, hi], j} #(f, a, j)`; strictly increasing along `≺` as long
/// as `[lo, hi]` covers the values involved.
pub fn order_potential(f: &WeightFn, lo: i64, hi: i64) -> i64 {
    let shape = f.shape();
    let mut s = 0;
    for a in lo..=hi {
        let mut run = 0;
        for p in (0..shape.len()).rev() {
            if f.at(p) <= a {
                run += shape.sgn_at(p);
            }
            s += run;
        }
    }
    s
}

/// All `g ⪯ f` with entries `≤ d`.
pub fn lower_ideal(f: &WeightFn, d: i64) -> Vec<WeightFn> {
    let mut seen: BTreeSet<WeightFn> = BTreeSet::new();
    let mut stack = vec![f.clone()];
    seen.insert(f.clone());
    while let Some(g) = stack.pop() {
        for h in g.downarrow_successors() {
            if h.max_value().is_some_and(|x| x <= d) && seen.insert(h.clone()) {
                stack.push(h);
            }
        }
    }
    seen.into_iter().collect()
}

/// The unique bar-invariant lift of `p` modulo `qZ[q]`.
pub fn bar_invariant_lift(p: &Poly) -> Poly {
    let neg = p.negative_part();
    let c0 = Poly::constant(p.constant_term());
    c0 + neg.clone() + neg.bar()
}

fn in_qzq(p: &Poly) -> bool {
    p.min_degree().is_none_or(|k| k >= 1)
}

fn in_qinv_zqinv(p: &Poly) -> bool {
    p.max_degree().is_none_or(|k| k <= -1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    T,
    L,
    U,
}

impl fmt::Display for Family {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::T => "t",
            Family::L => "l",
            Family::U => "u",
        };
        write!(out, "{}", s)
    }
}

/// Sparse table of coefficients `(g, f) -> p_{g,f}(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionTable {
    pub shape: Shape,
    pub bound: i64,
    pub family: Family,
    pub entries: BTreeMap<(WeightFn, WeightFn), Poly>,
}

impl TransitionTable {
    pub fn new(shape: Shape, bound: i64, family: Family) -> Self {
        Self { shape, bound, family, entries: BTreeMap::new() }
    }

    /// Inserts the column of `f` from its expansion.
    pub fn insert_column(&mut self, f: &WeightFn, terms: &BTreeMap<WeightFn, Poly>) {
        for (g, c) in terms {
            if !c.is_zero() {
                self.entries.insert((g.clone(), f.clone()), c.clone());
            }
        }
    }

    pub fn get(&self, g: &WeightFn, f: &WeightFn) -> Poly {
        self.entries.get(&(g.clone(), f.clone())).cloned().unwrap_or_default()
    }

    pub fn columns(&self) -> BTreeSet<WeightFn> {
        self.entries.keys().map(|(_, f)| f.clone()).collect()
    }

    pub fn column(&self, f: &WeightFn) -> BTreeMap<WeightFn, Poly> {
        self.entries.iter().filter(|((_, h), _)| h == f).map(|((g, _), c)| (g.clone(), c.clone())).collect()
    }

    /// Diagonal ones, support in `{g ⪯ f}` and the right coefficient ring
    /// off the diagonal.
    pub fn check_unitriangular(&self) -> Result<()> {
        for f in self.columns() {
            if !self.get(&f, &f).is_one() {
                return Err(Error::Consistency(format!("{}-table diagonal at {} is not 1", self.family, f)));
            }
        }
        for ((g, f), c) in &self.entries {
            if g == f {
                continue;
            }
            if !g.bruhat_lt(f) {
                return Err(Error::Consistency(format!("{}-entry ({}, {}) outside g ≺ f", self.family, g, f)));
            }
            let ok = match self.family {
                Family::T | Family::U => in_qzq(c),
                Family::L => in_qinv_zqinv(c),
            };
            if !ok {
                return Err(Error::Consistency(format!(
                    "{}-entry ({}, {}) = {} has the wrong degrees",
                    self.family, g, f, c
                )));
            }
        }
        Ok(())
    }
}

/// Which block the bumping procedure starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BumpStart {
    #[default]
    Positive,
    Negative,
    /// Whichever side gives the shorter word.
    Shortest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BumpingPlan {
    pub target: WeightFn,
    pub reduced: WeightFn,
    /// Divided powers in application order: the first letter acts first.
    pub letters: Vec<(Generator, u32)>,
    /// `a_1 < ... < a_{N+1}`.
    pub thresholds: Vec<i64>,
    pub bound: i64,
}

impl BumpingPlan {
    pub fn word_length(&self) -> u32 {
        self.letters.iter().map(|(_, r)| r).sum()
    }

    /// The monomials `X_1, ..., X_N`, each as its letters in application
    /// order.
    pub fn monomials(&self) -> Vec<Vec<(Generator, u32)>> {
        let mut out: Vec<Vec<(Generator, u32)>> = Vec::new();
        let mut last_e: Option<bool> = None;
        for &(g, r) in &self.letters {
            let is_e = matches!(g, Generator::E(_));
            if last_e != Some(is_e) {
                out.push(Vec::new());
                last_e = Some(is_e);
            }
            out.last_mut().unwrap().push((g, r));
        }
        out
    }
}

impl fmt::Display for BumpingPlan {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = self
            .letters
            .iter()
            .rev()
            .map(|(g, r)| if *r == 1 { g.to_string() } else { format!("{}^({})", g, r) })
            .collect();
        write!(out, "{}: {} T^({}){}", self.target, word.join(" "), self.bound, self.reduced)
    }
}

fn bump_from(f: &WeightFn, d: i64, positive_first: bool) -> Result<BumpingPlan> {
    let shape = f.shape();
    let m = shape.m;
    let common = f.atypical_values();
    let Some(&a1) = common.last() else {
        return Err(Error::Domain(format!("{} is typical; nothing to bump", f)));
    };
    let mut labeled = vec![false; shape.len()];
    let mut letters = Vec::new();
    let mut thresholds = vec![a1];
    let mut a = a1;
    let mut positive = positive_first;
    loop {
        // Positive side scans left to right from the leftmost labeled
        // entry; negative side scans right to left from the rightmost.
        let block: Vec<usize> = if positive { (m..shape.len()).collect() } else { (0..m).rev().collect() };
        let mut anchor: Option<usize> = None;
        let mut v = a;
        loop {
            let start = anchor.map_or(0, |k| k + 1);
            let hits: Vec<usize> = (start..block.len()).filter(|&k| f.at(block[k]) == v).collect();
            if hits.is_empty() {
                break;
            }
            for &k in &hits {
                labeled[block[k]] = true;
            }
            anchor = Some(hits[0]);
            let g = if positive { Generator::E(v) } else { Generator::F(v) };
            letters.push((g, hits.len() as u32));
            v += 1;
        }
        a = v;
        thresholds.push(a);
        let other: Vec<i64> = if positive { f.neg().to_vec() } else { f.pos().to_vec() };
        if !other.contains(&a) {
            break;
        }
        positive = !positive;
    }
    let vals: Vec<i64> = (0..shape.len()).map(|p| f.at(p) + labeled[p] as i64).collect();
    let reduced = WeightFn::from_values(shape, vals)?;
    if reduced.atypicality() >= f.atypicality() {
        return Err(Error::Consistency(format!("bumping {} did not lower the atypicality", f)));
    }
    Ok(BumpingPlan { target: f.clone(), reduced, letters, bound: d.max(a), thresholds })
}

/// The bumping procedure for an atypical `f`.
pub fn bumping_plan(f: &WeightFn, d: i64, start: BumpStart) -> Result<BumpingPlan> {
    match start {
        BumpStart::Positive => bump_from(f, d, true),
        BumpStart::Negative => bump_from(f, d, false),
        BumpStart::Shortest => {
            let p = bump_from(f, d, true)?;
            let n = bump_from(f, d, false)?;
            Ok(if n.word_length() < p.word_length() { n } else { p })
        }
    }
}

/// Memoized computation of canonical and dual canonical basis elements.
pub struct Canonical {
    start: BumpStart,
    bars: Mutex<HashMap<i64, Arc<BarInvolution>>>,
    typical: Mutex<HashMap<WeightFn, TensorVector>>,
    t_memo: Mutex<HashMap<(WeightFn, i64), TensorVector>>,
}

impl Default for Canonical {
    fn default() -> Self {
        Self::new(BumpStart::Positive)
    }
}

impl Canonical {
    pub fn new(start: BumpStart) -> Self {
        Self {
            start,
            bars: Mutex::new(HashMap::new()),
            typical: Mutex::new(HashMap::new()),
            t_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn bar(&self, d: i64) -> Arc<BarInvolution> {
        self.bars.lock().unwrap().entry(d).or_insert_with(|| Arc::new(BarInvolution::new(d))).clone()
    }

    fn check_bound(f: &WeightFn, d: i64) -> Result<()> {
        if f.max_value().is_some_and(|x| x > d) {
            return Err(Error::Domain(format!("{} exceeds the bound {}", f, d)));
        }
        Ok(())
    }

    /// `T_f` for typical `f` by the parabolic KL recursion; the support
    /// consists of rearrangements of `f`.
    pub fn kl_typical(&self, f: &WeightFn, d: i64) -> Result<TensorVector> {
        Self::check_bound(f, d)?;
        if !f.is_typical() {
            return Err(Error::Domain(format!("{} is atypical", f)));
        }
        self.kl_typical_inner(f)?.with_bound(d)
    }

    fn kl_typical_inner(&self, f: &WeightFn) -> Result<TensorVector> {
        if let Some(v) = self.typical.lock().unwrap().get(f) {
            return Ok(v.clone());
        }
        let top = f.max_value().unwrap_or(0);
        let shape = f.shape();
        let descent = shape.generators().find(|&i| f.hecke_cmp(i).ok() == Some(std::cmp::Ordering::Greater));
        let v = match descent {
            None => TensorVector::monomial(f, top)?,
            Some(i) => {
                let lower = self.kl_typical_inner(&f.act_s(i)?)?;
                let mut approx = hecke_act(&lower, i)?.add(&lower.scale(&Poly::q_pow(1)));
                let fixes: Vec<(WeightFn, Poly)> = approx
                    .terms()
                    .iter()
                    .filter(|(g, c)| *g != f && !num_traits::Zero::is_zero(&c.constant_term()))
                    .map(|(g, c)| (g.clone(), Poly::constant(c.constant_term())))
                    .collect();
                for (g, c) in fixes {
                    approx = approx.sub(&self.kl_typical_inner(&g)?.scale(&c));
                }
                approx
            }
        };
        self.typical.lock().unwrap().insert(f.clone(), v.clone());
        Ok(v)
    }

    /// `T_f^{(d)}`: KL recursion for typical `f`, bumping with corrections
    /// otherwise.
    pub fn t_basis(&self, f: &WeightFn, d: i64) -> Result<TensorVector> {
        Self::check_bound(f, d)?;
        let key = (f.clone(), d);
        if let Some(v) = self.t_memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = if f.is_typical() { self.kl_typical(f, d)? } else { self.t_bumping(f, d)? };
        self.t_memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn t_bumping(&self, f: &WeightFn, d: i64) -> Result<TensorVector> {
        let plan = bumping_plan(f, d, self.start)?;
        let mut v = self.t_basis(&plan.reduced, plan.bound)?;
        for &(g, r) in &plan.letters {
            v = divided_power_act(&v, g, r)?;
        }
        let mut approx = v.project(d);
        if !approx.coeff(f).is_one() {
            return Err(Error::Consistency(format!(
                "bumping approximation to T_{} has leading coefficient {}",
                f,
                approx.coeff(f)
            )));
        }
        let lo = f.min_value().unwrap_or(0);
        loop {
            let offender = approx
                .terms()
                .iter()
                .filter(|(g, c)| *g != f && !in_qzq(c))
                .max_by_key(|(g, _)| (order_potential(g, lo, d), (*g).clone()))
                .map(|(g, c)| (g.clone(), c.clone()));
            let Some((g, c)) = offender else { break };
            if !g.bruhat_lt(f) {
                return Err(Error::Consistency(format!("correction term {} is not below {}", g, f)));
            }
            let lift = bar_invariant_lift(&c);
            approx = approx.sub(&self.t_basis(&g, d)?.scale(&lift));
        }
        Ok(approx)
    }

    /// Brute-force bar-invariant solve over the ideal below `f`; returns
    /// `(T_f^{(d)}, L_f^{(d)})`.
    pub fn solve_column(&self, f: &WeightFn, d: i64) -> Result<(TensorVector, TensorVector)> {
        Self::check_bound(f, d)?;
        let bar = self.bar(d);
        let t = solve_family(f, d, &bar, Family::T)?;
        let l = solve_family(f, d, &bar, Family::L)?;
        Ok((t, l))
    }

    /// `L_f^{(d)}` from the bar-invariance equations.
    pub fn l_basis(&self, f: &WeightFn, d: i64) -> Result<TensorVector> {
        Self::check_bound(f, d)?;
        solve_family(f, d, &self.bar(d), Family::L)
    }

    /// `L_g^{(d)}` by inverting `A_{k,f} = t_{-k,-f}(q^{-1})` over the ideal
    /// below `g`, with the `t` from [`Canonical::t_basis`].
    pub fn l_basis_by_inversion(&self, g: &WeightFn, d: i64) -> Result<TensorVector> {
        Self::check_bound(g, d)?;
        let lo = g.min_value().unwrap_or(0);
        let mut ideal = lower_ideal(g, d);
        ideal.sort_by_key(|k| std::cmp::Reverse((order_potential(k, lo, d), k.clone())));
        let e = -lo;
        let negs: Vec<TensorVector> =
            ideal.par_iter().map(|f| self.t_basis(&f.neg_involution(), e)).collect::<Result<_>>()?;
        let mut out = TensorVector::zero(g.shape(), d);
        let mut solved: Vec<Poly> = Vec::with_capacity(ideal.len());
        for (fi, f) in ideal.iter().enumerate() {
            let mut b = if f == g { Poly::one() } else { Poly::zero() };
            for (ki, k) in ideal[..fi].iter().enumerate() {
                if solved[ki].is_zero() {
                    continue;
                }
                let a = negs[fi].coeff(&k.neg_involution()).bar();
                b -= &(&solved[ki] * &a);
            }
            out.add_term(f.clone(), &b)?;
            solved.push(b);
        }
        Ok(out)
    }

    /// Columns for every `f` in `fs`, by the requested route.
    pub fn table(&self, fs: &[WeightFn], d: i64, family: Family, route: Route) -> Result<TransitionTable> {
        let shape = fs.first().map(|f| f.shape()).unwrap_or(Shape::new(0, 0));
        let cols: Vec<(WeightFn, TensorVector)> = fs
            .par_iter()
            .map(|f| {
                let v = match (family, route) {
                    (Family::T, Route::Fast) => self.t_basis(f, d)?,
                    (Family::T, Route::Oracle) => solve_family(f, d, &self.bar(d), Family::T)?,
                    (Family::L, Route::Fast) => self.l_basis_by_inversion(f, d)?,
                    (Family::L, Route::Oracle) => self.l_basis(f, d)?,
                    (Family::U, _) => return Err(Error::Domain("u-tables live in the exterior module".into())),
                };
                Ok((f.clone(), v))
            })
            .collect::<Result<_>>()?;
        let mut table = TransitionTable::new(shape, d, family);
        for (f, v) in cols {
            table.insert_column(&f, v.terms());
        }
        Ok(table)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// KL recursion and bumping (t), inversion identity (l).
    Fast,
    /// Brute-force bar-invariance solve.
    Oracle,
}

/// Solves `x_k - bar(x_k) = Σ_{k≺g⪯f} bar(x_g) r_{k,g}` going down the
/// ideal, where `bar(M_g) = Σ_k r_{k,g} M_k`.
fn solve_family(f: &WeightFn, d: i64, bar: &BarInvolution, family: Family) -> Result<TensorVector> {
    let lo = f.min_value().unwrap_or(0);
    let mut queue: BTreeMap<(i64, WeightFn), Poly> = BTreeMap::new();
    queue.insert((order_potential(f, lo, d), f.clone()), Poly::zero());
    let mut out = TensorVector::zero(f.shape(), d);
    while let Some(((_, k), acc)) = queue.pop_last() {
        let x = if &k == f {
            if !acc.is_zero() {
                return Err(Error::Consistency(format!("nonzero equation at the top of {}", f)));
            }
            Poly::one()
        } else {
            if acc.bar() != -acc.clone() {
                return Err(Error::Consistency(format!("equation at {} below {} is not antisymmetric", k, f)));
            }
            match family {
                Family::L => acc.negative_part(),
                _ => acc.positive_part(),
            }
        };
        if x.is_zero() {
            continue;
        }
        let xb = x.bar();
        for (h, r) in bar.monomial(&k)?.terms() {
            if h == &k {
                continue;
            }
            let key = (order_potential(h, lo, d), h.clone());
            let e = queue.entry(key).or_default();
            *e += &(&xb * r);
        }
        out.add_term(k, &x)?;
    }
    Ok(out)
}

/// Pairs whose coefficients break `t ∈ N[q]` or `l ∈ N[-q^{-1}]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PositivityReport {
    pub checked: usize,
    pub violations: Vec<(Family, WeightFn, WeightFn, Poly)>,
}

pub fn t_coefficient_positive(p: &Poly) -> bool {
    p.min_degree().is_none_or(|k| k >= 0) && p.is_nonnegative()
}

pub fn l_coefficient_positive(p: &Poly) -> bool {
    p.max_degree().is_none_or(|k| k <= 0) && p.substitute_neg().is_nonnegative()
}

/// Scans `t` and `l` over `fs` at bound `d`.
pub fn positivity_scan(canon: &Canonical, fs: &[WeightFn], d: i64) -> Result<PositivityReport> {
    let t = canon.table(fs, d, Family::T, Route::Fast)?;
    let l = canon.table(fs, d, Family::L, Route::Oracle)?;
    let mut report = PositivityReport { checked: fs.len(), violations: Vec::new() };
    for ((g, f), c) in &t.entries {
        if !t_coefficient_positive(c) {
            report.violations.push((Family::T, g.clone(), f.clone(), c.clone()));
        }
    }
    for ((g, f), c) in &l.entries {
        if !l_coefficient_positive(c) {
            report.violations.push((Family::L, g.clone(), f.clone(), c.clone()));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> WeightFn {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn bumping_example() {
        let f = w("(0,4,1|0,2,3)");
        let plan = bumping_plan(&f, 4, BumpStart::Positive).unwrap();
        assert_eq!(plan.reduced, w("(0,5,2|1,3,4)"));
        assert_eq!(plan.bound, 5);
        assert_eq!(
            plan.letters,
            vec![
                (Generator::E(0), 1),
                (Generator::F(1), 1),
                (Generator::E(2), 1),
                (Generator::E(3), 1),
                (Generator::F(4), 1)
            ]
        );
        assert_eq!(plan.thresholds, vec![0, 1, 2, 4, 5]);
        assert_eq!(plan.monomials().len(), 4);
        let neg = bumping_plan(&f, 4, BumpStart::Negative).unwrap();
        assert_eq!(neg.reduced, w("(1,4,1|0,2,3)"));
        assert_eq!(neg.letters, vec![(Generator::F(0), 1)]);
        assert_eq!(neg.bound, 4);
        assert_eq!(bumping_plan(&f, 4, BumpStart::Shortest).unwrap(), neg);
        assert!(bumping_plan(&w("(1|2)"), 4, BumpStart::Positive).is_err());
    }

    #[test]
    fn golden_t() {
        let f = w("(0,4,1|0,2,3)");
        let expect = [
            ("(0,4,1|0,2,3)", "1"),
            ("(1,4,0|0,2,3)", "q"),
            ("(4,0,1|0,2,3)", "q"),
            ("(1,4,1|1,2,3)", "q^2"),
            ("(4,1,0|0,2,3)", "q^2"),
            ("(4,1,1|1,2,3)", "q^3"),
        ];
        for start in [BumpStart::Positive, BumpStart::Negative] {
            let t = Canonical::new(start).t_basis(&f, 4).unwrap();
            assert_eq!(t.len(), 6);
            for (g, c) in expect {
                assert_eq!(t.coeff(&w(g)), p(c));
            }
        }
    }

    #[test]
    fn one_one_families() {
        let c = Canonical::default();
        let d = 5;
        let (t, l) = c.solve_column(&w("(1|1)"), d).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.coeff(&w("(2|2)")), p("q"));
        assert_eq!(l.len(), 5);
        assert_eq!(l.coeff(&w("(3|3)")), p("q^-2"));
        assert_eq!(l.coeff(&w("(4|4)")), p("-q^-3"));
        assert_eq!(c.t_basis(&w("(1|1)"), d).unwrap(), t);
        assert_eq!(c.l_basis_by_inversion(&w("(1|1)"), d).unwrap(), l);
        let typ = w("(1|3)");
        assert_eq!(c.t_basis(&typ, d).unwrap(), TensorVector::monomial(&typ, d).unwrap());
    }

    #[test]
    fn lift() {
        assert_eq!(bar_invariant_lift(&p("q^2 + 3*q + 2 - q^-1")), p("-q + 2 - q^-1"));
        assert!(l_coefficient_positive(&p("-q^-1")));
        assert!(l_coefficient_positive(&p("q^-2 + 1")));
        assert!(!l_coefficient_positive(&p("q^-1")));
        assert!(t_coefficient_positive(&p("q + 2*q^3")));
    }
}
