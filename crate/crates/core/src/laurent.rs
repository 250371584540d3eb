//! Laurent polynomials in one variable `q` with exact integer coefficients.
//!
//! The representation is dense: a lowest exponent plus a coefficient vector
//! whose first and last entries are nonzero. The zero polynomial has an
//! empty vector. Every operation renormalizes, so `==` is mathematical
//! equality.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Coefficient ring: any exact signed integer type.
pub trait Coeff: Clone + fmt::Debug + fmt::Display + Hash + Integer + Signed + FromStr + Send + Sync + 'static {}

impl<T> Coeff for T where
    T: Clone + fmt::Debug + fmt::Display + Hash + Integer + Signed + FromStr + Send + Sync + 'static
{
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    low: i32,
    coeffs: Vec<C>,
}

/// Polynomials over arbitrary precision integers; used by every algorithm.
pub type Poly = LaurentPoly<BigInt>;

/// Machine-word coefficients, handy for small independent checks.
pub type SmallPoly = LaurentPoly<i64>;

impl<C: Coeff> LaurentPoly<C> {
    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// `c * q^k`.
    pub fn monomial(c: C, k: i32) -> Self {
        Self::from_dense(k, vec![c])
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(C::one(), k)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from coefficients of `q^low, q^(low+1), ...`.
    pub fn from_dense(low: i32, coeffs: Vec<C>) -> Self {
        let mut p = Self { low, coeffs };
        p.normalize();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(terms: I) -> Self {
        let terms: Vec<(i32, C)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (k, c) in terms {
            let slot = &mut coeffs[(k - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_dense(lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_degree(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, k: i32) -> C {
        let idx = k - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            C::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &C)> + '_ {
        let low = self.low;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (low + i as i32, c))
    }

    fn filter_exponents(&self, keep: impl Fn(i32) -> bool) -> Self {
        Self::from_terms(self.terms().filter(|(k, _)| keep(*k)).map(|(k, c)| (k, c.clone())))
    }

    /// Terms with strictly positive exponent.
    pub fn positive_part(&self) -> Self {
        self.filter_exponents(|k| k > 0)
    }

    /// Terms with strictly negative exponent.
    pub fn negative_part(&self) -> Self {
        self.filter_exponents(|k| k < 0)
    }

    /// Terms of exponent at most `k`.
    pub fn truncate_above(&self, k: i32) -> Self {
        self.filter_exponents(|e| e <= k)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// The ring involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -self.max_degree().unwrap(), coeffs }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Substitutes `q -> -q^-1`.
    pub fn substitute_neg_inv(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| {
            let c = if k.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            (-k, c)
        }))
    }

    /// Substitutes `q -> -q`.
    pub fn substitute_neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| {
            let c = if k.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            (k, c)
        }))
    }

    /// Sum of the coefficients.
    pub fn eval_at_one(&self) -> C {
        self.coeffs.iter().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `q^k`-power `self^e`.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)`, zero for `n = 0`.
    pub fn quantum_int(n: u32) -> Self {
        Self::from_terms((0..n).map(|k| (n as i32 - 1 - 2 * k as i32, C::one())))
    }

    /// `[n]! = [n][n-1]...[1]`.
    pub fn quantum_factorial(n: u32) -> Self {
        (1..=n).fold(Self::one(), |acc, k| &acc * &Self::quantum_int(k))
    }

    /// Exact quotient `self / b`; fails if the division leaves a remainder.
    pub fn exact_div(&self, b: &Self) -> Result<Self, Error> {
        if b.is_zero() {
            return Err(Error::Consistency("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let b_hi = b.max_degree().unwrap();
        let b_lead = b.coeff(b_hi);
        let floor = self.low - b.low;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(hi) = rem.max_degree() {
            let e = hi - b_hi;
            let (c, r) = rem.coeff(hi).div_rem(&b_lead);
            if e < floor || !r.is_zero() {
                return Err(Error::Consistency(format!("{} is not divisible by {}", self, b)));
            }
            rem -= &b.shift(e).scale(&c);
            quot.push((e, c));
        }
        Ok(Self::from_terms(quot))
    }
}

impl<C: Coeff> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl<C: Coeff> One for LaurentPoly<C> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl<C: Coeff> From<i64> for LaurentPoly<C>
where
    C: From<i64>,
{
    fn from(c: i64) -> Self {
        Self::constant(C::from(c))
    }
}

fn add_into<C: Coeff>(a: &mut LaurentPoly<C>, b: &LaurentPoly<C>, negate: bool) {
    if b.is_zero() {
        return;
    }
    if a.is_zero() {
        *a = if negate { -b } else { b.clone() };
        return;
    }
    let lo = a.low.min(b.low);
    let hi = a.max_degree().unwrap().max(b.max_degree().unwrap());
    if lo < a.low {
        let pad = (a.low - lo) as usize;
        let mut v = vec![C::zero(); pad];
        v.append(&mut a.coeffs);
        a.coeffs = v;
        a.low = lo;
    }
    a.coeffs.resize((hi - lo + 1) as usize, C::zero());
    for (k, c) in b.terms() {
        let slot = &mut a.coeffs[(k - lo) as usize];
        *slot = if negate { slot.clone() - c.clone() } else { slot.clone() + c.clone() };
    }
    a.normalize();
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        add_into(self, rhs, false);
    }
}

impl<C: Coeff> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<C>) {
        add_into(self, rhs, true);
    }
}

impl<C: Coeff> AddAssign for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: LaurentPoly<C>) {
        add_into(self, &rhs, false);
    }
}

impl<C: Coeff> SubAssign for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: LaurentPoly<C>) {
        add_into(self, &rhs, true);
    }
}

impl<C: Coeff> Add<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Sub<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(mut self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(mut self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coeff> Mul<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    /// Decreasing exponents, e.g. `q^3 + 2*q + q^-1`; `0` when zero.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        for (n, (k, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(out, "-")?;
                }
            } else if c.is_negative() {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{}", k),
            };
            if var.is_empty() {
                write!(out, "{}", mag)?;
            } else if mag.is_one() {
                write!(out, "{}", var)?;
            } else {
                write!(out, "{}*{}", mag, var)?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self)
    }
}

impl<C: Coeff> FromStr for LaurentPoly<C> {
    type Err = Error;

    /// Parses the textual form produced by `Display` (whitespace-insensitive).
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("bad Laurent polynomial `{}`", s));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                negative = bytes[pos] == b'-';
                pos += 1;
            } else if pos > 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut coeff = if pos > start { text[start..pos].parse::<C>().map_err(|_| bad())? } else { C::one() };
            let mut exp = 0;
            let has_digits = pos > start;
            if has_digits && pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b'q' {
                    return Err(bad());
                }
            }
            if pos < bytes.len() && bytes[pos] == b'q' {
                pos += 1;
                exp = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let es = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    exp = text[es..pos].parse::<i32>().map_err(|_| bad())?;
                }
            } else if !has_digits {
                return Err(bad());
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((exp, coeff));
        }
        Ok(Self::from_terms(terms))
    }
}
