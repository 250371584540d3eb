//! Multiplicities, characters, blocks and Ext series for finite
//! dimensional `gl(m|n)`-modules of integral highest weight.
//!
//! Everything is computed on shifted weights `f_λ` and converted at the
//! boundary.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;

use crate::exterior::{
    bijection_l, bijection_r, binary_thetas, closed_l_value, closed_l_value_capped, closed_u_poly, theta_lower, Variant,
};
use crate::laurent::Poly;
use crate::weights::{GlWeight, InfWeight, WeightFn};
use crate::{Error, Result};

fn shifted_dominant(lambda: &GlWeight) -> Result<WeightFn> {
    let f = lambda.rho_shift();
    if !f.is_dominant() {
        return Err(Error::Domain(format!("{} is not dominant", lambda)));
    }
    Ok(f)
}

fn to_int(c: num_bigint::BigInt) -> Result<i64> {
    c.to_i64().ok_or_else(|| Error::Consistency("coefficient overflows i64".into()))
}

/// The tuple `(k_1, ..., k_r)` of minimal shifts for `f = f_λ`.
///
/// A prefix `(k_1, ..., k_s)` extends to an admissible tuple iff all its
/// `2^s` shifts are conjugate to dominant weights (later pairs can be sent
/// arbitrarily far away), so the lexicographic minimum is found greedily.
pub fn kac_row_shifts(f: &WeightFn) -> Result<Vec<i64>> {
    if !f.is_dominant() {
        return Err(Error::Domain(format!("{} is not dominant", f)));
    }
    let pairs = f.atypical_pairs();
    let size = (f.shape().m + f.shape().n) as i64;
    let mut ks: Vec<i64> = Vec::with_capacity(pairs.len());
    for s in 0..pairs.len() {
        let cap = 1 + (1i64 << s) * size;
        let k = (1..=cap)
            .find(|&k| {
                ks.push(k);
                let ok =
                    binary_thetas(s + 1).iter().all(|th| shift_weight(f, &pairs, &ks, th).has_dominant_conjugate());
                ks.pop();
                ok
            })
            .ok_or_else(|| Error::Consistency(format!("no admissible k_{} for {}", s + 1, f)))?;
        ks.push(k);
    }
    Ok(ks)
}

fn shift_weight(f: &WeightFn, pairs: &[(i32, i32)], ks: &[i64], theta: &[u32]) -> WeightFn {
    let mut g = f.clone();
    for (s, (&(i, j), &k)) in pairs.iter().zip(ks).enumerate() {
        if theta[s] == 1 {
            g.set(i, g.get(i) - k);
            g.set(j, g.get(j) - k);
        }
    }
    g
}

/// The `2^{#f}` weights `R_θ(f)` labelling the Kac modules that contain `L(λ)`, `θ ∈ {0,1}^r`.
pub fn kac_row_images(f: &WeightFn) -> Result<BTreeSet<WeightFn>> {
    let ks = kac_row_shifts(f)?;
    let pairs = f.atypical_pairs();
    binary_thetas(pairs.len())
        .iter()
        .map(|th| {
            let g = shift_weight(f, &pairs, &ks, th);
            g.dominant_conjugate().ok_or_else(|| Error::Consistency(format!("{} has no dominant conjugate", g)))
        })
        .collect()
}

/// The Kac modules containing `L(λ)`, via `u_{β-w0 μ, β-w0 λ}(1)`:
/// `μ = β - w0 L_θ(β - w0 λ)`.
fn kac_images_via_u(f: &WeightFn) -> Result<BTreeSet<WeightFn>> {
    let b = f.beta_involution();
    binary_thetas(b.atypicality()).iter().map(|th| Ok(theta_lower(&b, th, Variant::Plain)?.beta_involution())).collect()
}

/// `[K(μ) : L(λ)]`, by the shift rule and by the `u`-polynomial route.
pub fn kac_multiplicity(mu: &GlWeight, lambda: &GlWeight) -> Result<u32> {
    let (fm, fl) = (shifted_dominant(mu)?, shifted_dominant(lambda)?);
    let direct = kac_row_images(&fl)?.contains(&fm) as u32;
    let via_u = to_int(closed_u_poly(&fm.beta_involution(), &fl.beta_involution())?.eval_at_one())?;
    if direct as i64 != via_u {
        return Err(Error::Consistency(format!(
            "[K({}):L({})]: shift rule gives {}, u gives {}",
            mu, lambda, direct, via_u
        )));
    }
    Ok(direct)
}

/// The `μ` with `[K(μ) : L(λ)] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompRow {
    pub lambda: GlWeight,
    pub entries: BTreeMap<GlWeight, u32>,
}

/// All Kac modules containing `L(λ)`, checked against the `u` route.
pub fn decomp_row(lambda: &GlWeight) -> Result<DecompRow> {
    let f = shifted_dominant(lambda)?;
    let direct = kac_row_images(&f)?;
    let via_u = kac_images_via_u(&f)?;
    if direct != via_u {
        return Err(Error::Consistency(format!("Kac multiplicities of L({}) disagree between routes", lambda)));
    }
    if direct.len() != 1 << f.atypicality() {
        return Err(Error::Consistency(format!(
            "L({}) lies in {} Kac modules, not 2^{}",
            lambda,
            direct.len(),
            f.atypicality()
        )));
    }
    let entries = direct.iter().map(|g| (GlWeight::rho_unshift(g), 1)).collect();
    Ok(DecompRow { lambda: lambda.clone(), entries })
}

/// `(U(λ) : K(μ)) = u_{μ,λ}(1)`.
pub fn tilting_multiplicity(lambda: &GlWeight, mu: &GlWeight) -> Result<u32> {
    let (fl, fm) = (shifted_dominant(lambda)?, shifted_dominant(mu)?);
    Ok(to_int(closed_u_poly(&fm, &fl)?.eval_at_one())? as u32)
}

/// The Kac flag of `U(λ)`: `μ ↦ u_{μ,λ}(1)`.
pub fn tilting_row(lambda: &GlWeight) -> Result<BTreeMap<GlWeight, u32>> {
    let f = shifted_dominant(lambda)?;
    binary_thetas(f.atypicality())
        .iter()
        .map(|th| Ok((GlWeight::rho_unshift(&theta_lower(&f, th, Variant::Plain)?), 1)))
        .collect()
}

/// The dominant weights sharing `wt(f)` whose atypical values lie in
/// `[lo, hi]`.
pub fn block_members(f: &WeightFn, lo: i64, hi: i64) -> Vec<WeightFn> {
    let shared: BTreeSet<i64> = f.atypical_values().into_iter().collect();
    let core_neg: Vec<i64> = f.neg().iter().copied().filter(|v| !shared.contains(v)).collect();
    let core_pos: Vec<i64> = f.pos().iter().copied().filter(|v| !shared.contains(v)).collect();
    let free: Vec<i64> = (lo..=hi).filter(|v| !core_neg.contains(v) && !core_pos.contains(v)).collect();
    let r = shared.len();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(r);
    fn rec(free: &[i64], r: usize, start: usize, pick: &mut Vec<i64>, core: (&[i64], &[i64]), out: &mut Vec<WeightFn>) {
        if pick.len() == r {
            let mut neg: Vec<i64> = core.0.iter().chain(pick.iter()).copied().collect();
            let mut pos: Vec<i64> = core.1.iter().chain(pick.iter()).copied().collect();
            neg.sort_unstable();
            pos.sort_unstable_by(|a, b| b.cmp(a));
            out.push(WeightFn::new(&neg, &pos));
            return;
        }
        for k in start..free.len() {
            pick.push(free[k]);
            rec(free, r, k + 1, pick, core, out);
            pick.pop();
        }
    }
    rec(&free, r, 0, &mut pick, (&core_neg, &core_pos), &mut out);
    out.sort();
    out
}

/// Largest drop of a pair value in one raising step:
/// at most `m + n + r - 2` values can be blocked.
fn raise_step_bound(f: &WeightFn) -> i64 {
    (f.shape().m + f.shape().n + f.atypicality()) as i64 - 2
}

/// `ch L(λ) = Σ_μ l_{μ,λ}(1) ch K(μ)`, restricted to `μ` whose atypical
/// values are at most `hi`. The sum is infinite for atypical `λ`.
pub fn character_in_kac_basis(lambda: &GlWeight, hi: i64) -> Result<BTreeMap<GlWeight, i64>> {
    let f = shifted_dominant(lambda)?;
    let lo = f.atypical_values().first().copied().unwrap_or(0);
    let mut out = BTreeMap::new();
    for g in block_members(&f, lo, hi) {
        if !g.bruhat_leq(&f) {
            continue;
        }
        let c = to_int(closed_l_value(&g, &f)?.substitute_neg().eval_at_one())?;
        if c != 0 {
            out.insert(GlWeight::rho_unshift(&g), c);
        }
    }
    Ok(out)
}

/// The block of `λ`, i.e. `wt(f_λ)`.
pub fn block_of(lambda: &GlWeight) -> InfWeight {
    lambda.rho_shift().wt()
}

/// The highest weight of `L(λ)^*`: `β - w0 R(λ)`.
pub fn dual_simple_highest_weight(lambda: &GlWeight) -> Result<GlWeight> {
    let f = shifted_dominant(lambda)?;
    Ok(GlWeight::rho_unshift(&bijection_r(&f)?.beta_involution()))
}

/// The `λ` with `P(μ) ≅ U(λ)`, namely `R(μ)`.
pub fn projective_cover_label(mu: &GlWeight) -> Result<GlWeight> {
    Ok(GlWeight::rho_unshift(&bijection_r(&shifted_dominant(mu)?)?))
}

/// The tilting label inverse to [`projective_cover_label`]: `L(λ)`.
pub fn tilting_cosocle_label(lambda: &GlWeight) -> Result<GlWeight> {
    Ok(GlWeight::rho_unshift(&bijection_l(&shifted_dominant(lambda)?)?))
}

/// A Poincaré series `Σ dim Ext^i q^i`, exact below `degree_cap` when
/// that is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSeries {
    pub mu: GlWeight,
    pub lambda: GlWeight,
    pub series: Poly,
    pub degree_cap: Option<u32>,
}

/// `Σ_i dim Ext^i(K(μ), L(λ)) q^i = l_{μ,λ}(-q^{-1})`.
pub fn ext_kac_simple(mu: &GlWeight, lambda: &GlWeight) -> Result<ExtSeries> {
    let (fm, fl) = (shifted_dominant(mu)?, shifted_dominant(lambda)?);
    Ok(ExtSeries { mu: mu.clone(), lambda: lambda.clone(), series: closed_l_value(&fm, &fl)?, degree_cap: None })
}

/// `Σ_i dim Ext^i(L(μ), L(λ)) q^i = Σ_ν l_{ν,μ}(-q^{-1}) l_{ν,λ}(-q^{-1})`,
/// truncated to degrees `≤ cap`.
///
/// A term of degree `≤ cap` needs `|θ| ≤ cap` raising steps from `ν` to
/// `μ`, each lowering one pair value by at most `m + n + r - 2`, which
/// bounds the values of `ν`.
pub fn ext_simple_simple(mu: &GlWeight, lambda: &GlWeight, cap: u32) -> Result<ExtSeries> {
    let (fm, fl) = (shifted_dominant(mu)?, shifted_dominant(lambda)?);
    let mut series = Poly::zero();
    if fm.wt() == fl.wt() {
        let lo = fm.atypical_values().first().copied().unwrap_or(0);
        let hi =
            fm.max_value().unwrap_or(0).min(fl.max_value().unwrap_or(0)) + cap as i64 * raise_step_bound(&fm).max(1);
        for nu in block_members(&fm, lo, hi) {
            if !(nu.bruhat_leq(&fm) && nu.bruhat_leq(&fl)) {
                continue;
            }
            let a = closed_l_value_capped(&nu, &fm, cap)?;
            if a.is_zero() {
                continue;
            }
            let b = closed_l_value_capped(&nu, &fl, cap)?;
            series += &(&a * &b);
        }
    }
    Ok(ExtSeries {
        mu: mu.clone(),
        lambda: lambda.clone(),
        series: series.truncate_above(cap as i32),
        degree_cap: Some(cap),
    })
}

/// `Π_{k=1..r} (1 - q^{2k})^{-1}` up to degree `cap`.
pub fn partition_series(r: usize, cap: u32) -> Poly {
    let cap = cap as usize;
    let mut c = vec![0i64; cap + 1];
    c[0] = 1;
    for k in 1..=r {
        let step = 2 * k;
        for d in step..=cap {
            c[d] += c[d - step];
        }
    }
    Poly::from_terms(c.into_iter().enumerate().map(|(d, x)| (d as i32, x.into())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(s: &str) -> GlWeight {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_module_ext() {
        for (m, n) in [(1, 1), (2, 2), (2, 3)] {
            let zero = GlWeight::zero(crate::Shape::new(m, n));
            let e = ext_simple_simple(&zero, &zero, 12).unwrap();
            assert_eq!(e.series, partition_series(m.min(n), 12), "{}|{}", m, n);
        }
    }

    #[test]
    fn one_one_rows() {
        let zero = gl("X:(0|0)");
        let row = decomp_row(&zero).unwrap();
        assert_eq!(row.entries.len(), 2);
        assert_eq!(kac_multiplicity(&zero, &zero).unwrap(), 1);
        let ch = character_in_kac_basis(&zero, 5).unwrap();
        assert_eq!(ch.len(), 7);
        assert!(ch.values().all(|c| c.abs() == 1));
    }

    #[test]
    fn tilting_example() {
        let f: WeightFn = "(0,1,3,4|2,1,0)".parse().unwrap();
        let lambda = GlWeight::rho_unshift(&f);
        let row = tilting_row(&lambda).unwrap();
        assert_eq!(row.len(), 4);
        for mu in row.keys() {
            assert_eq!(tilting_multiplicity(&lambda, mu).unwrap(), 1);
        }
    }
}
