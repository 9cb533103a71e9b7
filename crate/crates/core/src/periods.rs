//! Periods of the residue forms `ω_β` over the vanishing cycles `δ_{β'}`.
//!
//! Everything lives in `Q(ζ_{2d})` times formal powers of `2πi` and formal
//! Gamma values `Γ(a/d)`. Only the reflection formula
//! `Γ(a/d)Γ(1-a/d) = 2πi / (ζ_{2d}^a - ζ_{2d}^{-a})` is applied, which is
//! enough to turn every totally decomposable `ω_β` into a pure cyclotomic
//! number once the `(2πi)^{n/2}` normalisation is divided out.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::characters::FermatContext;
use crate::cyclotomic::{CycloNum, GaloisElement};
use crate::error::{Error, Result};
use crate::fake_cycles::FakeCycleSpec;
use crate::polyring::{monomials_capped, Exponents};

/// Index `β' ∈ {0, …, d-2}^{n+1}` of a vanishing cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VanishingCycleIndex(Vec<u32>);

impl VanishingCycleIndex {
    pub fn new(ctx: &FermatContext, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != ctx.vars() - 1 {
            return Err(Error::InvalidArgument(format!(
                "vanishing cycle index needs {} entries, got {}",
                ctx.vars() - 1,
                entries.len()
            )));
        }
        if entries.iter().any(|&b| b > ctx.d - 2) {
            return Err(Error::InvalidArgument(format!(
                "vanishing cycle entries must lie in 0..={}",
                ctx.d - 2
            )));
        }
        Ok(VanishingCycleIndex(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `(0, β'_1, …, β'_{n+1})`, the form used by the period formula.
    pub fn padded(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.0);
        v
    }
}

/// All `(d-1)^{n+1}` vanishing-cycle indices, by increasing total degree and
/// graded-lex within a degree.
pub fn vanishing_cycles(ctx: &FermatContext) -> Vec<VanishingCycleIndex> {
    let k = ctx.vars() - 1;
    let cap = ctx.d - 2;
    (0..=cap * k as u32)
        .flat_map(|deg| monomials_capped(k, deg, cap))
        .map(VanishingCycleIndex)
        .collect()
}

/// `coeff · Π Γ(a/d)^{mult} · (2πi)^{pi_power}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodValue {
    pub coeff: CycloNum,
    /// Multiplicity of each formal symbol `Γ(a/d)`, keyed by `a`.
    pub gamma_word: BTreeMap<u32, u32>,
    pub pi_power: i32,
}

impl PeriodValue {
    /// The value as a cyclotomic number, if no transcendental part remains.
    pub fn as_cyclo(&self) -> Option<&CycloNum> {
        (self.gamma_word.is_empty() && self.pi_power == 0 || self.coeff.is_zero())
            .then_some(&self.coeff)
    }

    /// Divide by `(2πi)^k`.
    pub fn div_two_pi_i(mut self, k: i32) -> Self {
        self.pi_power -= k;
        self
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `1 / (d^{n+1} (n/2)!)`.
fn period_prefactor(ctx: &FermatContext) -> BigRational {
    let den = BigInt::from(ctx.d).pow(ctx.n + 1) * factorial(ctx.n / 2);
    BigRational::new(BigInt::one(), den)
}

/// `1/(ζ_{2d}^a - ζ_{2d}^{-a})`.
fn reflection_factor(d: u32, a: u32) -> CycloNum {
    let m = 2 * d;
    (&CycloNum::zeta_pow(m, a as i64) - &CycloNum::zeta_pow(m, -(a as i64)))
        .inv()
        .expect("ζ^a ≠ ζ^-a for 0 < a < d")
}

fn check_beta(beta: &[u32], ctx: &FermatContext) -> Result<()> {
    if beta.len() != ctx.vars() {
        return Err(Error::InvalidArgument(format!(
            "exponent vector needs {} entries, got {}",
            ctx.vars(),
            beta.len()
        )));
    }
    if beta.iter().any(|&b| b > ctx.d - 2) {
        return Err(Error::InvalidArgument(format!(
            "exponents must lie in 0..={}, got {beta:?}",
            ctx.d - 2
        )));
    }
    Ok(())
}

/// `Π_i (ζ_d^{a_i(β'_i+1)} - ζ_d^{a_i β'_i})` with `a_i = β_i + 1`, in `Q(ζ_{2d})`.
fn cycle_factor(beta: &[u32], padded: &[u32], d: u32) -> CycloNum {
    let m = 2 * d;
    let mut acc = CycloNum::one(m);
    for (&b, &bp) in beta.iter().zip(padded) {
        let a = (b + 1) as i64;
        let f = &CycloNum::zeta_pow(m, 2 * a * (bp as i64 + 1))
            - &CycloNum::zeta_pow(m, 2 * a * bp as i64);
        acc = &acc * &f;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `∫_{δ_{β'}} ω_β` as an exact [`PeriodValue`], reflection pairs collapsed.
pub fn period_omega_beta(
    beta: &[u32],
    beta_prime: &VanishingCycleIndex,
    ctx: &FermatContext,
) -> Result<PeriodValue> {
    check_beta(beta, ctx)?;
    let total: u32 = beta.iter().sum::<u32>() + ctx.vars() as u32;
    if !total.is_multiple_of(ctx.d) {
        return Err(Error::InvalidArgument(format!(
            "deg x^beta + n + 2 = {total} is not divisible by d = {}",
            ctx.d
        )));
    }
    let d = ctx.d;
    let mut coeff = cycle_factor(beta, &beta_prime.padded(), d).scale(&period_prefactor(ctx));
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &b in beta {
        *counts.entry(b + 1).or_default() += 1;
    }
    let mut pi_power = -1;
    for a in 1..d {
        let b = d - a;
        if a > b {
            break;
        }
        let pairs = if a == b {
            counts.get(&a).copied().unwrap_or(0) / 2
        } else {
            counts
                .get(&a)
                .copied()
                .unwrap_or(0)
                .min(counts.get(&b).copied().unwrap_or(0))
        };
        if pairs == 0 {
            continue;
        }
        let f = reflection_factor(d, a);
        for _ in 0..pairs {
            coeff = &coeff * &f;
        }
        pi_power += pairs as i32;
        for key in [a, b] {
            let left = counts[&key] - if a == b { 2 * pairs } else { pairs };
            if left == 0 {
                counts.remove(&key);
            } else {
                counts.insert(key, left);
            }
            if a == b {
                break;
            }
        }
    }
    Ok(PeriodValue {
        coeff,
        gamma_word: counts,
        pi_power,
    })
}

/// Whether consecutive coordinate pairs satisfy `β_{2j} + β_{2j+1} = d - 2`.
pub fn is_paired_decomposable(beta: &[u32], d: u32) -> bool {
    beta.len().is_multiple_of(2) && beta.chunks(2).all(|p| p[0] + p[1] == d - 2)
}

/// `C_β = Π_j 1/(ζ_{2d}^{a_{2j}} - ζ_{2d}^{-a_{2j}})` for paired-decomposable `β`.
pub fn c_beta(beta: &[u32], ctx: &FermatContext) -> Result<CycloNum> {
    check_beta(beta, ctx)?;
    if !is_paired_decomposable(beta, ctx.d) {
        return Err(Error::NotTotallyDecomposable(beta.to_vec()));
    }
    let mut acc = CycloNum::one(2 * ctx.d);
    for pair in beta.chunks(2) {
        acc = &acc * &reflection_factor(ctx.d, pair[0] + 1);
    }
    Ok(acc)
}

/// `(2πi)^{-n/2} ∫_{δ_{β'}} ω_β` for paired-decomposable `β`, as a cyclotomic number.
pub fn normalized_omega_period(
    beta: &[u32],
    beta_prime: &VanishingCycleIndex,
    ctx: &FermatContext,
) -> Result<CycloNum> {
    let v = period_omega_beta(beta, beta_prime, ctx)?.div_two_pi_i(ctx.n as i32 / 2);
    v.as_cyclo()
        .cloned()
        .ok_or_else(|| Error::NotTotallyDecomposable(beta.to_vec()))
}

/// The Galois action on a paired-decomposable `ω_β`: `σ_t(ω_β) = sign·ω_γ`.
///
/// `sign = (-1)^{Σ_j (t·a_{2j} - r(t·a_{2j}))/d}` with `t ∈ 1..2d` and `r` the
/// residue mod `d`; `γ_i = r(t·a_i) - 1`.
pub fn galois_on_omega(
    beta: &[u32],
    sigma: &GaloisElement,
    ctx: &FermatContext,
) -> Result<(i8, Exponents)> {
    check_beta(beta, ctx)?;
    if !is_paired_decomposable(beta, ctx.d) {
        return Err(Error::NotTotallyDecomposable(beta.to_vec()));
    }
    let d = ctx.d;
    if sigma.conductor() != 2 * d {
        return Err(Error::ConductorMismatch {
            left: sigma.conductor(),
            right: 2 * d,
        });
    }
    let t = sigma.t();
    let mut flips = 0u32;
    for pair in beta.chunks(2) {
        let ta = t * (pair[0] + 1);
        flips += (ta - ta % d) / d;
    }
    let gamma = beta.iter().map(|&b| (t * (b + 1)) % d - 1).collect();
    Ok((if flips.is_multiple_of(2) { 1 } else { -1 }, gamma))
}

/// `E_{j,β'} = Σ_{ℓ=1}^{d-1} (c ζ_{2d}^{2Δ-1})^ℓ - (c ζ_{2d}^{2Δ+1})^ℓ`.
pub fn e_factor(c: &CycloNum, delta: i64, d: u32) -> CycloNum {
    let m = 2 * d;
    let u = c * &CycloNum::zeta_pow(m, 2 * delta - 1);
    let v = c * &CycloNum::zeta_pow(m, 2 * delta + 1);
    let mut acc = CycloNum::zero(m);
    let mut up = CycloNum::one(m);
    let mut vp = CycloNum::one(m);
    for _ in 1..d {
        up = &up * &u;
        vp = &vp * &v;
        acc = &acc + &(&up - &vp);
    }
    acc
}

/// `(2πi)^{-n/2} ∫_{δ_{β'}} λ_prim` through the product of `E_{j,β'}` factors.
///
/// The overall constant is the one obtained by summing
/// [`normalized_omega_period`] over the monomials of `P_λ`, namely
/// `c_λ (Π c)^{-1} / (d^{n+1} (n/2)!)`.
pub fn normalized_period(
    spec: &FakeCycleSpec,
    beta_prime: &VanishingCycleIndex,
) -> Result<CycloNum> {
    let ctx = spec.ctx();
    let c_lambda = spec.c_lambda().ok_or(Error::MissingCLambda)?;
    let bp = beta_prime.padded();
    let mut acc = c_lambda.scale(&period_prefactor(ctx));
    let mut prod_c = CycloNum::one(2 * ctx.d);
    for (j, c) in spec.c().iter().enumerate() {
        let delta = bp[2 * j + 1] as i64 - bp[2 * j] as i64;
        acc = &acc * &e_factor(c, delta, ctx.d);
        prod_c = &prod_c * c;
    }
    acc.checked_div(&prod_c)
}

/// Same quantity as [`normalized_period`], computed monomial by monomial from
/// the expansion of `P_λ` and the single-form period formula.
pub fn normalized_period_expansion(
    spec: &FakeCycleSpec,
    beta_prime: &VanishingCycleIndex,
) -> Result<CycloNum> {
    let ctx = spec.ctx();
    let p = spec.p_lambda()?;
    let mut acc = CycloNum::zero(2 * ctx.d);
    for (beta, coeff) in p.terms() {
        acc = &acc + &(coeff * &normalized_omega_period(beta, beta_prime, ctx)?);
    }
    Ok(acc)
}

/// `(2πi)^{-n/2}`-normalised periods of `η_α = (2πi)^{n/2+1} ω_β / Π Γ(a_i/d)`,
/// which lie in `Q(ζ_d)`.
pub fn normalized_eta_period(
    beta: &[u32],
    beta_prime: &VanishingCycleIndex,
    ctx: &FermatContext,
) -> Result<CycloNum> {
    check_beta(beta, ctx)?;
    Ok(cycle_factor(beta, &beta_prime.padded(), ctx.d).scale(&period_prefactor(ctx)))
}

/// Exact constant relating the two normalisations: `d^{n/2}`.
pub fn closed_form_scale(ctx: &FermatContext) -> BigRational {
    rat(ctx.d.pow(ctx.n / 2) as i64, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fake_cycles::solve_spec;

    fn ctx(n: u32, d: u32) -> FermatContext {
        FermatContext::new(n, d).unwrap()
    }

    #[test]
    fn enumeration_order_and_count() {
        let c = ctx(6, 3);
        let all = vanishing_cycles(&c);
        assert_eq!(all.len(), 128);
        assert_eq!(all[0].entries(), &[0; 7]);
        assert_eq!(vanishing_cycles(&ctx(4, 4)).len(), 243);
        assert_eq!(vanishing_cycles(&ctx(2, 6)).len(), 125);
        assert!(VanishingCycleIndex::new(&c, vec![0, 0]).is_err());
        assert!(VanishingCycleIndex::new(&c, vec![2, 0, 0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn decomposable_periods_have_no_gamma() {
        let c = ctx(4, 4);
        let beta = [0, 2, 1, 1, 2, 0];
        for bp in vanishing_cycles(&c).iter().take(20) {
            let v = period_omega_beta(&beta, bp, &c).unwrap();
            assert!(v.gamma_word.is_empty());
            assert_eq!(v.pi_power, 2);
            assert!(v.div_two_pi_i(2).as_cyclo().is_some());
        }
    }

    #[test]
    fn non_decomposable_keeps_gamma_word() {
        // d=5, α=(2,2,2,4): no reflection pair is available
        let c = ctx(2, 5);
        let beta = [1, 1, 1, 3];
        let bp = VanishingCycleIndex::new(&c, vec![0, 0, 0]).unwrap();
        let v = period_omega_beta(&beta, &bp, &c).unwrap();
        assert_eq!(v.gamma_word, BTreeMap::from([(2, 3), (4, 1)]));
        assert_eq!(v.pi_power, -1);
        assert!(v.as_cyclo().is_none());
    }

    #[test]
    fn rejects_bad_exponents() {
        // ζ_d^{a(β'+1)} - ζ_d^{aβ'} never vanishes for 0 < a < d, so a zero
        // factor cannot occur; only input validation is exercised here.
        let c = ctx(2, 4);
        let bp = VanishingCycleIndex::new(&c, vec![0, 0, 0]).unwrap();
        assert!(period_omega_beta(&[0, 0, 0, 1], &bp, &c).is_err());
        assert!(period_omega_beta(&[3, 0, 0, 1], &bp, &c).is_err());
        assert!(period_omega_beta(&[0, 2, 0], &bp, &c).is_err());
    }

    #[test]
    fn c_beta_examples() {
        let c = ctx(2, 4);
        // single relevant pair a=1: 1/(ζ_8 - ζ_8^{-1}) = 1/(ζ_8 + ζ_8^3)
        let want_single = (&CycloNum::zeta(8) + &CycloNum::zeta_pow(8, 3))
            .inv()
            .unwrap();
        let cb = c_beta(&[0, 2, 0, 2], &c).unwrap();
        assert_eq!(cb, &want_single * &want_single);

        let c3 = ctx(6, 3);
        let f = (&CycloNum::zeta(6).scale(&rat(2, 1)) - &CycloNum::one(6))
            .inv()
            .unwrap();
        assert_eq!(reflection_factor(3, 1), f);
        let cb = c_beta(&[0, 1, 0, 1, 0, 1, 0, 1], &c3).unwrap();
        assert!(!cb.is_zero());
        assert!(c_beta(&[1, 1, 0, 1, 0, 1, 0, 1], &c3).is_err());
    }

    #[test]
    fn c_beta_matches_period_formula() {
        for (n, d) in [(6, 3), (4, 4), (2, 6)] {
            let c = ctx(n, d);
            let beta: Vec<u32> = (0..c.pairs())
                .flat_map(|j| {
                    let b = (j as u32) % (d - 1);
                    [b, d - 2 - b]
                })
                .collect();
            let cb = c_beta(&beta, &c).unwrap();
            for bp in vanishing_cycles(&c).iter().step_by(7) {
                let lhs = normalized_omega_period(&beta, bp, &c).unwrap();
                let rhs = &cb * &normalized_eta_period(&beta, bp, &c).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn galois_sign_examples() {
        let c = ctx(4, 4);
        let beta = [0, 2, 0, 2, 0, 2];
        let s7 = GaloisElement::new(8, 7).unwrap();
        let (sign, gamma) = galois_on_omega(&beta, &s7, &c).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(gamma, vec![2, 0, 2, 0, 2, 0]);
        let id = GaloisElement::identity(8);
        assert_eq!(galois_on_omega(&beta, &id, &c).unwrap(), (1, beta.to_vec()));

        let c3 = ctx(6, 3);
        let s5 = GaloisElement::new(6, 5).unwrap();
        let (sign, _) = galois_on_omega(&[0, 1, 0, 1, 0, 1, 0, 1], &s5, &c3).unwrap();
        assert_eq!(sign, 1); // four pairs, one flip each
        let (sign, _) = galois_on_omega(&[0, 1, 0, 1, 0, 1], &s5, &ctx(4, 3)).unwrap();
        assert_eq!(sign, -1);
    }

    #[test]
    fn e_factor_examples() {
        // c = ζ_{2d}, Δ = 0  ⇒  E = d
        for d in [3u32, 4, 6] {
            let e = e_factor(&CycloNum::zeta(2 * d), 0, d);
            assert_eq!(e.as_rational(), Some(rat(d as i64, 1)));
        }
        let e = e_factor(&CycloNum::one(6), 0, 3);
        let want = &CycloNum::from_int(6, 2) - &CycloNum::zeta(6).scale(&rat(4, 1));
        assert_eq!(e, want);
    }

    #[test]
    fn eta_galois_equivariance() {
        // σ_t(η_α) = η_{t·α}, periodwise in Q(ζ_d)
        let c = ctx(2, 6);
        let beta = [0, 4, 1, 3];
        for t in [5i64, 7, 11] {
            let s = GaloisElement::new(12, t).unwrap();
            let gamma: Vec<u32> = beta
                .iter()
                .map(|&b| ((t as u32) * (b + 1)) % 6 - 1)
                .collect();
            for bp in vanishing_cycles(&c) {
                let lhs = normalized_eta_period(&beta, &bp, &c)
                    .unwrap()
                    .apply_power(s.t());
                let rhs = normalized_eta_period(&gamma, &bp, &c).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pathway_equality_presets() {
        for name in crate::fake_cycles::PRESETS {
            let spec = solve_spec(FakeCycleSpec::preset(name).unwrap()).unwrap();
            for bp in vanishing_cycles(spec.ctx()) {
                assert_eq!(
                    normalized_period(&spec, &bp).unwrap(),
                    normalized_period_expansion(&spec, &bp).unwrap(),
                    "{name} {bp:?}"
                );
            }
        }
    }
}
