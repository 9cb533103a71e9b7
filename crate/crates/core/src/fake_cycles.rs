//! Construction and certification of fake linear cycles.
//!
//! A candidate is the data `(d, n, c_0, c_2, …, c_n, c_λ)` defining
//! `P_λ = c_λ Π_j (x_{2j}^{d-1} - (c_{2j} x_{2j+1})^{d-1}) / (x_{2j} - c_{2j} x_{2j+1})`.
//! The class is Hodge exactly when it is fixed by `Gal(Q(ζ_{2d})/Q)`, which
//! reduces to a 1-cocycle condition on `c_λ`; Hilbert 90 then produces `c_λ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{villasmall_identity, FermatContext, ResidueIdentity};
use crate::cyclotomic::{in_cubic_circle, subfield_and_circle_test, CycloNum, GaloisElement};
use crate::error::{Error, Result};
use crate::periods::{galois_on_omega, normalized_period, vanishing_cycles, VanishingCycleIndex};
use crate::polyring::{p_lambda_unchecked, Poly};

/// A candidate (or certified) fake linear cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct FakeCycleSpec {
    ctx: FermatContext,
    c: Vec<CycloNum>,
    c_lambda: Option<CycloNum>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    d: u32,
    n: u32,
    c: Vec<CycloNum>,
    c_lambda: Option<CycloNum>,
}

impl TryFrom<SpecJson> for FakeCycleSpec {
    type Error = Error;
    fn try_from(s: SpecJson) -> Result<Self> {
        FakeCycleSpec::new(FermatContext::new(s.n, s.d)?, s.c, s.c_lambda)
    }
}

impl From<FakeCycleSpec> for SpecJson {
    fn from(s: FakeCycleSpec) -> Self {
        SpecJson {
            d: s.ctx.d,
            n: s.ctx.n,
            c: s.c,
            c_lambda: s.c_lambda,
        }
    }
}

/// Names accepted by [`FakeCycleSpec::preset`].
pub const PRESETS: &[&str] = &[
    "cubic-all-ones",
    "cubic-true-linear",
    "quartic-pythagorean",
    "quartic-true-linear",
    "sextic-pythagorean",
    "sextic-true-linear",
];

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl FakeCycleSpec {
    /// Validate and normalise: every `c_{2j}` is moved to conductor `2d` and
    /// must lie in `ζ_{2d}^{-3}·S^1_{Q(ζ_d)}`.
    pub fn new(ctx: FermatContext, c: Vec<CycloNum>, c_lambda: Option<CycloNum>) -> Result<Self> {
        if !matches!(ctx.d, 3 | 4 | 6) {
            return Err(Error::InvalidArgument(format!(
                "fake linear cycles are only built for d in {{3, 4, 6}}, got {}",
                ctx.d
            )));
        }
        if !ctx.in_fake_cycle_range() {
            return Err(Error::InvalidArgument(format!(
                "need d >= 2 + 6/n, got d={} n={}",
                ctx.d, ctx.n
            )));
        }
        if c.len() != ctx.pairs() {
            return Err(Error::InvalidArgument(format!(
                "expected {} pair coefficients, got {}",
                ctx.pairs(),
                c.len()
            )));
        }
        let m = 2 * ctx.d;
        let c = c
            .into_iter()
            .enumerate()
            .map(|(j, cj)| {
                let cj = cj.lift(m)?;
                let member = subfield_and_circle_test(&cj, ctx.d)?;
                // for d = 3 the set is also S^1 ∩ Q(ζ_6); the two tests must agree
                if ctx.d == 3 && member != in_cubic_circle(&cj)? {
                    return Err(Error::Internal(format!(
                        "membership tests disagree on {cj}"
                    )));
                }
                if member {
                    Ok(cj)
                } else {
                    Err(Error::InvalidArgument(format!(
                        "c_{} = {cj} is not in zeta_{m}^-3 * S^1_Q(zeta_{})",
                        2 * j,
                        ctx.d
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let c_lambda = match c_lambda {
            Some(cl) if cl.is_zero() => {
                return Err(Error::InvalidArgument("c_lambda must be nonzero".into()))
            }
            Some(cl) => Some(cl.lift(m)?),
            None => None,
        };
        Ok(FakeCycleSpec { ctx, c, c_lambda })
    }

    pub fn with_c_lambda(mut self, c_lambda: CycloNum) -> Result<Self> {
        if c_lambda.is_zero() {
            return Err(Error::InvalidArgument("c_lambda must be nonzero".into()));
        }
        self.c_lambda = Some(c_lambda.lift(2 * self.ctx.d)?);
        Ok(self)
    }

    pub fn ctx(&self) -> &FermatContext {
        &self.ctx
    }

    /// `c_0, c_2, …, c_n`.
    pub fn c(&self) -> &[CycloNum] {
        &self.c
    }

    pub fn c_lambda(&self) -> Option<&CycloNum> {
        self.c_lambda.as_ref()
    }

    /// Conductor `2d` of every coefficient.
    pub fn conductor(&self) -> u32 {
        2 * self.ctx.d
    }

    pub fn p_lambda(&self) -> Result<Poly> {
        let cl = self.c_lambda.as_ref().ok_or(Error::MissingCLambda)?;
        Ok(p_lambda_unchecked(&self.ctx, &self.c, cl))
    }

    /// `Π_j c_{2j}`.
    pub fn c_product(&self) -> CycloNum {
        self.c
            .iter()
            .fold(CycloNum::one(self.conductor()), |acc, c| &acc * c)
    }

    /// Every `c_{2j}` is a `d`-th root of `-1`.
    pub fn is_true_linear(&self) -> bool {
        self.c.iter().all(|c| is_root_of_minus_one(c, self.ctx.d))
    }

    /// Built-in specs for the three desk cases; `c_λ` is left unset.
    pub fn preset(name: &str) -> Option<Self> {
        let (n, d, c): (u32, u32, Vec<CycloNum>) = match name {
            "cubic-all-ones" => (6, 3, vec![CycloNum::one(6); 4]),
            "cubic-true-linear" => (6, 3, vec![CycloNum::zeta(6); 4]),
            "quartic-pythagorean" => {
                let z = &CycloNum::from_rational(4, q(3, 5)) + &CycloNum::zeta(4).scale(&q(4, 5));
                let c0 = &CycloNum::zeta(8) * &z;
                (4, 4, vec![c0, CycloNum::zeta(8), CycloNum::zeta(8)])
            }
            "quartic-true-linear" => (4, 4, vec![CycloNum::zeta(8); 3]),
            "sextic-pythagorean" => {
                let z = (&CycloNum::from_int(6, 3) + &CycloNum::zeta(6).scale(&q(5, 1)))
                    .scale(&q(1, 7));
                let c0 = &CycloNum::zeta_pow(12, 3) * &z;
                (2, 6, vec![c0, CycloNum::zeta(12)])
            }
            "sextic-true-linear" => (2, 6, vec![CycloNum::zeta(12); 2]),
            _ => return None,
        };
        FakeCycleSpec::new(FermatContext::new(n, d).ok()?, c, None).ok()
    }

    /// A random valid coefficient vector that is not true-linear.
    pub fn random<R: Rng + ?Sized>(ctx: FermatContext, rng: &mut R) -> Result<Self> {
        loop {
            let c: Vec<CycloNum> = (0..ctx.pairs())
                .map(|_| random_unit_coefficient(ctx.d, rng))
                .collect();
            let spec = FakeCycleSpec::new(ctx, c, None)?;
            if !spec.is_true_linear() {
                return Ok(spec);
            }
        }
    }
}

/// `c^d = -1`.
pub fn is_root_of_minus_one(c: &CycloNum, d: u32) -> bool {
    c.pow(d as i64)
        .map(|p| p.as_rational() == Some(q(-1, 1)))
        .unwrap_or(false)
}

pub fn is_true_linear(spec: &FakeCycleSpec) -> bool {
    spec.is_true_linear()
}

/// `ζ_{2d}^{-3} · ζ_d^k · w/conj(w)` for `w = a + b ζ_d`, the general shape of
/// an element of `ζ_{2d}^{-3}·S^1_{Q(ζ_d)}` with small coordinates.
pub fn unit_coefficient(d: u32, a: i64, b: i64, k: i64) -> Result<CycloNum> {
    let m = 2 * d;
    let w = &CycloNum::from_int(m, a) + &CycloNum::zeta_pow(m, 2).scale(&q(b, 1));
    let ratio = w.checked_div(&w.conj())?;
    Ok(&(&CycloNum::zeta_pow(m, -3) * &CycloNum::zeta_pow(m, 2 * k)) * &ratio)
}

fn random_unit_coefficient<R: Rng + ?Sized>(d: u32, rng: &mut R) -> CycloNum {
    loop {
        let a = rng.gen_range(-9i64..=9);
        let b = rng.gen_range(-9i64..=9);
        let k = rng.gen_range(0..d as i64);
        if let Ok(c) = unit_coefficient(d, a, b, k) {
            return c;
        }
    }
}

/// A map `σ ↦ φ_σ` on `Gal(Q(ζ_{2d})/Q)`, keyed by the representative `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    m: u32,
    phi: BTreeMap<u32, CycloNum>,
}

impl Cocycle {
    pub fn new(m: u32, phi: BTreeMap<u32, CycloNum>) -> Result<Self> {
        let group = GaloisElement::all(m);
        if phi.len() != group.len() || group.iter().any(|s| !phi.contains_key(&s.t())) {
            return Err(Error::InvalidArgument(format!(
                "cocycle must be defined on all of (Z/{m}Z)^x"
            )));
        }
        let phi = phi
            .into_iter()
            .map(|(t, v)| Ok((t, v.lift(m)?)))
            .collect::<Result<_>>()?;
        Ok(Cocycle { m, phi })
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn get(&self, sigma: &GaloisElement) -> &CycloNum {
        &self.phi[&sigma.t()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (GaloisElement, &CycloNum)> {
        self.phi
            .iter()
            .map(|(&t, v)| (GaloisElement::new(self.m, t as i64).expect("unit"), v))
    }

    /// `φ_{στ} = φ_σ · σ(φ_τ)` for all pairs, and `φ_id = 1`.
    pub fn verify_law(&self) -> Result<()> {
        if !self.phi[&1].is_one() {
            return Err(Error::CocycleLaw { s: 1, t: 1 });
        }
        for s in GaloisElement::all(self.m) {
            for t in GaloisElement::all(self.m) {
                let st = s.compose(&t)?;
                let rhs = self.get(&s) * &self.get(&t).apply_power(s.t());
                if *self.get(&st) != rhs {
                    return Err(Error::CocycleLaw { s: s.t(), t: t.t() });
                }
            }
        }
        Ok(())
    }
}

/// The cocycle whose splitting `c_λ` makes the class Galois-invariant.
pub fn cocycle_phi(spec: &FakeCycleSpec) -> Result<Cocycle> {
    let d = spec.ctx().d;
    let m = 2 * d;
    let sign = if (spec.ctx().n / 2 + 1).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let signed = CycloNum::from_int(m, sign);
    let prod = spec.c_product();
    let mut phi = BTreeMap::new();
    phi.insert(1, CycloNum::one(m));
    match d {
        3 => {
            phi.insert(5, &signed * &prod);
        }
        4 => {
            let sq = &prod * &prod;
            phi.insert(7, &signed * &sq);
            phi.insert(5, signed.clone());
            phi.insert(3, sq);
        }
        6 => {
            let p4 = prod.pow(4)?;
            phi.insert(11, &signed * &p4);
            phi.insert(7, signed.clone());
            phi.insert(5, p4);
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "cocycle is only defined for d in {{3, 4, 6}}, got {d}"
            )))
        }
    }
    let cocycle = Cocycle::new(m, phi)?;
    cocycle.verify_law()?;
    Ok(cocycle)
}

/// Split the cocycle: find `c` with `σ(c) = φ_σ·c` for every `σ`.
///
/// `c = b^{-1}` where `b = Σ_τ φ_τ·τ(θ)`; `θ` runs over `ζ^1, ζ^2, …` until
/// `b ≠ 0`. These `θ` include a basis of `Q(ζ_m)`, so the scan terminates
/// whenever the cocycle law holds.
pub fn solve_c_lambda(phi: &Cocycle) -> Result<CycloNum> {
    phi.verify_law()?;
    let m = phi.conductor();
    for k in 1..=m as i64 {
        let theta = CycloNum::zeta_pow(m, k);
        let b = phi.iter().fold(CycloNum::zero(m), |acc, (tau, f)| {
            &acc + &(f * &theta.apply_power(tau.t()))
        });
        if !b.is_zero() {
            let c = b.inv()?;
            for (s, f) in phi.iter() {
                if c.apply_power(s.t()) != f * &c {
                    return Err(Error::Internal(format!(
                        "Hilbert 90 solution fails at sigma_{}",
                        s.t()
                    )));
                }
            }
            return Ok(c);
        }
    }
    Err(Error::Internal("no theta gives a nonzero trace".into()))
}

/// Compute and attach `c_λ`.
pub fn solve_spec(spec: FakeCycleSpec) -> Result<FakeCycleSpec> {
    let c = solve_c_lambda(&cocycle_phi(&spec)?)?;
    spec.with_c_lambda(c)
}

/// Outcome of the period-rationality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateOutcome {
    /// Every normalised period is rational; listed in vanishing-cycle order.
    Certified {
        periods: Vec<(VanishingCycleIndex, BigRational)>,
    },
    /// The first vanishing cycle with an irrational period.
    Irrational {
        beta_prime: VanishingCycleIndex,
        value: CycloNum,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeCertificate {
    pub spec: FakeCycleSpec,
    pub outcome: CertificateOutcome,
}

impl HodgeCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self.outcome, CertificateOutcome::Certified { .. })
    }
}

/// Evaluate all `(d-1)^{n+1}` normalised periods and test each for rationality.
pub fn certify_hodge(spec: &FakeCycleSpec) -> Result<HodgeCertificate> {
    if spec.c_lambda().is_none() {
        return Err(Error::MissingCLambda);
    }
    let cycles = vanishing_cycles(spec.ctx());
    let values: Vec<CycloNum> = cycles
        .par_iter()
        .map(|bp| normalized_period(spec, bp))
        .collect::<Result<_>>()?;
    let mut periods = Vec::with_capacity(cycles.len());
    for (bp, v) in cycles.into_iter().zip(values) {
        match v.as_rational() {
            Some(r) => periods.push((bp, r)),
            None => {
                return Ok(HodgeCertificate {
                    spec: spec.clone(),
                    outcome: CertificateOutcome::Irrational {
                        beta_prime: bp,
                        value: v,
                    },
                })
            }
        }
    }
    Ok(HodgeCertificate {
        spec: spec.clone(),
        outcome: CertificateOutcome::Certified { periods },
    })
}

/// Second Hodge certificate: `σ(λ) = λ` checked coefficient by coefficient
/// on `P_λ` via `σ_t(ω_β) = ±ω_γ`, without evaluating any period.
pub fn galois_invariance(spec: &FakeCycleSpec) -> Result<bool> {
    let p = spec.p_lambda()?;
    let ctx = spec.ctx();
    for sigma in GaloisElement::all(spec.conductor()) {
        for (beta, coeff) in p.terms() {
            let (sign, gamma) = galois_on_omega(beta, &sigma, ctx)?;
            let image = coeff.apply_power(sigma.t()).scale(&q(sign as i64, 1));
            let target = p
                .coeff(&gamma)
                .cloned()
                .unwrap_or_else(|| CycloNum::zero(spec.conductor()));
            if image != target {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Computational evidence that no fake linear cycles exist for a given
/// `d ∉ {3, 4, 6}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionWitness {
    pub identity: ResidueIdentity,
    /// The Galois element `t = 2d - q`.
    pub t: u32,
    /// A unit-circle sample with `c^d ≠ -1`.
    pub sample: CycloNum,
    /// `(a, b)` pairs for which the equivariance identity fails on `sample`.
    pub failing_pairs: Vec<(u32, u32)>,
}

/// Whether `σ_t(ζ^{a-b} c^{b-a}) = ζ^{r(ta)-r(tb)} c^{r(tb)-r(ta)}` holds,
/// `ζ = ζ_{2d}`, `r` the residue mod `d`.
pub fn equivariance_identity_holds(c: &CycloNum, d: u32, t: u32, a: u32, b: u32) -> Result<bool> {
    let m = 2 * d;
    let c = c.lift(m)?;
    let sigma = GaloisElement::new(m, t as i64)?;
    let (a, b) = (a as i64, b as i64);
    let lhs = (&CycloNum::zeta_pow(m, a - b) * &c.pow(b - a)?).apply_power(sigma.t());
    let ra = (t as i64 * a).rem_euclid(d as i64);
    let rb = (t as i64 * b).rem_euclid(d as i64);
    let rhs = &CycloNum::zeta_pow(m, ra - rb) * &c.pow(rb - ra)?;
    Ok(lhs == rhs)
}

/// Check the residue identity for `d` and confirm that the two equivariance
/// identities it combines cannot both hold for a unit `c` with `c^d ≠ -1`.
pub fn no_fake_cycles_witness(d: u32) -> Result<ExclusionWitness> {
    let identity = villasmall_identity(d as u64)?;
    let t = (2 * identity.d - identity.q) as u32;
    let pairs = [(1u32, identity.k as u32 + 1), (1, 2)];
    let m = 2 * d;

    // ζ_{2d} is a d-th root of -1: both identities must hold there.
    for &(a, b) in &pairs {
        if !equivariance_identity_holds(&CycloNum::zeta(m), d, t, a, b)? {
            return Err(Error::Internal(format!(
                "identity ({a}, {b}) fails on zeta_{m} for d={d}"
            )));
        }
    }

    // (r - ζ_d) / (ζ_{2d}^3 (r - ζ_d^{-1})) has modulus one
    let sample = (2..)
        .map(|r: i64| {
            let num = &CycloNum::from_int(m, r) - &CycloNum::zeta_pow(m, 2);
            let den = &CycloNum::zeta_pow(m, 3)
                * &(&CycloNum::from_int(m, r) - &CycloNum::zeta_pow(m, -2));
            num.checked_div(&den).expect("nonzero")
        })
        .find(|c| !is_root_of_minus_one(c, d))
        .expect("some sample avoids roots of -1");

    let mut failing_pairs = Vec::new();
    for &(a, b) in &pairs {
        if !equivariance_identity_holds(&sample, d, t, a, b)? {
            failing_pairs.push((a, b));
        }
    }
    if failing_pairs.is_empty() {
        return Err(Error::IdentityFailed {
            d: d as u64,
            q: identity.q,
            k: identity.k,
            value: identity.value,
        });
    }
    Ok(ExclusionWitness {
        identity,
        t,
        sample,
        failing_pairs,
    })
}
