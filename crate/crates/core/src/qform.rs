//! Degree-`r` piece of the quadratic fundamental form of the Hodge locus at
//! the Fermat point, `r = d(n/2+2) - n - 2`, and the search for a tangent
//! vector on which it does not vanish.
//!
//! For `G, H` tangent write `G·P_λ = Σ Q_i ∂F/∂x_i`, `H·P_λ = Σ R_i ∂F/∂x_i`;
//! then `q_r(G, H) = Σ_i (H ∂Q_i/∂x_i − R_i ∂G/∂x_i)`, read in
//! `S_r / (J^F + ⟨P_λ⟩)_r`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::FermatContext;
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::fake_cycles::{is_root_of_minus_one, FakeCycleSpec};
use crate::linalg::{ExactMatrix, Rref};
use crate::polyring::{
    jacobian_decompose, monomials, pair_factor, pair_linear_form, reduce_mod_jacobian,
    DecomposeStrategy, Exponents, Poly,
};
use crate::tangent::GradedPieceBasis;

/// `S_r / (J^F + P_λ·S_{r - deg P_λ})_r`, presented by the monomials of
/// `R^F_r` that are not pivots of the row-reduced image of `P_λ·S_{r-deg P}`.
#[derive(Debug, Clone)]
pub struct CriticalQuotient {
    pub degree: u32,
    basis: GradedPieceBasis,
    rref: Rref,
    complement: Vec<usize>,
    ctx: FermatContext,
    m: u32,
}

impl CriticalQuotient {
    pub fn new(spec: &FakeCycleSpec) -> Result<Self> {
        let ctx = spec.ctx();
        let p = spec.p_lambda()?;
        let m = spec.conductor();
        let r = ctx.critical_degree();
        let deg_p = p.degree().expect("P_λ is nonzero");
        let basis = GradedPieceBasis::jacobian(ctx, r);
        let shifts = if r >= deg_p {
            monomials(ctx.vars(), r - deg_p)
        } else {
            Vec::new()
        };
        let rows: Vec<Vec<CycloNum>> = shifts
            .par_iter()
            .map(|mono| basis.coordinates(reduce_mod_jacobian(&p.shift(mono), ctx).poly(), m))
            .collect::<Result<_>>()?;
        let rref = ExactMatrix::from_rows(m, basis.len(), rows)?.rref();
        let mut is_pivot = vec![false; basis.len()];
        for &c in &rref.pivots {
            is_pivot[c] = true;
        }
        let complement = (0..basis.len()).filter(|&i| !is_pivot[i]).collect();
        Ok(CriticalQuotient {
            degree: r,
            basis,
            rref,
            complement,
            ctx: *ctx,
            m,
        })
    }

    pub fn dimension(&self) -> usize {
        self.complement.len()
    }

    /// Monomials whose classes form the basis used for class coordinates.
    pub fn complement_basis(&self) -> Vec<Exponents> {
        self.complement
            .iter()
            .map(|&i| self.basis.monomials[i].clone())
            .collect()
    }

    /// Coordinates of the class of `w` (homogeneous of degree `r`, or zero).
    pub fn class(&self, w: &Poly) -> Result<Vec<CycloNum>> {
        if !w.is_zero() && w.degree() != Some(self.degree) {
            return Err(Error::InvalidArgument(format!(
                "expected a form of degree {}, got {:?}",
                self.degree,
                w.degree()
            )));
        }
        let red = reduce_mod_jacobian(w, &self.ctx);
        let v = self.basis.coordinates(red.poly(), self.m)?;
        let v = self.rref.reduce(&v);
        Ok(self.complement.iter().map(|&i| v[i].clone()).collect())
    }
}

/// The raw form and its class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QFormResult {
    pub raw: Poly,
    pub class: Vec<CycloNum>,
}

impl QFormResult {
    pub fn class_is_zero(&self) -> bool {
        self.class.iter().all(CycloNum::is_zero)
    }
}

fn check_tangent(g: &Poly, spec: &FakeCycleSpec, p: &Poly) -> Result<()> {
    let ctx = spec.ctx();
    if g.nvars() != ctx.vars() || !g.is_homogeneous() {
        return Err(Error::NotTangent);
    }
    if !g.is_zero() && g.degree() != Some(ctx.d) {
        return Err(Error::NotTangent);
    }
    if !reduce_mod_jacobian(&(g * p), ctx).is_zero() {
        return Err(Error::NotTangent);
    }
    Ok(())
}

/// `Σ_i (H ∂Q_i/∂x_i − R_i ∂G/∂x_i)` without the class.
pub fn qr_raw(
    g: &Poly,
    h: &Poly,
    spec: &FakeCycleSpec,
    strategy: DecomposeStrategy,
) -> Result<Poly> {
    let p = spec.p_lambda()?;
    check_tangent(g, spec, &p)?;
    check_tangent(h, spec, &p)?;
    let ctx = spec.ctx();
    let q = jacobian_decompose(&(g * &p), ctx, strategy)?;
    let r = jacobian_decompose(&(h * &p), ctx, strategy)?;
    let mut out = Poly::zero(ctx.vars());
    for i in 0..ctx.vars() {
        out = &out + &(h * &q[i].derivative(i));
        out = &out - &(&r[i] * &g.derivative(i));
    }
    Ok(out)
}

pub fn qr_in(
    g: &Poly,
    h: &Poly,
    spec: &FakeCycleSpec,
    strategy: DecomposeStrategy,
    quotient: &CriticalQuotient,
) -> Result<QFormResult> {
    let raw = qr_raw(g, h, spec, strategy)?;
    let class = quotient.class(&raw)?;
    Ok(QFormResult { raw, class })
}

/// `q_r(G, H)` with its class in `S_r/(J^F + ⟨P_λ⟩)_r`.
pub fn qr(
    g: &Poly,
    h: &Poly,
    spec: &FakeCycleSpec,
    strategy: DecomposeStrategy,
) -> Result<QFormResult> {
    qr_in(g, h, spec, strategy, &CriticalQuotient::new(spec)?)
}

fn check_pair(pair: usize, spec: &FakeCycleSpec) -> Result<()> {
    if pair >= spec.ctx().pairs() {
        return Err(Error::InvalidArgument(format!(
            "pair index {pair} out of range 0..{}",
            spec.ctx().pairs()
        )));
    }
    Ok(())
}

/// `−(c_λ/d) · Π_{j≠i} (x_{2j}^{d-1} − (c_{2j}x_{2j+1})^{d-1})/(x_{2j} − c_{2j}x_{2j+1}) · D² · (c_{2i}^d + 1)`,
/// the value of `q_r(ℓ_i D, ℓ_i D)` under the paired decomposition.
pub fn qr_closed_form(pair: usize, dpoly: &Poly, spec: &FakeCycleSpec) -> Result<Poly> {
    check_pair(pair, spec)?;
    let ctx = spec.ctx();
    let nv = ctx.vars();
    let m = spec.conductor();
    let cl = spec.c_lambda().ok_or(Error::MissingCLambda)?;
    let ci = &spec.c()[pair];
    let factor = &(cl * &(&ci.pow(ctx.d as i64)? + &CycloNum::one(m)))
        .scale(&num_rational::BigRational::new((-1).into(), ctx.d.into()));
    let mut out = Poly::constant(nv, factor.clone());
    for (j, cj) in spec.c().iter().enumerate() {
        if j != pair {
            out = &out * &pair_factor(nv, 2 * j, 2 * j + 1, cj, ctx.d);
        }
    }
    Ok(&out * &(dpoly * dpoly))
}

/// A tangent vector `ℓ_i·D` on which the quadratic form has a nonzero class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonreducedWitness {
    pub pair: usize,
    pub d_poly: Poly,
    pub complement_basis: Vec<Exponents>,
    pub class: Vec<CycloNum>,
    /// Position of the witness in the candidate list.
    pub candidate_index: usize,
}

/// Candidate `D` of degree `d-1`: single monomials (those whose square
/// avoids `J^F` first), then sums of two distinct monomials.
pub fn witness_candidates(nvars: usize, d: u32, m: u32) -> Vec<Poly> {
    let mut monos = monomials(nvars, d - 1);
    monos.sort_by_key(|e| e.iter().any(|&a| 2 * a > d - 2));
    let mut out: Vec<Poly> = monos
        .iter()
        .map(|e| Poly::monomial(e.clone(), CycloNum::one(m)))
        .collect();
    for (a, ea) in monos.iter().enumerate() {
        for eb in &monos[a + 1..] {
            out.push(Poly::from_terms(
                nvars,
                [
                    (ea.clone(), CycloNum::one(m)),
                    (eb.clone(), CycloNum::one(m)),
                ],
            ));
        }
    }
    out
}

/// Search for `(i, D)` with `class(q_r(ℓ_i D, ℓ_i D)) ≠ 0`.
///
/// Returns `Ok(None)` for a true-linear spec: there every `c_{2i}^d = −1`
/// and the closed form vanishes identically. For a fake spec an exhausted
/// search is an error.
pub fn nonreduced_witness(spec: &FakeCycleSpec) -> Result<Option<NonreducedWitness>> {
    let ctx = spec.ctx();
    let pairs: Vec<usize> = (0..ctx.pairs())
        .filter(|&i| !is_root_of_minus_one(&spec.c()[i], ctx.d))
        .collect();
    if pairs.is_empty() {
        return Ok(None);
    }
    let quotient = CriticalQuotient::new(spec)?;
    let cands = witness_candidates(ctx.vars(), ctx.d, spec.conductor());
    let jobs: Vec<(usize, usize)> = pairs
        .iter()
        .flat_map(|&i| (0..cands.len()).map(move |k| (i, k)))
        .collect();
    let found = jobs
        .par_iter()
        .map(|&(i, k)| -> Result<Option<NonreducedWitness>> {
            let g = &pair_linear_form(ctx.vars(), i, &spec.c()[i]) * &cands[k];
            let res = qr_in(
                &g,
                &g,
                spec,
                DecomposeStrategy::Paired { pair: i },
                &quotient,
            )?;
            Ok((!res.class_is_zero()).then(|| NonreducedWitness {
                pair: i,
                d_poly: cands[k].clone(),
                complement_basis: quotient.complement_basis(),
                class: res.class,
                candidate_index: k,
            }))
        })
        .find_first(|r| !matches!(r, Ok(None)));
    match found {
        Some(r) => r,
        None => Err(Error::SearchExhausted {
            candidates: jobs.len(),
        }),
    }
}
