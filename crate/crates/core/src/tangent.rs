//! The Artinian Gorenstein ideal `J^{F,λ} = (J^F : P_λ)` and the tangent
//! space of the Hodge locus at the Fermat point.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::FermatContext;
use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};
use crate::fake_cycles::FakeCycleSpec;
use crate::linalg::{same_row_space, ExactMatrix};
use crate::polyring::{
    jacobian_monomials, monomials, pair_linear_form, reduce_mod_jacobian, Exponents, Poly,
};

/// An ordered monomial basis of `S_e` or `R^F_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPieceBasis {
    pub degree: u32,
    pub monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl GradedPieceBasis {
    fn from_monomials(degree: u32, monomials: Vec<Exponents>) -> Self {
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        GradedPieceBasis {
            degree,
            monomials,
            index,
        }
    }

    /// All monomials of degree `e`.
    pub fn full(nvars: usize, e: u32) -> Self {
        Self::from_monomials(e, monomials(nvars, e))
    }

    /// Monomials of degree `e` with every exponent at most `d-2`.
    pub fn jacobian(ctx: &FermatContext, e: u32) -> Self {
        Self::from_monomials(e, jacobian_monomials(ctx, e))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Coordinates of `p` (which must live in this piece).
    pub fn coordinates(&self, p: &Poly, m: u32) -> Result<Vec<CycloNum>> {
        let mut v = vec![CycloNum::zero(m); self.len()];
        for (e, c) in p.terms() {
            let i = self.position(e).ok_or_else(|| {
                Error::Internal(format!(
                    "monomial {e:?} outside degree-{} basis",
                    self.degree
                ))
            })?;
            v[i] = c.lift(m)?;
        }
        Ok(v)
    }

    pub fn to_poly(&self, v: &[CycloNum], nvars: usize) -> Poly {
        Poly::from_terms(
            nvars,
            self.monomials
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }
}

fn check_poly(p: &Poly, ctx: &FermatContext) -> Result<u32> {
    if p.nvars() != ctx.vars() {
        return Err(Error::InvalidArgument(format!(
            "polynomial has {} variables, expected {}",
            p.nvars(),
            ctx.vars()
        )));
    }
    if p.is_zero() || !p.is_homogeneous() {
        return Err(Error::InvalidArgument(
            "P must be homogeneous and nonzero".into(),
        ));
    }
    Ok(p.degree().expect("nonzero"))
}

fn conductor_of(p: &Poly) -> u32 {
    p.terms().next().map_or(1, |(_, c)| c.conductor())
}

/// The matrix of `G ↦ reduce_mod_jacobian(G·P)` from `S_e` to
/// `R^F_{e+deg P}`, columns in the basis order of `S_e`.
pub fn multiplication_matrix(
    p: &Poly,
    e: u32,
    ctx: &FermatContext,
) -> Result<(GradedPieceBasis, GradedPieceBasis, ExactMatrix)> {
    let deg = check_poly(p, ctx)?;
    let m = conductor_of(p);
    let source = GradedPieceBasis::full(ctx.vars(), e);
    let target = GradedPieceBasis::jacobian(ctx, e + deg);
    let cols: Vec<Vec<CycloNum>> = source
        .monomials
        .par_iter()
        .map(|mono| {
            let prod = reduce_mod_jacobian(&p.shift(mono), ctx);
            target.coordinates(prod.poly(), m)
        })
        .collect::<Result<_>>()?;
    let mat = ExactMatrix::from_cols(m, target.len(), cols)?;
    Ok((source, target, mat))
}

/// `dim (J^F : P)_e`.
pub fn colon_dim(p: &Poly, e: u32, ctx: &FermatContext) -> Result<u64> {
    let (source, target, mat) = multiplication_matrix(p, e, ctx)?;
    if target.is_empty() {
        return Ok(source.len() as u64);
    }
    Ok((source.len() - mat.rank()) as u64)
}

/// A basis of `(J^F : P)_e`.
pub fn colon_basis(p: &Poly, e: u32, ctx: &FermatContext) -> Result<Vec<Poly>> {
    let (source, _, mat) = multiplication_matrix(p, e, ctx)?;
    Ok(mat
        .nullspace()
        .iter()
        .map(|v| source.to_poly(v, ctx.vars()))
        .collect())
}

/// `dim (S / (J^F : P))_e` for `e = 0, …, top`.
pub fn quotient_hilbert_function(p: &Poly, top: u32, ctx: &FermatContext) -> Result<Vec<u64>> {
    (0..=top)
        .into_par_iter()
        .map(|e| {
            let full = GradedPieceBasis::full(ctx.vars(), e).len() as u64;
            Ok(full - colon_dim(p, e, ctx)?)
        })
        .collect()
}

/// `dim S_d − dim (J^F : P)_d`, the codimension of the tangent space.
pub fn tangent_codim_of(p: &Poly, ctx: &FermatContext) -> Result<u64> {
    let full = GradedPieceBasis::full(ctx.vars(), ctx.d).len() as u64;
    Ok(full - colon_dim(p, ctx.d, ctx)?)
}

pub fn tangent_codim(spec: &FakeCycleSpec) -> Result<u64> {
    tangent_codim_of(&spec.p_lambda()?, spec.ctx())
}

/// The value `C(n/2+d, d) − (n/2+1)²` expected for a fake linear cycle.
pub fn expected_codim(ctx: &FermatContext) -> u64 {
    let k = ctx.n as u64 / 2;
    let d = ctx.d as u64;
    let mut binom = 1u64;
    for i in 1..=d {
        binom = binom * (k + i) / i;
    }
    binom - (k + 1) * (k + 1)
}

/// Hilbert function of `S/J^{F,λ}` in degrees `0..=σ+1`.
pub fn hilbert_function(spec: &FakeCycleSpec) -> Result<Vec<u64>> {
    quotient_hilbert_function(&spec.p_lambda()?, spec.ctx().socle() + 1, spec.ctx())
}

/// Degree-`e` piece of `⟨ℓ_0, …, ℓ_{n/2}, x_0^{d-1}, …, x_{n+1}^{d-1}⟩`
/// as rows over the monomial basis of `S_e`.
pub fn generator_ideal_matrix(spec: &FakeCycleSpec, e: u32) -> Result<ExactMatrix> {
    let ctx = spec.ctx();
    let nv = ctx.vars();
    let m = spec.conductor();
    let basis = GradedPieceBasis::full(nv, e);
    let mut gens: Vec<Poly> = Vec::new();
    if e >= 1 {
        let lower = monomials(nv, e - 1);
        for (j, c) in spec.c().iter().enumerate() {
            let l = pair_linear_form(nv, j, c);
            gens.extend(lower.iter().map(|mono| l.shift(mono)));
        }
    }
    if e >= ctx.d - 1 {
        let lower = monomials(nv, e - (ctx.d - 1));
        for i in 0..nv {
            let mut top = vec![0; nv];
            top[i] = ctx.d - 1;
            for mono in &lower {
                let mut f = mono.clone();
                f[i] += ctx.d - 1;
                gens.push(Poly::monomial(f, CycloNum::one(m)));
            }
        }
    }
    let rows = gens
        .par_iter()
        .map(|g| basis.coordinates(g, m))
        .collect::<Result<_>>()?;
    ExactMatrix::from_rows(m, basis.len(), rows)
}

/// Whether `(J^F : P_λ)_e` equals the degree-`e` piece of the ideal generated
/// by the linear forms `x_{2j} − c_{2j}x_{2j+1}` and the `x_i^{d-1}`.
pub fn idealfake_compare(spec: &FakeCycleSpec, e: u32) -> Result<bool> {
    let ctx = spec.ctx();
    let m = spec.conductor();
    let basis = GradedPieceBasis::full(ctx.vars(), e);
    let colon = colon_basis(&spec.p_lambda()?, e, ctx)?;
    let rows = colon
        .iter()
        .map(|g| basis.coordinates(g, m))
        .collect::<Result<_>>()?;
    let b = ExactMatrix::from_rows(m, basis.len(), rows)?;
    let a = generator_ideal_matrix(spec, e)?;
    same_row_space(&a, &b)
}

/// Gorenstein data of `A = S/J^{F,λ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub socle_degree: u32,
    pub hilbert_function: Vec<u64>,
    /// Rank of the pairing `A_i × A_{σ−i} → A_σ` for each `i`.
    pub pairing_ranks: Vec<u64>,
    pub is_gorenstein: bool,
}

/// Check `dim A_σ = 1`, `A_{σ+1} = 0` and perfectness of every pairing
/// `A_i × A_{σ−i} → A_σ`.
///
/// Since `deg P_λ = σ` and `R^F_{2σ}` is spanned by `Π x_i^{d-2}`, the pairing
/// is the matrix of coefficients of that monomial in `g·h·P_λ`.
pub fn gorenstein_check(spec: &FakeCycleSpec) -> Result<GorensteinReport> {
    let ctx = spec.ctx();
    let p = spec.p_lambda()?;
    let sigma = ctx.socle();
    let m = spec.conductor();
    let hf = quotient_hilbert_function(&p, sigma + 1, ctx)?;
    let socle_mono: Exponents = vec![ctx.d - 2; ctx.vars()];
    let nv = ctx.vars();
    let pairing_ranks: Vec<u64> = (0..=sigma)
        .into_par_iter()
        .map(|i| {
            let left = monomials(nv, i);
            let right = monomials(nv, sigma - i);
            let rows: Vec<Vec<CycloNum>> = left
                .iter()
                .map(|g| {
                    let gp = reduce_mod_jacobian(&p.shift(g), ctx).into_poly();
                    right
                        .iter()
                        .map(|h| {
                            let mut need = socle_mono.clone();
                            for (x, &a) in need.iter_mut().zip(h) {
                                if a > *x {
                                    return CycloNum::zero(m);
                                }
                                *x -= a;
                            }
                            gp.coeff(&need)
                                .cloned()
                                .unwrap_or_else(|| CycloNum::zero(m))
                        })
                        .collect()
                })
                .collect();
            Ok(ExactMatrix::from_rows(m, right.len(), rows)?.rank() as u64)
        })
        .collect::<Result<_>>()?;
    let is_gorenstein = hf[sigma as usize] == 1
        && hf[sigma as usize + 1] == 0
        && (0..=sigma as usize)
            .all(|i| pairing_ranks[i] == hf[i] && hf[i] == hf[sigma as usize - i]);
    Ok(GorensteinReport {
        socle_degree: sigma,
        hilbert_function: hf,
        pairing_ranks,
        is_gorenstein,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fake_cycles::solve_spec;

    fn solved(name: &str) -> FakeCycleSpec {
        solve_spec(FakeCycleSpec::preset(name).unwrap()).unwrap()
    }

    #[test]
    fn expected_codims() {
        for (n, d, want) in [(6, 3, 4), (4, 4, 6), (2, 6, 3)] {
            assert_eq!(expected_codim(&FermatContext::new(n, d).unwrap()), want);
        }
    }

    #[test]
    fn colon_examples() {
        let s = solved("sextic-pythagorean");
        let p = s.p_lambda().unwrap();
        assert_eq!(colon_dim(&p, 6, s.ctx()).unwrap(), 81);
        assert_eq!(colon_dim(&p, 9, s.ctx()).unwrap(), 220);
        let s = solved("cubic-all-ones");
        assert_eq!(colon_dim(&s.p_lambda().unwrap(), 3, s.ctx()).unwrap(), 116);
    }

    #[test]
    fn tangent_codims() {
        for name in [
            "cubic-all-ones",
            "quartic-pythagorean",
            "sextic-pythagorean",
        ] {
            let s = solved(name);
            assert_eq!(
                tangent_codim(&s).unwrap(),
                expected_codim(s.ctx()),
                "{name}"
            );
        }
    }

    #[test]
    fn degree_one_colon_is_linear_forms() {
        let s = solved("sextic-pythagorean");
        assert!(idealfake_compare(&s, 1).unwrap());
        assert!(idealfake_compare(&s, 6).unwrap());
        let t = solve_spec(FakeCycleSpec::preset("sextic-true-linear").unwrap()).unwrap();
        assert!(idealfake_compare(&t, 6).unwrap());
    }

    #[test]
    fn gorenstein_sextic() {
        let g = gorenstein_check(&solved("sextic-pythagorean")).unwrap();
        assert_eq!(g.socle_degree, 8);
        assert_eq!(g.hilbert_function, vec![1, 2, 3, 4, 5, 4, 3, 2, 1, 0]);
        assert!(g.is_gorenstein);
    }

    #[test]
    fn rejects_bad_input() {
        let ctx = FermatContext::new(2, 6).unwrap();
        assert!(colon_dim(&Poly::zero(4), 1, &ctx).is_err());
        let p = Poly::parse("x0 + x1^2", 4, 12).unwrap();
        assert!(colon_dim(&p, 1, &ctx).is_err());
    }
}
