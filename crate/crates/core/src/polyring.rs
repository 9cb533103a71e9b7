//! Sparse multivariate polynomials over [`CycloNum`] and the Fermat Jacobian
//! ring `R^F = S/⟨x_i^{d-1}⟩`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::characters::FermatContext;
use crate::cyclotomic::{subfield_and_circle_test, CycloNum};
use crate::error::{Error, Result};

pub type Exponents = Vec<u32>;

/// Graded lexicographic order with `x_0 > x_1 > …`, largest first.
pub fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, CycloNum>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exps: Exponents, coeff: CycloNum) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    pub fn constant(nvars: usize, c: CycloNum) -> Self {
        Poly::monomial(vec![0; nvars], c)
    }

    /// `x_i` with coefficient `1 ∈ Q(ζ_m)`.
    pub fn var(nvars: usize, i: usize, m: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, CycloNum::one(m))
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, CycloNum)>,
    ) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: CycloNum) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                let s = &*c + &coeff;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &CycloNum)> {
        self.terms.iter()
    }

    /// Terms in graded-lex order, leading term first.
    pub fn grlex_terms(&self) -> Vec<(&Exponents, &CycloNum)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_desc(a.0, b.0));
        v
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&CycloNum> {
        self.terms.get(exps)
    }

    /// Total degree of the largest term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(first) => degs.all(|x| x == first),
        }
    }

    pub fn scale(&self, c: &CycloNum) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, a)| (e.clone(), a * c)),
        )
    }

    pub fn scale_rat(&self, q: &BigRational) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, a)| (e.clone(), a.scale(q))),
        )
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: &[u32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, c.scale(&BigRational::from_integer(BigInt::from(e[i]))));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = match self.terms.values().next() {
            Some(c) => Poly::constant(self.nvars, CycloNum::one(c.conductor())),
            None => {
                return if k == 0 {
                    panic!("0^0")
                } else {
                    Poly::zero(self.nvars)
                }
            }
        };
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Parse expressions such as `x1*x3 + x5*x7` or `2/3*x0^2*x1 - x2`.
    /// Coefficients are rational and land at conductor `m`.
    pub fn parse(expr: &str, nvars: usize, m: u32) -> Result<Poly> {
        let mut p = Poly::zero(nvars);
        let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && !s[..idx].ends_with('^') {
                if !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                } else if idx != 0 {
                    return Err(Error::Parse(format!("dangling sign in {expr:?}")));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {expr:?}")));
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            let mut coeff = CycloNum::one(m);
            let mut exps = vec![0u32; nvars];
            for factor in t.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, pow) = match rest.split_once('^') {
                        Some((i, k)) => (i, k),
                        None => (rest, "1"),
                    };
                    let i: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                    let k: u32 = pow
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {factor:?}")))?;
                    if i >= nvars {
                        return Err(Error::Parse(format!(
                            "x{i} out of range for {nvars} variables"
                        )));
                    }
                    exps[i] += k;
                } else if let Some(rest) = factor.strip_prefix('z') {
                    coeff = &coeff * &parse_zeta(rest, m)?;
                } else {
                    coeff = coeff.scale(&parse_rational(factor)?);
                }
            }
            if neg {
                coeff = -coeff;
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }
}

/// Parse an element of `Q(ζ_m)` written as a sum of terms such as
/// `3/5*z8 - 4/5*z8^3` or `2*z4`.
pub fn parse_cyclotomic(expr: &str, m: u32) -> Result<CycloNum> {
    let p = Poly::parse(expr, 0, m)?;
    Ok(p.coeff(&[]).cloned().unwrap_or_else(|| CycloNum::zero(m)))
}

/// `z`, `zM`, `z^k` or `zM^k`: a power of `ζ_M` (default `M = m`), `M | m`.
fn parse_zeta(rest: &str, m: u32) -> Result<CycloNum> {
    let bad = || Error::Parse(format!("bad root of unity z{rest:?}"));
    let (base, pow) = match rest.split_once('^') {
        Some((b, k)) => (b, k.parse::<i64>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let order: u32 = if base.is_empty() {
        m
    } else {
        base.parse().map_err(|_| bad())?
    };
    if order == 0 || !m.is_multiple_of(order) {
        return Err(Error::Parse(format!(
            "z{order} does not lie in Q(zeta_{m})"
        )));
    }
    Ok(CycloNum::zeta_pow(m, pow * (m / order) as i64))
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().map_err(|_| bad())?;
            let b: BigInt = b.parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl<'a> std::ops::Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.grlex_terms().into_iter().enumerate() {
            let rational = c.as_rational();
            let negative = rational.as_ref().is_some_and(|r| r.is_negative());
            let c = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = e.iter().all(|&a| a == 0);
            let mut sep = "";
            if constant || !c.is_one() {
                if rational.is_some() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
                sep = "*";
            }
            for (i, &a) in e.iter().enumerate() {
                match a {
                    0 => continue,
                    1 => write!(f, "{sep}x{i}")?,
                    _ => write!(f, "{sep}x{i}^{a}")?,
                }
                sep = "*";
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// All exponent vectors of total degree `deg` in `nvars` variables, each
/// entry at most `cap`, in graded-lex order (largest first).
pub fn monomials_capped(nvars: usize, deg: u32, cap: u32) -> Vec<Exponents> {
    fn rec(i: usize, left: u32, cap: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        let n = cur.len();
        if i == n - 1 {
            if left <= cap {
                cur[i] = left;
                out.push(cur.clone());
            }
            return;
        }
        for a in (0..=left.min(cap)).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cap, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, deg, cap, &mut vec![0; nvars], &mut out);
    out
}

/// Monomial basis of `S_e`.
pub fn monomials(nvars: usize, deg: u32) -> Vec<Exponents> {
    monomials_capped(nvars, deg, deg)
}

/// Monomial basis of `R^F_e`: every exponent at most `d-2`.
pub fn jacobian_monomials(ctx: &FermatContext, deg: u32) -> Vec<Exponents> {
    monomials_capped(ctx.vars(), deg, ctx.d - 2)
}

/// `dim R^F_e`, read off `((1 - t^{d-1})/(1 - t))^{n+2}`.
pub fn jacobian_dimension(ctx: &FermatContext, deg: u32) -> u64 {
    // (1 + t + … + t^{d-2})^{n+2}, truncated at degree `deg`
    let mut series = vec![0u64; deg as usize + 1];
    series[0] = 1;
    for _ in 0..ctx.vars() {
        let mut next = vec![0u64; deg as usize + 1];
        for (i, &s) in series.iter().enumerate() {
            if s == 0 {
                continue;
            }
            for k in 0..=(ctx.d - 2) as usize {
                if i + k <= deg as usize {
                    next[i + k] += s;
                }
            }
        }
        series = next;
    }
    series[deg as usize]
}

/// A polynomial all of whose exponents are at most `d-2`: the canonical
/// representative of a class in `R^F`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobianClass(Poly);

impl JacobianClass {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Drop every monomial with an exponent `≥ d-1`.
pub fn reduce_mod_jacobian(p: &Poly, ctx: &FermatContext) -> JacobianClass {
    let cap = ctx.d - 2;
    JacobianClass(Poly {
        nvars: p.nvars,
        terms: p
            .terms
            .iter()
            .filter(|(e, _)| e.iter().all(|&a| a <= cap))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect(),
    })
}

/// `Σ_{k=0}^{d-2} x_a^{d-2-k} (c·x_b)^k`, the quotient
/// `(x_a^{d-1} - (c x_b)^{d-1}) / (x_a - c x_b)`.
pub fn pair_factor(nvars: usize, a: usize, b: usize, c: &CycloNum, d: u32) -> Poly {
    let mut p = Poly::zero(nvars);
    let mut ck = CycloNum::one(c.conductor());
    for k in 0..=(d - 2) {
        let mut e = vec![0; nvars];
        e[a] = d - 2 - k;
        e[b] = k;
        p.add_term(e, ck.clone());
        ck = &ck * c;
    }
    p
}

/// The linear form `x_{2j} - c_{2j}·x_{2j+1}` for the zero-based pair `j`.
pub fn pair_linear_form(nvars: usize, j: usize, c: &CycloNum) -> Poly {
    let mut p = Poly::zero(nvars);
    let mut e = vec![0; nvars];
    e[2 * j] = 1;
    p.add_term(e.clone(), CycloNum::one(c.conductor()));
    e[2 * j] = 0;
    e[2 * j + 1] = 1;
    p.add_term(e, -c);
    p
}

/// `c_λ · Π_j pair_factor(x_{2j}, x_{2j+1}, c_{2j})`.
///
/// `c` lists `c_0, c_2, …, c_n`; each must lie in `ζ_{2d}^{-3}·S^1_{Q(ζ_d)}`.
pub fn p_lambda(ctx: &FermatContext, c: &[CycloNum], c_lambda: &CycloNum) -> Result<Poly> {
    if c_lambda.is_zero() {
        return Err(Error::InvalidArgument("c_lambda must be nonzero".into()));
    }
    if c.len() != ctx.pairs() {
        return Err(Error::InvalidArgument(format!(
            "expected {} pair coefficients, got {}",
            ctx.pairs(),
            c.len()
        )));
    }
    for (j, cj) in c.iter().enumerate() {
        if !subfield_and_circle_test(cj, ctx.d)? {
            return Err(Error::InvalidArgument(format!(
                "c_{} = {cj} is not in zeta_{}^-3 * S^1",
                2 * j,
                2 * ctx.d
            )));
        }
    }
    Ok(p_lambda_unchecked(ctx, c, c_lambda))
}

pub(crate) fn p_lambda_unchecked(ctx: &FermatContext, c: &[CycloNum], c_lambda: &CycloNum) -> Poly {
    let nv = ctx.vars();
    let mut p = Poly::constant(nv, c_lambda.clone());
    for (j, cj) in c.iter().enumerate() {
        p = &p * &pair_factor(nv, 2 * j, 2 * j + 1, cj, ctx.d);
    }
    p
}

/// How monomials of `w ∈ J^F` are distributed among the `Q_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecomposeStrategy {
    /// Each monomial goes to the smallest `i` with exponent `≥ d-1`.
    SmallestIndex,
    /// Prefer `x_{2j}`, then `x_{2j+1}` for the zero-based pair `j`; fall
    /// back to the smallest index.
    Paired { pair: usize },
}

/// Write `w = Σ_i Q_i · d·x_i^{d-1}`.
pub fn jacobian_decompose(
    w: &Poly,
    ctx: &FermatContext,
    strategy: DecomposeStrategy,
) -> Result<Vec<Poly>> {
    let nv = ctx.vars();
    let top = ctx.d - 1;
    let inv_d = BigRational::new(BigInt::one(), BigInt::from(ctx.d));
    let mut q = vec![Poly::zero(nv); nv];
    for (e, c) in w.terms() {
        let preferred = match strategy {
            DecomposeStrategy::SmallestIndex => None,
            DecomposeStrategy::Paired { pair } => [2 * pair, 2 * pair + 1]
                .into_iter()
                .find(|&i| i < nv && e[i] >= top),
        };
        let i = preferred
            .or_else(|| (0..nv).find(|&i| e[i] >= top))
            .ok_or(Error::NotInJacobianIdeal)?;
        let mut f = e.clone();
        f[i] -= top;
        q[i].add_term(f, c.scale(&inv_d));
    }
    Ok(q)
}

/// `Σ_i Q_i · d·x_i^{d-1}`.
pub fn jacobian_recompose(q: &[Poly], ctx: &FermatContext) -> Poly {
    let nv = ctx.vars();
    let d = BigRational::from_integer(BigInt::from(ctx.d));
    let mut out = Poly::zero(nv);
    for (i, qi) in q.iter().enumerate() {
        let mut e = vec![0; nv];
        e[i] = ctx.d - 1;
        for (f, c) in qi.shift(&e).terms() {
            out.add_term(f.clone(), c.scale(&d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycloNum;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn mono(e: &[u32], m: u32) -> Poly {
        Poly::monomial(e.to_vec(), CycloNum::one(m))
    }

    #[test]
    fn reduction_examples() {
        let c3 = FermatContext::new(2, 3).unwrap();
        assert!(reduce_mod_jacobian(&mono(&[2, 1, 0, 0], 6), &c3).is_zero());
        let c4 = FermatContext::new(2, 4).unwrap();
        let p = mono(&[2, 2, 2, 0], 8);
        assert_eq!(reduce_mod_jacobian(&p, &c4).poly(), &p);
        let c6 = FermatContext::new(2, 6).unwrap();
        assert!(reduce_mod_jacobian(&mono(&[5, 1, 0, 0], 12), &c6).is_zero());
    }

    #[test]
    fn p_lambda_cubic_all_ones() {
        let ctx = FermatContext::new(6, 3).unwrap();
        let c = vec![CycloNum::one(6); 4];
        let p = p_lambda(&ctx, &c, &CycloNum::one(6)).unwrap();
        let mut want = Poly::constant(8, CycloNum::one(6));
        for j in 0..4 {
            want = &want * &(&Poly::var(8, 2 * j, 6) + &Poly::var(8, 2 * j + 1, 6));
        }
        assert_eq!(p, want);
        assert_eq!(p.num_terms(), 16);
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(4));
    }

    #[test]
    fn p_lambda_quartic_factor_shape() {
        let c = CycloNum::zeta(8);
        let f = pair_factor(2, 0, 1, &c, 4);
        let want = Poly::from_terms(
            2,
            [
                (vec![2, 0], CycloNum::one(8)),
                (vec![1, 1], c.clone()),
                (vec![0, 2], &c * &c),
            ],
        );
        assert_eq!(f, want);
    }

    #[test]
    fn p_lambda_sextic_term_count_and_errors() {
        let ctx = FermatContext::new(2, 6).unwrap();
        let c = vec![CycloNum::zeta(12); 2];
        let p = p_lambda(&ctx, &c, &CycloNum::one(12)).unwrap();
        assert_eq!(p.num_terms(), 25);
        for (e, _) in p.terms() {
            assert_eq!(e[0] + e[1], 4);
            assert_eq!(e[2] + e[3], 4);
        }
        assert!(p_lambda(&ctx, &c, &CycloNum::zero(12)).is_err());
        let bad = vec![CycloNum::from_int(12, 2), CycloNum::zeta(12)];
        assert!(p_lambda(&ctx, &bad, &CycloNum::one(12)).is_err());
    }

    #[test]
    fn telescoping() {
        let ctx = FermatContext::new(4, 4).unwrap();
        let c = vec![
            CycloNum::zeta(8),
            CycloNum::zeta_pow(8, 3),
            CycloNum::zeta(8),
        ];
        let p = p_lambda(&ctx, &c, &CycloNum::one(8)).unwrap();
        for j in 0..3 {
            let lhs = &p * &pair_linear_form(6, j, &c[j]);
            let mut rest = Poly::constant(6, CycloNum::one(8));
            for (k, ck) in c.iter().enumerate() {
                if k != j {
                    rest = &rest * &pair_factor(6, 2 * k, 2 * k + 1, ck, 4);
                }
            }
            let mut ea = vec![0; 6];
            ea[2 * j] = 3;
            let mut eb = vec![0; 6];
            eb[2 * j + 1] = 3;
            let diff =
                &Poly::monomial(ea, CycloNum::one(8)) - &Poly::monomial(eb, c[j].pow(3).unwrap());
            assert_eq!(lhs, &rest * &diff);
        }
    }

    #[test]
    fn decompose_examples() {
        let c4 = FermatContext::new(2, 4).unwrap();
        let w = mono(&[3, 1, 0, 0], 8);
        let qs = jacobian_decompose(&w, &c4, DecomposeStrategy::SmallestIndex).unwrap();
        assert_eq!(qs[0], mono(&[0, 1, 0, 0], 8).scale_rat(&q(1, 4)));
        assert!(qs[1..].iter().all(Poly::is_zero));

        let c3 = FermatContext::new(2, 3).unwrap();
        let w = mono(&[2, 2, 0, 0], 6);
        let qs = jacobian_decompose(&w, &c3, DecomposeStrategy::SmallestIndex).unwrap();
        assert_eq!(qs[0], mono(&[0, 2, 0, 0], 6).scale_rat(&q(1, 3)));
        assert!(qs[1].is_zero());
        let qs = jacobian_decompose(&w, &c3, DecomposeStrategy::Paired { pair: 0 }).unwrap();
        assert!(!qs[0].is_zero());
        assert_eq!(jacobian_recompose(&qs, &c3), w);

        let w = mono(&[1, 1, 1, 1], 6);
        assert_eq!(
            jacobian_decompose(&w, &c3, DecomposeStrategy::SmallestIndex).unwrap_err(),
            Error::NotInJacobianIdeal
        );
    }

    #[test]
    fn monomial_counts() {
        for (n, d) in [(2u32, 3u32), (2, 4), (4, 3), (2, 6), (4, 4)] {
            let ctx = FermatContext::new(n, d).unwrap();
            for e in 0..=((d - 2) * (n + 2) + 1) {
                assert_eq!(
                    jacobian_monomials(&ctx, e).len() as u64,
                    jacobian_dimension(&ctx, e),
                    "n={n} d={d} e={e}"
                );
            }
        }
        assert_eq!(monomials(4, 6).len(), 84);
        assert_eq!(monomials(8, 3).len(), 120);
        let m = monomials(3, 2);
        assert_eq!(m[0], vec![2, 0, 0]);
        assert_eq!(m.last().unwrap(), &vec![0, 0, 2]);
    }

    #[test]
    fn parse_and_derivative() {
        let p = Poly::parse("x1*x3 + x5*x7", 8, 6).unwrap();
        assert_eq!(p.num_terms(), 2);
        let p = Poly::parse("-2/3*x0^2*x1 + x2 - 1", 3, 4).unwrap();
        let dp = p.derivative(0);
        assert_eq!(dp, Poly::parse("-4/3*x0*x1", 3, 4).unwrap());
        assert!(Poly::parse("x9", 3, 4).is_err());
        assert!(Poly::parse("x1 +", 3, 4).is_err());
        assert!(Poly::parse("", 3, 4).is_err());
    }

    #[test]
    fn roots_of_unity_in_expressions() {
        let z = parse_cyclotomic("3/5*z8 + 4/5*z8^3", 8).unwrap();
        let want = &CycloNum::zeta(8).scale(&q(3, 5)) + &CycloNum::zeta_pow(8, 3).scale(&q(4, 5));
        assert_eq!(z, want);
        assert_eq!(parse_cyclotomic("z4", 8).unwrap(), CycloNum::zeta_pow(8, 2));
        assert_eq!(
            parse_cyclotomic("-z^2", 6).unwrap(),
            -CycloNum::zeta_pow(6, 2)
        );
        assert!(parse_cyclotomic("z5", 8).is_err());
        let p = Poly::parse("2*z6*x0*x1 - x1^2", 2, 6).unwrap();
        assert_eq!(p.coeff(&[1, 1]), Some(&CycloNum::zeta(6).scale(&q(2, 1))));
    }

    #[test]
    fn display_rational_polys_reparse() {
        let p = Poly::parse("-2/3*x0^2*x1 + x2 - 1", 3, 4).unwrap();
        let s = p.to_string();
        assert_eq!(s, "-2/3*x0^2*x1 + x2 - 1");
        assert_eq!(Poly::parse(&s, 3, 4).unwrap(), p);
    }
}
