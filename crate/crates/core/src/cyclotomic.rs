//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(m)-1}` reduced modulo
//! the `m`-th cyclotomic polynomial, so two values at the same conductor are
//! equal exactly when their coefficient vectors are equal. Operands living at
//! different conductors are lifted to the lcm before any operation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduction data for one conductor.
#[derive(Debug)]
struct FieldData {
    degree: usize,
    /// `x^k mod Φ_m` for `k = 0..m`, as integer coefficient vectors.
    pow_mod: Vec<Vec<i64>>,
    /// Φ_m itself, low degree first, monic.
    phi: Vec<i64>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field(m: u32) -> Arc<FieldData> {
    if let Some(f) = cache().read().unwrap().get(&m) {
        return f.clone();
    }
    let phi = cyclotomic_polynomial(m);
    let degree = phi.len() - 1;
    let mut pow_mod = Vec::with_capacity(m as usize);
    let mut cur = vec![0i64; degree];
    if degree > 0 {
        cur[0] = 1;
    }
    for _ in 0..m {
        pow_mod.push(cur.clone());
        // multiply by x and reduce using x^deg = -Σ phi[i] x^i
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1] - top * phi[i];
        }
        cur[0] = -top * phi[0];
    }
    let data = Arc::new(FieldData {
        degree,
        pow_mod,
        phi,
    });
    cache().write().unwrap().insert(m, data.clone());
    data
}

/// The `m`-th cyclotomic polynomial with integer coefficients, low degree first.
///
/// Computed as `(x^m - 1) / Π_{k | m, k < m} Φ_k`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    assert!(m >= 1);
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for k in 1..m {
        if m.is_multiple_of(k) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(k));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    (1..=m).filter(|&k| k.gcd(&m) == 1).count() as u32
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// An element of `Q(ζ_m)` in canonical power-basis form.
#[derive(Clone)]
pub struct CycloNum {
    m: u32,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    /// Reduce `Σ raw[k] ζ_m^k` into canonical form. Indices past `m` wrap.
    pub fn canonicalize(m: u32, raw: &[BigRational]) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        let f = field(m);
        let mut coeffs = vec![BigRational::zero(); f.degree];
        for (k, r) in raw.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            accumulate(&mut coeffs, &f.pow_mod[k % m as usize], r);
        }
        Ok(CycloNum { m, coeffs })
    }

    /// Build from coefficients already in the power basis.
    pub fn new(m: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        let expected = field(m).degree;
        if coeffs.len() != expected {
            return Err(Error::BadLength {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(CycloNum { m, coeffs })
    }

    pub fn zero(m: u32) -> Self {
        CycloNum {
            m,
            coeffs: vec![BigRational::zero(); field(m).degree],
        }
    }

    pub fn from_rational(m: u32, q: BigRational) -> Self {
        let mut z = Self::zero(m);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(m: u32, n: i64) -> Self {
        Self::from_rational(m, rat(n))
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    /// `ζ_m^k`, any integer `k`.
    pub fn zeta_pow(m: u32, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        let f = field(m);
        CycloNum {
            m,
            coeffs: f.pow_mod[e].iter().map(|&c| rat(c)).collect(),
        }
    }

    pub fn zeta(m: u32) -> Self {
        Self::zeta_pow(m, 1)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value when every coefficient past the constant term vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Number of nonzero power-basis coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Sum of bit lengths of numerators and denominators; a size proxy used
    /// for pivot selection.
    pub fn bit_size(&self) -> u64 {
        self.coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.numer().bits() + c.denom().bits())
            .sum()
    }

    /// Re-express at a multiple `target` of the current conductor.
    pub fn lift(&self, target: u32) -> Result<Self> {
        if target == 0 {
            return Err(Error::ZeroConductor);
        }
        if !target.is_multiple_of(self.m) {
            return Err(Error::ConductorMismatch {
                left: self.m,
                right: target,
            });
        }
        if target == self.m {
            return Ok(self.clone());
        }
        let step = (target / self.m) as usize;
        let mut raw = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            raw[k * step] = c.clone();
        }
        Self::canonicalize(target, &raw)
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.m == other.m {
            (self.clone(), other.clone())
        } else {
            let l = self.m.lcm(&other.m);
            (self.lift(l).unwrap(), other.lift(l).unwrap())
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.m, other.m);
        let f = field(self.m);
        let n = f.degree;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let mut coeffs: Vec<BigRational> = prod[..n].to_vec();
        for (k, c) in prod.iter().enumerate().skip(n) {
            if !c.is_zero() {
                accumulate(&mut coeffs, &f.pow_mod[k % self.m as usize], c);
            }
        }
        CycloNum { m: self.m, coeffs }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_m.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.m, q.recip()));
        }
        let f = field(self.m);
        let phi: Vec<BigRational> = f.phi.iter().map(|&c| rat(c)).collect();
        let u = upoly::inverse_mod(&self.coeffs, &phi);
        let mut coeffs = u;
        coeffs.resize(f.degree, BigRational::zero());
        Ok(CycloNum { m: self.m, coeffs })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.m);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Apply `ζ_m ↦ ζ_m^t`. `t` must be coprime to `m`.
    pub fn apply_power(&self, t: u32) -> Self {
        let mut raw = vec![BigRational::zero(); self.m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = (k as u64 * t as u64 % self.m as u64) as usize;
                raw[e] += c;
            }
        }
        Self::canonicalize(self.m, &raw).expect("m > 0")
    }

    /// Complex conjugation, i.e. `σ_{-1}`.
    pub fn conj(&self) -> Self {
        self.apply_power(self.m.saturating_sub(1).max(1))
    }

    /// Floating-point evaluation at `ζ_m = exp(2πi/m)`. Not used on any exact path.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.m as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn accumulate(acc: &mut [BigRational], pattern: &[i64], scale: &BigRational) {
    for (slot, &p) in acc.iter_mut().zip(pattern) {
        match p {
            0 => {}
            1 => *slot += scale,
            -1 => *slot -= scale,
            _ => *slot += scale * BigInt::from(p),
        }
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.aligned(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycloNum {}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        if self.m != rhs.m {
            let (a, b) = self.aligned(rhs);
            return &a + &b;
        }
        CycloNum {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        if self.m != rhs.m {
            let (a, b) = self.aligned(rhs);
            return &a - &b;
        }
        CycloNum {
            m: self.m,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        if self.m != rhs.m {
            let (a, b) = self.aligned(rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $f(self, rhs: CycloNum) -> CycloNum {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $f(self, rhs: &CycloNum) -> CycloNum {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.m)?;
                    } else {
                        write!(f, "z{}^{k}", self.m)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.m, self)
    }
}

/// An element `σ_t : ζ_m ↦ ζ_m^t` of `Gal(Q(ζ_m)/Q) ≅ (Z/mZ)^×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisElement {
    m: u32,
    t: u32,
}

impl GaloisElement {
    pub fn new(m: u32, t: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroConductor);
        }
        let r = t.rem_euclid(m as i64) as u32;
        let r = if m == 1 { 1 } else { r };
        if r.gcd(&m) != 1 {
            return Err(Error::NotAUnit(t, m));
        }
        Ok(GaloisElement { m, t: r })
    }

    pub fn identity(m: u32) -> Self {
        GaloisElement { m, t: 1 }
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Representative in `1..m`.
    pub fn t(&self) -> u32 {
        self.t
    }

    /// `self ∘ other`, i.e. `t1·t2 mod m`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::ConductorMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(GaloisElement {
            m: self.m,
            t: ((self.t as u64 * other.t as u64) % self.m as u64) as u32,
        })
    }

    pub fn inverse(&self) -> Self {
        let t = (1..=self.m)
            .find(|&s| (s as u64 * self.t as u64) % self.m as u64 == 1 % self.m as u64)
            .unwrap_or(1);
        GaloisElement { m: self.m, t }
    }

    /// The whole group, ordered by representative.
    pub fn all(m: u32) -> Vec<Self> {
        if m <= 2 {
            return vec![Self::identity(m)];
        }
        (1..m)
            .filter(|t| t.gcd(&m) == 1)
            .map(|t| GaloisElement { m, t })
            .collect()
    }
}

/// Free-function form of [`CycloNum::canonicalize`].
pub fn canonicalize(m: u32, raw: &[BigRational]) -> Result<CycloNum> {
    CycloNum::canonicalize(m, raw)
}

pub fn invert(z: &CycloNum) -> Result<CycloNum> {
    z.inv()
}

/// Apply `σ` to `z`; the conductors must agree.
pub fn galois_apply(sigma: &GaloisElement, z: &CycloNum) -> Result<CycloNum> {
    if sigma.m != z.m {
        return Err(Error::ConductorMismatch {
            left: sigma.m,
            right: z.m,
        });
    }
    Ok(z.apply_power(sigma.t))
}

pub fn is_rational(z: &CycloNum) -> Option<BigRational> {
    z.as_rational()
}

/// Whether `z ∈ ζ_{2d}^{-3}·S^1_{Q(ζ_d)}`: `ζ_{2d}^3·z` is fixed by every
/// `σ_t` with `t ≡ 1 (mod d)` and `z·conj(z) = 1`.
pub fn subfield_and_circle_test(z: &CycloNum, d: u32) -> Result<bool> {
    if d == 0 {
        return Err(Error::ZeroConductor);
    }
    let m = 2 * d;
    let z = z.lift(m)?;
    let w = &CycloNum::zeta_pow(m, 3) * &z;
    let in_subfield = GaloisElement::all(m)
        .iter()
        .filter(|s| s.t % d == 1 % d)
        .all(|s| w.apply_power(s.t) == w);
    Ok(in_subfield && on_unit_circle(&z))
}

/// `z·conj(z) = 1`.
pub fn on_unit_circle(z: &CycloNum) -> bool {
    (z * &z.conj()).is_one()
}

/// Membership in `S^1_{Q(ζ_6)}`, the form in which the cubic case is usually
/// stated. Agrees with `subfield_and_circle_test(z, 3)` since `ζ_6^{-3} = -1`.
pub fn in_cubic_circle(z: &CycloNum) -> Result<bool> {
    let z = z.lift(6)?;
    Ok(on_unit_circle(&z))
}

/// Univariate polynomial helpers over `Q`, low degree first.
mod upoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
    }

    fn sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = a.to_vec();
        let len = (q.len() + b.len()).saturating_sub(1).max(out.len());
        out.resize(len, BigRational::zero());
        for (i, qi) in q.iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                out[i + j] -= qi * bj;
            }
        }
        trim(&mut out);
        out
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lead;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &c * bj;
            }
            q[shift] = c;
            trim(&mut r);
        }
        (q, r)
    }

    /// `u` with `a·u ≡ 1 (mod f)`, assuming `gcd(a, f) = 1`.
    pub fn inverse_mod(a: &[BigRational], f: &[BigRational]) -> Vec<BigRational> {
        let mut r0 = f.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::from_integer(1.into())];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub_mul(&s0, &q, &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant
        let c = r0[0].clone();
        s0.iter().map(|x| x / &c).collect()
    }
}
