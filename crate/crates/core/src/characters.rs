//! The character group of `G^n_d = μ_d^{n+2}/Δ(μ_d)`: weights, the Hodge
//! characters `B^n_d`, primitive Hodge numbers, and two small number-theory
//! facts about the least prime not dividing `2d`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimension and degree of the Fermat variety `x_0^d + … + x_{n+1}^d = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FermatContext {
    pub n: u32,
    pub d: u32,
}

impl FermatContext {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "n must be even and positive, got {n}"
            )));
        }
        if d < 2 {
            return Err(Error::InvalidArgument(format!(
                "d must be at least 2, got {d}"
            )));
        }
        Ok(FermatContext { n, d })
    }

    /// Number of homogeneous coordinates, `n + 2`.
    pub fn vars(&self) -> usize {
        self.n as usize + 2
    }

    /// Number of coordinate pairs, `n/2 + 1`.
    pub fn pairs(&self) -> usize {
        self.n as usize / 2 + 1
    }

    /// `(d-2)(n/2+1)`: degree of `P_λ` and socle of `J^{F,λ}`.
    pub fn socle(&self) -> u32 {
        (self.d - 2) * (self.n / 2 + 1)
    }

    /// `d(n/2+2) - n - 2`.
    pub fn critical_degree(&self) -> u32 {
        self.d * (self.n / 2 + 2) - self.n - 2
    }

    /// `d ≥ 2 + 6/n`, the range where linear cycles realise the minimal codimension.
    pub fn in_fake_cycle_range(&self) -> bool {
        self.n * (self.d - 2) >= 6
    }
}

/// A character `α = (a_0, …, a_{n+1})` with `Σ a_i ≡ 0 (mod d)`; entries are
/// stored as residues in `0..d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    d: u32,
    entries: Vec<u32>,
}

impl Character {
    pub fn new(d: u32, entries: &[i64]) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!(
                "d must be at least 2, got {d}"
            )));
        }
        let entries: Vec<u32> = entries
            .iter()
            .map(|&a| a.rem_euclid(d as i64) as u32)
            .collect();
        if entries.iter().map(|&a| a as u64).sum::<u64>() % d as u64 != 0 {
            return Err(Error::InvalidArgument(format!(
                "entries {entries:?} do not sum to 0 mod {d}"
            )));
        }
        Ok(Character { d, entries })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero_free(&self) -> bool {
        self.entries.iter().all(|&a| a != 0)
    }

    /// `|α| = (1/d) Σ residues`.
    pub fn weight(&self) -> u32 {
        (self.entries.iter().map(|&a| a as u64).sum::<u64>() / self.d as u64) as u32
    }

    /// `t·α`, entrywise multiplication mod `d`.
    pub fn scale(&self, t: u32) -> Character {
        Character {
            d: self.d,
            entries: self
                .entries
                .iter()
                .map(|&a| ((a as u64 * t as u64) % self.d as u64) as u32)
                .collect(),
        }
    }

    /// Membership in `B^n_d`: zero-free and `|t·α| = n/2 + 1` for every unit `t`.
    pub fn is_hodge(&self) -> bool {
        let target = (self.entries.len() as u32 - 2) / 2 + 1;
        self.is_zero_free()
            && units(self.d)
                .into_iter()
                .all(|t| self.scale(t).weight() == target)
    }

    /// Entries pair up as `(a, d-a)` after some relabelling.
    pub fn is_totally_decomposable(&self) -> bool {
        if !self.is_zero_free() {
            return false;
        }
        let mut counts = vec![0usize; self.d as usize];
        for &a in &self.entries {
            counts[a as usize] += 1;
        }
        (1..self.d as usize).all(|a| {
            let b = self.d as usize - a;
            if a == b {
                counts[a].is_multiple_of(2)
            } else {
                counts[a] == counts[b]
            }
        })
    }

    /// Exponent vector `β_i = a_i - 1` of the residue form spanning `V(α)`.
    pub fn exponent_vector(&self) -> Option<Vec<u32>> {
        self.is_zero_free()
            .then(|| self.entries.iter().map(|&a| a - 1).collect())
    }
}

pub fn weight(alpha: &Character) -> u32 {
    alpha.weight()
}

pub fn is_hodge_character(alpha: &Character) -> bool {
    alpha.is_hodge()
}

/// Units of `Z/dZ` in `1..d`.
pub fn units(d: u32) -> Vec<u32> {
    (1..d.max(2)).filter(|t| t.gcd(&d) == 1).collect()
}

/// All zero-free characters of `Ĝ^n_d`.
///
/// Iterates `(a_1, …, a_{n+1}) ∈ {1, …, d-1}^{n+1}` and sets `a_0 = -Σ mod d`,
/// skipping `a_0 = 0`.
pub fn zero_free_characters(ctx: &FermatContext) -> impl Iterator<Item = Character> + '_ {
    let d = ctx.d;
    let tail = ctx.vars() - 1;
    let total = ((d - 1) as u64).pow(tail as u32);
    (0..total).filter_map(move |mut code| {
        let mut entries = vec![0u32; tail + 1];
        let mut s = 0u64;
        for slot in entries.iter_mut().skip(1) {
            let a = (code % (d as u64 - 1)) as u32 + 1;
            code /= d as u64 - 1;
            *slot = a;
            s += a as u64;
        }
        let a0 = ((d as u64 - s % d as u64) % d as u64) as u32;
        if a0 == 0 {
            return None;
        }
        entries[0] = a0;
        Some(Character { d, entries })
    })
}

/// Primitive Hodge number `h^{p,q}_prim`: zero-free characters of weight `q+1`.
pub fn hodge_number(ctx: &FermatContext, p: u32, q: u32) -> Result<u64> {
    if p + q != ctx.n {
        return Err(Error::InvalidArgument(format!(
            "p + q must equal n = {}, got {p} + {q}",
            ctx.n
        )));
    }
    Ok(zero_free_characters(ctx)
        .filter(|a| a.weight() == q + 1)
        .count() as u64)
}

/// Whether every zero-free character of weight `n/2+1` lies in `B^n_d`,
/// i.e. the algebraic cycles have maximal rank.
pub fn picmax_check(ctx: &FermatContext) -> bool {
    let mid = ctx.n / 2 + 1;
    let mut middle = 0u64;
    let mut hodge = 0u64;
    for a in zero_free_characters(ctx) {
        if a.weight() == mid {
            middle += 1;
        }
        if a.is_hodge() {
            hodge += 1;
        }
    }
    middle == hodge
}

/// Which branch of the bound on `q` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeCase {
    /// `q < d/2`.
    Small,
    /// `q = (d+1)/2`.
    Exceptional,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
}

/// Least prime `q` with `q ∤ 2d`, together with its case. Defined for
/// `d ≥ 5`, `d ≠ 6`.
pub fn min_nondividing_prime(d: u64) -> Result<(u64, PrimeCase)> {
    if d < 5 || d == 6 {
        return Err(Error::InvalidArgument(format!(
            "min_nondividing_prime needs d >= 5 and d != 6, got {d}"
        )));
    }
    let q = (3..)
        .find(|&p| is_prime(p) && !(2 * d).is_multiple_of(p))
        .expect("infinitely many primes");
    if 2 * q < d {
        Ok((q, PrimeCase::Small))
    } else if 2 * q == d + 1 {
        Ok((q, PrimeCase::Exceptional))
    } else {
        Err(Error::Internal(format!(
            "least prime {q} not dividing 2*{d} is neither < d/2 nor (d+1)/2"
        )))
    }
}

/// Data certifying the residue identity used to rule out fake cycles for
/// `d ∉ {3, 4, 6}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueIdentity {
    pub d: u64,
    pub q: u64,
    pub k: u64,
    pub case: PrimeCase,
    /// `(1-k)·r(t) - r((k+1)t) + k·r(2t)` with `t = 2d - q`, residues mod `d`.
    pub value: i64,
}

/// The left-hand side `(1-k)·r(t) - r((k+1)t) + k·r(2t)` with `t = 2d - q`.
pub fn residue_combination(d: u64, q: u64, k: u64) -> i64 {
    let t = 2 * d - q;
    let r = |x: u64| (x % d) as i64;
    (1 - k as i64) * r(t) - r((k + 1) * t) + k as i64 * r(2 * t)
}

/// Verify the residue identity for `d`: value `-d` with `d/(k+1) < q < d/k`
/// in the small case, value `+d` with `k = 2` in the exceptional case.
pub fn villasmall_identity(d: u64) -> Result<ResidueIdentity> {
    let (q, case) = min_nondividing_prime(d)?;
    let (k, expected) = match case {
        PrimeCase::Small => {
            let k = (2..=d.saturating_sub(2))
                .find(|&k| k * q < d && d < (k + 1) * q)
                .ok_or(Error::IdentityFailed {
                    d,
                    q,
                    k: 0,
                    value: 0,
                })?;
            (k, -(d as i64))
        }
        PrimeCase::Exceptional => (2, d as i64),
    };
    let value = residue_combination(d, q, k);
    if value != expected {
        return Err(Error::IdentityFailed { d, q, k, value });
    }
    Ok(ResidueIdentity {
        d,
        q,
        k,
        case,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(d: u32, e: &[i64]) -> Character {
        Character::new(d, e).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(ch(4, &[1, 3, 2, 2]).weight(), 2);
        assert_eq!(ch(3, &[1, 1, 1, 2, 2, 2]).weight(), 3);
        assert_eq!(ch(6, &[5, 1, 3, 3]).weight(), 2);
        assert!(Character::new(4, &[1, 1, 1, 0]).is_err());
    }

    #[test]
    fn hodge_characters() {
        assert!(ch(4, &[1, 3, 2, 2]).is_hodge());
        assert!(!ch(5, &[2, 2, 2, 4]).is_hodge());
        assert!(ch(3, &[1, 1, 2, 2]).is_hodge());
        assert!(!ch(9, &[5, 5, 5, 3]).is_hodge());
        assert!(!ch(4, &[0, 1, 3, 0]).is_hodge());
    }

    #[test]
    fn decomposable() {
        assert!(ch(4, &[1, 3, 2, 2]).is_totally_decomposable());
        assert!(ch(6, &[5, 2, 1, 4]).is_totally_decomposable());
        assert!(ch(6, &[5, 1, 3, 3]).is_totally_decomposable());
        assert!(!ch(5, &[2, 2, 2, 4]).is_totally_decomposable());
    }

    #[test]
    fn hodge_numbers() {
        let c = FermatContext::new(2, 3).unwrap();
        assert_eq!(hodge_number(&c, 1, 1).unwrap(), 6);
        let c = FermatContext::new(2, 4).unwrap();
        assert_eq!(hodge_number(&c, 1, 1).unwrap(), 19);
        let c = FermatContext::new(4, 3).unwrap();
        assert_eq!(hodge_number(&c, 2, 2).unwrap(), 20);
        assert!(hodge_number(&c, 1, 1).is_err());
    }

    #[test]
    fn picmax() {
        for (d, want) in [(3, true), (4, true), (5, false), (6, true), (7, false)] {
            assert_eq!(
                picmax_check(&FermatContext::new(2, d).unwrap()),
                want,
                "d={d}"
            );
        }
    }

    #[test]
    fn primes() {
        assert_eq!(min_nondividing_prime(7).unwrap(), (3, PrimeCase::Small));
        assert_eq!(
            min_nondividing_prime(5).unwrap(),
            (3, PrimeCase::Exceptional)
        );
        assert_eq!(
            min_nondividing_prime(9).unwrap(),
            (5, PrimeCase::Exceptional)
        );
        assert_eq!(min_nondividing_prime(12).unwrap(), (5, PrimeCase::Small));
        assert!(min_nondividing_prime(4).is_err());
        assert!(min_nondividing_prime(6).is_err());
    }

    #[test]
    fn residue_identities() {
        let w = villasmall_identity(7).unwrap();
        assert_eq!((w.q, w.k, w.value), (3, 2, -7));
        let w = villasmall_identity(5).unwrap();
        assert_eq!((w.case, w.k, w.value), (PrimeCase::Exceptional, 2, 5));
        assert!(villasmall_identity(100).is_ok());
        assert!(villasmall_identity(6).is_err());
    }

    #[test]
    fn context_degrees() {
        let c = FermatContext::new(6, 3).unwrap();
        assert_eq!(
            (c.vars(), c.pairs(), c.socle(), c.critical_degree()),
            (8, 4, 4, 7)
        );
        let c = FermatContext::new(2, 6).unwrap();
        assert_eq!((c.socle(), c.critical_degree()), (8, 14));
        assert!(FermatContext::new(3, 4).is_err());
        assert!(!FermatContext::new(2, 3).unwrap().in_fake_cycle_range());
    }
}
