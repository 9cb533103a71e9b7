//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use fermat_cycles::characters::FermatContext;
use fermat_cycles::fake_cycles::{solve_spec, FakeCycleSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (1..=k).fold(1u64, |acc, i| acc * (n - k + i) / i)
}

/// All exponent vectors of degree `e` in `k` variables (unordered, no caps).
fn all_exponents(k: usize, e: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![e]];
    }
    (0..=e)
        .flat_map(|a| {
            all_exponents(k - 1, e - a).into_iter().map(move |mut v| {
                v.insert(0, a);
                v
            })
        })
        .collect()
}

/// `dim (J^F : P_λ)_e` by substitution: `x_{2j} ↦ c_{2j}·y_j`, `x_{2j+1} ↦ y_j`
/// turns `S/⟨ℓ_j, x_i^{d-1}⟩` into `C[y_0, …, y_{n/2}]/(y_j^{d-1})`, whose
/// degree-`e` part is spanned by the images with every exponent `≤ d-2`.
pub fn substitution_colon_dim(ctx: &FermatContext, e: u32) -> u64 {
    let nv = ctx.vars();
    let images: BTreeSet<Vec<u32>> = all_exponents(nv, e)
        .into_iter()
        .map(|x| x.chunks(2).map(|p| p[0] + p[1]).collect::<Vec<u32>>())
        .filter(|y| y.iter().all(|&a| a <= ctx.d - 2))
        .collect();
    binomial(e as u64 + nv as u64 - 1, nv as u64 - 1) - images.len() as u64
}

/// `h^{n-p,p}_prim(X^n_d)`: coefficient of `t^{d(p+1)-n-2}` in
/// `(1 + t + … + t^{d-2})^{n+2}`.
pub fn hodge_generating_function(n: u32, d: u32, p: u32) -> u64 {
    let target = d as i64 * (p as i64 + 1) - n as i64 - 2;
    if target < 0 {
        return 0;
    }
    let mut poly = vec![1u64];
    for _ in 0..n + 2 {
        let mut next = vec![0u64; poly.len() + d as usize - 2];
        for (i, &a) in poly.iter().enumerate() {
            for k in 0..=(d - 2) as usize {
                next[i + k] += a;
            }
        }
        poly = next;
    }
    poly.get(target as usize).copied().unwrap_or(0)
}

pub const CASES: [(u32, u32, &str, &str); 3] = [
    (6, 3, "cubic-all-ones", "cubic-true-linear"),
    (4, 4, "quartic-pythagorean", "quartic-true-linear"),
    (2, 6, "sextic-pythagorean", "sextic-true-linear"),
];

/// The fake preset plus random fake specs, all distinct, unsolved.
pub fn fake_specs(n: u32, d: u32, preset: &str, count: usize, seed: u64) -> Vec<FakeCycleSpec> {
    let ctx = FermatContext::new(n, d).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![FakeCycleSpec::preset(preset).unwrap()];
    while out.len() < count {
        let s = FakeCycleSpec::random(ctx, &mut rng).unwrap();
        if !out.iter().any(|o| o.c() == s.c()) {
            out.push(s);
        }
    }
    out
}

pub fn solved(spec: FakeCycleSpec) -> FakeCycleSpec {
    solve_spec(spec).unwrap()
}

pub fn rat(x: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(x.into())
}
