//! End-to-end acceptance checks; prints one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::*;
use fermat_cycles::characters::{
    hodge_number, min_nondividing_prime, picmax_check, villasmall_identity, FermatContext,
    PrimeCase,
};
use fermat_cycles::cyclotomic::{CycloNum, GaloisElement};
use fermat_cycles::fake_cycles::{
    certify_hodge, galois_invariance, CertificateOutcome, FakeCycleSpec,
};
use fermat_cycles::periods::{
    galois_on_omega, is_paired_decomposable, normalized_omega_period, vanishing_cycles,
};
use fermat_cycles::polyring::{
    monomials, monomials_capped, pair_linear_form, DecomposeStrategy, Poly,
};
use fermat_cycles::qform::{
    nonreduced_witness, qr_closed_form, qr_in, qr_raw, witness_candidates, CriticalQuotient,
};
use fermat_cycles::tangent::{colon_dim, expected_codim, idealfake_compare, tangent_codim};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let el = t.elapsed();
    ensure(el < limit, || {
        format!("{what} took {el:?}, limit {limit:?}")
    })
}

/// Five fake specs per case (preset first), solved.
fn certified_specs() -> Vec<FakeCycleSpec> {
    CASES
        .iter()
        .enumerate()
        .flat_map(|(k, &(n, d, fake, _))| fake_specs(n, d, fake, 5, 100 + k as u64))
        .map(solved)
        .collect()
}

fn criterion_1() -> Check {
    let mut total = 0;
    for (k, &(n, d, fake, _)) in CASES.iter().enumerate() {
        let expected = (d as usize - 1).pow(n + 1);
        for spec in fake_specs(n, d, fake, 5, 100 + k as u64) {
            ensure(!spec.is_true_linear(), || "sample is true-linear".into())?;
            let t = Instant::now();
            let spec = solved(spec);
            let cert = certify_hodge(&spec).map_err(|e| e.to_string())?;
            let inv = galois_invariance(&spec).map_err(|e| e.to_string())?;
            ensure(inv == cert.is_certified(), || {
                format!("(d,n)=({d},{n}): galois invariance {inv} disagrees with certificate")
            })?;
            match &cert.outcome {
                CertificateOutcome::Certified { periods } => {
                    ensure(periods.len() == expected, || {
                        format!(
                            "(d,n)=({d},{n}): {} periods, expected {expected}",
                            periods.len()
                        )
                    })?;
                    total += periods.len();
                }
                CertificateOutcome::Irrational { beta_prime, value } => {
                    return Err(format!(
                        "(d,n)=({d},{n}) c={:?}: period at {:?} is {value}",
                        spec.c(),
                        beta_prime.entries()
                    ))
                }
            }
            within(t, Duration::from_secs(60), "solve+certify")?;
        }
    }
    Ok(format!("15 specs certified, {total} rational periods"))
}

fn criterion_2() -> Check {
    let mut detail = Vec::new();
    for (k, &(n, d, fake, _)) in CASES.iter().enumerate() {
        let t = Instant::now();
        let ctx = FermatContext::new(n, d).unwrap();
        let want = [4u64, 6, 3][k];
        ensure(expected_codim(&ctx) == want, || {
            format!("formula gives {}", expected_codim(&ctx))
        })?;
        for spec in fake_specs(n, d, fake, 2, 200 + k as u64)
            .into_iter()
            .map(solved)
        {
            let codim = tangent_codim(&spec).map_err(|e| e.to_string())?;
            ensure(codim == want, || {
                format!("(d,n)=({d},{n}): codim {codim}, expected {want}")
            })?;
            for e in 1..=d {
                let eq = idealfake_compare(&spec, e).map_err(|e| e.to_string())?;
                ensure(eq, || {
                    format!("(d,n)=({d},{n}): ideals differ in degree {e}")
                })?;
            }
        }
        within(t, Duration::from_secs(120), "tangent case")?;
        detail.push(format!("({d},{n})->{want}"));
    }
    Ok(format!("codims {}", detail.join(" ")))
}

fn criterion_3() -> Check {
    let mut found = 0;
    let t = Instant::now();
    for spec in certified_specs() {
        let w = nonreduced_witness(&spec)
            .map_err(|e| e.to_string())?
            .ok_or("no witness for a fake spec")?;
        ensure(w.class.iter().any(|c| !c.is_zero()), || {
            "zero class reported".into()
        })?;
        found += 1;
    }
    within(t, Duration::from_secs(600), "witness searches")?;
    for &(n, d, _, linear) in &CASES {
        let spec = solved(FakeCycleSpec::preset(linear).unwrap());
        ensure(
            nonreduced_witness(&spec)
                .map_err(|e| e.to_string())?
                .is_none(),
            || format!("witness reported for true-linear ({d},{n})"),
        )?;
        let ctx = spec.ctx();
        for dp in witness_candidates(ctx.vars(), d, spec.conductor()) {
            for i in 0..ctx.pairs() {
                let cf = qr_closed_form(i, &dp, &spec).map_err(|e| e.to_string())?;
                ensure(cf.is_zero(), || {
                    format!("closed form nonzero for true-linear ({d},{n})")
                })?;
            }
        }
    }
    Ok(format!(
        "{found} witnesses; closed form vanishes on all true-linear candidates"
    ))
}

/// Random `D` of degree `d-1` with no `x_{2i}^{d-1}` or `x_{2i+1}^{d-1}` term.
fn random_d(rng: &mut ChaCha8Rng, spec: &FakeCycleSpec, pair: usize) -> Poly {
    let ctx = spec.ctx();
    let d = ctx.d;
    let allowed: Vec<Vec<u32>> = monomials(ctx.vars(), d - 1)
        .into_iter()
        .filter(|e| e[2 * pair] < d - 1 && e[2 * pair + 1] < d - 1)
        .collect();
    loop {
        let terms = (0..rng.gen_range(1..=3)).map(|_| {
            let e = allowed[rng.gen_range(0..allowed.len())].clone();
            let c = CycloNum::zeta_pow(spec.conductor(), rng.gen_range(0..spec.conductor() as i64))
                .scale(&rat(rng.gen_range(1..=5i64)));
            (e, c)
        });
        let p = Poly::from_terms(ctx.vars(), terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for &(_, _, fake, _) in &CASES {
        let spec = solved(FakeCycleSpec::preset(fake).unwrap());
        let quotient = CriticalQuotient::new(&spec).map_err(|e| e.to_string())?;
        let nv = spec.ctx().vars();
        for _ in 0..10 {
            let i = rng.gen_range(0..spec.ctx().pairs());
            let dp = random_d(&mut rng, &spec, i);
            let g = &pair_linear_form(nv, i, &spec.c()[i]) * &dp;
            let raw = qr_raw(&g, &g, &spec, DecomposeStrategy::Paired { pair: i })
                .map_err(|e| e.to_string())?;
            let closed = qr_closed_form(i, &dp, &spec).map_err(|e| e.to_string())?;
            ensure(raw == closed, || {
                format!("{fake}: raw != closed form for i={i}, D={dp}")
            })?;
            let a = qr_in(&g, &g, &spec, DecomposeStrategy::SmallestIndex, &quotient)
                .map_err(|e| e.to_string())?;
            let b = quotient.class(&closed).map_err(|e| e.to_string())?;
            ensure(a.class == b, || {
                format!("{fake}: smallest-index class differs for D={dp}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} random (i, D) pairs agree"))
}

fn criterion_5() -> Check {
    let t = Instant::now();
    for (n, d, p, want) in [(2u32, 3u32, 1u32, 6u64), (2, 4, 1, 19), (4, 3, 2, 20)] {
        let ctx = FermatContext::new(n, d).unwrap();
        let h = hodge_number(&ctx, p, n - p).map_err(|e| e.to_string())?;
        let gf = hodge_generating_function(n, d, p);
        ensure(h == want && gf == want, || {
            format!("h^{{{p},{}}}(X^{n}_{d}): enumeration {h}, generating function {gf}, expected {want}", n - p)
        })?;
        for p in 0..=n {
            let h = hodge_number(&ctx, p, n - p).map_err(|e| e.to_string())?;
            ensure(h == hodge_generating_function(n, d, n - p), || {
                format!(
                    "h^{{{p},{}}}(X^{n}_{d}) disagrees with the generating function",
                    n - p
                )
            })?;
        }
    }
    for d in 3..=10u32 {
        let got = picmax_check(&FermatContext::new(2, d).unwrap());
        let want = matches!(d, 3 | 4 | 6);
        ensure(got == want, || format!("picmax(d={d}) = {got}"))?;
    }
    within(t, Duration::from_secs(10), "combinatorics")?;
    Ok("h = 6, 19, 20; picmax exactly for d in {3,4,6}".into())
}

fn criterion_6() -> Check {
    let t = Instant::now();
    let mut exceptional = Vec::new();
    for d in (5..=10_000u64).filter(|&d| d != 6) {
        let (_, case) = min_nondividing_prime(d).map_err(|e| e.to_string())?;
        if case == PrimeCase::Exceptional {
            exceptional.push(d);
        }
    }
    ensure(exceptional == [5, 9], || {
        format!("exceptional cases {exceptional:?}")
    })?;
    for d in (5..=100u64).filter(|&d| d != 6) {
        villasmall_identity(d).map_err(|e| e.to_string())?;
    }
    within(t, Duration::from_secs(10), "number theory")?;
    Ok("exceptional d = [5, 9]; identity holds for 5 <= d <= 100".into())
}

fn criterion_7() -> Check {
    let mut checks = 0;
    for &(n, d, _, _) in &CASES {
        let ctx = FermatContext::new(n, d).unwrap();
        let m = 2 * d;
        let cycles = vanishing_cycles(&ctx);
        let betas: Vec<Vec<u32>> =
            monomials_capped(ctx.vars(), (d - 2) * ctx.pairs() as u32, d - 2)
                .into_iter()
                .filter(|b| is_paired_decomposable(b, d))
                .collect();
        ensure(
            betas.len() == (d as usize - 1).pow(ctx.pairs() as u32),
            || format!("({d},{n}): {} decomposable betas", betas.len()),
        )?;
        for beta in &betas {
            for sigma in GaloisElement::all(m) {
                let (sign, gamma) =
                    galois_on_omega(beta, &sigma, &ctx).map_err(|e| e.to_string())?;
                for bp in &cycles {
                    let lhs = normalized_omega_period(beta, bp, &ctx)
                        .map_err(|e| e.to_string())?
                        .apply_power(sigma.t());
                    let rhs = normalized_omega_period(&gamma, bp, &ctx)
                        .map_err(|e| e.to_string())?
                        .scale(&rat(sign as i64));
                    ensure(lhs == rhs, || {
                        format!(
                            "({d},{n}) beta={beta:?} t={} beta'={:?}",
                            sigma.t(),
                            bp.entries()
                        )
                    })?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} period identities"))
}

fn criterion_8() -> Check {
    let mut checks = 0;
    for spec in certified_specs() {
        let ctx = *spec.ctx();
        let p = spec.p_lambda().map_err(|e| e.to_string())?;
        for e in 0..=ctx.socle() {
            let got = colon_dim(&p, e, &ctx).map_err(|e| e.to_string())?;
            let want = substitution_colon_dim(&ctx, e);
            ensure(got == want, || {
                format!(
                    "(d,n)=({},{}) e={e}: colon {got}, oracle {want}",
                    ctx.d, ctx.n
                )
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} graded pieces agree"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 fake-cycle existence", criterion_1),
        ("2 tangent codimension", criterion_2),
        ("3 non-reducedness", criterion_3),
        ("4 closed-form agreement", criterion_4),
        ("5 combinatorics", criterion_5),
        ("6 number theory", criterion_6),
        ("7 galois/period consistency", criterion_7),
        ("8 oracle equivalence", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{:.2?}]", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{:.2?}]", t.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
