//! Command-line front end.
//!
//! Every subcommand is first turned into a [`RunConfig`], which is also the
//! format of `--config` files, so a run can be replayed from its report.
//! Exit status: 0 success, 1 a mathematical check failed, 2 bad usage.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::characters::{
    hodge_number, min_nondividing_prime, picmax_check, villasmall_identity, FermatContext,
    PrimeCase,
};
use crate::cyclotomic::CycloNum;
use crate::error::Error;
use crate::fake_cycles::{
    certify_hodge, cocycle_phi, galois_invariance, no_fake_cycles_witness, solve_c_lambda,
    CertificateOutcome, FakeCycleSpec, PRESETS,
};
use crate::periods::{normalized_period, period_omega_beta, vanishing_cycles};
use crate::polyring::{pair_linear_form, parse_cyclotomic, DecomposeStrategy, Poly};
use crate::qform::{nonreduced_witness, qr, qr_closed_form};
use crate::report::*;
use crate::tangent::{
    colon_dim, expected_codim, gorenstein_check, idealfake_compare, tangent_codim,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    #[default]
    HodgeNumbers,
    Picmax,
    LemmaCheck,
    Periods,
    FakeCycle,
    Tangent,
    Qform,
    Schema,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// Where the coefficients `c_0, c_2, …, c_n` come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecSource {
    Preset(String),
    /// Expressions such as `3/5*z8 + 4/5*z8^3`, in `Q(ζ_{2d})`.
    Inline(Vec<String>),
    /// A spec, or any report embedding one.
    File(PathBuf),
}

/// One complete invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandName,
    pub d: Option<u32>,
    pub n: Option<u32>,
    pub source: Option<SpecSource>,
    pub c_lambda: Option<String>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    /// Worker threads; the rayon default when unset.
    pub threads: Option<usize>,
    pub solve: bool,
    pub certify: bool,
    pub approx: bool,
    pub degree: Option<u32>,
    pub compare_idealfake: bool,
    pub hilbert_function: bool,
    pub pair: Option<usize>,
    pub d_poly: Option<String>,
    pub witness: bool,
    pub beta: Option<Vec<u32>>,
    pub prime_max: Option<u64>,
    pub identity_max: Option<u64>,
    pub witness_max: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Math(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            CliError::Usage(e.to_string())
        } else {
            CliError::Math(e.to_string())
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Report(Box<Report>),
    Schema(Value),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub output: Output,
    /// False when a requested mathematical check failed.
    pub success: bool,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

fn context(config: &RunConfig) -> Result<FermatContext, CliError> {
    let d = config.d.ok_or_else(|| usage("--d is required"))?;
    let n = config.n.ok_or_else(|| usage("--n is required"))?;
    Ok(FermatContext::new(n, d)?)
}

/// Read a spec from a file holding either a bare spec or a report.
pub fn load_spec(path: &Path) -> Result<FakeCycleSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{} is not JSON: {e}", path.display())))?;
    let spec = v
        .pointer("/result/spec")
        .or_else(|| v.get("spec"))
        .unwrap_or(&v)
        .clone();
    serde_json::from_value(spec).map_err(|e| usage(format!("bad spec in {}: {e}", path.display())))
}

fn resolve_spec(config: &RunConfig) -> Result<FakeCycleSpec, CliError> {
    let spec = match &config.source {
        None => return Err(usage("a spec is required (--preset, --c or --spec)")),
        Some(SpecSource::Preset(name)) => FakeCycleSpec::preset(name).ok_or_else(|| {
            usage(format!(
                "unknown preset {name:?}; known: {}",
                PRESETS.join(", ")
            ))
        })?,
        Some(SpecSource::Inline(exprs)) => {
            let ctx = context(config)?;
            let c = exprs
                .iter()
                .map(|e| parse_cyclotomic(e, 2 * ctx.d))
                .collect::<Result<Vec<_>, _>>()?;
            FakeCycleSpec::new(ctx, c, None)?
        }
        Some(SpecSource::File(path)) => load_spec(path)?,
    };
    for (given, have, flag) in [
        (config.d, spec.ctx().d, "--d"),
        (config.n, spec.ctx().n, "--n"),
    ] {
        if given.is_some_and(|g| g != have) {
            return Err(usage(format!("{flag} does not match the spec ({have})")));
        }
    }
    match &config.c_lambda {
        Some(expr) => {
            let c = parse_cyclotomic(expr, spec.conductor())?;
            Ok(spec.with_c_lambda(c)?)
        }
        None => Ok(spec),
    }
}

/// Resolve a spec and make sure `c_λ` is set, solving for it when absent.
fn complete_spec(config: &RunConfig) -> Result<FakeCycleSpec, CliError> {
    let spec = resolve_spec(config)?;
    if spec.c_lambda().is_some() {
        return Ok(spec);
    }
    let c = solve_c_lambda(&cocycle_phi(&spec)?)?;
    Ok(spec.with_c_lambda(c)?)
}

fn config_value(config: &RunConfig) -> Value {
    serde_json::to_value(config).expect("config serialises")
}

/// Execute a configuration.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    if let Some(t) = config.threads {
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    let (body, success) = match config.command {
        CommandName::Schema => {
            return Ok(RunOutcome {
                output: Output::Schema(report_schema()),
                success: true,
            })
        }
        CommandName::HodgeNumbers => run_hodge(config)?,
        CommandName::Picmax => run_picmax(config)?,
        CommandName::LemmaCheck => run_lemma(config)?,
        CommandName::Periods => run_periods(config)?,
        CommandName::FakeCycle => run_fake_cycle(config)?,
        CommandName::Tangent => run_tangent(config)?,
        CommandName::Qform => run_qform(config)?,
    };
    Ok(RunOutcome {
        output: Output::Report(Box::new(Report::new(config_value(config), body))),
        success,
    })
}

fn run_hodge(config: &RunConfig) -> Result<(ReportBody, bool), CliError> {
    let ctx = context(config)?;
    let primitive = (0..=ctx.n)
        .map(|p| {
            Ok(HodgeEntry {
                p,
                q: ctx.n - p,
                value: hodge_number(&ctx, p, ctx.n - p)?,
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok((
        ReportBody::HodgeNumbers(HodgeNumbersReport {
            d: ctx.d,
            n: ctx.n,
            primitive,
        }),
        true,
    ))
}

fn run_picmax(config: &RunConfig) -> Result<(ReportBody, bool), CliError> {
    let n = config.n.unwrap_or(2);
    let ds: Vec<u32> = match config.d {
        Some(d) => vec![d],
        None => (3..=10).collect(),
    };
    let entries = ds
        .into_iter()
        .map(|d| {
            Ok(PicmaxEntry {
                d,
                picmax: picmax_check(&FermatContext::new(n, d)?),
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok((ReportBody::Picmax(PicmaxReport { n, entries }), true))
}

fn run_lemma(config: &RunConfig) -> Result<(ReportBody, bool), CliError> {
    let (prime_max, identity_max, witness_max) = match config.d {
        Some(d) => (d as u64, d as u64, d as u64),
        None => (
            config.prime_max.unwrap_or(10_000),
            config.identity_max.unwrap_or(100),
            config.witness_max.unwrap_or(20),
        ),
    };
    let lo = config.d.map_or(5, |d| d as u64);
    if lo < 5 || lo == 6 {
        return Err(usage("lemma-check needs d >= 5 and d != 6"));
    }
    let mut failures = Vec::new();
    let mut exceptional = Vec::new();
    for d in (lo..=prime_max).filter(|&d| d != 6) {
        match min_nondividing_prime(d) {
            Ok((_, PrimeCase::Exceptional)) => exceptional.push(d),
            Ok(_) => {}
            Err(e) => failures.push(e.to_string()),
        }
    }
    let mut identities = Vec::new();
    for d in (lo..=identity_max).filter(|&d| d != 6) {
        match villasmall_identity(d) {
            Ok(id) => identities.push(id),
            Err(e) => failures.push(e.to_string()),
        }
    }
    let mut exclusion = Vec::new();
    for d in (lo..=witness_max).filter(|&d| d != 6) {
        match no_fake_cycles_witness(d as u32) {
            Ok(w) => exclusion.push(ExclusionEntry {
                d: d as u32,
                t: w.t,
                sample: w.sample,
                failing_pairs: w.failing_pairs,
            }),
            Err(e) => failures.push(format!("d={d}: {e}")),
        }
    }
    if config.d.is_none() && exceptional != [5, 9] {
        failures.push(format!(
            "exceptional cases are {exceptional:?}, expected [5, 9]"
        ));
    }
    let passed = failures.is_empty();
    Ok((
        ReportBody::LemmaCheck(LemmaCheckReport {
            prime_max,
            exceptional,
            identity_max,
            identities,
            exclusion,
            failures,
            passed,
        }),
        passed,
    ))
}

fn run_periods(config: &RunConfig) -> Result<(ReportBody, bool), CliError> {
    if let Some(beta) = &config.beta {
        let ctx = context(config)?;
        let records = vanishing_cycles(&ctx)
            .into_iter()
            .map(|bp| {
                let v = period_omega_beta(beta, &bp, &ctx)?.div_two_pi_i(ctx.n as i32 / 2);
                Ok(PeriodRecord {
                    value: PeriodJson::from_value(&v),
                    beta_prime: bp,
                })
            })
            .collect::<Result<_, Error>>()?;
        return Ok((
            ReportBody::Periods(PeriodsReport {
                d: ctx.d,
                n: ctx.n,
                beta: Some(beta.clone()),
                spec: None,
                normalized: true,
                records,
            }),
            true,
        ));
    }
    let spec = complete_spec(config)?;
    let records = vanishing_cycles(spec.ctx())
        .into_iter()
        .map(|bp| {
            Ok(PeriodRecord {
                value: PeriodJson::Exact(normalized_period(&spec, &bp)?),
                beta_prime: bp,
            })
        })
        .collect::<Result<_, Error>>()?;
    Ok((
        ReportBody::Periods(PeriodsReport {
            d: spec.ctx().d,
            n: spec.ctx().n,
            beta: None,
            spec: Some(spec),
            normalized: true,
            records,
        }),
        true,
    ))
}

fn certificate_json(spec: &FakeCycleSpec) -> Result<CertificateJson, CliError> {
    let cert = certify_hodge(spec)?;
    let galois_invariant = galois_invariance(spec)?;
    let count = vanishing_cycles(spec.ctx()).len();
    Ok(match cert.outcome {
        CertificateOutcome::Certified { periods } => CertificateJson {
            certified: true,
            galois_invariant,
            period_count: count,
            periods: periods
                .into_iter()
                .map(|(beta_prime, value)| RationalPeriod { beta_prime, value })
                .collect(),
            failure: None,
        },
        CertificateOutcome::Irrational { beta_prime, value } => CertificateJson {
            certified: false,
            galois_invariant,
            period_count: count,
            periods: Vec::new(),
            failure: Some(PeriodRecord {
                beta_prime,
                value: PeriodJson::Exact(value),
            }),
        },
    })
}

fn run_fake_cycle(config: &RunConfig) -> Result<(ReportBody, bool), CliError> {
    let mut spec = resolve_spec(config)?;
    let mut cocycle = None;
    if config.solve {
        let phi = cocycle_phi(&spec)?;
        cocycle = Some(
            phi.iter()
                .map(|(s, v)| CocycleEntry {
                    t: s.t(),
                    phi: v.clone(),
                })
                .collect(),
        );
        spec = spec.with_c_lambda(solve_c_lambda(&phi)?)?;
    }
    let certificate = if config.certify {
        if spec.c_lambda().is_none() {
            return Err(usage(
                "--certify needs c_lambda: pass --solve or --c-lambda",
            ));
        }
        Some(certificate_json(&spec)?)
    } else {
        None
    };
    let success = certificate
        .as_ref()
        .is_none_or(|c| c.certified && c.galois_invariant);
    let approx = config.approx.then(|| {
        let mut m = BTreeMap::new();
        for (j, c) in spec.c().iter().enumerate() {
            let (re, im) = c.approx();
            m.insert(format!("c_{}", 2 * j), [re, im]);
        }
        if let Some(c) = spec.c_lambda() {
            let (re, im) = c.approx();
            m.insert("c_lambda".to_string(), [re, im]);
        }
        m
    });
    Ok((
        ReportBody::FakeCycle(FakeCycleReport {
            true_linear: spec.is_true_linear(),
            spec,
            cocycle,
            certificate,
            approx,
        }),
        success,
    ))
}

fn require_certified(spec: &FakeCycleSpec) -> Result<(), CliError> {
    if certify_hodge(spec)?.is_certified() {
        Ok(())
    } else {
        Err(CliError::Math(
            "the spec is not a Hodge cycle: some normalised period is irrational".into(),
        ))
    }
}

fn run_tangent(config: &RunConfig) -> Result<(ReportBody, bool), CliError> {
    let spec = complete_spec(config)?;
    require_certified(&spec)?;
    let ctx = *spec.ctx();
    let p = spec.p_lambda()?;
    let codim = tangent_codim(&spec)?;
    let expected = expected_codim(&ctx);
    let mut success = codim == expected;
    let colon = config.degree.map(|e| colon_dim(&p, e, &ctx)).transpose()?;
    let idealfake = if config.compare_idealfake {
        let mut degrees: Vec<u32> = (1..=ctx.d).collect();
        if let Some(e) = config.degree {
            if !degrees.contains(&e) {
                degrees.push(e);
            }
        }
        let entries = degrees
            .into_iter()
            .map(|e| {
                Ok(IdealCompareEntry {
                    degree: e,
                    equal: idealfake_compare(&spec, e)?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        success &= entries.iter().all(|e| e.equal);
        Some(entries)
    } else {
        None
    };
    let (hilbert_function, gorenstein) = if config.hilbert_function {
        let g = gorenstein_check(&spec)?;
        success &= g.is_gorenstein;
        (Some(g.hilbert_function.clone()), Some(g))
    } else {
        (None, None)
    };
    Ok((
        ReportBody::Tangent(TangentReport {
            spec,
            tangent_codim: codim,
            expected_codim: expected,
            degree: config.degree,
            colon_dim: colon,
            idealfake,
            hilbert_function,
            gorenstein,
        }),
        success,
    ))
}

fn run_qform(config: &RunConfig) -> Result<(ReportBody, bool), CliError> {
    let spec = complete_spec(config)?;
    require_certified(&spec)?;
    let ctx = *spec.ctx();
    if config.d_poly.is_none() && !config.witness {
        return Err(usage("qform needs --D (with --pair) or --witness"));
    }
    let evaluation = match &config.d_poly {
        Some(expr) => {
            let pair = config.pair.ok_or_else(|| usage("--D needs --pair"))?;
            if pair >= ctx.pairs() {
                return Err(usage(format!("--pair must be below {}", ctx.pairs())));
            }
            let dp = Poly::parse(expr, ctx.vars(), spec.conductor())?;
            if !dp.is_homogeneous() || dp.is_zero() || dp.degree() != Some(ctx.d - 1) {
                return Err(usage(format!(
                    "--D must be a nonzero form of degree {}",
                    ctx.d - 1
                )));
            }
            let g = &pair_linear_form(ctx.vars(), pair, &spec.c()[pair]) * &dp;
            let res = qr(&g, &g, &spec, DecomposeStrategy::Paired { pair })?;
            let closed = qr_closed_form(pair, &dp, &spec)?;
            let quotient = crate::qform::CriticalQuotient::new(&spec)?;
            Some(QformEvaluation {
                pair,
                d_poly: dp,
                closed_form_agrees: closed == res.raw,
                closed_form: closed,
                class_is_zero: res.class_is_zero(),
                raw: res.raw,
                complement_basis: quotient.complement_basis(),
                class: res.class,
            })
        }
        None => None,
    };
    let mut success = evaluation.as_ref().is_none_or(|e| e.closed_form_agrees);
    let (witness_status, witness) = if config.witness {
        match nonreduced_witness(&spec) {
            Ok(Some(w)) => (Some(WitnessStatus::Found), Some(w)),
            Ok(None) => (Some(WitnessStatus::NoneTrueLinear), None),
            Err(Error::SearchExhausted { candidates }) => {
                success = false;
                eprintln!("witness search exhausted {candidates} candidates");
                (None, None)
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, None)
    };
    Ok((
        ReportBody::Qform(QformReport {
            spec,
            critical_degree: ctx.critical_degree(),
            evaluation,
            witness_status,
            witness,
        }),
        success,
    ))
}

fn rational_cell(q: &num_rational::BigRational) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        q.to_string()
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn cyclo_cell(c: &CycloNum) -> String {
    match c.as_rational() {
        Some(q) => rational_cell(&q),
        None => c.to_string(),
    }
}

fn period_cell(v: &PeriodJson) -> String {
    match v {
        PeriodJson::Exact(c) => cyclo_cell(c),
        PeriodJson::Symbolic {
            coeff,
            gamma,
            pi_power,
        } => format!(
            "({coeff})*{}*(2*pi*i)^{pi_power}",
            gamma
                .iter()
                .map(|a| format!("Gamma({a}/d)"))
                .collect::<Vec<_>>()
                .join("*")
        ),
    }
}

/// Tabular rendering of the main result of a report.
fn csv_rows(report: &Report) -> (Vec<&'static str>, Vec<Vec<String>>) {
    match &report.result {
        ReportBody::HodgeNumbers(r) => (
            vec!["p", "q", "value"],
            r.primitive
                .iter()
                .map(|e| vec![e.p.to_string(), e.q.to_string(), e.value.to_string()])
                .collect(),
        ),
        ReportBody::Picmax(r) => (
            vec!["d", "picmax"],
            r.entries
                .iter()
                .map(|e| vec![e.d.to_string(), e.picmax.to_string()])
                .collect(),
        ),
        ReportBody::LemmaCheck(r) => (
            vec!["d", "q", "k", "case", "value"],
            r.identities
                .iter()
                .map(|i| {
                    vec![
                        i.d.to_string(),
                        i.q.to_string(),
                        i.k.to_string(),
                        format!("{:?}", i.case).to_lowercase(),
                        i.value.to_string(),
                    ]
                })
                .collect(),
        ),
        ReportBody::Periods(r) => (
            vec!["beta_prime", "value"],
            r.records
                .iter()
                .map(|p| vec![join(p.beta_prime.entries(), " "), period_cell(&p.value)])
                .collect(),
        ),
        ReportBody::FakeCycle(r) => match &r.certificate {
            Some(c) if c.certified => (
                vec!["beta_prime", "value"],
                c.periods
                    .iter()
                    .map(|p| vec![join(p.beta_prime.entries(), " "), rational_cell(&p.value)])
                    .collect(),
            ),
            Some(c) => (
                vec!["beta_prime", "value"],
                c.failure
                    .iter()
                    .map(|p| vec![join(p.beta_prime.entries(), " "), period_cell(&p.value)])
                    .collect(),
            ),
            None => (
                vec!["coefficient", "value"],
                r.spec
                    .c()
                    .iter()
                    .enumerate()
                    .map(|(j, c)| vec![format!("c_{}", 2 * j), c.to_string()])
                    .chain(
                        r.spec
                            .c_lambda()
                            .map(|c| vec!["c_lambda".into(), c.to_string()]),
                    )
                    .collect(),
            ),
        },
        ReportBody::Tangent(r) => match &r.hilbert_function {
            Some(hf) => (
                vec!["degree", "quotient_dim"],
                hf.iter()
                    .enumerate()
                    .map(|(e, h)| vec![e.to_string(), h.to_string()])
                    .collect(),
            ),
            None => (
                vec!["tangent_codim", "expected_codim"],
                vec![vec![
                    r.tangent_codim.to_string(),
                    r.expected_codim.to_string(),
                ]],
            ),
        },
        ReportBody::Qform(r) => {
            let (basis, class) = match (&r.witness, &r.evaluation) {
                (Some(w), _) => (&w.complement_basis, &w.class),
                (None, Some(e)) => (&e.complement_basis, &e.class),
                (None, None) => return (vec!["monomial", "coefficient"], Vec::new()),
            };
            (
                vec!["monomial", "coefficient"],
                basis
                    .iter()
                    .zip(class)
                    .map(|(e, c)| vec![join(e, " "), cyclo_cell(c)])
                    .collect(),
            )
        }
    }
}

fn text_summary(report: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match &report.result {
        ReportBody::HodgeNumbers(r) => {
            for e in &r.primitive {
                line(format!(
                    "h^{{{},{}}}_prim(X^{}_{}) = {}",
                    e.p, e.q, r.n, r.d, e.value
                ));
            }
        }
        ReportBody::Picmax(r) => {
            for e in &r.entries {
                line(format!("n={} d={}: picmax={}", r.n, e.d, e.picmax));
            }
        }
        ReportBody::LemmaCheck(r) => {
            line(format!(
                "exceptional d <= {}: {:?}",
                r.prime_max, r.exceptional
            ));
            line(format!("identities checked: {}", r.identities.len()));
            line(format!("exclusion witnesses: {}", r.exclusion.len()));
            for f in &r.failures {
                line(format!("FAILURE: {f}"));
            }
            line(format!("passed: {}", r.passed));
        }
        ReportBody::Periods(r) => {
            for p in &r.records {
                line(format!(
                    "{:?}: {}",
                    p.beta_prime.entries(),
                    period_cell(&p.value)
                ));
            }
        }
        ReportBody::FakeCycle(r) => {
            line(format!("d={} n={}", r.spec.ctx().d, r.spec.ctx().n));
            for (j, c) in r.spec.c().iter().enumerate() {
                line(format!("c_{} = {c}", 2 * j));
            }
            if let Some(c) = r.spec.c_lambda() {
                line(format!("c_lambda = {c}"));
            }
            line(format!("true_linear: {}", r.true_linear));
            if let Some(c) = &r.certificate {
                line(format!(
                    "certified: {} ({} periods), galois_invariant: {}",
                    c.certified, c.period_count, c.galois_invariant
                ));
            }
        }
        ReportBody::Tangent(r) => {
            line(format!(
                "tangent codim {} (expected {})",
                r.tangent_codim, r.expected_codim
            ));
            if let (Some(e), Some(c)) = (r.degree, r.colon_dim) {
                line(format!("colon dim in degree {e}: {c}"));
            }
            if let Some(entries) = &r.idealfake {
                for e in entries {
                    line(format!(
                        "degree {}: generator ideal equal = {}",
                        e.degree, e.equal
                    ));
                }
            }
            if let Some(hf) = &r.hilbert_function {
                line(format!("hilbert function: {}", join(hf, " ")));
            }
        }
        ReportBody::Qform(r) => {
            if let Some(e) = &r.evaluation {
                line(format!("pair {} D = {}", e.pair, e.d_poly));
                line(format!("closed form agrees: {}", e.closed_form_agrees));
                line(format!("class is zero: {}", e.class_is_zero));
            }
            match (&r.witness_status, &r.witness) {
                (Some(_), Some(w)) => line(format!(
                    "witness: pair {} D = {} (candidate {})",
                    w.pair, w.d_poly, w.candidate_index
                )),
                (Some(WitnessStatus::NoneTrueLinear), _) => {
                    line("no witness: every c^d = -1, the form vanishes".into())
                }
                _ => {}
            }
        }
    }
    out
}

/// Render an outcome in the configured format.
pub fn render(outcome: &RunOutcome, format: OutputFormat) -> Result<String, CliError> {
    let report = match &outcome.output {
        Output::Schema(v) => {
            return Ok(serde_json::to_string_pretty(v).expect("schema serialises") + "\n")
        }
        Output::Report(r) => r,
    };
    match format {
        OutputFormat::Json => {
            Ok(serde_json::to_string_pretty(report).expect("report serialises") + "\n")
        }
        OutputFormat::Text => Ok(text_summary(report)),
        OutputFormat::Csv => {
            let (header, rows) = csv_rows(report);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).map_err(|e| usage(e.to_string()))?;
            for r in rows {
                w.write_record(&r).map_err(|e| usage(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| usage(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv is utf-8"))
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fermat-cycles",
    version,
    about = "Exact fake linear cycles on Fermat varieties"
)]
pub struct Cli {
    /// Run the configuration stored in this JSON file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub emit: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Built-in spec.
    #[arg(long, conflicts_with_all = ["c", "spec"])]
    pub preset: Option<String>,
    /// Comma-separated c_0, c_2, …, e.g. "3/5*z8 + 4/5*z8^3,z8,z8".
    #[arg(long, conflicts_with = "spec")]
    pub c: Option<String>,
    /// Spec or report file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Use this c_lambda instead of solving for it.
    #[arg(long)]
    pub c_lambda: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primitive Hodge numbers of X^n_d.
    HodgeNumbers {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Whether the Hodge classes have maximal rank.
    Picmax {
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Number-theoretic identities behind the exclusion of d outside {3, 4, 6}.
    LemmaCheck {
        /// Check a single d.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        prime_max: Option<u64>,
        #[arg(long)]
        identity_max: Option<u64>,
        #[arg(long)]
        witness_max: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Periods of one residue form (--beta) or of a cycle's class.
    Periods {
        #[command(flatten)]
        spec: SpecArgs,
        /// Comma-separated exponent vector β.
        #[arg(long, value_delimiter = ',')]
        beta: Option<Vec<u32>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build, solve and certify a fake linear cycle.
    FakeCycle {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        solve: bool,
        #[arg(long)]
        certify: bool,
        /// Add non-authoritative floating-point values.
        #[arg(long)]
        approx: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tangent space of the Hodge locus.
    Tangent {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        compare_idealfake: bool,
        #[arg(long)]
        hilbert_function: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quadratic fundamental form in its critical degree.
    Qform {
        #[command(flatten)]
        spec: SpecArgs,
        /// Zero-based pair index i (the linear form x_{2i} - c_{2i} x_{2i+1}).
        #[arg(long)]
        pair: Option<usize>,
        /// Form D of degree d-1.
        #[arg(long = "D")]
        d_poly: Option<String>,
        /// Search for a non-reducedness witness.
        #[arg(long)]
        witness: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the JSON schema of all reports.
    Schema {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn apply_spec(config: &mut RunConfig, s: SpecArgs) {
    config.d = s.d;
    config.n = s.n;
    config.source = if let Some(p) = s.preset {
        Some(SpecSource::Preset(p))
    } else if let Some(c) = s.c {
        Some(SpecSource::Inline(
            c.split(',').map(|x| x.trim().to_string()).collect(),
        ))
    } else {
        s.spec.map(SpecSource::File)
    };
    config.c_lambda = s.c_lambda;
}

fn apply_output(config: &mut RunConfig, o: OutputArgs) {
    config.format = o.emit;
    config.output = o.out;
}

impl Cli {
    /// The configuration this command line describes.
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let mut config = match (&self.config, &self.command) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| usage(format!("bad config {}: {e}", path.display())))?
            }
            (Some(_), Some(_)) => {
                return Err(usage("--config cannot be combined with a subcommand"))
            }
            (None, None) => return Err(usage("a subcommand or --config is required")),
            (None, Some(_)) => RunConfig::default(),
        };
        if self.threads.is_some() {
            config.threads = self.threads;
        }
        let Some(command) = self.command else {
            return Ok(config);
        };
        match command {
            Command::HodgeNumbers { d, n, output } => {
                config.command = CommandName::HodgeNumbers;
                config.d = Some(d);
                config.n = Some(n);
                apply_output(&mut config, output);
            }
            Command::Picmax { d, n, output } => {
                config.command = CommandName::Picmax;
                config.d = d;
                config.n = Some(n);
                apply_output(&mut config, output);
            }
            Command::LemmaCheck {
                d,
                prime_max,
                identity_max,
                witness_max,
                output,
            } => {
                config.command = CommandName::LemmaCheck;
                config.d = d;
                config.prime_max = prime_max;
                config.identity_max = identity_max;
                config.witness_max = witness_max;
                apply_output(&mut config, output);
            }
            Command::Periods { spec, beta, output } => {
                config.command = CommandName::Periods;
                apply_spec(&mut config, spec);
                config.beta = beta;
                apply_output(&mut config, output);
            }
            Command::FakeCycle {
                spec,
                solve,
                certify,
                approx,
                output,
            } => {
                config.command = CommandName::FakeCycle;
                apply_spec(&mut config, spec);
                config.solve = solve;
                config.certify = certify;
                config.approx = approx;
                apply_output(&mut config, output);
            }
            Command::Tangent {
                spec,
                degree,
                compare_idealfake,
                hilbert_function,
                output,
            } => {
                config.command = CommandName::Tangent;
                apply_spec(&mut config, spec);
                config.degree = degree;
                config.compare_idealfake = compare_idealfake;
                config.hilbert_function = hilbert_function;
                apply_output(&mut config, output);
            }
            Command::Qform {
                spec,
                pair,
                d_poly,
                witness,
                output,
            } => {
                config.command = CommandName::Qform;
                apply_spec(&mut config, spec);
                config.pair = pair;
                config.d_poly = d_poly;
                config.witness = witness;
                apply_output(&mut config, output);
            }
            Command::Schema { out } => {
                config.command = CommandName::Schema;
                config.output = out;
            }
        }
        Ok(config)
    }
}

/// Parse, run, render and write; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = cli.into_config().and_then(|config| {
        let outcome = run(&config)?;
        let text = render(&outcome, config.format)?;
        match &config.output {
            Some(path) => {
                if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                    fs::create_dir_all(dir)
                        .map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
                }
                fs::write(path, text)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            None => {
                use std::io::Write;
                // A closed pipe (e.g. `| head`) is not an error worth reporting.
                let _ = std::io::stdout().lock().write_all(text.as_bytes());
            }
        }
        Ok(outcome.exit_code())
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_roundtrip() {
        let c = RunConfig {
            command: CommandName::FakeCycle,
            source: Some(SpecSource::Preset("cubic-all-ones".into())),
            solve: true,
            ..Default::default()
        };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&s).unwrap(), c);
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn usage_vs_math_errors() {
        assert_eq!(
            CliError::from(Error::InvalidArgument("x".into())).exit_code(),
            2
        );
        assert_eq!(CliError::from(Error::Internal("x".into())).exit_code(), 1);
        let bad = RunConfig {
            command: CommandName::HodgeNumbers,
            d: Some(3),
            ..Default::default()
        };
        assert_eq!(run(&bad).unwrap_err().exit_code(), 2);
    }
}
