//! Job execution: turns each `job` line into check records.

use std::time::Instant;

use amalgam_core::amalgam::Amalgamation;
use amalgam_core::checks::{self, CheckResult, Status, Witness};
use amalgam_core::resolution;
use amalgam_core::spectrum::LocalRing;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::build::{self, BuildResult, Env, Object};
use crate::dsl::{Call, SpecFile, Value};

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Used by jobs that take a depth when the file does not give one.
    pub depth: usize,
    /// Largest ring order that may be enumerated element by element.
    pub max_order: u128,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: 0, depth: 8, max_order: 65536, timing: true }
    }
}

/// One report line: a check result plus the job text that produced it.
#[derive(Clone, Debug)]
pub struct Record {
    pub label: String,
    pub result: CheckResult,
    pub wall_ms: Option<f64>,
}

fn failed(name: &str, anchor: &str, msg: &str) -> CheckResult {
    let mut c = CheckResult::new(name, anchor).with("error", Witness::Text(msg.to_string()));
    c.status = Status::Fail;
    c.reason = Some(msg.to_string());
    c
}

fn anchor_of(job: &str) -> &'static str {
    match job {
        "hypotheses" => checks::ANCHOR_HYPOTHESES,
        "remark21" => checks::ANCHOR_LOCAL,
        "power_iso" => checks::ANCHOR_POWER,
        "kernel_transfer" => checks::ANCHOR_TRANSFER,
        "lemma24" => checks::ANCHOR_LEMMA24,
        "idempotent" => checks::ANCHOR_IDEMPOTENT,
        "betti" => checks::ANCHOR_BETTI,
        "thm31" => checks::ANCHOR_ZERO_K,
        "thm34" => checks::ANCHOR_CASCADE,
        "pd_profile" => checks::ANCHOR_PROFILE,
        "verify_ring" => checks::ANCHOR_RING,
        "gldim" => checks::ANCHOR_GLDIM,
        "resolve" => ANCHOR_RESOLVE,
        _ => "",
    }
}

pub const ANCHOR_RESOLVE: &str = "minimal free resolution";

fn usize_kw(call: &Call, key: &str, default: usize) -> BuildResult<usize> {
    match call.keyword(key) {
        Some(v) => usize::try_from(build::int(v)?).map_err(|_| format!("`{key}` must be non-negative")),
        None => Ok(default),
    }
}

fn amalgam<'a>(obj: &'a Object) -> BuildResult<&'a Amalgamation> {
    match obj {
        Object::Amalgam { built: Ok(a), .. } => Ok(a),
        Object::Amalgam { built: Err(e), .. } => Err(format!("amalgamation could not be built: {e}")),
        o => Err(format!("expected an amalgamation, found a {}", o.kind_name())),
    }
}

/// Explicit `(u, k)` lists, or `None` when the job asks for random samples.
/// `args[0..2]` are the `u` and `k` lists when present.
fn transfer_input(d: &Amalgamation, p: usize, args: &[&Value]) -> BuildResult<Option<(Vec<Vec<u64>>, Vec<Vec<u64>>)>> {
    if args.len() < 2 {
        return Ok(None);
    }
    let u = build::matrix(args[0])?.iter().map(|v| build::free_vector(&d.a, p, v)).collect::<BuildResult<Vec<_>>>()?;
    let k = build::matrix(args[1])?.iter().map(|v| build::free_vector(&d.b, p, v)).collect::<BuildResult<Vec<_>>>()?;
    if u.len() != k.len() {
        return Err(format!("{} vectors u but {} vectors k", u.len(), k.len()));
    }
    Ok(Some((u, k)))
}

/// Run the transfer check on `samples` random inputs and summarize.
fn sampled_transfer(name: &str, d: &Amalgamation, p: usize, r: usize, samples: usize, rng: &mut ChaCha8Rng, depth: Option<usize>) -> CheckResult {
    let anchor = anchor_of(name);
    let mut c = CheckResult::new(name, anchor);
    let (mut literal, mut refined, mut within, mut pruned) = (0u64, 0u64, 0u64, 0u64);
    for _ in 0..samples {
        let (u, k) = match checks::random_transfer_input(d, rng, p, r) {
            Ok(x) => x,
            Err(e) => return failed(name, anchor, &e.to_string()),
        };
        let one = match depth {
            Some(dp) => checks::verify_lemma_2_4(d, p, &u, &k, dp),
            None => checks::verify_kernel_transfer(d, p, &u, &k),
        };
        if one.status == Status::Skipped {
            return one;
        }
        let flag = |l: &str| one.witnesses.iter().any(|(n, w)| n == l && *w == Witness::Bool(true));
        literal += flag("literal_identity") as u64;
        refined += flag("refined_identity") as u64;
        within += flag("kerv_within_max") as u64;
        pruned += one.witnesses.iter().any(|(n, w)| n == "r" && *w != Witness::Int(r as u64)) as u64;
        if !one.passed() && c.status == Status::Pass {
            c.push("failing_u", Witness::Vectors(u));
            c.push("failing_k", Witness::Vectors(k));
            c.require(false, one.reason.as_deref().unwrap_or("identity fails"));
        }
    }
    c.push("samples", Witness::Int(samples as u64));
    c.push("p", Witness::Int(p as u64));
    c.push("r", Witness::Int(r as u64));
    c.push("pruned_samples", Witness::Int(pruned));
    c.push("kerv_within_max", Witness::Int(within));
    c.push("literal_identity", Witness::Int(literal));
    c.push("refined_identity", Witness::Int(refined));
    c
}

fn run_job(env: &Env, call: &Call, opts: &Options, rng: &mut ChaCha8Rng) -> BuildResult<CheckResult> {
    let args: Vec<&Value> = call.positional().collect();
    let name = call.func.as_str();
    let depth = usize_kw(call, "depth", opts.depth)?;
    let target = build::eval(env, args[0])?;
    Ok(match name {
        "hypotheses" => match &target {
            Object::Amalgam { f, j, .. } => checks::check_hypotheses(f, j),
            o => return Err(format!("expected an amalgamation, found a {}", o.kind_name())),
        },
        "remark21" => checks::verify_remark_2_1(amalgam(&target)?, opts.max_order),
        "power_iso" => {
            let n = match args.get(1) {
                Some(v) => usize::try_from(build::int(v)?).map_err(|_| "n must be non-negative")?,
                None => 2,
            };
            checks::verify_power_iso(amalgam(&target)?, n, opts.max_order, usize_kw(call, "samples", 10_000)?, opts.seed)
        }
        "kernel_transfer" | "lemma24" => {
            let d = amalgam(&target)?;
            let p = usize::try_from(build::int(args[1])?).map_err(|_| "p must be non-negative")?;
            let dp = (name == "lemma24").then_some(depth);
            match transfer_input(d, p, &args[2..])? {
                Some((u, k)) => match dp {
                    Some(dp) => checks::verify_lemma_2_4(d, p, &u, &k, dp),
                    None => checks::verify_kernel_transfer(d, p, &u, &k),
                },
                None => {
                    let r = usize_kw(call, "r", 2)?;
                    let samples = usize_kw(call, "samples", 10)?;
                    sampled_transfer(name, d, p, r, samples, rng, dp)
                }
            }
        }
        "idempotent" => checks::verify_idempotent_claim(amalgam(&target)?, opts.max_order),
        "betti" => checks::betti_experiment(amalgam(&target)?, depth),
        "thm31" => {
            let d = amalgam(&target)?;
            let k = build::element(&d.b, &build::vector(args[1])?)?;
            if !d.j.contains(&k) {
                return Err("k must lie in J".into());
            }
            checks::verify_thm_3_1_objects(d, &k, depth)
        }
        "thm34" => {
            let d = amalgam(&target)?;
            let m = build::element(&d.a, &build::vector(args[1])?)?;
            let cascade = match args.get(2) {
                Some(pv) => {
                    let p = usize::try_from(build::int(pv)?).map_err(|_| "p must be non-negative")?;
                    let (u, k) = transfer_input(d, p, &args[3..])?.ok_or("the cascade needs p, u and k")?;
                    Some((p, u, k))
                }
                None => None,
            };
            checks::verify_thm_3_4_bookkeeping(d, &m, cascade.as_ref().map(|(p, u, k)| (*p, u.as_slice(), k.as_slice())))
        }
        "pd_profile" => checks::pd_profile(target.ring()?, depth, usize_kw(call, "ideals", 64)?, opts.seed),
        "verify_ring" => checks::verify_ring_check(target.ring()?),
        "gldim" => checks::gldim_check(target.ring()?, depth),
        "resolve" => resolve_check(&target, depth)?,
        other => return Err(format!("unknown job `{other}`")),
    })
}

/// Minimal resolution of a declared module or ideal, as a check record.
pub fn resolve_check(obj: &Object, depth: usize) -> BuildResult<CheckResult> {
    let (r, m) = obj.module()?;
    let mut c = CheckResult::new("resolve", ANCHOR_RESOLVE);
    let local = LocalRing::new(&r).map_err(|e| e.to_string())?;
    let res = resolution::minimal_resolution(&local, &m, depth).map_err(|e| e.to_string())?;
    c.push("betti", Witness::Ints(res.betti.clone()));
    c.push("verdict", Witness::Text(res.verdict.to_string()));
    if let Some((s, p)) = res.betti_period {
        c.push("period", Witness::Ints(vec![s as u64, p as u64]));
    }
    c.push("syzygy_cycle", Witness::Bool(res.syzygy_cycle));
    c.push("nodes_checked", Witness::Int(res.validation.nodes_checked as u64));
    if let Some(ok) = res.validation.complex {
        c.push("d_squared_zero", Witness::Bool(ok));
    }
    if !res.validation.failures.is_empty() {
        c.push("validation_failures", Witness::Text(res.validation.failures.join("; ")));
    }
    c.require(res.validation.passed(), "resolution validation failed");
    Ok(c)
}

/// Run every job of `file` (or only those named `only`), sorted by check name.
pub fn run(file: &SpecFile, env: &Env, opts: &Options, only: Option<&str>) -> Vec<Record> {
    let mut records = Vec::new();
    if only.is_none() {
        for (name, msg) in env.failures() {
            let c = failed("construct", "construction", msg);
            records.push(Record { label: name.to_string(), result: c, wall_ms: None });
        }
    }
    for (index, call) in file.jobs().enumerate() {
        if only.is_some_and(|o| o != call.func) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(index as u64));
        let start = Instant::now();
        let result = run_job(env, call, opts, &mut rng).unwrap_or_else(|e| failed(&call.func, anchor_of(&call.func), &e));
        let wall_ms = opts.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        records.push(Record { label: call.to_string(), result, wall_ms });
    }
    records.sort_by(|a, b| a.result.name.cmp(&b.result.name));
    records
}
