//! The `p2h2` command line: exact verifications, the rational ladder,
//! local indices, numerical runs and the errata report.
//!
//! Exit status: 0 when every selected verdict passes, 1 when one fails,
//! 2 on usage errors, 3 when the pole guard stops an integration.

mod verdict;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::dynsys::catalog::{chart, system};
use crate::dynsys::identities::{fifth_order_identity, riccati_correspondence, IdentityReport};
use crate::dynsys::{holomorphy, invert_triangular, pushforward, BirationalMap, HOLOMORPHY_SYSTEMS};
use crate::ladder::{compare_with_table, ladder, painleve_one_locus, seed, to_tsv, verify_solution};
use crate::numint::{crosscheck_eq1_eq3, integrate, parse_rational, to_f64, IntegratorConfig};
use crate::resolve::{local_index, run_pipeline, verify_accessible, SingularLocus, PIPELINE_IDS};
use crate::symfield::v;
use crate::weyl::{errata, errata_all, group_relations, verify_system, SYSTEMS};

pub use verdict::{timed, Report, Verdict};

type Failure = Box<dyn std::error::Error + Send + Sync>;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(Failure),
}

impl<E: std::error::Error + Send + Sync + 'static> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Failed(Box::new(e))
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Symmetry,
    Holomorphy,
    FifthOrder,
    Riccati,
    Pipeline,
    Loci,
    All,
}

#[derive(Parser, Debug)]
#[command(name = "p2h2", version, about = "Exact checks and numerics for the fourth-order member of the second Painleve hierarchy")]
pub struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    format: Format,
    /// Worker threads for independent verdicts (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    /// Stamp verdicts with wall-clock milliseconds (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact symbolic verifications.
    Verify {
        #[arg(long, value_enum)]
        target: Target,
        /// System id, or pipeline id for `--target pipeline`.
        #[arg(long)]
        system: Option<String>,
    },
    /// Rational solutions generated by the translations from the seed.
    Ladder {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, default_value = "eq3")]
        system: String,
        /// Re-verify each row against the system and the published table.
        #[arg(long)]
        check: bool,
    },
    /// Adaptive integration of a catalogue system.
    Integrate(IntegrateArgs),
    /// Local index at a catalogued pipeline step or a user-supplied point.
    LocalIndex(LocalIndexArgs),
    /// Printed formulas that disagree with their canonical constructions.
    Errata {
        #[arg(long)]
        system: Option<String>,
    },
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    #[arg(long, default_value = "eq3")]
    system: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a2: String,
    /// Comma-separated initial state; rationals such as `-1/2` are accepted.
    #[arg(long, allow_hyphen_values = true)]
    y0: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t0: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    t1: String,
    #[arg(long, default_value = "1e-12")]
    rtol: String,
    #[arg(long, default_value = "1e-12")]
    atol: String,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value = "1e8")]
    pole_guard: String,
    /// Integrate eq1 and its image under the birational map side by side.
    #[arg(long)]
    crosscheck: bool,
}

#[derive(Args, Debug)]
struct LocalIndexArgs {
    /// Catalogued pipeline id.
    #[arg(long, conflicts_with_all = ["system", "point"])]
    pipeline: Option<String>,
    /// Restrict a pipeline report to one step.
    #[arg(long, requires = "pipeline")]
    step: Option<String>,
    /// Catalogue system for a user-supplied point.
    #[arg(long, requires = "point")]
    system: Option<String>,
    /// Chart as `x1=1/x, y1=y/x^2, ...` in the system's variables.
    #[arg(long, requires = "system")]
    chart: Option<String>,
    /// Locus as `x1=0, y1=-1, ...`; a coordinate set to itself stays free.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Coordinate cutting out the divisor (defaults to the first).
    #[arg(long)]
    dist: Option<String>,
}

/// Parses the process arguments and runs; the returned code is the exit status.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    ExitCode::from(run(cli))
}

pub fn run(cli: Cli) -> u8 {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            2
        }
        Err(CliError::Failed(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> Result<u8, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Verify { target, system } => emit(&verify(*target, system.as_deref(), g.timing)?, g.format),
        Command::Ladder { from, to, system, check } => cmd_ladder(*from, *to, system, *check, g),
        Command::Integrate(a) => cmd_integrate(a, g),
        Command::LocalIndex(a) => emit(&cmd_local_index(a)?, g.format),
        Command::Errata { system } => {
            let items = match system {
                Some(s) => errata(s)?,
                None => errata_all()?,
            };
            let verdicts = items
                .iter()
                .map(|e| {
                    let payload = serde_json::to_value(e).expect("erratum serialises");
                    let residual_nonzero = e.residual != "0";
                    Verdict::new(format!("erratum:{}:{}", e.generator, e.component), e.canonical_verified && residual_nonzero, payload)
                })
                .collect();
            emit(&Report::new("errata", verdicts, Vec::new()), g.format)
        }
    }
}

fn emit(report: &Report, format: Format) -> Result<u8, CliError> {
    print!("{}", report.render(format));
    Ok(if report.pass { 0 } else { 1 })
}

fn identity_verdict(prefix: &str, r: &IdentityReport) -> Verdict {
    let residuals: serde_json::Map<String, Value> = r
        .components
        .iter()
        .map(|c| (c.component.clone(), Value::String(c.residual.clone())))
        .collect();
    Verdict::new(format!("{prefix}:{}", r.name), r.holds, json!({ "residuals": residuals }))
}

type Job<'a> = Box<dyn Fn() -> Result<(Vec<Verdict>, Vec<Value>), CliError> + Send + Sync + 'a>;

fn systems_for(target: Target, system: Option<&str>) -> Result<Vec<String>, CliError> {
    let known: Vec<&str> = match target {
        Target::Symmetry => SYSTEMS.to_vec(),
        Target::Holomorphy => HOLOMORPHY_SYSTEMS.to_vec(),
        Target::Pipeline => PIPELINE_IDS.to_vec(),
        Target::Loci => vec!["eq3", "eq6"],
        Target::FifthOrder | Target::Riccati | Target::All => {
            return match system {
                None => Ok(Vec::new()),
                Some(s) => usage(format!("--system {s} does not apply to this target")),
            }
        }
    };
    match system {
        None => Ok(known.iter().map(|s| s.to_string()).collect()),
        Some(s) if known.contains(&s) => Ok(vec![s.to_string()]),
        Some(s) => usage(format!("unknown system `{s}` for this target; expected one of {}", known.join(", "))),
    }
}

fn jobs_for<'a>(target: Target, ids: &[String]) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job> = Vec::new();
    for id in ids {
        let id = id.clone();
        match target {
            Target::Symmetry => jobs.push(Box::new(move || {
                let mut out: Vec<Verdict> = verify_system(&id)?.iter().map(|r| identity_verdict("symmetry", r)).collect();
                for r in group_relations(&id, 5)? {
                    out.push(Verdict::new(
                        format!("relation:{}:{}", r.system, r.relation),
                        r.holds,
                        json!({ "action": r.detail }),
                    ));
                }
                let warn = errata(&id)?.iter().map(|e| serde_json::to_value(e).expect("erratum serialises")).collect();
                Ok((out, warn))
            })),
            Target::Holomorphy => jobs.push(Box::new(move || {
                let out = holomorphy(&id)?
                    .into_iter()
                    .map(|c| {
                        let offending: Vec<Value> = c.offending.iter().map(|(k, d)| json!([k, d])).collect();
                        Verdict::new(
                            format!("holomorphy:{}:{}:{}", c.system, c.chart, c.subject),
                            c.polynomial,
                            json!({ "polynomial": c.polynomial, "offending": offending }),
                        )
                    })
                    .collect();
                Ok((out, Vec::new()))
            })),
            Target::Pipeline => jobs.push(Box::new(move || {
                let r = run_pipeline(&id)?;
                let out = r
                    .steps
                    .iter()
                    .map(|s| {
                        let payload = serde_json::to_value(s).expect("step serialises");
                        Verdict::new(format!("pipeline:{}:{}:{}", r.pipeline, s.step, s.check), s.matches_paper, payload)
                    })
                    .collect();
                Ok((out, Vec::new()))
            })),
            Target::Loci => jobs.push(Box::new(move || {
                let l = painleve_one_locus(&id)?;
                let mut out = vec![Verdict::new(
                    format!("locus:{}:{}", l.system_id, l.divisor),
                    l.invariant && l.matches_paper,
                    serde_json::to_value(&l).expect("locus serialises"),
                )];
                out.push(identity_verdict("seed", &verify_solution(&seed(&id)?)?));
                Ok((out, Vec::new()))
            })),
            _ => {}
        }
    }
    match target {
        Target::FifthOrder => {
            jobs.push(Box::new(|| Ok((vec![identity_verdict("identity", &fifth_order_identity()?)], Vec::new()))))
        }
        Target::Riccati => {
            jobs.push(Box::new(|| Ok((vec![identity_verdict("identity", &riccati_correspondence()?)], Vec::new()))));
            jobs.push(Box::new(|| correspondence("eq1", "eq2", "eq3", &[])));
            jobs.push(Box::new(|| {
                correspondence("eq3", "holo_A", "eq10", &[("x1", "q1"), ("y1", "p1"), ("z1", "q2"), ("w1", "p2")])
            }));
        }
        _ => {}
    }
    jobs
}

fn correspondence(src: &str, map: &str, dst: &str, rename: &[(&str, &str)]) -> Result<(Vec<Verdict>, Vec<Value>), CliError> {
    let pushed = pushforward(&system(src)?, &chart(map)?)?;
    let renaming: Vec<_> = rename.iter().map(|(a, b)| (v(a), v(b))).collect();
    let pushed = pushed.rename(&renaming);
    let target = system(dst)?;
    let residuals: serde_json::Map<String, Value> = pushed
        .residuals(&target)?
        .iter()
        .map(|(w, r)| (w.to_string(), Value::String(crate::symfield::render(r))))
        .collect();
    let holds = residuals.values().all(|r| r == "0");
    Ok((vec![Verdict::new(format!("pushforward:{src}->{dst} via {map}"), holds, json!({ "residuals": residuals }))], Vec::new()))
}

/// Builds the verification report; `All` runs every target over every system.
pub fn verify_report(target: Target, system: Option<&str>, timing: bool) -> Result<Report, Failure> {
    verify(target, system, timing).map_err(|e| match e {
        CliError::Usage(m) => m.into(),
        CliError::Failed(f) => f,
    })
}

fn verify(target: Target, system: Option<&str>, timing: bool) -> Result<Report, CliError> {
    let targets: Vec<Target> = if target == Target::All {
        systems_for(target, system)?;
        vec![Target::Symmetry, Target::Holomorphy, Target::FifthOrder, Target::Riccati, Target::Pipeline, Target::Loci]
    } else {
        vec![target]
    };
    let mut jobs = Vec::new();
    for t in targets {
        let ids = systems_for(t, if target == Target::All { None } else { system })?;
        jobs.extend(jobs_for(t, &ids));
    }
    let results: Vec<(Vec<Verdict>, Vec<Value>)> = jobs
        .par_iter()
        .map(|job| {
            let mut warn = Vec::new();
            let verdicts = timed(timing, || {
                let (v, w) = job()?;
                warn = w;
                Ok::<_, CliError>(v)
            })?;
            Ok((verdicts, warn))
        })
        .collect::<Result<_, CliError>>()?;
    let (verdicts, warnings): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let name = format!("verify {}", target.to_possible_value().expect("named").get_name());
    Ok(Report::new(&name, verdicts.concat(), warnings.concat()))
}

fn cmd_ladder(from: i64, to: i64, system_id: &str, check: bool, g: &Global) -> Result<u8, CliError> {
    if !(from <= 0 && 0 <= to) {
        return usage("ladder range must satisfy --from <= 0 <= --to");
    }
    let rows = ladder(system_id, from, to)?;
    let checks: Vec<(bool, Option<bool>)> = if check {
        let verified: Vec<bool> = rows
            .par_iter()
            .map(|r| verify_solution(r).map(|rep| rep.holds))
            .collect::<Result<_, _>>()?;
        let table = if system_id == "eq3" { compare_with_table(&rows) } else { Vec::new() };
        verified
            .into_iter()
            .enumerate()
            .map(|(k, ok)| (ok, table.get(k).and_then(|(_, hit)| *hit)))
            .collect()
    } else {
        Vec::new()
    };
    let pass = checks.iter().all(|(ok, hit)| *ok && hit.unwrap_or(true));
    match g.format {
        Format::Tsv if !check => print!("{}", to_tsv(&rows)),
        Format::Tsv => {
            let mut lines = to_tsv(&rows).lines().map(str::to_string).collect::<Vec<_>>();
            lines[0].push_str("\tverified\ttable");
            for (line, (ok, hit)) in lines.iter_mut().skip(1).zip(&checks) {
                let hit = hit.map_or("-".to_string(), |h| h.to_string());
                line.push_str(&format!("\t{ok}\t{hit}"));
            }
            println!("{}", lines.join("\n"));
        }
        Format::Json => {
            let body: Vec<Value> = rows
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let mut row = r.to_json();
                    if let Some((ok, hit)) = checks.get(k) {
                        row["verified"] = json!(ok);
                        row["table"] = json!(hit);
                    }
                    row
                })
                .collect();
            let out = json!({ "system": system_id, "from": from, "to": to, "pass": pass, "rows": body });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Pretty => {
            for (k, r) in rows.iter().enumerate() {
                let comps: Vec<String> = r
                    .vars
                    .iter()
                    .zip(&r.components)
                    .map(|(w, c)| format!("{w} = {}", crate::symfield::render(c)))
                    .collect();
                let mark = match checks.get(k) {
                    Some((true, Some(true))) => "  [verified, matches table]",
                    Some((true, None)) => "  [verified]",
                    Some(_) => "  [FAILED]",
                    None => "",
                };
                println!("a2 = {:>3}:  {}{mark}", r.param.to_string(), comps.join(", "));
            }
        }
    }
    Ok(if pass { 0 } else { 1 })
}

fn rational_arg(name: &str, s: &str) -> Result<BigRational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("--{name}: cannot read `{s}` as a number")))
}

fn float_arg(name: &str, s: &str) -> Result<f64, CliError> {
    if let Some(q) = parse_rational(s) {
        return Ok(to_f64(&q));
    }
    s.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("--{name}: cannot read `{s}` as a number")))
}

fn cmd_integrate(a: &IntegrateArgs, g: &Global) -> Result<u8, CliError> {
    let a2 = rational_arg("a2", &a.a2)?;
    let y0: Vec<f64> = a.y0.split(',').map(|c| float_arg("y0", c)).collect::<Result<_, _>>()?;
    let (t0, t1) = (float_arg("t0", &a.t0)?, float_arg("t1", &a.t1)?);
    let cfg = IntegratorConfig {
        rtol: float_arg("rtol", &a.rtol)?,
        atol: float_arg("atol", &a.atol)?,
        pole_guard: float_arg("pole-guard", &a.pole_guard)?,
        samples: a.samples,
        ..IntegratorConfig::default()
    };
    if a.crosscheck {
        if a.system != "eq1" {
            return usage("--crosscheck needs --system eq1");
        }
        let u0: [f64; 4] = y0.as_slice().try_into().map_err(|_| CliError::Usage("--y0 needs four entries".into()))?;
        let c = crosscheck_eq1_eq3(&u0, &a2, t0, t1, &cfg)?;
        let pass = c.sup_error <= 1e-7;
        let v = Verdict::new("crosscheck:eq1->eq3", pass, serde_json::to_value(&c).expect("crosscheck serialises"));
        return emit(&Report::new("integrate --crosscheck", vec![v], Vec::new()), g.format);
    }
    let tr = integrate(&a.system, &a2, &y0, t0, t1, &cfg)?;
    match g.format {
        Format::Json => {
            print!("{}", tr.to_json_lines());
            if let Some(p) = tr.pole {
                println!("{}", json!({ "pole": p, "partial": true }));
            }
        }
        Format::Tsv => {
            print!("{}", tr.to_tsv());
            if let Some(p) = tr.pole {
                println!("# partial: pole guard tripped at t = {p:.16e}");
            }
        }
        Format::Pretty => {
            println!("{} at a2 = {}: {} samples, {} steps", tr.system_id, tr.param, tr.samples.len(), tr.steps);
            println!("{:>12}{}", "t", tr.vars.iter().map(|w| format!(" {w:>23}")).collect::<String>());
            for (t, y) in &tr.samples {
                println!("{t:>12.6}{}", y.iter().map(|x| format!(" {x:>23.15e}")).collect::<String>());
            }
            if let Some(p) = tr.pole {
                println!("partial: pole guard tripped at t = {p:.16e}");
            }
        }
    }
    Ok(if tr.pole.is_some() { 3 } else { 0 })
}

fn pairs(spec: &str) -> Result<Vec<(String, String)>, CliError> {
    spec.split([',', ';'])
        .filter(|s| !s.trim().is_empty())
        .map(|kv| match kv.split_once('=') {
            Some((k, e)) => Ok((k.trim().to_string(), e.trim().to_string())),
            None => usage(format!("expected `name=expression`, got `{kv}`")),
        })
        .collect()
}

fn index_verdict(check: String, idx: &crate::resolve::LocalIndex, extra: Value) -> Verdict {
    let mut payload = idx.to_json();
    if let (Value::Object(p), Value::Object(e)) = (&mut payload, extra) {
        p.extend(e);
    }
    Verdict::new(check, true, payload)
}

fn cmd_local_index(a: &LocalIndexArgs) -> Result<Report, CliError> {
    if let Some(id) = &a.pipeline {
        if !PIPELINE_IDS.contains(&id.as_str()) {
            return usage(format!("unknown pipeline `{id}`; expected one of {}", PIPELINE_IDS.join(", ")));
        }
        let r = run_pipeline(id)?;
        let verdicts: Vec<Verdict> = r
            .steps
            .iter()
            .filter(|s| s.index.is_some() && a.step.as_ref().is_none_or(|w| *w == s.step))
            .map(|s| {
                let mut payload = s.index.clone().expect("filtered");
                payload["locus"] = json!(s.locus);
                Verdict::new(format!("index:{id}:{}", s.step), s.matches_paper, payload)
            })
            .collect();
        if verdicts.is_empty() {
            return usage(format!("no index step matches in `{id}`"));
        }
        return Ok(Report::new("local-index", verdicts, Vec::new()));
    }
    let (Some(sys), Some(point)) = (&a.system, &a.point) else {
        return usage("give either --pipeline or --system with --point");
    };
    let mut field = system(sys)?;
    if let Some(spec) = &a.chart {
        let rows = pairs(spec)?;
        let src: Vec<String> = field.vars().iter().map(|w| w.to_string()).collect();
        let src: Vec<&str> = src.iter().map(String::as_str).collect();
        let rows: Vec<(&str, &str)> = rows.iter().map(|(k, e)| (k.as_str(), e.as_str())).collect();
        let m = invert_triangular(&BirationalMap::from_exprs("user chart", &src, &rows))?;
        field = pushforward(&field, &m)?;
    }
    let pts = pairs(point)?;
    let names: Vec<&str> = pts.iter().map(|(k, _)| k.as_str()).collect();
    let images: Vec<&str> = pts.iter().map(|(_, e)| e.as_str()).collect();
    let dist = a.dist.as_deref().unwrap_or(names[0]);
    if !names.contains(&dist) {
        return usage(format!("--dist {dist} is not a coordinate of the point"));
    }
    let locus = SingularLocus::new(&names, &images, dist);
    if !verify_accessible(&field, &locus)? {
        return Ok(Report::new(
            "local-index",
            vec![Verdict::new(format!("index:{sys}"), false, json!({ "locus": locus.describe(), "mismatch": "not accessible" }))],
            Vec::new(),
        ));
    }
    let idx = local_index(&field, &locus)?;
    Ok(Report::new(
        "local-index",
        vec![index_verdict(format!("index:{sys}"), &idx, json!({ "locus": locus.describe() }))],
        Vec::new(),
    ))
}

#[cfg(test)]
mod tests;
