mod table;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use cdlab::assoc::{classify, moufang_check, malcev_check, type_pattern};
use cdlab::cycles::{silo_of, triad_census, triad_kind};
use cdlab::expr::{eval_str, format as format_element};
use cdlab::formulas::consistency_check;
use cdlab::subalgebras::{classify_subalgebra, subalgebra_census, SUBALGEBRA_DEFAULT_MAX_LEVEL};
use cdlab::verify::verify;
use cdlab::zero_divisors::{
    categorize, mode_survey, zd_count, zd_direct_search_with, zd_primaries, SquaresRule, LISTING_MAX_LEVEL,
};
use cdlab::{parse_label, Algebra, CycleGroup, NonAssocType, Signature, Silo, Triad, TriadKind};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use table::{Format, OutputTable};

/// Largest generator count run without `--force`.
const GUARD_LEVEL: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "cdlab", version, about = "Graded Cayley-Dickson algebra explorer")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Signature as `q,p`: q imaginary and p unitary generators.
    #[arg(long, global = true, value_name = "Q,P", conflicts_with = "level")]
    sig: Option<String>,
    /// Number of generators, all imaginary. Same as `--sig n,0`.
    #[arg(long, global = true, value_name = "N")]
    level: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Worker threads; 0 uses every core. CDLAB_THREADS takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Run computations above the usual size limits.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a product expression, e.g. "(o1 - o1234)*(o2 + o34)".
    Mul { expr: String },
    /// Report everything known about one triad.
    Classify {
        /// Three blades, e.g. o1,o2,o34.
        #[arg(long, value_name = "B,C,D")]
        triad: String,
    },
    Census {
        #[command(subcommand)]
        kind: CensusKind,
    },
    /// Zero-divisor pairs of the form (x + y)(u ± v).
    Zd {
        #[command(subcommand)]
        kind: ZdKind,
        /// Require x² = y² and u² = v².
        #[arg(long, global = true)]
        strict_squares: bool,
    },
    /// Closed-form counts and their identities for levels 0..=max.
    Formulas {
        #[arg(long, default_value_t = cdlab::formulas::CONSISTENCY_MAX_LEVEL)]
        max_level: usize,
    },
    /// Compare computed structure with the bundled reference tables.
    Verify,
}

#[derive(Subcommand, Debug)]
enum CensusKind {
    /// Associative triads, cycle silos and non-cycle types.
    Triads,
    /// Seven-blade subalgebras by class.
    Subalgebras,
}

#[derive(Subcommand, Debug)]
enum ZdKind {
    /// List canonical pairs.
    Enumerate,
    /// Count canonical pairs.
    Count,
    /// Group pairs into primary orbits.
    Primaries,
}

/// Bad input: exit status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Errors caused by the caller's input rather than by a failed computation.
fn is_usage(e: &anyhow::Error) -> bool {
    use cdlab::Error as E;
    if e.downcast_ref::<Usage>().is_some() {
        return true;
    }
    matches!(
        e.downcast_ref::<E>(),
        Some(
            E::InvalidSignature(_)
                | E::MaskOutOfRange { .. }
                | E::UnitBlade
                | E::Parse { .. }
                | E::Domain(_)
                | E::InvalidTriad(_)
                | E::Degenerate(_)
                | E::NotClosed
        )
    )
}

struct Ctx {
    common: Common,
    threads: usize,
}

impl Ctx {
    fn signature(&self) -> Result<Signature> {
        let sig = match (&self.common.sig, self.common.level) {
            (Some(s), _) => {
                let (q, p) = s.split_once(',').ok_or_else(|| usage(format!("--sig expects q,p, got {s:?}")))?;
                let parse = |v: &str| v.trim().parse::<usize>().map_err(|_| usage(format!("--sig expects q,p, got {s:?}")));
                Signature::split(parse(q)?, parse(p)?)?
            }
            (None, Some(n)) => Signature::imaginary(n)?,
            (None, None) => bail!(usage("give --level n or --sig q,p")),
        };
        Ok(sig)
    }

    fn algebra(&self) -> Result<Algebra> {
        Ok(Algebra::new(self.signature()?))
    }

    fn guard(&self, alg: &Algebra, limit: usize, what: &str) -> Result<()> {
        let n = alg.generators();
        if n > limit && !self.common.force {
            bail!(usage(format!("{what} at {n} generators is refused above {limit}; pass --force to run it anyway")));
        }
        Ok(())
    }
}

fn threads_from_env(flag: usize) -> Result<usize> {
    match std::env::var("CDLAB_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            v.trim().parse().map_err(|_| usage(format!("CDLAB_THREADS must be a number, got {v:?}")))
        }
        _ => Ok(flag),
    }
}

fn level_json(sig: &Signature) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("level".into(), json!(sig.generators()));
    m.insert("signature".into(), json!(sig.to_string()));
    m
}

fn cmd_mul(ctx: &Ctx, expr: &str) -> Result<OutputTable> {
    let sig = ctx.signature()?;
    let value = eval_str(expr, &sig)?;
    let text = format_element(&value, &sig);
    let mut t = OutputTable::new(["value"]);
    t.push([text.clone()]);
    Ok(t.with_json(json!({ "expr": expr, "value": text })))
}

fn parse_triad(sig: &Signature, text: &str) -> Result<Triad> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        bail!(usage(format!("--triad expects three comma-separated blades, got {text:?}")));
    }
    let m: Vec<_> = parts.iter().map(|p| parse_label(sig, p)).collect::<cdlab::Result<_>>()?;
    Ok(Triad::sorted(m[0], m[1], m[2])?)
}

fn cmd_classify(ctx: &Ctx, text: &str) -> Result<OutputTable> {
    let alg = ctx.algebra()?;
    let sig = alg.signature();
    let t = parse_triad(sig, text)?;
    let labels: Vec<String> = t.masks().iter().map(|m| alg.label(*m)).collect();
    let kind = triad_kind(&t);
    let ty = classify(&alg, &t)?;
    let silo = match kind {
        TriadKind::CycleFirst | TriadKind::CycleMember => {
            let g = CycleGroup::containing(&t).ok_or_else(|| anyhow!("cycle triad without a group"))?;
            let s = silo_of(&alg, &g)?;
            if kind == TriadKind::CycleFirst {
                s.to_string()
            } else {
                let [b, c, d] = g.triads()[0].masks().map(|m| alg.label(m));
                format!("{s} (group {b},{c},{d})")
            }
        }
        _ => "-".into(),
    };
    let moufang = moufang_check(&alg, &t)?;
    let modes: Vec<&str> = mode_survey(&alg, &t)?.iter().map(|m| m.name()).collect();
    let class = classify_subalgebra(&alg, &t).map(|s| s.class.to_string()).unwrap_or_else(|e| format!("unclassified ({e})"));
    let kind_name = match kind {
        TriadKind::Associative => "associative",
        TriadKind::NonCycle => "non-cycle",
        TriadKind::CycleFirst => "cycle first",
        TriadKind::CycleMember => "cycle member",
    };
    let flag = |b: bool| if b { "yes" } else { "no" };
    let fields: Vec<(&str, String)> = vec![
        ("triad", labels.join(",")),
        ("pattern", if t.is_ring() { "-".into() } else { type_pattern(&alg, &t)?.to_string() }),
        ("type", ty.to_string()),
        ("kind", kind_name.into()),
        ("silo", silo),
                ("moufang", format!("m1={} m2={} m3={}", flag(moufang.m1), flag(moufang.m2), flag(moufang.m3))),
        ("malcev", flag(malcev_check(&alg, &t)?).into()),
        ("modes", if modes.is_empty() { "-".into() } else { modes.join(" ") }),
        ("subalgebra", class),
    ];
    let mut out = OutputTable::new(["field", "value"]);
    let mut obj = Map::new();
    for (k, v) in fields {
        out.push([k.to_string(), v.clone()]);
        obj.insert(k.into(), json!(v));
    }
    obj.insert("moufang".into(), json!({"m1": moufang.m1, "m2": moufang.m2, "m3": moufang.m3}));
    obj.insert("malcev".into(), json!(malcev_check(&alg, &t)?));
    obj.insert("modes".into(), json!(modes));
    Ok(out.with_json(Value::Object(obj)))
}

fn cmd_census_triads(ctx: &Ctx) -> Result<OutputTable> {
    let alg = ctx.algebra()?;
    ctx.guard(&alg, GUARD_LEVEL, "triad census")?;
    let c = triad_census(&alg, ctx.threads)?;
    let mut t = OutputTable::new(["structure", "count"]);
    let mut silos = Map::new();
    for s in Silo::ALL {
        t.push([s.to_string(), c.silo(s).to_string()]);
        silos.insert(s.to_string(), json!(c.silo(s)));
    }
    let mut non_cycles = Map::new();
    for ty in NonAssocType::NON_ASSOCIATIVE {
        t.push([ty.letter().to_string(), c.non_cycle(ty).to_string()]);
        non_cycles.insert(ty.letter().to_string(), json!(c.non_cycle(ty)));
    }
    t.push(["associative".into(), c.associative.to_string()]);
    t.push(["total".into(), c.total().to_string()]);
    let mut j = level_json(alg.signature());
    j.insert("silos".into(), Value::Object(silos));
    j.insert("nonCycles".into(), Value::Object(non_cycles));
    j.insert("associative".into(), json!(c.associative));
    Ok(t.with_json(Value::Object(j)))
}

fn cmd_census_subalgebras(ctx: &Ctx) -> Result<OutputTable> {
    let alg = ctx.algebra()?;
    ctx.guard(&alg, SUBALGEBRA_DEFAULT_MAX_LEVEL, "subalgebra census")?;
    let s = subalgebra_census(&alg, ctx.threads)?;
    let mut t = OutputTable::new(["class", "count"]);
    let mut j = level_json(alg.signature());
    for (name, v) in [("H", s.h), ("O", s.o), ("P4", s.p4), ("P12", s.p12), ("P14", s.p14)] {
        t.push([name.to_string(), v.to_string()]);
        j.insert(name.into(), json!(v));
    }
    t.push(["total P".into(), s.quasi_total().to_string()]);
    Ok(t.with_json(Value::Object(j)))
}

fn rule(strict: bool) -> SquaresRule {
    if strict {
        SquaresRule::Strict
    } else {
        SquaresRule::Relaxed
    }
}

fn cmd_zd(ctx: &Ctx, kind: &ZdKind, strict: bool) -> Result<OutputTable> {
    let alg = ctx.algebra()?;
    let sig = alg.signature().clone();
    ctx.guard(&alg, GUARD_LEVEL, "zero-divisor search")?;
    match kind {
        ZdKind::Count => {
            let n = zd_count(&alg, ctx.threads, rule(strict));
            let mut t = OutputTable::new(["signature", "count"]);
            t.push([sig.to_string(), n.to_string()]);
            let mut j = level_json(&sig);
            j.insert("count".into(), json!(n));
            Ok(t.with_json(Value::Object(j)))
        }
        ZdKind::Enumerate => {
            ctx.guard(&alg, LISTING_MAX_LEVEL, "zero-divisor listing")?;
            let pairs = zd_direct_search_with(&alg, ctx.threads, rule(strict));
            let mut t = OutputTable::new(["pair"]);
            for p in &pairs {
                t.push([p.display(&sig)]);
            }
            Ok(t.with_json(Value::Array(pairs.iter().map(|p| p.to_json(&sig)).collect())))
        }
        ZdKind::Primaries => {
            if strict {
                bail!(usage("--strict-squares does not apply to primaries"));
            }
            let orbits = zd_primaries(&alg, ctx.threads)?;
            let mut t = OutputTable::new(["b", "c", "d", "silo", "modes", "size"]);
            let mut rows = Vec::new();
            for o in &orbits {
                let r = o.representative;
                let [b, c, d] = r.masks().map(|m| alg.label(m));
                let silo = cdlab::cycles::silo_types(&alg, r.b(), r.c(), r.d())
                    .ok()
                    .and_then(Silo::from_types)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| "-".into());
                let modes: Vec<&str> = o.modes().iter().map(|m| m.name()).collect();
                rows.push(json!({"b": b, "c": c, "d": d, "silo": silo, "modes": modes, "size": o.size()}));
                t.push([b, c, d, silo, modes.join(" "), o.size().to_string()]);
            }
            let mut j = level_json(&sig);
            j.insert("count".into(), json!(orbits.iter().map(|o| o.size()).sum::<usize>()));
            j.insert("primaries".into(), Value::Array(rows));
            if sig.is_imaginary() && sig.generators() == 5 {
                let cats = categorize(&alg, &orbits)?;
                j.insert("categories".into(), json!(cats.iter().map(|(k, v)| (format!("{k:?}"), json!(*v))).collect::<Map<_, _>>()));
            }
            Ok(t.with_json(Value::Object(j)))
        }
    }
}

fn cmd_formulas(max_level: usize) -> Result<(OutputTable, bool)> {
    let reports = consistency_check(max_level)?;
    let mut t = OutputTable::new(["m", "n", "N", "triads", "H", "O", "S", "Z", "28 factor", "84 factor", "consistent"]);
    let mut ok = true;
    for r in &reports {
        ok &= r.passed();
        t.push([
            r.m.to_string(),
            r.n.to_string(),
            r.pure_blades.to_string(),
            r.triad_total.to_string(),
            r.h.to_string(),
            r.o.to_string(),
            r.s.to_string(),
            r.z.to_string(),
            r.factor_28.to_string(),
            r.factor_84.to_string(),
            if r.passed() { "yes".into() } else { "no".into() },
        ]);
    }
    Ok((t.with_json(serde_json::to_value(&reports)?), ok))
}

fn cmd_verify(ctx: &Ctx) -> Result<(OutputTable, bool)> {
    let alg = ctx.algebra()?;
    ctx.guard(&alg, GUARD_LEVEL, "verification")?;
    let report = verify(&alg, ctx.threads)?;
    let mut t = OutputTable::new(["check", "result", "detail"]);
    for c in &report.checks {
        t.push([c.name.clone(), if c.passed { "pass".into() } else { "FAIL".into() }, c.detail.clone()]);
    }
    let ok = report.passed();
    Ok((t.with_json(serde_json::to_value(&report)?), ok))
}

fn run(cli: Cli) -> Result<bool> {
    let threads = threads_from_env(cli.common.threads)?;
    let ctx = Ctx { common: cli.common, threads };
    let (table, ok, plain) = match &cli.command {
        Command::Mul { expr } => (cmd_mul(&ctx, expr)?, true, true),
        Command::Classify { triad } => (cmd_classify(&ctx, triad)?, true, false),
        Command::Census { kind: CensusKind::Triads } => (cmd_census_triads(&ctx)?, true, false),
        Command::Census { kind: CensusKind::Subalgebras } => (cmd_census_subalgebras(&ctx)?, true, false),
        Command::Zd { kind, strict_squares } => (cmd_zd(&ctx, kind, *strict_squares)?, true, false),
        Command::Formulas { max_level } => {
            let (t, ok) = cmd_formulas(*max_level)?;
            (t, ok, false)
        }
        Command::Verify => {
            let (t, ok) = cmd_verify(&ctx)?;
            (t, ok, false)
        }
    };
    // A single value prints bare in the default format.
    let text = if plain && ctx.common.format == Format::Md {
        format!("{}\n", table.rows[0][0])
    } else {
        table.render(ctx.common.format)?
    };
    match &ctx.common.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
