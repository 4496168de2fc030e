use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ghs_core::dag::{parse_edge_list, Bipartition, Dag, Family, GraphJson};
use ghs_core::ghs::{fpp_group_check, fpp_lattice_points, GhsInstance, InstanceJson, DEFAULT_FPP_CAP};
use ghs_core::linalg::{is_prime, parse_matrix_json, snf};
use ghs_core::sweep::{run_suite, tally, ConjectureSweep, CounterexampleLog, Suite, SuiteConfig, SweepMode};
use ghs_core::verify::{
    check_bipartite_formula, check_cyclic_cokernel, check_exact_largest, check_largest_bound, check_pairwise_coprime,
    check_prime_bipartite, ConjectureCase, Verdict, VerificationReport,
};
use ghs_core::BigInt;
use serde_json::json;

use crate::args::{Cli, Command, ConjectureArgs, FamilyName, Format, InstanceArgs, SuiteName, VerifyArgs};
use crate::config::{parse_range, pick, ConfigFile};
use crate::output::{self, group_name, join};

/// Process outcome: 0 for success, 1 when a claim was violated.
pub struct Status(u8);

impl From<Status> for std::process::ExitCode {
    fn from(s: Status) -> Self {
        std::process::ExitCode::from(s.0)
    }
}

const OK: Status = Status(0);
const VIOLATED: Status = Status(1);

struct Global {
    seed: u64,
    format: Option<Format>,
    out: Option<std::path::PathBuf>,
    file: ConfigFile,
}

impl Global {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

pub fn run(cli: Cli) -> Result<Status> {
    let file = ConfigFile::load(cli.config.as_deref())?;
    let g = Global {
        seed: pick(cli.seed, file.seed, 0),
        format: cli.format.or(file.format),
        out: cli.out.or_else(|| file.out.clone()),
        file,
    };
    match cli.command {
        Command::Snf { file, transforms } => cmd_snf(&g, &file, transforms),
        Command::Ghs(a) => cmd_ghs(&g, &a),
        Command::Verify(a) => cmd_verify(&g, &a),
        Command::Conjecture(a) => cmd_conjecture(&g, &a),
        Command::Fpp { instance, cap, points } => {
            cmd_fpp(&g, &instance, pick(cap, g.file.cap, DEFAULT_FPP_CAP), points)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn json_line(w: &mut dyn Write, v: &impl serde::Serialize) -> Result<()> {
    writeln!(w, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

fn cmd_snf(g: &Global, path: &Path, transforms: bool) -> Result<Status> {
    let a = parse_matrix_json(&read(path)?)?;
    let res = snf(&a)?;
    let mut w = output::open(g.out.as_deref())?;
    match g.format(Format::Text) {
        Format::Text => {
            writeln!(w, "{}", join(&res.diagonal, " "))?;
            if transforms {
                writeln!(w, "S:\n{}\nT:\n{}", res.left, res.right)?;
            }
        }
        Format::Json => {
            if transforms {
                json_line(&mut w, &res)?;
            } else {
                json_line(
                    &mut w,
                    &json!({ "diagonal": ghs_core::decimal::strings(&res.diagonal) }),
                )?;
            }
        }
        Format::Csv => {
            let mut c = output::csv_writer(&mut w);
            c.write_record(["diagonal"])?;
            c.write_record([join(&res.diagonal, ";")])?;
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(OK)
}

fn parse_diagonal(entries: &[String]) -> Result<Vec<BigInt>> {
    entries
        .iter()
        .map(|s| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|_| anyhow!("invalid diagonal entry {s:?}"))
        })
        .collect()
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize> {
    v.ok_or_else(|| anyhow!("--family {family} needs --{flag}"))
}

fn family(a: &InstanceArgs, name: FamilyName) -> Result<Family> {
    Ok(match name {
        FamilyName::Path => Family::Path(need(a.n, "n", "path")?),
        FamilyName::Complete => Family::Complete(need(a.n, "n", "complete")?),
        FamilyName::B => Family::B(need(a.i, "i", "b")?),
        FamilyName::C => Family::C(need(a.i, "i", "c")?),
        FamilyName::BipartiteMatching => Family::BipartiteMatching(
            need(a.u, "u", "bipartite-matching")?,
            need(a.v, "v", "bipartite-matching")?,
        ),
        FamilyName::BipartiteComplete => Family::BipartiteComplete(
            need(a.u, "u", "bipartite-complete")?,
            need(a.v, "v", "bipartite-complete")?,
        ),
    })
}

fn parse_graph(text: &str) -> Result<Dag> {
    if text.trim_start().starts_with('{') {
        Ok(GraphJson::parse(text)?)
    } else {
        Ok(parse_edge_list(text)?)
    }
}

/// The instance and, when one exists, its source/sink split.
fn load_instance(a: &InstanceArgs, file: &ConfigFile) -> Result<(GhsInstance, Option<Bipartition>)> {
    if let Some(path) = &a.file {
        let inst = InstanceJson::parse(&read(path)?)?;
        let bip = Bipartition::infer(inst.graph());
        return Ok((inst, bip));
    }
    let (graph, bip) = if let Some(path) = &a.graph {
        let g = parse_graph(&read(path)?)?;
        let bip = Bipartition::infer(&g);
        (g, bip)
    } else if let Some(name) = a.family {
        let fam = family(a, name)?;
        (fam.build()?, fam.bipartition())
    } else {
        bail!("give an instance file, --graph, or --family");
    };
    let inst = match (&a.d, a.m.or(file.m)) {
        (Some(d), _) => GhsInstance::build(parse_diagonal(d)?, graph)?,
        (None, Some(m)) => GhsInstance::constant(m, graph)?,
        (None, None) => bail!("give the diagonal with --d or --m"),
    };
    Ok((inst, bip))
}

fn cmd_ghs(g: &Global, a: &InstanceArgs) -> Result<Status> {
    let (inst, _) = load_instance(a, &g.file)?;
    let res = inst.snf()?;
    let h = inst.graph().longest_path_length();
    let bound = inst.constant_diagonal().map(|m| m.pow(h as u32));
    let largest = res.diagonal.last().cloned().unwrap_or_default();
    let met = bound.as_ref().map(|b| *b == largest);
    let mut w = output::open(g.out.as_deref())?;
    match g.format(Format::Text) {
        Format::Text => {
            writeln!(w, "matrix:\n{}", inst.matrix())?;
            writeln!(w, "snf: {}", join(&res.diagonal, " "))?;
            writeln!(w, "nonunit: {}", join(&res.nonunit(), " "))?;
            writeln!(w, "h: {h}")?;
            if let (Some(b), Some(met)) = (&bound, met) {
                writeln!(w, "bound m^h: {b} ({})", if met { "met" } else { "not met" })?;
            }
        }
        Format::Json => {
            let v = json!({
                "instance": InstanceJson::from(&inst),
                "matrix": inst.matrix(),
                "snf": ghs_core::decimal::strings(&res.diagonal),
                "nonunit": ghs_core::decimal::strings(&res.nonunit()),
                "h": h,
                "bound": bound.as_ref().map(ToString::to_string),
                "bound_met": met,
            });
            json_line(&mut w, &v)?;
        }
        Format::Csv => {
            let mut c = output::csv_writer(&mut w);
            c.write_record(["n", "d", "edges", "snf", "h", "bound", "bound_met"])?;
            let json = InstanceJson::from(&inst);
            c.write_record([
                inst.n().to_string(),
                ghs_core::decimal::strings(&json.d).join(";"),
                output::edges(&json.graph),
                join(&res.diagonal, ";"),
                h.to_string(),
                bound.map(|b| b.to_string()).unwrap_or_default(),
                met.map(|m| m.to_string()).unwrap_or_default(),
            ])?;
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(OK)
}

fn suite_of(name: SuiteName) -> Suite {
    match name {
        SuiteName::All => Suite::All,
        SuiteName::Cyclic => Suite::Cyclic,
        SuiteName::Bound => Suite::Bound,
        SuiteName::Exact => Suite::Exact,
        SuiteName::Bipartite => Suite::Bipartite,
        SuiteName::Families => Suite::Families,
    }
}

fn instance_reports(
    suite: SuiteName,
    inst: &GhsInstance,
    bip: Option<&Bipartition>,
) -> Result<Vec<VerificationReport>> {
    let constant = inst.constant_diagonal().is_some();
    let prime = inst
        .constant_diagonal()
        .and_then(|m| u64::try_from(m).ok())
        .is_some_and(is_prime);
    let mut out = Vec::new();
    let all = suite == SuiteName::All;
    if all || suite == SuiteName::Cyclic {
        out.push(check_cyclic_cokernel(inst)?);
        out.push(check_pairwise_coprime(inst)?);
    }
    if suite == SuiteName::Bound || (all && constant) {
        out.push(check_largest_bound(inst)?);
    }
    if suite == SuiteName::Exact || (all && constant) {
        out.push(check_exact_largest(inst)?);
    }
    if suite == SuiteName::Bipartite || (all && constant && bip.is_some()) {
        let bip = bip.ok_or_else(|| anyhow!("instance graph is not bipartite with all edges source -> sink"))?;
        out.push(check_bipartite_formula(inst, bip)?);
        if prime {
            out.push(check_prime_bipartite(inst, bip)?);
        }
    }
    if suite == SuiteName::Families {
        bail!("the families suite builds its own instances; drop --instance");
    }
    Ok(out)
}

fn cmd_verify(g: &Global, a: &VerifyArgs) -> Result<Status> {
    let f = &g.file;
    let suite = pick(a.suite, f.suite, SuiteName::All);
    let reports = if let Some(path) = &a.instance {
        let inst = InstanceJson::parse(&read(path)?)?;
        let bip = Bipartition::infer(inst.graph());
        instance_reports(suite, &inst, bip.as_ref())?
    } else {
        let d = SuiteConfig::default();
        let range = |flag: &Option<String>, file: &Option<String>, default| -> Result<(u64, u64)> {
            flag.as_ref().or(file.as_ref()).map_or(Ok(default), |s| parse_range(s))
        };
        let cfg = SuiteConfig {
            seed: g.seed,
            random: a.random.or(f.random),
            n_max: pick(a.n_max, f.n_max, d.n_max),
            ms: pick(a.ms.clone(), f.ms.clone(), d.ms),
            m_range: range(&a.m_range, &f.m_range, d.m_range)?,
            diag_range: range(&a.diag_range, &f.diag_range, d.diag_range)?,
            primes: pick(a.primes.clone(), f.primes.clone(), d.primes),
            family_m: pick(a.m, f.m, d.family_m),
            i_max: pick(a.i_max, f.i_max, d.i_max),
            c_max: pick(a.c_max, f.c_max, d.c_max),
            ..d
        };
        run_suite(suite_of(suite), &cfg)?
    };

    let mut w = output::open(g.out.as_deref())?;
    match g.format(Format::Json) {
        Format::Json => {
            for r in &reports {
                writeln!(w, "{}", r.to_json_line())?;
            }
        }
        Format::Text => {
            for r in &reports {
                writeln!(w, "{}", output::report_text(r))?;
            }
        }
        Format::Csv => {
            let mut c = output::csv_writer(&mut w);
            c.write_record(output::REPORT_CSV_HEADER)?;
            for r in &reports {
                c.write_record(output::report_csv_row(r))?;
            }
            c.flush()?;
        }
    }
    w.flush()?;
    for (claim, counts) in tally(&reports) {
        let parts: Vec<String> = counts
            .iter()
            .map(|(v, k)| format!("{}={k}", serde_json::to_value(v).unwrap().as_str().unwrap_or("")))
            .collect();
        eprintln!("{claim}: {}", parts.join(" "));
    }
    Ok(if reports.iter().any(VerificationReport::is_failure) {
        VIOLATED
    } else {
        OK
    })
}

fn write_cases(path: &Path, format: Format, cases: &[ConjectureCase]) -> Result<()> {
    let mut w = output::open(Some(path))?;
    match format {
        Format::Json => {
            for c in cases {
                writeln!(w, "{}", c.to_json_line())?;
            }
        }
        Format::Text => {
            for c in cases {
                writeln!(w, "{}", output::case_text(c))?;
            }
        }
        Format::Csv => {
            let mut csv = output::csv_writer(&mut w);
            csv.write_record(output::CASE_CSV_HEADER)?;
            for c in cases {
                csv.write_record(output::case_csv_row(c))?;
            }
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_replay(g: &Global, path: &Path) -> Result<Status> {
    let logged = CounterexampleLog::new(path).read()?;
    let mut w = output::open(None)?;
    let mut all_reproduced = true;
    for c in &logged {
        let again = c.replay()?;
        let reproduced = again == *c;
        all_reproduced &= reproduced;
        match g.format(Format::Json) {
            Format::Json => json_line(&mut w, &json!({ "case": again, "reproduced": reproduced }))?,
            _ => writeln!(w, "{} reproduced={reproduced}", output::case_text(&again))?,
        }
    }
    writeln!(
        w,
        "{}",
        json!({ "entries": logged.len(), "all_reproduced": all_reproduced })
    )?;
    w.flush()?;
    Ok(if all_reproduced { OK } else { VIOLATED })
}

/// Default ceiling for exhaustive sweeps.
const MAX_EXHAUSTIVE_N: usize = 7;

fn cmd_conjecture(g: &Global, a: &ConjectureArgs) -> Result<Status> {
    if let Some(path) = &a.replay {
        return cmd_replay(g, path);
    }
    let f = &g.file;
    let primes = pick(a.primes.clone(), f.primes.clone(), vec![2, 3, 5]);
    let random = if a.exhaustive { None } else { a.random.or(f.random) };
    let mode = match random {
        Some(count) => SweepMode::Random {
            count,
            n: pick(a.n, f.n, 6),
            seed: g.seed,
        },
        None => {
            let n_max = pick(a.n_max, f.n_max, 5);
            let n_min = pick(a.n_min, f.n_min, n_max);
            let cap = pick(a.max_exhaustive_n, f.max_exhaustive_n, MAX_EXHAUSTIVE_N);
            if n_max > cap {
                bail!("exhaustive sweep with n-max {n_max} exceeds the cap {cap} (raise --max-exhaustive-n)");
            }
            if n_min > n_max {
                bail!("n-min {n_min} exceeds n-max {n_max}");
            }
            SweepMode::Exhaustive { n_min, n_max }
        }
    };
    let sweep = ConjectureSweep { primes, mode };
    let (cases, summary) = sweep.run()?;
    let format = g.format(Format::Json);

    if let Some(path) = a.report.as_ref().or(f.report.as_ref()) {
        write_cases(path, format, &cases)?;
    }
    let violated: Vec<&ConjectureCase> = cases.iter().filter(|c| c.verdict == Verdict::Violated).collect();
    match &g.out {
        Some(path) => {
            CounterexampleLog::new(path).append(violated.iter().copied())?;
        }
        None => {
            for c in &violated {
                eprintln!("counterexample: {}", c.to_json_line());
            }
        }
    }

    let mut w = output::open(None)?;
    match format {
        Format::Json => json_line(&mut w, &summary)?,
        Format::Text => {
            writeln!(
                w,
                "cases: {}\nholds: {}\nviolated: {}",
                summary.cases, summary.holds, summary.violated
            )?;
            for (p, c) in &summary.by_prime {
                writeln!(w, "p={p}: holds {} violated {}", c.holds, c.violated)?;
            }
        }
        Format::Csv => {
            let mut csv = output::csv_writer(&mut w);
            csv.write_record(["cases", "holds", "violated", "primes"])?;
            csv.write_record([
                summary.cases.to_string(),
                summary.holds.to_string(),
                summary.violated.to_string(),
                join(&sweep.primes, ";"),
            ])?;
            csv.flush()?;
        }
    }
    w.flush()?;
    Ok(if violated.is_empty() { OK } else { VIOLATED })
}

fn cmd_fpp(g: &Global, a: &InstanceArgs, cap: u64, list_points: bool) -> Result<Status> {
    let (inst, _) = load_instance(a, &g.file)?;
    let cap = BigInt::from(cap);
    let check = fpp_group_check(&inst, &cap)?;
    let points = if list_points {
        Some(fpp_lattice_points(&inst, &cap)?)
    } else {
        None
    };
    let group = group_name(&check.invariant_factors);
    let mut w = output::open(g.out.as_deref())?;
    match g.format(Format::Text) {
        Format::Text => {
            writeln!(w, "points: {}", check.point_count)?;
            writeln!(w, "det: {}", check.det)?;
            writeln!(w, "group: {group}")?;
            writeln!(w, "orders match: {}", if check.matches { "yes" } else { "no" })?;
            for p in points.iter().flatten() {
                writeln!(w, "{}", join(p, " "))?;
            }
        }
        Format::Json => {
            let mut v = serde_json::to_value(&check)?;
            v["group"] = json!(group);
            if let Some(pts) = &points {
                let pts: Vec<Vec<String>> = pts.iter().map(|p| ghs_core::decimal::strings(p)).collect();
                v["points"] = json!(pts);
            }
            json_line(&mut w, &v)?;
        }
        Format::Csv => {
            let mut c = output::csv_writer(&mut w);
            c.write_record(["points", "det", "invariant_factors", "group", "matches"])?;
            c.write_record([
                check.point_count.to_string(),
                check.det.to_string(),
                join(&check.invariant_factors, ";"),
                group,
                check.matches.to_string(),
            ])?;
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(if check.matches { OK } else { VIOLATED })
}
