//! Command-line driver. Every command prints a report with four parts: the
//! command echo, the SHA-256 of the input (the input file, or the argument
//! line when there is none), a results section and a verdict section.
//!
//! Exit codes: 0 success, 2 domain error, 64 usage or parse error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::configuration::{
    is_extremal, minimal_delta_sites, minimal_delta_twist, ramification_accounting,
    star_minimal_sites, star_minimal_twist, torelli_verdict, twist, Configuration,
    ConfigurationError, Cover, Extremality, Label,
};
use crate::monodromy::{
    search, survey, CycleType, SearchOptions, SearchOutcome, SearchProblem, DEFAULT_MAX_DEGREE,
};
use crate::tables::{verify_tables, TableParams};
use crate::weierstrass::{format_classification, JInvariant, ModelParseError, WeierstrassModel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "esurf", version, about = "Exact tools for elliptic surfaces")]
struct Cli {
    /// Emit one JSON document instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the singular fibers of a Weierstrass model file.
    Classify {
        /// Model file (`A = ...`, `B = ...`), or `-` for stdin.
        file: PathBuf,
    },
    /// Invariants, extremality and j-map ramification of a configuration.
    Analyze {
        /// Configuration file (`genus = n`, `label : type`), or `-`.
        file: PathBuf,
    },
    /// Quadratic twist of a configuration at the given sites.
    Twist {
        file: PathBuf,
        /// Comma-separated labels; unknown labels are smooth points.
        #[arg(long, value_delimiter = ',')]
        sites: Vec<String>,
    },
    /// Twist a configuration to a *-minimal one.
    StarMinimal { file: PathBuf },
    /// Twist a configuration to the minimum of h11 - rho_tr in its orbit.
    MinTwist { file: PathBuf },
    /// Pull a configuration back along a cover of the base curve.
    Basechange {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Ramification over a point, e.g. `P=2,1`. Repeatable.
        #[arg(long = "at", value_name = "LABEL=E1,E2,...")]
        at: Vec<String>,
    },
    /// Infinitesimal Torelli verdict for a surface over the projective line.
    Torelli {
        #[arg(long, allow_hyphen_values = true)]
        pg: i64,
        #[arg(long)]
        constant_j: bool,
        #[arg(long)]
        extremal: bool,
    },
    /// Search for monodromy permutations of a three-point cover.
    Search {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        over0: CycleType,
        #[arg(long)]
        over1728: CycleType,
        #[arg(long)]
        overinf: CycleType,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// Realizability of every partition over infinity for j-maps.
    Survey {
        #[arg(long, default_value_t = 12)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// Classify every row of the constant-j extremal tables.
    Tables,
}

/// What a run printed and its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Report {
    results: String,
    verdict: String,
    json_results: Value,
    json_verdict: Value,
    code: i32,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn domain(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_DOMAIN,
            message: message.to_string(),
        }
    }
}

/// Runs the command line `args`, whose first element is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        stdout: text,
                        stderr: String::new(),
                        code: EXIT_OK,
                    }
                }
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                },
            };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .filter(|a| a != "--json")
        .collect::<Vec<_>>()
        .join(" ");

    let (digest, result) = match execute(&cli.command) {
        Ok((input, report)) => (hex_digest(input.as_deref().unwrap_or(echo.as_bytes())), Ok(report)),
        Err(f) => (String::new(), Err(f)),
    };
    match result {
        Ok(r) if cli.json => {
            let doc = json!({
                "command": echo,
                "input_sha256": digest,
                "results": r.json_results,
                "verdict": r.json_verdict,
                "exit_code": r.code,
            });
            Outcome {
                stdout: serde_json::to_string_pretty(&doc).expect("serializable") + "\n",
                stderr: String::new(),
                code: r.code,
            }
        }
        Ok(r) => {
            let mut out = String::new();
            let _ = writeln!(out, "command: {echo}");
            let _ = writeln!(out, "input-sha256: {digest}");
            let _ = writeln!(out, "== results ==");
            out.push_str(&r.results);
            let _ = writeln!(out, "== verdict ==");
            out.push_str(&r.verdict);
            Outcome {
                stdout: out,
                stderr: String::new(),
                code: r.code,
            }
        }
        Err(f) => {
            let stdout = if cli.json {
                let doc = json!({"command": echo, "error": f.message, "exit_code": f.code});
                serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr: format!("error: {}\n", f.message),
                code: f.code,
            }
        }
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn read_input(path: &Path) -> Result<(Vec<u8>, String), Failure> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
    };
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::usage(format!("{}: not valid UTF-8", path.display())))?;
    Ok((bytes, text))
}

fn read_configuration(path: &Path) -> Result<(Vec<u8>, Configuration), Failure> {
    let (bytes, text) = read_input(path)?;
    let c = Configuration::parse(&text).map_err(|e| match e {
        ConfigurationError::Parse(_) => Failure::usage(format!("{}: {e}", path.display())),
        other => Failure::domain(format!("{}: {other}", path.display())),
    })?;
    Ok((bytes, c))
}

fn execute(command: &Command) -> Result<(Option<Vec<u8>>, Report), Failure> {
    match command {
        Command::Classify { file } => {
            let (bytes, text) = read_input(file)?;
            Ok((Some(bytes), classify(file, &text)?))
        }
        Command::Analyze { file } => {
            let (bytes, c) = read_configuration(file)?;
            Ok((Some(bytes), analyze(&c)))
        }
        Command::Twist { file, sites } => {
            let (bytes, c) = read_configuration(file)?;
            let labels = sites
                .iter()
                .map(|s| Label::new(s.as_str()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::usage)?;
            Ok((Some(bytes), twist_report(&c, &labels)?))
        }
        Command::StarMinimal { file } => {
            let (bytes, c) = read_configuration(file)?;
            Ok((Some(bytes), star_minimal_report(&c)))
        }
        Command::MinTwist { file } => {
            let (bytes, c) = read_configuration(file)?;
            Ok((Some(bytes), min_twist_report(&c)?))
        }
        Command::Basechange { file, degree, at } => {
            let (bytes, c) = read_configuration(file)?;
            let cover = parse_cover(*degree, at)?;
            Ok((Some(bytes), basechange_report(&c, &cover)?))
        }
        Command::Torelli {
            pg,
            constant_j,
            extremal,
        } => Ok((None, torelli_report(*pg, *constant_j, *extremal))),
        Command::Search {
            degree,
            over0,
            over1728,
            overinf,
            workers,
            max_degree,
        } => {
            let problem =
                SearchProblem::new(*degree, over0.clone(), over1728.clone(), overinf.clone())
                    .map_err(Failure::domain)?;
            let options = SearchOptions {
                workers: *workers,
                max_degree: *max_degree,
            };
            Ok((None, search_report(&problem, options)?))
        }
        Command::Survey {
            degree,
            workers,
            max_degree,
        } => {
            let options = SearchOptions {
                workers: *workers,
                max_degree: *max_degree,
            };
            Ok((None, survey_report(*degree, options)?))
        }
        Command::Tables => Ok((None, tables_report()?)),
    }
}

fn classify(path: &Path, text: &str) -> Result<Report, Failure> {
    let model = WeierstrassModel::parse(text).map_err(|e| match e {
        ModelParseError::Syntax(s) => Failure::usage(format!("{}: {s}", path.display())),
        ModelParseError::Model(m) => Failure::domain(format!("{}: {m}", path.display())),
    })?;
    let c = model.classify().map_err(Failure::domain)?;
    let j = model.j_invariant();
    let j_text = match &j {
        JInvariant::Constant(v) => format!("constant {v}"),
        JInvariant::NonConstant => "non-constant".to_string(),
    };
    let results = format!("{model}{}", format_classification(&c));
    let verdict = format!(
        "noether = sum_euler {} divisible by 12\nj = {j_text}\n",
        c.euler_sum
    );
    let fibers: Vec<Value> = c
        .fibers
        .iter()
        .map(|pf| {
            json!({
                "place": pf.place.to_string(),
                "degree": pf.place.degree(),
                "type": pf.fiber,
                "valuations": pf.local.to_string(),
            })
        })
        .collect();
    Ok(Report {
        results,
        verdict,
        json_results: json!({
            "model": {"A": model.a().to_string(), "B": model.b().to_string()},
            "fibers": fibers,
            "deg_l": c.deg_l(),
            "sum_euler": c.euler_sum,
        }),
        json_verdict: json!({"noether": true, "j": j_text}),
        code: EXIT_OK,
    })
}

fn j_label(c: &Configuration) -> &'static str {
    if c.j_is_constant() {
        "constant j"
    } else {
        "non-constant j"
    }
}

fn analyze(c: &Configuration) -> Report {
    let report = c.report();
    let j_constant = c.j_is_constant();
    let extremality = is_extremal(c, j_constant);
    let mut results = format!("{c}{report}");
    let mut json_results = json!({
        "configuration": c,
        "invariants": report,
        "j_constant": j_constant,
    });
    if !j_constant {
        let sm = star_minimal_twist(c);
        match ramification_accounting(&sm) {
            Ok(r) => {
                let show = |v: &Option<Vec<u64>>| {
                    v.as_ref().map_or("none".to_string(), |v| join(v.iter()))
                };
                let _ = writeln!(results, "j degree    = {}", r.degree);
                let _ = writeln!(results, "over 0      = {}", show(&r.over0));
                let _ = writeln!(results, "over 1728   = {}", show(&r.over1728));
                let _ = writeln!(results, "over inf    = {}", join(r.over_inf.iter()));
                let _ = writeln!(
                    results,
                    "fibers      = {} (2 deg L + 2 - 2g = {})",
                    r.num_fibers, r.expected_fibers
                );
                json_results["ramification"] = json!(r);
            }
            Err(e) => {
                let _ = writeln!(results, "ramification: {e}");
            }
        }
        match minimal_delta_twist(c) {
            Ok(m) => {
                let _ = writeln!(results, "min delta   = {}", m.report().delta);
                json_results["min_delta"] = json!(m.report().delta);
            }
            Err(e) => {
                let _ = writeln!(results, "min delta: {e}");
            }
        }
    } else if let Some(family) = crate::configuration::constant_j_family(c) {
        let _ = writeln!(results, "j family    = {family}");
        json_results["j_family"] = json!(family);
    }
    let mut verdict = format!("delta = {}, {extremality} ({})\n", report.delta, j_label(c));
    let mut json_verdict = json!({"delta": report.delta, "extremality": extremality});
    if c.genus() == 0 {
        let t = torelli_verdict(report.p_g, j_constant, extremality == Extremality::Extremal);
        let _ = writeln!(verdict, "torelli = {t}");
        json_verdict["torelli"] = json!(t);
    }
    Report {
        results,
        verdict,
        json_results,
        json_verdict,
        code: EXIT_OK,
    }
}

fn twist_report(c: &Configuration, sites: &[Label]) -> Result<Report, Failure> {
    let outcome = twist(c, sites).map_err(Failure::domain)?;
    let before = c.report().delta;
    let after = outcome.configuration.report().delta;
    Ok(Report {
        results: format!("sites = {}\n{}", join(sites.iter()), outcome.configuration),
        verdict: format!(
            "delta change = {}\ndelta = {before} -> {after}\n",
            outcome.delta_change
        ),
        json_results: json!({"sites": sites, "configuration": outcome.configuration}),
        json_verdict: json!({"delta_change": outcome.delta_change, "delta_before": before, "delta_after": after}),
        code: EXIT_OK,
    })
}

fn star_minimal_report(c: &Configuration) -> Report {
    let sites = star_minimal_sites(c);
    let out = star_minimal_twist(c);
    Report {
        results: format!("sites = {}\n{out}", join(sites.iter())),
        verdict: format!("deg L = {} -> {}\n", c.deg_l(), out.deg_l()),
        json_results: json!({"sites": sites, "configuration": out}),
        json_verdict: json!({"deg_l_before": c.deg_l(), "deg_l_after": out.deg_l()}),
        code: EXIT_OK,
    }
}

fn min_twist_report(c: &Configuration) -> Result<Report, Failure> {
    let sites = minimal_delta_sites(c).map_err(Failure::domain)?;
    let out = minimal_delta_twist(c).map_err(Failure::domain)?;
    let (before, after) = (c.report().delta, out.report().delta);
    Ok(Report {
        results: format!("sites = {}\n{out}", join(sites.iter())),
        verdict: format!("delta = {before} -> {after}\n"),
        json_results: json!({"sites": sites, "configuration": out}),
        json_verdict: json!({"delta_before": before, "delta_after": after}),
        code: EXIT_OK,
    })
}

fn parse_cover(degree: u32, at: &[String]) -> Result<Cover, Failure> {
    let mut ramification = BTreeMap::new();
    for spec in at {
        let Some((label, indices)) = spec.split_once('=') else {
            return Err(Failure::usage(format!("--at '{spec}': expected LABEL=E1,E2,...")));
        };
        let label = Label::new(label.trim()).map_err(Failure::usage)?;
        let indices = indices
            .split(',')
            .map(|s| {
                let s = s.trim();
                s.bytes()
                    .all(|b| b.is_ascii_digit())
                    .then(|| s.parse::<u32>().ok())
                    .flatten()
                    .ok_or_else(|| Failure::usage(format!("--at '{spec}': invalid index '{s}'")))
            })
            .collect::<Result<Vec<u32>, _>>()?;
        if ramification.insert(label.clone(), indices).is_some() {
            return Err(Failure::usage(format!("--at: '{label}' given twice")));
        }
    }
    Ok(Cover {
        degree,
        ramification,
    })
}

fn basechange_report(c: &Configuration, cover: &Cover) -> Result<Report, Failure> {
    let out = crate::configuration::base_change(c, cover).map_err(Failure::domain)?;
    let report = out.report();
    Ok(Report {
        results: out.to_string(),
        verdict: format!(
            "genus = {}\ndeg L = {}\ndelta = {}\n",
            out.genus(),
            report.deg_l,
            report.delta
        ),
        json_results: json!({"configuration": out}),
        json_verdict: json!({"genus": out.genus(), "deg_l": report.deg_l, "delta": report.delta}),
        code: EXIT_OK,
    })
}

fn torelli_report(p_g: i64, constant_j: bool, extremal: bool) -> Report {
    let t = torelli_verdict(p_g, constant_j, extremal);
    Report {
        results: format!("p_g = {p_g}\nconstant j = {constant_j}\nextremal = {extremal}\n"),
        verdict: format!("{t}\n"),
        json_results: json!({"p_g": p_g, "constant_j": constant_j, "extremal": extremal}),
        json_verdict: json!(t),
        code: EXIT_OK,
    }
}

fn problem_text(p: &SearchProblem) -> String {
    let genus = p
        .genus()
        .map_or_else(|_| "none (odd Euler characteristic)".to_string(), |g| g.to_string());
    format!(
        "degree = {}\nover 0 = {}\nover 1728 = {}\nover inf = {}\ncover genus = {genus}\n",
        p.degree, p.over0, p.over1728, p.over_inf
    )
}

fn search_report(problem: &SearchProblem, options: SearchOptions) -> Result<Report, Failure> {
    let r = search(problem, options).map_err(Failure::domain)?;
    let mut results = problem_text(problem);
    let _ = writeln!(results, "scanned = {} of {}", r.scanned, r.class_size);
    let verdict = match &r.outcome {
        SearchOutcome::Found(w) => format!(
            "sigma0 = {}\nsigma1 = {}\nproduct = {}\n",
            w.sigma0,
            w.sigma1,
            w.product()
        ),
        SearchOutcome::Nonexistent => "NONEXISTENT\n".to_string(),
    };
    Ok(Report {
        results,
        verdict,
        json_results: json!({"problem": problem, "genus": problem.genus().ok(), "scanned": r.scanned.to_string(), "class_size": r.class_size.to_string()}),
        json_verdict: json!(r.outcome),
        code: EXIT_OK,
    })
}

fn survey_report(degree: usize, options: SearchOptions) -> Result<Report, Failure> {
    let entries = survey(degree, options).map_err(Failure::domain)?;
    let width = entries.iter().map(|e| e.over_inf.to_string().len()).max().unwrap_or(0);
    let mut results = String::new();
    let mut rows = Vec::new();
    for e in &entries {
        let genus = e.genus.map_or("-".to_string(), |g| g.to_string());
        let verdict = if e.realizable() { "realizable" } else { "NONEXISTENT" };
        let _ = writeln!(results, "{:<width$}  genus {genus:>2}  {verdict}", e.over_inf.to_string());
        rows.push(json!({"over_inf": e.over_inf, "genus": e.genus, "realizable": e.realizable()}));
    }
    let realizable = entries.iter().filter(|e| e.realizable()).count();
    let two_part_missing: Vec<String> = entries
        .iter()
        .filter(|e| e.over_inf.len() == 2 && !e.realizable())
        .map(|e| e.over_inf.to_string())
        .collect();
    let verdict = format!(
        "partitions = {}\nrealizable = {realizable}\ntwo-part nonexistent = {}\n",
        entries.len(),
        if two_part_missing.is_empty() { "none".to_string() } else { two_part_missing.join(" ") }
    );
    Ok(Report {
        results,
        verdict,
        json_results: json!({"degree": degree, "partitions": rows}),
        json_verdict: json!({"partitions": entries.len(), "realizable": realizable, "two_part_nonexistent": two_part_missing}),
        code: EXIT_OK,
    })
}

fn tables_report() -> Result<Report, Failure> {
    let checks = verify_tables(&TableParams::default()).map_err(Failure::domain)?;
    let mut results = String::new();
    let mut rows = Vec::new();
    let fibers = |v: &[(String, crate::kodaira::FiberType)]| {
        v.iter().map(|(p, f)| format!("{f}@{p}")).collect::<Vec<_>>().join(" ")
    };
    for c in &checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(
            results,
            "{status} {:<9} p_g={} {} : {}",
            c.row.family,
            c.row.p_g,
            c.row.formula,
            fibers(&c.actual)
        );
        rows.push(json!({
            "family": c.row.family,
            "formula": c.row.formula,
            "p_g": c.row.p_g,
            "expected": fibers(&c.row.expected),
            "actual": fibers(&c.actual),
            "pass": c.pass,
        }));
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let code = if passed == checks.len() { EXIT_OK } else { EXIT_DOMAIN };
    Ok(Report {
        results,
        verdict: format!("{passed}/{} rows pass\n", checks.len()),
        json_results: json!({"rows": rows}),
        json_verdict: json!({"passed": passed, "rows": checks.len()}),
        code,
    })
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    let v: Vec<String> = items.map(|x| x.to_string()).collect();
    if v.is_empty() {
        "none".to_string()
    } else {
        v.join(",")
    }
}
