use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use modrep::classify::{oracle, stembridge_char0_oracle, verify_with_engine};
use modrep::tensor::{is_mf, mf_char0, tensor_factors};
use modrep::{Decomposition, Engine, Error, ResolutionOutcome, RootSystem, RootType, Verdict, VerdictValue, VerifyMode, Weight, WeylTable};

#[derive(Parser)]
#[command(name = "modrep", version, about = "Characters, composition factors and tensor products in positive characteristic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Engine,
    Oracle,
    Both,
}

#[derive(Args)]
struct Common {
    /// Root system: A (with --rank), A1, A2, ..., B2 or C2.
    #[arg(long = "type", default_value = "A2")]
    ty: String,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with status 2 when a result cannot be determined.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    lhs: String,
    #[arg(long, allow_hyphen_values = true)]
    rhs: String,
}

#[derive(Subcommand)]
enum Command {
    /// Simple roots, positive roots and Cartan data.
    Rootsys {
        #[command(flatten)]
        common: Common,
    },
    /// Dominant weights of the Weyl module with their multiplicities.
    WeylChar {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
    },
    /// Dimension of the Weyl module by Weyl's formula.
    WeylDim {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
    },
    /// Multiplicity of a weight in the Weyl module, or in the simple module with --simple.
    WeightMult {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, requires = "p")]
        simple: bool,
    },
    /// The Jantzen sum in the basis of Weyl characters.
    Jantzen {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
    },
    /// Composition factors of the Weyl module.
    WeylFactors {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
    },
    /// Dominant weights of the simple module with their multiplicities.
    SimpleChar {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        highest: String,
    },
    /// Composition factors of a tensor product of simple modules.
    Tensor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        pair: Pair,
    },
    /// Whether a tensor product of simple modules is multiplicity free.
    Mf {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value_t = Method::Engine)]
        method: Method,
    },
    /// Multiplicity-freeness in characteristic zero.
    MfChar0 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        pair: Pair,
    },
    /// The closed-form classification verdict with the clause that decided it.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        pair: Pair,
    },
    /// Exhaustive comparison of a closed form against the engine.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        p: u32,
        /// oracle_vs_engine, char0_vs_engine_in_C1 or rank2_tables.
        #[arg(long, default_value = "oracle_vs_engine")]
        mode: String,
        #[arg(long)]
        threads: Option<usize>,
    },
}

/// A failure with the exit status it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::Invariant(_)) | Some(Error::Overflow) => 3,
            _ => 1,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

/// What a command prints, and whether it left something undetermined.
struct Output {
    json: serde_json::Value,
    text: String,
    undetermined: bool,
}

impl Output {
    fn new(json: serde_json::Value, text: String) -> Self {
        Output { json, text, undetermined: false }
    }
}

fn parse_weight(rs: &RootSystem, s: &str) -> anyhow::Result<Weight> {
    let coords = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad coordinate {x:?} in {s:?}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if coords.len() != rs.rank() {
        bail!("weight {s:?} has {} coordinates, expected {}", coords.len(), rs.rank());
    }
    Ok(Weight::new(&coords)?)
}

fn dominant_weight(rs: &RootSystem, s: &str) -> anyhow::Result<Weight> {
    let w = parse_weight(rs, s)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w).into());
    }
    Ok(w)
}

fn root_type(c: &Common) -> anyhow::Result<RootType> {
    Ok(RootType::parse(&c.ty, c.rank)?)
}

fn weyl_table(c: &Common) -> anyhow::Result<WeylTable> {
    Ok(WeylTable::new(Arc::new(RootSystem::new(root_type(c)?)?)))
}

fn mults_json(ws: &[(Weight, i64)]) -> serde_json::Value {
    ws.iter().map(|(w, k)| json!({"weight": w, "mult": k})).collect()
}

fn mults_text(ws: &[(Weight, i64)]) -> String {
    ws.iter().map(|(w, k)| format!("{w}  {k}")).collect::<Vec<_>>().join("\n")
}

fn factors_json(d: &Decomposition) -> serde_json::Value {
    json!({"factors": d.factors().iter().map(|(w, k)| json!({"weight": w, "mult": k})).collect::<Vec<_>>()})
}

fn outcome_output(o: &ResolutionOutcome) -> Output {
    match o {
        ResolutionOutcome::Resolved(d) => {
            let text = if d.is_empty() { "0".to_string() } else { d.to_string() };
            Output::new(factors_json(d), text)
        }
        ResolutionOutcome::Undetermined { reason, weights } => Output {
            json: json!({"undetermined": {"reason": reason, "weights": weights}}),
            text: format!("Undetermined: {reason}"),
            undetermined: true,
        },
    }
}

#[derive(Serialize)]
struct MethodVerdict<'a> {
    method: &'a str,
    #[serde(flatten)]
    verdict: &'a Verdict,
}

fn engine_unknown(v: &Verdict) -> bool {
    v.value == VerdictValue::Unknown
}

fn run(cmd: Command) -> Result<(Output, Format, bool), Failure> {
    let (out, common) = match cmd {
        Command::Rootsys { common } => {
            let rs = RootSystem::new(root_type(&common)?)?;
            let roots: Vec<_> = rs
                .positive_roots()
                .iter()
                .map(|r| json!({"simple_coords": r.simple_coords, "weight": r.fw, "height": r.height}))
                .collect();
            let json = json!({
                "type": rs.root_type().to_string(),
                "rank": rs.rank(),
                "cartan": rs.cartan(),
                "positive_roots": roots,
                "rho": rs.rho(),
                "coxeter_number": rs.coxeter_number(),
            });
            let mut text = format!("type {}  rank {}\ncartan {:?}\npositive roots:", rs.root_type(), rs.rank(), rs.cartan());
            for r in rs.positive_roots() {
                text.push_str(&format!("\n  {:?}  {}", r.simple_coords, r.fw));
            }
            text.push_str(&format!("\nrho {}\ncoxeter number {}", rs.rho(), rs.coxeter_number()));
            (Output::new(json, text), common)
        }
        Command::WeylChar { common, highest } => {
            let table = weyl_table(&common)?;
            let lam = dominant_weight(table.root_system(), &highest)?;
            let dom = table.dominant(&lam)?;
            let dim = table.weyl_char(&lam)?.dimension()?;
            let json = json!({"highest": lam, "dimension": dim, "weights": mults_json(&dom)});
            (Output::new(json, format!("dimension {dim}\n{}", mults_text(&dom))), common)
        }
        Command::WeylDim { common, highest } => {
            let rs = RootSystem::new(root_type(&common)?)?;
            let lam = dominant_weight(&rs, &highest)?;
            let dim = modrep::chars::weyl_dim(&rs, &lam)?;
            (Output::new(json!({"dimension": dim}), dim.to_string()), common)
        }
        Command::WeightMult { common, highest, weight, p, simple } => {
            let table = Arc::new(weyl_table(&common)?);
            let lam = dominant_weight(table.root_system(), &highest)?;
            let nu = parse_weight(table.root_system(), &weight)?;
            let k = match p {
                Some(p) if simple => Engine::with_table(table, p)?.simple_multiplicity(&lam, &nu)?,
                _ => table.weyl_char(&lam)?.get(&nu),
            };
            (Output::new(json!({"mult": k}), k.to_string()), common)
        }
        Command::Jantzen { common, p, highest } => {
            let e = Engine::for_type(root_type(&common)?, p)?;
            let lam = dominant_weight(e.root_system(), &highest)?;
            let terms = e.jantzen_sum_weyl(&lam)?.sorted(e.root_system());
            let json = json!({"terms": terms.iter().map(|(w, k)| json!({"weight": w, "coeff": k})).collect::<Vec<_>>()});
            let text = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.iter().map(|(w, k)| format!("{k}·χ{w}")).collect::<Vec<_>>().join(" + ")
            };
            (Output::new(json, text), common)
        }
        Command::WeylFactors { common, p, highest } => {
            let e = Engine::for_type(root_type(&common)?, p)?;
            let lam = dominant_weight(e.root_system(), &highest)?;
            (outcome_output(&e.weyl_composition_factors(&lam)?), common)
        }
        Command::SimpleChar { common, p, highest } => {
            let e = Engine::for_type(root_type(&common)?, p)?;
            let lam = dominant_weight(e.root_system(), &highest)?;
            let ch = e.simple_char(&lam)?;
            let rs = e.root_system();
            let mut dom = ch.dominant_part();
            dom.sort_by(|(a, _), (b, _)| rs.height_scaled(b).cmp(&rs.height_scaled(a)).then_with(|| b.cmp(a)));
            let dim = ch.dimension()?;
            let json = json!({"highest": lam, "dimension": dim, "weights": mults_json(&dom)});
            (Output::new(json, format!("dimension {dim}\n{}", mults_text(&dom))), common)
        }
        Command::Tensor { common, p, pair } => {
            let e = Engine::for_type(root_type(&common)?, p)?;
            let l = dominant_weight(e.root_system(), &pair.lhs)?;
            let m = dominant_weight(e.root_system(), &pair.rhs)?;
            (outcome_output(&tensor_factors(&e, &l, &m)?), common)
        }
        Command::Mf { common, p, pair, method } => {
            let ty = root_type(&common)?;
            let e = Engine::for_type(ty, p)?;
            let l = dominant_weight(e.root_system(), &pair.lhs)?;
            let m = dominant_weight(e.root_system(), &pair.rhs)?;
            let mut verdicts: Vec<(&str, Verdict)> = Vec::new();
            let mut undetermined = false;
            if method != Method::Oracle {
                let v = is_mf(&e, &l, &m)?;
                undetermined = engine_unknown(&v);
                verdicts.push(("engine", v));
            }
            if method != Method::Engine {
                verdicts.push(("oracle", oracle(ty, p, &l, &m)?));
            }
            let text = verdicts
                .iter()
                .map(|(name, v)| if method == Method::Both { format!("{name}: {}", v.value) } else { v.value.to_string() })
                .collect::<Vec<_>>()
                .join("\n");
            let json = json!({"verdicts": verdicts.iter().map(|(method, verdict)| MethodVerdict { method, verdict }).collect::<Vec<_>>()});
            (Output { json, text, undetermined }, common)
        }
        Command::MfChar0 { common, pair } => {
            let ty = root_type(&common)?;
            let table = weyl_table(&common)?;
            let l = dominant_weight(table.root_system(), &pair.lhs)?;
            let m = dominant_weight(table.root_system(), &pair.rhs)?;
            let mf = mf_char0(&table, &l, &m)?;
            let mut json = json!({"multiplicity_free": mf});
            let mut text = mf.to_string();
            match stembridge_char0_oracle(ty, &l, &m) {
                Ok(v) => {
                    text.push_str(&format!("\nclassification: {v}"));
                    json["classification"] = serde_json::to_value(&v).context("serializing verdict")?;
                }
                Err(Error::Unsupported(_)) => {}
                Err(err) => return Err(err.into()),
            }
            (Output::new(json, text), common)
        }
        Command::Classify { common, p, pair } => {
            let ty = root_type(&common)?;
            let rs = RootSystem::new(ty)?;
            let l = dominant_weight(&rs, &pair.lhs)?;
            let m = dominant_weight(&rs, &pair.rhs)?;
            let v = oracle(ty, p, &l, &m)?;
            let json = serde_json::to_value(&v).context("serializing verdict")?;
            (Output::new(json, v.to_string()), common)
        }
        Command::Verify { common, p, mode, threads } => {
            let ty = root_type(&common)?;
            let mode: VerifyMode = mode.parse()?;
            let e = Engine::for_type(ty, p)?;
            let report = match threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .context("building thread pool")?
                    .install(|| verify_with_engine(&e, mode))?,
                None => verify_with_engine(&e, mode)?,
            };
            let mut text = format!(
                "type {}  p {}  mode {}\ntotal {}\ncompared {}\nagreements {}\noracle unknown {} (engine: {} multiplicity free, {} with multiplicity)\nengine undetermined {}\nmismatches {}",
                report.root_type,
                report.p,
                report.mode,
                report.total,
                report.compared,
                report.agreements,
                report.oracle_unknown,
                report.unknown_engine_mf,
                report.unknown_engine_has_multiplicity,
                report.engine_undetermined,
                report.mismatches.len()
            );
            for mm in &report.mismatches {
                let rhs = mm.rhs.map(|w| format!(" x {w}")).unwrap_or_default();
                text.push_str(&format!("\n  {}{rhs}: expected {}, found {}", mm.lhs, mm.expected, mm.found));
            }
            let json = serde_json::to_value(&report).context("serializing report")?;
            let undetermined = report.engine_undetermined > 0;
            (Output { json, text, undetermined }, common)
        }
    };
    Ok((out, common.format, common.strict))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((out, format, strict)) => {
            let body = match format {
                Format::Json => out.json.to_string(),
                Format::Text => out.text,
            };
            // a closed pipe downstream is not an error
            if let Err(e) = writeln!(std::io::stdout().lock(), "{body}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            if strict && out.undetermined {
                eprintln!("error: result undetermined");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
