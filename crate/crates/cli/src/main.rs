use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qmk_core::linalg::{parse_rational, Rational};
use qmk_core::local::{local_quiver, Decomposition, DEFAULT_MAX_PARTS};
use qmk_core::semiinv::{
    eval_semiinvariant, in_u, moduli_coordinates_qm, qiii_alpha, qiii_generators, qiii_witness,
    qm_alpha, qm_generators, qm_witness, Representation, SemiInvariantSpec,
};
use qmk_core::smoothness::{
    classify_with_pairwise, sweep_audit, verdict_record, ChainStep, ClassifyOptions,
    PairwiseOutcome, SweepBounds, SweepOptions, VerdictRecord, Witness,
};
use qmk_core::suites::{run_all, run_suite, SUITES};
use qmk_core::{DimVector, ExceptionRule};

#[derive(Parser)]
#[command(
    name = "qmk",
    version,
    about = "Moduli of bipartite quiver representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args, Clone, Copy)]
struct Stability {
    /// Every vector with all entries equal has no stables, (1,1;1,1) included.
    #[arg(long)]
    strict_exception: bool,
}

impl Stability {
    fn rule(self) -> ExceptionRule {
        ExceptionRule::from_strict(self.strict_exception)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the moduli space of one dimension vector.
    Classify {
        /// Dimension vector "a1,...,ap;b1,...,bq".
        alpha: String,
        #[command(flatten)]
        stability: Stability,
        #[arg(long, default_value_t = DEFAULT_MAX_PARTS)]
        max_parts: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify every normalized vector within bounds and audit the claims.
    Sweep {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        p_max: u32,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        q_max: u32,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_PARTS)]
        max_parts: usize,
        #[command(flatten)]
        stability: Stability,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Local quiver at a semisimple point.
    Local {
        alpha: String,
        /// "β1 x m1 + β2 x m2 [distinct] + ..."
        #[arg(long)]
        parts: String,
        #[command(flatten)]
        stability: Stability,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Shorthand for --format dot.
        #[arg(long)]
        dot: bool,
    },
    /// Evaluate determinantal semi-invariants on a representation.
    Semi {
        /// Built-in quiver: "qm:<m>" or "qiii".
        #[arg(long)]
        quiver: Option<String>,
        /// Witness parameters, comma separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
        /// Representation JSON file.
        #[arg(long)]
        rep: Option<PathBuf>,
        /// Semi-invariant spec JSON file; defaults to the built-in generators.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run seeded property suites.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_alpha(s: &str) -> Result<DimVector> {
    s.parse()
        .with_context(|| format!("bad dimension vector {s:?}"))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn reject_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        bail!("--format dot is only available for `local`");
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Classify {
            alpha,
            stability,
            max_parts,
            format,
        } => {
            reject_dot(format)?;
            let alpha = parse_alpha(&alpha)?;
            let opts = ClassifyOptions {
                rule: stability.rule(),
                max_parts,
            };
            let (verdict, pairwise) = classify_with_pairwise(&alpha, opts)?;
            let record = verdict_record(&verdict, pairwise);
            match format {
                Format::Json => print_json(&serde_json::to_value(&record)?),
                _ => print!("{}", verdict_text(&record)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            p_max,
            q_max,
            n_max,
            max_parts,
            stability,
            format,
        } => {
            reject_dot(format)?;
            let threads = match std::env::var("QMK_THREADS") {
                Ok(v) => Some(
                    v.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&n| n >= 1)
                        .with_context(|| {
                            format!("QMK_THREADS must be a positive integer, got {v:?}")
                        })?,
                ),
                Err(_) => None,
            };
            let report = sweep_audit(SweepOptions {
                bounds: SweepBounds {
                    p_max: p_max as usize,
                    q_max: q_max as usize,
                    n_max,
                },
                classify: ClassifyOptions {
                    rule: stability.rule(),
                    max_parts,
                },
                threads,
            })?;
            match format {
                Format::Json => print_json(&report.to_json()),
                _ => print!("{}", report.to_table()),
            }
            if report.has_refuted() {
                eprintln!("refuted claims present");
                return Ok(ExitCode::from(1));
            }
            if report
                .claims
                .iter()
                .any(|c| c.status.as_str() == "DISPUTED")
            {
                eprintln!("warning: disputed claims present");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Local {
            alpha,
            parts,
            stability,
            format,
            dot,
        } => {
            let alpha = parse_alpha(&alpha)?;
            let parts = Decomposition::parse_parts(&parts)?;
            let d = Decomposition::new(&alpha, parts, stability.rule())?;
            let lq = local_quiver(&d)?;
            match if dot { Format::Dot } else { format } {
                Format::Dot => print!("{}", lq.to_dot()),
                Format::Json => {
                    let mut v = lq.to_json();
                    v["alpha"] = json!(alpha.to_string());
                    v["decomposition"] = json!(d.to_string());
                    print_json(&v);
                }
                Format::Text => {
                    println!("alpha          {alpha}");
                    println!("decomposition  {d}");
                    println!("dims           {:?}", lq.dims.dims);
                    println!("arrows");
                    for row in &lq.quiver.arrows {
                        println!("  {row:?}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Semi {
            quiver,
            witness,
            rep,
            spec,
            format,
        } => {
            reject_dot(format)?;
            semi(quiver, witness, rep, spec, format)
        }
        Command::Verify {
            suite,
            seed,
            format,
        } => {
            reject_dot(format)?;
            let reports = if suite == "all" {
                run_all(seed)
            } else {
                vec![run_suite(&suite, seed).with_context(|| {
                    format!("unknown suite {suite:?}; known: all, {}", SUITES.join(", "))
                })?]
            };
            let passed = reports.iter().all(|r| r.passed());
            match format {
                Format::Json => print_json(&json!({
                    "seed": seed,
                    "passed": passed,
                    "suites": reports,
                })),
                _ => {
                    for r in &reports {
                        println!("{}", r.summary());
                        for n in &r.notes {
                            println!("    {n}");
                        }
                        for f in &r.failures {
                            println!("    failure: {f}");
                        }
                    }
                }
            }
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

enum BuiltIn {
    Qm(usize),
    Qiii,
}

fn parse_quiver(s: &str) -> Result<BuiltIn> {
    if s == "qiii" {
        return Ok(BuiltIn::Qiii);
    }
    let m = s
        .strip_prefix("qm:")
        .and_then(|m| m.parse::<usize>().ok())
        .filter(|&m| m >= 1)
        .with_context(|| format!("unknown quiver {s:?}; expected qm:<m> or qiii"))?;
    Ok(BuiltIn::Qm(m))
}

fn detect_quiver(alpha: &DimVector) -> Option<BuiltIn> {
    if *alpha == qiii_alpha() {
        return Some(BuiltIn::Qiii);
    }
    let m = *alpha.left.first()? as usize;
    (m >= 1 && *alpha == qm_alpha(m)).then_some(BuiltIn::Qm(m))
}

fn parse_witness(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|x| parse_rational(x).map_err(Into::into))
        .collect()
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn semi(
    quiver: Option<String>,
    witness: Option<String>,
    rep: Option<PathBuf>,
    spec: Option<PathBuf>,
    format: Format,
) -> Result<ExitCode> {
    let builtin = quiver.as_deref().map(parse_quiver).transpose()?;
    let representation = match (&rep, &witness, &builtin) {
        (Some(_), Some(_), _) => bail!("give either --rep or --witness, not both"),
        (Some(path), None, _) => Representation::from_json(&read_json(path)?)?,
        (None, Some(w), Some(q)) => {
            let x = parse_witness(w)?;
            match q {
                BuiltIn::Qm(m) => qm_witness(*m, &x)?,
                BuiltIn::Qiii => qiii_witness(&x)?,
            }
        }
        (None, Some(_), None) => bail!("--witness needs --quiver"),
        (None, None, _) => bail!("give a representation with --rep or --quiver/--witness"),
    };
    let alpha = representation.alpha().clone();
    let builtin = match builtin {
        Some(b) => Some(b),
        None => detect_quiver(&alpha),
    };
    let (specs, label) = match (&spec, &builtin) {
        (Some(path), _) => (
            vec![SemiInvariantSpec::from_json(&read_json(path)?)?],
            "spec".to_string(),
        ),
        (None, Some(BuiltIn::Qm(m))) => (qm_generators(*m), "T".to_string()),
        (None, Some(BuiltIn::Qiii)) => (qiii_generators(), "T".to_string()),
        (None, None) => bail!("{alpha} has no built-in generators; pass --spec"),
    };
    let values = specs
        .iter()
        .map(|s| eval_semiinvariant(s, &representation))
        .collect::<Result<Vec<_>, _>>()?;
    let inside = in_u(&representation)?;
    let point = match builtin {
        Some(BuiltIn::Qm(_)) if spec.is_none() => moduli_coordinates_qm(&representation).ok(),
        _ => None,
    };
    let strings: Vec<String> = values.iter().map(ToString::to_string).collect();
    match format {
        Format::Json => print_json(&json!({
            "alpha": alpha.to_string(),
            "values": strings,
            "in_u": inside,
            "point": point.as_ref().map(ToString::to_string),
        })),
        _ => {
            println!("alpha  {alpha}");
            for (i, v) in strings.iter().enumerate() {
                println!("{label}{}  {v}", i + 1);
            }
            println!("in_U   {inside}");
            if let Some(p) = point {
                println!("point  {p}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verdict_text(r: &VerdictRecord) -> String {
    let mut out = format!("alpha     {}\nverdict   {}\n", r.alpha, r.kind);
    if let Some(d) = r.dim {
        out += &format!("dim       {d}\n");
    }
    if let Some(f) = &r.family {
        out += &format!("family    {f}\n");
    }
    match &r.pairwise {
        Some(PairwiseOutcome::Pass) => out += "pairwise  pass\n",
        Some(PairwiseOutcome::Fail { beta, gamma, k }) => {
            out += &format!("pairwise  fail {beta} + {gamma} k={k}\n");
        }
        None => {}
    }
    if let Some(reference) = &r.reference {
        out += &format!("reference {reference}\n");
    }
    if let Some(c) = &r.certificate {
        out += &format!("detector  {}\n", c.detector.as_str());
        for (i, step) in c.chain.iter().enumerate() {
            let lq = step.local();
            match step {
                ChainStep::Bipartite { decomposition, .. } => {
                    out += &format!("step {i}    {decomposition}\n");
                }
                ChainStep::General { parts, .. } => {
                    let parts: Vec<String> = parts
                        .iter()
                        .map(|(d, m)| format!("{:?} x{m}", d.dims))
                        .collect();
                    out += &format!(
                        "step {i}    {} in the previous local quiver\n",
                        parts.join(" + ")
                    );
                }
            }
            out += &format!(
                "          local dims {:?} arrows {:?}\n",
                lq.dims, lq.arrows
            );
        }
        match &c.witness {
            Witness::TwoVertex(w) => {
                out += &format!("witness   vertices {},{} k={}\n", w.i, w.j, w.k);
            }
            Witness::Triangle(w) => {
                out += &format!(
                    "witness   vertices {:?} arrows {:?}\n",
                    w.vertices, w.arrows
                );
            }
            Witness::Paper { figures, .. } => {
                for f in figures {
                    out += &format!(
                        "figure    {} {}\n",
                        f.name,
                        if f.matches { "matches" } else { "differs" }
                    );
                }
            }
        }
    }
    out
}
