mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hodge_core::cache::{CacheFile, CACHE_ENV};
use hodge_core::hodge::{b_constant, c_constant, integral, lambda_cube, HodgeConstantTable};
use hodge_core::memo::INTEGRALS;
use hodge_core::numbers::b_sequence;
use hodge_core::obstruction::{degree0_gw, euler_class, euler_class_genus1, Target};
use hodge_core::verify::{self, Suite};
use hodge_core::{ClassTag, ExactRational, HodgeError, IntegralKey};
use output::{emit, Format, Record};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hodge", version, about = "Exact ψ and λ intersection numbers on moduli of curves")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    /// Persistent memo file, loaded before and appended to after the command.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,

    /// Print memo statistics to stderr on exit.
    #[arg(long, global = true)]
    stats: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// ⟨τ_{k_1}…τ_{k_n}⟩_g
    Psi(PointArgs),
    /// λ-class integrals and the constants b_g, c_g, ∫λ_{g-1}^3
    Lambda {
        #[arg(long, value_enum)]
        class: LambdaClass,
        #[command(flatten)]
        point: PointArgs,
    },
    /// b_0, …, b_G
    Bseq {
        #[arg(long)]
        max_genus: u32,
    },
    /// Table of b_g and c_g
    Table {
        #[arg(long, default_value_t = 1)]
        min_genus: u32,
        #[arg(long, default_value_t = 5)]
        max_genus: u32,
    },
    /// Euler class of T_X ⊠ E^∨ for dim X = r
    Euler {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        genus: u32,
    },
    /// Degree 0 descendent invariant
    Gw0 {
        /// point, P<r> or curve:<genus>
        #[arg(long)]
        target: String,
        #[arg(long)]
        genus: u32,
        /// a:k pairs for τ_k(H^a)
        #[arg(long, value_delimiter = ',')]
        insertions: Vec<String>,
    },
    /// Run a self-check suite; exits 1 if any check fails
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        max_genus: Option<u32>,
    },
    /// Inspect or compact the memo cache
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long, value_delimiter = ',')]
    exponents: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LambdaClass {
    /// λ_g
    G,
    /// λ_gλ_{g-1}
    Gg,
    /// λ_{g-1}
    Gm1,
    /// λ_gλ_{g-2}
    Gg2,
    /// λ_gλ_{g-1}λ_{g-2}
    Ggg,
    /// ∫_{M̄_g} λ_{g-1}^3
    Cube,
    /// b_g
    B,
    /// c_g
    C,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Write a sorted, deduplicated copy of the memo
    Export {
        #[arg(long)]
        out: PathBuf,
    },
    /// Number of memoized integrals
    Stats,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: HodgeError| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(String),
    Other(String),
    Verify,
}

impl From<HodgeError> for Failure {
    fn from(e: HodgeError) -> Self {
        match e {
            HodgeError::InvalidInput(_) => Failure::Usage(e.to_string()),
            HodgeError::Cache(_) => Failure::Other(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn rat(v: &ExactRational) -> Value {
    Value::String(v.to_string())
}

fn integral_record(key: &IntegralKey, value: &ExactRational) -> Record {
    Record {
        fields: vec![
            ("genus", json!(key.genus())),
            ("exponents", json!(key.exponents())),
            ("class", json!(key.tag().code())),
            ("value", rat(value)),
        ],
        pretty: format!("{key} = {value}"),
    }
}

fn constant_record(name: &str, genus: u32, value: &ExactRational) -> Record {
    Record {
        fields: vec![("genus", json!(genus)), ("class", json!(name)), ("value", rat(value))],
        pretty: format!("{name}_{genus} = {value}"),
    }
}

fn query(genus: u32, exponents: &[u32], tag: ClassTag) -> Result<Vec<Record>, Failure> {
    let key = IntegralKey::new(genus, exponents, tag);
    key.require_stable()?;
    let value = integral(&key)?;
    Ok(vec![integral_record(&key, &value)])
}

fn parse_insertion(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Usage(format!("insertion `{s}` is not of the form a:k"));
    let (a, k) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?))
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<(), Failure> {
    let records = match &cli.command {
        Command::Psi(p) => query(p.genus, &p.exponents, ClassTag::None)?,
        Command::Lambda { class, point } => {
            let g = point.genus;
            let constant = |name: &str, v: hodge_core::Result<ExactRational>| -> Result<Vec<Record>, Failure> {
                if !point.exponents.is_empty() {
                    return Err(Failure::Usage(format!("--class {name} takes no --exponents")));
                }
                Ok(vec![constant_record(name, g, &v?)])
            };
            match class {
                LambdaClass::B => constant("b", Ok(b_constant(g)))?,
                LambdaClass::C => constant("c", c_constant(g))?,
                LambdaClass::Cube => constant("cube", lambda_cube(g))?,
                LambdaClass::G => query(g, &point.exponents, ClassTag::LambdaG)?,
                LambdaClass::Gg => query(g, &point.exponents, ClassTag::LambdaGGm1)?,
                LambdaClass::Gm1 => query(g, &point.exponents, ClassTag::LambdaGm1)?,
                LambdaClass::Gg2 => query(g, &point.exponents, ClassTag::LambdaGGm2)?,
                LambdaClass::Ggg => query(g, &point.exponents, ClassTag::LambdaGGm1Gm2)?,
            }
        }
        Command::Bseq { max_genus } => {
            let b = b_sequence(*max_genus as usize);
            let values: Vec<Value> = b.iter().map(rat).collect();
            let shown: Vec<String> = b.iter().map(ToString::to_string).collect();
            match cli.format {
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string(&values).map_err(io::Error::from)?)?;
                    return Ok(());
                }
                _ => vec![Record {
                    fields: vec![("max_genus", json!(max_genus)), ("b", Value::Array(values))],
                    pretty: format!("[{}]", shown.join(", ")),
                }],
            }
        }
        Command::Table { min_genus, max_genus } => {
            if *min_genus == 0 || min_genus > max_genus {
                return Err(Failure::Usage("need 1 <= --min-genus <= --max-genus".into()));
            }
            let t = HodgeConstantTable::new(*min_genus, *max_genus);
            (*min_genus..=*max_genus)
                .map(|g| Record {
                    fields: vec![("genus", json!(g)), ("b", rat(&t.b[&g])), ("c", rat(&t.c[&g]))],
                    pretty: format!("{g:>3}  {:<24} {}", t.b[&g].to_string(), t.c[&g]),
                })
                .collect()
        }
        Command::Euler { dim, genus } => {
            let e = if *genus == 1 { euler_class_genus1(*dim)? } else { euler_class(*dim, *genus)? };
            vec![Record {
                fields: vec![
                    ("dim", json!(dim)),
                    ("genus", json!(genus)),
                    ("euler", json!(e.to_string())),
                    ("relative", json!(e.relative().to_string())),
                ],
                pretty: format!("e = {e}    ({})", e.relative()),
            }]
        }
        Command::Gw0 { target, genus, insertions } => {
            let x: Target = target.parse()?;
            let ins = insertions.iter().map(|s| parse_insertion(s)).collect::<Result<Vec<_>, _>>()?;
            let value = degree0_gw(&x, *genus, &ins)?;
            let shown: Vec<String> = ins.iter().map(|(a, k)| format!("tau_{k}(H^{a})")).collect();
            vec![Record {
                fields: vec![
                    ("target", json!(x.to_string())),
                    ("genus", json!(genus)),
                    ("insertions", json!(ins.iter().map(|(a, k)| format!("{a}:{k}")).collect::<Vec<_>>())),
                    ("value", rat(&value)),
                ],
                pretty: format!("<{}>_{{{genus},0}}^{x} = {value}", shown.join(" ")),
            }]
        }
        Command::Verify { suite, max_genus } => {
            let report = verify::run(*suite, *max_genus);
            match cli.format {
                Format::Pretty => writeln!(out, "{report}")?,
                _ => {
                    let records: Vec<Record> = report
                        .checks
                        .iter()
                        .map(|c| Record {
                            fields: vec![
                                ("suite", json!(report.suite)),
                                ("check", json!(c.name)),
                                ("passed", json!(c.passed)),
                                ("detail", json!(c.detail)),
                            ],
                            pretty: String::new(),
                        })
                        .collect();
                    emit(cli.format, &records, out)?;
                }
            }
            return if report.passed() { Ok(()) } else { Err(Failure::Verify) };
        }
        Command::Cache { action } => match action {
            CacheAction::Export { out: dest } => {
                let n = CacheFile::export(dest)?;
                vec![Record {
                    fields: vec![("path", json!(dest.display().to_string())), ("entries", json!(n))],
                    pretty: format!("wrote {n} entries to {}", dest.display()),
                }]
            }
            CacheAction::Stats => vec![Record {
                fields: vec![("entries", json!(INTEGRALS.len()))],
                pretty: format!("{} memoized integrals", INTEGRALS.len()),
            }],
        },
    };
    emit(cli.format, &records, out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cache = match &cli.cache {
        None => None,
        Some(path) => match CacheFile::open(path) {
            Ok((c, report)) => {
                if report.discarded_stale {
                    eprintln!("warning: {} has another format version; recomputing", path.display());
                }
                Some(c)
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    };
    let loaded = INTEGRALS.len();
    let stdout = io::stdout();
    let result = run(&cli, &mut stdout.lock());
    if let Some(c) = cache.as_mut() {
        if let Err(e) = c.sync() {
            eprintln!("warning: {e}");
        }
    }
    if cli.stats {
        eprintln!("loaded {loaded}, computed {}", INTEGRALS.computed_count());
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
