//! Command-line surface: builds representations and reductions, lists cycle
//! spaces, prints weight enumerators, folds kernel enumerators back to code
//! enumerators, emits gadgets, and runs the end-to-end verification.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failing check, 2 on
//! usage, format or guard errors. Every error is a single stderr line of the
//! form `ERROR <code> <detail>`. Outputs are byte-identical across runs for
//! identical inputs.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use tricode::code::MAX_ENUMERATION_DIMENSION;
use tricode::complex::TriangularConfiguration;
use tricode::enumerator::WeightEnumerator;
use tricode::gadgets;
use tricode::io::{
    parse_code, parse_complex, parse_enumerator, write_complex, write_enumerator, write_meta,
    write_registry,
};
use tricode::matchreduce::{perfect_matching_enumerator, reduce};
use tricode::represent::{pipeline, recover_weight_enumerator, represent_code};
use tricode::BinaryCode;

#[derive(Parser)]
#[command(
    name = "tricode",
    version,
    about = "Triangular representations of binary codes"
)]
struct Cli {
    /// Refuse codes or cycle spaces of dimension above this (capped at 20,
    /// the exhaustive-enumeration ceiling).
    #[arg(long, global = true, default_value_t = MAX_ENUMERATION_DIMENSION)]
    max_dim: usize,

    /// Refuse perfect-matching searches on more triangles than this.
    #[arg(long, global = true, default_value_t = tricode::matchreduce::MAX_SEARCH_TRIANGLES)]
    max_triangles: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the balanced triangular representation of a code file.
    /// Codes with odd-weight words are doubled coordinate-wise first.
    Represent {
        /// Code file: `n d` header, then d rows of 0/1.
        code: PathBuf,
        /// Output complex file.
        #[arg(long, default_value = "delta.tri")]
        output: PathBuf,
        /// Output metadata file (n, d, m, e, slots, blocks, doubled).
        #[arg(long, default_value = "meta.txt")]
        meta: PathBuf,
    },
    /// Print the cycle-space dimension and kernel basis of a complex file.
    Cycles { complex: PathBuf },
    /// Print a weight enumerator: of a code, of a complex's cycle space, or
    /// of a weighted complex's perfect matchings.
    WeightEnum(WeightEnumArgs),
    /// Fold a kernel enumerator modulo e back to the code enumerator.
    Recover {
        /// Enumerator file: `exponent coefficient` lines.
        enumerator: PathBuf,
        /// Balanced block defect e (must exceed n).
        #[arg(long)]
        e: usize,
        /// Code length n.
        #[arg(long)]
        n: usize,
        /// Code dimension d.
        #[arg(long)]
        d: usize,
    },
    /// Build the perfect-matching reduction of a complex file.
    Reduce {
        complex: PathBuf,
        /// Output complex file with a weight column.
        #[arg(long, default_value = "delta2.tri")]
        output: PathBuf,
        /// Output registry file (gadget ranges and ports).
        #[arg(long, default_value = "registry.txt")]
        registry: PathBuf,
    },
    /// Emit a gadget in the complex file format with port comments.
    Gadget {
        /// One of: bn, sphere, closed-tunnel, pyramid, matching-edge,
        /// matching-triangle, chain.
        name: String,
        /// Size parameter for bn, sphere and chain.
        param: Option<usize>,
    },
    /// Run the pipeline both ways on a code and print one line per check.
    Verify { code: PathBuf },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WeightEnumArgs {
    /// Enumerate the codewords of a code file.
    #[arg(long)]
    code: Option<PathBuf>,
    /// Enumerate the cycle space of a complex file.
    #[arg(long)]
    cycles: Option<PathBuf>,
    /// Enumerate the perfect matchings of a weighted complex file.
    #[arg(long)]
    matchings: Option<PathBuf>,
}

struct CliError {
    code: &'static str,
    detail: String,
}

impl CliError {
    fn new(code: &'static str, detail: impl Into<String>) -> Self {
        Self {
            code,
            detail: detail.into(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))
}

fn load_code(path: &Path, max_dim: usize) -> Result<BinaryCode, CliError> {
    let code = parse_code(&read_file(path)?).map_err(|e| CliError::new("format", e.to_string()))?;
    let cap = max_dim.min(MAX_ENUMERATION_DIMENSION);
    if code.dimension() > cap {
        return Err(CliError::new(
            "guard",
            format!("code dimension {} exceeds {cap}", code.dimension()),
        ));
    }
    Ok(code)
}

fn load_complex(path: &Path) -> Result<(TriangularConfiguration, Option<Vec<u8>>), CliError> {
    parse_complex(&read_file(path)?).map_err(|e| CliError::new("format", e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            let text = err.to_string();
            let first = text.lines().next().unwrap_or("bad invocation");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            eprintln!("ERROR usage {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("ERROR {} {}", err.code, err.detail);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Represent { code, output, meta } => {
            let parsed = load_code(&code, cli.max_dim)?;
            let (run_code, doubled) = if parsed.is_even() {
                (parsed, false)
            } else {
                (parsed.doubled(), true)
            };
            let rep = represent_code(&run_code)
                .and_then(|r| r.balance())
                .map_err(|e| CliError::new("invalid", e.to_string()))?;
            write_file(&output, &write_complex(rep.config(), None))?;
            let mut meta_text = write_meta(&rep);
            let _ = writeln!(meta_text, "doubled {}", u8::from(doubled));
            write_file(&meta, &meta_text)?;
            Ok(true)
        }
        Command::Cycles { complex } => {
            let (cfg, _) = load_complex(&complex)?;
            let basis = cfg.cycle_space();
            let mut out = String::new();
            let _ = writeln!(out, "dim {}", basis.len());
            for v in &basis {
                let _ = writeln!(out, "{}", v.to_str01());
            }
            print!("{out}");
            Ok(true)
        }
        Command::WeightEnum(args) => {
            let enumerator = weight_enum(&args, cli.max_dim, cli.max_triangles)?;
            print!("{}", write_enumerator(&enumerator));
            Ok(true)
        }
        Command::Recover {
            enumerator,
            e,
            n,
            d,
        } => {
            let kernel = parse_enumerator(&read_file(&enumerator)?)
                .map_err(|err| CliError::new("format", err.to_string()))?;
            let recovered = recover_weight_enumerator(&kernel, e, n, d)
                .map_err(|err| CliError::new("invalid", err.to_string()))?;
            print!("{}", write_enumerator(&recovered.folded));
            Ok(true)
        }
        Command::Reduce {
            complex,
            output,
            registry,
        } => {
            let (cfg, _) = load_complex(&complex)?;
            let instance = reduce(&cfg);
            write_file(
                &output,
                &write_complex(instance.config(), Some(instance.weights())),
            )?;
            write_file(&registry, &write_registry(&instance))?;
            Ok(true)
        }
        Command::Gadget { name, param } => {
            let text = gadget_text(&name, param)?;
            print!("{text}");
            Ok(true)
        }
        Command::Verify { code } => verify(&code, cli.max_dim, cli.max_triangles),
    }
}

fn weight_enum(
    args: &WeightEnumArgs,
    max_dim: usize,
    max_triangles: usize,
) -> Result<WeightEnumerator, CliError> {
    if let Some(path) = &args.code {
        let code = load_code(path, max_dim)?;
        return code
            .weight_enumerator()
            .map_err(|e| CliError::new("guard", e.to_string()));
    }
    if let Some(path) = &args.cycles {
        let (cfg, _) = load_complex(path)?;
        let dim = cfg.cycle_space().len();
        let cap = max_dim.min(MAX_ENUMERATION_DIMENSION);
        if dim > cap {
            return Err(CliError::new(
                "guard",
                format!("cycle-space dimension {dim} exceeds {cap}"),
            ));
        }
        return cfg
            .cycle_weight_enumerator()
            .map_err(|e| CliError::new("guard", e.to_string()));
    }
    let path = args.matchings.as_ref().expect("clap group guarantees one");
    let (cfg, weights) = load_complex(path)?;
    let weights = weights.unwrap_or_else(|| vec![0; cfg.triangle_count()]);
    perfect_matching_enumerator(&cfg, &weights, max_triangles)
        .map_err(|e| CliError::new("guard", e.to_string()))
}

fn gadget_text(name: &str, param: Option<usize>) -> Result<String, CliError> {
    let need_param = || {
        param.ok_or_else(|| {
            CliError::new("usage", format!("gadget `{name}` needs a size parameter"))
        })
    };
    let gadget = match name {
        "bn" => gadgets::disjoint_triangles(need_param()?),
        "sphere" => {
            gadgets::sphere(need_param()?).map_err(|e| CliError::new("invalid", e.to_string()))?
        }
        "closed-tunnel" => gadgets::closed_tunnel(),
        "pyramid" => gadgets::pyramid(),
        "matching-edge" => gadgets::matching_edge(),
        "matching-triangle" => gadgets::matching_triangle(),
        "chain" => {
            let n = need_param()?;
            let ports = gadgets::disjoint_triangles(n);
            let port_list: Vec<_> = (1..=n).map(|i| ports.ports[&format!("B{i}")]).collect();
            gadgets::chain(&port_list).map_err(|e| CliError::new("invalid", e.to_string()))?
        }
        other => {
            return Err(CliError::new("usage", format!("unknown gadget `{other}`")));
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "# gadget {name}");
    for (label, t) in &gadget.ports {
        let [a, b, c] = t.vertices();
        let _ = writeln!(out, "# port {label} = {a} {b} {c}");
    }
    for (label, matching) in &gadget.canonical_matchings {
        let indices: Vec<String> = matching
            .iter()
            .map(|t| {
                gadget
                    .config
                    .triangle_position(t)
                    .expect("canonical matching triangle present")
                    .to_string()
            })
            .collect();
        let _ = writeln!(out, "# matching {label} = {}", indices.join(" "));
    }
    out.push_str(&write_complex(&gadget.config, None));
    Ok(out)
}

fn verify(code_path: &Path, max_dim: usize, max_triangles: usize) -> Result<bool, CliError> {
    let code = load_code(code_path, max_dim)?;
    let direct = code
        .weight_enumerator()
        .map_err(|e| CliError::new("guard", e.to_string()))?;
    let out = pipeline(&code).map_err(|e| CliError::new("invalid", e.to_string()))?;
    let rep = &out.representation;
    let run_code = rep.code().clone();
    let e = rep.exponent().expect("pipeline balances");

    let mut all = true;
    let mut report = |name: &str, passed: bool, detail: String| {
        println!("{} {name} {detail}", if passed { "PASS" } else { "FAIL" });
        all &= passed;
    };

    // Bijection between the code and the cycle space.
    let bijection = rep
        .verify_bijection()
        .map_err(|err| CliError::new("guard", err.to_string()))?;
    report(
        "bijection",
        bijection.passed(),
        match &bijection.failure {
            Some(reason) => reason.clone(),
            None => format!(
                "cycle space has dimension {} = code dimension; map injective, minimality preserved",
                bijection.kernel_dimension
            ),
        },
    );

    // Weight law: image weight = weight + degree * e.
    let mut law_failure = None;
    for c in run_code
        .enumerate_codewords()
        .map_err(|err| CliError::new("guard", err.to_string()))?
    {
        let image = rep
            .map_codeword(&c)
            .map_err(|err| CliError::new("invalid", err.to_string()))?;
        let degree = run_code
            .degree(&c)
            .map_err(|err| CliError::new("invalid", err.to_string()))?;
        if image.weight() != c.weight() + degree * e {
            law_failure = Some(format!(
                "codeword {}: image weight {} != {} + {}*{}",
                c.to_str01(),
                image.weight(),
                c.weight(),
                degree,
                e
            ));
            break;
        }
    }
    report(
        "weight-law",
        law_failure.is_none(),
        law_failure
            .unwrap_or_else(|| format!("image weight = weight + degree*{e} on all codewords")),
    );

    // Folding the kernel enumerator recovers the code enumerator.
    let recovery_ok = out.weight_enumerator == direct;
    report(
        "enumerator-recovery",
        recovery_ok,
        if recovery_ok {
            format!(
                "folded kernel enumerator equals direct enumeration ({} terms, e={e}{})",
                direct.terms().count(),
                if out.doubled { ", via doubling" } else { "" }
            )
        } else {
            "folded kernel enumerator differs from direct enumeration".to_string()
        },
    );

    // Matching route: cycles of the representation against perfect
    // matchings of its reduction.
    let delta = rep.config();
    let instance = reduce(delta);
    if instance.config().triangle_count() > max_triangles {
        return Err(CliError::new(
            "guard",
            format!(
                "reduction has {} triangles, above the search guard {max_triangles}",
                instance.config().triangle_count()
            ),
        ));
    }
    let cycles = delta
        .enumerate_cycles()
        .map_err(|err| CliError::new("guard", err.to_string()))?;
    let matchings = instance
        .perfect_matchings()
        .map_err(|err| CliError::new("guard", err.to_string()))?;
    let cycle_enum = delta
        .cycle_weight_enumerator()
        .map_err(|err| CliError::new("guard", err.to_string()))?;
    let matching_enum = instance
        .matching_weight_enumerator()
        .map_err(|err| CliError::new("guard", err.to_string()))?;

    let mut matching_failure = None;
    if matchings.len() != cycles.len() {
        matching_failure = Some(format!(
            "{} perfect matchings but {} cycles",
            matchings.len(),
            cycles.len()
        ));
    } else if matching_enum != cycle_enum {
        matching_failure = Some("matching enumerator differs from cycle enumerator".into());
    } else {
        for cycle in &cycles {
            let m = instance
                .matching_for_cycle(cycle)
                .map_err(|err| CliError::new("invalid", err.to_string()))?;
            let back = instance
                .cycle_for_matching(&m)
                .map_err(|err| CliError::new("invalid", err.to_string()))?;
            if &back != cycle || m.weight(instance.weights()) != cycle.weight() {
                matching_failure = Some(format!("round trip failed on cycle {}", cycle.to_str01()));
                break;
            }
        }
    }
    report(
        "matching-reduction",
        matching_failure.is_none(),
        matching_failure.unwrap_or_else(|| {
            format!(
                "{} perfect matchings = {} cycles; enumerators equal; round trips identity",
                matchings.len(),
                cycles.len()
            )
        }),
    );

    Ok(all)
}
