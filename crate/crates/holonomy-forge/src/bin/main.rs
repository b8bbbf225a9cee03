//! Thin command-line surface over the library: catalog listing, P-space
//! dimensions, metric forging, curvature dumps, holonomy generation, and
//! full verification.
//!
//! Exit codes: 0 success (and verdict = equal for `verify`), 1 verdict
//! differs, 2 input or configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use holonomy_forge::curvature::{christoffel, covariant_derivative, metric_matrix, riemann};
use holonomy_forge::forge::{assemble_metric, builtin, MetricSpec, CATALOG};
use holonomy_forge::holonomy::{verify_spec, Verdict, VerifyOptions};
use holonomy_forge::jsonio;
use holonomy_forge::lie::LieSubalgebra;
use holonomy_forge::pspace::{pspace_basis, tensor_from_values, FamilyStrategy};
use holonomy_forge::Scalar;
use holonomy_forge::SkewMatrix;

#[derive(Parser)]
#[command(name = "holonomy-forge", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
}

#[derive(Args)]
struct AlgebraSource {
    /// Algebra JSON file ({ schema, n, basis, name? })
    #[arg(long, conflicts_with = "builtin")]
    algebra: Option<PathBuf>,
    /// Catalog entry: g2, spin7, or ikemakhen-so3
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args)]
struct ForgeArgs {
    #[command(flatten)]
    source: AlgebraSource,
    /// Normal-form type
    #[arg(long = "type", value_parser = clap::value_parser!(u8).range(1..=4), default_value = "2")]
    type_tag: u8,
    /// Split index for type 4
    #[arg(long)]
    m: Option<usize>,
    /// Values of phi on basis(h): JSON file of rationals, or "auto"
    #[arg(long, default_value = "auto")]
    phi: String,
    /// Values of psi on basis(h): JSON file of rational vectors, or "auto"
    #[arg(long, default_value = "auto")]
    psi: String,
    /// Family selection: full, greedy, or a family JSON file
    #[arg(long, default_value = "greedy")]
    family: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the built-in catalog with provenance notes
    Catalog,
    /// Print dim P(h), optionally with the canonical basis
    Pspace {
        #[command(flatten)]
        source: AlgebraSource,
        /// Also print the canonical basis of P(h)
        #[arg(long)]
        basis: bool,
    },
    /// Forge the metric for a holonomy type and write the MetricSpec
    Forge {
        #[command(flatten)]
        forge: ForgeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dump a curvature-derivative component table of the forged metric
    Curvature {
        #[command(flatten)]
        forge: ForgeArgs,
        /// Derivative order of the dumped table
        #[arg(long, default_value = "0")]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Generate and classify the holonomy algebra; write the certificate
    Holonomy {
        #[command(flatten)]
        forge: ForgeArgs,
        #[arg(long)]
        max_order: Option<usize>,
        /// Derive along all direction tuples, not just repeated d_{n+1}
        #[arg(long)]
        full_directions: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline; exit 0 iff the generated algebra equals the target
    Verify {
        #[command(flatten)]
        forge: ForgeArgs,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        full_directions: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Family file: values[alpha][i] is P_alpha(e_i), row-major n*n entries.
#[derive(Serialize, Deserialize)]
struct FamilyJson {
    schema: String,
    values: Vec<Vec<Vec<Scalar>>>,
}

fn fail(msg: impl std::fmt::Display) -> anyhow::Error {
    anyhow::anyhow!("{msg}")
}

fn load_algebra(src: &AlgebraSource) -> anyhow::Result<(LieSubalgebra, Option<MetricSpec>)> {
    match (&src.algebra, &src.builtin) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let (h, _) = jsonio::algebra_from_str(&text).map_err(fail)?;
            Ok((h, None))
        }
        (None, Some(name)) => {
            let (h, _, spec) = builtin(name).map_err(fail)?;
            Ok((h, Some(spec)))
        }
        _ => Err(fail("exactly one of --algebra or --builtin is required")),
    }
}

fn load_strategy(h: &LieSubalgebra, family: &str) -> anyhow::Result<FamilyStrategy> {
    match family {
        "full" => Ok(FamilyStrategy::FullBasis),
        "greedy" => Ok(FamilyStrategy::GreedyMinimal),
        path => {
            let text = std::fs::read_to_string(path)?;
            let doc: FamilyJson = serde_json::from_str(&text)?;
            if doc.schema != jsonio::SCHEMA {
                return Err(fail(format!("unsupported schema {:?}", doc.schema)));
            }
            let n = h.n();
            let tensors = doc
                .values
                .iter()
                .map(|per_i| {
                    let values = per_i
                        .iter()
                        .map(|flat| {
                            if flat.len() != n * n {
                                return Err(fail("family matrix has wrong entry count"));
                            }
                            SkewMatrix::new(holonomy_forge::Matrix::from_fn(n, n, |i, j| {
                                flat[i * n + j].clone()
                            }))
                            .map_err(fail)
                        })
                        .collect::<anyhow::Result<Vec<_>>>()?;
                    tensor_from_values(h, &values).map_err(fail)
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            Ok(FamilyStrategy::UserList(tensors))
        }
    }
}

fn load_scalar_file<T: for<'de> Deserialize<'de>>(arg: &str) -> anyhow::Result<Option<T>> {
    if arg == "auto" {
        return Ok(None);
    }
    let text = std::fs::read_to_string(arg)?;
    Ok(Some(serde_json::from_str(&text)?))
}

/// Builds the spec; a builtin used with default settings keeps its stored
/// user-list family so the paper metrics reproduce exactly.
fn build_spec(args: &ForgeArgs) -> anyhow::Result<MetricSpec> {
    let (h, builtin_spec) = load_algebra(&args.source)?;
    if let Some(spec) = builtin_spec {
        if args.type_tag == 2 && args.family == "greedy" {
            return Ok(spec);
        }
    }
    let strategy = load_strategy(&h, &args.family)?;
    let phi: Option<Vec<Scalar>> = load_scalar_file(&args.phi)?;
    let psi: Option<Vec<Vec<Scalar>>> = load_scalar_file(&args.psi)?;
    assemble_metric(&h, strategy, args.type_tag, phi, args.m, psi).map_err(fail)
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct ComponentJson {
    index: Vec<usize>,
    poly: holonomy_forge::Poly,
}

#[derive(Serialize)]
struct CurvatureDumpJson {
    schema: String,
    n: usize,
    order: usize,
    components: Vec<ComponentJson>,
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.cmd {
        Cmd::Catalog => {
            for entry in CATALOG {
                println!("{}: {}", entry.name, entry.provenance);
            }
            Ok(0)
        }
        Cmd::Pspace { source, basis } => {
            let (h, _) = load_algebra(&source)?;
            let ps = pspace_basis(&h);
            println!("{}", ps.len());
            if basis {
                for (idx, p) in ps.iter().enumerate() {
                    println!("P[{idx}]:");
                    for i in 0..h.n() {
                        let v = p.value(&h, i);
                        if !v.is_zero() {
                            println!("  P(e_{}) = {:?}", i + 1, v.entries());
                        }
                    }
                }
            }
            Ok(0)
        }
        Cmd::Forge { forge, out, format } => {
            let spec = build_spec(&forge)?;
            let text = match format {
                Format::Json => jsonio::metric_to_string(&spec),
                Format::Latex => spec.to_latex(),
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Cmd::Curvature {
            forge,
            order,
            out,
            format,
        } => {
            let spec = build_spec(&forge)?;
            let mm = metric_matrix(&spec).map_err(fail)?;
            let ct = christoffel(&mm);
            let mut cd = riemann(&ct);
            for _ in 0..order {
                cd = covariant_derivative(&cd, &ct);
            }
            let mut keys: Vec<_> = cd.components.keys().cloned().collect();
            keys.sort();
            let text = match format {
                Format::Json => {
                    let doc = CurvatureDumpJson {
                        schema: jsonio::SCHEMA.into(),
                        n: spec.n,
                        order,
                        components: keys
                            .into_iter()
                            .map(|k| ComponentJson {
                                poly: cd.component(&k).clone(),
                                index: k,
                            })
                            .collect(),
                    };
                    serde_json::to_string_pretty(&doc)?
                }
                Format::Latex => {
                    let mut lines = Vec::new();
                    for k in keys {
                        let (b, c, d, f) = (k[0], k[1], k[2], k[3]);
                        let dirs = k[4..]
                            .iter()
                            .map(|l| format!(";{l}"))
                            .collect::<String>();
                        lines.push(format!(
                            "R^{{{b}}}_{{{c},{d},{f}{dirs}}} = {}",
                            cd.component(&k).to_latex()
                        ));
                    }
                    lines.join("\n")
                }
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Cmd::Holonomy {
            forge,
            max_order,
            full_directions,
            out,
        } => {
            let spec = build_spec(&forge)?;
            let opts = VerifyOptions {
                max_order,
                full_directions,
                ..Default::default()
            };
            let cert = verify_spec(&spec, &opts).map_err(fail)?;
            emit(&out, &jsonio::certificate_to_string(&cert))?;
            Ok(0)
        }
        Cmd::Verify {
            forge,
            max_order,
            full_directions,
            out,
        } => {
            let spec = build_spec(&forge)?;
            let opts = VerifyOptions {
                max_order,
                full_directions,
                ..Default::default()
            };
            let cert = verify_spec(&spec, &opts).map_err(fail)?;
            emit(&out, &jsonio::certificate_to_string(&cert))?;
            match cert.verdict {
                Some(Verdict::Equal) => Ok(0),
                other => {
                    eprintln!("verdict: {:?}", other);
                    Ok(1)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
