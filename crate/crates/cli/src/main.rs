//! Batch command-line front end: validates, subdivides, colors, encodes,
//! builds universal branched manifolds, searches immersions, and runs the
//! equivalence verifier over JSON documents.
//!
//! Exit codes: 0 for success or an affirmative answer, 1 for a negative
//! mathematical answer (no immersion, not modeled, a failed validation),
//! 2 for malformed input. All algorithms are deterministic; the reserved
//! environment variable LCDKIT_SEED is ignored.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use lcdkit::branched::{find_immersion, BranchedManifold};
use lcdkit::bundles::{bundle_certificate, eval_word, factor_matrix, Matrix2};
use lcdkit::labeling::{compute_d_coloring, geographize};
use lcdkit::model::{enumerate_modeled, is_modeled_on};
use lcdkit::subdivision::{build_family, decode, encode, SubdivisionFamily};
use lcdkit::universal::{build_universal, verify_equivalence};
use lcdkit::{Simplex, SimplicialComplex};
use lcdkit_cli::docs::*;

#[derive(Parser)]
#[command(name = "lcdkit", version, about = "combinatorial topology toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a complex, model, or branched-manifold document.
    Validate { input: PathBuf },
    /// Subdivide a top simplex of a complex.
    Subdivide(SubdivideArgs),
    /// Compute a greedy d-coloring; prints a labeling document.
    Color {
        input: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the geography assignment of a complex.
    Geographies {
        input: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Encode a labeled complex into pure combinatorics.
    Encode {
        input: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        /// Model set defining the block family; defaults to the input
        /// labeled complex itself.
        #[arg(long)]
        models: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decode an encoded complex back to its labeled form.
    Decode {
        input: PathBuf,
        #[arg(long)]
        models: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        labels_out: Option<PathBuf>,
    },
    /// Check whether a complex is modeled on a model set.
    CheckModeled {
        input: PathBuf,
        #[arg(long)]
        models: PathBuf,
    },
    /// Enumerate closed manifolds modeled on a set, up to a vertex bound.
    Enumerate {
        #[arg(long)]
        models: PathBuf,
        #[arg(long)]
        max_vertices: usize,
    },
    /// Build the universal branched manifold from models and witnesses.
    BuildUniversal {
        #[arg(long)]
        models: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        witnesses: Vec<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        /// Write the branched-manifold document here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the full build document here.
        #[arg(long)]
        build_out: Option<PathBuf>,
    },
    /// Search for a proper immersion of a complex into a branched manifold.
    Immerse {
        input: PathBuf,
        #[arg(long)]
        into: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the modeled-on side against the immersion side over all
    /// small closed manifolds.
    VerifyEquivalence {
        #[arg(long)]
        models: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        witnesses: Vec<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        max_vertices: usize,
    },
    /// Torus-bundle word algebra.
    Bundle {
        #[command(subcommand)]
        command: BundleCommand,
    },
}

#[derive(Args)]
struct SubdivideArgs {
    input: PathBuf,
    /// Stellar subdivision of the given simplex (comma-separated vertices).
    #[arg(long, group = "mode")]
    stellar: Option<String>,
    /// Chain subdivision of the given simplex; requires --base and --steps.
    #[arg(long, group = "mode")]
    chain: Option<String>,
    /// Standard subdivision of the given simplex; requires --n-param.
    #[arg(long, group = "mode")]
    standard: Option<String>,
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    n_param: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BundleCommand {
    /// Multiply out a word (tokens a1, a2, a3, or a word document).
    Eval {
        letters: Vec<String>,
        #[arg(long, conflicts_with = "letters")]
        file: Option<PathBuf>,
    },
    /// Factor a unimodular matrix (row-major entries) into a word.
    Factor { a: i64, b: i64, c: i64, d: i64 },
    /// Build the bundle certificate of a word.
    Certify {
        letters: Vec<String>,
        #[arg(long, conflicts_with = "letters")]
        file: Option<PathBuf>,
    },
}

fn word_from_args(
    letters: &[String],
    file: Option<&Path>,
) -> Result<lcdkit::bundles::Word, InputError> {
    match file {
        Some(path) => match read_document(path)?.body {
            DocBody::Word(doc) => {
                Ok(parse_word(&doc).map_err(|e| InputError(format!("{}: {e}", path.display())))?)
            }
            other => Err(InputError(format!(
                "{}: expected a word document, found {}",
                path.display(),
                Document::new(other).kind()
            ))),
        },
        None => Ok(parse_letters(letters)?),
    }
}

/// Failure that should surface as exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<ExitCode, InputError>;

const NEGATIVE: u8 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_document(path: &Path) -> Result<Document, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<(SimplicialComplex, NameTable), InputError> {
    match read_document(path)?.body {
        DocBody::Complex(doc) => {
            Ok(parse_complex(&doc).map_err(|e| InputError(format!("{}: {e}", path.display())))?)
        }
        other => Err(InputError(format!(
            "{}: expected a complex document, found {}",
            path.display(),
            Document::new(other).kind()
        ))),
    }
}

fn read_model_set(path: &Path) -> Result<lcdkit::model::ModelSet, InputError> {
    match read_document(path)?.body {
        DocBody::ModelSet(doc) => Ok(
            parse_model_set(&doc).map_err(|e| InputError(format!("{}: {e}", path.display())))?
        ),
        DocBody::Model(doc) => {
            let (model, _) =
                parse_model(&doc).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            Ok(lcdkit::model::ModelSet::new(vec![model])?)
        }
        other => Err(InputError(format!(
            "{}: expected a model-set document, found {}",
            path.display(),
            Document::new(other).kind()
        ))),
    }
}

fn read_branched(path: &Path) -> Result<(BranchedManifold, NameTable), InputError> {
    match read_document(path)?.body {
        DocBody::Branched(doc) => {
            Ok(parse_branched(&doc).map_err(|e| InputError(format!("{}: {e}", path.display())))?)
        }
        DocBody::Build(doc) => Ok(parse_branched(&doc.branched)
            .map_err(|e| InputError(format!("{}: {e}", path.display())))?),
        other => Err(InputError(format!(
            "{}: expected a branched or build document, found {}",
            path.display(),
            Document::new(other).kind()
        ))),
    }
}

fn emit(doc: &Document, out: Option<&Path>) -> Result<(), InputError> {
    let text = doc.to_json();
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_report(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("report"));
}

fn parse_simplex_arg(table: &NameTable, arg: &str) -> Result<Simplex, InputError> {
    let names: Vec<String> = arg.split(',').map(|s| s.trim().to_owned()).collect();
    if names.is_empty() {
        return Err(InputError("empty simplex argument".into()));
    }
    let ids: Result<Vec<_>, _> = names.iter().map(|n| table.id(n)).collect();
    Ok(Simplex::new(ids.map_err(InputError::from)?))
}

fn family_params(family: &SubdivisionFamily) -> serde_json::Value {
    json!({
        "dim": family.dim(),
        "lambda": family.lambda(),
        "n_schedule": family
            .entries()
            .iter()
            .map(|e| e.n_param())
            .collect::<Vec<_>>(),
    })
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Validate { input } => cmd_validate(&input),
        Command::Subdivide(args) => cmd_subdivide(args),
        Command::Color { input, d, out } => cmd_color(&input, d, out.as_deref()),
        Command::Geographies { input, d } => cmd_geographies(&input, d),
        Command::Encode {
            input,
            labeling,
            models,
            out,
        } => cmd_encode(&input, &labeling, models.as_deref(), out.as_deref()),
        Command::Decode {
            input,
            models,
            out,
            labels_out,
        } => cmd_decode(&input, &models, out.as_deref(), labels_out.as_deref()),
        Command::CheckModeled { input, models } => cmd_check_modeled(&input, &models),
        Command::Enumerate {
            models,
            max_vertices,
        } => cmd_enumerate(&models, max_vertices),
        Command::BuildUniversal {
            models,
            witnesses,
            d,
            out,
            build_out,
        } => cmd_build_universal(&models, &witnesses, d, out.as_deref(), build_out.as_deref()),
        Command::Immerse { input, into, out } => cmd_immerse(&input, &into, out.as_deref()),
        Command::VerifyEquivalence {
            models,
            witnesses,
            d,
            max_vertices,
        } => cmd_verify_equivalence(&models, &witnesses, d, max_vertices),
        Command::Bundle { command } => cmd_bundle(command),
    }
}

fn cmd_validate(input: &Path) -> CmdResult {
    let doc = read_document(input)?;
    match doc.body {
        DocBody::Complex(ref c) => {
            let (complex, _) =
                parse_complex(c).map_err(|e| InputError(format!("{}: {e}", input.display())))?;
            let n = complex.dim().unwrap_or(0);
            let status = complex.manifold_status(n);
            print_report(json!({
                "format_version": FORMAT_VERSION,
                "command": "validate",
                "params": {"input": input.display().to_string()},
                "kind": "complex",
                "dim": complex.dim(),
                "vertices": complex.vertex_count(),
                "simplices": complex.simplex_count(),
                "face_closed": complex.is_face_closed(),
                "manifold_status": status.to_string(),
                "euler_characteristic": complex.euler_characteristic(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        DocBody::Model(ref m) => {
            let (model, _) =
                parse_model(m).map_err(|e| InputError(format!("{}: {e}", input.display())))?;
            let verdict = model.validate();
            print_report(json!({
                "format_version": FORMAT_VERSION,
                "command": "validate",
                "params": {"input": input.display().to_string()},
                "kind": "model",
                "dim": model.dim(),
                "verdict": verdict.to_string(),
            }));
            Ok(if verdict == lcdkit::model::Validity::Invalid {
                ExitCode::from(NEGATIVE)
            } else {
                ExitCode::SUCCESS
            })
        }
        DocBody::Branched(ref b) => {
            let (branched, _) =
                parse_branched(b).map_err(|e| InputError(format!("{}: {e}", input.display())))?;
            let report = branched.validate();
            print_report(json!({
                "format_version": FORMAT_VERSION,
                "command": "validate",
                "params": {"input": input.display().to_string()},
                "kind": "branched",
                "dim": branched.dim(),
                "projections": branched.projections().len(),
                "ok": report.is_ok(),
                "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "warnings": report.warnings,
            }));
            Ok(if report.is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(NEGATIVE)
            })
        }
        other => Err(InputError(format!(
            "{}: validate expects a complex, model, or branched document, found {}",
            input.display(),
            Document::new(other).kind()
        ))),
    }
}

fn cmd_subdivide(args: SubdivideArgs) -> CmdResult {
    let (complex, mut table) = read_complex(&args.input)?;
    let record = if let Some(ref s) = args.stellar {
        let simplex = parse_simplex_arg(&table, s)?;
        lcdkit::subdivision::stellar_subdivide(&complex, &simplex)?
    } else if let Some(ref s) = args.chain {
        let simplex = parse_simplex_arg(&table, s)?;
        let base = args
            .base
            .as_deref()
            .ok_or_else(|| InputError("--chain requires --base".into()))?;
        let steps = args
            .steps
            .ok_or_else(|| InputError("--chain requires --steps".into()))?;
        let base = parse_simplex_arg(&table, base)?;
        lcdkit::subdivision::chain_subdivide(&complex, &simplex, &base, steps)?
    } else if let Some(ref s) = args.standard {
        let simplex = parse_simplex_arg(&table, s)?;
        let n_param = args
            .n_param
            .ok_or_else(|| InputError("--standard requires --n-param".into()))?;
        lcdkit::subdivision::standard_subdivide(&complex, &simplex, n_param)?
    } else {
        return Err(InputError(
            "choose one of --stellar, --chain, --standard".into(),
        ));
    };

    table.extend_for(record.result());
    let doc = Document::new(DocBody::Complex(complex_to_doc(record.result(), &table)?));
    emit(&doc, args.out.as_deref())?;
    if args.out.is_some() {
        print_report(json!({
            "format_version": FORMAT_VERSION,
            "command": "subdivide",
            "params": {
                "input": args.input.display().to_string(),
                "stellar": args.stellar,
                "chain": args.chain,
                "standard": args.standard,
                "steps": args.steps,
                "n_param": args.n_param,
            },
            "new_vertices": record.new_vertices().len(),
            "result_simplices": record.result().simplex_count(),
        }));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_color(input: &Path, d: usize, out: Option<&Path>) -> CmdResult {
    let (complex, table) = read_complex(input)?;
    let coloring = compute_d_coloring(&complex, d);
    let labeling = coloring.as_labeling();
    let doc = Document::new(DocBody::Labeling(labeling_to_doc(&labeling, &table)?));
    emit(&doc, out)?;
    if out.is_some() {
        print_report(json!({
            "format_version": FORMAT_VERSION,
            "command": "color",
            "params": {"input": input.display().to_string(), "d": d},
            "colors": coloring.palette().len(),
        }));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_geographies(input: &Path, d: usize) -> CmdResult {
    let (complex, table) = read_complex(input)?;
    let coloring = compute_d_coloring(&complex, d);
    let gl = geographize(&complex, &coloring)?;
    let mut assignment = BTreeMap::new();
    for v in complex.vertices() {
        assignment.insert(
            table.name(v).map_err(InputError::from)?.to_owned(),
            gl.geography_index(v).expect("geographized"),
        );
    }
    print_report(json!({
        "format_version": FORMAT_VERSION,
        "command": "geographies",
        "params": {"input": input.display().to_string(), "d": d},
        "colors": coloring.palette().len(),
        "geography_count": gl.geographies().len(),
        "assignment": assignment,
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_encode(
    input: &Path,
    labeling_path: &Path,
    models: Option<&Path>,
    out: Option<&Path>,
) -> CmdResult {
    let (complex, mut table) = read_complex(input)?;
    let labeling = match read_document(labeling_path)?.body {
        DocBody::Labeling(doc) => parse_labeling(&doc, &table)
            .map_err(|e| InputError(format!("{}: {e}", labeling_path.display())))?,
        other => {
            return Err(InputError(format!(
                "{}: expected a labeling document, found {}",
                labeling_path.display(),
                Document::new(other).kind()
            )))
        }
    };
    let family = match models {
        Some(path) => {
            let set = read_model_set(path)?;
            let inputs: Vec<(&SimplicialComplex, &lcdkit::Labeling)> = set
                .models()
                .iter()
                .map(|m| {
                    m.labeling()
                        .map(|l| (m.complex(), l))
                        .ok_or_else(|| InputError("model set carries no labels".into()))
                })
                .collect::<Result<_, _>>()?;
            build_family(&inputs)?
        }
        None => build_family(&[(&complex, &labeling)])?,
    };
    let (encoded, record) = encode(&complex, &labeling, &family)?;
    table.extend_for(&encoded);
    let doc = Document::new(DocBody::Complex(complex_to_doc(&encoded, &table)?));
    emit(&doc, out)?;
    if out.is_some() {
        print_report(json!({
            "format_version": FORMAT_VERSION,
            "command": "encode",
            "params": {
                "input": input.display().to_string(),
                "labeling": labeling_path.display().to_string(),
                "family": family_params(&family),
            },
            "blocks": complex.dim().map(|n| complex.simplices_of_dim(n).count()),
            "new_vertices": record.new_vertices().len(),
        }));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_decode(
    input: &Path,
    models: &Path,
    out: Option<&Path>,
    labels_out: Option<&Path>,
) -> CmdResult {
    let (encoded, _) = read_complex(input)?;
    let set = read_model_set(models)?;
    let inputs: Vec<(&SimplicialComplex, &lcdkit::Labeling)> = set
        .models()
        .iter()
        .map(|m| {
            m.labeling()
                .map(|l| (m.complex(), l))
                .ok_or_else(|| InputError("model set carries no labels".into()))
        })
        .collect::<Result<_, _>>()?;
    let family = build_family(&inputs)?;
    let (decoded, labeling) = match decode(&encoded, &family) {
        Ok(pair) => pair,
        Err(lcdkit::Error::DecodeFailed(msg)) => {
            print_report(json!({
                "format_version": FORMAT_VERSION,
                "command": "decode",
                "params": {
                    "input": input.display().to_string(),
                    "models": models.display().to_string(),
                    "family": family_params(&family),
                },
                "decoded": false,
                "reason": msg,
            }));
            return Ok(ExitCode::from(NEGATIVE));
        }
        Err(e) => return Err(e.into()),
    };
    let table = NameTable::synthetic(&decoded);
    let doc = Document::new(DocBody::Complex(complex_to_doc(&decoded, &table)?));
    emit(&doc, out)?;
    let labels_doc = Document::new(DocBody::Labeling(labeling_to_doc(&labeling, &table)?));
    if let Some(path) = labels_out {
        emit(&labels_doc, Some(path))?;
    } else if out.is_some() {
        print!("{}", labels_doc.to_json());
    }
    if out.is_some() && labels_out.is_some() {
        print_report(json!({
            "format_version": FORMAT_VERSION,
            "command": "decode",
            "params": {
                "input": input.display().to_string(),
                "models": models.display().to_string(),
                "family": family_params(&family),
            },
            "decoded": true,
            "top_simplices": decoded.dim().map(|n| decoded.simplices_of_dim(n).count()),
        }));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_modeled(input: &Path, models: &Path) -> CmdResult {
    let (complex, table) = read_complex(input)?;
    let set = read_model_set(models)?;
    let certificate = is_modeled_on(&complex, &set);
    let mut assignment = BTreeMap::new();
    if let Some(cert) = &certificate {
        for (v, (i, _)) in cert.assignments() {
            assignment.insert(table.name(*v).map_err(InputError::from)?.to_owned(), *i);
        }
    }
    print_report(json!({
        "format_version": FORMAT_VERSION,
        "command": "check-modeled",
        "params": {
            "input": input.display().to_string(),
            "models": models.display().to_string(),
        },
        "modeled": certificate.is_some(),
        "model_assignment": assignment,
    }));
    Ok(if certificate.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(NEGATIVE)
    })
}

fn cmd_enumerate(models: &Path, max_vertices: usize) -> CmdResult {
    let set = read_model_set(models)?;
    let found = enumerate_modeled(&set, max_vertices)?;
    let complexes: Vec<ComplexDoc> = found
        .iter()
        .map(|k| complex_to_doc(k, &NameTable::synthetic(k)))
        .collect::<Result<_, _>>()?;
    print_report(json!({
        "format_version": FORMAT_VERSION,
        "command": "enumerate",
        "params": {
            "models": models.display().to_string(),
            "max_vertices": max_vertices,
        },
        "count": found.len(),
        "complexes": complexes,
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_build_universal(
    models: &Path,
    witnesses: &[PathBuf],
    d: Option<usize>,
    out: Option<&Path>,
    build_out: Option<&Path>,
) -> CmdResult {
    let set = read_model_set(models)?;
    let mut witness_complexes = Vec::new();
    let mut witness_tables = Vec::new();
    for path in witnesses {
        let (k, t) = read_complex(path)?;
        witness_complexes.push(k);
        witness_tables.push(t);
    }
    let build = build_universal(&set, &witness_complexes, d)?;

    let w_table = NameTable::synthetic(build.branched().complex());
    let branched_doc = branched_to_doc(build.branched(), &w_table)?;
    let doc = Document::new(DocBody::Branched(branched_doc.clone()));
    emit(&doc, out)?;

    if let Some(path) = build_out {
        let theta: Vec<ImmersionDoc> = build
            .theta()
            .iter()
            .zip(&witness_tables)
            .map(|(imm, t)| immersion_to_doc(imm, t, &w_table))
            .collect::<Result<_, _>>()?;
        let witnesses_docs: Vec<ComplexDoc> = witness_complexes
            .iter()
            .zip(&witness_tables)
            .map(|(k, t)| complex_to_doc(k, t))
            .collect::<Result<_, _>>()?;
        let build_doc = Document::new(DocBody::Build(BuildDoc {
            models: model_set_to_doc(&set)?,
            d: build.radius(),
            witnesses: witnesses_docs,
            branched: branched_doc,
            geography_count: build.geographies().len(),
            theta,
        }));
        emit(&build_doc, Some(path))?;
    }

    if out.is_some() {
        print_report(json!({
            "format_version": FORMAT_VERSION,
            "command": "build-universal",
            "params": {
                "models": models.display().to_string(),
                "witnesses": witnesses.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
                "d": build.radius(),
            },
            "geography_count": build.geographies().len(),
            "colors": build.coloring().palette().len(),
            "w_vertices": build.branched().complex().vertex_count(),
            "w_projections": build.branched().projections().len(),
        }));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_immerse(input: &Path, into: &Path, out: Option<&Path>) -> CmdResult {
    let (complex, table) = read_complex(input)?;
    let (branched, target_table) = read_branched(into)?;
    match find_immersion(&complex, &branched) {
        Some(immersion) => {
            let doc = Document::new(DocBody::Immersion(immersion_to_doc(
                &immersion,
                &table,
                &target_table,
            )?));
            emit(&doc, out)?;
            if out.is_some() {
                print_report(json!({
                    "format_version": FORMAT_VERSION,
                    "command": "immerse",
                    "params": {
                        "input": input.display().to_string(),
                        "into": into.display().to_string(),
                    },
                    "found": true,
                }));
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            print_report(json!({
                "format_version": FORMAT_VERSION,
                "command": "immerse",
                "params": {
                    "input": input.display().to_string(),
                    "into": into.display().to_string(),
                },
                "found": false,
            }));
            Ok(ExitCode::from(NEGATIVE))
        }
    }
}

fn cmd_verify_equivalence(
    models: &Path,
    witnesses: &[PathBuf],
    d: Option<usize>,
    max_vertices: usize,
) -> CmdResult {
    let set = read_model_set(models)?;
    let mut witness_complexes = Vec::new();
    for path in witnesses {
        witness_complexes.push(read_complex(path)?.0);
    }
    let build = build_universal(&set, &witness_complexes, d)?;
    let report = verify_equivalence(&set, &build, max_vertices)?;

    let entries: Vec<serde_json::Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "vertices": e.complex.vertex_count(),
                "euler_characteristic": e.complex.euler_characteristic(),
                "modeled": e.modeled,
                "immersed": e.immersed,
            })
        })
        .collect();
    print_report(json!({
        "format_version": FORMAT_VERSION,
        "command": "verify-equivalence",
        "params": {
            "models": models.display().to_string(),
            "witnesses": witnesses.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "d": build.radius(),
            "max_vertices": max_vertices,
        },
        "geography_count": build.geographies().len(),
        "candidates": report.entries.len(),
        "modeled_count": report.modeled().len(),
        "immersed_count": report.immersed().len(),
        "disagreements": report.disagreements().len(),
        "equivalent": report.is_equivalent(),
        "entries": entries,
    }));
    Ok(if report.is_equivalent() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(NEGATIVE)
    })
}

fn cmd_bundle(command: BundleCommand) -> CmdResult {
    match command {
        BundleCommand::Eval { letters, file } => {
            let word = word_from_args(&letters, file.as_deref())?;
            let matrix = eval_word(&word);
            print_report(json!({
                "format_version": FORMAT_VERSION,
                "command": "bundle eval",
                "params": {"letters": word_to_doc(&word).letters},
                "matrix": MatrixDoc::of(&matrix),
                "determinant": matrix.det(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        BundleCommand::Factor { a, b, c, d } => {
            let matrix = Matrix2::new(a, b, c, d);
            let word = factor_matrix(&matrix)?;
            debug_assert_eq!(eval_word(&word), matrix);
            print_report(json!({
                "format_version": FORMAT_VERSION,
                "command": "bundle factor",
                "params": {"matrix": MatrixDoc::of(&matrix)},
                "word": word_to_doc(&word),
                "length": word.len(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        BundleCommand::Certify { letters, file } => {
            let word = word_from_args(&letters, file.as_deref())?;
            let descriptor = bundle_certificate(&word)?;
            print_report(json!({
                "format_version": FORMAT_VERSION,
                "command": "bundle certify",
                "params": {"letters": word_to_doc(&word).letters},
                "fiber": lcdkit::bundles::BundleDescriptor::FIBER,
                "monodromy": MatrixDoc::of(descriptor.monodromy()),
                "base_circle_vertices": descriptor.base().circle().vertex_count(),
                "immersion_validated": true,
            }));
            Ok(ExitCode::SUCCESS)
        }
    }
}
