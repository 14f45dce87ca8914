use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dirac_pictures::clifford::{GammaSet, Picture};
use dirac_pictures::fieldspec::FieldSpec;
use dirac_pictures::harness::{default_config, run_suite, CheckSpec};
use dirac_pictures::lorentz::{FourVector, GeneratorParams, LorentzTransform};
use dirac_pictures::pictures::{bilinears, to_vector_picture, PictureBundle};
use dirac_pictures::planewave::{transform_field, DiracField};
use dirac_pictures::{Error, Result};

/// Verify spinor-picture and vector-picture Dirac identities on plane-wave fields.
#[derive(Parser)]
#[command(name = "dirac-pictures", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite and print the report.
    Check {
        #[command(flatten)]
        input: FieldInput,
        #[command(flatten)]
        frame: FrameArgs,
        /// Seed for every random sweep.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// JSON list of check specs replacing the default catalogue.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// Print the field and gamma set seen from the transformed frame.
    Transform {
        #[command(flatten)]
        input: FieldInput,
        #[command(flatten)]
        frame: FrameArgs,
    },
    /// Print the bilinears of the field at one event.
    Bilinears {
        #[command(flatten)]
        input: FieldInput,
        #[command(flatten)]
        frame: FrameArgs,
        #[arg(long, value_name = "T,X,Y,Z", value_parser = parse_triple::<4>, allow_hyphen_values = true)]
        event: [f64; 4],
        #[arg(long, value_enum, default_value_t = PictureArg::Spinor)]
        picture: PictureArg,
    },
    /// Run the suite on the bundled rest-frame field under a unit boost along x.
    Demo {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FieldInput {
    /// Field spec JSON file.
    #[arg(long, value_name = "FILE")]
    field: Option<PathBuf>,
    /// Use the bundled field: one rest-frame u-mode, spin up, m = 1.
    #[arg(long)]
    demo: bool,
}

#[derive(Args)]
struct FrameArgs {
    /// Boost with rapidity vector r1,r2,r3. May be repeated.
    #[arg(long, value_name = "R1,R2,R3", value_parser = parse_triple::<3>, allow_hyphen_values = true)]
    boost: Vec<[f64; 3]>,
    /// Rotation with angle vector a1,a2,a3 (radians). May be repeated.
    #[arg(long, value_name = "A1,A2,A3", value_parser = parse_triple::<3>, allow_hyphen_values = true)]
    rotate: Vec<[f64; 3]>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PictureArg {
    Spinor,
    Vector,
}

fn parse_triple<const N: usize>(s: &str) -> std::result::Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated numbers, got {:?}", s));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
        if !o.is_finite() {
            return Err(format!("{p:?} is not finite"));
        }
    }
    Ok(out)
}

/// Boosts and rotations in the order they appear on the command line.
fn transform_list(sub: &ArgMatches, frame: &FrameArgs) -> Vec<GeneratorParams> {
    let mut steps: Vec<(usize, GeneratorParams)> = Vec::new();
    if let Some(idx) = sub.indices_of("boost") {
        steps.extend(idx.zip(&frame.boost).map(|(i, r)| (i, GeneratorParams::boost(*r))));
    }
    if let Some(idx) = sub.indices_of("rotate") {
        steps.extend(idx.zip(&frame.rotate).map(|(i, a)| (i, GeneratorParams::rotation(*a))));
    }
    steps.sort_by_key(|(i, _)| *i);
    steps.into_iter().map(|(_, p)| p).collect()
}

fn load_field(input: &FieldInput) -> Result<DiracField> {
    let spec = match &input.field {
        Some(path) => FieldSpec::from_path(path)?,
        None => FieldSpec::demo(),
    };
    spec.to_field()
}

fn gamma_json(g: &GammaSet) -> serde_json::Value {
    let mats: Vec<Vec<Vec<[f64; 2]>>> = (0..4)
        .map(|mu| {
            let m = g.get(mu);
            (0..4).map(|r| (0..4).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect()
        })
        .collect();
    json!({ "picture": g.picture, "frame": g.frame_label, "matrices": mats })
}

fn frame_json(lt: &LorentzTransform) -> serde_json::Value {
    let m = lt.matrix();
    let rows: Vec<[f64; 4]> = (0..4).map(|r| [m[(r, 0)], m[(r, 1)], m[(r, 2)], m[(r, 3)]]).collect();
    json!({ "matrix": rows, "lineage": lt.lineage() })
}

fn print_report(field: &DiracField, transforms: &[GeneratorParams], config: &[CheckSpec], format: Format) -> Result<bool> {
    let report = run_suite(config, field, transforms)?;
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(report.all_pass())
}

fn run(cmd: Command, sub: &ArgMatches) -> Result<bool> {
    match cmd {
        Command::Check { input, frame, seed, format, config } => {
            let field = load_field(&input)?;
            let config = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
                    let mut specs: Vec<CheckSpec> = serde_json::from_str(&text).map_err(|e| {
                        Error::Input(format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()))
                    })?;
                    if sub.value_source("seed") == Some(clap::parser::ValueSource::CommandLine) {
                        specs.iter_mut().for_each(|s| s.rng_seed = seed);
                    }
                    specs
                }
                None => default_config(seed),
            };
            print_report(&field, &transform_list(sub, &frame), &config, format)
        }
        Command::Transform { input, frame } => {
            let field = load_field(&input)?;
            let lt = LorentzTransform::from_lineage(&transform_list(sub, &frame))?;
            let spinor = PictureBundle::spinor(transform_field(&field.with_picture(Picture::Spinor), &lt)?)?;
            let vector = to_vector_picture(&spinor)?;
            let out = json!({
                "frame": frame_json(&lt),
                "spinor": { "field": FieldSpec::from_field(&spinor.field), "gammas": gamma_json(&spinor.gammas) },
                "vector": { "field": FieldSpec::from_field(&vector.field), "gammas": gamma_json(&vector.gammas) },
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
            Ok(true)
        }
        Command::Bilinears { input, frame, event, picture } => {
            let field = load_field(&input)?;
            let lt = LorentzTransform::from_lineage(&transform_list(sub, &frame))?;
            let spinor = PictureBundle::spinor(transform_field(&field.with_picture(Picture::Spinor), &lt)?)?;
            let bundle = match picture {
                PictureArg::Spinor => spinor,
                PictureArg::Vector => to_vector_picture(&spinor)?,
            };
            let [t, x, y, z] = event;
            let report = bilinears(&bundle, &FourVector::new(t, x, y, z));
            println!("{}", serde_json::to_string_pretty(&report).expect("plain data"));
            Ok(true)
        }
        Command::Demo { seed, format } => print_report(
            &FieldSpec::demo().to_field()?,
            &[GeneratorParams::boost([1.0, 0.0, 0.0])],
            &default_config(seed),
            format,
        ),
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let (_, sub) = matches.subcommand().expect("subcommand is required");
    match run(cli.command, sub) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
