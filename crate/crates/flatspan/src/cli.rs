//! Command-line orchestration.
//!
//! Every subcommand emits one JSON report to stdout or `-o <file>`.
//! Exit status: 0 on success, 1 when an assertable bound entry fails,
//! 2 on usage, parse, or input errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::generate::{generate_with_witness, ConfigSpec};
use crate::pointfile::{load_points, save_points, LoadedPoints};
use crate::report::{self, BoundId, GenReport, ToolInfo, VerifyOptions};
use crate::scalar::parse_rational;
use crate::structure::{DegeneracyVariant, FlatCollection, ThresholdConfig};

#[derive(Parser)]
#[command(
    name = "flatspan",
    version,
    about = "Exact spanned-flat censuses and bound checks for point sets in projective d-space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArg {
    /// Write the JSON report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point configuration from a JSON spec file.
    Gen {
        /// JSON file with a configuration spec.
        spec: PathBuf,
        /// Point file to write.
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the generator's ground-truth flats as JSON.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Spanned-flat census of a point file.
    Count {
        points: PathBuf,
        /// Flat dimension to census; all of 0..d-1 when omitted.
        #[arg(short)]
        k: Option<usize>,
        /// Enumeration worker threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// List every spanned flat with richness and saturation verdicts.
    Flats {
        points: PathBuf,
        /// Richness fraction c (flat is rich when it holds >= c n points).
        #[arg(long)]
        rich: Option<String>,
        /// Saturation constant applied to every dimension.
        #[arg(long)]
        sat: Option<String>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Run the cluster/saturated dichotomy.
    Decompose {
        points: PathBuf,
        /// Cluster coverage fraction in (0, 1).
        #[arg(long)]
        beta: Option<String>,
        /// Threshold config JSON file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Enumerate nice hyperplane sequences over a good collection.
    Nice {
        points: PathBuf,
        /// JSON file with the flat collection.
        #[arg(long)]
        collection: PathBuf,
        /// Maximum number of sequences to produce.
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check counting bounds and report exact verdicts and ratios.
    Verify {
        points: PathBuf,
        /// Comma-separated bound ids: prop_1_8, lemma_2_2, thm_1_4_ratio,
        /// cor_1_6, cor_1_10_ratio, lemma_3_2.
        #[arg(long, value_delimiter = ',', required = true)]
        bounds: Vec<String>,
        /// JSON file with a declared flat collection.
        #[arg(long)]
        collection: Option<PathBuf>,
        /// Threshold config JSON file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Richness thresholds for the degenerate-hyperplane ratios.
        #[arg(long, value_delimiter = ',')]
        krich: Vec<usize>,
        /// Degeneracy fraction in (0, 1].
        #[arg(long)]
        alpha: Option<String>,
        /// Degeneracy variant: classic or flat-collection.
        #[arg(long)]
        variant: Option<String>,
        #[command(flatten)]
        out: OutputArg,
    },
}

/// Runs the CLI on the given argument list and returns the exit status.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output with status 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(out: &OutputArg, text: String) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load(points: &Path) -> Result<LoadedPoints> {
    let loaded = load_points(points)?;
    if loaded.duplicates_dropped > 0 {
        eprintln!(
            "warning: dropped {} duplicate point(s) from {}",
            loaded.duplicates_dropped,
            points.display()
        );
    }
    Ok(loaded)
}

fn load_collection(path: &Path) -> Result<FlatCollection> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn load_config(path: Option<&PathBuf>) -> Result<ThresholdConfig> {
    match path {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            Ok(serde_json::from_str(&text)?)
        }
        None => Ok(ThresholdConfig::default()),
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Gen {
            spec,
            output,
            witness,
        } => {
            let text = fs::read_to_string(&spec)?;
            let spec: ConfigSpec = serde_json::from_str(&text)?;
            let generated = generate_with_witness(&spec)?;
            save_points(&output, &generated.points)?;
            let witness_written = match (&witness, &generated.witness) {
                (Some(path), Some(coll)) => {
                    fs::write(path, report::to_json(coll)?)?;
                    Some(path.display().to_string())
                }
                (Some(_), None) => {
                    return Err(Error::InvalidSpec(
                        "this configuration kind has no ground-truth flats".into(),
                    ));
                }
                _ => None,
            };
            let gen_report = GenReport {
                tool: ToolInfo::current(),
                label: generated.points.label().to_string(),
                ambient_dim: generated.points.ambient_dim(),
                n: generated.points.len(),
                spec,
                points_written: output.display().to_string(),
                witness_written,
            };
            print!("{}", report::to_json(&gen_report)?);
            Ok(0)
        }
        Command::Count {
            points,
            k,
            workers,
            out,
        } => {
            let loaded = load(&points)?;
            let ks: Vec<usize> = k.into_iter().collect();
            let rep = report::census_report(&loaded.set, &ks, workers)?;
            emit(&out, report::to_json(&rep)?)?;
            Ok(0)
        }
        Command::Flats {
            points,
            rich,
            sat,
            workers,
            out,
        } => {
            let loaded = load(&points)?;
            let mut cfg = ThresholdConfig::default();
            if let Some(c) = rich {
                cfg.rich_c = parse_rational(&c)?;
            }
            if let Some(g) = sat {
                let gamma = parse_rational(&g)?;
                for dim in 1..loaded.set.ambient_dim() {
                    cfg.sat_gamma.insert(dim, gamma.clone());
                }
            }
            let rep = report::flats_report(&loaded.set, &cfg, workers)?;
            emit(&out, report::to_json(&rep)?)?;
            Ok(0)
        }
        Command::Decompose {
            points,
            beta,
            config,
            out,
        } => {
            let loaded = load(&points)?;
            let mut cfg = load_config(config.as_ref())?;
            if let Some(b) = beta {
                cfg.beta = parse_rational(&b)?;
            }
            let rep = report::decompose_report(&loaded.set, &cfg)?;
            emit(&out, report::to_json(&rep)?)?;
            Ok(0)
        }
        Command::Nice {
            points,
            collection,
            budget,
            out,
        } => {
            let loaded = load(&points)?;
            let coll = load_collection(&collection)?;
            let rep = report::nice_report(&loaded.set, &coll, budget)?;
            emit(&out, report::to_json(&rep)?)?;
            Ok(0)
        }
        Command::Verify {
            points,
            bounds,
            collection,
            config,
            krich,
            alpha,
            variant,
            out,
        } => {
            let loaded = load(&points)?;
            let bounds = bounds
                .iter()
                .map(|b| BoundId::parse(b))
                .collect::<Result<Vec<BoundId>>>()?;
            let coll = collection.as_deref().map(load_collection).transpose()?;
            let cfg = load_config(config.as_ref())?;
            let mut opts = VerifyOptions::default();
            if !krich.is_empty() {
                opts.krich = krich;
            }
            if let Some(a) = alpha {
                opts.alpha = parse_rational(&a)?;
            }
            if let Some(v) = variant {
                opts.variant = match v.as_str() {
                    "classic" => DegeneracyVariant::Classic,
                    "flat-collection" => DegeneracyVariant::FlatCollection,
                    other => {
                        return Err(Error::InvalidThresholds(format!(
                            "unknown degeneracy variant {other:?}"
                        )))
                    }
                };
            }
            let rep = report::run_verify(&loaded.set, &cfg, &bounds, coll.as_ref(), &opts)?;
            let failed = rep.any_failed();
            emit(&out, report::to_json(&rep)?)?;
            Ok(if failed { 1 } else { 0 })
        }
    }
}
