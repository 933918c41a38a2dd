//! Command-line front end: one subcommand per library entry point, plus
//! `run <recipe>` for the named experiment sweeps. Tabular results print
//! as RFC-4180 CSV with a header row; single results print as one JSON
//! record per line with the fields `inputs`, `estimate`, `kind`,
//! `witness_hash`, `grid`, and `iterations`. `--out` additionally writes
//! the same tables/records under the given directory.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use resolvent_lab::expsums::{band_kernel_sup, hlawka_sum, quadruple_count};
use resolvent_lab::harness::{
    cached_rep_counts, run_recipe, ExperimentConfig, ReportBundle, Table, RECIPES,
};
use resolvent_lab::multipliers::{
    heaviside_ft_check, partial_fraction_check, pole_pair_ft_check,
    resolvent_difference_identity_check, ComplexShift,
};
use resolvent_lab::opnorms::{
    harmonic_projector_norm, necsuff_compare, resolvent_norm_lower_bound, scaling_fit,
    zoll_blowup_lower_bound, NormEstimate, Witness,
};
use resolvent_lab::spectra::ModelManifold;
use resolvent_lab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "resolventlab",
    about = "Spectral windows, shifted resolvents, and exponential-sum experiments on model manifolds",
    version
)]
struct Cli {
    /// JSON experiment config; command-line flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for CSV/JSONL output (default: stdout only).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel ascent (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Root seed for all randomized components.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ManifoldKind {
    Torus,
    Sphere,
    Zoll,
}

#[derive(Args, Clone, Copy)]
struct ManifoldArgs {
    /// Model geometry.
    #[arg(long, value_enum, default_value_t = ManifoldKind::Torus)]
    manifold: ManifoldKind,
    /// Dimension (tori: 2 or 3; norm estimates need the 3-sphere).
    #[arg(long, default_value_t = 3)]
    dim: u32,
    /// Synthetic-Zoll cluster-center offset α.
    #[arg(long, default_value_t = 10.0)]
    alpha: f64,
    /// Synthetic-Zoll cluster half-width coefficient A (width A/k).
    #[arg(long, default_value_t = 1.0)]
    gap_a: f64,
}

impl ManifoldArgs {
    fn build(&self, seed: u64) -> ModelManifold {
        match self.manifold {
            ManifoldKind::Torus => ModelManifold::Torus { dim: self.dim },
            ManifoldKind::Sphere => ModelManifold::Sphere { dim: self.dim },
            ManifoldKind::Zoll => ModelManifold::ZollSynthetic {
                dim: self.dim,
                alpha: self.alpha,
                gap_a: self.gap_a,
                seed,
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the spectrum up to a horizon (CSV: lambda, multiplicity).
    Spectrum {
        #[command(flatten)]
        geometry: ManifoldArgs,
        /// Spectral horizon.
        #[arg(long, default_value_t = 30.0)]
        lambda_max: f64,
    },
    /// Lattice shell counts r_n(m) for m <= m_max (CSV: m, count),
    /// served from the binary rep-count cache.
    Shells {
        /// Torus dimension (2 or 3).
        #[arg(long, default_value_t = 3)]
        dim: u32,
        #[arg(long, default_value_t = 100)]
        m_max: u64,
    },
    /// Window counts and the blow-up functional count/(10·Vol·τ^{n-1}·ε)
    /// at each requested center (CSV: lambda, eps, count, proxy).
    Density {
        #[command(flatten)]
        geometry: ManifoldArgs,
        /// Window centers (repeatable).
        #[arg(long = "lambda", required = true)]
        lambdas: Vec<f64>,
        /// Window half-width.
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Check the multiplier identities at one parameter point
    /// (JSON records: heaviside/pole-pair transforms, boundary
    /// difference, partial fractions).
    Multcheck {
        #[arg(long, default_value_t = 10.0)]
        lambda: f64,
        #[arg(long, default_value_t = 1.5)]
        mu: f64,
        /// Time argument of the transform checks.
        #[arg(long, default_value_t = 0.7)]
        t: f64,
        /// Eigenvalue used by the pole-side identities.
        #[arg(long, default_value_t = 9.0)]
        level: f64,
    },
    /// Harmonic-projector norm lower bound on the 3-sphere (JSON record).
    Projnorm {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 6.0)]
        p: f64,
        /// Quadrature order override (default: the degree plus a fixed margin).
        #[arg(long)]
        grid_degree: Option<usize>,
    },
    /// Shifted-resolvent norm lower bound at ζ = (λ+iμ)² (JSON record).
    Resolvent {
        #[command(flatten)]
        geometry: ManifoldArgs,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 0.5)]
        mu: f64,
        #[arg(long, default_value_t = 6.0)]
        p: f64,
        /// Multiplier truncation override (torus: lattice radius;
        /// sphere: harmonic degree).
        #[arg(long)]
        k_cutoff: Option<u32>,
    },
    /// Window norm over ελ against the resolvent norm at ζ = (λ+iε)²
    /// (JSON records: window, resolvent, ratio).
    Necsuff {
        #[command(flatten)]
        geometry: ManifoldArgs,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 6.0)]
        p: f64,
    },
    /// Oscillatory lattice remainder sum at one base point (JSON record).
    Expsum {
        #[arg(long)]
        r: f64,
        /// Shell width (default R^{-0.3}).
        #[arg(long)]
        eps: Option<f64>,
        /// Base point, three coordinates in (0, 1).
        #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"])]
        x: Option<Vec<f64>>,
    },
    /// Additive quadruples per lattice shell (CSV: q, points,
    /// quadruples, ratio).
    Quadruples {
        /// Squared radii (repeatable).
        #[arg(long = "q", required = true)]
        qs: Vec<u64>,
    },
    /// Off-diagonal sup of the spectral band kernel (JSON record).
    KernelSup {
        #[arg(long)]
        lambda: f64,
        /// Band-scale exponent in [0, 1].
        #[arg(long, default_value_t = 0.5)]
        s: f64,
        /// Torus-distance exclusion radius around the diagonal.
        #[arg(long, default_value_t = 0.1)]
        exclusion: f64,
        /// Grid resolution override per axis.
        #[arg(long)]
        grid_n: Option<usize>,
    },
    /// Least-squares power-law fit of one CSV column against another
    /// (JSON record).
    Fit {
        /// CSV file with a header row.
        #[arg(long)]
        csv: PathBuf,
        /// Column name for x (must be positive).
        #[arg(long)]
        x: String,
        /// Column name for y (must be positive).
        #[arg(long)]
        y: String,
        #[arg(long)]
        predicted: f64,
        #[arg(long, default_value_t = 0.15)]
        tolerance: f64,
    },
    /// Run a named recipe and print its verdicts (exit 1 on failure).
    Run {
        /// One of the named recipes; see `run --help` end for the list.
        recipe: String,
    },
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::from_json_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(threads) = cli.threads {
        config.threads = Some(threads);
    }
    if let Some(out) = &cli.out {
        config.out_dir = Some(out.clone());
    }
    if let Some(n) = config.threads {
        // Ignore the error: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(config)
}

fn witness_hash(witness: &Witness) -> String {
    let bytes = serde_json::to_vec(witness).expect("witness serializes");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    format!("{:x}", hasher.finalize())
}

/// The required record shape: inputs, estimate, kind, witness_hash,
/// grid, iterations (plus the estimate's aux diagnostics).
fn estimate_record(inputs: serde_json::Value, est: &NormEstimate) -> serde_json::Value {
    json!({
        "inputs": inputs,
        "estimate": est.value,
        "kind": est.kind,
        "witness_hash": witness_hash(&est.witness),
        "grid": est.grid,
        "iterations": est.iterations,
        "aux": est.aux,
    })
}

fn emit_record(record: &serde_json::Value, out: Option<&Path>, name: &str) -> Result<()> {
    println!("{record}");
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{name}.jsonl"));
        let mut text = std::fs::read_to_string(&path).unwrap_or_default();
        text.push_str(&record.to_string());
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn emit_table(table: &Table, out: Option<&Path>) -> Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        let mut fw = csv::Writer::from_path(dir.join(format!("{}.csv", table.name)))?;
        fw.write_record(&table.header)?;
        for row in &table.rows {
            fw.write_record(row)?;
        }
        fw.flush()?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<i32> {
    let config = load_config(&cli)?;
    let out = config.out_dir.clone();
    let out = out.as_deref();
    let ascent = config.ascent_for("cli");

    match cli.command {
        Command::Spectrum { geometry, lambda_max } => {
            let table = geometry.build(config.seed).spectrum(lambda_max)?;
            let mut rows = Table::new("spectrum", &["lambda", "multiplicity"]);
            for lv in table.levels() {
                rows.push_row(vec![lv.lambda.to_string(), lv.mult.to_string()]);
            }
            emit_table(&rows, out)?;
        }
        Command::Shells { dim, m_max } => {
            let counts = cached_rep_counts(dim, m_max)?;
            let mut rows = Table::new("shells", &["m", "count"]);
            for (m, &count) in counts.iter().enumerate() {
                rows.push_row(vec![m.to_string(), count.to_string()]);
            }
            emit_table(&rows, out)?;
        }
        Command::Density { geometry, lambdas, eps } => {
            let manifold = geometry.build(config.seed);
            let hi = lambdas.iter().copied().fold(0.0f64, f64::max);
            let table = manifold.spectrum(hi + eps + 1.0)?;
            let mut rows = Table::new("density", &["lambda", "eps", "count", "proxy"]);
            for &lambda in &lambdas {
                let count = table.shell_count(lambda, eps)?;
                let proxy = zoll_blowup_lower_bound(&table, lambda, eps)?;
                rows.push_row(vec![
                    lambda.to_string(),
                    eps.to_string(),
                    count.to_string(),
                    format!("{proxy:e}"),
                ]);
            }
            emit_table(&rows, out)?;
        }
        Command::Multcheck { lambda, mu, t, level } => {
            let heav = heaviside_ft_check(mu, t)?;
            let pole = pole_pair_ft_check(lambda, mu, t)?;
            let diff = resolvent_difference_identity_check(level, lambda, mu.abs())?;
            let part = partial_fraction_check(level, ComplexShift::new(lambda, mu)?);
            let records = [
                json!({
                    "identity": "heaviside-transform",
                    "inputs": {"mu": mu, "t": t},
                    "abs_err": heav.abs_err(),
                }),
                json!({
                    "identity": "pole-pair-transform",
                    "inputs": {"lambda": lambda, "mu": mu, "t": t},
                    "abs_err": pole.abs_err(),
                }),
                json!({
                    "identity": "boundary-difference",
                    "inputs": {"level": level, "lambda": lambda, "eps": mu.abs()},
                    "abs_err": (diff.lhs - diff.rhs).norm(),
                }),
                json!({
                    "identity": "partial-fractions",
                    "inputs": {"level": level, "lambda": lambda, "mu": mu},
                    "abs_err": part.abs_err(),
                }),
            ];
            for record in &records {
                emit_record(record, out, "multcheck")?;
            }
        }
        Command::Projnorm { degree, p, grid_degree } => {
            let est = harmonic_projector_norm(degree, p, grid_degree, &ascent)?;
            let inputs = json!({"degree": degree, "p": p, "grid_degree": grid_degree});
            emit_record(&estimate_record(inputs, &est), out, "projnorm")?;
        }
        Command::Resolvent { geometry, lambda, mu, p, k_cutoff } => {
            let manifold = geometry.build(config.seed);
            let est = resolvent_norm_lower_bound(
                &manifold,
                ComplexShift::new(lambda, mu)?,
                p,
                k_cutoff.or(config.k_cutoff),
                &ascent,
                None,
            )?;
            let inputs = json!({
                "manifold": manifold,
                "lambda": lambda,
                "mu": mu,
                "p": p,
                "k_cutoff": k_cutoff,
            });
            emit_record(&estimate_record(inputs, &est), out, "resolvent")?;
        }
        Command::Necsuff { geometry, lambda, eps, p } => {
            let manifold = geometry.build(config.seed);
            let report = necsuff_compare(&manifold, lambda, eps, p, &ascent)?;
            let inputs = json!({"manifold": manifold, "lambda": lambda, "eps": eps, "p": p});
            emit_record(&estimate_record(inputs.clone(), &report.window), out, "necsuff")?;
            emit_record(&estimate_record(inputs.clone(), &report.resolvent), out, "necsuff")?;
            let ratio = json!({
                "inputs": inputs,
                "estimate": report.ratio,
                "kind": "window_over_resolvent",
                "witness_hash": witness_hash(&report.resolvent.witness),
                "grid": report.resolvent.grid,
                "iterations": report.resolvent.iterations,
                "lhs": report.lhs,
                "rhs": report.rhs,
            });
            emit_record(&ratio, out, "necsuff")?;
        }
        Command::Expsum { r, eps, x } => {
            let eps = eps.unwrap_or_else(|| r.powf(-0.3));
            let x = match x {
                Some(v) => [v[0], v[1], v[2]],
                None => [0.21, 0.48, 0.77],
            };
            let sum = hlawka_sum(r, eps, x, None)?;
            let record = json!({
                "inputs": {"r": r, "eps": eps, "x": x},
                "estimate": sum.value.norm(),
                "kind": "oscillatory_remainder_sum",
                "witness_hash": serde_json::Value::Null,
                "grid": {"shape": "exact"},
                "iterations": sum.terms,
                "value_re": sum.value.re,
                "value_im": sum.value.im,
                "abs_sum": sum.abs_sum,
            });
            emit_record(&record, out, "expsum")?;
        }
        Command::Quadruples { qs } => {
            let mut rows = Table::new("quadruples", &["q", "points", "quadruples", "ratio"]);
            for &q in &qs {
                let cnt = quadruple_count(3, q)?;
                let ratio = if cnt.points == 0 {
                    0.0
                } else {
                    cnt.quadruples as f64 / (cnt.points as f64 * cnt.points as f64)
                };
                rows.push_row(vec![
                    q.to_string(),
                    cnt.points.to_string(),
                    cnt.quadruples.to_string(),
                    format!("{ratio:e}"),
                ]);
            }
            emit_table(&rows, out)?;
        }
        Command::KernelSup { lambda, s, exclusion, grid_n } => {
            let sup = band_kernel_sup(lambda, s, exclusion, grid_n.or(config.grid_resolution))?;
            let record = json!({
                "inputs": {"lambda": lambda, "s": s, "exclusion": exclusion},
                "estimate": sup.sup_off_diagonal,
                "kind": "grid_exact_kernel_sup",
                "witness_hash": serde_json::Value::Null,
                "grid": {"shape": "torus_uniform", "dim": 3, "n": sup.grid},
                "iterations": 1,
                "diagonal": sup.diagonal,
                "argmax": sup.argmax,
            });
            emit_record(&record, out, "kernel-sup")?;
        }
        Command::Fit { csv, x, y, predicted, tolerance } => {
            let samples = read_csv_samples(&csv, &x, &y)?;
            let fit = scaling_fit(&samples, predicted, tolerance)?;
            let record = json!({
                "inputs": {"csv": csv, "x": x, "y": y, "predicted": predicted, "tolerance": tolerance},
                "estimate": fit.slope,
                "kind": "scaling_fit",
                "witness_hash": serde_json::Value::Null,
                "grid": {"shape": "exact"},
                "iterations": samples.len(),
                "fit": fit,
            });
            emit_record(&record, out, "fit")?;
            if !fit.verdict {
                return Ok(1);
            }
        }
        Command::Run { recipe } => {
            let mut config = config;
            config.recipe = recipe;
            if !RECIPES.contains(&config.recipe.as_str()) {
                return Err(Error::UnknownRecipe(config.recipe));
            }
            let bundle = run_recipe(&config)?;
            print_bundle(&bundle);
            if let Some(dir) = &config.out_dir {
                let written = bundle.write_all(dir)?;
                for path in written {
                    eprintln!("wrote {}", path.display());
                }
            }
            if !bundle.passed() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn print_bundle(bundle: &ReportBundle) {
    for verdict in &bundle.verdicts {
        let tag = if verdict.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", verdict.name, verdict.detail);
    }
    for (name, fit) in &bundle.fits {
        println!(
            "[fit ] {name}: slope {:.4} (predicted {} ± {}), residual {:.3e}",
            fit.slope, fit.predicted, fit.tolerance, fit.residual
        );
    }
    println!(
        "recipe {} seed {} cutoffs {}: {}",
        bundle.recipe,
        bundle.seed,
        bundle.cutoff_profile,
        if bundle.passed() { "all verdicts passed" } else { "FAILED" }
    );
}

fn read_csv_samples(path: &Path, x: &str, y: &str) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let find = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::InvalidParameter(format!("no column `{name}` in {path:?}")))
    };
    let ix = find(x)?;
    let iy = find(y)?;
    let mut samples = Vec::new();
    for row in reader.records() {
        let row = row?;
        let parse = |i: usize| -> Result<f64> {
            row.get(i)
                .unwrap_or("")
                .parse::<f64>()
                .map_err(|e| Error::InvalidParameter(format!("bad numeric cell: {e}")))
        };
        samples.push((parse(ix)?, parse(iy)?));
    }
    Ok(samples)
}
