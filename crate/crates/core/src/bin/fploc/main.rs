//! `fploc`: pipeline driver for the floor-plan localization engine.
//!
//! The subcommands chain into a full experiment: `simulate` produces
//! synthetic truth/fix/RSS streams for a scene, `calibrate` pairs fixes with
//! RSS packets into position-tagged signatures, `build-map` fits per-room
//! propagation models and renders the dense radio map, `localize` estimates
//! positions from RSS alone, `evaluate` scores estimates against a reference
//! path.
//!
//! Exit codes: 0 success, 1 usage or file-system error, 2 data or contract
//! violation. Outputs embed the parameters that produced them; commands with
//! loose stream outputs write a manifest file instead.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fploc_core::calibration::{pair_signatures, signature_stats, DEFAULT_MAX_SKEW};
use fploc_core::error::Error;
use fploc_core::floorplan::FloorPlan;
use fploc_core::io::{
    read_json, read_jsonl, sha256_of, write_ecdf_table, write_json, write_jsonl, EstimateRecord,
    SignatureDb,
};
use fploc_core::localizer::{smooth, Localizer, LocalizerConfig};
use fploc_core::metrics::{trajectory_error, ReferencePath};
use fploc_core::pathloss::{fit_room_models, FitConfig, GammaBounds};
use fploc_core::radiomap::{build_radio_map, Provenance, RadioMap, DEFAULT_SPACING};
use fploc_core::simulator::{synth_ble, synth_uwb, synth_walk, GroundTruthScene, WalkSpec};
use fploc_core::Point2;

#[derive(Parser)]
#[command(name = "fploc", version, about = "Floor-plan localization pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic truth, position-fix and RSS streams for a scene
    Simulate(SimulateArgs),
    /// Pair position fixes with RSS packets into a signature database
    Calibrate(CalibrateArgs),
    /// Fit per-room models from signatures and render the radio map
    BuildMap(BuildMapArgs),
    /// Estimate positions from an RSS stream using a radio map
    Localize(LocalizeArgs),
    /// Score position estimates against a reference path
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Scene file: plan, true models, noise parameters, seed
    #[arg(long)]
    scene: PathBuf,
    /// Walk file: waypoints, speed, sampling rates
    #[arg(long)]
    walk: PathBuf,
    /// Output directory for truth.jsonl, fixes.jsonl, rss.jsonl, manifest.json
    #[arg(long)]
    out_dir: PathBuf,
    /// Override the scene's random seed
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long)]
    plan: PathBuf,
    /// Position fixes, one JSON record per line, time-ordered
    #[arg(long)]
    fixes: PathBuf,
    /// RSS measurements, one JSON record per line, time-ordered
    #[arg(long)]
    rss: PathBuf,
    /// Output signature database (JSON)
    #[arg(long)]
    out: PathBuf,
    /// Pairing window half-width in seconds
    #[arg(long, default_value_t = DEFAULT_MAX_SKEW)]
    max_skew: f64,
}

#[derive(Args)]
struct BuildMapArgs {
    #[arg(long)]
    plan: PathBuf,
    /// Signature database produced by `calibrate`
    #[arg(long)]
    signatures: PathBuf,
    /// Output fitted model set (JSON)
    #[arg(long)]
    models_out: PathBuf,
    /// Output radio map (JSON)
    #[arg(long)]
    map_out: PathBuf,
    /// Grid spacing in meters
    #[arg(long, default_value_t = DEFAULT_SPACING)]
    spacing: f64,
    /// Minimum per-room sample count before a local fit is trusted
    #[arg(long, default_value_t = FitConfig::default().min_samples)]
    min_samples: usize,
    /// Reference distance of the path-loss model in meters
    #[arg(long, default_value_t = FitConfig::default().d0)]
    d0: f64,
    /// Lower bound for the fitted path-loss exponent
    #[arg(long, default_value_t = GammaBounds::default().min)]
    gamma_min: f64,
    /// Upper bound for the fitted path-loss exponent
    #[arg(long, default_value_t = GammaBounds::default().max)]
    gamma_max: f64,
}

#[derive(Args)]
struct LocalizeArgs {
    /// Plan the map must have been built from (provenance check)
    #[arg(long)]
    plan: PathBuf,
    #[arg(long)]
    map: PathBuf,
    /// RSS measurements, one JSON record per line, time-ordered
    #[arg(long)]
    rss: PathBuf,
    /// Output estimates, one JSON record per line
    #[arg(long)]
    out: PathBuf,
    /// Manifest path; defaults to the output path with a .manifest.json suffix
    #[arg(long)]
    manifest_out: Option<PathBuf>,
    /// Neighbor count of the kNN estimator
    #[arg(long, default_value_t = LocalizerConfig::default().k)]
    k: usize,
    /// Trailing moving-average window in estimates; 1 disables smoothing
    #[arg(long, default_value_t = LocalizerConfig::default().smoothing_window)]
    window: usize,
    /// Minimum anchors shared between a measurement and the map
    #[arg(long, default_value_t = LocalizerConfig::default().min_common_anchors)]
    min_common: usize,
    /// Floor for the signature distance in the inverse-distance weights
    #[arg(long, default_value_t = LocalizerConfig::default().distance_epsilon)]
    epsilon: f64,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Estimates produced by `localize`
    #[arg(long)]
    estimates: PathBuf,
    /// Reference path the walk was supposed to follow (JSON)
    #[arg(long)]
    reference: PathBuf,
    /// Output summary statistics (JSON)
    #[arg(long)]
    stats_out: PathBuf,
    /// Output ECDF of trajectory errors (two-column table)
    #[arg(long)]
    ecdf_out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let usage = !matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::File { .. } | Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Calibrate(args) => cmd_calibrate(args),
        Command::BuildMap(args) => cmd_build_map(args),
        Command::Localize(args) => cmd_localize(args),
        Command::Evaluate(args) => cmd_evaluate(args),
    }
}

#[derive(Serialize)]
struct SimulateManifest {
    scene_sha256: String,
    walk_sha256: String,
    seed: u64,
    uwb_seed: u64,
    rss_noise_sigma: f64,
    rss_drop_prob: f64,
    uwb_noise_sigma: f64,
    speed: f64,
    uwb_period: f64,
    ble_rate: f64,
    truth_samples: usize,
    rss_records: usize,
    fixes: usize,
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Error> {
    let mut scene: GroundTruthScene = read_json(&args.scene)?;
    let walk: WalkSpec = read_json(&args.walk)?;
    if let Some(seed) = args.seed {
        scene.seed = seed;
    }
    scene.validate()?;
    walk.validate_in_plan(&scene.plan)?;

    let truth = synth_walk(&walk)?;
    let rss = synth_ble(&scene, &truth)?;
    let uwb_seed = scene.seed.wrapping_add(1);
    let fixes = synth_uwb(&truth, walk.uwb_period, scene.uwb_noise_sigma, uwb_seed)?;

    std::fs::create_dir_all(&args.out_dir).map_err(|e| Error::File {
        path: args.out_dir.clone(),
        source: e,
    })?;
    let manifest = SimulateManifest {
        scene_sha256: sha256_of(&scene),
        walk_sha256: sha256_of(&walk),
        seed: scene.seed,
        uwb_seed,
        rss_noise_sigma: scene.rss_noise_sigma,
        rss_drop_prob: scene.rss_drop_prob,
        uwb_noise_sigma: scene.uwb_noise_sigma,
        speed: walk.speed,
        uwb_period: walk.uwb_period,
        ble_rate: walk.ble_rate,
        truth_samples: truth.len(),
        rss_records: rss.len(),
        fixes: fixes.len(),
    };
    write_jsonl(&args.out_dir.join("truth.jsonl"), &truth)?;
    write_jsonl(&args.out_dir.join("rss.jsonl"), &rss)?;
    write_jsonl(&args.out_dir.join("fixes.jsonl"), &fixes)?;
    write_json(&args.out_dir.join("manifest.json"), &manifest)?;
    println!(
        "wrote {} truth samples, {} rss records, {} fixes to {}",
        truth.len(),
        rss.len(),
        fixes.len(),
        args.out_dir.display()
    );
    Ok(())
}

fn cmd_calibrate(args: CalibrateArgs) -> Result<(), Error> {
    let plan: FloorPlan = read_json(&args.plan)?;
    plan.validate()?;
    let fixes = read_jsonl(&args.fixes)?;
    let rss = read_jsonl(&args.rss)?;

    let report = pair_signatures(&fixes, &rss, &plan, args.max_skew)?;
    let stats = signature_stats(&report.signatures);
    let db = SignatureDb {
        plan_sha256: sha256_of(&plan),
        max_skew: args.max_skew,
        dropped_outside_rooms: report.dropped_outside_rooms,
        fixes_without_rss: report.fixes_without_rss,
        signatures: report.signatures,
    };
    write_json(&args.out, &db)?;
    println!(
        "paired {} signatures over {:.1} s ({} fixes outside rooms, {} without rss)",
        stats.count, stats.duration, db.dropped_outside_rooms, db.fixes_without_rss
    );
    Ok(())
}

fn cmd_build_map(args: BuildMapArgs) -> Result<(), Error> {
    let plan: FloorPlan = read_json(&args.plan)?;
    plan.validate()?;
    let db: SignatureDb = read_json(&args.signatures)?;
    check_plan_hash(&db.plan_sha256, &plan, &args.signatures)?;

    let config = FitConfig {
        d0: args.d0,
        gamma_bounds: GammaBounds { min: args.gamma_min, max: args.gamma_max },
        min_samples: args.min_samples,
    };
    let models = fit_room_models(&db.signatures, &plan, &config)?;
    let map = build_radio_map(&models, &plan, args.spacing)?;

    write_json(&args.models_out, &models)?;
    write_json(&args.map_out, &map)?;
    let total: usize = map.model_flags.values().map(|m| m.len()).sum();
    let fallbacks = map
        .model_flags
        .values()
        .flat_map(|m| m.values())
        .filter(|f| f.fallback != fploc_core::pathloss::Fallback::None)
        .count();
    println!(
        "fitted {} room-anchor models ({} via fallback); map has {} points at {} m spacing",
        total,
        fallbacks,
        map.points.len(),
        map.spacing
    );
    Ok(())
}

#[derive(Serialize)]
struct LocalizeManifest {
    plan_sha256: String,
    map_provenance: Provenance,
    k: usize,
    distance_epsilon: f64,
    smoothing_window: usize,
    min_common_anchors: usize,
    estimates: usize,
    skipped_measurements: usize,
}

fn cmd_localize(args: LocalizeArgs) -> Result<(), Error> {
    let plan: FloorPlan = read_json(&args.plan)?;
    plan.validate()?;
    let map: RadioMap = read_json(&args.map)?;
    check_plan_hash(&map.provenance.plan_sha256, &plan, &args.map)?;
    let rss = read_jsonl(&args.rss)?;

    let config = LocalizerConfig {
        k: args.k,
        distance_epsilon: args.epsilon,
        smoothing_window: args.window,
        min_common_anchors: args.min_common,
    };
    let localizer = Localizer::new(&map, config)?;
    let mut estimates = Vec::with_capacity(rss.len());
    let mut skipped = 0usize;
    for meas in &rss {
        match localizer.localize(meas) {
            Ok(est) => estimates.push(est),
            // A measurement that shares too few anchors with the map cannot
            // be placed; skip it rather than abort the stream.
            Err(Error::NoEligiblePoints) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let smoothed = smooth(&estimates, args.window)?;
    let records: Vec<EstimateRecord> = smoothed.iter().map(EstimateRecord::from).collect();

    let manifest_path = args
        .manifest_out
        .unwrap_or_else(|| args.out.with_extension("manifest.json"));
    write_jsonl(&args.out, &records)?;
    write_json(
        &manifest_path,
        &LocalizeManifest {
            plan_sha256: sha256_of(&plan),
            map_provenance: map.provenance.clone(),
            k: config.k,
            distance_epsilon: config.distance_epsilon,
            smoothing_window: config.smoothing_window,
            min_common_anchors: config.min_common_anchors,
            estimates: records.len(),
            skipped_measurements: skipped,
        },
    )?;
    println!(
        "localized {} of {} measurements ({} skipped)",
        records.len(),
        rss.len(),
        skipped
    );
    Ok(())
}

#[derive(Serialize)]
struct StatsDoc {
    count: usize,
    median: f64,
    max: f64,
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), Error> {
    let records: Vec<EstimateRecord> = read_jsonl(&args.estimates)?;
    let reference: ReferencePath = read_json(&args.reference)?;
    let positions: Vec<Point2> = records.iter().map(|r| Point2::new(r.x, r.y)).collect();

    let stats = trajectory_error(&positions, &reference)?;
    write_json(
        &args.stats_out,
        &StatsDoc {
            count: stats.errors.len(),
            median: stats.median,
            max: stats.max,
        },
    )?;
    write_ecdf_table(&args.ecdf_out, &stats.ecdf)?;
    println!(
        "median error {:.3} m, max {:.3} m over {} estimates",
        stats.median,
        stats.max,
        stats.errors.len()
    );
    Ok(())
}

/// Refuses to mix artifacts from different plans.
fn check_plan_hash(recorded: &str, plan: &FloorPlan, artifact: &Path) -> Result<(), Error> {
    let current = sha256_of(plan);
    if recorded != current {
        return Err(Error::ProvenanceMismatch(format!(
            "{} was produced from a different plan (recorded {}, given {})",
            artifact.display(),
            &recorded[..12.min(recorded.len())],
            &current[..12]
        )));
    }
    Ok(())
}
