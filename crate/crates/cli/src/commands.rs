use std::path::{Path, PathBuf};

use mmsim::channels::{
    mc_redisplacement_with_errors, noisy_redisplacement, redisplacement_dimension,
};
use mmsim::experiment::{
    coarse_grained_distinguishability_with, coherent_pmf, heralded_source_state, hom_visibility,
    run_pipeline, sweep_alpha, ExperimentParams, HomInputs, SweepResult, TomographyRecord,
};
use mmsim::fock::{photon_pmf, ComplexAmplitude, DensityOperator};

use crate::config::RunConfig;
use crate::output::{format_float, write_text, CsvTable, Metadata};
use crate::plot::{line_plot, Series};
use crate::CliError;

const DEFAULT_OUT: &str = "out";
const DEFAULT_MC_SAMPLES: usize = 20_000;
const RECORD_COLUMNS: [&str; 7] = ["alpha_sq", "V", "p00", "p01", "p10", "p11", "concurrence"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Baseline,
    Sweep,
    Hom,
    Distinguish,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Baseline => "baseline",
            Self::Sweep => "sweep",
            Self::Hom => "hom",
            Self::Distinguish => "distinguish",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub command: Command,
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub plot: bool,
    pub mc_validate: bool,
}

/// Files a command produces, held in memory until every computation succeeded.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub files: Vec<(String, String)>,
    /// Human-readable summary for standard output.
    pub summary: String,
    pub warnings: Vec<String>,
}

impl Artifacts {
    pub fn file(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_str())
    }
}

/// Loads the configuration, computes, then writes everything to the output
/// directory. Nothing touches the disk unless all steps succeeded.
pub fn run(opts: &Options) -> Result<(PathBuf, Artifacts), CliError> {
    let cfg = match &opts.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::from_toml("")?,
    };
    let artifacts = compute(opts, &cfg)?;
    let out = opts
        .out
        .clone()
        .or_else(|| cfg.run.out.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    write_all(&out, &artifacts)?;
    Ok((out, artifacts))
}

pub fn write_all(dir: &Path, artifacts: &Artifacts) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    for (name, content) in &artifacts.files {
        write_text(&dir.join(name), content)?;
    }
    Ok(())
}

pub fn compute(opts: &Options, cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let seed = cfg.seed(opts.seed);
    if opts.mc_validate && seed.is_none() {
        return Err(CliError::Config(
            "--mc-validate needs a seed (--seed or [run] seed)".into(),
        ));
    }
    let mut art = match opts.command {
        Command::Baseline => baseline(cfg, opts.plot)?,
        Command::Sweep => sweep(cfg, opts.plot)?,
        Command::Hom => hom(cfg)?,
        Command::Distinguish => distinguish(cfg, opts.plot)?,
    };
    if opts.mc_validate {
        let alpha_sq = match opts.command {
            Command::Sweep => cfg.sweep.points()?.last().copied().unwrap_or(0.0),
            _ => 0.0,
        };
        let samples = cfg.run.mc_samples.unwrap_or(DEFAULT_MC_SAMPLES);
        let (table, meta) = mc_validation(cfg, alpha_sq, samples, seed.unwrap_or_default())?;
        art.files.push(("mc_validation.csv".into(), table.render()));
        art.files
            .push(("mc_validation.meta.txt".into(), meta.render()));
        art.summary.push_str(&format!(
            "Monte-Carlo check: max |z| = {}\n",
            meta.get("max_abs_z").unwrap_or("?")
        ));
    }
    Ok(art)
}

fn record_row(r: &TomographyRecord) -> Vec<f64> {
    vec![
        r.alpha_sq,
        r.visibility,
        r.p00,
        r.p01,
        r.p10,
        r.p11,
        r.concurrence_bound,
    ]
}

fn base_metadata(command: Command, params: &ExperimentParams) -> Metadata {
    let mut meta = Metadata::default();
    meta.insert("command", command.name());
    meta.insert("tool_version", env!("CARGO_PKG_VERSION"));
    meta.insert("pair_prob", format_float(params.source.pair_prob));
    meta.insert(
        "signal_coupling",
        format_float(params.source.signal_coupling),
    );
    meta.insert(
        "herald_efficiency",
        format_float(params.source.herald_det.efficiency),
    );
    meta.insert("epsilon", format_float(params.noise.epsilon));
    meta.insert(
        "phase_variance",
        format_float(params.noise.phase_variance()),
    );
    meta.insert(
        "pre_displacement_transmission_a",
        format_float(params.pre_loss_a.transmission),
    );
    meta.insert("transmission_a", format_float(params.loss_a.transmission));
    meta.insert("transmission_b", format_float(params.loss_b.transmission));
    meta.insert(
        "efficiency_a",
        format_float(params.analysis_det_a.efficiency),
    );
    meta.insert(
        "efficiency_b",
        format_float(params.analysis_det_b.efficiency),
    );
    meta.insert("dark_prob_a", format_float(params.analysis_det_a.dark_prob));
    meta.insert("dark_prob_b", format_float(params.analysis_det_b.dark_prob));
    meta
}

const RECORD_UNITS: &str = "alpha_sq: mean photons of the displacement; V: fringe visibility; \
p_mn: heralded click-pattern probabilities (m = detector A, n = detector B, 1 = click); \
concurrence: lower bound V(p01+p10)-2sqrt(p00 p11)";

fn summarize_record(r: &TomographyRecord) -> String {
    format!(
        "|alpha|^2 = {}\nV = {:.6}\np00 = {:.6e}\np01 = {:.6e}\np10 = {:.6e}\np11 = {:.6e}\nconcurrence bound = {:.6}\n",
        r.alpha_sq, r.visibility, r.p00, r.p01, r.p10, r.p11, r.concurrence_bound
    )
}

fn baseline(cfg: &RunConfig, plot: bool) -> Result<Artifacts, CliError> {
    let params = cfg.experiment()?;
    let record = run_pipeline(&params)?;
    let mut table = CsvTable::new(&RECORD_COLUMNS);
    table.push(record_row(&record));
    let mut meta = base_metadata(Command::Baseline, &params);
    meta.insert("units", RECORD_UNITS);
    meta.insert("herald_prob", format_float(record.herald_prob));
    meta.insert(
        "visibility_analytic",
        format_float(record.visibility_analytic),
    );
    let mut art = Artifacts {
        warnings: params.source.warnings(),
        summary: summarize_record(&record),
        ..Default::default()
    };
    art.files.push(("baseline.csv".into(), table.render()));
    art.files.push(("baseline.meta.txt".into(), meta.render()));
    if plot {
        // a single point still gives a readable marker
        let svg = line_plot(
            "Baseline record",
            "|alpha|^2",
            "concurrence bound",
            &[Series {
                label: "concurrence",
                points: vec![(record.alpha_sq, record.concurrence_bound)],
            }],
        );
        art.files.push(("baseline.svg".into(), svg));
    }
    Ok(art)
}

pub fn sweep_table(result: &SweepResult) -> CsvTable {
    let mut table = CsvTable::new(&RECORD_COLUMNS);
    for r in &result.points {
        table.push(record_row(r));
    }
    table
}

fn sweep(cfg: &RunConfig, plot: bool) -> Result<Artifacts, CliError> {
    let params = cfg.experiment()?;
    let grid = cfg.sweep.points()?;
    let result = sweep_alpha(&params, &grid)?;
    let table = sweep_table(&result);
    let mut meta = base_metadata(Command::Sweep, &params);
    meta.insert("units", RECORD_UNITS);
    meta.insert("points", result.points.len().to_string());
    let crossing = result
        .zero_crossing
        .map(format_float)
        .unwrap_or_else(|| "none".into());
    meta.insert("zero_crossing", crossing.clone());
    let mut summary = format!(
        "{} points, zero crossing at |alpha|^2 = {crossing}\n",
        grid.len()
    );
    for r in &result.points {
        summary.push_str(&format!(
            "{:>10.2}  C = {:+.6}\n",
            r.alpha_sq, r.concurrence_bound
        ));
    }
    let mut art = Artifacts {
        warnings: params.source.warnings(),
        summary,
        ..Default::default()
    };
    art.files.push(("sweep.csv".into(), table.render()));
    art.files.push(("sweep.meta.txt".into(), meta.render()));
    if plot {
        let svg = line_plot(
            "Concurrence lower bound",
            "|alpha|^2",
            "concurrence bound",
            &[Series {
                label: "concurrence",
                points: result
                    .points
                    .iter()
                    .map(|r| (r.alpha_sq, r.concurrence_bound))
                    .collect(),
            }],
        );
        art.files.push(("sweep.svg".into(), svg));
    }
    Ok(art)
}

/// Input-configuration probabilities for the heralded photon against the
/// local oscillator, unless overridden in the configuration.
pub fn hom_inputs(cfg: &RunConfig, r2: f64) -> Result<HomInputs, CliError> {
    let h = &cfg.hom;
    if !(h.lo_mean >= 0.0 && h.lo_mean.is_finite()) {
        return Err(CliError::Config(format!(
            "lo_mean = {} must be >= 0",
            h.lo_mean
        )));
    }
    let params = cfg.experiment()?;
    let (_, hsp) = heralded_source_state(&params.source)?;
    let hsp = photon_pmf(&hsp);
    let lo = coherent_pmf(h.lo_mean, hsp.len().max(8));
    let mut inp = HomInputs::from_pmfs(&hsp, &lo, r2);
    inp.p11 = h.p11.unwrap_or(inp.p11);
    inp.p20 = h.p20.unwrap_or(inp.p20);
    inp.p02 = h.p02.unwrap_or(inp.p02);
    inp.validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    Ok(inp)
}

fn hom(cfg: &RunConfig) -> Result<Artifacts, CliError> {
    let r2 = cfg.hom.reflectance;
    if !(r2 > 0.0 && r2 < 1.0) {
        return Err(CliError::Config(format!(
            "hom reflectance {r2} must lie strictly between 0 and 1"
        )));
    }
    let mut table = CsvTable::new(&["r2", "t2", "p11", "p20", "p02", "v_max"]);
    let mut summary = String::new();
    for (label, ratio) in [("configured", r2), ("50:50", 0.5), ("90:10", 0.1)] {
        let inp = hom_inputs(cfg, ratio)?;
        let v = hom_visibility(&inp)?;
        table.push(vec![inp.r2, inp.t2, inp.p11, inp.p20, inp.p02, v]);
        summary.push_str(&format!("{label:>10}: r2 = {ratio}, V_max = {v:.4}\n"));
    }
    let mut meta = Metadata::default();
    meta.insert("command", Command::Hom.name());
    meta.insert("tool_version", env!("CARGO_PKG_VERSION"));
    meta.insert("lo_mean", format_float(cfg.hom.lo_mean));
    meta.insert(
        "rows",
        "configured splitter, then the 50:50 and 90:10 references",
    );
    meta.insert(
        "units",
        "r2, t2: intensity reflectance/transmittance; p_ij: probability of i and j photons at the two inputs; v_max: maximal dip visibility",
    );
    let mut art = Artifacts {
        summary,
        ..Default::default()
    };
    art.files.push(("hom.csv".into(), table.render()));
    art.files.push(("hom.meta.txt".into(), meta.render()));
    Ok(art)
}

fn distinguish(cfg: &RunConfig, plot: bool) -> Result<Artifacts, CliError> {
    let d = &cfg.distinguish;
    if d.alpha_sq.is_empty() || d.alpha_sq.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
        return Err(CliError::Config(
            "distinguish alpha_sq must be a non-empty list of positive values".into(),
        ));
    }
    let window = d.detection_window();
    let mut table = CsvTable::new(&["alpha_sq", "guess_probability"]);
    let mut summary = String::new();
    let mut points = Vec::new();
    for &a in &d.alpha_sq {
        let p = coarse_grained_distinguishability_with(a, window);
        table.push(vec![a, p]);
        points.push((a, p));
        summary.push_str(&format!("|alpha|^2 = {a}: {p:.4}\n"));
    }
    let mut meta = Metadata::default();
    meta.insert("command", Command::Distinguish.name());
    meta.insert("tool_version", env!("CARGO_PKG_VERSION"));
    meta.insert("window", format!("{window:?}"));
    meta.insert(
        "units",
        "alpha_sq: mean photons; guess_probability: single-shot success probability",
    );
    let mut art = Artifacts {
        summary,
        ..Default::default()
    };
    art.files.push(("distinguish.csv".into(), table.render()));
    art.files
        .push(("distinguish.meta.txt".into(), meta.render()));
    if plot {
        let svg = line_plot(
            "Coarse-grained distinguishability",
            "|alpha|^2",
            "guess probability",
            &[Series {
                label: "guess",
                points,
            }],
        );
        art.files.push(("distinguish.svg".into(), svg));
    }
    Ok(art)
}

/// Compares the quadrature average of the noisy undo on `|1>` with a seeded
/// Monte-Carlo estimate, population by population.
/// Smallest quadrature population that enters `max_abs_z`.
pub const MC_Z_FLOOR: f64 = 1e-6;

pub fn mc_validation(
    cfg: &RunConfig,
    alpha_sq: f64,
    samples: usize,
    seed: u64,
) -> Result<(CsvTable, Metadata), CliError> {
    let params = cfg.experiment()?;
    // at alpha = 0 the channel is trivial; probe a representative size instead
    let alpha_sq = if alpha_sq > 0.0 { alpha_sq } else { 100.0 };
    let alpha = ComplexAmplitude::from_mean_photons(alpha_sq, params.alpha.phase())?;
    let dim = redisplacement_dimension(alpha, &params.noise, 1);
    let rho = DensityOperator::number(1, dim);
    let exact = noisy_redisplacement(&rho, alpha, &params.noise)?;
    let mc = mc_redisplacement_with_errors(&rho, alpha, &params.noise, samples, seed)?;
    let mut table = CsvTable::new(&["n", "quadrature", "monte_carlo", "std_error", "z"]);
    let mut max_z: f64 = 0.0;
    for n in 0..dim {
        let q = exact.get(n, n).re;
        let m = mc.mean.get(n, n).re;
        let se = mc.std_error_re[[n, n]];
        if q < 1e-12 && m < 1e-12 {
            continue;
        }
        let z = if se > 0.0 { (m - q) / se } else { 0.0 };
        // far-tail entries are driven by rare samples, so the normal error bar is meaningless there
        if q >= MC_Z_FLOOR {
            max_z = max_z.max(z.abs());
        }
        table.push(vec![n as f64, q, m, se, z]);
    }
    let mut meta = Metadata::default();
    meta.insert("alpha_sq", format_float(alpha_sq));
    meta.insert("samples", samples.to_string());
    meta.insert("seed", seed.to_string());
    meta.insert("max_abs_z", format!("{max_z:.3}"));
    meta.insert("z_floor", format_float(MC_Z_FLOOR));
    Ok((table, meta))
}
