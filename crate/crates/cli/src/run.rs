use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use sle_core::formulas::{table_rows, write_table_csv};
use sle_core::geometry::{fit_decay, Annulus};
use sle_core::montecarlo::{
    crossing_counts, dimension_experiment, estimates_from_counts, left_passage_mc, signature_mc, CrossingMcConfig, DimensionConfig,
    LeftPassageConfig, SignatureMcConfig,
};
use sle_core::rng::SPLITTING_RULE;
use sle_core::{compute_trace, sample_driving, to_small_disk, to_unit_disk, Error as CoreError};

use crate::config::{Command, ExperimentConfig, TraceDomain};
use crate::CliError;

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub output: PathBuf,
    /// One line describing the result.
    pub line: String,
}

/// Runs the experiment and writes its output file.
///
/// `default_dir` is used when the config names no output path.
pub fn run(cfg: &ExperimentConfig, default_dir: Option<&str>) -> Result<RunSummary, CliError> {
    cfg.validate()?;
    let path = cfg.resolve_output(default_dir);
    let mut buf = Vec::new();
    let line = match cfg.command {
        Command::Trace => trace(cfg, &mut buf)?,
        Command::AkappaTable => akappa_table(cfg, &mut buf)?,
        Command::SignatureMc => signature(cfg, &mut buf)?,
        Command::LeftPassage => left_passage(cfg, &mut buf)?,
        Command::Crossings => crossings(cfg, &mut buf)?,
        Command::Dimension => dimension(cfg, &mut buf)?,
    };
    write_file(&path, &buf)?;
    Ok(RunSummary { output: path, line })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let err = |source| CliError::Output {
        path: path.display().to_string(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(err)?;
    }
    let mut f = BufWriter::new(fs::File::create(path).map_err(err)?);
    f.write_all(bytes).map_err(err)?;
    f.flush().map_err(err)
}

fn csv_header(cfg: &ExperimentConfig, out: &mut Vec<u8>) {
    writeln!(out, "# config={}", cfg.to_json()).unwrap();
}

fn json_report<T: Serialize>(cfg: &ExperimentConfig, report: &T, out: &mut Vec<u8>) {
    #[derive(Serialize)]
    struct Envelope<'a, T> {
        config: &'a ExperimentConfig,
        report: &'a T,
    }
    serde_json::to_writer_pretty(&mut *out, &Envelope { config: cfg, report }).unwrap();
    out.push(b'\n');
}

fn trace(cfg: &ExperimentConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let params = cfg.params()?;
    let driving = sample_driving(cfg.n_steps, cfg.dt, cfg.seed)?;
    let path = compute_trace(&driving, &params)?;
    let path = match cfg.trace_domain {
        TraceDomain::HalfPlane => path,
        TraceDomain::UnitDisk => to_unit_disk(&path)?,
        TraceDomain::SmallDisk => to_small_disk(&path)?,
    };
    csv_header(cfg, out);
    path.write_csv(&mut *out).map_err(|e| CoreError::InvalidArgument(e.to_string()))?;
    Ok(format!(
        "trace: kappa={} n_steps={} seed={} tip={:?}",
        cfg.kappa,
        cfg.n_steps,
        cfg.seed,
        path.end()
    ))
}

fn akappa_table(cfg: &ExperimentConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let rows = table_rows(&cfg.quadrature)?;
    csv_header(cfg, out);
    write_table_csv(&rows, &mut *out).map_err(|e| CoreError::InvalidArgument(e.to_string()))?;
    let worst = rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max);
    Ok(format!("akappa-table: {} rows, max |closed form - quadrature| = {worst:e}", rows.len()))
}

fn signature(cfg: &ExperimentConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let params = cfg.params()?;
    let mc = SignatureMcConfig {
        n_paths: cfg.n_paths,
        n_steps: cfg.n_steps,
        closure_delta: cfg.closure_delta,
        seed: cfg.seed,
        extrapolate: cfg.extrapolate,
    };
    let report = signature_mc(&params, &mc)?;
    json_report(cfg, &report, out);
    let w = report.word("221").expect("level-3 word");
    Ok(format!(
        "signature-mc: kappa={} n={} failed={} S(221)={:.7} ± {:.7} (A_kappa={:.7}, z={:.2})",
        cfg.kappa,
        report.n_paths,
        report.n_failed,
        w.mean,
        w.std_error,
        report.a_kappa,
        w.z_score()
    ))
}

fn left_passage(cfg: &ExperimentConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let params = cfg.params()?;
    let lp = LeftPassageConfig {
        n_paths: cfg.n_paths,
        n_steps: cfg.n_steps,
        seed: cfg.seed,
        points: LeftPassageConfig::polar_points(&cfg.radii, &cfg.thetas),
    };
    let report = left_passage_mc(&params, &lp)?;
    json_report(cfg, &report, out);
    let worst = report
        .points
        .iter()
        .map(|p| (p.right_frequency - p.expected).abs())
        .fold(0.0, f64::max);
    Ok(format!(
        "left-passage: kappa={} n={} points={} max |freq - (1 - phi)| = {worst:.4}",
        cfg.kappa,
        cfg.n_paths,
        report.points.len()
    ))
}

fn crossings(cfg: &ExperimentConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let params = cfg.params()?;
    let center = Complex64::new(cfg.center[0], cfg.center[1]);
    let annuli = cfg
        .ratios
        .iter()
        .map(|&q| Annulus::new(center, q * cfg.outer_radius, cfg.outer_radius))
        .collect::<Result<Vec<_>, _>>()?;
    let mc = CrossingMcConfig {
        n_paths: cfg.n_paths,
        n_steps: cfg.n_steps,
        seed: cfg.seed,
    };
    let counts = crossing_counts(&params, &annuli, &mc)?;
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for &k in &cfg.k_values {
        let est = estimates_from_counts(&counts, &annuli, k)?;
        match fit_decay(&est, k as u32, &params) {
            Ok(f) => fits.push(format!(
                "# fit k={k} slope={:?} std_error={:?} bound_slope={:?} excluded={:?}",
                f.fitted_slope, f.slope_std_error, f.bound_slope, f.excluded
            )),
            Err(e) => fits.push(format!("# fit k={k} unavailable: {e}")),
        }
        rows.push((k, est));
    }
    csv_header(cfg, out);
    writeln!(out, "# splitting_rule={SPLITTING_RULE}").unwrap();
    for f in &fits {
        writeln!(out, "{f}").unwrap();
    }
    writeln!(out, "kappa,center_re,center_im,r,R,k,n_paths,estimate,ci_half_width").unwrap();
    for (k, est) in &rows {
        for (a, e) in annuli.iter().zip(est) {
            writeln!(
                out,
                "{:?},{:?},{:?},{:?},{:?},{},{},{:?},{:?}",
                cfg.kappa, a.center.re, a.center.im, a.r, a.big_r, k, e.n_paths, e.probability, e.half_width
            )
            .unwrap();
        }
    }
    Ok(format!("crossings: kappa={} n={} {}", cfg.kappa, counts.len(), fits.join(" ").replace("# ", "")))
}

fn dimension(cfg: &ExperimentConfig, out: &mut Vec<u8>) -> Result<String, CliError> {
    let params = cfg.params()?;
    let dc = DimensionConfig {
        n_paths: cfg.n_paths,
        n_steps: cfg.n_steps,
        seed: cfg.seed,
        ell0: cfg.ell0,
        j_max: cfg.j_max,
        discard: cfg.discard,
    };
    let report = dimension_experiment(&params, &dc)?;
    csv_header(cfg, out);
    writeln!(out, "# splitting_rule={SPLITTING_RULE}").unwrap();
    writeln!(
        out,
        "# box_slope={:?} box_std_error={:?} tortuosity_slope={:?} tortuosity_std_error={:?} expected={:?}",
        report.box_fit.slope,
        report.box_fit.std_error,
        report.tortuosity_fit.slope,
        report.tortuosity_fit.std_error,
        report.expected
    )
    .unwrap();
    writeln!(out, "kappa,ell,box_count,tortuosity_count").unwrap();
    for r in &report.rows {
        writeln!(out, "{:?},{:?},{:?},{:?}", cfg.kappa, r.ell, r.box_count, r.tortuosity_count).unwrap();
    }
    Ok(format!(
        "dimension: kappa={} n={} box slope={:.3} tortuosity slope={:.3} (1 + kappa/8 = {:.4})",
        cfg.kappa, cfg.n_paths, report.box_fit.slope, report.tortuosity_fit.slope, report.expected
    ))
}
