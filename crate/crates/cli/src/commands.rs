//! Subcommand implementations. Each returns the process exit status.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use apcsf_core::flow::{run_dichotomy, FlowOutcome, Sign, Verdict};
use apcsf_core::period::{log_grid, scan_monotonicity_with};
use apcsf_core::potential::{potential_min, turning_points};
use apcsf_core::shrinker::{find_shrinker_with, validate_pair, ShrinkerSolution, GALLERY};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::{exit, CliError, Result};
use crate::formats::{self, FlowRecord, SolutionRecord};

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(CliError::io(path))
}

fn out_dir(cfg: &RunConfig) -> Result<PathBuf> {
    let dir = cfg.output.dir.clone();
    fs::create_dir_all(&dir).map_err(CliError::io(&dir))?;
    Ok(dir)
}

fn say(out: &mut dyn Write, line: std::fmt::Arguments) -> Result<()> {
    writeln!(out, "{line}").map_err(CliError::io("<stdout>"))
}

/// Parses `m/n` and checks the pair.
pub fn parse_fraction(s: &str) -> Result<(u32, u32)> {
    let bad = || CliError::Usage(format!("malformed fraction `{s}` (expected m/n)"));
    let (m, n) = s.trim().split_once('/').ok_or_else(bad)?;
    let m: u32 = m.trim().parse().map_err(|_| bad())?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    validate_pair(m, n).map_err(|e| CliError::Usage(format!("{s}: {e}")))?;
    Ok((m, n))
}

pub fn potential(lambda: f64, levels: &[f64], out: &mut dyn Write) -> Result<i32> {
    let spec = potential_min(lambda)?;
    say(out, format_args!("lambda={lambda}"))?;
    say(out, format_args!("kappa0={}", spec.kappa0))?;
    say(out, format_args!("v0={}", spec.v0))?;
    if !levels.is_empty() {
        let pairs = levels.iter().map(|&e| turning_points(&spec, e)).collect::<std::result::Result<Vec<_>, _>>()?;
        formats::write_levels(&mut *out, &pairs)?;
    }
    Ok(exit::SUCCESS)
}

pub fn period_scan(
    cfg: &RunConfig,
    lambda: f64,
    r_min: f64,
    r_max: f64,
    count: usize,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    if count == 0 {
        return Err(CliError::Usage("--count must be positive".into()));
    }
    let grid = log_grid(r_min, r_max, count)?;
    let scan = scan_monotonicity_with(lambda, &grid, &cfg.shrinker_config().quadrature)?;
    match output {
        Some(path) => {
            let mut buf = Vec::new();
            formats::write_period_scan(&mut buf, &scan)?;
            write_file(path, &buf)?;
        }
        None => formats::write_period_scan(&mut *out, &scan)?,
    }
    eprintln!("lambda={lambda} rows={} violations={}", scan.rows.len(), scan.violations.len());
    Ok(exit::SUCCESS)
}

fn write_curve_artifacts(cfg: &RunConfig, dir: &Path, stem: &str, s: &ShrinkerSolution) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if cfg.wants(Format::Csv) {
        let path = dir.join(format!("{stem}.csv"));
        let mut buf = Vec::new();
        formats::write_curve_csv(&mut buf, &s.curve)?;
        write_file(&path, &buf)?;
        written.push(path);
    }
    if cfg.wants(Format::Svg) {
        let path = dir.join(format!("{stem}.svg"));
        let svg = formats::polygon_svg(&[s.curve.vertices()], cfg.output.svg_scale, cfg.output.stroke);
        write_file(&path, svg.as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

fn shrinker_artifacts(cfg: &RunConfig, dir: &Path, s: &ShrinkerSolution) -> Result<Vec<PathBuf>> {
    let stem = format!("shrinker_{}_{}", s.m, s.n);
    let mut written = write_curve_artifacts(cfg, dir, &stem, s)?;
    if cfg.wants(Format::Json) {
        let path = dir.join(format!("{stem}.json"));
        write_file(&path, formats::to_json(&SolutionRecord::new(s))?.as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

pub fn shrinker(cfg: &RunConfig, m: u32, n: u32, out: &mut dyn Write) -> Result<i32> {
    validate_pair(m, n)?;
    let s = find_shrinker_with(m, n, &cfg.shrinker_config())?;
    let dir = out_dir(cfg)?;
    let written = shrinker_artifacts(cfg, &dir, &s)?;
    say(out, format_args!("m={m} n={n} lambda_star={} L_star={} energy_star={}", s.lambda_star, s.l_star, s.energy_star))?;
    for p in written {
        say(out, format_args!("wrote {}", p.display()))?;
    }
    Ok(exit::SUCCESS)
}

#[derive(Debug, Serialize)]
struct GalleryEntry {
    m: u32,
    n: u32,
    status: &'static str,
    lambda_star: Option<f64>,
    error: Option<String>,
    files: Vec<String>,
}

pub fn gallery(cfg: &RunConfig, only: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let pairs: Vec<(u32, u32)> = match only {
        Some(list) => list.split(',').map(parse_fraction).collect::<Result<_>>()?,
        None => GALLERY.to_vec(),
    };
    let dir = out_dir(cfg)?;
    let shrinker_cfg = cfg.shrinker_config();
    let entries: Vec<GalleryEntry> = pairs
        .par_iter()
        .map(|&(m, n)| {
            let result = find_shrinker_with(m, n, &shrinker_cfg)
                .map_err(CliError::from)
                .and_then(|s| shrinker_artifacts(cfg, &dir, &s).map(|files| (s.lambda_star, files)));
            match result {
                Ok((lambda_star, files)) => GalleryEntry {
                    m,
                    n,
                    status: "certified",
                    lambda_star: Some(lambda_star),
                    error: None,
                    files: files.iter().map(|p| p.display().to_string()).collect(),
                },
                Err(e) => GalleryEntry { m, n, status: "failed", lambda_star: None, error: Some(e.to_string()), files: Vec::new() },
            }
        })
        .collect();
    let index = dir.join("gallery.json");
    write_file(&index, formats::to_json(&entries)?.as_bytes())?;
    let mut failed = 0;
    for e in &entries {
        match (&e.lambda_star, &e.error) {
            (Some(l), _) => say(out, format_args!("{}/{} certified lambda_star={l}", e.m, e.n))?,
            (None, Some(err)) => {
                failed += 1;
                say(out, format_args!("{}/{} FAILED: {err}", e.m, e.n))?;
            }
            _ => {}
        }
    }
    say(out, format_args!("wrote {}", index.display()))?;
    Ok(if failed > 0 { exit::FAILURE } else { exit::SUCCESS })
}

/// Which perturbation signs to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignChoice {
    Plus,
    Minus,
    Both,
}

impl std::str::FromStr for SignChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+" | "plus" => Ok(SignChoice::Plus),
            "-" | "minus" => Ok(SignChoice::Minus),
            "both" | "+-" => Ok(SignChoice::Both),
            other => Err(format!("unknown sign `{other}` (expected +, -, or both)")),
        }
    }
}

fn sign_name(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

fn expected(sign: Sign) -> Verdict {
    match sign {
        Sign::Plus => Verdict::CircleConvergence,
        Sign::Minus => Verdict::CuspBlowup,
    }
}

fn flow_artifacts(
    cfg: &RunConfig,
    dir: &Path,
    s: &ShrinkerSolution,
    sign: Sign,
    eps: f64,
    outcome: &FlowOutcome,
) -> Result<Vec<PathBuf>> {
    let stem = format!("flow_{}_{}_{}", s.m, s.n, sign_name(sign));
    let mut written = Vec::new();
    if cfg.wants(Format::Csv) {
        let path = dir.join(format!("{stem}.csv"));
        let mut buf = Vec::new();
        formats::write_flow_log(&mut buf, &outcome.log)?;
        write_file(&path, &buf)?;
        written.push(path);
    }
    if cfg.wants(Format::Json) {
        let path = dir.join(format!("{stem}.json"));
        let thresholds = cfg.dichotomy_config().thresholds;
        let record = FlowRecord::new(s, sign.as_str(), eps, outcome, &thresholds);
        write_file(&path, formats::to_json(&record)?.as_bytes())?;
        written.push(path);
    }
    if cfg.wants(Format::Svg) {
        for (k, (_, frame)) in outcome.snapshots.iter().enumerate() {
            let path = dir.join(format!("{stem}_{k:04}.svg"));
            write_file(&path, formats::polygon_svg(&[frame], cfg.output.svg_scale, cfg.output.stroke).as_bytes())?;
            written.push(path);
        }
    }
    Ok(written)
}

/// `eps` is relative to the shrinker diameter.
pub fn flow(cfg: &RunConfig, m: u32, n: u32, eps: f64, choice: SignChoice, out: &mut dyn Write) -> Result<i32> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(CliError::Usage(format!("--eps must be nonnegative and finite, got {eps}")));
    }
    validate_pair(m, n)?;
    let s = find_shrinker_with(m, n, &cfg.shrinker_config())?;
    let mut dcfg = cfg.dichotomy_config();
    if dcfg.snapshot_every == 0 && cfg.wants(Format::Svg) {
        // Only the first and last frames.
        dcfg.snapshot_every = u64::MAX;
    }
    let absolute = eps * s.curve.diameter();
    let run = |sign: Sign| run_dichotomy(&s, absolute, sign, &dcfg).map(|o| (sign, o));
    let runs: Vec<(Sign, FlowOutcome)> = match choice {
        SignChoice::Plus => vec![run(Sign::Plus)?],
        SignChoice::Minus => vec![run(Sign::Minus)?],
        SignChoice::Both => {
            let (a, b) = rayon::join(|| run(Sign::Plus), || run(Sign::Minus));
            vec![a?, b?]
        }
    };
    let dir = out_dir(cfg)?;
    let mut code = exit::SUCCESS;
    for (sign, o) in &runs {
        let written = flow_artifacts(cfg, &dir, &s, *sign, eps, o)?;
        let clusters = o.cluster_count.map_or_else(|| "-".to_string(), |c| c.to_string());
        say(
            out,
            format_args!(
                "m={m} n={n} sign={} eps={eps} verdict={} clusters={clusters} time={} steps={} stop={}",
                sign.as_str(),
                o.verdict.as_str(),
                o.final_state.time,
                o.final_state.step_count,
                o.stop_reason.as_str()
            ),
        )?;
        for p in written {
            say(out, format_args!("wrote {}", p.display()))?;
        }
        if o.verdict == Verdict::Inconclusive {
            if code == exit::SUCCESS {
                code = exit::INCONCLUSIVE;
            }
        } else if o.verdict != expected(*sign) {
            code = exit::FAILURE;
        }
    }
    Ok(code)
}

/// Rebuilds the curve behind a stored solution record and writes its CSV/SVG.
pub fn export(cfg: &RunConfig, input: &Path, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(input).map_err(CliError::io(input))?;
    let record: SolutionRecord = serde_json::from_str(&text)?;
    validate_pair(record.m, record.n)?;
    let s = find_shrinker_with(record.m, record.n, &cfg.shrinker_config())?;
    let drift = (s.lambda_star - record.lambda_star).abs() / record.lambda_star.abs().max(1.0);
    if drift > 1e-9 {
        return Err(CliError::Failed(format!(
            "recomputed lambda_star {} differs from the record's {} (relative {drift:e})",
            s.lambda_star, record.lambda_star
        )));
    }
    let dir = out_dir(cfg)?;
    let written = write_curve_artifacts(cfg, &dir, &format!("shrinker_{}_{}", s.m, s.n), &s)?;
    if written.is_empty() {
        return Err(CliError::Usage("export writes csv and svg; neither format is enabled".into()));
    }
    for p in written {
        say(out, format_args!("wrote {}", p.display()))?;
    }
    Ok(exit::SUCCESS)
}
