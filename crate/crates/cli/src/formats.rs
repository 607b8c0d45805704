//! CSV, JSON and SVG writers. CSV floats use 17 significant digits so files
//! can be diffed across implementations.

use std::fmt::Write as _;
use std::io::Write;

use apcsf_core::flow::{FlowOutcome, LogRow, Thresholds};
use apcsf_core::geometry::{self, PlanarCurve, Vec2};
use apcsf_core::period::MonotonicityScan;
use apcsf_core::potential::TurningPair;
use apcsf_core::shrinker::ShrinkerSolution;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CURVE_COLUMNS: [&str; 5] = ["theta", "x", "y", "kappa", "sigma"];
pub const FLOW_LOG_COLUMNS: [&str; 7] = ["time", "length", "area", "kappa_max", "kappa_min", "kappa_bar", "variance"];
pub const PERIOD_SCAN_COLUMNS: [&str; 6] = ["lambda", "r", "energy", "theta", "theta_over_pi", "quadrature_error"];
pub const LEVEL_COLUMNS: [&str; 4] = ["energy", "kappa_minus", "kappa_plus", "ratio"];

/// Full-precision float: one digit before the point and sixteen after.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_rows<W: Write, const K: usize>(out: W, header: [&str; K], rows: impl Iterator<Item = [f64; K]>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.map(full))?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// One row per vertex in tangent-angle order from θ = 0 (a curvature
/// minimum); the closing duplicate of the first vertex is omitted.
pub fn write_curve_csv<W: Write>(out: W, curve: &PlanarCurve) -> Result<()> {
    let sigma = geometry::support_function(curve).sigma;
    let n = curve.vertex_count();
    write_rows(
        out,
        CURVE_COLUMNS,
        (0..n).map(|i| {
            let p = curve.points[i];
            [curve.theta_grid[i], p.x, p.y, curve.kappa[i], sigma[i]]
        }),
    )
}

pub fn write_flow_log<W: Write>(out: W, log: &[LogRow]) -> Result<()> {
    write_rows(
        out,
        FLOW_LOG_COLUMNS,
        log.iter().map(|r| {
            let d = &r.diagnostics;
            [r.time, d.length, d.area, d.kappa_max, d.kappa_min, d.kappa_bar, d.variance]
        }),
    )
}

pub fn write_period_scan<W: Write>(out: W, scan: &MonotonicityScan) -> Result<()> {
    write_rows(
        out,
        PERIOD_SCAN_COLUMNS,
        scan.rows.iter().map(|row| {
            let s = &row.sample;
            [s.lambda, s.ratio, s.energy, s.theta, s.theta_over_pi(), s.quadrature_error_estimate]
        }),
    )
}

pub fn write_levels<W: Write>(out: W, pairs: &[TurningPair]) -> Result<()> {
    write_rows(out, LEVEL_COLUMNS, pairs.iter().map(|p| [p.energy, p.kappa_minus, p.kappa_plus, p.ratio]))
}

/// SVG drawing of closed polygons: one closed path each, y axis pointing up,
/// viewBox padded by 5% of the larger extent, stroke width `stroke · diameter`.
pub fn polygon_svg(polygons: &[&[Vec2]], scale: f64, stroke: f64) -> String {
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in polygons.iter().flat_map(|poly| poly.iter()) {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
    let margin = 0.05 * extent;
    let diameter = polygons.iter().map(|p| geometry::point_set_diameter(p)).fold(0.0, f64::max);
    let (x0, y0) = ((lo.x - margin) * scale, (-hi.y - margin) * scale);
    let (w, h) = ((hi.x - lo.x + 2.0 * margin) * scale, (hi.y - lo.y + 2.0 * margin) * scale);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.6} {y0:.6} {w:.6} {h:.6}" width="{w:.3}" height="{h:.3}">"#
    );
    for poly in polygons {
        let mut d = String::new();
        for (i, p) in poly.iter().enumerate() {
            let _ = write!(d, "{}{:.6} {:.6} ", if i == 0 { "M" } else { "L" }, p.x * scale, -p.y * scale);
        }
        d.push('Z');
        let _ = writeln!(
            s,
            r#"  <path d="{d}" fill="none" stroke="black" stroke-width="{:.6}" stroke-linejoin="round"/>"#,
            stroke * diameter * scale
        );
    }
    s.push_str("</svg>\n");
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub area_residual: f64,
    pub soliton_residual: f64,
    pub kappa_bar_mismatch: f64,
    pub closure_defect: f64,
    pub length_mismatch: f64,
    pub semi_period_mismatch: f64,
    pub extra_sign_changes: usize,
    pub typology_pass: bool,
    pub measured_turning_index: i64,
    pub curvature_maxima: usize,
}

/// Serialized shrinker; the curve itself lives in the companion CSV/SVG.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub m: u32,
    pub n: u32,
    pub lambda_star: f64,
    pub energy_star: f64,
    #[serde(rename = "L_star")]
    pub l_star: f64,
    pub ratio_star: f64,
    pub extinction_time: f64,
    pub diameter: f64,
    pub diagnostics: DiagnosticsRecord,
    pub grid_size: usize,
}

impl SolutionRecord {
    pub fn new(s: &ShrinkerSolution) -> Self {
        let d = &s.diagnostics;
        Self {
            m: s.m,
            n: s.n,
            lambda_star: s.lambda_star,
            energy_star: s.energy_star,
            l_star: s.l_star,
            ratio_star: s.ratio_star,
            extinction_time: s.extinction_time(),
            diameter: s.curve.diameter(),
            diagnostics: DiagnosticsRecord {
                area_residual: d.area_residual,
                soliton_residual: d.soliton_residual,
                kappa_bar_mismatch: d.kappa_bar_mismatch,
                closure_defect: d.closure_defect,
                length_mismatch: d.length_mismatch,
                semi_period_mismatch: d.semi_period_mismatch,
                extra_sign_changes: d.extra_sign_changes,
                typology_pass: s.typology.all_pass(s.m, s.n),
                measured_turning_index: s.typology.measured_turning_index,
                curvature_maxima: s.typology.curvature_maxima,
            },
            grid_size: s.curve.vertex_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub time: f64,
    pub steps: u64,
    pub length: f64,
    pub area: f64,
    pub kappa_max: f64,
    pub kappa_min: f64,
    pub kappa_bar: f64,
    pub relative_std: f64,
    pub min_spacing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRecord {
    pub blowup_curvature_factor: f64,
    pub blowup_spacing_factor: f64,
    pub cluster_percentile: f64,
    pub circle_relative_std: f64,
    pub circle_sustain_steps: u64,
    pub circle_turning_tolerance: f64,
}

impl From<&Thresholds> for ThresholdRecord {
    fn from(t: &Thresholds) -> Self {
        Self {
            blowup_curvature_factor: t.blowup_curvature_factor,
            blowup_spacing_factor: t.blowup_spacing_factor,
            cluster_percentile: t.cluster_percentile,
            circle_relative_std: t.circle_relative_std,
            circle_sustain_steps: t.circle_sustain_steps,
            circle_turning_tolerance: t.circle_turning_tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowRecord {
    pub m: u32,
    pub n: u32,
    pub sign: String,
    pub lambda_star: f64,
    /// Offset over the shrinker diameter, as requested.
    pub epsilon_relative: f64,
    /// Signed absolute offset applied along the normal.
    pub epsilon: f64,
    pub node_count: usize,
    pub verdict: String,
    pub stop_reason: String,
    pub cluster_count: Option<usize>,
    pub turning_defect: f64,
    pub initial: StateRecord,
    #[serde(rename = "final")]
    pub final_state: StateRecord,
    pub thresholds: ThresholdRecord,
}

impl FlowRecord {
    pub fn new(s: &ShrinkerSolution, sign: &str, epsilon_relative: f64, outcome: &FlowOutcome, thresholds: &Thresholds) -> Self {
        let fs = &outcome.final_state;
        let state = |time: f64, steps: u64, d: &apcsf_core::flow::FlowDiagnostics| StateRecord {
            time,
            steps,
            length: d.length,
            area: d.area,
            kappa_max: d.kappa_max,
            kappa_min: d.kappa_min,
            kappa_bar: d.kappa_bar,
            relative_std: d.relative_std(),
            min_spacing: d.min_spacing,
        };
        Self {
            m: s.m,
            n: s.n,
            sign: sign.to_string(),
            lambda_star: s.lambda_star,
            epsilon_relative,
            epsilon: outcome.epsilon,
            node_count: fs.node_count(),
            verdict: outcome.verdict.as_str().to_string(),
            stop_reason: outcome.stop_reason.as_str().to_string(),
            cluster_count: outcome.cluster_count,
            turning_defect: outcome.turning_defect,
            initial: state(0.0, 0, &outcome.initial),
            final_state: state(fs.time, fs.step_count, &fs.diagnostics),
            thresholds: thresholds.into(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_precision_round_trips() {
        for x in [std::f64::consts::PI, 1e-300, -2.5e17, 0.1] {
            let s = full(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(full(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn svg_has_one_closed_path_per_polygon() {
        let square = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(0.0, 1.0)];
        let svg = polygon_svg(&[&square], 10.0, 0.01);
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches('Z').count(), 1);
        // 5% margin around a unit square at scale 10.
        assert!(svg.contains(r#"viewBox="-0.500000 -10.500000 11.000000 11.000000""#), "{svg}");
        // Diameter √2 times stroke 0.01 times scale 10.
        assert!(svg.contains(r#"stroke-width="0.141421""#), "{svg}");
    }

    #[test]
    fn flow_log_header_order() {
        let mut buf = Vec::new();
        write_flow_log(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "time,length,area,kappa_max,kappa_min,kappa_bar,variance\n");
    }
}
