use std::path::PathBuf;

use super::config::{Command, ParsedConfig, QixMode, RunConfig};
use super::emit::{emit, Artifact, AxisInfo, Column, Matrix, Output, Table};
use crate::curvature::{qix_analytic, solve_retarded, track_dip_with, CurvatureMap, DipTrack};
use crate::error::{Error, Result};
use crate::model::{Grid1D, ScalarField, UnitMode};
use crate::observables;
use crate::snr;
use crate::stress_energy::{interference_t00, sample_array_t00};
use crate::sweep::run_sweep;

struct Units {
    length: &'static str,
    time: &'static str,
    energy: &'static str,
    curvature: &'static str,
}

fn units(mode: UnitMode) -> Units {
    match mode {
        UnitMode::Si => Units {
            length: "m",
            time: "s",
            energy: "J/m^3",
            curvature: "1/m^2",
        },
        UnitMode::Natural => Units {
            length: "1",
            time: "1",
            energy: "1",
            curvature: "1",
        },
    }
}

/// Full width at half maximum of the extremum with the largest magnitude,
/// with linear interpolation at both half-level crossings. `None` when the
/// half level is not reached inside the grid.
pub fn fwhm(xs: &[f64], vs: &[f64]) -> Option<f64> {
    let (k, peak) = vs
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0f64), |b, (i, v)| if v.abs() > b.1.abs() { (i, v) } else { b });
    if peak == 0.0 {
        return None;
    }
    let half = peak.abs() / 2.0;
    let cross = |i: usize, j: usize| {
        let (a, b) = (vs[i].abs(), vs[j].abs());
        xs[i] + (half - a) / (b - a) * (xs[j] - xs[i])
    };
    let left = (0..k).rev().find(|&i| vs[i].abs() < half).map(|i| cross(i, i + 1))?;
    let right = (k + 1..vs.len())
        .find(|&i| vs[i].abs() < half)
        .map(|i| cross(i - 1, i))?;
    Some(right - left)
}

fn summary(rows: Vec<(&str, f64, &str)>) -> Table {
    Table {
        columns: vec![
            Column::text("quantity", rows.iter().map(|r| r.0.to_string()).collect()),
            Column::num("value", "", rows.iter().map(|r| r.1).collect()),
            Column::text("unit", rows.iter().map(|r| r.2.to_string()).collect()),
        ],
    }
}

fn ensure_table_finite(stem: &str, t: &Table) -> Result<()> {
    for c in &t.columns {
        if let super::emit::ColumnData::Num(v) = &c.data {
            if let Some((i, x)) = v.iter().enumerate().find(|(_, x)| !x.is_finite()) {
                return Err(Error::NonFinite {
                    location: format!("{stem} column {} row {i}", c.name),
                    value: *x,
                });
            }
        }
    }
    Ok(())
}

fn field_matrix(field: &ScalarField, u: &Units) -> Matrix {
    let g = field.space_time().expect("space-time field");
    Matrix {
        rows: AxisInfo {
            name: "t".into(),
            unit: u.time.into(),
            values: g.times(),
        },
        cols: AxisInfo {
            name: "x".into(),
            unit: u.length.into(),
            values: g.space().coords(),
        },
        name: field.quantity().name().into(),
        unit: u.curvature.into(),
        values: field.values().to_vec(),
    }
}

fn track_table(track: &DipTrack, u: &Units) -> Table {
    Table {
        columns: vec![
            Column::num("t", u.time, track.points.iter().map(|p| p.t).collect()),
            Column::num("x_min", u.length, track.points.iter().map(|p| p.x_min).collect()),
            Column::num(
                "delta_r_min",
                u.curvature,
                track.points.iter().map(|p| p.value_min).collect(),
            ),
        ],
    }
}

/// Evaluates a resolved config into named outputs.
pub fn compute(cfg: &RunConfig, stem: &str) -> Result<Vec<Output>> {
    let constants = cfg.constants();
    let u = units(cfg.units);
    let missing = || Error::invalid("config", format!("missing [{}] section", cfg.command.section()));
    let out = |suffix: &str, artifact: Artifact| Output {
        stem: format!("{stem}{suffix}"),
        artifact,
    };
    let mut outputs = Vec::new();
    match cfg.command {
        Command::SnrSweep => {
            let s = cfg.sweep.as_ref().ok_or_else(missing)?;
            let model = s.build_model(constants)?;
            let mut r = run_sweep(&model, &s.axes)?;
            for &level in &s.contour_levels {
                r.add_contour(level, s.contour_scale)?;
            }
            outputs.push(out("", Artifact::Sweep(r)));
        }
        Command::CurvatureProfile => {
            let p = cfg.profile.as_ref().ok_or_else(missing)?;
            let grid = Grid1D::new(p.x_min, p.x_max, p.n_x)?;
            let map = CurvatureMap::new(constants, p.sign).with_calibration(p.calibration)?;
            let xs = grid.coords();
            let mut sources = Vec::new();
            for a in &p.arrays {
                sources.push((a.label.clone(), sample_array_t00(&a.build(cfg.seed)?, &grid, p.t)?));
            }
            for s in &p.interference {
                sources.push((s.label.clone(), interference_t00(&s.build()?, &grid)?));
            }
            let mut columns = vec![Column::num("x", u.length, xs.clone())];
            let (mut labels, mut peaks, mut at, mut widths) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for (label, t00) in sources {
                let dr = map.static_curvature(&t00)?;
                let (k, peak) = dr.values().iter().copied().enumerate().fold((0, 0.0f64), |b, (i, v)| {
                    if v.abs() > b.1.abs() {
                        (i, v)
                    } else {
                        b
                    }
                });
                labels.push(label.clone());
                peaks.push(peak);
                at.push(xs[k]);
                widths.push(fwhm(&xs, dr.values()).unwrap_or(f64::NAN));
                columns.push(Column::num(format!("t00_{label}"), u.energy, t00.into_values()));
                columns.push(Column::num(format!("delta_r_{label}"), u.curvature, dr.into_values()));
            }
            let table = Table { columns };
            ensure_table_finite(stem, &table)?;
            outputs.push(out("", Artifact::Table(table)));
            let summary = Table {
                columns: vec![
                    Column::text("label", labels),
                    Column::num("peak_delta_r", u.curvature, peaks),
                    Column::num("x_peak", u.length, at),
                    Column::num("fwhm", u.length, widths),
                ],
            };
            outputs.push(out("_summary", Artifact::Table(summary)));
        }
        Command::QixSim => {
            let q = cfg.qix.as_ref().ok_or_else(missing)?;
            let grid = q.grid()?;
            let chain = q.chain(constants)?;
            let (field, superluminal, single_depth) = match q.mode {
                QixMode::Chain => {
                    let map = q.map(constants)?;
                    let field = solve_retarded(&chain.source(&grid)?, &map)?;
                    let mut one = chain;
                    one.n_events = 1;
                    let single = solve_retarded(&one.source(&grid)?, &map)?;
                    (field, chain.superluminal(), single.min())
                }
                QixMode::Analytic => {
                    let v = q.velocity.unwrap_or(chain.v_eff());
                    let p = qix_analytic(q.epsilon, v, q.sigma, &grid, &constants)?;
                    (p.field, p.superluminal, -q.epsilon)
                }
            };
            let track = track_dip_with(&field, q.edge_fraction)?;
            let deepest = field.min();
            let rows = vec![
                ("v_eff", q.velocity.unwrap_or(chain.v_eff()), "1"),
                ("fitted_velocity", track.velocity.unwrap_or(f64::NAN), "1"),
                ("superluminal", if superluminal { 1.0 } else { 0.0 }, "1"),
                ("deepest_delta_r", deepest, u.curvature),
                ("single_event_delta_r", single_depth, u.curvature),
                ("depth_ratio", deepest / single_depth, "1"),
                ("degenerate_track", if track.degenerate { 1.0 } else { 0.0 }, "1"),
            ];
            outputs.push(out("", Artifact::Matrix(field_matrix(&field, &u))));
            outputs.push(out("_track", Artifact::Table(track_table(&track, &u))));
            outputs.push(out("_summary", Artifact::Table(summary(rows))));
        }
        Command::Observables => {
            let o = cfg.observables.as_ref().ok_or_else(missing)?;
            let ifo = o.interferometer.build()?;
            let clock = o.clock.build()?;
            let mut rows = vec![
                ("delta_r", o.delta_r, u.curvature),
                ("phase_shift", observables::phase_shift(o.delta_r, &ifo), "rad"),
                ("clock_drift", observables::clock_drift(o.delta_r, &clock), "1"),
                (
                    "clock_freq_shift",
                    observables::clock_freq_shift(o.delta_r, o.length, &constants),
                    "1",
                ),
                ("strain", observables::strain(o.delta_r, o.length), "1"),
            ];
            if let Some(p) = &o.platform {
                let sigma_r = snr::sigma_r_platform(p, &constants)?;
                rows.push(("sigma_r", sigma_r, u.curvature));
                rows.push(("snr", snr::snr_curvature(o.n_units, o.delta_r, sigma_r)?, "1"));
                if o.delta_r > 0.0 {
                    rows.push(("threshold_units", snr::threshold_units(o.delta_r, sigma_r)?, "1"));
                }
            }
            let t = summary(rows);
            ensure_table_finite(stem, &t)?;
            outputs.push(out("", Artifact::Table(t)));
        }
        Command::GatedPulse => {
            let g = cfg.gated.as_ref().ok_or_else(missing)?;
            let spec = g.spec()?;
            let ts = g.times()?;
            let dr: Vec<f64> = ts
                .iter()
                .map(|&t| crate::curvature::gated_pulse(&spec, g.sign, t))
                .collect();
            let mut columns = vec![
                Column::num("t", u.time, ts.clone()),
                Column::num("delta_r", u.curvature, dr.clone()),
            ];
            if let Some(b) = g.baseline {
                let ifo = observables::InterferometerSpec::new(1.0, 1.0, b)?;
                let shift = ts
                    .iter()
                    .zip(&dr)
                    .map(|(&t, &d)| observables::path_shift_t(d, &ifo, t))
                    .collect();
                columns.push(Column::num("path_shift", u.length, shift));
            }
            if let Some(l) = g.length {
                columns.push(Column::num(
                    "strain",
                    "1",
                    dr.iter().map(|&d| observables::strain(d, l)).collect(),
                ));
            }
            let t = Table { columns };
            ensure_table_finite(stem, &t)?;
            outputs.push(out("", Artifact::Table(t)));
        }
    }
    Ok(outputs)
}

/// The resolved config with run metadata merged in; parses as a config.
pub fn sidecar(parsed: &ParsedConfig, extra: &toml::Table) -> Result<String> {
    let mut cfg = parsed.config.clone();
    cfg.metadata.insert("version".into(), crate::VERSION.into());
    cfg.metadata.insert(
        "defaulted".into(),
        toml::Value::Array(parsed.defaulted.iter().map(|k| k.as_str().into()).collect()),
    );
    for (k, v) in extra {
        cfg.metadata.insert(k.clone(), v.clone());
    }
    toml::to_string(&cfg).map_err(|e| Error::invalid("metadata sidecar", e.to_string()))
}

/// Computes, emits and writes `<stem>.meta.toml` next to the data.
pub fn run_config(parsed: &ParsedConfig, stem: &str, extra: &toml::Table) -> Result<Vec<PathBuf>> {
    let cfg = &parsed.config;
    let outputs = compute(cfg, stem)?;
    let meta_text = sidecar(parsed, extra)?;
    let meta_cfg: RunConfig =
        toml::from_str(&meta_text).map_err(|e| Error::invalid("metadata sidecar", e.to_string()))?;
    let metadata = serde_json::to_value(&meta_cfg).map_err(|e| Error::invalid("metadata", e.to_string()))?;
    let dir = &cfg.output_dir;
    let mut written = emit(&outputs, &cfg.formats, dir, &metadata)?;
    let path = dir.join(format!("{stem}.meta.toml"));
    std::fs::write(&path, meta_text).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fwhm_of_gaussian() {
        let xs: Vec<f64> = (0..2001).map(|i| -1.0 + i as f64 * 0.001).collect();
        let vs: Vec<f64> = xs.iter().map(|x| -(-(x * x) / (2.0 * 0.01)).exp()).collect();
        let w = fwhm(&xs, &vs).unwrap();
        assert!((w - 2.0 * (2.0 * 2f64.ln()).sqrt() * 0.1).abs() < 1e-6);
        assert_eq!(fwhm(&xs, &vec![0.0; xs.len()]), None);
        let edge: Vec<f64> = xs.iter().map(|x| -x).collect();
        assert_eq!(fwhm(&xs, &edge), None);
    }
}
