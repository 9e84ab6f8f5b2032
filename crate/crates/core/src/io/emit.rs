//! CSV, JSON and gnuplot writers.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sweep::{Scale, SweepModel, SweepResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Gnuplot,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "gnuplot" => Ok(Format::Gnuplot),
            other => Err(Error::invalid(
                "format",
                format!("unknown format `{other}` (csv, json, gnuplot)"),
            )),
        }
    }
}

/// Shortest text that parses back to the same double.
pub fn fmt_num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ColumnData {
    Num(Vec<f64>),
    Text(Vec<String>),
}

impl ColumnData {
    fn len(&self) -> usize {
        match self {
            ColumnData::Num(v) => v.len(),
            ColumnData::Text(v) => v.len(),
        }
    }

    fn cell(&self, i: usize) -> String {
        match self {
            ColumnData::Num(v) => fmt_num(v[i]),
            ColumnData::Text(v) => v[i].clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub unit: String,
    #[serde(rename = "values")]
    pub data: ColumnData,
}

impl Column {
    pub fn num(name: impl Into<String>, unit: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
            data: ColumnData::Num(values),
        }
    }

    pub fn text(name: impl Into<String>, values: Vec<String>) -> Self {
        Self {
            name: name.into(),
            unit: String::new(),
            data: ColumnData::Text(values),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<Column>,
}

impl Table {
    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.data.len())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisInfo {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

/// Row-major grid over two coordinate axes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Matrix {
    pub rows: AxisInfo,
    pub cols: AxisInfo,
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Sweep(SweepResult),
    Table(Table),
    Matrix(Matrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub stem: String,
    pub artifact: Artifact,
}

fn header(name: &str, unit: &str) -> String {
    if unit.is_empty() {
        name.to_string()
    } else {
        format!("{name} [{unit}]")
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn write(path: PathBuf, body: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(())
}

/// Writes every output in each requested format into `dir`. `metadata` is
/// embedded in JSON documents.
pub fn emit(outputs: &[Output], formats: &[Format], dir: &Path, metadata: &serde_json::Value) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut formats = formats.to_vec();
    formats.sort();
    formats.dedup();
    for out in outputs {
        for &f in &formats {
            match (&out.artifact, f) {
                (Artifact::Sweep(r), Format::Csv) => {
                    write(dir.join(format!("{}.csv", out.stem)), &sweep_csv(r), &mut written)?;
                    if r.contours.iter().any(|c| !c.polylines.is_empty()) {
                        write(
                            dir.join(format!("{}_contours.csv", out.stem)),
                            &contour_csv(r),
                            &mut written,
                        )?;
                    }
                }
                (Artifact::Sweep(r), Format::Json) => {
                    write(
                        dir.join(format!("{}.json", out.stem)),
                        &sweep_json(r, metadata)?,
                        &mut written,
                    )?;
                }
                (Artifact::Sweep(r), Format::Gnuplot) => sweep_gnuplot(r, &out.stem, dir, &mut written)?,
                (Artifact::Table(t), Format::Csv) => {
                    write(dir.join(format!("{}.csv", out.stem)), &table_csv(t), &mut written)?;
                }
                (Artifact::Table(t), Format::Json) => {
                    let doc = serde_json::json!({ "columns": t.columns, "metadata": metadata });
                    write(dir.join(format!("{}.json", out.stem)), &to_json(&doc)?, &mut written)?;
                }
                (Artifact::Table(t), Format::Gnuplot) => {
                    write(dir.join(format!("{}.dat", out.stem)), &table_dat(t), &mut written)?;
                }
                (Artifact::Matrix(m), Format::Csv) => {
                    write(dir.join(format!("{}.csv", out.stem)), &matrix_csv(m), &mut written)?;
                }
                (Artifact::Matrix(m), Format::Json) => {
                    let doc = serde_json::json!({
                        "rows": m.rows, "cols": m.cols, "name": m.name, "unit": m.unit,
                        "values": m.values, "metadata": metadata,
                    });
                    write(dir.join(format!("{}.json", out.stem)), &to_json(&doc)?, &mut written)?;
                }
                (Artifact::Matrix(m), Format::Gnuplot) => {
                    let body = nonuniform_matrix(&m.rows.values, &m.cols.values, &m.values);
                    write(dir.join(format!("{}.mat", out.stem)), &body, &mut written)?;
                    let gp = format!(
                        "set xlabel '{}'\nset ylabel '{}'\nset cblabel '{}'\nplot '{}.mat' nonuniform matrix using 2:1:3 with image notitle\n",
                        header(&m.cols.name, &m.cols.unit),
                        header(&m.rows.name, &m.rows.unit),
                        header(&m.name, &m.unit),
                        out.stem
                    );
                    write(dir.join(format!("{}.gp", out.stem)), &gp, &mut written)?;
                }
            }
        }
    }
    Ok(written)
}

fn to_json(v: &serde_json::Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::invalid("json output", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn axis_headers(r: &SweepResult) -> Vec<String> {
    r.axes
        .iter()
        .map(|a| header(&a.param, SweepModel::param_unit(&a.param)))
        .collect()
}

pub fn sweep_csv(r: &SweepResult) -> String {
    let (name, unit) = r.model.output();
    let mut cols = axis_headers(r);
    cols.push(header(name, unit));
    let mut s = cols.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",");
    s.push('\n');
    let av = r.axis_values();
    let (n0, n1) = r.shape();
    for i in 0..n0 {
        for j in 0..n1 {
            let mut row = vec![fmt_num(av[0][i])];
            if av.len() == 2 {
                row.push(fmt_num(av[1][j]));
            }
            row.push(fmt_num(r.value(i, j)));
            s += &row.join(",");
            s.push('\n');
        }
    }
    s
}

fn contour_csv(r: &SweepResult) -> String {
    let mut s = format!("level,scale,polyline,closed,{}\n", axis_headers(r).join(","));
    for c in &r.contours {
        let scale = match c.scale {
            Scale::Linear => "linear",
            Scale::Log10 => "log10",
        };
        for (k, p) in c.polylines.iter().enumerate() {
            for q in &p.points {
                let _ = writeln!(
                    s,
                    "{},{scale},{k},{},{},{}",
                    fmt_num(c.level),
                    p.closed,
                    fmt_num(q[0]),
                    fmt_num(q[1])
                );
            }
        }
    }
    s
}

fn sweep_json(r: &SweepResult, metadata: &serde_json::Value) -> Result<String> {
    let doc = serde_json::json!({
        "axes": r.axes,
        "axis_values": r.axis_values(),
        "output": { "name": r.model.output().0, "unit": r.model.output().1 },
        "values": r.values,
        "model": r.model,
        "contours": r.contours,
        "metadata": metadata,
    });
    to_json(&doc)
}

/// Gnuplot `nonuniform matrix` layout: top-left holds the column count, the
/// first row the column coordinates, the first column the row coordinates.
pub fn nonuniform_matrix(rows: &[f64], cols: &[f64], values: &[f64]) -> String {
    let mut s = String::new();
    s += &cols.len().to_string();
    for c in cols {
        s.push(' ');
        s += &fmt_num(*c);
    }
    s.push('\n');
    for (i, r) in rows.iter().enumerate() {
        s += &fmt_num(*r);
        for v in &values[i * cols.len()..(i + 1) * cols.len()] {
            s.push(' ');
            s += &fmt_num(*v);
        }
        s.push('\n');
    }
    s
}

fn sweep_gnuplot(r: &SweepResult, stem: &str, dir: &Path, written: &mut Vec<PathBuf>) -> Result<()> {
    let av = r.axis_values();
    let (name, unit) = r.model.output();
    let logscale = |axes: &[(&str, usize)]| {
        axes.iter()
            .filter(|(_, d)| r.axes[*d].scale == Scale::Log10)
            .map(|(a, _)| format!("set logscale {a}\n"))
            .collect::<String>()
    };
    if av.len() == 1 {
        let mut s = format!(
            "# {} {}\n",
            header(&r.axes[0].param, SweepModel::param_unit(&r.axes[0].param)),
            header(name, unit)
        );
        for (x, v) in av[0].iter().zip(&r.values) {
            let _ = writeln!(s, "{} {}", fmt_num(*x), fmt_num(*v));
        }
        write(dir.join(format!("{stem}.dat")), &s, written)?;
        let gp = format!(
            "{}set logscale y\nset xlabel '{}'\nset ylabel '{}'\nplot '{stem}.dat' using 1:2 with lines notitle\n",
            logscale(&[("x", 0)]),
            header(&r.axes[0].param, SweepModel::param_unit(&r.axes[0].param)),
            header(name, unit),
        );
        return write(dir.join(format!("{stem}.gp")), &gp, written);
    }
    write(
        dir.join(format!("{stem}.mat")),
        &nonuniform_matrix(&av[0], &av[1], &r.values),
        written,
    )?;
    let mut gp = format!(
        "{}set xlabel '{}'\nset ylabel '{}'\nset cblabel 'log10 {}'\n",
        logscale(&[("x", 1), ("y", 0)]),
        header(&r.axes[1].param, SweepModel::param_unit(&r.axes[1].param)),
        header(&r.axes[0].param, SweepModel::param_unit(&r.axes[0].param)),
        name
    );
    let _ = write!(
        gp,
        "plot '{stem}.mat' nonuniform matrix using 2:1:(log10($3)) with image notitle"
    );
    if r.contours.iter().any(|c| !c.polylines.is_empty()) {
        let mut s = String::new();
        for c in &r.contours {
            for p in &c.polylines {
                let _ = writeln!(s, "# level {} closed {}", fmt_num(c.level), p.closed);
                for q in &p.points {
                    let _ = writeln!(s, "{} {}", fmt_num(q[0]), fmt_num(q[1]));
                }
                s.push('\n');
            }
        }
        write(dir.join(format!("{stem}_contours.dat")), &s, written)?;
        let _ = write!(
            gp,
            ", '{stem}_contours.dat' using 2:1 with lines dt 2 lc 'white' notitle"
        );
    }
    gp.push('\n');
    write(dir.join(format!("{stem}.gp")), &gp, written)
}

pub fn table_csv(t: &Table) -> String {
    let mut s = t
        .columns
        .iter()
        .map(|c| csv_cell(&header(&c.name, &c.unit)))
        .collect::<Vec<_>>()
        .join(",");
    s.push('\n');
    for i in 0..t.n_rows() {
        s += &t
            .columns
            .iter()
            .map(|c| csv_cell(&c.data.cell(i)))
            .collect::<Vec<_>>()
            .join(",");
        s.push('\n');
    }
    s
}

fn table_dat(t: &Table) -> String {
    let mut s = format!(
        "# {}\n",
        t.columns
            .iter()
            .map(|c| header(&c.name, &c.unit).replace(' ', ""))
            .collect::<Vec<_>>()
            .join(" ")
    );
    for i in 0..t.n_rows() {
        s += &t.columns.iter().map(|c| c.data.cell(i)).collect::<Vec<_>>().join(" ");
        s.push('\n');
    }
    s
}

fn matrix_csv(m: &Matrix) -> String {
    let mut s = format!(
        "{},{},{}\n",
        header(&m.rows.name, &m.rows.unit),
        header(&m.cols.name, &m.cols.unit),
        header(&m.name, &m.unit)
    );
    let nc = m.cols.values.len();
    for (i, r) in m.rows.values.iter().enumerate() {
        let r = fmt_num(*r);
        for (j, c) in m.cols.values.iter().enumerate() {
            let _ = writeln!(s, "{r},{},{}", fmt_num(*c), fmt_num(m.values[i * nc + j]));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snr::SnrParameters;
    use crate::sweep::{run_sweep, AxisSpec};
    use proptest::prelude::*;

    fn sweep(n: usize) -> SweepResult {
        let m = SweepModel::SnrParametric {
            params: SnrParameters::default(),
            noise: None,
        };
        let axes = [
            AxisSpec::log10("n_units", 1.0, 2.0, n).unwrap(),
            AxisSpec::log10("spacing", 1.0, 2.0, n).unwrap(),
        ];
        run_sweep(&m, &axes).unwrap()
    }

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1e-36), "1e-36");
        assert_eq!(fmt_num(0.05), "0.05");
        assert_eq!(fmt_num(1e5), "100000");
        assert_eq!(fmt_num(2.5e20), "2.5e20");
        assert_eq!(fmt_num(-3.25), "-3.25");
    }

    #[test]
    fn csv_shape_2x2() {
        let csv = sweep_csv(&sweep(2));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "n_units [1],spacing [m],snr [1]");
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 3));
    }

    #[test]
    fn matrix_is_n_plus_one_square() {
        let r = sweep(101);
        let av = r.axis_values();
        let m = nonuniform_matrix(&av[0], &av[1], &r.values);
        let rows: Vec<&str> = m.lines().collect();
        assert_eq!(rows.len(), 102);
        assert!(rows.iter().all(|l| l.split_whitespace().count() == 102));
        assert_eq!(rows[0].split_whitespace().next(), Some("101"));
    }

    #[test]
    fn json_round_trips_bitwise() {
        let r = sweep(7);
        let doc: serde_json::Value = serde_json::from_str(&sweep_json(&r, &serde_json::Value::Null).unwrap()).unwrap();
        let back: Vec<f64> = serde_json::from_value(doc["values"].clone()).unwrap();
        assert!(back.iter().zip(&r.values).all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn csv_quotes_text() {
        let t = Table {
            columns: vec![
                Column::text("label", vec!["a,b".into()]),
                Column::num("v", "m", vec![1.5]),
            ],
        };
        assert_eq!(table_csv(&t), "label,v [m]\n\"a,b\",1.5\n");
    }

    proptest! {
        #[test]
        fn formatting_round_trips(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let back: f64 = fmt_num(v).parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}
