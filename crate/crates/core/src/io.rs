//! CSV import and export of sampled paths and group paths.

use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupPath;
use crate::path::{SampledPath, MAX_GRID_LEVEL};

/// Relative tolerance on the spacing of input times.
const UNIFORM_TOL: f64 = 1e-6;

/// How an input file was mapped onto the dyadic grid of `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResamplingRecord {
    pub source_rows: usize,
    pub source_interval: (f64, f64),
    pub grid_level: u32,
    pub resampled: bool,
}

fn open_reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let row = e.position().map(|p| p.line() as usize).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        kind => Error::Parse {
            row,
            msg: format!("{kind:?}"),
        },
    }
}

/// Rows of numbers with their file line numbers; every row must have `width` fields.
fn read_rows(path: &Path, width: usize) -> Result<Vec<(usize, Vec<f64>)>> {
    let mut reader = open_reader(path)?;
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        if rec.len() != width {
            return Err(Error::Parse {
                row: line,
                msg: format!("expected {width} fields, found {}", rec.len()),
            });
        }
        let vals = rec
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Parse {
                        row: line,
                        msg: format!("`{s}` is not a finite number"),
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push((line, vals));
    }
    Ok(rows)
}

fn header_width(path: &Path) -> Result<usize> {
    let mut reader = open_reader(path)?;
    let h = reader.headers().map_err(|e| csv_error(path, e))?;
    Ok(h.len())
}

/// Checks strictly increasing, uniformly spaced times.
fn check_times(rows: &[(usize, Vec<f64>)]) -> Result<(f64, f64)> {
    let (first, last) = (rows[0].1[0], rows[rows.len() - 1].1[0]);
    let step = (last - first) / (rows.len() - 1) as f64;
    if let Some(w) = rows.windows(2).find(|w| w[1].1[0] <= w[0].1[0]) {
        return Err(Error::Parse {
            row: w[1].0,
            msg: "times must be strictly increasing".into(),
        });
    }
    for w in rows.windows(2) {
        let dt = w[1].1[0] - w[0].1[0];
        if (dt - step).abs() > UNIFORM_TOL * step {
            return Err(Error::Parse {
                row: w[1].0,
                msg: format!("non-uniform time step {dt} (expected {step})"),
            });
        }
    }
    Ok((first, last))
}

/// Reads a `t,x1,...,xd` file, maps its time range onto `[0, 1]` and, unless
/// the row count already is `2^M + 1`, interpolates linearly onto the nearest
/// dyadic grid.
pub fn read_path_csv(path: impl AsRef<Path>) -> Result<(SampledPath, ResamplingRecord)> {
    let path = path.as_ref();
    let width = header_width(path)?;
    if width < 2 {
        return Err(Error::Parse {
            row: 1,
            msg: "header must be `t,x1,...,xd`".into(),
        });
    }
    let dim = width - 1;
    let rows = read_rows(path, width)?;
    if rows.len() < 2 {
        return Err(Error::DegenerateGrid(rows.len()));
    }
    let (first, last) = check_times(&rows)?;
    let cells = rows.len() - 1;
    let level = ((cells as f64).log2().round() as u32).clamp(2, MAX_GRID_LEVEL);
    let resampled = cells != 1usize << level;
    let mut values = Vec::with_capacity(rows.len() * dim);
    for (_, r) in &rows {
        values.extend_from_slice(&r[1..]);
    }
    let out = if resampled {
        // Sample u ∈ [0, 1] sits at fractional row u · cells.
        SampledPath::from_fn(0.0, 1.0, level, dim, |u, out| {
            let x = u * cells as f64;
            let i = (x.floor() as usize).min(cells - 1);
            let f = x - i as f64;
            for j in 0..dim {
                let (a, b) = (values[i * dim + j], values[(i + 1) * dim + j]);
                out[j] = a + f * (b - a);
            }
        })?
    } else {
        SampledPath::new(0.0, 1.0, level, dim, values)?
    };
    Ok((
        out,
        ResamplingRecord {
            source_rows: rows.len(),
            source_interval: (first, last),
            grid_level: level,
            resampled,
        },
    ))
}

fn create_writer(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

fn write_row(w: &mut csv::Writer<File>, path: &Path, row: &[f64]) -> Result<()> {
    w.write_record(row.iter().map(|v| v.to_string()))
        .map_err(|e| csv_error(path, e))
}

pub fn write_path_csv(path: impl AsRef<Path>, x: &SampledPath) -> Result<()> {
    let path = path.as_ref();
    let mut w = create_writer(path)?;
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain((1..=x.dim()).map(|j| format!("x{j}")))
        .collect();
    w.write_record(&header).map_err(|e| csv_error(path, e))?;
    let mut row = Vec::with_capacity(x.dim() + 1);
    for i in 0..x.len() {
        row.clear();
        row.push(x.time(i));
        row.extend_from_slice(x.point(i));
        write_row(&mut w, path, &row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn pair_label(i: usize, j: usize, d: usize) -> String {
    if d < 10 {
        format!("xx_{i}{j}")
    } else {
        format!("xx_{i}_{j}")
    }
}

/// Writes `t, x_1..x_d, xx_11..xx_dd` with level 2 in row-major order.
pub fn write_group_path_csv(path: impl AsRef<Path>, g: &GroupPath) -> Result<()> {
    let path = path.as_ref();
    let d = g.dim();
    let mut w = create_writer(path)?;
    let mut header = vec!["t".to_string()];
    header.extend((1..=d).map(|i| format!("x_{i}")));
    for i in 1..=d {
        header.extend((1..=d).map(|j| pair_label(i, j, d)));
    }
    w.write_record(&header).map_err(|e| csv_error(path, e))?;
    let mut row = Vec::with_capacity(1 + d + d * d);
    for i in 0..g.len() {
        row.clear();
        row.push(g.time(i));
        row.extend_from_slice(g.level1_at(i));
        row.extend_from_slice(g.level2_at(i));
        write_row(&mut w, path, &row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a file written by [`write_group_path_csv`]. The rows must form a
/// dyadic grid of `[0, 1]`; the group membership of rows is not checked here.
pub fn read_group_path_csv(path: impl AsRef<Path>) -> Result<GroupPath> {
    let path = path.as_ref();
    let width = header_width(path)?;
    let d = (1..=64)
        .find(|d| 1 + d + d * d == width)
        .ok_or_else(|| Error::Parse {
            row: 1,
            msg: format!("{width} columns do not match `t, x_1..x_d, xx_11..xx_dd`"),
        })?;
    let rows = read_rows(path, width)?;
    let cells = rows.len().saturating_sub(1);
    if cells < 1 || !cells.is_power_of_two() {
        return Err(Error::GridMismatch(format!(
            "{} rows do not form a dyadic grid",
            rows.len()
        )));
    }
    let level = cells.trailing_zeros();
    let (first, last) = check_times(&rows)?;
    if first.abs() > UNIFORM_TOL || (last - 1.0).abs() > UNIFORM_TOL {
        return Err(Error::GridMismatch(format!(
            "group path spans [{first}, {last}], expected [0, 1]"
        )));
    }
    let mut l1 = Vec::with_capacity(rows.len() * d);
    let mut l2 = Vec::with_capacity(rows.len() * d * d);
    for (_, r) in &rows {
        l1.extend_from_slice(&r[1..=d]);
        l2.extend_from_slice(&r[1 + d..]);
    }
    GroupPath::new(0.0, 1.0, level, d, l1, l2)
}
