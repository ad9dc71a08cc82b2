//! CSV formats for point clouds and samples.
//!
//! Points: one row per point, `q+1` comma-separated coordinates. Samples: the
//! coordinates followed by the value. Blank lines and lines starting with `#`
//! are ignored. Rows are renormalized; rows whose norm is off by more than
//! [`FILE_NORM_TOL`] are rejected.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::network::SampleSet;
use crate::sphere::{PointCloud, FILE_NORM_TOL};

struct Rows {
    width: usize,
    data: Vec<f64>,
}

fn parse_rows(text: &str, path: Option<&Path>, width: Option<usize>) -> Result<Rows> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.map(Path::to_path_buf),
        line,
        msg,
    };
    let mut width = width;
    let mut data = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| err(i + 1, format!("'{tok}' is not a finite number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        match width {
            None => {
                if row.len() < 2 {
                    return Err(err(i + 1, format!("expected at least 2 columns, found {}", row.len())));
                }
                width = Some(row.len());
            }
            Some(w) if w != row.len() => {
                return Err(err(i + 1, format!("expected {w} columns, found {}", row.len())));
            }
            Some(_) => {}
        }
        data.extend(row);
    }
    match width {
        Some(width) => Ok(Rows { width, data }),
        None => Err(err(0, "no data rows".into())),
    }
}

fn normalize_rows(data: &mut [f64], dim: usize, stride: usize, path: Option<&Path>, lines: &[usize]) -> Result<()> {
    for (r, row) in data.chunks_mut(stride).enumerate() {
        let norm = row[..dim].iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > FILE_NORM_TOL {
            return Err(Error::Parse {
                path: path.map(Path::to_path_buf),
                line: lines[r],
                msg: format!("point has norm {norm}, not within {FILE_NORM_TOL} of 1"),
            });
        }
        row[..dim].iter_mut().for_each(|c| *c /= norm);
    }
    Ok(())
}

/// Line numbers (1-based) of the data rows.
fn data_lines(text: &str) -> Vec<usize> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, _)| i + 1)
        .collect()
}

/// Parses a points CSV. With `q = None` the dimension is taken from the first row.
pub fn parse_points(text: &str, q: Option<usize>, path: Option<&Path>) -> Result<PointCloud> {
    let rows = parse_rows(text, path, q.map(|q| q + 1))?;
    let mut data = rows.data;
    normalize_rows(&mut data, rows.width, rows.width, path, &data_lines(text))?;
    PointCloud::from_flat(rows.width - 1, data)
}

pub fn read_points(path: &Path, q: Option<usize>) -> Result<PointCloud> {
    let text = fs::read_to_string(path)?;
    parse_points(&text, q, Some(path))
}

/// Parses a samples CSV: `q+1` coordinates then the value on each row.
pub fn parse_samples(text: &str, q: Option<usize>, path: Option<&Path>) -> Result<SampleSet> {
    let rows = parse_rows(text, path, q.map(|q| q + 2))?;
    if rows.width < 3 {
        return Err(Error::Parse {
            path: path.map(Path::to_path_buf),
            line: data_lines(text).first().copied().unwrap_or(0),
            msg: "samples need at least two coordinates and a value".into(),
        });
    }
    let dim = rows.width - 1;
    let mut data = rows.data;
    normalize_rows(&mut data, dim, rows.width, path, &data_lines(text))?;
    let mut coords = Vec::with_capacity(data.len() / rows.width * dim);
    let mut values = Vec::with_capacity(data.len() / rows.width);
    for row in data.chunks(rows.width) {
        coords.extend_from_slice(&row[..dim]);
        values.push(row[dim]);
    }
    SampleSet::new(PointCloud::from_flat(dim - 1, coords)?, values)
}

pub fn read_samples(path: &Path, q: Option<usize>) -> Result<SampleSet> {
    let text = fs::read_to_string(path)?;
    parse_samples(&text, q, Some(path))
}

/// Shortest round-trip formatting of each coordinate.
pub fn format_points(cloud: &PointCloud) -> String {
    let mut out = String::new();
    for x in cloud.iter() {
        write_row(&mut out, x, None);
    }
    out
}

pub fn format_samples(samples: &SampleSet) -> String {
    let mut out = String::new();
    for (x, v) in samples.cloud().iter().zip(samples.values()) {
        write_row(&mut out, x, Some(*v));
    }
    out
}

fn write_row(out: &mut String, coords: &[f64], value: Option<f64>) {
    for (i, c) in coords.iter().chain(value.as_ref()).enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{c:?}");
    }
    out.push('\n');
}

pub fn write_points(path: &Path, cloud: &PointCloud) -> Result<()> {
    Ok(fs::write(path, format_points(cloud))?)
}

pub fn write_samples(path: &Path, samples: &SampleSet) -> Result<()> {
    Ok(fs::write(path, format_samples(samples))?)
}
