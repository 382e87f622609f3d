//! Plain-text point files.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! d=3 n=4 label=two_skew_lines(n=4)
//! 1 0 0
//! 2 0 0
//! 1/2 1 3/2
//! 2 1 3
//! ```
//!
//! The header declares the ambient dimension and the row count. Rows carry
//! d rationals (affine coordinates), or d+1 when the header says
//! `homogeneous`. The optional `label=` takes the rest of its line.

use std::fs;
use std::path::Path;

use num_traits::One;

use crate::error::{Error, Result};
use crate::point::{PointSet, ProjPoint};
use crate::scalar::{parse_rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFile {
    pub ambient_dim: usize,
    pub declared_n: usize,
    pub homogeneous: bool,
    pub label: String,
    pub rows: Vec<Vec<Scalar>>,
}

impl PointFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, bool, String, usize)> = None;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            match &header {
                None => header = Some(parse_header(line, raw, line_no)?),
                Some((d, n, homogeneous, _, _)) => {
                    let want = if *homogeneous { *d + 1 } else { *d };
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    if fields.len() != want {
                        return Err(Error::PointFile {
                            line: line_no,
                            msg: format!("expected {want} coordinates, found {}", fields.len()),
                        });
                    }
                    if rows.len() == *n {
                        return Err(Error::PointFile {
                            line: line_no,
                            msg: format!("more rows than the declared n={n}"),
                        });
                    }
                    let row = fields
                        .iter()
                        .map(|f| {
                            parse_rational(f).map_err(|_| Error::PointFile {
                                line: line_no,
                                msg: format!("malformed rational {f:?}"),
                            })
                        })
                        .collect::<Result<Vec<Scalar>>>()?;
                    rows.push(row);
                }
            }
        }
        let Some((ambient_dim, declared_n, homogeneous, label, header_line)) = header else {
            return Err(Error::PointFile {
                line: 0,
                msg: "empty file".into(),
            });
        };
        if rows.len() != declared_n {
            return Err(Error::PointFile {
                line: header_line,
                msg: format!("header declares n={declared_n} but found {} rows", rows.len()),
            });
        }
        Ok(PointFile {
            ambient_dim,
            declared_n,
            homogeneous,
            label,
            rows,
        })
    }

    /// Canonical deduplicated point set plus the number of dropped
    /// duplicate rows.
    pub fn into_point_set(self) -> Result<(PointSet, usize)> {
        let points = self
            .rows
            .into_iter()
            .map(|row| {
                if self.homogeneous {
                    ProjPoint::new(row)
                } else {
                    ProjPoint::embed_affine(&row)
                }
            })
            .collect::<Result<Vec<ProjPoint>>>()?;
        PointSet::new_dedup(self.ambient_dim, points, self.label)
    }

    /// Renders a point set in this format; rows come out affine unless some
    /// point lies at infinity.
    pub fn render(s: &PointSet) -> String {
        let homogeneous = s.iter().any(ProjPoint::is_at_infinity);
        let mut out = String::new();
        out.push_str(&format!("d={} n={}", s.ambient_dim(), s.len()));
        if homogeneous {
            out.push_str(" homogeneous");
        }
        if !s.label().is_empty() {
            out.push_str(&format!(" label={}", s.label()));
        }
        out.push('\n');
        for p in s.iter() {
            let coords = p.coords();
            let fields: Vec<String> = if homogeneous {
                coords.iter().map(Scalar::to_string).collect()
            } else {
                debug_assert!(coords[0].is_one());
                coords[1..].iter().map(Scalar::to_string).collect()
            };
            out.push_str(&fields.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_header(
    line: &str,
    raw: &str,
    line_no: usize,
) -> Result<(usize, usize, bool, String, usize)> {
    let mut d: Option<usize> = None;
    let mut n: Option<usize> = None;
    let mut homogeneous = false;
    let mut label = String::new();
    for token in line.split_whitespace() {
        if let Some(v) = token.strip_prefix("d=") {
            d = Some(v.parse().map_err(|_| Error::PointFile {
                line: line_no,
                msg: format!("bad dimension {v:?}"),
            })?);
        } else if let Some(v) = token.strip_prefix("n=") {
            n = Some(v.parse().map_err(|_| Error::PointFile {
                line: line_no,
                msg: format!("bad count {v:?}"),
            })?);
        } else if token == "homogeneous" {
            homogeneous = true;
        } else if token.starts_with("label=") {
            // The label is everything after "label=" on the raw line.
            let pos = raw.find("label=").expect("token came from this line");
            label = raw[pos + "label=".len()..].trim().to_string();
            break;
        } else {
            return Err(Error::PointFile {
                line: line_no,
                msg: format!("unexpected header token {token:?}"),
            });
        }
    }
    let (Some(d), Some(n)) = (d, n) else {
        return Err(Error::PointFile {
            line: line_no,
            msg: "header needs d=<D> and n=<N>".into(),
        });
    };
    if d < 2 {
        return Err(Error::PointFile {
            line: line_no,
            msg: format!("ambient dimension {d} too small"),
        });
    }
    Ok((d, n, homogeneous, label, line_no))
}

/// A parsed point file with its bookkeeping.
#[derive(Clone, Debug)]
pub struct LoadedPoints {
    pub set: PointSet,
    pub duplicates_dropped: usize,
}

pub fn load_points(path: &Path) -> Result<LoadedPoints> {
    let text = fs::read_to_string(path)?;
    let file = PointFile::parse(&text)?;
    let (mut set, duplicates_dropped) = file.into_point_set()?;
    if set.label().is_empty() {
        let fallback = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "points".into());
        set = PointSet::new(set.ambient_dim(), set.points().to_vec(), fallback)?;
    }
    Ok(LoadedPoints {
        set,
        duplicates_dropped,
    })
}

pub fn save_points(path: &Path, s: &PointSet) -> Result<()> {
    fs::write(path, PointFile::render(s))?;
    Ok(())
}
