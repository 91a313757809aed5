//! Import and export of sampled fields.
//!
//! A snapshot is a data file plus a sidecar text header `<base>.hdr`:
//!
//! ```text
//! dualfield-snapshot 1
//! encoding f64le            (or: csv)
//! axes z t
//! shape 33 17
//! start 0.0 0.0
//! spacing 0.03125 0.0625
//! labels Ex Hy
//! ```
//!
//! Numbers in the header are written in Rust's shortest round-trip decimal
//! form, so parsing returns the identical `f64`. Nodes are ordered row-major
//! with the last axis fastest.
//!
//! * `f64le` (`<base>.bin`): for each label in order, for each node, the real
//!   part then the imaginary part as IEEE-754 binary64 little-endian. The file
//!   holds exactly `16 * labels * nodes` bytes.
//! * `csv` (`<base>.csv`): one header row `<axes...>,<label>_re,<label>_im,...`
//!   then one row per node with its coordinates and values in shortest
//!   round-trip decimal form.
//!
//! Both encodings reproduce every sample bit for bit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::grid::{Grid, SampledField, UniformAxis};
use crate::{Error, Result};

const MAGIC: &str = "dualfield-snapshot 1";

/// Data encoding of a snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Encoding {
    F64Le,
    Csv,
}

impl Encoding {
    fn tag(self) -> &'static str {
        match self {
            Encoding::F64Le => "f64le",
            Encoding::Csv => "csv",
        }
    }

    fn extension(self) -> &'static str {
        match self {
            Encoding::F64Le => "bin",
            Encoding::Csv => "csv",
        }
    }
}

fn join<T: std::fmt::Debug>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter()
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Sidecar header text for `field`.
pub fn header(field: &SampledField, encoding: Encoding) -> String {
    let g = &field.grid;
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "encoding {}", encoding.tag());
    let _ = writeln!(s, "axes {}", g.names.join(" "));
    let _ = writeln!(s, "shape {}", join(g.shape()));
    let _ = writeln!(s, "start {}", join(g.axes.iter().map(|a| a.start)));
    let _ = writeln!(s, "spacing {}", join(g.axes.iter().map(|a| a.step)));
    let _ = writeln!(s, "labels {}", field.labels.join(" "));
    s
}

/// Parsed sidecar header.
#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub encoding: Encoding,
    pub grid: Grid,
    pub labels: Vec<String>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn parse_list<T: std::str::FromStr>(rest: &str, what: &str) -> Result<Vec<T>> {
    rest.split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| bad(format!("bad {what} value {w:?}")))
        })
        .collect()
}

/// Parse a sidecar header.
pub fn parse_header(text: &str) -> Result<Header> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(MAGIC) {
        return Err(bad("missing snapshot magic line"));
    }
    let (mut enc, mut names, mut shape, mut start, mut step, mut labels) =
        (None, None, None, None, None, None);
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        match key {
            "encoding" => {
                enc = Some(match rest.trim() {
                    "f64le" => Encoding::F64Le,
                    "csv" => Encoding::Csv,
                    other => return Err(bad(format!("unknown encoding {other:?}"))),
                })
            }
            "axes" => {
                names = Some(
                    rest.split_whitespace()
                        .map(String::from)
                        .collect::<Vec<_>>(),
                )
            }
            "shape" => shape = Some(parse_list::<usize>(rest, "shape")?),
            "start" => start = Some(parse_list::<f64>(rest, "start")?),
            "spacing" => step = Some(parse_list::<f64>(rest, "spacing")?),
            "labels" => {
                labels = Some(
                    rest.split_whitespace()
                        .map(String::from)
                        .collect::<Vec<_>>(),
                )
            }
            other => return Err(bad(format!("unknown header key {other:?}"))),
        }
    }
    let missing = |k: &str| bad(format!("header lacks {k}"));
    let names = names.ok_or_else(|| missing("axes"))?;
    let shape = shape.ok_or_else(|| missing("shape"))?;
    let start = start.ok_or_else(|| missing("start"))?;
    let step = step.ok_or_else(|| missing("spacing"))?;
    if shape.len() != names.len() || start.len() != names.len() || step.len() != names.len() {
        return Err(bad("axes, shape, start and spacing must have equal length"));
    }
    if shape.contains(&0) {
        return Err(bad("empty axis"));
    }
    let axes = (0..names.len())
        .map(|i| UniformAxis {
            start: start[i],
            step: step[i],
            len: shape[i],
        })
        .collect();
    Ok(Header {
        encoding: enc.ok_or_else(|| missing("encoding"))?,
        grid: Grid::new(axes, names)?,
        labels: labels.ok_or_else(|| missing("labels"))?,
    })
}

/// Binary payload of `field`.
pub fn to_bytes(field: &SampledField) -> Vec<u8> {
    let mut out = Vec::with_capacity(16 * field.channels.len() * field.grid.len());
    for ch in &field.channels {
        for z in ch {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    out
}

/// Rebuild a field from a header and its binary payload.
pub fn from_bytes(h: &Header, bytes: &[u8]) -> Result<SampledField> {
    let n = h.grid.len();
    let want = 16 * n * h.labels.len();
    if bytes.len() != want {
        return Err(bad(format!(
            "payload has {} bytes, expected {want}",
            bytes.len()
        )));
    }
    let read =
        |k: usize| f64::from_le_bytes(bytes[8 * k..8 * k + 8].try_into().expect("8-byte slice"));
    let channels = (0..h.labels.len())
        .map(|c| {
            (0..n)
                .map(|i| Complex64::new(read(2 * (c * n + i)), read(2 * (c * n + i) + 1)))
                .collect()
        })
        .collect();
    SampledField::new(h.grid.clone(), h.labels.clone(), channels)
}

/// CSV table of `field`.
pub fn to_csv(field: &SampledField) -> String {
    let g = &field.grid;
    let mut cols: Vec<String> = g.names.clone();
    for l in &field.labels {
        cols.push(format!("{l}_re"));
        cols.push(format!("{l}_im"));
    }
    let mut s = cols.join(",");
    s.push('\n');
    for n in 0..g.len() {
        let mut row: Vec<String> = g.coords(n).iter().map(|x| format!("{x:?}")).collect();
        for ch in &field.channels {
            row.push(format!("{:?}", ch[n].re));
            row.push(format!("{:?}", ch[n].im));
        }
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// Rebuild a field from a header and its CSV table.
pub fn from_csv(h: &Header, text: &str) -> Result<SampledField> {
    let n = h.grid.len();
    let rank = h.grid.rank();
    let width = rank + 2 * h.labels.len();
    let mut lines = text.lines().filter(|l| !l.is_empty());
    let head = lines.next().ok_or_else(|| bad("empty CSV"))?;
    if head.split(',').count() != width {
        return Err(bad("CSV header width does not match the sidecar header"));
    }
    let mut channels = vec![Vec::with_capacity(n); h.labels.len()];
    let mut rows = 0;
    for line in lines {
        let cells: Vec<f64> = parse_list(&line.replace(',', " "), "CSV")?;
        if cells.len() != width {
            return Err(bad(format!(
                "CSV row {} has {} cells, expected {width}",
                rows + 1,
                cells.len()
            )));
        }
        for (c, ch) in channels.iter_mut().enumerate() {
            ch.push(Complex64::new(cells[rank + 2 * c], cells[rank + 2 * c + 1]));
        }
        rows += 1;
    }
    if rows != n {
        return Err(bad(format!("CSV has {rows} rows, expected {n}")));
    }
    SampledField::new(h.grid.clone(), h.labels.clone(), channels)
}

fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut p = base.as_os_str().to_owned();
    p.push(".");
    p.push(ext);
    PathBuf::from(p)
}

/// Write `<base>.hdr` and the data file; returns the data file path.
pub fn save(field: &SampledField, base: &Path, encoding: Encoding) -> Result<PathBuf> {
    for name in field.labels.iter().chain(&field.grid.names) {
        if name.is_empty() || name.contains(|c: char| c.is_whitespace() || c == ',') {
            return Err(bad(format!(
                "name {name:?} must be non-empty without whitespace or commas"
            )));
        }
    }
    std::fs::write(with_ext(base, "hdr"), header(field, encoding))?;
    let data = with_ext(base, encoding.extension());
    match encoding {
        Encoding::F64Le => std::fs::write(&data, to_bytes(field))?,
        Encoding::Csv => std::fs::write(&data, to_csv(field))?,
    }
    Ok(data)
}

/// Read a snapshot written by [`save`].
pub fn load(base: &Path) -> Result<SampledField> {
    let h = parse_header(&std::fs::read_to_string(with_ext(base, "hdr"))?)?;
    let data = with_ext(base, h.encoding.extension());
    match h.encoding {
        Encoding::F64Le => from_bytes(&h, &std::fs::read(data)?),
        Encoding::Csv => from_csv(&h, &std::fs::read_to_string(data)?),
    }
}
