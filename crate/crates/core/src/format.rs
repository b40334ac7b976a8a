//! Line-oriented text formats for namings, point streams and curves.
//!
//! Reals are written with 17 significant digits, so `write → read → write`
//! reproduces the same bytes.
//!
//! ```text
//! n 2
//! interval 0.0000000000000000e0 1.0000000000000000e0
//! parity half
//! atoms 2
//! 0.0000000000000000e0 1.6666666666666666e-1
//! 6.0000000000000009e-1 8.3333333333333337e-1
//! ```

use crate::error::{NamingError, Result};
use crate::naming::{Atom, Interval, MomentPoint, Naming, Parity};
use crate::transform::PolyCurve;

pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_row(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_real(x)).collect::<Vec<_>>().join(" ")
}

fn parse_err(line: usize, message: impl Into<String>) -> NamingError {
    NamingError::Parse { line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_reals(line: usize, s: &str) -> Result<Vec<f64>> {
    s.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| parse_err(line, format!("not a finite real: {tok:?}")))
        })
        .collect()
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("not a non-negative integer: {tok:?}")))
}

fn keyed<'a>(entry: Option<(usize, &'a str)>, key: &str, last: usize) -> Result<(usize, &'a str)> {
    let (line, text) = entry.ok_or_else(|| parse_err(last + 1, format!("missing `{key}` line")))?;
    let rest = text
        .strip_prefix(key)
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| parse_err(line, format!("expected `{key} ...`")))?;
    Ok((line, rest.trim()))
}

/// Serializes with atoms in stored (sorted) order.
pub fn write_naming(p: &Naming) -> String {
    let mut out = format!(
        "n {}\ninterval {} {}\nparity {}\natoms {}\n",
        p.n(),
        fmt_real(p.interval().t_min()),
        fmt_real(p.interval().t_max()),
        p.parity().as_str(),
        p.len()
    );
    for a in p.atoms() {
        out.push_str(&format!("{} {}\n", fmt_real(a.t), fmt_real(a.c)));
    }
    out
}

pub fn read_naming(text: &str) -> Result<Naming> {
    let mut lines = content_lines(text);
    let (l, n) = keyed(lines.next(), "n", 0)?;
    let n = parse_usize(l, n)?;
    let (l, iv) = keyed(lines.next(), "interval", l)?;
    let iv = parse_reals(l, iv)?;
    if iv.len() != 2 {
        return Err(parse_err(l, "interval needs t_min and t_max"));
    }
    let interval = Interval::new(iv[0], iv[1]).map_err(|e| parse_err(l, e.to_string()))?;
    let (l, par) = keyed(lines.next(), "parity", l)?;
    let parity = match par {
        "integer" => Parity::Integer,
        "half" => Parity::HalfInteger,
        other => return Err(parse_err(l, format!("parity must be `integer` or `half`, got {other:?}"))),
    };
    let (mut l, count) = keyed(lines.next(), "atoms", l)?;
    let count = parse_usize(l, count)?;
    let mut atoms = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, text) = lines.next().ok_or_else(|| parse_err(l + 1, format!("expected {count} atom lines")))?;
        let xs = parse_reals(line, text)?;
        if xs.len() != 2 {
            return Err(parse_err(line, "an atom line holds `t c`"));
        }
        atoms.push(Atom::new(xs[0], xs[1]));
        l = line;
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "trailing content after the atoms"));
    }
    Naming::new(interval, n, parity, atoms).map_err(|e| parse_err(l, e.to_string()))
}

/// A batch of points sharing `n` and the interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PointStream {
    pub interval: Interval,
    pub points: Vec<MomentPoint>,
    n: usize,
}

impl PointStream {
    pub fn new(n: usize, interval: Interval, points: Vec<MomentPoint>) -> Result<Self> {
        if n == 0 {
            return Err(NamingError::InvalidPoint("n must be at least 1".into()));
        }
        if let Some(p) = points.iter().find(|p| p.n() != n) {
            return Err(NamingError::DomainMismatch(format!("stream has n = {n}, point has n = {}", p.n())));
        }
        Ok(Self { interval, points, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn write_points(s: &PointStream) -> String {
    let mut out = format!("{} {} {}\n", s.n, fmt_real(s.interval.t_min()), fmt_real(s.interval.t_max()));
    for p in &s.points {
        out.push_str(&fmt_row(p.coords()));
        out.push('\n');
    }
    out
}

pub fn read_points(text: &str) -> Result<PointStream> {
    let mut lines = content_lines(text);
    let (l, header) = lines.next().ok_or_else(|| parse_err(1, "empty point file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(parse_err(l, "header must be `n t_min t_max`"));
    }
    let n = parse_usize(l, toks[0])?;
    let ends = parse_reals(l, &toks[1..].join(" "))?;
    let interval = Interval::new(ends[0], ends[1]).map_err(|e| parse_err(l, e.to_string()))?;
    let mut points = Vec::new();
    for (line, text) in lines {
        let xs = parse_reals(line, text)?;
        if xs.len() != n {
            return Err(parse_err(line, format!("expected {n} coordinates, got {}", xs.len())));
        }
        points.push(MomentPoint::new(xs).map_err(|e| parse_err(line, e.to_string()))?);
    }
    PointStream::new(n, interval, points).map_err(|e| parse_err(l, e.to_string()))
}

/// `n` rows of `n + 1` coefficients, constant term first.
pub fn write_curve(c: &PolyCurve) -> String {
    c.rows().iter().map(|r| fmt_row(r) + "\n").collect()
}

pub fn read_curve(text: &str) -> Result<PolyCurve> {
    let mut rows = Vec::new();
    let mut last = 1;
    for (line, text) in content_lines(text) {
        rows.push(parse_reals(line, text)?);
        last = line;
    }
    PolyCurve::new(rows).map_err(|e| parse_err(last, e.to_string()))
}
