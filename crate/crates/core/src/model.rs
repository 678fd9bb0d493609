//! Colored point sets, plane cycles and their text formats.
//!
//! Instance files hold one point per line as `x y color`; lines starting with
//! `#` and blank lines are skipped. Cycle files hold one cycle per line as
//! space-separated vertex indices.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

use crate::geom::{self, GeneralPositionViolation, GeomError, Point};

pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Coordinate { line: usize, source: GeomError },
    #[error("{0}")]
    GeneralPosition(#[from] GeneralPositionViolation),
    #[error("points and colors differ in length ({points} vs {colors})")]
    LengthMismatch { points: usize, colors: usize },
    #[error("instance needs at least two colors, found {0}")]
    TooFewColors(usize),
    #[error("color ids must be 0..{color_count} with every class nonempty; color {missing} is unused")]
    MissingColor { color_count: usize, missing: Color },
    #[error("failed to read input: {0}")]
    Io(String),
}

/// An immutable point set in general position with a color per point.
///
/// The host graph is the complete multipartite graph on the color classes:
/// `a` and `b` are adjacent iff their colors differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPointSet {
    points: Vec<Point>,
    colors: Vec<Color>,
    color_count: usize,
}

impl ColoredPointSet {
    pub fn new(points: Vec<Point>, colors: Vec<Color>) -> Result<Self, ModelError> {
        if points.len() != colors.len() {
            return Err(ModelError::LengthMismatch { points: points.len(), colors: colors.len() });
        }
        geom::validate_general_position(&points)?;
        let color_count = colors.iter().max().map_or(0, |&c| c as usize + 1);
        let mut used = vec![false; color_count];
        for &c in &colors {
            used[c as usize] = true;
        }
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(ModelError::MissingColor { color_count, missing: missing as Color });
        }
        if color_count < 2 {
            return Err(ModelError::TooFewColors(color_count));
        }
        Ok(ColoredPointSet { points, colors, color_count })
    }

    /// Builds a set from `(x, y, color)` triples.
    pub fn from_triples(triples: &[(i64, i64, Color)]) -> Result<Self, ModelError> {
        let mut points = Vec::with_capacity(triples.len());
        let mut colors = Vec::with_capacity(triples.len());
        for (i, &(x, y, c)) in triples.iter().enumerate() {
            points.push(Point::new(x, y).map_err(|source| ModelError::Coordinate { line: i + 1, source })?);
            colors.push(c);
        }
        ColoredPointSet::new(points, colors)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    #[inline]
    pub fn color(&self, i: usize) -> Color {
        self.colors[i]
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    /// Number of points of each color.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.color_count];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// `true` iff `ab` is an edge of the host graph.
    #[inline]
    pub fn is_host_edge(&self, a: usize, b: usize) -> bool {
        self.colors[a] != self.colors[b]
    }

    /// `true` iff the segments `ab` and `cd` (given as point indices) cross.
    #[inline]
    pub fn cross(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        geom::segments_cross(self.points[a], self.points[b], self.points[c], self.points[d])
    }

    /// The points with indices in `subset`, as a new instance. Index `i` of
    /// the result is `subset[i]` of `self`.
    pub fn restrict(&self, subset: &[usize]) -> Result<ColoredPointSet, ModelError> {
        let points = subset.iter().map(|&i| self.points[i]).collect();
        let colors = subset.iter().map(|&i| self.colors[i]).collect();
        ColoredPointSet::new(points, colors)
    }

    /// Serializes to the instance text format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.len() * 16);
        for (p, c) in self.points.iter().zip(&self.colors) {
            let _ = writeln!(out, "{} {} {}", p.x(), p.y(), c);
        }
        out
    }
}

/// Parses an instance from text.
pub fn parse_instance(text: &str) -> Result<ColoredPointSet, ModelError> {
    let mut points = Vec::new();
    let mut colors = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let line_no = lineno + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(ModelError::Parse {
                line: line_no,
                message: format!("expected `x y color`, found {} fields", fields.len()),
            });
        }
        let num = |s: &str, what: &str| -> Result<i64, ModelError> {
            s.parse::<i64>().map_err(|_| ModelError::Parse {
                line: line_no,
                message: format!("invalid {what} `{s}`"),
            })
        };
        let x = num(fields[0], "x coordinate")?;
        let y = num(fields[1], "y coordinate")?;
        let c = fields[2].parse::<Color>().map_err(|_| ModelError::Parse {
            line: line_no,
            message: format!("invalid color id `{}`", fields[2]),
        })?;
        points.push(Point::new(x, y).map_err(|source| ModelError::Coordinate { line: line_no, source })?);
        colors.push(c);
    }
    ColoredPointSet::new(points, colors)
}

pub fn read_instance<R: BufRead>(mut reader: R) -> Result<ColoredPointSet, ModelError> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|e| ModelError::Io(e.to_string()))?;
    parse_instance(&text)
}

/// Parses a cycle file into raw index sequences (not yet validated).
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>, ModelError> {
    let mut cycles = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cycle = line
            .split_whitespace()
            .map(|s| {
                s.parse::<usize>().map_err(|_| ModelError::Parse {
                    line: lineno + 1,
                    message: format!("invalid vertex index `{s}`"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Writes cycles one per line in canonical form.
pub fn write_cycles<'a>(cycles: impl IntoIterator<Item = &'a PlaneCycle>) -> String {
    let mut out = String::new();
    for c in cycles {
        let canon = c.canonical();
        let line: Vec<String> = canon.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// A noncrossing cycle in the host graph of some [`ColoredPointSet`].
///
/// Only obtainable through [`validate_cycle`] (or crate-internal searches
/// that check the same conditions incrementally).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneCycle {
    vertices: Vec<usize>,
}

impl PlaneCycle {
    pub(crate) fn new_unchecked(vertices: Vec<usize>) -> Self {
        PlaneCycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges `(v_i, v_{i+1})` in cycle order, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let t = self.vertices.len();
        (0..t).map(move |i| (self.vertices[i], self.vertices[(i + 1) % t]))
    }

    /// Rotation/reflection representative: smallest index first, then the
    /// direction whose second vertex is smaller.
    pub fn canonical(&self) -> PlaneCycle {
        PlaneCycle { vertices: canonical_order(&self.vertices) }
    }

    pub fn color_profile(&self, ps: &ColoredPointSet) -> CycleColorProfile {
        color_profile(ps, &self.vertices)
    }

    pub fn is_rainbow(&self, ps: &ColoredPointSet) -> bool {
        self.color_profile(ps).rainbow
    }
}

pub(crate) fn canonical_order(vertices: &[usize]) -> Vec<usize> {
    let t = vertices.len();
    if t == 0 {
        return Vec::new();
    }
    let start = (0..t).min_by_key(|&i| vertices[i]).unwrap();
    let forward = vertices[(start + 1) % t];
    let backward = vertices[(start + t - 1) % t];
    if forward <= backward {
        (0..t).map(|k| vertices[(start + k) % t]).collect()
    } else {
        (0..t).map(|k| vertices[(start + t - k) % t]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleColorProfile {
    pub rainbow: bool,
    /// Colors occurring at least twice, with their multiplicity.
    pub repeated_colors: BTreeMap<Color, usize>,
}

pub fn color_profile(ps: &ColoredPointSet, vertices: &[usize]) -> CycleColorProfile {
    let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
    for &v in vertices {
        *counts.entry(ps.color(v)).or_default() += 1;
    }
    counts.retain(|_, n| *n >= 2);
    CycleColorProfile { rainbow: counts.is_empty(), repeated_colors: counts }
}

/// The first violated condition of a candidate cycle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleViolation {
    #[error("vertex index {index} out of range (instance has {len} points)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vertex {vertex} occurs more than once")]
    RepeatedVertex { vertex: usize },
    #[error("cycle has {len} vertices, at least 3 required")]
    TooShort { len: usize },
    #[error("edge {a}-{b} is monochromatic")]
    Monochromatic { a: usize, b: usize },
    #[error("edges {}-{} and {}-{} cross", .first.0, .first.1, .second.0, .second.1)]
    Crossing { first: (usize, usize), second: (usize, usize) },
}

/// Checks a candidate vertex sequence, in the order: index range,
/// distinctness, length, edge colors, crossings.
pub fn validate_cycle(ps: &ColoredPointSet, candidate: &[usize]) -> Result<PlaneCycle, CycleViolation> {
    for &v in candidate {
        if v >= ps.len() {
            return Err(CycleViolation::IndexOutOfRange { index: v, len: ps.len() });
        }
    }
    let mut seen = vec![false; ps.len()];
    for &v in candidate {
        if std::mem::replace(&mut seen[v], true) {
            return Err(CycleViolation::RepeatedVertex { vertex: v });
        }
    }
    let t = candidate.len();
    if t < 3 {
        return Err(CycleViolation::TooShort { len: t });
    }
    for i in 0..t {
        let (a, b) = (candidate[i], candidate[(i + 1) % t]);
        if !ps.is_host_edge(a, b) {
            return Err(CycleViolation::Monochromatic { a, b });
        }
    }
    for i in 0..t {
        let (a, b) = (candidate[i], candidate[(i + 1) % t]);
        for j in (i + 2)..t {
            if i == 0 && j == t - 1 {
                continue;
            }
            let (c, d) = (candidate[j], candidate[(j + 1) % t]);
            if ps.cross(a, b, c, d) {
                return Err(CycleViolation::Crossing { first: (a, b), second: (c, d) });
            }
        }
    }
    Ok(PlaneCycle { vertices: candidate.to_vec() })
}
