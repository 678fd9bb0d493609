//! Seeded instance families.
//!
//! The same [`GenSpec`] always yields the same instance. Every family checks
//! its own defining property before returning and retries with fresh draws
//! from the same stream otherwise.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fpt::decide_hamiltonian;
use crate::geom::{convex_hull, segments_cross, strictly_inside_convex, validate_general_position, Point};
use crate::model::{Color, ColoredPointSet};
use crate::nested::validate_nested;
use crate::oracle::{find_plane_cycle, MAX_ORACLE_POINTS};
use crate::rainbow::find_configuration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// `n` points in a square, `colors` colors, each color used.
    Random,
    /// `n` points of each of two colors in a square.
    Bipartite,
    /// `2n` points in convex position, colors alternating.
    ConvexAlternating,
    /// `n` points of color 1 in convex position around `n` points of color 0.
    Nested,
    /// Ring of `n` points of color 1, one point of color 0 in every edge zone.
    ZoneRing,
    /// Ring of `n` (even) points of color 1, two points of color 0 in every other edge zone.
    ZonePairs,
    /// `n` points of each of two colors, exactly `interior` of them off the hull.
    InteriorK,
    /// As `interior_k`, but hull colors alternate (one same-colored pair if the hull is odd).
    InteriorAlt,
    /// Simple polygon on `n` vertices, listed in boundary order, properly colored.
    Polygon,
    /// Two-colored, no plane cycle at all.
    Fig1LeftLike,
    /// Two-colored, `n` per color: plane cycles of every even length below `2n`, none of length `2n`.
    Fig1MiddleLike,
    /// `n` points, `colors >= 3` colors, every plane cycle rainbow.
    Fig1RightLike,
}

const KINDS: [(GenKind, &str); 12] = [
    (GenKind::Random, "random"),
    (GenKind::Bipartite, "bipartite"),
    (GenKind::ConvexAlternating, "convex_alternating"),
    (GenKind::Nested, "nested"),
    (GenKind::ZoneRing, "zone_ring"),
    (GenKind::ZonePairs, "zone_pairs"),
    (GenKind::InteriorK, "interior_k"),
    (GenKind::InteriorAlt, "interior_alt"),
    (GenKind::Polygon, "polygon"),
    (GenKind::Fig1LeftLike, "fig1_left_like"),
    (GenKind::Fig1MiddleLike, "fig1_middle_like"),
    (GenKind::Fig1RightLike, "fig1_right_like"),
];

impl GenKind {
    pub fn all() -> impl Iterator<Item = GenKind> {
        KINDS.iter().map(|&(k, _)| k)
    }

    pub fn name(self) -> &'static str {
        KINDS.iter().find(|&&(k, _)| k == self).map(|&(_, s)| s).unwrap_or("?")
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.replace('-', "_");
        KINDS
            .iter()
            .find(|&&(_, name)| name == key)
            .map(|&(k, _)| k)
            .ok_or_else(|| GenError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unknown instance kind '{0}'")]
    UnknownKind(String),
    #[error("{kind}: {reason}")]
    Unsatisfiable { kind: GenKind, reason: String },
    #[error("{kind}: no valid instance after {attempts} attempts")]
    BudgetExhausted { kind: GenKind, attempts: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    /// Points per color for two-colored kinds, ring size for zone kinds,
    /// total points for `random` and `fig1_right_like`, vertices for `polygon`.
    pub n: usize,
    pub colors: usize,
    /// Off-hull point count for `interior_k`.
    pub interior: usize,
    pub seed: u64,
    /// Half-width of the sampling square for the random kinds.
    pub range: i64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenSpec { kind, n, colors: 2, interior: 2, seed, range: 1000 }
    }

    pub fn colors(mut self, c: usize) -> Self {
        self.colors = c;
        self
    }

    pub fn interior(mut self, k: usize) -> Self {
        self.interior = k;
        self
    }

    pub fn range(mut self, r: i64) -> Self {
        self.range = r;
        self
    }
}

const ATTEMPTS: usize = 10_000;
const RING_RADIUS: f64 = 1_000_000.0;

pub fn generate(spec: &GenSpec) -> Result<ColoredPointSet, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let kind = spec.kind;
    let unsat = |reason: &str| GenError::Unsatisfiable { kind, reason: reason.to_string() };
    let n = spec.n;
    match kind {
        GenKind::Random => {
            if spec.colors < 2 || n < spec.colors {
                return Err(unsat("need at least two colors and one point per color"));
            }
            let colors = random_colors(&mut rng, n, spec.colors);
            retry(kind, || finish(sample_points(&mut rng, n, spec.range)?, colors.clone()))
        }
        GenKind::Bipartite => {
            if n < 1 {
                return Err(unsat("need n >= 1"));
            }
            retry(kind, || finish(sample_points(&mut rng, 2 * n, spec.range)?, balanced(n)))
        }
        GenKind::ConvexAlternating => {
            if n < 2 {
                return Err(unsat("need n >= 2"));
            }
            retry(kind, || {
                let pts = convex_ring(&mut rng, 2 * n, RING_RADIUS)?;
                finish(pts, balanced(n))
            })
        }
        GenKind::Nested => {
            if n < 3 {
                return Err(unsat("need n >= 3"));
            }
            retry(kind, || {
                let ring = convex_ring(&mut rng, n, RING_RADIUS)?;
                let inner = sample_inside(&mut rng, &ring, n)?;
                let mut colors = vec![1; n];
                colors.extend(vec![0; n]);
                let ps = finish(ring.into_iter().chain(inner).collect(), colors)?;
                validate_nested(&ps, &(0..n).collect::<Vec<_>>()).ok()?;
                Some(ps)
            })
        }
        GenKind::ZoneRing | GenKind::ZonePairs => {
            if n < 4 || (kind == GenKind::ZonePairs && n % 2 == 1) {
                return Err(unsat(if kind == GenKind::ZoneRing { "need n >= 4" } else { "need even n >= 4" }));
            }
            retry(kind, || zone_instance(&mut rng, n, kind == GenKind::ZonePairs))
        }
        GenKind::InteriorK | GenKind::InteriorAlt => {
            let k = spec.interior;
            if 2 * n < k + 3 {
                return Err(unsat("need at least three hull points"));
            }
            let m = 2 * n - k;
            if kind == GenKind::InteriorAlt && m.div_ceil(2) > n {
                return Err(unsat("alternating hull needs more points of one color than exist"));
            }
            retry(kind, || {
                let hull = convex_ring(&mut rng, m, RING_RADIUS)?;
                let inner = sample_inside(&mut rng, &hull, k)?;
                let colors = if kind == GenKind::InteriorK {
                    let mut c = balanced(n);
                    c.shuffle(&mut rng);
                    c
                } else {
                    let mut c: Vec<Color> = (0..m).map(|i| (i % 2) as Color).collect();
                    let mut rest: Vec<Color> = (0..2).flat_map(|x| vec![x; n - c.iter().filter(|&&y| y == x).count()]).collect();
                    rest.shuffle(&mut rng);
                    c.extend(rest);
                    c
                };
                let ps = finish(hull.into_iter().chain(inner).collect(), colors)?;
                (convex_hull(ps.points()).len() == 2 * n - k).then_some(ps)
            })
        }
        GenKind::Polygon => {
            let c = spec.colors;
            if n < 3 || c < 2 || (c == 2 && n % 2 == 1) {
                return Err(unsat("need n >= 3 and a proper coloring of the n-cycle"));
            }
            retry(kind, || {
                let pts = random_simple_polygon(&mut rng, n, spec.range)?;
                let colors = cycle_coloring(&mut rng, n, c)?;
                finish(pts, colors)
            })
        }
        GenKind::Fig1LeftLike => {
            if n < 2 {
                return Err(unsat("need n >= 2"));
            }
            retry(kind, || {
                let ps = separated_clusters(&mut rng, &[n; 2])?;
                find_configuration(&ps).is_none().then_some(ps)
            })
        }
        GenKind::Fig1MiddleLike => {
            if !(3..=MAX_ORACLE_POINTS / 2).contains(&n) {
                return Err(unsat("need 3 <= n <= 6 so every length can be certified"));
            }
            retry(kind, || {
                let ps = finish(sample_points(&mut rng, 2 * n, spec.range)?, balanced(n))?;
                middle_spectrum(&ps).then_some(ps)
            })
        }
        GenKind::Fig1RightLike => {
            let c = spec.colors;
            if c < 3 || n < c + 1 {
                return Err(unsat("need at least three colors and a repeated color"));
            }
            let mut sizes = vec![1; c];
            for i in 0..(n - c) {
                sizes[i % c] += 1;
            }
            retry(kind, || {
                let ps = separated_clusters(&mut rng, &sizes)?;
                find_configuration(&ps).is_none().then_some(ps)
            })
        }
    }
}

fn retry<F>(kind: GenKind, mut attempt: F) -> Result<ColoredPointSet, GenError>
where
    F: FnMut() -> Option<ColoredPointSet>,
{
    (0..ATTEMPTS).find_map(|_| attempt()).ok_or(GenError::BudgetExhausted { kind, attempts: ATTEMPTS })
}

fn finish(points: Vec<Point>, colors: Vec<Color>) -> Option<ColoredPointSet> {
    ColoredPointSet::new(points, colors).ok()
}

fn balanced(n: usize) -> Vec<Color> {
    (0..2 * n).map(|i| (i % 2) as Color).collect()
}

fn random_colors(rng: &mut ChaCha8Rng, n: usize, c: usize) -> Vec<Color> {
    let mut colors: Vec<Color> = (0..c as Color).collect();
    colors.extend((c..n).map(|_| rng.gen_range(0..c as Color)));
    colors.shuffle(rng);
    colors
}

/// `n` distinct points in `[-range, range]^2` in general position, drawn one at a time.
fn sample_points(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Option<Vec<Point>> {
    let mut pts = Vec::with_capacity(n);
    let mut tries = 0;
    while pts.len() < n {
        tries += 1;
        if tries > 50 * n + 100 {
            return None;
        }
        let p = Point::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range)).ok()?;
        pts.push(p);
        if validate_general_position(&pts).is_err() {
            pts.pop();
        }
    }
    Some(pts)
}

fn round_point(x: f64, y: f64) -> Option<Point> {
    Point::new(x.round() as i64, y.round() as i64).ok()
}

/// `n` points on a circle at sorted random angles, in convex position, counterclockwise.
fn convex_ring(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Option<Vec<Point>> {
    let mut angles: Vec<f64> = (0..n).map(|i| (i as f64 + rng.gen_range(0.1..0.9)) * TAU / n as f64).collect();
    angles.sort_by(f64::total_cmp);
    let pts: Vec<Point> = angles.iter().map(|a| round_point(radius * a.cos(), radius * a.sin())).collect::<Option<_>>()?;
    (convex_hull(&pts).len() == n && validate_general_position(&pts).is_ok()).then_some(pts)
}

/// `k` points strictly inside the convex polygon `poly`, general position with it.
fn sample_inside(rng: &mut ChaCha8Rng, poly: &[Point], k: usize) -> Option<Vec<Point>> {
    let (lo_x, hi_x) = (poly.iter().map(Point::x).min()?, poly.iter().map(Point::x).max()?);
    let (lo_y, hi_y) = (poly.iter().map(Point::y).min()?, poly.iter().map(Point::y).max()?);
    let mut all = poly.to_vec();
    let mut tries = 0;
    while all.len() < poly.len() + k {
        tries += 1;
        if tries > 200 * k + 100 {
            return None;
        }
        let p = Point::new(rng.gen_range(lo_x..=hi_x), rng.gen_range(lo_y..=hi_y)).ok()?;
        if !strictly_inside_convex(poly, p) {
            continue;
        }
        all.push(p);
        if validate_general_position(&all).is_err() {
            all.pop();
        }
    }
    Some(all.split_off(poly.len()))
}

/// Ring of color 1 with color-0 points placed between each ring edge and
/// the crossing of the two diagonals leaving its endpoints.
fn zone_instance(rng: &mut ChaCha8Rng, k: usize, paired: bool) -> Option<ColoredPointSet> {
    let ring = convex_ring(rng, k, RING_RADIUS)?;
    let f = |p: Point| (p.x() as f64, p.y() as f64);
    let mut inner = Vec::with_capacity(k);
    for i in 0..k {
        // Zone next to the edge ring[i-1] ring[i], bounded by ring[i-2] ring[i] and ring[i-1] ring[i+1].
        let (a, b) = (f(ring[(i + k - 1) % k]), f(ring[i]));
        let (pa, nb) = (f(ring[(i + k - 2) % k]), f(ring[(i + 1) % k]));
        let apex = line_intersection(pa, b, a, nb)?;
        let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
        let toward = |s: f64, along: f64| {
            round_point(
                mid.0 + s * (apex.0 - mid.0) + along * (b.0 - a.0),
                mid.1 + s * (apex.1 - mid.1) + along * (b.1 - a.1),
            )
        };
        if !paired {
            inner.push(toward(rng.gen_range(0.2..0.6), rng.gen_range(-0.05..0.05))?);
        } else if i % 2 == 1 {
            let s = rng.gen_range(0.25..0.45);
            inner.push(toward(s, rng.gen_range(0.08..0.15))?);
            inner.push(toward(s + rng.gen_range(-0.05..0.05), -rng.gen_range(0.08..0.15))?);
        }
    }
    let mut colors = vec![1; k];
    colors.extend(vec![0; inner.len()]);
    let ps = finish(ring.into_iter().chain(inner).collect(), colors)?;
    let d = validate_nested(&ps, &(0..k).collect::<Vec<_>>()).ok()?;
    let want = |i: usize| if !paired { 1 } else if i % 2 == 1 { 2 } else { 0 };
    (0..k).all(|i| d.zones[i].len() == want(i)).then_some(ps)
}

fn line_intersection(p1: (f64, f64), p2: (f64, f64), q1: (f64, f64), q2: (f64, f64)) -> Option<(f64, f64)> {
    let (dx1, dy1) = (p2.0 - p1.0, p2.1 - p1.1);
    let (dx2, dy2) = (q2.0 - q1.0, q2.1 - q1.1);
    let den = dx1 * dy2 - dy1 * dx2;
    if den.abs() < 1e-9 {
        return None;
    }
    let s = ((q1.0 - p1.0) * dy2 - (q1.1 - p1.1) * dx2) / den;
    Some((p1.0 + s * dx1, p1.1 + s * dy1))
}

/// Random simple polygon: random points, then 2-opt moves until no two edges cross.
pub fn random_simple_polygon(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Option<Vec<Point>> {
    let mut pts = sample_points(rng, n, range)?;
    pts.shuffle(rng);
    for _ in 0..(n * n * n + 100) {
        let mut changed = false;
        'scan: for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_cross(pts[i], pts[i + 1], pts[j], pts[(j + 1) % n]) {
                    pts[i + 1..=j].reverse();
                    changed = true;
                    break 'scan;
                }
            }
        }
        if !changed {
            return Some(pts);
        }
    }
    None
}

/// Colors for the cycle `0, 1, ..., n-1` with neighbours differing and some color repeated.
fn cycle_coloring(rng: &mut ChaCha8Rng, n: usize, c: usize) -> Option<Vec<Color>> {
    let mut colors = Vec::with_capacity(n);
    for i in 0..n {
        let prev = if i == 0 { None } else { Some(colors[i - 1]) };
        let avoid_first = if i == n - 1 { Some(colors[0]) } else { None };
        let options: Vec<Color> =
            (0..c as Color).filter(|&x| Some(x) != prev && Some(x) != avoid_first).collect();
        colors.push(*options.choose(rng)?);
    }
    let mut used = vec![0usize; c];
    for &x in &colors {
        used[x as usize] += 1;
    }
    (used.iter().all(|&u| u > 0) && used.iter().any(|&u| u > 1)).then_some(colors)
}

/// One small cluster per color, clusters far apart on a circle.
fn separated_clusters(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Option<ColoredPointSet> {
    let c = sizes.len();
    let spread = 1000i64;
    let dist = 200_000.0;
    let mut pts = Vec::new();
    let mut colors = Vec::new();
    let phase = rng.gen_range(0.0..TAU);
    for (color, &size) in sizes.iter().enumerate() {
        let a = phase + TAU * color as f64 / c as f64;
        let (cx, cy) = ((dist * a.cos()) as i64, (dist * a.sin()) as i64);
        for p in sample_points(rng, size, spread)? {
            pts.push(p.translate(cx, cy).ok()?);
            colors.push(color as Color);
        }
    }
    finish(pts, colors)
}

/// Plane cycles of every even length `4 ..= 2n - 2` and no plane Hamiltonian cycle.
fn middle_spectrum(ps: &ColoredPointSet) -> bool {
    let n = ps.len() / 2;
    if decide_hamiltonian(ps, false).map_or(true, |r| r.hamiltonian) {
        return false;
    }
    (2..n).all(|t| matches!(find_plane_cycle(ps, 2 * t, 2 * t, |_| true), Ok(Some(_))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_hamiltonian, enumerate_plane_cycles};

    #[test]
    fn deterministic() {
        for kind in GenKind::all() {
            let n = match kind {
                GenKind::Random | GenKind::Polygon => 8,
                GenKind::Fig1RightLike => 5,
                GenKind::Fig1MiddleLike => 4,
                _ => 4,
            };
            let colors = if kind == GenKind::Fig1RightLike { 3 } else { 2 };
            let spec = GenSpec::new(kind, n, 42).colors(colors);
            let a = generate(&spec).unwrap_or_else(|e| panic!("{kind}: {e}"));
            let b = generate(&spec).unwrap();
            assert_eq!(a.to_text(), b.to_text(), "{kind}");
        }
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in GenKind::all() {
            assert_eq!(kind.name().parse::<GenKind>().unwrap(), kind);
        }
        assert!("fig1-left-like".parse::<GenKind>().is_ok());
        assert!("nope".parse::<GenKind>().is_err());
    }

    #[test]
    fn convex_alternating_hexagon() {
        let ps = generate(&GenSpec::new(GenKind::ConvexAlternating, 3, 1)).unwrap();
        let hull = convex_hull(ps.points());
        assert_eq!(hull.len(), 6);
        for i in 0..6 {
            assert_ne!(ps.color(hull[i]), ps.color(hull[(i + 1) % 6]));
        }
    }

    #[test]
    fn nested_seed_one_validates() {
        let ps = generate(&GenSpec::new(GenKind::Nested, 4, 1)).unwrap();
        let blues: Vec<usize> = (0..ps.len()).filter(|&i| ps.color(i) == 1).collect();
        assert!(validate_nested(&ps, &blues).is_ok());
    }

    #[test]
    fn zone_families() {
        for seed in 0..5 {
            let ring = generate(&GenSpec::new(GenKind::ZoneRing, 8, seed)).unwrap();
            let d = validate_nested(&ring, &(0..8).collect::<Vec<_>>()).unwrap();
            assert!(d.zones.iter().all(|z| z.len() == 1));
            let pairs = generate(&GenSpec::new(GenKind::ZonePairs, 6, seed)).unwrap();
            let d = validate_nested(&pairs, &(0..6).collect::<Vec<_>>()).unwrap();
            assert!(d.triangles.iter().all(|t| t.len() == 2));
        }
        assert!(generate(&GenSpec::new(GenKind::ZonePairs, 5, 0)).is_err());
    }

    #[test]
    fn alternating_hull() {
        for k in 2..=4 {
            let ps = generate(&GenSpec::new(GenKind::InteriorAlt, 6, 3).interior(k)).unwrap();
            let hull = convex_hull(ps.points());
            assert_eq!(hull.len(), 12 - k);
            let mono = (0..hull.len()).filter(|&i| ps.color(hull[i]) == ps.color(hull[(i + 1) % hull.len()])).count();
            assert_eq!(mono, k % 2);
            assert_eq!(ps.class_sizes(), vec![6, 6]);
        }
    }

    #[test]
    fn interior_count() {
        for k in 0..=4 {
            let ps = generate(&GenSpec::new(GenKind::InteriorK, 6, 3).interior(k)).unwrap();
            assert_eq!(convex_hull(ps.points()).len(), 12 - k);
            assert_eq!(ps.class_sizes(), vec![6, 6]);
        }
    }

    #[test]
    fn polygon_is_simple_and_properly_colored() {
        for seed in 0..20 {
            let ps = generate(&GenSpec::new(GenKind::Polygon, 9, seed).colors(3)).unwrap();
            let order: Vec<usize> = (0..9).collect();
            assert!(crate::model::validate_cycle(&ps, &order).is_ok());
        }
    }

    #[test]
    fn fig1_left_has_no_plane_cycle() {
        let ps = generate(&GenSpec::new(GenKind::Fig1LeftLike, 5, 9)).unwrap();
        assert_eq!(enumerate_plane_cycles(&ps, ps.len()).unwrap().total(), 0);
    }

    #[test]
    fn fig1_middle_spectrum() {
        let ps = generate(&GenSpec::new(GenKind::Fig1MiddleLike, 5, 9)).unwrap();
        let inv = enumerate_plane_cycles(&ps, ps.len()).unwrap();
        for len in [4, 6, 8] {
            assert!(inv.count(len) > 0, "length {len}");
        }
        assert_eq!(inv.count(10), 0);
        assert!(brute_hamiltonian(&ps).unwrap().is_none());
    }

    #[test]
    fn fig1_right_only_rainbow() {
        let ps = generate(&GenSpec::new(GenKind::Fig1RightLike, 7, 9).colors(3)).unwrap();
        let inv = enumerate_plane_cycles(&ps, ps.len()).unwrap();
        assert!(inv.total() > 0);
        assert_eq!(inv.non_rainbow, 0);
    }
}
