//! Shortening non-rainbow plane cycles, principal points, ears and mouths.
//!
//! A vertex of a cycle is principal when the segment joining its two cycle
//! neighbours crosses no cycle edge. It is an ear when that segment runs
//! inside the cycle and a mouth when it runs outside.

mod triangulation;

pub use triangulation::{
    canonical_triangulation, flip_path, flips_to_canonical, triangulate_containing, Flip, Triangulation,
    TriangulationError,
};

use thiserror::Error;

use crate::geom::{segments_cross, winding_number_of_midpoint, Point};
use crate::model::{color_profile, validate_cycle, ColoredPointSet, CycleViolation, PlaneCycle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrincipalKind {
    Ear,
    Mouth,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalPoint {
    pub vertex: usize,
    /// Position of `vertex` in the cycle's vertex sequence.
    pub position: usize,
    pub prev: usize,
    pub next: usize,
    pub kind: PrincipalKind,
    /// Dropping `vertex` leaves a non-rainbow plane cycle of length at least 3.
    pub good: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonotonicityError {
    #[error("invalid cycle: {0}")]
    InvalidCycle(#[from] CycleViolation),
    #[error("cycle has length {0}; shortening needs at least 6")]
    TooShort(usize),
    #[error("cycle is rainbow")]
    Rainbow,
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("internal error: {0}")]
    Internal(String),
}

fn polygon(ps: &ColoredPointSet, c: &[usize]) -> Vec<Point> {
    c.iter().map(|&v| ps.point(v)).collect()
}

/// `true` iff the segment `uv` crosses an edge of the cycle `c`.
fn crosses_cycle(ps: &ColoredPointSet, c: &[usize], u: usize, v: usize) -> bool {
    let t = c.len();
    let (pu, pv) = (ps.point(u), ps.point(v));
    (0..t).any(|i| {
        let (a, b) = (c[i], c[(i + 1) % t]);
        segments_cross(pu, pv, ps.point(a), ps.point(b))
    })
}

fn without_position(c: &[usize], pos: usize) -> Vec<usize> {
    c.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &v)| v).collect()
}

/// All principal points of `c`, in cycle order.
///
/// For a triangle every vertex is an ear (its neighbour segment is a cycle
/// edge) and none is good.
pub fn principal_points(ps: &ColoredPointSet, c: &PlaneCycle) -> Vec<PrincipalPoint> {
    let v = c.vertices();
    let t = v.len();
    let poly = polygon(ps, v);
    let mut out = Vec::new();
    for i in 0..t {
        let (prev, next) = (v[(i + t - 1) % t], v[(i + 1) % t]);
        if t == 3 {
            out.push(PrincipalPoint { vertex: v[i], position: i, prev, next, kind: PrincipalKind::Ear, good: false });
            continue;
        }
        if crosses_cycle(ps, v, prev, next) {
            continue;
        }
        let kind = if winding_number_of_midpoint(ps.point(prev), ps.point(next), &poly) != 0 {
            PrincipalKind::Ear
        } else {
            PrincipalKind::Mouth
        };
        let good = t >= 4 && ps.is_host_edge(prev, next) && !color_profile(ps, &without_position(v, i)).rainbow;
        out.push(PrincipalPoint { vertex: v[i], position: i, prev, next, kind, good });
    }
    out
}

/// `true` iff `c` has exactly three principal points and they are
/// consecutive along the cycle.
pub fn check_three_principal_path(ps: &ColoredPointSet, c: &PlaneCycle) -> bool {
    let pp = principal_points(ps, c);
    if pp.len() != 3 {
        return false;
    }
    let t = c.len();
    let pos: Vec<usize> = pp.iter().map(|p| p.position).collect();
    // Some principal point has the other two as its neighbours.
    pos.iter().any(|&m| {
        let (l, r) = ((m + t - 1) % t, (m + 1) % t);
        pos.contains(&l) && pos.contains(&r)
    })
}

/// Which step of the shortening produced the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShortenStep {
    /// A good principal point was skipped.
    PrincipalPoint { vertex: usize },
    /// A noncrossing chord in the host graph closed the longer side.
    Chord { u: usize, v: usize, interior: bool },
    /// The first flip removing a cycle edge `removed` inserted `inserted`;
    /// the cycle path through `removed` was replaced by `inserted`.
    Flip { removed: (usize, usize), inserted: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortened {
    pub cycle: PlaneCycle,
    pub step: ShortenStep,
}

fn finish(ps: &ColoredPointSet, candidate: Vec<usize>, step: ShortenStep, t: usize) -> Result<Shortened, MonotonicityError> {
    let cycle = validate_cycle(ps, &candidate)
        .map_err(|e| MonotonicityError::Internal(format!("{step:?} produced an invalid cycle: {e}")))?;
    if cycle.is_rainbow(ps) {
        return Err(MonotonicityError::Internal(format!("{step:?} produced a rainbow cycle")));
    }
    let len = cycle.len();
    if len >= t || len < t.div_ceil(2) + 1 {
        return Err(MonotonicityError::Internal(format!("{step:?} produced length {len} from {t}")));
    }
    Ok(Shortened { cycle, step })
}

/// A shorter non-rainbow plane cycle on a subset of the vertices of `c`,
/// of length between `ceil(t/2) + 1` and `t - 1`.
///
/// Tries, in order: skipping the first good principal point; closing the
/// longer side of a noncrossing host-graph chord (interior chords first, then
/// lexicographic); and otherwise replaying the flips from a triangulation
/// containing `c` towards one containing a host edge outside `c`, stopping at
/// the first flip that removes a cycle edge. Points of `ps` not on `c` are
/// ignored.
pub fn shorten_cycle(ps: &ColoredPointSet, c: &PlaneCycle) -> Result<Shortened, MonotonicityError> {
    let c = validate_cycle(ps, c.vertices())?;
    let v = c.vertices();
    let t = v.len();
    if t < 6 {
        return Err(MonotonicityError::TooShort(t));
    }
    if c.is_rainbow(ps) {
        return Err(MonotonicityError::Rainbow);
    }

    if let Some(p) = principal_points(ps, &c).into_iter().find(|p| p.good) {
        return finish(ps, without_position(v, p.position), ShortenStep::PrincipalPoint { vertex: p.vertex }, t);
    }

    if let Some((i, j, interior)) = best_chord(ps, v) {
        // Sides of the chord v[i] v[j], i < j: positions i..=j and j..=i+t.
        let inner: Vec<usize> = v[i..=j].to_vec();
        let outer: Vec<usize> = v[j..].iter().chain(&v[..=i]).copied().collect();
        let longer = if inner.len() >= outer.len() { inner } else { outer };
        return finish(ps, longer, ShortenStep::Chord { u: v[i].min(v[j]), v: v[i].max(v[j]), interior }, t);
    }

    shorten_by_flip(ps, v)
}

/// Noncrossing chords of the cycle that are host edges, best first: interior
/// before exterior, then by endpoint indices. Returns cycle positions `i < j`.
fn best_chord(ps: &ColoredPointSet, v: &[usize]) -> Option<(usize, usize, bool)> {
    let t = v.len();
    let poly = polygon(ps, v);
    let mut best: Option<(bool, (usize, usize), usize, usize)> = None;
    for i in 0..t {
        for j in (i + 2)..t {
            if i == 0 && j == t - 1 {
                continue;
            }
            let (a, b) = (v[i], v[j]);
            if !ps.is_host_edge(a, b) || crosses_cycle(ps, v, a, b) {
                continue;
            }
            let interior = winding_number_of_midpoint(ps.point(a), ps.point(b), &poly) != 0;
            let key = (!interior, (a.min(b), a.max(b)), i, j);
            if best.as_ref().is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                best = Some(key);
            }
        }
    }
    best.map(|(ext, _, i, j)| (i, j, !ext))
}

fn shorten_by_flip(ps: &ColoredPointSet, v: &[usize]) -> Result<Shortened, MonotonicityError> {
    let t = v.len();
    // Local indices follow ascending global index, so tie-breaks agree with global order.
    let mut globals: Vec<usize> = v.to_vec();
    globals.sort_unstable();
    let local = |g: usize| globals.binary_search(&g).unwrap();
    let points: Vec<Point> = globals.iter().map(|&g| ps.point(g)).collect();

    let is_cycle_edge = |a: usize, b: usize| {
        (0..t).any(|i| {
            let (x, y) = (v[i], v[(i + 1) % t]);
            (x, y) == (a, b) || (y, x) == (a, b)
        })
    };
    let e = globals
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| globals[i + 1..].iter().map(move |&b| (a, b)))
        .find(|&(a, b)| ps.is_host_edge(a, b) && !is_cycle_edge(a, b))
        .ok_or_else(|| MonotonicityError::Internal("every host edge is a cycle edge".into()))?;

    let cycle_edges: Vec<(usize, usize)> = (0..t).map(|i| (local(v[i]), local(v[(i + 1) % t]))).collect();
    let from = triangulate_containing(&points, &cycle_edges)?;
    let to = triangulate_containing(&points, &[(local(e.0), local(e.1))])?;
    let path = flip_path(&from, &to)?;

    let mut cur = from;
    for f in path {
        let (a, b) = (globals[f.removed.0], globals[f.removed.1]);
        if !is_cycle_edge(a, b) {
            cur.apply(&f)?;
            continue;
        }
        let (c, d) = (globals[f.inserted.0], globals[f.inserted.1]);
        let one_of = |x: usize| is_cycle_edge(a, x) as u8 + is_cycle_edge(b, x) as u8;
        if one_of(c) != 1 || one_of(d) != 1 || ps.color(c) == ps.color(d) {
            return Err(MonotonicityError::Internal(format!(
                "stopping flip {a}-{b} -> {c}-{d} does not match the cycle structure"
            )));
        }
        // The cycle runs c, a, b, d (or d, a, b, c); drop a and b.
        let rest: Vec<usize> = v.iter().copied().filter(|&x| x != a && x != b).collect();
        return finish(ps, rest, ShortenStep::Flip { removed: (a, b), inserted: (c.min(d), c.max(d)) }, t);
    }
    Err(MonotonicityError::Internal("no flip removed a cycle edge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(t: &[(i64, i64, u32)]) -> ColoredPointSet {
        ColoredPointSet::from_triples(t).unwrap()
    }

    fn hexagon(colors: [u32; 6]) -> ColoredPointSet {
        let c = [(2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2)];
        set(&c.iter().zip(colors).map(|(&(x, y), k)| (x, y, k)).collect::<Vec<_>>())
    }

    fn cycle(ps: &ColoredPointSet, v: &[usize]) -> PlaneCycle {
        validate_cycle(ps, v).unwrap()
    }

    #[test]
    fn convex_alternating_hexagon_all_bad_ears() {
        let ps = hexagon([0, 1, 0, 1, 0, 1]);
        let pp = principal_points(&ps, &cycle(&ps, &[0, 1, 2, 3, 4, 5]));
        assert_eq!(pp.len(), 6);
        assert!(pp.iter().all(|p| p.kind == PrincipalKind::Ear && !p.good));
    }

    #[test]
    fn triangle_all_ears_none_good() {
        let ps = set(&[(0, 0, 0), (4, 0, 1), (1, 3, 2)]);
        let pp = principal_points(&ps, &cycle(&ps, &[0, 1, 2]));
        assert_eq!(pp.len(), 3);
        assert!(pp.iter().all(|p| p.kind == PrincipalKind::Ear && !p.good));
        assert!(check_three_principal_path(&ps, &cycle(&ps, &[0, 1, 2])));
    }

    #[test]
    fn dart_classification_matches_direct_tests() {
        let ps = set(&[(0, 0, 0), (4, 0, 1), (2, 1, 1), (2, 4, 0)]);
        let c = cycle(&ps, &[0, 1, 3, 2]);
        let pp = principal_points(&ps, &c);
        // Direct: for each vertex test its neighbour segment against all four edges.
        let v = c.vertices();
        let edges: Vec<_> = c.edges().collect();
        let principal: Vec<usize> = (0..4)
            .filter(|&i| {
                let (a, b) = (v[(i + 3) % 4], v[(i + 1) % 4]);
                edges.iter().all(|&(x, y)| !segments_cross(ps.point(a), ps.point(b), ps.point(x), ps.point(y)))
            })
            .map(|i| v[i])
            .collect();
        assert_eq!(pp.iter().map(|p| p.vertex).collect::<Vec<_>>(), principal);
        // Opposite corners share a neighbour segment: 2-1 runs inside, 0-3 runs
        // along the notch cut out at the reflex corner (2,1).
        let kind = |x: usize| pp.iter().find(|p| p.vertex == x).map(|p| p.kind);
        assert_eq!(kind(0), Some(PrincipalKind::Ear));
        assert_eq!(kind(3), Some(PrincipalKind::Ear));
        assert_eq!(kind(1), Some(PrincipalKind::Mouth));
        assert_eq!(kind(2), Some(PrincipalKind::Mouth));
    }

    #[test]
    fn alternating_hexagon_shortens_by_interior_chord() {
        let ps = hexagon([0, 1, 0, 1, 0, 1]);
        let s = shorten_cycle(&ps, &cycle(&ps, &[0, 1, 2, 3, 4, 5])).unwrap();
        assert_eq!(s.cycle.len(), 4);
        assert_eq!(s.step, ShortenStep::Chord { u: 0, v: 3, interior: true });
        assert_eq!(s.cycle.vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn three_colored_hexagon_uses_good_principal_point() {
        let ps = hexagon([0, 1, 2, 0, 1, 2]);
        let s = shorten_cycle(&ps, &cycle(&ps, &[0, 1, 2, 3, 4, 5])).unwrap();
        assert_eq!(s.cycle.len(), 5);
        assert!(matches!(s.step, ShortenStep::PrincipalPoint { .. }));
        assert!(!s.cycle.is_rainbow(&ps));
    }

    #[test]
    fn short_input_rejected() {
        let ps = set(&[(0, 0, 0), (1, 0, 1), (1, 1, 0), (0, 1, 1)]);
        assert_eq!(shorten_cycle(&ps, &cycle(&ps, &[0, 1, 2, 3])), Err(MonotonicityError::TooShort(4)));
    }

    #[test]
    fn reflex_pentagon_is_a_three_principal_path() {
        // Found by random search: only 2, 3, 4 are principal, with the mouth 3 in the middle.
        let ps = set(&[(5, 19, 0), (2, 7, 1), (15, 0, 0), (5, 16, 1), (10, 16, 2)]);
        let c = cycle(&ps, &[0, 1, 2, 3, 4]);
        let pp = principal_points(&ps, &c);
        let kinds: Vec<_> = pp.iter().map(|p| (p.vertex, p.kind)).collect();
        assert_eq!(
            kinds,
            vec![(2, PrincipalKind::Ear), (3, PrincipalKind::Mouth), (4, PrincipalKind::Ear)]
        );
        assert!(check_three_principal_path(&ps, &c));
    }

    #[test]
    fn convex_hexagon_is_not_a_three_principal_path() {
        let ps = hexagon([0, 1, 0, 1, 0, 1]);
        assert!(!check_three_principal_path(&ps, &cycle(&ps, &[0, 1, 2, 3, 4, 5])));
    }
}
