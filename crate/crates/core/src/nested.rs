//! Plane cycles of every even length when a convex ring of one color
//! encloses all points of the other color.
//!
//! The enclosing points `b_1 .. b_k` (counterclockwise) define boundary
//! triangles `t_i = open(b_{i-1}, b_i, b_{i+1})` and edge zones
//! `z_i = t_i ∩ t_{i-1}`, the part of the ring next to the edge `b_{i-1} b_i`.

use thiserror::Error;

use crate::fpt::plane_hamiltonian_search;
use crate::geom::{convex_hull, in_open_triangle, left_of, strictly_inside_convex, Point};
use crate::model::{validate_cycle, Color, ColoredPointSet, PlaneCycle};
use crate::rainbow::{find_configuration, witness_cycle, ConfigKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NestedError {
    #[error("expected exactly two colors, found {0}")]
    NotBipartite(usize),
    #[error("color classes differ in size: {0:?}")]
    Unbalanced(Vec<usize>),
    #[error("enclosing set must contain at least three points in convex position, got {0}")]
    TooFewEnclosing(usize),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("enclosing set mixes colors at point {0}")]
    MixedColors(usize),
    #[error("point {0} of the inner color is not strictly inside the ring")]
    InnerOutside(usize),
    #[error("point {0} of the ring color lies strictly inside the ring")]
    RingColorInside(usize),
    #[error("cycle half-length {t} outside 2..={n}")]
    LengthOutOfRange { t: usize, n: usize },
    #[error("every boundary triangle holds two or more inner points but the drawing is neither kind: {0}")]
    Dichotomy(String),
    #[error("no plane Hamiltonian cycle found on the {0} remaining points")]
    BaseCase(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Ring and inner points of a validated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedDecomposition {
    pub ring_color: Color,
    pub inner_color: Color,
    /// Enclosing points, counterclockwise.
    pub ring: Vec<usize>,
    pub inner: Vec<usize>,
    /// Points of the ring color outside the ring.
    pub outside: Vec<usize>,
    /// `triangles[i]`: inner points in `t_i`, around `ring[i]`.
    pub triangles: Vec<Vec<usize>>,
    /// `zones[i]`: inner points in `z_i`, next to the edge `ring[i-1] ring[i]`.
    pub zones: Vec<Vec<usize>>,
}

/// How the final cycle was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Finish {
    /// Length 4 straight from a `C1` configuration.
    FourCycle,
    /// Exhaustive search on the `2t` remaining points.
    BaseSearch,
    /// Empty and two-point zones alternate; full alternating cycle.
    PairedZones,
    /// Same drawing, one corner and one inner point skipped.
    PairedZonesShort,
    /// One inner point per zone; consecutive run of the full cycle.
    SingleZones,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// A ring-colored point outside the ring dropped with an inner point.
    Discard { outer: usize, inner: usize },
    /// A corner whose boundary triangle holds at most one inner point dropped with an inner point.
    Corner { corner: usize, inner: usize },
    /// Two consecutive corners dropped with the two inner points of their zone.
    Zone { corners: [usize; 2], inner: [usize; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedCycle {
    pub cycle: PlaneCycle,
    pub steps: Vec<Step>,
    pub finish: Finish,
}

fn triangles_and_zones(ps: &ColoredPointSet, ring: &[usize], inner: &[usize]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let k = ring.len();
    let p = |i: usize| ps.point(ring[i % k]);
    let triangles: Vec<Vec<usize>> = (0..k)
        .map(|i| inner.iter().copied().filter(|&r| in_open_triangle(ps.point(r), p(i + k - 1), p(i), p(i + 1))).collect())
        .collect();
    let zones = (0..k)
        .map(|i| triangles[i].iter().copied().filter(|r| triangles[(i + k - 1) % k].contains(r)).collect())
        .collect();
    (triangles, zones)
}

/// Checks that the convex hull of `enclosing` has every point of the other
/// color strictly inside and no point of its own color strictly inside.
pub fn validate_nested(ps: &ColoredPointSet, enclosing: &[usize]) -> Result<NestedDecomposition, NestedError> {
    if ps.color_count() != 2 {
        return Err(NestedError::NotBipartite(ps.color_count()));
    }
    let sizes = ps.class_sizes();
    if sizes[0] != sizes[1] {
        return Err(NestedError::Unbalanced(sizes));
    }
    if let Some(&i) = enclosing.iter().find(|&&i| i >= ps.len()) {
        return Err(NestedError::IndexOutOfRange(i));
    }
    let mut members = enclosing.to_vec();
    members.sort_unstable();
    members.dedup();
    let Some(&first) = members.first() else {
        return Err(NestedError::TooFewEnclosing(0));
    };
    let ring_color = ps.color(first);
    if let Some(&i) = members.iter().find(|&&i| ps.color(i) != ring_color) {
        return Err(NestedError::MixedColors(i));
    }
    let inner_color = 1 - ring_color;
    let pts: Vec<Point> = members.iter().map(|&i| ps.point(i)).collect();
    let ring: Vec<usize> = convex_hull(&pts).into_iter().map(|j| members[j]).collect();
    if ring.len() < 3 {
        return Err(NestedError::TooFewEnclosing(ring.len()));
    }
    let poly: Vec<Point> = ring.iter().map(|&i| ps.point(i)).collect();
    let inner: Vec<usize> = (0..ps.len()).filter(|&i| ps.color(i) == inner_color).collect();
    if let Some(&r) = inner.iter().find(|&&r| !strictly_inside_convex(&poly, ps.point(r))) {
        return Err(NestedError::InnerOutside(r));
    }
    let mut outside = Vec::new();
    for i in 0..ps.len() {
        if ps.color(i) == ring_color && !ring.contains(&i) {
            if strictly_inside_convex(&poly, ps.point(i)) {
                return Err(NestedError::RingColorInside(i));
            }
            outside.push(i);
        }
    }
    let (triangles, zones) = triangles_and_zones(ps, &ring, &inner);
    Ok(NestedDecomposition { ring_color, inner_color, ring, inner, outside, triangles, zones })
}

/// The hull of all points of color 1 as enclosing set, if it qualifies.
pub fn suggest_enclosing(ps: &ColoredPointSet) -> Result<NestedDecomposition, NestedError> {
    let blues: Vec<usize> = (0..ps.len()).filter(|&i| ps.color(i) == 1).collect();
    validate_nested(ps, &blues)
}

/// Working state of the reduction: ring counterclockwise, inner points ascending.
struct State {
    ring: Vec<usize>,
    inner: Vec<usize>,
}

enum Drawing {
    Paired,
    Single,
}

/// In the case where every boundary triangle holds two or more inner points,
/// confirms the counting facts and tells which of the two drawings this is.
fn classify(triangles: &[Vec<usize>], zones: &[Vec<usize>], inner: &[usize]) -> Result<Drawing, NestedError> {
    let k = triangles.len();
    if let Some(i) = (0..k).find(|&i| triangles[i].len() != 2) {
        return Err(NestedError::Dichotomy(format!("triangle {i} holds {} inner points", triangles[i].len())));
    }
    for &r in inner {
        let c = triangles.iter().filter(|t| t.contains(&r)).count();
        if c != 2 {
            return Err(NestedError::Dichotomy(format!("inner point {r} lies in {c} triangles")));
        }
    }
    if zones.iter().all(|z| z.len() == 1) {
        return Ok(Drawing::Single);
    }
    let alternating = k.is_multiple_of(2)
        && (0..k).all(|i| zones[i].len() + zones[(i + 1) % k].len() == 2 && (zones[i].is_empty() || zones[i].len() == 2));
    if alternating {
        return Ok(Drawing::Paired);
    }
    let counts: Vec<usize> = zones.iter().map(Vec::len).collect();
    Err(NestedError::Dichotomy(format!("zone counts {counts:?}")))
}

/// Inner pair of a two-point zone next to `ring[i-1] ring[i]`, ordered as
/// seen counterclockwise from `ring[i-1]`, starting towards `ring[i]`.
fn ordered_pair(ps: &ColoredPointSet, apex: usize, pair: &[usize]) -> [usize; 2] {
    let (a, b) = (pair[0], pair[1]);
    if left_of(ps.point(apex), ps.point(a), ps.point(b)) {
        [a, b]
    } else {
        [b, a]
    }
}

/// Alternating cycle through all ring and inner points of the paired drawing,
/// walking the ring clockwise from a corner that ends a nonempty zone.
fn paired_cycle(ps: &ColoredPointSet, ring: &[usize], zones: &[Vec<usize>]) -> Vec<usize> {
    let k = ring.len();
    let start = (0..k).find(|&i| zones[i].len() == 2).unwrap_or(0);
    let mut out = Vec::with_capacity(2 * k);
    let mut i = start;
    for _ in 0..k / 2 {
        let apex = ring[(i + k - 1) % k];
        let [p1, p2] = ordered_pair(ps, apex, &zones[i]);
        out.extend([ring[i], p1, apex, p2]);
        i = (i + k - 2) % k;
    }
    out
}

/// Cycle of the given half-length on the ring and inner points of `st`.
fn finish(ps: &ColoredPointSet, st: &State, t: usize, steps: &mut Vec<Step>) -> Result<(Vec<usize>, Finish), NestedError> {
    let mut st = State { ring: st.ring.clone(), inner: st.inner.clone() };
    loop {
        let k = st.ring.len();
        if k <= t {
            return base(ps, &st);
        }
        let (triangles, zones) = triangles_and_zones(ps, &st.ring, &st.inner);
        if let Some(i) = (0..k).find(|&i| triangles[i].len() <= 1) {
            let corner = st.ring.remove(i);
            let r = triangles[i].first().copied().unwrap_or(st.inner[0]);
            st.inner.retain(|&x| x != r);
            steps.push(Step::Corner { corner, inner: r });
            continue;
        }
        return match classify(&triangles, &zones, &st.inner)? {
            Drawing::Single => {
                let mut full = Vec::with_capacity(2 * k);
                for i in 0..k {
                    full.push(st.ring[i]);
                    full.push(zones[(i + 1) % k][0]);
                }
                Ok((full[..2 * t].to_vec(), Finish::SingleZones))
            }
            Drawing::Paired => paired(ps, st, zones, t, steps),
        };
    }
}

/// Drops nonempty zones with their two corners until `t` or `t + 1` corners remain.
fn paired(
    ps: &ColoredPointSet,
    mut st: State,
    mut zones: Vec<Vec<usize>>,
    t: usize,
    steps: &mut Vec<Step>,
) -> Result<(Vec<usize>, Finish), NestedError> {
    loop {
        let k = st.ring.len();
        if k == t {
            return Ok((paired_cycle(ps, &st.ring, &zones), Finish::PairedZones));
        }
        if k == t + 1 {
            return paired_short(ps, &st.ring, &zones);
        }
        let i = (0..k).find(|&i| zones[i].len() == 2).unwrap_or(0);
        let corners = [st.ring[(i + k - 1) % k], st.ring[i]];
        let inner = [zones[i][0], zones[i][1]];
        st.ring.retain(|x| !corners.contains(x));
        st.inner.retain(|x| !inner.contains(x));
        steps.push(Step::Zone { corners, inner });
        let (triangles, z) = triangles_and_zones(ps, &st.ring, &st.inner);
        if st.ring.len() >= 4 && !matches!(classify(&triangles, &z, &st.inner)?, Drawing::Paired) {
            return Err(NestedError::Dichotomy("pruned paired drawing changed kind".into()));
        }
        zones = z;
    }
}

/// The paired cycle with one apex and one of its zone points skipped.
fn paired_short(ps: &ColoredPointSet, ring: &[usize], zones: &[Vec<usize>]) -> Result<(Vec<usize>, Finish), NestedError> {
    let full = paired_cycle(ps, ring, zones);
    let len = full.len();
    // The walk is [b_i, p1, apex, p2, ...]; skip apex with either zone point.
    for skip in [[2, 1], [2, 3]] {
        let c: Vec<usize> = (0..len).filter(|j| !skip.contains(j)).map(|j| full[j]).collect();
        if validate_cycle(ps, &c).is_ok() {
            return Ok((c, Finish::PairedZonesShort));
        }
    }
    Err(NestedError::Internal("shortened paired cycle is not plane".into()))
}

fn base(ps: &ColoredPointSet, st: &State) -> Result<(Vec<usize>, Finish), NestedError> {
    let mut subset: Vec<usize> = st.ring.iter().chain(&st.inner).copied().collect();
    subset.sort_unstable();
    let sub = ps.restrict(&subset).map_err(|e| NestedError::Internal(e.to_string()))?;
    let c = plane_hamiltonian_search(&sub).ok_or(NestedError::BaseCase(subset.len()))?;
    Ok((c.vertices().iter().map(|&v| subset[v]).collect(), Finish::BaseSearch))
}

/// A plane cycle with `t` points of each color.
pub fn cycle_of_length(ps: &ColoredPointSet, enclosing: &[usize], t: usize) -> Result<NestedCycle, NestedError> {
    let dec = validate_nested(ps, enclosing)?;
    let n = dec.inner.len();
    if t < 2 || t > n {
        return Err(NestedError::LengthOutOfRange { t, n });
    }
    let mut steps = Vec::new();
    if t == 2 {
        let w = find_configuration(ps)
            .filter(|w| w.kind == ConfigKind::C1)
            .ok_or_else(|| NestedError::Internal("no C1 configuration in a nested instance".into()))?;
        let cycle = witness_cycle(ps, &w).map_err(|e| NestedError::Internal(e.to_string()))?;
        return Ok(NestedCycle { cycle, steps, finish: Finish::FourCycle });
    }
    let mut st = State { ring: dec.ring.clone(), inner: dec.inner.clone() };
    let mut outside = dec.outside.clone();
    outside.sort_unstable();
    let mut spare = outside.into_iter().peekable();
    let (cand, finish_kind) = loop {
        if st.inner.len() == t && spare.peek().is_some() {
            // Base case with the leftover outside points included.
            let rest: Vec<usize> = spare.collect();
            let mut subset: Vec<usize> = st.ring.iter().chain(&st.inner).chain(&rest).copied().collect();
            subset.sort_unstable();
            let sub = ps.restrict(&subset).map_err(|e| NestedError::Internal(e.to_string()))?;
            let c = plane_hamiltonian_search(&sub).ok_or(NestedError::BaseCase(subset.len()))?;
            break (c.vertices().iter().map(|&v| subset[v]).collect(), Finish::BaseSearch);
        }
        match spare.next() {
            Some(outer) => {
                let inner = st.inner.remove(0);
                steps.push(Step::Discard { outer, inner });
            }
            None => break finish(ps, &st, t, &mut steps)?,
        }
    };
    let cycle = validate_cycle(ps, &cand).map_err(|e| NestedError::Internal(format!("{finish_kind:?}: {e}")))?;
    if cycle.len() != 2 * t {
        return Err(NestedError::Internal(format!("{finish_kind:?} produced {} points", cycle.len())));
    }
    Ok(NestedCycle { cycle, steps, finish: finish_kind })
}
