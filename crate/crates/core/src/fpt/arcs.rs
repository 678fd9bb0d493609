use crate::geom::{convex_hull, strictly_separated};
use crate::model::ColoredPointSet;

use super::FptError;

/// A boundary vertex that starts a critical arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriticalVertex {
    /// Position along the boundary.
    pub position: usize,
    /// Same color as its predecessor.
    pub first_kind: bool,
    /// Strictly separated from its predecessor by a line through two interior points.
    pub second_kind: bool,
}

/// A run of boundary positions `start, start + 1, ...` (mod `m`) of length `len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub start: usize,
    pub len: usize,
}

/// Boundary, interior and critical arcs of a bicolored instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcDecomposition {
    /// Hull vertices (global indices) counterclockwise.
    pub boundary: Vec<usize>,
    /// Interior vertices (global indices), ascending.
    pub interior: Vec<usize>,
    /// Critical vertices by boundary position; `critical[i]` starts `arcs[i]`.
    pub critical: Vec<CriticalVertex>,
    pub arcs: Vec<Arc>,
    arc_of: Vec<usize>,
    first_kind_prefix: Vec<usize>,
}

impl ArcDecomposition {
    pub fn m(&self) -> usize {
        self.boundary.len()
    }

    pub fn k(&self) -> usize {
        self.interior.len()
    }

    /// Arc containing the boundary position `pos`.
    pub fn arc_of(&self, pos: usize) -> usize {
        self.arc_of[pos]
    }

    /// Global index of the `offset`-th vertex of arc `a`.
    pub fn vertex_in_arc(&self, a: usize, offset: usize) -> usize {
        self.boundary[(self.arcs[a].start + offset) % self.m()]
    }

    pub fn first_of(&self, a: usize) -> usize {
        self.vertex_in_arc(a, 0)
    }

    pub fn last_of(&self, a: usize) -> usize {
        self.vertex_in_arc(a, self.arcs[a].len - 1)
    }

    pub fn first_kind_count(&self) -> usize {
        self.critical.iter().filter(|c| c.first_kind).count()
    }

    /// `true` iff arc `a` starts with a critical vertex of the first kind.
    pub fn starts_first_kind(&self, a: usize) -> bool {
        self.critical.get(a).is_some_and(|c| c.first_kind)
    }

    /// `true` iff one of the `d` arcs after `a` (cyclically, `a` itself
    /// included again when `d` reaches the arc count) starts with a critical
    /// vertex of the first kind. Such a start breaks the alternation of any
    /// boundary walk leaving `a` and entering the `d`-th following arc.
    pub fn first_kind_within(&self, a: usize, d: usize) -> bool {
        let s = self.arcs.len();
        if d == 0 || self.critical.is_empty() {
            return false;
        }
        if d >= s {
            return self.first_kind_prefix[s] > 0;
        }
        // Arcs a+1 ..= a+d (mod s).
        let count = |lo: usize, hi: usize| self.first_kind_prefix[hi] - self.first_kind_prefix[lo];
        let (lo, hi) = (a + 1, a + d + 1);
        if hi <= s {
            count(lo, hi) > 0
        } else {
            count(lo.min(s), s) + count(0, hi - s) > 0
        }
    }
}

pub(crate) fn check_bicolored(ps: &ColoredPointSet) -> Result<(), FptError> {
    if ps.color_count() != 2 {
        return Err(FptError::NotBipartite(ps.color_count()));
    }
    let sizes = ps.class_sizes();
    if sizes[0] != sizes[1] {
        return Err(FptError::Unbalanced { red: sizes[0], blue: sizes[1] });
    }
    Ok(())
}

/// Boundary (hull, counterclockwise) and interior vertices.
pub(crate) fn split_boundary(ps: &ColoredPointSet) -> (Vec<usize>, Vec<usize>) {
    let boundary = convex_hull(ps.points());
    let mut on_hull = vec![false; ps.len()];
    for &b in &boundary {
        on_hull[b] = true;
    }
    let interior = (0..ps.len()).filter(|&i| !on_hull[i]).collect();
    (boundary, interior)
}

/// Critical vertices and arcs for an instance with at least two interior points.
pub fn compute_arcs(ps: &ColoredPointSet) -> Result<ArcDecomposition, FptError> {
    check_bicolored(ps)?;
    let (boundary, interior) = split_boundary(ps);
    if interior.len() < 2 {
        return Err(FptError::TooFewInterior(interior.len()));
    }
    Ok(decompose(ps, boundary, interior))
}

pub(crate) fn decompose(ps: &ColoredPointSet, boundary: Vec<usize>, interior: Vec<usize>) -> ArcDecomposition {
    let m = boundary.len();
    let k = interior.len();
    let mut critical = Vec::new();
    for i in 0..m {
        let (prev, cur) = (boundary[(i + m - 1) % m], boundary[i]);
        let first_kind = ps.color(prev) == ps.color(cur);
        let mut second_kind = false;
        'lines: for a in 0..k {
            for b in (a + 1)..k {
                let (pa, pb) = (ps.point(interior[a]), ps.point(interior[b]));
                if strictly_separated(pa, pb, ps.point(prev), ps.point(cur)) {
                    second_kind = true;
                    break 'lines;
                }
            }
        }
        if first_kind || second_kind {
            critical.push(CriticalVertex { position: i, first_kind, second_kind });
        }
    }
    let arcs: Vec<Arc> = if critical.is_empty() {
        // Single arc anchored at the lowest global index.
        let start = (0..m).min_by_key(|&i| boundary[i]).unwrap_or(0);
        vec![Arc { start, len: m }]
    } else {
        let s = critical.len();
        (0..s)
            .map(|i| {
                let start = critical[i].position;
                let next = critical[(i + 1) % s].position;
                let len = if s == 1 { m } else { (next + m - start) % m };
                Arc { start, len }
            })
            .collect()
    };
    let mut arc_of = vec![0; m];
    for (a, arc) in arcs.iter().enumerate() {
        for o in 0..arc.len {
            arc_of[(arc.start + o) % m] = a;
        }
    }
    let mut first_kind_prefix = vec![0; arcs.len() + 1];
    for a in 0..arcs.len() {
        let fk = critical.get(a).is_some_and(|c| c.first_kind);
        first_kind_prefix[a + 1] = first_kind_prefix[a] + fk as usize;
    }
    ArcDecomposition { boundary, interior, critical, arcs, arc_of, first_kind_prefix }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(t: &[(i64, i64, u32)]) -> ColoredPointSet {
        ColoredPointSet::from_triples(t).unwrap()
    }

    /// Square boundary b r b r with an interior r/b pair on a horizontal line.
    pub(crate) fn square_k2() -> ColoredPointSet {
        set(&[(0, 0, 1), (10, 0, 0), (10, 10, 1), (0, 10, 0), (4, 5, 0), (6, 5, 1)])
    }

    #[test]
    fn square_instance_arcs() {
        let ps = square_k2();
        let d = compute_arcs(&ps).unwrap();
        assert_eq!(d.boundary, vec![0, 1, 2, 3]);
        assert_eq!(d.interior, vec![4, 5]);
        let crit: Vec<_> = d.critical.iter().map(|c| (d.boundary[c.position], c.first_kind, c.second_kind)).collect();
        assert_eq!(crit, vec![(0, false, true), (2, false, true)]);
        assert_eq!(d.arcs, vec![Arc { start: 0, len: 2 }, Arc { start: 2, len: 2 }]);
        assert_eq!((d.first_of(0), d.last_of(0), d.first_of(1), d.last_of(1)), (0, 1, 2, 3));
    }

    #[test]
    fn first_kind_flags_follow_same_colored_predecessors() {
        // Boundary r r b b on a wide quad; interior b r far from separating anything relevant.
        let ps = set(&[(0, 0, 0), (100, 0, 0), (100, 100, 1), (0, 100, 1), (49, 50, 1), (52, 51, 0)]);
        let d = compute_arcs(&ps).unwrap();
        let first: Vec<usize> =
            d.critical.iter().filter(|c| c.first_kind).map(|c| d.boundary[c.position]).collect();
        assert_eq!(first, vec![1, 3]);
    }

    #[test]
    fn too_few_interior() {
        let ps = set(&[(0, 0, 0), (1, 0, 1), (1, 1, 0), (0, 1, 1)]);
        assert_eq!(compute_arcs(&ps), Err(FptError::TooFewInterior(0)));
    }

    #[test]
    fn first_kind_window() {
        let ps = set(&[(0, 0, 0), (100, 0, 0), (100, 100, 1), (0, 100, 1), (49, 50, 1), (52, 51, 0)]);
        let d = compute_arcs(&ps).unwrap();
        let s = d.arcs.len();
        for a in 0..s {
            for dist in 0..=s {
                let direct = (1..=dist).any(|j| d.starts_first_kind((a + j) % s));
                assert_eq!(d.first_kind_within(a, dist), direct, "a={a} d={dist}");
            }
        }
    }
}
