//! Point-set triangulations, edge flips, and a canonical triangulation to
//! route flip sequences through.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geom::{orient_det, segments_cross, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("edge {0}-{1} references a point outside the set")]
    IndexOutOfRange(usize, usize),
    #[error("edge {0}-{0} is degenerate")]
    DegenerateEdge(usize),
    #[error("required edges {}-{} and {}-{} cross", .first.0, .first.1, .second.0, .second.1)]
    RequiredEdgesCross { first: (usize, usize), second: (usize, usize) },
    #[error("triangulations are over different point sets")]
    PointSetMismatch,
    #[error("edge {}-{} is not flippable", .0.0, .0.1)]
    NotFlippable((usize, usize)),
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Replaces the diagonal `removed` of a convex quadrilateral by `inserted`.
/// Both pairs are stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Flip {
    pub removed: (usize, usize),
    pub inserted: (usize, usize),
}

impl Flip {
    /// The two triangles incident to the removed edge.
    pub fn triangles(&self) -> [(usize, usize, usize); 2] {
        let (a, b) = self.removed;
        let (c, d) = self.inserted;
        [(a, b, c), (a, b, d)]
    }

    pub fn inverse(&self) -> Flip {
        Flip { removed: self.inserted, inserted: self.removed }
    }
}

/// A maximal noncrossing straight-line edge set on a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    points: Vec<Point>,
    adj: Vec<BTreeSet<usize>>,
}

impl Triangulation {
    fn empty(points: &[Point]) -> Self {
        Triangulation { points: points.to_vec(), adj: vec![BTreeSet::new(); points.len()] }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && self.adj[a].contains(&b)
    }

    /// Edges with the smaller index first, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(a + 1..).map(|&b| (a, b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    fn insert(&mut self, a: usize, b: usize) {
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    fn remove(&mut self, a: usize, b: usize) {
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
    }

    fn crosses_any(&self, a: usize, b: usize) -> bool {
        let (p, q) = (self.points[a], self.points[b]);
        self.adj.iter().enumerate().any(|(x, nb)| {
            nb.range(x + 1..)
                .any(|&y| segments_cross(p, q, self.points[x], self.points[y]))
        })
    }

    fn empty_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        let (pa, pb, pc) = (self.points[a], self.points[b], self.points[c]);
        (0..self.points.len())
            .filter(|&x| x != a && x != b && x != c)
            .all(|x| !crate::geom::in_open_triangle(self.points[x], pa, pb, pc))
    }

    /// Apex of the face on the left (`side > 0`) or right (`side < 0`) of `a -> b`.
    fn apex(&self, a: usize, b: usize, side: i128) -> Option<usize> {
        let (pa, pb) = (self.points[a], self.points[b]);
        self.adj[a]
            .intersection(&self.adj[b])
            .copied()
            .find(|&c| orient_det(pa, pb, self.points[c]).signum() == side && self.empty_triangle(a, b, c))
    }

    /// The flip of edge `ab`, if `ab` is an interior edge whose two incident
    /// triangles form a convex quadrilateral.
    pub fn flip_of(&self, a: usize, b: usize) -> Option<Flip> {
        if !self.contains(a, b) {
            return None;
        }
        let (a, b) = norm(a, b);
        let c = self.apex(a, b, 1)?;
        let d = self.apex(a, b, -1)?;
        let p = &self.points;
        if segments_cross(p[a], p[b], p[c], p[d]) {
            Some(Flip { removed: (a, b), inserted: norm(c, d) })
        } else {
            None
        }
    }

    pub fn apply(&mut self, flip: &Flip) -> Result<(), TriangulationError> {
        let (a, b) = flip.removed;
        match self.flip_of(a, b) {
            Some(f) if f == *flip => {
                self.remove(a, b);
                self.insert(flip.inserted.0, flip.inserted.1);
                Ok(())
            }
            _ => Err(TriangulationError::NotFlippable(flip.removed)),
        }
    }

    /// `true` iff the edge set is noncrossing and no further segment can be added.
    pub fn is_valid(&self) -> bool {
        let edges = self.edges();
        let p = &self.points;
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if segments_cross(p[a], p[b], p[c], p[d]) {
                    return false;
                }
            }
        }
        for a in 0..p.len() {
            for b in (a + 1)..p.len() {
                if !self.contains(a, b) && !self.crosses_any(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// A triangulation of `points` containing every edge of `required`.
///
/// Greedy: the required edges, then every other segment in lexicographic
/// order that crosses nothing chosen so far. A maximal noncrossing edge set
/// is a triangulation, so the result is deterministic for fixed input.
pub fn triangulate_containing(points: &[Point], required: &[(usize, usize)]) -> Result<Triangulation, TriangulationError> {
    let n = points.len();
    let mut t = Triangulation::empty(points);
    let mut req: Vec<(usize, usize)> = Vec::with_capacity(required.len());
    for &(a, b) in required {
        if a >= n || b >= n {
            return Err(TriangulationError::IndexOutOfRange(a, b));
        }
        if a == b {
            return Err(TriangulationError::DegenerateEdge(a));
        }
        req.push(norm(a, b));
    }
    req.sort_unstable();
    req.dedup();
    for (i, &(a, b)) in req.iter().enumerate() {
        for &(c, d) in &req[i + 1..] {
            if segments_cross(points[a], points[b], points[c], points[d]) {
                return Err(TriangulationError::RequiredEdgesCross { first: (a, b), second: (c, d) });
            }
        }
        t.insert(a, b);
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if !t.contains(a, b) && !t.crosses_any(a, b) {
                t.insert(a, b);
            }
        }
    }
    Ok(t)
}

fn lifted_det(p: [Point; 4], h: [i128; 4]) -> i128 {
    let d = p[3];
    let row = |i: usize| {
        [
            (p[i].x() - d.x()) as i128,
            (p[i].y() - d.y()) as i128,
            h[i] - h[3],
        ]
    };
    let (r0, r1, r2) = (row(0), row(1), row(2));
    r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
}

/// Sign of the in-circle test for `d` against the counterclockwise triangle
/// `abc`, with each point lifted to `|p|^2` plus an infinitesimal that is
/// larger for smaller indices. Never zero for four distinct points of which
/// three are not collinear.
fn perturbed_incircle(points: &[Point], tri: [usize; 3], d: usize) -> i128 {
    let ids = [tri[0], tri[1], tri[2], d];
    let p = ids.map(|i| points[i]);
    let lift = |q: Point| (q.x() as i128) * (q.x() as i128) + (q.y() as i128) * (q.y() as i128);
    let exact = lifted_det(p, p.map(lift));
    if exact != 0 {
        return exact.signum();
    }
    let mut order = [0usize, 1, 2, 3];
    order.sort_by_key(|&k| ids[k]);
    for k in order {
        let mut h = [0i128; 4];
        h[k] = 1;
        let c = lifted_det(p, h);
        if c != 0 {
            return c.signum();
        }
    }
    0
}

fn is_illegal(t: &Triangulation, f: &Flip) -> bool {
    let (a, b) = f.removed;
    let p = t.points();
    let (c, d) = if orient_det(p[a], p[b], p[f.inserted.0]) > 0 {
        (f.inserted.0, f.inserted.1)
    } else {
        (f.inserted.1, f.inserted.0)
    };
    // a, b, c is counterclockwise since c is left of a -> b.
    perturbed_incircle(p, [a, b, c], d) > 0
}

/// Lawson flips to the canonical (perturbed Delaunay) triangulation; returns
/// the flips performed. Always flips the lexicographically first illegal edge.
pub fn flips_to_canonical(t: &mut Triangulation) -> Vec<Flip> {
    let mut done = Vec::new();
    loop {
        let next = t
            .edges()
            .into_iter()
            .filter_map(|(a, b)| t.flip_of(a, b))
            .find(|f| is_illegal(t, f));
        match next {
            Some(f) => {
                t.apply(&f).expect("flip found on this triangulation");
                done.push(f);
            }
            None => return done,
        }
    }
}

/// The unique triangulation every flip path is routed through.
pub fn canonical_triangulation(points: &[Point]) -> Triangulation {
    let mut t = triangulate_containing(points, &[]).expect("no required edges");
    flips_to_canonical(&mut t);
    t
}

/// Flips turning `from` into `to`: `from` to the canonical triangulation,
/// then the reversed route of `to`. Adjacent mutually inverse flips are
/// cancelled, so identical inputs give an empty sequence.
pub fn flip_path(from: &Triangulation, to: &Triangulation) -> Result<Vec<Flip>, TriangulationError> {
    if from.points != to.points {
        return Err(TriangulationError::PointSetMismatch);
    }
    let mut a = from.clone();
    let mut b = to.clone();
    let forward = flips_to_canonical(&mut a);
    let backward = flips_to_canonical(&mut b);
    debug_assert_eq!(a, b);
    let mut out: Vec<Flip> = Vec::with_capacity(forward.len() + backward.len());
    for f in forward.into_iter().chain(backward.into_iter().rev().map(|f| f.inverse())) {
        if out.last() == Some(&f.inverse()) {
            out.pop();
        } else {
            out.push(f);
        }
    }
    Ok(out)
}
