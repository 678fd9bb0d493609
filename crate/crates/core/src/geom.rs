//! Exact geometric primitives on bounded integer coordinates.
//!
//! Every coordinate satisfies `|x|, |y| <= COORD_BOUND = 2^28`. Coordinate
//! differences then fit in 30 bits, so orientation determinants (degree 2)
//! need at most 62 bits and lifted in-circle determinants (degree 4) at most
//! 123 bits. All predicates evaluate in `i128` and are exact.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest admissible absolute value of a coordinate.
pub const COORD_BOUND: i64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("coordinate ({x}, {y}) outside the admissible range [-{bound}, {bound}]", bound = COORD_BOUND)]
    CoordinateOutOfRange { x: i64, y: i64 },
}

/// A point with integer coordinates inside the admissible range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    x: i64,
    y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Result<Self, GeomError> {
        if x.abs() > COORD_BOUND || y.abs() > COORD_BOUND {
            return Err(GeomError::CoordinateOutOfRange { x, y });
        }
        Ok(Point { x, y })
    }

    #[inline]
    pub fn x(&self) -> i64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> i64 {
        self.y
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Result<Self, GeomError> {
        Point::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }

    fn from_sign(v: i128) -> Self {
        match v.cmp(&0) {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }
}

/// Twice the signed area of triangle `abc`.
#[inline]
pub(crate) fn orient_det(a: Point, b: Point, c: Point) -> i128 {
    let abx = (b.x - a.x) as i128;
    let aby = (b.y - a.y) as i128;
    let acx = (c.x - a.x) as i128;
    let acy = (c.y - a.y) as i128;
    abx * acy - aby * acx
}

pub fn orient(a: Point, b: Point, c: Point) -> Orientation {
    Orientation::from_sign(orient_det(a, b, c))
}

/// `true` iff `c` lies strictly to the left of the directed line `a -> b`.
#[inline]
pub fn left_of(a: Point, b: Point, c: Point) -> bool {
    orient_det(a, b, c) > 0
}

/// `true` iff `c` lies strictly to the right of the directed line `a -> b`.
#[inline]
pub fn right_of(a: Point, b: Point, c: Point) -> bool {
    orient_det(a, b, c) < 0
}

/// `true` iff `p` and `q` lie strictly on different sides of the line through `a` and `b`.
#[inline]
pub fn strictly_separated(a: Point, b: Point, p: Point, q: Point) -> bool {
    let sp = orient_det(a, b, p).signum();
    let sq = orient_det(a, b, q).signum();
    sp * sq < 0
}

/// `true` iff the open segments `pq` and `rs` share a point.
///
/// Segments that only meet in a common endpoint do not cross. Zero-length
/// segments never cross anything.
pub fn segments_cross(p: Point, q: Point, r: Point, s: Point) -> bool {
    if p == q || r == s {
        return false;
    }
    let o1 = orient_det(p, q, r).signum();
    let o2 = orient_det(p, q, s).signum();
    let o3 = orient_det(r, s, p).signum();
    let o4 = orient_det(r, s, q).signum();
    if o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return o1 != o2 && o3 != o4;
    }
    if o1 == 0 && o2 == 0 {
        // Collinear: the open segments overlap iff the overlap has positive length.
        let key = |a: Point| -> i128 {
            if p.x != q.x {
                a.x as i128
            } else {
                a.y as i128
            }
        };
        let (a0, a1) = (key(p).min(key(q)), key(p).max(key(q)));
        let (b0, b1) = (key(r).min(key(s)), key(r).max(key(s)));
        return a0.max(b0) < a1.min(b1);
    }
    // Exactly one endpoint lies on the other segment's line: the supporting
    // lines meet only in that endpoint, which is not part of its open segment.
    false
}

/// Counterclockwise convex hull as indices into `points`, starting at the
/// lexicographically smallest point. Collinear boundary points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by_key(|&i| (points[i].x, points[i].y));
    idx.dedup_by_key(|i| points[*i]);
    if idx.len() <= 2 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in &idx {
        while lower.len() >= 2
            && orient_det(points[lower[lower.len() - 2]], points[lower[lower.len() - 1]], points[i]) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::with_capacity(idx.len());
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && orient_det(points[upper[upper.len() - 2]], points[upper[upper.len() - 1]], points[i]) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// `true` iff `p` lies strictly inside the counterclockwise convex polygon `poly`.
pub fn strictly_inside_convex(poly: &[Point], p: Point) -> bool {
    if poly.len() < 3 {
        return false;
    }
    (0..poly.len()).all(|i| left_of(poly[i], poly[(i + 1) % poly.len()], p))
}

/// `true` iff `p` lies in the open triangle `abc` (either orientation).
pub fn in_open_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let s1 = orient_det(a, b, p).signum();
    let s2 = orient_det(b, c, p).signum();
    let s3 = orient_det(c, a, p).signum();
    s1 != 0 && s1 == s2 && s2 == s3
}

/// Winding number of the polygon `poly` around the midpoint of `a` and `b`.
///
/// Evaluated on doubled coordinates so the midpoint stays integral. The
/// midpoint must not lie on the polygon boundary.
pub fn winding_number_of_midpoint(a: Point, b: Point, poly: &[Point]) -> i32 {
    let qx = (a.x + b.x) as i128;
    let qy = (a.y + b.y) as i128;
    let mut wn = 0;
    for i in 0..poly.len() {
        let u = poly[i];
        let v = poly[(i + 1) % poly.len()];
        let (ux, uy) = (2 * u.x as i128, 2 * u.y as i128);
        let (vx, vy) = (2 * v.x as i128, 2 * v.y as i128);
        let side = (vx - ux) * (qy - uy) - (vy - uy) * (qx - ux);
        if uy <= qy {
            if vy > qy && side > 0 {
                wn += 1;
            }
        } else if vy <= qy && side < 0 {
            wn -= 1;
        }
    }
    wn
}

/// Why a point sequence is not in general position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneralPositionViolation {
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
    #[error("points {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Checks that all points are distinct and no three are collinear.
///
/// Reports the duplicate pair with the smallest second index, or otherwise the
/// lexicographically smallest collinear triple. Runs in `O(n^2 log n)`.
pub fn validate_general_position(points: &[Point]) -> Result<(), GeneralPositionViolation> {
    let mut seen: HashMap<Point, usize> = HashMap::with_capacity(points.len());
    for (j, p) in points.iter().enumerate() {
        if let Some(&i) = seen.get(p) {
            return Err(GeneralPositionViolation::DuplicatePoint { first: i, second: j });
        }
        seen.insert(*p, j);
    }
    let n = points.len();
    let mut dirs: Vec<((i64, i64), usize)> = Vec::with_capacity(n);
    for i in 0..n {
        dirs.clear();
        for j in (i + 1)..n {
            let mut dx = points[j].x - points[i].x;
            let mut dy = points[j].y - points[i].y;
            let g = gcd(dx, dy);
            dx /= g;
            dy /= g;
            if dx < 0 || (dx == 0 && dy < 0) {
                dx = -dx;
                dy = -dy;
            }
            dirs.push(((dx, dy), j));
        }
        dirs.sort_unstable();
        let mut best: Option<(usize, usize)> = None;
        for w in dirs.windows(2) {
            if w[0].0 == w[1].0 {
                let cand = (w[0].1, w[1].1);
                // Within a direction class the first two entries are the smallest indices.
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        if let Some((j, k)) = best {
            return Err(GeneralPositionViolation::CollinearTriple(i, j, k));
        }
    }
    Ok(())
}
