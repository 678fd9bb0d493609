//! Non-rainbow plane cycles via the four forbidden configurations.
//!
//! An instance has a plane cycle repeating some color iff it contains one of:
//!
//! * `C1`: `u, u'` of one color and `v, v'` of another, with `v, v'` strictly
//!   separated by the line `uu'`;
//! * `C2`: `u, u'` of one color, `v, v'` of two further distinct colors,
//!   same separation;
//! * `C3`: `u, u'` of two distinct colors, `v, v'` of one third color, same
//!   separation;
//! * `C4`: `u, u'` of one color, `v, v', w` of three further distinct colors,
//!   `u, u', v, v'` in convex position with `w` strictly inside.
//!
//! Each configuration carries a short plane cycle on its own vertices.

use std::fmt;

use thiserror::Error;

use crate::geom::{self, strictly_separated};
use crate::model::{validate_cycle, ColoredPointSet, PlaneCycle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigKind {
    C1,
    C2,
    C3,
    C4,
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConfigKind::C1 => "C1",
            ConfigKind::C2 => "C2",
            ConfigKind::C3 => "C3",
            ConfigKind::C4 => "C4",
        };
        f.write_str(s)
    }
}

/// A configuration occurrence, by role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConfigurationWitness {
    pub kind: ConfigKind,
    pub u: usize,
    pub u_prime: usize,
    pub v: usize,
    pub v_prime: usize,
    /// Interior vertex, `C4` only.
    pub w: Option<usize>,
}

impl ConfigurationWitness {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = vec![self.u, self.u_prime, self.v, self.v_prime];
        v.extend(self.w);
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RainbowError {
    #[error("witness {0:?} does not satisfy its configuration")]
    InvalidWitness(ConfigurationWitness),
    #[error("no plane cycle on the witness vertices validated: {0}")]
    NoCycle(String),
}

fn distinct(xs: &[usize]) -> bool {
    (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| xs[i] != xs[j]))
}

fn distinct_colors(ps: &ColoredPointSet, xs: &[usize]) -> bool {
    (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| ps.color(xs[i]) != ps.color(xs[j])))
}

/// `true` iff the four points are in convex position and `w` lies strictly inside their hull.
fn convex_quad_around(ps: &ColoredPointSet, quad: [usize; 4], w: usize) -> bool {
    let pts: Vec<_> = quad.iter().map(|&i| ps.point(i)).collect();
    let hull = geom::convex_hull(&pts);
    if hull.len() != 4 {
        return false;
    }
    let poly: Vec<_> = hull.iter().map(|&i| pts[i]).collect();
    geom::strictly_inside_convex(&poly, ps.point(w))
}

fn separated(ps: &ColoredPointSet, u: usize, u2: usize, v: usize, v2: usize) -> bool {
    strictly_separated(ps.point(u), ps.point(u2), ps.point(v), ps.point(v2))
}

/// `true` iff `w` satisfies the definition of its configuration in `ps`.
pub fn is_valid_witness(ps: &ColoredPointSet, w: &ConfigurationWitness) -> bool {
    let (u, u2, v, v2) = (w.u, w.u_prime, w.v, w.v_prime);
    let n = ps.len();
    if [u, u2, v, v2].iter().chain(w.w.iter()).any(|&i| i >= n) {
        return false;
    }
    let c = |i: usize| ps.color(i);
    match (w.kind, w.w) {
        (ConfigKind::C1, None) => {
            distinct(&[u, u2, v, v2])
                && c(u) == c(u2)
                && c(v) == c(v2)
                && c(u) != c(v)
                && separated(ps, u, u2, v, v2)
        }
        (ConfigKind::C2, None) => {
            distinct(&[u, u2, v, v2])
                && c(u) == c(u2)
                && distinct_colors(ps, &[u, v, v2])
                && separated(ps, u, u2, v, v2)
        }
        (ConfigKind::C3, None) => {
            distinct(&[u, u2, v, v2])
                && c(v) == c(v2)
                && distinct_colors(ps, &[u, u2, v])
                && separated(ps, u, u2, v, v2)
        }
        (ConfigKind::C4, Some(x)) => {
            distinct(&[u, u2, v, v2, x])
                && c(u) == c(u2)
                && distinct_colors(ps, &[u, v, v2, x])
                && convex_quad_around(ps, [u, u2, v, v2], x)
        }
        _ => false,
    }
}

fn find_separated(ps: &ColoredPointSet, kind: ConfigKind) -> Option<ConfigurationWitness> {
    let n = ps.len();
    for u in 0..n {
        for u2 in (u + 1)..n {
            let same_u = ps.color(u) == ps.color(u2);
            match kind {
                ConfigKind::C1 | ConfigKind::C2 if !same_u => continue,
                ConfigKind::C3 if same_u => continue,
                _ => {}
            }
            for v in 0..n {
                if v == u || v == u2 {
                    continue;
                }
                for v2 in (v + 1)..n {
                    if v2 == u || v2 == u2 {
                        continue;
                    }
                    let cand = ConfigurationWitness { kind, u, u_prime: u2, v, v_prime: v2, w: None };
                    if is_valid_witness(ps, &cand) {
                        return Some(cand);
                    }
                }
            }
        }
    }
    None
}

fn find_c4(ps: &ColoredPointSet) -> Option<ConfigurationWitness> {
    let n = ps.len();
    for u in 0..n {
        for u2 in (u + 1)..n {
            if ps.color(u) != ps.color(u2) {
                continue;
            }
            for v in 0..n {
                if v == u || v == u2 || ps.color(v) == ps.color(u) {
                    continue;
                }
                for v2 in (v + 1)..n {
                    if v2 == u || v2 == u2 || !distinct_colors(ps, &[u, v, v2]) {
                        continue;
                    }
                    for w in 0..n {
                        let cand = ConfigurationWitness {
                            kind: ConfigKind::C4,
                            u,
                            u_prime: u2,
                            v,
                            v_prime: v2,
                            w: Some(w),
                        };
                        if is_valid_witness(ps, &cand) {
                            return Some(cand);
                        }
                    }
                }
            }
        }
    }
    None
}

/// First configuration in the order `C1, C2, C3, C4`, and within a kind the
/// lexicographically smallest `(u, u', v, v', w)` with `u < u'` and `v < v'`.
///
/// `O(n^4)` for the separated kinds, `O(n^5)` for `C4`, which is only
/// searched when at least four colors exist.
pub fn find_configuration(ps: &ColoredPointSet) -> Option<ConfigurationWitness> {
    find_separated(ps, ConfigKind::C1)
        .or_else(|| {
            if ps.color_count() >= 3 {
                find_separated(ps, ConfigKind::C2).or_else(|| find_separated(ps, ConfigKind::C3))
            } else {
                None
            }
        })
        .or_else(|| if ps.color_count() >= 4 { find_c4(ps) } else { None })
}

pub fn has_nonrainbow_plane_cycle(ps: &ColoredPointSet) -> bool {
    find_configuration(ps).is_some()
}

/// A non-rainbow plane cycle on the witness vertices.
///
/// For `C1`-`C3` this is `u, v, u', v'`: the two triangles `u v u'` and
/// `u u' v'` lie on opposite sides of `uu'`, so the quadrilateral is simple.
/// For `C4` it is the hull 4-cycle when `u, u'` are opposite corners, and
/// otherwise the hull 4-cycle with `w` spliced between the adjacent `u, u'`.
pub fn witness_cycle(ps: &ColoredPointSet, w: &ConfigurationWitness) -> Result<PlaneCycle, RainbowError> {
    if !is_valid_witness(ps, w) {
        return Err(RainbowError::InvalidWitness(*w));
    }
    let candidates: Vec<Vec<usize>> = match w.kind {
        ConfigKind::C1 | ConfigKind::C2 | ConfigKind::C3 => {
            vec![vec![w.u, w.v, w.u_prime, w.v_prime], vec![w.u, w.v_prime, w.u_prime, w.v]]
        }
        ConfigKind::C4 => {
            let quad = [w.u, w.u_prime, w.v, w.v_prime];
            let pts: Vec<_> = quad.iter().map(|&i| ps.point(i)).collect();
            let ring: Vec<usize> = geom::convex_hull(&pts).into_iter().map(|i| quad[i]).collect();
            let pu = ring.iter().position(|&x| x == w.u).unwrap();
            let pu2 = ring.iter().position(|&x| x == w.u_prime).unwrap();
            if (pu + 2) % 4 == pu2 {
                vec![ring]
            } else {
                // Rotate so that u, u' are the last and first ring vertices, then close through w.
                let start = if (pu + 1) % 4 == pu2 { pu2 } else { pu };
                let mut c: Vec<usize> = (0..4).map(|k| ring[(start + k) % 4]).collect();
                c.push(w.w.unwrap());
                vec![c]
            }
        }
    };
    let mut last_err = String::new();
    for cand in candidates {
        match validate_cycle(ps, &cand) {
            Ok(c) if !c.is_rainbow(ps) => return Ok(c),
            Ok(_) => last_err = "cycle is rainbow".into(),
            Err(e) => last_err = e.to_string(),
        }
    }
    Err(RainbowError::NoCycle(last_err))
}
