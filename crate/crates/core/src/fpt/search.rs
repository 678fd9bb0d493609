use rayon::prelude::*;

use crate::geom::convex_hull;
use crate::model::{validate_cycle, ColoredPointSet, PlaneCycle};

use super::feasibility::{feasible_rotation, ArcSelection, Frame, Tables};
use super::initial::InitialCycle;

/// A feasible selection together with the labeling start that passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonWitness {
    pub initial: InitialCycle,
    pub selection: ArcSelection,
    pub rotation: usize,
}

struct Dfs<'t, 'a> {
    t: &'t Tables<'a>,
    frame: &'t Frame<'t>,
    sel: Vec<usize>,
    count: Vec<usize>,
}

impl Dfs<'_, '_> {
    fn go(&mut self, wound: usize) -> Option<(ArcSelection, usize)> {
        let t = self.t;
        let seq = self.frame.seq;
        let g = seq.len();
        let p = self.sel.len();
        if p == g {
            let w = wound + t.step(self.sel[g - 1], self.sel[0]);
            if w != 0 && w != t.s {
                return None;
            }
            let r = feasible_rotation(t, self.frame, &self.sel).ok()?;
            return Some((ArcSelection { arcs: self.sel.clone() }, r));
        }
        let ps = t.ps;
        let u = seq.vertices[p];
        for a in 0..t.s {
            if self.frame.fixed.iter().any(|&(x, y)| t.fixed_cross(u, a, x, y)) {
                continue;
            }
            if (0..p).any(|q| self.sel[q] != a && t.rep_cross(seq.vertices[q], self.sel[q], u, a)) {
                continue;
            }
            let mut next_wound = wound;
            let mut merged = 0;
            if p > 0 {
                let prev = self.sel[p - 1];
                let pu = seq.vertices[p - 1];
                let d = t.step(prev, a);
                next_wound += d;
                if next_wound > t.s {
                    continue;
                }
                let same = ps.color(pu) == ps.color(u);
                if seq.links[p - 1].is_gap() {
                    if t.dec.first_kind_within(prev, d) {
                        continue;
                    }
                    merged = (d == 0 && same) as usize;
                } else {
                    if d >= 2 || (d == 0 && same) {
                        continue;
                    }
                    if d == 1
                        && (ps.color(t.dec.last_of(prev)) == ps.color(pu) || ps.color(t.dec.first_of(a)) == ps.color(u))
                    {
                        continue;
                    }
                }
            }
            if self.count[a] + 1 - merged > t.dec.arcs[a].len {
                continue;
            }
            self.count[a] += 1 - merged;
            self.sel.push(a);
            let found = self.go(next_wound);
            self.sel.pop();
            self.count[a] -= 1 - merged;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// First feasible selection for `f` in lexicographic order, with its labeling start.
pub(crate) fn search_initial(t: &Tables, f: &InitialCycle) -> Option<(ArcSelection, usize)> {
    let seq = f.gap_sequence();
    let frame = Frame::new(f, &seq);
    let mut dfs = Dfs { t, frame: &frame, sel: Vec::with_capacity(seq.len()), count: vec![0; t.s] };
    dfs.go(0)
}

/// Runs the selection search over all initial cycles in parallel; the
/// reported witness is the first in enumeration order.
pub(crate) fn search_all(t: &Tables, initial: &[InitialCycle]) -> Option<HamiltonWitness> {
    initial.par_iter().find_map_first(|f| {
        search_initial(t, f).map(|(selection, rotation)| HamiltonWitness { initial: f.clone(), selection, rotation })
    })
}

/// Exhaustive backtracking for a plane Hamiltonian cycle in any colored
/// point set: starts at the first hull vertex and visits the hull vertices
/// in counterclockwise order, pruning color clashes and crossings.
pub fn plane_hamiltonian_search(ps: &ColoredPointSet) -> Option<PlaneCycle> {
    let n = ps.len();
    if n < 3 {
        return None;
    }
    let hull = convex_hull(ps.points());
    let mut hull_pos = vec![usize::MAX; n];
    for (i, &h) in hull.iter().enumerate() {
        hull_pos[h] = i;
    }
    let mut st = Backtrack { ps, hull: &hull, hull_pos: &hull_pos, path: vec![hull[0]], used: vec![false; n] };
    st.used[hull[0]] = true;
    if st.go(1) {
        validate_cycle(ps, &st.path).ok()
    } else {
        None
    }
}

struct Backtrack<'a> {
    ps: &'a ColoredPointSet,
    hull: &'a [usize],
    hull_pos: &'a [usize],
    path: Vec<usize>,
    used: Vec<bool>,
}

impl Backtrack<'_> {
    fn crosses_path(&self, a: usize, b: usize) -> bool {
        // Path edges not sharing an endpoint with ab.
        self.path.windows(2).any(|e| {
            let (c, d) = (e[0], e[1]);
            c != a && c != b && d != a && d != b && self.ps.cross(a, b, c, d)
        })
    }

    fn go(&mut self, next_hull: usize) -> bool {
        let n = self.ps.len();
        let last = *self.path.last().unwrap();
        if self.path.len() == n {
            let first = self.path[0];
            return self.ps.is_host_edge(last, first) && !self.crosses_path(last, first);
        }
        for x in 0..n {
            if self.used[x] || !self.ps.is_host_edge(last, x) {
                continue;
            }
            let hp = self.hull_pos[x];
            if hp != usize::MAX && (next_hull >= self.hull.len() || self.hull[next_hull] != x) {
                continue;
            }
            if self.crosses_path(last, x) {
                continue;
            }
            self.used[x] = true;
            self.path.push(x);
            let nh = if hp != usize::MAX { next_hull + 1 } else { next_hull };
            if self.go(nh) {
                return true;
            }
            self.path.pop();
            self.used[x] = false;
        }
        false
    }
}
