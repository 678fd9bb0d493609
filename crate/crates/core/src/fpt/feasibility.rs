use std::fmt;

use crate::geom::{right_of, segments_cross};
use crate::model::ColoredPointSet;

use super::arcs::ArcDecomposition;
use super::initial::{GapSequence, InitialCycle, Link};
use super::FptError;

/// Arc chosen for each gap vertex, indexed like [`GapSequence::vertices`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcSelection {
    pub arcs: Vec<usize>,
}

/// The first condition a selection violates, with the offending labeling positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailedCondition {
    /// 1 to 7.
    pub condition: u8,
    /// Positions in the labeling (not in the gap sequence) that witness the failure.
    pub positions: Vec<usize>,
    pub detail: &'static str,
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition {} ({}) at labeling positions {:?}", self.condition, self.detail, self.positions)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// Start of a labeling (a position in the gap sequence) satisfying every condition.
    pub rotation: Option<usize>,
    /// For infeasible selections: the failure of the labeling that got furthest.
    pub failed: Option<FailedCondition>,
}

fn fail(condition: u8, positions: Vec<usize>, detail: &'static str) -> FailedCondition {
    FailedCondition { condition, positions, detail }
}

/// Per-instance predicate tables over (interior vertex, arc) pairs.
///
/// Within one arc every segment from a fixed interior vertex behaves alike
/// against other segments and lines through interior points, so the segment
/// to the arc's first vertex stands in for all of them.
pub(crate) struct Tables<'a> {
    pub ps: &'a ColoredPointSet,
    pub dec: &'a ArcDecomposition,
    pub s: usize,
    k: usize,
    slot: Vec<usize>,
    rep_cross: Vec<bool>,
    fixed_cross: Vec<bool>,
    right: Vec<bool>,
}

impl<'a> Tables<'a> {
    pub fn new(ps: &'a ColoredPointSet, dec: &'a ArcDecomposition) -> Self {
        let k = dec.k();
        let s = dec.arcs.len();
        let mut slot = vec![usize::MAX; ps.len()];
        for (i, &v) in dec.interior.iter().enumerate() {
            slot[v] = i;
        }
        let p = |i: usize| ps.point(dec.interior[i]);
        let first = |a: usize| ps.point(dec.first_of(a));
        let ks = k * s;
        let mut rep_cross = vec![false; ks * ks];
        for u in 0..k {
            for a in 0..s {
                for v in 0..k {
                    for b in 0..s {
                        rep_cross[(u * s + a) * ks + v * s + b] = segments_cross(p(u), first(a), p(v), first(b));
                    }
                }
            }
        }
        let mut fixed_cross = vec![false; ks * k * k];
        for u in 0..k {
            for a in 0..s {
                for x in 0..k {
                    for y in 0..k {
                        if x != y {
                            fixed_cross[(u * s + a) * k * k + x * k + y] = segments_cross(p(u), first(a), p(x), p(y));
                        }
                    }
                }
            }
        }
        let mut right = vec![false; k * k * s];
        for u in 0..k {
            for v in 0..k {
                if u != v {
                    for a in 0..s {
                        right[(u * k + v) * s + a] = right_of(p(u), p(v), first(a));
                    }
                }
            }
        }
        Tables { ps, dec, s, k, slot, rep_cross, fixed_cross, right }
    }

    /// Segments from `u` into arc `a` and from `v` into arc `b` cross.
    pub fn rep_cross(&self, u: usize, a: usize, v: usize, b: usize) -> bool {
        let ks = self.k * self.s;
        self.rep_cross[(self.slot[u] * self.s + a) * ks + self.slot[v] * self.s + b]
    }

    /// Segments from `u` into arc `a` cross the segment `xy` between interior vertices.
    pub fn fixed_cross(&self, u: usize, a: usize, x: usize, y: usize) -> bool {
        let k = self.k;
        self.fixed_cross[(self.slot[u] * self.s + a) * k * k + self.slot[x] * k + self.slot[y]]
    }

    /// Arc `a` lies strictly right of the directed line `u -> v`.
    pub fn right(&self, u: usize, v: usize, a: usize) -> bool {
        self.right[(self.slot[u] * self.k + self.slot[v]) * self.s + a]
    }

    pub fn step(&self, from: usize, to: usize) -> usize {
        (to + self.s - from) % self.s
    }
}

/// A gap sequence together with the fixed edges of its initial cycle.
pub(crate) struct Frame<'f> {
    pub seq: &'f GapSequence,
    pub fixed: Vec<(usize, usize)>,
}

impl<'f> Frame<'f> {
    pub fn new(f: &InitialCycle, seq: &'f GapSequence) -> Self {
        Frame { seq, fixed: f.fixed_edges() }
    }
}

/// A rotation of the gap sequence with the arc travel of every link.
pub(crate) struct Labeling<'x> {
    pub verts: Vec<usize>,
    pub arcs: Vec<usize>,
    pub links: Vec<&'x Link>,
    /// Arcs advanced along the boundary from `arcs[j]` to `arcs[j + 1]`.
    pub travel: Vec<usize>,
}

impl<'x> Labeling<'x> {
    pub fn new(t: &Tables, seq: &'x GapSequence, sel: &[usize], r: usize) -> Result<Self, FailedCondition> {
        let g = seq.len();
        let verts: Vec<usize> = (0..g).map(|j| seq.vertices[(r + j) % g]).collect();
        let arcs: Vec<usize> = (0..g).map(|j| sel[(r + j) % g]).collect();
        let links: Vec<&Link> = (0..g).map(|j| &seq.links[(r + j) % g]).collect();
        let mut travel: Vec<usize> = (0..g.saturating_sub(1)).map(|j| t.step(arcs[j], arcs[j + 1])).collect();
        let wound: usize = travel.iter().sum();
        if wound >= t.s {
            return Err(fail(1, vec![], "selected arcs wind past the first one"));
        }
        travel.push(if wound == 0 { t.s } else { t.s - wound });
        Ok(Labeling { verts, arcs, links, travel })
    }

    /// Same rotation without the winding check; travel is left at the raw steps.
    pub fn unchecked(t: &Tables, seq: &'x GapSequence, sel: &[usize], r: usize) -> Self {
        let g = seq.len();
        let verts: Vec<usize> = (0..g).map(|j| seq.vertices[(r + j) % g]).collect();
        let arcs: Vec<usize> = (0..g).map(|j| sel[(r + j) % g]).collect();
        let links: Vec<&Link> = (0..g).map(|j| &seq.links[(r + j) % g]).collect();
        let travel = (0..g).map(|j| t.step(arcs[j], arcs[(j + 1) % g])).collect();
        Labeling { verts, arcs, links, travel }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }
}

pub(crate) fn check_labeling(t: &Tables, frame: &Frame, lab: &Labeling) -> Result<(), FailedCondition> {
    let g = lab.len();
    let ps = t.ps;
    let (u, a) = (&lab.verts, &lab.arcs);
    let next = |j: usize| (j + 1) % g;

    for j in 0..g {
        for jj in (j + 1)..g {
            if a[j] == a[jj] && u[j] != u[jj] && !t.right(u[j], u[jj], a[j]) {
                return Err(fail(1, vec![j, jj], "shared arc not right of the line between gap vertices"));
            }
        }
    }
    for j in 0..g {
        if frame.fixed.iter().any(|&(x, y)| t.fixed_cross(u[j], a[j], x, y)) {
            return Err(fail(2, vec![j], "segments into the arc cross a fixed edge"));
        }
    }
    for j in 0..g {
        for jj in (j + 1)..g {
            if a[j] != a[jj] && t.rep_cross(u[j], a[j], u[jj], a[jj]) {
                return Err(fail(3, vec![j, jj], "segments into distinct arcs cross"));
            }
        }
    }
    for j in 0..g {
        if lab.links[j].is_gap() && t.dec.first_kind_within(a[j], lab.travel[j]) {
            return Err(fail(4, vec![j, next(j)], "boundary path passes a first-kind critical vertex"));
        }
    }
    for j in 0..g {
        if !lab.links[j].is_gap() && ps.color(u[j]) == ps.color(u[next(j)]) && lab.travel[j] == 0 {
            return Err(fail(5, vec![j, next(j)], "same-colored non-gap pair shares an arc"));
        }
    }
    for j in 0..g {
        if lab.links[j].is_gap() {
            continue;
        }
        match lab.travel[j] {
            0 => {}
            1 => {
                let jn = next(j);
                if ps.color(t.dec.last_of(a[j])) == ps.color(u[j]) || ps.color(t.dec.first_of(a[jn])) == ps.color(u[jn]) {
                    return Err(fail(6, vec![j, jn], "adjacent arcs meet a non-gap pair with the wrong colors"));
                }
            }
            _ => return Err(fail(6, vec![j, next(j)], "non-gap pair on non-adjacent arcs")),
        }
    }
    for arc in 0..t.s {
        let Some(first) = (0..g).find(|&j| a[j] == arc) else { continue };
        let count = (0..g).filter(|&j| a[j] == arc).count();
        let mc = (0..g)
            .filter(|&j| {
                lab.links[j].is_gap()
                    && a[j] == arc
                    && lab.travel[j] == 0
                    && ps.color(u[j]) == ps.color(u[next(j)])
            })
            .count();
        let eps = (ps.color(t.dec.first_of(arc)) == ps.color(u[first])) as usize;
        if t.dec.arcs[arc].len + mc < count + eps {
            return Err(fail(7, vec![first], "arc too short for its gap vertices"));
        }
    }
    Ok(())
}

/// First labeling start satisfying all conditions, or the failure of the
/// labeling that got furthest.
pub(crate) fn feasible_rotation(t: &Tables, frame: &Frame, sel: &[usize]) -> Result<usize, FailedCondition> {
    let g = frame.seq.len();
    let mut worst: Option<FailedCondition> = None;
    for r in 0..g {
        let res = Labeling::new(t, frame.seq, sel, r).and_then(|lab| check_labeling(t, frame, &lab));
        match res {
            Ok(()) => return Ok(r),
            Err(e) => {
                if worst.as_ref().is_none_or(|w| e.condition > w.condition) {
                    worst = Some(e);
                }
            }
        }
    }
    Err(worst.unwrap_or_else(|| fail(1, vec![], "no gap vertices")))
}

pub(crate) fn check_selection_shape(dec: &ArcDecomposition, seq: &GapSequence, sel: &ArcSelection) -> Result<(), FptError> {
    if sel.arcs.len() != seq.len() {
        return Err(FptError::MalformedSelection(format!(
            "{} arcs selected for {} gap vertices",
            sel.arcs.len(),
            seq.len()
        )));
    }
    if let Some(&a) = sel.arcs.iter().find(|&&a| a >= dec.arcs.len()) {
        return Err(FptError::MalformedSelection(format!("arc {a} does not exist ({} arcs)", dec.arcs.len())));
    }
    Ok(())
}

/// Checks the seven feasibility conditions for every labeling of the gap
/// vertices along `f`; feasible iff some labeling passes all of them.
pub fn check_feasible(
    ps: &ColoredPointSet,
    dec: &ArcDecomposition,
    f: &InitialCycle,
    sel: &ArcSelection,
) -> Result<FeasibilityReport, FptError> {
    let seq = f.gap_sequence();
    check_selection_shape(dec, &seq, sel)?;
    let t = Tables::new(ps, dec);
    let frame = Frame::new(f, &seq);
    Ok(match feasible_rotation(&t, &frame, &sel.arcs) {
        Ok(r) => FeasibilityReport { feasible: true, rotation: Some(r), failed: None },
        Err(e) => FeasibilityReport { feasible: false, rotation: None, failed: Some(e) },
    })
}
