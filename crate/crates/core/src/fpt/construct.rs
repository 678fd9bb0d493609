use crate::model::{validate_cycle, ColoredPointSet, PlaneCycle};

use super::arcs::ArcDecomposition;
use super::feasibility::{check_selection_shape, feasible_rotation, ArcSelection, FeasibilityReport, Frame, Labeling, Tables};
use super::initial::{InitialCycle, Link};
use super::FptError;

/// Picks a boundary neighbour for every gap vertex and splices the
/// counterclockwise boundary paths into the gaps. `None` if some pick falls
/// outside its arc or has the gap vertex's color.
pub(crate) fn build(t: &Tables, lab: &Labeling) -> Option<Vec<usize>> {
    let ps = t.ps;
    let dec = t.dec;
    let g = lab.len();
    let (u, a) = (&lab.verts, &lab.arcs);
    let pred_gap = |j: usize| lab.links[(j + g - 1) % g].is_gap();
    let mut off = vec![0usize; g];
    let mut j0 = 0;
    while j0 < g {
        let arc = a[j0];
        let mut j1 = j0;
        while j1 + 1 < g && a[j1 + 1] == arc {
            j1 += 1;
        }
        let len = dec.arcs[arc].len;
        let opposite = |o: usize, j: usize| o < len && ps.color(dec.vertex_in_arc(arc, o)) != ps.color(u[j]);
        let pick_opposite = |cands: [usize; 2], j: usize| cands.into_iter().find(|&o| opposite(o, j));
        if j0 == j1 {
            off[j0] = if pred_gap(j0) { len - 1 } else { 0 };
        } else {
            off[j0] = if pred_gap(j0) { pick_opposite([0, 1], j0)? } else { 0 };
            for j in (j0 + 1)..j1 {
                off[j] = if pred_gap(j) { pick_opposite([off[j - 1], off[j - 1] + 1], j)? } else { off[j - 1] + 1 };
            }
            off[j1] = if pred_gap(j1) { len - 1 } else { off[j1 - 1] + 1 };
        }
        for j in j0..=j1 {
            if !opposite(off[j], j) || (j > j0 && off[j] < off[j - 1]) {
                return None;
            }
        }
        j0 = j1 + 1;
    }

    let m = dec.m();
    let pos = |j: usize| (dec.arcs[a[j]].start + off[j]) % m;
    let mut out = Vec::with_capacity(ps.len());
    for j in 0..g {
        if !matches!(lab.links[(j + g - 1) % g], Link::Dummy) {
            out.push(u[j]);
        }
        match lab.links[j] {
            Link::Gap => {
                let (p, q) = (pos(j), pos((j + 1) % g));
                let steps = (q + m - p) % m;
                out.extend((0..=steps).map(|i| dec.boundary[(p + i) % m]));
            }
            Link::Fixed { inner } => out.extend(inner.iter().copied()),
            Link::Dummy => {}
        }
    }
    Some(out)
}

fn hamiltonian(ps: &ColoredPointSet, cand: &[usize]) -> Option<PlaneCycle> {
    if cand.len() != ps.len() {
        return None;
    }
    validate_cycle(ps, cand).ok()
}

/// The plane Hamiltonian cycle built from a feasible selection.
pub fn construct_from_selection(
    ps: &ColoredPointSet,
    dec: &ArcDecomposition,
    f: &InitialCycle,
    sel: &ArcSelection,
) -> Result<PlaneCycle, FptError> {
    let seq = f.gap_sequence();
    check_selection_shape(dec, &seq, sel)?;
    let t = Tables::new(ps, dec);
    let frame = Frame::new(f, &seq);
    let r = feasible_rotation(&t, &frame, &sel.arcs).map_err(|e| {
        FptError::Infeasible(FeasibilityReport { feasible: false, rotation: None, failed: Some(e) })
    })?;
    construct_at(&t, &frame, &sel.arcs, r)
}

pub(crate) fn construct_at(t: &Tables, frame: &Frame, sel: &[usize], r: usize) -> Result<PlaneCycle, FptError> {
    let lab = Labeling::new(t, frame.seq, sel, r)
        .map_err(|e| FptError::Internal(format!("feasible labeling rejected on rebuild: {e}")))?;
    let cand = build(t, &lab).ok_or_else(|| FptError::Internal("feasible selection left no admissible neighbour".into()))?;
    validate_cycle(t.ps, &cand)
        .map_err(|e| FptError::Internal(format!("constructed cycle is not plane: {e}")))
        .and_then(|c| {
            if c.len() == t.ps.len() {
                Ok(c)
            } else {
                Err(FptError::Internal(format!("constructed cycle has {} of {} vertices", c.len(), t.ps.len())))
            }
        })
}

/// Runs the construction for every labeling without consulting the
/// feasibility conditions; returns the first result that is a plane
/// Hamiltonian cycle.
pub fn construct_unchecked(
    ps: &ColoredPointSet,
    dec: &ArcDecomposition,
    f: &InitialCycle,
    sel: &ArcSelection,
) -> Result<Option<PlaneCycle>, FptError> {
    let seq = f.gap_sequence();
    check_selection_shape(dec, &seq, sel)?;
    let t = Tables::new(ps, dec);
    for r in 0..seq.len() {
        let lab = Labeling::unchecked(&t, &seq, &sel.arcs, r);
        if let Some(c) = build(&t, &lab).and_then(|cand| hamiltonian(ps, &cand)) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}
