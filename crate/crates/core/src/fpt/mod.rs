//! Plane Hamiltonian cycles in bicolored point sets with few interior points.
//!
//! The boundary is split into critical arcs; a cycle exists iff some
//! initial cycle on the interior points admits a feasible choice of arcs
//! for its gap vertices.

mod arcs;
mod construct;
mod feasibility;
mod initial;
mod search;

use thiserror::Error;

use crate::model::{validate_cycle, ColoredPointSet, PlaneCycle};

pub use arcs::{compute_arcs, Arc, ArcDecomposition, CriticalVertex};
pub use construct::{construct_from_selection, construct_unchecked};
pub use feasibility::{check_feasible, ArcSelection, FailedCondition, FeasibilityReport};
pub use initial::{enumerate_initial_cycles, GapSequence, InitialCycle, Link};
pub use search::{plane_hamiltonian_search, HamiltonWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FptError {
    #[error("expected exactly two colors, found {0}")]
    NotBipartite(usize),
    #[error("color classes differ in size: {red} red, {blue} blue")]
    Unbalanced { red: usize, blue: usize },
    #[error("need at least two interior points, found {0}")]
    TooFewInterior(usize),
    #[error("near-convex case needs at most one interior point, found {0}")]
    TooManyInterior(usize),
    #[error("malformed selection: {0}")]
    MalformedSelection(String),
    #[error("selection is infeasible: {}", .0.failed.as_ref().map(|f| f.to_string()).unwrap_or_default())]
    Infeasible(FeasibilityReport),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Instances with at most one interior point: the boundary order, with the
/// interior point (if any) placed between the single same-colored boundary pair.
pub fn near_convex_decision(ps: &ColoredPointSet) -> Result<Option<PlaneCycle>, FptError> {
    arcs::check_bicolored(ps)?;
    let (boundary, interior) = arcs::split_boundary(ps);
    near_convex(ps, &boundary, &interior)
}

fn near_convex(ps: &ColoredPointSet, boundary: &[usize], interior: &[usize]) -> Result<Option<PlaneCycle>, FptError> {
    let m = boundary.len();
    let mono: Vec<usize> = (0..m).filter(|&i| ps.color(boundary[i]) == ps.color(boundary[(i + 1) % m])).collect();
    let cand = match (interior, mono.as_slice()) {
        ([], []) => boundary.to_vec(),
        ([v], &[i]) => {
            if ps.color(*v) == ps.color(boundary[i]) {
                return Err(FptError::Internal(format!(
                    "interior point {v} has the color of the same-colored boundary pair"
                )));
            }
            let mut c = boundary[..=i].to_vec();
            c.push(*v);
            c.extend_from_slice(&boundary[i + 1..]);
            c
        }
        ([], _) | ([_], _) => return Ok(None),
        _ => return Err(FptError::TooManyInterior(interior.len())),
    };
    validate_cycle(ps, &cand)
        .map(Some)
        .map_err(|e| FptError::Internal(format!("near-convex cycle rejected: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// At most one interior point.
    NearConvex,
    /// More same-colored boundary neighbours than interior points.
    FirstKindGuard,
    ArcSearch,
    /// Fewer than two critical arcs; plain backtracking.
    Fallback,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::NearConvex => "near-convex",
            Method::FirstKindGuard => "first-kind-guard",
            Method::ArcSearch => "arc-search",
            Method::Fallback => "fallback",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonReport {
    pub hamiltonian: bool,
    /// Present for yes-answers when construction was requested.
    pub cycle: Option<PlaneCycle>,
    pub method: Method,
    pub interior: usize,
    pub boundary: usize,
    pub first_kind: usize,
    pub arcs: usize,
    pub initial_cycles: usize,
    pub witness: Option<HamiltonWitness>,
}

/// Decides whether a balanced bicolored instance has a plane Hamiltonian
/// cycle, building one if `construct` is set.
pub fn decide_hamiltonian(ps: &ColoredPointSet, construct: bool) -> Result<HamiltonReport, FptError> {
    arcs::check_bicolored(ps)?;
    let (boundary, interior) = arcs::split_boundary(ps);
    let mut report = HamiltonReport {
        hamiltonian: false,
        cycle: None,
        method: Method::NearConvex,
        interior: interior.len(),
        boundary: boundary.len(),
        first_kind: 0,
        arcs: 0,
        initial_cycles: 0,
        witness: None,
    };
    if interior.len() <= 1 {
        let c = near_convex(ps, &boundary, &interior)?;
        report.hamiltonian = c.is_some();
        report.cycle = c.filter(|_| construct);
        return Ok(report);
    }
    let dec = arcs::decompose(ps, boundary, interior);
    report.first_kind = dec.first_kind_count();
    report.arcs = dec.arcs.len();
    if report.first_kind > dec.k() {
        report.method = Method::FirstKindGuard;
        return Ok(report);
    }
    if dec.arcs.len() < 2 {
        report.method = Method::Fallback;
        let c = plane_hamiltonian_search(ps);
        report.hamiltonian = c.is_some();
        report.cycle = c.filter(|_| construct);
        return Ok(report);
    }
    report.method = Method::ArcSearch;
    let initial = enumerate_initial_cycles(ps, &dec);
    report.initial_cycles = initial.len();
    let t = feasibility::Tables::new(ps, &dec);
    let Some(w) = search::search_all(&t, &initial) else {
        return Ok(report);
    };
    report.hamiltonian = true;
    if construct {
        let seq = w.initial.gap_sequence();
        let frame = feasibility::Frame::new(&w.initial, &seq);
        report.cycle = Some(construct::construct_at(&t, &frame, &w.selection.arcs, w.rotation)?);
    }
    report.witness = Some(w);
    Ok(report)
}
