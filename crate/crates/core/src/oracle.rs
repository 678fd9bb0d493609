//! Exhaustive ground truth for small instances.
//!
//! Backtracking over vertex sequences, rooted at the smallest vertex of each
//! cycle and pruned by edge color, then by crossings. Deliberately naive: it
//! shares no code with the algorithms it is used to check beyond the exact
//! predicates.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::model::{ColoredPointSet, PlaneCycle};

/// Largest instance the oracle accepts.
pub const MAX_ORACLE_POINTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {0} points; the exhaustive oracle is capped at {MAX_ORACLE_POINTS}")]
    TooLarge(usize),
    #[error("max_len {max_len} exceeds the instance size {len}")]
    MaxLenTooLarge { max_len: usize, len: usize },
}

/// All plane cycles of an instance up to some length, in canonical form.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleInventory {
    pub by_length: BTreeMap<usize, Vec<PlaneCycle>>,
    pub rainbow: usize,
    pub non_rainbow: usize,
}

impl CycleInventory {
    pub fn total(&self) -> usize {
        self.by_length.values().map(Vec::len).sum()
    }

    pub fn count(&self, len: usize) -> usize {
        self.by_length.get(&len).map_or(0, Vec::len)
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.by_length.iter().filter(|(_, v)| !v.is_empty()).map(|(&k, _)| k).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PlaneCycle> {
        self.by_length.values().flatten()
    }
}

fn check_size(ps: &ColoredPointSet) -> Result<(), OracleError> {
    if ps.len() > MAX_ORACLE_POINTS {
        return Err(OracleError::TooLarge(ps.len()));
    }
    Ok(())
}

struct Search<'a, F> {
    ps: &'a ColoredPointSet,
    min_len: usize,
    max_len: usize,
    path: Vec<usize>,
    used: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Search<'_, F> {
    /// The edge `last -> x` must not cross any path edge except the one ending at `last`.
    fn extends(&self, x: usize) -> bool {
        let last = *self.path.last().unwrap();
        let k = self.path.len();
        (0..k.saturating_sub(2)).all(|i| !self.ps.cross(self.path[i], self.path[i + 1], last, x))
    }

    /// The closing edge `last -> path[0]` must avoid every path edge not incident to it.
    fn closes(&self) -> bool {
        let k = self.path.len();
        let (first, last) = (self.path[0], self.path[k - 1]);
        if !self.ps.is_host_edge(first, last) {
            return false;
        }
        (1..k - 2).all(|i| !self.ps.cross(self.path[i], self.path[i + 1], last, first))
    }

    fn run(&mut self) -> ControlFlow<()> {
        let k = self.path.len();
        if k >= 3.max(self.min_len) && self.path[1] < self.path[k - 1] && self.closes() {
            (self.visit)(&self.path)?;
        }
        if k == self.max_len {
            return ControlFlow::Continue(());
        }
        let root = self.path[0];
        let last = self.path[k - 1];
        for x in (root + 1)..self.ps.len() {
            if self.used[x] || !self.ps.is_host_edge(last, x) || !self.extends(x) {
                continue;
            }
            self.used[x] = true;
            self.path.push(x);
            let r = self.run();
            self.path.pop();
            self.used[x] = false;
            r?;
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` with every plane cycle of length in `min_len..=max_len`, each
/// exactly once and already in canonical form, until `visit` breaks.
pub fn for_each_plane_cycle<F>(ps: &ColoredPointSet, min_len: usize, max_len: usize, visit: F) -> Result<(), OracleError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    check_size(ps)?;
    if max_len > ps.len() {
        return Err(OracleError::MaxLenTooLarge { max_len, len: ps.len() });
    }
    let mut search = Search {
        ps,
        min_len,
        max_len,
        path: Vec::with_capacity(max_len),
        used: vec![false; ps.len()],
        visit,
    };
    for root in 0..ps.len() {
        search.used[root] = true;
        search.path.push(root);
        let r = search.run();
        search.path.pop();
        search.used[root] = false;
        if r.is_break() {
            break;
        }
    }
    Ok(())
}

/// Every plane cycle of length `3..=max_len`.
pub fn enumerate_plane_cycles(ps: &ColoredPointSet, max_len: usize) -> Result<CycleInventory, OracleError> {
    let mut inv = CycleInventory::default();
    for_each_plane_cycle(ps, 3, max_len, |cycle| {
        let c = PlaneCycle::new_unchecked(cycle.to_vec());
        if c.is_rainbow(ps) {
            inv.rainbow += 1;
        } else {
            inv.non_rainbow += 1;
        }
        inv.by_length.entry(cycle.len()).or_default().push(c);
        ControlFlow::Continue(())
    })?;
    for v in inv.by_length.values_mut() {
        v.sort();
    }
    Ok(inv)
}

/// First plane cycle (in search order) satisfying `pred`, if any.
pub fn find_plane_cycle<P>(ps: &ColoredPointSet, min_len: usize, max_len: usize, mut pred: P) -> Result<Option<PlaneCycle>, OracleError>
where
    P: FnMut(&[usize]) -> bool,
{
    let mut found = None;
    for_each_plane_cycle(ps, min_len, max_len, |cycle| {
        if pred(cycle) {
            found = Some(PlaneCycle::new_unchecked(cycle.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// `true` iff some plane cycle has two vertices of the same color.
pub fn has_nonrainbow_cycle(ps: &ColoredPointSet) -> Result<bool, OracleError> {
    Ok(find_plane_cycle(ps, 3, ps.len(), |c| {
        let mut seen = vec![false; ps.color_count()];
        c.iter().any(|&v| std::mem::replace(&mut seen[ps.color(v) as usize], true))
    })?
    .is_some())
}

/// First plane Hamiltonian cycle in canonical enumeration order.
pub fn brute_hamiltonian(ps: &ColoredPointSet) -> Result<Option<PlaneCycle>, OracleError> {
    check_size(ps)?;
    if ps.len() < 3 {
        return Ok(None);
    }
    find_plane_cycle(ps, ps.len(), ps.len(), |_| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_cycle;

    #[test]
    fn alternating_square_has_one_cycle() {
        let ps = ColoredPointSet::from_triples(&[(0, 0, 0), (1, 0, 1), (1, 1, 0), (0, 1, 1)]).unwrap();
        let inv = enumerate_plane_cycles(&ps, 4).unwrap();
        assert_eq!(inv.total(), 1);
        assert_eq!(inv.by_length[&4][0].vertices(), &[0, 1, 2, 3]);
        assert_eq!(inv.non_rainbow, 1);
    }

    #[test]
    fn rainbow_triangle() {
        let ps = ColoredPointSet::from_triples(&[(0, 0, 0), (4, 0, 1), (1, 3, 2)]).unwrap();
        let inv = enumerate_plane_cycles(&ps, 3).unwrap();
        assert_eq!(inv.total(), 1);
        assert_eq!(inv.rainbow, 1);
    }

    #[test]
    fn separated_classes_have_no_cycle() {
        let ps = ColoredPointSet::from_triples(&[(0, 0, 0), (1, 1, 0), (2, 0, 0), (0, 50, 1), (1, 51, 1), (2, 50, 1)])
            .unwrap();
        assert_eq!(enumerate_plane_cycles(&ps, 6).unwrap().total(), 0);
    }

    #[test]
    fn hamiltonian_examples() {
        let ps = ColoredPointSet::from_triples(&[(0, 0, 0), (1, 0, 1), (1, 1, 0), (0, 1, 1)]).unwrap();
        assert_eq!(brute_hamiltonian(&ps).unwrap().unwrap().vertices(), &[0, 1, 2, 3]);
        let rrbb = ColoredPointSet::from_triples(&[(0, 0, 0), (1, 0, 0), (1, 1, 1), (0, 1, 1)]).unwrap();
        assert_eq!(brute_hamiltonian(&rrbb).unwrap(), None);
    }

    #[test]
    fn size_cap() {
        let triples: Vec<_> = (0..13).map(|i| (i, i * i, (i % 2) as u32)).collect();
        let ps = ColoredPointSet::from_triples(&triples).unwrap();
        assert_eq!(enumerate_plane_cycles(&ps, 4), Err(OracleError::TooLarge(13)));
    }

    #[test]
    fn inventory_members_validate_and_are_canonical() {
        let ps = ColoredPointSet::from_triples(&[
            (0, 0, 0),
            (10, 1, 1),
            (12, 9, 2),
            (3, 11, 0),
            (-4, 6, 1),
            (5, 5, 2),
            (6, -3, 1),
        ])
        .unwrap();
        let inv = enumerate_plane_cycles(&ps, 7).unwrap();
        assert!(inv.total() > 0);
        for c in inv.iter() {
            assert!(validate_cycle(&ps, c.vertices()).is_ok());
            assert_eq!(c.canonical(), *c);
        }
    }
}
