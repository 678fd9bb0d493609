use crate::model::ColoredPointSet;

use super::arcs::ArcDecomposition;

/// A directed spanning cycle on the interior vertices with some edges marked as gaps.
///
/// Edge `i` runs from `order[i]` to `order[(i + 1) % order.len()]`; with two
/// interior vertices the cycle has the two opposite edges between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialCycle {
    pub order: Vec<usize>,
    pub gaps: Vec<bool>,
}

/// How consecutive gap vertices `u_i, u_{i+1}` are joined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Link {
    /// To be replaced by a counterclockwise boundary path.
    Gap,
    /// A path of fixed edges; `inner` lists the interior vertices strictly between.
    Fixed { inner: Vec<usize> },
    /// Zero-length edge between two copies of one vertex incident to two gaps.
    Dummy,
}

impl Link {
    pub fn is_gap(&self) -> bool {
        matches!(self, Link::Gap)
    }
}

/// Gap vertices in cycle order, starting with the tail of the first gap.
/// `links[i]` joins `vertices[i]` to `vertices[(i + 1) % g]`; gaps and
/// non-gaps alternate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSequence {
    pub vertices: Vec<usize>,
    pub links: Vec<Link>,
}

impl GapSequence {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

impl InitialCycle {
    pub fn edge(&self, i: usize) -> (usize, usize) {
        (self.order[i], self.order[(i + 1) % self.order.len()])
    }

    pub fn edge_count(&self) -> usize {
        self.gaps.len()
    }

    /// Fixed edges, each once (for two interior vertices both directions are the same segment).
    pub fn fixed_edges(&self) -> Vec<(usize, usize)> {
        (0..self.edge_count()).filter(|&i| !self.gaps[i]).map(|i| self.edge(i)).collect()
    }

    /// The gap vertex sequence after inserting dummy edges.
    pub fn gap_sequence(&self) -> GapSequence {
        let l = self.edge_count();
        let gap_idx: Vec<usize> = (0..l).filter(|&i| self.gaps[i]).collect();
        let mut vertices = Vec::with_capacity(2 * gap_idx.len());
        let mut links = Vec::with_capacity(2 * gap_idx.len());
        for (n, &i) in gap_idx.iter().enumerate() {
            let (x, y) = self.edge(i);
            vertices.push(x);
            links.push(Link::Gap);
            vertices.push(y);
            let next = gap_idx[(n + 1) % gap_idx.len()];
            let end = (i + 1) % l;
            if next == end {
                links.push(Link::Dummy);
            } else {
                // Fixed edges end, end+1, ..., next-1; inner vertices order[end+1 ..= next-1].
                let steps = (next + l - end) % l;
                let inner = (1..steps).map(|j| self.order[(end + j) % l]).collect();
                links.push(Link::Fixed { inner });
            }
        }
        GapSequence { vertices, links }
    }

    fn is_valid(&self, ps: &ColoredPointSet) -> bool {
        if !self.gaps.iter().any(|&g| g) {
            return false;
        }
        let fixed = self.fixed_edges();
        if fixed.iter().any(|&(a, b)| !ps.is_host_edge(a, b)) {
            return false;
        }
        for (i, &(a, b)) in fixed.iter().enumerate() {
            for &(c, d) in &fixed[i + 1..] {
                if ps.cross(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }
}

/// Lexicographic permutations of `rest`, each prefixed by `first`.
fn cyclic_orders(first: usize, rest: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![first];
    let mut used = vec![false; rest.len()];
    fn go(rest: &[usize], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == rest.len() + 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            if !used[i] {
                used[i] = true;
                cur.push(rest[i]);
                go(rest, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    go(rest, &mut used, &mut cur, &mut out);
    out
}

/// Nonempty gap sets over `l` edges, by size and then lexicographically.
fn gap_sets(l: usize) -> Vec<Vec<bool>> {
    let mut sets: Vec<Vec<usize>> = (1u32..(1 << l))
        .map(|mask| (0..l).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.into_iter()
        .map(|s| {
            let mut g = vec![false; l];
            for i in s {
                g[i] = true;
            }
            g
        })
        .collect()
}

/// Every initial cycle of the interior: directed spanning cycles starting at
/// the smallest interior vertex, in lexicographic order, each with every
/// nonempty gap set whose fixed edges are noncrossing host edges.
pub fn enumerate_initial_cycles(ps: &ColoredPointSet, dec: &ArcDecomposition) -> Vec<InitialCycle> {
    let interior = &dec.interior;
    if interior.len() < 2 {
        return Vec::new();
    }
    let l = interior.len();
    let sets = gap_sets(l);
    let mut out = Vec::new();
    for order in cyclic_orders(interior[0], &interior[1..]) {
        for gaps in &sets {
            let f = InitialCycle { order: order.clone(), gaps: gaps.clone() };
            if f.is_valid(ps) {
                out.push(f);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpt::arcs::compute_arcs;

    fn set(t: &[(i64, i64, u32)]) -> ColoredPointSet {
        ColoredPointSet::from_triples(t).unwrap()
    }

    #[test]
    fn two_interior_vertices() {
        let ps = set(&[(0, 0, 1), (10, 0, 0), (10, 10, 1), (0, 10, 0), (4, 5, 0), (6, 5, 1)]);
        let d = compute_arcs(&ps).unwrap();
        let fs = enumerate_initial_cycles(&ps, &d);
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0].gaps, vec![true, false]);
        assert_eq!(fs[1].gaps, vec![false, true]);
        assert_eq!(fs[2].gaps, vec![true, true]);
        let seq = fs[2].gap_sequence();
        assert_eq!(seq.vertices, vec![4, 5, 5, 4]);
        assert_eq!(seq.links, vec![Link::Gap, Link::Dummy, Link::Gap, Link::Dummy]);
        let seq = fs[0].gap_sequence();
        assert_eq!(seq.vertices, vec![4, 5]);
        assert_eq!(seq.links, vec![Link::Gap, Link::Fixed { inner: vec![] }]);
    }

    #[test]
    fn same_colored_interior_pair_never_fixed() {
        let ps = set(&[(0, 0, 1), (10, 0, 0), (10, 10, 1), (0, 10, 0), (4, 5, 0), (6, 5, 0), (5, 2, 1), (5, 8, 1)]);
        let d = compute_arcs(&ps).unwrap();
        assert_eq!(d.k(), 4);
        for f in enumerate_initial_cycles(&ps, &d) {
            for (a, b) in f.fixed_edges() {
                assert_ne!(ps.color(a), ps.color(b));
            }
        }
    }

    #[test]
    fn three_interior_mutually_connected_recount() {
        // Interior colors 0, 1, 0. Recount by brute force: every directed order from the
        // smallest vertex times every nonempty mask, filtered by the color rule.
        let ps = set(&[
            (0, 0, 0),
            (20, 0, 1),
            (20, 20, 0),
            (0, 20, 1),
            (30, 10, 1),
            (8, 7, 0),
            (12, 9, 1),
            (10, 13, 0),
        ]);
        let d = compute_arcs(&ps).unwrap();
        assert_eq!(d.k(), 3);
        let fs = enumerate_initial_cycles(&ps, &d);
        let i = &d.interior;
        let mut expected = 0;
        for order in [[i[0], i[1], i[2]], [i[0], i[2], i[1]]] {
            for mask in 1u32..8 {
                let fixed: Vec<(usize, usize)> =
                    (0..3).filter(|e| mask & (1 << e) == 0).map(|e| (order[e], order[(e + 1) % 3])).collect();
                if fixed.iter().all(|&(a, b)| ps.color(a) != ps.color(b)) {
                    expected += 1;
                }
            }
        }
        assert_eq!(fs.len(), expected);
        // Edges among three points never cross; each order must keep its one
        // monochromatic edge as a gap, leaving 4 of 7 masks.
        assert_eq!(expected, 2 * 4);
    }

    #[test]
    fn gap_sequence_with_fixed_path() {
        let f = InitialCycle { order: vec![10, 11, 12, 13], gaps: vec![false, true, false, false] };
        let seq = f.gap_sequence();
        assert_eq!(seq.vertices, vec![11, 12]);
        assert_eq!(seq.links, vec![Link::Gap, Link::Fixed { inner: vec![13, 10] }]);
    }
}
