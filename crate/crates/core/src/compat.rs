//! Compatibility of a tour pair: the conflict graph, its minimum coloring and
//! stack synthesis.
//!
//! Two items conflict when the pickup tour and the delivery tour visit them in
//! the same relative order: they can then never share a stack. Orienting each
//! conflict from the earlier to the later item gives a transitive orientation,
//! so a chain in that orientation is a common subsequence of the two visiting
//! sequences and the minimum number of stacks equals the longest such chain.

use crate::error::{Error, Result};
use crate::model::{StackingOrder, Tour};

/// Conflict graph of a tour pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    n: usize,
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    pickup_rank: Vec<usize>,
    delivery_rank: Vec<usize>,
}

impl ConflictGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Items involved in at least one conflict, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Conflicting pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn pickup_rank(&self, item: usize) -> usize {
        self.pickup_rank[item]
    }

    pub fn delivery_rank(&self, item: usize) -> usize {
        self.delivery_rank[item]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && concordant(&self.pickup_rank, &self.delivery_rank, a, b)
    }

    /// Whether `(a, b)` is an arc of the transitive orientation, i.e. `a` is
    /// visited before `b` by both tours.
    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        a != b
            && self.pickup_rank[a] < self.pickup_rank[b]
            && self.delivery_rank[a] < self.delivery_rank[b]
    }
}

fn concordant(pick: &[usize], deliver: &[usize], a: usize, b: usize) -> bool {
    (pick[a] < pick[b]) == (deliver[a] < deliver[b])
}

fn ensure_same_items(t1: &Tour, t2: &Tour) -> Result<()> {
    if t1.len() != t2.len() {
        return Err(Error::ItemSetMismatch(format!(
            "pickup tour has {} items, delivery tour {}",
            t1.len(),
            t2.len()
        )));
    }
    Ok(())
}

pub fn build_conflict_graph(t1: &Tour, t2: &Tour) -> Result<ConflictGraph> {
    ensure_same_items(t1, t2)?;
    let n = t1.len();
    let pickup_rank = t1.ranks();
    let delivery_rank = t2.ranks();
    let mut edges = Vec::new();
    let mut in_graph = vec![false; n + 1];
    for a in 1..=n {
        for b in a + 1..=n {
            if concordant(&pickup_rank, &delivery_rank, a, b) {
                edges.push((a, b));
                in_graph[a] = true;
                in_graph[b] = true;
            }
        }
    }
    let vertices = (1..=n).filter(|&v| in_graph[v]).collect();
    Ok(ConflictGraph {
        n,
        vertices,
        edges,
        pickup_rank,
        delivery_rank,
    })
}

/// A minimum proper coloring of a conflict graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    chi: usize,
    color: Vec<Option<usize>>,
}

impl Coloring {
    /// Chromatic number; 0 for a graph without vertices.
    pub fn chi(&self) -> usize {
        self.chi
    }

    /// Color in `1..=chi` of a conflicting item, `None` for the others.
    pub fn color_of(&self, item: usize) -> Option<usize> {
        self.color.get(item).copied().flatten()
    }
}

/// Prefix-maximum Fenwick tree over delivery ranks.
struct PrefixMax {
    tree: Vec<usize>,
}

impl PrefixMax {
    fn new(len: usize) -> Self {
        Self {
            tree: vec![0; len + 1],
        }
    }

    /// Maximum over positions `0..end`.
    fn query(&self, end: usize) -> usize {
        let mut i = end;
        let mut best = 0;
        while i > 0 {
            best = best.max(self.tree[i]);
            i &= i - 1;
        }
        best
    }

    fn update(&mut self, pos: usize, value: usize) {
        let mut i = pos + 1;
        while i < self.tree.len() {
            self.tree[i] = self.tree[i].max(value);
            i += i & i.wrapping_neg();
        }
    }
}

/// Length of the longest oriented chain ending at each item, indexed by item.
/// Items are scanned in pickup order and each one extends the best chain among
/// earlier items with a smaller delivery rank (patience-style, `O(n log n)`).
fn chain_ranks(pickup_order: &[usize], delivery_rank: &[usize]) -> Vec<usize> {
    let n = pickup_order.len();
    let mut best = PrefixMax::new(n);
    let mut rank = vec![0; n + 1];
    for &item in pickup_order {
        let r = best.query(delivery_rank[item]) + 1;
        rank[item] = r;
        best.update(delivery_rank[item], r);
    }
    rank
}

/// Colors every conflicting item by the length of the longest chain of the
/// transitive orientation ending at it. Comparability graphs are perfect, so
/// the number of colors equals the largest clique and is optimal.
pub fn min_coloring(g: &ConflictGraph) -> Coloring {
    let mut pickup_order = vec![0; g.n];
    for item in 1..=g.n {
        pickup_order[g.pickup_rank[item]] = item;
    }
    let rank = chain_ranks(&pickup_order, &g.delivery_rank);
    let mut color = vec![None; g.n + 1];
    let mut chi = 0;
    for &v in &g.vertices {
        color[v] = Some(rank[v]);
        chi = chi.max(rank[v]);
    }
    Coloring { chi, color }
}

/// Chromatic number of the conflict graph of `(t1, t2)` without materializing
/// the edge set.
pub fn conflict_chromatic_number(t1: &Tour, t2: &Tour) -> Result<usize> {
    ensure_same_items(t1, t2)?;
    let longest = chain_ranks(t1.seq(), &t2.ranks())
        .into_iter()
        .max()
        .unwrap_or(0);
    // a single-item chain is not a conflict
    Ok(if longest >= 2 { longest } else { 0 })
}

/// Longest common subsequence length of the two visiting sequences, by the
/// textbook quadratic table. Serves as an independent check on the coloring.
pub fn lcs_oracle(t1: &Tour, t2: &Tour) -> Result<usize> {
    ensure_same_items(t1, t2)?;
    let (a, b) = (t1.seq(), t2.seq());
    let mut table = vec![vec![0usize; b.len() + 1]; a.len() + 1];
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            table[i][j] = if a[i - 1] == b[j - 1] {
                table[i - 1][j - 1] + 1
            } else {
                table[i - 1][j].max(table[i][j - 1])
            };
        }
    }
    Ok(table[a.len()][b.len()])
}

/// Builds a stacking order with at most `k` nonempty stacks compatible with
/// both tours, or returns `None` when the conflict graph needs more than `k`
/// colors. Conflict-free items all go to the first stack; every stack is
/// filled in pickup order. The result always has exactly `k` stacks.
pub fn stacking_from_tours(t1: &Tour, t2: &Tour, k: usize) -> Result<Option<StackingOrder>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "stack count must be positive".into(),
        ));
    }
    let g = build_conflict_graph(t1, t2)?;
    let coloring = min_coloring(&g);
    if coloring.chi() > k {
        return Ok(None);
    }
    let mut stacks = vec![Vec::new(); k];
    for &item in t1.seq() {
        let color = coloring.color_of(item).unwrap_or(1);
        stacks[color - 1].push(item);
    }
    StackingOrder::new(stacks).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_triple_feasible, simulate_triple};

    fn tour(seq: &[usize]) -> Tour {
        Tour::new(seq.to_vec()).unwrap()
    }

    #[test]
    fn conflict_graph_examples() {
        let g = build_conflict_graph(&tour(&[1, 2, 3]), &tour(&[1, 2, 3])).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (1, 3), (2, 3)]);
        assert_eq!(g.vertices(), &[1, 2, 3]);

        let g = build_conflict_graph(&tour(&[1, 2, 3]), &tour(&[3, 2, 1])).unwrap();
        assert!(g.edges().is_empty());
        assert!(g.vertices().is_empty());

        let g = build_conflict_graph(&tour(&[1, 2, 3]), &tour(&[2, 3, 1])).unwrap();
        assert_eq!(g.edges(), &[(2, 3)]);
        assert_eq!(g.vertices(), &[2, 3]);
        assert!(g.has_arc(2, 3));
        assert!(!g.has_arc(3, 2));
    }

    #[test]
    fn coloring_examples() {
        let chi = |a: &[usize], b: &[usize]| {
            min_coloring(&build_conflict_graph(&tour(a), &tour(b)).unwrap()).chi()
        };
        assert_eq!(chi(&[1, 2, 3], &[1, 2, 3]), 3);
        assert_eq!(chi(&[1, 2, 3], &[3, 2, 1]), 0);
        let c = min_coloring(&build_conflict_graph(&tour(&[1, 2, 3]), &tour(&[2, 3, 1])).unwrap());
        assert_eq!(c.chi(), 2);
        assert_ne!(c.color_of(2), c.color_of(3));
        assert_eq!(c.color_of(1), None);
    }

    #[test]
    fn lcs_examples() {
        let lcs = |a: &[usize], b: &[usize]| lcs_oracle(&tour(a), &tour(b)).unwrap();
        assert_eq!(lcs(&[1, 2, 3], &[1, 2, 3]), 3);
        assert_eq!(lcs(&[1, 2, 3], &[3, 2, 1]), 1);
        assert_eq!(lcs(&[1, 2, 3], &[2, 3, 1]), 2);
    }

    #[test]
    fn stacking_examples() {
        let p = stacking_from_tours(&tour(&[1, 2, 3]), &tour(&[3, 2, 1]), 1)
            .unwrap()
            .unwrap();
        assert_eq!(p.stacks(), &[vec![1, 2, 3]]);

        assert_eq!(
            stacking_from_tours(&tour(&[1, 2, 3]), &tour(&[1, 2, 3]), 2).unwrap(),
            None
        );

        let (t1, t2) = (tour(&[1, 2, 3]), tour(&[2, 3, 1]));
        let p = stacking_from_tours(&t1, &t2, 2).unwrap().unwrap();
        assert_eq!(p.stacks(), &[vec![1, 2], vec![3]]);
        assert!(check_triple_feasible(&t1, &t2, &p).unwrap());
        assert!(simulate_triple(&t1, &t2, &p).unwrap());
    }

    #[test]
    fn stacking_errors() {
        assert!(stacking_from_tours(&tour(&[1, 2]), &tour(&[2, 1]), 0).is_err());
        assert!(stacking_from_tours(&tour(&[1, 2]), &tour(&[2, 1, 3]), 1).is_err());
    }

    #[test]
    fn chromatic_number_shortcut_matches_coloring() {
        let pairs: [(&[usize], &[usize]); 4] = [
            (&[1, 2, 3], &[1, 2, 3]),
            (&[1, 2, 3], &[3, 2, 1]),
            (&[1, 2, 3], &[2, 3, 1]),
            (&[4, 1, 3, 2], &[1, 4, 2, 3]),
        ];
        for (a, b) in pairs {
            let (a, b) = (tour(a), tour(b));
            let g = build_conflict_graph(&a, &b).unwrap();
            assert_eq!(
                conflict_chromatic_number(&a, &b).unwrap(),
                min_coloring(&g).chi()
            );
        }
    }
}
