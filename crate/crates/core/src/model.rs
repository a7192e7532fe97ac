//! Instances, tours, stacking orders and solutions, together with the two
//! independent feasibility checks for a (pickup tour, delivery tour, stacks)
//! triple.
//!
//! Conventions: the depot is index 0 and never appears in a [`Tour`]; items
//! are `1..=n`. Stacks are listed bottom to top.

use crate::error::{Error, Result};

/// Integer distance or tour length.
pub type Cost = u64;

/// Dense square distance matrix over `{0} ∪ [n]`. Diagonal entries are never
/// read by any operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    side: usize,
    data: Vec<Cost>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<Cost>>) -> Result<Self> {
        let side = rows.len();
        if side == 0 {
            return Err(Error::InvalidInstance("empty distance matrix".into()));
        }
        let mut data = Vec::with_capacity(side * side);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != side {
                return Err(Error::InvalidInstance(format!(
                    "row {i} has {} entries, expected {side}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Self { side, data })
    }

    /// Builds a matrix of the given side by evaluating `f(u, v)` for every
    /// off-diagonal pair. Diagonal entries are set to 0.
    pub fn from_fn(side: usize, mut f: impl FnMut(usize, usize) -> Cost) -> Self {
        let mut data = vec![0; side * side];
        for u in 0..side {
            for v in 0..side {
                if u != v {
                    data[u * side + v] = f(u, v);
                }
            }
        }
        Self { side, data }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Cost {
        self.data[u * self.side + v]
    }

    pub fn rows(&self) -> Vec<Vec<Cost>> {
        self.data.chunks(self.side).map(<[Cost]>::to_vec).collect()
    }

    /// The matrix with every arc reversed: `result(a, b) = self(b, a)`.
    pub fn transposed(&self) -> Self {
        Self::from_fn(self.side, |u, v| self.get(v, u))
    }

    pub fn scaled(&self, factor: Cost) -> Self {
        Self {
            side: self.side,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }
}

/// A kSTSP instance: `n` items, `k` stacks, pickup distances `d1` and delivery
/// distances `d2`, both of side `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    k: usize,
    d1: DistanceMatrix,
    d2: DistanceMatrix,
}

impl Instance {
    pub fn new(n: usize, k: usize, d1: DistanceMatrix, d2: DistanceMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("item count must be positive".into()));
        }
        if k == 0 {
            return Err(Error::InvalidInstance(
                "stack count must be positive".into(),
            ));
        }
        for (name, d) in [("d1", &d1), ("d2", &d2)] {
            if d.side() != n + 1 {
                return Err(Error::InvalidInstance(format!(
                    "{name} has side {}, expected {}",
                    d.side(),
                    n + 1
                )));
            }
        }
        Ok(Self { n, k, d1, d2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d1(&self) -> &DistanceMatrix {
        &self.d1
    }

    pub fn d2(&self) -> &DistanceMatrix {
        &self.d2
    }

    /// Same distances with a different stack count.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.n, k, self.d1.clone(), self.d2.clone())
    }

    /// Evaluates `d1(t1) + d2(t2)`.
    pub fn solution_value(&self, t1: &Tour, t2: &Tour) -> Result<Cost> {
        Ok(tour_cost(t1, &self.d1)? + tour_cost(t2, &self.d2)?)
    }
}

/// A visiting order of items `1..=n`; the depot is implicit at both ends.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tour {
    seq: Vec<usize>,
}

impl Tour {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        if n == 0 {
            return Err(Error::InvalidTour(
                "a tour must visit at least one item".into(),
            ));
        }
        let mut seen = vec![false; n + 1];
        for &item in &seq {
            if item == 0 || item > n {
                return Err(Error::InvalidTour(format!("item {item} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[item], true) {
                return Err(Error::InvalidTour(format!("item {item} visited twice")));
            }
        }
        Ok(Self { seq })
    }

    /// The tour `(1, 2, ..., n)`.
    pub fn identity(n: usize) -> Self {
        Self {
            seq: (1..=n).collect(),
        }
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self {
            seq: self.seq.iter().rev().copied().collect(),
        }
    }

    /// `rank[item]` is the 0-based position of `item` in the tour; index 0 is
    /// unused.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![usize::MAX; self.seq.len() + 1];
        for (pos, &item) in self.seq.iter().enumerate() {
            rank[item] = pos;
        }
        rank
    }
}

/// Partition of the items into ordered stacks, each listed bottom to top.
/// Empty stacks are allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StackingOrder {
    stacks: Vec<Vec<usize>>,
}

impl StackingOrder {
    pub fn new(stacks: Vec<Vec<usize>>) -> Result<Self> {
        if stacks.is_empty() {
            return Err(Error::InvalidStacking(
                "at least one stack is required".into(),
            ));
        }
        let n: usize = stacks.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::InvalidStacking("no items stacked".into()));
        }
        let mut seen = vec![false; n + 1];
        for &item in stacks.iter().flatten() {
            if item == 0 || item > n {
                return Err(Error::InvalidStacking(format!(
                    "item {item} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[item], true) {
                return Err(Error::InvalidStacking(format!("item {item} stacked twice")));
            }
        }
        Ok(Self { stacks })
    }

    pub fn stacks(&self) -> &[Vec<usize>] {
        &self.stacks
    }

    pub fn into_stacks(self) -> Vec<Vec<usize>> {
        self.stacks
    }

    /// Total number of items.
    pub fn n(&self) -> usize {
        self.stacks.iter().map(Vec::len).sum()
    }

    pub fn stack_count(&self) -> usize {
        self.stacks.len()
    }

    pub fn nonempty_count(&self) -> usize {
        self.stacks.iter().filter(|s| !s.is_empty()).count()
    }

    /// Every stack read top to bottom.
    pub fn reversed_stacks(&self) -> Self {
        Self {
            stacks: self
                .stacks
                .iter()
                .map(|s| s.iter().rev().copied().collect())
                .collect(),
        }
    }

    /// Pads with empty stacks up to `k` stacks.
    pub fn padded_to(mut self, k: usize) -> Self {
        while self.stacks.len() < k {
            self.stacks.push(Vec::new());
        }
        self
    }

    /// `(stack index, height from the bottom)` of every item, indexed by item.
    fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); self.n() + 1];
        for (s, stack) in self.stacks.iter().enumerate() {
            for (h, &item) in stack.iter().enumerate() {
                pos[item] = (s, h);
            }
        }
        pos
    }
}

/// A complete solution with its total value `d1(t1) + d2(t2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub t1: Tour,
    pub t2: Tour,
    pub stacking: StackingOrder,
    pub value: Cost,
}

impl Solution {
    /// Assembles a solution, computing its value from the instance and
    /// rejecting infeasible triples.
    pub fn assemble(inst: &Instance, t1: Tour, t2: Tour, stacking: StackingOrder) -> Result<Self> {
        if stacking.nonempty_count() > inst.k() {
            return Err(Error::InvalidStacking(format!(
                "{} nonempty stacks but the instance allows {}",
                stacking.nonempty_count(),
                inst.k()
            )));
        }
        if !check_triple_feasible(&t1, &t2, &stacking)? {
            return Err(Error::InvalidParameter(
                "tours are not compatible with the stacking order".into(),
            ));
        }
        let value = inst.solution_value(&t1, &t2)?;
        Ok(Self {
            t1,
            t2,
            stacking,
            value,
        })
    }
}

/// `d(0, u1) + Σ d(ui, ui+1) + d(un, 0)`.
pub fn tour_cost(tour: &Tour, d: &DistanceMatrix) -> Result<Cost> {
    if tour.len() + 1 != d.side() {
        return Err(Error::DimensionMismatch {
            items: tour.len(),
            side: d.side(),
        });
    }
    let seq = tour.seq();
    let inner: Cost = seq.windows(2).map(|w| d.get(w[0], w[1])).sum();
    Ok(d.get(0, seq[0]) + inner + d.get(seq[seq.len() - 1], 0))
}

fn ensure_same_items(t1: &Tour, t2: &Tour, p: &StackingOrder) -> Result<()> {
    if t1.len() != t2.len() || t1.len() != p.n() {
        return Err(Error::ItemSetMismatch(format!(
            "pickup tour has {} items, delivery tour {}, stacks {}",
            t1.len(),
            t2.len(),
            p.n()
        )));
    }
    Ok(())
}

/// Order-based feasibility check. Items on one stack must be picked up bottom
/// to top and delivered top to bottom; items on distinct stacks are
/// unconstrained. Both orders are transitive, so comparing neighbouring stack
/// slots suffices and the check is linear.
pub fn check_triple_feasible(t1: &Tour, t2: &Tour, p: &StackingOrder) -> Result<bool> {
    ensure_same_items(t1, t2, p)?;
    let pick = t1.ranks();
    let deliver = t2.ranks();
    Ok(p.stacks().iter().all(|stack| {
        stack
            .windows(2)
            .all(|w| pick[w[0]] < pick[w[1]] && deliver[w[0]] > deliver[w[1]])
    }))
}

/// Replays the pickup tour as pushes and the delivery tour as pops on `k`
/// explicit stacks.
pub fn simulate_triple(t1: &Tour, t2: &Tour, p: &StackingOrder) -> Result<bool> {
    ensure_same_items(t1, t2, p)?;
    let slot = p.positions();
    let mut containers: Vec<Vec<usize>> = vec![Vec::new(); p.stack_count()];
    for &item in t1.seq() {
        let (s, height) = slot[item];
        if containers[s].len() != height {
            return Ok(false);
        }
        containers[s].push(item);
    }
    for &item in t2.seq() {
        let (s, _) = slot[item];
        if containers[s].last() != Some(&item) {
            return Ok(false);
        }
        containers[s].pop();
    }
    Ok(true)
}
