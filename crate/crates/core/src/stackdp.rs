//! Optimal tours for a fixed stacking order.
//!
//! A pickup tour compatible with the stacks reads every stack bottom to top,
//! so the set of collected items is fully described by how many items have
//! been taken from each stack. The DP runs over that product state space with
//! one label per (state, last stack used), layer by layer in the number of
//! collected items.

use crate::error::{Error, Result};
use crate::model::{Cost, DistanceMatrix, Instance, Solution, StackingOrder, Tour};

/// DP state: number of items already collected from each stack.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DpState {
    pub counts: Vec<usize>,
}

impl DpState {
    /// Number of collected items.
    pub fn layer(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Best cost of reaching a state ending on a given stack, and the stack used
/// just before. `cost == None` stands for an unreachable label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpLabel {
    pub cost: Option<Cost>,
    pub parent_stack: Option<usize>,
}

const UNREACHABLE: DpLabel = DpLabel {
    cost: None,
    parent_stack: None,
};

/// Mixed-radix indexing of the state space over the nonempty stacks.
struct StateSpace<'a> {
    stacks: Vec<&'a [usize]>,
    strides: Vec<usize>,
    size: usize,
}

impl<'a> StateSpace<'a> {
    fn new(stacks: Vec<&'a [usize]>) -> Self {
        let mut strides = Vec::with_capacity(stacks.len());
        let mut size = 1usize;
        for s in &stacks {
            strides.push(size);
            size *= s.len() + 1;
        }
        Self {
            stacks,
            strides,
            size,
        }
    }

    fn width(&self) -> usize {
        self.stacks.len()
    }

    fn count(&self, index: usize, stack: usize) -> usize {
        (index / self.strides[stack]) % (self.stacks[stack].len() + 1)
    }

    fn decode(&self, index: usize) -> DpState {
        DpState {
            counts: (0..self.width()).map(|l| self.count(index, l)).collect(),
        }
    }

    /// State indices bucketed by layer.
    fn layers(&self, n: usize) -> Vec<Vec<usize>> {
        let mut layers = vec![Vec::new(); n + 1];
        for index in 0..self.size {
            let layer = (0..self.width())
                .map(|l| self.count(index, l))
                .sum::<usize>();
            layers[layer].push(index);
        }
        layers
    }

    /// Last item collected from `stack` in state `index` (requires a nonzero
    /// count).
    fn top(&self, index: usize, stack: usize) -> usize {
        self.stacks[stack][self.count(index, stack) - 1]
    }
}

/// Full label table of the pickup DP; kept public so the layer structure can
/// be inspected.
pub struct LabelTable {
    /// Nonempty stacks in the canonical order used by the DP.
    pub stacks: Vec<Vec<usize>>,
    /// `labels[state * width + stack]`.
    pub labels: Vec<DpLabel>,
    pub states: Vec<DpState>,
    /// Index of the final state.
    pub final_state: usize,
}

impl LabelTable {
    pub fn width(&self) -> usize {
        self.stacks.len()
    }

    pub fn label(&self, state: usize, stack: usize) -> DpLabel {
        self.labels[state * self.width() + stack]
    }

    /// Index of the state obtained by taking back the last item of `stack`.
    pub fn predecessor(&self, state: usize, stack: usize) -> usize {
        let stride: usize = self.stacks[..stack].iter().map(|s| s.len() + 1).product();
        state - stride
    }
}

/// Nonempty stacks sorted by bottom item. Bottom items are distinct, so the
/// order does not depend on how the caller numbered the stacks.
fn canonical_stacks(p: &StackingOrder) -> Vec<&[usize]> {
    let mut stacks: Vec<&[usize]> = p
        .stacks()
        .iter()
        .filter(|s| !s.is_empty())
        .map(Vec::as_slice)
        .collect();
    stacks.sort_by_key(|s| s[0]);
    stacks
}

fn validate(p: &StackingOrder, d: &DistanceMatrix) -> Result<()> {
    if p.n() + 1 != d.side() {
        return Err(Error::DimensionMismatch {
            items: p.n(),
            side: d.side(),
        });
    }
    Ok(())
}

fn compute_labels(space: &StateSpace, n: usize, d1: &DistanceMatrix) -> Vec<DpLabel> {
    let width = space.width();
    let mut labels = vec![UNREACHABLE; space.size * width];
    let final_state = space.size - 1;

    for (l, stack) in space.stacks.iter().enumerate() {
        let closing = if n == 1 { d1.get(stack[0], 0) } else { 0 };
        labels[space.strides[l] * width + l] = DpLabel {
            cost: Some(d1.get(0, stack[0]) + closing),
            parent_stack: None,
        };
    }

    for layer in space.layers(n).iter().skip(2) {
        for &state in layer {
            for l in 0..width {
                if space.count(state, l) == 0 {
                    continue;
                }
                let item = space.top(state, l);
                let prev = state - space.strides[l];
                let mut best = UNREACHABLE;
                for lp in 0..width {
                    let Some(cost) = labels[prev * width + lp].cost else {
                        continue;
                    };
                    let cost = cost + d1.get(space.top(prev, lp), item);
                    // strict improvement keeps the smallest previous stack on ties
                    if best.cost.is_none_or(|b| cost < b) {
                        best = DpLabel {
                            cost: Some(cost),
                            parent_stack: Some(lp),
                        };
                    }
                }
                if state == final_state {
                    best.cost = best.cost.map(|c| c + d1.get(item, 0));
                }
                labels[state * width + l] = best;
            }
        }
    }
    labels
}

/// Runs the label DP and returns the full table. Closing arcs back to the
/// depot are added on the final state only.
pub fn pickup_label_table(p: &StackingOrder, d1: &DistanceMatrix) -> Result<LabelTable> {
    validate(p, d1)?;
    let space = StateSpace::new(canonical_stacks(p));
    let labels = compute_labels(&space, p.n(), d1);
    Ok(LabelTable {
        stacks: space.stacks.iter().map(|s| s.to_vec()).collect(),
        states: (0..space.size).map(|i| space.decode(i)).collect(),
        labels,
        final_state: space.size - 1,
    })
}

/// Cheapest pickup tour that reads every stack bottom to top, with its cost.
/// Ties are broken towards the smallest stack in canonical order, both in the
/// recurrence and in the final argmin.
pub fn optimal_pickup_tour(p: &StackingOrder, d1: &DistanceMatrix) -> Result<(Tour, Cost)> {
    validate(p, d1)?;
    let space = StateSpace::new(canonical_stacks(p));
    let labels = compute_labels(&space, p.n(), d1);
    let width = space.width();
    let final_state = space.size - 1;

    let mut best: Option<(usize, Cost)> = None;
    for l in 0..width {
        if let Some(c) = labels[final_state * width + l].cost {
            if best.is_none_or(|(_, b)| c < b) {
                best = Some((l, c));
            }
        }
    }
    let (mut stack, cost) = best.expect("final state is reachable for a nonempty stacking order");

    let mut seq = Vec::with_capacity(p.n());
    let mut state = final_state;
    loop {
        seq.push(space.top(state, stack));
        match labels[state * width + stack].parent_stack {
            Some(prev_stack) => {
                state -= space.strides[stack];
                stack = prev_stack;
            }
            None => break,
        }
    }
    seq.reverse();
    Ok((Tour::new(seq)?, cost))
}

/// Cheapest delivery tour that empties every stack top to bottom: the pickup
/// DP run on the reversed stacks.
pub fn optimal_delivery_tour(p: &StackingOrder, d2: &DistanceMatrix) -> Result<(Tour, Cost)> {
    optimal_pickup_tour(&p.reversed_stacks(), d2)
}

/// Both optimal tours for a fixed stacking order. Once the stacks are fixed
/// the two tours are independent.
pub fn optimal_tours_given_stacks(inst: &Instance, p: &StackingOrder) -> Result<Solution> {
    if p.n() != inst.n() {
        return Err(Error::ItemSetMismatch(format!(
            "stacking order holds {} items, instance has {}",
            p.n(),
            inst.n()
        )));
    }
    if p.nonempty_count() > inst.k() {
        return Err(Error::InvalidStacking(format!(
            "{} nonempty stacks but the instance allows {}",
            p.nonempty_count(),
            inst.k()
        )));
    }
    let (t1, c1) = optimal_pickup_tour(p, inst.d1())?;
    let (t2, c2) = optimal_delivery_tour(p, inst.d2())?;
    Ok(Solution {
        t1,
        t2,
        stacking: p.clone(),
        value: c1 + c2,
    })
}
