//! Exact TSP subroutines, two independent exact kSTSP oracles for small
//! instances, the two single-TSP heuristics and the bound chain relating TSP
//! and kSTSP extremal values.

use crate::compat::{conflict_chromatic_number, stacking_from_tours};
use crate::error::{Error, Result};
use crate::model::{tour_cost, Cost, DistanceMatrix, Instance, Solution, StackingOrder, Tour};
use crate::stackdp::{optimal_delivery_tour, optimal_pickup_tour, optimal_tours_given_stacks};

/// Direction of optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Min,
    Max,
}

impl Objective {
    #[inline]
    fn improves(self, candidate: Cost, incumbent: Cost) -> bool {
        match self {
            Objective::Min => candidate < incumbent,
            Objective::Max => candidate > incumbent,
        }
    }
}

/// Which tour a heuristic fixes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Pickup,
    Delivery,
}

/// Size limits for the exponential routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest item count accepted by Held-Karp.
    pub held_karp_n: usize,
    /// Largest item count accepted by the tour-pair oracle.
    pub pairs_n: usize,
    /// Largest number of ordered stack arrangements enumerated by the
    /// stacking oracle.
    pub stack_arrangements: u128,
    /// Largest `k^n` accepted when one tour is fixed.
    pub labelings: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            held_karp_n: 16,
            pairs_n: 7,
            stack_arrangements: 1_000_000,
            labelings: 1 << 20,
        }
    }
}

fn cap_check(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        return Err(Error::CapExceeded { what, size, cap });
    }
    Ok(())
}

/// Exact minimum (or maximum) Hamiltonian tour through the depot by the
/// subset DP in `O(2^n n^2)`. Ties go to the smallest predecessor item and
/// then to the smallest final item.
pub fn held_karp(d: &DistanceMatrix, objective: Objective, caps: &Caps) -> Result<(Tour, Cost)> {
    let n = d.side().saturating_sub(1);
    if n == 0 {
        return Err(Error::InvalidInstance("no items to visit".into()));
    }
    cap_check(
        "Held-Karp item count",
        n as u128,
        caps.held_karp_n.min(31) as u128,
    )?;

    let full = (1usize << n) - 1;
    let mut value = vec![None::<Cost>; (full + 1) * n];
    let mut parent = vec![u8::MAX; (full + 1) * n];
    for j in 0..n {
        value[(1 << j) * n + j] = Some(d.get(0, j + 1));
    }
    for mask in 1..=full {
        for j in 0..n {
            if mask & (1 << j) == 0 || mask == 1 << j {
                continue;
            }
            let prev = mask ^ (1 << j);
            let mut best: Option<(Cost, usize)> = None;
            for i in 0..n {
                if prev & (1 << i) == 0 {
                    continue;
                }
                let Some(base) = value[prev * n + i] else {
                    continue;
                };
                let cand = base + d.get(i + 1, j + 1);
                if best.is_none_or(|(b, _)| objective.improves(cand, b)) {
                    best = Some((cand, i));
                }
            }
            if let Some((v, i)) = best {
                value[mask * n + j] = Some(v);
                parent[mask * n + j] = i as u8;
            }
        }
    }

    let mut best: Option<(Cost, usize)> = None;
    for j in 0..n {
        if let Some(v) = value[full * n + j] {
            let cand = v + d.get(j + 1, 0);
            if best.is_none_or(|(b, _)| objective.improves(cand, b)) {
                best = Some((cand, j));
            }
        }
    }
    let (total, mut last) = best.expect("complete graph always has a tour");

    let mut seq = Vec::with_capacity(n);
    let mut mask = full;
    loop {
        seq.push(last + 1);
        if mask == 1 << last {
            break;
        }
        let prev = parent[mask * n + last] as usize;
        mask ^= 1 << last;
        last = prev;
    }
    seq.reverse();
    Ok((Tour::new(seq)?, total))
}

/// Rearranges `seq` into the next permutation in lexicographic order; returns
/// false after the last one.
fn next_permutation(seq: &mut [usize]) -> bool {
    let Some(i) = seq.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = seq.iter().rposition(|&x| x > seq[i]).unwrap();
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

/// All tours on `n` items in lexicographic order.
pub fn all_tours(n: usize) -> Vec<Tour> {
    let mut seq: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Tour::new(seq.clone()).expect("permutation"));
        if !next_permutation(&mut seq) {
            return out;
        }
    }
}

/// Exhaustive search over all `(n!)^2` tour pairs, keeping those whose
/// conflict graph is `k`-colorable. Among equal values the lexicographically
/// smallest `(t1, t2)` wins.
pub fn exact_oracle_pairs(inst: &Instance, objective: Objective, caps: &Caps) -> Result<Solution> {
    let n = inst.n();
    cap_check(
        "tour-pair oracle item count",
        n as u128,
        caps.pairs_n as u128,
    )?;
    let tours = all_tours(n);
    let c1: Vec<Cost> = tours
        .iter()
        .map(|t| tour_cost(t, inst.d1()))
        .collect::<Result<_>>()?;
    let c2: Vec<Cost> = tours
        .iter()
        .map(|t| tour_cost(t, inst.d2()))
        .collect::<Result<_>>()?;

    // delivery tours sorted best-first so the inner scan can stop early
    let mut order: Vec<usize> = (0..tours.len()).collect();
    match objective {
        Objective::Min => order.sort_by_key(|&j| (c2[j], j)),
        Objective::Max => order.sort_by_key(|&j| (std::cmp::Reverse(c2[j]), j)),
    }

    let mut best: Option<(Cost, usize, usize)> = None;
    for i in 0..tours.len() {
        for &j in &order {
            let value = c1[i] + c2[j];
            if let Some((bv, bi, bj)) = best {
                if objective.improves(bv, value) {
                    break;
                }
                if value == bv && (i, j) > (bi, bj) {
                    continue;
                }
            }
            if conflict_chromatic_number(&tours[i], &tours[j])? <= inst.k() {
                best = Some((value, i, j));
            }
        }
    }
    let (value, i, j) = best.expect("a tour and its reversal are always compatible");
    let stacking = stacking_from_tours(&tours[i], &tours[j], inst.k())?
        .expect("pair was checked to be colorable");
    Ok(Solution {
        t1: tours[i].clone(),
        t2: tours[j].clone(),
        stacking,
        value,
    })
}

/// Number of ordered placements of `n` items into `k` labeled stacks:
/// `k (k + 1) ... (k + n - 1)`.
pub fn stack_arrangement_count(n: usize, k: usize) -> u128 {
    (0..n as u128).map(|i| k as u128 + i).product()
}

/// Exhaustive search over every placement of the items into `k` ordered
/// stacks, solving each with the fixed-stack DP.
pub fn exact_oracle_stacks(inst: &Instance, caps: &Caps) -> Result<Solution> {
    cap_check(
        "stack arrangement count",
        stack_arrangement_count(inst.n(), inst.k()),
        caps.stack_arrangements,
    )?;
    let mut stacks = vec![Vec::new(); inst.k()];
    let mut best: Option<Solution> = None;
    place_items(inst, 1, &mut stacks, &mut best)?;
    Ok(best.expect("at least one arrangement exists"))
}

fn place_items(
    inst: &Instance,
    item: usize,
    stacks: &mut Vec<Vec<usize>>,
    best: &mut Option<Solution>,
) -> Result<()> {
    if item > inst.n() {
        let p = StackingOrder::new(stacks.clone())?;
        let sol = optimal_tours_given_stacks(inst, &p)?;
        if best.as_ref().is_none_or(|b| sol.value < b.value) {
            *best = Some(sol);
        }
        return Ok(());
    }
    for s in 0..stacks.len() {
        for pos in 0..=stacks[s].len() {
            stacks[s].insert(pos, item);
            place_items(inst, item + 1, stacks, best)?;
            stacks[s].remove(pos);
        }
    }
    Ok(())
}

/// Calls `visit` with every assignment of `order` to at most `k` unlabeled
/// stacks, each stack listing its items in `order`. Stack labels are assigned
/// in first-use order, so symmetric relabelings are skipped.
fn for_each_grouping(
    order: &[usize],
    k: usize,
    visit: &mut dyn FnMut(&[Vec<usize>]) -> Result<()>,
) -> Result<()> {
    fn go(
        order: &[usize],
        k: usize,
        stacks: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> Result<()>,
    ) -> Result<()> {
        let Some((&item, rest)) = order.split_first() else {
            return visit(stacks);
        };
        for s in 0..stacks.len() {
            stacks[s].push(item);
            go(rest, k, stacks, visit)?;
            stacks[s].pop();
        }
        if stacks.len() < k {
            stacks.push(vec![item]);
            go(rest, k, stacks, visit)?;
            stacks.pop();
        }
        Ok(())
    }
    go(order, k, &mut Vec::new(), visit)
}

/// Best solution whose pickup tour is `t1`. The stack contents are enumerated
/// over all `k^n` labelings (up to relabeling); within a stack the order is
/// forced by `t1`, and the delivery tour is then optimal by the DP.
pub fn best_given_pickup(inst: &Instance, t1: &Tour, caps: &Caps) -> Result<Solution> {
    best_given_tour(inst, t1, Side::Pickup, caps)
}

/// Mirror of [`best_given_pickup`] with the delivery tour fixed.
pub fn best_given_delivery(inst: &Instance, t2: &Tour, caps: &Caps) -> Result<Solution> {
    best_given_tour(inst, t2, Side::Delivery, caps)
}

fn best_given_tour(inst: &Instance, fixed: &Tour, side: Side, caps: &Caps) -> Result<Solution> {
    if fixed.len() != inst.n() {
        return Err(Error::ItemSetMismatch(format!(
            "tour has {} items, instance has {}",
            fixed.len(),
            inst.n()
        )));
    }
    let labelings = (inst.k() as u128)
        .checked_pow(inst.n() as u32)
        .unwrap_or(u128::MAX);
    cap_check("stack labeling count", labelings, caps.labelings)?;

    let (fixed_cost, order) = match side {
        Side::Pickup => (tour_cost(fixed, inst.d1())?, fixed.seq().to_vec()),
        // bottom of each stack is the item delivered last
        Side::Delivery => (
            tour_cost(fixed, inst.d2())?,
            fixed.reversed().seq().to_vec(),
        ),
    };
    let mut best: Option<(Cost, Tour, Vec<Vec<usize>>)> = None;
    for_each_grouping(&order, inst.k(), &mut |stacks| {
        let p = StackingOrder::new(stacks.to_vec())?;
        let (free, cost) = match side {
            Side::Pickup => optimal_delivery_tour(&p, inst.d2())?,
            Side::Delivery => optimal_pickup_tour(&p, inst.d1())?,
        };
        if best.as_ref().is_none_or(|(b, _, _)| cost < *b) {
            best = Some((cost, free, stacks.to_vec()));
        }
        Ok(())
    })?;
    let (cost, free, stacks) = best.expect("at least one grouping exists");
    let stacking = StackingOrder::new(stacks)?.padded_to(inst.k());
    let (t1, t2) = match side {
        Side::Pickup => (fixed.clone(), free),
        Side::Delivery => (free, fixed.clone()),
    };
    Ok(Solution {
        t1,
        t2,
        stacking,
        value: fixed_cost + cost,
    })
}

/// Fixes one tour at its single-TSP optimum and completes it optimally.
pub fn tws(inst: &Instance, side: Side, caps: &Caps) -> Result<Solution> {
    let d = match side {
        Side::Pickup => inst.d1(),
        Side::Delivery => inst.d2(),
    };
    let (fixed, _) = held_karp(d, Objective::Min, caps)?;
    tws_from(inst, side, &fixed, caps)
}

/// TWS with a caller-chosen fixed tour, e.g. `(1, 2, ..., n)` when several
/// TSP optima tie.
pub fn tws_from(inst: &Instance, side: Side, fixed: &Tour, caps: &Caps) -> Result<Solution> {
    best_given_tour(inst, fixed, side, caps)
}

/// Weight `num / den` of the pickup distances in the aggregate distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alpha {
    pub num: u64,
    pub den: u64,
}

impl Alpha {
    pub const HALF: Alpha = Alpha { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie strictly between 0 and 1, got {num}/{den}"
            )));
        }
        Ok(Self { num, den })
    }
}

impl std::str::FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse alpha {s:?}, expected p/q"));
        let (num, den) = s.split_once('/').ok_or_else(bad)?;
        Alpha::new(
            num.trim().parse().map_err(|_| bad())?,
            den.trim().parse().map_err(|_| bad())?,
        )
    }
}

/// Aggregate distance `scale * 2 (alpha d1(a, b) + (1 - alpha) d2(b, a))`.
/// Fails when an entry is not integral; a larger `scale` fixes that.
pub fn aggregate_distance(inst: &Instance, alpha: Alpha, scale: u64) -> Result<DistanceMatrix> {
    if scale == 0 {
        return Err(Error::InvalidParameter("scale must be positive".into()));
    }
    let (d1, d2) = (inst.d1(), inst.d2());
    let mut fractional = None;
    let m = DistanceMatrix::from_fn(inst.n() + 1, |a, b| {
        let twice = 2 * scale * (alpha.num * d1.get(a, b) + (alpha.den - alpha.num) * d2.get(b, a));
        if !twice.is_multiple_of(alpha.den) {
            fractional.get_or_insert((a, b));
        }
        twice / alpha.den
    });
    if let Some((a, b)) = fractional {
        return Err(Error::InvalidParameter(format!(
            "aggregate distance ({a}, {b}) is not integral for alpha {}/{} at scale {scale}",
            alpha.num, alpha.den
        )));
    }
    Ok(m)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest scale making every aggregate entry integral.
pub fn integral_scale(inst: &Instance, alpha: Alpha) -> u64 {
    let (d1, d2) = (inst.d1(), inst.d2());
    let mut g = alpha.den;
    for a in 0..=inst.n() {
        for b in 0..=inst.n() {
            if a != b {
                g = gcd(
                    g,
                    2 * (alpha.num * d1.get(a, b) + (alpha.den - alpha.num) * d2.get(b, a)),
                );
            }
        }
    }
    alpha.den / g
}

/// Solves one TSP on the aggregate distance and uses the tour for pickup and
/// its reversal for delivery, with every item on a single stack. The value is
/// measured on the original distances. Without a `scale` the smallest
/// integral one is used.
pub fn twd(inst: &Instance, alpha: Alpha, scale: Option<u64>, caps: &Caps) -> Result<Solution> {
    let scale = scale.unwrap_or_else(|| integral_scale(inst, alpha));
    let aggregate = aggregate_distance(inst, alpha, scale)?;
    let (t1, _) = held_karp(&aggregate, Objective::Min, caps)?;
    let t2 = t1.reversed();
    let stacking = StackingOrder::new(vec![t1.seq().to_vec()])?.padded_to(inst.k());
    let value = inst.solution_value(&t1, &t2)?;
    Ok(Solution {
        t1,
        t2,
        stacking,
        value,
    })
}

/// Extremal TSP and kSTSP values of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub opt_tsp1: Cost,
    pub opt_tsp2: Cost,
    pub wor_tsp1: Cost,
    pub wor_tsp2: Cost,
    pub opt_kstsp: Cost,
    pub wor_kstsp: Cost,
    pub chain_ok: bool,
}

impl BoundsReport {
    /// Recomputes the relation chain from the six values.
    pub fn chain_holds(&self) -> bool {
        let lower = self.opt_tsp1 + self.opt_tsp2 <= self.opt_kstsp;
        let upper = self.wor_kstsp <= self.wor_tsp1 + self.wor_tsp2;
        let mixed_a = self.opt_tsp1 + self.wor_tsp2;
        let mixed_b = self.wor_tsp1 + self.opt_tsp2;
        let middle =
            self.opt_kstsp <= mixed_a.min(mixed_b) && mixed_a.max(mixed_b) <= self.wor_kstsp;
        lower && upper && middle
    }
}

pub fn bounds_report(inst: &Instance, caps: &Caps) -> Result<BoundsReport> {
    let (_, opt_tsp1) = held_karp(inst.d1(), Objective::Min, caps)?;
    let (_, opt_tsp2) = held_karp(inst.d2(), Objective::Min, caps)?;
    let (_, wor_tsp1) = held_karp(inst.d1(), Objective::Max, caps)?;
    let (_, wor_tsp2) = held_karp(inst.d2(), Objective::Max, caps)?;
    let opt_kstsp = exact_oracle_pairs(inst, Objective::Min, caps)?.value;
    let wor_kstsp = exact_oracle_pairs(inst, Objective::Max, caps)?.value;
    let mut report = BoundsReport {
        opt_tsp1,
        opt_tsp2,
        wor_tsp1,
        wor_tsp2,
        opt_kstsp,
        wor_kstsp,
        chain_ok: false,
    };
    report.chain_ok = report.chain_holds();
    Ok(report)
}
