//! Brute-force helpers shared by the integration suites.
#![allow(dead_code)]

use kstsp::{Cost, DistanceMatrix, StackingOrder, Tour};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every pickup sequence that takes each stack's items bottom to top.
pub fn interleavings(p: &StackingOrder) -> Vec<Vec<usize>> {
    fn go(
        stacks: &[Vec<usize>],
        pos: &mut Vec<usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let mut any = false;
        for s in 0..stacks.len() {
            if pos[s] < stacks[s].len() {
                any = true;
                cur.push(stacks[s][pos[s]]);
                pos[s] += 1;
                go(stacks, pos, cur, out);
                pos[s] -= 1;
                cur.pop();
            }
        }
        if !any {
            out.push(cur.clone());
        }
    }
    let mut out = Vec::new();
    go(
        p.stacks(),
        &mut vec![0; p.stack_count()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

pub fn closed_cost(seq: &[usize], d: &DistanceMatrix) -> Cost {
    let mut prev = 0;
    let mut total = 0;
    for &v in seq {
        total += d.get(prev, v);
        prev = v;
    }
    total + d.get(prev, 0)
}

/// Stackings of items `1..=n` into at most `k` unlabeled stacks.
pub fn stackings(n: usize, k: usize) -> Vec<StackingOrder> {
    fn go(
        item: usize,
        n: usize,
        k: usize,
        stacks: &mut Vec<Vec<usize>>,
        out: &mut Vec<StackingOrder>,
    ) {
        if item > n {
            out.push(StackingOrder::new(stacks.clone()).unwrap());
            return;
        }
        for s in 0..stacks.len() {
            for at in 0..=stacks[s].len() {
                stacks[s].insert(at, item);
                go(item + 1, n, k, stacks, out);
                stacks[s].remove(at);
            }
        }
        if stacks.len() < k {
            stacks.push(vec![item]);
            go(item + 1, n, k, stacks, out);
            stacks.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn random_tour<R: Rng>(rng: &mut R, n: usize) -> Tour {
    let mut seq: Vec<usize> = (1..=n).collect();
    seq.shuffle(rng);
    Tour::new(seq).unwrap()
}

/// Random stacking of `1..=n` into exactly `k` stacks, some possibly empty.
pub fn random_stacking<R: Rng>(rng: &mut R, n: usize, k: usize) -> StackingOrder {
    let mut items: Vec<usize> = (1..=n).collect();
    items.shuffle(rng);
    let mut stacks = vec![Vec::new(); k];
    for item in items {
        stacks[rng.gen_range(0..k)].push(item);
    }
    StackingOrder::new(stacks).unwrap()
}

/// Renames every item `v` to `perm[v - 1]`.
pub fn relabel_tour(t: &Tour, perm: &[usize]) -> Tour {
    Tour::new(t.seq().iter().map(|&v| perm[v - 1]).collect()).unwrap()
}

pub fn relabel_stacking(p: &StackingOrder, perm: &[usize]) -> StackingOrder {
    StackingOrder::new(
        p.stacks()
            .iter()
            .map(|s| s.iter().map(|&v| perm[v - 1]).collect())
            .collect(),
    )
    .unwrap()
}
