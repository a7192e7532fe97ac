//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use kstsp::compat::{conflict_chromatic_number, lcs_oracle, stacking_from_tours};
use kstsp::families::{
    gen_family, random_instance, verify_family_claims, ClaimOptions, ClaimRow, ClaimStatus, Family,
    FamilyParams,
};
use kstsp::model::{check_triple_feasible, simulate_triple, tour_cost};
use kstsp::solve::{
    aggregate_distance, all_tours, bounds_report, exact_oracle_pairs, exact_oracle_stacks,
    held_karp, twd, Alpha, Caps, Objective,
};
use kstsp::stackdp::optimal_pickup_tour;
use kstsp::{Cost, Instance, Tour};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The seeded ensemble shared by criteria 1 and 8.
fn ensemble() -> Vec<(u64, Instance)> {
    (0..200u64)
        .map(|seed| {
            let n = 3 + (seed % 4) as usize;
            let k = 1 + (seed / 4 % 3) as usize;
            (seed, random_instance(n, k, 1, 100, seed).unwrap())
        })
        .collect()
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let set = ensemble();
    for (seed, inst) in &set {
        let a = exact_oracle_pairs(inst, Objective::Min, &caps).map_err(|e| e.to_string())?;
        let b = exact_oracle_stacks(inst, &caps).map_err(|e| e.to_string())?;
        ensure(a.value == b.value, || {
            format!("seed {seed}: pairs {} vs stacks {}", a.value, b.value)
        })?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(300), || {
        format!("took {took:.1?}")
    })?;
    Ok(format!("{} instances agree in {took:.1?}", set.len()))
}

fn dp_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..100u64 {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(1..=3);
        let inst = random_instance(n, k, 1, 100, 1000 + case).unwrap();
        let p = random_stacking(&mut rng, n, k);
        let brute = interleavings(&p)
            .iter()
            .map(|s| closed_cost(s, inst.d1()))
            .min()
            .unwrap();
        let (_, dp) = optimal_pickup_tour(&p, inst.d1()).map_err(|e| e.to_string())?;
        ensure(dp == brute, || {
            format!(
                "case {case} {:?}: dp {dp} vs brute force {brute}",
                p.stacks()
            )
        })?;
    }
    Ok("100 stackings, n <= 8, k <= 3".into())
}

fn feasibility_duality() -> Outcome {
    let mut checked = 0u64;
    let mut feasible = 0u64;
    for n in 1..=5 {
        let tours = all_tours(n);
        let stackings = stackings(n, 3);
        for t1 in &tours {
            for t2 in &tours {
                for p in &stackings {
                    let a = check_triple_feasible(t1, t2, p).unwrap();
                    let b = simulate_triple(t1, t2, p).unwrap();
                    ensure(a == b, || {
                        format!(
                            "{:?} {:?} {:?}: order {a} vs replay {b}",
                            t1.seq(),
                            t2.seq(),
                            p.stacks()
                        )
                    })?;
                    checked += 1;
                    feasible += a as u64;
                }
            }
        }
    }
    Ok(format!(
        "{checked} triples, {feasible} feasible, 0 disagreements"
    ))
}

fn coloring_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut pairs = 0;
    for _ in 0..2000 {
        let n = rng.gen_range(1..=10);
        let (t1, t2) = (random_tour(&mut rng, n), random_tour(&mut rng, n));
        let chi = conflict_chromatic_number(&t1, &t2).unwrap();
        let lcs = lcs_oracle(&t1, &t2).unwrap();
        let expected = if lcs >= 2 { lcs } else { 0 };
        ensure(chi == expected, || {
            format!("{:?} {:?}: chi {chi}, lcs {lcs}", t1.seq(), t2.seq())
        })?;
        for k in 1..=4 {
            match stacking_from_tours(&t1, &t2, k).unwrap() {
                Some(p) => ensure(
                    chi <= k
                        && check_triple_feasible(&t1, &t2, &p).unwrap()
                        && simulate_triple(&t1, &t2, &p).unwrap(),
                    || {
                        format!(
                            "{:?} {:?} k={k}: bad stacking {:?}",
                            t1.seq(),
                            t2.seq(),
                            p.stacks()
                        )
                    },
                )?,
                None => ensure(chi > k, || {
                    format!(
                        "{:?} {:?} k={k}: refused with chi {chi}",
                        t1.seq(),
                        t2.seq()
                    )
                })?,
            }
        }
        pairs += 1;
    }
    for n in 2..=10 {
        let t = Tour::identity(n);
        let same = conflict_chromatic_number(&t, &t).unwrap();
        let reversed = conflict_chromatic_number(&t, &t.reversed()).unwrap();
        ensure(same == n && reversed == 0, || {
            format!("n={n}: identical {same}, reversed {reversed}")
        })?;
    }
    Ok(format!("{pairs} random pairs, n <= 10"))
}

fn row<'a>(rows: &'a [ClaimRow], n: usize, id: &str) -> Result<&'a ClaimRow, String> {
    rows.iter()
        .find(|r| r.n == n && r.claim_id == id)
        .ok_or_else(|| format!("n={n}: no {id} row"))
}

fn expect_status(rows: &[ClaimRow], n: usize, id: &str, status: ClaimStatus) -> Result<(), String> {
    let r = row(rows, n, id)?;
    ensure(r.status == status, || {
        format!(
            "n={n} {id}: stated {} computed {} ({})",
            r.paper_value, r.computed_value, r.status
        )
    })
}

fn claims(family: Family, ns: &[usize], unit: Cost, eps: Cost) -> Result<Vec<ClaimRow>, String> {
    verify_family_claims(family, ns, unit, eps, &ClaimOptions::default()).map_err(|e| e.to_string())
}

fn family_i() -> Outcome {
    let start = Instant::now();
    let ns = [4, 6, 8];
    let rows = claims(Family::I, &ns, 1000, 1)?;
    for n in ns {
        for id in [
            "hk_opt_d1",
            "hk_opt_d2",
            "paper_solution_feasible",
            "paper_solution_value",
        ] {
            expect_status(&rows, n, id, ClaimStatus::Match)?;
        }
        let value = row(&rows, n, "paper_solution_value")?;
        let closed = 2 * (n as Cost + 1) * 1000 + ((n as Cost).div_ceil(2) + 1);
        ensure(value.computed_value == closed.to_string(), || {
            format!("n={n}: value {} vs {closed}", value.computed_value)
        })?;
        expect_status(&rows, n, "tws_lower_bound", ClaimStatus::Holds)?;
    }
    for n in [6, 8] {
        expect_status(&rows, n, "ratio_tws_over_opt", ClaimStatus::Holds)?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), || {
        format!("took {took:.1?}")
    })?;
    let ratios: Vec<String> = ns
        .iter()
        .map(|&n| row(&rows, n, "ratio_tws_over_opt").map(|r| r.computed_value.clone()))
        .collect::<Result<_, _>>()?;
    Ok(format!(
        "n in {ns:?}, tws/opt = {} in {took:.1?}",
        ratios.join(" < ")
    ))
}

fn family_j() -> Outcome {
    let ns = [6, 8];
    let rows = claims(Family::J, &ns, 1000, 1)?;
    let mut notes = Vec::new();
    for n in ns {
        for id in ["hk_opt_d1", "hk_opt_d2", "paper_solution_feasible"] {
            expect_status(&rows, n, id, ClaimStatus::Match)?;
        }
        expect_status(&rows, n, "tws_lower_bound", ClaimStatus::Holds)?;
        let value = row(&rows, n, "paper_solution_value")?;
        let agree = value.paper_value == value.computed_value;
        ensure(agree == (value.status == ClaimStatus::Match), || {
            format!(
                "n={n}: value row {} vs {} marked {}",
                value.paper_value, value.computed_value, value.status
            )
        })?;
        notes.push(format!(
            "n={n} stated {} computed {} {}",
            value.paper_value, value.computed_value, value.status
        ));
    }
    Ok(format!("value discrepancy reported: {}", notes.join("; ")))
}

fn family_h() -> Outcome {
    let caps = Caps::default();
    let params = FamilyParams::new(Family::H, 6, 1, 0).unwrap();
    let inst = gen_family(&params).unwrap();
    let aggregate = aggregate_distance(&inst, Alpha::HALF, 1).map_err(|e| e.to_string())?;
    let identity = tour_cost(&Tour::identity(6), &aggregate).unwrap();
    let (_, hk) = held_karp(&aggregate, Objective::Min, &caps).unwrap();
    ensure(identity == 49 && hk == 49, || {
        format!("identity tour {identity}, Held-Karp {hk}")
    })?;

    let mut ratios = Vec::new();
    let mut verdict = String::new();
    for n in [4usize, 6] {
        let inst = gen_family(&FamilyParams::new(Family::H, n, 1, 0).unwrap()).unwrap();
        let opt = exact_oracle_stacks(&inst, &caps)
            .map_err(|e| e.to_string())?
            .value;
        let heuristic = twd(&inst, Alpha::HALF, None, &caps)
            .map_err(|e| e.to_string())?
            .value;
        ratios.push(heuristic as f64 / opt as f64);
        if n == 6 {
            let pairs = exact_oracle_pairs(&inst, Objective::Min, &caps)
                .map_err(|e| e.to_string())?
                .value;
            ensure(pairs == opt, || {
                format!("oracles disagree: {pairs} vs {opt}")
            })?;
            let candidates = [7 * 6 + 2, 7 * 6 + 3, 8 * 6 + 2];
            verdict = format!(
                "exact opt {opt} {} {candidates:?}",
                if candidates.contains(&opt) {
                    "in"
                } else {
                    "not in"
                }
            );
        }
    }
    ensure(ratios[0] > 1.0 && ratios[1] > ratios[0], || {
        format!("twd/opt {ratios:?}")
    })?;
    Ok(format!(
        "d_1/2 identity = HK = 49; {verdict}; twd/opt {:.4} < {:.4}",
        ratios[0], ratios[1]
    ))
}

fn bound_chain() -> Outcome {
    let caps = Caps::default();
    let set = ensemble();
    for (seed, inst) in &set {
        let r = bounds_report(inst, &caps).map_err(|e| e.to_string())?;
        ensure(r.chain_ok && r.chain_holds(), || {
            format!("seed {seed}: {r:?}")
        })?;
    }
    Ok(format!("{} instances, 0 violations", set.len()))
}

fn performance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let inst = random_instance(14, 2, 1, 100, 9).unwrap();
    let p = random_stacking(&mut rng, 14, 2);
    let start = Instant::now();
    optimal_pickup_tour(&p, inst.d1()).map_err(|e| e.to_string())?;
    let dp = start.elapsed();

    let start = Instant::now();
    held_karp(inst.d1(), Objective::Min, &Caps::default()).map_err(|e| e.to_string())?;
    let hk = start.elapsed();

    let small = random_instance(6, 2, 1, 100, 9).unwrap();
    let start = Instant::now();
    exact_oracle_pairs(&small, Objective::Min, &Caps::default()).map_err(|e| e.to_string())?;
    let pairs = start.elapsed();

    ensure(
        dp < Duration::from_secs(1)
            && hk < Duration::from_secs(10)
            && pairs < Duration::from_secs(30),
        || format!("dp {dp:.2?}, held-karp {hk:.2?}, pairs oracle {pairs:.2?}"),
    )?;
    Ok(format!(
        "dp n=14 {dp:.2?}; held-karp n=14 {hk:.2?}; pairs oracle n=6 {pairs:.2?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle agreement", oracle_agreement),
        ("stack DP exactness", dp_exactness),
        ("feasibility duality", feasibility_duality),
        ("coloring correctness", coloring_correctness),
        ("family I", family_i),
        ("family J", family_j),
        ("family H", family_h),
        ("bound chain", bound_chain),
        ("performance", performance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
