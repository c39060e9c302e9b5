//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::cell::OnceCell;
use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ybhom::biquandle::{check_property_i, make_alexander, make_cyclic, YBMap};
use ybhom::complex::{boundary_matrix, diagonal_condition, Variant};
use ybhom::homology::golden::{expected_table, TableCell};
use ybhom::homology::{
    verify_betti, verify_cocycle_basis, verify_equivariance, verify_proof_identities, BettiReport, Coefficients,
    HomologyEngine,
};
use ybhom::intlinalg::AbelianGroup;

/// Cells whose top chain group has at most this many generators must finish
/// within `SMALL_CELL_LIMIT`.
const SMALL_CELL_SIZE: usize = 4096;
const SMALL_CELL_LIMIT: Duration = Duration::from_secs(5);
const LARGEST_CELL_LIMIT: Duration = Duration::from_secs(30 * 60);
/// Betti numbers are checked for every `m^(n+1)` up to this size.
const BETTI_SIZE_LIMIT: usize = 80_000;
const BETTI_MAX_DEGREE: usize = 6;
const RANDOM_OPERATORS: usize = 20;
const RANDOM_SEED: u64 = 0x5eed_0b1a;
const SQUARE_ZERO_MAX_DEGREE: usize = 5;

type Outcome = Result<String, String>;

struct TableRun {
    cells: Vec<(TableCell, AbelianGroup, Duration)>,
}

fn compute_table() -> TableRun {
    let cells = expected_table()
        .into_iter()
        .map(|cell| {
            let engine = HomologyEngine::default();
            let map = make_cyclic(cell.m).into_map();
            let started = Instant::now();
            let group =
                engine.compute_homology(&map, cell.n, cell.variant, Coefficients::Z).expect("cell computes").group;
            (cell, group, started.elapsed())
        })
        .collect();
    TableRun { cells }
}

fn criterion_table(run: &TableRun) -> Outcome {
    let mismatches: Vec<String> = run
        .cells
        .iter()
        .filter(|(c, g, _)| *g != c.group)
        .map(|(c, g, _)| format!("C_{} n={} {}: got {g}, expected {}", c.m, c.n, c.variant, c.group))
        .collect();
    let small = run.cells.iter().filter(|(c, _, _)| c.m.pow(c.n as u32 + 1) <= SMALL_CELL_SIZE);
    let slowest_small = small.clone().map(|(_, _, t)| *t).max().unwrap_or_default();
    let slow: Vec<String> = small
        .filter(|(_, _, t)| *t >= SMALL_CELL_LIMIT)
        .map(|(c, _, t)| format!("C_{} n={} {} took {t:.2?}", c.m, c.n, c.variant))
        .collect();
    let largest = run
        .cells
        .iter()
        .filter(|(c, _, _)| c.m == 5 && c.n == 5)
        .map(|(_, _, t)| *t)
        .max()
        .expect("largest cells present");
    let detail = format!(
        "{}/{} cells match; slowest small cell {slowest_small:.2?}; largest cell {largest:.2?}",
        run.cells.len() - mismatches.len(),
        run.cells.len()
    );
    if !mismatches.is_empty() {
        return Err(format!("{detail}; {}", mismatches.join("; ")));
    }
    if !slow.is_empty() {
        return Err(format!("{detail}; over {SMALL_CELL_LIMIT:?}: {}", slow.join("; ")));
    }
    if largest >= LARGEST_CELL_LIMIT {
        return Err(format!("{detail}; largest cell over {LARGEST_CELL_LIMIT:?}"));
    }
    Ok(detail)
}

fn betti_reports() -> Vec<BettiReport> {
    let engine = HomologyEngine::default();
    let mut reports = Vec::new();
    for m in 2..=5usize {
        for n in 1..=BETTI_MAX_DEGREE {
            if m.pow(n as u32 + 1) <= BETTI_SIZE_LIMIT {
                reports.push(verify_betti(&engine, m, n).expect("betti cell computes"));
            }
        }
    }
    reports
}

fn criterion_betti(reports: &[BettiReport]) -> Outcome {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.computed[0] != r.expected[0])
        .map(|r| format!("C_{} n={}: {} vs {}", r.m, r.n, r.computed[0], r.expected[0]))
        .collect();
    let top = reports.iter().map(|r| (r.m, r.n)).max().expect("reports");
    let detail = format!("{} cells, m^(n-1) up to C_{} n={}", reports.len(), top.0, top.1);
    if bad.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", bad.join("; ")))
    }
}

fn criterion_split_ranks(reports: &[BettiReport]) -> Outcome {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.computed[1..] != r.expected[1..])
        .map(|r| format!("C_{} n={}: D {} NYB {} vs {:?}", r.m, r.n, r.computed[1], r.computed[2], &r.expected[1..]))
        .collect();
    if bad.is_empty() {
        Ok(format!("{} cells, D and NYB ranks exact", reports.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_cocycle_basis() -> Outcome {
    let engine = HomologyEngine::default();
    let mut lines = Vec::new();
    for m in [2, 3, 4] {
        for n in [2, 3] {
            let r = verify_cocycle_basis(&engine, m, n).map_err(|e| e.to_string())?;
            if !r.pass {
                return Err(format!("C_{m} n={n}: {r:?}"));
            }
            lines.push(format!("C_{m}/{n}:{}", r.count));
        }
    }
    Ok(format!("independent cocycle classes {}", lines.join(" ")))
}

fn torsion_bound(m: usize) -> BigInt {
    BigInt::from(if m % 2 == 1 { m } else { 2 * m })
}

fn criterion_torsion(run: &TableRun, cohomology: &[(TableCell, AbelianGroup)]) -> Outcome {
    let groups = run.cells.iter().map(|(c, g, _)| (c, g)).chain(cohomology.iter().map(|(c, g)| (c, g)));
    let mut checked = 0;
    for (c, g) in groups {
        checked += 1;
        if !g.torsion_annihilated_by(&torsion_bound(c.m)) {
            return Err(format!("C_{} n={} {}: {g} not killed by {}", c.m, c.n, c.variant, torsion_bound(c.m)));
        }
    }
    Ok(format!("{checked} homology and cohomology groups within the bound"))
}

fn alexander_instances(max_m: usize) -> Vec<(String, YBMap)> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for s in 0..m as i64 {
            for t in 0..m as i64 {
                if let Ok(b) = make_alexander(m, s, t) {
                    out.push((format!("alexander:{m}:{s}:{t}"), b.into_map()));
                }
            }
        }
    }
    out
}

/// Distinct Yang-Baxter operators on 2 or 3 points found by sampling
/// random bijections of `X x X`.
fn random_yb_operators() -> Vec<YBMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut found = Vec::new();
    let mut seen = HashSet::new();
    while found.len() < RANDOM_OPERATORS {
        let m: usize = rng.gen_range(2..=3);
        let mut perm: Vec<usize> = (0..m * m).collect();
        perm.shuffle(&mut rng);
        let map = YBMap::from_fn(m, |a, b| {
            let p = perm[a as usize * m + b as usize];
            ((p / m) as u32, (p % m) as u32)
        })
        .expect("valid table");
        if map.certification().is_yb_operator() && seen.insert(map.clone()) {
            found.push(map);
        }
    }
    found
}

fn criterion_square_zero() -> Outcome {
    let mut instances: Vec<(String, YBMap)> =
        (1..=5).map(|m| (format!("cyclic:{m}"), make_cyclic(m).into_map())).collect();
    instances.extend(alexander_instances(8));
    let randoms = random_yb_operators();
    instances.extend(randoms.iter().enumerate().map(|(i, map)| (format!("random #{i}"), map.clone())));
    let mut products = 0;
    for (name, map) in &instances {
        let variants: &[Variant] = if diagonal_condition(map) { &Variant::ALL } else { &[Variant::YB] };
        for &v in variants {
            let mut prev = boundary_matrix(map, 1, v).map_err(|e| format!("{name}: {e}"))?;
            for n in 2..=SQUARE_ZERO_MAX_DEGREE {
                let d = boundary_matrix(map, n, v).map_err(|e| format!("{name}: {e}"))?;
                if !prev.mul(&d).map_err(|e| e.to_string())?.is_zero() {
                    return Err(format!("{name} {v}: d_{} d_{n} != 0", n - 1));
                }
                products += 1;
                prev = d;
            }
        }
    }
    Ok(format!("{} operators ({} random), {products} composites vanish", instances.len(), randoms.len()))
}

fn criterion_equivariance() -> Outcome {
    let mut instances: Vec<(String, YBMap)> =
        (1..=5).map(|m| (format!("cyclic:{m}"), make_cyclic(m).into_map())).collect();
    instances.extend(alexander_instances(8));
    if let Some((name, _)) = instances.iter().find(|(_, map)| !check_property_i(map)) {
        return Err(format!("property (I) fails for {name}"));
    }
    if check_property_i(&YBMap::identity(2).expect("identity")) {
        return Err("property (I) holds for the identity on two points".into());
    }
    let mut pairs = 0;
    for m in 1..=4 {
        for n in 1..=3 {
            let r = verify_equivariance(make_cyclic(m).map(), n).map_err(|e| e.to_string())?;
            if !r.pass {
                return Err(format!("C_{m} n={n}: {} failures", r.failures.len()));
            }
            pairs += r.checked;
        }
    }
    Ok(format!("property (I) on {} instances, identity rejected; {pairs} equivariance pairs", instances.len()))
}

fn criterion_proof_identities() -> Outcome {
    let mut pairs = 0;
    for m in 1..=3 {
        for n in [2, 3] {
            let r = verify_proof_identities(m, n).map_err(|e| e.to_string())?;
            if !r.pass {
                return Err(format!("C_{m} n={n}: {r:?}"));
            }
            pairs += r.pairs;
        }
    }
    Ok(format!("{pairs} (cocycle, y) pairs with checked integral witnesses"))
}

fn compute_cohomology(run: &TableRun) -> Result<Vec<(TableCell, AbelianGroup)>, String> {
    let engine = HomologyEngine::default();
    run.cells
        .iter()
        .map(|(c, _, _)| {
            let map = make_cyclic(c.m).into_map();
            engine
                .compute_cohomology(&map, c.n, c.variant, Coefficients::Z)
                .map(|r| (c.clone(), r.group))
                .map_err(|e| format!("C_{} n={} {}: {e}", c.m, c.n, c.variant))
        })
        .collect()
}

fn criterion_uct_splitting(run: &TableRun, cohomology: &[(TableCell, AbelianGroup)]) -> Outcome {
    let homology = |m: usize, n: usize, v: Variant| {
        run.cells.iter().find(|(c, _, _)| (c.m, c.n, c.variant) == (m, n, v)).map(|(_, g, _)| g.clone())
    };
    for (c, coh) in cohomology {
        let free = homology(c.m, c.n, c.variant).expect("cell").free_rank;
        let torsion = if c.n > 1 { homology(c.m, c.n - 1, c.variant).expect("cell").torsion } else { Vec::new() };
        let expected = AbelianGroup::new(free, torsion);
        if *coh != expected {
            return Err(format!("C_{} n={} {}: H^n = {coh}, UCT gives {expected}", c.m, c.n, c.variant));
        }
    }
    let mut splits = 0;
    for (c, yb, _) in run.cells.iter().filter(|(c, _, _)| c.variant == Variant::YB) {
        let d = homology(c.m, c.n, Variant::D).expect("cell");
        let nyb = homology(c.m, c.n, Variant::NYB).expect("cell");
        if *yb != d.direct_sum(&nyb) {
            return Err(format!("C_{} n={}: {yb} != {d} + {nyb}", c.m, c.n));
        }
        splits += 1;
    }
    Ok(format!("{} cohomology cells agree with UCT; {splits} YB = D + NYB splittings", cohomology.len()))
}

fn table_output(threads: usize, format: &str) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["ybhom", "table", "--threads", &threads.to_string(), "--format", format];
    let code = ybhom_cli::run(args, &mut out, &mut err);
    (code, out)
}

fn criterion_determinism() -> Outcome {
    let mut runs = 0;
    for format in ["json", "plain", "csv"] {
        let base = table_output(1, format);
        if base.0 != 0 {
            return Err(format!("table exited with {} ({format})", base.0));
        }
        for threads in [2, 4, 1] {
            if table_output(threads, format) != base {
                return Err(format!("{format} output with {threads} threads differs from 1 thread"));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} reruns across 1, 2 and 4 threads byte-identical in json, plain and csv"))
}

fn record(results: &mut Vec<(usize, String, Outcome)>, id: usize, name: &str, f: impl FnOnce() -> Outcome) {
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let verdict = if outcome.is_ok() { "PASS" } else { "FAIL" };
    let detail = match &outcome {
        Ok(d) | Err(d) => d,
    };
    println!("criterion {id:>2} [{verdict}] {name}: {detail} ({:.1?})", started.elapsed());
    results.push((id, name.to_string(), outcome));
}

fn main() {
    // shared results are computed by whichever criterion needs them first
    let table = OnceCell::new();
    let cohomology = OnceCell::new();
    let betti = OnceCell::new();
    let table = || table.get_or_init(compute_table);
    let cohomology = || cohomology.get_or_init(|| compute_cohomology(table()));
    let betti = || betti.get_or_init(betti_reports);
    let mut results = Vec::new();

    record(&mut results, 1, "reference table of C_2..C_5", || criterion_table(table()));
    record(&mut results, 2, "rational Betti numbers m^(n-1)", || criterion_betti(betti()));
    record(&mut results, 3, "D and NYB ranks", || criterion_split_ranks(betti()));
    record(&mut results, 4, "orbit cocycle basis", criterion_cocycle_basis);
    record(&mut results, 5, "torsion bound", || criterion_torsion(table(), cohomology().as_ref()?));
    record(&mut results, 6, "boundary squares to zero", criterion_square_zero);
    record(&mut results, 7, "property (I) and equivariance", criterion_equivariance);
    record(&mut results, 8, "coboundary identities with integral witnesses", criterion_proof_identities);
    record(&mut results, 9, "universal coefficients and splitting", || {
        criterion_uct_splitting(table(), cohomology().as_ref()?)
    });
    record(&mut results, 10, "deterministic table output", criterion_determinism);

    let failed: Vec<usize> = results.iter().filter(|r| r.2.is_err()).map(|r| r.0).collect();
    println!("acceptance: {}/{} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
