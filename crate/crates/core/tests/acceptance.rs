//! End-to-end gate: twelve checks covering enumeration, the coherence
//! oracles, the coherent-walk generator, the counting engine, embedding
//! geometry, lifting, and growth. Each check prints one pass/fail line;
//! the process exits nonzero if any check fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use hyperpath::coherence::{is_coherent_lp, satisfies_criterion, search_criterion_gap};
use hyperpath::counting::{
    catalan_longest_count, count_total, count_vector, is_log_concave, length_polys,
    max_coherent_length,
};
use hyperpath::generator::generate_coherent;
use hyperpath::geometry::mpp_vertices;
use hyperpath::hypersimplex::{enumerate_monotone_paths, Direction, MonotonePath};
use hyperpath::lattice::{count_all_da_paths, lattice_path_of};
use hyperpath::lifting::{enumerate_es_paths, lift};

type Check = fn(&mut Ctx) -> Result<(), String>;

/// Memoized full scans of (path, criterion verdict, cone verdict) for k = 2.
struct Ctx {
    k2: BTreeMap<usize, Vec<(MonotonePath, bool, bool)>>,
}

impl Ctx {
    fn scan_k2(&mut self, n: usize) -> &[(MonotonePath, bool, bool)] {
        self.k2.entry(n).or_insert_with(|| {
            let c = Direction::standard(n).expect("valid n");
            let paths = enumerate_monotone_paths(n, 2, &c).expect("enumeration");
            paths
                .into_par_iter()
                .map(|p| {
                    let crit = satisfies_criterion(&p);
                    let lp = is_coherent_lp(&p, &c).expect("oracle");
                    (p, crit, lp)
                })
                .collect()
        })
    }
}

fn ensure(cond: bool, msg: String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

fn c01_enumeration_counts(_: &mut Ctx) -> Result<(), String> {
    for (n, k, want) in [(3, 2, 2), (4, 2, 10)] {
        let c = Direction::standard(n).map_err(|e| e.to_string())?;
        let got = enumerate_monotone_paths(n, k, &c)
            .map_err(|e| e.to_string())?
            .len();
        ensure(got == want, format!("({n}, {k}): {got} paths, want {want}"))?;
    }
    Ok(())
}

fn c02_coherence_census(ctx: &mut Ctx) -> Result<(), String> {
    let scan = ctx.scan_k2(4);
    let coherent = scan.iter().filter(|(_, _, lp)| *lp).count();
    ensure(coherent == 8, format!("{coherent} coherent paths, want 8"))?;
    let non_coherent: Vec<Vec<Vec<usize>>> = scan
        .iter()
        .filter(|(_, _, lp)| !*lp)
        .map(|(p, _, _)| p.supports().iter().map(|s| s.elems().to_vec()).collect())
        .collect();
    let expected = vec![
        vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![2, 4], vec![3, 4]],
        vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 4], vec![3, 4]],
    ];
    ensure(
        non_coherent == expected,
        format!("non-coherent paths {non_coherent:?}"),
    )
}

fn c03_criterion_matches_cone_for_k2(ctx: &mut Ctx) -> Result<(), String> {
    for n in 4..=7 {
        let bad = ctx
            .scan_k2(n)
            .iter()
            .filter(|(_, crit, lp)| crit != lp)
            .count();
        ensure(bad == 0, format!("{bad} disagreements at n = {n}"))?;
    }
    Ok(())
}

fn c04_k3_soundness_and_gap(_: &mut Ctx) -> Result<(), String> {
    for n in 4..=6 {
        let c = Direction::standard(n).map_err(|e| e.to_string())?;
        let paths = enumerate_monotone_paths(n, 3, &c).map_err(|e| e.to_string())?;
        let unsound = paths
            .par_iter()
            .filter(|p| !satisfies_criterion(p))
            .filter(|p| is_coherent_lp(p, &c).expect("oracle"))
            .count();
        ensure(
            unsound == 0,
            format!("{unsound} criterion-false yet coherent paths at n = {n}"),
        )?;
    }
    let gap = search_criterion_gap(3, 8, 2_000_000).map_err(|e| e.to_string())?;
    match gap {
        Some(path) => {
            let c = Direction::standard(path.n()).map_err(|e| e.to_string())?;
            ensure(
                satisfies_criterion(&path)
                    && !is_coherent_lp(&path, &c).map_err(|e| e.to_string())?,
                format!("reported gap path {path} is not a gap"),
            )
        }
        None => Err("no criterion-true, non-coherent path found for k = 3, n <= 8".into()),
    }
}

fn c05_generator_census_and_image(ctx: &mut Ctx) -> Result<(), String> {
    for (n, want) in [(4, 8u64), (5, 33), (6, 133), (7, 533), (8, 2133)] {
        let got = generate_coherent(n).map_err(|e| e.to_string())?.len() as u64;
        ensure(got == want, format!("{got} walks at n = {n}, want {want}"))?;
    }
    for n in 3..=7 {
        let image: BTreeSet<Vec<Vec<usize>>> = ctx
            .scan_k2(n)
            .iter()
            .filter(|(_, _, lp)| *lp)
            .map(|(p, _, _)| lattice_path_of(p).points().to_vec())
            .collect();
        let generated: BTreeSet<Vec<Vec<usize>>> = generate_coherent(n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|w| w.points().to_vec())
            .collect();
        ensure(
            image == generated,
            format!("generated set differs from the coherent image at n = {n}"),
        )?;
    }
    Ok(())
}

fn c06_length_table(_: &mut Ctx) -> Result<(), String> {
    // Counts of coherent walks by length (from l = 3), rows n = 4..11. Every
    // row sums to (25*4^(n-4) - 1)/3; the l = 8 entry of row 11 is pinned by
    // that row sum and by exhaustive generation of all 136533 walks.
    let rows: [(usize, &[i64]); 8] = [
        (4, &[4, 4]),
        (5, &[4, 16, 12, 1]),
        (6, &[4, 28, 56, 38, 7]),
        (7, &[4, 40, 132, 195, 129, 32, 1]),
        (8, &[4, 52, 240, 556, 694, 448, 129, 10]),
        (9, &[4, 64, 380, 1205, 2250, 2496, 1571, 501, 61, 1]),
        (
            10,
            &[4, 76, 552, 2226, 5565, 8896, 9019, 5564, 1914, 304, 13],
        ),
        (
            11,
            &[
                4, 88, 756, 3703, 11627, 24416, 34622, 32725, 19881, 7236, 1375, 99, 1,
            ],
        ),
    ];
    for (n, want) in rows {
        let total = length_polys(n).map_err(|e| e.to_string())?.total();
        let got: Vec<BigInt> = total.coeffs()[3..].to_vec();
        let want: Vec<BigInt> = want.iter().map(|&v| BigInt::from(v)).collect();
        ensure(got == want, format!("row n = {n}: {got:?}"))?;
        let sum: BigInt = got.iter().sum();
        ensure(
            sum == count_total(n).map_err(|e| e.to_string())?,
            format!("row n = {n} does not sum to the closed form"),
        )?;
    }
    Ok(())
}

fn c07_extremal_lengths(_: &mut Ctx) -> Result<(), String> {
    for (n, len, count) in [
        (5, 6, 1i64),
        (6, 7, 7),
        (8, 10, 10),
        (9, 12, 1),
        (10, 13, 13),
    ] {
        let (got_len, got_count) = max_coherent_length(n).map_err(|e| e.to_string())?;
        ensure(
            got_len == len && got_count == BigInt::from(count),
            format!("n = {n}: ({got_len}, {got_count}), want ({len}, {count})"),
        )?;
    }
    Ok(())
}

fn c08_identities_to_300(_: &mut Ctx) -> Result<(), String> {
    for n in 4..=300usize {
        let state = count_vector(n).map_err(|e| e.to_string())?;
        ensure(
            2 * &state.t == 2 * &state.q + &state.c,
            format!("2t = 2q + c fails at n = {n}"),
        )?;
        ensure(
            state.c == &state.t + 1,
            format!("c = t + 1 fails at n = {n}"),
        )?;
        let closed = count_total(n).map_err(|e| e.to_string())?;
        ensure(
            state.total() == closed,
            format!("recursion total differs from the closed form at n = {n}"),
        )?;
        let evaluated = length_polys(n)
            .map_err(|e| e.to_string())?
            .total()
            .eval_one();
        ensure(
            evaluated == closed,
            format!("V_n(1) differs from the closed form at n = {n}"),
        )?;
    }
    Ok(())
}

fn c09_embedded_vertex_counts(_: &mut Ctx) -> Result<(), String> {
    // mpp_vertices itself fails on any extremeness/coherence mismatch, so a
    // clean pass doubles as the oracle-agreement check on all five pairs.
    for (n, k, want) in [
        (3, 2, Some(2)),
        (4, 2, Some(8)),
        (5, 2, Some(33)),
        (4, 3, None),
        (5, 3, None),
    ] {
        let c = Direction::standard(n).map_err(|e| e.to_string())?;
        let rows = mpp_vertices(n, k, &c, 1_000_000).map_err(|e| e.to_string())?;
        if let Some(want) = want {
            ensure(
                rows.len() == want,
                format!("({n}, {k}): {} vertices, want {want}", rows.len()),
            )?;
        }
    }
    Ok(())
}

fn c10_lifted_walks(_: &mut Ctx) -> Result<(), String> {
    for n in 3..=6usize {
        for k in 1..=3.min(n - 1) {
            for s in 1..=n - 1 {
                for es in enumerate_es_paths(n, k, s).map_err(|e| e.to_string())? {
                    let lifted = lift(&es);
                    ensure(
                        satisfies_criterion(&lifted),
                        format!("lift of an ({n}, {k}, {s}) base chain fails the criterion"),
                    )?;
                    if k == 2 {
                        let c = Direction::standard(n).map_err(|e| e.to_string())?;
                        ensure(
                            is_coherent_lp(&lifted, &c).map_err(|e| e.to_string())?,
                            format!("lift of an ({n}, 2, {s}) base chain is not coherent"),
                        )?;
                        let supports = lifted.supports();
                        let bases = es.bases();
                        let start = supports.iter().position(|v| v == &bases[0]);
                        let consecutive = start
                            .map(|i| supports[i..i + bases.len()] == *bases)
                            .unwrap_or(false);
                        ensure(
                            consecutive,
                            format!("bases are not consecutive in a ({n}, 2, {s}) lift"),
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn c11_growth_and_longest(_: &mut Ctx) -> Result<(), String> {
    let census: Vec<(u64, u64)> = (4..=9usize)
        .map(|n| {
            count_all_da_paths(n, 2, 10_000_000)
                .map_err(|e| e.to_string())?
                .tail_split
                .ok_or_else(|| format!("no tail split at n = {n}"))
        })
        .collect::<Result<_, _>>()?;
    for (i, window) in census.windows(2).enumerate() {
        let n = i + 4;
        let ((d, s), (d_next, _)) = (window[0], window[1]);
        ensure(
            d_next == d + 2 * s,
            format!(
                "d_{} = {d_next} differs from d_{n} + 2 s_{n} = {}",
                n + 1,
                d + 2 * s
            ),
        )?;
        ensure(
            d_next >= 5 * d,
            format!("d_{} = {d_next} grows slower than 5 d_{n}", n + 1),
        )?;
    }
    for (n, want) in [(3usize, 1i64), (4, 2), (5, 5)] {
        let closed = catalan_longest_count(n).map_err(|e| e.to_string())?;
        ensure(
            closed == BigInt::from(want),
            format!("closed-form longest count at n = {n} is {closed}"),
        )?;
        let c = Direction::standard(n).map_err(|e| e.to_string())?;
        let longest = 2 * n - 3;
        let got = enumerate_monotone_paths(n, 2, &c)
            .map_err(|e| e.to_string())?
            .iter()
            .filter(|p| p.len() == longest)
            .count();
        ensure(
            got == want as usize,
            format!("{got} longest paths at n = {n}, want {want}"),
        )?;
    }
    Ok(())
}

fn c12_log_concavity_to_150(_: &mut Ctx) -> Result<(), String> {
    for n in 4..=150usize {
        let total = length_polys(n).map_err(|e| e.to_string())?.total();
        ensure(
            is_log_concave(total.coeffs()),
            format!("coefficients of V_{n} are not log-concave"),
        )?;
    }
    Ok(())
}

fn main() {
    let checks: [(&str, Check); 12] = [
        ("enumeration counts", c01_enumeration_counts),
        ("coherence census on (4, 2)", c02_coherence_census),
        (
            "criterion = cone oracle for k = 2",
            c03_criterion_matches_cone_for_k2,
        ),
        (
            "k = 3 soundness and criterion gap",
            c04_k3_soundness_and_gap,
        ),
        (
            "generator census and coherent image",
            c05_generator_census_and_image,
        ),
        ("length table rows n = 4..11", c06_length_table),
        ("extremal lengths", c07_extremal_lengths),
        ("structural identities to n = 300", c08_identities_to_300),
        ("embedded vertex counts", c09_embedded_vertex_counts),
        ("lifted walks", c10_lifted_walks),
        ("growth and longest-walk counts", c11_growth_and_longest),
        ("log-concavity to n = 150", c12_log_concavity_to_150),
    ];
    let mut ctx = Ctx {
        k2: BTreeMap::new(),
    };
    let mut failures = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&mut ctx)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:02} {name:<40} pass  ({elapsed:.2} s)", i + 1),
            Err(msg) => {
                failures += 1;
                println!(
                    "criterion {:02} {name:<40} FAIL  ({elapsed:.2} s): {msg}",
                    i + 1
                );
            }
        }
    }
    if failures > 0 {
        println!("{failures} of 12 criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria pass");
}
