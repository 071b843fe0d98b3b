//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bisimqi::artin::{
    artin_to_decomposition, is_big, is_qi_to_right_angled_tree_group, weighted_trees, ArtinTree,
};
use bisimqi::census::{count_minimal, cumulative_qi_classes, enumerate_minimal, list_minimal};
use bisimqi::format::parse_graph;
use bisimqi::graph::{are_isomorphic, automorphism_count};
use bisimqi::refine::{brute_force_minimal_oracle, minimize_faithful};
use bisimqi::splice::{artin_tree_to_splice, splice_to_decomposition};
use bisimqi::unfold::Unfolder;
use bisimqi::{bisimilar, is_minimal, minimize, BicoloredGraph, Color};

use common::{all_connected, random_connected, random_cover};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

fn census_rows() -> Outcome {
    let expected: [&[u64]; 5] = [
        &[1, 1],
        &[0, 4, 0],
        &[0, 10, 10, 0],
        &[0, 56, 61, 56, 0],
        &[0, 446, 860, 860, 446, 0],
    ];
    let totals = [2, 4, 20, 173, 2612];
    let start = Instant::now();
    for (i, counts) in expected.iter().enumerate() {
        let row = enumerate_minimal(i + 1, None).map_err(|e| e.to_string())?;
        ensure(row.counts == *counts && row.total == totals[i], || {
            format!("n={}: got {:?} total {}", i + 1, row.counts, row.total)
        })?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("n=1..5 exact in {elapsed:.2?}"))
}

fn census_six() -> Outcome {
    let start = Instant::now();
    let row = enumerate_minimal(6, None).map_err(|e| e.to_string())?;
    ensure(row.counts == [0, 6140, 17084, 20452, 17084, 6140, 0] && row.total == 66900, || {
        format!("got {:?} total {}", row.counts, row.total)
    })?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(3600))?;
    Ok(format!("n=6 total 66900 in {elapsed:.2?}"))
}

fn cumulative() -> Outcome {
    let got: Vec<u64> = (1..=5)
        .map(cumulative_qi_classes)
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(got == [2, 6, 26, 199, 2811], || format!("got {got:?}"))?;
    Ok("2, 6, 26, 199, 2811".into())
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bisimqi"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} failed: {}", String::from_utf8_lossy(&out.stderr))
    })?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn worked_artin_example() -> Outcome {
    let dir = std::env::temp_dir().join(format!("bisimqi-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("path243.art");
    std::fs::write(&path, "v a\nv b\nv c\nv d\ne a b 2\ne b c 4\ne c d 3\n").map_err(|e| e.to_string())?;
    let file = path.to_str().ok_or("non-utf8 temp path")?;
    let converted = parse_graph(&run_cli(&["artin", "convert", "--in", file])?).map_err(|e| e.to_string())?;
    let spliced =
        parse_graph(&run_cli(&["splice", "decomposition", "--in", file])?).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);

    let bwbw = BicoloredGraph::from_edges(
        vec![Color::Black, Color::White, Color::Black, Color::White],
        [(0, 1), (1, 2), (2, 3)],
    )
    .unwrap();
    let iso = |a: &BicoloredGraph, b: &BicoloredGraph| {
        are_isomorphic(a, b).map(|m| m.is_some()).map_err(|e| e.to_string())
    };
    ensure(iso(&converted, &bwbw)?, || format!("convert gave {converted:?}"))?;
    ensure(iso(&spliced, &converted)?, || format!("splice gave {spliced:?}"))?;
    Ok("b-w-b-w from both routes".into())
}

fn big_sweep() -> Vec<ArtinTree> {
    weighted_trees(6, &[2, 3, 4, 5, 6]).into_iter().filter(is_big).collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let trees = big_sweep();
    let mut mismatches = 0;
    for t in &trees {
        let direct = artin_to_decomposition(t).map_err(|e| e.to_string())?;
        let diagram = artin_tree_to_splice(t).map_err(|e| e.to_string())?;
        let via = splice_to_decomposition(&diagram).map_err(|e| e.to_string())?;
        if are_isomorphic(&direct, &via).map_err(|e| e.to_string())?.is_none() {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches of {}", trees.len()))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(300))?;
    Ok(format!("{} big trees, 0 mismatches in {elapsed:.2?}", trees.len()))
}

fn right_angled() -> Outcome {
    let trees = big_sweep();
    let single_loop = BicoloredGraph::from_edges(vec![Color::Black], [(0, 0)]).unwrap();
    let mut positives = 0;
    for t in &trees {
        let m = minimize(&artin_to_decomposition(t).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let predicate = is_qi_to_right_angled_tree_group(t);
        positives += usize::from(predicate);
        ensure(predicate == (m.graph == single_loop), || format!("mismatch on {t}"))?;
    }
    Ok(format!("{} trees, {positives} right-angled, 0 mismatches", trees.len()))
}

fn minimality_oracle() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for g in all_connected(n) {
            let fast = is_minimal(&g).map_err(|e| e.to_string())?;
            let slow = brute_force_minimal_oracle(&g).map_err(|e| e.to_string())?;
            ensure(fast == slow, || format!("mismatch on {g:?}"))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7001);
    let mut minimal = 0;
    for _ in 0..10_000 {
        let p = rng.gen_range(0.2..0.7);
        let g = random_connected(&mut rng, 5, 6, p);
        let fast = is_minimal(&g).map_err(|e| e.to_string())?;
        let slow = brute_force_minimal_oracle(&g).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("mismatch on {g:?}"))?;
        minimal += usize::from(fast);
    }
    Ok(format!("{checked} exhaustive + 10000 random ({minimal} minimal), 0 mismatches"))
}

fn no_automorphisms() -> Outcome {
    let mut reps = 0;
    for n in 1..=5 {
        for b in 0..=n {
            count_minimal(n, b, None).map_err(|e| e.to_string())?;
            for g in list_minimal(n, b).map_err(|e| e.to_string())? {
                let count = automorphism_count(&g).map_err(|e| e.to_string())?;
                ensure(count == 1, || format!("{count} automorphisms on {g:?}"))?;
                reps += 1;
            }
        }
    }
    Ok(format!("{reps} representatives, all rigid, divisions exact"))
}

fn refinement_equivalence() -> Outcome {
    let same = |g: &BicoloredGraph| -> Result<(), String> {
        let slow = minimize_faithful(g).map_err(|e| e.to_string())?;
        let fast = minimize(g).map_err(|e| e.to_string())?;
        ensure(slow.coloring.same_partition(&fast.coloring), || format!("mismatch on {g:?}"))
    };
    let mut checked = 0;
    for n in 1..=4 {
        for g in all_connected(n) {
            same(&g)?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7002);
    for i in 0..1000 {
        let g = if i % 2 == 0 {
            random_connected(&mut rng, 1, 10, 0.3)
        } else {
            let base = minimize(&random_connected(&mut rng, 1, 5, 0.4)).unwrap().graph;
            random_cover(&mut rng, &base, 10)
        };
        same(&g)?;
    }
    Ok(format!("{checked} exhaustive + 1000 random, identical partitions"))
}

fn unfolding_correspondence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7003);
    let mut positives = 0;
    for _ in 0..500 {
        let g1 = random_connected(&mut rng, 1, 8, 0.35);
        let g2 = if rng.gen_bool(0.5) {
            random_connected(&mut rng, 1, 8, 0.35)
        } else {
            random_cover(&mut rng, &minimize(&g1).unwrap().graph, 8)
        };
        let verdict = bisimilar(&g1, &g2).map_err(|e| e.to_string())?.is_some();
        let depth = g1.vertex_count() + g2.vertex_count();
        let mut u = Unfolder::new();
        let left = u.level(&g1, depth);
        let right = u.level(&g2, depth);
        let meet = left.iter().any(|t| right.contains(t));
        ensure(verdict == meet, || format!("verdict {verdict}, unfoldings {meet} on {g1:?} / {g2:?}"))?;
        positives += usize::from(verdict);
    }
    let mut checked = 0;
    for n in 1..=4 {
        for g in all_connected(n) {
            let m = minimize(&g).map_err(|e| e.to_string())?;
            let mut u = Unfolder::new();
            for d in 0..=8 {
                let here = u.level(&g, d);
                let there = u.level(&m.graph, d);
                for v in 0..g.vertex_count() {
                    ensure(here[v] == there[m.coloring.class_of(v)], || {
                        format!("quotient changed type of {v} at depth {d} on {g:?}")
                    })?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("500 pairs ({positives} bisimilar) agree; {checked} graphs stable under quotient"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("census rows n<=5", census_rows),
        ("census row n=6", census_six),
        ("cumulative classes", cumulative),
        ("worked Artin example", worked_artin_example),
        ("splice oracle equivalence", oracle_equivalence),
        ("right-angled characterization", right_angled),
        ("minimality oracle", minimality_oracle),
        ("no automorphisms", no_automorphisms),
        ("refinement equivalence", refinement_equivalence),
        ("unfolding correspondence", unfolding_correspondence),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2}: {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {label} ({detail})"),
            Err(why) => {
                failed += 1;
                println!("FAIL {label}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
