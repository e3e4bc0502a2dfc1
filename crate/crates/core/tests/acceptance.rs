//! Acceptance criteria, one test per criterion. Each prints its report rows
//! and a single `criterion N: PASS|FAIL` line.
//!
//! Run with `cargo test -p levywalk --test acceptance -- --nocapture`.

use std::collections::BTreeMap;
use std::path::Path;

use levywalk::harness::checks::{
    collapse_rows, counting_rows, coupling_rows, critical_rows, exponent_rows, hill_rows,
    interpolation_rows, laplace_rows, pathwise_rows,
};
use levywalk::harness::{critical_grid, parse_config, run_suite, ReportRow, Suite};
use levywalk::{SpectralMeasure, Variant, WalkModel};

const SEED: u64 = 20_240_917;

fn verdict(criterion: u32, title: &str, rows: &[ReportRow]) {
    for r in rows {
        println!("  {r}");
    }
    let pass = !rows.is_empty() && rows.iter().all(|r| r.pass);
    println!(
        "criterion {criterion}: {} ({title})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed");
}

fn axes_model(alpha: f64, beta: f64) -> WalkModel {
    WalkModel::pareto(alpha, beta, SpectralMeasure::axes(1).unwrap()).unwrap()
}

const REGIMES: [(f64, f64); 3] = [(0.5, 0.8), (0.8, 0.5), (0.5, 0.5)];

#[test]
fn criterion_01_subordinator_laplace_transform() {
    let rows = laplace_rows(&[0.3, 0.5, 0.8], &[0.5, 1.0, 2.0], 100_000, SEED).unwrap();
    assert_eq!(rows.len(), 9);
    verdict(1, "subordinator Laplace transform", &rows);
}

#[test]
fn criterion_02_product_tail_index() {
    let rows = hill_rows(0.5, 0.8, 1_000_000, 10_000, SEED).unwrap();
    let product: Vec<_> = rows
        .into_iter()
        .filter(|r| r.test == "hill-product")
        .collect();
    assert_eq!(product.len(), 1);
    verdict(2, "Hill index of V*T", &product);
}

#[test]
fn criterion_03_critical_log_correction() {
    let rows = critical_rows(0.5, Some(0.8), 10_000_000, &critical_grid(), SEED).unwrap();
    let rows: Vec<_> = rows
        .into_iter()
        .filter(|r| r.test != "product-tail-ratio-trend")
        .collect();
    assert_eq!(rows.len(), 2);
    verdict(3, "critical log correction and control", &rows);
}

#[test]
fn criterion_04_counting_process_limit() {
    let (rows, means) = counting_rows(0.5, 1e6, 10_000, 1e-4, SEED).unwrap();
    println!("  inverse means at delta_tau, /2, /4: {means:?}");
    let rows: Vec<_> = rows
        .into_iter()
        .filter(|r| r.test != "inverse-mean")
        .collect();
    verdict(4, "counting process vs inverse subordinator", &rows);
}

#[test]
fn criterion_05_scaling_collapse() {
    let mut rows = Vec::new();
    for (alpha, beta) in REGIMES {
        let out = collapse_rows(
            &axes_model(alpha, beta),
            Variant::WaitFirst,
            (1e3, 1e4),
            1.0,
            10_000,
            SEED,
        )
        .unwrap();
        rows.extend(out.rows);
    }
    verdict(5, "scaling collapse per regime", &rows);
}

#[test]
fn criterion_06_exponent_table() {
    let mut rows = Vec::new();
    for (alpha, beta) in REGIMES {
        let out = exponent_rows(
            &axes_model(alpha, beta),
            Variant::WaitFirst,
            &[1e2, 1e3, 1e4],
            1.0,
            10_000,
            SEED,
        )
        .unwrap();
        rows.extend(out.rows);
    }
    verdict(6, "space-time exponents", &rows);
}

#[test]
fn criterion_07_pathwise_identities() {
    let mut rows = Vec::new();
    for (alpha, beta) in REGIMES {
        let model =
            WalkModel::pareto(alpha, beta, SpectralMeasure::uniform_sphere(2).unwrap()).unwrap();
        rows.extend(pathwise_rows(&model, 1000, 100, 1e6, SEED).unwrap());
    }
    verdict(7, "pathwise variant identities", &rows);
}

#[test]
fn criterion_08_coupling_diagnostic() {
    let mut rows = Vec::new();
    for (alpha, beta) in [(0.5, 0.8), (0.8, 0.5)] {
        rows.extend(coupling_rows(&axes_model(alpha, beta), 10_000, 10_000, SEED).unwrap());
    }
    assert_eq!(rows[0].test, "coupling-dependent");
    assert_eq!(rows[1].test, "coupling-independent");
    verdict(8, "coupling of displacement and duration sums", &rows);
}

#[test]
fn criterion_09_interpolation_weight() {
    let mut rows = Vec::new();
    for (alpha, beta) in REGIMES {
        let model =
            WalkModel::pareto(alpha, beta, SpectralMeasure::uniform_sphere(2).unwrap()).unwrap();
        rows.extend(interpolation_rows(&model, 1000, 100, 1e-3, SEED).unwrap());
    }
    verdict(9, "interpolation weight and continuity", &rows);
}

fn read_tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path
                    .strip_prefix(root)
                    .unwrap()
                    .to_string_lossy()
                    .into_owned();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    out
}

#[test]
fn criterion_10_reproducibility_across_threads() {
    let tmp = tempfile::tempdir().unwrap();
    let mut rows = Vec::new();
    let mut trees = Vec::new();
    for threads in [1, 4] {
        let out = tmp.path().join(format!("threads-{threads}"));
        let doc = format!(
            "alpha = 0.5\nbeta = 0.8\nd = 2\nmeasure = \"uniform-sphere\"\nvariant = \"continuous\"\n\
             n_grid = [10, 100, 1000]\nn_samples = 400\nseed = {SEED}\noutput_dir = {:?}\n",
            out.to_str().unwrap()
        );
        let mut config = parse_config(&doc).unwrap();
        for suite in [Suite::Exponents, Suite::Invariants, Suite::Laplace] {
            run_suite(&config, suite, Some(threads)).unwrap();
        }
        // Identical documents apart from the output path.
        config.output_dir = "out".into();
        trees.push((read_tree(&out), config));
    }
    let (a, b) = (&trees[0], &trees[1]);
    let csvs: Vec<_> =
        a.0.keys()
            .filter(|k| k.ends_with(".csv"))
            .cloned()
            .collect();
    assert!(csvs.len() >= 6, "{csvs:?}");
    let differing =
        a.0.keys()
            .chain(b.0.keys())
            .filter(|k| k.ends_with(".csv") && a.0.get(*k) != b.0.get(*k))
            .count();
    rows.push(ReportRow::check(
        "byte-identical-csv",
        format!("threads=1 vs 4, csv files={}", csvs.len()),
        differing as f64,
        levywalk::harness::Bound::AtMost(0.0),
    ));
    assert_eq!(a.1, b.1);
    verdict(10, "reproducibility across thread counts", &rows);
}
