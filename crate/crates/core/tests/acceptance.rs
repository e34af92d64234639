//! Acceptance suite. Runs every criterion, prints one PASS/FAIL/SKIP line
//! each, and exits non-zero if any criterion fails.
//!
//! Reference datasets are read from `$TRICOUNT_SNAP_DIR` (default
//! `<workspace>/data/snap`); see `scripts/snap_datasets.sh`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::Ratio;

use colorful_triangles::exact::{brute_force_count, count_triangles_exact, enumerate_triangles, triangle_stats};
use colorful_triangles::generators::{
    complete, complete_bipartite, cycle, disjoint_triangles, gnp, path, petersen, star, triangle_fan,
};
use colorful_triangles::graph::{read_edge_list_file, Graph, ParseOptions, VertexIds};
use colorful_triangles::mapreduce::run_pipeline;
use colorful_triangles::rng::derive_seed;
use colorful_triangles::sampler::{
    estimate_once, estimate_with_coloring, independent_edge_estimate, monochromatic_subgraph,
    random_coloring, Coloring,
};
use colorful_triangles::sufficient_p_second_moment;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

/// C1: forward counting equals the O(n³) triple scan.
fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut graphs: Vec<Graph> = Vec::new();
    for i in 0..500u64 {
        let seed = derive_seed(0xC1, i);
        let n = 3 + (seed % 118) as usize;
        // Densities from 1/64 to 63/64.
        let num = 1 + (seed >> 8) % 63;
        graphs.push(gnp(n, num, 64, seed).unwrap());
    }
    for k in [1, 5, 40, 119] {
        graphs.push(star(k));
    }
    for k in [1, 2, 3, 4, 10, 25, 60] {
        graphs.push(complete(k));
    }
    for (a, b) in [(1, 1), (3, 4), (10, 12), (60, 60)] {
        graphs.push(complete_bipartite(a, b));
    }
    graphs.push(petersen());

    let mut mismatches = 0;
    let mut bipartite_nonzero = 0;
    for g in &graphs {
        let fast = count_triangles_exact(g).triangles;
        if fast != brute_force_count(g).unwrap() {
            mismatches += 1;
        }
    }
    for (a, b) in [(3, 4), (10, 12), (60, 60)] {
        if count_triangles_exact(&complete_bipartite(a, b)).triangles != 0 {
            bipartite_nonzero += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        mismatches == 0 && bipartite_nonzero == 0 && elapsed < Duration::from_secs(30),
        format!("{} graphs, {mismatches} mismatches, {:.2?}", graphs.len(), elapsed),
    )
}

struct DatasetRow {
    name: &'static str,
    files: &'static [&'static str],
    n: usize,
    m: usize,
    t: u64,
    delta: u64,
    t_max: u64,
    /// Exact value, or mantissa and exponent when printed in scientific form.
    sum_delta_sq: Printed,
    bound: Printed,
}

#[derive(Clone, Copy)]
enum Printed {
    Exact(u128),
    Sci(&'static str, i32),
}

impl Printed {
    fn matches(self, value: u128) -> bool {
        match self {
            Printed::Exact(x) => x == value,
            Printed::Sci(mantissa, exp) => {
                let digits = mantissa.split('.').nth(1).map_or(0, str::len) as i32;
                let scaled = value as f64 / 10f64.powi(exp - digits);
                let want: f64 = mantissa.replace('.', "").parse().unwrap();
                scaled.round() == want
            }
        }
    }
}

const DATASETS: &[DatasetRow] = &[
    DatasetRow {
        name: "AS",
        files: &["AS.txt", "as.txt"],
        n: 7_716,
        m: 12_572,
        t: 6_584,
        delta: 344,
        t_max: 2_047,
        sum_delta_sq: Printed::Exact(595_632),
        bound: Printed::Exact(6_794_688),
    },
    DatasetRow {
        name: "Oregon",
        files: &["Oregon.txt", "oregon.txt", "oregon1_010526.txt"],
        n: 11_492,
        m: 23_409,
        t: 19_894,
        delta: 537,
        t_max: 3_638,
        sum_delta_sq: Printed::Exact(2_347_560),
        bound: Printed::Exact(32_049_234),
    },
    DatasetRow {
        name: "Enron",
        files: &["Enron.txt", "Email-Enron.txt", "email-Enron.txt"],
        n: 36_692,
        m: 183_831,
        t: 727_044,
        delta: 420,
        t_max: 17_744,
        sum_delta_sq: Printed::Exact(75_237_684),
        bound: Printed::Exact(916_075_440),
    },
    DatasetRow {
        name: "ca-HepPh",
        files: &["ca-HepPh.txt", "CA-HepPh.txt"],
        n: 12_008,
        m: 118_489,
        t: 3_358_499,
        delta: 450,
        t_max: 39_633,
        sum_delta_sq: Printed::Sci("1.8839", 9),
        bound: Printed::Sci("4.534", 9),
    },
    DatasetRow {
        name: "AstroPh",
        files: &["AstroPh.txt", "ca-AstroPh.txt", "CA-AstroPh.txt"],
        n: 18_772,
        m: 198_050,
        t: 1_351_441,
        delta: 350,
        t_max: 11_269,
        sum_delta_sq: Printed::Exact(148_765_753),
        bound: Printed::Sci("1.419", 9),
    },
];

fn snap_dir() -> PathBuf {
    std::env::var_os("TRICOUNT_SNAP_DIR").map(PathBuf::from).unwrap_or_else(|| {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/snap")
    })
}

fn find_dataset(row: &DatasetRow) -> Option<PathBuf> {
    let dir = snap_dir();
    row.files.iter().map(|f| dir.join(f)).find(|p| p.is_file())
}

/// C2: dataset statistics.
fn dataset_statistics() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = Vec::new();
    let mut missing = Vec::new();
    for row in DATASETS {
        let Some(file) = find_dataset(row) else {
            missing.push(row.name);
            continue;
        };
        let dense = read_edge_list_file(&file, &ParseOptions::default()).unwrap();
        let s = triangle_stats(&dense);
        // The vertex column may count raw ids (including gaps) rather than
        // distinct ids; accept either reading.
        let n_ok = dense.n() == row.n || {
            let opts = ParseOptions { ids: VertexIds::Raw, ..Default::default() };
            read_edge_list_file(&file, &opts).unwrap().n() == row.n
        };
        let ok = n_ok
            && dense.m() == row.m
            && s.t == row.t
            && s.delta_max == row.delta
            && s.t_max == row.t_max
            && row.sum_delta_sq.matches(s.sum_delta_sq)
            && row.bound.matches(s.bound_3_delta_t)
            && s.bound_3_delta_t == 3 * row.delta as u128 * row.t as u128;
        let line = format!(
            "{}: n={} m={} t={} Δ={} t_max={} Σδ²={} 3Δt={}",
            row.name,
            dense.n(),
            dense.m(),
            s.t,
            s.delta_max,
            s.t_max,
            s.sum_delta_sq,
            s.bound_3_delta_t
        );
        if ok {
            checked.push(line);
        } else {
            failures.push(line);
        }
    }
    if checked.is_empty() && failures.is_empty() {
        return Outcome::Skip(format!(
            "no SNAP files under {} (missing: {})",
            snap_dir().display(),
            missing.join(", ")
        ));
    }
    let mut detail = checked.iter().chain(&failures).cloned().collect::<Vec<_>>().join("; ");
    if !missing.is_empty() {
        detail.push_str(&format!("; not found: {}", missing.join(", ")));
    }
    check(failures.is_empty(), detail)
}

fn all_colorings(n: usize, colors: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (colors as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        (0..n)
            .map(|_| {
                let c = (code % colors as u64) as u32;
                code /= colors as u64;
                c
            })
            .collect()
    })
}

fn exhaustive_family() -> Vec<(&'static str, Graph)> {
    vec![
        ("K3", complete(3)),
        ("K4", complete(4)),
        ("K5", complete(5)),
        ("K6", complete(6)),
        ("fan3", triangle_fan(3)),
        ("2xK3", disjoint_triangles(2)),
        ("3xK3", disjoint_triangles(3)),
        ("petersen", petersen()),
        ("C5", cycle(5)),
        ("P6", path(6)),
        ("K3,3", complete_bipartite(3, 3)),
        ("gnp10a", gnp(10, 1, 2, 1).unwrap()),
        ("gnp10b", gnp(10, 2, 3, 2).unwrap()),
        ("gnp9", gnp(9, 3, 4, 3).unwrap()),
    ]
}

/// C3: mean of scaled over every coloring equals t, in exact arithmetic.
fn exhaustive_unbiasedness() -> Outcome {
    let mut bad = Vec::new();
    let family = exhaustive_family();
    for (name, g) in &family {
        let t = count_triangles_exact(g).triangles;
        for colors in [2u32, 3] {
            let mut sum = 0u128;
            let mut count = 0u128;
            for c in all_colorings(g.n(), colors) {
                let coloring = Coloring::from_colors(c, colors).unwrap();
                sum += estimate_with_coloring(g, &coloring).unwrap().scaled_integer().unwrap();
                count += 1;
            }
            if Ratio::new(sum, count) != Ratio::from_integer(t as u128) {
                bad.push(format!("{name}/N={colors}: {sum}/{count} vs t={t}"));
            }
        }
    }
    check(bad.is_empty(), format!("{} graphs × N∈{{2,3}}; {}", family.len(), if bad.is_empty() { "all exact".into() } else { bad.join(", ") }))
}

/// C4: Monte Carlo mean within three standard errors of t.
fn monte_carlo_unbiasedness() -> Outcome {
    let start = Instant::now();
    let g = disjoint_triangles(1000);
    let xs: Vec<f64> = (0..10_000u64)
        .map(|s| estimate_once(&g, 4, s).unwrap().scaled_f64())
        .collect();
    let (mean, se) = mean_and_se(&xs);
    let elapsed = start.elapsed();
    check(
        (mean - 1000.0).abs() <= 3.0 * se && elapsed < Duration::from_secs(60),
        format!("mean={mean:.2} se={se:.2} |dev|/se={:.2} {elapsed:.2?}", (mean - 1000.0).abs() / se),
    )
}

/// C5: concentration with N from the second-moment bound.
fn concentration_at_second_moment_rate() -> Outcome {
    let k = 1_000_000usize;
    let g = disjoint_triangles(k);
    let bound = sufficient_p_second_moment(k as u64, 1, g.n() as u64).unwrap();
    let colors = bound.colors;
    let trials = 400;
    let t = k as f64;
    let within = (0..trials)
        .filter(|&i| {
            let e = estimate_once(&g, colors, derive_seed(0xC5, i)).unwrap();
            (e.scaled_f64() - t).abs() <= 0.1 * t
        })
        .count();
    let frac = within as f64 / trials as f64;
    let q = 1.0 / (colors as f64 * colors as f64);
    let predicted = binomial_mass_within(k as u64, q, 0.9 * t * q, 1.1 * t * q);
    check(
        frac >= 0.95,
        format!(
            "p={:.6} N={colors} within 10%: {within}/{trials} = {frac:.3} (need ≥ 0.95; Bin(t, 1/N²) gives {predicted:.4})",
            bound.p
        ),
    )
}

/// `P(lo ≤ X ≤ hi)` for `X ~ Bin(n, q)`, summed in log space.
fn binomial_mass_within(n: u64, q: f64, lo: f64, hi: f64) -> f64 {
    let mut log_pmf = n as f64 * (1.0 - q).ln();
    let step = (q / (1.0 - q)).ln();
    let mut mass = 0.0;
    for j in 0..=(hi.floor() as u64).min(n) {
        if j as f64 >= lo {
            mass += log_pmf.exp();
        }
        log_pmf += ((n - j) as f64).ln() - ((j + 1) as f64).ln() + step;
    }
    mass
}

/// C6: no triangle ever keeps exactly two of its edges.
fn two_of_three_closure() -> Outcome {
    let mut violations = 0usize;
    let mut triangles_checked = 0usize;
    let mut pairs = 0usize;
    let graphs: Vec<Graph> = (0..100u64)
        .map(|i| {
            let seed = derive_seed(0xC6, i);
            gnp(8 + (seed % 50) as usize, 1 + (seed >> 8) % 3, 4, seed).unwrap()
        })
        .collect();
    for (gi, g) in graphs.iter().enumerate() {
        let triangles = enumerate_triangles(g);
        for j in 0..100u64 {
            let colors = 2 + (j % 4) as u32;
            let coloring = random_coloring(g.n(), colors, derive_seed(gi as u64, j)).unwrap();
            let sample = monochromatic_subgraph(g, &coloring).unwrap();
            let kept = |e: (u32, u32)| sample.edges().binary_search(&e).is_ok();
            for &(a, b, c) in &triangles {
                let k = [(a, b), (a, c), (b, c)].into_iter().filter(|&e| kept(e)).count();
                violations += (k == 2) as usize;
            }
            triangles_checked += triangles.len();
            pairs += 1;
        }
    }
    check(
        violations == 0,
        format!("{pairs} (graph, coloring) pairs, {triangles_checked} triangle checks, {violations} violations"),
    )
}

/// C7: independent sampling loses all triangles; colorful keeps ~p²t.
fn sampler_contrast() -> Outcome {
    let g = disjoint_triangles(10_000);
    let trials = 10_000u64;
    let mut zero_independent = 0u64;
    let mut colorful_raw = 0u64;
    for i in 0..trials {
        let seed = derive_seed(0xC7, i);
        zero_independent += (independent_edge_estimate(&g, 1, 100, seed).unwrap().raw_t == 0) as u64;
        colorful_raw += estimate_once(&g, 100, seed).unwrap().raw_t;
    }
    let zero_frac = zero_independent as f64 / trials as f64;
    let mean_raw = colorful_raw as f64 / trials as f64;
    check(
        zero_frac >= 0.95 && (0.7..=1.3).contains(&mean_raw),
        format!("independent P(raw=0)={zero_frac:.4}; colorful mean raw_T={mean_raw:.4}"),
    )
}

/// C8: pipeline equals the direct estimate; mapper count is irrelevant.
fn pipeline_equivalence() -> Outcome {
    let mut bad = 0;
    for i in 0..200u64 {
        let seed = derive_seed(0xC8, i);
        let n = 5 + (seed % 150) as usize;
        let g = gnp(n, 1 + (seed >> 8) % 20, 40, seed).unwrap();
        let colors = 1 + ((seed >> 16) % 8) as u32;
        let direct = estimate_once(&g, colors, seed).unwrap();
        let runs: Vec<_> = [1, 2, 8].iter().map(|&k| run_pipeline(&g, colors, seed, k).unwrap()).collect();
        let same_est = runs.iter().all(|(e, _)| e.scaled == direct.scaled && *e == direct);
        let same_metrics = runs.windows(2).all(|w| {
            let (a, b) = (&w[0].1, &w[1].1);
            a.per_color == b.per_color
                && a.reducer_triangles == b.reducer_triangles
                && a.emitted_total == b.emitted_total
        });
        if !(same_est && same_metrics) {
            bad += 1;
        }
    }
    check(bad == 0, format!("200 triples, {bad} mismatches"))
}

fn gnp_stand_in(n: usize, m: usize, seed: u64) -> Graph {
    let pairs = (n as u64) * (n as u64 - 1) / 2;
    gnp(n, m as u64, pairs, seed).unwrap()
}

fn dataset_or_stand_in(name: &str, n: usize, m: usize) -> (Graph, String) {
    let row = DATASETS.iter().find(|r| r.name == name).unwrap();
    match find_dataset(row) {
        Some(path) => (read_edge_list_file(&path, &ParseOptions::default()).unwrap(), name.to_string()),
        None => (gnp_stand_in(n, m, 0x5EED), format!("G(n={n}, m≈{m}) stand-in")),
    }
}

/// C9: expected map output pm and reducer load p²m.
fn map_reduce_loads() -> Outcome {
    let (g, label) = dataset_or_stand_in("AS", 7_716, 12_572);
    let m = g.m() as f64;
    let colors = 10u32;
    let mut emitted = Vec::new();
    let mut loads = Vec::new();
    let mut max_loads = Vec::new();
    for s in 0..1000u64 {
        let (_, metrics) = run_pipeline(&g, colors, derive_seed(0xC9, s), 4).unwrap();
        emitted.push(metrics.emitted_total as f64);
        loads.extend(metrics.per_color.iter().map(|&x| x as f64));
        max_loads.push(metrics.max_reducer_load as f64);
    }
    let (me, se_e) = mean_and_se(&emitted);
    let (ml, se_l) = mean_and_se(&loads);
    let (mx, _) = mean_and_se(&max_loads);
    let ok = (me - m / 10.0).abs() <= 3.0 * se_e && (ml - m / 100.0).abs() <= 3.0 * se_l;
    check(
        ok,
        format!(
            "{label} m={}: emitted {me:.2}±{se_e:.2} (expect {:.2}); per-reducer {ml:.3}±{se_l:.3} (expect {:.3}); mean max load {mx:.1}",
            g.m(),
            m / 10.0,
            m / 100.0
        ),
    )
}

/// C10: sampled/exact work ratio near p².
fn speedup_proxy() -> Outcome {
    let (g, label) = dataset_or_stand_in("Enron", 36_692, 183_831);
    let exact = count_triangles_exact(&g);
    let trials = 100u64;
    let runs: Vec<_> = (0..trials).map(|s| estimate_once(&g, 16, derive_seed(0xCA, s)).unwrap()).collect();
    let mean = |f: fn(&colorful_triangles::Estimate) -> u64| {
        runs.iter().map(|e| f(e) as f64).sum::<f64>() / trials as f64
    };
    let sampled = mean(|e| e.work_ops);
    let ratio = sampled / exact.work_ops as f64;
    let merge_ratio = mean(|e| e.merge_ops) / exact.merge_ops.max(1) as f64;
    check(
        (1.0 / 512.0..=1.0 / 128.0).contains(&ratio),
        format!(
            "{label}: exact ops {}, mean sampled ops {sampled:.1}, ratio 1/{:.1} (band 1/512..1/128); forward-merge ratio 1/{:.1}",
            exact.work_ops,
            1.0 / ratio,
            1.0 / merge_ratio
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1 oracle equivalence", oracle_equivalence),
        ("C2 dataset statistics", dataset_statistics),
        ("C3 exhaustive unbiasedness", exhaustive_unbiasedness),
        ("C4 Monte Carlo unbiasedness", monte_carlo_unbiasedness),
        ("C5 concentration at second-moment rate", concentration_at_second_moment_rate),
        ("C6 two-of-three closure", two_of_three_closure),
        ("C7 sampler contrast", sampler_contrast),
        ("C8 pipeline equivalence", pipeline_equivalence),
        ("C9 map/reduce loads", map_reduce_loads),
        ("C10 work-ratio speedup proxy", speedup_proxy),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Outcome::Pass(d) => println!("PASS  {name} [{secs:.1}s]: {d}"),
            Outcome::Skip(d) => println!("SKIP  {name}: {d}"),
            Outcome::Fail(d) => {
                failed += 1;
                println!("FAIL  {name} [{secs:.1}s]: {d}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
