//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::process::{Command, ExitCode};
use std::time::Instant;

use pseudofactor::generators::{complete, cycle, gnp, join_sharpness, pendant_sharpness, EdgeProb};
use pseudofactor::harness::{report_body, theorem_bound};
use pseudofactor::heuristic::{posa_cover, solve};
use pseudofactor::{
    independence_number, min_small_components_exact, min_small_components_naive,
    validate_pseudo_factor, Graph,
};

/// Every comparison in this suite is exact.
const TOLERANCE: usize = 0;
const MIN_RANDOM_GRAPHS: usize = 500;
const MIN_CROSS_CHECK_GRAPHS: usize = 300;
const RANDOM_B: [usize; 3] = [4, 5, 6];
const RANDOM_N: std::ops::RangeInclusive<usize> = 4..=9;
const PROBS: [&str; 3] = ["0.3", "0.5", "0.7"];
/// Graphs with δ ≥ 1 kept per (n, p) cell.
const PER_CELL: usize = 30;
const NAIVE_MAX_N: usize = 8;
const BRUTE_ALPHA_MAX_N: usize = 12;
const JOIN_MAX_N: usize = 13;
const DETERMINISM_JOBS: [usize; 2] = [1, 8];

struct Case {
    id: String,
    g: Graph,
    alpha: usize,
    delta: usize,
    /// Which b values this graph is checked at.
    bs: Vec<usize>,
    random: bool,
}

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(name: &'static str, failures: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    if let Some(first) = failures.first() {
        detail = format!("{detail}; {} failures, first: {first}", failures.len());
    }
    Outcome {
        name,
        pass: failures.is_empty(),
        detail,
    }
}

fn case(id: String, g: Graph, bs: Vec<usize>, random: bool) -> Case {
    let alpha = independence_number(&g).expect("corpus graphs fit the α solver");
    let delta = g.min_degree().unwrap_or(0);
    Case {
        id,
        g,
        alpha,
        delta,
        bs,
        random,
    }
}

fn within_bound(value: usize, bound: usize) -> bool {
    value <= bound + TOLERANCE
}

fn build_corpus() -> Vec<Case> {
    let mut corpus = Vec::new();
    for n in RANDOM_N {
        for p in PROBS {
            let prob: EdgeProb = p.parse().unwrap();
            let mut kept = 0;
            let mut seed = 0u64;
            while kept < PER_CELL {
                let g = gnp(n, &prob, seed).unwrap();
                let id = format!("gnp n={n} p={p} seed={seed}");
                let c = case(id, g, RANDOM_B.to_vec(), true);
                if c.delta >= 1 {
                    kept += 1;
                }
                corpus.push(c);
                seed += 1;
                assert!(seed < 10_000, "too few δ ≥ 1 graphs for n={n} p={p}");
            }
        }
    }
    for n in 10..=BRUTE_ALPHA_MAX_N {
        for p in PROBS {
            let prob: EdgeProb = p.parse().unwrap();
            for seed in 0..10 {
                let g = gnp(n, &prob, seed).unwrap();
                corpus.push(case(
                    format!("gnp n={n} p={p} seed={seed}"),
                    g,
                    RANDOM_B.to_vec(),
                    false,
                ));
            }
        }
    }
    for (h, bs) in join_instances() {
        let k = h.0;
        let g = join_sharpness(&complete(k).unwrap(), h.1).unwrap();
        corpus.push(case(format!("join h=K{k} p={}", h.1), g, bs, false));
    }
    for k in 3..=5 {
        let g = pendant_sharpness(&cycle(k).unwrap()).unwrap();
        corpus.push(case(format!("pendant h=C{k}"), g, vec![4, 5], false));
    }
    corpus
}

/// ((|H|, p), b values) for the join family with n ≤ `JOIN_MAX_N`.
fn join_instances() -> Vec<((usize, usize), Vec<usize>)> {
    let mut by_hp: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for k in 1..=3 {
        for b in [4, 6] {
            let base = b * k / 2;
            for p in base + 1..=base + 3 {
                if k + 2 * p <= JOIN_MAX_N {
                    by_hp.entry((k, p)).or_default().push(b);
                }
            }
        }
    }
    by_hp.into_iter().collect()
}

fn brute_alpha(g: &Graph) -> usize {
    let n = g.vertex_count();
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).bits()).collect();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = build_corpus();

    let mut optimum: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, c) in corpus.iter().enumerate() {
        for &b in &c.bs {
            let r = min_small_components_exact(&c.g, b).expect("corpus fits the oracle");
            optimum.insert((i, b), r.optimum);
        }
    }

    let results = [
        random_bound(&corpus, &optimum),
        join_sharpness_check(&corpus, &optimum),
        pendant_sharpness_check(&corpus, &optimum),
        kl_regime(&corpus, &optimum),
        oracle_cross_check(&corpus, &optimum),
        alpha_cross_check(&corpus),
        heuristic_soundness(&corpus, &optimum),
        posa_property(&corpus),
        determinism(),
    ];

    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!("{tag} {} {}: {}", i + 1, r.name, r.detail);
        failed += usize::from(!r.pass);
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn random_bound(corpus: &[Case], optimum: &BTreeMap<(usize, usize), usize>) -> Outcome {
    let mut graphs = 0;
    let mut runs = 0;
    let mut failures = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        if !c.random || c.delta == 0 {
            continue;
        }
        graphs += 1;
        for &b in &RANDOM_B {
            runs += 1;
            let bound = theorem_bound(c.alpha, c.delta, b).unwrap();
            let opt = optimum[&(i, b)];
            if !within_bound(opt, bound) {
                failures.push(format!("{} b={b}: optimum {opt} > bound {bound}", c.id));
            }
        }
    }
    if graphs < MIN_RANDOM_GRAPHS {
        failures.push(format!("only {graphs} graphs, need {MIN_RANDOM_GRAPHS}"));
    }
    outcome(
        "bound on random corpus",
        &failures,
        format!(
            "{graphs} graphs with δ ≥ 1, {runs} runs, {} violations",
            failures.len()
        ),
    )
}

fn join_sharpness_check(corpus: &[Case], optimum: &BTreeMap<(usize, usize), usize>) -> Outcome {
    let mut runs = 0;
    let mut failures = Vec::new();
    for (i, c) in corpus
        .iter()
        .enumerate()
        .filter(|(_, c)| c.id.starts_with("join"))
    {
        for &b in &c.bs {
            runs += 1;
            let bound = theorem_bound(c.alpha, c.delta, b).unwrap();
            let opt = optimum[&(i, b)];
            if opt.abs_diff(bound) > TOLERANCE {
                failures.push(format!("{} b={b}: optimum {opt} != bound {bound}", c.id));
            }
        }
    }
    if runs == 0 {
        failures.push("no join instances".into());
    }
    outcome("join family is tight", &failures, format!("{runs} runs"))
}

fn pendant_sharpness_check(corpus: &[Case], optimum: &BTreeMap<(usize, usize), usize>) -> Outcome {
    let mut runs = 0;
    let mut failures = Vec::new();
    for (i, c) in corpus
        .iter()
        .enumerate()
        .filter(|(_, c)| c.id.starts_with("pendant"))
    {
        let h = c.g.vertex_count() / 2;
        for &b in &c.bs {
            runs += 1;
            let bound = theorem_bound(c.alpha, c.delta, b).unwrap();
            let opt = optimum[&(i, b)];
            if opt != bound || bound != h {
                failures.push(format!(
                    "{} b={b}: optimum {opt}, bound {bound}, |H| {h}",
                    c.id
                ));
            }
        }
    }
    if runs != 6 {
        failures.push(format!("expected 6 runs, got {runs}"));
    }
    outcome("pendant family is tight", &failures, format!("{runs} runs"))
}

fn kl_regime(corpus: &[Case], optimum: &BTreeMap<(usize, usize), usize>) -> Outcome {
    let mut runs = 0;
    let mut failures = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        for &b in c.bs.iter().filter(|&&b| b >= 4) {
            if c.delta == 0 || 2 * c.alpha > b * (c.delta - 1) {
                continue;
            }
            runs += 1;
            let opt = optimum[&(i, b)];
            if opt > TOLERANCE {
                failures.push(format!("{} b={b}: optimum {opt}", c.id));
            }
        }
    }
    outcome(
        "spanning [2,b]-factor when 2α ≤ b(δ-1)",
        &failures,
        format!("{runs} runs in the regime, {} violations", failures.len()),
    )
}

fn oracle_cross_check(corpus: &[Case], optimum: &BTreeMap<(usize, usize), usize>) -> Outcome {
    let mut graphs = 0;
    let mut runs = 0;
    let mut failures = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        if c.g.vertex_count() > NAIVE_MAX_N {
            continue;
        }
        graphs += 1;
        for &b in &c.bs {
            runs += 1;
            let naive = min_small_components_naive(&c.g, b).unwrap();
            let exact = optimum[&(i, b)];
            if naive != exact {
                failures.push(format!("{} b={b}: exact {exact}, naive {naive}", c.id));
            }
        }
    }
    if graphs < MIN_CROSS_CHECK_GRAPHS {
        failures.push(format!(
            "only {graphs} graphs, need {MIN_CROSS_CHECK_GRAPHS}"
        ));
    }
    outcome(
        "exact oracle matches naive enumeration",
        &failures,
        format!("{graphs} graphs with n ≤ {NAIVE_MAX_N}, {runs} runs"),
    )
}

fn alpha_cross_check(corpus: &[Case]) -> Outcome {
    let mut graphs = 0;
    let mut failures = Vec::new();
    for c in corpus
        .iter()
        .filter(|c| c.g.vertex_count() <= BRUTE_ALPHA_MAX_N)
    {
        graphs += 1;
        let brute = brute_alpha(&c.g);
        if brute != c.alpha {
            failures.push(format!(
                "{}: branch and bound {}, enumeration {brute}",
                c.id, c.alpha
            ));
        }
    }
    outcome(
        "independence number matches enumeration",
        &failures,
        format!("{graphs} graphs with n ≤ {BRUTE_ALPHA_MAX_N}"),
    )
}

fn heuristic_soundness(corpus: &[Case], optimum: &BTreeMap<(usize, usize), usize>) -> Outcome {
    let mut runs = 0;
    let mut bounded = 0;
    let mut attained = 0;
    let mut failures = Vec::new();
    for (i, c) in corpus.iter().enumerate() {
        for &b in &c.bs {
            runs += 1;
            let sol = match solve(&c.g, b) {
                Ok(s) => s,
                Err(e) => {
                    failures.push(format!("{} b={b}: {e}", c.id));
                    continue;
                }
            };
            let tag = format!("{} b={b}", c.id);
            if let Err(e) = validate_pseudo_factor(&c.g, &sol.factor.edges(), b) {
                failures.push(format!("{tag}: invalid output: {e}"));
            }
            let small = sol.small_count();
            let opt = optimum[&(i, b)];
            if small < opt {
                failures.push(format!("{tag}: {small} below optimum {opt}"));
            }
            if small > c.alpha {
                failures.push(format!("{tag}: {small} above α {}", c.alpha));
            }
            let steps = sol.steps();
            if steps.iter().any(|s| s.after >= s.before)
                || steps.windows(2).any(|w| w[0].after != w[1].before)
            {
                failures.push(format!("{tag}: descent audit not strictly decreasing"));
            }
            if c.delta >= 1 && b != 3 {
                bounded += 1;
                if small <= theorem_bound(c.alpha, c.delta, b).unwrap() {
                    attained += 1;
                }
            }
        }
    }
    let fraction = if bounded == 0 {
        0.0
    } else {
        attained as f64 / bounded as f64
    };
    outcome(
        "heuristic output is sound",
        &failures,
        format!("{runs} runs; bound attained on {attained}/{bounded} ({fraction:.4})"),
    )
}

fn posa_property(corpus: &[Case]) -> Outcome {
    let mut graphs = 0;
    let mut failures = Vec::new();
    for c in corpus
        .iter()
        .filter(|c| c.g.vertex_count() <= BRUTE_ALPHA_MAX_N)
    {
        graphs += 1;
        let parts = posa_cover(&c.g, c.g.vertices()).unwrap();
        let covered = parts.iter().fold(pseudofactor::VertexSet::EMPTY, |acc, p| {
            acc.union(p.vertices())
        });
        let total: usize = parts.iter().map(|p| p.vertices().len()).sum();
        if covered != c.g.vertices() || total != c.g.vertex_count() {
            failures.push(format!("{}: parts do not partition V", c.id));
        }
        if !within_bound(parts.len(), c.alpha) {
            failures.push(format!("{}: {} parts > α {}", c.id, parts.len(), c.alpha));
        }
    }
    outcome(
        "cycle/edge/vertex cover has at most α parts",
        &failures,
        format!("{graphs} graphs with n ≤ {BRUTE_ALPHA_MAX_N}"),
    )
}

const DETERMINISM_MANIFEST: &str = "\
# determinism corpus
gnp n=8 p=0.5 seed=1 count=24
gnp n=9 p=0.3 seed=100 count=12
gnp n=7 p=0.7 seed=7 count=12
join h=K1 p=3
join h=K2 p=5
pendant h=C4
cycle n=30
";

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("manifest.txt");
    fs::write(&manifest, DETERMINISM_MANIFEST).unwrap();
    let mut bodies = Vec::new();
    let mut failures = Vec::new();
    for round in 0..2 {
        for jobs in DETERMINISM_JOBS {
            let report = dir.path().join(format!("r{round}_j{jobs}.jsonl"));
            let status = Command::new(env!("CARGO_BIN_EXE_pseudofactor"))
                .arg("verify")
                .arg(&manifest)
                .args([
                    "-b",
                    "4,5,6",
                    "--mode",
                    "both",
                    "--jobs",
                    &jobs.to_string(),
                    "--report",
                ])
                .arg(&report)
                .output()
                .unwrap();
            if !status.status.success() {
                failures.push(format!("jobs={jobs}: exit {:?}", status.status.code()));
                continue;
            }
            let text = fs::read_to_string(&report).unwrap();
            bodies.push((jobs, report_body(&text).to_owned()));
        }
    }
    if let Some((_, first)) = bodies.first() {
        for (jobs, body) in &bodies[1..] {
            if body != first {
                failures.push(format!("jobs={jobs} body differs"));
            }
        }
    }
    let lines = bodies.first().map(|(_, b)| b.lines().count()).unwrap_or(0);
    outcome(
        "verify reports are byte-identical across runs and job counts",
        &failures,
        format!(
            "{} runs at jobs {:?}, {lines} body lines each",
            bodies.len(),
            DETERMINISM_JOBS
        ),
    )
}
