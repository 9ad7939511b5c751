//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line.

use std::collections::BTreeSet;
use std::time::Instant;

use netcover::graph::{
    complete, configuration_model, degree_distribution, erdos_renyi, largest_component, lattice,
    path, powerlaw_degrees, rewire, ring,
};
use netcover::harness::{aggregate, compare_curves, run_experiment, stationary_start, TraceStats};
use netcover::policy::{run_policy, run_policy_from, Policy, PolicyKind};
use netcover::predict::{
    binomial_degrees, er_excess, excess_moment_ratio, excess_recursion, gamma_d_tau2,
    grid_bfs_yield, powerlaw_excess, rw_exact_taboo, rw_steady_curve, rwnr_curve, si_meanfield,
    truncated_powerlaw,
};
use netcover::{rng_from_seed, CoverState, DegreeDistribution, Graph, NodeId};
use rand::Rng;

fn report(n: u32, pass: bool, detail: &str) {
    println!(
        "criterion {n}: {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

fn policy(k: PolicyKind) -> Policy {
    Policy::new(k).unwrap()
}

/// Configuration-model power-law graph, largest component.
fn powerlaw_graph(n: usize, seed: u64) -> Graph {
    let degrees = powerlaw_degrees(n, 2.5, 2, 100, seed).unwrap();
    largest_component(&configuration_model(&degrees, seed).unwrap())
}

fn pooled(a: &TraceStats, b: &TraceStats, t: usize) -> f64 {
    (a.stderr_at(t).unwrap().powi(2) + b.stderr_at(t).unwrap().powi(2)).sqrt()
}

#[test]
fn criterion_01_ring_closed_form() {
    let clock = Instant::now();
    let n = 1000;
    let g = ring(n).unwrap();
    let s = run_experiment(&g, &policy(PolicyKind::Uniform), 100, 1000, 101).unwrap();
    let mut worst = 0.0f64;
    let mut pass = true;
    for t in [1, 10, 100] {
        let closed = n as f64 - n as f64 * (1.0 - 3.0 / n as f64).powi(t as i32);
        let gap = (s.cover_at(t).unwrap() - closed).abs();
        let se = s.stderr_at(t).unwrap();
        pass &= gap <= 3.0 * se + 1e-9;
        if se > 0.0 {
            worst = worst.max(gap / se);
        }
    }
    let secs = clock.elapsed().as_secs_f64();
    pass &= secs < 10.0;
    report(1, pass, &format!("max deviation {worst:.2} stderr, {secs:.2}s"));
}

#[test]
fn criterion_02_rw_exactness() {
    let mut pass = true;
    let mut worst = 0.0f64;
    for (name, g) in [("ring(8)", ring(8).unwrap()), ("path(6)", path(6).unwrap())] {
        let n = g.node_count();
        let rw = policy(PolicyKind::Rw);
        let s = aggregate(&g, n, 100_000, 7, true, |_, seed| {
            let mut rng = rng_from_seed(seed);
            let start = stationary_start(&g, &mut rng);
            run_policy_from(&g, &rw, n, start, &mut rng)
        })
        .unwrap();
        let exact = rw_exact_taboo(&g, n).unwrap();
        for t in 1..=n {
            let gap = (s.cover_at(t).unwrap() - exact.value_at(t).unwrap()).abs();
            let se = s.stderr_at(t).unwrap();
            if gap > 3.0 * se + 1e-9 {
                pass = false;
                println!("  {name} t={t}: gap {gap:.4} stderr {se:.4}");
            }
            if se > 0.0 {
                worst = worst.max(gap / se);
            }
        }
        let steady = rw_steady_curve(&g, 1).unwrap();
        pass &= (exact.value_at(1).unwrap() - steady.value_at(1).unwrap()).abs() <= 1e-12;
    }
    report(2, pass, &format!("max deviation {worst:.2} stderr"));
}

#[test]
fn criterion_03_steady_state_on_k20() {
    let g = complete(20).unwrap();
    let exact = rw_exact_taboo(&g, 200).unwrap();
    let steady = rw_steady_curve(&g, 200).unwrap();
    let worst = exact
        .iter()
        .map(|(t, e)| (e - steady.value_at(t).unwrap()).abs() / 20.0)
        .fold(0.0, f64::max);
    report(3, worst <= 0.01, &format!("max |exact - steady| / N = {worst:.2e}"));
}

#[test]
fn criterion_04_rwnr_recursion() {
    let z1 = rwnr_curve(&path(3).unwrap(), 1)
        .unwrap()
        .undiscovered_edges
        .value_at(1)
        .unwrap();
    let n0 = 2000;
    let g = largest_component(&erdos_renyi(n0, 10.0 / (n0 - 1) as f64, 4).unwrap());
    let n = g.node_count();
    let horizon = n / 2;
    let pred = rwnr_curve(&g, horizon).unwrap().cover;
    let s = run_experiment(&g, &policy(PolicyKind::Rwnr), horizon, 1000, 44).unwrap();
    let r = compare_curves(&s, &pred, 1..=horizon).unwrap();
    let pass = z1 == 0.5 && r.max_relative_error <= 0.05 && *r.t_range.end() == horizon;
    report(
        4,
        pass,
        &format!(
            "Z(1) = {z1}, N = {n}, max relative error {:.4} over t <= {}",
            r.max_relative_error,
            r.t_range.end()
        ),
    );
}

#[test]
fn criterion_05_si_mean_field() {
    let mut rng = rng_from_seed(5);
    let mut inputs: Vec<(DegreeDistribution, usize)> = vec![
        (binomial_degrees(999, 0.01).unwrap(), 1000),
        (DegreeDistribution::from_weights([(1, 0.5), (2, 0.5)]).unwrap(), 300),
        (DegreeDistribution::from_weights([(4, 1.0)]).unwrap(), 500),
    ];
    for _ in 0..20 {
        let n = rng.random_range(50..600);
        let support = rng.random_range(1..10);
        let w: Vec<_> = (0..support)
            .map(|_| (rng.random_range(1..40usize.min(n - 1)), rng.random::<f64>() + 1e-3))
            .collect();
        inputs.push((DegreeDistribution::from_weights(w).unwrap(), n));
    }
    let mut worst_step = 0.0f64;
    for (dd, n) in &inputs {
        let p = si_meanfield(dd, *n, n - 1).unwrap();
        for w in p.trajectory.windows(2) {
            worst_step = worst_step.max((w[1].recruited - w[0].recruited - 1.0).abs());
        }
    }

    let g = powerlaw_graph(10_000, 55);
    let n = g.node_count();
    let hi = n / 2;
    let lo = n.div_ceil(100);
    let pred = si_meanfield(&degree_distribution(&g), n, hi).unwrap();
    let s = run_experiment(&g, &policy(PolicyKind::Si), hi, 1000, 505).unwrap();
    let mut worst_rel = 0.0f64;
    for t in lo..=hi {
        let e = s.frontier_at(t).unwrap();
        let p = pred.frontier.value_at(t).unwrap();
        worst_rel = worst_rel.max((p - e).abs() / e);
    }
    let pass = worst_step <= 1e-9 && worst_rel <= 0.10;
    report(
        5,
        pass,
        &format!(
            "max |dB - 1| = {worst_step:.1e}; N = {n}, frontier max relative error {worst_rel:.4} on t in [{lo}, {hi}]"
        ),
    );
}

#[test]
fn criterion_06_excess_identities() {
    let mut rng = rng_from_seed(6);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let support = rng.random_range(1..8);
        let w: Vec<_> = (0..support)
            .map(|_| (rng.random_range(1..30usize), rng.random::<f64>() + 1e-3))
            .collect();
        let z = DegreeDistribution::from_weights(w).unwrap();
        let table = excess_recursion(&z, z.max_degree() + 2).unwrap();
        for level in table.levels() {
            let ratio = excess_moment_ratio(&z, level.d).unwrap();
            worst = worst.max((ratio - level.excess).abs());
        }
    }
    let two = DegreeDistribution::from_weights([(1, 0.5), (2, 0.5)]).unwrap();
    let t2 = excess_recursion(&two, 2).unwrap();
    let two_ok = (t2.excess(1) - 2.0 / 3.0).abs() <= 1e-9
        && t2.excess(2).abs() <= 1e-9
        && (excess_moment_ratio(&two, 1).unwrap() - 2.0 / 3.0).abs() <= 1e-9
        && excess_moment_ratio(&two, 2).unwrap().abs() <= 1e-9;

    let (n, q) = (101usize, 0.1);
    let binom = binomial_degrees(n - 1, q).unwrap();
    let mut er_ok = (er_excess(n, q, 0).unwrap() - (n - 1) as f64 * q).abs() <= 1e-9;
    for d in 1..=5 {
        let r = excess_moment_ratio(&binom, d).unwrap();
        er_ok &= (r - er_excess(n, q, d).unwrap()).abs() <= 1e-9;
    }

    let mut tau1_ok = true;
    let mut bounds_ok = true;
    for i in 1..=9 {
        let c = i as f64 / 10.0;
        for d in 1..=10 {
            let z = truncated_powerlaw(c, 1.0, d + 1).unwrap();
            let ratio = excess_moment_ratio(&z, d).unwrap();
            tau1_ok &= (powerlaw_excess(c, 1.0, d).unwrap() - ratio).abs() <= 1e-6;
        }
        for d in 1..=20 {
            let scaled = gamma_d_tau2(c, d).unwrap() * (1.0 - c) / c;
            let df = d as f64;
            bounds_ok &= df / (1.0 + 1.0 / df) < scaled && scaled < df + 1.0;
        }
    }
    let pass = worst <= 1e-9 && two_ok && er_ok && tau1_ok && bounds_ok;
    report(
        6,
        pass,
        &format!(
            "recursion vs moments {worst:.1e}, two-point {two_ok}, ER {er_ok}, tau=1 {tau1_ok}, Gamma bounds {bounds_ok}"
        ),
    );
}

#[test]
fn criterion_07_algorithm_ranking() {
    let clock = Instant::now();
    let g = powerlaw_graph(10_000, 77);
    let n = g.node_count();
    let t = n / 10;
    let run = |k| run_experiment(&g, &policy(k), t, 200, 700).unwrap();
    let (md, rwnr, bfs, dfs) = (
        run(PolicyKind::Mod),
        run(PolicyKind::Rwnr),
        run(PolicyKind::Bfs),
        run(PolicyKind::Dfs),
    );
    let order = [("mod", &md), ("rwnr", &rwnr), ("bfs", &bfs), ("dfs", &dfs)];
    let mut pass = true;
    let mut detail = format!("N = {n}, t = {t}:");
    for w in order.windows(2) {
        let (a, b) = (w[0].1, w[1].1);
        let gap = a.cover_at(t).unwrap() - b.cover_at(t).unwrap();
        let z = gap / pooled(a, b, t);
        pass &= z >= 2.0;
        detail += &format!(" {} - {} = {gap:.1} ({z:.1} se);", w[0].0, w[1].0);
    }
    let mean_deg = |s: &TraceStats| s.mean_recruited_degree[..t].iter().sum::<f64>() / t as f64;
    let (db, dd) = (mean_deg(&bfs), mean_deg(&dfs));
    pass &= dd < db;
    let secs = clock.elapsed().as_secs_f64();
    pass &= secs < 120.0;
    detail += &format!(" recruited degree bfs {db:.3} dfs {dd:.3}; {secs:.1}s");
    report(7, pass, &detail);
}

/// New nodes revealed per recruit, grouped by BFS distance from the start.
fn bfs_yields(g: &Graph, rings: usize) -> Vec<f64> {
    let trace = run_policy(g, &policy(PolicyKind::Bfs), g.node_count(), 8).unwrap();
    let start = trace.order[0];
    let mut dist = vec![usize::MAX; g.node_count()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut revealed = vec![0.0; rings + 1];
    let mut size = vec![0.0; rings + 1];
    let mut prev_cover = 1;
    for r in &trace.records {
        let d = dist[r.node];
        if d <= rings {
            revealed[d] += (r.cover - prev_cover) as f64;
            size[d] += 1.0;
        }
        prev_cover = r.cover;
    }
    revealed.iter().zip(&size).map(|(a, b)| a / b).collect()
}

#[test]
fn criterion_08_concavity_and_grid_yields() {
    let mut worst_second = f64::NEG_INFINITY;
    for seed in 0..10u64 {
        let g = if seed % 2 == 0 {
            largest_component(&erdos_renyi(300, 0.02, seed).unwrap())
        } else {
            powerlaw_graph(400, seed)
        };
        let c = rw_steady_curve(&g, 3 * g.node_count()).unwrap();
        for w in c.values.windows(3) {
            worst_second = worst_second.max(w[2] - 2.0 * w[1] + w[0]);
        }
    }
    let mut worst_yield = 0.0f64;
    for (dims, dim) in [(vec![100, 100], 2), (vec![22, 22, 22], 3)] {
        let g = lattice(&dims, true).unwrap();
        let y = bfs_yields(&g, 10);
        for (t, &emp) in y.iter().enumerate().take(11).skip(3) {
            let want = grid_bfs_yield(dim, t).unwrap();
            worst_yield = worst_yield.max((emp - want).abs() / want);
        }
    }
    let pass = worst_second <= 1e-9 && worst_yield <= 0.10;
    report(
        8,
        pass,
        &format!("max second difference {worst_second:.2e}, max yield error {worst_yield:.4}"),
    );
}

#[test]
fn criterion_09_rewiring_flip() {
    let torus = lattice(&[300, 300], true).unwrap();
    let g = rewire(&torus, 9).unwrap();
    let t = g.node_count() / 10;
    let md = run_experiment(&g, &policy(PolicyKind::Mod), t, 50, 900).unwrap();
    let dfs = run_experiment(&g, &policy(PolicyKind::Dfs), t, 50, 900).unwrap();
    let gap = md.cover_at(t).unwrap() - dfs.cover_at(t).unwrap();
    let z = gap / pooled(&md, &dfs, t);
    let md0 = run_experiment(&torus, &policy(PolicyKind::Mod), t, 50, 900).unwrap();
    let dfs0 = run_experiment(&torus, &policy(PolicyKind::Dfs), t, 50, 900).unwrap();
    report(
        9,
        z >= 2.0,
        &format!(
            "rewired: mod {:.1} dfs {:.1} ({z:.1} se); structured: mod {:.1} dfs {:.1}",
            md.cover_at(t).unwrap(),
            dfs.cover_at(t).unwrap(),
            md0.cover_at(t).unwrap(),
            dfs0.cover_at(t).unwrap()
        ),
    );
}

/// Recomputes frontier, observed degrees and uncovered count from scratch.
fn brute_force_matches(g: &Graph, recruited: &BTreeSet<NodeId>, s: &CoverState<'_>) -> bool {
    let mut frontier = std::collections::BTreeMap::new();
    for &u in recruited {
        for &v in g.neighbors(u) {
            if !recruited.contains(&v) {
                *frontier.entry(v).or_insert(0usize) += 1;
            }
        }
    }
    let uncovered = g.node_count() - recruited.len() - frontier.len();
    let max_d = frontier.values().copied().max().unwrap_or(0);
    s.frontier_view() == frontier
        && s.recruited_count() == recruited.len()
        && s.uncovered_count() == uncovered
        && s.max_observed_degree() == max_d
        && s.recruited_nodes().eq(recruited.iter().copied())
        && (0..=max_d).all(|d| {
            let mut b = s.bucket_nodes(d).to_vec();
            b.sort_unstable();
            b == frontier
                .iter()
                .filter(|&(_, &x)| x == d)
                .map(|(&v, _)| v)
                .collect::<Vec<_>>()
        })
}

#[test]
fn criterion_10_engine_correctness() {
    let mut rng = rng_from_seed(10);
    let mut checked_steps = 0usize;
    let mut pass = true;
    for seq in 0..1000u64 {
        let n = rng.random_range(2..=200);
        let q = rng.random_range(0.005..0.2);
        let g = erdos_renyi(n, q, seq).unwrap();
        let start = rng.random_range(0..n);
        let mut s = CoverState::new(&g, start).unwrap();
        let mut recruited = BTreeSet::from([start]);
        let steps = rng.random_range(1..=n);
        for _ in 0..steps {
            let frontier: Vec<_> = s.frontier_view().into_keys().collect();
            if !frontier.is_empty() && rng.random::<f64>() < 0.8 {
                let v = frontier[rng.random_range(0..frontier.len())];
                s.recruit(v).unwrap();
                recruited.insert(v);
            } else {
                let v = rng.random_range(0..n);
                s.sample(v).unwrap();
                recruited.insert(v);
            }
            checked_steps += 1;
            if !brute_force_matches(&g, &recruited, &s) {
                pass = false;
            }
        }
    }
    report(
        10,
        pass,
        &format!("1000 sequences, {checked_steps} steps checked against recomputation"),
    );
}
