//! Monte Carlo checks of predictors and policies against simulation.

use netcover::graph::{
    configuration_model, degree_distribution, erdos_renyi, largest_component, powerlaw_degrees,
    ring,
};
use netcover::harness::{compare_curves, run_experiment, run_experiment_serial};
use netcover::policy::{Policy, PolicyKind};
use netcover::predict::{rw_steady_curve, rwnr_curve, uniform_noreplace_curve, uniform_replace_curve};
use netcover::Graph;

fn policy(k: PolicyKind) -> Policy {
    Policy::new(k).unwrap()
}

fn powerlaw_graph(n: usize, seed: u64) -> Graph {
    let degrees = powerlaw_degrees(n, 2.5, 2, 100, seed).unwrap();
    largest_component(&configuration_model(&degrees, seed).unwrap())
}

#[test]
fn ring_uniform_sampling_at_ten() {
    let g = ring(1000).unwrap();
    let s = run_experiment(&g, &policy(PolicyKind::Uniform), 10, 1000, 3).unwrap();
    let want = 1000.0 - 1000.0 * (1.0 - 3.0 / 1000.0f64).powi(10);
    assert!((s.cover_at(10).unwrap() - want).abs() <= 3.0 * s.stderr_at(10).unwrap());
    let curve = uniform_replace_curve(&degree_distribution(&g), 1000, 10).unwrap();
    assert!((curve.value_at(10).unwrap() - want).abs() < 1e-9);
}

#[test]
fn sampling_without_replacement_covers_more() {
    let g = ring(100).unwrap();
    let with = run_experiment(&g, &policy(PolicyKind::Uniform), 10, 10_000, 1).unwrap();
    let without = run_experiment(&g, &policy(PolicyKind::UniformNoReplace), 10, 10_000, 1).unwrap();
    let gap = without.cover_at(10).unwrap() - with.cover_at(10).unwrap();
    let se = (with.stderr_at(10).unwrap().powi(2) + without.stderr_at(10).unwrap().powi(2)).sqrt();
    assert!(gap > -3.0 * se, "gap {gap} se {se}");
    let dd = degree_distribution(&g);
    let nr = uniform_noreplace_curve(&dd, 100, 10).unwrap();
    let r = uniform_replace_curve(&dd, 100, 10).unwrap();
    assert!(nr.value_at(10).unwrap() >= r.value_at(10).unwrap());
}

#[test]
fn rw_steady_bounds_simulation_on_er() {
    // independent stationary samples ignore that each walk step lands next to
    // the previous position, so the approximation overestimates the cover
    let g = largest_component(&erdos_renyi(2000, 10.0 / 1999.0, 12).unwrap());
    let n = g.node_count();
    let horizon = n / 5;
    let s = run_experiment(&g, &policy(PolicyKind::Rw), horizon, 300, 17).unwrap();
    let pred = rw_steady_curve(&g, horizon).unwrap();
    let early = compare_curves(&s, &pred, 1..=n / 50).unwrap();
    assert!(early.max_relative_error <= 0.05, "{}", early.max_relative_error);
    let all = compare_curves(&s, &pred, 1..=horizon).unwrap();
    for (t, residual) in all.residuals() {
        assert!(residual >= -3.0 * s.stderr_at(t).unwrap(), "t={t}");
    }
}

#[test]
fn rwnr_prediction_dominates_rw_prediction() {
    let g = powerlaw_graph(10_000, 3);
    let horizon = 3000;
    let nr = rwnr_curve(&g, horizon).unwrap().cover;
    let rw = rw_steady_curve(&g, horizon).unwrap();
    for (t, v) in nr.iter().skip(2) {
        assert!(v >= rw.value_at(t).unwrap() - 1e-9, "t={t}");
    }
}

#[test]
fn dfs_recruits_lower_degrees_than_bfs() {
    let g = powerlaw_graph(10_000, 21);
    let t = g.node_count().div_ceil(10);
    let mean = |k| {
        let s = run_experiment(&g, &policy(k), t, 100, 5).unwrap();
        s.mean_recruited_degree.iter().sum::<f64>() / t as f64
    };
    let (bfs, dfs) = (mean(PolicyKind::Bfs), mean(PolicyKind::Dfs));
    assert!(dfs < bfs, "dfs {dfs} bfs {bfs}");
}

#[test]
fn experiments_are_reproducible_and_order_free() {
    let g = powerlaw_graph(2000, 9);
    for k in [PolicyKind::Rwnr, PolicyKind::Oracle, PolicyKind::Dfs] {
        let a = run_experiment(&g, &policy(k), 150, 100, 31).unwrap();
        let b = run_experiment(&g, &policy(k), 150, 100, 31).unwrap();
        let c = run_experiment_serial(&g, &policy(k), 150, 100, 31).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(a.std_cover.iter().all(|&x| x >= 0.0));
        assert!(a.mean_cover.iter().all(|&x| x >= 1.0 && x <= g.node_count() as f64));
    }
}

#[test]
fn meed_with_er_side_information_behaves_like_random_frontier_choice() {
    // on ER the excess is degree-agnostic, so MEED and SI/MOD land close together
    let g = largest_component(&erdos_renyi(1500, 8.0 / 1499.0, 2).unwrap());
    let side = degree_distribution(&g);
    let t = 150;
    let meed = run_experiment(&g, &Policy::meed(side), t, 60, 4).unwrap();
    let md = run_experiment(&g, &policy(PolicyKind::Mod), t, 60, 4).unwrap();
    let gap = (meed.cover_at(t).unwrap() - md.cover_at(t).unwrap()).abs();
    assert!(gap < 0.05 * g.node_count() as f64, "gap {gap}");
}
