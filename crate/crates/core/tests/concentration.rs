use abcycle::fklab::{link_concentration_experiment, run_fk, FKInstance, LinkConfig, Side};
use abcycle::oracle::random_hypergraph;

fn link_config(side: Side, trials: usize) -> LinkConfig {
    LinkConfig {
        a: 1,
        side,
        anchor: None,
        alpha_ref: 0.5,
        gammas: vec![0.5, 1.0],
        trials,
        seed: 21,
    }
}

#[test]
fn link_deviation_at_desk_scale() {
    let h = random_hypergraph(30, 3, 0.5, 4).unwrap();
    let ls = link_concentration_experiment(&h, &link_config(Side::A, 10_000)).unwrap();
    assert_eq!(ls.t, 10);
    assert!((ls.bound - 0.02).abs() < 1e-12);
    // 4√(t ln t) exceeds t here, so no deviation of that size is possible
    assert!(ls.radius > ls.t as f64);
    assert_eq!(ls.deviation_freq, 0.0);
    assert!(ls.deviation_freq <= ls.bound + 0.01);
    assert!((ls.stats.mean_eta - ls.link_density * 10.0).abs() < 0.1);
}

#[test]
fn link_b_side_mirrors_a_side() {
    let h = random_hypergraph(30, 3, 0.7, 5).unwrap();
    let ls = link_concentration_experiment(&h, &link_config(Side::B, 4000)).unwrap();
    assert_eq!(ls.anchor.len(), 2);
    assert!((ls.stats.mean_eta - ls.link_density * 10.0).abs() < 0.15);
}

#[test]
fn fk_tails_shrink_with_gamma() {
    let inst = FKInstance::with_target_theta(30, 2, 10, 0.3, 1).unwrap();
    let stats = run_fk(&inst, &[2.0, 0.25, 1.0, 0.5], 20_000, 3).unwrap();
    let gammas: Vec<f64> = stats.tails.iter().map(|t| t.gamma).collect();
    assert_eq!(gammas, vec![0.25, 0.5, 1.0, 2.0]);
    assert!(stats.tails.windows(2).all(|w| w[1].freq <= w[0].freq));
    for tail in &stats.tails {
        assert!(tail.freq <= tail.bound + tail.noise_allowance(stats.trials) + 1e-3);
    }
    assert!((stats.mean_eta - inst.expected_eta()).abs() < 0.05);
}
