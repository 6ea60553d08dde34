use statest::clique::{
    amp_clique, degree_heuristic, overlap, spectral_clique, top_eigenvector, AmpCliqueOptions,
};
use statest::model_gen::planted_clique_instance;

fn k_for(kappa: f64, n: usize) -> usize {
    (kappa * (n as f64).sqrt()).ceil() as usize
}

#[test]
fn degree_heuristic_above_and_below_threshold() {
    let n = 2000;
    let k_for_c = |c: f64| (c * n as f64 * (n as f64).ln()).sqrt().ceil() as usize;
    let (k_mid, k_big) = (k_for_c(3.0), k_for_c(8.0));
    assert_eq!((k_mid, k_big), (214, 349));
    let (mut exact, mut close, mut poor) = (0, 0, 0);
    for seed in 0..20 {
        let inst = planted_clique_instance(n, k_big, seed).unwrap();
        if degree_heuristic(&inst.graph, k_big).unwrap().s_hat == inst.support {
            exact += 1;
        }
        let inst = planted_clique_instance(n, k_mid, seed).unwrap();
        if overlap(&degree_heuristic(&inst.graph, k_mid).unwrap().s_hat, &inst.support).unwrap() >= 0.95 {
            close += 1;
        }
        let inst = planted_clique_instance(n, 20, 100 + seed).unwrap();
        if overlap(&degree_heuristic(&inst.graph, 20).unwrap().s_hat, &inst.support).unwrap() <= 0.2 {
            poor += 1;
        }
    }
    assert!(exact >= 18, "exact {exact}/20");
    assert!(close >= 18, "close {close}/20");
    assert!(poor >= 18, "poor {poor}/20");
}

#[test]
fn spectral_recovers_at_kappa_three() {
    let n = 2000;
    let k = k_for(3.0, n);
    assert_eq!(k, 135);
    let mut exact = 0;
    for seed in 0..20 {
        let inst = planted_clique_instance(n, k, seed).unwrap();
        if spectral_clique(&inst.graph, k, 1e-6, 1000).unwrap().s_hat == inst.support {
            exact += 1;
        }
    }
    assert!(exact >= 19, "{exact}/20");
}

#[test]
fn spectral_vector_uninformative_below_barrier() {
    let n = 4000;
    let k = k_for(0.5, n);
    let mut small = 0;
    for seed in 0..20 {
        let inst = planted_clique_instance(n, k, seed).unwrap();
        let v = top_eigenvector(&inst.graph, 1e-6, 300).unwrap().vector;
        let proj: f64 = inst.support.iter().map(|&i| v[i]).sum::<f64>() / (k as f64).sqrt();
        if proj.abs() <= 0.15 {
            small += 1;
        }
    }
    assert!(small >= 18, "{small}/20");
}

#[test]
fn amp_fails_below_critical_kappa() {
    let n = 8000;
    let k = k_for(0.4, n);
    let mut poor = 0;
    for seed in 0..20 {
        let inst = planted_clique_instance(n, k, seed).unwrap();
        let est = amp_clique(&inst.graph, k, AmpCliqueOptions::new(30)).unwrap();
        if overlap(&est.s_hat, &inst.support).unwrap() <= 0.3 {
            poor += 1;
        }
    }
    assert!(poor >= 16, "{poor}/20");
}

#[test]
fn amp_without_memory_term_degrades() {
    let n = 8000;
    let k = k_for(0.85, n);
    let mut worse = 0;
    for seed in 0..20 {
        let inst = planted_clique_instance(n, k, 500 + seed).unwrap();
        let with = amp_clique(&inst.graph, k, AmpCliqueOptions::new(30)).unwrap();
        let opts = AmpCliqueOptions { onsager: false, ..AmpCliqueOptions::new(30) };
        let without = amp_clique(&inst.graph, k, opts).unwrap();
        if overlap(&without.s_hat, &inst.support).unwrap() < overlap(&with.s_hat, &inst.support).unwrap() {
            worse += 1;
        }
    }
    assert!(worse >= 14, "{worse}/20");
}
