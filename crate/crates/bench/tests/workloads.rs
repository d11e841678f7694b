use reflexive::moduli::check_fano_theorem;
use reflexive::vanish::infer;
use reflexive::Q;
use reflexive_bench::{closed_form_agreements, conic_context, grid};

#[test]
fn benchmark_grid_is_all_agreement() {
    let g = grid(5, -5..=5, 1..=40, 0..=20);
    assert_eq!(closed_form_agreements(5, &g), g.len());
    assert!(g.len() > 1000);
}

#[test]
fn conic_workload_is_smooth() {
    let ctx = conic_context();
    assert!(!infer(&ctx).unwrap().is_empty());
    let report = check_fano_theorem(&ctx).unwrap();
    assert_eq!(report.dimension, Some(Q::from(2)));
}
