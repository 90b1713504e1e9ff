mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trotter_core::evolution::multi_part_unitaries;
use trotter_core::{
    bound_pf1_general, bound_pf2_general, c64, coefficients, custom_model, empirical_error, heisenberg_1d,
    kubo_chain, norm, sample_disorder, tfim_1d, DisorderSpec, Evolver, NormKind, Order, PauliSum,
    SimulationParams, TwoPartHamiltonian,
};

const SLACK: f64 = 1e-8;

fn random_real_sum(n: usize, terms: usize, g: &mut ChaCha8Rng) -> Vec<String> {
    const AXES: [char; 4] = ['I', 'X', 'Y', 'Z'];
    (0..terms)
        .map(|_| {
            let s: String = (0..n).map(|_| AXES[g.gen_range(0..4)]).collect();
            format!("{} {s}", g.gen_range(-1.0..1.0))
        })
        .collect()
}

fn random_models(g: &mut ChaCha8Rng) -> Vec<TwoPartHamiltonian> {
    let mut out = Vec::new();
    for n in [1usize, 2, 3] {
        for _ in 0..3 {
            out.push(custom_model(n, &random_real_sum(n, 3, g), &random_real_sum(n, 3, g)).unwrap());
        }
    }
    for seed in 0..3 {
        out.push(heisenberg_1d(5, &sample_disorder(DisorderSpec { seed, n: 5 })).unwrap());
    }
    out.push(tfim_1d(4, &[(0, 1, 1.0), (1, 2, -0.5), (0, 3, 0.8)], &[0.3, 1.0, -0.7, 0.2]).unwrap());
    out
}

#[test]
fn bounds_hold_on_random_models() {
    let mut g = ChaCha8Rng::seed_from_u64(99);
    for model in random_models(&mut g) {
        let ev = Evolver::new(&model).unwrap();
        let c = coefficients(&ev, NormKind::Spectral).unwrap();
        let parts = [model.h1.clone(), model.h2.clone()];
        for _ in 0..6 {
            let t = 10f64.powf(g.gen_range(-1.0..2.5));
            let r = 10f64.powf(g.gen_range(0.0..4.0)).round() as u64;
            let p = SimulationParams::new(t, r).unwrap();
            let e1 = empirical_error(&ev, p, Order::First, NormKind::Spectral).unwrap();
            let e2 = empirical_error(&ev, p, Order::Second, NormKind::Spectral).unwrap();
            let e2m = empirical_error(&ev, p, Order::SecondMirrored, NormKind::Spectral).unwrap();
            assert!(e1 <= c.bound_main(t, r) + SLACK, "{} t={t} r={r}: {e1} > {}", model.label, c.bound_main(t, r));
            assert!(c.bound_main(t, r) <= c.bound_pf1(t, r));
            let pf2 = bound_pf2_general(&parts, t, r, NormKind::Spectral).unwrap();
            assert!((pf2 - c.bound_pf2(t, r, Order::Second)).abs() <= 1e-12 * pf2.max(1.0));
            assert!(e2 <= pf2 + SLACK);
            assert!(e2m <= c.bound_pf2(t, r, Order::SecondMirrored) + SLACK);
        }
    }
}

#[test]
fn bound_is_ordering_robust() {
    let model = heisenberg_1d(5, &sample_disorder(DisorderSpec { seed: 4, n: 5 })).unwrap();
    let swapped = model.swapped();
    let c = coefficients(&Evolver::new(&model).unwrap(), NormKind::Spectral).unwrap();
    let ev_s = Evolver::new(&swapped).unwrap();
    let c_s = coefficients(&ev_s, NormKind::Spectral).unwrap();
    for (t, r) in [(0.5, 10), (20.0, 100), (300.0, 5000)] {
        assert_eq!(c.bound_main(t, r), c_s.bound_main(t, r));
        let p = SimulationParams::new(t, r).unwrap();
        assert!(empirical_error(&ev_s, p, Order::First, NormKind::Spectral).unwrap() <= c.bound_main(t, r) + SLACK);
    }
}

#[test]
fn frobenius_bounds_hold() {
    let model = heisenberg_1d(4, &[0.3, -0.2, 0.9, -1.0]).unwrap();
    let ev = Evolver::new(&model).unwrap();
    let c = coefficients(&ev, NormKind::Frobenius).unwrap();
    assert!((c.clamp() - 8.0).abs() < 1e-12);
    for (t, r) in [(1.0, 3), (50.0, 200), (500.0, 20)] {
        let p = SimulationParams::new(t, r).unwrap();
        let e = empirical_error(&ev, p, Order::First, NormKind::Frobenius).unwrap();
        assert!(e <= c.bound_main(t, r) + SLACK);
    }
}

#[test]
fn general_bounds_reduce_for_two_parts() {
    let xz = [PauliSum::parse(1, &["X"]).unwrap(), PauliSum::parse(1, &["Z"]).unwrap()];
    assert!((bound_pf1_general(&xz, 2.0, 4, NormKind::Spectral).unwrap() - 1.0).abs() < 1e-12);
    assert!((bound_pf2_general(&xz, 1.0, 1, NormKind::Spectral).unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(bound_pf1_general(&xz[..1], 3.0, 2, NormKind::Spectral).unwrap(), 0.0);
    let commuting: Vec<PauliSum> = ["ZII", "IZI", "IIZ"].iter().map(|s| PauliSum::parse(3, &[s]).unwrap()).collect();
    assert_eq!(bound_pf1_general(&commuting, 3.0, 2, NormKind::Spectral).unwrap(), 0.0);
    assert_eq!(bound_pf2_general(&commuting, 3.0, 2, NormKind::Spectral).unwrap(), 0.0);
}

#[test]
fn pf2_bound_covers_single_qubit_error() {
    let ev = Evolver::new(&custom_model(1, &["X"], &["Z"]).unwrap()).unwrap();
    let parts = [PauliSum::parse(1, &["X"]).unwrap(), PauliSum::parse(1, &["Z"]).unwrap()];
    let p = SimulationParams::new(1.0, 8).unwrap();
    let e = empirical_error(&ev, p, Order::Second, NormKind::Spectral).unwrap();
    assert!(e > 0.0 && e <= bound_pf2_general(&parts, 1.0, 8, NormKind::Spectral).unwrap());
}

#[test]
fn three_part_bounds_hold() {
    let mut g = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..4 {
        let parts: Vec<PauliSum> = (0..3).map(|_| PauliSum::parse(2, &random_real_sum(2, 2, &mut g)).unwrap()).collect();
        for (t, r) in [(0.7, 2u64), (4.0, 30), (25.0, 400)] {
            let p = SimulationParams::new(t, r).unwrap();
            let (exact, u1) = multi_part_unitaries(&parts, p, false).unwrap();
            let (_, u2) = multi_part_unitaries(&parts, p, true).unwrap();
            let e1 = norm(&exact.sub(&u1), NormKind::Spectral).unwrap();
            let e2 = norm(&exact.sub(&u2), NormKind::Spectral).unwrap();
            assert!(e1 <= bound_pf1_general(&parts, t, r, NormKind::Spectral).unwrap() + SLACK);
            assert!(e2 <= bound_pf2_general(&parts, t, r, NormKind::Spectral).unwrap() + SLACK);
        }
    }
}

#[test]
fn three_part_product_matches_oracle() {
    let strs = [vec!["XI", "0.3 ZZ"], vec!["-0.8 IY"], vec!["0.5 ZX", "YI"]];
    let parts: Vec<PauliSum> = strs.iter().map(|s| PauliSum::parse(2, s).unwrap()).collect();
    let mats: Vec<M> = parts
        .iter()
        .map(|s| pauli_sum_matrix(2, &s.iter().map(|(p, c)| (*c, p.to_string())).collect::<Vec<_>>()))
        .collect();
    let p = SimulationParams::new(1.3, 3).unwrap();
    let dt = p.dt();
    let step1 = matmul(&matmul(&propagator(&mats[2], dt), &propagator(&mats[1], dt)), &propagator(&mats[0], dt));
    let halves: Vec<M> = mats.iter().map(|m| propagator(m, dt / 2.0)).collect();
    let sweep = matmul(&matmul(&halves[2], &halves[1]), &halves[0]);
    let step2 = matmul(&matmul(&matmul(&halves[0], &halves[1]), &halves[2]), &sweep);
    let power = |s: &M| (0..3).fold(eye(4), |acc, _| matmul(&acc, s));
    let (_, u1) = multi_part_unitaries(&parts, p, false).unwrap();
    let (_, u2) = multi_part_unitaries(&parts, p, true).unwrap();
    assert!(max_diff(&from_library(&u1), &power(&step1)) < 1e-12);
    assert!(max_diff(&from_library(&u2), &power(&step2)) < 1e-12);
}

#[test]
fn kubo_chain_and_triangle_decomposition() {
    let mut g = ChaCha8Rng::seed_from_u64(8);
    let h = sample_disorder(DisorderSpec { seed: 8, n: 5 });
    let ev = Evolver::new(&heisenberg_1d(5, &h).unwrap()).unwrap();
    let c = coefficients(&ev, NormKind::Spectral).unwrap();
    for _ in 0..12 {
        let t = 10f64.powf(g.gen_range(-2.0..2.5));
        let r = 10f64.powf(g.gen_range(0.0..3.5)).round() as u64;
        let p = SimulationParams::new(t, r).unwrap();
        let k = kubo_chain(&ev, &c, p, NormKind::Spectral).unwrap();
        assert!(k.measured <= k.via_h1 + SLACK, "{k:?}");
        assert!(k.via_h1 <= k.bound + SLACK, "{k:?}");
        assert!((k.via_h1 - k.via_h2).abs() <= 1e-10);
        let e1 = empirical_error(&ev, p, Order::First, NormKind::Spectral).unwrap();
        let e2 = empirical_error(&ev, p, Order::Second, NormKind::Spectral).unwrap();
        assert!(e1 <= e2 + k.measured + SLACK);
    }
}

#[test]
fn kubo_chain_vanishes_for_commuting_parts() {
    let ev = Evolver::new(&custom_model(2, &["ZI"], &["IZ"]).unwrap()).unwrap();
    let c = coefficients(&ev, NormKind::Spectral).unwrap();
    let k = kubo_chain(&ev, &c, SimulationParams::new(3.0, 4).unwrap(), NormKind::Spectral).unwrap();
    assert!(k.measured < 1e-14 && k.bound == 0.0);
}

#[test]
fn single_qubit_oracle_values() {
    let ev = Evolver::new(&custom_model(1, &["X"], &["Z"]).unwrap()).unwrap();
    let c = coefficients(&ev, NormKind::Spectral).unwrap();
    assert!((c.boundary_term_bound(1.0, 10) - 0.1).abs() < 1e-15);
    assert!(c.boundary_term_bound(0.2, 10) < 0.2 / 10.0 * 1.0);

    let x = pauli_matrix('X');
    let z = pauli_matrix('Z');
    let comm = add(&matmul(&x, &z), &matmul(&z, &x), c64::new(-1.0, 0.0));
    assert!((spectral_norm(&comm) / 2.0 - c.c2).abs() < 1e-12);
}
