mod common;

use common::{arc_member, backward_chains, brute_residue_count, int_mat as mat, naive_reduce, random_finite_group, random_map, random_point};
use prepdyn::arcs::burnside::group_closure;
use prepdyn::arcs::dynamics::ReducedMap;
use prepdyn::arcs::linearize::{integer_matrix, mat_mul_mod};
use prepdyn::arcs::{
    arc_linearization, burnside_orbit, in_arc_subgroup, preimage_depth_bound, reduce_point, residue_count, zp_period_detect,
    PrimePower, ResiduePoint,
};
use prepdyn::exact::matrix::Matrix;
use prepdyn::maps::linear::ProjLinAuto;
use prepdyn::maps::p1::P1Map;
use prepdyn::maps::point::ProjPoint;
use prepdyn::Caps;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn residue_count_agrees_with_vector_count() {
    for p in [2, 3, 5, 7] {
        for s in 1..=2 {
            for n in 1..=2 {
                assert_eq!(residue_count(n, p, s), brute_residue_count(n, p, s), "n={n} p={p} s={s}");
            }
        }
    }
}

#[test]
fn reduction_commutes_with_dynamics() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 1000 {
        let f = random_map(&mut rng);
        let p = [2u64, 3, 5, 7, 11][rng.gen_range(0..5)];
        if !f.has_good_reduction(p) {
            continue;
        }
        let s = rng.gen_range(1..=3);
        let x = random_point(&mut rng, 50);
        let reduced = ReducedMap::new(&f, p, s).unwrap();
        let lhs = reduce_point(&f.apply(&x).unwrap(), p, s).unwrap();
        let rhs = reduced.apply(&reduce_point(&x, p, s).unwrap());
        assert_eq!(lhs, rhs, "{f} at {x} mod {p}^{s}");
        assert_eq!(reduce_point(&x, p, s).unwrap().coords, naive_reduce(&x, p, s));
        checked += 1;
    }
}

#[test]
fn preimage_bound_is_never_beaten() {
    let caps = Caps::default();
    let cases: &[(&[i64], i64, i64, u64)] =
        &[(&[0, 0, 1], 1, -1, 3), (&[0, 0, 1], 1, -1, 2), (&[-1, 0, 1], 0, 1, 5), (&[-1, 0, 2], 1, -1, 3), (&[-1, 0, 2], 1, 0, 5)];
    for &(coeffs, alpha, gamma, p) in cases {
        let f = P1Map::polynomial_ints(coeffs).unwrap();
        let (alpha, gamma) = (ProjPoint::affine_int(alpha), ProjPoint::affine_int(gamma));
        let bound = preimage_depth_bound(&f, &alpha, &gamma, p, &caps).unwrap();
        let depth = bound.m as usize + 3;
        for (beta, n) in backward_chains(&f, &gamma, depth, 1000) {
            assert!((n as u128) <= bound.m, "{beta} reaches {gamma} after {n} > {} steps", bound.m);
        }
    }
}

#[test]
fn period_chains_divide() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 60 {
        let f = random_map(&mut rng);
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        if !f.has_good_reduction(p) {
            continue;
        }
        let x = random_point(&mut rng, 20);
        let report = zp_period_detect(&f, &x, p, 3, &caps).unwrap();
        assert!(report.is_divisibility_chain(), "{f} {x} {p}: {:?}", report.per_precision);
        if let Some(period) = report.rational_period {
            assert_eq!(report.per_precision.last().unwrap().period as u64 % period, 0);
        }
        checked += 1;
    }
}

#[test]
fn arc_membership_closed_on_congruence_kernel() {
    let gamma = ResiduePoint { coords: vec![1, 0] };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let s = arc_member(&mut rng, 5, 0);
        let t = arc_member(&mut rng, 5, 0);
        assert!(in_arc_subgroup(&s, &gamma, 5).unwrap() && in_arc_subgroup(&t, &gamma, 5).unwrap());
        assert!(in_arc_subgroup(&s.compose(&t), &gamma, 5).unwrap());
        assert!(in_arc_subgroup(&s.inverse(), &gamma, 5).unwrap());
    }
}

#[test]
fn arc_membership_not_closed_for_nontrivial_unipotent_reduction() {
    // chain rule: L_{στ} = DF_σ(C_τ)·L_τ and DF_σ(C_τ) ≢ DF_σ(0) mod p² once σ₀₁ is a unit
    let gamma = ResiduePoint { coords: vec![1, 0] };
    let s = mat(&[&[1, 1], &[0, 1]]);
    let t = mat(&[&[1, 0], &[5, 1]]);
    assert!(in_arc_subgroup(&s, &gamma, 5).unwrap());
    assert!(in_arc_subgroup(&t, &gamma, 5).unwrap());
    assert!(!in_arc_subgroup(&s.compose(&t), &gamma, 5).unwrap());
}

#[test]
fn linear_parts_multiply_mod_p() {
    let ring = PrimePower::new(5, 1).unwrap();
    let gamma = ResiduePoint { coords: vec![1, 0] };
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let (x, y) = (rng.gen_range(0..5), rng.gen_range(0..5));
        let s = arc_member(&mut rng, 5, x);
        let t = arc_member(&mut rng, 5, y);
        let (ls, lt) = (arc_linearization(&s, &gamma, 5).unwrap(), arc_linearization(&t, &gamma, 5).unwrap());
        let lst = arc_linearization(&s.compose(&t), &gamma, 5).unwrap();
        assert_eq!(lst.linear_mod_p(), mat_mul_mod(&ls.linear_mod_p(), &lt.linear_mod_p(), &ring));
    }
}

#[test]
fn linear_parts_multiply_in_dimension_two() {
    let ring = PrimePower::new(3, 1).unwrap();
    let gamma = ResiduePoint { coords: vec![1, 0, 0] };
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut random_fixing = || loop {
        // first column ≡ (u, 0, 0) mod 3
        let mut rows = [[0i64; 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = if j == 0 && i > 0 { 3 * rng.gen_range(-2..=2) } else { rng.gen_range(-4..=4) };
            }
        }
        let m = Matrix::from_int_rows(&[&rows[0], &rows[1], &rows[2]]);
        if let Ok(a) = ProjLinAuto::new(m) {
            if arc_linearization(&a, &gamma, 3).is_ok() {
                return a;
            }
        }
    };
    for _ in 0..50 {
        let (s, t) = (random_fixing(), random_fixing());
        let (ls, lt) = (arc_linearization(&s, &gamma, 3).unwrap(), arc_linearization(&t, &gamma, 3).unwrap());
        let lst = arc_linearization(&s.compose(&t), &gamma, 3).unwrap();
        assert_eq!(lst.linear_mod_p(), mat_mul_mod(&ls.linear_mod_p(), &lt.linear_mod_p(), &ring));
        assert_eq!(integer_matrix(&s).len(), 3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]
    #[test]
    fn burnside_orbits_close(seed in 0u64..10_000, a in -9i64..=9, b in 1i64..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_finite_group(&mut rng);
        let x = ProjPoint::from_ints(&[a, b]).unwrap();
        let r = burnside_orbit(&gens, &x, 1000).unwrap();
        let order = group_closure(&gens, 1000).unwrap().len();
        prop_assert!(r.is_closed());
        prop_assert_eq!(order % r.orbit.len(), 0);
        for y in &r.orbit {
            for g in &gens {
                let gy = ProjPoint::new(&g.apply(&y.rat_coords())).unwrap();
                let gi = ProjPoint::new(&g.inverse().apply(&y.rat_coords())).unwrap();
                prop_assert!(r.orbit.contains(&gy) && r.orbit.contains(&gi));
            }
        }
    }

    #[test]
    fn reduction_is_scale_invariant(a in -500i64..500, b in 1i64..500, k in 1i64..50) {
        let x = ProjPoint::from_ints(&[a, b]);
        prop_assume!(x.is_ok());
        let x = x.unwrap();
        let y = ProjPoint::from_ints(&[a * k, b * k]).unwrap();
        for p in [2u64, 3, 5] {
            prop_assert_eq!(reduce_point(&x, p, 2).unwrap(), reduce_point(&y, p, 2).unwrap());
        }
    }
}
