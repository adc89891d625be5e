mod common;

use common::{naive_apply, random_map, random_point};
use prepdyn::exact::matrix::Matrix;
use prepdyn::exact::quad::QuadElem;
use prepdyn::exact::rat::{rat, Rat};
use prepdyn::maps::linear::{AffineAuto, ProjLinAuto};
use prepdyn::maps::p1::P1Map;
use prepdyn::maps::text::{format_affine, format_mat, format_map_spec, format_p1, parse_map_spec, MapSpec};
use prepdyn::Caps;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Degree one or two, so triple composites stay at degree ≤ 8.
fn small_map(rng: &mut impl Rng) -> P1Map {
    if rng.gen_bool(0.3) {
        loop {
            let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
            if let Ok(m) = P1Map::from_ints(&c[..2], &c[2..]) {
                return m;
            }
        }
    }
    random_map(rng)
}

fn random_affine(rng: &mut impl Rng, n: usize) -> AffineAuto<Rat> {
    loop {
        let rows: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect()).collect();
        let b: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
        if let Ok(a) = AffineAuto::new(Matrix::from_rows(rows), b) {
            return a;
        }
    }
}

#[test]
fn text_convention_for_the_standard_maps() {
    let square = P1Map::polynomial_ints(&[0, 0, 1]).unwrap();
    assert_eq!(format_p1(&square), "p1:[0,0,1]/[1,0,0]");
    assert_eq!(parse_map_spec("p1:[0,2]/[1,0]").unwrap(), MapSpec::P1(P1Map::polynomial_ints(&[0, 2]).unwrap()));
    assert_eq!(parse_map_spec("p1:[-1,0,1]/[1,0,0]").unwrap(), MapSpec::P1(P1Map::polynomial_ints(&[-1, 0, 1]).unwrap()));
    assert!(parse_map_spec("p1:[0,1]/[0,1]").is_err());
    assert!(parse_map_spec("mat:[[1,2],[2,4]]").is_err());
}

#[test]
fn composition_is_associative_and_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (f, g, h) = (small_map(&mut rng), small_map(&mut rng), small_map(&mut rng));
        let left = f.compose(&g).compose(&h);
        assert_eq!(left, f.compose(&g.compose(&h)));
        assert_eq!(left.degree(), f.degree() * g.degree() * h.degree());
        for _ in 0..3 {
            let x = random_point(&mut rng, 20);
            assert_eq!(left.apply(&x).unwrap(), naive_apply(&f, &naive_apply(&g, &naive_apply(&h, &x))));
        }
    }
}

#[test]
fn iterates_add_up() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let f = random_map(&mut rng);
        for m in 1..=3 {
            for n in 1..=3 {
                let sum = f.iterate(m + n, &caps).unwrap();
                assert_eq!(sum, f.iterate(m, &caps).unwrap().compose(&f.iterate(n, &caps).unwrap()));
            }
        }
        let x = random_point(&mut rng, 10);
        let mut y = x.clone();
        for _ in 0..4 {
            y = naive_apply(&f, &y);
        }
        assert_eq!(f.iterate(4, &caps).unwrap().apply(&x).unwrap(), y);
    }
    let tight = Caps { degree: 8, ..Caps::default() };
    assert!(random_map(&mut rng).iterate(4, &tight).is_err());
    assert!(random_map(&mut rng).iterate(0, &caps).is_err());
}

#[test]
fn good_reduction_survives_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..40 {
        let (f, g) = (random_map(&mut rng), random_map(&mut rng));
        let good_f = f.good_reduction_primes(100);
        let good_fg = f.compose(&g).good_reduction_primes(100);
        let good_g = g.good_reduction_primes(100);
        for p in good_f.iter().filter(|p| good_g.contains(p)) {
            assert!(good_fg.contains(p), "p={p}");
        }
        for p in &good_f {
            assert!(f.compose(&f).has_good_reduction(*p), "p={p}");
        }
    }
}

#[test]
fn embedding_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let (a, b) = (random_affine(&mut rng, n), random_affine(&mut rng, n));
        assert_eq!(a.compose(&b).embed(), a.embed().compose(&b.embed()));
        let x: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let mut homogeneous = x.clone();
        homogeneous.push(rat(1));
        let mut image = a.apply(&x);
        image.push(rat(1));
        let v = a.embed().matrix().apply(&homogeneous);
        assert_eq!(v.iter().map(|c| c / &v[n]).collect::<Vec<_>>(), image);
    }
}

fn quad(rng: &mut impl Rng) -> QuadElem {
    QuadElem::new(Rat::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into()), rat(rng.gen_range(-2..=2)), 2).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = small_map(&mut rng);
        let text = format_p1(&f);
        let spec = parse_map_spec(&text).unwrap();
        prop_assert_eq!(format_map_spec(&spec), text);
        prop_assert_eq!(spec, MapSpec::P1(f));

        let n = rng.gen_range(2..=3);
        let entries: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| Rat::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=4).into())).collect()).collect();
        if let Ok(m) = ProjLinAuto::new(Matrix::from_rows(entries)) {
            prop_assert_eq!(parse_map_spec(&format_mat(&m)).unwrap(), MapSpec::Mat(m));
        }

        let d = rng.gen_range(1..=2);
        let rows: Vec<Vec<QuadElem>> = (0..d).map(|_| (0..d).map(|_| quad(&mut rng)).collect()).collect();
        let b: Vec<QuadElem> = (0..d).map(|_| quad(&mut rng)).collect();
        if let Ok(a) = AffineAuto::new(Matrix::from_rows(rows), b) {
            let text = format_affine(&a);
            prop_assert_eq!(parse_map_spec(&text).unwrap(), MapSpec::Affine(a));
        }
    }
}
