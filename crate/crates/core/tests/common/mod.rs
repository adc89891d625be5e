//! Independent brute-force oracles shared by the integration tests and the
//! acceptance harness.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use prepdyn::exact::field::Field;
use prepdyn::exact::matrix::Matrix;
use prepdyn::exact::poly::UniPoly;
use prepdyn::exact::rat::Rat;
use prepdyn::maps::linear::ProjLinAuto;
use prepdyn::maps::p1::P1Map;
use prepdyn::maps::point::ProjPoint;
use rand::Rng;

/// #Pⁿ(Z/p^s) by counting vectors with a unit coordinate and dividing by
/// the number of units.
pub fn brute_residue_count(n: usize, p: u64, s: u32) -> u128 {
    let m = p.pow(s);
    let total = m.pow(n as u32 + 1);
    let mut primitive = 0u128;
    for mut code in 0..total {
        let mut has_unit = false;
        for _ in 0..=n {
            has_unit |= (code % m) % p != 0;
            code /= m;
        }
        primitive += u128::from(has_unit);
    }
    primitive / (m - m / p) as u128
}

pub fn random_point(rng: &mut impl Rng, bound: i64) -> ProjPoint {
    loop {
        let a = rng.gen_range(-bound..=bound);
        let b = rng.gen_range(0..=bound);
        if let Ok(x) = ProjPoint::from_ints(&[a, b]) {
            return x;
        }
    }
}

/// A random polynomial or rational map of degree 2 with small coefficients.
pub fn random_map(rng: &mut impl Rng) -> P1Map {
    loop {
        let f: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
        let g: Vec<i64> = if rng.gen_bool(0.5) { vec![0, 0, rng.gen_range(1..=3)] } else { (0..3).map(|_| rng.gen_range(-3..=3)).collect() };
        if let Ok(m) = P1Map::from_ints(&f, &g) {
            if m.degree() == 2 {
                return m;
            }
        }
    }
}

/// Exact forward iteration by integer arithmetic, independent of `P1Map::apply`.
pub fn naive_apply(f: &P1Map, x: &ProjPoint) -> ProjPoint {
    let (a, b) = (&x.coords()[0], &x.coords()[1]);
    let eval = |c: &[BigInt]| {
        let d = c.len() - 1;
        c.iter().enumerate().map(|(i, ci)| ci * a.pow((d - i) as u32) * b.pow(i as u32)).sum::<BigInt>()
    };
    ProjPoint::from_bigints(vec![eval(f.f_coeffs()), eval(f.g_coeffs())]).expect("morphism")
}

/// Reduction of a primitive integer pair mod p^s, scaled so that the
/// first unit coordinate is 1, computed with plain integers.
pub fn naive_reduce(x: &ProjPoint, p: u64, s: u32) -> Vec<u64> {
    let m = BigInt::from(p.pow(s));
    let v: Vec<BigInt> = x.coords().iter().map(|c| c.mod_floor(&m)).collect();
    let i = v.iter().position(|c| (c % p) != BigInt::from(0)).expect("unit coordinate");
    let inv = v[i].extended_gcd(&m).x.mod_floor(&m);
    v.iter().map(|c| u64::try_from((c * &inv).mod_floor(&m)).expect("small")).collect()
}

/// Every rational β with f^n(β) = γ for some 1 ≤ n ≤ depth, found by
/// backward search through exact preimages (solving y₁·F − y₀·G = 0
/// by rational roots). Returns (β, n) pairs.
pub fn backward_chains(f: &P1Map, gamma: &ProjPoint, depth: usize, max_height: i64) -> Vec<(ProjPoint, usize)> {
    let mut out = Vec::new();
    let mut level = vec![gamma.clone()];
    for n in 1..=depth {
        let mut next = Vec::new();
        for y in &level {
            for b in rational_roots_of_fiber(f, y) {
                if b.height_magnitude() <= BigInt::from(max_height) {
                    out.push((b.clone(), n));
                    next.push(b);
                }
            }
        }
        level = next;
    }
    out
}

/// Rational solutions of f(β) = y by the rational root test on the
/// dehomogenized fiber polynomial, plus β = ∞ when it applies.
fn rational_roots_of_fiber(f: &P1Map, y: &ProjPoint) -> Vec<ProjPoint> {
    let (y0, y1) = (&y.coords()[0], &y.coords()[1]);
    let form: Vec<BigInt> = f.f_coeffs().iter().zip(f.g_coeffs()).map(|(a, b)| a * y1 - b * y0).collect();
    let mut out = Vec::new();
    // ∞ = (1:0) is a root iff the X^d coefficient vanishes
    if form[0] == BigInt::from(0) {
        out.push(ProjPoint::infinity());
    }
    // affine roots x = a/b: form(a, b) = 0 with a | trailing coefficient, b | leading coefficient
    let lead = form.iter().find(|c| **c != BigInt::from(0)).cloned();
    let trail = form.iter().rev().find(|c| **c != BigInt::from(0)).cloned();
    let (Some(lead), Some(trail)) = (lead, trail) else { return out };
    let divs = |n: &BigInt| -> Vec<i64> {
        let n: i64 = i64::try_from(n).expect("small coefficients").abs();
        (1..=n).filter(|d| n % d == 0).collect()
    };
    let zero_root = form.last() == Some(&BigInt::from(0));
    if zero_root {
        out.push(ProjPoint::affine_int(0));
    }
    for a in divs(&trail) {
        for b in divs(&lead) {
            for sign in [1, -1] {
                let x = ProjPoint::from_ints(&[sign * a, b]).unwrap();
                if naive_apply(f, &x) == *y && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Rational preperiodic points of height ≤ max_height found by forward
/// iteration: a repeat means preperiodic, an iterate with more than
/// `escape_digits` decimal digits means wandering.
pub fn brute_preperiodic_points(f: &P1Map, max_height: i64, escape_digits: usize) -> Vec<ProjPoint> {
    let mut out = vec![];
    let mut candidates = vec![ProjPoint::infinity()];
    for b in 1..=max_height {
        for a in -max_height..=max_height {
            if a.gcd(&b) == 1 || (a == 0 && b == 1) {
                candidates.push(ProjPoint::from_ints(&[a, b]).unwrap());
            }
        }
    }
    for x in candidates {
        let mut seen = std::collections::HashSet::new();
        let mut y = x.clone();
        loop {
            if !seen.insert(y.clone()) {
                out.push(x);
                break;
            }
            if y.height_magnitude().to_string().len() > escape_digits {
                break;
            }
            y = naive_apply(f, &y);
        }
    }
    out
}

/// Characteristic polynomial det(tI − M) by the Faddeev–LeVerrier recursion.
pub fn faddeev_charpoly(m: &Matrix<Rat>) -> UniPoly<Rat> {
    let n = m.rows();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut aux = Matrix::<Rat>::zeros(n, n);
    for k in 1..=n {
        // M_k = M·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(M·M_k)/k
        aux = m.mul(&aux).add(&Matrix::identity(n).scale(&coeffs[n - k + 1]));
        let prod = m.mul(&aux);
        let trace: Rat = (0..n).map(|i| prod.get(i, i).clone()).sum();
        coeffs[n - k] = -trace / Rat::from_integer(BigInt::from(k));
    }
    UniPoly::new(coeffs)
}

/// q(A) by Horner's rule.
pub fn horner<F: Field>(q: &UniPoly<F>, a: &Matrix<F>) -> Matrix<F> {
    let n = a.rows();
    let mut acc = Matrix::<F>::zeros(n, n);
    for c in q.coeffs().iter().rev() {
        acc = acc.mul(a).add(&Matrix::identity(n).scale(c));
    }
    acc
}

/// Minimal polynomial of A at v: the first linear dependence among v, Av, A²v, ….
pub fn krylov_minpoly<F: Field>(a: &Matrix<F>, v: &[F]) -> UniPoly<F> {
    let mut vectors = vec![v.to_vec()];
    loop {
        let next = a.apply(vectors.last().unwrap());
        vectors.push(next);
        let k = vectors.len();
        let m = Matrix::from_columns(&vectors);
        let kernel = m.kernel();
        if let Some(c) = kernel.first() {
            assert_eq!(m.rank(), k - 1);
            return UniPoly::new(c.clone()).monic();
        }
    }
}

pub fn nullity<F: Field>(a: &Matrix<F>) -> usize {
    a.cols() - a.rank()
}

pub fn int_mat(rows: &[&[i64]]) -> ProjLinAuto<Rat> {
    ProjLinAuto::new(Matrix::from_int_rows(rows)).unwrap()
}

/// σ ≡ [[1, x], [0, 1]] (mod p) with L_σ ≡ 1 (mod p²) at γ = (1:0).
pub fn arc_member(rng: &mut impl Rng, p: i64, x: i64) -> ProjLinAuto<Rat> {
    let (a, b, c) = (rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p));
    // det/σ₀₀² ≡ 1 + p(d − a − c·x) (mod p²)
    let d = (a + c * x).rem_euclid(p);
    int_mat(&[&[1 + p * a, x + p * b], &[p * c, 1 + p * d]])
}

/// Finite subgroups of PGL₂(Q): conjugates of subgroups generated by
/// x ↦ −x, x ↦ 1/x, x ↦ −1/x and the order-4 map x ↦ (x−1)/(x+1), by
/// random integer matrices. Orders 2, 4 and 8 occur.
pub fn random_finite_group(rng: &mut impl Rng) -> Vec<ProjLinAuto<Rat>> {
    let conj = loop {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
        if let Ok(t) = ProjLinAuto::new(Matrix::from_int_rows(&[&e[0..2], &e[2..4]])) {
            break t;
        }
    };
    let pool = [
        int_mat(&[&[-1, 0], &[0, 1]]),
        int_mat(&[&[0, 1], &[1, 0]]),
        int_mat(&[&[0, -1], &[1, 0]]),
        int_mat(&[&[1, -1], &[1, 1]]),
    ];
    let k = rng.gen_range(1..=2);
    let chosen: Vec<_> = if k == 1 { vec![pool[rng.gen_range(0..4)].clone()] } else { vec![pool[0].clone(), pool[rng.gen_range(1..4)].clone()] };
    chosen.iter().map(|g| conj.compose(g).compose(&conj.inverse())).collect()
}
