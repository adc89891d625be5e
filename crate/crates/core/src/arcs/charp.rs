//! Exponent checks for PGL_{n+1}(F_q) acting on Pⁿ over extensions of F_q.
//!
//! For M in GL_{n+1}(F_q) with q = p^e, two statements are tested:
//! N = M^{p^{n+1}} is diagonalizable over the algebraic closure, and every
//! point y of Pⁿ(F_{q^k}), k ≤ n+1, satisfies N·y = y. The first always
//! holds (the unipotent part U has (U − 1)^{n+1} = 0). The second fails in
//! general: order-3 elements of PGL₂(F₂) have period-3 points over F₄ while
//! 4 ≡ 1 mod 3. The checker reports every such witness.
//!
//! All fields F_{q^k}, k ≤ n+1, sit inside GF(q^L) with L = lcm(1..n+1),
//! built from a primitive polynomial with log/exp tables. N is semisimple
//! iff N^{q^L} = N, since its eigenvalues have degree ≤ n+1 over F_q.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::intfactor::factorize;

/// Largest GF(q^L) built.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;
/// Largest #GL_{n+1}(F_q) enumerated, and largest number of test points.
pub const MAX_EXHAUSTIVE: u64 = 10_000_000;

/// GF(p^m) with elements coded as Σ a_i p^i for a_0 + a_1·α + … and α
/// a root of a primitive polynomial.
#[derive(Clone, Debug)]
pub struct GaloisField {
    pub p: u64,
    pub m: u32,
    pub size: u64,
    /// Primitive polynomial, ascending coefficients, monic of degree m.
    pub modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn digits(code: u64, p: u64, m: u32) -> Vec<u64> {
    let mut c = code;
    (0..m)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl GaloisField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        let size = p.checked_pow(m).filter(|&s| s <= MAX_FIELD_SIZE).ok_or_else(|| Error::resource(format!("GF({p}^{m}) is too large")))?;
        let order = size - 1;
        // search monic polynomials x^m + c_{m−1}x^{m−1} + … + c_0 with x primitive
        for tail in 0..size {
            let low = digits(tail, p, m);
            if m > 0 && low[0] == 0 && size > 2 {
                continue;
            }
            let mut exp = Vec::with_capacity(2 * order as usize);
            let mut cur = vec![0u64; m as usize];
            cur[0] = 1;
            let mut ok = true;
            for k in 0..order {
                let code = undigits(&cur, p);
                if k > 0 && code == 1 {
                    ok = false;
                    break;
                }
                exp.push(code as u32);
                // multiply by x and reduce with x^m = −Σ c_i x^i
                let top = cur[m as usize - 1];
                for i in (1..m as usize).rev() {
                    cur[i] = (cur[i - 1] + (p - low[i]) * top) % p;
                }
                cur[0] = ((p - low[0]) * top) % p;
            }
            if !ok || undigits(&cur, p) != 1 {
                continue;
            }
            let mut log = vec![0u32; size as usize];
            for (k, &c) in exp.iter().enumerate() {
                log[c as usize] = k as u32;
            }
            let head = exp.clone();
            exp.extend(head);
            let mut modulus = low;
            modulus.push(1);
            return Ok(GaloisField { p, m, size, modulus, exp, log });
        }
        Err(Error::validation(format!("no primitive polynomial of degree {m} over F_{p}")))
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (digits(a as u64, self.p, self.m), digits(b as u64, self.p, self.m));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&sum, self.p) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let d: Vec<u64> = digits(a as u64, self.p, self.m).iter().map(|x| (self.p - x) % self.p).collect();
        undigits(&d, self.p) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let order = (self.size - 1) as u32;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }

    /// α^k.
    pub fn power_of_generator(&self, k: u64) -> u32 {
        self.exp[(k % (self.size - 1)) as usize]
    }

    pub fn log(&self, a: u32) -> Option<u64> {
        (a != 0).then(|| self.log[a as usize] as u64)
    }

    /// Least k dividing the field degree over F_q with a ∈ F_{q^k}.
    pub fn degree_over(&self, a: u32, q: u64, total: u32) -> u32 {
        let Some(l) = self.log(a) else { return 1 };
        (1..=total)
            .filter(|k| total % k == 0)
            .find(|&k| l % ((self.size - 1) / (q.pow(k) - 1)) == 0)
            .expect("a lies in the whole field")
    }

    /// The elements of F_{q^k}: zero, then α^{j·(Q−1)/(q^k−1)} for increasing j.
    pub fn subfield(&self, q: u64, k: u32) -> Vec<u32> {
        let sub = q.pow(k);
        let step = (self.size - 1) / (sub - 1);
        std::iter::once(0).chain((0..sub - 1).map(|j| self.power_of_generator(j * step))).collect()
    }

    /// Readable form: the integer for prime-field elements, otherwise a^k.
    pub fn label(&self, a: u32) -> String {
        if (a as u64) < self.p {
            return a.to_string();
        }
        format!("a^{}", self.log[a as usize])
    }
}

type Mat = Vec<Vec<u32>>;

fn mat_mul(gf: &GaloisField, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, k| gf.add(acc, gf.mul(a[i][k], b[k][j])))).collect())
        .collect()
}

fn mat_pow(gf: &GaloisField, a: &Mat, mut e: u64) -> Mat {
    let n = a.len();
    let mut result: Mat = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(gf, &result, &base);
        }
        base = mat_mul(gf, &base, &base);
        e >>= 1;
    }
    result
}

fn apply(gf: &GaloisField, a: &Mat, v: &[u32]) -> Vec<u32> {
    a.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| gf.add(acc, gf.mul(x, y)))).collect()
}

/// Scales so the first nonzero coordinate is 1.
fn normalize(gf: &GaloisField, v: &[u32]) -> Vec<u32> {
    let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
    let inv = gf.inv(lead);
    v.iter().map(|&x| gf.mul(x, inv)).collect()
}

fn is_invertible(gf: &GaloisField, a: &Mat) -> bool {
    let n = a.len();
    let mut m = a.clone();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else { return false };
        m.swap(pivot, col);
        let inv = gf.inv(m[col][col]);
        for r in col + 1..n {
            let factor = gf.neg(gf.mul(m[r][col], inv));
            for k in col..n {
                let t = gf.mul(factor, m[col][k]);
                m[r][k] = gf.add(m[r][k], t);
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CharpMode {
    /// Every matrix of GL_{n+1}(F_q), in lexicographic order of row-major entries.
    Exhaustive,
    /// Uniformly random invertible matrices from a seeded generator.
    Sample { count: usize, seed: u64 },
    /// The given matrices, with entries in F_p (q must be prime).
    Given { matrices: Vec<Vec<Vec<i64>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentWitness {
    pub matrix: Vec<Vec<String>>,
    /// The field F_{q^k} generated by the point's coordinates.
    pub field: String,
    pub point: Vec<String>,
    pub period: u64,
    /// M^{p^{n+1}}·y, normalized.
    pub lhs: Vec<String>,
    /// y.
    pub rhs: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharpReport {
    pub q: u64,
    pub p: u64,
    pub n: usize,
    /// p^{n+1}.
    pub exponent: u64,
    pub field_size: u64,
    pub modulus: Vec<u64>,
    pub mode: CharpMode,
    pub matrices_checked: usize,
    pub points_per_matrix: usize,
    /// Matrices whose power failed the diagonalizability test (expected: none).
    pub non_diagonalizable: Vec<Vec<Vec<String>>>,
    pub diagonalizable_all: bool,
    pub witness_count: usize,
    /// The first `stored` witnesses, in enumeration order.
    pub witnesses: Vec<ExponentWitness>,
    pub identity_holds: bool,
}

/// Stored witnesses are capped at this many; the count is always complete.
pub const STORED_WITNESSES: usize = 1000;

struct TestPoint {
    coords: Vec<u32>,
    degree: u32,
}

fn test_points(gf: &GaloisField, q: u64, n: usize, total: u32) -> Result<Vec<TestPoint>> {
    let count: u64 = (1..=n as u32 + 1).map(|k| (q.pow(k * (n as u32 + 1)) - 1) / (q.pow(k) - 1)).sum();
    if count > MAX_EXHAUSTIVE {
        return Err(Error::resource(format!("{count} test points exceed the cap {MAX_EXHAUSTIVE}")));
    }
    let mut out = Vec::new();
    for k in 1..=n as u32 + 1 {
        let elems = gf.subfield(q, k);
        let base = elems.len() as u64;
        for lead in 0..=n {
            let free = n - lead;
            for mut code in 0..base.pow(free as u32) {
                let mut coords = vec![0u32; n + 1];
                coords[lead] = 1;
                for i in (lead + 1..=n).rev() {
                    coords[i] = elems[(code % base) as usize];
                    code /= base;
                }
                let degree = coords.iter().map(|&c| gf.degree_over(c, q, total)).fold(1, |a: u32, b| a.lcm(&b));
                if degree == k {
                    out.push(TestPoint { coords, degree });
                }
            }
        }
    }
    Ok(out)
}

/// Runs both checks over the matrices selected by `mode`.
pub fn charp_exponent_check(q: u64, n: usize, mode: &CharpMode) -> Result<CharpReport> {
    let factors = factorize(q);
    let [(p, e)] = factors.as_slice() else {
        return Err(Error::input(format!("{q} is not a prime power")));
    };
    let (p, e) = (*p, *e);
    if n == 0 {
        return Err(Error::input("dimension must be at least 1"));
    }
    let size = n + 1;
    let total = (1..=size as u32).fold(1u32, |a, b| a.lcm(&b));
    let gf = GaloisField::new(p, e * total)?;
    let exponent = p.checked_pow(size as u32).ok_or_else(|| Error::resource("exponent overflow"))?;
    let base_field = gf.subfield(q, 1);
    let matrices: Vec<Mat> = match mode {
        CharpMode::Exhaustive => {
            let cells = (size * size) as u32;
            let count = q.checked_pow(cells).filter(|&c| c <= MAX_EXHAUSTIVE).ok_or_else(|| {
                Error::resource(format!("{q}^{cells} matrices exceed the exhaustive cap {MAX_EXHAUSTIVE}"))
            })?;
            // base field elements in code order so the enumeration is lexicographic
            let mut sorted = base_field.clone();
            sorted.sort_unstable();
            (0..count)
                .map(|mut code| {
                    let mut flat = vec![0u32; size * size];
                    for cell in flat.iter_mut().rev() {
                        *cell = sorted[(code % q) as usize];
                        code /= q;
                    }
                    flat.chunks(size).map(<[u32]>::to_vec).collect::<Mat>()
                })
                .filter(|m| is_invertible(&gf, m))
                .collect()
        }
        CharpMode::Sample { count, seed } => {
            if *count as u64 > MAX_EXHAUSTIVE {
                return Err(Error::resource("sample count exceeds the cap"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut out = Vec::with_capacity(*count);
            while out.len() < *count {
                let m: Mat = (0..size).map(|_| (0..size).map(|_| base_field[rng.gen_range(0..base_field.len())]).collect()).collect();
                if is_invertible(&gf, &m) {
                    out.push(m);
                }
            }
            out
        }
        CharpMode::Given { matrices } => {
            if e != 1 {
                return Err(Error::input("given matrices need a prime q"));
            }
            let mut out = Vec::new();
            for m in matrices {
                if m.len() != size || m.iter().any(|r| r.len() != size) {
                    return Err(Error::input(format!("matrix must be {size}x{size}")));
                }
                let reduced: Mat = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect()).collect();
                if !is_invertible(&gf, &reduced) {
                    return Err(Error::validation(format!("matrix {m:?} is singular mod {p}")));
                }
                out.push(reduced);
            }
            out
        }
    };
    let points = test_points(&gf, q, n, e * total)?;
    let labels = |v: &[u32]| v.iter().map(|&x| gf.label(x)).collect::<Vec<_>>();
    let mat_labels = |m: &Mat| m.iter().map(|r| labels(r)).collect::<Vec<_>>();
    let mut non_diagonalizable = Vec::new();
    let mut witnesses = Vec::new();
    let mut witness_count = 0;
    for m in &matrices {
        let power = mat_pow(&gf, m, exponent);
        if mat_pow(&gf, &power, gf.size) != power {
            non_diagonalizable.push(mat_labels(m));
        }
        for y in &points {
            let image = normalize(&gf, &apply(&gf, &power, &y.coords));
            if image == y.coords {
                continue;
            }
            witness_count += 1;
            if witnesses.len() < STORED_WITNESSES {
                let mut period = 1;
                let mut z = normalize(&gf, &apply(&gf, m, &y.coords));
                while z != y.coords {
                    z = normalize(&gf, &apply(&gf, m, &z));
                    period += 1;
                }
                witnesses.push(ExponentWitness {
                    matrix: mat_labels(m),
                    field: format!("GF({})", q.pow(y.degree)),
                    point: labels(&y.coords),
                    period,
                    lhs: labels(&image),
                    rhs: labels(&y.coords),
                });
            }
        }
    }
    Ok(CharpReport {
        q,
        p,
        n,
        exponent,
        field_size: gf.size,
        modulus: gf.modulus.clone(),
        mode: mode.clone(),
        matrices_checked: matrices.len(),
        points_per_matrix: points.len(),
        diagonalizable_all: non_diagonalizable.is_empty(),
        non_diagonalizable,
        witness_count,
        witnesses,
        identity_holds: witness_count == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, m) in [(2, 2), (2, 3), (3, 2), (5, 1), (2, 6)] {
            let gf = GaloisField::new(p, m).unwrap();
            let all: Vec<u32> = (0..gf.size as u32).collect();
            for &a in &all {
                if a != 0 {
                    assert_eq!(gf.mul(a, gf.inv(a)), 1);
                }
                assert_eq!(gf.add(a, gf.neg(a)), 0);
            }
            for &a in all.iter().take(20) {
                for &b in all.iter().take(20) {
                    for &c in all.iter().take(8) {
                        assert_eq!(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn subfields() {
        let gf = GaloisField::new(2, 6).unwrap();
        assert_eq!(gf.subfield(2, 1), vec![0, 1]);
        assert_eq!(gf.subfield(2, 2).len(), 4);
        assert_eq!(gf.subfield(2, 3).len(), 8);
        for &a in &gf.subfield(2, 3) {
            assert!(gf.degree_over(a, 2, 6) == 1 || gf.degree_over(a, 2, 6) == 3);
        }
    }

    #[test]
    fn gl2_f2_exhaustive() {
        let r = charp_exponent_check(2, 1, &CharpMode::Exhaustive).unwrap();
        assert_eq!(r.matrices_checked, 6);
        assert!(r.diagonalizable_all);
        assert_eq!(r.points_per_matrix, 5);
        let w = &r.witnesses[0];
        assert_eq!(w.matrix, vec![vec!["0", "1"], vec!["1", "1"]]);
        assert_eq!((w.point.clone(), w.period, w.field.as_str()), (vec!["1".to_string(), "0".to_string()], 3, "GF(2)"));
        assert_eq!(w.lhs, vec!["0", "1"]);
        assert!(!r.identity_holds);
    }

    #[test]
    fn identity_has_no_witness() {
        let r = charp_exponent_check(3, 1, &CharpMode::Given { matrices: vec![vec![vec![1, 0], vec![0, 1]]] }).unwrap();
        assert!(r.identity_holds && r.diagonalizable_all);
        assert_eq!(r.points_per_matrix, 4 + 6);
    }

    #[test]
    fn sampling_is_deterministic() {
        let mode = CharpMode::Sample { count: 20, seed: 7 };
        let a = charp_exponent_check(3, 2, &mode).unwrap();
        let b = charp_exponent_check(3, 2, &mode).unwrap();
        assert_eq!(a.witnesses, b.witnesses);
        assert!(a.diagonalizable_all);
        assert!(charp_exponent_check(6, 1, &CharpMode::Exhaustive).is_err());
        assert!(charp_exponent_check(3, 3, &CharpMode::Exhaustive).is_err());
    }
}
