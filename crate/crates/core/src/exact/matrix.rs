//! Dense matrices over a [`Field`] and the subspace operations used for
//! periodic loci: kernels, spans, containment and intersection.

use std::fmt;


use super::field::Field;
use super::poly::UniPoly;
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// A list of vectors spanning a subspace.
pub type Basis<F> = Vec<Vec<F>>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Panics when rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<F>]) -> Self {
        let n = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [F] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (j, x) in v.iter().enumerate() {
                    acc = acc + self.get(i, j).clone() * x.clone();
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : M v = 0}, in the canonical form
    /// produced by back substitution from the RREF.
    pub fn kernel(&self) -> Basis<F> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = det * piv.clone();
            let inv = piv.inv();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone() * inv.clone();
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Characteristic polynomial det(t·I − M), by evaluating the
    /// determinant at n+1 integer points and interpolating.
    pub fn charpoly(&self) -> UniPoly<F> {
        assert!(self.is_square());
        let n = self.rows;
        let points: Vec<F> = (0..=n as i64).map(F::from_int).collect();
        let values: Vec<F> = points
            .iter()
            .map(|t| Matrix::identity(n).scale(t).sub(self).determinant())
            .collect();
        interpolate(&points, &values)
    }

    pub fn is_scalar(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let d = self.get(0, 0);
        (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j) == d } else { self.get(i, j).is_zero() }))
    }

    /// Kronecker product A ⊗ B.
    pub fn kronecker(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a.clone() * other.get(k, l).clone());
                    }
                }
            }
        }
        out
    }

    /// Companion matrix of a monic-izable polynomial of degree ≥ 1.
    pub fn companion(p: &UniPoly<F>) -> Self {
        let p = p.monic();
        let n = p.deg();
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, F::one());
        }
        for i in 0..n {
            m.set(i, n - 1, -p.coeff(i));
        }
        m
    }
}

/// Lagrange interpolation through distinct points.
pub fn interpolate<F: Field>(points: &[F], values: &[F]) -> UniPoly<F> {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = UniPoly::constant(yi.clone());
        for (j, xj) in points.iter().enumerate() {
            if i != j {
                let lin = UniPoly::linear_root(xj.clone());
                basis = (&basis * &lin).scale(&(xi.clone() - xj.clone()).inv());
            }
        }
        acc = &acc + &basis;
    }
    acc
}

/// Canonical basis of span(vectors): nonzero rows of the RREF.
pub fn span<F: Field>(vectors: &[Vec<F>], dim: usize) -> Basis<F> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
    debug_assert!(vectors.iter().all(|v| v.len() == dim));
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

pub fn subspace_dim<F: Field>(vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_rows(vectors.to_vec()).rank()
    }
}

/// True when span(inner) ⊆ span(outer).
pub fn subspace_contains<F: Field>(outer: &[Vec<F>], inner: &[Vec<F>]) -> bool {
    if inner.is_empty() {
        return true;
    }
    let base = subspace_dim(outer);
    let mut all = outer.to_vec();
    all.extend(inner.iter().cloned());
    subspace_dim(&all) == base
}

pub fn subspace_eq<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> bool {
    subspace_dim(a) == subspace_dim(b) && subspace_contains(a, b)
}

/// Basis of span(a) ∩ span(b).
pub fn subspace_intersection<F: Field>(a: &[Vec<F>], b: &[Vec<F>], dim: usize) -> Basis<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ x_i a_i − Σ y_j b_j = 0 and map back through the a part.
    let mut cols: Vec<Vec<F>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Matrix::from_columns(&cols);
    let vectors: Vec<Vec<F>> = m
        .kernel()
        .into_iter()
        .map(|k| {
            let mut v = vec![F::zero(); dim];
            for (coef, av) in k.iter().zip(a) {
                for (t, x) in v.iter_mut().zip(av) {
                    *t = t.clone() + coef.clone() * x.clone();
                }
            }
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    span(&vectors, dim)
}

/// Image of a subspace under a matrix, as a canonical basis.
pub fn subspace_image<F: Field>(m: &Matrix<F>, basis: &[Vec<F>]) -> Basis<F> {
    let imgs: Vec<Vec<F>> = basis.iter().map(|v| m.apply(v)).collect();
    span(&imgs, m.rows())
}

/// True when `v` and `w` span the same line (both nonzero).
pub fn parallel<F: Field>(v: &[F], w: &[F]) -> bool {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            if v[i].clone() * w[j].clone() != v[j].clone() * w[i].clone() {
                return false;
            }
        }
    }
    v.iter().zip(w).all(|(a, b)| a.is_zero() == b.is_zero())
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Matrix<Rat> {
    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }
}
