//! Dense exact linear algebra over the rationals: reduction, rank, kernels,
//! and characteristic polynomials. Everything here is division-exact; there
//! are no tolerances anywhere.

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn new(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        QMatrix::new(data)
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        QMatrix::new(data)
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix::new(
            self.data
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        )
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, mut exp: u32) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut out = QMatrix::identity(self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                out = out.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// In-place Gauss-Jordan; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].recip().expect("nonzero pivot");
            for j in 0..self.cols {
                self.data[r][j] = &self.data[r][j] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let factor = self.data[i][c].clone();
                    for j in 0..self.cols {
                        let delta = &self.data[r][j] * &factor;
                        self.data[i][j] -= &delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut x = vec![Rational::zero(); self.cols];
            x[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                x[c] = -&m.data[r][free];
            }
            basis.push(x);
        }
        basis
    }

    /// Characteristic polynomial `det(tI - M)` by the Faddeev-LeVerrier
    /// recurrence; returns coefficients `c_0..c_n` with `c_n = 1`.
    pub fn charpoly(&self) -> Vec<Rational> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut aux = QMatrix::identity(n);
        for k in 1..=n {
            aux = self.mul(&aux);
            let trace: Rational = (0..n).map(|i| aux.data[i][i].clone()).sum();
            let c = -(trace / Rational::int(k as i64));
            for i in 0..n {
                aux.data[i][i] += &c;
            }
            coeffs[n - k] = c;
        }
        coeffs
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.data.iter().all(|row| {
            row.iter().all(|v| !v.is_negative())
                && row.iter().cloned().sum::<Rational>() == Rational::one()
        })
    }
}

/// One exact solution of `Ax = b` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve(a: &QMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), b.len());
    let mut aug = QMatrix::zeros(a.rows(), a.cols() + 1);
    for (i, rhs) in b.iter().enumerate() {
        for j in 0..a.cols() {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols(), rhs.clone());
    }
    let pivots = aug.rref();
    if pivots.contains(&a.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, a.cols()).clone();
    }
    Some(x)
}

/// Monic polynomial with the given roots, as coefficients `c_0..c_n`.
pub fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut coeffs = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= &(c * r);
        }
        coeffs = next;
    }
    coeffs
}
