use super::field::{qb, qi, Field, Rationals, Q};
use super::poly::RationalPolynomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Gaussian elimination over an arbitrary field.
pub mod generic {
    use super::Field;

    /// Brings `m` (rows of length `ncols`) to reduced row-echelon form in place, drops zero
    /// rows, and returns the pivot columns.
    pub fn rref<F: Field>(f: &F, m: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !f.is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, p);
            let inv = f.inv(&m[r][c]).unwrap();
            for x in m[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            for i in 0..m.len() {
                if i == r || f.is_zero(&m[i][c]) {
                    continue;
                }
                let factor = m[i][c].clone();
                let pivot = std::mem::take(&mut m[r]);
                for (x, y) in m[i][c..ncols].iter_mut().zip(&pivot[c..ncols]) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
                m[r] = pivot;
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        pivots
    }

    /// Basis of {x : m·x = 0} (column vectors), one vector per free column.
    pub fn right_kernel<F: Field>(f: &F, m: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
        let mut a = m.to_vec();
        let pivots = rref(f, &mut a, ncols);
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); ncols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[row][free]);
            }
            out.push(v);
        }
        out
    }

    pub fn rank<F: Field>(f: &F, m: &[Vec<F::Elem>], ncols: usize) -> usize {
        let mut a = m.to_vec();
        rref(f, &mut a, ncols).len()
    }

    pub fn mat_mul<F: Field>(
        f: &F,
        a: &[Vec<F::Elem>],
        b: &[Vec<F::Elem>],
        bcols: usize,
    ) -> Vec<Vec<F::Elem>> {
        a.iter()
            .map(|row| {
                (0..bcols)
                    .map(|j| {
                        row.iter()
                            .zip(b.iter())
                            .fold(f.zero(), |acc, (x, brow)| f.add(&acc, &f.mul(x, &brow[j])))
                    })
                    .collect()
            })
            .collect()
    }

    /// Solves x·a = b for a row vector x, returning one solution if any.
    pub fn solve_left<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let n = a.len();
        let cols = b.len();
        // Transposed augmented system: aᵀ·xᵀ = bᵀ.
        let mut sys: Vec<Vec<F::Elem>> = (0..cols)
            .map(|j| {
                let mut row: Vec<F::Elem> = (0..n).map(|i| a[i][j].clone()).collect();
                row.push(b[j].clone());
                row
            })
            .collect();
        let pivots = rref(f, &mut sys, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![f.zero(); n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = sys[row][n].clone();
        }
        Some(x)
    }
}

/// Dense matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Q>>,
}

impl RationalMatrix {
    pub fn new(data: Vec<Vec<Q>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    /// Builds a matrix with an explicit column count (useful for zero-row matrices).
    pub fn with_shape(rows: usize, cols: usize, data: Vec<Vec<Q>>) -> Self {
        assert!(data.len() == rows && data.iter().all(|r| r.len() == cols));
        RationalMatrix { rows, cols, data }
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let data: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| qi(x)).collect())
            .collect();
        Self::new(data).expect("rectangular input")
    }

    pub fn from_bigints(rows: &[Vec<BigInt>], cols: usize) -> Self {
        Self::with_shape(
            rows.len(),
            cols,
            rows.iter().map(|r| r.iter().map(qb).collect()).collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::with_shape(rows, cols, vec![vec![Q::zero(); cols]; rows])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Q::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn data(&self) -> &[Vec<Q>] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols).map(|j| self.column(j)).collect();
        Self::with_shape(self.cols, self.rows, data)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        Self::with_shape(
            self.rows,
            o.cols,
            generic::mat_mul(&Rationals, &self.data, &o.data, o.cols),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Self::with_shape(self.rows, self.cols, data)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&qi(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|x| x * c).collect())
            .collect();
        Self::with_shape(self.rows, self.cols, data)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Row vector times matrix: v·self.
    pub fn left_apply(&self, v: &[Q]) -> Vec<Q> {
        (0..self.cols)
            .map(|j| {
                v.iter()
                    .zip(&self.data)
                    .fold(Q::zero(), |acc, (x, r)| acc + x * &r[j])
            })
            .collect()
    }

    /// Matrix times column vector: self·v.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.data
            .iter()
            .map(|r| r.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
            .collect()
    }

    /// p(self) by Horner's rule.
    pub fn eval_poly(&self, p: &RationalPolynomial) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::identity(n).scale(c));
        }
        acc
    }

    pub fn rank(&self) -> usize {
        generic::rank(&Rationals, &self.data, self.cols)
    }

    pub fn determinant(&self) -> Q {
        assert!(self.is_square());
        let mut a = self.data.clone();
        let n = self.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] / &a[c][c];
                let (top, bottom) = a.split_at_mut(i);
                for (x, y) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let mut aug: Vec<Vec<Q>> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        let pivots = generic::rref(&Rationals, &mut aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::with_shape(
            n,
            n,
            aug.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    /// Entries as integers, if all are integral.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        self.data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
