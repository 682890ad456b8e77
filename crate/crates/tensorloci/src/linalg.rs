//! Dense exact linear algebra over any [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub rref: Mat<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<F> = rows.into_iter().flatten().collect();
        Mat::from_vec(r, c, data)
    }

    /// Single column matrix.
    pub fn column(v: &[F]) -> Self {
        Mat::from_vec(v.len(), 1, v.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions must agree");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_unrecorded() {
                    continue;
                }
                for j in 0..o.cols {
                    let t = a.clone() * o.get(k, j);
                    let idx = i * o.cols + j;
                    out.data[idx] = std::mem::replace(&mut out.data[idx], F::zero()) + &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (j, x) in v.iter().enumerate() {
                    acc = acc + &(self.get(i, j).clone() * x);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.clone() * c)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Gauss–Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn echelon(&self) -> Echelon<F> {
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
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = m.get(r, j).clone() * &inv;
                m.set(r, j, x);
            }
            m.set(r, c, F::one());
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero_unrecorded() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(i, j).clone() - &(f.clone() * m.get(r, j));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let Echelon { rref, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -rref.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("determinant of {}x{} matrix", self.rows, self.cols)));
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            let inv = piv.inverse().expect("pivot is nonzero");
            det = det * &piv;
            for i in c + 1..n {
                let f = m.get(i, c).clone() * &inv;
                if f.is_zero_unrecorded() {
                    continue;
                }
                for j in c..n {
                    let x = m.get(i, j).clone() - &(f.clone() * m.get(c, j));
                    m.set(i, j, x);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(format!("inverse of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let e = aug.echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(e.rref.select(&rows, &cols))
    }

    /// Some solution of `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let e = aug.echelon();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = e.rref.get(r, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Display for Mat<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::exactnum::format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn mat_rank<F: Field>(m: &Mat<F>) -> usize {
    m.rank()
}

pub fn mat_nullspace<F: Field>(m: &Mat<F>) -> Vec<Vec<F>> {
    m.nullspace()
}

/// Moore–Penrose pseudoinverse through a full-rank factorization `A = B·C`:
/// `A⁺ = Cᵀ (C Cᵀ)⁻¹ (Bᵀ B)⁻¹ Bᵀ`.
pub fn pseudoinverse(a: &Mat<Q>) -> Mat<Q> {
    let Echelon { rref, pivots } = a.echelon();
    let r = pivots.len();
    if r == 0 {
        return Mat::zeros(a.cols, a.rows);
    }
    let all_rows: Vec<usize> = (0..a.rows).collect();
    let all_cols: Vec<usize> = (0..a.cols).collect();
    let top: Vec<usize> = (0..r).collect();
    let b = a.select(&all_rows, &pivots);
    let c = rref.select(&top, &all_cols);
    let ct = c.transpose();
    let bt = b.transpose();
    let cct_inv = c.mul(&ct).inverse().expect("full row rank");
    let btb_inv = bt.mul(&b).inverse().expect("full column rank");
    ct.mul(&cct_inv).mul(&btb_inv).mul(&bt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, qf};

    fn m(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(mat_rank(&Mat::<Q>::identity(3)), 3);
        assert_eq!(mat_rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(mat_rank(&m(&[&[1, 0, 0, 1], &[0, 1, 0, 0]])), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(mat_nullspace(&Mat::<Q>::identity(2)).is_empty());
        assert_eq!(mat_nullspace(&m(&[&[1, 1]])), vec![vec![q(-1), q(1)]]);
        let ann = mat_nullspace(&m(&[&[1, 2]]));
        assert_eq!(ann.len(), 1);
        assert_eq!(&ann[0][0] + &(q(2) * &ann[0][1]), q(0));
    }

    #[test]
    fn pseudoinverse_examples() {
        let d = pseudoinverse(&m(&[&[2, 0], &[0, 0]]));
        assert_eq!(d, Mat::from_rows(vec![vec![qf(1, 2), q(0)], vec![q(0), q(0)]]));
        let r = pseudoinverse(&m(&[&[1, 0, 0], &[0, 2, 0]]));
        assert_eq!(r, Mat::from_rows(vec![vec![q(1), q(0)], vec![q(0), qf(1, 2)], vec![q(0), q(0)]]));
        let ones = pseudoinverse(&m(&[&[1, 1], &[1, 1]]));
        assert_eq!(ones, Mat::from_vec(2, 2, vec![qf(1, 4); 4]));
        assert_eq!(pseudoinverse(&Mat::<Q>::zeros(2, 3)), Mat::zeros(3, 2));
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.det().unwrap(), q(1));
        assert_eq!(a.mul(&a.inverse().unwrap()), Mat::identity(2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMatrix));
        let x = a.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
    }
}
