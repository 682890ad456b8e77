//! Dense order-k tensors, flattenings, concision and the GL action.
//!
//! Axes are 0-based throughout the Rust API.

use crate::error::{Error, Result};
use crate::exactnum::{AlgebraicElement, Field, Modulus, Poly, RatFunc, Recorder, Q};
use crate::linalg::Mat;

/// Dense tensor stored row-major (last axis fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<F> {
    shape: Vec<usize>,
    data: Vec<F>,
}

/// `v¹ ⊗ ⋯ ⊗ vᵏ` kept in factored form.
#[derive(Clone, Debug, PartialEq)]
pub struct RankOneTensor<F> {
    pub factors: Vec<Vec<F>>,
}

/// `T − λP` with `λ` an indeterminate.
#[derive(Clone, Debug, PartialEq)]
pub struct ParametricTensor {
    pub base: Tensor<Q>,
    pub direction: RankOneTensor<Q>,
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

/// Iterates over all multi-indices of a shape in row-major order.
pub fn multi_indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = shape.iter().product();
    let st = strides(shape);
    (0..total).map(move |mut flat| {
        st.iter()
            .map(|&s| {
                let i = flat / s;
                flat %= s;
                i
            })
            .collect()
    })
}

impl<F: Field> Tensor<F> {
    pub fn zeros(shape: &[usize]) -> Self {
        let n = shape.iter().product();
        Tensor { shape: shape.to_vec(), data: vec![F::zero(); n] }
    }

    pub fn from_vec(shape: &[usize], data: Vec<F>) -> Result<Self> {
        if shape.len() < 2 {
            return Err(Error::ShapeMismatch(format!("order {} < 2", shape.len())));
        }
        if data.len() != shape.iter().product::<usize>() {
            return Err(Error::ShapeMismatch(format!("{} entries for shape {:?}", data.len(), shape)));
        }
        Ok(Tensor { shape: shape.to_vec(), data })
    }

    /// Tensor with the listed entries, all others zero.
    pub fn from_entries(shape: &[usize], entries: &[(Vec<usize>, F)]) -> Self {
        let mut t = Tensor::zeros(shape);
        for (idx, v) in entries {
            t.set(idx, v.clone());
        }
        t
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut off = 0;
        for (i, (&x, &n)) in idx.iter().zip(&self.shape).enumerate() {
            debug_assert!(x < n, "index {x} out of range on axis {i}");
            off = off * n + x;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> &F {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], x: F) {
        let o = self.offset(idx);
        self.data[o] = x;
    }

    pub fn is_zero_tensor(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Tensor<G> {
        Tensor { shape: self.shape.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_shape(&o.shape)?;
        Ok(Tensor { shape: self.shape.clone(), data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_shape(&o.shape)?;
        Ok(Tensor { shape: self.shape.clone(), data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect() })
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c)
    }

    fn check_shape(&self, other: &[usize]) -> Result<()> {
        if self.shape != other {
            return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", self.shape, other)));
        }
        Ok(())
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.order() {
            return Err(Error::AxisOutOfRange { axis, order: self.order() });
        }
        Ok(())
    }

    /// `flatt_axis(T)`: an `n_axis × Π_{j≠axis} n_j` matrix, columns in
    /// row-major order over the remaining axes.
    pub fn flattening(&self, axis: usize) -> Result<Mat<F>> {
        self.check_axis(axis)?;
        let n = self.shape[axis];
        let cols = self.data.len() / n.max(1);
        let mut m = Mat::zeros(n, cols);
        let mut col_counter = vec![0usize; n];
        for (flat, idx) in multi_indices(&self.shape).enumerate() {
            let r = idx[axis];
            m.set(r, col_counter[r], self.data[flat].clone());
            col_counter[r] += 1;
        }
        Ok(m)
    }

    pub fn flattening_ranks(&self) -> Vec<usize> {
        (0..self.order()).map(|i| self.flattening(i).expect("axis in range").rank()).collect()
    }

    /// Multiplies axis `i` by `mats[i]` (which may be rectangular).
    pub fn multilinear(&self, mats: &[Mat<F>]) -> Result<Self> {
        if mats.len() != self.order() {
            return Err(Error::ShapeMismatch(format!("{} matrices for order {}", mats.len(), self.order())));
        }
        let mut cur = self.clone();
        for (axis, m) in mats.iter().enumerate() {
            cur = cur.apply_axis(axis, m)?;
        }
        Ok(cur)
    }

    /// Multiplies one axis by a matrix.
    pub fn apply_axis(&self, axis: usize, m: &Mat<F>) -> Result<Self> {
        self.check_axis(axis)?;
        if m.cols() != self.shape[axis] {
            return Err(Error::ShapeMismatch(format!("matrix with {} columns on axis of size {}", m.cols(), self.shape[axis])));
        }
        let mut shape = self.shape.clone();
        shape[axis] = m.rows();
        let mut out = Tensor::zeros(&shape);
        let st_out = strides(&shape);
        for idx in multi_indices(&self.shape) {
            let x = self.get(&idx);
            if x.is_zero_unrecorded() {
                continue;
            }
            let j = idx[axis];
            let base_out: usize = idx.iter().zip(&st_out).map(|(a, b)| a * b).sum::<usize>() - j * st_out[axis];
            for i in 0..m.rows() {
                let a = m.get(i, j);
                if a.is_zero_unrecorded() {
                    continue;
                }
                let o = base_out + i * st_out[axis];
                let t = a.clone() * x;
                out.data[o] = std::mem::replace(&mut out.data[o], F::zero()) + &t;
            }
        }
        Ok(out)
    }

    /// Contracts one axis against a covector; the order drops by one.
    pub fn contract(&self, axis: usize, w: &[F]) -> Result<Self> {
        self.check_axis(axis)?;
        let m = Mat::from_vec(1, w.len(), w.to_vec());
        let t = self.apply_axis(axis, &m)?;
        let mut shape = self.shape.clone();
        shape.remove(axis);
        Ok(Tensor { shape, data: t.data })
    }

    /// Slice at a fixed index of one axis.
    pub fn slice(&self, axis: usize, index: usize) -> Result<Self> {
        self.check_axis(axis)?;
        let mut w = vec![F::zero(); self.shape[axis]];
        w[index] = F::one();
        self.contract(axis, &w)
    }

    /// Permutes axes: axis `i` of the result is axis `perm[i]` of `self`.
    pub fn permute_axes(&self, perm: &[usize]) -> Self {
        let shape: Vec<usize> = perm.iter().map(|&p| self.shape[p]).collect();
        let mut out = Tensor::zeros(&shape);
        for idx in multi_indices(&self.shape) {
            let new_idx: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
            out.set(&new_idx, self.get(&idx).clone());
        }
        out
    }

    /// A 2-factor tensor as a matrix.
    pub fn as_matrix(&self) -> Result<Mat<F>> {
        if self.order() != 2 {
            return Err(Error::WrongShape(format!("{:?} is not a matrix", self.shape)));
        }
        Ok(Mat::from_vec(self.shape[0], self.shape[1], self.data.clone()))
    }

    pub fn from_matrix(m: &Mat<F>) -> Self {
        Tensor { shape: vec![m.rows(), m.cols()], data: m.data().to_vec() }
    }
}

impl<F: Field> RankOneTensor<F> {
    pub fn new(factors: Vec<Vec<F>>) -> Result<Self> {
        if factors.iter().any(|f| f.iter().all(|x| x.is_zero())) {
            return Err(Error::ZeroTensor);
        }
        Ok(RankOneTensor { factors })
    }

    pub fn shape(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.len()).collect()
    }

    pub fn expand(&self) -> Tensor<F> {
        let shape = self.shape();
        let mut t = Tensor::zeros(&shape);
        for (flat, idx) in multi_indices(&shape).enumerate() {
            let mut x = F::one();
            for (f, &i) in self.factors.iter().zip(&idx) {
                x = x * &f[i];
            }
            t.data[flat] = x;
        }
        t
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> RankOneTensor<G> {
        RankOneTensor { factors: self.factors.iter().map(|v| v.iter().map(f).collect()).collect() }
    }

    /// `(A₁,…,A_k)·P`.
    pub fn transform(&self, mats: &[Mat<F>]) -> Self {
        RankOneTensor { factors: self.factors.iter().zip(mats).map(|(v, m)| m.mul_vec(v)).collect() }
    }

    /// Scales each factor so its first nonzero coordinate is one; returns the
    /// product of the removed scalars.
    pub fn normalized(&self) -> (F, Self) {
        let mut c = F::one();
        let factors = self
            .factors
            .iter()
            .map(|v| {
                let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero factor").clone();
                let inv = lead.inverse().expect("nonzero");
                c = std::mem::replace(&mut c, F::zero()) * &lead;
                v.iter().map(|x| x.clone() * &inv).collect()
            })
            .collect();
        (c, RankOneTensor { factors })
    }
}

impl ParametricTensor {
    pub fn new(base: Tensor<Q>, direction: RankOneTensor<Q>) -> Result<Self> {
        if base.shape() != direction.shape().as_slice() {
            return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", base.shape(), direction.shape())));
        }
        Ok(ParametricTensor { base, direction })
    }

    /// Entries as elements of ℚ(λ), all sharing `rec`.
    pub fn over_function_field(&self, rec: Option<&Recorder>) -> Tensor<RatFunc> {
        let p = self.direction.expand();
        let data = self
            .base
            .data()
            .iter()
            .zip(p.data())
            .map(|(t, pv)| {
                let f = RatFunc::from_poly(Poly::linear(t.clone(), -pv.clone()));
                match rec {
                    Some(r) => f.with_recorder(r),
                    None => f,
                }
            })
            .collect();
        Tensor { shape: self.base.shape().to_vec(), data }
    }

    /// Specializes λ to the class of x in ℚ[x]/(f).
    pub fn over_extension(&self, m: &std::rc::Rc<Modulus>) -> Tensor<AlgebraicElement> {
        let p = self.direction.expand();
        let data = self
            .base
            .data()
            .iter()
            .zip(p.data())
            .map(|(t, pv)| AlgebraicElement::new(m, Poly::linear(t.clone(), -pv.clone())))
            .collect();
        Tensor { shape: self.base.shape().to_vec(), data }
    }

    pub fn at(&self, lam: &Q) -> Tensor<Q> {
        subtract_scaled(&self.base, lam, &self.direction).expect("shapes agree")
    }

    /// Flattening with entries in ℚ[λ].
    pub fn flattening(&self, axis: usize) -> Result<Mat<RatFunc>> {
        self.over_function_field(None).flattening(axis)
    }
}

/// `flatt_axis(T)`.
pub fn flattening<F: Field>(t: &Tensor<F>, axis: usize) -> Result<Mat<F>> {
    t.flattening(axis)
}

/// Result of [`concise_reduce`].
#[derive(Clone, Debug)]
pub struct Concise<F> {
    pub tensor: Tensor<F>,
    /// Per axis, an `n_i × r_i` matrix whose columns span the image of flattening i.
    pub bases: Vec<Mat<F>>,
    /// Per axis, an `r_i × n_i` left inverse of the basis.
    pub projections: Vec<Mat<F>>,
}

/// Compresses `T` to its concise shape.
pub fn concise_reduce<F: Field>(t: &Tensor<F>) -> Result<Concise<F>> {
    if t.is_zero_tensor() {
        return Err(Error::ZeroTensor);
    }
    let mut bases = Vec::new();
    let mut projections = Vec::new();
    for axis in 0..t.order() {
        let f = t.flattening(axis)?;
        let (b, l) = basis_and_left_inverse(&f);
        bases.push(b);
        projections.push(l);
    }
    let tensor = t.multilinear(&projections)?;
    Ok(Concise { tensor, bases, projections })
}

/// Column basis of `m` (its pivot columns) and a left inverse of that basis.
pub fn basis_and_left_inverse<F: Field>(m: &Mat<F>) -> (Mat<F>, Mat<F>) {
    let pivots = m.echelon().pivots;
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let b = m.select(&all_rows, &pivots);
    let r = pivots.len();
    let row_pivots = b.transpose().echelon().pivots;
    let all_cols: Vec<usize> = (0..r).collect();
    let sq = b.select(&row_pivots, &all_cols);
    let inv = sq.inverse().expect("independent rows");
    let mut l = Mat::zeros(r, m.rows());
    for a in 0..r {
        for (c, &row) in row_pivots.iter().enumerate() {
            l.set(a, row, inv.get(a, c).clone());
        }
    }
    (b, l)
}

/// `⟨T*, P⟩ = Σ T*_{i₁…i_k} p¹_{i₁}⋯pᵏ_{i_k}`.
pub fn dual_pairing<F: Field>(tstar: &Tensor<F>, p: &RankOneTensor<F>) -> Result<F> {
    if tstar.shape() != p.shape().as_slice() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", tstar.shape(), p.shape())));
    }
    let mut cur = tstar.clone();
    let mut acc: Option<F> = None;
    for (axis, f) in p.factors.iter().enumerate().rev() {
        if axis == 0 {
            let m = Mat::from_vec(1, f.len(), f.clone());
            let v = cur.flattening(0)?;
            let r = m.mul(&v);
            acc = Some(r.get(0, 0).clone());
        } else {
            cur = cur.contract(axis, f)?;
        }
    }
    Ok(acc.expect("order ≥ 1"))
}

/// `(A₁,…,A_k)·T` for invertible square `A_i`.
pub fn apply_gl<F: Field>(t: &Tensor<F>, mats: &[Mat<F>]) -> Result<Tensor<F>> {
    for (m, &n) in mats.iter().zip(t.shape()) {
        if m.rows() != n || m.cols() != n {
            return Err(Error::ShapeMismatch(format!("{}x{} matrix on axis of size {n}", m.rows(), m.cols())));
        }
        if m.det()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
    }
    t.multilinear(mats)
}

/// `T − λ·P`.
pub fn subtract_scaled<F: Field>(t: &Tensor<F>, lam: &F, p: &RankOneTensor<F>) -> Result<Tensor<F>> {
    if t.shape() != p.shape().as_slice() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", t.shape(), p.shape())));
    }
    let e = p.expand();
    Ok(Tensor {
        shape: t.shape.clone(),
        data: t.data.iter().zip(&e.data).map(|(a, b)| a.clone() - &(lam.clone() * b)).collect(),
    })
}

/// Standard basis vector `e_i` of length `n`.
pub fn basis_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    fn t5() -> Tensor<Q> {
        Tensor::from_entries(&[2, 2, 2], &[(vec![0, 0, 0], q(1)), (vec![0, 1, 1], q(1)), (vec![1, 0, 1], q(1))])
    }

    #[test]
    fn flattening_examples() {
        let e111 = Tensor::from_entries(&[2, 2, 2], &[(vec![0, 0, 0], q(1))]);
        let f = e111.flattening(0).unwrap();
        assert_eq!((f.rows(), f.cols()), (2, 4));
        assert_eq!(f.get(0, 0), &q(1));
        let f5 = t5().flattening(0).unwrap();
        assert_eq!(f5.row(0), vec![q(1), q(0), q(0), q(1)]);
        assert_eq!(f5.row(1), vec![q(0), q(1), q(0), q(0)]);
        assert!(matches!(t5().flattening(3), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn concise_examples() {
        let e111 = Tensor::from_entries(&[2, 2, 2], &[(vec![0, 0, 0], q(1))]);
        assert_eq!(concise_reduce(&e111).unwrap().tensor.shape(), &[1, 1, 1]);
        let t10 = Tensor::from_entries(
            &[2, 3, 3],
            &[(vec![0, 0, 0], q(1)), (vec![0, 1, 1], q(1)), (vec![0, 2, 2], q(1))],
        );
        assert_eq!(concise_reduce(&t10).unwrap().tensor.shape(), &[1, 3, 3]);
        let t2 = Tensor::from_entries(&[2, 2, 2], &[(vec![0, 0, 0], q(1)), (vec![1, 1, 0], q(1))]);
        let c = concise_reduce(&t2).unwrap();
        assert_eq!(c.tensor.shape(), &[2, 2, 1]);
        assert_eq!(c.tensor.multilinear(&c.bases).unwrap(), t2);
        assert_eq!(concise_reduce(&Tensor::<Q>::zeros(&[2, 2])).unwrap_err(), Error::ZeroTensor);
    }

    #[test]
    fn pairing_and_subtraction() {
        let e = RankOneTensor::new(vec![vec![q(1), q(0)]; 3]).unwrap();
        let estar = e.expand();
        assert_eq!(dual_pairing(&estar, &e).unwrap(), q(1));
        assert_eq!(subtract_scaled(&t5(), &q(0), &e).unwrap(), t5());
        assert!(subtract_scaled(&estar, &q(1), &e).unwrap().is_zero_tensor());
        let p = RankOneTensor::new(vec![vec![q(1), q(0)], vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap();
        let d = subtract_scaled(&t5(), &q(1), &p).unwrap();
        let mut expect = t5();
        expect.set(&[0, 0, 1], q(-1));
        assert_eq!(d, expect);
    }

    #[test]
    fn gl_action() {
        let swap = Mat::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
        let id = Mat::<Q>::identity(2);
        let moved = apply_gl(&t5(), &[swap, id.clone(), id.clone()]).unwrap();
        assert_eq!(moved.get(&[1, 0, 0]), &q(1));
        assert_eq!(moved.get(&[0, 0, 0]), &q(0));
        let sc = Mat::from_rows(vec![vec![q(3), q(0)], vec![q(0), q(3)]]);
        assert_eq!(apply_gl(&t5(), &[sc, id.clone(), id.clone()]).unwrap(), t5().scale(&q(3)));
        let sing = Mat::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]);
        assert_eq!(apply_gl(&t5(), &[sing, id.clone(), id]).unwrap_err(), Error::SingularMatrix);
    }
}
