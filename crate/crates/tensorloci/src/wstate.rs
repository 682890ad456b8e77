//! Tangential tensors (W-states): the tangency point, and decompositions of
//! length k through any other rank-one tensor.
//!
//! Everything is done in W-coordinates: after concision, a tangential tensor
//! is `A·W` with `W = Σᵢ e₁⊗⋯⊗e₂⊗⋯⊗e₁` and tangency point `e₁⊗⋯⊗e₁`.

use num_traits::{One, Zero};

use crate::binforms::bform_root_profile;
use crate::classify::tangency_factors;
use crate::error::{Error, Result};
use crate::exactnum::{q, Q};
use crate::linalg::Mat;
use crate::normal_forms::w_state;
use crate::pencil::pencil_of;
use crate::tensorcore::{concise_reduce, RankOneTensor, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub struct TangencyPoint {
    /// One factor per axis, first nonzero coordinate equal to one.
    pub factors: Vec<Vec<Q>>,
}

impl TangencyPoint {
    pub fn rank_one(&self) -> RankOneTensor<Q> {
        RankOneTensor { factors: self.factors.clone() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    /// `(coefficient, unit-normalized rank-one term)`.
    pub terms: Vec<(Q, RankOneTensor<Q>)>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sum(&self, shape: &[usize]) -> Result<Tensor<Q>> {
        let mut acc = Tensor::zeros(shape);
        for (c, r) in &self.terms {
            acc = acc.add(&r.expand().scale(c))?;
        }
        Ok(acc)
    }
}

/// Concise bases plus the 2×2 matrices taking W to the concise tensor.
struct Frame {
    bases: Vec<Mat<Q>>,
    projections: Vec<Mat<Q>>,
    to_w: Vec<Mat<Q>>,
}

fn frame(t: &Tensor<Q>) -> Result<Frame> {
    let k = t.order();
    if k < 3 {
        return Err(Error::NotTangential);
    }
    let c = concise_reduce(t).map_err(|_| Error::NotTangential)?;
    if c.tensor.shape().iter().any(|&n| n != 2) {
        return Err(Error::NotTangential);
    }
    let qs = tangency_factors(&c.tensor).ok_or(Error::NotTangential)?;
    let mut ms = Vec::with_capacity(k);
    let mut inverses = Vec::with_capacity(k);
    for f in &qs {
        let other = if f[1].is_zero() { [q(0), q(1)] } else { [q(1), q(0)] };
        let m = Mat::from_rows(vec![vec![f[0].clone(), other[0].clone()], vec![f[1].clone(), other[1].clone()]]);
        inverses.push(m.inverse()?);
        ms.push(m);
    }
    // In tangency coordinates T = c·e₁^k + Σ aᵢEᵢ; absorb c into axis 0.
    let s = c.tensor.multilinear(&inverses)?;
    let mut to_w = Vec::with_capacity(k);
    for (i, m) in ms.into_iter().enumerate() {
        let mut idx = vec![0; k];
        idx[i] = 1;
        let a = s.get(&idx).clone();
        let shift = if i == 0 { s.get(&vec![0; k]).clone() } else { q(0) };
        let g = Mat::from_rows(vec![vec![q(1), shift], vec![q(0), a]]);
        to_w.push(m.mul(&g));
    }
    debug_assert_eq!(w_state(k).multilinear(&to_w).unwrap(), c.tensor);
    Ok(Frame { bases: c.bases, projections: c.projections, to_w })
}

fn normalize_vec(v: &[Q]) -> Vec<Q> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero vector").clone();
    v.iter().map(|x| x / &lead).collect()
}

/// The tangency point of a tangential tensor of order ≥ 3.
pub fn find_tangency(t: &Tensor<Q>) -> Result<TangencyPoint> {
    let f = frame(t)?;
    let factors = f
        .bases
        .iter()
        .zip(&f.to_w)
        .map(|(b, a)| normalize_vec(&b.mul_vec(&a.col(0))))
        .collect();
    Ok(TangencyPoint { factors })
}

/// Coefficients `c` with `Σ cᵢ·termᵢ = target`, if the target lies in the span.
pub fn solve_coefficients(target: &Tensor<Q>, terms: &[RankOneTensor<Q>]) -> Option<Vec<Q>> {
    let n = target.data().len();
    let mut m = Mat::zeros(n, terms.len());
    for (j, r) in terms.iter().enumerate() {
        for (i, x) in r.expand().data().iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m.solve(target.data())
}

/// A decomposition of `T` into k rank-one terms, the first a multiple of `P`.
pub fn decompose_tangential(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<Decomposition> {
    if p.shape() != t.shape() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", p.shape(), t.shape())));
    }
    let f = frame(t)?;
    let mut pw = Vec::with_capacity(t.order());
    for (i, v) in p.factors.iter().enumerate() {
        let inside = f.projections[i].mul_vec(v);
        if f.bases[i].mul_vec(&inside) != *v {
            return Err(Error::OutsideConciseSpace);
        }
        pw.push(f.to_w[i].inverse()?.mul_vec(&inside));
    }
    if pw.iter().all(|v| v[1].is_zero()) {
        return Err(Error::TangencyPointRequested);
    }
    let dirs = w_directions(&pw)?;
    let k = t.order();
    let coeffs = solve_coefficients(&w_state(k), &dirs).ok_or(Error::NotTangential)?;
    if coeffs[0].is_zero() {
        return Err(Error::NotTangential);
    }
    let terms = dirs
        .iter()
        .zip(coeffs)
        .map(|(d, c)| {
            let factors = d
                .factors
                .iter()
                .enumerate()
                .map(|(i, x)| f.bases[i].mul_vec(&f.to_w[i].mul_vec(x)))
                .collect();
            let (scale, r) = RankOneTensor { factors }.normalized();
            (c * scale, r)
        })
        .collect();
    Ok(Decomposition { terms })
}

/// `Σ cᵢ·termᵢ = T` exactly, with every term a nonzero rank-one tensor.
pub fn verify_decomposition(t: &Tensor<Q>, d: &Decomposition) -> bool {
    if d.terms.iter().any(|(_, r)| r.shape() != t.shape() || r.factors.iter().any(|f| f.iter().all(|x| x.is_zero()))) {
        return false;
    }
    d.sum(t.shape()).map(|s| s == *t).unwrap_or(false)
}

fn e1() -> Vec<Q> {
    vec![q(1), q(0)]
}

fn e2() -> Vec<Q> {
    vec![q(0), q(1)]
}

/// k rank-one tensors spanning a space that contains W, the first one
/// proportional to `P`. Coincident axes (`pᵢ ∝ e₁`) are peeled off; the rest
/// goes through a curve through `P` tangent to W, or a three-factor base case.
fn w_directions(pw: &[Vec<Q>]) -> Result<Vec<RankOneTensor<Q>>> {
    let k = pw.len();
    let free: Vec<usize> = (0..k).filter(|&i| !pw[i][1].is_zero()).collect();
    let fixed: Vec<usize> = (0..k).filter(|&i| pw[i][1].is_zero()).collect();
    if fixed.is_empty() {
        return Ok(through_curve(pw));
    }
    let mut core = free.clone();
    if free.len() < 3 {
        core.extend(fixed.iter().take(3 - free.len()));
        core.sort_unstable();
    }
    let sub: Vec<Vec<Q>> = core.iter().map(|&i| pw[i].clone()).collect();
    let sub_dirs = if free.len() >= 3 { through_curve(&sub) } else { three_factor_base(&sub)? };
    let mut out = Vec::with_capacity(k);
    for d in sub_dirs {
        let mut factors = vec![e1(); k];
        for (pos, &axis) in core.iter().enumerate() {
            factors[axis] = d.factors[pos].clone();
        }
        out.push(RankOneTensor { factors });
    }
    for i in (0..k).filter(|i| !core.contains(i)) {
        let mut factors = vec![e1(); k];
        factors[i] = e2();
        out.push(RankOneTensor { factors });
    }
    Ok(out)
}

/// Nonzero rationals 1, −1, 2, −2, …
fn parameter_sequence() -> impl Iterator<Item = Q> {
    (1i64..).flat_map(|n| [q(n), q(-n)])
}

/// All factors of `P` differ from e₁. With `pᵢ = (πᵢ, 1)` the curve
/// `(x:y) ↦ ⊗ᵢ((x + πᵢy)e₁ + ye₂)` passes through P at (0:1) and its tangent
/// at (1:0) contains W. The other k−1 points (1:tₗ) must satisfy
/// `Σ 1/tₗ = −Σπᵢ` for W to lie in their span together with P.
fn through_curve(pw: &[Vec<Q>]) -> Vec<RankOneTensor<Q>> {
    let k = pw.len();
    let pis: Vec<Q> = pw.iter().map(|v| &v[0] / &v[1]).collect();
    let s: Q = pis.iter().fold(Q::zero(), |a, b| a + b);
    let seq: Vec<Q> = parameter_sequence().take(2 * k + 64).collect();
    let mut recips = Vec::new();
    for offset in 0.. {
        let mut r: Vec<Q> = seq[offset..offset + k - 2].to_vec();
        let last = -&s - r.iter().fold(Q::zero(), |a, b| a + b);
        if !last.is_zero() && !r.contains(&last) {
            r.push(last);
            recips = r;
            break;
        }
    }
    let mut out = vec![RankOneTensor { factors: pis.iter().map(|pi| vec![pi.clone(), q(1)]).collect() }];
    for r in recips {
        let t = r.recip();
        let factors = pis.iter().map(|pi| vec![Q::one() + pi * &t, t.clone()]).collect();
        out.push(RankOneTensor { factors });
    }
    out
}

/// Three factors, one or two of them equal to e₁.
fn three_factor_base(pw: &[Vec<Q>]) -> Result<Vec<RankOneTensor<Q>>> {
    let fixed: Vec<usize> = (0..3).filter(|&i| pw[i][1].is_zero()).collect();
    let p_dir = RankOneTensor { factors: pw.to_vec() };
    if fixed.len() == 2 {
        // W − (1/β)P = (−α/β·e₁ + e₂)⊗e₁⊗e₁ + e₁⊗e₂⊗e₁ in the order (x, y, z)
        let (x, y) = (fixed[0], fixed[1]);
        let z = 3 - x - y;
        let ratio = -&pw[z][0] / &pw[z][1];
        let mut a = vec![e1(), e1(), e1()];
        a[x] = vec![ratio, q(1)];
        let mut b = vec![e1(), e1(), e1()];
        b[y] = e2();
        return Ok(vec![p_dir, RankOneTensor { factors: a }, RankOneTensor { factors: b }]);
    }
    // one fixed axis: W − P has nonzero hyperdeterminant and splits in two
    let rest = w_state(3).sub(&p_dir.expand())?;
    let mut out = vec![p_dir];
    out.extend(split_rank_two(&rest).ok_or(Error::NotTangential)?);
    Ok(out)
}

/// The two terms of a 2×2×2 tensor whose pencil determinant has two distinct
/// rational roots.
fn split_rank_two(s: &Tensor<Q>) -> Option<Vec<RankOneTensor<Q>>> {
    let p = pencil_of(s).ok()?;
    let det = p.det_form().ok()?;
    let roots = bform_root_profile(&det).ok()?;
    if roots.len() != 2 || roots.iter().any(|(l, m)| l.degree() != 1 || *m != 1) {
        return None;
    }
    let mut yz = Vec::new();
    for (l, _) in &roots {
        let (u0, v0) = l.linear_root();
        let m = p.member(&u0, &v0);
        let j = (0..2).find(|&j| m.col(j).iter().any(|x| !x.is_zero()))?;
        let y = m.col(j);
        let r = (0..2).find(|&r| !y[r].is_zero())?;
        let z: Vec<Q> = m.row(r).iter().map(|x| x / &y[r]).collect();
        yz.push((y, z));
    }
    let mut dirs = Vec::new();
    for (y, z) in &yz {
        for a in [e1(), e2()] {
            dirs.push(RankOneTensor { factors: vec![a, y.clone(), z.clone()] });
        }
    }
    let c = solve_coefficients(s, &dirs)?;
    Some(
        yz.into_iter()
            .enumerate()
            .map(|(j, (y, z))| RankOneTensor { factors: vec![vec![c[2 * j].clone(), c[2 * j + 1].clone()], y, z] })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qf;
    use crate::tensorcore::{apply_gl, basis_vector, multi_indices};

    fn single_flip_support(t: &Tensor<Q>) -> usize {
        multi_indices(t.shape())
            .filter(|idx| idx.iter().filter(|&&i| i == 1).count() == 1 && !t.get(idx).is_zero())
            .count()
    }

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn r1(fs: &[&[i64]]) -> RankOneTensor<Q> {
        RankOneTensor::new(fs.iter().map(|f| v(f)).collect()).unwrap()
    }

    #[test]
    fn tangency_of_w_state() {
        let t = find_tangency(&w_state(3)).unwrap();
        assert_eq!(t.factors, vec![v(&[1, 0]); 3]);
        assert_eq!(single_flip_support(&w_state(4)), 4);
    }

    #[test]
    fn tangency_is_transported() {
        let a = Mat::from_rows(vec![v(&[2, 1]), v(&[1, 1])]);
        let b = Mat::from_rows(vec![v(&[1, 3]), v(&[0, 1])]);
        let c = Mat::from_rows(vec![v(&[1, 0]), v(&[5, 2])]);
        let t = apply_gl(&w_state(3), &[a.clone(), b.clone(), c.clone()]).unwrap();
        let got = find_tangency(&t).unwrap();
        let want: Vec<Vec<Q>> = [a, b, c].iter().map(|m| normalize_vec(&m.col(0))).collect();
        assert_eq!(got.factors, want);
    }

    #[test]
    fn worked_example_fixture() {
        let t = w_state(3);
        let p = r1(&[&[1, 1], &[1, 1], &[0, 1]]);
        let fixture = Decomposition {
            terms: vec![
                (qf(-1, 3), p.clone()),
                (qf(1, 4), r1(&[&[2, 1], &[2, 1], &[1, 1]])),
                (qf(1, 12), r1(&[&[-2, 1], &[-2, 1], &[-3, 1]])),
            ],
        };
        assert!(verify_decomposition(&t, &fixture));
        let d = decompose_tangential(&t, &p).unwrap();
        assert_eq!(d.len(), 3);
        assert!(verify_decomposition(&t, &d));
        assert_eq!(d.terms[0].1, p.normalized().1);
    }

    #[test]
    fn coincident_factors() {
        let t = w_state(3);
        for p in [r1(&[&[1, 0], &[1, 0], &[1, 1]]), r1(&[&[1, 0], &[0, 1], &[0, 1]]), r1(&[&[0, 1], &[0, 1], &[0, 1]])] {
            let d = decompose_tangential(&t, &p).unwrap();
            assert_eq!(d.len(), 3);
            assert!(verify_decomposition(&t, &d));
            assert_eq!(d.terms[0].1, p.normalized().1);
        }
        let t5 = w_state(5);
        for p in [
            r1(&[&[1, 0], &[1, 0], &[1, 0], &[1, 0], &[3, 1]]),
            r1(&[&[1, 0], &[2, 1], &[1, 0], &[-1, 1], &[1, 0]]),
            r1(&[&[1, 0], &[2, 1], &[1, 1], &[-1, 1], &[1, 0]]),
        ] {
            let d = decompose_tangential(&t5, &p).unwrap();
            assert_eq!(d.len(), 5);
            assert!(verify_decomposition(&t5, &d));
        }
        assert_eq!(decompose_tangential(&t, &r1(&[&[2, 0], &[1, 0], &[1, 0]])), Err(Error::TangencyPointRequested));
    }

    #[test]
    fn non_concise_ambient() {
        let mut t = Tensor::zeros(&[3, 2, 3]);
        for idx in [[0, 0, 1], [0, 1, 0], [1, 0, 0]] {
            t.set(&idx, q(1));
        }
        let p = RankOneTensor::new(vec![v(&[1, 1, 0]), v(&[1, 1]), v(&[0, 1, 0])]).unwrap();
        let d = decompose_tangential(&t, &p).unwrap();
        assert!(verify_decomposition(&t, &d));
        let outside = RankOneTensor::new(vec![basis_vector(3, 2), v(&[1, 1]), v(&[0, 1, 0])]).unwrap();
        assert_eq!(decompose_tangential(&t, &outside), Err(Error::OutsideConciseSpace));
    }

    #[test]
    fn verification_rejects_short_sums() {
        assert!(verify_decomposition(&Tensor::zeros(&[2, 2, 2]), &Decomposition { terms: vec![] }));
        let short = Decomposition { terms: vec![(q(1), r1(&[&[1, 0], &[1, 0], &[0, 1]])), (q(1), r1(&[&[0, 1], &[1, 1], &[1, 0]]))] };
        assert!(!verify_decomposition(&w_state(3), &short));
    }
}
