//! Orbit classification in the finite-orbit spaces, and of the pencil of
//! tensors `T − λP` as λ varies.

use std::fmt;

use num_traits::Zero;

use crate::binforms::{bform_discriminant, bform_gcd};
use crate::error::{Error, Result};
use crate::exactnum::{upoly_factor_small, Field, Modulus, Poly, Recorder, Q};
use crate::linalg::Mat;
use crate::normal_forms::rank_pair;
use crate::pencil::{hyperdet222, pencil_minor_gcd, pencil_of, repeated_linear_factor, Pencil};
use crate::tensorcore::{basis_and_left_inverse, concise_reduce, multi_indices, ParametricTensor, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitId {
    /// Tensors with at most two non-trivial factors, by rank. `MatrixRank(0)`
    /// is the zero tensor.
    MatrixRank(usize),
    /// Row of the table of 26 normal forms.
    Orbit(u8),
    /// Concise tangential tensor in `(ℂ²)^{⊗k}` with `k ≥ 4`.
    Tangential(usize),
}

impl OrbitId {
    pub fn rank(self) -> usize {
        match self {
            OrbitId::MatrixRank(r) => r,
            OrbitId::Orbit(n) => rank_pair(n).1,
            OrbitId::Tangential(k) => k,
        }
    }

    pub fn border_rank(self) -> usize {
        match self {
            OrbitId::MatrixRank(r) => r,
            OrbitId::Orbit(n) => rank_pair(n).0,
            OrbitId::Tangential(_) => 2,
        }
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitId::MatrixRank(r) => write!(f, "matrix rank {r}"),
            OrbitId::Orbit(n) => write!(f, "orbit {n}"),
            OrbitId::Tangential(k) => write!(f, "tangential order {k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyReport {
    pub orbit: OrbitId,
    pub rank: usize,
    pub border_rank: usize,
    /// Flattening ranks in input axis order.
    pub concise_shape: Vec<usize>,
    /// Axes sorted by concise dimension (stable); axis `i` of the canonical
    /// presentation is input axis `permutation[i]`.
    pub permutation: Vec<usize>,
    /// True for matrices and for the table rows that are matrices in disguise.
    pub matrix_case: bool,
    /// Per axis, a basis of the concise subspace.
    pub reduction: Vec<Mat<Q>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParametricReport {
    /// Orbit of `T − λP` for all but finitely many λ.
    pub generic: OrbitId,
    /// Pairwise coprime factors in λ with the orbit at their roots. Always
    /// contains the factor `λ`.
    pub exceptional: Vec<(Poly<Q>, OrbitId)>,
}

impl ParametricReport {
    /// Orbit at a rational value of λ.
    pub fn orbit_at(&self, lam: &Q) -> OrbitId {
        self.exceptional
            .iter()
            .find(|(f, _)| f.eval(lam).is_zero())
            .map(|(_, o)| *o)
            .unwrap_or(self.generic)
    }
}

/// Classifies a nonzero rational tensor.
pub fn classify(t: &Tensor<Q>) -> Result<ClassifyReport> {
    let orbit = orbit_id(t)?;
    let c = concise_reduce(t)?;
    let concise_shape = c.tensor.shape().to_vec();
    let mut permutation: Vec<usize> = (0..t.order()).collect();
    permutation.sort_by_key(|&i| concise_shape[i]);
    let matrix_case = matches!(orbit, OrbitId::MatrixRank(_) | OrbitId::Orbit(1..=4 | 10));
    Ok(ClassifyReport {
        orbit,
        rank: orbit.rank(),
        border_rank: orbit.border_rank(),
        concise_shape,
        permutation,
        matrix_case,
        reduction: c.bases,
    })
}

/// Orbit of a tensor over any exact field. Every branch is decided by zero
/// tests on field elements, so over ℚ(λ) with a recorder the result holds at
/// every λ outside the roots of the recorded polynomials.
pub fn orbit_id<F: Field>(t: &Tensor<F>) -> Result<OrbitId> {
    if t.is_zero_tensor() {
        return Err(Error::ZeroTensor);
    }
    let ranks = t.flattening_ranks();
    let active: Vec<usize> = (0..t.order()).filter(|&i| ranks[i] >= 2).collect();
    match active.len() {
        0 if t.order() == 3 => Ok(OrbitId::Orbit(1)),
        0 => Ok(OrbitId::MatrixRank(1)),
        1 | 2 => {
            let r = ranks[active[0]];
            if t.order() == 3 {
                if let Some(n) = matrix_row(&ranks) {
                    return Ok(OrbitId::Orbit(n));
                }
            }
            Ok(OrbitId::MatrixRank(r))
        }
        3 => three_factor(&drop_inactive(t, &ranks)?, &active.iter().map(|&a| ranks[a]).collect::<Vec<_>>()),
        k => {
            if active.iter().any(|&a| ranks[a] != 2) {
                return Err(Error::UnsupportedShape(ranks));
            }
            let core = compress_all(&drop_inactive(t, &ranks)?)?;
            match tangency_factors(&core) {
                Some(_) => Ok(OrbitId::Tangential(k)),
                None => Err(Error::UnsupportedShape(ranks)),
            }
        }
    }
}

fn matrix_row(ranks: &[usize]) -> Option<u8> {
    match ranks {
        [1, 1, 1] => Some(1),
        [2, 2, 1] => Some(2),
        [1, 2, 2] => Some(3),
        [2, 1, 2] => Some(4),
        [1, 3, 3] => Some(10),
        _ => None,
    }
}

/// Contracts every axis of flattening rank ≤ 1 against a coordinate where
/// it is nonzero.
pub(crate) fn drop_inactive<F: Field>(t: &Tensor<F>, ranks: &[usize]) -> Result<Tensor<F>> {
    let mut cur = t.clone();
    for axis in (0..t.order()).rev() {
        if ranks[axis] >= 2 {
            continue;
        }
        let f = cur.flattening(axis)?;
        let j = (0..f.rows())
            .find(|&i| f.row(i).iter().any(|x| !x.is_zero()))
            .ok_or(Error::ZeroTensor)?;
        let mut w = vec![F::zero(); f.rows()];
        w[j] = F::one();
        cur = cur.contract(axis, &w)?;
    }
    Ok(cur)
}

fn compress_axis<F: Field>(t: &Tensor<F>, axis: usize) -> Result<Tensor<F>> {
    let (_, l) = basis_and_left_inverse(&t.flattening(axis)?);
    if l.rows() == t.shape()[axis] {
        return Ok(t.clone());
    }
    t.apply_axis(axis, &l)
}

fn compress_all<F: Field>(t: &Tensor<F>) -> Result<Tensor<F>> {
    let mut cur = t.clone();
    for axis in 0..t.order() {
        cur = compress_axis(&cur, axis)?;
    }
    Ok(cur)
}

/// Decision tree on a tensor with three non-trivial factors of the given
/// concise dimensions (input order).
fn three_factor<F: Field>(t: &Tensor<F>, dims: &[usize]) -> Result<OrbitId> {
    let mut perm = [0usize, 1, 2];
    perm.sort_by_key(|&i| dims[i]);
    let sorted = [dims[perm[0]], dims[perm[1]], dims[perm[2]]];
    let supported = sorted[0] == 2 && ((sorted[1] == 2 && sorted[2] <= 4) || (sorted[1] == 3 && sorted[2] <= 6));
    if !supported {
        return Err(Error::UnsupportedShape(sorted.to_vec()));
    }
    let tp = compress_axis(&t.permute_axes(&perm), 0)?;
    let p = pencil_of(&tp)?;
    let orbit = match sorted {
        [2, 2, 2] => {
            let h = if tp.shape() == [2, 2, 2] {
                hyperdet222(&tp)?
            } else {
                bform_discriminant(&pencil_minor_gcd(&p, 2))?
            };
            if h.is_zero() {
                5
            } else {
                6
            }
        }
        [2, 2, 3] => {
            let twisted = dims == [2, 3, 2];
            match (nonzero_degree(&pencil_minor_gcd(&p, 2)), twisted) {
                (Some(0), false) => 8,
                (Some(0), true) => 12,
                (_, false) => 7,
                (_, true) => 11,
            }
        }
        [2, 2, 4] => 9,
        [2, 3, 3] => square_233(&p)?,
        [2, 3, 4] => {
            let d3 = pencil_minor_gcd(&p, 3);
            match nonzero_degree(&d3) {
                Some(0) => 23,
                Some(1) => 19,
                Some(2) => {
                    if !bform_discriminant(&d3)?.is_zero() {
                        22
                    } else if nonzero_degree(&pencil_minor_gcd(&p, 2)) == Some(1) {
                        20
                    } else {
                        21
                    }
                }
                _ => return Err(Error::UnsupportedShape(sorted.to_vec())),
            }
        }
        [2, 3, 5] => match nonzero_degree(&pencil_minor_gcd(&p, 3)) {
            Some(1) => 24,
            Some(0) => 25,
            _ => return Err(Error::UnsupportedShape(sorted.to_vec())),
        },
        _ => 26,
    };
    Ok(OrbitId::Orbit(orbit))
}

fn nonzero_degree<F: Field>(f: &crate::binforms::BinaryForm<F>) -> Option<usize> {
    (!f.is_zero_form()).then(|| f.degree())
}

/// Concise 2×3×3: the root pattern of the determinant cubic and the member
/// rank at a repeated root.
fn square_233<F: Field>(p: &Pencil<F>) -> Result<u8> {
    let d3 = pencil_minor_gcd(p, 3);
    if d3.is_zero_form() {
        return Ok(13);
    }
    let g = bform_gcd(&[d3.d_du(), d3.d_dv()])?;
    Ok(match g.degree() {
        0 => 18,
        1 => {
            if p.member_rank_at(&g) == 1 {
                14
            } else {
                17
            }
        }
        _ => {
            let l = repeated_linear_factor(&d3).ok_or_else(|| Error::UnsupportedShape(vec![2, 3, 3]))?;
            if p.member_rank_at(&l) == 1 {
                15
            } else {
                16
            }
        }
    })
}

/// For a concise tensor of shape `(2,…,2)` and order ≥ 3: the factors of the
/// tangency point when the tensor is tangential, `None` otherwise.
///
/// On axis i the contraction with a covector w is rank-one exactly when w
/// annihilates the i-th factor of the tangency point.
pub(crate) fn tangency_factors<F: Field>(t: &Tensor<F>) -> Option<Vec<Vec<F>>> {
    let k = t.order();
    if k < 3 || t.shape().iter().any(|&n| n != 2) {
        return None;
    }
    let mut factors = Vec::with_capacity(k);
    for axis in 0..k {
        let s0 = t.slice(axis, 0).ok()?;
        let s1 = t.slice(axis, 1).ok()?;
        let mut gcds = Vec::new();
        for j in 0..k - 1 {
            let p = Pencil::from_slices(s0.flattening(j).ok()?, s1.flattening(j).ok()?);
            let g = pencil_minor_gcd(&p, 2);
            if g.is_zero_form() {
                return None;
            }
            gcds.push(g);
        }
        let g = bform_gcd(&gcds).ok()?;
        let l = match g.degree() {
            0 => return None,
            1 => g,
            _ => repeated_linear_factor(&g)?,
        };
        let (u0, v0) = l.linear_root();
        factors.push(vec![-v0, u0]);
    }
    // Coordinates with the tangency point first: only e₁^k and the entries
    // with a single e₂ may be nonzero, and the latter must all be.
    let mut inverses = Vec::with_capacity(k);
    for f in &factors {
        let other = if f[1].is_zero() { vec![F::zero(), F::one()] } else { vec![F::one(), F::zero()] };
        let m = Mat::from_rows(vec![vec![f[0].clone(), other[0].clone()], vec![f[1].clone(), other[1].clone()]]);
        inverses.push(m.inverse().ok()?);
    }
    let s = t.multilinear(&inverses).ok()?;
    for idx in multi_indices(s.shape()) {
        let ones = idx.iter().filter(|&&i| i == 1).count();
        let zero = s.get(&idx).is_zero();
        if (ones >= 2 && !zero) || (ones == 1 && zero) {
            return None;
        }
    }
    Some(factors)
}

/// A quantity computable from a tensor over any exact field.
pub(crate) trait TensorInvariant {
    type Out: Clone + PartialEq;
    fn eval<F: Field>(&self, t: &Tensor<F>) -> Result<Self::Out>;
}

struct OrbitOf;

impl TensorInvariant for OrbitOf {
    type Out = OrbitId;
    fn eval<F: Field>(&self, t: &Tensor<F>) -> Result<OrbitId> {
        match orbit_id(t) {
            Err(Error::ZeroTensor) => Ok(OrbitId::MatrixRank(0)),
            r => r,
        }
    }
}

/// Value of an invariant of `T − λP` at generic λ, and at the roots of each
/// component of a coprime basis covering every λ where the generic
/// computation branched differently. The basis always contains `λ`.
pub(crate) fn specializations<I: TensorInvariant>(f: &ParametricTensor, inv: &I) -> Result<(I::Out, Vec<(Poly<Q>, I::Out)>)> {
    let rec = Recorder::new();
    let generic = inv.eval(&f.over_function_field(Some(&rec)))?;
    let mut candidates = rec.polys();
    candidates.push(Poly::x());
    let comps = classify_components(f, coprime_basis(&candidates), inv)?;
    Ok((generic, comps))
}

/// Classifies `T − λP` for indeterminate λ.
pub fn classify_parametric(f: &ParametricTensor) -> Result<ParametricReport> {
    if f.base.is_zero_tensor() {
        return Err(Error::ZeroTensor);
    }
    let (generic, comps) = specializations(f, &OrbitOf)?;
    let mut exceptional = Vec::new();
    for (g, orbit) in comps {
        if orbit == generic && !g.is_x() {
            continue;
        }
        match upoly_factor_small(&g) {
            Ok(parts) => exceptional.extend(parts.into_iter().map(|(h, _)| (h, orbit))),
            Err(_) => exceptional.push((g, orbit)),
        }
    }
    exceptional.sort_by(|a, b| {
        let da = a.0.degree().unwrap_or(0);
        let db = b.0.degree().unwrap_or(0);
        da.cmp(&db).then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(ParametricReport { generic, exceptional })
}

/// Invariant at the roots of each squarefree component, splitting a
/// component whenever a zero divisor turns up.
pub(crate) fn classify_components<I: TensorInvariant>(
    f: &ParametricTensor,
    basis: Vec<Poly<Q>>,
    inv: &I,
) -> Result<Vec<(Poly<Q>, I::Out)>> {
    let mut work = basis;
    let mut out = Vec::new();
    while let Some(g) = work.pop() {
        let r = if g.degree() == Some(1) {
            let root = -g.coeff(0) / g.coeff(1);
            inv.eval(&f.at(&root))?
        } else {
            let m = Modulus::squarefree(&g);
            let r = inv.eval(&f.over_extension(&m));
            if let Some(h) = m.found_split() {
                let rest = g.div_exact(&h).expect("split divides the modulus");
                work.push(h.monic());
                work.push(rest.monic());
                continue;
            }
            r?
        };
        out.push((g, r));
    }
    Ok(out)
}

fn squarefree_part(p: &Poly<Q>) -> Poly<Q> {
    let g = p.gcd(&p.derivative());
    if g.is_constant() {
        p.monic()
    } else {
        p.div_exact(&g).expect("gcd divides").monic()
    }
}

/// Monic, squarefree, pairwise coprime polynomials with the same roots as
/// the input.
pub(crate) fn coprime_basis(polys: &[Poly<Q>]) -> Vec<Poly<Q>> {
    let mut basis: Vec<Poly<Q>> = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        let mut stack = vec![squarefree_part(p)];
        while let Some(a) = stack.pop() {
            if a.is_constant() {
                continue;
            }
            let hit = basis.iter().position(|b| !a.gcd(b).is_constant());
            match hit {
                None => basis.push(a),
                Some(i) => {
                    let b = basis.swap_remove(i);
                    let g = a.gcd(&b);
                    let b_rest = b.div_exact(&g).expect("gcd divides").monic();
                    let a_rest = a.div_exact(&g).expect("gcd divides").monic();
                    basis.push(g.monic());
                    if !b_rest.is_constant() {
                        basis.push(b_rest);
                    }
                    stack.push(a_rest);
                }
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;
    use crate::normal_forms::{normal_form, w_state};
    use crate::tensorcore::{apply_gl, RankOneTensor};

    fn e(n: usize, i: usize) -> Vec<Q> {
        crate::tensorcore::basis_vector(n, i)
    }

    fn mat(rows: &[&[i64]]) -> Mat<Q> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn all_normal_forms() {
        for n in 1..=26u8 {
            let r = classify(&normal_form(n)).unwrap();
            assert_eq!(r.orbit, OrbitId::Orbit(n), "orbit {n}");
            assert_eq!((r.border_rank, r.rank), rank_pair(n));
        }
        let r5 = classify(&normal_form(5)).unwrap();
        assert_eq!((r5.rank, r5.border_rank), (3, 2));
        assert!(classify(&normal_form(3)).unwrap().matrix_case);
    }

    #[test]
    fn gl_move_of_t17() {
        let a = mat(&[&[2, 1], &[1, 1]]);
        let b = mat(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let c = mat(&[&[1, 0, 1], &[2, 1, 0], &[0, -1, 1]]);
        let t = apply_gl(&normal_form(17), &[a, b, c]).unwrap();
        let r = classify(&t).unwrap();
        assert_eq!((r.orbit, r.rank, r.border_rank), (OrbitId::Orbit(17), 4, 3));
    }

    #[test]
    fn permuted_presentations() {
        let t7 = normal_form(7).permute_axes(&[0, 2, 1]);
        assert_eq!(classify(&t7).unwrap().orbit, OrbitId::Orbit(11));
        let t14 = normal_form(14).permute_axes(&[2, 0, 1]);
        assert_eq!(classify(&t14).unwrap().orbit, OrbitId::Orbit(14));
        assert_eq!(classify(&t14).unwrap().permutation, vec![1, 0, 2]);
    }

    #[test]
    fn tangential_and_matrices() {
        for k in 4..=5 {
            assert_eq!(classify(&w_state(k)).unwrap().orbit, OrbitId::Tangential(k));
        }
        assert_eq!(classify(&w_state(3)).unwrap().orbit, OrbitId::Orbit(5));
        let ghz = Tensor::from_entries(&[2, 2, 2, 2], &[(vec![0; 4], q(1)), (vec![1; 4], q(1))]);
        assert!(matches!(classify(&ghz), Err(Error::UnsupportedShape(_))));
        let m = Tensor::from_matrix(&mat(&[&[1, 2], &[2, 4], &[0, 1]]));
        assert_eq!(classify(&m).unwrap().orbit, OrbitId::MatrixRank(2));
        assert!(matches!(classify(&Tensor::<Q>::zeros(&[2, 2])), Err(Error::ZeroTensor)));
        let big = Tensor::from_entries(&[3, 3, 3], &[(vec![0, 0, 0], q(1)), (vec![1, 1, 1], q(1)), (vec![2, 2, 2], q(1))]);
        assert!(matches!(classify(&big), Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn parametric_examples() {
        let p111 = RankOneTensor::new(vec![e(2, 0), e(2, 0), e(2, 0)]).unwrap();
        let r = classify_parametric(&ParametricTensor::new(w_state(3), p111).unwrap()).unwrap();
        assert_eq!(r.generic, OrbitId::Orbit(5));
        assert_eq!(r.exceptional, vec![(Poly::x(), OrbitId::Orbit(5))]);

        let p222 = RankOneTensor::new(vec![e(2, 1), e(2, 1), e(2, 1)]).unwrap();
        let r = classify_parametric(&ParametricTensor::new(w_state(3), p222).unwrap()).unwrap();
        // the rank already drops for every λ ≠ 0
        assert_eq!(r.generic, OrbitId::Orbit(6));
        assert_eq!(r.exceptional, vec![(Poly::x(), OrbitId::Orbit(5))]);

        // pairing with the dual of T₉ equals s = 2
        let p = RankOneTensor::new(vec![vec![q(1), q(1)], e(2, 0), vec![q(1), q(1), q(0), q(0)]]).unwrap();
        let r = classify_parametric(&ParametricTensor::new(normal_form(9), p).unwrap()).unwrap();
        assert_eq!(r.generic, OrbitId::Orbit(9));
        let hit = r.exceptional.iter().find(|(f, _)| *f == Poly::new(vec![q(-1), q(2)]).monic()).unwrap();
        assert!(hit.1.border_rank() <= 3);
    }

    #[test]
    fn coprime_basis_refines() {
        let a = Poly::from_ints(&[0, -1, 0, 1]); // x³ − x
        let b = Poly::from_ints(&[-1, 0, 1]); // x² − 1
        let mut basis = coprime_basis(&[a, b, Poly::x()]);
        basis.sort_by(|p, q| p.coeffs().cmp(q.coeffs()));
        assert_eq!(basis.len(), 2);
        assert!(basis.contains(&Poly::x()));
        assert!(basis.contains(&Poly::from_ints(&[-1, 0, 1])));
    }
}
