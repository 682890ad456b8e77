//! Decomposition loci. A rank-one `P` lies in the decomposition locus of `T`
//! when `rank(T − λP) = rank(T) − 1` for some λ; otherwise it is forbidden.
//!
//! Two independent strategies answer the question: the generic one reads
//! the rank drop off the classification of `T − λP` over ℚ(λ); the
//! specialized one runs a per-orbit procedure. `closed_form_predicate`
//! evaluates published set descriptions in normal-form coordinates.

use num_traits::Zero;

use crate::binforms::{bform_discriminant, bform_gcd};
use crate::classify::{classify_parametric, orbit_id, specializations, OrbitId, TensorInvariant};
use crate::error::{Error, Result};
use crate::exactnum::{q, upoly_factor_small, Field, Poly, Q};
use crate::linalg::{pseudoinverse, Mat};
use crate::normal_forms::{normal_form, normal_form_shape};
use crate::pencil::{hyperdet233, pencil_minor_gcd, pencil_of};
use crate::tensorcore::{concise_reduce, dual_pairing, subtract_scaled, ParametricTensor, RankOneTensor, Tensor};
use crate::wstate::{decompose_tangential, find_tangency};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocusStatus {
    InDecomposition,
    Forbidden,
}

/// A value of λ at which the rank drops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaWitness {
    Value(Q),
    /// Irreducible, not `λ`; every root works.
    MinimalPoly(Poly<Q>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusVerdict {
    pub status: LocusStatus,
    /// Present exactly when the status is `InDecomposition`.
    pub witness: Option<LambdaWitness>,
}

impl LocusVerdict {
    pub fn forbidden() -> Self {
        LocusVerdict { status: LocusStatus::Forbidden, witness: None }
    }

    pub fn at(lam: Q) -> Self {
        LocusVerdict { status: LocusStatus::InDecomposition, witness: Some(LambdaWitness::Value(lam)) }
    }

    /// Witness at the roots of a polynomial, made rational when linear and
    /// reduced to one irreducible factor otherwise.
    fn at_roots_of(f: &Poly<Q>) -> Self {
        let g = match upoly_factor_small(f) {
            Ok(parts) => parts.into_iter().map(|(h, _)| h).find(|h| !h.is_x()).unwrap_or_else(|| f.clone()),
            Err(_) => f.clone(),
        };
        if g.degree() == Some(1) {
            return LocusVerdict::at(-g.coeff(0) / g.coeff(1));
        }
        LocusVerdict { status: LocusStatus::InDecomposition, witness: Some(LambdaWitness::MinimalPoly(g.monic())) }
    }

    pub fn is_forbidden(&self) -> bool {
        self.status == LocusStatus::Forbidden
    }

    /// The witness when it is rational.
    pub fn rational_witness(&self) -> Option<&Q> {
        match &self.witness {
            Some(LambdaWitness::Value(x)) => Some(x),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Generic,
    Specialized,
}

/// `A − λ·u⊗v` drops rank for some λ exactly when `u`, `v` lie in the column
/// and row spaces of `A` and `vᵀA⁺u ≠ 0`; then `λ₀ = 1/(vᵀA⁺u)`.
pub fn locus_matrix(a: &Mat<Q>, u: &[Q], v: &[Q]) -> Result<LocusVerdict> {
    if u.len() != a.rows() || v.len() != a.cols() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix with vectors of length {} and {}",
            a.rows(),
            a.cols(),
            u.len(),
            v.len()
        )));
    }
    if a.is_zero_matrix() || u.iter().all(Zero::is_zero) || v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroTensor);
    }
    let pinv = pseudoinverse(a);
    let in_cols = a.mul_vec(&pinv.mul_vec(u)) == u;
    let in_rows = pinv.mul(a).mul_vec(v) == v;
    if !in_cols || !in_rows {
        return Ok(LocusVerdict::forbidden());
    }
    let s = dot(v, &pinv.mul_vec(u));
    if s.is_zero() {
        Ok(LocusVerdict::forbidden())
    } else {
        Ok(LocusVerdict::at(s.recip()))
    }
}

/// Tangential tensors: every rank-one tensor except the tangency point is in
/// the decomposition locus. The witness comes from an explicit decomposition
/// through `P`.
pub fn locus_tangential(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<LocusVerdict> {
    check_shapes(t, p)?;
    let tangency = find_tangency(t)?;
    let c = concise_reduce(t)?;
    for (i, v) in p.factors.iter().enumerate() {
        let w = c.projections[i].mul_vec(v);
        if c.bases[i].mul_vec(&w) != *v {
            return Ok(LocusVerdict::forbidden());
        }
    }
    if proportional_rank_one(&tangency.rank_one(), p) {
        return Ok(LocusVerdict::forbidden());
    }
    let d = decompose_tangential(t, p)?;
    let (coef, term) = &d.terms[0];
    let te = term.expand();
    let pe = p.expand();
    let j = pe.data().iter().position(|x| !x.is_zero()).expect("nonzero rank-one tensor");
    Ok(LocusVerdict::at(coef.clone() * &te.data()[j] / &pe.data()[j]))
}

/// Membership in the decomposition locus by the chosen strategy.
pub fn locus_membership(t: &Tensor<Q>, p: &RankOneTensor<Q>, strategy: Strategy) -> Result<LocusVerdict> {
    check_shapes(t, p)?;
    orbit_id(t)?;
    match strategy {
        Strategy::Generic => generic_path(t, p),
        Strategy::Specialized => specialized_path(t, p),
    }
}

fn check_shapes(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<()> {
    if t.shape() != p.shape().as_slice() {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", t.shape(), p.shape())));
    }
    if p.factors.iter().any(|f| f.iter().all(Zero::is_zero)) {
        return Err(Error::ZeroTensor);
    }
    Ok(())
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(q(0), |acc, (x, y)| acc + x * y)
}

fn proportional_rank_one(a: &RankOneTensor<Q>, b: &RankOneTensor<Q>) -> bool {
    let (ea, eb) = (a.expand(), b.expand());
    let Some(j) = ea.data().iter().position(|x| !x.is_zero()) else { return false };
    let r = &eb.data()[j] / &ea.data()[j];
    ea.scale(&r) == eb
}

/// 1, −1, 2, −2, …
fn small_rationals() -> impl Iterator<Item = Q> {
    (1..).flat_map(|n: i64| [q(n), q(-n)])
}

/// A nonzero rational that is a root of none of the polynomials.
fn rational_avoiding(polys: &[Poly<Q>]) -> Q {
    small_rationals().find(|x| polys.iter().all(|f| !f.eval(x).is_zero())).expect("finitely many roots")
}

fn generic_path(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<LocusVerdict> {
    if matches!(reduce_to_core(t, p)?, Reduced::Outside) {
        return Ok(LocusVerdict::forbidden());
    }
    let r = orbit_id(t)?.rank();
    let report = classify_parametric(&ParametricTensor::new(t.clone(), p.clone())?)?;
    if let Some((g, _)) = report.exceptional.iter().find(|(g, o)| !g.is_x() && o.rank() + 1 == r) {
        return Ok(LocusVerdict::at_roots_of(g));
    }
    if report.generic.rank() + 1 == r {
        let roots: Vec<Poly<Q>> = report.exceptional.iter().map(|(g, _)| g.clone()).collect();
        return Ok(LocusVerdict::at(rational_avoiding(&roots)));
    }
    Ok(LocusVerdict::forbidden())
}

enum Reduced {
    /// Some factor of `P` leaves the concise space of `T`.
    Outside,
    /// `T` and `P` are multiples `(t, p)` of the same rank-one tensor.
    Scalar(Q, Q),
    /// Concise coordinates with trivial axes removed, axes sorted by size.
    Core(Tensor<Q>, RankOneTensor<Q>),
}

fn reduce_to_core(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<Reduced> {
    let c = concise_reduce(t)?;
    let mut factors = Vec::with_capacity(t.order());
    for (i, v) in p.factors.iter().enumerate() {
        let w = c.projections[i].mul_vec(v);
        if c.bases[i].mul_vec(&w) != *v {
            return Ok(Reduced::Outside);
        }
        factors.push(w);
    }
    let dims = c.tensor.shape().to_vec();
    let mut core = c.tensor.clone();
    let mut scale = q(1);
    for axis in (0..dims.len()).rev() {
        if dims[axis] == 1 {
            core = core.contract(axis, &[q(1)])?;
            scale *= &factors[axis][0];
        }
    }
    let active: Vec<usize> = (0..dims.len()).filter(|&i| dims[i] >= 2).collect();
    if active.is_empty() {
        return Ok(Reduced::Scalar(c.tensor.data()[0].clone(), scale));
    }
    let mut perm: Vec<usize> = (0..active.len()).collect();
    perm.sort_by_key(|&i| dims[active[i]]);
    let core = core.permute_axes(&perm);
    let mut pf: Vec<Vec<Q>> = perm.iter().map(|&i| factors[active[i]].clone()).collect();
    pf[0] = pf[0].iter().map(|x| x * &scale).collect();
    Ok(Reduced::Core(core, RankOneTensor { factors: pf }))
}

/// The unique λ at which flattening `axis` of `T − λP` loses rank, for `T`
/// concise. With `M = flatt(T)` and `flatt(P) = x yᵀ`, this happens iff
/// `y = Mᵀz` with `zᵀx ≠ 0`, at `λ = 1/(zᵀx)`.
fn rank_drop_lambda(t: &Tensor<Q>, p: &RankOneTensor<Q>, axis: usize) -> Result<Option<Q>> {
    let m = t.flattening(axis)?;
    let pe = p.expand().flattening(axis)?;
    let x = &p.factors[axis];
    let j = x.iter().position(|c| !c.is_zero()).expect("nonzero factor");
    let y: Vec<Q> = pe.row(j).iter().map(|c| c / &x[j]).collect();
    let Some(z) = m.transpose().solve(&y) else { return Ok(None) };
    let s = dot(&z, x);
    Ok((!s.is_zero()).then(|| s.recip()))
}

fn first_rank_drop(t: &Tensor<Q>, p: &RankOneTensor<Q>, axes: &[usize]) -> Result<Option<Q>> {
    for &a in axes {
        if let Some(l) = rank_drop_lambda(t, p, a)? {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

fn specialized_path(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<LocusVerdict> {
    let (ct, cp) = match reduce_to_core(t, p)? {
        Reduced::Outside => return Ok(LocusVerdict::forbidden()),
        Reduced::Scalar(tv, pv) => return Ok(LocusVerdict::at(tv / pv)),
        Reduced::Core(ct, cp) => (ct, cp),
    };
    if ct.order() == 2 {
        return locus_matrix(&ct.as_matrix()?, &cp.factors[0], &cp.factors[1]);
    }
    let orbit = orbit_id(&ct)?;
    match orbit {
        OrbitId::Orbit(5) | OrbitId::Tangential(_) => locus_tangential(&ct, &cp),
        OrbitId::Orbit(6 | 14 | 18) => drop_through_flattening(&ct, &cp, orbit.rank()),
        OrbitId::Orbit(7 | 8 | 11 | 12) => generic_path(&ct, &cp),
        OrbitId::Orbit(9 | 26) => Ok(match first_rank_drop(&ct, &cp, &[0, 1, 2])? {
            Some(l) => LocusVerdict::at(l),
            None => LocusVerdict::forbidden(),
        }),
        OrbitId::Orbit(13 | 15 | 16 | 17) => rank_four_233(&ct, &cp),
        OrbitId::Orbit(19 | 20 | 22 | 23) => rank_four_234(&ct, &cp),
        OrbitId::Orbit(21) => rank_five_234(&ct, &cp),
        OrbitId::Orbit(24 | 25) => concise_235(&ct, &cp),
        _ => Err(Error::UnsupportedShape(ct.shape().to_vec())),
    }
}

/// Identifiable orbits: a lower rank forces a flattening to drop, so the
/// only candidates are the per-axis rank-drop values.
fn drop_through_flattening(t: &Tensor<Q>, p: &RankOneTensor<Q>, r: usize) -> Result<LocusVerdict> {
    for axis in 0..t.order() {
        if let Some(l) = rank_drop_lambda(t, p, axis)? {
            let s = subtract_scaled(t, &l, p)?;
            if !s.is_zero_tensor() && orbit_id(&s)?.rank() + 1 == r {
                return Ok(LocusVerdict::at(l));
            }
        }
    }
    Ok(LocusVerdict::forbidden())
}

/// Concise 2×3×3 pencil whose determinant cubic has a double and a simple
/// root and which contains a rank-one member.
struct RankThreeInDual;

impl TensorInvariant for RankThreeInDual {
    type Out = bool;
    fn eval<F: Field>(&self, t: &Tensor<F>) -> Result<bool> {
        let p = pencil_of(t)?;
        let d3 = pencil_minor_gcd(&p, 3);
        if d3.is_zero_form() {
            return Ok(false);
        }
        let g = bform_gcd(&[d3.d_du(), d3.d_dv()])?;
        if g.degree() != 1 {
            return Ok(false);
        }
        let d2 = pencil_minor_gcd(&p, 2);
        Ok(!d2.is_zero_form() && d2.degree() >= 1)
    }
}

/// Concise 2×3×4 pencil whose maximal minors meet in a double point and
/// whose 2×2 minors have no common root.
struct RankFiveJet;

impl TensorInvariant for RankFiveJet {
    type Out = bool;
    fn eval<F: Field>(&self, t: &Tensor<F>) -> Result<bool> {
        let p = pencil_of(t)?;
        let d3 = pencil_minor_gcd(&p, 3);
        if d3.is_zero_form() || d3.degree() != 2 || !bform_discriminant(&d3)?.is_zero() {
            return Ok(false);
        }
        let d2 = pencil_minor_gcd(&p, 2);
        Ok(!d2.is_zero_form() && d2.degree() == 0)
    }
}

/// Searches the specializations of `T − λP` for a λ ≠ 0 where `wanted`
/// holds for the invariant.
fn search_specializations<I: TensorInvariant<Out = bool>>(
    t: &Tensor<Q>,
    p: &RankOneTensor<Q>,
    inv: &I,
    wanted: bool,
) -> Result<LocusVerdict> {
    let f = ParametricTensor::new(t.clone(), p.clone())?;
    let (generic, comps) = specializations(&f, inv)?;
    if generic == wanted {
        let roots: Vec<Poly<Q>> = comps.iter().filter(|(_, v)| *v != wanted).map(|(g, _)| g.clone()).collect();
        let mut avoid = roots;
        avoid.push(Poly::x());
        return Ok(LocusVerdict::at(rational_avoiding(&avoid)));
    }
    if let Some((g, _)) = comps.iter().find(|(g, v)| *v == wanted && !g.is_x()) {
        return Ok(LocusVerdict::at_roots_of(g));
    }
    Ok(LocusVerdict::forbidden())
}

/// Rank-4 tensors of 2×3×3: rank 3 is reached off the concise locus, off the
/// dual variety, or on the rank-3 orbit inside it.
fn rank_four_233(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<LocusVerdict> {
    if let Some(l) = first_rank_drop(t, p, &[0, 1, 2])? {
        return Ok(LocusVerdict::at(l));
    }
    let f = ParametricTensor::new(t.clone(), p.clone())?;
    let h = hyperdet233(&f.over_function_field(None))?;
    if !h.is_zero() {
        let l = small_rationals()
            .find(|x| h.eval(x).is_some_and(|v| !v.is_zero()))
            .expect("nonzero rational function");
        return Ok(LocusVerdict::at(l));
    }
    search_specializations(t, p, &RankThreeInDual, true)
}

/// Rank-4 tensors of 2×3×4: the third flattening has to drop, and the
/// result must have rank 3.
fn rank_four_234(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<LocusVerdict> {
    if let Some(l) = rank_drop_lambda(t, p, 0)? {
        return Ok(LocusVerdict::at(l));
    }
    let Some(l3) = rank_drop_lambda(t, p, 2)? else {
        return Ok(LocusVerdict::forbidden());
    };
    if rank_drop_lambda(t, p, 1)? == Some(l3.clone()) {
        return Ok(LocusVerdict::at(l3));
    }
    let s = concise_reduce(&subtract_scaled(t, &l3, p)?)?.tensor;
    if !hyperdet233(&s)?.is_zero() || RankThreeInDual.eval(&s)? {
        return Ok(LocusVerdict::at(l3));
    }
    Ok(LocusVerdict::forbidden())
}

/// The rank-5 orbit of 2×3×4: forbidden iff `T − λP` stays concise with a
/// double point of maximal-minor degeneracy at a rank-2 member, for all λ.
fn rank_five_234(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<LocusVerdict> {
    if let Some(l) = first_rank_drop(t, p, &[0, 1, 2])? {
        return Ok(LocusVerdict::at(l));
    }
    search_specializations(t, p, &RankFiveJet, false)
}

/// Concise 2×3×5: rank drops on the first two flattenings, or on the third
/// when the result leaves the rank-5 orbit of 2×3×4.
fn concise_235(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> Result<LocusVerdict> {
    if let Some(l) = first_rank_drop(t, p, &[0, 1])? {
        return Ok(LocusVerdict::at(l));
    }
    if let Some(l) = rank_drop_lambda(t, p, 2)? {
        let s = concise_reduce(&subtract_scaled(t, &l, p)?)?.tensor;
        if !RankFiveJet.eval(&s)? {
            return Ok(LocusVerdict::at(l));
        }
    }
    Ok(LocusVerdict::forbidden())
}

/// Published description of the forbidden locus of the normal form of
/// `orbit`, evaluated at `P = a⊗b⊗c` given in the normal form's own
/// coordinates. Returns true when `P` is forbidden.
pub fn closed_form_predicate(orbit: OrbitId, p: &RankOneTensor<Q>) -> Result<bool> {
    let n = match orbit {
        OrbitId::Orbit(n @ (9 | 13 | 15 | 16 | 17 | 19 | 20 | 21 | 22 | 23 | 24 | 25 | 26)) => n,
        other => return Err(Error::UnsupportedOrbit(other.to_string())),
    };
    if p.shape() != normal_form_shape(n) {
        return Err(Error::ShapeMismatch(format!("{:?} vs {:?}", p.shape(), normal_form_shape(n))));
    }
    let pairing = dual_pairing(&normal_form(n), p)?;
    let v = Coords::new(p, pairing);
    Ok(match n {
        9 | 26 => v.pair_zero(),
        13 => closed_forms::forbidden_13(&v),
        15 => closed_forms::forbidden_15(&v),
        16 => closed_forms::forbidden_16(&v),
        17 => closed_forms::forbidden_17(&v),
        19 => !closed_forms::decomposition_19(&v),
        20 => !closed_forms::decomposition_20(&v),
        21 => closed_forms::forbidden_21(&v),
        22 => !closed_forms::decomposition_22(&v),
        23 => !closed_forms::decomposition_23(&v),
        24 => closed_forms::forbidden_24(&v),
        _ => closed_forms::forbidden_25(&v),
    })
}

/// Coordinates of `a⊗b⊗c`, 1-based accessors matching the usual notation.
struct Coords {
    a: Vec<Q>,
    b: Vec<Q>,
    c: Vec<Q>,
    pairing: Q,
}

impl Coords {
    fn new(p: &RankOneTensor<Q>, pairing: Q) -> Self {
        Coords { a: p.factors[0].clone(), b: p.factors[1].clone(), c: p.factors[2].clone(), pairing }
    }
    fn a(&self, i: usize) -> Q {
        self.a[i - 1].clone()
    }
    fn b(&self, i: usize) -> Q {
        self.b[i - 1].clone()
    }
    fn c(&self, i: usize) -> Q {
        self.c[i - 1].clone()
    }
    fn pair_zero(&self) -> bool {
        self.pairing.is_zero()
    }
}

/// `Z(f₁,…,f_k)`: all values vanish.
fn z(vals: &[Q]) -> bool {
    vals.iter().all(Zero::is_zero)
}

mod closed_forms {
    use super::{z, Coords};
    use crate::exactnum::{q, Q};

    pub(super) fn forbidden_13(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let (b2, b3) = (v.b(2), v.b(3));
        let (c1, c2) = (v.c(1), v.c(2));
        let f1 = &a1 * &c1 + &a2 * &c2;
        let f2 = &a1 * &b2 + &a2 * &b3;
        let f3 = &b3 * &c1 - &b2 * &c2;
        let first = (z(&[f1.clone()]) || z(&[f2.clone()])) && !(z(&[b2, b3]) || z(&[c1, c2]));
        let second = (z(&[f3]) || z(&[f1]) || z(&[f2])) && v.pair_zero();
        first || second
    }

    pub(super) fn forbidden_15(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let (b1, b2, b3) = (v.b(1), v.b(2), v.b(3));
        let (c1, c2, c3) = (v.c(1), v.c(2), v.c(3));
        let h = &a2 * &b2 * &c1;
        let inner = (z(&[h.clone()])
            && !(z(&[b2.clone(), b3.clone(), c1.clone(), c3.clone()]) || z(&[a2.clone(), &b2 * &c1])))
            || (z(&[h]) && v.pair_zero());
        let removed = (z(&[a2.clone()]) && !z(&[&a1 * &b2 * &c1]))
            || (z(&[b2.clone(), b3]) && !z(&[&a2 * &b1 * &c1]))
            || (z(&[c1, c3]) && !z(&[&a2 * &b2 * &c2]));
        inner && !removed
    }

    pub(super) fn forbidden_16(v: &Coords) -> bool {
        let a2 = v.a(2);
        let (b1, b2, b3) = (v.b(1), v.b(2), v.b(3));
        let (c1, c2, c3) = (v.c(1), v.c(2), v.c(3));
        let base = z(&[&b3 * &c1, &a2 * &b3 * &c2, &a2 * &b2 * &c1]);
        let inner = (base && !(z(&[a2.clone(), b2.clone(), b3.clone()]) || z(&[a2.clone(), c1.clone(), c2.clone()])))
            || (base && v.pair_zero());
        // A rank-one member together with a det form that is not a cube
        // needs both values nonzero.
        let removed = z(&[b3, c1]) && !z(&[&a2 * &b1 * &c2 + &a2 * &b2 * &c3]) && !z(&[&a2 * &b2 * &c2]);
        inner && !removed
    }

    /// Follows the derivation, which shows the restricted inclusion is an
    /// equality; the displayed final statement omits the restriction.
    pub(super) fn forbidden_17(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let (b1, b2, b3) = (v.b(1), v.b(2), v.b(3));
        let (c1, c2, c3) = (v.c(1), v.c(2), v.c(3));
        let base = z(&[&b2 * &c1, &a2 * &b2 * &c2, &a2 * &b1 * &c1]);
        let reaches_rank_three =
            z(&[b2.clone(), c1.clone()]) && !z(&[&a2 * &b1 * &c2 + &a2 * &b3 * &c3]) && !z(&[&a2 * &b1 * &c2]);
        let excluded = z(&[a1.clone(), b1, b2.clone()])
            || z(&[a2.clone(), b2, b3])
            || z(&[a1, c1.clone(), c2])
            || z(&[a2, c1, c3]);
        ((base && !excluded) || (base && v.pair_zero())) && !reaches_rank_three
    }

    pub(super) fn decomposition_19(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let (b1, b2, b3) = (v.b(1), v.b(2), v.b(3));
        let (c1, c2, c3, c4) = (v.c(1), v.c(2), v.c(3), v.c(4));
        let drop = &a1 * &b1 * &c1 + &a1 * &b2 * &c2 + &a2 * &b2 * &c3 + &a1 * &b3 * &c4;
        let base = z(&[&b2 * &b3, &a2 * &b3, &a2 * &b1 - &a1 * &b2]) && !z(&[drop]);
        let disc = &c1 * &(q(4) * &c1 * &c3 - &c2 * &c2);
        let jet = z(&[disc]) && !(z(&[b3, c1.clone(), c4]) && !z(&[c2.clone()]));
        (base && !jet) || (base && z(&[a2, c1, c2, c3]))
    }

    pub(super) fn decomposition_20(v: &Coords) -> bool {
        let a2 = v.a(2);
        let (b1, b2, b3) = (v.b(1), v.b(2), v.b(3));
        let (c1, c2, c3, c4) = (v.c(1), v.c(2), v.c(3), v.c(4));
        let first = z(&[b3.clone(), b2.clone(), c1.clone(), c3, c4]) && !z(&[&a2 * &b1 * &c2]);
        let base = z(&[&a2 * &b3, &a2 * &b2]) && !v.pair_zero();
        first || (base && !z(&[c1.clone()])) || (base && z(&[a2, c1, c2]))
    }

    pub(super) fn forbidden_21(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let (b1, b2, b3) = (v.b(1), v.b(2), v.b(3));
        let (c1, c2, c3) = (v.c(1), v.c(2), v.c(3));
        let alpha = &a1 * &b1 * &c1 * &c1 + &a2 * &b1 * &c1 * &c2 + &a1 * &b2 * &c1 * &c3 + &a2 * &b2 * &c2 * &c3;
        let on = z(&[b3.clone()]) && z(&[alpha]);
        let part1 = on
            && !z(&[c1.clone()])
            && (z(&[b1.clone(), b2.clone()])
                || z(&[b2.clone(), &a1 * &c1 + &a2 * &c2])
                || z(&[a2.clone(), &b1 * &c1 + &b2 * &c3]));
        let part2 = on
            && z(&[c1.clone()])
            && (z(&[b2.clone(), &a2 * &b1 * &c2])
                || z(&[a2.clone(), &a1 * &b2 * &c3])
                || z(&[c3.clone(), &a2 * &b1 * &c2 + &a2 * &b2 * &v.c(4)]));
        let part3 = z(&[a2]) && !z(&[b3]) && z(&[c1, c3]) && !z(&[c2]);
        part1 || part2 || part3
    }

    pub(super) fn decomposition_22(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let (b2, b3) = (v.b(2), v.b(3));
        let (c1, c2, c3, c4) = (v.c(1), v.c(2), v.c(3), v.c(4));
        let base = z(&[&b2 * &b3, &a1 * &b3, &a2 * &b2]) && !v.pair_zero();
        let special = z(&[c2.clone(), c1.clone(), &c3 * &c4, &a1 * &c4, &a2 * &c3, &a1 * &a2]);
        // With one of c₁, c₂ zero the det form has a double root; the
        // member there has rank one exactly on these sets.
        let double_root_rank_one = (z(&[c1.clone(), b2, c3]) && !z(&[c2.clone()]))
            || (z(&[c2.clone(), b3, c4]) && !z(&[c1.clone()]));
        (base && !z(&[&c1 * &c2])) || (base && special) || (base && double_root_rank_one)
    }

    pub(super) fn decomposition_23(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let (b1, b2, b3) = (v.b(1), v.b(2), v.b(3));
        let (c1, c2, c3, c4) = (v.c(1), v.c(2), v.c(3), v.c(4));
        let drop = &a1 * &b1 * &c1 + &a1 * &b2 * &c2 + &a1 * &b3 * &c3 + &a2 * &b3 * &c4;
        let base = z(&[&b2 * &b2 - &b1 * &b3, &a2 * &b2 - &a1 * &b3, &a2 * &b1 - &a1 * &b2]) && !z(&[drop]);
        base && !z(&[cubic_discriminant(&c1, &c2, &c3, &c4)])
    }

    pub(super) fn forbidden_24(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let b3 = v.b(3);
        let (c1, c2, c3, c4, c5) = (v.c(1), v.c(2), v.c(3), v.c(4), v.c(5));
        let first = z(&[a2.clone(), c1.clone(), c2, c3.clone(), c4]) && !z(&[&a1 * &b3 * &c5]);
        // The third flattening drops; the result is the rank-5 orbit of
        // 2×3×4 exactly on Z(c₁, c₃) ∖ Z(c₅).
        let second = z(&[&a2 * &b3]) && !v.pair_zero() && !(z(&[c1, c3]) && !z(&[c5.clone()]));
        !(first || second)
    }

    pub(super) fn forbidden_25(v: &Coords) -> bool {
        let (a1, a2) = (v.a(1), v.a(2));
        let (b1, b2, b3) = (v.b(1), v.b(2), v.b(3));
        let (c1, c2, c3, c4, c5) = (v.c(1), v.c(2), v.c(3), v.c(4), v.c(5));
        let drop = &a1 * &b1 * &c1 + &a1 * &b2 * &c2 + &a2 * &b2 * &c3 + &a1 * &b3 * &c4 + &a2 * &b3 * &c5;
        let inner = z(&[&a2 * &b1 - &a1 * &b2]) && !z(&[drop]);
        let jet = z(&[c4, c5, &c2 * &c2 - q(4) * &c1 * &c3]);
        !(inner && !jet)
    }

    /// `−c₂²c₃² + 4c₁c₃³ + 4c₂³c₄ − 18c₁c₂c₃c₄ + 27c₁²c₄²`.
    pub(crate) fn cubic_discriminant(c1: &Q, c2: &Q, c3: &Q, c4: &Q) -> Q {
        -(c2 * c2 * c3 * c3) + q(4) * c1 * c3 * c3 * c3 + q(4) * c2 * c2 * c2 * c4 - q(18) * c1 * c2 * c3 * c4
            + q(27) * c1 * c1 * c4 * c4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_forms::w_state;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn r1(a: &[i64], b: &[i64], c: &[i64]) -> RankOneTensor<Q> {
        RankOneTensor::new(vec![v(a), v(b), v(c)]).unwrap()
    }

    fn check_witness(t: &Tensor<Q>, p: &RankOneTensor<Q>, verdict: &LocusVerdict) {
        let r = orbit_id(t).unwrap().rank();
        if let Some(l) = verdict.rational_witness() {
            let s = subtract_scaled(t, l, p).unwrap();
            let rs = if s.is_zero_tensor() { 0 } else { orbit_id(&s).unwrap().rank() };
            assert_eq!(rs + 1, r);
        }
    }

    fn both(t: &Tensor<Q>, p: &RankOneTensor<Q>) -> LocusStatus {
        let g = locus_membership(t, p, Strategy::Generic).unwrap();
        let s = locus_membership(t, p, Strategy::Specialized).unwrap();
        assert_eq!(g.status, s.status, "strategies disagree on {p:?}");
        check_witness(t, p, &g);
        check_witness(t, p, &s);
        s.status
    }

    #[test]
    fn matrix_examples() {
        let a = Mat::from_rows(vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 0])]);
        let at = locus_matrix(&a, &v(&[1, 0, 0]), &v(&[1, 0, 0])).unwrap();
        assert_eq!(at, LocusVerdict::at(q(1)));
        assert!(locus_matrix(&a, &v(&[1, 0, 0]), &v(&[0, 0, 1])).unwrap().is_forbidden());
        assert!(locus_matrix(&a, &v(&[1, 1, 0]), &v(&[1, -1, 0])).unwrap().is_forbidden());
        assert_eq!(locus_matrix(&a, &v(&[1, 0]), &v(&[1, 0, 0])), Err(Error::ShapeMismatch("3x3 matrix with vectors of length 2 and 3".into())));
    }

    #[test]
    fn w_state_examples() {
        let w = w_state(3);
        assert!(locus_tangential(&w, &r1(&[1, 0], &[1, 0], &[1, 0])).unwrap().is_forbidden());
        assert!(!locus_tangential(&w, &r1(&[0, 1], &[0, 1], &[0, 1])).unwrap().is_forbidden());
        let p = r1(&[1, 0], &[1, 0], &[1, 1]);
        assert_eq!(locus_tangential(&w, &p).unwrap(), LocusVerdict::at(q(1)));
        assert_eq!(both(&w, &p), LocusStatus::InDecomposition);
    }

    #[test]
    fn pairing_orbits() {
        let t9 = normal_form(9);
        assert_eq!(both(&t9, &r1(&[1, 0], &[1, 0], &[0, 1, 0, 0])), LocusStatus::Forbidden);
        let t26 = normal_form(26);
        let p = r1(&[1, 1], &[1, 0, 0], &[1, 1, 0, 0, 0, 0]);
        let verdict = locus_membership(&t26, &p, Strategy::Specialized).unwrap();
        assert_eq!(verdict, LocusVerdict::at(dual_pairing(&t26, &p).unwrap().recip()));
    }

    #[test]
    fn rank_four_233_example() {
        assert_eq!(both(&normal_form(13), &r1(&[0, 1], &[1, 0, 0], &[1, 0, 0])), LocusStatus::Forbidden);
    }

    #[test]
    fn closed_form_examples() {
        assert!(closed_form_predicate(OrbitId::Orbit(9), &r1(&[1, 0], &[1, 0], &[1, 0, 0, 0])).is_ok());
        assert!(closed_form_predicate(OrbitId::Orbit(9), &r1(&[1, 0], &[1, 0], &[0, 1, 0, 0])).unwrap());
        assert!(closed_form_predicate(OrbitId::Orbit(25), &r1(&[1, 0], &[1, 1, 0], &[0, 0, 0, 1, 0])).unwrap());
        assert!(closed_form_predicate(OrbitId::Orbit(21), &r1(&[1, 0], &[0, 0, 1], &[0, 1, 0, 0])).unwrap());
        assert_eq!(
            closed_form_predicate(OrbitId::Orbit(5), &r1(&[1, 0], &[1, 0], &[1, 0])),
            Err(Error::UnsupportedOrbit("orbit 5".into()))
        );
    }

    #[test]
    fn outside_concise_space_is_forbidden() {
        let t = normal_form(14).map(|x| x.clone());
        let big = Tensor::from_entries(&[2, 3, 4], &t_entries(&t));
        let p = r1(&[1, 0], &[1, 0, 0], &[0, 0, 0, 1]);
        assert_eq!(both(&big, &p), LocusStatus::Forbidden);
    }

    fn t_entries(t: &Tensor<Q>) -> Vec<(Vec<usize>, Q)> {
        crate::tensorcore::multi_indices(t.shape())
            .filter(|i| !t.get(i).is_zero())
            .map(|i| (i.clone(), t.get(&i).clone()))
            .collect()
    }
}
