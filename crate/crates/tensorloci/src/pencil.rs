//! Pencils `uA + vB` of `2×b×c` tensors and their invariants.

use crate::binforms::{bform_discriminant, bform_gcd, bform_root_profile, BinaryForm};
use crate::error::{Error, Result};
use crate::exactnum::{AlgebraicElement, Field, Modulus, Poly, Q};
use crate::linalg::Mat;
use crate::tensorcore::Tensor;

/// `uA + vB` with `A`, `B` the slices at first index 0 and 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil<F> {
    pub a: Mat<F>,
    pub b: Mat<F>,
}

/// One irreducible factor of a minor gcd.
#[derive(Clone, Debug, PartialEq)]
pub struct JetRecord {
    pub factor: BinaryForm<Q>,
    pub multiplicity: usize,
    /// Rank of the pencil member at a root of `factor`.
    pub member_rank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum JetProfile {
    /// Every member of the pencil has rank below `r`.
    WholeLine,
    Points(Vec<JetRecord>),
}

impl<F: Field> Pencil<F> {
    pub fn from_slices(a: Mat<F>, b: Mat<F>) -> Self {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        Pencil { a, b }
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    pub fn entry(&self, i: usize, j: usize) -> BinaryForm<F> {
        BinaryForm::linear(self.a.get(i, j).clone(), self.b.get(i, j).clone())
    }

    /// The member `u₀A + v₀B`.
    pub fn member(&self, u0: &F, v0: &F) -> Mat<F> {
        self.a.scale(u0).add(&self.b.scale(v0))
    }

    /// Determinant of the submatrix on `rows × cols` as a form of degree r.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BinaryForm<F> {
        let r = rows.len();
        if r == 1 {
            return self.entry(rows[0], cols[0]);
        }
        let mut acc = BinaryForm::zero(r);
        for (k, &c) in cols.iter().enumerate() {
            let e = self.entry(rows[0], c);
            if e.coeffs().iter().all(|x| x.is_zero_unrecorded()) {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.minor(&rows[1..], &rest);
            let term = e.mul(&sub);
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// All r×r minors.
    pub fn minors(&self, r: usize) -> Vec<BinaryForm<F>> {
        let mut out = Vec::new();
        for rows in combinations(self.rows(), r) {
            for cols in combinations(self.cols(), r) {
                out.push(self.minor(&rows, &cols));
            }
        }
        out
    }

    /// `det(uA + vB)` for a square pencil.
    pub fn det_form(&self) -> Result<BinaryForm<F>> {
        if self.rows() != self.cols() {
            return Err(Error::WrongShape(format!("{}x{} pencil has no determinant", self.rows(), self.cols())));
        }
        let idx: Vec<usize> = (0..self.rows()).collect();
        Ok(self.minor(&idx, &idx))
    }

    /// Rank of the member at the root of a linear form.
    pub fn member_rank_at(&self, l: &BinaryForm<F>) -> usize {
        let (u0, v0) = l.linear_root();
        self.member(&u0, &v0).rank()
    }
}

pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// The pencil of a `2×b×c` tensor.
pub fn pencil_of<F: Field>(t: &Tensor<F>) -> Result<Pencil<F>> {
    if t.order() != 3 || t.shape()[0] != 2 {
        return Err(Error::WrongShape(format!("pencil needs shape (2,b,c), got {:?}", t.shape())));
    }
    let a = t.slice(0, 0)?.as_matrix()?;
    let b = t.slice(0, 1)?.as_matrix()?;
    Ok(Pencil::from_slices(a, b))
}

/// Gcd of the r×r minors; the zero form when all of them vanish.
pub fn pencil_minor_gcd<F: Field>(p: &Pencil<F>, r: usize) -> BinaryForm<F> {
    let mut nonzero: Vec<BinaryForm<F>> = Vec::new();
    for m in p.minors(r) {
        if m.is_zero_form() {
            continue;
        }
        nonzero.push(m);
        if nonzero.len() >= 2 {
            let g = bform_gcd(&nonzero).expect("nonzero forms present");
            if g.degree() == 0 {
                return g;
            }
            nonzero = vec![g];
        }
    }
    match nonzero.pop() {
        Some(g) => bform_gcd(&[g]).expect("nonzero"),
        None => BinaryForm::zero(r),
    }
}

/// Cayley's hyperdeterminant of a 2×2×2 tensor.
pub fn hyperdet222<F: Field>(t: &Tensor<F>) -> Result<F> {
    if t.shape() != [2, 2, 2] {
        return Err(Error::WrongShape(format!("Cayley hyperdeterminant needs (2,2,2), got {:?}", t.shape())));
    }
    let e = |i: usize, j: usize, k: usize| t.get(&[i, j, k]).clone();
    let m = |xs: [F; 4]| {
        let [a, b, c, d] = xs;
        a * &b * &c * &d
    };
    let (t000, t001, t010, t011) = (e(0, 0, 0), e(0, 0, 1), e(0, 1, 0), e(0, 1, 1));
    let (t100, t101, t110, t111) = (e(1, 0, 0), e(1, 0, 1), e(1, 1, 0), e(1, 1, 1));
    let squares = m([t000.clone(), t000.clone(), t111.clone(), t111.clone()])
        + &m([t001.clone(), t001.clone(), t110.clone(), t110.clone()])
        + &m([t010.clone(), t010.clone(), t101.clone(), t101.clone()])
        + &m([t100.clone(), t100.clone(), t011.clone(), t011.clone()]);
    let mixed = m([t000.clone(), t001.clone(), t110.clone(), t111.clone()])
        + &m([t000.clone(), t010.clone(), t101.clone(), t111.clone()])
        + &m([t000.clone(), t100.clone(), t011.clone(), t111.clone()])
        + &m([t001.clone(), t010.clone(), t101.clone(), t110.clone()])
        + &m([t001.clone(), t100.clone(), t011.clone(), t110.clone()])
        + &m([t010.clone(), t100.clone(), t011.clone(), t101.clone()]);
    let quads = m([t000, t011, t101, t110]) + &m([t001, t010, t100, t111]);
    Ok(squares - &(mixed * &F::from_i64(2)) + &(quads * &F::from_i64(4)))
}

/// Hyperdeterminant of a 2×3×3 tensor: the discriminant of its determinant cubic.
pub fn hyperdet233<F: Field>(t: &Tensor<F>) -> Result<F> {
    if t.shape() != [2, 3, 3] {
        return Err(Error::WrongShape(format!("2×3×3 hyperdeterminant needs (2,3,3), got {:?}", t.shape())));
    }
    let det = pencil_of(t)?.det_form()?;
    bform_discriminant(&det)
}

/// Factors of the r-minor gcd with the member rank at each root.
pub fn jet_profile(p: &Pencil<Q>, r: usize) -> Result<JetProfile> {
    let g = pencil_minor_gcd(p, r);
    if g.is_zero_form() {
        return Ok(JetProfile::WholeLine);
    }
    let mut out = Vec::new();
    for (factor, multiplicity) in bform_root_profile(&g)? {
        let member_rank = if factor.degree() == 1 {
            p.member_rank_at(&factor)
        } else {
            member_rank_at_irreducible(p, &factor)
        };
        out.push(JetRecord { factor, multiplicity, member_rank });
    }
    Ok(JetProfile::Points(out))
}

/// Member rank at a root of an irreducible form of degree ≥ 2, computed in
/// ℚ[x]/(f(x, 1)).
fn member_rank_at_irreducible(p: &Pencil<Q>, f: &BinaryForm<Q>) -> usize {
    let d = f.degree();
    let dehom = Poly::new((0..=d).map(|j| f.coeffs()[d - j].clone()).collect());
    let m = Modulus::irreducible(&dehom);
    let x = m.generator();
    let lift = |a: &Mat<Q>| a.map(|c| AlgebraicElement::rational(c.clone()));
    let member = lift(&p.a).scale(&x).add(&lift(&p.b));
    member.rank()
}

/// Multiplicity pattern helper: `Some(ℓ)` when `g` has a repeated linear
/// factor `ℓ`, computed as `gcd(∂g/∂u, ∂g/∂v)` reduced to its radical.
pub fn repeated_linear_factor<F: Field>(g: &BinaryForm<F>) -> Option<BinaryForm<F>> {
    if g.degree() < 2 {
        return None;
    }
    let h = bform_gcd(&[g.d_du(), g.d_dv()]).ok()?;
    match h.degree() {
        0 => None,
        1 => Some(h),
        _ => {
            let r = bform_gcd(&[h.d_du(), h.d_dv()]).ok()?;
            (r.degree() == h.degree() - 1).then(|| radical_of_power(&h))
        }
    }
}

/// Linear form `ℓ` from `c·ℓ^k`.
fn radical_of_power<F: Field>(h: &BinaryForm<F>) -> BinaryForm<F> {
    let mut cur = h.clone();
    while cur.degree() > 1 {
        cur = bform_gcd(&[cur.d_du(), cur.d_dv()]).expect("nonzero");
    }
    cur
}
