//! Homogeneous binary forms in `(u, v)`.

use crate::error::{Error, Result};
use crate::exactnum::{upoly_factor_small, Field, Poly, Q};
use crate::linalg::Mat;

/// `Σ c_i u^{d−i} v^i`. A zero form keeps its nominal degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<F> {
    coeffs: Vec<F>,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a form has at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![F::zero(); degree + 1] }
    }

    pub fn constant(c: F) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// `a·u + b·v`.
    pub fn linear(a: F, b: F) -> Self {
        BinaryForm { coeffs: vec![a, b] }
    }

    pub fn u() -> Self {
        Self::linear(F::one(), F::zero())
    }

    pub fn v() -> Self {
        Self::linear(F::zero(), F::one())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero_form(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "forms of equal degree");
        BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "forms of equal degree");
        BinaryForm { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.clone() - b).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_unrecorded() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = a.clone() * b;
                out[i + j] = std::mem::replace(&mut out[i + j], F::zero()) + &t;
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn scale(&self, c: &F) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect() }
    }

    pub fn eval(&self, u: &F, v: &F) -> F {
        let d = self.degree();
        let mut acc = F::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut t = c.clone();
            for _ in 0..d - i {
                t = t * u;
            }
            for _ in 0..i {
                t = t * v;
            }
            acc = acc + &t;
        }
        acc
    }

    pub fn d_du(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm {
            coeffs: (0..d).map(|i| self.coeffs[i].clone() * &F::from_i64((d - i) as i64)).collect(),
        }
    }

    pub fn d_dv(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm { coeffs: (1..=d).map(|i| self.coeffs[i].clone() * &F::from_i64(i as i64)).collect() }
    }

    /// Largest `k` with `v^k | f`; `None` for the zero form.
    pub fn v_power(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `f(u, 1)` with the `v`-power stripped first, as a polynomial in `u`.
    fn dehomogenize_stripped(&self, k: usize) -> Poly<F> {
        let d = self.degree();
        let mut cs = vec![F::zero(); d - k + 1];
        for i in k..=d {
            cs[d - i] = self.coeffs[i].clone();
        }
        Poly::new(cs)
    }

    /// `v^k · p(u/v)·v^{deg p}`.
    pub fn homogenize(p: &Poly<F>, k: usize) -> Self {
        let dp = p.degree().unwrap_or(0);
        let d = dp + k;
        let mut cs = vec![F::zero(); d + 1];
        for j in 0..=dp {
            cs[dp - j + k] = p.coeff(j);
        }
        BinaryForm { coeffs: cs }
    }

    /// Scales so the first nonzero coefficient is one.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(l) => {
                let inv = l.inverse().expect("nonzero");
                self.scale(&inv)
            }
        }
    }

    /// A root `(u₀ : v₀)` of a nonzero linear form.
    pub fn linear_root(&self) -> (F, F) {
        assert_eq!(self.degree(), 1, "linear form");
        (-self.coeffs[1].clone(), self.coeffs[0].clone())
    }
}

/// Gcd of binary forms, normalized to have first nonzero coefficient one.
/// Zero forms are skipped.
pub fn bform_gcd<F: Field>(fs: &[BinaryForm<F>]) -> Result<BinaryForm<F>> {
    let mut vpow: Option<usize> = None;
    let mut g: Option<Poly<F>> = None;
    for f in fs {
        let Some(k) = f.v_power() else { continue };
        vpow = Some(vpow.map_or(k, |m| m.min(k)));
        let p = f.dehomogenize_stripped(k);
        g = Some(match g {
            None => p.monic(),
            Some(h) if h.degree() == Some(0) => h,
            Some(h) => h.gcd(&p),
        });
    }
    match (g, vpow) {
        (Some(g), Some(k)) => Ok(BinaryForm::homogenize(&g, k).normalized()),
        _ => Err(Error::AllZero),
    }
}

/// Discriminant, normalized so that for `c₄u³−c₃u²v+c₂uv²−c₁v³` it equals
/// `−c₂²c₃²+4c₁c₃³+4c₂³c₄−18c₁c₂c₃c₄+27c₁²c₄²`. In general this is
/// `Res(p, p′)/lead(p)` for a dehomogenization `p` of full degree, which is
/// `(−1)^{d(d−1)/2}` times the textbook discriminant.
pub fn bform_discriminant<F: Field>(f: &BinaryForm<F>) -> Result<F> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall);
    }
    if f.is_zero_form() {
        return Ok(F::zero());
    }
    // v ↦ v + t·u is unimodular; pick t with f(1, t) ≠ 0 so the u^d coefficient survives
    let mut t = 0i64;
    let shifted = loop {
        let tf = F::from_i64(t);
        if !f.eval(&F::one(), &tf).is_zero() {
            break substitute_v_shift(f, &tf);
        }
        t = if t <= 0 { 1 - t } else { -t };
    };
    let p = shifted.dehomogenize_stripped(0);
    let dp = p.derivative();
    let res = resultant(&p, &dp, d, d - 1);
    Ok(res.try_div(&shifted.coeffs[0]).expect("leading coefficient nonzero"))
}

/// `f(u, v + t·u)`.
fn substitute_v_shift<F: Field>(f: &BinaryForm<F>, t: &F) -> BinaryForm<F> {
    let d = f.degree();
    let mut out = BinaryForm::zero(d);
    let shifted_v = BinaryForm::linear(t.clone(), F::one());
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero_unrecorded() {
            continue;
        }
        let mut term = BinaryForm::constant(c.clone());
        for _ in 0..d - i {
            term = term.mul(&BinaryForm::u());
        }
        for _ in 0..i {
            term = term.mul(&shifted_v);
        }
        out = out.add(&term);
    }
    out
}

/// Sylvester resultant of polynomials of formal degrees `m` and `n`.
fn resultant<F: Field>(p: &Poly<F>, q: &Poly<F>, m: usize, n: usize) -> F {
    let size = m + n;
    let mut s = Mat::zeros(size, size);
    for r in 0..n {
        for j in 0..=m {
            s.set(r, r + j, p.coeff(m - j));
        }
    }
    for r in 0..m {
        for j in 0..=n {
            s.set(n + r, r + j, q.coeff(n - j));
        }
    }
    s.det().expect("square")
}

/// True iff `f = c·ℓ^d` for a linear form `ℓ`.
pub fn bform_is_pure_power<F: Field>(f: &BinaryForm<F>, d: usize) -> bool {
    if f.is_zero_form() || d == 0 || f.degree() != d {
        return false;
    }
    if d == 1 {
        return true;
    }
    match bform_gcd(&[f.d_du(), f.d_dv()]) {
        Ok(g) => g.degree() == d - 1,
        Err(_) => false,
    }
}

/// Irreducible factors over ℚ with multiplicities; `v` is reported as a
/// separate linear factor.
pub fn bform_root_profile(f: &BinaryForm<Q>) -> Result<Vec<(BinaryForm<Q>, usize)>> {
    let k = f.v_power().ok_or(Error::AllZero)?;
    let p = f.dehomogenize_stripped(k);
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) > 0 {
        for (g, m) in upoly_factor_small(&p)? {
            out.push((BinaryForm::homogenize(&g, 0), m));
        }
    }
    if k > 0 {
        out.push((BinaryForm::v(), k));
    }
    Ok(out)
}
