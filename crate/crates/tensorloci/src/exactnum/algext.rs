use std::cell::RefCell;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_traits::{One, Zero};

use super::{Field, Poly, Q};
use crate::error::{Error, Result};

/// The defining polynomial of ℚ[x]/(f), shared by all elements.
///
/// A modulus built with [`Modulus::irreducible`] is trusted. One built with
/// [`Modulus::squarefree`] may still factor; any zero divisor met while
/// computing is stored and the caller is expected to split and restart.
#[derive(Debug)]
pub struct Modulus {
    poly: Poly<Q>,
    trusted: bool,
    split: RefCell<Option<Poly<Q>>>,
}

impl Modulus {
    pub fn irreducible(f: &Poly<Q>) -> Rc<Self> {
        Rc::new(Modulus { poly: f.monic(), trusted: true, split: RefCell::new(None) })
    }

    pub fn squarefree(f: &Poly<Q>) -> Rc<Self> {
        let trusted = f.degree() == Some(1);
        Rc::new(Modulus { poly: f.monic(), trusted, split: RefCell::new(None) })
    }

    pub fn poly(&self) -> &Poly<Q> {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// A proper monic factor discovered during computation, if any.
    pub fn found_split(&self) -> Option<Poly<Q>> {
        self.split.borrow().clone()
    }

    /// The class of x.
    pub fn generator(self: &Rc<Self>) -> AlgebraicElement {
        AlgebraicElement::new(self, Poly::x())
    }

    fn probe(&self, rep: &Poly<Q>) {
        if self.trusted || rep.is_zero() || self.split.borrow().is_some() {
            return;
        }
        let g = rep.gcd(&self.poly);
        if !g.is_constant() {
            *self.split.borrow_mut() = Some(g);
        }
    }
}

/// Element of ℚ[x]/(f). Rational constants carry no modulus, so `zero()` and
/// `one()` need no context; the modulus is adopted on the first mixed
/// operation.
#[derive(Clone, Debug)]
pub struct AlgebraicElement {
    modulus: Option<Rc<Modulus>>,
    rep: Poly<Q>,
}

impl AlgebraicElement {
    pub fn new(m: &Rc<Modulus>, rep: Poly<Q>) -> Self {
        let rep = if rep.degree().unwrap_or(0) >= m.degree() { rep.rem(&m.poly) } else { rep };
        AlgebraicElement { modulus: Some(m.clone()), rep }
    }

    pub fn rational(c: Q) -> Self {
        AlgebraicElement { modulus: None, rep: Poly::constant(c) }
    }

    pub fn rep(&self) -> &Poly<Q> {
        &self.rep
    }

    pub fn modulus(&self) -> Option<&Rc<Modulus>> {
        self.modulus.as_ref()
    }

    fn join(a: &Option<Rc<Modulus>>, b: &Option<Rc<Modulus>>) -> Option<Rc<Modulus>> {
        a.clone().or_else(|| b.clone())
    }

    fn make(m: Option<Rc<Modulus>>, rep: Poly<Q>) -> Self {
        match m {
            Some(m) => AlgebraicElement::new(&m, rep),
            None => AlgebraicElement { modulus: None, rep },
        }
    }
}

impl PartialEq for AlgebraicElement {
    fn eq(&self, o: &Self) -> bool {
        self.rep == o.rep
    }
}

impl Zero for AlgebraicElement {
    fn zero() -> Self {
        AlgebraicElement { modulus: None, rep: Poly::zero() }
    }

    fn is_zero(&self) -> bool {
        if let Some(m) = &self.modulus {
            m.probe(&self.rep);
        }
        self.rep.is_zero()
    }
}

impl One for AlgebraicElement {
    fn one() -> Self {
        AlgebraicElement::rational(Q::one())
    }
}

impl<'a> Add<&'a AlgebraicElement> for AlgebraicElement {
    type Output = AlgebraicElement;
    fn add(self, o: &AlgebraicElement) -> AlgebraicElement {
        let m = AlgebraicElement::join(&self.modulus, &o.modulus);
        AlgebraicElement { modulus: m, rep: self.rep.add(&o.rep) }
    }
}

impl Add for AlgebraicElement {
    type Output = AlgebraicElement;
    fn add(self, o: AlgebraicElement) -> AlgebraicElement {
        self + &o
    }
}

impl<'a> Sub<&'a AlgebraicElement> for AlgebraicElement {
    type Output = AlgebraicElement;
    fn sub(self, o: &AlgebraicElement) -> AlgebraicElement {
        let m = AlgebraicElement::join(&self.modulus, &o.modulus);
        AlgebraicElement { modulus: m, rep: self.rep.sub(&o.rep) }
    }
}

impl Sub for AlgebraicElement {
    type Output = AlgebraicElement;
    fn sub(self, o: AlgebraicElement) -> AlgebraicElement {
        self - &o
    }
}

impl<'a> Mul<&'a AlgebraicElement> for AlgebraicElement {
    type Output = AlgebraicElement;
    fn mul(self, o: &AlgebraicElement) -> AlgebraicElement {
        let m = AlgebraicElement::join(&self.modulus, &o.modulus);
        AlgebraicElement::make(m, self.rep.mul(&o.rep))
    }
}

impl Mul for AlgebraicElement {
    type Output = AlgebraicElement;
    fn mul(self, o: AlgebraicElement) -> AlgebraicElement {
        self * &o
    }
}

impl Neg for AlgebraicElement {
    type Output = AlgebraicElement;
    fn neg(self) -> AlgebraicElement {
        AlgebraicElement { modulus: self.modulus, rep: self.rep.neg() }
    }
}

impl Field for AlgebraicElement {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match &self.modulus {
            None => Some(AlgebraicElement::rational(self.rep.coeffs()[0].recip())),
            Some(m) => {
                let (g, s, _) = self.rep.ext_gcd(&m.poly);
                if g.is_constant() {
                    Some(AlgebraicElement::new(m, s))
                } else {
                    // Only reachable for an untrusted modulus; the split is
                    // already recorded and the result is discarded upstream.
                    if m.split.borrow().is_none() {
                        *m.split.borrow_mut() = Some(g);
                    }
                    Some(AlgebraicElement::one())
                }
            }
        }
    }

    fn from_rational(q: &Q) -> Self {
        AlgebraicElement::rational(q.clone())
    }
}

/// Inverse in ℚ[x]/(f) by the extended Euclidean algorithm.
pub fn algext_inverse(x: &AlgebraicElement) -> Result<AlgebraicElement> {
    if x.rep.is_zero() {
        return Err(Error::NotInvertible);
    }
    match &x.modulus {
        None => Ok(AlgebraicElement::rational(x.rep.coeffs()[0].recip())),
        Some(m) => {
            let (g, s, _) = x.rep.ext_gcd(&m.poly);
            if g.is_constant() {
                Ok(AlgebraicElement::new(m, s))
            } else {
                Err(Error::ZeroDivisor)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, qf};

    #[test]
    fn inverse_examples() {
        let m = Modulus::irreducible(&Poly::from_ints(&[-2, 0, 1]));
        let l = m.generator();
        let inv = algext_inverse(&l).unwrap();
        assert_eq!(inv.rep(), &Poly::new(vec![q(0), qf(1, 2)]));
        let one_plus = AlgebraicElement::one() + &l;
        assert_eq!(algext_inverse(&one_plus).unwrap().rep(), &Poly::from_ints(&[-1, 1]));
        let m2 = Modulus::irreducible(&Poly::from_ints(&[1, 0, 1]));
        let three = AlgebraicElement::new(&m2, Poly::constant(q(3)));
        assert_eq!(algext_inverse(&three).unwrap().rep(), &Poly::constant(qf(1, 3)));
        assert_eq!(algext_inverse(&AlgebraicElement::zero()), Err(Error::NotInvertible));
    }

    #[test]
    fn reducible_modulus_reports_zero_divisor() {
        let m = Modulus::squarefree(&Poly::from_ints(&[-1, 0, 1]));
        let x = AlgebraicElement::new(&m, Poly::from_ints(&[-1, 1]));
        assert_eq!(algext_inverse(&x), Err(Error::ZeroDivisor));
        assert!(!x.is_zero());
        assert_eq!(m.found_split(), Some(Poly::from_ints(&[-1, 1])));
    }
}
