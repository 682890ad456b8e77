use std::cell::RefCell;
use std::collections::HashSet;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_traits::{One, Zero};

use super::{Field, Poly, Q};

/// Collects every nonconstant numerator that a computation over ℚ(λ) tested
/// for zero or inverted. Away from the roots of the recorded polynomials,
/// specializing λ takes exactly the same branches.
#[derive(Clone, Debug, Default)]
pub struct Recorder {
    seen: Rc<RefCell<HashSet<Vec<Q>>>>,
}

impl Recorder {
    pub fn new() -> Self {
        Self::default()
    }

    fn note(&self, p: &Poly<Q>) {
        if p.degree().unwrap_or(0) >= 1 {
            self.seen.borrow_mut().insert(p.monic().into_coeffs());
        }
    }

    /// Recorded polynomials, monic, in a deterministic order.
    pub fn polys(&self) -> Vec<Poly<Q>> {
        let mut v: Vec<Vec<Q>> = self.seen.borrow().iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v.into_iter().map(Poly::new).collect()
    }
}

/// Element of ℚ(λ) as a reduced fraction with monic denominator.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly<Q>,
    den: Poly<Q>,
    rec: Option<Recorder>,
}

impl RatFunc {
    pub fn from_poly(p: Poly<Q>) -> Self {
        RatFunc { num: p, den: Poly::one(), rec: None }
    }

    /// The variable λ.
    pub fn lambda() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn with_recorder(mut self, rec: &Recorder) -> Self {
        self.rec = Some(rec.clone());
        self
    }

    pub fn num(&self) -> &Poly<Q> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Q> {
        &self.den
    }

    fn build(num: Poly<Q>, den: Poly<Q>, rec: Option<Recorder>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(), rec };
        }
        let (num, den) = if den.is_constant() {
            let inv = den.coeffs()[0].recip();
            (num.scale(&inv), Poly::one())
        } else {
            let g = num.gcd(&den);
            let (mut n, mut d) = if g.is_constant() {
                (num, den)
            } else {
                (num.div_rem(&g).0, den.div_rem(&g).0)
            };
            let l = d.lead().unwrap().clone();
            if !l.is_one() {
                let inv = l.recip();
                n = n.scale(&inv);
                d = d.scale(&inv);
            }
            (n, d)
        };
        RatFunc { num, den, rec }
    }

    fn pick(a: &Option<Recorder>, b: &Option<Recorder>) -> Option<Recorder> {
        a.clone().or_else(|| b.clone())
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    fn is_zero(&self) -> bool {
        if let Some(r) = &self.rec {
            r.note(&self.num);
        }
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
}

impl<'a> Add<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        let rec = RatFunc::pick(&self.rec, &o.rec);
        if self.num.is_zero() {
            return RatFunc { num: o.num.clone(), den: o.den.clone(), rec };
        }
        if o.num.is_zero() {
            return RatFunc { rec, ..self };
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.add(&o.num), den: self.den, rec };
        }
        if self.den == o.den {
            return RatFunc::build(self.num.add(&o.num), self.den, rec);
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFunc::build(num, self.den.mul(&o.den), rec)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        self + &o
    }
}

impl<'a> Sub<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o.clone())
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self - &o
    }
}

impl<'a> Mul<&'a RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        let rec = RatFunc::pick(&self.rec, &o.rec);
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc { num: Poly::zero(), den: Poly::one(), rec };
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: self.den, rec };
        }
        // Cross-cancel so the product of reduced fractions stays reduced.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let (a, d) = if g1.is_constant() { (self.num, o.den.clone()) } else { (self.num.div_rem(&g1).0, o.den.div_rem(&g1).0) };
        let (c, b) = if g2.is_constant() { (o.num.clone(), self.den) } else { (o.num.div_rem(&g2).0, self.den.div_rem(&g2).0) };
        let (mut num, mut den) = (a.mul(&c), b.mul(&d));
        let l = den.lead().unwrap().clone();
        if !l.is_one() {
            let inv = l.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den, rec }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        self * &o
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den, rec: self.rec }
    }
}

impl Field for RatFunc {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::build(self.den.clone(), self.num.clone(), self.rec.clone()))
    }

    fn is_zero_unrecorded(&self) -> bool {
        self.num.is_zero()
    }

    fn from_rational(q: &Q) -> Self {
        RatFunc::from_poly(Poly::constant(q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q;

    #[test]
    fn arithmetic_reduces() {
        let l = RatFunc::lambda();
        let one = RatFunc::one();
        let a = (l.clone() - &one).inverse().unwrap();
        let b = (l.clone() * &l - &one) * &a;
        assert_eq!(b, l.clone() + &one);
        assert_eq!(b.eval(&q(2)), Some(q(3)));
    }

    #[test]
    fn recorder_sees_tested_numerators() {
        let rec = Recorder::new();
        let l = RatFunc::lambda().with_recorder(&rec);
        let x = l.clone() * &l - &RatFunc::from_i64(4);
        assert!(!x.is_zero());
        let polys = rec.polys();
        assert_eq!(polys, vec![Poly::from_ints(&[-4, 0, 1])]);
    }
}
