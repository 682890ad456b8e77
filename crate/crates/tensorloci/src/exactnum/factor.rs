use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Poly, Q};
use crate::error::{Error, Result};

/// Yun's algorithm: returns `(g_i, i)` with `f = lead · Π g_i^i`, each `g_i`
/// monic, squarefree and pairwise coprime.
pub fn squarefree_decomposition(f: &Poly<Q>) -> Vec<(Poly<Q>, usize)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let f = f.monic();
    let df = f.derivative();
    let mut a = f.gcd(&df);
    let mut b = f.div_rem(&a).0;
    let mut c = df.div_rem(&a).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Clears denominators and content: a primitive integer polynomial with
/// positive leading coefficient, same roots.
fn to_primitive_int(f: &Poly<Q>) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in f.coeffs() {
        l = l.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = f.coeffs().iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    ints
}

fn from_ints(cs: &[BigInt]) -> Poly<Q> {
    Poly::new(cs.iter().map(|c| Q::from_integer(c.clone())).collect())
}

/// Positive divisors by trial division. A cofactor left after dividing out
/// all primes below the search bound is taken as prime.
fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return vec![];
    }
    let bound: u64 = 200_000;
    let mut p: u64 = 2;
    while p <= bound {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            primes.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

fn eval_int(cs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in cs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All distinct rational roots.
pub fn rational_roots(f: &Poly<Q>) -> Vec<Q> {
    let mut roots = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return roots;
    }
    let mut cs = to_primitive_int(f);
    if cs[0].is_zero() {
        roots.push(Q::zero());
        while cs.first().is_some_and(|c| c.is_zero()) {
            cs.remove(0);
        }
    }
    if cs.len() <= 1 {
        return roots;
    }
    let lead = cs.last().unwrap().clone();
    let ps = positive_divisors(&cs[0]);
    let qs = positive_divisors(&lead);
    let g = from_ints(&cs);
    for qd in &qs {
        for pd in &ps {
            if !pd.gcd(qd).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let r = Q::new(pd * sign, qd.clone());
                if g.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Factors of degree `k` of a primitive squarefree integer polynomial with no
/// rational roots, by Kronecker interpolation. Returns one monic factor.
fn kronecker_factor(cs: &[BigInt], k: usize) -> Option<Poly<Q>> {
    let g = from_ints(cs);
    let mut pts: Vec<(BigInt, BigInt, usize)> = Vec::new();
    for i in 0..(4 * cs.len() as i64 + 8) {
        let x = BigInt::from(if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 });
        let v = eval_int(cs, &x);
        let nd = positive_divisors(&v).len();
        pts.push((x, v, nd));
    }
    pts.sort_by_key(|p| p.2);
    pts.truncate(k + 2);
    let (nodes, extra) = pts.split_at(k + 1);
    let divs: Vec<Vec<BigInt>> = nodes.iter().map(|(_, v, _)| positive_divisors(v)).collect();
    let lead = cs.last().unwrap();
    let xs: Vec<Q> = nodes.iter().map(|(x, _, _)| Q::from_integer(x.clone())).collect();
    let mut idx = vec![0usize; k + 1];
    let mut signs = vec![false; k + 1];
    loop {
        let ys: Vec<Q> = (0..=k)
            .map(|i| {
                let d = Q::from_integer(divs[i][idx[i]].clone());
                if signs[i] {
                    -d
                } else {
                    d
                }
            })
            .collect();
        let h = interpolate(&xs, &ys);
        if h.degree() == Some(k) && h.coeffs().iter().all(|c| c.is_integer()) {
            let hl = h.lead().unwrap().to_integer();
            let ok_extra = extra.iter().all(|(x, v, _)| {
                let hv = h.eval(&Q::from_integer(x.clone())).to_integer();
                !hv.is_zero() && (v % &hv).is_zero()
            });
            if (lead % &hl).is_zero() && ok_extra && g.div_exact(&h).is_some() {
                return Some(h.monic());
            }
        }
        // advance the mixed-radix counter; the first value keeps a positive sign
        let mut pos = 0;
        loop {
            if pos > k {
                return None;
            }
            if pos > 0 && !signs[pos] {
                signs[pos] = true;
                break;
            }
            signs[pos] = false;
            idx[pos] += 1;
            if idx[pos] < divs[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn interpolate(xs: &[Q], ys: &[Q]) -> Poly<Q> {
    let mut acc = Poly::zero();
    for i in 0..xs.len() {
        let mut basis = Poly::constant(ys[i].clone());
        for j in 0..xs.len() {
            if i != j {
                let inv = (&xs[i] - &xs[j]).recip();
                basis = basis.mul(&Poly::linear(-&xs[j] * &inv, inv));
            }
        }
        acc = acc.add(&basis);
    }
    acc
}

/// Splits a monic squarefree polynomial without rational roots.
fn split_irreducible(f: &Poly<Q>, out: &mut Vec<Poly<Q>>) {
    let n = f.degree().unwrap_or(0);
    if n <= 3 {
        out.push(f.clone());
        return;
    }
    let cs = to_primitive_int(f);
    for k in 2..=n / 2 {
        if let Some(h) = kronecker_factor(&cs, k) {
            let rest = f.div_exact(&h).expect("factor divides").monic();
            split_irreducible(&h, out);
            split_irreducible(&rest, out);
            return;
        }
    }
    out.push(f.clone());
}

/// Monic irreducible factors with multiplicities, for degree ≤ 6.
pub fn upoly_factor_small(f: &Poly<Q>) -> Result<Vec<(Poly<Q>, usize)>> {
    let n = f.degree().ok_or(Error::AllZero)?;
    if n > 6 {
        return Err(Error::DegreeTooLarge(n));
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        let mut rest = g.clone();
        for r in rational_roots(&g) {
            let lin = Poly::linear(-r, Q::one());
            rest = rest.div_exact(&lin).expect("root divides");
            out.push((lin, m));
        }
        let mut parts = Vec::new();
        if !rest.is_constant() {
            split_irreducible(&rest, &mut parts);
        }
        out.extend(parts.into_iter().map(|p| (p, m)));
    }
    out.sort_by(|a, b| {
        let da = a.0.degree().cmp(&b.0.degree());
        da.then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}
