use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// An element of the cyclotomic field Q(ζ_N), stored as a reduced polynomial
/// in ζ of degree below φ(N).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

static PHI: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let cache = PHI.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().expect("phi cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every proper divisor's polynomial
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    cache
        .write()
        .expect("phi cache poisoned")
        .entry(n)
        .or_insert_with(|| p.clone());
    p
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                rem[i + j] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

fn reduce(mut v: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    while v.len() > deg {
        let c = v.pop().expect("nonempty");
        if c.is_zero() {
            continue;
        }
        let top = v.len();
        for (j, &b) in phi[..deg].iter().enumerate() {
            if b != 0 {
                v[top - deg + j] -= &c * Rational::from_integer(b.into());
            }
        }
    }
    v.resize(deg, Rational::zero());
    v
}

// Dense polynomial helpers over Q used by inversion.
fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty") / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

pub fn lcm_order(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        Self::from_rational(Rational::zero(), order)
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(Rational::one(), order)
    }

    pub fn from_rational(r: Rational, order: u32) -> Self {
        let mut coeffs = vec![Rational::zero(); euler_phi(order)];
        coeffs[0] = r;
        Cyclotomic { order, coeffs }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()), 1)
    }

    pub fn rational(r: Rational) -> Self {
        Self::from_rational(r, 1)
    }

    /// ζ_N^k for any integer k.
    pub fn zeta(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Cyclotomic { order, coeffs: reduce(v, order) }
    }

    /// Builds an element from an arbitrary-length coefficient vector in powers of ζ_N.
    pub fn from_powers(order: u32, v: Vec<Rational>) -> Self {
        Cyclotomic { order, coeffs: reduce(v, order) }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Image under ζ_N ↦ ζ_M^{M/N}.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target % self.order != 0 {
            return Err(Error::OrderNotDivisible { source_order: self.order, target });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let f = (target / self.order) as usize;
        let mut v = vec![Rational::zero(); (self.coeffs.len() - 1) * f + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * f] = c.clone();
        }
        Ok(Cyclotomic { order: target, coeffs: reduce(v, target) })
    }

    fn embed_unchecked(&self, target: u32) -> Self {
        self.embed(target).expect("target order is a multiple")
    }

    pub(crate) fn embed_to(&self, target: u32) -> Self {
        self.embed_unchecked(target)
    }

    /// The Galois automorphism ζ ↦ ζ^k (k coprime to the order).
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.order as i64;
        let k = k.rem_euclid(n);
        if k.gcd(&n) != 1 {
            return Err(Error::Parse(format!("exponent {k} is not a unit modulo {n}")));
        }
        let mut v = vec![Rational::zero(); (self.coeffs.len() - 1) * k as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (i as i64 * k) as usize;
            v[e] += c;
        }
        Ok(Cyclotomic { order: self.order, coeffs: reduce(v, self.order) })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order <= 2 {
            return Ok(Self::from_rational(self.coeffs[0].recip(), self.order));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        let mut a = self.coeffs.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let g = r0[0].clone();
        let v: Vec<Rational> = s0.into_iter().map(|c| c / &g).collect();
        Ok(Cyclotomic { order: self.order, coeffs: reduce(v, self.order) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.order == b.order {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = lcm_order(a.order, b.order);
            (Cow::Owned(a.embed_unchecked(m)), Cow::Owned(b.embed_unchecked(m)))
        }
    }

    pub(crate) fn render(&self, out: &mut String) {
        if let Some(r) = self.as_rational() {
            out.push_str(&r.to_string());
            return;
        }
        out.push('(');
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out.push(')');
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(&mut s);
        f.write_str(&s)
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Cyclotomic::rational(r)
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, rhs);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, rhs);
        Cyclotomic {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, rhs);
        if a.coeffs.len() == 1 {
            return Cyclotomic { order: a.order, coeffs: vec![&a.coeffs[0] * &b.coeffs[0]] };
        }
        Cyclotomic { order: a.order, coeffs: reduce(poly_mul(&a.coeffs, &b.coeffs), a.order) }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(105), 48);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(Cyclotomic::zeta(2, 1), Cyclotomic::from_int(-1));
        assert_eq!(Cyclotomic::zeta(1, 1), Cyclotomic::from_int(1));
        let z = Cyclotomic::zeta(3, 1);
        let sum = &(&Cyclotomic::one(3) + &z) + &z.pow(2);
        assert!(sum.is_zero());
        assert!((&z * &Cyclotomic::zeta(3, 2)).is_one());
    }

    #[test]
    fn embedding_examples() {
        let r = Cyclotomic::rational(q(3, 7)).embed(12).unwrap();
        assert_eq!(r.coeffs()[0], q(3, 7));
        assert!(r.coeffs()[1..].iter().all(|c| c.is_zero()));
        let m1 = Cyclotomic::zeta(2, 1).embed(6).unwrap();
        assert_eq!(m1, Cyclotomic::zeta(6, 3));
        assert_eq!(m1.coeffs(), &[q(-1, 1), q(0, 1)]);
        assert!(Cyclotomic::zeta(4, 1).embed(6).is_err());
    }

    #[test]
    fn inverse_and_galois() {
        let z = Cyclotomic::zeta(5, 2);
        let a = &(&z + &Cyclotomic::from_int(3)) * &Cyclotomic::zeta(5, 1);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(Cyclotomic::zeta(3, 1).galois(2).unwrap(), Cyclotomic::zeta(3, 2));
        assert_eq!(Cyclotomic::zero(7).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rendering() {
        let z = Cyclotomic::zeta(3, 1);
        let a = &z.scale(&q(35, 1)) - &Cyclotomic::one(3);
        assert_eq!(a.to_string(), "(-1 + 35*z3)");
        assert_eq!(Cyclotomic::rational(q(-5, 2)).to_string(), "-5/2");
        assert_eq!(Cyclotomic::zeta(5, 3).to_string(), "(z5^3)");
    }
}
