use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::lcm_order;
use super::{Cyclotomic, Rational};
use crate::error::{Error, Result};

/// A polynomial in the interpolation variable `t` with coefficients in Q(ζ_N).
///
/// Zero coefficients are never stored and every stored coefficient carries the
/// polynomial's order, so derived structural comparisons stay meaningful.
#[derive(Clone, Debug)]
pub struct CycPoly {
    order: u32,
    terms: BTreeMap<u32, Cyclotomic>,
}

impl CycPoly {
    pub fn zero() -> Self {
        CycPoly { order: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::from_int(1))
    }

    pub fn t() -> Self {
        Self::monomial(1, Cyclotomic::from_int(1))
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(Cyclotomic::from_int(v))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(Cyclotomic::rational(r))
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(deg: u32, c: Cyclotomic) -> Self {
        let order = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(deg, c);
        }
        CycPoly { order, terms }
    }

    /// t^k.
    pub fn t_pow(k: u32) -> Self {
        Self::monomial(k, Cyclotomic::from_int(1))
    }

    /// Π_{i<len} (t − shift − i).
    pub fn falling(shift: i64, len: u32) -> Self {
        let mut acc = Self::one();
        for i in 0..len as i64 {
            acc = &acc * &(&Self::t() - &Self::from_int(shift + i));
        }
        acc
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: u32) -> Cyclotomic {
        self.terms.get(&deg).cloned().unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Cyclotomic)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    /// The constant value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.degree() {
            None => Some(Cyclotomic::zero(self.order)),
            Some(0) => Some(self.coeff(0)),
            _ => None,
        }
    }

    pub fn embed(&self, target: u32) -> Result<Self> {
        if target % self.order != 0 {
            return Err(Error::OrderNotDivisible { source_order: self.order, target });
        }
        Ok(self.embed_to(target))
    }

    fn embed_to(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        CycPoly {
            order: target,
            terms: self.terms.iter().map(|(d, c)| (*d, c.embed_to(target))).collect(),
        }
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if a.order == b.order {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else {
            let m = lcm_order(a.order, b.order);
            (Cow::Owned(a.embed_to(m)), Cow::Owned(b.embed_to(m)))
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let order = lcm_order(self.order, c.order());
        let mut terms = BTreeMap::new();
        for (d, x) in &self.terms {
            let v = x * c;
            if !v.is_zero() {
                terms.insert(*d, v.embed_to(order));
            }
        }
        CycPoly { order, terms }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CycPoly {
            order: self.order,
            terms: self.terms.iter().map(|(d, c)| (*d, c.scale(r))).collect(),
        }
    }

    pub fn eval(&self, v: &Cyclotomic) -> Cyclotomic {
        // Horner from the top degree down.
        let order = lcm_order(self.order, v.order());
        let mut acc = Cyclotomic::zero(order);
        let Some(top) = self.degree() else { return acc };
        for d in (0..=top).rev() {
            acc = &acc * v;
            if let Some(c) = self.terms.get(&d) {
                acc += c;
            }
        }
        acc
    }

    pub fn eval_int(&self, v: i64) -> Cyclotomic {
        self.eval(&Cyclotomic::from_int(v))
    }

    /// Applies ζ ↦ ζ^k to every coefficient.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (d, c) in &self.terms {
            terms.insert(*d, c.galois(k)?);
        }
        Ok(CycPoly { order: self.order, terms })
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let top = divisor.degree().ok_or(Error::DivisionByZero)?;
        let (a, b) = Self::aligned(self, divisor);
        let lead_inv = b.terms[&top].inv()?;
        let mut rem = a.into_owned();
        let mut quot = CycPoly { order: rem.order, terms: BTreeMap::new() };
        while let Some(d) = rem.degree() {
            if d < top {
                break;
            }
            let c = &rem.terms[&d] * &lead_inv;
            let step = CycPoly::monomial(d - top, c.clone());
            rem = &rem - &(&step * &*b);
            quot.terms.insert(d - top, c);
        }
        Ok((quot, rem))
    }

    /// Exact division; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn insert_sum(terms: &mut BTreeMap<u32, Cyclotomic>, d: u32, c: &Cyclotomic) {
        match terms.get_mut(&d) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    terms.remove(&d);
                }
            }
            None => {
                if !c.is_zero() {
                    terms.insert(d, c.clone());
                }
            }
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            variable: "t".to_string(),
            cyclotomic_order: self.order,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(d, c)| TermJson {
                    deg: *d,
                    coeff: c.coeffs().iter().map(|r| r.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        if j.variable != "t" {
            return Err(Error::Parse(format!("unknown variable {}", j.variable)));
        }
        if j.cyclotomic_order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        let mut acc = CycPoly { order: j.cyclotomic_order, terms: BTreeMap::new() };
        for term in &j.terms {
            let coeffs = term
                .coeff
                .iter()
                .map(|s| s.trim().parse::<Rational>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            let c = Cyclotomic::from_powers(j.cyclotomic_order, coeffs);
            Self::insert_sum(&mut acc.terms, term.deg, &c);
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variable: String,
    pub cyclotomic_order: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub deg: u32,
    pub coeff: Vec<String>,
}

impl PartialEq for CycPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for CycPoly {}

impl Default for CycPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycPoly {
    fn from(v: i64) -> Self {
        CycPoly::from_int(v)
    }
}

impl From<Cyclotomic> for CycPoly {
    fn from(c: Cyclotomic) -> Self {
        CycPoly::constant(c)
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (d, c)) in self.terms.iter().rev().enumerate() {
            let mono = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            match c.as_rational() {
                Some(r) => {
                    let neg = r.is_negative();
                    if i == 0 {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    let mag = r.abs();
                    if mono.is_empty() {
                        out.push_str(&mag.to_string());
                    } else if mag.is_one() {
                        out.push_str(&mono);
                    } else {
                        out.push_str(&format!("{mag}*{mono}"));
                    }
                }
                None => {
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    c.render(&mut out);
                    if !mono.is_empty() {
                        out.push('*');
                        out.push_str(&mono);
                    }
                }
            }
        }
        f.write_str(&out)
    }
}

impl std::str::FromStr for CycPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::expr::parse_poly(s)
    }
}

impl Add<&CycPoly> for &CycPoly {
    type Output = CycPoly;
    fn add(self, rhs: &CycPoly) -> CycPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&CycPoly> for &CycPoly {
    type Output = CycPoly;
    fn sub(self, rhs: &CycPoly) -> CycPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&CycPoly> for &CycPoly {
    type Output = CycPoly;
    fn mul(self, rhs: &CycPoly) -> CycPoly {
        if self.is_zero() || rhs.is_zero() {
            return CycPoly::zero();
        }
        if rhs.terms.len() == 1 && rhs.terms.contains_key(&0) && rhs.terms[&0].is_one() {
            return self.clone();
        }
        let (a, b) = CycPoly::aligned(self, rhs);
        let mut terms = BTreeMap::new();
        for (da, ca) in &a.terms {
            for (db, cb) in &b.terms {
                CycPoly::insert_sum(&mut terms, da + db, &(ca * cb));
            }
        }
        CycPoly { order: a.order, terms }
    }
}

impl Neg for &CycPoly {
    type Output = CycPoly;
    fn neg(self) -> CycPoly {
        CycPoly { order: self.order, terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect() }
    }
}

impl Neg for CycPoly {
    type Output = CycPoly;
    fn neg(self) -> CycPoly {
        -&self
    }
}

impl AddAssign<&CycPoly> for CycPoly {
    fn add_assign(&mut self, rhs: &CycPoly) {
        let m = lcm_order(self.order, rhs.order);
        if m != self.order {
            *self = self.embed_to(m);
        }
        let r = if m != rhs.order {
            std::borrow::Cow::Owned(rhs.embed_to(m))
        } else {
            std::borrow::Cow::Borrowed(rhs)
        };
        for (d, c) in &r.terms {
            Self::insert_sum(&mut self.terms, *d, c);
        }
    }
}

impl SubAssign<&CycPoly> for CycPoly {
    fn sub_assign(&mut self, rhs: &CycPoly) {
        *self += &(-rhs);
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycPoly> for CycPoly {
            type Output = CycPoly;
            fn $m(self, rhs: CycPoly) -> CycPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycPoly> for CycPoly {
            type Output = CycPoly;
            fn $m(self, rhs: &CycPoly) -> CycPoly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> CycPoly {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p("t^2 - t").eval_int(3), Cyclotomic::from_int(6));
        for n in 0..7 {
            let f: i64 = (1..=n).product();
            assert_eq!(CycPoly::falling(0, n as u32).eval_int(n), Cyclotomic::from_int(f));
        }
        let trefoil = &p("2*t - 3") * &p("t*(t-1)/2");
        assert_eq!(trefoil.eval_int(2), Cyclotomic::from_int(1));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("4 - 5/2*t + t^2/2").to_string(), "1/2*t^2 - 5/2*t + 4");
        assert_eq!(p("-(2*t^3 - 18*t^2 + 52*t - 47)").to_string(), "-2*t^3 + 18*t^2 - 52*t + 47");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("t - t").to_string(), "0");
        assert_eq!(p("(3*t^2 - 21*t + 36 + z3)*z3").to_string(), "(3*z3)*t^2 + (-21*z3)*t + (-1 + 35*z3)");
    }

    #[test]
    fn exact_division() {
        let dim = p("t*(t-1)/2");
        let raw = &p("2*t - 3") * &dim;
        assert_eq!(raw.div_exact(&dim).unwrap(), p("2*t-3"));
        assert_eq!(p("t^2 + 1").div_exact(&p("t - 1")), Err(Error::NotDivisible));
        assert_eq!(p("t").div_exact(&CycPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_orders_embed() {
        let a = p("z3 + t");
        let b = p("z2");
        let s = &a + &b;
        assert_eq!(s.order(), 6);
        assert_eq!(s, p("t + z3 - 1"));
    }

    #[test]
    fn json_roundtrip() {
        let a = p("(3*t^2 - 21*t + 36 + z3)*z3");
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back: PolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(CycPoly::from_json(&back).unwrap(), a);
        assert!(j.starts_with("{\"variable\":\"t\",\"cyclotomic_order\":3"));
    }
}
