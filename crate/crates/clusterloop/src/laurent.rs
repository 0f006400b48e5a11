//! Multivariate Laurent polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("arity mismatch: {0} vs {1} variables")]
    Arity(usize, usize),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: LaurentPoly },
    #[error("evaluation point must be strictly positive (entry {0})")]
    NonPositive(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A Laurent polynomial in `a1..an` over the integers.
///
/// Terms are kept in a `BTreeMap`, so exponent vectors are ordered
/// lexicographically and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable `a_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exp: Vec<i32>, c: impl Into<BigInt>) -> Self {
        let nvars = exp.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if self.nvars != other.nvars {
            Err(LaurentError::Arity(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = &r * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        r
    }

    fn min_exponents(&self) -> Vec<i32> {
        let mut m = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    fn shift(&self, s: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(s).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / q` in the Laurent ring.
    ///
    /// Both sides are first normalized to genuine polynomials by dividing out
    /// their monomial content; the rest is lex-leading-term division.
    pub fn div_exact(&self, q: &Self) -> Result<Self, LaurentError> {
        self.check(q)?;
        if q.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if q.is_monomial() {
            let (e, c) = q.terms.iter().next().unwrap();
            let mut out = Self::zero(self.nvars);
            for (f, d) in &self.terms {
                let (qc, rem) = d.div_rem(c);
                if !rem.is_zero() {
                    return Err(LaurentError::NotDivisible { remainder: self.clone() });
                }
                out.terms.insert(f.iter().zip(e).map(|(a, b)| a - b).collect(), qc);
            }
            return Ok(out);
        }
        let mp = self.min_exponents();
        let mq = q.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut r = self.shift(&neg(&mp));
        let qq = q.shift(&neg(&mq));
        let (lq, cq) = qq.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quo = Self::zero(self.nvars);
        while let Some((lr, cr)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let e: Vec<i32> = lr.iter().zip(&lq).map(|(a, b)| a - b).collect();
            let (qc, rem) = cr.div_rem(&cq);
            if e.iter().any(|x| *x < 0) || !rem.is_zero() {
                return Err(LaurentError::NotDivisible { remainder: r.shift(&mp) });
            }
            for (eq, c) in &qq.terms {
                r.add_term(eq.iter().zip(&e).map(|(a, b)| a + b).collect(), -(c * &qc));
            }
            quo.add_term(e, qc);
        }
        let s: Vec<i32> = mp.iter().zip(&mq).map(|(a, b)| a - b).collect();
        Ok(quo.shift(&s))
    }

    /// Exact evaluation at a strictly positive rational point.
    pub fn eval_rational(&self, point: &[BigRational]) -> Result<BigRational, LaurentError> {
        if point.len() != self.nvars {
            return Err(LaurentError::Arity(self.nvars, point.len()));
        }
        if let Some(i) = point.iter().position(|x| !x.is_positive()) {
            return Err(LaurentError::NonPositive(i));
        }
        let mut s = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (x, k) in point.iter().zip(e) {
                t *= x.pow(*k);
            }
            s += t;
        }
        Ok(s)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, LaurentError> {
        if point.len() != self.nvars {
            return Err(LaurentError::Arity(self.nvars, point.len()));
        }
        if let Some(i) = point.iter().position(|x| !(*x > 0.0)) {
            return Err(LaurentError::NonPositive(i));
        }
        let mut s = 0.0;
        for (e, c) in &self.terms {
            let c: f64 = c.to_string().parse().unwrap_or(f64::NAN);
            s += c * point.iter().zip(e).map(|(x, k)| x.powi(*k)).product::<f64>();
        }
        Ok(s)
    }

    /// Evaluation modulo a prime `p < 2^62`; `None` if a variable is zero mod p
    /// and a negative power is needed.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        let inv: Vec<Option<u64>> = point.iter().map(|x| modinv(*x, p)).collect();
        let mut s = 0u64;
        for (e, c) in &self.terms {
            let cm = (c % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
            let mut t: u64 = cm.try_into().unwrap();
            for (i, k) in e.iter().enumerate() {
                let b = if *k >= 0 { point[i] } else { inv[i]? };
                t = mulmod(t, powmod(b, k.unsigned_abs() as u64, p), p);
            }
            s = (s + t) % p;
        }
        Some(s)
    }

    /// Parse text such as `2*a1^-1*a2 + 1`.
    pub fn parse(s: &str, nvars: usize) -> Result<Self, LaurentError> {
        let err = |pos: usize, msg: &str| LaurentError::Parse { pos, msg: msg.to_string() };
        let b = s.as_bytes();
        let mut i = 0;
        let skip = |i: &mut usize| {
            while *i < b.len() && b[*i].is_ascii_whitespace() {
                *i += 1;
            }
        };
        let mut p = Self::zero(nvars);
        skip(&mut i);
        if i == b.len() {
            return Err(err(i, "empty input"));
        }
        let mut first = true;
        loop {
            skip(&mut i);
            if i == b.len() {
                break;
            }
            let mut sign = 1;
            if b[i] == b'+' || b[i] == b'-' {
                if b[i] == b'-' {
                    sign = -1;
                }
                i += 1;
                skip(&mut i);
            } else if !first {
                return Err(err(i, "expected + or -"));
            }
            first = false;
            let mut coeff = BigInt::from(sign);
            let mut exp = vec![0i32; nvars];
            loop {
                skip(&mut i);
                if i < b.len() && b[i].is_ascii_digit() {
                    let st = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    coeff *= s[st..i].parse::<BigInt>().map_err(|_| err(st, "bad integer"))?;
                } else if i < b.len() && b[i] == b'a' {
                    i += 1;
                    let st = i;
                    while i < b.len() && b[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v: usize = s[st..i].parse().map_err(|_| err(st, "bad variable index"))?;
                    if v == 0 || v > nvars {
                        return Err(err(st, "variable index out of range"));
                    }
                    let mut k = 1i32;
                    if i < b.len() && b[i] == b'^' {
                        i += 1;
                        let st = i;
                        if i < b.len() && b[i] == b'-' {
                            i += 1;
                        }
                        while i < b.len() && b[i].is_ascii_digit() {
                            i += 1;
                        }
                        k = s[st..i].parse().map_err(|_| err(st, "bad exponent"))?;
                    }
                    exp[v - 1] += k;
                } else {
                    return Err(err(i, "expected coefficient or variable"));
                }
                skip(&mut i);
                if i < b.len() && b[i] == b'*' {
                    i += 1;
                } else {
                    break;
                }
            }
            p.add_term(exp, coeff);
        }
        Ok(p)
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn modinv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

fn term_string(e: &[i32], c: &BigInt) -> String {
    let mono: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, k)| **k != 0)
        .map(|(i, k)| if *k == 1 { format!("a{}", i + 1) } else { format!("a{}^{}", i + 1, k) })
        .collect();
    if mono.is_empty() {
        return c.to_string();
    }
    let m = mono.join("*");
    if c.is_one() {
        m
    } else if *c == -BigInt::one() {
        format!("-{m}")
    } else {
        format!("{c}*{m}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let t = term_string(e, c);
            if k == 0 {
                write!(f, "{t}")?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

// Operator forms panic on arity mismatch; the `try_*` methods report it.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("laurent add")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("laurent sub")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("laurent mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn add_basics() {
        let x = LaurentPoly::var(2, 0);
        assert_eq!(&x + &LaurentPoly::zero(2), x);
        assert!((&x - &x).is_zero());
        let m = p("a1*a2^-1");
        assert_eq!(&m + &m, p("2*a1*a2^-1"));
    }

    #[test]
    fn mul_basics() {
        assert_eq!(&p("a1") * &p("a1^-1"), LaurentPoly::one(2));
        assert_eq!(&p("1 + a2") * &p("a1^-1"), p("a1^-1 + a1^-1*a2"));
        assert!((&LaurentPoly::zero(2) * &p("a1 + 3")).is_zero());
    }

    #[test]
    fn arity_mismatch() {
        let a = LaurentPoly::var(2, 0);
        let b = LaurentPoly::var(3, 0);
        assert_eq!(a.try_add(&b), Err(LaurentError::Arity(2, 3)));
    }

    #[test]
    fn div_exact_examples() {
        assert_eq!(p("a2 + 1").div_exact(&LaurentPoly::one(2)).unwrap(), p("a2 + 1"));
        assert_eq!(p("a1*a2 + a1").div_exact(&p("a1")).unwrap(), p("a2 + 1"));
        match p("a2 + 1").div_exact(&p("a1 + 1")) {
            Err(LaurentError::NotDivisible { .. }) => {}
            other => panic!("{other:?}"),
        }
        // every Laurent monomial is a unit
        assert_eq!(p("a2 + 1").div_exact(&p("a1")).unwrap(), p("a1^-1*a2 + a1^-1"));
        let q = p("a1 + a2^-1");
        let r = p("a1^2 - 3*a2 + 7");
        assert_eq!((&r * &q).div_exact(&q).unwrap(), r);
    }

    #[test]
    fn evaluation() {
        let half = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(p("a1 + a2").eval_rational(&[half(1, 1), half(1, 1)]).unwrap(), half(2, 1));
        assert_eq!(p("a1*a2^-1").eval_rational(&[half(3, 1), half(2, 1)]).unwrap(), half(3, 2));
        assert_eq!(p("a1").eval_rational(&[half(0, 1), half(1, 1)]), Err(LaurentError::NonPositive(0)));
        assert!((p("a1*a2^-1").eval_f64(&[3.0, 2.0]).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn text_round_trip() {
        let q = LaurentPoly::parse("2*a1^-1*a2 + 1", 2).unwrap();
        assert_eq!(q.to_string(), "2*a1^-1*a2 + 1");
        for s in ["0", "-a1 - a2^3", "5*a1^-2*a2^7 - 12 + a1"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
        assert!(LaurentPoly::parse("a3", 2).is_err());
        assert!(LaurentPoly::parse("a1 a2", 2).is_err());
    }
}
