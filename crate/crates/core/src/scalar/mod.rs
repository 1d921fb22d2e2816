//! Exact scalars: the rational-function field ℚ(p₁,…,pₖ).
//!
//! A [`Scalar`] is a pair of [`Poly`]s kept in a light canonical form
//! (integer content, positive leading denominator coefficient, obvious
//! common factors cancelled). No multivariate GCD is computed, so two equal
//! scalars may be stored differently; equality is decided by
//! cross-multiplication, which is exact.

mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use poly::{Monomial, Poly};

use crate::error::{Error, Result};

/// Ordered set of parameter names, plus optional named abbreviations that
/// are expanded while parsing.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamRing {
    params: Vec<String>,
    defs: Vec<(String, Scalar)>,
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ParamRing {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut ring = ParamRing::default();
        for name in names {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::InvalidRing(format!("bad parameter name `{name}`")));
            }
            if ring.params.iter().any(|p| p == name) {
                return Err(Error::InvalidRing(format!("duplicate parameter `{name}`")));
            }
            ring.params.push(name.to_string());
        }
        Ok(ring)
    }

    /// Declares `name` as an abbreviation for `src`, parsed in the ring as it
    /// stands (so earlier abbreviations may be used).
    pub fn define(&mut self, name: &str, src: &str) -> Result<()> {
        if !valid_name(name) {
            return Err(Error::InvalidRing(format!("bad definition name `{name}`")));
        }
        if self.index(name).is_some() || self.def(name).is_some() {
            return Err(Error::InvalidRing(format!("`{name}` is already declared")));
        }
        let value = self.parse(src)?;
        self.defs.push((name.to_string(), value));
        Ok(())
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn defs(&self) -> &[(String, Scalar)] {
        &self.defs
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    pub(crate) fn def(&self, name: &str) -> Option<&Scalar> {
        self.defs.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn param(&self, name: &str) -> Result<Scalar> {
        self.index(name)
            .map(Scalar::param)
            .ok_or_else(|| Error::UnknownParameter(name.to_string()))
    }

    pub fn parse(&self, src: &str) -> Result<Scalar> {
        parse::parse(src, self)
    }

    /// Canonical text form; `self.parse(&self.print(s)) == s`.
    pub fn print(&self, s: &Scalar) -> String {
        s.render(&|i| self.params.get(i).cloned().unwrap_or_else(|| format!("x{i}")))
    }

    pub fn print_poly(&self, p: &Poly) -> String {
        render_poly(p, &|i| self.params.get(i).cloned().unwrap_or_else(|| format!("x{i}")))
    }
}

/// Element of ℚ(params).
#[derive(Clone)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: Poly::constant(BigRational::from_integer(q.numer().clone())),
            den: Poly::constant(BigRational::from_integer(q.denom().clone())),
        }
    }

    pub fn param(index: usize) -> Self {
        Scalar {
            num: Poly::var(index),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar::canonical(p, Poly::one())
    }

    /// Builds `num / den` in canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(num, den))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The rational value if the scalar does not depend on any parameter.
    pub fn as_rational(&self) -> Option<BigRational> {
        Some(self.num.as_constant()? / self.den.as_constant()?)
    }

    pub fn is_constant(&self) -> bool {
        self.num.as_constant().is_some() && self.den.as_constant().is_some()
    }

    fn canonical(mut num: Poly, mut den: Poly) -> Scalar {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        if !g.is_one() {
            num = num.div_monomial(&g);
            den = den.div_monomial(&g);
        }
        if den.as_constant().is_none() {
            if let Some(q) = num.exact_div(&den) {
                num = q;
                den = Poly::one();
            } else if let Some(q) = den.exact_div(&num) {
                num = Poly::one();
                den = q;
            }
        }
        // integer coefficients with no common factor across num and den
        let (ln, gn) = num.coefficient_content();
        let (ld, gd) = den.coefficient_content();
        let lcm = num_integer::Integer::lcm(&ln, &ld);
        let num_scaled_gcd = &gn * &lcm / &ln;
        let den_scaled_gcd = &gd * &lcm / &ld;
        let g = num_integer::Integer::gcd(&num_scaled_gcd, &den_scaled_gcd);
        let mut k = BigRational::new(lcm, g);
        if den.leading_is_negative() {
            k = -k;
        }
        if !k.is_one() {
            num = num.scale(&k);
            den = den.scale(&k);
        }
        Scalar { num, den }
    }

    fn den_is_one(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den_is_one() && other.den_is_one() {
            return Scalar::canonical(self.num.add(&other.num), Poly::one());
        }
        if self.den == other.den {
            return Scalar::canonical(self.num.add(&other.num), self.den.clone());
        }
        if let Some(q) = other.den.exact_div(&self.den) {
            return Scalar::canonical(self.num.mul(&q).add(&other.num), other.den.clone());
        }
        if let Some(q) = self.den.exact_div(&other.den) {
            return Scalar::canonical(self.num.add(&other.num.mul(&q)), self.den.clone());
        }
        Scalar::canonical(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den_is_one() && other.den_is_one() {
            if let (Some(a), Some(b)) = (self.num.as_constant(), other.num.as_constant()) {
                return Scalar::from_rational(a * b);
            }
            return Scalar::canonical(self.num.mul(&other.num), Poly::one());
        }
        let (mut a, mut d) = (self.num.clone(), other.den.clone());
        let (mut b, mut c) = (other.num.clone(), self.den.clone());
        if d.as_constant().is_none() {
            if let Some(q) = a.exact_div(&d) {
                a = q;
                d = Poly::one();
            }
        }
        if c.as_constant().is_none() {
            if let Some(q) = b.exact_div(&c) {
                b = q;
                c = Poly::one();
            }
        }
        Scalar::canonical(a.mul(&b), c.mul(&d))
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self.mul(&Scalar::from_int(k))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar::canonical(self.num.pow(e), self.den.pow(e))
    }

    /// Cross-multiplication test `a·d − b·c == 0`.
    pub fn equals(&self, other: &Scalar) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Structural equality of the stored canonical pair.
    pub fn same_repr(&self, other: &Scalar) -> bool {
        self.num == other.num && self.den == other.den
    }

    /// Substitutes rationals for some parameters; the others stay symbolic.
    pub fn specialize(&self, values: &[(usize, BigRational)]) -> Result<Scalar> {
        if values.is_empty() {
            return Ok(self.clone());
        }
        let subs: Vec<(usize, Poly)> = values
            .iter()
            .map(|(i, v)| (*i, Poly::constant(v.clone())))
            .collect();
        let den = self.den.substitute(&subs);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::canonical(self.num.substitute(&subs), den))
    }

    /// Substitutes scalars for parameters simultaneously.
    pub fn compose(&self, values: &[(usize, Scalar)]) -> Result<Scalar> {
        let eval = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in p.terms() {
                let mut rest = m.exponents().to_vec();
                let mut term = Scalar::from_rational(c.clone());
                for (i, v) in values {
                    let e = m.exponent(*i);
                    if e > 0 {
                        rest[*i] = 0;
                        term = term.mul(&v.pow(e));
                    }
                }
                let kept = Poly::monomial(Monomial::from_exponents(rest), BigRational::one());
                acc = acc.add(&term.mul(&Scalar::from_poly(kept)));
            }
            acc
        };
        eval(&self.num).div(&eval(&self.den))
    }

    /// Full evaluation at rational values for every parameter.
    pub fn eval(&self, values: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(values) / d)
    }

    fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        let num = render_poly(&self.num, name);
        if self.den.is_one() {
            return num;
        }
        let num = if self.num.terms().len() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = render_poly(&self.den, name);
        let bare = self.den.terms().len() == 1 && {
            let (m, c) = &self.den.terms()[0];
            (m.is_one() && c.is_positive()) || (c.is_one() && m.degree() == 1)
        };
        if bare {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

fn render_monomial(m: &Monomial, name: &dyn Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(name(i)),
            _ => parts.push(format!("{}^{e}", name(i))),
        }
    }
    parts.join("*")
}

fn render_poly(p: &Poly, name: &dyn Fn(usize) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mono = render_monomial(m, name);
        let coeff = if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        };
        if mono.is_empty() {
            out.push_str(&coeff);
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&coeff);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|i| format!("x{i}")))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|i| format!("x{i}")))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a.add(&b))
    }
}
