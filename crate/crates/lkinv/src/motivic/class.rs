//! Laurent polynomials Σ c_k L^k with dyadic rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrothendieckClass {
    coeffs: BTreeMap<i64, BigRational>,
}

/// Wire form: `[exponent, numerator, denominator]` per term.
pub type ClassJson = Vec<[i64; 3]>;

fn is_dyadic(q: &BigRational) -> bool {
    let d = q.denom();
    let tz = d.trailing_zeros().unwrap_or(0);
    (d >> tz as usize).is_one()
}

impl GrothendieckClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(c: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(c)))
    }

    /// The class of the affine line.
    pub fn l() -> Self {
        Self::l_pow(1)
    }

    pub fn l_pow(k: i64) -> Self {
        Self::monomial(k, BigRational::one())
    }

    pub fn monomial(k: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        GrothendieckClass { coeffs }
    }

    /// Build from (exponent, coefficient) pairs; coefficients must be dyadic.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Result<Self> {
        let mut out = Self::zero();
        for (k, c) in terms {
            if !is_dyadic(&c) {
                return invalid(format!("coefficient {c} of L^{k} is not dyadic"));
            }
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn from_json(j: &ClassJson) -> Result<Self> {
        let mut terms = Vec::new();
        for &[k, num, den] in j {
            if den == 0 {
                return invalid("class coefficient with zero denominator");
            }
            terms.push((k, BigRational::new(num.into(), den.into())));
        }
        Self::from_terms(terms)
    }

    pub fn to_json(&self) -> Result<ClassJson> {
        self.coeffs
            .iter()
            .map(|(&k, c)| {
                let num = c.numer().to_i64();
                let den = c.denom().to_i64();
                match (num, den) {
                    (Some(n), Some(d)) => Ok([k, n, d]),
                    _ => Err(Error::Numerical(format!("coefficient {c} does not fit the JSON form"))),
                }
            })
            .collect()
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        let e = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&k, c) in &self.coeffs {
            out.add_term(k, c * s);
        }
        out
    }

    /// Multiply by L^k.
    pub fn shift(&self, k: i64) -> Self {
        GrothendieckClass { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Substitute a rational for L.
    pub fn eval(&self, l: &BigRational) -> Result<BigRational> {
        if l.is_zero() && self.coeffs.keys().any(|&k| k < 0) {
            return invalid("cannot evaluate negative powers of L at 0");
        }
        let mut acc = BigRational::zero();
        for (&k, c) in &self.coeffs {
            let p = if k >= 0 { num::pow(l.clone(), k as usize) } else { num::pow(l.recip(), (-k) as usize) };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Euler characteristic of a complex class: L ↦ 1.
    pub fn chi_complex(&self) -> BigRational {
        self.coeffs.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Compactly supported Euler characteristic of a real class: L ↦ −1.
    pub fn chi_real(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |a, (&k, c)| if k.rem_euclid(2) == 0 { a + c } else { a - c })
    }
}

impl Add<&GrothendieckClass> for &GrothendieckClass {
    type Output = GrothendieckClass;
    fn add(self, o: &GrothendieckClass) -> GrothendieckClass {
        let mut out = self.clone();
        for (&k, c) in &o.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub<&GrothendieckClass> for &GrothendieckClass {
    type Output = GrothendieckClass;
    fn sub(self, o: &GrothendieckClass) -> GrothendieckClass {
        self + &(-o)
    }
}

impl Mul<&GrothendieckClass> for &GrothendieckClass {
    type Output = GrothendieckClass;
    fn mul(self, o: &GrothendieckClass) -> GrothendieckClass {
        let mut out = GrothendieckClass::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &o.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &GrothendieckClass {
    type Output = GrothendieckClass;
    fn neg(self) -> GrothendieckClass {
        GrothendieckClass { coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for GrothendieckClass {
            type Output = GrothendieckClass;
            fn $f(self, o: GrothendieckClass) -> GrothendieckClass {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for GrothendieckClass {
    type Output = GrothendieckClass;
    fn neg(self) -> GrothendieckClass {
        -&self
    }
}

impl Zero for GrothendieckClass {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Display for GrothendieckClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = a.is_one();
            if k == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !unit {
                write!(f, "{a}*")?;
            }
            if k == 1 {
                write!(f, "L")?;
            } else {
                write!(f, "L^{k}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn ring_examples() {
        let l = GrothendieckClass::l();
        let one = GrothendieckClass::one();
        let p = &(&l - &one) * &(&l + &one);
        assert_eq!(p, &l.pow(2) - &one);
        assert_eq!(l.eval(&q(1)).unwrap(), q(1));
        assert_eq!((&l - &one).pow(2).eval(&q(-1)).unwrap(), q(4));
        assert_eq!(p.to_string(), "L^2 - 1");
    }

    #[test]
    fn dyadic_coefficients_only() {
        assert!(GrothendieckClass::from_json(&vec![[2, 1, 2], [0, -3, 4]]).is_ok());
        assert!(GrothendieckClass::from_json(&vec![[1, 1, 3]]).is_err());
    }

    #[test]
    fn realizations() {
        let l = GrothendieckClass::l();
        assert_eq!(l.chi_complex(), q(1));
        assert_eq!(l.chi_real(), q(-1));
        assert_eq!((&l - &GrothendieckClass::one()).chi_complex(), q(0));
        assert_eq!(GrothendieckClass::l_pow(-3).chi_real(), q(-1));
    }
}
