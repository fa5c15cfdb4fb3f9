//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! Both types implement [`Field`], the coefficient abstraction used by the
//! polynomial and rational-function layers.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ScalarError;

/// A coefficient field of characteristic zero with exact arithmetic.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// A square root inside the field, with canonical sign, if one exists.
    fn sqrt(&self) -> Option<Self>;
    /// Whether the value is on the canonical side of the sign ambiguity
    /// `x` vs `-x` (positive for ℚ; positive real part, ties by imaginary
    /// part, for ℚ(i)). Zero counts as canonical.
    fn is_canonical_sign(&self) -> bool;
    fn conj(&self) -> Self;
    fn imaginary_unit() -> Option<Self>;
    /// Scalar that brings a coefficient list to its normal form for
    /// square-free factors: primitive integer coefficients with positive
    /// leading coefficient over ℚ, monic over ℚ(i).
    fn factor_normal_scale(coeffs: &[&Self], leading: &Self) -> Self;
    /// The value as a rational number, when it is one.
    fn to_rational(&self) -> Option<Rational>;
    /// Split into sign and unsigned text for printing inside a sum.
    /// Compound values come back parenthesized.
    fn coeff_text(&self) -> (bool, String);

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * &i)
    }
}

/// An exact rational number in canonical form (`gcd(num, den) = 1`, `den > 0`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.0.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `sig` significant digits, rounded half away
    /// from zero. Computed exactly from the fraction.
    pub fn to_decimal(&self, sig: usize) -> String {
        assert!(sig > 0);
        if self.0.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let num = self.numer().abs();
        let den = self.denom().clone();
        // exponent e with 10^e <= |x| < 10^(e+1)
        let ten = BigInt::from(10);
        let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
        let ge = |e: i64| -> bool {
            // |x| >= 10^e
            if e >= 0 {
                num >= &den * ten.pow(e as u32)
            } else {
                &num * ten.pow((-e) as u32) >= den
            }
        };
        while !ge(e) {
            e -= 1;
        }
        while ge(e + 1) {
            e += 1;
        }
        let shift = sig as i64 - 1 - e;
        let (sn, sd) = if shift >= 0 {
            (&num * ten.pow(shift as u32), den.clone())
        } else {
            (num.clone(), &den * ten.pow((-shift) as u32))
        };
        let (mut q, r) = sn.div_rem(&sd);
        if &r * 2 >= sd {
            q += 1;
        }
        // rounding may carry into an extra digit
        let mut digits = q.to_string();
        let mut shift = shift;
        if digits.len() > sig {
            digits.pop();
            shift -= 1;
        }
        let s = if shift <= 0 {
            let zeros = "0".repeat((-shift) as usize);
            format!("{digits}{zeros}")
        } else {
            let shift = shift as usize;
            let (int_part, frac_part) = if digits.len() > shift {
                let split = digits.len() - shift;
                (digits[..split].to_string(), digits[split..].to_string())
            } else {
                ("0".to_string(), format!("{}{}", "0".repeat(shift - digits.len()), digits))
            };
            let frac_part = frac_part.trim_end_matches('0');
            if frac_part.is_empty() {
                int_part
            } else {
                format!("{int_part}.{frac_part}")
            }
        };
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }

}

/// Nonnegative square root of `x` when `x` is a perfect square in ℚ.
pub fn rat_is_square(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(x.numer())?;
    let d = int_sqrt_exact(x.denom())?;
    Some(Rational(BigRational::new(n, d)))
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

macro_rules! rational_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::recip`] for a checked path.
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl<'b> Div<&'b Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        Rational(self.0 / &rhs.0)
    }
}

impl<'a, 'b> Div<&'b Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> AddAssign<&'a Rational> for Rational {
    fn add_assign(&mut self, rhs: &'a Rational) {
        self.0 += &rhs.0;
    }
}

impl<'a> SubAssign<&'a Rational> for Rational {
    fn sub_assign(&mut self, rhs: &'a Rational) {
        self.0 -= &rhs.0;
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let parse_int = |t: &str, allow_sign: bool| -> Result<BigInt, ScalarError> {
            let digits = t.strip_prefix('-').filter(|_| allow_sign).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        let num = parse_int(n, true)?;
        match d {
            None => Ok(Rational::from_integer(num)),
            Some(d) => Rational::new(num, parse_int(d, false)?),
        }
    }
}

impl Field for Rational {
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn sqrt(&self) -> Option<Self> {
        rat_is_square(self)
    }
    fn is_canonical_sign(&self) -> bool {
        !self.is_negative()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn factor_normal_scale(coeffs: &[&Self], leading: &Self) -> Self {
        let mut l = BigInt::one();
        for c in coeffs {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in coeffs {
            let scaled = c.numer() * (&l / c.denom());
            g = g.gcd(&scaled);
        }
        if g.is_zero() {
            return Rational::one();
        }
        let s = Rational(BigRational::new(l, g));
        if leading.is_negative() {
            -s
        } else {
            s
        }
    }
    fn coeff_text(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(re.into(), im.into())
    }

    /// `|x|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

/// Exact product in ℚ(i).
pub fn gauss_mul(x: &GaussianRational, y: &GaussianRational) -> GaussianRational {
    GaussianRational {
        re: &x.re * &y.re - &x.im * &y.im,
        im: &x.re * &y.im + &x.im * &y.re,
    }
}

/// Exact inverse in ℚ(i).
pub fn gauss_inv(x: &GaussianRational) -> Result<GaussianRational, ScalarError> {
    let n = x.norm_sqr();
    if n.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(GaussianRational { re: &x.re / &n, im: -(&x.im / &n) })
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn add(self, rhs: &'a Self) -> Self {
        GaussianRational { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: &'a Self) -> Self {
        GaussianRational { re: self.re - &rhs.re, im: self.im - &rhs.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        gauss_mul(&self, &rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: &'a Self) -> Self {
        gauss_mul(&self, rhs)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl<'a> AddAssign<&'a GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &'a Self) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> SubAssign<&'a GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &'a Self) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        GaussianRational::real(q)
    }
}

fn imag_text(im: &Rational) -> String {
    if im.abs().is_one() {
        "i".to_string()
    } else {
        format!("{}*i", im.abs())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", imag_text(&self.im))
            } else {
                write!(f, "{}", imag_text(&self.im))
            }
        } else {
            write!(f, "{}{}{}", self.re, sign, imag_text(&self.im))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    /// Accepts `a`, `b*i`, `i`, `-i`, `a+b*i`, `a-b*i`, `a+i` with `a`, `b`
    /// in `p/q` form. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ScalarError::Parse(s.to_string());
        if compact.is_empty() {
            return Err(bad());
        }
        let parse_imag = |t: &str| -> Result<Rational, ScalarError> {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let body = body.strip_suffix('i').ok_or_else(bad)?;
            let v = if body.is_empty() {
                Rational::one()
            } else {
                let b = body.strip_suffix('*').ok_or_else(bad)?;
                if b.starts_with('-') || b.starts_with('+') {
                    return Err(bad());
                }
                b.parse::<Rational>()?
            };
            Ok(if neg { -v } else { v })
        };
        if !compact.ends_with('i') {
            return Ok(GaussianRational::real(compact.parse()?));
        }
        let split = compact
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => {
                let re = compact[..k].parse::<Rational>()?;
                let im = parse_imag(&compact[k..])?;
                Ok(GaussianRational { re, im })
            }
            None => Ok(GaussianRational { re: Rational::zero(), im: parse_imag(&compact)? }),
        }
    }
}

impl Field for GaussianRational {
    fn to_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| self.re.clone())
    }
    fn zero() -> Self {
        GaussianRational::default_zero()
    }
    fn one() -> Self {
        GaussianRational::real(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        GaussianRational::real(n.into())
    }
    fn from_rational(q: &Rational) -> Self {
        GaussianRational::real(q.clone())
    }
    fn inv(&self) -> Option<Self> {
        gauss_inv(self).ok()
    }
    fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            if let Some(r) = rat_is_square(&self.re) {
                return Some(GaussianRational::real(r));
            }
            return rat_is_square(&-self.re.clone())
                .map(|r| GaussianRational { re: Rational::zero(), im: r });
        }
        // (x + yi)^2 = a + bi  =>  x^2 = (a + |z|)/2, y = b/(2x)
        let n = rat_is_square(&self.norm_sqr())?;
        let half = Rational::new(1, 2).expect("nonzero");
        let x = rat_is_square(&((&self.re + &n) * &half))?;
        let y = &self.im / &(&x + &x);
        Some(GaussianRational { re: x, im: y })
    }
    fn is_canonical_sign(&self) -> bool {
        match self.re.cmp(&Rational::zero()) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => !self.im.is_negative(),
        }
    }
    fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }
    fn imaginary_unit() -> Option<Self> {
        Some(GaussianRational::i())
    }
    fn factor_normal_scale(_coeffs: &[&Self], leading: &Self) -> Self {
        leading.inv().unwrap_or_else(Self::one)
    }
    fn coeff_text(&self) -> (bool, String) {
        if self.im.is_zero() {
            self.re.coeff_text()
        } else if self.re.is_zero() {
            (self.im.is_negative(), imag_text(&self.im))
        } else {
            (false, format!("({self})"))
        }
    }
}

impl GaussianRational {
    fn default_zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn square_detection() {
        assert_eq!(rat_is_square(&q("4/9")), Some(q("2/3")));
        assert_eq!(rat_is_square(&q("2")), None);
        assert_eq!(rat_is_square(&q("-4")), None);
        assert_eq!(rat_is_square(&q("0")), Some(q("0")));
    }

    #[test]
    fn gaussian_products() {
        assert_eq!(gauss_mul(&g("1+2*i"), &g("1+2*i")), g("-3+4*i"));
        assert_eq!(gauss_mul(&g("5/7-3*i"), &g("1")), g("5/7-3*i"));
        assert_eq!(gauss_mul(&g("i"), &g("i")), g("-1"));
    }

    #[test]
    fn gaussian_inverse() {
        assert_eq!(gauss_inv(&g("1+i")).unwrap(), g("1/2-1/2*i"));
        assert_eq!(gauss_inv(&g("i")).unwrap(), g("-i"));
        assert_eq!(gauss_inv(&g("2")).unwrap(), g("1/2"));
        assert_eq!(gauss_inv(&g("0")), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn canonical_form() {
        let x = Rational::new(6, -4).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(Rational::zero().denom(), &BigInt::from(1));
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-7", "3/4", "-12/5"] {
            assert_eq!(q(s).to_string(), s);
        }
        for s in ["i", "-i", "2*i", "-1/2*i", "1+2*i", "1/2-1/2*i", "3+i", "-3-i", "5"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert!("1+".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn gaussian_sqrt() {
        assert_eq!(g("-3+4*i").sqrt(), Some(g("1+2*i")));
        assert_eq!(g("-4").sqrt(), Some(g("2*i")));
        assert_eq!(g("2*i").sqrt(), Some(g("1+i")));
        assert_eq!(g("i").sqrt(), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q("1/3").to_decimal(9), "0.333333333");
        assert_eq!(q("2/3").to_decimal(9), "0.666666667");
        assert_eq!(q("-1234567890123/1000").to_decimal(9), "-1234567890");
        assert_eq!(q("4999999998/5").to_decimal(9), "1000000000");
        assert_eq!(q("1/8").to_decimal(9), "0.125");
        assert_eq!(q("-5").to_decimal(9), "-5");
        assert_eq!(q("1/1024000").to_decimal(3), "0.000000977");
    }

    #[test]
    fn primitive_scale() {
        let cs = [q("25"), q("6"), q("1")];
        let refs: Vec<&Rational> = cs.iter().collect();
        assert_eq!(Rational::factor_normal_scale(&refs, &cs[0]), q("1"));
        let cs = [q("-1/2"), q("3/4")];
        let refs: Vec<&Rational> = cs.iter().collect();
        assert_eq!(Rational::factor_normal_scale(&refs, &cs[0]), q("-4"));
    }
}
