//! Exact Gaussian-rational scalars `a + b·i` with `a, b ∈ ℚ`.
//!
//! Every coefficient in the crate lives here. Both parts are stored as
//! reduced [`BigRational`]s, so the representation is canonical: equal values
//! compare equal structurally and zero is always `0/1 + 0/1·i`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

/// The four field operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to `a` and `b`; division by zero is an error instead of a panic.
pub fn arith(a: &GaussianRational, b: &GaussianRational, op: ArithOp) -> Result<GaussianRational> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    /// Real fraction `num/den`. Panics when `den == 0`; meant for literals.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator in GaussianRational::frac");
        GaussianRational::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `re_num/re_den + (im_num/im_den)·i`, rejecting zero denominators.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Result<Self> {
        if re_den == 0 || im_den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational::new(
            BigRational::new(re_num.into(), re_den.into()),
            BigRational::new(im_num.into(), im_den.into()),
        ))
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `a² + b²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(GaussianRational::from_rational(self.re.recip()));
        }
        let n = self.norm_sqr();
        Ok(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order on (re, im), used only to sort values deterministically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }

    pub fn from_usize(n: usize) -> Self {
        GaussianRational::from_rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_integer(1)
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        GaussianRational::zero()
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re + &rhs.re);
        }
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re - &rhs.re);
        }
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::from_rational(&self.re * &rhs.re);
        }
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

/// Panics on division by zero, like the integer types; use
/// [`GaussianRational::checked_div`] when the divisor is not known to be nonzero.
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("GaussianRational division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical form: `a/b+c/di`, zero parts omitted, unit imaginary
    /// coefficient kept as `1i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.to_string() })
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(false)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse::<BigInt>().expect("validated digits"))
    }

    fn rat(&mut self) -> Result<BigRational> {
        let num = self.int()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            let den = self.int()?;
            if den.is_zero() {
                return Err(Error::Parse { position: den_pos, message: "zero denominator".into() });
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }
}

/// Parses `[sign] rat [sign rat 'i'] | [sign] rat 'i'`, `rat = int['/'int]`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let mut c = Cursor { bytes: text.as_bytes(), pos: 0 };
    let neg = c.sign().unwrap_or(false);
    let mut first = c.rat()?;
    if neg {
        first = -first;
    }
    match c.peek() {
        None => Ok(GaussianRational::from_rational(first)),
        Some(b'i') => {
            c.pos += 1;
            if c.peek().is_some() {
                return c.err("trailing input after imaginary unit");
            }
            Ok(GaussianRational::new(BigRational::zero(), first))
        }
        Some(b'+') | Some(b'-') => {
            let neg2 = c.sign().expect("sign present");
            let mut second = c.rat()?;
            if neg2 {
                second = -second;
            }
            if c.peek() != Some(b'i') {
                return c.err("expected 'i' after imaginary part");
            }
            c.pos += 1;
            if c.peek().is_some() {
                return c.err("trailing input after imaginary unit");
            }
            Ok(GaussianRational::new(first, second))
        }
        Some(_) => c.err("unexpected character"),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_scalar(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::frac(n, d)
    }

    #[test]
    fn conjugate_product_is_norm() {
        let a = GaussianRational::from_parts(1, 2, 1, 2).unwrap();
        let b = GaussianRational::from_parts(1, 2, -1, 2).unwrap();
        assert_eq!(&a * &b, q(1, 2));
    }

    #[test]
    fn construction_reduces() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn division_by_zero_is_error() {
        let z = GaussianRational::zero();
        assert!(matches!(arith(&q(1, 1), &z, ArithOp::Div), Err(Error::DivisionByZero)));
        assert!(GaussianRational::from_parts(1, 0, 0, 1).is_err());
    }

    #[test]
    fn parse_examples() {
        let v = parse_scalar("3/2+1/2i").unwrap();
        assert_eq!(v.re(), q(3, 2).re());
        assert_eq!(v.im(), q(1, 2).re());
        assert_eq!(parse_scalar("-1").unwrap(), q(-1, 1));
        assert!(parse_scalar("0/5i").unwrap().is_zero());
        assert_eq!(parse_scalar("0/5i").unwrap().to_string(), "0");
        assert_eq!(parse_scalar("-2i").unwrap(), -(GaussianRational::i() * q(2, 1)));
        assert_eq!(parse_scalar("1-1i").unwrap().to_string(), "1-1i");
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_scalar("3/0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_scalar("1+2") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("i").is_err());
        assert!(parse_scalar("1.5").is_err());
        assert!(parse_scalar("1i+2").is_err());
    }

    #[test]
    fn printer_keeps_unit_imaginary() {
        assert_eq!(GaussianRational::i().to_string(), "1i");
        assert_eq!((-GaussianRational::i()).to_string(), "-1i");
        assert_eq!((q(1, 3) + GaussianRational::i()).to_string(), "1/3+1i");
    }

    fn arb_scalar() -> impl Strategy<Value = GaussianRational> {
        (-9i64..=9, 1i64..=9, -9i64..=9, 1i64..=9)
            .prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &GaussianRational::zero(), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
            }
        }

        #[test]
        fn print_parse_round_trip(a in arb_scalar()) {
            let text = a.to_string();
            let back = parse_scalar(&text).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
