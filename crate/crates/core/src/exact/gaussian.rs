use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Complex number with arbitrary-precision rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Self { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn int(n: i64) -> Self {
        Self { re: rat(n), im: BigRational::zero() }
    }

    pub fn complex(re: i64, im: i64) -> Self {
        Self { re: rat(re), im: rat(im) }
    }

    /// The rational `num/den`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(r: BigRational) -> Self {
        Self { re: r, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|², always rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Multiply by an integer that clears both denominators.
    pub fn scaled_to_int(&self, s: &BigInt) -> GaussianInt {
        let re = &self.re * BigRational::from_integer(s.clone());
        let im = &self.im * BigRational::from_integer(s.clone());
        assert!(re.is_integer() && im.is_integer(), "scale does not clear denominators");
        GaussianInt { re: re.to_integer(), im: im.to_integer() }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}i", fmt_rat(&self.re), sign, fmt_rat(&self.im.abs()))
            }
        }
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

/// Element of ℤ[i]; the working ring of fraction-free elimination.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn neg(&self) -> Self {
        Self { re: -&self.re, im: -&self.im }
    }

    /// Exact quotient in ℤ[i], or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let n = &d.re * &d.re + &d.im * &d.im;
        if n.is_zero() {
            return None;
        }
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        let (qr, rr) = re.div_rem(&n);
        let (qi, ri) = im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(Self { re: qr, im: qi })
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> GaussianRational {
        GaussianRational {
            re: BigRational::from_integer(self.re.clone()),
            im: BigRational::from_integer(self.im.clone()),
        }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}
