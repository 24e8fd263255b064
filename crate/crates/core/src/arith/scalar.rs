use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number.
pub type Rational = BigRational;

/// Rational from a numerator and a nonzero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussScalar {
    re: Rational,
    im: Rational,
}

impl GaussScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussScalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussScalar { re, im: Rational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::real(Rational::from_integer(n.into()))
    }

    /// `(re_num/re_den) + (im_num/im_den)·i`
    pub fn from_ratios(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussScalar { re: rat(re.0, re.1), im: rat(im.0, im.1) }
    }

    pub fn i() -> Self {
        GaussScalar { re: Rational::zero(), im: Rational::one() }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        GaussScalar { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussScalar { re: &self.re / &n, im: -&self.im / &n })
    }

    /// Panics on zero.
    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    fn add_ref(&self, o: &Self) -> Self {
        GaussScalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub_ref(&self, o: &Self) -> Self {
        GaussScalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        GaussScalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn div_ref(&self, o: &Self) -> Self {
        self.mul_ref(&o.inv())
    }
}

impl Zero for GaussScalar {
    fn zero() -> Self {
        Self::real(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussScalar {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Default for GaussScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GaussScalar {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<Rational> for GaussScalar {
    fn from(r: Rational) -> Self {
        Self::real(r)
    }
}

macro_rules! binop {
    ($Tr:ident, $f:ident, $imp:ident, $TrA:ident, $fa:ident) => {
        impl $Tr<&GaussScalar> for &GaussScalar {
            type Output = GaussScalar;
            fn $f(self, r: &GaussScalar) -> GaussScalar {
                self.$imp(r)
            }
        }
        impl $Tr<GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $f(self, r: GaussScalar) -> GaussScalar {
                self.$imp(&r)
            }
        }
        impl $Tr<&GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $f(self, r: &GaussScalar) -> GaussScalar {
                self.$imp(r)
            }
        }
        impl $Tr<GaussScalar> for &GaussScalar {
            type Output = GaussScalar;
            fn $f(self, r: GaussScalar) -> GaussScalar {
                self.$imp(&r)
            }
        }
        impl $TrA<&GaussScalar> for GaussScalar {
            fn $fa(&mut self, r: &GaussScalar) {
                *self = (&*self).$imp(r);
            }
        }
        impl $TrA<GaussScalar> for GaussScalar {
            fn $fa(&mut self, r: GaussScalar) {
                *self = (&*self).$imp(&r);
            }
        }
    };
}

binop!(Add, add, add_ref, AddAssign, add_assign);
binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
binop!(Mul, mul, mul_ref, MulAssign, mul_assign);

impl Div<&GaussScalar> for &GaussScalar {
    type Output = GaussScalar;
    fn div(self, r: &GaussScalar) -> GaussScalar {
        self.div_ref(r)
    }
}

impl Div for GaussScalar {
    type Output = GaussScalar;
    fn div(self, r: GaussScalar) -> GaussScalar {
        self.div_ref(&r)
    }
}

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -&self.re, im: -&self.im }
    }
}

/// Prints in a form accepted by the polynomial grammar, e.g. `3/2-i`, `2*i`.
impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, v: &Rational| {
            if v.is_one() {
                write!(f, "i")
            } else {
                write!(f, "{}*i", v)
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-")?;
                }
                imag(f, &self.im.abs())
            }
            (false, false) => {
                write!(f, "{}", self.re)?;
                write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
                imag(f, &self.im.abs())
            }
        }
    }
}
