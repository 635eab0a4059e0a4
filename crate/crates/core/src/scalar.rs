//! Elements of the field Q(i, sqrt(d)) with exact arithmetic.
//!
//! A scalar is stored as `a + b*i + c*r + e*i*r` where `r = sqrt(d)` and
//! `a, b, c, e` are arbitrary-precision rationals. `d` is a square-free
//! positive integer fixed per computation; `d = 1` means the radical part
//! is absent (the `c` and `e` components are folded into `a` and `b`).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(den))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub e: Rat,
    /// Square-free positive integer under the radical; 1 means no radical.
    pub d: u64,
}

impl Scalar {
    pub fn new(a: Rat, b: Rat, c: Rat, e: Rat, d: u64) -> Self {
        let mut s = Scalar { a, b, c, e, d };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.d == 1 {
            // sqrt(1) = 1: fold radical components into the rational ones
            let c = std::mem::replace(&mut self.c, Rat::zero());
            let e = std::mem::replace(&mut self.e, Rat::zero());
            self.a += c;
            self.b += e;
        } else if self.c.is_zero() && self.e.is_zero() {
            self.d = 1;
        }
    }

    pub fn zero() -> Self {
        Scalar::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::from_rat(Rat::one())
    }

    pub fn from_rat(a: Rat) -> Self {
        Scalar { a, b: Rat::zero(), c: Rat::zero(), e: Rat::zero(), d: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(rat_int(n))
    }

    pub fn i() -> Self {
        Scalar { a: Rat::zero(), b: Rat::one(), c: Rat::zero(), e: Rat::zero(), d: 1 }
    }

    /// sqrt(d) as a scalar.
    pub fn sqrt_d(d: u64) -> Self {
        Scalar::new(Rat::zero(), Rat::zero(), Rat::one(), Rat::zero(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.e.is_zero()
    }

    /// True when the scalar lies in Q.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.e.is_zero()
    }

    /// True when the scalar is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.a.to_integer())
        } else {
            None
        }
    }

    /// The four coordinates over the Q-basis {1, i, sqrt(d), i*sqrt(d)}.
    pub fn components(&self) -> [Rat; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.e.clone()]
    }

    /// Complex conjugation: i -> -i, fixes sqrt(d).
    pub fn conj(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            c: self.c.clone(),
            e: -self.e.clone(),
            d: self.d,
        }
    }

    /// Radical conjugation: sqrt(d) -> -sqrt(d), fixes i.
    fn conj_radical(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -self.c.clone(),
            e: -self.e.clone(),
            d: self.d,
        }
    }

    fn merged_d(&self, other: &Scalar) -> u64 {
        if self.d == 1 {
            other.d
        } else if other.d == 1 || other.d == self.d {
            self.d
        } else {
            panic!("scalar arithmetic over mixed radicals: sqrt({}) vs sqrt({})", self.d, other.d)
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        // x * conj_i(x) lies in Q(sqrt(d)); multiplying by its radical
        // conjugate lands in Q.
        let t = self.clone() * self.conj();
        debug_assert!(t.b.is_zero() && t.e.is_zero());
        let n = t.clone() * t.conj_radical();
        debug_assert!(n.is_rational());
        let n = n.a;
        if n.is_zero() {
            // happens only when d is a perfect square, which callers must rule out
            panic!("norm vanished on a nonzero scalar; d = {} is not square-free", self.d);
        }
        let inv_n = Scalar::from_rat(n.recip());
        Some(self.conj() * t.conj_radical() * inv_n)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        let d = self.merged_d(&rhs);
        Scalar::new(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c, self.e + rhs.e, d)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self + (-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, c: -self.c, e: -self.e, d: self.d }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        let d = self.merged_d(&rhs);
        let dd = Rat::from_integer(BigInt::from(d));
        // (a1 + b1 i + c1 r + e1 i r)(a2 + b2 i + c2 r + e2 i r), r^2 = d
        let (a1, b1, c1, e1) = (&self.a, &self.b, &self.c, &self.e);
        let (a2, b2, c2, e2) = (&rhs.a, &rhs.b, &rhs.c, &rhs.e);
        let a = a1 * a2 - b1 * b2 + (c1 * c2 - e1 * e2) * &dd;
        let b = a1 * b2 + b1 * a2 + (c1 * e2 + e1 * c2) * &dd;
        let c = a1 * c2 + c1 * a2 - b1 * e2 - e1 * b2;
        let e = a1 * e2 + e1 * a2 + b1 * c2 + c1 * b2;
        Scalar::new(a, b, c, e, d)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero scalar")
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = self.clone() + rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = self.clone() - rhs;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = self.clone() * rhs;
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, v: &Rat, unit: &str| -> fmt::Result {
            if v.is_zero() {
                return Ok(());
            }
            if first {
                first = false;
            } else if v.is_positive() {
                write!(f, " + ")?;
            } else {
                write!(f, " - ")?;
            }
            let abs = if first || v.is_positive() { v.clone() } else { -v.clone() };
            if unit.is_empty() {
                write!(f, "{}", abs)
            } else if abs.is_one() {
                write!(f, "{}", unit)
            } else {
                write!(f, "{}*{}", abs, unit)
            }
        };
        let r = format!("sqrt({})", self.d);
        let ir = format!("i*sqrt({})", self.d);
        term(f, &self.a, "")?;
        term(f, &self.b, "i")?;
        term(f, &self.c, &r)?;
        term(f, &self.e, &ir)?;
        Ok(())
    }
}
