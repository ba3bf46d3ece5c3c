//! Closed intervals with MPFR endpoints and outward rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round, Special};
use rug::{Float, Integer, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, v: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Down).0
}

fn up<T>(prec: u32, v: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Up).0
}

impl Interval {
    pub fn new(lo: Float, hi: Float) -> Self {
        debug_assert!(!(lo > hi), "reversed interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: Float) -> Self {
        Interval {
            hi: x.clone(),
            lo: x,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(Float::new(prec))
    }

    /// `(-inf, inf)`.
    pub fn entire(prec: u32) -> Self {
        Interval {
            lo: Float::with_val(prec, Special::NegInfinity),
            hi: Float::with_val(prec, Special::Infinity),
        }
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        Interval {
            lo: down(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_f64(prec: u32, v: f64) -> Self {
        Interval {
            lo: down(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        Interval {
            lo: down(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_rational(prec: u32, v: &Rational) -> Self {
        Interval {
            lo: down(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_ratio(prec: u32, num: i64, den: i64) -> Self {
        Self::from_rational(prec, &Rational::from((num, den)))
    }

    pub fn pi(prec: u32) -> Self {
        Interval {
            lo: down(prec, Constant::Pi),
            hi: up(prec, Constant::Pi),
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo >= 0
    }

    pub fn contains_zero(&self) -> bool {
        !(self.lo > 0) && !(self.hi < 0)
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// Sign when decided: `Some(Greater)` if strictly positive, and so on.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo > 0 {
            Some(Ordering::Greater)
        } else if self.hi < 0 {
            Some(Ordering::Less)
        } else if self.lo == 0 && self.hi == 0 {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// A point near the middle.
    pub fn mid(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.lo + &self.hi) / 2u32
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    /// Upper bound on `max(|lo|, |hi|)`.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    /// Lower bound on `min |x|` over the interval.
    pub fn mig(&self) -> Float {
        if self.contains_zero() {
            return Float::new(self.prec());
        }
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        if a < b {
            a
        } else {
            b
        }
    }

    /// Widens by `r >= 0` on both sides.
    pub fn inflate(&self, r: &Float) -> Self {
        let p = self.prec();
        Interval {
            lo: down(p, &self.lo - r),
            hi: up(p, &self.hi + r),
        }
    }

    pub fn hull(&self, other: &Interval) -> Self {
        Interval {
            lo: if self.lo < other.lo {
                self.lo.clone()
            } else {
                other.lo.clone()
            },
            hi: if self.hi > other.hi {
                self.hi.clone()
            } else {
                other.hi.clone()
            },
        }
    }

    /// Same enclosure re-rounded outward to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Interval {
            lo: down(prec, &self.lo),
            hi: up(prec, &self.hi),
        }
    }

    pub fn abs(&self) -> Self {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            Interval {
                lo: Float::new(self.prec()),
                hi: self.mag(),
            }
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        if self.contains_zero() {
            return Self::entire(p);
        }
        Interval {
            lo: down(p, self.hi.recip_ref()),
            hi: up(p, self.lo.recip_ref()),
        }
    }

    pub fn div(&self, other: &Interval) -> Self {
        if other.contains_zero() {
            return Self::entire(self.prec().max(other.prec()));
        }
        if self.lo >= 0 && other.lo > 0 {
            let p = self.prec().max(other.prec());
            return Interval {
                lo: down(p, &self.lo / &other.hi),
                hi: up(p, &self.hi / &other.lo),
            };
        }
        self * &other.recip()
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        let p = self.prec();
        if k >= 0 {
            Interval {
                lo: down(p, &self.lo * k),
                hi: up(p, &self.hi * k),
            }
        } else {
            Interval {
                lo: down(p, &self.hi * k),
                hi: up(p, &self.lo * k),
            }
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let p = self.prec();
        if k > 0 {
            Interval {
                lo: down(p, &self.lo / k),
                hi: up(p, &self.hi / k),
            }
        } else {
            Interval {
                lo: down(p, &self.hi / k),
                hi: up(p, &self.lo / k),
            }
        }
    }

    pub fn square(&self) -> Self {
        let a = self.abs();
        let p = self.prec();
        Interval {
            lo: down(p, a.lo.square_ref()),
            hi: up(p, a.hi.square_ref()),
        }
    }

    /// Square root of the nonnegative part.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let lo = if self.lo < 0 {
            Float::new(p)
        } else {
            down(p, self.lo.sqrt_ref())
        };
        Interval {
            lo,
            hi: up(p, self.hi.sqrt_ref()),
        }
    }

    pub fn cbrt(&self) -> Self {
        let p = self.prec();
        Interval {
            lo: down(p, self.lo.cbrt_ref()),
            hi: up(p, self.hi.cbrt_ref()),
        }
    }

    /// `x^(1/k)` for `x >= 0`.
    pub fn root(&self, k: u32) -> Self {
        let p = self.prec();
        Interval {
            lo: down(p, self.lo.root_ref(k)),
            hi: up(p, self.hi.root_ref(k)),
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        Interval {
            lo: down(p, self.lo.exp_ref()),
            hi: up(p, self.hi.exp_ref()),
        }
    }

    pub fn ln(&self) -> Self {
        let p = self.prec();
        Interval {
            lo: down(p, self.lo.ln_ref()),
            hi: up(p, self.hi.ln_ref()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// Endpoints as decimal strings with `digits` significant digits, rounded
    /// outward.
    pub fn to_decimal_pair(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_string_radix_round(10, Some(digits), Round::Down),
            self.hi.to_string_radix_round(10, Some(digits), Round::Up),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_pair(20);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Neg for &Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        Interval {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }
}

impl Add for &Interval {
    type Output = Interval;

    fn add(self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        Interval {
            lo: down(p, &self.lo + &o.lo),
            hi: up(p, &self.hi + &o.hi),
        }
    }
}

impl Sub for &Interval {
    type Output = Interval;

    fn sub(self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        Interval {
            lo: down(p, &self.lo - &o.hi),
            hi: up(p, &self.hi - &o.lo),
        }
    }
}

impl Mul for &Interval {
    type Output = Interval;

    fn mul(self, o: &Interval) -> Interval {
        let p = self.prec().max(o.prec());
        if self.lo >= 0 && o.lo >= 0 {
            return Interval {
                lo: down(p, &self.lo * &o.lo),
                hi: up(p, &self.hi * &o.hi),
            };
        }
        if !self.is_finite() || !o.is_finite() {
            return Interval::entire(p);
        }
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let mut lo = Float::with_val(p, Special::Infinity);
        let mut hi = Float::with_val(p, Special::NegInfinity);
        for (a, b) in pairs {
            let l = down(p, a * b);
            let h = up(p, a * b);
            if l < lo {
                lo = l;
            }
            if h > hi {
                hi = h;
            }
        }
        Interval { lo, hi }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval { (&self).$m(&o) }
        }
        impl $tr<&Interval> for Interval {
            type Output = Interval;
            fn $m(self, o: &Interval) -> Interval { (&self).$m(o) }
        }
        impl $tr<Interval> for &Interval {
            type Output = Interval;
            fn $m(self, o: Interval) -> Interval { self.$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Interval {
    type Output = Interval;

    fn neg(self) -> Interval {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_encloses() {
        let t = Interval::from_ratio(64, 1, 3);
        assert!(t.lo() < t.hi());
        let back = t.mul_i64(3);
        assert!(back.contains(&Float::with_val(64, 1)));
    }

    #[test]
    fn mixed_sign_product() {
        let a = Interval::new(Float::with_val(53, -2), Float::with_val(53, 3));
        let b = Interval::new(Float::with_val(53, -5), Float::with_val(53, 1));
        let c = &a * &b;
        assert_eq!(*c.lo(), -15);
        assert_eq!(*c.hi(), 10);
        assert!(!a.div(&b).is_finite());
    }

    #[test]
    fn signs_and_magnitudes() {
        let a = Interval::from_ratio(80, -1, 7);
        assert_eq!(a.sign(), Some(Ordering::Less));
        assert!(a.abs().is_positive());
        assert_eq!(Interval::zero(10).sign(), Some(Ordering::Equal));
        let wide = Interval::new(Float::with_val(53, -1), Float::with_val(53, 2));
        assert_eq!(wide.sign(), None);
        assert_eq!(wide.mag(), 2);
        assert_eq!(wide.mig(), 0);
        assert_eq!(wide.square().lo().to_f64(), 0.0);
    }

    #[test]
    fn elementary_functions_enclose() {
        let two = Interval::from_i64(100, 2);
        let s = two.sqrt();
        assert!(s.square().contains(&Float::with_val(100, 2)));
        let c = two.cbrt();
        assert!((&(&c * &c) * &c).contains(&Float::with_val(100, 2)));
        let e = Interval::from_i64(100, 1).exp().ln();
        assert!(e.contains(&Float::with_val(100, 1)));
    }
}
