//! Exact rational numbers on `i128`.
//!
//! Every discrepancy value, point coordinate, and piecewise-linear
//! coefficient in this crate is a `Rat`. Denominators stay small (powers
//! of the base times small integers), so a reduced `i128` fraction has
//! ample headroom at the supported desk scales; arithmetic is checked and
//! panics on overflow rather than silently losing exactness.

use crate::error::{Error, Result};
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128, // > 0, gcd(|num|, den) == 1
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num, den).max(1);
        Rat {
            num: sign * (num / g),
            den: (den / g).abs(),
        }
    }

    pub fn int(n: i128) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    /// Largest integer <= self.
    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    /// Fractional part `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Rat {
        Rat {
            num: self.num.rem_euclid(self.den),
            den: self.den,
        }
    }

    /// Distance to the nearest integer.
    pub fn dist_to_int(&self) -> Rat {
        let f = self.fract();
        let c = Rat::ONE - f;
        if f <= c {
            f
        } else {
            c
        }
    }

    pub fn min(self, other: Rat) -> Rat {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Rat) -> Rat {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `b^e` as a rational; errors when the power leaves i128 range.
    pub fn pow_int(b: u32, e: u32) -> Result<Rat> {
        let mut acc: i128 = 1;
        for _ in 0..e {
            acc = acc.checked_mul(b as i128).ok_or(Error::CapExceeded {
                what: "power",
                cap: u64::MAX,
            })?;
        }
        Ok(Rat::int(acc))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn parse(s: &str) -> Result<Rat> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: i128 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(alloc::format!("bad rational {s:?}")))?;
        let den: i128 = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(alloc::format!("bad rational {s:?}")))?;
        if den == 0 {
            return Err(Error::Parse(alloc::format!("zero denominator in {s:?}")));
        }
        Ok(Rat::new(num, den))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i128> for Rat {
    fn from(n: i128) -> Rat {
        Rat::int(n)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Rat {
        Rat::int(n as i128)
    }
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("rational overflow: value outside supported desk scale")
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        let g = gcd(self.den, rhs.den);
        let l = self.den / g;
        let r = rhs.den / g;
        let num =
            checked(checked(self.num.checked_mul(r)).checked_add(checked(rhs.num.checked_mul(l))));
        let den = checked(self.den.checked_mul(r));
        Rat::new(num, den)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        self + (-rhs)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        // cross-reduce first so reduced results never overflow transiently
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        let num = checked((self.num / g1).checked_mul(rhs.num / g2));
        let den = checked((self.den / g2).checked_mul(rhs.den / g1));
        Rat { num, den }
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(rhs.num != 0, "division by zero rational");
        let inv = Rat {
            num: if rhs.num < 0 { -rhs.den } else { rhs.den },
            den: rhs.num.abs(),
        };
        self * inv
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        *self = *self - rhs;
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        let lhs = checked(self.num.checked_mul(other.den));
        let rhs = checked(other.num.checked_mul(self.den));
        lhs.cmp(&rhs)
    }
}

/// Render a rational as a `p/q` string (integers render without `/q`).
pub fn to_string(r: &Rat) -> String {
    alloc::format!("{r}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_orders() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(-3, -6), Rat::new(1, 2));
        assert_eq!(Rat::new(3, -6), Rat::new(-1, 2));
        assert!(Rat::new(1, 3) < Rat::new(1, 2));
        assert!(Rat::new(-1, 2) < Rat::ZERO);
    }

    #[test]
    fn arithmetic() {
        let a = Rat::new(2, 3) + Rat::new(2, 9) + Rat::new(2, 27);
        assert_eq!(a, Rat::new(26, 27));
        assert_eq!(Rat::new(3, 4) * Rat::new(2, 3), Rat::new(1, 2));
        assert_eq!(Rat::new(1, 2) / Rat::new(1, 4), Rat::int(2));
        assert_eq!(-Rat::new(1, 2) + Rat::new(1, 2), Rat::ZERO);
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(Rat::new(7, 2).floor(), 3);
        assert_eq!(Rat::new(-1, 2).floor(), -1);
        assert_eq!(Rat::new(-1, 2).fract(), Rat::new(1, 2));
        assert_eq!(Rat::new(5, 4).fract(), Rat::new(1, 4));
        assert_eq!(Rat::new(5, 8).dist_to_int(), Rat::new(3, 8));
        assert_eq!(Rat::new(1, 8).dist_to_int(), Rat::new(1, 8));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(alloc::format!("{}", Rat::new(3, 4)), "3/4");
        assert_eq!(alloc::format!("{}", Rat::int(5)), "5");
        assert_eq!(Rat::parse("3/4").unwrap(), Rat::new(3, 4));
        assert_eq!(Rat::parse(" -2/8 ").unwrap(), Rat::new(-1, 4));
        assert_eq!(Rat::parse("7").unwrap(), Rat::int(7));
        assert!(Rat::parse("1/0").is_err());
        assert!(Rat::parse("x").is_err());
    }
}
