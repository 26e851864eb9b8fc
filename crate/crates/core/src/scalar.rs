//! Gaussian rationals `p/q + (r/s)·i` with arbitrary-precision parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact element of ℚ(i).
///
/// Both parts are `BigRational`, which keeps fractions reduced with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        GaussianRational::new(BigRational::new(BigInt::from(p), BigInt::from(q)), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational::new(&self.re / &norm, -&self.im / &norm))
    }

    /// True when the rendered form starts with a minus sign and can be
    /// written as `- (−c)` inside a sum.
    pub fn is_negative_like(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative() && self.im.is_zero()
        }
    }

    /// True when both parts are nonzero, so the rendering needs parentheses
    /// when it multiplies something.
    pub fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical text: `p/q`, `r/s*i`, or `p/q+r/s*i`; integers drop `/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => {
                fmt_rational(&self.im, f)?;
                write!(f, "*i")
            }
            (false, false) => {
                fmt_rational(&self.re, f)?;
                if !self.im.is_negative() {
                    write!(f, "+")?;
                }
                fmt_rational(&self.im, f)?;
                write!(f, "*i")
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = String;

    /// Accepts `p`, `p/q`; the imaginary part is handled by the expression
    /// parser, so only real literals are parsed here.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let q: BigRational = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator `{n}`"))?;
            let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator `{d}`"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            BigRational::new(n, d)
        } else {
            BigRational::from_integer(s.trim().parse().map_err(|_| format!("bad integer `{s}`"))?)
        };
        Ok(GaussianRational::real(q))
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
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(&self.re * &rhs.re - &self.im * &rhs.im, &self.re * &rhs.im + &self.im * &rhs.re)
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational types it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        &self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_positive_denominator() {
        let q = GaussianRational::from_frac(2, -4);
        assert_eq!(q.to_string(), "-1/2");
        assert_eq!(q.re.denom(), &BigInt::from(2));
    }

    #[test]
    fn conjugation_is_involution() {
        let z = GaussianRational::new(BigRational::new(3.into(), 7.into()), BigRational::new((-5).into(), 2.into()));
        assert_eq!(z.conj().conj(), z);
        assert_eq!(z.conj().re, z.re);
        assert_eq!(z.conj().im, -z.im.clone());
    }

    #[test]
    fn inverse_of_gaussian() {
        let z = GaussianRational::from_int(1) + GaussianRational::i();
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussianRational::one());
        assert_eq!(w.to_string(), "1/2-1/2*i");
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn rendering() {
        assert_eq!(GaussianRational::from_int(2).to_string(), "2");
        assert_eq!(GaussianRational::i().to_string(), "1*i");
        assert_eq!((-GaussianRational::i()).to_string(), "-1*i");
        let z = GaussianRational::from_frac(1, 3) + GaussianRational::i();
        assert_eq!(z.to_string(), "1/3+1*i");
        assert!(z.is_compound());
    }
}
